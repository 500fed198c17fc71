//! JSON and CSV renderings of census reports and enumeration dumps.

use serde_json::{json, Value};

use crate::census::{CensusReport, Verdict};
use crate::error::{Error, Result};
use crate::gamma::search::SearchOutcome;
use crate::gamma::Context;

fn csv_error(e: impl std::fmt::Display) -> Error {
    Error::Verification(format!("csv output: {}", e))
}

/// Several reports as one JSON document: a single object for one report,
/// an array otherwise.
pub fn census_json(reports: &[CensusReport]) -> String {
    let v = match reports {
        [one] => one.to_json(),
        many => Value::Array(many.iter().map(CensusReport::to_json).collect()),
    };
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

fn classes_field(classes: &[(u64, u64)]) -> String {
    classes.iter().map(|&(l, c)| format!("{}x{}", c, l)).collect::<Vec<_>>().join(";")
}

/// One row per `(G, Γ)` pair.
pub fn census_csv(reports: &[CensusReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "p",
        "q",
        "g_type",
        "g_k",
        "aut_order",
        "mode",
        "status",
        "type",
        "k",
        "e_prime",
        "e_hgs",
        "class_count",
        "classes",
    ])
    .map_err(csv_error)?;
    for r in reports {
        for t in &r.by_target {
            let opt = |k: Option<u32>| k.map(|k| k.to_string()).unwrap_or_default();
            w.write_record([
                r.p.to_string(),
                r.q.to_string(),
                r.g_label.family.to_string(),
                opt(r.g_label.k),
                r.aut_order.to_string(),
                r.mode.label().to_string(),
                format!("{:?}", r.status).to_lowercase(),
                t.target.family.to_string(),
                opt(t.target.k),
                t.e_prime.to_string(),
                t.e_hgs.map(|e| e.to_string()).unwrap_or_default(),
                t.class_count().to_string(),
                classes_field(&t.classes),
            ])
            .map_err(csv_error)?;
        }
    }
    String::from_utf8(w.into_inner().map_err(csv_error)?).map_err(csv_error)
}

/// Per-cell verdicts as aligned text, one line per cell.
pub fn verification_table(reports: &[CensusReport]) -> String {
    let mut out = String::new();
    for r in reports {
        for v in &r.verification {
            let status = match v.status {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
            };
            out.push_str(&format!("{}  {}  expected {}  actual {}\n", status, v.cell, v.expected, v.actual));
            if let Some(note) = &v.note {
                out.push_str(&format!("      note: {}\n", note));
            }
        }
        if r.status != crate::gamma::search::SearchStatus::Complete {
            out.push_str(&format!(
                "FAIL  enumeration for G={} at p={}, q={} is incomplete (budget)\n",
                r.g_label, r.p, r.q
            ));
        }
    }
    out
}

/// Images of the generators `a1, a2, b` under each `γ(g)`.
fn gamma_images(ctx: &Context, vals: &[u32]) -> Vec<[u32; 3]> {
    let gens = ctx.group.gens;
    vals.iter().map(|&a| [ctx.aut.apply(a, gens[0]), ctx.aut.apply(a, gens[1]), ctx.aut.apply(a, gens[2])]).collect()
}

/// Enumeration dump. Each record lists, for every element `g` (in index
/// order `(i·p + j)·q + m` for `a1^i a2^j b^m`), the images of
/// `a1, a2, b` under `γ(g)`.
pub fn enumeration_json(ctx: &Context, outcome: &SearchOutcome, mode: &str) -> Result<String> {
    let g = ctx.group;
    let mut records = Vec::with_capacity(outcome.gfs.len());
    for gf in &outcome.gfs {
        let t = ctx.target_type(gf)?;
        records.push(json!({
            "type": t.family,
            "k": t.k,
            "kernel_order": ctx.kernel(gf).order(),
            "gamma": gamma_images(ctx, &gf.vals),
        }));
    }
    let v = json!({
        "schema": 1,
        "p": g.p,
        "q": g.q,
        "g_type": g.spec.family,
        "k": g.spec.k,
        "aut_order": ctx.aut.order(),
        "mode": mode,
        "status": outcome.status,
        "count": outcome.gfs.len(),
        "records": records,
    });
    let mut s = serde_json::to_string(&v).expect("json values serialize");
    s.push('\n');
    Ok(s)
}

pub fn enumeration_csv(ctx: &Context, outcome: &SearchOutcome) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["index", "type", "k", "kernel_order", "gamma"]).map_err(csv_error)?;
    for (i, gf) in outcome.gfs.iter().enumerate() {
        let t = ctx.target_type(gf)?;
        let images = gamma_images(ctx, &gf.vals)
            .iter()
            .map(|[x, y, z]| format!("{}:{}:{}", x, y, z))
            .collect::<Vec<_>>()
            .join(" ");
        w.write_record([
            i.to_string(),
            t.family.to_string(),
            t.k.map(|k| k.to_string()).unwrap_or_default(),
            ctx.kernel(gf).order().to_string(),
            images,
        ])
        .map_err(csv_error)?;
    }
    String::from_utf8(w.into_inner().map_err(csv_error)?).map_err(csv_error)
}
