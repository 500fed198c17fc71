//! Aggregation of an enumeration into per-target counts, `Aut(G)`-orbits
//! and Hopf–Galois counts, with a cell-by-cell comparison against the
//! closed forms in [`crate::formulas`].

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::aut::{automorphism_count, automorphisms, AutGroup};
use crate::catalog::{make_spec, types_at, GroupSpec, TypeLabel};
use crate::error::{Error, Result};
use crate::formulas::{self, hgs_count, ClassLengths};
use crate::gamma::search::{enumerate_gfs, SearchMode, SearchOptions, SearchStatus};
use crate::gamma::{ConjugationMap, Context, GammaFunction};
use crate::group::{build_group, GroupTable};

/// One `Aut(G)`-orbit of gamma functions, as indices into the sorted list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub members: Vec<usize>,
}

impl Orbit {
    pub fn representative(&self) -> usize {
        self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Partition a sorted, conjugation-closed list of gamma functions into
/// orbits under conjugation by `Aut(G)`, by breadth-first search over the
/// generators of `Aut(G)`.
pub fn orbits(ctx: &Context, gfs: &[GammaFunction]) -> Result<Vec<Orbit>> {
    let maps: Vec<ConjugationMap> = ctx.aut.generators.iter().map(|&phi| ConjugationMap::new(ctx.aut, phi)).collect();
    let mut seen = vec![false; gfs.len()];
    let mut out = Vec::new();
    for start in 0..gfs.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut members = vec![start];
        let mut head = 0;
        while head < members.len() {
            let cur = &gfs[members[head]];
            head += 1;
            for m in &maps {
                let img = m.apply(ctx.aut, cur);
                let idx = gfs
                    .binary_search(&img)
                    .map_err(|_| Error::Verification("gamma function list is not closed under conjugation".into()))?;
                if !seen[idx] {
                    seen[idx] = true;
                    members.push(idx);
                }
            }
        }
        members.sort_unstable();
        out.push(Orbit { members });
    }
    Ok(out)
}

/// Conjugate of `γ` by `φ`.
pub fn conjugate_gf(ctx: &Context, gamma: &GammaFunction, phi: u32) -> GammaFunction {
    ctx.conjugate(gamma, phi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationCell {
    pub cell: String,
    pub expected: Value,
    pub actual: Value,
    pub status: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetSummary {
    pub target: TypeLabel,
    pub e_prime: u64,
    /// `(length, count)` sorted by length.
    pub classes: Vec<(u64, u64)>,
    pub aut_gamma: u128,
    /// `None` when `(|Aut Γ|/|Aut G|)·e′` is not an integer.
    pub e_hgs: Option<u128>,
}

impl TargetSummary {
    pub fn class_count(&self) -> u64 {
        self.classes.iter().map(|&(_, c)| c).sum()
    }
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub p: u32,
    pub q: u32,
    pub g_label: TypeLabel,
    pub aut_order: u64,
    pub gamma_total: u64,
    pub by_target: Vec<TargetSummary>,
    pub mode: SearchMode,
    pub status: SearchStatus,
    pub nodes: u64,
    pub seconds: f64,
    pub verification: Vec<VerificationCell>,
}

impl CensusReport {
    /// Complete enumeration and every verification cell passes.
    pub fn passed(&self) -> bool {
        self.status == SearchStatus::Complete && self.verification.iter().all(|v| v.status == Verdict::Pass)
    }

    pub fn target(&self, label: &TypeLabel) -> Option<&TargetSummary> {
        self.by_target.iter().find(|t| t.target == *label)
    }

    /// Stable machine-readable form. Timing and node counts are left out
    /// so that repeated runs give identical bytes.
    pub fn to_json(&self) -> Value {
        json!({
            "schema": 1,
            "p": self.p,
            "q": self.q,
            "g_type": self.g_label.family,
            "k": self.g_label.k,
            "aut_order": self.aut_order,
            "mode": self.mode.label(),
            "status": self.status,
            "totals": { "gamma_count": self.gamma_total },
            "by_target": self.by_target.iter().map(|t| json!({
                "type": t.target.family,
                "k": t.target.k,
                "e_prime": t.e_prime,
                "e_hgs": t.e_hgs.map(|e| e.to_string()),
                "classes": t.classes.iter().map(|&(length, count)| json!({"length": length, "count": count})).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "verification": self.verification,
        })
    }
}

fn lengths_json(ls: &[(u128, u128)]) -> Value {
    Value::Array(ls.iter().map(|&(l, c)| json!({"length": l as u64, "count": c as u64})).collect())
}

fn check(cell: String, expected: Value, actual: Value) -> VerificationCell {
    let status = if expected == actual { Verdict::Pass } else { Verdict::Fail };
    VerificationCell { cell, expected, actual, status, note: None }
}

/// `|Aut Γ|` for every type present at `(p, q)`, computed from the
/// catalog-built groups.
pub fn aut_orders_at(p: u32, q: u32) -> Result<BTreeMap<TypeLabel, u128>> {
    types_at(p, q)
        .into_iter()
        .map(|t| {
            let g = build_group(&make_spec(t.family, p, q, t.k)?)?;
            Ok((t, automorphism_count(&g) as u128))
        })
        .collect()
}

/// Summarize a complete (or partial) list of gamma functions on `G`.
pub fn build_report(
    ctx: &Context,
    gfs: &[GammaFunction],
    mode: SearchMode,
    status: SearchStatus,
    aut_orders: &BTreeMap<TypeLabel, u128>,
) -> Result<CensusReport> {
    let g = ctx.group;
    let (p, q) = (g.p, g.q);
    let g_label = g.spec.label();
    let aut_g = ctx.aut.order() as u128;
    let mut per_target: BTreeMap<TypeLabel, (u64, BTreeMap<u64, u64>)> = BTreeMap::new();
    if status == SearchStatus::Complete {
        for o in &orbits(ctx, gfs)? {
            let label = ctx.target_type(&gfs[o.representative()])?;
            let entry = per_target.entry(label).or_default();
            entry.0 += o.len() as u64;
            *entry.1.entry(o.len() as u64).or_default() += 1;
        }
    } else {
        // A partial list need not be closed under conjugation; count
        // targets only.
        for gf in gfs {
            per_target.entry(ctx.target_type(gf)?).or_default().0 += 1;
        }
    }

    let mut verification = Vec::new();
    let mut by_target = Vec::new();
    let present = types_at(p, q);
    for label in present.iter().chain(per_target.keys().filter(|l| !present.contains(l))) {
        let (e_prime, classes) = per_target
            .get(label)
            .map(|(e, m)| (*e, m.iter().map(|(&l, &c)| (l, c)).collect::<Vec<_>>()))
            .unwrap_or_default();
        let aut_gamma = *aut_orders.get(label).ok_or_else(|| {
            Error::Verification(format!("target type {} does not exist at p = {}, q = {}", label, p, q))
        })?;
        let e_hgs = hgs_count(e_prime as u128, aut_gamma, aut_g).ok();
        by_target.push(TargetSummary { target: *label, e_prime, classes, aut_gamma, e_hgs });
    }

    let name = |gamma: &TypeLabel, what: &str| format!("{}(Γ={}, G={}) at p={}, q={}", what, gamma, g_label, p, q);
    verification.push(check(
        format!("|Aut G| for G={} at p={}, q={}", g_label, p, q),
        json!(formulas::table_aut_order(g_label.family, p, q)? as u64),
        json!(aut_g as u64),
    ));
    for t in &by_target {
        let cell = match formulas::cell(&t.target, &g_label, p, q) {
            Ok(c) => c,
            Err(Error::UndefinedCell(msg)) => {
                verification.push(VerificationCell {
                    cell: name(&t.target, "e'"),
                    expected: Value::Null,
                    actual: json!(t.e_prime),
                    status: Verdict::Fail,
                    note: Some(format!("no tabulated cell: {}", msg)),
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let mut e_check = check(name(&t.target, "e'"), json!(cell.e_prime as u64), json!(t.e_prime));
        e_check.note = formulas::remark(&t.target, &g_label, p, q).map(str::to_string);
        verification.push(e_check);
        verification.push(check(name(&t.target, "classes"), json!(cell.classes as u64), json!(t.class_count())));
        let actual: ClassLengths = t.classes.iter().map(|&(l, c)| (l as u128, c as u128)).collect();
        verification.push(check(
            name(&t.target, "class_lengths"),
            lengths_json(&cell.class_lengths),
            lengths_json(&actual),
        ));
        verification.push(check(
            name(&t.target, "e"),
            json!(cell.e_hgs.to_string()),
            json!(t.e_hgs.map_or_else(|| "non-integral".to_string(), |e| e.to_string())),
        ));
    }

    // Structural invariants of the report itself.
    let total: u64 = by_target.iter().map(|t| t.e_prime).sum();
    verification.push(check(
        format!("Σ e' = number of gamma functions (G={})", g_label),
        json!(gfs.len()),
        json!(total),
    ));
    let bad_len =
        by_target.iter().flat_map(|t| t.classes.iter()).find(|&&(l, _)| aut_g % l as u128 != 0).map(|&(l, _)| l);
    verification.push(check(
        format!("orbit lengths divide |Aut G| (G={})", g_label),
        Value::Null,
        bad_len.map_or(Value::Null, |l| json!(l)),
    ));

    Ok(CensusReport {
        p,
        q,
        g_label,
        aut_order: aut_g as u64,
        gamma_total: gfs.len() as u64,
        by_target,
        mode,
        status,
        nodes: 0,
        seconds: 0.0,
        verification,
    })
}

/// Everything needed to census one group.
pub struct Prepared {
    pub group: GroupTable,
    pub aut: AutGroup,
}

impl Prepared {
    pub fn new(spec: &GroupSpec) -> Result<Self> {
        let group = build_group(spec)?;
        let aut = automorphisms(&group)?;
        Ok(Prepared { group, aut })
    }

    pub fn context(&self) -> Context<'_> {
        Context::new(&self.group, &self.aut)
    }
}

/// Build `G`, enumerate its gamma functions and summarize them.
pub fn run_census(spec: &GroupSpec, opts: &SearchOptions) -> Result<CensusReport> {
    let start = Instant::now();
    let prepared = Prepared::new(spec)?;
    let ctx = prepared.context();
    let outcome = enumerate_gfs(&ctx, opts)?;
    let aut_orders = aut_orders_at(spec.p, spec.q)?;
    let mut report = build_report(&ctx, &outcome.gfs, opts.mode, outcome.status, &aut_orders)?;
    report.nodes = outcome.nodes;
    report.seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::search::SearchOptions;

    fn report(f: u8, p: u32, q: u32) -> CensusReport {
        run_census(&make_spec(f, p, q, None).unwrap(), &SearchOptions::default()).unwrap()
    }

    #[test]
    fn type5_at_3_2() {
        let r = report(5, 3, 2);
        assert_eq!(r.gamma_total, 46);
        let e: Vec<u64> = r.by_target.iter().map(|t| t.e_prime).collect();
        assert_eq!(e, vec![9, 36, 1]);
        let c: Vec<u64> = r.by_target.iter().map(|t| t.class_count()).collect();
        assert_eq!(c, vec![2, 2, 1]);
        assert!(r.passed(), "{:#?}", r.verification);
    }

    #[test]
    fn type6_at_3_2() {
        let r = report(6, 3, 2);
        assert!(r.passed(), "{:#?}", r.verification);
        assert_eq!(r.target(&TypeLabel::new(5)).unwrap().classes, vec![(3, 2)]);
    }

    #[test]
    fn orbit_of_trivial_is_a_point() {
        let prepared = Prepared::new(&make_spec(6, 3, 2, None).unwrap()).unwrap();
        let ctx = prepared.context();
        let gfs = enumerate_gfs(&ctx, &SearchOptions::default()).unwrap().gfs;
        let orbs = orbits(&ctx, &gfs).unwrap();
        let t = gfs.binary_search(&ctx.trivial()).unwrap();
        assert_eq!(orbs.iter().find(|o| o.members.contains(&t)).unwrap().len(), 1);
        assert_eq!(orbs.iter().map(Orbit::len).sum::<usize>(), gfs.len());
        for gf in &gfs {
            for phi in 0..ctx.aut.order() as u32 {
                assert!(gfs.binary_search(&conjugate_gf(&ctx, gf, phi)).is_ok());
            }
        }
        assert_eq!(conjugate_gf(&ctx, &gfs[3], 0), gfs[3]);
    }

    #[test]
    fn unclosed_list_is_rejected() {
        let prepared = Prepared::new(&make_spec(6, 3, 2, None).unwrap()).unwrap();
        let ctx = prepared.context();
        let gfs = enumerate_gfs(&ctx, &SearchOptions::default()).unwrap().gfs;
        let orbs = orbits(&ctx, &gfs).unwrap();
        let big = orbs.iter().find(|o| o.len() > 1).unwrap();
        let one = vec![gfs[big.representative()].clone()];
        assert!(orbits(&ctx, &one).is_err());
    }
}
