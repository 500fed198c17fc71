//! Parameterized presentations of the groups of order p²q with elementary
//! abelian Sylow p-subgroup, and an isomorphism-type classifier for
//! arbitrary Cayley tables of that order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::modp::{discrete_log, inv_mod, is_prime, mult_order, smallest_of_order, Mat2};

pub const FAMILIES: [u8; 7] = [5, 6, 7, 8, 9, 10, 11];

/// A validated presentation of a group of order p²q.
///
/// `lambda` is an element of order q mod p (families 6–9), `u` an element of
/// order p mod q (family 11) and `trace_t` the trace of the order-q action
/// matrix for family 10. `k` is only present for family 8.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: u8,
    pub p: u32,
    pub q: u32,
    pub k: Option<u32>,
    pub lambda: Option<u32>,
    pub u: Option<u32>,
    pub trace_t: Option<u32>,
}

/// Isomorphism type of a group of order p²q; `k` is the canonical type-8
/// parameter `min(k, k⁻¹ mod q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeLabel {
    pub family: u8,
    pub k: Option<u32>,
}

impl TypeLabel {
    pub fn new(family: u8) -> Self {
        TypeLabel { family, k: None }
    }

    pub fn eight(k: u32, q: u32) -> Self {
        TypeLabel { family: 8, k: Some(canonical_k(k, q)) }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            Some(k) => write!(f, "8[k={}]", k),
            None => write!(f, "{}", self.family),
        }
    }
}

pub fn canonical_k(k: u32, q: u32) -> u32 {
    let k = k % q;
    match inv_mod(k as u64, q as u64) {
        Some(inv) => k.min(inv as u32),
        None => k,
    }
}

fn check_primes(p: u32, q: u32) -> Result<()> {
    if !is_prime(p as u64) || p <= 2 {
        return Err(Error::InvalidParameters(format!("p = {} must be an odd prime", p)));
    }
    if !is_prime(q as u64) {
        return Err(Error::InvalidParameters(format!("q = {} must be prime", q)));
    }
    if p == q {
        return Err(Error::InvalidParameters("p and q must be distinct".into()));
    }
    Ok(())
}

/// Divisibility condition for `family` at `(p, q)`, as an error message if violated.
pub fn family_condition(family: u8, p: u32, q: u32) -> Result<()> {
    check_primes(p, q)?;
    let violated =
        |what: &str| Err(Error::InvalidParameters(format!("type {} requires {} (p = {}, q = {})", family, what, p, q)));
    match family {
        5 => Ok(()),
        6 | 7 if (p - 1) % q != 0 => violated("q | p-1"),
        6 | 7 => Ok(()),
        8 if (p - 1) % q != 0 || q <= 3 => violated("q | p-1 and q > 3"),
        8 => Ok(()),
        9 if (p - 1) % q != 0 || q <= 2 => violated("q | p-1 and q > 2"),
        9 => Ok(()),
        10 if (p + 1) % q != 0 || q <= 2 => violated("q | p+1 and q > 2"),
        10 => Ok(()),
        11 if (q - 1) % p != 0 => violated("p | q-1"),
        11 => Ok(()),
        _ => Err(Error::InvalidParameters(format!("unknown family {}", family))),
    }
}

/// Representatives `min(k, k⁻¹)` of the type-8 isomorphism classes.
pub fn kappa_set(q: u32) -> Result<Vec<u32>> {
    if q <= 3 || !is_prime(q as u64) {
        return Err(Error::InvalidParameters(format!("type 8 needs a prime q > 3, got {}", q)));
    }
    let mut ks: Vec<u32> = (2..q - 1).map(|k| canonical_k(k, q)).collect();
    ks.sort_unstable();
    ks.dedup();
    Ok(ks)
}

/// Every isomorphism type with elementary abelian Sylow p-subgroup that
/// exists at `(p, q)`, in report order.
pub fn types_at(p: u32, q: u32) -> Vec<TypeLabel> {
    let mut out = Vec::new();
    for &f in &FAMILIES {
        if family_condition(f, p, q).is_err() {
            continue;
        }
        if f == 8 {
            for k in kappa_set(q).unwrap_or_default() {
                out.push(TypeLabel { family: 8, k: Some(k) });
            }
        } else {
            out.push(TypeLabel::new(f));
        }
    }
    out
}

fn trace_companion(t: u32, p: u32) -> Mat2 {
    Mat2::new([[t as i64, 1], [-1, 0]], p)
}

fn valid_trace(t: u32, p: u32, q: u32) -> bool {
    let c = trace_companion(t, p);
    c.char_poly_irreducible() && c.order() == Some(q as u64)
}

/// Build a spec with canonical parameter choices.
pub fn make_spec(family: u8, p: u32, q: u32, k: Option<u32>) -> Result<GroupSpec> {
    family_condition(family, p, q)?;
    let mut spec = GroupSpec { family, p, q, k: None, lambda: None, u: None, trace_t: None };
    match family {
        6..=9 => {
            spec.lambda = smallest_of_order(q as u64, p as u64).map(|v| v as u32);
        }
        10 => {
            spec.trace_t = (0..p).find(|&t| valid_trace(t, p, q));
        }
        11 => {
            spec.u = smallest_of_order(p as u64, q as u64).map(|v| v as u32);
        }
        _ => {}
    }
    if family == 8 {
        let k = k.ok_or_else(|| Error::InvalidParameters("type 8 requires k".into()))? % q;
        if k == 0 || k == 1 || k == q - 1 {
            return Err(Error::InvalidParameters(format!("type 8 requires k not in {{0, 1, -1}} mod q, got {}", k)));
        }
        spec.k = Some(k);
    } else if k.is_some() {
        return Err(Error::InvalidParameters(format!("parameter k only applies to type 8, not type {}", family)));
    }
    validate_spec(&spec)?;
    Ok(spec)
}

/// Full validation, including any explicitly overridden λ / u / trace.
pub fn validate_spec(spec: &GroupSpec) -> Result<()> {
    let (p, q) = (spec.p, spec.q);
    family_condition(spec.family, p, q)?;
    let bad = |m: String| Err(Error::InvalidParameters(m));
    match spec.family {
        6..=9 => match spec.lambda {
            Some(l) if mult_order(l as u64, p as u64) == Some(q as u64) => {}
            other => return bad(format!("lambda {:?} must have order {} mod {}", other, q, p)),
        },
        10 => match spec.trace_t {
            Some(t) if t < p && valid_trace(t, p, q) => {}
            other => return bad(format!("trace {:?} must give an irreducible action of order {} mod {}", other, q, p)),
        },
        11 => match spec.u {
            Some(u) if mult_order(u as u64, q as u64) == Some(p as u64) => {}
            other => return bad(format!("u {:?} must have order {} mod {}", other, p, q)),
        },
        _ => {}
    }
    if spec.family == 8 {
        match spec.k {
            Some(k) if k < q && k != 0 && k != 1 && k != q - 1 => {}
            other => return bad(format!("type 8 needs k not in {{0, 1, -1}}, got {:?}", other)),
        }
    }
    Ok(())
}

impl GroupSpec {
    /// The label of the group this spec presents.
    pub fn label(&self) -> TypeLabel {
        match (self.family, self.k) {
            (8, Some(k)) => TypeLabel::eight(k, self.q),
            (f, _) => TypeLabel::new(f),
        }
    }

    /// Matrix of `a ↦ b⁻¹ a b` on the Sylow p-subgroup in the presentation
    /// basis, for families 5–10.
    pub fn action_matrix(&self) -> Option<Mat2> {
        let p = self.p;
        let l = self.lambda.unwrap_or(1) as u64;
        let pw = |e: u64| crate::modp::pow_mod(l, e, p as u64);
        match self.family {
            5 => Some(Mat2::identity(p)),
            6 => Some(Mat2::diag(1, l, p)),
            7 => Some(Mat2::scalar(l, p)),
            8 => Some(Mat2::diag(l, pw(self.k? as u64), p)),
            9 => Some(Mat2::diag(l, inv_mod(l, p as u64)?, p)),
            10 => Some(trace_companion(self.trace_t?, p)),
            _ => None,
        }
    }
}

/// Classify a group of order p²q with elementary abelian Sylow p-subgroup.
pub fn identify_type<G: FiniteGroup + ?Sized>(g: &G, p: u32, q: u32) -> Result<TypeLabel> {
    let n = g.order();
    if n != (p * p * q) as usize {
        return Err(Error::UnsupportedShape(format!("order {} is not p^2 q = {}", n, p * p * q)));
    }
    let id = g.identity();
    let mut p_elems = Vec::new();
    let mut q_elems = 0usize;
    for x in 0..n as u32 {
        let xp = g.pow(x, p as u64);
        if xp == id {
            p_elems.push(x);
        } else if g.pow(xp, p as u64) == id {
            return Err(Error::UnsupportedShape("Sylow p-subgroup is cyclic".into()));
        }
        if g.pow(x, q as u64) == id {
            q_elems += 1;
        }
    }
    if p_elems.len() != (p * p) as usize {
        // Sylow p is not normal, so the Sylow q-subgroup must be.
        if q_elems == q as usize && (q - 1) % p == 0 {
            let center = g.center_size();
            if center == p as usize {
                return Ok(TypeLabel::new(11));
            }
        }
        return Err(Error::UnsupportedShape("no normal Sylow subgroup matches a known type".into()));
    }
    // Normal elementary abelian Sylow p-subgroup A with basis a1, a2.
    let a1 = *p_elems.iter().find(|&&x| x != id).expect("p^2 > 1");
    let span1: Vec<u32> = (0..p).map(|i| g.pow(a1, i as u64)).collect();
    let a2 = *p_elems.iter().find(|x| !span1.contains(x)).expect("A is not cyclic");
    let mut coord = vec![None; n];
    for i in 0..p {
        for j in 0..p {
            let x = g.op(g.pow(a1, i as u64), g.pow(a2, j as u64));
            coord[x as usize] = Some((i, j));
        }
    }
    let b = (0..n as u32)
        .find(|&x| x != id && coord[x as usize].is_none() && g.pow(x, q as u64) == id)
        .ok_or_else(|| Error::UnsupportedShape("no element of order q".into()))?;
    let b_inv = g.pow(b, (q - 1) as u64);
    let row = |a: u32| -> Result<(u32, u32)> {
        let c = g.op(g.op(b_inv, a), b);
        coord[c as usize].ok_or(Error::NotInvariant(b))
    };
    let r1 = row(a1)?;
    let r2 = row(a2)?;
    let m = Mat2::new([[r1.0 as i64, r1.1 as i64], [r2.0 as i64, r2.1 as i64]], p);
    classify_matrix(&m, p, q)
}

/// Decision tree on the order-q action matrix of a complement on A.
pub fn classify_matrix(m: &Mat2, p: u32, q: u32) -> Result<TypeLabel> {
    if m.is_identity() {
        return Ok(TypeLabel::new(5));
    }
    if m.is_scalar() {
        return Ok(TypeLabel::new(7));
    }
    let eig = m.eigenvalues();
    if eig.is_empty() {
        return Ok(TypeLabel::new(10));
    }
    if eig.contains(&1) {
        return Ok(TypeLabel::new(6));
    }
    if m.det() == 1 {
        return Ok(TypeLabel::new(9));
    }
    let (e1, e2) = (eig[0] as u64, eig[1] as u64);
    let k = discrete_log(e1, e2, p as u64)
        .ok_or_else(|| Error::UnsupportedShape("eigenvalues not in a common cyclic group".into()))?;
    Ok(TypeLabel::eight((k % q as u64) as u32, q))
}
