//! Dense Cayley tables for the groups of order p²q.
//!
//! Elements are indexed through the normal form `a1^i a2^j b^m` as
//! `(i·p + j)·q + m`, so the identity is 0, `b` is 1, `a2` is `q` and `a1`
//! is `p·q`.

use serde::{Deserialize, Serialize};

use crate::catalog::{validate_spec, GroupSpec};
use crate::error::{Error, Result};
use crate::modp::{pow_mod, Mat2};

/// Minimal interface shared by the catalog tables and derived tables such as
/// the circle group of a gamma function.
pub trait FiniteGroup {
    fn order(&self) -> usize;
    fn identity(&self) -> u32;
    fn op(&self, a: u32, b: u32) -> u32;

    fn pow(&self, x: u32, mut e: u64) -> u32 {
        let mut result = self.identity();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                result = self.op(result, base);
            }
            base = self.op(base, base);
            e >>= 1;
        }
        result
    }

    fn element_order(&self, x: u32) -> u32 {
        let id = self.identity();
        let mut y = x;
        let mut t = 1;
        while y != id {
            y = self.op(y, x);
            t += 1;
        }
        t
    }

    fn center_size(&self) -> usize {
        let n = self.order() as u32;
        (0..n).filter(|&z| (0..n).all(|x| self.op(z, x) == self.op(x, z))).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ElementCoord {
    pub i: u32,
    pub j: u32,
    pub m: u32,
}

/// A plain Cayley table with no presentation attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    pub n: usize,
    pub id: u32,
    pub mul: Vec<u32>,
}

impl FiniteGroup for CayleyTable {
    fn order(&self) -> usize {
        self.n
    }
    fn identity(&self) -> u32 {
        self.id
    }
    fn op(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }
}

/// Sorted member list of a subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    pub members: Vec<u32>,
}

impl Subgroup {
    pub fn from_members(mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subgroup { members }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

#[derive(Debug, Clone)]
pub struct GroupTable {
    pub n: usize,
    pub p: u32,
    pub q: u32,
    pub id: u32,
    pub mul: Vec<u32>,
    pub inv: Vec<u32>,
    pub coords: Vec<ElementCoord>,
    /// Indices of a1, a2, b.
    pub gens: [u32; 3],
    pub orders: Vec<u32>,
    pub spec: GroupSpec,
}

impl FiniteGroup for GroupTable {
    fn order(&self) -> usize {
        self.n
    }
    fn identity(&self) -> u32 {
        self.id
    }
    #[inline]
    fn op(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }
    fn element_order(&self, x: u32) -> u32 {
        self.orders[x as usize]
    }
}

pub fn index_of(c: ElementCoord, p: u32, q: u32) -> u32 {
    (c.i * p + c.j) * q + c.m
}

pub fn coord_of(x: u32, p: u32, q: u32) -> ElementCoord {
    ElementCoord { i: x / (p * q), j: (x / q) % p, m: x % q }
}

/// Materialize the Cayley table of the group presented by `spec`.
pub fn build_group(spec: &GroupSpec) -> Result<GroupTable> {
    validate_spec(spec)?;
    let (p, q) = (spec.p, spec.q);
    let n = (p * p * q) as usize;
    let coords: Vec<ElementCoord> = (0..n as u32).map(|x| coord_of(x, p, q)).collect();
    let mut mul = vec![0u32; n * n];

    if spec.family == 11 {
        let u = spec.u.expect("validated") as u64;
        let upow: Vec<u32> = (0..p).map(|e| pow_mod(u, e as u64, q as u64) as u32).collect();
        for (x, cx) in coords.iter().enumerate() {
            for (y, cy) in coords.iter().enumerate() {
                let c = ElementCoord {
                    i: (cx.i + cy.i) % p,
                    j: (cx.j + cy.j) % p,
                    m: ((cx.m as u64 * upow[cy.i as usize] as u64 + cy.m as u64) % q as u64) as u32,
                };
                mul[x * n + y] = index_of(c, p, q);
            }
        }
    } else {
        let m = spec.action_matrix().expect("families 5-10 have an action matrix");
        let m_inv = m.inverse().expect("action matrix is invertible");
        // conj[e] = M^{-e}, the action of b^e (·) b^{-e} on A.
        let conj: Vec<Mat2> = (0..q).map(|e| m_inv.pow(e as u64)).collect();
        for (x, cx) in coords.iter().enumerate() {
            let mx = &conj[cx.m as usize];
            for (y, cy) in coords.iter().enumerate() {
                let (ti, tj) = mx.apply((cy.i, cy.j));
                let c = ElementCoord { i: (cx.i + ti) % p, j: (cx.j + tj) % p, m: (cx.m + cy.m) % q };
                mul[x * n + y] = index_of(c, p, q);
            }
        }
    }

    let mut inv = vec![0u32; n];
    for x in 0..n {
        let y = (0..n).find(|&y| mul[x * n + y] == 0).expect("group has inverses");
        inv[x] = y as u32;
    }
    let mut g =
        GroupTable { n, p, q, id: 0, mul, inv, coords, gens: [p * q, q, 1], orders: Vec::new(), spec: spec.clone() };
    g.orders = (0..n as u32)
        .map(|x| {
            let mut y = x;
            let mut t = 1;
            while y != 0 {
                y = g.op(y, x);
                t += 1;
            }
            t
        })
        .collect();
    if !g.check_associativity() {
        return Err(Error::Verification(format!("table for {:?} is not associative", spec)));
    }
    Ok(g)
}

impl GroupTable {
    #[inline]
    pub fn inverse(&self, x: u32) -> u32 {
        self.inv[x as usize]
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.op(self.op(self.inv[g as usize], x), g)
    }

    pub fn element(&self, i: u32, j: u32, m: u32) -> u32 {
        index_of(ElementCoord { i, j, m }, self.p, self.q)
    }

    /// Exhaustive over all triples for small tables; otherwise Light's test
    /// with the middle factor ranging over the generators, which is
    /// equivalent because a1, a2, b generate the table as a magma.
    pub fn check_associativity(&self) -> bool {
        let n = self.n as u32;
        let middles: Vec<u32> = if n <= 200 { (0..n).collect() } else { self.gens.to_vec() };
        for x in 0..n {
            for &s in &middles {
                let xs = self.op(x, s);
                for y in 0..n {
                    if self.op(xs, y) != self.op(x, self.op(s, y)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn center(&self) -> Subgroup {
        let n = self.n as u32;
        Subgroup::from_members((0..n).filter(|&z| self.gens.iter().all(|&s| self.op(z, s) == self.op(s, z))).collect())
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let n = self.n as u32;
        let mut comms = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let c = self.op(self.op(self.inv[x as usize], self.inv[y as usize]), self.op(x, y));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.subgroup_closure(&comms)
    }

    pub fn subgroup_closure(&self, gens: &[u32]) -> Subgroup {
        closure(self, gens)
    }

    /// All Sylow r-subgroups, sorted.
    pub fn sylow_subgroups(&self, r: u32) -> Result<Vec<Subgroup>> {
        if r != self.p && r != self.q {
            return Err(Error::InvalidParameters(format!("{} is not a prime divisor of the group order", r)));
        }
        let target = if r == self.p { (self.p * self.p) as usize } else { self.q as usize };
        let is_r_power = |k: usize| {
            let mut k = k;
            while k % r as usize == 0 {
                k /= r as usize;
            }
            k == 1
        };
        let mut h = Subgroup::from_members(vec![self.id]);
        for x in 0..self.n as u32 {
            if h.order() == target {
                break;
            }
            if h.contains(x) || !is_r_power(self.orders[x as usize] as usize) {
                continue;
            }
            let mut gens = h.members.clone();
            gens.push(x);
            let cand = self.subgroup_closure(&gens);
            if is_r_power(cand.order()) {
                h = cand;
            }
        }
        debug_assert_eq!(h.order(), target);
        let mut all: Vec<Subgroup> = (0..self.n as u32)
            .map(|g| Subgroup::from_members(h.members.iter().map(|&x| self.conj(x, g)).collect()))
            .collect();
        all.sort();
        all.dedup();
        Ok(all)
    }

    /// Matrix of `x ↦ g⁻¹ x g` on the subgroup spanned by `basis`, in the
    /// row-vector convention.
    pub fn action_matrix(&self, g: u32, basis: (u32, u32)) -> Result<Mat2> {
        let p = self.p;
        let mut coord = vec![None; self.n];
        for i in 0..p {
            for j in 0..p {
                let x = self.op(self.pow(basis.0, i as u64), self.pow(basis.1, j as u64));
                coord[x as usize] = Some((i, j));
            }
        }
        let row = |e: u32| coord[self.conj(e, g) as usize].ok_or(Error::NotInvariant(g));
        let r1 = row(basis.0)?;
        let r2 = row(basis.1)?;
        Ok(Mat2::new([[r1.0 as i64, r1.1 as i64], [r2.0 as i64, r2.1 as i64]], p))
    }

    /// The Sylow p-subgroup `⟨a1, a2⟩` for types 5–10, as a sorted set.
    pub fn sylow_a(&self) -> Subgroup {
        self.subgroup_closure(&[self.gens[0], self.gens[1]])
    }
}

/// Closure of `gens` under the group operation.
pub fn closure<G: FiniteGroup + ?Sized>(g: &G, gens: &[u32]) -> Subgroup {
    let n = g.order();
    let mut seen = vec![false; n];
    let id = g.identity();
    seen[id as usize] = true;
    let mut members = vec![id];
    let mut k = 0;
    while k < members.len() {
        let x = members[k];
        k += 1;
        for &s in gens {
            let y = g.op(x, s);
            if !seen[y as usize] {
                seen[y as usize] = true;
                members.push(y);
            }
        }
    }
    Subgroup::from_members(members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::make_spec;

    fn table(f: u8, p: u32, q: u32, k: Option<u32>) -> GroupTable {
        build_group(&make_spec(f, p, q, k).unwrap()).unwrap()
    }

    #[test]
    fn abelian_type_five() {
        let g = table(5, 3, 2, None);
        assert_eq!(g.n, 18);
        for x in 0..18 {
            for y in 0..18 {
                assert_eq!(g.op(x, y), g.op(y, x));
            }
        }
        let a1b = g.op(g.gens[0], g.gens[2]);
        assert_eq!(g.element_order(a1b), 6);
        assert_eq!(g.element_order(g.id), 1);
        assert_eq!(g.sylow_subgroups(2).unwrap().len(), 1);
    }

    #[test]
    fn presentation_relations() {
        let g = table(6, 3, 2, None);
        let [a1, a2, b] = g.gens;
        assert_eq!(g.conj(a2, b), g.pow(a2, 2));
        assert_eq!(g.conj(a1, b), a1);

        let g = table(11, 3, 7, None);
        let [a1, a2, b] = g.gens;
        assert_eq!(g.conj(b, a1), g.pow(b, 2));
        assert_eq!(g.op(a2, b), g.op(b, a2));
        assert_eq!(g.element_order(a1), 3);
    }

    #[test]
    fn centers_and_sylows() {
        let g7 = table(7, 3, 2, None);
        assert_eq!(g7.center().members, vec![0]);
        assert_eq!(g7.sylow_subgroups(2).unwrap().len(), 9);
        let g6 = table(6, 3, 2, None);
        let z = g6.center();
        assert_eq!(z, g6.subgroup_closure(&[g6.gens[0]]));
        assert_eq!(g6.sylow_subgroups(2).unwrap().len(), 3);
        assert_eq!(g6.subgroup_closure(&[0]).members, vec![0]);
        let g11 = table(11, 3, 7, None);
        assert_eq!(g11.sylow_subgroups(3).unwrap().len(), 7);
        assert_eq!(g11.sylow_subgroups(7).unwrap().len(), 1);
        assert_eq!(g11.derived_subgroup().order(), 7);
    }

    #[test]
    fn action_matrices() {
        let g = table(9, 7, 3, None);
        let [a1, a2, b] = g.gens;
        assert!(g.action_matrix(g.id, (a1, a2)).unwrap().is_identity());
        assert_eq!(g.action_matrix(b, (a1, a2)).unwrap(), Mat2::diag(2, 4, 7));
        let g = table(10, 5, 3, None);
        let [a1, a2, b] = g.gens;
        let m = g.action_matrix(b, (a1, a2)).unwrap();
        assert_eq!(m.det(), 1);
        // λ + λ⁻¹ for λ of order 3 in F_25 is -1.
        assert_eq!(m.trace(), 4);
        let g = table(11, 3, 7, None);
        assert!(g.action_matrix(g.gens[2], (g.gens[0], g.gens[1])).is_err());
    }
}
