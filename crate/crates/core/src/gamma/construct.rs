//! Building gamma functions from data on subgroups: lifting a relative
//! gamma function from a subgroup `A` along a complement-like `B`, gluing a
//! `σ ∈ End(A)` to a relative gamma function on a Sylow q-subgroup, and the
//! explicit extension of generator values on `A` for kernels of order q.

use super::{Context, GammaFunction, UNSET};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::modp::Mat2;

fn precondition(msg: &str) -> Error {
    Error::PreconditionViolation(msg.to_string())
}

impl Context<'_> {
    /// Matrix of `φ` restricted to `A = ⟨a1, a2⟩` in the row-vector
    /// convention, or `None` if `φ` does not preserve `A`.
    pub fn matrix_on_a(&self, phi: u32) -> Option<Mat2> {
        let g = self.group;
        let row = |s: u32| {
            let c = g.coords[self.aut.apply(phi, s) as usize];
            (c.m == 0).then_some((c.i as i64, c.j as i64))
        };
        let r1 = row(g.gens[0])?;
        let r2 = row(g.gens[1])?;
        Some(Mat2::new([[r1.0, r1.1], [r2.0, r2.1]], g.p))
    }

    fn a_element(&self, v: (u32, u32)) -> u32 {
        self.group.element(v.0, v.1, 0)
    }

    /// Check that `partial` (defined exactly on `a`) satisfies the GFE on
    /// `a` and leaves `a` invariant.
    pub fn is_rgf(&self, a: &Subgroup, partial: &[u32]) -> bool {
        let invariant = a.members.iter().all(|&x| {
            let phi = partial[x as usize];
            phi != UNSET && a.members.iter().all(|&y| a.contains(self.aut.apply(phi, y)))
        });
        invariant
            && a.members.iter().all(|&g| {
                a.members.iter().all(|&h| {
                    let gh = self.group.op(self.aut.apply(partial[h as usize], g), h);
                    partial[gh as usize] == self.aut.compose(partial[g as usize], partial[h as usize])
                })
            })
    }

    /// `γ(ab) = γ'(a)` for `a ∈ A`, `b ∈ B`, given a relative gamma function
    /// `γ'` on `A`.
    pub fn lift(&self, a: &Subgroup, gamma_a: &[u32], b: &Subgroup) -> Result<GammaFunction> {
        let g = self.group;
        let meet: Vec<u32> = a.members.iter().copied().filter(|&x| b.contains(x)).collect();
        if a.order() * b.order() != g.n * meet.len() {
            return Err(precondition("G is not the product AB"));
        }
        if !self.is_rgf(a, gamma_a) {
            return Err(precondition("map on A is not a relative gamma function"));
        }
        if meet.iter().any(|&x| gamma_a[x as usize] != 0) {
            return Err(precondition("map on A is not trivial on the intersection with B"));
        }
        for &x in &a.members {
            let phi = self.aut.compose(gamma_a[x as usize], self.inner[x as usize]);
            if b.members.iter().any(|&y| !b.contains(self.aut.apply(phi, y))) {
                return Err(precondition("B is not invariant under γ'(a)ι(a)"));
            }
        }
        let mut vals = vec![UNSET; g.n];
        for &x in &a.members {
            for &y in &b.members {
                let xy = g.op(x, y) as usize;
                let v = gamma_a[x as usize];
                if vals[xy] != UNSET && vals[xy] != v {
                    return Err(precondition("lift is not well defined"));
                }
                vals[xy] = v;
            }
        }
        let gamma = GammaFunction { vals };
        if !self.check_gfe(&gamma) {
            return Err(Error::Verification("lifted map fails the functional equation".into()));
        }
        Ok(gamma)
    }

    /// The `σ ∈ End(A)` with `γ(a) = ι(a^{-σ})` on `A`, if it exists.
    pub fn sigma_of(&self, gamma: &GammaFunction) -> Option<Mat2> {
        let g = self.group;
        let row = |s: u32| -> Option<(u32, u32)> {
            let target = gamma.vals[s as usize];
            // ι(c) = γ(s) with c ∈ A, and c = s^{-σ}.
            let c = (0..g.p)
                .flat_map(|i| (0..g.p).map(move |j| (i, j)))
                .find(|&v| self.inner[self.a_element(v) as usize] == target)?;
            Some(((g.p - c.0) % g.p, (g.p - c.1) % g.p))
        };
        let r1 = row(g.gens[0])?;
        let r2 = row(g.gens[1])?;
        let sigma = Mat2::new([[r1.0 as i64, r1.1 as i64], [r2.0 as i64, r2.1 as i64]], g.p);
        let neg = Mat2::zero(g.p).sub(&sigma);
        let consistent = (0..g.p).all(|i| {
            (0..g.p).all(|j| {
                let c = neg.apply((i, j));
                gamma.vals[self.a_element((i, j)) as usize] == self.inner[self.a_element(c) as usize]
            })
        });
        consistent.then_some(sigma)
    }

    fn check_glue_shape(&self) -> Result<()> {
        let g = self.group;
        if g.spec.family == 11 {
            return Err(precondition("A = <a1, a2> is not normal in type 11"));
        }
        let z = g.center();
        let a = g.sylow_a();
        if a.members.iter().any(|&x| x != g.id && z.contains(x)) {
            return Err(precondition("A meets the centre nontrivially"));
        }
        Ok(())
    }

    /// Whether `σ γ(g)|A (σ−1) = (σ−1) γ(g)|A ι(g)|A σ`.
    pub fn sigma_relation_holds(&self, sigma: &Mat2, gamma_g: u32, g: u32) -> bool {
        let (Some(gm), Some(im)) = (self.matrix_on_a(gamma_g), self.matrix_on_a(self.inner[g as usize])) else {
            return false;
        };
        let s1 = sigma.sub(&Mat2::identity(sigma.p));
        sigma.mul(&gm).mul(&s1) == s1.mul(&gm).mul(&im).mul(sigma)
    }

    /// `γ(ab) = ι(a^{−γ(b)⁻¹σ}) γ(b)` for `a ∈ A` and `b` in the Sylow
    /// q-subgroup `b_sub`, where `gamma_b` is a relative gamma function on
    /// `b_sub`.
    pub fn glue(&self, sigma: &Mat2, b_sub: &Subgroup, gamma_b: &[u32]) -> Result<GammaFunction> {
        self.check_glue_shape()?;
        let g = self.group;
        if b_sub.order() != g.q as usize {
            return Err(precondition("B is not a Sylow q-subgroup"));
        }
        if !self.is_rgf(b_sub, gamma_b) {
            return Err(precondition("map on B is not a relative gamma function"));
        }
        for &y in &b_sub.members {
            if !self.sigma_relation_holds(sigma, gamma_b[y as usize], y) {
                return Err(Error::RelationViolated(y));
            }
        }
        let neg_sigma = Mat2::zero(g.p).sub(sigma);
        let mut vals = vec![UNSET; g.n];
        for &y in &b_sub.members {
            let gy = gamma_b[y as usize];
            let w = self
                .matrix_on_a(self.aut.inverse(gy))
                .ok_or_else(|| precondition("γ(b) does not preserve A"))?
                .mul(&neg_sigma);
            for i in 0..g.p {
                for j in 0..g.p {
                    let c = self.a_element(w.apply((i, j)));
                    let x = self.a_element((i, j));
                    vals[g.op(x, y) as usize] = self.aut.compose(self.inner[c as usize], gy);
                }
            }
        }
        let gamma = GammaFunction { vals };
        if !self.check_gfe(&gamma) {
            return Err(Error::Verification("glued map fails the functional equation".into()));
        }
        Ok(gamma)
    }

    /// The unique relative gamma function on `A = ⟨a1, a2⟩` with
    /// `γ(a1) = η1` and `γ(a2) = η2`, where `η1` is trivial on `A`,
    /// `η2` fixes `a1` and sends `a2` to `a2 a1^k`:
    /// `γ(a1^n a2^m) = η1^{n − k·m(m−1)/2} η2^m`.
    pub fn rgf_extend_ker_q(&self, eta1: u32, eta2: u32, k: u32) -> Result<Vec<u32>> {
        let g = self.group;
        let p = g.p;
        if g.spec.family != 5 && g.spec.family != 11 {
            return Err(Error::HypothesisViolation("group must be of type 5 or 11".into()));
        }
        let [a1, a2, _] = g.gens;
        let k = k % p;
        let a = g.sylow_a();
        if a.members.iter().any(|&x| self.aut.apply(eta1, x) != x) {
            return Err(Error::HypothesisViolation("η1 is not trivial on A".into()));
        }
        if self.aut.apply(eta2, a1) != a1 || self.aut.apply(eta2, a2) != g.element(k, 1, 0) {
            return Err(Error::HypothesisViolation("η2 is not a1 ↦ a1, a2 ↦ a2 a1^k".into()));
        }
        let o1 = self.aut.element_order(eta1) as i64;
        let mut vals = vec![UNSET; g.n];
        for n in 0..p {
            for m in 0..p {
                let tri = (m as i64) * (m as i64 - 1) / 2;
                let e1 = (n as i64 - k as i64 * tri).rem_euclid(o1);
                let v = self.aut.compose(self.aut.pow(eta1, e1 as u64), self.aut.pow(eta2, m as u64));
                vals[g.element(n, m, 0) as usize] = v;
            }
        }
        if !self.is_rgf(&a, &vals) {
            return Err(Error::Verification("extension is not a relative gamma function".into()));
        }
        Ok(vals)
    }
}
