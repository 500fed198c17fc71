use super::{Context, GammaFunction};
use crate::error::Result;
use crate::group::Subgroup;

impl Context<'_> {
    /// Whether `h` is mapped into itself by `γ(x)` for every `x ∈ h`.
    pub fn is_invariant(&self, gamma: &GammaFunction, h: &Subgroup) -> bool {
        h.members.iter().all(|&x| {
            let a = gamma.vals[x as usize];
            a == 0 || h.members.iter().all(|&y| h.contains(self.aut.apply(a, y)))
        })
    }

    /// All Sylow r-subgroups `H` with `H^{γ(h)} = H` for every `h ∈ H`.
    pub fn invariant_sylows(&self, gamma: &GammaFunction, r: u32) -> Result<Vec<Subgroup>> {
        Ok(self.group.sylow_subgroups(r)?.into_iter().filter(|h| self.is_invariant(gamma, h)).collect())
    }

    /// The first invariant Sylow r-subgroup together with the number of
    /// invariant ones; `None` when there are none.
    pub fn invariant_sylow(&self, gamma: &GammaFunction, r: u32) -> Result<Option<(Subgroup, usize)>> {
        let all = self.invariant_sylows(gamma, r)?;
        let count = all.len();
        Ok(all.into_iter().next().map(|h| (h, count)))
    }
}
