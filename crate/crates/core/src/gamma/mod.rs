//! Gamma functions `γ: G → Aut(G)` and the operations derived from them.
//!
//! A gamma function is stored as an `n`-array of automorphism indices into
//! an [`AutGroup`]. It satisfies `γ(γ(h)(g)·h) = γ(g)∘γ(h)` where `∘` applies
//! `γ(g)` first, and corresponds to the regular subgroup
//! `{(g, γ(g))}` of the holomorph.

pub mod construct;
pub mod search;
pub mod sylow;

use serde::{Deserialize, Serialize};

use crate::aut::{AutGroup, HolElement, Holomorph};
use crate::catalog::{identify_type, TypeLabel};
use crate::error::Result;
use crate::group::{CayleyTable, FiniteGroup, GroupTable, Subgroup};

/// Marker for unassigned entries of a partial map.
pub const UNSET: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GammaFunction {
    pub vals: Vec<u32>,
}

/// Shared read-only data for working with gamma functions on one group.
pub struct Context<'a> {
    pub group: &'a GroupTable,
    pub aut: &'a AutGroup,
    /// `inner[g]` is the index of `x ↦ g⁻¹ x g`.
    pub inner: Vec<u32>,
}

impl<'a> Context<'a> {
    pub fn new(group: &'a GroupTable, aut: &'a AutGroup) -> Self {
        let inner = (0..group.n as u32).map(|g| aut.inner(group, g)).collect();
        Context { group, aut, inner }
    }

    pub fn n(&self) -> usize {
        self.group.n
    }

    pub fn holomorph(&self) -> Holomorph<'_> {
        Holomorph::new(self.group, self.aut)
    }

    /// `γ ≡ 1`, the right regular representation.
    pub fn trivial(&self) -> GammaFunction {
        GammaFunction { vals: vec![0; self.n()] }
    }

    /// `γ(g) = ι(g⁻¹)`, the left regular representation.
    pub fn left_regular(&self) -> GammaFunction {
        GammaFunction { vals: (0..self.n()).map(|g| self.inner[self.group.inv[g] as usize]).collect() }
    }

    /// `g ∘ h = γ(h)(g)·h`.
    #[inline]
    pub fn circle_op(&self, gamma: &GammaFunction, g: u32, h: u32) -> u32 {
        self.group.op(self.aut.apply(gamma.vals[h as usize], g), h)
    }

    /// Exhaustive check of the functional equation over all pairs.
    pub fn check_gfe(&self, gamma: &GammaFunction) -> bool {
        if gamma.vals.len() != self.n() || gamma.vals.iter().any(|&a| a as usize >= self.aut.order()) {
            return false;
        }
        let n = self.n() as u32;
        (0..n).all(|h| {
            let gh = gamma.vals[h as usize];
            (0..n).all(|g| {
                gamma.vals[self.circle_op(gamma, g, h) as usize] == self.aut.compose(gamma.vals[g as usize], gh)
            })
        })
    }

    /// Materialized Cayley table of `(G, ∘)`.
    pub fn circle(&self, gamma: &GammaFunction) -> CayleyTable {
        let n = self.n();
        let mut mul = vec![0u32; n * n];
        for g in 0..n {
            for h in 0..n {
                mul[g * n + h] = self.circle_op(gamma, g as u32, h as u32);
            }
        }
        CayleyTable { n, id: self.group.id, mul }
    }

    pub fn circle_view<'b>(&'b self, gamma: &'b GammaFunction) -> CircleView<'b, 'a> {
        CircleView { ctx: self, gamma }
    }

    /// Isomorphism type of `(G, ∘)`.
    pub fn target_type(&self, gamma: &GammaFunction) -> Result<TypeLabel> {
        identify_type(&self.circle_view(gamma), self.group.p, self.group.q)
    }

    pub fn kernel(&self, gamma: &GammaFunction) -> Subgroup {
        let ker = Subgroup::from_members((0..self.n() as u32).filter(|&g| gamma.vals[g as usize] == 0).collect());
        debug_assert!(ker
            .members
            .iter()
            .all(|&x| ker.members.iter().all(|&y| ker.contains(self.circle_op(gamma, x, y)))));
        ker
    }

    /// `γ̃(x) = γ(x⁻¹)∘ι(x⁻¹)`.
    pub fn dual(&self, gamma: &GammaFunction) -> GammaFunction {
        GammaFunction {
            vals: (0..self.n())
                .map(|x| {
                    let xi = self.group.inv[x] as usize;
                    self.aut.compose(gamma.vals[xi], self.inner[xi])
                })
                .collect(),
        }
    }

    pub fn to_regular_subgroup(&self, gamma: &GammaFunction) -> Vec<HolElement> {
        gamma.vals.iter().enumerate().map(|(g, &phi)| HolElement { g: g as u32, phi }).collect()
    }

    /// `γ^φ(x) = φ⁻¹ γ(φ⁻¹(x)) φ`, the gamma function of the conjugate
    /// regular subgroup.
    pub fn conjugate(&self, gamma: &GammaFunction, phi: u32) -> GammaFunction {
        let conj = ConjugationMap::new(self.aut, phi);
        conj.apply(self.aut, gamma)
    }
}

/// Precomputed conjugation by one automorphism, acting on gamma functions.
pub struct ConjugationMap {
    phi: u32,
    on_aut: Vec<u32>,
}

impl ConjugationMap {
    pub fn new(aut: &AutGroup, phi: u32) -> Self {
        ConjugationMap { phi, on_aut: (0..aut.order() as u32).map(|a| aut.conj(a, phi)).collect() }
    }

    pub fn apply(&self, aut: &AutGroup, gamma: &GammaFunction) -> GammaFunction {
        let mut vals = vec![0u32; gamma.vals.len()];
        // γ^φ(φ(x)) = φ⁻¹ γ(x) φ
        for (x, &a) in gamma.vals.iter().enumerate() {
            vals[aut.apply(self.phi, x as u32) as usize] = self.on_aut[a as usize];
        }
        GammaFunction { vals }
    }
}

/// `(G, ∘)` computed on demand.
pub struct CircleView<'b, 'a> {
    ctx: &'b Context<'a>,
    gamma: &'b GammaFunction,
}

impl FiniteGroup for CircleView<'_, '_> {
    fn order(&self) -> usize {
        self.ctx.n()
    }
    fn identity(&self) -> u32 {
        self.ctx.group.id
    }
    fn op(&self, a: u32, b: u32) -> u32 {
        self.ctx.circle_op(self.gamma, a, b)
    }
}
