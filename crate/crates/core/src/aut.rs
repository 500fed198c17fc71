//! Automorphism groups by exhaustive generator-image search, and the
//! holomorph `G ⋊ Aut(G)` acting on the set `G`.
//!
//! Automorphisms compose left to right: `compose(a, b)` applies `a` first.
//! A holomorph element `(g, φ)` acts as `x ↦ φ(x)·g`.

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{coord_of, FiniteGroup, GroupTable, Subgroup};

/// Largest order for which a dense composition table is kept.
const DENSE_COMPOSE_LIMIT: usize = 6000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    pub perm: Vec<u32>,
}

impl Automorphism {
    pub fn apply(&self, x: u32) -> u32 {
        self.perm[x as usize]
    }
}

pub struct AutGroup {
    n: usize,
    order: usize,
    gens_of_g: [u32; 3],
    perms: Vec<u16>,
    index: FxHashMap<[u32; 3], u32>,
    inverse: Vec<u32>,
    table: Option<Vec<u16>>,
    /// Greedy generating set, as indices.
    pub generators: Vec<u32>,
}

impl std::fmt::Debug for AutGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AutGroup").field("order", &self.order).field("generators", &self.generators).finish()
    }
}

struct Pruning {
    in_center: Vec<bool>,
    in_derived: Vec<bool>,
}

impl Pruning {
    fn new(g: &GroupTable) -> Self {
        let mark = |s: Subgroup| {
            let mut v = vec![false; g.n];
            for x in s.members {
                v[x as usize] = true;
            }
            v
        };
        Pruning { in_center: mark(g.center()), in_derived: mark(g.derived_subgroup()) }
    }

    fn candidates(&self, g: &GroupTable, x: u32) -> Vec<u32> {
        let xi = x as usize;
        (0..g.n as u32)
            .filter(|&y| {
                let yi = y as usize;
                g.orders[yi] == g.orders[xi]
                    && self.in_center[yi] == self.in_center[xi]
                    && self.in_derived[yi] == self.in_derived[xi]
            })
            .collect()
    }
}

/// Relations `s⁻¹ t s = w(a1, a2, b)` for each pair of generators, with `w`
/// in normal-form exponents.
fn conjugation_relations(g: &GroupTable) -> Vec<(usize, usize, [u32; 3])> {
    let mut rels = Vec::new();
    for s in 0..3 {
        for t in 0..3 {
            if s != t {
                let w = g.conj(g.gens[t], g.gens[s]);
                let c = coord_of(w, g.p, g.q);
                rels.push((s, t, [c.i, c.j, c.m]));
            }
        }
    }
    rels
}

fn word(g: &GroupTable, img: &[u32; 3], e: &[u32; 3]) -> u32 {
    let x = g.op(g.pow(img[0], e[0] as u64), g.pow(img[1], e[1] as u64));
    g.op(x, g.pow(img[2], e[2] as u64))
}

/// The normal-form extension of generator images, if it is an automorphism.
fn extend(g: &GroupTable, img: &[u32; 3], rels: &[(usize, usize, [u32; 3])]) -> Option<Vec<u32>> {
    for &(s, t, ref e) in rels {
        if g.conj(img[t], img[s]) != word(g, img, e) {
            return None;
        }
    }
    let (p, q) = (g.p as u64, g.q as u64);
    let pw1: Vec<u32> = (0..p).map(|e| g.pow(img[0], e)).collect();
    let pw2: Vec<u32> = (0..p).map(|e| g.pow(img[1], e)).collect();
    let pw3: Vec<u32> = (0..q).map(|e| g.pow(img[2], e)).collect();
    let mut perm = vec![0u32; g.n];
    let mut hit = vec![false; g.n];
    for (x, c) in g.coords.iter().enumerate() {
        let y = g.op(g.op(pw1[c.i as usize], pw2[c.j as usize]), pw3[c.m as usize]);
        if hit[y as usize] {
            return None;
        }
        hit[y as usize] = true;
        perm[x] = y;
    }
    // φ(x·s) = φ(x)·φ(s) for every x and generator s forces a homomorphism.
    for x in 0..g.n as u32 {
        for (k, &s) in g.gens.iter().enumerate() {
            if perm[g.op(x, s) as usize] != g.op(perm[x as usize], img[k]) {
                return None;
            }
        }
    }
    Some(perm)
}

fn search_images(g: &GroupTable) -> Vec<Vec<u32>> {
    let prune = Pruning::new(g);
    let rels = conjugation_relations(g);
    let c1 = prune.candidates(g, g.gens[0]);
    let c2 = prune.candidates(g, g.gens[1]);
    let c3 = prune.candidates(g, g.gens[2]);
    c1.par_iter()
        .flat_map_iter(|&x1| {
            let mut found = Vec::new();
            for &x2 in &c2 {
                for &x3 in &c3 {
                    if let Some(perm) = extend(g, &[x1, x2, x3], &rels) {
                        found.push(perm);
                    }
                }
            }
            found.into_iter()
        })
        .collect()
}

/// `|Aut(G)|` without storing the automorphisms.
pub fn automorphism_count(g: &GroupTable) -> usize {
    let prune = Pruning::new(g);
    let rels = conjugation_relations(g);
    let c1 = prune.candidates(g, g.gens[0]);
    let c2 = prune.candidates(g, g.gens[1]);
    let c3 = prune.candidates(g, g.gens[2]);
    c1.par_iter()
        .map(|&x1| {
            let mut count = 0;
            for &x2 in &c2 {
                for &x3 in &c3 {
                    if extend(g, &[x1, x2, x3], &rels).is_some() {
                        count += 1;
                    }
                }
            }
            count
        })
        .sum()
}

/// The full automorphism group, sorted by permutation; index 0 is the identity.
pub fn automorphisms(g: &GroupTable) -> Result<AutGroup> {
    if g.n > u16::MAX as usize {
        return Err(Error::InvalidParameters(format!("group order {} too large for the permutation store", g.n)));
    }
    let mut found = search_images(g);
    found.sort_unstable();
    AutGroup::from_perms(g, found)
}

impl AutGroup {
    fn from_perms(g: &GroupTable, perms: Vec<Vec<u32>>) -> Result<Self> {
        let n = g.n;
        let order = perms.len();
        if order > u32::MAX as usize {
            return Err(Error::InvalidParameters("automorphism group too large".into()));
        }
        let gens_of_g = g.gens;
        let mut flat = Vec::with_capacity(order * n);
        let mut index = FxHashMap::default();
        index.reserve(order);
        for (a, perm) in perms.iter().enumerate() {
            flat.extend(perm.iter().map(|&y| y as u16));
            index.insert(gens_of_g.map(|s| perm[s as usize]), a as u32);
        }
        let mut aut = AutGroup {
            n,
            order,
            gens_of_g,
            perms: flat,
            index,
            inverse: Vec::new(),
            table: None,
            generators: Vec::new(),
        };
        aut.inverse = (0..order as u32)
            .map(|a| {
                let perm = aut.perm(a);
                let img = aut.gens_of_g.map(|s| perm.iter().position(|&y| y as u32 == s).expect("bijective") as u32);
                aut.lookup(&img).expect("closed under inverse")
            })
            .collect();
        if order <= DENSE_COMPOSE_LIMIT {
            let table: Vec<u16> = (0..order as u32)
                .into_par_iter()
                .flat_map_iter(|a| {
                    let aut = &aut;
                    (0..order as u32).map(move |b| aut.compose_slow(a, b) as u16)
                })
                .collect();
            aut.table = Some(table);
        }
        aut.generators = aut.greedy_generators();
        Ok(aut)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn perm(&self, a: u32) -> &[u16] {
        let s = a as usize * self.n;
        &self.perms[s..s + self.n]
    }

    #[inline]
    pub fn apply(&self, a: u32, x: u32) -> u32 {
        self.perms[a as usize * self.n + x as usize] as u32
    }

    pub fn get(&self, a: u32) -> Automorphism {
        Automorphism { perm: self.perm(a).iter().map(|&y| y as u32).collect() }
    }

    /// Index of the automorphism sending a1, a2, b to `img`.
    #[inline]
    pub fn lookup(&self, img: &[u32; 3]) -> Option<u32> {
        self.index.get(img).copied()
    }

    /// Index of an arbitrary permutation, if it is an automorphism.
    pub fn index_of(&self, perm: &[u32]) -> Option<u32> {
        let a = self.lookup(&self.gens_of_g.map(|s| perm[s as usize]))?;
        self.perm(a).iter().zip(perm).all(|(&x, &y)| x as u32 == y).then_some(a)
    }

    fn compose_slow(&self, a: u32, b: u32) -> u32 {
        let img = self.gens_of_g.map(|s| self.apply(b, self.apply(a, s)));
        self.lookup(&img).expect("closed under composition")
    }

    /// Apply `a`, then `b`.
    #[inline]
    pub fn compose(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.order + b as usize] as u32,
            None => self.compose_slow(a, b),
        }
    }

    #[inline]
    pub fn inverse(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let mut r = 0;
        for _ in 0..e {
            r = self.compose(r, a);
        }
        r
    }

    pub fn element_order(&self, a: u32) -> u32 {
        let mut x = a;
        let mut t = 1;
        while x != 0 {
            x = self.compose(x, a);
            t += 1;
        }
        t
    }

    /// `φ⁻¹ α φ`, i.e. the conjugate of `alpha` by `phi`.
    #[inline]
    pub fn conj(&self, alpha: u32, phi: u32) -> u32 {
        self.compose(self.compose(self.inverse(phi), alpha), phi)
    }

    /// Inner automorphism `x ↦ g⁻¹ x g`.
    pub fn inner(&self, g: &GroupTable, x: u32) -> u32 {
        self.lookup(&g.gens.map(|s| g.conj(s, x))).expect("inner automorphisms are automorphisms")
    }

    /// Closure of a set of automorphism indices under composition.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut members = vec![0u32];
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            k += 1;
            for &s in gens {
                let y = self.compose(x, s);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        members
    }

    fn greedy_generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut size = 1;
        for a in 0..self.order as u32 {
            if size == self.order {
                break;
            }
            if inside[a as usize] {
                continue;
            }
            gens.push(a);
            inside.iter_mut().for_each(|b| *b = false);
            size = 0;
            for x in self.closure(&gens) {
                inside[x as usize] = true;
                size += 1;
            }
        }
        gens
    }
}

/// Holomorph element acting as `x ↦ φ(x)·g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HolElement {
    pub g: u32,
    pub phi: u32,
}

/// The holomorph of a table together with its automorphism group.
pub struct Holomorph<'a> {
    pub group: &'a GroupTable,
    pub aut: &'a AutGroup,
}

impl<'a> Holomorph<'a> {
    pub fn new(group: &'a GroupTable, aut: &'a AutGroup) -> Self {
        Holomorph { group, aut }
    }

    #[inline]
    pub fn apply(&self, x: u32, h: HolElement) -> u32 {
        self.group.op(self.aut.apply(h.phi, x), h.g)
    }

    /// Apply `h1`, then `h2`.
    #[inline]
    pub fn compose(&self, h1: HolElement, h2: HolElement) -> HolElement {
        HolElement { g: self.group.op(self.aut.apply(h2.phi, h1.g), h2.g), phi: self.aut.compose(h1.phi, h2.phi) }
    }

    pub fn identity(&self) -> HolElement {
        HolElement { g: self.group.id, phi: 0 }
    }

    /// Whether `set` is a regular subgroup of the holomorph.
    pub fn is_regular(&self, set: &[HolElement]) -> Result<bool> {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &a in &sorted {
            for &b in &sorted {
                if sorted.binary_search(&self.compose(a, b)).is_err() {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        if sorted.len() != self.group.n {
            return Ok(false);
        }
        let mut hit = vec![false; self.group.n];
        for h in &sorted {
            let t = self.apply(self.group.id, *h) as usize;
            if hit[t] {
                return Ok(false);
            }
            hit[t] = true;
        }
        Ok(true)
    }
}
