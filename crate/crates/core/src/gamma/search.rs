//! Complete enumeration of gamma functions.
//!
//! The search state is a semiregular subgroup `H` of the holomorph, stored
//! as the partial map `t ↦ φ` over its elements `(t, φ)`. Each step picks
//! the first element `x` not yet covered by `H`, branches over every `φ`
//! for which `⟨(x, φ)⟩` is semiregular, and closes `⟨H, (x, φ)⟩`; a
//! translation reached with two different automorphisms kills the branch.
//! A branch that covers all of `G` is a regular subgroup, i.e. a gamma
//! function. Subgroup orders divide `p²q`, so the depth is at most three.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use super::{ConjugationMap, Context, GammaFunction, UNSET};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Branch over every admissible value at every level.
    Full,
    /// Branch over one value of `γ(a1)` per conjugacy class of the
    /// stabilizer of `a1` in `Aut(G)`, then close the result under
    /// conjugation by `Aut(G)`.
    PruneSymmetry,
}

impl SearchMode {
    pub fn label(self) -> &'static str {
        match self {
            SearchMode::Full => "full",
            SearchMode::PruneSymmetry => "prune-symmetry",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStatus {
    Complete,
    Incomplete,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub mode: SearchMode,
    pub budget: Budget,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { mode: SearchMode::Full, budget: Budget::default(), workers: None }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// Sorted by value array. Partial if `status` is incomplete.
    pub gfs: Vec<GammaFunction>,
    pub status: SearchStatus,
    pub nodes: u64,
}

/// Search state: a semiregular subgroup of the holomorph.
#[derive(Debug, Clone)]
pub struct PartialGamma {
    pub vals: Vec<u32>,
    /// Translation parts of the elements of `H`, in discovery order.
    pub members: Vec<u32>,
    gens: Vec<(u32, u32)>,
    marks: Vec<usize>,
}

impl PartialGamma {
    pub fn new(n: usize, id: u32) -> Self {
        let mut vals = vec![UNSET; n];
        vals[id as usize] = 0;
        PartialGamma { vals, members: vec![id], gens: Vec::new(), marks: Vec::new() }
    }

    pub fn is_total(&self) -> bool {
        self.members.len() == self.vals.len()
    }

    /// Replace `H` by `⟨H, (x, φ)⟩`. Returns `false` on a conflict or when
    /// the order of the result does not divide `|G|`; in either case the
    /// step must be undone with [`PartialGamma::retract`].
    pub fn extend(&mut self, ctx: &Context, x: u32, phi: u32) -> bool {
        let old = self.members.len();
        self.marks.push(old);
        self.gens.push((x, phi));
        for k in 0..old {
            let t = self.members[k];
            if !self.insert(ctx, t, x, phi) {
                return false;
            }
        }
        let mut k = old;
        while k < self.members.len() {
            let t = self.members[k];
            k += 1;
            for s in 0..self.gens.len() {
                let (sx, sphi) = self.gens[s];
                if !self.insert(ctx, t, sx, sphi) {
                    return false;
                }
            }
        }
        self.vals.len() % self.members.len() == 0
    }

    /// Insert the product `(t, vals[t])·(x, φ)`.
    #[inline]
    fn insert(&mut self, ctx: &Context, t: u32, x: u32, phi: u32) -> bool {
        let prod_t = ctx.group.op(ctx.aut.apply(phi, t), x);
        let prod_a = ctx.aut.compose(self.vals[t as usize], phi);
        let slot = &mut self.vals[prod_t as usize];
        if *slot == UNSET {
            *slot = prod_a;
            self.members.push(prod_t);
            true
        } else {
            *slot == prod_a
        }
    }

    pub fn retract(&mut self) {
        let mark = self.marks.pop().expect("retract without extend");
        self.gens.pop();
        for &t in &self.members[mark..] {
            self.vals[t as usize] = UNSET;
        }
        self.members.truncate(mark);
    }

    fn next_branch(&self, order: &[u32]) -> u32 {
        *order.iter().find(|&&x| self.vals[x as usize] == UNSET).expect("called on a non-total state")
    }
}

/// Automorphisms `φ` such that `⟨(x, φ)⟩` meets the stabilizer of the
/// identity trivially and has order dividing `|G|`, as every subgroup of a
/// regular subgroup must.
pub fn admissible(ctx: &Context, x: u32) -> Vec<u32> {
    let n = ctx.n();
    let id = ctx.group.id;
    (0..ctx.aut.order() as u32)
        .filter(|&phi| {
            let (mut t, mut a) = (x, phi);
            for k in 1..=n {
                if t == id {
                    return a == 0 && n % k == 0;
                }
                t = ctx.group.op(ctx.aut.apply(phi, t), x);
                a = ctx.aut.compose(a, phi);
            }
            false
        })
        .collect()
}

struct Shared<'c, 'a> {
    ctx: &'c Context<'a>,
    order: Vec<u32>,
    admissible: Vec<OnceLock<Vec<u32>>>,
    nodes: AtomicU64,
    abort: AtomicBool,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
}

impl Shared<'_, '_> {
    fn admissible(&self, x: u32) -> &[u32] {
        self.admissible[x as usize].get_or_init(|| admissible(self.ctx, x))
    }

    fn tick(&self) -> bool {
        let k = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.abort.load(Ordering::Relaxed) {
            return false;
        }
        let over_nodes = self.max_nodes.is_some_and(|m| k > m);
        let over_time = k % 256 == 0 && self.deadline.is_some_and(|d| Instant::now() > d);
        if over_nodes || over_time {
            self.abort.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn dfs(&self, state: &mut PartialGamma, out: &mut Vec<GammaFunction>) {
        if !self.tick() {
            return;
        }
        if state.is_total() {
            out.push(GammaFunction { vals: state.vals.clone() });
            return;
        }
        let x = state.next_branch(&self.order);
        for &phi in self.admissible(x) {
            if state.extend(self.ctx, x, phi) {
                self.dfs(state, out);
            }
            state.retract();
            if self.abort.load(Ordering::Relaxed) {
                return;
            }
        }
    }

    fn root(&self, phi: u32) -> Vec<GammaFunction> {
        let mut out = Vec::new();
        let mut state = PartialGamma::new(self.ctx.n(), self.ctx.group.id);
        if state.extend(self.ctx, self.order[0], phi) {
            self.dfs(&mut state, &mut out);
        }
        out
    }
}

/// Fixed branching order: a1, a2, b, then the remaining elements by index.
pub fn branch_order(ctx: &Context) -> Vec<u32> {
    let g = ctx.group;
    let mut order = g.gens.to_vec();
    order.extend((0..g.n as u32).filter(|x| *x != g.id && !g.gens.contains(x)));
    order
}

/// Representatives of the classes of `candidates` under conjugation by the
/// stabilizer of `x` in `Aut(G)`.
fn stabilizer_class_reps(ctx: &Context, x: u32, candidates: &[u32]) -> Vec<u32> {
    let stab: Vec<u32> = (0..ctx.aut.order() as u32).filter(|&phi| ctx.aut.apply(phi, x) == x).collect();
    let allowed: FxHashSet<u32> = candidates.iter().copied().collect();
    let mut seen = FxHashSet::default();
    let mut reps = Vec::new();
    for &c in candidates {
        if seen.contains(&c) {
            continue;
        }
        reps.push(c);
        for &phi in &stab {
            let d = ctx.aut.conj(c, phi);
            debug_assert!(allowed.contains(&d));
            seen.insert(d);
        }
    }
    reps
}

/// Close a set of gamma functions under conjugation by `Aut(G)`.
pub fn close_under_conjugation(ctx: &Context, gfs: Vec<GammaFunction>) -> Vec<GammaFunction> {
    let maps: Vec<ConjugationMap> = ctx.aut.generators.iter().map(|&phi| ConjugationMap::new(ctx.aut, phi)).collect();
    let mut seen: FxHashSet<GammaFunction> = gfs.iter().cloned().collect();
    let mut queue = gfs;
    let mut k = 0;
    while k < queue.len() {
        for m in &maps {
            let c = m.apply(ctx.aut, &queue[k]);
            if seen.insert(c.clone()) {
                queue.push(c);
            }
        }
        k += 1;
    }
    queue
}

/// Enumerate every gamma function on the context's group.
pub fn enumerate_gfs(ctx: &Context, opts: &SearchOptions) -> Result<SearchOutcome> {
    let run = || enumerate_inner(ctx, opts);
    match opts.workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::InvalidParameters(format!("worker pool: {}", e)))?;
            Ok(pool.install(run))
        }
        None => Ok(run()),
    }
}

fn enumerate_inner(ctx: &Context, opts: &SearchOptions) -> SearchOutcome {
    let shared = Shared {
        ctx,
        order: branch_order(ctx),
        admissible: (0..ctx.n()).map(|_| OnceLock::new()).collect(),
        nodes: AtomicU64::new(0),
        abort: AtomicBool::new(false),
        max_nodes: opts.budget.max_nodes,
        deadline: opts.budget.max_seconds.map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0))),
    };
    let first = shared.order[0];
    let roots: Vec<u32> = match opts.mode {
        SearchMode::Full => shared.admissible(first).to_vec(),
        SearchMode::PruneSymmetry => stabilizer_class_reps(ctx, first, shared.admissible(first)),
    };
    let collected = Mutex::new(Vec::new());
    roots.par_iter().for_each(|&phi| {
        let found = shared.root(phi);
        collected.lock().expect("no poisoned workers").extend(found);
    });
    let mut gfs = collected.into_inner().expect("no poisoned workers");
    let status = if shared.abort.load(Ordering::Relaxed) { SearchStatus::Incomplete } else { SearchStatus::Complete };
    if opts.mode == SearchMode::PruneSymmetry && status == SearchStatus::Complete {
        gfs = close_under_conjugation(ctx, gfs);
    }
    gfs.sort_unstable();
    debug_assert!(gfs.windows(2).all(|w| w[0] != w[1]));
    SearchOutcome { gfs, status, nodes: shared.nodes.load(Ordering::Relaxed) }
}
