//! Independent oracles and property checks shared by the integration tests
//! and the acceptance binary. Nothing here goes through the search engine:
//! the oracles work pair by pair on the functional equation, or on raw
//! permutations of the group.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use skewcensus::aut::{automorphisms, AutGroup};
use skewcensus::catalog::{make_spec, TypeLabel};
use skewcensus::gamma::search::{enumerate_gfs, SearchOptions};
use skewcensus::gamma::{Context, GammaFunction, UNSET};
use skewcensus::group::{build_group, closure, FiniteGroup, GroupTable, Subgroup};

pub struct Fixture {
    pub group: GroupTable,
    pub aut: AutGroup,
}

impl Fixture {
    pub fn new(family: u8, p: u32, q: u32, k: Option<u32>) -> Self {
        let group = build_group(&make_spec(family, p, q, k).unwrap()).unwrap();
        let aut = automorphisms(&group).unwrap();
        Fixture { group, aut }
    }

    pub fn ctx(&self) -> Context<'_> {
        Context::new(&self.group, &self.aut)
    }

    pub fn gfs(&self) -> Vec<GammaFunction> {
        enumerate_gfs(&self.ctx(), &SearchOptions::default()).unwrap().gfs
    }
}

/// Every map `γ: D → candidates` on the subgroup `D` such that
/// `γ(γ(h)(g)·h) = γ(g)γ(h)` for all `g, h ∈ D`, with `D` closed under the
/// resulting operation. Plain DFS over elements of `D` in index order with a
/// FIFO worklist of forced values. Returned maps are `n`-arrays with
/// [`UNSET`] outside `D`.
pub fn naive_gfs(ctx: &Context, domain: &Subgroup, candidates: &[u32]) -> Vec<Vec<u32>> {
    let mut vals = vec![UNSET; ctx.n()];
    vals[ctx.group.id as usize] = 0;
    let mut out = Vec::new();
    naive_dfs(ctx, domain, candidates, vals, &mut out);
    out.sort();
    out
}

fn naive_dfs(ctx: &Context, domain: &Subgroup, candidates: &[u32], vals: Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let Some(&x) = domain.members.iter().find(|&&x| vals[x as usize] == UNSET) else {
        out.push(vals);
        return;
    };
    for &phi in candidates {
        let mut next = vals.clone();
        next[x as usize] = phi;
        if propagate(ctx, domain, &mut next, x) {
            naive_dfs(ctx, domain, candidates, next, out);
        }
    }
}

/// Check every pair involving a newly assigned element against everything
/// already assigned, assigning forced values until nothing changes.
fn propagate(ctx: &Context, domain: &Subgroup, vals: &mut [u32], first: u32) -> bool {
    let g = ctx.group;
    let mut queue = VecDeque::from([first]);
    let mut assigned: Vec<u32> = domain.members.iter().copied().filter(|&x| vals[x as usize] != UNSET).collect();
    while let Some(x) = queue.pop_front() {
        let snapshot = assigned.clone();
        for &y in &snapshot {
            for (a, b) in [(x, y), (y, x)] {
                // a ∘ b = γ(b)(a)·b and γ(a ∘ b) = γ(a)γ(b)
                let ab = g.op(ctx.aut.apply(vals[b as usize], a), b);
                if !domain.contains(ab) {
                    return false;
                }
                let want = ctx.aut.compose(vals[a as usize], vals[b as usize]);
                let slot = &mut vals[ab as usize];
                if *slot == UNSET {
                    *slot = want;
                    assigned.push(ab);
                    queue.push_back(ab);
                } else if *slot != want {
                    return false;
                }
            }
        }
    }
    true
}

pub fn whole(g: &GroupTable) -> Subgroup {
    Subgroup::from_members((0..g.n as u32).collect())
}

pub fn all_automorphisms(aut: &AutGroup) -> Vec<u32> {
    (0..aut.order() as u32).collect()
}

/// Automorphisms mapping `h` onto itself.
pub fn preserving(ctx: &Context, h: &Subgroup) -> Vec<u32> {
    (0..ctx.aut.order() as u32).filter(|&a| h.members.iter().all(|&x| h.contains(ctx.aut.apply(a, x)))).collect()
}

/// All subgroups of `g`: closures of pairs of elements, plus `g` itself.
/// Every subgroup of a group of order `p²q` needs at most three
/// generators, and only `g` needs three.
pub fn all_subgroups(g: &GroupTable) -> Vec<Subgroup> {
    let n = g.n as u32;
    let mut seen = BTreeSet::new();
    for x in 0..n {
        for y in x..n {
            seen.insert(closure(g, &[x, y]).members);
        }
    }
    seen.insert(whole(g).members);
    seen.into_iter().map(Subgroup::from_members).collect()
}

/// The holomorph as raw permutations `x ↦ φ(x)·g`, built from the table
/// and the automorphism permutations only.
pub fn hol_permutations(g: &GroupTable, aut: &AutGroup) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(g.n * aut.order());
    for a in 0..aut.order() as u32 {
        let perm = aut.perm(a);
        for t in 0..g.n as u32 {
            out.push((0..g.n).map(|x| g.op(perm[x] as u32, t)).collect());
        }
    }
    out
}

fn perm_compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn perm_closure(gens: &[&Vec<u32>], cap: usize) -> Option<BTreeSet<Vec<u32>>> {
    let n = gens[0].len();
    let id: Vec<u32> = (0..n as u32).collect();
    let mut set = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for s in gens {
            let y = perm_compose(&x, s);
            if set.insert(y.clone()) {
                if set.len() > cap {
                    return None;
                }
                frontier.push(y);
            }
        }
    }
    Some(set)
}

fn semiregular(set: &BTreeSet<Vec<u32>>) -> bool {
    set.iter()
        .all(|p| p.iter().enumerate().all(|(i, &x)| x != i as u32) || p.iter().enumerate().all(|(i, &x)| x == i as u32))
}

/// Regular subgroups of the holomorph, found by growing semiregular
/// permutation groups one fixed-point-free generator at a time.
pub fn hol_regular_subgroups(g: &GroupTable, aut: &AutGroup) -> BTreeSet<BTreeSet<Vec<u32>>> {
    let n = g.n;
    let fpf: Vec<Vec<u32>> =
        hol_permutations(g, aut).into_iter().filter(|p| p.iter().enumerate().all(|(i, &x)| x != i as u32)).collect();
    let mut layer: HashSet<BTreeSet<Vec<u32>>> = HashSet::new();
    for e in &fpf {
        if let Some(s) = perm_closure(&[e], n) {
            if semiregular(&s) {
                layer.insert(s);
            }
        }
    }
    let mut regular = BTreeSet::new();
    let mut seen = layer.clone();
    while !layer.is_empty() {
        let mut next = HashSet::new();
        for s in &layer {
            if s.len() == n {
                regular.insert(s.clone());
                continue;
            }
            let gens: Vec<&Vec<u32>> = s.iter().collect();
            for e in &fpf {
                if s.contains(e) {
                    continue;
                }
                let mut all = gens.clone();
                all.push(e);
                if let Some(t) = perm_closure(&all, n) {
                    if n % t.len() == 0 && semiregular(&t) && seen.insert(t.clone()) {
                        next.insert(t);
                    }
                }
            }
        }
        layer = next;
    }
    regular
}

/// The regular subgroup of a gamma function, as raw permutations.
pub fn as_permutation_group(ctx: &Context, gamma: &GammaFunction) -> BTreeSet<Vec<u32>> {
    let hol = ctx.holomorph();
    ctx.to_regular_subgroup(gamma).into_iter().map(|h| (0..ctx.n() as u32).map(|x| hol.apply(x, h)).collect()).collect()
}

// ---------------------------------------------------------------------------
// Property checks. Each returns a short summary on success.

pub type Check = Result<String, String>;

pub fn check_against_naive(ctx: &Context, gfs: &[GammaFunction]) -> Check {
    let naive = naive_gfs(ctx, &whole(ctx.group), &all_automorphisms(ctx.aut));
    let ours: Vec<Vec<u32>> = gfs.iter().map(|g| g.vals.clone()).collect();
    if naive != ours {
        return Err(format!("naive DFS found {} maps, engine {}", naive.len(), ours.len()));
    }
    Ok(format!("{} gamma functions agree with naive DFS", naive.len()))
}

pub fn check_duality(ctx: &Context, gfs: &[GammaFunction]) -> Check {
    let set: HashSet<&GammaFunction> = gfs.iter().collect();
    for gamma in gfs {
        let d = ctx.dual(gamma);
        if ctx.dual(&d) != *gamma {
            return Err("dual is not an involution".into());
        }
        if !ctx.check_gfe(&d) || !set.contains(&d) {
            return Err("dual is not among the enumerated gamma functions".into());
        }
        if ctx.target_type(&d).map_err(|e| e.to_string())? != ctx.target_type(gamma).map_err(|e| e.to_string())? {
            return Err("dual changes the target type".into());
        }
    }
    Ok(format!("{} duals", gfs.len()))
}

pub fn check_bridge(ctx: &Context, gfs: &[GammaFunction]) -> Check {
    let hol = ctx.holomorph();
    for gamma in gfs {
        let n = ctx.to_regular_subgroup(gamma);
        if !hol.is_regular(&n).map_err(|e| e.to_string())? {
            return Err("bridge output is not regular".into());
        }
    }
    Ok(format!("{} regular subgroups", gfs.len()))
}

pub fn check_bridge_oracle(ctx: &Context, gfs: &[GammaFunction]) -> Check {
    let oracle = hol_regular_subgroups(ctx.group, ctx.aut);
    let ours: BTreeSet<BTreeSet<Vec<u32>>> = gfs.iter().map(|g| as_permutation_group(ctx, g)).collect();
    if oracle != ours {
        return Err(format!("permutation search found {} regular subgroups, bridge {}", oracle.len(), ours.len()));
    }
    Ok(format!("{} regular subgroups match the permutation search", oracle.len()))
}

pub fn check_invariant_sylows(ctx: &Context, gfs: &[GammaFunction]) -> Check {
    let (p, q) = (ctx.group.p, ctx.group.q);
    for gamma in gfs {
        for r in [p, q] {
            if ctx.invariant_sylow(gamma, r).map_err(|e| e.to_string())?.is_none() {
                return Err(format!("no invariant Sylow {}-subgroup", r));
            }
        }
    }
    Ok(format!("{} gamma functions", gfs.len()))
}

fn restrict(gamma: &GammaFunction, a: &Subgroup) -> Vec<u32> {
    let mut v = vec![UNSET; gamma.vals.len()];
    for &x in &a.members {
        v[x as usize] = gamma.vals[x as usize];
    }
    v
}

/// For every `γ` and every pair `A, B` of subgroups with `G = AB`,
/// `B ≤ ker γ` and `A` invariant under `γ(A)`: `ker γ` is invariant under
/// `γ(a)ι(a)` for `a ∈ A`, and when `B` is too, `γ|A` lifts back to `γ`
/// with `ker γ = ker(γ|A)·B`.
pub fn check_lift_roundtrip(ctx: &Context, gfs: &[GammaFunction]) -> Check {
    let g = ctx.group;
    let subs = all_subgroups(g);
    let mut pairs = Vec::new();
    for a in &subs {
        for b in &subs {
            let meet = a.members.iter().filter(|&&x| b.contains(x)).count();
            if a.order() * b.order() == g.n * meet && b.order() > 1 && a.order() < g.n {
                pairs.push((a, b));
            }
        }
    }
    let mut rebuilt = 0usize;
    for gamma in gfs {
        let ker = ctx.kernel(gamma);
        for &(a, b) in &pairs {
            if !b.members.iter().all(|&x| ker.contains(x)) || !ctx.is_invariant(gamma, a) {
                continue;
            }
            let ga = restrict(gamma, a);
            let twisted = |h: &Subgroup| {
                a.members.iter().all(|&x| {
                    let phi = ctx.aut.compose(ga[x as usize], ctx.inner[x as usize]);
                    h.members.iter().all(|&y| h.contains(ctx.aut.apply(phi, y)))
                })
            };
            if !twisted(&ker) {
                return Err("kernel is not invariant under γ'(a)ι(a)".into());
            }
            if !twisted(b) {
                if ctx.lift(a, &ga, b).is_ok() {
                    return Err("lift accepted a B that is not γ'(a)ι(a)-invariant".into());
                }
                continue;
            }
            let lifted = ctx.lift(a, &ga, b).map_err(|e| format!("lift failed: {}", e))?;
            if lifted != *gamma {
                return Err("lift does not reproduce the gamma function".into());
            }
            let ker_a: Vec<u32> = a.members.iter().copied().filter(|&x| ga[x as usize] == 0).collect();
            let mut prod: Vec<u32> = ker_a.iter().flat_map(|&x| b.members.iter().map(move |&y| g.op(x, y))).collect();
            prod.sort_unstable();
            prod.dedup();
            if prod != ker.members {
                return Err("kernel of the lift is not ker(γ')B".into());
            }
            rebuilt += 1;
        }
    }
    if rebuilt == 0 {
        return Err("no gamma function satisfies the lifting hypotheses".into());
    }
    Ok(format!("{} lifts reproduced", rebuilt))
}

/// For every `γ` with `γ(a) = ι(a^{−σ})` on `A` and every invariant Sylow
/// q-subgroup `B`, gluing `σ` with `γ|B` reproduces `γ`. Needs `A` normal
/// with `A ∩ Z(G) = 1`; other groups report zero.
pub fn check_glue_roundtrip(ctx: &Context, gfs: &[GammaFunction]) -> Result<usize, String> {
    let g = ctx.group;
    let a = g.sylow_a();
    let central = |x: u32| (0..g.n as u32).all(|y| g.op(x, y) == g.op(y, x));
    let normal = a.members.iter().all(|&x| (0..g.n as u32).all(|y| a.contains(g.conj(x, y))));
    if !normal || a.members.iter().any(|&x| x != g.id && central(x)) {
        return Ok(0);
    }
    let mut rebuilt = 0;
    for gamma in gfs {
        let Some(sigma) = ctx.sigma_of(gamma) else { continue };
        for b in ctx.invariant_sylows(gamma, ctx.group.q).map_err(|e| e.to_string())? {
            let glued = ctx.glue(&sigma, &b, &restrict(gamma, &b)).map_err(|e| format!("glue failed: {}", e))?;
            if glued != *gamma {
                return Err("glue does not reproduce the gamma function".into());
            }
            rebuilt += 1;
        }
    }
    Ok(rebuilt)
}

/// The explicit extension from generator values on `A = ⟨a1, a2⟩` agrees
/// with an exhaustive search for relative gamma functions on `A`.
pub fn check_extension_ker_q(ctx: &Context) -> Check {
    let g = ctx.group;
    let a = g.sylow_a();
    let [a1, a2, _] = g.gens;
    let rgfs = naive_gfs(ctx, &a, &preserving(ctx, &a));
    let trivial_on_a: Vec<u32> =
        (0..ctx.aut.order() as u32).filter(|&x| a.members.iter().all(|&y| ctx.aut.apply(x, y) == y)).collect();
    let mut matched = 0;
    let mut absent = 0;
    for k in 0..g.p {
        let a2k = g.element(k, 1, 0);
        for &eta2 in &preserving(ctx, &a) {
            if ctx.aut.apply(eta2, a1) != a1 || ctx.aut.apply(eta2, a2) != a2k {
                continue;
            }
            for &eta1 in &trivial_on_a {
                let found: Vec<&Vec<u32>> =
                    rgfs.iter().filter(|r| r[a1 as usize] == eta1 && r[a2 as usize] == eta2).collect();
                if found.len() > 1 {
                    return Err("several relative gamma functions share the generator values".into());
                }
                match (found.first(), ctx.rgf_extend_ker_q(eta1, eta2, k)) {
                    (Some(r), Ok(ext)) if **r == ext => matched += 1,
                    (None, Err(_)) => absent += 1,
                    _ => return Err(format!("extension disagrees with brute force at k={}", k)),
                }
            }
        }
    }
    if matched == 0 {
        return Err("no instance of the extension".into());
    }
    Ok(format!("{} extensions match, {} assignments extend to nothing", matched, absent))
}

/// `γ([A, γ(A)]) = 1`, with `[A, γ(A)]` generated by `a⁻¹·γ(c)(a)`.
fn kills_commutators(ctx: &Context, a: &Subgroup, map: &[u32]) -> bool {
    let g = ctx.group;
    let gens: Vec<u32> = a
        .members
        .iter()
        .flat_map(|&x| a.members.iter().map(move |&c| (x, c)))
        .map(|(x, c)| g.op(g.inverse(x), ctx.aut.apply(map[c as usize], x)))
        .collect();
    closure(g, &gens).members.iter().all(|&x| map[x as usize] == 0)
}

fn is_morphism(ctx: &Context, a: &Subgroup, map: &[u32]) -> bool {
    a.members.iter().all(|&x| {
        a.members.iter().all(|&y| map[ctx.group.op(x, y) as usize] == ctx.aut.compose(map[x as usize], map[y as usize]))
    })
}

fn satisfies_gfe(ctx: &Context, a: &Subgroup, map: &[u32]) -> bool {
    a.members.iter().all(|&x| {
        a.members.iter().all(|&y| {
            let xy = ctx.group.op(ctx.aut.apply(map[y as usize], x), y);
            a.contains(xy) && map[xy as usize] == ctx.aut.compose(map[x as usize], map[y as usize])
        })
    })
}

/// Homomorphisms `A → Aut(G)` with `A` invariant, for cyclic `A` and for
/// `A = ⟨a1, a2⟩` elementary abelian of order `p²`.
fn invariant_morphisms(ctx: &Context, a: &Subgroup) -> Vec<Vec<u32>> {
    let g = ctx.group;
    let keep = preserving(ctx, a);
    let n = g.n;
    let mut out = Vec::new();
    let gen = a.members.iter().copied().find(|&x| g.element_order(x) as usize == a.order());
    if let Some(x) = gen {
        for &phi in &keep {
            let mut v = vec![UNSET; n];
            let mut y = g.id;
            let mut f = 0;
            for _ in 0..a.order() {
                v[y as usize] = f;
                y = g.op(y, x);
                f = ctx.aut.compose(f, phi);
            }
            if is_morphism(ctx, a, &v) {
                out.push(v);
            }
        }
    } else if a.members == g.sylow_a().members {
        let [a1, a2, _] = g.gens;
        for &f1 in &keep {
            for &f2 in &keep {
                if ctx.aut.compose(f1, f2) != ctx.aut.compose(f2, f1) {
                    continue;
                }
                let mut v = vec![UNSET; n];
                for i in 0..g.p {
                    for j in 0..g.p {
                        let img = ctx.aut.compose(ctx.aut.pow(f1, i as u64), ctx.aut.pow(f2, j as u64));
                        v[g.op(g.pow(a1, i as u64), g.pow(a2, j as u64)) as usize] = img;
                    }
                }
                if is_morphism(ctx, a, &v) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Any two of: `γ([A, γ(A)]) = 1`, `γ` a morphism, the GFE, imply the third.
/// Exercised on all restrictions of enumerated gamma functions to
/// invariant subgroups, on all relative gamma functions on small invariant
/// subgroups, and on all invariant homomorphisms from them.
pub fn check_two_of_three(ctx: &Context, gfs: &[GammaFunction]) -> Check {
    let g = ctx.group;
    let subs = all_subgroups(g);
    let mut maps: Vec<(&Subgroup, Vec<u32>)> = Vec::new();
    for gamma in gfs {
        for a in &subs {
            if ctx.is_invariant(gamma, a) {
                maps.push((a, restrict(gamma, a)));
            }
        }
    }
    let small: Vec<&Subgroup> = subs.iter().filter(|a| a.order() <= g.p as usize * g.p as usize).collect();
    for a in &small {
        for r in naive_gfs(ctx, a, &preserving(ctx, a)) {
            maps.push((a, r));
        }
        for m in invariant_morphisms(ctx, a) {
            maps.push((a, m));
        }
    }
    let mut patterns = [0usize; 8];
    for (a, m) in &maps {
        let c1 = kills_commutators(ctx, a, m);
        let c2 = is_morphism(ctx, a, m);
        let c3 = satisfies_gfe(ctx, a, m);
        if [c1, c2, c3].iter().filter(|&&c| c).count() == 2 {
            return Err(format!("pattern ({}, {}, {}) on a subgroup of order {}", c1, c2, c3, a.order()));
        }
        patterns[(c1 as usize) << 2 | (c2 as usize) << 1 | c3 as usize] += 1;
    }
    let mixed = patterns[0b001] + patterns[0b010];
    if mixed == 0 {
        return Err("no map has exactly one of the three properties".into());
    }
    Ok(format!("{} maps, {} with all three, {} with exactly one", maps.len(), patterns[0b111], mixed))
}

pub fn types_of(ctx: &Context, gfs: &[GammaFunction]) -> Vec<TypeLabel> {
    gfs.iter().map(|g| ctx.target_type(g).unwrap()).collect()
}
