//! Maximal clique enumeration over packed adjacency rows.
//!
//! The enumerator is a pivoting branch-and-bound (Bron–Kerbosch with the
//! pivot maximizing |P ∩ Γ(u)|) run as an explicit stack machine so frame
//! buffers are reused. Cliques stream to the consumer as they are found;
//! nothing is materialized unless the caller collects. A configurable cap
//! on the number of emitted cliques turns runaway enumerations into an
//! explicit error, never silent truncation.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::bits;
use crate::gf::FieldSpec;
use crate::netgraph::{Graph, NetSpec};

pub const DEFAULT_CLIQUE_CAP: u64 = 1_000_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliqueError {
    #[error("clique count cap {0} exceeded")]
    CapExceeded(u64),
    #[error("vertex {0} out of range (n = {1})")]
    VertexRange(u32, usize),
    #[error("seed set is not a clique")]
    SeedNotClique,
}

#[derive(Clone, Copy, Debug)]
pub struct EnumOpts {
    /// Hard cap on the number of emitted cliques.
    pub max_cliques: u64,
    /// When set, branches that already hold more than this many vertices
    /// are cut; emitted cliques are the maximal cliques of size <= max_size.
    pub max_size: Option<u32>,
}

impl Default for EnumOpts {
    fn default() -> Self {
        EnumOpts { max_cliques: DEFAULT_CLIQUE_CAP, max_size: None }
    }
}

impl EnumOpts {
    pub fn capped(max_cliques: u64) -> EnumOpts {
        EnumOpts { max_cliques, ..Default::default() }
    }
}

struct Frame {
    p: Vec<u64>,
    x: Vec<u64>,
    cands: Vec<u32>,
    next: usize,
}

/// Installs frame `depth` from the given candidate/exclusion sets and
/// computes its branch vertices P \ Γ(pivot).
fn install(g: &Graph, frames: &mut Vec<Frame>, depth: usize, p: &[u64], x: &[u64]) {
    if frames.len() == depth {
        frames.push(Frame {
            p: vec![0; g.words()],
            x: vec![0; g.words()],
            cands: Vec::new(),
            next: 0,
        });
    }
    let frame = &mut frames[depth];
    frame.p.copy_from_slice(p);
    frame.x.copy_from_slice(x);
    frame.next = 0;
    frame.cands.clear();

    // Tomita pivot: u in P ∪ X maximizing |P ∩ Γ(u)|.
    let mut best_row: Option<&[u64]> = None;
    let mut best = -1i64;
    for u in bits::iter_ones(&frame.p).chain(bits::iter_ones(&frame.x)) {
        let row = g.row(u as u32);
        let score = bits::count_and(&frame.p, row) as i64;
        if score > best {
            best = score;
            best_row = Some(row);
        }
    }
    match best_row {
        Some(row) => {
            for (i, w) in frame.p.iter().enumerate() {
                let mut rem = w & !row[i];
                while rem != 0 {
                    let b = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    frame.cands.push((i * 64 + b) as u32);
                }
            }
        }
        None => debug_assert!(bits::is_empty(&frame.p)),
    }
}

/// Runs the search from an explicit root (R = `r`, candidates `p0`,
/// exclusion `x0`), emitting every maximal clique exactly once. `budget`
/// is shared across parallel branches.
fn bk_run(
    g: &Graph,
    mut r: Vec<u32>,
    p0: Vec<u64>,
    x0: Vec<u64>,
    opts: &EnumOpts,
    budget: &AtomicU64,
    f: &mut impl FnMut(&[u32]),
) -> Result<u64, CliqueError> {
    let mut emitted = 0u64;
    let mut sorted: Vec<u32> = Vec::new();
    let mut emit = |r: &[u32], f: &mut dyn FnMut(&[u32])| -> Result<(), CliqueError> {
        if budget.fetch_add(1, Ordering::Relaxed) >= opts.max_cliques {
            return Err(CliqueError::CapExceeded(opts.max_cliques));
        }
        emitted += 1;
        sorted.clear();
        sorted.extend_from_slice(r);
        sorted.sort_unstable();
        f(&sorted);
        Ok(())
    };

    if bits::is_empty(&p0) {
        if bits::is_empty(&x0) && !r.is_empty() {
            emit(&r, f)?;
        }
        return Ok(emitted);
    }

    let mut frames: Vec<Frame> = Vec::new();
    let mut scratch_p = vec![0u64; g.words()];
    let mut scratch_x = vec![0u64; g.words()];
    install(g, &mut frames, 0, &p0, &x0);
    let mut depth = 0usize;
    let root_len = r.len();
    loop {
        let frame = &mut frames[depth];
        if frame.next < frame.cands.len() {
            let v = frame.cands[frame.next];
            frame.next += 1;
            if let Some(cap) = opts.max_size {
                if r.len() as u32 >= cap {
                    // branch would exceed the size bound
                    bits::clear(&mut frame.p, v as usize);
                    bits::set(&mut frame.x, v as usize);
                    continue;
                }
            }
            let row = g.row(v);
            bits::copy_and(&mut scratch_p, &frame.p, row);
            let p_empty = bits::is_empty(&scratch_p);
            bits::clear(&mut frame.p, v as usize);
            if p_empty {
                // no further extension; maximal iff X ∩ Γ(v) is empty too
                if bits::count_and(&frame.x, row) == 0 {
                    r.push(v);
                    emit(&r, f)?;
                    r.pop();
                }
                bits::set(&mut frame.x, v as usize);
            } else {
                bits::copy_and(&mut scratch_x, &frame.x, row);
                bits::set(&mut frame.x, v as usize);
                r.push(v);
                install(g, &mut frames, depth + 1, &scratch_p, &scratch_x);
                depth += 1;
            }
        } else if depth == 0 {
            break;
        } else {
            depth -= 1;
            r.pop();
        }
    }
    debug_assert_eq!(r.len(), root_len);
    Ok(emitted)
}

fn full_vertex_set(g: &Graph) -> Vec<u64> {
    let mut p = vec![0u64; g.words()];
    for v in 0..g.n() {
        bits::set(&mut p, v);
    }
    p
}

/// Streams every maximal clique of `g` to `f`, sequentially. Returns the
/// number of cliques emitted.
pub fn for_each_maximal_clique(
    g: &Graph,
    opts: &EnumOpts,
    mut f: impl FnMut(&[u32]),
) -> Result<u64, CliqueError> {
    let budget = AtomicU64::new(0);
    let p = full_vertex_set(g);
    let x = vec![0u64; g.words()];
    bk_run(g, Vec::new(), p, x, opts, &budget, &mut f)
}

/// Collects all maximal cliques, sorted lexicographically.
pub fn maximal_cliques(g: &Graph, opts: &EnumOpts) -> Result<Vec<Vec<u32>>, CliqueError> {
    let mut out = Vec::new();
    for_each_maximal_clique(g, opts, |c| out.push(c.to_vec()))?;
    out.sort_unstable();
    Ok(out)
}

/// A top-level branch of the search tree: the work item handed to workers.
struct Branch {
    v: u32,
    p: Vec<u64>,
    x: Vec<u64>,
}

fn top_level_branches(g: &Graph) -> Vec<Branch> {
    let mut branches = Vec::new();
    let mut p = full_vertex_set(g);
    let mut x = vec![0u64; g.words()];
    if g.n() == 0 {
        return branches;
    }
    // same pivot rule as Machine::install, applied once at the root
    let mut best = -1i64;
    let mut best_row: Option<&[u64]> = None;
    for u in 0..g.n() as u32 {
        let score = bits::count_and(&p, g.row(u)) as i64;
        if score > best {
            best = score;
            best_row = Some(g.row(u));
        }
    }
    let row = best_row.expect("nonempty graph");
    let cands: Vec<u32> = bits::iter_ones(&p)
        .filter(|&v| !bits::get(row, v))
        .map(|v| v as u32)
        .collect();
    for v in cands {
        let mut np = vec![0u64; g.words()];
        let mut nx = vec![0u64; g.words()];
        bits::copy_and(&mut np, &p, g.row(v));
        bits::copy_and(&mut nx, &x, g.row(v));
        branches.push(Branch { v, p: np, x: nx });
        bits::clear(&mut p, v as usize);
        bits::set(&mut x, v as usize);
    }
    branches
}

/// Parallel enumeration: top-level branches are distributed over the rayon
/// pool, each worker task folds cliques into its own state with `consume`,
/// and the per-task states are combined with `merge`. `merge` must be
/// commutative and associative (or the caller must normalize the result)
/// for the outcome to be independent of the worker count.
pub fn par_maximal_cliques<S, FM, FC, FR>(
    g: &Graph,
    opts: &EnumOpts,
    make: FM,
    consume: FC,
    merge: FR,
) -> Result<(S, u64), CliqueError>
where
    S: Send,
    FM: Fn() -> S + Sync,
    FC: Fn(&mut S, &[u32]) + Sync,
    FR: Fn(S, S) -> S + Sync,
{
    let budget = AtomicU64::new(0);
    let branches = top_level_branches(g);
    // Coarse chunks keep the number of fold states (and their caches) small.
    let min_len = (branches.len() / (4 * rayon::current_num_threads().max(1))).max(1);
    let reduced: Option<(S, u64)> = branches
        .into_par_iter()
        .with_min_len(min_len)
        .try_fold(
            || None::<(S, u64)>,
            |acc, br| -> Result<Option<(S, u64)>, CliqueError> {
                let (mut state, mut count) = acc.unwrap_or_else(|| (make(), 0));
                count += bk_run(g, vec![br.v], br.p, br.x, opts, &budget, &mut |c| {
                    consume(&mut state, c)
                })?;
                Ok(Some((state, count)))
            },
        )
        .try_reduce(
            || None,
            |a, b| {
                Ok(match (a, b) {
                    (Some((sa, ca)), Some((sb, cb))) => Some((merge(sa, sb), ca + cb)),
                    (x, y) => x.or(y),
                })
            },
        )?;
    match reduced {
        Some((state, total)) => Ok((state, total)),
        None => Ok((make(), 0)),
    }
}

/// Maximal cliques containing every vertex of `seed` (which must itself be
/// a clique). Sorted output.
pub fn maximal_cliques_containing(
    g: &Graph,
    seed: &[u32],
    opts: &EnumOpts,
) -> Result<Vec<Vec<u32>>, CliqueError> {
    if !is_clique(g, seed)? {
        return Err(CliqueError::SeedNotClique);
    }
    let mut p = common_neighbors_bits(g, seed);
    for &s in seed {
        bits::clear(&mut p, s as usize);
    }
    let x = vec![0u64; g.words()];
    let budget = AtomicU64::new(0);
    let mut out = Vec::new();
    let mut r: Vec<u32> = seed.to_vec();
    r.sort_unstable();
    if bits::is_empty(&p) {
        // seed is already maximal (or the graph has nothing to add)
        out.push(r);
        return Ok(out);
    }
    bk_run(g, r, p, x, opts, &budget, &mut |c| {
        let mut c = c.to_vec();
        c.sort_unstable();
        out.push(c);
    })?;
    out.sort_unstable();
    Ok(out)
}

/// All cliques of size exactly `k` (maximal or not), by ordered extension:
/// each clique is generated once, in ascending vertex order.
pub fn cliques_of_size(g: &Graph, k: u32) -> Vec<Vec<u32>> {
    fn rec(g: &Graph, k: u32, r: &mut Vec<u32>, cand: &mut [Vec<u64>], out: &mut Vec<Vec<u32>>) {
        let d = r.len();
        if d as u32 == k {
            out.push(r.clone());
            return;
        }
        if bits::count(&cand[d]) + (d as u32) < k {
            return;
        }
        let vs: Vec<u32> = bits::iter_ones(&cand[d]).map(|v| v as u32).collect();
        for v in vs {
            {
                let (head, tail) = cand.split_at_mut(d + 1);
                bits::copy_and(&mut tail[0], &head[d], g.row(v));
                // extend upward only: drop candidates <= v
                let (wi, bi) = (v as usize >> 6, v as usize & 63);
                for w in tail[0].iter_mut().take(wi) {
                    *w = 0;
                }
                if bi == 63 {
                    tail[0][wi] = 0;
                } else {
                    tail[0][wi] &= !((1u64 << (bi + 1)) - 1);
                }
            }
            r.push(v);
            rec(g, k, r, cand, out);
            r.pop();
        }
    }

    let mut out = Vec::new();
    if k == 0 || g.n() == 0 {
        return out;
    }
    let words = g.words();
    let mut cand: Vec<Vec<u64>> = vec![vec![0; words]; k as usize + 1];
    for v in 0..g.n() {
        bits::set(&mut cand[0], v);
    }
    let mut r: Vec<u32> = Vec::with_capacity(k as usize);
    rec(g, k, &mut r, &mut cand, &mut out);
    out.sort_unstable();
    out
}

fn validate(g: &Graph, s: &[u32]) -> Result<(), CliqueError> {
    for &v in s {
        if v as usize >= g.n() {
            return Err(CliqueError::VertexRange(v, g.n()));
        }
    }
    Ok(())
}

pub fn is_clique(g: &Graph, s: &[u32]) -> Result<bool, CliqueError> {
    validate(g, s)?;
    for (i, &u) in s.iter().enumerate() {
        for &v in &s[i + 1..] {
            if u == v || !g.adjacent(u, v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True when `s` is a clique and no outside vertex extends it; for cliques
/// this is exactly the closure condition S^⊥ = S.
pub fn is_maximal_clique(g: &Graph, s: &[u32]) -> Result<bool, CliqueError> {
    if !is_clique(g, s)? {
        return Ok(false);
    }
    let mut closure = common_neighbors(g, s);
    closure.sort_unstable();
    let mut sorted: Vec<u32> = s.to_vec();
    sorted.sort_unstable();
    Ok(closure == sorted)
}

/// S^⊥ = ∩_{s ∈ S} ({s} ∪ Γ(s)) as a bitset; the empty intersection is the
/// full vertex set.
pub fn common_neighbors_bits(g: &Graph, s: &[u32]) -> Vec<u64> {
    let mut acc = full_vertex_set(g);
    let mut tmp = vec![0u64; g.words()];
    for &v in s {
        tmp.copy_from_slice(g.row(v));
        bits::set(&mut tmp, v as usize);
        bits::and_into(&mut acc, &tmp);
    }
    acc
}

pub fn common_neighbors(g: &Graph, s: &[u32]) -> Vec<u32> {
    bits::iter_ones(&common_neighbors_bits(g, s))
        .map(|v| v as u32)
        .collect()
}

pub fn size_histogram<'a>(cliques: impl IntoIterator<Item = &'a Vec<u32>>) -> BTreeMap<u32, u64> {
    let mut h = BTreeMap::new();
    for c in cliques {
        *h.entry(c.len() as u32).or_insert(0) += 1;
    }
    h
}

/// Outcome of the clique-bound check on a net graph.
#[derive(Debug, Clone)]
pub struct DelsarteReport {
    /// The eigenvalue bound for a net graph of order r; always r.
    pub bound: u32,
    pub max_size: u32,
    pub attained: bool,
    /// Number of maximum-size cliques and how many of them are lines.
    pub max_count: u64,
    pub lines_among_max: u64,
    /// Lines of the net: m parallel classes of r lines each.
    pub line_total: u64,
}

/// Verifies that no clique exceeds the order r of the net and reports how
/// the bound is attained. Requires 0 < m < r+1.
pub fn delsarte_check(
    field: &FieldSpec,
    net: &NetSpec,
    g: &Graph,
    opts: &EnumOpts,
) -> Result<DelsarteReport, CliqueError> {
    assert!(
        net.m() > 0 && net.m() < net.r() + 1,
        "bound applies to proper nets with at least one direction"
    );
    let r = net.r();
    let mut max_size = 0u32;
    let mut max_count = 0u64;
    let mut lines_among_max = 0u64;
    for_each_maximal_clique(g, opts, |c| {
        let s = c.len() as u32;
        match s.cmp(&max_size) {
            std::cmp::Ordering::Greater => {
                max_size = s;
                max_count = 1;
                lines_among_max = crate::netgraph::is_line(field, c) as u64;
            }
            std::cmp::Ordering::Equal => {
                max_count += 1;
                lines_among_max += crate::netgraph::is_line(field, c) as u64;
            }
            std::cmp::Ordering::Less => {}
        }
    })?;
    assert!(max_size <= r, "clique of size {max_size} exceeds the bound {r}");
    Ok(DelsarteReport {
        bound: r,
        max_size,
        attained: max_size == r,
        max_count,
        lines_among_max,
        line_total: net.m() as u64 * r as u64,
    })
}

/// Brute-force reference enumeration used as the oracle in tests: checks
/// every vertex subset. Only sensible for tiny graphs.
pub mod naive {
    use super::Graph;

    pub fn maximal_cliques_bruteforce(g: &Graph) -> Vec<Vec<u32>> {
        let n = g.n();
        assert!(n <= 20, "oracle is exponential; keep n small");
        let mut out = Vec::new();
        'subsets: for mask in 1u32..(1 << n) {
            let verts: Vec<u32> = (0..n as u32).filter(|&v| mask >> v & 1 == 1).collect();
            for (i, &u) in verts.iter().enumerate() {
                for &v in &verts[i + 1..] {
                    if !g.adjacent(u, v) {
                        continue 'subsets;
                    }
                }
            }
            // maximal: no outside vertex adjacent to all
            for w in 0..n as u32 {
                if mask >> w & 1 == 0 && verts.iter().all(|&u| g.adjacent(u, w)) {
                    continue 'subsets;
                }
            }
            out.push(verts);
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::netgraph::build_paley;

    fn k4() -> Graph {
        Graph::from_pred(4, |_, _| true)
    }

    #[test]
    fn k4_single_maximal_clique() {
        let cliques = maximal_cliques(&k4(), &EnumOpts::default()).unwrap();
        assert_eq!(cliques, vec![vec![0, 1, 2, 3]]);
        assert_eq!(size_histogram(cliques.iter()), BTreeMap::from([(4, 1)]));
    }

    #[test]
    fn pentagon_has_five_edges_as_cliques() {
        let f = FieldSpec::new(5, 1).unwrap();
        let (g, _) = build_paley(&f).unwrap();
        let cliques = maximal_cliques(&g, &EnumOpts::default()).unwrap();
        assert_eq!(cliques, naive::maximal_cliques_bruteforce(&g));
        assert_eq!(cliques.len(), 5);
        assert!(cliques.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn paley_9_matches_bruteforce() {
        let f = FieldSpec::new(3, 2).unwrap();
        let (g, _) = build_paley(&f).unwrap();
        let fast = maximal_cliques(&g, &EnumOpts::default()).unwrap();
        let slow = naive::maximal_cliques_bruteforce(&g);
        assert_eq!(fast, slow);
        // all maximal cliques are triangles (the 6 lines)
        assert!(fast.iter().all(|c| c.len() == 3));
        assert_eq!(fast.len(), 6);
        for c in &fast {
            assert!(is_maximal_clique(&g, c).unwrap());
        }
    }

    #[test]
    fn cap_is_an_error_not_truncation() {
        let f = FieldSpec::new(3, 2).unwrap();
        let (g, _) = build_paley(&f).unwrap();
        let err = maximal_cliques(&g, &EnumOpts::capped(3)).unwrap_err();
        assert_eq!(err, CliqueError::CapExceeded(3));
    }

    #[test]
    fn parallel_matches_sequential() {
        let f = FieldSpec::new(5, 2).unwrap();
        let (g, _) = build_paley(&f).unwrap();
        let seq = maximal_cliques(&g, &EnumOpts::default()).unwrap();
        let (mut par, count) = par_maximal_cliques(
            &g,
            &EnumOpts::default(),
            Vec::new,
            |acc: &mut Vec<Vec<u32>>, c| acc.push(c.to_vec()),
            |mut a, b| {
                a.extend(b);
                a
            },
        )
        .unwrap();
        par.sort_unstable();
        assert_eq!(count as usize, par.len());
        assert_eq!(seq, par);
    }

    #[test]
    fn common_neighbors_basics() {
        let f = FieldSpec::new(5, 2).unwrap();
        let (g, _) = build_paley(&f).unwrap();
        // empty set: the whole vertex set
        assert_eq!(common_neighbors(&g, &[]).len(), 25);
        // single vertex: closed neighborhood
        let x = 7u32;
        let mut expected: Vec<u32> = g.neighbors(x).collect();
        expected.push(x);
        expected.sort_unstable();
        assert_eq!(common_neighbors(&g, &[x]), expected);
        // monotone nonincreasing
        let mut prev = g.n();
        let set: Vec<u32> = vec![0, 1, 2];
        for k in 0..=set.len() {
            let size = common_neighbors(&g, &set[..k]).len();
            assert!(size <= prev);
            prev = size;
        }
    }

    #[test]
    fn restricted_enumeration_seeds() {
        let f = FieldSpec::new(3, 2).unwrap();
        let (g, _) = build_paley(&f).unwrap();
        let all = maximal_cliques(&g, &EnumOpts::default()).unwrap();
        let seed = vec![all[0][0], all[0][1]];
        let through = maximal_cliques_containing(&g, &seed, &EnumOpts::default()).unwrap();
        let expected: Vec<Vec<u32>> = all
            .iter()
            .filter(|c| seed.iter().all(|s| c.contains(s)))
            .cloned()
            .collect();
        assert_eq!(through, expected);
        assert!(maximal_cliques_containing(&g, &[0, 1, 2, 3], &EnumOpts::default()).is_err());
    }

    #[test]
    fn empty_and_clique_predicates() {
        let g = k4();
        assert!(is_clique(&g, &[]).unwrap());
        assert!(!is_maximal_clique(&g, &[]).unwrap());
        assert!(is_clique(&g, &[1, 3]).unwrap());
        assert!(!is_maximal_clique(&g, &[1, 3]).unwrap());
        assert!(is_maximal_clique(&g, &[0, 1, 2, 3]).unwrap());
        assert_eq!(
            is_clique(&g, &[9]).unwrap_err(),
            CliqueError::VertexRange(9, 4)
        );
    }

    #[test]
    fn bounded_size_enumeration() {
        let f = FieldSpec::new(5, 2).unwrap();
        let (g, _) = build_paley(&f).unwrap();
        let all = maximal_cliques(&g, &EnumOpts::default()).unwrap();
        let small_expected: Vec<Vec<u32>> =
            all.iter().filter(|c| c.len() <= 3).cloned().collect();
        let opts = EnumOpts { max_size: Some(3), ..Default::default() };
        let got = maximal_cliques(&g, &opts).unwrap();
        assert_eq!(got, small_expected);
    }

    #[test]
    fn exact_size_cliques() {
        let f = FieldSpec::new(3, 2).unwrap();
        let (g, _) = build_paley(&f).unwrap();
        let triangles = cliques_of_size(&g, 3);
        assert_eq!(triangles.len(), 6);
        let edges = cliques_of_size(&g, 2);
        assert_eq!(edges.len(), g.edge_count() as usize);
    }
}
