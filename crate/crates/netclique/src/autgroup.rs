//! Automorphism groups of the graph families and orbit classification of
//! their maximal cliques.
//!
//! Groups come in two shapes. The closed-form families (Paley, Peisert,
//! net-linear, full semilinear) are sets of affine semilinear maps
//! z ↦ a·z^(p^i) + b described by a constraint on (dlog a mod d, i); they
//! are never materialized element by element unless asked. Everything else
//! (brute-forced groups, Taylor covers, user-supplied generators) is an
//! explicit permutation group.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::cliques::{self, CliqueError, EnumOpts};
use crate::gf::{Fe, FieldSpec, GfError};
use crate::netgraph::{Graph, NetSpec};

mod brute;
mod canon;
mod taylor;

pub use brute::brute_force_automorphisms;
pub use taylor::taylor_paley_group;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("field error: {0}")]
    Field(#[from] GfError),
    #[error("group precondition violated: {0}")]
    Precondition(String),
    #[error("graph has {0} vertices; brute-force search is capped at {1}")]
    VertexCap(usize, usize),
    #[error("generator does not preserve the edge set: maps ({0}, {1}) wrongly")]
    NotAutomorphism(u32, u32),
    #[error("orbit size {orbit} does not divide the group order {order}")]
    OrbitDivisibility { orbit: u64, order: u128 },
    #[error("clique enumeration failed: {0}")]
    Cliques(#[from] CliqueError),
    #[error("group order unknown; supply an explicit element set")]
    UnknownOrder,
}

/// An affine semilinear map z ↦ a·z^(p^frob) + b with a ≠ 0.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub a: Fe,
    pub b: Fe,
    pub frob: u32,
}

impl AffineMap {
    pub fn identity() -> AffineMap {
        AffineMap { a: Fe::ONE, b: Fe::ZERO, frob: 0 }
    }

    pub fn translation(b: Fe) -> AffineMap {
        AffineMap { a: Fe::ONE, b, frob: 0 }
    }

    pub fn scaling(a: Fe) -> AffineMap {
        AffineMap { a, b: Fe::ZERO, frob: 0 }
    }

    #[inline]
    pub fn apply(&self, f: &FieldSpec, z: Fe) -> Fe {
        f.add(f.mul(self.a, f.frobenius(z, self.frob)), self.b)
    }

    /// self ∘ other: apply `other` first.
    pub fn compose(&self, f: &FieldSpec, other: &AffineMap) -> AffineMap {
        AffineMap {
            a: f.mul(self.a, f.frobenius(other.a, self.frob)),
            b: f.add(f.mul(self.a, f.frobenius(other.b, self.frob)), self.b),
            frob: (self.frob + other.frob) % f.e(),
        }
    }

    pub fn inverse(&self, f: &FieldSpec) -> AffineMap {
        let j = (f.e() - self.frob) % f.e();
        let ainv = f.inv(self.a).expect("a != 0");
        AffineMap {
            a: f.frobenius(ainv, j),
            b: f.frobenius(f.neg(f.mul(ainv, self.b)), j),
            frob: j,
        }
    }

    /// Image of a vertex set, re-sorted.
    pub fn apply_to_set(&self, f: &FieldSpec, set: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = set.iter().map(|&v| self.apply(f, Fe(v)).code()).collect();
        out.sort_unstable();
        out
    }

    /// The map as a vertex permutation on field codes.
    pub fn as_permutation(&self, f: &FieldSpec) -> Vec<u32> {
        (0..f.q()).map(|c| self.apply(f, Fe(c)).code()).collect()
    }
}

/// Allowed linear parts (a, i): dlog(a) mod `modulus` must lie in
/// `classes_by_frob[i]`.
#[derive(Clone, Debug)]
pub struct AllowedLinear {
    pub modulus: u32,
    pub classes_by_frob: Vec<Vec<u32>>,
}

impl AllowedLinear {
    pub fn contains(&self, a: Fe, frob: u32) -> bool {
        if a.is_zero() {
            return false;
        }
        let class = (a.0 - 1) % self.modulus;
        self.classes_by_frob[frob as usize].contains(&class)
    }

    fn linear_count(&self, field: &FieldSpec) -> u64 {
        let per_class = (field.group_order() / self.modulus) as u64;
        self.classes_by_frob
            .iter()
            .map(|c| c.len() as u64 * per_class)
            .sum()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum AffineKind {
    Paley,
    Peisert,
    NetLinear,
    FullSemilinear,
}

/// A closed-form group of affine semilinear maps z ↦ a·z^(p^i) + b, with
/// all translations and the stated constraint on (a, i).
#[derive(Clone)]
pub struct AffineGroup {
    pub field: Arc<FieldSpec>,
    pub kind: AffineKind,
    pub allowed: AllowedLinear,
    pub order: u128,
    pub generators: Vec<AffineMap>,
    /// Whether this is certified to be the full automorphism group of the
    /// ambient graph.
    pub known_full: bool,
    /// For the exceptional Peisert orders: the factor by which the true
    /// group is larger than this one.
    pub full_order_factor: Option<u32>,
}

impl AffineGroup {
    pub fn contains(&self, map: &AffineMap) -> bool {
        map.frob < self.field.e() && self.allowed.contains(map.a, map.frob)
    }

    /// All linear parts (a, frob) in deterministic order.
    pub fn linear_parts(&self) -> impl Iterator<Item = (Fe, u32)> + '_ {
        let f = &self.field;
        let modulus = self.allowed.modulus;
        let cosets = f.group_order() / modulus;
        self.allowed
            .classes_by_frob
            .iter()
            .enumerate()
            .flat_map(move |(i, classes)| {
                classes.iter().flat_map(move |&v| {
                    (0..cosets).map(move |t| {
                        (f.exp(v as u64 + modulus as u64 * t as u64), i as u32)
                    })
                })
            })
    }

    /// All group elements; order q times the number of linear parts.
    pub fn elements(&self) -> impl Iterator<Item = AffineMap> + '_ {
        self.linear_parts().flat_map(move |(a, frob)| {
            (0..self.field.q()).map(move |b| AffineMap { a, b: Fe(b), frob })
        })
    }
}

fn translation_generators(field: &Arc<FieldSpec>) -> Vec<AffineMap> {
    // 1, β, ..., β^(e-1) span the field additively.
    (0..field.e())
        .map(|j| AffineMap::translation(field.exp(j as u64)))
        .collect()
}

/// The full automorphism group of the Paley graph P(q): maps
/// z ↦ a·z^(p^i) + b with a a nonzero square; order e·q(q-1)/2.
pub fn paley_group(field: &Arc<FieldSpec>) -> Result<AffineGroup, GroupError> {
    let q = field.q();
    if q % 4 != 1 {
        return Err(GroupError::Precondition(format!(
            "Paley group needs q ≡ 1 (mod 4), got {q}"
        )));
    }
    let e = field.e();
    let mut generators = translation_generators(field);
    generators.push(AffineMap::scaling(field.exp(2)));
    if e > 1 {
        generators.push(AffineMap { a: Fe::ONE, b: Fe::ZERO, frob: 1 });
    }
    Ok(AffineGroup {
        field: field.clone(),
        kind: AffineKind::Paley,
        allowed: AllowedLinear { modulus: 2, classes_by_frob: vec![vec![0]; e as usize] },
        order: e as u128 * q as u128 * (q as u128 - 1) / 2,
        generators,
        known_full: true,
        full_order_factor: None,
    })
}

/// The Peisert group of P*(q), q = p^f, p ≡ 3 (mod 4), f even: generated by
/// translations, z ↦ β⁴z and the twisted Frobenius z ↦ β·z^p. In normal
/// form these are the maps with dlog(a) ≡ 0 (mod 4) for even i and
/// ≡ 1 (mod 4) for odd i; order f·q(q-1)/4.
///
/// For q in {9, 49, 81} the full group is 2, 3, 6 times larger and the
/// returned spec carries that flag; orbit counts computed from the flagged
/// spec may merge and are refused by the table layer unless the group is
/// augmented by brute force or the caller opts in.
pub fn peisert_group(field: &Arc<FieldSpec>) -> Result<AffineGroup, GroupError> {
    let (p, e, q) = (field.p(), field.e(), field.q());
    if p % 4 != 3 || e % 2 != 0 {
        return Err(GroupError::Precondition(format!(
            "Peisert group needs p ≡ 3 (mod 4) and even degree, got p = {p}, f = {e}"
        )));
    }
    let classes_by_frob: Vec<Vec<u32>> =
        (0..e).map(|i| if i % 2 == 0 { vec![0] } else { vec![1] }).collect();
    let mut generators = translation_generators(field);
    generators.push(AffineMap::scaling(field.exp(4)));
    generators.push(AffineMap { a: field.beta(), b: Fe::ZERO, frob: 1 });
    let full_order_factor = match q {
        9 => Some(2),
        49 => Some(3),
        81 => Some(6),
        _ => None,
    };
    Ok(AffineGroup {
        field: field.clone(),
        kind: AffineKind::Peisert,
        allowed: AllowedLinear { modulus: 4, classes_by_frob },
        order: e as u128 * q as u128 * (q as u128 - 1) / 4,
        generators,
        known_full: full_order_factor.is_none(),
        full_order_factor,
    })
}

/// The group of semilinear maps z ↦ a·z^(p^i) + b on GF(r^2) stabilizing
/// the connection set of the net. Membership depends on a only through its
/// coset class v = dlog(a) mod (r+1): the map permutes direction classes by
/// c ↦ v + c·p^i, and (v, i) is allowed exactly when that permutes D.
pub fn net_linear_group(field: &Arc<FieldSpec>, net: &NetSpec) -> Result<AffineGroup, GroupError> {
    let r = net.r();
    if field.q() as u64 != r as u64 * r as u64 {
        return Err(GroupError::Precondition(format!(
            "field order {} is not {}^2",
            field.q(),
            r
        )));
    }
    let e = field.e();
    let modulus = r + 1;
    let dirs: Vec<u32> = net.directions().collect();
    let mut classes_by_frob = Vec::with_capacity(e as usize);
    for i in 0..e {
        let pi = mod_pow(field.p() as u64, i as u64, modulus as u64) as u32;
        let mut classes = Vec::new();
        for v in 0..modulus {
            let mut image: Vec<u32> =
                dirs.iter().map(|&c| (v + c * pi) % modulus).collect();
            image.sort_unstable();
            if image == dirs {
                classes.push(v);
            }
        }
        classes_by_frob.push(classes);
    }
    let allowed = AllowedLinear { modulus, classes_by_frob };
    let order = field.q() as u128 * allowed.linear_count(field) as u128;
    let mut generators = translation_generators(field);
    generators.push(AffineMap::scaling(field.exp(modulus as u64))); // F_r^* part
    for (i, classes) in allowed.classes_by_frob.iter().enumerate() {
        for &v in classes {
            if v == 0 && i == 0 {
                continue;
            }
            generators.push(AffineMap { a: field.exp(v as u64), b: Fe::ZERO, frob: i as u32 });
        }
    }
    Ok(AffineGroup {
        field: field.clone(),
        kind: AffineKind::NetLinear,
        allowed,
        order,
        generators,
        known_full: false,
        full_order_factor: None,
    })
}

/// All of AΓL(1, q): order e·q(q-1). Used to classify configurations up to
/// plane equivalence rather than graph automorphism.
pub fn full_semilinear_group(field: &Arc<FieldSpec>) -> AffineGroup {
    let e = field.e();
    let q = field.q();
    let mut generators = translation_generators(field);
    generators.push(AffineMap::scaling(field.beta()));
    if e > 1 {
        generators.push(AffineMap { a: Fe::ONE, b: Fe::ZERO, frob: 1 });
    }
    AffineGroup {
        field: field.clone(),
        kind: AffineKind::FullSemilinear,
        allowed: AllowedLinear { modulus: 1, classes_by_frob: vec![vec![0]; e as usize] },
        order: e as u128 * q as u128 * (q as u128 - 1),
        generators,
        known_full: false,
        full_order_factor: None,
    }
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

pub type Perm = Vec<u32>;

pub fn apply_perm_to_set(perm: &[u32], set: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = set.iter().map(|&v| perm[v as usize]).collect();
    out.sort_unstable();
    out
}

/// An explicit permutation group on graph vertices.
#[derive(Clone)]
pub struct ExplicitGroup {
    pub n: u32,
    pub generators: Vec<Perm>,
    /// Full element list when it was feasible to materialize.
    pub elements: Option<Vec<Perm>>,
    pub order: Option<u128>,
    pub known_full: bool,
}

/// A group acting on the vertices of one ambient graph.
pub enum GroupSpec {
    Affine(AffineGroup),
    Explicit(ExplicitGroup),
}

impl GroupSpec {
    pub fn order(&self) -> Option<u128> {
        match self {
            GroupSpec::Affine(g) => Some(g.order),
            GroupSpec::Explicit(g) => g.order,
        }
    }

    pub fn known_full(&self) -> bool {
        match self {
            GroupSpec::Affine(g) => g.known_full,
            GroupSpec::Explicit(g) => g.known_full,
        }
    }

    /// Generators as vertex permutations.
    pub fn generator_permutations(&self) -> Vec<Perm> {
        match self {
            GroupSpec::Affine(g) => g
                .generators
                .iter()
                .map(|m| m.as_permutation(&g.field))
                .collect(),
            GroupSpec::Explicit(g) => g.generators.clone(),
        }
    }

    /// Exhaustively checks that every generator preserves the edge set.
    pub fn check_generators_preserve(&self, graph: &Graph) -> Result<(), GroupError> {
        for perm in self.generator_permutations() {
            if perm.len() != graph.n() {
                return Err(GroupError::Precondition(format!(
                    "generator acts on {} points, graph has {}",
                    perm.len(),
                    graph.n()
                )));
            }
            for u in 0..graph.n() as u32 {
                for v in u + 1..graph.n() as u32 {
                    if graph.adjacent(u, v)
                        != graph.adjacent(perm[u as usize], perm[v as usize])
                    {
                        return Err(GroupError::NotAutomorphism(u, v));
                    }
                }
            }
        }
        Ok(())
    }

    /// |G| / |orbit of the clique|, the stabilizer order. For affine groups
    /// and explicit element lists this counts fixing elements directly; for
    /// generator-only groups the orbit is closed first.
    pub fn stabilizer_order(&self, clique: &[u32]) -> Result<u128, GroupError> {
        match self {
            GroupSpec::Affine(g) => {
                let f = &g.field;
                let mut sorted: Vec<u32> = clique.to_vec();
                sorted.sort_unstable();
                let mut member = vec![false; f.q() as usize];
                for &v in &sorted {
                    member[v as usize] = true;
                }
                let mut stab = 0u128;
                for (a, frob) in g.linear_parts() {
                    // candidate translations: must map clique[0] into the set
                    let base = f.mul(a, f.frobenius(Fe(sorted[0]), frob));
                    for &target in &sorted {
                        let b = f.sub(Fe(target), base);
                        let map = AffineMap { a, b, frob };
                        if sorted
                            .iter()
                            .all(|&v| member[map.apply(f, Fe(v)).code() as usize])
                        {
                            stab += 1;
                        }
                    }
                }
                Ok(stab)
            }
            GroupSpec::Explicit(g) => {
                if let Some(elements) = &g.elements {
                    let sorted = {
                        let mut s = clique.to_vec();
                        s.sort_unstable();
                        s
                    };
                    let stab = elements
                        .iter()
                        .filter(|perm| apply_perm_to_set(perm, &sorted) == sorted)
                        .count();
                    Ok(stab as u128)
                } else {
                    let order = g.order.ok_or(GroupError::UnknownOrder)?;
                    let orbit = orbit_of_set(&g.generators, clique);
                    let len = orbit.len() as u128;
                    if order % len != 0 {
                        return Err(GroupError::OrbitDivisibility {
                            orbit: orbit.len() as u64,
                            order,
                        });
                    }
                    Ok(order / len)
                }
            }
        }
    }
}

/// Closure of a permutation generator set into the full element list.
/// Only sensible for small groups; the Taylor covers never call this.
pub fn permutation_group_closure(generators: &[Perm], n: u32) -> Vec<Perm> {
    use std::collections::HashSet;
    let identity: Perm = (0..n).collect();
    let mut seen: HashSet<Perm> = HashSet::new();
    seen.insert(identity.clone());
    let mut queue = vec![identity];
    while let Some(cur) = queue.pop() {
        for gen in generators {
            let composed: Perm = cur.iter().map(|&x| gen[x as usize]).collect();
            if seen.insert(composed.clone()) {
                queue.push(composed);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

/// Orbit of a vertex set under generator closure.
pub fn orbit_of_set(generators: &[Perm], set: &[u32]) -> Vec<Vec<u32>> {
    let mut start = set.to_vec();
    start.sort_unstable();
    let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
    seen.insert(start.clone(), ());
    let mut queue = vec![start];
    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head].clone();
        head += 1;
        for gen in generators {
            let img = apply_perm_to_set(gen, &cur);
            if !seen.contains_key(&img) {
                seen.insert(img.clone(), ());
                queue.push(img);
            }
        }
    }
    queue.sort_unstable();
    queue
}

/// One orbit of maximal cliques.
#[derive(Clone, Debug)]
pub struct OrbitInfo {
    /// Deterministic representative: the least clique of the orbit.
    pub rep: Vec<u32>,
    pub size: u32,
    pub orbit_len: u64,
    pub stabilizer: Option<u128>,
}

#[derive(Debug)]
pub struct OrbitClassification {
    pub orbits: Vec<OrbitInfo>,
    /// size -> number of orbits of that clique size.
    pub orbit_counts: BTreeMap<u32, u64>,
    /// size -> number of cliques of that size.
    pub clique_counts: BTreeMap<u32, u64>,
    pub total_cliques: u64,
    pub group_order: Option<u128>,
    /// Whether the acting group is certified to be the full group; when
    /// false, orbit counts are for a subgroup and may merge under the full
    /// group.
    pub certified_full: bool,
}

/// Streams every maximal clique of `g` and partitions them into orbits of
/// `grp`.
///
/// Closed-form affine groups use per-clique canonical images (the least
/// sorted image over the orbit), so memory stays proportional to the number
/// of orbits and enumeration parallelizes; explicit groups intern cliques
/// and run a union-find over generator images.
pub fn classify_maximal_cliques(
    g: &Graph,
    grp: &GroupSpec,
    opts: &EnumOpts,
) -> Result<OrbitClassification, GroupError> {
    match grp {
        GroupSpec::Affine(ag) => classify_affine(g, ag, opts),
        GroupSpec::Explicit(eg) => classify_explicit(g, eg, opts),
    }
}

/// Per-worker sink for the affine classifier. Canonical images are
/// translation invariant and the stream contains every translate of every
/// clique, so a cache keyed by the translation-normalized form (the clique
/// shifted to put its least element at 0) answers all but roughly one in q
/// lookups without running the canonicalizer.
struct AffineSink<'a> {
    ctx: &'a canon::CanonContext<'a>,
    field: &'a FieldSpec,
    scratch: canon::CanonScratch,
    trans: Vec<u32>,
    cache: HashMap<Vec<u32>, usize>,
    slots: HashMap<Vec<u32>, usize>,
    counts: Vec<u64>,
}

/// Translation-class cache entries are cleared past this size; purely a
/// memory bound, correctness is unaffected.
const TRANSLATION_CACHE_LIMIT: usize = 1 << 22;

impl<'a> AffineSink<'a> {
    fn new(ctx: &'a canon::CanonContext<'a>, field: &'a FieldSpec) -> AffineSink<'a> {
        AffineSink {
            ctx,
            field,
            scratch: canon::CanonScratch::new(),
            trans: Vec::new(),
            cache: HashMap::new(),
            slots: HashMap::new(),
            counts: Vec::new(),
        }
    }

    fn consume(&mut self, clique: &[u32]) {
        self.trans.clear();
        let base = Fe(clique[0]);
        self.trans
            .extend(clique.iter().map(|&v| self.field.sub(Fe(v), base).code()));
        self.trans.sort_unstable();
        if let Some(&slot) = self.cache.get(&self.trans) {
            self.counts[slot] += 1;
            return;
        }
        let key = self.ctx.canonical_image(clique, &mut self.scratch);
        let slot = match self.slots.get(key) {
            Some(&s) => s,
            None => {
                let s = self.counts.len();
                self.slots.insert(key.to_vec(), s);
                self.counts.push(0);
                s
            }
        };
        self.counts[slot] += 1;
        if self.cache.len() >= TRANSLATION_CACHE_LIMIT {
            self.cache.clear();
        }
        self.cache.insert(self.trans.clone(), slot);
    }

    /// Folds another worker's totals into this sink.
    fn absorb(&mut self, other: AffineSink) {
        let AffineSink { slots, counts, .. } = other;
        for (canon, slot_b) in slots {
            let add = counts[slot_b];
            let slot = match self.slots.get(&canon) {
                Some(&s) => s,
                None => {
                    let s = self.counts.len();
                    self.slots.insert(canon, s);
                    self.counts.push(0);
                    s
                }
            };
            self.counts[slot] += add;
        }
    }

    fn into_counts(self) -> HashMap<Vec<u32>, u64> {
        let mut out = HashMap::with_capacity(self.slots.len());
        for (canon, slot) in self.slots {
            out.insert(canon, self.counts[slot]);
        }
        out
    }
}

fn classify_affine(
    g: &Graph,
    ag: &AffineGroup,
    opts: &EnumOpts,
) -> Result<OrbitClassification, GroupError> {
    let ctx = canon::CanonContext::new(ag);
    let (sink, total) = cliques::par_maximal_cliques(
        g,
        opts,
        || AffineSink::new(&ctx, &ag.field),
        AffineSink::consume,
        |mut a, b| {
            a.absorb(b);
            a
        },
    )?;
    let counts = sink.into_counts();
    finish_classification(counts.into_iter().collect(), total, Some(ag.order), ag.known_full)
}

fn classify_explicit(
    g: &Graph,
    eg: &ExplicitGroup,
    opts: &EnumOpts,
) -> Result<OrbitClassification, GroupError> {
    if let Some(elements) = &eg.elements {
        // orbit expansion: each newly seen clique expands its full orbit once
        let mut orbit_of: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut reps: Vec<Vec<u32>> = Vec::new();
        let mut counts: Vec<u64> = Vec::new();
        let mut total = 0u64;
        cliques::for_each_maximal_clique(g, opts, |c| {
            total += 1;
            if let Some(&id) = orbit_of.get(c) {
                counts[id as usize] += 1;
                return;
            }
            let id = reps.len() as u32;
            let mut rep = c.to_vec();
            for perm in elements {
                let img = apply_perm_to_set(perm, c);
                if img < rep {
                    rep = img.clone();
                }
                orbit_of.entry(img).or_insert(id);
            }
            reps.push(rep);
            counts.push(1);
        })?;
        let pairs: Vec<(Vec<u32>, u64)> = reps.into_iter().zip(counts).collect();
        finish_classification(pairs, total, eg.order, eg.known_full)
    } else {
        // union-find over interned cliques; generator images are maximal
        // cliques too, so every image shows up in the stream
        let mut intern: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut parent: Vec<u32> = Vec::new();
        let mut store: Vec<Vec<u32>> = Vec::new();
        let mut streamed: Vec<bool> = Vec::new();
        fn find(parent: &mut Vec<u32>, mut i: u32) -> u32 {
            while parent[i as usize] != i {
                parent[i as usize] = parent[parent[i as usize] as usize];
                i = parent[i as usize];
            }
            i
        }
        let get_id = |c: &[u32],
                          intern: &mut HashMap<Vec<u32>, u32>,
                          parent: &mut Vec<u32>,
                          store: &mut Vec<Vec<u32>>,
                          streamed: &mut Vec<bool>| {
            if let Some(&id) = intern.get(c) {
                id
            } else {
                let id = parent.len() as u32;
                intern.insert(c.to_vec(), id);
                parent.push(id);
                store.push(c.to_vec());
                streamed.push(false);
                id
            }
        };
        let mut total = 0u64;
        cliques::for_each_maximal_clique(g, opts, |c| {
            total += 1;
            let id = get_id(c, &mut intern, &mut parent, &mut store, &mut streamed);
            streamed[id as usize] = true;
            for gen in &eg.generators {
                let img = apply_perm_to_set(gen, c);
                let id2 = get_id(&img, &mut intern, &mut parent, &mut store, &mut streamed);
                let (ra, rb) = (find(&mut parent, id), find(&mut parent, id2));
                if ra != rb {
                    parent[rb as usize] = ra;
                }
            }
        })?;
        debug_assert!(streamed.iter().all(|&s| s), "generator image never streamed");
        let mut rep_of_root: HashMap<u32, Vec<u32>> = HashMap::new();
        let mut count_of_root: HashMap<u32, u64> = HashMap::new();
        for id in 0..parent.len() as u32 {
            let root = find(&mut parent, id);
            let c = &store[id as usize];
            *count_of_root.entry(root).or_insert(0) += 1;
            match rep_of_root.get_mut(&root) {
                None => {
                    rep_of_root.insert(root, c.clone());
                }
                Some(rep) if c < rep => *rep = c.clone(),
                _ => {}
            }
        }
        let pairs: Vec<(Vec<u32>, u64)> = rep_of_root
            .into_iter()
            .map(|(root, rep)| {
                let count = count_of_root[&root];
                (rep, count)
            })
            .collect();
        finish_classification(pairs, total, eg.order, eg.known_full)
    }
}

fn finish_classification(
    pairs: Vec<(Vec<u32>, u64)>,
    total: u64,
    group_order: Option<u128>,
    certified_full: bool,
) -> Result<OrbitClassification, GroupError> {
    let mut orbits: Vec<OrbitInfo> = Vec::with_capacity(pairs.len());
    for (rep, orbit_len) in pairs {
        let stabilizer = match group_order {
            Some(order) => {
                if order % orbit_len as u128 != 0 {
                    return Err(GroupError::OrbitDivisibility { orbit: orbit_len, order });
                }
                Some(order / orbit_len as u128)
            }
            None => None,
        };
        orbits.push(OrbitInfo { size: rep.len() as u32, rep, orbit_len, stabilizer });
    }
    orbits.sort_by(|a, b| (a.size, &a.rep).cmp(&(b.size, &b.rep)));
    let mut orbit_counts = BTreeMap::new();
    let mut clique_counts = BTreeMap::new();
    for o in &orbits {
        *orbit_counts.entry(o.size).or_insert(0) += 1;
        *clique_counts.entry(o.size).or_insert(0) += o.orbit_len;
    }
    debug_assert_eq!(clique_counts.values().sum::<u64>(), total);
    Ok(OrbitClassification {
        orbits,
        orbit_counts,
        clique_counts,
        total_cliques: total,
        group_order,
        certified_full,
    })
}

/// Incremental classifier fed one clique at a time; used by the tests that
/// check stream-order independence, and by anything that produces cliques
/// outside the enumerator.
pub struct OrbitAccumulator<'a> {
    ctx: canon::CanonContext<'a>,
    scratch: canon::CanonScratch,
    map: HashMap<Vec<u32>, u64>,
    total: u64,
}

impl<'a> OrbitAccumulator<'a> {
    pub fn new(grp: &'a AffineGroup) -> OrbitAccumulator<'a> {
        OrbitAccumulator {
            ctx: canon::CanonContext::new(grp),
            scratch: canon::CanonScratch::new(),
            map: HashMap::new(),
            total: 0,
        }
    }

    pub fn push(&mut self, clique: &[u32]) {
        self.total += 1;
        let key = self.ctx.canonical_image(clique, &mut self.scratch);
        if let Some(count) = self.map.get_mut(key) {
            *count += 1;
        } else {
            self.map.insert(key.to_vec(), 1);
        }
    }

    pub fn canonical(&mut self, clique: &[u32]) -> Vec<u32> {
        self.ctx.canonical_image(clique, &mut self.scratch).to_vec()
    }

    pub fn finish(self, grp: &AffineGroup) -> Result<OrbitClassification, GroupError> {
        finish_classification(
            self.map.into_iter().collect(),
            self.total,
            Some(grp.order),
            grp.known_full,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgraph::{build_paley, build_peisert};

    fn arc_field(p: u32, e: u32) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::new(p, e).unwrap())
    }

    #[test]
    fn paley_group_orders() {
        assert_eq!(paley_group(&arc_field(3, 2)).unwrap().order, 72);
        assert_eq!(paley_group(&arc_field(5, 2)).unwrap().order, 600);
    }

    #[test]
    fn peisert_group_orders_and_flags() {
        let g49 = peisert_group(&arc_field(7, 2)).unwrap();
        assert_eq!(g49.order, 1176);
        assert_eq!(g49.full_order_factor, Some(3));
        assert!(!g49.known_full);

        let g121 = peisert_group(&arc_field(11, 2)).unwrap();
        assert_eq!(g121.order, 7260);
        assert!(g121.known_full);
    }

    #[test]
    fn identity_fixes_everything() {
        let f = arc_field(3, 2);
        let id = AffineMap::identity();
        for z in f.elements() {
            assert_eq!(id.apply(&f, z), z);
        }
    }

    #[test]
    fn composition_matches_pointwise() {
        let f = arc_field(3, 2);
        let maps = [
            AffineMap { a: f.exp(3), b: f.exp(1), frob: 1 },
            AffineMap { a: f.exp(5), b: Fe::ZERO, frob: 0 },
            AffineMap { a: Fe::ONE, b: f.exp(2), frob: 1 },
        ];
        for g1 in &maps {
            for g2 in &maps {
                let comp = g1.compose(&f, g2);
                for z in f.elements() {
                    assert_eq!(comp.apply(&f, z), g1.apply(&f, g2.apply(&f, z)));
                }
            }
            let inv = g1.inverse(&f);
            let id = g1.compose(&f, &inv);
            for z in f.elements() {
                assert_eq!(id.apply(&f, z), z);
            }
        }
    }

    #[test]
    fn paley_generators_preserve_edges() {
        for (p, e) in [(3u32, 2u32), (5, 2), (13, 1)] {
            let f = arc_field(p, e);
            let (graph, _) = build_paley(&f).unwrap();
            let grp = GroupSpec::Affine(paley_group(&f).unwrap());
            grp.check_generators_preserve(&graph).unwrap();
        }
    }

    #[test]
    fn peisert_generators_preserve_edges() {
        for (p, e) in [(3u32, 2u32), (7, 2)] {
            let f = arc_field(p, e);
            let graph = build_peisert(&f).unwrap();
            let grp = GroupSpec::Affine(peisert_group(&f).unwrap());
            grp.check_generators_preserve(&graph).unwrap();
        }
    }

    #[test]
    fn twisted_frobenius_swaps_peisert_classes() {
        // z ↦ β z^p sends exponent class 1 (mod 4) to p+1 ≡ 0 (mod 4)
        let f = arc_field(7, 2);
        let tw = AffineMap { a: f.beta(), b: Fe::ZERO, frob: 1 };
        for z in f.elements().filter(|z| !z.is_zero()) {
            let before = f.power_class(z, 4).unwrap();
            let after = f.power_class(tw.apply(&f, z), 4).unwrap();
            match before {
                0 => assert_eq!(after, 1),
                1 => assert_eq!(after, 0),
                _ => {}
            }
        }
    }

    #[test]
    fn net_linear_recovers_paley_for_even_classes() {
        let f = arc_field(5, 2);
        let (_, net) = build_paley(&f).unwrap();
        let net = net.unwrap();
        let ng = net_linear_group(&f, &net).unwrap();
        let pg = paley_group(&f).unwrap();
        assert_eq!(ng.order, pg.order);
    }

    #[test]
    fn net_linear_full_plane_is_all_semilinear() {
        let f = arc_field(3, 2);
        let net = NetSpec::canonical(3, 4).unwrap();
        let ng = net_linear_group(&f, &net).unwrap();
        // the complete graph: full AΓL(1,9) of order e·q(q-1) = 2·9·8
        assert_eq!(ng.order, 144);
    }

    #[test]
    fn subfield_multipliers_always_in_net_group() {
        let f = arc_field(5, 2);
        let net = NetSpec::canonical(5, 3).unwrap();
        let ng = net_linear_group(&f, &net).unwrap();
        for k in 0..4u64 {
            let a = f.exp(6 * k); // F_5^* inside GF(25)
            assert!(ng.contains(&AffineMap::scaling(a)));
        }
    }

    #[test]
    fn affine_stabilizer_of_subfield_line() {
        // stab of F_3 inside Aut P(9): a ∈ F_3^*, b ∈ F_3, two Frobenius
        // powers: order 12; orbit has 72/12 = 6 lines
        let f = arc_field(3, 2);
        let grp = GroupSpec::Affine(paley_group(&f).unwrap());
        let line: Vec<u32> = f
            .subfield_elements()
            .unwrap()
            .iter()
            .map(|fe| fe.code())
            .collect();
        assert_eq!(grp.stabilizer_order(&line).unwrap(), 12);
    }

    #[test]
    fn orbit_closure_of_line() {
        let f = arc_field(3, 2);
        let grp = paley_group(&f).unwrap();
        let perms: Vec<Perm> = grp
            .generators
            .iter()
            .map(|m| m.as_permutation(&f))
            .collect();
        let line: Vec<u32> = f
            .subfield_elements()
            .unwrap()
            .iter()
            .map(|fe| fe.code())
            .collect();
        let orbit = orbit_of_set(&perms, &line);
        assert_eq!(orbit.len(), 6);
    }
}
