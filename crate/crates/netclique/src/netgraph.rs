//! Construction of net collinearity graphs and their relatives.
//!
//! The vertex set of a net graph is all of GF(r^2); vertex indices are the
//! element codes of the field. Adjacency is packed into one bitset row per
//! vertex, which is the primitive the clique enumerator consumes.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::bits;
use crate::gf::{Fe, FieldSpec, GfError};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph field error: {0}")]
    Field(#[from] GfError),
    #[error("vertex {0} out of range (n = {1})")]
    VertexRange(u32, usize),
    #[error("loop edge at vertex {0}")]
    LoopEdge(u32),
    #[error("net spec invalid: {0}")]
    BadNetSpec(String),
    #[error("field order {q} does not match net order {r}^2")]
    FieldNetMismatch { q: u32, r: u32 },
    #[error("graph family precondition violated: {0}")]
    Precondition(String),
    #[error("construction postcondition failed: {0}")]
    Postcondition(String),
}

/// Vertex annotation; net graphs carry field codes, Taylor extensions carry
/// a signed base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexLabel {
    Field(u32),
    Taylor { plus: bool, base: Option<u32> },
}

/// Immutable loopless undirected graph on packed adjacency rows.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
    labels: Option<Vec<VertexLabel>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows
    }
}
impl Eq for Graph {}

impl Graph {
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Graph, GraphError> {
        let words = bits::words_for(n);
        let mut rows = vec![0u64; n * words];
        for (u, v) in edges {
            if u as usize >= n {
                return Err(GraphError::VertexRange(u, n));
            }
            if v as usize >= n {
                return Err(GraphError::VertexRange(v, n));
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            bits::set(&mut rows[u as usize * words..(u as usize + 1) * words], v as usize);
            bits::set(&mut rows[v as usize * words..(v as usize + 1) * words], u as usize);
        }
        Ok(Graph { n, words, rows, labels: None })
    }

    /// Builds from a symmetric predicate evaluated on pairs u < v.
    pub fn from_pred(n: usize, pred: impl Fn(u32, u32) -> bool) -> Graph {
        let words = bits::words_for(n);
        let mut rows = vec![0u64; n * words];
        for u in 0..n {
            for v in u + 1..n {
                if pred(u as u32, v as u32) {
                    bits::set(&mut rows[u * words..(u + 1) * words], v);
                    bits::set(&mut rows[v * words..(v + 1) * words], u);
                }
            }
        }
        Graph { n, words, rows, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<VertexLabel>) -> Graph {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, u: u32) -> &[u64] {
        &self.rows[u as usize * self.words..(u as usize + 1) * self.words]
    }

    #[inline]
    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        bits::get(self.row(u), v as usize)
    }

    pub fn degree(&self, u: u32) -> u32 {
        bits::count(self.row(u))
    }

    pub fn neighbors(&self, u: u32) -> impl Iterator<Item = u32> + '_ {
        bits::iter_ones(self.row(u)).map(|v| v as u32)
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n as u32)
            .flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> u64 {
        (0..self.n as u32).map(|u| self.degree(u) as u64).sum::<u64>() / 2
    }

    pub fn complement(&self) -> Graph {
        Graph::from_pred(self.n, |u, v| !self.adjacent(u, v))
    }

    /// Breadth-first distances from `src`; usize::MAX marks unreachable.
    pub fn bfs_distances(&self, src: u32) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        dist[src as usize] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for v in self.neighbors(u) {
                if dist[v as usize] == usize::MAX {
                    dist[v as usize] = dist[u as usize] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

/// Strongly regular graph parameters.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SrgParams {
    pub v: u32,
    pub k: u32,
    pub lambda: u32,
    pub mu: u32,
}

impl SrgParams {
    /// The counting identity k(k - λ - 1) = (v - k - 1)μ.
    pub fn identity_holds(&self) -> bool {
        self.k as u64 * (self.k as u64).saturating_sub(self.lambda as u64 + 1)
            == (self.v as u64 - self.k as u64 - 1) * self.mu as u64
    }
}

/// Parameters of the degree-m order-n net collinearity graph.
pub fn net_srg_params(n: u32, m: u32) -> SrgParams {
    SrgParams {
        v: n * n,
        k: m * (n - 1),
        lambda: (m - 1) * (m - 2) + n - 2,
        mu: m * (m - 1),
    }
}

#[derive(Debug, PartialEq, Eq)]
pub enum SrgCheck {
    Srg(SrgParams),
    Complete,
    Empty,
    /// Witness pair (or vertex) violating regularity.
    Irregular { kind: &'static str, u: u32, v: u32 },
}

/// Exhaustive strong-regularity check by common-neighbor counting; no
/// spectral computation, no floating point.
pub fn check_srg(g: &Graph) -> SrgCheck {
    let n = g.n() as u32;
    if n == 0 {
        return SrgCheck::Empty;
    }
    let k = g.degree(0);
    for u in 1..n {
        if g.degree(u) != k {
            return SrgCheck::Irregular { kind: "degree", u, v: u };
        }
    }
    if k == 0 {
        return SrgCheck::Empty;
    }
    if k == n - 1 {
        return SrgCheck::Complete;
    }
    let mut lambda = None;
    let mut mu = None;
    for u in 0..n {
        for v in u + 1..n {
            let common = bits::count_and(g.row(u), g.row(v));
            if g.adjacent(u, v) {
                match lambda {
                    None => lambda = Some(common),
                    Some(l) if l != common => {
                        return SrgCheck::Irregular { kind: "lambda", u, v }
                    }
                    _ => {}
                }
            } else {
                match mu {
                    None => mu = Some(common),
                    Some(m) if m != common => {
                        return SrgCheck::Irregular { kind: "mu", u, v }
                    }
                    _ => {}
                }
            }
        }
    }
    let params = SrgParams {
        v: n,
        k,
        lambda: lambda.unwrap_or(0),
        mu: mu.unwrap_or(0),
    };
    debug_assert!(params.identity_holds());
    SrgCheck::Srg(params)
}

/// A degree-m Desarguesian net on GF(r^2), given by the m direction classes.
///
/// A direction is the coset β^i·F_r^* and depends only on i mod (r+1), so
/// the canonical encoding is the set of classes in [0, r+1). When a test or
/// table needs "a" net of degree m without further qualification, the
/// canonical choice is the classes {0, 1, ..., m-1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NetSpec {
    r: u32,
    directions: BTreeSet<u32>,
}

impl NetSpec {
    pub fn new(r: u32, directions: impl IntoIterator<Item = u32>) -> Result<NetSpec, GraphError> {
        let directions: BTreeSet<u32> = directions.into_iter().collect();
        if let Some(&d) = directions.iter().find(|&&d| d > r) {
            return Err(GraphError::BadNetSpec(format!(
                "direction class {d} out of range [0, {})",
                r + 1
            )));
        }
        Ok(NetSpec { r, directions })
    }

    /// The canonical degree-m net with classes {0, .., m-1}.
    pub fn canonical(r: u32, m: u32) -> Result<NetSpec, GraphError> {
        if m > r + 1 {
            return Err(GraphError::BadNetSpec(format!(
                "degree {m} exceeds r+1 = {}",
                r + 1
            )));
        }
        NetSpec::new(r, 0..m)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> u32 {
        self.directions.len() as u32
    }

    pub fn directions(&self) -> impl Iterator<Item = u32> + '_ {
        self.directions.iter().copied()
    }

    pub fn has_direction(&self, class: u32) -> bool {
        self.directions.contains(&class)
    }

    /// Direction class of a nonzero difference.
    pub fn class_of(&self, field: &FieldSpec, d: Fe) -> u32 {
        field.power_class(d, self.r + 1).expect("nonzero difference")
    }

    /// Connection set S = union of the direction cosets, as a membership
    /// table over element codes. S is symmetric because -1 lies in F_r^*.
    pub fn connection_set(&self, field: &FieldSpec) -> Vec<bool> {
        let q = field.q();
        let r = self.r;
        let mut s = vec![false; q as usize];
        for &class in &self.directions {
            for t in 0..r - 1 {
                let e = field.exp(class as u64 + (r as u64 + 1) * t as u64);
                s[e.code() as usize] = true;
            }
        }
        s
    }
}

fn require_square_field(field: &FieldSpec, r: u32) -> Result<(), GraphError> {
    if field.q() as u64 != r as u64 * r as u64 {
        return Err(GraphError::FieldNetMismatch { q: field.q(), r });
    }
    Ok(())
}

/// Collinearity graph of the net: vertices are all field codes, u ~ v when
/// u - v lies in the connection set.
///
/// The strongly regular parameters (for 0 < m < r+1), completeness (m = r+1)
/// and emptiness (m = 0) are verified before the graph is returned.
pub fn build_net_graph(field: &FieldSpec, net: &NetSpec) -> Result<Graph, GraphError> {
    require_square_field(field, net.r())?;
    let s = net.connection_set(field);
    let q = field.q() as usize;
    let g = Graph::from_pred(q, |u, v| {
        s[field.sub(Fe(u), Fe(v)).code() as usize]
    })
    .with_labels((0..q as u32).map(VertexLabel::Field).collect());

    let (r, m) = (net.r(), net.m());
    match check_srg(&g) {
        SrgCheck::Empty if m == 0 => Ok(g),
        SrgCheck::Complete if m == r + 1 => Ok(g),
        SrgCheck::Srg(params) if m > 0 && m < r + 1 => {
            let expected = net_srg_params(r, m);
            if params == expected {
                Ok(g)
            } else {
                Err(GraphError::Postcondition(format!(
                    "net graph parameters {params:?} differ from {expected:?}"
                )))
            }
        }
        // m = 1 yields μ = 0 and check_srg still reports parameters; any
        // other combination is a failed postcondition.
        other => Err(GraphError::Postcondition(format!(
            "net graph of degree {m} reported {other:?}"
        ))),
    }
}

/// Paley graph on GF(q), q ≡ 1 (mod 4): u ~ v when u - v is a nonzero
/// square. When q = r^2 the equivalent net (the (r+1)/2 even direction
/// classes) is returned alongside.
pub fn build_paley(field: &FieldSpec) -> Result<(Graph, Option<NetSpec>), GraphError> {
    let q = field.q();
    if q % 4 != 1 {
        return Err(GraphError::Precondition(format!(
            "Paley graph needs q ≡ 1 (mod 4), got q = {q}"
        )));
    }
    let g = Graph::from_pred(q as usize, |u, v| {
        let d = field.sub(Fe(u), Fe(v));
        field.power_class(d, 2).unwrap() == 0
    })
    .with_labels((0..q).map(VertexLabel::Field).collect());

    let t = (q - 1) / 4;
    let expected = SrgParams { v: q, k: 2 * t, lambda: t - 1, mu: t };
    match check_srg(&g) {
        SrgCheck::Srg(params) if params == expected => {}
        other => {
            return Err(GraphError::Postcondition(format!(
                "Paley graph reported {other:?}, expected {expected:?}"
            )))
        }
    }

    let net = match crate::gf::prime_power(q as u64) {
        Some((_, e)) if e % 2 == 0 => {
            let r = field.subfield_order()?;
            Some(NetSpec::new(r, (0..r + 1).filter(|c| c % 2 == 0))?)
        }
        _ => None,
    };
    Ok((g, net))
}

/// Peisert graph on GF(q), q = p^f with p ≡ 3 (mod 4) and f even:
/// u ~ v when u - v = β^i with i ≡ 0, 1 (mod 4).
pub fn build_peisert(field: &FieldSpec) -> Result<Graph, GraphError> {
    if field.p() % 4 != 3 || field.e() % 2 != 0 {
        return Err(GraphError::Precondition(format!(
            "Peisert graph needs q = p^f, p ≡ 3 (mod 4), f even; got p = {}, f = {}",
            field.p(),
            field.e()
        )));
    }
    // -1 must be a 4th power, otherwise the relation is not symmetric.
    let minus_one = field.neg(Fe::ONE);
    if field.power_class(minus_one, 4).unwrap() != 0 {
        return Err(GraphError::Postcondition(
            "-1 is not a 4th power".to_string(),
        ));
    }
    let q = field.q();
    let g = Graph::from_pred(q as usize, |u, v| {
        let d = field.sub(Fe(u), Fe(v));
        field.power_class(d, 4).unwrap() <= 1
    })
    .with_labels((0..q).map(VertexLabel::Field).collect());

    let t = (q - 1) / 4;
    let expected = SrgParams { v: q, k: 2 * t, lambda: t - 1, mu: t };
    match check_srg(&g) {
        SrgCheck::Srg(params) if params == expected => Ok(g),
        other => Err(GraphError::Postcondition(format!(
            "Peisert graph reported {other:?}, expected {expected:?}"
        ))),
    }
}

/// Vertex layout of a Taylor extension on 2(v+1) vertices.
///
/// Index 0 is ∞⁺, 1..=v are x⁺ (x = index-1), v+1 is ∞⁻, v+2..=2v+1 are x⁻.
#[derive(Copy, Clone, Debug)]
pub struct TaylorLayout {
    pub base_n: u32,
}

impl TaylorLayout {
    pub fn n(&self) -> u32 {
        2 * (self.base_n + 1)
    }

    pub fn infinity(&self, plus: bool) -> u32 {
        if plus {
            0
        } else {
            self.base_n + 1
        }
    }

    pub fn vertex(&self, x: u32, plus: bool) -> u32 {
        if plus {
            1 + x
        } else {
            self.base_n + 2 + x
        }
    }

    /// (base point, sign); base None is ∞.
    pub fn decode(&self, idx: u32) -> (Option<u32>, bool) {
        let half = self.base_n + 1;
        let (off, plus) = if idx < half { (idx, true) } else { (idx - half, false) };
        if off == 0 {
            (None, plus)
        } else {
            (Some(off - 1), plus)
        }
    }

    pub fn antipode(&self, idx: u32) -> u32 {
        let half = self.base_n + 1;
        (idx + half) % (2 * half)
    }
}

/// Intersection array {b0, b1, b2; c1, c2, c3} of a diameter-3
/// distance-regular graph.
pub type IntersectionArray = ([u32; 3], [u32; 3]);

/// Taylor extension of a strongly regular graph with k = 2μ: an antipodal
/// 2-cover of K_{v+1} whose local graph at ∞⁺ is the base graph.
///
/// Distance-regularity with array {v, v-k-1, 1; 1, v-k-1, v} is verified
/// exhaustively, as are the antipodal pairs at distance 3.
pub fn build_taylor(gamma: &Graph) -> Result<Graph, GraphError> {
    let params = match check_srg(gamma) {
        SrgCheck::Srg(p) => p,
        other => {
            return Err(GraphError::Precondition(format!(
                "Taylor extension needs a strongly regular base, got {other:?}"
            )))
        }
    };
    if params.k != 2 * params.mu {
        return Err(GraphError::Precondition(format!(
            "Taylor extension needs k = 2μ, got k = {}, μ = {}",
            params.k, params.mu
        )));
    }
    let v = params.v;
    let layout = TaylorLayout { base_n: v };
    let n = layout.n();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    for x in 0..v {
        edges.push((layout.infinity(true), layout.vertex(x, true)));
        edges.push((layout.infinity(false), layout.vertex(x, false)));
    }
    for x in 0..v {
        for y in x + 1..v {
            if gamma.adjacent(x, y) {
                edges.push((layout.vertex(x, true), layout.vertex(y, true)));
                edges.push((layout.vertex(x, false), layout.vertex(y, false)));
            } else {
                edges.push((layout.vertex(x, true), layout.vertex(y, false)));
                edges.push((layout.vertex(y, true), layout.vertex(x, false)));
            }
        }
    }
    let mut labels = vec![VertexLabel::Taylor { plus: true, base: None }; n as usize];
    for idx in 0..n {
        let (base, plus) = layout.decode(idx);
        labels[idx as usize] = VertexLabel::Taylor { plus, base };
    }
    let sigma = Graph::from_edges(n as usize, edges)?.with_labels(labels);

    // Local graph at ∞⁺ is the base graph, literally.
    for x in 0..v {
        if !sigma.adjacent(layout.infinity(true), layout.vertex(x, true)) {
            return Err(GraphError::Postcondition("∞⁺ misses a plus vertex".into()));
        }
        for y in 0..v {
            if x != y
                && sigma.adjacent(layout.vertex(x, true), layout.vertex(y, true))
                    != gamma.adjacent(x, y)
            {
                return Err(GraphError::Postcondition(
                    "local graph at ∞⁺ differs from the base".into(),
                ));
            }
        }
    }

    let expected: IntersectionArray = ([v, v - params.k - 1, 1], [1, v - params.k - 1, v]);
    let found = verify_intersection_array(&sigma)?;
    if found != expected {
        return Err(GraphError::Postcondition(format!(
            "intersection array {found:?} differs from {expected:?}"
        )));
    }
    for idx in 0..n {
        let dist = sigma.bfs_distances(idx);
        if dist[layout.antipode(idx) as usize] != 3 {
            return Err(GraphError::Postcondition(
                "antipodal pair not at distance 3".into(),
            ));
        }
    }
    Ok(sigma)
}

/// The affine line through two distinct points of GF(r^2): the coset
/// (v-u)·F_r + u, as sorted vertex codes.
pub fn line_through(field: &FieldSpec, u: Fe, v: Fe) -> Result<Vec<u32>, GraphError> {
    let d = field.sub(v, u);
    let mut pts: Vec<u32> = field
        .subfield_elements()?
        .into_iter()
        .map(|s| field.add(field.mul(d, s), u).code())
        .collect();
    pts.sort_unstable();
    Ok(pts)
}

/// Whether a vertex set is a line of the affine plane on GF(r^2), that is,
/// a coset a·F_r + b.
pub fn is_line(field: &FieldSpec, set: &[u32]) -> bool {
    let Ok(r) = field.subfield_order() else {
        return false;
    };
    if set.len() != r as usize {
        return false;
    }
    let mut sorted: Vec<u32> = set.to_vec();
    sorted.sort_unstable();
    let line = line_through(field, Fe(sorted[0]), Fe(sorted[1])).expect("even degree checked");
    line == sorted
}

/// Checks distance-regularity of a diameter-3 graph by exhaustive distance
/// distribution counting and returns the intersection array.
pub fn verify_intersection_array(g: &Graph) -> Result<IntersectionArray, GraphError> {
    let n = g.n() as u32;
    let mut b = [None::<u32>; 3];
    let mut c = [None::<u32>; 3];
    for u in 0..n {
        let dist = g.bfs_distances(u);
        if dist.iter().any(|&d| d > 3) {
            return Err(GraphError::Postcondition(
                "graph is not connected with diameter ≤ 3".into(),
            ));
        }
        for w in 0..n {
            let d = dist[w as usize];
            let further = g.neighbors(w).filter(|&y| dist[y as usize] == d + 1).count() as u32;
            let closer = g
                .neighbors(w)
                .filter(|&y| dist[y as usize] + 1 == d)
                .count() as u32;
            if d < 3 {
                match b[d] {
                    None => b[d] = Some(further),
                    Some(x) if x != further => {
                        return Err(GraphError::Postcondition(format!(
                            "b_{d} not constant: {x} vs {further}"
                        )))
                    }
                    _ => {}
                }
            }
            if d >= 1 {
                match c[d - 1] {
                    None => c[d - 1] = Some(closer),
                    Some(x) if x != closer => {
                        return Err(GraphError::Postcondition(format!(
                            "c_{d} not constant: {x} vs {closer}"
                        )))
                    }
                    _ => {}
                }
            }
        }
    }
    Ok((
        [b[0].unwrap_or(0), b[1].unwrap_or(0), b[2].unwrap_or(0)],
        [c[0].unwrap_or(0), c[1].unwrap_or(0), c[2].unwrap_or(0)],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_net_is_k9() {
        let f = FieldSpec::new(3, 2).unwrap();
        let net = NetSpec::canonical(3, 4).unwrap();
        let g = build_net_graph(&f, &net).unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(g.edge_count(), 36);
        assert_eq!(check_srg(&g), SrgCheck::Complete);
    }

    #[test]
    fn degree_two_nets_are_srg_9_4_1_2() {
        let f = FieldSpec::new(3, 2).unwrap();
        // any two direction classes
        for a in 0..4u32 {
            for b in a + 1..4 {
                let net = NetSpec::new(3, [a, b]).unwrap();
                let g = build_net_graph(&f, &net).unwrap();
                assert_eq!(
                    check_srg(&g),
                    SrgCheck::Srg(SrgParams { v: 9, k: 4, lambda: 1, mu: 2 })
                );
            }
        }
    }

    #[test]
    fn degree_three_net_on_25_points() {
        let f = FieldSpec::new(5, 2).unwrap();
        let net = NetSpec::canonical(5, 3).unwrap();
        let g = build_net_graph(&f, &net).unwrap();
        for u in 0..g.n() as u32 {
            assert_eq!(g.degree(u), 12);
        }
        assert_eq!(
            check_srg(&g),
            SrgCheck::Srg(SrgParams { v: 25, k: 12, lambda: 5, mu: 6 })
        );
    }

    #[test]
    fn paley_5_is_pentagon() {
        let f = FieldSpec::new(5, 1).unwrap();
        let (g, net) = build_paley(&f).unwrap();
        assert!(net.is_none());
        assert_eq!(
            check_srg(&g),
            SrgCheck::Srg(SrgParams { v: 5, k: 2, lambda: 0, mu: 1 })
        );
    }

    #[test]
    fn paley_9_equals_even_class_net() {
        let f = FieldSpec::new(3, 2).unwrap();
        let (g, net) = build_paley(&f).unwrap();
        let net = net.unwrap();
        assert_eq!(net.m(), 2);
        assert_eq!(net.directions().collect::<Vec<_>>(), vec![0, 2]);
        let h = build_net_graph(&f, &net).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn paley_25_parameters() {
        let f = FieldSpec::new(5, 2).unwrap();
        let (g, _) = build_paley(&f).unwrap();
        assert_eq!(
            check_srg(&g),
            SrgCheck::Srg(SrgParams { v: 25, k: 12, lambda: 5, mu: 6 })
        );
    }

    #[test]
    fn paley_rejects_bad_order() {
        let f = FieldSpec::new(7, 1).unwrap();
        assert!(build_paley(&f).is_err());
    }

    #[test]
    fn peisert_9_and_49() {
        let f9 = FieldSpec::new(3, 2).unwrap();
        let g9 = build_peisert(&f9).unwrap();
        assert_eq!(
            check_srg(&g9),
            SrgCheck::Srg(SrgParams { v: 9, k: 4, lambda: 1, mu: 2 })
        );
        // -1 = β^4 has exponent ≡ 0 mod 4
        assert_eq!(f9.neg(Fe::ONE), f9.exp(4));

        let f49 = FieldSpec::new(7, 2).unwrap();
        let g49 = build_peisert(&f49).unwrap();
        assert_eq!(
            check_srg(&g49),
            SrgCheck::Srg(SrgParams { v: 49, k: 24, lambda: 11, mu: 12 })
        );
    }

    #[test]
    fn peisert_rejects_bad_characteristic() {
        let f = FieldSpec::new(5, 2).unwrap();
        assert!(build_peisert(&f).is_err());
        let f = FieldSpec::new(3, 1).unwrap();
        assert!(build_peisert(&f).is_err());
    }

    #[test]
    fn paley_13_srg() {
        let f = FieldSpec::new(13, 1).unwrap();
        let (g, _) = build_paley(&f).unwrap();
        assert_eq!(
            check_srg(&g),
            SrgCheck::Srg(SrgParams { v: 13, k: 6, lambda: 2, mu: 3 })
        );
    }

    #[test]
    fn srg_check_detects_broken_regularity() {
        let f = FieldSpec::new(3, 2).unwrap();
        let (g, _) = build_paley(&f).unwrap();
        let (a, b) = g.edges().next().unwrap();
        let edges: Vec<(u32, u32)> = g.edges().filter(|&(u, v)| (u, v) != (a, b)).collect();
        let broken = Graph::from_edges(9, edges).unwrap();
        assert!(matches!(check_srg(&broken), SrgCheck::Irregular { .. }));
    }

    #[test]
    fn taylor_of_paley_9() {
        let f = FieldSpec::new(3, 2).unwrap();
        let (g, _) = build_paley(&f).unwrap();
        let sigma = build_taylor(&g).unwrap();
        assert_eq!(sigma.n(), 20);
        for u in 0..20u32 {
            assert_eq!(sigma.degree(u), 9);
        }
        assert_eq!(
            verify_intersection_array(&sigma).unwrap(),
            ([9, 4, 1], [1, 4, 9])
        );
    }

    #[test]
    fn taylor_rejects_k_ne_2mu() {
        // P(13) has k = 6, μ = 3: accepted; a complete graph is rejected.
        let f = FieldSpec::new(13, 1).unwrap();
        let (g, _) = build_paley(&f).unwrap();
        assert!(build_taylor(&g).is_ok());
        let k4 = Graph::from_pred(4, |_, _| true);
        assert!(build_taylor(&k4).is_err());
    }

    #[test]
    fn net_spec_validation() {
        assert!(NetSpec::new(3, [3]).is_ok());
        assert!(NetSpec::new(3, [4]).is_err());
        assert!(NetSpec::canonical(3, 5).is_err());
    }
}
