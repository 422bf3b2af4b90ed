//! Finite simple undirected graphs with an ordered, labeled vertex list,
//! plus the constructors the toolkit builds everything from: complete
//! graphs, disjoint unions, copies, joins, and the (t, n)-shuriken.
//!
//! Adjacency is stored as a packed bit matrix; vertex order is fixed by
//! construction so that exports are reproducible byte for byte.

use std::fmt;

use crate::error::{Error, Result};

/// Vertex decoration. Construction decides the shape: plain integers for
/// `K_n`, pairs for clean vertices `(e, u)` and for `(copy, vertex)`
/// tagging, `Apex` for the added hub vertex of a shuriken copy.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Int(usize),
    Pair(Box<Label>, Box<Label>),
    Apex,
}

impl Label {
    pub fn pair(a: Label, b: Label) -> Label {
        Label::Pair(Box::new(a), Box::new(b))
    }

    pub fn pair_of(a: usize, b: usize) -> Label {
        Label::pair(Label::Int(a), Label::Int(b))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Pair(a, b) => write!(f, "({a},{b})"),
            Label::Apex => write!(f, "z"),
        }
    }
}

/// A finite simple graph: no loops, symmetric adjacency, deterministic
/// vertex order.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    labels: Vec<Label>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.size())
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.labels == other.labels && self.bits == other.bits
    }
}

impl Eq for Graph {}

impl Graph {
    /// Edgeless graph over the given labels.
    pub fn new(labels: Vec<Label>) -> Graph {
        let n = labels.len();
        let words = n.div_ceil(64);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
            labels,
        }
    }

    /// Edgeless graph on `n` vertices labeled `0..n`.
    pub fn with_order(n: usize) -> Graph {
        Graph::new((0..n).map(Label::Int).collect())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Edge count.
    pub fn size(&self) -> usize {
        let total: usize = self.bits.iter().map(|w| w.count_ones() as usize).sum();
        total / 2
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loops are not allowed");
        assert!(u < self.n && v < self.n, "vertex out of range");
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(v);
        row.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &Label {
        &self.labels[v]
    }

    /// Edges as `(u, v)` with `u < v`, ordered by `(u, v)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Ascending degree sequence.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degs: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        degs.sort_unstable();
        degs
    }

    /// Connected components as sorted vertex lists, ordered by smallest
    /// member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = vec![start];
            while let Some(v) = queue.pop() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced by `verts` (labels kept), vertices renumbered in
    /// the given order.
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let mut g = Graph::new(verts.iter().map(|&v| self.labels[v].clone()).collect());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// The relabeled graph where old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut labels = vec![Label::Int(0); self.n];
        for v in 0..self.n {
            labels[perm[v]] = self.labels[v].clone();
        }
        let mut g = Graph::new(labels);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }
}

/// `K_n`.
pub fn complete_graph(n: usize) -> Graph {
    let mut g = Graph::with_order(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v);
        }
    }
    g
}

/// Vertex-disjoint union; labels are kept as they are.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    let mut labels = g1.labels.clone();
    labels.extend(g2.labels.iter().cloned());
    let offset = g1.n;
    let mut g = Graph::new(labels);
    for (u, v) in g1.edges() {
        g.add_edge(u, v);
    }
    for (u, v) in g2.edges() {
        g.add_edge(u + offset, v + offset);
    }
    g
}

/// `m` disjoint copies of `g`; labels become `(copy, original label)`.
pub fn copies(m: usize, g: &Graph) -> Graph {
    let mut labels = Vec::with_capacity(m * g.n);
    for c in 0..m {
        for l in &g.labels {
            labels.push(Label::pair(Label::Int(c), l.clone()));
        }
    }
    let mut out = Graph::new(labels);
    for c in 0..m {
        let offset = c * g.n;
        for (u, v) in g.edges() {
            out.add_edge(u + offset, v + offset);
        }
    }
    out
}

/// Join: disjoint union plus every edge across the two vertex sets.
pub fn graph_join(g1: &Graph, g2: &Graph) -> Graph {
    let mut g = disjoint_union(g1, g2);
    for u in 0..g1.n {
        for v in 0..g2.n {
            g.add_edge(u, g1.n + v);
        }
    }
    g
}

/// Parameters of a (t, n)-shuriken over a base graph. Requires `t <= n`
/// and `n - t` even; `t = 0` is admitted (it never arises from a ring,
/// where the identity is always an involution, but it keeps the
/// constructor total for property sweeps).
#[derive(Clone, Debug)]
pub struct ShurikenParams {
    pub t: usize,
    pub n: usize,
    pub base: Graph,
}

/// Builds the (t, n)-shuriken of the base graph:
///
/// * take `n` copies of the base plus one apex per copy;
/// * replicate every base edge `uv` across all copy pairs `(i, j)`,
///   including `i = j`;
/// * make each of the first `t` copies (apex included) a clique;
/// * join the remaining copies in mirrored pairs `(i, n + t - 1 - i)`,
///   apexes included.
///
/// Vertices are ordered copy-major, base vertices first and the apex last
/// within each copy, labeled `(copy, base label)` and `(copy, z)`.
pub fn shuriken(params: &ShurikenParams) -> Result<Graph> {
    let ShurikenParams { t, n, base } = params;
    let (t, n) = (*t, *n);
    if n == 0 {
        return Err(Error::InvalidSpec("shuriken needs n >= 1 copies".into()));
    }
    if t > n {
        return Err(Error::InvalidSpec(format!(
            "shuriken needs t <= n, got t = {t}, n = {n}"
        )));
    }
    if (n - t) % 2 != 0 {
        return Err(Error::InvalidSpec(format!(
            "shuriken needs n - t even, got t = {t}, n = {n}"
        )));
    }

    let b = base.order();
    let stride = b + 1;
    let mut labels = Vec::with_capacity(n * stride);
    for c in 0..n {
        for l in &base.labels {
            labels.push(Label::pair(Label::Int(c), l.clone()));
        }
        labels.push(Label::pair(Label::Int(c), Label::Apex));
    }
    let mut g = Graph::new(labels);
    let at = |copy: usize, v: usize| copy * stride + v;

    // base edges across every ordered copy pair, i = j included
    let base_edges = base.edges();
    for i in 0..n {
        for j in 0..n {
            for &(u, v) in &base_edges {
                g.add_edge(at(i, u), at(j, v));
            }
        }
    }
    // the first t copies become cliques, apex included
    for i in 0..t {
        for u in 0..stride {
            for v in u + 1..stride {
                g.add_edge(at(i, u), at(i, v));
            }
        }
    }
    // remaining copies joined in mirrored pairs
    for i in t..(n + t) / 2 {
        let j = n + t - 1 - i;
        for u in 0..stride {
            for v in 0..stride {
                g.add_edge(at(i, u), at(j, v));
            }
        }
    }
    debug_assert_eq!(g.order(), n * stride);
    Ok(g)
}
