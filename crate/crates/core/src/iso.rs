//! Graph isomorphism at desk scale.
//!
//! The pipeline: cheap invariant screening (order, size, degree sequence,
//! component profile), then component-wise matching, and inside each
//! component pair iterative color refinement to a fixed point followed by
//! a backtracking search honoring the color classes. A `yes` always
//! carries a witness that has been checked edge by edge; running out of
//! search budget is a distinct outcome, never reported as `no`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default node budget for one `is_isomorphic` call. Every verification
/// target in the crate resolves well below this.
pub const DEFAULT_ISO_BUDGET: u64 = 10_000_000;

/// Largest graph accepted by exhaustive isomorphism enumeration.
pub const ENUMERATION_MAX_ORDER: usize = 64;

/// Node budget for one enumeration call. Enumeration is bounded by the
/// result cap and the order guard; this only stops runaway searches.
const ENUMERATION_NODE_BUDGET: u64 = 500_000_000;

/// An isomorphism-invariant summary: equal fingerprints are necessary
/// (not sufficient) for isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: usize,
    pub size: usize,
    /// Ascending.
    pub degree_sequence: Vec<usize>,
    /// Per component `(order, size, degree sequence)`, sorted.
    pub components: Vec<(usize, usize, Vec<usize>)>,
}

pub fn fingerprint(g: &Graph) -> Fingerprint {
    let mut components: Vec<(usize, usize, Vec<usize>)> = g
        .components()
        .iter()
        .map(|comp| {
            let sub = g.induced(comp);
            (sub.order(), sub.size(), sub.degree_sequence())
        })
        .collect();
    components.sort();
    Fingerprint {
        order: g.order(),
        size: g.size(),
        degree_sequence: g.degree_sequence(),
        components,
    }
}

/// Outcome of an isomorphism test. `witness` maps g1 vertices to g2
/// vertices and is present exactly on a `yes`; `screened_by` names the
/// invariant that settled a `no` without search.
#[derive(Clone, Debug)]
pub struct IsoResult {
    pub isomorphic: bool,
    pub witness: Option<Vec<usize>>,
    pub search_nodes: u64,
    pub screened_by: Option<&'static str>,
}

impl IsoResult {
    fn no(screen: Option<&'static str>, nodes: u64) -> IsoResult {
        IsoResult {
            isomorphic: false,
            witness: None,
            search_nodes: nodes,
            screened_by: screen,
        }
    }
}

/// Decides whether two graphs are isomorphic within a search budget.
pub fn is_isomorphic(g1: &Graph, g2: &Graph, budget: u64) -> Result<IsoResult> {
    let f1 = fingerprint(g1);
    let f2 = fingerprint(g2);
    if f1.order != f2.order {
        return Ok(IsoResult::no(Some("order"), 0));
    }
    if f1.size != f2.size {
        return Ok(IsoResult::no(Some("size"), 0));
    }
    if f1.degree_sequence != f2.degree_sequence {
        return Ok(IsoResult::no(Some("degree-sequence"), 0));
    }
    if f1.components != f2.components {
        return Ok(IsoResult::no(Some("component-structure"), 0));
    }

    let mut nodes = 0u64;
    // Group components by their invariant class; the fingerprint check
    // already guarantees matching class counts.
    type ComponentClasses = BTreeMap<(usize, usize, Vec<usize>), (Vec<Vec<usize>>, Vec<Vec<usize>>)>;
    let mut classes: ComponentClasses = BTreeMap::new();
    for comp in g1.components() {
        let sub = g1.induced(&comp);
        let key = (sub.order(), sub.size(), sub.degree_sequence());
        classes.entry(key).or_default().0.push(comp);
    }
    for comp in g2.components() {
        let sub = g2.induced(&comp);
        let key = (sub.order(), sub.size(), sub.degree_sequence());
        classes.entry(key).or_default().1.push(comp);
    }

    let mut witness = vec![usize::MAX; g1.order()];
    for (_, (side1, side2)) in classes {
        debug_assert_eq!(side1.len(), side2.len());
        let graphs1: Vec<Graph> = side1.iter().map(|c| g1.induced(c)).collect();
        let graphs2: Vec<Graph> = side2.iter().map(|c| g2.induced(c)).collect();
        let mut taken = vec![false; side2.len()];
        for (i, a) in graphs1.iter().enumerate() {
            let mut found = false;
            // Isomorphism is transitive, so pairing a component with the
            // first isomorphic partner never strands a later component.
            for (j, b) in graphs2.iter().enumerate() {
                if taken[j] {
                    continue;
                }
                if let Some(local) = component_witness(a, b, &mut nodes, budget)? {
                    for (x, &y) in local.iter().enumerate() {
                        witness[side1[i][x]] = side2[j][y];
                    }
                    taken[j] = true;
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(IsoResult::no(None, nodes));
            }
        }
    }

    match verify_bijection(g1, g2, &witness)? {
        BijectionCheck::Preserves => Ok(IsoResult {
            isomorphic: true,
            witness: Some(witness),
            search_nodes: nodes,
            screened_by: None,
        }),
        BijectionCheck::Violates { a, b } => unreachable!(
            "search produced a map violating adjacency at ({a}, {b})"
        ),
    }
}

/// One isomorphism between two connected components, or None.
fn component_witness(
    a: &Graph,
    b: &Graph,
    nodes: &mut u64,
    budget: u64,
) -> Result<Option<Vec<usize>>> {
    let n = a.order();
    let Some(start) = refine_pass(a, b, &vec![0; n], &vec![0; n]) else {
        return Ok(None);
    };
    let mut search = IrSearch {
        g1: a,
        g2: b,
        nodes,
        budget,
    };
    search.solve(start)
}

/// All isomorphisms from `g1` onto `g2`, truncated at `cap`.
///
/// Guarded to graphs of at most [`ENUMERATION_MAX_ORDER`] vertices; the
/// output can be factorially large.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub isomorphisms: Vec<Vec<usize>>,
    pub truncated: bool,
}

pub fn all_isomorphisms(g1: &Graph, g2: &Graph, cap: usize) -> Result<Enumeration> {
    for g in [g1, g2] {
        if g.order() > ENUMERATION_MAX_ORDER {
            return Err(Error::CapExceeded {
                what: "graph order for exhaustive isomorphism enumeration",
                value: g.order(),
                cap: ENUMERATION_MAX_ORDER,
            });
        }
    }
    if fingerprint(g1) != fingerprint(g2) {
        return Ok(Enumeration {
            isomorphisms: Vec::new(),
            truncated: false,
        });
    }
    let n = g1.order();
    let Some(state) = refine_pass(g1, g2, &vec![0; n], &vec![0; n]) else {
        return Ok(Enumeration {
            isomorphisms: Vec::new(),
            truncated: false,
        });
    };
    enumerate_small(g1, g2, &state.c1, &state.c2, cap)
}

/// Exhaustive enumeration over graphs of at most 64 vertices. Candidate
/// sets live in single machine words and are narrowed incrementally on
/// every placement, so reaching a leaf costs O(n^2) word operations and
/// dead branches are cut as soon as any vertex runs out of candidates.
fn enumerate_small(
    g1: &Graph,
    g2: &Graph,
    c1: &[u32],
    c2: &[u32],
    cap: usize,
) -> Result<Enumeration> {
    let n = g1.order();
    debug_assert!(n <= 64 && g2.order() == n);
    let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let adj2: Vec<u64> = (0..n)
        .map(|w| g2.neighbors(w).fold(0u64, |m, x| m | 1 << x))
        .collect();
    let mut color_mask: BTreeMap<u32, u64> = BTreeMap::new();
    for (w, &c) in c2.iter().enumerate() {
        *color_mask.entry(c).or_default() |= 1 << w;
    }
    // Same placement order as the witness search: constrained-first.
    let order = {
        let mut class_size: BTreeMap<u32, usize> = BTreeMap::new();
        for &c in c1 {
            *class_size.entry(c).or_default() += 1;
        }
        let mut placed = vec![false; n];
        let mut placed_neighbors = vec![0usize; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !placed[v])
                .min_by_key(|&v| (usize::MAX - placed_neighbors[v], class_size[&c1[v]], v))
                .expect("an unplaced vertex remains");
            placed[v] = true;
            order.push(v);
            for w in g1.neighbors(v) {
                placed_neighbors[w] += 1;
            }
        }
        order
    };
    let adj1_bits: Vec<u64> = (0..n)
        .map(|v| g1.neighbors(v).fold(0u64, |m, x| m | 1 << x))
        .collect();

    struct Enum<'a> {
        n: usize,
        full: u64,
        adj1: &'a [u64],
        adj2: &'a [u64],
        order: &'a [usize],
        mapping: Vec<usize>,
        used: u64,
        cap: usize,
        out: Vec<Vec<usize>>,
        truncated: bool,
        nodes: u64,
    }

    impl Enum<'_> {
        fn go(&mut self, depth: usize, allowed: &[u64]) -> Result<()> {
            if depth == self.n {
                if self.out.len() == self.cap {
                    self.truncated = true;
                } else {
                    self.out.push(self.mapping.clone());
                }
                return Ok(());
            }
            let v = self.order[depth];
            let mut cands = allowed[v] & !self.used;
            while cands != 0 && !self.truncated {
                let w = cands.trailing_zeros() as usize;
                cands &= cands - 1;
                self.nodes += 1;
                if self.nodes > ENUMERATION_NODE_BUDGET {
                    return Err(Error::Inconclusive {
                        nodes: self.nodes,
                        budget: ENUMERATION_NODE_BUDGET,
                    });
                }
                // Narrow every later vertex to neighbors / non-neighbors
                // of w according to its adjacency with v.
                let mut next = allowed.to_vec();
                let mut dead = false;
                for (u, mask) in next.iter_mut().enumerate() {
                    if self.mapping[u] != UNMAPPED || u == v {
                        continue;
                    }
                    let filter = if self.adj1[v] >> u & 1 == 1 {
                        self.adj2[w]
                    } else {
                        !self.adj2[w] & self.full
                    };
                    *mask &= filter;
                    if *mask & !(self.used | 1 << w) == 0 {
                        dead = true;
                        break;
                    }
                }
                if dead {
                    continue;
                }
                self.mapping[v] = w;
                self.used |= 1 << w;
                self.go(depth + 1, &next)?;
                self.mapping[v] = UNMAPPED;
                self.used &= !(1 << w);
            }
            Ok(())
        }
    }

    let allowed: Vec<u64> = (0..n).map(|v| color_mask[&c1[v]]).collect();
    let mut state = Enum {
        n,
        full,
        adj1: &adj1_bits,
        adj2: &adj2,
        order: &order,
        mapping: vec![UNMAPPED; n],
        used: 0,
        cap,
        out: Vec::new(),
        truncated: false,
        nodes: 0,
    };
    state.go(0, &allowed)?;
    Ok(Enumeration {
        isomorphisms: state.out,
        truncated: state.truncated,
    })
}

/// Result of checking one explicit candidate bijection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BijectionCheck {
    Preserves,
    /// The first vertex pair (in g1 order) whose adjacency is not
    /// preserved.
    Violates { a: usize, b: usize },
}

/// Checks the `u ~ v  iff  f(u) ~ f(v)` condition pair by pair.
pub fn verify_bijection(g1: &Graph, g2: &Graph, map: &[usize]) -> Result<BijectionCheck> {
    let n = g1.order();
    if g2.order() != n || map.len() != n {
        return Err(Error::Domain(format!(
            "bijection check needs equal orders, got {} -> {} with map of length {}",
            n,
            g2.order(),
            map.len()
        )));
    }
    let mut hit = vec![false; n];
    for &w in map {
        if w >= n || hit[w] {
            return Err(Error::Domain(
                "map is not a bijection onto the target vertex set".into(),
            ));
        }
        hit[w] = true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if g1.has_edge(u, v) != g2.has_edge(map[u], map[v]) {
                return Ok(BijectionCheck::Violates { a: u, b: v });
            }
        }
    }
    Ok(BijectionCheck::Preserves)
}

const UNMAPPED: usize = usize::MAX;

/// A stable joint coloring of both graphs: one shared palette, per-color
/// counts equal on the two sides.
struct Refined {
    c1: Vec<u32>,
    c2: Vec<u32>,
    palette: usize,
}

impl Refined {
    fn discrete(&self) -> bool {
        self.palette == self.c1.len()
    }
}

/// Runs color refinement to a fixed point from the given starting colors.
/// Every round reassigns canonical ids from the sorted signatures of both
/// graphs together, then compares the per-color histograms; a mismatch
/// proves non-isomorphism and returns None.
fn refine_pass(g1: &Graph, g2: &Graph, init1: &[u32], init2: &[u32]) -> Option<Refined> {
    fn assign(
        sigs1: Vec<(u32, Vec<u32>)>,
        sigs2: Vec<(u32, Vec<u32>)>,
    ) -> Option<(Vec<u32>, Vec<u32>, usize)> {
        let mut palette: Vec<&(u32, Vec<u32>)> = sigs1.iter().chain(sigs2.iter()).collect();
        palette.sort();
        palette.dedup();
        let index: BTreeMap<&(u32, Vec<u32>), u32> = palette
            .iter()
            .enumerate()
            .map(|(i, s)| (*s, i as u32))
            .collect();
        let c1: Vec<u32> = sigs1.iter().map(|s| index[s]).collect();
        let c2: Vec<u32> = sigs2.iter().map(|s| index[s]).collect();
        let size = palette.len();
        let mut h1 = vec![0usize; size];
        let mut h2 = vec![0usize; size];
        for &c in &c1 {
            h1[c as usize] += 1;
        }
        for &c in &c2 {
            h2[c as usize] += 1;
        }
        (h1 == h2).then_some((c1, c2, size))
    }

    let plain = |colors: &[u32]| colors.iter().map(|&c| (c, Vec::new())).collect();
    let (mut c1, mut c2, mut palette) = assign(plain(init1), plain(init2))?;
    loop {
        let next = |g: &Graph, colors: &[u32]| -> Vec<(u32, Vec<u32>)> {
            (0..g.order())
                .map(|v| {
                    let mut around: Vec<u32> = g.neighbors(v).map(|w| colors[w]).collect();
                    around.sort_unstable();
                    (colors[v], around)
                })
                .collect()
        };
        let (n1, n2, size) = assign(next(g1, &c1), next(g2, &c2))?;
        if size == palette {
            return Some(Refined { c1, c2, palette });
        }
        c1 = n1;
        c2 = n2;
        palette = size;
    }
}

/// Individualization-refinement search. At every node the smallest
/// non-singleton color class is split: one fixed g1 vertex of that class
/// is tried against each g2 vertex of the class, the pair gets a fresh
/// color, and refinement runs again. Wrong pairings collapse in the next
/// refinement pass, so the tree stays near the orbit structure. A discrete
/// stable coloring reads off the isomorphism directly.
struct IrSearch<'a, 'n> {
    g1: &'a Graph,
    g2: &'a Graph,
    nodes: &'n mut u64,
    budget: u64,
}

impl IrSearch<'_, '_> {
    fn solve(&mut self, state: Refined) -> Result<Option<Vec<usize>>> {
        if state.discrete() {
            let mut by_color = vec![usize::MAX; state.palette];
            for (w, &c) in state.c2.iter().enumerate() {
                by_color[c as usize] = w;
            }
            let mapping: Vec<usize> = state.c1.iter().map(|&c| by_color[c as usize]).collect();
            return Ok(Some(mapping));
        }

        // Smallest class with more than one vertex, lowest color id on ties.
        let mut counts = vec![0usize; state.palette];
        for &c in &state.c1 {
            counts[c as usize] += 1;
        }
        let target = counts
            .iter()
            .enumerate()
            .filter(|(_, &size)| size > 1)
            .min_by_key(|(color, &size)| (size, *color))
            .map(|(color, _)| color as u32)
            .expect("non-discrete coloring has a splittable class");

        let v = (0..self.g1.order())
            .find(|&v| state.c1[v] == target)
            .expect("class is populated in g1");
        let fresh = state.palette as u32;
        for w in 0..self.g2.order() {
            if state.c2[w] != target {
                continue;
            }
            *self.nodes += 1;
            if *self.nodes > self.budget {
                return Err(Error::Inconclusive {
                    nodes: *self.nodes,
                    budget: self.budget,
                });
            }
            let mut init1 = state.c1.clone();
            let mut init2 = state.c2.clone();
            init1[v] = fresh;
            init2[w] = fresh;
            if let Some(next) = refine_pass(self.g1, self.g2, &init1, &init2) {
                if let Some(mapping) = self.solve(next)? {
                    return Ok(Some(mapping));
                }
            }
        }
        Ok(None)
    }
}

/// A deterministic pseudorandom permutation of `0..n` (SplitMix64 driving
/// a Fisher-Yates shuffle). Used by relabeling checks.
pub fn seeded_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut state = seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut next = move || {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = (next() % (i as u64 + 1)) as usize;
        perm.swap(i, j);
    }
    perm
}
