//! Clean graphs and their relatives, built from one ring:
//! `Cl(R)` on all pairs (idempotent, unit), the induced subgraphs `Cl1(R)`
//! (zero idempotent, a complete graph) and `Cl2(R)` (nonzero idempotent),
//! the idempotent graph `I(R)` on nontrivial idempotents, the closed-form
//! `Cl2` vertex degree, and the shuriken route to `Cl2(R)` with its
//! explicit candidate bijection.

use crate::analysis::{idempotents, units, IdempotentTable, UnitTable};
use crate::error::{Error, Result};
use crate::graph::{shuriken, Graph, Label, ShurikenParams};
use crate::ring::{FiniteRing, RingElement};
use crate::Caps;

/// A vertex of `Cl(R)`: an idempotent paired with a unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CleanVertex {
    pub e: RingElement,
    pub u: RingElement,
}

impl CleanVertex {
    pub fn label(&self) -> Label {
        Label::pair_of(self.e.index(), self.u.index())
    }
}

/// Shared element tables for one ring; every clean-graph construction on
/// the same ring reuses these.
pub struct CleanContext {
    ring: FiniteRing,
    units: UnitTable,
    idems: IdempotentTable,
    caps: Caps,
}

impl CleanContext {
    pub fn new(ring: &FiniteRing, caps: &Caps) -> Result<CleanContext> {
        Ok(CleanContext {
            ring: ring.clone(),
            units: units(ring, caps)?,
            idems: idempotents(ring, caps)?,
            caps: *caps,
        })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn unit_table(&self) -> &UnitTable {
        &self.units
    }

    pub fn idempotent_table(&self) -> &IdempotentTable {
        &self.idems
    }

    /// Adjacency of two distinct clean vertices: two-sided orthogonality of
    /// the idempotents or mutual inversion of the units. Both products are
    /// evaluated even over commutative rings; one code path serves
    /// `M2(Z_p)` too.
    pub fn adjacent(&self, a: &CleanVertex, b: &CleanVertex) -> bool {
        let r = &self.ring;
        let ortho = r.is_zero(r.mul(a.e, b.e)) && r.is_zero(r.mul(b.e, a.e));
        let inverse = r.is_one(r.mul(a.u, b.u)) && r.is_one(r.mul(b.u, a.u));
        ortho || inverse
    }

    /// All `(e, u)` pairs, idempotent-major in canonical index order, units
    /// in unit-table order. This is the canonical external vertex order.
    pub fn clean_vertices(&self) -> Vec<CleanVertex> {
        self.pairs(self.idems.all())
    }

    /// The `Cl2` vertex list: nonzero idempotents only, same ordering.
    pub fn cl2_vertices(&self) -> Vec<CleanVertex> {
        self.pairs(&self.idems.nonzero())
    }

    fn pairs(&self, es: &[RingElement]) -> Vec<CleanVertex> {
        let mut out = Vec::with_capacity(es.len() * self.units.len());
        for &e in es {
            for &u in self.units.units() {
                out.push(CleanVertex { e, u });
            }
        }
        out
    }

    fn graph_on(&self, verts: &[CleanVertex]) -> Result<Graph> {
        if verts.len() > self.caps.max_vertices {
            return Err(Error::CapExceeded {
                what: "vertex count",
                value: verts.len(),
                cap: self.caps.max_vertices,
            });
        }
        // Orthogonality only depends on the idempotent coordinates and
        // mutual inversion only on the unit positions; precompute both so
        // the quadratic pair loop stays cheap.
        let idems = self.idems.all();
        let r = &self.ring;
        let mut ortho = vec![false; idems.len() * idems.len()];
        for (i, &e) in idems.iter().enumerate() {
            for (j, &f) in idems.iter().enumerate() {
                ortho[i * idems.len() + j] =
                    r.is_zero(r.mul(e, f)) && r.is_zero(r.mul(f, e));
            }
        }
        let idem_pos = |e: RingElement| idems.iter().position(|&x| x == e).expect("idempotent");

        let labels: Vec<Label> = verts.iter().map(CleanVertex::label).collect();
        let mut g = Graph::new(labels);
        let epos: Vec<usize> = verts.iter().map(|v| idem_pos(v.e)).collect();
        let upos: Vec<usize> = verts
            .iter()
            .map(|v| self.units.position(v.u).expect("unit"))
            .collect();
        for a in 0..verts.len() {
            for b in a + 1..verts.len() {
                let orthogonal = ortho[epos[a] * idems.len() + epos[b]];
                let inverse = self.units.inverse_pos(upos[a]) == upos[b];
                if orthogonal || inverse {
                    g.add_edge(a, b);
                }
            }
        }
        Ok(g)
    }

    /// `Cl(R)` with its canonical vertex order.
    pub fn clean_graph(&self) -> Result<Graph> {
        self.graph_on(&self.clean_vertices())
    }

    /// `Cl1(R)`: the induced subgraph on `(0, u)` vertices, always complete.
    pub fn cl1(&self) -> Result<Graph> {
        let zero = self.ring.zero();
        let verts: Vec<CleanVertex> = self
            .units
            .units()
            .iter()
            .map(|&u| CleanVertex { e: zero, u })
            .collect();
        self.graph_on(&verts)
    }

    /// `Cl2(R)`: the induced subgraph on nonzero-idempotent vertices.
    pub fn cl2(&self) -> Result<Graph> {
        self.graph_on(&self.cl2_vertices())
    }

    /// `I(R)`: nontrivial idempotents under two-sided orthogonality.
    pub fn idempotent_graph(&self) -> Graph {
        let verts = self.idems.nontrivial();
        let r = &self.ring;
        let mut g = Graph::new(verts.iter().map(|e| Label::Int(e.index())).collect());
        for i in 0..verts.len() {
            for j in i + 1..verts.len() {
                let (e, f) = (verts[i], verts[j]);
                if r.is_zero(r.mul(e, f)) && r.is_zero(r.mul(f, e)) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// The closed-form degree of `(e, u)` in `Cl2(R)`:
    /// `(m - 1) + O_e (k - 1)` when `u` is an involution, `m + O_e (k - 1)`
    /// otherwise, with `m` the number of nonzero idempotents and `k` the
    /// number of units.
    pub fn cl2_degree_formula(&self, e: RingElement, u: RingElement) -> Result<usize> {
        if self.ring.is_zero(e) {
            return Err(Error::Domain(
                "the Cl2 degree formula needs a nonzero idempotent".into(),
            ));
        }
        let o_e = self.idems.ortho_count(e).ok_or_else(|| {
            Error::Domain(format!("{} is not an idempotent", self.ring.describe(e)))
        })?;
        if !self.units.is_unit(u) {
            return Err(Error::Domain(format!(
                "{} is not a unit",
                self.ring.describe(u)
            )));
        }
        let m = self.idems.nonzero().len();
        let k = self.units.len();
        let base = if self.units.is_involution(u) { m - 1 } else { m };
        Ok(base + o_e * (k - 1))
    }

    /// Builds `Cl2(R)` the structural way: the shuriken of `I(R)` with
    /// `t = |U'|` copies made cliques out of `n = |U|` total, plus the
    /// candidate bijection onto the directly built `Cl2(R)`:
    /// copy `i` corresponds to unit `u_i`, its apex to `(1, u_i)`, and base
    /// vertex `e` in copy `i` to `(e, u_i)`.
    pub fn shuriken_route(&self) -> Result<ShurikenRoute> {
        let base = self.idempotent_graph();
        let t = self.units.involution_count();
        let n = self.units.len();
        let graph = shuriken(&ShurikenParams {
            t,
            n,
            base,
        })?;
        if graph.order() > self.caps.max_vertices {
            return Err(Error::CapExceeded {
                what: "vertex count",
                value: graph.order(),
                cap: self.caps.max_vertices,
            });
        }

        // Position of each nonzero idempotent in the Cl2 vertex order.
        let nonzero = self.idems.nonzero();
        let pos_of = |e: RingElement| {
            nonzero
                .iter()
                .position(|&x| x == e)
                .expect("nonzero idempotent")
        };
        let nontrivial = self.idems.nontrivial();
        let one_pos = pos_of(self.ring.one());

        let k = n;
        let stride = nontrivial.len() + 1;
        let mut to_cl2 = vec![0usize; graph.order()];
        for copy in 0..n {
            for (j, &e) in nontrivial.iter().enumerate() {
                to_cl2[copy * stride + j] = pos_of(e) * k + copy;
            }
            to_cl2[copy * stride + nontrivial.len()] = one_pos * k + copy;
        }
        Ok(ShurikenRoute { graph, to_cl2 })
    }
}

/// A shuriken-built `Cl2` candidate: the graph plus the explicit vertex
/// bijection onto the directly built `Cl2(R)`.
#[derive(Clone, Debug)]
pub struct ShurikenRoute {
    pub graph: Graph,
    pub to_cl2: Vec<usize>,
}

pub fn clean_graph(ring: &FiniteRing, caps: &Caps) -> Result<Graph> {
    CleanContext::new(ring, caps)?.clean_graph()
}

pub fn cl1(ring: &FiniteRing, caps: &Caps) -> Result<Graph> {
    CleanContext::new(ring, caps)?.cl1()
}

pub fn cl2(ring: &FiniteRing, caps: &Caps) -> Result<Graph> {
    CleanContext::new(ring, caps)?.cl2()
}

pub fn idempotent_graph(ring: &FiniteRing, caps: &Caps) -> Result<Graph> {
    Ok(CleanContext::new(ring, caps)?.idempotent_graph())
}

pub fn cl2_degree_formula(
    ring: &FiniteRing,
    caps: &Caps,
    e: RingElement,
    u: RingElement,
) -> Result<usize> {
    CleanContext::new(ring, caps)?.cl2_degree_formula(e, u)
}

pub fn cl2_via_shuriken(ring: &FiniteRing, caps: &Caps) -> Result<ShurikenRoute> {
    CleanContext::new(ring, caps)?.shuriken_route()
}
