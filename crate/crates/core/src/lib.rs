//! Clean graphs of finite rings.
//!
//! A clean graph `Cl(R)` has one vertex per pair `(e, u)` of an idempotent
//! and a unit of a finite ring `R`; two distinct vertices `(e, u)` and
//! `(f, v)` are adjacent exactly when `ef = fe = 0` or `uv = vu = 1`.
//! This crate constructs `Cl(R)`, its induced subgraphs `Cl1(R)` (zero
//! idempotent) and `Cl2(R)` (nonzero idempotent), the idempotent graph
//! `I(R)`, and shuriken graphs; it decides graph isomorphism at desk scale;
//! and it mechanically verifies the structural identities relating all of
//! these over a configurable catalog of concrete rings.

pub mod analysis;
pub mod clean;
pub mod error;
pub mod graph;
pub mod iso;
pub mod ring;
pub mod suite;

pub use error::{Error, Result};
pub use ring::{FiniteRing, RingElement, RingSpec};

/// Size limits for exhaustive scans and graph construction.
///
/// Every enumeration in this crate is exhaustive, so both caps exist to keep
/// runtimes in seconds rather than to approximate anything.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest ring order accepted by element scans (idempotents, units).
    pub max_ring_order: usize,
    /// Largest vertex count accepted by graph constructions.
    pub max_vertices: usize,
}

impl Caps {
    pub fn uniform(limit: usize) -> Self {
        Caps {
            max_ring_order: limit,
            max_vertices: limit,
        }
    }
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_ring_order: 5000,
            max_vertices: 5000,
        }
    }
}
