//! Cross-module invariants over the default ring catalog, plus property
//! sweeps for the graph constructors.

use proptest::prelude::*;

use cleangraph_core::analysis::{idempotents, units};
use cleangraph_core::clean::CleanContext;
use cleangraph_core::graph::{graph_join, shuriken, Graph, ShurikenParams};
use cleangraph_core::iso::{is_isomorphic, seeded_permutation, DEFAULT_ISO_BUDGET};
use cleangraph_core::ring::{build_ring, make_product, verify_ring_axioms, RingSpec};
use cleangraph_core::suite::RingCatalog;
use cleangraph_core::Caps;

fn catalog_contexts() -> Vec<CleanContext> {
    let catalog = RingCatalog::default_catalog();
    catalog
        .rings()
        .unwrap()
        .iter()
        .map(|ring| CleanContext::new(ring, &catalog.caps).unwrap())
        .collect()
}

#[test]
fn ring_axioms_hold_for_every_catalog_ring() {
    for ring in RingCatalog::default_catalog().rings().unwrap() {
        assert!(ring.order() <= 512, "catalog rings stay exhaustively checkable");
        verify_ring_axioms(&ring).unwrap_or_else(|e| panic!("{ring}: {e}"));
    }
}

#[test]
fn unit_table_invariants_for_every_catalog_ring() {
    for ctx in catalog_contexts() {
        let ring = ctx.ring();
        let table = ctx.unit_table();
        let t = table.involution_count();
        for (pos, &u) in table.units().iter().enumerate() {
            let inv = table.units()[table.inverse_pos(pos)];
            assert!(ring.is_one(ring.mul(u, inv)) && ring.is_one(ring.mul(inv, u)));
            assert_eq!(table.inverse_pos(table.inverse_pos(pos)), pos);
            assert_eq!(pos < t, ring.is_one(ring.mul(u, u)), "U' is the u^2 = 1 set");
        }
        assert_eq!(table.u_double_prime().len() % 2, 0);
        assert_eq!(table.inverse(ring.one()), Some(ring.one()));
    }
}

#[test]
fn product_units_and_idempotents_are_componentwise() {
    let caps = Caps::default();
    for (a, b) in [(2u64, 3u64), (2, 5), (3, 4), (4, 5), (5, 5)] {
        let left = build_ring(&RingSpec::Zn(a), &caps).unwrap();
        let right = build_ring(&RingSpec::Zn(b), &caps).unwrap();
        let prod = make_product(&left, &right);
        let (ul, ur, up) = (
            units(&left, &caps).unwrap(),
            units(&right, &caps).unwrap(),
            units(&prod, &caps).unwrap(),
        );
        assert_eq!(up.len(), ul.len() * ur.len());
        for &x in ul.units() {
            for &y in ur.units() {
                let e = prod.element(x.index() * right.order() + y.index());
                assert!(up.is_unit(e));
            }
        }
        let (il, ir, ip) = (
            idempotents(&left, &caps).unwrap(),
            idempotents(&right, &caps).unwrap(),
            idempotents(&prod, &caps).unwrap(),
        );
        assert_eq!(ip.all().len(), il.all().len() * ir.all().len());
    }
}

#[test]
fn clean_graph_is_join_of_cl1_and_cl2_everywhere() {
    for ctx in catalog_contexts() {
        let joined = graph_join(&ctx.cl1().unwrap(), &ctx.cl2().unwrap());
        assert_eq!(joined, ctx.clean_graph().unwrap(), "{}", ctx.ring());
    }
}

#[test]
fn iso_verdicts_are_symmetric_on_catalog_cl2_pairs() {
    let ctxs = catalog_contexts();
    let graphs: Vec<Graph> = ctxs.iter().map(|c| c.cl2().unwrap()).collect();
    // a deterministic sample of pairs keeps this quick
    for i in (0..graphs.len()).step_by(3) {
        for j in ((i + 1)..graphs.len()).step_by(4) {
            let ab = is_isomorphic(&graphs[i], &graphs[j], DEFAULT_ISO_BUDGET).unwrap();
            let ba = is_isomorphic(&graphs[j], &graphs[i], DEFAULT_ISO_BUDGET).unwrap();
            assert_eq!(ab.isomorphic, ba.isomorphic);
        }
    }
}

fn seeded_graph(n: usize, seed: u64) -> Graph {
    let mut g = Graph::with_order(n);
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        state >> 33
    };
    for u in 0..n {
        for v in u + 1..n {
            if next() % 2 == 0 {
                g.add_edge(u, v);
            }
        }
    }
    g
}

proptest! {
    #[test]
    fn shuriken_vertex_count(t in 0usize..6, half in 0usize..5, base_n in 0usize..5, seed in any::<u64>()) {
        let n = t + 2 * half;
        prop_assume!(n >= 1);
        let base = seeded_graph(base_n, seed);
        let g = shuriken(&ShurikenParams { t, n, base }).unwrap();
        prop_assert_eq!(g.order(), n * (base_n + 1));
    }

    #[test]
    fn shuriken_of_empty_base_has_apex_degrees(t in 0usize..6, half in 0usize..5) {
        let n = t + 2 * half;
        prop_assume!(n >= 1);
        let g = shuriken(&ShurikenParams { t, n, base: Graph::with_order(0) }).unwrap();
        for i in 0..n {
            let expected = if i < t { 0 } else { 1 };
            prop_assert_eq!(g.degree(i), expected);
        }
    }

    #[test]
    fn clique_copies_of_a_shuriken_are_complete(t in 1usize..5, half in 0usize..4, base_n in 0usize..4, seed in any::<u64>()) {
        let n = t + 2 * half;
        let base = seeded_graph(base_n, seed);
        let g = shuriken(&ShurikenParams { t, n, base }).unwrap();
        let stride = base_n + 1;
        for copy in 0..t {
            let verts: Vec<usize> = (copy * stride..(copy + 1) * stride).collect();
            let sub = g.induced(&verts);
            prop_assert_eq!(sub.size(), stride * (stride - 1) / 2);
        }
    }

    #[test]
    fn relabeling_preserves_isomorphism(seed in any::<u64>()) {
        let caps = Caps::default();
        let ring = build_ring(&RingSpec::Zn(12), &caps).unwrap();
        let g = CleanContext::new(&ring, &caps).unwrap().cl2().unwrap();
        let h = g.permuted(&seeded_permutation(g.order(), seed));
        let r = is_isomorphic(&g, &h, DEFAULT_ISO_BUDGET).unwrap();
        prop_assert!(r.isomorphic);
    }
}
