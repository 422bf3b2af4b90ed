//! The acceptance suite: one test per criterion, every check exact
//! (combinatorial equality or isomorphism, no tolerances). Each test
//! prints its own pass line; together they pin the behavior the toolkit
//! promises.

use std::time::Instant;

use cleangraph_core::analysis::{
    involution_count_m2_formula, involutions_m2_classified, unit_count_m2_formula, units,
};
use cleangraph_core::clean::CleanContext;
use cleangraph_core::graph::{complete_graph, copies, disjoint_union, Graph};
use cleangraph_core::iso::{
    fingerprint, is_isomorphic, seeded_permutation, verify_bijection, BijectionCheck,
    DEFAULT_ISO_BUDGET,
};
use cleangraph_core::ring::{build_ring, is_prime, make_m2p, make_quot_poly, make_zn, RingSpec};
use cleangraph_core::suite::{
    check_cl_iff_cl2, check_m2_structure, check_prime_power_criterion, check_product_theorem,
    check_uprime_lemma, default_product_instances, prime_powers_up_to, run_all, RingCatalog,
    SuiteOptions, Verdict,
};
use cleangraph_core::Caps;

use cleangraph_cli::export::{decode_graph6, export_graph6};

fn caps() -> Caps {
    Caps::default()
}

fn cl2_of(spec: RingSpec) -> Graph {
    let ring = build_ring(&spec, &caps()).unwrap();
    CleanContext::new(&ring, &caps()).unwrap().cl2().unwrap()
}

fn assert_isomorphic(a: &Graph, b: &Graph, what: &str) {
    let r = is_isomorphic(a, b, DEFAULT_ISO_BUDGET).unwrap();
    assert!(r.isomorphic, "{what}: expected isomorphic");
    let witness = r.witness.expect("yes verdict carries a witness");
    assert_eq!(
        verify_bijection(a, b, &witness).unwrap(),
        BijectionCheck::Preserves,
        "{what}: witness must verify"
    );
}

#[test]
fn criterion_01_small_cl2_shapes() {
    let two_k1 = copies(2, &complete_graph(1));
    let z3 = cl2_of(RingSpec::Zn(3));
    let z4 = cl2_of(RingSpec::Zn(4));
    assert_isomorphic(&z3, &z4, "Cl2(Z3) vs Cl2(Z4)");
    assert_isomorphic(&z3, &two_k1, "Cl2(Z3) vs 2K1");
    assert_isomorphic(&z4, &two_k1, "Cl2(Z4) vs 2K1");

    let two_k1_two_k2 = disjoint_union(&two_k1, &copies(2, &complete_graph(2)));
    let z7 = cl2_of(RingSpec::Zn(7));
    let z9 = cl2_of(RingSpec::Zn(9));
    assert_isomorphic(&z7, &z9, "Cl2(Z7) vs Cl2(Z9)");
    assert_isomorphic(&z7, &two_k1_two_k2, "Cl2(Z7) vs 2K1 + 2K2");
    assert_isomorphic(&z9, &two_k1_two_k2, "Cl2(Z9) vs 2K1 + 2K2");
    println!("criterion 01 (small Cl2 shapes): PASS");
}

#[test]
fn criterion_02_four_way_product_chain() {
    let graphs = [
        cl2_of(RingSpec::product(RingSpec::Zn(3), RingSpec::Zn(3))),
        cl2_of(RingSpec::product(RingSpec::Zn(3), RingSpec::Zn(4))),
        cl2_of(RingSpec::product(RingSpec::Zn(4), RingSpec::Zn(4))),
        cl2_of(RingSpec::Zn(12)),
    ];
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            assert_isomorphic(&graphs[i], &graphs[j], "chain pair");
        }
    }
    println!("criterion 02 (four-way product chain): PASS");
}

#[test]
fn criterion_03_z4_vs_quotient_ring() {
    let z4 = make_zn(4).unwrap();
    let quot = make_quot_poly(2, &[0, 0, 1]).unwrap();
    let g4 = CleanContext::new(&z4, &caps()).unwrap().cl2().unwrap();
    let gq = CleanContext::new(&quot, &caps()).unwrap().cl2().unwrap();
    assert_isomorphic(&g4, &gq, "Cl2(Z4) vs Cl2(Z2[x]/(x^2))");

    // The rings themselves differ multiplicatively even though the graphs
    // agree: both have a nonzero square-zero element (2 and x), but in Z4
    // that element is 1 + 1 while in the quotient 1 + 1 = 0.
    let two = z4.element(2);
    assert!(z4.is_zero(z4.mul(two, two)));
    assert_eq!(z4.add(z4.one(), z4.one()), two);
    let x = quot.element(2);
    assert!(quot.is_zero(quot.mul(x, x)));
    assert!(quot.is_zero(quot.add(quot.one(), quot.one())));

    // and the report records the distinction
    let catalog = RingCatalog {
        specs: vec![
            RingSpec::Zn(4),
            RingSpec::QuotPoly {
                p: 2,
                coeffs: vec![0, 0, 1],
            },
        ],
        caps: caps(),
    };
    let report = check_cl_iff_cl2(&catalog, DEFAULT_ISO_BUDGET).unwrap();
    assert!(report.passed());
    let witness = report.instances[0].witness.as_ref().unwrap();
    assert_eq!(witness["cl2_isomorphic"], true);
    let probes = witness["ring_probes"].as_array().unwrap();
    assert_eq!(probes[0]["characteristic"], 4);
    assert_eq!(probes[1]["characteristic"], 2);
    assert_eq!(probes[0]["one_plus_one"], 2);
    assert_eq!(probes[1]["one_plus_one"], 0);
    println!("criterion 03 (Z4 vs Z2[x]/(x^2)): PASS");
}

#[test]
fn criterion_04_cl_iff_cl2_over_catalog() {
    let catalog = RingCatalog::default_catalog();
    assert!(catalog.specs.len() >= 20, "catalog holds at least 20 rings");
    let pairs = catalog.specs.len() * (catalog.specs.len() - 1) / 2;
    assert!(pairs >= 190, "catalog yields at least 190 unordered pairs");

    let report = check_cl_iff_cl2(&catalog, DEFAULT_ISO_BUDGET).unwrap();
    assert_eq!(report.instances.len(), pairs);
    assert!(report.passed(), "every pair agrees on Cl-iso vs Cl2-iso");
    assert_eq!(report.inconclusive_count(), 0);
    println!(
        "criterion 04 (Cl iff Cl2 on {} rings, {} pairs): PASS",
        catalog.specs.len(),
        pairs
    );
}

#[test]
fn criterion_05_degree_formula_oracle() {
    let catalog = RingCatalog::default_catalog();
    let mut vertices_checked = 0usize;
    for ring in catalog.rings().unwrap() {
        let ctx = CleanContext::new(&ring, &catalog.caps).unwrap();
        let g = ctx.cl2().unwrap();
        for (pos, v) in ctx.cl2_vertices().iter().enumerate() {
            assert_eq!(
                ctx.cl2_degree_formula(v.e, v.u).unwrap(),
                g.degree(pos),
                "{ring}: formula degree differs at vertex {}",
                v.label()
            );
            vertices_checked += 1;
        }
    }
    assert_eq!(vertices_checked, 998, "every Cl2 vertex of the catalog");
    println!("criterion 05 (degree formula on {vertices_checked} vertices): PASS");
}

#[test]
fn criterion_06_prime_power_sweep() {
    let start = Instant::now();

    // Independent sieve: a prime power has exactly one distinct prime
    // factor. Frozen oracle values: 60 prime powers below 200, hence 1770
    // unordered pairs.
    let mut oracle = Vec::new();
    for v in 2u64..=200 {
        let mut rest = v;
        let mut distinct = 0;
        let mut d = 2;
        while d * d <= rest {
            if rest % d == 0 {
                distinct += 1;
                while rest % d == 0 {
                    rest /= d;
                }
            }
            d += 1;
        }
        if rest > 1 {
            distinct += 1;
        }
        if distinct == 1 {
            oracle.push(v);
        }
    }
    assert_eq!(oracle.len(), 60);
    assert_eq!(oracle.len() * (oracle.len() - 1) / 2, 1770);
    for v in [2, 3, 4, 5, 7, 8, 9, 199] {
        assert!(oracle.contains(&v));
    }

    let enumerated: Vec<u64> = prime_powers_up_to(200).iter().map(|pp| pp.value).collect();
    assert_eq!(enumerated, oracle, "sieve agrees with the oracle");

    let report = check_prime_power_criterion(200, &caps(), DEFAULT_ISO_BUDGET).unwrap();
    assert!(report.passed());
    assert_eq!(report.inconclusive_count(), 0);
    assert_eq!(report.instances.len(), 1770 + 1, "all pairs plus the enumeration record");

    let find = |key: &str| {
        report
            .instances
            .iter()
            .find(|i| i.key == key)
            .unwrap_or_else(|| panic!("instance {key} missing"))
    };
    // the exceptional pair appears and is isomorphic
    let exceptional = find("{3, 4}");
    assert_eq!(exceptional.verdict, Verdict::Pass);
    assert_eq!(exceptional.witness.as_ref().unwrap()["isomorphic"], true);
    // {9, 7}: q = 3^2 - 3 + 1 = 7 is prime and enters with exponent 1
    let nine_seven = find("{7, 9}");
    assert_eq!(nine_seven.witness.as_ref().unwrap()["isomorphic"], true);
    assert_eq!(9 - 3 + 1, 7u64);
    assert!(is_prime(7));

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "sweep took {elapsed:?}, budget 10 s");
    println!("criterion 06 (prime-power sweep, 60 values, 1770 pairs, {elapsed:?}): PASS");
}

#[test]
fn criterion_07_product_transfer_instances() {
    let instances = default_product_instances();
    assert_eq!(instances.len(), 20);
    let report = check_product_theorem(&instances, &caps(), DEFAULT_ISO_BUDGET).unwrap();
    assert!(report.passed());
    assert_eq!(report.instances.len(), 20);
    for inst in &report.instances {
        assert_eq!(
            inst.witness.as_ref().unwrap()["route"],
            "explicit-bijection",
            "{}: the proof's map itself must verify",
            inst.key
        );
    }
    println!("criterion 07 (product transfer, 20 explicit bijections): PASS");
}

#[test]
fn criterion_08_m2_counting_formulas() {
    for p in [2u64, 3, 5] {
        let ring = make_m2p(p).unwrap();
        let table = units(&ring, &caps()).unwrap();
        assert_eq!(table.len() as u64, unit_count_m2_formula(p), "p = {p}");
        assert_eq!(
            table.involution_count() as u64,
            involution_count_m2_formula(p),
            "p = {p}"
        );

        let classification = involutions_m2_classified(p).unwrap();
        // the four families partition the brute-force involution set
        let mut listed: Vec<usize> = classification
            .families
            .iter()
            .flatten()
            .map(|e| e.index())
            .collect();
        let before = listed.len();
        listed.sort_unstable();
        listed.dedup();
        assert_eq!(listed.len(), before, "families overlap at p = {p}");
        let mut brute: Vec<usize> = ring
            .elements()
            .filter(|&u| ring.is_one(ring.mul(u, u)))
            .map(|e| e.index())
            .collect();
        brute.sort_unstable();
        assert_eq!(listed, brute, "families must cover all involutions at p = {p}");

        match p {
            2 => {
                assert_eq!(classification.family_sizes(), [4, 0, 0, 0]);
                assert_eq!(classification.total(), 4);
            }
            3 => assert_eq!(classification.family_sizes(), [4, 4, 4, 2]),
            _ => assert_eq!(classification.total(), 32),
        }
    }
    assert_eq!(unit_count_m2_formula(2), 6);
    assert_eq!(unit_count_m2_formula(3), 48);
    assert_eq!(unit_count_m2_formula(5), 480);
    println!("criterion 08 (M2 counting formulas for p = 2, 3, 5): PASS");
}

#[test]
fn criterion_09_m2_shuriken_bijections() {
    // p = 2: 42 vertices
    let ring = make_m2p(2).unwrap();
    let ctx = CleanContext::new(&ring, &caps()).unwrap();
    let cl2 = ctx.cl2().unwrap();
    assert_eq!(cl2.order(), 42);
    let route = ctx.shuriken_route().unwrap();
    assert_eq!(
        verify_bijection(&route.graph, &cl2, &route.to_cl2).unwrap(),
        BijectionCheck::Preserves
    );

    // p = 3: 624 vertices, under 30 s
    let start = Instant::now();
    let ring = make_m2p(3).unwrap();
    let ctx = CleanContext::new(&ring, &caps()).unwrap();
    let cl2 = ctx.cl2().unwrap();
    assert_eq!(cl2.order(), 624);
    assert_eq!(ctx.unit_table().len(), 48);
    assert_eq!(ctx.unit_table().involution_count(), 14);
    let route = ctx.shuriken_route().unwrap();
    assert_eq!(
        verify_bijection(&route.graph, &cl2, &route.to_cl2).unwrap(),
        BijectionCheck::Preserves
    );
    // the suite's combined check, matching-base shuriken included
    let report = check_m2_structure(3, &caps(), DEFAULT_ISO_BUDGET).unwrap();
    assert!(report.passed());
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "p = 3 took {elapsed:?}, budget 30 s");

    let report2 = check_m2_structure(2, &caps(), DEFAULT_ISO_BUDGET).unwrap();
    assert!(report2.passed());
    println!("criterion 09 (M2 shuriken bijections, 42 and 624 vertices, {elapsed:?}): PASS");
}

#[test]
fn criterion_10_shuriken_structure_theorem_on_catalog() {
    let catalog = RingCatalog::default_catalog();
    for ring in catalog.rings().unwrap() {
        let ctx = CleanContext::new(&ring, &catalog.caps).unwrap();
        let cl2 = ctx.cl2().unwrap();
        let route = ctx.shuriken_route().unwrap();
        assert_eq!(route.graph.order(), cl2.order(), "{ring}");
        assert_eq!(
            verify_bijection(&route.graph, &cl2, &route.to_cl2).unwrap(),
            BijectionCheck::Preserves,
            "{ring}: shuriken(|U'|, |U|, I(R)) must match Cl2(R)"
        );
    }
    println!("criterion 10 (shuriken structure over the whole catalog): PASS");
}

#[test]
fn criterion_11_iso_engine_soundness_and_graph6() {
    let catalog = RingCatalog::default_catalog();
    let mut graphs_checked = 0usize;
    for ring in catalog.rings().unwrap() {
        let ctx = CleanContext::new(&ring, &catalog.caps).unwrap();
        let family = [
            ctx.clean_graph().unwrap(),
            ctx.cl1().unwrap(),
            ctx.cl2().unwrap(),
            ctx.idempotent_graph(),
        ];
        for g in &family {
            // reflexivity with a verified witness
            let r = is_isomorphic(g, g, DEFAULT_ISO_BUDGET).unwrap();
            assert!(r.isomorphic, "{ring}: reflexivity");
            assert_eq!(
                verify_bijection(g, g, &r.witness.unwrap()).unwrap(),
                BijectionCheck::Preserves
            );

            // twenty random relabelings each
            for seed in 0..20u64 {
                let h = g.permuted(&seeded_permutation(g.order(), seed));
                let r = is_isomorphic(g, &h, DEFAULT_ISO_BUDGET).unwrap();
                assert!(r.isomorphic, "{ring}: relabeling seed {seed}");
                assert_eq!(
                    verify_bijection(g, &h, &r.witness.unwrap()).unwrap(),
                    BijectionCheck::Preserves
                );
            }

            // graph6 round-trip under the same vertex order
            let decoded = decode_graph6(&export_graph6(g)).unwrap();
            assert_eq!(decoded.order(), g.order(), "{ring}");
            for u in 0..g.order() {
                for v in u + 1..g.order() {
                    assert_eq!(decoded.has_edge(u, v), g.has_edge(u, v), "{ring}");
                }
            }
            graphs_checked += 1;
        }
    }
    assert_eq!(graphs_checked, 4 * catalog.specs.len());
    println!("criterion 11 (engine soundness + graph6 on {graphs_checked} graphs): PASS");
}

#[test]
fn criterion_12_unit_class_preservation() {
    let catalog = RingCatalog::default_catalog();
    let report = check_uprime_lemma(&catalog, DEFAULT_ISO_BUDGET, 2000).unwrap();
    assert!(report.passed());
    assert_eq!(report.inconclusive_count(), 0);
    assert!(
        report
            .instances
            .iter()
            .any(|i| i.witness.as_ref().is_some_and(|w| w["isomorphisms_checked"]
                .as_u64()
                .is_some_and(|n| n > 1))),
        "at least one pair enumerated multiple isomorphisms"
    );

    // |U'| equality on every Cl2-isomorphic catalog pair, hypothesis-free.
    let ctxs: Vec<CleanContext> = catalog
        .rings()
        .unwrap()
        .iter()
        .map(|ring| CleanContext::new(ring, &catalog.caps).unwrap())
        .collect();
    let graphs: Vec<Graph> = ctxs.iter().map(|c| c.cl2().unwrap()).collect();
    let mut isomorphic_pairs = 0usize;
    for i in 0..ctxs.len() {
        for j in i + 1..ctxs.len() {
            if fingerprint(&graphs[i]) != fingerprint(&graphs[j]) {
                continue;
            }
            if !is_isomorphic(&graphs[i], &graphs[j], DEFAULT_ISO_BUDGET)
                .unwrap()
                .isomorphic
            {
                continue;
            }
            isomorphic_pairs += 1;
            assert_eq!(
                ctxs[i].unit_table().involution_count(),
                ctxs[j].unit_table().involution_count(),
                "{} vs {}",
                ctxs[i].ring(),
                ctxs[j].ring()
            );
        }
    }
    assert!(isomorphic_pairs >= 8, "the catalog carries isomorphic pairs");
    println!("criterion 12 (unit class preservation, {isomorphic_pairs} isomorphic pairs): PASS");
}

#[test]
fn full_suite_runs_without_inconclusives() {
    let reports = run_all(&SuiteOptions::default()).unwrap();
    assert_eq!(reports.len(), 8);
    for report in &reports {
        assert!(report.passed(), "{} failed", report.claim_id);
        assert_eq!(
            report.inconclusive_count(),
            0,
            "{} has inconclusive instances",
            report.claim_id
        );
    }
    println!("full verification suite: PASS");
}
