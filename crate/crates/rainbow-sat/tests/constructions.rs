//! End-to-end checks of the generators at documented parameter points.

mod common;

use rainbow_sat::constructions::{
    construct_acyclic_edge, construct_clique_random, construct_disconnected, construct_hkl,
    construct_k3_steiner, construct_rotated_even, construct_star_forest, ConstructError,
};
use rainbow_sat::embed::creates_rainbow;
use rainbow_sat::families::parse_pattern;
use rainbow_sat::saturation::verify_saturated;

#[test]
fn acyclic_edge_p4_and_c4() {
    for (spec, bound) in [("P4", 120usize), ("C4", 160)] {
        let h = parse_pattern(spec).unwrap();
        let out = construct_acyclic_edge(20, &h).unwrap();
        assert!(
            verify_saturated(&out.graph, &h).unwrap().is_saturated(),
            "{spec}"
        );
        assert!(out.graph.edge_count() <= bound, "{spec}");
        assert_eq!(out.declared_bound, bound as f64);
    }
}

#[test]
fn acyclic_edge_protected_set_presaturated() {
    // the theorem guarantees L-internal pairs are saturated pre-closure;
    // post-closure saturation of those pairs must still hold with the
    // recorded protected set
    let h = parse_pattern("P4").unwrap();
    let out = construct_acyclic_edge(20, &h).unwrap();
    assert_eq!(out.protected, (6..20).collect::<Vec<_>>());
    for (i, &u) in out.protected.iter().enumerate() {
        for &v in &out.protected[i + 1..] {
            if out.graph.has_edge(u, v) {
                continue;
            }
            for c in 1..=out.graph.t() {
                assert!(creates_rainbow(&out.graph, u, v, c, &h).unwrap());
            }
        }
    }
}

#[test]
fn hkl_documented_points() {
    let h42 = parse_pattern("H_4_2").unwrap();
    let out = construct_hkl(30, 4, 2, 12).unwrap();
    assert!(verify_saturated(&out.graph, &h42).unwrap().is_saturated());
    assert!((out.graph.edge_count() as f64) <= out.declared_bound);

    let h53 = parse_pattern("H_5_3").unwrap();
    let out = construct_hkl(30, 5, 3, 20).unwrap();
    assert!(verify_saturated(&out.graph, &h53).unwrap().is_saturated());

    assert!(matches!(
        construct_hkl(30, 4, 3, 12),
        Err(ConstructError::BadParameters(_))
    ));
}

#[test]
fn rotated_even_leftover_clique() {
    // n = 20 leaves 4 leftover vertices beyond one 16-vertex gamma copy
    let out = construct_rotated_even(20, 4).unwrap();
    let h = parse_pattern("rotated_K4").unwrap();
    assert_eq!(out.graph.edge_count(), 48 + 6);
    assert!(verify_saturated(&out.graph, &h).unwrap().is_saturated());
}

#[test]
fn clique_random_restricted_palette() {
    let k4 = parse_pattern("K4").unwrap();
    let out = construct_clique_random(30, 4, 12, 0).unwrap();
    assert!(out.retries <= 64);
    assert!(verify_saturated(&out.graph, &k4).unwrap().is_saturated());
}

#[test]
fn k3_steiner_t7() {
    let k3 = parse_pattern("K3").unwrap();
    let out = construct_k3_steiner(100, 7).unwrap();
    assert!(verify_saturated(&out.graph, &k3).unwrap().is_saturated());
    assert!((out.graph.edge_count() as f64) <= out.declared_bound);
    assert!(matches!(
        construct_k3_steiner(100, 5),
        Err(ConstructError::Design(_))
    ));
}

#[test]
fn star_forest_documented_points() {
    let h = parse_pattern("S2+S2").unwrap();
    let out = construct_star_forest(25, &h).unwrap();
    assert!(verify_saturated(&out.graph, &h).unwrap().is_saturated());
    assert!(out.graph.edge_count() <= 75);

    let h = parse_pattern("S1+S3").unwrap();
    let out = construct_star_forest(25, &h).unwrap();
    assert!(verify_saturated(&out.graph, &h).unwrap().is_saturated());

    // three stars exercise the recursive composition
    let h = parse_pattern("S1+S2+S2").unwrap();
    let out = construct_star_forest(40, &h).unwrap();
    assert!(verify_saturated(&out.graph, &h).unwrap().is_saturated());
}

#[test]
fn disconnected_k3_plus_k2() {
    let h = parse_pattern("K3+K2").unwrap();
    let out = construct_disconnected(60, &h, 4, 0).unwrap();
    assert!(verify_saturated(&out.graph, &h).unwrap().is_saturated());
    assert!((out.graph.edge_count() as f64) <= out.declared_bound);
}

#[test]
fn disconnected_routes_star_forests() {
    let h = parse_pattern("S2+S2").unwrap();
    let out = construct_disconnected(25, &h, 4, 0).unwrap();
    assert_eq!(out.name, "star-forest");
}

#[test]
fn fast_creates_rainbow_matches_naive_on_construction() {
    // spot-check the optimized embedder against the naive oracle on a real
    // construction output
    let h = parse_pattern("P4").unwrap();
    let out = construct_acyclic_edge(12, &h).unwrap();
    let g = &out.graph;
    for (u, v) in g.non_edges() {
        for c in 1..=g.t() {
            assert_eq!(
                creates_rainbow(g, u, v, c, &h).unwrap(),
                common::naive_creates_rainbow(g, u, v, c, &h),
                "({u},{v}) colour {c}"
            );
        }
    }
}
