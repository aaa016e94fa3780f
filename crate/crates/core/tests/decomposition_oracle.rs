mod support;

use bott_null_core::bundles::{parse, weights};
use bott_null_core::repthy::{decompose, invariant_dim, mult_in, weyl_dim};
use bott_null_core::{build_root_system, Family, RootSystem, Weight};
use num_bigint::BigUint;
use support::stripping::{character, strip, Multiset};

fn rs(family: Family, rank: usize) -> RootSystem {
    build_root_system(family, rank).unwrap()
}

fn oracle(rs: &RootSystem, text: &str) -> Multiset {
    let chi = weights(rs, &parse(text).unwrap()).unwrap();
    strip(rs, chi.as_map())
}

fn library(rs: &RootSystem, text: &str) -> Multiset {
    decompose(rs, &parse(text).unwrap()).unwrap().iter().map(|(w, m)| (w.clone(), m)).collect()
}

#[test]
fn freudenthal_dimensions_match_weyl() {
    for sys in [rs(Family::A, 2), rs(Family::A, 3), rs(Family::B, 2)] {
        for a in 0..3 {
            for b in 0..3 {
                let mut c = vec![a, b];
                c.resize(sys.rank, 1);
                let lambda = Weight(c);
                let total: u64 = character(&sys, &lambda).values().sum();
                assert_eq!(BigUint::from(total), weyl_dim(&sys, &lambda).unwrap(), "{} {lambda}", sys.label());
            }
        }
    }
}

#[test]
fn a2_adjoint_square() {
    let a2 = rs(Family::A, 2);
    let expected: Multiset = [
        (Weight(vec![0, 0]), 1),
        (Weight(vec![1, 1]), 2),
        (Weight(vec![3, 0]), 1),
        (Weight(vec![0, 3]), 1),
        (Weight(vec![2, 2]), 1),
    ]
    .into_iter()
    .collect();
    assert_eq!(oracle(&a2, "g*g"), expected);
    assert_eq!(library(&a2, "g*g"), expected);
}

#[test]
fn racah_speiser_agrees_with_stripping() {
    let words = [
        "g",
        "g*g",
        "g^3",
        "wedge^2(g)",
        "sym^2(g)",
        "g*wedge^2(g)",
        "sym^2(g)*g",
        "wedge^3(g)",
        "n+h+q",
        "(n+h+q)*g*g",
    ];
    for sys in [rs(Family::A, 2), rs(Family::A, 3), rs(Family::B, 2)] {
        for w in words {
            assert_eq!(library(&sys, w), oracle(&sys, w), "{} {w}", sys.label());
        }
    }
}

#[test]
fn invariant_counts_of_adjoint_powers() {
    for rank in 2..=4 {
        let sys = rs(Family::A, rank);
        let zero = Weight::zero(rank);
        for (text, expected) in [("g*g", 1), ("g^3", 2)] {
            let by_sum = invariant_dim(&sys, &parse(text).unwrap()).unwrap();
            let by_strip = oracle(&sys, text).get(&zero).copied().unwrap_or(0);
            assert_eq!(by_sum, expected, "A{rank} {text}");
            assert_eq!(by_strip, expected, "A{rank} {text} (oracle)");
        }
    }
}

#[test]
fn alternating_sum_matches_oracle_componentwise() {
    let a3 = rs(Family::A, 3);
    let expr = parse("g*g").unwrap();
    for (w, m) in oracle(&a3, "g*g") {
        assert_eq!(mult_in(&a3, &expr, &w).unwrap(), m, "{w}");
    }
}
