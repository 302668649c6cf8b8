//! Exhaustive comparison of deformations and model points over finite test
//! rings.

mod common;

use common::*;
use formal_arcs::algebra::Field;
use formal_arcs::error::Error;
use formal_arcs::fixtures::{self, Fixture};
use formal_arcs::model::build_model;
use formal_arcs::oracle::{enumerate_model_values, run_oracle, run_oracle_with, OracleOptions, ExampleFixture};

fn f(p: u64) -> Field {
    Field::prime(p).unwrap()
}

/// Small cases that stay within the search guard.
fn cases() -> Vec<(Fixture, &'static str, usize)> {
    vec![
        (fixtures::example_square(f(2)), "F2[e]/e^2", 4),
        (fixtures::example_square(f(3)), "F3[e]/e^2", 3),
        (fixtures::complete_intersection(f(2)), "F2[e]/e^2", 4),
        (fixtures::graph(f(2)), "F2[e]/e^2", 4),
        (fixtures::graph(f(2)), "F2[e]/e^3", 3),
    ]
}

#[test]
fn enumerated_sets_agree() {
    for (fx, desc, n) in cases() {
        let (rep, sets) = run_oracle(&fx.pres, &fx.arc, &ring(desc), n, 1).unwrap();
        assert!(rep.passed(), "{} over {desc}:\n{rep}", fx.name);
        assert!(rep.deformations > 0);
        assert_eq!(rep.classes, rep.model_points, "{}", fx.name);
        assert_eq!(sets.deformations.len(), rep.deformations);
        if let Some((count, equal)) = rep.closed_form {
            assert!(equal);
            assert_eq!(count, rep.deformations);
        }
    }
}

#[test]
fn example_over_f2_has_the_expected_count() {
    let fx = fixtures::example_square(f(2));
    let (rep, sets) = run_oracle(&fx.pres, &fx.arc, &ring("F2[e]/e^2"), 4, 1).unwrap();
    assert_eq!((rep.deformations, rep.model_points), (256, 256));
    assert_eq!(rep.closed_form, Some((256, true)));
    let dump = sets.render(4, rep.xi_precision);
    assert!(dump.starts_with("# enumerated deformations (256)\n"));
    assert!(dump.contains("# closed-form deformations (256)\n"));
    assert!(dump.contains("# model points (256)\n"));
}

#[test]
fn counts_do_not_depend_on_r() {
    for (fx, desc, n) in [
        (fixtures::example_square(f(2)), "F2[e]/e^2", 4),
        (fixtures::example_square(f(3)), "F3[e]/e^2", 3),
    ] {
        let a = ring(desc);
        let (one, _) = run_oracle(&fx.pres, &fx.arc, &a, n, 1).unwrap();
        let (two, _) = run_oracle(&fx.pres, &fx.arc, &a, n, 2).unwrap();
        assert!(one.passed() && two.passed(), "{one}\n{two}");
        assert_eq!(one.model_points, two.model_points, "{}", fx.name);
        assert_eq!(one.deformations, two.deformations);
    }
}

/// Model coordinates alone (ξ aside) grow by a factor `|m|^{ld}` per unit of
/// `r`: the extra `ȳ` coefficients are free.
#[test]
fn model_value_counts_scale_with_r() {
    let fx = fixtures::example_square(f(2));
    let a = ring("F2[e]/e^2");
    let counts: Vec<usize> = (1..=3)
        .map(|r| enumerate_model_values(&build_model(&fx.pres, &fx.arc, r).unwrap(), &a).unwrap().len())
        .collect();
    assert_eq!(counts, [16, 64, 256]);
}

#[test]
fn extra_lift_precision_changes_nothing() {
    for (fx, desc, n) in cases() {
        let a = ring(desc);
        let (base, base_sets) = run_oracle(&fx.pres, &fx.arc, &a, n, 1).unwrap();
        let (wide, wide_sets) =
            run_oracle_with(&fx.pres, &fx.arc, &a, n, 1, &OracleOptions { extra_precision: 5 }).unwrap();
        assert_eq!(base.passed(), wide.passed(), "{}", fx.name);
        assert_eq!(base.deformations, wide.deformations);
        assert_eq!(base.model_points, wide.model_points);
        assert_eq!(base_sets, wide_sets);
        assert!(wide.lift_precision >= base.lift_precision);
    }
}

#[test]
fn closed_form_is_only_used_for_the_example_shape() {
    assert!(ExampleFixture::detect(&fixtures::cusp(f(2)).pres, &fixtures::cusp(f(2)).arc).is_none());
    let fx = fixtures::example_cubic(f(2));
    assert!(ExampleFixture::detect(&fx.pres, &fx.arc).is_some());
}

#[test]
fn refusals() {
    let fx = fixtures::example_square(f(2));
    let err = run_oracle(&fx.pres, &fx.arc, &ring("F2[e]/e^2"), 12, 1).unwrap_err();
    assert!(matches!(err, Error::Refused { .. }), "{err}");
    // q is not determined by det mod t^N until N > a·d
    let err = run_oracle(&fx.pres, &fx.arc, &ring("F2[e]/e^2"), 2, 1).unwrap_err();
    assert!(matches!(err, Error::PrecisionExhausted { .. }), "{err}");
    let q = fixtures::example_square(Field::Rationals);
    assert!(run_oracle(&q.pres, &q.arc, &ring("Q[e]/e^2"), 4, 1).is_err());
}

/// `y mod t^N` can depend on `x` beyond `t^N`; the model sees `y` only modulo
/// `t^N / q^r`. For the Example `y = 0` identically, so nothing is lost.
#[test]
fn model_points_match_jet_classes() {
    let ci = fixtures::complete_intersection(f(2));
    let (rep, _) = run_oracle(&ci.pres, &ci.arc, &ring("F2[e]/e^2"), 4, 1).unwrap();
    assert!(rep.passed(), "{rep}");
    assert_eq!((rep.deformations, rep.classes, rep.model_points), (256, 128, 128));
    let ex = fixtures::example_square(f(2));
    let (rep, _) = run_oracle(&ex.pres, &ex.arc, &ring("F2[e]/e^2"), 4, 1).unwrap();
    assert_eq!(rep.classes, rep.deformations);
}
