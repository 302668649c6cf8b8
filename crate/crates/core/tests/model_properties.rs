//! The generated model: base point, shape, hand-derived equations,
//! serialisation, and the relations between the conditions.

mod common;

use common::*;
use formal_arcs::algebra::{Field, RingElem};
use formal_arcs::arcspace::{validate, ArcProblem};
use formal_arcs::equivalence::ModelSampler;
use formal_arcs::error::Condition;
use formal_arcs::fixtures;
use formal_arcs::model::{build_model, check_model_point, condition_residues, ModelCheck, ModelOutput, ModelPoint};
use formal_arcs::parse::parse_polynomial;
use formal_arcs::series::{MultiPoly, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn every_fixture() -> Vec<fixtures::Fixture> {
    let mut all = fixtures::all(Field::Rationals);
    all.extend(fixtures::all(Field::prime(5).unwrap()));
    all.push(fixtures::example_square(Field::prime(2).unwrap()));
    all
}

#[test]
fn equations_vanish_at_the_base_point() {
    for fx in every_fixture() {
        for r in [1, 2] {
            let mo = build_model(&fx.pres, &fx.arc, r).unwrap();
            for (e, label) in mo.equations.iter().zip(&mo.labels) {
                assert!(e.eval_scalars(&mo.base_point).unwrap().is_zero(), "{}: [{label}] {e}", fx.name);
            }
        }
    }
}

#[test]
fn equation_and_variable_counts() {
    for fx in every_fixture() {
        let d = validate(&fx.pres, &fx.arc).unwrap().det_order;
        let (n, l) = (fx.pres.n(), fx.pres.l());
        for r in [1, 2, 3] {
            let mo = build_model(&fx.pres, &fx.arc, r).unwrap();
            assert_eq!(mo.num_variables(), d + n * (r + 1) * d + l * r * d, "{}", fx.name);
            let expected = if d == 0 { 0 } else { d + l * r * d + l * (r + 1) * d };
            assert_eq!(mo.equations.len(), expected, "{}", fx.name);
            assert_eq!(mo.trivial, d == 0);
        }
    }
}

/// For `y·x2 + x1² = 0` at `(0, t, 0)` with `r = 1`: `q = t + q0`,
/// `x̄_i = x_i,0 + x_i,1·t`, `ȳ = y1_0`. Substituting `t = −q0` gives the
/// determinant and residual conditions; reducing `t² ≡ −2q0·t − q0²` modulo
/// `q²` gives the two adjugate conditions.
#[test]
fn example_model_matches_hand_derivation() {
    let fx = fixtures::example_square(Field::Rationals);
    let mo = build_model(&fx.pres, &fx.arc, 1).unwrap();
    assert_eq!((mo.d, mo.num_variables(), mo.equations.len()), (1, 6, 4));
    let expected = [
        "x2_0 - q0*x2_1",
        "y1_0*(x2_0 - q0*x2_1) + (x1_0 - q0*x1_1)^2",
        "y1_0*x2_0 + x1_0^2 - q0^2*x1_1^2",
        "y1_0*x2_1 + 2*x1_0*x1_1 - 2*q0*x1_1^2",
    ];
    let mut want: Vec<MultiPoly> = expected.iter().map(|s| parse_polynomial(s, Field::Rationals, &mo.vars).unwrap()).collect();
    let mut got = mo.equations.clone();
    want.sort_by_key(|p| p.to_string());
    got.sort_by_key(|p| p.to_string());
    assert_eq!(got, want);
    let base: Vec<i64> = vec![0, 0, 0, 0, 1, 0];
    let base: Vec<_> = base.iter().map(|&v| Field::Rationals.from_i64(v)).collect();
    assert_eq!(mo.base_point, base);
}

#[test]
fn serialisations_round_trip() {
    for fx in every_fixture() {
        let text = fx.problem().to_string();
        let parsed: ArcProblem = text.parse().unwrap();
        assert_eq!(parsed, fx.problem(), "{}", fx.name);
        assert_eq!(parsed.to_string(), text);
        for r in [1, 2] {
            let mo = build_model(&fx.pres, &fx.arc, r).unwrap();
            let json = mo.to_json();
            let back = ModelOutput::from_json(&json).unwrap();
            assert_eq!(back, mo, "{}", fx.name);
            assert_eq!(back.to_json(), json);
        }
    }
}

#[test]
fn validation_is_monotone_in_precision() {
    for fx in every_fixture() {
        let top = fx.arc.precision();
        for n in (1..=top).rev().step_by(7) {
            let arc = fx.arc.truncated(n);
            if validate(&fx.pres, &fx.arc).is_ok() {
                match validate(&fx.pres, &arc) {
                    Ok(_) | Err(formal_arcs::Error::ArcInDegeneracyLocus { .. }) => {}
                    Err(e) => panic!("{} invalid at precision {n}: {e}", fx.name),
                }
            }
        }
    }
}

/// Sampled model points, together with random corruptions of them.
fn candidate_points(fx: &fixtures::Fixture, ring_desc: &str, count: u64) -> (ModelOutput, Vec<ModelPoint>) {
    let r = 1;
    let ring = ring(ring_desc);
    let mo = build_model(&fx.pres, &fx.arc, r).unwrap();
    let sampler = ModelSampler::new(&mo, &ring).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut out = Vec::new();
    if mo.trivial {
        return (mo, out);
    }
    for trial in 0..count {
        let (pt, _) = sampler.sample_or_base(3, trial, 4).unwrap();
        out.push(pt.clone());
        let mut values = pt.values(&mo);
        let k = rng.gen_range(0..values.len());
        values[k] = values[k].add(&random_m_elem(&ring, &mut rng));
        out.push(ModelPoint::from_values(&mo, &ring, &values, pt.xi.clone()));
    }
    (mo, out)
}

fn shifted_ybar(pt: &ModelPoint, r: usize, rng: &mut ChaCha8Rng) -> Vec<Poly<RingElem>> {
    let qr = pt.q.pow(r as u32);
    pt.ybar.iter().map(|y| y.add(&qr.mul(&random_poly(&pt.ring, 3, rng)))).collect()
}

#[test]
fn conditions_do_not_depend_on_the_representative_of_ybar() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for fx in fixtures::all(Field::Rationals) {
        for ring_desc in ["Q[e]/e^2", "Q[e]/e^3"] {
            let (mo, pts) = candidate_points(&fx, ring_desc, 10);
            if mo.trivial {
                continue;
            }
            for pt in &pts {
                let verdict = check_model_point(&mo, pt).unwrap().passed();
                let res = condition_residues(&fx.pres, &pt.q, &pt.xbar, &shifted_ybar(pt, 1, &mut rng), 1).unwrap();
                assert_eq!(res.first_violation().is_none(), verdict, "{} over {ring_desc}", fx.name);
            }
        }
    }
}

/// Given the determinant condition, the residual and adjugate conditions on
/// `ȳ` together hold exactly when `adj(C)·p(x, y) ≡ 0 mod q^{r+1}` for a
/// random lift `y = ȳ + q^r·g`.
#[test]
fn residual_and_adjugate_conditions_match_the_lifted_adjugate_test() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    for fx in fixtures::all(Field::Rationals) {
        for ring_desc in ["Q[e]/e^2", "Q[e]/e^3"] {
            let (mo, pts) = candidate_points(&fx, ring_desc, 10);
            if mo.trivial {
                continue;
            }
            for pt in &pts {
                let on_ybar = condition_residues(&fx.pres, &pt.q, &pt.xbar, &pt.ybar, 1).unwrap();
                if on_ybar.first_violation() == Some(Condition::Determinant) {
                    continue;
                }
                let lifted = condition_residues(&fx.pres, &pt.q, &pt.xbar, &shifted_ybar(pt, 1, &mut rng), 1).unwrap();
                let lifted_ok = lifted.adj_p_mod_qr1.iter().all(Poly::is_zero);
                assert_eq!(on_ybar.first_violation().is_none(), lifted_ok, "{} over {ring_desc}", fx.name);
                checked += 1;
            }
        }
    }
    assert!(checked >= 40);
}

#[test]
fn corrupted_points_are_rejected_by_some_equation() {
    let fx = fixtures::cusp(Field::Rationals);
    let (mo, pts) = candidate_points(&fx, "Q[e]/e^3", 10);
    let fails = pts.iter().filter(|p| !check_model_point(&mo, p).unwrap().passed()).count();
    assert!(fails > 0);
    for p in pts.iter().step_by(2) {
        assert_eq!(check_model_point(&mo, p).unwrap(), ModelCheck::Pass);
    }
}
