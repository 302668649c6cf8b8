//! The forward map and the Hensel-lifting inverse on sampled data.

mod common;

use common::*;
use formal_arcs::algebra::{Field, RingElem};
use formal_arcs::arcspace::{compute_defect, deformation_defect};
use formal_arcs::equivalence::{
    deform_with, forward_map, inverse_map_traced, random_deformation, roundtrip_check, LiftOptions, ModelSampler,
    PrecisionPlan, RoundtripOptions,
};
use formal_arcs::error::Error;
use formal_arcs::fixtures::{self, Fixture};
use formal_arcs::model::build_model;
use formal_arcs::series::{Poly, TruncatedSeries};
use formal_arcs::weierstrass::weierstrass_prepare;

fn suite() -> Vec<Fixture> {
    let mut all = fixtures::all(Field::Rationals);
    all.push(fixtures::cusp(Field::prime(5).unwrap()));
    all
}

#[test]
fn defect_is_constant_along_random_deformations() {
    for fx in suite() {
        let d = compute_defect(&fx.pres, &fx.arc).unwrap();
        let field = fx.pres.field();
        for a in [2, 3] {
            let ring = ring(&format!("{field}[e]/e^{a}"));
            for seed in 0..100 {
                let def = random_deformation(&fx.pres, &fx.arc, &ring, seed).unwrap();
                assert!(def.reduces_to(&fx.arc), "{} seed {seed}", fx.name);
                assert!(def.is_solution(&fx.pres).unwrap(), "{} seed {seed}", fx.name);
                assert_eq!(deformation_defect(&fx.pres, &def).unwrap(), d, "{} over {ring} seed {seed}", fx.name);
            }
        }
    }
}

/// Everything the lift promises, on sampled model points over rings of
/// nilpotency up to 4 (including two generators).
#[test]
fn lifts_solve_the_system_and_respect_the_level_structure() {
    let r = 1;
    for fx in suite() {
        let field = fx.pres.field();
        let descs = [
            format!("{field}[e]/e^2"),
            format!("{field}[e]/e^3"),
            format!("{field}[e]/e^4"),
            format!("{field}[e1,e2]/(e1,e2)^2"),
        ];
        let mo = build_model(&fx.pres, &fx.arc, r).unwrap();
        for desc in &descs {
            let ring = ring(desc);
            let plan = PrecisionPlan::new(ring.nilpotency(), mo.d, r);
            let sampler = ModelSampler::new(&mo, &ring).unwrap();
            let xi_prec = plan.working - (r + 1) * mo.d;
            for trial in 0..5 {
                let (pt, _) = sampler.sample_or_base(17, trial, xi_prec).unwrap();
                let opts = LiftOptions::with_precision(plan.working);
                let (def, trace) = inverse_map_traced(&fx.pres, &fx.arc, &pt, r, &opts).unwrap();
                let ctx = format!("{} over {desc}, trial {trial}", fx.name);
                assert!(def.is_solution(&fx.pres).unwrap(), "{ctx}");
                assert!(def.reduces_to(&fx.arc), "{ctx}");
                let qr = pt.q.pow(r as u32);
                for (y, yb) in def.y.iter().zip(&pt.ybar) {
                    let diff = y.sub(&TruncatedSeries::from_poly(yb, y.precision()));
                    let (_, rem) = diff.divmod_monic(&qr).unwrap();
                    assert!(rem.is_zero(), "{ctx}: y ≢ ȳ mod q^r");
                }
                let det = fx.pres.jacobian_det(&def.x, &def.y).unwrap();
                let unit = det.div_exact(&pt.q).unwrap();
                assert!(unit.coeff(0).is_unit(), "{ctx}: det/q is not a unit");
                assert_eq!(weierstrass_prepare(&det).unwrap().q, pt.q, "{ctx}");
                assert_eq!(trace.levels.len(), ring.nilpotency() - 1);
                for lv in &trace.levels {
                    for z in &lv.correction {
                        assert!(z.in_maximal_power(lv.level - 1), "{ctx}: level {}", lv.level);
                        let qz = qr.map(&RingElem::zero(z.ring()), |c: &RingElem| c.project(z.ring()));
                        let (_, rem) = z.divmod_monic(&qz).unwrap();
                        assert!(rem.is_zero(), "{ctx}: correction not divisible by q^r");
                    }
                }
                let back = forward_map(&fx.pres, &def, r).unwrap();
                let rep_xi = plan.reporting - (r + 1) * mo.d;
                assert!(back.eq_at(&pt, rep_xi), "{ctx}: forward ∘ inverse ≠ id");
            }
        }
    }
}

#[test]
fn example_perturbations() {
    let fx = fixtures::example_square(Field::Rationals);
    let a2 = ring("Q[e]/e^2");
    let e2 = |s: &str| TruncatedSeries::new(&a2, vec![a2.parse_element(s).unwrap()], 20);
    let zero2 = Poly::zero(&RingElem::zero(&a2));
    let def = deform_with(&fx.pres, &fx.arc, &a2, &[e2("e"), e2("e")], &[zero2], 1, 20).unwrap();
    assert!(def.y[0].is_zero());
    assert!(def.is_solution(&fx.pres).unwrap());

    let a3 = ring("Q[e]/e^3");
    let e3 = TruncatedSeries::new(&a3, vec![a3.parse_element("e").unwrap()], 20);
    let zero3 = Poly::zero(&RingElem::zero(&a3));
    let err = deform_with(&fx.pres, &fx.arc, &a3, &[e3, TruncatedSeries::zero(&a3, 20)], &[zero3], 1, 20).unwrap_err();
    assert!(matches!(err, Error::ObstructedLift { .. }), "{err}");
}

#[test]
fn roundtrip_is_deterministic_across_thread_counts() {
    let fx = fixtures::cusp(Field::Rationals);
    let a = ring("Q[e]/e^3");
    let plan = PrecisionPlan::new(3, 3, 1);
    let opts = RoundtripOptions { plan, skip_last_level: false };
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| roundtrip_check(&fx.pres, &fx.arc, &a, 1, 24, 99, &opts).unwrap())
    };
    let one = run(1);
    let four = run(4);
    assert!(one.passed(), "{one}");
    assert_eq!(one.to_string(), four.to_string());
}

#[test]
fn broken_lift_is_detected() {
    let fx = fixtures::example_square(Field::Rationals);
    let a = ring("Q[e]/e^3");
    let plan = PrecisionPlan::new(3, 1, 1);
    let good = roundtrip_check(&fx.pres, &fx.arc, &a, 1, 20, 1, &RoundtripOptions { plan, skip_last_level: false }).unwrap();
    assert!(good.passed());
    let bad = roundtrip_check(&fx.pres, &fx.arc, &a, 1, 20, 1, &RoundtripOptions { plan, skip_last_level: true }).unwrap();
    assert!(!bad.passed());
    assert!(bad.to_string().contains("COUNTEREXAMPLE"));
}
