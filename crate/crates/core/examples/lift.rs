//! Sample a point of the model over a test ring, lift it to a deformation
//! of the arc level by level, and map it back.
//!
//! `cargo run --example lift`

use std::error::Error;
use std::sync::Arc;

use formal_arcs::algebra::{Field, TestRing};
use formal_arcs::equivalence::{forward_map, inverse_map_traced, LiftOptions, ModelSampler, PrecisionPlan};
use formal_arcs::fixtures;
use formal_arcs::model::{build_model, check_model_point};

fn main() -> Result<(), Box<dyn Error>> {
    let fx = fixtures::cusp(Field::Rationals);
    let a: Arc<TestRing> = Arc::new("Q[e]/e^3".parse()?);
    let r = 1;
    let model = build_model(&fx.pres, &fx.arc, r)?;
    let plan = PrecisionPlan::new(a.nilpotency(), model.d, r);
    println!("{} over {a}: d = {}, {plan:?}", fx.name, model.d);

    let sampler = ModelSampler::new(&model, &a)?;
    let (point, _) = sampler.sample_or_base(7, 0, plan.working - (r + 1) * model.d)?;
    println!("model point ({}):\n{}", check_model_point(&model, &point)?, point.render(3));

    let (deformation, trace) = inverse_map_traced(&fx.pres, &fx.arc, &point, r, &LiftOptions::with_precision(plan.working))?;
    for level in &trace.levels {
        println!("level {}: residual m-valuation {:?}", level.level, level.residual_valuation);
    }
    println!("deformation mod t^{}:\n{}", plan.reporting, deformation.render(plan.reporting));
    println!("solves the equations: {}", deformation.is_solution(&fx.pres)?);

    let back = forward_map(&fx.pres, &deformation, r)?;
    let xi_prec = plan.reporting - (r + 1) * model.d;
    println!("forward map returns the same point: {}", back.eq_at(&point, xi_prec));
    Ok(())
}
