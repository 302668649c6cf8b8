//! Defect and finite-dimensional model of an arc on a hypersurface, read
//! from the input-file format and exported as text, JSON and Singular.
//!
//! `cargo run --example model`

use std::error::Error;

use formal_arcs::arcspace::{compute_defect, validate, ArcProblem};
use formal_arcs::model::build_model;

const INPUT: &str = "\
# y·x2 + x1^2 = 0 with the arc (0, t, 0)
field: Q
nx: 2 ; ny: 1
p1: x1^2 + x2*y1
arc.x1: []
arc.x2: [0, 1]
arc.y1: []
precision: 32
";

fn main() -> Result<(), Box<dyn Error>> {
    let prob: ArcProblem = INPUT.parse()?;
    let report = validate(&prob.pres, &prob.arc)?;
    println!("arc is valid to t^{}; det ∂p/∂y has order {}", report.precision, report.det_order);
    println!("defect d = {}\n", compute_defect(&prob.pres, &prob.arc)?);

    let model = build_model(&prob.pres, &prob.arc, 1)?;
    println!("{model}\n");
    println!("--- JSON ---\n{}", model.to_json());
    println!("--- Singular ---\n{}", model.to_singular());
    Ok(())
}
