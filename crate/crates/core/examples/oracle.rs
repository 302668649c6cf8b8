//! Exhaustive check over a finite test ring: every deformation of the arc
//! modulo t^N against every point of the model, through the forward map
//! and its inverse.
//!
//! `cargo run --release --example oracle`

use std::error::Error;
use std::sync::Arc;

use formal_arcs::algebra::{Field, TestRing};
use formal_arcs::fixtures;
use formal_arcs::oracle::run_oracle;

fn main() -> Result<(), Box<dyn Error>> {
    let f2 = Field::prime(2)?;
    let a: Arc<TestRing> = Arc::new("F2[e]/e^2".parse()?);
    for fx in [fixtures::example_square(f2), fixtures::complete_intersection(f2)] {
        println!("== {}", fx.name);
        let (report, _) = run_oracle(&fx.pres, &fx.arc, &a, 4, 1)?;
        println!("{report}\n");
    }
    Ok(())
}
