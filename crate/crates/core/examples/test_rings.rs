//! Arithmetic in Artinian local test rings: units, nilpotents, quotients.
//!
//! `cargo run --example test_rings`

use std::error::Error;
use std::sync::Arc;

use formal_arcs::algebra::{quotient_ring, ring_invert, TestRing};

fn main() -> Result<(), Box<dyn Error>> {
    let a: Arc<TestRing> = Arc::new("Q[e]/e^3".parse()?);
    println!("A = {a}: dimension {} over {}, m^{} = 0", a.dim(), a.field(), a.nilpotency());

    let u = a.parse_element("2 + e - 3*e^2")?;
    let inv = ring_invert(&u)?;
    println!("({u})^-1 = {inv}; product = {}", u.mul(&inv));

    let e = a.parse_element("e")?;
    println!("e^2 = {}, e^3 = {}, e is a unit: {}", e.pow(2), e.pow(3), e.is_unit());

    let (a2, project) = quotient_ring(&a, 2)?;
    println!("image of {u} in {a2}: {}", project(&u));

    let b: Arc<TestRing> = Arc::new("F3[e1,e2]/(e1,e2)^2".parse()?);
    let x = b.parse_element("1 + e1 + 2*e2")?;
    println!("in {b}: ({x})^3 = {}", x.pow(3));
    Ok(())
}
