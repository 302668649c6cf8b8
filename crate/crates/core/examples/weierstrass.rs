//! Weierstrass preparation and division of truncated series over a test
//! ring, with the precision the answer is known to.
//!
//! `cargo run --example weierstrass`

use std::error::Error;
use std::sync::Arc;

use formal_arcs::algebra::TestRing;
use formal_arcs::arcspace::ring_series;
use formal_arcs::series::TruncatedSeries;
use formal_arcs::weierstrass::{weierstrass_divide, weierstrass_prepare};

fn main() -> Result<(), Box<dyn Error>> {
    let a: Arc<TestRing> = Arc::new("Q[e]/e^2".parse()?);

    // f = e + e·t + t^2 + 5t^3 + …, whose residue t^2 + 5t^3 has order 2
    let f = ring_series(&a, &["e", "e", "1", "5", "-1", "2", "e", "3"], 8)?;
    let w = weierstrass_prepare(&f)?;
    println!("f = {f}");
    println!("q = {}  (distinguished of degree {})", w.q, w.d);
    println!("u = {}", w.u);
    let back = w.u.mul_poly(&w.q);
    println!("q·u = f mod t^{}: {}", back.precision(), back.eq_mod(&f, back.precision()));

    // divide another series by f: g = f·h + r with deg r < 2
    let g = ring_series(&a, &["1", "e", "0", "1", "0", "0", "1", "e"], 8)?;
    let (h, r) = weierstrass_divide(&g, &f)?;
    println!("g = f·h + r with h = {h}, r = {r}");
    let rebuilt = f.mul(&h).add(&TruncatedSeries::from_poly(&r, h.precision()));
    println!("check: {}", rebuilt.eq_mod(&g, h.precision()));
    Ok(())
}
