//! Finite-dimensional formal models of arc spaces at non-degenerate arcs.
//!
//! Given a complete-intersection presentation `p₁ = … = p_l = 0` in variables
//! `x₁..x_n, y₁..y_l` and a formal arc `γ₀ = (x⁰(t), y⁰(t))` on it along which
//! `det ∂p/∂y` does not vanish identically, this crate
//!
//! * computes the defect `d` (the `t`-order of `det ∂p/∂y` along `γ₀`);
//! * emits a finite system of polynomial equations over `k` whose formal
//!   neighbourhood at a marked point, times a product of formal disks, is the
//!   formal neighbourhood of `γ₀` in the arc space ([`model`]);
//! * implements both directions of that identification over Artinian test
//!   rings — the forward map via Weierstrass preparation and the inverse via
//!   Hensel lifting along the powers of the maximal ideal ([`equivalence`]);
//! * checks everything against closed forms and brute-force enumeration over
//!   finite test rings ([`oracle`]).
//!
//! All arithmetic is exact: rationals or prime fields `F_p`.

pub mod algebra;
pub mod arcspace;
pub mod cli;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod model;
pub mod oracle;
pub mod parse;
pub mod series;
pub mod weierstrass;

pub use error::{Condition, Error, Result};
