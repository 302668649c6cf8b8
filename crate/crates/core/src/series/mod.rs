//! Polynomials and truncated power series in `t`, multivariate polynomials
//! over `k`, and small matrices with determinant and adjugate.

mod matrix;
mod multipoly;
mod poly;
mod traits;
mod truncated;

pub use matrix::PolyMatrix;
pub use multipoly::{Monomial, MultiPoly};
pub(crate) use multipoly::eval_in_ring;
pub use poly::{ModPoly, Poly};
pub use traits::CommRing;
pub use truncated::{TruncatedSeries, EXACT};

use crate::algebra::RingElem;

/// A polynomial in `t` over a test ring.
pub type APoly = Poly<RingElem>;
