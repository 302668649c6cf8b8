//! Base fields and Artinian local test rings.

mod field;
mod linalg;
mod ring;

pub use field::{Field, Rat, Scalar};
pub use linalg::RowReduced;
pub use ring::{
    enumerate_maximal_ideal, quotient_ring, ring_invert, ring_mul, Exponents, MaximalIdealIter,
    RingElem, TestRing,
};
