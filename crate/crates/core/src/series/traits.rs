use std::fmt::Debug;

use crate::algebra::{RingElem, Scalar};

/// Commutative `k`-algebra operations shared by every coefficient type the
/// generic algorithms (polynomial evaluation, determinants, polynomial
/// division) run over.
///
/// Elements carry their own context (ring, precision, variable list), so the
/// constructors are relative to an existing element.
pub trait CommRing: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_scalar_like(&self, c: &Scalar) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    /// `self += a·b`.
    fn mul_acc(&mut self, a: &Self, b: &Self) {
        *self = CommRing::add(self, &CommRing::mul(a, b));
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = CommRing::mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = CommRing::mul(&base, &base);
            }
        }
        acc
    }
}

impl CommRing for Scalar {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn from_scalar_like(&self, c: &Scalar) -> Self {
        c.clone()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Scalar::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Scalar::sub(self, other)
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        Scalar::mul(self, other)
    }
    fn scale(&self, c: &Scalar) -> Self {
        Scalar::mul(self, c)
    }
    fn is_one(&self) -> bool {
        Scalar::is_one(self)
    }
}

impl CommRing for RingElem {
    fn zero_like(&self) -> Self {
        RingElem::zero(self.ring())
    }
    fn one_like(&self) -> Self {
        RingElem::one(self.ring())
    }
    fn from_scalar_like(&self, c: &Scalar) -> Self {
        RingElem::from_scalar(self.ring(), c.clone())
    }
    fn is_zero(&self) -> bool {
        RingElem::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RingElem::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RingElem::sub(self, other)
    }
    fn neg(&self) -> Self {
        RingElem::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        RingElem::mul(self, other)
    }
    fn scale(&self, c: &Scalar) -> Self {
        RingElem::scale(self, c)
    }
    fn mul_acc(&mut self, a: &Self, b: &Self) {
        RingElem::mul_acc(self, a, b)
    }
}
