//! Weierstrass preparation and division in `A[[t]]` for test rings `A`.
//!
//! A series `f` whose image in `k[[t]]` has order `d` factors uniquely as
//! `f = q·u` with `q` monic of degree `d`, `q ≡ t^d mod m`, and `u` a unit.
//! Since `m` is nilpotent the factorisation is found by successive
//! correction along `m ⊃ m² ⊃ … ⊃ m^a = 0`: starting from `q = t^d`,
//! `u = f div t^d`, each round removes the error `e = f − q·u ∈ m^j` by
//! solving the linearised equation `δq·ū + t^d·δu = e` (with `ū` the residue
//! of `u`) exactly, pushing the error into `m^{j+1}`.

use std::fmt;

use crate::algebra::RingElem;
use crate::error::{Error, Result};
use crate::series::{Poly, TruncatedSeries, EXACT};

/// `f = q·u` with `q` distinguished of degree `d` and `u` a unit.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassFactorization {
    pub q: Poly<RingElem>,
    pub u: TruncatedSeries,
    pub d: usize,
}

impl fmt::Display for WeierstrassFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d = {}", self.d)?;
        writeln!(f, "q = {}", self.q)?;
        write!(f, "u = {}", self.u)
    }
}

/// Weierstrass preparation of `f`.
///
/// Fails with `ResidueZero` when the image of `f` in `k[[t]]` vanishes to
/// the known precision, and with `PrecisionExhausted` unless `N > a·d`.
/// The unit is returned modulo `t^{N − a·d}`; for an exact `f` both factors
/// are exact polynomials.
pub fn weierstrass_prepare(f: &TruncatedSeries) -> Result<WeierstrassFactorization> {
    let ring = f.ring().clone();
    let n = f.precision();
    let d = f.residue_order().ok_or(Error::ResidueZero { precision: n })?;
    let zero = RingElem::zero(&ring);
    if d == 0 {
        return Ok(WeierstrassFactorization {
            q: Poly::one(&zero),
            u: f.clone(),
            d,
        });
    }
    let a = ring.nilpotency();
    if !f.is_exact() && n <= a * d {
        return Err(Error::precision(a * d + 1, n, "Weierstrass preparation"));
    }
    let mut q = Poly::t_pow(&zero, d);
    let mut u = f.shift_down(d);
    // residue of u, embedded in A[[t]]
    let ubar = TruncatedSeries::from_scalars(&ring, &u.residue(), u.precision());
    let ubar_inv = ubar.invert_to(d)?;
    for _ in 1..a {
        let e = f.sub(&u.mul_poly(&q));
        if e.is_zero() {
            break;
        }
        let dq = e.mul(&ubar_inv).truncate(d).to_poly();
        let rest = e.sub(&ubar.mul_poly(&dq));
        debug_assert!(rest.order() >= d.min(rest.precision()));
        let du = rest.shift_down(d);
        q = q.add(&dq);
        u = u.add(&du);
    }
    debug_assert!(q.is_distinguished());
    Ok(WeierstrassFactorization { q, u, d })
}

/// Weierstrass division: the unique `h`, `r` with `f = g·h + r`,
/// `deg r < d` where `d` is the order of the residue of `g`.
pub fn weierstrass_divide(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<(TruncatedSeries, Poly<RingElem>)> {
    let WeierstrassFactorization { q, u, .. } = weierstrass_prepare(g)?;
    let (quot, r) = f.divmod_monic(&q)?;
    let prec = quot.precision().min(u.precision());
    if prec == EXACT {
        return Err(Error::structural("Weierstrass division of exact series needs a finite precision"));
    }
    let h = quot.truncate(prec).mul(&u.invert_to(prec)?).truncate(prec);
    Ok((h, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TestRing;
    use std::sync::Arc;

    fn ring(s: &str) -> Arc<TestRing> {
        Arc::new(s.parse().unwrap())
    }

    fn series(r: &Arc<TestRing>, cs: &[&str], prec: usize) -> TruncatedSeries {
        TruncatedSeries::new(r, cs.iter().map(|c| r.parse_element(c).unwrap()).collect(), prec)
    }

    fn poly(r: &Arc<TestRing>, cs: &[&str]) -> Poly<RingElem> {
        Poly::new(&RingElem::zero(r), cs.iter().map(|c| r.parse_element(c).unwrap()).collect())
    }

    #[test]
    fn already_factored() {
        let r = ring("F2[e]/e^2");
        let w = weierstrass_prepare(&series(&r, &["e", "1"], 6)).unwrap();
        assert_eq!(w.d, 1);
        assert_eq!(w.q, poly(&r, &["e", "1"]));
        assert!(w.u.eq_mod(&series(&r, &["1"], 6), w.u.precision()));
    }

    #[test]
    fn corrected_unit() {
        let r = ring("F3[e]/e^2");
        let w = weierstrass_prepare(&series(&r, &["e", "0", "1", "e"], 8)).unwrap();
        assert_eq!(w.q, poly(&r, &["e", "0", "1"]));
        assert_eq!(w.u.precision(), 4);
        assert!(w.u.eq_mod(&series(&r, &["1", "e"], 4), 4));
    }

    #[test]
    fn residue_field() {
        let q = ring("Q");
        let w = weierstrass_prepare(&series(&q, &["0", "1", "-1"], 6)).unwrap();
        assert_eq!(w.q, poly(&q, &["0", "1"]));
        assert_eq!(w.u, series(&q, &["1", "-1"], 5));
    }

    #[test]
    fn unit_and_zero_residue() {
        let r = ring("Q[e]/e^2");
        let f = series(&r, &["2", "e"], 4);
        let w = weierstrass_prepare(&f).unwrap();
        assert_eq!(w.d, 0);
        assert!(w.q.is_monic() && w.q.degree() == Some(0));
        assert_eq!(w.u, f);
        assert_eq!(
            weierstrass_prepare(&series(&r, &["e", "e"], 4)),
            Err(Error::ResidueZero { precision: 4 })
        );
        assert!(matches!(
            weierstrass_prepare(&series(&r, &["0", "0", "1"], 4)),
            Err(Error::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn division() {
        let f2 = ring("F2[e]/e^2");
        let (h, r) = weierstrass_divide(&series(&f2, &["0", "e", "e"], 8), &series(&f2, &["0", "1"], 8)).unwrap();
        assert!(r.is_zero());
        assert!(h.eq_mod(&series(&f2, &["e", "e"], 8), h.precision()));

        let q2 = ring("Q[e]/e^2");
        let g = series(&q2, &["e", "1"], 8);
        let (h, r) = weierstrass_divide(&series(&q2, &["e"], 8), &g).unwrap();
        assert!(h.is_zero());
        assert_eq!(r, poly(&q2, &["e"]));

        let (h, r) = weierstrass_divide(&series(&q2, &["0", "0", "1"], 8), &g).unwrap();
        assert!(r.is_zero());
        assert!(h.eq_mod(&series(&q2, &["-e", "1"], 8), h.precision()));
    }
}
