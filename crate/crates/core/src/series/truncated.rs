use std::fmt;
use std::sync::Arc;

use super::poly::{fmt_t_sum, Poly};
use super::traits::CommRing;
use crate::algebra::{RingElem, Scalar, TestRing};
use crate::error::{Error, Result};

/// Precision marker for series known exactly (polynomials).
pub const EXACT: usize = usize::MAX;

/// An element of `A[[t]]` known modulo `t^N`.
///
/// Only the known coefficients are stored, without trailing zeros; every
/// coefficient between the stored ones and `t^N` is zero. `N = EXACT` marks
/// a series known exactly (a polynomial).
///
/// Precision is tracked honestly: if `f` is known mod `t^{N₁}` and `g` mod
/// `t^{N₂}`, then `f·g` is known mod `t^{min(N₁ + ord g, N₂ + ord f)}`, which
/// is never less than `min(N₁, N₂)`.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    ring: Arc<TestRing>,
    coeffs: Vec<RingElem>,
    prec: usize,
}

impl PartialEq for TruncatedSeries {
    /// Equal precision and equal known coefficients.
    fn eq(&self, other: &Self) -> bool {
        self.prec == other.prec && self.coeffs == other.coeffs
    }
}

impl TruncatedSeries {
    pub fn new(ring: &Arc<TestRing>, mut coeffs: Vec<RingElem>, prec: usize) -> TruncatedSeries {
        coeffs.truncate(prec);
        while coeffs.last().is_some_and(RingElem::is_zero) {
            coeffs.pop();
        }
        TruncatedSeries {
            ring: ring.clone(),
            coeffs,
            prec,
        }
    }

    /// A series known exactly, from its (finitely many) coefficients.
    pub fn exact(ring: &Arc<TestRing>, coeffs: Vec<RingElem>) -> TruncatedSeries {
        TruncatedSeries::new(ring, coeffs, EXACT)
    }

    pub fn zero(ring: &Arc<TestRing>, prec: usize) -> TruncatedSeries {
        TruncatedSeries::new(ring, Vec::new(), prec)
    }

    pub fn one(ring: &Arc<TestRing>, prec: usize) -> TruncatedSeries {
        TruncatedSeries::new(ring, vec![RingElem::one(ring)], prec)
    }

    /// `t` itself (exact).
    pub fn t(ring: &Arc<TestRing>) -> TruncatedSeries {
        TruncatedSeries::exact(ring, vec![RingElem::zero(ring), RingElem::one(ring)])
    }

    pub fn from_poly(p: &Poly<RingElem>, prec: usize) -> TruncatedSeries {
        TruncatedSeries::new(p.proto().ring(), p.coeffs().to_vec(), prec)
    }

    /// Series with coefficients in `k ⊂ A`.
    pub fn from_scalars(ring: &Arc<TestRing>, coeffs: &[Scalar], prec: usize) -> TruncatedSeries {
        let cs = coeffs.iter().map(|c| RingElem::from_scalar(ring, c.clone())).collect();
        TruncatedSeries::new(ring, cs, prec)
    }

    pub fn ring(&self) -> &Arc<TestRing> {
        &self.ring
    }

    /// `N` such that the series is known modulo `t^N` (`EXACT` if exact).
    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }

    /// Stored coefficients (the rest up to the precision are zero).
    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    /// Coefficient of `t^i`; must be below the precision.
    pub fn coeff(&self, i: usize) -> RingElem {
        debug_assert!(i < self.prec, "coefficient {i} beyond precision {}", self.prec);
        self.coeffs.get(i).cloned().unwrap_or_else(|| RingElem::zero(&self.ring))
    }

    /// Coefficients `0..n`, zero-padded; `n` must not exceed the precision.
    pub fn padded(&self, n: usize) -> Vec<RingElem> {
        (0..n).map(|i| self.coeff(i)).collect()
    }

    /// `t`-adic order of the known part (the precision if it is all zero).
    pub fn order(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.prec)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `t`-order of the image in `k[[t]]`, if nonzero to the known precision.
    pub fn residue_order(&self) -> Option<usize> {
        self.coeffs.iter().position(RingElem::is_unit)
    }

    /// Image in `k[[t]]` (coefficient list of residues).
    pub fn residue(&self) -> Vec<Scalar> {
        self.coeffs.iter().map(|c| c.residue().clone()).collect()
    }

    /// `self mod t^n`.
    pub fn truncate(&self, n: usize) -> TruncatedSeries {
        TruncatedSeries::new(&self.ring, self.coeffs.clone(), self.prec.min(n))
    }

    /// Known part as a polynomial.
    pub fn to_poly(&self) -> Poly<RingElem> {
        Poly::new(&RingElem::zero(&self.ring), self.coeffs.clone())
    }

    fn zip(&self, o: &TruncatedSeries, f: impl Fn(&RingElem, &RingElem) -> RingElem) -> TruncatedSeries {
        debug_assert!(*self.ring == *o.ring, "series over different rings");
        let prec = self.prec.min(o.prec);
        let len = self.coeffs.len().max(o.coeffs.len()).min(prec);
        let z = RingElem::zero(&self.ring);
        let cs = (0..len)
            .map(|i| f(self.coeffs.get(i).unwrap_or(&z), o.coeffs.get(i).unwrap_or(&z)))
            .collect();
        TruncatedSeries::new(&self.ring, cs, prec)
    }

    pub fn add(&self, o: &TruncatedSeries) -> TruncatedSeries {
        self.zip(o, RingElem::add)
    }

    pub fn sub(&self, o: &TruncatedSeries) -> TruncatedSeries {
        self.zip(o, RingElem::sub)
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(RingElem::neg).collect(),
            prec: self.prec,
        }
    }

    pub fn scale(&self, c: &Scalar) -> TruncatedSeries {
        TruncatedSeries::new(&self.ring, self.coeffs.iter().map(|a| a.scale(c)).collect(), self.prec)
    }

    pub fn mul_elem(&self, c: &RingElem) -> TruncatedSeries {
        TruncatedSeries::new(&self.ring, self.coeffs.iter().map(|a| a.mul(c)).collect(), self.prec)
    }

    pub fn mul(&self, o: &TruncatedSeries) -> TruncatedSeries {
        debug_assert!(*self.ring == *o.ring, "series over different rings");
        let prec = self
            .prec
            .saturating_add(o.order())
            .min(o.prec.saturating_add(self.order()));
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return TruncatedSeries::zero(&self.ring, prec);
        }
        let len = (self.coeffs.len() + o.coeffs.len() - 1).min(prec);
        let mut out = vec![RingElem::zero(&self.ring); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                out[i + j].mul_acc(a, b);
            }
        }
        TruncatedSeries::new(&self.ring, out, prec)
    }

    pub fn mul_poly(&self, p: &Poly<RingElem>) -> TruncatedSeries {
        self.mul(&TruncatedSeries::from_poly(p, EXACT))
    }

    pub fn pow(&self, e: u32) -> TruncatedSeries {
        let mut acc = TruncatedSeries::one(&self.ring, EXACT);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self · t^k`.
    pub fn shift_up(&self, k: usize) -> TruncatedSeries {
        let mut cs = vec![RingElem::zero(&self.ring); k];
        cs.extend(self.coeffs.iter().cloned());
        TruncatedSeries::new(&self.ring, cs, self.prec.saturating_add(k))
    }

    /// `self div t^k`: drop the first `k` coefficients.
    pub fn shift_down(&self, k: usize) -> TruncatedSeries {
        let prec = if self.prec == EXACT { EXACT } else { self.prec.saturating_sub(k) };
        TruncatedSeries::new(&self.ring, self.coeffs.iter().skip(k).cloned().collect(), prec)
    }

    /// Multiplicative inverse modulo `t^N`. Needs finite precision.
    pub fn invert(&self) -> Result<TruncatedSeries> {
        if self.is_exact() {
            return Err(Error::structural("inverting an exact series needs a target precision"));
        }
        self.invert_to(self.prec)
    }

    /// Inverse modulo `t^n` for `n` at most the precision.
    pub fn invert_to(&self, n: usize) -> Result<TruncatedSeries> {
        let n = n.min(self.prec);
        if n == 0 {
            return Ok(TruncatedSeries::zero(&self.ring, 0));
        }
        let c0 = self.coeffs.first().ok_or(Error::NotAUnit)?;
        let inv0 = c0.inverse()?;
        let mut g: Vec<RingElem> = Vec::with_capacity(n);
        g.push(inv0.clone());
        for k in 1..n {
            let mut acc = RingElem::zero(&self.ring);
            for i in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                acc.mul_acc(&self.coeffs[i], &g[k - i]);
            }
            g.push(acc.mul(&inv0).neg());
        }
        Ok(TruncatedSeries::new(&self.ring, g, n))
    }

    /// Number `c` of division rounds after which the correction terms of a
    /// division by `q = t^d + s` of a series lying in `m^v` vanish: `1` if
    /// `s = 0`, else `max(1, ⌈(a − v) / w⌉)` where `w` is the least `m`-adic
    /// valuation among the coefficients of `s`.
    fn division_depth(q: &Poly<RingElem>, v: usize) -> Result<usize> {
        if !q.is_distinguished() {
            return Err(Error::NotDistinguished);
        }
        let d = q.degree().expect("monic");
        let s = q.truncate(d);
        Ok(match s.m_valuation() {
            None => 1,
            Some(w) => q.proto().ring().nilpotency().saturating_sub(v).div_ceil(w).max(1),
        })
    }

    /// Least `k` such that `g·t^k ∈ (q)` for every `g ∈ m^v`, capped at
    /// `bound`. Reducing `t^k = q·s + R_k` shows that a dividend known mod
    /// `t^N` has its remainder fixed once `N ≥ k` and its quotient known mod
    /// `t^{N − k}`; the cap `c·d` is the worst case over all `q` of degree `d`.
    fn annihilating_power(q: &Poly<RingElem>, v: usize, bound: usize) -> usize {
        let ring = q.proto().ring().clone();
        let d = q.degree().expect("monic");
        let ideal: Vec<RingElem> = (0..ring.dim())
            .filter(|&i| ring.basis_degree(i) as usize >= v)
            .map(|i| RingElem::basis_element(&ring, i))
            .collect();
        let kills = |rem: &[RingElem]| rem.iter().all(|x| ideal.iter().all(|g| x.mul(g).is_zero()));
        // remainder of t^k modulo q, as coefficients of 1, t, …, t^{d−1}
        let mut rem: Vec<RingElem> = (0..d).map(|i| if i == 0 { RingElem::one(&ring) } else { RingElem::zero(&ring) }).collect();
        for k in 0..bound {
            if kills(&rem) {
                return k;
            }
            let top = rem.pop().unwrap_or_else(|| RingElem::zero(&ring));
            rem.insert(0, RingElem::zero(&ring));
            for (i, r) in rem.iter_mut().enumerate() {
                *r = r.sub(&top.mul(q.coeff(i)));
            }
        }
        bound
    }

    /// Division with remainder by a monic polynomial: `self = q·h + r`,
    /// `deg r < deg q`.
    ///
    /// For an exact series any monic `q` is allowed. Otherwise `q` must be
    /// distinguished; with `k ≤ c·d` as in [`Self::annihilating_power`], the
    /// remainder is determined once `N ≥ k` and the quotient is known mod
    /// `t^{N − k}`.
    pub fn divmod_monic(&self, q: &Poly<RingElem>) -> Result<(TruncatedSeries, Poly<RingElem>)> {
        self.divmod_monic_in(q, 0)
    }

    /// [`Self::divmod_monic`] for a series known to lie in `m^v` (including
    /// its unknown tail), which needs fewer division rounds.
    pub fn divmod_monic_in(&self, q: &Poly<RingElem>, v: usize) -> Result<(TruncatedSeries, Poly<RingElem>)> {
        if !q.is_monic() {
            return Err(Error::NotMonic);
        }
        debug_assert!(self.in_maximal_power(v));
        let (h, r) = self.to_poly().divmod_monic(q)?;
        if self.is_exact() {
            return Ok((TruncatedSeries::from_poly(&h, EXACT), r));
        }
        let d = q.degree().expect("monic");
        let c = TruncatedSeries::division_depth(q, v)?;
        let loss = TruncatedSeries::annihilating_power(q, v, c * d);
        if self.prec < loss {
            return Err(Error::precision(loss, self.prec, "division by a distinguished polynomial"));
        }
        Ok((TruncatedSeries::from_poly(&h, self.prec - loss), r))
    }

    /// Quotient of an exact division by `q`; fails if the remainder is
    /// nonzero.
    pub fn div_exact(&self, q: &Poly<RingElem>) -> Result<TruncatedSeries> {
        let (h, r) = self.divmod_monic(q)?;
        if !r.is_zero() {
            return Err(Error::structural(format!("division by {q} leaves remainder {r}")));
        }
        Ok(h)
    }

    /// Image in a quotient `A/m^j`.
    pub fn project(&self, target: &Arc<TestRing>) -> TruncatedSeries {
        TruncatedSeries::new(target, self.coeffs.iter().map(|c| c.project(target)).collect(), self.prec)
    }

    /// Zero-extension into a ring whose basis extends this one's.
    pub fn zero_extend(&self, target: &Arc<TestRing>) -> TruncatedSeries {
        TruncatedSeries::new(target, self.coeffs.iter().map(|c| c.zero_extend(target)).collect(), self.prec)
    }

    /// Coefficientwise equality modulo `t^n`.
    pub fn eq_mod(&self, other: &TruncatedSeries, n: usize) -> bool {
        (0..n).all(|i| self.coeff(i) == other.coeff(i))
    }

    /// True when every coefficient lies in `m^j`.
    pub fn in_maximal_power(&self, j: usize) -> bool {
        self.coeffs.iter().all(|c| c.valuation().is_none_or(|v| v >= j))
    }
}

impl CommRing for TruncatedSeries {
    fn zero_like(&self) -> Self {
        TruncatedSeries::zero(&self.ring, EXACT)
    }
    fn one_like(&self) -> Self {
        TruncatedSeries::one(&self.ring, EXACT)
    }
    fn from_scalar_like(&self, c: &Scalar) -> Self {
        TruncatedSeries::new(&self.ring, vec![RingElem::from_scalar(&self.ring, c.clone())], EXACT)
    }
    fn is_zero(&self) -> bool {
        TruncatedSeries::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == RingElem::one(&self.ring)
    }
    fn add(&self, other: &Self) -> Self {
        TruncatedSeries::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        TruncatedSeries::sub(self, other)
    }
    fn neg(&self) -> Self {
        TruncatedSeries::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        TruncatedSeries::mul(self, other)
    }
    fn scale(&self, c: &Scalar) -> Self {
        TruncatedSeries::scale(self, c)
    }
}

impl fmt::Display for TruncatedSeries {
    /// `c0 + c1*t + ... + O(t^N)`, compound coefficients parenthesised.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prec = (!self.is_exact()).then_some(self.prec);
        fmt_t_sum(f, self.coeffs.iter().map(|c| c.to_string()), prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Arc<TestRing> {
        Arc::new(s.parse().unwrap())
    }

    fn series(r: &Arc<TestRing>, cs: &[&str], prec: usize) -> TruncatedSeries {
        TruncatedSeries::new(r, cs.iter().map(|c| r.parse_element(c).unwrap()).collect(), prec)
    }

    #[test]
    fn inversion() {
        let q = ring("Q");
        let inv = series(&q, &["1", "-1"], 4).invert().unwrap();
        assert_eq!(inv, series(&q, &["1", "1", "1", "1"], 4));
        assert_eq!(inv.to_string(), "1 + t + t^2 + t^3 + O(t^4)");

        let f2 = ring("F2[e]/e^2");
        let f = series(&f2, &["1", "e"], 3);
        assert_eq!(f.invert().unwrap(), f);

        let g = series(&q, &["1", "1"], 6);
        assert_eq!(g.invert().unwrap().truncate(4), series(&q, &["1", "1"], 4).invert().unwrap());

        assert_eq!(series(&f2, &["e", "1"], 3).invert(), Err(Error::NotAUnit));
    }

    #[test]
    fn sharp_precision() {
        let q = ring("Q");
        // t^2 + O(t^5) times 1 + O(t^3): known mod t^5
        let a = series(&q, &["0", "0", "1"], 5);
        let b = series(&q, &["1"], 3);
        assert_eq!(a.mul(&b).precision(), 5);
        assert_eq!(b.mul(&b).precision(), 3);
    }

    #[test]
    fn series_division_precision() {
        let r = ring("Q[e]/e^2");
        let q = Poly::new(&RingElem::zero(&r), vec![r.parse_element("e").unwrap(), RingElem::one(&r)]);
        let f = series(&r, &["0", "0", "1"], 6);
        let (h, rem) = f.divmod_monic(&q).unwrap();
        // a = 2, v = 1 → c = 2, loss 2
        assert_eq!(h, series(&r, &["-e", "1"], 4));
        assert!(rem.is_zero());
    }
}
