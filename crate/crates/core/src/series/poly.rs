use std::fmt;
use std::sync::Arc;

use super::traits::CommRing;
use crate::algebra::{RingElem, Scalar};
use crate::error::{Error, Result};

/// A polynomial in `t` with coefficients in `C`, stored without trailing
/// zeros. The prototype zero keeps the coefficient context available for
/// the zero polynomial.
#[derive(Clone, Debug)]
pub struct Poly<C> {
    zero: C,
    coeffs: Vec<C>,
}

impl<C: CommRing> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<C: CommRing> Poly<C> {
    pub fn new(proto: &C, coeffs: Vec<C>) -> Poly<C> {
        let mut p = Poly {
            zero: proto.zero_like(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero(proto: &C) -> Poly<C> {
        Poly {
            zero: proto.zero_like(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(proto: &C) -> Poly<C> {
        Poly::constant(proto.one_like())
    }

    pub fn constant(c: C) -> Poly<C> {
        Poly::new(&c.clone(), vec![c])
    }

    /// `c·t^k`.
    pub fn monomial(c: C, k: usize) -> Poly<C> {
        let mut v = vec![c.zero_like(); k];
        v.push(c.clone());
        Poly::new(&c, v)
    }

    /// `t^k`.
    pub fn t_pow(proto: &C, k: usize) -> Poly<C> {
        Poly::monomial(proto.one_like(), k)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn proto(&self) -> &C {
        &self.zero
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> &C {
        self.coeffs.get(i).unwrap_or(&self.zero)
    }

    /// Coefficients of `t^0..t^{len-1}`, zero-padded.
    pub fn padded(&self, len: usize) -> Vec<C> {
        (0..len).map(|i| self.coeff(i).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients (`deg + 1`, or 0).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `t`-adic order; `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, o: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(&self.zero, (0..n).map(|i| self.coeff(i).add(o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Poly<C>) -> Poly<C> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(&self.zero, (0..n).map(|i| self.coeff(i).sub(o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Poly<C> {
        Poly::new(&self.zero, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn mul(&self, o: &Poly<C>) -> Poly<C> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.zero);
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j].mul_acc(a, b);
            }
        }
        Poly::new(&self.zero, out)
    }

    /// Product truncated modulo `t^n`.
    pub fn mul_trunc(&self, o: &Poly<C>, n: usize) -> Poly<C> {
        let len = (self.coeffs.len() + o.coeffs.len()).saturating_sub(1).min(n);
        let mut out = vec![self.zero.clone(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                out[i + j].mul_acc(a, b);
            }
        }
        Poly::new(&self.zero, out)
    }

    pub fn mul_coeff(&self, c: &C) -> Poly<C> {
        Poly::new(&self.zero, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Poly<C> {
        Poly::new(&self.zero, self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    pub fn pow(&self, e: u32) -> Poly<C> {
        let mut acc = Poly::one(&self.zero);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self · t^k`.
    pub fn shift_up(&self, k: usize) -> Poly<C> {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.zero.clone(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly {
            zero: self.zero.clone(),
            coeffs: v,
        }
    }

    /// `self mod t^n`.
    pub fn truncate(&self, n: usize) -> Poly<C> {
        Poly::new(&self.zero, self.coeffs.iter().take(n).cloned().collect())
    }

    /// `self div t^k` (drops the low part).
    pub fn shift_down(&self, k: usize) -> Poly<C> {
        Poly::new(&self.zero, self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Division with remainder by a monic polynomial: `self = g·h + r`,
    /// `deg r < deg g`.
    pub fn divmod_monic(&self, g: &Poly<C>) -> Result<(Poly<C>, Poly<C>)> {
        if !g.is_monic() {
            return Err(Error::NotMonic);
        }
        let d = g.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Poly::zero(&self.zero), self.clone()));
        }
        let mut quot = vec![self.zero.clone(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = std::mem::replace(&mut rem[k], self.zero.clone());
            if c.is_zero() {
                continue;
            }
            for (i, gi) in g.coeffs[..d].iter().enumerate() {
                if !gi.is_zero() {
                    rem[k - d + i] = rem[k - d + i].sub(&c.mul(gi));
                }
            }
            quot[k - d] = c;
        }
        rem.truncate(d);
        Ok((Poly::new(&self.zero, quot), Poly::new(&self.zero, rem)))
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, g: &Poly<C>) -> Result<Poly<C>> {
        Ok(self.divmod_monic(g)?.1)
    }

    pub fn map<D: CommRing>(&self, proto: &D, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::new(proto, self.coeffs.iter().map(f).collect())
    }

    /// Evaluate at `t = v` by Horner's rule.
    pub fn eval(&self, v: &C) -> C {
        let mut acc = self.zero.clone();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(v).add(c);
        }
        acc
    }
}

impl Poly<RingElem> {
    /// Image modulo the maximal ideal, as a polynomial over `A/m = k`.
    pub fn residue(&self) -> Poly<Scalar> {
        let f = self.zero.ring().field();
        Poly::new(&f.zero(), self.coeffs.iter().map(|c| c.residue().clone()).collect())
    }

    /// True for a monic `q` congruent to `t^deg q` modulo `m`.
    pub fn is_distinguished(&self) -> bool {
        self.is_monic() && self.coeffs[..self.coeffs.len() - 1].iter().all(RingElem::in_maximal_ideal)
    }

    /// Minimal `m`-adic valuation of the coefficients, `None` for zero.
    pub fn m_valuation(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(RingElem::valuation).min()
    }
}

impl fmt::Display for Poly<RingElem> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_t_sum(f, self.coeffs.iter().map(|c| c.to_string()), None)
    }
}

/// Render `Σ c_i t^i` with parenthesised compound coefficients, optionally
/// followed by `O(t^N)`.
pub(crate) fn fmt_t_sum(
    f: &mut fmt::Formatter<'_>,
    coeffs: impl Iterator<Item = String>,
    precision: Option<usize>,
) -> fmt::Result {
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in coeffs.enumerate() {
        if c == "0" {
            continue;
        }
        let compound = c.contains(' ');
        let tpow = match i {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{i}"),
        };
        let term = if i == 0 {
            c
        } else if c == "1" {
            tpow
        } else if c == "-1" {
            format!("-{tpow}")
        } else if compound {
            format!("({c})*{tpow}")
        } else {
            format!("{c}*{tpow}")
        };
        parts.push(term);
    }
    if let Some(n) = precision {
        parts.push(format!("O(t^{n})"));
    }
    if parts.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for p in parts {
        if first {
            write!(f, "{p}")?;
            first = false;
        } else if let Some(rest) = p.strip_prefix('-') {
            write!(f, " - {rest}")?;
        } else {
            write!(f, " + {p}")?;
        }
    }
    Ok(())
}

/// An element of `C[t]/(Q)` for a fixed monic `Q`, kept as its canonical
/// representative of degree `< deg Q`.
#[derive(Clone, Debug)]
pub struct ModPoly<C> {
    modulus: Arc<Poly<C>>,
    rep: Poly<C>,
}

impl<C: CommRing> PartialEq for ModPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}

impl<C: CommRing> ModPoly<C> {
    pub fn new(modulus: &Arc<Poly<C>>, p: &Poly<C>) -> Result<ModPoly<C>> {
        Ok(ModPoly {
            modulus: modulus.clone(),
            rep: p.rem_monic(modulus)?,
        })
    }

    pub fn rep(&self) -> &Poly<C> {
        &self.rep
    }

    fn wrap(&self, rep: Poly<C>) -> ModPoly<C> {
        ModPoly {
            modulus: self.modulus.clone(),
            rep,
        }
    }
}

impl<C: CommRing> CommRing for ModPoly<C> {
    fn zero_like(&self) -> Self {
        self.wrap(Poly::zero(self.rep.proto()))
    }
    fn one_like(&self) -> Self {
        let one = Poly::one(self.rep.proto());
        self.wrap(one.rem_monic(&self.modulus).expect("modulus is monic"))
    }
    fn from_scalar_like(&self, c: &crate::algebra::Scalar) -> Self {
        let k = Poly::constant(self.rep.proto().from_scalar_like(c));
        self.wrap(k.rem_monic(&self.modulus).expect("modulus is monic"))
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self.wrap(self.rep.add(&other.rep))
    }
    fn sub(&self, other: &Self) -> Self {
        self.wrap(self.rep.sub(&other.rep))
    }
    fn neg(&self) -> Self {
        self.wrap(self.rep.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let prod = self.rep.mul(&other.rep);
        self.wrap(prod.rem_monic(&self.modulus).expect("modulus is monic"))
    }
    fn scale(&self, c: &crate::algebra::Scalar) -> Self {
        self.wrap(self.rep.scale(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TestRing;

    fn ring(s: &str) -> Arc<TestRing> {
        Arc::new(s.parse().unwrap())
    }

    fn poly(r: &Arc<TestRing>, cs: &[&str]) -> Poly<RingElem> {
        Poly::new(
            &RingElem::zero(r),
            cs.iter().map(|c| r.parse_element(c).unwrap()).collect(),
        )
    }

    #[test]
    fn monic_division() {
        let r = ring("Q[e]/e^2");
        let (h, rem) = poly(&r, &["0", "0", "1"]).divmod_monic(&poly(&r, &["e", "1"])).unwrap();
        assert_eq!(h, poly(&r, &["-e", "1"]));
        assert!(rem.is_zero());

        let q = ring("Q");
        let (h, rem) = poly(&q, &["0", "0", "0", "1"]).divmod_monic(&poly(&q, &["0", "1"])).unwrap();
        assert_eq!(h, poly(&q, &["0", "0", "1"]));
        assert!(rem.is_zero());

        let f2 = ring("F2[e]/e^2");
        let (h, rem) = poly(&f2, &["e", "e"]).divmod_monic(&poly(&f2, &["0", "1"])).unwrap();
        assert_eq!(h, poly(&f2, &["e"]));
        assert_eq!(rem, poly(&f2, &["e"]));

        assert_eq!(
            poly(&r, &["1", "1"]).divmod_monic(&poly(&r, &["1", "2"])),
            Err(Error::NotMonic)
        );
    }

    #[test]
    fn display() {
        let r = ring("Q[e]/e^2");
        assert_eq!(poly(&r, &["e", "1 + e", "-1"]).to_string(), "e + (1 + e)*t - t^2");
        assert_eq!(poly(&r, &[]).to_string(), "0");
    }

    #[test]
    fn quotient_ring_arithmetic() {
        let r = ring("Q");
        let q = Arc::new(poly(&r, &["1", "0", "1"])); // t^2 + 1
        let t = ModPoly::new(&q, &poly(&r, &["0", "1"])).unwrap();
        let t2 = CommRing::mul(&t, &t);
        assert_eq!(*t2.rep(), poly(&r, &["-1"]));
    }
}
