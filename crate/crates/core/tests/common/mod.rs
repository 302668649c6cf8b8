//! Generators shared by the integration tests.

#![allow(dead_code)]

use std::sync::Arc;

use formal_arcs::algebra::{RingElem, TestRing};
use formal_arcs::series::{Poly, TruncatedSeries, EXACT};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Test rings covering prime fields, `Q`, one and two generators and
/// nilpotency up to 4.
pub const RINGS: &[&str] = &[
    "F2[e]/e^2",
    "F3[e]/e^3",
    "F5[e]/e^2",
    "Q[e]/e^2",
    "Q[e]/e^3",
    "Q[e]/e^4",
    "Q[e1,e2]/(e1,e2)^2",
    "F3[e1,e2]/(e1^2,e2^2)",
];

pub fn ring(s: &str) -> Arc<TestRing> {
    Arc::new(s.parse().expect("valid ring descriptor"))
}

pub fn elem(r: &Arc<TestRing>, coords: &[i64]) -> RingElem {
    let f = r.field();
    RingElem::from_coords(r, coords.iter().map(|&c| f.from_i64(c)).collect()).expect("right dimension")
}

/// Elements with small integer coordinates.
pub fn elem_strategy(r: Arc<TestRing>) -> impl Strategy<Value = RingElem> {
    prop::collection::vec(-3i64..=3, r.dim()).prop_map(move |c| elem(&r, &c))
}

/// Elements of the maximal ideal.
pub fn m_elem_strategy(r: Arc<TestRing>) -> impl Strategy<Value = RingElem> {
    prop::collection::vec(-3i64..=3, r.dim()).prop_map(move |mut c| {
        c[0] = 0;
        elem(&r, &c)
    })
}

pub fn ring_strategy() -> impl Strategy<Value = Arc<TestRing>> {
    prop::sample::select(RINGS).prop_map(ring)
}

pub fn random_elem(r: &Arc<TestRing>, rng: &mut ChaCha8Rng) -> RingElem {
    let c: Vec<i64> = (0..r.dim()).map(|_| rng.gen_range(-3..=3)).collect();
    elem(r, &c)
}

pub fn random_m_elem(r: &Arc<TestRing>, rng: &mut ChaCha8Rng) -> RingElem {
    let mut c: Vec<i64> = (0..r.dim()).map(|_| rng.gen_range(-3..=3)).collect();
    c[0] = 0;
    elem(r, &c)
}

/// A series of precision `prec` whose residue has order exactly `d`.
pub fn random_series_of_order(r: &Arc<TestRing>, d: usize, prec: usize, rng: &mut ChaCha8Rng) -> TruncatedSeries {
    let f = r.field();
    let cs: Vec<RingElem> = (0..prec)
        .map(|k| {
            if k < d {
                random_m_elem(r, rng)
            } else if k == d {
                let mut e = random_m_elem(r, rng);
                let unit = loop {
                    let v: i64 = rng.gen_range(1..=4);
                    if !f.from_i64(v).is_zero() {
                        break v;
                    }
                };
                e = e.add(&RingElem::from_i64(r, unit));
                e
            } else {
                random_elem(r, rng)
            }
        })
        .collect();
    TruncatedSeries::new(r, cs, prec)
}

pub fn random_poly(r: &Arc<TestRing>, len: usize, rng: &mut ChaCha8Rng) -> Poly<RingElem> {
    Poly::new(&RingElem::zero(r), (0..len).map(|_| random_elem(r, rng)).collect())
}

/// A nonzero polynomial of degree `< d` with coefficients in `m`.
pub fn random_m_poly(r: &Arc<TestRing>, d: usize, rng: &mut ChaCha8Rng) -> Poly<RingElem> {
    loop {
        let p = Poly::new(&RingElem::zero(r), (0..d).map(|_| random_m_elem(r, rng)).collect());
        if !p.is_zero() {
            return p;
        }
    }
}

/// The rings of the Weierstrass suite.
pub const WEIERSTRASS_RINGS: &[&str] = &["F2[e]/e^2", "F3[e]/e^3", "Q[e]/e^2", "Q[e1,e2]/(e1,e2)^2", "Q[e]/e^4"];

/// One randomized Weierstrass check over `r`: a series of residue order
/// `d ≤ 4` at precision `≤ 16` (with `a·d < N` so that `q` is determined)
/// must satisfy `q·u = f`, `q ≡ t^d`, `u ≡ f/t^d` modulo `m`, and no
/// perturbation of `q` by a nonzero `m`-valued polynomial of degree `< d`
/// may divide `f`. Returns a description of the first failure.
pub fn weierstrass_trial(r: &Arc<TestRing>, rng: &mut ChaCha8Rng) -> Result<(), String> {
    use formal_arcs::weierstrass::{weierstrass_divide, weierstrass_prepare};
    let a = r.nilpotency();
    let dmax = 4.min(15 / a);
    let d = rng.gen_range(0..=dmax);
    let n = rng.gen_range(a * d + 1..=16);
    let f = random_series_of_order(r, d, n, rng);
    let w = weierstrass_prepare(&f).map_err(|e| format!("{f}: {e}"))?;
    if w.d != d || w.q.degree() != Some(d) || !w.q.is_monic() {
        return Err(format!("{f}: q = {} has the wrong degree", w.q));
    }
    let known = w.u.precision();
    if known < n - a * d {
        return Err(format!("{f}: unit known only to t^{known}, expected at least t^{}", n - a * d));
    }
    if !f.eq_mod(&w.u.mul_poly(&w.q), known) {
        return Err(format!("{f}: q·u ≠ f with q = {}, u = {}", w.q, w.u));
    }
    let mut t_d = vec![r.field().zero(); d];
    t_d.push(r.field().one());
    if w.q.residue().coeffs() != t_d.as_slice() {
        return Err(format!("{f}: residue of q = {} is not t^{d}", w.q));
    }
    if (0..known).any(|k| w.u.coeff(k).residue() != f.coeff(d + k).residue()) {
        return Err(format!("{f}: residue of u is not residue(f)/t^{d}"));
    }
    if d > 0 && a > 1 {
        let q2 = w.q.add(&random_m_poly(r, d, rng));
        let (_, rem) = f.divmod_monic(&q2).map_err(|e| format!("{f}: {e}"))?;
        if rem.is_zero() {
            return Err(format!("{f}: perturbed q′ = {q2} also divides f"));
        }
    }
    let g = random_series_of_order(r, rng.gen_range(0..=d), n, rng);
    let (h, rem) = weierstrass_divide(&g, &f).map_err(|e| format!("{g} / {f}: {e}"))?;
    let back = h.mul(&f).add(&TruncatedSeries::from_poly(&rem, EXACT));
    if !back.eq_mod(&g, h.precision()) || rem.degree().is_some_and(|k| k >= d) {
        return Err(format!("{g} / {f}: f·h + r ≠ g"));
    }
    Ok(())
}
