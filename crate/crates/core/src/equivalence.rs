//! The bijection between deformations of the base arc and model points.
//!
//! * [`forward_map`] sends a deformation `(x, y)` over `A` to
//!   `(q, x̄, ȳ, ξ)`: `q` is the Weierstrass polynomial of
//!   `det ∂p/∂y (x, y)`, `ȳ = y mod q^r`, and `x = q^{r+1}·ξ + x̄`.
//! * [`inverse_map`] rebuilds `x` and recovers `y` by [`hensel_lift`], an
//!   induction along `A/m² → A/m³ → … → A`. At each level the current
//!   solution is lifted coefficientwise, re-normalised so that
//!   `ỹ ≡ ȳ mod q^r`, and corrected by the unique `z ∈ q^r·m^{j−1}` with
//!   `C·z = p(x, ỹ)`, `C = ∂p/∂y (x, ỹ)`. Writing `det C = q·u'` with `u'` a
//!   unit, `z = (adj(C)·p(x, ỹ) / q)·u'^{-1}`, which exists exactly when the
//!   adjugate product is divisible by `q^{r+1}`.
//! * [`roundtrip_check`] samples model points, maps them back and forth and
//!   compares at the reporting precision.
//!
//! Precision is tracked honestly: every division by a distinguished
//! polynomial costs precision, so computations run at a working precision
//! above the reporting precision (see [`PrecisionPlan`]).

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::algebra::{Field, RingElem, RowReduced, Scalar, TestRing};
use crate::arcspace::{compute_defect, BaseArc, Deformation, VarietyPresentation};
use crate::error::{Condition, Error, Result};
use crate::model::{build_model, check_conditions, check_model_point, split_x, ModelOutput, ModelPoint};
use crate::series::{Poly, TruncatedSeries, EXACT};
use crate::weierstrass::weierstrass_prepare;

/// Environment variable overriding the working precision (expert use).
pub const WORK_PRECISION_ENV: &str = "FORMAL_ARCS_WORK_PRECISION";

/// Reporting precision (what is compared and printed) and working precision
/// (what is computed).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPlan {
    pub reporting: usize,
    pub working: usize,
}

impl PrecisionPlan {
    /// Default reporting precision: enough to see `x̄` and four more terms.
    pub fn default_reporting(d: usize, r: usize) -> usize {
        (r + 1) * d + 4
    }

    /// Working precision sufficient for a roundtrip over a ring of
    /// nilpotency `a`: splitting `x` by `q^{r+1}` costs up to `a(r+1)d`, and
    /// each of the lifting levels `2..a` costs one division round by
    /// `q^{r+1}`.
    pub fn required_working(reporting: usize, a: usize, d: usize, r: usize) -> usize {
        reporting + (2 * a).saturating_sub(1) * (r + 1) * d + 4
    }

    pub fn new(a: usize, d: usize, r: usize) -> PrecisionPlan {
        PrecisionPlan::with_reporting(PrecisionPlan::default_reporting(d, r), a, d, r)
    }

    pub fn with_reporting(reporting: usize, a: usize, d: usize, r: usize) -> PrecisionPlan {
        PrecisionPlan { reporting, working: PrecisionPlan::required_working(reporting, a, d, r) }
    }

    /// Apply the [`WORK_PRECISION_ENV`] override, if set.
    pub fn from_env(self) -> Result<PrecisionPlan> {
        match std::env::var(WORK_PRECISION_ENV) {
            Ok(v) => {
                let working = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::structural(format!("{WORK_PRECISION_ENV} must be a non-negative integer")))?;
                Ok(PrecisionPlan { working, ..self })
            }
            Err(_) => Ok(self),
        }
    }

    /// The same plan computed with `extra` more terms.
    pub fn widened(self, extra: usize) -> PrecisionPlan {
        PrecisionPlan { working: self.working + extra, ..self }
    }
}

/// Knobs of [`hensel_lift`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftOptions {
    /// Series are cut to this precision before lifting.
    pub precision: usize,
    /// Omit the correction at the top level (a deliberately broken lift, for
    /// mutation testing).
    pub skip_last_level: bool,
}

impl Default for LiftOptions {
    fn default() -> Self {
        LiftOptions { precision: EXACT, skip_last_level: false }
    }
}

impl LiftOptions {
    pub fn with_precision(precision: usize) -> LiftOptions {
        LiftOptions { precision, ..LiftOptions::default() }
    }
}

/// One induction step of the lift, over `A/m^level`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftLevel {
    pub level: usize,
    /// The normalised lift `ỹ` of the previous solution.
    pub lift: Vec<TruncatedSeries>,
    /// The correction `z`, with `y = ỹ − z`.
    pub correction: Vec<TruncatedSeries>,
    /// Least `m`-adic valuation of the coefficients of `p(x, ỹ)`
    /// (`None` when it vanishes).
    pub residual_valuation: Option<usize>,
}

/// Record of a lift, one entry per level `2..a`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftTrace {
    pub levels: Vec<LiftLevel>,
    pub y: Vec<TruncatedSeries>,
}

impl LiftTrace {
    /// Text rendering with series cut at `t^n`.
    pub fn render(&self, n: usize) -> String {
        let mut out = String::new();
        for lv in &self.levels {
            let val = lv.residual_valuation.map_or("∞".to_string(), |v| v.to_string());
            out.push_str(&format!("level {}: residual in m^{val}\n", lv.level));
            for (j, (l, z)) in lv.lift.iter().zip(&lv.correction).enumerate() {
                out.push_str(&format!("  lift y{} = {}\n", j + 1, l.truncate(n)));
                out.push_str(&format!("  correction z{} = {}\n", j + 1, z.truncate(n)));
            }
        }
        for (j, y) in self.y.iter().enumerate() {
            out.push_str(&format!("y{} = {}\n", j + 1, y.truncate(n)));
        }
        out
    }
}

fn series_valuation(s: &[TruncatedSeries]) -> Option<usize> {
    s.iter().flat_map(|x| x.coeffs().iter().filter_map(RingElem::valuation)).min()
}

fn project_poly(p: &Poly<RingElem>, target: &Arc<TestRing>) -> Poly<RingElem> {
    p.map(&RingElem::zero(target), |c| c.project(target))
}

fn exact(p: &Poly<RingElem>) -> TruncatedSeries {
    TruncatedSeries::from_poly(p, EXACT)
}

/// Check that `(q, x, ȳ)` reduces to the base arc modulo `m`.
fn check_reduction(arc: &BaseArc, q: &Poly<RingElem>, x: &[TruncatedSeries], ybar: &[Poly<RingElem>], r: usize) -> Result<()> {
    if x.len() != arc.n() || ybar.len() != arc.l() {
        return Err(Error::structural("lift data does not have the shape of the base arc"));
    }
    if !q.is_distinguished() {
        return Err(Error::NotDistinguished);
    }
    let rd = r * q.degree().expect("monic");
    for (i, s) in x.iter().enumerate() {
        let n = s.precision().min(arc.precision());
        if (0..n).any(|k| *s.coeff(k).residue() != arc.x_coeff(i, k)) {
            return Err(Error::structural(format!("x{} does not reduce to the base arc modulo m", i + 1)));
        }
    }
    for (j, p) in ybar.iter().enumerate() {
        if p.len() > rd && !(rd..p.len()).all(|k| p.coeff(k).is_zero()) {
            return Err(Error::structural(format!("ȳ{} has degree ≥ r·d", j + 1)));
        }
        if (0..rd.min(arc.precision())).any(|k| *p.coeff(k).residue() != arc.y_coeff(j, k)) {
            return Err(Error::structural(format!("ȳ{} does not reduce to y⁰ mod t^(rd)", j + 1)));
        }
    }
    Ok(())
}

/// Solve `p(x, y) = 0` with `y ≡ ȳ mod q^r` and `y ≡ y⁰ mod m`, by
/// induction on the powers of the maximal ideal.
///
/// Fails with `InconsistentInput` when the determinant or residual
/// condition fails on entry, and with `ObstructedLift` at the first level
/// where the adjugate product is not divisible by `q^{r+1}`.
pub fn hensel_lift(
    pres: &VarietyPresentation,
    arc: &BaseArc,
    q: &Poly<RingElem>,
    x: &[TruncatedSeries],
    ybar: &[Poly<RingElem>],
    r: usize,
    opts: &LiftOptions,
) -> Result<(Vec<TruncatedSeries>, LiftTrace)> {
    let ring = q.proto().ring().clone();
    check_reduction(arc, q, x, ybar, r)?;
    if let Some(c) = check_conditions(pres, q, x, ybar, r)? {
        if c != Condition::Adjugate {
            return Err(Error::InconsistentInput { condition: c });
        }
    }
    let cap = opts.precision.min(arc.precision());
    let x: Vec<TruncatedSeries> = x.iter().map(|s| s.truncate(cap)).collect();
    let a = ring.nilpotency();
    let k = Arc::new(ring.quotient(1)?);
    let mut y = arc.y_series(&k, cap);
    let mut levels = Vec::new();
    for j in 2..=a {
        let aj = if j == a { ring.clone() } else { Arc::new(ring.quotient(j)?) };
        let qj = project_poly(q, &aj);
        let qjr = qj.pow(r as u32);
        let qjr1 = qjr.mul(&qj);
        let xj: Vec<TruncatedSeries> = x.iter().map(|s| s.project(&aj)).collect();
        let mut lift = Vec::with_capacity(y.len());
        for (s, yb) in y.iter().zip(ybar) {
            let ext = s.zero_extend(&aj);
            let (_, rem) = ext.divmod_monic(&qjr)?;
            lift.push(ext.sub(&exact(&rem)).add(&exact(&project_poly(yb, &aj))));
        }
        let residual = pres.residual(&xj, &lift)?;
        if !residual.iter().all(|s| s.in_maximal_power(j - 1)) {
            return Err(Error::structural(format!("lift at level {j} does not start from a solution modulo m^{}", j - 1)));
        }
        let c = pres.jacobian_at(&xj, &lift)?;
        let (det, adj) = c.det_and_adjugate()?;
        let (_, det_rem) = det.divmod_monic(&qj)?;
        if !det_rem.is_zero() {
            return Err(Error::InconsistentInput { condition: Condition::Determinant });
        }
        // `h ∈ m^{j−1}`, so only the residue of the unit matters.
        let unit_inv = det.project(&k).div_exact(&project_poly(q, &k))?.truncate(cap).invert()?.zero_extend(&aj);
        let w = adj.mul_vec(&residual)?;
        let mut correction = Vec::with_capacity(w.len());
        for wi in &w {
            let (h, rem) = wi.divmod_monic_in(&qjr1, j - 1)?;
            if !rem.is_zero() {
                return Err(Error::ObstructedLift { level: j, condition: Condition::Adjugate });
            }
            correction.push(h.mul(&unit_inv).mul_poly(&qjr));
        }
        let skip = opts.skip_last_level && j == a;
        if skip {
            correction = correction.iter().map(|z| TruncatedSeries::zero(&aj, z.precision())).collect();
        } else {
            let cz = c.mul_vec(&correction)?;
            let consistent = cz.iter().zip(&residual).all(|(l, rhs)| l.sub(rhs).is_zero());
            if !consistent || !correction.iter().all(|z| z.in_maximal_power(j - 1)) {
                return Err(Error::structural(format!("correction at level {j} failed verification")));
            }
        }
        y = lift.iter().zip(&correction).map(|(l, z)| l.sub(z)).collect();
        levels.push(LiftLevel {
            level: j,
            lift,
            correction,
            residual_valuation: series_valuation(&residual),
        });
    }
    if a == 1 {
        y = y.iter().map(|s| s.zero_extend(&ring)).collect();
    }
    let trace = LiftTrace { levels, y: y.clone() };
    Ok((y, trace))
}

/// Deformation → model point: `q` from Weierstrass preparation of
/// `det ∂p/∂y (x, y)`, `ȳ = y mod q^r`, `x = q^{r+1}·ξ + x̄`.
pub fn forward_map(pres: &VarietyPresentation, def: &Deformation, r: usize) -> Result<ModelPoint> {
    let det = pres.jacobian_det(&def.x, &def.y)?;
    let q = weierstrass_prepare(&det)?.q;
    let qr = q.pow(r as u32);
    let ybar = def
        .y
        .iter()
        .map(|s| s.divmod_monic(&qr).map(|(_, rem)| rem))
        .collect::<Result<Vec<_>>>()?;
    let (xbar, xi) = split_x(&def.x, &q, r)?;
    Ok(ModelPoint { ring: def.ring.clone(), q, xbar, ybar, xi })
}

/// Model point → deformation: `x = q^{r+1}·ξ + x̄`, then lift `y`.
pub fn inverse_map(
    pres: &VarietyPresentation,
    arc: &BaseArc,
    pt: &ModelPoint,
    r: usize,
    opts: &LiftOptions,
) -> Result<Deformation> {
    inverse_map_traced(pres, arc, pt, r, opts).map(|(d, _)| d)
}

/// [`inverse_map`] together with the lift trace.
pub fn inverse_map_traced(
    pres: &VarietyPresentation,
    arc: &BaseArc,
    pt: &ModelPoint,
    r: usize,
    opts: &LiftOptions,
) -> Result<(Deformation, LiftTrace)> {
    let x: Vec<TruncatedSeries> = pt.reconstruct_x(r).iter().map(|s| s.truncate(opts.precision)).collect();
    let (y, trace) = hensel_lift(pres, arc, &pt.q, &x, &pt.ybar, r, opts)?;
    Ok((Deformation { ring: pt.ring.clone(), x, y }, trace))
}

/// The deformation with `x = x⁰ + δx` and `ȳ = (y⁰ mod t^{rd}) + δȳ`.
///
/// `q` is found as a fixed point of `q ↦ W(det ∂p/∂y (x, ȳ + q^r·h))`,
/// `h = y⁰ div t^{rd}`, iterated `a` times. Failure of the residual or
/// adjugate condition for the resulting data is reported as
/// `ObstructedLift`.
pub fn deform_with(
    pres: &VarietyPresentation,
    arc: &BaseArc,
    ring: &Arc<TestRing>,
    dx: &[TruncatedSeries],
    dybar: &[Poly<RingElem>],
    r: usize,
    precision: usize,
) -> Result<Deformation> {
    let d = compute_defect(pres, arc)?;
    let cap = precision.min(arc.precision());
    if dx.len() != arc.n() || dybar.len() != arc.l() {
        return Err(Error::structural("perturbation does not have the shape of the base arc"));
    }
    if dx.iter().any(|s| !s.in_maximal_power(1)) || dybar.iter().any(|p| p.coeffs().iter().any(|c| !c.in_maximal_ideal())) {
        return Err(Error::structural("perturbations must have coefficients in the maximal ideal"));
    }
    let x: Vec<TruncatedSeries> = arc.x_series(ring, cap).iter().zip(dx).map(|(a, b)| a.add(b).truncate(cap)).collect();
    let zero = RingElem::zero(ring);
    let y0 = arc.y_series(ring, cap);
    let ybar: Vec<Poly<RingElem>> = y0
        .iter()
        .zip(dybar)
        .map(|(s, dy)| s.truncate(r * d).to_poly().add(dy))
        .collect();
    let tails: Vec<TruncatedSeries> = y0.iter().map(|s| s.shift_down(r * d)).collect();
    let mut q = Poly::t_pow(&zero, d);
    for _ in 0..ring.nilpotency() {
        let qr = q.pow(r as u32);
        let ytilde: Vec<TruncatedSeries> = ybar.iter().zip(&tails).map(|(b, h)| h.mul_poly(&qr).add(&exact(b))).collect();
        let next = weierstrass_prepare(&pres.jacobian_det(&x, &ytilde)?)?.q;
        if next == q {
            break;
        }
        q = next;
    }
    match check_conditions(pres, &q, &x, &ybar, r)? {
        None => {}
        Some(Condition::Determinant) => return Err(Error::InconsistentInput { condition: Condition::Determinant }),
        Some(c) => return Err(Error::ObstructedLift { level: 0, condition: c }),
    }
    let (y, _) = hensel_lift(pres, arc, &q, &x, &ybar, r, &LiftOptions::with_precision(cap))?;
    Ok(Deformation { ring: ring.clone(), x, y })
}

/// Mix words into a 64-bit key (SplitMix64 finaliser).
fn mix(words: &[u64]) -> u64 {
    let mut h: u64 = 0x9E37_79B9_7F4A_7C15;
    for &w in words {
        h ^= w;
        h = h.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = h;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        h = z ^ (z >> 31);
    }
    h
}

fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Rationals => field.from_i64(rng.gen_range(-2..=2)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

fn random_nonzero_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let s = random_scalar(field, rng);
        if !s.is_zero() {
            return s;
        }
    }
}

fn random_in_maximal_ideal(ring: &Arc<TestRing>, rng: &mut ChaCha8Rng) -> RingElem {
    let field = ring.field();
    let mut coords = vec![field.zero()];
    coords.extend((1..ring.dim()).map(|_| random_scalar(field, rng)));
    RingElem::from_coords(ring, coords).expect("dimension matches")
}

/// Number of fresh attempts before the sampler gives up.
pub const SAMPLER_ATTEMPTS: usize = 32;

/// Random `A`-points of a model near its base point.
///
/// Points are built degree by degree in `m`: with `v` a solution modulo
/// `m^j`, the degree-`j` part `δ` of the next correction must solve
/// `J·δ_μ = −[F(v)]_μ` for every degree-`j` basis monomial `μ`, where `J`
/// is the Jacobian of the equations at the base point. A particular
/// solution plus a random sparse kernel vector is taken; an inconsistent
/// system (an obstructed direction) restarts with fresh randomness.
///
/// Randomness: `ChaCha8` seeded with the seed, stream = trial, for the
/// model coordinates; disk coordinate `k` of `ξ_i` uses its own generator
/// keyed by `(seed, trial, i, k)`, so raising the precision only appends
/// coefficients.
pub struct ModelSampler {
    mo: ModelOutput,
    ring: Arc<TestRing>,
    reduced: RowReduced,
    kernel: Vec<Vec<Scalar>>,
}

impl ModelSampler {
    pub fn new(mo: &ModelOutput, ring: &Arc<TestRing>) -> Result<ModelSampler> {
        if ring.field() != mo.field {
            return Err(Error::structural("test ring and model have different base fields"));
        }
        let nv = mo.num_variables();
        let jac: Vec<Vec<Scalar>> = mo
            .equations
            .iter()
            .map(|e| (0..nv).map(|v| e.derivative(v).eval_scalars(&mo.base_point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let reduced = RowReduced::new(mo.field, &jac, nv);
        let kernel = reduced.kernel();
        Ok(ModelSampler { mo: mo.clone(), ring: ring.clone(), reduced, kernel })
    }

    pub fn model(&self) -> &ModelOutput {
        &self.mo
    }

    /// One attempt at the model coordinates; `Err(condition)` names the
    /// condition of an equation that could not be satisfied.
    fn attempt(&self, rng: &mut ChaCha8Rng) -> Result<std::result::Result<Vec<RingElem>, (usize, Condition)>> {
        let ring = &self.ring;
        let field = ring.field();
        let mut v: Vec<RingElem> = self.mo.base_point.iter().map(|c| RingElem::from_scalar(ring, c.clone())).collect();
        if v.is_empty() {
            return Ok(Ok(v));
        }
        for j in 1..ring.nilpotency() {
            let values = self.mo.equations.iter().map(|e| e.eval(&v)).collect::<Result<Vec<_>>>()?;
            for b in (0..ring.dim()).filter(|&b| ring.basis_degree(b) as usize == j) {
                let rhs: Vec<Scalar> = values.iter().map(|x| x.coords()[b].neg()).collect();
                let Some(mut delta) = self.reduced.solve(&rhs) else {
                    let e = rhs.iter().position(|c| !c.is_zero()).unwrap_or(0);
                    return Ok(Err((j + 1, self.mo.labels[e].condition)));
                };
                for kv in &self.kernel {
                    if rng.gen_bool(0.5) {
                        let c = random_nonzero_scalar(field, rng);
                        for (dv, kvi) in delta.iter_mut().zip(kv) {
                            *dv = dv.add(&c.mul(kvi));
                        }
                    }
                }
                let mono = RingElem::basis_element(ring, b);
                for (vi, dv) in v.iter_mut().zip(&delta) {
                    if !dv.is_zero() {
                        *vi = vi.add(&mono.scale(dv));
                    }
                }
            }
        }
        Ok(Ok(v))
    }

    /// Model coordinates of a random point (no disk coordinates).
    pub fn sample_values(&self, seed: u64, trial: u64) -> Result<Vec<RingElem>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let mut last = (0, Condition::Adjugate);
        for _ in 0..SAMPLER_ATTEMPTS {
            match self.attempt(&mut rng)? {
                Ok(v) => return Ok(v),
                Err(fail) => last = fail,
            }
        }
        Err(Error::ObstructedLift { level: last.0, condition: last.1 })
    }

    /// Disk coordinates `ξ = ξ⁰ + (random m-valued series)` mod `t^prec`.
    pub fn sample_disk(&self, seed: u64, trial: u64, prec: usize) -> Vec<TruncatedSeries> {
        let prec = prec.min(self.mo.disk_precision);
        (0..self.mo.n)
            .map(|i| {
                let coeffs = (0..prec)
                    .map(|k| {
                        let mut rng = ChaCha8Rng::seed_from_u64(mix(&[seed, trial, i as u64, k as u64]));
                        let base = self.mo.disk_base[i].get(k).cloned().unwrap_or_else(|| self.mo.field.zero());
                        random_in_maximal_ideal(&self.ring, &mut rng).add(&RingElem::from_scalar(&self.ring, base))
                    })
                    .collect();
                TruncatedSeries::new(&self.ring, coeffs, prec)
            })
            .collect()
    }

    /// A random model point with disk coordinates known mod `t^xi_prec`.
    pub fn sample(&self, seed: u64, trial: u64, xi_prec: usize) -> Result<ModelPoint> {
        let values = self.sample_values(seed, trial)?;
        Ok(self.assemble(&values, seed, trial, xi_prec))
    }

    /// Like [`ModelSampler::sample`], but falls back to the base point's
    /// model coordinates when every attempt was obstructed. Returns whether
    /// the fallback was used.
    pub fn sample_or_base(&self, seed: u64, trial: u64, xi_prec: usize) -> Result<(ModelPoint, bool)> {
        match self.sample_values(seed, trial) {
            Ok(values) => Ok((self.assemble(&values, seed, trial, xi_prec), false)),
            Err(Error::ObstructedLift { .. }) => {
                let base: Vec<RingElem> = self.mo.base_point.iter().map(|c| RingElem::from_scalar(&self.ring, c.clone())).collect();
                Ok((self.assemble(&base, seed, trial, xi_prec), true))
            }
            Err(e) => Err(e),
        }
    }

    fn assemble(&self, values: &[RingElem], seed: u64, trial: u64, xi_prec: usize) -> ModelPoint {
        ModelPoint::from_values(&self.mo, &self.ring, values, self.sample_disk(seed, trial, xi_prec))
    }
}

/// A random genuine deformation of `γ₀` over `A`, deterministic in `seed`:
/// a sampled model point (`r = 1`) mapped through [`inverse_map`].
pub fn random_deformation(pres: &VarietyPresentation, arc: &BaseArc, ring: &Arc<TestRing>, seed: u64) -> Result<Deformation> {
    let r = 1;
    let mo = build_model(pres, arc, r)?;
    let plan = PrecisionPlan::new(ring.nilpotency(), mo.d, r).from_env()?;
    let sampler = ModelSampler::new(&mo, ring)?;
    let pt = sampler.sample(seed, 0, plan.working)?;
    inverse_map(pres, arc, &pt, r, &LiftOptions::with_precision(plan.working))
}

/// Settings of [`roundtrip_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoundtripOptions {
    pub plan: PrecisionPlan,
    pub skip_last_level: bool,
}

/// Result of one roundtrip trial.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialOutcome {
    pub trial: usize,
    /// Failure description; `None` when every check passed.
    pub failure: Option<String>,
    /// `deg q` of the forward image.
    pub defect: Option<usize>,
    /// The sampler fell back to the base point's model coordinates.
    pub fallback: bool,
    /// Canonical text of the model point and deformation at reporting
    /// precision.
    pub rendering: String,
}

impl TrialOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Outcome of [`roundtrip_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct RoundtripReport {
    pub ring: String,
    pub r: usize,
    pub seed: u64,
    pub d: usize,
    pub plan: PrecisionPlan,
    pub outcomes: Vec<TrialOutcome>,
    /// SHA-256 of the trial renderings, in trial order.
    pub digest: String,
}

impl RoundtripReport {
    pub fn trials(&self) -> usize {
        self.outcomes.len()
    }

    pub fn passes(&self) -> usize {
        self.outcomes.iter().filter(|o| o.passed()).count()
    }

    pub fn passed(&self) -> bool {
        self.passes() == self.trials()
    }

    pub fn failures(&self) -> impl Iterator<Item = &TrialOutcome> {
        self.outcomes.iter().filter(|o| !o.passed())
    }

    /// Every trial's forward image has `deg q = d`.
    pub fn defect_consistent(&self) -> bool {
        self.outcomes.iter().all(|o| o.defect == Some(self.d))
    }

    pub fn fallbacks(&self) -> usize {
        self.outcomes.iter().filter(|o| o.fallback).count()
    }
}

impl fmt::Display for RoundtripReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "roundtrip over {} with r = {}, d = {}, seed = {}", self.ring, self.r, self.d, self.seed)?;
        writeln!(
            f,
            "reporting precision {}, working precision {}",
            self.plan.reporting, self.plan.working
        )?;
        for o in self.failures() {
            writeln!(
                f,
                "COUNTEREXAMPLE trial {} (reproduce: --ring '{}' --r {} --seed {} --trials {}): {}",
                o.trial,
                self.ring,
                self.r,
                self.seed,
                o.trial + 1,
                o.failure.as_deref().unwrap_or("")
            )?;
            write!(f, "{}", o.rendering)?;
        }
        writeln!(f, "{}/{} trials passed", self.passes(), self.trials())?;
        writeln!(f, "base-point fallbacks: {}", self.fallbacks())?;
        write!(f, "digest: {}", self.digest)
    }
}

/// Lowercase hex of a byte string.
fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

struct TrialContext<'a> {
    pres: &'a VarietyPresentation,
    arc: &'a BaseArc,
    mo: &'a ModelOutput,
    sampler: &'a ModelSampler,
    r: usize,
    seed: u64,
    opts: RoundtripOptions,
}

impl TrialContext<'_> {
    fn run(&self, trial: usize) -> TrialOutcome {
        let mut outcome = TrialOutcome { trial, failure: None, defect: None, fallback: false, rendering: String::new() };
        if let Err(e) = self.checks(trial, &mut outcome) {
            outcome.failure = Some(e);
        }
        outcome
    }

    fn checks(&self, trial: usize, out: &mut TrialOutcome) -> std::result::Result<(), String> {
        let (pres, arc, r) = (self.pres, self.arc, self.r);
        let plan = self.opts.plan;
        let d = self.mo.d;
        let n_rep = plan.reporting;
        let xi_rep = n_rep.saturating_sub((r + 1) * d);
        let lift = LiftOptions { precision: plan.working, skip_last_level: self.opts.skip_last_level };
        let err = |stage: &str, e: Error| format!("{stage}: {e}");

        let (pt, fallback) = self.sampler.sample_or_base(self.seed, trial as u64, plan.working).map_err(|e| err("sampling", e))?;
        out.fallback = fallback;
        out.rendering = pt.render(xi_rep);
        let check = check_model_point(self.mo, &pt).map_err(|e| err("model check", e))?;
        if !check.passed() {
            return Err(format!("sampled point is not on the model: {check}"));
        }
        // forward ∘ inverse on a model point
        let gamma = inverse_map(pres, arc, &pt, r, &lift).map_err(|e| err("inverse map", e))?;
        out.rendering.push_str(&gamma.render(n_rep));
        if gamma.precision() < n_rep {
            return Err(format!("deformation known only mod t^{}", gamma.precision()));
        }
        if !gamma.reduces_to(arc) {
            return Err("deformation does not reduce to the base arc".into());
        }
        if !gamma.is_solution(pres).map_err(|e| err("residual", e))? {
            return Err("lifted y does not solve p(x, y) = 0".into());
        }
        let pt1 = forward_map(pres, &gamma, r).map_err(|e| err("forward map", e))?;
        out.defect = pt1.q.degree();
        if out.defect != Some(d) {
            return Err(format!("deg q = {:?} differs from the defect {d}", out.defect));
        }
        if pt1.xi_precision() < xi_rep || !pt1.eq_at(&pt, xi_rep) {
            return Err(format!("forward(inverse(point)) differs from the point:\n{}", pt1.render(xi_rep)));
        }
        // inverse ∘ forward on the deformation
        let gamma2 = inverse_map(pres, arc, &pt1, r, &lift).map_err(|e| err("second inverse map", e))?;
        let same = gamma2.precision() >= n_rep
            && gamma.x.iter().zip(&gamma2.x).all(|(a, b)| a.eq_mod(b, n_rep))
            && gamma.y.iter().zip(&gamma2.y).all(|(a, b)| a.eq_mod(b, n_rep));
        if !same {
            return Err(format!("inverse(forward(deformation)) differs:\n{}", gamma2.render(n_rep)));
        }
        // uniqueness: y + q^r·g with g ∈ m^{a-1} \ 0 is not a solution
        let ring = &pt.ring;
        let a = ring.nilpotency();
        if a >= 2 {
            let mut rng = ChaCha8Rng::seed_from_u64(mix(&[self.seed, trial as u64, 0x756e_6971]));
            let top = RingElem::basis_element(ring, ring.dim() - 1);
            let shift = rng.gen_range(0..=n_rep.saturating_sub((r + 1) * d + 1).min(3));
            let mut dirs: Vec<Scalar> = (0..pres.l()).map(|_| random_scalar(ring.field(), &mut rng)).collect();
            if dirs.iter().all(Scalar::is_zero) {
                dirs[0] = ring.field().one();
            }
            let qr = pt1.q.pow(r as u32);
            let y_pert: Vec<TruncatedSeries> = gamma
                .y
                .iter()
                .zip(&dirs)
                .map(|(y, c)| {
                    let g = Poly::monomial(top.scale(c), shift);
                    y.add(&exact(&qr.mul(&g)))
                })
                .collect();
            let res = pres.residual(&gamma.x, &y_pert).map_err(|e| err("uniqueness", e))?;
            if res.iter().all(|s| (0..n_rep).all(|k| s.coeff(k).is_zero())) {
                return Err("perturbing y by q^r·g, g ∈ m^(a-1), still solves p = 0".into());
            }
        }
        Ok(())
    }
}

/// Sample `trials` model points, map each through `inverse_map`,
/// `forward_map` and `inverse_map` again, and compare at the reporting
/// precision; also check that the lifted `y` is locally unique.
///
/// Trials run in parallel; the report depends only on the inputs.
pub fn roundtrip_check(
    pres: &VarietyPresentation,
    arc: &BaseArc,
    ring: &Arc<TestRing>,
    r: usize,
    trials: usize,
    seed: u64,
    opts: &RoundtripOptions,
) -> Result<RoundtripReport> {
    let mo = build_model(pres, arc, r)?;
    let sampler = ModelSampler::new(&mo, ring)?;
    let ctx = TrialContext { pres, arc, mo: &mo, sampler: &sampler, r, seed, opts: *opts };
    let outcomes: Vec<TrialOutcome> = (0..trials).into_par_iter().map(|t| ctx.run(t)).collect();
    let mut hasher = Sha256::new();
    for o in &outcomes {
        hasher.update(format!("trial {}\n{}{}\n", o.trial, o.rendering, o.failure.as_deref().unwrap_or("pass")).as_bytes());
    }
    Ok(RoundtripReport {
        ring: ring.to_string(),
        r,
        seed,
        d: mo.d,
        plan: opts.plan,
        outcomes,
        digest: hex(&hasher.finalize()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> (VarietyPresentation, BaseArc) {
        let q = Field::Rationals;
        (
            VarietyPresentation::parse(q, 2, 1, &["y1*x2 + x1^2"]).unwrap(),
            BaseArc::from_ints(q, &[&[], &[0, 1]], &[&[]], 32).unwrap(),
        )
    }

    fn ring(s: &str) -> Arc<TestRing> {
        Arc::new(s.parse().unwrap())
    }

    fn series(r: &Arc<TestRing>, cs: &[&str], prec: usize) -> TruncatedSeries {
        crate::arcspace::ring_series(r, cs, prec).unwrap()
    }

    #[test]
    fn lift_example() {
        let (pres, arc) = example();
        let a = ring("Q[e]/e^3");
        let zero = RingElem::zero(&a);
        let q = Poly::t_pow(&zero, 1);
        let x = vec![series(&a, &["0", "e"], 20), series(&a, &["0", "1"], 20)];
        let ybar = vec![Poly::zero(&zero)];
        let (y, trace) = hensel_lift(&pres, &arc, &q, &x, &ybar, 1, &LiftOptions::default()).unwrap();
        assert!(y[0].eq_mod(&series(&a, &["0", "-e^2"], 20), y[0].precision()));
        assert!(y[0].precision() >= 10);
        assert_eq!(trace.levels.len(), 2);

        let x = vec![series(&a, &["e"], 20), series(&a, &["0", "1"], 20)];
        assert_eq!(
            hensel_lift(&pres, &arc, &q, &x, &ybar, 1, &LiftOptions::default()).unwrap_err(),
            Error::InconsistentInput { condition: Condition::Residual }
        );
    }

    #[test]
    fn forward_example() {
        let (pres, arc) = example();
        let a = ring("Q[e]/e^2");
        let def = Deformation {
            ring: a.clone(),
            x: vec![series(&a, &["e"], 20), series(&a, &["e", "1"], 20)],
            y: vec![series(&a, &[], 20)],
        };
        let pt = forward_map(&pres, &def, 1).unwrap();
        assert_eq!(pt.q.to_string(), "e + t");
        assert_eq!(pt.xbar[0].to_string(), "e");
        assert_eq!(pt.xbar[1].to_string(), "e + t");
        assert!(pt.ybar[0].is_zero() && pt.xi.iter().all(TruncatedSeries::is_zero));
        let back = inverse_map(&pres, &arc, &pt, 1, &LiftOptions::default()).unwrap();
        assert!(back.y[0].is_zero());
        assert!(back.x[1].eq_mod(&def.x[1], back.x[1].precision()));
    }

    #[test]
    fn deform_with_examples() {
        let (pres, arc) = example();
        let a2 = ring("Q[e]/e^2");
        let zero = RingElem::zero(&a2);
        let def = deform_with(&pres, &arc, &a2, &[series(&a2, &["e"], 20), series(&a2, &["e"], 20)], &[Poly::zero(&zero)], 1, 20).unwrap();
        assert!(def.y[0].is_zero());
        let a3 = ring("Q[e]/e^3");
        let zero = RingElem::zero(&a3);
        let err = deform_with(&pres, &arc, &a3, &[series(&a3, &["e"], 20), series(&a3, &[], 20)], &[Poly::zero(&zero)], 1, 20).unwrap_err();
        assert!(matches!(err, Error::ObstructedLift { .. }), "{err}");
    }

    #[test]
    fn roundtrip_small() {
        let (_, arc) = example();
        let a = ring("F2[e]/e^2");
        let pres = VarietyPresentation::parse(a.field(), 2, 1, &["y1*x2 + x1^2"]).unwrap();
        let arc = BaseArc::from_ints(a.field(), &[&[], &[0, 1]], &[&[]], arc.precision()).unwrap();
        let plan = PrecisionPlan::new(a.nilpotency(), 1, 1);
        let opts = RoundtripOptions { plan, skip_last_level: false };
        let rep = roundtrip_check(&pres, &arc, &a, 1, 20, 7, &opts).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(rep.defect_consistent());
        let again = roundtrip_check(&pres, &arc, &a, 1, 20, 7, &opts).unwrap();
        assert_eq!(rep.digest, again.digest);
        assert_eq!(roundtrip_check(&pres, &arc, &a, 1, 0, 7, &opts).unwrap().trials(), 0);
    }

    #[test]
    fn skipped_correction_is_caught() {
        // over F2[e]/e^2 the Example forces y = 0 and every correction
        // vanishes, so the mutation needs a ring where y moves
        let (pres, arc) = example();
        let a = ring("Q[e]/e^3");
        let plan = PrecisionPlan::new(a.nilpotency(), 1, 1);
        let opts = RoundtripOptions { plan, skip_last_level: false };
        assert!(roundtrip_check(&pres, &arc, &a, 1, 10, 3, &opts).unwrap().passed());
        let broken = roundtrip_check(&pres, &arc, &a, 1, 10, 3, &RoundtripOptions { skip_last_level: true, ..opts }).unwrap();
        assert!(!broken.passed());
    }
}
