//! Independent ground truth over finite test rings.
//!
//! * The hypersurface `y·x_{n+1} + f(x₁..x_n) = 0` with the arc
//!   `x_{n+1} = t` (all else zero) has a closed form: every deformation has
//!   `x_{n+1} = (t − α)·u` with `α ∈ m`, `u ≡ 1 mod m` a unit, and `x₁..x_n`
//!   in `m[[t]]`; `y` exists iff `f(x(α)) = 0`, and then
//!   `y = −f(x)/x_{n+1}` ([`example_deformations`]).
//! * [`enumerate_deformations`] finds all deformations modulo `t^N` by a
//!   pruned exhaustive search; [`enumerate_model_points`] does the same for
//!   the model.
//! * [`run_oracle`] compares the sets and checks that the forward map is a
//!   bijection between them.
//!
//! Solutions modulo `t^N` of `p ≡ 0` need not extend to genuine arcs, and
//! `y mod t^N` depends on `x` beyond `t^N`. The searches therefore run to
//! precision `N + a·d` and truncate, which removes the spurious solutions
//! near the boundary.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{enumerate_maximal_ideal, Field, RingElem, TestRing};
use crate::arcspace::{standard_variables, validate, BaseArc, Deformation, VarietyPresentation};
use crate::equivalence::{forward_map, inverse_map, LiftOptions, PrecisionPlan};
use crate::error::{Condition, Error, Result};
use crate::model::{build_model, check_model_point, ModelCheck, ModelOutput, ModelPoint};
use crate::series::{MultiPoly, Poly, TruncatedSeries};
use crate::weierstrass::weierstrass_divide;

/// Largest search space (in bits) the enumerators accept.
pub const SEARCH_GUARD_LOG2: u32 = 24;

fn guard(size_log2: f64) -> Result<()> {
    if size_log2 > SEARCH_GUARD_LOG2 as f64 + 1e-9 {
        return Err(Error::Refused { size_log2, limit_log2: SEARCH_GUARD_LOG2 });
    }
    Ok(())
}

fn maximal_ideal(ring: &Arc<TestRing>) -> Result<Vec<RingElem>> {
    if !ring.field().is_finite() {
        return Err(Error::NotEnumerable(ring.field().to_string()));
    }
    Ok(enumerate_maximal_ideal(ring)?.collect())
}

/// Visit every tuple in `choices^slots` (first slot fastest).
fn for_each_tuple<T>(choices: &[T], slots: usize, mut f: impl FnMut(&[&T])) {
    if choices.is_empty() {
        return;
    }
    let mut idx = vec![0usize; slots];
    loop {
        let tuple: Vec<&T> = idx.iter().map(|&i| &choices[i]).collect();
        f(&tuple);
        let mut k = 0;
        loop {
            if k == slots {
                return;
            }
            idx[k] += 1;
            if idx[k] < choices.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// The hypersurface `y·x_{n+1} + f(x₁..x_n)` with the arc `x_{n+1} = t`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExampleFixture {
    pub field: Field,
    pub n: usize,
    /// `f` in the variables `x1..xn`.
    pub f: MultiPoly,
}

impl ExampleFixture {
    /// `f` given as an expression in `x1..xn`.
    pub fn new(field: Field, n: usize, f: &str) -> Result<ExampleFixture> {
        let vars = Arc::new((1..=n).map(|i| format!("x{i}")).collect::<Vec<_>>());
        let f = crate::parse::parse_polynomial(f, field, &vars)?;
        Ok(ExampleFixture { field, n, f })
    }

    /// `f` in the presentation's variables `x1..x_{n+1}, y1`.
    fn f_embedded(&self) -> MultiPoly {
        let vars = standard_variables(self.n + 1, 1);
        self.f.embed(&vars, &(0..self.n).collect::<Vec<_>>())
    }

    pub fn presentation(&self) -> VarietyPresentation {
        let vars = standard_variables(self.n + 1, 1);
        let yx = MultiPoly::variable(self.field, vars.clone(), self.n + 1).mul(&MultiPoly::variable(self.field, vars, self.n));
        VarietyPresentation::new(self.field, self.n + 1, 1, vec![yx.add(&self.f_embedded())]).expect("well-formed")
    }

    pub fn arc(&self, precision: usize) -> BaseArc {
        let field = self.field;
        let mut x0 = vec![Vec::new(); self.n];
        x0.push(vec![field.zero(), field.one()]);
        BaseArc::new(field, x0, vec![Vec::new()], precision).expect("well-formed")
    }

    /// Recognise a presentation and arc of this shape (`f` must vanish at 0
    /// for the arc to lie on the hypersurface).
    pub fn detect(pres: &VarietyPresentation, arc: &BaseArc) -> Option<ExampleFixture> {
        let (n1, field) = (pres.n(), pres.field());
        if pres.l() != 1 || n1 == 0 {
            return None;
        }
        let vars = pres.vars().clone();
        let yx = MultiPoly::variable(field, vars.clone(), n1).mul(&MultiPoly::variable(field, vars, n1 - 1));
        let rest = pres.equations()[0].sub(&yx);
        let support = rest.support();
        if support.iter().any(|&v| v >= n1 - 1) {
            return None;
        }
        let shape_ok = (0..n1 - 1).all(|i| arc.x0()[i].is_empty())
            && arc.x0()[n1 - 1] == vec![field.zero(), field.one()]
            && arc.y0()[0].is_empty();
        if !shape_ok {
            return None;
        }
        let small = Arc::new((1..n1).map(|i| format!("x{i}")).collect::<Vec<_>>());
        let f = restrict(&rest, &small, n1 - 1);
        Some(ExampleFixture { field, n: n1 - 1, f })
    }
}

/// Drop the trailing (unused) variables of a polynomial.
fn restrict(p: &MultiPoly, vars: &Arc<Vec<String>>, keep: usize) -> MultiPoly {
    MultiPoly::from_terms(p.field(), vars.clone(), p.terms().map(|(m, c)| (m.0[..keep].to_vec(), c.clone())))
}

/// The closed-form deformation with parameters `α ∈ m`, `u ∈ 1 + m[[t]]`,
/// `x₁..x_n ∈ m[[t]]`, modulo `t^N` (where `N` is the least precision of
/// the inputs minus the division loss). Fails with `ObstructedLift` when
/// `f(x(α)) ≠ 0`.
pub fn example_deformation(
    fix: &ExampleFixture,
    alpha: &RingElem,
    u: &TruncatedSeries,
    xs: &[TruncatedSeries],
) -> Result<Deformation> {
    let ring = alpha.ring().clone();
    if !alpha.in_maximal_ideal() || !u.coeff(0).sub(&RingElem::one(&ring)).in_maximal_ideal() {
        return Err(Error::structural("need α ∈ m and u ≡ 1 mod m"));
    }
    if u.coeffs().iter().skip(1).any(|c| !c.in_maximal_ideal()) || xs.iter().any(|x| !x.in_maximal_power(1)) {
        return Err(Error::structural("perturbations must have coefficients in m"));
    }
    if xs.len() != fix.n {
        return Err(Error::structural(format!("expected {} x-components", fix.n)));
    }
    let at_alpha: Vec<RingElem> = xs.iter().map(|x| x.to_poly().eval(alpha)).collect();
    if !fix.f.eval(&at_alpha)?.is_zero() {
        return Err(Error::ObstructedLift { level: ring.nilpotency(), condition: Condition::Residual });
    }
    let t_minus_alpha = TruncatedSeries::exact(&ring, vec![alpha.neg(), RingElem::one(&ring)]);
    let xlast = t_minus_alpha.mul(u);
    let fx = fix.f.eval(xs)?;
    let (h, rem) = weierstrass_divide(&fx.neg(), &xlast)?;
    if !rem.is_zero() {
        return Err(Error::ObstructedLift { level: ring.nilpotency(), condition: Condition::Residual });
    }
    let mut x = xs.to_vec();
    x.push(xlast);
    Ok(Deformation { ring, x, y: vec![h] })
}

fn key(def: &Deformation, n: usize) -> String {
    def.render(n)
}

fn sorted_unique(defs: impl IntoIterator<Item = Deformation>, n: usize) -> Vec<Deformation> {
    let mut map: BTreeMap<String, Deformation> = BTreeMap::new();
    for d in defs {
        let d = d.truncate(n);
        map.entry(key(&d, n)).or_insert(d);
    }
    map.into_values().collect()
}

/// Precision of the extended search: `N + a·d`.
fn extended_precision(ring: &TestRing, d: usize, n: usize) -> usize {
    n + ring.nilpotency() * d
}

/// All closed-form deformations of the Example modulo `t^N`, sorted by their
/// canonical text.
pub fn example_deformations(fix: &ExampleFixture, ring: &Arc<TestRing>, n: usize) -> Result<Vec<Deformation>> {
    let m = maximal_ideal(ring)?;
    let big = extended_precision(ring, 1, n);
    let mbits = (m.len() as f64).log2();
    guard(mbits * (1 + big + fix.n * big) as f64)?;
    let one = RingElem::one(ring);
    let mut out = Vec::new();
    for alpha in &m {
        for_each_tuple(&m, big, |ucs| {
            let mut cs: Vec<RingElem> = ucs.iter().map(|c| (*c).clone()).collect();
            cs[0] = cs[0].add(&one);
            let u = TruncatedSeries::new(ring, cs, big);
            for_each_tuple(&m, fix.n * big, |xcs| {
                let xs: Vec<TruncatedSeries> = (0..fix.n)
                    .map(|i| TruncatedSeries::new(ring, xcs[i * big..(i + 1) * big].iter().map(|c| (*c).clone()).collect(), big))
                    .collect();
                match example_deformation(fix, alpha, &u, &xs) {
                    Ok(def) if def.precision() >= n => out.push(def),
                    Ok(_) | Err(Error::ObstructedLift { .. }) => {}
                    Err(e) => panic!("closed form failed unexpectedly: {e}"),
                }
            });
        });
    }
    Ok(sorted_unique(out, n))
}

/// All deformations of `γ₀` modulo `t^N` (perturbations with coefficients
/// in `m`), sorted by their canonical text.
pub fn enumerate_deformations(pres: &VarietyPresentation, arc: &BaseArc, ring: &Arc<TestRing>, n: usize) -> Result<Vec<Deformation>> {
    let m = maximal_ideal(ring)?;
    let d = match validate(pres, arc) {
        Ok(v) => v.det_order,
        Err(Error::ArcNotOnVariety { order, .. }) if order < n => return Ok(Vec::new()),
        Err(Error::ArcNotOnVariety { .. }) | Err(Error::ArcInDegeneracyLocus { .. }) => 0,
        Err(e) => return Err(e),
    };
    let big = extended_precision(ring, d, n);
    if arc.precision() < big {
        return Err(Error::precision(big, arc.precision(), "enumeration needs the base arc beyond t^N"));
    }
    let nvars = pres.n() + pres.l();
    guard((m.len() as f64).log2() * (nvars * big) as f64)?;
    let base: Vec<Vec<RingElem>> = arc
        .x_series(ring, big)
        .iter()
        .chain(&arc.y_series(ring, big))
        .map(|s| s.padded(big))
        .collect();
    let mut found = Vec::new();
    let mut coeffs: Vec<Vec<RingElem>> = vec![Vec::with_capacity(big); nvars];
    search_degree(pres, ring, &m, &base, big, 0, &mut coeffs, &mut found)?;
    Ok(sorted_unique(found, n))
}

#[allow(clippy::too_many_arguments)]
fn search_degree(
    pres: &VarietyPresentation,
    ring: &Arc<TestRing>,
    m: &[RingElem],
    base: &[Vec<RingElem>],
    big: usize,
    k: usize,
    coeffs: &mut Vec<Vec<RingElem>>,
    found: &mut Vec<Deformation>,
) -> Result<()> {
    let series = |cs: &Vec<Vec<RingElem>>, prec: usize| -> Vec<TruncatedSeries> {
        cs.iter().map(|c| TruncatedSeries::new(ring, c.clone(), prec)).collect()
    };
    if k == big {
        let s = series(coeffs, big);
        let (x, y) = s.split_at(pres.n());
        found.push(Deformation { ring: ring.clone(), x: x.to_vec(), y: y.to_vec() });
        return Ok(());
    }
    let nvars = coeffs.len();
    let mut result = Ok(());
    for_each_tuple(m, nvars, |tuple| {
        if result.is_err() {
            return;
        }
        for (v, c) in tuple.iter().enumerate() {
            coeffs[v].push(base[v][k].add(c));
        }
        let s = series(coeffs, k + 1);
        let (x, y) = s.split_at(pres.n());
        match pres.residual(x, y) {
            Ok(res) => {
                if res.iter().all(|r| r.coeff(k).is_zero()) {
                    result = search_degree(pres, ring, m, base, big, k + 1, coeffs, found);
                }
            }
            Err(e) => result = Err(e),
        }
        for c in coeffs.iter_mut() {
            c.pop();
        }
    });
    result
}

/// `A`-points of the model (model coordinates only), in search order.
pub fn enumerate_model_values(mo: &ModelOutput, ring: &Arc<TestRing>) -> Result<Vec<Vec<RingElem>>> {
    let m = maximal_ideal(ring)?;
    let nv = mo.num_variables();
    guard((m.len() as f64).log2() * nv as f64)?;
    // equations become checkable once their last variable is assigned
    let mut due: Vec<Vec<usize>> = vec![Vec::new(); nv.max(1)];
    let mut always = Vec::new();
    for (i, e) in mo.equations.iter().enumerate() {
        match e.support().into_iter().max() {
            Some(v) => due[v].push(i),
            None => always.push(i),
        }
    }
    let mut values: Vec<RingElem> = mo.base_point.iter().map(|c| RingElem::from_scalar(ring, c.clone())).collect();
    for &i in &always {
        if !mo.equations[i].is_zero() {
            return Ok(Vec::new());
        }
    }
    let mut out = Vec::new();
    search_model(mo, ring, &m, &due, 0, &mut values, &mut out)?;
    Ok(out)
}

fn search_model(
    mo: &ModelOutput,
    ring: &Arc<TestRing>,
    m: &[RingElem],
    due: &[Vec<usize>],
    v: usize,
    values: &mut Vec<RingElem>,
    out: &mut Vec<Vec<RingElem>>,
) -> Result<()> {
    if v == values.len() {
        out.push(values.clone());
        return Ok(());
    }
    let base = RingElem::from_scalar(ring, mo.base_point[v].clone());
    for c in m {
        values[v] = base.add(c);
        let mut ok = true;
        for &i in &due[v] {
            if !mo.equations[i].eval(values)?.is_zero() {
                ok = false;
                break;
            }
        }
        if ok {
            search_model(mo, ring, m, due, v + 1, values, out)?;
        }
    }
    values[v] = base;
    Ok(())
}

/// All model points over `A` with disk coordinates modulo `t^xi_prec`.
pub fn enumerate_model_points(mo: &ModelOutput, ring: &Arc<TestRing>, xi_prec: usize) -> Result<Vec<ModelPoint>> {
    if xi_prec > mo.disk_precision {
        return Err(Error::precision(xi_prec, mo.disk_precision, "disk coordinates of the base arc"));
    }
    let m = maximal_ideal(ring)?;
    let mbits = (m.len() as f64).log2();
    guard(mbits * (mo.num_variables() + mo.n * xi_prec) as f64)?;
    let points = enumerate_model_values(mo, ring)?;
    let base_xi: Vec<Vec<RingElem>> = mo
        .disk_base
        .iter()
        .map(|c| (0..xi_prec).map(|k| RingElem::from_scalar(ring, c.get(k).cloned().unwrap_or_else(|| mo.field.zero()))).collect())
        .collect();
    let mut out = Vec::new();
    for values in &points {
        for_each_tuple(&m, mo.n * xi_prec, |pert| {
            let xi = (0..mo.n)
                .map(|i| {
                    let cs = (0..xi_prec).map(|k| base_xi[i][k].add(pert[i * xi_prec + k])).collect();
                    TruncatedSeries::new(ring, cs, xi_prec)
                })
                .collect();
            out.push(ModelPoint::from_values(mo, ring, values, xi));
        });
    }
    Ok(out)
}

/// Outcome of [`run_oracle`].
#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub ring: String,
    pub precision: usize,
    pub r: usize,
    pub d: usize,
    pub deformations: usize,
    /// Number of jet classes `(x mod t^N, y mod t^N / q^r)` among them;
    /// these, not the deformations, correspond to model points.
    pub classes: usize,
    /// Size of the closed-form set and whether it equals the enumerated one
    /// (only for presentations of the Example's shape).
    pub closed_form: Option<(usize, bool)>,
    pub model_points: usize,
    pub xi_precision: usize,
    pub forward_injective: bool,
    pub forward_onto: bool,
    /// `inverse ∘ forward` returns every enumerated deformation, and every
    /// enumerated model point lifts into the enumerated set, at the
    /// precision the lift reaches.
    pub inverse_consistent: bool,
    /// Least precision reached by the lifts.
    pub lift_precision: usize,
    pub failures: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.closed_form.is_none_or(|(_, eq)| eq) && self.forward_injective && self.forward_onto && self.inverse_consistent
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "oracle over {} at precision {} with r = {}, d = {}", self.ring, self.precision, self.r, self.d)?;
        writeln!(f, "enumerated deformations: {}", self.deformations)?;
        writeln!(f, "jet classes (x mod t^N, y mod t^N/q^r): {}", self.classes)?;
        if let Some((n, eq)) = self.closed_form {
            writeln!(f, "closed-form deformations: {n} (set equality: {})", verdict(eq))?;
        }
        writeln!(f, "model points (ξ mod t^{}): {}", self.xi_precision, self.model_points)?;
        writeln!(f, "forward map injective: {}", verdict(self.forward_injective))?;
        writeln!(f, "forward map onto model points: {}", verdict(self.forward_onto))?;
        writeln!(
            f,
            "inverse map consistent (mod t^{}): {}",
            self.lift_precision,
            verdict(self.inverse_consistent)
        )?;
        for m in &self.failures {
            writeln!(f, "  {m}")?;
        }
        write!(f, "overall: {}", verdict(self.passed()))
    }
}

/// The quotient `t^N / g` for a monic `g` dividing `t^N`.
fn t_power_quotient(g: &Poly<RingElem>, n: usize) -> Result<Poly<RingElem>> {
    let zero = RingElem::zero(g.proto().ring());
    let mut tn = vec![zero.clone(); n];
    tn.push(RingElem::one(g.proto().ring()));
    let (s, rem) = Poly::new(&zero, tn).divmod_monic(g)?;
    if !rem.is_zero() {
        return Err(Error::precision(n + 1, n, "t^N must be divisible by the power of q"));
    }
    Ok(s)
}

/// What `γ mod t^N` is matched against: `x mod t^N` and `y` modulo
/// `t^N / q^r`. Given `x` and `ȳ`, the lift fixes `y` exactly this far; the
/// higher terms of `y mod t^N` depend on `x` beyond `t^N`.
fn jet_class(g: &Deformation, q: &Poly<RingElem>, n: usize, r: usize) -> Result<String> {
    let s = t_power_quotient(&q.pow(r as u32), n)?;
    let mut out = String::new();
    for (i, x) in g.x.iter().enumerate() {
        out.push_str(&format!("x{} = {}\n", i + 1, x.truncate(n)));
    }
    for (j, y) in g.y.iter().enumerate() {
        if y.precision() < n {
            return Err(Error::precision(n, y.precision(), "jet class of a deformation"));
        }
        let (_, rem) = y.truncate(n).to_poly().divmod_monic(&s)?;
        out.push_str(&format!("y{} = {rem} mod {s}\n", j + 1));
    }
    Ok(out)
}

/// Replace the disk coordinates of `forward_map(γ)` by their canonical form
/// as seen from `γ mod t^N`: writing `t^N = q^{r+1}·s`, the class of `x`
/// modulo `t^N` fixes `ξ` exactly modulo the distinguished polynomial `s`
/// (of degree `N − (r+1)d`), and the remainder is the canonical
/// representative. Only when `q = t^d` is this the same as `ξ mod t^{N−(r+1)d}`.
fn canonical_disk(pt: ModelPoint, g: &Deformation, n: usize, r: usize) -> Result<ModelPoint> {
    let qr1 = pt.q.pow(r as u32 + 1);
    let s = t_power_quotient(&qr1, n)?;
    let deg = s.degree().expect("monic");
    let xi = g
        .x
        .iter()
        .map(|x| {
            let (h, _) = x.truncate(n).to_poly().divmod_monic(&qr1)?;
            let (_, xi) = h.divmod_monic(&s)?;
            Ok(TruncatedSeries::new(&pt.ring, xi.into_coeffs(), deg))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ModelPoint { xi, ..pt })
}

/// Both enumerated sets in canonical text, for `--dump`.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleSets {
    pub deformations: Vec<Deformation>,
    pub closed_form: Option<Vec<Deformation>>,
    pub model_points: Vec<ModelPoint>,
}

impl OracleSets {
    pub fn render(&self, n: usize, xi_prec: usize) -> String {
        let mut out = String::new();
        let mut section = |title: &str, items: Vec<String>| {
            out.push_str(&format!("# {title} ({})\n", items.len()));
            for (i, s) in items.iter().enumerate() {
                out.push_str(&format!("[{}]\n{s}", i + 1));
            }
        };
        section("enumerated deformations", self.deformations.iter().map(|d| d.render(n)).collect());
        if let Some(c) = &self.closed_form {
            section("closed-form deformations", c.iter().map(|d| d.render(n)).collect());
        }
        section("model points", self.model_points.iter().map(|p| p.render(xi_prec)).collect());
        out
    }
}

/// Enumerate deformations modulo `t^N` and model points with `ξ` given by
/// polynomials of degree `< N − (r+1)d`, compare with the closed form when
/// available, and check that `forward_map` (with `ξ` reduced to its
/// canonical representative modulo `t^N / q^{r+1}`) is a bijection between
/// the two sets whose inverse is `inverse_map`.
pub fn run_oracle(
    pres: &VarietyPresentation,
    arc: &BaseArc,
    ring: &Arc<TestRing>,
    n: usize,
    r: usize,
) -> Result<(OracleReport, OracleSets)> {
    run_oracle_with(pres, arc, ring, n, r, &OracleOptions::default())
}

/// Knobs of [`run_oracle_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OracleOptions {
    /// Run the inverse map with this many more working terms (model points
    /// get `ξ` zero-padded further). The verdicts must not change.
    pub extra_precision: usize,
}

/// [`run_oracle`] with explicit options.
pub fn run_oracle_with(
    pres: &VarietyPresentation,
    arc: &BaseArc,
    ring: &Arc<TestRing>,
    n: usize,
    r: usize,
    opts: &OracleOptions,
) -> Result<(OracleReport, OracleSets)> {
    let defs = enumerate_deformations(pres, arc, ring, n)?;
    let closed = match ExampleFixture::detect(pres, arc) {
        Some(fix) => Some(example_deformations(&fix, ring, n)?),
        None => None,
    };
    let mo = build_model(pres, arc, r)?;
    let d = mo.d;
    let xi_prec = n
        .checked_sub((r + 1) * d)
        .ok_or_else(|| Error::precision((r + 1) * d, n, "model points need N ≥ (r+1)d"))?;
    let prep = ring.nilpotency() * d + 1;
    if d > 0 && n < prep {
        return Err(Error::precision(prep, n, "recovering q from det ∂p/∂y needs N > a·d"));
    }
    let points = enumerate_model_points(&mo, ring, xi_prec)?;
    let working = PrecisionPlan::with_reporting(n, ring.nilpotency(), d, r).working + opts.extra_precision;
    let lift_opts = LiftOptions::with_precision(working);
    let mut failures = Vec::new();

    let def_keys: BTreeSet<String> = defs.iter().map(|g| key(g, n)).collect();
    let closed_form = closed.as_ref().map(|c| {
        let ck: BTreeSet<String> = c.iter().map(|g| key(g, n)).collect();
        (c.len(), ck == def_keys)
    });

    let point_keys: BTreeSet<String> = points.iter().map(|p| p.render(xi_prec)).collect();
    let mut image_of: BTreeMap<String, String> = BTreeMap::new();
    let mut class_of: BTreeMap<String, String> = BTreeMap::new();
    let mut forward_injective = true;
    let mut lift_precision = n;
    let mut inverse_ok = true;
    let mut lift_back = |pt: &ModelPoint, failures: &mut Vec<String>| -> Option<String> {
        let back = inverse_map(pres, arc, &pt.padded(working), r, &lift_opts);
        match back.and_then(|b| {
            lift_precision = lift_precision.min(b.precision());
            jet_class(&b, &pt.q, n, r)
        }) {
            Ok(c) => Some(c),
            Err(e) => {
                failures.push(format!("inverse map failed: {e}"));
                None
            }
        }
    };
    for g in &defs {
        let (pt, class) = match forward_map(pres, g, r)
            .and_then(|pt| canonical_disk(pt, g, n, r))
            .and_then(|pt| jet_class(g, &pt.q, n, r).map(|c| (pt, c)))
        {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("forward map failed: {e}"));
                continue;
            }
        };
        match check_model_point(&mo, &pt)? {
            ModelCheck::Pass => {}
            other => failures.push(format!("forward image is not on the model: {other}")),
        }
        let image = pt.render(xi_prec);
        if class_of.get(&image).is_some_and(|c| *c != class) {
            forward_injective = false;
            failures.push("two jet classes share a model point".into());
        }
        if image_of.get(&class).is_some_and(|i| *i != image) {
            forward_injective = false;
            failures.push("one jet class has two model points".into());
        }
        class_of.insert(image.clone(), class.clone());
        image_of.insert(class.clone(), image);
        if lift_back(&pt, &mut failures).as_ref() != Some(&class) {
            inverse_ok = false;
            failures.push("inverse(forward(γ)) is not in the jet class of γ".into());
        }
    }
    let classes = image_of.len();
    let images: BTreeSet<String> = class_of.into_keys().collect();
    let forward_onto = images == point_keys;
    for pt in &points {
        match lift_back(pt, &mut failures) {
            Some(c) if image_of.contains_key(&c) => {}
            Some(_) => {
                inverse_ok = false;
                failures.push("a model point lifts outside the enumerated deformations".into());
            }
            None => inverse_ok = false,
        }
    }
    failures.sort();
    failures.dedup();
    let report = OracleReport {
        ring: ring.to_string(),
        precision: n,
        r,
        d,
        deformations: defs.len(),
        classes,
        closed_form,
        model_points: points.len(),
        xi_precision: xi_prec,
        forward_injective,
        forward_onto,
        inverse_consistent: inverse_ok,
        lift_precision,
        failures,
    };
    Ok((report, OracleSets { deformations: defs, closed_form: closed, model_points: points }))
}
