//! The finite model `Y(γ₀)`.
//!
//! With `q = t^d + Σ q_i t^i` generic, `x̄` of degree `< (r+1)d`, `ȳ` of
//! degree `< rd`, and `B = ∂p/∂y (x̄, ȳ)`, the model is cut out by the
//! coefficients of
//!
//! * `det B mod q` (the determinant condition, `d` equations),
//! * `p(x̄, ȳ) mod q^r` (the residual condition, `l·rd` equations),
//! * `adj(B)·p(x̄, ȳ) mod q^{r+1}` (the adjugate condition, `l·(r+1)d`
//!   equations).
//!
//! Deformations of `γ₀` over a test ring `A` correspond to `A`-points of
//! the model deforming the base point, together with free disk
//! coordinates `ξ` in the split `x = q^{r+1}·ξ + x̄`.

use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::algebra::{Field, RingElem, Scalar, TestRing};
use crate::arcspace::{compute_defect, BaseArc, VarietyPresentation};
use crate::error::{Condition, Error, Result};
use crate::series::{CommRing, ModPoly, MultiPoly, Poly, PolyMatrix, TruncatedSeries};

/// Schema tag of the JSON serialisation.
pub const MODEL_SCHEMA: &str = "formal-arcs/model/v1";

/// Which condition, which component and which power of `t` an equation is
/// the coefficient of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquationLabel {
    pub condition: Condition,
    /// Row index (0-based) for the residual and adjugate conditions.
    pub component: usize,
    pub power: usize,
}

impl fmt::Display for EquationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.condition {
            Condition::Determinant => write!(f, "det B mod q, t^{}", self.power),
            Condition::Residual => write!(f, "p{} mod q^r, t^{}", self.component + 1, self.power),
            Condition::Adjugate => write!(f, "(adj(B)·p)_{} mod q^(r+1), t^{}", self.component + 1, self.power),
        }
    }
}

/// The generated equations of `Y(γ₀)` with their base point.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelOutput {
    pub field: Field,
    pub n: usize,
    pub l: usize,
    pub d: usize,
    pub r: usize,
    /// `d = 0`: no equations, deformations are disk coordinates only.
    pub trivial: bool,
    pub vars: Arc<Vec<String>>,
    pub equations: Vec<MultiPoly>,
    pub labels: Vec<EquationLabel>,
    /// `k`-values of the variables at the base point, in variable order.
    pub base_point: Vec<Scalar>,
    /// Coefficients of `ξ⁰ = x⁰ div t^{(r+1)d}`, known to `disk_precision`.
    pub disk_base: Vec<Vec<Scalar>>,
    pub disk_precision: usize,
}

/// Variable names `q0.., x1_0.., y1_0..` for the given shape.
pub fn model_variables(n: usize, l: usize, d: usize, r: usize) -> Arc<Vec<String>> {
    let mut v: Vec<String> = (0..d).map(|i| format!("q{i}")).collect();
    for i in 1..=n {
        v.extend((0..(r + 1) * d).map(|k| format!("x{i}_{k}")));
    }
    for j in 1..=l {
        v.extend((0..r * d).map(|k| format!("y{j}_{k}")));
    }
    Arc::new(v)
}

fn labels_for(l: usize, d: usize, r: usize) -> Vec<EquationLabel> {
    let mut out: Vec<EquationLabel> = (0..d)
        .map(|k| EquationLabel { condition: Condition::Determinant, component: 0, power: k })
        .collect();
    for i in 0..l {
        out.extend((0..r * d).map(|k| EquationLabel { condition: Condition::Residual, component: i, power: k }));
    }
    for i in 0..l {
        out.extend((0..(r + 1) * d).map(|k| EquationLabel { condition: Condition::Adjugate, component: i, power: k }));
    }
    out
}

impl ModelOutput {
    pub fn num_variables(&self) -> usize {
        self.vars.len()
    }

    /// Index of the coefficient `q_k`.
    pub fn q_index(&self, k: usize) -> usize {
        k
    }

    /// Index of the coefficient `k` of `x̄_i` (0-based `i`).
    pub fn x_index(&self, i: usize, k: usize) -> usize {
        self.d + i * (self.r + 1) * self.d + k
    }

    /// Index of the coefficient `k` of `ȳ_j` (0-based `j`).
    pub fn y_index(&self, j: usize, k: usize) -> usize {
        self.d + self.n * (self.r + 1) * self.d + j * self.r * self.d + k
    }

    /// Base point as `name → value`.
    pub fn base_point_map(&self) -> IndexMap<String, Scalar> {
        self.vars.iter().cloned().zip(self.base_point.iter().cloned()).collect()
    }

    /// JSON rendering (schema [`MODEL_SCHEMA`]).
    pub fn to_json(&self) -> String {
        let doc = ModelJson {
            schema: MODEL_SCHEMA.to_string(),
            field: self.field.to_string(),
            n: self.n,
            l: self.l,
            d: self.d,
            r: self.r,
            trivial: self.trivial,
            variables: self.vars.to_vec(),
            equations: self.equations.iter().map(|e| e.to_string()).collect(),
            base_point: self
                .vars
                .iter()
                .zip(&self.base_point)
                .map(|(v, c)| (v.clone(), c.to_string()))
                .collect(),
            disk_precision: self.disk_precision,
            disk_base: self
                .disk_base
                .iter()
                .map(|c| c.iter().map(|s| s.to_string()).collect())
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("serialisable");
        s.push('\n');
        s
    }

    /// Inverse of [`ModelOutput::to_json`].
    pub fn from_json(src: &str) -> Result<ModelOutput> {
        let doc: ModelJson = serde_json::from_str(src).map_err(|e| Error::Parse {
            position: e.column(),
            message: format!("model JSON: {e}"),
        })?;
        if doc.schema != MODEL_SCHEMA {
            return Err(Error::structural(format!("unknown model schema `{}`", doc.schema)));
        }
        let field: Field = doc.field.parse()?;
        let vars = model_variables(doc.n, doc.l, doc.d, doc.r);
        if *vars != doc.variables {
            return Err(Error::structural("variable list does not match the model shape"));
        }
        let equations = doc
            .equations
            .iter()
            .map(|e| crate::parse::parse_polynomial(e, field, &vars))
            .collect::<Result<Vec<_>>>()?;
        let base_point = vars
            .iter()
            .map(|v| {
                let s = doc
                    .base_point
                    .get(v)
                    .ok_or_else(|| Error::structural(format!("base point lacks `{v}`")))?;
                field.parse_scalar(s)
            })
            .collect::<Result<Vec<_>>>()?;
        let disk_base = doc
            .disk_base
            .iter()
            .map(|c| c.iter().map(|s| field.parse_scalar(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let labels = if doc.trivial { Vec::new() } else { labels_for(doc.l, doc.d, doc.r) };
        if labels.len() != equations.len() {
            return Err(Error::structural("equation count does not match the model shape"));
        }
        Ok(ModelOutput {
            field,
            n: doc.n,
            l: doc.l,
            d: doc.d,
            r: doc.r,
            trivial: doc.trivial,
            vars,
            equations,
            labels,
            base_point,
            disk_base,
            disk_precision: doc.disk_precision,
        })
    }

    /// The equations as an ideal in Singular syntax.
    pub fn to_singular(&self) -> String {
        let mut s = format!(
            "ring R = {},({}),dp;\n",
            self.field.characteristic(),
            if self.vars.is_empty() { "t".to_string() } else { self.vars.join(",") }
        );
        s.push_str("ideal I =\n");
        if self.equations.is_empty() {
            s.push_str("  0;\n");
        } else {
            let gens: Vec<String> = self.equations.iter().map(|e| format!("  {e}")).collect();
            s.push_str(&gens.join(",\n"));
            s.push_str(";\n");
        }
        s
    }
}

impl fmt::Display for ModelOutput {
    /// Human-readable rendering: shape, variables, labelled equations and
    /// the base point.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "model over {} with n = {}, l = {}, d = {}, r = {}", self.field, self.n, self.l, self.d, self.r)?;
        if self.trivial {
            writeln!(f, "d = 0: the model is a point; deformations are disk coordinates only")?;
        }
        writeln!(f, "{} variables: {}", self.num_variables(), self.vars.join(", "))?;
        writeln!(f, "{} equations:", self.equations.len())?;
        for (e, lab) in self.equations.iter().zip(&self.labels) {
            writeln!(f, "  [{lab}] {e} = 0")?;
        }
        let base: Vec<String> = self.vars.iter().zip(&self.base_point).map(|(v, c)| format!("{v} = {c}")).collect();
        write!(f, "base point: {}", if base.is_empty() { "(empty)".to_string() } else { base.join(", ") })
    }
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    schema: String,
    field: String,
    n: usize,
    l: usize,
    d: usize,
    r: usize,
    trivial: bool,
    variables: Vec<String>,
    equations: Vec<String>,
    base_point: IndexMap<String, String>,
    disk_precision: usize,
    disk_base: Vec<Vec<String>>,
}

/// Residues of the three conditions for given `(q, x̄, ȳ)` over any
/// coefficient ring: `det B mod q`, `p mod q^r`, `adj(B)·p mod q^{r+1}`.
pub struct ConditionResidues<C> {
    pub det_mod_q: Poly<C>,
    pub p_mod_qr: Vec<Poly<C>>,
    pub adj_p_mod_qr1: Vec<Poly<C>>,
}

/// Evaluate the conditions. `x̄`, `ȳ` may be any representatives; they are
/// reduced modulo `q^{r+1}` first.
pub fn condition_residues<C: CommRing>(
    pres: &VarietyPresentation,
    q: &Poly<C>,
    xbar: &[Poly<C>],
    ybar: &[Poly<C>],
    r: usize,
) -> Result<ConditionResidues<C>> {
    if !q.is_monic() {
        return Err(Error::NotMonic);
    }
    let qr = q.pow(r as u32);
    let qr1 = Arc::new(qr.mul(q));
    let point = xbar
        .iter()
        .chain(ybar)
        .map(|v| ModPoly::new(&qr1, v))
        .collect::<Result<Vec<_>>>()?;
    let pv = pres
        .equations()
        .iter()
        .map(|p| p.eval(&point))
        .collect::<Result<Vec<_>>>()?;
    let jac = pres.jacobian_y();
    let l = pres.l();
    let entries = (0..l * l)
        .map(|k| jac.get(k / l, k % l).eval(&point))
        .collect::<Result<Vec<_>>>()?;
    let b = PolyMatrix::new(l, l, entries)?;
    let (det, adj) = b.det_and_adjugate()?;
    let w = adj.mul_vec(&pv)?;
    Ok(ConditionResidues {
        det_mod_q: det.rep().rem_monic(q)?,
        p_mod_qr: pv.iter().map(|v| v.rep().rem_monic(&qr)).collect::<Result<Vec<_>>>()?,
        adj_p_mod_qr1: w.iter().map(|v| v.rep().clone()).collect(),
    })
}

impl<C: CommRing> ConditionResidues<C> {
    /// The first violated condition, if any.
    pub fn first_violation(&self) -> Option<Condition> {
        if !self.det_mod_q.is_zero() {
            Some(Condition::Determinant)
        } else if self.p_mod_qr.iter().any(|p| !p.is_zero()) {
            Some(Condition::Residual)
        } else if self.adj_p_mod_qr1.iter().any(|p| !p.is_zero()) {
            Some(Condition::Adjugate)
        } else {
            None
        }
    }
}

/// Generate the model `Y(γ₀)` for the parameter `r ≥ 1`.
pub fn build_model(pres: &VarietyPresentation, arc: &BaseArc, r: usize) -> Result<ModelOutput> {
    if r == 0 {
        return Err(Error::structural("r must be at least 1"));
    }
    let d = compute_defect(pres, arc)?;
    let (n, l, field) = (pres.n(), pres.l(), pres.field());
    let need = (r + 1) * d;
    if arc.precision() < need {
        return Err(Error::precision(need, arc.precision(), "base point of the model needs x⁰ mod t^((r+1)d)"));
    }
    let disk_precision = arc.precision() - need;
    let disk_base: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (need..arc.precision()).map(|k| arc.x_coeff(i, k)).collect::<Vec<_>>())
        .map(|mut c| {
            while c.last().is_some_and(Scalar::is_zero) {
                c.pop();
            }
            c
        })
        .collect();
    let vars = model_variables(n, l, d, r);
    if d == 0 {
        return Ok(ModelOutput {
            field,
            n,
            l,
            d,
            r,
            trivial: true,
            vars,
            equations: Vec::new(),
            labels: Vec::new(),
            base_point: Vec::new(),
            disk_base,
            disk_precision,
        });
    }
    let var = |i: usize| MultiPoly::variable(field, vars.clone(), i);
    let zero = MultiPoly::zero(field, vars.clone());
    let mut qc: Vec<MultiPoly> = (0..d).map(var).collect();
    qc.push(zero.one_like());
    let q = Poly::new(&zero, qc);
    let shape = ModelOutput {
        field,
        n,
        l,
        d,
        r,
        trivial: false,
        vars: vars.clone(),
        equations: Vec::new(),
        labels: labels_for(l, d, r),
        base_point: Vec::new(),
        disk_base,
        disk_precision,
    };
    let xbar: Vec<Poly<MultiPoly>> = (0..n)
        .map(|i| Poly::new(&zero, (0..(r + 1) * d).map(|k| var(shape.x_index(i, k))).collect()))
        .collect();
    let ybar: Vec<Poly<MultiPoly>> = (0..l)
        .map(|j| Poly::new(&zero, (0..r * d).map(|k| var(shape.y_index(j, k))).collect()))
        .collect();
    let res = condition_residues(pres, &q, &xbar, &ybar, r)?;
    let mut equations = res.det_mod_q.padded(d);
    for p in &res.p_mod_qr {
        equations.extend(p.padded(r * d));
    }
    for w in &res.adj_p_mod_qr1 {
        equations.extend(w.padded((r + 1) * d));
    }
    let mut base_point = vec![field.zero(); vars.len()];
    for i in 0..n {
        for k in 0..(r + 1) * d {
            base_point[shape.x_index(i, k)] = arc.x_coeff(i, k);
        }
    }
    for j in 0..l {
        for k in 0..r * d {
            base_point[shape.y_index(j, k)] = arc.y_coeff(j, k);
        }
    }
    Ok(ModelOutput { equations, base_point, ..shape })
}

/// An `A`-point of the model with disk coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelPoint {
    pub ring: Arc<TestRing>,
    pub q: Poly<RingElem>,
    pub xbar: Vec<Poly<RingElem>>,
    pub ybar: Vec<Poly<RingElem>>,
    pub xi: Vec<TruncatedSeries>,
}

impl ModelPoint {
    /// Assemble from values of the model variables (in variable order).
    pub fn from_values(mo: &ModelOutput, ring: &Arc<TestRing>, values: &[RingElem], xi: Vec<TruncatedSeries>) -> ModelPoint {
        let zero = RingElem::zero(ring);
        let mut qc: Vec<RingElem> = (0..mo.d).map(|k| values[mo.q_index(k)].clone()).collect();
        qc.push(RingElem::one(ring));
        ModelPoint {
            ring: ring.clone(),
            q: Poly::new(&zero, qc),
            xbar: (0..mo.n)
                .map(|i| Poly::new(&zero, (0..(mo.r + 1) * mo.d).map(|k| values[mo.x_index(i, k)].clone()).collect()))
                .collect(),
            ybar: (0..mo.l)
                .map(|j| Poly::new(&zero, (0..mo.r * mo.d).map(|k| values[mo.y_index(j, k)].clone()).collect()))
                .collect(),
            xi,
        }
    }

    /// Values of the model variables, in variable order.
    pub fn values(&self, mo: &ModelOutput) -> Vec<RingElem> {
        let mut v = vec![RingElem::zero(&self.ring); mo.num_variables()];
        for k in 0..mo.d {
            v[mo.q_index(k)] = self.q.coeff(k).clone();
        }
        for (i, x) in self.xbar.iter().enumerate() {
            for k in 0..(mo.r + 1) * mo.d {
                v[mo.x_index(i, k)] = x.coeff(k).clone();
            }
        }
        for (j, y) in self.ybar.iter().enumerate() {
            for k in 0..mo.r * mo.d {
                v[mo.y_index(j, k)] = y.coeff(k).clone();
            }
        }
        v
    }

    /// The base point over `A` with `ξ = ξ⁰` known mod `t^xi_prec`.
    pub fn base(mo: &ModelOutput, ring: &Arc<TestRing>, xi_prec: usize) -> ModelPoint {
        let values: Vec<RingElem> = mo.base_point.iter().map(|c| RingElem::from_scalar(ring, c.clone())).collect();
        let xi = mo
            .disk_base
            .iter()
            .map(|c| TruncatedSeries::from_scalars(ring, c, xi_prec.min(mo.disk_precision)))
            .collect();
        ModelPoint::from_values(mo, ring, &values, xi)
    }

    /// `x = q^{r+1}·ξ + x̄`.
    pub fn reconstruct_x(&self, r: usize) -> Vec<TruncatedSeries> {
        let qr1 = self.q.pow(r as u32 + 1);
        self.xi
            .iter()
            .zip(&self.xbar)
            .map(|(xi, xb)| xi.mul_poly(&qr1).add(&TruncatedSeries::from_poly(xb, crate::series::EXACT)))
            .collect()
    }

    /// The same point with `ξ` taken as known modulo `t^prec`, padding the
    /// unknown coefficients with zeros (one representative among many).
    pub fn padded(&self, prec: usize) -> ModelPoint {
        let xi = self
            .xi
            .iter()
            .map(|s| TruncatedSeries::new(&self.ring, s.coeffs().to_vec(), prec.max(s.precision())))
            .collect();
        ModelPoint { xi, ..self.clone() }
    }

    /// Least precision among the disk coordinates.
    pub fn xi_precision(&self) -> usize {
        self.xi.iter().map(TruncatedSeries::precision).min().unwrap_or(crate::series::EXACT)
    }

    /// Canonical text with `ξ` modulo `t^xi_prec`.
    pub fn render(&self, xi_prec: usize) -> String {
        let mut out = format!("q = {}\n", self.q);
        for (i, x) in self.xbar.iter().enumerate() {
            out.push_str(&format!("xbar{} = {x}\n", i + 1));
        }
        for (j, y) in self.ybar.iter().enumerate() {
            out.push_str(&format!("ybar{} = {y}\n", j + 1));
        }
        for (i, xi) in self.xi.iter().enumerate() {
            out.push_str(&format!("xi{} = {}\n", i + 1, xi.truncate(xi_prec)));
        }
        out
    }

    /// Equality with `q`, `x̄`, `ȳ` exact and `ξ` modulo `t^xi_prec`.
    pub fn eq_at(&self, other: &ModelPoint, xi_prec: usize) -> bool {
        self.q == other.q
            && self.xbar == other.xbar
            && self.ybar == other.ybar
            && self.xi.len() == other.xi.len()
            && self.xi.iter().zip(&other.xi).all(|(a, b)| a.eq_mod(b, xi_prec))
    }
}

impl fmt::Display for ModelPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(self.xi_precision()))
    }
}

/// `x = q^{r+1}·ξ + x̄` with `deg x̄ < (r+1)·deg q`.
pub fn split_x(x: &[TruncatedSeries], q: &Poly<RingElem>, r: usize) -> Result<(Vec<Poly<RingElem>>, Vec<TruncatedSeries>)> {
    let qr1 = q.pow(r as u32 + 1);
    let mut xbar = Vec::with_capacity(x.len());
    let mut xi = Vec::with_capacity(x.len());
    for s in x {
        let (h, rem) = s.divmod_monic(&qr1)?;
        xbar.push(rem);
        xi.push(h);
    }
    Ok((xbar, xi))
}

/// Result of [`check_model_point`].
#[derive(Clone, Debug, PartialEq)]
pub enum ModelCheck {
    Pass,
    /// The first equation not vanishing at the point.
    EquationFails { index: usize, label: EquationLabel, value: RingElem },
    /// The point does not reduce to the base point modulo `m`.
    WrongReduction(String),
}

impl ModelCheck {
    pub fn passed(&self) -> bool {
        matches!(self, ModelCheck::Pass)
    }
}

impl fmt::Display for ModelCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelCheck::Pass => write!(f, "pass"),
            ModelCheck::EquationFails { index, label, value } => {
                write!(f, "equation {} ({label}) evaluates to {value}", index + 1)
            }
            ModelCheck::WrongReduction(m) => write!(f, "wrong reduction modulo m: {m}"),
        }
    }
}

/// Substitute the point into every model equation over `A`, after checking
/// shape and reduction modulo `m`.
pub fn check_model_point(mo: &ModelOutput, pt: &ModelPoint) -> Result<ModelCheck> {
    let (d, r) = (mo.d, mo.r);
    if pt.ring.field() != mo.field || pt.xbar.len() != mo.n || pt.ybar.len() != mo.l || pt.xi.len() != mo.n {
        return Err(Error::structural("model point does not have the model's shape"));
    }
    if !pt.q.is_monic() || pt.q.degree() != Some(d) {
        return Err(Error::structural(format!("q must be monic of degree {d}")));
    }
    if pt.xbar.iter().any(|x| x.len() > (r + 1) * d) || pt.ybar.iter().any(|y| y.len() > r * d) {
        return Err(Error::structural("x̄ or ȳ exceeds its degree bound"));
    }
    if !pt.q.is_distinguished() {
        return Ok(ModelCheck::WrongReduction("q is not t^d modulo m".into()));
    }
    let values = pt.values(mo);
    for (k, (v, b)) in values.iter().zip(&mo.base_point).enumerate() {
        if v.residue() != b {
            return Ok(ModelCheck::WrongReduction(format!("{} reduces to {}, expected {b}", mo.vars[k], v.residue())));
        }
    }
    for (i, xi) in pt.xi.iter().enumerate() {
        for k in 0..xi.precision().min(mo.disk_precision) {
            let expect = mo.disk_base[i].get(k).cloned().unwrap_or_else(|| mo.field.zero());
            if *xi.coeff(k).residue() != expect {
                return Ok(ModelCheck::WrongReduction(format!("xi{} coefficient {k} reduces incorrectly", i + 1)));
            }
        }
    }
    for (idx, e) in mo.equations.iter().enumerate() {
        let value = if values.is_empty() {
            RingElem::from_scalar(&pt.ring, e.as_constant().unwrap_or_else(|| mo.field.zero()))
        } else {
            e.eval(&values)?
        };
        if !value.is_zero() {
            return Ok(ModelCheck::EquationFails { index: idx, label: mo.labels[idx], value });
        }
    }
    Ok(ModelCheck::Pass)
}

/// First violated condition for `(q, x, ȳ)` over `A`, evaluated directly
/// (without the generated equations). `x` may be a full series; only
/// `x mod q^{r+1}` matters.
pub fn check_conditions(
    pres: &VarietyPresentation,
    q: &Poly<RingElem>,
    x: &[TruncatedSeries],
    ybar: &[Poly<RingElem>],
    r: usize,
) -> Result<Option<Condition>> {
    let (xbar, _) = split_x(x, q, r)?;
    Ok(condition_residues(pres, q, &xbar, ybar, r)?.first_violation())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> (VarietyPresentation, BaseArc) {
        let q = Field::Rationals;
        (
            VarietyPresentation::parse(q, 2, 1, &["y1*x2 + x1^2"]).unwrap(),
            BaseArc::from_ints(q, &[&[], &[0, 1]], &[&[]], 16).unwrap(),
        )
    }

    #[test]
    fn example_model_equations() {
        let (pres, arc) = example();
        let mo = build_model(&pres, &arc, 1).unwrap();
        assert_eq!(mo.vars.join(","), "q0,x1_0,x1_1,x2_0,x2_1,y1_0");
        let shown: Vec<String> = mo.equations.iter().map(|e| e.to_string()).collect();
        assert_eq!(
            shown,
            [
                "-q0*x2_1 + x2_0",
                "q0^2*x1_1^2 - 2*q0*x1_0*x1_1 - q0*x2_1*y1_0 + x1_0^2 + x2_0*y1_0",
                "-q0^2*x1_1^2 + x1_0^2 + x2_0*y1_0",
                "-2*q0*x1_1^2 + 2*x1_0*x1_1 + x2_1*y1_0",
            ]
        );
        let base: Vec<String> = mo.base_point.iter().map(|s| s.to_string()).collect();
        assert_eq!(base, ["0", "0", "0", "0", "1", "0"]);
    }

    #[test]
    fn json_and_singular() {
        let (pres, arc) = example();
        let mo = build_model(&pres, &arc, 1).unwrap();
        let js = mo.to_json();
        assert_eq!(ModelOutput::from_json(&js).unwrap(), mo);
        let sing = mo.to_singular();
        assert!(sing.starts_with("ring R = 0,(q0,x1_0,x1_1,x2_0,x2_1,y1_0),dp;"));
    }

    #[test]
    fn split() {
        let r = Arc::new("Q[e]/e^2".parse::<TestRing>().unwrap());
        let zero = RingElem::zero(&r);
        let e = r.parse_element("e").unwrap();
        let q = Poly::new(&zero, vec![e.clone(), RingElem::one(&r)]);
        // x = (t+e)^2 (1+t) + e t
        let x = TruncatedSeries::from_poly(&q.pow(2).mul(&Poly::new(&zero, vec![RingElem::one(&r), RingElem::one(&r)])), 12)
            .add(&TruncatedSeries::exact(&r, vec![zero.clone(), e.clone()]));
        let (xbar, xi) = split_x(&[x], &q, 1).unwrap();
        assert_eq!(xbar[0], Poly::new(&zero, vec![zero.clone(), e.clone()]));
        assert!(xi[0].eq_mod(&TruncatedSeries::exact(&r, vec![RingElem::one(&r), RingElem::one(&r)]), xi[0].precision()));
    }
}
