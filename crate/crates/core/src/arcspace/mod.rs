//! Complete-intersection presentations, base arcs and their deformations.

mod format;

use std::fmt;
use std::sync::Arc;

pub use format::ArcProblem;

use crate::algebra::{Field, RingElem, Scalar, TestRing};
use crate::error::{Error, Result};
use crate::series::{MultiPoly, PolyMatrix, TruncatedSeries};
use crate::weierstrass::weierstrass_prepare;

pub use crate::equivalence::{deform_with, random_deformation};

/// `X = {p₁ = … = p_l = 0}` in `Spec k[x₁..x_n, y₁..y_l]`.
#[derive(Clone, Debug, PartialEq)]
pub struct VarietyPresentation {
    field: Field,
    n: usize,
    l: usize,
    vars: Arc<Vec<String>>,
    p: Vec<MultiPoly>,
}

/// Variable names `x1..xn, y1..yl`.
pub fn standard_variables(n: usize, l: usize) -> Arc<Vec<String>> {
    Arc::new(
        (1..=n)
            .map(|i| format!("x{i}"))
            .chain((1..=l).map(|j| format!("y{j}")))
            .collect(),
    )
}

impl VarietyPresentation {
    pub fn new(field: Field, n: usize, l: usize, p: Vec<MultiPoly>) -> Result<VarietyPresentation> {
        if l == 0 {
            return Err(Error::structural("a presentation needs at least one equation"));
        }
        if p.len() != l {
            return Err(Error::structural(format!(
                "complete intersection with {l} y-variables needs {l} equations, got {}",
                p.len()
            )));
        }
        let vars = standard_variables(n, l);
        for (i, pi) in p.iter().enumerate() {
            if pi.vars() != &vars || pi.field() != field {
                return Err(Error::structural(format!(
                    "equation p{} is not a polynomial over {field} in {}",
                    i + 1,
                    vars.join(", ")
                )));
            }
        }
        Ok(VarietyPresentation { field, n, l, vars, p })
    }

    /// Parse the equations from expressions in `x1..xn, y1..yl`.
    pub fn parse(field: Field, n: usize, l: usize, exprs: &[&str]) -> Result<VarietyPresentation> {
        let vars = standard_variables(n, l);
        let p = exprs
            .iter()
            .map(|e| crate::parse::parse_polynomial(e, field, &vars))
            .collect::<Result<Vec<_>>>()?;
        VarietyPresentation::new(field, n, l, p)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn equations(&self) -> &[MultiPoly] {
        &self.p
    }

    /// Indices of the y-variables.
    pub fn y_indices(&self) -> Vec<usize> {
        (self.n..self.n + self.l).collect()
    }

    /// `∂p/∂y` as an `l×l` matrix of polynomials.
    pub fn jacobian_y(&self) -> PolyMatrix<MultiPoly> {
        jacobian_block(&self.p, &self.y_indices()).expect("l equations, l y-variables")
    }

    /// `p(x, y)` for series `x`, `y`.
    pub fn residual(&self, x: &[TruncatedSeries], y: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
        eval_poly_system(&self.p, &concat(x, y))
    }

    /// `det ∂p/∂y (x, y)`.
    pub fn jacobian_det(&self, x: &[TruncatedSeries], y: &[TruncatedSeries]) -> Result<TruncatedSeries> {
        self.jacobian_at(x, y)?.det()
    }

    /// `∂p/∂y (x, y)`.
    pub fn jacobian_at(&self, x: &[TruncatedSeries], y: &[TruncatedSeries]) -> Result<PolyMatrix<TruncatedSeries>> {
        let point = concat(x, y);
        let jac = self.jacobian_y();
        let entries = (0..self.l)
            .flat_map(|i| (0..self.l).map(move |j| (i, j)))
            .map(|(i, j)| jac.get(i, j).eval(&point))
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(self.l, self.l, entries)
    }
}

fn concat(x: &[TruncatedSeries], y: &[TruncatedSeries]) -> Vec<TruncatedSeries> {
    x.iter().chain(y).cloned().collect()
}

/// Substitute series for the variables (in order) in every polynomial.
pub fn eval_poly_system(p: &[MultiPoly], point: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
    if let Some(first) = point.first() {
        if point.iter().any(|s| **s.ring() != **first.ring()) {
            return Err(Error::structural("values live in different test rings"));
        }
    }
    p.iter()
        .map(|pi| {
            if pi.vars().len() != point.len() {
                return Err(Error::structural(format!(
                    "{} variables need values, {} were assigned",
                    pi.vars().len(),
                    point.len()
                )));
            }
            pi.eval(point)
        })
        .collect()
}

/// The matrix `∂p_i/∂v_j` for the variables with the given indices.
pub fn jacobian_block(p: &[MultiPoly], yvars: &[usize]) -> Result<PolyMatrix<MultiPoly>> {
    if p.len() != yvars.len() {
        return Err(Error::structural(format!(
            "{} equations against {} variables",
            p.len(),
            yvars.len()
        )));
    }
    let entries = p
        .iter()
        .flat_map(|pi| yvars.iter().map(move |&j| pi.derivative(j)))
        .collect();
    PolyMatrix::new(p.len(), yvars.len(), entries)
}

/// A formal arc `γ₀ = (x⁰(t), y⁰(t))` with coefficients in `k`, known
/// modulo `t^N`.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseArc {
    field: Field,
    x0: Vec<Vec<Scalar>>,
    y0: Vec<Vec<Scalar>>,
    precision: usize,
}

fn trim(mut v: Vec<Scalar>) -> Vec<Scalar> {
    while v.last().is_some_and(Scalar::is_zero) {
        v.pop();
    }
    v
}

impl BaseArc {
    pub fn new(field: Field, x0: Vec<Vec<Scalar>>, y0: Vec<Vec<Scalar>>, precision: usize) -> Result<BaseArc> {
        for c in x0.iter().chain(&y0) {
            if c.len() > precision {
                return Err(Error::structural(format!(
                    "arc component has {} coefficients but precision {precision}",
                    c.len()
                )));
            }
            if c.iter().any(|s| s.field() != field) {
                return Err(Error::structural("arc coefficient from a different field"));
            }
        }
        Ok(BaseArc {
            field,
            x0: x0.into_iter().map(trim).collect(),
            y0: y0.into_iter().map(trim).collect(),
            precision,
        })
    }

    /// Build from integer coefficient lists.
    pub fn from_ints(field: Field, x0: &[&[i64]], y0: &[&[i64]], precision: usize) -> Result<BaseArc> {
        let conv = |v: &[&[i64]]| -> Vec<Vec<Scalar>> {
            v.iter().map(|c| c.iter().map(|&a| field.from_i64(a)).collect()).collect()
        };
        BaseArc::new(field, conv(x0), conv(y0), precision)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.x0.len()
    }

    pub fn l(&self) -> usize {
        self.y0.len()
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn x0(&self) -> &[Vec<Scalar>] {
        &self.x0
    }

    pub fn y0(&self) -> &[Vec<Scalar>] {
        &self.y0
    }

    /// Coefficient `k` of `x⁰_i` (zero-padded; `k` below the precision).
    pub fn x_coeff(&self, i: usize, k: usize) -> Scalar {
        self.x0[i].get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn y_coeff(&self, j: usize, k: usize) -> Scalar {
        self.y0[j].get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// The same arc known to a lower precision.
    pub fn truncated(&self, n: usize) -> BaseArc {
        let n = n.min(self.precision);
        let cut = |v: &Vec<Vec<Scalar>>| v.iter().map(|c| trim(c.iter().take(n).cloned().collect())).collect();
        BaseArc {
            field: self.field,
            x0: cut(&self.x0),
            y0: cut(&self.y0),
            precision: n,
        }
    }

    /// `x⁰` as series over `A`, modulo `t^min(N, prec)`.
    pub fn x_series(&self, ring: &Arc<TestRing>, prec: usize) -> Vec<TruncatedSeries> {
        let n = prec.min(self.precision);
        self.x0.iter().map(|c| TruncatedSeries::from_scalars(ring, c, n)).collect()
    }

    pub fn y_series(&self, ring: &Arc<TestRing>, prec: usize) -> Vec<TruncatedSeries> {
        let n = prec.min(self.precision);
        self.y0.iter().map(|c| TruncatedSeries::from_scalars(ring, c, n)).collect()
    }

    /// The arc itself as a deformation over `A` (the trivial one).
    pub fn embed(&self, ring: &Arc<TestRing>, prec: usize) -> Deformation {
        Deformation {
            ring: ring.clone(),
            x: self.x_series(ring, prec),
            y: self.y_series(ring, prec),
        }
    }
}

/// An `A`-deformation `(x(t), y(t))` of the base arc.
#[derive(Clone, Debug, PartialEq)]
pub struct Deformation {
    pub ring: Arc<TestRing>,
    pub x: Vec<TruncatedSeries>,
    pub y: Vec<TruncatedSeries>,
}

impl Deformation {
    /// Least precision among the components.
    pub fn precision(&self) -> usize {
        self.x.iter().chain(&self.y).map(TruncatedSeries::precision).min().unwrap_or(0)
    }

    /// All components modulo `t^n`.
    pub fn truncate(&self, n: usize) -> Deformation {
        Deformation {
            ring: self.ring.clone(),
            x: self.x.iter().map(|s| s.truncate(n)).collect(),
            y: self.y.iter().map(|s| s.truncate(n)).collect(),
        }
    }

    /// Reduction modulo `m` agrees with the base arc at the common precision.
    pub fn reduces_to(&self, arc: &BaseArc) -> bool {
        let n = self.precision().min(arc.precision());
        let comp = |s: &TruncatedSeries, c: &dyn Fn(usize) -> Scalar| (0..n).all(|k| *s.coeff(k).residue() == c(k));
        self.x.len() == arc.n()
            && self.y.len() == arc.l()
            && self.x.iter().enumerate().all(|(i, s)| comp(s, &|k| arc.x_coeff(i, k)))
            && self.y.iter().enumerate().all(|(j, s)| comp(s, &|k| arc.y_coeff(j, k)))
    }

    /// `p(x, y) = 0` to the precision it is known.
    pub fn is_solution(&self, pres: &VarietyPresentation) -> Result<bool> {
        Ok(pres.residual(&self.x, &self.y)?.iter().all(TruncatedSeries::is_zero))
    }

    /// Canonical text at precision `n`: one line per component.
    pub fn render(&self, n: usize) -> String {
        let mut out = String::new();
        for (i, s) in self.x.iter().enumerate() {
            out.push_str(&format!("x{} = {}\n", i + 1, s.truncate(n)));
        }
        for (j, s) in self.y.iter().enumerate() {
            out.push_str(&format!("y{} = {}\n", j + 1, s.truncate(n)));
        }
        out
    }
}

impl fmt::Display for Deformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(self.precision()))
    }
}

/// Outcome of checking the hypotheses on `(X, γ₀)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// `t`-order of `det ∂p/∂y (γ₀)` — the defect `d`.
    pub det_order: usize,
    /// Precision to which `p(γ₀) = 0` was verified.
    pub precision: usize,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "arc lies on X modulo t^{}; det(dp/dy) along the arc has t-order {}",
            self.precision, self.det_order
        )
    }
}

/// Check that `γ₀` lies on `X` and is not inside `det ∂p/∂y = 0`.
pub fn validate(pres: &VarietyPresentation, arc: &BaseArc) -> Result<ValidationReport> {
    if arc.n() != pres.n() || arc.l() != pres.l() || arc.field() != pres.field() {
        return Err(Error::structural(format!(
            "arc has {} x- and {} y-components over {}, presentation expects {} and {} over {}",
            arc.n(),
            arc.l(),
            arc.field(),
            pres.n(),
            pres.l(),
            pres.field()
        )));
    }
    let k = Arc::new(TestRing::residue_field(arc.field()));
    let n = arc.precision();
    let x = arc.x_series(&k, n);
    let y = arc.y_series(&k, n);
    for (i, r) in pres.residual(&x, &y)?.iter().enumerate() {
        if let Some(order) = r.coeffs().iter().take(n).position(|c| !c.is_zero()) {
            return Err(Error::ArcNotOnVariety { index: i + 1, order });
        }
    }
    let det = pres.jacobian_det(&x, &y)?.truncate(n);
    let det_order = det
        .residue_order()
        .ok_or(Error::ArcInDegeneracyLocus { precision: det.precision() })?;
    Ok(ValidationReport { det_order, precision: n })
}

/// The defect `d`: `t`-order of `det ∂p/∂y` along `γ₀`, equal to the
/// degree of the distinguished polynomial of every deformation.
pub fn compute_defect(pres: &VarietyPresentation, arc: &BaseArc) -> Result<usize> {
    Ok(validate(pres, arc)?.det_order)
}

/// Degree of the Weierstrass polynomial of `det ∂p/∂y (x, y)` of a deformation.
pub fn deformation_defect(pres: &VarietyPresentation, def: &Deformation) -> Result<usize> {
    let det = pres.jacobian_det(&def.x, &def.y)?;
    Ok(weierstrass_prepare(&det)?.d)
}

/// An element of `A` given by its coordinates, as a convenience for tests
/// and examples.
pub fn ring_series(ring: &Arc<TestRing>, coeffs: &[&str], prec: usize) -> Result<TruncatedSeries> {
    let cs = coeffs.iter().map(|c| ring.parse_element(c)).collect::<Result<Vec<RingElem>>>()?;
    Ok(TruncatedSeries::new(ring, cs, prec))
}
