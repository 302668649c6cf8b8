//! Plain-text input format for a presentation together with a base arc.
//!
//! ```text
//! # the hypersurface y*x2 + x1^2 = 0 with the arc (0, t, 0)
//! field: Q
//! nx: 2 ; ny: 1
//! p1: y1*x2 + x1^2
//! arc.x1: [0]
//! arc.x2: [0, 1]
//! arc.y1: [0]
//! precision: 64
//! ```
//!
//! Statements are `key: value`, separated by newlines or `;`. `#` starts a
//! comment running to the end of the line. Keys may appear in any order but
//! each exactly once: `field` (`Q` or `F<p>`), `nx`, `ny`, `p1..p<ny>`
//! (polynomials in `x1..x<nx>, y1..y<ny>`), `arc.x1..arc.x<nx>` and
//! `arc.y1..arc.y<ny>` (coefficient lists `[c0, c1, ...]` of integers or
//! fractions `a/b`), and `precision` (the arc is known modulo `t^precision`).
//!
//! The printed form is canonical: keys in the order above, polynomials in
//! descending graded-lex order, coefficient lists without trailing zeros.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{BaseArc, VarietyPresentation};
use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::parse::parse_scalar_list;

/// A presentation and a base arc, as read from an input file.
#[derive(Clone, Debug, PartialEq)]
pub struct ArcProblem {
    pub pres: VarietyPresentation,
    pub arc: BaseArc,
}

fn input_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position: line,
        message: format!("line {line}: {}", message.into()),
    }
}

impl FromStr for ArcProblem {
    type Err = Error;

    fn from_str(src: &str) -> Result<ArcProblem> {
        let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (idx, raw) in src.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("");
            for stmt in line.split(';') {
                let stmt = stmt.trim();
                if stmt.is_empty() {
                    continue;
                }
                let (key, value) = stmt
                    .split_once(':')
                    .ok_or_else(|| input_error(line_no, format!("expected `key: value`, got `{stmt}`")))?;
                let key = key.trim().to_string();
                if entries.insert(key.clone(), (line_no, value.trim().to_string())).is_some() {
                    return Err(input_error(line_no, format!("duplicate key `{key}`")));
                }
            }
        }
        let mut take = |key: &str| -> Result<(usize, String)> {
            entries
                .remove(key)
                .ok_or_else(|| input_error(0, format!("missing key `{key}`")))
        };
        let (fl, fv) = take("field")?;
        let field: Field = fv.parse().map_err(|e| input_error(fl, format!("{e}")))?;
        let mut count = |key: &str| -> Result<usize> {
            let (ln, v) = take(key)?;
            v.parse().map_err(|_| input_error(ln, format!("`{key}` must be a non-negative integer")))
        };
        let n = count("nx")?;
        let l = count("ny")?;
        let precision = count("precision")?;
        let mut exprs = Vec::with_capacity(l);
        for i in 1..=l {
            exprs.push(take(&format!("p{i}"))?);
        }
        let vars = super::standard_variables(n, l);
        let p = exprs
            .iter()
            .enumerate()
            .map(|(i, (ln, e))| {
                crate::parse::parse_polynomial(e, field, &vars)
                    .map_err(|err| input_error(*ln, format!("p{}: {err}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut list = |key: String| -> Result<Vec<crate::algebra::Scalar>> {
            let (ln, v) = take(&key)?;
            parse_scalar_list(&v, field).map_err(|e| input_error(ln, format!("{key}: {e}")))
        };
        let x0 = (1..=n).map(|i| list(format!("arc.x{i}"))).collect::<Result<Vec<_>>>()?;
        let y0 = (1..=l).map(|j| list(format!("arc.y{j}"))).collect::<Result<Vec<_>>>()?;
        if let Some((key, (ln, _))) = entries.into_iter().next() {
            return Err(input_error(ln, format!("unknown key `{key}`")));
        }
        let pres = VarietyPresentation::new(field, n, l, p)?;
        let arc = BaseArc::new(field, x0, y0, precision)?;
        Ok(ArcProblem { pres, arc })
    }
}

impl fmt::Display for ArcProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |c: &[crate::algebra::Scalar]| -> String {
            if c.is_empty() {
                "[0]".into()
            } else {
                format!("[{}]", c.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "))
            }
        };
        writeln!(f, "field: {}", self.pres.field())?;
        writeln!(f, "nx: {} ; ny: {}", self.pres.n(), self.pres.l())?;
        for (i, p) in self.pres.equations().iter().enumerate() {
            writeln!(f, "p{}: {p}", i + 1)?;
        }
        for (i, c) in self.arc.x0().iter().enumerate() {
            writeln!(f, "arc.x{}: {}", i + 1, list(c))?;
        }
        for (j, c) in self.arc.y0().iter().enumerate() {
            writeln!(f, "arc.y{}: {}", j + 1, list(c))?;
        }
        writeln!(f, "precision: {}", self.arc.precision())
    }
}
