use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::traits::CommRing;
use crate::algebra::{Field, RingElem, Scalar, TestRing};
use crate::error::{Error, Result};

/// An exponent vector, ordered graded-lexicographically (total degree, then
/// the first variable largest).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial over `k` in a fixed ordered list of named variables.
/// No zero coefficients are stored.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    field: Field,
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.vars == other.vars
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(field: Field, vars: Arc<Vec<String>>) -> MultiPoly {
        MultiPoly {
            field,
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, vars: Arc<Vec<String>>, c: Scalar) -> MultiPoly {
        let mut p = MultiPoly::zero(field, vars);
        if !c.is_zero() {
            let n = p.vars.len();
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    pub fn variable(field: Field, vars: Arc<Vec<String>>, i: usize) -> MultiPoly {
        let mut m = Monomial::one(vars.len());
        m.0[i] = 1;
        let mut p = MultiPoly::zero(field, vars);
        p.terms.insert(m, field.one());
        p
    }

    /// Build from `(exponents, coefficient)` pairs, combining duplicates.
    pub fn from_terms(
        field: Field,
        vars: Arc<Vec<String>>,
        terms: impl IntoIterator<Item = (Vec<u16>, Scalar)>,
    ) -> MultiPoly {
        let mut p = MultiPoly::zero(field, vars);
        for (e, c) in terms {
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.vars.len()];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                used[i] |= e > 0;
            }
        }
        (0..used.len()).filter(|&i| used[i]).collect()
    }

    pub fn add(&self, o: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            field: self.field,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.field, self.vars.clone());
        }
        MultiPoly {
            field: self.field,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    pub fn mul(&self, o: &MultiPoly) -> MultiPoly {
        let mut acc: std::collections::HashMap<Monomial, Scalar> =
            std::collections::HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = e.get().add(&c);
                        *e.get_mut() = s;
                    }
                }
            }
        }
        MultiPoly {
            field: self.field,
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.field, self.vars.clone(), self.field.one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field, self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, c.mul(&self.field.from_i64(e as i64)));
        }
        out
    }

    /// Re-express in a larger variable list; `map[i]` is the new index of
    /// the old variable `i`.
    pub fn embed(&self, vars: &Arc<Vec<String>>, map: &[usize]) -> MultiPoly {
        let mut out = MultiPoly::zero(self.field, vars.clone());
        for (m, c) in &self.terms {
            let mut e = vec![0u16; vars.len()];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Substitute `values[i]` for variable `i` in a commutative ring.
    pub fn eval<R: CommRing>(&self, values: &[R]) -> Result<R> {
        if values.len() != self.vars.len() {
            return Err(Error::structural(format!(
                "evaluation needs {} values, got {}",
                self.vars.len(),
                values.len()
            )));
        }
        let proto = values
            .first()
            .ok_or_else(|| Error::structural("cannot evaluate without a value to take the ring from"))?;
        // cache of powers per variable, built lazily
        let mut powers: Vec<Vec<R>> = values.iter().map(|v| vec![v.one_like(), v.clone()]).collect();
        let mut acc = proto.zero_like();
        for (m, c) in &self.terms {
            let mut term: Option<R> = None;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = CommRing::mul(powers[i].last().expect("nonempty"), &values[i]);
                    powers[i].push(next);
                }
                term = Some(match term {
                    None => powers[i][e].clone(),
                    Some(t) => CommRing::mul(&t, &powers[i][e]),
                });
            }
            let term = match term {
                None => proto.from_scalar_like(c),
                Some(t) if c.is_one() => t,
                Some(t) => CommRing::scale(&t, c),
            };
            acc = CommRing::add(&acc, &term);
        }
        Ok(acc)
    }

    /// Substitute `k`-values.
    pub fn eval_scalars(&self, values: &[Scalar]) -> Result<Scalar> {
        if values.is_empty() {
            return self
                .as_constant()
                .ok_or_else(|| Error::structural("no values for a non-constant polynomial"));
        }
        self.eval(values)
    }
}

/// Evaluate a polynomial in the ring's generators as a ring element.
pub(crate) fn eval_in_ring(p: &MultiPoly, ring: &Arc<TestRing>) -> RingElem {
    let gens: Vec<RingElem> = (0..ring.generators().len()).map(|i| RingElem::generator(ring, i)).collect();
    if gens.is_empty() {
        return RingElem::from_scalar(ring, p.as_constant().expect("no variables"));
    }
    p.eval(&gens).expect("arity matches")
}

impl CommRing for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.field, self.vars.clone())
    }
    fn one_like(&self) -> Self {
        MultiPoly::constant(self.field, self.vars.clone(), self.field.one())
    }
    fn from_scalar_like(&self, c: &Scalar) -> Self {
        MultiPoly::constant(self.field, self.vars.clone(), c.clone())
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        MultiPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        MultiPoly::sub(self, other)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        MultiPoly::mul(self, other)
    }
    fn scale(&self, c: &Scalar) -> Self {
        MultiPoly::scale(self, c)
    }
    fn mul_acc(&mut self, a: &Self, b: &Self) {
        let prod = MultiPoly::mul(a, b);
        for (m, c) in prod.terms {
            self.add_term(m, c);
        }
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical form: terms in descending graded-lex order, e.g.
    /// `-x1^2 + 2*x1*y1 - 1/2*x1 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn vars(names: &[&str]) -> Arc<Vec<String>> {
        Arc::new(names.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn derivatives_in_characteristic_p() {
        let v = vars(&["x", "y"]);
        let p = parse_polynomial("x^3 + x*y^2 + 1", Field::Prime(3), &v).unwrap();
        assert_eq!(p.derivative(0).to_string(), "y^2");
        assert_eq!(p.derivative(1).to_string(), "2*x*y");
    }

    #[test]
    fn evaluation_and_order() {
        let v = vars(&["x", "y"]);
        let p = parse_polynomial("y - x^2 + 3*x*y", Field::Rationals, &v).unwrap();
        assert_eq!(p.to_string(), "-x^2 + 3*x*y + y");
        let q = Field::Rationals;
        assert_eq!(p.eval_scalars(&[q.from_i64(2), q.from_i64(1)]).unwrap(), q.from_i64(3));
    }
}
