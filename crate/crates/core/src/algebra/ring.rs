//! Artinian local test rings `k[ε₁..ε_s]/I` with `I` a monomial ideal
//! containing a power of the maximal ideal.
//!
//! Elements are coordinate vectors over the basis of standard monomials
//! (monomials not in `I`), ordered graded-lexicographically with `1` first.
//! Because the order is graded, the basis of `A/m^j` is a prefix of the
//! basis of `A`; projections truncate and zero-extensions pad.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use smallvec::SmallVec;

use super::field::{Field, Scalar};
use crate::error::{Error, Result};
use crate::parse::{Lexer, Tok};

pub type Exponents = Vec<u32>;

fn degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// Graded order: total degree, then lexicographic with the first generator
/// largest. Used ascending for the basis (so `1` comes first).
fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    degree(a)
        .cmp(&degree(b))
        .then_with(|| b.cmp(a))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// A test ring: local, residue field `k`, nilpotent maximal ideal.
#[derive(Debug, Clone)]
pub struct TestRing {
    field: Field,
    generators: Vec<String>,
    /// Minimal monomial generators of the relation ideal, grlex ascending.
    relations: Vec<Exponents>,
    basis: Vec<Exponents>,
    degrees: Vec<u32>,
    /// `table[i][j]` is the basis index of `basis[i]·basis[j]`, if nonzero.
    table: Vec<Vec<Option<usize>>>,
    nilpotency: usize,
}

impl PartialEq for TestRing {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.generators == other.generators
            && self.basis == other.basis
    }
}

impl Eq for TestRing {}

impl TestRing {
    /// Build `k[gens]/(relations)`. The relation monomials must include a
    /// pure power of every generator.
    pub fn new(field: Field, generators: Vec<String>, relations: Vec<Exponents>) -> Result<TestRing> {
        let s = generators.len();
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::structural(format!("duplicate generator `{g}`")));
            }
            if g == "t" {
                return Err(Error::structural("`t` is reserved for the arc parameter"));
            }
        }
        if relations.iter().any(|m| m.len() != s) {
            return Err(Error::structural("relation monomial has wrong arity"));
        }
        if relations.iter().any(|m| degree(m) == 0) {
            return Err(Error::structural("relation 1 = 0 makes the ring trivial"));
        }
        let relations = minimalize(relations);
        // pure power bounds
        let mut bound = vec![0u32; s];
        for (i, b) in bound.iter_mut().enumerate() {
            *b = relations
                .iter()
                .filter(|m| m.iter().enumerate().all(|(j, &e)| (j == i) == (e > 0)))
                .map(|m| m[i])
                .min()
                .ok_or_else(|| {
                    Error::structural(format!(
                        "generator `{}` is not nilpotent modulo the relations",
                        generators[i]
                    ))
                })?;
        }
        let mut basis = Vec::new();
        let mut cur = vec![0u32; s];
        loop {
            if !relations.iter().any(|r| divides(r, &cur)) {
                basis.push(cur.clone());
            }
            // odometer over [0, bound_i)
            let mut k = 0;
            loop {
                if k == s {
                    break;
                }
                cur[k] += 1;
                if cur[k] < bound[k] {
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
            if k == s {
                break;
            }
        }
        basis.sort_by(|a, b| grlex(a, b));
        let degrees: Vec<u32> = basis.iter().map(|m| degree(m)).collect();
        let table = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| {
                        let prod: Exponents = a.iter().zip(b).map(|(x, y)| x + y).collect();
                        basis.iter().position(|m| *m == prod)
                    })
                    .collect()
            })
            .collect();
        let nilpotency = degrees.iter().copied().max().unwrap_or(0) as usize + 1;
        Ok(TestRing {
            field,
            generators,
            relations,
            basis,
            degrees,
            table,
            nilpotency,
        })
    }

    /// The residue field `k` viewed as a test ring (`m = 0`).
    pub fn residue_field(field: Field) -> TestRing {
        TestRing::new(field, Vec::new(), Vec::new()).expect("k is a test ring")
    }

    /// `k[gens]/(gens)^power`.
    pub fn maximal_power(field: Field, generators: &[&str], power: u32) -> Result<TestRing> {
        if power == 0 {
            return Err(Error::structural("power must be at least 1"));
        }
        let gens: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
        let rels = monomials_of_degree(gens.len(), power);
        TestRing::new(field, gens, rels)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn basis(&self) -> &[Exponents] {
        &self.basis
    }

    pub fn relations(&self) -> &[Exponents] {
        &self.relations
    }

    /// `dim_k A`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Minimal `a` with `m^a = 0`.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    /// Degree in the ε's of the `i`-th basis monomial.
    pub fn basis_degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    /// Number of basis monomials of degree below `j`, i.e. `dim A/m^j`.
    pub fn prefix_len(&self, j: usize) -> usize {
        self.degrees.iter().take_while(|&&d| (d as usize) < j).count()
    }

    /// `A/m^j` for `1 ≤ j ≤ a`.
    pub fn quotient(&self, j: usize) -> Result<TestRing> {
        if j == 0 || j > self.nilpotency {
            return Err(Error::structural(format!(
                "quotient level {j} outside 1..={}",
                self.nilpotency
            )));
        }
        let mut rels = self.relations.clone();
        rels.extend(monomials_of_degree(self.generators.len(), j as u32));
        TestRing::new(self.field, self.generators.clone(), rels)
    }

    /// Canonical descriptor string, e.g. `Q[e]/e^3`, `F2[e1,e2]/(e1,e2)^2`.
    pub fn descriptor(&self) -> String {
        self.to_string()
    }

    fn fmt_monomial(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.generators[i].clone()
                } else {
                    format!("{}^{}", self.generators[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

fn monomials_of_degree(s: usize, d: u32) -> Vec<Exponents> {
    fn rec(s: usize, d: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if cur.len() + 1 == s {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=d).rev() {
            cur.push(e);
            rec(s, d - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if s > 0 {
        rec(s, d, &mut Vec::new(), &mut out);
    }
    out
}

fn minimalize(mut rels: Vec<Exponents>) -> Vec<Exponents> {
    rels.sort_by(|a, b| grlex(a, b));
    rels.dedup();
    let mut out: Vec<Exponents> = Vec::new();
    for r in rels {
        if !out.iter().any(|m| divides(m, &r)) {
            out.push(r);
        }
    }
    out
}

impl fmt::Display for TestRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field)?;
        if self.generators.is_empty() {
            return Ok(());
        }
        write!(f, "[{}]/", self.generators.join(","))?;
        let s = self.generators.len();
        let top = degree(&self.relations[0]);
        let is_power = self.relations.iter().all(|m| degree(m) == top)
            && self.relations.len() == monomials_of_degree(s, top).len();
        if is_power && s == 1 {
            if top == 1 {
                write!(f, "{}", self.generators[0])
            } else {
                write!(f, "{}^{}", self.generators[0], top)
            }
        } else if is_power {
            write!(f, "({})", self.generators.join(","))?;
            if top > 1 {
                write!(f, "^{top}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.relations.iter().map(|m| self.fmt_monomial(m)).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

impl FromStr for TestRing {
    type Err = Error;

    /// Grammar:
    ///
    /// ```text
    /// ring  := FIELD ( '[' IDENT (',' IDENT)* ']' '/' ideal )?
    /// ideal := group ('+' group)*
    /// group := '(' mono (',' mono)* ')' ('^' INT)? | mono
    /// mono  := IDENT ('^' INT)? ('*' IDENT ('^' INT)?)*
    /// ```
    ///
    /// A group raised to the power `k` contributes all products of `k`
    /// of its members.
    fn from_str(src: &str) -> Result<TestRing> {
        let mut lx = Lexer::new(src)?;
        let field: Field = lx.expect_ident()?.parse()?;
        if lx.at_end() {
            return Ok(TestRing::residue_field(field));
        }
        lx.expect('[')?;
        let mut gens = vec![lx.expect_ident()?];
        while lx.eat(',') {
            gens.push(lx.expect_ident()?);
        }
        lx.expect(']')?;
        lx.expect('/')?;
        let mut rels = Vec::new();
        loop {
            rels.extend(parse_group(&mut lx, &gens)?);
            if !lx.eat('+') {
                break;
            }
        }
        lx.finish()?;
        TestRing::new(field, gens, rels)
    }
}

fn parse_mono(lx: &mut Lexer, gens: &[String]) -> Result<Exponents> {
    let mut m = vec![0u32; gens.len()];
    loop {
        let at = lx.position();
        let name = lx.expect_ident()?;
        let i = gens.iter().position(|g| *g == name).ok_or(Error::Parse {
            position: at,
            message: format!("unknown generator `{name}`"),
        })?;
        let e = if lx.eat('^') { lx.expect_u32()? } else { 1 };
        m[i] += e;
        if !lx.eat('*') {
            return Ok(m);
        }
    }
}

fn parse_group(lx: &mut Lexer, gens: &[String]) -> Result<Vec<Exponents>> {
    if lx.eat('(') {
        let mut members = vec![parse_mono(lx, gens)?];
        while lx.eat(',') {
            members.push(parse_mono(lx, gens)?);
        }
        lx.expect(')')?;
        let k = if lx.eat('^') { lx.expect_u32()? } else { 1 };
        if k == 0 {
            return Err(lx.error("ideal power must be positive"));
        }
        let mut prods: Vec<Exponents> = members.clone();
        for _ in 1..k {
            let mut next = Vec::new();
            for p in &prods {
                for m in &members {
                    next.push(p.iter().zip(m).map(|(a, b)| a + b).collect());
                }
            }
            prods = minimalize(next);
        }
        Ok(prods)
    } else if matches!(lx.peek(), Some(Tok::Ident(_))) {
        Ok(vec![parse_mono(lx, gens)?])
    } else {
        Err(lx.error("expected monomial or `(`"))
    }
}

pub(crate) type Coords = SmallVec<[Scalar; 4]>;

/// An element of a test ring, as coordinates on the standard-monomial basis.
#[derive(Clone, Debug)]
pub struct RingElem {
    ring: Arc<TestRing>,
    coords: Coords,
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
            && (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
    }
}

impl Eq for RingElem {}

impl RingElem {
    pub fn zero(ring: &Arc<TestRing>) -> RingElem {
        RingElem {
            ring: ring.clone(),
            coords: std::iter::repeat_n(ring.field.zero(), ring.dim()).collect(),
        }
    }

    pub fn one(ring: &Arc<TestRing>) -> RingElem {
        RingElem::from_scalar(ring, ring.field.one())
    }

    pub fn from_scalar(ring: &Arc<TestRing>, c: Scalar) -> RingElem {
        let mut z = RingElem::zero(ring);
        z.coords[0] = c;
        z
    }

    pub fn from_i64(ring: &Arc<TestRing>, v: i64) -> RingElem {
        RingElem::from_scalar(ring, ring.field.from_i64(v))
    }

    /// The basis monomial with index `i`.
    pub fn basis_element(ring: &Arc<TestRing>, i: usize) -> RingElem {
        let mut z = RingElem::zero(ring);
        z.coords[i] = ring.field.one();
        z
    }

    /// The generator `ε_i`, or zero if it already vanishes.
    pub fn generator(ring: &Arc<TestRing>, i: usize) -> RingElem {
        let mut m = vec![0u32; ring.generators.len()];
        m[i] = 1;
        match ring.basis.iter().position(|b| *b == m) {
            Some(j) => RingElem::basis_element(ring, j),
            None => RingElem::zero(ring),
        }
    }

    pub fn from_coords(ring: &Arc<TestRing>, coords: Vec<Scalar>) -> Result<RingElem> {
        if coords.len() != ring.dim() {
            return Err(Error::structural(format!(
                "expected {} coordinates, got {}",
                ring.dim(),
                coords.len()
            )));
        }
        if coords.iter().any(|c| c.field() != ring.field) {
            return Err(Error::structural("coordinate from a different field"));
        }
        Ok(RingElem {
            ring: ring.clone(),
            coords: coords.into_iter().collect(),
        })
    }

    pub fn ring(&self) -> &Arc<TestRing> {
        &self.ring
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// Coefficient of `1`: the image in the residue field.
    pub fn residue(&self) -> &Scalar {
        &self.coords[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn is_unit(&self) -> bool {
        !self.coords[0].is_zero()
    }

    pub fn in_maximal_ideal(&self) -> bool {
        self.coords[0].is_zero()
    }

    /// Largest `j` with the element in `m^j`; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coords
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(i, _)| self.ring.degrees[i] as usize)
    }

    fn same_ring(&self, other: &RingElem) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn mismatch(&self, other: &RingElem) -> Error {
        Error::RingMismatch {
            left: self.ring.to_string(),
            right: other.ring.to_string(),
        }
    }

    pub fn try_add(&self, other: &RingElem) -> Result<RingElem> {
        if !self.same_ring(other) {
            return Err(self.mismatch(other));
        }
        Ok(self.add(other))
    }

    /// Checked product.
    pub fn try_mul(&self, other: &RingElem) -> Result<RingElem> {
        if !self.same_ring(other) {
            return Err(self.mismatch(other));
        }
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &RingElem) -> RingElem {
        debug_assert!(self.same_ring(other));
        RingElem {
            ring: self.ring.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &RingElem) -> RingElem {
        debug_assert!(self.same_ring(other));
        RingElem {
            ring: self.ring.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> RingElem {
        RingElem {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> RingElem {
        RingElem {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &RingElem) -> RingElem {
        let mut out = RingElem::zero(&self.ring);
        out.mul_acc(self, other);
        out
    }

    /// `self += a·b`.
    pub fn mul_acc(&mut self, a: &RingElem, b: &RingElem) {
        debug_assert!(a.same_ring(b) && self.same_ring(a));
        let table = &self.ring.table;
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let row = &table[i];
            for (j, y) in b.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                if let Some(k) = row[j] {
                    self.coords[k] = self.coords[k].add(&x.mul(y));
                }
            }
        }
    }

    pub fn pow(&self, mut e: u32) -> RingElem {
        let mut base = self.clone();
        let mut acc = RingElem::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Inverse via `x = c(1 + n)`, `x⁻¹ = c⁻¹ Σ_{j<a} (−n)^j`.
    pub fn inverse(&self) -> Result<RingElem> {
        let c_inv = self.coords[0].inverse().ok_or(Error::NotAUnit)?;
        let normalized = self.scale(&c_inv);
        let mut neg_n = normalized.neg();
        neg_n.coords[0] = self.ring.field.zero();
        let mut acc = RingElem::one(&self.ring);
        let mut term = RingElem::one(&self.ring);
        for _ in 1..self.ring.nilpotency {
            term = term.mul(&neg_n);
            acc = acc.add(&term);
        }
        Ok(acc.scale(&c_inv))
    }

    /// Image in `target`, a quotient `A/m^j` of this element's ring.
    pub fn project(&self, target: &Arc<TestRing>) -> RingElem {
        debug_assert!(target.dim() <= self.ring.dim());
        debug_assert_eq!(target.basis[..], self.ring.basis[..target.dim()]);
        RingElem {
            ring: target.clone(),
            coords: self.coords[..target.dim()].iter().cloned().collect(),
        }
    }

    /// Zero-extension into a ring whose basis extends this one's.
    pub fn zero_extend(&self, target: &Arc<TestRing>) -> RingElem {
        debug_assert!(target.dim() >= self.ring.dim());
        debug_assert_eq!(self.ring.basis[..], target.basis[..self.ring.dim()]);
        let mut out = RingElem::zero(target);
        for (i, c) in self.coords.iter().enumerate() {
            out.coords[i] = c.clone();
        }
        out
    }

    /// Keep only the coordinates on basis monomials of degree `deg`.
    pub fn homogeneous_part(&self, deg: u32) -> RingElem {
        let mut out = RingElem::zero(&self.ring);
        for (i, c) in self.coords.iter().enumerate() {
            if self.ring.degrees[i] == deg {
                out.coords[i] = c.clone();
            }
        }
        out
    }
}

impl PartialOrd for RingElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RingElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl std::hash::Hash for RingElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl fmt::Display for RingElem {
    /// Sum of `c*monomial` in basis order, e.g. `1 - e + e^2`, `2*e1*e2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = self.ring.fmt_monomial(&self.ring.basis[i]);
            let (neg, mag) = if c.is_negative() { (true, c.neg()) } else { (false, c.clone()) };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if mono == "1" {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Free-function form of the checked product.
pub fn ring_mul(x: &RingElem, y: &RingElem) -> Result<RingElem> {
    x.try_mul(y)
}

/// Checked inverse; fails with `NotAUnit` on elements of `m`.
pub fn ring_invert(x: &RingElem) -> Result<RingElem> {
    x.inverse()
}

/// `A/m^j` together with the projection from `A`.
pub fn quotient_ring(ring: &Arc<TestRing>, j: usize) -> Result<(Arc<TestRing>, impl Fn(&RingElem) -> RingElem)> {
    let q = Arc::new(ring.quotient(j)?);
    let target = q.clone();
    Ok((q, move |x: &RingElem| x.project(&target)))
}

/// Every element of `m`, exactly once, in odometer order with the first
/// non-unit basis coordinate varying fastest.
pub fn enumerate_maximal_ideal(ring: &Arc<TestRing>) -> Result<MaximalIdealIter> {
    let elements = ring.field.elements()?;
    Ok(MaximalIdealIter {
        ring: ring.clone(),
        elements,
        digits: vec![0; ring.dim().saturating_sub(1)],
        done: false,
    })
}

pub struct MaximalIdealIter {
    ring: Arc<TestRing>,
    elements: Vec<Scalar>,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for MaximalIdealIter {
    type Item = RingElem;

    fn next(&mut self) -> Option<RingElem> {
        if self.done {
            return None;
        }
        let mut out = RingElem::zero(&self.ring);
        for (i, &d) in self.digits.iter().enumerate() {
            out.coords[i + 1] = self.elements[d].clone();
        }
        let mut k = 0;
        loop {
            if k == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[k] += 1;
            if self.digits[k] < self.elements.len() {
                break;
            }
            self.digits[k] = 0;
            k += 1;
        }
        Some(out)
    }
}

impl TestRing {
    /// `|m|`, or `None` over an infinite field.
    pub fn maximal_ideal_size(&self) -> Option<u128> {
        self.field
            .size()
            .map(|q| (q as u128).pow(self.dim() as u32 - 1))
    }

    /// Parse a ring element written as a polynomial in the generators.
    pub fn parse_element(self: &Arc<Self>, src: &str) -> Result<RingElem> {
        let vars = Arc::new(self.generators.clone());
        let p = crate::parse::parse_polynomial(src, self.field, &vars)?;
        Ok(crate::series::eval_in_ring(&p, self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Arc<TestRing> {
        Arc::new(s.parse().unwrap())
    }

    #[test]
    fn products() {
        let a = ring("F2[e]/e^2");
        let e = RingElem::generator(&a, 0);
        assert!(e.mul(&e).is_zero());

        let b = ring("Q[e]/e^3");
        let e = RingElem::generator(&b, 0);
        let one = RingElem::one(&b);
        let p = one.add(&e).mul(&one.sub(&e));
        assert_eq!(p, one.sub(&e.mul(&e)));
        assert_eq!(p.to_string(), "1 - e^2");

        let c = ring("Q[e1,e2]/(e1,e2)^2");
        let e1 = RingElem::generator(&c, 0);
        let e2 = RingElem::generator(&c, 1);
        assert!(e1.mul(&e2).is_zero());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = ring("Q[e]/e^2");
        let b = ring("Q[e]/e^3");
        let x = RingElem::one(&a);
        let y = RingElem::one(&b);
        assert!(matches!(ring_mul(&x, &y), Err(Error::RingMismatch { .. })));
        // structurally equal rings behind different pointers are compatible
        let a2 = ring("Q[e]/e^2");
        assert!(ring_mul(&x, &RingElem::one(&a2)).is_ok());
    }

    #[test]
    fn inverses() {
        let b = ring("Q[e]/e^3");
        let x = b.parse_element("1 + e").unwrap();
        assert_eq!(ring_invert(&x).unwrap(), b.parse_element("1 - e + e^2").unwrap());

        let f2 = ring("F2[e]/e^2");
        let x = f2.parse_element("1 + e").unwrap();
        assert_eq!(ring_invert(&x).unwrap(), x);

        let q2 = ring("Q[e]/e^2");
        let x = q2.parse_element("2 + e").unwrap();
        let inv = ring_invert(&x).unwrap();
        // (2+e)(1/2 - e/4) = 1 + e/2 - e/2 - e^2/4 = 1 in Q[e]/e^2
        assert_eq!(inv, q2.parse_element("1/2 - e/4").unwrap());
        assert_eq!(inv.mul(&x), RingElem::one(&q2));

        let e = RingElem::generator(&q2, 0);
        assert_eq!(ring_invert(&e), Err(Error::NotAUnit));
    }

    #[test]
    fn quotients() {
        let b = ring("Q[e]/e^3");
        let (q2, proj) = quotient_ring(&b, 2).unwrap();
        assert_eq!(q2.to_string(), "Q[e]/e^2");
        let x = b.parse_element("1 + 2*e + 3*e^2").unwrap();
        assert_eq!(proj(&x).to_string(), "1 + 2*e");
        let (q1, _) = quotient_ring(&b, 1).unwrap();
        assert_eq!(q1.dim(), 1);
        assert_eq!(q1.nilpotency(), 1);

        let c = ring("F2[e1,e2]/(e1,e2)^2");
        let (same, _) = quotient_ring(&c, 2).unwrap();
        assert_eq!(*same, *c);
        assert!(quotient_ring(&c, 3).is_err());
        assert!(quotient_ring(&c, 0).is_err());
    }

    #[test]
    fn maximal_ideal_enumeration() {
        let show = |s: &str| -> Vec<String> {
            enumerate_maximal_ideal(&ring(s)).unwrap().map(|x| x.to_string()).collect()
        };
        assert_eq!(show("F2[e]/e^2"), ["0", "e"]);
        assert_eq!(show("F2[e]/e^3"), ["0", "e", "e^2", "e + e^2"]);
        assert_eq!(show("F3[e]/e^2"), ["0", "e", "2*e"]);
        assert!(enumerate_maximal_ideal(&ring("Q[e]/e^2")).is_err());
    }

    #[test]
    fn descriptors_round_trip() {
        for s in [
            "Q[e]/e^3",
            "F2[e1,e2]/(e1,e2)^2",
            "F3[e]/e^2",
            "Q",
            "F5",
            "Q[e]/e",
            "Q[a,b]/(a^2,b^3)",
            "Q[a,b]/(a,b)",
            "Q[e1,e2]/(e1^2,e1*e2,e2^3)",
        ] {
            let r: TestRing = s.parse().unwrap();
            assert_eq!(r.to_string(), s, "canonical print of {s}");
            let again: TestRing = r.to_string().parse().unwrap();
            assert_eq!(again, r);
        }
        let r: TestRing = "Q[e1,e2]/(e1^2,e1*e2,e2^2)".parse().unwrap();
        assert_eq!(r.to_string(), "Q[e1,e2]/(e1,e2)^2");
        assert!("Q[e]/".parse::<TestRing>().is_err());
        assert!("Q[e1,e2]/e1^2".parse::<TestRing>().is_err());
        assert!("F4[e]/e^2".parse::<TestRing>().is_err());
        assert!("Q[e,e]/e^2".parse::<TestRing>().is_err());
    }

    #[test]
    fn structure() {
        let r = ring("Q[e1,e2]/(e1^2,e1*e2,e2^3)");
        let shown: Vec<String> = r.basis().iter().map(|m| r.fmt_monomial(m)).collect();
        assert_eq!(shown, ["1", "e1", "e2", "e2^2"]);
        assert_eq!(r.nilpotency(), 3);
        assert_eq!(r.prefix_len(2), 3);
    }
}
