//! Sparse multivariate polynomials over ℚ with lexicographic term order.
//!
//! Exponent vectors are stored in precedence order: index 0 is the greatest
//! variable, so the derived ordering on `Vec<u32>` is exactly lex.

use crate::numberfield::NFElement;
use crate::rational::{fmt_q, parse_rational, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomials belong to different rings")]
    AmbientMismatch,
    #[error("no value assigned to variable {0}")]
    PartialAssignment(String),
    #[error("assigned values live in different number fields")]
    FieldMismatch,
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// Variables of a polynomial ring listed from greatest to least.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
}

impl Ring {
    pub fn new<S: Into<String>>(greatest_first: impl IntoIterator<Item = S>) -> Arc<Ring> {
        Arc::new(Ring {
            names: greatest_first.into_iter().map(Into::into).collect(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `a ≺ b ≺ …`, least variable first.
    pub fn order_string(&self) -> String {
        let v: Vec<&str> = self.names.iter().rev().map(String::as_str).collect();
        v.join(" ≺ ")
    }
}

pub type Monomial = Vec<u32>;

pub fn mono_degree(m: &Monomial) -> u32 {
    m.iter().sum()
}

pub fn mono_divides(a: &Monomial, b: &Monomial) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn mono_lcm(a: &Monomial, b: &Monomial) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a / b`, assuming `b | a`.
pub fn mono_div(a: &Monomial, b: &Monomial) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn mono_coprime(a: &Monomial, b: &Monomial) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Q>,
}

impl MPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        MPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Q) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(vec![0; ring.nvars()], c);
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Q::one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        let mut m = vec![0; ring.nvars()];
        m[i] = 1;
        Self::term(ring, m, Q::one())
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: Q) -> Self {
        assert_eq!(m.len(), ring.nvars());
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Q)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Q> {
        self.terms.values().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(mono_degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m[var]).max().unwrap_or(0)
    }

    /// Greatest variable that occurs; lex leading monomials expose it.
    pub fn greatest_var(&self) -> Option<usize> {
        self.leading_monomial()?.iter().position(|&e| e > 0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m[var] > 0)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// `self · c · m`.
    pub fn mul_term(&self, m: &Monomial, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (mono_mul(k, m), x * c))
                .collect(),
        }
    }

    /// `self -= c · m · other`, in place.
    pub fn sub_mul_term(&mut self, other: &MPoly, m: &Monomial, c: &Q) {
        for (k, x) in &other.terms {
            self.add_term(mono_mul(k, m), -(x * c));
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive(&self) -> Self {
        let Some(lc) = self.leading_coeff() else {
            return self.clone();
        };
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut f = Q::new(den, num);
        if lc.is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    pub fn checked_add(&self, o: &MPoly) -> Result<MPoly, PolyError> {
        self.same_ring(o)?;
        Ok(self + o)
    }

    pub fn checked_sub(&self, o: &MPoly) -> Result<MPoly, PolyError> {
        self.same_ring(o)?;
        Ok(self - o)
    }

    pub fn checked_mul(&self, o: &MPoly) -> Result<MPoly, PolyError> {
        self.same_ring(o)?;
        Ok(self * o)
    }

    fn same_ring(&self, o: &MPoly) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring {
            Ok(())
        } else {
            Err(PolyError::AmbientMismatch)
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces variable `var` by `value`.
    pub fn substitute(&self, var: usize, value: &MPoly) -> MPoly {
        let mut powers = vec![MPoly::one(&self.ring)];
        let mut out = MPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m[var] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest[var] = 0;
            out = &out + &powers[e].mul_term(&rest, c);
        }
        out
    }

    /// Exact rational evaluation at a full point.
    pub fn eval_rational(&self, point: &[Q]) -> Q {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact evaluation at a point of a number field; every variable that
    /// occurs must be assigned.
    pub fn evaluate(&self, point: &[Option<NFElement>]) -> Result<NFElement, PolyError> {
        let field = point
            .iter()
            .flatten()
            .next()
            .map(|a| a.field().clone())
            .ok_or_else(|| self.missing(point))?;
        if point.iter().flatten().any(|a| !a.field().same_as(&field)) {
            return Err(PolyError::FieldMismatch);
        }
        let mut acc = NFElement::zero(&field);
        for (m, c) in &self.terms {
            let mut t = NFElement::from_rational(&field, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    let x = point[i]
                        .as_ref()
                        .ok_or_else(|| PolyError::PartialAssignment(self.ring.name(i).to_string()))?;
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    fn missing(&self, point: &[Option<NFElement>]) -> PolyError {
        match (0..self.ring.nvars()).find(|&i| self.uses_var(i) && point[i].is_none()) {
            Some(i) => PolyError::PartialAssignment(self.ring.name(i).to_string()),
            None => PolyError::PartialAssignment(String::new()),
        }
    }

    /// Substitutes field values for every variable except `var`, giving a
    /// univariate polynomial over the field (coefficients low degree first).
    pub fn specialize(
        &self,
        var: usize,
        point: &[Option<NFElement>],
        field: &Arc<crate::numberfield::NumberField>,
    ) -> Result<Vec<NFElement>, PolyError> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![NFElement::zero(field); deg + 1];
        for (m, c) in &self.terms {
            let mut t = NFElement::from_rational(field, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if i == var || e == 0 {
                    continue;
                }
                let x = point[i]
                    .as_ref()
                    .ok_or_else(|| PolyError::PartialAssignment(self.ring.name(i).to_string()))?;
                if !x.field().same_as(field) {
                    return Err(PolyError::FieldMismatch);
                }
                t = &t * &x.pow(e);
            }
            let k = m[var] as usize;
            out[k] = &out[k] + &t;
        }
        Ok(out)
    }

    /// The polynomial as a univariate polynomial in `var`, if no other
    /// variable occurs.
    pub fn to_univariate(&self, var: usize) -> Option<crate::unipoly::UPoly> {
        let mut c = vec![Q::zero(); self.degree_in(var) as usize + 1];
        for (m, x) in &self.terms {
            if m.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            c[m[var] as usize] = x.clone();
        }
        Some(crate::unipoly::UPoly::new(c))
    }

    pub fn from_univariate(ring: &Arc<Ring>, var: usize, p: &crate::unipoly::UPoly) -> MPoly {
        let mut out = MPoly::zero(ring);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut m = vec![0; ring.nvars()];
            m[var] = k as u32;
            out.add_term(m, c.clone());
        }
        out
    }

    /// Parses sums of products of rationals and powered variables, with
    /// parentheses, e.g. `2*x*y - 3/4*(x + 1)^2`.
    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<MPoly, PolyError> {
        let mut p = Parser {
            ring,
            s: text.as_bytes(),
            pos: 0,
        };
        let r = p.sum()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(PolyError::Parse(format!("unexpected input at offset {}", p.pos)));
        }
        Ok(r)
    }
}

struct Parser<'a> {
    ring: &'a Arc<Ring>,
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<MPoly, PolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.product()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<MPoly, PolyError> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MPoly, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.s[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| PolyError::Parse(format!("bad exponent at offset {start}")))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let r = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(PolyError::Parse(format!("expected ')' at offset {}", self.pos)));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_digit() || self.s[self.pos] == b'/') {
                    self.pos += 1;
                }
                let lit = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let c = parse_rational(lit).map_err(|e| PolyError::Parse(e.to_string()))?;
                Ok(MPoly::constant(self.ring, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let i = self
                    .ring
                    .index_of(name)
                    .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
                Ok(MPoly::var(self.ring, i))
            }
            _ => Err(PolyError::Parse(format!("unexpected input at offset {}", self.pos))),
        }
    }
}

fn assert_ring(a: &MPoly, b: &MPoly) {
    assert!(
        Arc::ptr_eq(&a.ring, &b.ring) || a.ring == b.ring,
        "polynomials belong to different rings"
    );
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        assert_ring(self, o);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        assert_ring(self, o);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Q::one())
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        assert_ring(self, o);
        let mut r = MPoly::zero(&self.ring);
        for (m, c) in &o.terms {
            for (k, x) in &self.terms {
                r.add_term(mono_mul(k, m), x * c);
            }
        }
        r
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    if e == 1 {
                        self.ring.name(j).to_string()
                    } else {
                        format!("{}^{}", self.ring.name(j), e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", fmt_q(&a))?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_q(&a), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::NumberField;
    use crate::rational::{q, qf};
    use crate::unipoly::UPoly;

    fn ring() -> Arc<Ring> {
        Ring::new(["z", "y", "x"])
    }

    #[test]
    fn lex_leading_terms() {
        let r = ring();
        let p = MPoly::parse(&r, "x^5 + y*x + 3*z - 1").unwrap();
        assert_eq!(p.leading_monomial(), Some(&vec![1, 0, 0]));
        assert_eq!(p.greatest_var(), Some(0));
        assert_eq!(p.to_string(), "3*z + y*x + x^5 - 1");
        let p = MPoly::parse(&r, "y^2 + y*x^3").unwrap();
        assert_eq!(p.leading_monomial(), Some(&vec![0, 2, 0]));
        assert_eq!(p.to_string(), "y^2 + y*x^3");
        assert_eq!(r.order_string(), "x ≺ y ≺ z");
    }

    #[test]
    fn arithmetic_and_display() {
        let r = ring();
        let a = MPoly::parse(&r, "x + y").unwrap();
        let b = MPoly::parse(&r, "x - y").unwrap();
        assert_eq!((&a * &b).to_string(), "-y^2 + x^2");
        assert_eq!(MPoly::parse(&r, "13/2*x*z - 18*x").unwrap().to_string(), "13/2*z*x - 18*x");
        assert!((&a - &a).is_zero());
        assert_eq!(MPoly::parse(&r, "2/3*x - 4/9").unwrap().primitive().to_string(), "3*x - 2");
        let other = Ring::new(["a"]);
        assert_eq!(
            a.checked_add(&MPoly::var(&other, 0)).unwrap_err(),
            PolyError::AmbientMismatch
        );
    }

    #[test]
    fn substitution() {
        let r = ring();
        let p = MPoly::parse(&r, "x*y + x^2").unwrap();
        let v = MPoly::parse(&r, "1 - y").unwrap();
        assert_eq!(p.substitute(2, &v).to_string(), "-y + 1");
    }

    #[test]
    fn evaluation() {
        let r = ring();
        let p = MPoly::parse(&r, "x^2 - 2 + y*z").unwrap();
        assert_eq!(p.eval_rational(&[q(1), qf(1, 2), q(3)]), qf(15, 2));
        let k = NumberField::new(&UPoly::from_ints(&[-2, 0, 1]), 1).unwrap();
        let s = NFElement::theta(&k);
        let zero = NFElement::zero(&k);
        let v = p
            .evaluate(&[Some(zero.clone()), Some(zero.clone()), Some(s.clone())])
            .unwrap();
        assert!(v.is_zero());
        assert_eq!(
            p.evaluate(&[None, Some(zero.clone()), Some(s.clone())]).unwrap_err(),
            PolyError::PartialAssignment("z".into())
        );
        let q0 = NFElement::zero(&NumberField::rationals());
        assert_eq!(
            p.evaluate(&[Some(q0), Some(zero), Some(s)]).unwrap_err(),
            PolyError::FieldMismatch
        );
    }

    #[test]
    fn parse_errors() {
        let r = ring();
        assert!(matches!(MPoly::parse(&r, "x + w"), Err(PolyError::UnknownVariable(_))));
        assert!(matches!(MPoly::parse(&r, "x + "), Err(PolyError::Parse(_))));
        assert!(matches!(MPoly::parse(&r, "(x + 1"), Err(PolyError::Parse(_))));
    }
}
