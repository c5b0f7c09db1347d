//! Exact arithmetic in real number fields ℚ(θ).
//!
//! A field is fixed by an irreducible minimal polynomial together with the
//! index of one of its real roots; elements are polynomials in θ reduced
//! modulo the minimal polynomial. Signs are decided by refining θ's
//! isolating interval until an interval evaluation excludes zero, which
//! always terminates because a nonzero reduced element cannot vanish at θ.

mod extension;
mod radical;

pub use extension::{embed, gcd_over, norm_resultant, real_roots_over, Adjoined, RootsOver};
pub use radical::{RadicalExpr, RadicalNode};

use crate::interval::Interval;
use crate::rational::{fmt_q, q, round_decimal, Q};
use crate::unipoly::{factor, isolate_real_roots, RootIsolation, UPoly, UniError};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NfError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different number fields")]
    FieldMismatch,
    #[error("minimal polynomial {0} is not irreducible over the rationals")]
    NotIrreducible(String),
    #[error("root index {index} out of range: polynomial has {count} real roots")]
    NoSuchRoot { index: usize, count: usize },
    #[error(transparent)]
    Poly(#[from] UniError),
}

/// A real root of an irreducible rational polynomial, identified by the
/// primitive integer form of its minimal polynomial and its rank among
/// the real roots (ascending).
#[derive(Clone)]
pub struct AlgebraicNumber {
    minpoly: UPoly,
    index: usize,
    isolation: Arc<RootIsolation>,
}

impl AlgebraicNumber {
    pub fn new(minpoly: &UPoly, index: usize) -> Result<Self, NfError> {
        let f = factor(minpoly)?;
        if !f.is_irreducible() {
            return Err(NfError::NotIrreducible(minpoly.to_string()));
        }
        Self::from_irreducible(minpoly, index)
    }

    pub(crate) fn from_irreducible(minpoly: &UPoly, index: usize) -> Result<Self, NfError> {
        let minpoly = minpoly.primitive();
        let isolation = isolate_real_roots(&minpoly)?;
        if index >= isolation.len() {
            return Err(NfError::NoSuchRoot {
                index,
                count: isolation.len(),
            });
        }
        Ok(AlgebraicNumber {
            minpoly,
            index,
            isolation: Arc::new(isolation),
        })
    }

    pub fn rational(r: &Q) -> Self {
        Self::from_irreducible(&UPoly::linear_root(r), 0).expect("linear polynomial has one root")
    }

    pub fn minpoly(&self) -> &UPoly {
        &self.minpoly
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn isolating_interval(&self) -> &Interval {
        &self.isolation.intervals[self.index]
    }

    pub fn isolation(&self) -> &RootIsolation {
        &self.isolation
    }

    pub fn as_rational(&self) -> Option<Q> {
        (self.degree() == 1).then(|| -self.minpoly.coeff(0) / self.minpoly.coeff(1))
    }

    pub fn refine(&self, width: &Q) -> Interval {
        self.isolation.refine(self.index, width)
    }

    /// Compares real values; distinct numbers are separated by refinement.
    pub fn cmp_value(&self, other: &AlgebraicNumber) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return a.cmp(&b);
        }
        let mut w = q(1);
        loop {
            let a = self.enclosure(&w);
            let b = other.enclosure(&w);
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            w /= Q::from_integer(BigInt::from(1u64 << 16));
        }
    }

    fn enclosure(&self, width: &Q) -> Interval {
        match self.as_rational() {
            Some(r) => Interval::point(r),
            None => self.refine(width),
        }
    }

    pub fn to_f64(&self) -> f64 {
        let iv = self.enclosure(&Q::new(BigInt::one(), BigInt::one() << 60));
        crate::rational::to_f64(&iv.mid())
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index && self.minpoly == other.minpoly
    }
}

impl Eq for AlgebraicNumber {}

impl Hash for AlgebraicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.minpoly.hash(state);
        self.index.hash(state);
    }
}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{}", fmt_q(&r)),
            None => write!(f, "root#{} of {}", self.index, self.minpoly),
        }
    }
}

/// The field ℚ(θ) for a real algebraic θ.
pub struct NumberField {
    /// Monic minimal polynomial of θ.
    modulus: UPoly,
    theta: AlgebraicNumber,
    refined: Mutex<Interval>,
}

impl NumberField {
    pub fn new(minpoly: &UPoly, root_index: usize) -> Result<Arc<Self>, NfError> {
        Ok(Self::from_number(AlgebraicNumber::new(minpoly, root_index)?))
    }

    pub(crate) fn from_irreducible(minpoly: &UPoly, root_index: usize) -> Result<Arc<Self>, NfError> {
        Ok(Self::from_number(AlgebraicNumber::from_irreducible(minpoly, root_index)?))
    }

    pub fn from_number(theta: AlgebraicNumber) -> Arc<Self> {
        let refined = Mutex::new(theta.isolating_interval().clone());
        Arc::new(NumberField {
            modulus: theta.minpoly.monic(),
            theta,
            refined,
        })
    }

    /// ℚ itself, presented as ℚ(0).
    pub fn rationals() -> Arc<Self> {
        Self::from_number(AlgebraicNumber::rational(&Q::zero()))
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn modulus(&self) -> &UPoly {
        &self.modulus
    }

    pub fn generator(&self) -> &AlgebraicNumber {
        &self.theta
    }

    pub fn same_as(&self, other: &NumberField) -> bool {
        std::ptr::eq(self, other) || self.theta == other.theta
    }

    /// Enclosure of θ of width at most `width`.
    pub fn theta_enclosure(&self, width: &Q) -> Interval {
        if let Some(r) = self.theta.as_rational() {
            return Interval::point(r);
        }
        let mut guard = self.refined.lock().unwrap();
        if &guard.width() > width {
            *guard = crate::unipoly::refine_interval(&self.theta.minpoly, &guard, width);
        }
        guard.clone()
    }

    fn current_enclosure(&self) -> Interval {
        if let Some(r) = self.theta.as_rational() {
            return Interval::point(r);
        }
        self.refined.lock().unwrap().clone()
    }

    /// Halves the cached enclosure of θ.
    fn tighten(&self) -> Interval {
        let cur = self.current_enclosure();
        let w = cur.width() / q(2);
        self.theta_enclosure(&w)
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({:?})", self.theta)
    }
}

/// An element `rep(θ)` of a number field, `deg rep < [ℚ(θ):ℚ]`.
#[derive(Clone)]
pub struct NFElement {
    field: Arc<NumberField>,
    rep: UPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic.
pub fn field_arith(a: &NFElement, b: &NFElement, kind: ArithKind) -> Result<NFElement, NfError> {
    if !a.field.same_as(&b.field) {
        return Err(NfError::FieldMismatch);
    }
    Ok(match kind {
        ArithKind::Add => a + b,
        ArithKind::Sub => a - b,
        ArithKind::Mul => a * b,
        ArithKind::Div => a.checked_div(b)?,
    })
}

impl NFElement {
    pub fn new(field: &Arc<NumberField>, rep: &UPoly) -> Self {
        let rep = if rep.degree() >= field.degree() {
            rep.rem(&field.modulus)
        } else {
            rep.clone()
        };
        NFElement {
            field: field.clone(),
            rep,
        }
    }

    pub fn from_rational(field: &Arc<NumberField>, r: Q) -> Self {
        NFElement {
            field: field.clone(),
            rep: UPoly::constant(r),
        }
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, Q::zero())
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, Q::one())
    }

    pub fn theta(field: &Arc<NumberField>) -> Self {
        Self::new(field, &UPoly::t())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn rep(&self) -> &UPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep == UPoly::one()
    }

    /// Same value in the same field.
    pub fn same(&self, other: &NFElement) -> bool {
        self.field.same_as(&other.field) && self.rep == other.rep
    }

    pub fn inverse(&self) -> Result<NFElement, NfError> {
        if self.is_zero() {
            return Err(NfError::DivisionByZero);
        }
        let (g, s, _) = self.rep.xgcd(&self.field.modulus);
        debug_assert!(g == UPoly::one());
        Ok(NFElement::new(&self.field, &s))
    }

    pub fn checked_div(&self, other: &NFElement) -> Result<NFElement, NfError> {
        if !self.field.same_as(&other.field) {
            return Err(NfError::FieldMismatch);
        }
        Ok(self * &other.inverse()?)
    }

    pub fn pow(&self, e: u32) -> NFElement {
        let mut acc = NFElement::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, c: &Q) -> NFElement {
        NFElement {
            field: self.field.clone(),
            rep: self.rep.scale(c),
        }
    }

    /// The rational value, when the element lies in ℚ.
    pub fn is_rational(&self) -> Option<Q> {
        if self.rep.is_constant() {
            return Some(self.rep.coeff(0));
        }
        None
    }

    fn enclosure_now(&self) -> Interval {
        self.rep.eval_interval(&self.field.current_enclosure())
    }

    /// Enclosure of the value with width at most `width`.
    pub fn enclosure(&self, width: &Q) -> Interval {
        if let Some(r) = self.is_rational() {
            return Interval::point(r);
        }
        let mut iv = self.enclosure_now();
        while &iv.width() > width {
            let th = self.field.tighten();
            iv = self.rep.eval_interval(&th);
        }
        iv
    }

    pub fn sign(&self) -> i8 {
        if let Some(r) = self.is_rational() {
            return if r.is_positive() {
                1
            } else if r.is_negative() {
                -1
            } else {
                0
            };
        }
        let mut iv = self.enclosure_now();
        loop {
            if let Some(s) = iv.strict_sign() {
                return s;
            }
            let th = self.field.tighten();
            iv = self.rep.eval_interval(&th);
        }
    }

    pub fn in_open_unit_interval(&self) -> bool {
        self.sign() == 1 && (&NFElement::one(&self.field) - self).sign() == 1
    }

    pub fn cmp_value(&self, other: &NFElement) -> Ordering {
        match (self - other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// Characteristic polynomial of multiplication by the element,
    /// `∏ (u - rep(θᵢ))` over the conjugates θᵢ.
    pub fn charpoly(&self) -> UPoly {
        // Q(s, t) = t - rep(s)
        let lifted = vec![-&self.rep, UPoly::one()];
        norm_resultant(&self.field.modulus, &lifted, &Q::zero())
    }

    /// The element as a canonical real algebraic number.
    pub fn to_algebraic(&self) -> AlgebraicNumber {
        if let Some(r) = self.is_rational() {
            return AlgebraicNumber::rational(&r);
        }
        // the characteristic polynomial is a power of the minimal polynomial
        let minpoly = self.charpoly().squarefree_part();
        let iso = isolate_real_roots(&minpoly).expect("squarefree");
        let mut width = iso
            .intervals
            .windows(2)
            .map(|w| &w[1].lo - &w[0].hi)
            .filter(|g| g.is_positive())
            .min()
            .unwrap_or_else(|| q(1));
        loop {
            let iv = self.enclosure(&width);
            if let Some(index) = iso.locate(&iv) {
                return AlgebraicNumber {
                    minpoly: iso.poly.clone(),
                    index,
                    isolation: Arc::new(iso),
                };
            }
            width /= q(4);
        }
    }

    /// Correctly rounded decimal with `digits` places after the point.
    pub fn approx_decimal(&self, digits: usize) -> String {
        if let Some(r) = self.is_rational() {
            return round_decimal(&r, digits);
        }
        let ten = num_traits::pow(BigInt::from(10), digits + 2);
        let mut width = Q::new(BigInt::one(), ten);
        loop {
            let iv = self.enclosure(&width);
            let a = round_decimal(&iv.lo, digits);
            let b = round_decimal(&iv.hi, digits);
            if a == b {
                return a;
            }
            width /= q(16);
        }
    }

    /// Closed form by radicals; available for rational elements and
    /// quadratic fields.
    pub fn to_radical(&self) -> Option<RadicalExpr> {
        radical::to_radical(self)
    }

    pub fn to_f64(&self) -> f64 {
        let iv = self.enclosure(&Q::new(BigInt::one(), BigInt::one() << 60));
        crate::rational::to_f64(&iv.mid())
    }
}

impl fmt::Debug for NFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] in {:?}", self.rep.to_string_var("θ"), self.field)
    }
}

fn assert_same(a: &NFElement, b: &NFElement) {
    assert!(
        a.field.same_as(&b.field),
        "number field mismatch: {:?} vs {:?}",
        a.field,
        b.field
    );
}

impl Add for &NFElement {
    type Output = NFElement;
    fn add(self, o: &NFElement) -> NFElement {
        assert_same(self, o);
        NFElement {
            field: self.field.clone(),
            rep: &self.rep + &o.rep,
        }
    }
}

impl Sub for &NFElement {
    type Output = NFElement;
    fn sub(self, o: &NFElement) -> NFElement {
        assert_same(self, o);
        NFElement {
            field: self.field.clone(),
            rep: &self.rep - &o.rep,
        }
    }
}

impl Mul for &NFElement {
    type Output = NFElement;
    fn mul(self, o: &NFElement) -> NFElement {
        assert_same(self, o);
        NFElement::new(&self.field, &(&self.rep * &o.rep))
    }
}

impl Neg for &NFElement {
    type Output = NFElement;
    fn neg(self) -> NFElement {
        NFElement {
            field: self.field.clone(),
            rep: -&self.rep,
        }
    }
}

/// JSON shape of one coordinate.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CoordinateJson {
    pub minpoly: String,
    pub interval: [String; 2],
    pub rep: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radical: Option<String>,
    pub decimal: String,
}

impl CoordinateJson {
    pub fn new(a: &NFElement, digits: usize, radicals: bool) -> Self {
        let alg = a.to_algebraic();
        let width = Q::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits));
        let iv = match alg.as_rational() {
            Some(r) => Interval::point(r),
            None => alg.refine(&width),
        };
        CoordinateJson {
            minpoly: alg.minpoly().to_string(),
            interval: [fmt_q(&iv.lo), fmt_q(&iv.hi)],
            rep: a.rep().to_string_var("θ"),
            radical: if radicals {
                a.to_radical().map(|r| r.to_string())
            } else {
                None
            },
            decimal: a.approx_decimal(digits),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn sqrt2() -> Arc<NumberField> {
        NumberField::new(&UPoly::from_ints(&[-2, 0, 1]), 1).unwrap()
    }

    fn eliminant_root() -> Arc<NumberField> {
        NumberField::new(&UPoly::from_ints(&[-27, 27, 5]), 1).unwrap()
    }

    #[test]
    fn arithmetic_in_sqrt2() {
        let k = sqrt2();
        let th = NFElement::theta(&k);
        let one = NFElement::one(&k);
        let prod = &(&one + &th) * &(&one - &th);
        assert!(prod.same(&NFElement::from_rational(&k, q(-1))));
        assert!(th.checked_div(&th).unwrap().is_one());
        let inv = th.inverse().unwrap();
        assert!(inv.same(&th.scale(&qf(1, 2))));
        assert!(NFElement::zero(&k).inverse().is_err());
        let sq = &th * &th;
        assert_eq!(sq.is_rational(), Some(q(2)));
    }

    #[test]
    fn mismatched_fields() {
        let a = NFElement::theta(&sqrt2());
        let b = NFElement::theta(&eliminant_root());
        assert_eq!(field_arith(&a, &b, ArithKind::Add).unwrap_err(), NfError::FieldMismatch);
    }

    #[test]
    fn signs() {
        let k = sqrt2();
        let th = NFElement::theta(&k);
        assert_eq!(NFElement::zero(&k).sign(), 0);
        assert_eq!((&th - &NFElement::one(&k)).sign(), 1);
        let e = eliminant_root();
        let th = NFElement::theta(&e);
        assert_eq!((&th - &NFElement::one(&e)).sign(), -1);
        assert!(th.in_open_unit_interval());
        assert!(NFElement::from_rational(&e, qf(1, 2)).in_open_unit_interval());
        assert!(!NFElement::zero(&e).in_open_unit_interval());
    }

    #[test]
    fn rationality() {
        let k = sqrt2();
        assert_eq!(NFElement::from_rational(&k, qf(7, 3)).is_rational(), Some(qf(7, 3)));
        assert_eq!(NFElement::theta(&k).is_rational(), None);
        let reduced = NFElement::new(&k, &UPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(reduced.is_rational(), Some(q(0)));
    }

    #[test]
    fn decimals() {
        assert_eq!(NFElement::theta(&sqrt2()).approx_decimal(6), "1.414214");
        assert_eq!(NFElement::theta(&eliminant_root()).approx_decimal(4), "0.8623");
        let k = NumberField::rationals();
        assert_eq!(NFElement::from_rational(&k, qf(1, 3)).approx_decimal(3), "0.333");
        let neg = -&NFElement::theta(&sqrt2());
        assert_eq!(neg.approx_decimal(3), "-1.414");
    }

    #[test]
    fn minimal_polynomials() {
        let k = sqrt2();
        let th = NFElement::theta(&k);
        let m = NFElement::new(&k, &UPoly::from_ints(&[-2, 0, 1]));
        assert!(m.is_zero());
        let x = &th + &NFElement::one(&k);
        let alg = x.to_algebraic();
        assert_eq!(alg.minpoly(), &UPoly::from_ints(&[-1, -2, 1]));
        assert_eq!(alg.index(), 1);
        let y = -&th;
        assert_eq!(y.to_algebraic().index(), 0);
        assert_eq!(y.to_algebraic().minpoly(), &UPoly::from_ints(&[-2, 0, 1]));
    }

    #[test]
    fn algebraic_ordering() {
        let a = AlgebraicNumber::new(&UPoly::from_ints(&[-2, 0, 1]), 1).unwrap();
        let b = AlgebraicNumber::rational(&qf(3, 2));
        let c = AlgebraicNumber::new(&UPoly::from_ints(&[-2, 0, 1]), 0).unwrap();
        assert_eq!(a.cmp(&b), Ordering::Less);
        assert_eq!(c.cmp(&a), Ordering::Less);
        assert_eq!(a.cmp(&a.clone()), Ordering::Equal);
        assert!(AlgebraicNumber::new(&UPoly::from_ints(&[-1, 0, 1]), 0).is_err());
    }
}
