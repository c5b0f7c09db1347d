//! Dense univariate polynomials over the rationals.
//!
//! Everything the eliminant pipeline needs lives here: square-free
//! decomposition, rational roots, factorization over ℚ (see [`factor`]),
//! Sturm-based real root isolation (see [`sturm`]) and discriminants.

mod factor;
mod modp;
mod sturm;

pub use factor::{factor, Factorization};
pub use sturm::{count_real_roots, isolate_real_roots, refine_interval, sturm_sequence, RootIsolation};

use crate::interval::Interval;
use crate::rational::{fmt_q, q, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UniError {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("degree {0} is too low for this operation")]
    DegreeTooLow(usize),
}

/// Polynomial `c[0] + c[1] t + … + c[d] t^d` with `c[d] != 0`.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Q>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        UPoly::new(c.iter().map(|x| Q::from_integer(x.clone())).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly::constant(q(1))
    }

    pub fn constant(c: Q) -> Self {
        UPoly::new(vec![c])
    }

    /// The identity polynomial `t`.
    pub fn t() -> Self {
        UPoly::new(vec![q(0), q(1)])
    }

    /// `t - r`.
    pub fn linear_root(r: &Q) -> Self {
        UPoly::new(vec![-r.clone(), q(1)])
    }

    pub fn monomial(c: Q, deg: usize) -> Self {
        let mut v = vec![Q::zero(); deg + 1];
        v[deg] = c;
        UPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports 0 (check [`UPoly::is_zero`]).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let mut acc = Interval::point(Q::zero());
        for c in self.coeffs.iter().rev() {
            acc = (&acc * x).shift(c);
        }
        acc
    }

    pub fn sign_at(&self, x: &Q) -> i8 {
        let v = self.eval(x);
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn scale(&self, c: &Q) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> UPoly {
        let mut acc = UPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `self(g(t))`.
    pub fn compose(&self, g: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &UPoly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return (UPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        let inv = d.lc().recip();
        let mut quot = vec![Q::zero(); self.coeffs.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &UPoly) -> Option<UPoly> {
        let (qq, r) = self.div_rem(d);
        r.is_zero().then_some(qq)
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.primitive_part_q();
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s·self + t·other = g`, g monic.
    pub fn xgcd(&self, other: &UPoly) -> (UPoly, UPoly, UPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        let (mut t0, mut t1) = (UPoly::zero(), UPoly::one());
        while !r1.is_zero() {
            let (qq, r) = r0.div_rem(&r1);
            let s = &s0 - &(&qq * &s1);
            let t = &t0 - &(&qq * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Multiplies by a positive rational so the coefficients are coprime
    /// integers (sign of the leading coefficient is preserved).
    pub fn primitive_part_q(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.scale(&c.recip())
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients.
    pub fn content(&self) -> Q {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let mut num = BigInt::zero();
        for c in &self.coeffs {
            num = num.gcd(&(c.numer() * (&den / c.denom())));
        }
        if num.is_zero() {
            return q(1);
        }
        Q::new(num, den)
    }

    /// Unique primitive integer form: integer coefficients, content 1,
    /// positive leading coefficient.
    pub fn primitive(&self) -> UPoly {
        let p = self.primitive_part_q();
        if p.lc().is_negative() {
            -&p
        } else {
            p
        }
    }

    pub fn int_coeffs(&self) -> Vec<BigInt> {
        let p = self.primitive();
        p.coeffs.iter().map(|c| c.to_integer()).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == 0
    }

    /// `self / gcd(self, self')`, primitive.
    pub fn squarefree_part(&self) -> UPoly {
        if self.is_constant() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").primitive()
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&fmt_q(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", fmt_q(&a), mono));
            }
        }
        out
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("t"))
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::new(v)
    }
}

/// Square-free decomposition (Yun): `p = lc · ∏ fᵢ^mᵢ` with each `fᵢ`
/// primitive, squarefree and pairwise coprime.
pub fn yun_squarefree(p: &UPoly) -> Result<Vec<(UPoly, usize)>, UniError> {
    if p.is_zero() {
        return Err(UniError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if p.is_constant() {
        return Ok(out);
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.exact_div(&a0).unwrap();
    let mut c = dp.exact_div(&a0).unwrap();
    let mut d = &c - &b.derivative();
    let mut i = 1;
    loop {
        let a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.primitive(), i));
        }
        b = b.exact_div(&a).unwrap();
        if b.is_constant() {
            break;
        }
        c = d.exact_div(&a).unwrap();
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

/// All distinct rational roots, ascending.
pub fn rational_roots(p: &UPoly) -> Result<Vec<Q>, UniError> {
    if p.is_zero() {
        return Err(UniError::ZeroPolynomial);
    }
    let f = factor(p)?;
    let mut roots: Vec<Q> = f
        .factors
        .iter()
        .filter(|(g, _)| g.degree() == 1)
        .map(|(g, _)| -g.coeff(0) / g.coeff(1))
        .collect();
    roots.sort();
    Ok(roots)
}

/// Rational roots by the rational-root theorem. Used as an independent
/// cross-check of [`rational_roots`]; only practical for small coefficients.
pub fn rational_roots_by_candidates(p: &UPoly) -> Vec<Q> {
    let sf = p.squarefree_part();
    let c = sf.int_coeffs();
    let mut out = Vec::new();
    let mut c = c;
    if c[0].is_zero() {
        out.push(Q::zero());
        while c[0].is_zero() {
            c.remove(0);
        }
    }
    let a0 = c[0].abs();
    let an = c.last().unwrap().abs();
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let mut v = Vec::new();
        let mut d = BigInt::one();
        while &d * &d <= *n {
            if (n % &d).is_zero() {
                v.push(d.clone());
                v.push(n / &d);
            }
            d += 1;
        }
        v
    };
    let trimmed = UPoly::from_bigints(&c);
    for num in divisors(&a0) {
        for den in divisors(&an) {
            for s in [1i64, -1] {
                let r = Q::new(&num * s, den.clone());
                if trimmed.eval(&r).is_zero() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
    }
    out.sort();
    out
}

/// Resultant `Res(a, b)` via the Euclidean recurrence.
pub fn resultant(a: &UPoly, b: &UPoly) -> Q {
    if a.is_zero() || b.is_zero() {
        return Q::zero();
    }
    let (da, db) = (a.degree(), b.degree());
    if db == 0 {
        return num_traits::pow(b.lc(), da);
    }
    if da == 0 {
        return num_traits::pow(a.lc(), db);
    }
    let r = a.rem(b);
    if r.is_zero() {
        return Q::zero();
    }
    let sign = if da % 2 == 1 && db % 2 == 1 { q(-1) } else { q(1) };
    let dr = r.degree();
    sign * num_traits::pow(b.lc(), da - dr) * resultant(b, &r)
}

/// `disc(p) = (-1)^{d(d-1)/2} Res(p, p') / lc(p)`.
pub fn discriminant(p: &UPoly) -> Result<Q, UniError> {
    if p.is_zero() {
        return Err(UniError::ZeroPolynomial);
    }
    let d = p.degree();
    if d < 2 {
        return Err(UniError::DegreeTooLow(d));
    }
    let r = resultant(p, &p.derivative());
    let sign = if (d * (d - 1) / 2) % 2 == 1 { q(-1) } else { q(1) };
    Ok(sign * r / p.lc())
}

/// Newton interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Q], ys: &[Q]) -> UPoly {
    let n = xs.len();
    let mut dd: Vec<Q> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = UPoly::zero();
    for i in (0..n).rev() {
        acc = &(&acc * &UPoly::linear_root(&xs[i])) + &UPoly::constant(dd[i].clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn p(c: &[i64]) -> UPoly {
        UPoly::from_ints(c)
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 1])), p(&[-1, 1]));
        let (g, s, t) = p(&[-2, 0, 1]).xgcd(&p(&[0, 1]));
        assert_eq!(g, UPoly::one());
        assert_eq!(&(&s * &p(&[-2, 0, 1])) + &(&t * &p(&[0, 1])), UPoly::one());
    }

    #[test]
    fn yun_examples() {
        // (t-1)^2 (t+2)
        let f = yun_squarefree(&p(&[2, -3, 0, 1])).unwrap();
        assert_eq!(f, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);
        let f = yun_squarefree(&p(&[0, 0, 1])).unwrap();
        assert_eq!(f, vec![(p(&[0, 1]), 2)]);
        let f = yun_squarefree(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(f, vec![(p(&[-2, 0, 1]), 1)]);
        assert_eq!(yun_squarefree(&UPoly::zero()), Err(UniError::ZeroPolynomial));
    }

    #[test]
    fn rational_root_examples() {
        assert_eq!(rational_roots(&p(&[1, -3, 2])).unwrap(), vec![qf(1, 2), q(1)]);
        assert!(rational_roots(&p(&[-2, 0, 1])).unwrap().is_empty());
        assert!(rational_roots(&p(&[-27, 27, 5])).unwrap().is_empty());
        assert!(rational_roots_by_candidates(&p(&[-27, 27, 5])).is_empty());
        assert_eq!(rational_roots_by_candidates(&p(&[1, -3, 2])), vec![qf(1, 2), q(1)]);
        assert_eq!(rational_roots(&UPoly::zero()), Err(UniError::ZeroPolynomial));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[-1, -3, 0, 1])).unwrap(), q(81));
        assert_eq!(discriminant(&p(&[-2, 0, 0, 1])).unwrap(), q(-108));
        assert_eq!(discriminant(&p(&[-27, 27, 5])).unwrap(), q(27 * 27 + 4 * 5 * 27));
        assert_eq!(discriminant(&p(&[1, 1])), Err(UniError::DegreeTooLow(1)));
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[-27, 27, 5]).to_string(), "5*t^2 + 27*t - 27");
        assert_eq!(UPoly::new(vec![qf(-1, 2), q(0), q(1)]).to_string(), "t^2 - 1/2");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
    }

    #[test]
    fn interpolation_recovers() {
        let f = p(&[3, -1, 0, 2]);
        let xs: Vec<Q> = (0..4).map(q).collect();
        let ys: Vec<Q> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(interpolate(&xs, &ys), f);
    }
}
