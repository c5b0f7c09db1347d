//! Helpers around arbitrary-precision rationals.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Exact rational number used for every coefficient in the crate.
pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {literal:?}: {reason}")]
pub struct RationalParseError {
    pub literal: String,
    pub reason: &'static str,
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses an integer (`"-3"`) or a fraction (`"27/2"`). Decimal points and
/// exponents are rejected so that every accepted literal is exact.
pub fn parse_rational(s: &str) -> Result<Q, RationalParseError> {
    let err = |reason| RationalParseError {
        literal: s.to_string(),
        reason,
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(err("empty literal"));
    }
    if t.contains(['.', 'e', 'E']) {
        return Err(err("decimals are not accepted, use an integer or p/q"));
    }
    let parse_int = |part: &str| -> Result<BigInt, RationalParseError> {
        let part = part.trim();
        let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err("expected an integer or p/q"));
        }
        part.parse::<BigInt>().map_err(|_| err("expected an integer or p/q"))
    };
    match t.split_once('/') {
        None => Ok(Q::from_integer(parse_int(t)?)),
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(Q::new(n, d))
        }
    }
}

/// Canonical `p/q` rendering (integers without a denominator).
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub struct DisplayQ<'a>(pub &'a Q);

impl fmt::Display for DisplayQ<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_q(self.0))
    }
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // numerator/denominator beyond f64 range: scale both down
        let shift = x.numer().bits().max(x.denom().bits()).saturating_sub(1000);
        let n = (x.numer() >> shift).to_f64().unwrap_or(0.0);
        let d = (x.denom() >> shift).to_f64().unwrap_or(1.0);
        n / d
    })
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn sqrt_exact(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

pub fn is_square(x: &Q) -> bool {
    sqrt_exact(x).is_some()
}

/// Lower and upper rational bounds of `x^(1/k)` (x ≥ 0 for even k) whose
/// gap is at most `2^-bits`.
pub fn root_bounds(x: &Q, k: u32, bits: u64) -> (Q, Q) {
    assert!(k >= 1);
    let neg = x.is_negative();
    assert!(!neg || k % 2 == 1, "even root of a negative number");
    let a = x.abs();
    // floor((a * 2^(k*bits))^(1/k)) / 2^bits
    let scale = BigInt::one() << (bits as usize * k as usize);
    let scaled = (a.numer() * scale).div_floor(a.denom());
    let r = scaled.nth_root(k);
    let den = BigInt::one() << bits as usize;
    let lo = Q::new(r.clone(), den.clone());
    let hi = if num_traits::pow(r.clone(), k as usize) == scaled
        && (a.numer() * (BigInt::one() << (bits as usize * k as usize))).is_multiple_of(a.denom())
    {
        lo.clone()
    } else {
        Q::new(r + 1, den)
    };
    if neg {
        (-hi, -lo)
    } else {
        (lo, hi)
    }
}

/// Largest `s` with `s^2 | n`, together with `n / s^2`, using trial division
/// up to `limit`. Leftover cofactors above the limit stay in the radicand.
pub fn split_square(n: &BigInt, limit: u64) -> (BigInt, BigInt) {
    let sign = n.sign();
    let mut rest = n.abs();
    let mut out = BigInt::one();
    if rest.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let mut p = 2u64;
    while p <= limit {
        let pp = BigInt::from(p * p);
        if pp > rest {
            break;
        }
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            out *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = rest.sqrt();
    if &r * &r == rest {
        out *= r;
        rest = BigInt::one();
    }
    if sign == Sign::Minus {
        rest = -rest;
    }
    (out, rest)
}

/// Rounds `x` to `digits` places after the decimal point, ties away from zero.
pub fn round_decimal(x: &Q, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = x.abs() * Q::from_integer(scale);
    let twice = &scaled * q(2);
    let r = (twice.floor() + q(1)) / q(2);
    let r = r.floor().to_integer();
    digits_string(&r, digits, x.is_negative() && !r.is_zero())
}

pub(crate) fn digits_string(r: &BigInt, digits: usize, negative: bool) -> String {
    let s = r.to_string();
    let s = if s.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = s.split_at(s.len() - digits);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(int);
    if digits > 0 {
        out.push('.');
        out.push_str(frac);
    }
    out
}
