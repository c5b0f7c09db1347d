//! Closed forms by radicals.

use super::NFElement;
use crate::interval::Interval;
use crate::rational::{fmt_q, root_bounds, round_decimal, split_square, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RadicalNode {
    Rational(Q),
    /// Principal real `k`-th root.
    Root(u32, Box<RadicalNode>),
    Add(Box<RadicalNode>, Box<RadicalNode>),
    Sub(Box<RadicalNode>, Box<RadicalNode>),
    Mul(Box<RadicalNode>, Box<RadicalNode>),
    Div(Box<RadicalNode>, Box<RadicalNode>),
    Neg(Box<RadicalNode>),
}

impl RadicalNode {
    /// Interval enclosure; roots are bounded to `bits` binary digits.
    pub fn enclose(&self, bits: u64) -> Option<Interval> {
        use RadicalNode::*;
        Some(match self {
            Rational(r) => Interval::point(r.clone()),
            Root(k, x) => {
                let iv = x.enclose(bits)?;
                if *k % 2 == 0 && iv.lo.is_negative() {
                    return None;
                }
                let (lo, _) = root_bounds(&iv.lo, *k, bits);
                let (_, hi) = root_bounds(&iv.hi, *k, bits);
                Interval::new(lo, hi)
            }
            Add(a, b) => &a.enclose(bits)? + &b.enclose(bits)?,
            Sub(a, b) => &a.enclose(bits)? - &b.enclose(bits)?,
            Mul(a, b) => &a.enclose(bits)? * &b.enclose(bits)?,
            Div(a, b) => {
                let d = b.enclose(bits)?;
                if d.contains_zero() {
                    return None;
                }
                &a.enclose(bits)? * &d.recip()?
            }
            Neg(a) => -&a.enclose(bits)?,
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            RadicalNode::Add(..) | RadicalNode::Sub(..) => 1,
            RadicalNode::Mul(..) | RadicalNode::Div(..) => 2,
            RadicalNode::Neg(..) => 3,
            RadicalNode::Rational(r) if !r.is_integer() || r.is_negative() => 2,
            _ => 4,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for RadicalNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use RadicalNode::*;
        match self {
            Rational(r) => write!(f, "{}", fmt_q(r)),
            Root(2, x) => write!(f, "sqrt({x})"),
            Root(k, x) => write!(f, "root({x}, {k})"),
            Add(a, b) => {
                a.fmt_child(f, 1)?;
                write!(f, " + ")?;
                b.fmt_child(f, 2)
            }
            Sub(a, b) => {
                a.fmt_child(f, 1)?;
                write!(f, " - ")?;
                b.fmt_child(f, 2)
            }
            Mul(a, b) => {
                a.fmt_child(f, 2)?;
                write!(f, "*")?;
                b.fmt_child(f, 3)
            }
            Div(a, b) => {
                a.fmt_child(f, 2)?;
                write!(f, "/")?;
                b.fmt_child(f, 3)
            }
            Neg(a) => {
                write!(f, "-")?;
                a.fmt_child(f, 3)
            }
        }
    }
}

/// A radical expression for a real number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalExpr {
    pub node: RadicalNode,
}

impl RadicalExpr {
    /// Enclosure of width at most `width`.
    pub fn enclose(&self, width: &Q) -> Interval {
        let mut bits = 32;
        loop {
            if let Some(iv) = self.node.enclose(bits) {
                if &iv.width() <= width {
                    return iv;
                }
            }
            bits *= 2;
        }
    }

    /// Decimal string with `digits` places and its error bound
    /// `10^-digits`.
    pub fn approx(&self, digits: usize) -> (String, Q) {
        let err = Q::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits));
        let mut width = &err / Q::from_integer(BigInt::from(100));
        loop {
            let iv = self.enclose(&width);
            let a = round_decimal(&iv.lo, digits);
            let b = round_decimal(&iv.hi, digits);
            if a == b {
                return (a, err);
            }
            width /= Q::from_integer(BigInt::from(16));
        }
    }
}

impl fmt::Display for RadicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.node)
    }
}

fn int(n: BigInt) -> Box<RadicalNode> {
    Box::new(RadicalNode::Rational(Q::from_integer(n)))
}

pub(super) fn to_radical(a: &NFElement) -> Option<RadicalExpr> {
    if let Some(r) = a.is_rational() {
        return Some(RadicalExpr {
            node: RadicalNode::Rational(r),
        });
    }
    let field = a.field();
    if field.degree() != 2 {
        return None;
    }
    // θ = (-B ± √D) / 2A for the primitive minimal polynomial A t² + B t + C
    let m = field.generator().minpoly();
    let (ca, cb, cc) = (m.coeff(2), m.coeff(1), m.coeff(0));
    let disc = &cb * &cb - Q::from_integer(BigInt::from(4)) * &ca * &cc;
    let sign = if field.generator().index() == 0 { -1 } else { 1 };
    let (k, squarefree) = split_square(disc.numer(), 1 << 20);
    // a = r0 + r1 θ = p + s √squarefree
    let r0 = a.rep().coeff(0);
    let r1 = a.rep().coeff(1);
    let two_a = Q::from_integer(BigInt::from(2)) * &ca;
    let p = &r0 - &r1 * &cb / &two_a;
    let s = &r1 * Q::from_integer(k * sign) / &two_a;
    // common denominator
    let den = p.denom().lcm(s.denom());
    let pn = (&p * Q::from_integer(den.clone())).to_integer();
    let sn = (&s * Q::from_integer(den.clone())).to_integer();
    let sqrt = Box::new(RadicalNode::Root(2, int(squarefree)));
    let surd = if sn.abs().is_one() {
        sqrt
    } else {
        Box::new(RadicalNode::Mul(int(sn.abs()), sqrt))
    };
    let num = if pn.is_zero() {
        if sn.is_negative() {
            RadicalNode::Neg(surd)
        } else {
            *surd
        }
    } else if sn.is_negative() {
        RadicalNode::Sub(int(pn), surd)
    } else {
        RadicalNode::Add(int(pn), surd)
    };
    let node = if den.is_one() {
        num
    } else {
        RadicalNode::Div(Box::new(num), int(den))
    };
    Some(RadicalExpr { node })
}
