//! Real root isolation with Sturm sequences and bisection.

use super::{UPoly, UniError};
use crate::interval::Interval;
use crate::rational::{q, Q};
use num_traits::{Signed, Zero};

/// Disjoint open intervals `(lo, hi)`, ascending, each holding exactly one
/// real root of `poly`. Endpoints are never roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootIsolation {
    pub poly: UPoly,
    pub intervals: Vec<Interval>,
}

pub fn sturm_sequence(p: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        // positive rescaling keeps signs and tames coefficient growth
        let r = (-&r).primitive_part_q();
        seq.push(r);
    }
    seq
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(seq: &[UPoly], x: &Q) -> usize {
    variations(seq.iter().map(|p| p.sign_at(x)))
}

fn variations_at_infinity(seq: &[UPoly], positive: bool) -> usize {
    variations(seq.iter().map(|p| {
        let s: i8 = if p.lc().is_positive() { 1 } else { -1 };
        if positive || p.degree() % 2 == 0 {
            s
        } else {
            -s
        }
    }))
}

/// Number of distinct real roots of a squarefree polynomial.
pub fn count_real_roots(p: &UPoly) -> usize {
    if p.is_constant() {
        return 0;
    }
    let seq = sturm_sequence(p);
    variations_at_infinity(&seq, false) - variations_at_infinity(&seq, true)
}

/// Roots in the half-open interval `(a, b]`.
pub fn count_roots_between(seq: &[UPoly], a: &Q, b: &Q) -> usize {
    variations_at(seq, a).saturating_sub(variations_at(seq, b))
}

/// Cauchy bound: every root satisfies `|x| < bound`.
pub fn root_bound(p: &UPoly) -> Q {
    let lc = p.lc().abs();
    let m = p.coeffs()[..p.degree()]
        .iter()
        .map(|c| c.abs() / &lc)
        .max()
        .unwrap_or_else(Q::zero);
    (m + q(1)).ceil() + q(1)
}

/// Picks a non-root split point inside `(lo, hi)`, preferring the midpoint.
fn split_point(p: &UPoly, lo: &Q, hi: &Q) -> Q {
    let w = hi - lo;
    let mut den = 2i64;
    loop {
        for num in 1..den {
            let x = lo + &w * Q::new(num.into(), den.into());
            if !p.eval(&x).is_zero() {
                return x;
            }
        }
        den += 1;
    }
}

pub fn isolate_real_roots(p: &UPoly) -> Result<RootIsolation, UniError> {
    if p.is_zero() {
        return Err(UniError::ZeroPolynomial);
    }
    if !p.is_squarefree() {
        return Err(UniError::NotSquarefree);
    }
    let poly = p.primitive();
    let mut intervals = Vec::new();
    if poly.is_constant() {
        return Ok(RootIsolation { poly, intervals });
    }
    let seq = sturm_sequence(&poly);
    let b = root_bound(&poly);
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match count_roots_between(&seq, &lo, &hi) {
            0 => {}
            1 => intervals.push(Interval::new(lo, hi)),
            _ => {
                let m = split_point(&poly, &lo, &hi);
                stack.push((lo, m.clone()));
                stack.push((m, hi));
            }
        }
    }
    intervals.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(RootIsolation { poly, intervals })
}

/// Bisects an isolating interval of a simple root of `p` until its width is
/// at most `width`. Intervals already narrow enough are returned unchanged.
pub fn refine_interval(p: &UPoly, iv: &Interval, width: &Q) -> Interval {
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    if &(&hi - &lo) <= width {
        return iv.clone();
    }
    let slo = p.sign_at(&lo);
    debug_assert!(slo != 0 && slo == -p.sign_at(&hi));
    while &(&hi - &lo) > width {
        let m = (&lo + &hi) / q(2);
        let sm = p.sign_at(&m);
        if sm == 0 {
            // exact rational root; keep a small symmetric box around it
            let r = width / q(4);
            return Interval::new(&m - &r, &m + &r);
        }
        if sm == slo {
            lo = m;
        } else {
            hi = m;
        }
    }
    Interval::new(lo, hi)
}

impl RootIsolation {
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Sub-interval of root `index` with width at most `width`; still isolating.
    pub fn refine(&self, index: usize, width: &Q) -> Interval {
        refine_interval(&self.poly, &self.intervals[index], width)
    }

    /// Index of the isolating interval that strictly contains `iv`.
    pub fn locate(&self, iv: &Interval) -> Option<usize> {
        self.intervals
            .iter()
            .position(|r| iv.inside_open(&r.lo, &r.hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn p(c: &[i64]) -> UPoly {
        UPoly::from_ints(c)
    }

    #[test]
    fn sqrt_two() {
        let iso = isolate_real_roots(&p(&[-2, 0, 1])).unwrap();
        assert_eq!(iso.len(), 2);
        let neg = iso.refine(0, &qf(1, 2));
        let pos = iso.refine(1, &qf(1, 2));
        assert!(neg.lo >= q(-2) && neg.hi <= q(-1));
        assert!(pos.lo >= q(1) && pos.hi <= q(2));
        let fine = iso.refine(1, &qf(1, 1_000_000));
        assert!(fine.width() <= qf(1, 1_000_000));
        assert!(fine.lo < qf(1_414_214, 1_000_000) && fine.hi > qf(1_414_213, 1_000_000));
    }

    #[test]
    fn eliminant_roots() {
        let f = p(&[-27, 27, 5]);
        let iso = isolate_real_roots(&f).unwrap();
        assert_eq!(iso.len(), 2);
        let neg = iso.refine(0, &qf(1, 100));
        assert!(neg.lo < qf(-626, 100) && neg.hi > qf(-627, 100));
        let pos = iso.refine(1, &qf(1, 100_000_000));
        assert!(pos.lo > q(0) && pos.hi < q(1));
        assert!(pos.lo < qf(86_230_263, 100_000_000) && pos.hi > qf(86_230_262, 100_000_000));
        assert_eq!(count_real_roots(&f), 2);
    }

    #[test]
    fn no_real_roots() {
        let iso = isolate_real_roots(&p(&[1, 0, 1])).unwrap();
        assert!(iso.is_empty());
        assert_eq!(isolate_real_roots(&p(&[1, -2, 1])), Err(UniError::NotSquarefree));
    }

    #[test]
    fn refine_is_idempotent_for_wide_request() {
        let iso = isolate_real_roots(&p(&[-2, 0, 1])).unwrap();
        let narrow = iso.refine(1, &qf(1, 1000));
        let again = refine_interval(&iso.poly, &narrow, &q(1));
        assert_eq!(narrow, again);
    }

    #[test]
    fn rational_root_refinement() {
        let iso = isolate_real_roots(&p(&[-1, 2])).unwrap();
        let r = iso.refine(0, &qf(1, 1000));
        assert!(r.lo < qf(1, 2) && r.hi > qf(1, 2));
    }
}
