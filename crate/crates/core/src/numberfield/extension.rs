//! Real roots of polynomials over a number field, each presented in a
//! primitive extension field (Trager's norm method).

use super::{NFElement, NfError, NumberField};
use crate::rational::{q, Q};
use crate::unipoly::{factor, interpolate, resultant, UPoly, UniError};
use std::sync::Arc;

/// A real root of a polynomial over `F`, living in a field `E ⊇ F`.
#[derive(Debug, Clone)]
pub struct Adjoined {
    pub field: Arc<NumberField>,
    /// Image of `F`'s generator in `E`.
    pub theta_image: NFElement,
    pub root: NFElement,
}

#[derive(Debug, Clone)]
pub struct RootsOver {
    /// Distinct real roots, ascending.
    pub roots: Vec<Adjoined>,
    /// Distinct non-real roots.
    pub nonreal: usize,
}

/// Maps `x ∈ F` into `E` given the image of `F`'s generator.
pub fn embed(x: &NFElement, theta_image: &NFElement) -> NFElement {
    let e = theta_image.field();
    let mut acc = NFElement::zero(e);
    for c in x.rep().coeffs().iter().rev() {
        acc = &(&acc * theta_image) + &NFElement::from_rational(e, c.clone());
    }
    acc
}

/// `Res_s(m(s), Q(s, u - c·s))` as a polynomial in `u`, where `m` is monic
/// and `Q = Σ_j qs[j](s) t^j`.
pub fn norm_resultant(m: &UPoly, qs: &[UPoly], c: &Q) -> UPoly {
    let deg = m.degree() * qs.len().saturating_sub(1);
    let xs: Vec<Q> = (0..=deg as i64).map(q).collect();
    let ys: Vec<Q> = xs
        .iter()
        .map(|u0| {
            // Horner in t with t = u0 - c s
            let lin = UPoly::new(vec![u0.clone(), -c.clone()]);
            let mut acc = UPoly::zero();
            for qj in qs.iter().rev() {
                acc = (&(&acc * &lin) + qj).rem(m);
            }
            resultant(m, &acc)
        })
        .collect();
    interpolate(&xs, &ys)
}

fn trim(p: &mut Vec<NFElement>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn monic(p: &[NFElement]) -> Vec<NFElement> {
    let inv = p.last().unwrap().inverse().expect("trimmed");
    p.iter().map(|c| c * &inv).collect()
}

fn rem(a: &[NFElement], d: &[NFElement]) -> Vec<NFElement> {
    let mut r = a.to_vec();
    let dd = d.len() - 1;
    let inv = d[dd].inverse().expect("trimmed");
    while r.len() > dd {
        let k = r.len() - 1 - dd;
        let f = &r[r.len() - 1] * &inv;
        for (j, dc) in d.iter().enumerate() {
            r[k + j] = &r[k + j] - &(&f * dc);
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn div_exact(a: &[NFElement], d: &[NFElement]) -> Vec<NFElement> {
    let field = a[0].field().clone();
    let dd = d.len() - 1;
    let inv = d[dd].inverse().expect("trimmed");
    let mut r = a.to_vec();
    let mut quot = vec![NFElement::zero(&field); a.len() - dd];
    for k in (0..quot.len()).rev() {
        let f = &r[k + dd] * &inv;
        for (j, dc) in d.iter().enumerate() {
            r[k + j] = &r[k + j] - &(&f * dc);
        }
        quot[k] = f;
    }
    quot
}

/// Monic gcd in F[t]; empty when both inputs are zero.
pub fn gcd_over(a: &[NFElement], b: &[NFElement]) -> Vec<NFElement> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = std::mem::replace(&mut b, r);
    }
    if a.is_empty() {
        a
    } else {
        monic(&a)
    }
}

fn derivative(p: &[NFElement]) -> Vec<NFElement> {
    let mut d: Vec<NFElement> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&q(i as i64)))
        .collect();
    trim(&mut d);
    d
}

/// Real roots of `p ∈ F[t]` (coefficients low degree first).
pub fn real_roots_over(field: &Arc<NumberField>, p: &[NFElement]) -> Result<RootsOver, NfError> {
    let mut p = p.to_vec();
    trim(&mut p);
    if p.is_empty() {
        return Err(NfError::Poly(UniError::ZeroPolynomial));
    }
    if p.len() == 1 {
        return Ok(RootsOver {
            roots: Vec::new(),
            nonreal: 0,
        });
    }
    let g = gcd_over(&p, &derivative(&p));
    let sf = monic(&if g.len() > 1 { div_exact(&p, &g) } else { p });
    let n = sf.len() - 1;
    let theta = NFElement::theta(field);
    let mut roots = Vec::new();
    if n == 1 {
        roots.push(Adjoined {
            field: field.clone(),
            theta_image: theta,
            root: -&sf[0],
        });
    } else if field.degree() == 1 {
        let base: Vec<Q> = sf.iter().map(|c| c.is_rational().unwrap()).collect();
        let r = field.generator().as_rational().unwrap();
        for (f, _) in factor(&UPoly::new(base))?.factors {
            if f.degree() == 1 {
                roots.push(Adjoined {
                    field: field.clone(),
                    theta_image: theta.clone(),
                    root: NFElement::from_rational(field, -f.coeff(0) / f.coeff(1)),
                });
                continue;
            }
            let real = crate::unipoly::count_real_roots(&f);
            for j in 0..real {
                let e = NumberField::from_irreducible(&f, j)?;
                roots.push(Adjoined {
                    theta_image: NFElement::from_rational(&e, r.clone()),
                    root: NFElement::theta(&e),
                    field: e,
                });
            }
        }
    } else {
        roots = trager(field, &sf)?;
    }
    roots.sort_by_key(|a| a.root.to_algebraic());
    let nonreal = n - roots.len();
    Ok(RootsOver { roots, nonreal })
}

fn shifts() -> impl Iterator<Item = Q> {
    (0i64..).flat_map(|k| if k == 0 { vec![q(0)] } else { vec![q(k), q(-k)] })
}

fn trager(field: &Arc<NumberField>, sf: &[NFElement]) -> Result<Vec<Adjoined>, NfError> {
    let m = field.modulus();
    let qs: Vec<UPoly> = sf.iter().map(|c| c.rep().clone()).collect();
    let (c, norm) = shifts()
        .map(|c| {
            let nr = norm_resultant(m, &qs, &c);
            (c, nr)
        })
        .find(|(_, nr)| nr.is_squarefree())
        .expect("some shift gives a squarefree norm");
    let target = field.generator().index();
    let iso = field.generator().isolation();
    let mut out = Vec::new();
    for (f, _) in factor(&norm)?.factors {
        let real = crate::unipoly::count_real_roots(&f);
        for j in 0..real {
            let e = NumberField::from_irreducible(&f, j)?;
            let gamma = NFElement::theta(&e);
            let lift = |p: &UPoly| -> Vec<NFElement> {
                p.coeffs()
                    .iter()
                    .map(|x| NFElement::from_rational(&e, x.clone()))
                    .collect()
            };
            let m_e = lift(m);
            // Q(s, γ - c s) over E[s]
            let lin = vec![gamma.clone(), NFElement::from_rational(&e, -c.clone())];
            let mut acc: Vec<NFElement> = Vec::new();
            for qj in qs.iter().rev() {
                acc = add(&mul(&acc, &lin), &lift(qj));
            }
            let h = gcd_over(&m_e, &acc);
            if h.len() != 2 {
                continue;
            }
            let a = -&h[0];
            if locate(&a, iso) != Some(target) {
                continue;
            }
            let root = &gamma - &a.scale(&c);
            out.push(Adjoined {
                field: e,
                theta_image: a,
                root,
            });
        }
    }
    Ok(out)
}

fn locate(a: &NFElement, iso: &crate::unipoly::RootIsolation) -> Option<usize> {
    let mut width = q(1);
    for _ in 0..256 {
        let iv = a.enclosure(&width);
        if let Some(i) = iso.locate(&iv) {
            return Some(i);
        }
        width /= q(16);
    }
    None
}

fn add(a: &[NFElement], b: &[NFElement]) -> Vec<NFElement> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut r: Vec<NFElement> = long.to_vec();
    for (i, x) in short.iter().enumerate() {
        r[i] = &r[i] + x;
    }
    trim(&mut r);
    r
}

fn mul(a: &[NFElement], b: &[NFElement]) -> Vec<NFElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let field = a[0].field().clone();
    let mut r = vec![NFElement::zero(&field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] = &r[i + j] + &(x * y);
        }
    }
    trim(&mut r);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn consts(field: &Arc<NumberField>, c: &[i64]) -> Vec<NFElement> {
        c.iter().map(|&x| NFElement::from_rational(field, q(x))).collect()
    }

    #[test]
    fn roots_over_rationals() {
        let k = NumberField::rationals();
        // (t - 1/2)(t^2 - 2)(t^2 + 1)
        let p = &(&UPoly::linear_root(&qf(1, 2)) * &UPoly::from_ints(&[-2, 0, 1])) * &UPoly::from_ints(&[1, 0, 1]);
        let coeffs: Vec<NFElement> = p.coeffs().iter().map(|c| NFElement::from_rational(&k, c.clone())).collect();
        let r = real_roots_over(&k, &coeffs).unwrap();
        assert_eq!(r.roots.len(), 3);
        assert_eq!(r.nonreal, 2);
        let vals: Vec<String> = r.roots.iter().map(|a| a.root.approx_decimal(4)).collect();
        assert_eq!(vals, vec!["-1.4142", "0.5000", "1.4142"]);
    }

    #[test]
    fn sqrt3_over_sqrt2() {
        let k = NumberField::new(&UPoly::from_ints(&[-2, 0, 1]), 1).unwrap();
        let r = real_roots_over(&k, &consts(&k, &[-3, 0, 1])).unwrap();
        assert_eq!(r.roots.len(), 2);
        for adj in &r.roots {
            assert_eq!(adj.field.degree(), 4);
            let t = &adj.theta_image;
            assert_eq!((t * t).is_rational(), Some(q(2)));
            assert_eq!(t.sign(), 1);
            let s = &adj.root;
            assert_eq!((s * s).is_rational(), Some(q(3)));
        }
        assert_eq!(r.roots[0].root.sign(), -1);
        assert_eq!(r.roots[1].root.sign(), 1);
    }

    #[test]
    fn root_already_in_field() {
        // t^2 - 2 over Q(√2) has both roots in the base field
        let k = NumberField::new(&UPoly::from_ints(&[-2, 0, 1]), 0).unwrap();
        let r = real_roots_over(&k, &consts(&k, &[-2, 0, 1])).unwrap();
        assert_eq!(r.roots.len(), 2);
        let neg = &r.roots[0];
        let embedded = embed(&NFElement::theta(&k), &neg.theta_image);
        assert_eq!(embedded.approx_decimal(6), "-1.414214");
        assert_eq!(neg.root.approx_decimal(6), "-1.414214");
        assert!(r.roots[1].root.sign() > 0);
    }

    #[test]
    fn norm_of_element() {
        let k = NumberField::new(&UPoly::from_ints(&[-2, 0, 1]), 1).unwrap();
        let x = NFElement::new(&k, &UPoly::from_ints(&[1, 1]));
        // (1 + √2)(1 - √2) = -1, trace 2
        assert_eq!(x.charpoly(), UPoly::from_ints(&[-1, -2, 1]));
        let n = norm_resultant(k.modulus(), &[UPoly::from_ints(&[0, -1]), UPoly::one()], &q(0));
        assert_eq!(n, UPoly::from_ints(&[-2, 0, 1]));
    }
}
