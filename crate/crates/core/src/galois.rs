//! Galois groups of low-degree eliminants and orbits of solution tuples.

use crate::groebner::{GroebnerBasis, ShapeForm};
use crate::multipoly::MPoly;
use crate::numberfield::{real_roots_over, AlgebraicNumber, NFElement, NumberField};
use crate::rational::{is_square, Q};
use crate::tower::Partial;
use crate::unipoly::{count_real_roots, discriminant, factor, rational_roots, UPoly, UniError};
use num_traits::Zero;
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GaloisError {
    #[error("polynomial {0} is not irreducible over the rationals")]
    NotIrreducible(String),
    #[error("the sample does not satisfy equation {0}")]
    SampleNotOnVariety(usize),
    #[error(transparent)]
    Poly(#[from] UniError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GroupLabel {
    C1,
    C2,
    C3,
    S3,
    C4,
    V4,
    D4,
    A4,
    S4,
    Unknown,
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisInfo {
    pub degree: usize,
    pub group: GroupLabel,
    /// `None` when the group is not identified.
    pub solvable: Option<bool>,
    pub real_roots: usize,
}

pub fn solvable_by_radicals(info: &GaloisInfo) -> bool {
    info.solvable == Some(true)
}

/// Galois group of an irreducible polynomial of degree at most four.
pub fn identify_group(p: &UPoly) -> Result<GaloisInfo, GaloisError> {
    let f = factor(p)?;
    if !f.is_irreducible() {
        return Err(GaloisError::NotIrreducible(p.to_string()));
    }
    let m = p.monic();
    let degree = m.degree();
    let square_disc = || -> Result<bool, GaloisError> { Ok(is_square(&discriminant(&m)?)) };
    let group = match degree {
        1 => GroupLabel::C1,
        2 => GroupLabel::C2,
        3 => {
            if square_disc()? {
                GroupLabel::C3
            } else {
                GroupLabel::S3
            }
        }
        4 => quartic_group(&m)?,
        _ => GroupLabel::Unknown,
    };
    Ok(GaloisInfo {
        degree,
        group,
        solvable: (group != GroupLabel::Unknown).then_some(true),
        real_roots: count_real_roots(&m),
    })
}

/// `t³ − b t² + (ac − 4d) t − (a²d − 4bd + c²)` for `x⁴ + a x³ + b x² + c x + d`.
pub fn resolvent_cubic(m: &UPoly) -> UPoly {
    let (a, b, c, d) = (m.coeff(3), m.coeff(2), m.coeff(1), m.coeff(0));
    let four = Q::from_integer(4.into());
    UPoly::new(vec![
        -(&a * &a * &d - &four * &b * &d + &c * &c),
        &a * &c - &four * &d,
        -b,
        Q::from_integer(1.into()),
    ])
}

fn quartic_group(m: &UPoly) -> Result<GroupLabel, GaloisError> {
    let disc = discriminant(m)?;
    let r = resolvent_cubic(m);
    let roots = rational_roots(&r)?;
    Ok(match roots.len() {
        0 => {
            if is_square(&disc) {
                GroupLabel::A4
            } else {
                GroupLabel::S4
            }
        }
        1 => {
            // Kappe–Warren: C4 iff both quadratics split over ℚ(√disc)
            let r0 = &roots[0];
            let (a, b, d) = (m.coeff(3), m.coeff(2), m.coeff(0));
            let four = Q::from_integer(4.into());
            let d1 = r0 * r0 - &four * &d;
            let d2 = &a * &a - &four * (&b - r0);
            let splits = |x: &Q| x.is_zero() || is_square(x) || is_square(&(x * &disc));
            if splits(&d1) && splits(&d2) {
                GroupLabel::C4
            } else {
                GroupLabel::D4
            }
        }
        _ => GroupLabel::V4,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TupleSource {
    Sample,
    Conjugate,
    Rational,
    Substitution,
}

/// Exact values for every ring variable, all in one number field.
#[derive(Debug, Clone)]
pub struct SolutionTuple {
    pub coords: Vec<NFElement>,
    pub source: TupleSource,
}

impl SolutionTuple {
    pub fn field(&self) -> &std::sync::Arc<NumberField> {
        self.coords[0].field()
    }

    /// Canonical identity of the point: each coordinate as a real algebraic
    /// number. Ordering is by value, coordinate by coordinate.
    pub fn key(&self) -> Vec<AlgebraicNumber> {
        self.coords.iter().map(|c| c.to_algebraic()).collect()
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| c.is_rational().is_some())
    }

    /// Index of the first equation not vanishing at the tuple.
    pub fn first_violation(&self, equations: &[MPoly]) -> Option<usize> {
        let point: Vec<Option<NFElement>> = self.coords.iter().cloned().map(Some).collect();
        equations.iter().position(|e| {
            if e.is_zero() {
                return false;
            }
            if e.is_constant() {
                return true;
            }
            !e.evaluate(&point).expect("complete point").is_zero()
        })
    }
}

/// Sorts by value and drops repeated points.
pub fn canonicalize(tuples: Vec<SolutionTuple>) -> Vec<SolutionTuple> {
    let mut keyed: Vec<(Vec<AlgebraicNumber>, SolutionTuple)> =
        tuples.into_iter().map(|t| (t.key(), t)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, t)| t).collect()
}

/// Sample tuple of the shape form at a real root of an irreducible factor.
pub fn shape_tuple(shape: &ShapeForm, nvars: usize, root: &AlgebraicNumber, source: TupleSource) -> SolutionTuple {
    let theta = match root.as_rational() {
        Some(r) => NFElement::from_rational(&NumberField::rationals(), r),
        None => NFElement::theta(&NumberField::from_number(root.clone())),
    };
    let coords = (0..nvars)
        .map(|w| match shape.coordinate_maps.get(&w) {
            Some(h) => eval_at(h, &theta),
            None => theta.clone(),
        })
        .collect();
    SolutionTuple { coords, source }
}

fn eval_at(h: &UPoly, x: &NFElement) -> NFElement {
    let mut acc = NFElement::zero(x.field());
    for c in h.coeffs().iter().rev() {
        acc = &(&acc * x) + &NFElement::from_rational(x.field(), c.clone());
    }
    acc
}

/// Conjugate data for the fallback orbit: the real roots of every
/// variable's eliminant, grouped by irreducible factor.
#[derive(Debug, Clone)]
pub struct Conjugates {
    pub factors: Vec<Vec<UPoly>>,
}

pub enum OrbitMode<'a> {
    Shape(&'a ShapeForm),
    Fallback {
        gb: &'a GroebnerBasis,
        conjugates: &'a Conjugates,
    },
}

#[derive(Debug, Clone, Default)]
pub struct Orbit {
    pub tuples: Vec<SolutionTuple>,
    /// Conjugations applied (shape path) or candidate tuples tested
    /// (fallback path).
    pub actions: usize,
    pub candidates: usize,
    /// Root-finding calls made while assembling fallback candidates.
    pub factorizations: usize,
}

/// All conjugates of `sample` that lie on the variety of `equations`.
pub fn orbit(sample: &SolutionTuple, equations: &[MPoly], mode: OrbitMode) -> Result<Orbit, GaloisError> {
    if let Some(i) = sample.first_violation(equations) {
        return Err(GaloisError::SampleNotOnVariety(i));
    }
    match mode {
        OrbitMode::Shape(shape) => {
            let v = shape.primitive_var;
            let theta = sample.coords[v].to_algebraic();
            let iso = theta.isolation();
            let mut out = Vec::new();
            let mut actions = 0;
            for j in 0..iso.len() {
                let root = if j == theta.index() {
                    theta.clone()
                } else {
                    actions += 1;
                    AlgebraicNumber::new(theta.minpoly(), j).expect("same minimal polynomial")
                };
                let src = if j == theta.index() {
                    TupleSource::Sample
                } else {
                    TupleSource::Conjugate
                };
                out.push(shape_tuple(shape, sample.coords.len(), &root, src));
            }
            Ok(Orbit {
                candidates: out.len(),
                tuples: canonicalize(out),
                actions,
                factorizations: 0,
            })
        }
        OrbitMode::Fallback { gb, conjugates } => {
            let mut orbit = Orbit::default();
            let n = sample.coords.len();
            let found = fallback_members(gb, conjugates, n, &mut orbit);
            let sample_key = sample.key();
            let tuples: Vec<SolutionTuple> = found
                .into_iter()
                .map(|coords| {
                    let mut t = SolutionTuple {
                        coords,
                        source: TupleSource::Conjugate,
                    };
                    if t.key() == sample_key {
                        t.source = TupleSource::Sample;
                    }
                    t
                })
                .collect();
            orbit.actions = orbit.candidates;
            orbit.tuples = canonicalize(tuples);
            Ok(orbit)
        }
    }
}

/// Enumerates the product of per-coordinate real conjugates, least variable
/// first, pruning any prefix that violates an elimination-ideal generator.
pub fn fallback_members(gb: &GroebnerBasis, conj: &Conjugates, n: usize, stats: &mut Orbit) -> Vec<Vec<NFElement>> {
    let mut out = Vec::new();
    let mut stack = vec![(Partial::empty(n), n)];
    while let Some((partial, next)) = stack.pop() {
        if next == 0 {
            stats.candidates += 1;
            out.push(partial.complete().expect("all assigned"));
            continue;
        }
        let var = next - 1;
        let mut children = Vec::new();
        for f in &conj.factors[var] {
            let coeffs: Vec<NFElement> = f
                .coeffs()
                .iter()
                .map(|c| NFElement::from_rational(&partial.field, c.clone()))
                .collect();
            stats.factorizations += 1;
            let roots = real_roots_over(&partial.field, &coeffs).expect("nonzero factor");
            for adj in &roots.roots {
                let child = partial.extend(var, adj);
                if var == 0 {
                    if child.satisfies(gb.level(var)) {
                        children.push((child, var));
                    } else {
                        stats.candidates += 1;
                    }
                } else if child.satisfies(gb.level(var)) {
                    children.push((child, var));
                }
            }
        }
        // depth-first, ascending values at each level
        children.reverse();
        stack.extend(children);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{buchberger, IdealClass};
    use crate::multipoly::Ring;

    fn p(c: &[i64]) -> UPoly {
        UPoly::from_ints(c)
    }

    #[test]
    fn small_groups() {
        let g = identify_group(&p(&[-27, 27, 5])).unwrap();
        assert_eq!((g.group, g.solvable, g.real_roots), (GroupLabel::C2, Some(true), 2));
        assert_eq!(identify_group(&p(&[-1, -3, 0, 1])).unwrap().group, GroupLabel::C3);
        assert_eq!(identify_group(&p(&[-2, 0, 0, 1])).unwrap().group, GroupLabel::S3);
        assert_eq!(identify_group(&p(&[3, 1])).unwrap().group, GroupLabel::C1);
        assert!(matches!(identify_group(&p(&[-1, 0, 1])), Err(GaloisError::NotIrreducible(_))));
    }

    #[test]
    fn quartic_groups() {
        assert_eq!(identify_group(&p(&[1, 0, 0, 0, 1])).unwrap().group, GroupLabel::V4);
        assert_eq!(identify_group(&p(&[1, 1, 1, 1, 1])).unwrap().group, GroupLabel::C4);
        assert_eq!(identify_group(&p(&[-2, 0, 0, 0, 1])).unwrap().group, GroupLabel::D4);
        assert_eq!(identify_group(&p(&[-1, -1, 0, 0, 1])).unwrap().group, GroupLabel::S4);
        // t^4 + 8t + 12
        assert_eq!(identify_group(&p(&[12, 8, 0, 0, 1])).unwrap().group, GroupLabel::A4);
        assert_eq!(identify_group(&p(&[1, 0, -10, 0, 1])).unwrap().group, GroupLabel::V4);
    }

    #[test]
    fn higher_degree_unknown() {
        let info = identify_group(&p(&[-1, -1, 0, 0, 0, 1])).unwrap();
        assert_eq!(info.group, GroupLabel::Unknown);
        assert!(!solvable_by_radicals(&info));
        assert!(solvable_by_radicals(&identify_group(&p(&[-1, -1, 0, 0, 1])).unwrap()));
    }

    #[test]
    fn shape_orbit() {
        let r = Ring::new(["x", "t"]);
        let eqs = [MPoly::parse(&r, "t^2 - 2").unwrap(), MPoly::parse(&r, "x - t - 1").unwrap()];
        let gb = buchberger(&eqs).unwrap();
        let IdealClass::ZeroDimensional { shape: Some(shape) } = gb.classify() else {
            panic!("expected shape position");
        };
        let root = AlgebraicNumber::new(&p(&[-2, 0, 1]), 1).unwrap();
        let sample = shape_tuple(&shape, 2, &root, TupleSource::Sample);
        let o = orbit(&sample, &eqs, OrbitMode::Shape(&shape)).unwrap();
        assert_eq!(o.tuples.len(), 2);
        assert_eq!(o.actions, 1);
        let vals: Vec<(String, String)> = o
            .tuples
            .iter()
            .map(|t| (t.coords[0].approx_decimal(4), t.coords[1].approx_decimal(4)))
            .collect();
        assert_eq!(vals, vec![("-0.4142".into(), "-1.4142".into()), ("2.4142".into(), "1.4142".into())]);
        // applying the orbit to another member gives the same set
        let again = orbit(&o.tuples[0], &eqs, OrbitMode::Shape(&shape)).unwrap();
        let k1: Vec<_> = o.tuples.iter().map(|t| t.key()).collect();
        let k2: Vec<_> = again.tuples.iter().map(|t| t.key()).collect();
        assert_eq!(k1, k2);
    }

    #[test]
    fn fallback_orbit_filters_sign_patterns() {
        let r = Ring::new(["x", "y"]);
        let eqs: Vec<MPoly> = ["x^2 - 2", "y^2 - 2", "x*y - 2"]
            .iter()
            .map(|s| MPoly::parse(&r, s).unwrap())
            .collect();
        let gb = buchberger(&eqs).unwrap();
        let conj = Conjugates {
            factors: vec![vec![p(&[-2, 0, 1])], vec![p(&[-2, 0, 1])]],
        };
        // sample (√2, √2)
        let k = NumberField::new(&p(&[-2, 0, 1]), 1).unwrap();
        let s = NFElement::theta(&k);
        let sample = SolutionTuple {
            coords: vec![s.clone(), s],
            source: TupleSource::Sample,
        };
        let o = orbit(&sample, &eqs, OrbitMode::Fallback { gb: &gb, conjugates: &conj }).unwrap();
        assert_eq!(o.candidates, 4);
        assert_eq!(o.tuples.len(), 2);
        for t in &o.tuples {
            assert!(t.first_violation(&eqs).is_none());
            assert!(t.coords[0].cmp_value(&t.coords[1]).is_eq());
        }
        let bad = SolutionTuple {
            coords: vec![NFElement::theta(&k), -&NFElement::theta(&k)],
            source: TupleSource::Sample,
        };
        assert_eq!(
            orbit(&bad, &eqs, OrbitMode::Fallback { gb: &gb, conjugates: &conj }).unwrap_err(),
            GaloisError::SampleNotOnVariety(2)
        );
    }
}
