//! Buchberger's algorithm over ℚ in lex order, reduced bases, and the
//! structural queries the solver needs (zero-dimensionality, shape
//! position, univariate eliminants).

use crate::multipoly::{mono_coprime, mono_degree, mono_div, mono_divides, mono_lcm, MPoly, Monomial, Ring};
use crate::unipoly::UPoly;
use crate::rational::Q;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("empty generator set")]
    NoGenerators,
}

/// Normal form of `p` modulo `basis` (full reduction).
pub fn reduce(p: &MPoly, basis: &[MPoly]) -> MPoly {
    let mut rest = p.clone();
    let mut out = MPoly::zero(p.ring());
    while let Some((m, c)) = rest.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|lm| mono_divides(lm, &m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading_term().unwrap();
                let f = &c / lc;
                let shift = mono_div(&m, lm);
                rest.sub_mul_term(g, &shift, &f);
            }
            None => {
                rest.add_term(m.clone(), -c.clone());
                out.add_term(m, c);
            }
        }
    }
    out
}

pub fn s_polynomial(f: &MPoly, g: &MPoly) -> Result<MPoly, GroebnerError> {
    let ((mf, cf), (mg, cg)) = match (f.leading_term(), g.leading_term()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(GroebnerError::ZeroPolynomial),
    };
    let l = mono_lcm(mf, mg);
    let a = f.mul_term(&mono_div(&l, mf), &cf.recip());
    let b = g.mul_term(&mono_div(&l, mg), &cg.recip());
    Ok(&a - &b)
}

/// Counters from one Buchberger run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BuchbergerTrace {
    pub pairs_created: usize,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub product_criterion: usize,
    pub chain_criterion: usize,
    pub basis_peak: usize,
}

/// `g(v)` with `w - h_w(v)` in the ideal for every other variable `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeForm {
    pub primitive_var: usize,
    pub eliminant: UPoly,
    pub coordinate_maps: BTreeMap<usize, UPoly>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealClass {
    ZeroDimensional { shape: Option<ShapeForm> },
    PositiveDimensional,
}

/// Reduced lex Gröbner basis, monic, sorted by leading monomial descending.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub ring: Arc<Ring>,
    pub polys: Vec<MPoly>,
    pub trace: BuchbergerTrace,
}

impl GroebnerBasis {
    /// The variety is empty.
    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    pub fn reduce(&self, p: &MPoly) -> MPoly {
        reduce(p, &self.polys)
    }

    pub fn contains(&self, p: &MPoly) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn classify(&self) -> IdealClass {
        classify_ideal(self)
    }

    pub fn is_zero_dimensional(&self) -> bool {
        matches!(self.classify(), IdealClass::ZeroDimensional { .. })
    }

    /// The basis element that is univariate in the least variable.
    pub fn least_eliminant(&self) -> Option<UPoly> {
        let v = self.ring.nvars() - 1;
        self.polys.last().and_then(|g| g.to_univariate(v)).filter(|g| !g.is_constant())
    }

    /// Basis elements whose greatest variable is `var`.
    pub fn level(&self, var: usize) -> Vec<&MPoly> {
        self.polys.iter().filter(|g| g.greatest_var() == Some(var)).collect()
    }

    /// Minimal polynomial of multiplication by `var` on ℚ[x]/I, found from
    /// normal forms of successive powers. Requires a zero-dimensional,
    /// proper ideal.
    pub fn eliminant(&self, var: usize) -> UPoly {
        assert!(!self.is_unit(), "eliminant of the unit ideal");
        let x = MPoly::var(&self.ring, var);
        let mut rows: Vec<(Monomial, MPoly, UPoly)> = Vec::new();
        let mut power = self.reduce(&MPoly::one(&self.ring));
        let mut k = 0usize;
        loop {
            let mut v = power.clone();
            let mut comb = UPoly::monomial(Q::one(), k);
            for (pivot, row, rc) in &rows {
                let c = v.coeff(pivot);
                if !c.is_zero() {
                    v = &v - &row.scale(&c);
                    comb = &comb - &rc.scale(&c);
                }
            }
            match v.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
                None => return comb.monic(),
                Some((m, c)) => {
                    let inv = c.recip();
                    rows.push((m, v.scale(&inv), comb.scale(&inv)));
                }
            }
            power = self.reduce(&(&power * &x));
            k += 1;
        }
    }
}

fn normal_key(lcm: &Monomial, i: usize, j: usize) -> (u32, usize, usize) {
    (mono_degree(lcm), j, i)
}

/// Reduced Gröbner basis of the ideal generated by `gens`. Pairs are taken
/// by lowest lcm degree, then by index, so runs are reproducible.
pub fn buchberger(gens: &[MPoly]) -> Result<GroebnerBasis, GroebnerError> {
    let ring = gens.first().ok_or(GroebnerError::NoGenerators)?.ring().clone();
    let mut trace = BuchbergerTrace::default();
    let mut basis: Vec<MPoly> = Vec::new();
    let mut pending: Vec<(usize, usize)> = Vec::new();
    let add = |h: MPoly, basis: &mut Vec<MPoly>, pending: &mut Vec<(usize, usize)>, trace: &mut BuchbergerTrace| {
        let j = basis.len();
        for i in 0..j {
            pending.push((i, j));
            trace.pairs_created += 1;
        }
        basis.push(h);
        trace.basis_peak = trace.basis_peak.max(basis.len());
    };
    for g in gens {
        let h = reduce(g, &basis);
        if !h.is_zero() {
            add(h.primitive(), &mut basis, &mut pending, &mut trace);
        }
    }
    while !pending.is_empty() {
        let (pos, _) = pending
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| {
                let l = mono_lcm(basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
                normal_key(&l, i, j)
            })
            .unwrap();
        let (i, j) = pending.remove(pos);
        let (li, lj) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        if mono_coprime(li, lj) {
            trace.product_criterion += 1;
            continue;
        }
        let l = mono_lcm(li, lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && mono_divides(basis[k].leading_monomial().unwrap(), &l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            trace.chain_criterion += 1;
            continue;
        }
        trace.pairs_reduced += 1;
        let s = s_polynomial(&basis[i], &basis[j])?;
        let h = reduce(&s, &basis);
        if h.is_zero() {
            trace.zero_reductions += 1;
            continue;
        }
        let unit = h.is_constant();
        add(h.primitive(), &mut basis, &mut pending, &mut trace);
        if unit {
            break;
        }
    }
    let polys = interreduce(&ring, basis);
    Ok(GroebnerBasis { ring, polys, trace })
}

fn interreduce(ring: &Arc<Ring>, basis: Vec<MPoly>) -> Vec<MPoly> {
    if basis.iter().any(|g| g.is_constant()) {
        return vec![MPoly::one(ring)];
    }
    // minimal basis: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<MPoly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(o, h)| {
            let lh = h.leading_monomial().unwrap();
            o != k && mono_divides(lh, lm) && (lh != lm || o < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<MPoly> = (0..minimal.len())
        .map(|k| {
            let others: Vec<MPoly> = minimal
                .iter()
                .enumerate()
                .filter(|&(o, _)| o != k)
                .map(|(_, h)| h.clone())
                .collect();
            reduce(&minimal[k], &others).monic()
        })
        .collect();
    out.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    out
}

/// Zero-dimensional iff every variable has a pure power among the leading
/// monomials; shape position when the basis reads `{w - h_w(v)}, g(v)` for
/// the least variable `v`.
pub fn classify_ideal(gb: &GroebnerBasis) -> IdealClass {
    let n = gb.ring.nvars();
    if gb.is_unit() {
        return IdealClass::ZeroDimensional { shape: None };
    }
    let pure = |var: usize| {
        gb.polys.iter().any(|g| {
            let lm = g.leading_monomial().unwrap();
            lm[var] > 0 && lm.iter().enumerate().all(|(i, &e)| i == var || e == 0)
        })
    };
    if !(0..n).all(pure) {
        return IdealClass::PositiveDimensional;
    }
    IdealClass::ZeroDimensional {
        shape: shape_form(gb),
    }
}

fn shape_form(gb: &GroebnerBasis) -> Option<ShapeForm> {
    let n = gb.ring.nvars();
    if gb.polys.len() != n {
        return None;
    }
    let v = n - 1;
    let eliminant = gb.polys[n - 1].to_univariate(v)?;
    let mut maps = BTreeMap::new();
    for (w, g) in gb.polys[..n - 1].iter().enumerate() {
        let mut unit = vec![0u32; n];
        unit[w] = 1;
        if g.leading_monomial() != Some(&unit) {
            return None;
        }
        let tail = g - &MPoly::var(&gb.ring, w);
        let h = tail.to_univariate(v)?;
        maps.insert(w, -&h);
    }
    Some(ShapeForm {
        primitive_var: v,
        eliminant,
        coordinate_maps: maps,
    })
}

/// Whether every S-polynomial of `basis` reduces to zero.
pub fn is_groebner(basis: &[MPoly]) -> bool {
    (0..basis.len()).all(|i| {
        (i + 1..basis.len()).all(|j| {
            let s = s_polynomial(&basis[i], &basis[j]).unwrap();
            reduce(&s, basis).is_zero()
        })
    })
}

/// Whether no term of any element is divisible by another's leading monomial.
pub fn is_reduced(basis: &[MPoly]) -> bool {
    basis.iter().enumerate().all(|(i, g)| {
        g.leading_coeff() == Some(&Q::one())
            && basis.iter().enumerate().all(|(j, h)| {
                i == j
                    || g
                        .terms()
                        .all(|(m, _)| !mono_divides(h.leading_monomial().unwrap(), m))
            })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    fn xy() -> Arc<Ring> {
        Ring::new(["x", "y"])
    }

    fn p(r: &Arc<Ring>, s: &str) -> MPoly {
        MPoly::parse(r, s).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let r = xy();
        let nf = reduce(&p(&r, "x^2 + y^2 - 1"), &[p(&r, "x - y")]);
        assert_eq!(nf, p(&r, "2*y^2 - 1"));
        let g = p(&r, "x^2*y - 3");
        assert!(reduce(&g, std::slice::from_ref(&g)).is_zero());
        assert_eq!(reduce(&p(&r, "7"), &[g]), p(&r, "7"));
    }

    #[test]
    fn s_polynomials() {
        let r = xy();
        let f = p(&r, "x - y");
        let g = p(&r, "x^2 + y^2 - 1");
        let s = s_polynomial(&f, &g).unwrap();
        // leading terms cancel: x^2 no longer appears
        assert_eq!(s.degree_in(0), 1);
        let gb = buchberger(&[f.clone(), g.clone()]).unwrap();
        assert!(gb.contains(&s));
        assert!(s_polynomial(&f, &f).unwrap().is_zero());
        let a = p(&r, "x + 1");
        let b = p(&r, "y - 2");
        let s = s_polynomial(&a, &b).unwrap();
        assert!(reduce(&s, &[a, b]).is_zero());
        assert_eq!(s_polynomial(&MPoly::zero(&r), &g), Err(GroebnerError::ZeroPolynomial));
    }

    #[test]
    fn circle_and_line() {
        let r = xy();
        let gb = buchberger(&[p(&r, "x^2 + y^2 - 1"), p(&r, "x - y")]).unwrap();
        assert_eq!(gb.polys, vec![p(&r, "x - y"), p(&r, "y^2 - 1/2")]);
        match gb.classify() {
            IdealClass::ZeroDimensional { shape: Some(s) } => {
                assert_eq!(s.primitive_var, 1);
                assert_eq!(s.eliminant, UPoly::new(vec![qf(-1, 2), Q::zero(), Q::one()]));
                assert_eq!(s.coordinate_maps[&0], UPoly::t());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(gb.eliminant(0), UPoly::new(vec![qf(-1, 2), Q::zero(), Q::one()]));
    }

    #[test]
    fn trivial_and_degenerate() {
        let r = xy();
        let gb = buchberger(&[p(&r, "x - 1")]).unwrap();
        assert_eq!(gb.polys, vec![p(&r, "x - 1")]);
        let gb = buchberger(&[p(&r, "x*y")]).unwrap();
        assert_eq!(gb.classify(), IdealClass::PositiveDimensional);
        let gb = buchberger(&[p(&r, "x^2 - 2"), p(&r, "y^2 - 2")]).unwrap();
        assert_eq!(gb.classify(), IdealClass::ZeroDimensional { shape: None });
        let gb = buchberger(&[p(&r, "x - 1"), p(&r, "x - 2")]).unwrap();
        assert!(gb.is_unit());
        assert!(buchberger(&[]).is_err());
    }

    #[test]
    fn worked_example_eliminant() {
        let r = Ring::new(["z", "y", "x"]);
        let gens = [
            p(&r, "2*y*z + 6*y + 2*z - 4"),
            p(&r, "13/2*x*z - 18*x - 12*z + 27/2"),
            p(&r, "-2*x*y + 6*x + 6*y - 6"),
        ];
        let gb = buchberger(&gens).unwrap();
        assert!(is_groebner(&gb.polys));
        assert!(is_reduced(&gb.polys));
        for g in &gens {
            assert!(gb.contains(g));
        }
        let expect = [
            "z + 235/18*x - 49/6",
            "y + 235/126*x - 34/21",
            "x^2 - 531/235*x + 234/235",
        ];
        let got: Vec<String> = gb.polys.iter().map(|g| g.to_string()).collect();
        assert_eq!(got, expect);
        assert!(matches!(gb.classify(), IdealClass::ZeroDimensional { shape: Some(_) }));
        assert_eq!(gb.eliminant(1), gb.eliminant(1));
        // y's eliminant has the rational root 1/2
        assert_eq!(gb.eliminant(1).eval(&qf(1, 2)), Q::zero());
    }

    #[test]
    fn deterministic() {
        let r = Ring::new(["z", "y", "x"]);
        let gens = [p(&r, "x*y*z - 1"), p(&r, "x^2 + y - z"), p(&r, "y^2 - x + 2*z")];
        let a = buchberger(&gens).unwrap();
        let b = buchberger(&gens).unwrap();
        assert_eq!(a.polys, b.polys);
        assert_eq!(a.trace, b.trace);
        assert!(is_groebner(&a.polys));
    }
}
