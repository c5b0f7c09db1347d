//! Factorization over ℚ: square-free split, factorization modulo a small
//! prime, linear Hensel lifting and subset recombination (Zassenhaus).

use super::modp::{Fp, PolyP};
use super::{yun_squarefree, UPoly, UniError};
use crate::rational::Q;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;

/// `unit · ∏ fᵢ^mᵢ` with every `fᵢ` primitive and irreducible over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Q,
    pub factors: Vec<(UPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> UPoly {
        let mut acc = UPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

pub fn factor(p: &UPoly) -> Result<Factorization, UniError> {
    if p.is_zero() {
        return Err(UniError::ZeroPolynomial);
    }
    let mut factors = Vec::new();
    for (sf, m) in yun_squarefree(p)? {
        for g in factor_squarefree(&sf) {
            factors.push((g, m));
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    let mut lc = Q::one();
    for (f, m) in &factors {
        lc *= num_traits::pow(f.lc(), *m);
    }
    Ok(Factorization {
        unit: p.lc() / lc,
        factors,
    })
}

fn int_poly(c: &[BigInt]) -> UPoly {
    UPoly::from_bigints(c)
}

/// Irreducible factors of a primitive squarefree polynomial.
fn factor_squarefree(f: &UPoly) -> Vec<UPoly> {
    let f = f.primitive();
    let n = f.degree();
    if n <= 1 {
        return vec![f];
    }
    let mut out = Vec::new();
    let mut f = f;
    // pull out t first: it keeps the constant term nonzero below
    if f.coeff(0).is_zero() {
        out.push(UPoly::t());
        f = f.exact_div(&UPoly::t()).unwrap();
        if f.degree() <= 1 {
            if f.degree() == 1 {
                out.push(f);
            }
            return out;
        }
    }
    let c = f.int_coeffs();
    let lc = c.last().unwrap().clone();
    let prime = choose_prime(&c, &lc);
    let fp = Fp(prime);
    let fbar = fp.monic(&fp.reduce_ints(&c));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let mut modular: Vec<PolyP> = Vec::new();
    for (g, d) in fp.distinct_degree(&fbar) {
        modular.extend(fp.equal_degree(&g, d, &mut rng));
    }
    if modular.len() == 1 {
        out.push(f);
        return out;
    }
    modular.sort();
    let bound = coefficient_bound(&c);
    let (lifted, modulus) = hensel_lift(fp, &c, &modular, &bound);
    out.extend(recombine(&c, lifted, &modulus));
    out
}

fn choose_prime(c: &[BigInt], lc: &BigInt) -> u64 {
    let mut p = 3u64;
    loop {
        if is_prime(p) && !(lc % BigInt::from(p)).is_zero() {
            let fp = Fp(p);
            let fbar = fp.reduce_ints(c);
            if fp.is_squarefree(&fbar) {
                return p;
            }
        }
        p += 2;
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Bound on `|lc(f)| · ‖h‖∞` for any factor `h` of `f`, doubled for the
/// symmetric residue range.
fn coefficient_bound(c: &[BigInt]) -> BigInt {
    let n = c.len() - 1;
    let norm2: BigInt = c.iter().map(|x| x * x).sum();
    let norm = norm2.sqrt() + 1;
    let lc = c.last().unwrap().abs();
    BigInt::from(2) * lc * (BigInt::one() << n) * norm
}

fn lift_poly(p: &PolyP) -> Vec<BigInt> {
    p.iter().map(|&x| BigInt::from(x)).collect()
}

fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

/// Lifts `f ≡ lc · ∏ gᵢ (mod p)` to a factorization modulo `p^k > bound`.
fn hensel_lift(fp: Fp, f: &[BigInt], gs: &[PolyP], bound: &BigInt) -> (Vec<Vec<BigInt>>, BigInt) {
    let p = BigInt::from(fp.0);
    let lc = f.last().unwrap().clone();
    let lc_inv = fp.inv(fp.reduce_int(&lc));
    // sᵢ = (∏_{j≠i} gⱼ)^{-1} mod gᵢ over F_p
    let s: Vec<PolyP> = (0..gs.len())
        .map(|i| {
            let others = gs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(vec![1u64], |acc, (_, g)| fp.mul_poly(&acc, g));
            let (_, inv, _) = fp.xgcd(&fp.rem(&others, &gs[i]), &gs[i]);
            inv
        })
        .collect();
    let mut lifted: Vec<Vec<BigInt>> = gs.iter().map(lift_poly).collect();
    let mut pk = p.clone();
    while &pk <= bound {
        let prod = lifted
            .iter()
            .fold(vec![lc.clone()], |acc, g| mul_int(&acc, g));
        let err: Vec<BigInt> = (0..f.len())
            .map(|i| &f[i] - prod.get(i).cloned().unwrap_or_default())
            .collect();
        debug_assert!(err.iter().all(|e| (e % &pk).is_zero()));
        let e: Vec<BigInt> = err.iter().map(|x| x / &pk).collect();
        let mut ebar = fp.reduce_ints(&e);
        ebar = ebar.iter().map(|&x| ((x as u128 * lc_inv as u128) % fp.0 as u128) as u64).collect();
        if !ebar.is_empty() {
            for (i, g) in gs.iter().enumerate() {
                let delta = fp.rem(&fp.mul_poly(&ebar, &s[i]), g);
                for (j, d) in delta.iter().enumerate() {
                    lifted[i][j] += &pk * BigInt::from(*d);
                }
            }
        }
        pk *= &p;
    }
    (lifted, pk)
}

fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn recombine(f: &[BigInt], lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<UPoly> {
    let mut out = Vec::new();
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut fcur = int_poly(f);
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        let lc = fcur.int_coeffs().last().unwrap().clone();
        for combo in combinations(remaining.len(), size) {
            let prod = combo
                .iter()
                .fold(vec![lc.clone()], |acc, &i| mul_int(&acc, &remaining[i]));
            let cand: Vec<BigInt> = prod.iter().map(|x| symmetric(x, modulus)).collect();
            let h = int_poly(&cand).primitive();
            if h.degree() == 0 {
                continue;
            }
            if let Some(quot) = fcur.exact_div(&h) {
                if quot.coeffs().iter().all(|c| c.is_integer()) {
                    out.push(h);
                    fcur = quot.primitive();
                    let keep: Vec<Vec<BigInt>> = remaining
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !combo.contains(i))
                        .map(|(_, g)| g.clone())
                        .collect();
                    remaining = keep;
                    continue 'outer;
                }
            }
        }
        size += 1;
    }
    if fcur.degree() > 0 {
        out.push(fcur.primitive());
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn p(c: &[i64]) -> UPoly {
        UPoly::from_ints(c)
    }

    #[test]
    fn cyclotomic_product() {
        // t^4 + t^2 + 1 = (t^2 + t + 1)(t^2 - t + 1)
        let f = factor(&p(&[1, 0, 1, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(p(&[1, -1, 1]), 1), (p(&[1, 1, 1]), 1)]);
        assert_eq!(f.expand(), p(&[1, 0, 1, 0, 1]));
    }

    #[test]
    fn t4_minus_one() {
        let f = factor(&p(&[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(
            f.factors,
            vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1), (p(&[1, 0, 1]), 1)]
        );
    }

    #[test]
    fn irreducible_quadratic() {
        let f = factor(&p(&[-27, 27, 5])).unwrap();
        assert!(f.is_irreducible());
        let f = factor(&p(&[1, 0, 0, 0, 1])).unwrap();
        assert!(f.is_irreducible());
    }

    #[test]
    fn multiplicities_and_units() {
        // 3 (t - 1)^2 (2t + 1)
        let g = &(&p(&[-1, 1]).pow(2) * &p(&[1, 2])) * &UPoly::constant(q(3));
        let f = factor(&g).unwrap();
        assert_eq!(f.factors, vec![(p(&[-1, 1]), 2), (p(&[1, 2]), 1)]);
        assert_eq!(f.expand(), g);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // (t^2 - 2)(t^2 - 3) splits into many factors mod every prime
        let g = &p(&[-2, 0, 1]) * &p(&[-3, 0, 1]);
        let f = factor(&g).unwrap();
        assert_eq!(f.factors.len(), 2);
        let g = p(&[1, 0, -10, 0, 1]); // minpoly of √2 + √3
        assert!(factor(&g).unwrap().is_irreducible());
    }
}
