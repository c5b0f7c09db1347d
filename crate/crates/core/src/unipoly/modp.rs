//! Polynomials over a small prime field, low degree first.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Fp(pub u64);

pub(crate) type PolyP = Vec<u64>;

impl Fp {
    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }

    pub fn inv(self, a: u64) -> u64 {
        self.pow(a, self.0 - 2)
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn reduce_int(self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.0)).to_u64().unwrap()
    }

    pub fn trim(p: &mut PolyP) {
        while p.last() == Some(&0) {
            p.pop();
        }
    }

    pub fn reduce_ints(self, c: &[BigInt]) -> PolyP {
        let mut p: PolyP = c.iter().map(|x| self.reduce_int(x)).collect();
        Self::trim(&mut p);
        p
    }

    pub fn monic(self, p: &PolyP) -> PolyP {
        let inv = self.inv(*p.last().unwrap());
        p.iter().map(|&c| self.mul(c, inv)).collect()
    }

    pub fn sub_poly(self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.len().max(b.len());
        let mut r: PolyP = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(&mut r);
        r
    }

    pub fn mul_poly(self, a: &PolyP, b: &PolyP) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = self.add(r[i + j], self.mul(x, y));
            }
        }
        Self::trim(&mut r);
        r
    }

    pub fn div_rem(self, a: &PolyP, d: &PolyP) -> (PolyP, PolyP) {
        assert!(!d.is_empty());
        if a.len() < d.len() {
            return (Vec::new(), a.clone());
        }
        let mut rem = a.clone();
        let dd = d.len() - 1;
        let inv = self.inv(d[dd]);
        let mut quot = vec![0u64; a.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = self.mul(rem[i + dd], inv);
            if c != 0 {
                for (j, &dc) in d.iter().enumerate() {
                    rem[i + j] = self.sub(rem[i + j], self.mul(c, dc));
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Self::trim(&mut rem);
        Self::trim(&mut quot);
        (quot, rem)
    }

    pub fn rem(self, a: &PolyP, d: &PolyP) -> PolyP {
        self.div_rem(a, d).1
    }

    pub fn gcd(self, a: &PolyP, b: &PolyP) -> PolyP {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = std::mem::replace(&mut b, r);
        }
        if a.is_empty() {
            a
        } else {
            self.monic(&a)
        }
    }

    /// `(g, s, t)` with `s a + t b = g`, g monic.
    pub fn xgcd(self, a: &PolyP, b: &PolyP) -> (PolyP, PolyP, PolyP) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (qq, r) = self.div_rem(&r0, &r1);
            let s = self.sub_poly(&s0, &self.mul_poly(&qq, &s1));
            let t = self.sub_poly(&t0, &self.mul_poly(&qq, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = self.inv(*r0.last().unwrap());
        let sc = |p: &PolyP| -> PolyP { p.iter().map(|&c| self.mul(c, inv)).collect() };
        (sc(&r0), sc(&s0), sc(&t0))
    }

    pub fn derivative(self, p: &PolyP) -> PolyP {
        let mut r: PolyP = p
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.0))
            .collect();
        Self::trim(&mut r);
        r
    }

    pub fn powmod(self, base: &PolyP, exp: &BigUint, m: &PolyP) -> PolyP {
        let mut result: PolyP = vec![1];
        let b = self.rem(base, m);
        let bits = exp.bits();
        for i in (0..bits).rev() {
            result = self.rem(&self.mul_poly(&result, &result), m);
            if exp.bit(i) {
                result = self.rem(&self.mul_poly(&result, &b), m);
            }
        }
        result
    }

    pub fn is_squarefree(self, p: &PolyP) -> bool {
        let d = self.derivative(p);
        !d.is_empty() && self.gcd(p, &d).len() == 1
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(product of all irreducible factors of degree d, d)`.
    pub fn distinct_degree(self, f: &PolyP) -> Vec<(PolyP, usize)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x: PolyP = vec![0, 1];
        let mut h = x.clone();
        let mut d = 0;
        let p = BigUint::from(self.0);
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                let deg = f.len() - 1;
                out.push((f.clone(), deg));
                break;
            }
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&self.sub_poly(&h, &x), &f);
            if g.len() > 1 {
                out.push((g.clone(), d));
                f = self.div_rem(&f, &g).0;
                h = self.rem(&h, &f);
            }
        }
        out
    }

    /// Cantor–Zassenhaus splitting of a monic product of degree-`d`
    /// irreducibles (odd characteristic).
    pub fn equal_degree<R: Rng>(self, f: &PolyP, d: usize, rng: &mut R) -> Vec<PolyP> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.clone()];
        }
        let exp = (num_traits::pow(BigUint::from(self.0), d) - 1u32) / 2u32;
        loop {
            let a: PolyP = {
                let mut a: PolyP = (0..n).map(|_| rng.gen_range(0..self.0)).collect();
                Self::trim(&mut a);
                a
            };
            if a.len() <= 1 {
                continue;
            }
            let b = self.powmod(&a, &exp, f);
            let g = self.gcd(&self.sub_poly(&b, &vec![1]), f);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.div_rem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.monic(&h), d, rng));
                return out;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factors_mod_five() {
        let f = Fp(5);
        // t^4 - 1 splits completely mod 5
        let p = f.reduce_ints(&[-1, 0, 0, 0, 1].map(BigInt::from));
        let dd = f.distinct_degree(&p);
        assert_eq!(dd.len(), 1);
        assert_eq!(dd[0].1, 1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let lin = f.equal_degree(&dd[0].0, 1, &mut rng);
        assert_eq!(lin.len(), 4);
        let prod = lin.iter().fold(vec![1u64], |acc, g| f.mul_poly(&acc, g));
        assert_eq!(prod, p);
    }
}
