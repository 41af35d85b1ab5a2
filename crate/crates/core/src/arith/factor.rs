//! Root finding and factorization over the rationals.
//!
//! Factorization follows the classical big-prime route: Yun's squarefree
//! decomposition, then for each squarefree part a prime `P` larger than twice
//! the Mignotte bound is chosen, the part is split modulo `P` (distinct-degree
//! then Cantor–Zassenhaus equal-degree), and integer factors are recovered by
//! trial recombination of the modular factors.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Largest degree accepted by [`factor_rationals`].
pub const FACTOR_DEGREE_BOUND: usize = 12;

const LINEAR_SCAN_LIMIT: u64 = 1_000_000;

/// Squarefree part `p / gcd(p, p')` (monic) and every integer root of `p` with its multiplicity.
pub fn squarefree_and_integer_roots(p: &Poly) -> Result<(Poly, Vec<(BigInt, usize)>)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = p.gcd(&p.derivative());
    let sqf = p.div_rem(&g).0.monic();
    let mut roots = Vec::new();
    for r in integer_roots_squarefree(&sqf) {
        let lin = Poly::linear(Rational::from_integer(r.clone()));
        let mut q = p.clone();
        let mut mult = 0;
        loop {
            let (quo, rem) = q.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            mult += 1;
            q = quo;
        }
        roots.push((r, mult));
    }
    roots.sort();
    Ok((sqf, roots))
}

fn integer_roots_squarefree(p: &Poly) -> Vec<BigInt> {
    let mut f = p.primitive_integer();
    let mut roots = Vec::new();
    if f.first().is_some_and(Zero::is_zero) {
        roots.push(BigInt::zero());
        f.remove(0);
    }
    if f.len() <= 1 {
        return roots;
    }
    let lead = f.last().unwrap().abs();
    let max = f[..f.len() - 1].iter().map(Signed::abs).max().unwrap();
    // Cauchy: every root satisfies |r| <= 1 + max|a_i| / |a_n|.
    let bound = BigInt::one() + max.div_ceil(&lead);
    let fp = Poly::from_integers(&f);
    match bound.to_u64().filter(|&b| b <= LINEAR_SCAN_LIMIT) {
        Some(b) => {
            let a0 = f[0].clone();
            for r in 1..=b {
                let rb = BigInt::from(r);
                if !(&a0 % &rb).is_zero() {
                    continue;
                }
                for cand in [rb.clone(), -rb] {
                    if fp.eval(&Rational::from_integer(cand.clone())).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
        None => {
            for fac in factor_squarefree(&fp) {
                if let Some(r) = fac.as_linear_root() {
                    if r.is_integer() {
                        roots.push(r.to_integer());
                    }
                }
            }
        }
    }
    roots
}

/// Yun's algorithm: monic squarefree `a_i` with `p = lc · Π a_i^i`, only nontrivial `a_i` returned.
pub fn squarefree_decomposition(p: &Poly) -> Vec<(Poly, usize)> {
    let p = p.monic();
    let mut out = Vec::new();
    if p.deg() == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        if a.deg() > 0 {
            out.push((a.monic(), i));
        }
        i += 1;
    }
    out
}

/// Irreducible factorization `p = lc · Π f_i^{m_i}` with monic `f_i`, sorted by degree then coefficients.
pub fn factor_rationals(p: &Poly) -> Result<Vec<(Poly, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.deg() > FACTOR_DEGREE_BOUND {
        return Err(Error::DegreeBound(p.deg(), FACTOR_DEGREE_BOUND));
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(p) {
        for f in factor_squarefree(&part) {
            out.push((f, mult));
        }
    }
    out.sort_by(|(a, _), (b, _)| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(out)
}

/// Monic irreducible factors of a squarefree polynomial.
pub fn factor_squarefree(p: &Poly) -> Vec<Poly> {
    if p.deg() == 0 {
        return Vec::new();
    }
    if p.deg() == 1 {
        return vec![p.monic()];
    }
    let f = p.primitive_integer();
    let n = f.len() - 1;
    let lc = f[n].clone();
    let norm = f.iter().map(|c| c * c).fold(BigInt::zero(), |a, b| a + b).sqrt() + BigInt::one();
    let bound = &lc.abs() * (BigInt::one() << n) * norm;
    let prime = choose_prime(&f, &(bound * 2 + 1));
    let field = Fp { p: prime };
    let fm = field.monic(&field.reduce(&f));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_fac7);
    let mut modular = Vec::new();
    for (g, deg) in field.distinct_degree(&fm) {
        field.equal_degree(&g, deg, &mut rng, &mut modular);
    }
    recombine(&field, f, modular).into_iter().map(|g| Poly::from_integers(&g).monic()).collect()
}

fn recombine(field: &Fp, mut f: Vec<BigInt>, mut modular: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let mut found = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= modular.len() {
        for subset in combinations(modular.len(), size) {
            let lc = f.last().unwrap().clone();
            let mut g = vec![lc];
            for &i in &subset {
                g = field.mul(&g, &modular[i]);
            }
            let cand = field.symmetric(&g);
            let cand = primitive(&cand);
            if let Some(q) = exact_div_z(&f, &cand) {
                found.push(cand);
                f = q;
                for &i in subset.iter().rev() {
                    modular.remove(i);
                }
                continue 'outer;
            }
        }
        size += 1;
    }
    if f.len() > 1 {
        found.push(f);
    }
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn primitive(f: &[BigInt]) -> Vec<BigInt> {
    let g = f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if f.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    f.iter().map(|c| c / &g * &sign).collect()
}

/// Exact quotient over `Z`, if `d` divides `f`.
fn exact_div_z(f: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let (q, r) = Poly::from_integers(f).div_rem(&Poly::from_integers(d));
    if !r.is_zero() || !q.is_integral() {
        return None;
    }
    Some(q.coeffs().iter().map(|c| c.to_integer()).collect())
}

fn choose_prime(f: &[BigInt], above: &BigInt) -> BigInt {
    let mut cand = if above.is_even() { above + 1 } else { above.clone() };
    loop {
        if is_probable_prime(&cand) {
            let field = Fp { p: cand.clone() };
            let fm = field.reduce(f);
            if fm.len() == f.len() {
                let g = field.gcd(&fm, &field.derivative(&fm));
                if g.len() == 1 {
                    return cand;
                }
            }
        }
        cand += 2;
    }
}

fn is_probable_prime(n: &BigInt) -> bool {
    const BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    if *n < BigInt::from(2) {
        return false;
    }
    for &b in &BASES {
        let b = BigInt::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n1: BigInt = n - 1;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for &b in &BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Polynomials over `F_p`, lowest degree first, normalized (no trailing zeros).
struct Fp {
    p: BigInt,
}

impl Fp {
    fn norm(&self, mut a: Vec<BigInt>) -> Vec<BigInt> {
        for c in a.iter_mut() {
            *c = c.mod_floor(&self.p);
        }
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        a
    }

    fn reduce(&self, f: &[BigInt]) -> Vec<BigInt> {
        self.norm(f.to_vec())
    }

    fn inv(&self, a: &BigInt) -> BigInt {
        a.modpow(&(&self.p - 2), &self.p)
    }

    fn monic(&self, a: &[BigInt]) -> Vec<BigInt> {
        let l = self.inv(a.last().unwrap());
        self.norm(a.iter().map(|c| c * &l).collect())
    }

    fn symmetric(&self, a: &[BigInt]) -> Vec<BigInt> {
        let half = &self.p >> 1;
        a.iter().map(|c| if *c > half { c - &self.p } else { c.clone() }).collect()
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        self.norm((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        self.norm(c)
    }

    fn divrem(&self, a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        if r.len() <= db {
            return (Vec::new(), self.norm(r));
        }
        let li = self.inv(b.last().unwrap());
        let mut q = vec![BigInt::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = (&r[k + db] * &li).mod_floor(&self.p);
            if c.is_zero() {
                continue;
            }
            for (i, bi) in b.iter().enumerate() {
                r[k + i] = (&r[k + i] - &c * bi).mod_floor(&self.p);
            }
            q[k] = c;
        }
        r.truncate(db);
        (self.norm(q), self.norm(r))
    }

    fn rem(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.divrem(a, b).1
    }

    fn gcd(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.monic(&a)
        }
    }

    fn derivative(&self, a: &[BigInt]) -> Vec<BigInt> {
        self.norm(a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    fn powmod(&self, base: &[BigInt], e: &BigInt, m: &[BigInt]) -> Vec<BigInt> {
        let mut result = vec![BigInt::one()];
        let mut b = self.rem(base, m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = self.rem(&self.mul(&result, &b), m);
            }
            if i + 1 < bits {
                b = self.rem(&self.mul(&b, &b), m);
            }
        }
        self.rem(&result, m)
    }

    fn distinct_degree(&self, f: &[BigInt]) -> Vec<(Vec<BigInt>, usize)> {
        let x = vec![BigInt::zero(), BigInt::one()];
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let mut h = x.clone();
        let mut i = 0;
        while f.len() > 1 {
            i += 1;
            if 2 * i > f.len() - 1 {
                out.push((f.clone(), f.len() - 1));
                break;
            }
            h = self.powmod(&h, &self.p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, i));
            }
        }
        out
    }

    fn random_poly(&self, deg: usize, rng: &mut ChaCha8Rng) -> Vec<BigInt> {
        let words = (self.p.bits() / 64 + 2) as usize;
        let c = (0..deg)
            .map(|_| {
                let digits: Vec<u64> = (0..words).map(|_| rng.gen()).collect();
                let mut bytes = Vec::with_capacity(words * 8);
                for w in digits {
                    bytes.extend_from_slice(&w.to_le_bytes());
                }
                BigInt::from_bytes_le(Sign::Plus, &bytes)
            })
            .collect();
        self.norm(c)
    }

    fn equal_degree(&self, g: &[BigInt], deg: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<BigInt>>) {
        let n = g.len() - 1;
        if n == deg {
            out.push(self.monic(g));
            return;
        }
        let exp = (self.p.pow(deg as u32) - 1) / 2;
        loop {
            let a = self.random_poly(n, rng);
            if a.len() <= 1 {
                continue;
            }
            let b = self.sub(&self.powmod(&a, &exp, g), &[BigInt::one()]);
            let h = self.gcd(&b, g);
            if h.len() > 1 && h.len() < g.len() {
                let other = self.divrem(g, &h).0;
                self.equal_degree(&h, deg, rng, out);
                self.equal_degree(&other, deg, rng, out);
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;

    fn ints(v: &[i64]) -> Vec<(BigInt, usize)> {
        v.chunks(2).map(|c| (BigInt::from(c[0]), c[1] as usize)).collect()
    }

    #[test]
    fn integer_roots_examples() {
        let (s, r) = squarefree_and_integer_roots(&Poly::from_i64(&[-1, 0, 1])).unwrap();
        assert_eq!(s, Poly::from_i64(&[-1, 0, 1]));
        assert_eq!(r, ints(&[-1, 1, 1, 1]));

        let cube = Poly::from_i64(&[-2, 1]).pow(3);
        let (s, r) = squarefree_and_integer_roots(&cube).unwrap();
        assert_eq!(s, Poly::from_i64(&[-2, 1]));
        assert_eq!(r, ints(&[2, 3]));

        let (s, r) = squarefree_and_integer_roots(&Poly::from_i64(&[-2, 0, 1])).unwrap();
        assert_eq!(s, Poly::from_i64(&[-2, 0, 1]));
        assert!(r.is_empty());

        assert_eq!(squarefree_and_integer_roots(&Poly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn rational_but_not_integer_roots_are_skipped() {
        let p = &Poly::linear(frac(1, 2)) * &Poly::linear(Rational::from_integer(3.into()));
        let (_, r) = squarefree_and_integer_roots(&p).unwrap();
        assert_eq!(r, ints(&[3, 1]));
    }

    #[test]
    fn zero_root_multiplicity() {
        let p = &Poly::x().pow(2) * &Poly::from_i64(&[1, 1]);
        let (_, r) = squarefree_and_integer_roots(&p).unwrap();
        assert_eq!(r, ints(&[-1, 1, 0, 2]));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(
            factor_rationals(&Poly::from_i64(&[-1, 0, 1])).unwrap(),
            vec![(Poly::from_i64(&[-1, 1]), 1), (Poly::from_i64(&[1, 1]), 1)]
        );
        assert_eq!(factor_rationals(&Poly::from_i64(&[-2, 0, 1])).unwrap(), vec![(Poly::from_i64(&[-2, 0, 1]), 1)]);
        assert_eq!(
            factor_rationals(&Poly::from_i64(&[-1, 0, 0, 0, 1])).unwrap(),
            vec![(Poly::from_i64(&[-1, 1]), 1), (Poly::from_i64(&[1, 1]), 1), (Poly::from_i64(&[1, 0, 1]), 1)]
        );
    }

    #[test]
    fn factor_swinnerton_dyer_like() {
        // X^4 - 10X^2 + 1 is irreducible over Q but splits modulo every prime.
        let p = Poly::from_i64(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_rationals(&p).unwrap(), vec![(p, 1)]);
    }

    #[test]
    fn factor_with_multiplicity_and_scalar() {
        let a = Poly::from_i64(&[1, 0, 1]);
        let b = Poly::from_i64(&[-3, 1]);
        let p = (&(&a.pow(2) * &b) * &Poly::from_i64(&[-1, 1, 1])).scale(&frac(-7, 3));
        let f = factor_rationals(&p).unwrap();
        assert_eq!(f, vec![(b, 1), (Poly::from_i64(&[-1, 1, 1]), 1), (a, 2)]);
    }

    #[test]
    fn degree_bound() {
        let p = Poly::x().pow(13);
        assert_eq!(factor_rationals(&p), Err(Error::DegreeBound(13, 12)));
    }

    #[test]
    fn primality() {
        assert!(is_probable_prime(&BigInt::from(1_000_000_007u64)));
        assert!(!is_probable_prime(&BigInt::from(561u64)));
    }
}
