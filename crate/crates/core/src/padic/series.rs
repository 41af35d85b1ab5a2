//! Matrix exponential and logarithm series modulo `p^N`, truncated by a priori
//! valuation bounds.
//!
//! For a rep with integer `X_0` spectrum, `X_0 = S + N` (Jordan), every word in
//! `a X_0 + Σ b_j X_j` reorders to `X_1^{j_1}..X_d^{j_d} N^{j_0} Π (S + k_i)` with
//! integers `k_i`, since `[S, X_j] = X_j` and `N` commutes with everything. With
//! `M` the common nilpotency index, at most `F = (d+1)(M-1)` letters are not
//! semisimple, so
//!
//! `v(Y^n / n!) ≥ C + max(n - F, 0) · (κ + min(0, v(S))) - v_p(n!)`
//!
//! where `C` is the least valuation of the products `X_1^{j_1}..X_d^{j_d} N^{j_0}`,
//! `0 ≤ j_i < M`, and `κ = v_p(2p^c)` bounds `v(a)` from below.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{factorial_valuation, modulus, reduce_rational, PadicConfig, PadicScalar};
use crate::arith::{linalg, rat_valuation, squarefree_and_integer_roots, Mat, Rational};
use crate::error::{Error, Result};
use crate::lie::LieRep;

/// A matrix over `Z_p` known modulo `p^prec`.
#[derive(Clone, PartialEq, Eq)]
pub struct PadicMat {
    p: u64,
    prec: u32,
    rows: usize,
    cols: usize,
    residues: Vec<BigInt>,
}

impl PadicMat {
    pub fn from_residues(p: u64, prec: u32, rows: usize, cols: usize, residues: Vec<BigInt>) -> Self {
        assert_eq!(residues.len(), rows * cols);
        let m = modulus(p, prec);
        PadicMat { p, prec, rows, cols, residues: residues.into_iter().map(|r| r.mod_floor(&m)).collect() }
    }

    /// Reduces a p-integral rational matrix.
    pub fn from_mat(m: &Mat, p: u64, prec: u32) -> Result<Self> {
        let residues = m
            .entries()
            .iter()
            .map(|x| reduce_rational(x, p, prec).ok_or_else(|| Error::NotIntegral(format!("matrix entry {x} at p = {p}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(PadicMat { p, prec, rows: m.rows(), cols: m.cols(), residues })
    }

    pub fn from_scalars(rows: usize, cols: usize, entries: &[PadicScalar]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let p = entries.first().map_or(2, PadicScalar::p);
        let prec = entries.iter().map(PadicScalar::prec).min().unwrap_or(u32::MAX);
        PadicMat::from_residues(p, prec, rows, cols, entries.iter().map(|e| e.residue().clone()).collect())
    }

    pub fn identity(p: u64, prec: u32, n: usize) -> Self {
        PadicMat::from_mat(&Mat::identity(n), p, prec).expect("integral")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn residue(&self, i: usize, j: usize) -> &BigInt {
        &self.residues[i * self.cols + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> PadicScalar {
        PadicScalar::from_int(self.p, self.prec, self.residue(i, j))
    }

    /// Residues as an integer matrix over the rationals.
    pub fn to_mat(&self) -> Mat {
        Mat::from_vec(self.rows, self.cols, self.residues.iter().map(|r| Rational::from_integer(r.clone())).collect())
            .expect("shape")
    }

    pub fn truncate(&self, prec: u32) -> Self {
        PadicMat::from_residues(self.p, prec.min(self.prec), self.rows, self.cols, self.residues.clone())
    }

    pub fn agrees_with(&self, other: &PadicMat) -> bool {
        let n = self.prec.min(other.prec);
        self.p == other.p
            && (self.rows, self.cols) == (other.rows, other.cols)
            && self.truncate(n).residues == other.truncate(n).residues
    }

    /// Least valuation of an entry, capped at the precision.
    pub fn valuation_floor(&self) -> u32 {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .map(|(i, j)| self.entry(i, j).valuation_floor())
            .min()
            .unwrap_or(self.prec)
    }

    pub fn mul(&self, other: &PadicMat) -> PadicMat {
        assert_eq!(self.p, other.p);
        assert_eq!(self.cols, other.rows);
        let mut out = vec![BigInt::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.residue(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[i * other.cols + j] += a * other.residue(k, j);
                }
            }
        }
        PadicMat::from_residues(self.p, self.prec.min(other.prec), self.rows, other.cols, out)
    }

    pub fn sub(&self, other: &PadicMat) -> PadicMat {
        assert_eq!((self.p, self.rows, self.cols), (other.p, other.rows, other.cols));
        let residues = self.residues.iter().zip(&other.residues).map(|(a, b)| a - b).collect();
        PadicMat::from_residues(self.p, self.prec.min(other.prec), self.rows, self.cols, residues)
    }

    /// Exact division by `p^k`; every entry must be divisible.
    pub fn div_p_pow(&self, k: u32) -> Result<PadicMat> {
        if k > self.prec {
            return Err(Error::Config(format!("cannot divide by {}^{k} at precision {}", self.p, self.prec)));
        }
        let pk = modulus(self.p, k);
        let mut residues = Vec::with_capacity(self.residues.len());
        for r in &self.residues {
            let (q, rem) = r.div_rem(&pk);
            if !rem.is_zero() {
                return Err(Error::NotIntegral(format!("entry {r} is not divisible by {}^{k}", self.p)));
            }
            residues.push(q);
        }
        Ok(PadicMat::from_residues(self.p, self.prec - k, self.rows, self.cols, residues))
    }
}

impl fmt::Debug for PadicMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.residue(i, j).to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "] + O({}^{})", self.p, self.prec)
    }
}

/// `A = S + N` with `S` diagonalizable over `Q`, `N` nilpotent and `[S, N] = 0`,
/// for `A` whose eigenvalues are all integers.
pub fn jordan_decomposition(a: &Mat) -> Result<(Mat, Mat)> {
    let n = a.rows();
    if n == 0 {
        return Ok((Mat::zeros(0, 0), Mat::zeros(0, 0)));
    }
    let (_, roots) = squarefree_and_integer_roots(&linalg::charpoly(a))?;
    if roots.iter().map(|(_, m)| m).sum::<usize>() != n {
        return Err(Error::NonIntegerSpectrum);
    }
    let mut cols = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    for (r, m) in &roots {
        let lambda = Rational::from_integer(r.clone());
        let shifted = a - &Mat::scalar(n, &lambda);
        let basis = linalg::kernel(&shifted.pow(*m));
        diag.extend(std::iter::repeat(lambda).take(basis.len()));
        cols.extend(basis);
    }
    let b = Mat::from_columns(n, &cols);
    let b_inv = linalg::inverse(&b).expect("generalized eigenvectors form a basis");
    let mut dmat = Mat::zeros(n, n);
    for (i, x) in diag.into_iter().enumerate() {
        dmat[(i, i)] = x;
    }
    let s = &(&b * &dmat) * &b_inv;
    let nil = a - &s;
    Ok((s, nil))
}

fn nilpotency_index(m: &Mat) -> Option<usize> {
    let n = m.rows();
    let mut pw = Mat::identity(n);
    for k in 0..=n {
        if pw.is_zero() {
            return Some(k);
        }
        pw = &pw * m;
    }
    None
}

fn mat_valuation(m: &Mat, p: u64) -> Option<i64> {
    m.entries().iter().filter_map(|x| rat_valuation(x, p)).min()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailBound {
    pub p: u64,
    /// `C`, the least valuation of the non-semisimple products (at most 0).
    pub c_const: i64,
    /// `M`, with `N^M = X_j^M = 0`.
    pub nilpotency: usize,
    /// `F = (d+1)(M-1)`, the most letters a nonzero word can spend outside `S`.
    pub free_letters: usize,
    /// Valuation gained per semisimple letter: `κ + min(0, v(S))`.
    pub step: i64,
    pub ss_valuation: i64,
}

impl TailBound {
    pub fn for_rep(rep: &LieRep, cfg: &PadicConfig) -> Result<Self> {
        let p = cfg.p;
        for (i, x) in rep.action().iter().enumerate() {
            if mat_valuation(x, p).is_some_and(|v| v < 0) {
                return Err(Error::NotIntegral(format!("X_{i} has entries with {p} in the denominator")));
            }
        }
        let d = rep.d();
        let n = rep.dim();
        let (s, nil) = jordan_decomposition(rep.x(0))?;
        let ss_valuation = mat_valuation(&s, p).unwrap_or(0).min(0);
        let mut nilpotency = nilpotency_index(&nil).expect("nilpotent part").max(1);
        for j in 1..=d {
            let k = nilpotency_index(rep.x(j))
                .ok_or_else(|| Error::InvalidRep(format!("X_{j} is not nilpotent")))?;
            nilpotency = nilpotency.max(k);
        }
        // C over X_1^{j_1} .. X_d^{j_d} N^{j_0}, 0 ≤ j_i < M
        let mut letters: Vec<&Mat> = (1..=d).map(|j| rep.x(j)).collect();
        letters.push(&nil);
        let mut c_const = 0i64;
        min_word_valuation(&letters, 0, &Mat::identity(n), nilpotency, p, &mut c_const);
        let step = cfg.kappa() as i64 + ss_valuation;
        let bound = TailBound {
            p,
            c_const,
            nilpotency,
            free_letters: (d + 1) * (nilpotency - 1),
            step,
            ss_valuation,
        };
        if step < 1 || step * (p as i64 - 1) <= 1 {
            return Err(Error::Divergent(format!("per-letter gain {step} does not beat v_p(n!) growth at p = {p}")));
        }
        Ok(bound)
    }
}

fn min_word_valuation(letters: &[&Mat], i: usize, prod: &Mat, m: usize, p: u64, best: &mut i64) {
    let Some(v) = mat_valuation(prod, p) else {
        return;
    };
    *best = (*best).min(v);
    if i == letters.len() {
        return;
    }
    min_word_valuation(letters, i + 1, prod, m, p, best);
    let mut cur = prod.clone();
    for _ in 1..m {
        cur = &cur * letters[i];
        if cur.is_zero() {
            break;
        }
        min_word_valuation(letters, i + 1, &cur, m, p, best);
    }
}

impl TailBound {
    /// `C + max(n - F, 0)·step - v_p(n!)`, a lower bound for `v(Y^n / n!)`.
    pub fn bound(&self, n: usize) -> i64 {
        self.c_const + self.semisimple_letters(n) * self.step - factorial_valuation(n, self.p) as i64
    }

    fn semisimple_letters(&self, n: usize) -> i64 {
        n.saturating_sub(self.free_letters) as i64
    }

    /// Same bound with `v_p(n!)` replaced by its ceiling `(n-1)/(p-1)`; nondecreasing past `F`.
    fn smooth_bound(&self, n: usize) -> i64 {
        let v = if n == 0 { 0 } else { (n as i64 - 1) / (self.p as i64 - 1) };
        self.c_const + self.semisimple_letters(n) * self.step - v
    }

    /// Number of terms `n0`: every term of index `n ≥ n0` vanishes modulo `p^target`.
    pub fn truncation(&self, target: u32) -> usize {
        let mut n = 1;
        while n < self.free_letters || self.smooth_bound(n) < target as i64 {
            n += 1;
        }
        n
    }

    /// Digits of the result that uncertainty in the last input digit can reach.
    ///
    /// A first-order perturbation `Y + p^N Δ` changes term `n` by `n` words with one
    /// `Δ` letter, each of valuation at least
    /// `N + C + max(n - 1 - F, 0)·step + min(0, v(S)) - v_p(n!)`.
    pub fn exp_loss(&self) -> u32 {
        let mut worst = 0i64;
        let mut n = 1usize;
        loop {
            let gain = self.c_const + (n.saturating_sub(1 + self.free_letters) as i64) * self.step + self.ss_valuation;
            worst = worst.max(factorial_valuation(n, self.p) as i64 - gain);
            let ceiling = (n as i64 - 1) / (self.p as i64 - 1) + 1;
            if n > self.free_letters + 1 && ceiling - gain < 0 {
                break;
            }
            n += 1;
        }
        worst.max(0) as u32
    }
}

#[derive(Debug, Clone)]
pub struct ExpSeries {
    pub value: PadicMat,
    /// Number of terms summed.
    pub terms: usize,
}

/// `Σ_{n < n0} Y^n / n!` reduced modulo `p^target`, for an exact p-integral `Y`
/// obeying `bound`. Terms are computed modulo `p^{target + v_p((n0-1)!)}` so that
/// division by `n!` keeps `target` digits.
pub fn exp_series(y: &Mat, bound: &TailBound, target: u32) -> Result<ExpSeries> {
    let p = bound.p;
    let n = y.rows();
    let n0 = bound.truncation(target);
    let extra = factorial_valuation(n0 - 1, p) as u32;
    let w = target + extra;
    let big = modulus(p, w);
    let yw = PadicMat::from_mat(y, p, w)?;
    let mut power = PadicMat::identity(p, w, n);
    let mut acc = vec![BigInt::zero(); n * n];
    let pb = BigInt::from(p);
    for k in 0..n0 {
        if k > 0 {
            power = power.mul(&yw);
        }
        // k! = p^v · m with p ∤ m
        let v = factorial_valuation(k, p) as u32;
        let mut m = BigInt::one();
        for i in 2..=k {
            let mut f = BigInt::from(i);
            while (&f % &pb).is_zero() {
                f /= &pb;
            }
            m *= f;
        }
        let m_inv = m.mod_floor(&big).modinv(&big).expect("prime to p");
        let scale = &m_inv * (&pb).pow(extra - v);
        for (a, r) in acc.iter_mut().zip(&power.residues) {
            *a = (&*a + r * &scale).mod_floor(&big);
        }
    }
    let denom = modulus(p, extra);
    let mut residues = Vec::with_capacity(acc.len());
    for a in acc {
        let (q, r) = a.div_rem(&denom);
        if !r.is_zero() {
            return Err(Error::NotIntegral("exponential series has a non-integral sum".into()));
        }
        residues.push(q);
    }
    Ok(ExpSeries { value: PadicMat::from_residues(p, target, n, n, residues), terms: n0 })
}

/// `log(g) = Σ_{n ≥ 1} (-1)^{n+1} (g - 1)^n / n` for `g ≡ 1` modulo `p` (modulo 4 at `p = 2`).
pub fn log_series(g: &PadicMat) -> Result<PadicMat> {
    let (p, prec, n) = (g.p, g.prec, g.rows);
    let t = g.sub(&PadicMat::identity(p, prec, n));
    let nu = t.valuation_floor();
    if nu as u64 * (p - 1) <= 1 {
        return Err(Error::OutsideLogDomain(format!("g - 1 has valuation {nu}")));
    }
    if nu >= prec {
        return Ok(t);
    }
    let log_p = |k: usize| {
        let (mut e, mut q) = (0u32, k as u64);
        while q >= p {
            q /= p;
            e += 1;
        }
        e
    };
    // v(T^k / k) ≥ k·ν - floor(log_p k), nondecreasing in k
    let mut n0 = 1;
    while (n0 as i64) * nu as i64 - (log_p(n0) as i64) < prec as i64 {
        n0 += 1;
    }
    let extra = log_p(n0.saturating_sub(1).max(1));
    let w = prec + extra;
    let big = modulus(p, w);
    let tw = PadicMat::from_residues(p, w, n, n, t.residues.clone());
    let mut power = PadicMat::identity(p, w, n);
    let mut acc = vec![BigInt::zero(); n * n];
    let pb = BigInt::from(p);
    for k in 1..n0 {
        power = power.mul(&tw);
        let mut m = BigInt::from(k);
        let mut v = 0;
        while (&m % &pb).is_zero() {
            m /= &pb;
            v += 1;
        }
        let mut scale = m.modinv(&big).expect("prime to p") * (&pb).pow(extra - v);
        if k % 2 == 0 {
            scale = -scale;
        }
        for (a, r) in acc.iter_mut().zip(&power.residues) {
            *a = (&*a + r * &scale).mod_floor(&big);
        }
    }
    let denom = modulus(p, extra);
    let residues = acc
        .into_iter()
        .map(|a| {
            let (q, r) = a.div_rem(&denom);
            if r.is_zero() {
                Ok(q)
            } else {
                Err(Error::NotIntegral("logarithm series has a non-integral sum".into()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PadicMat::from_residues(p, prec, n, n, residues))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Poly};
    use crate::lie::{standard_rep, unit_matrix};

    fn exact_exp_scalar(x: i64, p: u64, prec: u32, terms: usize) -> BigInt {
        let mut sum = Rational::zero();
        let mut term = Rational::one();
        for k in 0..terms {
            if k > 0 {
                term = term * Rational::from_integer(x.into()) / Rational::from_integer((k as i64).into());
            }
            sum += &term;
        }
        reduce_rational(&sum, p, prec).unwrap()
    }

    #[test]
    fn jordan_parts() {
        let a = Mat::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]]);
        let (s, n) = jordan_decomposition(&a).unwrap();
        assert_eq!(s, Mat::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]));
        assert_eq!(n, unit_matrix(3, 0, 1));
        let q = standard_rep(1, &Poly::from_i64(&[-2, 0, 1])).unwrap();
        assert_eq!(jordan_decomposition(q.x(0)), Err(Error::NonIntegerSpectrum));
        // an integral matrix whose semisimple part has 3 in the denominators
        let b = Mat::from_i64(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 4]]);
        let (s, n) = jordan_decomposition(&b).unwrap();
        assert_eq!(&s + &n, b);
        assert_eq!(&s * &n, &n * &s);
        assert!(n.pow(3).is_zero());
        assert!(mat_valuation(&s, 3).unwrap() < 0);
    }

    #[test]
    fn scalar_exp_matches_long_series() {
        let cfg = PadicConfig::new(3, 1, 10).unwrap();
        let one = standard_rep(1, &Poly::from_i64(&[-1, 1])).unwrap();
        let bound = TailBound::for_rep(&one, &cfg).unwrap();
        assert_eq!((bound.c_const, bound.nilpotency, bound.free_letters, bound.step), (0, 1, 0, 1));
        let e = exp_series(&Mat::from_i64(&[&[6]]), &bound, 10).unwrap();
        assert_eq!(e.value.residue(0, 0), &exact_exp_scalar(6, 3, 10, 80));
    }

    #[test]
    fn tail_terms_vanish_past_truncation() {
        let cfg = PadicConfig::new(5, 1, 12).unwrap();
        let mut x0 = Mat::zeros(3, 3);
        x0[(0, 0)] = rat(1);
        let rep = LieRep::checked(2, vec![x0, unit_matrix(3, 0, 1), unit_matrix(3, 0, 2)]).unwrap();
        let bound = TailBound::for_rep(&rep, &cfg).unwrap();
        let mut y = rep.x(0).scale(&rat(10));
        y = &y + &rep.x(1).scale(&rat(7));
        y = &y + &rep.x(2).scale(&rat(-3));
        let n0 = bound.truncation(12);
        let mut power = Mat::identity(3);
        let mut fact = Rational::one();
        for k in 0..n0 + 40 {
            if k > 0 {
                power = &power * &y;
                fact = fact * Rational::from_integer((k as i64).into());
            }
            let term = power.scale(&(Rational::one() / &fact));
            if let Some(v) = mat_valuation(&term, 5) {
                assert!(v >= bound.bound(k), "bound fails at term {k}");
                if k >= n0 {
                    assert!(v >= 12, "term {k} survives past the truncation index {n0}");
                }
            }
        }
    }

    #[test]
    fn log_inverts_exp_on_unipotent() {
        let g = PadicMat::from_mat(&Mat::from_i64(&[&[1, 9], &[0, 1]]), 3, 8).unwrap();
        let l = log_series(&g).unwrap();
        assert_eq!(l.to_mat(), Mat::from_i64(&[&[0, 9], &[0, 0]]));
        let outside = PadicMat::from_mat(&Mat::from_i64(&[&[2, 0], &[0, 1]]), 3, 8).unwrap();
        assert!(log_series(&outside).is_err());
    }

    #[test]
    fn div_by_p_power() {
        let m = PadicMat::from_mat(&Mat::from_i64(&[&[9, 18]]), 3, 6).unwrap();
        let q = m.div_p_pow(2).unwrap();
        assert_eq!(q.prec(), 4);
        assert_eq!(q.to_mat(), Mat::from_i64(&[&[1, 2]]));
        assert!(m.div_p_pow(3).is_err());
    }
}
