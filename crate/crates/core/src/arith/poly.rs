use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{format_rational, parse_rational, rat, Mat, Rational};
use crate::error::{Error, Result};

/// Univariate polynomial over `Q`, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| rat(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `X`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `X - a`.
    pub fn linear(a: Rational) -> Self {
        Self::new(vec![-a, Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading().recip();
        self.scale(&l)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `p(m)` by Horner's rule.
    pub fn eval_mat(&self, m: &Mat) -> Mat {
        let n = m.rows();
        self.coeffs.iter().rev().fold(Mat::zeros(n, n), |acc, c| &(&acc * m) + &Mat::scalar(n, c))
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.deg();
        let lead_inv = d.leading().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * di;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` the monic gcd.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let l = r0.leading().recip();
        (r0.scale(&l), s0.scale(&l), t0.scale(&l))
    }

    /// Companion matrix with ones on the subdiagonal and `-c_i` in the last column,
    /// i.e. multiplication by `X` on `Q[X]/p` in the basis `1, X, ..., X^{n-1}`.
    pub fn companion(&self) -> Result<Mat> {
        if !self.is_monic() || self.deg() == 0 {
            return Err(Error::NotMonic);
        }
        let n = self.deg();
        let mut m = Mat::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = Rational::one();
        }
        for i in 0..n {
            m[(i, n - 1)] = -self.coeffs[i].clone();
        }
        Ok(m)
    }

    /// Primitive integer polynomial with positive leading coefficient, equal to `self` up to a rational scalar.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if self.leading().is_negative() { -BigInt::one() } else { BigInt::one() };
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    pub fn from_integers(c: &[BigInt]) -> Self {
        Self::new(c.iter().cloned().map(Rational::from_integer).collect())
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn as_linear_root(&self) -> Option<Rational> {
        (self.deg() == 1 && self.is_monic()).then(|| -self.coeff(0))
    }

    /// Human-readable form such as `X^2 - 2`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => "X".into(),
                _ => format!("X^{i}"),
            };
            if i == 0 || !a.is_one() {
                out.push_str(&format_rational(&a));
            }
            out.push_str(&mono);
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

/// Serialized as an array of `"num/den"` strings, lowest degree first.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let c = v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>().map_err(serde::de::Error::custom)?;
        Ok(Poly::new(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;

    #[test]
    fn division_and_gcd() {
        let p = Poly::from_i64(&[-1, 0, 1]);
        let q = Poly::from_i64(&[-1, 1]);
        let (quo, r) = p.div_rem(&q);
        assert_eq!(quo, Poly::from_i64(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(p.gcd(&Poly::from_i64(&[2, 2])), Poly::from_i64(&[1, 1]));
    }

    #[test]
    fn bezout_witness() {
        let a = Poly::from_i64(&[-2, 1]).pow(2);
        let b = Poly::from_i64(&[-4, 0, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(g, Poly::from_i64(&[-2, 1]));
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn companion_of_x2_minus_2() {
        let c = Poly::from_i64(&[-2, 0, 1]).companion().unwrap();
        assert_eq!(c, Mat::from_i64(&[&[0, 2], &[1, 0]]));
        assert!(Poly::from_i64(&[1, 2]).companion().is_err());
    }

    #[test]
    fn pretty_and_serde() {
        let p = Poly::new(vec![frac(1, 2), rat(0), rat(-1), rat(1)]);
        assert_eq!(p.pretty(), "X^3 - X^2 + 1/2");
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["1/2","0","-1","1"]"#);
        assert_eq!(serde_json::from_str::<Poly>(&s).unwrap(), p);
    }

    #[test]
    fn primitive_integer_form() {
        let p = Poly::new(vec![frac(-1, 2), rat(0), frac(-3, 4)]);
        assert_eq!(p.primitive_integer(), vec![BigInt::from(2), BigInt::from(0), BigInt::from(3)]);
    }
}
