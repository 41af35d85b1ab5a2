//! Capped-precision p-adic model of the group `U ⋉ Z_p^d`, `U = 1 + 2p^c Z_p`,
//! realized inside `GL_{d+1}` as `(u, z) ↦ [[u, z], [0, 1]]`, and of its Lie
//! algebra `g_d`, realized as `(a, b) ↦ [[a, b], [0, 0]]`.
//!
//! Every value carries its own precision `N` (known modulo `p^N`). Precision
//! only ever decreases, and series evaluation subtracts an a priori bound on
//! the digits that input uncertainty can corrupt.

mod functor;
mod group;
mod series;

pub use functor::{
    differentiate, logchi_extension, logchi_extension_rep, reduce_rep, s_extension, s_extension_rep, v_functor,
    IntegratedRep,
};
pub use group::{
    cocycle_logchi, cocycle_s, defining_rep, group_mul, mat_exp, mat_log, relation_check, AlgebraElement, GroupElement,
    RelationCheck,
};
pub use series::{exp_series, jordan_decomposition, log_series, ExpSeries, PadicMat, TailBound};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int_valuation, Rational};
use crate::error::{Error, Result};

pub(crate) fn modulus(p: u64, prec: u32) -> BigInt {
    BigInt::from(p).pow(prec)
}

/// `v_p(n!)` by Legendre's formula.
pub fn factorial_valuation(n: usize, p: u64) -> u64 {
    let p = p as usize;
    let (mut q, mut v) = (n, 0u64);
    while q > 0 {
        q /= p;
        v += q as u64;
    }
    v
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

/// Reduces a p-integral rational modulo `p^prec`.
pub(crate) fn reduce_rational(r: &Rational, p: u64, prec: u32) -> Option<BigInt> {
    let m = modulus(p, prec);
    let den = r.denom().mod_floor(&m);
    if (r.denom() % BigInt::from(p)).is_zero() {
        return None;
    }
    let inv = den.modinv(&m)?;
    Some((r.numer() * inv).mod_floor(&m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicConfig {
    pub p: u64,
    pub c: u32,
    pub prec: u32,
}

impl PadicConfig {
    /// `p` odd prime; `c ≥ 1`. The prime 2 goes through [`PadicConfig::two`].
    pub fn new(p: u64, c: u32, prec: u32) -> Result<Self> {
        if p == 2 {
            return Err(Error::Config("p = 2 needs the explicit two-adic configuration".into()));
        }
        Self::checked(p, c, prec)
    }

    /// The two-adic model, with `c = 2` unless overridden.
    pub fn two(c: Option<u32>, prec: u32) -> Result<Self> {
        Self::checked(2, c.unwrap_or(2), prec)
    }

    fn checked(p: u64, c: u32, prec: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Config(format!("{p} is not prime")));
        }
        if c == 0 {
            return Err(Error::Config("c must be at least 1".into()));
        }
        if prec == 0 {
            return Err(Error::Config("precision must be positive".into()));
        }
        Ok(PadicConfig { p, c, prec })
    }

    /// `v_p(2p^c)`: the valuation defining `U` and the exp domain.
    pub fn kappa(&self) -> u32 {
        self.c + u32::from(self.p == 2)
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        PadicConfig { prec, ..*self }
    }

    pub fn scalar(&self, n: i64) -> PadicScalar {
        PadicScalar::from_int(self.p, self.prec, &BigInt::from(n))
    }
}

/// An element of `Z_p` known modulo `p^prec`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ScalarRepr", into = "ScalarRepr")]
pub struct PadicScalar {
    p: u64,
    prec: u32,
    residue: BigInt,
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    p: u64,
    prec: u32,
    residue: String,
}

impl From<PadicScalar> for ScalarRepr {
    fn from(s: PadicScalar) -> Self {
        ScalarRepr { p: s.p, prec: s.prec, residue: s.residue.to_string() }
    }
}

impl TryFrom<ScalarRepr> for PadicScalar {
    type Error = Error;
    fn try_from(r: ScalarRepr) -> Result<Self> {
        if !is_prime(r.p) {
            return Err(Error::Parse(format!("p: {} is not prime", r.p)));
        }
        let residue: BigInt = r.residue.parse().map_err(|_| Error::Parse(format!("residue: not an integer: {:?}", r.residue)))?;
        Ok(PadicScalar::from_int(r.p, r.prec, &residue))
    }
}

impl PadicScalar {
    pub fn from_int(p: u64, prec: u32, n: &BigInt) -> Self {
        PadicScalar { p, prec, residue: n.mod_floor(&modulus(p, prec)) }
    }

    pub fn from_rational(r: &Rational, p: u64, prec: u32) -> Result<Self> {
        let residue = reduce_rational(r, p, prec).ok_or_else(|| Error::NotIntegral(format!("{r} at p = {p}")))?;
        Ok(PadicScalar { p, prec, residue })
    }

    pub fn zero(p: u64, prec: u32) -> Self {
        PadicScalar { p, prec, residue: BigInt::zero() }
    }

    pub fn one(p: u64, prec: u32) -> Self {
        Self::from_int(p, prec, &BigInt::one())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Canonical representative in `[0, p^prec)`.
    pub fn residue(&self) -> &BigInt {
        &self.residue
    }

    pub fn to_rational(&self) -> Rational {
        Rational::from_integer(self.residue.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    /// Exact valuation, or `None` when the value is 0 to the known precision.
    pub fn valuation(&self) -> Option<u32> {
        (!self.residue.is_zero()).then(|| int_valuation(&self.residue, self.p))
    }

    /// Known lower bound on the valuation (the precision when the value reads as 0).
    pub fn valuation_floor(&self) -> u32 {
        self.valuation().unwrap_or(self.prec)
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    pub fn truncate(&self, prec: u32) -> Self {
        let prec = prec.min(self.prec);
        Self::from_int(self.p, prec, &self.residue)
    }

    /// Agreement modulo `p^min(prec)`.
    pub fn agrees_with(&self, other: &PadicScalar) -> bool {
        let n = self.prec.min(other.prec);
        self.p == other.p && self.truncate(n).residue == other.truncate(n).residue
    }

    pub fn add(&self, o: &PadicScalar) -> PadicScalar {
        self.combine(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &PadicScalar) -> PadicScalar {
        self.combine(o, |a, b| a - b)
    }

    pub fn mul(&self, o: &PadicScalar) -> PadicScalar {
        self.combine(o, |a, b| a * b)
    }

    pub fn neg(&self) -> PadicScalar {
        Self::from_int(self.p, self.prec, &-&self.residue)
    }

    fn combine(&self, o: &PadicScalar, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> PadicScalar {
        assert_eq!(self.p, o.p, "p-adic scalars for different primes");
        Self::from_int(self.p, self.prec.min(o.prec), &f(&self.residue, &o.residue))
    }

    pub fn inverse(&self) -> Result<PadicScalar> {
        if !self.is_unit() {
            return Err(Error::NotIntegral(format!("{self} is not a unit")));
        }
        let inv = self.residue.modinv(&modulus(self.p, self.prec)).expect("unit");
        Ok(PadicScalar { p: self.p, prec: self.prec, residue: inv })
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.residue, self.p, self.prec)
    }
}

impl fmt::Debug for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::frac;

    #[test]
    fn legendre() {
        assert_eq!(factorial_valuation(5, 3), 1);
        assert_eq!(factorial_valuation(9, 3), 4);
        assert_eq!(factorial_valuation(100, 5), 24);
        assert_eq!(factorial_valuation(0, 5), 0);
    }

    #[test]
    fn scalar_arithmetic() {
        let a = PadicScalar::from_rational(&frac(1, 2), 5, 4).unwrap();
        assert_eq!(a.residue(), &BigInt::from(313));
        let two = PadicScalar::from_int(5, 6, &BigInt::from(2));
        let one = a.mul(&two);
        assert_eq!(one.prec(), 4);
        assert_eq!(one.residue(), &BigInt::one());
        assert_eq!(two.inverse().unwrap().truncate(4), a);
        assert!(PadicScalar::from_rational(&frac(1, 5), 5, 4).is_err());
        assert!(PadicScalar::from_int(5, 4, &BigInt::from(10)).inverse().is_err());
    }

    #[test]
    fn valuations() {
        let x = PadicScalar::from_int(3, 5, &BigInt::from(18));
        assert_eq!(x.valuation(), Some(2));
        let z = PadicScalar::from_int(3, 5, &BigInt::from(243));
        assert_eq!(z.valuation(), None);
        assert_eq!(z.valuation_floor(), 5);
    }

    #[test]
    fn json_shape() {
        let x = PadicScalar::from_int(5, 3, &BigInt::from(-1));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"p":5,"prec":3,"residue":"124"}"#);
        let back: PadicScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<PadicScalar>(r#"{"p":4,"prec":3,"residue":"1"}"#).is_err());
    }

    #[test]
    fn config_rules() {
        assert!(PadicConfig::new(2, 1, 10).is_err());
        assert_eq!(PadicConfig::two(None, 10).unwrap().kappa(), 3);
        assert_eq!(PadicConfig::new(5, 1, 10).unwrap().kappa(), 1);
        assert!(PadicConfig::new(9, 1, 10).is_err());
        assert!(PadicConfig::new(3, 0, 10).is_err());
    }
}
