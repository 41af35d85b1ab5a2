//! The group `U ⋉ Z_p^d`, its Lie algebra, exp/log between them, the two
//! families of 1-cocycles and the operator relations among the generators.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use super::series::{exp_series, PadicMat, TailBound};
use super::{reduce_rational, PadicConfig, PadicScalar};
use crate::arith::{rat, Mat, Rational};
use crate::error::{Error, Result};
use crate::lie::{unit_matrix, LieRep};

/// `(u, z)`, realized as `[[u, z], [0, 1]]`; the law is `(u, z)(u', z') = (uu', z + u z')`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupElement {
    pub u: PadicScalar,
    pub z: Vec<PadicScalar>,
}

/// `(a, b) = a X_0 + Σ b_j X_j`, realized as `[[a, b], [0, 0]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraElement {
    pub a: PadicScalar,
    pub b: Vec<PadicScalar>,
}

fn same_prime(xs: impl IntoIterator<Item = u64>) -> Result<u64> {
    let mut it = xs.into_iter();
    let p = it.next().expect("nonempty");
    if let Some(q) = it.find(|&q| q != p) {
        return Err(Error::PadicMismatch(format!("primes {p} and {q}")));
    }
    Ok(p)
}

impl GroupElement {
    /// Checks `u ∈ 1 + 2p^c Z_p` and that all coordinates use `cfg.p`.
    pub fn new(cfg: &PadicConfig, u: PadicScalar, z: Vec<PadicScalar>) -> Result<Self> {
        let p = same_prime(std::iter::once(u.p()).chain(z.iter().map(PadicScalar::p)))?;
        if p != cfg.p {
            return Err(Error::PadicMismatch(format!("element over p = {p}, configuration has p = {}", cfg.p)));
        }
        let v = u.sub(&PadicScalar::one(p, u.prec())).valuation_floor();
        if v < cfg.kappa() {
            return Err(Error::OutsideLogDomain(format!("u = {u} is not in 1 + 2p^c Z_p (c = {})", cfg.c)));
        }
        Ok(GroupElement { u, z })
    }

    pub fn identity(cfg: &PadicConfig, d: usize) -> Self {
        GroupElement { u: cfg.scalar(1), z: vec![cfg.scalar(0); d] }
    }

    /// `r_0 = (1 + 2p^c, 0)` generates `U`; `r_j = (1, e_j)` for `j ≥ 1`.
    pub fn generator(cfg: &PadicConfig, d: usize, j: usize) -> Self {
        let mut g = Self::identity(cfg, d);
        if j == 0 {
            let two_pc = BigInt::from(2) * BigInt::from(cfg.p).pow(cfg.c);
            g.u = PadicScalar::from_int(cfg.p, cfg.prec, &(two_pc + 1));
        } else {
            g.z[j - 1] = cfg.scalar(1);
        }
        g
    }

    pub fn d(&self) -> usize {
        self.z.len()
    }

    pub fn p(&self) -> u64 {
        self.u.p()
    }

    pub fn prec(&self) -> u32 {
        self.z.iter().map(PadicScalar::prec).fold(self.u.prec(), u32::min)
    }

    pub fn inverse(&self) -> Result<Self> {
        let ui = self.u.inverse()?;
        Ok(GroupElement { z: self.z.iter().map(|z| ui.mul(z).neg()).collect(), u: ui })
    }

    pub fn realization(&self) -> PadicMat {
        let n = self.d() + 1;
        let mut entries = vec![PadicScalar::zero(self.p(), self.prec()); n * n];
        entries[0] = self.u.clone();
        for (j, z) in self.z.iter().enumerate() {
            entries[j + 1] = z.clone();
        }
        for i in 1..n {
            entries[i * n + i] = PadicScalar::one(self.p(), self.prec());
        }
        PadicMat::from_scalars(n, n, &entries)
    }

    pub fn truncate(&self, prec: u32) -> Self {
        GroupElement { u: self.u.truncate(prec), z: self.z.iter().map(|z| z.truncate(prec)).collect() }
    }

    pub fn agrees_with(&self, other: &GroupElement) -> bool {
        self.d() == other.d() && self.u.agrees_with(&other.u) && self.z.iter().zip(&other.z).all(|(a, b)| a.agrees_with(b))
    }
}

pub fn group_mul(g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    if g.d() != h.d() {
        return Err(Error::PadicMismatch(format!("d = {} vs d = {}", g.d(), h.d())));
    }
    same_prime([g.p(), h.p()])?;
    Ok(GroupElement { u: g.u.mul(&h.u), z: g.z.iter().zip(&h.z).map(|(z, w)| z.add(&g.u.mul(w))).collect() })
}

impl AlgebraElement {
    pub fn new(a: PadicScalar, b: Vec<PadicScalar>) -> Result<Self> {
        same_prime(std::iter::once(a.p()).chain(b.iter().map(PadicScalar::p)))?;
        Ok(AlgebraElement { a, b })
    }

    pub fn zero(cfg: &PadicConfig, d: usize) -> Self {
        AlgebraElement { a: cfg.scalar(0), b: vec![cfg.scalar(0); d] }
    }

    /// The basis vector `X_i`.
    pub fn basis(cfg: &PadicConfig, d: usize, i: usize) -> Self {
        let mut x = Self::zero(cfg, d);
        if i == 0 {
            x.a = cfg.scalar(1);
        } else {
            x.b[i - 1] = cfg.scalar(1);
        }
        x
    }

    pub fn d(&self) -> usize {
        self.b.len()
    }

    pub fn prec(&self) -> u32 {
        self.b.iter().map(PadicScalar::prec).fold(self.a.prec(), u32::min)
    }

    pub fn scale(&self, s: &PadicScalar) -> Self {
        AlgebraElement { a: self.a.mul(s), b: self.b.iter().map(|x| x.mul(s)).collect() }
    }

    pub fn add(&self, o: &AlgebraElement) -> Self {
        AlgebraElement { a: self.a.add(&o.a), b: self.b.iter().zip(&o.b).map(|(x, y)| x.add(y)).collect() }
    }

    /// `[(a, b), (a', b')] = (0, a b' - a' b)`.
    pub fn bracket(&self, o: &AlgebraElement) -> Self {
        AlgebraElement {
            a: PadicScalar::zero(self.a.p(), self.prec().min(o.prec())),
            b: self.b.iter().zip(&o.b).map(|(x, y)| self.a.mul(y).sub(&o.a.mul(x))).collect(),
        }
    }

    pub fn realization(&self) -> PadicMat {
        let n = self.d() + 1;
        let mut entries = vec![PadicScalar::zero(self.a.p(), self.prec()); n * n];
        entries[0] = self.a.clone();
        for (j, b) in self.b.iter().enumerate() {
            entries[j + 1] = b.clone();
        }
        PadicMat::from_scalars(n, n, &entries)
    }

    pub fn truncate(&self, prec: u32) -> Self {
        AlgebraElement { a: self.a.truncate(prec), b: self.b.iter().map(|x| x.truncate(prec)).collect() }
    }

    pub fn agrees_with(&self, o: &AlgebraElement) -> bool {
        self.d() == o.d() && self.a.agrees_with(&o.a) && self.b.iter().zip(&o.b).all(|(x, y)| x.agrees_with(y))
    }
}

/// `X_0 = E_00`, `X_j = E_0j` on `Q^{d+1}`.
pub fn defining_rep(d: usize) -> LieRep {
    let n = d + 1;
    LieRep::new(d, (0..n).map(|i| unit_matrix(n, 0, i)).collect()).expect("shape")
}

/// Exponential through the defining rep, losing [`TailBound::exp_loss`] digits of precision.
pub fn mat_exp(cfg: &PadicConfig, x: &AlgebraElement) -> Result<GroupElement> {
    let need = cfg.kappa();
    let got = x.a.valuation_floor();
    if got < need {
        return Err(Error::OutsideExpDomain { got, need });
    }
    let d = x.d();
    let bound = TailBound::for_rep(&defining_rep(d), cfg)?;
    let target = x
        .prec()
        .checked_sub(bound.exp_loss())
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::Config(format!("precision {} is too small for exp", x.prec())))?;
    let e = exp_series(&x.realization().to_mat(), &bound, target)?.value;
    Ok(GroupElement { u: e.entry(0, 0), z: (1..=d).map(|j| e.entry(0, j)).collect() })
}

/// `log(u, z) = (log u, z · log(u)/(u - 1))`, from the series of `log(1+t)/t`.
pub fn mat_log(g: &GroupElement) -> Result<AlgebraElement> {
    let p = g.p();
    let prec = g.prec();
    let t = g.u.sub(&PadicScalar::one(p, prec));
    let kappa = t.valuation_floor();
    if kappa == 0 || u64::from(kappa) * (p - 1) <= 1 {
        return Err(Error::OutsideLogDomain(format!("v(u - 1) = {kappa}")));
    }
    // input uncertainty p^N δ in u moves the term t^{n-1}/n by (n-1) t^{n-2} δ / n
    let mut loss = 0i64;
    let mut pk = p;
    let mut k = 1i64;
    loop {
        let slack = (pk as i64 - 2) * kappa as i64 - k;
        loss = loss.max(-slack);
        if slack >= 0 {
            break;
        }
        pk *= p;
        k += 1;
    }
    let target = u32::try_from(prec as i64 - loss.max(0))
        .ok()
        .filter(|&x| x > 0)
        .ok_or_else(|| Error::Config(format!("precision {prec} is too small for log")))?;
    let floor_log = |n: usize| {
        let (mut e, mut q) = (0i64, n as u64);
        while q >= p {
            q /= p;
            e += 1;
        }
        e
    };
    let mut n0 = 1usize;
    while (n0 as i64 - 1) * kappa as i64 - floor_log(n0) < target as i64 {
        n0 += 1;
    }
    let tr = t.to_rational();
    let mut ell = Rational::zero();
    let mut pw = Rational::one();
    for n in 1..n0 {
        let term = &pw / rat(n as i64);
        if n % 2 == 1 {
            ell += term;
        } else {
            ell -= term;
        }
        pw *= &tr;
    }
    let ell = PadicScalar::from_int(
        p,
        target,
        &reduce_rational(&ell, p, target).ok_or_else(|| Error::NotIntegral("log(u)/(u - 1)".into()))?,
    );
    Ok(AlgebraElement { a: t.mul(&ell), b: g.z.iter().map(|z| z.mul(&ell)).collect() })
}

/// `log χ(g) = log u`, a homomorphism to `(Z_p, +)`.
pub fn cocycle_logchi(g: &GroupElement) -> Result<PadicScalar> {
    Ok(mat_log(g)?.a)
}

/// `s_j(g) = z_j`, satisfying `s_j(gh) = s_j(g) + χ(g) s_j(h)`.
pub fn cocycle_s(j: usize, g: &GroupElement) -> Result<PadicScalar> {
    if j == 0 || j > g.d() {
        return Err(Error::Shape(format!("s_{j} is defined for 1 ≤ j ≤ {}", g.d())));
    }
    Ok(g.z[j - 1].clone())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub pass: bool,
}

fn rational_group_matrix(u: &Rational, z: &[Rational]) -> Mat {
    let n = z.len() + 1;
    let mut m = Mat::identity(n);
    m[(0, 0)] = u.clone();
    for (j, x) in z.iter().enumerate() {
        m[(0, j + 1)] = x.clone();
    }
    m
}

/// Exact matrix identities among `X_i`, `r_j = exp(X_j) = 1 + E_0j` and `γ = (u, z)`:
/// `[X_0, X_j] = X_j`, `X_0 r_j = r_j (X_0 + X_j)`, `X_j γ = χ(γ)^{-1} γ X_j`, `X_j r_k = r_k X_j`.
pub fn relation_check(d: usize) -> Vec<RelationCheck> {
    let n = d + 1;
    let x: Vec<Mat> = (0..n).map(|i| unit_matrix(n, 0, i)).collect();
    let r: Vec<Mat> = (0..n).map(|j| &Mat::identity(n) + &x[j]).collect();
    let samples: Vec<(Rational, Vec<Rational>)> = vec![
        (rat(7), (1..=d).map(|j| rat(j as i64)).collect()),
        (Rational::new(31.into(), 5.into()), (1..=d).map(|j| rat(3 - j as i64)).collect()),
        (rat(-2), vec![rat(0); d]),
    ];
    let mut out = Vec::new();
    for j in 1..=d {
        out.push(RelationCheck { name: format!("[X_0, X_{j}] = X_{j}"), pass: x[0].commutator(&x[j]) == x[j] });
        let rhs = &r[j] * &(&x[0] + &x[j]);
        out.push(RelationCheck { name: format!("X_0 r_{j} = r_{j} (X_0 + X_{j})"), pass: &x[0] * &r[j] == rhs });
        for (s, (u, z)) in samples.iter().enumerate() {
            let g = rational_group_matrix(u, z);
            let rhs = (&g * &x[j]).scale(&(Rational::one() / u));
            out.push(RelationCheck { name: format!("X_{j} γ_{s} = χ(γ_{s})^-1 γ_{s} X_{j}"), pass: &x[j] * &g == rhs });
        }
        for k in 1..=d {
            out.push(RelationCheck { name: format!("X_{j} r_{k} = r_{k} X_{j}"), pass: &x[j] * &r[k] == &r[k] * &x[j] });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(p: u64, prec: u32) -> PadicConfig {
        PadicConfig::new(p, 1, prec).unwrap()
    }

    #[test]
    fn multiplication_matches_matrices() {
        let c = cfg(5, 8);
        let g = GroupElement::new(&c, c.scalar(11), vec![c.scalar(3), c.scalar(-7)]).unwrap();
        let h = GroupElement::new(&c, c.scalar(-9), vec![c.scalar(2), c.scalar(4)]).unwrap();
        let gh = group_mul(&g, &h).unwrap();
        assert_eq!(gh.realization(), g.realization().mul(&h.realization()));
        assert_eq!(group_mul(&g, &GroupElement::identity(&c, 2)).unwrap(), g);
        assert!(group_mul(&g, &GroupElement::identity(&c, 1)).is_err());
        let ginv = g.inverse().unwrap();
        assert_eq!(group_mul(&g, &ginv).unwrap(), GroupElement::identity(&c, 2));
        assert!(GroupElement::new(&c, c.scalar(2), vec![c.scalar(0); 2]).is_err());
    }

    #[test]
    fn conjugation_twists_translations() {
        let c = cfg(3, 10);
        let g = GroupElement::new(&c, c.scalar(7), vec![c.scalar(0)]).unwrap();
        let r1 = GroupElement::generator(&c, 1, 1);
        let conj = group_mul(&group_mul(&g, &r1).unwrap(), &g.inverse().unwrap()).unwrap();
        assert_eq!(conj, GroupElement { u: c.scalar(1), z: vec![c.scalar(7)] });

        let r0 = GroupElement::generator(&c, 1, 0);
        let a = group_mul(&r0, &r1).unwrap();
        let b = group_mul(&r1, &r0).unwrap();
        assert_eq!(a.u, b.u);
        assert_eq!(a.z[0], r0.u);
        assert_eq!(b.z[0], c.scalar(1));
    }

    #[test]
    fn exp_of_zero_and_translations() {
        let c = cfg(5, 12);
        assert_eq!(mat_exp(&c, &AlgebraElement::zero(&c, 2)).unwrap().truncate(10), GroupElement::identity(&c.with_prec(10), 2));
        for j in 1..=2 {
            let r = mat_exp(&c, &AlgebraElement::basis(&c, 2, j)).unwrap();
            assert!(r.agrees_with(&GroupElement::generator(&c, 2, j)));
        }
        let log_id = mat_log(&GroupElement::identity(&c, 2)).unwrap();
        assert!(log_id.agrees_with(&AlgebraElement::zero(&c, 2)));
    }

    #[test]
    fn exp_domain_is_enforced() {
        let c = cfg(3, 10);
        let err = mat_exp(&c, &AlgebraElement::basis(&c, 1, 0)).unwrap_err();
        assert_eq!(err, Error::OutsideExpDomain { got: 0, need: 1 });
        assert!(err.to_string().starts_with("outside exp domain"));
    }

    #[test]
    fn exp_six_x0_at_three() {
        let c = cfg(3, 14);
        let x = AlgebraElement::basis(&c, 1, 0).scale(&c.scalar(6));
        let g = mat_exp(&c, &x).unwrap();
        assert!(g.z[0].is_zero());
        // exp(6) from 120 exact terms, reduced mod 3^10
        let mut sum = Rational::zero();
        let mut term = Rational::one();
        for k in 0..120 {
            if k > 0 {
                term = term * rat(6) / rat(k);
            }
            sum += &term;
        }
        let expected = PadicScalar::from_rational(&sum, 3, 10).unwrap();
        assert_eq!(g.u.truncate(10), expected);
        assert!(mat_log(&g).unwrap().agrees_with(&x));
    }

    #[test]
    fn cocycles_on_generators() {
        let c = cfg(5, 10);
        let id = GroupElement::identity(&c, 3);
        assert!(cocycle_logchi(&id).unwrap().is_zero());
        for j in 1..=3 {
            assert!(cocycle_s(j, &id).unwrap().is_zero());
            let r = GroupElement::generator(&c, 3, j);
            for k in 1..=3 {
                let expected = if j == k { 1 } else { 0 };
                assert_eq!(cocycle_s(k, &r).unwrap(), c.scalar(expected));
            }
        }
        assert!(cocycle_s(0, &id).is_err());
    }

    #[test]
    fn bracket_matches_commutator() {
        let c = cfg(7, 6);
        let x = AlgebraElement::new(c.scalar(3), vec![c.scalar(1), c.scalar(-2)]).unwrap();
        let y = AlgebraElement::new(c.scalar(5), vec![c.scalar(4), c.scalar(9)]).unwrap();
        let (mx, my) = (x.realization().to_mat(), y.realization().to_mat());
        let comm = PadicMat::from_mat(&mx.commutator(&my), 7, 6).unwrap();
        assert_eq!(x.bracket(&y).realization(), comm);
    }

    #[test]
    fn relations_hold() {
        for d in 1..=3 {
            assert!(relation_check(d).iter().all(|r| r.pass));
        }
        let x0 = unit_matrix(2, 0, 0);
        let r1 = &Mat::identity(2) + &unit_matrix(2, 0, 1);
        assert_eq!(&x0 * &r1, Mat::from_i64(&[&[1, 1], &[0, 0]]));
    }
}
