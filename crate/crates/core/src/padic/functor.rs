//! Integration of representations with integer `X_0` spectrum to actions of the
//! group, `g ↦ exp(ρ(log g))`, and differentiation of group actions back to
//! Lie algebra matrices along one-parameter subgroups `t ↦ exp(t X_i)`.

use num_bigint::BigInt;
use num_traits::Pow;

use super::group::{cocycle_logchi, cocycle_s, mat_exp, mat_log, AlgebraElement, GroupElement};
use super::series::{exp_series, log_series, PadicMat, TailBound};
use super::{PadicConfig, PadicScalar};
use crate::arith::Mat;
use crate::error::{Error, Result};
use crate::lie::{unit_matrix, LieRep};

/// A rep together with the tail bound for its exponential series.
#[derive(Debug, Clone)]
pub struct IntegratedRep {
    rep: LieRep,
    bound: TailBound,
}

impl IntegratedRep {
    /// Fails on entries with `p` in a denominator or on non-integer `X_0` spectrum.
    pub fn new(rep: &LieRep, cfg: &PadicConfig) -> Result<Self> {
        Ok(IntegratedRep { rep: rep.clone(), bound: TailBound::for_rep(rep, cfg)? })
    }

    pub fn rep(&self) -> &LieRep {
        &self.rep
    }

    pub fn bound(&self) -> &TailBound {
        &self.bound
    }

    /// Matrix of `g`, known to `prec(log g) - exp_loss` digits.
    pub fn action(&self, g: &GroupElement) -> Result<PadicMat> {
        if g.d() != self.rep.d() {
            return Err(Error::AlgebraMismatch(g.d(), self.rep.d()));
        }
        let x = mat_log(g)?;
        let n = self.rep.dim();
        let mut y = self.rep.x(0).scale(&x.a.to_rational());
        for (j, b) in x.b.iter().enumerate() {
            y = &y + &self.rep.x(j + 1).scale(&b.to_rational());
        }
        let target = x
            .prec()
            .checked_sub(self.bound.exp_loss())
            .filter(|&t| t > 0)
            .ok_or_else(|| Error::Config(format!("precision {} is too small to integrate", x.prec())))?;
        if n == 0 {
            return Ok(PadicMat::from_mat(&Mat::zeros(0, 0), self.bound.p, target)?);
        }
        Ok(exp_series(&y, &self.bound, target)?.value)
    }
}

pub fn v_functor(rep: &LieRep, g: &GroupElement, cfg: &PadicConfig) -> Result<PadicMat> {
    IntegratedRep::new(rep, cfg)?.action(g)
}

/// `log(action(exp(p^k X_i))) / p^k` for `i = 0..=d`; needs `k ≥ v_p(2p^c)`.
pub fn differentiate<F>(cfg: &PadicConfig, d: usize, k: u32, action: F) -> Result<Vec<PadicMat>>
where
    F: Fn(&GroupElement) -> Result<PadicMat>,
{
    let pk = PadicScalar::from_int(cfg.p, cfg.prec, &BigInt::from(cfg.p).pow(k));
    (0..=d)
        .map(|i| {
            let g = mat_exp(cfg, &AlgebraElement::basis(cfg, d, i).scale(&pk))?;
            log_series(&action(&g)?)?.div_p_pow(k)
        })
        .collect()
}

fn two_by_two(p: u64, entries: [&PadicScalar; 2], prec: u32) -> PadicMat {
    let (zero, one) = (PadicScalar::zero(p, prec), PadicScalar::one(p, prec));
    PadicMat::from_scalars(2, 2, &[entries[0].clone(), entries[1].clone(), zero, one])
}

/// `g ↦ [[1, log χ(g)], [0, 1]]`.
pub fn logchi_extension(g: &GroupElement) -> Result<PadicMat> {
    let l = cocycle_logchi(g)?;
    let one = PadicScalar::one(g.p(), l.prec());
    Ok(two_by_two(g.p(), [&one, &l], l.prec()))
}

/// `g ↦ [[χ(g), s_j(g)], [0, 1]]`.
pub fn s_extension(j: usize, g: &GroupElement) -> Result<PadicMat> {
    let s = cocycle_s(j, g)?;
    Ok(two_by_two(g.p(), [&g.u, &s], g.prec()))
}

/// `X_0 = [[0, 1], [0, 0]]`, `X_j = 0`.
pub fn logchi_extension_rep(d: usize) -> LieRep {
    let mut action = vec![unit_matrix(2, 0, 1)];
    action.extend((0..d).map(|_| Mat::zeros(2, 2)));
    LieRep::new(d, action).expect("shape")
}

/// `X_0 = [[1, 0], [0, 0]]`, `X_j = [[0, 1], [0, 0]]`, other `X_k = 0`.
pub fn s_extension_rep(d: usize, j: usize) -> LieRep {
    assert!((1..=d).contains(&j));
    let mut action = vec![unit_matrix(2, 0, 0)];
    action.extend((1..=d).map(|k| if k == j { unit_matrix(2, 0, 1) } else { Mat::zeros(2, 2) }));
    LieRep::new(d, action).expect("shape")
}

/// Reduces a rep's matrices to compare with differentiated actions.
pub fn reduce_rep(rep: &LieRep, p: u64, prec: u32) -> Result<Vec<PadicMat>> {
    rep.action().iter().map(|x| PadicMat::from_mat(x, p, prec)).collect()
}
