//! Spectral structure of a representation through the action of `X_0`:
//! composition factors, the split into integer and non-integer spectrum,
//! the Jordan type of unipotent objects, and irreducibility.
//!
//! Since `X_1, ..., X_d` act nilpotently (they raise generalized `X_0`
//! eigenvalues by one), composition factors are the quotients `K[X_0]/f`
//! for the irreducible factors `f` of the characteristic polynomial of `X_0`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{factor_rationals, linalg, squarefree_and_integer_roots, Mat, Poly, Rational};
use crate::error::{Error, Result};
use crate::lie::{standard_rep, LieRep, RepMorphism};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthVector {
    pub factors: Vec<(Poly, usize)>,
}

impl LengthVector {
    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|(f, m)| f.deg() * m).sum()
    }

    /// Sum of two length vectors, merging equal factors.
    pub fn merge(&self, other: &LengthVector) -> LengthVector {
        let mut factors = self.factors.clone();
        for (f, m) in &other.factors {
            match factors.iter_mut().find(|(g, _)| g == f) {
                Some((_, k)) => *k += m,
                None => factors.push((f.clone(), *m)),
            }
        }
        factors.sort_by(|a, b| (a.0.deg(), a.0.coeffs()).cmp(&(b.0.deg(), b.0.coeffs())));
        LengthVector { factors }
    }
}

pub fn length(rep: &LieRep) -> Result<LengthVector> {
    if rep.dim() == 0 {
        return Ok(LengthVector { factors: Vec::new() });
    }
    Ok(LengthVector { factors: factor_rationals(&linalg::charpoly(rep.x(0)))? })
}

#[derive(Clone, Debug)]
pub struct BlockSplit {
    pub z_part: LieRep,
    pub zprime_part: LieRep,
    pub inclusion_z: RepMorphism,
    pub inclusion_zprime: RepMorphism,
    /// Integer eigenvalues of `X_0` with algebraic multiplicity, ascending.
    pub eigenvalues: Vec<(BigInt, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSplitSummary {
    pub z_dim: usize,
    pub zprime_dim: usize,
    pub z_eigenvalues: Vec<(String, usize)>,
}

impl BlockSplit {
    /// Columns: the integer part first, then the rest; conjugating by it block-diagonalizes the rep.
    pub fn change_of_basis(&self) -> Mat {
        self.inclusion_z.matrix.hstack(&self.inclusion_zprime.matrix)
    }

    pub fn summary(&self) -> BlockSplitSummary {
        BlockSplitSummary {
            z_dim: self.z_part.dim(),
            zprime_dim: self.zprime_part.dim(),
            z_eigenvalues: self.eigenvalues.iter().map(|(n, m)| (n.to_string(), *m)).collect(),
        }
    }
}

fn basis_matrix(n: usize, vs: &[Vec<Rational>]) -> Mat {
    Mat::from_columns(n, vs)
}

/// Generalized eigenspace of `a` for the rational eigenvalue `lambda`.
pub fn generalized_eigenspace(a: &Mat, lambda: &Rational) -> Vec<Vec<Rational>> {
    let n = a.rows();
    let shifted = a - &Mat::scalar(n, lambda);
    linalg::kernel(&shifted.pow(n))
}

/// Splits off the generalized eigenspaces of `X_0` for integer eigenvalues
/// (in ascending order) from the primary component of the remaining factors.
pub fn z_split(rep: &LieRep) -> Result<BlockSplit> {
    let n = rep.dim();
    let (z_basis, zprime_basis, eigenvalues) = if n == 0 {
        (Vec::new(), Vec::new(), Vec::new())
    } else {
        let a = rep.x(0);
        let chi = linalg::charpoly(a);
        let (_, roots) = squarefree_and_integer_roots(&chi)?;
        let mut z_basis = Vec::new();
        let mut rest = chi.clone();
        for (r, m) in &roots {
            let lambda = Rational::from_integer(r.clone());
            let lin = Poly::linear(lambda.clone()).pow(*m);
            rest = rest.div_rem(&lin).0;
            let shifted = a - &Mat::scalar(n, &lambda);
            z_basis.extend(linalg::kernel(&shifted.pow(*m)));
        }
        let zprime_basis = linalg::kernel(&rest.eval_mat(a));
        (z_basis, zprime_basis, roots)
    };
    let zb = basis_matrix(n, &z_basis);
    let zpb = basis_matrix(n, &zprime_basis);
    let z_part = rep.restrict(&zb)?;
    let zprime_part = rep.restrict(&zpb)?;
    Ok(BlockSplit {
        inclusion_z: RepMorphism::new(z_part.clone(), rep.clone(), zb)?,
        inclusion_zprime: RepMorphism::new(zprime_part.clone(), rep.clone(), zpb)?,
        z_part,
        zprime_part,
        eigenvalues,
    })
}

#[derive(Clone, Debug)]
pub struct UnipotentStructure {
    /// Jordan block sizes of `X_0`, descending.
    pub blocks: Vec<usize>,
    /// Columns are Jordan chains `g, X_0 g, ..., X_0^{r-1} g`, longest first.
    pub witness: Mat,
    /// `⊕ K[X_0]/X_0^{r_i}` in the block order of `blocks`.
    pub model: LieRep,
    /// Whether every `X_j`, `j ≥ 1`, vanishes in the recovered basis.
    pub geometric_part_vanishes: bool,
}

/// Decomposes a rep whose only composition factor is the trivial one as
/// `⊕ K[X_0]/X_0^{r_i}`, with an explicit change of basis.
pub fn unipotent_structure(rep: &LieRep) -> Result<UnipotentStructure> {
    let n = rep.dim();
    let d = rep.d();
    if n == 0 {
        return Ok(UnipotentStructure {
            blocks: Vec::new(),
            witness: Mat::zeros(0, 0),
            model: LieRep::zero_dim(d),
            geometric_part_vanishes: true,
        });
    }
    let a = rep.x(0);
    if !a.pow(n).is_zero() {
        let chi = linalg::charpoly(a);
        return Err(Error::NotUnipotent(format!("X_0 has characteristic polynomial {}", chi.pretty())));
    }
    if let Some(j) = (1..=d).find(|&j| !rep.x(j).is_zero()) {
        return Err(Error::NotUnipotent(format!("X_{j} acts nontrivially")));
    }

    // kernels of A^k for k = 0..=n
    let kernels: Vec<Vec<Vec<Rational>>> = (0..=n).map(|k| linalg::kernel(&a.pow(k))).collect();
    let top = kernels.iter().position(|k| k.len() == n).expect("nilpotent");
    let mut chains: Vec<(usize, Vec<Rational>)> = Vec::new();
    for k in (1..=top).rev() {
        // span already accounted for at level k: ker A^{k-1} plus the level-k vectors of longer chains
        let mut span: Vec<Vec<Rational>> = kernels[k - 1].clone();
        for (s, g) in &chains {
            span.push(a.pow(s - k).mul_vec(g));
        }
        let mut r = linalg::rank_of_vectors(n, &span);
        for v in &kernels[k] {
            span.push(v.clone());
            let r2 = linalg::rank_of_vectors(n, &span);
            if r2 > r {
                r = r2;
                chains.push((k, v.clone()));
            } else {
                span.pop();
            }
        }
    }
    let mut columns = Vec::with_capacity(n);
    for (s, g) in &chains {
        let mut v = g.clone();
        for _ in 0..*s {
            columns.push(v.clone());
            v = a.mul_vec(&v);
        }
    }
    let witness = Mat::from_columns(n, &columns);
    let blocks: Vec<usize> = chains.iter().map(|(s, _)| *s).collect();
    let mut model = LieRep::zero_dim(d);
    for &r in &blocks {
        let mut p = vec![0i64; r + 1];
        p[r] = 1;
        model = model.direct_sum(&standard_rep(d, &Poly::from_i64(&p))?)?;
    }
    let recovered = rep.conjugate(&witness)?;
    debug_assert_eq!(recovered, model);
    let geometric_part_vanishes = (1..=d).all(|j| recovered.x(j).is_zero());
    Ok(UnipotentStructure { blocks, witness, model, geometric_part_vanishes })
}

#[derive(Clone, Debug)]
pub struct Irreducibility {
    pub irreducible: bool,
    /// A proper nonzero stable subspace when the rep is reducible.
    pub witness: Option<Mat>,
}

pub fn irreducible_test(rep: &LieRep) -> Result<Irreducibility> {
    let n = rep.dim();
    let d = rep.d();
    if n == 0 {
        return Ok(Irreducibility { irreducible: false, witness: None });
    }
    if (1..=d).any(|j| !rep.x(j).is_zero()) {
        // the common kernel of the commuting nilpotent X_j is nonzero, proper and stable
        let stacked = (1..=d).fold(Mat::zeros(0, n), |acc, j| {
            let mut s = Mat::zeros(acc.rows() + n, n);
            s.set_block(0, 0, &acc);
            s.set_block(acc.rows(), 0, rep.x(j));
            s
        });
        let w = Mat::from_columns(n, &linalg::kernel(&stacked));
        return Ok(Irreducibility { irreducible: false, witness: Some(w) });
    }
    let a = rep.x(0);
    let factors = length(rep)?.factors;
    if factors.len() == 1 && factors[0].1 == 1 {
        return Ok(Irreducibility { irreducible: true, witness: None });
    }
    let f = &factors[0].0;
    let v = linalg::kernel(&f.eval_mat(a)).into_iter().next().expect("factor of the characteristic polynomial");
    let mut cols = vec![v];
    for _ in 1..f.deg() {
        let next = a.mul_vec(cols.last().unwrap());
        cols.push(next);
    }
    Ok(Irreducibility { irreducible: false, witness: Some(Mat::from_columns(n, &cols)) })
}

/// Checks that each `X_j` maps the generalized `λ`-eigenspace of `X_0` into the
/// generalized `(λ+1)`-eigenspace, for every rational eigenvalue `λ`.
pub fn shift_law_holds(rep: &LieRep) -> Result<bool> {
    let n = rep.dim();
    if n == 0 {
        return Ok(true);
    }
    let a = rep.x(0);
    let lambdas: Vec<Rational> =
        length(rep)?.factors.iter().filter_map(|(f, _)| f.as_linear_root()).collect();
    for lambda in &lambdas {
        let src = generalized_eigenspace(a, lambda);
        let dst = generalized_eigenspace(a, &(lambda + Rational::from_integer(1.into())));
        for j in 1..=rep.d() {
            for v in &src {
                let w = rep.x(j).mul_vec(v);
                if w.iter().all(Zero::is_zero) {
                    continue;
                }
                if !linalg::in_span(n, &dst, &w) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};
    use crate::lie::{character, unit_matrix};

    fn nilpotent_pair() -> LieRep {
        LieRep::new(1, vec![Mat::from_i64(&[&[0, 1], &[0, 0]]), Mat::zeros(2, 2)]).unwrap()
    }

    fn extension(d: usize, j: usize) -> LieRep {
        let mut action = vec![unit_matrix(2, 0, 0)];
        for k in 1..=d {
            action.push(if k == j { unit_matrix(2, 0, 1) } else { Mat::zeros(2, 2) });
        }
        LieRep::checked(d, action).unwrap()
    }

    #[test]
    fn length_examples() {
        let r = standard_rep(2, &Poly::from_i64(&[-1, 1])).unwrap().direct_sum(&LieRep::unit(2)).unwrap();
        let l = length(&r).unwrap();
        assert_eq!(l.factors, vec![(Poly::from_i64(&[-1, 1]), 1), (Poly::x(), 1)]);
        assert_eq!(l.total_dim(), 2);
        assert_eq!(length(&nilpotent_pair()).unwrap().factors, vec![(Poly::x(), 2)]);
        let q = standard_rep(1, &Poly::from_i64(&[-2, 0, 1])).unwrap();
        assert_eq!(length(&q).unwrap().factors, vec![(Poly::from_i64(&[-2, 0, 1]), 1)]);
    }

    #[test]
    fn z_split_examples() {
        let mut x0 = Mat::zeros(2, 2);
        x0[(1, 1)] = frac(1, 2);
        let r = LieRep::new(1, vec![x0, Mat::zeros(2, 2)]).unwrap();
        let s = z_split(&r).unwrap();
        assert_eq!((s.z_part.dim(), s.zprime_part.dim()), (1, 1));
        assert_eq!(s.z_part, LieRep::unit(1));
        assert_eq!(s.zprime_part, character(1, frac(1, 2)));

        let q = standard_rep(1, &Poly::from_i64(&[-2, 0, 1])).unwrap();
        let s = z_split(&q).unwrap();
        assert_eq!((s.z_part.dim(), s.zprime_part.dim()), (0, 2));

        let e = extension(2, 2);
        let s = z_split(&e).unwrap();
        assert_eq!((s.z_part.dim(), s.zprime_part.dim()), (2, 0));
        assert_eq!(s.summary().z_eigenvalues, vec![("0".to_string(), 1), ("1".to_string(), 1)]);
        assert!(s.inclusion_z.is_injective());
    }

    #[test]
    fn unipotent_examples() {
        assert_eq!(unipotent_structure(&LieRep::unit(1)).unwrap().blocks, vec![1]);
        let u = unipotent_structure(&nilpotent_pair()).unwrap();
        assert_eq!(u.blocks, vec![2]);
        assert!(u.geometric_part_vanishes);

        let base = standard_rep(2, &Poly::from_i64(&[0, 0, 1])).unwrap().direct_sum(&LieRep::unit(2)).unwrap();
        let s = Mat::from_i64(&[&[1, 2, 0], &[0, 1, -1], &[3, 0, 1]]);
        let u = unipotent_structure(&base.conjugate(&s).unwrap()).unwrap();
        assert_eq!(u.blocks, vec![2, 1]);
        assert_eq!(u.model, base);
    }

    #[test]
    fn unipotent_rejects_other_spectrum() {
        let err = unipotent_structure(&character(1, rat(1))).unwrap_err();
        assert!(err.to_string().contains("not supported on"));
        assert!(unipotent_structure(&extension(1, 1)).is_err());
    }

    #[test]
    fn irreducibility_examples() {
        let r = standard_rep(2, &Poly::from_i64(&[1, 0, 1])).unwrap();
        assert!(irreducible_test(&r).unwrap().irreducible);
        assert!(irreducible_test(&LieRep::unit(3)).unwrap().irreducible);

        let e = extension(1, 1);
        let t = irreducible_test(&e).unwrap();
        assert!(!t.irreducible);
        let w = t.witness.unwrap();
        assert_eq!(w, Mat::from_i64(&[&[1], &[0]]));
        assert!(e.is_stable_subspace(&w));

        let sq = standard_rep(1, &Poly::from_i64(&[-2, 0, 1]).pow(2)).unwrap();
        let t = irreducible_test(&sq).unwrap();
        let w = t.witness.unwrap();
        assert_eq!(w.cols(), 2);
        assert!(sq.is_stable_subspace(&w));
    }

    #[test]
    fn shift_law_on_extension() {
        assert!(shift_law_holds(&extension(2, 1)).unwrap());
        assert!(shift_law_holds(&nilpotent_pair()).unwrap());
    }
}
