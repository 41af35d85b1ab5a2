//! The algebra `g_d`, its distinguished subalgebras, and finite-dimensional
//! representations given by explicit matrices.
//!
//! A representation stores the matrices of `X_0, ..., X_d` in a fixed basis.
//! Constructors only check shapes; [`LieRep::validate`] checks the bracket
//! relations and [`LieRep::checked`] refuses invalid data.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{format_rational, linalg, parse_rational, rat, Mat, Poly, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LieAlgebraGd {
    pub d: usize,
}

impl LieAlgebraGd {
    pub fn new(d: usize) -> Self {
        LieAlgebraGd { d }
    }

    pub fn dim(&self) -> usize {
        self.d + 1
    }

    /// `[X_a, X_b]` as `(index, coefficient)`, or `None` when it vanishes.
    pub fn bracket(&self, a: usize, b: usize) -> Option<(usize, i64)> {
        match (a, b) {
            (0, b) if b > 0 => Some((b, 1)),
            (a, 0) if a > 0 => Some((a, -1)),
            _ => None,
        }
    }

    /// Structure constants as a table of `(i, j) -> [X_i, X_j]` coordinates.
    pub fn bracket_table(&self) -> Vec<Vec<Vec<i64>>> {
        let n = self.dim();
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let mut v = vec![0; n];
                        if let Some((k, c)) = self.bracket(a, b) {
                            v[k] = c;
                        }
                        v
                    })
                    .collect()
            })
            .collect()
    }
}

/// `Full` is `g_d`, `Geom` is `span{X_1..X_d}`, `Cycl` is `span{X_0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubalgebraTag {
    Full,
    Geom,
    Cycl,
}

impl SubalgebraTag {
    /// Basis indices of the subalgebra inside `g_d`, increasing.
    pub fn generators(&self, d: usize) -> Vec<usize> {
        match self {
            SubalgebraTag::Full => (0..=d).collect(),
            SubalgebraTag::Geom => (1..=d).collect(),
            SubalgebraTag::Cycl => vec![0],
        }
    }

    pub fn dim(&self, d: usize) -> usize {
        self.generators(d).len()
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "full" | "g" => Ok(SubalgebraTag::Full),
            "geom" => Ok(SubalgebraTag::Geom),
            "cycl" | "arith" => Ok(SubalgebraTag::Cycl),
            _ => Err(Error::Parse(format!("unknown subalgebra {s:?} (expected full, geom or cycl)"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieRep {
    algebra: LieAlgebraGd,
    dim: usize,
    action: Vec<Mat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BracketFailure {
    pub i: usize,
    pub j: usize,
    pub relation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checked: usize,
    pub failures: Vec<BracketFailure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl LieRep {
    pub fn new(d: usize, action: Vec<Mat>) -> Result<Self> {
        if action.len() != d + 1 {
            return Err(Error::Shape(format!("expected {} matrices, got {}", d + 1, action.len())));
        }
        let dim = action[0].rows();
        for (i, m) in action.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Shape(format!("matrix {i} is {}x{}, expected {dim}x{dim}", m.rows(), m.cols())));
            }
        }
        Ok(LieRep { algebra: LieAlgebraGd::new(d), dim, action })
    }

    /// Like [`LieRep::new`] but also rejects data violating the bracket relations.
    pub fn checked(d: usize, action: Vec<Mat>) -> Result<Self> {
        let r = Self::new(d, action)?;
        let report = r.validate();
        if let Some(f) = report.failures.first() {
            return Err(Error::InvalidRep(f.relation.clone()));
        }
        Ok(r)
    }

    pub fn zero_dim(d: usize) -> Self {
        LieRep { algebra: LieAlgebraGd::new(d), dim: 0, action: vec![Mat::zeros(0, 0); d + 1] }
    }

    /// The unit object `K` with trivial action.
    pub fn unit(d: usize) -> Self {
        standard_rep(d, &Poly::x()).expect("X is monic")
    }

    pub fn algebra(&self) -> LieAlgebraGd {
        self.algebra
    }

    pub fn d(&self) -> usize {
        self.algebra.d
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Mat] {
        &self.action
    }

    pub fn x(&self, i: usize) -> &Mat {
        &self.action[i]
    }

    /// Checks `[X_0, X_j] = X_j` and `[X_j, X_k] = 0` for `1 <= j < k <= d`.
    pub fn validate(&self) -> ValidationReport {
        let d = self.d();
        let mut failures = Vec::new();
        let mut checked = 0;
        for j in 1..=d {
            checked += 1;
            if self.action[0].commutator(&self.action[j]) != self.action[j] {
                failures.push(BracketFailure { i: 0, j, relation: format!("[X_0, X_{j}] != X_{j}") });
            }
        }
        for j in 1..=d {
            for k in j + 1..=d {
                checked += 1;
                if !self.action[j].commutator(&self.action[k]).is_zero() {
                    failures.push(BracketFailure { i: j, j: k, relation: format!("[X_{j}, X_{k}] != 0") });
                }
            }
        }
        ValidationReport { checked, failures }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().passed()
    }

    fn same_algebra(&self, other: &LieRep) -> Result<()> {
        if self.d() != other.d() {
            return Err(Error::AlgebraMismatch(self.d(), other.d()));
        }
        Ok(())
    }

    /// Leibniz action `X ⊗ 1 + 1 ⊗ X`; basis `e_a ⊗ f_b` at index `a * dim(b) + b`.
    pub fn tensor(&self, other: &LieRep) -> Result<LieRep> {
        self.same_algebra(other)?;
        let (ia, ib) = (Mat::identity(self.dim), Mat::identity(other.dim));
        let action = self.action.iter().zip(&other.action).map(|(a, b)| &a.kron(&ib) + &ia.kron(b)).collect();
        LieRep::new(self.d(), action)
    }

    /// Contragredient: `X` acts by `-X^T` on the dual basis.
    pub fn dual(&self) -> LieRep {
        let action = self.action.iter().map(|a| -&a.transpose()).collect();
        LieRep { algebra: self.algebra, dim: self.dim, action }
    }

    pub fn direct_sum(&self, other: &LieRep) -> Result<LieRep> {
        self.same_algebra(other)?;
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.block_diag(b)).collect();
        Ok(LieRep { algebra: self.algebra, dim: self.dim + other.dim, action })
    }

    /// `Hom(self, other)` with `(X f) = X_other f - f X_self`.
    ///
    /// The basis vector at index `a * dim(other) + b` is the map sending `e_a`
    /// to `f_b`, which matches `tensor(dual(self), other)` entrywise.
    pub fn hom_rep(&self, other: &LieRep) -> Result<LieRep> {
        self.same_algebra(other)?;
        let (n, m) = (self.dim, other.dim);
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut h = Mat::zeros(n * m, n * m);
                for src_a in 0..n {
                    for src_b in 0..m {
                        let col = src_a * m + src_b;
                        // X_other ∘ E(b <- a): image e_a -> X_other f_b
                        for tb in 0..m {
                            let c = &b[(tb, src_b)];
                            if !c.is_zero() {
                                h[(src_a * m + tb, col)] += c;
                            }
                        }
                        // -E(b <- a) ∘ X_self: e_c -> -X_self[a, c] f_b
                        for tc in 0..n {
                            let c = &a[(src_a, tc)];
                            if !c.is_zero() {
                                h[(tc * m + src_b, col)] -= c;
                            }
                        }
                    }
                }
                h
            })
            .collect();
        LieRep::new(self.d(), action)
    }

    /// Change of basis: the rep whose matrices are `S^{-1} X_i S`.
    pub fn conjugate(&self, s: &Mat) -> Result<LieRep> {
        let s_inv = linalg::inverse(s).ok_or_else(|| Error::Shape("conjugating matrix is singular".into()))?;
        Ok(LieRep { algebra: self.algebra, dim: self.dim, action: self.action.iter().map(|a| a.similar(s, &s_inv)).collect() })
    }

    /// Sub-representation on the column span of `basis` (which must be stable).
    pub fn restrict(&self, basis: &Mat) -> Result<LieRep> {
        if basis.cols() == 0 {
            return Ok(LieRep::zero_dim(self.d()));
        }
        let action = self
            .action
            .iter()
            .map(|a| linalg::restrict(a, basis).ok_or_else(|| Error::InvalidRep("subspace is not g-stable".into())))
            .collect::<Result<Vec<_>>>()?;
        LieRep::new(self.d(), action)
    }

    /// Whether the column span of `basis` is stable under every `X_i`.
    pub fn is_stable_subspace(&self, basis: &Mat) -> bool {
        basis.cols() == 0 || self.action.iter().all(|a| linalg::restrict(a, basis).is_some())
    }

    pub fn to_file(&self, label: Option<String>) -> RepFile {
        RepFile {
            d: self.d(),
            dim: self.dim,
            matrices: self
                .action
                .iter()
                .map(|m| (0..m.rows()).map(|i| m.row(i).iter().map(format_rational).collect()).collect())
                .collect(),
            label,
        }
    }
}

/// `K[X_0]/p(X_0)`: `X_0` acts by the companion matrix of `p`, every `X_j` by zero.
pub fn standard_rep(d: usize, p: &Poly) -> Result<LieRep> {
    let c = p.companion()?;
    let n = c.rows();
    let mut action = vec![c];
    action.extend((0..d).map(|_| Mat::zeros(n, n)));
    LieRep::new(d, action)
}

/// `K[X_0]/(X_0 - n)`, the 1-dimensional rep on which `X_0` acts by `n`.
pub fn character(d: usize, n: Rational) -> LieRep {
    standard_rep(d, &Poly::linear(n)).expect("linear monic")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    pub source: LieRep,
    pub target: LieRep,
    pub matrix: Mat,
}

impl RepMorphism {
    pub fn new(source: LieRep, target: LieRep, matrix: Mat) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Shape(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.dim(),
                source.dim()
            )));
        }
        let m = RepMorphism { source, target, matrix };
        if !m.intertwines() {
            return Err(Error::InvalidRep("matrix does not intertwine the actions".into()));
        }
        Ok(m)
    }

    pub fn intertwines(&self) -> bool {
        self.source
            .action()
            .iter()
            .zip(self.target.action())
            .all(|(a, b)| &self.matrix * a == b * &self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        linalg::rank(&self.matrix) == self.source.dim()
    }
}

/// Basis of `Hom_g(a, b)` as `dim(b) x dim(a)` matrices.
pub fn hom_space(a: &LieRep, b: &LieRep) -> Result<Vec<Mat>> {
    let h = a.hom_rep(b)?;
    let (n, m) = (a.dim(), b.dim());
    let stacked = h.action().iter().fold(Mat::zeros(0, n * m), |acc, x| {
        let mut s = Mat::zeros(acc.rows() + x.rows(), n * m);
        s.set_block(0, 0, &acc);
        s.set_block(acc.rows(), 0, x);
        s
    });
    Ok(linalg::kernel(&stacked)
        .into_iter()
        .map(|v| {
            let mut f = Mat::zeros(m, n);
            for ia in 0..n {
                for ib in 0..m {
                    f[(ib, ia)] = v[ia * m + ib].clone();
                }
            }
            f
        })
        .collect())
}

/// An invertible intertwiner `a -> b` if one exists (searched by seeded random combinations of a Hom basis).
pub fn find_isomorphism(a: &LieRep, b: &LieRep) -> Result<Option<Mat>> {
    if a.dim() != b.dim() {
        return Ok(None);
    }
    if a.dim() == 0 {
        return Ok(Some(Mat::zeros(0, 0)));
    }
    let basis = hom_space(a, b)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x15_0c0de);
    for attempt in 0..32 {
        let mut f = Mat::zeros(b.dim(), a.dim());
        for (k, m) in basis.iter().enumerate() {
            let c = if attempt == 0 { rat(k as i64 + 1) } else { rat(rng.gen_range(-20..=20)) };
            f = &f + &m.scale(&c);
        }
        if linalg::rank(&f) == a.dim() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// On-disk form: `{ "d": int, "dim": int, "matrices": [[["num/den", ...], ...], ...] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepFile {
    pub d: usize,
    pub dim: usize,
    pub matrices: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl RepFile {
    /// Converts to a validated rep; errors name the offending field as `matrices[i][r][c]`.
    pub fn to_rep(&self) -> Result<LieRep> {
        if self.matrices.len() != self.d + 1 {
            return Err(Error::Parse(format!("matrices: expected {} matrices (d + 1), found {}", self.d + 1, self.matrices.len())));
        }
        let mut action = Vec::with_capacity(self.d + 1);
        for (i, m) in self.matrices.iter().enumerate() {
            if m.len() != self.dim {
                return Err(Error::Parse(format!("matrices[{i}]: expected {} rows, found {}", self.dim, m.len())));
            }
            let mut mat = Mat::zeros(self.dim, self.dim);
            for (r, row) in m.iter().enumerate() {
                if row.len() != self.dim {
                    return Err(Error::Parse(format!("matrices[{i}][{r}]: expected {} entries, found {}", self.dim, row.len())));
                }
                for (c, s) in row.iter().enumerate() {
                    mat[(r, c)] = parse_rational(s).map_err(|e| {
                        let msg = match e {
                            Error::Parse(m) => m,
                            other => other.to_string(),
                        };
                        Error::Parse(format!("matrices[{i}][{r}][{c}]: {msg}"))
                    })?;
                }
            }
            action.push(mat);
        }
        if self.dim == 0 {
            return Ok(LieRep::zero_dim(self.d));
        }
        LieRep::checked(self.d, action)
    }
}

/// The matrix unit `E_ij` of size `n`.
pub fn unit_matrix(n: usize, i: usize, j: usize) -> Mat {
    let mut m = Mat::zeros(n, n);
    m[(i, j)] = Rational::one();
    m
}
