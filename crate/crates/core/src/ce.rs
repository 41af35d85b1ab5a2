//! Chevalley–Eilenberg cochains `Hom(∧^q h, V)` for `h` one of the tagged
//! subalgebras of `g_d`, their differentials, cohomology, derivations and the
//! shuffle cup product.
//!
//! A degree-`q` cochain is stored as a `dim V x C(m, q)` matrix whose columns
//! are the values on the wedges `X_{i_1} ∧ ... ∧ X_{i_q}` (`i_1 < ... < i_q`,
//! lexicographic). Flattened, the value on wedge `c` occupies coordinates
//! `c * dim V .. (c + 1) * dim V`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{binomial, binomial_signed, linalg, rat, Mat, Poly, Rational};
use crate::error::{Error, Result};
use crate::lie::{character, standard_rep, LieRep, SubalgebraTag};
use crate::par::{self, Parallelism};

/// Lexicographic `q`-subsets of `0..m`.
pub fn wedges(m: usize, q: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, q, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if q <= m {
        go(0, m, q, &mut Vec::new(), &mut out);
    }
    out
}

fn wedge_index(m: usize, q: usize) -> HashMap<Vec<usize>, usize> {
    wedges(m, q).into_iter().enumerate().map(|(i, w)| (w, i)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub rep: LieRep,
    pub sub: SubalgebraTag,
    pub degree: usize,
    pub coeffs: Mat,
}

impl Cochain {
    pub fn new(rep: LieRep, sub: SubalgebraTag, degree: usize, coeffs: Mat) -> Result<Self> {
        let m = sub.dim(rep.d());
        let cols = binomial(m, degree);
        if coeffs.rows() != rep.dim() || coeffs.cols() != cols {
            return Err(Error::Shape(format!(
                "degree-{degree} cochain needs a {}x{cols} coefficient matrix, got {}x{}",
                rep.dim(),
                coeffs.rows(),
                coeffs.cols()
            )));
        }
        Ok(Cochain { rep, sub, degree, coeffs })
    }

    pub fn zero(rep: LieRep, sub: SubalgebraTag, degree: usize) -> Self {
        let cols = binomial(sub.dim(rep.d()), degree);
        let n = rep.dim();
        Cochain { rep, sub, degree, coeffs: Mat::zeros(n, cols) }
    }

    pub fn from_vector(rep: LieRep, sub: SubalgebraTag, degree: usize, v: &[Rational]) -> Result<Self> {
        let n = rep.dim();
        let cols = binomial(sub.dim(rep.d()), degree);
        if v.len() != n * cols {
            return Err(Error::Shape(format!("vector of length {} for {cols} wedges of dimension {n}", v.len())));
        }
        let mut coeffs = Mat::zeros(n, cols);
        for c in 0..cols {
            for r in 0..n {
                coeffs[(r, c)] = v[c * n + r].clone();
            }
        }
        Ok(Cochain { rep, sub, degree, coeffs })
    }

    pub fn to_vector(&self) -> Vec<Rational> {
        let n = self.rep.dim();
        let mut v = Vec::with_capacity(n * self.coeffs.cols());
        for c in 0..self.coeffs.cols() {
            for r in 0..n {
                v.push(self.coeffs[(r, c)].clone());
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Value on the wedge of subalgebra positions `w` (any order; repeated positions give zero).
    pub fn value(&self, w: &[usize]) -> Vec<Rational> {
        let n = self.rep.dim();
        let Some((sorted, sign)) = sort_with_sign(w) else {
            return vec![Rational::zero(); n];
        };
        let m = self.sub.dim(self.rep.d());
        let idx = wedge_index(m, self.degree)[&sorted];
        self.coeffs.column(idx).into_iter().map(|x| x * rat(sign)).collect()
    }

    pub fn differential(&self) -> Result<Cochain> {
        let dm = ce_differential(&self.rep, self.sub, self.degree)?;
        Cochain::from_vector(self.rep.clone(), self.sub, self.degree + 1, &dm.mul_vec(&self.to_vector()))
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        Cochain { coeffs: &self.coeffs + &other.coeffs, ..self.clone() }
    }

    pub fn scale(&self, s: &Rational) -> Cochain {
        Cochain { coeffs: self.coeffs.scale(s), ..self.clone() }
    }
}

/// Sorts distinct positions and reports the permutation sign; `None` on a repeat.
fn sort_with_sign(w: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = w.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((v, sign))
}

/// Matrix of `d^q: Hom(∧^q h, V) -> Hom(∧^{q+1} h, V)` in the flattened wedge bases.
pub fn ce_differential(rep: &LieRep, sub: SubalgebraTag, q: usize) -> Result<Mat> {
    let d = rep.d();
    let gens = sub.generators(d);
    let m = gens.len();
    if q > m {
        return Err(Error::DegreeOutOfRange { q, dim: m });
    }
    let n = rep.dim();
    let algebra = rep.algebra();
    let mut pos_of = vec![None; d + 1];
    for (p, &g) in gens.iter().enumerate() {
        pos_of[g] = Some(p);
    }
    let src = wedge_index(m, q);
    let targets = wedges(m, q + 1);
    let mut dm = Mat::zeros(n * targets.len(), n * src.len());
    let ident = Mat::identity(n);
    for (t, w) in targets.iter().enumerate() {
        // action terms: sum_i (-1)^{i+1} X_{w_i} f(... ^X_{w_i} ...)
        for i in 0..w.len() {
            let mut rest = w.clone();
            rest.remove(i);
            let s = src[&rest];
            let sign = if i % 2 == 0 { rat(1) } else { rat(-1) };
            dm.add_block(t * n, s * n, rep.x(gens[w[i]]), &sign);
        }
        // bracket terms: sum_{i<j} (-1)^{i+j} f([X_{w_i}, X_{w_j}] ^ ...)
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                let Some((k, c)) = algebra.bracket(gens[w[i]], gens[w[j]]) else {
                    continue;
                };
                let kp = pos_of[k].expect("subalgebra is closed under the bracket");
                let mut rest: Vec<usize> = w.clone();
                rest.remove(j);
                rest.remove(i);
                let mut wedge = vec![kp];
                wedge.extend(rest);
                let Some((sorted, perm)) = sort_with_sign(&wedge) else {
                    continue;
                };
                let s = src[&sorted];
                // 1-based exponent i+j equals 0-based (i+1)+(j+1)
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                dm.add_block(t * n, s * n, &ident, &rat(sign * c * perm));
            }
        }
    }
    Ok(dm)
}

#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub dims: Vec<usize>,
    pub cocycle_bases: Vec<Vec<Cochain>>,
}

impl CohomologyReport {
    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(q, &h)| if q % 2 == 0 { h as i64 } else { -(h as i64) }).sum()
    }
}

/// Per-degree data of the complex: differentials, cocycle bases, coboundary spans.
struct Complex {
    n: usize,
    diffs: Vec<Mat>,
}

impl Complex {
    fn new(rep: &LieRep, sub: SubalgebraTag) -> Result<Self> {
        let m = sub.dim(rep.d());
        let diffs = (0..=m).map(|q| ce_differential(rep, sub, q)).collect::<Result<Vec<_>>>()?;
        Ok(Complex { n: rep.dim(), diffs })
    }

    fn coboundaries(&self, q: usize) -> Vec<Vec<Rational>> {
        if q == 0 {
            Vec::new()
        } else {
            linalg::column_space(&self.diffs[q - 1])
        }
    }

    fn space_dim(&self, q: usize) -> usize {
        self.diffs[q].cols()
    }
}

pub fn cohomology(rep: &LieRep, sub: SubalgebraTag) -> Result<CohomologyReport> {
    let cx = Complex::new(rep, sub)?;
    let m = sub.dim(rep.d());
    let mut dims = Vec::with_capacity(m + 1);
    let mut bases = Vec::with_capacity(m + 1);
    for q in 0..=m {
        let len = cx.space_dim(q);
        let cocycles = linalg::kernel(&cx.diffs[q]);
        let mut span = cx.coboundaries(q);
        let boundary_rank = span.len();
        let mut reps = Vec::new();
        let mut r = boundary_rank;
        for z in cocycles {
            span.push(z.clone());
            let r2 = linalg::rank_of_vectors(len, &span);
            if r2 > r {
                r = r2;
                reps.push(Cochain::from_vector(rep.clone(), sub, q, &z)?);
            } else {
                span.pop();
            }
        }
        debug_assert_eq!(reps.len() + boundary_rank, r);
        let _ = cx.n;
        dims.push(reps.len());
        bases.push(reps);
    }
    Ok(CohomologyReport { dims, cocycle_bases: bases })
}

pub fn cohomology_dims(rep: &LieRep, sub: SubalgebraTag) -> Result<Vec<usize>> {
    let cx = Complex::new(rep, sub)?;
    let m = sub.dim(rep.d());
    Ok((0..=m)
        .map(|q| {
            let z = cx.space_dim(q) - linalg::rank(&cx.diffs[q]);
            let b = if q == 0 { 0 } else { linalg::rank(&cx.diffs[q - 1]) };
            z - b
        })
        .collect())
}

/// Rank of the classes of `cochains` (all of one degree, cocycles) in `H^q`.
pub fn class_rank(cochains: &[Cochain]) -> Result<usize> {
    let Some(first) = cochains.first() else {
        return Ok(0);
    };
    let q = first.degree;
    let cx = Complex::new(&first.rep, first.sub)?;
    let len = cx.space_dim(q);
    let mut span = cx.coboundaries(q);
    let base = span.len();
    span.extend(cochains.iter().map(Cochain::to_vector));
    Ok(linalg::rank_of_vectors(len, &span) - base)
}

pub fn is_cocycle(c: &Cochain) -> Result<bool> {
    Ok(c.differential()?.is_zero())
}

pub fn is_coboundary(c: &Cochain) -> Result<bool> {
    if c.degree == 0 {
        return Ok(c.is_zero());
    }
    let dm = ce_differential(&c.rep, c.sub, c.degree - 1)?;
    Ok(linalg::solve(&dm, &c.to_vector()).is_some())
}

/// Basis of `Der(h, V)`, the 1-cocycles.
pub fn derivations(rep: &LieRep, sub: SubalgebraTag) -> Result<Vec<Cochain>> {
    let m = sub.dim(rep.d());
    if m == 0 {
        return Ok(Vec::new());
    }
    let d1 = ce_differential(rep, sub, 1)?;
    linalg::kernel(&d1).into_iter().map(|v| Cochain::from_vector(rep.clone(), sub, 1, &v)).collect()
}

/// Checks `δ([X, X']) = X δ(X') - X' δ(X)` on every pair of subalgebra generators.
pub fn is_derivation(c: &Cochain) -> bool {
    if c.degree != 1 {
        return false;
    }
    let d = c.rep.d();
    let gens = c.sub.generators(d);
    let algebra = c.rep.algebra();
    for (a, &ga) in gens.iter().enumerate() {
        for (b, &gb) in gens.iter().enumerate() {
            let lhs = match algebra.bracket(ga, gb) {
                Some((k, coef)) => {
                    let kp = gens.iter().position(|&g| g == k).expect("closed");
                    c.value(&[kp]).into_iter().map(|x| x * rat(coef)).collect::<Vec<_>>()
                }
                None => vec![Rational::zero(); c.rep.dim()],
            };
            let xa = c.rep.x(ga).mul_vec(&c.value(&[b]));
            let xb = c.rep.x(gb).mul_vec(&c.value(&[a]));
            let rhs: Vec<Rational> = xa.iter().zip(&xb).map(|(u, v)| u - v).collect();
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Shuffle cup product with values in `f.rep ⊗ g.rep`:
/// `(f ∪ g)(x_1..x_{p+q}) = Σ_σ sgn(σ) f(x_σ(1..p)) ⊗ g(x_σ(p+1..p+q))` over `(p, q)`-shuffles.
pub fn cup(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    if f.sub != g.sub {
        return Err(Error::Shape("cup product of cochains on different subalgebras".into()));
    }
    let rep = f.rep.tensor(&g.rep)?;
    let m = f.sub.dim(rep.d());
    let (p, q) = (f.degree, g.degree);
    let deg = p + q;
    if deg > m {
        return Ok(Cochain { rep: rep.clone(), sub: f.sub, degree: deg, coeffs: Mat::zeros(rep.dim(), 0) });
    }
    let (nf, ng) = (f.rep.dim(), g.rep.dim());
    let targets = wedges(m, deg);
    let mut coeffs = Mat::zeros(nf * ng, targets.len());
    let f_idx = wedge_index(m, p);
    let g_idx = wedge_index(m, q);
    for (t, w) in targets.iter().enumerate() {
        for s in wedges(deg, p) {
            let comp: Vec<usize> = (0..deg).filter(|i| !s.contains(i)).collect();
            let inversions: usize = s.iter().enumerate().map(|(i, &si)| si - i).sum();
            let sign = if inversions % 2 == 0 { rat(1) } else { rat(-1) };
            let wf: Vec<usize> = s.iter().map(|&i| w[i]).collect();
            let wg: Vec<usize> = comp.iter().map(|&i| w[i]).collect();
            let fv = f.coeffs.column(f_idx[&wf]);
            let gv = g.coeffs.column(g_idx[&wg]);
            for (a, x) in fv.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (b, y) in gv.iter().enumerate() {
                    if !y.is_zero() {
                        coeffs[(a * ng + b, t)] += &sign * x * y;
                    }
                }
            }
        }
    }
    Cochain::new(rep, f.sub, deg, coeffs)
}

/// `δ_0: g_d -> K`, `X_0 ↦ 1`, `X_j ↦ 0`.
pub fn delta0(d: usize) -> Cochain {
    let rep = LieRep::unit(d);
    let mut coeffs = Mat::zeros(1, d + 1);
    coeffs[(0, 0)] = Rational::one();
    Cochain::new(rep, SubalgebraTag::Full, 1, coeffs).expect("shape")
}

/// `δ_j: g_d -> K[X_0]/(X_0 - 1)`, `X_j ↦ 1`, other generators to 0.
pub fn delta_j(d: usize, j: usize) -> Cochain {
    assert!((1..=d).contains(&j));
    let rep = character(d, rat(1));
    let mut coeffs = Mat::zeros(1, d + 1);
    coeffs[(0, j)] = Rational::one();
    Cochain::new(rep, SubalgebraTag::Full, 1, coeffs).expect("shape")
}

/// Iterated cup product, left to right.
pub fn cup_all(cs: &[Cochain]) -> Result<Cochain> {
    let (first, rest) = cs.split_first().ok_or_else(|| Error::Shape("empty cup product".into()))?;
    rest.iter().try_fold(first.clone(), |acc, c| cup(&acc, c))
}

#[derive(Clone, Debug, Serialize)]
pub struct CalCell {
    pub alpha: String,
    pub q: usize,
    pub computed: usize,
    pub expected: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CalTable {
    pub d: usize,
    pub cells: Vec<CalCell>,
}

impl CalTable {
    pub fn passed(&self) -> bool {
        self.cells.iter().all(|c| c.pass)
    }

    /// Rows are `alpha`, columns `q = 0..`.
    pub fn to_csv(&self) -> String {
        let qmax = self.cells.iter().map(|c| c.q).max().unwrap_or(0);
        let mut out = String::from("alpha");
        for q in 0..=qmax {
            out.push_str(&format!(",q{q}"));
        }
        out.push('\n');
        let mut seen: Vec<&str> = Vec::new();
        for c in &self.cells {
            if !seen.contains(&c.alpha.as_str()) {
                seen.push(&c.alpha);
            }
        }
        for a in seen {
            out.push_str(&format!("\"{a}\""));
            for q in 0..=qmax {
                let v = self.cells.iter().find(|c| c.alpha == a && c.q == q).map_or(0, |c| c.computed);
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Closed form for `dim H^q(g_d, K[X_0]/P(X_0))`, `P` monic irreducible:
/// `C(d, n)` when `P = X - n` with `n` an integer and `q ∈ {n, n+1}`, else 0.
pub fn expected_dim(d: usize, alpha: &Poly, q: usize) -> usize {
    match alpha.as_linear_root() {
        Some(r) if r.is_integer() => {
            let n: i64 = r.to_integer().try_into().unwrap_or(i64::MAX);
            if q as i64 == n || q as i64 == n + 1 {
                binomial_signed(d, n)
            } else {
                0
            }
        }
        _ => 0,
    }
}

/// Computes `dim H^q(g_d, K[X_0]/P_α(X_0))` for `q = 0..=qmax` and compares with the closed form.
pub fn verify_cal_table(d: usize, alphas: &[Poly], qmax: usize, mode: Parallelism) -> Result<CalTable> {
    let rows = par::map(mode, alphas, |alpha| -> Result<Vec<CalCell>> {
        let rep = standard_rep(d, alpha)?;
        let dims = cohomology_dims(&rep, SubalgebraTag::Full)?;
        Ok((0..=qmax)
            .map(|q| {
                let computed = dims.get(q).copied().unwrap_or(0);
                let expected = expected_dim(d, alpha, q);
                CalCell { alpha: alpha.pretty(), q, computed, expected, pass: computed == expected }
            })
            .collect())
    });
    let mut cells = Vec::new();
    for r in rows {
        cells.extend(r?);
    }
    Ok(CalTable { d, cells })
}
