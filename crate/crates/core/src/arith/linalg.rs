//! Exact elimination over the rationals.
//!
//! Two independent routes are provided: Gauss–Jordan reduction over `Q`
//! ([`rank_kernel`]) and fraction-free Bareiss elimination on an integer
//! rescaling followed by back substitution ([`bareiss_rank_kernel`]). Both
//! return the kernel in the same canonical form: one vector per free column
//! (left to right), with a 1 in that column and 0 in every other free column.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Mat, Poly, Rational};

/// Reduced row echelon form; returns the reduced matrix and its pivot columns.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                let delta = &f * &a[(r, j)];
                a[(i, j)] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Mat) -> usize {
    rref(m).1.len()
}

/// Rank and a canonical kernel basis (column vectors).
pub fn rank_kernel(m: &Mat) -> (usize, Vec<Vec<Rational>>) {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![None; cols];
    for (row, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(row);
    }
    let kernel = (0..cols)
        .filter(|&f| is_pivot[f].is_none())
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = -r[(row, f)].clone();
            }
            v
        })
        .collect();
    (pivots.len(), kernel)
}

pub fn kernel(m: &Mat) -> Vec<Vec<Rational>> {
    rank_kernel(m).1
}

fn lcm_of_denominators(row: &[Rational]) -> BigInt {
    row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Fraction-free route: scale rows to integers, run Bareiss elimination,
/// then recover the canonical kernel by back substitution.
pub fn bareiss_rank_kernel(m: &Mat) -> (usize, Vec<Vec<Rational>>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row = m.row(i);
            let l = lcm_of_denominators(row);
            row.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                debug_assert!((&v % &prev).is_zero());
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    let pivot_set: Vec<bool> = (0..cols).map(|c| pivots.contains(&c)).collect();
    let kernel = (0..cols)
        .filter(|&f| !pivot_set[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &c) in pivots.iter().enumerate().rev() {
                let mut s = Rational::zero();
                for j in c + 1..cols {
                    if !a[row][j].is_zero() && !v[j].is_zero() {
                        s += Rational::from_integer(a[row][j].clone()) * &v[j];
                    }
                }
                v[c] = -s / Rational::from_integer(a[row][c].clone());
            }
            v
        })
        .collect();
    (pivots.len(), kernel)
}

/// Solve `m x = b`; `None` when inconsistent. Free variables are set to zero.
pub fn solve(m: &Mat, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(m.rows(), b.len());
    let aug = m.hstack(&Mat::column_vector(b));
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols()];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = r[(row, m.cols())].clone();
    }
    Some(x)
}

pub fn inverse(m: &Mat) -> Option<Mat> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let (r, pivots) = rref(&m.hstack(&Mat::identity(n)));
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.block(0, n, n, n))
}

/// Indices of a maximal linearly independent subset of the columns, chosen greedily left to right.
pub fn independent_columns(m: &Mat) -> Vec<usize> {
    rref(m).1
}

/// Basis of the column space (the pivot columns of `m` itself).
pub fn column_space(m: &Mat) -> Vec<Vec<Rational>> {
    independent_columns(m).into_iter().map(|j| m.column(j)).collect()
}

/// Rank of a list of vectors of common length `n`.
pub fn rank_of_vectors(n: usize, vs: &[Vec<Rational>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    rank(&Mat::from_columns(n, vs))
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(n: usize, basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    rank_of_vectors(n, basis) == {
        let mut all = basis.to_vec();
        all.push(v.to_vec());
        rank_of_vectors(n, &all)
    }
}

/// Characteristic polynomial `det(X I - m)` by the Faddeev–LeVerrier recursion.
pub fn charpoly(m: &Mat) -> Poly {
    assert!(m.is_square());
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = Mat::zeros(n, n);
    for k in 1..=n {
        let shifted = &mk + &Mat::scalar(n, &coeffs[n + 1 - k]);
        mk = m * &shifted;
        let c = -mk.trace() / Rational::from_integer(BigInt::from(k));
        coeffs[n - k] = c;
    }
    Poly::new(coeffs)
}

/// Matrix of the restriction of `m` to the `m`-stable column span of `basis`:
/// the unique `r` with `basis · r = m · basis`. `None` if the span is not stable.
pub fn restrict(m: &Mat, basis: &Mat) -> Option<Mat> {
    let k = basis.cols();
    let image = m * basis;
    let mut r = Mat::zeros(k, k);
    for j in 0..k {
        let x = solve(basis, &image.column(j))?;
        for (i, xi) in x.into_iter().enumerate() {
            r[(i, j)] = xi;
        }
    }
    Some(r)
}

/// Extend the independent columns of `partial` to a basis of `Q^n` with standard vectors.
pub fn complete_basis(n: usize, partial: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut out = partial.to_vec();
    for i in 0..n {
        if out.len() == n {
            break;
        }
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        if !in_span(n, &out, &e) {
            out.push(e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, rat};

    #[test]
    fn identity_has_trivial_kernel() {
        let (r, k) = rank_kernel(&Mat::identity(2));
        assert_eq!(r, 2);
        assert!(k.is_empty());
    }

    #[test]
    fn zero_map_kernel_is_standard_basis() {
        let (r, k) = rank_kernel(&Mat::zeros(2, 2));
        assert_eq!(r, 0);
        assert_eq!(k, vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]]);
    }

    #[test]
    fn rank_one_example_both_routes() {
        let m = Mat::from_i64(&[&[1, 2], &[2, 4]]);
        let expected = (1, vec![vec![rat(-2), rat(1)]]);
        assert_eq!(rank_kernel(&m), expected);
        assert_eq!(bareiss_rank_kernel(&m), expected);
        assert!(m.mul_vec(&expected.1[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn bareiss_handles_fractions() {
        let m = Mat::from_rows(vec![
            vec![frac(1, 2), frac(1, 3), rat(1)],
            vec![rat(1), frac(2, 3), rat(2)],
        ]);
        assert_eq!(rank_kernel(&m), bareiss_rank_kernel(&m));
        assert_eq!(rank_kernel(&m).0, 1);
    }

    #[test]
    fn inverse_and_solve() {
        let m = Mat::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(&m * &inv, Mat::identity(2));
        assert!(inverse(&Mat::from_i64(&[&[1, 2], &[2, 4]])).is_none());
        assert_eq!(solve(&m, &[rat(3), rat(2)]), Some(vec![rat(1), rat(1)]));
        assert_eq!(solve(&Mat::from_i64(&[&[1, 1], &[1, 1]]), &[rat(1), rat(2)]), None);
    }

    #[test]
    fn charpoly_companion() {
        // [[0,2],[1,0]] has char poly X^2 - 2
        let m = Mat::from_i64(&[&[0, 2], &[1, 0]]);
        assert_eq!(charpoly(&m), Poly::from_i64(&[-2, 0, 1]));
        assert_eq!(charpoly(&Mat::zeros(0, 0)), Poly::one());
    }

    #[test]
    fn restriction_to_invariant_subspace() {
        let m = Mat::from_i64(&[&[1, 1], &[0, 2]]);
        let b = Mat::from_i64(&[&[1], &[0]]);
        assert_eq!(restrict(&m, &b), Some(Mat::from_i64(&[&[1]])));
        assert_eq!(restrict(&m, &Mat::from_i64(&[&[0], &[1]])), None);
    }
}
