//! Seeded generators of valid representations, change-of-basis matrices and
//! cochains for the randomized checks.
//!
//! Representations are assembled from blocks that satisfy the bracket
//! relations by construction, then hidden behind a random change of basis.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{binomial, frac, rat, Mat, Poly, Rational};
use crate::ce::Cochain;
use crate::lie::{standard_rep, LieRep, SubalgebraTag};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int(rng: &mut SeededRng, bound: i64) -> Rational {
    rat(rng.gen_range(-bound..=bound))
}

/// Small integers most of the time, occasionally a half or a third.
pub fn small_rational(rng: &mut SeededRng) -> Rational {
    match rng.gen_range(0..6) {
        0 => frac(rng.gen_range(-3..=3), 2),
        1 => frac(rng.gen_range(-2..=2), 3),
        _ => small_int(rng, 3),
    }
}

/// Product of random unit lower and upper triangular integer matrices, hence invertible.
pub fn random_invertible(rng: &mut SeededRng, n: usize) -> Mat {
    let mut l = Mat::identity(n);
    let mut u = Mat::identity(n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = small_int(rng, 2);
            u[(j, i)] = small_int(rng, 2);
        }
    }
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    let mut perm = Mat::zeros(n, n);
    for (i, &j) in p.iter().enumerate() {
        perm[(i, j)] = rat(1);
    }
    &(&l * &u) * &perm
}

fn weight(rng: &mut SeededRng) -> Rational {
    const W: [(i64, i64); 9] = [(-2, 1), (-1, 1), (0, 1), (1, 1), (2, 1), (0, 1), (1, 1), (1, 2), (-1, 3)];
    let (n, d) = *W.choose(rng).unwrap();
    frac(n, d)
}

const IRREDUCIBLE_QUADRATICS: [[i64; 3]; 4] = [[-2, 0, 1], [1, 0, 1], [-1, -1, 1], [1, 1, 1]];

/// One indecomposable-ish building block of dimension at most `budget`.
fn block(rng: &mut SeededRng, d: usize, budget: usize) -> LieRep {
    let kind = if budget >= 2 { rng.gen_range(0..4) } else { 2 };
    match kind {
        // two weight spaces λ, λ+1 with arbitrary X_j between them
        0 => {
            let a = rng.gen_range(1..budget);
            let b = rng.gen_range(1..=budget - a);
            let n = a + b;
            let lambda = weight(rng);
            let mut x0 = Mat::zeros(n, n);
            for i in 0..n {
                x0[(i, i)] = if i < a { lambda.clone() } else { &lambda + rat(1) };
            }
            let mut action = vec![x0];
            for _ in 0..d {
                let mut x = Mat::zeros(n, n);
                if rng.gen_bool(0.8) {
                    for i in a..n {
                        for j in 0..a {
                            x[(i, j)] = small_int(rng, 2);
                        }
                    }
                }
                action.push(x);
            }
            LieRep::new(d, action).expect("shape")
        }
        // a chain of weights λ, λ+1, ..., λ+k-1 with X_j = a_j · shift
        1 => {
            let k = rng.gen_range(2..=budget.min(4));
            let lambda = weight(rng);
            let mut x0 = Mat::zeros(k, k);
            let mut shift = Mat::zeros(k, k);
            for i in 0..k {
                x0[(i, i)] = &lambda + rat(i as i64);
                if i + 1 < k {
                    shift[(i + 1, i)] = rat(1);
                }
            }
            let mut action = vec![x0];
            for _ in 0..d {
                action.push(shift.scale(&small_int(rng, 2)));
            }
            LieRep::new(d, action).expect("shape")
        }
        // λ + nilpotent, geometric part zero
        2 => {
            let k = rng.gen_range(1..=budget.min(3));
            let lambda = weight(rng);
            let mut x0 = Mat::scalar(k, &lambda);
            for i in 0..k {
                for j in 0..i {
                    x0[(i, j)] = small_int(rng, 1);
                }
            }
            let mut action = vec![x0];
            action.extend((0..d).map(|_| Mat::zeros(k, k)));
            LieRep::new(d, action).expect("shape")
        }
        // an irreducible quadratic factor
        _ => {
            let q = IRREDUCIBLE_QUADRATICS.choose(rng).unwrap();
            standard_rep(d, &Poly::from_i64(q)).expect("monic")
        }
    }
}

/// A valid rep of `g_d` of dimension `1..=max_dim`, in a random basis.
pub fn random_valid_rep(rng: &mut SeededRng, d: usize, max_dim: usize) -> LieRep {
    assert!(max_dim >= 1);
    let target = rng.gen_range(1..=max_dim);
    let mut rep = LieRep::zero_dim(d);
    while rep.dim() < target {
        let budget = target - rep.dim();
        let b = if budget >= 4 && rng.gen_bool(0.2) {
            // a tensor product of two small blocks
            let x = block(rng, d, 2);
            let y = block(rng, d, budget / x.dim());
            x.tensor(&y).expect("same algebra")
        } else {
            block(rng, d, budget)
        };
        rep = rep.direct_sum(&b).expect("same algebra");
    }
    let s = random_invertible(rng, rep.dim());
    let out = rep.conjugate(&s).expect("invertible");
    debug_assert!(out.is_valid());
    out
}

/// Random block sizes with sum at most `max_total` and the rep `⊕ K[X_0]/X_0^{r_i}` (not conjugated).
pub fn random_unipotent_sum(rng: &mut SeededRng, d: usize, max_total: usize) -> (Vec<usize>, LieRep) {
    let total = rng.gen_range(1..=max_total);
    let mut sizes = Vec::new();
    let mut left = total;
    while left > 0 {
        let r = rng.gen_range(1..=left);
        sizes.push(r);
        left -= r;
    }
    let mut rep = LieRep::zero_dim(d);
    for &r in &sizes {
        let mut p = vec![0i64; r + 1];
        p[r] = 1;
        rep = rep.direct_sum(&standard_rep(d, &Poly::from_i64(&p)).expect("monic")).expect("same algebra");
    }
    (sizes, rep)
}

pub fn random_cochain(rng: &mut SeededRng, rep: &LieRep, sub: SubalgebraTag, q: usize) -> Cochain {
    let cols = binomial(sub.dim(rep.d()), q);
    let mut coeffs = Mat::zeros(rep.dim(), cols);
    for i in 0..rep.dim() {
        for j in 0..cols {
            coeffs[(i, j)] = small_int(rng, 3);
        }
    }
    Cochain::new(rep.clone(), sub, q, coeffs).expect("shape")
}

/// A random intertwiner `a -> b` drawn from the span of a Hom basis.
pub fn random_intertwiner(rng: &mut SeededRng, basis: &[Mat], rows: usize, cols: usize) -> Mat {
    basis.iter().fold(Mat::zeros(rows, cols), |acc, m| &acc + &m.scale(&small_int(rng, 3)))
}
