use liecoh::arith::{factor_rationals, linalg, rat, Mat, Poly, Rational};
use proptest::prelude::*;

fn mat_strategy(max: usize) -> impl Strategy<Value = Mat> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        // low-rank-prone entries: mostly small, many zeros
        prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], r * c).prop_map(move |v| {
            Mat::from_vec(r, c, v.into_iter().map(rat).collect()).unwrap()
        })
    })
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-4i64..=4, 1..6).prop_map(|c| Poly::from_i64(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn row_rank_is_column_rank(m in mat_strategy(12)) {
        prop_assert_eq!(linalg::rank(&m), linalg::rank(&m.transpose()));
    }

    #[test]
    fn gauss_and_bareiss_agree(m in mat_strategy(12)) {
        let (r1, k1) = linalg::rank_kernel(&m);
        let (r2, k2) = linalg::bareiss_rank_kernel(&m);
        prop_assert_eq!(r1, r2);
        prop_assert_eq!(k1.len(), m.cols() - r1);
        prop_assert_eq!(linalg::rank_of_vectors(m.cols(), &k1), k1.len());
        for v in k1.iter().chain(&k2) {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == Rational::from_integer(0.into())));
        }
        // same kernel: each basis lies in the span of the other
        for v in &k2 {
            prop_assert!(linalg::in_span(m.cols(), &k1, v));
        }
    }

    #[test]
    fn bezout(a in poly_strategy(), b in poly_strategy()) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let (g, s, t) = a.xgcd(&b);
        prop_assert_eq!(&(&s * &a) + &(&t * &b), g.clone());
        prop_assert!(g.divides(&a) && g.divides(&b));
        prop_assert_eq!(g.clone(), a.gcd(&b));
    }

    #[test]
    fn factorization_multiplies_back(a in poly_strategy()) {
        prop_assume!(a.deg() >= 1);
        let f = factor_rationals(&a).unwrap();
        let prod = f.iter().fold(Poly::one(), |acc, (p, m)| &acc * &p.pow(*m));
        prop_assert_eq!(prod, a.monic());
        for (p, _) in &f {
            prop_assert!(p.is_monic());
        }
    }

    #[test]
    fn cayley_hamilton(m in mat_strategy(6)) {
        prop_assume!(m.rows() == m.cols());
        prop_assert!(linalg::charpoly(&m).eval_mat(&m).is_zero());
    }
}

#[test]
fn spec_rank_examples() {
    let m = Mat::from_i64(&[&[1, 2], &[2, 4]]);
    let (r, k) = linalg::bareiss_rank_kernel(&m);
    assert_eq!(r, 1);
    assert_eq!(k.len(), 1);
    assert_eq!(k[0][0].clone() / k[0][1].clone(), rat(-2));
    assert_eq!(linalg::rank(&Mat::identity(5)), 5);
}
