use liecoh::arith::{linalg, Mat};
use liecoh::ce::{cohomology, cohomology_dims, cup, Cochain};
use liecoh::lie::{find_isomorphism, hom_space, LieRep, RepFile, SubalgebraTag};
use liecoh::random::{self, random_cochain, random_invertible, random_valid_rep};
use liecoh::structure::{length, shift_law_holds, unipotent_structure, z_split};
use proptest::prelude::*;

fn subs() -> [SubalgebraTag; 3] {
    [SubalgebraTag::Full, SubalgebraTag::Geom, SubalgebraTag::Cycl]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn euler_characteristic_vanishes(seed in any::<u64>(), d in 1usize..=3) {
        let rep = random_valid_rep(&mut random::rng(seed), d, 5);
        for sub in subs() {
            prop_assert_eq!(cohomology(&rep, sub).unwrap().euler_characteristic(), 0);
        }
    }

    #[test]
    fn dims_are_isomorphism_invariant(seed in any::<u64>(), d in 1usize..=3) {
        let mut r = random::rng(seed);
        let rep = random_valid_rep(&mut r, d, 5);
        let conj = rep.conjugate(&random_invertible(&mut r, rep.dim())).unwrap();
        for sub in subs() {
            prop_assert_eq!(cohomology_dims(&rep, sub).unwrap(), cohomology_dims(&conj, sub).unwrap());
        }
        prop_assert!(find_isomorphism(&rep, &conj).unwrap().is_some());
    }

    #[test]
    fn differential_of_cocycle_vanishes(seed in any::<u64>(), d in 1usize..=3) {
        let mut r = random::rng(seed);
        let rep = random_valid_rep(&mut r, d, 4);
        for q in 0..=d {
            let c = random_cochain(&mut r, &rep, SubalgebraTag::Full, q);
            prop_assert!(c.differential().unwrap().differential().unwrap().is_zero());
        }
    }

    #[test]
    fn cup_graded_commutes_on_scalar_cochains(seed in any::<u64>(), p in 0usize..=3, q in 0usize..=3) {
        // with trivial coefficients f ∪ g = (-1)^{pq} g ∪ f at the cochain level
        prop_assume!(p + q <= 3);
        let mut r = random::rng(seed);
        let a = LieRep::unit(2);
        let f = random_cochain(&mut r, &a, SubalgebraTag::Full, p);
        let g = random_cochain(&mut r, &a, SubalgebraTag::Full, q);
        let fg: Cochain = cup(&f, &g).unwrap();
        let gf = cup(&g, &f).unwrap();
        let sign = if p * q % 2 == 0 { liecoh::arith::rat(1) } else { liecoh::arith::rat(-1) };
        prop_assert_eq!(fg.coeffs, gf.scale(&sign).coeffs);
    }

    #[test]
    fn length_is_additive_and_invariant(seed in any::<u64>(), d in 1usize..=2) {
        let mut r = random::rng(seed);
        let a = random_valid_rep(&mut r, d, 4);
        let b = random_valid_rep(&mut r, d, 4);
        let la = length(&a).unwrap();
        let lb = length(&b).unwrap();
        let sum = a.direct_sum(&b).unwrap();
        prop_assert_eq!(length(&sum).unwrap(), la.merge(&lb));
        prop_assert_eq!(la.total_dim(), a.dim());
        let conj = a.conjugate(&random_invertible(&mut r, a.dim())).unwrap();
        prop_assert_eq!(length(&conj).unwrap(), la);
    }

    #[test]
    fn shift_law_on_random_reps(seed in any::<u64>(), d in 1usize..=3) {
        prop_assert!(shift_law_holds(&random_valid_rep(&mut random::rng(seed), d, 6)).unwrap());
    }

    #[test]
    fn z_split_is_functorial(seed in any::<u64>(), d in 1usize..=2) {
        let mut r = random::rng(seed);
        let a = random_valid_rep(&mut r, d, 4);
        let b = a.direct_sum(&random_valid_rep(&mut r, d, 2)).unwrap();
        let b = b.conjugate(&random_invertible(&mut r, b.dim())).unwrap();
        let (sa, sb) = (z_split(&a).unwrap(), z_split(&b).unwrap());
        prop_assert_eq!(sa.z_part.dim() + sa.zprime_part.dim(), a.dim());
        let hom = hom_space(&a, &b).unwrap();
        prop_assert!(!hom.is_empty());
        for _ in 0..5 {
            let f = random::random_intertwiner(&mut r, &hom, b.dim(), a.dim());
            let img = &f * &sa.inclusion_z.matrix;
            let basis = sb.inclusion_z.matrix.columns();
            for c in img.columns() {
                prop_assert!(linalg::in_span(b.dim(), &basis, &c));
            }
            let img = &f * &sa.inclusion_zprime.matrix;
            let basis = sb.inclusion_zprime.matrix.columns();
            for c in img.columns() {
                prop_assert!(linalg::in_span(b.dim(), &basis, &c));
            }
        }
    }

    #[test]
    fn unipotent_structure_is_conjugation_invariant(seed in any::<u64>(), d in 1usize..=3) {
        let mut r = random::rng(seed);
        let (_, rep) = random::random_unipotent_sum(&mut r, d, 8);
        let a = rep.conjugate(&random_invertible(&mut r, rep.dim())).unwrap();
        let b = rep.conjugate(&random_invertible(&mut r, rep.dim())).unwrap();
        let (ua, ub) = (unipotent_structure(&a).unwrap(), unipotent_structure(&b).unwrap());
        prop_assert_eq!(&ua.blocks, &ub.blocks);
        prop_assert_eq!(ua.model, ub.model);
        prop_assert!(ua.geometric_part_vanishes);
    }

    #[test]
    fn rep_files_round_trip(seed in any::<u64>(), d in 1usize..=3) {
        let rep = random_valid_rep(&mut random::rng(seed), d, 5);
        let text = serde_json::to_string(&rep.to_file(Some("r".into()))).unwrap();
        let back: RepFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_rep().unwrap(), rep);
    }
}

#[test]
fn hom_space_elements_intertwine() {
    let mut r = random::rng(9);
    for _ in 0..10 {
        let a = random_valid_rep(&mut r, 2, 3);
        let b = a.direct_sum(&random_valid_rep(&mut r, 2, 2)).unwrap();
        for m in hom_space(&a, &b).unwrap() {
            for i in 0..=2 {
                assert_eq!(&m * a.x(i), &*b.x(i) * &m);
            }
        }
    }
}

#[test]
fn zero_dimensional_rep_has_no_cohomology() {
    let z = LieRep::zero_dim(2);
    assert_eq!(cohomology_dims(&z, SubalgebraTag::Full).unwrap(), vec![0, 0, 0, 0]);
    assert_eq!(length(&z).unwrap().total_dim(), 0);
    let _ = Mat::zeros(0, 0);
}
