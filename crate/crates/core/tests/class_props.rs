use proptest::prelude::*;

use twisted_leaves::bivector::{evaluate_bivector, Automorphism};
use twisted_leaves::cells::{bb_cell_of, bruhat_cell_of};
use twisted_leaves::classes::zero_locus::random_zero_locus_point;
use twisted_leaves::classes::{analyze_class, same_conjugacy_class};
use twisted_leaves::linalg::numeric::inverse;
use twisted_leaves::rootdata::build_sl_realization;
use twisted_leaves::sample::{rng_for, special_linear, torus, unipotent_upper};
use twisted_leaves::weyl::{m_l, WeylGroup};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn class_data_is_conjugation_invariant(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = rng_for(seed, 0);
        let real = build_sl_realization(n).unwrap();
        let g = special_linear(n + 1, &mut rng);
        let h = special_linear(n + 1, &mut rng);
        let conj = &h * &g * inverse(&h).unwrap();
        prop_assert!(same_conjugacy_class(&g, &conj).unwrap());
        let a = analyze_class(&g, &Automorphism::Identity, &real).unwrap();
        let b = analyze_class(&conj, &Automorphism::Identity, &real).unwrap();
        prop_assert_eq!(a.dim_c, b.dim_c);
        prop_assert_eq!(a.r_c, b.r_c);
        prop_assert_eq!(a.m_c, b.m_c);
    }

    #[test]
    fn zero_locus_points_have_rank_zero_in_cell_m_l(seed in any::<u64>(), n in 1usize..=4, l in 0usize..=2) {
        prop_assume!(2 * l <= n + 1);
        let mut rng = rng_for(seed, 1);
        let real = build_sl_realization(n).unwrap();
        let p = random_zero_locus_point(n, l, &mut rng).unwrap();
        let pi = evaluate_bivector(&p.matrix, &Automorphism::Identity, &real).unwrap();
        prop_assert_eq!(pi.rank(), 0);
        let group = WeylGroup::type_a(n).unwrap();
        let m = m_l(n, l).unwrap();
        prop_assert_eq!(bruhat_cell_of(&p.matrix, &group).unwrap(), m.clone());
        // The class of a zero-locus point is the one whose top cell is m_l.
        let class = analyze_class(&p.matrix, &Automorphism::Identity, &real).unwrap();
        prop_assert_eq!(class.m_c, Some(m));
    }

    /// Conjugating by `B` keeps `B w B` but moves `B w B₋`; whenever the point
    /// stays in the top cell it must also be in the double coset `B m_C B`.
    #[test]
    fn top_cell_points_lie_in_both_double_cosets(seed in any::<u64>(), n in 1usize..=3, l in 1usize..=2) {
        prop_assume!(2 * l <= n + 1);
        let mut rng = rng_for(seed, 2);
        let group = WeylGroup::type_a(n).unwrap();
        let m = m_l(n, l).unwrap();
        let p = random_zero_locus_point(n, l, &mut rng).unwrap();
        for _ in 0..8 {
            let b = torus(n + 1, &mut rng) * unipotent_upper(n + 1, &mut rng);
            let g = &b * &p.matrix * inverse(&b).unwrap();
            if bruhat_cell_of(&g, &group).unwrap() == m {
                prop_assert_eq!(bb_cell_of(&g, &group).unwrap(), m.clone());
            }
        }
        let t = torus(n + 1, &mut rng);
        let g = &t * &p.matrix * inverse(&t).unwrap();
        prop_assert_eq!(bruhat_cell_of(&g, &group).unwrap(), m.clone());
        prop_assert_eq!(bb_cell_of(&g, &group).unwrap(), m);
    }
}
