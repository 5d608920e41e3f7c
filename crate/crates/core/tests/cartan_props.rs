use proptest::prelude::*;

use twisted_leaves::cartan::{
    l_theta, l_theta_prime, le_inv_holds, rank_jump, rk_one_minus_square, CartanOperator,
};
use twisted_leaves::linalg::exact::IntMatrix;
use twisted_leaves::rootdata::TypeLabel;
use twisted_leaves::weyl::{DiagramAut, WeylGroup};

/// `S = I − v fᵀ` with `fᵀ v = 2`, an integral reflection.
fn reflection(v: &[i64], f_tail: &[i64]) -> IntMatrix {
    let k = v.len();
    let mut f = vec![0; k];
    f[1..].copy_from_slice(f_tail);
    let dot: i64 = (1..k).map(|i| f[i] * v[i]).sum();
    f[0] = 2 - dot;
    let id = IntMatrix::identity(k);
    &id - &IntMatrix::from_fn(k, k, |i, j| v[i] * f[j])
}

fn case(label: TypeLabel, theta: DiagramAut) -> (WeylGroup, DiagramAut) {
    (WeylGroup::of_type(label).unwrap(), theta)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_jump_is_at_most_one(
        a in proptest::collection::vec(-3i64..=3, 16),
        v_tail in proptest::collection::vec(-2i64..=2, 3),
        f_tail in proptest::collection::vec(-2i64..=2, 3),
    ) {
        let a = IntMatrix::from_fn(4, 4, |i, j| a[4 * i + j]);
        let mut v = vec![1];
        v.extend(v_tail);
        let s = reflection(&v, &f_tail);
        prop_assert_eq!(&s * &s, IntMatrix::identity(4));
        prop_assert!(rank_jump(&a, &s).abs() <= 1);
    }

    #[test]
    fn le_inv_on_random_words(word in proptest::collection::vec(0usize..4, 0..24), which in 0usize..4) {
        let (group, theta) = match which {
            0 => case(TypeLabel::A(3), DiagramAut::identity(3)),
            1 => case(TypeLabel::A(3), DiagramAut::flip(3)),
            2 => case(TypeLabel::D4, DiagramAut::identity(4)),
            _ => case(TypeLabel::D4, DiagramAut::d4_triality()),
        };
        let word: Vec<usize> = word.into_iter().filter(|&i| i < group.rank()).collect();
        let w = group.from_word(&word).unwrap();
        let a = CartanOperator::w_theta(&w, &theta).unwrap();
        prop_assert!(le_inv_holds(&a));
        let gap = l_theta_prime(&w, &theta).unwrap() - l_theta(&w, &theta).unwrap();
        prop_assert_eq!(gap, rk_one_minus_square(&w, &theta).unwrap());
    }
}

#[test]
fn monotone_evenness_on_comparable_pairs() {
    for n in 1..=3 {
        let group = WeylGroup::type_a(n).unwrap();
        for theta in [DiagramAut::identity(n), DiagramAut::flip(n)] {
            let elements = group.elements().unwrap();
            for w in elements {
                let (lw, lpw) = (l_theta(w, &theta).unwrap(), l_theta_prime(w, &theta).unwrap());
                for u in group.bruhat_interval_below(w).unwrap() {
                    let (lu, lpu) = (l_theta(&u, &theta).unwrap(), l_theta_prime(&u, &theta).unwrap());
                    assert!(lu <= lw && (lw - lu) % 2 == 0, "S_{}: L on {u} ≤ {w}", n + 1);
                    assert!(lpu <= lpw && (lpw - lpu) % 2 == 0, "S_{}: L′ on {u} ≤ {w}", n + 1);
                }
            }
        }
    }
}

#[test]
fn operators_preserve_the_cartan_form() {
    let group = WeylGroup::of_type(TypeLabel::D4).unwrap();
    let gram = group.datum().cartan_matrix().clone();
    let theta = DiagramAut::d4_triality();
    assert_eq!(theta.order(), 3);
    for w in group.elements().unwrap() {
        let a = CartanOperator::w_theta(w, &theta).unwrap();
        assert!(a.preserves_form(&gram), "{w}");
    }
}
