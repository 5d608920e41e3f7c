//! `π_θ = κ ∧ κ(R)` rebuilt from scratch: `R = ½ Σ ξ_j ∧ x_j` with `x_j` a random
//! basis of the diagonal in `g ⊕ g` and `ξ_j` the dual basis of the other
//! Lagrangian, taken from a random recombination of its elementary basis.

use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng;

use twisted_leaves::bivector::{evaluate_bivector_with, Automorphism, Expansion};
use twisted_leaves::linalg::numeric::{c, frobenius, inverse, unit, CMatrix, C64};
use twisted_leaves::rootdata::{build_sl_realization, MatrixRealization};
use twisted_leaves::sample::{rng_for, special_linear, unit_box};

type Pair = (CMatrix, CMatrix);

/// `⟨(a, b), (c, d)⟩ = tr(ac) − tr(bd)`.
fn pairing(p: &Pair, q: &Pair) -> C64 {
    (&p.0 * &q.0).trace() - (&p.1 * &q.1).trace()
}

/// Strictly upper, strictly lower and Cartan pieces of the dual Lagrangian.
fn dual_lagrangian(size: usize) -> Vec<Pair> {
    let zero = CMatrix::zeros(size, size);
    let mut out = Vec::new();
    for i in 0..size {
        for j in i + 1..size {
            out.push((unit(size, i, j), zero.clone()));
            out.push((zero.clone(), unit(size, j, i)));
        }
    }
    for i in 0..size - 1 {
        let h = unit(size, i, i) - unit(size, i + 1, i + 1);
        out.push((h.clone(), -h));
    }
    out
}

fn random_traceless(size: usize, rng: &mut impl Rng) -> CMatrix {
    let mut m = CMatrix::from_fn(size, size, |_, _| unit_box(rng));
    let t = m.trace() / c(size as f64, 0.0);
    for i in 0..size {
        m[(i, i)] -= t;
    }
    m
}

fn recombine(basis: &[Pair], rng: &mut impl Rng) -> Vec<Pair> {
    let (d, size) = (basis.len(), basis[0].0.nrows());
    let mix = DMatrix::from_fn(d, d, |_, _| unit_box(rng));
    (0..d)
        .map(|j| {
            basis.iter().enumerate().fold(
                (CMatrix::zeros(size, size), CMatrix::zeros(size, size)),
                |(a, b), (k, p)| (a + &p.0 * mix[(k, j)], b + &p.1 * mix[(k, j)]),
            )
        })
        .collect()
}

fn oracle(g: &CMatrix, theta: &Automorphism, real: &MatrixRealization, rng: &mut impl Rng) -> CMatrix {
    let size = real.matrix_size();
    let d = real.dim();
    let diagonal: Vec<Pair> = (0..d)
        .map(|_| {
            let x = random_traceless(size, rng);
            (x.clone(), x)
        })
        .collect();
    let others = recombine(&dual_lagrangian(size), rng);
    let gram = DMatrix::from_fn(d, d, |j, k| pairing(&others[k], &diagonal[j]));
    let dual_coeffs = inverse(&gram.transpose()).unwrap();
    let g_inv = inverse(g).unwrap();
    let kappa = |p: &Pair| -> CMatrix { &p.0 - g * theta.apply_lie(&p.1).unwrap() * &g_inv };
    let mut out = CMatrix::zeros(d, d);
    for j in 0..d {
        let xi = others.iter().enumerate().fold(
            (CMatrix::zeros(size, size), CMatrix::zeros(size, size)),
            |(a, b), (k, p)| (a + &p.0 * dual_coeffs[(j, k)], b + &p.1 * dual_coeffs[(j, k)]),
        );
        let u = real.coordinates(&kappa(&xi)).unwrap();
        let v = real.coordinates(&kappa(&diagonal[j])).unwrap();
        out += (&u * v.transpose() - &v * u.transpose()) * c(0.5, 0.0);
    }
    out
}

fn relative_gap(n: usize, theta: Automorphism, seed: u64) -> f64 {
    let real = build_sl_realization(n).unwrap();
    let mut rng = rng_for(seed, 0);
    let g = special_linear(n + 1, &mut rng);
    let pi = evaluate_bivector_with(&g, &theta, &real, Expansion::General, 1e-8).unwrap();
    let o = oracle(&g, &theta, &real, &mut rng);
    frobenius(&(&o - &pi.coefficients)) / (1.0 + pi.norm())
}

#[test]
fn identity_matches_at_the_identity() {
    let real = build_sl_realization(2).unwrap();
    let g = CMatrix::identity(3, 3);
    let mut rng = rng_for(1, 0);
    let pi = evaluate_bivector_with(&g, &Automorphism::Identity, &real, Expansion::Explicit, 1e-8).unwrap();
    let o = oracle(&g, &Automorphism::Identity, &real, &mut rng);
    assert!(frobenius(&(&o - &pi.coefficients)) < 1e-9);
    assert_eq!(pi.rank(), 0);
}

#[test]
fn explicit_and_general_agree_for_standard_automorphisms() {
    for (n, theta) in [(2, Automorphism::Identity), (3, Automorphism::Outer)] {
        let real = build_sl_realization(n).unwrap();
        let g = special_linear(n + 1, &mut rng_for(5, n as u64));
        let a = evaluate_bivector_with(&g, &theta, &real, Expansion::Explicit, 1e-8).unwrap();
        let b = evaluate_bivector_with(&g, &theta, &real, Expansion::General, 1e-8).unwrap();
        assert!(frobenius(&(&a.coefficients - &b.coefficients)) < 1e-9 * (1.0 + b.norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn oracle_matches_identity(seed in any::<u64>(), n in 1usize..=3) {
        prop_assert!(relative_gap(n, Automorphism::Identity, seed) < 1e-9);
    }

    #[test]
    fn oracle_matches_outer(seed in any::<u64>(), n in 1usize..=3) {
        prop_assert!(relative_gap(n, Automorphism::Outer, seed) < 1e-9);
    }
}
