//! Explicit points of the zero locus of `π` (θ = Id) on SL(n+1):
//!
//! ```text
//! g(λ, λ′, x) = [ (λ+λ′) I_l   0               λ′ X J_l ]
//!               [ 0            λ I_{n+1-2l}    0        ]
//!               [ −λ X′ J_l    0               0        ]
//! ```
//! with `X = diag(x_1..x_l)`, `X′ = diag(x_l⁻¹..x_1⁻¹)`, `J_l` the antidiagonal
//! of ones and `λ^{n+1-l} λ′^l = 1`.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::numeric::{det, real, CMatrix, C64};
use crate::sample;

#[derive(Debug, Clone, Serialize)]
pub struct ZeroLocusPoint {
    pub n: usize,
    pub l: usize,
    pub lambda: C64,
    pub lambda_prime: C64,
    pub xs: Vec<C64>,
    #[serde(skip)]
    pub matrix: CMatrix,
}

pub fn zero_locus_point(
    n: usize,
    l: usize,
    lambda: C64,
    lambda_prime: C64,
    xs: &[C64],
) -> Result<ZeroLocusPoint> {
    let size = n + 1;
    if n == 0 || 2 * l > size {
        return Err(Error::domain(format!("l = {l} out of range for SL({size})")));
    }
    if xs.len() != l {
        return Err(Error::domain(format!("expected {l} parameters x, got {}", xs.len())));
    }
    if xs.iter().any(|x| x.norm() == 0.0) {
        return Err(Error::domain("parameters x must be nonzero"));
    }
    let constraint = lambda.powu((size - l) as u32) * lambda_prime.powu(l as u32);
    if (constraint - real(1.0)).norm() > 1e-10 {
        return Err(Error::domain(format!(
            "λ^{}·λ′^{} = {:.6}{:+.6}i, expected 1",
            size - l,
            l,
            constraint.re,
            constraint.im
        )));
    }
    let mut g = CMatrix::zeros(size, size);
    for i in 0..l {
        g[(i, i)] = lambda + lambda_prime;
        // (λ′ X J_l)_{i, l-1-i} = λ′ x_i, placed in the last l columns.
        g[(i, size - 1 - i)] = lambda_prime * xs[i];
        // (−λ X′ J_l)_{i, l-1-i} = −λ x_{l-i}⁻¹ in the last l rows, first l columns.
        g[(size - l + i, l - 1 - i)] = -lambda / xs[l - 1 - i];
    }
    for i in l..size - l {
        g[(i, i)] = lambda;
    }
    let d = det(&g);
    if (d - real(1.0)).norm() > 1e-9 {
        return Err(Error::numerical("zero-locus point determinant", (d - real(1.0)).norm(), 1e-9));
    }
    Ok(ZeroLocusPoint {
        n,
        l,
        lambda,
        lambda_prime,
        xs: xs.to_vec(),
        matrix: g,
    })
}

/// Random parameters satisfying the constraint: `λ′` and `x` random nonzero,
/// `λ` a random `(n+1-l)`-th root of `λ′^{-l}`.
pub fn random_zero_locus_point(n: usize, l: usize, rng: &mut impl Rng) -> Result<ZeroLocusPoint> {
    let size = n + 1;
    if 2 * l > size {
        return Err(Error::domain(format!("l = {l} out of range for SL({size})")));
    }
    let k = (size - l) as f64;
    let lambda_prime = if l == 0 { real(1.0) } else { sample::nonzero(rng) };
    let root_index = rng.gen_range(0..size - l) as f64;
    let base = lambda_prime.powi(-(l as i32)).powf(1.0 / k);
    let lambda = base * C64::from_polar(1.0, std::f64::consts::TAU * root_index / k);
    let xs: Vec<C64> = (0..l).map(|_| sample::nonzero(rng)).collect();
    zero_locus_point(n, l, lambda, lambda_prime, &xs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::eigenvalues;
    use crate::linalg::numeric::{c, frobenius, from_real_rows};
    use crate::sample::rng_for;

    #[test]
    fn sl2_example() {
        let p = zero_locus_point(1, 1, real(2.0), real(0.5), &[real(1.0)]).unwrap();
        let expect = from_real_rows(&[&[2.5, 0.5], &[-2.0, 0.0]]);
        assert!(frobenius(&(&p.matrix - expect)) < 1e-15);
        let eig = eigenvalues(&p.matrix).unwrap();
        assert_eq!(eig.len(), 2);
    }

    #[test]
    fn central_branch() {
        let i = c(0.0, 1.0);
        let p = zero_locus_point(3, 0, i, real(1.0), &[]).unwrap();
        assert!(frobenius(&(&p.matrix - CMatrix::identity(4, 4) * i)) < 1e-15);
    }

    #[test]
    fn constraint_is_enforced() {
        assert!(matches!(
            zero_locus_point(1, 1, real(2.0), real(2.0), &[real(1.0)]),
            Err(Error::Domain(_))
        ));
        assert!(zero_locus_point(1, 1, real(2.0), real(0.5), &[real(0.0)]).is_err());
    }

    #[test]
    fn random_points_have_expected_spectrum() {
        for n in 1..=4 {
            for l in 0..=(n + 1) / 2 {
                let mut rng = rng_for(n as u64, l as u64);
                let p = random_zero_locus_point(n, l, &mut rng).unwrap();
                let tr: C64 = (0..=n).map(|i| p.matrix[(i, i)]).sum();
                let expect = p.lambda * (n + 1 - l) as f64 + p.lambda_prime * l as f64;
                assert!((tr - expect).norm() < 1e-10);
            }
        }
    }
}
