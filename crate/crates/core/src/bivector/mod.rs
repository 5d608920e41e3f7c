//! The twisted-conjugation Poisson bivector `π_θ`, evaluated at matrix points in
//! right trivialization (`x^r ↦ x`, `x^l ↦ Ad_g x`) as a skew coefficient matrix
//! over the basis of a [`MatrixRealization`].

pub mod automorphism;
pub mod gstar;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

pub use automorphism::{normalize_automorphism, Automorphism};

use crate::error::{Error, Result};
use crate::linalg::numeric::{
    block, det, frobenius, inverse, max_distance_to_span, numerical_rank, orthonormal_range,
    real, CMatrix, RankInfo, C64,
};
use crate::rootdata::MatrixRealization;
use crate::tol::{DET_TOL, RANK_TOL};

/// Which expansion of `κ ∧ κ(R)` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Expansion {
    /// Last term `Ad_g E_α ∧ Ad_g E_{-α}`; valid when θ stabilizes (B, T).
    Explicit,
    /// Last term `Ad_g dθ E_α ∧ Ad_g dθ E_{-α}`; valid for any θ.
    General,
}

#[derive(Debug, Clone)]
pub struct TrivializedBivector {
    pub point: CMatrix,
    /// Skew coefficient matrix over the realization basis.
    pub coefficients: CMatrix,
    pub rank: RankInfo,
}

impl TrivializedBivector {
    pub fn rank(&self) -> usize {
        self.rank.rank
    }

    pub fn norm(&self) -> f64 {
        frobenius(&self.coefficients)
    }
}

/// Checks that every diagonal block of `g` has determinant 1.
pub fn check_special_linear(g: &CMatrix, real: &MatrixRealization) -> Result<()> {
    let size = real.matrix_size();
    if g.nrows() != size || g.ncols() != size {
        return Err(Error::domain(format!(
            "expected a {size}×{size} matrix, got {}×{}",
            g.nrows(),
            g.ncols()
        )));
    }
    for b in 0..real.blocks() {
        let d = det(&block(g, b, real.block_dim()));
        if d.norm() == 0.0 {
            return Err(Error::domain("matrix is not invertible"));
        }
        if (d - real_one()).norm() > DET_TOL {
            return Err(Error::domain(format!(
                "determinant {:.6}{:+.6}i is not 1",
                d.re, d.im
            )));
        }
    }
    Ok(())
}

fn real_one() -> C64 {
    real(1.0)
}

/// Matrix over the basis of `x ↦ g dθ(x) g⁻¹`.
pub fn twisted_adjoint(g: &CMatrix, theta: &Automorphism, real: &MatrixRealization) -> Result<CMatrix> {
    let g_inv = inverse(g)?;
    let d = real.dim();
    let mut m = CMatrix::zeros(d, d);
    for (j, b) in real.basis().iter().enumerate() {
        let col = real.coordinates(&(g * theta.apply_lie(b)? * &g_inv))?;
        m.set_column(j, &col);
    }
    Ok(m)
}

/// Matrix over the basis of `Ad_g`.
pub fn adjoint(g: &CMatrix, real: &MatrixRealization) -> Result<CMatrix> {
    let g_inv = inverse(g)?;
    real.operator_matrix(|x| g * x * &g_inv)
}

/// Accumulates `Σ u ∧ v` as `P - Pᵀ` with `P = Σ u vᵀ`, so the result is exactly skew.
struct WedgeSum {
    p: CMatrix,
}

impl WedgeSum {
    fn new(d: usize) -> Self {
        WedgeSum {
            p: CMatrix::zeros(d, d),
        }
    }

    fn add(&mut self, u: &DVector<C64>, v: &DVector<C64>, scale: f64) {
        self.p.ger(real(scale), u, v, real(1.0));
    }

    fn finish(self) -> CMatrix {
        &self.p - self.p.transpose()
    }
}

fn unit_vector(d: usize, i: usize) -> DVector<C64> {
    let mut v = DVector::zeros(d);
    v[i] = real(1.0);
    v
}

/// Right-trivialized coefficient matrix of `π_θ(g)`:
///
/// `Σ_i (Ad_g dθ y_i) ∧ y_i − Σ_α E_α ∧ (Ad_g dθ E_{-α})
///  + ½ Σ_α (E_α ∧ E_{-α} + Ad_g E_α ∧ Ad_g E_{-α})`.
pub fn evaluate_bivector(
    g: &CMatrix,
    theta: &Automorphism,
    real: &MatrixRealization,
) -> Result<TrivializedBivector> {
    evaluate_bivector_with(g, theta, real, Expansion::Explicit, RANK_TOL)
}

pub fn evaluate_bivector_with(
    g: &CMatrix,
    theta: &Automorphism,
    real: &MatrixRealization,
    expansion: Expansion,
    rank_tol: f64,
) -> Result<TrivializedBivector> {
    if expansion == Expansion::Explicit && !theta.is_standard() {
        return Err(Error::Unsupported(
            "explicit expansion needs a (B, T)-stabilizing automorphism; use the general expansion or normalize first".into(),
        ));
    }
    check_special_linear(g, real)?;
    let a = twisted_adjoint(g, theta, real)?;
    let last = match expansion {
        Expansion::Explicit => adjoint(g, real)?,
        Expansion::General => a.clone(),
    };
    let d = real.dim();
    let k = real.cartan_dim();
    let mut sum = WedgeSum::new(d);
    for i in 0..k {
        sum.add(&a.column(i).into_owned(), &unit_vector(d, i), 1.0);
    }
    for r in 0..real.num_positive_roots() {
        let (pi, ni) = (real.positive_index(r), real.negative_index(r));
        let e_pos = unit_vector(d, pi);
        sum.add(&e_pos, &a.column(ni).into_owned(), -1.0);
        sum.add(&e_pos, &unit_vector(d, ni), 0.5);
        sum.add(&last.column(pi).into_owned(), &last.column(ni).into_owned(), 0.5);
    }
    let coefficients = sum.finish();
    let rank = numerical_rank(&coefficients, rank_tol);
    Ok(TrivializedBivector {
        point: g.clone(),
        coefficients,
        rank,
    })
}

/// Numerical rank of the bivector (always even for a skew matrix).
pub fn bivector_rank(pi: &TrivializedBivector) -> usize {
    pi.rank.rank
}

/// `g₁ g θ(g₁)⁻¹`.
pub fn twisted_conjugate(g1: &CMatrix, g: &CMatrix, theta: &Automorphism) -> Result<CMatrix> {
    Ok(g1 * g * inverse(&theta.apply_group(g1)?)?)
}

/// `κ(x, y) = x^r − θ(y)^l`, right-trivialized: `x − Ad_g dθ(y)`.
pub fn kappa(x: &CMatrix, y: &CMatrix, g: &CMatrix, theta: &Automorphism) -> Result<CMatrix> {
    let g_inv = inverse(g)?;
    Ok(x - g * theta.apply_lie(y)? * g_inv)
}

#[derive(Debug, Clone)]
pub struct ClassTangent {
    /// Orthonormal columns spanning `{x − Ad_g dθ x}` in basis coordinates.
    pub basis: CMatrix,
    pub rank: RankInfo,
}

impl ClassTangent {
    pub fn dim(&self) -> usize {
        self.rank.rank
    }
}

/// Tangent space of the θ-twisted class through `g`.
pub fn class_tangent_space(
    g: &CMatrix,
    theta: &Automorphism,
    real: &MatrixRealization,
    rank_tol: f64,
) -> Result<ClassTangent> {
    let a = twisted_adjoint(g, theta, real)?;
    let d = real.dim();
    let k = CMatrix::identity(d, d) - a;
    let (basis, rank) = orthonormal_range(&k, rank_tol);
    Ok(ClassTangent { basis, rank })
}

/// Largest distance of the image of `π_θ(g)` from the class tangent space.
pub fn verify_tangency(
    pi: &TrivializedBivector,
    theta: &Automorphism,
    real: &MatrixRealization,
    rank_tol: f64,
) -> Result<f64> {
    let tangent = class_tangent_space(&pi.point, theta, real, rank_tol)?;
    let (image, _) = orthonormal_range(&pi.coefficients, rank_tol);
    if image.ncols() == 0 {
        return Ok(0.0);
    }
    Ok(max_distance_to_span(&image, &tangent.basis))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquivarianceReport {
    pub residual: f64,
    /// `‖M(g)‖` was too small for a relative comparison.
    pub vacuous: bool,
}

/// Relative difference between `M(h g θ(h)⁻¹)` and `Ad_h M(g) Ad_hᵀ` for `h ∈ T`.
pub fn verify_t_equivariance(
    g: &CMatrix,
    h: &CMatrix,
    theta: &Automorphism,
    real: &MatrixRealization,
) -> Result<EquivarianceReport> {
    let n = h.nrows();
    for i in 0..n {
        for j in 0..n {
            if i != j && h[(i, j)].norm() != 0.0 {
                return Err(Error::domain("h must be diagonal"));
            }
        }
    }
    let m = evaluate_bivector(g, theta, real)?.coefficients;
    let moved = evaluate_bivector(&twisted_conjugate(h, g, theta)?, theta, real)?.coefficients;
    let ad = adjoint(h, real)?;
    let pushed = &ad * &m * ad.transpose();
    let norm = frobenius(&m);
    let diff = frobenius(&(moved - pushed));
    if norm < 1e-12 {
        return Ok(EquivarianceReport {
            residual: diff,
            vacuous: true,
        });
    }
    Ok(EquivarianceReport {
        residual: diff / norm,
        vacuous: false,
    })
}
