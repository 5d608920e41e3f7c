//! Complex dense matrices and thresholded ranks.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol::BORDERLINE_FACTOR;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn real(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn from_real_rows(rows: &[&[f64]]) -> CMatrix {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMatrix::from_fn(n, m, |i, j| real(rows[i][j]))
}

pub fn diag(entries: &[C64]) -> CMatrix {
    let n = entries.len();
    CMatrix::from_fn(n, n, |i, j| if i == j { entries[i] } else { C64::new(0.0, 0.0) })
}

/// Matrix unit `e_ij`.
pub fn unit(n: usize, i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    m[(i, j)] = real(1.0);
    m
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn trace(m: &CMatrix) -> C64 {
    (0..m.nrows().min(m.ncols())).map(|i| m[(i, i)]).sum()
}

pub fn det(m: &CMatrix) -> C64 {
    m.clone().lu().determinant()
}

pub fn inverse(m: &CMatrix) -> Result<CMatrix> {
    m.clone()
        .try_inverse()
        .ok_or_else(|| Error::domain("matrix is not invertible"))
}

/// Thresholded rank of a matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankInfo {
    pub rank: usize,
    pub singular_values: Vec<f64>,
    pub threshold: f64,
    /// Some singular value sits within a factor [`BORDERLINE_FACTOR`] of the threshold.
    pub borderline: bool,
}

fn classify(mut sv: Vec<f64>, rel_tol: f64) -> RankInfo {
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let smax = sv.first().copied().unwrap_or(0.0);
    let threshold = rel_tol * smax.max(1.0);
    let rank = sv.iter().filter(|&&s| s >= threshold).count();
    let borderline = sv
        .iter()
        .any(|&s| s >= threshold / BORDERLINE_FACTOR && s < threshold * BORDERLINE_FACTOR);
    RankInfo {
        rank,
        singular_values: sv,
        threshold,
        borderline,
    }
}

pub fn numerical_rank(m: &CMatrix, rel_tol: f64) -> RankInfo {
    if m.nrows() == 0 || m.ncols() == 0 {
        return classify(Vec::new(), rel_tol);
    }
    let sv = m.clone().svd(false, false).singular_values;
    classify(sv.iter().copied().collect(), rel_tol)
}

/// Orthonormal basis (as columns) of the numerical column space.
pub fn orthonormal_range(m: &CMatrix, rel_tol: f64) -> (CMatrix, RankInfo) {
    if m.nrows() == 0 || m.ncols() == 0 {
        return (CMatrix::zeros(m.nrows(), 0), classify(Vec::new(), rel_tol));
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    // nalgebra does not sort singular values; select columns above threshold.
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let info = classify(sv.clone(), rel_tol);
    let keep: Vec<usize> = (0..sv.len()).filter(|&i| sv[i] >= info.threshold).collect();
    let basis = CMatrix::from_fn(m.nrows(), keep.len(), |i, j| u[(i, keep[j])]);
    (basis, info)
}

/// Largest distance from a column of `vectors` (unit-normalized) to the span of
/// the orthonormal columns of `basis`.
pub fn max_distance_to_span(vectors: &CMatrix, basis: &CMatrix) -> f64 {
    let proj = basis * (basis.adjoint() * vectors);
    let resid = vectors - proj;
    (0..vectors.ncols())
        .map(|j| {
            let norm = vectors.column(j).norm();
            if norm == 0.0 {
                0.0
            } else {
                resid.column(j).norm() / norm
            }
        })
        .fold(0.0, f64::max)
}

/// `a * x * a⁻¹`.
pub fn conjugate(a: &CMatrix, x: &CMatrix, a_inv: &CMatrix) -> CMatrix {
    a * x * a_inv
}

/// Signed antidiagonal matrix with entries `(-1)^{i+1}` (rows counted from 1).
pub fn signed_antidiagonal(n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |i, j| {
        if i + j == n - 1 {
            real(if i % 2 == 0 { 1.0 } else { -1.0 })
        } else {
            real(0.0)
        }
    })
}

/// Block-diagonal assembly of square blocks.
pub fn block_diagonal(blocks: &[CMatrix]) -> CMatrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut m = CMatrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        m.view_mut((off, off), (b.nrows(), b.ncols())).copy_from(b);
        off += b.nrows();
    }
    m
}

/// Diagonal block `k` of size `size`.
pub fn block(m: &CMatrix, k: usize, size: usize) -> CMatrix {
    m.view((k * size, k * size), (size, size)).into_owned()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_diagonal_with_tiny_entry() {
        let m = diag(&[real(1.0), real(1e-3), real(1e-12)]);
        let info = numerical_rank(&m, 1e-8);
        assert_eq!(info.rank, 2);
        assert!(!info.borderline);
    }

    #[test]
    fn borderline_is_flagged() {
        let m = diag(&[real(1.0), real(3e-8)]);
        let info = numerical_rank(&m, 1e-8);
        assert_eq!(info.rank, 2);
        assert!(info.borderline);
    }

    #[test]
    fn threshold_has_unit_floor() {
        // σ_max < 1 does not shrink the cutoff below rel_tol
        let m = diag(&[real(1e-3), real(5e-9)]);
        assert_eq!(numerical_rank(&m, 1e-8).rank, 1);
    }

    #[test]
    fn range_distance() {
        let m = from_real_rows(&[&[1.0, 0.0], &[0.0, 1.0], &[0.0, 0.0]]);
        let (q, info) = orthonormal_range(&m, 1e-8);
        assert_eq!(info.rank, 2);
        let inside = from_real_rows(&[&[1.0], &[2.0], &[0.0]]);
        let outside = from_real_rows(&[&[0.0], &[0.0], &[1.0]]);
        assert!(max_distance_to_span(&inside, &q) < 1e-14);
        assert!((max_distance_to_span(&outside, &q) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn signed_antidiagonal_shape() {
        let j = signed_antidiagonal(3);
        assert_eq!(j[(0, 2)], real(1.0));
        assert_eq!(j[(1, 1)], real(-1.0));
        assert_eq!(j[(2, 0)], real(1.0));
        assert!((det(&signed_antidiagonal(4)) - real(1.0)).norm() < 1e-14);
    }
}
