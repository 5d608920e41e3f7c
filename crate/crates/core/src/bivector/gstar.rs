//! The torus projection `τ_ẇ` on `BwB₋` and membership in the subtorus
//! `T_{wθ} = {h (wθ)(h) : h ∈ T}`, which together decide whether two points of
//! a cell lie in the same `G*`-orbit.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::automorphism::Automorphism;
use crate::cells::{representative, tau_w};
use crate::error::{Error, Result};
use crate::linalg::numeric::{c, inverse, orthonormal_range, CMatrix, RankInfo, C64};
use crate::tol::{ORBIT_LATTICE_BOUND, ORBIT_SOLVED, ORBIT_UNSOLVED, RANK_TOL};
use crate::weyl::WeylElement;

#[derive(Debug, Clone)]
pub struct GStarData {
    pub w: WeylElement,
    pub theta: Automorphism,
    pub w_dot: CMatrix,
    /// `1 + wθ` on diagonal log-coordinates `ℂ^N`.
    pub one_plus_w_theta: CMatrix,
    /// Orthonormal basis of `h_{wθ} = im(1 + wθ)` restricted to traceless diagonals.
    pub h_w_theta: CMatrix,
    pub rank: RankInfo,
}

impl GStarData {
    pub fn new(w: &WeylElement, theta: &Automorphism) -> Result<Self> {
        let p = w
            .perm()
            .ok_or_else(|| Error::domain("T_{wθ} is implemented for SL(N)"))?;
        let n = p.len();
        let w_dot = representative(w)?;
        let w_inv = inverse(&w_dot)?;
        // (wθ) on diagonals: e_kk ↦ diag(ẇ dθ(e_kk) ẇ⁻¹).
        let mut op = CMatrix::identity(n, n);
        for k in 0..n {
            let mut e = CMatrix::zeros(n, n);
            e[(k, k)] = c(1.0, 0.0);
            let img = &w_dot * theta.apply_lie(&e)? * &w_inv;
            for i in 0..n {
                op[(i, k)] += img[(i, i)];
            }
        }
        // Traceless diagonals: e_i - e_{i+1}.
        let traceless = CMatrix::from_fn(n, n - 1, |i, j| {
            if i == j {
                c(1.0, 0.0)
            } else if i == j + 1 {
                c(-1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let (h_w_theta, rank) = orthonormal_range(&(&op * traceless), RANK_TOL);
        Ok(GStarData {
            w: w.clone(),
            theta: theta.clone(),
            w_dot,
            one_plus_w_theta: op,
            h_w_theta,
            rank,
        })
    }

    /// `dim h_{wθ}`.
    pub fn dim(&self) -> usize {
        self.rank.rank
    }

    /// `τ_ẇ(g)` as a diagonal matrix.
    pub fn tau(&self, g: &CMatrix) -> Result<CMatrix> {
        tau_w(g, &self.w)
    }

    /// Distance from `log t + 2πik` to `h_{wθ}`, minimized over `‖k‖_∞ ≤ bound`
    /// with the trace constraint; `t` diagonal of determinant 1.
    pub fn torus_residual(&self, t: &CMatrix) -> f64 {
        let n = t.nrows();
        let z: Vec<C64> = (0..n).map(|i| t[(i, i)].ln()).collect();
        let total: C64 = z.iter().sum();
        let m = (total.im / std::f64::consts::TAU).round() as i64;
        let b = ORBIT_LATTICE_BOUND;
        let mut best = f64::INFINITY;
        let mut k = vec![-b; n];
        loop {
            if k.iter().sum::<i64>() == -m {
                let v = DVector::from_iterator(
                    n,
                    z.iter()
                        .zip(&k)
                        .map(|(zi, &ki)| zi + c(0.0, std::f64::consts::TAU * ki as f64)),
                );
                let proj = &self.h_w_theta * (self.h_w_theta.adjoint() * &v);
                best = best.min((v - proj).norm());
            }
            // Odometer over [-b, b]^n.
            let mut i = 0;
            loop {
                if i == n {
                    return best;
                }
                k[i] += 1;
                if k[i] <= b {
                    break;
                }
                k[i] = -b;
                i += 1;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitVerdict {
    Same,
    Different,
    /// The lattice search residual fell between the two thresholds.
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitDecision {
    pub verdict: OrbitVerdict,
    pub residual: f64,
}

/// Whether `τ_ẇ(g₁) τ_ẇ(g₂)⁻¹ ∈ T_{wθ}`.
pub fn same_gstar_orbit(
    g1: &CMatrix,
    g2: &CMatrix,
    w: &WeylElement,
    theta: &Automorphism,
) -> Result<OrbitDecision> {
    let data = GStarData::new(w, theta)?;
    let t = data.tau(g1)? * inverse(&data.tau(g2)?)?;
    let residual = data.torus_residual(&t);
    let verdict = if residual < ORBIT_SOLVED {
        OrbitVerdict::Same
    } else if residual > ORBIT_UNSOLVED {
        OrbitVerdict::Different
    } else {
        OrbitVerdict::Indeterminate
    };
    Ok(OrbitDecision { verdict, residual })
}
