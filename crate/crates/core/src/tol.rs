//! Numerical tolerances.
//!
//! Every floating-point threshold used by the library is collected here. The
//! exact (Weyl/Cartan) layer uses none of them.

use serde::{Deserialize, Serialize};

/// Relative singular-value cutoff: `σ` counts as zero iff `σ < RANK_TOL · max(σ_max, 1)`.
pub const RANK_TOL: f64 = 1e-8;

/// Subspace-inclusion residual (tangency, isomorphism checks).
pub const RESIDUAL_TOL: f64 = 1e-8;

/// Pushforward identity for the torus action.
pub const EQUIVARIANCE_TOL: f64 = 1e-9;

/// Eigenvalues closer than this are treated as one eigenvalue.
pub const EIGEN_CLUSTER_TOL: f64 = 1e-7;

/// Largest acceptable `σ_min(g - cI) / ‖g‖` at a computed eigenvalue `c`.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-6;

/// `|det g - 1|` allowed for inputs claimed to lie in SL(N).
pub const DET_TOL: f64 = 1e-10;

/// Coordinate-extraction reconstruction residual.
pub const COORD_TOL: f64 = 1e-9;

/// A singular value within this factor of the cutoff marks the rank as borderline.
pub const BORDERLINE_FACTOR: f64 = 10.0;

/// G*-orbit membership: solvable below `ORBIT_SOLVED`, unsolvable above `ORBIT_UNSOLVED`.
pub const ORBIT_SOLVED: f64 = 1e-9;
pub const ORBIT_UNSOLVED: f64 = 1e-6;

/// Lattice shifts `‖k‖_∞ ≤ ORBIT_LATTICE_BOUND` tried when taking torus logarithms.
pub const ORBIT_LATTICE_BOUND: i64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub rank: f64,
    pub residual: f64,
    pub equivariance: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank: RANK_TOL,
            residual: RESIDUAL_TOL,
            equivariance: EQUIVARIANCE_TOL,
        }
    }
}
