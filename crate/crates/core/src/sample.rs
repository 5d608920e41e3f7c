//! Deterministic random matrices.
//!
//! Every sample gets its own generator seeded from `(seed, index)`, so a sweep
//! produces the same values regardless of evaluation order or thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::numeric::{c, det, CMatrix, C64};

pub type SampleRng = ChaCha8Rng;

/// Generator for sample `index` of a sweep seeded with `seed`.
pub fn rng_for(seed: u64, index: u64) -> SampleRng {
    // splitmix-style mixing keeps neighbouring indices far apart.
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    ChaCha8Rng::seed_from_u64(z)
}

/// Uniform in the complex unit box `[-1, 1] + i[-1, 1]`.
pub fn unit_box(rng: &mut impl Rng) -> C64 {
    c(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

/// Nonzero complex number with modulus in `[1/2, 2]`.
pub fn nonzero(rng: &mut impl Rng) -> C64 {
    let r: f64 = rng.gen_range(-std::f64::consts::LN_2..=std::f64::consts::LN_2);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    C64::from_polar(r.exp(), phi)
}

/// Upper unitriangular with unit-box entries above the diagonal.
pub fn unipotent_upper(n: usize, rng: &mut impl Rng) -> CMatrix {
    let mut m = CMatrix::identity(n, n);
    for i in 0..n {
        for j in i + 1..n {
            m[(i, j)] = unit_box(rng);
        }
    }
    m
}

pub fn unipotent_lower(n: usize, rng: &mut impl Rng) -> CMatrix {
    unipotent_upper(n, rng).transpose()
}

/// `diag(e^{z_1}, …, e^{z_n})` with unit-box `z` shifted to sum zero (det 1).
pub fn torus(n: usize, rng: &mut impl Rng) -> CMatrix {
    let z: Vec<C64> = (0..n).map(|_| unit_box(rng)).collect();
    let mean = z.iter().sum::<C64>() / n as f64;
    CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        z.iter().map(|zi| (zi - mean).exp()),
    ))
}

/// Random element of SL(n): unit-box matrix plus the identity, rescaled to det 1.
pub fn special_linear(n: usize, rng: &mut impl Rng) -> CMatrix {
    loop {
        let m = CMatrix::identity(n, n) + CMatrix::from_fn(n, n, |_, _| unit_box(rng));
        let d = det(&m);
        if d.norm() > 0.1 {
            return m / d.powf(1.0 / n as f64);
        }
    }
}
