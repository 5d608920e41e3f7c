//! Conjugacy (and twisted conjugacy) classes of SL(n+1): dimension, `r(C)`,
//! `l(C)`, `m_C`, sphericity, leaf tables and lowest ranks.

pub mod families;
pub mod zero_locus;

use nalgebra::linalg::Schur;
use rand::Rng;
use serde::Serialize;

use crate::bivector::{class_tangent_space, twisted_conjugate, Automorphism};
use crate::cartan::{dk_one_plus, l_theta, rk_one_minus};
use crate::cells::bb_cell_of;
use crate::error::{Error, Result};
use crate::linalg::numeric::{frobenius, numerical_rank, CMatrix, C64};
use crate::rootdata::MatrixRealization;
use crate::sample;
use crate::tol::{EIGEN_CLUSTER_TOL, EIGEN_RESIDUAL_TOL, RANK_TOL};
use crate::weyl::{bruhat_leq, m_l, DiagramAut, WeylElement, WeylGroup};

pub use families::{spherical_families, ClassSpec, FamilyDescriptor, FamilyKind};
pub use zero_locus::{random_zero_locus_point, zero_locus_point, ZeroLocusPoint};

/// An eigenvalue cluster with its algebraic multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eigenvalue {
    pub value: C64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone)]
pub struct ClassDescriptor {
    pub representative: CMatrix,
    pub n: usize,
    pub theta: Automorphism,
    pub dim_c: usize,
    /// The tangent-space rank had a singular value near the cutoff.
    pub dim_c_borderline: bool,
    pub r_c: usize,
    pub l_c: usize,
    /// Known only for θ = Id (`m_C = m_{l(C)}`).
    pub m_c: Option<WeylElement>,
    pub spherical: Option<bool>,
    pub eigenvalues: Vec<Eigenvalue>,
}

impl ClassDescriptor {
    pub fn is_central(&self) -> bool {
        self.dim_c == 0
    }
}

/// Eigenvalues from the complex Schur form, clustered within `EIGEN_CLUSTER_TOL`.
pub fn eigenvalues(g: &CMatrix) -> Result<Vec<Eigenvalue>> {
    let n = g.nrows();
    let schur = Schur::try_new(g.clone(), 1e-15, 10_000)
        .ok_or_else(|| Error::numerical("Schur iteration did not converge", f64::NAN, 0.0))?;
    let (_, t) = schur.unpack();
    let mut raw: Vec<C64> = (0..n).map(|i| t[(i, i)]).collect();
    raw.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    let mut clusters: Vec<(C64, Vec<C64>)> = Vec::new();
    for z in raw {
        match clusters
            .iter_mut()
            .find(|(c, _)| (*c - z).norm() <= EIGEN_CLUSTER_TOL * c.norm().max(1.0))
        {
            Some((c, members)) => {
                members.push(z);
                *c = members.iter().sum::<C64>() / members.len() as f64;
            }
            None => clusters.push((z, vec![z])),
        }
    }
    let scale = frobenius(g).max(1.0);
    for (c, _) in &clusters {
        let shifted = g - CMatrix::identity(n, n) * *c;
        let sv = shifted.svd(false, false).singular_values;
        let smin = sv.iter().copied().fold(f64::INFINITY, f64::min);
        if smin / scale > EIGEN_RESIDUAL_TOL {
            return Err(Error::numerical(
                format!("eigenvalue {:.6}{:+.6}i has a large residual", c.re, c.im),
                smin / scale,
                EIGEN_RESIDUAL_TOL,
            ));
        }
    }
    Ok(clusters
        .into_iter()
        .map(|(value, m)| Eigenvalue {
            value,
            multiplicity: m.len(),
        })
        .collect())
}

/// `r(C) = min_c rank(g - cI)`; the minimum is attained at an eigenvalue.
pub fn min_rank_shift(g: &CMatrix, eig: &[Eigenvalue], rank_tol: f64) -> usize {
    let n = g.nrows();
    eig.iter()
        .map(|e| numerical_rank(&(g - CMatrix::identity(n, n) * e.value), rank_tol).rank)
        .min()
        .unwrap_or(n)
}

/// Rank sequence `rank (g - cI)^k`, `k = 1..=mult`, per eigenvalue: a complete
/// conjugacy invariant together with the eigenvalues.
pub fn jordan_signature(g: &CMatrix, eig: &[Eigenvalue], rank_tol: f64) -> Vec<Vec<usize>> {
    let n = g.nrows();
    eig.iter()
        .map(|e| {
            let shifted = g - CMatrix::identity(n, n) * e.value;
            let mut p = CMatrix::identity(n, n);
            (0..e.multiplicity)
                .map(|_| {
                    p = &p * &shifted;
                    numerical_rank(&p, rank_tol).rank
                })
                .collect()
        })
        .collect()
}

/// Whether `a` and `b` are conjugate in GL(N) (numerically).
pub fn same_conjugacy_class(a: &CMatrix, b: &CMatrix) -> Result<bool> {
    let ea = eigenvalues(a)?;
    let eb = eigenvalues(b)?;
    if ea.len() != eb.len() {
        return Ok(false);
    }
    let mut order = Vec::with_capacity(eb.len());
    for x in &ea {
        let tol = 1e-6 * x.value.norm().max(1.0);
        match eb.iter().position(|y| (y.value - x.value).norm() <= tol && y.multiplicity == x.multiplicity) {
            Some(j) => order.push(j),
            None => return Ok(false),
        }
    }
    let eb_sorted: Vec<Eigenvalue> = order.iter().map(|&j| eb[j]).collect();
    Ok(jordan_signature(a, &ea, 1e-6) == jordan_signature(b, &eb_sorted, 1e-6))
}

/// Class data for `g ∈ SL(n+1)` under twisted conjugation by θ.
pub fn analyze_class(
    g: &CMatrix,
    theta: &Automorphism,
    real: &MatrixRealization,
) -> Result<ClassDescriptor> {
    if real.blocks() != 1 {
        return Err(Error::domain("analyze_class expects SL(N), not a product"));
    }
    crate::bivector::check_special_linear(g, real)?;
    let n = real.block_dim() - 1;
    let tangent = class_tangent_space(g, theta, real, RANK_TOL)?;
    let eig = eigenvalues(g)?;
    let r_c = min_rank_shift(g, &eig, RANK_TOL);
    let l_c = r_c.min((n + 1) / 2);
    let (m_c, spherical) = match theta {
        Automorphism::Identity => {
            let m = m_l(n, l_c)?;
            let diagram = DiagramAut::identity(n);
            let sph = tangent.dim() == m.length() + rk_one_minus(&m, &diagram)?;
            (Some(m), Some(sph))
        }
        _ => (None, None),
    };
    Ok(ClassDescriptor {
        representative: g.clone(),
        n,
        theta: theta.clone(),
        dim_c: tangent.dim(),
        dim_c_borderline: tangent.rank.borderline,
        r_c,
        l_c,
        m_c,
        spherical,
        eigenvalues: eig,
    })
}

/// Sphericity criterion `dim C = l(m) + rk(1 - mθ)` for a given `m`.
pub fn spherical_by_dimension(dim_c: usize, m: &WeylElement, theta: &DiagramAut) -> Result<bool> {
    Ok(dim_c == m.length() + rk_one_minus(m, theta)?)
}

/// Largest BwB cell met by `samples` random twisted conjugates `k g θ(k)⁻¹`.
///
/// The cell of `m_C` is dense in `C`, so generic conjugates land in it; every
/// sampled cell is checked to lie below the returned element.
pub fn estimate_m_c(
    g: &CMatrix,
    theta: &Automorphism,
    group: &WeylGroup,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<WeylElement> {
    let size = g.nrows();
    let mut cells = Vec::with_capacity(samples);
    for _ in 0..samples {
        let k = sample::special_linear(size, rng);
        let x = twisted_conjugate(&k, g, theta)?;
        cells.push(bb_cell_of(&x, group)?);
    }
    let top = cells
        .iter()
        .max_by_key(|w| w.length())
        .cloned()
        .ok_or_else(|| Error::domain("no samples"))?;
    for w in &cells {
        if !bruhat_leq(w, &top)? {
            return Err(Error::numerical(
                format!("sampled cells {w} and {top} are incomparable"),
                f64::NAN,
                0.0,
            ));
        }
    }
    Ok(top)
}

#[derive(Debug, Clone, Serialize)]
pub struct LeafDescriptor {
    pub w: crate::weyl::WeylElementReport,
    pub intersection_dim: usize,
    pub leaf_dim: usize,
}

/// One row per `w ≤ m_C`: `dim(C ∩ BwB₋) = dim C − l(w)` and the T-leaf dimension
/// `dim C − l(w) − dim ker(1 + wθ)`.
pub fn leaf_table(
    class: &ClassDescriptor,
    m_c: Option<&WeylElement>,
    theta: &DiagramAut,
) -> Result<Vec<LeafDescriptor>> {
    let m = m_c.or(class.m_c.as_ref()).ok_or_else(|| {
        Error::Unsupported("m_C tables for outer automorphisms are out of scope".into())
    })?;
    let group = WeylGroup::new(m.datum().clone());
    let mut below: Vec<WeylElement> = group.bruhat_interval_below(m)?.into_iter().collect();
    below.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.word().cmp(b.word())));
    below
        .iter()
        .map(|w| {
            let intersection = class
                .dim_c
                .checked_sub(w.length())
                .ok_or_else(|| Error::domain("l(w) exceeds dim C"))?;
            let leaf = intersection
                .checked_sub(dk_one_plus(w, theta)?)
                .ok_or_else(|| Error::domain("negative leaf dimension"))?;
            Ok(LeafDescriptor {
                w: w.report(),
                intersection_dim: intersection,
                leaf_dim: leaf,
            })
        })
        .collect()
}

/// `min{rk π_θ(g) : g ∈ C} = dim C − L_θ(m_C)`.
pub fn min_rank_in_class(
    class: &ClassDescriptor,
    m_c: Option<&WeylElement>,
    theta: &DiagramAut,
) -> Result<usize> {
    let m = m_c.or(class.m_c.as_ref()).ok_or_else(|| {
        Error::Unsupported("m_C tables for outer automorphisms are out of scope".into())
    })?;
    class
        .dim_c
        .checked_sub(l_theta(m, theta)?)
        .ok_or_else(|| Error::domain("L_θ(m_C) exceeds dim C"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::numeric::{c, diag, real};
    use crate::rootdata::build_sl_realization;
    use crate::sample::rng_for;

    #[test]
    fn identity_class() {
        let r = build_sl_realization(2).unwrap();
        let d = analyze_class(&CMatrix::identity(3, 3), &Automorphism::Identity, &r).unwrap();
        assert_eq!(d.dim_c, 0);
        assert_eq!(d.r_c, 0);
        assert!(d.m_c.as_ref().unwrap().is_identity());
        assert_eq!(d.spherical, Some(true));
    }

    #[test]
    fn sl4_two_eigenvalue_class() {
        let r = build_sl_realization(3).unwrap();
        let i = c(0.0, 1.0);
        let g = diag(&[i, i, -i, -i]);
        let d = analyze_class(&g, &Automorphism::Identity, &r).unwrap();
        assert_eq!(d.r_c, 2);
        assert_eq!(d.l_c, 2);
        assert_eq!(d.m_c.as_ref().unwrap().to_string(), "(1 4)(2 3)");
        assert_eq!(d.dim_c, 8);
        assert_eq!(d.spherical, Some(true));
    }

    #[test]
    fn sl2_regular_semisimple() {
        let r = build_sl_realization(1).unwrap();
        let g = diag(&[real(2.0), real(0.5)]);
        let d = analyze_class(&g, &Automorphism::Identity, &r).unwrap();
        assert_eq!(d.dim_c, 2);
        assert_eq!(d.m_c.as_ref().unwrap().to_string(), "(1 2)");
        assert_eq!(d.spherical, Some(true));
    }

    #[test]
    fn regular_semisimple_sl3_is_not_spherical() {
        let r = build_sl_realization(2).unwrap();
        let g = diag(&[real(2.0), real(4.0), real(0.125)]);
        let d = analyze_class(&g, &Automorphism::Identity, &r).unwrap();
        assert_eq!(d.eigenvalues.len(), 3);
        assert_eq!(d.dim_c, 6);
        assert_eq!(d.spherical, Some(false));
        let theta = DiagramAut::identity(2);
        assert_eq!(min_rank_in_class(&d, None, &theta).unwrap(), 2);
        let table = leaf_table(&d, None, &theta).unwrap();
        assert_eq!(table.len(), 6);
        let top = table.iter().find(|row| row.w.length == 3).unwrap();
        assert_eq!(top.leaf_dim, 2);
    }

    #[test]
    fn central_leaf_table() {
        let r = build_sl_realization(2).unwrap();
        let d = analyze_class(&CMatrix::identity(3, 3), &Automorphism::Identity, &r).unwrap();
        let table = leaf_table(&d, None, &DiagramAut::identity(2)).unwrap();
        assert_eq!(table.len(), 1);
        assert_eq!(table[0].leaf_dim, 0);
    }

    #[test]
    fn outer_has_no_m_c() {
        let r = build_sl_realization(2).unwrap();
        let d = analyze_class(&CMatrix::identity(3, 3), &Automorphism::Outer, &r).unwrap();
        assert!(d.m_c.is_none());
        assert!(matches!(
            leaf_table(&d, None, &DiagramAut::flip(2)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn unipotent_jordan_block_has_r_c_one() {
        let r = build_sl_realization(1).unwrap();
        let u = crate::linalg::numeric::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]);
        let d = analyze_class(&u, &Automorphism::Identity, &r).unwrap();
        assert_eq!(d.r_c, 1);
        assert_eq!(d.dim_c, 2);
    }

    #[test]
    fn conjugation_invariance() {
        let r = build_sl_realization(2).unwrap();
        let g = diag(&[real(2.0), real(2.0), real(0.25)]);
        let mut rng = rng_for(8, 0);
        let h = crate::sample::special_linear(3, &mut rng);
        let x = twisted_conjugate(&h, &g, &Automorphism::Identity).unwrap();
        let a = analyze_class(&g, &Automorphism::Identity, &r).unwrap();
        let b = analyze_class(&x, &Automorphism::Identity, &r).unwrap();
        assert_eq!((a.dim_c, a.r_c, a.l_c), (b.dim_c, b.r_c, b.l_c));
        assert_eq!(a.m_c, b.m_c);
        assert!(same_conjugacy_class(&g, &x).unwrap());
        assert!(!same_conjugacy_class(&g, &CMatrix::identity(3, 3)).unwrap());
    }

    #[test]
    fn estimated_m_c_matches_formula() {
        let g = diag(&[real(2.0), real(2.0), real(0.25)]);
        let group = WeylGroup::type_a(2).unwrap();
        let m = estimate_m_c(&g, &Automorphism::Identity, &group, 8, &mut rng_for(1, 0)).unwrap();
        assert_eq!(m, m_l(2, 1).unwrap());
    }
}
