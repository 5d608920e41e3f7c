//! G^m with the cyclic shift, the Drinfeld double `Π_st = R^r − R^l` on G×G,
//! the isomorphism `(g₁, g₂) ↦ (g₁, g₂⁻¹)` between the two, and double Bruhat
//! cells attached to conjugacy classes.

use nalgebra::DVector;
use rand::Rng;
use serde::Serialize;

use crate::bivector::{
    adjoint, check_special_linear, evaluate_bivector, Automorphism, TrivializedBivector,
};
use crate::cartan::{rk_one_minus, CartanOperator};
use crate::cells::{bb_cell_of, bminus_cell_of, h_prime_v, h_u, representative};
use crate::classes::{analyze_class, same_conjugacy_class, ClassDescriptor};
use crate::error::{Error, Result};
use crate::linalg::exact::IntMatrix;
use crate::linalg::numeric::{
    block, block_diagonal, frobenius, inverse, numerical_rank, real, trace, CMatrix, C64,
};
use crate::rootdata::{build_product_realization, build_sl_realization, MatrixRealization, TypeLabel};
use crate::sample;
use crate::tol::RANK_TOL;
use crate::weyl::{DiagramAut, WeylElement, WeylElementReport, WeylGroup};

/// `μ_m(g_1, …, g_m) = g_1 g_2 ⋯ g_m`.
pub fn mu_n(tuple: &[CMatrix]) -> Result<CMatrix> {
    let first = tuple.first().ok_or_else(|| Error::domain("empty tuple"))?;
    let size = first.nrows();
    let mut p = CMatrix::identity(size, size);
    for g in tuple {
        if g.nrows() != size || g.ncols() != size {
            return Err(Error::domain("tuple components have different sizes"));
        }
        p *= g;
    }
    Ok(p)
}

/// The θ̃-twisted class `μ_m⁻¹(C)` in G^m.
#[derive(Debug, Clone)]
pub struct TupleClassDescriptor {
    pub copies: usize,
    pub base: ClassDescriptor,
    /// `dim C + (m − 1) dim G`.
    pub dim: usize,
}

impl TupleClassDescriptor {
    pub fn from_class(base: ClassDescriptor, copies: usize) -> Result<Self> {
        if copies == 0 {
            return Err(Error::domain("at least one copy is needed"));
        }
        let n = base.n;
        let dim_g = (n + 1) * (n + 1) - 1;
        Ok(TupleClassDescriptor {
            copies,
            dim: base.dim_c + (copies - 1) * dim_g,
            base,
        })
    }

    /// `(g_1..g_m) ∈ C̃` iff `g_1 ⋯ g_m ∈ C`.
    pub fn contains(&self, tuple: &[CMatrix]) -> Result<bool> {
        if tuple.len() != self.copies {
            return Ok(false);
        }
        same_conjugacy_class(&mu_n(tuple)?, &self.base.representative)
    }
}

pub fn tuple_class(tuple: &[CMatrix]) -> Result<TupleClassDescriptor> {
    let p = mu_n(tuple)?;
    let real = build_sl_realization(p.nrows() - 1)?;
    for g in tuple {
        check_special_linear(g, &real)?;
    }
    let base = analyze_class(&p, &Automorphism::Identity, &real)?;
    TupleClassDescriptor::from_class(base, tuple.len())
}

/// `dim C + (m−1) dim G − Σ l(w_i) − dim ker(1 − (−1)^m w_1 ⋯ w_m)`, exactly.
pub fn tuple_leaf_dim(class: &ClassDescriptor, ws: &[WeylElement]) -> Result<usize> {
    let m = ws.len();
    let first = ws.first().ok_or_else(|| Error::domain("empty Weyl tuple"))?;
    if first.label() != TypeLabel::A(class.n) {
        return Err(Error::domain(format!(
            "Weyl elements of {} do not match SL({})",
            first.label(),
            class.n + 1
        )));
    }
    let mut prod = first.clone();
    for w in &ws[1..] {
        prod = prod.compose(w)?;
    }
    let k = class.n;
    // 1 − (−1)^m w: for odd m this is 1 + w.
    let signed = if m % 2 == 0 { prod.action().clone() } else { -prod.action() };
    let op = &IntMatrix::identity(k) - &signed;
    let kernel = op.dim_ker();
    let tuple = TupleClassDescriptor::from_class(class.clone(), m)?;
    let lengths: usize = ws.iter().map(|w| w.length()).sum();
    tuple
        .dim
        .checked_sub(lengths + kernel)
        .ok_or_else(|| Error::domain("lengths exceed the class dimension"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SphericalCertificate {
    pub copies: usize,
    pub tuple_class_dim: usize,
    /// `Σ l(w_0) + rk(1 − (w_0, …, w_0) θ̃)`.
    pub predicted: usize,
    pub spherical: bool,
}

/// Sphericity of `μ_m⁻¹(C)` by the dimension criterion with `m_C̃ = (w_0, …, w_0)`.
pub fn tuple_spherical_check(copies: usize, class: &ClassDescriptor) -> Result<SphericalCertificate> {
    let tuple = TupleClassDescriptor::from_class(class.clone(), copies)?;
    let group = WeylGroup::of_type(TypeLabel::ProductA {
        n: class.n,
        copies,
    })?;
    let w0 = group.longest();
    let theta = DiagramAut::cyclic_shift(class.n, copies);
    let predicted = w0.length() + rk_one_minus(&w0, &theta)?;
    Ok(SphericalCertificate {
        copies,
        tuple_class_dim: tuple.dim,
        predicted,
        spherical: tuple.dim == predicted,
    })
}

/// `R = Σ (y_i,0)∧(0,y_i) + Σ_α (E_α,0)∧(0,E_{−α})
///      + ½ Σ_α ((E_α,0)∧(E_{−α},0) + (0,E_α)∧(0,E_{−α}))` over `real`.
fn double_r_matrix(pair: &MatrixRealization) -> Result<CMatrix> {
    let size = pair.block_dim();
    let d = pair.dim();
    let zero = CMatrix::zeros(size, size);
    let first = |x: &CMatrix| pair.coordinates(&block_diagonal(&[x.clone(), zero.clone()]));
    let second = |x: &CMatrix| pair.coordinates(&block_diagonal(&[zero.clone(), x.clone()]));
    let one = build_sl_realization(size - 1)?;
    let mut p = CMatrix::zeros(d, d);
    let mut add = |u: DVector<C64>, v: DVector<C64>, s: f64| p.ger(real(s), &u, &v, real(1.0));
    for i in 0..one.cartan_dim() {
        let y = one.y(i);
        add(first(y)?, second(y)?, 1.0);
    }
    for r in 0..one.num_positive_roots() {
        let e_pos = &one.basis()[one.positive_index(r)];
        let e_neg = &one.basis()[one.negative_index(r)];
        add(first(e_pos)?, second(e_neg)?, 1.0);
        add(first(e_pos)?, first(e_neg)?, 0.5);
        add(second(e_pos)?, second(e_neg)?, 0.5);
    }
    Ok(&p - p.transpose())
}

/// Right-trivialized `Π_st(g₁, g₂) = R − (Ad ∧ Ad) R` on G×G.
pub fn evaluate_pist(g1: &CMatrix, g2: &CMatrix) -> Result<TrivializedBivector> {
    if g1.nrows() != g2.nrows() || g1.nrows() < 2 {
        return Err(Error::domain("Π_st needs two SL(N) matrices of equal size N ≥ 2"));
    }
    let real = build_product_realization(g1.nrows() - 1, 2)?;
    let point = block_diagonal(&[g1.clone(), g2.clone()]);
    check_special_linear(&point, &real)?;
    let r = double_r_matrix(&real)?;
    let ad = adjoint(&point, &real)?;
    let coefficients = &r - &ad * &r * ad.transpose();
    let rank = numerical_rank(&coefficients, RANK_TOL);
    Ok(TrivializedBivector {
        point,
        coefficients,
        rank,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DoubleIsoReport {
    /// `‖τ_* π̃ − r_* Π_st‖ / max(‖τ_* π̃‖, ‖r_* Π_st‖, 1)`.
    pub residual: f64,
    pub norm: f64,
}

/// Compares `τ_* π̃(g₁, g₂)` with the right translate by `(ẇ₀, ẇ₀)` of `Π_st`,
/// both at `τ(g₁, g₂) = (g₁, g₂⁻¹)`.
///
/// Right translation leaves right-trivialized coefficients unchanged, so the
/// second side is `Π_st(g₁ ẇ₀⁻¹, g₂⁻¹ ẇ₀⁻¹)`. The differential of `τ` in right
/// trivialization is `(x₁, x₂) ↦ (x₁, −Ad_{g₂⁻¹} x₂)`.
pub fn verify_double_iso(g1: &CMatrix, g2: &CMatrix) -> Result<DoubleIsoReport> {
    let size = g1.nrows();
    if g2.nrows() != size || size < 2 {
        return Err(Error::domain("expected two SL(N) matrices of equal size N ≥ 2"));
    }
    let n = size - 1;
    let real = build_product_realization(n, 2)?;
    let point = block_diagonal(&[g1.clone(), g2.clone()]);
    let pi = evaluate_bivector(&point, &Automorphism::CyclicShift { copies: 2 }, &real)?;
    let g2_inv = inverse(g2)?;
    let a_tau = real.operator_matrix(|x| {
        let x1 = block(x, 0, size);
        let x2 = block(x, 1, size);
        block_diagonal(&[x1, -(&g2_inv * x2 * g2)])
    })?;
    let lhs = &a_tau * &pi.coefficients * a_tau.transpose();
    let w0_inv = inverse(&representative(&WeylGroup::type_a(n)?.longest())?)?;
    let rhs = evaluate_pist(&(g1 * &w0_inv), &(&g2_inv * &w0_inv))?.coefficients;
    let norm = frobenius(&lhs).max(frobenius(&rhs));
    Ok(DoubleIsoReport {
        residual: frobenius(&(&lhs - &rhs)) / norm.max(1.0),
        norm,
    })
}

/// Dimensions attached to `G^{u,v}_C = {(k₁,k₂) ∈ BuB × B₋vB₋ : k₁k₂⁻¹ ∈ C}`.
#[derive(Debug, Clone, Serialize)]
pub struct DoubleCellDescriptor {
    pub u: WeylElementReport,
    pub v: WeylElementReport,
    pub dim_c: usize,
    /// `dim C + l(u) + l(v) + dim T`.
    pub cell_dim: usize,
    /// `dim C + l(u) + l(v) + rk(1 − uv⁻¹)`.
    pub leaf_dim: usize,
}

pub fn double_cell(u: &WeylElement, v: &WeylElement, class: &ClassDescriptor) -> Result<DoubleCellDescriptor> {
    if u.label() != v.label() || u.label() != TypeLabel::A(class.n) {
        return Err(Error::domain("u, v and C must live in the same SL(N)"));
    }
    let base = class.dim_c + u.length() + v.length();
    let uv = u.compose(&v.inverse())?;
    Ok(DoubleCellDescriptor {
        u: u.report(),
        v: v.report(),
        dim_c: class.dim_c,
        cell_dim: base + class.n,
        leaf_dim: base + rk_one_minus(&uv, &DiagramAut::identity(class.n))?,
    })
}

/// `dim T_{u,v}` as the rank of `v⁻¹ − u⁻¹` on h*.
pub fn t_uv_dim(u: &WeylElement, v: &WeylElement) -> Result<usize> {
    if u.label() != v.label() {
        return Err(Error::domain("u and v from different Weyl groups"));
    }
    let diff = v.inverse().action() - u.inverse().action();
    Ok(CartanOperator::new(diff, "v⁻¹ − u⁻¹")?.rank())
}

/// Cells, class and torus parts of a point of the double.
#[derive(Debug, Clone)]
pub struct DoubleCellPoint {
    pub u: WeylElement,
    pub v: WeylElement,
    pub class: ClassDescriptor,
    /// `h_u(k₁)`.
    pub h: CMatrix,
    /// `h′_v(k₂)`.
    pub h_prime: CMatrix,
    pub descriptor: DoubleCellDescriptor,
}

pub fn locate_double_cell(k1: &CMatrix, k2: &CMatrix) -> Result<DoubleCellPoint> {
    let size = k1.nrows();
    let real = build_sl_realization(size - 1)?;
    check_special_linear(k1, &real)?;
    check_special_linear(k2, &real)?;
    let group = WeylGroup::type_a(size - 1)?;
    let u = bb_cell_of(k1, &group)?;
    let v = bminus_cell_of(k2, &group)?;
    let class = analyze_class(&(k1 * inverse(k2)?), &Automorphism::Identity, &real)?;
    let descriptor = double_cell(&u, &v, &class)?;
    Ok(DoubleCellPoint {
        h: h_u(k1, &u)?,
        h_prime: h_prime_v(k2, &v)?,
        u,
        v,
        class,
        descriptor,
    })
}

/// Checks that `(k₁, k₂)` lies in `G^{u,v}_C`; domain error otherwise.
pub fn check_double_cell_membership(
    k1: &CMatrix,
    k2: &CMatrix,
    u: &WeylElement,
    v: &WeylElement,
    class_rep: &CMatrix,
) -> Result<DoubleCellPoint> {
    let p = locate_double_cell(k1, k2)?;
    if &p.u != u || &p.v != v {
        return Err(Error::domain(format!(
            "point lies in the cell ({}, {}), not ({u}, {v})",
            p.u, p.v
        )));
    }
    if !same_conjugacy_class(&(k1 * inverse(k2)?), class_rep)? {
        return Err(Error::domain("k₁k₂⁻¹ is not in the requested class"));
    }
    Ok(p)
}

/// `k ∈ B u B ∩ B₋ v B₋` in SL(2): lower-left entry nonzero iff `u = w₀`,
/// upper-right nonzero iff `v = w₀`.
fn sl2_intersection_point(u_top: bool, v_top: bool, rng: &mut impl Rng) -> CMatrix {
    let a = sample::nonzero(rng);
    let b = if v_top { sample::nonzero(rng) } else { real(0.0) };
    let c = if u_top { sample::nonzero(rng) } else { real(0.0) };
    let d = (real(1.0) + b * c) / a;
    CMatrix::from_row_slice(2, 2, &[a, b, c, d])
}

/// A random point of `G^{u,v}_C` in SL(2)².
///
/// For central `C = {z}` this is `(z k, k)` with `k ∈ BuB ∩ B₋vB₋`. Otherwise
/// `k₂ ∈ B₋vB₋` and `k₁ = x(s) t ū n′` are random and the upper unipotent
/// parameter `s`, on which `tr(k₁k₂⁻¹)` depends affinely, is solved for the
/// trace of `C`.
pub fn sample_sl2_double_cell(
    u: &WeylElement,
    v: &WeylElement,
    class_rep: &CMatrix,
    rng: &mut impl Rng,
) -> Result<(CMatrix, CMatrix)> {
    let (pu, pv) = match (u.perm(), v.perm()) {
        (Some(pu), Some(pv)) if pu.len() == 2 && pv.len() == 2 => (pu, pv),
        _ => return Err(Error::Unsupported("double-cell sampling is implemented for SL(2)".into())),
    };
    let (u_top, v_top) = (pu[0] == 1, pv[0] == 1);
    let scalar = class_rep[(0, 1)].norm() == 0.0
        && class_rep[(1, 0)].norm() == 0.0
        && (class_rep[(0, 0)] - class_rep[(1, 1)]).norm() == 0.0;
    if scalar {
        let k = sl2_intersection_point(u_top, v_top, rng);
        return Ok((class_rep * &k, k));
    }
    let target = trace(class_rep);
    let group = WeylGroup::type_a(1)?;
    for _ in 0..64 {
        let k2 = crate::cells::sample_in_bminus_cell(v, rng)?;
        let m = sample::torus(2, rng) * representative(u)? * sample::unipotent_upper(2, rng);
        let p = &m * inverse(&k2)?;
        if p[(1, 0)].norm() < 1e-3 {
            continue;
        }
        let s = (target - trace(&p)) / p[(1, 0)];
        let x = CMatrix::from_row_slice(2, 2, &[real(1.0), s, real(0.0), real(1.0)]);
        let k1 = x * m;
        let prod = &k1 * inverse(&k2)?;
        if bb_cell_of(&k1, &group)? == *u && same_conjugacy_class(&prod, class_rep)? {
            return Ok((k1, k2));
        }
    }
    Err(Error::numerical("could not hit the requested class", f64::NAN, 0.0))
}
