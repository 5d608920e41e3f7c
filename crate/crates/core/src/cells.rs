//! Bruhat cells of SL(N) (and blockwise of SL(N)^m): permutation
//! representatives, cell recovery from rank patterns, triangular elimination,
//! and constructive sampling inside a cell.
//!
//! `BwB` is read off from the southwest ranks
//! `r(i, j) = rank(g[rows ≥ i, cols ≤ j]) = #{k ≤ j : w(k) ≥ i}`, which are
//! invariant under left and right multiplication by upper triangular matrices.
//! `BwB₋` is reduced to it via `g ∈ BwB₋ ⇔ gẇ₀ ∈ B(ww₀)B`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::numeric::{block, block_diagonal, frobenius, inverse, CMatrix};
use crate::sample;
use crate::tol::RANK_TOL;
use crate::weyl::{WeylElement, WeylGroup};

pub fn perm_sign(p: &[usize]) -> i64 {
    if crate::weyl::inversions(p) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(p ∘ q)(k) = p(q(k))`.
pub fn perm_compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&k| p[k]).collect()
}

pub fn perm_inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (k, &v) in p.iter().enumerate() {
        inv[v] = k;
    }
    inv
}

/// Permutation matrix `e_k ↦ e_{p(k)}`, first column negated if needed for det 1.
pub fn perm_representative(p: &[usize]) -> CMatrix {
    let n = p.len();
    let mut m = CMatrix::zeros(n, n);
    for (k, &v) in p.iter().enumerate() {
        m[(v, k)] = crate::linalg::numeric::real(1.0);
    }
    if perm_sign(p) < 0 {
        m.column_mut(0).neg_mut();
    }
    m
}

/// Plain permutation matrix `e_k ↦ e_{p(k)}` (no sign correction).
pub fn perm_matrix(p: &[usize]) -> CMatrix {
    let n = p.len();
    let mut m = CMatrix::zeros(n, n);
    for (k, &v) in p.iter().enumerate() {
        m[(v, k)] = crate::linalg::numeric::real(1.0);
    }
    m
}

/// The representative `ẇ` (block-diagonal for products).
pub fn representative(w: &WeylElement) -> Result<CMatrix> {
    let perms = w
        .block_perms()
        .ok_or_else(|| Error::domain(format!("{} has no matrix representatives", w.label())))?;
    Ok(block_diagonal(
        &perms.iter().map(|p| perm_representative(p)).collect::<Vec<_>>(),
    ))
}

fn reversal(n: usize) -> Vec<usize> {
    (0..n).rev().collect()
}

fn shape(group: &WeylGroup) -> Result<(usize, usize)> {
    group
        .datum()
        .matrix_shape()
        .ok_or_else(|| Error::domain(format!("{} has no matrix realization", group.label())))
}

fn check_size(g: &CMatrix, size: usize, blocks: usize) -> Result<()> {
    if g.nrows() != size * blocks || g.ncols() != size * blocks {
        return Err(Error::domain(format!(
            "expected a {0}×{0} matrix, got {1}×{2}",
            size * blocks,
            g.nrows(),
            g.ncols()
        )));
    }
    Ok(())
}

/// Rank with an absolute singular-value cutoff.
fn rank_above(m: &CMatrix, threshold: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .filter(|&&s| s >= threshold)
        .count()
}

/// The permutation `u` with `k ∈ B u B` (single square block).
pub fn bb_permutation(k: &CMatrix) -> Result<Vec<usize>> {
    let n = k.nrows();
    let threshold = RANK_TOL * frobenius(k).max(1.0);
    // r[i][j] = rank(rows i.., cols ..j), 0 ≤ i, j ≤ n.
    let mut r = vec![vec![0usize; n + 1]; n + 1];
    for i in 0..n {
        for j in 1..=n {
            let sub = k.view((i, 0), (n - i, j)).into_owned();
            r[i][j] = rank_above(&sub, threshold);
        }
    }
    let mut u = vec![usize::MAX; n];
    let mut row_used = vec![false; n];
    for j in 0..n {
        for i in 0..n {
            let d = r[i][j + 1] as i64 - r[i][j] as i64 - r[i + 1][j + 1] as i64 + r[i + 1][j] as i64;
            match d {
                0 => {}
                1 if u[j] == usize::MAX && !row_used[i] => {
                    u[j] = i;
                    row_used[i] = true;
                }
                _ => {
                    return Err(Error::numerical(
                        "southwest rank pattern is not a permutation pattern",
                        d as f64,
                        threshold,
                    ))
                }
            }
        }
        if u[j] == usize::MAX {
            return Err(Error::numerical(
                "southwest rank pattern has an empty column (matrix is singular)",
                0.0,
                threshold,
            ));
        }
    }
    Ok(u)
}

/// `w` with `g ∈ B w B`, blockwise.
pub fn bb_cell_of(g: &CMatrix, group: &WeylGroup) -> Result<WeylElement> {
    let (size, blocks) = shape(group)?;
    check_size(g, size, blocks)?;
    let perms = (0..blocks)
        .map(|b| bb_permutation(&block(g, b, size)))
        .collect::<Result<Vec<_>>>()?;
    group.from_block_perms(&perms)
}

/// `w` with `g ∈ B w B₋`, blockwise.
pub fn bruhat_cell_of(g: &CMatrix, group: &WeylGroup) -> Result<WeylElement> {
    let (size, blocks) = shape(group)?;
    check_size(g, size, blocks)?;
    let w0 = reversal(size);
    let w0_dot = perm_representative(&w0);
    let perms = (0..blocks)
        .map(|b| {
            let u = bb_permutation(&(block(g, b, size) * &w0_dot))?;
            Ok(perm_compose(&u, &w0))
        })
        .collect::<Result<Vec<_>>>()?;
    group.from_block_perms(&perms)
}

/// `v` with `g ∈ B₋ v B₋`, blockwise (`J B₋ J = B` for the reversal `J`).
pub fn bminus_cell_of(g: &CMatrix, group: &WeylGroup) -> Result<WeylElement> {
    let (size, blocks) = shape(group)?;
    check_size(g, size, blocks)?;
    let w0 = reversal(size);
    let j = perm_matrix(&w0);
    let perms = (0..blocks)
        .map(|b| {
            let u = bb_permutation(&(&j * block(g, b, size) * &j))?;
            Ok(perm_compose(&perm_compose(&w0, &u), &w0))
        })
        .collect::<Result<Vec<_>>>()?;
    group.from_block_perms(&perms)
}

pub fn in_bwb(g: &CMatrix, w: &WeylElement, group: &WeylGroup) -> Result<bool> {
    Ok(bb_cell_of(g, group)? == *w)
}

pub fn in_bwb_minus(g: &CMatrix, w: &WeylElement, group: &WeylGroup) -> Result<bool> {
    Ok(bruhat_cell_of(g, group)? == *w)
}

pub fn in_bminus_v_bminus(g: &CMatrix, v: &WeylElement, group: &WeylGroup) -> Result<bool> {
    Ok(bminus_cell_of(g, group)? == *v)
}

/// For `k ∈ B u B`, the monomial middle factor `D` of `k = n D n′` with
/// `n, n′` upper unitriangular. Fails if `k` is not in the cell.
pub fn bruhat_factor(k: &CMatrix, u: &[usize]) -> Result<CMatrix> {
    let n = k.nrows();
    if u.len() != n || k.ncols() != n {
        return Err(Error::domain("permutation and matrix sizes differ"));
    }
    let scale = frobenius(k).max(1.0);
    let tol = RANK_TOL * scale;
    let mut m = k.clone();
    for j in 0..n {
        let p = u[j];
        for r in p + 1..n {
            if m[(r, j)].norm() > tol {
                return Err(Error::domain(format!(
                    "matrix is not in the Bruhat cell: entry ({}, {}) below the pivot is {:.3e}",
                    r + 1,
                    j + 1,
                    m[(r, j)].norm()
                )));
            }
            m[(r, j)] = crate::linalg::numeric::real(0.0);
        }
        let pivot = m[(p, j)];
        if pivot.norm() <= tol {
            return Err(Error::domain(format!(
                "matrix is not in the Bruhat cell: pivot ({}, {}) vanishes",
                p + 1,
                j + 1
            )));
        }
        // Clear column j above the pivot with lower rows (left upper unitriangular).
        for r in 0..p {
            let f = m[(r, j)] / pivot;
            if f.norm() != 0.0 {
                for c in 0..n {
                    let v = m[(p, c)];
                    m[(r, c)] -= f * v;
                }
            }
        }
        // Clear row p to the right with column j (right upper unitriangular).
        for c in j + 1..n {
            let f = m[(p, c)] / pivot;
            if f.norm() != 0.0 {
                for r in 0..n {
                    let v = m[(r, j)];
                    m[(r, c)] -= f * v;
                }
            }
        }
    }
    let mut d = CMatrix::zeros(n, n);
    for j in 0..n {
        d[(u[j], j)] = m[(u[j], j)];
    }
    let resid = frobenius(&(m - &d));
    if resid > tol {
        return Err(Error::numerical("Bruhat elimination residual", resid / scale, RANK_TOL));
    }
    Ok(d)
}

fn diagonal_part(m: &CMatrix, what: &str) -> Result<CMatrix> {
    let n = m.nrows();
    let scale = frobenius(m).max(1.0);
    let mut off = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                off = off.max(m[(i, j)].norm());
            }
        }
    }
    if off > RANK_TOL * scale {
        return Err(Error::numerical(what.to_string(), off / scale, RANK_TOL));
    }
    Ok(CMatrix::from_diagonal(&m.diagonal()))
}

/// `τ_ẇ(g) = h` for `g = n h ẇ m`, `n ∈ N`, `m ∈ N₋` (single block).
pub fn tau_w(g: &CMatrix, w: &WeylElement) -> Result<CMatrix> {
    let p = w
        .perm()
        .ok_or_else(|| Error::domain("τ_ẇ is implemented for SL(N)"))?;
    let n = p.len();
    check_size(g, n, 1)?;
    let w0 = reversal(n);
    let w0_dot = perm_representative(&w0);
    let u = perm_compose(&p, &w0);
    let d = bruhat_factor(&(g * &w0_dot), &u)?;
    // g ẇ₀ = n · h ẇ ẇ₀ · (ẇ₀⁻¹ m ẇ₀), so D = h ẇ ẇ₀.
    let ww0 = perm_representative(&p) * &w0_dot;
    let h = d * inverse(&ww0)?;
    diagonal_part(&h, "torus part of the Bruhat factorization is not diagonal")
}

/// `h_u(k) = h` for `k = n ū h n′ ∈ B u B` (single block).
pub fn h_u(k: &CMatrix, u: &WeylElement) -> Result<CMatrix> {
    let p = u
        .perm()
        .ok_or_else(|| Error::domain("h_u is implemented for SL(N)"))?;
    let d = bruhat_factor(k, &p)?;
    let h = inverse(&perm_representative(&p))? * d;
    diagonal_part(&h, "torus part of the B u B factorization is not diagonal")
}

/// `h′_v(k) = h′` for `k = n₋ v̄ h′ n₋′ ∈ B₋ v B₋` (single block).
pub fn h_prime_v(k: &CMatrix, v: &WeylElement) -> Result<CMatrix> {
    let p = v
        .perm()
        .ok_or_else(|| Error::domain("h′_v is implemented for SL(N)"))?;
    let n = p.len();
    let w0 = reversal(n);
    let j = perm_matrix(&w0);
    let conj = perm_compose(&perm_compose(&w0, &p), &w0);
    let d = bruhat_factor(&(&j * k * &j), &conj)?;
    let h = inverse(&perm_representative(&p))? * (&j * d * &j);
    diagonal_part(&h, "torus part of the B₋ v B₋ factorization is not diagonal")
}

/// `g = n t ẇ m ∈ B w B₋` with `n ∈ N`, `t ∈ T`, `m ∈ N₋` random (blockwise).
pub fn sample_in_cell(w: &WeylElement, rng: &mut impl Rng) -> Result<CMatrix> {
    let perms = w
        .block_perms()
        .ok_or_else(|| Error::domain(format!("{} has no matrix representatives", w.label())))?;
    let blocks: Vec<CMatrix> = perms
        .iter()
        .map(|p| {
            let n = p.len();
            sample::unipotent_upper(n, rng)
                * sample::torus(n, rng)
                * perm_representative(p)
                * sample::unipotent_lower(n, rng)
        })
        .collect();
    Ok(block_diagonal(&blocks))
}

/// `g = n ẇ t n′ ∈ B w B` (blockwise).
pub fn sample_in_bb_cell(w: &WeylElement, rng: &mut impl Rng) -> Result<CMatrix> {
    let perms = w
        .block_perms()
        .ok_or_else(|| Error::domain(format!("{} has no matrix representatives", w.label())))?;
    let blocks: Vec<CMatrix> = perms
        .iter()
        .map(|p| {
            let n = p.len();
            sample::unipotent_upper(n, rng)
                * perm_representative(p)
                * sample::torus(n, rng)
                * sample::unipotent_upper(n, rng)
        })
        .collect();
    Ok(block_diagonal(&blocks))
}

/// `g = n₋ v̄ t n₋′ ∈ B₋ v B₋` (blockwise).
pub fn sample_in_bminus_cell(v: &WeylElement, rng: &mut impl Rng) -> Result<CMatrix> {
    let perms = v
        .block_perms()
        .ok_or_else(|| Error::domain(format!("{} has no matrix representatives", v.label())))?;
    let blocks: Vec<CMatrix> = perms
        .iter()
        .map(|p| {
            let n = p.len();
            sample::unipotent_lower(n, rng)
                * perm_representative(p)
                * sample::torus(n, rng)
                * sample::unipotent_lower(n, rng)
        })
        .collect();
    Ok(block_diagonal(&blocks))
}
