//! Root systems of type A_n and D_4, and the matrix realization of sl(N) (and
//! block-diagonal products of copies of it).
//!
//! The invariant bilinear form on the matrix side is the trace form
//! `⟨X, Y⟩ = tr(XY)`, not the Killing form. The bivector built from dual bases
//! only changes by a global scalar under a rescaling of the form, so ranks and
//! zero loci are unaffected.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::exact::IntMatrix;
use crate::linalg::numeric::{frobenius, real, CMatrix, C64};
use crate::tol::COORD_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeLabel {
    /// A_n, n ≥ 1 (Weyl group S_{n+1}).
    A(usize),
    D4,
    /// `copies` orthogonal copies of A_n (the root system of SL(n+1)^copies).
    ProductA { n: usize, copies: usize },
}

impl std::fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TypeLabel::A(n) => write!(f, "A{n}"),
            TypeLabel::D4 => write!(f, "D4"),
            TypeLabel::ProductA { n, copies } => write!(f, "A{n}^{copies}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    label: TypeLabel,
    cartan: IntMatrix,
    positive_roots: Vec<Vec<i64>>,
    simple_reflections: Vec<IntMatrix>,
}

/// Build the root datum for `label`.
pub fn build_root_datum(label: TypeLabel) -> Result<RootDatum> {
    let (cartan, positive_roots) = match label {
        TypeLabel::A(n) => {
            if n == 0 {
                return Err(Error::Config("A_n requires n ≥ 1".into()));
            }
            (cartan_a(n), positive_roots_a(n))
        }
        TypeLabel::D4 => {
            let cartan = IntMatrix::from_rows(&[
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, -1],
                vec![0, -1, 2, 0],
                vec![0, -1, 0, 2],
            ]);
            let roots = positive_roots_by_closure(&cartan);
            (cartan, roots)
        }
        TypeLabel::ProductA { n, copies } => {
            if n == 0 || copies == 0 {
                return Err(Error::Config(
                    "product of A_n requires n ≥ 1 and at least one copy".into(),
                ));
            }
            let blocks = vec![cartan_a(n); copies];
            let single = positive_roots_a(n);
            let roots = (0..copies)
                .flat_map(|b| {
                    single.iter().map(move |r| {
                        let mut v = vec![0; n * copies];
                        v[b * n..(b + 1) * n].copy_from_slice(r);
                        v
                    })
                })
                .collect();
            (IntMatrix::block_diagonal(&blocks), roots)
        }
    };
    let k = cartan.nrows();
    let simple_reflections = (0..k)
        .map(|i| {
            IntMatrix::from_fn(k, k, |r, c| {
                let id = (r == c) as i64;
                if r == i {
                    id - cartan[(i, c)]
                } else {
                    id
                }
            })
        })
        .collect();
    Ok(RootDatum {
        label,
        cartan,
        positive_roots,
        simple_reflections,
    })
}

fn cartan_a(n: usize) -> IntMatrix {
    IntMatrix::from_fn(n, n, |i, j| match i.abs_diff(j) {
        0 => 2,
        1 => -1,
        _ => 0,
    })
}

/// α_i + … + α_j for 1 ≤ i ≤ j ≤ n, ordered lexicographically in (i, j).
fn positive_roots_a(n: usize) -> Vec<Vec<i64>> {
    let mut roots = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            roots.push((0..n).map(|k| (i <= k && k <= j) as i64).collect());
        }
    }
    roots
}

/// Orbit of the simple roots under the simple reflections, keeping the positive half,
/// sorted by height and then lexicographically.
fn positive_roots_by_closure(cartan: &IntMatrix) -> Vec<Vec<i64>> {
    let k = cartan.nrows();
    let mut roots: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| (i == j) as i64).collect())
        .collect();
    let mut frontier = roots.clone();
    while let Some(r) = frontier.pop() {
        for i in 0..k {
            // s_i(r) = r - ⟨r, α_i^∨⟩ α_i
            let pairing: i64 = (0..k).map(|j| cartan[(i, j)] * r[j]).sum();
            let mut s = r.clone();
            s[i] -= pairing;
            if s.iter().all(|&x| x >= 0) && !roots.contains(&s) {
                roots.push(s.clone());
                frontier.push(s);
            }
        }
    }
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    roots
}

impl RootDatum {
    pub fn label(&self) -> TypeLabel {
        self.label
    }

    /// dim h.
    pub fn rank(&self) -> usize {
        self.cartan.nrows()
    }

    pub fn cartan_matrix(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn longest_element_length(&self) -> usize {
        self.positive_roots.len()
    }

    /// Action of the simple reflection `s_i` on h* in the simple-root basis.
    pub fn simple_reflection(&self, i: usize) -> &IntMatrix {
        &self.simple_reflections[i]
    }

    /// Reflection `s_β` on h* in the simple-root basis (simply-laced: ⟨β, β⟩ = 2).
    pub fn reflection(&self, beta: &[i64]) -> IntMatrix {
        let k = self.rank();
        let a_beta = self.cartan.apply(beta);
        IntMatrix::from_fn(k, k, |i, j| (i == j) as i64 - beta[i] * a_beta[j])
    }

    /// The W-invariant form on h* in the simple-root basis.
    pub fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        let ay = self.cartan.apply(y);
        x.iter().zip(&ay).map(|(a, b)| a * b).sum()
    }

    /// For matrix types: (block size N, number of blocks).
    pub fn matrix_shape(&self) -> Option<(usize, usize)> {
        match self.label {
            TypeLabel::A(n) => Some((n + 1, 1)),
            TypeLabel::ProductA { n, copies } => Some((n + 1, copies)),
            TypeLabel::D4 => None,
        }
    }
}

/// Role of a basis element of the matrix realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisKind {
    Cartan(usize),
    Positive(usize),
    Negative(usize),
}

/// sl(N)^blocks realized as block-diagonal traceless matrices, with basis
/// `(y_1..y_k, E_α (α > 0), E_{-α} (α > 0))`.
#[derive(Debug, Clone)]
pub struct MatrixRealization {
    datum: RootDatum,
    block_dim: usize,
    blocks: usize,
    /// Orthonormal (under 2·tr) traceless diagonals of one block.
    y_block: Vec<Vec<f64>>,
    /// Matrix position (row, col) of `E_α` for each positive root, in the full matrix.
    root_positions: Vec<(usize, usize)>,
    basis: Vec<CMatrix>,
    kinds: Vec<BasisKind>,
}

/// Realization of sl(n+1).
pub fn build_sl_realization(n: usize) -> Result<MatrixRealization> {
    MatrixRealization::new(build_root_datum(TypeLabel::A(n))?)
}

/// Realization of sl(n+1)^copies, block-diagonally.
pub fn build_product_realization(n: usize, copies: usize) -> Result<MatrixRealization> {
    MatrixRealization::new(build_root_datum(TypeLabel::ProductA { n, copies })?)
}

impl MatrixRealization {
    pub fn new(datum: RootDatum) -> Result<Self> {
        let (block_dim, blocks) = datum.matrix_shape().ok_or_else(|| {
            Error::Config(format!("no matrix realization for type {}", datum.label()))
        })?;
        let n = block_dim - 1;
        let y_block = orthonormal_cartan_basis(block_dim);
        let size = block_dim * blocks;

        let mut root_positions = Vec::with_capacity(datum.positive_roots().len());
        for b in 0..blocks {
            for i in 0..n {
                for j in i..n {
                    root_positions.push((b * block_dim + i, b * block_dim + j + 1));
                }
            }
        }

        let mut basis = Vec::new();
        let mut kinds = Vec::new();
        for b in 0..blocks {
            for (i, y) in y_block.iter().enumerate() {
                let mut m = CMatrix::zeros(size, size);
                for (t, &v) in y.iter().enumerate() {
                    m[(b * block_dim + t, b * block_dim + t)] = real(v);
                }
                basis.push(m);
                kinds.push(BasisKind::Cartan(b * n + i));
            }
        }
        for (r, &(i, j)) in root_positions.iter().enumerate() {
            let mut m = CMatrix::zeros(size, size);
            m[(i, j)] = real(1.0);
            basis.push(m);
            kinds.push(BasisKind::Positive(r));
        }
        for (r, &(i, j)) in root_positions.iter().enumerate() {
            let mut m = CMatrix::zeros(size, size);
            m[(j, i)] = real(1.0);
            basis.push(m);
            kinds.push(BasisKind::Negative(r));
        }
        Ok(MatrixRealization {
            datum,
            block_dim,
            blocks,
            y_block,
            root_positions,
            basis,
            kinds,
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    /// N for sl(N).
    pub fn block_dim(&self) -> usize {
        self.block_dim
    }

    pub fn blocks(&self) -> usize {
        self.blocks
    }

    /// Size of the matrices (N · blocks).
    pub fn matrix_size(&self) -> usize {
        self.block_dim * self.blocks
    }

    /// dim g.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// dim h.
    pub fn cartan_dim(&self) -> usize {
        self.datum.rank()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.root_positions.len()
    }

    pub fn basis(&self) -> &[CMatrix] {
        &self.basis
    }

    pub fn kinds(&self) -> &[BasisKind] {
        &self.kinds
    }

    pub fn y(&self, i: usize) -> &CMatrix {
        &self.basis[i]
    }

    /// Index of `E_α` in the basis.
    pub fn positive_index(&self, root: usize) -> usize {
        self.cartan_dim() + root
    }

    /// Index of `E_{-α}` in the basis.
    pub fn negative_index(&self, root: usize) -> usize {
        self.cartan_dim() + self.num_positive_roots() + root
    }

    pub fn root_position(&self, root: usize) -> (usize, usize) {
        self.root_positions[root]
    }

    /// The trace form `tr(XY)`.
    pub fn form(&self, x: &CMatrix, y: &CMatrix) -> C64 {
        (x * y).trace()
    }

    /// Gram matrix of the basis under the trace form.
    pub fn gram(&self) -> CMatrix {
        let d = self.dim();
        CMatrix::from_fn(d, d, |i, j| self.form(&self.basis[i], &self.basis[j]))
    }

    pub fn reconstruct(&self, coords: &DVector<C64>) -> CMatrix {
        let size = self.matrix_size();
        let mut m = CMatrix::zeros(size, size);
        for (c, b) in coords.iter().zip(&self.basis) {
            m += b * *c;
        }
        m
    }

    /// Coefficients of `v` over the basis.
    pub fn coordinates(&self, v: &CMatrix) -> Result<DVector<C64>> {
        let size = self.matrix_size();
        if v.nrows() != size || v.ncols() != size {
            return Err(Error::domain(format!(
                "expected a {size}×{size} matrix, got {}×{}",
                v.nrows(),
                v.ncols()
            )));
        }
        let scale = frobenius(v).max(1.0);
        let n = self.block_dim;
        let k = n - 1;
        let mut out = DVector::zeros(self.dim());

        for b in 0..self.blocks {
            let off = b * n;
            let tr: C64 = (0..n).map(|t| v[(off + t, off + t)]).sum();
            if tr.norm() > COORD_TOL * scale {
                return Err(Error::domain(format!(
                    "block {b} has trace {:.3e}; expected a traceless matrix",
                    tr.norm()
                )));
            }
            let mut resid = 0.0f64;
            let mut recon = vec![C64::new(0.0, 0.0); n];
            for (i, y) in self.y_block.iter().enumerate() {
                let coef: C64 = y
                    .iter()
                    .enumerate()
                    .map(|(t, &yt)| v[(off + t, off + t)] * (2.0 * yt))
                    .sum();
                out[b * k + i] = coef;
                for (t, &yt) in y.iter().enumerate() {
                    recon[t] += coef * yt;
                }
            }
            for (t, r) in recon.iter().enumerate() {
                resid = resid.max((v[(off + t, off + t)] - r).norm());
            }
            if resid > COORD_TOL * scale {
                return Err(Error::numerical(
                    "diagonal reconstruction from Cartan coordinates",
                    resid / scale,
                    COORD_TOL,
                ));
            }
        }

        for (r, &(i, j)) in self.root_positions.iter().enumerate() {
            out[self.positive_index(r)] = v[(i, j)];
            out[self.negative_index(r)] = v[(j, i)];
        }

        // Entries outside the diagonal blocks are not in g.
        for i in 0..size {
            for j in 0..size {
                if i / n != j / n && v[(i, j)].norm() > COORD_TOL * scale {
                    return Err(Error::domain("matrix has entries outside the diagonal blocks"));
                }
            }
        }
        Ok(out)
    }

    /// Matrix (over the basis) of a linear map g → g.
    pub fn operator_matrix(&self, f: impl Fn(&CMatrix) -> CMatrix) -> Result<CMatrix> {
        let d = self.dim();
        let mut m = CMatrix::zeros(d, d);
        for (j, b) in self.basis.iter().enumerate() {
            let col = self.coordinates(&f(b))?;
            m.set_column(j, &col);
        }
        Ok(m)
    }
}

/// Gram–Schmidt on `e_ii - e_{i+1,i+1}` under `2·tr`, so that `2 tr(y_i y_j) = δ_ij`.
fn orthonormal_cartan_basis(n: usize) -> Vec<Vec<f64>> {
    let inner = |a: &[f64], b: &[f64]| 2.0 * a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        v[i + 1] = -1.0;
        for u in &out {
            let p = inner(&v, u);
            for (x, y) in v.iter_mut().zip(u) {
                *x -= p * y;
            }
        }
        let norm = inner(&v, &v).sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::numeric::unit;

    #[test]
    fn positive_root_counts() {
        assert_eq!(build_root_datum(TypeLabel::A(1)).unwrap().positive_roots().len(), 1);
        assert_eq!(build_root_datum(TypeLabel::A(3)).unwrap().positive_roots().len(), 6);
        let d4 = build_root_datum(TypeLabel::D4).unwrap();
        assert_eq!(d4.rank(), 4);
        assert_eq!(d4.positive_roots().len(), 12);
        // highest root α1 + 2α2 + α3 + α4
        assert_eq!(d4.positive_roots().last().unwrap(), &vec![1, 2, 1, 1]);
    }

    #[test]
    fn cartan_matrix_shape() {
        for label in [TypeLabel::A(4), TypeLabel::D4, TypeLabel::ProductA { n: 2, copies: 3 }] {
            let d = build_root_datum(label).unwrap();
            let a = d.cartan_matrix();
            for i in 0..d.rank() {
                assert_eq!(a[(i, i)], 2);
                for j in 0..d.rank() {
                    if i != j {
                        assert!(a[(i, j)] <= 0);
                    }
                }
            }
            assert!(d.positive_roots().iter().flatten().all(|&c| c >= 0));
        }
    }

    #[test]
    fn unsupported_labels() {
        assert!(matches!(build_root_datum(TypeLabel::A(0)), Err(Error::Config(_))));
        assert!(matches!(
            MatrixRealization::new(build_root_datum(TypeLabel::D4).unwrap()),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn sl2_basis_normalization() {
        let r = build_sl_realization(1).unwrap();
        assert_eq!(r.dim(), 3);
        let y = r.y(0);
        assert!((2.0 * r.form(y, y) - real(1.0)).norm() < 1e-14);
    }

    #[test]
    fn sl_form_normalizations() {
        for n in 1..=4 {
            let r = build_sl_realization(n).unwrap();
            let k = r.cartan_dim();
            for i in 0..k {
                for j in 0..k {
                    let v = 2.0 * r.form(r.y(i), r.y(j));
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((v - real(expect)).norm() < 1e-12);
                }
            }
            for a in 0..r.num_positive_roots() {
                let e = &r.basis()[r.positive_index(a)];
                let f = &r.basis()[r.negative_index(a)];
                assert!((r.form(e, f) - real(1.0)).norm() < 1e-14);
            }
            let gram = r.gram();
            assert!(gram.clone().try_inverse().is_some());
            assert_eq!(r.dim(), (n + 1) * (n + 1) - 1);
        }
    }

    #[test]
    fn sl4_corner_pairing() {
        let r = build_sl_realization(3).unwrap();
        assert!((r.form(&unit(4, 0, 3), &unit(4, 3, 0)) - real(1.0)).norm() < 1e-15);
    }

    #[test]
    fn coordinates_of_root_vector_and_y() {
        let r = build_sl_realization(2).unwrap();
        let c = r.coordinates(&unit(3, 0, 1)).unwrap();
        for (i, v) in c.iter().enumerate() {
            let expect = if i == r.positive_index(0) { 1.0 } else { 0.0 };
            assert!((v - real(expect)).norm() < 1e-15);
        }
        let c = r.coordinates(r.y(0)).unwrap();
        assert!((c[0] - real(1.0)).norm() < 1e-14);
        assert!(c.iter().skip(1).all(|v| v.norm() < 1e-14));
    }

    #[test]
    fn coordinates_round_trip_mixed() {
        let r = build_sl_realization(2).unwrap();
        let mut v = CMatrix::zeros(3, 3);
        v[(0, 0)] = real(1.0);
        v[(1, 1)] = real(-1.0);
        v[(0, 2)] = real(2.0);
        let c = r.coordinates(&v).unwrap();
        assert!(frobenius(&(r.reconstruct(&c) - &v)) < 1e-12 * frobenius(&v));
    }

    #[test]
    fn coordinates_reject_trace() {
        let r = build_sl_realization(2).unwrap();
        assert!(matches!(r.coordinates(&unit(3, 0, 0)), Err(Error::Domain(_))));
        assert!(matches!(r.coordinates(&unit(2, 0, 1)), Err(Error::Domain(_))));
    }

    #[test]
    fn product_realization_blocks() {
        let r = build_product_realization(1, 2).unwrap();
        assert_eq!(r.dim(), 6);
        assert_eq!(r.matrix_size(), 4);
        let mut off = CMatrix::zeros(4, 4);
        off[(0, 3)] = real(1.0);
        assert!(matches!(r.coordinates(&off), Err(Error::Domain(_))));
    }
}
