//! Automorphisms of SL(N) (and of SL(N)^m) at the group, Lie algebra, diagram
//! and Cartan levels.

use crate::cartan::CartanOperator;
use crate::error::{Error, Result};
use crate::linalg::numeric::{frobenius, inverse, signed_antidiagonal, CMatrix, C64};
use crate::rootdata::{BasisKind, MatrixRealization, RootDatum, TypeLabel};
use crate::weyl::DiagramAut;

#[derive(Debug, Clone, PartialEq)]
pub enum Automorphism {
    Identity,
    /// `g ↦ J₀ (gᵀ)⁻¹ J₀⁻¹` with `J₀` antidiagonal, entries `(-1)^{i+1}`.
    Outer,
    /// `(g_1, …, g_m) ↦ (g_2, …, g_m, g_1)` on block-diagonal matrices.
    CyclicShift { copies: usize },
    /// `Ad_{g₀} ∘ inner`.
    Composed {
        g0: CMatrix,
        inner: Box<Automorphism>,
    },
}

fn shift_blocks(m: &CMatrix, copies: usize) -> CMatrix {
    let size = m.nrows() / copies;
    let mut out = CMatrix::zeros(m.nrows(), m.ncols());
    for b in 0..copies {
        let src = (b + 1) % copies;
        out.view_mut((b * size, b * size), (size, size))
            .copy_from(&m.view((src * size, src * size), (size, size)));
    }
    out
}

impl Automorphism {
    /// θ(g).
    pub fn apply_group(&self, g: &CMatrix) -> Result<CMatrix> {
        match self {
            Automorphism::Identity => Ok(g.clone()),
            Automorphism::Outer => {
                let j = signed_antidiagonal(g.nrows());
                let inv_t = inverse(&g.transpose())?;
                Ok(&j * inv_t * j.transpose())
            }
            Automorphism::CyclicShift { copies } => {
                self.check_blocks(g, *copies)?;
                Ok(shift_blocks(g, *copies))
            }
            Automorphism::Composed { g0, inner } => {
                let g0_inv = inverse(g0)?;
                Ok(g0 * inner.apply_group(g)? * g0_inv)
            }
        }
    }

    /// dθ(X).
    pub fn apply_lie(&self, x: &CMatrix) -> Result<CMatrix> {
        match self {
            Automorphism::Identity => Ok(x.clone()),
            Automorphism::Outer => {
                let j = signed_antidiagonal(x.nrows());
                Ok(-(&j * x.transpose() * j.transpose()))
            }
            Automorphism::CyclicShift { copies } => {
                self.check_blocks(x, *copies)?;
                Ok(shift_blocks(x, *copies))
            }
            Automorphism::Composed { g0, inner } => {
                let g0_inv = inverse(g0)?;
                Ok(g0 * inner.apply_lie(x)? * g0_inv)
            }
        }
    }

    fn check_blocks(&self, m: &CMatrix, copies: usize) -> Result<()> {
        if copies == 0 || m.nrows() % copies != 0 {
            return Err(Error::domain(format!(
                "a {}×{} matrix does not split into {copies} blocks",
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(())
    }

    /// Whether the map is one of the (B, T)-stabilizing branches by construction.
    pub fn is_standard(&self) -> bool {
        !matches!(self, Automorphism::Composed { .. })
    }

    /// Induced permutation of the simple roots.
    pub fn diagram(&self, datum: &RootDatum) -> Result<DiagramAut> {
        let k = datum.rank();
        match (self, datum.label()) {
            (Automorphism::Identity, _) => Ok(DiagramAut::identity(k)),
            (Automorphism::Outer, TypeLabel::A(n)) => Ok(DiagramAut::flip(n)),
            (Automorphism::CyclicShift { copies }, TypeLabel::ProductA { n, copies: c })
                if *copies == c =>
            {
                Ok(DiagramAut::cyclic_shift(n, c))
            }
            (Automorphism::Composed { .. }, _) => Err(Error::Unsupported(
                "composed automorphisms must be normalized before taking the diagram action".into(),
            )),
            (other, label) => Err(Error::domain(format!("{other:?} does not act on {label}"))),
        }
    }

    pub fn cartan_operator(&self, datum: &RootDatum) -> Result<CartanOperator> {
        Ok(CartanOperator::theta(&self.diagram(datum)?))
    }

    /// Checks that dθ maps `b` to `b` and `h` to `h` on the basis of the realization.
    pub fn stabilizes_borel_and_torus(&self, real: &MatrixRealization) -> Result<bool> {
        let tol = 1e-12;
        for (b, kind) in real.basis().iter().zip(real.kinds()) {
            let img = self.apply_lie(b)?;
            let scale = frobenius(&img).max(1.0);
            let size = img.nrows();
            for i in 0..size {
                for j in 0..size {
                    let allowed = match kind {
                        BasisKind::Cartan(_) => i == j,
                        BasisKind::Positive(_) => i <= j,
                        BasisKind::Negative(_) => i >= j,
                    };
                    if !allowed && img[(i, j)].norm() > tol * scale {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Largest `|⟨dθX, dθY⟩ - ⟨X, Y⟩|` over pairs of basis elements.
    pub fn form_defect(&self, real: &MatrixRealization) -> Result<f64> {
        let images: Vec<CMatrix> = real
            .basis()
            .iter()
            .map(|b| self.apply_lie(b))
            .collect::<Result<_>>()?;
        let mut worst = 0.0f64;
        for (i, x) in real.basis().iter().enumerate() {
            for (j, y) in real.basis().iter().enumerate() {
                let d = real.form(&images[i], &images[j]) - real.form(x, y);
                worst = worst.max(d.norm());
            }
        }
        Ok(worst)
    }

    /// For each positive root α: `(β, c)` with `dθ(E_α) = c E_β`.
    pub fn root_action(&self, real: &MatrixRealization) -> Result<Vec<(usize, C64)>> {
        let mut out = Vec::with_capacity(real.num_positive_roots());
        for a in 0..real.num_positive_roots() {
            let img = self.apply_lie(&real.basis()[real.positive_index(a)])?;
            let coords = real.coordinates(&img)?;
            let hits: Vec<usize> = (0..coords.len()).filter(|&i| coords[i].norm() > 1e-12).collect();
            match hits.as_slice() {
                [i] => match real.kinds()[*i] {
                    BasisKind::Positive(b) => out.push((b, coords[*i])),
                    _ => return Err(Error::domain("automorphism does not preserve n")),
                },
                _ => return Err(Error::domain("automorphism does not permute root spaces")),
            }
        }
        Ok(out)
    }

    /// Diagram action read off from the matrices (for cross-checking [`Self::diagram`]).
    pub fn derived_diagram(&self, real: &MatrixRealization) -> Result<DiagramAut> {
        let action = self.root_action(real)?;
        let roots = real.datum().positive_roots();
        let simple: Vec<usize> = (0..real.cartan_dim())
            .map(|i| {
                roots
                    .iter()
                    .position(|r| r.iter().enumerate().all(|(j, &c)| c == (i == j) as i64))
                    .expect("simple root present")
            })
            .collect();
        let perm = simple
            .iter()
            .map(|&r| {
                let target = action[r].0;
                simple
                    .iter()
                    .position(|&s| s == target)
                    .ok_or_else(|| Error::domain("simple root not mapped to a simple root"))
            })
            .collect::<Result<Vec<_>>>()?;
        DiagramAut::new(perm, real.datum())
    }
}

/// Split `Ad_{g₀} ∘ τ₀` into the translation element and the stabilizing part.
///
/// With `θ_raw = Ad_{g₀} θ′`, right translation `g ↦ g g₀` carries θ_raw-twisted
/// conjugacy classes to θ′-twisted ones and is a Poisson isomorphism
/// `(G, π_{θ_raw}) → (G, π_{θ′})`.
pub fn normalize_automorphism(
    theta_raw: &Automorphism,
    real: &MatrixRealization,
) -> Result<(CMatrix, Automorphism)> {
    let size = real.matrix_size();
    let mut g0 = CMatrix::identity(size, size);
    let mut cur = theta_raw;
    while let Automorphism::Composed { g0: h, inner } = cur {
        if h.nrows() != size || h.ncols() != size {
            return Err(Error::domain("translation element has the wrong size"));
        }
        g0 *= h;
        cur = inner;
    }
    let theta = cur.clone();
    if !theta.stabilizes_borel_and_torus(real)? {
        return Err(Error::Unsupported(
            "inner part of the automorphism does not stabilize (B, T)".into(),
        ));
    }
    inverse(&g0)?;
    Ok((g0, theta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::numeric::{diag, real as re, unit};
    use crate::rootdata::{build_product_realization, build_sl_realization};

    fn sample_sl3() -> CMatrix {
        crate::sample::special_linear(3, &mut crate::sample::rng_for(21, 0))
    }

    #[test]
    fn outer_properties() {
        for n in 1..=3 {
            let r = build_sl_realization(n).unwrap();
            let o = Automorphism::Outer;
            assert!(o.stabilizes_borel_and_torus(&r).unwrap());
            assert!(o.form_defect(&r).unwrap() < 1e-13);
            assert_eq!(o.derived_diagram(&r).unwrap(), DiagramAut::flip(n));
            for (_, c) in o.root_action(&r).unwrap() {
                assert!((c.norm() - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn outer_is_an_involutive_homomorphism() {
        let g = sample_sl3();
        let h = g.transpose() * &g;
        let o = Automorphism::Outer;
        let tg = o.apply_group(&g).unwrap();
        assert!(frobenius(&(o.apply_group(&tg).unwrap() - &g)) < 1e-12);
        let lhs = o.apply_group(&(&g * &h)).unwrap();
        let rhs = &tg * o.apply_group(&h).unwrap();
        assert!(frobenius(&(lhs - rhs)) < 1e-10);
    }

    #[test]
    fn outer_lie_is_derivative() {
        let o = Automorphism::Outer;
        let x = unit(3, 0, 2) * re(0.3) + unit(3, 1, 0) * re(-0.2);
        let eps = 1e-6;
        let g = CMatrix::identity(3, 3) + &x * re(eps);
        let fd = (o.apply_group(&g).unwrap() - CMatrix::identity(3, 3)) / re(eps);
        assert!(frobenius(&(fd - o.apply_lie(&x).unwrap())) < 1e-5);
    }

    #[test]
    fn sl2_outer_is_inner_identity_on_diagram() {
        let r = build_sl_realization(1).unwrap();
        assert!(Automorphism::Outer.derived_diagram(&r).unwrap().is_identity());
    }

    #[test]
    fn cyclic_shift_on_blocks() {
        let r = build_product_realization(1, 3).unwrap();
        let s = Automorphism::CyclicShift { copies: 3 };
        assert!(s.stabilizes_borel_and_torus(&r).unwrap());
        assert_eq!(s.derived_diagram(&r).unwrap(), DiagramAut::cyclic_shift(1, 3));
        assert_eq!(s.diagram(r.datum()).unwrap(), DiagramAut::cyclic_shift(1, 3));
    }

    #[test]
    fn normalize_examples() {
        let r = build_sl_realization(2).unwrap();
        let t = diag(&[re(2.0), re(0.5), re(1.0)]);
        let raw = Automorphism::Composed {
            g0: t.clone(),
            inner: Box::new(Automorphism::Identity),
        };
        let (g0, theta) = normalize_automorphism(&raw, &r).unwrap();
        assert_eq!(theta, Automorphism::Identity);
        assert!(frobenius(&(g0 - t)) < 1e-15);

        let nested = Automorphism::Composed {
            g0: sample_sl3(),
            inner: Box::new(Automorphism::Composed {
                g0: unit(3, 0, 1) + CMatrix::identity(3, 3),
                inner: Box::new(Automorphism::Outer),
            }),
        };
        let (g0, theta) = normalize_automorphism(&nested, &r).unwrap();
        assert_eq!(theta, Automorphism::Outer);
        assert!(frobenius(&(g0 - sample_sl3() * (unit(3, 0, 1) + CMatrix::identity(3, 3)))) < 1e-12);
    }

    #[test]
    fn composed_has_no_diagram() {
        let r = build_sl_realization(1).unwrap();
        let raw = Automorphism::Composed {
            g0: CMatrix::identity(2, 2),
            inner: Box::new(Automorphism::Identity),
        };
        assert!(matches!(raw.diagram(r.datum()), Err(Error::Unsupported(_))));
        assert!(!raw.is_standard());
    }
}
