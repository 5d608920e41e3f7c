//! Exact operators on the Cartan subalgebra: `wθ`, ranks and kernels of
//! `1 ± wθ`, `1 - θ²`, and the length functions `L_θ`, `L′_θ`.
//!
//! Everything here is integer linear algebra; there are no tolerances.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::exact::{IntMatrix, QMatrix};
use crate::weyl::{DiagramAut, WeylElement};

#[derive(Clone, PartialEq, Eq)]
pub struct CartanOperator {
    matrix: IntMatrix,
    provenance: String,
}

impl fmt::Debug for CartanOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CartanOperator[{}] {:?}", self.provenance, self.matrix)
    }
}

impl CartanOperator {
    pub fn new(matrix: IntMatrix, provenance: impl Into<String>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::domain("Cartan operator must be square"));
        }
        Ok(CartanOperator {
            matrix,
            provenance: provenance.into(),
        })
    }

    pub fn identity(k: usize) -> Self {
        CartanOperator {
            matrix: IntMatrix::identity(k),
            provenance: "1".into(),
        }
    }

    /// `wθ` on h* (simple-root basis).
    pub fn w_theta(w: &WeylElement, theta: &DiagramAut) -> Result<Self> {
        if theta.perm().len() != w.datum().rank() {
            return Err(Error::domain("θ and w act on different Cartan subalgebras"));
        }
        Ok(CartanOperator {
            matrix: w.action() * &theta.matrix(),
            provenance: format!("({w})θ"),
        })
    }

    pub fn theta(theta: &DiagramAut) -> Self {
        CartanOperator {
            matrix: theta.matrix(),
            provenance: "θ".into(),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn to_rational(&self) -> QMatrix {
        self.matrix.to_rational()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn compose(&self, other: &CartanOperator) -> CartanOperator {
        CartanOperator {
            matrix: &self.matrix * &other.matrix,
            provenance: format!("{}·{}", self.provenance, other.provenance),
        }
    }

    /// `1 + A`.
    pub fn one_plus(&self) -> CartanOperator {
        CartanOperator {
            matrix: &IntMatrix::identity(self.dim()) + &self.matrix,
            provenance: format!("1+{}", self.provenance),
        }
    }

    /// `1 - A`.
    pub fn one_minus(&self) -> CartanOperator {
        CartanOperator {
            matrix: &IntMatrix::identity(self.dim()) - &self.matrix,
            provenance: format!("1-{}", self.provenance),
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn dim_ker(&self) -> usize {
        self.matrix.dim_ker()
    }

    /// Orthogonality for the form with Gram matrix `gram`: `Aᵀ G A = G`.
    pub fn preserves_form(&self, gram: &IntMatrix) -> bool {
        &(&self.matrix.transpose() * gram) * &self.matrix == *gram
    }
}

/// Exact kernel dimension.
pub fn dim_ker(a: &CartanOperator) -> usize {
    a.dim_ker()
}

/// `dim ker(1 + wθ)`.
pub fn dk_one_plus(w: &WeylElement, theta: &DiagramAut) -> Result<usize> {
    Ok(CartanOperator::w_theta(w, theta)?.one_plus().dim_ker())
}

/// `rk(1 - wθ)`.
pub fn rk_one_minus(w: &WeylElement, theta: &DiagramAut) -> Result<usize> {
    Ok(CartanOperator::w_theta(w, theta)?.one_minus().rank())
}

/// `L_θ(w) = l(w) + dim ker(1 + wθ)`.
pub fn l_theta(w: &WeylElement, theta: &DiagramAut) -> Result<usize> {
    Ok(w.length() + dk_one_plus(w, theta)?)
}

/// `L′_θ(w) = l(w) + rk(1 - wθ)`.
pub fn l_theta_prime(w: &WeylElement, theta: &DiagramAut) -> Result<usize> {
    Ok(w.length() + rk_one_minus(w, theta)?)
}

/// `rk(1 - (wθ)²)`.
pub fn rk_one_minus_square(w: &WeylElement, theta: &DiagramAut) -> Result<usize> {
    let a = CartanOperator::w_theta(w, theta)?;
    Ok(a.compose(&a).one_minus().rank())
}

/// `rk(1 - θ²)`, which is always even.
pub fn rank_one_minus_theta_squared(theta: &DiagramAut) -> usize {
    let t = CartanOperator::theta(theta);
    let r = t.compose(&t).one_minus().rank();
    assert!(r % 2 == 0, "rk(1-θ²) = {r} is odd");
    r
}

/// Identity `rk(1-A) - dim ker(1+A) = rk(1-A²)` together with the inclusion
/// `ker(1+A) ⊆ im(1-A)`, for an operator of finite order.
pub fn le_inv_holds(a: &CartanOperator) -> bool {
    let one_minus = a.one_minus();
    let one_plus = a.one_plus();
    let sq = a.compose(a).one_minus();
    let inclusion = one_minus
        .to_rational()
        .column_space_contains(&one_plus.to_rational().kernel());
    inclusion && one_minus.rank() as i64 - one_plus.dim_ker() as i64 == sq.rank() as i64
}

/// `rk(1 + AS) - rk(1 + A)`.
pub fn rank_jump(a: &IntMatrix, s: &IntMatrix) -> i64 {
    let k = a.nrows();
    let id = IntMatrix::identity(k);
    let before = (&id + a).rank() as i64;
    let after = (&id + &(a * s)).rank() as i64;
    after - before
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::TypeLabel;
    use crate::weyl::WeylGroup;

    #[test]
    fn dim_ker_examples() {
        let g = WeylGroup::type_a(2).unwrap();
        let id = DiagramAut::identity(2);
        let flip = DiagramAut::flip(2);
        assert_eq!(dk_one_plus(&g.identity(), &id).unwrap(), 0);
        assert_eq!(dk_one_plus(&g.longest(), &id).unwrap(), 1);
        assert_eq!(dk_one_plus(&g.longest(), &flip).unwrap(), 2);
    }

    #[test]
    fn l_theta_examples() {
        let a1 = WeylGroup::type_a(1).unwrap();
        let id1 = DiagramAut::identity(1);
        assert_eq!(l_theta(&a1.identity(), &id1).unwrap(), 0);
        assert_eq!(l_theta_prime(&a1.identity(), &id1).unwrap(), 0);
        let a2 = WeylGroup::type_a(2).unwrap();
        let id2 = DiagramAut::identity(2);
        assert_eq!(l_theta(&a2.longest(), &id2).unwrap(), 4);
        assert_eq!(l_theta_prime(&a2.longest(), &id2).unwrap(), 4);
    }

    #[test]
    fn d4_triality_numbers() {
        let g = WeylGroup::of_type(TypeLabel::D4).unwrap();
        let t = DiagramAut::d4_triality();
        let m = g.longest().compose(&g.simple(1)).unwrap();
        assert_eq!(m.length(), 11);
        assert_eq!(rk_one_minus(&m, &t).unwrap(), 3);
        assert_eq!(l_theta_prime(&m, &t).unwrap(), 14);
        assert_eq!(rank_one_minus_theta_squared(&t), 2);
    }

    #[test]
    fn theta_squared_ranks() {
        assert_eq!(rank_one_minus_theta_squared(&DiagramAut::identity(3)), 0);
        assert_eq!(rank_one_minus_theta_squared(&DiagramAut::flip(2)), 0);
    }

    #[test]
    fn difference_identity_on_s4() {
        let g = WeylGroup::type_a(3).unwrap();
        for theta in [DiagramAut::identity(3), DiagramAut::flip(3)] {
            for w in g.elements().unwrap() {
                let diff = l_theta_prime(w, &theta).unwrap() as i64 - l_theta(w, &theta).unwrap() as i64;
                assert_eq!(diff, rk_one_minus_square(w, &theta).unwrap() as i64);
            }
        }
    }

    #[test]
    fn w_theta_preserves_form() {
        let g = WeylGroup::of_type(TypeLabel::D4).unwrap();
        let t = DiagramAut::d4_triality();
        let gram = g.datum().cartan_matrix().clone();
        for w in g.elements().unwrap().iter().step_by(11) {
            assert!(CartanOperator::w_theta(w, &t).unwrap().preserves_form(&gram));
        }
    }

    #[test]
    fn rank_jump_for_reflections() {
        let g = WeylGroup::type_a(2).unwrap();
        for w in g.elements().unwrap() {
            for s in g.reflections() {
                assert_eq!(rank_jump(w.action(), s.action()).abs(), 1);
            }
        }
    }
}
