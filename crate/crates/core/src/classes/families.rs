//! Spherical conjugacy classes of SL(n+1) (θ = Id) and named class specs.
//!
//! Every spherical class is central, semisimple with two eigenvalues of
//! multiplicities `l` and `n+1-l`, or a scalar times a unipotent with `l`
//! Jordan blocks of size 2.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cartan::rk_one_minus;
use crate::error::{Error, Result};
use crate::linalg::numeric::{diag, real, CMatrix, C64};
use crate::weyl::{m_l, DiagramAut, WeylElementReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Central,
    Semisimple,
    UnipotentScalar,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyDescriptor {
    pub kind: FamilyKind,
    pub l: usize,
    pub m_l: WeylElementReport,
    /// `l(m_l) + rk(1 - m_l)`.
    pub predicted_dim: usize,
}

impl FamilyDescriptor {
    pub fn spec(&self) -> ClassSpec {
        match self.kind {
            FamilyKind::Central => ClassSpec::Central,
            FamilyKind::Semisimple => ClassSpec::Ss(self.l),
            FamilyKind::UnipotentScalar => ClassSpec::Uni(self.l),
        }
    }
}

pub fn spherical_families(n: usize) -> Result<Vec<FamilyDescriptor>> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    let diagram = DiagramAut::identity(n);
    let describe = |kind, l| -> Result<FamilyDescriptor> {
        let m = m_l(n, l)?;
        Ok(FamilyDescriptor {
            kind,
            l,
            predicted_dim: m.length() + rk_one_minus(&m, &diagram)?,
            m_l: m.report(),
        })
    };
    let mut out = vec![describe(FamilyKind::Central, 0)?];
    for l in 1..=(n + 1) / 2 {
        out.push(describe(FamilyKind::Semisimple, l)?);
        out.push(describe(FamilyKind::UnipotentScalar, l)?);
    }
    Ok(out)
}

/// A named class or an explicit representative.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassSpec {
    Central,
    /// Distinct eigenvalues.
    RegularSs,
    /// Eigenvalues `λ′` (multiplicity `l`) and `λ` (multiplicity `n+1-l`).
    Ss(usize),
    /// Identity plus `l` nilpotent 2×2 blocks.
    Uni(usize),
    Matrix(CMatrix),
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::Central => write!(f, "central"),
            ClassSpec::RegularSs => write!(f, "regular-ss"),
            ClassSpec::Ss(l) => write!(f, "ss:{l}"),
            ClassSpec::Uni(l) => write!(f, "uni:{l}"),
            ClassSpec::Matrix(m) => write!(f, "matrix {}x{}", m.nrows(), m.ncols()),
        }
    }
}

impl FromStr for ClassSpec {
    type Err = Error;

    /// Parses `central`, `regular-ss`, `ss:L` or `uni:L`.
    fn from_str(s: &str) -> Result<Self> {
        let parse_l = |rest: &str| {
            rest.parse::<usize>()
                .map_err(|_| Error::parse(format!("bad family index {rest:?} in {s:?}")))
        };
        match s {
            "central" => Ok(ClassSpec::Central),
            "regular-ss" => Ok(ClassSpec::RegularSs),
            _ => {
                if let Some(rest) = s.strip_prefix("ss:") {
                    Ok(ClassSpec::Ss(parse_l(rest)?))
                } else if let Some(rest) = s.strip_prefix("uni:") {
                    Ok(ClassSpec::Uni(parse_l(rest)?))
                } else {
                    Err(Error::parse(format!(
                        "unknown class {s:?}; expected central, regular-ss, ss:L or uni:L"
                    )))
                }
            }
        }
    }
}

impl ClassSpec {
    /// A representative in SL(n+1).
    pub fn representative(&self, n: usize) -> Result<CMatrix> {
        let size = n + 1;
        let check_l = |l: usize| {
            if l == 0 || 2 * l > size {
                Err(Error::domain(format!("family index {l} out of range 1..={}", size / 2)))
            } else {
                Ok(())
            }
        };
        match self {
            ClassSpec::Central => Ok(CMatrix::identity(size, size)),
            ClassSpec::RegularSs => {
                let mut d: Vec<C64> = (0..n).map(|i| real(i as f64 + 2.0)).collect();
                let prod: C64 = d.iter().product();
                d.push(real(1.0) / prod);
                Ok(diag(&d))
            }
            ClassSpec::Ss(l) => {
                check_l(*l)?;
                let lp = 2.0f64;
                let lam = lp.powf(-(*l as f64) / (size - l) as f64);
                let d: Vec<C64> = (0..size).map(|i| real(if i < *l { lp } else { lam })).collect();
                Ok(diag(&d))
            }
            ClassSpec::Uni(l) => {
                check_l(*l)?;
                let mut g = CMatrix::identity(size, size);
                for i in 0..*l {
                    g[(2 * i, 2 * i + 1)] = real(1.0);
                }
                Ok(g)
            }
            ClassSpec::Matrix(m) => {
                if m.nrows() != size || m.ncols() != size {
                    return Err(Error::domain(format!(
                        "matrix is {}x{}, expected {size}x{size}",
                        m.nrows(),
                        m.ncols()
                    )));
                }
                Ok(m.clone())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bivector::Automorphism;
    use crate::classes::analyze_class;
    use crate::rootdata::build_sl_realization;

    fn dims(n: usize) -> Vec<usize> {
        let mut d: Vec<usize> = spherical_families(n).unwrap().iter().map(|f| f.predicted_dim).collect();
        d.sort();
        d.dedup();
        d
    }

    #[test]
    fn family_lists() {
        let f1 = spherical_families(1).unwrap();
        assert_eq!(f1.iter().map(|f| f.l).max(), Some(1));
        assert_eq!(dims(1), vec![0, 2]);
        assert_eq!(dims(2), vec![0, 4]);
        assert_eq!(dims(3), vec![0, 6, 8]);
    }

    #[test]
    fn predicted_dim_is_two_l_times_corank() {
        for n in 1..=5 {
            for f in spherical_families(n).unwrap() {
                assert_eq!(f.predicted_dim, 2 * f.l * (n + 1 - f.l));
            }
        }
    }

    #[test]
    fn representatives_realize_predicted_dims() {
        for n in 1..=3 {
            let r = build_sl_realization(n).unwrap();
            for f in spherical_families(n).unwrap() {
                let g = f.spec().representative(n).unwrap();
                let d = analyze_class(&g, &Automorphism::Identity, &r).unwrap();
                assert_eq!(d.dim_c, f.predicted_dim, "n = {n}, {}", f.spec());
                assert_eq!(d.l_c, f.l);
                assert_eq!(d.spherical, Some(true));
            }
        }
    }

    #[test]
    fn parse_round_trip() {
        for s in ["central", "regular-ss", "ss:2", "uni:1"] {
            assert_eq!(s.parse::<ClassSpec>().unwrap().to_string(), s);
        }
        assert!("ss:x".parse::<ClassSpec>().is_err());
        assert!("foo".parse::<ClassSpec>().is_err());
        assert!(ClassSpec::Ss(3).representative(3).is_err());
    }
}
