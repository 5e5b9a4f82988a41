//! Algebraic curvature tensors R_{WXYZ} = g(R_{W,X} Y, Z) on the fiber.

use std::ops::{Add, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fiber::endo::{e_wedge, FiberEndo};
use crate::fiber::forms::DIM;
use crate::linalg::{Q, QMat};

const N4: usize = DIM * DIM * DIM * DIM;

#[inline]
fn idx(w: usize, x: usize, y: usize, z: usize) -> usize {
    ((w * DIM + x) * DIM + y) * DIM + z
}

/// Increasing index pairs (i, j), in the order of the Λ² basis.
pub fn pairs() -> impl Iterator<Item = (usize, usize)> {
    (0..DIM).flat_map(|i| (i + 1..DIM).map(move |j| (i, j)))
}

#[derive(Clone, PartialEq, Eq)]
pub struct CurvTensor {
    data: Vec<Q>,
}

impl std::fmt::Debug for CurvTensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let nz = self.data.iter().filter(|x| !x.is_zero()).count();
        write!(f, "CurvTensor({nz} nonzero components)")
    }
}

impl CurvTensor {
    pub fn zero() -> Self {
        Self {
            data: vec![Q::zero(); N4],
        }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize, usize, usize) -> Q) -> Self {
        let mut t = Self::zero();
        for w in 0..DIM {
            for x in 0..DIM {
                for y in 0..DIM {
                    for z in 0..DIM {
                        t.data[idx(w, x, y, z)] = f(w, x, y, z);
                    }
                }
            }
        }
        t
    }

    /// R_{ijkl} = c(δ_ik δ_jl − δ_il δ_jk): curvature operator c·id.
    pub fn constant(c: Q) -> Self {
        let d = |a: usize, b: usize| if a == b { Q::from_integer(1) } else { Q::zero() };
        Self::from_fn(|i, j, k, l| c * (d(i, k) * d(j, l) - d(i, l) * d(j, k)))
    }

    pub fn get(&self, w: usize, x: usize, y: usize, z: usize) -> Q {
        self.data[idx(w, x, y, z)]
    }

    pub fn set(&mut self, w: usize, x: usize, y: usize, z: usize, v: Q) {
        self.data[idx(w, x, y, z)] = v;
    }

    pub fn components(&self) -> &[Q] {
        &self.data
    }

    pub fn scale(&self, s: Q) -> Self {
        Self {
            data: self.data.iter().map(|x| *x * s).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Antisymmetry in each pair and symmetry under pair exchange.
    pub fn check_pair_symmetries(&self) -> Result<()> {
        for w in 0..DIM {
            for x in 0..DIM {
                for y in 0..DIM {
                    for z in 0..DIM {
                        let v = self.get(w, x, y, z);
                        if v != -self.get(x, w, y, z) || v != -self.get(w, x, z, y) {
                            return Err(Error::SymmetryViolation(format!(
                                "pair antisymmetry fails at ({w},{x},{y},{z})"
                            )));
                        }
                        if v != self.get(y, z, w, x) {
                            return Err(Error::SymmetryViolation(format!(
                                "pair exchange fails at ({w},{x},{y},{z})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Cyclic sum b(R)_{wxyz} = R_{wxyz} + R_{xywz} + R_{ywxz}.
    pub fn bianchi_defect(&self) -> CurvTensor {
        Self::from_fn(|w, x, y, z| self.get(w, x, y, z) + self.get(x, y, w, z) + self.get(y, w, x, z))
    }

    pub fn satisfies_bianchi(&self) -> bool {
        self.bianchi_defect().is_zero()
    }

    /// Full algebraic curvature symmetries, first Bianchi identity included.
    pub fn check_curvature_symmetries(&self) -> Result<()> {
        self.check_pair_symmetries()?;
        if !self.satisfies_bianchi() {
            return Err(Error::SymmetryViolation("first Bianchi identity fails".into()));
        }
        Ok(())
    }

    /// Ric(X, Y) = Σ_i R_{i X Y i}.
    pub fn ricci(&self) -> QMat {
        QMat::from_fn(DIM, DIM, |x, y| (0..DIM).map(|i| self.get(i, x, y, i)).sum())
    }

    /// ℛ(e_i ∧ e_j) = Σ_{k<l} R_{ijkl} e_k ∧ e_l as a skew endomorphism.
    pub fn operator_image(&self, i: usize, j: usize) -> FiberEndo {
        let mut out = QMat::zeros(DIM, DIM);
        for (k, l) in pairs() {
            let c = self.get(i, j, k, l);
            if !c.is_zero() {
                out.axpy(c, e_wedge(k, l).matrix());
            }
        }
        FiberEndo::from_matrix(out)
    }

    /// The curvature operator on Λ² in the standard basis.
    pub fn operator_matrix(&self) -> QMat {
        let ps: Vec<(usize, usize)> = pairs().collect();
        QMat::from_fn(15, 15, |r, c| self.get(ps[c].0, ps[c].1, ps[r].0, ps[r].1))
    }
}

impl Add for &CurvTensor {
    type Output = CurvTensor;
    fn add(self, o: &CurvTensor) -> CurvTensor {
        CurvTensor {
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CurvTensor {
    type Output = CurvTensor;
    fn sub(self, o: &CurvTensor) -> CurvTensor {
        CurvTensor {
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn constant_curvature_symmetries_and_ricci() {
        let r = CurvTensor::constant(q(2));
        r.check_curvature_symmetries().unwrap();
        assert_eq!(r.ricci(), QMat::identity(6).scale(q(-10)));
        assert_eq!(r.operator_matrix(), QMat::identity(15).scale(q(2)));
    }

    #[test]
    fn symmetry_violation_detected() {
        let mut r = CurvTensor::zero();
        r.set(0, 1, 0, 1, q(1));
        assert!(r.check_pair_symmetries().is_err());
    }
}
