//! Endomorphisms of the fiber. Matrix entry (i, j) is ⟨e_i, M e_j⟩.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::forms::{FiberForm, FiberVector, DIM};
use crate::error::{Error, Result};
use crate::linalg::{qf, Q, QMat};

#[derive(Clone, PartialEq, Eq)]
pub struct FiberEndo(QMat);

/// Symmetric J-commuting, symmetric J-anticommuting and skew parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoSplit {
    pub sym_plus: FiberEndo,
    pub sym_minus: FiberEndo,
    pub skew: FiberEndo,
}

impl FiberEndo {
    pub fn zero() -> Self {
        Self(QMat::zeros(DIM, DIM))
    }

    pub fn identity() -> Self {
        Self(QMat::identity(DIM))
    }

    pub fn from_matrix(m: QMat) -> Self {
        assert_eq!((m.rows(), m.cols()), (DIM, DIM), "fiber endomorphisms are 6x6");
        Self(m)
    }

    pub fn from_fn(f: impl FnMut(usize, usize) -> Q) -> Self {
        Self(QMat::from_fn(DIM, DIM, f))
    }

    /// Elementary matrix E_{rc}.
    pub fn unit(r: usize, c: usize) -> Self {
        Self::from_fn(|i, j| if (i, j) == (r, c) { Q::one() } else { Q::zero() })
    }

    pub fn diag(d: [Q; DIM]) -> Self {
        Self::from_fn(|i, j| if i == j { d[i] } else { Q::zero() })
    }

    pub fn matrix(&self) -> &QMat {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> Q {
        self.0[(i, j)]
    }

    pub fn coords(&self) -> Vec<Q> {
        (0..DIM * DIM).map(|n| self.0[(n / DIM, n % DIM)]).collect()
    }

    pub fn from_coords(c: &[Q]) -> Self {
        assert_eq!(c.len(), DIM * DIM);
        Self::from_fn(|i, j| c[i * DIM + j])
    }

    pub fn apply(&self, v: &FiberVector) -> FiberVector {
        FiberVector::from_slice(&self.0.mul_vec(&v.0))
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        Self(&(&self.0 * &other.0) - &(&other.0 * &self.0))
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn trace(&self) -> Q {
        self.0.trace()
    }

    pub fn scale(&self, s: Q) -> Self {
        Self(self.0.scale(s))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_symmetric(&self) -> bool {
        self.0 == self.0.transpose()
    }

    pub fn is_skew(&self) -> bool {
        (&self.0 + &self.0.transpose()).is_zero()
    }

    /// Frobenius inner product tr(AᵀB).
    pub fn inner(&self, other: &Self) -> Q {
        self.coords().iter().zip(other.coords()).map(|(a, b)| *a * b).sum()
    }

    /// Splits into Sym⁺, Sym⁻ and skew parts with respect to `j`.
    pub fn split(&self, j: &FiberEndo) -> EndoSplit {
        let half = qf(1, 2);
        let sym = (self + &self.transpose()).scale(half);
        let skew = (self - &self.transpose()).scale(half);
        let jsj = j.compose(&sym).compose(j);
        EndoSplit {
            sym_plus: (&sym - &jsj).scale(half),
            sym_minus: (&sym + &jsj).scale(half),
            skew,
        }
    }

    /// The 2-form φ with φ(Y, Z) = g(AY, Z). Requires a skew endomorphism.
    pub fn to_form2(&self) -> Result<FiberForm> {
        if !self.is_skew() {
            return Err(Error::NotInSubspace("skew endomorphisms".into()));
        }
        Ok(endo_to_form2_unchecked(self))
    }
}

// (e_i ∧ e_j) sends e_i to e_j and e_j to -e_i, so A[z][y] = φ(e_y, e_z).
fn endo_to_form2_unchecked(a: &FiberEndo) -> FiberForm {
    let mut c = Vec::with_capacity(15);
    for y in 0..DIM {
        for z in y + 1..DIM {
            c.push(a.entry(z, y));
        }
    }
    FiberForm::from_coeffs(2, c)
}

/// The skew endomorphism A with g(AY, Z) = φ(Y, Z).
pub fn form2_to_endo(phi: &FiberForm) -> Result<FiberEndo> {
    if phi.degree() != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: phi.degree(),
        });
    }
    let mut m = QMat::zeros(DIM, DIM);
    for y in 0..DIM {
        for z in y + 1..DIM {
            let c = phi.coeff(&[y, z]);
            m[(z, y)] = c;
            m[(y, z)] = -c;
        }
    }
    Ok(FiberEndo(m))
}

/// X ∧ Y as a skew endomorphism: Z ↦ g(X, Z)Y − g(Y, Z)X.
pub fn wedge_endo(x: &FiberVector, y: &FiberVector) -> FiberEndo {
    FiberEndo::from_fn(|r, c| y.0[r] * x.0[c] - x.0[r] * y.0[c])
}

/// Basis e_i ∧ e_j as skew endomorphism.
pub fn e_wedge(i: usize, j: usize) -> FiberEndo {
    wedge_endo(&FiberVector::basis(i), &FiberVector::basis(j))
}

impl Add for &FiberEndo {
    type Output = FiberEndo;
    fn add(self, o: &FiberEndo) -> FiberEndo {
        FiberEndo(&self.0 + &o.0)
    }
}

impl Sub for &FiberEndo {
    type Output = FiberEndo;
    fn sub(self, o: &FiberEndo) -> FiberEndo {
        FiberEndo(&self.0 - &o.0)
    }
}

impl Neg for &FiberEndo {
    type Output = FiberEndo;
    fn neg(self) -> FiberEndo {
        FiberEndo(-&self.0)
    }
}

impl Mul<Q> for &FiberEndo {
    type Output = FiberEndo;
    fn mul(self, s: Q) -> FiberEndo {
        self.scale(s)
    }
}

impl fmt::Debug for FiberEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn j() -> FiberEndo {
        let mut m = QMat::zeros(6, 6);
        for k in 0..3 {
            m[(2 * k + 1, 2 * k)] = q(1);
            m[(2 * k, 2 * k + 1)] = q(-1);
        }
        FiberEndo::from_matrix(m)
    }

    #[test]
    fn wedge_convention() {
        let a = e_wedge(0, 1);
        assert_eq!(a.apply(&FiberVector::basis(0)), FiberVector::basis(1));
        assert_eq!(a.apply(&FiberVector::basis(1)), -FiberVector::basis(0));
        assert_eq!(a.to_form2().unwrap(), FiberForm::monomial(&[0, 1]));
    }

    #[test]
    fn form_endo_round_trip() {
        for n in 0..15 {
            let f = FiberForm::basis(2, n);
            let e = form2_to_endo(&f).unwrap();
            assert!(e.is_skew());
            assert_eq!(e.to_form2().unwrap(), f);
            let idx = super::super::forms::multi_index(2, n);
            assert_eq!(e, e_wedge(idx[0], idx[1]));
        }
        assert!(FiberEndo::identity().to_form2().is_err());
    }

    #[test]
    fn split_recomposes() {
        let m = FiberEndo::from_fn(|r, c| q((r * 7 + c * 3) as i64 % 5 - 2));
        let s = m.split(&j());
        assert_eq!(&(&s.sym_plus + &s.sym_minus) + &s.skew, m);
        let jj = j();
        assert_eq!(s.sym_plus.compose(&jj), jj.compose(&s.sym_plus));
        assert_eq!(s.sym_minus.compose(&jj), -&jj.compose(&s.sym_minus));
        assert_eq!(s.sym_minus.trace(), q(0));
        assert!(s.skew.is_skew());
    }
}
