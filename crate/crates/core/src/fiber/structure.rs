//! The SU(3) structure on the model fiber and the induced ⋆-action.

use num_traits::{One, Zero};

use super::endo::{form2_to_endo, FiberEndo};
use super::forms::{form_dim, index_of, FiberForm, FiberVector, DIM};
use crate::linalg::{q, Q, QMat};

/// Action of an endomorphism as a derivation. Implemented for every tensor
/// kind the fiber engine carries; other kinds do not compile.
pub trait StarAction: Sized {
    fn star_by(&self, a: &FiberEndo) -> Self;
}

impl StarAction for FiberVector {
    fn star_by(&self, a: &FiberEndo) -> Self {
        a.apply(self)
    }
}

impl StarAction for FiberEndo {
    fn star_by(&self, a: &FiberEndo) -> Self {
        a.commutator(self)
    }
}

impl StarAction for FiberForm {
    // A⋆u = −Σ A_ij e^j ∧ (e_i ⌟ u)
    fn star_by(&self, a: &FiberEndo) -> Self {
        let p = self.degree();
        let mut out = vec![Q::zero(); form_dim(p)];
        for (m, c) in self.terms() {
            for i in 0..DIM {
                if m & (1 << i) == 0 {
                    continue;
                }
                let rest = m & !(1 << i);
                // sign of pulling e^i to the front, then of inserting e^j
                let s_i = (m & ((1u8 << i) - 1)).count_ones();
                for j in 0..DIM {
                    let aij = a.entry(i, j);
                    if aij.is_zero() || rest & (1 << j) != 0 {
                        continue;
                    }
                    let s_j = (rest & ((1u8 << j) - 1)).count_ones();
                    let v = c * aij;
                    let n = index_of(rest | (1 << j));
                    if (s_i + s_j) % 2 == 0 {
                        out[n] -= v;
                    } else {
                        out[n] += v;
                    }
                }
            }
        }
        FiberForm::from_coeffs(p, out)
    }
}

/// `a⋆t` for any supported tensor kind.
pub fn star_action<T: StarAction>(a: &FiberEndo, t: &T) -> T {
    t.star_by(a)
}

/// Matrix of `a⋆` on Λ^p in the standard basis.
pub fn star_matrix_forms(a: &FiberEndo, p: usize) -> QMat {
    let cols: Vec<Vec<Q>> = (0..form_dim(p))
        .map(|n| FiberForm::basis(p, n).star_by(a).coeffs().to_vec())
        .collect();
    QMat::from_columns(form_dim(p), &cols)
}

/// Matrix of `a⋆ = [a, ·]` on End in row-major coordinates.
pub fn star_matrix_endo(a: &FiberEndo) -> QMat {
    let cols: Vec<Vec<Q>> = (0..DIM * DIM)
        .map(|n| FiberEndo::unit(n / DIM, n % DIM).star_by(a).coords())
        .collect();
    QMat::from_columns(DIM * DIM, &cols)
}

/// J, ω and ψ⁺ on the fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SU3Structure {
    j: FiberEndo,
    omega: FiberForm,
    psi_plus: FiberForm,
}

impl SU3Structure {
    /// J e_{2k} = e_{2k+1}, ω = e01 + e23 + e45,
    /// ψ⁺ = Re((e0 + i e1) ∧ (e2 + i e3) ∧ (e4 + i e5)).
    pub fn standard() -> Self {
        let mut jm = QMat::zeros(DIM, DIM);
        for k in 0..3 {
            jm[(2 * k + 1, 2 * k)] = Q::one();
            jm[(2 * k, 2 * k + 1)] = -Q::one();
        }
        let psi_plus = FiberForm::from_terms(
            3,
            &[
                (&[0, 2, 4], q(1)),
                (&[0, 3, 5], q(-1)),
                (&[1, 2, 5], q(-1)),
                (&[1, 3, 4], q(-1)),
            ],
        );
        Self::new(FiberEndo::from_matrix(jm), psi_plus)
    }

    /// Builds a structure from J and ψ⁺; ω = g(J·, ·). No compatibility is
    /// enforced, which is what the failure-path fixtures rely on.
    pub fn new(j: FiberEndo, psi_plus: FiberForm) -> Self {
        let omega = j.to_form2().expect("J must be skew");
        Self { j, omega, psi_plus }
    }

    pub fn j(&self) -> &FiberEndo {
        &self.j
    }

    pub fn omega(&self) -> &FiberForm {
        &self.omega
    }

    pub fn psi_plus(&self) -> &FiberForm {
        &self.psi_plus
    }

    pub fn psi_minus(&self) -> FiberForm {
        self.psi_plus.hodge_star()
    }

    pub fn jv(&self, x: &FiberVector) -> FiberVector {
        self.j.apply(x)
    }

    /// A_X = −(JX ⌟ ψ⁺), read as a skew endomorphism.
    pub fn a_tensor(&self, x: &FiberVector) -> FiberEndo {
        let two = self.psi_plus.contract(&self.jv(x)).expect("ψ⁺ has degree 3");
        -&form2_to_endo(&two).expect("degree 2")
    }

    pub fn a_basis(&self) -> Vec<FiberEndo> {
        (0..DIM).map(|i| self.a_tensor(&FiberVector::basis(i))).collect()
    }
}

impl Default for SU3Structure {
    fn default() -> Self {
        Self::standard()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber::endo::e_wedge;

    #[test]
    fn star_on_one_forms_matches_vectors_for_skew() {
        let s = SU3Structure::standard();
        for a in s.a_basis() {
            for i in 0..6 {
                let v = FiberVector::basis(i);
                assert_eq!(v.flat().star_by(&a), v.star_by(&a).flat());
            }
        }
    }

    #[test]
    fn star_is_derivation_of_wedge() {
        let a = &e_wedge(0, 3) + &FiberEndo::unit(2, 5);
        let u = FiberForm::monomial(&[0, 2]);
        let v = FiberForm::monomial(&[3, 5]);
        let lhs = u.wedge(&v).unwrap().star_by(&a);
        let rhs = &u.star_by(&a).wedge(&v).unwrap() + &u.wedge(&v.star_by(&a)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn omega_and_psi_normalization() {
        let s = SU3Structure::standard();
        assert_eq!(
            s.omega(),
            &FiberForm::from_terms(2, &[(&[0, 1], q(1)), (&[2, 3], q(1)), (&[4, 5], q(1))])
        );
        assert!(s.psi_plus().wedge(s.omega()).unwrap().is_zero());
        assert_eq!(s.psi_plus().norm_sq(), q(4));
    }

    #[test]
    fn a_tensor_shape() {
        let s = SU3Structure::standard();
        for i in 0..6 {
            let x = FiberVector::basis(i);
            let a = s.a_tensor(&x);
            assert!(a.is_skew());
            assert!(a.apply(&x).is_zero());
            assert_eq!(a.compose(s.j()), -&s.j().compose(&a));
        }
    }
}
