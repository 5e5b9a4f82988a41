//! The curvature-free operator q(R) − q(R̄) on the nearly Kähler model fiber.

use super::bundle::{casimir, Bundle, BundleOperator};
use crate::fiber::endo::wedge_endo;
use crate::fiber::forms::{FiberVector, DIM};
use crate::fiber::structure::SU3Structure;
use crate::linalg::{qf, QMat};

fn je(s: &SU3Structure, i: usize) -> FiberVector {
    s.jv(&FiberVector::basis(i))
}

/// S1 = Σ_{i,j} (e_i∧e_j)⋆ (Je_i∧Je_j)⋆, summed over all ordered pairs.
pub fn sum_j_pairs(bundle: Bundle, s: &SU3Structure) -> BundleOperator {
    let mut m = QMat::zeros(bundle.dim(), bundle.dim());
    for i in 0..DIM {
        for j in 0..DIM {
            if i == j {
                continue;
            }
            let lhs = bundle.rep(&wedge_endo(&FiberVector::basis(i), &FiberVector::basis(j)));
            let rhs = bundle.rep(&wedge_endo(&je(s, i), &je(s, j)));
            m = &m + &(&lhs * &rhs);
        }
    }
    BundleOperator { bundle, matrix: m }
}

/// S2 = (e_i∧Je_i)⋆ (e_k∧Je_k)⋆.
pub fn sum_j_square(bundle: Bundle, s: &SU3Structure) -> BundleOperator {
    let mut a = crate::fiber::endo::FiberEndo::zero();
    for i in 0..DIM {
        a = &a + &wedge_endo(&FiberVector::basis(i), &je(s, i));
    }
    let rho = bundle.rep(&a);
    BundleOperator {
        bundle,
        matrix: &rho * &rho,
    }
}

/// q(R) − q(R̄) = −¼ Cas + ⅜ S1 − ⅛ S2. Built from J and the ⋆-action only.
pub fn difference_operator(bundle: Bundle, s: &SU3Structure) -> BundleOperator {
    let mut m = casimir(bundle).matrix.scale(qf(-1, 4));
    m.axpy(qf(3, 8), &sum_j_pairs(bundle, s).matrix);
    m.axpy(qf(-1, 8), &sum_j_square(bundle, s).matrix);
    BundleOperator { bundle, matrix: m }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn tangent_table() {
        let s = SU3Structure::standard();
        let id = QMat::identity(6);
        assert_eq!(sum_j_pairs(Bundle::Tangent, &s).matrix, id.scale(q(-2)));
        assert_eq!(sum_j_square(Bundle::Tangent, &s).matrix, id.scale(q(-4)));
        assert_eq!(difference_operator(Bundle::Tangent, &s).matrix, id);
        assert_eq!(difference_operator(Bundle::Forms(1), &s).matrix, id);
    }
}
