//! Bundles associated to the fiber representation and operators on them:
//! the Casimir and the curvature endomorphism q(R).

use std::fmt;

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use super::tensor::{pairs, CurvTensor};
use crate::error::Result;
use crate::fiber::endo::{e_wedge, FiberEndo};
use crate::fiber::forms::{form_dim, DIM};
use crate::fiber::structure::{star_matrix_endo, star_matrix_forms};
use crate::linalg::{Q, QMat};

/// Ambient representation spaces. Type components (Sym, Λ²₀, ...) are handled
/// as subspaces of these, never as separate bundles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bundle {
    Tangent,
    Forms(usize),
    End,
}

impl Bundle {
    pub const ALL: [Bundle; 9] = [
        Bundle::Tangent,
        Bundle::Forms(0),
        Bundle::Forms(1),
        Bundle::Forms(2),
        Bundle::Forms(3),
        Bundle::Forms(4),
        Bundle::Forms(5),
        Bundle::Forms(6),
        Bundle::End,
    ];

    pub fn dim(self) -> usize {
        match self {
            Bundle::Tangent => DIM,
            Bundle::Forms(p) => form_dim(p),
            Bundle::End => DIM * DIM,
        }
    }

    /// Matrix of `a⋆` on this bundle.
    pub fn rep(self, a: &FiberEndo) -> QMat {
        match self {
            Bundle::Tangent => a.matrix().clone(),
            Bundle::Forms(p) => star_matrix_forms(a, p),
            Bundle::End => star_matrix_endo(a),
        }
    }

    fn slot(self) -> usize {
        match self {
            Bundle::Tangent => 0,
            Bundle::Forms(p) => 1 + p,
            Bundle::End => 8,
        }
    }
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bundle::Tangent => f.write_str("TM"),
            Bundle::Forms(p) => write!(f, "Λ^{p}"),
            Bundle::End => f.write_str("End"),
        }
    }
}

/// Cached ρ(e_i∧e_j) and their pairwise products on one bundle.
pub struct BundleReps {
    pub gens: Vec<QMat>,
    products: Vec<QMat>,
}

impl BundleReps {
    fn build(bundle: Bundle) -> Self {
        let gens: Vec<QMat> = pairs().map(|(i, j)| bundle.rep(&e_wedge(i, j))).collect();
        let mut products = Vec::with_capacity(gens.len() * gens.len());
        for a in &gens {
            for b in &gens {
                products.push(a * b);
            }
        }
        Self { gens, products }
    }

    /// ρ(e_a) ρ(e_b) for pair indices a, b.
    pub fn product(&self, a: usize, b: usize) -> &QMat {
        &self.products[a * self.gens.len() + b]
    }
}

static REPS: Lazy<Vec<BundleReps>> = Lazy::new(|| Bundle::ALL.iter().map(|b| BundleReps::build(*b)).collect());

pub fn reps(bundle: Bundle) -> &'static BundleReps {
    &REPS[bundle.slot()]
}

/// An operator on one of the bundles, exact entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleOperator {
    pub bundle: Bundle,
    pub matrix: QMat,
}

impl BundleOperator {
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        self.matrix.mul_vec(v)
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix == self.matrix.transpose()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.bundle, other.bundle);
        Self {
            bundle: self.bundle,
            matrix: &self.matrix - &other.matrix,
        }
    }
}

/// Cas = ½ Σ_{i,j} (e_i∧e_j)⋆(e_i∧e_j)⋆.
pub fn casimir(bundle: Bundle) -> BundleOperator {
    let r = reps(bundle);
    let mut m = QMat::zeros(bundle.dim(), bundle.dim());
    for a in 0..r.gens.len() {
        m.axpy(Q::from_integer(1), r.product(a, a));
    }
    BundleOperator { bundle, matrix: m }
}

/// q(R) = ½ Σ (e_i∧e_j)⋆ ℛ(e_i∧e_j)⋆ = Σ_{i<j, k<l} R_{ijkl} ρ(e_ij) ρ(e_kl).
///
/// Only the pair symmetries are required: the canonical Hermitian curvature
/// does not satisfy the first Bianchi identity.
pub fn q_endo(r: &CurvTensor, bundle: Bundle) -> Result<BundleOperator> {
    r.check_pair_symmetries()?;
    let reps = reps(bundle);
    let ps: Vec<(usize, usize)> = pairs().collect();
    let mut m = QMat::zeros(bundle.dim(), bundle.dim());
    for (a, &(i, j)) in ps.iter().enumerate() {
        for (b, &(k, l)) in ps.iter().enumerate() {
            m.axpy(r.get(i, j, k, l), reps.product(a, b));
        }
    }
    Ok(BundleOperator { bundle, matrix: m })
}

/// q(R) computed literally as ½ Σ_{i,j} ρ(e_i∧e_j) ρ(ℛ(e_i∧e_j)), without the
/// cached products. Used as an independent oracle in tests.
pub fn q_endo_direct(r: &CurvTensor, bundle: Bundle) -> BundleOperator {
    let mut m = QMat::zeros(bundle.dim(), bundle.dim());
    for i in 0..DIM {
        for j in 0..DIM {
            if i == j {
                continue;
            }
            let lhs = bundle.rep(&e_wedge(i, j));
            let rhs = bundle.rep(&r.operator_image(i, j));
            m.axpy(Q::new(1, 2), &(&lhs * &rhs));
        }
    }
    BundleOperator { bundle, matrix: m }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn casimir_on_forms_is_scalar() {
        for p in 0..=6 {
            let c = casimir(Bundle::Forms(p));
            let expected = -((p * (6 - p)) as i64);
            assert_eq!(c.matrix, QMat::identity(form_dim(p)).scale(q(expected)));
        }
        assert_eq!(casimir(Bundle::Tangent).matrix, QMat::identity(6).scale(q(-5)));
    }

    #[test]
    fn cached_q_matches_direct_sum() {
        let r = CurvTensor::constant(q(3));
        for b in [Bundle::Tangent, Bundle::Forms(2), Bundle::End] {
            assert_eq!(q_endo(&r, b).unwrap(), q_endo_direct(&r, b));
        }
    }
}
