//! Curvature endomorphisms on the model fiber: Casimir, q(R), the relation
//! between the Levi-Civita and canonical Hermitian curvatures, and the
//! difference operator q(R) − q(R̄).

pub mod bundle;
pub mod difference;
pub mod gray;
pub mod tensor;
pub mod verify;

pub use bundle::{casimir, q_endo, Bundle, BundleOperator};
pub use difference::{difference_operator, sum_j_pairs, sum_j_square};
pub use gray::{check_hermitian_type, correction_tensor, gray_relation, RbarSpace};
pub use tensor::CurvTensor;
pub use verify::verify_curvature_identities;
