//! Exact multilinear algebra on the model SU(3) fiber.

pub mod endo;
pub mod forms;
pub mod structure;
pub mod types;
pub mod verify;

pub use endo::{e_wedge, form2_to_endo, wedge_endo, EndoSplit, FiberEndo};
pub use forms::{FiberForm, FiberVector};
pub use structure::{star_action, StarAction, SU3Structure};
pub use types::{
    form3_to_symminus, form_to_sym, hat, project_endo, project_form, sym_to_form,
    symminus_to_3form, Family, Project, TypeLabel,
};
pub use verify::verify_fiber_identities;
