//! Verification and spectral toolkit for six-dimensional nearly Kähler geometry.
//!
//! The algebraic layers (`fiber`, `curvature`, `jets`, `hodge_model`) work in
//! exact rational arithmetic; `spectra` computes Laplace spectra on the
//! homogeneous space SU(2)³/ΔSU(2) in floating point.

pub mod app;
pub mod error;
pub mod fiber;
pub mod hodge_model;
pub mod jets;
pub mod linalg;
pub mod curvature;
pub mod report;
pub mod spectra;

pub use error::{Error, Result};
