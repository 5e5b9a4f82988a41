//! Python bindings. Reports cross the boundary as JSON strings, which are
//! the structured source of truth on the Rust side too.

use std::path::PathBuf;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use nearkahler::hodge_model::{build_model, degree2_block, moduli_dimension, verify_hodge_model};
use nearkahler::report::{parse_sections, Section, VerificationCertificate};
use nearkahler::spectra::{self, parse_cutoff, SpectraConfig, SpectralBundle};
use nearkahler::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Config(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn json<T: serde::Serialize>(v: &T) -> PyResult<String> {
    serde_json::to_string_pretty(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pyclass(name = "IrrepLabel", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyIrrep(spectra::IrrepLabel);

#[pymethods]
impl PyIrrep {
    /// Spins given as twice their value, e.g. (2, 1, 1) for (1, 1/2, 1/2).
    #[new]
    fn new(a: u32, b: u32, c: u32) -> Self {
        Self(spectra::IrrepLabel::new([a, b, c]))
    }

    #[getter]
    fn twice(&self) -> (u32, u32, u32) {
        let [a, b, c] = self.0.twice;
        (a, b, c)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Casimir eigenvalue as an exact fraction string.
    #[getter]
    fn casimir(&self) -> String {
        self.0.casimir().to_string()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("IrrepLabel{}", self.0)
    }
}

#[pyclass(name = "SpectralEngine", frozen)]
struct PyEngine(spectra::SpectralEngine);

#[pymethods]
impl PyEngine {
    #[new]
    #[pyo3(signature = (cache_dir=None, tol_cluster=1e-6, tol_operator=1e-9, tol_oracle=1e-8))]
    fn new(cache_dir: Option<PathBuf>, tol_cluster: f64, tol_operator: f64, tol_oracle: f64) -> PyResult<Self> {
        let cfg = SpectraConfig {
            tol_cluster,
            tol_operator,
            tol_oracle,
        };
        spectra::SpectralEngine::new(cfg, cache_dir).map(Self).map_err(to_py)
    }

    /// JSON spectral report for lambda0|lambda2|coclosed11|tt.
    #[pyo3(signature = (bundle, cutoff="60"))]
    fn spectrum(&self, py: Python<'_>, bundle: &str, cutoff: &str) -> PyResult<String> {
        let b: SpectralBundle = bundle.parse().map_err(to_py)?;
        let c = parse_cutoff(cutoff).map_err(to_py)?;
        let r = py.detach(|| self.0.spectrum(b, c)).map_err(to_py)?;
        Ok(r.to_json())
    }

    /// JSON blockwise comparison of Einstein deformations with E(2) + E(6) + E(12).
    #[pyo3(signature = (cutoff="60"))]
    fn moduli(&self, py: Python<'_>, cutoff: &str) -> PyResult<String> {
        let c = parse_cutoff(cutoff).map_err(to_py)?;
        let r = py.detach(|| self.0.moduli(c)).map_err(to_py)?;
        Ok(r.to_json())
    }

    #[pyo3(signature = (cutoff="60"))]
    fn e_lambda_dims(&self, py: Python<'_>, cutoff: &str) -> PyResult<(usize, usize, usize)> {
        let c = parse_cutoff(cutoff).map_err(to_py)?;
        py.detach(|| self.0.e_lambda_dims(c)).map_err(to_py)
    }

    #[pyo3(signature = (cutoff="60"))]
    fn einstein_moduli_dim(&self, py: Python<'_>, cutoff: &str) -> PyResult<usize> {
        let c = parse_cutoff(cutoff).map_err(to_py)?;
        py.detach(|| self.0.einstein_moduli_dim(c)).map_err(to_py)
    }

    /// (hits, built, rejected) cache counters since construction.
    fn cache_stats(&self) -> (usize, usize, usize) {
        let s = self.0.cache_stats();
        (s.hits, s.built, s.rejected)
    }
}

#[pyfunction]
fn enumerate_irreps(cutoff: &str) -> PyResult<Vec<PyIrrep>> {
    let c = parse_cutoff(cutoff).map_err(to_py)?;
    Ok(spectra::enumerate_irreps(c).map_err(to_py)?.into_iter().map(PyIrrep).collect())
}

/// Certificate JSON for the algebraic sections (fiber, curvature, jets, hodge).
#[pyfunction]
#[pyo3(signature = (section="all"))]
fn verify(py: Python<'_>, section: &str) -> PyResult<String> {
    let sections: Vec<Section> = parse_sections(section)
        .map_err(to_py)?
        .into_iter()
        .filter(|s| *s != Section::Spectra)
        .collect();
    let s = nearkahler::fiber::SU3Structure::standard();
    let checks = py
        .detach(|| -> nearkahler::Result<Vec<_>> {
            let mut out = Vec::new();
            for sec in &sections {
                out.extend(match sec {
                    Section::Fiber => nearkahler::fiber::verify_fiber_identities(&s)?,
                    Section::Curvature => nearkahler::curvature::verify_curvature_identities(&s)?,
                    Section::Jets => nearkahler::jets::verify_jet_identities(&s)?,
                    Section::Hodge => verify_hodge_model()?,
                    Section::Spectra => Vec::new(),
                });
            }
            Ok(out)
        })
        .map_err(to_py)?;
    json(&VerificationCertificate::new(sections, checks))
}

/// Characteristic polynomial (ascending coefficients, exact strings) of Δ on
/// the degree-2 block span{φ, δσ, *dσ} of the model complex.
#[pyfunction]
fn degree2_charpoly() -> PyResult<Vec<String>> {
    let m = build_model().map_err(to_py)?;
    let b = degree2_block(&m.a).ok_or_else(|| PyRuntimeError::new_err("degree-2 block is not invariant"))?;
    Ok(b.charpoly().iter().map(|x| x.to_string()).collect())
}

/// Dimension of infinitesimal Einstein deformations from dim E(2), E(6), E(12).
#[pyfunction]
fn einstein_deformation_dim(e2: usize, e6: usize, e12: usize) -> usize {
    moduli_dimension(e2, e6, e12).total
}

/// Runs the command-line program in-process; returns (exit code, stdout).
#[pyfunction]
fn run_cli(py: Python<'_>, args: Vec<String>) -> (i32, String) {
    py.detach(|| {
        let mut out = Vec::new();
        let code = nearkahler::app::run(std::iter::once("nearkahler".to_string()).chain(args), &mut out);
        (code, String::from_utf8_lossy(&out).into_owned())
    })
}

#[pymodule]
fn nearkahler_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIrrep>()?;
    m.add_class::<PyEngine>()?;
    m.add_function(wrap_pyfunction!(enumerate_irreps, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(degree2_charpoly, m)?)?;
    m.add_function(wrap_pyfunction!(einstein_deformation_dim, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add("DEFAULT_CUTOFF", spectra::DEFAULT_CUTOFF)?;
    Ok(())
}
