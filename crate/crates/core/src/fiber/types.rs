//! SU(3) type decompositions of Λ², Λ³ and Sym, and the identifications
//! Sym⁺ ≅ Λ^{(1,1)} and Sym⁻ ≅ Λ^{(2,1)+(1,2)}_0.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::endo::{form2_to_endo, FiberEndo};
use super::forms::{form_dim, FiberForm, FiberVector, DIM};
use super::structure::{StarAction, SU3Structure};
use crate::error::{Error, Result};
use crate::linalg::{q, qf, Q, QMat, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TypeLabel {
    /// primitive (1,1)-forms
    L2Primitive11,
    /// (2,0)+(0,2)-forms
    L2Type20,
    /// multiples of ω
    L2Omega,
    /// (3,0)+(0,3)-forms
    L3Type30,
    /// primitive (2,1)+(1,2)-forms
    L3Primitive21,
    /// Λ¹ ∧ ω
    L3OneWedgeOmega,
    SymPlus0,
    SymMinus,
    Trace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Forms2,
    Forms3,
    Sym,
}

impl Family {
    pub fn labels(self) -> &'static [TypeLabel] {
        use TypeLabel::*;
        match self {
            Family::Forms2 => &[L2Primitive11, L2Type20, L2Omega],
            Family::Forms3 => &[L3Type30, L3Primitive21, L3OneWedgeOmega],
            Family::Sym => &[SymPlus0, SymMinus, Trace],
        }
    }

    pub fn ambient_dim(self) -> usize {
        match self {
            Family::Forms2 => 15,
            Family::Forms3 => 20,
            Family::Sym => 21,
        }
    }
}

impl TypeLabel {
    pub const ALL: [TypeLabel; 9] = [
        TypeLabel::L2Primitive11,
        TypeLabel::L2Type20,
        TypeLabel::L2Omega,
        TypeLabel::L3Type30,
        TypeLabel::L3Primitive21,
        TypeLabel::L3OneWedgeOmega,
        TypeLabel::SymPlus0,
        TypeLabel::SymMinus,
        TypeLabel::Trace,
    ];

    pub fn family(self) -> Family {
        use TypeLabel::*;
        match self {
            L2Primitive11 | L2Type20 | L2Omega => Family::Forms2,
            L3Type30 | L3Primitive21 | L3OneWedgeOmega => Family::Forms3,
            SymPlus0 | SymMinus | Trace => Family::Sym,
        }
    }

    pub fn dim(self) -> usize {
        use TypeLabel::*;
        match self {
            L2Primitive11 => 8,
            L2Type20 => 6,
            L2Omega => 1,
            L3Type30 => 2,
            L3Primitive21 => 12,
            L3OneWedgeOmega => 6,
            SymPlus0 => 8,
            SymMinus => 12,
            Trace => 1,
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use TypeLabel::*;
        let s = match self {
            L2Primitive11 => "Λ²-(1,1)₀",
            L2Type20 => "Λ²-(2,0)+(0,2)",
            L2Omega => "Λ²-ℝω",
            L3Type30 => "Λ³-(3,0)+(0,3)",
            L3Primitive21 => "Λ³-(2,1)+(1,2)₀",
            L3OneWedgeOmega => "Λ³-Λ¹∧ω",
            SymPlus0 => "Sym⁺₀",
            SymMinus => "Sym⁻",
            Trace => "trace-part",
        };
        f.write_str(s)
    }
}

/// α̂(X, Y, Z) = α(JX, JY, Z) + α(JX, Y, JZ) + α(X, JY, JZ), evaluated directly.
pub fn hat(alpha: &FiberForm, s: &SU3Structure) -> Result<FiberForm> {
    if alpha.degree() != 3 {
        return Err(Error::DegreeMismatch {
            expected: 3,
            found: alpha.degree(),
        });
    }
    let mut out = FiberForm::zero(3);
    let mut coeffs = out.coeffs().to_vec();
    for (n, c) in coeffs.iter_mut().enumerate() {
        let idx = super::forms::multi_index(3, n);
        let e: Vec<FiberVector> = idx.iter().map(|&i| FiberVector::basis(i)).collect();
        let je: Vec<FiberVector> = e.iter().map(|v| s.jv(v)).collect();
        *c = alpha.eval(&[je[0], je[1], e[2]])?
            + alpha.eval(&[je[0], e[1], je[2]])?
            + alpha.eval(&[e[0], je[1], je[2]])?;
    }
    out = FiberForm::from_coeffs(3, coeffs);
    Ok(out)
}

fn kind_mismatch(label: TypeLabel, kind: &'static str) -> Error {
    Error::KindMismatch {
        label: label.to_string(),
        kind,
    }
}

/// Projection of a 2- or 3-form onto a type component.
pub fn project_form(a: &FiberForm, label: TypeLabel, s: &SU3Structure) -> Result<FiberForm> {
    let quarter = qf(1, 4);
    match (label.family(), a.degree()) {
        (Family::Forms2, 2) => {
            let omega_part = s.omega().scale(a.inner(s.omega())? / q(3));
            let p11 = (a + &a.pullback(s.j().matrix())).scale(qf(1, 2));
            Ok(match label {
                TypeLabel::L2Omega => omega_part,
                TypeLabel::L2Primitive11 => &p11 - &omega_part,
                _ => a - &p11,
            })
        }
        (Family::Forms3, 3) => {
            let ah = hat(a, s)?;
            let p30 = (a - &ah).scale(quarter);
            let p21 = (&a.scale(q(3)) + &ah).scale(quarter);
            let mut lw = FiberForm::zero(3);
            for i in 0..DIM {
                let b = FiberForm::basis(1, i).wedge(s.omega())?;
                lw = &lw + &b.scale(a.inner(&b)? / b.norm_sq());
            }
            Ok(match label {
                TypeLabel::L3Type30 => p30,
                TypeLabel::L3OneWedgeOmega => lw,
                _ => &p21 - &lw,
            })
        }
        (Family::Sym, _) => Err(kind_mismatch(label, "forms")),
        _ => Err(Error::DegreeMismatch {
            expected: if label.family() == Family::Forms2 { 2 } else { 3 },
            found: a.degree(),
        }),
    }
}

/// Projection of a symmetric endomorphism onto a type component.
pub fn project_endo(h: &FiberEndo, label: TypeLabel, s: &SU3Structure) -> Result<FiberEndo> {
    if label.family() != Family::Sym {
        return Err(kind_mismatch(label, "endomorphisms"));
    }
    if !h.is_symmetric() {
        return Err(Error::NotInSubspace("Sym".into()));
    }
    let trace_part = FiberEndo::identity().scale(h.trace() / q(DIM as i64));
    let split = h.split(s.j());
    Ok(match label {
        TypeLabel::Trace => trace_part,
        TypeLabel::SymPlus0 => &split.sym_plus - &trace_part,
        _ => split.sym_minus,
    })
}

/// Type projection for any kind that carries one of the decompositions.
pub trait Project: Sized {
    fn project(&self, label: TypeLabel, s: &SU3Structure) -> Result<Self>;
}

impl Project for FiberForm {
    fn project(&self, label: TypeLabel, s: &SU3Structure) -> Result<Self> {
        project_form(self, label, s)
    }
}

impl Project for FiberEndo {
    fn project(&self, label: TypeLabel, s: &SU3Structure) -> Result<Self> {
        project_endo(self, label, s)
    }
}

/// Standard basis of the symmetric endomorphisms: E_ii, then E_ij + E_ji.
pub fn sym_basis() -> Vec<FiberEndo> {
    let mut out = Vec::with_capacity(21);
    for i in 0..DIM {
        for j in i..DIM {
            let e = FiberEndo::unit(i, j);
            out.push(if i == j { e } else { &e + &FiberEndo::unit(j, i) });
        }
    }
    out
}

/// An exact spanning basis of a type component.
pub fn label_basis_forms(label: TypeLabel, s: &SU3Structure) -> Result<Vec<FiberForm>> {
    let p = match label.family() {
        Family::Forms2 => 2,
        Family::Forms3 => 3,
        Family::Sym => return Err(kind_mismatch(label, "forms")),
    };
    let mut images = Vec::new();
    for n in 0..form_dim(p) {
        images.push(project_form(&FiberForm::basis(p, n), label, s)?.coeffs().to_vec());
    }
    let sub = Subspace::span(form_dim(p), images);
    Ok(sub
        .basis()
        .iter()
        .map(|c| FiberForm::from_coeffs(p, c.clone()))
        .collect())
}

pub fn label_basis_endos(label: TypeLabel, s: &SU3Structure) -> Result<Vec<FiberEndo>> {
    if label.family() != Family::Sym {
        return Err(kind_mismatch(label, "endomorphisms"));
    }
    let mut images = Vec::new();
    for b in sym_basis() {
        images.push(project_endo(&b, label, s)?.coords());
    }
    let sub = Subspace::span(DIM * DIM, images);
    Ok(sub.basis().iter().map(|c| FiberEndo::from_coords(c)).collect())
}

/// h ↦ g(Jh·, ·). Defined on Sym⁺.
pub fn sym_to_form(h: &FiberEndo, s: &SU3Structure) -> Result<FiberForm> {
    if !h.is_symmetric() || h.compose(s.j()) != s.j().compose(h) {
        return Err(Error::NotInSubspace("Sym⁺".into()));
    }
    s.j().compose(h).to_form2()
}

/// Inverse of [`sym_to_form`] on (1,1)-forms.
pub fn form_to_sym(phi: &FiberForm, s: &SU3Structure) -> Result<FiberEndo> {
    let a = form2_to_endo(phi)?;
    if a.compose(s.j()) != s.j().compose(&a) {
        return Err(Error::NotInSubspace("Λ^(1,1)".into()));
    }
    Ok(-&s.j().compose(&a))
}

/// S ↦ S⋆ψ⁺. Defined on Sym⁻.
pub fn symminus_to_3form(sm: &FiberEndo, s: &SU3Structure) -> Result<FiberForm> {
    if !sm.is_symmetric() || sm.compose(s.j()) != -&s.j().compose(sm) {
        return Err(Error::NotInSubspace("Sym⁻".into()));
    }
    Ok(s.psi_plus().star_by(sm))
}

/// The matrix of S ↦ S⋆ψ⁺ on the Sym⁻ basis from [`label_basis_endos`].
pub fn symminus_map_matrix(s: &SU3Structure) -> Result<(Vec<FiberEndo>, QMat)> {
    let basis = label_basis_endos(TypeLabel::SymMinus, s)?;
    let cols: Vec<Vec<Q>> = basis
        .iter()
        .map(|b| symminus_to_3form(b, s).map(|f| f.coeffs().to_vec()))
        .collect::<Result<_>>()?;
    Ok((basis, QMat::from_columns(20, &cols)))
}

/// Inverse of [`symminus_to_3form`]; fails outside its image.
pub fn form3_to_symminus(sigma: &FiberForm, s: &SU3Structure) -> Result<FiberEndo> {
    if sigma.degree() != 3 {
        return Err(Error::DegreeMismatch {
            expected: 3,
            found: sigma.degree(),
        });
    }
    let (basis, m) = symminus_map_matrix(s)?;
    let x = m
        .solve(sigma.coeffs())
        .ok_or_else(|| Error::NotInSubspace("S⋆ψ⁺ image".into()))?;
    let mut out = FiberEndo::zero();
    for (c, b) in x.iter().zip(&basis) {
        if !c.is_zero() {
            out = &out + &b.scale(*c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_dimensions() {
        let s = SU3Structure::standard();
        for label in TypeLabel::ALL {
            let n = match label.family() {
                Family::Sym => label_basis_endos(label, &s).unwrap().len(),
                _ => label_basis_forms(label, &s).unwrap().len(),
            };
            assert_eq!(n, label.dim(), "{label}");
        }
    }

    #[test]
    fn psi_plus_is_type_30() {
        let s = SU3Structure::standard();
        let psi = s.psi_plus();
        assert_eq!(hat(psi, &s).unwrap(), psi.scale(q(-3)));
        assert_eq!(&project_form(psi, TypeLabel::L3Type30, &s).unwrap(), psi);
        let e0w = FiberForm::basis(1, 0).wedge(s.omega()).unwrap();
        assert_eq!(project_form(&e0w, TypeLabel::L3OneWedgeOmega, &s).unwrap(), e0w);
    }

    #[test]
    fn sym_to_form_examples() {
        let s = SU3Structure::standard();
        assert_eq!(&sym_to_form(&FiberEndo::identity(), &s).unwrap(), s.omega());
        let h = FiberEndo::diag([q(1), q(1), q(-1), q(-1), q(0), q(0)]);
        let phi = sym_to_form(&h, &s).unwrap();
        assert_eq!(phi, FiberForm::from_terms(2, &[(&[0, 1], q(1)), (&[2, 3], q(-1))]));
        assert_eq!(form_to_sym(&phi, &s).unwrap(), h);
        assert!(sym_to_form(&FiberEndo::unit(0, 2), &s).is_err());
    }

    #[test]
    fn kind_mismatch_rejected() {
        let s = SU3Structure::standard();
        assert!(project_endo(&FiberEndo::identity(), TypeLabel::L2Omega, &s).is_err());
        assert!(project_form(s.omega(), TypeLabel::SymMinus, &s).is_err());
        assert!(project_form(s.omega(), TypeLabel::L3Type30, &s).is_err());
    }

    #[test]
    fn symminus_round_trip() {
        let s = SU3Structure::standard();
        let (basis, m) = symminus_map_matrix(&s).unwrap();
        assert_eq!(m.rank(), 12);
        for b in &basis {
            let sigma = symminus_to_3form(b, &s).unwrap();
            assert_eq!(&project_form(&sigma, TypeLabel::L3Primitive21, &s).unwrap(), &sigma);
            assert_eq!(&form3_to_symminus(&sigma, &s).unwrap(), b);
        }
        assert!(form3_to_symminus(s.psi_plus(), &s).is_err());
    }
}
