//! First-jet model of sections of Λ^(1,1)₀, Λ^(2,1)+(1,2)₀, Sym⁺₀ and Sym⁻ at
//! a point, in a frame that is ∇-parallel there. A jet stores the value and
//! the six canonical derivatives ∇̄_{e_i}; the Levi-Civita derivative is
//! recovered as ∇_{e_i} = ∇̄_{e_i} + ½ A_{e_i}⋆.

pub mod verify;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fiber::endo::FiberEndo;
use crate::fiber::forms::{FiberForm, FiberVector, DIM};
use crate::fiber::structure::{StarAction, SU3Structure};
use crate::fiber::types::{
    form3_to_symminus, form_to_sym, label_basis_endos, label_basis_forms, project_endo, project_form,
    sym_to_form, symminus_to_3form, TypeLabel,
};
use crate::linalg::{q, qf, Q};

pub use verify::{einstein_translation_check, verify_jet_identities};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum JetBundle {
    Primitive11,
    Primitive21,
    SymPlus0,
    SymMinus,
}

impl JetBundle {
    pub const ALL: [JetBundle; 4] = [
        JetBundle::Primitive11,
        JetBundle::Primitive21,
        JetBundle::SymPlus0,
        JetBundle::SymMinus,
    ];

    pub fn label(self) -> TypeLabel {
        match self {
            JetBundle::Primitive11 => TypeLabel::L2Primitive11,
            JetBundle::Primitive21 => TypeLabel::L3Primitive21,
            JetBundle::SymPlus0 => TypeLabel::SymPlus0,
            JetBundle::SymMinus => TypeLabel::SymMinus,
        }
    }

    pub fn fiber_dim(self) -> usize {
        self.label().dim()
    }

    /// value + six derivative slots
    pub fn jet_dim(self) -> usize {
        7 * self.fiber_dim()
    }

    fn is_form(self) -> bool {
        matches!(self, JetBundle::Primitive11 | JetBundle::Primitive21)
    }
}

impl fmt::Display for JetBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Fiber types a jet can carry.
pub trait JetFiber: StarAction + Clone + PartialEq + fmt::Debug {
    const KIND: &'static str;
    fn zero_for(bundle: JetBundle) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, s: Q) -> Self;
    fn is_null(&self) -> bool;
    fn project_to(&self, bundle: JetBundle, s: &SU3Structure) -> Result<Self>;
    fn fiber_basis(bundle: JetBundle, s: &SU3Structure) -> Result<Vec<Self>>;
}

impl JetFiber for FiberForm {
    const KIND: &'static str = "forms";
    fn zero_for(bundle: JetBundle) -> Self {
        FiberForm::zero(if bundle == JetBundle::Primitive11 { 2 } else { 3 })
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, s: Q) -> Self {
        self.scale(s)
    }
    fn is_null(&self) -> bool {
        self.is_zero()
    }
    fn project_to(&self, bundle: JetBundle, s: &SU3Structure) -> Result<Self> {
        project_form(self, bundle.label(), s)
    }
    fn fiber_basis(bundle: JetBundle, s: &SU3Structure) -> Result<Vec<Self>> {
        label_basis_forms(bundle.label(), s)
    }
}

impl JetFiber for FiberEndo {
    const KIND: &'static str = "endomorphisms";
    fn zero_for(_: JetBundle) -> Self {
        FiberEndo::zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, s: Q) -> Self {
        self.scale(s)
    }
    fn is_null(&self) -> bool {
        self.is_zero()
    }
    fn project_to(&self, bundle: JetBundle, s: &SU3Structure) -> Result<Self> {
        project_endo(self, bundle.label(), s)
    }
    fn fiber_basis(bundle: JetBundle, s: &SU3Structure) -> Result<Vec<Self>> {
        label_basis_endos(bundle.label(), s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JetField<T> {
    bundle: JetBundle,
    value: T,
    deriv: Vec<T>,
}

impl<T: JetFiber> JetField<T> {
    /// Checks that the value and every derivative slot lie in the bundle; ∇̄
    /// preserves SU(3) types, so the slots must as well.
    pub fn new(bundle: JetBundle, value: T, deriv: Vec<T>, s: &SU3Structure) -> Result<Self> {
        if bundle.is_form() != (T::KIND == "forms") {
            return Err(Error::KindMismatch {
                label: bundle.to_string(),
                kind: T::KIND,
            });
        }
        if deriv.len() != DIM {
            return Err(Error::Config(format!("jet needs {DIM} derivative slots, got {}", deriv.len())));
        }
        for (slot, t) in std::iter::once(&value).chain(&deriv).enumerate() {
            if &t.project_to(bundle, s)? != t {
                return Err(Error::NotInSubspace(format!("{bundle} (jet slot {slot})")));
            }
        }
        Ok(Self { bundle, value, deriv })
    }

    pub fn zero(bundle: JetBundle) -> Self {
        Self {
            bundle,
            value: T::zero_for(bundle),
            deriv: vec![T::zero_for(bundle); DIM],
        }
    }

    pub fn bundle(&self) -> JetBundle {
        self.bundle
    }

    pub fn value(&self) -> &T {
        &self.value
    }

    /// ∇̄_{e_i} at the point.
    pub fn deriv(&self, i: usize) -> &T {
        &self.deriv[i]
    }

    pub fn plus(&self, o: &Self) -> Self {
        Self {
            bundle: self.bundle,
            value: self.value.plus(&o.value),
            deriv: self.deriv.iter().zip(&o.deriv).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn times(&self, c: Q) -> Self {
        Self {
            bundle: self.bundle,
            value: self.value.times(c),
            deriv: self.deriv.iter().map(|a| a.times(c)).collect(),
        }
    }

    /// Applies a fiber map slotwise. Valid for maps commuting with ∇̄, i.e.
    /// built from g, J and ψ⁺.
    pub fn map<U: JetFiber>(&self, bundle: JetBundle, f: impl Fn(&T) -> Result<U>) -> Result<JetField<U>> {
        Ok(JetField {
            bundle,
            value: f(&self.value)?,
            deriv: self.deriv.iter().map(&f).collect::<Result<_>>()?,
        })
    }

    /// ∇_{e_i} = ∇̄_{e_i} + ½ A_{e_i}⋆.
    pub fn nabla(&self, i: usize, s: &SU3Structure) -> T {
        self.deriv[i].plus(&self.value.star_by(&s.a_tensor(&FiberVector::basis(i))).times(qf(1, 2)))
    }

    /// Σ A_{e_i}⋆A_{e_i}⋆ applied to the value.
    pub fn a_square_sum(&self, s: &SU3Structure) -> T {
        let mut acc = T::zero_for(self.bundle);
        for a in s.a_basis() {
            acc = acc.plus(&self.value.star_by(&a).star_by(&a));
        }
        acc
    }

    /// Σ A_{e_i}⋆∇̄_{e_i}.
    pub fn a_deriv_sum(&self, s: &SU3Structure) -> T {
        let mut acc = T::zero_for(self.bundle);
        for (a, d) in s.a_basis().iter().zip(&self.deriv) {
            acc = acc.plus(&d.star_by(a));
        }
        acc
    }

    /// P = ∇*∇ − ∇̄*∇̄ = −¼ A_{e_i}⋆A_{e_i}⋆ − A_{e_i}⋆∇̄_{e_i}. First order, so
    /// the jet determines it.
    pub fn p_operator(&self, s: &SU3Structure) -> T {
        self.a_square_sum(s)
            .times(qf(-1, 4))
            .plus(&self.a_deriv_sum(s).times(q(-1)))
    }
}

impl JetField<FiberForm> {
    /// δ = −e_i ⌟ ∇_{e_i}.
    pub fn codifferential(&self, s: &SU3Structure) -> Result<FiberForm> {
        let mut acc = FiberForm::zero(self.value.degree() - 1);
        for i in 0..DIM {
            acc = &acc - &self.nabla(i, s).contract(&FiberVector::basis(i))?;
        }
        Ok(acc)
    }

    /// d = e^i ∧ ∇_{e_i}.
    pub fn differential(&self, s: &SU3Structure) -> Result<FiberForm> {
        let mut acc = FiberForm::zero(self.value.degree() + 1);
        for i in 0..DIM {
            acc = &acc + &FiberForm::basis(1, i).wedge(&self.nabla(i, s))?;
        }
        Ok(acc)
    }
}

impl JetField<FiberEndo> {
    /// δh = −(∇_{e_i} h) e_i.
    pub fn divergence(&self, s: &SU3Structure) -> FiberVector {
        let mut acc = FiberVector::zero();
        for i in 0..DIM {
            acc = acc - self.nabla(i, s).apply(&FiberVector::basis(i));
        }
        acc
    }

    /// −(∇̄_{e_i} h) e_i.
    pub fn divergence_bar(&self) -> FiberVector {
        let mut acc = FiberVector::zero();
        for (i, d) in self.deriv.iter().enumerate() {
            acc = acc - d.apply(&FiberVector::basis(i));
        }
        acc
    }
}

/// h with g(Jh·, ·) = φ, slotwise.
pub fn phi_to_h(phi: &JetField<FiberForm>, s: &SU3Structure) -> Result<JetField<FiberEndo>> {
    phi.map(JetBundle::SymPlus0, |f| form_to_sym(f, s))
}

pub fn h_to_phi(h: &JetField<FiberEndo>, s: &SU3Structure) -> Result<JetField<FiberForm>> {
    h.map(JetBundle::Primitive11, |e| sym_to_form(e, s))
}

/// σ = S⋆ψ⁺, slotwise.
pub fn s_to_sigma(sm: &JetField<FiberEndo>, s: &SU3Structure) -> Result<JetField<FiberForm>> {
    sm.map(JetBundle::Primitive21, |e| symminus_to_3form(e, s))
}

pub fn sigma_to_s(sigma: &JetField<FiberForm>, s: &SU3Structure) -> Result<JetField<FiberEndo>> {
    sigma.map(JetBundle::SymMinus, |f| form3_to_symminus(f, s))
}

/// The 7·m basis jets: a fiber basis element in the value slot or in one
/// derivative slot, labelled for witnesses.
pub fn jet_basis<T: JetFiber>(bundle: JetBundle, s: &SU3Structure) -> Result<Vec<(String, JetField<T>)>> {
    let fb = T::fiber_basis(bundle, s)?;
    let zero = T::zero_for(bundle);
    let mut out = Vec::with_capacity(7 * fb.len());
    for (k, b) in fb.iter().enumerate() {
        out.push((
            format!("{bundle} value=b{k}"),
            JetField {
                bundle,
                value: b.clone(),
                deriv: vec![zero.clone(); DIM],
            },
        ));
    }
    for i in 0..DIM {
        for (k, b) in fb.iter().enumerate() {
            let mut deriv = vec![zero.clone(); DIM];
            deriv[i] = b.clone();
            out.push((
                format!("{bundle} ∇̄_{i}=b{k}"),
                JetField {
                    bundle,
                    value: zero.clone(),
                    deriv,
                },
            ));
        }
    }
    Ok(out)
}

/// Linear combination of basis jets.
pub fn combine<T: JetFiber>(bundle: JetBundle, basis: &[(String, JetField<T>)], coeffs: &[Q]) -> JetField<T> {
    let mut acc = JetField::zero(bundle);
    for ((_, b), c) in basis.iter().zip(coeffs) {
        if *c != q(0) {
            acc = acc.plus(&b.times(*c));
        }
    }
    acc
}

/// A jet with small random integer coordinates in the basis.
pub fn random_jet<T: JetFiber, R: Rng>(bundle: JetBundle, s: &SU3Structure, rng: &mut R) -> Result<JetField<T>> {
    let basis = jet_basis::<T>(bundle, s)?;
    let coeffs: Vec<Q> = basis.iter().map(|_| q(rng.gen_range(-3..=3))).collect();
    Ok(combine(bundle, &basis, &coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_size_and_validation() {
        let s = SU3Structure::standard();
        for b in [JetBundle::Primitive11, JetBundle::Primitive21] {
            assert_eq!(jet_basis::<FiberForm>(b, &s).unwrap().len(), b.jet_dim());
        }
        for b in [JetBundle::SymPlus0, JetBundle::SymMinus] {
            assert_eq!(jet_basis::<FiberEndo>(b, &s).unwrap().len(), b.jet_dim());
        }
        let bad = JetField::new(JetBundle::Primitive11, s.omega().clone(), vec![FiberForm::zero(2); 6], &s);
        assert!(bad.is_err());
        let kind = JetField::new(JetBundle::SymMinus, FiberForm::zero(3), vec![FiberForm::zero(3); 6], &s);
        assert!(matches!(kind, Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn value_free_jet_has_nabla_equal_deriv() {
        let s = SU3Structure::standard();
        for (_, j) in jet_basis::<FiberEndo>(JetBundle::SymMinus, &s).unwrap().iter().skip(12) {
            for i in 0..DIM {
                assert_eq!(&j.nabla(i, &s), j.deriv(i));
            }
        }
    }
}
