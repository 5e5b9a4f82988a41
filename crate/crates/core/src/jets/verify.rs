//! Exact verification of the rough-Laplacian comparison identities on
//! complete jet bases.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{combine, jet_basis, phi_to_h, s_to_sigma, JetBundle, JetField, JetFiber};
use crate::curvature::{difference_operator, q_endo, Bundle, RbarSpace};
use crate::error::{Error, Result};
use crate::fiber::endo::{form2_to_endo, FiberEndo};
use crate::fiber::forms::{FiberForm, FiberVector, DIM};
use crate::fiber::structure::{StarAction, SU3Structure};
use crate::fiber::types::{form3_to_symminus, project_form, sym_to_form, TypeLabel};
use crate::linalg::{q, QMat, Q};
use crate::report::{exact_check, IdentityCheck, Section};

const SEC: Section = Section::Jets;

pub const DEFAULT_SEED: u64 = 0x5eed_0004;
const RANDOM_JETS: usize = 3;
const EINSTEIN_SAMPLES: usize = 5;

type Basis<T> = Vec<(String, JetField<T>)>;

fn cases<'a, T: JetFiber>(
    basis: &'a Basis<T>,
    f: impl Fn(&JetField<T>) -> Result<bool> + 'a,
) -> impl Iterator<Item = (String, Result<bool>)> + 'a {
    basis.iter().map(move |(l, j)| (l.clone(), f(j)))
}

fn values<T: JetFiber>(basis: &Basis<T>, bundle: JetBundle) -> Basis<T> {
    basis.iter().take(bundle.fiber_dim()).cloned().collect()
}

fn vec_of(f: &FiberForm) -> FiberVector {
    FiberVector::from_slice(f.coeffs())
}

/// δS for S ∈ Sym⁻ as a 1-form.
fn div_form(h: &JetField<FiberEndo>, s: &SU3Structure) -> FiberForm {
    h.divergence(s).flat()
}

/// (Jβ)⌟ψ⁺ for a 1-form β with (Jβ)(X) = β(JX). As a vector, Jβ is −J
/// applied to the dual of β.
fn j_pullback_contract(beta: &FiberForm, s: &SU3Structure) -> Result<FiberForm> {
    s.psi_plus().contract(&s.jv(&vec_of(beta)).scale(q(-1)))
}

/// The 2-form δS⌟ψ⁺ + δσ.
fn beta(sm: &JetField<FiberEndo>, s: &SU3Structure) -> Result<FiberForm> {
    let sigma = s_to_sigma(sm, s)?;
    Ok(&s.psi_plus().contract(&sm.divergence(s))? + &sigma.codifferential(s)?)
}

fn scalar_on<T: JetFiber>(vals: &Basis<T>, f: impl Fn(&JetField<T>) -> T) -> Option<Q> {
    let mut lam = None;
    for (_, j) in vals {
        let img = f(j);
        let l = ratio(j.value(), &img)?;
        if lam.is_some_and(|x| x != l) {
            return None;
        }
        lam = Some(l);
    }
    lam
}

/// λ with img = λ·v, if it exists.
fn ratio<T: JetFiber>(v: &T, img: &T) -> Option<Q> {
    for num in -64..=64 {
        for den in 1..=4 {
            let l = Q::new(num, den);
            if &v.times(l) == img {
                return Some(l);
            }
        }
    }
    None
}

/// Runs every jet identity on complete bases, the direct-summation oracles on
/// seeded random jets, and the Einstein translation on constrained jets.
pub fn verify_jet_identities(s: &SU3Structure) -> Result<Vec<IdentityCheck>> {
    verify_jet_with(s, DEFAULT_SEED)
}

pub fn verify_jet_with(s: &SU3Structure, seed: u64) -> Result<Vec<IdentityCheck>> {
    let mut out = Vec::new();
    let psi = s.psi_plus().clone();
    let omega = s.omega().clone();
    let phis: Basis<FiberForm> = jet_basis(JetBundle::Primitive11, s)?;
    let sigmas: Basis<FiberForm> = jet_basis(JetBundle::Primitive21, s)?;
    let hs: Basis<FiberEndo> = jet_basis(JetBundle::SymPlus0, s)?;
    let ss: Basis<FiberEndo> = jet_basis(JetBundle::SymMinus, s)?;

    // ∇ on parallel objects of the model.
    out.push(exact_check(
        SEC,
        "nabla_omega_psi",
        "½ A_{e_i}⋆ω = e_i⌟ψ⁺, i.e. ∇ω = ψ⁺ when ∇̄ω = 0",
        (0..DIM).map(|i| {
            let e = FiberVector::basis(i);
            let lhs = omega.star_by(&s.a_tensor(&e)).scale(Q::new(1, 2));
            (format!("e{i}"), psi.contract(&e).map(|r| r == lhs))
        }),
    ));
    out.push(exact_check(
        SEC,
        "nabla_j",
        "½ A_{e_i}⋆J = A_{Je_i}, i.e. ∇_X J = A_{JX} when ∇̄J = 0",
        (0..DIM).map(|i| {
            let e = FiberVector::basis(i);
            let lhs = s.j().star_by(&s.a_tensor(&e)).scale(Q::new(1, 2));
            (format!("e{i}"), Ok(lhs == s.a_tensor(&s.jv(&e))))
        }),
    ));

    // Σ A⋆A⋆ eigenvalues.
    for (id, stmt, lam, basis) in [
        ("a_square_primitive11", "A_{e_i}⋆A_{e_i}⋆φ = −4φ on Λ^(1,1)₀", -4, values(&phis, JetBundle::Primitive11)),
        ("a_square_primitive21", "A_{e_i}⋆A_{e_i}⋆σ = −4σ on Λ^(2,1)+(1,2)₀", -4, values(&sigmas, JetBundle::Primitive21)),
    ] {
        out.push(exact_check(SEC, id, stmt, cases(&basis, move |j| Ok(j.a_square_sum(s) == j.value().times(q(lam))))));
    }
    for (id, stmt, lam, basis) in [
        ("a_square_sym_plus", "A_{e_i}⋆A_{e_i}⋆h = −12h on Sym⁺₀", -12, values(&hs, JetBundle::SymPlus0)),
        ("a_square_sym_minus", "A_{e_i}⋆A_{e_i}⋆S = −8S on Sym⁻", -8, values(&ss, JetBundle::SymMinus)),
    ] {
        out.push(exact_check(SEC, id, stmt, cases(&basis, move |j| Ok(j.a_square_sum(s) == j.value().times(q(lam))))));
    }

    // Schur-lemma vanishings.
    let a = s.a_basis();
    let vphi = values(&phis, JetBundle::Primitive11);
    let vh = values(&hs, JetBundle::SymPlus0);
    let vs = values(&ss, JetBundle::SymMinus);
    out.push(exact_check(
        SEC,
        "a_contract_primitive11",
        "e_i⌟(A_{e_i}⋆φ) = 0 on Λ^(1,1)₀",
        cases(&vphi, |j| {
            let mut acc = FiberForm::zero(1);
            for (i, ai) in a.iter().enumerate() {
                acc = &acc + &j.value().star_by(ai).contract(&FiberVector::basis(i))?;
            }
            Ok(acc.is_zero())
        }),
    ));
    out.push(exact_check(
        SEC,
        "a_eval_sym_plus",
        "(A_{e_i}⋆h)(e_i) = 0 on Sym⁺₀",
        cases(&vh, |j| {
            let mut acc = FiberVector::zero();
            for (i, ai) in a.iter().enumerate() {
                acc = acc + j.value().star_by(ai).apply(&FiberVector::basis(i));
            }
            Ok(acc.is_zero())
        }),
    ));
    out.push(exact_check(
        SEC,
        "a_wedge_primitive11",
        "e_i∧(A_{e_i}⋆φ) = 0 on Λ^(1,1)₀",
        cases(&vphi, |j| {
            let mut acc = FiberForm::zero(3);
            for (i, ai) in a.iter().enumerate() {
                acc = &acc + &FiberForm::basis(1, i).wedge(&j.value().star_by(ai))?;
            }
            Ok(acc.is_zero())
        }),
    ));
    out.push(exact_check(
        SEC,
        "a_contract_sym_minus_psi",
        "e_i⌟(A_{e_i}⋆(S⋆ψ⁺)) = 0 on Sym⁻",
        cases(&vs, |j| {
            let sigma = psi.star_by(j.value());
            let mut acc = FiberForm::zero(2);
            for (i, ai) in a.iter().enumerate() {
                acc = &acc + &sigma.star_by(ai).contract(&FiberVector::basis(i))?;
            }
            Ok(acc.is_zero())
        }),
    ));

    // First-order comparison terms.
    let j_delta_phi_psi = |j: &JetField<FiberForm>| -> Result<FiberForm> { j_pullback_contract(&j.codifferential(s)?, s) };
    out.push(exact_check(
        SEC,
        "a_deriv_primitive11",
        "A_{e_i}⋆∇̄_{e_i}φ = (Jδφ)⌟ψ⁺, J acting on 1-forms by (Jβ)(X) = β(JX)",
        cases(&phis, |j| Ok(j.a_deriv_sum(s) == j_delta_phi_psi(j)?)),
    ));
    out.push(exact_check(
        SEC,
        "a_deriv_primitive21",
        "A_{e_i}⋆∇̄_{e_i}σ = −2δS∧ω",
        cases(&ss, |j| {
            let sigma = s_to_sigma(j, s)?;
            Ok(sigma.a_deriv_sum(s) == div_form(j, s).wedge(&omega)?.scale(q(-2)))
        }),
    ));
    out.push(exact_check(
        SEC,
        "a_deriv_sym_plus",
        "(A_{e_i}⋆∇̄_{e_i}h)⋆ψ⁺ = 2δh∧ω − 4dφ",
        cases(&phis, |j| {
            let h = phi_to_h(j, s)?;
            let lhs = psi.star_by(&h.a_deriv_sum(s));
            let rhs = &div_form(&h, s).wedge(&omega)?.scale(q(2)) - &j.differential(s)?.scale(q(4));
            Ok(lhs == rhs)
        }),
    ));
    // Composition with J on the right, as stated. The 2-form turns out to be
    // of type (1,1), so J∘B gives the same map; both are checked.
    out.push(exact_check(
        SEC,
        "a_deriv_sym_minus",
        "A_{e_i}⋆∇̄_{e_i}S = (δS⌟ψ⁺ + δσ)∘J = J∘(δS⌟ψ⁺ + δσ)",
        cases(&ss, |j| {
            let b = form2_to_endo(&beta(j, s)?)?;
            let lhs = j.a_deriv_sum(s);
            Ok(lhs == b.compose(s.j()) && lhs == s.j().compose(&b))
        }),
    ));
    out.push(exact_check(
        SEC,
        "a_deriv_sym_minus_b_endo",
        "B := endo(δσ + δS⌟ψ⁺) satisfies B(X) = −(A_{e_i}⋆∇̄_{e_i}S)(JX)",
        cases(&ss, |j| {
            let b = form2_to_endo(&beta(j, s)?)?;
            let m = j.a_deriv_sum(s);
            Ok((0..DIM).all(|k| {
                let x = FiberVector::basis(k);
                b.apply(&x) == -m.apply(&s.jv(&x))
            }))
        }),
    ));

    // Rough Laplacian differences.
    out.push(exact_check(
        SEC,
        "p_primitive11",
        "(∇*∇ − ∇̄*∇̄)φ = φ − (Jδφ)⌟ψ⁺, J on 1-forms by pullback",
        cases(&phis, |j| Ok(j.p_operator(s) == j.value() - &j_delta_phi_psi(j)?)),
    ));
    out.push(exact_check(
        SEC,
        "p_primitive21",
        "(∇*∇ − ∇̄*∇̄)σ = σ + 2δS∧ω",
        cases(&ss, |j| {
            let sigma = s_to_sigma(j, s)?;
            Ok(sigma.p_operator(s) == sigma.value() + &div_form(j, s).wedge(&omega)?.scale(q(2)))
        }),
    ));
    out.push(exact_check(
        SEC,
        "p_sym_plus",
        "(∇*∇ − ∇̄*∇̄)h = 3h + s with s ∈ Sym⁻, s⋆ψ⁺ = −2δh∧ω + 4dφ",
        cases(&phis, |j| {
            let h = phi_to_h(j, s)?;
            let rhs3 = &div_form(&h, s).wedge(&omega)?.scale(q(-2)) + &j.differential(s)?.scale(q(4));
            let small_s = form3_to_symminus(&rhs3, s)?;
            Ok(h.p_operator(s) == &h.value().scale(q(3)) + &small_s)
        }),
    ));
    out.push(exact_check(
        SEC,
        "p_sym_minus",
        "(∇*∇ − ∇̄*∇̄)S = 2S − (δS⌟ψ⁺ + δσ)∘J",
        cases(&ss, |j| {
            let corr = form2_to_endo(&beta(j, s)?)?.compose(s.j());
            Ok(j.p_operator(s) == &j.value().scale(q(2)) - &corr)
        }),
    ));

    // Divergences.
    out.push(exact_check(
        SEC,
        "divergence_sym_plus",
        "δh = −(∇_{e_i}h)e_i = −(∇̄_{e_i}h)e_i on Sym⁺₀",
        cases(&hs, |j| Ok(j.divergence(s) == j.divergence_bar())),
    ));
    out.push(exact_check(
        SEC,
        "divergence_h_phi",
        "δh = −Jδφ for g(Jh·,·) = φ",
        cases(&phis, |j| {
            let h = phi_to_h(j, s)?;
            Ok(h.divergence(s) == s.jv(&vec_of(&j.codifferential(s)?)).scale(q(-1)))
        }),
    ));

    // Independent oracles on random jets.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut oracle = Vec::new();
    for n in 0..RANDOM_JETS {
        for (bundle, basis) in [(JetBundle::Primitive11, &phis), (JetBundle::Primitive21, &sigmas)] {
            let coeffs: Vec<Q> = basis.iter().map(|_| q(rng.gen_range(-3..=3))).collect();
            let j = combine(bundle, basis, &coeffs);
            oracle.push((format!("{bundle} random #{n} δ"), oracle_codifferential(&j, s)));
            oracle.push((format!("{bundle} random #{n} d"), oracle_differential(&j, s)));
        }
        let coeffs: Vec<Q> = hs.iter().map(|_| q(rng.gen_range(-3..=3))).collect();
        let j = combine(JetBundle::SymPlus0, &hs, &coeffs);
        oracle.push((format!("Sym⁺₀ random #{n} δ"), Ok(oracle_divergence(&j, s))));
    }
    out.push(exact_check(
        SEC,
        "jet_operator_oracles",
        "d, δ and the divergence agree with component summation",
        oracle,
    ));

    // Coclosed primitive (1,1) jets.
    let coclosed = constrained_phi_basis(&phis, s)?;
    out.push(exact_check(
        SEC,
        "p_coclosed_primitive11",
        "for δφ = 0: (∇*∇ − ∇̄*∇̄)φ = φ ∈ Λ^(1,1)₀ and dφ ∈ Λ^(2,1)+(1,2)₀",
        cases(&coclosed, |j| {
            let p = j.p_operator(s);
            let d = j.differential(s)?;
            Ok(&p == j.value()
                && project_form(&p, TypeLabel::L2Primitive11, s)? == p
                && project_form(&d, TypeLabel::L3Primitive21, s)? == d)
        }),
    ));

    // Curvature intertwining with a sample canonical curvature.
    let space = RbarSpace::new(s)?;
    let rbar = space.sample(&mut rng);
    let q_end = q_endo(&rbar, Bundle::End)?;
    let q2 = q_endo(&rbar, Bundle::Forms(2))?;
    let q3 = q_endo(&rbar, Bundle::Forms(3))?;
    let t1 = |h: &FiberEndo, sm: &FiberEndo| -> Result<bool> {
        let qh = FiberEndo::from_coords(&q_end.apply(&h.coords()));
        let phi = sym_to_form(h, s)?;
        let a = sym_to_form(&qh, s)? == FiberForm::from_coeffs(2, q2.apply(phi.coeffs()));
        let qs = FiberEndo::from_coords(&q_end.apply(&sm.coords()));
        let sigma = psi.star_by(sm);
        let b = psi.star_by(&qs) == FiberForm::from_coeffs(3, q3.apply(sigma.coeffs()));
        Ok(a && b)
    };
    let zero = FiberEndo::zero();
    out.push(exact_check(
        SEC,
        "q_rbar_intertwining",
        "g((q(R̄)h)J·,·) = q(R̄)φ and q(R̄)(S⋆ψ⁺) = (q(R̄)S)⋆ψ⁺",
        vh.iter()
            .map(|(l, j)| (l.clone(), t1(j.value(), &zero)))
            .chain(vs.iter().map(|(l, j)| (l.clone(), t1(&zero, j.value()))))
            .collect::<Vec<_>>(),
    ));

    // Einstein translation on constrained jets.
    let pairs = constrained_pairs(&hs, &ss, s)?;
    let mut ein: Vec<IdentityCheck> = Vec::new();
    for n in 0..EINSTEIN_SAMPLES {
        let coeffs: Vec<Q> = (0..pairs.len()).map(|_| q(rng.gen_range(-2..=2))).collect();
        let (h, sm) = combine_pairs(&pairs, &coeffs);
        for c in einstein_translation_check(&h, &sm, s)? {
            match ein.iter_mut().find(|e| e.id == c.id) {
                Some(e) => {
                    e.basis_size += c.basis_size;
                    if !c.passed() && e.passed() {
                        *e = IdentityCheck {
                            witness: c.witness.map(|w| format!("sample {n}: {w}")),
                            ..c
                        };
                    }
                }
                None => ein.push(c),
            }
        }
    }
    out.extend(ein);

    Ok(out)
}

/// δ through (δα)(X, ...) = −Σ (∇_{e_i}α)(e_i, X, ...).
fn oracle_codifferential(j: &JetField<FiberForm>, s: &SU3Structure) -> Result<bool> {
    let p = j.value().degree();
    let mut coeffs = vec![q(0); crate::fiber::forms::form_dim(p - 1)];
    for (n, c) in coeffs.iter_mut().enumerate() {
        let idx = crate::fiber::forms::multi_index(p - 1, n);
        for i in 0..DIM {
            let mut args = vec![FiberVector::basis(i)];
            args.extend(idx.iter().map(|&k| FiberVector::basis(k)));
            *c -= j.nabla(i, s).eval(&args)?;
        }
    }
    Ok(FiberForm::from_coeffs(p - 1, coeffs) == j.codifferential(s)?)
}

/// d through dα(X_0..X_p) = Σ_k (−1)^k (∇_{X_k}α)(..., X̂_k, ...).
fn oracle_differential(j: &JetField<FiberForm>, s: &SU3Structure) -> Result<bool> {
    let p = j.value().degree();
    let mut coeffs = vec![q(0); crate::fiber::forms::form_dim(p + 1)];
    for (n, c) in coeffs.iter_mut().enumerate() {
        let idx = crate::fiber::forms::multi_index(p + 1, n);
        for (k, &ik) in idx.iter().enumerate() {
            let args: Vec<FiberVector> = idx
                .iter()
                .enumerate()
                .filter(|(m, _)| *m != k)
                .map(|(_, &x)| FiberVector::basis(x))
                .collect();
            let v = j.nabla(ik, s).eval(&args)?;
            *c += if k % 2 == 0 { v } else { -v };
        }
    }
    Ok(FiberForm::from_coeffs(p + 1, coeffs) == j.differential(s)?)
}

fn oracle_divergence(j: &JetField<FiberEndo>, s: &SU3Structure) -> bool {
    let mut c = [q(0); DIM];
    for (k, ck) in c.iter_mut().enumerate() {
        for i in 0..DIM {
            *ck -= j.nabla(i, s).entry(k, i);
        }
    }
    FiberVector::from_slice(&c) == j.divergence(s)
}

/// Basis of the co-closed φ-jets.
fn constrained_phi_basis(phis: &Basis<FiberForm>, s: &SU3Structure) -> Result<Basis<FiberForm>> {
    let cols: Vec<Vec<Q>> = phis
        .iter()
        .map(|(_, j)| j.codifferential(s).map(|f| f.coeffs().to_vec()))
        .collect::<Result<_>>()?;
    let m = QMat::from_columns(DIM, &cols);
    Ok(m.nullspace()
        .iter()
        .enumerate()
        .map(|(n, v)| (format!("co-closed φ-jet #{n}"), combine(JetBundle::Primitive11, phis, v)))
        .collect())
}

type JetPair = (JetField<FiberEndo>, JetField<FiberEndo>);

/// Basis of (h, S) jets with δh = 0 and δS = 0: the divergence-free condition
/// δ(h + S) = 0 together with the δS-component of the split system.
fn constrained_pairs(hs: &Basis<FiberEndo>, ss: &Basis<FiberEndo>, s: &SU3Structure) -> Result<Vec<JetPair>> {
    let nh = hs.len();
    let mut cols = Vec::with_capacity(nh + ss.len());
    for (_, j) in hs {
        let mut c = j.divergence(s).0.to_vec();
        c.extend([q(0); DIM]);
        cols.push(c);
    }
    for (_, j) in ss {
        let mut c = vec![q(0); DIM];
        c.extend(j.divergence(s).0);
        cols.push(c);
    }
    let m = QMat::from_columns(2 * DIM, &cols);
    Ok(m.nullspace()
        .iter()
        .map(|v| {
            (
                combine(JetBundle::SymPlus0, hs, &v[..nh]),
                combine(JetBundle::SymMinus, ss, &v[nh..]),
            )
        })
        .collect())
}

fn combine_pairs(pairs: &[JetPair], coeffs: &[Q]) -> JetPair {
    let mut h = JetField::zero(JetBundle::SymPlus0);
    let mut sm = JetField::zero(JetBundle::SymMinus);
    for ((ph, ps), c) in pairs.iter().zip(coeffs) {
        h = h.plus(&ph.times(*c));
        sm = sm.plus(&ps.times(*c));
    }
    (h, sm)
}

/// Checks, for one (h, S) jet pair with tr h = 0 and δ(h + S) = 0, the
/// first-order steps translating (∇*∇ + q(R))H = 10H into the exterior
/// system for (φ, σ). Constraint-violating jets are rejected.
pub fn einstein_translation_check(
    h: &JetField<FiberEndo>,
    sm: &JetField<FiberEndo>,
    s: &SU3Structure,
) -> Result<Vec<IdentityCheck>> {
    if h.bundle() != JetBundle::SymPlus0 || sm.bundle() != JetBundle::SymMinus {
        return Err(Error::KindMismatch {
            label: format!("({}, {})", h.bundle(), sm.bundle()),
            kind: "Sym⁺₀ and Sym⁻ jets",
        });
    }
    if h.value().trace() != q(0) {
        return Err(Error::ConstraintViolation("tr h ≠ 0".into()));
    }
    let div = h.divergence(s) + sm.divergence(s);
    if !div.is_zero() {
        return Err(Error::ConstraintViolation("δ(h + S) ≠ 0".into()));
    }
    let phi = super::h_to_phi(h, s)?;
    let sigma = s_to_sigma(sm, s)?;
    let mut out = Vec::new();

    // Eigenvalue bookkeeping from the difference table and the comparison.
    let vh: Basis<FiberEndo> = values(&jet_basis(JetBundle::SymPlus0, s)?, JetBundle::SymPlus0);
    let vs: Basis<FiberEndo> = values(&jet_basis(JetBundle::SymMinus, s)?, JetBundle::SymMinus);
    let d_end = difference_operator(Bundle::End, s);
    let d_of = |j: &JetField<FiberEndo>| FiberEndo::from_coords(&d_end.apply(&j.value().coords()));
    let book = [
        ("Sym⁺₀", scalar_on(&vh, d_of), scalar_on(&vh, |j| j.p_operator(s)), 4),
        ("Sym⁻", scalar_on(&vs, d_of), scalar_on(&vs, |j| j.p_operator(s)), 6),
    ];
    out.push(exact_check(
        SEC,
        "einstein_eigenvalue_bookkeeping",
        "10 − 3 − 3 = 4 on Sym⁺₀ and 10 − 2 − 2 = 6 on Sym⁻",
        book.iter().map(|(tag, d, p, want)| {
            let ok = match (d, p) {
                (Some(d), Some(p)) => q(10) - *d - *p == q(*want),
                _ => false,
            };
            (format!("{tag}: D = {d:?}, P = {p:?}"), Ok(ok))
        }),
    ));

    out.push(exact_check(
        SEC,
        "einstein_divergence_h_phi",
        "δh = −Jδφ",
        std::iter::once((
            "jet".to_string(),
            phi.codifferential(s)
                .map(|d| h.divergence(s) == s.jv(&vec_of(&d)).scale(q(-1))),
        )),
    ));

    // The δS⌟ψ⁺ term of the Sym⁻ comparison is skew, so it cannot enter the
    // symmetric equation: this is what splits off δS = 0.
    out.push(exact_check(
        SEC,
        "einstein_split_skew_term",
        "(X⌟ψ⁺)∘J is skew and nonzero for X ≠ 0",
        (0..DIM).map(|k| {
            let r = s
                .psi_plus()
                .contract(&FiberVector::basis(k))
                .and_then(|f| form2_to_endo(&f))
                .map(|b| {
                    let m = b.compose(s.j());
                    m.is_skew() && !m.is_zero()
                });
            (format!("X = e{k}"), r)
        }),
    ));

    // With D = −1 on both bundles, P + D on φ and σ reduces to the δφ and δS
    // terms, which vanish under the constraints.
    let d2 = difference_operator(Bundle::Forms(2), s);
    let d3 = difference_operator(Bundle::Forms(3), s);
    let check_pd = || -> Result<bool> {
        let dphi = phi.codifferential(s)?;
        let lhs_phi = &phi.p_operator(s) + &FiberForm::from_coeffs(2, d2.apply(phi.value().coeffs()));
        let rhs_phi = j_pullback_contract(&dphi, s)?.scale(q(-1));
        let ds = sm.divergence(s);
        let lhs_sig = &sigma.p_operator(s) + &FiberForm::from_coeffs(3, d3.apply(sigma.value().coeffs()));
        let rhs_sig = ds.flat().wedge(s.omega())?.scale(q(2));
        let vanish = !ds.is_zero() || (lhs_phi.is_zero() && lhs_sig.is_zero());
        Ok(lhs_phi == rhs_phi && lhs_sig == rhs_sig && vanish)
    };
    out.push(exact_check(
        SEC,
        "einstein_laplacians_agree",
        "(P + D)φ = −(Jδφ)⌟ψ⁺ and (P + D)σ = 2δS∧ω, both 0 when δφ = δS = 0",
        std::iter::once(("jet".to_string(), check_pd())),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_jet_checks_pass() {
        let s = SU3Structure::standard();
        let checks = verify_jet_with(&s, 11).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).map(|c| (&c.id, &c.witness)).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    #[test]
    fn constraint_violations_rejected() {
        let s = SU3Structure::standard();
        let hs: Basis<FiberEndo> = jet_basis(JetBundle::SymPlus0, &s).unwrap();
        // a pure derivative jet with nonzero divergence
        let bad = hs.iter().find(|(_, j)| !j.divergence(&s).is_zero()).unwrap().1.clone();
        let zero = JetField::zero(JetBundle::SymMinus);
        assert!(matches!(
            einstein_translation_check(&bad, &zero, &s),
            Err(Error::ConstraintViolation(_))
        ));
        assert!(einstein_translation_check(&zero, &bad, &s).is_err());
    }
}
