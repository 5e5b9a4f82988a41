//! Exhaustive exact verification of the pointwise SU(3) identities.

use num_traits::Zero;

use super::endo::FiberEndo;
use super::forms::{form_dim, FiberForm, FiberVector, DIM};
use super::structure::{star_matrix_endo, star_matrix_forms, StarAction, SU3Structure};
use super::types::{
    form_to_sym, hat, label_basis_endos, label_basis_forms, project_endo, project_form, sym_basis,
    sym_to_form, symminus_map_matrix, Family, TypeLabel,
};
use crate::error::Result;
use crate::linalg::{q, QMat};
use crate::report::{exact_check, IdentityCheck, Section};

const SEC: Section = Section::Fiber;

fn e(i: usize) -> FiberVector {
    FiberVector::basis(i)
}

fn sym_plus_basis(s: &SU3Structure) -> Result<Vec<FiberEndo>> {
    let mut b = label_basis_endos(TypeLabel::SymPlus0, s)?;
    b.push(FiberEndo::identity());
    Ok(b)
}

/// Runs every pointwise identity against the given structure.
pub fn verify_fiber_identities(s: &SU3Structure) -> Result<Vec<IdentityCheck>> {
    let a = s.a_basis();
    let omega = s.omega();
    let psi = s.psi_plus();
    let sym_minus = label_basis_endos(TypeLabel::SymMinus, s)?;
    let sym_plus = sym_plus_basis(s)?;
    let mut out = Vec::new();

    out.push(exact_check(
        SEC,
        "a_sum_squares",
        "Σ A_{e_i} A_{e_i} X = −4X",
        (0..DIM).map(|k| {
            let mut acc = FiberVector::zero();
            for ai in &a {
                acc = acc + ai.apply(&ai.apply(&e(k)));
            }
            (format!("X = e{k}"), Ok(acc == e(k).scale(q(-4))))
        }),
    ));

    out.push(exact_check(
        SEC,
        "a_sum_wedge",
        "Σ A_{e_i} ∧ A_{e_i} = 2ω²",
        std::iter::once({
            let r = (|| -> Result<bool> {
                let mut acc = FiberForm::zero(4);
                for ai in &a {
                    let f = ai.to_form2()?;
                    acc = &acc + &f.wedge(&f)?;
                }
                Ok(acc == omega.wedge(omega)?.scale(q(2)))
            })();
            ("sum over i".to_string(), r)
        }),
    ));

    out.push(exact_check(
        SEC,
        "a_star_psi_plus",
        "A_X⋆ψ⁺ = −2 X♭∧ω",
        (0..DIM).map(|k| {
            let r = e(k)
                .flat()
                .wedge(omega)
                .map(|rhs| psi.star_by(&a[k]) == rhs.scale(q(-2)));
            (format!("X = e{k}"), r)
        }),
    ));

    out.push(exact_check(
        SEC,
        "a_star_sigma",
        "A_X⋆(S⋆ψ⁺) = 2 (SX)♭∧ω for S ∈ Sym⁻",
        (0..DIM).flat_map(|k| {
            let a = &a;
            sym_minus.iter().enumerate().map(move |(n, sm)| {
                let lhs = psi.star_by(sm).star_by(&a[k]);
                let r = sm
                    .apply(&e(k))
                    .flat()
                    .wedge(omega)
                    .map(|rhs| lhs == rhs.scale(q(2)));
                (format!("X = e{k}, S = Sym⁻[{n}]"), r)
            })
        }),
    ));

    out.push(exact_check(
        SEC,
        "sym_plus_star_omega",
        "f⋆ω = −2 f̃ for f ∈ Sym⁺",
        sym_plus.iter().enumerate().map(|(n, f)| {
            let r = sym_to_form(f, s).map(|ft| omega.star_by(f) == ft.scale(q(-2)));
            (format!("f = Sym⁺[{n}]"), r)
        }),
    ));

    out.push(exact_check(
        SEC,
        "sym_minus_star_omega",
        "S⋆ω = 0 for S ∈ Sym⁻",
        sym_minus
            .iter()
            .enumerate()
            .map(|(n, sm)| (format!("S = Sym⁻[{n}]"), Ok(omega.star_by(sm).is_zero()))),
    ));

    out.push(lie_morphism_check());

    out.push(exact_check(
        SEC,
        "a_pairing_11",
        "⟨A_X, φ⟩ = 0 for φ of type (1,1)",
        (0..DIM).flat_map(|k| {
            let ak = a[k].to_form2().ok();
            sym_plus.iter().enumerate().map(move |(n, f)| {
                let r = (|| -> Result<bool> {
                    let phi = sym_to_form(f, s)?;
                    let ak = ak.clone().ok_or_else(|| crate::Error::NotInSubspace("skew endomorphisms".into()))?;
                    Ok(ak.inner(&phi)?.is_zero())
                })();
                (format!("X = e{k}, φ = Λ11[{n}]"), r)
            })
        }),
    ));

    out.push(exact_check(
        SEC,
        "a_star_sym_minus_psi",
        "(A_X⋆S)⋆ψ⁺ = 0 for S ∈ Sym⁻",
        (0..DIM).flat_map(|k| {
            let a = &a;
            sym_minus.iter().enumerate().map(move |(n, sm)| {
                let r = psi.star_by(&sm.star_by(&a[k])).is_zero();
                (format!("X = e{k}, S = Sym⁻[{n}]"), Ok(r))
            })
        }),
    ));

    // structural invariants of the normalization
    out.push(exact_check(
        SEC,
        "psi_wedge_omega",
        "ψ⁺ ∧ ω = 0",
        std::iter::once(("ψ⁺".to_string(), psi.wedge(omega).map(|f| f.is_zero()))),
    ));
    out.push(exact_check(
        SEC,
        "psi_pair_volume",
        "ψ⁺ ∧ ψ⁻ = 4 vol (pinned normalization)",
        std::iter::once((
            "ψ⁺".to_string(),
            psi.wedge(&s.psi_minus())
                .map(|f| f == FiberForm::volume().scale(q(4))),
        )),
    ));
    out.push(exact_check(
        SEC,
        "omega_cubed",
        "ω ∧ ω ∧ ω = 6 vol",
        std::iter::once((
            "ω".to_string(),
            omega
                .wedge(omega)
                .and_then(|w| w.wedge(omega))
                .map(|f| f == FiberForm::volume().scale(q(6))),
        )),
    ));
    out.push(exact_check(
        SEC,
        "a_shape",
        "A_X skew, A_X X = 0, A_X J = −J A_X",
        (0..DIM).map(|k| {
            let ak = &a[k];
            let ok = ak.is_skew()
                && ak.apply(&e(k)).is_zero()
                && ak.compose(s.j()) == -&s.j().compose(ak);
            (format!("X = e{k}"), Ok(ok))
        }),
    ));
    out.push(exact_check(
        SEC,
        "a_j_relations",
        "A_{JX} = A_X∘J = −J∘A_X",
        (0..DIM).map(|k| {
            let ajx = s.a_tensor(&s.jv(&e(k)));
            let ok = ajx == a[k].compose(s.j()) && ajx == -&s.j().compose(&a[k]);
            (format!("X = e{k}"), Ok(ok))
        }),
    ));
    out.push(exact_check(
        SEC,
        "a_complex_structure",
        "A_X² = −id on span{X, JX}^⊥ for unit X",
        (0..DIM).flat_map(|k| {
            let a = &a;
            let jk = s.jv(&e(k));
            (0..DIM)
                .filter(move |&l| l != k && jk.0[l].is_zero())
                .map(move |l| {
                    let y = e(l);
                    (format!("X = e{k}, Y = e{l}"), Ok(a[k].apply(&a[k].apply(&y)) == -y))
                })
        }),
    ));

    let l3_30 = label_basis_forms(TypeLabel::L3Type30, s)?;
    let l3_21: Vec<FiberForm> = label_basis_forms(TypeLabel::L3Primitive21, s)?
        .into_iter()
        .chain(label_basis_forms(TypeLabel::L3OneWedgeOmega, s)?)
        .collect();
    let jj = |f: &FiberForm| f.star_by(s.j()).star_by(s.j());
    out.push(exact_check(
        SEC,
        "j_star_squared_spectrum",
        "(J⋆)² = −9 on Λ³-(3,0)+(0,3), −1 on Λ³-(2,1)+(1,2)",
        l3_30
            .iter()
            .map(|f| (f.clone(), -9))
            .chain(l3_21.iter().map(|f| (f.clone(), -1)))
            .enumerate()
            .map(|(n, (f, ev))| (format!("Λ³ type basis [{n}]"), Ok(jj(&f) == f.scale(q(ev))))),
    ));
    out.push(exact_check(
        SEC,
        "hat_characterization",
        "(J⋆)² α = −3α + 2α̂",
        (0..form_dim(3)).map(|n| {
            let f = FiberForm::basis(3, n);
            let r = hat(&f, s).map(|h| jj(&f) == &f.scale(q(-3)) + &h.scale(q(2)));
            (format!("α = Λ³[{n}]"), r)
        }),
    ));

    out.push(projection_resolution_check(s));

    out.push(exact_check(
        SEC,
        "sym_plus_form_bijection",
        "h ↦ g(Jh·,·) inverts on Sym⁺, id ↦ ω, trace-free ↔ primitive",
        sym_plus.iter().enumerate().map(|(n, h)| {
            let r = (|| -> Result<bool> {
                let phi = sym_to_form(h, s)?;
                let back = form_to_sym(&phi, s)?;
                let primitive = phi.inner(omega)?.is_zero();
                Ok(&back == h && primitive == h.trace().is_zero())
            })();
            (format!("h = Sym⁺[{n}]"), r)
        })
        .chain(std::iter::once((
            "h = id".to_string(),
            sym_to_form(&FiberEndo::identity(), s).map(|f| &f == omega),
        ))),
    ));

    let (sm_basis, sm_map) = symminus_map_matrix(s)?;
    out.push(exact_check(
        SEC,
        "sym_minus_to_3form",
        "S ↦ S⋆ψ⁺ is injective on Sym⁻ (rank 12) with image in Λ³-(2,1)+(1,2)₀",
        std::iter::once(("rank".to_string(), Ok(sm_map.rank() == sm_basis.len())))
            .chain(sm_basis.iter().enumerate().map(|(n, b)| {
                let sigma = psi.star_by(b);
                let r = project_form(&sigma, TypeLabel::L3Primitive21, s).map(|p| p == sigma);
                (format!("S = Sym⁻[{n}]"), r)
            })),
    ));

    Ok(out)
}

// A⋆(B⋆T) − B⋆(A⋆T) = [A, B]⋆T over the gl(6) basis, for T ranging over
// vectors, all Λ^p and End.
fn lie_morphism_check() -> IdentityCheck {
    let units: Vec<FiberEndo> = (0..DIM * DIM)
        .map(|n| FiberEndo::unit(n / DIM, n % DIM))
        .collect();
    let rep = |x: &FiberEndo| -> Vec<QMat> {
        let mut r: Vec<QMat> = (0..=DIM).map(|p| star_matrix_forms(x, p)).collect();
        r.push(x.matrix().clone());
        r.push(star_matrix_endo(x));
        r
    };
    let reps: Vec<Vec<QMat>> = units.iter().map(rep).collect();
    let names = |k: usize| match k {
        p if p <= DIM => format!("Λ^{p}"),
        7 => "vectors".to_string(),
        _ => "End".to_string(),
    };
    let (units, reps, rep) = (&units, &reps, &rep);
    let cases = (0..units.len()).flat_map(move |x| {
        (0..units.len()).map(move |y| {
            let comm = units[x].commutator(&units[y]);
            let rc = rep(&comm);
            let mut bad = None;
            for k in 0..rc.len() {
                let lhs = &(&reps[x][k] * &reps[y][k]) - &(&reps[y][k] * &reps[x][k]);
                if lhs != rc[k] {
                    bad = Some(k);
                    break;
                }
            }
            let label = format!(
                "A = E{}{}, B = E{}{}{}",
                x / DIM,
                x % DIM,
                y / DIM,
                y % DIM,
                bad.map(|k| format!(" on {}", names(k))).unwrap_or_default()
            );
            (label, Ok(bad.is_none()))
        })
    });
    exact_check(
        SEC,
        "star_lie_morphism",
        "A⋆(B⋆T) − B⋆(A⋆T) = [A,B]⋆T on vectors, forms and endomorphisms",
        cases,
    )
}

fn projection_resolution_check(s: &SU3Structure) -> IdentityCheck {
    let mut cases: Vec<(String, Result<bool>)> = Vec::new();
    for family in [Family::Forms2, Family::Forms3] {
        let p = if family == Family::Forms2 { 2 } else { 3 };
        for n in 0..form_dim(p) {
            let x = FiberForm::basis(p, n);
            let r = (|| -> Result<bool> {
                let parts: Vec<FiberForm> = family
                    .labels()
                    .iter()
                    .map(|l| project_form(&x, *l, s))
                    .collect::<Result<_>>()?;
                let mut sum = FiberForm::zero(p);
                for part in &parts {
                    sum = &sum + part;
                }
                let mut ok = sum == x;
                for (i, l) in family.labels().iter().enumerate() {
                    ok &= project_form(&parts[i], *l, s)? == parts[i];
                    for j in i + 1..parts.len() {
                        ok &= parts[i].inner(&parts[j])?.is_zero();
                    }
                }
                Ok(ok)
            })();
            cases.push((format!("Λ^{p}[{n}]"), r));
        }
    }
    for (n, x) in sym_basis().iter().enumerate() {
        let r = (|| -> Result<bool> {
            let parts: Vec<FiberEndo> = Family::Sym
                .labels()
                .iter()
                .map(|l| project_endo(x, *l, s))
                .collect::<Result<_>>()?;
            let sum = parts.iter().fold(FiberEndo::zero(), |acc, p| &acc + p);
            let mut ok = &sum == x;
            for (i, l) in Family::Sym.labels().iter().enumerate() {
                ok &= project_endo(&parts[i], *l, s)? == parts[i];
                for j in i + 1..parts.len() {
                    ok &= parts[i].inner(&parts[j]).is_zero();
                }
            }
            Ok(ok)
        })();
        cases.push((format!("Sym[{n}]"), r));
    }
    exact_check(
        SEC,
        "type_projections",
        "type projections are idempotent, pairwise orthogonal and sum to the identity",
        cases,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_structure_passes() {
        let checks = verify_fiber_identities(&SU3Structure::standard()).unwrap();
        for c in &checks {
            assert!(c.passed(), "{} failed at {:?}", c.id, c.witness);
        }
    }
}
