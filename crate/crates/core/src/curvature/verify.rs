//! Exact verification of the curvature-endomorphism identities.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::bundle::{casimir, q_endo, Bundle};
use super::difference::{difference_operator, sum_j_pairs, sum_j_square};
use super::gray::{correction_tensor, gray_relation, RbarSpace};
use super::tensor::CurvTensor;
use crate::error::Result;
use crate::fiber::endo::{form2_to_endo, FiberEndo};
use crate::fiber::forms::{form_dim, FiberForm, DIM};
use crate::fiber::structure::{star_matrix_forms, SU3Structure};
use crate::fiber::types::{hat, label_basis_endos, label_basis_forms, project_endo, project_form, sym_basis, TypeLabel};
use crate::linalg::{q, qf, Q, QMat};
use crate::report::{exact_check, IdentityCheck, Section};

const SEC: Section = Section::Curvature;

/// Number of random admissible R̄ used by the default run.
pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_SEED: u64 = 0x5eed_0003;

type Case = (String, Result<bool>);

/// Projection onto a form type as a matrix on Λ^p coordinates.
fn proj_forms(p: usize, label: TypeLabel, s: &SU3Structure) -> Result<QMat> {
    let cols: Vec<Vec<Q>> = (0..form_dim(p))
        .map(|n| project_form(&FiberForm::basis(p, n), label, s).map(|f| f.coeffs().to_vec()))
        .collect::<Result<_>>()?;
    Ok(QMat::from_columns(form_dim(p), &cols))
}

/// Sym-type projection on End coordinates, composed with symmetrization.
fn proj_end(label: TypeLabel, s: &SU3Structure) -> Result<QMat> {
    let mut cols = Vec::with_capacity(DIM * DIM);
    for r in 0..DIM {
        for c in 0..DIM {
            let e = FiberEndo::unit(r, c);
            let sym = (&e + &e.transpose()).scale(qf(1, 2));
            cols.push(project_endo(&sym, label, s)?.coords());
        }
    }
    Ok(QMat::from_columns(DIM * DIM, &cols))
}

/// pr± H = ½(H ∓ JHJ) on all of End.
fn end_pm(s: &SU3Structure, plus: bool) -> QMat {
    let j = s.j();
    let sign = if plus { q(-1) } else { q(1) };
    let cols: Vec<Vec<Q>> = (0..DIM * DIM)
        .map(|n| {
            let h = FiberEndo::unit(n / DIM, n % DIM);
            (&h + &j.compose(&h).compose(j).scale(sign)).scale(qf(1, 2)).coords()
        })
        .collect();
    QMat::from_columns(DIM * DIM, &cols)
}

/// Compares two operators on each vector of a domain basis.
fn on_domain(op: &QMat, expected: &QMat, domain: &[Vec<Q>], tag: &str) -> Vec<Case> {
    domain
        .iter()
        .enumerate()
        .map(|(n, v)| (format!("{tag} basis #{n}"), Ok(op.mul_vec(v) == expected.mul_vec(v))))
        .collect()
}

fn eig_cases(op: &QMat, basis: Vec<Vec<Q>>, lam: i64, tag: &str) -> Vec<Case> {
    basis
        .iter()
        .enumerate()
        .map(|(n, v)| {
            let want: Vec<Q> = v.iter().map(|x| *x * q(lam)).collect();
            (format!("{tag} #{n}"), Ok(op.mul_vec(v) == want))
        })
        .collect()
}

fn std_basis(n: usize) -> Vec<Vec<Q>> {
    (0..n)
        .map(|k| (0..n).map(|i| if i == k { q(1) } else { q(0) }).collect())
        .collect()
}

fn coords_of(forms: &[FiberForm]) -> Vec<Vec<Q>> {
    forms.iter().map(|f| f.coeffs().to_vec()).collect()
}

fn coords_of_endos(e: &[FiberEndo]) -> Vec<Vec<Q>> {
    e.iter().map(FiberEndo::coords).collect()
}

fn sym_domain() -> Vec<Vec<Q>> {
    coords_of_endos(&sym_basis())
}

fn lambda2_trace_free(s: &SU3Structure) -> Result<Vec<Vec<Q>>> {
    let mut d = coords_of(&label_basis_forms(TypeLabel::L2Primitive11, s)?);
    d.extend(coords_of(&label_basis_forms(TypeLabel::L2Type20, s)?));
    Ok(d)
}

/// Λ³₀ = Λ^(3,0)+(0,3) ⊕ Λ^(2,1)+(1,2)₀, the complement of Λ¹∧ω.
fn primitive_forms3(s: &SU3Structure) -> Result<Vec<Vec<Q>>> {
    let mut d = coords_of(&label_basis_forms(TypeLabel::L3Type30, s)?);
    d.extend(coords_of(&label_basis_forms(TypeLabel::L3Primitive21, s)?));
    Ok(d)
}

fn hat_matrix(s: &SU3Structure) -> Result<QMat> {
    let cols: Vec<Vec<Q>> = (0..20)
        .map(|n| hat(&FiberForm::basis(3, n), s).map(|f| f.coeffs().to_vec()))
        .collect::<Result<_>>()?;
    Ok(QMat::from_columns(20, &cols))
}

fn as_res(r: &Result<CurvTensor>) -> Result<&CurvTensor> {
    r.as_ref().map_err(|e| crate::Error::ConstraintViolation(e.to_string()))
}

fn lin(terms: &[(Q, &QMat)]) -> QMat {
    let n = terms[0].1.rows();
    let mut m = QMat::zeros(n, terms[0].1.cols());
    for (c, t) in terms {
        m.axpy(*c, t);
    }
    m
}

/// Runs the curvature checks with the default sample count and seed.
pub fn verify_curvature_identities(s: &SU3Structure) -> Result<Vec<IdentityCheck>> {
    verify_curvature_with(s, DEFAULT_SAMPLES, DEFAULT_SEED)
}

pub fn verify_curvature_with(s: &SU3Structure, samples: usize, seed: u64) -> Result<Vec<IdentityCheck>> {
    let mut out = Vec::new();
    let id6 = QMat::identity(DIM);
    let id36 = QMat::identity(DIM * DIM);
    let tm = std_basis(DIM);
    let sym = sym_domain();
    let l2 = lambda2_trace_free(s)?;
    let l3 = primitive_forms3(s)?;

    let pr_sym_plus0 = proj_end(TypeLabel::SymPlus0, s)?;
    let pr_sym_minus = proj_end(TypeLabel::SymMinus, s)?;
    let pr_11 = proj_forms(2, TypeLabel::L2Primitive11, s)?;
    let pr_20 = proj_forms(2, TypeLabel::L2Type20, s)?;
    let pr_30 = proj_forms(3, TypeLabel::L3Type30, s)?;
    let pr_21 = proj_forms(3, TypeLabel::L3Primitive21, s)?;
    let hat3 = hat_matrix(s)?;

    // Casimir normalizations.
    let mut cases: Vec<Case> = Vec::new();
    for p in 0..=DIM {
        let c = casimir(Bundle::Forms(p)).matrix;
        let expected = -((p * (DIM - p)) as i64);
        cases.push((format!("Λ^{p}"), Ok(c == QMat::identity(form_dim(p)).scale(q(expected)))));
    }
    cases.push(("TM".into(), Ok(casimir(Bundle::Tangent).matrix == id6.scale(q(-5)))));
    let cas_end = casimir(Bundle::End).matrix;
    let trace_free_sym: Vec<Vec<Q>> = coords_of_endos(&label_basis_endos(TypeLabel::SymPlus0, s)?)
        .into_iter()
        .chain(coords_of_endos(&label_basis_endos(TypeLabel::SymMinus, s)?))
        .collect();
    cases.extend(on_domain(&cas_end, &id36.scale(q(-12)), &trace_free_sym, "Sym₀"));
    cases.push(("Sym trace part".into(), Ok(cas_end.mul_vec(&FiberEndo::identity().coords()).iter().all(|x| *x == q(0)))));
    out.push(exact_check(
        SEC,
        "casimir_normalization",
        "Cas = −p(6−p) on Λ^p, −5 on TM, −12 on trace-free Sym, 0 on the trace part",
        cases,
    ));

    // Intermediate sums.
    let s1 = |b| sum_j_pairs(b, s).matrix;
    let s2 = |b| sum_j_square(b, s).matrix;
    let mut cases = on_domain(&s1(Bundle::Tangent), &id6.scale(q(-2)), &tm, "S1 TM");
    cases.extend(on_domain(&s1(Bundle::End), &pr_sym_minus.scale(q(-8)), &sym, "S1 Sym"));
    cases.extend(on_domain(&s1(Bundle::Forms(2)), &pr_11.scale(q(-8)), &l2, "S1 Λ²₀"));
    cases.extend(on_domain(&s1(Bundle::Forms(3)), &lin(&[(q(-6), &QMat::identity(20)), (q(-4), &hat3)]), &l3, "S1 Λ³₀"));
    cases.extend(on_domain(&s2(Bundle::Tangent), &id6.scale(q(-4)), &tm, "S2 TM"));
    cases.extend(on_domain(&s2(Bundle::End), &end_pm(s, false).scale(q(-16)), &std_basis(36), "S2 End"));
    cases.extend(on_domain(&s2(Bundle::Forms(3)), &lin(&[(q(-12), &QMat::identity(20)), (q(8), &hat3)]), &l3, "S2 Λ³₀"));
    out.push(exact_check(
        SEC,
        "difference_partial_sums",
        "S1 = −2id (TM), −8pr₋ (Sym), −8pr₊ (Λ²₀), −6α−4α̂ (Λ³₀); S2 = −4id (TM), −16pr₋ (End), −12α+8α̂ (Λ³₀)",
        cases,
    ));

    // Difference operator tables.
    let d = |b| difference_operator(b, s).matrix;
    out.push(exact_check(SEC, "difference_tangent", "q(R) − q(R̄) = id on TM", on_domain(&d(Bundle::Tangent), &id6, &tm, "TM")));
    out.push(exact_check(
        SEC,
        "difference_sym",
        "q(R) − q(R̄) = 3pr₊ + 2pr₋ on trace-free Sym, 0 on the trace part",
        on_domain(&d(Bundle::End), &lin(&[(q(3), &pr_sym_plus0), (q(2), &pr_sym_minus)]), &sym, "Sym"),
    ));
    out.push(exact_check(
        SEC,
        "difference_forms2",
        "q(R) − q(R̄) = −pr₊ + 4pr₋ on Λ²₀",
        on_domain(&d(Bundle::Forms(2)), &lin(&[(q(-1), &pr_11), (q(4), &pr_20)]), &l2, "Λ²₀"),
    ));
    out.push(exact_check(
        SEC,
        "difference_forms3",
        "q(R) − q(R̄) = −pr_{2,1} + 9pr_{3,0} on Λ³₀",
        on_domain(&d(Bundle::Forms(3)), &lin(&[(q(-1), &pr_21), (q(9), &pr_30)]), &l3, "Λ³₀"),
    ));

    // Non-primitive parts, pinned: ω and Λ¹∧ω are SU(3)-isomorphic to ℝ and
    // TM, where q(R̄) is 0 and 4 for the homogeneous model, so 8 and 9 − 4.
    let mut cases = eig_cases(&d(Bundle::Forms(2)), vec![s.omega().coeffs().to_vec()], 8, "ω");
    cases.extend(eig_cases(
        &d(Bundle::Forms(3)),
        coords_of(&label_basis_forms(TypeLabel::L3OneWedgeOmega, s)?),
        5,
        "Λ¹∧ω",
    ));
    out.push(exact_check(
        SEC,
        "difference_non_primitive",
        "q(R) − q(R̄) = 8 on ℝω and 5 on Λ¹∧ω",
        cases,
    ));

    // Eigenvalues on the type components.
    let mut cases = Vec::new();
    let eig = eig_cases;
    cases.extend(eig(&d(Bundle::End), coords_of_endos(&label_basis_endos(TypeLabel::SymPlus0, s)?), 3, "Sym⁺₀"));
    cases.extend(eig(&d(Bundle::End), coords_of_endos(&label_basis_endos(TypeLabel::SymMinus, s)?), 2, "Sym⁻"));
    cases.extend(eig(&d(Bundle::Forms(2)), coords_of(&label_basis_forms(TypeLabel::L2Primitive11, s)?), -1, "Λ^(1,1)₀"));
    let b21 = coords_of(&label_basis_forms(TypeLabel::L3Primitive21, s)?);
    cases.extend(eig(&d(Bundle::Forms(3)), b21, -1, "Λ^(2,1)+(1,2)₀"));
    out.push(exact_check(
        SEC,
        "difference_type_eigenvalues",
        "3 on Sym⁺₀, 2 on Sym⁻, −1 on Λ^(1,1)₀, −1 on Λ^(2,1)+(1,2)₀",
        cases,
    ));

    // Symmetry and equivariance of the difference operator.
    let mut cases = Vec::new();
    for b in Bundle::ALL {
        let m = d(b);
        cases.push((format!("{b} symmetric"), Ok(m == m.transpose())));
    }
    for (p, labels) in [
        (2, &[TypeLabel::L2Primitive11, TypeLabel::L2Type20, TypeLabel::L2Omega][..]),
        (3, &[TypeLabel::L3Type30, TypeLabel::L3Primitive21, TypeLabel::L3OneWedgeOmega][..]),
    ] {
        let m = d(Bundle::Forms(p));
        for l in labels {
            let pr = proj_forms(p, *l, s)?;
            cases.push((format!("Λ^{p} commutes with {l}"), Ok(&m * &pr == &pr * &m)));
        }
    }
    let m = d(Bundle::End);
    for (tag, pr) in [("pr₊", end_pm(s, true)), ("pr₋", end_pm(s, false))] {
        cases.push((format!("End commutes with {tag}"), Ok(&m * &pr == &pr * &m)));
    }
    out.push(exact_check(
        SEC,
        "difference_symmetric_equivariant",
        "q(R) − q(R̄) is symmetric and commutes with the type projections",
        cases,
    ));

    // q(R) on constant curvature.
    let cases = [q(1), q(-2), qf(3, 5)].into_iter().map(|c| {
        let r = CurvTensor::constant(c);
        let ok = q_endo(&r, Bundle::Forms(1)).map(|op| op.matrix == id6.scale(-c * q(5)));
        (format!("c = {c}"), ok)
    });
    out.push(exact_check(SEC, "q_constant_curvature", "ℛ = c·id gives q(R) = −5c on 1-forms", cases));

    // Random admissible R̄ and the Gray relation.
    out.push(exact_check(
        SEC,
        "gray_correction_ricci",
        "the correction tensor alone has Ric = g",
        std::iter::once(("R̄ = 0".to_string(), Ok(correction_tensor(s).ricci() == id6))),
    ));

    let space = RbarSpace::new(s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<(CurvTensor, Result<CurvTensor>)> = (0..samples)
        .map(|_| {
            let rbar = space.sample(&mut rng);
            let r = gray_relation(&rbar, s);
            (rbar, r)
        })
        .collect();
    let label = |n: usize| format!("sample {n} (seed {seed})");

    out.push(exact_check(
        SEC,
        "gray_relation_einstein",
        "R = R̄ + C satisfies Bianchi, R̄ic = 4g and Ric = 5g",
        samples.iter().enumerate().map(|(n, (rbar, r))| {
            let ok = as_res(r).map(|r| {
                r.satisfies_bianchi() && rbar.ricci() == id6.scale(q(4)) && r.ricci() == id6.scale(q(5))
            });
            (label(n), ok)
        }),
    ));

    let bundles = [Bundle::Tangent, Bundle::Forms(2), Bundle::Forms(3), Bundle::End];
    let diffs: Vec<QMat> = bundles.iter().map(|b| d(*b)).collect();
    out.push(exact_check(
        SEC,
        "gray_difference_cross_check",
        "q(R) − q(R̄) equals the difference operator for random admissible R̄",
        samples.iter().enumerate().map(|(n, (rbar, r))| {
            let ok = (|| -> Result<bool> {
                let r = as_res(r)?;
                for (b, dm) in bundles.iter().zip(&diffs) {
                    let lhs = q_endo(r, *b)?.sub(&q_endo(rbar, *b)?);
                    if &lhs.matrix != dm {
                        return Ok(false);
                    }
                }
                Ok(true)
            })();
            (label(n), ok)
        }),
    ));

    out.push(exact_check(
        SEC,
        "q_ricci_one_forms",
        "q(R) = Ric on 1-forms",
        samples.iter().enumerate().map(|(n, (_, r))| {
            let ok = as_res(r)
                .and_then(|r| Ok(q_endo(r, Bundle::Forms(1))?.matrix == r.ricci()));
            (label(n), ok)
        }),
    ));

    out.push(exact_check(
        SEC,
        "q_two_forms",
        "q(R) = −Ric⋆ + 2ℛ on 2-forms",
        samples.iter().enumerate().map(|(n, (_, r))| {
            let ok = as_res(r).and_then(|r| {
                let ric = FiberEndo::from_matrix(r.ricci());
                let mut expected = star_matrix_forms(&ric, 2).scale(q(-1));
                expected.axpy(q(2), &r.operator_matrix());
                Ok(q_endo(r, Bundle::Forms(2))?.matrix == expected)
            });
            (label(n), ok)
        }),
    ));

    // Equivariance under 2-form / skew endomorphism identification.
    let r0 = samples
        .first()
        .and_then(|(_, r)| r.as_ref().ok().cloned())
        .unwrap_or_else(|| CurvTensor::constant(q(1)));
    let q2 = q_endo(&r0, Bundle::Forms(2))?;
    let qe = q_endo(&r0, Bundle::End)?;
    out.push(exact_check(
        SEC,
        "q_skew_equivariance",
        "(q(R)φ)(Y, Z) = g((q(R)A_φ)Y, Z) on a basis of Λ²",
        (0..15).map(|n| {
            let phi = FiberForm::basis(2, n);
            let ok = (|| -> Result<bool> {
                let lhs = form2_to_endo(&FiberForm::from_coeffs(2, q2.apply(phi.coeffs())))?;
                let rhs = FiberEndo::from_coords(&qe.apply(&form2_to_endo(&phi)?.coords()));
                Ok(lhs == rhs)
            })();
            (format!("e{}", crate::fiber::forms::multi_index(2, n).iter().map(|i| i.to_string()).collect::<String>()), ok)
        }),
    ));

    // q(R̄) preserves the SU(3) type decompositions.
    let mut proj: Vec<(Bundle, String, QMat)> = Vec::new();
    for l in [TypeLabel::L2Primitive11, TypeLabel::L2Type20, TypeLabel::L2Omega] {
        proj.push((Bundle::Forms(2), l.to_string(), proj_forms(2, l, s)?));
    }
    for l in [TypeLabel::L3Type30, TypeLabel::L3Primitive21, TypeLabel::L3OneWedgeOmega] {
        proj.push((Bundle::Forms(3), l.to_string(), proj_forms(3, l, s)?));
    }
    for l in [TypeLabel::SymPlus0, TypeLabel::SymMinus, TypeLabel::Trace] {
        proj.push((Bundle::End, l.to_string(), proj_end(l, s)?));
    }
    proj.push((Bundle::End, "pr₊".into(), end_pm(s, true)));
    let rbar0 = samples.first().map(|(rb, _)| rb.clone()).unwrap_or_else(|| space.particular().clone());
    out.push(exact_check(
        SEC,
        "q_rbar_type_projections",
        "q(R̄) commutes with every type projection",
        proj.iter().map(|(b, tag, pr)| {
            let ok = q_endo(&rbar0, *b).map(|op| &op.matrix * pr == pr * &op.matrix);
            (format!("{b} {tag}"), ok)
        }),
    ));

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_curvature_checks_pass() {
        let s = SU3Structure::standard();
        let checks = verify_curvature_with(&s, 4, 1).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).map(|c| (&c.id, &c.witness)).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }
}
