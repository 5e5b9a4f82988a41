//! Finite Hodge calculus for the exterior system
//!   Δφ = 4φ − δσ,  Δσ = 6σ − 4dφ,  δφ = 0
//! and the eigenform triples in E(2) ⊕ E(6) ⊕ E(12), together with the maps
//! Ψ and Φ between them.
//!
//! Each side is spanned by six base generators and their Hodge duals. d and δ
//! are tabulated on the base generators; on duals they follow from
//! δ = −*d* (dimension 6) and ** = (−1)^p.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{poly_from_roots, q, qf, QMat, Q};
use crate::report::{exact_check, IdentityCheck, Section};

const SEC: Section = Section::Hodge;
const BASE: usize = 6;
pub const GENERATORS: usize = 2 * BASE;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// generic solution (φ, σ) of the exterior system
    A,
    /// triples (α, β, γ) of co-closed eigenforms for 2, 6, 12
    B,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// Rational combination of the generators of one side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalElement {
    pub side: Side,
    pub coeffs: Vec<Q>,
}

impl FormalElement {
    pub fn zero(side: Side) -> Self {
        Self {
            side,
            coeffs: vec![q(0); GENERATORS],
        }
    }

    pub fn generator(side: Side, k: usize) -> Self {
        let mut e = Self::zero(side);
        e.coeffs[k] = q(1);
        e
    }

    pub fn from_terms(side: Side, terms: &[(usize, Q)]) -> Self {
        let mut e = Self::zero(side);
        for (k, c) in terms {
            e.coeffs[*k] += *c;
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == q(0))
    }

    pub fn scale(&self, s: Q) -> Self {
        Self {
            side: self.side,
            coeffs: self.coeffs.iter().map(|c| *c * s).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.side, o.side);
        Self {
            side: self.side,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(q(-1)))
    }

    /// Degree, if all nonzero terms share one.
    pub fn degree(&self, model: &HodgeModel) -> Option<usize> {
        let mut d = None;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c != q(0) {
                let dk = model.degrees[k];
                if d.is_some_and(|x| x != dk) {
                    return None;
                }
                d = Some(dk);
            }
        }
        d
    }

    pub fn display(&self, model: &HodgeModel) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != q(0))
            .map(|(k, c)| format!("{c}·{}", model.names[k]))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Action tables of d, δ and * on one side.
#[derive(Clone, Debug)]
pub struct HodgeModel {
    pub side: Side,
    pub names: Vec<String>,
    pub degrees: Vec<usize>,
    pub d: QMat,
    pub delta: QMat,
    pub star: QMat,
}

/// Base generator tables: (name, degree, d image, δ image) in base coordinates.
type BaseTable = Vec<(&'static str, usize, Vec<(usize, Q)>, Vec<(usize, Q)>)>;

// side A base: φ, δσ, σ, dφ, dδσ, dσ
pub const PHI: usize = 0;
pub const DELTA_SIGMA: usize = 1;
pub const SIGMA: usize = 2;
pub const D_PHI: usize = 3;
pub const D_DELTA_SIGMA: usize = 4;
pub const D_SIGMA: usize = 5;
// side B base: α, β, γ, dα, dβ, dγ
pub const ALPHA: usize = 0;
pub const BETA: usize = 1;
pub const GAMMA: usize = 2;
pub const D_ALPHA: usize = 3;
pub const D_BETA: usize = 4;
pub const D_GAMMA: usize = 5;

/// Index of the Hodge dual of base generator k.
pub const fn star_of(k: usize) -> usize {
    k + BASE
}

fn table(side: Side) -> BaseTable {
    match side {
        // δ on the d-images follows from the system: δdφ = Δφ, δdδσ = δΔσ,
        // δdσ = Δσ − dδσ.
        Side::A => vec![
            ("φ", 2, vec![(D_PHI, q(1))], vec![]),
            ("δσ", 2, vec![(D_DELTA_SIGMA, q(1))], vec![]),
            ("σ", 3, vec![(D_SIGMA, q(1))], vec![(DELTA_SIGMA, q(1))]),
            ("dφ", 3, vec![], vec![(PHI, q(4)), (DELTA_SIGMA, q(-1))]),
            ("dδσ", 3, vec![], vec![(DELTA_SIGMA, q(10)), (PHI, q(-16))]),
            ("dσ", 4, vec![], vec![(SIGMA, q(6)), (D_PHI, q(-4)), (D_DELTA_SIGMA, q(-1))]),
        ],
        Side::B => vec![
            ("α", 2, vec![(D_ALPHA, q(1))], vec![]),
            ("β", 2, vec![(D_BETA, q(1))], vec![]),
            ("γ", 2, vec![(D_GAMMA, q(1))], vec![]),
            ("dα", 3, vec![], vec![(ALPHA, q(2))]),
            ("dβ", 3, vec![], vec![(BETA, q(6))]),
            ("dγ", 3, vec![], vec![(GAMMA, q(12))]),
        ],
    }
}

fn parity(p: usize) -> Q {
    if p % 2 == 0 {
        q(1)
    } else {
        q(-1)
    }
}

impl HodgeModel {
    /// Builds the tables and checks the consistency suite; fails with
    /// `ConstraintViolation` if any identity breaks.
    pub fn build(side: Side) -> Result<Self> {
        let m = Self::assemble(side);
        if let Some(c) = m.consistency_checks().into_iter().find(|c| !c.passed()) {
            return Err(Error::ConstraintViolation(format!(
                "side {side} model: {} fails at {}",
                c.id,
                c.witness.unwrap_or_default()
            )));
        }
        Ok(m)
    }

    fn assemble(side: Side) -> Self {
        let t = table(side);
        let n = GENERATORS;
        let mut names = Vec::with_capacity(n);
        let mut degrees = Vec::with_capacity(n);
        for (name, p, _, _) in &t {
            names.push(name.to_string());
            degrees.push(*p);
        }
        for (name, p, _, _) in &t {
            names.push(format!("*{name}"));
            degrees.push(6 - p);
        }
        let mut d = QMat::zeros(n, n);
        let mut delta = QMat::zeros(n, n);
        let mut star = QMat::zeros(n, n);
        for (k, (_, p, dk, deltak)) in t.iter().enumerate() {
            let p = *p;
            for (j, c) in dk {
                d[(*j, k)] += *c;
                // δ*x = −(−1)^p *dx
                delta[(star_of(*j), star_of(k))] += -parity(p) * *c;
            }
            for (j, c) in deltak {
                delta[(*j, k)] += *c;
                // d*x = *δx for even p, −*δx for odd p
                d[(star_of(*j), star_of(k))] += parity(p) * *c;
            }
            star[(star_of(k), k)] = q(1);
            star[(k, star_of(k))] = parity(p);
        }
        Self {
            side,
            names,
            degrees,
            d,
            delta,
            star,
        }
    }

    pub fn laplacian(&self) -> QMat {
        &(&self.d * &self.delta) + &(&self.delta * &self.d)
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn apply(&self, m: &QMat, x: &FormalElement) -> FormalElement {
        FormalElement {
            side: self.side,
            coeffs: m.mul_vec(&x.coeffs),
        }
    }

    pub fn d(&self, x: &FormalElement) -> FormalElement {
        self.apply(&self.d, x)
    }

    pub fn delta(&self, x: &FormalElement) -> FormalElement {
        self.apply(&self.delta, x)
    }

    pub fn hodge(&self, x: &FormalElement) -> FormalElement {
        self.apply(&self.star, x)
    }

    pub fn lap(&self, x: &FormalElement) -> FormalElement {
        self.apply(&self.laplacian(), x)
    }

    pub fn gen(&self, k: usize) -> FormalElement {
        FormalElement::generator(self.side, k)
    }

    /// d² = 0, δ² = 0, Δ commuting with d, δ and *, ** = (−1)^p, d and δ of
    /// the right degrees.
    pub fn consistency_checks(&self) -> Vec<IdentityCheck> {
        let n = GENERATORS;
        let lap = self.laplacian();
        let zero = QMat::zeros(n, n);
        let ss = &self.star * &self.star;
        let mut sign = QMat::zeros(n, n);
        for k in 0..n {
            sign[(k, k)] = parity(self.degrees[k]);
        }
        let degree_ok = |m: &QMat, shift: i64| {
            (0..n).all(|c| (0..n).all(|r| m[(r, c)] == q(0) || self.degrees[r] as i64 == self.degrees[c] as i64 + shift))
        };
        let rows: Vec<(&str, bool)> = vec![
            ("d² = 0", &self.d * &self.d == zero),
            ("δ² = 0", &self.delta * &self.delta == zero),
            ("Δd = dΔ", &lap * &self.d == &self.d * &lap),
            ("Δδ = δΔ", &lap * &self.delta == &self.delta * &lap),
            ("Δ* = *Δ", &lap * &self.star == &self.star * &lap),
            ("** = (−1)^p", ss == sign),
            ("δ = −*d*", self.delta == (&(&self.star * &self.d) * &self.star).scale(q(-1))),
            ("deg d = +1, deg δ = −1", degree_ok(&self.d, 1) && degree_ok(&self.delta, -1)),
        ];
        vec![exact_check(
            SEC,
            &format!("model_consistency_{}", self.side.to_string().to_lowercase()),
            "d² = 0, δ² = 0, Δ = dδ + δd commutes with d, δ, *; ** = (−1)^p; δ = −*d*",
            rows.into_iter().map(|(l, ok)| (l.to_string(), Ok(ok))),
        )]
    }
}

/// Both sides, validated.
pub struct Models {
    pub a: HodgeModel,
    pub b: HodgeModel,
}

pub fn build_model() -> Result<Models> {
    Ok(Models {
        a: HodgeModel::build(Side::A)?,
        b: HodgeModel::build(Side::B)?,
    })
}

/// Images of the side-B roots: (8φ + δσ, *dσ, 2φ − δσ).
pub fn psi_map(a: &HodgeModel) -> [FormalElement; 3] {
    let phi = a.gen(PHI);
    let dsig = a.gen(DELTA_SIGMA);
    [
        phi.scale(q(8)).add(&dsig),
        a.gen(star_of(D_SIGMA)),
        phi.scale(q(2)).sub(&dsig),
    ]
}

/// Images of the side-A roots: ((α + γ)/10, (3dα − 5*dβ − 2dγ)/30).
pub fn phi_map(b: &HodgeModel) -> [FormalElement; 2] {
    [
        b.gen(ALPHA).add(&b.gen(GAMMA)).scale(qf(1, 10)),
        FormalElement::from_terms(Side::B, &[(D_ALPHA, q(3)), (star_of(D_BETA), q(-5)), (D_GAMMA, q(-2))])
            .scale(qf(1, 30)),
    ]
}

/// Extends root images along generator words (d, δ, *) into a matrix whose
/// columns are the images of the source generators in target coordinates.
fn extend(source: Side, target: &HodgeModel, roots: &[FormalElement]) -> QMat {
    let base: Vec<FormalElement> = match source {
        Side::A => {
            let (phi, sigma) = (&roots[0], &roots[1]);
            let dsig = target.delta(sigma);
            vec![
                phi.clone(),
                dsig.clone(),
                sigma.clone(),
                target.d(phi),
                target.d(&dsig),
                target.d(sigma),
            ]
        }
        Side::B => {
            let mut v: Vec<FormalElement> = roots.to_vec();
            v.extend(roots.iter().map(|r| target.d(r)));
            v
        }
    };
    let mut cols: Vec<Vec<Q>> = base.iter().map(|e| e.coeffs.clone()).collect();
    cols.extend(base.iter().map(|e| target.hodge(e).coeffs));
    QMat::from_columns(GENERATORS, &cols)
}

/// Ψ on generators: side-B generators in side-A coordinates.
pub fn psi_matrix(m: &Models) -> QMat {
    extend(Side::B, &m.a, &psi_map(&m.a))
}

/// Φ on generators: side-A generators in side-B coordinates.
pub fn phi_matrix(m: &Models) -> QMat {
    extend(Side::A, &m.b, &phi_map(&m.b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliPart {
    pub eigenvalue: u32,
    /// the eigenvalue as a multiple of scal = 30
    pub scal_fraction: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliSummary {
    pub parts: Vec<ModuliPart>,
    pub total: usize,
}

/// Dimension of the space of infinitesimal Einstein deformations from the
/// dimensions of the co-closed primitive (1,1) eigenspaces E(2), E(6), E(12).
pub fn moduli_dimension(e2: usize, e6: usize, e12: usize) -> ModuliSummary {
    let parts = vec![
        ModuliPart {
            eigenvalue: 2,
            scal_fraction: "scal/15".into(),
            dim: e2,
        },
        ModuliPart {
            eigenvalue: 6,
            scal_fraction: "scal/5".into(),
            dim: e6,
        },
        ModuliPart {
            eigenvalue: 12,
            scal_fraction: "2scal/5".into(),
            dim: e12,
        },
    ];
    ModuliSummary {
        total: e2 + e6 + e12,
        parts,
    }
}

/// Restriction of Δ to a Δ-invariant span of generators, if invariant.
fn block(lap: &QMat, idx: &[usize]) -> Option<QMat> {
    for &c in idx {
        for r in 0..lap.rows() {
            if lap[(r, c)] != q(0) && !idx.contains(&r) {
                return None;
            }
        }
    }
    Some(QMat::from_fn(idx.len(), idx.len(), |r, c| lap[(idx[r], idx[c])]))
}

/// The eigenvalue table of the degree-2 side-A block, for reports.
pub fn degree2_block(a: &HodgeModel) -> Option<QMat> {
    block(&a.laplacian(), &[PHI, DELTA_SIGMA, star_of(D_SIGMA)])
}

pub fn verify_hodge_model() -> Result<Vec<IdentityCheck>> {
    let m = build_model()?;
    let (a, b) = (&m.a, &m.b);
    let mut out = Vec::new();
    out.extend(a.consistency_checks());
    out.extend(b.consistency_checks());

    let eq = |l: &FormalElement, r: &FormalElement| Ok(l == r);
    let phi = a.gen(PHI);
    let sigma = a.gen(SIGMA);
    let dsig = a.gen(DELTA_SIGMA);
    out.push(exact_check(
        SEC,
        "system_relations",
        "Δφ = 4φ − δσ, Δσ = 6σ − 4dφ, δφ = 0",
        vec![
            ("Δφ".to_string(), eq(&a.lap(&phi), &phi.scale(q(4)).sub(&dsig))),
            ("Δσ".to_string(), eq(&a.lap(&sigma), &sigma.scale(q(6)).sub(&a.gen(D_PHI).scale(q(4))))),
            ("δφ".to_string(), Ok(a.delta(&phi).is_zero())),
            ("Δδσ".to_string(), eq(&a.lap(&dsig), &dsig.scale(q(10)).sub(&phi.scale(q(16))))),
            ("Δdφ".to_string(), eq(&a.lap(&a.gen(D_PHI)), &a.gen(D_PHI).scale(q(4)).sub(&a.gen(D_DELTA_SIGMA)))),
        ],
    ));
    out.push(exact_check(
        SEC,
        "eigenform_relations",
        "Δα = 2α, Δβ = 6β, Δγ = 12γ, δα = δβ = δγ = 0",
        [(ALPHA, 2), (BETA, 6), (GAMMA, 12)].into_iter().map(|(k, lam)| {
            let g = b.gen(k);
            (b.names[k].clone(), Ok(b.lap(&g) == g.scale(q(lam)) && b.delta(&g).is_zero()))
        }),
    ));

    let lap_a = a.laplacian();
    let pair = block(&lap_a, &[PHI, DELTA_SIGMA]);
    let triple = degree2_block(a);
    out.push(exact_check(
        SEC,
        "degree2_spectrum",
        "Δ on span{φ, δσ} has χ = (λ−2)(λ−12); on span{φ, δσ, *dσ}, χ = (λ−2)(λ−6)(λ−12)",
        vec![
            (
                "span{φ, δσ}".to_string(),
                Ok(pair.is_some_and(|m| m.charpoly() == poly_from_roots(&[q(2), q(12)]))),
            ),
            (
                "span{φ, δσ, *dσ}".to_string(),
                Ok(triple.is_some_and(|m| m.charpoly() == poly_from_roots(&[q(2), q(6), q(12)]))),
            ),
            (
                "Δ(*dσ) = 6·*dσ".to_string(),
                eq(&a.lap(&a.gen(star_of(D_SIGMA))), &a.gen(star_of(D_SIGMA)).scale(q(6))),
            ),
        ],
    ));

    let st = |md: &HodgeModel, x: &FormalElement| md.hodge(&md.d(&md.hodge(&md.d(x))));
    out.push(exact_check(
        SEC,
        "star_d_composites",
        "*d*dβ = −δdβ = −6β and *d*dσ = −δdσ",
        vec![
            ("β".to_string(), eq(&st(b, &b.gen(BETA)), &b.gen(BETA).scale(q(-6)))),
            ("σ".to_string(), eq(&st(a, &sigma), &a.delta(&a.d(&sigma)).scale(q(-1)))),
        ],
    ));

    let psi = psi_map(a);
    out.push(exact_check(
        SEC,
        "psi_eigenforms",
        "8φ + δσ ∈ E(2), *dσ ∈ E(6), 2φ − δσ ∈ E(12), all co-closed",
        psi.iter().zip([2, 6, 12]).map(|(x, lam)| {
            (x.display(a), Ok(a.lap(x) == x.scale(q(lam)) && a.delta(x).is_zero()))
        }),
    ));
    let [p_phi, p_sigma] = phi_map(b);
    out.push(exact_check(
        SEC,
        "phi_solves_system",
        "((α+γ)/10, (3dα − 5*dβ − 2dγ)/30) solves the system",
        vec![
            ("Δφ = 4φ − δσ".to_string(), eq(&b.lap(&p_phi), &p_phi.scale(q(4)).sub(&b.delta(&p_sigma)))),
            (
                "Δσ = 6σ − 4dφ".to_string(),
                eq(&b.lap(&p_sigma), &p_sigma.scale(q(6)).sub(&b.d(&p_phi).scale(q(4)))),
            ),
            ("δφ = 0".to_string(), Ok(b.delta(&p_phi).is_zero())),
        ],
    ));

    let mpsi = psi_matrix(&m);
    let mphi = phi_matrix(&m);
    let mut chain = Vec::new();
    for (name, fa, fb) in [("d", &a.d, &b.d), ("δ", &a.delta, &b.delta), ("*", &a.star, &b.star)] {
        chain.push((format!("Φ∘{name} = {name}∘Φ"), Ok(&mphi * fa == fb * &mphi)));
        chain.push((format!("Ψ∘{name} = {name}∘Ψ"), Ok(&mpsi * fb == fa * &mpsi)));
    }
    out.push(exact_check(
        SEC,
        "maps_commute_with_operators",
        "Φ and Ψ commute with d, δ and * on every generator",
        chain,
    ));
    let id = QMat::identity(GENERATORS);
    out.push(exact_check(
        SEC,
        "psi_phi_bijection",
        "Ψ∘Φ = id and Φ∘Ψ = id",
        vec![
            ("Ψ∘Φ on side B".to_string(), Ok(&mphi * &mpsi == id)),
            ("Φ∘Ψ on side A".to_string(), Ok(&mpsi * &mphi == id)),
        ],
    ));

    let s0 = moduli_dimension(0, 0, 0);
    let s1 = moduli_dimension(1, 2, 3);
    out.push(exact_check(
        SEC,
        "moduli_dimension",
        "dim = dim E(2) + dim E(6) + dim E(12); eigenvalues scal/15, scal/5, 2scal/5",
        vec![
            ("(0,0,0)".to_string(), Ok(s0.total == 0)),
            ("(1,2,3)".to_string(), Ok(s1.total == 6)),
            (
                "labels".to_string(),
                Ok(s1.parts.iter().all(|p| {
                    let frac = match p.scal_fraction.as_str() {
                        "scal/15" => qf(30, 15),
                        "scal/5" => qf(30, 5),
                        "2scal/5" => qf(60, 5),
                        _ => q(-1),
                    };
                    frac == q(p.eigenvalue as i64)
                })),
            ),
        ],
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_hodge_checks_pass() {
        let checks = verify_hodge_model().unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).map(|c| (&c.id, &c.witness)).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    #[test]
    fn psi_of_phi_first_component() {
        let m = build_model().unwrap();
        let col = (&psi_matrix(&m) * &phi_matrix(&m)).column(PHI);
        assert_eq!(col, FormalElement::generator(Side::A, PHI).coeffs);
    }

    #[test]
    fn broken_table_rejected() {
        let mut m = HodgeModel::assemble(Side::A);
        m.delta[(PHI, D_PHI)] = q(5);
        assert!(m.consistency_checks().iter().any(|c| !c.passed()));
    }
}
