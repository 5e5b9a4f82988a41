//! The homogeneous nearly Kähler structure on G/K = SU(2)³/ΔSU(2).
//!
//! g = su(2)³ with the bi-invariant metric c·Σ x_i·y_i, k the diagonal,
//! m = {(X, Y, Z) : X + Y + Z = 0}. With p₁ = (1,−1,0)/√2, p₂ = (1,1,−2)/√6
//! the basis e_{2a} = p₁⊗e_a/√c, e_{2a+1} = p₂⊗e_a/√c of m carries the
//! standard J, and A_X = [X, ·]_m, R̄(X, Y) = −ad([X, Y]_k).

use nalgebra::DMatrix;

use crate::curvature::{check_hermitian_type, gray_relation, CurvTensor};
use crate::error::{Error, Result};
use crate::fiber::endo::FiberEndo;
use crate::fiber::forms::DIM;
use crate::fiber::structure::SU3Structure;
use crate::linalg::{q, qf, Q};
use crate::report::{exact_check, float_check, IdentityCheck, Section};

use super::su2::G3;

pub type RMat = DMatrix<f64>;

pub const SPACE: &str = "SU(2)^3/ΔSU(2)";
/// Filesystem-safe identifier of the space.
pub const SPACE_ID: &str = "su2x3-diag";
pub const PRESENTATION: &str = "G/K with G = SU(2)^3, K = diagonal SU(2)";
/// Expected solution of the scale equation Ric = 5g.
pub const METRIC_SCALE: (i64, i64) = (1, 6);
const GEOM_TOL: f64 = 1e-9;

fn eps(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

pub fn bracket(x: &G3, y: &G3) -> G3 {
    let mut out = [[0.0; 3]; 3];
    for f in 0..3 {
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    out[f][c] += eps(a, b, c) * x[f][a] * y[f][b];
                }
            }
        }
    }
    out
}

fn dot(x: &G3, y: &G3) -> f64 {
    (0..3).map(|f| (0..3).map(|a| x[f][a] * y[f][a]).sum::<f64>()).sum()
}

fn outer(p: [f64; 3], a: usize, s: f64) -> G3 {
    let mut x = [[0.0; 3]; 3];
    for f in 0..3 {
        x[f][a] = p[f] * s;
    }
    x
}

fn lin(terms: &[(f64, &G3)]) -> G3 {
    let mut out = [[0.0; 3]; 3];
    for (c, x) in terms {
        for f in 0..3 {
            for a in 0..3 {
                out[f][a] += c * x[f][a];
            }
        }
    }
    out
}

/// Reductive data at one metric scale.
struct Frame {
    c: f64,
    m: [G3; 6],
    k: [G3; 3],
}

impl Frame {
    fn new(c: f64) -> Self {
        let s2 = std::f64::consts::SQRT_2;
        let s6 = 6f64.sqrt();
        let p1 = [1.0 / s2, -1.0 / s2, 0.0];
        let p2 = [1.0 / s6, 1.0 / s6, -2.0 / s6];
        let inv = 1.0 / c.sqrt();
        let m = std::array::from_fn(|i| outer(if i % 2 == 0 { p1 } else { p2 }, i / 2, inv));
        let k = std::array::from_fn(|a| outer([1.0; 3], a, 1.0 / (3.0 * c).sqrt()));
        Self { c, m, k }
    }

    fn ip(&self, x: &G3, y: &G3) -> f64 {
        self.c * dot(x, y)
    }

    fn m_coords(&self, x: &G3) -> [f64; 6] {
        std::array::from_fn(|i| self.ip(&self.m[i], x))
    }

    fn k_part(&self, x: &G3) -> G3 {
        let terms: Vec<(f64, &G3)> = self.k.iter().map(|z| (self.ip(z, x), z)).collect();
        lin(&terms)
    }

    /// Matrix of Y ↦ [x, Y]_m on m.
    fn ad_m(&self, x: &G3) -> RMat {
        RMat::from_fn(DIM, DIM, |r, col| self.ip(&self.m[r], &bracket(x, &self.m[col])))
    }

    /// R̄(e_w, e_x) and the Levi-Civita R(e_w, e_x) as matrices on m, from
    /// R(X, Y) = [Λ_X, Λ_Y] − Λ_{[X,Y]_m} − ad([X,Y]_k) with Λ_X = ½[X, ·]_m.
    fn curvatures(&self) -> (Vec<f64>, Vec<f64>) {
        let lam: Vec<RMat> = self.m.iter().map(|e| self.ad_m(e) * 0.5).collect();
        let mut rbar = vec![0.0; DIM.pow(4)];
        let mut r = vec![0.0; DIM.pow(4)];
        for w in 0..DIM {
            for x in 0..DIM {
                let b = bracket(&self.m[w], &self.m[x]);
                let kk = self.ad_m(&self.k_part(&b));
                let mc = self.m_coords(&b);
                let mut full = &lam[w] * &lam[x] - &lam[x] * &lam[w] - &kk;
                for (i, l) in lam.iter().enumerate() {
                    full -= l * mc[i];
                }
                for y in 0..DIM {
                    for z in 0..DIM {
                        let n = ((w * DIM + x) * DIM + y) * DIM + z;
                        rbar[n] = -kk[(z, y)];
                        r[n] = full[(z, y)];
                    }
                }
            }
        }
        (rbar, r)
    }
}

fn ricci(t: &[f64]) -> RMat {
    RMat::from_fn(DIM, DIM, |x, y| (0..DIM).map(|i| t[((i * DIM + x) * DIM + y) * DIM + i]).sum())
}

/// R̄ in the adapted basis, from [e_{2a+s}, e_{2b+t}]_k = 2δ_st ε_abc (e_c, e_c, e_c):
/// R̄_{wxyz} = −2 δ_st δ_uv Σ_c ε_abc ε_cdf for w = 2a+s, x = 2b+t, y = 2d+u, z = 2f+v.
pub fn rbar_exact() -> CurvTensor {
    let e = |a: usize, b: usize, c: usize| -> i64 { eps(a, b, c) as i64 };
    CurvTensor::from_fn(|w, x, y, z| {
        let (a, s, b, t) = (w / 2, w % 2, x / 2, x % 2);
        let (d, u, f, v) = (y / 2, y % 2, z / 2, z % 2);
        if s != t || u != v {
            return q(0);
        }
        q(-2 * (0..3).map(|c| e(a, b, c) * e(c, d, f)).sum::<i64>())
    })
}

/// Scale c of the bi-invariant metric for which Ric = 5g: Ric is scale
/// invariant as a (0,2)-tensor, so Ric = κ₁ g₁ at c = 1 gives c = κ₁/5.
pub fn solve_metric_scale() -> Result<f64> {
    let (_, r) = Frame::new(1.0).curvatures();
    let ric = ricci(&r);
    let kappa = ric[(0, 0)];
    let off = (&ric - RMat::identity(DIM, DIM) * kappa).amax();
    if off > GEOM_TOL || kappa <= 0.0 {
        return Err(Error::Geometry(format!("unit-scale Ricci tensor is not a positive multiple of g (defect {off:.3e})")));
    }
    Ok(kappa / 5.0)
}

pub struct Geometry {
    pub scale: f64,
    /// basis of m and orthonormal basis of k as elements of su(2)³
    pub m_basis: [G3; 6],
    pub k_basis: [G3; 3],
    /// A_{e_i} = [e_i, ·]_m
    pub a: Vec<RMat>,
    /// ad(z_a) restricted to m
    pub k_action: Vec<RMat>,
    pub j: RMat,
    rbar_num: Vec<f64>,
    r_num: Vec<f64>,
    pub rbar: CurvTensor,
    pub r: CurvTensor,
    pub structure: SU3Structure,
}

fn to_f64(m: &crate::linalg::QMat) -> RMat {
    RMat::from_fn(m.rows(), m.cols(), |r, c| crate::linalg::q_to_f64(&m[(r, c)]))
}

fn endo_f64(e: &FiberEndo) -> RMat {
    to_f64(e.matrix())
}

fn curv_f64(t: &CurvTensor) -> Vec<f64> {
    t.components().iter().map(crate::linalg::q_to_f64).collect()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

impl Geometry {
    /// Solves the scale, assembles the structure and runs the setup checks;
    /// any failure aborts with a diagnostic.
    pub fn setup() -> Result<Self> {
        let g = Self::assemble()?;
        if let Some(c) = g.checks().into_iter().find(|c| !c.passed()) {
            return Err(Error::Geometry(format!("{}: {}", c.id, c.witness.unwrap_or_default())));
        }
        Ok(g)
    }

    fn assemble() -> Result<Self> {
        let scale = solve_metric_scale()?;
        let fr = Frame::new(scale);
        let a: Vec<RMat> = fr.m.iter().map(|e| fr.ad_m(e)).collect();
        let k_action: Vec<RMat> = fr.k.iter().map(|z| fr.ad_m(z)).collect();
        let (rbar_num, r_num) = fr.curvatures();
        let structure = SU3Structure::standard();
        let rbar = rbar_exact();
        let r = gray_relation(&rbar, &structure)?;
        Ok(Self {
            scale,
            m_basis: fr.m,
            k_basis: fr.k,
            a,
            k_action,
            j: endo_f64(structure.j()),
            rbar_num,
            r_num,
            rbar,
            r,
            structure,
        })
    }

    pub fn checks(&self) -> Vec<IdentityCheck> {
        let sec = Section::Spectra;
        let id6 = RMat::identity(DIM, DIM);
        let fr = Frame::new(self.scale);
        let gram = RMat::from_fn(DIM, DIM, |r, c| fr.ip(&self.m_basis[r], &self.m_basis[c]));
        let lam: Vec<RMat> = self.a.iter().map(|x| x * 0.5).collect();
        let nabla_j: Vec<RMat> = lam.iter().map(|l| l * &self.j - &self.j * l).collect();
        let norm_nabla_j: f64 = nabla_j.iter().map(|m| 0.5 * m.norm_squared()).sum();
        let sum_a2: RMat = self.a.iter().map(|x| x * x).sum();
        let fiber_a = self.structure.a_basis();
        let mut out = vec![
            float_check(
                sec,
                "metric_scale",
                "Ric = 5g fixes the bi-invariant scale c = 1/6",
                GEOM_TOL,
                [
                    ("c − 1/6".to_string(), (self.scale - METRIC_SCALE.0 as f64 / METRIC_SCALE.1 as f64).abs()),
                    ("orthonormal frame".to_string(), (&gram - &id6).amax()),
                ],
            ),
            float_check(
                sec,
                "ricci_einstein",
                "Ric = 5g and R̄ic = 4g from the Lie-bracket curvature",
                GEOM_TOL,
                [
                    ("Ric − 5g".to_string(), (ricci(&self.r_num) - &id6 * 5.0).amax()),
                    ("R̄ic − 4g".to_string(), (ricci(&self.rbar_num) - &id6 * 4.0).amax()),
                ],
            ),
            float_check(
                sec,
                "invariant_structure",
                "J is K-invariant and orthogonal, ∇_X J (X) = 0, |∇J|² = 12, Σ A_i A_i = −4·id",
                GEOM_TOL,
                [
                    (
                        "[ad k, J]".to_string(),
                        self.k_action.iter().map(|k| (k * &self.j - &self.j * k).amax()).fold(0.0, f64::max),
                    ),
                    ("JᵀJ − id".to_string(), (self.j.transpose() * &self.j - &id6).amax()),
                    (
                        "(∇_X J)X".to_string(),
                        (0..DIM).map(|i| nabla_j[i].column(i).amax()).fold(0.0, f64::max),
                    ),
                    ("|∇J|² − 12".to_string(), (norm_nabla_j - 12.0).abs()),
                    ("Σ A_i A_i + 4".to_string(), (sum_a2 + &id6 * 4.0).amax()),
                ],
            ),
            float_check(
                sec,
                "torsion_matches_fiber",
                "[e_i, ·]_m equals the fiber tensor A_{e_i} = −(Je_i ⌟ ψ⁺)",
                GEOM_TOL,
                (0..DIM).map(|i| (format!("e{i}"), (&self.a[i] - endo_f64(&fiber_a[i])).amax())),
            ),
            float_check(
                sec,
                "curvature_matches_exact",
                "Lie-bracket R̄ and R agree with the closed form of R̄ and R̄ + correction",
                GEOM_TOL,
                [
                    ("R̄".to_string(), max_diff(&self.rbar_num, &curv_f64(&self.rbar))),
                    ("R".to_string(), max_diff(&self.r_num, &curv_f64(&self.r))),
                ],
            ),
        ];
        let id6q = crate::linalg::QMat::identity(DIM);
        out.push(exact_check(
            sec,
            "curvature_exact",
            "closed-form R̄ is Hermitian of type (1,1)₀ with R̄ic = 4g; R satisfies Bianchi with Ric = 5g",
            vec![
                ("R̄ type".to_string(), check_hermitian_type(&self.rbar, &self.structure).map(|_| true)),
                ("R̄ic".to_string(), Ok(self.rbar.ricci() == id6q.scale(q(4)))),
                ("Bianchi".to_string(), Ok(self.r.satisfies_bianchi())),
                ("Ric".to_string(), Ok(self.r.ricci() == id6q.scale(q(5)))),
            ],
        ));
        out
    }

    pub fn metric_scale_exact(&self) -> Q {
        qf(METRIC_SCALE.0, METRIC_SCALE.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn setup_passes() {
        let g = Geometry::setup().unwrap();
        assert!((g.scale - 1.0 / 6.0).abs() < 1e-12);
        assert!(g.checks().iter().all(|c| c.passed()));
    }

    #[test]
    fn wrong_scale_breaks_einstein_constant() {
        let (_, r) = Frame::new(1.0).curvatures();
        assert!((ricci(&r)[(0, 0)] - 5.0).abs() > 0.1);
    }
}
