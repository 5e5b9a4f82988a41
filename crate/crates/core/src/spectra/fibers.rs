//! Fiber representations used by the block assembly, in orthonormal bases,
//! together with the curvature terms q(R̄), D and the wedge/contraction maps.

use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curvature::{difference_operator, q_endo, Bundle};
use crate::curvature::bundle::reps;
use crate::curvature::tensor::pairs;
use crate::error::Result;
use crate::fiber::forms::{wedge_matrix, DIM};
use crate::fiber::types::{label_basis_endos, label_basis_forms, TypeLabel};
use crate::linalg::{q_to_f64, QMat};

use super::geometry::{Geometry, RMat};
use super::su2::CMat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FiberKind {
    L0,
    L1,
    L2,
    L3,
    /// trace-free symmetric 2-tensors
    Sym0,
    /// primitive (1,1)-forms; only K-invariant, lives inside L2
    P11,
}

impl FiberKind {
    pub const ALL: [FiberKind; 6] = [FiberKind::L0, FiberKind::L1, FiberKind::L2, FiberKind::L3, FiberKind::Sym0, FiberKind::P11];
    /// Fibers carrying the full so(6) action.
    pub const FULL: [FiberKind; 5] = [FiberKind::L0, FiberKind::L1, FiberKind::L2, FiberKind::L3, FiberKind::Sym0];

    pub fn name(self) -> &'static str {
        match self {
            FiberKind::L0 => "Λ⁰",
            FiberKind::L1 => "Λ¹",
            FiberKind::L2 => "Λ²",
            FiberKind::L3 => "Λ³",
            FiberKind::Sym0 => "Sym²₀",
            FiberKind::P11 => "Λ²-(1,1)₀",
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    /// Weights under the diagonal Cartan generator, from the K-weights
    /// {−1, 0, 1} ⊕ {−1, 0, 1} of m alone (independent of the matrices).
    pub fn weights(self) -> Vec<i32> {
        let m = [-1, 0, 1, -1, 0, 1];
        let subsets = |p: usize| -> Vec<i32> {
            (0..1u32 << 6)
                .filter(|s| s.count_ones() as usize == p)
                .map(|s| (0..6).filter(|i| s >> i & 1 == 1).map(|i| m[i]).sum())
                .collect()
        };
        let remove = |mut w: Vec<i32>, rm: &[i32]| {
            for r in rm {
                let pos = w.iter().position(|x| x == r).expect("weight present");
                w.swap_remove(pos);
            }
            w
        };
        match self {
            FiberKind::L0 => subsets(0),
            FiberKind::L1 => subsets(1),
            FiberKind::L2 => subsets(2),
            FiberKind::L3 => subsets(3),
            FiberKind::Sym0 => {
                let w: Vec<i32> = (0..6).flat_map(|i| (i..6).map(move |j| m[i] + m[j])).collect();
                remove(w, &[0])
            }
            // Λ² = (1,1)₀ ⊕ ℝω ⊕ [[Λ^{2,0}]], and Λ^{2,0} ≅ ℂ³ as a K-module
            FiberKind::P11 => remove(subsets(2), &[0, -1, 0, 1, -1, 0, 1]),
        }
    }
}

pub fn to_c(m: &RMat) -> CMat {
    m.map(|x| Complex64::new(x, 0.0))
}

fn qmat_f64(m: &QMat) -> RMat {
    RMat::from_fn(m.rows(), m.cols(), |r, c| q_to_f64(&m[(r, c)]))
}

/// Orthonormal basis (columns) of the span of the given exact vectors.
fn orthonormal(vectors: &[Vec<f64>]) -> RMat {
    let n = vectors[0].len();
    let m = RMat::from_fn(n, vectors.len(), |r, c| vectors[c][r]);
    let qr = m.qr();
    qr.q()
}

pub struct Fiber {
    pub kind: FiberKind,
    pub dim: usize,
    /// columns: orthonormal basis in the ambient bundle
    pub basis: RMat,
    gens: Vec<RMat>,
    pub k_action: Vec<CMat>,
    /// ½ A_{e_i}⋆
    pub torsion: Vec<CMat>,
    pub q_rbar: CMat,
    /// q(R) = q(R̄) + D
    pub q_r: CMat,
    /// D restricted to the fiber
    pub difference: RMat,
}

impl Fiber {
    /// Matrix of a skew endomorphism M of m acting on the fiber.
    pub fn rep(&self, m: &RMat) -> RMat {
        let mut out = RMat::zeros(self.dim, self.dim);
        for (n, (i, j)) in pairs().enumerate() {
            let c = m[(j, i)];
            if c != 0.0 {
                out += &self.gens[n] * c;
            }
        }
        out
    }
}

/// (1,1)₀ inside Λ²: basis in reduced Λ² coordinates and K-action.
pub struct SubFiber {
    pub dim: usize,
    pub basis: RMat,
    pub k_action: Vec<CMat>,
}

pub struct HarmonicContext {
    pub geometry: Geometry,
    fibers: Vec<Fiber>,
    pub p11: SubFiber,
    /// e^i ∧ · : Λ^p → Λ^{p+1}, p = 0, 1, 2
    pub wedge: Vec<Vec<CMat>>,
    /// h ↦ h(e_i, ·) : Sym²₀ → Λ¹
    pub sym_contract: Vec<CMat>,
    /// (a, d) with −Σ A_i⋆A_i⋆ ≤ a and −¼Σ A_i⋆A_i⋆ + D ≥ d on Λ² and Sym²₀
    pub bound_l2: (f64, f64),
    pub bound_sym0: (f64, f64),
}

fn ambient(kind: FiberKind) -> Bundle {
    match kind {
        FiberKind::L0 => Bundle::Forms(0),
        FiberKind::L1 => Bundle::Forms(1),
        FiberKind::L2 | FiberKind::P11 => Bundle::Forms(2),
        FiberKind::L3 => Bundle::Forms(3),
        FiberKind::Sym0 => Bundle::End,
    }
}

fn build_fiber(kind: FiberKind, g: &Geometry) -> Result<Fiber> {
    let s = &g.structure;
    let amb = ambient(kind);
    let basis = match kind {
        FiberKind::Sym0 => {
            let mut v: Vec<Vec<f64>> = Vec::new();
            for l in [TypeLabel::SymPlus0, TypeLabel::SymMinus] {
                v.extend(label_basis_endos(l, s)?.iter().map(|e| e.coords().iter().map(q_to_f64).collect()));
            }
            orthonormal(&v)
        }
        _ => RMat::identity(amb.dim(), amb.dim()),
    };
    let dim = basis.ncols();
    let restrict = |m: &RMat| basis.transpose() * m * &basis;
    let gens: Vec<RMat> = reps(amb).gens.iter().map(|m| restrict(&qmat_f64(m))).collect();
    let mut f = Fiber {
        kind,
        dim,
        basis: basis.clone(),
        gens,
        k_action: Vec::new(),
        torsion: Vec::new(),
        q_rbar: CMat::zeros(0, 0),
        q_r: CMat::zeros(0, 0),
        difference: RMat::zeros(0, 0),
    };
    f.k_action = g.k_action.iter().map(|k| to_c(&f.rep(k))).collect();
    f.torsion = g.a.iter().map(|a| to_c(&(f.rep(a) * 0.5))).collect();
    let q_rbar = restrict(&qmat_f64(&q_endo(&g.rbar, amb)?.matrix));
    let diff = restrict(&qmat_f64(&difference_operator(amb, s).matrix));
    f.q_rbar = to_c(&q_rbar);
    f.q_r = to_c(&(&q_rbar + &diff));
    f.difference = diff;
    Ok(f)
}

impl HarmonicContext {
    pub fn new(geometry: Geometry) -> Result<Self> {
        let fibers = FiberKind::FULL
            .iter()
            .map(|k| build_fiber(*k, &geometry))
            .collect::<Result<Vec<_>>>()?;
        let p11_vecs: Vec<Vec<f64>> = label_basis_forms(TypeLabel::L2Primitive11, &geometry.structure)?
            .iter()
            .map(|f| f.coeffs().iter().map(q_to_f64).collect())
            .collect();
        let p11_basis = orthonormal(&p11_vecs);
        let l2 = &fibers[FiberKind::L2.index()];
        let p11 = SubFiber {
            dim: p11_basis.ncols(),
            k_action: geometry
                .k_action
                .iter()
                .map(|k| to_c(&(p11_basis.transpose() * l2.rep(k) * &p11_basis)))
                .collect(),
            basis: p11_basis,
        };
        let wedge = (0..3)
            .map(|p| (0..DIM).map(|i| to_c(&qmat_f64(&wedge_matrix(i, p)))).collect())
            .collect();
        let sym = &fibers[FiberKind::Sym0.index()];
        let sym_contract = (0..DIM)
            .map(|i| to_c(&RMat::from_fn(DIM, sym.dim, |k, c| sym.basis[(i * DIM + k, c)])))
            .collect();
        let bound = |f: &Fiber| {
            let neg_a2: RMat = -geometry.a.iter().map(|a| {
                let r = f.rep(a);
                &r * &r
            }).sum::<RMat>();
            let a = SymmetricEigen::new(neg_a2.clone()).eigenvalues.max();
            let d = SymmetricEigen::new(neg_a2 * 0.25 + &f.difference).eigenvalues.min();
            (a, d)
        };
        let bound_l2 = bound(l2);
        let bound_sym0 = bound(sym);
        Ok(Self {
            geometry,
            fibers,
            p11,
            wedge,
            sym_contract,
            bound_l2,
            bound_sym0,
        })
    }

    pub fn fiber(&self, kind: FiberKind) -> &Fiber {
        assert!(kind != FiberKind::P11, "(1,1)₀ is a subfiber");
        &self.fibers[kind.index()]
    }

    /// K-action on any fiber, including the (1,1)₀ subfiber.
    pub fn k_action(&self, kind: FiberKind) -> &[CMat] {
        match kind {
            FiberKind::P11 => &self.p11.k_action,
            k => &self.fiber(k).k_action,
        }
    }

    pub fn fiber_dim(&self, kind: FiberKind) -> usize {
        match kind {
            FiberKind::P11 => self.p11.dim,
            k => self.fiber(k).dim,
        }
    }

    /// Residuals of q(R̄) = Cas_K on each fiber and of D being self-adjoint.
    pub fn casimir_residuals(&self) -> Vec<(String, f64)> {
        self.fibers
            .iter()
            .map(|f| {
                let cas: CMat = -f.k_action.iter().map(|k| k * k).sum::<CMat>();
                (f.kind.name().to_string(), (&f.q_rbar - cas).norm())
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fiber_dimensions_and_weights() {
        let ctx = HarmonicContext::new(Geometry::setup().unwrap()).unwrap();
        let dims: Vec<usize> = FiberKind::ALL.iter().map(|k| ctx.fiber_dim(*k)).collect();
        assert_eq!(dims, vec![1, 6, 15, 20, 20, 8]);
        for k in FiberKind::ALL {
            assert_eq!(k.weights().len(), ctx.fiber_dim(k));
        }
        assert!(ctx.casimir_residuals().iter().all(|(_, r)| *r < 1e-12));
    }
}
