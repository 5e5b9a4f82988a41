//! One isotypic block: invariant operators on Hom_K(V, F) for a single irrep V.
//!
//! Sections of G ×_K F in the V-isotypic part are A ∈ Hom_K(V, F) ⊗ V, and
//! the canonical derivative is ∇̄_X A = −A∘ρ(X). Then ∇ = ∇̄ + ½A⋆,
//! d = Σ e^i∧∇_i, δ = −Σ e_i⌟∇_i and ∇*∇ = −Σ ∇_i∇_i.

use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::q_to_f64;

use super::fibers::{to_c, FiberKind, HarmonicContext};
use super::homk::{hom_k_basis, null_space};
use super::su2::{branch_multiplicity, CMat, IrrepLabel, TripleRep};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDims {
    pub l0: usize,
    pub l1: usize,
    pub l2: usize,
    pub l3: usize,
    pub sym0: usize,
    pub p11: usize,
}

impl HomDims {
    fn set(&mut self, k: FiberKind, v: usize) {
        match k {
            FiberKind::L0 => self.l0 = v,
            FiberKind::L1 => self.l1 = v,
            FiberKind::L2 => self.l2 = v,
            FiberKind::L3 => self.l3 = v,
            FiberKind::Sym0 => self.sym0 = v,
            FiberKind::P11 => self.p11 = v,
        }
    }
}

/// Largest residual of each block invariant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BlockDiagnostics {
    /// operators map invariant sections to invariant sections
    pub equivariance: f64,
    pub d_squared: f64,
    /// δ − d†
    pub adjoint: f64,
    /// Hodge vs Weitzenböck assembly of Δ on Λ⁰ and Λ²
    pub weitzenbock: f64,
    /// ∇̄*∇̄ + q(R̄) − Cas_G on every fiber
    pub casimir: f64,
    pub hermitian: f64,
    /// max(0, −smallest eigenvalue) of Δ and Δ_L
    pub psd: f64,
    pub coclosed11_invariance: f64,
    pub tt_invariance: f64,
    /// Δ on Λ⁰ against the closed-form Casimir
    pub lambda0_oracle: f64,
}

impl BlockDiagnostics {
    pub fn operator_residuals(&self) -> [(&'static str, f64); 9] {
        [
            ("equivariance", self.equivariance),
            ("d_squared", self.d_squared),
            ("adjoint", self.adjoint),
            ("weitzenbock", self.weitzenbock),
            ("casimir", self.casimir),
            ("hermitian", self.hermitian),
            ("psd", self.psd),
            ("coclosed11_invariance", self.coclosed11_invariance),
            ("tt_invariance", self.tt_invariance),
        ]
    }
}

/// A Hermitian matrix stored column-major as real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StoredMatrix {
    pub n: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl StoredMatrix {
    pub fn from_cmat(m: &CMat) -> Self {
        Self {
            n: m.nrows(),
            re: m.iter().map(|z| z.re).collect(),
            im: m.iter().map(|z| z.im).collect(),
        }
    }

    pub fn to_cmat(&self) -> Option<CMat> {
        if self.re.len() != self.n * self.n || self.im.len() != self.re.len() {
            return None;
        }
        Some(CMat::from_iterator(
            self.n,
            self.n,
            self.re.iter().zip(&self.im).map(|(r, i)| Complex64::new(*r, *i)),
        ))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BlockSpectra {
    pub lambda0: Vec<f64>,
    pub lambda2: Vec<f64>,
    pub coclosed11: Vec<f64>,
    pub tt: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockMatrices {
    pub lambda0: StoredMatrix,
    pub lambda2: StoredMatrix,
    pub coclosed11: StoredMatrix,
    pub tt: StoredMatrix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockResult {
    pub irrep: IrrepLabel,
    pub dim_v: usize,
    pub casimir: String,
    pub hom_dims: HomDims,
    pub hom_oracle: HomDims,
    pub diagnostics: BlockDiagnostics,
    pub spectra: BlockSpectra,
    pub matrices: BlockMatrices,
}

pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn frob(m: &CMat) -> f64 {
    m.norm()
}

/// Coordinates of f(b) in an orthonormal family, for each input b, and the
/// largest distance of f(b) from the span.
fn op_matrix(h_in: &[CMat], h_out: &[CMat], f: impl Fn(&CMat) -> CMat) -> (CMat, f64) {
    let mut m = CMat::zeros(h_out.len(), h_in.len());
    let mut res: f64 = 0.0;
    for (k, b) in h_in.iter().enumerate() {
        let y = f(b);
        let mut rest = y.clone();
        for (l, o) in h_out.iter().enumerate() {
            let c = o.dotc(&y);
            m[(l, k)] = c;
            rest -= o * c;
        }
        res = res.max(frob(&rest));
    }
    (m, res)
}

struct Ops<'a> {
    ctx: &'a HarmonicContext,
    rho_m: Vec<CMat>,
}

impl Ops<'_> {
    fn nabla_bar(&self, i: usize, a: &CMat) -> CMat {
        -(a * &self.rho_m[i])
    }

    fn nabla(&self, kind: FiberKind, i: usize, a: &CMat) -> CMat {
        &self.ctx.fiber(kind).torsion[i] * a - a * &self.rho_m[i]
    }

    fn form_kind(p: usize) -> FiberKind {
        [FiberKind::L0, FiberKind::L1, FiberKind::L2, FiberKind::L3][p]
    }

    fn d(&self, p: usize, a: &CMat) -> CMat {
        let k = Self::form_kind(p);
        (0..6).map(|i| &self.ctx.wedge[p][i] * self.nabla(k, i, a)).sum()
    }

    fn delta(&self, p: usize, a: &CMat) -> CMat {
        let k = Self::form_kind(p);
        -(0..6).map(|i| self.ctx.wedge[p - 1][i].transpose() * self.nabla(k, i, a)).sum::<CMat>()
    }

    fn rough(&self, kind: FiberKind, a: &CMat) -> CMat {
        -(0..6).map(|i| self.nabla(kind, i, &self.nabla(kind, i, a))).sum::<CMat>()
    }

    fn rough_bar(&self, a: &CMat) -> CMat {
        -(0..6).map(|i| self.nabla_bar(i, &self.nabla_bar(i, a))).sum::<CMat>()
    }

    fn divergence(&self, a: &CMat) -> CMat {
        -(0..6)
            .map(|i| &self.ctx.sym_contract[i] * self.nabla(FiberKind::Sym0, i, a))
            .sum::<CMat>()
    }
}

/// Restriction of a Hermitian block operator to the subspace spanned by the
/// orthonormal columns of `y`, and the residual of its invariance.
fn restrict(op: &CMat, y: &CMat) -> (CMat, f64) {
    let m = y.adjoint() * op * y;
    let res = if y.ncols() == 0 { 0.0 } else { frob(&(op * y - y * &m)) };
    (m, res)
}

pub fn build_block(ctx: &HarmonicContext, irrep: IrrepLabel) -> Result<BlockResult> {
    let g = &ctx.geometry;
    let rep = TripleRep::new(irrep);
    let rho_m: Vec<CMat> = g.m_basis.iter().map(|x| rep.rho(x)).collect();
    let rho_k: Vec<CMat> = g.k_basis.iter().map(|x| rep.rho(x)).collect();
    let weights = rep.weights();
    let mut hom_dims = HomDims::default();
    let mut hom_oracle = HomDims::default();
    let mut bases: Vec<Vec<CMat>> = Vec::new();
    for kind in FiberKind::ALL {
        let b = hom_k_basis(ctx.k_action(kind), &rho_k, &weights)?;
        hom_dims.set(kind, b.len());
        hom_oracle.set(kind, branch_multiplicity(irrep, &kind.weights())?);
        bases.push(b);
    }
    let [h0, h1, h2, h3, hs, h11] = <[Vec<CMat>; 6]>::try_from(bases).expect("six fibers");
    let ops = Ops { ctx, rho_m };
    let cas = q_to_f64(&irrep.casimir());
    let mut dg = BlockDiagnostics::default();
    let mut eq = |r: f64| dg.equivariance = dg.equivariance.max(r);

    let (d0, r) = op_matrix(&h0, &h1, |a| ops.d(0, a));
    eq(r);
    let (d1, r) = op_matrix(&h1, &h2, |a| ops.d(1, a));
    eq(r);
    let (d2, r) = op_matrix(&h2, &h3, |a| ops.d(2, a));
    eq(r);
    let (de1, r) = op_matrix(&h1, &h0, |a| ops.delta(1, a));
    eq(r);
    let (de2, r) = op_matrix(&h2, &h1, |a| ops.delta(2, a));
    eq(r);
    let (de3, r) = op_matrix(&h3, &h2, |a| ops.delta(3, a));
    eq(r);
    let (w0, r) = op_matrix(&h0, &h0, |a| ops.rough(FiberKind::L0, a));
    eq(r);
    let q2 = &ctx.fiber(FiberKind::L2).q_r;
    let (w2, r) = op_matrix(&h2, &h2, |a| ops.rough(FiberKind::L2, a) + q2 * a);
    eq(r);
    let qs = &ctx.fiber(FiberKind::Sym0).q_r;
    let (lich, r) = op_matrix(&hs, &hs, |a| ops.rough(FiberKind::Sym0, a) + qs * a);
    eq(r);
    let (div, r) = op_matrix(&hs, &h1, |a| ops.divergence(a));
    eq(r);
    let b11 = to_c(&ctx.p11.basis);
    let (emb11, r) = op_matrix(&h11, &h2, |a| &b11 * a);
    eq(r);

    let mut cas_res: f64 = 0.0;
    for (kind, h) in [(FiberKind::L0, &h0), (FiberKind::L1, &h1), (FiberKind::L2, &h2), (FiberKind::L3, &h3), (FiberKind::Sym0, &hs)] {
        let qb = &ctx.fiber(kind).q_rbar;
        let (m, r) = op_matrix(h, h, |a| ops.rough_bar(a) + qb * a);
        eq(r);
        let n = m.nrows();
        cas_res = cas_res.max(frob(&(m - CMat::identity(n, n) * Complex64::new(cas, 0.0))));
    }
    dg.casimir = cas_res;

    dg.d_squared = frob(&(&d1 * &d0)).max(frob(&(&d2 * &d1)));
    dg.adjoint = frob(&(&de1 - d0.adjoint()))
        .max(frob(&(&de2 - d1.adjoint())))
        .max(frob(&(&de3 - d2.adjoint())));
    let lap0 = &de1 * &d0;
    let lap2 = &d1 * &de2 + &de3 * &d2;
    dg.weitzenbock = frob(&(&lap0 - &w0)).max(frob(&(&lap2 - &w2)));
    dg.hermitian = [&lap0, &lap2, &lich]
        .iter()
        .map(|m| frob(&(*m - m.adjoint())))
        .fold(0.0, f64::max);

    let coclosed = &emb11 * null_space(&(&de2 * &emb11));
    let (m11, r11) = restrict(&lap2, &coclosed);
    dg.coclosed11_invariance = r11;
    let tt_basis = null_space(&div);
    let tt_basis = if tt_basis.nrows() == 0 { CMat::zeros(hs.len(), 0) } else { tt_basis };
    let (mtt, rtt) = restrict(&lich, &tt_basis);
    dg.tt_invariance = rtt;

    let spectra = BlockSpectra {
        lambda0: hermitian_eigenvalues(&lap0),
        lambda2: hermitian_eigenvalues(&lap2),
        coclosed11: hermitian_eigenvalues(&m11),
        tt: hermitian_eigenvalues(&mtt),
    };
    let lich_ev = hermitian_eigenvalues(&lich);
    dg.psd = spectra
        .lambda0
        .iter()
        .chain(&spectra.lambda2)
        .chain(&lich_ev)
        .fold(0.0f64, |acc, x| acc.max(-x));
    dg.lambda0_oracle = spectra.lambda0.iter().map(|x| (x - cas).abs()).fold(0.0, f64::max);

    Ok(BlockResult {
        irrep,
        dim_v: irrep.dim(),
        casimir: irrep.casimir().to_string(),
        hom_dims,
        hom_oracle,
        diagnostics: dg,
        spectra,
        matrices: BlockMatrices {
            lambda0: StoredMatrix::from_cmat(&lap0),
            lambda2: StoredMatrix::from_cmat(&lap2),
            coclosed11: StoredMatrix::from_cmat(&m11),
            tt: StoredMatrix::from_cmat(&mtt),
        },
    })
}

impl BlockResult {
    /// Every block invariant within tolerance, multiplicities matching the
    /// Clebsch–Gordan oracle; otherwise the first violation.
    pub fn validate(&self, tol_operator: f64, tol_oracle: f64) -> Result<()> {
        let fail = |invariant: &str, residual: f64| Error::BlockInvariant {
            block: self.irrep.to_string(),
            invariant: invariant.to_string(),
            residual,
        };
        if self.hom_dims != self.hom_oracle {
            return Err(fail("multiplicity_oracle", f64::NAN));
        }
        for (name, r) in self.diagnostics.operator_residuals() {
            if !(r <= tol_operator) {
                return Err(fail(name, r));
            }
        }
        let r = self.diagnostics.lambda0_oracle;
        if !(r <= tol_oracle) {
            return Err(fail("lambda0_oracle", r));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::geometry::Geometry;

    #[test]
    fn small_block_invariants() {
        let ctx = HarmonicContext::new(Geometry::setup().unwrap()).unwrap();
        let b = build_block(&ctx, IrrepLabel::new([2, 2, 0])).unwrap();
        b.validate(1e-9, 1e-8).unwrap();
        assert_eq!(b.hom_dims.l2, 5);
        assert_eq!(b.spectra.lambda0.len(), 1);
        assert!((b.spectra.lambda0[0] - 24.0).abs() < 1e-9);
        assert_eq!(b.spectra.coclosed11.len(), 1);
    }
}
