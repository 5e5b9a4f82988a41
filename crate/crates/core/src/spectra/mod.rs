//! Spectra of invariant Laplacians on the homogeneous nearly Kähler space
//! SU(2)³/ΔSU(2), block by block over the irreducible representations of G.

pub mod block;
pub mod cache;
pub mod fibers;
pub mod geometry;
pub mod homk;
pub mod reports;
pub mod su2;

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hodge_model::moduli_dimension;
use crate::linalg::{q, Q};
use crate::report::{exact_check, float_check, IdentityCheck, Section};

pub use block::{build_block, BlockResult};
pub use cache::{normalization_hash, BlockCache};
pub use fibers::HarmonicContext;
pub use geometry::Geometry;
pub use reports::{ModuliReport, SpectralBundle, SpectralReport, Verdict};
pub use su2::{branch_multiplicity, enumerate_irreps, IrrepLabel};

use geometry::{METRIC_SCALE, PRESENTATION, SPACE};
use reports::{compare_block, count_near, totals, Normalization, StabilitySweep, Tolerances};

/// Benchmark Casimir cutoff (53 irreps).
pub const DEFAULT_CUTOFF: i64 = 60;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectraConfig {
    /// eigenvalue clustering
    pub tol_cluster: f64,
    /// block operator identities
    pub tol_operator: f64,
    /// Λ⁰ against the Casimir
    pub tol_oracle: f64,
}

impl Default for SpectraConfig {
    fn default() -> Self {
        Self {
            tol_cluster: 1e-6,
            tol_operator: 1e-9,
            tol_oracle: 1e-8,
        }
    }
}

impl SpectraConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, t) in [
            ("cluster", self.tol_cluster),
            ("operator", self.tol_operator),
            ("oracle", self.tol_oracle),
        ] {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::Config(format!("{name} tolerance must be positive, got {t}")));
            }
        }
        Ok(())
    }

    fn tolerances(&self) -> Tolerances {
        Tolerances {
            cluster: self.tol_cluster,
            operator: self.tol_operator,
            oracle: self.tol_oracle,
        }
    }
}

/// Accepts integers, fractions `p/q` and plain decimals.
pub fn parse_cutoff(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Config(format!("cutoff {s:?} is not a rational number"));
    let v = if let Some((i, f)) = s.split_once('.') {
        if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) || f.len() > 12 {
            return Err(bad());
        }
        let den = 10i64.pow(f.len() as u32);
        let ip: i64 = if i.is_empty() { 0 } else { i.parse().map_err(|_| bad())? };
        let fp: i64 = f.parse().map_err(|_| bad())?;
        Q::new(ip * den + fp, den)
    } else {
        s.parse::<Q>().map_err(|_| bad())?
    };
    if v <= q(0) {
        return Err(Error::Config(format!("cutoff must be positive, got {s}")));
    }
    Ok(v)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub hits: usize,
    pub built: usize,
    pub rejected: usize,
}

pub struct SpectralEngine {
    cfg: SpectraConfig,
    ctx: HarmonicContext,
    cache: Option<BlockCache>,
    hits: AtomicUsize,
    built: AtomicUsize,
    rejected: AtomicUsize,
}

/// Lower bound C − √(aC) + d for Δ on a block with Casimir C ≥ a/4, where
/// −Σ A_i⋆A_i⋆ ≤ a and −¼ Σ A_i⋆A_i⋆ + D ≥ d; increasing in C there.
fn laplace_lower_bound(cutoff: f64, (a, d): (f64, f64)) -> f64 {
    let c = cutoff.max(a / 4.0);
    c - (a * c).sqrt() + d
}

impl SpectralEngine {
    pub fn new(cfg: SpectraConfig, cache_dir: Option<PathBuf>) -> Result<Self> {
        cfg.validate()?;
        let ctx = HarmonicContext::new(Geometry::setup()?)?;
        let cache = cache_dir.map(BlockCache::new).transpose()?;
        Ok(Self {
            cfg,
            ctx,
            cache,
            hits: AtomicUsize::new(0),
            built: AtomicUsize::new(0),
            rejected: AtomicUsize::new(0),
        })
    }

    pub fn config(&self) -> &SpectraConfig {
        &self.cfg
    }

    pub fn context(&self) -> &HarmonicContext {
        &self.ctx
    }

    pub fn cache_stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            built: self.built.load(Ordering::Relaxed),
            rejected: self.rejected.load(Ordering::Relaxed),
        }
    }

    fn block(&self, l: IrrepLabel) -> Result<BlockResult> {
        let c = &self.cfg;
        if let Some(cache) = &self.cache {
            match cache.load(l, c.tol_operator, c.tol_oracle) {
                Ok(Some(b)) => {
                    self.hits.fetch_add(1, Ordering::Relaxed);
                    return Ok(b);
                }
                Ok(None) => {}
                Err(e) => {
                    log::warn!("rebuilding block {l}: {e}");
                    self.rejected.fetch_add(1, Ordering::Relaxed);
                }
            }
        }
        let b = build_block(&self.ctx, l)?;
        b.validate(c.tol_operator, c.tol_oracle)?;
        if let Some(cache) = &self.cache {
            cache.store(&b)?;
        }
        self.built.fetch_add(1, Ordering::Relaxed);
        Ok(b)
    }

    /// All blocks up to the cutoff, in enumeration order. Blocks are built
    /// concurrently; the first failure in that order is reported.
    pub fn blocks(&self, cutoff: Q) -> Result<Vec<BlockResult>> {
        let labels = enumerate_irreps(cutoff)?;
        let results: Vec<Result<BlockResult>> = labels.par_iter().map(|l| self.block(*l)).collect();
        results.into_iter().collect()
    }

    fn normalization(&self) -> Normalization {
        Normalization {
            scal: 30,
            einstein_constant: 5,
            metric_scale: format!("{}/{}", METRIC_SCALE.0, METRIC_SCALE.1),
            hash: normalization_hash(),
        }
    }

    pub fn complete_below(&self, bundle: SpectralBundle, cutoff: Q) -> f64 {
        let c = crate::linalg::q_to_f64(&cutoff);
        match bundle {
            // Δ = Casimir on functions
            SpectralBundle::Lambda0 => c,
            SpectralBundle::Lambda2 | SpectralBundle::Coclosed11 => laplace_lower_bound(c, self.ctx.bound_l2),
            SpectralBundle::Tt => laplace_lower_bound(c, self.ctx.bound_sym0),
        }
    }

    pub fn spectrum_from(&self, blocks: &[BlockResult], bundle: SpectralBundle, cutoff: Q) -> SpectralReport {
        SpectralReport {
            space: SPACE.to_string(),
            presentation: PRESENTATION.to_string(),
            bundle,
            operator: bundle.operator().to_string(),
            cutoff: cutoff.to_string(),
            irreps_computed: blocks.len(),
            tolerances: self.cfg.tolerances(),
            normalization: self.normalization(),
            complete_below: reports::round9(self.complete_below(bundle, cutoff)),
            lines: reports::cluster(blocks, bundle, self.cfg.tol_cluster),
        }
    }

    pub fn spectrum(&self, bundle: SpectralBundle, cutoff: Q) -> Result<SpectralReport> {
        Ok(self.spectrum_from(&self.blocks(cutoff)?, bundle, cutoff))
    }

    /// (dim E(2), dim E(6), dim E(12)) on co-closed primitive (1,1)-forms.
    pub fn e_lambda_dims(&self, cutoff: Q) -> Result<(usize, usize, usize)> {
        let t = totals(&self.compare(&self.blocks(cutoff)?, self.cfg.tol_cluster));
        Ok((t.e2, t.e6, t.e12))
    }

    /// dim ker(Δ_L − 10) on divergence-free trace-free symmetric 2-tensors.
    pub fn einstein_moduli_dim(&self, cutoff: Q) -> Result<usize> {
        let blocks = self.blocks(cutoff)?;
        Ok(blocks
            .iter()
            .map(|b| count_near(&b.spectra.tt, 10.0, self.cfg.tol_cluster) * b.dim_v)
            .sum())
    }

    fn compare(&self, blocks: &[BlockResult], tol: f64) -> Vec<reports::BlockComparison> {
        blocks.iter().map(|b| compare_block(b, tol)).collect()
    }

    pub fn moduli_from(&self, blocks: &[BlockResult], cutoff: Q) -> ModuliReport {
        let tol = self.cfg.tol_cluster;
        let rows = self.compare(blocks, tol);
        let t = totals(&rows);
        let stability: Vec<StabilitySweep> = [tol * 10.0, tol / 10.0]
            .into_iter()
            .map(|s| StabilitySweep {
                cluster_tolerance: s,
                totals: totals(&self.compare(blocks, s)),
            })
            .collect();
        let stable = stability.iter().all(|s| s.totals == t);
        let cb11 = reports::round9(self.complete_below(SpectralBundle::Coclosed11, cutoff));
        let cbtt = reports::round9(self.complete_below(SpectralBundle::Tt, cutoff));
        let mut verdicts: Vec<reports::EigenvalueVerdict> = [(2.0, t.e2), (6.0, t.e6), (12.0, t.e12)]
            .into_iter()
            .map(|(l, dim)| reports::EigenvalueVerdict {
                bundle: SpectralBundle::Coclosed11,
                eigenvalue: l,
                dim,
                verdict: reports::verdict(dim, l, cb11, tol),
                complete_below: cb11,
            })
            .collect();
        verdicts.push(reports::EigenvalueVerdict {
            bundle: SpectralBundle::Tt,
            eigenvalue: 10.0,
            dim: t.tt10,
            verdict: reports::verdict(t.tt10, 10.0, cbtt, tol),
            complete_below: cbtt,
        });
        let equality = rows.iter().all(|r| r.equal) && t.equal;
        ModuliReport {
            space: SPACE.to_string(),
            presentation: PRESENTATION.to_string(),
            cutoff: cutoff.to_string(),
            irreps_computed: blocks.len(),
            tolerances: self.cfg.tolerances(),
            normalization: self.normalization(),
            moduli: moduli_dimension(t.e2, t.e6, t.e12),
            blocks: rows,
            totals: t,
            stability,
            stable,
            verdicts,
            equality,
        }
    }

    pub fn moduli(&self, cutoff: Q) -> Result<ModuliReport> {
        Ok(self.moduli_from(&self.blocks(cutoff)?, cutoff))
    }

    /// Identity checks for the spectral engine: geometry setup, fiber
    /// curvature terms, and every block invariant up to the cutoff. Blocks
    /// are rebuilt (never read from the cache) and checked, not validated,
    /// so failures end up in the certificate.
    pub fn verify(&self, cutoff: Q) -> Result<Vec<IdentityCheck>> {
        let sec = Section::Spectra;
        let c = &self.cfg;
        let mut out = self.ctx.geometry.checks();
        out.push(float_check(
            sec,
            "fiber_casimir",
            "q(R̄) is the K-Casimir on every fiber",
            c.tol_operator,
            self.ctx.casimir_residuals(),
        ));
        let labels = enumerate_irreps(cutoff)?;
        let blocks: Vec<BlockResult> = labels
            .par_iter()
            .map(|l| build_block(&self.ctx, *l))
            .collect::<Vec<_>>()
            .into_iter()
            .collect::<Result<_>>()?;
        out.push(exact_check(
            sec,
            "block_multiplicity_oracle",
            "dim Hom_K(V, F) agrees with the Clebsch–Gordan count on every fiber",
            blocks.iter().map(|b| (b.irrep.to_string(), Ok(b.hom_dims == b.hom_oracle))),
        ));
        let statements = [
            "block operators preserve K-equivariant sections",
            "d² = 0",
            "δ = d†",
            "Hodge and Weitzenböck assembly of Δ agree",
            "∇̄*∇̄ + q(R̄) is the G-Casimir",
            "Δ and Δ_L are Hermitian",
            "Δ and Δ_L are positive semidefinite",
            "Δ preserves co-closed primitive (1,1)-forms",
            "Δ_L preserves divergence-free trace-free tensors",
        ];
        for (k, st) in statements.iter().enumerate() {
            let name = blocks.first().map(|b| b.diagnostics.operator_residuals()[k].0).unwrap_or("operator");
            out.push(float_check(
                sec,
                &format!("block_{name}"),
                st,
                c.tol_operator,
                blocks.iter().map(|b| (b.irrep.to_string(), b.diagnostics.operator_residuals()[k].1)),
            ));
        }
        out.push(float_check(
            sec,
            "block_lambda0_oracle",
            "Δ on functions equals the Casimir",
            c.tol_oracle,
            blocks.iter().map(|b| (b.irrep.to_string(), b.diagnostics.lambda0_oracle)),
        ));
        out.push(exact_check(
            sec,
            "block_moduli_equality",
            "dim ker(Δ_L − 10)|TT = dim E(2) + dim E(6) + dim E(12) in every block",
            blocks.iter().map(|b| (b.irrep.to_string(), Ok(compare_block(b, c.tol_cluster).equal))),
        ));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qf;

    #[test]
    fn cutoff_parsing() {
        assert_eq!(parse_cutoff("60").unwrap(), q(60));
        assert_eq!(parse_cutoff("121/2").unwrap(), qf(121, 2));
        assert_eq!(parse_cutoff("0.5").unwrap(), qf(1, 2));
        assert!(parse_cutoff("0").is_err());
        assert!(parse_cutoff("-3").is_err());
        assert!(parse_cutoff("abc").is_err());
    }

    #[test]
    fn small_cutoff_reports() {
        let e = SpectralEngine::new(SpectraConfig::default(), None).unwrap();
        let r = e.spectrum(SpectralBundle::Lambda0, q(13)).unwrap();
        assert_eq!(r.lines[0].eigenvalue, 0.0);
        assert_eq!(r.lines[0].multiplicity, 1);
        assert_eq!(e.e_lambda_dims(qf(1, 2)).unwrap(), (0, 0, 0));
        let m = e.moduli(qf(1, 2)).unwrap();
        assert!(m.equality);
        assert_eq!(m.totals.tt10, 0);
    }
}
