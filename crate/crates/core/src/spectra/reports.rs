//! Structured spectral reports. JSON is the source of truth; text is derived.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::hodge_model::ModuliSummary;

use super::block::BlockResult;
use super::su2::IrrepLabel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectralBundle {
    /// functions
    Lambda0,
    /// 2-forms
    Lambda2,
    /// co-closed primitive (1,1)-forms
    Coclosed11,
    /// transverse trace-free symmetric 2-tensors, Lichnerowicz Laplacian
    Tt,
}

impl SpectralBundle {
    pub const ALL: [SpectralBundle; 4] =
        [SpectralBundle::Lambda0, SpectralBundle::Lambda2, SpectralBundle::Coclosed11, SpectralBundle::Tt];

    pub fn name(self) -> &'static str {
        match self {
            SpectralBundle::Lambda0 => "lambda0",
            SpectralBundle::Lambda2 => "lambda2",
            SpectralBundle::Coclosed11 => "coclosed11",
            SpectralBundle::Tt => "tt",
        }
    }

    pub fn operator(self) -> &'static str {
        match self {
            SpectralBundle::Tt => "Lichnerowicz Laplacian on divergence-free trace-free symmetric 2-tensors",
            SpectralBundle::Lambda0 => "Hodge Laplacian on functions",
            SpectralBundle::Lambda2 => "Hodge Laplacian on 2-forms",
            SpectralBundle::Coclosed11 => "Hodge Laplacian on co-closed primitive (1,1)-forms",
        }
    }

    pub fn values(self, b: &BlockResult) -> &[f64] {
        match self {
            SpectralBundle::Lambda0 => &b.spectra.lambda0,
            SpectralBundle::Lambda2 => &b.spectra.lambda2,
            SpectralBundle::Coclosed11 => &b.spectra.coclosed11,
            SpectralBundle::Tt => &b.spectra.tt,
        }
    }
}

impl FromStr for SpectralBundle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown bundle {s:?}; expected lambda0|lambda2|coclosed11|tt")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub cluster: f64,
    pub operator: f64,
    pub oracle: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    pub scal: u32,
    pub einstein_constant: u32,
    pub metric_scale: String,
    pub hash: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralLine {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    pub irreps: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub space: String,
    pub presentation: String,
    pub bundle: SpectralBundle,
    pub operator: String,
    pub cutoff: String,
    pub irreps_computed: usize,
    pub tolerances: Tolerances,
    pub normalization: Normalization,
    /// every eigenvalue strictly below this is listed with full multiplicity
    pub complete_below: f64,
    pub lines: Vec<SpectralLine>,
}

/// Rounded for stable printing; −0 becomes 0.
pub fn round9(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Merges block eigenvalues into lines: sorted, chained within `tol`, the
/// mean as representative, multiplicity Σ dim V.
pub fn cluster(blocks: &[BlockResult], bundle: SpectralBundle, tol: f64) -> Vec<SpectralLine> {
    let mut all: Vec<(f64, usize, IrrepLabel)> = blocks
        .iter()
        .flat_map(|b| bundle.values(b).iter().map(move |x| (*x, b.dim_v, b.irrep)))
        .collect();
    all.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.2.cmp(&y.2)));
    let mut lines = Vec::new();
    let mut i = 0;
    while i < all.len() {
        let mut j = i + 1;
        while j < all.len() && all[j].0 - all[j - 1].0 <= tol {
            j += 1;
        }
        let group = &all[i..j];
        let mean = group.iter().map(|g| g.0).sum::<f64>() / group.len() as f64;
        let irreps: BTreeSet<(num_rational::Ratio<i64>, IrrepLabel)> =
            group.iter().map(|g| (g.2.casimir(), g.2)).collect();
        lines.push(SpectralLine {
            eigenvalue: round9(mean),
            multiplicity: group.iter().map(|g| g.1).sum(),
            irreps: irreps.into_iter().map(|(_, l)| l.to_string()).collect(),
        });
        i = j;
    }
    lines
}

impl SpectralReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "space: {} ({})", self.space, self.presentation);
        let _ = writeln!(out, "bundle: {} [{}]", self.bundle.name(), self.operator);
        let _ = writeln!(
            out,
            "normalization: scal = {}, Ric = {}g, metric scale {}, hash {}",
            self.normalization.scal, self.normalization.einstein_constant, self.normalization.metric_scale, &self.normalization.hash[..16]
        );
        let _ = writeln!(
            out,
            "cutoff: Casimir <= {} ({} irreps); complete below {:.6}",
            self.cutoff, self.irreps_computed, self.complete_below
        );
        let _ = writeln!(out, "{:>16}  {:>12}  irreps", "eigenvalue", "multiplicity");
        for l in &self.lines {
            let _ = writeln!(out, "{:>16.9}  {:>12}  {}", l.eigenvalue, l.multiplicity, l.irreps.join(" "));
        }
        out
    }
}

/// Per-block comparison of ker(Δ_L − 10) on TT with E(2) ⊕ E(6) ⊕ E(12),
/// counted as block multiplicities (each contributes dim V functions).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockComparison {
    pub irrep: String,
    pub dim_v: usize,
    pub e2: usize,
    pub e6: usize,
    pub e12: usize,
    pub e_sum: usize,
    pub tt10: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliTotals {
    pub e2: usize,
    pub e6: usize,
    pub e12: usize,
    pub e_sum: usize,
    pub tt10: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilitySweep {
    pub cluster_tolerance: f64,
    pub totals: ModuliTotals,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Present,
    /// absent, and the completeness bound rules out every omitted block
    AbsentCertified,
    /// absent from the computed blocks only
    AbsentBelowCutoffOnly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueVerdict {
    pub bundle: SpectralBundle,
    pub eigenvalue: f64,
    pub dim: usize,
    pub verdict: Verdict,
    pub complete_below: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuliReport {
    pub space: String,
    pub presentation: String,
    pub cutoff: String,
    pub irreps_computed: usize,
    pub tolerances: Tolerances,
    pub normalization: Normalization,
    pub blocks: Vec<BlockComparison>,
    pub totals: ModuliTotals,
    pub moduli: ModuliSummary,
    pub stability: Vec<StabilitySweep>,
    pub stable: bool,
    pub verdicts: Vec<EigenvalueVerdict>,
    pub equality: bool,
}

pub fn count_near(values: &[f64], lambda: f64, tol: f64) -> usize {
    values.iter().filter(|x| (*x - lambda).abs() <= tol).count()
}

pub fn compare_block(b: &BlockResult, tol: f64) -> BlockComparison {
    let e = |l: f64| count_near(&b.spectra.coclosed11, l, tol) * b.dim_v;
    let (e2, e6, e12) = (e(2.0), e(6.0), e(12.0));
    let tt10 = count_near(&b.spectra.tt, 10.0, tol) * b.dim_v;
    BlockComparison {
        irrep: b.irrep.to_string(),
        dim_v: b.dim_v,
        e2,
        e6,
        e12,
        e_sum: e2 + e6 + e12,
        tt10,
        equal: e2 + e6 + e12 == tt10,
    }
}

pub fn totals(rows: &[BlockComparison]) -> ModuliTotals {
    let s = |f: fn(&BlockComparison) -> usize| rows.iter().map(f).sum::<usize>();
    let (e2, e6, e12, tt10) = (s(|r| r.e2), s(|r| r.e6), s(|r| r.e12), s(|r| r.tt10));
    ModuliTotals {
        e2,
        e6,
        e12,
        e_sum: e2 + e6 + e12,
        tt10,
        equal: e2 + e6 + e12 == tt10,
    }
}

pub fn verdict(dim: usize, eigenvalue: f64, complete_below: f64, tol: f64) -> Verdict {
    if dim > 0 {
        Verdict::Present
    } else if eigenvalue + tol < complete_below {
        Verdict::AbsentCertified
    } else {
        Verdict::AbsentBelowCutoffOnly
    }
}

impl ModuliReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "space: {} ({})", self.space, self.presentation);
        let _ = writeln!(
            out,
            "normalization: scal = {}, Ric = {}g, metric scale {}",
            self.normalization.scal, self.normalization.einstein_constant, self.normalization.metric_scale
        );
        let _ = writeln!(out, "cutoff: Casimir <= {} ({} irreps)", self.cutoff, self.irreps_computed);
        let _ = writeln!(
            out,
            "{:<22} {:>6} {:>6} {:>6} {:>6} {:>6} {:>7}  equal",
            "irrep", "dim V", "E(2)", "E(6)", "E(12)", "sum", "TT(10)"
        );
        for r in self.blocks.iter().filter(|r| r.e_sum > 0 || r.tt10 > 0 || !r.equal) {
            let _ = writeln!(
                out,
                "{:<22} {:>6} {:>6} {:>6} {:>6} {:>6} {:>7}  {}",
                r.irrep, r.dim_v, r.e2, r.e6, r.e12, r.e_sum, r.tt10, if r.equal { "yes" } else { "NO" }
            );
        }
        let t = &self.totals;
        let _ = writeln!(
            out,
            "total: dim E(2) = {}, dim E(6) = {}, dim E(12) = {}, sum = {}, dim ker(Δ_L − 10)|TT = {}",
            t.e2, t.e6, t.e12, t.e_sum, t.tt10
        );
        let _ = writeln!(out, "infinitesimal Einstein deformations (from E): {}", self.moduli.total);
        for s in &self.stability {
            let _ = writeln!(
                out,
                "cluster tolerance {:.0e}: E sum {}, TT(10) {}",
                s.cluster_tolerance, s.totals.e_sum, s.totals.tt10
            );
        }
        for v in &self.verdicts {
            let what = match v.verdict {
                Verdict::Present => "present".to_string(),
                Verdict::AbsentCertified => format!("absent (certified: spectrum complete below {:.6})", v.complete_below),
                Verdict::AbsentBelowCutoffOnly => "absent in computed blocks only".to_string(),
            };
            let _ = writeln!(out, "eigenvalue {} on {}: dim {}, {}", v.eigenvalue, v.bundle.name(), v.dim, what);
        }
        let _ = writeln!(
            out,
            "blockwise equality: {}",
            if self.equality { "PASS" } else { "FAIL" }
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_and_verdicts() {
        assert_eq!(round9(-1e-13).to_bits(), 0.0f64.to_bits());
        assert_eq!(round9(5.9999999999), 6.0);
        assert_eq!(verdict(3, 6.0, 1.0, 1e-6), Verdict::Present);
        assert_eq!(verdict(0, 6.0, 7.0, 1e-6), Verdict::AbsentCertified);
        assert_eq!(verdict(0, 12.0, 7.0, 1e-6), Verdict::AbsentBelowCutoffOnly);
        assert_eq!("tt".parse::<SpectralBundle>().unwrap(), SpectralBundle::Tt);
        assert!("sym".parse::<SpectralBundle>().is_err());
    }
}
