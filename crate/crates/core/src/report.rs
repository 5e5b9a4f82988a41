//! Identity checks and the certificates that collect them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Section {
    Fiber,
    Curvature,
    Jets,
    Hodge,
    /// setup of the homogeneous model used by the spectral engine
    Spectra,
}

impl Section {
    pub const ALL: [Section; 5] = [
        Section::Fiber,
        Section::Curvature,
        Section::Jets,
        Section::Hodge,
        Section::Spectra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Section::Fiber => "fiber",
            Section::Curvature => "curvature",
            Section::Jets => "jets",
            Section::Hodge => "hodge",
            Section::Spectra => "spectra",
        }
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses a section filter. Accepts names or the numeric aliases 2..6.
pub fn parse_sections(s: &str) -> Result<Vec<Section>> {
    match s.trim().to_ascii_lowercase().as_str() {
        "all" => Ok(Section::ALL.to_vec()),
        other => Section::from_str(other).map(|x| vec![x]),
    }
}

impl FromStr for Section {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fiber" | "2" => Ok(Section::Fiber),
            "curvature" | "3" => Ok(Section::Curvature),
            "jets" | "4" => Ok(Section::Jets),
            "hodge" | "5" => Ok(Section::Hodge),
            "spectra" | "6" => Ok(Section::Spectra),
            _ => Err(Error::Config(format!(
                "unknown section {s:?}; expected fiber|curvature|jets|hodge|spectra|all or 2..6"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArithmeticMode {
    Exact,
    FloatTol,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    /// Stable identifier, e.g. `a_sum_squares`.
    pub id: String,
    pub statement: String,
    pub section: Section,
    pub status: Status,
    /// Number of basis cases examined (up to and including a failure).
    pub basis_size: usize,
    pub mode: ArithmeticMode,
    /// The first offending basis element, if any.
    pub witness: Option<String>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Runs an exact identity over labelled cases, stopping at the first failure.
/// An evaluation error counts as a failure and is recorded in the witness.
pub fn exact_check<I>(section: Section, id: &str, statement: &str, cases: I) -> IdentityCheck
where
    I: IntoIterator<Item = (String, Result<bool>)>,
{
    let mut n = 0;
    let mut witness = None;
    for (label, res) in cases {
        n += 1;
        match res {
            Ok(true) => {}
            Ok(false) => {
                witness = Some(label);
                break;
            }
            Err(e) => {
                witness = Some(format!("{label}: {e}"));
                break;
            }
        }
    }
    IdentityCheck {
        id: id.to_string(),
        statement: statement.to_string(),
        section,
        status: if witness.is_none() { Status::Pass } else { Status::Fail },
        basis_size: n,
        mode: ArithmeticMode::Exact,
        witness,
    }
}

/// Floating-point identity: each case carries a residual that must not exceed `tol`.
pub fn float_check<I>(section: Section, id: &str, statement: &str, tol: f64, cases: I) -> IdentityCheck
where
    I: IntoIterator<Item = (String, f64)>,
{
    let mut n = 0;
    let mut witness = None;
    for (label, r) in cases {
        n += 1;
        // NaN must fail too
        if !(r <= tol) {
            witness = Some(format!("{label}: residual {r:.3e} > {tol:.0e}"));
            break;
        }
    }
    IdentityCheck {
        id: id.to_string(),
        statement: statement.to_string(),
        section,
        status: if witness.is_none() { Status::Pass } else { Status::Fail },
        basis_size: n,
        mode: ArithmeticMode::FloatTol,
        witness,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationCertificate {
    pub sections: Vec<Section>,
    pub passed: bool,
    pub checks: Vec<IdentityCheck>,
}

impl VerificationCertificate {
    pub fn new(sections: Vec<Section>, checks: Vec<IdentityCheck>) -> Self {
        let passed = checks.iter().all(IdentityCheck::passed);
        Self {
            sections,
            passed,
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn find(&self, id: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Plain-text rendering, derived from the structured form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut current = None;
        for c in &self.checks {
            if current != Some(c.section) {
                out.push_str(&format!("[{}]\n", c.section));
                current = Some(c.section);
            }
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!(
                "  {status}  {:<28} n={:<5} {}\n",
                c.id, c.basis_size, c.statement
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!("        witness: {w}\n"));
            }
        }
        let total = self.checks.len();
        let failed = self.failures().count();
        out.push_str(&format!("{} of {} identities hold\n", total - failed, total));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stops_at_first_failure() {
        let cases = (0..10).map(|k| (format!("case {k}"), Ok(k != 3)));
        let c = exact_check(Section::Fiber, "x", "x holds", cases);
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.basis_size, 4);
        assert_eq!(c.witness.as_deref(), Some("case 3"));
    }

    #[test]
    fn section_aliases() {
        assert_eq!(parse_sections("3").unwrap(), vec![Section::Curvature]);
        assert_eq!(parse_sections("all").unwrap().len(), 5);
        assert_eq!(parse_sections("6").unwrap(), vec![Section::Spectra]);
        assert!(parse_sections("7").is_err());
    }

    #[test]
    fn float_tolerance() {
        let c = float_check(Section::Spectra, "x", "x", 1e-9, vec![("a".into(), 1e-12), ("b".into(), f64::NAN)]);
        assert!(!c.passed());
        assert_eq!(c.basis_size, 2);
    }
}
