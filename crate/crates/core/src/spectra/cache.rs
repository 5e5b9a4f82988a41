//! On-disk block cache: one JSON file per (space, normalization hash, irrep).
//! Entries are re-validated before reuse; anything suspicious is rebuilt.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

use super::block::{hermitian_eigenvalues, BlockResult, StoredMatrix};
use super::geometry::{METRIC_SCALE, PRESENTATION, SPACE, SPACE_ID};
use super::su2::IrrepLabel;

pub const SCHEMA_VERSION: u32 = 1;

/// Everything that changes block contents. Bump SCHEMA_VERSION when the
/// assembly itself changes.
pub fn normalization_hash() -> String {
    let mut h = Sha256::new();
    for part in [
        format!("schema={SCHEMA_VERSION}"),
        format!("space={SPACE}"),
        format!("presentation={PRESENTATION}"),
        format!("metric_scale={}/{}", METRIC_SCALE.0, METRIC_SCALE.1),
        "scal=30".to_string(),
        "J e2k=e2k+1; psi+=e024-e035-e125-e134".to_string(),
        "nabla=nablabar+1/2 A; delta=-e_i contract nabla_i".to_string(),
    ] {
        h.update(part.as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    schema: u32,
    space: String,
    normalization_hash: String,
    block: BlockResult,
}

pub struct BlockCache {
    dir: PathBuf,
    hash: String,
}

impl BlockCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self {
            dir,
            hash: normalization_hash(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, irrep: IrrepLabel) -> PathBuf {
        self.dir
            .join(format!("{SPACE_ID}-{}-{}.json", &self.hash[..16], irrep.file_stem()))
    }

    /// Ok(None) if there is no entry; Err if there is one but it must not be used.
    pub fn load(&self, irrep: IrrepLabel, tol_operator: f64, tol_oracle: f64) -> Result<Option<BlockResult>> {
        let path = self.path(irrep);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let entry: CacheEntry =
            serde_json::from_str(&text).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        let reject = |why: &str| Err(Error::Cache(format!("{}: {why}", path.display())));
        if entry.schema != SCHEMA_VERSION {
            return reject("schema version");
        }
        if entry.space != SPACE || entry.normalization_hash != self.hash {
            return reject("normalization hash");
        }
        let b = entry.block;
        if b.irrep != irrep || b.dim_v != irrep.dim() {
            return reject("irrep label");
        }
        b.validate(tol_operator, tol_oracle)
            .map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        let m = &b.matrices;
        let s = &b.spectra;
        for (name, mat, ev) in [
            ("lambda0", &m.lambda0, &s.lambda0),
            ("lambda2", &m.lambda2, &s.lambda2),
            ("coclosed11", &m.coclosed11, &s.coclosed11),
            ("tt", &m.tt, &s.tt),
        ] {
            if !stored_matches(mat, ev, tol_operator) {
                return reject(&format!("{name} matrix does not reproduce its eigenvalues"));
            }
        }
        Ok(Some(b))
    }

    /// Atomic write: temp file in the same directory, then rename.
    pub fn store(&self, block: &BlockResult) -> Result<()> {
        let entry = CacheEntry {
            schema: SCHEMA_VERSION,
            space: SPACE.to_string(),
            normalization_hash: self.hash.clone(),
            block: block.clone(),
        };
        let path = self.path(block.irrep);
        let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(&entry)?.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

fn stored_matches(m: &StoredMatrix, ev: &[f64], tol: f64) -> bool {
    let Some(c) = m.to_cmat() else { return false };
    if c.nrows() != ev.len() || (&c - c.adjoint()).norm() > tol {
        return false;
    }
    let re = hermitian_eigenvalues(&c);
    re.iter().zip(ev).all(|(a, b)| (a - b).abs() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::block::build_block;
    use crate::spectra::fibers::HarmonicContext;
    use crate::spectra::geometry::Geometry;

    #[test]
    fn roundtrip_and_rejection() {
        let dir = tempfile::tempdir().unwrap();
        let cache = BlockCache::new(dir.path()).unwrap();
        let ctx = HarmonicContext::new(Geometry::setup().unwrap()).unwrap();
        let l = IrrepLabel::new([2, 1, 1]);
        assert!(cache.load(l, 1e-9, 1e-8).unwrap().is_none());
        let b = build_block(&ctx, l).unwrap();
        cache.store(&b).unwrap();
        assert_eq!(cache.load(l, 1e-9, 1e-8).unwrap().unwrap(), b);

        // tamper with one stored eigenvalue
        let path = cache.path(l);
        let mut v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        let x = v["block"]["spectra"]["lambda2"][0].as_f64().unwrap();
        v["block"]["spectra"]["lambda2"][0] = serde_json::json!(x + 0.5);
        fs::write(&path, v.to_string()).unwrap();
        assert!(matches!(cache.load(l, 1e-9, 1e-8), Err(Error::Cache(_))));

        fs::write(&path, "{ not json").unwrap();
        assert!(matches!(cache.load(l, 1e-9, 1e-8), Err(Error::Cache(_))));
    }
}
