//! On-disk coefficient cache: one JSON document per (family, depth).

use std::fs;
use std::path::{Path, PathBuf};

use crate::correction::{derive_with, DerivationReport, DeriveError, DeriveOptions};
use crate::json::{report_from_str, report_to_json, to_canonical_string, JsonError};
use crate::seriesgen::Family;

/// Decimal digits stored next to the exact values.
pub const CACHE_DIGITS: usize = 40;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CacheError {
    #[error("{path}: {msg}")]
    Io { path: PathBuf, msg: String },
    #[error("{path}: {source}")]
    Format {
        path: PathBuf,
        #[source]
        source: JsonError,
    },
    #[error("{path}: holds {found} rather than {family} depth {depth}")]
    Mismatch { path: PathBuf, found: String, family: Family, depth: usize },
    #[error(transparent)]
    Derive(#[from] DeriveError),
}

#[derive(Debug, Clone)]
pub struct CoefficientCache {
    dir: PathBuf,
}

impl CoefficientCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        CoefficientCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, family: Family, depth: usize) -> PathBuf {
        self.dir.join(format!("{}-{depth}.json", family.name()))
    }

    fn io(path: &Path, e: std::io::Error) -> CacheError {
        CacheError::Io { path: path.to_path_buf(), msg: e.to_string() }
    }

    pub fn load(&self, family: Family, depth: usize) -> Result<Option<DerivationReport>, CacheError> {
        let path = self.path_for(family, depth);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Self::io(&path, e)),
        };
        let (report, _) = report_from_str(&text).map_err(|source| CacheError::Format { path: path.clone(), source })?;
        if report.cf.family() != family || report.cf.depth() != depth {
            return Err(CacheError::Mismatch {
                path,
                found: format!("{} depth {}", report.cf.family(), report.cf.depth()),
                family,
                depth,
            });
        }
        Ok(Some(report))
    }

    pub fn store(&self, report: &DerivationReport) -> Result<PathBuf, CacheError> {
        fs::create_dir_all(&self.dir).map_err(|e| Self::io(&self.dir, e))?;
        let path = self.path_for(report.cf.family(), report.cf.depth());
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, to_canonical_string(&report_to_json(report, CACHE_DIGITS))).map_err(|e| Self::io(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| Self::io(&path, e))?;
        Ok(path)
    }

    /// Cached report if present, else a fresh derivation which is then stored.
    /// The flag is true on a cache hit.
    pub fn get_or_derive(
        &self,
        family: Family,
        depth: usize,
        opts: DeriveOptions,
    ) -> Result<(DerivationReport, bool), CacheError> {
        let limit = family.certified_depth();
        if depth > limit && !opts.uncertified {
            return Err(DeriveError::DepthLimit { family, depth, limit }.into());
        }
        if let Some(r) = self.load(family, depth)? {
            return Ok((r, true));
        }
        let r = derive_with(family, depth, opts)?;
        self.store(&r)?;
        Ok((r, false))
    }

    /// Cached (family, depth) pairs in sorted order.
    pub fn entries(&self) -> Result<Vec<(Family, usize)>, CacheError> {
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(Self::io(&self.dir, e)),
        };
        let mut out = Vec::new();
        for entry in rd {
            let entry = entry.map_err(|e| Self::io(&self.dir, e))?;
            let name = entry.file_name();
            let Some(stem) = name.to_str().and_then(|n| n.strip_suffix(".json")) else {
                continue;
            };
            let Some((f, d)) = stem.rsplit_once('-') else { continue };
            if let (Ok(f), Ok(d)) = (f.parse::<Family>(), d.parse::<usize>()) {
                out.push((f, d));
            }
        }
        out.sort();
        Ok(out)
    }

    /// Removes all cached documents; returns how many were removed.
    pub fn clear(&self) -> Result<usize, CacheError> {
        let entries = self.entries()?;
        for &(f, d) in &entries {
            let p = self.path_for(f, d);
            fs::remove_file(&p).map_err(|e| Self::io(&p, e))?;
        }
        Ok(entries.len())
    }
}
