//! On-disk cache of computed records, one JSON file per `(n, route)`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use thiserror::Error;

use crate::apoly::{APolyRecord, Route};
use crate::json::canonical_hash;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {message}", path.display())]
    Corrupt { path: PathBuf, message: String },
    #[error("{}: cached hash {cached} differs from new hash {new}", path.display())]
    Conflict {
        path: PathBuf,
        cached: String,
        new: String,
    },
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, n: i64, route: Route) -> PathBuf {
        self.dir.join(format!("a_poly_{n}_{route}.json"))
    }

    /// The cached record, if any. A record whose stored hash does not match
    /// its polynomial is reported as corrupt.
    pub fn load(&self, n: i64, route: Route) -> Result<Option<APolyRecord>, CacheError> {
        let path = self.path(n, route);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        let rec: APolyRecord = serde_json::from_str(&text).map_err(|e| CacheError::Corrupt {
            path: path.clone(),
            message: e.to_string(),
        })?;
        if rec.n != n || rec.route != route {
            return Err(CacheError::Corrupt {
                path,
                message: format!("record is for n = {}, route {}", rec.n, rec.route),
            });
        }
        let actual = canonical_hash(&rec.a);
        if actual != rec.hash {
            return Err(CacheError::Corrupt {
                path,
                message: format!("stored hash {} but polynomial hashes to {actual}", rec.hash),
            });
        }
        Ok(Some(rec))
    }

    /// Writes `rec` atomically. An existing record with a different hash is
    /// never overwritten.
    pub fn store(&self, rec: &APolyRecord) -> Result<PathBuf, CacheError> {
        let path = self.path(rec.n, rec.route);
        if let Some(old) = self.load(rec.n, rec.route)? {
            if old.hash != rec.hash {
                return Err(CacheError::Conflict {
                    path,
                    cached: old.hash,
                    new: rec.hash.clone(),
                });
            }
        }
        let io = |source| CacheError::Io {
            path: path.clone(),
            source,
        };
        fs::create_dir_all(&self.dir).map_err(io)?;
        let nanos = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_nanos())
            .unwrap_or(0);
        let tmp = self.dir.join(format!(
            ".a_poly_{}_{}.{}.{nanos}.tmp",
            rec.n,
            rec.route,
            std::process::id()
        ));
        let body = serde_json::to_string(rec).expect("record serialization is infallible");
        let write = || -> std::io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(body.as_bytes())?;
            f.write_all(b"\n")?;
            f.sync_all()?;
            fs::rename(&tmp, &path)
        };
        write().map_err(|e| {
            let _ = fs::remove_file(&tmp);
            io(e)
        })?;
        Ok(path)
    }
}
