//! On-disk cache of closure bases.
//!
//! One JSON file per key, `{key, checksum, ambient_dim, basis}`, named by
//! the SHA-256 of the key. A file that fails to parse, names another key,
//! or fails its checksum is treated as absent and overwritten on the next
//! save.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use slring::algebra::{algebra_to_json, Algebra};
use slring::exact::{Field, Scalar, Subspace};

use crate::error::CliError;

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    key: String,
    checksum: String,
    ambient_dim: usize,
    basis: Vec<Vec<String>>,
}

fn sha256_hex(data: &[u8]) -> String {
    hex::encode(Sha256::digest(data))
}

fn checksum(key: &str, ambient_dim: usize, basis: &[Vec<String>]) -> String {
    let body = serde_json::to_string(&(key, ambient_dim, basis)).expect("strings serialize");
    sha256_hex(body.as_bytes())
}

/// `(algebra content hash, m, task)` joined into one string.
pub fn cache_key(alg: &Algebra, m: usize, task: &str) -> String {
    let content = sha256_hex(algebra_to_json(alg).as_bytes());
    format!("{content}:{m}:{task}")
}

#[derive(Clone, Debug)]
pub struct BasisCache {
    dir: PathBuf,
}

impl BasisCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        BasisCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir
            .join(format!("{}.json", sha256_hex(key.as_bytes())))
    }

    pub fn save(&self, key: &str, span: &Subspace) -> Result<(), CliError> {
        fs::create_dir_all(&self.dir).map_err(|e| CliError::io(&self.dir, e))?;
        let basis: Vec<Vec<String>> = span
            .basis()
            .iter()
            .map(|v| v.iter().map(Scalar::to_string).collect())
            .collect();
        let file = CacheFile {
            key: key.to_string(),
            checksum: checksum(key, span.ambient_dim(), &basis),
            ambient_dim: span.ambient_dim(),
            basis,
        };
        let path = self.path_for(key);
        let tmp = path.with_extension("json.tmp");
        let text = serde_json::to_string(&file).expect("cache files serialize");
        fs::write(&tmp, text).map_err(|e| CliError::io(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| CliError::io(&path, e))
    }

    /// `None` when missing or unusable.
    pub fn load(&self, key: &str, field: Field) -> Option<Subspace> {
        let text = fs::read_to_string(self.path_for(key)).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        if file.key != key || file.checksum != checksum(key, file.ambient_dim, &file.basis) {
            return None;
        }
        let basis = file
            .basis
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| Scalar::parse(s, field))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .ok()?;
        Subspace::from_echelon_basis(field, file.ambient_dim, basis).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use slring::algebra::standard_algebra;
    use slring::closure::ClosureOptions;
    use slring::special_linear::sl_ring;

    #[test]
    fn octonion_sl2_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = BasisCache::new(dir.path());
        let o = standard_algebra("O").unwrap();
        let span = sl_ring(&o, 2, ClosureOptions::default()).unwrap().span;
        let key = cache_key(&o, 2, "sl-ring");
        assert!(cache.load(&key, Field::Rational).is_none());
        cache.save(&key, &span).unwrap();
        let back = cache.load(&key, Field::Rational).unwrap();
        assert!(back.same_as(&span).unwrap());
        assert_eq!(back, span);
    }

    #[test]
    fn corrupted_or_foreign_files_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = BasisCache::new(dir.path());
        let r = standard_algebra("R").unwrap();
        let span = sl_ring(&r, 2, ClosureOptions::default()).unwrap().span;
        let key = cache_key(&r, 2, "sl-ring");
        cache.save(&key, &span).unwrap();

        let path = cache.path_for(&key);
        let text = fs::read_to_string(&path).unwrap();
        fs::write(&path, text.replacen("\"1\"", "\"2\"", 1)).unwrap();
        assert!(cache.load(&key, Field::Rational).is_none());

        fs::write(&path, "not json").unwrap();
        assert!(cache.load(&key, Field::Rational).is_none());

        cache.save(&key, &span).unwrap();
        let other = cache_key(&r, 3, "sl-ring");
        fs::copy(&path, cache.path_for(&other)).unwrap();
        assert!(cache.load(&other, Field::Rational).is_none());
    }

    #[test]
    fn keys_depend_on_content_and_parameters() {
        let o = standard_algebra("O").unwrap();
        let renamed = o.clone().with_name("octonions");
        assert_ne!(cache_key(&o, 2, "t"), cache_key(&renamed, 2, "t"));
        assert_ne!(cache_key(&o, 2, "t"), cache_key(&o, 3, "t"));
        assert_ne!(cache_key(&o, 2, "t"), cache_key(&o, 2, "u"));
    }
}
