//! Range census over odd fundamental discriminants with an append-only
//! newline-delimited cache and a deterministic parallel runner.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::field::validate_discriminant;
use crate::report::{census_record, CensusRecord};
use crate::{Error, Result};

/// Environment variable overriding the default cache directory.
pub const CACHE_DIR_ENV: &str = "SHIMURA_CENSUS_CACHE_DIR";

/// Default cache file location: $SHIMURA_CENSUS_CACHE_DIR/census.ndjson or
/// ./.shimura-census/census.ndjson.
pub fn default_cache_path() -> PathBuf {
    let dir = std::env::var_os(CACHE_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".shimura-census"));
    dir.join("census.ndjson")
}

/// All odd fundamental discriminants in [min, max], ordered by |D| ascending.
pub fn fundamental_discriminants(min: i64, max: i64) -> Result<Vec<i64>> {
    if min > max || max >= 0 {
        return Err(Error::InvalidInput(format!(
            "census range [{min}, {max}] must satisfy min <= max < 0"
        )));
    }
    let mut out = Vec::new();
    let mut d = max;
    while d >= min {
        if validate_discriminant(d).is_ok() {
            out.push(d);
        }
        d -= 1;
    }
    Ok(out)
}

const CACHE_SCHEMA: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct CacheHeader {
    schema: u32,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheEntry {
    d: i64,
    version: String,
    precision: u32,
    record: CensusRecord,
}

/// Append-only cache keyed by (D, artifact version, precision). Corrupted
/// tail lines are dropped on load, with a warning collected for the caller.
pub struct CensusCache {
    path: PathBuf,
    entries: std::collections::BTreeMap<(i64, u32), CensusRecord>,
    warnings: Vec<String>,
}

impl CensusCache {
    pub fn open(path: &Path) -> Result<Self> {
        let mut cache = CensusCache {
            path: path.to_path_buf(),
            entries: Default::default(),
            warnings: Vec::new(),
        };
        if !path.exists() {
            return Ok(cache);
        }
        let file = File::open(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read cache {}: {e}", path.display())))?;
        let mut lines = BufReader::new(file).lines();
        match lines.next() {
            None => return Ok(cache),
            Some(Ok(header_line)) => {
                match serde_json::from_str::<CacheHeader>(&header_line) {
                    Ok(h) if h.schema == CACHE_SCHEMA => {}
                    _ => {
                        cache
                            .warnings
                            .push(format!("cache {} has an unknown header; ignoring contents", path.display()));
                        return Ok(cache);
                    }
                }
            }
            Some(Err(e)) => {
                return Err(Error::InvalidInput(format!("cannot read cache: {e}")));
            }
        }
        let version = env!("CARGO_PKG_VERSION");
        for (lineno, line) in lines.enumerate() {
            let line = line
                .map_err(|e| Error::InvalidInput(format!("cannot read cache: {e}")))?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<CacheEntry>(&line) {
                Ok(entry) => {
                    if entry.version == version {
                        cache.entries.insert((entry.d, entry.precision), entry.record);
                    }
                }
                Err(_) => {
                    cache.warnings.push(format!(
                        "cache {}: dropping corrupted entry at line {}; it will be recomputed",
                        path.display(),
                        lineno + 2
                    ));
                }
            }
        }
        Ok(cache)
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn get(&self, d: i64, precision: u32) -> Option<&CensusRecord> {
        self.entries.get(&(d, precision))
    }

    /// Appends records, creating the file (with header) on first write.
    pub fn append(&mut self, records: &[(i64, u32, CensusRecord)]) -> Result<()> {
        if records.is_empty() {
            return Ok(());
        }
        if let Some(parent) = self.path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent).map_err(|e| {
                    Error::InvalidInput(format!("cannot create cache dir {}: {e}", parent.display()))
                })?;
            }
        }
        let fresh = !self.path.exists();
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| {
                Error::InvalidInput(format!("unwritable cache path {}: {e}", self.path.display()))
            })?;
        if fresh {
            let header = serde_json::to_string(&CacheHeader { schema: CACHE_SCHEMA })
                .expect("header serializes");
            writeln!(file, "{header}")
                .map_err(|e| Error::InvalidInput(format!("cache write failed: {e}")))?;
        }
        for (d, precision, record) in records {
            let entry = CacheEntry {
                d: *d,
                version: env!("CARGO_PKG_VERSION").to_string(),
                precision: *precision,
                record: record.clone(),
            };
            let line = serde_json::to_string(&entry).expect("entry serializes");
            writeln!(file, "{line}")
                .map_err(|e| Error::InvalidInput(format!("cache write failed: {e}")))?;
            self.entries.insert((*d, *precision), entry.record);
        }
        Ok(())
    }
}

/// Outcome counters for a census run; `computed` counts fresh evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CensusStats {
    pub computed: usize,
    pub cached: usize,
}

/// Runs the census over [min, max] at the given precision with `jobs`
/// worker threads. Results are ordered by |D| ascending regardless of
/// completion order, so output is byte-identical across parallelism levels.
pub fn run_census(
    min: i64,
    max: i64,
    precision: u32,
    jobs: usize,
    cache: Option<&mut CensusCache>,
) -> Result<(Vec<CensusRecord>, CensusStats)> {
    let discs = fundamental_discriminants(min, max)?;
    let jobs = jobs.max(1);
    let mut stats = CensusStats::default();

    let mut todo = Vec::new();
    let mut found: std::collections::BTreeMap<i64, CensusRecord> = Default::default();
    if let Some(cache) = &cache {
        for &d in &discs {
            match cache.get(d, precision) {
                Some(r) => {
                    stats.cached += 1;
                    found.insert(d, r.clone());
                }
                None => todo.push(d),
            }
        }
    } else {
        todo = discs.clone();
    }

    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<(i64, Result<CensusRecord>)>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(todo.len().max(1)) {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                if idx >= todo.len() {
                    break;
                }
                let d = todo[idx];
                let record = census_record(d, precision);
                results.lock().expect("census results lock").push((d, record));
            });
        }
    });

    let mut fresh = Vec::new();
    for (d, record) in results.into_inner().expect("census results lock") {
        let record = record?;
        stats.computed += 1;
        fresh.push((d, precision, record));
    }
    fresh.sort_by_key(|(d, _, _)| -d);
    if let Some(cache) = cache {
        cache.append(&fresh)?;
    }
    for (d, _, record) in fresh {
        found.insert(d, record);
    }

    // |D| ascending = numeric descending for negative D.
    let mut ordered: Vec<CensusRecord> = Vec::with_capacity(found.len());
    for &d in &discs {
        ordered.push(
            found
                .remove(&d)
                .expect("every discriminant in range was computed or cached"),
        );
    }
    Ok((ordered, stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_enumeration() {
        assert_eq!(
            fundamental_discriminants(-25, -3).unwrap(),
            vec![-3, -7, -11, -15, -19, -23]
        );
        assert!(fundamental_discriminants(-3, -25).is_err());
        assert!(fundamental_discriminants(-10, 5).is_err());
    }

    #[test]
    fn census_without_cache() {
        let (records, stats) = run_census(-25, -3, 12, 1, None).unwrap();
        assert_eq!(records.len(), 6);
        assert_eq!(stats.computed, 6);
        assert_eq!(stats.cached, 0);
        assert_eq!(records[0].d, -3);
        assert_eq!(records[5].d, -23);
    }

    #[test]
    fn warm_cache_recomputes_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("census.ndjson");
        let mut cache = CensusCache::open(&path).unwrap();
        let (first, stats1) = run_census(-25, -3, 12, 2, Some(&mut cache)).unwrap();
        assert_eq!(stats1.computed, 6);

        let mut cache = CensusCache::open(&path).unwrap();
        assert!(cache.warnings().is_empty());
        let (second, stats2) = run_census(-25, -3, 12, 2, Some(&mut cache)).unwrap();
        assert_eq!(stats2.computed, 0, "zero recomputation on warm cache");
        assert_eq!(stats2.cached, 6);
        assert_eq!(first, second);
    }

    #[test]
    fn cache_differentiates_precision() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("census.ndjson");
        let mut cache = CensusCache::open(&path).unwrap();
        run_census(-10, -3, 12, 1, Some(&mut cache)).unwrap();
        let (_, stats) = run_census(-10, -3, 24, 1, Some(&mut cache)).unwrap();
        assert_eq!(stats.computed, 2, "different precision is a different key");
    }

    #[test]
    fn corrupted_tail_is_dropped_and_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("census.ndjson");
        let mut cache = CensusCache::open(&path).unwrap();
        run_census(-10, -3, 12, 1, Some(&mut cache)).unwrap();
        // Truncate the last line mid-JSON.
        let contents = std::fs::read_to_string(&path).unwrap();
        let cut = contents.len() - 20;
        std::fs::write(&path, &contents[..cut]).unwrap();

        let mut cache = CensusCache::open(&path).unwrap();
        assert_eq!(cache.warnings().len(), 1);
        let (records, stats) = run_census(-10, -3, 12, 1, Some(&mut cache)).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(stats.computed, 1);
        assert_eq!(stats.cached, 1);
    }

    #[test]
    fn parallelism_is_deterministic() {
        let (a, _) = run_census(-40, -3, 10, 1, None).unwrap();
        let (b, _) = run_census(-40, -3, 10, 4, None).unwrap();
        let ja = serde_json::to_string(&a).unwrap();
        let jb = serde_json::to_string(&b).unwrap();
        assert_eq!(ja, jb, "jobs=4 byte-identical to jobs=1");
    }

    #[test]
    fn cached_record_matches_fresh_recomputation() {
        // Cache soundness over 50+ discriminants: reloaded records are
        // byte-equal to recomputation.
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("census.ndjson");
        let mut cache = CensusCache::open(&path).unwrap();
        run_census(-240, -3, 10, 2, Some(&mut cache)).unwrap();
        let mut cache = CensusCache::open(&path).unwrap();
        let (cached, stats) = run_census(-240, -3, 10, 2, Some(&mut cache)).unwrap();
        assert!(stats.cached >= 50, "sample of {} discriminants", stats.cached);
        let (fresh, _) = run_census(-240, -3, 10, 2, None).unwrap();
        assert_eq!(cached, fresh);
    }
}
