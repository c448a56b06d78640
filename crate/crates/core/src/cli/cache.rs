//! Append-only JSON Lines journal of computed sums.
//!
//! One record per line. The newest record for a `(kind, parameter,
//! root_exponent)` key wins on lookup, and a new value that disagrees with the
//! stored one is refused.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::Rational;
use crate::wangsun::{SumKind, SumResult};

pub const DEFAULT_CACHE_PATH: &str = "./wangsun-cache.jsonl";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub kind: SumKind,
    pub parameter: u64,
    pub root_exponent: u64,
    pub value: Rational,
    pub version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl CacheRecord {
    pub fn from_result(r: &SumResult) -> Self {
        Self {
            kind: r.kind,
            parameter: r.param,
            root_exponent: r.root_exponent,
            value: r.value.clone(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
        }
    }

    pub fn key(&self) -> (SumKind, u64, u64) {
        (self.kind, self.parameter, self.root_exponent)
    }
}

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cache {path} line {line}: {message}")]
    Corrupt {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error(
        "cache integrity failure for {kind} parameter {parameter} root {root_exponent}: cached {cached}, computed {computed}"
    )]
    Integrity {
        kind: SumKind,
        parameter: u64,
        root_exponent: u64,
        cached: Box<Rational>,
        computed: Box<Rational>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PutOutcome {
    Stored,
    /// Same value already journaled; nothing written.
    Unchanged,
}

#[derive(Debug, Clone)]
pub struct ResultsCache {
    path: PathBuf,
}

impl ResultsCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Self { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn io(&self, source: std::io::Error) -> CacheError {
        CacheError::Io {
            path: self.path.clone(),
            source,
        }
    }

    /// All records in journal order. A missing file is an empty cache.
    pub fn load(&self) -> Result<Vec<CacheRecord>, CacheError> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(self.io(e)),
        };
        let mut out = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| CacheError::Corrupt {
                path: self.path.clone(),
                line: i + 1,
                message: e.to_string(),
            })?;
            if line.trim().is_empty() {
                continue;
            }
            let rec = serde_json::from_str(&line).map_err(|e| CacheError::Corrupt {
                path: self.path.clone(),
                line: i + 1,
                message: e.to_string(),
            })?;
            out.push(rec);
        }
        Ok(out)
    }

    pub fn get(
        &self,
        kind: SumKind,
        parameter: u64,
        root_exponent: u64,
    ) -> Result<Option<CacheRecord>, CacheError> {
        Ok(self
            .load()?
            .into_iter()
            .rev()
            .find(|r| r.key() == (kind, parameter, root_exponent)))
    }

    pub fn put(&self, record: &CacheRecord) -> Result<PutOutcome, CacheError> {
        if let Some(existing) = self.get(record.kind, record.parameter, record.root_exponent)? {
            if existing.value != record.value {
                return Err(CacheError::Integrity {
                    kind: record.kind,
                    parameter: record.parameter,
                    root_exponent: record.root_exponent,
                    cached: Box::new(existing.value),
                    computed: Box::new(record.value.clone()),
                });
            }
            return Ok(PutOutcome::Unchanged);
        }
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).map_err(|e| self.io(e))?;
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| self.io(e))?;
        let line = serde_json::to_string(record).expect("cache records always serialize");
        writeln!(file, "{line}").map_err(|e| self.io(e))?;
        file.sync_all().map_err(|e| self.io(e))?;
        Ok(PutOutcome::Stored)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rec(kind: SumKind, p: u64, a: u64, v: Rational) -> CacheRecord {
        CacheRecord {
            kind,
            parameter: p,
            root_exponent: a,
            value: v,
            version: "0.1.0".into(),
            timestamp: 7,
        }
    }

    #[test]
    fn put_then_get() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultsCache::new(dir.path().join("c.jsonl"));
        assert_eq!(cache.get(SumKind::Qsum, 6, 1).unwrap(), None);
        let r = rec(SumKind::Qsum, 6, 1, Rational::from(8));
        assert_eq!(cache.put(&r).unwrap(), PutOutcome::Stored);
        assert_eq!(
            cache
                .get(SumKind::Qsum, 6, 1)
                .unwrap()
                .unwrap()
                .value
                .to_string(),
            "8"
        );
        assert_eq!(cache.put(&r).unwrap(), PutOutcome::Unchanged);
        assert_eq!(cache.load().unwrap().len(), 1);
    }

    #[test]
    fn conflicting_value_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultsCache::new(dir.path().join("c.jsonl"));
        cache
            .put(&rec(SumKind::Qsum, 6, 1, Rational::from(8)))
            .unwrap();
        let err = cache
            .put(&rec(SumKind::Qsum, 6, 1, Rational::from(9)))
            .unwrap_err();
        assert!(matches!(err, CacheError::Integrity { .. }), "{err}");
        // other root exponents are separate keys
        cache
            .put(&rec(SumKind::Qsum, 6, 5, Rational::from(8)))
            .unwrap();
    }

    #[test]
    fn newest_record_wins() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let a = rec(SumKind::Dsum, 4, 1, Rational::from(-2300));
        let mut b = a.clone();
        b.timestamp = 99;
        let body = format!(
            "{}\n\n{}\n",
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        std::fs::write(&path, body).unwrap();
        let cache = ResultsCache::new(&path);
        assert_eq!(
            cache.get(SumKind::Dsum, 4, 1).unwrap().unwrap().timestamp,
            99
        );
    }

    #[test]
    fn corrupt_line_is_named() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let good = serde_json::to_string(&rec(SumKind::Qsum, 4, 1, Rational::from(4))).unwrap();
        std::fs::write(&path, format!("{good}\n{{not json\n")).unwrap();
        match ResultsCache::new(&path).load() {
            Err(CacheError::Corrupt { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected corrupt error, got {other:?}"),
        }
        std::fs::write(&path, format!("{}\n", good.replace("\"4\"", "\"2/4\""))).unwrap();
        assert!(matches!(
            ResultsCache::new(&path).load(),
            Err(CacheError::Corrupt { line: 1, .. })
        ));
    }

    fn kind_strategy() -> impl Strategy<Value = SumKind> {
        prop_oneof![
            Just(SumKind::Qsum),
            Just(SumKind::Dsum),
            Just(SumKind::Classical)
        ]
    }

    proptest! {
        #[test]
        fn record_round_trip(
            kind in kind_strategy(),
            p in any::<u64>(),
            a in any::<u64>(),
            num in any::<i64>(),
            den in 1i64..=i64::MAX,
            version in "[0-9a-z.\\-]{0,12}",
            ts in any::<u64>(),
        ) {
            let r = CacheRecord { kind, parameter: p, root_exponent: a, value: Rational::new(num, den), version, timestamp: ts };
            let line = serde_json::to_string(&r).unwrap();
            prop_assert!(!line.contains('\n'));
            prop_assert_eq!(serde_json::from_str::<CacheRecord>(&line).unwrap(), r);
        }
    }
}
