//! Append-only classification cache. Each process appends to its own
//! segment file; readers merge every segment. A line holds one record and
//! the SHA-256 of its JSON; lines that fail to parse or to match their
//! checksum are skipped with a warning.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::budget::Budget;
use crate::canon::CanonicalCode;
use crate::classify::OutcomeSummary;
use crate::TOOL_VERSION;

pub const CACHE_DIR_ENV: &str = "HLINE_CACHE_DIR";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub code: CanonicalCode,
    pub n: usize,
    pub budget: Budget,
    pub tool_version: String,
    /// Microseconds since the Unix epoch; the newest record per key wins.
    pub written_at: u64,
    pub summary: OutcomeSummary,
}

impl CacheRecord {
    pub fn new(code: CanonicalCode, n: usize, budget: Budget, summary: OutcomeSummary) -> Self {
        let written_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_micros() as u64);
        CacheRecord {
            code,
            n,
            budget,
            tool_version: TOOL_VERSION.to_string(),
            written_at,
            summary,
        }
    }

    fn is_current(&self, budget: &Budget) -> bool {
        self.tool_version == TOOL_VERSION && self.budget == *budget
    }
}

#[derive(Serialize, Deserialize)]
struct Line {
    record: CacheRecord,
    sha256: String,
}

fn checksum(record: &CacheRecord) -> String {
    let json = serde_json::to_string(record).expect("records serialize");
    hex::encode(Sha256::digest(json.as_bytes()))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub segments: usize,
    pub records: usize,
    pub current: usize,
    pub stale: usize,
    pub corrupt: usize,
    pub keys: usize,
}

pub struct DiskCache {
    dir: PathBuf,
    segment: PathBuf,
}

impl DiskCache {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        let nanos = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_nanos());
        let segment = dir.join(format!("seg-{}-{nanos}.jsonl", std::process::id()));
        Ok(DiskCache { dir, segment })
    }

    /// `$HLINE_CACHE_DIR`, else `$HOME/.cache/hline`.
    pub fn default_dir() -> Option<PathBuf> {
        if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
            return Some(PathBuf::from(dir));
        }
        std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("hline"))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn put(&self, record: &CacheRecord) -> io::Result<()> {
        self.put_all(std::slice::from_ref(record))
    }

    pub fn put_all(&self, records: &[CacheRecord]) -> io::Result<()> {
        if records.is_empty() {
            return Ok(());
        }
        let mut buf = String::new();
        for record in records {
            let line = Line {
                sha256: checksum(record),
                record: record.clone(),
            };
            buf.push_str(&serde_json::to_string(&line).expect("lines serialize"));
            buf.push('\n');
        }
        let mut f = OpenOptions::new().create(true).append(true).open(&self.segment)?;
        f.write_all(buf.as_bytes())
    }

    fn segments(&self) -> io::Result<Vec<PathBuf>> {
        let mut out: Vec<PathBuf> = fs::read_dir(&self.dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Every well-formed record in segment order, plus the corrupt count.
    fn scan(&self) -> io::Result<(Vec<CacheRecord>, usize)> {
        let mut records = Vec::new();
        let mut corrupt = 0;
        for path in self.segments()? {
            for (i, line) in BufReader::new(File::open(&path)?).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<Line>(&line) {
                    Ok(l) if checksum(&l.record) == l.sha256 => records.push(l.record),
                    _ => {
                        corrupt += 1;
                        log::warn!("skipping corrupt cache record {}:{}", path.display(), i + 1);
                    }
                }
            }
        }
        Ok((records, corrupt))
    }

    /// Newest current record per `(code, n)` for `budget`.
    pub fn load(&self, budget: &Budget) -> io::Result<Vec<(CanonicalCode, usize, OutcomeSummary)>> {
        let (records, _) = self.scan()?;
        let mut newest: HashMap<(CanonicalCode, usize), CacheRecord> = HashMap::new();
        for r in records.into_iter().filter(|r| r.is_current(budget)) {
            let key = (r.code.clone(), r.n);
            match newest.get(&key) {
                Some(old) if old.written_at > r.written_at => {}
                _ => {
                    newest.insert(key, r);
                }
            }
        }
        let mut out: Vec<_> = newest.into_iter().map(|((c, n), r)| (c, n, r.summary)).collect();
        out.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
        Ok(out)
    }

    pub fn get(&self, code: &CanonicalCode, n: usize, budget: &Budget) -> io::Result<Option<OutcomeSummary>> {
        Ok(self
            .load(budget)?
            .into_iter()
            .find(|(c, m, _)| c == code && *m == n)
            .map(|(_, _, s)| s))
    }

    pub fn stats(&self, budget: &Budget) -> io::Result<CacheStats> {
        let (records, corrupt) = self.scan()?;
        let current = records.iter().filter(|r| r.is_current(budget)).count();
        Ok(CacheStats {
            segments: self.segments()?.len(),
            records: records.len(),
            current,
            stale: records.len() - current,
            corrupt,
            keys: self.load(budget)?.len(),
        })
    }

    /// Deletes every segment; returns how many were removed.
    pub fn clear(&self) -> io::Result<usize> {
        let segments = self.segments()?;
        for p in &segments {
            fs::remove_file(p)?;
        }
        Ok(segments.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_code;
    use crate::classify::classify;
    use crate::families::make_cycle;

    fn sample() -> (CanonicalCode, OutcomeSummary) {
        let g = make_cycle(5).unwrap();
        (canonical_code(&g).unwrap(), classify(&g, 4, Budget::default()).summary())
    }

    #[test]
    fn put_then_get() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::open(dir.path()).unwrap();
        let (code, summary) = sample();
        let budget = Budget::default();
        assert_eq!(cache.get(&code, 4, &budget).unwrap(), None);
        cache.put(&CacheRecord::new(code.clone(), 4, budget, summary.clone())).unwrap();
        assert_eq!(cache.get(&code, 4, &budget).unwrap(), Some(summary.clone()));
        assert_eq!(cache.get(&code, 5, &budget).unwrap(), None);
        // A second process-like handle sees the first one's segment.
        let other = DiskCache::open(dir.path()).unwrap();
        assert_eq!(other.get(&code, 4, &budget).unwrap(), Some(summary));
    }

    #[test]
    fn stale_version_and_budget_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::open(dir.path()).unwrap();
        let (code, summary) = sample();
        let budget = Budget::default();
        let mut old = CacheRecord::new(code.clone(), 4, budget, summary.clone());
        old.tool_version = "0.0.0+old".into();
        cache.put(&old).unwrap();
        assert_eq!(cache.get(&code, 4, &budget).unwrap(), None);
        cache.put(&CacheRecord::new(code.clone(), 4, budget, summary)).unwrap();
        let tighter = Budget { max_iter: 3, ..budget };
        assert_eq!(cache.get(&code, 4, &tighter).unwrap(), None);
        let stats = cache.stats(&budget).unwrap();
        assert_eq!((stats.records, stats.current, stats.stale), (2, 1, 1));
    }

    #[test]
    fn newest_wins() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::open(dir.path()).unwrap();
        let (code, summary) = sample();
        let budget = Budget::default();
        let mut first = CacheRecord::new(code.clone(), 4, budget, summary.clone());
        first.summary.index = Some(9);
        let mut second = CacheRecord::new(code.clone(), 4, budget, summary.clone());
        second.written_at = first.written_at + 1;
        cache.put_all(&[second, first]).unwrap();
        assert_eq!(cache.get(&code, 4, &budget).unwrap(), Some(summary));
    }

    #[test]
    fn corrupt_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::open(dir.path()).unwrap();
        let (code, summary) = sample();
        let budget = Budget::default();
        cache.put(&CacheRecord::new(code.clone(), 4, budget, summary.clone())).unwrap();
        let seg = cache.segments().unwrap().remove(0);
        let text = fs::read_to_string(&seg).unwrap();
        let tampered = text.replace("\"N\":0", "\"N\":7");
        assert_ne!(tampered, text);
        fs::write(&seg, format!("{tampered}not json\n")).unwrap();
        assert_eq!(cache.get(&code, 4, &budget).unwrap(), None);
        assert_eq!(cache.stats(&budget).unwrap().corrupt, 2);
        assert_eq!(cache.clear().unwrap(), 1);
        assert_eq!(cache.stats(&budget).unwrap().segments, 0);
    }
}
