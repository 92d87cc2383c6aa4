//! Norm tables: the multiset of primitive norms up to a cutoff, aggregated by
//! trace, with a CSV file format guarded by a SHA-256 content hash.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::enumerate::{enumerate_primitive_classes, Enumeration, EnumerationLimits};
use super::moebius::{log_norm_from_trace, norm_from_trace};
use crate::error::{Error, Result};

pub const HEADER: &str = "trace,norm,log_norm,count";

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    /// Absolute trace; `None` for synthetic tables given by norms alone.
    pub trace: Option<u64>,
    pub norm: f64,
    pub log_norm: f64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicTable {
    pub group: String,
    pub max_norm: f64,
    pub entries: Vec<TableEntry>,
}

fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

impl GeodesicTable {
    pub fn empty(max_norm: f64) -> Self {
        GeodesicTable {
            group: "gamma2".into(),
            max_norm,
            entries: Vec::new(),
        }
    }

    /// A table given directly by (norm, count) pairs.
    pub fn from_norms(group: &str, max_norm: f64, norms: &[(f64, u64)]) -> Result<Self> {
        let mut entries: Vec<TableEntry> = norms
            .iter()
            .map(|&(n, c)| TableEntry {
                trace: None,
                norm: n,
                log_norm: n.ln(),
                count: c,
            })
            .collect();
        entries.sort_by(|a, b| a.norm.total_cmp(&b.norm));
        let t = GeodesicTable {
            group: group.into(),
            max_norm,
            entries,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn from_enumeration(e: &Enumeration) -> Self {
        let mut by_trace: BTreeMap<u64, u64> = BTreeMap::new();
        for c in &e.classes {
            *by_trace.entry(c.trace.unsigned_abs()).or_default() += 1;
        }
        let entries = by_trace
            .into_iter()
            .map(|(t, count)| TableEntry {
                trace: Some(t),
                norm: norm_from_trace(t),
                log_norm: log_norm_from_trace(t),
                count,
            })
            .collect();
        GeodesicTable {
            group: "gamma2".into(),
            max_norm: e.max_norm,
            entries,
        }
    }

    /// Enumerates and aggregates in one step.
    pub fn build(max_norm: f64, limits: &EnumerationLimits) -> Result<Self> {
        Ok(Self::from_enumeration(&enumerate_primitive_classes(
            max_norm, limits,
        )?))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.max_norm > 1.0) {
            return Err(Error::Malformed(format!(
                "cutoff {} must exceed 1",
                self.max_norm
            )));
        }
        for e in &self.entries {
            if !(e.norm > 1.0 && e.norm <= self.max_norm) {
                return Err(Error::Malformed(format!(
                    "norm {} outside (1, {}]",
                    e.norm, self.max_norm
                )));
            }
            if e.count == 0 {
                return Err(Error::Malformed(format!("zero count at norm {}", e.norm)));
            }
        }
        if self.entries.windows(2).any(|w| !(w[0].norm < w[1].norm)) {
            return Err(Error::Malformed("norms must be strictly increasing".into()));
        }
        Ok(())
    }

    /// Number of primitive classes.
    pub fn class_count(&self) -> u64 {
        self.entries.iter().map(|e| e.count).sum()
    }

    /// N(P_00), the smallest norm.
    pub fn min_norm(&self) -> Option<f64> {
        self.entries.first().map(|e| e.norm)
    }

    /// alpha = N(P_00)^{1/2}.
    pub fn alpha(&self) -> Option<f64> {
        self.min_norm().map(f64::sqrt)
    }

    /// Entries with norm <= x, as a table with cutoff x.
    pub fn restrict(&self, x: f64) -> Result<Self> {
        if x > self.max_norm {
            return Err(Error::CutoffMismatch {
                table: self.max_norm,
                requested: x,
            });
        }
        Ok(GeodesicTable {
            group: self.group.clone(),
            max_norm: x,
            entries: self
                .entries
                .iter()
                .copied()
                .filter(|e| e.norm <= x)
                .collect(),
        })
    }

    fn body(&self) -> String {
        let mut s = String::new();
        s.push_str(HEADER);
        s.push('\n');
        for e in &self.entries {
            let tr = e.trace.map(|t| t.to_string()).unwrap_or_default();
            let _ = writeln!(
                s,
                "{},{},{},{}",
                tr,
                fmt17(e.norm),
                fmt17(e.log_norm),
                e.count
            );
        }
        s
    }

    fn digest(group: &str, max_norm: &str, words: &str, body: &str) -> String {
        let mut h = Sha256::new();
        h.update(format!(
            "group={group}\nmax_norm={max_norm}\nwords={words}\n"
        ));
        h.update(body.as_bytes());
        hex::encode(h.finalize())
    }

    /// Content hash of the table as it would be written.
    pub fn content_hash(&self) -> String {
        Self::digest(
            &self.group,
            &self.max_norm.to_string(),
            &self.class_count().to_string(),
            &self.body(),
        )
    }

    pub fn to_csv(&self) -> String {
        let body = self.body();
        let words = self.class_count().to_string();
        let x = self.max_norm.to_string();
        let hash = Self::digest(&self.group, &x, &words, &body);
        format!(
            "# group={}\n# max_norm={x}\n# words={words}\n# hash={hash}\n{body}",
            self.group
        )
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut meta: BTreeMap<&str, &str> = BTreeMap::new();
        let mut lines = text.split('\n').peekable();
        while let Some(l) = lines.peek() {
            if let Some(rest) = l.strip_prefix('#') {
                let (k, v) = rest
                    .trim()
                    .split_once('=')
                    .ok_or_else(|| Error::Malformed(format!("bad comment line {l:?}")))?;
                meta.insert(k.trim(), v.trim());
                lines.next();
            } else {
                break;
            }
        }
        let get = |k: &str| {
            meta.get(k)
                .copied()
                .ok_or_else(|| Error::Malformed(format!("missing `# {k}=` line")))
        };
        let group = get("group")?;
        let x_text = get("max_norm")?;
        let words_text = get("words")?;
        let hash = get("hash")?;
        let max_norm: f64 = x_text
            .parse()
            .map_err(|_| Error::Malformed(format!("bad max_norm {x_text:?}")))?;
        let words: u64 = words_text
            .parse()
            .map_err(|_| Error::Malformed(format!("bad words {words_text:?}")))?;
        let rest: Vec<&str> = lines.collect();
        if rest.first() != Some(&HEADER) {
            return Err(Error::Malformed("missing CSV header".into()));
        }
        if rest.last() != Some(&"") {
            return Err(Error::Malformed("file does not end with a newline".into()));
        }
        let body_lines = &rest[..rest.len() - 1];
        let body = body_lines.iter().fold(String::new(), |mut acc, l| {
            acc.push_str(l);
            acc.push('\n');
            acc
        });
        let found = Self::digest(group, x_text, words_text, &body);
        let mut entries = Vec::with_capacity(body_lines.len());
        for (i, l) in body_lines.iter().enumerate().skip(1) {
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != 4 {
                return Err(Error::Malformed(format!(
                    "line {}: expected 4 fields",
                    i + 5
                )));
            }
            let bad = |what: &str| Error::Malformed(format!("line {}: bad {what}", i + 5));
            let trace = if f[0].is_empty() {
                None
            } else {
                Some(f[0].parse::<u64>().map_err(|_| bad("trace"))?)
            };
            entries.push(TableEntry {
                trace,
                norm: f[1].parse().map_err(|_| bad("norm"))?,
                log_norm: f[2].parse().map_err(|_| bad("log_norm"))?,
                count: f[3].parse().map_err(|_| bad("count"))?,
            });
        }
        if found != hash {
            return Err(Error::Checksum {
                expected: hash.to_string(),
                found,
            });
        }
        let t = GeodesicTable {
            group: group.to_string(),
            max_norm,
            entries,
        };
        t.validate()?;
        if t.class_count() != words {
            return Err(Error::Malformed(format!(
                "words={words} but counts sum to {}",
                t.class_count()
            )));
        }
        Ok(t)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv()).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    /// Loads a table; with `requested` set, checks the file covers that cutoff
    /// and restricts to it.
    pub fn load(path: &Path, requested: Option<f64>) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        let t = Self::from_csv(&text)?;
        match requested {
            Some(x) if x != t.max_norm => t.restrict(x),
            _ => Ok(t),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> GeodesicTable {
        GeodesicTable::build(2000.0, &EnumerationLimits::default()).unwrap()
    }

    #[test]
    fn csv_round_trip() {
        let t = small();
        let back = GeodesicTable::from_csv(&t.to_csv()).unwrap();
        assert_eq!(t, back);
        assert!(t
            .to_csv()
            .starts_with("# group=gamma2\n# max_norm=2000\n# words="));
    }

    #[test]
    fn file_round_trip_and_cutoff() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        let t = small();
        t.save(&p).unwrap();
        assert_eq!(GeodesicTable::load(&p, None).unwrap(), t);
        let r = GeodesicTable::load(&p, Some(500.0)).unwrap();
        assert!(r.entries.iter().all(|e| e.norm <= 500.0));
        assert!(matches!(
            GeodesicTable::load(&p, Some(5000.0)),
            Err(Error::CutoffMismatch { .. })
        ));
    }

    #[test]
    fn corruption_detected() {
        let csv = small().to_csv();
        let truncated = &csv[..csv.len() / 2];
        assert!(matches!(
            GeodesicTable::from_csv(truncated),
            Err(Error::Malformed(_)) | Err(Error::Checksum { .. })
        ));
        let mut lines: Vec<String> = csv.split('\n').map(String::from).collect();
        lines[5].push('0');
        let tampered = lines.join("\n");
        assert!(matches!(
            GeodesicTable::from_csv(&tampered),
            Err(Error::Checksum { .. })
        ));
        assert!(matches!(
            GeodesicTable::from_csv("hello"),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn deterministic_hash() {
        assert_eq!(small().content_hash(), small().content_hash());
    }

    #[test]
    fn counts_even_by_inverse_pairing() {
        let t = small();
        assert_eq!(t.entries[0].trace, Some(6));
        assert!(t.entries.iter().all(|e| e.count % 2 == 0));
    }
}
