//! Small-matroid database files: revlex basis strings, one matroid per line.
//!
//! Position k of a line refers to the k-th d-subset in revlex order, which
//! is colex order of the subsets; '*' marks a basis and '0' a nonbasis.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::Config;
use crate::error::{CoreError, Result};
use crate::matroid::Matroid;
use crate::planner::k_flats_property;
use crate::smoothness::{classify, Verdict};
use crate::subset;

pub fn parse_revlex(line: &str, d: usize, n: usize) -> Result<Matroid> {
    let line = line.trim();
    let expected = subset::binomial(n, d);
    if line.len() as u64 != expected {
        return Err(CoreError::Input(format!("expected {expected} characters for ({d},{n}), got {}", line.len())));
    }
    let mut bases = Vec::new();
    for (s, c) in subset::k_subsets(n, d).zip(line.chars()) {
        match c {
            '*' => bases.push(s),
            '0' => {}
            other => return Err(CoreError::Input(format!("unexpected character {other:?}"))),
        }
    }
    Matroid::from_bases(d, n, bases)
}

pub fn encode_revlex(m: &Matroid) -> String {
    subset::k_subsets(m.ground_size(), m.rank_d()).map(|s| if m.is_basis(s) { '*' } else { '0' }).collect()
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub d: usize,
    pub n: usize,
    pub raw: String,
    pub matroid: Matroid,
    /// 1-based line number in the source.
    pub line: usize,
}

/// Header of the form `d n count`.
fn parse_header(line: &str) -> Option<(usize, usize, usize)> {
    let parts: Vec<usize> = line.split_whitespace().map(|t| t.parse().ok()).collect::<Option<_>>()?;
    match parts[..] {
        [d, n, count] => Some((d, n, count)),
        _ => None,
    }
}

/// Reads a catalog for rank d on [n]. Blank lines are skipped; a leading
/// `d n count` header must agree with the shape and the entry count.
pub fn read_catalog<R: BufRead>(reader: R, d: usize, n: usize) -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if entries.is_empty() && header.is_none() {
            if let Some((hd, hn, count)) = parse_header(text) {
                if (hd, hn) != (d, n) {
                    return Err(CoreError::Catalog { line: i + 1, msg: format!("header is for ({hd},{hn}), expected ({d},{n})") });
                }
                header = Some((i + 1, count));
                continue;
            }
        }
        let matroid = parse_revlex(text, d, n).map_err(|e| CoreError::Catalog { line: i + 1, msg: e.to_string() })?;
        entries.push(CatalogEntry { d, n, raw: text.to_string(), matroid, line: i + 1 });
    }
    if let Some((line, count)) = header {
        if count != entries.len() {
            return Err(CoreError::Catalog { line, msg: format!("header announces {count} entries, found {}", entries.len()) });
        }
    }
    Ok(entries)
}

pub fn read_catalog_file(path: &Path, d: usize, n: usize) -> Result<Vec<CatalogEntry>> {
    read_catalog(BufReader::new(File::open(path)?), d, n)
}

/// Looks for the (d,n) file in `$STRATA_CATALOG_DIR` under the usual names.
pub fn locate_catalog(d: usize, n: usize) -> Option<PathBuf> {
    let dir = PathBuf::from(std::env::var_os("STRATA_CATALOG_DIR")?);
    [format!("allr{d}n{n:02}.txt"), format!("allr{d}n{n}.txt"), format!("r{d}n{n}.txt")]
        .into_iter()
        .map(|name| dir.join(name))
        .find(|p| p.is_file())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Predicate {
    Simple,
    Connected,
    /// Every element on at least 3 lines (rank 3).
    ThreeLines,
    /// Every element on at least 4 planes (rank 4).
    FourPlanes,
    Realizable,
}

impl Predicate {
    pub fn name(self) -> &'static str {
        match self {
            Predicate::Simple => "simple",
            Predicate::Connected => "connected",
            Predicate::ThreeLines => "three_lines",
            Predicate::FourPlanes => "four_planes",
            Predicate::Realizable => "realizable",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        [Predicate::Simple, Predicate::Connected, Predicate::ThreeLines, Predicate::FourPlanes, Predicate::Realizable]
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| CoreError::Input(format!("unknown predicate {s}")))
    }
}

/// Per-entry classification results, persisted keyed by a content hash.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CachedVerdict {
    pub key: String,
    pub realizable: Verdict,
    pub smooth: Verdict,
    pub components: Option<usize>,
}

pub fn cache_key(d: usize, n: usize, raw: &str) -> String {
    let digest = Sha256::digest(format!("{d} {n} {raw}").as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// JSON-lines sidecar of decided verdicts. Undecided ones are not stored,
/// so a rerun with larger caps retries them.
pub struct VerdictCache {
    path: Option<PathBuf>,
    known: HashMap<String, CachedVerdict>,
    writer: Option<Mutex<BufWriter<File>>>,
}

impl VerdictCache {
    pub fn disabled() -> Self {
        VerdictCache { path: None, known: HashMap::new(), writer: None }
    }

    pub fn open(path: &Path) -> Result<Self> {
        let mut known = HashMap::new();
        if path.is_file() {
            for (i, line) in BufReader::new(File::open(path)?).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let v: CachedVerdict =
                    serde_json::from_str(&line).map_err(|e| CoreError::Catalog { line: i + 1, msg: format!("cache: {e}") })?;
                known.insert(v.key.clone(), v);
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(VerdictCache { path: Some(path.to_path_buf()), known, writer: Some(Mutex::new(BufWriter::new(file))) })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn get(&self, key: &str) -> Option<&CachedVerdict> {
        self.known.get(key)
    }

    fn record(&self, v: &CachedVerdict) -> Result<()> {
        if let Some(w) = &self.writer {
            let mut w = w.lock().expect("cache writer poisoned");
            serde_json::to_writer(&mut *w, v)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn flush(&self) -> Result<()> {
        if let Some(w) = &self.writer {
            w.lock().expect("cache writer poisoned").flush()?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageCount {
    pub predicate: Predicate,
    pub passed: usize,
    /// Entries whose predicate could not be decided within the caps.
    pub undecided: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FilterReport {
    pub total: usize,
    pub stages: Vec<StageCount>,
    /// Source line numbers of the entries passing every stage.
    pub survivors: Vec<usize>,
    pub cache_hits: usize,
}

fn structural(p: Predicate, m: &Matroid) -> Result<bool> {
    match p {
        Predicate::Simple => Ok(m.is_simple()),
        Predicate::Connected => Ok(m.is_connected()),
        Predicate::ThreeLines => Ok(m.rank_d() == 3 && k_flats_property(m, 3)?),
        Predicate::FourPlanes => Ok(m.rank_d() == 4 && k_flats_property(m, 4)?),
        Predicate::Realizable => unreachable!("realizability is evaluated separately"),
    }
}

fn classify_cached(e: &CatalogEntry, cfg: &Config, cache: &VerdictCache) -> Result<(CachedVerdict, bool)> {
    let key = cache_key(e.d, e.n, &e.raw);
    if let Some(v) = cache.get(&key) {
        return Ok((v.clone(), true));
    }
    let r = classify(&e.matroid, cfg)?;
    let v = CachedVerdict { key, realizable: r.realizable, smooth: r.smooth, components: r.component_count };
    if r.realizable != Verdict::Undecided {
        cache.record(&v)?;
    }
    Ok((v, false))
}

/// Applies the predicates in order, each to the survivors of the previous
/// one, evaluating entries in parallel. Counts do not depend on the order
/// of the entries or on the number of workers.
pub fn filter(entries: &[CatalogEntry], predicates: &[Predicate], cfg: &Config, cache: &VerdictCache) -> Result<FilterReport> {
    let mut alive: Vec<&CatalogEntry> = entries.iter().collect();
    let mut stages = Vec::with_capacity(predicates.len());
    let mut cache_hits = 0;
    for &p in predicates {
        let outcomes: Vec<(Verdict, bool)> = alive
            .par_iter()
            .map(|e| -> Result<(Verdict, bool)> {
                if p == Predicate::Realizable {
                    let (v, hit) = classify_cached(e, cfg, cache)?;
                    Ok((v.realizable, hit))
                } else {
                    Ok((if structural(p, &e.matroid)? { Verdict::Yes } else { Verdict::No }, false))
                }
            })
            .collect::<Result<_>>()?;
        cache_hits += outcomes.iter().filter(|(_, hit)| *hit).count();
        let undecided = outcomes.iter().filter(|(v, _)| *v == Verdict::Undecided).count();
        alive = alive.into_iter().zip(&outcomes).filter(|(_, (v, _))| *v == Verdict::Yes).map(|(e, _)| e).collect();
        stages.push(StageCount { predicate: p, passed: alive.len(), undecided });
    }
    cache.flush()?;
    Ok(FilterReport { total: entries.len(), stages, survivors: alive.iter().map(|e| e.line).collect(), cache_hits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn uniform_and_one_nonbasis() {
        let all = "*".repeat(10);
        assert_eq!(parse_revlex(&all, 3, 5).unwrap(), Matroid::uniform(3, 5));
        // colex position 0 is {1,2}
        let m = parse_revlex("0*****", 2, 4).unwrap();
        assert!(!m.is_basis(0b0011));
        assert_eq!(m.bases().len(), 5);
        assert!(parse_revlex("*****", 2, 4).is_err());
        assert!(parse_revlex("**x***", 2, 4).is_err());
        // only 12 and 34: exchange fails
        assert!(parse_revlex("*0000*", 2, 4).is_err());
    }

    #[test]
    fn round_trip() {
        let q = fixtures::q_sing();
        let line = encode_revlex(&q);
        assert_eq!(line.len(), 220);
        assert_eq!(line.chars().filter(|&c| c == '*').count(), q.bases().len());
        assert_eq!(encode_revlex(&parse_revlex(&line, 3, 12).unwrap()), line);
    }

    #[test]
    fn read_with_header() {
        let text = format!("2 4 2\n{}\n\n0*****\n", "*".repeat(6));
        let entries = read_catalog(text.as_bytes(), 2, 4).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[1].line, 4);
        assert!(read_catalog("2 4 3\n******\n".as_bytes(), 2, 4).is_err());
        assert!(read_catalog("3 4 1\n******\n".as_bytes(), 2, 4).is_err());
        assert!(read_catalog("".as_bytes(), 2, 4).unwrap().is_empty());
        let err = read_catalog("******\n**\n".as_bytes(), 2, 4).unwrap_err();
        assert!(matches!(err, CoreError::Catalog { line: 2, .. }));
    }

    #[test]
    fn filter_counts() {
        let lines = [
            encode_revlex(&fixtures::gaussian_nine()),
            encode_revlex(&Matroid::uniform(3, 9)),
            encode_revlex(&fixtures::reducible_rank3()[0].0),
            encode_revlex(&Matroid::uniform(2, 3).direct_sum(&Matroid::uniform(1, 6)).unwrap()),
        ];
        let entries = read_catalog(lines.join("\n").as_bytes(), 3, 9).unwrap();
        let preds = [Predicate::Simple, Predicate::Connected, Predicate::ThreeLines, Predicate::Realizable];
        let r = filter(&entries, &preds, &Config::default(), &VerdictCache::disabled()).unwrap();
        let passed: Vec<usize> = r.stages.iter().map(|s| s.passed).collect();
        assert_eq!(r.total, 4);
        assert_eq!(passed[..2], [3, 3]);
        assert!(passed[3] <= passed[2]);
        let mut reversed = entries.clone();
        reversed.reverse();
        let r2 = filter(&reversed, &preds, &Config::default(), &VerdictCache::disabled()).unwrap();
        assert_eq!(r.stages, r2.stages);
        let empty = filter(&[], &preds, &Config::default(), &VerdictCache::disabled()).unwrap();
        assert!(empty.stages.iter().all(|s| s.passed == 0));
    }

    #[test]
    fn cache_persists_verdicts() {
        let dir = std::env::temp_dir().join(format!("strata-cache-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("verdicts.jsonl");
        let _ = std::fs::remove_file(&path);
        let entries = read_catalog(encode_revlex(&fixtures::gaussian_nine()).as_bytes(), 3, 9).unwrap();
        let run = || {
            let cache = VerdictCache::open(&path).unwrap();
            filter(&entries, &[Predicate::Realizable], &Config::default(), &cache).unwrap()
        };
        let first = run();
        assert_eq!(first.cache_hits, 0);
        let second = run();
        assert_eq!(second.cache_hits, 1);
        assert_eq!(first.stages, second.stages);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
