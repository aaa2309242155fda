//! Exhaustive search for optimal and k-optimal rubbling numbers.
//!
//! Sizes are scanned upward from `k`. At each size only the canonical
//! representative of each symmetry orbit is tested (the lexicographically
//! smallest count vector in its orbit), so a returned value always comes
//! with a complete negative certificate at every smaller size.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::engine::Engine;
use crate::error::{invalid, Result, RubbleError};
use crate::graph::{family_symmetries, Family, Graph, SymmetryGroup};
use crate::moves::Distribution;
use crate::par::{filter_map, find_map_first, ExecMode};
use crate::ENGINE_VERSION;

/// All ways to write `total` as an ordered sum of `parts` nonnegative
/// integers, in lexicographic order.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    Compositions::new(total, parts).collect()
}

/// Lazy lexicographic enumeration of compositions.
#[derive(Debug, Clone)]
pub struct Compositions {
    next: Option<Vec<u32>>,
}

impl Compositions {
    pub fn new(total: u32, parts: usize) -> Self {
        let next = match parts {
            0 if total > 0 => None,
            0 => Some(Vec::new()),
            _ => {
                let mut first = vec![0; parts];
                first[parts - 1] = total;
                Some(first)
            }
        };
        Compositions { next }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        let n = current.len();
        let mut tail = 0;
        let mut following = None;
        for i in (0..n.saturating_sub(1)).rev() {
            tail += current[i + 1];
            if tail > 0 {
                let mut c = current.clone();
                c[i] += 1;
                c[i + 1..].iter_mut().for_each(|x| *x = 0);
                c[n - 1] = tail - 1;
                following = Some(c);
                break;
            }
        }
        self.next = following;
        Some(current)
    }
}

/// The lexicographically smallest image of `counts` under `sym`.
pub fn canonical_form(counts: &[u32], sym: &SymmetryGroup) -> Vec<u32> {
    sym.elements().iter().map(|s| s.permute_counts(counts)).min().unwrap_or_else(|| counts.to_vec())
}

pub fn is_canonical(counts: &[u32], sym: &SymmetryGroup) -> bool {
    sym.elements().iter().all(|s| s.permute_counts(counts).as_slice() >= counts)
}

/// One representative per orbit of size-`m` distributions, in lexicographic
/// order. With the trivial group this is every composition of `m`.
pub fn enumerate_distributions<'a>(
    g: &Graph,
    m: u32,
    sym: &'a SymmetryGroup,
) -> impl Iterator<Item = Distribution> + 'a {
    Compositions::new(m, g.vertex_count()).filter(move |c| is_canonical(c, sym)).map(Distribution::new)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub value: u32,
    pub witness: Distribution,
    /// Canonical distributions tested: all of them below `value`, and those
    /// up to and including the witness at `value`.
    pub tested_count: u64,
    #[serde(with = "millis")]
    pub elapsed: Duration,
}

mod millis {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_millis() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_millis(u64::deserialize(d)?))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchConfig {
    pub mode: ExecMode,
    /// Wall-clock budget for the whole search.
    pub deadline: Option<Duration>,
    /// Test only smooth distributions. `None` enables it exactly on cycles,
    /// where smoothing never destroys k-reachability.
    pub smoothing_skip: Option<bool>,
}

fn uses_smoothing(g: &Graph, config: &SearchConfig) -> bool {
    config.smoothing_skip.unwrap_or(matches!(g.family(), Family::Cycle(_)))
}

fn is_smooth(g: &Graph, p: &Distribution) -> bool {
    (0..g.vertex_count()).all(|v| g.degree(v) != 2 || p.get(v) < 3)
}

struct Level {
    candidates: Vec<Distribution>,
}

fn level(g: &Graph, m: u32, sym: &SymmetryGroup, smoothing: bool) -> Level {
    let candidates = enumerate_distributions(g, m, sym).filter(|p| !smoothing || is_smooth(g, p)).collect();
    Level { candidates }
}

fn check_deadline(start: Instant, config: &SearchConfig, m: u32) -> Result<()> {
    match config.deadline {
        Some(limit) if start.elapsed() > limit => Err(RubbleError::BudgetExceeded(format!(
            "search exceeded {:.1}s before finishing size {m}",
            limit.as_secs_f64()
        ))),
        _ => Ok(()),
    }
}

pub fn k_optimal_rubbling_number(g: &Graph, k: u32) -> Result<SearchResult> {
    k_optimal_with(g, k, &SearchConfig::default())
}

pub fn optimal_rubbling_number(g: &Graph) -> Result<SearchResult> {
    k_optimal_with(g, 1, &SearchConfig::default())
}

/// The least size of a `k`-solvable distribution, with the first canonical
/// witness in lexicographic order.
pub fn k_optimal_with(g: &Graph, k: u32, config: &SearchConfig) -> Result<SearchResult> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    let start = Instant::now();
    let sym = family_symmetries(g);
    let smoothing = uses_smoothing(g, config);
    let engine = Engine::new(g);
    let mut tested = 0u64;
    let bound = k as u64 * g.vertex_count() as u64;
    for m in k..=bound as u32 {
        check_deadline(start, config, m)?;
        let lvl = level(g, m, &sym, smoothing);
        let indexed: Vec<(usize, &Distribution)> = lvl.candidates.iter().enumerate().collect();
        let found = find_map_first(config.mode, &indexed, |&(i, p)| {
            engine.is_k_solvable(p, k).ok().filter(|&ok| ok).map(|_| i)
        });
        match found {
            Some(i) => {
                tested += i as u64 + 1;
                return Ok(SearchResult {
                    value: m,
                    witness: lvl.candidates[i].clone(),
                    tested_count: tested,
                    elapsed: start.elapsed(),
                });
            }
            None => tested += lvl.candidates.len() as u64,
        }
    }
    unreachable!("k pebbles on every vertex is k-solvable")
}

/// Every canonical solvable distribution of optimal size.
pub fn all_optimal_witnesses(g: &Graph) -> Result<Vec<Distribution>> {
    all_k_optimal_witnesses(g, 1, &SearchConfig::default())
}

pub fn all_k_optimal_witnesses(g: &Graph, k: u32, config: &SearchConfig) -> Result<Vec<Distribution>> {
    let value = k_optimal_with(g, k, config)?.value;
    let sym = family_symmetries(g);
    let engine = Engine::new(g);
    // Smoothing pruning keeps the value but not the full witness list.
    let all = level(g, value, &sym, false);
    Ok(filter_map(config.mode, &all.candidates, |p| {
        engine.is_k_solvable(p, k).ok().filter(|&ok| ok).map(|_| p.clone())
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub k: u32,
    pub value: u32,
    pub witness: Distribution,
    pub tested_count: u64,
    pub elapsed_ms: u64,
    pub engine_version: String,
}

/// Search results keyed by graph descriptor, persisted as JSON. Entries
/// written by another engine version are dropped on load.
#[derive(Debug, Clone, Default)]
pub struct ResultsCache {
    path: Option<PathBuf>,
    entries: BTreeMap<String, Vec<CacheEntry>>,
}

impl ResultsCache {
    pub fn in_memory() -> Self {
        ResultsCache::default()
    }

    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries: BTreeMap<String, Vec<CacheEntry>> = match std::fs::read_to_string(&path) {
            Ok(text) if text.trim().is_empty() => BTreeMap::new(),
            Ok(text) => {
                serde_json::from_str(&text).map_err(|e| RubbleError::Parse(format!("cache {}: {e}", path.display())))?
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(RubbleError::Parse(format!("cache {}: {e}", path.display()))),
        };
        for list in entries.values_mut() {
            list.retain(|e| e.engine_version == ENGINE_VERSION);
        }
        entries.retain(|_, list| !list.is_empty());
        Ok(ResultsCache { path: Some(path), entries })
    }

    pub fn get(&self, g: &Graph, k: u32) -> Option<SearchResult> {
        let e = self.entries.get(&g.descriptor())?.iter().find(|e| e.k == k)?;
        Some(SearchResult {
            value: e.value,
            witness: e.witness.clone(),
            tested_count: e.tested_count,
            elapsed: Duration::from_millis(e.elapsed_ms),
        })
    }

    pub fn insert(&mut self, g: &Graph, k: u32, r: &SearchResult) {
        let list = self.entries.entry(g.descriptor()).or_default();
        list.retain(|e| e.k != k);
        list.push(CacheEntry {
            k,
            value: r.value,
            witness: r.witness.clone(),
            tested_count: r.tested_count,
            elapsed_ms: r.elapsed.as_millis() as u64,
            engine_version: ENGINE_VERSION.to_string(),
        });
        list.sort_by_key(|e| e.k);
    }

    pub fn len(&self) -> usize {
        self.entries.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Writes the cache back to its file, if it has one.
    pub fn save(&self) -> Result<()> {
        let Some(path) = &self.path else { return Ok(()) };
        let text = serde_json::to_string_pretty(&self.entries).expect("cache serializes");
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, text + "\n")
            .and_then(|_| std::fs::rename(&tmp, path))
            .map_err(|e| RubbleError::Parse(format!("writing cache {}: {e}", path.display())))
    }

    /// Cached result or a fresh search, recorded on miss.
    pub fn k_optimal(&mut self, g: &Graph, k: u32, config: &SearchConfig) -> Result<SearchResult> {
        if let Some(hit) = self.get(g, k) {
            return Ok(hit);
        }
        let r = k_optimal_with(g, k, config)?;
        self.insert(g, k, &r);
        Ok(r)
    }
}
