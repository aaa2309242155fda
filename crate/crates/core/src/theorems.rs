//! Closed forms for the ladder, prism, Möbius-ladder and 2-optimal cycle
//! values, a harness checking them against exhaustive search, and probes of
//! the lemma-level claims used for prisms and cycles.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::engine::Engine;
use crate::error::{invalid, Result, RubbleError};
use crate::graph::{cycle_graph, family_symmetries, ladder, mobius_ladder, prism, Graph, Vertex};
use crate::ladder::LadderLayout;
use crate::moves::Distribution;
use crate::par::{filter_map, ExecMode};
use crate::search::{enumerate_distributions, k_optimal_with, ResultsCache, SearchConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaFamily {
    Ladder,
    Prism,
    Mobius,
    #[serde(rename = "cycle_2opt")]
    Cycle2Opt,
}

impl std::str::FromStr for FormulaFamily {
    type Err = RubbleError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ladder" => Ok(FormulaFamily::Ladder),
            "prism" => Ok(FormulaFamily::Prism),
            "mobius" | "möbius" => Ok(FormulaFamily::Mobius),
            "cycle_2opt" | "cycle2opt" | "cycle" => Ok(FormulaFamily::Cycle2Opt),
            other => Err(RubbleError::Parse(format!("unknown family {other:?}"))),
        }
    }
}

impl std::fmt::Display for FormulaFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FormulaFamily::Ladder => "ladder",
            FormulaFamily::Prism => "prism",
            FormulaFamily::Mobius => "mobius",
            FormulaFamily::Cycle2Opt => "cycle_2opt",
        })
    }
}

impl FormulaFamily {
    fn min_n(self) -> usize {
        match self {
            FormulaFamily::Ladder => 1,
            _ => 3,
        }
    }

    /// The graph whose value the family's formula describes, and its `k`.
    pub fn instance(self, n: usize) -> Result<(Graph, u32)> {
        match self {
            FormulaFamily::Ladder => Ok((ladder(n)?, 1)),
            FormulaFamily::Prism => Ok((prism(n)?, 1)),
            FormulaFamily::Mobius => Ok((mobius_ladder(n)?, 1)),
            FormulaFamily::Cycle2Opt => Ok((cycle_graph(n)?, 2)),
        }
    }
}

/// `n = 3k + r` with `0 <= r < 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFormula {
    pub family: FormulaFamily,
    pub n: usize,
    pub k: usize,
    pub r: usize,
}

impl FamilyFormula {
    pub fn new(family: FormulaFamily, n: usize) -> Result<Self> {
        if n < family.min_n() {
            return Err(invalid(format!("{family} needs n >= {}, got {n}", family.min_n())));
        }
        Ok(FamilyFormula { family, n, k: n / 3, r: n % 3 })
    }

    /// The closed-form value, or `None` where only search gives it
    /// (Möbius ladders below six rungs).
    pub fn value(&self) -> Option<u32> {
        let (k, r) = (self.k as u32, self.r);
        match self.family {
            FormulaFamily::Ladder => Some(if r == 0 { 1 + 2 * k } else { 2 + 2 * k }),
            FormulaFamily::Prism => Some(prism_value(self.n)),
            FormulaFamily::Mobius if self.n >= 6 => Some(prism_value(self.n)),
            FormulaFamily::Mobius => None,
            FormulaFamily::Cycle2Opt => Some(self.n as u32),
        }
    }
}

fn prism_value(n: usize) -> u32 {
    match (n, n % 3) {
        (3, _) => 3,
        (_, 0) => 2 * (n / 3) as u32,
        (_, 1) => 2 * (n / 3) as u32 + 1,
        _ => 2 * n.div_ceil(3) as u32,
    }
}

pub fn rho_opt_ladder(n: usize) -> Result<u32> {
    Ok(FamilyFormula::new(FormulaFamily::Ladder, n)?.value().expect("closed form"))
}

pub fn rho_opt_prism(n: usize) -> Result<u32> {
    Ok(FamilyFormula::new(FormulaFamily::Prism, n)?.value().expect("closed form"))
}

/// Möbius-ladder value: the prism value from six rungs on, a search result below.
pub fn rho_opt_mobius(n: usize) -> Result<u32> {
    match FamilyFormula::new(FormulaFamily::Mobius, n)?.value() {
        Some(v) => Ok(v),
        None => Ok(k_optimal_with(&mobius_ladder(n)?, 1, &SearchConfig::default())?.value),
    }
}

pub fn rho_2opt_cycle(n: usize) -> Result<u32> {
    Ok(FamilyFormula::new(FormulaFamily::Cycle2Opt, n)?.value().expect("closed form"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Match,
    Mismatch,
    /// No closed form; the search value is reported as is.
    Derived,
    /// Search did not finish within the budget.
    Incomplete,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRow {
    pub n: usize,
    pub formula_value: Option<u32>,
    pub search_value: Option<u32>,
    #[serde(rename = "match")]
    pub matches: bool,
    pub status: RowStatus,
    pub witness: Option<Distribution>,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: FormulaFamily,
    pub rows: Vec<VerificationRow>,
    pub complete: bool,
}

impl VerificationReport {
    pub fn has_mismatch(&self) -> bool {
        self.rows.iter().any(|r| r.status == RowStatus::Mismatch)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!(
            "## {}\n\n| n | formula | search | match | witness | ms |\n|---|---|---|---|---|---|\n",
            self.family
        );
        let show = |v: Option<u32>| v.map_or("-".to_string(), |v| v.to_string());
        for r in &self.rows {
            let witness = r.witness.as_ref().map_or("-".to_string(), |w| format!("{:?}", w.counts()));
            let verdict = match r.status {
                RowStatus::Match => "yes",
                RowStatus::Mismatch => "NO",
                RowStatus::Derived => "derived",
                RowStatus::Incomplete => "incomplete",
            };
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} |",
                r.n,
                show(r.formula_value),
                show(r.search_value),
                verdict,
                witness,
                r.runtime_ms
            );
        }
        if !self.complete {
            out.push_str("\nBudget exhausted; incomplete rows were not searched to the end.\n");
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    pub mode: ExecMode,
    /// Total wall-clock budget across all rows.
    pub budget: Option<Duration>,
}

/// Searches every `n` in `range` and compares against the closed form.
/// A row only reports a match once search has ruled out every smaller size.
pub fn verify_family(
    family: FormulaFamily,
    range: RangeInclusive<usize>,
    options: VerifyOptions,
    mut cache: Option<&mut ResultsCache>,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut complete = true;
    for n in range {
        let formula = FamilyFormula::new(family, n)?.value();
        let (g, k) = family.instance(n)?;
        let row_start = Instant::now();
        let remaining = options.budget.map(|b| b.saturating_sub(start.elapsed()));
        let outcome = if remaining == Some(Duration::ZERO) {
            Err(RubbleError::BudgetExceeded("no time left".into()))
        } else {
            let config = SearchConfig { mode: options.mode, deadline: remaining, smoothing_skip: None };
            match cache.as_deref_mut() {
                Some(c) => c.k_optimal(&g, k, &config),
                None => k_optimal_with(&g, k, &config),
            }
        };
        let runtime_ms = row_start.elapsed().as_millis() as u64;
        let row = match outcome {
            Ok(found) => {
                let status = match formula {
                    None => RowStatus::Derived,
                    Some(f) if f == found.value => RowStatus::Match,
                    Some(_) => RowStatus::Mismatch,
                };
                VerificationRow {
                    n,
                    formula_value: formula,
                    search_value: Some(found.value),
                    matches: formula == Some(found.value),
                    status,
                    witness: Some(found.witness),
                    runtime_ms,
                }
            }
            Err(RubbleError::BudgetExceeded(_)) => {
                complete = false;
                VerificationRow {
                    n,
                    formula_value: formula,
                    search_value: None,
                    matches: false,
                    status: RowStatus::Incomplete,
                    witness: None,
                    runtime_ms,
                }
            }
            Err(e) => return Err(e),
        };
        rows.push(row);
    }
    Ok(VerificationReport { family, rows, complete })
}

fn check_prism(g: &Graph) -> Result<usize> {
    match g.family() {
        crate::graph::Family::Prism(n) => Ok(*n),
        other => Err(RubbleError::InvalidLayout(format!("expected a prism, got {other:?}"))),
    }
}

/// Whether rung `rung` of a prism can collect two pebbles.
pub fn rung_is_2_reachable(g: &Graph, p: &Distribution, rung: usize) -> Result<bool> {
    check_prism(g)?;
    Engine::new(g).is_set_k_reachable(p, &[2 * rung, 2 * rung + 1], 2)
}

/// A rung of the prism that cannot collect two pebbles. For distributions of
/// optimal size such a rung must exist and its absence is reported as a
/// lemma violation; for larger distributions `None` is a legitimate answer.
pub fn not_2_reachable_rung_exists(g: &Graph, p: &Distribution) -> Result<Option<usize>> {
    let n = check_prism(g)?;
    if n < 5 {
        return Err(invalid(format!("needs a prism with at least 5 rungs, got {n}")));
    }
    p.check_against(g)?;
    for rung in 0..n {
        if !rung_is_2_reachable(g, p, rung)? {
            return Ok(Some(rung));
        }
    }
    if p.size() == rho_opt_prism(n)? as u64 {
        return Err(RubbleError::LemmaViolation(format!(
            "every rung is 2-reachable from {:?} of optimal size {}",
            p.counts(),
            p.size()
        )));
    }
    Ok(None)
}

/// Smooth distributions of size `n - 1` on `C_n` that are 2-solvable, one
/// per symmetry orbit. Expected to be empty.
pub fn friendship_counterexamples(n: usize, mode: ExecMode) -> Result<Vec<Distribution>> {
    let g = cycle_graph(n)?;
    let sym = family_symmetries(&g);
    let smooth: Vec<Distribution> =
        enumerate_distributions(&g, n as u32 - 1, &sym).filter(|p| p.counts().iter().all(|&c| c < 3)).collect();
    let engine = Engine::new(&g);
    Ok(filter_map(mode, &smooth, |p| engine.is_k_solvable(p, 2).ok().filter(|&ok| ok).map(|_| p.clone())))
}

/// The four conditions checked on the neighbors `L` (left) and `R` (right)
/// of a rung `C`, with reachability measured in the prism minus `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RungConditions {
    pub c_empty: bool,
    pub upper_l_unreachable: bool,
    pub lower_l_exactly_one: bool,
    pub r_two_reachable: bool,
}

impl RungConditions {
    pub fn all(&self) -> bool {
        self.c_empty && self.upper_l_unreachable && self.lower_l_exactly_one && self.r_two_reachable
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RungProbe {
    pub witness: Distribution,
    pub rung: usize,
    /// Conditions for `p`, the reflection across `C`, the top-bottom swap,
    /// and both, in that order.
    pub reflections: [RungConditions; 4],
}

impl RungProbe {
    pub fn any_fails(&self) -> bool {
        self.reflections.iter().any(|c| !c.all())
    }

    pub fn none_satisfies(&self) -> bool {
        self.reflections.iter().all(|c| !c.all())
    }
}

/// `p` seen on the ladder left after deleting rung `c`: ladder rung `j` is
/// prism rung `c + 1 + j`.
fn open_at(n: usize, p: &Distribution, c: usize) -> Distribution {
    let mut counts = Vec::with_capacity(2 * (n - 1));
    for j in 0..n - 1 {
        let rung = (c + 1 + j) % n;
        counts.push(p.get(2 * rung));
        counts.push(p.get(2 * rung + 1));
    }
    Distribution::new(counts)
}

fn reflect(n: usize, p: &Distribution, c: usize, across: bool, swap: bool) -> Distribution {
    let mut counts = vec![0; 2 * n];
    for rung in 0..n {
        let image = if across { (2 * c + n - rung) % n } else { rung };
        for level in 0..2 {
            let to_level = if swap { 1 - level } else { level };
            counts[2 * image + to_level] = p.get(2 * rung + level);
        }
    }
    Distribution::new(counts)
}

fn conditions(n: usize, p: &Distribution, c: usize) -> Result<RungConditions> {
    let opened = open_at(n, p, c);
    let layout = LadderLayout::with_rungs(n - 1)?;
    let g = layout.graph();
    let engine = Engine::new(&g);
    let reach = |v: Vertex| engine.max_pebbles_to(&opened, v).map(|r| r.max_pebbles);
    // `R` is ladder rung 0 and `L` the last one, so one-sided reach is plain reach.
    let l_rung = n - 2;
    Ok(RungConditions {
        c_empty: p.get(2 * c) + p.get(2 * c + 1) == 0,
        upper_l_unreachable: reach(layout.upper(l_rung))? == 0,
        lower_l_exactly_one: reach(layout.lower(l_rung))? == 1,
        r_two_reachable: reach(layout.upper(0))? >= 2 || reach(layout.lower(0))? >= 2,
    })
}

/// For each given prism distribution and each rung that is not 2-reachable,
/// the four conditions under all four reflections.
pub fn rung_condition_probe(g: &Graph, witnesses: &[Distribution]) -> Result<Vec<RungProbe>> {
    let n = check_prism(g)?;
    if n < 5 {
        return Err(invalid(format!("needs a prism with at least 5 rungs, got {n}")));
    }
    let mut out = Vec::new();
    for p in witnesses {
        p.check_against(g)?;
        for c in 0..n {
            if rung_is_2_reachable(g, p, c)? {
                continue;
            }
            let mut reflections = [RungConditions {
                c_empty: false,
                upper_l_unreachable: false,
                lower_l_exactly_one: false,
                r_two_reachable: false,
            }; 4];
            for (i, (across, swap)) in
                [(false, false), (true, false), (false, true), (true, true)].into_iter().enumerate()
            {
                reflections[i] = conditions(n, &reflect(n, p, c, across, swap), c)?;
            }
            out.push(RungProbe { witness: p.clone(), rung: c, reflections });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas() {
        let ladder: Vec<u32> = (1..=7).map(|n| rho_opt_ladder(n).unwrap()).collect();
        assert_eq!(ladder, vec![2, 2, 3, 4, 4, 5, 6]);
        let prism: Vec<u32> = (3..=8).map(|n| rho_opt_prism(n).unwrap()).collect();
        assert_eq!(prism, vec![3, 3, 4, 4, 5, 6]);
        assert_eq!(rho_opt_mobius(6).unwrap(), 4);
        assert_eq!(rho_opt_mobius(7).unwrap(), 5);
        assert_eq!([3, 5, 8].map(|n| rho_2opt_cycle(n).unwrap()), [3, 5, 8]);
        assert!(rho_opt_ladder(0).is_err());
        assert!(rho_opt_prism(2).is_err());
        assert!(rho_opt_mobius(2).is_err());
        assert!(rho_2opt_cycle(2).is_err());
        let f = FamilyFormula::new(FormulaFamily::Ladder, 7).unwrap();
        assert_eq!((f.k, f.r), (2, 1));
    }

    #[test]
    fn prism_formula_by_residue() {
        for k in 2..6 {
            assert_eq!(rho_opt_prism(3 * k - 1).unwrap(), 2 * k as u32);
            assert_eq!(rho_opt_prism(3 * k).unwrap(), 2 * k as u32);
            assert_eq!(rho_opt_prism(3 * k + 1).unwrap(), 2 * k as u32 + 1);
        }
    }

    #[test]
    fn small_verification_and_budget() {
        let report = verify_family(FormulaFamily::Ladder, 1..=4, VerifyOptions::default(), None).unwrap();
        assert!(report.complete && !report.has_mismatch());
        assert!(report.rows.iter().all(|r| r.status == RowStatus::Match));
        assert!(report.to_markdown().contains("| 4 | 4 | 4 | yes |"));
        let starved = VerifyOptions { budget: Some(Duration::ZERO), ..Default::default() };
        let partial = verify_family(FormulaFamily::Prism, 3..=4, starved, None).unwrap();
        assert!(!partial.complete);
        assert!(partial.rows.iter().all(|r| r.status == RowStatus::Incomplete));
    }

    #[test]
    fn mobius_rows_below_six_are_derived() {
        let report = verify_family(FormulaFamily::Mobius, 3..=4, VerifyOptions::default(), None).unwrap();
        assert!(report.rows.iter().all(|r| r.status == RowStatus::Derived && r.formula_value.is_none()));
    }

    #[test]
    fn reflections_are_automorphic_images() {
        let g = prism(5).unwrap();
        let p = Distribution::new(vec![2, 0, 1, 0, 0, 0, 0, 1, 0, 0]);
        let engine = Engine::new(&g);
        for c in 0..5 {
            for (a, s) in [(true, false), (false, true), (true, true)] {
                let q = reflect(5, &p, c, a, s);
                assert_eq!(q.size(), p.size());
                assert_eq!(
                    engine.reach_profile(&q).unwrap().iter().sum::<u32>(),
                    engine.reach_profile(&p).unwrap().iter().sum::<u32>()
                );
                assert_eq!(reflect(5, &q, c, a, s), p);
            }
        }
    }

    #[test]
    fn non_prism_and_small_prism_rejected() {
        let l = ladder(5).unwrap();
        assert!(not_2_reachable_rung_exists(&l, &Distribution::empty(10)).is_err());
        let p4 = prism(4).unwrap();
        assert!(not_2_reachable_rung_exists(&p4, &Distribution::empty(8)).is_err());
    }

    #[test]
    fn oversized_distribution_may_have_no_such_rung() {
        let g = prism(5).unwrap();
        let p = Distribution::new(vec![2; 10]);
        assert_eq!(not_2_reachable_rung_exists(&g, &p).unwrap(), None);
    }
}
