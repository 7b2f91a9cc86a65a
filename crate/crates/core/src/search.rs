//! Randomized audit of the relation between χ(H) and χ(H^[1]).
//!
//! Every trial is a pure function of `(config, trial index)`, so a run gives
//! the same report for any worker count.
//!
//! # Trial derivation
//!
//! * `trial_seed = mix64(base_seed + (i + 1) * 0x9E3779B97F4A7C15)` (wrapping
//!   arithmetic, `mix64` is the SplitMix64 finaliser), i.e. the `(i+1)`-th
//!   SplitMix64 output started at `base_seed`.
//! * A [`Prng`](crate::gen::Prng) seeded with `trial_seed` then draws, in order,
//!   `n` uniform in `n_range`, `m` uniform in `m_range`, and the 64-bit seed
//!   passed to [`random_hypergraph`].
//! * Edge sizes range over `max(size_lo, min_edge_size) ..= min(size_hi, n)`
//!   (exactly 3 in the 3-uniform audit); `m` is clamped to the number of
//!   distinct edges available. A trial with an empty size range is ineligible.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color::{four_color, two_color};
use crate::exact::{bipartition, graph_chromatic_number, hypergraph_chromatic_number, SolverCaps};
use crate::gen::{below, distinct_edge_count, mix64, prng, random_hypergraph};
use crate::hypergraph::{is_proper, Hypergraph, IntersectionGraph};
use rand_core::RngCore;

pub const REPORT_SCHEMA: &str = "hypercolor.search-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
    Any,
}

impl Parity {
    fn admits(self, k: usize) -> bool {
        match self {
            Parity::Even => k.is_multiple_of(2),
            Parity::Odd => k % 2 == 1,
            Parity::Any => true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Look for χ(H) > χ(H^[1]) with χ(H^[1]) ≥ 2 passing the parity filter.
    ConjectureAudit,
    /// Same check restricted to 3-uniform hypergraphs.
    TheoremAudit3Uniform,
    /// Run [`two_color`] on every instance with a bipartite H^[1].
    TwoColorStress,
    /// Run [`four_color`] on every instance with χ(H^[1]) ≤ 4.
    FourColorStress,
}

/// Inclusive integer interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Range {
    pub lo: usize,
    pub hi: usize,
}

impl Range {
    pub fn new(lo: usize, hi: usize) -> Self {
        Range { lo, hi }
    }

    fn sample(&self, rng: &mut impl RngCore) -> usize {
        self.lo + below(rng, (self.hi - self.lo + 1) as u64) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n_range: Range,
    pub m_range: Range,
    pub size_range: Range,
    pub trials: usize,
    pub base_seed: u64,
    pub parity_filter: Parity,
    pub min_edge_size_filter: usize,
    pub mode: SearchMode,
    pub caps: SolverCaps,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            n_range: Range::new(4, 12),
            m_range: Range::new(1, 12),
            size_range: Range::new(2, 4),
            trials: 1000,
            base_seed: 0,
            parity_filter: Parity::Any,
            min_edge_size_filter: 2,
            mode: SearchMode::ConjectureAudit,
            caps: SolverCaps::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("{0} range is empty")]
    EmptyRange(&'static str),
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("edge sizes must be at least 2")]
    EdgeSizeTooSmall,
    #[error("vertex count must be at least 2")]
    TooFewVertices,
    #[error("edge count must be at least 1")]
    NoEdges,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        for (name, r) in [("n", self.n_range), ("m", self.m_range), ("size", self.size_range)] {
            if r.lo > r.hi {
                return Err(ConfigError::EmptyRange(name));
            }
        }
        if self.trials == 0 {
            return Err(ConfigError::NoTrials);
        }
        if self.size_range.lo < 2 || self.min_edge_size_filter < 2 {
            return Err(ConfigError::EdgeSizeTooSmall);
        }
        if self.n_range.lo < 2 {
            return Err(ConfigError::TooFewVertices);
        }
        if self.m_range.lo < 1 {
            return Err(ConfigError::NoEdges);
        }
        Ok(())
    }

    fn size_bounds(&self, n: usize) -> (usize, usize) {
        match self.mode {
            SearchMode::TheoremAudit3Uniform => (3, 3.min(n)),
            _ => (
                self.size_range.lo.max(self.min_edge_size_filter),
                self.size_range.hi.min(n),
            ),
        }
    }
}

/// `mix64(base_seed + (trial + 1) * golden_gamma)`.
pub fn trial_seed(base_seed: u64, trial: usize) -> u64 {
    const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
    mix64(base_seed.wrapping_add((trial as u64).wrapping_add(1).wrapping_mul(GAMMA)))
}

/// The parameters that reproduce one sampled instance through
/// [`random_hypergraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceParams {
    pub n: usize,
    pub m: usize,
    pub min_size: usize,
    pub max_size: usize,
    pub seed: u64,
}

impl InstanceParams {
    pub fn replay(&self) -> Hypergraph {
        random_hypergraph(self.n, self.m, self.min_size, self.max_size, self.seed)
            .expect("recorded parameters are valid")
    }
}

/// Derives the instance for trial `trial`, or `None` if the size range is
/// empty for the drawn `n`.
pub fn trial_instance(cfg: &SearchConfig, trial: usize) -> Option<InstanceParams> {
    let mut rng = prng(trial_seed(cfg.base_seed, trial));
    let n = cfg.n_range.sample(&mut rng);
    let m = cfg.m_range.sample(&mut rng);
    let seed = rng.next_u64();
    let (min_size, max_size) = cfg.size_bounds(n);
    if min_size > max_size {
        return None;
    }
    let available = distinct_edge_count(n, min_size, max_size);
    let m = (m as u128).min(available) as usize;
    Some(InstanceParams { n, m, min_size, max_size, seed })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// χ(H) > χ(H^[1]).
    Chromatic,
    /// A colorer failed on an instance it is guaranteed to handle.
    Invariant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: usize,
    pub kind: ViolationKind,
    pub params: InstanceParams,
    pub chi_ig: usize,
    pub chi_h: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    pub edges: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramEntry {
    pub chi_ig: usize,
    pub chi_h: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema: String,
    pub config: SearchConfig,
    pub trials_run: usize,
    /// Trials checked by the mode's criterion.
    pub trials_evaluated: usize,
    /// Trials beyond an exact-solver cap.
    pub trials_skipped: usize,
    /// Trials outside the mode's precondition or the parity filter.
    pub trials_ineligible: usize,
    /// Violations that failed to reproduce on replay; always expected to be 0.
    pub unconfirmed_violations: usize,
    /// Counts of `(χ(H^[1]), χ(H))` over evaluated trials.
    pub histogram: Vec<HistogramEntry>,
    pub violations: Vec<Violation>,
}

enum Outcome {
    Skipped,
    Ineligible,
    Evaluated { chi_ig: usize, chi_h: usize, violation: Option<(ViolationKind, Option<String>)> },
}

fn evaluate(cfg: &SearchConfig, h: &Hypergraph) -> Outcome {
    let caps = &cfg.caps;
    if h.n() > caps.max_hypergraph_vertices || h.m() > caps.max_graph_vertices {
        return Outcome::Skipped;
    }
    let g = IntersectionGraph::of(h);
    let Ok((chi_ig, _)) = graph_chromatic_number(&g, caps) else {
        return Outcome::Skipped;
    };
    let eligible = match cfg.mode {
        SearchMode::ConjectureAudit | SearchMode::TheoremAudit3Uniform => {
            chi_ig >= 2 && cfg.parity_filter.admits(chi_ig)
        }
        SearchMode::TwoColorStress => bipartition(&g).is_ok(),
        SearchMode::FourColorStress => chi_ig <= 4,
    };
    if !eligible {
        return Outcome::Ineligible;
    }
    let Ok((chi_h, _)) = hypergraph_chromatic_number(h, caps) else {
        return Outcome::Skipped;
    };
    let violation = match cfg.mode {
        SearchMode::ConjectureAudit | SearchMode::TheoremAudit3Uniform => {
            (chi_h > chi_ig).then_some((ViolationKind::Chromatic, None))
        }
        SearchMode::TwoColorStress => match two_color(h) {
            Ok((c, _)) if is_proper(h, &c) && c.k() <= 2 => None,
            Ok((c, _)) => Some((ViolationKind::Invariant, Some(format!("two_color returned {:?}", c.colors())))),
            Err(e) => Some((ViolationKind::Invariant, Some(e.to_string()))),
        },
        SearchMode::FourColorStress => match four_color(h, caps) {
            Ok(out) if is_proper(h, &out.coloring) && out.coloring.k() <= 4 => None,
            Ok(out) => Some((
                ViolationKind::Invariant,
                Some(format!("four_color returned {:?}", out.coloring.colors())),
            )),
            Err(e) => Some((ViolationKind::Invariant, Some(e.to_string()))),
        },
    };
    Outcome::Evaluated { chi_ig, chi_h, violation }
}

fn run_trial(cfg: &SearchConfig, trial: usize) -> (Option<InstanceParams>, Outcome) {
    match trial_instance(cfg, trial) {
        None => (None, Outcome::Ineligible),
        Some(params) => {
            let h = params.replay();
            (Some(params), evaluate(cfg, &h))
        }
    }
}

/// Runs every trial of `cfg` on up to `jobs` worker threads (`0` means the
/// rayon default). The report does not depend on `jobs`.
pub fn run_search(cfg: &SearchConfig, jobs: usize) -> Result<SearchReport, ConfigError> {
    cfg.validate()?;
    let outcomes: Vec<(Option<InstanceParams>, Outcome)> = if jobs == 1 {
        (0..cfg.trials).map(|i| run_trial(cfg, i)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| (0..cfg.trials).into_par_iter().map(|i| run_trial(cfg, i)).collect())
    };

    let mut report = SearchReport {
        schema: REPORT_SCHEMA.to_string(),
        config: cfg.clone(),
        trials_run: cfg.trials,
        trials_evaluated: 0,
        trials_skipped: 0,
        trials_ineligible: 0,
        unconfirmed_violations: 0,
        histogram: Vec::new(),
        violations: Vec::new(),
    };
    let mut histogram: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (trial, (params, outcome)) in outcomes.into_iter().enumerate() {
        match outcome {
            Outcome::Skipped => report.trials_skipped += 1,
            Outcome::Ineligible => report.trials_ineligible += 1,
            Outcome::Evaluated { chi_ig, chi_h, violation } => {
                report.trials_evaluated += 1;
                *histogram.entry((chi_ig, chi_h)).or_default() += 1;
                if let Some((kind, detail)) = violation {
                    let params = params.expect("evaluated trials have parameters");
                    let candidate = Violation {
                        trial,
                        kind,
                        params,
                        chi_ig,
                        chi_h,
                        detail,
                        edges: params.replay().edges().to_vec(),
                    };
                    if reverify(cfg, &candidate) {
                        report.violations.push(candidate);
                    } else {
                        log::warn!("trial {trial}: violation did not reproduce on replay");
                        report.unconfirmed_violations += 1;
                    }
                }
            }
        }
    }
    report.histogram = histogram
        .into_iter()
        .map(|((chi_ig, chi_h), count)| HistogramEntry { chi_ig, chi_h, count })
        .collect();
    Ok(report)
}

/// Replays a violation from its recorded seed and recomputes both chromatic
/// numbers from scratch.
pub fn reverify(cfg: &SearchConfig, v: &Violation) -> bool {
    if trial_instance(cfg, v.trial) != Some(v.params) {
        return false;
    }
    let h = v.params.replay();
    if h.edges() != v.edges.as_slice() {
        return false;
    }
    let g = IntersectionGraph::of(&h);
    let (Ok((chi_ig, _)), Ok((chi_h, _))) =
        (graph_chromatic_number(&g, &cfg.caps), hypergraph_chromatic_number(&h, &cfg.caps))
    else {
        return false;
    };
    if (chi_ig, chi_h) != (v.chi_ig, v.chi_h) {
        return false;
    }
    match v.kind {
        ViolationKind::Chromatic => chi_h > chi_ig,
        ViolationKind::Invariant => matches!(
            evaluate(cfg, &h),
            Outcome::Evaluated { violation: Some((ViolationKind::Invariant, _)), .. }
        ),
    }
}

impl SearchReport {
    /// Human-readable summary with an aligned histogram table.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(out, "mode              {:?}", c.mode);
        let _ = writeln!(out, "base seed         {}", c.base_seed);
        let _ = writeln!(
            out,
            "ranges            n {}..={}  m {}..={}  size {}..={}",
            c.n_range.lo, c.n_range.hi, c.m_range.lo, c.m_range.hi, c.size_range.lo, c.size_range.hi
        );
        let _ = writeln!(out, "parity filter     {:?}", c.parity_filter);
        let _ = writeln!(out, "min edge size     {}", c.min_edge_size_filter);
        let _ = writeln!(out, "trials run        {}", self.trials_run);
        let _ = writeln!(out, "  evaluated       {}", self.trials_evaluated);
        let _ = writeln!(out, "  ineligible      {}", self.trials_ineligible);
        let _ = writeln!(out, "  skipped (cap)   {}", self.trials_skipped);
        let _ = writeln!(out, "violations        {}", self.violations.len());
        if self.unconfirmed_violations > 0 {
            let _ = writeln!(out, "unconfirmed       {}", self.unconfirmed_violations);
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "{:>8} {:>8} {:>8}", "chi(H1)", "chi(H)", "count");
        for e in &self.histogram {
            let _ = writeln!(out, "{:>8} {:>8} {:>8}", e.chi_ig, e.chi_h, e.count);
        }
        if !self.violations.is_empty() {
            let _ = writeln!(out);
            let _ = writeln!(
                out,
                "{:>7} {:>20} {:>4} {:>4} {:>7} {:>7} {:>6}  kind",
                "trial", "seed", "n", "m", "sizes", "chi(H1)", "chi(H)"
            );
            for v in &self.violations {
                let p = &v.params;
                let _ = writeln!(
                    out,
                    "{:>7} {:>20} {:>4} {:>4} {:>7} {:>7} {:>6}  {:?}",
                    v.trial,
                    p.seed,
                    p.n,
                    p.m,
                    format!("{}..={}", p.min_size, p.max_size),
                    v.chi_ig,
                    v.chi_h,
                    v.kind
                );
            }
        }
        out
    }
}
