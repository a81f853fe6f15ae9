//! Exhaustive enumeration of (two-way) liking digraphs of small order.
//!
//! The adjacency matrix is decided one row (one out-neighborhood) at a time.
//! When row `r` is placed, every subset `T ∪ {r}` of decided rows with
//! `|T| < t` is checked: a full `t`-subset must meet in exactly `λ` columns,
//! a smaller one in at least `λ` (intersections only shrink as the subset
//! grows). Rows with fewer than `t+λ−1` out-neighbors are never tried, since
//! every `(t, λ)`-liking digraph has minimum out-degree at least `t+λ−1`.
//! In two-way mode each column `t`-subset keeps a running count of decided
//! rows containing it; the count may not exceed `λ`, and must still be able
//! to reach `λ` from the undecided rows outside the subset.
//!
//! Work is split on the first two rows. Prefixes are handled in fixed-size
//! batches in lexicographic order, so limits, checkpoints and the final
//! sorted output do not depend on the number of workers.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{complete_digraph, Digraph, DigraphError};
use crate::liking::{
    classify_21, eulerian_check, is_liking, is_two_way_liking, solve_degree_equation, Classification21,
    LikingError, LikingParams, Verdict,
};

/// Hard ceiling on the order of searched or canonicalized digraphs.
pub const MAX_ORDER: usize = 8;
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000_000;
/// Prefixes per batch; checkpoints are written between batches.
pub const PREFIX_BATCH: usize = 64;
const FLUSH_EVERY: u64 = 1 << 12;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("order {n} exceeds the limit of {limit}")]
    OrderTooLarge { n: usize, limit: usize },
    #[error("order {n} is below t = {t}")]
    OrderBelowT { n: usize, t: usize },
    #[error("theorem audits need t >= 2 (got {0})")]
    AuditNeedsT2(LikingParams),
    #[error(transparent)]
    Liking(#[from] LikingError),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
    #[error("checkpoint {path}: {message}")]
    Checkpoint { path: PathBuf, message: String },
    #[error("thread pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Liking,
    TwoWayLiking,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub n: usize,
    pub params: LikingParams,
    pub mode: SearchMode,
    /// Keep one canonical representative per isomorphism class.
    pub dedupe: bool,
    /// Stop once at least this many labeled digraphs are found (checked
    /// between batches); the first `limit` in prefix order are kept.
    pub limit: Option<usize>,
}

impl SearchSpec {
    pub fn new(n: usize, params: LikingParams, mode: SearchMode) -> Self {
        SearchSpec {
            n,
            params,
            mode,
            dedupe: false,
            limit: None,
        }
    }

    pub fn dedupe(mut self, yes: bool) -> Self {
        self.dedupe = yes;
        self
    }
}

/// Execution knobs that do not change the answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub node_budget: u64,
    /// Worker threads; 0 lets rayon pick.
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    /// Start after the prefix recorded in `checkpoint`.
    pub resume: bool,
    /// Order guard, at most [`MAX_ORDER`].
    pub max_order: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: DEFAULT_NODE_BUDGET,
            workers: 0,
            checkpoint: None,
            resume: false,
            max_order: MAX_ORDER,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub spec: SearchSpec,
    pub found: Vec<Digraph>,
    pub nodes_explored: u64,
    pub prefixes_total: usize,
    pub prefixes_completed: usize,
    /// Every prefix was searched to the end.
    pub complete: bool,
    pub budget_exhausted: bool,
    pub resumed_after: Option<Vec<u64>>,
    pub verdicts: Vec<AuditEntry>,
}

/// The last fully searched two-row prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub prefix: Vec<u64>,
}

impl Checkpoint {
    /// One decimal row mask per line; blank lines and `#` comments ignored.
    pub fn parse(text: &str) -> Result<Self, String> {
        let prefix = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .map(|l| l.parse::<u64>().map_err(|e| format!("bad row mask {l:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        if prefix.is_empty() {
            return Err("empty checkpoint".into());
        }
        Ok(Checkpoint { prefix })
    }

    pub fn to_text(&self) -> String {
        self.prefix.iter().map(|r| format!("{r}\n")).collect()
    }

    pub fn load(path: &Path) -> Result<Self, SearchError> {
        let err = |message: String| SearchError::Checkpoint {
            path: path.to_path_buf(),
            message,
        };
        let text = fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
        Checkpoint::parse(&text).map_err(err)
    }

    pub fn save(&self, path: &Path) -> Result<(), SearchError> {
        let err = |e: std::io::Error| SearchError::Checkpoint {
            path: path.to_path_buf(),
            message: e.to_string(),
        };
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, self.to_text()).map_err(err)?;
        fs::rename(&tmp, path).map_err(err)
    }
}

struct Kernel {
    n: usize,
    t: usize,
    lambda: u32,
    two_way: bool,
    /// Allowed out-neighborhoods for each row, ascending.
    candidates: Vec<Vec<u32>>,
    /// Every column `t`-subset, two-way mode only.
    column_sets: Vec<u32>,
}

type Rows = [u32; MAX_ORDER];

struct Budget {
    nodes: AtomicU64,
    limit: u64,
    stop: AtomicBool,
}

impl Budget {
    fn charge(&self, local: &mut u64) -> bool {
        *local += 1;
        if *local >= FLUSH_EVERY {
            self.flush(local);
        }
        !self.stop.load(Ordering::Relaxed)
    }

    fn flush(&self, local: &mut u64) {
        let total = self.nodes.fetch_add(*local, Ordering::Relaxed) + *local;
        *local = 0;
        if total > self.limit {
            self.stop.store(true, Ordering::Relaxed);
        }
    }
}

fn masks_of_size_at_least(n: usize, excluded: usize, min: u32) -> Vec<u32> {
    (0u32..1 << n)
        .filter(|m| m >> excluded & 1 == 0 && m.count_ones() >= min)
        .collect()
}

impl Kernel {
    fn new(n: usize, p: LikingParams, mode: SearchMode) -> Self {
        let min_degree = (p.t + p.lambda - 1) as u32;
        let two_way = mode == SearchMode::TwoWayLiking;
        Kernel {
            n,
            t: p.t,
            lambda: p.lambda as u32,
            two_way,
            candidates: (0..n).map(|r| masks_of_size_at_least(n, r, min_degree)).collect(),
            column_sets: if two_way {
                (0u32..1 << n).filter(|m| m.count_ones() as usize == p.t).collect()
            } else {
                Vec::new()
            },
        }
    }

    /// Subsets `T ∪ {r}` with `T ⊆ rows[start..r]`, `acc` the running meet.
    fn rows_ok(&self, rows: &[u32], r: usize, start: usize, size: usize, acc: u32) -> bool {
        let c = acc.count_ones();
        if size == self.t {
            return c == self.lambda;
        }
        if c < self.lambda {
            return false;
        }
        (start..r).all(|u| self.rows_ok(rows, r, u + 1, size + 1, acc & rows[u]))
    }

    /// Updates column counts for row `r`; false if some column subset can
    /// no longer end with exactly `λ` common in-neighbors.
    fn columns_ok(&self, counts: &mut [u8], r: usize, row: u32) -> bool {
        let later: u32 = ((1u32 << self.n) - 1) & !((1u32 << (r + 1)) - 1);
        for (count, &s) in counts.iter_mut().zip(&self.column_sets) {
            if row & s == s {
                *count += 1;
            }
            let c = *count as u32;
            let reachable = (later & !s).count_ones();
            if c > self.lambda || c + reachable < self.lambda {
                return false;
            }
        }
        true
    }

    /// Tries `row` at position `r`; returns the new column counts if it fits.
    fn place(&self, rows: &[u32], counts: &[u8], r: usize, row: u32) -> Option<Vec<u8>> {
        if !self.rows_ok(rows, r, 0, 1, row) {
            return None;
        }
        let mut next = counts.to_vec();
        if self.two_way && !self.columns_ok(&mut next, r, row) {
            return None;
        }
        Some(next)
    }

    fn dfs(
        &self,
        rows: &mut Rows,
        counts: &[u8],
        r: usize,
        budget: &Budget,
        local: &mut u64,
        out: &mut Vec<Rows>,
    ) -> bool {
        if r == self.n {
            out.push(*rows);
            return true;
        }
        for &row in &self.candidates[r] {
            if !budget.charge(local) {
                return false;
            }
            if let Some(next) = self.place(&rows[..r], counts, r, row) {
                rows[r] = row;
                if !self.dfs(rows, &next, r + 1, budget, local, out) {
                    return false;
                }
            }
        }
        true
    }

    /// Valid assignments of the first `min(2, n)` rows, lexicographic.
    fn prefixes(&self, budget: &Budget, local: &mut u64) -> Vec<(Vec<u32>, Vec<u8>)> {
        let depth = self.n.min(2);
        let mut out = Vec::new();
        let counts0 = vec![0u8; self.column_sets.len()];
        for &a in &self.candidates[0] {
            budget.charge(local);
            let Some(c1) = self.place(&[], &counts0, 0, a) else { continue };
            if depth == 1 {
                out.push((vec![a], c1));
                continue;
            }
            for &b in &self.candidates[1] {
                budget.charge(local);
                if let Some(c2) = self.place(&[a], &c1, 1, b) {
                    out.push((vec![a, b], c2));
                }
            }
        }
        out
    }
}

fn rows_to_digraph(rows: &[u32]) -> Digraph {
    let rows: Vec<u64> = rows.iter().map(|&r| r as u64).collect();
    Digraph::from_rows(&rows).expect("search rows are loopless and in range")
}

fn validate(spec: &SearchSpec, cfg: &SearchConfig) -> Result<(), SearchError> {
    LikingParams::new(spec.params.t, spec.params.lambda)?;
    let limit = cfg.max_order.min(MAX_ORDER);
    if spec.n > limit {
        return Err(SearchError::OrderTooLarge { n: spec.n, limit });
    }
    if spec.n < spec.params.t || spec.n == 0 {
        return Err(SearchError::OrderBelowT { n: spec.n, t: spec.params.t });
    }
    Ok(())
}

fn target_holds(d: &Digraph, spec: &SearchSpec) -> Result<bool, LikingError> {
    Ok(match spec.mode {
        SearchMode::Liking => is_liking(d, spec.params)?.holds(),
        SearchMode::TwoWayLiking => is_two_way_liking(d, spec.params)?.holds(),
    })
}

/// All labeled digraphs of order `spec.n` with the target property, or one
/// canonical representative per isomorphism class when `spec.dedupe`.
/// Output is sorted by adjacency encoding (canonical encoding if deduped).
pub fn enumerate_liking(spec: &SearchSpec, cfg: &SearchConfig) -> Result<SearchReport, SearchError> {
    validate(spec, cfg)?;
    let kernel = Kernel::new(spec.n, spec.params, spec.mode);
    let budget = Budget {
        nodes: AtomicU64::new(0),
        limit: cfg.node_budget,
        stop: AtomicBool::new(false),
    };
    let mut local = 0;
    let prefixes = kernel.prefixes(&budget, &mut local);
    budget.flush(&mut local);

    let resumed_after = match (&cfg.checkpoint, cfg.resume) {
        (Some(path), true) if path.exists() => Some(Checkpoint::load(path)?.prefix),
        _ => None,
    };
    let start = match &resumed_after {
        Some(done) => prefixes
            .iter()
            .position(|(p, _)| p.iter().map(|&r| r as u64).collect::<Vec<_>>() > *done)
            .unwrap_or(prefixes.len()),
        None => 0,
    };

    let mut builder = rayon::ThreadPoolBuilder::new();
    if cfg.workers > 0 {
        builder = builder.num_threads(cfg.workers);
    }
    let pool = builder.build().map_err(|e| SearchError::Pool(e.to_string()))?;

    let mut found: Vec<Rows> = Vec::new();
    let mut completed = start;
    let mut complete = true;
    for batch in prefixes[start..].chunks(PREFIX_BATCH) {
        if budget.stop.load(Ordering::Relaxed) {
            complete = false;
            break;
        }
        let results: Vec<(Vec<Rows>, bool)> = pool.install(|| {
            batch
                .par_iter()
                .map(|(prefix, counts)| {
                    let mut rows = [0u32; MAX_ORDER];
                    rows[..prefix.len()].copy_from_slice(prefix);
                    let mut out = Vec::new();
                    let mut local = 0;
                    let finished = kernel.dfs(&mut rows, counts, prefix.len(), &budget, &mut local, &mut out);
                    budget.flush(&mut local);
                    (out, finished)
                })
                .collect()
        });
        let batch_done = results.iter().all(|(_, f)| *f);
        found.extend(results.into_iter().flat_map(|(r, _)| r));
        if !batch_done {
            complete = false;
            break;
        }
        completed += batch.len();
        if let Some(path) = &cfg.checkpoint {
            let last = &batch.last().expect("non-empty batch").0;
            Checkpoint {
                prefix: last.iter().map(|&r| r as u64).collect(),
            }
            .save(path)?;
        }
        if spec.limit.is_some_and(|l| found.len() >= l) {
            complete = completed == prefixes.len();
            break;
        }
    }
    if let Some(limit) = spec.limit {
        found.truncate(limit);
    }

    let digraphs: Vec<Digraph> = found.iter().map(|r| rows_to_digraph(&r[..spec.n])).collect();
    let mut unsound = None;
    for d in &digraphs {
        if !target_holds(d, spec)? {
            unsound = Some(d.clone());
            break;
        }
    }
    let soundness = AuditEntry {
        params: spec.params,
        check: AuditCheck::Soundness,
        verdict: match &unsound {
            None => AuditVerdict::Pass,
            Some(d) => AuditVerdict::Fail {
                witness: format!("{d:?} fails the target verifier"),
            },
        },
        per_order: vec![OrderStats {
            n: spec.n,
            examined: digraphs.len(),
            flagged: usize::from(unsound.is_some()),
        }],
    };

    let found = if spec.dedupe {
        let forms: Vec<CanonicalForm> = pool.install(|| {
            digraphs
                .par_iter()
                .map(|d| canonical_form(d).expect("order within guard"))
                .collect()
        });
        let classes: BTreeMap<u64, Digraph> = forms.into_iter().map(|f| (f.code, f.digraph)).collect();
        classes.into_values().collect()
    } else {
        let mut keyed: Vec<(Vec<u64>, Digraph)> = digraphs.into_iter().map(|d| (d.rows(), d)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.into_iter().map(|(_, d)| d).collect()
    };

    Ok(SearchReport {
        spec: spec.clone(),
        found,
        nodes_explored: budget.nodes.load(Ordering::Relaxed),
        prefixes_total: prefixes.len(),
        prefixes_completed: completed,
        complete,
        budget_exhausted: budget.stop.load(Ordering::Relaxed),
        resumed_after,
        verdicts: vec![soundness],
    })
}

/// The lexicographically least adjacency encoding over all relabelings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Adjacency bits ordered `(0,1),(1,0),(0,2),(2,0),(1,2),(2,1),(0,3),…`,
    /// first pair most significant.
    pub code: u64,
    pub digraph: Digraph,
    /// `relabeling[v]` is the canonical label of original vertex `v`.
    pub relabeling: Vec<usize>,
}

/// Adjacency bits of `d` in canonical-code order.
pub fn encode(d: &Digraph) -> u64 {
    let n = d.order();
    let mut code = 0u64;
    for k in 1..n {
        for j in 0..k {
            code = code << 2 | (d.has_arc(j, k) as u64) << 1 | d.has_arc(k, j) as u64;
        }
    }
    code
}

struct Canonizer<'a> {
    d: &'a Digraph,
    n: usize,
    total_bits: u32,
    best: Option<(u64, Vec<usize>)>,
}

impl Canonizer<'_> {
    fn rec(&mut self, order: &mut Vec<usize>, used: u32, acc: u64) {
        let k = order.len();
        if k == self.n {
            if self.best.as_ref().is_none_or(|(b, _)| acc < *b) {
                self.best = Some((acc, order.clone()));
            }
            return;
        }
        for v in 0..self.n {
            if used >> v & 1 == 1 {
                continue;
            }
            let mut next = acc;
            for &u in order.iter() {
                next = next << 2 | (self.d.has_arc(u, v) as u64) << 1 | self.d.has_arc(v, u) as u64;
            }
            let bits = (k * (k + 1)) as u32;
            if let Some((best, _)) = &self.best {
                let best_prefix = if bits == 0 { 0 } else { best >> (self.total_bits - bits) };
                if next > best_prefix {
                    continue;
                }
            }
            order.push(v);
            self.rec(order, used | 1 << v, next);
            order.pop();
        }
    }
}

/// Brute-force canonical labeling over all `n!` orderings, with prefix
/// pruning against the best code so far. Equal codes iff isomorphic.
pub fn canonical_form(d: &Digraph) -> Result<CanonicalForm, SearchError> {
    let n = d.order();
    if n > MAX_ORDER {
        return Err(SearchError::OrderTooLarge { n, limit: MAX_ORDER });
    }
    let mut c = Canonizer {
        d,
        n,
        total_bits: (n * (n - 1)) as u32,
        best: None,
    };
    c.rec(&mut Vec::with_capacity(n), 0, 0);
    let (code, order) = c.best.expect("at least one ordering");
    let mut relabeling = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        relabeling[v] = pos;
    }
    let digraph = d.relabel(&relabeling);
    debug_assert_eq!(encode(&digraph), code);
    Ok(CanonicalForm {
        code,
        digraph,
        relabeling,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditCheck {
    /// Every reported digraph re-passes the target verifier.
    Soundness,
    /// Two-way search output equals the liking output filtered by the
    /// two-way verifier.
    ModeConsistency,
    /// `t ≥ 3`: the only two-way `(t,λ)`-liking digraph is complete on `t+λ`.
    CompleteUniqueness,
    /// `t = 2, λ ≥ 2`: two-way results are `k`-diregular, `(n−1)λ = k(k−1)`.
    DiregularDegree,
    /// `t ≥ λ+1`: every liking result is two-way liking.
    LikingIsTwoWay,
    /// `t ≥ λ+1`: every liking result has `d⁺ = d⁻` everywhere.
    Eulerian,
    /// `t = λ+1, λ ≥ 2`: a missing arc between `u` and `v` forces `d⁺(u) = d⁺(v)`.
    EqualDegreesAcrossNonArcs,
    /// `(2,1)`: every result is a fancy wheel or diregular of order `k²−k+1`.
    FriendshipClassification,
    /// `2 ≤ t ≤ λ`: some liking digraph is neither diregular nor two-way.
    CorollaryTightness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AuditVerdict {
    Pass,
    Fail { witness: String },
    /// Search ran out of budget, or no evidence turned up in range.
    Inconclusive { note: String },
}

/// Digraphs examined at one order and how many were flagged by the check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderStats {
    pub n: usize,
    pub examined: usize,
    pub flagged: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub params: LikingParams,
    pub check: AuditCheck,
    pub verdict: AuditVerdict,
    pub per_order: Vec<OrderStats>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub n_max: usize,
    pub entries: Vec<AuditEntry>,
    pub nodes_explored: u64,
}

impl AuditReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.verdict == AuditVerdict::Pass)
    }

    pub fn any_fail(&self) -> bool {
        self.entries
            .iter()
            .any(|e| matches!(e.verdict, AuditVerdict::Fail { .. }))
    }
}

pub const DEFAULT_AUDIT_MAX_ORDER: usize = 7;

struct CheckAcc {
    check: AuditCheck,
    per_order: Vec<OrderStats>,
    witness: Option<String>,
}

impl CheckAcc {
    fn new(check: AuditCheck) -> Self {
        CheckAcc {
            check,
            per_order: Vec::new(),
            witness: None,
        }
    }

    /// Records `n` with the digraphs for which `bad` yields a witness.
    fn record<F>(&mut self, n: usize, items: &[Digraph], mut bad: F)
    where
        F: FnMut(&Digraph) -> Option<String>,
    {
        let mut flagged = 0;
        for d in items {
            if let Some(w) = bad(d) {
                flagged += 1;
                self.witness.get_or_insert(w);
            }
        }
        self.per_order.push(OrderStats {
            n,
            examined: items.len(),
            flagged,
        });
    }

    fn failing(self, params: LikingParams, exhaustive: bool) -> AuditEntry {
        let verdict = match (self.witness, exhaustive) {
            (Some(witness), _) => AuditVerdict::Fail { witness },
            (None, true) => AuditVerdict::Pass,
            (None, false) => AuditVerdict::Inconclusive {
                note: "search budget exhausted".into(),
            },
        };
        AuditEntry {
            params,
            check: self.check,
            verdict,
            per_order: self.per_order,
        }
    }
}

fn two_way_holds(d: &Digraph, p: LikingParams) -> bool {
    is_two_way_liking(d, p).map(|v| v.holds()).unwrap_or(false)
}

/// Enumerates liking and two-way liking digraphs for every `(t, λ)` in
/// `params_list` and every order `t ≤ n ≤ n_max`, and checks the structural
/// theorems about them. Each check yields one [`AuditEntry`].
pub fn theorem_audit(
    n_max: usize,
    params_list: &[LikingParams],
    cfg: &SearchConfig,
) -> Result<AuditReport, SearchError> {
    let guard = cfg.max_order.min(MAX_ORDER);
    if n_max > guard {
        return Err(SearchError::OrderTooLarge { n: n_max, limit: guard });
    }
    let mut entries = Vec::new();
    let mut nodes = 0;
    for &p in params_list {
        LikingParams::new(p.t, p.lambda)?;
        if p.t < 2 {
            return Err(SearchError::AuditNeedsT2(p));
        }
        let mut soundness = CheckAcc::new(AuditCheck::Soundness);
        let mut consistency = CheckAcc::new(AuditCheck::ModeConsistency);
        let mut uniqueness = CheckAcc::new(AuditCheck::CompleteUniqueness);
        let mut diregular = CheckAcc::new(AuditCheck::DiregularDegree);
        let mut two_way = CheckAcc::new(AuditCheck::LikingIsTwoWay);
        let mut eulerian = CheckAcc::new(AuditCheck::Eulerian);
        let mut equal_degrees = CheckAcc::new(AuditCheck::EqualDegreesAcrossNonArcs);
        let mut friendship = CheckAcc::new(AuditCheck::FriendshipClassification);
        let mut tightness = CheckAcc::new(AuditCheck::CorollaryTightness);
        let mut exhaustive = true;

        for n in p.t.max(2)..=n_max {
            let liking = enumerate_liking(&SearchSpec::new(n, p, SearchMode::Liking), cfg)?;
            let twoway = enumerate_liking(&SearchSpec::new(n, p, SearchMode::TwoWayLiking), cfg)?;
            nodes += liking.nodes_explored + twoway.nodes_explored;
            exhaustive &= liking.complete && twoway.complete;
            let (liking, twoway) = (liking.found, twoway.found);

            soundness.record(n, &liking, |d| {
                (!is_liking(d, p).map(|v| v.holds()).unwrap_or(false)).then(|| format!("{d:?} not liking"))
            });
            soundness.record(n, &twoway, |d| (!two_way_holds(d, p)).then(|| format!("{d:?} not two-way")));

            let filtered: Vec<Digraph> = liking.iter().filter(|d| two_way_holds(d, p)).cloned().collect();
            consistency.record(n, &twoway, |_| None);
            if filtered != twoway {
                consistency.witness.get_or_insert(format!(
                    "n={n}: two-way search found {}, filtered liking search {}",
                    twoway.len(),
                    filtered.len()
                ));
            }

            if p.t >= 3 {
                let expected: Vec<Digraph> = if n == p.t + p.lambda {
                    vec![complete_digraph(n)?]
                } else {
                    Vec::new()
                };
                uniqueness.record(n, &twoway, |d| {
                    (!expected.contains(d)).then(|| format!("unexpected two-way digraph {d:?}"))
                });
                if twoway.len() != expected.len() {
                    uniqueness
                        .witness
                        .get_or_insert(format!("n={n}: {} two-way digraphs, expected {}", twoway.len(), expected.len()));
                }
            }

            if p.t == 2 && p.lambda >= 2 {
                let k = solve_degree_equation(n, p)?;
                diregular.record(n, &twoway, |d| {
                    let got = d.is_diregular();
                    (got.is_none() || got != k).then(|| format!("{d:?} has degree {got:?}, equation gives {k:?}"))
                });
            }

            if p.t > p.lambda {
                two_way.record(n, &liking, |d| (!two_way_holds(d, p)).then(|| format!("{d:?} is not two-way")));
                eulerian.record(n, &liking, |d| match eulerian_check(d) {
                    Verdict::Holds => None,
                    Verdict::Fails(v) => Some(format!("{d:?}: d+({v}) != d-({v})")),
                });
            }

            if p.t == p.lambda + 1 && p.lambda >= 2 {
                equal_degrees.record(n, &liking, |d| {
                    let n = d.order();
                    (0..n)
                        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                        .find(|&(u, v)| {
                            (!d.has_arc(u, v) || !d.has_arc(v, u)) && d.out_degree(u) != d.out_degree(v)
                        })
                        .map(|(u, v)| format!("{d:?}: non-adjacent {u},{v} with unequal out-degrees"))
                });
            }

            if p == (LikingParams { t: 2, lambda: 1 }) {
                friendship.record(n, &liking, |d| match classify_21(d) {
                    Ok(Classification21::FancyWheel { .. }) => None,
                    Ok(Classification21::Diregular { k }) if n == k * k - k + 1 => None,
                    Ok(other) => Some(format!("{d:?} classified as {other:?}")),
                    Err(e) => Some(e.to_string()),
                });
            }

            if p.t <= p.lambda {
                // flagged here means "evidence found", not failure
                tightness.record(n, &liking, |d| {
                    (d.is_diregular().is_none() && !two_way_holds(d, p)).then(|| format!("{:?}", d.arcs()))
                });
            }
        }

        entries.push(soundness.failing(p, exhaustive));
        entries.push(consistency.failing(p, exhaustive));
        if p.t >= 3 {
            entries.push(uniqueness.failing(p, exhaustive));
        }
        if p.t == 2 && p.lambda >= 2 {
            entries.push(diregular.failing(p, exhaustive));
        }
        if p.t > p.lambda {
            entries.push(two_way.failing(p, exhaustive));
            entries.push(eulerian.failing(p, exhaustive));
        }
        if p.t == p.lambda + 1 && p.lambda >= 2 {
            entries.push(equal_degrees.failing(p, exhaustive));
        }
        if p == (LikingParams { t: 2, lambda: 1 }) {
            entries.push(friendship.failing(p, exhaustive));
        }
        if p.t <= p.lambda {
            let found = tightness.per_order.iter().map(|s| s.flagged).sum::<usize>();
            let verdict = if found > 0 {
                AuditVerdict::Pass
            } else {
                AuditVerdict::Inconclusive {
                    note: format!("no non-diregular, non-two-way {p}-liking digraph up to order {n_max}"),
                }
            };
            entries.push(AuditEntry {
                params: p,
                check: AuditCheck::CorollaryTightness,
                verdict,
                per_order: tightness.per_order,
            });
        }
    }
    Ok(AuditReport {
        n_max,
        entries,
        nodes_explored: nodes,
    })
}
