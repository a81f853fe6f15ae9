//! Exact verification of (two-way) `(t, λ)`-liking digraphs.
//!
//! A digraph is `(t, λ)`-liking when every `t` distinct vertices have exactly
//! `λ` common out-neighbors, and two-way `(t, λ)`-liking when additionally
//! every `t` vertices have exactly `λ` common in-neighbors.
//!
//! All subset scans visit `t`-subsets in lexicographic order of their sorted
//! labels, so the reported witness is always the lexicographically first
//! failing subset.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::digraph::Digraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LikingError {
    #[error("liking parameters need t >= 1 and lambda >= 1 (got t={t}, lambda={lambda})")]
    InvalidParams { t: usize, lambda: usize },
    #[error("digraph has {n} vertices, fewer than t = {t}")]
    TooFewVertices { n: usize, t: usize },
    #[error("common neighbors of an empty vertex set")]
    EmptySubset,
    #[error("vertex {v} outside 0..{n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("degree equation is degenerate for t={t}, lambda={lambda}: it needs t = 2, or lambda >= t >= 3")]
    DegenerateEquation { t: usize, lambda: usize },
    #[error("binomial arithmetic overflowed")]
    Overflow,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("inconsistent (2,1)-liking digraph: {0}")]
    Inconsistent(String),
}

/// The pair `(t, λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LikingParams {
    pub t: usize,
    pub lambda: usize,
}

impl LikingParams {
    pub fn new(t: usize, lambda: usize) -> Result<Self, LikingError> {
        if t == 0 || lambda == 0 {
            return Err(LikingError::InvalidParams { t, lambda });
        }
        Ok(LikingParams { t, lambda })
    }
}

impl std::fmt::Display for LikingParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.t, self.lambda)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Out,
    In,
}

/// A `t`-subset whose common out- or in-neighborhood has the wrong size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub subset: Vec<usize>,
    pub direction: Direction,
    pub observed: usize,
    pub expected: usize,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let dir = match self.direction {
            Direction::Out => "out",
            Direction::In => "in",
        };
        write!(
            f,
            "{:?} has {} common {dir}-neighbors, expected {}",
            self.subset, self.observed, self.expected
        )
    }
}

/// Outcome of a property check: either it holds, or a witness says why not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "lowercase")]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

fn neighborhood(d: &Digraph, v: usize, dir: Direction) -> &VertexSet {
    match dir {
        Direction::Out => d.out_neighbors(v),
        Direction::In => d.in_neighbors(v),
    }
}

/// `∩ N⁺(v)` (or `∩ N⁻(v)`) over `v ∈ subset`.
pub fn common_neighbors(
    d: &Digraph,
    subset: &[usize],
    dir: Direction,
) -> Result<VertexSet, LikingError> {
    let (&first, rest) = subset.split_first().ok_or(LikingError::EmptySubset)?;
    let n = d.order();
    if let Some(&v) = subset.iter().find(|&&v| v >= n) {
        return Err(LikingError::VertexOutOfRange { v, n });
    }
    let mut acc = neighborhood(d, first, dir).clone();
    for &v in rest {
        acc.intersect_with(neighborhood(d, v, dir));
    }
    Ok(acc)
}

/// Depth-first walk over all `size`-subsets in lexicographic order, carrying
/// the running common neighborhood for each direction in `dirs`. `visit`
/// returns `false` to stop the walk.
fn walk_subsets<F>(d: &Digraph, size: usize, dirs: &[Direction], visit: &mut F)
where
    F: FnMut(&[usize], &[VertexSet]) -> bool,
{
    fn rec<F>(
        d: &Digraph,
        size: usize,
        dirs: &[Direction],
        start: usize,
        chosen: &mut Vec<usize>,
        acc: &mut Vec<Vec<VertexSet>>,
        visit: &mut F,
    ) -> bool
    where
        F: FnMut(&[usize], &[VertexSet]) -> bool,
    {
        if chosen.len() == size {
            return visit(chosen, acc.last().expect("non-empty accumulator"));
        }
        let remaining = size - chosen.len();
        for v in start..=d.order() - remaining {
            let next: Vec<VertexSet> = dirs
                .iter()
                .enumerate()
                .map(|(i, &dir)| match acc.last() {
                    Some(prev) => prev[i].intersection(neighborhood(d, v, dir)),
                    None => neighborhood(d, v, dir).clone(),
                })
                .collect();
            chosen.push(v);
            acc.push(next);
            let go_on = rec(d, size, dirs, v + 1, chosen, acc, visit);
            acc.pop();
            chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    if size == 0 || size > d.order() {
        return;
    }
    rec(d, size, dirs, 0, &mut Vec::new(), &mut Vec::new(), visit);
}

fn check_params(d: &Digraph, p: LikingParams) -> Result<(), LikingError> {
    LikingParams::new(p.t, p.lambda)?;
    if d.order() < p.t {
        return Err(LikingError::TooFewVertices { n: d.order(), t: p.t });
    }
    Ok(())
}

fn scan(d: &Digraph, p: LikingParams, dirs: &[Direction], exhaustive: bool) -> Vec<Violation> {
    let mut found = Vec::new();
    walk_subsets(d, p.t, dirs, &mut |subset, common| {
        for (&dir, set) in dirs.iter().zip(common) {
            let observed = set.len();
            if observed != p.lambda {
                found.push(Violation {
                    subset: subset.to_vec(),
                    direction: dir,
                    observed,
                    expected: p.lambda,
                });
                if !exhaustive {
                    return false;
                }
            }
        }
        true
    });
    found
}

fn first(mut v: Vec<Violation>) -> Verdict<Violation> {
    if v.is_empty() {
        Verdict::Holds
    } else {
        Verdict::Fails(v.swap_remove(0))
    }
}

/// Every `t` vertices have exactly `λ` common out-neighbors.
///
/// With `t = 1` this reads as "every vertex has out-degree `λ`".
pub fn is_liking(d: &Digraph, p: LikingParams) -> Result<Verdict<Violation>, LikingError> {
    check_params(d, p)?;
    Ok(first(scan(d, p, &[Direction::Out], false)))
}

/// Every `t` vertices have exactly `λ` common out-neighbors and exactly `λ`
/// common in-neighbors. For a given subset the out-direction is checked first.
pub fn is_two_way_liking(d: &Digraph, p: LikingParams) -> Result<Verdict<Violation>, LikingError> {
    check_params(d, p)?;
    Ok(first(scan(d, p, &[Direction::Out, Direction::In], false)))
}

/// Every violation in lexicographic order rather than just the first.
pub fn all_violations(
    d: &Digraph,
    p: LikingParams,
    two_way: bool,
) -> Result<Vec<Violation>, LikingError> {
    check_params(d, p)?;
    let dirs: &[Direction] = if two_way {
        &[Direction::Out, Direction::In]
    } else {
        &[Direction::Out]
    };
    Ok(scan(d, p, dirs, true))
}

/// Why [`degree_bounds_check`] failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundFailure {
    NotLiking { violation: Violation },
    OrderTooSmall { order: usize, required: usize },
    OutDegreeTooSmall { vertex: usize, degree: usize, required: usize },
    CommonOutTooSmall { subset: Vec<usize>, observed: usize, required: usize },
}

/// The necessary conditions every `(t, λ)`-liking digraph satisfies:
/// `|V| ≥ t+λ`, `δ⁺ ≥ t+λ−1`, and for `1 ≤ i ≤ t−1` every `(t−i)`-subset
/// has at least `λ+i` common out-neighbors. The liking property itself is
/// checked first.
pub fn degree_bounds_check(d: &Digraph, p: LikingParams) -> Result<Verdict<BoundFailure>, LikingError> {
    if let Verdict::Fails(violation) = is_liking(d, p)? {
        return Ok(Verdict::Fails(BoundFailure::NotLiking { violation }));
    }
    let n = d.order();
    if n < p.t + p.lambda {
        return Ok(Verdict::Fails(BoundFailure::OrderTooSmall {
            order: n,
            required: p.t + p.lambda,
        }));
    }
    let required = p.t + p.lambda - 1;
    if let Some(vertex) = (0..n).find(|&v| d.out_degree(v) < required) {
        return Ok(Verdict::Fails(BoundFailure::OutDegreeTooSmall {
            vertex,
            degree: d.out_degree(vertex),
            required,
        }));
    }
    for i in 1..p.t {
        let required = p.lambda + i;
        let mut failure = None;
        walk_subsets(d, p.t - i, &[Direction::Out], &mut |subset, common| {
            if common[0].len() < required {
                failure = Some(BoundFailure::CommonOutTooSmall {
                    subset: subset.to_vec(),
                    observed: common[0].len(),
                    required,
                });
                return false;
            }
            true
        });
        if let Some(f) = failure {
            return Ok(Verdict::Fails(f));
        }
    }
    Ok(Verdict::Holds)
}

/// Holds iff `d⁺(v) = d⁻(v)` for every vertex; otherwise the first offender.
pub fn eulerian_check(d: &Digraph) -> Verdict<usize> {
    match (0..d.order()).find(|&v| d.out_degree(v) != d.in_degree(v)) {
        Some(v) => Verdict::Fails(v),
        None => Verdict::Holds,
    }
}

/// Exact binomial coefficient, `None` on overflow.
pub fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Integer `k ≥ t` with `C(n−1,t−1)·C(λ,t) = C(k,t)·C(λ−1,t−1)`, the degree
/// every vertex of a two-way `(t, λ)`-liking digraph of order `n` must have.
///
/// For `t = 2` this is `(n−1)λ = k(k−1)` and is solved by an integer square
/// root. For `t ≥ 3` it needs `λ ≥ t`; `C(k,t)` is strictly increasing in
/// `k ≥ t`, so an upward scan finds the unique root if there is one.
pub fn solve_degree_equation(n: usize, p: LikingParams) -> Result<Option<usize>, LikingError> {
    LikingParams::new(p.t, p.lambda)?;
    if n == 0 {
        return Err(LikingError::TooFewVertices { n, t: p.t });
    }
    let (t, lambda) = (p.t as u128, p.lambda as u128);
    if p.t == 2 {
        let rhs = (n as u128 - 1).checked_mul(lambda).ok_or(LikingError::Overflow)?;
        let disc = rhs
            .checked_mul(4)
            .and_then(|x| x.checked_add(1))
            .ok_or(LikingError::Overflow)?;
        let root = disc.isqrt();
        if root * root != disc || root % 2 == 0 {
            return Ok(None);
        }
        let k = root.div_ceil(2);
        return Ok((k >= 2).then_some(k as usize));
    }
    if p.t < 2 || p.lambda < p.t {
        return Err(LikingError::DegenerateEquation { t: p.t, lambda: p.lambda });
    }
    let lhs = binomial(n as u128 - 1, t - 1)
        .and_then(|a| a.checked_mul(binomial(lambda, t)?))
        .ok_or(LikingError::Overflow)?;
    let factor = binomial(lambda - 1, t - 1).ok_or(LikingError::Overflow)?;
    let mut k = t;
    loop {
        let rhs = binomial(k, t)
            .and_then(|c| c.checked_mul(factor))
            .ok_or(LikingError::Overflow)?;
        if rhs == lhs {
            return Ok(Some(k as usize));
        }
        if rhs > lhs {
            return Ok(None);
        }
        k += 1;
    }
}

/// A vertex at which the double count of `(X, Y)` pairs disagrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingFailure {
    pub vertex: usize,
    pub direction: Direction,
    pub closed_form: u128,
    pub expected: u128,
    pub enumerated_by_x: u128,
    pub enumerated_by_y: u128,
}

fn subsets_of(items: &[usize], size: usize, visit: &mut impl FnMut(&[usize])) {
    fn rec(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if cur.len() == size {
            visit(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, size, i + 1, cur, visit);
            cur.pop();
        }
    }
    rec(items, size, 0, &mut Vec::new(), visit);
}

/// `|S_v|` for pairs `(X, Y)`: `X` a `t`-subset of `N⁺(v)`, `Y` a
/// `(t−1)`-subset of the common in-neighbors of `X` other than `v`.
/// Counted once by fixing `X` first and once by fixing `Y` first.
fn pair_counts(d: &Digraph, v: usize, t: usize) -> (u128, u128) {
    let n = d.order();
    let out_v = d.out_neighbors(v).to_vec();
    let mut by_x: u128 = 0;
    subsets_of(&out_v, t, &mut |x| {
        let mut common = common_neighbors(d, x, Direction::In).expect("non-empty X");
        common.remove(v);
        subsets_of(&common.to_vec(), t - 1, &mut |_| by_x += 1);
    });
    let others: Vec<usize> = (0..n).filter(|&u| u != v).collect();
    let mut by_y: u128 = 0;
    subsets_of(&others, t - 1, &mut |y| {
        let mut pool = d.out_neighbors(v).clone();
        for &u in y {
            pool.intersect_with(d.out_neighbors(u));
        }
        subsets_of(&pool.to_vec(), t, &mut |x| {
            // every x in X has v and all of Y as in-neighbors
            debug_assert!(x.iter().all(|&w| d.has_arc(v, w)));
            by_y += 1;
        });
    });
    (by_x, by_y)
}

/// Double-counting audit of the degree equation on a two-way liking digraph
/// with `λ ≥ t ≥ 2`: at every vertex, `C(d⁺(v),t)·C(λ−1,t−1)` (and the same
/// with `d⁻(v)`) must equal `C(n−1,t−1)·C(λ,t)`, and an explicit enumeration
/// of the underlying `(X, Y)` pairs in both orders must give the same number.
pub fn counting_identity_check(d: &Digraph, p: LikingParams) -> Result<Verdict<CountingFailure>, LikingError> {
    if !(p.lambda >= p.t && p.t >= 2) {
        return Err(LikingError::Precondition(format!(
            "counting identity needs lambda >= t >= 2, got {p}"
        )));
    }
    if let Verdict::Fails(v) = is_two_way_liking(d, p)? {
        return Err(LikingError::Precondition(format!("not two-way {p}-liking: {v}")));
    }
    let n = d.order() as u128;
    let (t, lambda) = (p.t as u128, p.lambda as u128);
    let expected = binomial(n - 1, t - 1)
        .and_then(|a| a.checked_mul(binomial(lambda, t)?))
        .ok_or(LikingError::Overflow)?;
    let factor = binomial(lambda - 1, t - 1).ok_or(LikingError::Overflow)?;
    let converse = d.converse();
    for (dir, graph) in [(Direction::Out, d), (Direction::In, &converse)] {
        for v in 0..d.order() {
            let deg = graph.out_degree(v) as u128;
            let closed_form = binomial(deg, t)
                .and_then(|c| c.checked_mul(factor))
                .ok_or(LikingError::Overflow)?;
            let (by_x, by_y) = pair_counts(graph, v, p.t);
            if closed_form != expected || by_x != expected || by_y != expected {
                return Ok(Verdict::Fails(CountingFailure {
                    vertex: v,
                    direction: dir,
                    closed_form,
                    expected,
                    enumerated_by_x: by_x,
                    enumerated_by_y: by_y,
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// The two shapes a `(2,1)`-liking digraph can take.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Classification21 {
    /// Hub joined both ways to everything, plus disjoint directed cycles.
    /// Cycle lengths are listed by increasing smallest member.
    FancyWheel { hub: usize, cycle_lengths: Vec<usize> },
    /// `k`-diregular of order `k² − k + 1`.
    Diregular { k: usize },
    NotLiking { violation: Violation },
}

/// Cycle lengths of `d − hub` when every remaining vertex has exactly one
/// out- and one in-neighbor there.
fn wheel_cycles(d: &Digraph, hub: usize) -> Option<Vec<usize>> {
    let n = d.order();
    let mut succ = vec![usize::MAX; n];
    for v in (0..n).filter(|&v| v != hub) {
        let mut out = d.out_neighbors(v).clone();
        out.remove(hub);
        let mut inn = d.in_neighbors(v).clone();
        inn.remove(hub);
        if out.len() != 1 || inn.len() != 1 {
            return None;
        }
        succ[v] = out.iter().next()?;
    }
    let mut seen = vec![false; n];
    seen[hub] = true;
    let mut lengths = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = succ[v];
            len += 1;
        }
        if v != start {
            return None;
        }
        lengths.push(len);
    }
    Some(lengths)
}

/// Sorts a `(2,1)`-liking digraph into fancy wheel or diregular.
///
/// The complete digraph on 3 vertices is both a fancy wheel and 2-diregular
/// of order 3; it is reported as a fancy wheel with hub 0.
pub fn classify_21(d: &Digraph) -> Result<Classification21, LikingError> {
    let p = LikingParams { t: 2, lambda: 1 };
    if let Verdict::Fails(violation) = is_liking(d, p)? {
        return Ok(Classification21::NotLiking { violation });
    }
    let n = d.order();
    let hub = (0..n).find(|&v| d.out_degree(v) == n - 1 && d.in_degree(v) == n - 1);
    if let Some(hub) = hub {
        if let Some(cycle_lengths) = wheel_cycles(d, hub) {
            return Ok(Classification21::FancyWheel { hub, cycle_lengths });
        }
    }
    match d.is_diregular() {
        Some(k) if k >= 2 && n == k * k - k + 1 => Ok(Classification21::Diregular { k }),
        _ => Err(LikingError::Inconsistent(format!(
            "{d:?} is (2,1)-liking but neither a fancy wheel nor diregular of order k^2-k+1"
        ))),
    }
}
