//! Systems of distinct representatives via bipartite matching.
//!
//! A family `A₀..A_{n−1}` over ground `0..m` has an SDR iff Hall's condition
//! holds: every `k` of the sets together contain at least `k` elements.
//! [`sdr`] either returns representatives or a Hall violator as a
//! certificate. Set indices are 0-based throughout.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::design::{verify_symmetric, Design, DesignError};

/// Largest family the exhaustive Hall checker accepts (`2^20` subsets).
pub const EXHAUSTIVE_HALL_LIMIT: usize = 20;
/// Largest family [`all_sdrs`] enumerates.
pub const ALL_SDRS_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("element {element} of set {set} is outside 0..{ground}")]
    ElementOutOfRange { set: usize, element: usize, ground: usize },
    #[error("family of {n} sets exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Design(#[from] DesignError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFamily {
    ground: usize,
    sets: Vec<Vec<usize>>,
}

impl SetFamily {
    pub fn new(ground: usize, sets: Vec<Vec<usize>>) -> Result<Self, MatchingError> {
        let mut sorted = Vec::with_capacity(sets.len());
        for (i, mut s) in sets.into_iter().enumerate() {
            if let Some(&element) = s.iter().find(|&&x| x >= ground) {
                return Err(MatchingError::ElementOutOfRange { set: i, element, ground });
            }
            s.sort_unstable();
            s.dedup();
            sorted.push(s);
        }
        Ok(SetFamily { ground, sets: sorted })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// `|∪_{i ∈ indices} Aᵢ|`.
    pub fn union_size(&self, indices: &[usize]) -> usize {
        let mut seen = vec![false; self.ground];
        for &i in indices {
            for &x in &self.sets[i] {
                seen[x] = true;
            }
        }
        seen.into_iter().filter(|&b| b).count()
    }
}

/// A matching from set indices to ground elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub set_to_element: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.set_to_element.iter().flatten().count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SdrOutcome {
    /// `representatives[i] ∈ Aᵢ`, pairwise distinct.
    Representatives(Vec<usize>),
    /// Indices `S` with `|∪_{i∈S} Aᵢ| < |S|`, sorted.
    HallViolator(Vec<usize>),
}

struct Kuhn<'a> {
    family: &'a SetFamily,
    element_owner: Vec<Option<usize>>,
    set_match: Vec<Option<usize>>,
    visited: Vec<bool>,
}

impl<'a> Kuhn<'a> {
    fn new(family: &'a SetFamily) -> Self {
        Kuhn {
            family,
            element_owner: vec![None; family.ground],
            set_match: vec![None; family.len()],
            visited: vec![false; family.ground],
        }
    }

    fn augment(&mut self, set: usize) -> bool {
        for idx in 0..self.family.sets[set].len() {
            let x = self.family.sets[set][idx];
            if self.visited[x] {
                continue;
            }
            self.visited[x] = true;
            let free = match self.element_owner[x] {
                None => true,
                Some(other) => self.augment(other),
            };
            if free {
                self.element_owner[x] = Some(set);
                self.set_match[set] = Some(x);
                return true;
            }
        }
        false
    }

    fn run(mut self) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
        for i in 0..self.family.len() {
            self.visited.iter_mut().for_each(|v| *v = false);
            self.augment(i);
        }
        (self.set_match, self.element_owner)
    }
}

/// Maximum-cardinality matching by repeated augmenting-path search, sets in
/// increasing index order and candidate elements in increasing label order.
pub fn max_bipartite_matching(family: &SetFamily) -> Matching {
    let (set_to_element, _) = Kuhn::new(family).run();
    Matching { set_to_element }
}

/// Representatives if the maximum matching saturates every set; otherwise
/// the set indices reachable by alternating paths from the lowest unmatched
/// index, whose union is one element short.
pub fn sdr(family: &SetFamily) -> SdrOutcome {
    let (set_match, element_owner) = Kuhn::new(family).run();
    let Some(root) = set_match.iter().position(Option::is_none) else {
        return SdrOutcome::Representatives(set_match.into_iter().flatten().collect());
    };
    let mut in_s = vec![false; family.len()];
    let mut seen_element = vec![false; family.ground];
    let mut stack = vec![root];
    in_s[root] = true;
    while let Some(i) = stack.pop() {
        for &x in &family.sets[i] {
            if seen_element[x] {
                continue;
            }
            seen_element[x] = true;
            // x must be matched: otherwise root would have an augmenting path
            let owner = element_owner[x].expect("maximum matching leaves no augmenting path");
            if !in_s[owner] {
                in_s[owner] = true;
                stack.push(owner);
            }
        }
    }
    SdrOutcome::HallViolator((0..family.len()).filter(|&i| in_s[i]).collect())
}

/// Checks Hall's condition over every nonempty subfamily, in increasing
/// bitmask order, and returns the first violator. Test oracle only.
pub fn exhaustive_hall_check(family: &SetFamily) -> Result<Option<Vec<usize>>, MatchingError> {
    let n = family.len();
    if n > EXHAUSTIVE_HALL_LIMIT {
        return Err(MatchingError::TooLarge { n, limit: EXHAUSTIVE_HALL_LIMIT });
    }
    for mask in 1u32..(1 << n) {
        let indices: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if family.union_size(&indices) < indices.len() {
            return Ok(Some(indices));
        }
    }
    Ok(None)
}

/// Every SDR, in lexicographic order of the representative sequence.
pub fn all_sdrs(family: &SetFamily) -> Result<Vec<Vec<usize>>, MatchingError> {
    let n = family.len();
    if n > ALL_SDRS_LIMIT {
        return Err(MatchingError::TooLarge { n, limit: ALL_SDRS_LIMIT });
    }
    fn rec(f: &SetFamily, i: usize, used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == f.len() {
            out.push(cur.clone());
            return;
        }
        for &x in &f.sets[i] {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(f, i + 1, used, cur, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(family, 0, &mut vec![false; family.ground], &mut Vec::new(), &mut out);
    Ok(out)
}

/// `Aᵢ = {0..v} ∖ Bᵢ`, in block order, for a symmetric design.
pub fn block_complement_family(d: &Design) -> Result<SetFamily, MatchingError> {
    verify_symmetric(d)?;
    let c = crate::design::complement_blocks(d);
    SetFamily::new(d.varieties(), c.blocks().to_vec())
}
