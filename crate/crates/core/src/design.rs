//! Balanced incomplete block designs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::liking::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("a design needs at least 2 varieties (got {0})")]
    TooFewVarieties(usize),
    #[error("a design needs at least one block")]
    NoBlocks,
    #[error("variety {variety} in block {block} is outside 0..{v}")]
    VarietyOutOfRange { block: usize, variety: usize, v: usize },
    #[error("difference-set element {element} is outside 0..{modulus}")]
    BaseOutOfRange { element: usize, modulus: usize },
    #[error("a difference-set base needs at least 2 distinct elements")]
    BaseTooSmall,
    #[error("design does not verify: {0}")]
    NotVerified(DesignViolation),
    #[error("design {0} is not symmetric")]
    NotSymmetric(DesignParams),
}

/// `v` varieties `0..v` and a list of blocks, each stored sorted.
/// Repeated blocks are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Design {
    v: usize,
    blocks: Vec<Vec<usize>>,
}

/// The five parameters `(b, v, r, k, λ)` of a verified design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DesignParams {
    pub b: usize,
    pub v: usize,
    pub r: usize,
    pub k: usize,
    pub lambda: usize,
}

impl DesignParams {
    pub fn is_symmetric(&self) -> bool {
        self.b == self.v && self.r == self.k
    }

    pub fn is_incomplete(&self) -> bool {
        self.k < self.v
    }
}

impl std::fmt::Display for DesignParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{},{})", self.b, self.v, self.r, self.k, self.lambda)
    }
}

/// First condition a block system fails, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DesignViolation {
    BlockSize { block: usize, size: usize, expected: usize },
    Replication { variety: usize, count: usize, expected: usize },
    PairCount { pair: (usize, usize), count: usize, expected: usize },
    ZeroParameter { parameter: char },
}

impl std::fmt::Display for DesignViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DesignViolation::BlockSize { block, size, expected } => {
                write!(f, "block {block} has {size} varieties, expected {expected}")
            }
            DesignViolation::Replication { variety, count, expected } => {
                write!(f, "variety {variety} lies in {count} blocks, expected {expected}")
            }
            DesignViolation::PairCount { pair, count, expected } => {
                write!(f, "pair {pair:?} lies in {count} blocks, expected {expected}")
            }
            DesignViolation::ZeroParameter { parameter } => write!(f, "parameter {parameter} is 0"),
        }
    }
}

impl std::error::Error for DesignViolation {}

impl Design {
    pub fn new(v: usize, blocks: Vec<Vec<usize>>) -> Result<Self, DesignError> {
        if v < 2 {
            return Err(DesignError::TooFewVarieties(v));
        }
        if blocks.is_empty() {
            return Err(DesignError::NoBlocks);
        }
        let mut sorted = Vec::with_capacity(blocks.len());
        for (i, mut block) in blocks.into_iter().enumerate() {
            if let Some(&variety) = block.iter().find(|&&x| x >= v) {
                return Err(DesignError::VarietyOutOfRange { block: i, variety, v });
            }
            block.sort_unstable();
            block.dedup();
            sorted.push(block);
        }
        Ok(Design { v, blocks: sorted })
    }

    pub fn varieties(&self) -> usize {
        self.v
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Equality up to block order.
    pub fn same_blocks(&self, other: &Design) -> bool {
        let mut a = self.blocks.clone();
        let mut b = other.blocks.clone();
        a.sort();
        b.sort();
        self.v == other.v && a == b
    }
}

/// Checks uniform block size `k`, uniform replication `r` and uniform pair
/// count `λ`, each positive. `k`, `r` and `λ` are read off block 0, variety 0
/// and pair `(0,1)`; every other block, variety and pair is compared against
/// them in order.
pub fn verify_design(d: &Design) -> Result<DesignParams, DesignViolation> {
    let v = d.v;
    let b = d.blocks.len();
    let k = d.blocks[0].len();
    if let Some((block, size)) = d
        .blocks
        .iter()
        .map(Vec::len)
        .enumerate()
        .find(|&(_, s)| s != k)
    {
        return Err(DesignViolation::BlockSize { block, size, expected: k });
    }
    if k == 0 {
        return Err(DesignViolation::ZeroParameter { parameter: 'k' });
    }

    let mut replication = vec![0usize; v];
    let mut pairs = vec![0usize; v * v];
    for block in &d.blocks {
        for (i, &x) in block.iter().enumerate() {
            replication[x] += 1;
            for &y in &block[i + 1..] {
                pairs[x * v + y] += 1;
            }
        }
    }
    let r = replication[0];
    if let Some(variety) = (0..v).find(|&x| replication[x] != r) {
        return Err(DesignViolation::Replication {
            variety,
            count: replication[variety],
            expected: r,
        });
    }
    if r == 0 {
        return Err(DesignViolation::ZeroParameter { parameter: 'r' });
    }
    let lambda = pairs[1];
    for x in 0..v {
        for y in x + 1..v {
            let count = pairs[x * v + y];
            if count != lambda {
                return Err(DesignViolation::PairCount {
                    pair: (x, y),
                    count,
                    expected: lambda,
                });
            }
        }
    }
    if lambda == 0 {
        return Err(DesignViolation::ZeroParameter { parameter: 'λ' });
    }
    Ok(DesignParams { b, v, r, k, lambda })
}

/// `verify_design` plus the symmetric (`b = v`, `r = k`) requirement.
pub fn verify_symmetric(d: &Design) -> Result<DesignParams, DesignError> {
    let params = verify_design(d).map_err(DesignError::NotVerified)?;
    if !params.is_symmetric() {
        return Err(DesignError::NotSymmetric(params));
    }
    Ok(params)
}

/// Holds iff every two blocks meet in exactly `lambda` varieties; otherwise
/// the first block pair `(i, j, |Bᵢ ∩ Bⱼ|)` that does not.
pub fn block_intersection_check(
    d: &Design,
    lambda: usize,
) -> Result<Verdict<(usize, usize, usize)>, DesignError> {
    verify_symmetric(d)?;
    let sets: Vec<Vec<bool>> = d
        .blocks
        .iter()
        .map(|b| {
            let mut mask = vec![false; d.v];
            b.iter().for_each(|&x| mask[x] = true);
            mask
        })
        .collect();
    for (i, mask) in sets.iter().enumerate() {
        for j in i + 1..d.blocks.len() {
            let meet = d.blocks[j].iter().filter(|&&x| mask[x]).count();
            if meet != lambda {
                return Ok(Verdict::Fails((i, j, meet)));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Cyclic development of `base` modulo `modulus`: block `t` is
/// `{(d + t) mod modulus : d ∈ base}` for `t = 0..modulus`. No verification.
pub fn design_from_difference_set(modulus: usize, base: &[usize]) -> Result<Design, DesignError> {
    if let Some(&element) = base.iter().find(|&&x| x >= modulus) {
        return Err(DesignError::BaseOutOfRange { element, modulus });
    }
    let mut base = base.to_vec();
    base.sort_unstable();
    base.dedup();
    if base.len() < 2 {
        return Err(DesignError::BaseTooSmall);
    }
    let blocks = (0..modulus)
        .map(|t| base.iter().map(|&x| (x + t) % modulus).collect())
        .collect();
    Design::new(modulus, blocks)
}

/// Replaces every block by its complement in `0..v`, keeping block order.
pub fn complement_design(d: &Design) -> Result<Design, DesignError> {
    verify_design(d).map_err(DesignError::NotVerified)?;
    Ok(complement_blocks(d))
}

pub(crate) fn complement_blocks(d: &Design) -> Design {
    let blocks = d
        .blocks
        .iter()
        .map(|b| (0..d.v).filter(|x| b.binary_search(x).is_err()).collect())
        .collect();
    Design { v: d.v, blocks }
}

/// Standard symmetric designs used throughout the tests and examples.
pub mod fixtures {
    use super::*;

    /// `(7,3,1)`: the Fano plane, developed from `{1,2,4}` mod 7.
    pub fn fano() -> Design {
        design_from_difference_set(7, &[1, 2, 4]).expect("valid base")
    }

    /// `(7,4,2)`: complement of the Fano plane.
    pub fn fano_complement() -> Design {
        complement_design(&fano()).expect("fano verifies")
    }

    /// `(11,5,2)` biplane from the quadratic residues mod 11.
    pub fn biplane_11() -> Design {
        design_from_difference_set(11, &[1, 3, 4, 5, 9]).expect("valid base")
    }

    /// `(13,4,1)`: projective plane of order 3.
    pub fn projective_plane_13() -> Design {
        design_from_difference_set(13, &[0, 1, 3, 9]).expect("valid base")
    }

    /// All four, in increasing order of `(v, k)`.
    pub fn all() -> Vec<(&'static str, Design)> {
        vec![
            ("fano", fano()),
            ("fano-complement", fano_complement()),
            ("biplane-11", biplane_11()),
            ("plane-13", projective_plane_13()),
        ]
    }
}
