//! Bridges between symmetric designs and two-way `(2, λ)`-liking digraphs.
//!
//! Design to digraph: pick an SDR `r₀..r_{n−1}` of the block complements and
//! add an arc `x -> rᵢ` for every `x ∈ Bᵢ`. Vertex `rᵢ` then has in-neighborhood
//! `Bᵢ`, so common in-neighborhoods are block intersections and common
//! out-neighborhoods count the blocks through a pair. Digraph to design is the
//! reverse reading: the blocks are the in-neighborhoods `N⁻(w)`.

use thiserror::Error;

use crate::design::{verify_design, verify_symmetric, Design, DesignError, DesignParams};
use crate::digraph::{Digraph, DigraphBuilder};
use crate::liking::{is_liking, is_two_way_liking, LikingError, LikingParams, Verdict};
use crate::matching::{all_sdrs, block_complement_family, sdr, MatchingError, SdrOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error(transparent)]
    Liking(#[from] LikingError),
    #[error("order {n} is below 2*lambda = {}", 2 * lambda)]
    OrderBelowTwiceLambda { n: usize, lambda: usize },
    #[error("block complements have no SDR; Hall violator {0:?}")]
    NoSdr(Vec<usize>),
    #[error("representatives {0:?} are not an SDR of the block complements")]
    BadRepresentatives(Vec<usize>),
    #[error("digraph is not diregular")]
    NotDiregular,
    #[error("no positive integer lambda with (n-1)*lambda = k(k-1) for n={n}, k={k}")]
    NoLambda { n: usize, k: usize },
    #[error("digraph is not (2,{lambda})-liking: {violation}")]
    NotLiking { lambda: usize, violation: String },
    #[error("construction invariant broken: {0}")]
    Invariant(String),
}

/// Result of [`design_to_digraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub digraph: Digraph,
    pub params: DesignParams,
    /// `representatives[i]` is the head of every arc leaving block `i`.
    pub representatives: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructOptions {
    /// Re-check looplessness, diregularity and the two-way property.
    pub verify: bool,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions { verify: true }
    }
}

fn checked_params(d: &Design) -> Result<DesignParams, ConstructionError> {
    let params = verify_symmetric(d)?;
    if params.v < 2 * params.lambda {
        return Err(ConstructionError::OrderBelowTwiceLambda {
            n: params.v,
            lambda: params.lambda,
        });
    }
    Ok(params)
}

fn assemble(
    d: &Design,
    params: DesignParams,
    representatives: &[usize],
    opts: ConstructOptions,
) -> Result<Digraph, ConstructionError> {
    let n = params.v;
    let mut used = vec![false; n];
    let valid = representatives.len() == d.blocks().len()
        && representatives.iter().zip(d.blocks()).all(|(&r, b)| {
            let fresh = r < n && !used[r] && b.binary_search(&r).is_err();
            if fresh {
                used[r] = true;
            }
            fresh
        });
    if !valid {
        return Err(ConstructionError::BadRepresentatives(representatives.to_vec()));
    }
    let mut builder = DigraphBuilder::new(n).map_err(|e| ConstructionError::Invariant(e.to_string()))?;
    for (block, &head) in d.blocks().iter().zip(representatives) {
        for &tail in block {
            builder
                .add_arc(tail, head)
                .map_err(|e| ConstructionError::Invariant(e.to_string()))?;
        }
    }
    let digraph = builder.build();
    if opts.verify {
        if digraph.is_diregular() != Some(params.k) {
            return Err(ConstructionError::Invariant(format!(
                "output is not {}-diregular",
                params.k
            )));
        }
        let p = LikingParams::new(2, params.lambda)?;
        if let Verdict::Fails(v) = is_two_way_liking(&digraph, p)? {
            return Err(ConstructionError::Invariant(format!(
                "output is not two-way {p}-liking: {v}"
            )));
        }
    }
    Ok(digraph)
}

/// A `k`-diregular two-way `(2, λ)`-liking digraph of order `n` from an
/// `(n, k, λ)` symmetric design with `n ≥ 2λ`, using the deterministic SDR
/// from [`sdr`].
pub fn design_to_digraph(d: &Design) -> Result<Construction, ConstructionError> {
    design_to_digraph_with(d, ConstructOptions::default())
}

pub fn design_to_digraph_with(d: &Design, opts: ConstructOptions) -> Result<Construction, ConstructionError> {
    let params = checked_params(d)?;
    let family = block_complement_family(d)?;
    let representatives = match sdr(&family) {
        SdrOutcome::Representatives(r) => r,
        SdrOutcome::HallViolator(s) => return Err(ConstructionError::NoSdr(s)),
    };
    let digraph = assemble(d, params, &representatives, opts)?;
    Ok(Construction {
        digraph,
        params,
        representatives,
    })
}

/// The construction for a caller-supplied SDR.
pub fn design_to_digraph_from_sdr(
    d: &Design,
    representatives: &[usize],
    opts: ConstructOptions,
) -> Result<Construction, ConstructionError> {
    let params = checked_params(d)?;
    let digraph = assemble(d, params, representatives, opts)?;
    Ok(Construction {
        digraph,
        params,
        representatives: representatives.to_vec(),
    })
}

/// One construction per SDR of the block complements (designs with at most
/// 8 blocks), in lexicographic SDR order.
pub fn design_to_digraphs_all_sdrs(
    d: &Design,
    opts: ConstructOptions,
) -> Result<Vec<Construction>, ConstructionError> {
    let params = checked_params(d)?;
    let family = block_complement_family(d)?;
    all_sdrs(&family)?
        .into_iter()
        .map(|reps| {
            let digraph = assemble(d, params, &reps, opts)?;
            Ok(Construction {
                digraph,
                params,
                representatives: reps,
            })
        })
        .collect()
}

/// An `(n, k, λ)` symmetric design from a `k`-diregular `(2, λ)`-liking
/// digraph, where `λ = k(k−1)/(n−1)`. Block `w` is `N⁻(w)`.
pub fn digraph_to_design(d: &Digraph) -> Result<Design, ConstructionError> {
    let n = d.order();
    let k = match d.is_diregular() {
        Some(k) if k > 0 && n >= 2 => k,
        _ => return Err(ConstructionError::NotDiregular),
    };
    let pairs = k * (k - 1);
    if pairs == 0 || pairs % (n - 1) != 0 {
        return Err(ConstructionError::NoLambda { n, k });
    }
    let lambda = pairs / (n - 1);
    if let Verdict::Fails(v) = is_liking(d, LikingParams::new(2, lambda)?)? {
        return Err(ConstructionError::NotLiking {
            lambda,
            violation: v.to_string(),
        });
    }
    let blocks = (0..n).map(|w| d.in_neighbors(w).to_vec()).collect();
    let design = Design::new(n, blocks)?;
    let expected = DesignParams { b: n, v: n, r: k, k, lambda };
    match verify_design(&design) {
        Ok(p) if p == expected => Ok(design),
        Ok(p) => Err(ConstructionError::Invariant(format!(
            "regenerated design has parameters {p}, expected {expected}"
        ))),
        Err(v) => Err(ConstructionError::Invariant(format!("regenerated design fails: {v}"))),
    }
}
