//! Immutable loopless digraphs on vertices `0..n`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("a digraph needs at least one vertex")]
    NoVertices,
    #[error("loop arc ({0},{0})")]
    Loop(usize),
    #[error("arc ({u},{v}) has an endpoint outside 0..{n}")]
    OutOfRange { u: usize, v: usize, n: usize },
    #[error("cycle length {0} is below 2")]
    ShortCycle(usize),
    #[error("a fancy wheel needs at least one cycle")]
    NoCycles,
}

/// A loopless digraph with dense out- and in-neighbor bitsets.
///
/// Values are immutable once built; use [`DigraphBuilder`] or the
/// generators to make new ones.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "ArcList", try_from = "ArcList")]
pub struct Digraph {
    n: usize,
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
}

/// Serialized shape of a [`Digraph`]: order plus sorted arc list.
#[derive(Serialize, Deserialize)]
struct ArcList {
    n: usize,
    arcs: Vec<(usize, usize)>,
}

impl From<Digraph> for ArcList {
    fn from(d: Digraph) -> Self {
        ArcList { n: d.n, arcs: d.arcs() }
    }
}

impl TryFrom<ArcList> for Digraph {
    type Error = DigraphError;

    fn try_from(a: ArcList) -> Result<Self, Self::Error> {
        Digraph::new(a.n, &a.arcs)
    }
}

/// Mutable staging area for a [`Digraph`].
#[derive(Debug, Clone)]
pub struct DigraphBuilder {
    n: usize,
    out: Vec<VertexSet>,
}

impl DigraphBuilder {
    pub fn new(n: usize) -> Result<Self, DigraphError> {
        if n == 0 {
            return Err(DigraphError::NoVertices);
        }
        Ok(DigraphBuilder {
            n,
            out: vec![VertexSet::empty(n); n],
        })
    }

    /// Adds the arc `u -> v`; repeated arcs collapse.
    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<&mut Self, DigraphError> {
        if u >= self.n || v >= self.n {
            return Err(DigraphError::OutOfRange { u, v, n: self.n });
        }
        if u == v {
            return Err(DigraphError::Loop(u));
        }
        self.out[u].insert(v);
        Ok(self)
    }

    pub fn build(self) -> Digraph {
        Digraph::from_out_sets(self.out)
    }
}

impl Digraph {
    /// The digraph on `n` vertices with exactly the listed arcs.
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Self, DigraphError> {
        let mut b = DigraphBuilder::new(n)?;
        for &(u, v) in arcs {
            b.add_arc(u, v)?;
        }
        Ok(b.build())
    }

    fn from_out_sets(out: Vec<VertexSet>) -> Self {
        let n = out.len();
        let mut inn = vec![VertexSet::empty(n); n];
        for (u, set) in out.iter().enumerate() {
            debug_assert!(!set.contains(u));
            for v in set.iter() {
                inn[v].insert(u);
            }
        }
        Digraph { n, out, inn }
    }

    /// Builds from per-vertex out-neighbor bitmasks (bit `v` of `rows[u]`
    /// set iff `u -> v`). Only valid for `n <= 64`.
    pub fn from_rows(rows: &[u64]) -> Result<Self, DigraphError> {
        let n = rows.len();
        if n == 0 {
            return Err(DigraphError::NoVertices);
        }
        let mut b = DigraphBuilder::new(n)?;
        for (u, &row) in rows.iter().enumerate() {
            if n < 64 && row >> n != 0 {
                let v = 63 - row.leading_zeros() as usize;
                return Err(DigraphError::OutOfRange { u, v, n });
            }
            let mut bits = row;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                b.add_arc(u, v)?;
            }
        }
        Ok(b.build())
    }

    /// Out-neighbor bitmasks, the inverse of [`Digraph::from_rows`].
    pub fn rows(&self) -> Vec<u64> {
        assert!(self.n <= 64, "row masks need n <= 64");
        self.out
            .iter()
            .map(|s| s.iter().fold(0u64, |m, v| m | 1 << v))
            .collect()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out[u].contains(v)
    }

    pub fn out_neighbors(&self, v: usize) -> &VertexSet {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &VertexSet {
        &self.inn[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(VertexSet::len).sum()
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.out[u].iter().map(move |v| (u, v)))
            .collect()
    }

    pub fn min_out_degree(&self) -> usize {
        (0..self.n).map(|v| self.out_degree(v)).min().unwrap_or(0)
    }

    /// Every arc reversed.
    pub fn converse(&self) -> Digraph {
        Digraph {
            n: self.n,
            out: self.inn.clone(),
            inn: self.out.clone(),
        }
    }

    /// Arcs of the complete digraph that are missing from `self`.
    pub fn complement(&self) -> Digraph {
        let out = (0..self.n)
            .map(|u| {
                let mut s = self.out[u].complement();
                s.remove(u);
                s
            })
            .collect();
        Digraph::from_out_sets(out)
    }

    /// Renames vertex `v` to `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.n);
        let mut out = vec![VertexSet::empty(self.n); self.n];
        for (u, v) in self.arcs() {
            out[perm[u]].insert(perm[v]);
        }
        Digraph::from_out_sets(out)
    }

    /// `Some(k)` when every vertex has out-degree and in-degree `k > 0`.
    pub fn is_diregular(&self) -> Option<usize> {
        let k = self.out_degree(0);
        (k > 0 && (0..self.n).all(|v| self.out_degree(v) == k && self.in_degree(v) == k)).then_some(k)
    }

    /// Whether the underlying undirected graph is connected.
    pub fn is_weakly_connected(&self) -> bool {
        let mut seen = VertexSet::empty(self.n);
        let mut stack = vec![0];
        seen.insert(0);
        while let Some(u) = stack.pop() {
            for v in self.out[u].iter().chain(self.inn[u].iter()) {
                if !seen.contains(v) {
                    seen.insert(v);
                    stack.push(v);
                }
            }
        }
        seen.len() == self.n
    }

    /// Graphviz rendering, structure only.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph {\n");
        for v in 0..self.n {
            let _ = writeln!(s, "  {v};");
        }
        for (u, v) in self.arcs() {
            let _ = writeln!(s, "  {u} -> {v};");
        }
        s.push_str("}\n");
        s
    }
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph({}, {:?})", self.n, self.arcs())
    }
}

pub fn complete_digraph(n: usize) -> Result<Digraph, DigraphError> {
    let out = (0..n)
        .map(|u| {
            let mut s = VertexSet::full(n);
            s.remove(u);
            s
        })
        .collect::<Vec<_>>();
    if out.is_empty() {
        return Err(DigraphError::NoVertices);
    }
    Ok(Digraph::from_out_sets(out))
}

/// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
pub fn directed_cycle(n: usize) -> Result<Digraph, DigraphError> {
    if n < 2 {
        return Err(DigraphError::ShortCycle(n));
    }
    let arcs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Digraph::new(n, &arcs)
}

/// Disjoint directed cycles of the given lengths plus a hub joined both
/// ways to every cycle vertex. The hub is vertex 0; cycles follow
/// consecutively, each oriented by increasing label.
pub fn fancy_wheel(cycle_lengths: &[usize]) -> Result<Digraph, DigraphError> {
    if cycle_lengths.is_empty() {
        return Err(DigraphError::NoCycles);
    }
    if let Some(&bad) = cycle_lengths.iter().find(|&&l| l < 2) {
        return Err(DigraphError::ShortCycle(bad));
    }
    let n = 1 + cycle_lengths.iter().sum::<usize>();
    let mut b = DigraphBuilder::new(n)?;
    let mut start = 1;
    for &len in cycle_lengths {
        for i in 0..len {
            let u = start + i;
            let v = start + (i + 1) % len;
            b.add_arc(u, v)?;
            b.add_arc(0, u)?;
            b.add_arc(u, 0)?;
        }
        start += len;
    }
    Ok(b.build())
}

/// Replaces each undirected edge `{u,v}` with the digon `u <-> v`.
pub fn double_cycle_cover(edges: &[(usize, usize)], n: usize) -> Result<Digraph, DigraphError> {
    let mut b = DigraphBuilder::new(n)?;
    for &(u, v) in edges {
        b.add_arc(u, v)?;
        b.add_arc(v, u)?;
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_examples() {
        let digon = Digraph::new(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(digon, complete_digraph(2).unwrap());
        let empty = Digraph::new(3, &[]).unwrap();
        assert_eq!(empty.arc_count(), 0);
        assert_eq!(Digraph::new(3, &[(0, 0)]), Err(DigraphError::Loop(0)));
        assert!(matches!(
            Digraph::new(3, &[(0, 3)]),
            Err(DigraphError::OutOfRange { .. })
        ));
        assert_eq!(Digraph::new(0, &[]), Err(DigraphError::NoVertices));
    }

    #[test]
    fn duplicates_collapse() {
        let d = Digraph::new(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(d.arc_count(), 1);
    }

    #[test]
    fn converse_examples() {
        let c3 = directed_cycle(3).unwrap();
        assert_eq!(c3.converse(), Digraph::new(3, &[(0, 2), (2, 1), (1, 0)]).unwrap());
        let k4 = complete_digraph(4).unwrap();
        assert_eq!(k4.converse(), k4);
    }

    #[test]
    fn complement_examples() {
        let empty = Digraph::new(3, &[]).unwrap();
        assert_eq!(empty.complement(), complete_digraph(3).unwrap());
        assert_eq!(complete_digraph(5).unwrap().complement().arc_count(), 0);
        let arc = Digraph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(arc.complement(), Digraph::new(2, &[(1, 0)]).unwrap());
    }

    #[test]
    fn complete_digraph_sizes() {
        assert_eq!(complete_digraph(4).unwrap().arc_count(), 12);
        assert_eq!(complete_digraph(1).unwrap().arc_count(), 0);
        assert_eq!(complete_digraph(0), Err(DigraphError::NoVertices));
    }

    #[test]
    fn fancy_wheel_shapes() {
        assert_eq!(fancy_wheel(&[2]).unwrap(), complete_digraph(3).unwrap());
        let w = fancy_wheel(&[3, 2]).unwrap();
        assert_eq!(w.order(), 6);
        assert_eq!(w.out_degree(0), 5);
        assert_eq!(w.in_degree(0), 5);
        for v in 1..6 {
            assert_eq!((w.out_degree(v), w.in_degree(v)), (2, 2));
        }
        assert!(w.has_arc(3, 1) && w.has_arc(4, 5) && w.has_arc(5, 4));
        assert_eq!(fancy_wheel(&[3, 1]), Err(DigraphError::ShortCycle(1)));
        assert_eq!(fancy_wheel(&[]), Err(DigraphError::NoCycles));
    }

    #[test]
    fn double_cycle_cover_examples() {
        let tri = double_cycle_cover(&[(0, 1), (1, 2), (0, 2)], 3).unwrap();
        assert_eq!(tri, complete_digraph(3).unwrap());
        let path = double_cycle_cover(&[(0, 1), (1, 2)], 3).unwrap();
        assert_eq!(path.arc_count(), 4);
        assert_eq!(double_cycle_cover(&[(1, 1)], 3), Err(DigraphError::Loop(1)));
    }

    #[test]
    fn diregularity() {
        assert_eq!(complete_digraph(5).unwrap().is_diregular(), Some(4));
        assert_eq!(Digraph::new(2, &[(0, 1)]).unwrap().is_diregular(), None);
        assert_eq!(directed_cycle(5).unwrap().is_diregular(), Some(1));
        assert_eq!(Digraph::new(3, &[]).unwrap().is_diregular(), None);
    }

    #[test]
    fn weak_connectivity() {
        assert!(!complete_digraph(4).unwrap().complement().is_weakly_connected());
        assert!(Digraph::new(3, &[(0, 1), (1, 2)]).unwrap().is_weakly_connected());
        let two_digons = double_cycle_cover(&[(0, 1), (2, 3)], 4).unwrap();
        assert!(!two_digons.is_weakly_connected());
        assert!(Digraph::new(1, &[]).unwrap().is_weakly_connected());
    }

    #[test]
    fn rows_round_trip() {
        let w = fancy_wheel(&[3, 2]).unwrap();
        assert_eq!(Digraph::from_rows(&w.rows()).unwrap(), w);
        assert_eq!(Digraph::from_rows(&[0b1]), Err(DigraphError::Loop(0)));
        assert!(matches!(
            Digraph::from_rows(&[0b100, 0]),
            Err(DigraphError::OutOfRange { .. })
        ));
    }

    #[test]
    fn relabel_is_isomorphic_copy() {
        let w = fancy_wheel(&[3]).unwrap();
        let r = w.relabel(&[3, 2, 1, 0]);
        assert_eq!(r.out_degree(3), 3);
        assert!(r.has_arc(2, 1));
    }
}
