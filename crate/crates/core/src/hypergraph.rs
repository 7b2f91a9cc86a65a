//! Hypergraphs, vertex colorings, and the 1-intersection graph.
//!
//! Vertices are the ids `0..n`. Every hyperedge is stored as a sorted,
//! duplicate-free list of vertex ids with at least two elements. Edges are
//! identified by their index in the (deduplicated) input order, and every
//! derived structure in this crate refers to edges by that index.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while building a [`Hypergraph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("edge {edge} has {distinct} distinct vertices; hyperedges must have at least 2")]
    EdgeTooSmall { edge: usize, distinct: usize },
    #[error("edge {edge} uses vertex {vertex}, but the vertex count is {n}")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
}

/// A finite hypergraph on the vertex set `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Builds a hypergraph from raw vertex lists.
    ///
    /// Each edge is sorted and stripped of repeated vertices. Edges that are
    /// equal as sets to an earlier edge are dropped with a warning, keeping the
    /// first occurrence, so edge indices follow first-occurrence order.
    pub fn new<E>(n: usize, raw_edges: impl IntoIterator<Item = E>) -> Result<Self, HypergraphError>
    where
        E: AsRef<[usize]>,
    {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut edges = Vec::new();
        let mut dropped = 0usize;
        for (idx, raw) in raw_edges.into_iter().enumerate() {
            let mut edge = raw.as_ref().to_vec();
            edge.sort_unstable();
            edge.dedup();
            if let Some(&vertex) = edge.last().filter(|&&v| v >= n) {
                return Err(HypergraphError::VertexOutOfRange { edge: idx, vertex, n });
            }
            if edge.len() < 2 {
                return Err(HypergraphError::EdgeTooSmall { edge: idx, distinct: edge.len() });
            }
            if seen.insert(edge.clone()) {
                edges.push(edge);
            } else {
                dropped += 1;
            }
        }
        if dropped > 0 {
            log::warn!("dropped {dropped} duplicate hyperedge(s)");
        }
        Ok(Hypergraph { n, edges })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of hyperedges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> &[usize] {
        &self.edges[idx]
    }

    /// Smallest edge size, or `None` for an edgeless hypergraph.
    pub fn min_edge_size(&self) -> Option<usize> {
        self.edges.iter().map(Vec::len).min()
    }

    /// For every vertex, the ascending list of edges containing it.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (e, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                inc[v].push(e);
            }
        }
        inc
    }

    /// The spanning sub-hypergraph keeping only the listed edges, in the
    /// order given.
    pub fn sub_hypergraph(&self, edge_indices: &[usize]) -> Hypergraph {
        Hypergraph {
            n: self.n,
            edges: edge_indices.iter().map(|&e| self.edges[e].clone()).collect(),
        }
    }
}

/// Size of the intersection of two sorted lists, saturating at 2.
pub(crate) fn intersection_size_capped(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                if count == 2 {
                    return 2;
                }
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// A simple undirected graph on `0..m`.
///
/// When produced by [`IntersectionGraph::of`], vertex `i` is hyperedge `i`
/// and `i ~ j` iff the two hyperedges share exactly one vertex. The exact
/// solvers accept any simple graph in this form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionGraph {
    adjacency: Vec<Vec<usize>>,
}

impl IntersectionGraph {
    /// The 1-intersection graph of `h`.
    pub fn of(h: &Hypergraph) -> Self {
        let m = h.m();
        let mut adjacency = vec![Vec::new(); m];
        for i in 0..m {
            for j in (i + 1)..m {
                if intersection_size_capped(h.edge(i), h.edge(j)) == 1 {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        IntersectionGraph { adjacency }
    }

    /// Builds a graph from an edge list, ignoring loops and repeated pairs.
    ///
    /// # Panics
    ///
    /// Panics if an endpoint is `>= m`.
    pub fn from_edges(m: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); m];
        for (a, b) in pairs {
            assert!(a < m && b < m, "endpoint out of range");
            if a != b {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        IntersectionGraph { adjacency }
    }

    /// Number of vertices (hyperedges of the source hypergraph).
    pub fn m(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// All adjacent pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (a, list) in self.adjacency.iter().enumerate() {
            out.extend(list.iter().filter(|&&b| b > a).map(|&b| (a, b)));
        }
        out
    }
}

/// A total assignment of colors to the vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexColoring {
    colors: Vec<usize>,
}

impl VertexColoring {
    pub fn new(colors: Vec<usize>) -> Self {
        VertexColoring { colors }
    }

    pub fn uniform(n: usize, color: usize) -> Self {
        VertexColoring { colors: vec![color; n] }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// `1 + max color`, or 0 when there are no vertices. Color indices need
    /// not be contiguous, so this is an upper bound on the distinct colors.
    pub fn k(&self) -> usize {
        self.colors.iter().max().map_or(0, |&c| c + 1)
    }

    /// Number of distinct colors actually used.
    pub fn distinct_colors(&self) -> usize {
        let mut seen: Vec<usize> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

/// An assignment of classes to the vertices of an [`IntersectionGraph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeClassColoring {
    classes: Vec<usize>,
    k: usize,
}

impl EdgeClassColoring {
    /// Wraps a class vector; `k` is the number of classes available, so every
    /// entry must be `< k`.
    ///
    /// # Panics
    ///
    /// Panics if some class is `>= k`.
    pub fn new(classes: Vec<usize>, k: usize) -> Self {
        assert!(classes.iter().all(|&c| c < k), "class index out of range");
        EdgeClassColoring { classes, k }
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn class(&self, e: usize) -> usize {
        self.classes[e]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// True iff the assignment covers every vertex of `g` and no two adjacent
    /// vertices share a class.
    pub fn is_proper_for(&self, g: &IntersectionGraph) -> bool {
        self.classes.len() == g.m()
            && g.edge_pairs().into_iter().all(|(a, b)| self.classes[a] != self.classes[b])
    }
}

/// Result of checking a coloring against a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Properness {
    /// Indices of monochromatic edges, ascending.
    pub monochromatic: Vec<usize>,
}

impl Properness {
    pub fn is_proper(&self) -> bool {
        self.monochromatic.is_empty()
    }
}

/// Lists the edges of `h` that are monochromatic under `c`.
///
/// # Panics
///
/// Panics if `c` does not cover every vertex of `h`.
pub fn check_proper(h: &Hypergraph, c: &VertexColoring) -> Properness {
    assert!(c.len() >= h.n(), "coloring does not cover every vertex");
    let monochromatic = h
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, edge)| is_monochromatic(edge, c.colors()))
        .map(|(i, _)| i)
        .collect();
    Properness { monochromatic }
}

/// Shorthand for `check_proper(h, c).is_proper()`.
pub fn is_proper(h: &Hypergraph, c: &VertexColoring) -> bool {
    check_proper(h, c).is_proper()
}

pub(crate) fn is_monochromatic(edge: &[usize], colors: &[usize]) -> bool {
    let first = colors[edge[0]];
    edge[1..].iter().all(|&v| colors[v] == first)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_edge() {
        let h = Hypergraph::new(2, [[0, 1]]).unwrap();
        assert_eq!(h.m(), 1);
        assert_eq!(h.n(), 2);
    }

    #[test]
    fn duplicates_collapse_to_first_occurrence() {
        let h = Hypergraph::new(3, [vec![0, 1], vec![1, 0], vec![2, 1], vec![1, 2, 2]]).unwrap();
        assert_eq!(h.edges(), &[vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn rejects_small_and_out_of_range_edges() {
        assert_eq!(
            Hypergraph::new(3, [vec![1]]),
            Err(HypergraphError::EdgeTooSmall { edge: 0, distinct: 1 })
        );
        assert_eq!(
            Hypergraph::new(3, [vec![0, 1], vec![2, 2]]),
            Err(HypergraphError::EdgeTooSmall { edge: 1, distinct: 1 })
        );
        assert_eq!(
            Hypergraph::new(3, [vec![0, 3]]),
            Err(HypergraphError::VertexOutOfRange { edge: 0, vertex: 3, n: 3 })
        );
    }

    #[test]
    fn triangle_gives_k3() {
        let h = Hypergraph::new(3, [[0, 1], [0, 2], [1, 2]]).unwrap();
        let g = IntersectionGraph::of(&h);
        assert_eq!(g.edge_pairs(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn shared_pair_is_not_adjacent() {
        let h = Hypergraph::new(4, [[0, 1, 2], [0, 1, 3]]).unwrap();
        assert_eq!(IntersectionGraph::of(&h).edge_count(), 0);
    }

    #[test]
    fn star_is_a_clique() {
        let h = Hypergraph::new(4, [[0, 1], [0, 2], [0, 3]]).unwrap();
        let g = IntersectionGraph::of(&h);
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_adjacent(0, 2));
    }

    #[test]
    fn capped_intersection() {
        assert_eq!(intersection_size_capped(&[0, 1, 2, 3], &[1, 2, 3]), 2);
        assert_eq!(intersection_size_capped(&[0, 4], &[1, 4, 9]), 1);
        assert_eq!(intersection_size_capped(&[0, 4], &[1, 5]), 0);
    }

    #[test]
    fn properness_of_a_pair() {
        let h = Hypergraph::new(2, [[0, 1]]).unwrap();
        assert!(is_proper(&h, &VertexColoring::new(vec![0, 1])));
        let chk = check_proper(&h, &VertexColoring::new(vec![0, 0]));
        assert!(!chk.is_proper());
        assert_eq!(chk.monochromatic, vec![0]);
    }

    #[test]
    fn coloring_k_counts_max_plus_one() {
        assert_eq!(VertexColoring::new(vec![]).k(), 0);
        assert_eq!(VertexColoring::new(vec![0, 3, 3]).k(), 4);
        assert_eq!(VertexColoring::new(vec![0, 3, 3]).distinct_colors(), 2);
    }

    #[test]
    fn class_coloring_validity() {
        let g = IntersectionGraph::from_edges(3, [(0, 1), (1, 2)]);
        assert!(EdgeClassColoring::new(vec![0, 1, 0], 2).is_proper_for(&g));
        assert!(!EdgeClassColoring::new(vec![0, 0, 1], 2).is_proper_for(&g));
        assert!(!EdgeClassColoring::new(vec![0, 1], 2).is_proper_for(&g));
    }
}
