//! Exact decision procedures used as ground truth: bipartiteness with an
//! odd-cycle witness, exact k-coloring of simple graphs (DSATUR-ordered
//! backtracking), and the exact chromatic number of a hypergraph.
//!
//! Search size is bounded by [`SolverCaps`]. Exceeding a cap is an error; no
//! heuristic answer is ever substituted for an exact one.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{EdgeClassColoring, Hypergraph, IntersectionGraph, VertexColoring};

pub const DEFAULT_GRAPH_CAP: usize = 64;
pub const DEFAULT_HYPERGRAPH_CAP: usize = 24;

/// Size limits for the exponential-time solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverCaps {
    /// Maximum vertex count of a graph passed to [`graph_k_coloring`].
    pub max_graph_vertices: usize,
    /// Maximum vertex count of a hypergraph passed to
    /// [`hypergraph_chromatic_number`].
    pub max_hypergraph_vertices: usize,
}

impl Default for SolverCaps {
    fn default() -> Self {
        SolverCaps {
            max_graph_vertices: DEFAULT_GRAPH_CAP,
            max_hypergraph_vertices: DEFAULT_HYPERGRAPH_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("{what} has {size} vertices, above the exact-solver cap of {cap}")]
    LimitExceeded { what: &'static str, size: usize, cap: usize },
}

/// An odd cycle, listed as consecutive graph vertices; the last vertex is
/// adjacent to the first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCycle {
    pub cycle: Vec<usize>,
}

/// Two-colors `g` by breadth-first search.
///
/// Components are started from their lowest-index vertex, which gets class 0.
/// On failure the returned cycle is odd and closed in `g`.
pub fn bipartition(g: &IntersectionGraph) -> Result<EdgeClassColoring, OddCycle> {
    let m = g.m();
    let mut side: Vec<Option<usize>> = vec![None; m];
    let mut parent = vec![usize::MAX; m];
    let mut depth = vec![0usize; m];
    let mut queue = VecDeque::new();

    for root in 0..m {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(0);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for &w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(1 - su);
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => {
                        return Err(OddCycle { cycle: close_cycle(u, w, &parent, &depth) });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(EdgeClassColoring::new(side.into_iter().map(Option::unwrap).collect(), 2))
}

// Walks both BFS-tree paths up to their common ancestor. Same-side endpoints
// have equal depth parity, so the closed walk has odd length.
fn close_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

/// Finds a proper coloring of `g` with at most `k` classes, or `None` when
/// none exists.
///
/// Backtracking picks the uncolored vertex of highest saturation, breaking
/// ties by higher degree and then lower index. A vertex may open at most one
/// new class, so the first vertex is always in class 0.
pub fn graph_k_coloring(
    g: &IntersectionGraph,
    k: usize,
    caps: &SolverCaps,
) -> Result<Option<EdgeClassColoring>, ExactError> {
    check_graph_cap(g, caps)?;
    let m = g.m();
    if m == 0 {
        return Ok(Some(EdgeClassColoring::new(Vec::new(), k)));
    }
    if k == 0 {
        return Ok(None);
    }
    let mut solver = Dsatur {
        g,
        k,
        class: vec![None; m],
        neighbor_counts: vec![0; m * k],
        saturation: vec![0; m],
    };
    if solver.search(0) {
        let classes = solver.class.into_iter().map(Option::unwrap).collect();
        Ok(Some(EdgeClassColoring::new(classes, k)))
    } else {
        Ok(None)
    }
}

struct Dsatur<'a> {
    g: &'a IntersectionGraph,
    k: usize,
    class: Vec<Option<usize>>,
    // neighbor_counts[v * k + c] = number of neighbors of v currently in class c
    neighbor_counts: Vec<u32>,
    saturation: Vec<usize>,
}

impl Dsatur<'_> {
    fn pick(&self) -> Option<usize> {
        (0..self.g.m())
            .filter(|&v| self.class[v].is_none())
            .max_by(|&a, &b| {
                (self.saturation[a], self.g.degree(a))
                    .cmp(&(self.saturation[b], self.g.degree(b)))
                    .then(b.cmp(&a))
            })
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.class[v] = Some(c);
        for &w in self.g.neighbors(v) {
            let slot = &mut self.neighbor_counts[w * self.k + c];
            *slot += 1;
            if *slot == 1 {
                self.saturation[w] += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.class[v] = None;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.neighbor_counts[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn search(&mut self, used: usize) -> bool {
        let Some(v) = self.pick() else {
            return true;
        };
        if self.saturation[v] >= self.k {
            return false;
        }
        let limit = self.k.min(used + 1);
        for c in 0..limit {
            if self.neighbor_counts[v * self.k + c] != 0 {
                continue;
            }
            self.assign(v, c);
            if self.search(used.max(c + 1)) {
                return true;
            }
            self.unassign(v, c);
        }
        false
    }
}

fn check_graph_cap(g: &IntersectionGraph, caps: &SolverCaps) -> Result<(), ExactError> {
    if g.m() > caps.max_graph_vertices {
        return Err(ExactError::LimitExceeded {
            what: "graph",
            size: g.m(),
            cap: caps.max_graph_vertices,
        });
    }
    Ok(())
}

/// Size of a clique grown greedily from each vertex in turn; a lower bound on
/// the chromatic number.
pub fn greedy_clique_bound(g: &IntersectionGraph) -> usize {
    let m = g.m();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let mut best = 0;
    for &seed in &order {
        let mut clique = vec![seed];
        for &v in &order {
            if v != seed && clique.iter().all(|&u| g.is_adjacent(u, v)) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

/// The chromatic number of a simple graph together with an optimal class
/// assignment. The empty graph has chromatic number 0.
pub fn graph_chromatic_number(
    g: &IntersectionGraph,
    caps: &SolverCaps,
) -> Result<(usize, EdgeClassColoring), ExactError> {
    check_graph_cap(g, caps)?;
    let mut k = greedy_clique_bound(g);
    loop {
        if let Some(coloring) = graph_k_coloring(g, k, caps)? {
            return Ok((k, coloring));
        }
        k += 1;
    }
}

/// The chromatic number of `h` and a proper coloring achieving it.
///
/// Vertices in no edge get color 0. An empty vertex set has chromatic
/// number 0, and an edgeless hypergraph on at least one vertex has 1.
pub fn hypergraph_chromatic_number(
    h: &Hypergraph,
    caps: &SolverCaps,
) -> Result<(usize, VertexColoring), ExactError> {
    if h.n() > caps.max_hypergraph_vertices {
        return Err(ExactError::LimitExceeded {
            what: "hypergraph",
            size: h.n(),
            cap: caps.max_hypergraph_vertices,
        });
    }
    let n = h.n();
    if n == 0 {
        return Ok((0, VertexColoring::new(Vec::new())));
    }
    if h.m() == 0 {
        return Ok((1, VertexColoring::uniform(n, 0)));
    }
    let mut search = HyperSearch::new(h);
    // Coloring every covered vertex differently is proper, so the loop ends
    // by k = n.
    for k in 2..=n {
        if search.run(k) {
            return Ok((k, VertexColoring::new(search.colors.clone())));
        }
    }
    unreachable!("a hypergraph with edges of size >= 2 is n-colorable")
}

struct HyperSearch<'a> {
    h: &'a Hypergraph,
    order: Vec<usize>,
    // Edges whose last vertex in `order` is order[i].
    closing: Vec<Vec<usize>>,
    colors: Vec<usize>,
}

impl<'a> HyperSearch<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        let inc = h.incidence();
        let mut order: Vec<usize> = (0..h.n()).filter(|&v| !inc[v].is_empty()).collect();
        order.sort_by(|&a, &b| inc[b].len().cmp(&inc[a].len()).then(a.cmp(&b)));
        let mut pos = vec![usize::MAX; h.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut closing = vec![Vec::new(); order.len()];
        for (e, edge) in h.edges().iter().enumerate() {
            let last = edge.iter().map(|&v| pos[v]).max().unwrap();
            closing[last].push(e);
        }
        HyperSearch { h, order, closing, colors: vec![0; h.n()] }
    }

    fn run(&mut self, k: usize) -> bool {
        self.colors.iter_mut().for_each(|c| *c = 0);
        self.descend(0, 0, k)
    }

    fn descend(&mut self, i: usize, used: usize, k: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let v = self.order[i];
        for c in 0..k.min(used + 1) {
            self.colors[v] = c;
            let ok = self.closing[i]
                .iter()
                .all(|&e| !crate::hypergraph::is_monochromatic(self.h.edge(e), &self.colors));
            if ok && self.descend(i + 1, used.max(c + 1), k) {
                return true;
            }
        }
        self.colors[v] = 0;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::is_proper;

    fn complete(n: usize) -> IntersectionGraph {
        let pairs = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b)));
        IntersectionGraph::from_edges(n, pairs)
    }

    fn is_odd_cycle(g: &IntersectionGraph, cycle: &[usize]) -> bool {
        let mut sorted = cycle.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        cycle.len() % 2 == 1
            && sorted.len() == cycle.len()
            && (0..cycle.len()).all(|i| g.is_adjacent(cycle[i], cycle[(i + 1) % cycle.len()]))
    }

    #[test]
    fn edgeless_bipartition_is_all_zero() {
        let g = IntersectionGraph::from_edges(3, []);
        assert_eq!(bipartition(&g).unwrap().classes(), &[0, 0, 0]);
    }

    #[test]
    fn triangle_is_not_bipartite() {
        let h = Hypergraph::new(3, [[0, 1], [0, 2], [1, 2]]).unwrap();
        let g = IntersectionGraph::of(&h);
        let err = bipartition(&g).unwrap_err();
        assert_eq!(err.cycle.len(), 3);
        assert!(is_odd_cycle(&g, &err.cycle));
    }

    #[test]
    fn three_lines_meeting_pairwise() {
        let h = Hypergraph::new(6, [[0, 1, 2], [2, 3, 4], [4, 5, 0]]).unwrap();
        let g = IntersectionGraph::of(&h);
        assert_eq!(g.edge_count(), 3);
        assert!(bipartition(&g).is_err());
    }

    #[test]
    fn long_odd_cycle_witness() {
        // 7-cycle with a pendant path, so the conflict sits deep in the tree.
        let mut pairs: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        pairs.push((7, 0));
        pairs.push((8, 7));
        let g = IntersectionGraph::from_edges(9, pairs);
        let err = bipartition(&g).unwrap_err();
        assert!(is_odd_cycle(&g, &err.cycle));
        assert_eq!(err.cycle.len(), 7);
    }

    #[test]
    fn even_cycle_bipartition_is_proper() {
        let g = IntersectionGraph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6)));
        let bp = bipartition(&g).unwrap();
        assert!(bp.is_proper_for(&g));
        assert_eq!(bp.class(0), 0);
    }

    #[test]
    fn clique_k_coloring() {
        let caps = SolverCaps::default();
        let k3 = complete(3);
        assert_eq!(graph_k_coloring(&k3, 3, &caps).unwrap().unwrap().classes(), &[0, 1, 2]);
        assert!(graph_k_coloring(&k3, 2, &caps).unwrap().is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let caps = SolverCaps { max_graph_vertices: 4, max_hypergraph_vertices: 3 };
        assert!(matches!(
            graph_k_coloring(&complete(5), 5, &caps),
            Err(ExactError::LimitExceeded { size: 5, cap: 4, .. })
        ));
        let h = Hypergraph::new(4, [[0, 1]]).unwrap();
        assert!(hypergraph_chromatic_number(&h, &caps).is_err());
    }

    #[test]
    fn chromatic_numbers_of_cliques_and_cycles() {
        let caps = SolverCaps::default();
        for n in 1..8 {
            assert_eq!(graph_chromatic_number(&complete(n), &caps).unwrap().0, n);
        }
        let c5 = IntersectionGraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5)));
        assert_eq!(graph_chromatic_number(&c5, &caps).unwrap().0, 3);
        assert_eq!(graph_chromatic_number(&IntersectionGraph::from_edges(0, []), &caps).unwrap().0, 0);
        assert_eq!(graph_chromatic_number(&IntersectionGraph::from_edges(3, []), &caps).unwrap().0, 1);
    }

    #[test]
    fn hypergraph_chromatic_edge_cases() {
        let caps = SolverCaps::default();
        let empty = Hypergraph::new(0, Vec::<Vec<usize>>::new()).unwrap();
        assert_eq!(hypergraph_chromatic_number(&empty, &caps).unwrap().0, 0);
        let edgeless = Hypergraph::new(3, Vec::<Vec<usize>>::new()).unwrap();
        assert_eq!(hypergraph_chromatic_number(&edgeless, &caps).unwrap().0, 1);
        let star = Hypergraph::new(5, [[0, 1], [0, 2], [0, 3], [0, 4]]).unwrap();
        let (chi, w) = hypergraph_chromatic_number(&star, &caps).unwrap();
        assert_eq!(chi, 2);
        assert!(is_proper(&star, &w));
    }

    #[test]
    fn isolated_vertices_get_color_zero() {
        let h = Hypergraph::new(5, [[1, 3], [3, 4], [1, 4]]).unwrap();
        let (chi, w) = hypergraph_chromatic_number(&h, &SolverCaps::default()).unwrap();
        assert_eq!(chi, 3);
        assert_eq!(w.color(0), 0);
        assert_eq!(w.color(2), 0);
    }
}
