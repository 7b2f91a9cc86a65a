//! Constructive colorers driven by a proper coloring of the 1-intersection
//! graph.
//!
//! * [`two_color`]: bipartite 1-intersection graph gives a proper 2-coloring,
//!   built edge by edge with a queue-based repair process.
//! * [`four_color`]: 4-colorable 1-intersection graph gives a proper
//!   4-coloring, the sum of two 2-colorings of complementary sub-hypergraphs.
//! * [`greedy_color`]: a k-class coloring of the 1-intersection graph gives a
//!   proper (k+1)-coloring by a single greedy pass over the vertices.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::exact::{bipartition, graph_k_coloring, ExactError, SolverCaps};
use crate::hypergraph::{
    check_proper, intersection_size_capped, is_monochromatic, EdgeClassColoring, Hypergraph,
    IntersectionGraph, VertexColoring,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColorError {
    #[error("the 1-intersection graph is not bipartite (odd cycle through edges {odd_cycle:?})")]
    NotBipartite1IG { odd_cycle: Vec<usize> },
    #[error("the 1-intersection graph is not 4-colorable")]
    Not4Colorable1IG,
    #[error(transparent)]
    LimitExceeded(#[from] ExactError),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
    #[error("no free color at vertex {vertex}: {forbidden} colors forbidden with {k} classes")]
    NoFreeColor { vertex: usize, forbidden: usize, k: usize },
    #[error("invalid edge classes: {0}")]
    InvalidClasses(String),
}

/// One step of a repair round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecoloringStep {
    pub t: usize,
    /// The edge at the head of the queue.
    pub edge: usize,
    /// The vertex recolored to fix `edge`.
    pub vertex: usize,
    /// Color of `vertex` after the flip.
    pub new_color: usize,
    /// Edges that became monochromatic, ascending.
    pub newly_monochromatic: Vec<usize>,
    pub queue_after: Vec<usize>,
}

/// The repair round triggered by inserting a monochromatic edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepairRound {
    pub inserted_edge: usize,
    pub initial_queue: Vec<usize>,
    pub steps: Vec<RecoloringStep>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RecoloringTrace {
    pub rounds: Vec<RepairRound>,
}

impl RecoloringTrace {
    pub fn total_steps(&self) -> usize {
        self.rounds.iter().map(|r| r.steps.len()).sum()
    }
}

fn violation(msg: String) -> ColorError {
    ColorError::InternalInvariantViolation(msg)
}

/// Properly 2-colors a hypergraph whose 1-intersection graph is bipartite.
///
/// All vertices start with color 0 and edges are inserted in index order.
/// Inserting a monochromatic edge starts a repair round with that edge as
/// the only queued edge. Each step takes the edge at the head of the queue,
/// flips its lowest vertex not yet flipped in this round, drops the head and
/// every queued edge that stopped being monochromatic, then appends the
/// inserted edges that the flip made monochromatic in ascending order. The
/// round ends when the queue is empty.
///
/// Running out of unflipped vertices, re-enqueueing an edge, or a queued edge
/// whose color disagrees with its side of the bipartition all surface as
/// [`ColorError::InternalInvariantViolation`]; none of them can happen when
/// the bipartition exists.
pub fn two_color(h: &Hypergraph) -> Result<(VertexColoring, RecoloringTrace), ColorError> {
    let sides = bipartition(&IntersectionGraph::of(h))
        .map_err(|oc| ColorError::NotBipartite1IG { odd_cycle: oc.cycle })?;

    let n = h.n();
    let m = h.m();
    let incidence = h.incidence();
    let mut colors = vec![0usize; n];
    let mut trace = RecoloringTrace::default();

    // Round-scoped marks, reset through the touched lists after each round.
    let mut flipped = vec![false; n];
    let mut ever_queued = vec![false; m];
    let mut flipped_list = Vec::new();
    let mut queued_list = Vec::new();

    for inserted in 0..m {
        if !is_monochromatic(h.edge(inserted), &colors) {
            continue;
        }
        let start_color = colors[h.edge(inserted)[0]];
        let start_side = sides.class(inserted);
        let mut round = RepairRound {
            inserted_edge: inserted,
            initial_queue: vec![inserted],
            steps: Vec::new(),
        };
        let mut queue = VecDeque::from([inserted]);
        ever_queued[inserted] = true;
        queued_list.push(inserted);

        let mut t = 0;
        while let Some(&head) = queue.front() {
            let Some(&vertex) = h.edge(head).iter().find(|&&v| !flipped[v]) else {
                return Err(violation(format!(
                    "round for edge {inserted}: every vertex of queued edge {head} was already recolored"
                )));
            };
            flipped[vertex] = true;
            flipped_list.push(vertex);
            colors[vertex] = 1 - colors[vertex];

            // Only edges through the flipped vertex can change state.
            let newly: Vec<usize> = incidence[vertex]
                .iter()
                .copied()
                .filter(|&e| e <= inserted && is_monochromatic(h.edge(e), &colors))
                .collect();
            for &e in &newly {
                if ever_queued[e] {
                    return Err(violation(format!(
                        "round for edge {inserted}: edge {e} entered the queue twice"
                    )));
                }
                if intersection_size_capped(h.edge(e), h.edge(head)) != 1 {
                    return Err(violation(format!(
                        "round for edge {inserted}: newly monochromatic edge {e} does not meet edge {head} in exactly one vertex"
                    )));
                }
            }

            queue.pop_front();
            queue.retain(|&e| is_monochromatic(h.edge(e), &colors));
            for &e in &newly {
                ever_queued[e] = true;
                queued_list.push(e);
                queue.push_back(e);
            }

            // Monochromatic edges in the start color lie on the start edge's
            // side of the bipartition; the other color lies on the other side.
            for &e in &queue {
                let same_color = colors[h.edge(e)[0]] == start_color;
                let same_side = sides.class(e) == start_side;
                if same_color != same_side {
                    return Err(violation(format!(
                        "round for edge {inserted}: queued edge {e} has color {} but lies on side {}",
                        colors[h.edge(e)[0]],
                        sides.class(e)
                    )));
                }
            }

            round.steps.push(RecoloringStep {
                t,
                edge: head,
                vertex,
                new_color: colors[vertex],
                newly_monochromatic: newly,
                queue_after: queue.iter().copied().collect(),
            });
            t += 1;
        }
        trace.rounds.push(round);

        for v in flipped_list.drain(..) {
            flipped[v] = false;
        }
        for e in queued_list.drain(..) {
            ever_queued[e] = false;
        }
    }

    let coloring = VertexColoring::new(colors);
    let check = check_proper(h, &coloring);
    if !check.is_proper() {
        return Err(violation(format!(
            "recoloring finished with monochromatic edges {:?}",
            check.monochromatic
        )));
    }
    Ok((coloring, trace))
}

/// The pieces of a [`four_color`] run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourColoring {
    /// Final coloring, `coloring[v] = c12[v] + c34[v]`.
    pub coloring: VertexColoring,
    /// Colors in {0, 1}; proper on the edges of classes 0 and 1.
    pub c12: VertexColoring,
    /// Colors in {0, 2}; proper on the edges of classes 2 and 3.
    pub c34: VertexColoring,
    /// The 4-class coloring of the 1-intersection graph that drove the split.
    pub classes: EdgeClassColoring,
}

/// Properly 4-colors a hypergraph whose 1-intersection graph is 4-colorable.
///
/// The edges are split by a 4-class coloring of the 1-intersection graph into
/// classes {0,1} and {2,3}. Each half is a spanning sub-hypergraph with a
/// bipartite 1-intersection graph and is 2-colored by [`two_color`]. The
/// second half's colors are doubled and the two colorings are added, which
/// reproduces the table (0,0)→0, (1,0)→1, (0,2)→2, (1,2)→3.
pub fn four_color(h: &Hypergraph, caps: &SolverCaps) -> Result<FourColoring, ColorError> {
    let g = IntersectionGraph::of(h);
    let classes = graph_k_coloring(&g, 4, caps)?.ok_or(ColorError::Not4Colorable1IG)?;

    let (low, high): (Vec<usize>, Vec<usize>) = (0..h.m()).partition(|&e| classes.class(e) < 2);
    let h12 = h.sub_hypergraph(&low);
    let h34 = h.sub_hypergraph(&high);

    let half = |sub: &Hypergraph, name: &str| match two_color(sub) {
        Ok((c, _)) => Ok(c),
        Err(ColorError::NotBipartite1IG { odd_cycle }) => Err(violation(format!(
            "sub-hypergraph {name} has a non-bipartite 1-intersection graph (odd cycle {odd_cycle:?})"
        ))),
        Err(e) => Err(e),
    };
    let c12 = half(&h12, "H_12")?;
    let c34 = VertexColoring::new(half(&h34, "H_34")?.colors().iter().map(|&c| 2 * c).collect());

    let coloring = VertexColoring::new(
        c12.colors().iter().zip(c34.colors()).map(|(&a, &b)| a + b).collect(),
    );
    let check = check_proper(h, &coloring);
    if !check.is_proper() {
        return Err(violation(format!(
            "combined coloring leaves edges {:?} monochromatic",
            check.monochromatic
        )));
    }
    Ok(FourColoring { coloring, c12, c34, classes })
}

/// Properly colors `h` with at most `classes.k() + 1` colors, given a proper
/// class assignment of its 1-intersection graph.
///
/// Vertices are colored in id order. When vertex `v` is reached, an edge whose
/// last vertex is `v` and whose other vertices share one color forbids that
/// color. Two such edges in the same class meet in `v`, are not 1-intersecting,
/// and therefore share an earlier vertex; so each class forbids at most one
/// color and the smallest free color in `0..=k` always exists.
pub fn greedy_color(h: &Hypergraph, classes: &EdgeClassColoring) -> Result<VertexColoring, ColorError> {
    let g = IntersectionGraph::of(h);
    if classes.classes().len() != h.m() {
        return Err(ColorError::InvalidClasses(format!(
            "{} classes given for {} edges",
            classes.classes().len(),
            h.m()
        )));
    }
    if let Some((a, b)) = g
        .edge_pairs()
        .into_iter()
        .find(|&(a, b)| classes.class(a) == classes.class(b))
    {
        return Err(ColorError::InvalidClasses(format!(
            "edges {a} and {b} meet in one vertex but share class {}",
            classes.class(a)
        )));
    }

    let k = classes.k();
    let n = h.n();
    let incidence = h.incidence();
    let mut colors = vec![0usize; n];
    // Per class, the color it forbids at the current vertex.
    let mut forbidden_by_class: Vec<Option<usize>> = vec![None; k];
    let mut forbidden = vec![false; k + 1];

    for v in 0..n {
        forbidden_by_class.iter_mut().for_each(|f| *f = None);
        forbidden.iter_mut().for_each(|f| *f = false);
        let mut forbidden_count = 0;

        for &e in &incidence[v] {
            let edge = h.edge(e);
            if *edge.last().unwrap() != v {
                continue;
            }
            let rest = &edge[..edge.len() - 1];
            let first = colors[rest[0]];
            if rest.iter().any(|&u| colors[u] != first) {
                continue;
            }
            let class = classes.class(e);
            match forbidden_by_class[class] {
                Some(prev) if prev != first => {
                    return Err(violation(format!(
                        "class {class} forbids colors {prev} and {first} at vertex {v}"
                    )));
                }
                Some(_) => {}
                None => forbidden_by_class[class] = Some(first),
            }
            if first <= k && !forbidden[first] {
                forbidden[first] = true;
                forbidden_count += 1;
            }
        }

        if forbidden_count > k {
            return Err(ColorError::NoFreeColor { vertex: v, forbidden: forbidden_count, k });
        }
        colors[v] = forbidden
            .iter()
            .position(|&f| !f)
            .ok_or(ColorError::NoFreeColor { vertex: v, forbidden: forbidden_count, k })?;
    }

    let coloring = VertexColoring::new(colors);
    let check = check_proper(h, &coloring);
    if !check.is_proper() {
        return Err(violation(format!(
            "greedy coloring leaves edges {:?} monochromatic",
            check.monochromatic
        )));
    }
    Ok(coloring)
}
