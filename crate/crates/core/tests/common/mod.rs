//! Brute-force references shared by the integration tests. Nothing here calls
//! into the solvers it is used to check.

#![allow(dead_code)]

use hypercolor::{Hypergraph, IntersectionGraph};

/// Visits every vector in `0..k` of length `n`, stopping early when `f`
/// returns true.
pub fn any_assignment(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if n == 0 {
        return f(&[]);
    }
    if k == 0 {
        return false;
    }
    let mut a = vec![0usize; n];
    loop {
        if f(&a) {
            return true;
        }
        let mut i = 0;
        loop {
            a[i] += 1;
            if a[i] < k {
                break;
            }
            a[i] = 0;
            i += 1;
            if i == n {
                return false;
            }
        }
    }
}

pub fn naive_monochromatic(edges: &[Vec<usize>], colors: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, e) in edges.iter().enumerate() {
        let mut all_same = true;
        for v in e {
            if colors[*v] != colors[e[0]] {
                all_same = false;
            }
        }
        if all_same {
            out.push(i);
        }
    }
    out
}

/// χ(H) by trying every coloring with 1, 2, .. colors.
pub fn naive_hypergraph_chi(h: &Hypergraph) -> usize {
    if h.n() == 0 {
        return 0;
    }
    (1..=h.n())
        .find(|&k| any_assignment(h.n(), k, |c| naive_monochromatic(h.edges(), c).is_empty()))
        .unwrap()
}

/// Pairwise intersection sizes counted with a hash set.
pub fn naive_intersection_pairs(h: &Hypergraph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..h.m() {
        for j in (i + 1)..h.m() {
            let a: std::collections::HashSet<_> = h.edge(i).iter().collect();
            let shared = h.edge(j).iter().filter(|v| a.contains(v)).count();
            if shared == 1 {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn naive_graph_chi(m: usize, pairs: &[(usize, usize)]) -> usize {
    (0..=m)
        .find(|&k| any_assignment(m, k, |c| pairs.iter().all(|&(a, b)| c[a] != c[b])))
        .unwrap()
}

/// Graph edges listed as vertex pairs; line graph joins edges sharing an
/// endpoint.
pub fn line_graph_pairs(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if a == c || a == d || b == c || b == d {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn graph_of(h: &Hypergraph) -> IntersectionGraph {
    IntersectionGraph::of(h)
}
