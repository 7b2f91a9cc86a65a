//! Named hypergraph families and a seeded random sampler.
//!
//! # Random stream
//!
//! [`random_hypergraph`] is reproducible across platforms and releases. Its
//! stream is fully determined as follows:
//!
//! * Generator: xoshiro256\*\*, state initialised from the 64-bit seed by four
//!   successive SplitMix64 outputs (`Xoshiro256StarStar::seed_from_u64`).
//! * `below(b)`: draw `x = next_u64()`; reject and redraw while
//!   `x >= 2^64 - (2^64 mod b)`; return `x mod b`.
//! * Each candidate edge: `size = min_size + below(max_size - min_size + 1)`,
//!   then a partial Fisher-Yates shuffle of `[0, 1, .., n-1]` (fresh each
//!   candidate): for `i in 0..size`, swap positions `i` and `i + below(n - i)`.
//!   The first `size` entries, sorted, form the edge.
//! * A candidate equal to an earlier edge is discarded and a new candidate
//!   (size included) is drawn, until `m` edges are accepted.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use thiserror::Error;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("complete graph plus triple needs an even order of at least 4, got {0}")]
    OddOrder(usize),
    #[error("only {available} distinct edges exist, {requested} requested")]
    Unsatisfiable { requested: u128, available: u128 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

/// The deterministic generator behind every random choice in this crate.
pub type Prng = Xoshiro256StarStar;

pub fn prng(seed: u64) -> Prng {
    Xoshiro256StarStar::seed_from_u64(seed)
}

/// Uniform integer in `0..bound` by rejection of the biased tail.
///
/// # Panics
///
/// Panics if `bound == 0`.
pub fn below(rng: &mut impl RngCore, bound: u64) -> u64 {
    assert!(bound > 0, "empty range");
    // 2^64 mod bound, computed without u128.
    let rem = (u64::MAX % bound + 1) % bound;
    let limit = u64::MAX - rem; // accept x <= limit, i.e. x < 2^64 - rem
    loop {
        let x = rng.next_u64();
        if rem == 0 || x <= limit {
            return x % bound;
        }
    }
}

/// SplitMix64 finaliser.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The complete graph `K_n` as a 2-uniform hypergraph, edges in
/// lexicographic order.
pub fn complete_graph(n: usize) -> Result<Hypergraph, GenError> {
    if n < 2 {
        return Err(GenError::InvalidParameters(format!("complete graph needs n >= 2, got {n}")));
    }
    let edges = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| [a, b]));
    Ok(Hypergraph::new(n, edges).expect("complete graph edges are valid"))
}

/// `K_n` for even `n >= 4` with the extra 3-edge `{0, 1, 2}` appended.
pub fn complete_plus_triple(n: usize) -> Result<Hypergraph, GenError> {
    if n < 4 || n % 2 == 1 {
        return Err(GenError::OddOrder(n));
    }
    let mut edges: Vec<Vec<usize>> =
        (0..n).flat_map(|a| ((a + 1)..n).map(move |b| vec![a, b])).collect();
    edges.push(vec![0, 1, 2]);
    Ok(Hypergraph::new(n, edges).expect("valid edges"))
}

/// `m` edges of the given size through vertex 0, otherwise disjoint. Edge `i`
/// is `{0} ∪ {1 + i(size-1), .., (i+1)(size-1)}`.
pub fn universal_vertex_family(m: usize, size: usize) -> Result<Hypergraph, GenError> {
    if m < 1 || size < 2 {
        return Err(GenError::InvalidParameters(format!(
            "universal family needs m >= 1 and size >= 2, got m={m}, size={size}"
        )));
    }
    let block = size - 1;
    let n = 1 + m * block;
    let edges = (0..m).map(|i| {
        let mut e = vec![0];
        e.extend(1 + i * block..1 + (i + 1) * block);
        e
    });
    Ok(Hypergraph::new(n, edges).expect("valid edges"))
}

/// The seven lines of the Fano plane on points `0..7`.
pub fn fano_plane() -> Hypergraph {
    const LINES: [[usize; 3]; 7] = [
        [0, 1, 2],
        [0, 3, 4],
        [0, 5, 6],
        [1, 3, 5],
        [1, 4, 6],
        [2, 3, 6],
        [2, 4, 5],
    ];
    Hypergraph::new(7, LINES).expect("valid edges")
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact: acc * (n - i) is divisible by (i + 1) after the multiply
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Number of distinct edges with sizes in `min_size..=max_size` on `n`
/// vertices (saturating).
pub fn distinct_edge_count(n: usize, min_size: usize, max_size: usize) -> u128 {
    (min_size..=max_size.min(n))
        .map(|s| binomial(n as u128, s as u128))
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// `m` distinct random edges on `n` vertices with sizes uniform in
/// `min_size..=max_size`; see the module docs for the exact stream.
pub fn random_hypergraph(
    n: usize,
    m: usize,
    min_size: usize,
    max_size: usize,
    seed: u64,
) -> Result<Hypergraph, GenError> {
    if !(2 <= min_size && min_size <= max_size && max_size <= n) || m < 1 {
        return Err(GenError::InvalidParameters(format!(
            "need 2 <= min_size <= max_size <= n and m >= 1, got n={n}, m={m}, sizes={min_size}..={max_size}"
        )));
    }
    let available = distinct_edge_count(n, min_size, max_size);
    if (m as u128) > available {
        return Err(GenError::Unsatisfiable { requested: m as u128, available });
    }

    let mut rng = prng(seed);
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    let mut pool: Vec<usize> = Vec::with_capacity(n);
    while edges.len() < m {
        let size = min_size + below(&mut rng, (max_size - min_size + 1) as u64) as usize;
        pool.clear();
        pool.extend(0..n);
        for i in 0..size {
            let j = i + below(&mut rng, (n - i) as u64) as usize;
            pool.swap(i, j);
        }
        let mut edge = pool[..size].to_vec();
        edge.sort_unstable();
        if seen.insert(edge.clone()) {
            edges.push(edge);
        }
    }
    Ok(Hypergraph::new(n, edges).expect("sampled edges are valid"))
}
