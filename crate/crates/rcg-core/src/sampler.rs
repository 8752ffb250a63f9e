//! Exact sampling of random cluster graphs.
//!
//! The sequential sampler repeatedly draws the size `S` of the clique
//! containing the highest-index unassigned vertex — `S - 1` plus the
//! degree law on the remaining vertex count — binds `S - 1` uniformly
//! chosen partners, and recurses. A rejection sampler (sample
//! Erdős–Rényi, accept iff cluster graph) serves as an independent
//! oracle, and `is_cluster_graph` is the wedge-free characterization.

use crate::bell::BellTable;
use crate::exactdist::degree_pmf;
use crate::graph::{Partition, SimpleGraph};
use crate::rng::RngStream;
use crate::{Error, Result};

/// Inverse-CDF tables of the clique-size law for every remaining vertex
/// count `r <= n`, built once so repeated sampling is cheap.
///
/// `cdf[r][s-1] = P(S <= s)` when `r` vertices remain.
#[derive(Debug, Clone)]
pub struct CliqueSizeSampler {
    cdf: Vec<Vec<f64>>,
}

impl CliqueSizeSampler {
    /// Precomputes all size laws up to `n`; `O(n^2)` time and space.
    pub fn build(table: &BellTable, n: usize) -> Result<CliqueSizeSampler> {
        if n > table.n_max() {
            return Err(Error::InvalidParameter(format!(
                "n = {n} exceeds table n_max = {}",
                table.n_max()
            )));
        }
        let mut cdf = Vec::with_capacity(n + 1);
        for r in 0..=n {
            if r == 0 {
                cdf.push(Vec::new());
                continue;
            }
            // S = D + 1 on r vertices.
            let pmf = degree_pmf(table, r)?;
            let mut acc = 0.0;
            let row: Vec<f64> = pmf
                .probs()
                .iter()
                .map(|&p| {
                    acc += p;
                    acc
                })
                .collect();
            cdf.push(row);
        }
        Ok(CliqueSizeSampler { cdf })
    }

    /// Draws a clique size in `1..=r`. Inverse CDF; boundary ties resolve
    /// toward the smaller size because the comparison is `u <= cdf`.
    fn draw(&self, r: usize, rng: &mut RngStream) -> usize {
        let row = &self.cdf[r];
        let u = rng.uniform();
        let i = row.partition_point(|&c| c < u);
        (i + 1).min(r)
    }
}

/// Draws a partition with probability `w^{m} / B_n(w)` using a prebuilt
/// size-law cache.
pub fn sample_cluster_graph_cached(
    cache: &CliqueSizeSampler,
    n: usize,
    rng: &mut RngStream,
) -> Partition {
    // Unassigned labels, kept so the last element is the highest index.
    let mut pool: Vec<usize> = (0..n).collect();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    while !pool.is_empty() {
        let r = pool.len();
        let s = cache.draw(r, rng);
        let anchor = pool.pop().unwrap();
        let mut block = Vec::with_capacity(s);
        block.push(anchor);
        // S - 1 partners, a uniform random subset of the remaining pool:
        // partial Fisher-Yates from the tail.
        for _ in 1..s {
            let i = rng.below(pool.len());
            let last = pool.len() - 1;
            pool.swap(i, last);
            block.push(pool.pop().unwrap());
        }
        pool.sort_unstable();
        blocks.push(block);
    }
    Partition::new(n, blocks).expect("sampler produced an invalid partition")
}

/// Draws a partition with probability `w^{m} / B_n(w)`.
///
/// Builds the size-law cache on each call; for bulk sampling build a
/// [`CliqueSizeSampler`] once and use [`sample_cluster_graph_cached`].
pub fn sample_cluster_graph(table: &BellTable, n: usize, rng: &mut RngStream) -> Result<Partition> {
    let cache = CliqueSizeSampler::build(table, n)?;
    Ok(sample_cluster_graph_cached(&cache, n, rng))
}

/// Samples `G(n, p)` repeatedly and returns the component partition of
/// the first cluster graph; errors after `max_attempts` rejections.
///
/// The acceptance probability is `(1-p)^{C(n,2)} B_n(w)`, so keep `n`
/// small.
pub fn rejection_sample(
    n: usize,
    p: f64,
    rng: &mut RngStream,
    max_attempts: u64,
) -> Result<Partition> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("p = {p} outside [0, 1)")));
    }
    for _ in 0..max_attempts {
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.bernoulli(p) {
                    g.add_edge(u, v);
                }
            }
        }
        if is_cluster_graph(&g) {
            return Ok(g.components());
        }
    }
    Err(Error::RejectionBudget {
        attempts: max_attempts,
    })
}

/// True iff every component is a clique, equivalently the graph has no
/// wedge: each vertex's neighborhood (plus itself) must be a clique.
pub fn is_cluster_graph(g: &SimpleGraph) -> bool {
    for v in 0..g.n() {
        let nbrs: Vec<usize> = g.neighbors(v).collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if !g.has_edge(a, b) {
                    return false;
                }
            }
        }
    }
    true
}
