//! Shared combinatorial objects: set partitions (equivalently cluster
//! graphs) and simple undirected graphs.

use std::collections::BTreeSet;

use crate::{Error, Result};

/// A set partition of `{0..n-1}`.
///
/// Each block is kept sorted and blocks are ordered by their smallest
/// element, so equal partitions compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition from blocks, validating that they are disjoint,
    /// nonempty, and cover `{0..n-1}`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Partition> {
        let mut seen = vec![false; n];
        let mut count = 0usize;
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidParameter("empty block".into()));
            }
            for &v in block {
                if v >= n || seen[v] {
                    return Err(Error::InvalidParameter(format!(
                        "label {v} repeated or out of range"
                    )));
                }
                seen[v] = true;
                count += 1;
            }
        }
        if count != n {
            return Err(Error::InvalidParameter(format!(
                "blocks cover {count} of {n} labels"
            )));
        }
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_by_key(|b| b[0]);
        Ok(Partition { n, blocks })
    }

    /// Builds a partition from a block-label assignment `labels[v] = block id`.
    pub fn from_labels(labels: &[usize]) -> Partition {
        let k = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (v, &b) in labels.iter().enumerate() {
            blocks[b].push(v);
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort_by_key(|b| b[0]);
        Partition {
            n: labels.len(),
            blocks,
        }
    }

    /// Number of elements.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The blocks, sorted internally and by smallest element.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks (components of the cluster graph).
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Edge count of the associated cluster graph, `sum C(|block|, 2)`.
    pub fn edge_count(&self) -> u64 {
        self.blocks
            .iter()
            .map(|b| (b.len() as u64) * (b.len() as u64 - 1) / 2)
            .sum()
    }

    /// Size of the largest block.
    pub fn max_block(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Block label of each element: `labels()[v]` is the index of the
    /// block containing `v`.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0usize; self.n];
        for (i, block) in self.blocks.iter().enumerate() {
            for &v in block {
                labels[v] = i;
            }
        }
        labels
    }

    /// The cluster graph with one clique per block.
    pub fn to_graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n);
        for block in &self.blocks {
            for i in 0..block.len() {
                for j in i + 1..block.len() {
                    g.add_edge(block[i], block[j]);
                }
            }
        }
        g
    }
}

/// An undirected simple graph on labelled vertices `{0..n-1}`.
#[derive(Debug, Clone)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
    m: usize,
}

impl SimpleGraph {
    /// Empty graph on `n` vertices.
    pub fn new(n: usize) -> SimpleGraph {
        SimpleGraph {
            n,
            adj: vec![BTreeSet::new(); n],
            m: 0,
        }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// Inserts edge `{u, v}`. Self-loops and duplicates are rejected by
    /// panicking, since they indicate a construction bug.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop {u}");
        assert!(u < self.n && v < self.n, "vertex out of range");
        let fresh = self.adj[u].insert(v);
        assert!(fresh, "duplicate edge ({u},{v})");
        self.adj[v].insert(u);
        self.m += 1;
    }

    /// True iff `{u, v}` is an edge.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// Neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    /// Degree of `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// All edges as ordered pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Partition of the vertex set into connected components.
    pub fn components(&self) -> Partition {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0usize;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &v in &self.adj[u] {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        Partition::from_labels(&label)
    }

    /// True iff the graph is connected (vacuously true for n <= 1).
    pub fn is_connected(&self) -> bool {
        self.components().block_count() <= 1
    }
}
