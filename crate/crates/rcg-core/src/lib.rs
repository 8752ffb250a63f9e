//! Random cluster graphs: the Erdős–Rényi model conditioned on every
//! connected component being a clique.
//!
//! The partition function of the model on `n` vertices with edge weight
//! `w = p/(1-p)` is the generalized Bell polynomial
//!
//! ```text
//! B_n(w) = sum over cluster graphs G on n labelled vertices of w^{m(G)}
//! ```
//!
//! where `m(G)` is the number of edges. At `w = 1` these are the Bell
//! numbers. Everything in this crate is built on top of that polynomial:
//!
//! * [`bell`] — log-domain tables of `B_n(w)` via the size-of-the-last-block
//!   recursion, valid for any `w >= 0` including very large `n`;
//! * [`oracle`] — brute-force enumeration of set partitions and exact
//!   integer-coefficient Bell polynomials for small `n`, used as the
//!   ground truth for everything else;
//! * [`exactdist`] — exact finite-`n` distributions (cluster-size/degree
//!   law, edge-count moments, clique-count moments);
//! * [`sampler`] — exact sequential sampler and a rejection sampler;
//! * [`critical`] — solving for the critical edge probability where the
//!   graph becomes a single clique with given probability;
//! * [`asymptotics`] — Lambert-W based asymptotics: critical-regime
//!   moments, theta-function machinery for the subcritical regime,
//!   discrete Gaussian degree law, sparse and supercritical limits;
//! * [`community`] — planted partition models, the equivalent modularity
//!   objective with the matching resolution parameter, and a Louvain
//!   maximizer.

#![forbid(unsafe_code)]

pub mod asymptotics;
pub mod bell;
pub mod community;
pub mod critical;
pub mod exactdist;
pub mod graph;
pub mod logspace;
pub mod oracle;
pub mod rng;
pub mod sampler;

pub use bell::{BellTable, EdgeBias};
pub use graph::{Partition, SimpleGraph};
pub use logspace::LogValue;
pub use rng::RngStream;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter was outside its documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A log-domain quantity left the representable range of `f64`.
    #[error("numeric capacity exceeded: {0}")]
    Capacity(String),
    /// An iterative solver failed to converge.
    #[error("no convergence: {0}")]
    NoConvergence(String),
    /// Rejection sampling exhausted its attempt budget.
    #[error("rejection sampler exceeded {attempts} attempts")]
    RejectionBudget {
        /// Number of attempts made before giving up.
        attempts: u64,
    },
    /// Input/output or deserialization failure (config files, CSV).
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
