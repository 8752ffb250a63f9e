//! Log-space evaluation of the generalized Bell polynomial `B_n(w)`.
//!
//! `B_n(w)` satisfies the size-of-the-last-block recursion
//!
//! ```text
//! B_n(w) = sum_{s=1..n} C(n-1, s-1) w^{C(s,2)} B_{n-s}(w),   B_0 = 1,
//! ```
//!
//! obtained by conditioning on the clique containing the last vertex.
//! [`BellTable`] evaluates it entirely in the log domain; all summands
//! are nonnegative so a streaming log-sum-exp is unconditionally stable.

use crate::logspace::{choose2, log_add_exp, log_binomial};
use crate::{Error, LogValue, Result};

/// The edge-weight parameter in its three equivalent forms:
/// `t = log w = log(p / (1 - p))`.
///
/// `t = -inf` (`p = 0`, `w = 0`) is allowed and handled explicitly;
/// `p = 1` / `t = +inf` is rejected at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeBias {
    t: f64,
    p: f64,
    w: f64,
}

impl EdgeBias {
    /// From the edge probability `p` of the conditioned Erdős–Rényi model.
    pub fn from_p(p: f64) -> Result<EdgeBias> {
        if !(0.0..1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "p must lie in [0, 1), got {p}"
            )));
        }
        let w = p / (1.0 - p);
        Ok(EdgeBias {
            t: w.ln(),
            p,
            w,
        })
    }

    /// From the log-weight `t = log(p/(1-p))`; `-inf` means `p = 0`.
    pub fn from_t(t: f64) -> Result<EdgeBias> {
        if t.is_nan() || t == f64::INFINITY {
            return Err(Error::InvalidParameter(format!(
                "t must be a real number or -inf, got {t}"
            )));
        }
        Ok(EdgeBias {
            t,
            p: 1.0 / (1.0 + (-t).exp()),
            w: t.exp(),
        })
    }

    /// From the weight `w = p/(1-p)`.
    pub fn from_w(w: f64) -> Result<EdgeBias> {
        if !(w >= 0.0) || w == f64::INFINITY {
            return Err(Error::InvalidParameter(format!(
                "w must be a finite nonnegative number, got {w}"
            )));
        }
        Ok(EdgeBias {
            t: w.ln(),
            p: w / (1.0 + w),
            w,
        })
    }

    /// `t = log w`.
    pub fn t(self) -> f64 {
        self.t
    }

    /// The edge probability `p`.
    pub fn p(self) -> f64 {
        self.p
    }

    /// The weight `w`.
    pub fn w(self) -> f64 {
        self.w
    }

    /// `t * C(s, 2)` with the convention that an exponent of zero always
    /// gives log-weight zero, even at `t = -inf`.
    pub(crate) fn log_weight_clique(self, s: u64) -> f64 {
        if s < 2 {
            0.0
        } else {
            self.t * choose2(s)
        }
    }
}

/// Precomputed `log B_k(e^t)` for `k = 0..=n_max` at a fixed bias.
///
/// Immutable after construction; cheap to share across threads.
#[derive(Debug, Clone)]
pub struct BellTable {
    bias: EdgeBias,
    log_b: Vec<f64>,
}

impl BellTable {
    /// Runs the recursion up to `n_max` in `O(n_max^2)` time.
    ///
    /// Fails with [`Error::Capacity`] if some `log B_k` leaves the finite
    /// range of `f64` (possible only for enormous `t * C(n,2)`).
    pub fn build(n_max: usize, bias: EdgeBias) -> Result<BellTable> {
        let mut log_b = vec![0.0f64; n_max + 1];
        for n in 2..=n_max {
            let mut acc = f64::NEG_INFINITY;
            for s in 1..=n {
                let lw = bias.log_weight_clique(s as u64);
                if lw == f64::NEG_INFINITY {
                    continue;
                }
                let term = log_binomial(n as u64 - 1, s as u64 - 1) + lw + log_b[n - s];
                acc = log_add_exp(acc, term);
            }
            if !acc.is_finite() {
                return Err(Error::Capacity(format!(
                    "log B_{n} is not finite at t = {}",
                    bias.t
                )));
            }
            log_b[n] = acc;
        }
        Ok(BellTable { bias, log_b })
    }

    /// The bias the table was built at.
    pub fn bias(&self) -> EdgeBias {
        self.bias
    }

    /// Largest index `n` with `log B_n` available.
    pub fn n_max(&self) -> usize {
        self.log_b.len() - 1
    }

    /// `log B_n(e^t)`.
    pub fn log_bell(&self, n: usize) -> f64 {
        self.log_b[n]
    }

    /// `B_n(e^t)` as a [`LogValue`].
    pub fn bell(&self, n: usize) -> LogValue {
        LogValue::from_ln(self.log_b[n])
    }
}

/// `log(B_{n-s} / B_n)` at the table's bias; `<= 0` whenever `t >= 0`.
pub fn log_bell_ratio(table: &BellTable, n: usize, s: usize) -> f64 {
    assert!(s <= n && n <= table.n_max(), "log_bell_ratio out of range");
    table.log_bell(n - s) - table.log_bell(n)
}
