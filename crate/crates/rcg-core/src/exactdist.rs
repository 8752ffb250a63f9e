//! Exact finite-`n` laws and moments of the clique count `C`, edge count
//! `M`, and uniform-vertex degree `D`, all driven by a [`BellTable`].
//!
//! The backbone is the degree law
//!
//! ```text
//! P(D = d) = C(n-1, d) w^{C(d+1,2)} B_{n-d-1}(w) / B_n(w),
//! ```
//!
//! whose normalization is exactly the `B_n` recursion restated, and the
//! expected-edge recursion
//!
//! ```text
//! m_n = sum_s C(n-1, s-1) w^{C(s,2)} (B_{n-s}/B_n) (C(s,2) + m_{n-s}).
//! ```

use crate::bell::{log_bell_ratio, BellTable};
use crate::logspace::{choose2, log_binomial};
use crate::{Error, Result};

/// A probability mass function on a contiguous integer support.
#[derive(Debug, Clone)]
pub struct Pmf {
    support_offset: i64,
    probs: Vec<f64>,
    deficit: f64,
}

impl Pmf {
    /// Builds from raw masses, normalizing defensively and recording the
    /// pre-normalization deficit `sum - 1`.
    pub fn from_masses(support_offset: i64, masses: Vec<f64>) -> Pmf {
        let sum: f64 = masses.iter().sum();
        let probs = masses.iter().map(|m| m / sum).collect();
        Pmf {
            support_offset,
            probs,
            deficit: sum - 1.0,
        }
    }

    /// Smallest support point.
    pub fn support_offset(&self) -> i64 {
        self.support_offset
    }

    /// Probabilities, indexed from the support offset.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// `P(X = v)`; zero outside the stored support.
    pub fn prob(&self, v: i64) -> f64 {
        let idx = v - self.support_offset;
        if idx < 0 || idx as usize >= self.probs.len() {
            0.0
        } else {
            self.probs[idx as usize]
        }
    }

    /// `sum(raw masses) - 1` before defensive normalization.
    pub fn normalization_deficit(&self) -> f64 {
        self.deficit
    }

    /// Support-weighted mean.
    pub fn mean(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(i, p)| (self.support_offset + i as i64) as f64 * p)
            .sum()
    }

    /// Variance.
    pub fn variance(&self) -> f64 {
        let mu = self.mean();
        self.probs
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let x = (self.support_offset + i as i64) as f64 - mu;
                x * x * p
            })
            .sum()
    }

    /// Index of the largest probability (smallest value on ties).
    pub fn mode(&self) -> i64 {
        let mut best = 0usize;
        for (i, &p) in self.probs.iter().enumerate() {
            if p > self.probs[best] {
                best = i;
            }
        }
        self.support_offset + best as i64
    }
}

fn check_n(table: &BellTable, n: usize, min: usize) -> Result<()> {
    if n < min || n > table.n_max() {
        return Err(Error::InvalidParameter(format!(
            "n = {n} outside [{min}, {}]",
            table.n_max()
        )));
    }
    Ok(())
}

/// Log-mass of `P(D = d)` before normalization; `-inf` where impossible.
fn degree_log_mass(table: &BellTable, n: usize, d: usize) -> f64 {
    let bias = table.bias();
    let lw = bias.log_weight_clique(d as u64 + 1);
    if lw == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    log_binomial(n as u64 - 1, d as u64) + lw + table.log_bell(n - d - 1) - table.log_bell(n)
}

/// Exact law of the degree of a uniformly chosen vertex, `d = 0..n-1`.
pub fn degree_pmf(table: &BellTable, n: usize) -> Result<Pmf> {
    check_n(table, n, 1)?;
    let masses: Vec<f64> = (0..n)
        .map(|d| degree_log_mass(table, n, d).exp())
        .collect();
    Ok(Pmf::from_masses(0, masses))
}

/// `P(C = 1) = w^{C(n,2)} / B_n(w)` — the graph is one clique.
pub fn prob_single_clique(table: &BellTable, n: usize) -> Result<f64> {
    check_n(table, n, 1)?;
    let lw = table.bias().log_weight_clique(n as u64);
    if lw == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    Ok((lw - table.log_bell(n)).exp())
}

/// `E[M_n]` by the expected-edge recursion; `m_0 = 0`, `O(n^2)` time.
pub fn expected_edges(table: &BellTable, n: usize) -> Result<f64> {
    Ok(*expected_edges_all(table, n)?.last().unwrap())
}

/// The whole sequence `m_0..m_n`, which the critical solver reuses.
pub fn expected_edges_all(table: &BellTable, n: usize) -> Result<Vec<f64>> {
    if n > table.n_max() {
        return Err(Error::InvalidParameter(format!(
            "n = {n} exceeds table n_max = {}",
            table.n_max()
        )));
    }
    let bias = table.bias();
    let mut m = vec![0.0f64; n + 1];
    for k in 2..=n {
        let mut acc = 0.0;
        for s in 1..=k {
            let lw = bias.log_weight_clique(s as u64);
            if lw == f64::NEG_INFINITY {
                continue;
            }
            let log_coef = log_binomial(k as u64 - 1, s as u64 - 1)
                + lw
                + table.log_bell(k - s)
                - table.log_bell(k);
            acc += log_coef.exp() * (choose2(s as u64) + m[k - s]);
        }
        m[k] = acc;
    }
    Ok(m)
}

/// `Var(M_n)`. At `w = 1` this is the exact Bell-ratio formula
/// `C(n,2)(a - a^2) + (C(n,2)^2 - C(n,2))(b - a^2)` with
/// `a = B_{n-1}/B_n`, `b = B_{n-2}/B_n`; at general `w` it is the second
/// central difference of `t -> log B_n(e^t)` with step `1e-4`
/// (documented accuracy ~1e-4 relative).
pub fn edge_variance(table: &BellTable, n: usize) -> Result<f64> {
    check_n(table, n, 1)?;
    if n == 1 {
        return Ok(0.0);
    }
    let t = table.bias().t();
    if t == 0.0 {
        let a = log_bell_ratio(table, n, 1).exp();
        let b = log_bell_ratio(table, n, 2).exp();
        let c2 = choose2(n as u64);
        return Ok(c2 * (a - a * a) + (c2 * c2 - c2) * (b - a * a));
    }
    let h = 1e-4;
    let eval = |t: f64| -> Result<f64> {
        let table = BellTable::build(n, crate::bell::EdgeBias::from_t(t)?)?;
        Ok(table.log_bell(n))
    };
    Ok((eval(t + h)? - 2.0 * table.log_bell(n) + eval(t - h)?) / (h * h))
}

/// `E[C^(s)]`, the expected number of cliques of size `s`:
/// `C(n,s) w^{C(s,2)} B_{n-s}/B_n`.
pub fn expected_clique_count_by_size(table: &BellTable, n: usize, s: usize) -> Result<f64> {
    check_n(table, n, 1)?;
    if s < 1 || s > n {
        return Err(Error::InvalidParameter(format!(
            "clique size s = {s} outside [1, {n}]"
        )));
    }
    let lw = table.bias().log_weight_clique(s as u64);
    if lw == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    Ok((log_binomial(n as u64, s as u64) + lw + log_bell_ratio(table, n, s)).exp())
}

/// `E[C_n]`, the expected number of cliques. At `w = 1` (and a table deep
/// enough) uses the identity `B_{n+1}/B_n - 1`; otherwise sums
/// [`expected_clique_count_by_size`] over `s`.
pub fn expected_cliques(table: &BellTable, n: usize) -> Result<f64> {
    check_n(table, n, 1)?;
    if table.bias().t() == 0.0 && table.n_max() > n {
        return Ok((table.log_bell(n + 1) - table.log_bell(n)).exp() - 1.0);
    }
    let mut acc = 0.0;
    for s in 1..=n {
        acc += expected_clique_count_by_size(table, n, s)?;
    }
    Ok(acc)
}

/// `PGF_M(u) = B_n(u w) / B_n(w)`, from two tables built at biases
/// `log(u w)` and `log w`.
pub fn edges_pgf_eval(table_w: &BellTable, table_uw: &BellTable, n: usize) -> Result<f64> {
    check_n(table_w, n, 1)?;
    check_n(table_uw, n, 1)?;
    Ok((table_uw.log_bell(n) - table_w.log_bell(n)).exp())
}
