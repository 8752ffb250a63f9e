//! The critical sequence: for which `p` does the conditioned graph
//! collapse into a single clique with probability `q`?
//!
//! `P(C = 1) = e^{C(n,2) t} / B_n(e^t)` is strictly increasing in `t`,
//! so `t_n(q)` solves `f(t) = C(n,2) t - log B_n(e^t) - log q = 0`.
//! Newton iteration uses `f'(t) = C(n,2) - E[M_{n,p(t)}]` (the
//! expected-edge recursion); a maintained bracket with bisection
//! fallback guarantees termination even though Newton convergence is
//! unproven for this map.

use crate::bell::{BellTable, EdgeBias};
use crate::exactdist::expected_edges;
use crate::logspace::{choose2, ln_factorial};
use crate::{Error, Result};

/// Outcome of a critical-sequence solve.
#[derive(Debug, Clone, Copy)]
pub struct CriticalResult {
    /// Number of vertices.
    pub n: usize,
    /// Target single-clique probability.
    pub q: f64,
    /// Root of `C(n,2) t - log B_n(e^t) = log q`.
    pub t_star: f64,
    /// `p(t_star)`.
    pub p_star: f64,
    /// Iterations used (Newton steps plus bisection fallbacks).
    pub iterations: usize,
    /// `|C(n,2) t_star - log B_n(e^{t_star}) - log q|` at the root.
    pub residual: f64,
}

/// `p(t) = (1 + e^{-t})^{-1}`, the inverse of `t = log(p/(1-p))`.
pub fn p_of_t(t: f64) -> f64 {
    1.0 / (1.0 + (-t).exp())
}

fn objective(n: usize, t: f64, log_q: f64) -> Result<(f64, f64)> {
    let table = BellTable::build(n, EdgeBias::from_t(t)?)?;
    let f = choose2(n as u64) * t - table.log_bell(n) - log_q;
    let fprime = choose2(n as u64) - expected_edges(&table, n)?;
    Ok((f, fprime))
}

/// Solves `P(C_{n,p} = 1) = q` for `p`.
///
/// Newton from `t_0 = (log B_n(1) - log q)/C(n,2)`, safeguarded by the
/// bracket `[(log B_n(1) + log q)/C(n,2), log n!/C(n,2) + 1]` (the lower
/// end is the exact Lemma-7.1 bound on the root), expanded if necessary;
/// any Newton step leaving the bracket is replaced by bisection.
pub fn solve_critical(n: usize, q: f64, tol: f64) -> Result<CriticalResult> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParameter(format!("q = {q} outside (0,1)")));
    }
    let c2 = choose2(n as u64);
    let log_q = q.ln();
    let log_bell_1 = BellTable::build(n, EdgeBias::from_w(1.0)?)?.log_bell(n);
    let mut lo = (log_bell_1 + log_q) / c2;
    let mut hi = ln_factorial(n as u64) / c2 + 1.0;
    // f is strictly increasing; widen the bracket until it straddles zero.
    let mut iterations = 0usize;
    while objective(n, lo, log_q)?.0 > 0.0 {
        lo -= 1.0;
        iterations += 1;
        if iterations > 200 {
            return Err(Error::NoConvergence(format!(
                "no lower bracket for n={n}, q={q}"
            )));
        }
    }
    while objective(n, hi, log_q)?.0 < 0.0 {
        hi += 1.0;
        iterations += 1;
        if iterations > 200 {
            return Err(Error::NoConvergence(format!(
                "no upper bracket for n={n}, q={q}"
            )));
        }
    }
    let mut t = (log_bell_1 - log_q) / c2;
    if t <= lo || t >= hi {
        t = 0.5 * (lo + hi);
    }
    loop {
        iterations += 1;
        if iterations > 200 {
            return Err(Error::NoConvergence(format!(
                "critical solve for n={n}, q={q} stalled in [{lo}, {hi}]"
            )));
        }
        let (f, fprime) = objective(n, t, log_q)?;
        if f.abs() < tol {
            return Ok(CriticalResult {
                n,
                q,
                t_star: t,
                p_star: p_of_t(t),
                iterations,
                residual: f.abs(),
            });
        }
        if f > 0.0 {
            hi = t;
        } else {
            lo = t;
        }
        let newton = t - f / fprime;
        t = if fprime > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
}

/// The Thm 1.5 sandwich around `p_n(q)`:
/// `p_L = p(2(log n - log log n - 1)/n)`, `p_U = p(2(log n - 1)/n)`.
pub fn critical_bounds(n: usize) -> Result<(f64, f64)> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "critical bounds need n >= 3, got {n}"
        )));
    }
    let ln_n = (n as f64).ln();
    let p_l = p_of_t(2.0 * (ln_n - ln_n.ln() - 1.0) / n as f64);
    let p_u = p_of_t(2.0 * (ln_n - 1.0) / n as f64);
    Ok((p_l, p_u))
}

/// Solves `B_n(e^{t'}) = n!` by bisection on the strictly increasing map
/// `t -> log B_n(e^t)`; the root satisfies `t' <= log n!/C(n,2)`.
pub fn solve_t_prime(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    let target = ln_factorial(n as u64);
    let g = |t: f64| -> Result<f64> {
        Ok(BellTable::build(n, EdgeBias::from_t(t)?)?.log_bell(n) - target)
    };
    // B_n(1) <= n! and the complete-graph term alone gives
    // B_n(e^t) >= e^{t C(n,2)} = n! at the upper endpoint.
    let (mut lo, mut hi) = (0.0f64, target / choose2(n as u64));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if g(0.5 * (lo + hi))?.abs() < 1e-10 {
            break;
        }
    }
    let t = 0.5 * (lo + hi);
    if g(t)?.abs() >= 1e-10 {
        return Err(Error::NoConvergence(format!("t' solve for n={n}")));
    }
    Ok(t)
}
