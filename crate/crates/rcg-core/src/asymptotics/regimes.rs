//! Asymptotic moment formulas in the three parameter regimes.
//!
//! Fixed `w < 1` (subcritical): cluster counts, edge counts, and the
//! size-biased degree all localize around the saddle point `tau`,
//! with `tau ~ sqrt(2 log n / log(1/w))`.  The degree converges to a
//! discrete Gaussian on the integer lattice shifted by `tau`.
//! At `w = 1` the degree is asymptotically Poisson with mean `W(n)`.
//! For `p -> 0` with `d = lambda` fixed, the degree law has an explicit
//! two-parameter limit.

use super::lambert::lambert_w;
use super::theta::{e_w_ell, E_w_r, ThetaMethod, ThetaParams};
use crate::exactdist::degree_pmf;
use crate::{Error, Result};

/// Which parameter regime a moment formula belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `w < 1` fixed.
    Subcritical,
    /// `p = critical window`, `w -> 1`.
    Critical,
    /// `w > 1` fixed.
    Supercritical,
}

/// A mean/variance pair together with its leading-order simplification.
#[derive(Debug, Clone, Copy)]
pub struct RegimeMoments {
    pub regime: Regime,
    /// Pre-asymptotic (saddle-point) value.
    pub mean: f64,
    pub variance: f64,
    /// Leading-order closed form.
    pub mean_leading: f64,
    pub variance_leading: f64,
}

fn e_real(w: f64, ell: u32, tau: f64) -> Result<f64> {
    Ok(e_w_ell(
        ThetaParams {
            w,
            ell,
            tau,
            theta: 0.0,
        },
        ThetaMethod::Direct,
    )?
    .re)
}

#[allow(non_snake_case)]
fn E_real(w: f64, r: u32, tau: f64) -> Result<f64> {
    Ok(E_w_r(w, r, tau, 0.0)?.re)
}

/// Moments of the number of clusters for fixed `w < 1`.
///
/// Mean `(n/tau) E_0/E_1`, variance `(n/tau^3)(e_0 e_2 - e_1^2)/e_0^2`;
/// leading order `n sqrt(log(1/w) / (2 log n))` for the mean.
pub fn subcritical_clique_moments(w: f64, n: usize) -> Result<RegimeMoments> {
    let tau = super::theta::tau_of_n(w, n, 0.0)?;
    let nf = n as f64;
    let (e0, e1, e2) = (e_real(w, 0, tau)?, e_real(w, 1, tau)?, e_real(w, 2, tau)?);
    let l = (1.0 / w).ln();
    Ok(RegimeMoments {
        regime: Regime::Subcritical,
        mean: nf / tau * E_real(w, 0, tau)? / E_real(w, 1, tau)?,
        variance: nf / tau.powi(3) * (e0 * e2 - e1 * e1) / (e0 * e0),
        mean_leading: nf * (l / (2.0 * nf.ln())).sqrt(),
        variance_leading: nf / tau.powi(3) / l,
    })
}

/// Moments of the edge count for fixed `w < 1`.
///
/// Mean `(n tau E_2/E_1 - n)/2`, variance
/// `n tau^3 (E_2 E_4 - E_3^2)/(4 E_1 E_2)`; leading order `n tau / 2`.
pub fn subcritical_edge_moments(w: f64, n: usize) -> Result<RegimeMoments> {
    let tau = super::theta::tau_of_n(w, n, 0.0)?;
    let nf = n as f64;
    let (e1, e2, e3, e4) = (
        E_real(w, 1, tau)?,
        E_real(w, 2, tau)?,
        E_real(w, 3, tau)?,
        E_real(w, 4, tau)?,
    );
    Ok(RegimeMoments {
        regime: Regime::Subcritical,
        mean: (nf * tau * e2 / e1 - nf) / 2.0,
        variance: nf * tau.powi(3) * (e2 * e4 - e3 * e3) / (4.0 * e1 * e2),
        mean_leading: nf * tau / 2.0,
        variance_leading: nf * tau / (1.0 / w).ln(),
    })
}

/// Moments of the size-biased cluster degree `D = S - 1` for fixed `w < 1`.
///
/// Mean `tau - 1 + e_1/e_0`, variance `e_2/e_0 - (e_1/e_0)^2`; leading
/// order `tau - 1` and `1/log(1/w)`.
pub fn subcritical_degree_moments(w: f64, n: usize) -> Result<RegimeMoments> {
    let tau = super::theta::tau_of_n(w, n, 0.0)?;
    let (e0, e1, e2) = (e_real(w, 0, tau)?, e_real(w, 1, tau)?, e_real(w, 2, tau)?);
    Ok(RegimeMoments {
        regime: Regime::Subcritical,
        mean: tau - 1.0 + e1 / e0,
        variance: e2 / e0 - (e1 / e0) * (e1 / e0),
        mean_leading: tau - 1.0,
        variance_leading: 1.0 / (1.0 / w).ln(),
    })
}

/// The discrete Gaussian `P(d) = w^{(d - lambda)^2/2} / e_{w,0}(lambda, 0)`
/// on `d = 0, 1, 2, ...`, the limiting degree law with `lambda = tau - 1`.
///
/// Returned for `d in 0..len`; the omitted mass is negligible when
/// `len` exceeds `lambda` by a few standard deviations.
pub fn discrete_gaussian_pmf(w: f64, lambda: f64, len: usize) -> Result<Vec<f64>> {
    if !(w > 0.0 && w < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "discrete Gaussian needs w in (0,1), got {w}"
        )));
    }
    // Normalizer over all of Z shifted by lambda: e_{w,0}(lambda, 0).
    let z = e_w_ell(
        ThetaParams {
            w,
            ell: 0,
            tau: lambda,
            theta: 0.0,
        },
        ThetaMethod::Direct,
    )?
    .re;
    Ok((0..len)
        .map(|d| {
            let t = d as f64 - lambda;
            w.powf(t * t / 2.0) / z
        })
        .collect())
}

/// Total variation distance between the exact degree law at `w = 1`
/// and Poisson with mean `W(n)`.
pub fn poisson_tv(n: usize) -> Result<f64> {
    let table = crate::bell::BellTable::build(n, crate::bell::EdgeBias::from_w(1.0)?)?;
    let pmf = degree_pmf(&table, n)?;
    let mu = lambert_w(n as f64)?;
    let mut tv = 0.0;
    let mut pois_covered = 0.0;
    let mut log_pois = -mu; // log P(Pois = 0)
    for d in 0..n {
        let q = log_pois.exp();
        tv += 0.5 * (pmf.prob(d as i64) - q).abs();
        pois_covered += q;
        log_pois += mu.ln() - ((d + 1) as f64).ln();
    }
    // Poisson mass beyond the degree support counts fully.
    tv += 0.5 * (1.0 - pois_covered).max(0.0);
    Ok(tv)
}

/// `P(D = 0)` in the sparse limit `n p -> lambda`:
/// the positive root of `lambda x^2 + x - 1 = 0`.
pub fn sparse_degree_limit(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "sparse limit needs lambda > 0, got {lambda}"
        )));
    }
    Ok(((4.0 * lambda + 1.0).sqrt() - 1.0) / (2.0 * lambda))
}

/// Squared relative gap `((d' - d)/(d + 1))^2` appearing in the sparse
/// degree-law exponent.
pub fn sparse_exponent(d: f64, d_prime: f64) -> f64 {
    ((d_prime - d) / (d + 1.0)).powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clique_mean_matches_exact_expectation() {
        // The saddle form is nearly exact already at n = 300.
        let w = 1.0 / 3.0;
        let n = 300;
        let table =
            crate::bell::BellTable::build(n, crate::bell::EdgeBias::from_w(w).unwrap()).unwrap();
        let exact = crate::exactdist::expected_cliques(&table, n).unwrap();
        let m = subcritical_clique_moments(w, n).unwrap();
        assert!((m.mean / exact - 1.0).abs() < 1e-2, "{} vs {exact}", m.mean);
        assert!(m.variance > 0.0);
        assert_eq!(m.regime, Regime::Subcritical);
    }

    #[test]
    fn clique_mean_approaches_leading_order() {
        // The n sqrt(L/(2 log n)) simplification converges like
        // 1/sqrt(log n); the ratio shrinks toward 1 but is still ~1.28
        // at n = 1e5.
        let mut last = f64::INFINITY;
        for n in [1_000usize, 10_000, 100_000] {
            let m = subcritical_clique_moments(1.0 / 3.0, n).unwrap();
            let ratio = m.mean / m.mean_leading;
            assert!(ratio > 1.0 && ratio < last, "n={n}: {ratio}");
            last = ratio;
        }
        assert!(last < 1.3);
    }

    #[test]
    fn edge_mean_matches_exact_expectation() {
        let w = 1.0 / 3.0;
        let n = 300;
        let table =
            crate::bell::BellTable::build(n, crate::bell::EdgeBias::from_w(w).unwrap()).unwrap();
        let exact = crate::exactdist::expected_edges(&table, n).unwrap();
        let m = subcritical_edge_moments(w, n).unwrap();
        assert!((m.mean / exact - 1.0).abs() < 1e-2, "{} vs {exact}", m.mean);
        assert!(m.variance > 0.0);
    }

    #[test]
    fn edge_mean_approaches_n_tau_over_two() {
        // mean/(n tau/2) = 1 - 1/tau + o(1); slow convergence from below.
        let mut last = 0.0;
        for n in [1_000usize, 10_000, 100_000] {
            let m = subcritical_edge_moments(1.0 / 3.0, n).unwrap();
            let ratio = m.mean / m.mean_leading;
            assert!(ratio > last && ratio < 1.0, "n={n}: {ratio}");
            last = ratio;
        }
        assert!(last > 0.7);
    }

    #[test]
    fn degree_moments_match_exact_law() {
        let w = 1.0 / 3.0;
        let n = 300;
        let table =
            crate::bell::BellTable::build(n, crate::bell::EdgeBias::from_w(w).unwrap()).unwrap();
        let exact = degree_pmf(&table, n).unwrap();
        let m = subcritical_degree_moments(w, n).unwrap();
        assert!((m.mean - exact.mean()).abs() < 0.3);
        assert!(m.variance > 0.0);
    }

    #[test]
    fn degree_mean_scales_like_sqrt_log_n() {
        // E[D] = Theta(sqrt(log n)): the normalized mean stays in a
        // fixed band over a decade of n.
        let w = 1.0 / 3.0;
        for n in [200usize, 500, 1000, 2000] {
            let m = subcritical_degree_moments(w, n).unwrap();
            let normalized = m.mean / (n as f64).ln().sqrt();
            assert!(
                (0.3..1.5).contains(&normalized),
                "n={n}: normalized mean {normalized}"
            );
        }
    }

    #[test]
    fn degree_variance_stays_bounded() {
        let mut n = 100;
        while n <= 2000 {
            let m = subcritical_degree_moments(0.4, n).unwrap();
            assert!(m.variance > 0.0 && m.variance < 5.0, "n={n}: {}", m.variance);
            n *= 2;
        }
    }

    #[test]
    fn discrete_gaussian_properties() {
        let w = 0.3;
        let lambda = 6.0;
        let pmf = discrete_gaussian_pmf(w, lambda, 60).unwrap();
        let total: f64 = pmf.iter().sum();
        // Mass below d = 0 is tiny at lambda = 6 but not zero.
        assert!((total - 1.0).abs() < 1e-6);
        // Symmetry about lambda on the lattice.
        assert!((pmf[4] - pmf[8]).abs() < 1e-15);
        assert!((pmf[2] - pmf[10]).abs() < 1e-18);
        // Integer lambda: P(lambda) = 1/e_{w,0}(0,0) exactly.
        let z: f64 = (-200..=200i64)
            .map(|t| w.powf((t * t) as f64 / 2.0))
            .sum();
        assert!((pmf[6] - 1.0 / z).abs() < 1e-15);
    }

    #[test]
    fn poisson_tv_decreases() {
        let mut last = f64::INFINITY;
        for n in [25usize, 100, 400, 1600] {
            let tv = poisson_tv(n).unwrap();
            assert!(tv < last, "n={n}: {tv} !< {last}");
            assert!(tv < 0.2);
            last = tv;
        }
    }

    #[test]
    fn sparse_limit_values() {
        // lambda = 1 gives 1/phi, the inverse golden ratio.
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((sparse_degree_limit(1.0).unwrap() - 1.0 / phi).abs() < 1e-15);
        // Small lambda: almost surely isolated.
        assert!(sparse_degree_limit(1e-9).unwrap() > 0.999_999);
        assert!(sparse_degree_limit(-1.0).is_err());
        assert!((sparse_exponent(1.0, 3.0) - 1.0).abs() < 1e-15);
    }
}
