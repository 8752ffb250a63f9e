//! The polynomial calculus at criticality (`w = 1`).
//!
//! `C_r(1, z) = (z d/dz)^r (e^z - 1) = P_r(z) e^z` with `P_1 = z` and
//! `P_{r+1} = z P_r + z P_r'`; evaluated at `z = W(n)` these give the
//! quantities `c_r = C_r(1, W(n))` driving the critical edge moments,
//! together with the Bell-number saddle-point formula and the
//! supercritical complete-graph expansion.

use super::lambert::lambert_w;

use crate::{Error, Result};

/// `P_r(z)`, a monic degree-`r` polynomial with nonnegative integer
/// coefficients (Stirling numbers of the second kind).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrPolynomial {
    r: usize,
    /// `coeffs[k]` is the coefficient of `z^k`.
    coeffs: Vec<i128>,
}

impl CrPolynomial {
    /// Builds `P_r` from the recurrence; `r >= 1`.
    pub fn new(r: usize) -> Result<CrPolynomial> {
        if r < 1 || r > 24 {
            return Err(Error::InvalidParameter(format!(
                "P_r supported for 1 <= r <= 24, got {r}"
            )));
        }
        let mut coeffs: Vec<i128> = vec![0, 1]; // P_1 = z
        for _ in 1..r {
            // P_{r+1}[k] = P_r[k-1] + k P_r[k].
            let mut next = vec![0i128; coeffs.len() + 1];
            for (k, &a) in coeffs.iter().enumerate() {
                next[k + 1] += a;
                next[k] += k as i128 * a;
            }
            coeffs = next;
        }
        Ok(CrPolynomial { r, coeffs })
    }

    /// Degree, equal to `r`.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Coefficients by ascending power.
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, z: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * z + c as f64)
    }

    fn from_coeffs(coeffs: Vec<i128>) -> CrPolynomial {
        let r = coeffs.len().saturating_sub(1);
        CrPolynomial { r, coeffs }
    }

    /// Exact product.
    pub fn mul(&self, other: &CrPolynomial) -> CrPolynomial {
        let mut out = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CrPolynomial::from_coeffs(out)
    }

    /// Exact difference.
    pub fn sub(&self, other: &CrPolynomial) -> CrPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0i128; len];
        for (i, v) in out.iter_mut().enumerate() {
            *v = self.coeffs.get(i).copied().unwrap_or(0)
                - other.coeffs.get(i).copied().unwrap_or(0);
        }
        CrPolynomial::from_coeffs(out)
    }
}

/// `c_r = C_r(1, W(n))`: `c_0 = e^{W(n)} - 1`, `c_r = P_r(W(n)) e^{W(n)}`
/// for `r >= 1`. Uses the identity `e^{W(n)} = n / W(n)`.
pub fn c_r(n: usize, r: usize) -> Result<f64> {
    if r > 8 {
        return Err(Error::InvalidParameter(format!(
            "c_r supported for r <= 8, got {r}"
        )));
    }
    let wn = lambert_w(n as f64)?;
    let exp_w = if n == 0 { 1.0 } else { n as f64 / wn };
    if r == 0 {
        return Ok(exp_w - 1.0);
    }
    Ok(CrPolynomial::new(r)?.eval(wn) * exp_w)
}

/// First and second moments of the edge count at criticality:
/// mean `(c_2 - c_1)/2 = n W(n)/2` and variance `(c_2 c_4 - c_3^2)/(4 c_2)`.
///
/// The numerator `c_2 c_4 - c_3^2 = (P_2 P_4 - P_3^2)(W) e^{2W}` suffers
/// catastrophic cancellation in floating point, so the polynomial
/// `P_2 P_4 - P_3^2` is formed exactly in integer arithmetic first.
pub fn critical_edge_moments(n: usize) -> Result<super::RegimeMoments> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    let wn = lambert_w(n as f64)?;
    let mean = (c_r(n, 2)? - c_r(n, 1)?) / 2.0;
    let q = CrPolynomial::new(2)?
        .mul(&CrPolynomial::new(4)?)
        .sub(&CrPolynomial::new(3)?.mul(&CrPolynomial::new(3)?));
    let exp_w = n as f64 / wn;
    let variance = q.eval(wn) * exp_w * exp_w / (4.0 * c_r(n, 2)?);
    Ok(super::RegimeMoments {
        regime: super::Regime::Critical,
        mean,
        variance,
        mean_leading: n as f64 * wn / 2.0,
        variance_leading: n as f64 * wn * wn / 4.0,
    })
}

/// The saddle-point estimate of `log(B_n / n!)` with `r = W(n+1)`:
/// `(e^r - 1) - n log r - log sqrt(2 pi r (r+1) e^r)`.
pub fn bell_asymptotic(n: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    let r = lambert_w(n as f64 + 1.0)?;
    let exp_r = (n as f64 + 1.0) / r;
    Ok((exp_r - 1.0)
        - n as f64 * r.ln()
        - 0.5 * (2.0 * std::f64::consts::PI * r * (r + 1.0)).ln()
        - 0.5 * r)
}

/// Supercritical expansion of `P(CG_{n,p} = K_n)` to order `R` in
/// `w^{-n}`: `1 + sum_{m=1..R-1} w^{-mn} P_m(n)` with `P_1 = -wn` and
/// `P_2 = (w^2/2)((w^2 + w) n + (2 - w - w^2) n^2)`.
pub fn supercritical_complete_prob(w: f64, n: usize, order: usize) -> Result<f64> {
    if !(w > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "supercritical expansion needs w > 1, got {w}"
        )));
    }
    if !(1..=3).contains(&order) {
        return Err(Error::InvalidParameter(format!(
            "order R must be 1, 2, or 3, got {order}"
        )));
    }
    let nf = n as f64;
    let mut prob = 1.0;
    if order >= 2 {
        prob += (-nf * w.ln()).exp() * (-w * nf);
    }
    if order >= 3 {
        let p2 = (w * w / 2.0) * ((w * w + w) * nf + (2.0 - w - w * w) * nf * nf);
        prob += (-2.0 * nf * w.ln()).exp() * p2;
    }
    Ok(prob)
}
