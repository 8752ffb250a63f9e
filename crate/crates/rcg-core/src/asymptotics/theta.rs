//! Theta-type lattice sums and the subcritical saddle point.
//!
//! `e_{w,l}(tau, theta) = sum_{t + tau in Z} t^l w^{t^2/2} e^{i t theta}`
//! is 1-periodic in `tau` and has a fast-converging Fourier series;
//! `E_{w,r}(tau, theta)` is the bounded Laplace-method correction factor
//! in `C_r(w, x e^{i theta}) = w^{-tau^2/2} e^tau tau^r / sqrt(2 pi tau)
//! e^{i tau theta} E_{w,r}(tau, theta)` where `tau (1/w)^{tau - 1/2} = x`.

use num_complex::Complex64;

use super::lambert::lambert_w;
use crate::logspace::log_add_exp;
use crate::{Error, Result};

use std::f64::consts::TAU as TWO_PI;

/// Relative tail threshold for direct lattice sums.
const DIRECT_TAIL: f64 = 1e-18;
/// Gaussian-factor cutoff for Fourier sums.
const FOURIER_TAIL: f64 = 1e-18;
/// Relative tail threshold for the `C_1` series.
const SERIES_TAIL: f64 = 1e-16;

/// Parameter bundle for the theta-type sums.
#[derive(Debug, Clone, Copy)]
pub struct ThetaParams {
    /// Weight, in `(0, 1)`.
    pub w: f64,
    /// Power of `t` in the summand.
    pub ell: u32,
    /// Lattice shift; the sum is 1-periodic in it.
    pub tau: f64,
    /// Phase.
    pub theta: f64,
}

/// Evaluation route for [`e_w_ell`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaMethod {
    /// The defining lattice sum, truncated at relative tail `1e-18`.
    Direct,
    /// The Fourier series, truncated where the Gaussian factor
    /// drops below `1e-18`.
    Fourier,
}

fn check_w(w: f64) -> Result<()> {
    if !(w > 0.0 && w < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "theta sums need w in (0,1), got {w}"
        )));
    }
    Ok(())
}

/// `e_{w,l}(tau, theta)` by either route; the two agree to `1e-12`
/// absolute for `l <= 4`.
pub fn e_w_ell(params: ThetaParams, method: ThetaMethod) -> Result<Complex64> {
    check_w(params.w)?;
    match method {
        ThetaMethod::Direct => Ok(e_direct(params)),
        ThetaMethod::Fourier => Ok(e_fourier(params)),
    }
}

/// Neumaier-compensated accumulator; the direct sums must hit 1e-12
/// absolute even when individual terms reach ~1e3 (small `log(1/w)`).
#[derive(Default)]
struct CompensatedSum {
    re: (f64, f64),
    im: (f64, f64),
}

impl CompensatedSum {
    fn add(&mut self, v: Complex64) {
        for (acc, x) in [(&mut self.re, v.re), (&mut self.im, v.im)] {
            let s = acc.0 + x;
            acc.1 += if acc.0.abs() >= x.abs() {
                (acc.0 - s) + x
            } else {
                (x - s) + acc.0
            };
            acc.0 = s;
        }
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.re.0 + self.re.1, self.im.0 + self.im.1)
    }
}

fn e_direct(params: ThetaParams) -> Complex64 {
    let ThetaParams { w, ell, tau, theta } = params;
    let term = |j: i64| -> Complex64 {
        let t = j as f64 - tau;
        let mag = t.powi(ell as i32) * w.powf(t * t / 2.0);
        Complex64::from_polar(1.0, t * theta) * mag
    };
    // Walk outward from the lattice point nearest t = 0; the Gaussian
    // factor kills the tails almost immediately.
    let j0 = tau.round() as i64;
    let mut sum = CompensatedSum::default();
    sum.add(term(j0));
    let mut scale = term(j0).norm().max(f64::MIN_POSITIVE);
    for side in [1i64, -1] {
        let mut k = 1i64;
        loop {
            let v = term(j0 + side * k);
            sum.add(v);
            scale += v.norm();
            if v.norm() < DIRECT_TAIL * scale {
                break;
            }
            k += 1;
        }
    }
    sum.value()
}

fn e_fourier(params: ThetaParams) -> Complex64 {
    let ThetaParams { w, ell, tau, theta } = params;
    let l = -w.ln();
    let prefactor = (TWO_PI / l.powi(ell as i32 + 1)).sqrt();
    // Inner polynomial in a = (2 pi s + theta)/sqrt(L):
    //   sum_{j <= l/2} l!/((l-2j)! 2^j j!) (i a)^{l-2j},
    // the Hermite-moment expansion of int (y + i a)^l e^{-y^2/2} dy.
    let inner = |a: f64| -> Complex64 {
        let ia = Complex64::new(0.0, a);
        let mut coef = 1.0f64; // l!/((l-2j)! 2^j j!) at j = 0
        let mut acc = ia.powu(ell);
        let mut j = 0u32;
        while 2 * (j + 1) <= ell {
            let m = ell - 2 * j;
            coef *= (m * (m - 1)) as f64 / (2.0 * (j + 1) as f64);
            j += 1;
            acc += coef * ia.powu(ell - 2 * j);
        }
        acc
    };
    let mut sum = Complex64::new(0.0, 0.0);
    for side in [1i64, -1] {
        let mut s = if side == 1 { 0i64 } else { -1 };
        loop {
            let freq = TWO_PI * s as f64 + theta;
            let gauss = (-freq * freq / (2.0 * l)).exp();
            if gauss < FOURIER_TAIL {
                break;
            }
            sum += gauss * inner(freq / l.sqrt()) * Complex64::from_polar(1.0, TWO_PI * s as f64 * tau);
            s += side;
        }
    }
    prefactor * sum
}

/// `E_{w,r}(tau, theta)`, the defining sum over `tau + t` in the positive
/// integers, with the same `1e-18` relative tail rule.
#[allow(non_snake_case)]
pub fn E_w_r(w: f64, r: u32, tau: f64, theta: f64) -> Result<Complex64> {
    check_w(w)?;
    if !(tau > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "E_w_r needs tau > 0, got {tau}"
        )));
    }
    // log |a(t)| with m = tau + t:
    //   (t^2/2) log w + t + (-m + r - 1/2) log(m/tau)
    //   + m log m - m + log sqrt(2 pi m) - log m!
    let log_mag = |m: i64| -> f64 {
        let mf = m as f64;
        let t = mf - tau;
        (t * t / 2.0) * w.ln()
            + t
            + (-mf + r as f64 - 0.5) * (mf / tau).ln()
            + mf * mf.ln()
            - mf
            + 0.5 * (TWO_PI * mf).ln()
            - statrs::function::gamma::ln_gamma(mf + 1.0)
    };
    let term = |m: i64| -> Complex64 {
        Complex64::from_polar(log_mag(m).exp(), (m as f64 - tau) * theta)
    };
    let m0 = tau.round().max(1.0) as i64;
    let mut sum = term(m0);
    let mut scale = sum.norm().max(f64::MIN_POSITIVE);
    // Down to m = 1.
    for m in (1..m0).rev() {
        let v = term(m);
        sum += v;
        scale += v.norm();
        if v.norm() < DIRECT_TAIL * scale {
            break;
        }
    }
    // Upward.
    let mut m = m0 + 1;
    loop {
        let v = term(m);
        sum += v;
        scale += v.norm();
        if v.norm() < DIRECT_TAIL * scale {
            break;
        }
        m += 1;
    }
    Ok(sum)
}

/// `log C_1(w, e^gamma)` by direct convergent summation of
/// `sum_k k w^{C(k,2)} e^{gamma k}/k!`, truncated at relative tail `1e-16`.
pub fn log_c1_series(w: f64, gamma: f64) -> Result<f64> {
    check_w(w)?;
    let log_term = |k: u64| -> f64 {
        (k as f64).ln() + crate::logspace::choose2(k) * w.ln() + gamma * k as f64
            - statrs::function::gamma::ln_gamma(k as f64 + 1.0)
    };
    let mut acc = log_term(1);
    let mut prev = acc;
    let mut k = 2u64;
    loop {
        let lt = log_term(k);
        acc = log_add_exp(acc, lt);
        // Terms are unimodal in k; stop once decreasing and negligible.
        if lt < prev && lt < acc + SERIES_TAIL.ln() {
            break;
        }
        prev = lt;
        k += 1;
        if k > 10_000_000 {
            return Err(Error::NoConvergence("C_1 series did not truncate".into()));
        }
    }
    Ok(acc)
}

/// The saddle point `tau` solving `C_1(w, tau (1/w)^{tau - 1/2}) = n e^{-s}`:
/// bisection on `gamma` in `C_1(w, e^gamma) = n e^{-s}`, then the
/// closed-form conversion `tau = W((log(1/w)/sqrt(w)) e^gamma)/log(1/w)`.
pub fn tau_of_n(w: f64, n: usize, s: f64) -> Result<f64> {
    check_w(w)?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    let log_target = (n as f64).ln() - s;
    // C_1 is strictly increasing in gamma; expand a bracket then bisect.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while log_c1_series(w, lo)? > log_target {
        lo -= 8.0;
    }
    while log_c1_series(w, hi)? < log_target {
        hi += 8.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if log_c1_series(w, mid)? < log_target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 * hi.abs().max(1.0) {
            break;
        }
    }
    let gamma = 0.5 * (lo + hi);
    let l = -w.ln();
    let tau = lambert_w(l / w.sqrt() * gamma.exp())? / l;
    let residual = tau_residual(w, tau, n, s)?;
    if residual >= 1e-9 {
        return Err(Error::NoConvergence(format!(
            "tau solve residual {residual} at w={w}, n={n}, s={s}"
        )));
    }
    Ok(tau)
}

/// `|C_1(w, tau (1/w)^{tau-1/2}) - n e^{-s}| / n`, the consistency
/// residual of a computed saddle point.
pub fn tau_residual(w: f64, tau: f64, n: usize, s: f64) -> Result<f64> {
    let gamma = tau.ln() - (tau - 0.5) * w.ln();
    let c1 = log_c1_series(w, gamma)?.exp();
    Ok((c1 - n as f64 * (-s).exp()).abs() / n as f64)
}
