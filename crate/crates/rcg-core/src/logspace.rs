//! Log-domain scalar arithmetic.
//!
//! All partition-function work in this crate happens on logarithms of
//! nonnegative quantities. A [`LogValue`] stores `ln x` for `x >= 0`,
//! with `x = 0` represented by `-inf`. Addition of the underlying values
//! uses the standard streaming log-sum-exp trick, which never overflows
//! as long as the result itself is representable.

use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign};

/// A nonnegative real number stored as its natural logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue(f64);

impl LogValue {
    /// The number zero (`ln 0 = -inf`).
    pub const ZERO: LogValue = LogValue(f64::NEG_INFINITY);
    /// The number one (`ln 1 = 0`).
    pub const ONE: LogValue = LogValue(0.0);

    /// Wraps a raw logarithm. `NaN` is rejected; `-inf` means zero.
    pub fn from_ln(ln: f64) -> LogValue {
        assert!(!ln.is_nan(), "LogValue cannot hold NaN");
        LogValue(ln)
    }

    /// Converts from the linear domain. Panics on negative input.
    pub fn from_linear(x: f64) -> LogValue {
        assert!(x >= 0.0, "LogValue requires a nonnegative value, got {x}");
        LogValue(x.ln())
    }

    /// The stored logarithm.
    pub fn ln(self) -> f64 {
        self.0
    }

    /// Back to the linear domain (may overflow to `inf`).
    pub fn linear(self) -> f64 {
        self.0.exp()
    }

    /// True iff this is exactly zero.
    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// `self^k` for a real exponent; `0^0 = 1`.
    pub fn powf(self, k: f64) -> LogValue {
        if self.is_zero() && k == 0.0 {
            return LogValue::ONE;
        }
        LogValue(mul_weight(k, self.0))
    }
}

/// `a * b` where `a` is a plain coefficient and `b` a logarithm, with the
/// convention `0 * (-inf) = 0` (an absent term contributes weight one).
fn mul_weight(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a * b
    }
}

impl Add for LogValue {
    type Output = LogValue;

    fn add(self, rhs: LogValue) -> LogValue {
        LogValue(log_add_exp(self.0, rhs.0))
    }
}

impl AddAssign for LogValue {
    fn add_assign(&mut self, rhs: LogValue) {
        self.0 = log_add_exp(self.0, rhs.0);
    }
}

impl Mul for LogValue {
    type Output = LogValue;

    fn mul(self, rhs: LogValue) -> LogValue {
        if self.is_zero() || rhs.is_zero() {
            return LogValue::ZERO;
        }
        LogValue(self.0 + rhs.0)
    }
}

impl MulAssign for LogValue {
    fn mul_assign(&mut self, rhs: LogValue) {
        *self = *self * rhs;
    }
}

impl Div for LogValue {
    type Output = LogValue;

    fn div(self, rhs: LogValue) -> LogValue {
        assert!(!rhs.is_zero(), "division of LogValue by zero");
        if self.is_zero() {
            return LogValue::ZERO;
        }
        LogValue(self.0 - rhs.0)
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &LogValue) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

/// `ln(e^a + e^b)` without overflow.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln(sum_i e^{x_i})` of a slice, streaming.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::NEG_INFINITY, log_add_exp)
}

/// `ln C(n, k)` via log-gamma; `-inf` when `k > n`.
pub fn log_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    if k == 0 || k == n {
        return 0.0;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// `ln n!`.
pub fn ln_factorial(n: u64) -> f64 {
    statrs::function::gamma::ln_gamma(n as f64 + 1.0)
}

/// `C(n, 2)` as a float, valid for any `n`.
pub fn choose2(n: u64) -> f64 {
    n as f64 * (n as f64 - 1.0) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn log_add_exp_matches_direct() {
        let x = log_add_exp(2.0_f64.ln(), 3.0_f64.ln());
        assert!((x - 5.0_f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn log_add_exp_handles_zero() {
        assert_eq!(log_add_exp(f64::NEG_INFINITY, 1.5), 1.5);
        assert_eq!(log_add_exp(1.5, f64::NEG_INFINITY), 1.5);
        assert_eq!(
            log_add_exp(f64::NEG_INFINITY, f64::NEG_INFINITY),
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn log_add_exp_no_overflow_far_apart() {
        // e^900 overflows f64 but the log-domain sum must not.
        let x = log_add_exp(900.0, -900.0);
        assert_eq!(x, 900.0);
        let y = log_add_exp(700.0, 700.0);
        assert!((y - (700.0 + 2.0_f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn binomials_against_pascal() {
        let mut row = vec![1.0_f64];
        for n in 1..=60u64 {
            let mut next = vec![1.0; n as usize + 1];
            for k in 1..n as usize {
                next[k] = row[k - 1] + row[k];
            }
            row = next;
            for (k, &v) in row.iter().enumerate() {
                let lb = log_binomial(n, k as u64);
                assert!(
                    (lb - v.ln()).abs() < 1e-10 * v.ln().abs().max(1.0),
                    "C({n},{k})"
                );
            }
        }
        assert_eq!(log_binomial(5, 9), f64::NEG_INFINITY);
    }

    #[test]
    fn logvalue_zero_one_algebra() {
        let two = LogValue::from_linear(2.0);
        assert!((LogValue::ZERO + two).ln() == two.ln());
        assert!((LogValue::ZERO * two).is_zero());
        assert_eq!(LogValue::ZERO.powf(0.0), LogValue::ONE);
        assert!(LogValue::ZERO.powf(3.0).is_zero());
    }

    proptest! {
        #[test]
        fn logvalue_add_commutes(a in 0.0..1e6f64, b in 0.0..1e6f64) {
            let (x, y) = (LogValue::from_linear(a), LogValue::from_linear(b));
            let s = (x + y).linear();
            prop_assert!((s - (a + b)).abs() <= 1e-9 * (a + b).max(1.0));
            prop_assert_eq!((x + y).ln(), (y + x).ln());
        }

        #[test]
        fn logvalue_mul_is_add_of_logs(a in 1e-6..1e6f64, b in 1e-6..1e6f64) {
            let p = (LogValue::from_linear(a) * LogValue::from_linear(b)).linear();
            prop_assert!((p - a * b).abs() <= 1e-9 * (a * b));
        }
    }
}
