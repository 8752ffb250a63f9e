//! The Lambert W function (principal branch on nonnegative input),
//! the inverse of `x -> x e^x`. It governs the typical clique size at
//! criticality: `W(n) e^{W(n)} = n`.

use crate::{Error, Result};

/// `W(x)` for `x >= 0` by Halley iteration.
///
/// Initial guess `log(1+x)` for `x < e`, else `log x - log log x`;
/// converges to `|W e^W - x| < 1e-13 x` in a handful of steps.
pub fn lambert_w(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "lambert_w needs x >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let mut w = if x < std::f64::consts::E {
        x.ln_1p()
    } else {
        x.ln() - x.ln().ln()
    };
    for _ in 0..60 {
        let ew = w.exp();
        let f = w * ew - x;
        if f.abs() <= 1e-14 * x {
            break;
        }
        let denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
        w -= f / denom;
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_points() {
        assert_eq!(lambert_w(0.0).unwrap(), 0.0);
        assert!((lambert_w(std::f64::consts::E).unwrap() - 1.0).abs() < 1e-14);
        // The omega constant, W(1).
        assert!((lambert_w(1.0).unwrap() - 0.567_143_290_409_783_8).abs() < 1e-13);
        assert!(lambert_w(-0.1).is_err());
    }

    #[test]
    fn round_trip_on_log_grid() {
        let mut x = 1e-6;
        while x <= 1e12 {
            let w = lambert_w(x).unwrap();
            assert!(
                (w * w.exp() - x).abs() < 1e-13 * x,
                "x={x}: residual {}",
                (w * w.exp() - x).abs() / x
            );
            x *= 1.7;
        }
    }
}
