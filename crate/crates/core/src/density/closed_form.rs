//! Closed forms for linear, quadratic and cubic `P`, used as oracles.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::roots::rat_to_f64;

/// Density for `P(x) = a1 x` with `a1 ≥ 1`.
pub fn dupain_fprime(a1: i64, x: f64) -> f64 {
    assert!(a1 >= 1, "a1 must be positive");
    let two_a = 2.0 * a1 as f64;
    let s: f64 = (-2 * a1..2 * a1)
        .map(|i| {
            let z = (x + i as f64) / two_a;
            1.0 / (1.0 - z * z).sqrt()
        })
        .sum();
    s / (two_a * PI)
}

/// Repartition function for `P(x) = a1 x` with `a1 ≥ 1`.
pub fn dupain_f(a1: i64, x: f64) -> f64 {
    assert!(a1 >= 1, "a1 must be positive");
    let two_a = 2.0 * a1 as f64;
    let s: f64 = (-2 * a1..2 * a1)
        .map(|i| {
            let i = i as f64;
            (-(x + i) / two_a).clamp(-1.0, 1.0).acos() - (-i / two_a).acos()
        })
        .sum();
    s / PI
}

/// Density for `P(x) = a2 x² + a1 x` from the two explicit branch inverses
/// `-(a1 ± sqrt(Δ)) / (4 a2)`, `Δ = a1² + 8a2² - 4a2 y`.
pub fn quadratic_fprime(a2: i64, a1: i64, x: f64) -> f64 {
    assert!(a2 != 0, "a2 must be nonzero");
    let (a2f, a1f) = (a2 as f64, a1 as f64);
    let m = 6 * a2.abs() + 2 * a1.abs();
    let mut total = 0.0;
    for i in -m..=m {
        let y = x + i as f64;
        let delta = a1f * a1f + 8.0 * a2f * a2f - 4.0 * a2f * y;
        if delta <= 0.0 {
            continue;
        }
        let sd = delta.sqrt();
        for root in [a1f + sd, a1f - sd] {
            let w = -root / (4.0 * a2f);
            if w.abs() > 1.0 {
                continue;
            }
            let inner = 16.0 * a2f * a2f - root * root;
            total += 2.0 * a2f.abs() / (sd * inner.sqrt());
        }
    }
    total / PI
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadraticPrediction {
    /// Interior asymptote abscissa, when all three conditions hold.
    pub v: Option<f64>,
    pub shape: String,
}

/// Interior asymptote of `a2 x² + a1 x`: `V = a1²/(4 a2) + 2 a2` is the
/// extreme value of `Q`, attained inside `(-1, 1)` iff `|a1/(4 a2)| < 1`.
pub fn quadratic_asymptote_test(a2: i64, a1: i64) -> QuadraticPrediction {
    assert!(a2 != 0, "a2 must be nonzero");
    let vertex_inside = (a1 as i128).abs() < 4 * (a2 as i128).abs();
    let v = BigRational::new(BigInt::from(a1 * a1), BigInt::from(4 * a2)) + BigInt::from(2 * a2);
    let frac = &v - BigRational::from(v.numer().div_floor(v.denom()));
    if vertex_inside && a1 != 0 && !frac.is_zero() {
        QuadraticPrediction {
            v: Some(rat_to_f64(&frac)),
            shape: if a2 > 0 { "∪⌣" } else { "⌣∪" }.into(),
        }
    } else {
        QuadraticPrediction {
            v: None,
            shape: "∪".into(),
        }
    }
}

/// Roots of `Q'` for `a3 x³ + a2 x² + a1 x`, ascending, when real.
pub fn cubic_criticals(a3: i64, a2: i64, a1: i64) -> Option<(f64, f64)> {
    assert!(a3 != 0, "a3 must be nonzero");
    let (a3, a2, a1) = (a3 as f64, a2 as f64, a1 as f64);
    let disc = 9.0 * a3 * a3 + a2 * a2 - 3.0 * a1 * a3;
    if disc < 0.0 {
        return None;
    }
    let r1 = (-a2 - disc.sqrt()) / (6.0 * a3);
    let r2 = (-a2 + disc.sqrt()) / (6.0 * a3);
    Some((r1.min(r2), r1.max(r2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dupain_endpoints() {
        assert!(dupain_f(1, 0.0).abs() < 1e-15);
        assert!((dupain_f(1, 1.0) - 1.0).abs() < 1e-14);
        assert!((dupain_f(3, 1.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn dupain_derivative_matches_f() {
        let h = 1e-6;
        for x in [0.1, 0.37, 0.8] {
            let fd = (dupain_f(2, x + h) - dupain_f(2, x - h)) / (2.0 * h);
            assert!((fd - dupain_fprime(2, x)).abs() < 1e-6);
        }
    }

    #[test]
    fn quadratic_conditions() {
        assert_eq!(quadratic_asymptote_test(1, 0).v, None);
        assert_eq!(quadratic_asymptote_test(1, 0).shape, "∪");
        let p = quadratic_asymptote_test(1, 1);
        assert_eq!((p.v, p.shape.as_str()), (Some(0.25), "∪⌣"));
        let p = quadratic_asymptote_test(-1, 1);
        assert_eq!((p.v, p.shape.as_str()), (Some(0.75), "⌣∪"));
        // vertex outside (-1, 1)
        assert_eq!(quadratic_asymptote_test(1, 5).v, None);
        // V = 4/4 + 2 is an integer
        assert_eq!(quadratic_asymptote_test(1, 2).v, None);
    }

    #[test]
    fn cubic_critical_values() {
        let (a, b) = cubic_criticals(1, 1, 1).unwrap();
        let r7 = 7f64.sqrt();
        assert!((a - (-1.0 - r7) / 6.0).abs() < 1e-15);
        assert!((b - (-1.0 + r7) / 6.0).abs() < 1e-15);
        assert_eq!(cubic_criticals(1, 1, 4), None);
        assert_eq!(cubic_criticals(1, 0, 0), Some((-0.5, 0.5)));
    }
}
