//! Closed-form densities for `Q = -2^m x^m` and the Bessel-series density.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_bigint::BigInt;
use serde::Serialize;

use crate::density::TOL_ASYM;
use crate::error::ModelError;
use crate::fixed::Fixed;

fn check_open_unit(x: f64) -> Result<(), ModelError> {
    if !(x > 0.0 && x < 1.0) {
        return Err(ModelError::Domain(x));
    }
    if x < TOL_ASYM {
        return Err(ModelError::AtAsymptote { x, v: 0.0 });
    }
    if 1.0 - x < TOL_ASYM {
        return Err(ModelError::AtAsymptote { x, v: 1.0 });
    }
    Ok(())
}

/// Density of `{P(θ^n)}` with `P` the binomial polynomial of odd degree `m`.
pub fn xm_density_odd(m: u32, x: f64) -> Result<f64, ModelError> {
    if m.is_multiple_of(2) {
        return Err(ModelError::InvalidArgument(format!("m = {m} is not odd")));
    }
    check_open_unit(x)?;
    let half = 1i64 << m;
    let mf = m as f64;
    let s: f64 = (-half..half)
        .map(|i| {
            let y = x + i as f64;
            let r = y.signum() * y.abs().powf(1.0 / mf);
            r / (2.0 * mf * y * (1.0 - r * r / 4.0).sqrt())
        })
        .sum();
    Ok(s / PI)
}

/// Density of `{P(θ^n)}` with `P` the binomial polynomial of even degree `m`.
pub fn xm_density_even(m: u32, x: f64) -> Result<f64, ModelError> {
    if m == 0 || m % 2 == 1 {
        return Err(ModelError::InvalidArgument(format!(
            "m = {m} is not a positive even integer"
        )));
    }
    check_open_unit(x)?;
    let mf = m as f64;
    let s: f64 = (1..=1i64 << m)
        .map(|i| {
            let y = i as f64 - x;
            let r = y.powf(1.0 / mf);
            r / (mf * y * (1.0 - r * r / 4.0).sqrt())
        })
        .sum();
    Ok(s / PI)
}

const SERIES_LIMIT: f64 = 20.0;

/// `J_0(z)` for `z ≥ 0`.
///
/// Ascending series in 128-bit fixed point up to `z = 20`, Hankel's
/// asymptotic expansion beyond.
pub fn bessel_j0(z: f64) -> f64 {
    assert!(z >= 0.0, "J0 is only provided for z >= 0");
    if z <= SERIES_LIMIT {
        j0_series(z)
    } else {
        let chi = z - PI / 4.0;
        j0_hankel(z, chi.cos(), chi.sin())
    }
}

fn j0_series(z: f64) -> f64 {
    const BITS: u32 = 128;
    let zf = Fixed::from_f64(z, BITS);
    let q = (&zf * &zf).div_int(&BigInt::from(4));
    let mut term = Fixed::from_int(1, BITS);
    let mut sum = term.clone();
    for k in 1u64.. {
        term = -(&term * &q).div_int(&BigInt::from(k * k));
        if term.mantissa().bits() < 2 {
            break;
        }
        sum = &sum + &term;
    }
    sum.to_f64()
}

/// Hankel expansion with `cos χ`, `sin χ` supplied, `χ = z - π/4`.
fn j0_hankel(z: f64, cos_chi: f64, sin_chi: f64) -> f64 {
    // a_k = Π_{j ≤ k} (2j - 1)² / (k! 8^k)
    // P = 1 - a_2/z² + a_4/z⁴ - ...,  Q = -a_1/z + a_3/z³ - ...
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut zk = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..=40 {
        let kf = k as f64;
        a *= (2.0 * kf - 1.0).powi(2) / (8.0 * kf);
        zk *= z;
        let term = a / zk;
        if term > last && k > 6 {
            break;
        }
        last = term;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q -= sign * term;
        }
        if term < 1e-18 && k >= 6 {
            break;
        }
    }
    (2.0 / (PI * z)).sqrt() * (p * cos_chi - q * sin_chi)
}

/// `J_0(4kπ)`; the phase `4kπ - π/4 ≡ -π/4` is used exactly.
fn j0_at_4k_pi(k: u64) -> f64 {
    let z = 4.0 * PI * k as f64;
    if z <= SERIES_LIMIT {
        j0_series(z)
    } else {
        j0_hankel(z, FRAC_1_SQRT_2, -FRAC_1_SQRT_2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Smoothing {
    None,
    Cesaro,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BesselSeriesParams {
    /// Half the degree of the Salem number.
    pub t: u32,
    pub k_terms: usize,
    pub smoothing: Smoothing,
}

impl BesselSeriesParams {
    /// Cesàro smoothing for `t = 2`, plain truncation otherwise.
    pub fn new(t: u32, k_terms: usize) -> Self {
        let smoothing = if t == 2 {
            Smoothing::Cesaro
        } else {
            Smoothing::None
        };
        BesselSeriesParams {
            t,
            k_terms,
            smoothing,
        }
    }
}

/// `1 + 2 Σ_{k ≤ K} w_k J_0(4kπ)^{t-1} cos 2πkx` with precomputed coefficients.
#[derive(Debug, Clone)]
pub struct BesselSeries {
    params: BesselSeriesParams,
    coeffs: Vec<f64>,
}

impl BesselSeries {
    pub fn new(params: BesselSeriesParams) -> Result<Self, ModelError> {
        if params.t < 2 {
            return Err(ModelError::InvalidArgument("t must be at least 2".into()));
        }
        if params.k_terms == 0 {
            return Err(ModelError::InvalidArgument("need at least one term".into()));
        }
        let kk = params.k_terms as f64;
        let coeffs = (1..=params.k_terms as u64)
            .map(|k| {
                let w = match params.smoothing {
                    Smoothing::None => 1.0,
                    Smoothing::Cesaro => 1.0 - k as f64 / (kk + 1.0),
                };
                w * j0_at_4k_pi(k).powi(params.t as i32 - 1)
            })
            .collect();
        Ok(BesselSeries { params, coeffs })
    }

    pub fn params(&self) -> BesselSeriesParams {
        self.params
    }

    /// Smoothed coefficients `w_k J_0(4kπ)^{t-1}`, `k = 1..K`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        let s: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let phase = ((i + 1) as f64 * x).rem_euclid(1.0);
                c * (2.0 * PI * phase.min(1.0 - phase)).cos()
            })
            .sum();
        1.0 + 2.0 * s
    }

    /// Value at `x = num / den`, with the phase reduced in integers so that
    /// `num / den` and `(den - num) / den` give identical results.
    pub fn eval_ratio(&self, num: u64, den: u64) -> f64 {
        let s: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let r = ((i as u128 + 1) * num as u128 % den as u128) as u64;
                let r = r.min(den - r);
                c * (2.0 * PI * r as f64 / den as f64).cos()
            })
            .sum();
        1.0 + 2.0 * s
    }
}

/// One-off evaluation of the series; build a [`BesselSeries`] for grids.
pub fn bessel_density(params: BesselSeriesParams, x: f64) -> Result<f64, ModelError> {
    if !(x > 0.0 && x < 1.0) {
        return Err(ModelError::Domain(x));
    }
    Ok(BesselSeries::new(params)?.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `J_0(z) = (1/π) ∫_0^π cos(z sin τ) dτ` by the trapezoid rule, which is
    /// spectrally accurate for this periodic integrand.
    fn j0_integral(z: f64) -> f64 {
        let n = 4000;
        let h = PI / n as f64;
        let mut s = 0.5 * (1.0 + (z * PI.sin()).cos());
        for i in 1..n {
            s += (z * (i as f64 * h).sin()).cos();
        }
        s * h / PI
    }

    #[test]
    fn j0_against_integral() {
        for z in [
            0.0,
            0.5,
            2.404_825_557_695_773,
            7.3,
            12.566,
            19.9,
            20.1,
            31.4,
            150.0,
        ] {
            let d = (bessel_j0(z) - j0_integral(z)).abs();
            assert!(d < 1e-12, "z = {z}: {d:e}");
        }
        assert_eq!(bessel_j0(0.0), 1.0);
        assert!(bessel_j0(2.404_825_557_695_773).abs() < 1e-10);
    }

    #[test]
    fn exact_phase_matches_general() {
        for k in [2u64, 5, 50] {
            let z = 4.0 * PI * k as f64;
            assert!((j0_at_4k_pi(k) - bessel_j0(z)).abs() < 1e-13);
        }
    }

    #[test]
    fn series_parity_and_large_t() {
        let s = BesselSeries::new(BesselSeriesParams::new(3, 200)).unwrap();
        for x in [0.1, 0.23, 0.4] {
            assert!((s.eval(x) - s.eval(1.0 - x)).abs() < 1e-12);
        }
        assert_eq!(s.eval_ratio(7, 40), s.eval_ratio(33, 40));
        let s = BesselSeries::new(BesselSeriesParams::new(10, 100)).unwrap();
        for x in [0.05, 0.5, 0.9] {
            assert!((s.eval(x) - 1.0).abs() < 0.01);
        }
        assert!(BesselSeries::new(BesselSeriesParams::new(1, 10)).is_err());
    }

    #[test]
    fn xm_guards() {
        assert!(xm_density_odd(2, 0.5).is_err());
        assert!(xm_density_even(3, 0.5).is_err());
        assert!(matches!(
            xm_density_odd(3, 1e-9),
            Err(ModelError::AtAsymptote { v, .. }) if v == 0.0
        ));
        assert!(xm_density_even(2, 0.5).unwrap() > 0.0);
    }
}
