//! The sequence `{P(θ^n)}` for `n = 1..N`, its histogram, and comparison with
//! the analytic repartition function.
//!
//! Two evaluation paths exist. The exact path raises θ to the `n`-th power in
//! fixed point with enough bits to keep the fractional part of `P(θ^n)`
//! exact to more than 50 bits. The conjugate path uses the congruence
//!
//! ```text
//! P(θ^n) ≡ -Σ_j a_j (θ^{-nj} + 2 Σ_l cos 2π n j ω_l)  (mod 1)
//! ```
//!
//! whose cost per term does not grow with `n`.

use std::f64::consts::PI;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::density::DensityModel;
use crate::error::SimError;
use crate::fixed::Fixed;
use crate::poly::IntPolynomial;
use crate::salem::{eval_fixed, SalemNumber};

/// Default hard cap on working precision of the exact path, in bits.
pub const DEFAULT_PRECISION_CAP: u64 = 1 << 22;
/// Above this `N` the conjugate path is the default.
pub const EXACT_DEFAULT_LIMIT: u64 = 10_000;
const SEGMENT: u64 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Conjugate,
}

impl Method {
    pub fn default_for(n_max: u64) -> Method {
        if n_max > EXACT_DEFAULT_LIMIT {
            Method::Conjugate
        } else {
            Method::Exact
        }
    }
}

impl std::str::FromStr for Method {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, SimError> {
        match s {
            "exact" => Ok(Method::Exact),
            "conjugate" => Ok(Method::Conjugate),
            other => Err(SimError::InvalidArgument(format!(
                "unknown method `{other}`"
            ))),
        }
    }
}

/// Working precision for a range of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SegmentPrecision {
    pub n_lo: u64,
    pub n_hi: u64,
    pub bits: u64,
}

#[derive(Debug, Clone)]
pub struct SequenceRun {
    pub salem: SalemNumber,
    pub p: IntPolynomial,
    pub n_max: u64,
    pub method: Method,
    /// `values[n - 1] = frac(P(θ^n))`.
    pub values: Vec<f64>,
    pub precision_log: Vec<SegmentPrecision>,
}

fn check_args(p: &IntPolynomial, n_max: u64) -> Result<usize, SimError> {
    if n_max == 0 {
        return Err(SimError::InvalidArgument("N must be at least 1".into()));
    }
    match p.degree() {
        Some(d) if d >= 1 => Ok(d),
        _ => Err(SimError::InvalidArgument(
            "polynomial must be nonconstant".into(),
        )),
    }
}

/// Bits needed by the exact path to reach index `n`.
pub fn exact_bits(s: &SalemNumber, p: &IntPolynomial, n: u64) -> u64 {
    let m = p.degree().unwrap_or(1).max(1) as u64;
    let coeff_bits = p.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0);
    let int_bits = (n as f64 * m as f64 * s.theta_f64().log2()).ceil() as u64;
    let guard = 64 + ((n * m) as f64).log2().ceil() as u64 + coeff_bits + 8;
    int_bits + guard
}

/// Exact path: `frac(P(θ^n))` from θ in fixed point, segment by segment.
pub fn sequence_exact(
    s: &SalemNumber,
    p: &IntPolynomial,
    n_max: u64,
) -> Result<SequenceRun, SimError> {
    sequence_exact_capped(s, p, n_max, DEFAULT_PRECISION_CAP)
}

pub fn sequence_exact_capped(
    s: &SalemNumber,
    p: &IntPolynomial,
    n_max: u64,
    cap: u64,
) -> Result<SequenceRun, SimError> {
    check_args(p, n_max)?;
    let needed = exact_bits(s, p, n_max);
    if needed > cap {
        return Err(SimError::PrecisionCap { needed, cap });
    }
    let theta = s.theta_at(needed as u32);
    let segments: Vec<SegmentPrecision> = (0..n_max.div_ceil(SEGMENT))
        .map(|k| {
            let n_lo = k * SEGMENT + 1;
            let n_hi = ((k + 1) * SEGMENT).min(n_max);
            SegmentPrecision {
                n_lo,
                n_hi,
                bits: exact_bits(s, p, n_hi),
            }
        })
        .collect();
    let values: Vec<f64> = segments
        .par_iter()
        .flat_map_iter(|seg| {
            let bits = seg.bits as u32;
            let th = theta.with_bits(bits);
            let mut power = pow_fixed(&th, seg.n_lo);
            let mut out = Vec::with_capacity((seg.n_hi - seg.n_lo + 1) as usize);
            for n in seg.n_lo..=seg.n_hi {
                if n > seg.n_lo {
                    power = &power * &th;
                }
                out.push(eval_fixed(p, &power).fract().to_f64());
            }
            out
        })
        .collect();
    Ok(SequenceRun {
        salem: s.clone(),
        p: p.clone(),
        n_max,
        method: Method::Exact,
        values,
        precision_log: segments,
    })
}

fn pow_fixed(x: &Fixed, mut e: u64) -> Fixed {
    let mut base = x.clone();
    let mut acc = Fixed::from_int(1, x.bits());
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Precomputed data for the conjugate path.
struct Conjugate {
    /// `(j, a_j)` for nonzero `a_j`, `j ≥ 1`.
    terms: Vec<(u64, f64)>,
    /// ω_l as mantissas at `frac_bits`.
    omegas: Vec<BigUint>,
    frac_bits: u32,
    log2_theta: f64,
    theta_inv: f64,
}

impl Conjugate {
    fn new(s: &SalemNumber, p: &IntPolynomial, n_max: u64) -> Result<Self, SimError> {
        let m = p.degree().unwrap_or(1) as u64;
        let frac_bits = 64 + ((n_max * m) as f64).log2().ceil() as u32 + 60;
        let omegas = s
            .omegas_at(frac_bits)
            .iter()
            .map(|w| w.mantissa().to_biguint().expect("ω is positive"))
            .collect();
        let mut terms = Vec::new();
        for (j, a) in p.coeffs().iter().enumerate().skip(1) {
            if a.is_zero() {
                continue;
            }
            let af = a
                .to_f64()
                .filter(|v| v.abs() < 2f64.powi(52))
                .ok_or_else(|| {
                    SimError::InvalidArgument("coefficient too large for the conjugate path".into())
                })?;
            terms.push((j as u64, af));
        }
        let theta = s.theta_f64();
        Ok(Conjugate {
            terms,
            omegas,
            frac_bits,
            log2_theta: theta.log2(),
            theta_inv: 1.0 / theta,
        })
    }

    /// `frac(k ω)` to 53 bits, computed exactly modulo 1.
    fn frac_mul(&self, omega: &BigUint, k: u64) -> f64 {
        let prod = omega * k;
        let mask = (BigUint::one() << self.frac_bits) - 1u32;
        let top = (prod & mask) >> (self.frac_bits - 53);
        top.to_u64().expect("53 bits") as f64 / 2f64.powi(53)
    }

    fn value(&self, n: u64) -> f64 {
        let mut total = 0.0;
        for &(j, a) in &self.terms {
            let k = n * j;
            let mut trace = 0.0;
            if (k as f64) * self.log2_theta < 80.0 {
                trace += self.theta_inv.powf(k as f64);
            }
            for w in &self.omegas {
                trace += 2.0 * (2.0 * PI * self.frac_mul(w, k)).cos();
            }
            total -= a * trace;
        }
        let f = total - total.floor();
        if f >= 1.0 {
            0.0
        } else {
            f
        }
    }
}

/// Conjugate path: `frac(-Σ_j a_j (θ^{-nj} + 2 Σ_l cos 2π n j ω_l))`.
pub fn sequence_conjugate(
    s: &SalemNumber,
    p: &IntPolynomial,
    n_max: u64,
) -> Result<SequenceRun, SimError> {
    check_args(p, n_max)?;
    let c = Conjugate::new(s, p, n_max)?;
    let values = (1..=n_max).into_par_iter().map(|n| c.value(n)).collect();
    Ok(SequenceRun {
        salem: s.clone(),
        p: p.clone(),
        n_max,
        method: Method::Conjugate,
        values,
        precision_log: vec![SegmentPrecision {
            n_lo: 1,
            n_hi: n_max,
            bits: c.frac_bits as u64,
        }],
    })
}

pub fn sequence(
    s: &SalemNumber,
    p: &IntPolynomial,
    n_max: u64,
    method: Method,
) -> Result<SequenceRun, SimError> {
    match method {
        Method::Exact => sequence_exact(s, p, n_max),
        Method::Conjugate => sequence_conjugate(s, p, n_max),
    }
}

/// Distance on the circle `R/Z`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

/// Largest elementwise circular distance between two runs of equal length.
pub fn max_path_difference(a: &SequenceRun, b: &SequenceRun) -> f64 {
    a.values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| circular_distance(*x, *y))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramReport {
    pub p_bins: usize,
    pub n: u64,
    pub counts: Vec<u64>,
    /// `count · p / N`.
    pub normalized: Vec<f64>,
    /// `sup |empirical CDF - f|` over bin edges, when a model was supplied.
    pub ks_distance: Option<f64>,
    /// `p · (f(right) - f(left))`, when a model was supplied.
    pub analytic_bin_avg: Option<Vec<f64>>,
    /// Bins whose closure contains an asymptote abscissa.
    pub excluded_bins: Vec<usize>,
}

impl HistogramReport {
    pub fn max_deviation_from_uniform(&self) -> f64 {
        self.normalized
            .iter()
            .map(|v| (v - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Equal-width half-open bins `[i/p, (i+1)/p)`.
pub fn bin_counts(values: &[f64], p_bins: usize) -> Vec<u64> {
    let mut counts = vec![0u64; p_bins];
    for &v in values {
        let i = ((v * p_bins as f64) as usize).min(p_bins - 1);
        counts[i] += 1;
    }
    counts
}

fn ks_over_edges(counts: &[u64], n: u64, f_edges: &[f64]) -> f64 {
    let mut cum = 0u64;
    let mut ks = f_edges[0].abs();
    for (i, c) in counts.iter().enumerate() {
        cum += c;
        ks = ks.max((cum as f64 / n as f64 - f_edges[i + 1]).abs());
    }
    ks
}

fn excluded_bins(model: &DensityModel, p_bins: usize) -> Vec<usize> {
    let (left, right) = model.asymptotes();
    let mut out: Vec<usize> = Vec::new();
    for &v in left.iter().chain(right) {
        let pos = v * p_bins as f64;
        let near = pos.round();
        let cand: Vec<usize> = if (pos - near).abs() < 1e-9 {
            let e = near as i64;
            vec![e - 1, e]
                .into_iter()
                .filter(|&i| i >= 0 && (i as usize) < p_bins)
                .map(|i| i as usize)
                .collect()
        } else {
            vec![(pos.floor() as usize).min(p_bins - 1)]
        };
        for i in cand {
            if !out.contains(&i) {
                out.push(i);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Repartition function at the `p + 1` bin edges.
pub fn model_edges(model: &DensityModel, p_bins: usize) -> Result<Vec<f64>, SimError> {
    (0..=p_bins)
        .map(|i| Ok(model.repartition_f(i as f64 / p_bins as f64)?))
        .collect()
}

pub fn histogram_values(
    values: &[f64],
    p_bins: usize,
    model: Option<&DensityModel>,
) -> Result<HistogramReport, SimError> {
    if p_bins < 2 {
        return Err(SimError::InvalidArgument("need at least 2 bins".into()));
    }
    let n = values.len() as u64;
    if n == 0 {
        return Err(SimError::InvalidArgument("empty sequence".into()));
    }
    let counts = bin_counts(values, p_bins);
    let normalized = counts
        .iter()
        .map(|&c| c as f64 * p_bins as f64 / n as f64)
        .collect();
    let (ks_distance, analytic_bin_avg, excluded) = match model {
        Some(m) => {
            let edges = model_edges(m, p_bins)?;
            let avg = edges
                .windows(2)
                .map(|w| p_bins as f64 * (w[1] - w[0]))
                .collect();
            (
                Some(ks_over_edges(&counts, n, &edges)),
                Some(avg),
                excluded_bins(m, p_bins),
            )
        }
        None => (None, None, Vec::new()),
    };
    Ok(HistogramReport {
        p_bins,
        n,
        counts,
        normalized,
        ks_distance,
        analytic_bin_avg,
        excluded_bins: excluded,
    })
}

pub fn histogram(
    run: &SequenceRun,
    p_bins: usize,
    model: Option<&DensityModel>,
) -> Result<HistogramReport, SimError> {
    histogram_values(&run.values, p_bins, model)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub ks_distance: f64,
    /// KS distance of the first `N / 100` values.
    pub ks_prefix: f64,
    /// `ks(N) < ks(N / 100)`.
    pub converging: bool,
    /// `|normalized - p (f(r) - f(l))|` per bin.
    pub bin_abs_error: Vec<f64>,
    /// Largest entry of `bin_abs_error` outside the excluded bins.
    pub max_bin_error: f64,
    pub excluded_bins: Vec<usize>,
}

pub fn compare(
    run: &SequenceRun,
    model: &DensityModel,
    p_bins: usize,
) -> Result<Comparison, SimError> {
    if run.salem.degree() != 4 {
        return Err(SimError::DegreeMismatch(run.salem.degree()));
    }
    let full = histogram(run, p_bins, Some(model))?;
    let prefix_len = (run.values.len() / 100).max(1);
    let edges = model_edges(model, p_bins)?;
    let prefix_counts = bin_counts(&run.values[..prefix_len], p_bins);
    let ks_prefix = ks_over_edges(&prefix_counts, prefix_len as u64, &edges);
    let avg = full.analytic_bin_avg.clone().unwrap_or_default();
    let bin_abs_error: Vec<f64> = full
        .normalized
        .iter()
        .zip(&avg)
        .map(|(a, b)| (a - b).abs())
        .collect();
    let max_bin_error = bin_abs_error
        .iter()
        .enumerate()
        .filter(|(i, _)| !full.excluded_bins.contains(i))
        .map(|(_, e)| *e)
        .fold(0.0, f64::max);
    let ks_distance = full.ks_distance.unwrap_or(f64::NAN);
    Ok(Comparison {
        ks_distance,
        ks_prefix,
        converging: ks_distance < ks_prefix,
        bin_abs_error,
        max_bin_error,
        excluded_bins: full.excluded_bins,
    })
}

/// Inverse-transform sample of the model: `x_k` with `f(x_k) = (k - 1/2)/N`.
pub fn model_quantiles(model: &DensityModel, n: usize) -> Result<Vec<f64>, SimError> {
    (1..=n)
        .map(|k| {
            let target = (k as f64 - 0.5) / n as f64;
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if model.repartition_f(mid)? < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            Ok(0.5 * (lo + hi))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::salem::{quartic_fixture, sextic_fixture};

    fn x() -> IntPolynomial {
        IntPolynomial::from_i64(&[0, 1])
    }

    #[test]
    fn first_value_is_frac_theta() {
        let s = quartic_fixture();
        let run = sequence_exact(&s, &x(), 3).unwrap();
        assert!((run.values[0] - 0.722_083_805_739_043).abs() < 1e-14);
        assert!(run.values.iter().all(|v| (0.0..1.0).contains(v)));
    }

    #[test]
    fn paths_agree_on_short_runs() {
        let s = quartic_fixture();
        for c in [&[0, 1][..], &[0, 1, 1, 1], &[0, 6, 5, 3]] {
            let p = IntPolynomial::from_i64(c);
            let a = sequence_exact(&s, &p, 300).unwrap();
            let b = sequence_conjugate(&s, &p, 300).unwrap();
            assert!(max_path_difference(&a, &b) < 1e-9);
        }
        let s6 = sextic_fixture();
        let p = IntPolynomial::from_i64(&[0, -2, -1, 1]);
        let a = sequence_exact(&s6, &p, 200).unwrap();
        let b = sequence_conjugate(&s6, &p, 200).unwrap();
        assert!(max_path_difference(&a, &b) < 1e-9);
    }

    #[test]
    fn precision_cap_is_enforced() {
        let s = quartic_fixture();
        let err = sequence_exact_capped(&s, &x(), 1000, 256).unwrap_err();
        assert!(matches!(err, SimError::PrecisionCap { cap: 256, .. }));
    }

    #[test]
    fn point_mass_histogram() {
        let h = histogram_values(&[0.5; 10], 2, None).unwrap();
        assert_eq!(h.counts, vec![0, 10]);
        assert_eq!(h.normalized, vec![0.0, 2.0]);
        let h = histogram_values(&[0.0, 0.999_999], 4, None).unwrap();
        assert_eq!(h.counts, vec![1, 0, 0, 1]);
        assert!(histogram_values(&[0.1], 1, None).is_err());
    }

    #[test]
    fn circular_distance_wraps() {
        assert!((circular_distance(0.999_999_999_9, 0.0) - 1e-10).abs() < 1e-15);
        assert_eq!(circular_distance(0.25, 0.75), 0.5);
    }

    #[test]
    fn method_parsing() {
        assert_eq!("exact".parse::<Method>().unwrap(), Method::Exact);
        assert!("fast".parse::<Method>().is_err());
        assert_eq!(Method::default_for(100), Method::Exact);
        assert_eq!(Method::default_for(100_000), Method::Conjugate);
    }
}
