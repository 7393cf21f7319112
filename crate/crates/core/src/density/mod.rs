//! Repartition function and density of `{P(θ^n)}` for degree-4 Salem θ.
//!
//! With `Q` the Chebyshev transform of `P` and `S_k` the extended branch
//! inverses,
//!
//! ```text
//! g(y)  = (1/π) Σ_k arccos S_k(y)
//! f(x)  = Σ_{i=-M}^{M} g(x + i) - g(i)
//! f'(x) = (1/π) Σ_{i,k} 1 / (sqrt(1 - u²) |Q'(u)|),  u = Q_k^{-1}(x + i)
//! ```

mod closed_form;
mod shape;

pub use closed_form::{
    cubic_criticals, dupain_f, dupain_fprime, quadratic_asymptote_test, quadratic_fprime,
    QuadraticPrediction,
};
pub use shape::{shape_classify, Critical, ShapeReport};

use std::f64::consts::PI;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::branch::{branches_from, critical_partition, invert_clamped, s_k, Branch, Partition};
use crate::cheb::{build_q, QForm};
use crate::error::ModelError;
use crate::poly::IntPolynomial;
use crate::quad::integrate;
use crate::roots::rat_to_f64;

/// Distance from an asymptote abscissa inside which evaluation is refused.
pub const TOL_ASYM: f64 = 1e-7;
/// Tolerance for set membership and integer tests on critical values.
pub const SET_EPS: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct DensityModel {
    q: QForm,
    partition: Partition,
    branches: Vec<Branch>,
    m: i64,
    stationary_values: Vec<BigRational>,
    left: Vec<f64>,
    right: Vec<f64>,
    g_sum_int: f64,
}

/// `r - floor(r)` of an exact value, as `f64`; `None` when within [`SET_EPS`]
/// of an integer.
pub(crate) fn frac_exact(r: &BigRational) -> Option<f64> {
    let fl = r.numer().div_floor(r.denom());
    let f = rat_to_f64(&(r - BigRational::from(fl)));
    if !(SET_EPS..=1.0 - SET_EPS).contains(&f) {
        None
    } else {
        Some(f)
    }
}

pub(crate) fn insert_sorted(set: &mut Vec<f64>, v: f64) {
    if set.iter().any(|s| (s - v).abs() < SET_EPS) {
        return;
    }
    set.push(v);
    set.sort_by(f64::total_cmp);
}

impl DensityModel {
    /// Model with the smallest valid summation bound.
    pub fn new(p: &IntPolynomial) -> Result<Self, ModelError> {
        Self::with_bound(p, None)
    }

    /// Model with an explicit bound `M`; `None` picks the smallest valid one.
    /// Bounds below the smallest valid one are rejected.
    pub fn with_bound(p: &IntPolynomial, m: Option<i64>) -> Result<Self, ModelError> {
        if p.degree().unwrap_or(0) == 0 {
            return Err(ModelError::Constant);
        }
        let q = build_q(p)?;
        let partition = critical_partition(&q);
        let branches = branches_from(&q, &partition);
        let m_min = branches
            .iter()
            .flat_map(|b| [b.alpha_exact.abs(), b.beta_exact.abs()])
            .map(|r| r.ceil().to_integer())
            .max()
            .unwrap_or_default()
            .to_i64()
            .ok_or_else(|| ModelError::InvalidArgument("branch values overflow i64".into()))?;
        let m = match m {
            Some(m) if m < m_min => {
                return Err(ModelError::InvalidArgument(format!(
                    "bound {m} is below the smallest valid bound {m_min}"
                )))
            }
            Some(m) => m,
            None => m_min,
        };
        let stationary_values: Vec<BigRational> = partition
            .stationary
            .iter()
            .map(|c| c.value_exact.clone())
            .collect();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for b in &branches {
            insert_sorted(&mut left, frac_exact(&b.beta_exact).unwrap_or(1.0));
            insert_sorted(&mut right, frac_exact(&b.alpha_exact).unwrap_or(0.0));
        }
        for v in &stationary_values {
            match frac_exact(v) {
                Some(f) => {
                    insert_sorted(&mut left, f);
                    insert_sorted(&mut right, f);
                }
                None => {
                    insert_sorted(&mut left, 1.0);
                    insert_sorted(&mut right, 0.0);
                }
            }
        }
        let mut model = DensityModel {
            q,
            partition,
            branches,
            m,
            stationary_values,
            left,
            right,
            g_sum_int: 0.0,
        };
        model.g_sum_int = (-m..=m).map(|i| model.g_value(i as f64)).sum();
        Ok(model)
    }

    pub fn q(&self) -> &QForm {
        &self.q
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// Summation bound `M`.
    pub fn bound(&self) -> i64 {
        self.m
    }

    pub fn stationary_values(&self) -> Vec<f64> {
        self.stationary_values.iter().map(rat_to_f64).collect()
    }

    /// `(1/π) Σ_k arccos S_k(y)`.
    pub fn g_value(&self, y: f64) -> f64 {
        self.branches
            .iter()
            .map(|b| s_k(b, &self.q, y).clamp(-1.0, 1.0).acos())
            .sum::<f64>()
            / PI
    }

    /// Repartition function on `[0, 1]`.
    pub fn repartition_f(&self, x: f64) -> Result<f64, ModelError> {
        if !(0.0..=1.0).contains(&x) {
            return Err(ModelError::Domain(x));
        }
        if x == 0.0 {
            return Ok(0.0);
        }
        let s: f64 = (-self.m..=self.m).map(|i| self.g_value(x + i as f64)).sum();
        Ok(s - self.g_sum_int)
    }

    /// Asymptote abscissae: `(left, right)`, where `f'` blows up as `x → v-`
    /// and `x → v+` respectively.
    pub fn asymptotes(&self) -> (&[f64], &[f64]) {
        (&self.left, &self.right)
    }

    /// Nearest asymptote within [`TOL_ASYM`] of `x`, if any.
    pub fn near_asymptote(&self, x: f64) -> Option<f64> {
        self.left
            .iter()
            .chain(&self.right)
            .copied()
            .find(|v| (x - v).abs() < TOL_ASYM)
    }

    /// Density with domain and asymptote checks.
    pub fn density_fprime(&self, x: f64) -> Result<f64, ModelError> {
        if !(x > 0.0 && x < 1.0) {
            return Err(ModelError::Domain(x));
        }
        if let Some(v) = self.near_asymptote(x) {
            return Err(ModelError::AtAsymptote { x, v });
        }
        Ok(self.density_fprime_raw(x))
    }

    /// Density without guards; may be huge or infinite next to an asymptote.
    pub fn density_fprime_raw(&self, x: f64) -> f64 {
        self.fprime_sum(x, |y, b| y >= b.alpha && y <= b.beta)
    }

    /// One-sided limit of the density at `x`; infinite at an asymptote
    /// approached from its divergent side.
    pub fn density_fprime_limit(&self, x: f64, from_right: bool) -> f64 {
        let diverges = if from_right { &self.right } else { &self.left };
        if diverges.iter().any(|v| (x - v).abs() < SET_EPS) {
            return f64::INFINITY;
        }
        if from_right {
            self.fprime_sum(x, |y, b| y >= b.alpha && y < b.beta)
        } else {
            self.fprime_sum(x, |y, b| y > b.alpha && y <= b.beta)
        }
    }

    fn fprime_sum(&self, x: f64, active: impl Fn(f64, &Branch) -> bool) -> f64 {
        let mut total = 0.0;
        for i in -self.m..=self.m {
            let y = x + i as f64;
            for b in self.branches.iter().filter(|b| active(y, b)) {
                let u = invert_clamped(b, &self.q, y);
                let d = self.q.eval_derivative(u).abs();
                total += 1.0 / (((1.0 - u) * (1.0 + u)).sqrt() * d);
            }
        }
        total / PI
    }

    pub fn shape(&self) -> ShapeReport {
        shape_classify(self)
    }

    /// `∫_0^1 f'` by adaptive quadrature, excluding [`TOL_ASYM`] around every
    /// asymptote and adding the excluded mass back as differences of `f`.
    pub fn integrate_density(&self, tol: f64) -> Result<f64, ModelError> {
        let mut cuts = vec![0.0, 1.0];
        for &v in self.left.iter().chain(&self.right) {
            insert_sorted(&mut cuts, v);
        }
        let is_asym = |v: f64| {
            self.left
                .iter()
                .chain(&self.right)
                .any(|a| (a - v).abs() < SET_EPS)
        };
        let per = tol / (2.0 * cuts.len() as f64);
        let mut total = 0.0;
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let a_in = if is_asym(a) { a + TOL_ASYM } else { a };
            let b_in = if is_asym(b) { b - TOL_ASYM } else { b };
            if b_in <= a_in {
                total += self.repartition_f(b)? - self.repartition_f(a)?;
                continue;
            }
            let r = integrate(|x| self.density_fprime_raw(x), a_in, b_in, per);
            total += r.value;
            total += self.repartition_f(a_in)? - self.repartition_f(a)?;
            total += self.repartition_f(b)? - self.repartition_f(b_in)?;
        }
        Ok(total)
    }
}

pub fn make_model(p: &IntPolynomial) -> Result<DensityModel, ModelError> {
    DensityModel::new(p)
}

pub fn g_value(model: &DensityModel, y: f64) -> f64 {
    model.g_value(y)
}

pub fn repartition_f(model: &DensityModel, x: f64) -> Result<f64, ModelError> {
    model.repartition_f(x)
}

pub fn density_fprime(model: &DensityModel, x: f64) -> Result<f64, ModelError> {
    model.density_fprime(x)
}

pub fn asymptotes(model: &DensityModel) -> (Vec<f64>, Vec<f64>) {
    let (l, r) = model.asymptotes();
    (l.to_vec(), r.to_vec())
}
