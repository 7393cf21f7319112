//! Monotone pieces of `Q` on `[-1, 1]` and their inverses.

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use std::cmp::Ordering;

use crate::cheb::QForm;
use crate::error::ModelError;
use crate::roots::{isolate_real_roots, rat_to_f64, RealRoot};

/// Bits to which critical points are refined before conversion to `f64`.
const CRITICAL_BITS: u32 = 200;

/// A critical point of `Q` (root of `Q'`), refined to [`CRITICAL_BITS`].
#[derive(Debug, Clone, Serialize)]
pub struct CriticalPoint {
    pub x: f64,
    /// `Q(x)` at the refined point.
    pub value: f64,
    /// Exact rational approximation of `Q(x)`.
    #[serde(skip)]
    pub value_exact: BigRational,
    pub multiplicity: usize,
}

/// Partition of `[-1, 1]` into monotone pieces.
#[derive(Debug, Clone, Serialize)]
pub struct Partition {
    /// `x_0 = -1 < x_1 < ... < x_K = 1`.
    pub points: Vec<f64>,
    /// Odd-multiplicity roots of `Q'` strictly inside `(-1, 1)`.
    pub turning: Vec<CriticalPoint>,
    /// Even-multiplicity roots of `Q'` strictly inside `(-1, 1)`.
    pub stationary: Vec<CriticalPoint>,
    /// Every real root of `Q'`, inside or not.
    pub all_real: Vec<CriticalPoint>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Branch {
    /// 1-based, left to right.
    pub k: usize,
    pub x_lo: f64,
    pub x_hi: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Exact (or 200-bit) values of α and β.
    #[serde(skip)]
    pub alpha_exact: BigRational,
    #[serde(skip)]
    pub beta_exact: BigRational,
    pub increasing: bool,
}

fn critical_point(q: &QForm, mut r: RealRoot) -> CriticalPoint {
    r.refine_bits(CRITICAL_BITS);
    let mid = r.interval.midpoint();
    let value_exact = q.eval_rational(&mid);
    CriticalPoint {
        x: rat_to_f64(&mid),
        value: rat_to_f64(&value_exact),
        value_exact,
        multiplicity: r.multiplicity,
    }
}

/// Roots of `Q'` split into partition points and stationary points.
pub fn critical_partition(q: &QForm) -> Partition {
    let one = BigRational::one();
    let minus_one = -BigRational::one();
    let mut turning = Vec::new();
    let mut stationary = Vec::new();
    let mut all_real = Vec::new();
    for r in isolate_real_roots(&q.q_poly().derivative()) {
        let inside = r.cmp_rational(&minus_one) == Ordering::Greater
            && r.cmp_rational(&one) == Ordering::Less;
        let cp = critical_point(q, r);
        all_real.push(cp.clone());
        if inside {
            if cp.multiplicity % 2 == 1 {
                turning.push(cp);
            } else {
                stationary.push(cp);
            }
        }
    }
    let mut points = vec![-1.0];
    points.extend(turning.iter().map(|c| c.x));
    points.push(1.0);
    Partition {
        points,
        turning,
        stationary,
        all_real,
    }
}

/// Sign of `Q'` on the open piece between two partition points.
fn direction(q: &QForm, lo: f64, hi: f64) -> bool {
    let dq = q.q_poly().derivative();
    for frac in [0.5, 0.25, 0.75, 0.375] {
        let x = BigRational::from_float(lo + frac * (hi - lo)).expect("finite");
        let s = dq.sign_at_rational(&x);
        if s != 0 {
            return s > 0;
        }
    }
    q.eval(hi) > q.eval(lo)
}

pub fn branches(q: &QForm) -> Vec<Branch> {
    branches_from(q, &critical_partition(q))
}

pub fn branches_from(q: &QForm, part: &Partition) -> Vec<Branch> {
    let ends: Vec<BigRational> = std::iter::once(BigRational::from(q.endpoint_value(false)))
        .chain(part.turning.iter().map(|c| c.value_exact.clone()))
        .chain(std::iter::once(BigRational::from(q.endpoint_value(true))))
        .collect();
    (0..part.points.len() - 1)
        .map(|i| {
            let (x_lo, x_hi) = (part.points[i], part.points[i + 1]);
            let increasing = direction(q, x_lo, x_hi);
            let (a, b) = if increasing {
                (ends[i].clone(), ends[i + 1].clone())
            } else {
                (ends[i + 1].clone(), ends[i].clone())
            };
            Branch {
                k: i + 1,
                x_lo,
                x_hi,
                alpha: rat_to_f64(&a),
                beta: rat_to_f64(&b),
                alpha_exact: a,
                beta_exact: b,
                increasing,
            }
        })
        .collect()
}

/// `Q_k^{-1}(y)` by bracketed bisection to full double precision.
pub fn invert_on_branch(b: &Branch, q: &QForm, y: f64) -> Result<f64, ModelError> {
    if !(y >= b.alpha && y <= b.beta) {
        return Err(ModelError::OutOfRange {
            y,
            alpha: b.alpha,
            beta: b.beta,
        });
    }
    Ok(invert_clamped(b, q, y))
}

/// `Q_k^{-1}` of `y` clamped into `[α, β]`.
pub fn invert_clamped(b: &Branch, q: &QForm, y: f64) -> f64 {
    if y <= b.alpha {
        return if b.increasing { b.x_lo } else { b.x_hi };
    }
    if y >= b.beta {
        return if b.increasing { b.x_hi } else { b.x_lo };
    }
    let (mut lo, mut hi) = (b.x_lo, b.x_hi);
    // keep Q(lo) - y and Q(hi) - y of opposite sign
    let below = |x: f64| (q.eval(x) < y) == b.increasing;
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if below(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // pick the closer bracket end
    if (q.eval(lo) - y).abs() <= (q.eval(hi) - y).abs() {
        lo
    } else {
        hi
    }
}

/// Total extension: clamp into `[α, β]`, invert, negate on increasing branches.
pub fn s_k(b: &Branch, q: &QForm, y: f64) -> f64 {
    let u = invert_clamped(b, q, y);
    if b.increasing {
        -u
    } else {
        u
    }
}
