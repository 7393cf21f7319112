//! Verified Salem numbers.
//!
//! A [`SalemNumber`] can only be built through [`verify_salem`], which checks
//! the minimal polynomial exactly. The unit-circle conjugates are located via
//! the trace polynomial `R(y)` with `p(x) = x^t R(x + 1/x)`: a pair
//! `exp(±2πiω)` corresponds to a real root `y = 2cos 2πω` of `R` in `(-2, 2)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::SalemError;
use crate::factor::is_irreducible;
use crate::fixed::Fixed;
use crate::poly::IntPolynomial;
use crate::roots::{isolate_real_roots, RealRoot};

/// Precision used by [`verify_salem`] unless the caller refines further.
pub const DEFAULT_BITS: u32 = 128;

/// Minimal polynomial of the smallest degree-4 Salem number, θ ≈ 1.72208.
pub const QUARTIC_FIXTURE: &str = include_str!("../fixtures/quartic.txt");
/// Minimal polynomial of a degree-6 Salem number, θ ≈ 1.40127.
pub const SEXTIC_FIXTURE: &str = include_str!("../fixtures/sextic.txt");

#[derive(Debug, Clone, PartialEq)]
pub struct SalemNumber {
    minpoly: IntPolynomial,
    theta_floor: BigInt,
    bits: u32,
    omegas: Vec<Fixed>,
    trace_poly: IntPolynomial,
    theta_root: RealRoot,
    trace_roots: Vec<RealRoot>,
}

/// JSON view of a verified Salem number.
#[derive(Debug, Clone, Serialize)]
pub struct SalemReport {
    pub salem: bool,
    pub degree: usize,
    pub minpoly: IntPolynomial,
    pub theta: String,
    pub omegas: Vec<String>,
    pub precision_bits: u32,
}

impl SalemNumber {
    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    /// Degree `2t` of the minimal polynomial.
    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }

    /// `t`, half the degree.
    pub fn half_degree(&self) -> usize {
        self.degree() / 2
    }

    pub fn precision_bits(&self) -> u32 {
        self.bits
    }

    /// θ truncated to `precision_bits` fractional bits.
    pub fn theta(&self) -> Fixed {
        Fixed::from_mantissa(self.theta_floor.clone(), self.bits)
    }

    pub fn theta_f64(&self) -> f64 {
        self.theta().to_f64()
    }

    /// Conjugate angles ω_j ∈ (0, 1/2), ascending.
    pub fn omegas(&self) -> &[Fixed] {
        &self.omegas
    }

    pub fn omegas_f64(&self) -> Vec<f64> {
        self.omegas.iter().map(Fixed::to_f64).collect()
    }

    /// `R(y)` with `p(x) = x^t R(x + 1/x)`.
    pub fn trace_poly(&self) -> &IntPolynomial {
        &self.trace_poly
    }

    /// θ to an arbitrary number of bits without storing it.
    pub fn theta_at(&self, bits: u32) -> Fixed {
        Fixed::from_mantissa(root_floor(&self.theta_root, bits), bits)
    }

    /// All ω_j to `bits` fractional bits, ascending.
    pub fn omegas_at(&self, bits: u32) -> Vec<Fixed> {
        let mut out: Vec<Fixed> = self
            .trace_roots
            .iter()
            .map(|r| omega_from_trace(r, bits))
            .collect();
        out.sort();
        out
    }

    /// New value with θ and every ω_j recomputed to `bits` (at least 32).
    pub fn refine(&self, bits: u32) -> SalemNumber {
        let bits = bits.max(32);
        SalemNumber {
            theta_floor: root_floor(&self.theta_root, bits),
            bits,
            omegas: self.omegas_at(bits),
            ..self.clone()
        }
    }

    pub fn report(&self, digits: usize) -> SalemReport {
        let bits_needed = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16;
        let s = if bits_needed > self.bits {
            self.refine(bits_needed)
        } else {
            self.clone()
        };
        SalemReport {
            salem: true,
            degree: s.degree(),
            minpoly: s.minpoly.clone(),
            theta: s.theta().to_decimal(digits),
            omegas: s.omegas.iter().map(|w| w.to_decimal(digits)).collect(),
            precision_bits: s.bits,
        }
    }
}

/// Free-function form of [`SalemNumber::refine`].
pub fn refine_theta(s: &SalemNumber, bits: u32) -> SalemNumber {
    s.refine(bits)
}

fn omega_from_trace(root: &RealRoot, bits: u32) -> Fixed {
    let g = bits + 32;
    let y = Fixed::from_mantissa(root_floor(root, g), g);
    let half = y.div_int(&BigInt::from(2));
    let two_pi = Fixed::pi(g).mul_int(&BigInt::from(2));
    half.acos().div(&two_pi).with_bits(bits)
}

/// Horner evaluation in fixed point.
pub(crate) fn eval_fixed(p: &IntPolynomial, x: &Fixed) -> Fixed {
    let bits = x.bits();
    p.coeffs().iter().rev().fold(Fixed::zero(bits), |acc, c| {
        &(&acc * x) + &Fixed::from_bigint(c, bits)
    })
}

/// `floor(r * 2^bits)` for the simple root `r` isolated by `root`.
///
/// Newton iteration with precision doubling produces a candidate; exact sign
/// evaluation at neighbouring dyadics certifies (and if needed corrects) it.
pub(crate) fn root_floor(root: &RealRoot, bits: u32) -> BigInt {
    let f = root.factor();
    let mut r = root.clone();
    r.refine_bits(64);
    if r.is_exact() {
        return Fixed::from_rational(&r.interval.lo, bits)
            .mantissa()
            .clone();
    }
    // sign of f just left of the root
    let s_right = f.sign_at_rational(&r.interval.hi);
    let s_left = if s_right != 0 {
        -s_right
    } else {
        f.sign_at_rational(&r.interval.lo)
    };
    let df = f.derivative();
    let mut x = Fixed::from_rational(&r.interval.midpoint(), 80);
    let mut prec = 60u32;
    let target = bits + 32;
    while prec < target {
        prec = (prec * 2).min(target);
        let g = prec + 16;
        let xg = x.with_bits(g);
        let fx = eval_fixed(f, &xg);
        let dfx = eval_fixed(&df, &xg);
        if dfx.mantissa().is_zero() {
            break;
        }
        x = &xg - &fx.div(&dfx);
    }
    let mut a = x.with_bits(bits).mantissa().clone();
    loop {
        let sa = f.sign_at_dyadic(&a, bits);
        if sa == 0 {
            return a;
        }
        if sa != s_left {
            a -= 1;
            continue;
        }
        let next = &a + 1;
        let sn = f.sign_at_dyadic(&next, bits);
        if sn == 0 {
            return next;
        }
        if sn == s_left {
            a = next;
            continue;
        }
        return a;
    }
}

/// `R(y)` such that `p(x) = x^t R(x + 1/x)` for a palindromic `p` of degree `2t`.
pub fn trace_polynomial(p: &IntPolynomial) -> IntPolynomial {
    let d = p.degree().unwrap_or(0);
    let t = d / 2;
    // V_0 = 2, V_1 = y, V_{k+1} = y V_k - V_{k-1}; x^k + x^-k = V_k(x + 1/x)
    let y = IntPolynomial::x();
    let mut v_prev = IntPolynomial::from_i64(&[2]);
    let mut v_cur = y.clone();
    let mut r = IntPolynomial::new(vec![p.coeff(t)]);
    for k in 1..=t {
        if k > 1 {
            let next = &(&y * &v_cur) - &v_prev;
            v_prev = v_cur;
            v_cur = next;
        }
        r = &r + &v_cur.scale(&p.coeff(t + k));
    }
    r
}

/// Check that `minpoly` is the minimal polynomial of a Salem number and
/// compute θ and the conjugate angles at [`DEFAULT_BITS`].
///
/// Checks run in order: monic, even degree ≥ 4, palindromic, irreducible,
/// then the root pattern (one root > 1, one in (0, 1), the remaining `t - 1`
/// conjugate pairs on the unit circle). Unit-circle membership is decided on
/// the trace polynomial with exact arithmetic.
pub fn verify_salem(minpoly: &IntPolynomial) -> Result<SalemNumber, SalemError> {
    let Some(d) = minpoly.degree() else {
        return Err(SalemError::ZeroPolynomial);
    };
    if !minpoly.is_monic() {
        return Err(SalemError::NotMonic);
    }
    if d % 2 == 1 || d < 4 {
        return Err(SalemError::OddOrSmallDegree(d));
    }
    if !minpoly.is_palindromic() {
        return Err(SalemError::NotReciprocal);
    }
    if !is_irreducible(minpoly) {
        return Err(SalemError::Reducible);
    }
    let t = d / 2;

    let one = BigRational::one();
    let zero = BigRational::zero();
    let real = isolate_real_roots(minpoly);
    let above_one: Vec<&RealRoot> = real
        .iter()
        .filter(|r| r.cmp_rational(&one) == Ordering::Greater)
        .collect();
    let in_unit = real
        .iter()
        .filter(|r| {
            r.cmp_rational(&zero) == Ordering::Greater && r.cmp_rational(&one) == Ordering::Less
        })
        .count();
    if real.len() != 2 || above_one.len() != 1 || in_unit != 1 {
        return Err(SalemError::RootPatternMismatch(format!(
            "expected exactly one real root above 1 and one in (0, 1), found {} real roots",
            real.len()
        )));
    }
    let theta_root = above_one[0].clone();

    let trace = trace_polynomial(minpoly);
    let two = BigRational::from(BigInt::from(2));
    let trace_real = isolate_real_roots(&trace);
    if trace_real.len() != t || trace_real.iter().any(|r| r.multiplicity != 1) {
        return Err(SalemError::RootPatternMismatch(format!(
            "trace polynomial has {} simple real roots, expected {t}",
            trace_real.len()
        )));
    }
    let mut on_circle = Vec::new();
    let mut beyond = 0;
    for r in trace_real {
        let vs_hi = r.cmp_rational(&two);
        let vs_lo = r.cmp_rational(&-two.clone());
        if vs_lo == Ordering::Greater && vs_hi == Ordering::Less {
            on_circle.push(r);
        } else if vs_hi == Ordering::Greater {
            beyond += 1;
        } else {
            return Err(SalemError::RootPatternMismatch(
                "conjugate outside the expected pattern (trace root at or below -2, or equal to 2)"
                    .into(),
            ));
        }
    }
    if beyond != 1 || on_circle.len() != t - 1 {
        return Err(SalemError::RootPatternMismatch(format!(
            "{} conjugate pairs on the unit circle, expected {}",
            on_circle.len(),
            t - 1
        )));
    }

    let bits = DEFAULT_BITS;
    let mut s = SalemNumber {
        minpoly: minpoly.clone(),
        theta_floor: root_floor(&theta_root, bits),
        bits,
        omegas: Vec::new(),
        trace_poly: trace,
        theta_root,
        trace_roots: on_circle,
    };
    s.omegas = s.omegas_at(bits);
    Ok(s)
}

/// Minimal polynomial of θ^m, via power sums and Newton's identities.
///
/// The result is the characteristic polynomial of θ^m over the conjugates of
/// θ; for a Salem θ this is again irreducible of the same degree.
pub fn salem_power_minpoly(s: &SalemNumber, m: u32) -> IntPolynomial {
    assert!(m >= 1, "power must be positive");
    power_char_poly(s.minpoly(), m as usize)
}

/// Monic polynomial whose roots are the `m`-th powers of the roots of the
/// monic `p`, with multiplicity.
pub fn power_char_poly(p: &IntPolynomial, m: usize) -> IntPolynomial {
    let d = p.degree().expect("nonzero polynomial");
    // e_k = (-1)^k c_{d-k}
    let e: Vec<BigInt> = (0..=d)
        .map(|k| {
            let c = p.coeff(d - k);
            if k % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    let n = d * m;
    let mut ps = vec![BigInt::zero(); n + 1];
    ps[0] = BigInt::from(d);
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for i in 1..=(k - 1).min(d) {
            let term = &e[i] * &ps[k - i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if k <= d {
            let term = &e[k] * BigInt::from(k);
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        ps[k] = acc;
    }
    // power sums of the m-th powers
    let q: Vec<BigInt> = (0..=d).map(|k| ps[k * m].clone()).collect();
    let mut e2 = vec![BigInt::zero(); d + 1];
    e2[0] = BigInt::one();
    for k in 1..=d {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &e2[k - i] * &q[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        debug_assert!((&acc % BigInt::from(k)).is_zero());
        e2[k] = acc / BigInt::from(k);
    }
    let coeffs = (0..=d)
        .map(|j| {
            let k = d - j;
            if k % 2 == 1 {
                -e2[k].clone()
            } else {
                e2[k].clone()
            }
        })
        .collect();
    IntPolynomial::new(coeffs)
}

pub fn quartic_fixture() -> SalemNumber {
    verify_salem(&IntPolynomial::parse(QUARTIC_FIXTURE).expect("fixture parses"))
        .expect("quartic fixture is Salem")
}

pub fn sextic_fixture() -> SalemNumber {
    verify_salem(&IntPolynomial::parse(SEXTIC_FIXTURE).expect("fixture parses"))
        .expect("sextic fixture is Salem")
}
