//! Chebyshev transform of an integer polynomial.
//!
//! For `P(x) = Σ a_j x^j` the form `Q(w) = -2 Σ a_j T_j(w)` satisfies
//! `Q(cos t) = -2 Σ a_j cos(jt)`. Only the inner sum is stored.

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::ModelError;
use crate::poly::{horner_f64, IntPolynomial};

/// `T_j` in monomial form.
pub fn cheb_poly(j: usize) -> IntPolynomial {
    let mut prev = IntPolynomial::one();
    if j == 0 {
        return prev;
    }
    let mut cur = IntPolynomial::x();
    let two_x = IntPolynomial::from_i64(&[0, 2]);
    for _ in 1..j {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The transformed polynomial. `Q(w) = -2 Σ c_k w^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct QForm {
    c: Vec<BigInt>,
    m: usize,
    source: IntPolynomial,
    /// Set when the constant term of the source was nonzero and got dropped.
    a0_dropped: bool,
    q_f64: Vec<f64>,
    dq_f64: Vec<f64>,
}

impl QForm {
    /// Inner coefficients, ascending.
    pub fn c(&self) -> &[BigInt] {
        &self.c
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn source(&self) -> &IntPolynomial {
        &self.source
    }

    pub fn a0_dropped(&self) -> bool {
        self.a0_dropped
    }

    /// `Q` itself as an integer polynomial (coefficients `-2 c_k`).
    pub fn q_poly(&self) -> IntPolynomial {
        IntPolynomial::new(self.c.iter().map(|v| v * -2).collect())
    }

    pub fn eval(&self, w: f64) -> f64 {
        horner_f64(&self.q_f64, w)
    }

    pub fn eval_derivative(&self, w: f64) -> f64 {
        horner_f64(&self.dq_f64, w)
    }

    pub fn eval_rational(&self, w: &BigRational) -> BigRational {
        self.q_poly().eval_rational(w)
    }

    /// `Q(±1)`, always an integer.
    pub fn endpoint_value(&self, right: bool) -> BigInt {
        let x = if right { BigInt::one() } else { -BigInt::one() };
        self.q_poly().eval_int(&x)
    }
}

/// Build `Q` from `P`, forcing `a_0 = 0` first.
pub fn build_q(p: &IntPolynomial) -> Result<QForm, ModelError> {
    let Some(m) = p.degree() else {
        return Err(ModelError::InvalidArgument("zero polynomial".into()));
    };
    let a0_dropped = !p.coeff(0).is_zero();
    let mut c = vec![BigInt::zero(); m + 1];
    for j in 1..=m {
        let a = p.coeff(j);
        if a.is_zero() {
            continue;
        }
        for (k, t) in cheb_poly(j).coeffs().iter().enumerate() {
            c[k] += &a * t;
        }
    }
    let q = IntPolynomial::new(c.iter().map(|v| v * -2).collect());
    let q_f64 = q.to_f64_coeffs();
    let dq_f64 = q.derivative().to_f64_coeffs();
    Ok(QForm {
        c,
        m,
        source: p.clone(),
        a0_dropped,
        q_f64,
        dq_f64,
    })
}

/// Coefficients of `x^m` in the Chebyshev basis; entry `j` multiplies `T_j`.
pub fn power_to_cheb(m: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); m + 1];
    let scale = BigRational::new(BigInt::one(), BigInt::one() << (m.saturating_sub(1)));
    for k in 0..=m / 2 {
        let mut term = BigRational::from(binomial(BigInt::from(m), BigInt::from(k))) * &scale;
        if 2 * k == m {
            term /= BigInt::from(2);
        }
        out[m - 2 * k] = term;
    }
    out
}

/// The integer polynomial whose transform is `-2^m x^m`, up to an integer
/// constant for even `m`.
///
/// For even `m` the constant `C(m, m/2) / 2` is kept. It is always an integer
/// because `C(2n, n) = 2 C(2n-1, n-1)`.
pub fn binomial_poly(m: usize) -> IntPolynomial {
    let mut coeffs = vec![BigInt::zero(); m + 1];
    for k in 0..=m / 2 {
        let b = binomial(BigInt::from(m), BigInt::from(k));
        if 2 * k == m {
            coeffs[0] = b / 2;
        } else {
            coeffs[m - 2 * k] = b;
        }
    }
    IntPolynomial::new(coeffs)
}
