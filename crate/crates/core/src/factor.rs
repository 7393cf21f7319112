//! Irreducibility over the rationals for small-degree integer polynomials.
//!
//! Candidate factors come from products of numerically located complex roots;
//! a candidate counts only when its rounded integer coefficients divide the
//! polynomial exactly. Numerics guide the search, exact division decides.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::IntPolynomial;
use crate::roots::square_free_decomposition;

/// All complex roots by the Aberth–Ehrlich iteration (square-free input).
pub fn complex_roots(p: &IntPolynomial) -> Vec<Complex64> {
    let c = p.to_f64_coeffs();
    let d = c.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let lead = c[d];
    let monic: Vec<f64> = c.iter().map(|v| v / lead).collect();
    let radius = 1.0 + monic[..d].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64 + 0.4;
            Complex64::from_polar(radius * 0.5, ang)
        })
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut dv = Complex64::new(0.0, 0.0);
        for &a in monic.iter().rev() {
            dv = dv * x + v;
            v = v * x + a;
        }
        (v, dv)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..d {
            let (v, dv) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let s: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm() / z[i].norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Exact division over the integers; `None` if `divisor` does not divide `p`.
pub fn exact_div(p: &IntPolynomial, divisor: &IntPolynomial) -> Option<IntPolynomial> {
    let dp = p.degree()?;
    let dd = divisor.degree()?;
    if dd > dp {
        return None;
    }
    let lead = divisor.leading()?.clone();
    let mut rem: Vec<BigInt> = p.coeffs().to_vec();
    let mut quot = vec![BigInt::zero(); dp - dd + 1];
    for k in (0..=dp - dd).rev() {
        let (q, r) = rem[k + dd].div_rem(&lead);
        if !r.is_zero() {
            return None;
        }
        for (j, c) in divisor.coeffs().iter().enumerate() {
            rem[k + j] -= &q * c;
        }
        quot[k] = q;
    }
    if rem.iter().all(Zero::is_zero) {
        Some(IntPolynomial::new(quot))
    } else {
        None
    }
}

/// `lc^(d-1) p(x / lc)`: monic with integer coefficients, irreducible iff `p` is.
fn monicize(p: &IntPolynomial) -> IntPolynomial {
    let d = p.degree().unwrap_or(0);
    let lc = p.leading().cloned().unwrap_or_else(BigInt::one);
    if lc.is_one() {
        return p.clone();
    }
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            if j == d {
                BigInt::one()
            } else {
                c * num_traits::pow(lc.clone(), d - 1 - j)
            }
        })
        .collect();
    IntPolynomial::new(coeffs)
}

/// Finds a nontrivial monic integer factor of a monic square-free polynomial.
fn find_factor(p: &IntPolynomial) -> Option<IntPolynomial> {
    let d = p.degree()?;
    let roots = complex_roots(p);
    for size in 1..=d / 2 {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if let Some(f) = candidate(&roots, &idx) {
                if exact_div(p, &f).is_some() {
                    return Some(f);
                }
            }
            // next combination
            let mut i = size;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if idx[i] < d - size + i {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    None
}

fn candidate(roots: &[Complex64], idx: &[usize]) -> Option<IntPolynomial> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for &i in idx {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * roots[i];
        }
        coeffs = next;
    }
    let mut out = Vec::with_capacity(coeffs.len());
    for c in coeffs {
        let r = c.re.round();
        let tol = 1e-6 * c.norm().max(1.0);
        if c.im.abs() > tol || (c.re - r).abs() > tol {
            return None;
        }
        out.push(BigInt::from(r.to_i64()?));
    }
    Some(IntPolynomial::new(out))
}

/// Whether `p` is irreducible over the rationals. Constants are not.
pub fn is_irreducible(p: &IntPolynomial) -> bool {
    let Some(d) = p.degree() else { return false };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let sqf = square_free_decomposition(p);
    if sqf.len() != 1 || sqf[0].1 != 1 {
        return false;
    }
    let m = monicize(&p.primitive_part());
    // rational root test on the monic form: integer roots dividing the constant
    let c0 = m.coeff(0);
    if c0.is_zero() {
        return false;
    }
    if c0.abs().bits() <= 40 {
        let n = c0.abs().to_u64().unwrap();
        let mut k = 1u64;
        while k * k <= n {
            if n.is_multiple_of(k) {
                for cand in [k, n / k] {
                    for s in [1i64, -1] {
                        let r = BigInt::from(cand) * s;
                        if m.eval_int(&r).is_zero() {
                            return false;
                        }
                    }
                }
            }
            k += 1;
        }
    }
    find_factor(&m).is_none()
}
