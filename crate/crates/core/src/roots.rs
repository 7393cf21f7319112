//! Exact real-root isolation for integer polynomials.
//!
//! Square-free decomposition (Yun) followed by Descartes'-rule bisection on
//! integer coefficients. No floating point is involved in deciding how many
//! roots exist or where they are; intervals can be refined on demand by exact
//! sign evaluation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::IntPolynomial;

/// Either an exact rational root (`lo == hi`) or an open interval `(lo, hi)`
/// containing exactly one distinct root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from(BigInt::from(2))
    }
}

/// One distinct real root of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealRoot {
    pub interval: RootInterval,
    pub multiplicity: usize,
    /// Square-free factor that has this root as a simple root; used for refinement.
    factor: IntPolynomial,
}

impl RealRoot {
    pub fn factor(&self) -> &IntPolynomial {
        &self.factor
    }

    pub fn is_exact(&self) -> bool {
        self.interval.is_exact()
    }

    pub fn midpoint_f64(&self) -> f64 {
        rat_to_f64(&self.interval.midpoint())
    }

    /// Sign of the square-free factor immediately to the right of `lo`.
    fn sign_right_of_lo(&self) -> i8 {
        let s = self.factor.sign_at_rational(&self.interval.lo);
        if s != 0 {
            s
        } else {
            // lo is a (different) simple root of the factor.
            self.factor.derivative().sign_at_rational(&self.interval.lo)
        }
    }

    /// One bisection step; returns false when the root is already exact.
    pub fn bisect(&mut self) -> bool {
        if self.is_exact() {
            return false;
        }
        let s_lo = self.sign_right_of_lo();
        let mid = self.interval.midpoint();
        let s_mid = self.factor.sign_at_rational(&mid);
        if s_mid == 0 {
            self.interval.lo = mid.clone();
            self.interval.hi = mid;
        } else if s_mid == s_lo {
            self.interval.lo = mid;
        } else {
            self.interval.hi = mid;
        }
        true
    }

    /// Bisect until the interval width is at most `2^-bits`.
    pub fn refine_bits(&mut self, bits: u32) {
        let target = BigRational::new(BigInt::one(), BigInt::one() << bits as usize);
        while !self.is_exact() && self.interval.width() > target {
            self.bisect();
        }
    }

    /// Exact comparison of the root with a rational `r`.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        let mut me = self.clone();
        loop {
            if me.is_exact() {
                return me.interval.lo.cmp(r);
            }
            if *r <= me.interval.lo {
                return Ordering::Greater;
            }
            if *r >= me.interval.hi {
                return Ordering::Less;
            }
            if self.factor.sign_at_rational(r) == 0 {
                return Ordering::Equal;
            }
            me.bisect();
        }
    }
}

/// Nearest `f64` to an exact rational.
pub fn rat_to_f64(r: &BigRational) -> f64 {
    // scale to keep ~64 significant bits before the float conversion
    let n = r.numer();
    let d = r.denom();
    if n.is_zero() {
        return 0.0;
    }
    let shift = n.bits() as i64 - d.bits() as i64 - 64;
    let q: BigInt = if shift >= 0 {
        n / (d << shift as usize)
    } else {
        (n << (-shift) as usize) / d
    };
    q.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// Yun's square-free decomposition: `p = c * prod f_i^i`, returned as
/// `(f_i, i)` pairs for nonconstant `f_i`, each primitive with positive lead.
pub fn square_free_decomposition(p: &IntPolynomial) -> Vec<(IntPolynomial, usize)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let a = p.to_rational();
    let da = a.derivative();
    let b = a.gcd(&da);
    let (mut c, _) = a.div_rem(&b);
    let (db, _) = da.div_rem(&b);
    let mut d = db.sub(&c.derivative());
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let g = c.gcd(&d);
        if g.degree().unwrap_or(0) > 0 {
            out.push((g.to_primitive_int(), i));
        }
        let (c_next, _) = c.div_rem(&g);
        let (d_div, _) = d.div_rem(&g);
        d = d_div.sub(&c_next.derivative());
        c = c_next;
        i += 1;
    }
    out
}

fn sign_variations(p: &IntPolynomial) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for c in p.coeffs() {
        let s = if c.is_zero() {
            continue;
        } else if c.is_negative() {
            -1
        } else {
            1
        };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Descartes bound on the number of roots in (0, 1).
fn descartes_unit(q: &IntPolynomial) -> usize {
    sign_variations(&q.reversed().taylor_shift_one())
}

/// `k` such that every root of `f` has modulus below `2^k` (Cauchy bound).
fn cauchy_bits(f: &IntPolynomial) -> usize {
    let coeffs = f.coeffs();
    let lead_bits = coeffs.last().map_or(0, |c| c.bits()) as i64;
    let max_bits = coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| c.bits() as i64)
        .max()
        .unwrap_or(0);
    let e = (max_bits - lead_bits + 1).max(0);
    (e + 1) as usize
}

fn dyadic(num: BigInt, k: i64) -> BigRational {
    if k >= 0 {
        BigRational::from(num << k as usize)
    } else {
        BigRational::new(num, BigInt::one() << (-k) as usize)
    }
}

/// Isolating intervals for the positive roots of a square-free `f` with `f(0) != 0`.
fn positive_roots(f: &IntPolynomial) -> Vec<RootInterval> {
    let k = cauchy_bits(f) as i64;
    let q0 = f.dilate(k as usize);
    let mut out = Vec::new();
    let mut stack = vec![(q0, BigInt::zero(), 0i64)];
    let two_x_minus_one = IntPolynomial::from_i64(&[-1, 2]).to_rational();
    while let Some((mut q, c, l)) = stack.pop() {
        if q.degree().unwrap_or(0) == 0 {
            continue;
        }
        let v = descartes_unit(&q);
        if v == 0 {
            continue;
        }
        if v == 1 {
            out.push(RootInterval {
                lo: dyadic(c.clone(), k - l),
                hi: dyadic(&c + 1, k - l),
            });
            continue;
        }
        if q.sign_at(&BigInt::one(), &BigInt::from(2)) == 0 {
            out.push(RootInterval {
                lo: dyadic(&c * 2 + 1, k - l - 1),
                hi: dyadic(&c * 2 + 1, k - l - 1),
            });
            let (s, _) = q.to_rational().div_rem(&two_x_minus_one);
            q = s.to_primitive_int();
        }
        let left = q.compress(1);
        let right = left.taylor_shift_one();
        stack.push((right, &c * 2 + 1, l + 1));
        stack.push((left, c * 2, l + 1));
    }
    out
}

fn negate_interval(iv: RootInterval) -> RootInterval {
    RootInterval {
        lo: -iv.hi,
        hi: -iv.lo,
    }
}

/// Isolating intervals for all real roots of a square-free polynomial.
fn isolate_square_free(f: &IntPolynomial) -> Vec<RootInterval> {
    let mut f = f.clone();
    let mut out = Vec::new();
    if f.coeff(0).is_zero() {
        out.push(RootInterval {
            lo: BigRational::zero(),
            hi: BigRational::zero(),
        });
        f = IntPolynomial::new(f.coeffs()[1..].to_vec());
    }
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    out.extend(positive_roots(&f));
    out.extend(
        positive_roots(&f.reflect())
            .into_iter()
            .map(negate_interval),
    );
    out
}

fn intersects(a: &RootInterval, b: &RootInterval) -> bool {
    match (a.is_exact(), b.is_exact()) {
        (true, true) => a.lo == b.lo,
        (true, false) => b.lo < a.lo && a.lo < b.hi,
        (false, true) => a.lo < b.lo && b.lo < a.hi,
        (false, false) => a.lo.clone().max(b.lo.clone()) < a.hi.clone().min(b.hi.clone()),
    }
}

/// Isolate every distinct real root of `p` with its multiplicity.
///
/// Results are sorted left to right and pairwise disjoint. The zero
/// polynomial has no well-defined root set and yields an empty list.
pub fn isolate_real_roots(p: &IntPolynomial) -> Vec<RealRoot> {
    let mut roots: Vec<RealRoot> = Vec::new();
    for (factor, mult) in square_free_decomposition(p) {
        for iv in isolate_square_free(&factor) {
            roots.push(RealRoot {
                interval: iv,
                multiplicity: mult,
                factor: factor.clone(),
            });
        }
    }
    loop {
        roots.sort_by(|a, b| {
            a.interval
                .lo
                .cmp(&b.interval.lo)
                .then(a.interval.hi.cmp(&b.interval.hi))
        });
        let mut clash = None;
        for i in 1..roots.len() {
            if intersects(&roots[i - 1].interval, &roots[i].interval) {
                clash = Some(i);
                break;
            }
        }
        match clash {
            None => break,
            Some(i) => {
                roots[i - 1].bisect();
                roots[i].bisect();
            }
        }
    }
    roots
}
