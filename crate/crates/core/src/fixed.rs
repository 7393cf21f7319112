//! Binary fixed-point reals backed by `BigInt`.
//!
//! A [`Fixed`] holds `mant / 2^bits`. Multiplication and division truncate
//! toward negative infinity, so every operation loses at most one unit in the
//! last place. Callers pick `bits` with enough guard bits for their error
//! budget.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixed {
    mant: BigInt,
    bits: u32,
}

fn shr_floor(v: &BigInt, n: u32) -> BigInt {
    v.div_floor(&(BigInt::one() << n as usize))
}

impl Fixed {
    pub fn from_mantissa(mant: BigInt, bits: u32) -> Self {
        Fixed { mant, bits }
    }

    pub fn zero(bits: u32) -> Self {
        Fixed::from_mantissa(BigInt::zero(), bits)
    }

    pub fn from_int(v: i64, bits: u32) -> Self {
        Fixed::from_mantissa(BigInt::from(v) << bits as usize, bits)
    }

    pub fn from_bigint(v: &BigInt, bits: u32) -> Self {
        Fixed::from_mantissa(v << bits as usize, bits)
    }

    /// Floor of `r * 2^bits`.
    pub fn from_rational(r: &BigRational, bits: u32) -> Self {
        let n = r.numer() << bits as usize;
        Fixed::from_mantissa(n.div_floor(r.denom()), bits)
    }

    /// Exact conversion (every finite double is dyadic), truncated to `bits`.
    pub fn from_f64(x: f64, bits: u32) -> Self {
        let r = BigRational::from_float(x).expect("finite value");
        Fixed::from_rational(&r, bits)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Change precision: extends with zeros or truncates toward -infinity.
    pub fn with_bits(&self, bits: u32) -> Self {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                Fixed::from_mantissa(&self.mant << (bits - self.bits) as usize, bits)
            }
            Ordering::Less => Fixed::from_mantissa(shr_floor(&self.mant, self.bits - bits), bits),
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let excess = self.mant.bits() as i64 - 64;
        if excess > 0 {
            let top = shr_floor(&self.mant, excess as u32);
            top.to_f64().unwrap() * 2f64.powi((excess - self.bits as i64) as i32)
        } else {
            self.mant.to_f64().unwrap() * 2f64.powi(-(self.bits as i32))
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::one() << self.bits as usize)
    }

    pub fn floor(&self) -> BigInt {
        shr_floor(&self.mant, self.bits)
    }

    /// Fractional part in `[0, 1)` at the same precision.
    pub fn fract(&self) -> Fixed {
        let one = BigInt::one() << self.bits as usize;
        Fixed::from_mantissa(self.mant.mod_floor(&one), self.bits)
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Fixed {
        Fixed::from_mantissa(self.mant.abs(), self.bits)
    }

    pub fn mul_int(&self, k: &BigInt) -> Fixed {
        Fixed::from_mantissa(&self.mant * k, self.bits)
    }

    /// Division by an integer, truncated toward -infinity.
    pub fn div_int(&self, k: &BigInt) -> Fixed {
        Fixed::from_mantissa(self.mant.div_floor(k), self.bits)
    }

    pub fn div(&self, rhs: &Fixed) -> Fixed {
        let bits = self.bits.max(rhs.bits);
        let a = self.with_bits(bits);
        let b = rhs.with_bits(bits);
        Fixed::from_mantissa((&a.mant << bits as usize).div_floor(&b.mant), bits)
    }

    pub fn sqrt(&self) -> Fixed {
        assert!(!self.mant.is_negative(), "sqrt of a negative value");
        Fixed::from_mantissa((&self.mant << self.bits as usize).sqrt(), self.bits)
    }

    /// Decimal string with `digits` digits after the point, truncated.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let v = shr_floor(&(&self.mant * &scale), self.bits);
        let neg = v.is_negative();
        let v = v.abs();
        let (int, frac) = v.div_rem(&scale);
        let mut s = String::new();
        if neg {
            s.push('-');
        }
        s.push_str(&int.to_string());
        if digits > 0 {
            s.push('.');
            s.push_str(&format!("{:0>width$}", frac.to_string(), width = digits));
        }
        s
    }

    /// pi to `bits` fractional bits via Machin's formula.
    pub fn pi(bits: u32) -> Fixed {
        let g = bits + 16;
        let a = atan_inv(5, g).mul_int(&BigInt::from(16));
        let b = atan_inv(239, g).mul_int(&BigInt::from(4));
        (a - b).with_bits(bits)
    }

    /// Arctangent for any real argument.
    pub fn atan(&self) -> Fixed {
        let bits = self.bits;
        let g = bits + 24;
        let x = self.with_bits(g);
        if x.is_negative() {
            return -(-x).atan().with_bits(bits);
        }
        let one = Fixed::from_int(1, g);
        if x > one {
            // atan(x) = pi/2 - atan(1/x)
            let inv = one.div(&x);
            let half_pi = Fixed::pi(g).div_int(&BigInt::from(2));
            return (half_pi - inv.atan()).with_bits(bits);
        }
        // halve the argument until it is small: atan(x) = 2 atan(x / (1 + sqrt(1 + x^2)))
        let mut y = x;
        let mut doublings = 0u32;
        let small = Fixed::from_mantissa(BigInt::one() << (g - 8) as usize, g);
        while y > small {
            let s = (&one + &(&y * &y)).sqrt();
            y = y.div(&(&one + &s));
            doublings += 1;
        }
        let y2 = &y * &y;
        let mut term = y.clone();
        let mut sum = y.clone();
        let mut k = 1i64;
        loop {
            term = -(&term * &y2);
            let t = term.div_int(&BigInt::from(2 * k + 1));
            if t.mant.is_zero() || t.mant == BigInt::from(-1) {
                break;
            }
            sum = &sum + &t;
            k += 1;
        }
        Fixed::from_mantissa(sum.mant << doublings as usize, g).with_bits(bits)
    }

    /// Arccosine for arguments in `[-1, 1]`, result in `[0, pi]`.
    pub fn acos(&self) -> Fixed {
        let bits = self.bits;
        let g = bits + 24;
        let x = self.with_bits(g);
        let one = Fixed::from_int(1, g);
        assert!(x.abs() <= one, "acos argument outside [-1, 1]");
        let pi = Fixed::pi(g);
        if x == one {
            return Fixed::zero(bits);
        }
        if x == -one.clone() {
            return pi.with_bits(bits);
        }
        // acos(x) = 2 atan( sqrt((1 - x) / (1 + x)) )
        let r = (&one - &x).div(&(&one + &x)).sqrt();
        r.atan().mul_int(&BigInt::from(2)).with_bits(bits)
    }

    /// Cosine by halving, Taylor series, and double-angle recovery.
    pub fn cos(&self) -> Fixed {
        let bits = self.bits;
        let g = bits + 32;
        let mut y = self.with_bits(g);
        let small = Fixed::from_mantissa(BigInt::one() << (g - 10) as usize, g);
        let mut halvings = 0;
        while y.abs() > small {
            y = y.div_int(&BigInt::from(2));
            halvings += 1;
        }
        let y2 = &y * &y;
        let mut term = Fixed::from_int(1, g);
        let mut sum = term.clone();
        let mut k = 1i64;
        loop {
            term = -(&term * &y2).div_int(&BigInt::from((2 * k - 1) * (2 * k)));
            if term.mant.is_zero() || term.mant == BigInt::from(-1) {
                break;
            }
            sum = &sum + &term;
            k += 1;
        }
        let two = Fixed::from_int(2, g);
        let one = Fixed::from_int(1, g);
        for _ in 0..halvings {
            sum = &(&two * &(&sum * &sum)) - &one;
        }
        sum.with_bits(bits)
    }
}

/// atan(1/n) by its alternating Taylor series.
fn atan_inv(n: i64, bits: u32) -> Fixed {
    let n2 = BigInt::from(n * n);
    let mut power = (BigInt::one() << bits as usize) / n;
    let mut sum = power.clone();
    let mut k = 1i64;
    loop {
        power /= &n2;
        if power.is_zero() {
            break;
        }
        let t = &power / (2 * k + 1);
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        k += 1;
    }
    Fixed::from_mantissa(sum, bits)
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fixed {
    fn cmp(&self, other: &Self) -> Ordering {
        let bits = self.bits.max(other.bits);
        self.with_bits(bits).mant.cmp(&other.with_bits(bits).mant)
    }
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, rhs: &Fixed) -> Fixed {
        let bits = self.bits.max(rhs.bits);
        Fixed::from_mantissa(self.with_bits(bits).mant + rhs.with_bits(bits).mant, bits)
    }
}

impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, rhs: &Fixed) -> Fixed {
        let bits = self.bits.max(rhs.bits);
        Fixed::from_mantissa(self.with_bits(bits).mant - rhs.with_bits(bits).mant, bits)
    }
}

impl Mul for &Fixed {
    type Output = Fixed;
    fn mul(self, rhs: &Fixed) -> Fixed {
        let bits = self.bits.max(rhs.bits);
        let prod = &self.mant * &rhs.mant;
        let shift = self.bits + rhs.bits - bits;
        Fixed::from_mantissa(shr_floor(&prod, shift), bits)
    }
}

impl Add for Fixed {
    type Output = Fixed;
    fn add(self, rhs: Fixed) -> Fixed {
        &self + &rhs
    }
}

impl Sub for Fixed {
    type Output = Fixed;
    fn sub(self, rhs: Fixed) -> Fixed {
        &self - &rhs
    }
}

impl Mul for Fixed {
    type Output = Fixed;
    fn mul(self, rhs: Fixed) -> Fixed {
        &self * &rhs
    }
}

impl Neg for Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed::from_mantissa(-self.mant, self.bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn pi_digits() {
        let p = Fixed::pi(200);
        assert_eq!(
            p.to_decimal(50),
            "3.14159265358979323846264338327950288419716939937510"
        );
    }

    #[test]
    fn atan_and_acos_match_f64() {
        for &x in &[-3.5, -1.0, -0.3, 0.0, 1e-5, 0.7, 1.0, 12.0] {
            let a = Fixed::from_f64(x, 120).atan().to_f64();
            assert!((a - f64::atan(x)).abs() < 1e-15, "atan({x})");
        }
        for &x in &[-1.0, -0.999, -0.5, 0.0, 0.25, 0.9999, 1.0] {
            let a = Fixed::from_f64(x, 120).acos().to_f64();
            assert!((a - f64::acos(x)).abs() < 1e-15, "acos({x})");
        }
    }

    #[test]
    fn cos_identity_high_precision() {
        // cos(pi/3) = 1/2 exactly
        let third = Fixed::pi(200).div_int(&BigInt::from(3));
        let c = third.cos();
        let err = (&c - &Fixed::from_rational(&BigRational::new(1.into(), 2.into()), 200)).abs();
        assert!(err < Fixed::from_mantissa(BigInt::one() << 20, 200));
        assert!((Fixed::from_f64(2.0, 100).cos().to_f64() - 2f64.cos()).abs() < 1e-15);
        assert!((Fixed::from_f64(PI, 100).cos().to_f64() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn floor_and_fract_for_negatives() {
        let x = Fixed::from_f64(-2.25, 64);
        assert_eq!(x.floor(), BigInt::from(-3));
        assert_eq!(x.fract().to_f64(), 0.75);
    }

    #[test]
    fn sqrt_two() {
        let s = Fixed::from_int(2, 128).sqrt();
        assert!((s.to_f64() - 2f64.sqrt()).abs() < 1e-16);
        assert_eq!(&s.to_decimal(30)[..20], "1.414213562373095048");
    }
}
