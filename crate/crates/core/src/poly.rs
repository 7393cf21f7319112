//! Integer polynomials in ascending coefficient order, plus the small amount of
//! rational polynomial arithmetic needed for gcds and square-free splitting.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::ParseError;

/// Polynomial with exact integer coefficients; `coeffs[j]` is the coefficient of `x^j`.
///
/// The representation is canonical: no trailing zero coefficients, and the zero
/// polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Coefficient sequence reads the same in both directions.
    pub fn is_palindromic(&self) -> bool {
        let c = &self.coeffs;
        c.iter().eq(c.iter().rev())
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * BigInt::from(j))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Greatest common divisor of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| if j % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        horner_f64(&self.to_f64_coeffs(), x)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from(c.clone())
            })
    }

    /// Sign of `p(num/den)` for `den > 0`, computed exactly as the sign of the
    /// homogenised integer `sum c_j num^j den^(d-j)`.
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        // Horner in homogeneous form: acc = acc*num + c_j*den^(d-j)
        for (k, c) in self.coeffs.iter().rev().enumerate() {
            if k == 0 {
                acc = c.clone();
            } else {
                den_pow *= den;
                acc = acc * num + c * &den_pow;
            }
        }
        sign_of(&acc)
    }

    /// Sign of `p(r)` at an exact rational point.
    pub fn sign_at_rational(&self, r: &BigRational) -> i8 {
        self.sign_at(r.numer(), r.denom())
    }

    /// Sign of `p(m / 2^bits)`.
    pub fn sign_at_dyadic(&self, mant: &BigInt, bits: u32) -> i8 {
        self.sign_at(mant, &(BigInt::one() << bits as usize))
    }

    /// Substitution `x -> x + 1` (Taylor shift by one).
    pub fn taylor_shift_one(&self) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = c[j + 1].clone();
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// `x^d p(1/x)`; keeps the length of the coefficient vector.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// `2^(k*d) p(x / 2^k)` for degree `d`: roots are those of `p` times `2^k`.
    pub fn compress(&self, k: usize) -> Self {
        let d = self.coeffs.len().saturating_sub(1);
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c << (k * (d - j)))
                .collect(),
        )
    }

    /// `p(2^k x)`.
    pub fn dilate(&self, k: usize) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c << (k * j))
                .collect(),
        )
    }

    pub fn to_rational(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from(c.clone()))
                .collect(),
        )
    }

    /// Parse either a comma-separated ascending coefficient list (`"0,6,5,3"`)
    /// or a monomial expression (`"x^4-x^3-x^2-x+1"`).
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let t = text.trim();
        if t.is_empty() {
            return Err(ParseError::Empty);
        }
        let p = if t.contains(['x', 'X']) {
            parse_monomials(t)?
        } else {
            parse_list(t)?
        };
        if p.is_zero() {
            return Err(ParseError::ZeroPolynomial);
        }
        Ok(p)
    }
}

/// Free-function form of [`IntPolynomial::parse`].
pub fn parse_poly(text: &str) -> Result<IntPolynomial, ParseError> {
    IntPolynomial::parse(text)
}

impl FromStr for IntPolynomial {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

fn parse_integer(tok: &str) -> Result<BigInt, ParseError> {
    let tok = tok.trim();
    if tok.is_empty() {
        return Err(ParseError::Malformed(tok.to_string()));
    }
    if let Ok(v) = tok.parse::<BigInt>() {
        return Ok(v);
    }
    let looks_numeric = tok
        .chars()
        .all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-'));
    if looks_numeric && tok.parse::<f64>().is_ok() {
        Err(ParseError::NonInteger(tok.to_string()))
    } else {
        Err(ParseError::Malformed(tok.to_string()))
    }
}

fn parse_list(t: &str) -> Result<IntPolynomial, ParseError> {
    let coeffs = t
        .split(',')
        .map(parse_integer)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IntPolynomial::new(coeffs))
}

fn parse_monomials(t: &str) -> Result<IntPolynomial, ParseError> {
    let s: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.replace('X', "x");
    // split into signed terms
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !s[..i].ends_with('^') {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);

    let mut coeffs: Vec<BigInt> = Vec::new();
    for term in terms {
        let (neg, body) = match term.as_bytes().first() {
            Some(b'+') => (false, &term[1..]),
            Some(b'-') => (true, &term[1..]),
            _ => (false, term),
        };
        if body.is_empty() {
            return Err(ParseError::Malformed(term.to_string()));
        }
        let (coef, power) = match body.find('x') {
            None => (parse_integer(body)?, 0usize),
            Some(pos) => {
                let cpart = body[..pos].trim_end_matches('*');
                let coef = if cpart.is_empty() {
                    BigInt::one()
                } else {
                    parse_integer(cpart)?
                };
                let rest = &body[pos + 1..];
                let power = if rest.is_empty() {
                    1
                } else if let Some(e) = rest.strip_prefix('^') {
                    e.parse::<usize>()
                        .map_err(|_| ParseError::Malformed(term.to_string()))?
                } else {
                    return Err(ParseError::Malformed(term.to_string()));
                };
                (coef, power)
            }
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigInt::zero());
        }
        coeffs[power] += if neg { -coef } else { coef };
    }
    Ok(IntPolynomial::new(coeffs))
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = j == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match j {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{j}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        v.serialize(s)
    }
}

impl std::ops::Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl std::ops::Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl std::ops::Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

pub(crate) fn sign_of(v: &BigInt) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_negative() {
        -1
    } else {
        1
    }
}

/// Horner evaluation of an ascending coefficient slice.
#[inline]
pub fn horner_f64(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc.mul_add(x, c))
}

/// Polynomial over the rationals, ascending order, canonical (no trailing zeros).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    pub coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn one() -> Self {
        RatPoly::new(vec![BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * BigRational::from(BigInt::from(j)))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => RatPoly::new(self.coeffs.iter().map(|c| c / l).collect()),
        }
    }

    /// Euclidean division: `(quotient, remainder)`.
    pub fn div_rem(&self, rhs: &RatPoly) -> (RatPoly, RatPoly) {
        let Some(dr) = rhs.degree() else {
            panic!("polynomial division by zero");
        };
        let lead = rhs.coeffs[dr].clone();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dr {
            return (RatPoly::new(Vec::new()), self.clone());
        }
        let mut quot = vec![BigRational::zero(); n - dr];
        for k in (0..n - dr).rev() {
            let q = &rem[k + dr] / &lead;
            if !q.is_zero() {
                for (j, c) in rhs.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * c;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dr);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    pub fn gcd(&self, rhs: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn sub(&self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = BigRational::zero();
        RatPoly::new(
            (0..n)
                .map(|j| self.coeffs.get(j).unwrap_or(&z) - rhs.coeffs.get(j).unwrap_or(&z))
                .collect(),
        )
    }

    /// Clears denominators and returns the primitive integer polynomial with
    /// positive leading coefficient.
    pub fn to_primitive_int(&self) -> IntPolynomial {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        IntPolynomial::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from(lcm.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_list_and_monomials_agree() {
        let a = IntPolynomial::parse("1,-1,-1,-1,1").unwrap();
        let b = IntPolynomial::parse("x^4-x^3-x^2-x+1").unwrap();
        assert_eq!(a, b);
        assert_eq!(
            a.coeffs(),
            IntPolynomial::from_i64(&[1, -1, -1, -1, 1]).coeffs()
        );
    }

    #[test]
    fn parse_identity_and_table_row() {
        assert_eq!(IntPolynomial::parse("0,1").unwrap(), IntPolynomial::x());
        let p = IntPolynomial::parse("0,6,5,3").unwrap();
        assert_eq!(p, IntPolynomial::parse("3x^3+5x^2+6x").unwrap());
        assert_eq!(p.degree(), Some(3));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(IntPolynomial::parse(""), Err(ParseError::Empty)));
        assert!(matches!(
            IntPolynomial::parse("0,0"),
            Err(ParseError::ZeroPolynomial)
        ));
        assert!(matches!(
            IntPolynomial::parse("1,2.5"),
            Err(ParseError::NonInteger(_))
        ));
        assert!(matches!(
            IntPolynomial::parse("1,a"),
            Err(ParseError::Malformed(_))
        ));
        assert!(matches!(
            IntPolynomial::parse("x^^2"),
            Err(ParseError::Malformed(_))
        ));
        assert!(matches!(
            IntPolynomial::parse("x-x"),
            Err(ParseError::ZeroPolynomial)
        ));
    }

    #[test]
    fn parse_loose_monomial_syntax() {
        let p = IntPolynomial::parse(" -2*x^3 + x - 7 ").unwrap();
        assert_eq!(p, IntPolynomial::from_i64(&[-7, 1, 0, -2]));
    }

    #[test]
    fn display_is_readable() {
        let p = IntPolynomial::from_i64(&[1, -1, -1, -1, 1]);
        assert_eq!(p.to_string(), "x^4 - x^3 - x^2 - x + 1");
        assert_eq!(IntPolynomial::from_i64(&[0, -3]).to_string(), "-3x");
    }

    #[test]
    fn exact_sign_evaluation() {
        // x^2 - 2 at 3/2 is positive, at 7/5 negative
        let p = IntPolynomial::from_i64(&[-2, 0, 1]);
        assert_eq!(p.sign_at(&BigInt::from(3), &BigInt::from(2)), 1);
        assert_eq!(p.sign_at(&BigInt::from(7), &BigInt::from(5)), -1);
        assert_eq!(p.sign_at(&BigInt::from(-3), &BigInt::from(2)), 1);
    }

    #[test]
    fn taylor_shift() {
        // (x+1)^2 = x^2 + 2x + 1
        let p = IntPolynomial::from_i64(&[0, 0, 1]).taylor_shift_one();
        assert_eq!(p, IntPolynomial::from_i64(&[1, 2, 1]));
    }

    #[test]
    fn rational_gcd() {
        let a = IntPolynomial::from_i64(&[-1, 0, 1]).to_rational(); // (x-1)(x+1)
        let b = IntPolynomial::from_i64(&[1, -2, 1]).to_rational(); // (x-1)^2
        let g = a.gcd(&b);
        assert_eq!(g.to_primitive_int(), IntPolynomial::from_i64(&[-1, 1]));
    }
}
