//! Exact rational arithmetic.
//!
//! [`Rational`] wraps a normalized big-integer fraction: the denominator is
//! always strictly positive, the pair is always in lowest terms, and zero is
//! `0/1`. Nothing in this module touches floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of negative value {0}")]
    NegativeInput(Rational),
    #[error("{0} is not the square of a rational")]
    NotASquare(Rational),
    #[error("cannot parse `{0}` as a rational (expected `num/den` or an integer)")]
    Parse(String),
}

/// Arbitrary-precision exact fraction, always in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

/// The four field operations accepted by [`combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

/// Normalized `n/d`.
pub fn rat<N: Into<BigInt>, D: Into<BigInt>>(n: N, d: D) -> Result<Rational, NumError> {
    let d = d.into();
    if d.is_zero() {
        return Err(NumError::ZeroDenominator);
    }
    Ok(Rational(BigRational::new(n.into(), d)))
}

/// Exact `a op b`.
pub fn combine(op: Op, a: &Rational, b: &Rational) -> Result<Rational, NumError> {
    Ok(match op {
        Op::Add => a + b,
        Op::Sub => a - b,
        Op::Mul => a * b,
        Op::Div => a.checked_div(b)?,
    })
}

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn integer<N: Into<BigInt>>(n: N) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// Panics on a zero denominator; meant for literals.
    pub fn new<N: Into<BigInt>, D: Into<BigInt>>(n: N, d: D) -> Self {
        rat(n, d).expect("literal rational with zero denominator")
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, NumError> {
        if rhs.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational, NumError> {
        Rational::one().checked_div(self)
    }

    pub fn sqrt_exact(&self) -> Result<Rational, NumError> {
        sqrt_exact(self)
    }

    pub fn to_decimal(&self, digits: u32) -> DecimalRendering {
        to_decimal(self, digits)
    }

    /// Lossy conversion, for display only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    let root = n.sqrt();
    (&root * &root == *n).then_some(root)
}

/// Exact square root, or [`NumError::NotASquare`]. Never approximates.
///
/// Since the fraction is reduced, it is a rational square iff numerator and
/// denominator are both perfect squares.
pub fn sqrt_exact(q: &Rational) -> Result<Rational, NumError> {
    if q.is_negative() {
        return Err(NumError::NegativeInput(q.clone()));
    }
    match (isqrt_exact(q.numer()), isqrt_exact(q.denom())) {
        (Some(n), Some(d)) => Ok(Rational(BigRational::new_raw(n, d))),
        _ => Err(NumError::NotASquare(q.clone())),
    }
}

/// A decimal expansion truncated toward zero to exactly `digits` places.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecimalRendering {
    pub digits: u32,
    pub text: String,
}

impl fmt::Display for DecimalRendering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn render_scaled(negative: bool, scaled: &BigInt, digits: u32) -> DecimalRendering {
    let s = scaled.to_string();
    let width = digits as usize + 1;
    let padded = format!("{s:0>width$}");
    let (int_part, frac_part) = padded.split_at(padded.len() - digits as usize);
    let sign = if negative { "-" } else { "" };
    DecimalRendering {
        digits,
        text: format!("{sign}{int_part}.{frac_part}"),
    }
}

fn pow10(digits: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u8), digits as usize)
}

/// Truncated decimal expansion of `q` with `digits` fractional digits
/// (`digits` is clamped to at least 1).
pub fn to_decimal(q: &Rational, digits: u32) -> DecimalRendering {
    let digits = digits.max(1);
    let scaled = (q.numer().abs() * pow10(digits)) / q.denom();
    render_scaled(q.is_negative(), &scaled, digits)
}

/// Truncated decimal expansion of `√q` for `q ≥ 0`.
pub fn sqrt_decimal(q: &Rational, digits: u32) -> Result<DecimalRendering, NumError> {
    if q.is_negative() {
        return Err(NumError::NegativeInput(q.clone()));
    }
    let digits = digits.max(1);
    // floor(sqrt(x)) == isqrt(floor(x))
    let radicand = (q.numer() * pow10(2 * digits)) / q.denom();
    Ok(render_scaled(false, &radicand.sqrt(), digits))
}

/// Parses a truncated decimal literal such as `-3.1415` exactly.
pub fn parse_decimal(text: &str) -> Result<Rational, NumError> {
    let err = || NumError::Parse(text.to_string());
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() || !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().map_err(|_| err())?;
    let value = rat(digits, pow10(frac_part.len() as u32))?;
    Ok(if negative { -value } else { value })
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = NumError;

    /// Accepts `num/den` or a bare integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| NumError::Parse(s.to_string()));
        match s.split_once('/') {
            Some((n, d)) => rat(parse(n)?, parse(d)?),
            None => Ok(Rational::integer(parse(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(&self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Sign of `q` as an [`Ordering`] against zero.
pub fn sign(q: &Rational) -> Ordering {
    match q.numer().sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn construction_normalizes() {
        assert_eq!(rat(1224, 1393).unwrap(), q(1224, 1393));
        let half = rat(4, -8).unwrap();
        assert_eq!(half.numer(), &BigInt::from(-1));
        assert_eq!(half.denom(), &BigInt::from(2));
        // 332928 = 239·1393 + 1 = 272·1224, 378896 = 272·1393
        let r = rat(332928, 378896).unwrap();
        assert_eq!(r.numer(), &BigInt::from(1224));
        assert_eq!(r.denom(), &BigInt::from(1393));
        let z = rat(0, -7).unwrap();
        assert_eq!((z.numer().clone(), z.denom().clone()), (BigInt::from(0), BigInt::from(1)));
        assert_eq!(rat(3, 0), Err(NumError::ZeroDenominator));
    }

    #[test]
    fn combine_examples() {
        let terms = [q(1, 1), q(1, 3), q(1, 12), q(-1, 408)];
        let total = terms
            .iter()
            .try_fold(Rational::zero(), |acc, t| combine(Op::Add, &acc, t))
            .unwrap();
        assert_eq!(total, q(577, 408));
        let x = q(-17, 9);
        assert_eq!(combine(Op::Mul, &x, &Rational::one()).unwrap(), x);
        assert_eq!(
            combine(Op::Sub, &q(1224, 1393), &q(9785, 11136)).unwrap(),
            q(-41, 15512448)
        );
        assert_eq!(combine(Op::Div, &x, &Rational::zero()), Err(NumError::DivisionByZero));
    }

    #[test]
    fn exact_roots() {
        assert_eq!(sqrt_exact(&q(390625, 1)).unwrap(), q(625, 1));
        assert_eq!(sqrt_exact(&q(36, 1)).unwrap(), q(6, 1));
        assert_eq!(sqrt_exact(&q(2304, 625)).unwrap(), q(48, 25));
        assert!(matches!(sqrt_exact(&q(2, 1)), Err(NumError::NotASquare(_))));
        assert!(matches!(sqrt_exact(&q(-4, 1)), Err(NumError::NegativeInput(_))));
        assert_eq!(sqrt_exact(&Rational::zero()).unwrap(), Rational::zero());
    }

    #[test]
    fn decimal_truncates() {
        assert_eq!(to_decimal(&q(577, 408), 6).text, "1.414215");
        assert_eq!(to_decimal(&q(1, 2), 3).text, "0.500");
        assert_eq!(to_decimal(&q(9785, 11136), 8).text, "0.87868175");
        assert_eq!(to_decimal(&q(-1, 3), 4).text, "-0.3333");
        assert_eq!(to_decimal(&q(2, 3), 2).text, "0.66");
        assert_eq!(to_decimal(&q(-7, 1), 1).text, "-7.0");
        assert_eq!(sqrt_decimal(&q(2, 1), 10).unwrap().text, "1.4142135623");
        assert_eq!(sqrt_decimal(&q(9, 4), 2).unwrap().text, "1.50");
    }

    #[test]
    fn parsing() {
        assert_eq!("-12/8".parse::<Rational>().unwrap(), q(-3, 2));
        assert_eq!("5".parse::<Rational>().unwrap(), q(5, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert_eq!(parse_decimal("-3.25").unwrap(), q(-13, 4));
        assert_eq!(parse_decimal("1.500").unwrap(), q(3, 2));
        assert!(parse_decimal("1.2.3").is_err());
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-500i64..500, 1i64..500).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn add_sub_round_trip(a in small_rational(), b in small_rational()) {
            let sum = combine(Op::Add, &a, &b).unwrap();
            prop_assert_eq!(combine(Op::Sub, &sum, &b).unwrap(), a);
        }

        #[test]
        fn mul_div_round_trip(a in small_rational(), b in small_rational()) {
            prop_assume!(!a.is_zero());
            let prod = combine(Op::Mul, &a, &b).unwrap();
            prop_assert_eq!(combine(Op::Div, &prod, &a).unwrap(), b);
        }

        #[test]
        fn normalization_idempotent(a in small_rational()) {
            let again = rat(a.numer().clone(), a.denom().clone()).unwrap();
            prop_assert_eq!(again.numer(), a.numer());
            prop_assert_eq!(again.denom(), a.denom());
            prop_assert!(a.denom() > &BigInt::zero());
            prop_assert!(a.numer().gcd(a.denom()).is_one());
        }

        #[test]
        fn sqrt_exact_matches_brute_force(n in 0i64..200, d in 1i64..60) {
            let x = q(n, d);
            // brute force over all a/b with a ≤ 200, b ≤ 60; covers every root of n/d in range
            let brute = (1i64..=60)
                .flat_map(|b| (0i64..=200).map(move |a| (a, b)))
                .find(|&(a, b)| a * a * d == n * b * b);
            match sqrt_exact(&x) {
                Ok(r) => {
                    prop_assert_eq!(r.square(), x);
                    prop_assert!(brute.is_some());
                }
                Err(NumError::NotASquare(_)) => prop_assert!(brute.is_none()),
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }

        #[test]
        fn decimal_within_one_ulp(a in small_rational(), digits in 1u32..20) {
            let text = to_decimal(&a, digits).text;
            let back = parse_decimal(&text).unwrap();
            let ulp = rat(1, pow10(digits)).unwrap();
            prop_assert!((&a - &back).abs() < ulp);
            prop_assert_eq!(text.split_once('.').unwrap().1.len(), digits as usize);
        }

        #[test]
        fn serde_round_trip(a in small_rational()) {
            let json = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<Rational>(&json).unwrap(), a);
        }
    }
}
