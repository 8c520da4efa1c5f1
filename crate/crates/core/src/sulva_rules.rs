//! Baudhayana's circle rules I.58 to I.62 as exact functions, and the exact
//! identities relating them.
//!
//! - I.58 (circulature): the radius of the circle equal to a square of side
//!   `s` is `s/2 + E/3`, with `E = (√2 − 1)·s/2` the excess of the
//!   half-diagonal over the half-side.
//! - I.59 (quadrature): `s = d·{1 − (1/(8·29))·[28 + 1/6 − (1/8)(1/6)]}`.
//! - I.60 (cruder quadrature): `s = d·(1 − 2/15)`.
//! - I.61-62: `√2 ≈ 1 + 1/3 + (1/4)(1/3) − (1/34)(1/4)(1/3)`.
//!
//! [`implied_pi`] is an anachronism: the texts never mention π. It is kept
//! because `4·(s/d)²` is the usual way to compare the accuracy of the rules.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_numbers::{self, parse_decimal, DecimalRendering, Rational};

/// π truncated to 50 decimals. Only used to report approximation errors.
pub const PI_50: &str = "3.14159265358979323846264338327950288419716939937510";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("side must be positive, got {0}")]
    NonPositiveSide(Rational),
    #[error("sqrt 2 approximation must be at least 1, got {0}")]
    Sqrt2NotAboveOne(Rational),
    #[error("side over diameter must lie strictly between 0 and 1, got {0}")]
    OutOfRange(Rational),
}

/// A rule's value together with its summands in the order the text gives them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleValue {
    pub value: Rational,
    pub term_list: Vec<Rational>,
}

impl RuleValue {
    fn from_terms(term_list: Vec<Rational>) -> Self {
        RuleValue {
            value: term_list.iter().sum(),
            term_list,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ExactEqual,
    DiffersByResidual,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub left: Rational,
    pub right: Rational,
    pub residual: Rational,
    pub verdict: Verdict,
    /// Residual written with the unreduced denominator the rules suggest.
    #[serde(skip)]
    pub legend: String,
}

impl IdentityReport {
    pub fn compare(name: impl Into<String>, left: Rational, right: Rational, legend: impl Into<String>) -> Self {
        let residual = &left - &right;
        let verdict = if residual.is_zero() {
            Verdict::ExactEqual
        } else {
            Verdict::DiffersByResidual
        };
        IdentityReport {
            name: name.into(),
            left,
            right,
            residual,
            verdict,
            legend: legend.into(),
        }
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// I.61-62: `1 + 1/3 + 1/12 − 1/408 = 577/408`.
pub fn sqrt2_i61() -> RuleValue {
    let third = q(1, 3);
    let fourth_of_third = q(1, 4) * &third;
    let correction = -(q(1, 34) * &fourth_of_third);
    RuleValue::from_terms(vec![Rational::one(), third, fourth_of_third, correction])
}

/// I.58: radius `s/2 + e` with `e = E/3` and `E = (√2 − 1)·s/2`.
pub fn circulature_i58(side: &Rational, sqrt2: &Rational) -> Result<Rational, RuleError> {
    if !side.is_positive() {
        return Err(RuleError::NonPositiveSide(side.clone()));
    }
    if sqrt2 < &Rational::one() {
        return Err(RuleError::Sqrt2NotAboveOne(sqrt2.clone()));
    }
    let half_side = side * q(1, 2);
    let excess = (sqrt2 - Rational::one()) * &half_side;
    Ok(half_side + excess * q(1, 3))
}

/// Diameter over side, `2r/s` at `s = 1`, i.e. `(2 + √2)/3`.
pub fn diameter_over_side_i58(sqrt2: &Rational) -> Result<Rational, RuleError> {
    let radius = circulature_i58(&Rational::one(), sqrt2)?;
    Ok(radius * Rational::integer(2))
}

/// Terms of the I.59 bracket `28 + 1/6 − (1/8)(1/6)`.
pub fn i59_bracket() -> RuleValue {
    let sixth = q(1, 6);
    let eighth_of_sixth = -(q(1, 8) * &sixth);
    RuleValue::from_terms(vec![Rational::integer(28), sixth, eighth_of_sixth])
}

/// I.59 side over diameter: `1 − (1/(8·29))·[28 + 1/6 − 1/48] = 9785/11136`.
pub fn quadrature_ratio_i59() -> Rational {
    Rational::one() - q(1, 8 * 29) * i59_bracket().value
}

/// I.60 side over diameter: `1 − 2/15`.
pub fn quadrature_ratio_i60() -> Rational {
    Rational::one() - q(2, 15)
}

/// Side over diameter obtained by inverting I.58 with the I.61-62 value of √2.
pub fn quadrature_ratio_i58() -> Rational {
    let diameter = diameter_over_side_i58(&sqrt2_i61().value).expect("577/408 exceeds 1");
    diameter.recip().expect("d/s is positive")
}

/// `1 − 1/8 + 1/(8·34)`, the rule one might have expected in place of I.59.
pub fn simpler_rule() -> Rational {
    Rational::one() - q(1, 8) + q(1, 8 * 34)
}

/// The three exact comparisons around `1224/1393`.
pub fn verify_decompositions() -> Vec<IdentityReport> {
    let inverted = quadrature_ratio_i58();
    let i59 = quadrature_ratio_i59();
    let via_34 = (Rational::one() - q(33, 8 * 34)) + q(1, 8 * 34 * 1393);
    vec![
        IdentityReport::compare(
            "1224/1393 (I.58 with 577/408, inverted) vs I.59",
            inverted.clone(),
            i59.clone(),
            "-41/(8·29·6·8·1393)",
        ),
        IdentityReport::compare(
            "1224/1393 vs (1 - 33/(8·34)) + 1/(8·34·1393)",
            inverted,
            via_34,
            "0",
        ),
        IdentityReport::compare(
            "I.59 vs 1 - 1/8 + 1/(8·34)",
            i59,
            simpler_rule(),
            "1/(8·29·6·8·17)",
        ),
    ]
}

/// `4·(s/d)²`: the π for which a square of side `s` has the area of the circle
/// of diameter `d`.
pub fn implied_pi(side_over_diameter: &Rational) -> Result<Rational, RuleError> {
    if !side_over_diameter.is_positive() || side_over_diameter >= &Rational::one() {
        return Err(RuleError::OutOfRange(side_over_diameter.clone()));
    }
    Ok(Rational::integer(4) * side_over_diameter.square())
}

pub fn pi_reference() -> Rational {
    parse_decimal(PI_50).expect("PI_50 is a valid decimal literal")
}

/// `value − π`, where π is the stored 50-digit constant. The reference is off
/// by less than `1e-50`, so any rendering to fewer digits is reliable up to
/// the last printed digit.
pub fn pi_error(value: &Rational, digits: u32) -> DecimalRendering {
    exact_numbers::to_decimal(&(value - pi_reference()), digits)
}
