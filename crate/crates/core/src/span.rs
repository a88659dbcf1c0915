//! Closed-form span arithmetic for even distances, in exact rationals.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::ball_size;

pub type Rational = Ratio<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpanError {
    #[error("l = {0} is odd; odd distances are outside the even-l formula")]
    Odd(u64),
    #[error("l = {0} is below 8; the formula is only established for even l >= 8")]
    TooSmall(u64),
}

/// Nearest-integer bracket: the unique integer in `(x - 1/2, x + 1/2]`.
pub fn nearest_int_bracket(x: Rational) -> i64 {
    (x + Rational::new(1, 2)).floor().to_integer()
}

/// `3/8 (l + 4/3)^2` as an exact rational.
pub fn formula_argument(l: u64) -> Rational {
    let shifted = Rational::from_integer(l as i64) + Rational::new(4, 3);
    Rational::new(3, 8) * shifted * shifted
}

/// Which parity branch of `p` the certificate falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum ParityCase {
    /// `p = 2q`, span `6q^2 + 4q + 1`.
    Even { q: u64 },
    /// `p = 2q + 1`, span `6q^2 + 10q + 4`.
    Odd { q: u64 },
}

impl ParityCase {
    pub fn of(p: u64) -> Self {
        if p.is_multiple_of(2) {
            ParityCase::Even { q: p / 2 }
        } else {
            ParityCase::Odd { q: p / 2 }
        }
    }

    pub fn polynomial_value(self) -> u64 {
        match self {
            ParityCase::Even { q } => 6 * q * q + 4 * q + 1,
            ParityCase::Odd { q } => 6 * q * q + 10 * q + 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanCertificate {
    pub l: u64,
    pub p: u64,
    pub clique_size: u64,
    pub extra: u64,
    pub span: u64,
    pub formula_value: u64,
    pub parity_case: ParityCase,
}

impl SpanCertificate {
    /// Clique count, bracket formula and parity polynomial all agree.
    pub fn is_consistent(&self) -> bool {
        self.span == self.formula_value && self.span == self.parity_case.polynomial_value()
    }
}

/// Span certificate for even `l >= 8`.
pub fn span_even(l: u64) -> Result<SpanCertificate, SpanError> {
    if l % 2 == 1 {
        return Err(SpanError::Odd(l));
    }
    if l < 8 {
        return Err(SpanError::TooSmall(l));
    }
    Ok(certificate_unchecked(l))
}

/// The same computation without the range guard. Used for small even `l`
/// where the identity still holds arithmetically but makes no span claim.
pub(crate) fn certificate_unchecked(l: u64) -> SpanCertificate {
    let p = l / 2;
    let clique_size = ball_size(p);
    let extra = p / 2;
    let formula_value = nearest_int_bracket(formula_argument(l));
    SpanCertificate {
        l,
        p,
        clique_size,
        extra,
        span: clique_size + extra,
        formula_value: formula_value as u64,
        parity_case: ParityCase::of(p),
    }
}
