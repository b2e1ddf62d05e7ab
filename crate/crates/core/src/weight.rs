//! Edge weights and the scalar factors (α, β, ...) they are compared against.
//!
//! Two weight modes exist. `u64` is the canonical exact mode: sums and
//! comparisons are exact, and scaled comparisons against a rational factor
//! are done by cross-multiplication. `f64` is a convenience mode in which
//! equality and `≤` are tolerant, see [`FLOAT_TOLERANCE`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

/// Exact rational numbers used for factors and analytic bounds.
pub type Rational = Ratio<i128>;

/// Relative tolerance for float comparisons: `|a - b| <= 1e-9 * max(1, |a|, |b|)`.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

fn tolerance(a: f64, b: f64) -> f64 {
    FLOAT_TOLERANCE * 1f64.max(a.abs()).max(b.abs())
}

/// `a <= b` up to the float tolerance.
pub fn float_le(a: f64, b: f64) -> bool {
    a <= b + tolerance(a, b)
}

/// `a == b` up to the float tolerance.
pub fn float_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= tolerance(a, b)
}

/// A non-negative edge weight.
pub trait Weight:
    Copy
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + fmt::Debug
    + fmt::Display
    + serde::Serialize
    + Send
    + Sync
    + 'static
{
    const ZERO: Self;
    /// Whether arithmetic in this mode is exact.
    const EXACT: bool;

    /// Finite and non-negative.
    fn is_valid(self) -> bool;
    fn checked_add(self, other: Self) -> Option<Self>;
    fn to_f64(self) -> f64;
    fn total_cmp(&self, other: &Self) -> Ordering;
    /// `self <= factor * base`; tolerant in float mode.
    fn le_scaled(self, factor: &Scalar, base: Self) -> bool;
    /// Equality; tolerant in float mode.
    fn approx_eq(self, other: Self) -> bool;
    /// Parse one weight token of a graph file.
    fn parse_token(token: &str) -> Option<Self>;
    /// Render a token that [`Weight::parse_token`] reads back in the same mode.
    fn to_token(self) -> String;
    fn to_scalar(self) -> Scalar;

    /// `self > factor * base`; exact negation of [`Weight::le_scaled`].
    fn gt_scaled(self, factor: &Scalar, base: Self) -> bool {
        !self.le_scaled(factor, base)
    }

    /// `self <= other`, tolerant in float mode.
    fn approx_le(self, other: Self) -> bool {
        self.le_scaled(&Scalar::one(), other)
    }
}

impl Weight for u64 {
    const ZERO: Self = 0;
    const EXACT: bool = true;

    fn is_valid(self) -> bool {
        true
    }

    fn checked_add(self, other: Self) -> Option<Self> {
        u64::checked_add(self, other)
    }

    fn to_f64(self) -> f64 {
        self as f64
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn le_scaled(self, factor: &Scalar, base: Self) -> bool {
        match factor {
            Scalar::Exact(r) => {
                if base == 0 {
                    self == 0
                } else {
                    Rational::new(self as i128, base as i128) <= *r
                }
            }
            Scalar::Float(f) => float_le(self as f64, f * base as f64),
        }
    }

    fn approx_eq(self, other: Self) -> bool {
        self == other
    }

    fn parse_token(token: &str) -> Option<Self> {
        if token.bytes().all(|b| b.is_ascii_digit()) {
            token.parse().ok()
        } else {
            None
        }
    }

    fn to_token(self) -> String {
        self.to_string()
    }

    fn to_scalar(self) -> Scalar {
        Scalar::integer(self as i128)
    }
}

impl Weight for f64 {
    const ZERO: Self = 0.0;
    const EXACT: bool = false;

    fn is_valid(self) -> bool {
        self.is_finite() && self >= 0.0
    }

    fn checked_add(self, other: Self) -> Option<Self> {
        let s = self + other;
        s.is_finite().then_some(s)
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }

    fn le_scaled(self, factor: &Scalar, base: Self) -> bool {
        float_le(self, factor.to_f64() * base)
    }

    fn approx_eq(self, other: Self) -> bool {
        float_eq(self, other)
    }

    fn parse_token(token: &str) -> Option<Self> {
        let lower = token.to_ascii_lowercase();
        if lower.contains("inf") || lower.contains("nan") {
            return None;
        }
        token.parse().ok()
    }

    fn to_token(self) -> String {
        // `{:?}` always carries a '.' or an exponent and round-trips exactly.
        format!("{self:?}")
    }

    fn to_scalar(self) -> Scalar {
        Scalar::Float(self)
    }
}

/// A ratio such as α or β: exact rational or float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Float(f64),
}

impl Scalar {
    pub fn one() -> Self {
        Scalar::Exact(Rational::one())
    }

    pub fn ratio(numer: i128, denom: i128) -> Self {
        Scalar::Exact(Rational::new(numer, denom))
    }

    pub fn integer(value: i128) -> Self {
        Scalar::Exact(Rational::from_integer(value))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(r),
            Scalar::Float(f) => *f,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Exact(r) => Some(*r),
            Scalar::Float(_) => None,
        }
    }

    /// Tolerant for floats, exact otherwise.
    pub fn le(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a <= b,
            _ => float_le(self.to_f64(), other.to_f64()),
        }
    }

    pub fn lt(&self, other: &Scalar) -> bool {
        !other.le(self)
    }

    /// Strictly greater than one, the precondition for the LAST algorithms.
    pub fn exceeds_one(&self) -> bool {
        match self {
            Scalar::Exact(r) => *r > Rational::one(),
            Scalar::Float(f) => f.is_finite() && *f > 1.0,
        }
    }

    /// The guaranteed weight factor `1 + 2/(α-1) = (α+1)/(α-1)` for stretch α.
    pub fn weight_bound_for(alpha: &Scalar) -> Scalar {
        let one = Scalar::one();
        one + Scalar::integer(2) / (*alpha - one)
    }

    fn combine(
        self,
        other: Scalar,
        exact: impl Fn(Rational, Rational) -> Rational,
        float: impl Fn(f64, f64) -> f64,
    ) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(exact(a, b)),
            _ => Scalar::Float(float(self.to_f64(), other.to_f64())),
        }
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64()
        .unwrap_or_else(|| r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN))
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.combine(rhs, |a, b| a + b, |a, b| a + b)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.combine(rhs, |a, b| a - b, |a, b| a - b)
    }
}

impl std::ops::Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.combine(rhs, |a, b| a * b, |a, b| a * b)
    }
}

impl std::ops::Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.combine(rhs, |a, b| a / b, |a, b| a / b)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Parses `p/q`, an integer, or a decimal such as `1.25`.
///
/// Decimals are expanded exactly (`1.25` becomes `5/4`), so every accepted
/// spelling produces an exact factor.
impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("cannot parse scalar `{s}`"));
        if let Some((p, q)) = s.split_once('/') {
            let p: i128 = p.trim().parse().map_err(|_| bad())?;
            let q: i128 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(Error::InvalidArgument(format!("zero denominator in `{s}`")));
            }
            return Ok(Scalar::ratio(p, q));
        }
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty()
            || !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
            || frac_part.len() > 30
        {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let numer: i128 = if digits.is_empty() {
            0
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let denom = 10i128.pow(frac_part.len() as u32);
        let numer = if negative { -numer } else { numer };
        Ok(Scalar::ratio(numer, denom))
    }
}

/// Exact ratio `numer / denom` of two weights; `0/0` is treated as 1.
pub fn weight_ratio_exact(numer: u64, denom: u64) -> Option<Rational> {
    match (numer, denom) {
        (0, 0) => Some(Rational::one()),
        (_, 0) => None,
        (a, b) => Some(Rational::new(a as i128, b as i128)),
    }
}

/// Float ratio `numer / denom`; `0/0` is 1 and `x/0` is infinite.
pub fn weight_ratio_f64<W: Weight>(numer: W, denom: W) -> f64 {
    let (a, b) = (numer.to_f64(), denom.to_f64());
    if b == 0.0 {
        if a == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        a / b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_and_decimals_exactly() {
        assert_eq!("3/2".parse::<Scalar>().unwrap(), Scalar::ratio(3, 2));
        assert_eq!("1.5".parse::<Scalar>().unwrap(), Scalar::ratio(3, 2));
        assert_eq!("2".parse::<Scalar>().unwrap(), Scalar::integer(2));
        assert_eq!("0.001".parse::<Scalar>().unwrap(), Scalar::ratio(1, 1000));
        assert_eq!("169/70".parse::<Scalar>().unwrap(), Scalar::ratio(169, 70));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
        assert!(".".parse::<Scalar>().is_err());
    }

    #[test]
    fn exact_scaled_comparison() {
        let two = Scalar::integer(2);
        assert!(30u64.le_scaled(&two, 15));
        assert!(!31u64.le_scaled(&two, 15));
        assert!(31u64.gt_scaled(&two, 15));
        assert!(0u64.le_scaled(&two, 0));
        assert!(!1u64.le_scaled(&two, 0));
        // 7 <= 3/2 * 5 = 7.5
        assert!(7u64.le_scaled(&Scalar::ratio(3, 2), 5));
        assert!(!8u64.le_scaled(&Scalar::ratio(3, 2), 5));
    }

    #[test]
    fn float_comparison_is_tolerant() {
        let alpha = Scalar::Float(1.0 + std::f64::consts::SQRT_2);
        let base = 3.0;
        let exact = alpha.to_f64() * base;
        assert!((exact * (1.0 + 1e-12)).le_scaled(&alpha, base));
        assert!(!(exact * (1.0 + 1e-6)).le_scaled(&alpha, base));
        assert!(0.1f64.approx_eq(0.3 - 0.2));
    }

    #[test]
    fn weight_bound_factor() {
        assert_eq!(Scalar::weight_bound_for(&Scalar::integer(2)), Scalar::integer(3));
        assert_eq!(Scalar::weight_bound_for(&Scalar::ratio(3, 2)), Scalar::integer(5));
        let s = Scalar::weight_bound_for(&Scalar::Float(1.0 + std::f64::consts::SQRT_2));
        assert!(float_eq(s.to_f64(), 1.0 + std::f64::consts::SQRT_2));
    }

    #[test]
    fn weight_tokens_round_trip() {
        for w in [0.0f64, 0.1, 1.0 / 3.0, 1e-7, 12345.5] {
            assert_eq!(f64::parse_token(&w.to_token()), Some(w));
            assert!(w.to_token().contains('.') || w.to_token().contains('e'));
        }
        assert_eq!(u64::parse_token("17"), Some(17));
        assert_eq!(u64::parse_token("-3"), None);
        assert_eq!(u64::parse_token("1.5"), None);
        assert_eq!(f64::parse_token("inf"), None);
    }
}
