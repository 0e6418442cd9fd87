//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All algorithms are written against [`Scalar`], an ordered field built on
//! `num-traits`. The canonical instantiation is the exact [`Rational`]
//! (arbitrary precision), which decides every majorization boundary without
//! an epsilon. `f64` and `f32` are supported for fast approximate screening;
//! their comparisons carry a small absolute tolerance for the unit-sum check.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational.
pub type Rational = BigRational;

/// An ordered field usable as a Schmidt coefficient.
pub trait Scalar:
    Num + Clone + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    /// True when arithmetic is exact (no rounding).
    const EXACT: bool;

    /// Absolute slack allowed when checking that entries sum to one.
    fn sum_tolerance() -> Self;

    /// `num / den`, rounded for inexact types.
    fn from_ratio(num: u64, den: u64) -> Self;

    fn to_f64(&self) -> f64;

    /// Parses a decimal (`0.35`, `1e-3`) or fraction (`7/20`) literal.
    fn parse_literal(text: &str) -> Result<Self>;

    /// Lossless textual form for exact types, shortest round-trip form otherwise.
    fn render(&self) -> String;

    fn is_negative_value(&self) -> bool {
        *self < Self::zero()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn sum_tolerance() -> Self {
        Self::zero()
    }

    fn from_ratio(num: u64, den: u64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_literal(text: &str) -> Result<Self> {
        parse_rational(text)
    }

    fn render(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

macro_rules! impl_float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn sum_tolerance() -> Self {
                $tol
            }

            fn from_ratio(num: u64, den: u64) -> Self {
                (num as f64 / den as f64) as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn parse_literal(text: &str) -> Result<Self> {
                let value = parse_rational(text)?;
                Ok(ToPrimitive::to_f64(&value).unwrap_or(f64::NAN) as $t)
            }

            fn render(&self) -> String {
                format!("{}", self)
            }
        }
    };
}

impl_float_scalar!(f64, 1e-9);
impl_float_scalar!(f32, 1e-5);

/// Parses `a/b`, a plain decimal, or a decimal with exponent into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse(format!("empty number literal {text:?}")));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim())
            .map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
        let den = BigInt::from_str(den.trim())
            .map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rational::new(num, den));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..]
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {text:?}")))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(Error::Parse(format!("not a number: {text:?}")));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str(&all_digits).unwrap_or_else(|_| BigInt::zero());
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued-fraction convergents and the best semiconvergent).
pub fn approximate_f64(x: f64, max_den: u64) -> Result<Rational> {
    if !x.is_finite() {
        return Err(Error::Parse(format!("non-finite value {x}")));
    }
    let max_den = BigInt::from(max_den.max(1));
    let exact = Rational::from_float(x).ok_or_else(|| Error::Parse(format!("bad float {x}")))?;
    if exact.denom() <= &max_den {
        return Ok(exact);
    }
    let negative = exact.is_negative();
    let target = exact.abs();

    // convergents h/k
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let (mut num, mut den) = (target.numer().clone(), target.denom().clone());
    loop {
        let (a, rem) = num.div_rem(&den);
        let k2 = &a * &k1 + &k0;
        if k2 > max_den {
            // best semiconvergent with denominator <= max_den
            let t = (&max_den - &k0) / &k1;
            let semi = Rational::new(&t * &h1 + &h0, &t * &k1 + &k0);
            let conv = Rational::new(h1.clone(), k1.clone());
            let pick = if (&semi - &target).abs() < (&conv - &target).abs() {
                semi
            } else {
                conv
            };
            return Ok(if negative { -pick } else { pick });
        }
        let h2 = &a * &h1 + &h0;
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        if rem.is_zero() {
            let r = Rational::new(h1, k1);
            return Ok(if negative { -r } else { r });
        }
        num = std::mem::replace(&mut den, rem);
    }
}

/// A ratio `num/den` of nonnegative scalars evaluated in the extended order:
/// `x/0 = +inf` for `x > 0`; `0/0` is kept apart as indeterminate.
#[derive(Clone, Debug, PartialEq)]
pub enum Quotient<S> {
    Finite(S),
    Infinite,
    Indeterminate,
}

impl<S: Scalar> Quotient<S> {
    pub fn of(num: &S, den: &S) -> Self {
        if den.is_zero() {
            if num.is_zero() {
                Quotient::Indeterminate
            } else {
                Quotient::Infinite
            }
        } else {
            Quotient::Finite(num.clone() / den.clone())
        }
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            Quotient::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Quotient::Infinite)
    }

    /// `0/0` collapses to `+inf`, which is how the ratio acts in every
    /// cross-multiplied inequality that uses it as an upper threshold.
    pub fn indeterminate_as_infinite(self) -> Self {
        match self {
            Quotient::Indeterminate => Quotient::Infinite,
            other => other,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Quotient::Finite(v) => v.to_f64(),
            Quotient::Infinite => f64::INFINITY,
            Quotient::Indeterminate => f64::NAN,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Quotient::Finite(v) => v.render(),
            Quotient::Infinite => "inf".to_string(),
            Quotient::Indeterminate => "0/0".to_string(),
        }
    }

    /// Extended-order comparison; indeterminate values compare as `None`.
    pub fn partial_cmp_ext(&self, other: &Self) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering::*;
        match (self, other) {
            (Quotient::Indeterminate, _) | (_, Quotient::Indeterminate) => None,
            (Quotient::Infinite, Quotient::Infinite) => Some(Equal),
            (Quotient::Infinite, _) => Some(Greater),
            (_, Quotient::Infinite) => Some(Less),
            (Quotient::Finite(a), Quotient::Finite(b)) => a.partial_cmp(b),
        }
    }

    pub fn max_ext(self, other: Self) -> Self {
        match self.partial_cmp_ext(&other) {
            Some(std::cmp::Ordering::Less) => other,
            _ => self,
        }
    }

    pub fn min_ext(self, other: Self) -> Self {
        match self.partial_cmp_ext(&other) {
            Some(std::cmp::Ordering::Greater) => other,
            _ => self,
        }
    }
}

impl<S: Scalar> fmt::Display for Quotient<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Decimal rendering with 12 significant digits, trailing zeros trimmed.
pub fn decimal_12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else { "inf".into() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).clamp(0, 40) as usize;
    let mut s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}
