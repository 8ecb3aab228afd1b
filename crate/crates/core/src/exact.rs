//! Exact scalars: rationals and numbers of the form `a + b·√d` with
//! `d ∈ {1, 2, 3}`.
//!
//! Every coordinate and size handled by the packers lives in one of these
//! fields, so all predicates (containment, overlap, case conditions) are
//! decided without rounding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivideByZero,
    #[error("radicand mismatch: √{0} vs √{1}")]
    RadicandMismatch(u8, u8),
    #[error("unsupported radicand {0} (expected 1, 2 or 3)")]
    BadRadicand(i64),
    #[error("malformed rational {0:?}")]
    BadRational(String),
}

/// Builds `p/q`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical string form: `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"`, `"p/q"` or a plain decimal such as `"0.51"`.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let bad = || ArithError::BadRational(s.to_string());
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int_part = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_part = BigInt::from_str(frac).map_err(|_| bad())?;
        let mag = int_part.abs() * &scale + frac_part;
        let num = if neg { -mag } else { mag };
        return Ok(Rational::new(num, scale));
    }
    BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad())
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Extremely large numerators/denominators: scale both down first.
        let n = r.numer().bits() as i64;
        let d = r.denom().bits() as i64;
        let shift = (n.max(d) - 1000).max(0) as u64;
        let num = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let den = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        num / den
    })
}

/// A number `a + b·√d`.
///
/// Stored canonically: whenever `b == 0` the radicand is 1, so two values
/// compare equal exactly when they denote the same real number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: u8,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: u8) -> Result<Self, ArithError> {
        if !matches!(d, 1..=3) {
            return Err(ArithError::BadRadicand(d as i64));
        }
        if d == 1 {
            return Ok(Self::rational(a + b));
        }
        Ok(Self { a, b, d }.normalized())
    }

    pub fn rational(a: Rational) -> Self {
        Self { a, b: Rational::zero(), d: 1 }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn frac(p: i64, q: i64) -> Self {
        Self::rational(ratio(p, q))
    }

    /// `(p/q)·√d`.
    pub fn surd(p: i64, q: i64, d: u8) -> Self {
        Self::new(Rational::zero(), ratio(p, q), d).expect("radicand in 1..=3")
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u8 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.d = 1;
        }
        self
    }

    fn common_radicand(&self, other: &Self) -> Result<u8, ArithError> {
        match (self.d, other.d) {
            (1, d) | (d, 1) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(ArithError::RadicandMismatch(x, y)),
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, ArithError> {
        let d = self.common_radicand(rhs)?;
        Ok(Self { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d }.normalized())
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, ArithError> {
        let d = self.common_radicand(rhs)?;
        Ok(Self { a: &self.a - &rhs.a, b: &self.b - &rhs.b, d }.normalized())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, ArithError> {
        let d = self.common_radicand(rhs)?;
        if self.is_rational() {
            return Ok(Self { a: &self.a * &rhs.a, b: &self.a * &rhs.b, d }.normalized());
        }
        if rhs.is_rational() {
            return Ok(Self { a: &self.a * &rhs.a, b: &self.b * &rhs.a, d }.normalized());
        }
        let dr = Rational::from_integer(BigInt::from(d));
        let a = &self.a * &rhs.a + dr * (&self.b * &rhs.b);
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Ok(Self { a, b, d }.normalized())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        let d = self.common_radicand(rhs)?;
        if rhs.is_zero() {
            return Err(ArithError::DivideByZero);
        }
        if let Some(r) = rhs.as_rational() {
            return Ok(Self { a: &self.a / r, b: &self.b / r, d }.normalized());
        }
        if rhs.a.is_zero() {
            // (a + b√d) / (q√d) = b/q + a/(q d) √d
            let qd = &rhs.b * Rational::from_integer(BigInt::from(d));
            return Ok(Self { a: &self.b / &rhs.b, b: &self.a / qd, d }.normalized());
        }
        // x / (p + q√d) = x (p − q√d) / (p² − d q²)
        let conj = Self { a: rhs.a.clone(), b: -rhs.b.clone(), d };
        let norm = &rhs.a * &rhs.a - Rational::from_integer(BigInt::from(d)) * (&rhs.b * &rhs.b);
        let num = self.checked_mul(&conj)?;
        Ok(Self { a: num.a / &norm, b: num.b / &norm, d }.normalized())
    }

    /// Exact sign of `a + b√d` as -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        // Opposite signs: the larger of a² and d·b² wins.
        let a2 = &self.a * &self.a;
        let db2 = Rational::from_integer(BigInt::from(self.d)) * (&self.b * &self.b);
        match a2.cmp(&db2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn half(&self) -> Self {
        let two = ratio(1, 2);
        Self { a: &self.a * &two, b: &self.b * &two, d: self.d }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { a: &self.a * r, b: &self.b * r, d: self.d }.normalized()
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, ArithError> {
        if self.d != other.d && !self.b.is_zero() && !other.b.is_zero() {
            return Err(ArithError::RadicandMismatch(self.d, other.d));
        }
        if let Some(ord) = self.float_cmp(other) {
            return Ok(ord);
        }
        Ok(self.checked_sub(other)?.signum().cmp(&0))
    }

    /// Decides a comparison in floating point when the gap is far above
    /// the rounding error; `None` means the exact path is needed.
    fn float_cmp(&self, other: &Self) -> Option<Ordering> {
        let parts = |q: &Self| {
            let a = rational_to_f64(&q.a);
            let b = rational_to_f64(&q.b) * f64::from(q.d).sqrt();
            (a + b, a.abs() + b.abs())
        };
        let (x, mx) = parts(self);
        let (y, my) = parts(other);
        let gap = x - y;
        let margin = 1e-12 * (mx + my) + f64::MIN_POSITIVE;
        if !gap.is_finite() || !margin.is_finite() || gap.abs() <= margin {
            return None;
        }
        Some(if gap > 0.0 { Ordering::Greater } else { Ordering::Less })
    }

    pub fn min_of<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max_of<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Floating-point approximation, for display only.
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * f64::from(self.d).sqrt()
    }
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

/// Panics on mixed radicands; use [`QuadExt::try_cmp`] for a fallible
/// comparison.
impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.try_cmp(other).expect("comparison of incompatible radicands")
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}: {}", stringify!($method), e),
                }
            }
        }
        impl $trait<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a.clone(), b: -self.b.clone(), d: self.d }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", format_rational(&self.a));
        }
        let b = if self.b.is_negative() { -self.b.clone() } else { self.b.clone() };
        let coeff = if b.is_one() { String::new() } else { format_rational(&b) };
        if self.a.is_zero() {
            let minus = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{minus}{coeff}√{}", self.d)
        } else {
            let op = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{} {op} {coeff}√{}", format_rational(&self.a), self.d)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadExt({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct QuadExtRepr {
    a: String,
    b: String,
    d: i64,
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        QuadExtRepr {
            a: format_rational(&self.a),
            b: format_rational(&self.b),
            d: i64::from(self.d),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = QuadExtRepr::deserialize(deserializer)?;
        let a = parse_rational(&repr.a).map_err(D::Error::custom)?;
        let b = parse_rational(&repr.b).map_err(D::Error::custom)?;
        if !(1..=3).contains(&repr.d) {
            return Err(D::Error::custom(ArithError::BadRadicand(repr.d)));
        }
        let d = repr.d as u8;
        if d == 1 && !b.is_zero() {
            return Err(D::Error::custom("d = 1 requires b = 0"));
        }
        QuadExt::new(a, b, d).map_err(D::Error::custom)
    }
}

/// `√3`, `√3/2` and friends used throughout the equilateral constructions.
pub mod consts {
    use super::QuadExt;

    pub fn sqrt2() -> QuadExt {
        QuadExt::surd(1, 1, 2)
    }

    pub fn sqrt3() -> QuadExt {
        QuadExt::surd(1, 1, 3)
    }

    /// Height of a unit equilateral triangle.
    pub fn half_sqrt3() -> QuadExt {
        QuadExt::surd(1, 2, 3)
    }

    /// `√3/3 = 1/√3`.
    pub fn inv_sqrt3() -> QuadExt {
        QuadExt::surd(1, 3, 3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: (i64, i64), b: (i64, i64), d: u8) -> QuadExt {
        QuadExt::new(ratio(a.0, a.1), ratio(b.0, b.1), d).unwrap()
    }

    #[test]
    fn componentwise_addition() {
        let x = q((1, 1), (2, 1), 3);
        let y = q((3, 1), (-1, 1), 3);
        assert_eq!(x + y, q((4, 1), (1, 1), 3));
    }

    #[test]
    fn conjugate_product_is_rational() {
        let x = q((5, 7), (3, 2), 3);
        let y = q((5, 7), (-3, 2), 3);
        let p = x * y;
        assert!(p.is_rational());
        assert_eq!(p, QuadExt::rational(ratio(25, 49) - ratio(27, 4)));
    }

    #[test]
    fn square_of_one_plus_sqrt3() {
        let x = q((1, 1), (1, 1), 3);
        assert_eq!(&x * &x, q((4, 1), (2, 1), 3));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(q((7, 1), (-4, 1), 3).signum(), 1);
        assert_eq!(QuadExt::zero().signum(), 0);
        assert_eq!(q((5, 1), (-3, 1), 3).signum(), -1);
        assert_eq!(q((-5, 1), (3, 1), 3).signum(), 1);
        assert_eq!(q((0, 1), (-1, 9), 2).signum(), -1);
    }

    #[test]
    fn division_and_errors() {
        let x = q((2, 1), (1, 1), 3);
        assert_eq!(&x / &x, QuadExt::one());
        assert_eq!(x.checked_div(&QuadExt::zero()), Err(ArithError::DivideByZero));
        let y = q((0, 1), (1, 1), 2);
        assert_eq!(x.checked_add(&y), Err(ArithError::RadicandMismatch(3, 2)));
        // Rationals coerce into either field.
        assert_eq!((QuadExt::frac(1, 2) + &y).radicand(), 2);
    }

    #[test]
    fn rational_collapse() {
        let x = q((1, 1), (1, 1), 3);
        let y = q((1, 1), (-1, 1), 3);
        let s = x.clone() + y;
        assert_eq!(s.radicand(), 1);
        assert_eq!(s, QuadExt::int(2));
        assert_eq!(QuadExt::new(ratio(1, 1), ratio(0, 1), 2).unwrap().radicand(), 1);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("0.51").unwrap(), ratio(51, 100));
        assert_eq!(parse_rational("-1.5").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), ratio(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&ratio(3, 1)), "3");
        assert_eq!(format_rational(&ratio(-2, 6)), "-1/3");
    }

    #[test]
    fn json_shape() {
        let x = q((1, 2), (-3, 4), 3);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"a":"1/2","b":"-3/4","d":3}"#);
        assert_eq!(serde_json::from_str::<QuadExt>(&s).unwrap(), x);
        assert!(serde_json::from_str::<QuadExt>(r#"{"a":"1","b":"1","d":1}"#).is_err());
        assert!(serde_json::from_str::<QuadExt>(r#"{"a":"1","b":"1","d":5}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(q((3, 5), (-2, 25), 3).to_string(), "3/5 - 2/25√3");
        assert_eq!(consts::sqrt3().to_string(), "√3");
        assert_eq!(QuadExt::frac(1, 2).to_string(), "1/2");
    }
}
