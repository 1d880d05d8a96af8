//! Exact scalars: arbitrary-precision rationals or residues modulo a prime.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("modulus {0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("field specification {0:?} is not `q` or `fp:P`")]
    FieldSpec(String),
    #[error("mixed scalar fields: {0} and {1}")]
    Mixed(Field, Field),
    #[error("division by zero")]
    DivisionByZero,
}

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if p < 2 || p >= 1 << 32 || !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldElement {
        match self {
            Field::Rational => FieldElement::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => FieldElement::Prime {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `(-1)^exponent` as a field element.
    pub fn sign(self, exponent: i64) -> FieldElement {
        if exponent.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.from_i64(-1)
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn parse_element(self, s: &str) -> Result<FieldElement, ScalarError> {
        let s = s.trim();
        let err = || ScalarError::Parse(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num = BigInt::from_str(num).map_err(|_| err())?;
        let den = match den {
            Some(d) => BigInt::from_str(d).map_err(|_| err())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(err());
        }
        match self {
            Field::Rational => Ok(FieldElement::Rational(BigRational::new(num, den))),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |x: &BigInt| x.mod_floor(&pb).to_u64().expect("residue fits");
                let n = FieldElement::Prime {
                    value: reduce(&num),
                    modulus: p,
                };
                let d = FieldElement::Prime {
                    value: reduce(&den),
                    modulus: p,
                };
                let inv = d.inverse().ok_or_else(err)?;
                Ok(n * inv)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(Field::Rational);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p.parse().map_err(|_| ScalarError::FieldSpec(s.to_string()))?;
            return Field::prime(p);
        }
        Err(ScalarError::FieldSpec(s.to_string()))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact scalar. Rationals are kept in lowest terms with a positive
/// denominator; residues are kept in `[0, modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Rational,
            FieldElement::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Prime { value, .. } => *value == 1,
        }
    }

    pub fn inverse(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElement::Rational(r) => FieldElement::Rational(r.recip()),
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<FieldElement, ScalarError> {
        let inv = rhs.inverse().ok_or(ScalarError::DivisionByZero)?;
        Ok(self * &inv)
    }

    /// Negates in place of a Koszul sign: returns `-self` when `odd`.
    pub fn signed(self, odd: bool) -> FieldElement {
        if odd {
            -self
        } else {
            self
        }
    }

    /// Integer value when the element is one (rationals with denominator 1,
    /// residues as their representative in `(-p/2, p/2]`).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            FieldElement::Rational(r) if r.is_integer() => r.to_integer().to_i64(),
            FieldElement::Rational(_) => None,
            FieldElement::Prime { value, modulus } => {
                let v = *value as i64;
                let p = *modulus as i64;
                Some(if v > p / 2 { v - p } else { v })
            }
        }
    }

    /// Bit-length of numerator plus denominator; used as a pivot size.
    pub fn size(&self) -> u64 {
        match self {
            FieldElement::Rational(r) => r.numer().bits() + r.denom().bits(),
            FieldElement::Prime { .. } => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_negative(),
            FieldElement::Prime { .. } => false,
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

fn mixed(a: &FieldElement, b: &FieldElement) -> ! {
    panic!("{}", ScalarError::Mixed(a.field(), b.field()))
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (
                FieldElement::Prime { value: a, modulus: p },
                FieldElement::Prime { value: b, modulus: q },
            ) if p == q => FieldElement::Prime {
                value: (a + b) % p,
                modulus: *p,
            },
            _ => mixed(self, rhs),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a - b),
            (
                FieldElement::Prime { value: a, modulus: p },
                FieldElement::Prime { value: b, modulus: q },
            ) if p == q => FieldElement::Prime {
                value: (a + p - b) % p,
                modulus: *p,
            },
            _ => mixed(self, rhs),
        }
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (
                FieldElement::Prime { value: a, modulus: p },
                FieldElement::Prime { value: b, modulus: q },
            ) if p == q => FieldElement::Prime {
                value: a * b % p,
                modulus: *p,
            },
            _ => mixed(self, rhs),
        }
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;

    /// Panics on division by zero; use [`FieldElement::checked_div`] otherwise.
    fn div(self, rhs: &'a FieldElement) -> FieldElement {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Prime { value, modulus } => FieldElement::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            other => -&other,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        match (&mut *self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => *a += b,
            _ => *self = &*self + rhs,
        }
    }
}

impl AddAssign<FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: FieldElement) {
        *self += &rhs;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        match (&mut *self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => *a -= b,
            _ => *self = &*self - rhs,
        }
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}

/// Serializes any displayable value as its string form.
pub fn serialize_display<S: serde::Serializer, T: fmt::Display>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> FieldElement {
        Field::Rational.parse_element(s).unwrap()
    }

    #[test]
    fn rationals_are_canonical() {
        let a = q("6/-4");
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!(q("4/2").to_string(), "2");
        assert_eq!(q("0/7").to_string(), "0");
    }

    #[test]
    fn cross_multiplication_matches() {
        for (a, b, c, d) in [(1i64, 2i64, 1i64, 3i64), (-5, 7, 3, 14), (2, 9, -2, 9)] {
            let lhs = q(&format!("{a}/{b}")) + q(&format!("{c}/{d}"));
            let rhs = q(&format!("{}/{}", a * d + b * c, b * d));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        let inv = a.inverse().unwrap();
        assert_eq!((&a * &inv), f.one());
        assert_eq!(f.parse_element("1/2").unwrap(), f.from_i64(4));
        assert_eq!((-f.from_i64(1)).to_string(), "6");
        assert_eq!(f.from_i64(-1).to_i64(), Some(-1));
    }

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("fp:13".parse::<Field>().unwrap(), Field::Prime(13));
        assert!("fp:12".parse::<Field>().is_err());
        assert!("r".parse::<Field>().is_err());
    }

    #[test]
    #[should_panic(expected = "mixed scalar fields")]
    fn mixing_moduli_panics() {
        let _ = Field::Prime(5).one() + Field::Prime(7).one();
    }
}
