//! Exact half-integer arithmetic.
//!
//! Vertex curvature carries a `3/2 · deg` term, so every curvature sum lives
//! in `Z/2`. Storing twice the value keeps addition exact.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Serialize, Serializer};

/// A rational number with denominator 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub const ZERO: HalfInteger = HalfInteger { twice: 0 };

    pub const fn from_int(n: i64) -> Self {
        HalfInteger { twice: 2 * n }
    }

    /// The value `halves / 2`.
    pub const fn from_halves(halves: i64) -> Self {
        HalfInteger { twice: halves }
    }

    pub const fn twice_value(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// Decimal rendering: integers plain, halves with one fractional digit.
    pub fn to_decimal_string(self) -> String {
        if self.is_integer() {
            return (self.twice / 2).to_string();
        }
        let sign = if self.twice < 0 { "-" } else { "" };
        format!("{sign}{}.5", self.twice.unsigned_abs() / 2)
    }
}

impl From<i64> for HalfInteger {
    fn from(n: i64) -> Self {
        HalfInteger::from_int(n)
    }
}

/// Exact rendering: `n` for integers, `n/2` otherwise.
impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Integers serialize as JSON numbers, proper halves as exact strings `"n/2"`.
impl Serialize for HalfInteger {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.to_integer() {
            Some(n) => serializer.serialize_i64(n),
            None => serializer.serialize_str(&self.to_string()),
        }
    }
}

impl Add for HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: Self) -> Self {
        HalfInteger { twice: self.twice + rhs.twice }
    }
}

impl Add<i64> for HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: i64) -> Self {
        self + HalfInteger::from_int(rhs)
    }
}

impl Sub for HalfInteger {
    type Output = HalfInteger;
    fn sub(self, rhs: Self) -> Self {
        HalfInteger { twice: self.twice - rhs.twice }
    }
}

impl Sub<i64> for HalfInteger {
    type Output = HalfInteger;
    fn sub(self, rhs: i64) -> Self {
        self - HalfInteger::from_int(rhs)
    }
}

impl Mul<i64> for HalfInteger {
    type Output = HalfInteger;
    fn mul(self, rhs: i64) -> Self {
        HalfInteger { twice: self.twice * rhs }
    }
}

impl Neg for HalfInteger {
    type Output = HalfInteger;
    fn neg(self) -> Self {
        HalfInteger { twice: -self.twice }
    }
}

impl AddAssign for HalfInteger {
    fn add_assign(&mut self, rhs: Self) {
        self.twice += rhs.twice;
    }
}

impl SubAssign for HalfInteger {
    fn sub_assign(&mut self, rhs: Self) {
        self.twice -= rhs.twice;
    }
}

impl Sum for HalfInteger {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(HalfInteger::ZERO, Add::add)
    }
}

impl<'a> Sum<&'a HalfInteger> for HalfInteger {
    fn sum<I: Iterator<Item = &'a Self>>(iter: I) -> Self {
        iter.copied().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_forms() {
        assert_eq!(HalfInteger::from_halves(31).to_string(), "31/2");
        assert_eq!(HalfInteger::from_halves(-1).to_string(), "-1/2");
        assert_eq!(HalfInteger::from_int(-14).to_string(), "-14");
        assert_eq!(HalfInteger::from_halves(3).to_decimal_string(), "1.5");
        assert_eq!(HalfInteger::from_halves(-7).to_decimal_string(), "-3.5");
        assert_eq!(HalfInteger::from_halves(-1).to_decimal_string(), "-0.5");
        assert_eq!(HalfInteger::from_int(3).to_decimal_string(), "3");
    }

    #[test]
    fn json_is_exact() {
        let v = vec![HalfInteger::from_halves(5), HalfInteger::from_int(2)];
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["5/2",2]"#);
    }

    proptest! {
        #[test]
        fn arithmetic_matches_rationals(a in -10_000i64..10_000, b in -10_000i64..10_000, k in -50i64..50) {
            let (x, y) = (HalfInteger::from_halves(a), HalfInteger::from_halves(b));
            prop_assert_eq!((x + y).to_f64(), x.to_f64() + y.to_f64());
            prop_assert_eq!((x - y).to_f64(), x.to_f64() - y.to_f64());
            prop_assert_eq!((x * k).to_f64(), x.to_f64() * k as f64);
            prop_assert_eq!(x + (-x), HalfInteger::ZERO);
            prop_assert_eq!((x + x).is_integer(), true);
        }
    }
}
