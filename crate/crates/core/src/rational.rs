//! Exact rational arithmetic on i128 backing.
//!
//! Every value is kept reduced with a positive denominator, so equality and
//! hashing are structural. The magnitudes in this crate stay far below the
//! i128 range (group orders up to ~10^5, intersection numbers smaller), but
//! arithmetic still reduces by cross gcd before multiplying to keep headroom.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// A rational number in lowest terms, denominator always positive.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

impl Rational {
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "rational with zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd_i128(num, den).max(1);
        Rational { num: sign * num / g, den: sign * den / g }
    }

    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn from_integer(n: i128) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn numer(&self) -> i128 {
        self.num
    }

    pub fn denom(&self) -> i128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// The exact integer value, if the denominator is 1.
    pub fn to_integer(&self) -> Option<i128> {
        self.is_integer().then_some(self.num)
    }

    pub fn abs(&self) -> Self {
        Rational { num: self.num.abs(), den: self.den }
    }

    pub fn recip(&self) -> Self {
        assert!(self.num != 0, "reciprocal of zero");
        Rational::new(self.den, self.num)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n as i128)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        let g = gcd_i128(self.den, rhs.den);
        let lhs_scale = rhs.den / g;
        let rhs_scale = self.den / g;
        Rational::new(self.num * lhs_scale + rhs.num * rhs_scale, self.den * lhs_scale)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self + (-rhs)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        let g1 = gcd_i128(self.num, rhs.den).max(1);
        let g2 = gcd_i128(rhs.num, self.den).max(1);
        Rational { num: (self.num / g1) * (rhs.num / g2), den: (self.den / g2) * (rhs.den / g1) }
    }
}

impl Div for Rational {
    type Output = Rational;
    #[allow(clippy::suspicious_arithmetic_impl)] // division is multiplication by the reciprocal
    fn div(self, rhs: Rational) -> Rational {
        self * rhs.recip()
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { num: -self.num, den: self.den }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: i128 = num.trim().parse().map_err(|e| format!("{e}"))?;
        let den: i128 = den.trim().parse().map_err(|e| format!("{e}"))?;
        if den <= 0 {
            return Err(format!("denominator must be positive, got {den}"));
        }
        Ok(Rational::new(num, den))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(1, -2), q(-1, 2));
        assert_eq!(q(-3, -9), q(1, 3));
        assert_eq!(q(0, -7), Rational::ZERO);
    }

    #[test]
    fn arithmetic() {
        assert_eq!(q(1, 3) + q(1, 6), q(1, 2));
        assert_eq!(q(-7, 3) - q(2, 3) - Rational::ONE, q(-4, 1));
        assert_eq!(q(-1, 6) * Rational::from_integer(4), q(-2, 3));
        assert_eq!(q(2, 3) / q(1, 3), Rational::from_integer(2));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(q(-7, 3).to_string(), "-7/3");
        assert_eq!(q(4, 2).to_string(), "2");
        assert_eq!("-7/3".parse::<Rational>().unwrap(), q(-7, 3));
        assert_eq!("-4".parse::<Rational>().unwrap(), q(-4, 1));
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn ordering() {
        assert!(q(-1, 2) < q(-1, 3));
        assert!(q(5, 3) > q(3, 2));
    }

    proptest! {
        #[test]
        fn add_sub_round_trip(a in -10_000i64..10_000, b in 1i64..500, c in -10_000i64..10_000, d in 1i64..500) {
            let x = q(a as i128, b as i128);
            let y = q(c as i128, d as i128);
            prop_assert_eq!(x + y - y, x);
        }

        #[test]
        fn mul_div_round_trip(a in -10_000i64..10_000, b in 1i64..500, c in -10_000i64..10_000, d in 1i64..500) {
            prop_assume!(c != 0);
            let x = q(a as i128, b as i128);
            let y = q(c as i128, d as i128);
            prop_assert_eq!(x * y / y, x);
        }

        #[test]
        fn parse_round_trip(a in -100_000i64..100_000, b in 1i64..10_000) {
            let x = q(a as i128, b as i128);
            prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }
    }
}
