//! Exact dyadic rationals `m / 2^e`.
//!
//! Weight functions only ever divide by powers of two, so every weight is
//! representable exactly. Values are kept normalized: the numerator is odd
//! unless the exponent is zero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Dyadic {
    numerator: i128,
    exponent: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { numerator: 0, exponent: 0 };
    pub const ONE: Dyadic = Dyadic { numerator: 1, exponent: 0 };

    pub fn new(numerator: i128, exponent: u32) -> Self {
        Dyadic { numerator, exponent }.normalized()
    }

    pub fn integer(value: i128) -> Self {
        Dyadic { numerator: value, exponent: 0 }
    }

    /// `count / 2^distance`.
    pub fn halved(count: i128, distance: u32) -> Self {
        Self::new(count, distance)
    }

    pub fn numerator(&self) -> i128 {
        self.numerator
    }

    pub fn denominator(&self) -> i128 {
        1i128 << self.exponent
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn floor(&self) -> i128 {
        self.numerator >> self.exponent
    }

    pub fn is_negative(&self) -> bool {
        self.numerator < 0
    }

    fn normalized(mut self) -> Self {
        if self.numerator == 0 {
            self.exponent = 0;
            return self;
        }
        let tz = self.numerator.trailing_zeros().min(self.exponent);
        self.numerator >>= tz;
        self.exponent -= tz;
        self
    }

    fn aligned(a: Dyadic, b: Dyadic) -> (i128, i128, u32) {
        let e = a.exponent.max(b.exponent);
        (a.numerator << (e - a.exponent), b.numerator << (e - b.exponent), e)
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Dyadic::integer(v as i128)
    }
}

impl From<u32> for Dyadic {
    fn from(v: u32) -> Self {
        Dyadic::integer(v as i128)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let (a, b, e) = Dyadic::aligned(self, rhs);
        Dyadic::new(a + b, e)
    }
}

impl AddAssign for Dyadic {
    fn add_assign(&mut self, rhs: Dyadic) {
        *self = *self + rhs;
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { numerator: -self.numerator, exponent: self.exponent }
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::ZERO, |acc, x| acc + x)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Dyadic::aligned(*self, *other);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator())
        }
    }
}

impl FromStr for Dyadic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: i128 = num.parse().map_err(|e| format!("bad numerator {num:?}: {e}"))?;
        let den: i128 = den.parse().map_err(|e| format!("bad denominator {den:?}: {e}"))?;
        if den <= 0 || den.count_ones() != 1 {
            return Err(format!("denominator {den} is not a positive power of two"));
        }
        Ok(Dyadic::new(num, den.trailing_zeros()))
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
