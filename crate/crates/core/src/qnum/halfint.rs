//! Exact half-integer spins, stored as doubled integers.
//!
//! Every selection rule in the recoupling layer is an integer predicate on
//! these, so they must never pass through floating point.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{QError, QResult};

/// A half-integer `twice/2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfInt {
    twice: i64,
}

pub const ZERO: HalfInt = HalfInt { twice: 0 };
pub const HALF: HalfInt = HalfInt { twice: 1 };
pub const ONE: HalfInt = HalfInt { twice: 2 };

impl HalfInt {
    /// Construct from the doubled value (`from_twice(3)` is `3/2`).
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The value as an exact integer; fails on genuine half-odd values.
    pub fn as_int(self) -> QResult<i64> {
        if self.is_integer() {
            Ok(self.twice / 2)
        } else {
            Err(QError::Domain(format!("{self} is not an integer")))
        }
    }

    pub fn as_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    pub fn is_negative(self) -> bool {
        self.twice < 0
    }

    /// `(-1)^self`; fails on half-odd values.
    pub fn neg_one_pow(self) -> QResult<f64> {
        Ok(if self.as_int()? % 2 == 0 { 1.0 } else { -1.0 })
    }

    /// Nearest half-integer to `x` if within `tol`, else an error.
    pub fn try_from_f64(x: f64, tol: f64) -> QResult<Self> {
        let t = (2.0 * x).round();
        if (2.0 * x - t).abs() <= 2.0 * tol && t.abs() < 9e15 {
            Ok(HalfInt { twice: t as i64 })
        } else {
            Err(QError::NotHalfInteger(format!("{x}")))
        }
    }

    /// Inclusive range `self..=hi` in integer steps.
    pub fn steps_to(self, hi: HalfInt) -> impl Iterator<Item = HalfInt> {
        (0..=((hi.twice - self.twice).max(-2) / 2)).map(move |k| HalfInt::from_twice(self.twice + 2 * k))
    }
}

/// Triangle rule `Y^0`: all of `a+b-c`, `b+c-a`, `c+a-b` non-negative integers.
pub fn y0(a: HalfInt, b: HalfInt, c: HalfInt) -> bool {
    let (ta, tb, tc) = (a.twice, b.twice, c.twice);
    (ta + tb + tc) % 2 == 0 && ta + tb >= tc && tb + tc >= ta && tc + ta >= tb
}

/// Weight rule `Y^1`: both `i+m` and `i-m` non-negative integers.
pub fn y1(i: HalfInt, m: HalfInt) -> bool {
    (i.twice + m.twice) % 2 == 0 && i.twice >= m.twice.abs()
}

/// Spins `c` compatible with the triangle rule for `(a, b, c)`.
pub fn triangle_range(a: HalfInt, b: HalfInt) -> impl Iterator<Item = HalfInt> {
    let lo = (a.twice - b.twice).abs();
    let hi = a.twice + b.twice;
    (0..=((hi - lo) / 2)).map(move |k| HalfInt::from_twice(lo + 2 * k))
}

/// Weights `m` with `Y^1(i, m) = 1`, i.e. `m = -i, -i+1, ..., i`.
pub fn weight_range(i: HalfInt) -> impl Iterator<Item = HalfInt> {
    (0..=i.twice).map(move |k| HalfInt::from_twice(-i.twice + 2 * k))
}

/// All spins `0, 1/2, 1, ..., max`.
pub fn spins_up_to(max: HalfInt) -> impl Iterator<Item = HalfInt> {
    (0..=max.twice).map(HalfInt::from_twice)
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + o.twice }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - o.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, o: HalfInt) {
        self.twice += o.twice;
    }
}

impl SubAssign for HalfInt {
    fn sub_assign(&mut self, o: HalfInt) {
        self.twice -= o.twice;
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for HalfInt {
    type Err = QError;

    /// Accepts `2`, `-3/2`, `1.5`.
    fn from_str(s: &str) -> QResult<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n: i64 = num.trim().parse().map_err(|_| QError::Domain(format!("bad spin {s}")))?;
            let d: i64 = den.trim().parse().map_err(|_| QError::Domain(format!("bad spin {s}")))?;
            return match d {
                1 => Ok(HalfInt::from_int(n)),
                2 => Ok(HalfInt::from_twice(n)),
                _ => Err(QError::Domain(format!("spin denominator must be 1 or 2: {s}"))),
            };
        }
        if let Ok(n) = s.parse::<i64>() {
            return Ok(HalfInt::from_int(n));
        }
        let x: f64 = s.parse().map_err(|_| QError::Domain(format!("bad spin {s}")))?;
        HalfInt::try_from_f64(x, 1e-9)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_rules() {
        let h = |t| HalfInt::from_twice(t);
        assert!(y0(h(2), h(2), h(4)));
        assert!(!y0(h(2), h(2), h(6)));
        assert!(y0(h(1), h(1), h(2)));
        assert!(!y0(h(1), h(1), h(1))); // parity
        assert!(y1(h(2), h(-2)));
        assert!(!y1(h(2), h(3)));
    }

    #[test]
    fn ranges() {
        let h = |t| HalfInt::from_twice(t);
        let r: Vec<_> = triangle_range(h(1), h(2)).collect();
        assert_eq!(r, vec![h(1), h(3)]);
        assert_eq!(weight_range(h(3)).count(), 4);
        let s: Vec<_> = spins_up_to(h(2)).collect();
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn parsing() {
        assert_eq!("3/2".parse::<HalfInt>().unwrap().twice(), 3);
        assert_eq!("-2".parse::<HalfInt>().unwrap().twice(), -4);
        assert_eq!("1.5".parse::<HalfInt>().unwrap().twice(), 3);
        assert!("0.3".parse::<HalfInt>().is_err());
    }
}
