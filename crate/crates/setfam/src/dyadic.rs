//! Exact arithmetic on dyadic rationals `num / 2^exp`.
//!
//! Weights of families over `[n]` are counts divided by `2^n`, so every
//! quantity this crate cares about is dyadic.  Using exact dyadic
//! arithmetic (rather than floats) means weight comparisons at the edge of
//! a crossover are decided correctly, with no epsilon anywhere.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A rational number whose denominator is a power of two, kept in the
/// canonical form where the numerator is odd or the value is exactly zero
/// (zero is stored as `0 / 2^0`).
///
/// Canonical form makes equality structural: two `DyadicRational`s are
/// numerically equal iff their fields match.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    num: BigInt,
    exp: u32,
}

impl DyadicRational {
    /// Builds `num / 2^exp`, reducing to canonical form.
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        let mut num: BigInt = num.into();
        let mut exp = exp;
        if num.is_zero() {
            return Self { num, exp: 0 };
        }
        if let Some(tz) = num.trailing_zeros() {
            let shift = tz.min(u64::from(exp)) as u32;
            if shift > 0 {
                num >>= shift;
                exp -= shift;
            }
        }
        Self { num, exp }
    }

    /// The value 0.
    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    /// The value 1.
    pub fn one() -> Self {
        Self::new(1, 0)
    }

    /// The integer `i` as a dyadic rational.
    pub fn integer(i: impl Into<BigInt>) -> Self {
        Self::new(i, 0)
    }

    /// The value `1 / 2^exp`.
    pub fn inv_pow2(exp: u32) -> Self {
        Self::new(1, exp)
    }

    /// Numerator of the canonical form (odd unless the value is zero).
    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    /// Exponent of the canonical form: the value is `numerator / 2^exponent`.
    pub fn exponent(&self) -> u32 {
        self.exp
    }

    /// True iff the value is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        Self {
            num: self.num.abs(),
            exp: self.exp,
        }
    }

    /// Exact decimal expansion.  A dyadic rational always terminates in
    /// decimal: `num / 2^e = num * 5^e / 10^e`.
    pub fn to_decimal_string(&self) -> String {
        if self.exp == 0 {
            return self.num.to_string();
        }
        let scaled: BigInt = &self.num * BigInt::from(5u8).pow(self.exp);
        let negative = scaled.is_negative();
        let digits = scaled.abs().to_string();
        let point = self.exp as usize;
        let (int_part, frac_part) = if digits.len() > point {
            let split = digits.len() - point;
            (digits[..split].to_string(), digits[split..].to_string())
        } else {
            ("0".to_string(), format!("{digits:0>point$}"))
        };
        let sign = if negative { "-" } else { "" };
        format!("{sign}{int_part}.{frac_part}")
    }

    /// Nearest `f64`, for display and plotting.  Works for exponents far
    /// beyond `f64` range by discarding bits below the top 64 of the
    /// numerator before converting.
    pub fn to_f64(&self) -> f64 {
        let bits = self.num.bits();
        let drop = bits.saturating_sub(64).min(u64::from(self.exp)) as u32;
        let shift = self.exp - drop;
        if shift > 1100 {
            // The remaining scale alone underflows f64.
            return 0.0;
        }
        let top = (&self.num >> drop)
            .to_f64()
            .unwrap_or(if self.num.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            });
        top / 2f64.powi(shift as i32)
    }

    /// Aligns two values to a common exponent, returning
    /// `(lhs_num, rhs_num, exp)` with `self = lhs_num / 2^exp` and
    /// `other = rhs_num / 2^exp`.
    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let exp = self.exp.max(other.exp);
        let lhs = &self.num << (exp - self.exp);
        let rhs = &other.num << (exp - other.exp);
        (lhs, rhs, exp)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (lhs, rhs, _) = self.aligned(other);
        lhs.cmp(&rhs)
    }
}

impl Add for DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: Self) -> Self::Output {
        &self + &rhs
    }
}

impl Add for &DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: Self) -> Self::Output {
        let (lhs, rhs, exp) = self.aligned(rhs);
        DyadicRational::new(lhs + rhs, exp)
    }
}

impl AddAssign for DyadicRational {
    fn add_assign(&mut self, rhs: Self) {
        *self = &*self + &rhs;
    }
}

impl Sub for DyadicRational {
    type Output = DyadicRational;
    fn sub(self, rhs: Self) -> Self::Output {
        &self - &rhs
    }
}

impl Sub for &DyadicRational {
    type Output = DyadicRational;
    fn sub(self, rhs: Self) -> Self::Output {
        let (lhs, rhs, exp) = self.aligned(rhs);
        DyadicRational::new(lhs - rhs, exp)
    }
}

impl SubAssign for DyadicRational {
    fn sub_assign(&mut self, rhs: Self) {
        *self = &*self - &rhs;
    }
}

impl Neg for DyadicRational {
    type Output = DyadicRational;
    fn neg(self) -> Self::Output {
        DyadicRational {
            num: -self.num,
            exp: self.exp,
        }
    }
}

impl Mul for &DyadicRational {
    type Output = DyadicRational;
    fn mul(self, rhs: Self) -> Self::Output {
        DyadicRational::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Mul for DyadicRational {
    type Output = DyadicRational;
    fn mul(self, rhs: Self) -> Self::Output {
        &self * &rhs
    }
}

impl Mul<i64> for &DyadicRational {
    type Output = DyadicRational;
    fn mul(self, rhs: i64) -> Self::Output {
        DyadicRational::new(&self.num * rhs, self.exp)
    }
}

impl Sum for DyadicRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/2^{}", self.num, self.exp)
        }
    }
}

/// Serialised as `{"num": "<decimal integer>", "exp": <u32>}`.  The
/// numerator travels as a string so that arbitrarily large values survive
/// JSON readers that coerce numbers to floats.
impl Serialize for DyadicRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("DyadicRational", 2)?;
        s.serialize_field("num", &self.num.to_string())?;
        s.serialize_field("exp", &self.exp)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for DyadicRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: String,
            exp: u32,
        }
        let raw = Raw::deserialize(deserializer)?;
        let num: BigInt = raw
            .num
            .parse()
            .map_err(|e| D::Error::custom(format!("bad numerator {:?}: {e}", raw.num)))?;
        Ok(DyadicRational::new(num, raw.exp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_reduces_even_numerators() {
        let x = DyadicRational::new(6, 4);
        assert_eq!(x.numerator(), &BigInt::from(3));
        assert_eq!(x.exponent(), 3);
        assert_eq!(x, DyadicRational::new(3, 3));
    }

    #[test]
    fn zero_normalises_to_exponent_zero() {
        let z = DyadicRational::new(0, 7);
        assert!(z.is_zero());
        assert_eq!(z.exponent(), 0);
        assert_eq!(z, DyadicRational::zero());
    }

    #[test]
    fn odd_numerators_are_left_alone() {
        let x = DyadicRational::new(29, 7);
        assert_eq!(x.numerator(), &BigInt::from(29));
        assert_eq!(x.exponent(), 7);
    }

    #[test]
    fn arithmetic_is_exact() {
        let quarter = DyadicRational::new(1, 2);
        let half = &quarter + &quarter;
        assert_eq!(half, DyadicRational::new(1, 1));

        let w7 = DyadicRational::new(29, 7);
        let eighth = DyadicRational::new(1, 3);
        assert_eq!(&w7 - &eighth, DyadicRational::new(13, 7));

        let product = &w7 * &eighth;
        assert_eq!(product, DyadicRational::new(29, 10));

        let scaled = &eighth * 6i64;
        assert_eq!(scaled, DyadicRational::new(3, 2));
    }

    #[test]
    fn ordering_matches_rational_order() {
        // 29/128 > 51/256 > 397/2048
        let a = DyadicRational::new(29, 7);
        let b = DyadicRational::new(51, 8);
        let c = DyadicRational::new(397, 11);
        assert!(a > b);
        assert!(b > c);
        assert!(a > c);
        assert!(DyadicRational::zero() < c);
        assert!(-a.clone() < DyadicRational::zero());
    }

    #[test]
    fn decimal_expansion_is_exact() {
        assert_eq!(DyadicRational::new(29, 7).to_decimal_string(), "0.2265625");
        assert_eq!(DyadicRational::new(3, 3).to_decimal_string(), "0.375");
        assert_eq!(DyadicRational::new(5, 1).to_decimal_string(), "2.5");
        assert_eq!(DyadicRational::new(-3, 3).to_decimal_string(), "-0.375");
        assert_eq!(DyadicRational::integer(17).to_decimal_string(), "17");
        assert_eq!(DyadicRational::zero().to_decimal_string(), "0");
        assert_eq!(
            DyadicRational::new(1, 20).to_decimal_string(),
            "0.00000095367431640625"
        );
    }

    #[test]
    fn f64_conversion_is_close_at_any_scale() {
        assert_eq!(DyadicRational::new(1, 3).to_f64(), 0.125);
        assert_eq!(DyadicRational::new(29, 7).to_f64(), 0.2265625);
        assert_eq!(DyadicRational::new(-3, 2).to_f64(), -0.75);
        // Huge exponent, value just below 1/4: (2^999 - 1) / 2^1001.
        let near_quarter = DyadicRational::new((BigInt::from(1) << 999) - 1, 1001);
        let approx = near_quarter.to_f64();
        assert!((approx - 0.25).abs() < 1e-12, "{approx}");
        // Tiny value underflows cleanly instead of panicking.
        assert_eq!(DyadicRational::inv_pow2(4000).to_f64(), 0.0);
    }

    #[test]
    fn display_shows_power_of_two_denominator() {
        assert_eq!(DyadicRational::new(29, 7).to_string(), "29/2^7");
        assert_eq!(DyadicRational::integer(5).to_string(), "5");
        assert_eq!(DyadicRational::zero().to_string(), "0");
    }

    #[test]
    fn serde_round_trips_via_decimal_string_numerator() {
        let x = DyadicRational::new(397, 11);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"num":"397","exp":11}"#);
        let back: DyadicRational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);

        // Non-canonical input is normalised on load.
        let y: DyadicRational = serde_json::from_str(r#"{"num":"6","exp":4}"#).unwrap();
        assert_eq!(y, DyadicRational::new(3, 3));
    }

    #[test]
    fn sum_folds_exactly() {
        let total: DyadicRational = (1..=4).map(DyadicRational::inv_pow2).sum();
        assert_eq!(total, DyadicRational::new(15, 4));
    }
}
