//! Exact dyadic rationals `p / 2^q`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};

/// The value `numerator / 2^exponent`, kept exactly.
///
/// The representation is not normalized: `1/2` and `2/4` are different
/// representations of equal values, and equality and ordering compare values.
#[derive(Clone, Debug)]
pub struct DyadicRational {
    numerator: BigInt,
    exponent: u64,
}

impl DyadicRational {
    pub fn new(numerator: impl Into<BigInt>, exponent: u64) -> Self {
        Self { numerator: numerator.into(), exponent }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::new(n, 0)
    }

    /// `numerator * 2^shift` for a possibly negative shift.
    pub fn with_shift(numerator: impl Into<BigInt>, shift: i64) -> Self {
        let n = numerator.into();
        if shift >= 0 {
            Self::new(n << shift as usize, 0)
        } else {
            Self::new(n, shift.unsigned_abs())
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_negative(&self) -> bool {
        self.numerator.is_negative()
    }

    /// Same value with the exponent raised to `exponent` (never lowered).
    fn widened(&self, exponent: u64) -> BigInt {
        debug_assert!(exponent >= self.exponent);
        &self.numerator << (exponent - self.exponent) as usize
    }

    /// Strip common factors of two.
    pub fn normalized(&self) -> Self {
        if self.numerator.is_zero() {
            return Self::integer(0);
        }
        let tz = self.numerator.trailing_zeros().unwrap_or(0).min(self.exponent);
        Self::new(&self.numerator >> tz as usize, self.exponent - tz)
    }

    /// Exact decimal digits, truncated toward zero to at most `max_places`
    /// fractional digits, with trailing fractional zeros removed.
    pub fn decimal_expansion(&self, max_places: u64) -> String {
        let (int_part, frac) = self.decimal_parts();
        let mut frac = frac;
        frac.truncate(max_places.min(frac.len() as u64) as usize);
        let trimmed = frac.trim_end_matches('0');
        let sign = if self.is_negative() && (int_part != "0" || !trimmed.is_empty()) { "-" } else { "" };
        if trimmed.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{trimmed}")
        }
    }

    /// Integer digits and all `exponent` fractional digits of `|self|`,
    /// untrimmed. The expansion is `numerator * 5^exponent` with the decimal
    /// point `exponent` places from the right.
    pub fn decimal_parts(&self) -> (String, String) {
        let q = self.exponent as usize;
        let scaled: BigUint = self.numerator.magnitude() * BigUint::from(5u32).pow(self.exponent as u32);
        let digits = scaled.to_str_radix(10);
        let digits = if digits.len() <= q { format!("{}{}", "0".repeat(q + 1 - digits.len()), digits) } else { digits };
        let (i, f) = digits.split_at(digits.len() - q);
        (i.to_string(), f.to_string())
    }
}

impl PartialEq for DyadicRational {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for DyadicRational {}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        self.widened(e).cmp(&other.widened(e))
    }
}

impl Add for &DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: Self) -> DyadicRational {
        let e = self.exponent.max(rhs.exponent);
        DyadicRational::new(self.widened(e) + rhs.widened(e), e)
    }
}

impl Sub for &DyadicRational {
    type Output = DyadicRational;
    fn sub(self, rhs: Self) -> DyadicRational {
        let e = self.exponent.max(rhs.exponent);
        DyadicRational::new(self.widened(e) - rhs.widened(e), e)
    }
}

impl Mul for &DyadicRational {
    type Output = DyadicRational;
    fn mul(self, rhs: Self) -> DyadicRational {
        DyadicRational::new(&self.numerator * &rhs.numerator, self.exponent + rhs.exponent)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for DyadicRational {
            type Output = DyadicRational;
            fn $m(self, rhs: Self) -> DyadicRational {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.decimal_expansion(self.exponent))
    }
}

impl From<BigUint> for DyadicRational {
    fn from(n: BigUint) -> Self {
        Self::integer(BigInt::from_biguint(Sign::Plus, n))
    }
}
