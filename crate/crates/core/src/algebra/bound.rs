use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision natural number returned by every bound function.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BoundValue(pub BigUint);

impl BoundValue {
    pub fn zero() -> Self {
        BoundValue(BigUint::zero())
    }

    pub fn one() -> Self {
        BoundValue(BigUint::one())
    }

    pub fn pow(&self, e: u32) -> Self {
        BoundValue(self.0.pow(e))
    }

    pub fn pow2(e: u64) -> Self {
        BoundValue(BigUint::one() << e)
    }

    /// `self - other`, or `None` when negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        (self.0 >= other.0).then(|| BoundValue(&self.0 - &other.0))
    }

    pub fn ceil_half(&self) -> Self {
        BoundValue((&self.0 + 1u32) >> 1)
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Number of decimal digits.
    pub fn digits(&self) -> usize {
        self.0.to_str_radix(10).len()
    }
}

impl From<u64> for BoundValue {
    fn from(n: u64) -> Self {
        BoundValue(BigUint::from(n))
    }
}

impl From<BigUint> for BoundValue {
    fn from(n: BigUint) -> Self {
        BoundValue(n)
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for BoundValue {
    type Output = BoundValue;
    fn add(self, rhs: BoundValue) -> BoundValue {
        BoundValue(self.0 + rhs.0)
    }
}

impl Add<u64> for BoundValue {
    type Output = BoundValue;
    fn add(self, rhs: u64) -> BoundValue {
        BoundValue(self.0 + rhs)
    }
}

impl Add for &BoundValue {
    type Output = BoundValue;
    fn add(self, rhs: &BoundValue) -> BoundValue {
        BoundValue(&self.0 + &rhs.0)
    }
}

impl Mul for BoundValue {
    type Output = BoundValue;
    fn mul(self, rhs: BoundValue) -> BoundValue {
        BoundValue(self.0 * rhs.0)
    }
}

impl Mul<u64> for BoundValue {
    type Output = BoundValue;
    fn mul(self, rhs: u64) -> BoundValue {
        BoundValue(self.0 * rhs)
    }
}

impl Mul for &BoundValue {
    type Output = BoundValue;
    fn mul(self, rhs: &BoundValue) -> BoundValue {
        BoundValue(&self.0 * &rhs.0)
    }
}

/// Serialized as a decimal string so that huge values survive JSON round trips.
impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for BoundValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<BigUint>()
            .map(BoundValue)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact_beyond_machine_words() {
        let big = BoundValue::pow2(200);
        let back = big.clone() * BoundValue::from(3) + 1;
        assert_eq!(back.digits(), 61);
        assert!(back.to_u64().is_none());
        assert_eq!(BoundValue::from(7).ceil_half(), BoundValue::from(4));
        assert_eq!(BoundValue::from(2).checked_sub(&BoundValue::from(3)), None);
    }

    #[test]
    fn json_round_trip() {
        let v = BoundValue::pow2(100);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<BoundValue>(&s).unwrap(), v);
    }
}
