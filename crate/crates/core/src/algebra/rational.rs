//! The rational numbers with big-integer fractions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Field, FieldSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn order(&self) -> Option<u64> {
        None
    }

    /// Enumerates small integers `0, 1, -1, 2, -2, ...`; used by heuristic searches.
    fn element(&self, idx: u64) -> BigRational {
        let k = idx.div_ceil(2) as i64;
        self.from_i64(if idx % 2 == 1 { k } else { -k })
    }

    fn index_of(&self, a: &BigRational) -> u64 {
        let n = a.to_integer().to_i64().unwrap_or(0);
        if n > 0 {
            (2 * n - 1) as u64
        } else {
            (-2 * n) as u64
        }
    }

    fn sqrt(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_negative() {
            return None;
        }
        let n = a.numer().sqrt();
        let d = a.denom().sqrt();
        (&n * &n == *a.numer() && &d * &d == *a.denom()).then(|| BigRational::new(n, d))
    }

    fn artin_schreier_root(&self, _c: &BigRational) -> Option<BigRational> {
        None
    }

    fn quadratic_extension(&self) -> Option<Rationals> {
        None
    }

    fn embed(&self, _ext: &Rationals, a: &BigRational) -> BigRational {
        a.clone()
    }

    fn restrict(&self, _ext: &Rationals, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let bad = || Error::InvalidArgument(format!("bad rational coefficient `{s}`"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        if !digits(n) || !digits(d) {
            return Err(bad());
        }
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        let q = Rationals;
        let x = q.parse_elem("6/4").unwrap();
        assert_eq!(q.format_elem(&x), "3/2");
        assert!(q.parse_elem("1/0").is_err());
        assert!(q.parse_elem("-1").is_err());
    }

    #[test]
    fn square_roots_only_when_rational() {
        let q = Rationals;
        assert_eq!(q.sqrt(&q.parse_elem("9/4").unwrap()), Some(q.parse_elem("3/2").unwrap()));
        assert_eq!(q.sqrt(&q.from_i64(2)), None);
        assert_eq!(q.sqrt(&q.from_i64(-1)), None);
    }

    #[test]
    fn small_integer_enumeration_is_a_bijection() {
        let q = Rationals;
        for i in 0..50 {
            assert_eq!(q.index_of(&q.element(i)), i);
        }
    }
}
