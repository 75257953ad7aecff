use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact field. Elements are plain values; all arithmetic goes through the
/// field object so that moduli and tables live in one place.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Number of elements, `None` for infinite fields.
    fn order(&self) -> Option<u64>;
    /// The `idx`-th element in the canonical enumeration of a finite field.
    fn element(&self, idx: u64) -> Self::Elem;
    fn index_of(&self, a: &Self::Elem) -> u64;

    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// A root of `z^2 + z = c`, only meaningful in characteristic 2.
    fn artin_schreier_root(&self, c: &Self::Elem) -> Option<Self::Elem>;

    /// The quadratic extension used for closure witnesses, if this field has one.
    fn quadratic_extension(&self) -> Option<Self>;
    /// Embeds an element of `self` into `ext = self.quadratic_extension()`.
    fn embed(&self, ext: &Self, a: &Self::Elem) -> Self::Elem;
    /// Inverse of `embed` on elements that lie in the base field.
    fn restrict(&self, ext: &Self, a: &Self::Elem) -> Option<Self::Elem>;

    fn spec(&self) -> FieldSpec;
    fn format_elem(&self, a: &Self::Elem) -> String;
    /// Parses an unsigned coefficient literal.
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// All elements of a finite field in canonical order.
    fn elements(&self) -> Vec<Self::Elem> {
        let q = self.order().expect("elements() on an infinite field");
        (0..q).map(|i| self.element(i)).collect()
    }
}

/// Field description used across the CLI and the JSON schemas:
/// `q`, `gf:p`, `gf:2^e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
    Binary(u32),
    Quadratic(Box<FieldSpec>),
}

impl FieldSpec {
    /// Strips any extension layers.
    pub fn base(&self) -> &FieldSpec {
        match self {
            FieldSpec::Quadratic(b) => b.base(),
            other => other,
        }
    }

    pub fn extension_degree(&self) -> u32 {
        match self {
            FieldSpec::Quadratic(b) => 2 * b.extension_degree(),
            _ => 1,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "gf:{p}"),
            FieldSpec::Binary(e) => write!(f, "gf:2^{e}"),
            FieldSpec::Quadratic(b) => write!(f, "{b}[ext2]"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::FieldSpec(s.to_string());
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let rest = t.strip_prefix("gf:").ok_or_else(bad)?;
        if let Some(e) = rest.strip_prefix("2^") {
            let e: u32 = e.parse().map_err(|_| bad())?;
            if !(1..=16).contains(&e) {
                return Err(bad());
            }
            return Ok(if e == 1 {
                FieldSpec::Prime(2)
            } else {
                FieldSpec::Binary(e)
            });
        }
        let p: u64 = rest.parse().map_err(|_| bad())?;
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(bad());
        }
        Ok(FieldSpec::Prime(p))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Characteristic classes that select among the bound formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CharClass {
    NotTwoThree,
    Two,
    Three,
}

impl CharClass {
    pub fn of_characteristic(p: u64) -> CharClass {
        match p {
            2 => CharClass::Two,
            3 => CharClass::Three,
            _ => CharClass::NotTwoThree,
        }
    }
}

impl FromStr for CharClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "0" | "not23" | "not-two-three" | "nottwothree" | "generic" => Ok(CharClass::NotTwoThree),
            "2" | "two" => Ok(CharClass::Two),
            "3" | "three" => Ok(CharClass::Three),
            _ => Err(Error::InvalidArgument(format!("unknown characteristic class `{s}`"))),
        }
    }
}
