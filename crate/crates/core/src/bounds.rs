//! Explicit bound functions over arbitrary-precision integers.
//!
//! Strength thresholds `A`, `etaA`, key and J-rank functions, the generator
//! counts `B`, `etaB` and the projective-dimension bound. The recursions are
//! normative; displayed closed forms are kept as comparators.

use std::collections::HashMap;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{CheckedSub, One, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{BoundValue, CharClass};
use crate::error::{Error, Result};

/// Largest power of two the evaluators will build (about ten million digits).
pub const MAX_BITS: u64 = 1 << 25;
/// Up to this many quadrics the degree-2 recursion is unrolled step by step;
/// beyond it the resummed form is used.
const UNROLL_LIMIT: u64 = 4096;

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn ceil_half(n: &BigUint) -> BigUint {
    (n + 1u32) >> 1
}

fn ceil_half_u32(n: u32) -> u64 {
    u64::from(n).div_ceil(2)
}

fn pow2(e: &BigUint) -> Result<BigUint> {
    match e.to_u64() {
        Some(b) if b <= MAX_BITS => Ok(BigUint::one() << b),
        _ => Err(Error::BudgetExceeded(format!("2^{e} exceeds the {MAX_BITS}-bit limit"))),
    }
}

fn require_generic(cc: CharClass, what: &str) -> Result<()> {
    if cc != CharClass::NotTwoThree {
        return Err(Error::Unsupported(format!(
            "{what} is only available in characteristic other than 2 and 3"
        )));
    }
    Ok(())
}

/// Vector of per-degree bounds `(A_1, ..., A_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundVector(pub Vec<BoundValue>);

impl BoundVector {
    /// Entry for forms of degree `i` (1-based).
    pub fn get(&self, i: usize) -> &BoundValue {
        &self.0[i - 1]
    }
}

fn vector(entries: Vec<BigUint>) -> BoundVector {
    BoundVector(entries.into_iter().map(BoundValue).collect())
}

// ---- degree 2 strength thresholds ----

fn alpha_big(eta: Option<u32>, n: &BigUint) -> BigUint {
    match eta {
        None => n - 1u32,
        Some(e) if n.is_one() => big(ceil_half_u32(e + 1)),
        Some(e) => n - 1u32 + ceil_half_u32(e),
    }
}

fn require_positive(n: u64, name: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(format!("{name} must be at least 1")));
    }
    Ok(())
}

/// `n - 1`: an `n`-dimensional space of quadrics this strong is spanned by a
/// regular sequence.
pub fn alpha(n: u64) -> Result<BoundValue> {
    require_positive(n, "n")?;
    Ok(BoundValue(alpha_big(None, &big(n))))
}

/// `ceil((eta+1)/2)` for `n = 1`, else `n - 1 + ceil(eta/2)`.
pub fn alpha_eta(eta: u32, n: u64) -> Result<BoundValue> {
    require_positive(n, "n")?;
    Ok(BoundValue(alpha_big(Some(eta), &big(n))))
}

pub fn a2(n1: u64, n2: u64) -> Result<BoundValue> {
    require_positive(n2, "n2")?;
    Ok(BoundValue(alpha_big(None, &big(n2)) + n1))
}

pub fn eta_a2(eta: u32, n1: u64, n2: u64) -> Result<BoundValue> {
    require_positive(n2, "n2")?;
    Ok(BoundValue(alpha_big(Some(eta), &big(n2)) + n1))
}

// ---- key and J-rank functions ----

fn k3_big(k: &BigUint) -> BigUint {
    k * 2u32
}

/// Key function in degree 3: `2k`.
pub fn k3(cc: CharClass, k: u64) -> Result<BoundValue> {
    require_generic(cc, "K3")?;
    Ok(BoundValue(k3_big(&big(k))))
}

fn k4_big(k: &BigUint) -> Result<BigUint> {
    if k.is_zero() {
        return Err(Error::InvalidArgument("K4 needs k >= 1".into()));
    }
    let kk = k * (k + 1u32);
    let p = pow2(&(&kk * 2u32))?;
    Ok(&kk * 6u32 * p + (k + 1u32).pow(2))
}

/// Key function in degree 4: `6k(k+1) 4^(k(k+1)) + (k+1)^2`.
pub fn k4(cc: CharClass, k: u64) -> Result<BoundValue> {
    require_generic(cc, "K4")?;
    Ok(BoundValue(k4_big(&big(k))?))
}

fn j2_big(k: &BigUint) -> BigUint {
    if k.is_zero() {
        return BigUint::zero();
    }
    ceil_half(&(k - 1u32))
}

/// J-rank function for quadrics: strength `ceil((k-1)/2)` forces rank `>= k`.
pub fn j2(k: u64) -> BoundValue {
    BoundValue(j2_big(&big(k)))
}

fn j3_big(cc: CharClass, k: &BigUint) -> BigUint {
    if k.is_zero() {
        return BigUint::zero();
    }
    let two_k_plus_1 = k * 2u32 + 1u32;
    match cc {
        CharClass::NotTwoThree => two_k_plus_1 * (k - 1u32),
        CharClass::Two => two_k_plus_1 * (k - 1u32) * 2u32,
        CharClass::Three => k * k * 2u32 - k,
    }
}

/// J-rank function for cubics, per characteristic class.
pub fn j3(cc: CharClass, k: u64) -> BoundValue {
    BoundValue(j3_big(cc, &big(k)))
}

fn a3_big(cc: CharClass, n: &BigUint) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("A3 needs n >= 1".into()));
    }
    Ok(j3_big(cc, &(n * 2u32 - 1u32)))
}

/// Strength making `n` independent cubics a regular sequence: `J3(2n - 1)`,
/// which is `2(4n-1)(n-1)` outside characteristics 2 and 3.
pub fn a3(cc: CharClass, n: u64) -> Result<BoundValue> {
    Ok(BoundValue(a3_big(cc, &big(n))?))
}

fn j4_big(k: &BigUint) -> Result<BigUint> {
    let arg = k * a3_big(CharClass::NotTwoThree, k)?;
    Ok(k4_big(&arg)? + k - 1u32)
}

/// `K_i(k A_{i-1}(k)) + k - 1` with the built-in `A_2(n) = n - 1` and `A_3`.
pub fn j_from_k(i: u32, k: u64) -> Result<BoundValue> {
    require_positive(k, "k")?;
    let kb = big(k);
    match i {
        3 => Ok(BoundValue(k3_big(&(&kb * (&kb - 1u32))) + (k - 1))),
        4 => {
            if k == 1 {
                return Err(Error::InvalidArgument(
                    "K4 argument k*A3(k) is 0 for k = 1; K4 needs an argument >= 1".into(),
                ));
            }
            Ok(BoundValue(j4_big(&kb)?))
        }
        _ => Err(Error::InvalidArgument(format!("J from K is defined for i in 3..=4, got {i}"))),
    }
}

// ---- etaA vectors ----

/// `2(n2+n3) + eta`, plus one when `n2 != 0`.
fn a3b_arg(eta: u32, n2: &BigUint, n3: &BigUint) -> BigUint {
    let s = (n2 + n3) * 2u32 + eta;
    if n2.is_zero() {
        s
    } else {
        s + 1u32
    }
}

/// `(0, ceil(b/2) + n1, J3(b) + n1)` with `b = 2(n2+n3) + eta (+1 if n2 != 0)`.
pub fn eta_a3(eta: u32, n1: u64, n2: u64, n3: u64, cc: CharClass) -> Result<BoundVector> {
    if n2 == 0 && n3 == 0 {
        return Err(Error::InvalidArgument("need n2 >= 1 or n3 >= 1".into()));
    }
    Ok(eta_a3_vec(eta, &[big(n1), big(n2), big(n3)], cc))
}

fn eta_a3_vec(eta: u32, d: &[BigUint], cc: CharClass) -> BoundVector {
    let b = a3b_arg(eta, &d[1], &d[2]);
    vector(vec![BigUint::zero(), ceil_half(&b) + &d[0], j3_big(cc, &b) + &d[0]])
}

fn check_delta(delta: &[BigUint]) -> Result<()> {
    if delta.is_empty() || delta.len() > 4 {
        return Err(Error::InvalidArgument(format!(
            "dimension sequences have 1 to 4 entries, got {}",
            delta.len()
        )));
    }
    Ok(())
}

fn eta_a_sj_vec(eta: u32, delta: &[BigUint], cc: CharClass) -> Result<BoundVector> {
    check_delta(delta)?;
    let d = delta.len();
    if d >= 3 {
        require_generic(cc, "the key-function construction in degree >= 3")?;
    }
    let n1 = &delta[0];
    let h = delta[1..].iter().filter(|x| !x.is_zero()).count() as u64;
    let n_prime: BigUint = delta[1..].iter().sum();
    let b = (big(h) + n_prime * 2u32 + eta).checked_sub(&BigUint::one()).unwrap_or_default();
    let mut out = vec![BigUint::zero()];
    if d >= 2 {
        out.push(ceil_half(&b) + n1);
    }
    let bm1 = if b.is_zero() { BigUint::zero() } else { &b - 1u32 };
    if d >= 3 {
        let a2b = if b.is_zero() { BigUint::zero() } else { &b - 1u32 };
        out.push(k3_big(&(&b * a2b)) + &bm1 + n1);
    }
    if d >= 4 {
        let arg = &b * a3_big(cc, &b)?;
        out.push(k4_big(&arg)? + &bm1 + n1);
    }
    Ok(vector(out))
}

/// `etaA` from key functions: with `b = h - 1 + 2n' + eta`, entries
/// `0`, `ceil(b/2) + n1` and `K_i(b A_{i-1}(b)) + b - 1 + n1`.
pub fn eta_a_sj(eta: u32, delta: &[u64], cc: CharClass) -> Result<BoundVector> {
    let d: Vec<BigUint> = delta.iter().map(|&x| big(x)).collect();
    eta_a_sj_vec(eta, &d, cc)
}

/// `etaA` from J-rank functions: `J_i(h - 1 + 2(n - n1) + eta) + n1`.
pub fn eta_a_sjrank(eta: u32, delta: &[u64], cc: CharClass) -> Result<BoundVector> {
    let d: Vec<BigUint> = delta.iter().map(|&x| big(x)).collect();
    check_delta(&d)?;
    if d.len() == 4 {
        require_generic(cc, "J4")?;
    }
    let n1 = &d[0];
    let h = d[1..].iter().filter(|x| !x.is_zero()).count() as u64;
    let rest: BigUint = d[1..].iter().sum();
    let arg = (big(h) + rest * 2u32 + eta).checked_sub(&BigUint::one()).unwrap_or_default();
    let mut out = vec![BigUint::zero()];
    for i in 2..=d.len() {
        let j = match i {
            2 => j2_big(&arg),
            3 => j3_big(cc, &arg),
            _ => {
                if arg <= BigUint::one() {
                    return Err(Error::InvalidArgument("J4 needs an argument >= 2".into()));
                }
                j4_big(&arg)?
            }
        };
        out.push(j + n1);
    }
    Ok(vector(out))
}

// ---- generator counts in degree <= 2 ----

/// The degree-2 recursion unrolled to `n2 = 0`, without the clamp.
fn eta_b2_raw(eta: Option<u32>, n1: &BigUint, n2: &BigUint) -> Result<BigUint> {
    if let Some(steps) = n2.to_u64().filter(|&s| s <= UNROLL_LIMIT) {
        let mut a = n1.clone();
        for s in (1..=steps).rev() {
            a = (a + alpha_big(eta, &big(s))) * 2u32;
        }
        return Ok(a);
    }
    Ok(eta_b2_resummed(eta, n1, n2)?)
}

/// `2^n2 n1 + sum_{s=1}^{n2} 2^s alpha(s)` in closed form.
fn eta_b2_resummed(eta: Option<u32>, n1: &BigUint, n2: &BigUint) -> Result<BigUint> {
    if n2.is_zero() {
        return Ok(n1.clone());
    }
    let p = pow2(n2)?;
    let c = big(eta.map_or(0, ceil_half_u32));
    let a1 = alpha_big(eta, &BigUint::one());
    // sum 2^s (s-1) = (n-2) 2^(n+1) + 4, sum 2^s c = c (2^(n+1) - 2)
    let two_p = &p * 2u32;
    let lin = BigInt::from(n2.clone()) - 2;
    let sum = BigInt::from(two_p.clone()) * lin + 4 + BigInt::from(&c * (&two_p - 2u32));
    let correction = (BigInt::from(a1) - BigInt::from(c)) * 2;
    let total: BigInt = BigInt::from(&p * n1) + sum + correction;
    Ok(total.to_biguint().expect("nonnegative"))
}

/// Generator count for a space with `n1` linear forms and `n2` quadrics:
/// `B(n1, 0) = n1`, `B(n1, n2) = B(2 n1 + 2 alpha(n2), n2 - 1)`, never below
/// `n1 + n2`. `eta = None` uses `alpha`, otherwise `alpha_eta`.
pub fn eta_b2(eta: Option<u32>, n1: u64, n2: u64) -> Result<BoundValue> {
    Ok(BoundValue(eta_b2_big(eta, &big(n1), &big(n2))?))
}

fn eta_b2_big(eta: Option<u32>, n1: &BigUint, n2: &BigUint) -> Result<BigUint> {
    let raw = eta_b2_raw(eta, n1, n2)?;
    Ok(raw.max(n1 + n2))
}

/// `2^h n1 + sum_{t=0}^{h-1} 2^(h-t) alpha(n2 - t)`: the first argument after
/// `h` steps of the degree-2 recursion.
pub fn eta_b2_partial(eta: Option<u32>, n1: u64, n2: u64, h: u64) -> Result<BoundValue> {
    if h > n2 {
        return Err(Error::InvalidArgument(format!("h = {h} exceeds n2 = {n2}")));
    }
    let mut acc = BigUint::from(n1) << h;
    for t in 0..h {
        acc += alpha_big(eta, &big(n2 - t)) << (h - t);
    }
    Ok(BoundValue(acc))
}

/// The closed forms displayed with the degree-2 theorem, evaluated verbatim:
/// `2^n2 (n1 + 2 n2 - 4) + 4`, and with `c = ceil(eta/2)`,
/// `2^n2 (n1 + 2 n2 + 2c - 4) - c + 5 + (-1)^eta`.
pub fn eta_b2_closed_form(eta: Option<u32>, n1: u64, n2: u64) -> Result<BigInt> {
    let p = BigInt::from(pow2(&big(n2))?);
    let base = BigInt::from(n1) + 2 * BigInt::from(n2) - 4;
    Ok(match eta {
        None => p * base + 4,
        Some(e) => {
            let c = BigInt::from(ceil_half_u32(e));
            let sign = if e % 2 == 0 { 1 } else { -1 };
            p * (base + &c * 2) - c + 5 + sign
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct B2Audit {
    pub eta: Option<u32>,
    pub n1: u64,
    pub n2: u64,
    /// Normative value: the recursion, clamped at `n1 + n2`.
    pub value: BoundValue,
    pub unclamped: BoundValue,
    pub clamped: bool,
    #[serde(serialize_with = "crate::json::bigint_as_string")]
    pub closed_form: BigInt,
    /// `closed_form - value`.
    #[serde(serialize_with = "crate::json::bigint_as_string")]
    pub discrepancy: BigInt,
}

impl B2Audit {
    pub fn differs(&self) -> bool {
        !self.discrepancy.is_zero()
    }
}

pub fn eta_b2_audit(eta: Option<u32>, n1: u64, n2: u64) -> Result<B2Audit> {
    let unclamped = eta_b2_raw(eta, &big(n1), &big(n2))?;
    let value = unclamped.clone().max(big(n1) + n2);
    let closed_form = eta_b2_closed_form(eta, n1, n2)?;
    let discrepancy = &closed_form - BigInt::from(value.clone());
    Ok(B2Audit {
        eta,
        n1,
        n2,
        clamped: value != unclamped,
        value: BoundValue(value),
        unclamped: BoundValue(unclamped),
        closed_form,
        discrepancy,
    })
}

/// Projective dimension bound for ideals of `n` quadrics:
/// `2^(n+1)(n-2) + 4` for `n >= 2`, and 1 for `n = 1`.
pub fn pd_bound_quadrics(n: u64) -> Result<BoundValue> {
    require_positive(n, "n")?;
    if n == 1 {
        return Ok(BoundValue::one());
    }
    Ok(BoundValue(pow2(&big(n + 1))? * (n - 2) + 4u32))
}

// ---- general dimension sequences ----

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BMode {
    /// Add `2 etaA_i` to every lower degree at once.
    Dominating,
    /// Maximize over every distribution; each distributed count must stay
    /// within `cap`.
    Exact { cap: u64 },
}

pub const DEFAULT_EXACT_CAP: u64 = 64;

impl FromStr for BMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dominating" => Ok(BMode::Dominating),
            "exact" => Ok(BMode::Exact { cap: DEFAULT_EXACT_CAP }),
            _ => Err(Error::InvalidArgument(format!("unknown mode '{s}'"))),
        }
    }
}

fn top_entry(eta: u32, delta: &[BigUint], top: usize, cc: CharClass) -> Result<BigUint> {
    let v = match top {
        3 => eta_a3_vec(eta, &delta[..3], cc),
        4 => eta_a_sj_vec(eta, &delta[..4], cc)?,
        _ => unreachable!("degree <= 2 handled directly"),
    };
    Ok(v.get(top).0.clone())
}

fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

struct General {
    eta: Option<u32>,
    mode: BMode,
    cc: CharClass,
    memo: HashMap<Vec<BigUint>, BigUint>,
}

impl General {
    fn eval(&mut self, delta: Vec<BigUint>) -> Result<BigUint> {
        let Some(top) = delta.iter().rposition(|x| !x.is_zero()).map(|i| i + 1) else {
            return Ok(BigUint::zero());
        };
        if top == 1 {
            return Ok(delta[0].clone());
        }
        if top == 2 {
            return eta_b2_big(self.eta, &delta[0], &delta[1]);
        }
        if let Some(v) = self.memo.get(&delta) {
            return Ok(v.clone());
        }
        // without eta, regularity is obtained through R_1
        let m = top_entry(self.eta.unwrap_or(1), &delta, top, self.cc)? * 2u32;
        let mut base = delta.clone();
        base[top - 1] -= 1u32;
        let value = match self.mode {
            BMode::Dominating => {
                for x in &mut base[..top - 1] {
                    *x += &m;
                }
                self.eval(base)?
            }
            BMode::Exact { cap } => {
                let total = m.to_u64().filter(|&t| t <= cap).ok_or_else(|| {
                    Error::BudgetExceeded(format!("{m} new forms exceed the exact-mode cap {cap}"))
                })?;
                let mut best = BigUint::zero();
                for comp in compositions(total, top - 1) {
                    let mut next = base.clone();
                    for (x, a) in next.iter_mut().zip(&comp) {
                        *x += *a;
                    }
                    best = best.max(self.eval(next)?);
                }
                best
            }
        };
        self.memo.insert(delta, value.clone());
        Ok(value)
    }
}

/// `etaB` for a dimension sequence of length at most 4: all-linear sequences
/// give `n1`; a top degree of 2 uses the degree-2 recursion; otherwise one
/// form of the top degree collapses into `2 etaA_i` forms of lower degree.
pub fn eta_b_general(eta: Option<u32>, delta: &[u64], mode: BMode, cc: CharClass) -> Result<BoundValue> {
    let d: Vec<BigUint> = delta.iter().map(|&x| big(x)).collect();
    check_delta(&d)?;
    let mut g = General {
        eta,
        mode,
        cc,
        memo: HashMap::new(),
    };
    Ok(BoundValue(g.eval(d)?))
}

/// Projective dimension bound for the cokernel of an `r x s` matrix with
/// entries of degree at most `d`: `etaB` of `rsd` forms in every degree `<= d`.
pub fn c_bound(r: u64, s: u64, d: u64, eta: Option<u32>, cc: CharClass) -> Result<BoundValue> {
    if d == 0 || d > 4 {
        return Err(Error::InvalidArgument(format!("d must be in 1..=4, got {d}")));
    }
    let n = r
        .checked_mul(s)
        .and_then(|x| x.checked_mul(d))
        .ok_or_else(|| Error::InvalidArgument("r*s*d overflows".into()))?;
    eta_b_general(eta, &vec![n; d as usize], BMode::Dominating, cc)
}

/// `(k_m, b_m)` with `k_m = (a+1)^m k` and `b_m = (a+1)^(m-1) a k`, `b_0 = 0`.
pub fn mvclpse_params(a: u64, k: u64, m: u32) -> (BoundValue, BoundValue) {
    let base = big(a + 1);
    let km = base.pow(m) * k;
    let bm = if m == 0 {
        BigUint::zero()
    } else {
        base.pow(m - 1) * a * k
    };
    (BoundValue(km), BoundValue(bm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(n: u64) -> BoundValue {
        BoundValue::from(n)
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(3).unwrap(), v(2));
        assert_eq!(alpha_eta(2, 1).unwrap(), v(2));
        assert_eq!(alpha_eta(4, 1).unwrap(), v(3));
        assert_eq!(alpha_eta(1, 4).unwrap(), v(4));
        assert!(alpha(0).is_err());
        assert_eq!(a2(0, 3).unwrap(), v(2));
        assert_eq!(a2(5, 1).unwrap(), v(5));
        assert_eq!(eta_a2(1, 2, 2).unwrap(), v(4));
        assert!(a2(1, 0).is_err());
    }

    #[test]
    fn key_and_jrank_values() {
        let g = CharClass::NotTwoThree;
        assert_eq!(k3(g, 5).unwrap(), v(10));
        assert_eq!(k3(g, 1).unwrap(), v(2));
        assert!(k3(CharClass::Two, 1).is_err());
        assert_eq!(k4(g, 1).unwrap(), v(196));
        assert_eq!(k4(g, 2).unwrap(), v(147465));
        assert_eq!(k4(g, 3).unwrap(), v(1207959568));
        assert!(k4(CharClass::Three, 1).is_err());
        assert_eq!(j3(g, 3), v(14));
        assert_eq!(j3(CharClass::Two, 2), v(10));
        assert_eq!(j3(CharClass::Three, 2), v(6));
        assert_eq!(a3(g, 2).unwrap(), v(14));
        assert_eq!(a3(g, 1).unwrap(), v(0));
        assert_eq!(a3(g, 3).unwrap(), v(44));
        assert_eq!(j_from_k(3, 3).unwrap(), v(14));
        assert!(j_from_k(4, 1).is_err());
        assert!(j_from_k(4, 2).unwrap() > j_from_k(3, 2).unwrap());
    }

    #[test]
    fn j_from_k_matches_cubic_jrank() {
        for k in 1..=20 {
            assert_eq!(j_from_k(3, k).unwrap(), j3(CharClass::NotTwoThree, k), "k = {k}");
        }
    }

    #[test]
    fn eta_a_values() {
        let g = CharClass::NotTwoThree;
        assert_eq!(eta_a3(1, 0, 0, 1, g).unwrap(), BoundVector(vec![v(0), v(2), v(14)]));
        assert_eq!(eta_a3(1, 1, 1, 1, g).unwrap(), BoundVector(vec![v(0), v(4), v(66)]));
        assert_eq!(eta_a3(2, 0, 1, 0, g).unwrap().get(2), &v(3));
        assert_eq!(eta_a_sj(1, &[0, 0, 1, 0], g).unwrap().get(3), &v(14));
        assert_eq!(eta_a_sjrank(1, &[0, 0, 1], CharClass::Two).unwrap().get(3), &v(28));
        assert_eq!(eta_a_sjrank(1, &[0, 0, 2], CharClass::Three).unwrap().get(3), &v(45));
        assert!(eta_a_sj(1, &[0, 0, 1], CharClass::Two).is_err());
    }

    #[test]
    fn sj_quartic_entry_matches_explicit_corollary() {
        // K4((2n+eta) A3(2n+eta)) + 2n + eta - 1 with A3(m) = 2(4m-1)(m-1)
        let g = CharClass::NotTwoThree;
        for (n, eta) in [(1u64, 1u32), (1, 2)] {
            let b = 2 * n + u64::from(eta);
            let a3b = 2 * (8 * n + 4 * u64::from(eta) - 1) * (2 * n + u64::from(eta) - 1);
            assert_eq!(a3(g, b).unwrap(), v(a3b));
            let expect = k4(g, b * a3b).unwrap() + (b - 1);
            assert_eq!(eta_a_sj(eta, &[0, 0, 0, n], g).unwrap().get(4), &expect);
        }
    }

    #[test]
    fn sj_quadric_entry_dominates_direct_threshold() {
        // the key-function route gives n2 + ceil(eta/2), one above alpha_eta for n2 >= 2
        let g = CharClass::NotTwoThree;
        for n2 in 1..=8 {
            for eta in 0..=4 {
                let sj = eta_a_sj(eta, &[0, n2], g).unwrap().get(2).clone();
                let direct = eta_a2(eta, 0, n2).unwrap();
                assert!(sj >= direct, "n2 = {n2}, eta = {eta}");
            }
        }
    }

    #[test]
    fn b2_values_and_discrepancies() {
        assert_eq!(eta_b2(None, 0, 2).unwrap(), v(4));
        assert_eq!(eta_b2_closed_form(None, 0, 2).unwrap(), BigInt::from(4));
        let a = eta_b2_audit(None, 0, 1).unwrap();
        assert_eq!((a.value.clone(), a.unclamped.clone(), a.clamped), (v(1), v(0), true));
        assert_eq!(a.closed_form, BigInt::from(0));
        let a = eta_b2_audit(Some(1), 0, 1).unwrap();
        assert_eq!(a.value, v(2));
        assert_eq!(a.closed_form, BigInt::from(3));
        assert!(a.differs());
    }

    #[test]
    fn b2_closed_form_matches_unclamped_recursion() {
        for n1 in 0..=6 {
            for n2 in 0..=6 {
                let a = eta_b2_audit(None, n1, n2).unwrap();
                assert_eq!(BigInt::from(a.unclamped.0.clone()), a.closed_form);
                assert_eq!(a.clamped, (n1, n2) == (0, 1));
            }
        }
    }

    #[test]
    fn resummation_identity() {
        for eta in [None, Some(1), Some(2), Some(3), Some(4)] {
            for n1 in 0..=6 {
                for n2 in 0..=6 {
                    let mut cur = (n1, n2);
                    for h in 0..=n2 {
                        let p = eta_b2_partial(eta, n1, n2, h).unwrap();
                        assert_eq!(p, v(cur.0));
                        if cur.1 > 0 {
                            cur = (2 * cur.0 + alpha_big(eta, &big(cur.1)).to_u64().unwrap() * 2, cur.1 - 1);
                        }
                    }
                    let raw = eta_b2_raw(eta, &big(n1), &big(n2)).unwrap();
                    assert_eq!(raw, eta_b2_resummed(eta, &big(n1), &big(n2)).unwrap());
                }
            }
        }
        // the resummed branch agrees across the unrolling threshold
        let n2 = big(UNROLL_LIMIT);
        assert_eq!(
            eta_b2_raw(Some(3), &big(5), &n2).unwrap(),
            eta_b2_resummed(Some(3), &big(5), &n2).unwrap()
        );
    }

    #[test]
    fn pd_bound_values() {
        assert_eq!(pd_bound_quadrics(1).unwrap(), v(1));
        assert_eq!(pd_bound_quadrics(2).unwrap(), v(4));
        assert_eq!(pd_bound_quadrics(3).unwrap(), v(20));
        assert_eq!(pd_bound_quadrics(4).unwrap(), v(68));
        assert_eq!(pd_bound_quadrics(5).unwrap(), v(196));
    }

    #[test]
    fn general_recursion() {
        let g = CharClass::NotTwoThree;
        assert_eq!(eta_b_general(Some(1), &[5, 0, 0, 0], BMode::Dominating, g).unwrap(), v(5));
        assert_eq!(
            eta_b_general(Some(1), &[0, 0, 1], BMode::Dominating, g).unwrap(),
            eta_b2(Some(1), 28, 28).unwrap()
        );
        for n1 in 0..=4 {
            for n2 in 0..=4 {
                let d = eta_b_general(Some(2), &[n1, n2], BMode::Dominating, g).unwrap();
                let e = eta_b_general(Some(2), &[n1, n2], BMode::Exact { cap: 64 }, g).unwrap();
                assert_eq!(d, e);
                assert_eq!(d, eta_b2(Some(2), n1, n2).unwrap());
            }
        }
        let exact = eta_b_general(Some(1), &[0, 0, 1], BMode::Exact { cap: 64 }, g).unwrap();
        let dom = eta_b_general(Some(1), &[0, 0, 1], BMode::Dominating, g).unwrap();
        assert!(exact <= dom);
        assert_eq!(exact, eta_b2(Some(1), 0, 28).unwrap());
        assert!(eta_b_general(Some(1), &[0, 0, 3], BMode::Exact { cap: 64 }, g).is_err());
    }

    #[test]
    fn c_bound_values() {
        let g = CharClass::NotTwoThree;
        assert_eq!(c_bound(1, 1, 1, Some(1), g).unwrap(), v(1));
        assert_eq!(c_bound(1, 2, 2, Some(1), g).unwrap(), eta_b2(Some(1), 4, 4).unwrap());
        for r in 1..=3 {
            for s in 1..=3 {
                for d in 1..=2 {
                    let c = c_bound(r, s, d, Some(1), g).unwrap();
                    assert!(c_bound(r + 1, s, d, Some(1), g).unwrap() >= c);
                    assert!(c_bound(r, s + 1, d, Some(1), g).unwrap() >= c);
                    if d == 1 {
                        assert!(c_bound(r, s, 2, Some(1), g).unwrap() >= c);
                    }
                }
            }
        }
    }

    #[test]
    fn mvclpse_values() {
        assert_eq!(mvclpse_params(2, 1, 3).0, v(27));
        assert_eq!(mvclpse_params(3, 5, 0), (v(5), v(0)));
        for m in 0..6 {
            assert_eq!(mvclpse_params(3, 7, m).0, v(4u64.pow(m) * 7));
        }
    }

    #[test]
    fn huge_values_are_refused_not_wrapped() {
        let g = CharClass::NotTwoThree;
        assert!(matches!(c_bound(1, 1, 3, Some(1), g), Err(Error::BudgetExceeded(_))));
        assert!(k4(g, 100).unwrap().digits() > 6000);
    }

    proptest! {
        #[test]
        fn bounds_are_ascending(n in 1u64..10, eta in 0u32..6, k in 1u64..10, n1 in 0u64..10) {
            let g = CharClass::NotTwoThree;
            prop_assert!(alpha_eta(eta, n + 1).unwrap() >= alpha_eta(eta, n).unwrap());
            prop_assert!(alpha_eta(eta + 1, n).unwrap() >= alpha_eta(eta, n).unwrap());
            prop_assert!(alpha_eta(eta, n).unwrap() >= alpha(n).unwrap());
            prop_assert!(k4(g, k + 1).unwrap() > k4(g, k).unwrap());
            for cc in [CharClass::NotTwoThree, CharClass::Two, CharClass::Three] {
                prop_assert!(j3(cc, k + 1) >= j3(cc, k));
            }
            prop_assert!(j_from_k(3, k + 1).unwrap() >= j_from_k(3, k).unwrap());
            prop_assert!(a3(g, n + 1).unwrap() >= a3(g, n).unwrap());
            let b = eta_b2(Some(eta), n1, n).unwrap();
            prop_assert!(eta_b2(Some(eta), n1 + 1, n).unwrap() >= b.clone());
            prop_assert!(eta_b2(Some(eta), n1, n + 1).unwrap() >= b.clone());
            prop_assert!(b.clone() >= eta_b2(None, n1, n).unwrap());
            prop_assert!(b >= BoundValue::from(n1 + n));
            prop_assert!(pd_bound_quadrics(n + 1).unwrap() >= pd_bound_quadrics(n).unwrap());
        }
    }
}
