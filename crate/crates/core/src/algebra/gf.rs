//! Finite fields: prime fields GF(p), binary fields GF(2^e) with fixed moduli,
//! and quadratic extensions of either.
//!
//! Every element is a `u64` index in `[0, q)`. For prime fields this is the
//! canonical representative, for binary fields the bit pattern in the
//! polynomial basis, and for a quadratic extension `a + b*t` it is
//! `a + b*q_base`. In characteristic 2 the index is therefore always the
//! coordinate vector over GF(2) and addition is XOR.

use std::fmt;
use std::sync::Arc;

use super::field::{is_prime, Field, FieldSpec};
use crate::error::{Error, Result};

/// Irreducible (in fact primitive) moduli for GF(2^e), bit `i` = coefficient of `t^i`.
pub const BINARY_MODULI: [u32; 17] = [
    0, 0b11, 0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443,
    0x8003, 0x1100B,
];

#[derive(Clone)]
pub struct Gf(Arc<Repr>);

enum Repr {
    Prime {
        p: u64,
        nonresidue: u64,
    },
    Binary {
        e: u32,
        exp: Vec<u32>,
        log: Vec<u32>,
    },
    /// `t^2 = c1*t + c0` over `base`.
    Quadratic {
        base: Gf,
        qb: u64,
        c0: u64,
        c1: u64,
        nonresidue: u64,
    },
}

impl Gf {
    pub fn prime(p: u64) -> Result<Gf> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::FieldSpec(format!("gf:{p}")));
        }
        let mut f = Gf(Arc::new(Repr::Prime { p, nonresidue: 0 }));
        if p > 2 {
            let nr = f.find_nonresidue();
            f = Gf(Arc::new(Repr::Prime { p, nonresidue: nr }));
        }
        Ok(f)
    }

    pub fn binary(e: u32) -> Result<Gf> {
        if e == 1 {
            return Gf::prime(2);
        }
        if !(2..=16).contains(&e) {
            return Err(Error::FieldSpec(format!("gf:2^{e}")));
        }
        let modulus = BINARY_MODULI[e as usize];
        let q = 1u64 << e;
        let order = q - 1;
        let factors = prime_factors(order);
        let mut generator = None;
        for g in 2..q {
            let is_gen = factors
                .iter()
                .all(|r| clpow(g as u32, order / r, modulus, e) != 1);
            if is_gen {
                generator = Some(g as u32);
                break;
            }
        }
        let g = generator.ok_or_else(|| Error::FieldSpec(format!("gf:2^{e} (modulus not primitive)")))?;
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order as usize {
            exp[i] = x;
            exp[i + order as usize] = x;
            log[x as usize] = i as u32;
            x = clmul_mod(x, g, modulus, e);
        }
        if x != 1 {
            return Err(Error::FieldSpec(format!("gf:2^{e}")));
        }
        Ok(Gf(Arc::new(Repr::Binary { e, exp, log })))
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Gf> {
        match spec {
            FieldSpec::Prime(p) => Gf::prime(*p),
            FieldSpec::Binary(e) => Gf::binary(*e),
            FieldSpec::Quadratic(b) => Gf::from_spec(b)?
                .quadratic_extension()
                .ok_or_else(|| Error::FieldSpec(spec.to_string())),
            FieldSpec::Rationals => Err(Error::FieldSpec("q is not a finite field".into())),
        }
    }

    pub fn size(&self) -> u64 {
        match &*self.0 {
            Repr::Prime { p, .. } => *p,
            Repr::Binary { e, .. } => 1 << e,
            Repr::Quadratic { qb, .. } => qb * qb,
        }
    }

    /// log2 of the order in characteristic 2.
    fn bit_width(&self) -> u32 {
        self.size().trailing_zeros()
    }

    fn split(&self, x: u64) -> (u64, u64) {
        match &*self.0 {
            Repr::Quadratic { qb, .. } => (x % qb, x / qb),
            _ => (x, 0),
        }
    }

    fn find_nonresidue(&self) -> u64 {
        let q = self.size();
        let half = (q - 1) / 2;
        (2..q)
            .find(|&x| self.pow(&x, half) != 1)
            .expect("odd finite field has a non-square")
    }

    fn nonresidue(&self) -> u64 {
        match &*self.0 {
            Repr::Prime { nonresidue, .. } | Repr::Quadratic { nonresidue, .. } => *nonresidue,
            Repr::Binary { .. } => 0,
        }
    }

    /// Absolute trace to GF(2).
    fn trace2(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        let mut y = x;
        for _ in 0..self.bit_width() {
            acc ^= y;
            y = self.mul(&y, &y);
        }
        acc
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.spec() == other.spec()
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf({})", self.spec())
    }
}

impl Field for Gf {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        match &*self.0 {
            Repr::Prime { p, .. } => {
                let s = a + b;
                if s >= *p {
                    s - p
                } else {
                    s
                }
            }
            Repr::Binary { .. } => a ^ b,
            Repr::Quadratic { base, qb, .. } => {
                let (a0, a1) = (a % qb, a / qb);
                let (b0, b1) = (b % qb, b / qb);
                base.add(&a0, &b0) + base.add(&a1, &b1) * qb
            }
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &u64) -> u64 {
        match &*self.0 {
            Repr::Prime { p, .. } => {
                if *a == 0 {
                    0
                } else {
                    p - a
                }
            }
            Repr::Binary { .. } => *a,
            Repr::Quadratic { base, qb, .. } => {
                let (a0, a1) = (a % qb, a / qb);
                base.neg(&a0) + base.neg(&a1) * qb
            }
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        match &*self.0 {
            Repr::Prime { p, .. } => (a * b) % p,
            Repr::Binary { exp, log, .. } => {
                if *a == 0 || *b == 0 {
                    0
                } else {
                    exp[(log[*a as usize] + log[*b as usize]) as usize] as u64
                }
            }
            Repr::Quadratic { base, qb, c0, c1, .. } => {
                let (a0, a1) = (a % qb, a / qb);
                let (b0, b1) = (b % qb, b / qb);
                let a0b0 = base.mul(&a0, &b0);
                let a1b1 = base.mul(&a1, &b1);
                let cross = base.add(&base.mul(&a0, &b1), &base.mul(&a1, &b0));
                let lo = base.add(&a0b0, &base.mul(&a1b1, c0));
                let hi = base.add(&cross, &base.mul(&a1b1, c1));
                lo + hi * qb
            }
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        match &*self.0 {
            Repr::Prime { p, .. } => Some(self.pow(a, p - 2)),
            Repr::Binary { exp, log, e } => {
                let order = (1u32 << e) - 1;
                Some(exp[((order - log[*a as usize]) % order) as usize] as u64)
            }
            Repr::Quadratic { base, qb, c0, c1, .. } => {
                // conj(t) = c1 - t, N(a0 + a1 t) = a0^2 + a0 a1 c1 - a1^2 c0
                let (a0, a1) = (a % qb, a / qb);
                let norm = base.sub(
                    &base.add(&base.mul(&a0, &a0), &base.mul(&base.mul(&a0, &a1), c1)),
                    &base.mul(&base.mul(&a1, &a1), c0),
                );
                let ninv = base.inv(&norm)?;
                let lo = base.mul(&base.add(&a0, &base.mul(&a1, c1)), &ninv);
                let hi = base.mul(&base.neg(&a1), &ninv);
                Some(lo + hi * qb)
            }
        }
    }

    fn from_i64(&self, n: i64) -> u64 {
        match &*self.0 {
            Repr::Prime { p, .. } => n.rem_euclid(*p as i64) as u64,
            Repr::Binary { .. } => n.rem_euclid(2) as u64,
            Repr::Quadratic { base, .. } => base.from_i64(n),
        }
    }

    fn characteristic(&self) -> u64 {
        match &*self.0 {
            Repr::Prime { p, .. } => *p,
            Repr::Binary { .. } => 2,
            Repr::Quadratic { base, .. } => base.characteristic(),
        }
    }

    fn order(&self) -> Option<u64> {
        Some(self.size())
    }

    fn element(&self, idx: u64) -> u64 {
        debug_assert!(idx < self.size());
        idx
    }

    fn index_of(&self, a: &u64) -> u64 {
        *a
    }

    fn sqrt(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return Some(0);
        }
        let q = self.size();
        if self.characteristic() == 2 {
            return Some(self.pow(a, q / 2));
        }
        if self.pow(a, (q - 1) / 2) != 1 {
            return None;
        }
        // Tonelli-Shanks
        let mut s = 0u32;
        let mut t = q - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let mut c = self.pow(&self.nonresidue(), t);
        let mut x = self.pow(a, (t + 1) / 2);
        let mut b = self.pow(a, t);
        let mut m = s;
        while b != 1 {
            let mut i = 0;
            let mut bb = b;
            while bb != 1 {
                bb = self.mul(&bb, &bb);
                i += 1;
            }
            let mut g = c;
            for _ in 0..(m - i - 1) {
                g = self.mul(&g, &g);
            }
            x = self.mul(&x, &g);
            c = self.mul(&g, &g);
            b = self.mul(&b, &c);
            m = i;
        }
        Some(x)
    }

    fn artin_schreier_root(&self, c: &u64) -> Option<u64> {
        if self.characteristic() != 2 {
            return None;
        }
        // z -> z^2 + z is GF(2)-linear; solve over GF(2) with bit masks.
        let width = self.bit_width() as usize;
        let mut rows: Vec<(u64, u64)> = Vec::new(); // (image, preimage) reduced basis
        let mut pivots: Vec<u32> = Vec::new();
        for j in 0..width {
            let z = 1u64 << j;
            let mut img = self.add(&self.mul(&z, &z), &z);
            let mut pre = z;
            for (k, &(ri, rp)) in rows.iter().enumerate() {
                if img >> pivots[k] & 1 == 1 {
                    img ^= ri;
                    pre ^= rp;
                }
            }
            if img != 0 {
                let piv = 63 - img.leading_zeros();
                for (k, r) in rows.iter_mut().enumerate() {
                    let _ = k;
                    if r.0 >> piv & 1 == 1 {
                        r.0 ^= img;
                        r.1 ^= pre;
                    }
                }
                rows.push((img, pre));
                pivots.push(piv);
            }
        }
        let mut target = *c;
        let mut sol = 0u64;
        for (k, &(ri, rp)) in rows.iter().enumerate() {
            if target >> pivots[k] & 1 == 1 {
                target ^= ri;
                sol ^= rp;
            }
        }
        (target == 0).then_some(sol)
    }

    fn quadratic_extension(&self) -> Option<Gf> {
        let qb = self.size();
        if qb >= (1 << 31) && qb.checked_mul(qb).is_none_or(|q| q >= (1 << 62)) {
            return None;
        }
        let (c0, c1) = if self.characteristic() == 2 {
            let c0 = (1..qb).find(|&x| self.trace2(x) == 1)?;
            (c0, 1)
        } else {
            (self.nonresidue(), 0)
        };
        let mut ext = Gf(Arc::new(Repr::Quadratic {
            base: self.clone(),
            qb,
            c0,
            c1,
            nonresidue: 0,
        }));
        if ext.characteristic() != 2 {
            let nr = ext.find_nonresidue();
            ext = Gf(Arc::new(Repr::Quadratic {
                base: self.clone(),
                qb,
                c0,
                c1,
                nonresidue: nr,
            }));
        }
        Some(ext)
    }

    fn embed(&self, ext: &Gf, a: &u64) -> u64 {
        debug_assert!(matches!(&*ext.0, Repr::Quadratic { base, .. } if base == self));
        *a
    }

    fn restrict(&self, ext: &Gf, a: &u64) -> Option<u64> {
        let (lo, hi) = ext.split(*a);
        (hi == 0).then_some(lo)
    }

    fn spec(&self) -> FieldSpec {
        match &*self.0 {
            Repr::Prime { p, .. } => FieldSpec::Prime(*p),
            Repr::Binary { e, .. } => FieldSpec::Binary(*e),
            Repr::Quadratic { base, .. } => FieldSpec::Quadratic(Box::new(base.spec())),
        }
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<u64> {
        let bad = || Error::InvalidArgument(format!("bad coefficient `{s}` for {}", self.spec()));
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        match &*self.0 {
            Repr::Prime { p, .. } => {
                let mut acc = 0u64;
                for b in s.bytes() {
                    acc = (acc * 10 + (b - b'0') as u64) % p;
                }
                Ok(acc)
            }
            _ => {
                let v: u64 = s.parse().map_err(|_| bad())?;
                if v >= self.size() {
                    return Err(bad());
                }
                Ok(v)
            }
        }
    }
}

/// Carry-less multiplication modulo `modulus` (degree `e`).
fn clmul_mod(a: u32, b: u32, modulus: u32, e: u32) -> u32 {
    let mut acc = 0u32;
    let mut x = a;
    let mut y = b;
    while y != 0 {
        if y & 1 == 1 {
            acc ^= x;
        }
        y >>= 1;
        x <<= 1;
        if x >> e & 1 == 1 {
            x ^= modulus;
        }
    }
    acc
}

fn clpow(g: u32, mut n: u64, modulus: u32, e: u32) -> u32 {
    let mut acc = 1u32;
    let mut base = g;
    while n > 0 {
        if n & 1 == 1 {
            acc = clmul_mod(acc, base, modulus, e);
        }
        base = clmul_mod(base, base, modulus, e);
        n >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_field_axioms(f: &Gf) {
        let els = f.elements();
        for a in &els {
            assert_eq!(f.add(a, &f.neg(a)), 0);
            if *a != 0 {
                assert_eq!(f.mul(a, &f.inv(a).unwrap()), 1, "{f:?} {a}");
            }
        }
        for a in els.iter().step_by(3) {
            for b in els.iter().step_by(2) {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in els.iter().step_by(5) {
                    let lhs = f.mul(a, &f.add(b, c));
                    let rhs = f.add(&f.mul(a, b), &f.mul(a, c));
                    assert_eq!(lhs, rhs);
                    assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn small_fields_are_fields() {
        for f in [
            Gf::prime(2).unwrap(),
            Gf::prime(7).unwrap(),
            Gf::binary(2).unwrap(),
            Gf::binary(4).unwrap(),
            Gf::prime(3).unwrap().quadratic_extension().unwrap(),
            Gf::prime(2).unwrap().quadratic_extension().unwrap(),
            Gf::binary(2).unwrap().quadratic_extension().unwrap(),
            Gf::prime(5).unwrap().quadratic_extension().unwrap(),
        ] {
            check_field_axioms(&f);
        }
    }

    #[test]
    fn every_binary_modulus_is_primitive() {
        for e in 2..=16 {
            let f = Gf::binary(e).unwrap();
            assert_eq!(f.size(), 1 << e);
        }
    }

    #[test]
    fn binary_square_roots_exhaustive() {
        for e in 2..=4 {
            let f = Gf::binary(e).unwrap();
            for x in f.elements() {
                let r = f.sqrt(&x).unwrap();
                assert_eq!(f.mul(&r, &r), x);
            }
        }
    }

    #[test]
    fn odd_square_roots() {
        for f in [
            Gf::prime(101).unwrap(),
            Gf::prime(13).unwrap(),
            Gf::prime(3).unwrap().quadratic_extension().unwrap(),
        ] {
            let mut squares = 0;
            for x in f.elements() {
                if let Some(r) = f.sqrt(&x) {
                    assert_eq!(f.mul(&r, &r), x);
                    squares += 1;
                }
            }
            assert_eq!(squares, (f.size() + 1) / 2);
        }
    }

    #[test]
    fn base_elements_become_squares_in_the_extension() {
        let f = Gf::prime(7).unwrap();
        let e = f.quadratic_extension().unwrap();
        for x in f.elements() {
            let r = e.sqrt(&f.embed(&e, &x)).unwrap();
            assert_eq!(e.mul(&r, &r), x);
        }
        let b = Gf::binary(3).unwrap();
        let be = b.quadratic_extension().unwrap();
        for c in b.elements() {
            let z = be.artin_schreier_root(&c).unwrap();
            assert_eq!(be.add(&be.mul(&z, &z), &z), c);
        }
    }

    #[test]
    fn artin_schreier_solvable_iff_trace_zero() {
        let f = Gf::binary(4).unwrap();
        for c in f.elements() {
            let root = f.artin_schreier_root(&c);
            assert_eq!(root.is_some(), f.trace2(c) == 0);
            if let Some(z) = root {
                assert_eq!(f.add(&f.mul(&z, &z), &z), c);
            }
        }
    }

    #[test]
    fn parse_rejects_out_of_range_bit_patterns() {
        let f = Gf::binary(2).unwrap();
        assert_eq!(f.parse_elem("3").unwrap(), 3);
        assert!(f.parse_elem("4").is_err());
        let p = Gf::prime(5).unwrap();
        assert_eq!(p.parse_elem("12").unwrap(), 2);
    }
}
