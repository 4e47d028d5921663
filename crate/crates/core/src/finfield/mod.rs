//! Exact arithmetic in GF(p) and GF(p^e).
//!
//! An element of GF(p^e) is a polynomial of degree < e over GF(p), reduced
//! modulo a fixed monic irreducible. It is stored packed as the integer
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`, which is a bijection with the
//! coefficient vector, so equality and hashing are coefficient-wise. The
//! derived `Ord` on the packed value is the total order used everywhere a
//! canonical choice between field elements is needed: coefficient vectors
//! compared lexicographically from the top-degree coefficient down.

pub mod poly;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on `p^e` for a constructed field.
pub const FIELD_ORDER_CAP: u64 = 1 << 20;

/// An element of a finite field, packed base-`p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Packed index in `[0, q)`.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Context for GF(p^e). Immutable once built.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    e: u32,
    q: u32,
    /// Monic irreducible, low degree first, length `e + 1`.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a fixed primitive element `g`, `i < q - 1`.
    exp: Vec<u32>,
    /// Discrete logarithm base `g`; `log[0]` is unused.
    log: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^e`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

/// Builds GF(p^e) using the lexicographically smallest monic irreducible of
/// degree `e` (lower coefficients compared from degree `e - 1` down).
pub fn make_field(p: u32, e: u32) -> Result<FieldCtx> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if e < 1 {
        return Err(Error::InvalidField("extension degree must be at least 1".into()));
    }
    let order = (p as u64).checked_pow(e).filter(|&q| q <= FIELD_ORDER_CAP);
    let Some(q) = order else {
        return Err(Error::CapExceeded {
            what: "field order",
            limit: FIELD_ORDER_CAP,
            requested: (p as u64).saturating_pow(e),
        });
    };
    if e == 1 {
        return Ok(FieldCtx::with_modulus(p, 1, vec![0, 1]));
    }
    let prime = FieldCtx::with_modulus(p, 1, vec![0, 1]);
    // Candidate lower coefficients enumerated by packed value, which is the
    // lexicographic order from the degree e-1 coefficient down.
    for lower in 0..q as u32 {
        let mut modulus = unpack(lower, p, e);
        modulus.push(1);
        if modulus[0] == 0 {
            continue;
        }
        let f: Vec<FieldElement> = modulus.iter().map(|&c| FieldElement(c)).collect();
        if poly::is_irreducible(&prime, &f) {
            return Ok(FieldCtx::with_modulus(p, e, modulus));
        }
    }
    unreachable!("an irreducible of every degree exists over GF(p)")
}

fn unpack(mut v: u32, p: u32, e: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(e as usize + 1);
    for _ in 0..e {
        out.push(v % p);
        v /= p;
    }
    out
}

fn pack(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl FieldCtx {
    fn with_modulus(p: u32, e: u32, modulus: Vec<u32>) -> FieldCtx {
        let q = p.pow(e);
        let mut ctx = FieldCtx {
            p,
            e,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        ctx.build_log_tables();
        ctx
    }

    fn build_log_tables(&mut self) {
        let n = (self.q - 1) as usize;
        for cand in 1..self.q {
            let g = FieldElement(cand);
            let mut exp = Vec::with_capacity(n);
            let mut x = FieldElement::ONE;
            let mut primitive = true;
            for i in 0..n {
                if i > 0 && x == FieldElement::ONE {
                    primitive = false;
                    break;
                }
                exp.push(x.0);
                x = self.mul_by_reduction(x, g);
            }
            if primitive {
                let mut log = vec![0u32; self.q as usize];
                for (i, &v) in exp.iter().enumerate() {
                    log[v as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    /// Schoolbook product followed by reduction modulo the irreducible.
    pub(crate) fn mul_by_reduction(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p as u64;
        let e = self.e as usize;
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for deg in (e..prod.len()).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &m) in self.modulus[..e].iter().enumerate() {
                let idx = deg - e + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        let reduced: Vec<u32> = prod[..e].iter().map(|&c| c as u32).collect();
        FieldElement(pack(&reduced, self.p))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// The defining irreducible, low degree first (monic, length `e + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The primitive element used for the log tables.
    pub fn generator(&self) -> FieldElement {
        FieldElement(if self.q == 2 { 1 } else { self.exp[1] })
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.q {
            Ok(FieldElement(index))
        } else {
            Err(Error::InvalidElement(format!("{index} is not an element of GF({})", self.q)))
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidElement(format!("bad coefficient vector {coeffs:?}")));
        }
        Ok(FieldElement(pack(coeffs, self.p)))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    /// Coefficient vector of length `e`, low degree first.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        unpack(a.0, self.p, self.e)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.e == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.e == 1 {
            return FieldElement((self.p - a.0) % self.p);
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = self.q - 1;
        let s = (self.log[a.0 as usize] + self.log[b.0 as usize]) % n;
        FieldElement(self.exp[s as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(FieldElement(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        if k == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        FieldElement(self.exp[((l * (k % n)) % n) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FieldElement) -> Option<u32> {
        if a.0 == 0 {
            return None;
        }
        let n = self.q - 1;
        let l = self.log[a.0 as usize];
        Some(n / gcd(n, l))
    }

    pub fn is_square(&self, a: FieldElement) -> bool {
        a.0 == 0 || self.p == 2 || self.log[a.0 as usize].is_multiple_of(2)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent irreducibility oracle: no roots, and for degree <= 3 that
    /// is equivalent to irreducibility.
    fn has_root(p: u32, f: &[u32]) -> bool {
        (0..p).any(|x| {
            f.iter()
                .rev()
                .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64)
                == 0
        })
    }

    #[test]
    fn prime_field_modulus_and_order() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(f.order(), 5);
        assert_eq!(f.characteristic(), 5);
    }

    #[test]
    fn quadratic_moduli_are_smallest_rootless() {
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        for (p, e) in [(2u32, 2u32), (2, 3), (3, 2), (3, 3), (5, 2), (7, 2), (11, 2)] {
            let chosen = make_field(p, e).unwrap().modulus().to_vec();
            let first = (0..p.pow(e))
                .map(|v| {
                    let mut m = unpack(v, p, e);
                    m.push(1);
                    m
                })
                .find(|m| !has_root(p, m))
                .unwrap();
            assert_eq!(chosen, first, "p={p} e={e}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(make_field(4, 1), Err(Error::InvalidField(_))));
        assert!(matches!(make_field(5, 0), Err(Error::InvalidField(_))));
        assert!(matches!(make_field(2, 21), Err(Error::CapExceeded { .. })));
        assert!(make_field(2, 20).is_ok());
    }

    #[test]
    fn small_examples() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(f.add(f.from_int(2), f.from_int(4)), f.from_int(1));
        assert_eq!(f.inv(f.one()).unwrap(), f.one());
        assert!(matches!(f.inv(f.zero()), Err(Error::DivisionByZero)));

        let g4 = make_field(2, 2).unwrap();
        let x = g4.from_coeffs(&[0, 1]).unwrap();
        let x_plus_1 = g4.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(g4.mul(x, x), x_plus_1);
        assert_eq!(g4.mul_by_reduction(x, x), x_plus_1);
    }

    #[test]
    fn table_mul_matches_reduction() {
        for (p, e) in [(2, 4), (3, 2), (5, 2), (7, 2), (3, 3)] {
            let f = make_field(p, e).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_by_reduction(a, b));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_up_to_121() {
        for q in 2..=121u64 {
            let Some((p, e)) = prime_power(q) else { continue };
            let f = make_field(p, e).unwrap();
            for a in f.elements() {
                assert_eq!(f.pow(a, q), a, "Frobenius in GF({q})");
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                    assert_eq!(f.pow(a, q - 1), f.one());
                    assert_eq!((q as u32 - 1) % f.mult_order(a).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
