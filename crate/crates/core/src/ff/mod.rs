//! Exact arithmetic in GF(p^e) backed by discrete exp/log tables.
//!
//! Elements are packed as base-p digit vectors (constant coefficient in the
//! least significant digit), so a field of order q uses the codes `0..q`.
//! Code 0 is zero and code 1 is one.

pub mod factor;
pub mod poly;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use factor::factorize;

/// Default upper bound on the number of field elements.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 24;

const LOG_ZERO: u32 = u32::MAX;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub u32);

impl Element {
    pub const ZERO: Element = Element(0);
    pub const ONE: Element = Element(1);

    pub fn code(self) -> u32 {
        self.0
    }
}

impl std::fmt::Display for Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u64,
    pub e: u32,
    /// Monic modulus, constant coefficient first; length e + 1.
    pub modulus: Vec<u64>,
}

/// Serializable identity of a built field: `{p, e, modulus, g}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub e: u32,
    pub modulus: Vec<u64>,
    pub g: Element,
}

/// GF(p^e) with a fixed primitive root `g` and its exp/log tables.
///
/// Immutable after construction.
#[derive(Clone, Debug)]
pub struct FieldTable {
    params: FieldParams,
    order: u64,
    g: Element,
    exp: Vec<u32>,
    log: Vec<u32>,
    place: Vec<u64>,
}

fn checked_order(p: u64, e: u32, cap: u64) -> Result<u64> {
    let cap = cap.min(u32::MAX as u64);
    match p.checked_pow(e) {
        Some(q) if q <= cap => Ok(q),
        _ => Err(Error::CapExceeded { p, e, cap }),
    }
}

fn validate_prime(p: u64) -> Result<()> {
    if p % 2 == 0 {
        return Err(Error::EvenP(p));
    }
    if !factor::is_prime(p) {
        return Err(Error::NonPrimeP(p));
    }
    Ok(())
}

/// Builds GF(p^e) under [`DEFAULT_FIELD_CAP`].
pub fn build_field(p: u64, e: u32) -> Result<FieldTable> {
    build_field_with_cap(p, e, DEFAULT_FIELD_CAP)
}

/// Builds GF(p^e) with the lexicographically smallest monic irreducible
/// modulus and the primitive root of smallest code.
pub fn build_field_with_cap(p: u64, e: u32, cap: u64) -> Result<FieldTable> {
    validate_prime(p)?;
    if e == 0 {
        return Err(Error::InvalidConfig("field degree must be at least 1".into()));
    }
    let order = checked_order(p, e, cap)?;
    let modulus = poly::smallest_irreducible(p, e);
    let place: Vec<u64> = (0..e).map(|i| p.pow(i)).collect();

    let decode = |code: u64| -> Vec<u64> { (0..e).map(|i| code / place[i as usize] % p).collect() };
    let group = order - 1;
    let cofactors: Vec<u64> = factor::prime_divisors(group).into_iter().map(|l| group / l).collect();
    let one = poly::rem(&[1], &modulus, p);
    let g_code = (2..order)
        .find(|&c| {
            let cand = decode(c);
            cofactors.iter().all(|&k| poly::pow_mod(&cand, k, &modulus, p) != one)
        })
        .expect("the multiplicative group of a finite field is cyclic");

    let g_digits = decode(g_code);
    let mut exp = Vec::with_capacity(group as usize);
    let mut log = vec![LOG_ZERO; order as usize];
    let mut cur = vec![0u64; e as usize];
    cur[0] = 1;
    let mut scratch = vec![0u64; 2 * e as usize];
    for k in 0..group {
        let code: u64 = cur.iter().zip(&place).map(|(c, w)| c * w).sum();
        exp.push(code as u32);
        debug_assert_eq!(log[code as usize], LOG_ZERO);
        log[code as usize] = k as u32;
        mul_mod_into(&cur, &g_digits, &modulus, p, &mut scratch);
        cur.copy_from_slice(&scratch[..e as usize]);
    }
    debug_assert!(cur[0] == 1 && cur[1..].iter().all(|&c| c == 0));

    Ok(FieldTable {
        params: FieldParams { p, e, modulus },
        order,
        g: Element(g_code as u32),
        exp,
        log,
        place,
    })
}

/// Fixed-width product of two reduced digit vectors modulo a monic `f`.
/// On return `out[..e]` holds the reduced product.
fn mul_mod_into(a: &[u64], b: &[u64], f: &[u64], p: u64, out: &mut [u64]) {
    let e = a.len();
    out.iter_mut().for_each(|c| *c = 0);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    for top in (e..2 * e - 1).rev() {
        let c = out[top];
        if c == 0 {
            continue;
        }
        for i in 0..=e {
            let idx = top - e + i;
            out[idx] = (out[idx] + p - c * f[i] % p) % p;
        }
    }
}

impl FieldTable {
    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    pub fn p(&self) -> u64 {
        self.params.p
    }

    pub fn degree(&self) -> u32 {
        self.params.e
    }

    /// Number of elements q = p^e.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generator(&self) -> Element {
        self.g
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.params.p,
            e: self.params.e,
            modulus: self.params.modulus.clone(),
            g: self.g,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.order as u32).map(Element)
    }

    pub fn contains(&self, a: Element) -> bool {
        (a.0 as u64) < self.order
    }

    /// `g^k` for `0 <= k < q - 1`.
    pub fn exp(&self, k: u64) -> Element {
        Element(self.exp[(k % (self.order - 1)) as usize])
    }

    /// Discrete log to base `g`; `None` for zero.
    pub fn log(&self, a: Element) -> Option<u64> {
        match self.log[a.0 as usize] {
            LOG_ZERO => None,
            k => Some(k as u64),
        }
    }

    #[inline]
    pub(crate) fn log_raw(&self, a: Element) -> u32 {
        self.log[a.0 as usize]
    }

    pub fn digits(&self, a: Element) -> Vec<u64> {
        let p = self.params.p;
        self.place.iter().map(|w| a.0 as u64 / w % p).collect()
    }

    pub fn from_digits(&self, digits: &[u64]) -> Element {
        let p = self.params.p;
        let code: u64 = digits.iter().zip(&self.place).map(|(d, w)| (d % p) * w).sum();
        Element(code as u32)
    }

    /// The prime-subfield element `c mod p`.
    pub fn from_int(&self, c: i64) -> Element {
        let p = self.params.p as i64;
        Element(c.rem_euclid(p) as u32)
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        let p = self.params.p;
        if self.params.e == 1 {
            let s = a.0 as u64 + b.0 as u64;
            return Element(if s >= p { s - p } else { s } as u32);
        }
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        for &w in &self.place {
            let s = x % p + y % p;
            out += if s >= p { s - p } else { s } * w;
            x /= p;
            y /= p;
        }
        Element(out as u32)
    }

    #[inline]
    pub fn sub(&self, a: Element, b: Element) -> Element {
        let p = self.params.p;
        if self.params.e == 1 {
            let (x, y) = (a.0 as u64, b.0 as u64);
            return Element(if x >= y { x - y } else { x + p - y } as u32);
        }
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        for &w in &self.place {
            let (dx, dy) = (x % p, y % p);
            out += if dx >= dy { dx - dy } else { dx + p - dy } * w;
            x /= p;
            y /= p;
        }
        Element(out as u32)
    }

    pub fn neg(&self, a: Element) -> Element {
        self.sub(Element::ZERO, a)
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        if a.0 == 0 || b.0 == 0 {
            return Element::ZERO;
        }
        let n = self.order - 1;
        let k = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        Element(self.exp[(k % n) as usize])
    }

    pub fn inv(&self, a: Element) -> Result<Element> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = self.order - 1;
        let k = self.log[a.0 as usize] as u64;
        Ok(Element(self.exp[((n - k) % n) as usize]))
    }

    pub fn div(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k`, with `0^0 = 1`.
    pub fn pow(&self, a: Element, k: u64) -> Element {
        if a.0 == 0 {
            return if k == 0 { Element::ONE } else { Element::ZERO };
        }
        let n = self.order - 1;
        let l = self.log[a.0 as usize] as u128;
        Element(self.exp[((l * k as u128) % n as u128) as usize])
    }

    fn check_divisor(&self, r: u32) -> Result<()> {
        if r == 0 || self.params.e % r != 0 {
            return Err(Error::NotADivisor { r, e: self.params.e });
        }
        Ok(())
    }

    /// Elements of the subfield GF(p^r), ascending by code.
    pub fn subfield_elements(&self, r: u32) -> Result<Vec<Element>> {
        self.check_divisor(r)?;
        let sub_group = self.params.p.pow(r) - 1;
        let step = (self.order - 1) / sub_group;
        let mut out: Vec<Element> = std::iter::once(Element::ZERO)
            .chain((0..sub_group).map(|k| Element(self.exp[(k * step) as usize])))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Whether `a` lies in GF(p^r).
    pub fn in_subfield(&self, a: Element, r: u32) -> Result<bool> {
        self.check_divisor(r)?;
        Ok(match self.log(a) {
            None => true,
            Some(l) => l % ((self.order - 1) / (self.params.p.pow(r) - 1)) == 0,
        })
    }

    /// Smallest `m` with GF(p^r)(theta) = GF(p^(r m)); 1 for theta = 0.
    pub fn degree_over_base(&self, theta: Element, r: u32) -> Result<u32> {
        self.check_divisor(r)?;
        let rel = self.params.e / r;
        let Some(l) = self.log(theta) else {
            return Ok(1);
        };
        let n = (self.order - 1) as u128;
        let l = l as u128;
        for m in factor::divisors(rel as u64) {
            let frob = (self.params.p as u128).pow(r * m as u32) % n;
            if (l * frob) % n == l {
                return Ok(m as u32);
            }
        }
        unreachable!("theta^(p^e) = theta for every element")
    }
}
