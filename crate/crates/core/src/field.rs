//! Table-driven arithmetic in GF(q) for prime powers `q <= 256`.
//!
//! An element is encoded as the integer `sum c_i p^i`, where `c_i` is the
//! coefficient of `x^i` in its polynomial representative. For `q = p^d` with
//! `d > 1` the modulus is the monic irreducible of degree `d` whose low
//! coefficients, read as that same base-`p` integer, are smallest.

use crate::error::{Error, Result};

/// Returns `(p, d)` with `q = p^d`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut d = 0;
    while rest % p == 0 {
        rest /= p;
        d += 1;
    }
    (rest == 1).then_some((p, d))
}

/// Polynomials over GF(p) as little-endian coefficient vectors.
mod poly {
    pub fn trim(mut v: Vec<u32>) -> Vec<u32> {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        v
    }

    pub fn degree(v: &[u32]) -> usize {
        v.iter().rposition(|&c| c != 0).unwrap_or(0)
    }

    pub fn is_zero(v: &[u32]) -> bool {
        v.iter().all(|&c| c == 0)
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    fn inv_mod(x: u32, p: u32) -> u32 {
        (1..p).find(|&y| x * y % p == 1).expect("nonzero element of GF(p)")
    }

    /// Remainder of `a` modulo a nonzero `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let dm = degree(m);
        let lead_inv = inv_mod(m[dm], p);
        while !is_zero(&r) && degree(&r) >= dm {
            let dr = degree(&r);
            let f = r[dr] * lead_inv % p;
            for i in 0..=dm {
                let sub = f * m[i] % p;
                r[dr - dm + i] = (r[dr - dm + i] + p - sub) % p;
            }
            r = trim(r);
        }
        r
    }

    /// Base-`p` digits of `code`, `len` of them.
    pub fn digits(mut code: u32, p: u32, len: usize) -> Vec<u32> {
        (0..len)
            .map(|_| {
                let d = code % p;
                code /= p;
                d
            })
            .collect()
    }

    pub fn encode(v: &[u32], p: u32) -> u32 {
        v.iter().rev().fold(0, |acc, &c| acc * p + c)
    }
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = poly::degree(modulus);
    for dd in 1..=deg / 2 {
        for low in 0..p.pow(dd as u32) {
            let mut divisor = poly::digits(low, p, dd);
            divisor.push(1);
            if poly::is_zero(&poly::rem(modulus, &divisor, p)) {
                return false;
            }
        }
    }
    true
}

/// Verified addition and multiplication tables for GF(q).
#[derive(Clone, Debug)]
pub struct FieldTable {
    q: u32,
    p: u32,
    degree: u32,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl FieldTable {
    pub fn new(q: u32) -> Result<Self> {
        if q > 256 {
            return Err(Error::param(format!("field order {q} exceeds 256")));
        }
        let (p, degree) = prime_power(q)
            .ok_or_else(|| Error::param(format!("{q} is not a prime power")))?;
        let d = degree as usize;
        let modulus = if degree == 1 {
            vec![0, 1]
        } else {
            (0..p.pow(degree))
                .map(|low| {
                    let mut m = poly::digits(low, p, d);
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible(m, p))
                .expect("an irreducible polynomial exists in every degree")
        };
        if !is_irreducible(&modulus, p) {
            return Err(Error::verify("modulus is reducible"));
        }

        let n = q as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        let elems: Vec<Vec<u32>> = (0..q).map(|e| poly::digits(e, p, d)).collect();
        for a in 0..n {
            for b in 0..n {
                let sum: Vec<u32> = elems[a]
                    .iter()
                    .zip(&elems[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * n + b] = poly::encode(&sum, p) as u8;
                let prod = if degree == 1 {
                    vec![(a as u32 * b as u32) % p]
                } else {
                    poly::rem(&poly::mul(&elems[a], &elems[b], p), &modulus, p)
                };
                mul[a * n + b] = poly::encode(&prod, p) as u8;
            }
        }

        let mut neg = vec![0u8; n];
        let mut inv = vec![0u8; n];
        for a in 0..n {
            neg[a] = (0..n)
                .find(|&b| add[a * n + b] == 0)
                .ok_or_else(|| Error::verify(format!("{a} has no additive inverse")))?
                as u8;
            if a != 0 {
                inv[a] = (1..n)
                    .find(|&b| mul[a * n + b] == 1)
                    .ok_or_else(|| Error::verify(format!("{a} has no multiplicative inverse")))?
                    as u8;
            }
        }

        let table = FieldTable {
            q,
            p,
            degree,
            modulus,
            add,
            mul,
            neg,
            inv,
        };
        table.check_commutative_identity()?;
        Ok(table)
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Little-endian coefficients of the monic modulus.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    fn idx(&self, a: u8, b: u8) -> usize {
        a as usize * self.q as usize + b as usize
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[self.idx(a, b)]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[self.idx(a, b)]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: u8) -> Result<u8> {
        if a == 0 {
            return Err(Error::param("zero has no multiplicative inverse"));
        }
        Ok(self.inv[a as usize])
    }

    pub fn pow(&self, a: u8, mut e: u32) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.q).map(|e| e as u8)
    }

    fn check_commutative_identity(&self) -> Result<()> {
        for a in self.elements() {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(Error::verify(format!("identity fails at {a}")));
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::verify(format!("commutativity fails at ({a},{b})")));
                }
            }
        }
        Ok(())
    }

    /// Exhaustive associativity and distributivity check, `O(q^3)`.
    pub fn check_axioms(&self) -> Result<()> {
        self.check_commutative_identity()?;
        for a in self.elements() {
            for b in self.elements() {
                let ab = self.add(a, b);
                let mab = self.mul(a, b);
                for c in self.elements() {
                    if self.add(ab, c) != self.add(a, self.add(b, c)) {
                        return Err(Error::verify(format!("(a+b)+c fails at ({a},{b},{c})")));
                    }
                    if self.mul(mab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::verify(format!("(ab)c fails at ({a},{b},{c})")));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(mab, self.mul(a, c)) {
                        return Err(Error::verify(format!("a(b+c) fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Builds and verifies GF(q).
pub fn field_make(q: u32) -> Result<FieldTable> {
    FieldTable::new(q)
}
