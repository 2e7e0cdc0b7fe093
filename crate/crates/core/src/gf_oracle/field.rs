//! GF(p^k) in a polynomial basis over GF(p).

use std::fmt;

use crate::numth::{is_prime, mod_pow, mul_mod, prime_factors};

use super::OracleError;

/// Largest field the oracle will construct.
pub const MAX_FIELD_SIZE: u64 = 100_000_000;

/// Coefficients over GF(p), lowest degree first, length `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    k: usize,
    /// Monic, degree `k`, lowest degree first (length `k + 1`).
    modulus: Vec<u64>,
    order: u64,
}

/// Builds GF(p^k) using the smallest monic irreducible of degree `k`, where
/// candidates `x^k + c_{k-1}x^{k-1} + … + c_0` are compared on the tuple
/// `(c_0, c_1, …, c_{k-1})`.
pub fn build_field(p: u64, k: usize) -> Result<FieldSpec, OracleError> {
    if !is_prime(p) {
        return Err(OracleError::NotPrime(p));
    }
    if k == 0 {
        return Err(OracleError::ZeroDegree);
    }
    let order = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if order > MAX_FIELD_SIZE as u128 {
        return Err(OracleError::FieldTooLarge { p, k });
    }
    let order = order as u64;
    for idx in 0..order {
        // c_0 is the most significant digit of idx
        let mut tail = vec![0u64; k];
        let mut rest = idx;
        for slot in tail.iter_mut().rev() {
            *slot = rest % p;
            rest /= p;
        }
        let mut modulus = tail;
        modulus.push(1);
        if is_irreducible(&modulus, p) {
            return Ok(FieldSpec {
                p,
                k,
                modulus,
                order,
            });
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of elements, `p^k`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.k],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_base(1)
    }

    pub fn from_base(&self, c: u64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = c % self.p;
        e
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        let mut e = self.zero();
        let reduced = fp_rem(
            &trim(coeffs.iter().map(|c| c % self.p).collect()),
            &self.modulus,
            self.p,
        );
        e.coeffs[..reduced.len()].copy_from_slice(&reduced);
        e
    }

    /// Element whose base-`p` digits (least significant first) are its coefficients.
    pub fn element(&self, mut index: u64) -> FieldElement {
        debug_assert!(index < self.order);
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = index % self.p;
            index /= self.p;
        }
        e
    }

    pub fn index_of(&self, e: &FieldElement) -> u64 {
        e.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        let k = self.k;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        // reduce by the monic modulus from the top down
        for top in (k..prod.len()).rev() {
            let lead = prod[top];
            if lead == 0 {
                continue;
            }
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let idx = top - k + i;
                prod[idx] = (prod[idx] + p - mul_mod(lead, m, p)) % p;
            }
            prod[top] = 0;
        }
        prod.truncate(k);
        FieldElement { coeffs: prod }
    }

    pub fn pow(&self, a: &FieldElement, mut exp: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        (!a.is_zero()).then(|| self.pow(a, self.order - 2))
    }

    /// `a^(p^times)`.
    pub fn frobenius(&self, a: &FieldElement, times: u32) -> FieldElement {
        (0..times).fold(a.clone(), |acc, _| self.pow(&acc, self.p))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: &FieldElement) -> u64 {
        let mut order = self.order - 1;
        for r in prime_factors(order) {
            while order.is_multiple_of(r) && self.pow(a, order / r) == self.one() {
                order /= r;
            }
        }
        order
    }

    /// First element, in index order, that generates the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        let group = self.order - 1;
        let factors = prime_factors(group);
        let one = self.one();
        (1..self.order)
            .map(|i| self.element(i))
            .find(|g| factors.iter().all(|&r| self.pow(g, group / r) != one))
            .expect("the multiplicative group of a finite field is cyclic")
    }
}

// Dense polynomials over GF(p), lowest degree first, no trailing zeros.

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let inv_lead = mod_pow(m[dm], p - 2, p);
    while r.len() > dm {
        let top = r.len() - 1;
        let factor = mul_mod(r[top], inv_lead, p);
        if factor != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = top - dm + i;
                r[idx] = (r[idx] + p - mul_mod(factor, c, p)) % p;
            }
        }
        r.pop();
        r = trim(r);
    }
    trim(r)
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    fp_rem(&trim(prod), m, p)
}

fn fp_powmod(a: &[u64], mut exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = fp_rem(a, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fp_mulmod(&acc, &base, m, p);
        }
        base = fp_mulmod(&base, &base, m, p);
        exp >>= 1;
    }
    acc
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

/// Rabin's test for a monic polynomial over GF(p).
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // x^(p^i) mod f for i = 0..=k
    let mut frob = vec![fp_rem(&x, f, p)];
    for i in 1..=k {
        let next = fp_powmod(&frob[i - 1], p, f, p);
        frob.push(next);
    }
    if !fp_sub(&frob[k], &x, p).is_empty() {
        return false;
    }
    for r in prime_factors(k as u64) {
        let h = fp_sub(&frob[k / r as usize], &x, p);
        if fp_gcd(f, &h, p).len() != 1 {
            return false;
        }
    }
    true
}
