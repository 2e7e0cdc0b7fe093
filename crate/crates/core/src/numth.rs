//! Elementary number theory on `u64`.
//!
//! Every modular product goes through [`mul_mod`], which widens to `u128`, so
//! results are exact for any modulus that fits in a `u64` (in particular for
//! all moduli below 2^40 used by the coset machinery).

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumthError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is too small to be a field size (need q >= 2)")]
    TooSmall(u64),
    #[error("gcd({base}, {modulus}) != 1, multiplicative order undefined")]
    NotCoprime { base: u64, modulus: u64 },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
}

/// A field size `q = p^e` with `p` prime and `e >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    q: u64,
    p: u64,
    e: u32,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self, NumthError> {
        factor_prime_power(q)
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn is_odd(&self) -> bool {
        self.p != 2
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e == 1 {
            write!(f, "{}", self.q)
        } else {
            write!(f, "{}^{}", self.p, self.e)
        }
    }
}

/// Splits `q` as `p^e`, or fails if `q` has two distinct prime factors.
pub fn factor_prime_power(q: u64) -> Result<PrimePower, NumthError> {
    if q < 2 {
        return Err(NumthError::TooSmall(q));
    }
    let p = smallest_prime_factor(q);
    let mut rest = q;
    let mut e = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(NumthError::NotPrimePower(q));
    }
    Ok(PrimePower { q, p, e })
}

fn smallest_prime_factor(n: u64) -> u64 {
    debug_assert!(n >= 2);
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

/// Distinct prime factors of `n` in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 1 {
        let p = smallest_prime_factor(n);
        out.push(p);
        while n.is_multiple_of(p) {
            n /= p;
        }
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[inline]
pub fn mul_mod(a: u64, b: u64, modulus: u64) -> u64 {
    debug_assert!(modulus >= 1);
    ((a as u128 * b as u128) % modulus as u128) as u64
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    debug_assert!(modulus >= 1);
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, modulus);
        }
        b = mul_mod(b, b, modulus);
        exp >>= 1;
    }
    acc
}

/// Euler's totient via trial-division factorisation.
pub fn totient(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// Smallest `t >= 1` with `base^t = 1 (mod modulus)`.
///
/// Starts from the totient and strips prime factors while the power stays 1.
pub fn mult_order(base: u64, modulus: u64) -> Result<u64, NumthError> {
    if modulus < 2 {
        return Err(NumthError::BadModulus(modulus));
    }
    if gcd(base % modulus, modulus) != 1 {
        return Err(NumthError::NotCoprime { base, modulus });
    }
    let mut order = totient(modulus);
    for p in prime_factors(order) {
        while order.is_multiple_of(p) && mod_pow(base, order / p, modulus) == 1 {
            order /= p;
        }
    }
    Ok(order)
}
