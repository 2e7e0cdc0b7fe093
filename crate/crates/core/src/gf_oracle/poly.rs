use std::fmt;

use super::field::{FieldElement, FieldSpec};

/// Polynomial over a [`FieldSpec`], lowest degree first. The zero polynomial
/// has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one(field: &FieldSpec) -> Self {
        Self {
            coeffs: vec![field.one()],
        }
    }

    /// `x - root`.
    pub fn linear(field: &FieldSpec, root: &FieldElement) -> Self {
        Self {
            coeffs: vec![field.neg(root), field.one()],
        }
    }

    /// `x^n + 1`.
    pub fn x_pow_plus_one(field: &FieldSpec, n: usize) -> Self {
        let mut coeffs = vec![field.zero(); n + 1];
        coeffs[0] = field.add(&coeffs[0], &field.one());
        coeffs[n] = field.add(&coeffs[n], &field.one());
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self, field: &FieldSpec) -> bool {
        self.coeffs.last() == Some(&field.one())
    }

    pub fn mul(&self, other: &Self, field: &FieldSpec) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Self::from_coeffs(out)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Self, field: &FieldSpec) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = field
            .inv(&divisor.coeffs[dd])
            .expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![field.zero(); rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let factor = field.mul(&rem[top], &lead_inv);
            if factor.is_zero() {
                continue;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = field.sub(&rem[idx], &field.mul(&factor, c));
            }
            quot[top - dd] = factor;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn eval(&self, x: &FieldElement, field: &FieldSpec) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}
