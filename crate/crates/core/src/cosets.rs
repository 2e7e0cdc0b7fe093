//! q²-cyclotomic cosets over the odd residues modulo 2n, and the `x ↦ -q·x`
//! map between them.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numth::{gcd, mul_mod, PrimePower};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosetError {
    #[error("code length must be positive")]
    ZeroLength,
    #[error("q = {q} must be odd and coprime to n = {n}")]
    NotCoprime { n: u64, q: u64 },
    #[error("residue {0} is even; negacyclic roots have odd exponents")]
    EvenResidue(u64),
    #[error("residue {residue} is out of range for modulus {two_n}")]
    OutOfRange { residue: u64, two_n: u64 },
}

/// Length `n` and field base `q` for a negacyclic code over GF(q²).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CosetContext {
    n: u64,
    q: u64,
    field: Option<PrimePower>,
    two_n: u64,
    q_sq: u64,
}

impl CosetContext {
    pub fn new(n: u64, q: PrimePower) -> Result<Self, CosetError> {
        let mut ctx = Self::with_raw_q(n, q.q())?;
        ctx.field = Some(q);
        Ok(ctx)
    }

    /// Builds a context from an odd `q` that need not be a prime power.
    ///
    /// Only the residue combinatorics are meaningful for such a context; the
    /// finite-field oracle refuses it.
    pub fn with_raw_q(n: u64, q: u64) -> Result<Self, CosetError> {
        if n == 0 {
            return Err(CosetError::ZeroLength);
        }
        let two_n = 2 * n;
        if gcd(q, two_n) != 1 {
            return Err(CosetError::NotCoprime { n, q });
        }
        Ok(Self {
            n,
            q,
            field: None,
            two_n,
            q_sq: mul_mod(q, q, two_n),
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn field(&self) -> Option<PrimePower> {
        self.field
    }

    pub fn two_n(&self) -> u64 {
        self.two_n
    }

    /// `n / 2`, defined only for even `n`.
    pub fn s(&self) -> Option<u64> {
        self.n.is_multiple_of(2).then_some(self.n / 2)
    }

    fn check_residue(&self, i: u64) -> Result<(), CosetError> {
        if i >= self.two_n {
            return Err(CosetError::OutOfRange {
                residue: i,
                two_n: self.two_n,
            });
        }
        if i.is_multiple_of(2) {
            return Err(CosetError::EvenResidue(i));
        }
        Ok(())
    }

    /// `(2n - q·x) mod 2n`.
    #[inline]
    pub fn neg_q(&self, x: u64) -> u64 {
        let qx = mul_mod(self.q, x, self.two_n);
        (self.two_n - qx) % self.two_n
    }

    /// Reduces a signed exponent into `0..2n`.
    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.two_n as i64) as u64
    }
}

/// A sorted, duplicate-free set of residues.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ResidueSet(Vec<u64>);

impl ResidueSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn from_unsorted(mut v: Vec<u64>) -> Self {
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self(out)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        Self(out)
    }

    pub fn difference(&self, other: &Self) -> Self {
        let b = &other.0;
        let mut out = Vec::new();
        let mut j = 0;
        for &x in &self.0 {
            while j < b.len() && b[j] < x {
                j += 1;
            }
            if j >= b.len() || b[j] != x {
                out.push(x);
            }
        }
        Self(out)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }
}

impl FromIterator<u64> for ResidueSet {
    fn from_iter<T: IntoIterator<Item = u64>>(iter: T) -> Self {
        Self::from_unsorted(iter.into_iter().collect())
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, x) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// One orbit of multiplication by q² on the odd residues modulo 2n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclotomicCoset {
    representative: u64,
    elements: ResidueSet,
}

impl CyclotomicCoset {
    /// Smallest member.
    pub fn representative(&self) -> u64 {
        self.representative
    }

    pub fn elements(&self) -> &ResidueSet {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.contains(x)
    }
}

impl fmt::Display for CyclotomicCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{}={}", self.representative, self.elements)
    }
}

fn orbit(ctx: &CosetContext, i: u64) -> Vec<u64> {
    let mut out = vec![i];
    let mut x = mul_mod(i, ctx.q_sq, ctx.two_n);
    while x != i {
        out.push(x);
        x = mul_mod(x, ctx.q_sq, ctx.two_n);
    }
    out
}

pub fn coset(ctx: &CosetContext, i: u64) -> Result<CyclotomicCoset, CosetError> {
    ctx.check_residue(i)?;
    let elements = ResidueSet::from_unsorted(orbit(ctx, i));
    Ok(CyclotomicCoset {
        representative: elements.as_slice()[0],
        elements,
    })
}

/// Partition of the odd residues modulo 2n into cosets, sorted by representative.
pub fn all_cosets(ctx: &CosetContext) -> Vec<CyclotomicCoset> {
    let mut seen = vec![false; ctx.two_n as usize];
    let mut out = Vec::new();
    for i in (1..ctx.two_n).step_by(2) {
        if seen[i as usize] {
            continue;
        }
        let members = orbit(ctx, i);
        for &x in &members {
            seen[x as usize] = true;
        }
        let elements = ResidueSet::from_unsorted(members);
        out.push(CyclotomicCoset {
            representative: elements.as_slice()[0],
            elements,
        });
    }
    out
}

/// Elementwise image under `x ↦ (2n - q·x) mod 2n`.
pub fn neg_q_image(ctx: &CosetContext, set: &ResidueSet) -> ResidueSet {
    set.iter().map(|x| ctx.neg_q(x)).collect()
}

/// The coset `-q·C`. Multiplication by `-q` commutes with multiplication by
/// q², so the image of a coset is again a whole coset.
pub fn neg_q_coset_image(ctx: &CosetContext, c: &CyclotomicCoset) -> CyclotomicCoset {
    let elements = neg_q_image(ctx, c.elements());
    CyclotomicCoset {
        representative: elements.as_slice()[0],
        elements,
    }
}

/// True when the cosets are exactly `{s}`, `{3s}` and pairs `{x, y}` with
/// `x + y ≡ 2s (mod 2n)`, where `s = n/2`.
pub fn is_paired_partition(ctx: &CosetContext) -> bool {
    let Some(s) = ctx.s() else {
        return false;
    };
    let two_n = ctx.two_n;
    let mut singles = Vec::new();
    for c in all_cosets(ctx) {
        match c.elements().as_slice() {
            [x] => singles.push(*x),
            [x, y] if (x + y) % two_n == (2 * s) % two_n => {}
            _ => return false,
        }
    }
    singles.sort_unstable();
    let mut expected = vec![s % two_n, (3 * s) % two_n];
    expected.sort_unstable();
    expected.dedup();
    singles == expected
}
