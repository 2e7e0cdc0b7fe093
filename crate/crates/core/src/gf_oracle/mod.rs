//! Explicit finite-field ground truth for small instances.
//!
//! The root `β` of order `2n` lives in GF(q^{2t}) with `t` the order of q²
//! modulo 2n. GF(q²) is handled as the subfield fixed by `x ↦ x^{q²}`, so no
//! tower of extensions is needed. Minimum distances are found by exhaustive
//! enumeration over GF(q²) using Zech logarithms.

mod field;
mod poly;

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::cosets::{coset, CosetContext, CyclotomicCoset};
use crate::negacyclic::DefiningSet;
use crate::numth::{mult_order, prime_factors, NumthError, PrimePower};

pub use field::{build_field, FieldElement, FieldSpec, MAX_FIELD_SIZE};
pub use poly::Poly;

/// Codeword evaluations allowed when no budget is given.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("GF({p}^{k}) exceeds the oracle limit of {MAX_FIELD_SIZE} elements")]
    FieldTooLarge { p: u64, k: usize },
    #[error("q = {q} is not coprime to 2n = {two_n}")]
    NotCoprime { q: u64, two_n: u64 },
    #[error("the oracle needs a prime-power field base")]
    NoField,
    #[error("coefficient of the minimal polynomial of C_{rep} lies outside GF(q^2)")]
    SubfieldViolation { rep: u64 },
    #[error("defining set and root disagree on (n, q)")]
    ContextMismatch,
    #[error("enumeration needs {needed} codewords, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("the zero code has no minimum distance")]
    ZeroCode,
    #[error("vectors have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
}

/// A primitive 2n-th root of unity together with its ambient field.
#[derive(Debug, Clone)]
pub struct RootOfUnity {
    field: FieldSpec,
    beta: FieldElement,
    q: PrimePower,
    n: u64,
    t: u64,
}

impl RootOfUnity {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn beta(&self) -> &FieldElement {
        &self.beta
    }

    pub fn q(&self) -> PrimePower {
        self.q
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Order of q² modulo 2n; the ambient field is GF(q^{2t}).
    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn beta_pow(&self, e: u64) -> FieldElement {
        self.field.pow(&self.beta, e % (2 * self.n))
    }

    /// `x^{q²} = x`.
    pub fn in_base_field(&self, x: &FieldElement) -> bool {
        self.field.frobenius(x, 2 * self.q.e()) == *x
    }
}

pub fn primitive_2n_root(q: PrimePower, n: u64) -> Result<RootOfUnity, OracleError> {
    let two_n = 2 * n;
    let q_sq = (q.q() as u128 * q.q() as u128 % two_n as u128) as u64;
    let t = mult_order(q_sq, two_n)
        .map_err(|_: NumthError| OracleError::NotCoprime { q: q.q(), two_n })?;
    let degree = 2 * q.e() as u64 * t;
    let degree = usize::try_from(degree).map_err(|_| OracleError::FieldTooLarge {
        p: q.p(),
        k: usize::MAX,
    })?;
    let field = build_field(q.p(), degree)?;
    let gamma = field.primitive_element();
    let beta = field.pow(&gamma, (field.order() - 1) / two_n);
    Ok(RootOfUnity {
        field,
        beta,
        q,
        n,
        t,
    })
}

/// Builds the root for a coset context; fails if `q` is not a prime power.
pub fn root_for(ctx: &CosetContext) -> Result<RootOfUnity, OracleError> {
    let q = ctx.field().ok_or(OracleError::NoField)?;
    primitive_2n_root(q, ctx.n())
}

/// `Π_{t ∈ C} (x - β^t)`, checked to have all coefficients in GF(q²).
pub fn minimal_polynomial(c: &CyclotomicCoset, root: &RootOfUnity) -> Result<Poly, OracleError> {
    let f = root.field();
    let poly = c.elements().iter().fold(Poly::one(f), |acc, e| {
        acc.mul(&Poly::linear(f, &root.beta_pow(e)), f)
    });
    if poly.coeffs().iter().any(|x| !root.in_base_field(x)) {
        return Err(OracleError::SubfieldViolation {
            rep: c.representative(),
        });
    }
    Ok(poly)
}

pub fn generator_polynomial(z: &DefiningSet, root: &RootOfUnity) -> Result<Poly, OracleError> {
    let ctx = z.ctx();
    if ctx.n() != root.n() || ctx.q() != root.q().q() {
        return Err(OracleError::ContextMismatch);
    }
    let f = root.field();
    let mut g = Poly::one(f);
    for &rep in z.coset_reps() {
        let c = coset(ctx, rep).map_err(|_| OracleError::ContextMismatch)?;
        g = g.mul(&minimal_polynomial(&c, root)?, f);
    }
    Ok(g)
}

/// GF(q²) as `{0} ∪ {η^i}` with Zech-logarithm addition.
///
/// Elements are encoded as `0` for zero and `1 + i` for `η^i`.
#[derive(Debug, Clone)]
pub struct Subfield {
    size: u32,
    group: u32,
    zech: Vec<u32>,
    neg_one: u32,
    lookup: HashMap<u64, u32>,
    elements: Vec<FieldElement>,
}

impl Subfield {
    pub fn new(root: &RootOfUnity) -> Self {
        let f = root.field();
        let q = root.q().q();
        let size = q * q;
        let group = size - 1;
        let gamma = f.primitive_element();
        let eta = f.pow(&gamma, (f.order() - 1) / group);
        let mut elements = Vec::with_capacity(size as usize);
        elements.push(f.zero());
        let mut x = f.one();
        for _ in 0..group {
            elements.push(x.clone());
            x = f.mul(&x, &eta);
        }
        let lookup: HashMap<u64, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (f.index_of(e), i as u32))
            .collect();
        let one = f.one();
        let zech = (0..group)
            .map(|i| lookup[&f.index_of(&f.add(&one, &elements[i as usize + 1]))])
            .collect();
        Self {
            size: size as u32,
            group: group as u32,
            zech,
            // q is odd, so -1 = η^{(q²-1)/2}
            neg_one: 1 + (group / 2) as u32,
            lookup,
            elements,
        }
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn encode(&self, x: &FieldElement, field: &FieldSpec) -> Option<u32> {
        self.lookup.get(&field.index_of(x)).copied()
    }

    pub fn decode(&self, v: u32) -> &FieldElement {
        &self.elements[v as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            1 + ((a - 1 + b - 1) % self.group)
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let (la, lb) = (a - 1, b - 1);
        let diff = (lb + self.group - la) % self.group;
        let z = self.zech[diff as usize];
        if z == 0 {
            0
        } else {
            1 + ((la + z - 1) % self.group)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.mul(a, self.neg_one)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
}

/// Exact minimum distance of the code generated by `g` in GF(q²)[x]/(x^n + 1),
/// by enumerating every message polynomial.
pub fn brute_force_distance(g: &Poly, root: &RootOfUnity, budget: u64) -> Result<u64, OracleError> {
    let n = root.n() as usize;
    let deg = g.degree().expect("generator polynomial is nonzero");
    if deg > n {
        return Err(OracleError::ContextMismatch);
    }
    let k_dim = n - deg;
    if k_dim == 0 {
        return Err(OracleError::ZeroCode);
    }
    if deg == 0 {
        // the whole space: every unit vector is a codeword
        return Ok(1);
    }
    let q_sq = root.q().q() as u128 * root.q().q() as u128;
    let needed = q_sq.checked_pow(k_dim as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(OracleError::BudgetExceeded { needed, budget });
    }
    let sub = Subfield::new(root);
    let f = root.field();
    let gen: Vec<u32> = g
        .coeffs()
        .iter()
        .map(|c| sub.encode(c, f))
        .collect::<Option<_>>()
        .ok_or(OracleError::SubfieldViolation { rep: 0 })?;
    Ok(min_weight(&sub, &gen, n, k_dim))
}

struct Enumerator<'a> {
    sub: &'a Subfield,
    n: usize,
    /// `scaled[v]` = (e_{v+1} - e_v)·g for v < size - 1, and `-e_{size-1}`·g last.
    scaled: Vec<Vec<u32>>,
}

impl Enumerator<'_> {
    /// Adds `delta` (a scaled copy of g) at offset `shift`, updating `weight`.
    fn apply(&self, word: &mut [u32], weight: &mut usize, delta: &[u32], shift: usize) {
        for (t, &d) in delta.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let slot = &mut word[shift + t];
            let before = *slot != 0;
            *slot = self.sub.add(*slot, d);
            let after = *slot != 0;
            match (before, after) {
                (false, true) => *weight += 1,
                (true, false) => *weight -= 1,
                _ => {}
            }
        }
        debug_assert!(shift + delta.len() <= self.n);
    }
}

fn min_weight(sub: &Subfield, gen: &[u32], n: usize, k_dim: usize) -> u64 {
    let size = sub.size();
    let step = |v: u32| -> u32 {
        if v + 1 < size {
            sub.sub(v + 1, v)
        } else {
            sub.neg(v)
        }
    };
    let scaled: Vec<Vec<u32>> = (0..size)
        .map(|v| {
            let c = step(v);
            gen.iter().map(|&x| sub.mul(c, x)).collect()
        })
        .collect();
    let en = Enumerator { sub, n, scaled };
    let top = k_dim - 1;

    // element index v encodes 0 or η^{v-1}, so the top digit can be set directly
    (0..size)
        .into_par_iter()
        .map(|lead| {
            let mut word = vec![0u32; n];
            let mut weight = 0usize;
            if lead != 0 {
                let init: Vec<u32> = gen.iter().map(|&x| sub.mul(lead, x)).collect();
                en.apply(&mut word, &mut weight, &init, top);
            }
            let mut best = usize::MAX;
            if lead != 0 {
                best = weight;
            }
            let mut digits = vec![0u32; top];
            loop {
                let mut i = 0;
                loop {
                    if i == top {
                        return best;
                    }
                    let v = digits[i];
                    en.apply(&mut word, &mut weight, &en.scaled[v as usize], i);
                    if v + 1 < size {
                        digits[i] = v + 1;
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if weight != 0 {
                    best = best.min(weight);
                } else {
                    debug_assert!(lead == 0 && digits.iter().all(|&d| d == 0));
                }
            }
        })
        .min()
        .expect("at least one partition") as u64
}

/// `x ↦ x^q` applied coordinatewise.
pub fn hermitian_conjugate(v: &[FieldElement], root: &RootOfUnity) -> Vec<FieldElement> {
    let f = root.field();
    v.iter().map(|x| f.frobenius(x, root.q().e())).collect()
}

/// `Σ x_i · y_i^q`.
pub fn hermitian_inner(
    x: &[FieldElement],
    y: &[FieldElement],
    root: &RootOfUnity,
) -> Result<FieldElement, OracleError> {
    if x.len() != y.len() {
        return Err(OracleError::LengthMismatch(x.len(), y.len()));
    }
    let f = root.field();
    let conj = hermitian_conjugate(y, root);
    Ok(x.iter()
        .zip(&conj)
        .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
}

/// `β^{2n} = 1` and `β^{2n/r} ≠ 1` for each prime `r | 2n`.
pub fn has_exact_order(root: &RootOfUnity) -> bool {
    let f = root.field();
    let two_n = 2 * root.n();
    let one = f.one();
    f.pow(root.beta(), two_n) == one
        && prime_factors(two_n)
            .into_iter()
            .all(|r| f.pow(root.beta(), two_n / r) != one)
}

/// Size of the message space `(q²)^{k_dim}`, saturating.
pub fn message_count(q: u64, k_dim: u64) -> u128 {
    let q_sq = q as u128 * q as u128;
    u32::try_from(k_dim)
        .ok()
        .and_then(|k| q_sq.checked_pow(k))
        .unwrap_or(u128::MAX)
}
