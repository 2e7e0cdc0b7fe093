//! The two construction families for lengths `n = 2(q²+1)/a`, `a = m²+1`:
//! Case I with `q = aξ + a - m` and Case II with `q = aξ + m`.
//!
//! For each admissible `(m, ξ, α, case)` the closed-form parameters are
//! compared against the parameters obtained by building the defining set
//!
//! ```text
//! Z = C_s ∪ C_{s+2} ∪ … ∪ C_{s+2(count-1)}
//! ```
//!
//! and decomposing it directly.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cosets::{neg_q_image, CosetContext, CosetError};
use crate::eaqecc::{
    decompose, ea_params, ea_singleton_check, EAParams, ParamSource, SingletonCheck,
};
use crate::negacyclic::{
    classical_params, consecutive_run_defining_set, ClassicalParams, DefiningSet, NegacyclicError,
};
use crate::numth::{factor_prime_power, NumthError, PrimePower};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("m must be odd, got {0}")]
    EvenM(u64),
    #[error("xi must be positive")]
    ZeroXi,
    #[error("alpha must satisfy 1 <= alpha <= xi = {xi}, got {alpha}")]
    AlphaOutOfRange { alpha: u64, xi: u64 },
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("q = {0} is even")]
    EvenQ(u64),
    #[error("parameters overflow")]
    Overflow,
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Negacyclic(#[from] NegacyclicError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    /// `q = aξ + a - m`
    I,
    /// `q = aξ + m`
    II,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::I => "I",
            Case::II => "II",
        })
    }
}

impl FromStr for Case {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "I" | "i" | "1" => Ok(Case::I),
            "II" | "ii" | "2" => Ok(Case::II),
            other => Err(format!("unknown case {other:?}, expected I or II")),
        }
    }
}

/// Which of the two parameter rows applies for a given `(m mod 4, ξ parity)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `[[n, k, d; c]]`
    Plain,
    /// `[[n, k-1, d; c-1]]`
    Shifted,
}

impl Branch {
    pub fn select(m: u64, xi: u64) -> Self {
        let xi_odd = xi % 2 == 1;
        match (m % 4, xi_odd) {
            (1, true) | (3, false) => Branch::Plain,
            _ => Branch::Shifted,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plain => "plain",
            Branch::Shifted => "shifted",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyInput {
    pub m: u64,
    pub xi: u64,
    pub alpha: u64,
    pub case: Case,
}

impl FamilyInput {
    pub fn new(m: u64, xi: u64, alpha: u64, case: Case) -> Self {
        Self { m, xi, alpha, case }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        if self.m.is_multiple_of(2) {
            return Err(FamilyError::EvenM(self.m));
        }
        if self.xi == 0 {
            return Err(FamilyError::ZeroXi);
        }
        if self.alpha == 0 || self.alpha > self.xi {
            return Err(FamilyError::AlphaOutOfRange {
                alpha: self.alpha,
                xi: self.xi,
            });
        }
        Ok(())
    }

    pub fn a(&self) -> u64 {
        self.m * self.m + 1
    }

    /// The field base `q` for this case, before any admissibility check.
    pub fn raw_q(&self) -> Option<u64> {
        family_q(self.m, self.xi, self.case)
    }
}

fn family_q(m: u64, xi: u64, case: Case) -> Option<u64> {
    let a = m.checked_mul(m)?.checked_add(1)?;
    let base = a.checked_mul(xi)?;
    match case {
        Case::I => base.checked_add(a - m),
        Case::II => base.checked_add(m),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyContext {
    pub a: u64,
    pub q: u64,
    /// `None` when the context was derived without the prime-power gate.
    pub field: Option<PrimePower>,
    pub n: u64,
    pub s: u64,
    pub branch: Branch,
}

impl FamilyContext {
    pub fn coset_context(&self) -> Result<CosetContext, CosetError> {
        match self.field {
            Some(pp) => CosetContext::new(self.n, pp),
            None => CosetContext::with_raw_q(self.n, self.q),
        }
    }
}

/// Derives `q`, `n = 2(q²+1)/a`, `s = n/2` and the branch; `q` must be an odd
/// prime power.
pub fn derive_context(input: &FamilyInput) -> Result<FamilyContext, FamilyError> {
    let mut ctx = derive_context_unchecked(input)?;
    let pp = factor_prime_power(ctx.q).map_err(|e| match e {
        NumthError::NotPrimePower(q) | NumthError::TooSmall(q) => FamilyError::NotPrimePower(q),
        _ => FamilyError::NotPrimePower(ctx.q),
    })?;
    ctx.field = Some(pp);
    Ok(ctx)
}

/// Like [`derive_context`] but accepts any odd `q`. The residue combinatorics
/// are still well defined; no code over GF(q²) exists unless `q` is a prime
/// power.
pub fn derive_context_unchecked(input: &FamilyInput) -> Result<FamilyContext, FamilyError> {
    input.validate()?;
    let a = input.a();
    let q = input.raw_q().ok_or(FamilyError::Overflow)?;
    if q % 2 == 0 {
        return Err(FamilyError::EvenQ(q));
    }
    let q_sq_plus_1 = q
        .checked_mul(q)
        .and_then(|x| x.checked_add(1))
        .ok_or(FamilyError::Overflow)?;
    // q ≡ ±m (mod a) and m² ≡ -1 (mod a), so a | q²+1
    debug_assert_eq!(q_sq_plus_1 % a, 0);
    let n = 2 * q_sq_plus_1 / a;
    Ok(FamilyContext {
        a,
        q,
        field: None,
        n,
        s: n / 2,
        branch: Branch::select(input.m, input.xi),
    })
}

/// Number of consecutive cosets `C_s, C_{s+2}, …` in the defining set.
pub fn run_length(input: &FamilyInput, q: u64) -> u64 {
    let (m, xi, alpha, a) = (input.m, input.xi, input.alpha, input.a());
    match input.case {
        Case::I => alpha * q + (a - m) * xi + a - 2 * m + 1,
        Case::II => alpha * q + m * xi + 1,
    }
}

fn predicted(input: &FamilyInput, ctx: &FamilyContext) -> EAParams {
    let (m, xi, alpha) = (input.m as i64, input.xi as i64, input.alpha as i64);
    let (a, q, n) = (ctx.a as i64, ctx.q as i64, ctx.n as i64);
    let (mut k, d, mut c) = match input.case {
        Case::I => (
            n - 4 * alpha * q + 4 * (a - m) * (alpha - xi) + 2 * a * alpha * alpha - 2 * a + 4 * m
                - 1,
            2 * (alpha * q + (a - m) * xi + a - 2 * m + 1),
            2 * alpha * (a * alpha + 2 * (a - m)) + 2 * a - 4 * m + 1,
        ),
        Case::II => (
            n - 4 * alpha * q + 4 * m * (alpha - xi) + 2 * a * alpha * alpha - 1,
            2 * (alpha * q + m * xi + 1),
            2 * alpha * (a * alpha + 2 * m) + 1,
        ),
    };
    if ctx.branch == Branch::Shifted {
        k -= 1;
        c -= 1;
    }
    debug_assert!(k >= 0 && c >= 0);
    EAParams::classified(
        ctx.n,
        k as u64,
        d as u64,
        c as u64,
        ctx.q,
        false,
        ParamSource::Formula,
    )
}

/// Closed-form parameters for Case I.
pub fn predicted_params_case1(input: &FamilyInput) -> Result<EAParams, FamilyError> {
    debug_assert_eq!(input.case, Case::I);
    Ok(predicted(input, &derive_context_unchecked(input)?))
}

/// Closed-form parameters for Case II.
pub fn predicted_params_case2(input: &FamilyInput) -> Result<EAParams, FamilyError> {
    debug_assert_eq!(input.case, Case::II);
    Ok(predicted(input, &derive_context_unchecked(input)?))
}

pub fn predicted_params(input: &FamilyInput) -> Result<EAParams, FamilyError> {
    match input.case {
        Case::I => predicted_params_case1(input),
        Case::II => predicted_params_case2(input),
    }
}

pub fn build_defining_set(input: &FamilyInput) -> Result<DefiningSet, FamilyError> {
    let ctx = derive_context(input)?;
    build_from_context(input, &ctx)
}

fn build_from_context(
    input: &FamilyInput,
    ctx: &FamilyContext,
) -> Result<DefiningSet, FamilyError> {
    let cosets = ctx.coset_context()?;
    Ok(consecutive_run_defining_set(
        &cosets,
        0,
        run_length(input, ctx.q),
    )?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub input: FamilyInput,
    pub a: u64,
    pub q: u64,
    pub n: u64,
    pub s: u64,
    pub branch: Branch,
    /// `false` when produced by [`verify_unchecked`] for a `q` that is not a
    /// prime power.
    pub q_is_prime_power: bool,
    pub z_size: usize,
    pub classical: ClassicalParams,
    pub predicted: EAParams,
    pub computed: EAParams,
    pub singleton: SingletonCheck,
    /// `z2 ∩ (-q·z2) = ∅`.
    pub z2_self_disjoint: bool,
    /// `-q·z1 = z1`.
    pub z1_stable: bool,
    pub matches: bool,
}

impl FamilyReport {
    /// The agreed parameters, when prediction and computation coincide.
    pub fn confirmed(&self) -> Option<EAParams> {
        self.matches.then_some(EAParams {
            source: ParamSource::Both,
            ..self.computed
        })
    }
}

/// Builds the defining set, decomposes it, and compares with the closed form.
pub fn verify(input: &FamilyInput) -> Result<FamilyReport, FamilyError> {
    let ctx = derive_context(input)?;
    report(input, &ctx)
}

/// [`verify`] without the prime-power requirement on `q`.
pub fn verify_unchecked(input: &FamilyInput) -> Result<FamilyReport, FamilyError> {
    let ctx = derive_context_unchecked(input)?;
    report(input, &ctx)
}

fn report(input: &FamilyInput, ctx: &FamilyContext) -> Result<FamilyReport, FamilyError> {
    let z = build_from_context(input, ctx)?;
    let dec = decompose(&z);
    let computed = ea_params(&z);
    let predicted = predicted(input, ctx);
    let z2_self_disjoint = dec.z2.is_disjoint(&neg_q_image(z.ctx(), &dec.z2));
    let z1_stable = neg_q_image(z.ctx(), &dec.z1) == dec.z1;
    Ok(FamilyReport {
        input: *input,
        a: ctx.a,
        q: ctx.q,
        n: ctx.n,
        s: ctx.s,
        branch: ctx.branch,
        q_is_prime_power: ctx.field.is_some(),
        z_size: z.len(),
        classical: classical_params(&z),
        singleton: ea_singleton_check(&computed),
        matches: predicted.quadruple() == computed.quadruple(),
        predicted,
        computed,
        z2_self_disjoint,
        z1_stable,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepEntry {
    Verified(Box<FamilyReport>),
    /// An `(m, ξ, case)` whose `q` is inadmissible; covers every `α`.
    Rejected {
        m: u64,
        xi: u64,
        case: Case,
        q: Option<u64>,
        reason: FamilyError,
    },
}

impl SweepEntry {
    pub fn report(&self) -> Option<&FamilyReport> {
        match self {
            SweepEntry::Verified(r) => Some(r),
            SweepEntry::Rejected { .. } => None,
        }
    }

    /// `(m, ξ, α, case)`; rejections use `α = 0`.
    pub fn sort_key(&self) -> (u64, u64, u64, Case) {
        match self {
            SweepEntry::Verified(r) => (r.input.m, r.input.xi, r.input.alpha, r.input.case),
            SweepEntry::Rejected { m, xi, case, .. } => (*m, *xi, 0, *case),
        }
    }
}

enum Task {
    Verify(FamilyInput),
    Reject {
        m: u64,
        xi: u64,
        case: Case,
        q: Option<u64>,
        reason: FamilyError,
    },
}

/// Verifies every admissible `(m, ξ, α, case)` with odd `m <= m_max` and
/// `ξ <= xi_max`. Output is ordered by `(m, ξ, α, case)`.
pub fn sweep(m_max: u64, xi_max: u64) -> Vec<SweepEntry> {
    let mut tasks = Vec::new();
    for m in (1..=m_max).step_by(2) {
        for xi in 1..=xi_max {
            for case in [Case::I, Case::II] {
                let probe = FamilyInput::new(m, xi, 1, case);
                match derive_context(&probe) {
                    Ok(_) => tasks.extend(
                        (1..=xi).map(|alpha| Task::Verify(FamilyInput::new(m, xi, alpha, case))),
                    ),
                    Err(reason) => tasks.push(Task::Reject {
                        m,
                        xi,
                        case,
                        q: probe.raw_q(),
                        reason,
                    }),
                }
            }
        }
    }
    let mut out: Vec<SweepEntry> = tasks
        .into_par_iter()
        .map(|task| match task {
            Task::Verify(input) => match verify(&input) {
                Ok(r) => SweepEntry::Verified(Box::new(r)),
                Err(reason) => SweepEntry::Rejected {
                    m: input.m,
                    xi: input.xi,
                    case: input.case,
                    q: input.raw_q(),
                    reason,
                },
            },
            Task::Reject {
                m,
                xi,
                case,
                q,
                reason,
            } => SweepEntry::Rejected {
                m,
                xi,
                case,
                q,
                reason,
            },
        })
        .collect();
    out.sort_by_key(|e| e.sort_key());
    out
}

/// `(m, case, ξ)` combinations appearing in the reference parameter table.
pub const TABLE4_GRID: &[(u64, Case, u64)] = &[
    (1, Case::I, 1),
    (1, Case::I, 2),
    (1, Case::I, 3),
    (1, Case::I, 4),
    (1, Case::I, 5),
    (1, Case::I, 6),
    (3, Case::I, 1),
    (3, Case::I, 3),
    (3, Case::I, 4),
    (3, Case::II, 1),
    (3, Case::II, 2),
    (3, Case::II, 4),
    (5, Case::I, 1),
    (5, Case::I, 2),
    (5, Case::I, 4),
    (5, Case::II, 1),
    (5, Case::II, 3),
    (5, Case::II, 4),
    (7, Case::I, 2),
    (7, Case::I, 3),
    (7, Case::II, 2),
    (7, Case::II, 3),
];

pub fn in_table4_grid(m: u64, case: Case, xi: u64) -> bool {
    TABLE4_GRID.contains(&(m, case, xi))
}
