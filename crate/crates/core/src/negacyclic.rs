//! Defining sets of negacyclic codes and their classical parameters.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cosets::{coset, CosetContext, CosetError, ResidueSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NegacyclicError {
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error("code length {0} is odd, the run start s = n/2 is undefined")]
    OddLength(u64),
    #[error("a consecutive run needs at least one coset")]
    EmptyRun,
    #[error("the empty defining set has no BCH run")]
    EmptySet,
}

/// A union of whole q²-cyclotomic cosets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningSet {
    ctx: CosetContext,
    residues: ResidueSet,
    coset_reps: Vec<u64>,
}

impl DefiningSet {
    pub fn ctx(&self) -> &CosetContext {
        &self.ctx
    }

    pub fn residues(&self) -> &ResidueSet {
        &self.residues
    }

    /// Minimum representatives of the cosets making up the set, ascending.
    pub fn coset_reps(&self) -> &[u64] {
        &self.coset_reps
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }
}

/// Closes `reps` under the q²-orbit.
pub fn make_defining_set(ctx: &CosetContext, reps: &[u64]) -> Result<DefiningSet, NegacyclicError> {
    let mut residues = ResidueSet::new();
    let mut coset_reps = Vec::new();
    for &r in reps {
        if residues.contains(r) {
            // still validates range and parity
            coset(ctx, r)?;
            continue;
        }
        let c = coset(ctx, r)?;
        coset_reps.push(c.representative());
        residues = residues.union(c.elements());
    }
    coset_reps.sort_unstable();
    Ok(DefiningSet {
        ctx: *ctx,
        residues,
        coset_reps,
    })
}

/// Union of the cosets containing `s + 2j` for `j` in `start_j .. start_j + count`.
pub fn consecutive_run_defining_set(
    ctx: &CosetContext,
    start_j: i64,
    count: u64,
) -> Result<DefiningSet, NegacyclicError> {
    let s = ctx.s().ok_or(NegacyclicError::OddLength(ctx.n()))?;
    if count == 0 {
        return Err(NegacyclicError::EmptyRun);
    }
    let reps: Vec<u64> = (0..count as i64)
        .map(|j| ctx.reduce(s as i64 + 2 * (start_j + j)))
        .collect();
    make_defining_set(ctx, &reps)
}

/// Longest cyclic run of consecutive root exponents `1+2j` (j mod n) in `z`.
pub fn longest_run(z: &DefiningSet) -> u64 {
    let n = z.ctx.n() as usize;
    let mut present = vec![false; n];
    for x in z.residues.iter() {
        present[((x - 1) / 2) as usize] = true;
    }
    let Some(gap) = present.iter().position(|&b| !b) else {
        return n as u64;
    };
    let mut best = 0usize;
    let mut run = 0usize;
    for step in 1..=n {
        if present[(gap + step) % n] {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best as u64
}

/// BCH lower bound: one more than the longest run of consecutive roots.
pub fn bch_bound(z: &DefiningSet) -> Result<u64, NegacyclicError> {
    if z.is_empty() {
        return Err(NegacyclicError::EmptySet);
    }
    Ok(longest_run(z) + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalParams {
    pub n: u64,
    pub k_dim: u64,
    pub d_bch: u64,
    pub is_mds: bool,
    /// Exact minimum distance, when a brute-force search has established it.
    pub d_exact: Option<u64>,
}

impl ClassicalParams {
    /// The zero code (every root present).
    pub fn is_degenerate(&self) -> bool {
        self.k_dim == 0
    }
}

pub fn classical_params(z: &DefiningSet) -> ClassicalParams {
    let n = z.ctx.n();
    let k_dim = n - z.len() as u64;
    let d_bch = bch_bound(z).unwrap_or(1);
    ClassicalParams {
        n,
        k_dim,
        d_bch,
        is_mds: d_bch == n - k_dim + 1,
        d_exact: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numth::PrimePower;

    fn ctx(n: u64, q: u64) -> CosetContext {
        CosetContext::new(n, PrimePower::new(q).unwrap()).unwrap()
    }

    #[test]
    fn make_from_reps() {
        let c = ctx(10, 3);
        let z = make_defining_set(&c, &[5, 7, 9, 11, 13]).unwrap();
        assert_eq!(z.residues().as_slice(), &[1, 3, 5, 7, 9, 11, 13, 17, 19]);
        assert_eq!(z.coset_reps(), &[1, 3, 5, 11, 13]);
        assert!(make_defining_set(&c, &[]).unwrap().is_empty());
        assert_eq!(
            make_defining_set(&c, &[5, 5])
                .unwrap()
                .residues()
                .as_slice(),
            &[5]
        );
        assert_eq!(
            make_defining_set(&c, &[6]),
            Err(NegacyclicError::Coset(CosetError::EvenResidue(6)))
        );
    }

    #[test]
    fn consecutive_runs() {
        let c = ctx(10, 3);
        let z = consecutive_run_defining_set(&c, 0, 5).unwrap();
        assert_eq!(z.len(), 9);
        let z1 = consecutive_run_defining_set(&c, 0, 1).unwrap();
        assert_eq!(z1.residues().as_slice(), &[5]);
        assert_eq!(
            consecutive_run_defining_set(&c, 0, 0),
            Err(NegacyclicError::EmptyRun)
        );
        let c37 = ctx(274, 37);
        assert_eq!(
            consecutive_run_defining_set(&c37, 0, 63).unwrap().len(),
            125
        );
        let odd = CosetContext::with_raw_q(7, 3).unwrap();
        assert_eq!(
            consecutive_run_defining_set(&odd, 0, 1),
            Err(NegacyclicError::OddLength(7))
        );
    }

    #[test]
    fn bch_examples() {
        let c = ctx(10, 3);
        let z = consecutive_run_defining_set(&c, 0, 5).unwrap();
        assert_eq!(bch_bound(&z), Ok(10));
        let single = make_defining_set(&c, &[5]).unwrap();
        assert_eq!(bch_bound(&single), Ok(2));
        assert_eq!(
            bch_bound(&make_defining_set(&c, &[]).unwrap()),
            Err(NegacyclicError::EmptySet)
        );
        // m=1, xi=3, alpha=1: run of alpha*q + xi + 1 = 11 cosets around s = 25
        let c7 = ctx(50, 7);
        let z7 = consecutive_run_defining_set(&c7, 0, 11).unwrap();
        assert_eq!(bch_bound(&z7), Ok(22));
    }

    #[test]
    fn params_examples() {
        let c = ctx(10, 3);
        let z = consecutive_run_defining_set(&c, 0, 5).unwrap();
        let p = classical_params(&z);
        assert_eq!((p.k_dim, p.d_bch, p.is_mds), (1, 10, true));

        let empty = classical_params(&make_defining_set(&c, &[]).unwrap());
        assert_eq!((empty.k_dim, empty.d_bch, empty.is_mds), (10, 1, true));

        let all: Vec<u64> = (1..20).step_by(2).collect();
        let full = classical_params(&make_defining_set(&c, &all).unwrap());
        assert_eq!(full.k_dim, 0);
        assert!(full.is_degenerate());
        assert_eq!(full.d_bch, 11);
    }

    #[test]
    fn params_ignore_choice_of_representative() {
        let c = ctx(10, 3);
        let a = make_defining_set(&c, &[3, 1, 5]).unwrap();
        let b = make_defining_set(&c, &[7, 9, 5]).unwrap();
        assert_eq!(a, b);
        assert_eq!(classical_params(&a), classical_params(&b));
    }
}
