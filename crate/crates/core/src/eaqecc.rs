//! Splitting a defining set into its `-q`-stable part and the rest, and the
//! resulting entanglement-assisted code parameters.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cosets::{neg_q_image, ResidueSet};
use crate::negacyclic::{classical_params, DefiningSet};

/// `z1 = Z ∩ (-qZ)` and `z2 = Z \ z1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub z1: ResidueSet,
    pub z2: ResidueSet,
}

pub fn decompose(z: &DefiningSet) -> Decomposition {
    let image = neg_q_image(z.ctx(), z.residues());
    let z1 = z.residues().intersection(&image);
    let z2 = z.residues().difference(&z1);
    Decomposition { z1, z2 }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamSource {
    Formula,
    Direct,
    Both,
}

/// `[[n, k, d; c]]_q` with its classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EAParams {
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub c: u64,
    pub q: u64,
    pub is_eaqmds: bool,
    pub d_is_exact: bool,
    pub source: ParamSource,
}

impl EAParams {
    /// Fills in `is_eaqmds` from the other fields.
    pub fn classified(
        n: u64,
        k: u64,
        d: u64,
        c: u64,
        q: u64,
        d_is_exact: bool,
        source: ParamSource,
    ) -> Self {
        let mut p = Self {
            n,
            k,
            d,
            c,
            q,
            is_eaqmds: false,
            d_is_exact,
            source,
        };
        let check = ea_singleton_check(&p);
        p.is_eaqmds = check.saturated && check.applicable;
        p
    }

    pub fn quadruple(&self) -> (u64, u64, u64, u64) {
        (self.n, self.k, self.d, self.c)
    }

    /// No logical qudits are encoded.
    pub fn is_degenerate(&self) -> bool {
        self.k == 0
    }

    pub fn same_code(&self, other: &Self) -> bool {
        self.quadruple() == other.quadruple() && self.q == other.q
    }
}

impl fmt::Display for EAParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{},{},{};{}]]_{}",
            self.n, self.k, self.d, self.c, self.q
        )
    }
}

pub fn ea_params(z: &DefiningSet) -> EAParams {
    let dec = decompose(z);
    let classical = classical_params(z);
    let n = z.ctx().n();
    let size = z.len() as u64;
    let c = dec.z1.len() as u64;
    // k >= 0: -q·z2 is disjoint from Z, so |Z| + |z2| <= n
    let k = n + c - 2 * size;
    EAParams::classified(
        n,
        k,
        classical.d_bch,
        c,
        z.ctx().q(),
        classical.is_mds,
        ParamSource::Direct,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingletonCheck {
    pub saturated: bool,
    /// `n + c - k - 2(d - 1)`.
    pub slack: i64,
    /// `d <= (n + 2) / 2`.
    pub applicable: bool,
}

pub fn ea_singleton_check(p: &EAParams) -> SingletonCheck {
    let slack = p.n as i64 + p.c as i64 - p.k as i64 - 2 * (p.d as i64 - 1);
    SingletonCheck {
        saturated: slack == 0,
        slack,
        applicable: 2 * p.d <= p.n + 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosets::CosetContext;
    use crate::negacyclic::{consecutive_run_defining_set, make_defining_set};
    use crate::numth::PrimePower;

    fn ctx(n: u64, q: u64) -> CosetContext {
        CosetContext::new(n, PrimePower::new(q).unwrap()).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let c = ctx(10, 3);
        let z = consecutive_run_defining_set(&c, 0, 5).unwrap();
        let dec = decompose(&z);
        assert_eq!(&dec.z1, z.residues());
        assert!(dec.z2.is_empty());

        let empty = make_defining_set(&c, &[]).unwrap();
        let dec = decompose(&empty);
        assert!(dec.z1.is_empty() && dec.z2.is_empty());

        // m=1, xi=5, alpha=1: run of q + xi + 1 = 17 cosets
        let c11 = ctx(122, 11);
        let z = consecutive_run_defining_set(&c11, 0, 17).unwrap();
        assert_eq!(decompose(&z).z1.len(), 9);
    }

    #[test]
    fn params_examples() {
        let c = ctx(10, 3);
        let z = consecutive_run_defining_set(&c, 0, 5).unwrap();
        let p = ea_params(&z);
        assert_eq!(p.quadruple(), (10, 1, 10, 9));
        assert!(!p.is_eaqmds);
        let check = ea_singleton_check(&p);
        assert!(check.saturated && !check.applicable);

        let c37 = ctx(274, 37);
        let z = consecutive_run_defining_set(&c37, 0, 63).unwrap();
        let p = ea_params(&z);
        assert_eq!(p.quadruple(), (274, 80, 126, 56));
        assert!(p.is_eaqmds && p.d_is_exact);
        assert_eq!(p.to_string(), "[[274,80,126;56]]_37");
    }

    #[test]
    fn entanglement_free_case() {
        // for n=10, q=3, -q maps {1,9} to {13,17}, so z1 = ∅
        let c = ctx(10, 3);
        let z = make_defining_set(&c, &[1]).unwrap();
        let p = ea_params(&z);
        assert_eq!((p.k, p.c), (10 - 2 * 2, 0));
    }

    #[test]
    fn singleton_checks() {
        let p = EAParams::classified(274, 80, 126, 56, 37, true, ParamSource::Formula);
        let s = ea_singleton_check(&p);
        assert_eq!((s.saturated, s.slack, s.applicable), (true, 0, true));

        let trivial = EAParams::classified(7, 7, 1, 0, 3, true, ParamSource::Direct);
        let s = ea_singleton_check(&trivial);
        assert_eq!((s.saturated, s.slack, s.applicable), (true, 0, true));

        let p = EAParams::classified(122, 65, 34, 9, 11, true, ParamSource::Formula);
        assert!(p.is_eaqmds);
        // 2·62 = 124 = n + 2: boundary is inclusive
        let edge = EAParams::classified(122, 1, 62, 0, 11, false, ParamSource::Formula);
        assert!(ea_singleton_check(&edge).applicable);
    }
}
