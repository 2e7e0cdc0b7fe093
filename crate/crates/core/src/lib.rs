//! Entanglement-assisted quantum codes from negacyclic codes of length
//! `n = 2(q²+1)/(m²+1)`.
//!
//! The crate builds the defining sets of the two construction families,
//! decomposes them into the `-q`-stable part `Z ∩ (-qZ)` and its complement,
//! and checks the closed-form `[[n, k, d; c]]_q` parameters against direct
//! computation. [`gf_oracle`] supplies explicit finite-field ground truth
//! (generator polynomials and brute-force minimum distance) for small cases.

pub mod cli;
pub mod cosets;
pub mod eaqecc;
pub mod family;
pub mod gf_oracle;
pub mod negacyclic;
pub mod numth;
