//! Exact all-terminal reliability tooling for small simple graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`], [`builders`], [`census`] and [`graph6`] hold the bitmask graph
//!   representation, named families and structural invariants.
//! * [`spectrum`] computes cutset spectra, tree-numbers, edge-connectivity and
//!   the unreliability polynomial.
//! * [`bounds`] implements the trivial-cut inclusion–exclusion lower bounds.
//! * [`enumeration`] and [`canonical`] generate isomorphism classes of small
//!   graphs.
//! * [`verify`] reproduces the `K_{4,4}` optimality certificate and audits the
//!   printed constants recorded in the claims manifest.

pub mod bounds;
pub mod builders;
pub mod canonical;
pub mod census;
pub mod claims;
pub mod enumeration;
mod error;
pub mod graph;
pub mod graph6;
pub mod spectrum;
pub mod verify;

pub use builders::Family;
pub use error::{Error, Result};
pub use graph::{EdgeSet, Graph, NodeSet, MAX_NODES};
pub use spectrum::CutsetSpectrum;

/// Binomial coefficient `C(n, k)`, `None` on `u64` overflow.
///
/// Out-of-range `k` (negative or above `n`) yields zero.
pub fn binomial(n: i64, k: i64) -> Option<u64> {
    if n < 0 || k < 0 || k > n {
        return Some(0);
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    u64::try_from(acc).ok()
}
