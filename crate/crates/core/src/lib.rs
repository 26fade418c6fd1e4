//! Exact-arithmetic toolkit for cover thresholds of increasing set
//! families over small ground sets.
//!
//! An increasing family F over `{1..=n}` is stored by its antichain of
//! minimal elements. The crate computes, all in exact rational arithmetic:
//!
//! - the minimum integral cover weight `min over G of sum p^|S|` and its
//!   bisection threshold `q(F)`;
//! - the fractional relaxation (optionally restricted to supports of size
//!   at most r) by exact simplex, its threshold `q_f(F, r)`, and
//!   weak-duality certificate checks;
//! - the randomized-cover machinery on top of a fractional witness:
//!   normalized member weight systems, badness of random m-subsets, exact
//!   subset-inclusion probabilities, a geometric tail bound, and Monte
//!   Carlo estimates with fixed-partition determinism;
//! - a slack audit that runs the whole argument on one instance and
//!   reports every inequality as an exact pass/fail row.
//!
//! Ground sets are capped at 24 elements; the point of the crate is exact
//! verification at desk scale, not asymptotic performance.

pub mod error;
pub mod family;
pub mod lambda;
pub mod rat;
pub mod selector;
pub mod simplex;
pub mod subset;
pub mod threshold;

pub use error::{Error, Result};
pub use family::{Cover, GroundSet, MinimalFamily, MAX_GROUND};
pub use lambda::Lambda;
pub use rat::Rat;
pub use subset::Subset;
