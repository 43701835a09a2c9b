//! Computable fragment of the ultrafilter calculus on ℕ.
//!
//! Eventually-periodic sets ([`semilinear`]) form a Boolean algebra on which
//! the trace of every ultrafilter generated by an infinite hypernatural is
//! decided by residues ([`profinite`]). On top of that sit the 2D tensor
//! machinery ([`pairs`]), finite-window exploration of arbitrary computable
//! sets ([`windows`]) and brute-force finite combinatorics ([`ramsey`]).

pub mod commands;
pub mod expr;
pub mod pairs;
pub mod profinite;
pub mod ramsey;
pub mod semilinear;
pub mod windows;

pub use expr::{parse_expr, parse_pair_set, parse_predicate, parse_set, SetExpr};
pub use pairs::{PairDiff, PairPoint, PairSet};
pub use profinite::ProfinitePoint;
pub use ramsey::{Coloring, FunctionalGraph, LinearEquation};
pub use semilinear::{AffineMap, Density, SemilinearSet};
pub use windows::{PredicateSet, WindowSet};
