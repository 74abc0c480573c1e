//! Exact enumeration of flattened Catalan words and their consecutive-pattern
//! statistics.
//!
//! A *Catalan word* is a finite sequence over the positive integers that
//! starts at 1 and never steps up by more than one. It is *flattened* when
//! the first letters of its maximal weakly increasing runs are themselves
//! weakly increasing. This crate provides:
//!
//! - validated word types and statistic counters ([`words`]),
//! - exhaustive lexicographic generators with optional data-parallel scans
//!   ([`enumerate`]),
//! - exact sparse polynomials and truncated power series ([`poly`],
//!   [`series`]),
//! - a catalog of rational generating functions for subword-pattern
//!   distributions ([`catalog`]),
//! - triangular recurrence arrays refining those distributions by the number
//!   of distinct letters in the terminal run ([`arrays`]),
//! - closed-form counting formulas ([`counts`]),
//! - structure-preserving bijections between word families ([`bijections`]),
//! - and self-verification suites cross-checking all of the above against
//!   brute-force enumeration ([`verify`]).
//!
//! Everything is computed in exact integer arithmetic; no floating point is
//! used anywhere.

pub mod arrays;
pub mod bijections;
pub mod catalog;
pub mod counts;
pub mod enumerate;
pub mod poly;
pub mod series;
pub mod verify;
pub mod words;

mod error;

pub use error::Error;
