//! Symbolic polynomial semigroups and polynomial van der Waerden search.
//!
//! The crate has three layers:
//!
//! * a symbolic layer — formal terms and their finite sums
//!   ([`term_algebra`], [`sympoly`], [`multivar`]), the evaluation maps that
//!   send them to ordinary integer polynomials ([`evaluation`]), and the
//!   IP-shift operators acting on them ([`shifts`]);
//! * a finite lab for partial semigroups ([`partial_semigroup`]): operation
//!   tables, associativity/adequacy/ideal checks, and builders that truncate
//!   the shift-generated semigroups into auditable tables;
//! * brute-force witness searches for polynomial van der Waerden
//!   configurations over colorings of the integers ([`vdw_search`]).
//!
//! Searches and the cubic table checks run data-parallel under the default
//! `parallel` feature; every parallel entry point has a sequential `*_seq`
//! twin that is also what the crate falls back to when the feature is off.

pub mod error;
pub mod evaluation;
pub mod multivar;
pub mod partial_semigroup;
mod par;
pub mod shifts;
pub mod sympoly;
pub mod term_algebra;
pub mod vdw_search;

pub use error::{AlgebraError, SearchError, TableError};
