//! Finite skew braces and the annihilator series.
//!
//! A skew brace is a set with two group structures `·` and `∘` related by
//! `a∘(b·c) = (a∘b)·a⁻¹·(a∘c)`. This crate stores both groups as Cayley
//! tables and computes the derived ideal `A*A`, the socle, the annihilator
//! `Ann(A)` and the second annihilator `Ann₂(A)`, checks the identities that
//! relate them, and builds semidirect products `F_p^n ⋊ C` in which
//! `Ann(A/Ann(A)) ≠ 1` although `A` is perfect.
//!
//! Modules:
//! - [`group`]: Cayley tables, subgroups, quotients, isomorphism search.
//! - [`brace`]: the skew brace type, ideals, quotients and invariants.
//! - [`grun`]: identity suites, homomorphism criteria and the defect report.
//! - [`fp`]: linear algebra and matrix groups over prime fields.
//! - [`constructions`]: semidirect products and the order-24 perfect brace.
//! - [`io`]: the `.sbr` brace format, group and matrix fixture formats.

pub mod brace;
pub mod constructions;
pub mod error;
pub mod fp;
pub mod group;
pub mod grun;
pub mod io;
pub mod report;
pub mod scan;

pub use brace::{BraceIdeal, LiftMode, SkewBrace};
pub use error::{Error, Result};
pub use group::{GroupHom, GroupTable, Subgroup};
pub use report::{Status, VerificationReport, Witness};
