//! Desk-scale finite-group engine with a pronormality toolkit.
//!
//! The crate builds small groups as explicit element lists (permutations,
//! vectors twisted by permutations, matrices over prime fields, tuples and
//! coset classes of all of these) and layers three kinds of machinery on
//! top: structural criteria that decide pronormality of odd-index subgroups
//! in products of wreath factors, brute-force oracles that settle the same
//! questions from the definition, and reductions that collapse an instance
//! to a smaller one. The oracles exist to cross-validate the criteria, so
//! every decision carries its justification trail.

pub mod arith;
pub mod criteria;
pub mod elem;
pub mod error;
pub mod group;
pub mod matgrp;
pub mod oracle;
pub mod perm;
pub mod wreath;

pub use criteria::{Decision, Reason, Verdict};
pub use elem::Elem;
pub use error::{GroupError, Result};
pub use group::{
    DirectProduct, Group, QuotientGroup, Subgroup, DEFAULT_CLOSURE_CAP, DEFAULT_SUBGROUP_BUDGET,
};
