//! Rational and recognizable subsets of finitely generated groups.
//!
//! Three group backends are provided: free groups, finite groups given by a
//! multiplication table, and virtually cyclic groups given by extension data
//! over `<t>`. On top of them the crate builds
//!
//! * automata over involutive alphabets ([`automata`]),
//! * Stallings graphs of finitely generated subgroups of free groups ([`stallings`]),
//! * rational subsets with Benois saturation and exact images in `Z` ([`rational`]),
//! * recognizable subsets presented by finite coset actions ([`recognizable`]),
//! * finite-index decompositions, subgroup rewriting and transfer of
//!   recognizable subsets ([`structure`]),
//! * word-problem acceptors and conjugacy classes in virtually cyclic
//!   groups ([`wordproblem`]),
//! * brute-force reference enumerations ([`oracle`]).
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod alphabet;
pub mod automata;
pub mod error;
pub mod group;
pub mod oracle;
pub mod rational;
pub mod recognizable;
pub mod stallings;
pub mod structure;
pub mod word;
pub mod wordproblem;

pub use alphabet::{Alphabet, Letter};
pub use error::{Error, Result};
pub use group::{ball, FiniteGroup, FreeGroup, Group, GroupBackend, VcElement, VirtuallyCyclic};
pub use word::{free_reduce, ReducedWord, Word};
