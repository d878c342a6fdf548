//! Finite automata over involutive alphabets, plus the one-counter and
//! stack machines used as word-problem acceptors.

mod dfa;
mod hom;
mod machines;
mod nerode;
mod nfa;

pub use dfa::Dfa;
#[cfg(test)]
pub(crate) use hom::words_up_to;
pub use hom::{hom_image, inverse_hom, reduced_filter, Homomorphism};
pub use machines::{oca_run, stack_run, Guard, OcaConfig, OcaTransition, OneCounterAutomaton, StackAcceptor};
pub use nerode::{nerode_witnesses, NerodeCertificate, NerodeSearch};
pub use nfa::{Label, Nfa};

use crate::error::Result;

pub fn nfa_union(a: &Nfa, b: &Nfa) -> Result<Nfa> {
    a.union(b)
}

pub fn nfa_concat(a: &Nfa, b: &Nfa) -> Result<Nfa> {
    a.concat(b)
}

pub fn nfa_intersect(a: &Nfa, b: &Nfa) -> Result<Nfa> {
    a.intersect(b)
}

pub fn determinize(a: &Nfa) -> Dfa {
    a.determinize()
}

pub fn complement(d: &Dfa) -> Dfa {
    d.complement()
}

pub fn inclusion(a: &Nfa, b: &Nfa) -> Result<bool> {
    a.is_subset_of(b)
}

pub fn is_empty(a: &Nfa) -> bool {
    a.is_empty()
}
