use alloc::vec::Vec;

use super::{Label, Nfa};
use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};

/// Deterministic automaton; missing transitions reject.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    trans: Vec<Vec<Option<usize>>>,
    start: usize,
    accept: Vec<bool>,
}

impl Dfa {
    /// `trans[state][letter.index()]`.
    pub fn from_parts(alphabet: Alphabet, trans: Vec<Vec<Option<usize>>>, start: usize, accept: Vec<bool>) -> Result<Self> {
        let states = trans.len();
        if accept.len() != states || (states > 0 && start >= states) || states == 0 {
            return Err(Error::Input("inconsistent DFA sizes".into()));
        }
        for row in &trans {
            if row.len() != alphabet.letter_count() {
                return Err(Error::Input("DFA row length differs from alphabet size".into()));
            }
            if row.iter().flatten().any(|&q| q >= states) {
                return Err(Error::Input("DFA transition to unknown state".into()));
            }
        }
        Ok(Dfa { alphabet, trans, start, accept })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.trans.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accept[state]
    }

    pub fn next(&self, state: usize, letter: Letter) -> Option<usize> {
        self.trans[state][letter.index()]
    }

    pub fn run(&self, word: &[Letter]) -> Option<usize> {
        word.iter().try_fold(self.start, |q, &l| self.next(q, l))
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.run(word).is_some_and(|q| self.accept[q])
    }

    pub fn is_total(&self) -> bool {
        self.trans.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// Adds a rejecting sink when some transition is missing.
    pub fn totalize(&self) -> Dfa {
        if self.is_total() {
            return self.clone();
        }
        let sink = self.state_count();
        let mut trans: Vec<Vec<Option<usize>>> =
            self.trans.iter().map(|row| row.iter().map(|q| Some(q.unwrap_or(sink))).collect()).collect();
        trans.push(alloc::vec![Some(sink); self.alphabet.letter_count()]);
        let mut accept = self.accept.clone();
        accept.push(false);
        Dfa { alphabet: self.alphabet.clone(), trans, start: self.start, accept }
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.totalize();
        d.accept.iter_mut().for_each(|a| *a = !*a);
        d
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut n = Nfa::new(self.alphabet.clone(), self.state_count());
        for (p, row) in self.trans.iter().enumerate() {
            for (k, q) in row.iter().enumerate() {
                if let Some(q) = *q {
                    n.add_transition(p, Label::Sym(Letter::from_index(k)), q).expect("valid DFA edge");
                }
            }
            if self.accept[p] {
                n.set_accept(p).expect("valid state");
            }
        }
        n.set_start(self.start).expect("valid state");
        n
    }

    /// Complete transition table, for callers that need total functions.
    pub fn table(&self) -> &[Vec<Option<usize>>] {
        &self.trans
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    #[test]
    fn complement_is_an_involution() {
        let alphabet = Alphabet::new(["x"]).unwrap();
        let x = Word::parse(&alphabet, "x").unwrap();
        let d = Nfa::word(alphabet.clone(), &x.concat(&x)).star().determinize();
        let cc = d.complement().complement();
        let mut words = alloc::vec![Word::empty()];
        for _ in 0..6 {
            let mut next = Vec::new();
            for w in &words {
                for l in alphabet.letters() {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            for w in words.iter().chain(next.iter()) {
                assert_eq!(d.accepts(w), cc.accepts(w));
                assert_ne!(d.accepts(w), d.complement().accepts(w));
            }
            words = next;
        }
    }
}
