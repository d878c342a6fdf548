//! One-counter automata and the cancellation stack acceptor.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Guard {
    Zero,
    Nonzero,
    Any,
}

impl Guard {
    fn admits(self, counter: u64) -> bool {
        match self {
            Guard::Zero => counter == 0,
            Guard::Nonzero => counter != 0,
            Guard::Any => true,
        }
    }
}

/// Transition of a one-counter automaton. `letter == None` is an ε-move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OcaTransition {
    pub from: usize,
    pub letter: Option<Letter>,
    pub guard: Guard,
    pub delta: i8,
    pub to: usize,
}

/// Finite control plus one nonnegative counter with zero tests. A word is
/// accepted when some run ends in an accept state with the counter at zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneCounterAutomaton {
    alphabet: Alphabet,
    states: usize,
    transitions: Vec<OcaTransition>,
    start: usize,
    accept: BTreeSet<usize>,
}

/// Configuration `(state, counter)`.
pub type OcaConfig = (usize, u64);

impl OneCounterAutomaton {
    pub fn new(alphabet: Alphabet, states: usize, transitions: Vec<OcaTransition>, start: usize, accept: BTreeSet<usize>) -> Result<Self> {
        if start >= states || accept.iter().any(|&q| q >= states) {
            return Err(Error::Input("OCA state out of range".into()));
        }
        for t in &transitions {
            if t.from >= states || t.to >= states {
                return Err(Error::Input("OCA transition uses an unknown state".into()));
            }
            if !(-1..=1).contains(&t.delta) {
                return Err(Error::Input("OCA counter change must be -1, 0 or +1".into()));
            }
            if t.delta == -1 && t.guard != Guard::Nonzero {
                return Err(Error::Input("decrement must be guarded by a nonzero test".into()));
            }
            if t.letter.is_some_and(|l| !alphabet.contains(l)) {
                return Err(Error::Input("OCA letter not in alphabet".into()));
            }
        }
        Ok(OneCounterAutomaton { alphabet, states, transitions, start, accept })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn transitions(&self) -> &[OcaTransition] {
        &self.transitions
    }

    fn moves<'a>(&'a self, config: OcaConfig, letter: Option<Letter>) -> impl Iterator<Item = OcaConfig> + 'a {
        self.transitions
            .iter()
            .filter(move |t| t.from == config.0 && t.letter == letter && t.guard.admits(config.1))
            .map(move |t| (t.to, (config.1 as i64 + i64::from(t.delta)) as u64))
    }

    fn close(&self, configs: BTreeSet<OcaConfig>) -> BTreeSet<OcaConfig> {
        let mut closed = configs.clone();
        let mut stack: Vec<OcaConfig> = configs.into_iter().collect();
        while let Some(c) = stack.pop() {
            for next in self.moves(c, None) {
                if closed.insert(next) {
                    stack.push(next);
                }
            }
        }
        closed
    }

    /// Configuration sets after each prefix of the word (ε-closed).
    pub fn trace(&self, word: &[Letter]) -> Vec<BTreeSet<OcaConfig>> {
        let mut current = self.close([(self.start, 0)].into_iter().collect());
        let mut out = alloc::vec![current.clone()];
        for &l in word {
            let next = current.iter().flat_map(|&c| self.moves(c, Some(l))).collect();
            current = self.close(next);
            out.push(current.clone());
        }
        out
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        let last = self.trace(word).pop().unwrap_or_default();
        last.iter().any(|&(q, c)| c == 0 && self.accept.contains(&q))
    }
}

pub fn oca_run(machine: &OneCounterAutomaton, word: &[Letter]) -> bool {
    machine.accepts(word)
}

/// Deterministic stack machine: a letter pops the top when it cancels it and
/// is pushed otherwise. Accepts on empty stack.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackAcceptor {
    alphabet: Alphabet,
}

impl StackAcceptor {
    pub fn new(alphabet: Alphabet) -> Self {
        StackAcceptor { alphabet }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Stack contents after each prefix.
    pub fn trace(&self, word: &[Letter]) -> Vec<Vec<Letter>> {
        let mut stack: Vec<Letter> = Vec::new();
        let mut out = alloc::vec![stack.clone()];
        for &l in word {
            if stack.last() == Some(&l.inverse()) {
                stack.pop();
            } else {
                stack.push(l);
            }
            out.push(stack.clone());
        }
        out
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut depth: Vec<Letter> = Vec::with_capacity(word.len());
        for &l in word {
            if depth.last() == Some(&l.inverse()) {
                depth.pop();
            } else {
                depth.push(l);
            }
        }
        depth.is_empty()
    }
}

pub fn stack_run(machine: &StackAcceptor, word: &[Letter]) -> bool {
    machine.accepts(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    /// The word problem of Z with states {nonnegative, negative}.
    fn z_machine() -> OneCounterAutomaton {
        let t = Letter::positive(0);
        let ti = t.inverse();
        let tr = |from, letter, guard, delta, to| OcaTransition { from, letter: Some(letter), guard, delta, to };
        OneCounterAutomaton::new(
            Alphabet::new(["t"]).unwrap(),
            2,
            alloc::vec![
                tr(0, t, Guard::Any, 1, 0),
                tr(0, ti, Guard::Nonzero, -1, 0),
                tr(0, ti, Guard::Zero, 1, 1),
                tr(1, ti, Guard::Any, 1, 1),
                tr(1, t, Guard::Nonzero, -1, 1),
                tr(1, t, Guard::Zero, 1, 0),
            ],
            0,
            [0, 1].into_iter().collect(),
        )
        .unwrap()
    }

    #[test]
    fn counter_trace() {
        let m = z_machine();
        let w = Word::parse(m.alphabet(), "t t t^-1 t^-1").unwrap();
        let counters: Vec<u64> = m.trace(&w).iter().map(|s| s.iter().next().unwrap().1).collect();
        assert_eq!(counters, [0, 1, 2, 1, 0]);
        assert!(oca_run(&m, &w));
        assert!(!m.accepts(&Word::parse(m.alphabet(), "t t t^-1").unwrap()));
        assert!(m.accepts(&Word::parse(m.alphabet(), "t^-1 t^-1 t t").unwrap()));
    }

    #[test]
    fn unguarded_decrement_rejected() {
        let bad = OcaTransition { from: 0, letter: None, guard: Guard::Any, delta: -1, to: 0 };
        assert!(OneCounterAutomaton::new(Alphabet::standard(1), 1, alloc::vec![bad], 0, BTreeSet::new()).is_err());
    }

    #[test]
    fn stack_machine() {
        let s = StackAcceptor::new(Alphabet::standard(2));
        let w = |t| Word::parse(&Alphabet::standard(2), t).unwrap();
        assert!(stack_run(&s, &w("a a^-1")));
        assert!(!stack_run(&s, &w("a b")));
        assert_eq!(s.trace(&w("a b b^-1")).last().unwrap().len(), 1);
    }
}
