//! Recognizable subsets in finite-quotient form.
//!
//! A [`CosetAction`] is a transitive right action of the generators on a
//! finite set by permutations; when it respects the group's relations it is
//! the action on the cosets of a finite-index subgroup. A
//! [`RecognizableSubset`] picks a set of accepted cosets, and its full
//! preimage under evaluation is the language of the corresponding DFA.

use alloc::collections::btree_map::Entry;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Letter};
use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::group::{Group, VcElement, VirtuallyCyclic};
use crate::rational::RationalSubset;

/// Right action of the letters on `0..coset_count` with a distinguished base point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetAction {
    alphabet: Alphabet,
    /// `table[letter.index()][coset]`.
    table: Vec<Vec<usize>>,
    base: usize,
}

impl CosetAction {
    pub fn new(alphabet: Alphabet, table: Vec<Vec<usize>>, base: usize) -> Result<Self> {
        if table.len() != alphabet.letter_count() {
            return Err(Error::Input("coset action needs one row per letter".into()));
        }
        let n = table.first().map_or(0, Vec::len);
        if n == 0 && alphabet.rank() > 0 || base >= n.max(1) {
            return Err(Error::Input("coset action needs at least one coset".into()));
        }
        for l in alphabet.letters() {
            let row = &table[l.index()];
            if row.len() != n || row.iter().any(|&c| c >= n) {
                return Err(Error::Input("coset action row has the wrong size".into()));
            }
            let inverse = &table[l.inverse().index()];
            if (0..n).any(|c| inverse[row[c]] != c) {
                return Err(Error::Input(alloc::format!("action of {} is not inverted by its inverse letter", alphabet.name(l))));
            }
        }
        Ok(CosetAction { alphabet, table, base })
    }

    /// One coset, every letter fixes it.
    pub fn trivial(alphabet: Alphabet) -> Self {
        let table = alloc::vec![alloc::vec![0]; alphabet.letter_count()];
        CosetAction { alphabet, table, base: 0 }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn coset_count(&self) -> usize {
        self.table.first().map_or(1, Vec::len)
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn apply(&self, coset: usize, letter: Letter) -> usize {
        self.table[letter.index()][coset]
    }

    pub fn run_from(&self, coset: usize, word: &[Letter]) -> usize {
        word.iter().fold(coset, |c, &l| self.apply(c, l))
    }

    pub fn run(&self, word: &[Letter]) -> usize {
        self.run_from(self.base, word)
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Whether every relation of the group acts trivially, i.e. the action
    /// factors through the group.
    pub fn respects<G: Group>(&self, group: &G) -> bool {
        group.alphabet() == &self.alphabet
            && group.relations().iter().all(|(u, v)| (0..self.coset_count()).all(|c| self.run_from(c, u) == self.run_from(c, v)))
    }

    /// Points reachable from the base.
    pub fn orbit(&self) -> Vec<usize> {
        let mut seen = alloc::vec![false; self.coset_count()];
        let mut order = alloc::vec![self.base];
        seen[self.base] = true;
        let mut i = 0;
        while i < order.len() {
            for l in self.alphabet.letters() {
                let d = self.apply(order[i], l);
                if !core::mem::replace(&mut seen[d], true) {
                    order.push(d);
                }
            }
            i += 1;
        }
        order
    }

    /// Restriction to the orbit of the base, renumbered in BFS order.
    /// Returns the map from old points to new ones.
    pub fn restrict_to_orbit(&self) -> (CosetAction, BTreeMap<usize, usize>) {
        let order = self.orbit();
        let index: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let table = self.table.iter().map(|row| order.iter().map(|&c| index[&row[c]]).collect()).collect();
        (CosetAction { alphabet: self.alphabet.clone(), table, base: 0 }, index)
    }

    /// Diagonal action on pairs, restricted to the orbit of the base pair.
    /// Returns the action and the pair each new point stands for.
    pub fn product(&self, other: &CosetAction) -> Result<(CosetAction, Vec<(usize, usize)>)> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut pairs = alloc::vec![(self.base, other.base)];
        let mut index: BTreeMap<(usize, usize), usize> = [((self.base, other.base), 0)].into_iter().collect();
        let mut i = 0;
        while i < pairs.len() {
            let (a, b) = pairs[i];
            for l in self.alphabet.letters() {
                let next = (self.apply(a, l), other.apply(b, l));
                if let Entry::Vacant(e) = index.entry(next) {
                    e.insert(pairs.len());
                    pairs.push(next);
                }
            }
            i += 1;
        }
        let table =
            self.alphabet.letters().map(|l| pairs.iter().map(|&(a, b)| index[&(self.apply(a, l), other.apply(b, l))]).collect()).collect();
        Ok((CosetAction { alphabet: self.alphabet.clone(), table, base: 0 }, pairs))
    }
}

/// A union of cosets of a finite-index subgroup, given by a coset action
/// and the accepted cosets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognizableSubset<G> {
    group: G,
    action: CosetAction,
    accepted: BTreeSet<usize>,
}

impl<G: Group + Clone> RecognizableSubset<G> {
    /// Checks that the action factors through the group.
    pub fn new(group: G, action: CosetAction, accepted: BTreeSet<usize>) -> Result<Self> {
        if group.alphabet() != action.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        if accepted.iter().any(|&c| c >= action.coset_count()) {
            return Err(Error::Input("accepted coset out of range".into()));
        }
        if !action.respects(&group) {
            return Err(Error::Precondition("coset action does not factor through the group".into()));
        }
        Ok(RecognizableSubset { group, action, accepted })
    }

    pub fn whole(group: G) -> Self {
        let action = CosetAction::trivial(group.alphabet().clone());
        RecognizableSubset { group, action, accepted: [0].into_iter().collect() }
    }

    pub fn empty(group: G) -> Self {
        let action = CosetAction::trivial(group.alphabet().clone());
        RecognizableSubset { group, action, accepted: BTreeSet::new() }
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn action(&self) -> &CosetAction {
        &self.action
    }

    pub fn accepted(&self) -> &BTreeSet<usize> {
        &self.accepted
    }

    pub fn contains_word(&self, word: &[Letter]) -> bool {
        self.accepted.contains(&self.action.run(word))
    }

    pub fn contains(&self, x: &G::Element) -> bool {
        self.contains_word(&self.group.word_for(x))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.group.alphabet() != other.group.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    fn combine(&self, other: &Self, keep: impl Fn(bool, bool) -> bool) -> Result<Self> {
        self.check_compatible(other)?;
        let (action, pairs) = self.action.product(&other.action)?;
        let accepted = pairs
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| keep(self.accepted.contains(a), other.accepted.contains(b)))
            .map(|(i, _)| i)
            .collect();
        Ok(RecognizableSubset { group: self.group.clone(), action, accepted })
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a && b)
    }

    pub fn complement(&self) -> Self {
        let accepted = (0..self.action.coset_count()).filter(|c| !self.accepted.contains(c)).collect();
        RecognizableSubset { group: self.group.clone(), action: self.action.clone(), accepted }
    }

    /// DFA of the full preimage: states are cosets.
    pub fn preimage_dfa(&self) -> Dfa {
        self.coset_dfa(&self.accepted)
    }

    /// DFA of the words evaluating into one coset.
    pub fn coset_language(&self, target: usize) -> Result<Dfa> {
        if target >= self.action.coset_count() {
            return Err(Error::Input(alloc::format!("coset {target} out of range")));
        }
        Ok(self.coset_dfa(&[target].into_iter().collect()))
    }

    fn coset_dfa(&self, accepted: &BTreeSet<usize>) -> Dfa {
        let n = self.action.coset_count();
        let trans = (0..n).map(|c| self.group.alphabet().letters().map(|l| Some(self.action.apply(c, l))).collect()).collect();
        let accept = (0..n).map(|c| accepted.contains(&c)).collect();
        Dfa::from_parts(self.group.alphabet().clone(), trans, self.action.base(), accept).expect("coset DFA is well formed")
    }

    pub fn to_rational(&self) -> RationalSubset<G> {
        RationalSubset::new(self.group.clone(), self.preimage_dfa().to_nfa()).expect("same alphabet")
    }
}

impl RecognizableSubset<VirtuallyCyclic> {
    /// `{(z, i) : (z mod m, i) accepted}`, acting on the `m * n` points
    /// `(r, i)` numbered `(i - 1) * m + r`.
    pub fn from_modulus(group: VirtuallyCyclic, modulus: usize, accepted: &[(i64, usize)]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Input("modulus must be at least 1".into()));
        }
        let n = group.classes();
        let m = modulus as i64;
        let point = |r: i64, class: usize| (class - 1) * modulus + r.rem_euclid(m) as usize;
        let mut table = Vec::with_capacity(group.alphabet().letter_count());
        for l in group.alphabet().letters() {
            let mut row = alloc::vec![0; modulus * n];
            for class in 1..=n {
                let (dz, next) = group.step(class, l);
                for r in 0..m {
                    row[point(r, class)] = point(r + dz, next);
                }
            }
            table.push(row);
        }
        let action = CosetAction::new(group.alphabet().clone(), table, 0)?;
        let mut set = BTreeSet::new();
        for &(r, class) in accepted {
            group.check_element(&VcElement::new(r, class))?;
            set.insert(point(r, class));
        }
        Ok(RecognizableSubset { group, action, accepted: set })
    }
}
