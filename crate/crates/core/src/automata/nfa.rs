use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use super::Dfa;
use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::word::Word;

/// Transition label: a letter or the empty word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Eps,
    Sym(Letter),
}

impl Label {
    pub fn letter(self) -> Option<Letter> {
        match self {
            Label::Eps => None,
            Label::Sym(l) => Some(l),
        }
    }
}

/// Nondeterministic automaton with ε-moves over an involutive alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    edges: Vec<Vec<(Label, usize)>>,
    start: BTreeSet<usize>,
    accept: BTreeSet<usize>,
}

impl Nfa {
    /// `states` states and no transitions; nothing is accepted.
    pub fn new(alphabet: Alphabet, states: usize) -> Self {
        Nfa { alphabet, edges: alloc::vec![Vec::new(); states], start: BTreeSet::new(), accept: BTreeSet::new() }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Nfa::new(alphabet, 0)
    }

    /// Accepts only the empty word.
    pub fn epsilon(alphabet: Alphabet) -> Self {
        let mut n = Nfa::new(alphabet, 1);
        n.start.insert(0);
        n.accept.insert(0);
        n
    }

    /// Accepts exactly one word.
    pub fn word(alphabet: Alphabet, word: &[Letter]) -> Self {
        let mut n = Nfa::new(alphabet, word.len() + 1);
        for (i, &l) in word.iter().enumerate() {
            n.edges[i].push((Label::Sym(l), i + 1));
        }
        n.start.insert(0);
        n.accept.insert(word.len());
        n
    }

    /// All words over the alphabet.
    pub fn universal(alphabet: Alphabet) -> Self {
        let mut n = Nfa::epsilon(alphabet);
        for l in n.alphabet.clone().letters() {
            n.edges[0].push((Label::Sym(l), 0));
        }
        n
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.edges.len()
    }

    pub fn start_states(&self) -> &BTreeSet<usize> {
        &self.start
    }

    pub fn accept_states(&self) -> &BTreeSet<usize> {
        &self.accept
    }

    pub fn edges_from(&self, state: usize) -> &[(Label, usize)] {
        &self.edges[state]
    }

    /// All transitions as `(from, label, to)`.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, Label, usize)> + '_ {
        self.edges.iter().enumerate().flat_map(|(p, es)| es.iter().map(move |&(l, q)| (p, l, q)))
    }

    pub fn add_state(&mut self) -> usize {
        self.edges.push(Vec::new());
        self.edges.len() - 1
    }

    pub fn add_transition(&mut self, from: usize, label: Label, to: usize) -> Result<()> {
        if from >= self.state_count() || to >= self.state_count() {
            return Err(Error::Input(alloc::format!("transition {from} -> {to} uses an unknown state")));
        }
        if let Label::Sym(l) = label {
            if !self.alphabet.contains(l) {
                return Err(Error::Input("transition label not in alphabet".into()));
            }
        }
        if !self.edges[from].contains(&(label, to)) {
            self.edges[from].push((label, to));
        }
        Ok(())
    }

    pub fn set_start(&mut self, state: usize) -> Result<()> {
        self.check_state(state)?;
        self.start.insert(state);
        Ok(())
    }

    pub fn set_accept(&mut self, state: usize) -> Result<()> {
        self.check_state(state)?;
        self.accept.insert(state);
        Ok(())
    }

    fn check_state(&self, state: usize) -> Result<()> {
        if state >= self.state_count() {
            return Err(Error::Input(alloc::format!("state {state} out of range")));
        }
        Ok(())
    }

    pub fn eps_closure(&self, states: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut closure = states.clone();
        let mut stack: Vec<usize> = states.iter().copied().collect();
        while let Some(p) = stack.pop() {
            for &(label, q) in &self.edges[p] {
                if label == Label::Eps && closure.insert(q) {
                    stack.push(q);
                }
            }
        }
        closure
    }

    /// Letter successors of an ε-closed set, ε-closed again.
    pub fn step(&self, states: &BTreeSet<usize>, letter: Letter) -> BTreeSet<usize> {
        let next =
            states.iter().flat_map(|&p| self.edges[p].iter()).filter(|&&(label, _)| label == Label::Sym(letter)).map(|&(_, q)| q).collect();
        self.eps_closure(&next)
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut current = self.eps_closure(&self.start);
        for &l in word {
            if current.is_empty() {
                return false;
            }
            current = self.step(&current, l);
        }
        current.iter().any(|q| self.accept.contains(q))
    }

    fn reachable_from(&self, seeds: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        let mut stack: Vec<usize> = Vec::new();
        for s in seeds {
            if seen.insert(s) {
                stack.push(s);
            }
        }
        while let Some(p) = stack.pop() {
            for &(_, q) in &self.edges[p] {
                if seen.insert(q) {
                    stack.push(q);
                }
            }
        }
        seen
    }

    pub fn is_empty(&self) -> bool {
        !self.reachable_from(self.start.iter().copied()).iter().any(|q| self.accept.contains(q))
    }

    /// A shortest accepted word (fewest letters), if any.
    pub fn shortest_accepted(&self) -> Option<Word> {
        // 0-1 BFS: ε-moves cost nothing.
        let mut best: BTreeMap<usize, (usize, Option<(usize, Label)>)> = BTreeMap::new();
        let mut deque = VecDeque::new();
        for &s in &self.start {
            best.insert(s, (0, None));
            deque.push_back(s);
        }
        while let Some(p) = deque.pop_front() {
            let d = best[&p].0;
            for &(label, q) in &self.edges[p] {
                let cost = d + usize::from(label != Label::Eps);
                if best.get(&q).is_none_or(|&(dq, _)| cost < dq) {
                    best.insert(q, (cost, Some((p, label))));
                    if label == Label::Eps {
                        deque.push_front(q);
                    } else {
                        deque.push_back(q);
                    }
                }
            }
        }
        let (&end, _) = self.accept.iter().filter_map(|q| best.get(q).map(|b| (q, b.0))).min_by_key(|&(q, d)| (d, *q))?;
        let mut letters = Vec::new();
        let mut cur = end;
        while let Some((p, label)) = best[&cur].1 {
            if let Label::Sym(l) = label {
                letters.push(l);
            }
            cur = p;
        }
        letters.reverse();
        Some(Word::from(letters))
    }

    /// Drops states that are not both reachable and co-reachable.
    pub fn trim(&self) -> Nfa {
        let forward = self.reachable_from(self.start.iter().copied());
        let mut reverse: Vec<Vec<usize>> = alloc::vec![Vec::new(); self.state_count()];
        for (p, _, q) in self.transitions() {
            reverse[q].push(p);
        }
        let mut backward: BTreeSet<usize> = self.accept.clone();
        let mut stack: Vec<usize> = backward.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &p in &reverse[q] {
                if backward.insert(p) {
                    stack.push(p);
                }
            }
        }
        let keep: Vec<usize> = forward.intersection(&backward).copied().collect();
        let index: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        let mut out = Nfa::new(self.alphabet.clone(), keep.len());
        for &p in &keep {
            for &(label, q) in &self.edges[p] {
                if let Some(&j) = index.get(&q) {
                    out.edges[index[&p]].push((label, j));
                }
            }
        }
        out.start = self.start.iter().filter_map(|q| index.get(q).copied()).collect();
        out.accept = self.accept.iter().filter_map(|q| index.get(q).copied()).collect();
        out
    }

    fn check_same_alphabet(&self, other: &Nfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    /// Copies `other`'s states in after this automaton's, returning the offset.
    fn absorb(&mut self, other: &Nfa) -> usize {
        let offset = self.state_count();
        for es in &other.edges {
            self.edges.push(es.iter().map(|&(l, q)| (l, q + offset)).collect());
        }
        offset
    }

    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        self.check_same_alphabet(other)?;
        let mut out = self.clone();
        let offset = out.absorb(other);
        out.start.extend(other.start.iter().map(|q| q + offset));
        out.accept.extend(other.accept.iter().map(|q| q + offset));
        Ok(out)
    }

    pub fn concat(&self, other: &Nfa) -> Result<Nfa> {
        self.check_same_alphabet(other)?;
        let mut out = self.clone();
        let offset = out.absorb(other);
        for &f in &self.accept {
            for &s in &other.start {
                out.edges[f].push((Label::Eps, s + offset));
            }
        }
        out.accept = other.accept.iter().map(|q| q + offset).collect();
        Ok(out)
    }

    /// Kleene star.
    pub fn star(&self) -> Nfa {
        let mut out = self.clone();
        let hub = out.add_state();
        for &s in &self.start {
            out.edges[hub].push((Label::Eps, s));
        }
        for &f in &self.accept {
            out.edges[f].push((Label::Eps, hub));
        }
        out.start = [hub].into_iter().collect();
        out.accept = [hub].into_iter().collect();
        out
    }

    /// Product construction; ε-moves interleave freely.
    pub fn intersect(&self, other: &Nfa) -> Result<Nfa> {
        self.check_same_alphabet(other)?;
        let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
        let mut out = Nfa::new(self.alphabet.clone(), 0);
        let mut intern = |pair: (usize, usize), out: &mut Nfa, queue: &mut VecDeque<(usize, usize)>| {
            *index.entry(pair).or_insert_with(|| {
                queue.push_back(pair);
                out.add_state()
            })
        };
        for &a in &self.start {
            for &b in &other.start {
                let s = intern((a, b), &mut out, &mut queue);
                out.start.insert(s);
            }
        }
        while let Some((a, b)) = queue.pop_front() {
            let from = intern((a, b), &mut out, &mut queue);
            if self.accept.contains(&a) && other.accept.contains(&b) {
                out.accept.insert(from);
            }
            for &(la, qa) in &self.edges[a] {
                if la == Label::Eps {
                    let to = intern((qa, b), &mut out, &mut queue);
                    out.edges[from].push((Label::Eps, to));
                    continue;
                }
                for &(lb, qb) in &other.edges[b] {
                    if lb == la {
                        let to = intern((qa, qb), &mut out, &mut queue);
                        out.edges[from].push((la, to));
                    }
                }
            }
            for &(lb, qb) in &other.edges[b] {
                if lb == Label::Eps {
                    let to = intern((a, qb), &mut out, &mut queue);
                    out.edges[from].push((Label::Eps, to));
                }
            }
        }
        Ok(out.trim())
    }

    /// Subset construction over ε-closures. Only non-empty subsets become
    /// states, so the result may be partial.
    pub fn determinize(&self) -> Dfa {
        let letters = self.alphabet.letter_count();
        let start = self.eps_closure(&self.start);
        let mut index: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
        let mut subsets: Vec<BTreeSet<usize>> = Vec::new();
        let mut trans: Vec<Vec<Option<usize>>> = Vec::new();
        index.insert(start.clone(), 0);
        subsets.push(start);
        let mut i = 0;
        while i < subsets.len() {
            let mut row = alloc::vec![None; letters];
            for (k, slot) in row.iter_mut().enumerate() {
                let next = self.step(&subsets[i], Letter::from_index(k));
                if next.is_empty() {
                    continue;
                }
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        index.insert(next.clone(), id);
                        subsets.push(next);
                        id
                    }
                };
                *slot = Some(id);
            }
            trans.push(row);
            i += 1;
        }
        let accept = subsets.iter().map(|s| s.iter().any(|q| self.accept.contains(q))).collect();
        Dfa::from_parts(self.alphabet.clone(), trans, 0, accept).expect("subset construction is deterministic")
    }

    /// `L(self) ⊆ L(other)`.
    pub fn is_subset_of(&self, other: &Nfa) -> Result<bool> {
        Ok(self.inclusion_counterexample(other)?.is_none())
    }

    /// A shortest word of `L(self) \ L(other)`.
    pub fn inclusion_counterexample(&self, other: &Nfa) -> Result<Option<Word>> {
        let complement = other.determinize().complement().to_nfa();
        Ok(self.intersect(&complement)?.shortest_accepted())
    }

    pub fn equivalent(&self, other: &Nfa) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }
}
