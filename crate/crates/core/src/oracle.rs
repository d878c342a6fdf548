//! Brute-force reference enumerations. These are deliberately naive and only
//! rely on group evaluation and raw automaton transitions.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Letter};
use crate::automata::{Label, Nfa};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::word::Word;

fn guard(value: usize, limit: usize, what: &str) -> Result<()> {
    if value > limit {
        return Err(Error::Guard(alloc::format!("{what} {value} exceeds the limit {limit}")));
    }
    Ok(())
}

/// `{π(w) : w ∈ L(nfa), |w| ≤ max_len}`.
pub fn brute_image<G: Group>(group: &G, nfa: &Nfa, max_len: usize) -> Result<BTreeSet<G::Element>> {
    guard(max_len, 16, "path length")?;
    if nfa.alphabet() != group.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    // Least number of letters needed to reach each (state, element); ε-moves are free.
    let mut dist: BTreeMap<(usize, G::Element), usize> = BTreeMap::new();
    let mut queue: VecDeque<(usize, G::Element, usize)> = VecDeque::new();
    for &s in nfa.start_states() {
        queue.push_back((s, group.identity(), 0));
    }
    while let Some((q, x, len)) = queue.pop_front() {
        if dist.get(&(q, x.clone())).is_some_and(|&d| d <= len) {
            continue;
        }
        dist.insert((q, x.clone()), len);
        for &(label, r) in nfa.edges_from(q) {
            match label {
                Label::Eps => queue.push_front((r, x.clone(), len)),
                Label::Sym(l) if len < max_len => queue.push_back((r, group.multiply(&x, &group.generator(l)), len + 1)),
                Label::Sym(_) => {}
            }
        }
    }
    Ok(dist.into_keys().filter(|(q, _)| nfa.accept_states().contains(q)).map(|(_, x)| x).collect())
}

/// All products of at most `max_factors` generators and their inverses.
pub fn brute_subgroup<G: Group>(group: &G, generators: &[Word], max_factors: usize) -> Result<BTreeSet<G::Element>> {
    guard(max_factors, 6, "factor count")?;
    let mut factors = Vec::new();
    for w in generators {
        let g = group.eval(w)?;
        factors.push(group.inverse(&g));
        factors.push(g);
    }
    let mut all: BTreeSet<G::Element> = [group.identity()].into_iter().collect();
    let mut layer = all.clone();
    for _ in 0..max_factors {
        layer = layer.iter().flat_map(|x| factors.iter().map(move |f| group.multiply(x, f))).collect();
        all.extend(layer.iter().cloned());
    }
    Ok(all)
}

/// `{x g x^-1 : |x| ≤ radius}`, with conjugators enumerated by their own BFS.
pub fn brute_conjugacy<G: Group>(group: &G, g: &G::Element, radius: usize) -> Result<BTreeSet<G::Element>> {
    guard(radius, 10, "conjugator radius")?;
    let mut conjugators: BTreeSet<G::Element> = [group.identity()].into_iter().collect();
    let mut frontier = conjugators.clone();
    for _ in 0..radius {
        let next: BTreeSet<G::Element> = frontier
            .iter()
            .flat_map(|x| group.alphabet().letters().map(move |l| group.multiply(x, &group.generator(l))))
            .filter(|y| !conjugators.contains(y))
            .collect();
        conjugators.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(conjugators.iter().map(|x| group.multiply(&group.multiply(x, g), &group.inverse(x))).collect())
}

/// Compares two acceptors on every word of length at most `max_len` and
/// returns the first shortlex counterexample, if any.
pub fn lang_equiv_bounded(
    a: impl Fn(&[Letter]) -> bool,
    b: impl Fn(&[Letter]) -> bool,
    alphabet: &Alphabet,
    max_len: usize,
) -> Result<Option<Word>> {
    guard(max_len, 12, "word length")?;
    let mut layer = alloc::vec![Word::empty()];
    for len in 0..=max_len {
        if let Some(w) = layer.iter().find(|w| a(w) != b(w)) {
            return Ok(Some(w.clone()));
        }
        if len == max_len {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.letters().map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    Ok(None)
}
