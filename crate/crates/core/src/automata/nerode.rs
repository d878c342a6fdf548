//! Myhill–Nerode lower bounds: pairwise separable words prove that any DFA
//! for the language needs at least that many states.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use super::hom::words_up_to;
use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::word::Word;

/// Words `w_1..w_k` with `suffixes[i][j]` separating `w_i` from `w_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerodeCertificate {
    pub words: Vec<Word>,
    pub suffixes: Vec<Vec<Option<Word>>>,
}

impl NerodeCertificate {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Re-checks every separating suffix against the oracle.
    pub fn verify(&self, oracle: impl Fn(&[Letter]) -> bool) -> bool {
        let k = self.words.len();
        (0..k).all(|i| {
            (0..k).all(|j| {
                if i == j {
                    return true;
                }
                match &self.suffixes[i][j] {
                    Some(s) => oracle(&self.words[i].concat(s)) != oracle(&self.words[j].concat(s)),
                    None => false,
                }
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NerodeSearch {
    Found(NerodeCertificate),
    /// Candidate words up to the radius ran out; not a proof that fewer classes exist.
    Exhausted {
        classes_found: usize,
    },
}

/// Longest suffix enumerated exhaustively; longer suffixes come from inverses
/// of the compared words.
const SHORT_SUFFIX_LEN: usize = 3;

/// Breadth-first shortlex search for `k` pairwise separable words of length
/// at most `search_radius`. Only words that opened a new class are extended.
///
/// Suffixes tried for a pair `(u, w)` are all words of length at most 3
/// together with `u^-1`, `w^-1`, and those inverses followed by the first
/// short accepted word, in shortlex order.
pub fn nerode_witnesses(oracle: impl Fn(&[Letter]) -> bool, alphabet: &Alphabet, k: usize, search_radius: usize) -> Result<NerodeSearch> {
    if k == 0 {
        return Err(Error::Input("k must be at least 1".into()));
    }
    let short = words_up_to(alphabet, search_radius.min(SHORT_SUFFIX_LEN));
    let anchor = short.iter().find(|w| oracle(w)).cloned();
    let suffixes_for = |u: &Word, w: &Word| -> Vec<Word> {
        let mut pool = short.clone();
        for v in [u, w] {
            let inv = v.inverse();
            if let Some(a) = &anchor {
                pool.push(inv.concat(a));
            }
            pool.push(inv);
        }
        pool.sort();
        pool.dedup();
        pool
    };

    let mut words: Vec<Word> = Vec::new();
    let mut separators: Vec<Vec<Option<Word>>> = Vec::new();
    let mut queue: VecDeque<Word> = [Word::empty()].into_iter().collect();
    while let Some(candidate) = queue.pop_front() {
        let mut row = Vec::with_capacity(words.len());
        for u in &words {
            let found = suffixes_for(u, &candidate).into_iter().find(|s| oracle(&u.concat(s)) != oracle(&candidate.concat(s)));
            match found {
                Some(s) => row.push(s),
                None => break,
            }
        }
        if row.len() < words.len() {
            continue;
        }
        for (i, s) in row.iter().enumerate() {
            separators[i].push(Some(s.clone()));
        }
        let mut own: Vec<Option<Word>> = row.into_iter().map(Some).collect();
        own.push(None);
        separators.push(own);
        words.push(candidate.clone());
        if words.len() == k {
            let certificate = NerodeCertificate { words, suffixes: separators };
            if !certificate.verify(&oracle) {
                return Err(Error::Inconsistency("Nerode certificate failed verification".into()));
            }
            return Ok(NerodeSearch::Found(certificate));
        }
        if candidate.len() < search_radius {
            for l in alphabet.letters() {
                let mut next = candidate.clone();
                next.push(l);
                queue.push_back(next);
            }
        }
    }
    Ok(NerodeSearch::Exhausted { classes_found: words.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, FreeGroup, Group, VirtuallyCyclic};

    fn wp<G: Group>(g: &G) -> impl Fn(&[Letter]) -> bool + '_ {
        move |w| g.is_identity(&g.eval_unchecked(w))
    }

    #[test]
    fn integers() {
        let z = VirtuallyCyclic::integers();
        let NerodeSearch::Found(cert) = nerode_witnesses(wp(&z), z.alphabet(), 3, 5).unwrap() else {
            panic!("expected witnesses");
        };
        assert_eq!(cert.len(), 3);
        assert!(cert.verify(wp(&z)));
        // ε and t are separated by the empty suffix.
        assert_eq!(cert.suffixes[0][1], Some(Word::empty()));
    }

    #[test]
    fn finite_cyclic_has_exactly_three_classes() {
        let z3 = FiniteGroup::cyclic(3, "g").unwrap();
        assert!(matches!(nerode_witnesses(wp(&z3), z3.alphabet(), 3, 4).unwrap(), NerodeSearch::Found(_)));
        for radius in [1, 4, 8] {
            assert_eq!(nerode_witnesses(wp(&z3), z3.alphabet(), 4, radius).unwrap(), NerodeSearch::Exhausted { classes_found: 3 });
        }
    }

    #[test]
    fn free_group() {
        let f2 = FreeGroup::new(2).unwrap();
        let NerodeSearch::Found(cert) = nerode_witnesses(wp(&f2), f2.alphabet(), 5, 3).unwrap() else {
            panic!("expected witnesses");
        };
        assert!(cert.verify(wp(&f2)));
        assert!(nerode_witnesses(wp(&f2), f2.alphabet(), 0, 3).is_err());
    }
}
