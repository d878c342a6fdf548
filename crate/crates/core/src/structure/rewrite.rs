use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use crate::alphabet::Letter;
use crate::automata::{hom_image, Homomorphism, Label, Nfa};
use crate::error::{Error, Result};
use crate::group::{FreeGroup, Group};
use crate::rational::RationalSubset;
use crate::stallings::StallingsGraph;
use crate::word::{free_reduce, Word};

/// A rational subset of `H` written over a free basis `x1..xk` of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupRewrite {
    /// Sends `x_i` to the i-th basis word of `H`.
    pub basis: Homomorphism,
    pub subset: RationalSubset<FreeGroup>,
}

impl SubgroupRewrite {
    /// The same subset back in the ambient free group.
    pub fn substitute(&self, ambient: &FreeGroup) -> Result<RationalSubset<FreeGroup>> {
        RationalSubset::new(ambient.clone(), hom_image(&self.basis, self.subset.nfa())?)
    }
}

/// Checks `π(X) ⊆ H`, reporting the shortest reduced word of `π(X) \ H`.
pub fn check_contained(x: &RationalSubset<FreeGroup>, h: &StallingsGraph) -> Result<()> {
    if x.group().alphabet() != h.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    match x.reduced_language().inclusion_counterexample(&h.loop_dfa().to_nfa())? {
        Some(witness) => Err(Error::NotContained { witness }),
        None => Ok(()),
    }
}

/// Rewrites a rational subset contained in `H` over a free basis of `H`.
///
/// The Benois-saturated automaton runs in parallel with the Stallings graph;
/// every non-tree edge of the graph emits its basis letter and tree edges
/// emit nothing, so a path spelling `w` emits a basis word equal to `w` in `H`.
pub fn rewrite_into_subgroup(x: &RationalSubset<FreeGroup>, h: &StallingsGraph) -> Result<SubgroupRewrite> {
    check_contained(x, h)?;
    let basis = h.basis_homomorphism();
    let labels = h.edge_labels();
    let sat = x.benois_saturate();
    let mut out = Nfa::new(basis.source().clone(), 0);
    let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    let mut intern = |pair: (usize, usize), out: &mut Nfa, queue: &mut VecDeque<(usize, usize)>| -> usize {
        *index.entry(pair).or_insert_with(|| {
            queue.push_back(pair);
            out.add_state()
        })
    };
    for &s in sat.start_states() {
        let id = intern((s, h.base()), &mut out, &mut queue);
        out.set_start(id)?;
    }
    while let Some((q, v)) = queue.pop_front() {
        let from = intern((q, v), &mut out, &mut queue);
        if v == h.base() && sat.accept_states().contains(&q) {
            out.set_accept(from)?;
        }
        for &(label, r) in sat.edges_from(q) {
            match label {
                Label::Eps => {
                    let to = intern((r, v), &mut out, &mut queue);
                    out.add_transition(from, Label::Eps, to)?;
                }
                Label::Sym(a) => {
                    if let Some(u) = h.next(v, a) {
                        let to = intern((r, u), &mut out, &mut queue);
                        let emitted = labels[v][a.index()].map_or(Label::Eps, Label::Sym);
                        out.add_transition(from, emitted, to)?;
                    }
                }
            }
        }
    }
    let group = FreeGroup::with_alphabet(basis.source().clone());
    let subset = RationalSubset::new(group, out.trim())?;
    Ok(SubgroupRewrite { basis, subset })
}

/// Reads a word along the graph, returning the basis word it spells, if the
/// reduced word is a closed path at the base.
pub fn express_in_basis(h: &StallingsGraph, word: &[Letter]) -> Option<Word> {
    let labels = h.edge_labels();
    let mut v = h.base();
    let mut out = Vec::new();
    for &a in free_reduce(word).iter() {
        if let Some(x) = labels[v][a.index()] {
            out.push(x);
        }
        v = h.next(v, a)?;
    }
    (v == h.base()).then(|| Word::from(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ball;

    fn f2() -> FreeGroup {
        FreeGroup::new(2).unwrap()
    }

    fn w(text: &str) -> Word {
        Word::parse(f2().alphabet(), text).unwrap()
    }

    fn subset(words: &[&str]) -> RationalSubset<FreeGroup> {
        let nfa =
            words.iter().fold(Nfa::empty(f2().alphabet().clone()), |acc, t| acc.union(&Nfa::word(f2().alphabet().clone(), &w(t))).unwrap());
        RationalSubset::new(f2(), nfa).unwrap()
    }

    fn a2_b() -> StallingsGraph {
        StallingsGraph::from_generators(&f2(), &[w("a a"), w("b")]).unwrap()
    }

    #[test]
    fn rewrites_over_a_squared_and_b() {
        let h = a2_b();
        let r = rewrite_into_subgroup(&subset(&["a a b", "a a a a"]), &h).unwrap();
        let xs = r.basis.source().clone();
        let p = |t: &str| Word::parse(&xs, t).unwrap();
        // Basis order follows the graph: x1 = b, x2 = a a.
        assert_eq!(r.basis.apply(&p("x1")), w("b"));
        assert_eq!(r.basis.apply(&p("x2")), w("a a"));
        assert!(r.subset.contains_word(&p("x2 x1")));
        assert!(r.subset.contains_word(&p("x2 x2")));
        assert!(!r.subset.contains_word(&p("x1 x2")));
        let back = r.substitute(&f2()).unwrap();
        let orig = subset(&["a a b", "a a a a"]);
        for u in ball(&f2(), 6).values() {
            assert_eq!(back.contains_word(u), orig.contains_word(u));
        }
    }

    #[test]
    fn identity_is_rewritten_to_identity() {
        let r = rewrite_into_subgroup(&subset(&[""]), &a2_b()).unwrap();
        assert!(r.subset.contains_word(&[]));
        assert_eq!(r.subset.nfa().shortest_accepted(), Some(Word::empty()));
        let xs = r.basis.source().clone();
        assert!(!r.subset.contains_word(&Word::parse(&xs, "x1").unwrap()));
    }

    #[test]
    fn containment_witness() {
        match rewrite_into_subgroup(&subset(&["a"]), &a2_b()) {
            Err(Error::NotContained { witness }) => assert_eq!(witness, w("a")),
            other => panic!("expected containment error, got {other:?}"),
        }
    }

    #[test]
    fn basis_expression() {
        let h = a2_b();
        let xs = h.basis_homomorphism().source().clone();
        assert_eq!(express_in_basis(&h, &w("a a b a^-1 a^-1")), Some(Word::parse(&xs, "x2 x1 x2^-1").unwrap()));
        assert_eq!(express_in_basis(&h, &w("a")), None);
    }
}
