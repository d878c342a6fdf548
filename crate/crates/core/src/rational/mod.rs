//! Rational subsets: images of regular languages under evaluation.

mod semilinear;
mod weighted;

pub use semilinear::SemilinearZ;
pub use weighted::WeightedAutomaton;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::alphabet::Letter;
use crate::automata::{reduced_filter, Label, Nfa};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, FreeGroup, Group, VirtuallyCyclic};
use crate::recognizable::RecognizableSubset;
use crate::word::{free_reduce, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The image `π(L)` of the language of an automaton over the group's alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSubset<G> {
    group: G,
    nfa: Nfa,
}

impl<G: Group + Clone> RationalSubset<G> {
    pub fn new(group: G, nfa: Nfa) -> Result<Self> {
        if nfa.alphabet() != group.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        Ok(RationalSubset { group, nfa })
    }

    pub fn empty(group: G) -> Self {
        let nfa = Nfa::empty(group.alphabet().clone());
        RationalSubset { group, nfa }
    }

    /// `{π(w)}`.
    pub fn from_word(group: G, word: &[Letter]) -> Result<Self> {
        word.iter().copied().collect::<Word>().check_alphabet(group.alphabet())?;
        let nfa = Nfa::word(group.alphabet().clone(), word);
        Ok(RationalSubset { group, nfa })
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn nfa(&self) -> &Nfa {
        &self.nfa
    }

    pub fn into_nfa(self) -> Nfa {
        self.nfa
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        Ok(RationalSubset { group: self.group.clone(), nfa: self.nfa.union(&other.nfa)? })
    }

    /// Pointwise product `X Y`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        Ok(RationalSubset { group: self.group.clone(), nfa: self.nfa.concat(&other.nfa)? })
    }

    /// The submonoid generated by `X`.
    pub fn star(&self) -> Self {
        RationalSubset { group: self.group.clone(), nfa: self.nfa.star() }
    }

    /// `π(X) ∩ R`, by running the preimage DFA of `R` alongside.
    pub fn intersect_recognizable(&self, r: &RecognizableSubset<G>) -> Result<Self> {
        if r.group().alphabet() != self.group.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let nfa = self.nfa.intersect(&r.preimage_dfa().to_nfa())?;
        Ok(RationalSubset { group: self.group.clone(), nfa })
    }

    /// `π(X) π(g)` or `π(g) π(X)`.
    pub fn translate(&self, g: &[Letter], side: Side) -> Result<Self> {
        let word = Nfa::word(self.group.alphabet().clone(), g);
        g.iter().copied().collect::<Word>().check_alphabet(self.group.alphabet())?;
        let nfa = match side {
            Side::Right => self.nfa.concat(&word)?,
            Side::Left => word.concat(&self.nfa)?,
        };
        Ok(RationalSubset { group: self.group.clone(), nfa })
    }
}

/// Whether an element lies in a rational subset.
pub trait RationalMembership {
    fn rat_member(&self, word: &[Letter]) -> Result<bool>;
}

pub fn rat_member<X: RationalMembership>(x: &X, word: &[Letter]) -> Result<bool> {
    x.rat_member(word)
}

/// Adds ε-edges `p -> q` whenever `p -a-> r =ε=> s -a^-1-> q`, until fixpoint.
/// Afterwards a reduced word is accepted iff it is the free reduction of an
/// accepted word of the original automaton.
pub fn benois_saturate(nfa: &Nfa) -> Nfa {
    let mut out = nfa.clone();
    loop {
        let closures: Vec<BTreeSet<usize>> = (0..out.state_count()).map(|q| out.eps_closure(&[q].into_iter().collect())).collect();
        let mut added = Vec::new();
        for p in 0..out.state_count() {
            for &(label, r) in out.edges_from(p) {
                let Label::Sym(a) = label else { continue };
                for &s in &closures[r] {
                    for &(back, q) in out.edges_from(s) {
                        if back == Label::Sym(a.inverse()) && !closures[p].contains(&q) {
                            added.push((p, q));
                        }
                    }
                }
            }
        }
        if added.is_empty() {
            return out;
        }
        for (p, q) in added {
            out.add_transition(p, Label::Eps, q).expect("states exist");
        }
    }
}

impl RationalSubset<FreeGroup> {
    pub fn benois_saturate(&self) -> Nfa {
        benois_saturate(&self.nfa)
    }

    /// Automaton accepting exactly the reduced forms of the elements.
    pub fn reduced_language(&self) -> Nfa {
        self.benois_saturate().intersect(&reduced_filter(self.group.alphabet()).to_nfa()).expect("same alphabet")
    }

    pub fn contains_word(&self, word: &[Letter]) -> bool {
        benois_saturate(&self.nfa).accepts(&free_reduce(word))
    }
}

impl RationalMembership for RationalSubset<FreeGroup> {
    fn rat_member(&self, word: &[Letter]) -> Result<bool> {
        word.iter().copied().collect::<Word>().check_alphabet(self.group.alphabet())?;
        Ok(self.contains_word(word))
    }
}

impl RationalSubset<FiniteGroup> {
    /// Exact image, by a fixpoint over (state, element) pairs.
    pub fn image_finite(&self) -> BTreeSet<usize> {
        let g = &self.group;
        let mut seen: BTreeSet<(usize, usize)> = self.nfa.start_states().iter().map(|&s| (s, g.identity())).collect();
        let mut stack: Vec<(usize, usize)> = seen.iter().copied().collect();
        while let Some((q, x)) = stack.pop() {
            for &(label, r) in self.nfa.edges_from(q) {
                let y = match label {
                    Label::Eps => x,
                    Label::Sym(l) => g.act(&x, l),
                };
                if seen.insert((r, y)) {
                    stack.push((r, y));
                }
            }
        }
        seen.into_iter().filter(|(q, _)| self.nfa.accept_states().contains(q)).map(|(_, x)| x).collect()
    }
}

pub fn image_finite(x: &RationalSubset<FiniteGroup>) -> BTreeSet<usize> {
    x.image_finite()
}

impl RationalMembership for RationalSubset<FiniteGroup> {
    fn rat_member(&self, word: &[Letter]) -> Result<bool> {
        let target = self.group.eval(word)?;
        Ok(self.image_finite().contains(&target))
    }
}

impl RationalSubset<VirtuallyCyclic> {
    /// Product of the automaton with the class of the running element:
    /// state `q * n + (i - 1)`, edge weights are the changes of the
    /// `t`-exponent. Start states carry class 1.
    pub fn weighted_product(&self) -> (WeightedAutomaton, BTreeSet<usize>) {
        let g = &self.group;
        let n = g.classes();
        let mut wa = WeightedAutomaton::new(self.nfa.state_count() * n);
        for (p, label, q) in self.nfa.transitions() {
            for i in 1..=n {
                match label {
                    Label::Eps => wa.add_edge(p * n + i - 1, 0, q * n + i - 1),
                    Label::Sym(l) => {
                        let (dz, j) = g.step(i, l);
                        wa.add_edge(p * n + i - 1, dz, q * n + j - 1);
                    }
                }
            }
        }
        let starts = self.nfa.start_states().iter().map(|&s| s * n).collect();
        (wa, starts)
    }

    /// `C_i = {z : (z, i) ∈ π(X)}` for each class `i` (index `i - 1`).
    pub fn class_images(&self) -> Result<Vec<SemilinearZ>> {
        let n = self.group.classes();
        let (wa, starts) = self.weighted_product();
        (1..=n)
            .map(|i| {
                let finals = self.nfa.accept_states().iter().map(|&f| f * n + i - 1).collect();
                wa.verified_path_weights(&starts, &finals)
            })
            .collect()
    }

    /// The image of a rational subset of `Z`, exactly.
    pub fn z_image(&self) -> Result<SemilinearZ> {
        if !self.group.is_integers() {
            return Err(Error::Unsupported("z_image needs the group Z (one transversal class)".into()));
        }
        Ok(self.class_images()?.remove(0))
    }
}

impl RationalMembership for RationalSubset<VirtuallyCyclic> {
    fn rat_member(&self, word: &[Letter]) -> Result<bool> {
        let x = self.group.eval(word)?;
        let d = crate::structure::decompose_vc(self, 1)?;
        Ok(d.contains(&x))
    }
}

/// `X ∩ N` as a recognizable subset of `N`, where the letters of `N` act
/// through the words of `embedding`. The pulled-back action is restricted
/// to the orbit of the base.
pub fn restrict_universal<G: Group + Clone, N: Group + Clone>(
    r: &RecognizableSubset<G>,
    subgroup: N,
    embedding: &[Word],
) -> Result<RecognizableSubset<N>> {
    use crate::recognizable::CosetAction;
    if embedding.len() != subgroup.alphabet().rank() {
        return Err(Error::Input("one embedding word per subgroup generator required".into()));
    }
    for w in embedding {
        w.check_alphabet(r.group().alphabet())?;
    }
    let action = r.action();
    let table = subgroup
        .alphabet()
        .letters()
        .map(|y| {
            let w = if y.is_positive() { embedding[y.generator()].clone() } else { embedding[y.generator()].inverse() };
            (0..action.coset_count()).map(|c| action.run_from(c, &w)).collect()
        })
        .collect();
    let pulled = CosetAction::new(subgroup.alphabet().clone(), table, action.base())?;
    let (restricted, index) = pulled.restrict_to_orbit();
    let accepted = r.accepted().iter().filter_map(|c| index.get(c).copied()).collect();
    RecognizableSubset::new(subgroup, restricted, accepted)
}
