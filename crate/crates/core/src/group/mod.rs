//! Group backends: evaluation maps from words to normal-form elements.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Debug;

use crate::alphabet::{Alphabet, Letter};
use crate::error::Result;
use crate::word::Word;

mod finite;
mod free;
mod vc;

pub use finite::FiniteGroup;
pub use free::FreeGroup;
pub use vc::{VcElement, VirtuallyCyclic};

/// A finitely generated group with a fixed involutive generating alphabet.
///
/// Inverse letters always evaluate to inverse elements, so `eval` is the
/// surjective monoid homomorphism from words onto the group.
pub trait Group {
    type Element: Clone + Ord + Debug;

    fn alphabet(&self) -> &Alphabet;

    fn identity(&self) -> Self::Element;

    /// Image of a single letter.
    fn generator(&self, letter: Letter) -> Self::Element;

    fn multiply(&self, x: &Self::Element, y: &Self::Element) -> Self::Element;

    fn inverse(&self, x: &Self::Element) -> Self::Element;

    /// Some word evaluating to `x`.
    fn word_for(&self, x: &Self::Element) -> Word;

    /// Relations `(u, v)` meaning `u = v`, which together define the group
    /// on its alphabet. Free groups have none.
    fn relations(&self) -> Vec<(Word, Word)>;

    fn format_element(&self, x: &Self::Element) -> String;

    /// Number of elements, when finite.
    fn order(&self) -> Option<usize> {
        None
    }

    fn eval(&self, word: &[Letter]) -> Result<Self::Element> {
        Word::from(word.to_vec()).check_alphabet(self.alphabet())?;
        Ok(self.eval_unchecked(word))
    }

    /// Evaluation for words already known to lie over the alphabet.
    fn eval_unchecked(&self, word: &[Letter]) -> Self::Element {
        word.iter().fold(self.identity(), |acc, &l| self.multiply(&acc, &self.generator(l)))
    }

    fn act(&self, x: &Self::Element, letter: Letter) -> Self::Element {
        self.multiply(x, &self.generator(letter))
    }

    fn is_identity(&self, x: &Self::Element) -> bool {
        *x == self.identity()
    }
}

/// Elements of word length at most `radius`, each with its shortlex-least witness.
pub fn ball<G: Group>(group: &G, radius: usize) -> BTreeMap<G::Element, Word> {
    let mut seen = BTreeMap::new();
    seen.insert(group.identity(), Word::empty());
    let mut frontier = alloc::vec![(group.identity(), Word::empty())];
    for _ in 0..radius {
        let mut next = Vec::new();
        // Parents are visited in shortlex order of their witnesses, so the
        // first witness found for an element is shortlex-minimal.
        for (x, w) in &frontier {
            for l in group.alphabet().letters() {
                let y = group.act(x, l);
                if !seen.contains_key(&y) {
                    let mut wy = w.clone();
                    wy.push(l);
                    seen.insert(y.clone(), wy.clone());
                    next.push((y, wy));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen
}

/// Element set of a ball, for set comparisons.
pub fn ball_elements<G: Group>(group: &G, radius: usize) -> BTreeSet<G::Element> {
    ball(group, radius).into_keys().collect()
}

/// Any of the three concrete backends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupBackend {
    Free(FreeGroup),
    Finite(FiniteGroup),
    VirtuallyCyclic(VirtuallyCyclic),
}

impl GroupBackend {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            GroupBackend::Free(g) => g.alphabet(),
            GroupBackend::Finite(g) => g.alphabet(),
            GroupBackend::VirtuallyCyclic(g) => g.alphabet(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GroupBackend::Free(_) => "free",
            GroupBackend::Finite(_) => "finite",
            GroupBackend::VirtuallyCyclic(_) => "virtually_cyclic",
        }
    }

    /// Evaluates a word and formats the normal form.
    pub fn eval_to_string(&self, word: &[Letter]) -> Result<String> {
        Ok(match self {
            GroupBackend::Free(g) => g.format_element(&g.eval(word)?),
            GroupBackend::Finite(g) => g.format_element(&g.eval(word)?),
            GroupBackend::VirtuallyCyclic(g) => g.format_element(&g.eval(word)?),
        })
    }

    pub fn is_trivial_word(&self, word: &[Letter]) -> Result<bool> {
        Ok(match self {
            GroupBackend::Free(g) => g.eval(word)?.is_empty(),
            GroupBackend::Finite(g) => {
                let x = g.eval(word)?;
                g.is_identity(&x)
            }
            GroupBackend::VirtuallyCyclic(g) => {
                let x = g.eval(word)?;
                g.is_identity(&x)
            }
        })
    }
}
