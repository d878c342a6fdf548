use alloc::vec::Vec;

use super::{Dfa, Label, Nfa};
use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::word::Word;

/// A monoid homomorphism between free monoids over involutive alphabets that
/// commutes with the involution: `h(x^-1)` is the formal inverse of `h(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Word>,
}

impl Homomorphism {
    /// `images[k]` is the image of the `k`-th positive source letter.
    pub fn new(source: Alphabet, target: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::Input("one image per source letter required".into()));
        }
        for image in &images {
            image.check_alphabet(&target)?;
        }
        Ok(Homomorphism { source, target, images })
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn image_of(&self, letter: Letter) -> Word {
        let w = &self.images[letter.generator()];
        if letter.is_positive() {
            w.clone()
        } else {
            w.inverse()
        }
    }

    pub fn apply(&self, word: &[Letter]) -> Word {
        word.iter().flat_map(|&l| self.image_of(l).into_letters()).collect()
    }
}

/// Automaton over the source alphabet accepting `{w : h(w) ∈ L}`.
pub fn inverse_hom(h: &Homomorphism, language: &Nfa) -> Result<Nfa> {
    if language.alphabet() != h.target() {
        return Err(Error::AlphabetMismatch);
    }
    let states = language.state_count();
    let mut out = Nfa::new(h.source().clone(), states);
    for p in 0..states {
        let from = language.eps_closure(&[p].into_iter().collect());
        for l in h.source().letters() {
            let mut current = from.clone();
            for &t in h.image_of(l).iter() {
                current = language.step(&current, t);
            }
            for q in current {
                out.add_transition(p, Label::Sym(l), q)?;
            }
        }
        if from.iter().any(|q| language.accept_states().contains(q)) {
            out.set_accept(p)?;
        }
    }
    for &s in language.start_states() {
        out.set_start(s)?;
    }
    Ok(out)
}

/// Automaton over the target alphabet accepting `{h(w) : w ∈ L}`.
pub fn hom_image(h: &Homomorphism, language: &Nfa) -> Result<Nfa> {
    if language.alphabet() != h.source() {
        return Err(Error::AlphabetMismatch);
    }
    let mut out = Nfa::new(h.target().clone(), language.state_count());
    for (p, label, q) in language.transitions() {
        let image = match label {
            Label::Eps => Word::empty(),
            Label::Sym(l) => h.image_of(l),
        };
        if image.is_empty() {
            out.add_transition(p, Label::Eps, q)?;
            continue;
        }
        let mut cur = p;
        for (i, &t) in image.iter().enumerate() {
            let next = if i + 1 == image.len() { q } else { out.add_state() };
            out.add_transition(cur, Label::Sym(t), next)?;
            cur = next;
        }
    }
    for &s in language.start_states() {
        out.set_start(s)?;
    }
    for &f in language.accept_states() {
        out.set_accept(f)?;
    }
    Ok(out)
}

/// DFA of the freely reduced words. State 0 is the start; state `1 + k`
/// remembers that the last letter read had index `k`.
pub fn reduced_filter(alphabet: &Alphabet) -> Dfa {
    let letters = alphabet.letter_count();
    let mut trans = Vec::with_capacity(letters + 1);
    let row = |last: Option<Letter>| -> Vec<Option<usize>> {
        (0..letters)
            .map(|k| {
                let l = Letter::from_index(k);
                (last != Some(l.inverse())).then_some(k + 1)
            })
            .collect()
    };
    trans.push(row(None));
    for k in 0..letters {
        trans.push(row(Some(Letter::from_index(k))));
    }
    Dfa::from_parts(alphabet.clone(), trans, 0, alloc::vec![true; letters + 1]).expect("well-formed filter")
}

/// All words of length at most `max_len`, shortlex order.
pub(crate) fn words_up_to(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let mut out = alloc::vec![Word::empty()];
    let mut layer = out.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in alphabet.letters() {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn accepted_set(n: &Nfa, max_len: usize) -> BTreeSet<Word> {
        words_up_to(n.alphabet(), max_len).into_iter().filter(|w| n.accepts(w)).collect()
    }

    fn xy() -> Alphabet {
        Alphabet::new(["x", "y"]).unwrap()
    }

    fn ab() -> Alphabet {
        Alphabet::standard(2)
    }

    fn t() -> Alphabet {
        Alphabet::new(["t"]).unwrap()
    }

    #[test]
    fn inverse_hom_doubling() {
        let x = Alphabet::new(["x"]).unwrap();
        let tt = Word::parse(&t(), "t t").unwrap();
        let h = Homomorphism::new(x.clone(), t(), alloc::vec![tt.clone()]).unwrap();
        let language = Nfa::word(t(), &tt).star();
        let pre = inverse_hom(&h, &language).unwrap();
        let xs = Nfa::word(x.clone(), &Word::parse(&x, "x").unwrap()).star();
        // Equal on positive-letter words; x^-1 maps outside (tt)*.
        for w in words_up_to(&x, 5) {
            assert_eq!(pre.accepts(&w), language.accepts(&h.apply(&w)));
            assert_eq!(pre.accepts(&w), xs.accepts(&w) || w.is_empty(), "{w:?}");
        }
    }

    #[test]
    fn inverse_hom_erasing() {
        let x = Alphabet::new(["x"]).unwrap();
        let h = Homomorphism::new(x.clone(), t(), alloc::vec![Word::empty()]).unwrap();
        let pre = inverse_hom(&h, &Nfa::epsilon(t())).unwrap();
        assert!(words_up_to(&x, 4).iter().all(|w| pre.accepts(w)));
    }

    #[test]
    fn inverse_hom_bounded_enumeration() {
        let h =
            Homomorphism::new(xy(), ab(), alloc::vec![Word::parse(&ab(), "a b").unwrap(), Word::parse(&ab(), "b^-1").unwrap()]).unwrap();
        let language = Nfa::word(ab(), &Word::parse(&ab(), "a b").unwrap());
        let pre = inverse_hom(&h, &language).unwrap();
        let accepted = accepted_set(&pre, 4);
        let oracle: BTreeSet<Word> =
            words_up_to(&xy(), 4).into_iter().filter(|w| h.apply(w) == Word::parse(&ab(), "a b").unwrap()).collect();
        assert_eq!(accepted, oracle);
        assert_eq!(accepted.into_iter().collect::<Vec<_>>(), [Word::parse(&xy(), "x").unwrap()]);
    }

    #[test]
    fn images() {
        let x = Alphabet::new(["x"]).unwrap();
        let xs = Nfa::word(x.clone(), &Word::parse(&x, "x").unwrap()).star();
        let h = Homomorphism::new(x.clone(), ab(), alloc::vec![Word::parse(&ab(), "a b").unwrap()]).unwrap();
        let img = hom_image(&h, &xs).unwrap();
        for w in words_up_to(&ab(), 6) {
            let expected = w.len() % 2 == 0 && w.chunks(2).all(|c| c == Word::parse(&ab(), "a b").unwrap().letters());
            assert_eq!(img.accepts(&w), expected);
        }
        let erase = Homomorphism::new(x.clone(), ab(), alloc::vec![Word::empty()]).unwrap();
        let img = hom_image(&erase, &xs).unwrap();
        assert!(img.accepts(&[]) && !img.accepts(&Word::parse(&ab(), "a").unwrap()));
        let to_a = Homomorphism::new(xy(), ab(), alloc::vec![Word::parse(&ab(), "a").unwrap(); 2]).unwrap();
        let img = hom_image(&to_a, &Nfa::word(xy(), &Word::parse(&xy(), "x y").unwrap())).unwrap();
        assert_eq!(accepted_set(&img, 3).into_iter().collect::<Vec<_>>(), [Word::parse(&ab(), "a a").unwrap()]);
    }

    #[test]
    fn reduced_filter_counts() {
        let f = reduced_filter(&ab());
        assert_eq!(f.state_count(), 5);
        assert!(f.accepts(&Word::parse(&ab(), "a b a^-1").unwrap()));
        assert!(!f.accepts(&Word::parse(&ab(), "a a^-1").unwrap()));
        let count = words_up_to(&ab(), 3).iter().filter(|w| w.len() == 3 && f.accepts(w)).count();
        assert_eq!(count, 36);
        for w in words_up_to(&ab(), 4) {
            assert_eq!(f.accepts(&w), w.is_reduced());
        }
    }
}
