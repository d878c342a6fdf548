//! Words over involutive alphabets and free reduction.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Deref;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};

/// A word over an involutive alphabet, ordered shortlex.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(letter: Letter) -> Self {
        Word(alloc::vec![letter])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Formal inverse: reverse and invert every letter.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn power(&self, exponent: i64) -> Word {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * exponent.unsigned_abs() as usize);
        for _ in 0..exponent.unsigned_abs() {
            letters.extend_from_slice(&base.0);
        }
        Word(letters)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0].inverse() != w[1])
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        match self.0.iter().find(|l| !alphabet.contains(**l)) {
            Some(l) => Err(Error::Input(alloc::format!("letter index {} not in alphabet", l.index()))),
            None => Ok(()),
        }
    }

    /// Space-separated letters with `^-1` inverses; `1` (or nothing) is the empty word.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "1" || text == "ε" {
            return Ok(Word::empty());
        }
        text.split_whitespace().map(|t| alphabet.parse_letter(t)).collect::<Result<Vec<_>>>().map(Word)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay { alphabet, letters: &self.0 }
    }
}

impl Deref for Word {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

pub(crate) fn shortlex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.0, &other.0)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}{}", l.generator(), if l.is_positive() { "" } else { "'" })?;
        }
        Ok(())
    }
}

pub struct WordDisplay<'a> {
    alphabet: &'a Alphabet,
    letters: &'a [Letter],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.alphabet.name(*l))?;
        }
        Ok(())
    }
}

/// A word with no factor `x x^-1`. This is the normal form of free group elements.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ReducedWord(Word);

impl ReducedWord {
    pub const fn identity() -> Self {
        ReducedWord(Word::empty())
    }

    pub fn new(word: Word) -> Option<Self> {
        word.is_reduced().then_some(ReducedWord(word))
    }

    pub fn as_word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    /// Appends one letter, cancelling against the last letter when possible.
    pub fn push(&mut self, letter: Letter) {
        if self.0 .0.last() == Some(&letter.inverse()) {
            self.0 .0.pop();
        } else {
            self.0 .0.push(letter);
        }
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord(self.0.inverse())
    }

    pub fn multiply(&self, other: &ReducedWord) -> ReducedWord {
        let mut out = self.clone();
        for &l in other.0.iter() {
            out.push(l);
        }
        out
    }
}

impl Deref for ReducedWord {
    type Target = [Letter];
    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

/// Free reduction by a single left-to-right stack pass.
pub fn free_reduce(word: &[Letter]) -> ReducedWord {
    let mut out = ReducedWord::identity();
    for &l in word {
        out.push(l);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(text: &str) -> Word {
        Word::parse(&Alphabet::standard(2), text).unwrap()
    }

    /// Repeatedly deletes the leftmost cancelling pair until none remain.
    fn naive_reduce(word: &[Letter]) -> Vec<Letter> {
        let mut w = word.to_vec();
        while let Some(i) = w.windows(2).position(|p| p[0].inverse() == p[1]) {
            w.drain(i..i + 2);
        }
        w
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(free_reduce(&parse("a a^-1 b")).as_word(), &parse("b"));
        assert_eq!(free_reduce(&parse("1")).as_word(), &Word::empty());
        let w = parse("a b b^-1 a a^-1 a^-1");
        assert_eq!(naive_reduce(&w), Vec::<Letter>::new());
        assert_eq!(free_reduce(&w).as_word(), &Word::empty());
    }

    #[test]
    fn shortlex_order() {
        let mut words = alloc::vec![parse("b"), parse("a a"), parse("1"), parse("a^-1"), parse("a")];
        words.sort();
        let shown: Vec<_> = words.iter().map(|w| alloc::format!("{}", w.display(&Alphabet::standard(2)))).collect();
        assert_eq!(shown, ["1", "a", "a^-1", "b", "a a"]);
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        proptest::collection::vec(0usize..4, 0..16).prop_map(|v| v.into_iter().map(Letter::from_index).collect())
    }

    proptest! {
        #[test]
        fn reduction_matches_naive(w in word_strategy()) {
            let (r, n) = (free_reduce(&w), naive_reduce(&w));
            prop_assert_eq!(r.as_word().letters(), n.as_slice());
        }

        #[test]
        fn reduction_is_idempotent_and_compatible(u in word_strategy(), v in word_strategy()) {
            let ru = free_reduce(&u);
            prop_assert_eq!(free_reduce(&ru), ru.clone());
            prop_assert!(ru.len() <= u.len());
            let rv = free_reduce(&v);
            prop_assert_eq!(free_reduce(&u.concat(&v)), ru.multiply(&rv));
        }
    }
}
