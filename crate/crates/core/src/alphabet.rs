//! Involutive alphabets.
//!
//! A letter is stored as a single index: generator `k` is `2k`, its formal
//! inverse is `2k + 1`. The natural order on indices is the global shortlex
//! letter order (declaration order, each inverse right after its positive).

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// A letter of an involutive alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub const fn positive(generator: usize) -> Self {
        Letter((generator as u32) << 1)
    }

    pub const fn negative(generator: usize) -> Self {
        Letter(((generator as u32) << 1) | 1)
    }

    pub const fn from_index(index: usize) -> Self {
        Letter(index as u32)
    }

    /// Position in the shortlex letter order.
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub const fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub const fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

/// Positive letter names; every name `x` also provides the formal inverse `x^-1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Arc<[String]>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty()
                || name == "1"
                || name == "eps"
                || name.ends_with("^-1")
                || name.chars().any(|c| c.is_whitespace() || c == ',' || c == '=')
            {
                return Err(Error::Input(alloc::format!("invalid letter name {name:?}")));
            }
            if names[..i].contains(name) {
                return Err(Error::Input(alloc::format!("duplicate letter name {name:?}")));
            }
        }
        Ok(Alphabet { names: names.into() })
    }

    /// `a, b, c, ...` for small ranks, `a1 .. ar` beyond 26.
    pub fn standard(rank: usize) -> Self {
        let names: Vec<String> = if rank <= 26 {
            (0..rank).map(|i| String::from(char::from(b'a' + i as u8))).collect()
        } else {
            (1..=rank).map(|i| alloc::format!("a{i}")).collect()
        };
        Alphabet { names: names.into() }
    }

    /// Number of positive letters.
    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// Number of letters including inverses.
    pub fn letter_count(&self) -> usize {
        2 * self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.generator() < self.rank()
    }

    /// All letters in shortlex order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.letter_count()).map(Letter::from_index)
    }

    pub fn positive_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.rank()).map(Letter::positive)
    }

    pub fn name(&self, letter: Letter) -> LetterName<'_> {
        LetterName { alphabet: self, letter }
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Parses `x` or `x^-1`.
    pub fn parse_letter(&self, token: &str) -> Result<Letter, Error> {
        let (base, inverse) = match token.strip_suffix("^-1") {
            Some(base) => (base, true),
            None => (token, false),
        };
        let g = self.generator_index(base).ok_or_else(|| Error::Input(alloc::format!("unknown letter {token:?}")))?;
        Ok(if inverse { Letter::negative(g) } else { Letter::positive(g) })
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

pub struct LetterName<'a> {
    alphabet: &'a Alphabet,
    letter: Letter,
}

impl fmt::Display for LetterName<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.alphabet.names.get(self.letter.generator()) {
            Some(name) if self.letter.is_positive() => write!(f, "{name}"),
            Some(name) => write!(f, "{name}^-1"),
            None => write!(f, "?{}", self.letter.index()),
        }
    }
}
