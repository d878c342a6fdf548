use alloc::string::String;
use alloc::vec::Vec;

use super::Group;
use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::word::{free_reduce, ReducedWord, Word};

/// Free group on the letters of an alphabet; elements are reduced words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGroup {
    alphabet: Alphabet,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidGroup("free group rank must be at least 1".into()));
        }
        Ok(FreeGroup { alphabet: Alphabet::standard(rank) })
    }

    /// Free group on arbitrary letter names. Rank zero is allowed here; it
    /// arises as the basis group of a trivial subgroup.
    pub fn with_alphabet(alphabet: Alphabet) -> Self {
        FreeGroup { alphabet }
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }
}

impl Group for FreeGroup {
    type Element = ReducedWord;

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn identity(&self) -> ReducedWord {
        ReducedWord::identity()
    }

    fn generator(&self, letter: Letter) -> ReducedWord {
        free_reduce(&[letter])
    }

    fn multiply(&self, x: &ReducedWord, y: &ReducedWord) -> ReducedWord {
        x.multiply(y)
    }

    fn inverse(&self, x: &ReducedWord) -> ReducedWord {
        x.inverse()
    }

    fn word_for(&self, x: &ReducedWord) -> Word {
        x.as_word().clone()
    }

    fn relations(&self) -> Vec<(Word, Word)> {
        Vec::new()
    }

    fn format_element(&self, x: &ReducedWord) -> String {
        alloc::format!("{}", x.as_word().display(&self.alphabet))
    }

    fn eval_unchecked(&self, word: &[Letter]) -> ReducedWord {
        free_reduce(word)
    }

    fn act(&self, x: &ReducedWord, letter: Letter) -> ReducedWord {
        let mut y = x.clone();
        y.push(letter);
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_cancels() {
        let f2 = FreeGroup::new(2).unwrap();
        let w = Word::parse(f2.alphabet(), "a a^-1").unwrap();
        assert_eq!(f2.eval(&w).unwrap(), ReducedWord::identity());
        assert!(FreeGroup::new(0).is_err());
        let bad = Word::from_letters(alloc::vec![Letter::positive(5)]);
        assert!(f2.eval(&bad).is_err());
    }
}
