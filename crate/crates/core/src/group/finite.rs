use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::Group;
use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::word::Word;

/// A finite group given by its multiplication table.
///
/// The table is validated exhaustively when the group is built: closure,
/// identity, inverses, associativity, and that the generators reach every
/// element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    alphabet: Alphabet,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
    witnesses: Vec<Word>,
}

impl FiniteGroup {
    /// `generators[k]` is the element named by the `k`-th letter of `alphabet`.
    pub fn new(table: Vec<Vec<usize>>, identity: Option<usize>, alphabet: Alphabet, generators: Vec<usize>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if table.iter().any(|row| row.len() != order) {
            return Err(Error::InvalidGroup("multiplication table is not square".into()));
        }
        if table.iter().flatten().any(|&x| x >= order) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mul = |x: usize, y: usize| flat[x * order + y];
        let is_identity = |e: usize| (0..order).all(|x| mul(e, x) == x && mul(x, e) == x);
        let identity = match identity {
            Some(e) if e < order && is_identity(e) => e,
            Some(e) => return Err(Error::InvalidGroup(alloc::format!("element {e} is not an identity"))),
            None => (0..order).find(|&e| is_identity(e)).ok_or_else(|| Error::InvalidGroup("table has no identity".into()))?,
        };
        let mut inverses = Vec::with_capacity(order);
        for x in 0..order {
            let inv = (0..order)
                .find(|&y| mul(x, y) == identity && mul(y, x) == identity)
                .ok_or_else(|| Error::InvalidGroup(alloc::format!("element {x} has no inverse")))?;
            inverses.push(inv);
        }
        for x in 0..order {
            for y in 0..order {
                let xy = mul(x, y);
                for z in 0..order {
                    if mul(xy, z) != mul(x, mul(y, z)) {
                        return Err(Error::InvalidGroup(alloc::format!("associativity fails at ({x}, {y}, {z})")));
                    }
                }
            }
        }
        if generators.len() != alphabet.rank() {
            return Err(Error::InvalidGroup("one generator image per letter required".into()));
        }
        if let Some(&g) = generators.iter().find(|&&g| g >= order) {
            return Err(Error::InvalidGroup(alloc::format!("generator image {g} out of range")));
        }
        let mut group = FiniteGroup { alphabet, order, table: flat, identity, inverses, generators, witnesses: Vec::new() };
        let ball = super::ball(&group, order);
        if ball.len() != order {
            return Err(Error::InvalidGroup(alloc::format!("generators reach only {} of {} elements", ball.len(), order)));
        }
        let mut witnesses = alloc::vec![Word::empty(); order];
        for (x, w) in ball {
            witnesses[x] = w;
        }
        group.witnesses = witnesses;
        Ok(group)
    }

    /// Cyclic group of the given order generated by one letter.
    pub fn cyclic(order: usize, letter: &str) -> Result<Self> {
        let table = (0..order).map(|x| (0..order).map(|y| (x + y) % order).collect()).collect();
        let generator = if order == 1 { 0 } else { 1 };
        FiniteGroup::new(table, Some(0), Alphabet::new([letter])?, alloc::vec![generator])
    }

    /// Permutation group generated by the given permutations of `0..degree`.
    /// Element 0 is the identity; other elements are numbered in order of discovery.
    pub fn from_permutations(alphabet: Alphabet, generators: &[Vec<usize>]) -> Result<Self> {
        let degree = generators.first().map_or(0, Vec::len);
        if generators.iter().any(|p| p.len() != degree || !is_permutation(p)) {
            return Err(Error::InvalidGroup("generators must be permutations of equal degree".into()));
        }
        let mut elements: Vec<Vec<usize>> = alloc::vec![(0..degree).collect()];
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        index.insert(elements[0].clone(), 0);
        let mut i = 0;
        while i < elements.len() {
            for g in generators {
                let p = compose(&elements[i], g);
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elements.len());
                    elements.push(p);
                }
            }
            i += 1;
        }
        let table = elements.iter().map(|x| elements.iter().map(|y| index[&compose(x, y)]).collect()).collect();
        let gens = generators.iter().map(|g| index[g]).collect();
        FiniteGroup::new(table, Some(0), alphabet, gens)
    }

    /// S3 generated by the transposition `s = (0 1)` and the 3-cycle `r = (0 1 2)`.
    pub fn symmetric3() -> Self {
        let alphabet = Alphabet::new(["s", "r"]).expect("valid names");
        FiniteGroup::from_permutations(alphabet, &[alloc::vec![1, 0, 2], alloc::vec![1, 2, 0]]).expect("S3 is a group")
    }

    pub fn size(&self) -> usize {
        self.order
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn generator_images(&self) -> &[usize] {
        &self.generators
    }

    pub fn table_row(&self, x: usize) -> &[usize] {
        &self.table[x * self.order..(x + 1) * self.order]
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = alloc::vec![false; p.len()];
    p.iter().all(|&x| x < p.len() && !core::mem::replace(&mut seen[x], true))
}

/// Apply `x` first, then `y`.
fn compose(x: &[usize], y: &[usize]) -> Vec<usize> {
    x.iter().map(|&i| y[i]).collect()
}

impl Group for FiniteGroup {
    type Element = usize;

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn generator(&self, letter: Letter) -> usize {
        let g = self.generators[letter.generator()];
        if letter.is_positive() {
            g
        } else {
            self.inverses[g]
        }
    }

    fn multiply(&self, x: &usize, y: &usize) -> usize {
        self.table[x * self.order + y]
    }

    fn inverse(&self, x: &usize) -> usize {
        self.inverses[*x]
    }

    fn word_for(&self, x: &usize) -> Word {
        self.witnesses[*x].clone()
    }

    fn relations(&self) -> Vec<(Word, Word)> {
        let mut out = Vec::new();
        for x in 0..self.order {
            for l in self.alphabet.letters() {
                let mut lhs = self.witnesses[x].clone();
                lhs.push(l);
                out.push((lhs, self.witnesses[self.act(&x, l)].clone()));
            }
        }
        out
    }

    fn format_element(&self, x: &usize) -> String {
        alloc::format!("{x}")
    }

    fn order(&self) -> Option<usize> {
        Some(self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_relation() {
        let z3 = FiniteGroup::cyclic(3, "g").unwrap();
        let w = Word::parse(z3.alphabet(), "g g g").unwrap();
        assert_eq!(z3.eval(&w).unwrap(), z3.identity());
        let w = Word::parse(z3.alphabet(), "g^-1").unwrap();
        assert_eq!(z3.eval(&w).unwrap(), 2);
    }

    #[test]
    fn rejects_non_groups() {
        let a = Alphabet::new(["g"]).unwrap();
        // Not associative / no inverses: constant table.
        assert!(FiniteGroup::new(alloc::vec![alloc::vec![0, 0], alloc::vec![0, 0]], None, a.clone(), alloc::vec![1]).is_err());
        // Valid table but generator does not generate.
        let z2 = alloc::vec![alloc::vec![0, 1], alloc::vec![1, 0]];
        assert!(FiniteGroup::new(z2.clone(), None, a.clone(), alloc::vec![0]).is_err());
        assert!(FiniteGroup::new(z2, None, a, alloc::vec![1]).is_ok());
    }

    #[test]
    fn symmetric_group() {
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.size(), 6);
        // (s r)^2 is not trivial but (s r)^2 * (s r)^-2 is, and s^2 = r^3 = 1.
        let w = Word::parse(s3.alphabet(), "s s").unwrap();
        assert_eq!(s3.eval(&w).unwrap(), 0);
        let w = Word::parse(s3.alphabet(), "r r r").unwrap();
        assert_eq!(s3.eval(&w).unwrap(), 0);
        let w = Word::parse(s3.alphabet(), "s r").unwrap();
        assert_ne!(s3.eval(&w).unwrap(), 0);
        // Relations are satisfied by the table itself.
        for (u, v) in s3.relations() {
            assert_eq!(s3.eval(&u).unwrap(), s3.eval(&v).unwrap());
        }
    }
}
