use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::Group;
use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::word::Word;

/// An element `t^z b_i` of a virtually cyclic group. Class indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VcElement {
    pub z: i64,
    pub class: usize,
}

impl VcElement {
    pub const fn new(z: i64, class: usize) -> Self {
        VcElement { z, class }
    }
}

impl fmt::Debug for VcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.z, self.class)
    }
}

impl fmt::Display for VcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.z, self.class)
    }
}

/// A group containing `<t>` as a normal subgroup of finite index `n`, given by
/// extension data over the transversal `b_1 = 1, b_2, .., b_n`:
///
/// * `b_i t b_i^-1 = t^{phi(i)}` with `phi(i)` in `{+1, -1}`,
/// * `b_i b_j = t^{c(i,j)} b_{tau(i,j)}`.
///
/// so that `(z, i)(z', j) = (z + phi(i) z' + c(i,j), tau(i,j))`.
/// The alphabet is `t, b2, .., bn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtuallyCyclic {
    alphabet: Alphabet,
    n: usize,
    phi: Vec<i64>,
    cocycle: Vec<i64>,
    tau: Vec<usize>,
    right_inverse: Vec<usize>,
}

impl VirtuallyCyclic {
    /// `phi[i-1]` is `phi(i)`; `cocycle[(i-1)*n + (j-1)]` and `tau[..]` likewise,
    /// with `tau` values 1-based.
    pub fn new(phi: Vec<i64>, cocycle: Vec<i64>, tau: Vec<usize>) -> Result<Self> {
        let n = phi.len();
        if n == 0 {
            return Err(Error::InvalidGroup("need at least one transversal class".into()));
        }
        if cocycle.len() != n * n || tau.len() != n * n {
            return Err(Error::InvalidGroup("cocycle and tau must have n*n entries".into()));
        }
        if phi.iter().any(|&p| p != 1 && p != -1) {
            return Err(Error::InvalidGroup("phi values must be +1 or -1".into()));
        }
        if tau.iter().any(|&k| k == 0 || k > n) {
            return Err(Error::InvalidGroup("tau value out of range".into()));
        }
        if phi[0] != 1 {
            return Err(Error::InvalidGroup("phi(1) must be +1".into()));
        }
        let at = |i: usize, j: usize| (i - 1) * n + (j - 1);
        for k in 1..=n {
            if cocycle[at(1, k)] != 0 || cocycle[at(k, 1)] != 0 || tau[at(1, k)] != k || tau[at(k, 1)] != k {
                return Err(Error::InvalidGroup(alloc::format!("b1 must act as the identity (class {k})")));
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                let ij = tau[at(i, j)];
                if phi[ij - 1] != phi[i - 1] * phi[j - 1] {
                    return Err(Error::InvalidGroup(alloc::format!("phi is not multiplicative at ({i}, {j})")));
                }
            }
        }
        let mut right_inverse = Vec::with_capacity(n);
        for i in 1..=n {
            let row: Vec<usize> = (1..=n).map(|j| tau[at(i, j)]).collect();
            let mut seen = alloc::vec![false; n];
            for &k in &row {
                seen[k - 1] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(Error::InvalidGroup(alloc::format!("tau({i}, .) is not a permutation")));
            }
            right_inverse.push(row.iter().position(|&k| k == 1).expect("permutation") + 1);
        }
        let mut names: Vec<String> = alloc::vec!["t".into()];
        names.extend((2..=n).map(|i| alloc::format!("b{i}")));
        let group = VirtuallyCyclic { alphabet: Alphabet::new(names)?, n, phi, cocycle, tau, right_inverse };
        group.check_associativity()?;
        Ok(group)
    }

    fn check_associativity(&self) -> Result<()> {
        for i in 1..=self.n {
            for j in 1..=self.n {
                for k in 1..=self.n {
                    for (a, b, c) in [(0, 0, 0), (-2, 1, 2), (2, -1, -2), (1, 2, -1), (-1, -2, 1)] {
                        let x = VcElement::new(a, i);
                        let y = VcElement::new(b, j);
                        let z = VcElement::new(c, k);
                        let lhs = self.multiply(&self.multiply(&x, &y), &z);
                        let rhs = self.multiply(&x, &self.multiply(&y, &z));
                        if lhs != rhs {
                            return Err(Error::InvalidGroup(alloc::format!("associativity fails for classes ({i}, {j}, {k})")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The integers, generated by `t`.
    pub fn integers() -> Self {
        VirtuallyCyclic::new(alloc::vec![1], alloc::vec![0], alloc::vec![1]).expect("Z is a group")
    }

    /// The infinite dihedral group: `b2` inverts `t` and squares to 1.
    pub fn infinite_dihedral() -> Self {
        VirtuallyCyclic::new(alloc::vec![1, -1], alloc::vec![0; 4], alloc::vec![1, 2, 2, 1]).expect("D-infinity is a group")
    }

    /// `Z x Z/2` with central involution `b2`.
    pub fn integers_times_z2() -> Self {
        VirtuallyCyclic::new(alloc::vec![1, 1], alloc::vec![0; 4], alloc::vec![1, 2, 2, 1]).expect("Z x Z/2 is a group")
    }

    /// Same group with different letter names (same rank).
    pub fn renamed(mut self, alphabet: Alphabet) -> Result<Self> {
        if alphabet.rank() != self.alphabet.rank() {
            return Err(Error::AlphabetMismatch);
        }
        self.alphabet = alphabet;
        Ok(self)
    }

    pub fn classes(&self) -> usize {
        self.n
    }

    pub fn phi(&self, class: usize) -> i64 {
        self.phi[class - 1]
    }

    pub fn cocycle(&self, i: usize, j: usize) -> i64 {
        self.cocycle[(i - 1) * self.n + (j - 1)]
    }

    pub fn tau(&self, i: usize, j: usize) -> usize {
        self.tau[(i - 1) * self.n + (j - 1)]
    }

    pub fn is_integers(&self) -> bool {
        self.n == 1
    }

    /// The letter naming `b_class` (`t` for `class == 1` is not a transversal letter).
    pub fn class_letter(&self, class: usize) -> Option<Letter> {
        (class >= 2 && class <= self.n).then(|| Letter::positive(class - 1))
    }

    pub fn check_element(&self, x: &VcElement) -> Result<()> {
        if x.class == 0 || x.class > self.n {
            return Err(Error::Input(alloc::format!("class index {} outside 1..={}", x.class, self.n)));
        }
        Ok(())
    }

    /// Change of the `t`-exponent and the new class when the letter is
    /// applied on the right to an element of class `class`.
    pub fn step(&self, class: usize, letter: Letter) -> (i64, usize) {
        let g = self.generator(letter);
        (self.phi(class) * g.z + self.cocycle(class, g.class), self.tau(class, g.class))
    }
}

impl Group for VirtuallyCyclic {
    type Element = VcElement;

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn identity(&self) -> VcElement {
        VcElement::new(0, 1)
    }

    fn generator(&self, letter: Letter) -> VcElement {
        let x = match letter.generator() {
            0 => VcElement::new(1, 1),
            k => VcElement::new(0, k + 1),
        };
        if letter.is_positive() {
            x
        } else {
            self.inverse(&x)
        }
    }

    fn multiply(&self, x: &VcElement, y: &VcElement) -> VcElement {
        VcElement::new(x.z + self.phi(x.class) * y.z + self.cocycle(x.class, y.class), self.tau(x.class, y.class))
    }

    fn inverse(&self, x: &VcElement) -> VcElement {
        // (z, i)(z', j) = (0, 1) with tau(i, j) = 1.
        let j = self.right_inverse[x.class - 1];
        VcElement::new(-self.phi(x.class) * (x.z + self.cocycle(x.class, j)), j)
    }

    fn word_for(&self, x: &VcElement) -> Word {
        let mut w = Word::letter(Letter::positive(0)).power(x.z);
        if let Some(b) = self.class_letter(x.class) {
            w.push(b);
        }
        w
    }

    fn relations(&self) -> Vec<(Word, Word)> {
        let t = Word::letter(Letter::positive(0));
        let b = |i: usize| self.class_letter(i).map_or_else(Word::empty, Word::letter);
        let mut out = Vec::new();
        for i in 1..=self.n {
            out.push((b(i).concat(&t), t.power(self.phi(i)).concat(&b(i))));
            for j in 1..=self.n {
                out.push((b(i).concat(&b(j)), t.power(self.cocycle(i, j)).concat(&b(self.tau(i, j)))));
            }
        }
        out
    }

    fn format_element(&self, x: &VcElement) -> String {
        alloc::format!("{x}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// D-infinity as affine maps x -> s x + z on the integers, written as
    /// 2x2 integer matrices [[s, z], [0, 1]]; (z, 1) is x -> x + z and
    /// (z, 2) is x -> -x + z.
    fn matrix(x: VcElement) -> [[i64; 2]; 2] {
        let s = if x.class == 1 { 1 } else { -1 };
        [[s, x.z], [0, 1]]
    }

    fn matmul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
        let mut c = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                c[i][j] = (0..2).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        c
    }

    #[test]
    fn dihedral_multiplication_matches_matrices() {
        let g = VirtuallyCyclic::infinite_dihedral();
        assert_eq!(g.multiply(&VcElement::new(3, 2), &VcElement::new(5, 2)), VcElement::new(-2, 1));
        assert_eq!(matmul(matrix(VcElement::new(3, 2)), matrix(VcElement::new(5, 2))), matrix(VcElement::new(-2, 1)));
        for a in -3..=3 {
            for b in -3..=3 {
                for i in 1..=2 {
                    for j in 1..=2 {
                        let (x, y) = (VcElement::new(a, i), VcElement::new(b, j));
                        assert_eq!(matrix(g.multiply(&x, &y)), matmul(matrix(x), matrix(y)));
                    }
                }
            }
        }
        assert_eq!(g.multiply(&VcElement::new(1, 1), &VcElement::new(1, 1)), VcElement::new(2, 1));
        assert_eq!(g.multiply(&g.identity(), &VcElement::new(4, 2)), VcElement::new(4, 2));
    }

    #[test]
    fn dihedral_eval() {
        let g = VirtuallyCyclic::infinite_dihedral();
        let w = Word::parse(g.alphabet(), "t t b2 t t b2").unwrap();
        assert_eq!(g.eval(&w).unwrap(), VcElement::new(0, 1));
    }

    #[test]
    fn associativity_exhaustive() {
        for g in [VirtuallyCyclic::infinite_dihedral(), VirtuallyCyclic::integers_times_z2(), VirtuallyCyclic::integers()] {
            for i in 1..=g.classes() {
                for j in 1..=g.classes() {
                    for k in 1..=g.classes() {
                        for a in -2..=2 {
                            for b in -2..=2 {
                                for c in -2..=2 {
                                    let (x, y, z) = (VcElement::new(a, i), VcElement::new(b, j), VcElement::new(c, k));
                                    assert_eq!(g.multiply(&g.multiply(&x, &y), &z), g.multiply(&x, &g.multiply(&y, &z)));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn inverses_and_relations() {
        let g = VirtuallyCyclic::infinite_dihedral();
        for z in -3..=3 {
            for i in 1..=2 {
                let x = VcElement::new(z, i);
                assert_eq!(g.multiply(&x, &g.inverse(&x)), g.identity());
                assert_eq!(g.multiply(&g.inverse(&x), &x), g.identity());
                assert_eq!(g.eval(&g.word_for(&x)).unwrap(), x);
            }
        }
        for (u, v) in g.relations() {
            assert_eq!(g.eval(&u).unwrap(), g.eval(&v).unwrap());
        }
    }

    #[test]
    fn rejects_bad_extension_data() {
        // phi not multiplicative: b2^2 = 1 but phi(2) = -1 forces phi(1) = +1 fine;
        // make tau(2,2) = 2 which breaks the permutation property.
        assert!(VirtuallyCyclic::new(alloc::vec![1, -1], alloc::vec![0; 4], alloc::vec![1, 2, 2, 2]).is_err());
        // b1 not the identity.
        assert!(VirtuallyCyclic::new(alloc::vec![1, 1], alloc::vec![1, 0, 0, 0], alloc::vec![1, 2, 2, 1]).is_err());
        // Z/2 extension with b2^2 = t and b2 inverting t is not associative.
        assert!(VirtuallyCyclic::new(alloc::vec![1, -1], alloc::vec![0, 0, 0, 1], alloc::vec![1, 2, 2, 1]).is_err());
        // but b2^2 = t with b2 central is Z itself (index 2 in Z): valid.
        assert!(VirtuallyCyclic::new(alloc::vec![1, 1], alloc::vec![0, 0, 0, 1], alloc::vec![1, 2, 2, 1]).is_ok());
    }
}
