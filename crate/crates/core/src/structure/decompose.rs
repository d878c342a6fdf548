use alloc::vec::Vec;

use super::rewrite::{rewrite_into_subgroup, SubgroupRewrite};
use crate::alphabet::{Alphabet, Letter};
use crate::automata::{hom_image, Homomorphism, Nfa};
use crate::error::{Error, Result};
use crate::group::{FreeGroup, Group, VcElement, VirtuallyCyclic};
use crate::rational::{RationalSubset, SemilinearZ, Side};
use crate::recognizable::RecognizableSubset;
use crate::stallings::{StallingsGraph, Transversal};
use crate::word::Word;

/// `π(X) = ⋃ π(L_i) b_i` for a finite-index subgroup `H` of a free group,
/// each `L_i` written over a free basis of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeDecomposition {
    pub graph: StallingsGraph,
    pub transversal: Transversal,
    /// Sends the basis letters `x1..xk` to their words in the ambient group.
    pub basis: Homomorphism,
    pub components: Vec<RationalSubset<FreeGroup>>,
}

/// `π(X) = ⋃ L_{r,i} (r, i)` for `H = mZ` in a virtually cyclic group, where
/// `L_{r,i} ⊆ Z` counts powers of `u = t^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcDecomposition {
    pub group: VirtuallyCyclic,
    pub modulus: usize,
    /// `(r, i)` for `i = 1..n`, `r = 0..m`, class-major.
    pub transversal: Vec<VcElement>,
    pub components: Vec<SemilinearZ>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    Free(FreeDecomposition),
    VirtuallyCyclic(VcDecomposition),
}

impl Decomposition {
    pub fn len(&self) -> usize {
        match self {
            Decomposition::Free(d) => d.components.len(),
            Decomposition::VirtuallyCyclic(d) => d.components.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Splits `X` along the right cosets `H b_i`: each part is
/// `(X ∩ H b_i) b_i^-1`, rewritten over a basis of `H`.
pub fn decompose_free(x: &RationalSubset<FreeGroup>, h: &StallingsGraph) -> Result<FreeDecomposition> {
    if x.group().alphabet() != h.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let transversal = h.transversal()?;
    let action = h.coset_action()?;
    let mut components = Vec::with_capacity(transversal.len());
    let mut basis = None;
    for (i, b) in transversal.words().iter().enumerate() {
        let coset = RecognizableSubset::new(x.group().clone(), action.clone(), [i].into_iter().collect())?;
        let part = x.intersect_recognizable(&coset)?.translate(&b.inverse(), Side::Right)?;
        let SubgroupRewrite { basis: hom, subset } = rewrite_into_subgroup(&part, h)?;
        basis = Some(hom);
        components.push(subset);
    }
    let basis = basis.unwrap_or_else(|| h.basis_homomorphism());
    Ok(FreeDecomposition { graph: h.clone(), transversal, basis, components })
}

impl FreeDecomposition {
    /// `⋃ h(L_i) b_i` in the ambient group.
    pub fn recompose(&self, ambient: &FreeGroup) -> Result<RationalSubset<FreeGroup>> {
        let mut nfa = Nfa::empty(ambient.alphabet().clone());
        for (component, b) in self.components.iter().zip(self.transversal.words()) {
            let part = hom_image(&self.basis, component.nfa())?.concat(&Nfa::word(ambient.alphabet().clone(), b))?;
            nfa = nfa.union(&part)?;
        }
        RationalSubset::new(ambient.clone(), nfa)
    }
}

/// The group `Z` written over the single letter `u`.
pub fn subgroup_line() -> VirtuallyCyclic {
    VirtuallyCyclic::integers().renamed(Alphabet::new(["u"]).expect("valid name")).expect("rank one")
}

/// Splits `X` along the cosets of `mZ`: for each `(r, i)`, intersect with
/// the coset, translate back by `(r, i)^-1`, and read off the exponents of
/// `t^m`.
pub fn decompose_vc(x: &RationalSubset<VirtuallyCyclic>, modulus: usize) -> Result<VcDecomposition> {
    if modulus == 0 {
        return Err(Error::Precondition("mZ needs m >= 1 to have finite index".into()));
    }
    let g = x.group().clone();
    let m = modulus as i64;
    let mut transversal = Vec::with_capacity(g.classes() * modulus);
    let mut components = Vec::with_capacity(g.classes() * modulus);
    for class in 1..=g.classes() {
        for r in 0..m {
            let b = VcElement::new(r, class);
            let coset = RecognizableSubset::from_modulus(g.clone(), modulus, &[(r, class)])?;
            let part = x.intersect_recognizable(&coset)?.translate(&g.word_for(&g.inverse(&b)), Side::Right)?;
            let images = part.class_images()?;
            if images.iter().skip(1).any(|s| !s.is_empty()) {
                return Err(Error::Inconsistency("coset part left the subgroup <t>".into()));
            }
            components.push(images[0].preimage_affine(m, 0));
            if !images[0].difference(&SemilinearZ::residue_class(0, m)).is_empty() {
                return Err(Error::Inconsistency("coset part left mZ".into()));
            }
            transversal.push(b);
        }
    }
    Ok(VcDecomposition { group: g, modulus, transversal, components })
}

impl VcDecomposition {
    fn slot(&self, x: &VcElement) -> (usize, i64) {
        let m = self.modulus as i64;
        let r = x.z.rem_euclid(m);
        ((x.class - 1) * self.modulus + r as usize, (x.z - r) / m)
    }

    pub fn contains(&self, x: &VcElement) -> bool {
        if x.class == 0 || x.class > self.group.classes() {
            return false;
        }
        let (i, k) = self.slot(x);
        self.components[i].contains(k)
    }

    /// Each component as a rational subset over `u`.
    pub fn component_subsets(&self) -> Result<Vec<RationalSubset<VirtuallyCyclic>>> {
        let line = subgroup_line();
        self.components.iter().map(|c| RationalSubset::new(line.clone(), c.to_nfa(line.alphabet(), Letter::positive(0))?)).collect()
    }

    /// `⋃ u^{L_{r,i}} (r, i)` with `u` substituted by `t^m`.
    pub fn recompose(&self) -> Result<RationalSubset<VirtuallyCyclic>> {
        let g = &self.group;
        let t = Word::letter(Letter::positive(0));
        let sub = Homomorphism::new(subgroup_line().alphabet().clone(), g.alphabet().clone(), alloc::vec![t.power(self.modulus as i64)])?;
        let mut nfa = Nfa::empty(g.alphabet().clone());
        for (component, b) in self.component_subsets()?.iter().zip(&self.transversal) {
            let part = hom_image(&sub, component.nfa())?.concat(&Nfa::word(g.alphabet().clone(), &g.word_for(b)))?;
            nfa = nfa.union(&part)?;
        }
        RationalSubset::new(g.clone(), nfa)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ball;

    fn word_nfa(g: &impl Group, text: &str) -> Nfa {
        Nfa::word(g.alphabet().clone(), &Word::parse(g.alphabet(), text).unwrap())
    }

    #[test]
    fn odd_positives_over_even_integers() {
        let z = VirtuallyCyclic::integers();
        let x = RationalSubset::new(z.clone(), word_nfa(&z, "t").concat(&word_nfa(&z, "t t").star()).unwrap()).unwrap();
        let d = decompose_vc(&x, 2).unwrap();
        assert_eq!(d.transversal, [VcElement::new(0, 1), VcElement::new(1, 1)]);
        assert!(d.components[0].is_empty());
        assert_eq!(d.components[1], SemilinearZ::singleton(0).add_ray(1));
        let back = d.recompose().unwrap().z_image().unwrap();
        let orig = x.z_image().unwrap();
        assert_eq!(back, orig);
        for (e, _) in ball(&z, 9) {
            assert_eq!(d.contains(&e), e.z > 0 && e.z % 2 == 1);
        }
    }

    #[test]
    fn empty_decompositions() {
        let z = VirtuallyCyclic::integers();
        let d = decompose_vc(&RationalSubset::empty(z), 3).unwrap();
        assert!(d.components.iter().all(SemilinearZ::is_empty));
        assert!(d.recompose().unwrap().nfa().is_empty());
        let f2 = FreeGroup::new(2).unwrap();
        let h = StallingsGraph::from_generators(
            &f2,
            &[
                Word::parse(f2.alphabet(), "a a").unwrap(),
                Word::parse(f2.alphabet(), "b").unwrap(),
                Word::parse(f2.alphabet(), "a b a^-1").unwrap(),
            ],
        )
        .unwrap();
        let d = decompose_free(&RationalSubset::empty(f2.clone()), &h).unwrap();
        assert_eq!(d.components.len(), 2);
        assert!(d.components.iter().all(|c| c.nfa().is_empty()));
    }

    #[test]
    fn powers_of_a_over_index_two_kernel() {
        let f2 = FreeGroup::new(2).unwrap();
        let p = |t: &str| Word::parse(f2.alphabet(), t).unwrap();
        let h = StallingsGraph::from_generators(&f2, &[p("a a"), p("b"), p("a b a^-1")]).unwrap();
        let x = RationalSubset::new(f2.clone(), word_nfa(&f2, "a").star()).unwrap();
        let d = decompose_free(&x, &h).unwrap();
        assert_eq!(d.transversal.words(), [Word::empty(), p("a")]);
        let even = RationalSubset::new(f2.clone(), hom_image(&d.basis, d.components[0].nfa()).unwrap()).unwrap();
        let odd = RationalSubset::new(f2.clone(), hom_image(&d.basis, d.components[1].nfa()).unwrap()).unwrap();
        for (e, u) in ball(&f2, 6) {
            let k = u.len();
            let power = u.iter().all(|l| *l == Letter::positive(0));
            assert_eq!(even.contains_word(&u), power && k % 2 == 0, "{e:?}");
            // (a^{2j+1}) a^-1 = a^{2j}
            assert_eq!(odd.contains_word(&u), power && k % 2 == 0, "{e:?}");
        }
        let back = d.recompose(&f2).unwrap();
        for u in ball(&f2, 6).values() {
            assert_eq!(back.contains_word(u), x.contains_word(u));
        }
    }

    #[test]
    fn infinite_index_is_rejected() {
        let f2 = FreeGroup::new(2).unwrap();
        let h = StallingsGraph::from_generators(&f2, &[Word::parse(f2.alphabet(), "a").unwrap()]).unwrap();
        assert!(matches!(decompose_free(&RationalSubset::empty(f2), &h), Err(Error::Precondition(_))));
        assert!(matches!(decompose_vc(&RationalSubset::empty(VirtuallyCyclic::integers()), 0), Err(Error::Precondition(_))));
    }
}
