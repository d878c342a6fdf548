//! Finite-index constructions: rewriting into subgroups, coset
//! decompositions, transfer of epi witnesses, and flatness checks for
//! recognizable subsets.

mod decompose;
mod rewrite;

pub use decompose::{decompose_free, decompose_vc, subgroup_line, Decomposition, FreeDecomposition, VcDecomposition};
pub use rewrite::{check_contained, express_in_basis, rewrite_into_subgroup, SubgroupRewrite};

use alloc::collections::btree_map::Entry;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Letter};
use crate::automata::{nerode_witnesses, NerodeSearch};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, FreeGroup, Group, VirtuallyCyclic};
use crate::rational::RationalSubset;
use crate::recognizable::{CosetAction, RecognizableSubset};
use crate::stallings::{Index, StallingsGraph};
use crate::word::{free_reduce, Word};
use crate::wordproblem::{epi_check_free, epi_check_vc};

/// From a witness for `G \ {1}` to one for `H \ {1}` with `H = mZ`,
/// written over `u = t^m`.
pub fn epi_transfer(witness: &RationalSubset<VirtuallyCyclic>, modulus: usize) -> Result<RationalSubset<VirtuallyCyclic>> {
    if !epi_check_vc(witness)? {
        return Err(Error::Precondition("witness does not evaluate onto G minus the identity".into()));
    }
    if modulus == 0 {
        return Err(Error::Precondition("mZ needs m >= 1 to have finite index".into()));
    }
    let g = witness.group();
    let h = RecognizableSubset::from_modulus(g.clone(), modulus, &[(0, 1)])?;
    let inside = witness.intersect_recognizable(&h)?;
    let d = decompose_vc(&inside, modulus)?;
    let line = subgroup_line();
    let out = RationalSubset::new(line.clone(), d.components[0].to_nfa(line.alphabet(), crate::alphabet::Letter::positive(0))?)?;
    if !epi_check_vc(&out)? {
        return Err(Error::Inconsistency("transferred witness failed the epi check".into()));
    }
    Ok(out)
}

/// Free-group version: intersect with `H`, then rewrite over a basis of `H`.
pub fn epi_transfer_free(witness: &RationalSubset<FreeGroup>, h: &StallingsGraph) -> Result<SubgroupRewrite> {
    if !epi_check_free(witness)? {
        return Err(Error::Precondition("witness does not evaluate onto G minus the identity".into()));
    }
    let action = h.coset_action()?;
    let inside = witness.intersect_recognizable(&RecognizableSubset::new(witness.group().clone(), action, [0].into_iter().collect())?)?;
    let out = rewrite_into_subgroup(&inside, h)?;
    if !epi_check_free(&out.subset)? {
        return Err(Error::Inconsistency("transferred witness failed the epi check".into()));
    }
    Ok(out)
}

/// Outcome of asking whether a recognizable subset of `H` is recognizable in `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlatnessReport<G> {
    Transferable(RecognizableSubset<G>),
    /// `search` is a Nerode certificate when it found `requested` classes;
    /// otherwise it only records how many were found.
    NotTransferable {
        search: NerodeSearch,
        requested: usize,
    },
}

impl<G> FlatnessReport<G> {
    pub fn is_transferable(&self) -> bool {
        matches!(self, FlatnessReport::Transferable(_))
    }
}

/// Checks that the substitution into `G` respects every relation of `H`.
fn check_embedding<H: Group, G: Group>(subgroup: &H, group: &G, embedding: &[Word]) -> Result<()> {
    if embedding.len() != subgroup.alphabet().rank() {
        return Err(Error::Input("one embedding word per subgroup generator required".into()));
    }
    let image = |w: &Word| -> Word {
        w.iter()
            .flat_map(|l| {
                let e = &embedding[l.generator()];
                if l.is_positive() { e.clone() } else { e.inverse() }.into_letters()
            })
            .collect()
    };
    for e in embedding {
        e.check_alphabet(group.alphabet())?;
    }
    for (u, v) in subgroup.relations() {
        if group.eval(&image(&u))? != group.eval(&image(&v))? {
            return Err(Error::Precondition("embedding does not respect the subgroup's relations".into()));
        }
    }
    Ok(())
}

/// Subgroup of a finite group generated by the given words, as a finite
/// group over letters `y1..yk`.
pub fn finite_subgroup(group: &FiniteGroup, generators: &[Word]) -> Result<FiniteGroup> {
    let images: Vec<usize> = generators.iter().map(|w| group.eval(w)).collect::<Result<_>>()?;
    let mut elements: Vec<usize> = alloc::vec![group.identity()];
    let mut index: BTreeMap<usize, usize> = [(group.identity(), 0)].into_iter().collect();
    let mut i = 0;
    while i < elements.len() {
        for &g in &images {
            let y = group.multiply(&elements[i], &g);
            if let Entry::Vacant(e) = index.entry(y) {
                e.insert(elements.len());
                elements.push(y);
            }
        }
        i += 1;
    }
    let table = elements.iter().map(|x| elements.iter().map(|y| index[&group.multiply(x, y)]).collect()).collect();
    let alphabet = Alphabet::new((1..=generators.len()).map(|i| alloc::format!("y{i}")))?;
    FiniteGroup::new(table, Some(0), alphabet, images.iter().map(|g| index[g]).collect())
}

/// Every subset of a finite group is recognizable: the result uses the
/// regular action of `G` on itself.
pub fn flatness_finite(
    group: &FiniteGroup,
    embedding: &[Word],
    x: &RecognizableSubset<FiniteGroup>,
) -> Result<FlatnessReport<FiniteGroup>> {
    check_embedding(x.group(), group, embedding)?;
    let h = x.group();
    let mut accepted = BTreeSet::new();
    for e in h.elements() {
        if x.contains(&e) {
            let w: Word = h
                .word_for(&e)
                .iter()
                .flat_map(|l| {
                    let e = &embedding[l.generator()];
                    if l.is_positive() { e.clone() } else { e.inverse() }.into_letters()
                })
                .collect();
            accepted.insert(group.eval(&w)?);
        }
    }
    let table = group.alphabet().letters().map(|l| group.elements().map(|g| group.act(&g, l)).collect()).collect();
    let action = CosetAction::new(group.alphabet().clone(), table, group.identity())?;
    Ok(FlatnessReport::Transferable(RecognizableSubset::new(group.clone(), action, accepted)?))
}

/// `H = mZ` in a virtually cyclic group `G`, with `x` a recognizable subset
/// of `H ≅ Z` over `u = t^m`.
pub fn flatness_vc(
    group: &VirtuallyCyclic,
    modulus: usize,
    x: &RecognizableSubset<VirtuallyCyclic>,
) -> Result<FlatnessReport<VirtuallyCyclic>> {
    if !x.group().is_integers() {
        return Err(Error::Unsupported("the subgroup must be given as Z over one letter".into()));
    }
    if modulus == 0 {
        return Err(Error::Precondition("mZ needs m >= 1 to have finite index".into()));
    }
    // The orbit of the base under u is a cycle p_0, p_1, .., p_{c-1}.
    let u = crate::alphabet::Letter::positive(0);
    let action = x.action();
    let mut cycle = alloc::vec![action.base()];
    loop {
        let next = action.apply(*cycle.last().expect("nonempty"), u);
        if next == action.base() {
            break;
        }
        cycle.push(next);
    }
    let m = modulus as i64;
    let accepted: Vec<(i64, usize)> =
        cycle.iter().enumerate().filter(|(_, p)| x.accepted().contains(p)).map(|(k, _)| (m * k as i64, 1)).collect();
    let out = RecognizableSubset::from_modulus(group.clone(), modulus * cycle.len(), &accepted)?;
    Ok(FlatnessReport::Transferable(out))
}

/// `x` is a recognizable subset of `H` over the basis letters of `h`'s graph.
/// For finite index the induced action of `G` on `G / K` is built, where `K`
/// is the stabilizer in `H` of the base point of `x`'s action. For infinite
/// index a nonempty `x` is never recognizable in `G`; a Nerode search for
/// `k` classes of its preimage is attached.
pub fn flatness_free(
    group: &FreeGroup,
    h: &StallingsGraph,
    x: &RecognizableSubset<FreeGroup>,
    k: usize,
) -> Result<FlatnessReport<FreeGroup>> {
    if h.alphabet() != group.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let basis = h.basis_homomorphism();
    if x.group().alphabet() != basis.source() {
        return Err(Error::Input("subset must be given over the basis letters of H".into()));
    }
    let labels = h.edge_labels();
    let inner = x.action();
    if let Index::Finite(_) = h.index() {
        let mut points = alloc::vec![(h.base(), inner.base())];
        let mut index: BTreeMap<(usize, usize), usize> = [((h.base(), inner.base()), 0)].into_iter().collect();
        let step = |(v, c): (usize, usize), l: Letter| {
            let d = labels[v][l.index()].map_or(c, |x| inner.apply(c, x));
            (h.next(v, l).expect("complete graph"), d)
        };
        let mut i = 0;
        while i < points.len() {
            for l in group.alphabet().letters() {
                let next = step(points[i], l);
                if let Entry::Vacant(e) = index.entry(next) {
                    e.insert(points.len());
                    points.push(next);
                }
            }
            i += 1;
        }
        let table = group.alphabet().letters().map(|l| points.iter().map(|&p| index[&step(p, l)]).collect()).collect();
        let action = CosetAction::new(group.alphabet().clone(), table, 0)?;
        let accepted = points.iter().enumerate().filter(|(_, (v, c))| *v == h.base() && x.accepted().contains(c)).map(|(i, _)| i).collect();
        return Ok(FlatnessReport::Transferable(RecognizableSubset::new(group.clone(), action, accepted)?));
    }
    if inner.orbit().iter().all(|c| !x.accepted().contains(c)) {
        return Ok(FlatnessReport::Transferable(RecognizableSubset::empty(group.clone())));
    }
    let oracle = |w: &[crate::alphabet::Letter]| match express_in_basis(h, &free_reduce(w)) {
        Some(v) => x.contains_word(&v),
        None => false,
    };
    let search = nerode_witnesses(oracle, group.alphabet(), k, k.max(1))?;
    Ok(FlatnessReport::NotTransferable { search, requested: k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Nfa;
    use crate::group::{ball, VcElement};
    use crate::rational::SemilinearZ;

    fn word_nfa(g: &impl Group, text: &str) -> Nfa {
        Nfa::word(g.alphabet().clone(), &Word::parse(g.alphabet(), text).unwrap())
    }

    fn z_witness() -> RationalSubset<VirtuallyCyclic> {
        let z = VirtuallyCyclic::integers();
        let pos = word_nfa(&z, "t").concat(&word_nfa(&z, "t").star()).unwrap();
        let neg = word_nfa(&z, "t^-1").concat(&word_nfa(&z, "t^-1").star()).unwrap();
        RationalSubset::new(z, pos.union(&neg).unwrap()).unwrap()
    }

    #[test]
    fn transfer_to_even_integers() {
        let out = epi_transfer(&z_witness(), 2).unwrap();
        assert_eq!(out.z_image().unwrap(), SemilinearZ::singleton(0).complement());
        let same = epi_transfer(&z_witness(), 1).unwrap();
        assert_eq!(same.z_image().unwrap(), z_witness().z_image().unwrap());
        let z = VirtuallyCyclic::integers();
        let deficient = RationalSubset::new(z.clone(), word_nfa(&z, "t").concat(&word_nfa(&z, "t").star()).unwrap()).unwrap();
        assert!(matches!(epi_transfer(&deficient, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn transfer_in_dihedral_group() {
        let d = VirtuallyCyclic::infinite_dihedral();
        // Normal forms t^k (k != 0) and t^k b2.
        let t = word_nfa(&d, "t");
        let ti = word_nfa(&d, "t^-1");
        let nonzero = t.concat(&t.star()).unwrap().union(&ti.concat(&ti.star()).unwrap()).unwrap();
        let reflections = t.star().union(&ti.star()).unwrap().concat(&word_nfa(&d, "b2")).unwrap();
        let witness = RationalSubset::new(d.clone(), nonzero.union(&reflections).unwrap()).unwrap();
        let out = epi_transfer(&witness, 1).unwrap();
        assert_eq!(out.z_image().unwrap(), SemilinearZ::singleton(0).complement());
    }

    #[test]
    fn free_transfer() {
        let f2 = FreeGroup::new(2).unwrap();
        // Every nonempty reduced word, as an automaton.
        let dfa = crate::automata::reduced_filter(f2.alphabet());
        let accept: Vec<bool> = (0..dfa.state_count()).map(|q| q != 0).collect();
        let nonempty = crate::automata::Dfa::from_parts(f2.alphabet().clone(), dfa.table().to_vec(), 0, accept).unwrap().to_nfa();
        let witness = RationalSubset::new(f2.clone(), nonempty).unwrap();
        let p = |t: &str| Word::parse(f2.alphabet(), t).unwrap();
        let h = StallingsGraph::from_generators(&f2, &[p("a a"), p("b"), p("a b a^-1")]).unwrap();
        let out = epi_transfer_free(&witness, &h).unwrap();
        assert!(!out.subset.contains_word(&[]));
        assert_eq!(out.basis.source().rank(), 3);
    }

    #[test]
    fn flatness_for_finite_groups() {
        let s3 = FiniteGroup::symmetric3();
        let gens = alloc::vec![Word::parse(s3.alphabet(), "r").unwrap()];
        let h = finite_subgroup(&s3, &gens).unwrap();
        assert_eq!(h.size(), 3);
        // The trivial subgroup of H, recognized through H's regular action.
        let table = h.alphabet().letters().map(|l| h.elements().map(|e| h.act(&e, l)).collect()).collect();
        let action = CosetAction::new(h.alphabet().clone(), table, h.identity()).unwrap();
        let x = RecognizableSubset::new(h.clone(), action, [h.identity()].into_iter().collect()).unwrap();
        let FlatnessReport::Transferable(r) = flatness_finite(&s3, &gens, &x).unwrap() else { panic!() };
        assert_eq!(r.action().coset_count(), 6);
        for (e, _) in ball(&s3, 3) {
            assert_eq!(r.contains(&e), e == s3.identity());
        }
    }

    #[test]
    fn flatness_for_multiples() {
        let z = VirtuallyCyclic::integers();
        let line = subgroup_line();
        let x = RecognizableSubset::from_modulus(line, 2, &[(0, 1)]).unwrap();
        let FlatnessReport::Transferable(r) = flatness_vc(&z, 2, &x).unwrap() else { panic!() };
        assert_eq!(r.action().coset_count(), 4);
        let four = RecognizableSubset::from_modulus(z.clone(), 4, &[(0, 1)]).unwrap();
        for k in -12..=12 {
            assert_eq!(r.contains(&VcElement::new(k, 1)), k % 4 == 0);
        }
        assert_eq!(r.preimage_dfa(), four.preimage_dfa());
    }

    #[test]
    fn flatness_for_free_groups() {
        let f2 = FreeGroup::new(2).unwrap();
        let p = |t: &str| Word::parse(f2.alphabet(), t).unwrap();
        let a = StallingsGraph::from_generators(&f2, &[p("a")]).unwrap();
        let line = FreeGroup::with_alphabet(a.basis_homomorphism().source().clone());
        let whole = RecognizableSubset::whole(line.clone());
        match flatness_free(&f2, &a, &whole, 20).unwrap() {
            FlatnessReport::NotTransferable { search: NerodeSearch::Found(cert), requested } => {
                assert_eq!(requested, 20);
                assert_eq!(cert.len(), 20);
                assert!(cert.verify(|w| a.member(w)));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(flatness_free(&f2, &a, &RecognizableSubset::empty(line), 5).unwrap().is_transferable());

        // Index two: x = the subgroup of H where x1 (= b) has even exponent sum.
        let h = StallingsGraph::from_generators(&f2, &[p("a a"), p("b"), p("a b a^-1")]).unwrap();
        let basis = FreeGroup::with_alphabet(h.basis_homomorphism().source().clone());
        let mut table = Vec::new();
        for l in basis.alphabet().letters() {
            table.push(if l.generator() == 0 { alloc::vec![1, 0] } else { alloc::vec![0, 1] });
        }
        let x = RecognizableSubset::new(
            basis.clone(),
            CosetAction::new(basis.alphabet().clone(), table, 0).unwrap(),
            [0].into_iter().collect(),
        )
        .unwrap();
        let FlatnessReport::Transferable(r) = flatness_free(&f2, &h, &x, 5).unwrap() else { panic!() };
        for u in ball(&f2, 5).values() {
            let expected = match express_in_basis(&h, u) {
                Some(v) => x.contains_word(&v),
                None => false,
            };
            assert_eq!(r.contains_word(u), expected, "{u:?}");
        }
    }
}
