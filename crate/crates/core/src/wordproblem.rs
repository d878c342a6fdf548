//! Word-problem acceptors, epi checks, and conjugacy classes in virtually
//! cyclic groups.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::automata::{reduced_filter, Dfa, Guard, OcaTransition, OneCounterAutomaton, StackAcceptor};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, FreeGroup, Group, VcElement, VirtuallyCyclic};
use crate::rational::{RationalSubset, SemilinearZ};
use crate::recognizable::RecognizableSubset;

/// Cayley DFA of a finite group: states are elements, the identity is both
/// start and only accepting state.
pub fn wp_dfa(group: &FiniteGroup) -> Dfa {
    let trans = group.elements().map(|g| group.alphabet().letters().map(|l| Some(group.act(&g, l))).collect()).collect();
    let accept = group.elements().map(|g| g == group.identity()).collect();
    Dfa::from_parts(group.alphabet().clone(), trans, group.identity(), accept).expect("Cayley table is total")
}

pub fn wp_stack_acceptor(group: &FreeGroup) -> StackAcceptor {
    StackAcceptor::new(group.alphabet().clone())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Sign {
    Pos,
    Zero,
    Neg,
}

const SIGNS: [Sign; 3] = [Sign::Pos, Sign::Zero, Sign::Neg];

/// One unit change `z -> z + dir` of `z = sign * counter`:
/// `(guard, counter delta, new sign)`. A negative sign may carry counter 0
/// after a decrement; it still stands for `z = 0`.
fn unit_moves(sign: Sign, dir: i64) -> Vec<(Guard, i8, Sign)> {
    let (with, against) = if dir > 0 { (Sign::Pos, Sign::Neg) } else { (Sign::Neg, Sign::Pos) };
    if sign == Sign::Zero || sign == with {
        alloc::vec![(Guard::Any, 1, with)]
    } else {
        debug_assert_eq!(sign, against);
        alloc::vec![(Guard::Nonzero, -1, against), (Guard::Zero, 1, with)]
    }
}

/// One-counter acceptor: the state holds the class and the sign of the
/// `t`-exponent, the counter its absolute value. A letter changing the
/// exponent by `d` is one transition followed by `|d| - 1` ε-steps.
pub fn wp_oca(group: &VirtuallyCyclic) -> OneCounterAutomaton {
    let n = group.classes();
    let main = |class: usize, sign: Sign| (class - 1) * 3 + SIGNS.iter().position(|&s| s == sign).expect("sign");
    let mut states = 3 * n;
    let mut transitions = Vec::new();
    for class in 1..=n {
        for l in group.alphabet().letters() {
            let (dz, next) = group.step(class, l);
            if dz == 0 {
                for s in SIGNS {
                    transitions.push(OcaTransition {
                        from: main(class, s),
                        letter: Some(l),
                        guard: Guard::Any,
                        delta: 0,
                        to: main(next, s),
                    });
                }
                continue;
            }
            let dir = dz.signum();
            let steps = dz.unsigned_abs() as usize;
            // Level k of the chain has one state per sign after k unit steps.
            let mut level: Vec<(Sign, usize)> = SIGNS.iter().map(|&s| (s, main(class, s))).collect();
            for k in 1..=steps {
                let targets: Vec<(Sign, usize)> = if k == steps {
                    SIGNS.iter().map(|&s| (s, main(next, s))).collect()
                } else {
                    let fresh = [Sign::Pos, Sign::Neg].map(|s| {
                        states += 1;
                        (s, states - 1)
                    });
                    fresh.to_vec()
                };
                for &(sign, from) in &level {
                    for (guard, delta, to_sign) in unit_moves(sign, dir) {
                        let to = targets.iter().find(|(s, _)| *s == to_sign).expect("target sign").1;
                        let letter = (k == 1).then_some(l);
                        transitions.push(OcaTransition { from, letter, guard, delta, to });
                    }
                }
                level = targets;
            }
        }
    }
    let accept = SIGNS.iter().map(|&s| main(1, s)).collect();
    OneCounterAutomaton::new(group.alphabet().clone(), states, transitions, main(1, Sign::Zero), accept).expect("well-formed acceptor")
}

/// `π(X) = G \ {1}` for a finite group.
pub fn epi_check_finite(x: &RationalSubset<FiniteGroup>) -> bool {
    let g = x.group();
    let expected: BTreeSet<usize> = g.elements().filter(|&e| e != g.identity()).collect();
    x.image_finite() == expected
}

/// Per class: `Z \ {0}` on the class of the identity, all of `Z` elsewhere.
pub fn epi_check_vc(x: &RationalSubset<VirtuallyCyclic>) -> Result<bool> {
    let images = x.class_images()?;
    let all = SemilinearZ::all();
    let nonzero = SemilinearZ::singleton(0).complement();
    Ok(images.iter().enumerate().all(|(i, s)| if i == 0 { *s == nonzero } else { *s == all }))
}

/// The reduced language must be every nonempty reduced word.
pub fn epi_check_free(x: &RationalSubset<FreeGroup>) -> Result<bool> {
    let filter = reduced_filter(x.group().alphabet());
    let accept = (0..filter.state_count()).map(|q| q != filter.start()).collect();
    let nonempty = Dfa::from_parts(filter.alphabet().clone(), filter.table().to_vec(), filter.start(), accept)?.to_nfa();
    x.reduced_language().equivalent(&nonempty)
}

/// A group backend together with a rational subset over it, for [`epi_check`].
pub enum EpiInput<'a> {
    Free(&'a RationalSubset<FreeGroup>),
    Finite(&'a RationalSubset<FiniteGroup>),
    VirtuallyCyclic(&'a RationalSubset<VirtuallyCyclic>),
}

pub fn epi_check(x: EpiInput<'_>) -> Result<bool> {
    match x {
        EpiInput::Free(x) => epi_check_free(x),
        EpiInput::Finite(x) => Ok(epi_check_finite(x)),
        EpiInput::VirtuallyCyclic(x) => epi_check_vc(x),
    }
}

/// A conjugacy class in a virtually cyclic group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugacyClassResult {
    Finite(BTreeSet<VcElement>),
    /// A union of cosets of `2Z`.
    Cosets(RecognizableSubset<VirtuallyCyclic>),
}

impl ConjugacyClassResult {
    pub fn contains(&self, x: &VcElement) -> bool {
        match self {
            ConjugacyClassResult::Finite(set) => set.contains(x),
            ConjugacyClassResult::Cosets(r) => r.contains(x),
        }
    }
}

/// Conjugation by `t^k` fixes `g = (z, i)` when `phi(i) = +1` and moves it to
/// `(z + 2k, i)` when `phi(i) = -1`. So the class is the finite set of
/// conjugates by the transversal `b_j` in the first case, and the union of
/// their `2Z`-cosets in the second.
pub fn conjugacy_class(group: &VirtuallyCyclic, g: &VcElement) -> Result<ConjugacyClassResult> {
    group.check_element(g)?;
    let conj = |x: &VcElement| group.multiply(&group.multiply(x, g), &group.inverse(x));
    let by_transversal: BTreeSet<VcElement> = (1..=group.classes()).map(|j| conj(&VcElement::new(0, j))).collect();
    if group.phi(g.class) == 1 {
        return Ok(ConjugacyClassResult::Finite(by_transversal));
    }
    let residues: Vec<(i64, usize)> = by_transversal.iter().map(|c| (c.z.rem_euclid(2), c.class)).collect();
    let cosets = RecognizableSubset::from_modulus(group.clone(), 2, &residues)?;
    for j in 1..=group.classes() {
        let probe = conj(&VcElement::new(1, j));
        if !cosets.contains(&probe) {
            return Err(Error::Inconsistency(alloc::format!("conjugate {probe} escaped the computed cosets")));
        }
    }
    Ok(ConjugacyClassResult::Cosets(cosets))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{nerode_witnesses, NerodeSearch, Nfa};
    use crate::oracle::brute_conjugacy;
    use crate::word::{free_reduce, Word};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_word(rng: &mut ChaCha8Rng, letters: usize, max_len: usize) -> Word {
        let len = rng.gen_range(0..=max_len);
        (0..len).map(|_| crate::alphabet::Letter::from_index(rng.gen_range(0..letters))).collect()
    }

    fn w(g: &impl Group, t: &str) -> Word {
        Word::parse(g.alphabet(), t).unwrap()
    }

    #[test]
    fn cayley_dfas() {
        let z3 = FiniteGroup::cyclic(3, "g").unwrap();
        let d = wp_dfa(&z3);
        assert_eq!(d.state_count(), 3);
        assert!(d.accepts(&w(&z3, "g g g")) && !d.accepts(&w(&z3, "g")));
        let trivial = FiniteGroup::cyclic(1, "g").unwrap();
        let d = wp_dfa(&trivial);
        assert_eq!(d.state_count(), 1);
        assert!(d.accepts(&w(&trivial, "g g^-1 g")));
        let s3 = FiniteGroup::symmetric3();
        let d = wp_dfa(&s3);
        assert_eq!(d.state_count(), 6);
        let comm = w(&s3, "s r s^-1 r^-1");
        assert!(d.accepts(&comm.concat(&comm.inverse())));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let u = random_word(&mut rng, 4, 10);
            assert_eq!(d.accepts(&u), s3.is_identity(&s3.eval(&u).unwrap()));
        }
    }

    #[test]
    fn stack_acceptor() {
        let f2 = FreeGroup::new(2).unwrap();
        let s = wp_stack_acceptor(&f2);
        assert!(s.accepts(&w(&f2, "a b b^-1 a^-1")));
        assert!(!s.accepts(&w(&f2, "a b a^-1 b^-1")));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..2000 {
            let u = random_word(&mut rng, 4, 20);
            assert_eq!(s.accepts(&u), free_reduce(&u).is_empty());
        }
    }

    #[test]
    fn one_counter_acceptors() {
        let z = VirtuallyCyclic::integers();
        let m = wp_oca(&z);
        assert!(m.accepts(&w(&z, "t t t^-1 t^-1")));
        assert!(!m.accepts(&w(&z, "t t t^-1")));
        let d = VirtuallyCyclic::infinite_dihedral();
        let m = wp_oca(&d);
        assert!(m.accepts(&w(&d, "t t b2 t t b2")));
        for g in [VirtuallyCyclic::infinite_dihedral(), VirtuallyCyclic::integers_times_z2()] {
            let m = wp_oca(&g);
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..2000 {
                let u = random_word(&mut rng, g.alphabet().letter_count(), 20);
                assert_eq!(m.accepts(&u), g.is_identity(&g.eval(&u).unwrap()), "{u:?}");
            }
        }
    }

    #[test]
    fn cocycle_steps_use_epsilon_chains() {
        // b2 b2 = t t, so reading b2 from class 2 moves the exponent by two.
        let g = VirtuallyCyclic::new(alloc::vec![1, 1], alloc::vec![0, 0, 0, 2], alloc::vec![1, 2, 2, 1]).unwrap();
        let m = wp_oca(&g);
        assert!(m.transitions().iter().any(|t| t.letter.is_none()));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..2000 {
            let u = random_word(&mut rng, 4, 16);
            assert_eq!(m.accepts(&u), g.is_identity(&g.eval(&u).unwrap()), "{u:?}");
        }
        assert!(m.accepts(&w(&g, "b2 b2 t^-1 t^-1")));
        assert!(!m.accepts(&w(&g, "b2 b2 t^-1")));
    }

    #[test]
    fn nerode_on_finite_word_problems() {
        let s3 = FiniteGroup::symmetric3();
        let d = wp_dfa(&s3);
        let oracle = |u: &[crate::alphabet::Letter]| d.accepts(u);
        assert!(matches!(nerode_witnesses(oracle, s3.alphabet(), 6, 6).unwrap(), NerodeSearch::Found(_)));
        assert_eq!(nerode_witnesses(oracle, s3.alphabet(), 7, 6).unwrap(), NerodeSearch::Exhausted { classes_found: 6 });
    }

    #[test]
    fn epi_checks() {
        let z = VirtuallyCyclic::integers();
        let t = Nfa::word(z.alphabet().clone(), &w(&z, "t"));
        let ti = Nfa::word(z.alphabet().clone(), &w(&z, "t^-1"));
        let pos = t.concat(&t.star()).unwrap();
        let witness = RationalSubset::new(z.clone(), pos.union(&ti.concat(&ti.star()).unwrap()).unwrap()).unwrap();
        assert!(epi_check(EpiInput::VirtuallyCyclic(&witness)).unwrap());
        assert!(!epi_check_vc(&RationalSubset::new(z.clone(), pos).unwrap()).unwrap());
        let z3 = FiniteGroup::cyclic(3, "g").unwrap();
        let n = Nfa::word(z3.alphabet().clone(), &w(&z3, "g")).union(&Nfa::word(z3.alphabet().clone(), &w(&z3, "g g"))).unwrap();
        assert!(epi_check(EpiInput::Finite(&RationalSubset::new(z3.clone(), n).unwrap())).unwrap());
        let f2 = FreeGroup::new(2).unwrap();
        assert!(!epi_check(EpiInput::Free(&RationalSubset::empty(f2))).unwrap());
    }

    #[test]
    fn dihedral_conjugacy() {
        let d = VirtuallyCyclic::infinite_dihedral();
        let c = conjugacy_class(&d, &VcElement::new(1, 1)).unwrap();
        assert_eq!(c, ConjugacyClassResult::Finite([VcElement::new(1, 1), VcElement::new(-1, 1)].into_iter().collect()));
        let ConjugacyClassResult::Cosets(r) = conjugacy_class(&d, &VcElement::new(0, 2)).unwrap() else { panic!() };
        for z in -8..=8 {
            assert_eq!(r.contains(&VcElement::new(z, 2)), z % 2 == 0);
            assert!(!r.contains(&VcElement::new(z, 1)));
        }
        let brute = brute_conjugacy(&d, &VcElement::new(0, 2), 6).unwrap();
        assert!(brute.iter().all(|x| r.contains(x)));
        assert_eq!(conjugacy_class(&d, &d.identity()).unwrap(), ConjugacyClassResult::Finite([d.identity()].into_iter().collect()));
        assert!(conjugacy_class(&d, &VcElement::new(0, 3)).is_err());
    }
}
