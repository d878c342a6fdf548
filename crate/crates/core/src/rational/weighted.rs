//! Sets of path weights in integer-weighted automata, computed exactly by
//! state elimination over [`SemilinearZ`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::SemilinearZ;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedAutomaton {
    states: usize,
    edges: Vec<(usize, i64, usize)>,
}

impl WeightedAutomaton {
    pub fn new(states: usize) -> Self {
        WeightedAutomaton { states, edges: Vec::new() }
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn add_edge(&mut self, from: usize, weight: i64, to: usize) {
        assert!(from < self.states && to < self.states, "edge endpoint out of range");
        self.edges.push((from, weight, to));
    }

    pub fn edges(&self) -> &[(usize, i64, usize)] {
        &self.edges
    }

    fn closure(&self, seeds: &BTreeSet<usize>, forward: bool) -> BTreeSet<usize> {
        let mut seen = seeds.clone();
        let mut stack: Vec<usize> = seeds.iter().copied().collect();
        while let Some(v) = stack.pop() {
            for &(a, _, b) in &self.edges {
                let (from, to) = if forward { (a, b) } else { (b, a) };
                if from == v && seen.insert(to) {
                    stack.push(to);
                }
            }
        }
        seen
    }

    /// Exact set of weights of paths from a start state to a final state.
    pub fn path_weights(&self, starts: &BTreeSet<usize>, finals: &BTreeSet<usize>) -> SemilinearZ {
        let live: BTreeSet<usize> = self.closure(starts, true).intersection(&self.closure(finals, false)).copied().collect();
        if live.is_empty() {
            return SemilinearZ::empty();
        }
        let source = self.states;
        let sink = self.states + 1;
        let mut m: BTreeMap<(usize, usize), SemilinearZ> = BTreeMap::new();
        let add = |m: &mut BTreeMap<(usize, usize), SemilinearZ>, p: usize, q: usize, s: SemilinearZ| {
            let slot = m.entry((p, q)).or_insert_with(SemilinearZ::empty);
            *slot = slot.union(&s);
        };
        for &s in starts.intersection(&live) {
            add(&mut m, source, s, SemilinearZ::singleton(0));
        }
        for &f in finals.intersection(&live) {
            add(&mut m, f, sink, SemilinearZ::singleton(0));
        }
        let mut weights: BTreeMap<(usize, usize), BTreeSet<i64>> = BTreeMap::new();
        for &(a, w, b) in &self.edges {
            if live.contains(&a) && live.contains(&b) {
                weights.entry((a, b)).or_default().insert(w);
            }
        }
        for ((a, b), ws) in weights {
            add(&mut m, a, b, SemilinearZ::from_finite(ws));
        }

        let mut remaining = live;
        while !remaining.is_empty() {
            // Eliminate the state with the fewest in/out combinations.
            let k = *remaining
                .iter()
                .min_by_key(|&&k| {
                    let ins = m.keys().filter(|&&(p, q)| q == k && p != k).count();
                    let outs = m.keys().filter(|&&(p, q)| p == k && q != k).count();
                    (ins * outs, k)
                })
                .expect("nonempty");
            remaining.remove(&k);
            let looped = m.remove(&(k, k)).map_or_else(|| SemilinearZ::singleton(0), |s| s.star());
            let ins: Vec<(usize, SemilinearZ)> = m.iter().filter(|((_, q), _)| *q == k).map(|(&(p, _), s)| (p, s.clone())).collect();
            let outs: Vec<(usize, SemilinearZ)> = m.iter().filter(|((p, _), _)| *p == k).map(|(&(_, q), s)| (q, s.clone())).collect();
            m.retain(|&(p, q), _| p != k && q != k);
            for (p, into) in &ins {
                let through = into.sum(&looped);
                for (q, out) in &outs {
                    add(&mut m, *p, *q, through.sum(out));
                }
            }
        }
        m.remove(&(source, sink)).unwrap_or_else(SemilinearZ::empty)
    }

    /// Weights of paths with at most `max_edges` edges. Used to check results.
    pub fn bounded_weights(&self, starts: &BTreeSet<usize>, finals: &BTreeSet<usize>, max_edges: usize) -> BTreeSet<i64> {
        let mut reach: BTreeSet<(usize, i64)> = starts.iter().map(|&s| (s, 0)).collect();
        let mut frontier = reach.clone();
        for _ in 0..max_edges {
            let mut next = BTreeSet::new();
            for &(v, w) in &frontier {
                for &(a, dw, b) in &self.edges {
                    if a == v && !reach.contains(&(b, w + dw)) {
                        next.insert((b, w + dw));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            reach.extend(next.iter().copied());
            frontier = next;
        }
        reach.into_iter().filter(|(v, _)| finals.contains(v)).map(|(_, w)| w).collect()
    }

    /// [`Self::path_weights`], checked against bounded enumeration: every
    /// weight of a short path must be in the result.
    pub fn verified_path_weights(&self, starts: &BTreeSet<usize>, finals: &BTreeSet<usize>) -> Result<SemilinearZ> {
        let result = self.path_weights(starts, finals);
        let horizon = (2 * self.states + 2).min(24);
        if let Some(w) = self.bounded_weights(starts, finals, horizon).into_iter().find(|&w| !result.contains(w)) {
            return Err(Error::Inconsistency(alloc::format!("path weight {w} missing from computed image")));
        }
        Ok(result)
    }
}
