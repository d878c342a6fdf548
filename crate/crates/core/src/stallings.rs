//! Stallings graphs of finitely generated subgroups of free groups.
//!
//! A subgroup `H = <w_1, .., w_k>` is represented by the folded core graph
//! obtained from a bouquet of loops spelling the generators. Reduced words
//! labelling closed paths at the base vertex are exactly the elements of `H`.
//! Vertices of a finished graph are numbered by breadth-first search from the
//! base in shortlex letter order, so equal subgroups give equal graphs.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use crate::alphabet::{Alphabet, Letter};
use crate::automata::{Dfa, Homomorphism};
use crate::error::{Error, Result};
use crate::group::{FreeGroup, Group};
use crate::recognizable::CosetAction;
use crate::word::{free_reduce, ReducedWord, Word};

/// Finite index or not.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(usize),
    Infinite,
}

/// Right coset representatives `b_1 = 1, .., b_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal(Vec<Word>);

impl Transversal {
    pub fn new(words: Vec<Word>) -> Result<Self> {
        if words.first().is_none_or(|w| !w.is_empty()) {
            return Err(Error::Input("transversal must start with the empty word".into()));
        }
        Ok(Transversal(words))
    }

    pub fn words(&self) -> &[Word] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Folded, based, core subgroup graph. Vertex 0 is the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StallingsGraph {
    alphabet: Alphabet,
    /// `out[v][letter.index()]`; an `a`-edge `u -> v` also appears as `v -a^-1-> u`.
    out: Vec<Vec<Option<usize>>>,
}

struct Folder {
    parent: Vec<usize>,
    edges: Vec<BTreeMap<Letter, usize>>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    fn new() -> Self {
        Folder { parent: Vec::new(), edges: Vec::new(), pending: Vec::new() }
    }

    fn add_vertex(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.edges.push(BTreeMap::new());
        self.parent.len() - 1
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn half_edge(&mut self, u: usize, letter: Letter, v: usize) {
        let u = self.find(u);
        let v = self.find(v);
        match self.edges[u].get(&letter).copied() {
            Some(w) => {
                let w = self.find(w);
                if w != v {
                    self.pending.push((w, v));
                }
            }
            None => {
                self.edges[u].insert(letter, v);
            }
        }
    }

    fn edge(&mut self, u: usize, letter: Letter, v: usize) {
        self.half_edge(u, letter, v);
        self.half_edge(v, letter.inverse(), u);
        self.fold();
    }

    /// Identifies vertices until no vertex has two edges with the same label.
    fn fold(&mut self) {
        while let Some((x, y)) = self.pending.pop() {
            let (x, y) = (self.find(x), self.find(y));
            if x == y {
                continue;
            }
            let (keep, gone) = if x < y { (x, y) } else { (y, x) };
            self.parent[gone] = keep;
            let moved = core::mem::take(&mut self.edges[gone]);
            for (letter, target) in moved {
                self.half_edge(keep, letter, target);
            }
        }
    }
}

impl StallingsGraph {
    /// Folds the bouquet of the given generators (any words; they are
    /// reduced first) and prunes hanging trees.
    pub fn fold(alphabet: &Alphabet, generators: &[Word]) -> Result<Self> {
        let mut folder = Folder::new();
        let base = folder.add_vertex();
        for g in generators {
            g.check_alphabet(alphabet)?;
            let g = free_reduce(g);
            if g.is_empty() {
                continue;
            }
            let mut cur = base;
            for (i, &l) in g.iter().enumerate() {
                let next = if i + 1 == g.len() { base } else { folder.add_vertex() };
                folder.edge(cur, l, next);
                cur = next;
            }
        }
        let letters = alphabet.letter_count();
        let mut roots: BTreeMap<usize, usize> = BTreeMap::new();
        for v in 0..folder.parent.len() {
            let r = folder.find(v);
            let next = roots.len();
            roots.entry(r).or_insert(next);
        }
        let mut out = alloc::vec![alloc::vec![None; letters]; roots.len()];
        for (&r, &i) in &roots {
            let targets: Vec<(Letter, usize)> = folder.edges[r].iter().map(|(&l, &t)| (l, t)).collect();
            for (l, t) in targets {
                let t = folder.find(t);
                out[i][l.index()] = Some(roots[&t]);
            }
        }
        let base = roots[&folder.find(base)];
        Ok(Self::canonical(alphabet.clone(), prune(out, base), base))
    }

    pub fn from_generators(group: &FreeGroup, generators: &[Word]) -> Result<Self> {
        Self::fold(group.alphabet(), generators)
    }

    /// Renumbers vertices by shortlex BFS from the base.
    fn canonical(alphabet: Alphabet, out: Vec<Vec<Option<usize>>>, base: usize) -> Self {
        let mut order: Vec<usize> = alloc::vec![base];
        let mut index: BTreeMap<usize, usize> = [(base, 0)].into_iter().collect();
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for t in out[v].iter().flatten() {
                if !index.contains_key(t) {
                    index.insert(*t, order.len());
                    order.push(*t);
                }
            }
            i += 1;
        }
        let renumbered = order.iter().map(|&v| out[v].iter().map(|t| t.map(|t| index[&t])).collect()).collect();
        StallingsGraph { alphabet, out: renumbered }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn base(&self) -> usize {
        0
    }

    pub fn next(&self, vertex: usize, letter: Letter) -> Option<usize> {
        self.out[vertex][letter.index()]
    }

    /// Number of positive edges.
    pub fn edge_count(&self) -> usize {
        self.out.iter().map(|row| row.iter().step_by(2).flatten().count()).sum()
    }

    pub fn read(&self, word: &[Letter]) -> Option<usize> {
        word.iter().try_fold(self.base(), |v, &l| self.next(v, l))
    }

    /// Whether the word's free reduction labels a closed path at the base.
    pub fn member(&self, word: &[Letter]) -> bool {
        self.read(&free_reduce(word)) == Some(self.base())
    }

    /// Every vertex has an outgoing edge for every letter.
    pub fn is_complete(&self) -> bool {
        self.out.iter().all(|row| row.iter().all(Option::is_some))
    }

    pub fn index(&self) -> Index {
        if self.is_complete() {
            Index::Finite(self.vertex_count())
        } else {
            Index::Infinite
        }
    }

    /// Shortlex BFS tree: `(access words, tree half-edges)`.
    fn spanning_tree(&self) -> (Vec<Word>, Vec<Vec<bool>>) {
        let letters = self.alphabet.letter_count();
        let mut access: Vec<Option<Word>> = alloc::vec![None; self.vertex_count()];
        let mut tree = alloc::vec![alloc::vec![false; letters]; self.vertex_count()];
        access[0] = Some(Word::empty());
        let mut queue: VecDeque<usize> = [0].into_iter().collect();
        while let Some(v) = queue.pop_front() {
            for l in self.alphabet.letters() {
                if let Some(t) = self.next(v, l) {
                    if access[t].is_none() {
                        let mut w = access[v].clone().expect("visited");
                        w.push(l);
                        access[t] = Some(w);
                        tree[v][l.index()] = true;
                        tree[t][l.inverse().index()] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        (access.into_iter().map(|w| w.expect("core graph is connected")).collect(), tree)
    }

    /// Shortlex-least word reaching each vertex from the base.
    pub fn access_words(&self) -> Vec<Word> {
        self.spanning_tree().0
    }

    /// Free basis from the edges outside the BFS spanning tree, one per
    /// positive non-tree edge `u -a-> v`: `access(u) a access(v)^-1`.
    pub fn basis(&self) -> Vec<ReducedWord> {
        self.basis_edges().into_iter().map(|(_, _, w)| w).collect()
    }

    /// Basis elements with the positive edge `(vertex, letter)` they come from.
    pub fn basis_edges(&self) -> Vec<(usize, Letter, ReducedWord)> {
        let (access, tree) = self.spanning_tree();
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            for l in self.alphabet.positive_letters() {
                if let Some(t) = self.next(v, l) {
                    if !tree[v][l.index()] {
                        let mut w = access[v].clone();
                        w.push(l);
                        out.push((v, l, free_reduce(&w.concat(&access[t].inverse()))));
                    }
                }
            }
        }
        out
    }

    /// For each half-edge `(vertex, letter)`: the basis letter it spells
    /// (`None` on tree edges). Basis letter `k` is `Letter::positive(k)`.
    pub fn edge_labels(&self) -> Vec<Vec<Option<Letter>>> {
        let letters = self.alphabet.letter_count();
        let mut labels = alloc::vec![alloc::vec![None; letters]; self.vertex_count()];
        for (k, (v, l, _)) in self.basis_edges().into_iter().enumerate() {
            let t = self.next(v, l).expect("basis edge exists");
            labels[v][l.index()] = Some(Letter::positive(k));
            labels[t][l.inverse().index()] = Some(Letter::negative(k));
        }
        labels
    }

    /// Basis letters `x1..xk` and the substitution sending `x_i` to the i-th basis word.
    pub fn basis_homomorphism(&self) -> Homomorphism {
        let basis = self.basis();
        let names = (1..=basis.len()).map(|i| alloc::format!("x{i}"));
        let source = Alphabet::new(names).expect("generated names are valid");
        Homomorphism::new(source, self.alphabet.clone(), basis.into_iter().map(ReducedWord::into_word).collect())
            .expect("basis words lie over the alphabet")
    }

    fn require_finite_index(&self) -> Result<()> {
        match self.index() {
            Index::Finite(_) => Ok(()),
            Index::Infinite => Err(Error::Precondition("subgroup has infinite index".into())),
        }
    }

    /// Shortlex-minimal right coset representatives.
    pub fn transversal(&self) -> Result<Transversal> {
        self.require_finite_index()?;
        Transversal::new(self.access_words())
    }

    /// Right action of the letters on the cosets (= vertices).
    pub fn coset_action(&self) -> Result<CosetAction> {
        self.require_finite_index()?;
        let table =
            self.alphabet.letters().map(|l| (0..self.vertex_count()).map(|v| self.next(v, l).expect("complete graph")).collect()).collect();
        CosetAction::new(self.alphabet.clone(), table, 0)
    }

    /// Reads words along the graph: accepts exactly the words whose path
    /// stays in the graph and returns to the base. On reduced words this is
    /// membership in the subgroup.
    pub fn loop_dfa(&self) -> Dfa {
        let accept = (0..self.vertex_count()).map(|v| v == 0).collect();
        Dfa::from_parts(self.alphabet.clone(), self.out.clone(), 0, accept).expect("graph is deterministic")
    }
}

/// Repeatedly removes non-base vertices of degree one.
fn prune(mut out: Vec<Vec<Option<usize>>>, base: usize) -> Vec<Vec<Option<usize>>> {
    let n = out.len();
    let mut alive = alloc::vec![true; n];
    loop {
        let mut changed = false;
        for v in 0..n {
            if v == base || !alive[v] {
                continue;
            }
            let degree = out[v].iter().flatten().count();
            if degree <= 1 {
                alive[v] = false;
                changed = true;
                for k in 0..out[v].len() {
                    if let Some(t) = out[v][k].take() {
                        out[t][k ^ 1] = None;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    out
}
