//! One function per subcommand. Each returns a [`Report`]; exit codes are
//! decided by the caller.

use std::collections::{BTreeSet, VecDeque};
use std::fs;

use ratsub_core::automata::{nerode_witnesses, Label, NerodeSearch, Nfa};
use ratsub_core::rational::{rat_member, RationalSubset};
use ratsub_core::recognizable::RecognizableSubset;
use ratsub_core::stallings::{Index, StallingsGraph};
use ratsub_core::structure::{decompose_free, decompose_vc, epi_transfer, epi_transfer_free, rewrite_into_subgroup};
use ratsub_core::wordproblem::{conjugacy_class, epi_check, wp_dfa, wp_oca, wp_stack_acceptor, ConjugacyClassResult, EpiInput};
use ratsub_core::{free_reduce, Alphabet, Error, FiniteGroup, FreeGroup, Group, GroupBackend, Letter, VcElement, VirtuallyCyclic, Word};

use crate::error::CliError;
use crate::formats::{self, parse_element, parse_subgroup, print_basis, print_coset_action, print_nfa};
use crate::output::Report;

pub type CliResult<T> = Result<T, CliError>;

pub fn read_file(path: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })
}

fn in_file<T>(path: &str, r: CliResult<T>) -> CliResult<T> {
    r.map_err(|e| CliError::File { path: path.to_string(), source: Box::new(e) })
}

pub fn load_group(path: &str) -> CliResult<GroupBackend> {
    in_file(path, formats::parse_group(&read_file(path)?))
}

pub fn load_nfa(path: &str, alphabet: Option<&Alphabet>) -> CliResult<Nfa> {
    in_file(path, formats::parse_nfa(&read_file(path)?, alphabet))
}

pub fn parse_word(alphabet: &Alphabet, text: &str) -> CliResult<Word> {
    Word::parse(alphabet, text).map_err(|e| CliError::Input(format!("word `{text}`: {e}")))
}

fn display(alphabet: &Alphabet, w: &[Letter]) -> String {
    Word::from(w.to_vec()).display(alphabet).to_string()
}

fn unsupported(op: &str, g: &GroupBackend) -> CliError {
    CliError::Core(Error::Unsupported(format!("{op} is not available for {} groups", g.kind())))
}

fn free_only<'a>(op: &str, g: &'a GroupBackend) -> CliResult<&'a FreeGroup> {
    match g {
        GroupBackend::Free(f) => Ok(f),
        _ => Err(unsupported(op, g)),
    }
}

fn vc_only<'a>(op: &str, g: &'a GroupBackend) -> CliResult<&'a VirtuallyCyclic> {
    match g {
        GroupBackend::VirtuallyCyclic(v) => Ok(v),
        _ => Err(unsupported(op, g)),
    }
}

fn subgroup_graph(g: &FreeGroup, text: &str) -> CliResult<(Vec<Word>, StallingsGraph)> {
    let gens = parse_subgroup(g.alphabet(), text)?;
    let graph = StallingsGraph::from_generators(g, &gens)?;
    Ok((gens, graph))
}

fn not_contained(e: Error, alphabet: &Alphabet) -> CliError {
    match e {
        Error::NotContained { witness } => {
            CliError::Precondition(format!("subset is not contained in the subgroup; witness: {}", display(alphabet, &witness)))
        }
        other => other.into(),
    }
}

/// Words in the subgroup, as the rational subset `(g1 ∪ g1^-1 ∪ ..)*`.
fn subgroup_nfa(alphabet: &Alphabet, gens: &[Word]) -> CliResult<Nfa> {
    let mut nfa = Nfa::empty(alphabet.clone());
    for g in gens {
        nfa = nfa.union(&Nfa::word(alphabet.clone(), g))?.union(&Nfa::word(alphabet.clone(), &g.inverse()))?;
    }
    Ok(nfa.star())
}

// ------------------------------------------------------------------ words

pub fn reduce(word: &str, group: Option<&GroupBackend>) -> CliResult<Report> {
    let alphabet = match group {
        Some(g) => g.alphabet().clone(),
        None => {
            let mut names: Vec<&str> = Vec::new();
            for t in word.split_whitespace().filter(|&t| t != "1" && t != "ε") {
                let name = t.strip_suffix("^-1").unwrap_or(t);
                if !names.contains(&name) {
                    names.push(name);
                }
            }
            Alphabet::new(names).map_err(|e| CliError::Input(format!("word `{word}`: {e}")))?
        }
    };
    let w = parse_word(&alphabet, word)?;
    let mut r = Report::new();
    r.push("word", display(&alphabet, &free_reduce(&w)));
    Ok(r)
}

pub fn eval(g: &GroupBackend, word: &str) -> CliResult<Report> {
    let w = parse_word(g.alphabet(), word)?;
    let mut r = Report::new();
    r.push("element", g.eval_to_string(&w)?);
    Ok(r)
}

// --------------------------------------------------------------- subgroups

pub fn stallings(g: &GroupBackend, subgroup: &str) -> CliResult<Report> {
    let f = free_only("stallings", g)?;
    let (_, graph) = subgroup_graph(f, subgroup)?;
    let mut r = Report::new();
    r.push("automaton", print_nfa(&graph.loop_dfa().to_nfa()));
    Ok(r)
}

pub fn index(g: &GroupBackend, subgroup: &str) -> CliResult<Report> {
    let f = free_only("index", g)?;
    let (_, graph) = subgroup_graph(f, subgroup)?;
    let mut r = Report::new();
    match graph.index() {
        Index::Finite(n) => {
            r.push("index", format!("index: {n}"));
            for w in graph.transversal()?.words() {
                r.push("transversal", format!("transversal: {}", display(f.alphabet(), w)));
            }
        }
        Index::Infinite => r.push("index", "index: infinite"),
    }
    for line in print_basis(&graph.basis_homomorphism()) {
        r.push("basis", format!("basis: {line}"));
    }
    Ok(r)
}

fn finite_closure(g: &FiniteGroup, gens: &[Word]) -> CliResult<BTreeSet<usize>> {
    let images = gens.iter().map(|w| g.eval(w)).collect::<Result<Vec<_>, _>>()?;
    let mut seen: BTreeSet<usize> = [g.identity()].into_iter().collect();
    let mut queue: VecDeque<usize> = [g.identity()].into_iter().collect();
    while let Some(x) = queue.pop_front() {
        for h in &images {
            for y in [g.multiply(&x, h), g.multiply(&x, &g.inverse(h))] {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(seen)
}

pub fn member(g: &GroupBackend, subgroup: &str, word: &str) -> CliResult<Report> {
    let gens = parse_subgroup(g.alphabet(), subgroup)?;
    let w = parse_word(g.alphabet(), word)?;
    let yes = match g {
        GroupBackend::Free(f) => StallingsGraph::from_generators(f, &gens)?.member(&free_reduce(&w)),
        GroupBackend::Finite(f) => finite_closure(f, &gens)?.contains(&f.eval(&w)?),
        GroupBackend::VirtuallyCyclic(v) => {
            let x = RationalSubset::new(v.clone(), subgroup_nfa(v.alphabet(), &gens)?)?;
            rat_member(&x, &w)?
        }
    };
    let mut r = Report::new();
    r.decision("member", yes, ("yes", "no"));
    Ok(r)
}

// ---------------------------------------------------------------- rational

pub fn rat_member_cmd(g: &GroupBackend, nfa_path: &str, word: &str) -> CliResult<Report> {
    let nfa = load_nfa(nfa_path, Some(g.alphabet()))?;
    let w = parse_word(g.alphabet(), word)?;
    let yes = match g {
        GroupBackend::Free(f) => rat_member(&RationalSubset::new(f.clone(), nfa)?, &w)?,
        GroupBackend::Finite(f) => rat_member(&RationalSubset::new(f.clone(), nfa)?, &w)?,
        GroupBackend::VirtuallyCyclic(v) => rat_member(&RationalSubset::new(v.clone(), nfa)?, &w)?,
    };
    let mut r = Report::new();
    r.decision("member", yes, ("yes", "no"));
    Ok(r)
}

pub fn decompose(g: &GroupBackend, nfa_path: &str, subgroup: Option<&str>, modulus: Option<usize>) -> CliResult<Report> {
    let nfa = load_nfa(nfa_path, Some(g.alphabet()))?;
    let mut r = Report::new();
    match (g, subgroup, modulus) {
        (GroupBackend::Free(f), Some(s), None) => {
            let (gens, graph) = subgroup_graph(f, s)?;
            let d = decompose_free(&RationalSubset::new(f.clone(), nfa)?, &graph)?;
            r.push("decomposition", formats::print_free_decomposition(&d, &gens));
        }
        (GroupBackend::VirtuallyCyclic(v), None, Some(m)) => {
            let d = decompose_vc(&RationalSubset::new(v.clone(), nfa)?, m)?;
            r.push("decomposition", formats::print_vc_decomposition(&d));
        }
        (GroupBackend::Free(_), _, _) => return Err(CliError::Input("free groups take --subgroup".into())),
        (GroupBackend::VirtuallyCyclic(_), _, _) => return Err(CliError::Input("virtually cyclic groups take --modulus".into())),
        _ => return Err(unsupported("decompose", g)),
    }
    Ok(r)
}

pub fn recompose(g: &GroupBackend, path: &str) -> CliResult<Report> {
    let text = read_file(path)?;
    let nfa = match g {
        GroupBackend::Free(f) => in_file(path, formats::parse_free_decomposition(&text, f))?.recompose(f)?.into_nfa(),
        GroupBackend::VirtuallyCyclic(v) => in_file(path, formats::parse_vc_decomposition(&text, v))?.recompose()?.into_nfa(),
        _ => return Err(unsupported("recompose", g)),
    };
    let mut r = Report::new();
    r.push("automaton", print_nfa(&nfa.trim()));
    Ok(r)
}

pub fn rewrite(g: &GroupBackend, nfa_path: &str, subgroup: &str) -> CliResult<Report> {
    let f = free_only("rewrite", g)?;
    let nfa = load_nfa(nfa_path, Some(f.alphabet()))?;
    let (_, graph) = subgroup_graph(f, subgroup)?;
    let out = rewrite_into_subgroup(&RationalSubset::new(f.clone(), nfa)?, &graph).map_err(|e| not_contained(e, f.alphabet()))?;
    let mut r = Report::new();
    for line in print_basis(&out.basis) {
        r.push("basis", format!("basis: {line}"));
    }
    r.push("automaton", print_nfa(out.subset.nfa()));
    Ok(r)
}

// ------------------------------------------------------------ recognizable

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum RecOp {
    Union,
    Intersect,
    Complement,
    FromModulus,
    Subgroup,
    Preimage,
    ToRational,
    Member,
}

pub struct RecArgs<'a> {
    pub op: RecOp,
    pub a: Option<&'a str>,
    pub b: Option<&'a str>,
    pub modulus: Option<usize>,
    pub accept: Option<&'a str>,
    pub subgroup: Option<&'a str>,
    pub word: Option<&'a str>,
}

fn need<T>(value: Option<T>, flag: &str, op: RecOp) -> CliResult<T> {
    value.ok_or_else(|| CliError::Input(format!("rec-op {op:?} needs {flag}").to_lowercase()))
}

fn load_rec<G: Group + Clone>(group: &G, path: &str) -> CliResult<RecognizableSubset<G>> {
    let (action, accepted) = in_file(path, formats::parse_coset_action(&read_file(path)?, group.alphabet()))?;
    Ok(RecognizableSubset::new(group.clone(), action, accepted)?)
}

/// `r:i` pairs separated by commas or spaces.
fn parse_residues(text: &str) -> CliResult<Vec<(i64, usize)>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            let bad = || CliError::Input(format!("accepted coset `{t}` should look like `r:i`"));
            let (r, i) = t.split_once(':').ok_or_else(bad)?;
            Ok((r.parse().map_err(|_| bad())?, i.parse().map_err(|_| bad())?))
        })
        .collect()
}

fn rec_generic<G: Group + Clone>(group: &G, args: &RecArgs<'_>) -> CliResult<Report> {
    let op = args.op;
    let a = load_rec(group, need(args.a, "--a", op)?)?;
    let mut r = Report::new();
    match op {
        RecOp::Union | RecOp::Intersect => {
            let b = load_rec(group, need(args.b, "--b", op)?)?;
            let c = if op == RecOp::Union { a.union(&b)? } else { a.intersect(&b)? };
            r.push("coset_action", print_coset_action(&c));
        }
        RecOp::Complement => r.push("coset_action", print_coset_action(&a.complement())),
        RecOp::Preimage => r.push("automaton", print_nfa(&a.preimage_dfa().to_nfa())),
        RecOp::ToRational => r.push("automaton", print_nfa(a.to_rational().nfa())),
        RecOp::Member => {
            let w = parse_word(group.alphabet(), need(args.word, "--word", op)?)?;
            r.decision("member", a.contains_word(&w), ("yes", "no"));
        }
        RecOp::FromModulus | RecOp::Subgroup => unreachable!("handled by rec_op"),
    }
    Ok(r)
}

pub fn rec_op(g: &GroupBackend, args: &RecArgs<'_>) -> CliResult<Report> {
    let mut r = Report::new();
    match args.op {
        RecOp::FromModulus => {
            let v = vc_only("rec-op from-modulus", g)?;
            let m = need(args.modulus, "--modulus", args.op)?;
            let residues = parse_residues(args.accept.unwrap_or(""))?;
            r.push("coset_action", print_coset_action(&RecognizableSubset::from_modulus(v.clone(), m, &residues)?));
            Ok(r)
        }
        RecOp::Subgroup => {
            let f = free_only("rec-op subgroup", g)?;
            let (_, graph) = subgroup_graph(f, need(args.subgroup, "--subgroup", args.op)?)?;
            let h = RecognizableSubset::new(f.clone(), graph.coset_action()?, [0].into_iter().collect())?;
            r.push("coset_action", print_coset_action(&h));
            Ok(r)
        }
        _ => match g {
            GroupBackend::Free(f) => rec_generic(f, args),
            GroupBackend::Finite(f) => rec_generic(f, args),
            GroupBackend::VirtuallyCyclic(v) => rec_generic(v, args),
        },
    }
}

// ------------------------------------------------------------ word problem

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Machine {
    Dfa,
    Stack,
    Oca,
}

pub fn wp_accept(g: &GroupBackend, machine: Machine, word: &str) -> CliResult<Report> {
    let w = parse_word(g.alphabet(), word)?;
    let mut r = Report::new();
    let accepted = match (machine, g) {
        (Machine::Dfa, GroupBackend::Finite(f)) => {
            let dfa = wp_dfa(f);
            let mut state = Some(dfa.start());
            r.push("trace", format!("state {}", dfa.start()));
            for &l in w.iter() {
                state = state.and_then(|q| dfa.next(q, l));
                r.push("trace", state.map_or("state none".to_string(), |q| format!("state {q}")));
            }
            state.is_some_and(|q| dfa.is_accepting(q))
        }
        (Machine::Stack, GroupBackend::Free(f)) => {
            let machine = wp_stack_acceptor(f);
            for stack in machine.trace(&w) {
                r.push("trace", format!("stack {}", display(f.alphabet(), &stack)));
            }
            machine.accepts(&w)
        }
        (Machine::Oca, GroupBackend::VirtuallyCyclic(v)) => {
            let machine = wp_oca(v);
            for configs in machine.trace(&w) {
                let shown: Vec<String> = configs.iter().map(|(q, c)| format!("({q},{c})")).collect();
                r.push("trace", format!("configs {{{}}}", shown.join(",")));
            }
            machine.accepts(&w)
        }
        (m, _) => return Err(unsupported(&format!("the {m:?} acceptor").to_lowercase(), g)),
    };
    r.decision("decision", accepted, ("accept", "reject"));
    Ok(r)
}

pub fn conj_class(g: &GroupBackend, element: &str) -> CliResult<Report> {
    let v = vc_only("conj-class", g)?;
    let x = if element.trim_start().starts_with('(') { parse_element(element)? } else { v.eval(&parse_word(v.alphabet(), element)?)? };
    let mut r = Report::new();
    match conjugacy_class(v, &x)? {
        ConjugacyClassResult::Finite(set) => {
            r.push("shape", format!("finite: {}", set.len()));
            for e in set {
                r.push("element", e.to_string());
            }
        }
        ConjugacyClassResult::Cosets(c) => {
            r.push("shape", "cosets of 2Z");
            for &p in c.accepted() {
                r.push("coset", format!("{} + 2Z", VcElement::new((p % 2) as i64, p / 2 + 1)));
            }
        }
    }
    Ok(r)
}

pub fn epi_check_cmd(g: &GroupBackend, nfa_path: &str) -> CliResult<Report> {
    let nfa = load_nfa(nfa_path, Some(g.alphabet()))?;
    let yes = match g {
        GroupBackend::Free(f) => epi_check(EpiInput::Free(&RationalSubset::new(f.clone(), nfa)?))?,
        GroupBackend::Finite(f) => epi_check(EpiInput::Finite(&RationalSubset::new(f.clone(), nfa)?))?,
        GroupBackend::VirtuallyCyclic(v) => epi_check(EpiInput::VirtuallyCyclic(&RationalSubset::new(v.clone(), nfa)?))?,
    };
    let mut r = Report::new();
    r.decision("epi", yes, ("yes", "no"));
    Ok(r)
}

pub fn epi_transfer_cmd(g: &GroupBackend, nfa_path: &str, subgroup: Option<&str>, modulus: Option<usize>) -> CliResult<Report> {
    let nfa = load_nfa(nfa_path, Some(g.alphabet()))?;
    let mut r = Report::new();
    match (g, subgroup, modulus) {
        (GroupBackend::VirtuallyCyclic(v), None, Some(m)) => {
            let out = epi_transfer(&RationalSubset::new(v.clone(), nfa)?, m)?;
            r.push("automaton", print_nfa(out.nfa()));
        }
        (GroupBackend::Free(f), Some(s), None) => {
            let (_, graph) = subgroup_graph(f, s)?;
            let out = epi_transfer_free(&RationalSubset::new(f.clone(), nfa)?, &graph)?;
            for line in print_basis(&out.basis) {
                r.push("basis", format!("basis: {line}"));
            }
            r.push("automaton", print_nfa(out.subset.nfa()));
        }
        (GroupBackend::Free(_), _, _) => return Err(CliError::Input("free groups take --subgroup".into())),
        (GroupBackend::VirtuallyCyclic(_), _, _) => return Err(CliError::Input("virtually cyclic groups take --modulus".into())),
        _ => return Err(unsupported("epi-transfer", g)),
    }
    Ok(r)
}

/// Nerode witnesses for the word problem of the group, or for an automaton.
pub fn nerode(g: Option<&GroupBackend>, nfa_path: Option<&str>, k: usize, radius: usize) -> CliResult<Report> {
    let (search, alphabet) = match (g, nfa_path) {
        (_, Some(path)) => {
            let nfa = load_nfa(path, g.map(GroupBackend::alphabet))?;
            (nerode_witnesses(|w| nfa.accepts(w), nfa.alphabet(), k, radius)?, nfa.alphabet().clone())
        }
        (Some(g), None) => {
            let oracle = |w: &[Letter]| g.is_trivial_word(w).expect("letters from the group alphabet");
            (nerode_witnesses(oracle, g.alphabet(), k, radius)?, g.alphabet().clone())
        }
        (None, None) => return Err(CliError::Input("nerode needs --group or --nfa".into())),
    };
    let mut r = Report::new();
    match search {
        NerodeSearch::Found(cert) => {
            r.push("classes", format!("found: {}", cert.len()));
            for w in &cert.words {
                r.push("witness", format!("witness: {}", display(&alphabet, w)));
            }
        }
        NerodeSearch::Exhausted { classes_found } => {
            r.push("classes", format!("exhausted: {classes_found}"));
            r.negative = true;
        }
    }
    Ok(r)
}

// ---------------------------------------------------------------- validate

fn describe_group(g: &GroupBackend) -> String {
    match g {
        GroupBackend::Free(f) => format!("free group of rank {}", f.rank()),
        GroupBackend::Finite(f) => format!("finite group of order {}", f.size()),
        GroupBackend::VirtuallyCyclic(v) => format!("virtually cyclic group with {} classes", v.classes()),
    }
}

fn describe_nfa(nfa: &Nfa) -> String {
    let eps = nfa.transitions().filter(|(_, l, _)| *l == Label::Eps).count();
    format!("automaton with {} states, {} transitions ({eps} eps)", nfa.state_count(), nfa.transitions().count())
}

pub struct ValidateArgs<'a> {
    pub nfa: Option<&'a str>,
    pub coset_action: Option<&'a str>,
    pub decomposition: Option<&'a str>,
}

pub fn validate(g: Option<&GroupBackend>, args: &ValidateArgs<'_>) -> CliResult<Report> {
    let mut r = Report::new();
    if let Some(g) = g {
        r.push("group", format!("ok: {}", describe_group(g)));
    }
    if let Some(path) = args.nfa {
        r.push("automaton", format!("ok: {}", describe_nfa(&load_nfa(path, g.map(GroupBackend::alphabet))?)));
    }
    if let Some(path) = args.coset_action {
        let g = g.ok_or_else(|| CliError::Input("--coset-action needs --group".into()))?;
        let text = read_file(path)?;
        let (action, accepted) = in_file(path, formats::parse_coset_action(&text, g.alphabet()))?;
        let n = action.coset_count();
        match g {
            GroupBackend::Free(f) => drop(RecognizableSubset::new(f.clone(), action, accepted.clone())?),
            GroupBackend::Finite(f) => drop(RecognizableSubset::new(f.clone(), action, accepted.clone())?),
            GroupBackend::VirtuallyCyclic(v) => drop(RecognizableSubset::new(v.clone(), action, accepted.clone())?),
        }
        r.push("coset_action", format!("ok: coset action on {n} points, {} accepted", accepted.len()));
    }
    if let Some(path) = args.decomposition {
        let g = g.ok_or_else(|| CliError::Input("--decomposition needs --group".into()))?;
        let text = read_file(path)?;
        let parts = match g {
            GroupBackend::Free(f) => in_file(path, formats::parse_free_decomposition(&text, f))?.components.len(),
            GroupBackend::VirtuallyCyclic(v) => in_file(path, formats::parse_vc_decomposition(&text, v))?.components.len(),
            _ => return Err(unsupported("decompositions", g)),
        };
        r.push("decomposition", format!("ok: decomposition with {parts} cosets"));
    }
    if r.items().is_empty() {
        return Err(CliError::Input("validate needs at least one of --group, --nfa, --coset-action, --decomposition".into()));
    }
    Ok(r)
}
