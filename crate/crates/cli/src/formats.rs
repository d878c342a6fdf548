//! Line-oriented text formats: groups, automata, coset actions,
//! decompositions and semilinear sets.
//!
//! Every format is a sequence of `key: value` lines. Blank lines and lines
//! starting with `#` are ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use ratsub_core::automata::{Homomorphism, Label, Nfa};
use ratsub_core::rational::{RationalSubset, SemilinearZ};
use ratsub_core::recognizable::{CosetAction, RecognizableSubset};
use ratsub_core::stallings::StallingsGraph;
use ratsub_core::structure::{FreeDecomposition, VcDecomposition};
use ratsub_core::{Alphabet, FiniteGroup, FreeGroup, Group, GroupBackend, Letter, VcElement, VirtuallyCyclic, Word};

use crate::error::CliError;

/// One `key: value` line with its 1-based line number.
#[derive(Clone, Debug)]
pub struct Field {
    pub line: usize,
    pub key: String,
    pub value: String,
}

pub fn fields(text: &str) -> Result<Vec<Field>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(CliError::parse(i + 1, format!("expected `key: value`, found `{line}`")));
        };
        out.push(Field { line: i + 1, key: key.trim().to_string(), value: value.trim().to_string() });
    }
    Ok(out)
}

fn parse_num<T: std::str::FromStr>(f: &Field, token: &str) -> Result<T, CliError> {
    token.parse().map_err(|_| CliError::parse(f.line, format!("`{token}` is not a valid number for `{}`", f.key)))
}

fn numbers<T: std::str::FromStr>(f: &Field) -> Result<Vec<T>, CliError> {
    f.value.split_whitespace().map(|t| parse_num(f, t)).collect()
}

fn single<'a>(fs: &'a [Field], key: &str) -> Result<Option<&'a Field>, CliError> {
    let mut found = fs.iter().filter(|f| f.key == key);
    let first = found.next();
    if let Some(dup) = found.next() {
        return Err(CliError::parse(dup.line, format!("duplicate `{key}`")));
    }
    Ok(first)
}

fn required<'a>(fs: &'a [Field], key: &str, what: &str) -> Result<&'a Field, CliError> {
    single(fs, key)?.ok_or_else(|| CliError::parse(fs.first().map_or(1, |f| f.line), format!("{what} is missing `{key}:`")))
}

fn check_keys(fs: &[Field], allowed: &[&str]) -> Result<(), CliError> {
    match fs.iter().find(|f| !allowed.contains(&f.key.as_str())) {
        Some(f) => Err(CliError::parse(f.line, format!("unknown key `{}`", f.key))),
        None => Ok(()),
    }
}

fn at(f: &Field) -> impl Fn(ratsub_core::Error) -> CliError + '_ {
    move |e| CliError::parse(f.line, e.to_string())
}

fn alphabet_of(f: &Field) -> Result<Alphabet, CliError> {
    Alphabet::new(f.value.split_whitespace()).map_err(|e| CliError::parse(f.line, e.to_string()))
}

// ------------------------------------------------------------------ groups

pub fn parse_group(text: &str) -> Result<GroupBackend, CliError> {
    let fs = fields(text)?;
    let kind = required(&fs, "kind", "group file")?;
    match kind.value.as_str() {
        "free" => {
            check_keys(&fs, &["kind", "rank", "alphabet"])?;
            let rank = required(&fs, "rank", "free group")?;
            let r: usize = parse_num(rank, &rank.value)?;
            let g = match single(&fs, "alphabet")? {
                Some(a) => {
                    let alphabet = alphabet_of(a)?;
                    if alphabet.rank() != r {
                        return Err(CliError::parse(a.line, format!("alphabet has {} letters but rank is {r}", alphabet.rank())));
                    }
                    FreeGroup::with_alphabet(alphabet)
                }
                None => FreeGroup::new(r).map_err(at(rank))?,
            };
            Ok(GroupBackend::Free(g))
        }
        "finite" => {
            check_keys(&fs, &["kind", "order", "identity", "alphabet", "generators", "table"])?;
            let order_f = required(&fs, "order", "finite group")?;
            let order: usize = parse_num(order_f, &order_f.value)?;
            let rows: Vec<&Field> = fs.iter().filter(|f| f.key == "table").collect();
            if rows.len() != order {
                let line = rows.get(order).map_or(order_f.line, |f| f.line);
                return Err(CliError::parse(line, format!("expected {order} table rows, found {}", rows.len())));
            }
            let mut table = Vec::with_capacity(order);
            for row in &rows {
                let r: Vec<usize> = numbers(row)?;
                if r.len() != order {
                    return Err(CliError::parse(row.line, format!("table row has {} entries, expected {order}", r.len())));
                }
                table.push(r);
            }
            let identity = single(&fs, "identity")?.map(|f| parse_num(f, &f.value)).transpose()?;
            let gens_f = required(&fs, "generators", "finite group")?;
            let mut names = Vec::new();
            let mut images = Vec::new();
            for token in gens_f.value.split_whitespace() {
                let Some((name, index)) = token.split_once('=') else {
                    return Err(CliError::parse(gens_f.line, format!("generator `{token}` should look like `name=index`")));
                };
                names.push(name.to_string());
                images.push(parse_num(gens_f, index)?);
            }
            if let Some(a) = single(&fs, "alphabet")? {
                if alphabet_of(a)?.names() != names.as_slice() {
                    return Err(CliError::parse(a.line, "alphabet does not match the generator names".into()));
                }
            }
            let alphabet = Alphabet::new(names).map_err(at(gens_f))?;
            let g = FiniteGroup::new(table, identity, alphabet, images).map_err(at(rows.first().copied().unwrap_or(order_f)))?;
            Ok(GroupBackend::Finite(g))
        }
        "virtually_cyclic" => {
            check_keys(&fs, &["kind", "n", "phi", "cocycle", "alphabet"])?;
            let n_f = required(&fs, "n", "virtually cyclic group")?;
            let n: usize = parse_num(n_f, &n_f.value)?;
            if n == 0 {
                return Err(CliError::parse(n_f.line, "n must be at least 1".into()));
            }
            let phi_f = required(&fs, "phi", "virtually cyclic group")?;
            let phi: Vec<i64> = phi_f
                .value
                .split_whitespace()
                .map(|t| match t {
                    "+" | "+1" => Ok(1),
                    "-" | "-1" => Ok(-1),
                    _ => Err(CliError::parse(phi_f.line, format!("phi entry `{t}` must be + or -"))),
                })
                .collect::<Result<_, _>>()?;
            if phi.len() != n {
                return Err(CliError::parse(phi_f.line, format!("phi has {} entries, expected {n}", phi.len())));
            }
            let mut cocycle = vec![None; n * n];
            for f in fs.iter().filter(|f| f.key == "cocycle") {
                let parts: Vec<&str> = f.value.split_whitespace().collect();
                if parts.len() != 4 {
                    return Err(CliError::parse(f.line, "cocycle lines are `i j c tau`".into()));
                }
                let (i, j): (usize, usize) = (parse_num(f, parts[0])?, parse_num(f, parts[1])?);
                let (c, tau): (i64, usize) = (parse_num(f, parts[2])?, parse_num(f, parts[3])?);
                if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
                    return Err(CliError::parse(f.line, format!("class index out of range 1..={n}")));
                }
                let slot = &mut cocycle[(i - 1) * n + (j - 1)];
                if slot.is_some() {
                    return Err(CliError::parse(f.line, format!("duplicate cocycle entry for ({i}, {j})")));
                }
                *slot = Some((c, tau));
            }
            if let Some(k) = cocycle.iter().position(Option::is_none) {
                return Err(CliError::parse(n_f.line, format!("missing cocycle entry for ({}, {})", k / n + 1, k % n + 1)));
            }
            let (c, tau): (Vec<i64>, Vec<usize>) = cocycle.into_iter().map(|e| e.expect("checked")).unzip();
            let mut g = VirtuallyCyclic::new(phi, c, tau).map_err(at(n_f))?;
            if let Some(a) = single(&fs, "alphabet")? {
                g = g.renamed(alphabet_of(a)?).map_err(at(a))?;
            }
            Ok(GroupBackend::VirtuallyCyclic(g))
        }
        other => Err(CliError::parse(kind.line, format!("unknown group kind `{other}`"))),
    }
}

// ---------------------------------------------------------------- automata

fn parse_label(f: &Field, alphabet: &Alphabet, token: &str) -> Result<Label, CliError> {
    if token == "eps" {
        return Ok(Label::Eps);
    }
    alphabet.parse_letter(token).map(Label::Sym).map_err(|e| CliError::parse(f.line, e.to_string()))
}

fn state_list(f: &Field, states: usize) -> Result<Vec<usize>, CliError> {
    let list: Vec<usize> = numbers(f)?;
    if let Some(q) = list.iter().find(|&&q| q >= states) {
        return Err(CliError::parse(f.line, format!("state {q} out of range (states: {states})")));
    }
    Ok(list)
}

/// An automaton from its fields; `expected` pins the alphabet.
pub fn nfa_from_fields(fs: &[Field], expected: Option<&Alphabet>) -> Result<Nfa, CliError> {
    check_keys(fs, &["kind", "alphabet", "states", "start", "accept", "trans"])?;
    if let Some(k) = single(fs, "kind")? {
        if k.value != "nfa" {
            return Err(CliError::parse(k.line, format!("expected an automaton, found kind `{}`", k.value)));
        }
    }
    let a = required(fs, "alphabet", "automaton")?;
    let alphabet = alphabet_of(a)?;
    if let Some(e) = expected {
        if e != &alphabet {
            return Err(CliError::parse(
                a.line,
                format!("alphabet `{}` does not match the group alphabet `{}`", a.value, e.names().join(" ")),
            ));
        }
    }
    let s = required(fs, "states", "automaton")?;
    let states: usize = parse_num(s, &s.value)?;
    let mut nfa = Nfa::new(alphabet.clone(), states);
    for q in state_list(required(fs, "start", "automaton")?, states)? {
        nfa.set_start(q).expect("in range");
    }
    if let Some(acc) = single(fs, "accept")? {
        for q in state_list(acc, states)? {
            nfa.set_accept(q).expect("in range");
        }
    }
    for f in fs.iter().filter(|f| f.key == "trans") {
        let parts: Vec<&str> = f.value.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(CliError::parse(f.line, "transitions are `<from> <label> <to>`".into()));
        }
        let from: usize = parse_num(f, parts[0])?;
        let to: usize = parse_num(f, parts[2])?;
        let label = parse_label(f, &alphabet, parts[1])?;
        nfa.add_transition(from, label, to).map_err(|e| CliError::parse(f.line, e.to_string()))?;
    }
    Ok(nfa)
}

pub fn parse_nfa(text: &str, expected: Option<&Alphabet>) -> Result<Nfa, CliError> {
    nfa_from_fields(&fields(text)?, expected)
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn label_name(alphabet: &Alphabet, label: Label) -> String {
    match label {
        Label::Eps => "eps".into(),
        Label::Sym(l) => alphabet.name(l).to_string(),
    }
}

/// Transitions sorted by source, then ε before letters in shortlex order.
pub fn print_nfa(nfa: &Nfa) -> String {
    let alphabet = nfa.alphabet();
    let mut trans: Vec<(usize, Option<usize>, usize)> = nfa.transitions().map(|(p, l, q)| (p, l.letter().map(Letter::index), q)).collect();
    trans.sort();
    trans.dedup();
    let mut out = String::new();
    writeln!(out, "alphabet: {}", alphabet.names().join(" ")).unwrap();
    writeln!(out, "states: {}", nfa.state_count()).unwrap();
    writeln!(out, "start: {}", join(nfa.start_states())).unwrap();
    writeln!(out, "accept: {}", join(nfa.accept_states())).unwrap();
    for (p, l, q) in trans {
        let label = l.map_or(Label::Eps, |i| Label::Sym(Letter::from_index(i)));
        writeln!(out, "trans: {p} {} {q}", label_name(alphabet, label)).unwrap();
    }
    out.trim_end().to_string()
}

// ----------------------------------------------------------- coset actions

/// A `kind: coset_action` file: one permutation per positive letter given by
/// `trans` lines; inverse-letter lines are optional and must agree.
pub fn parse_coset_action(text: &str, expected: &Alphabet) -> Result<(CosetAction, BTreeSet<usize>), CliError> {
    let fs = fields(text)?;
    check_keys(&fs, &["kind", "alphabet", "states", "start", "accept", "trans"])?;
    let kind = required(&fs, "kind", "coset action")?;
    if kind.value != "coset_action" {
        return Err(CliError::parse(kind.line, format!("expected `kind: coset_action`, found `{}`", kind.value)));
    }
    let a = required(&fs, "alphabet", "coset action")?;
    let alphabet = alphabet_of(a)?;
    if &alphabet != expected {
        return Err(CliError::parse(a.line, "coset action alphabet does not match the group alphabet".into()));
    }
    let s = required(&fs, "states", "coset action")?;
    let n: usize = parse_num(s, &s.value)?;
    if n == 0 {
        return Err(CliError::parse(s.line, "a coset action needs at least one point".into()));
    }
    let start_f = required(&fs, "start", "coset action")?;
    let start = state_list(start_f, n)?;
    if start.len() != 1 {
        return Err(CliError::parse(start_f.line, "a coset action has exactly one base point".into()));
    }
    let accepted: BTreeSet<usize> = match single(&fs, "accept")? {
        Some(f) => state_list(f, n)?.into_iter().collect(),
        None => BTreeSet::new(),
    };
    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; n]; alphabet.letter_count()];
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for f in fs.iter().filter(|f| f.key == "trans") {
        let parts: Vec<&str> = f.value.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(CliError::parse(f.line, "transitions are `<from> <label> <to>`".into()));
        }
        let from = state_list(&Field { value: parts[0].into(), ..f.clone() }, n)?[0];
        let to = state_list(&Field { value: parts[2].into(), ..f.clone() }, n)?[0];
        let Label::Sym(l) = parse_label(f, &alphabet, parts[1])? else {
            return Err(CliError::parse(f.line, "coset actions have no eps moves".into()));
        };
        if seen.insert((l.index(), from), f.line).is_some() {
            return Err(CliError::parse(f.line, format!("second image of point {from} under `{}`", parts[1])));
        }
        table[l.index()][from] = Some(to);
    }
    let mut full = vec![vec![0; n]; alphabet.letter_count()];
    for l in alphabet.positive_letters() {
        let (p, m) = (l.index(), l.inverse().index());
        for x in 0..n {
            let y = table[p][x].ok_or_else(|| CliError::parse(s.line, format!("point {x} has no image under `{}`", alphabet.name(l))))?;
            if table[m][y].is_some_and(|z| z != x) {
                return Err(CliError::parse(
                    seen[&(m, y)],
                    format!("`{}` is not the inverse of `{}`", alphabet.name(l.inverse()), alphabet.name(l)),
                ));
            }
            full[p][x] = y;
            full[m][y] = x;
        }
        let mut image: Vec<usize> = full[p].clone();
        image.sort_unstable();
        image.dedup();
        if image.len() != n {
            return Err(CliError::parse(s.line, format!("`{}` does not act as a permutation", alphabet.name(l))));
        }
    }
    let action = CosetAction::new(alphabet, full, start[0]).map_err(|e| CliError::parse(s.line, e.to_string()))?;
    Ok((action, accepted))
}

pub fn print_coset_action<G: Group + Clone>(r: &RecognizableSubset<G>) -> String {
    let action = r.action();
    let alphabet = action.alphabet();
    let mut out = String::from("kind: coset_action\n");
    writeln!(out, "alphabet: {}", alphabet.names().join(" ")).unwrap();
    writeln!(out, "states: {}", action.coset_count()).unwrap();
    writeln!(out, "start: {}", action.base()).unwrap();
    writeln!(out, "accept: {}", join(r.accepted())).unwrap();
    for l in alphabet.positive_letters() {
        for x in 0..action.coset_count() {
            writeln!(out, "trans: {x} {} {}", alphabet.name(l), action.apply(x, l)).unwrap();
        }
    }
    out.trim_end().to_string()
}

// ---------------------------------------------------------- decompositions

pub fn parse_element(text: &str) -> Result<VcElement, CliError> {
    let inner = text.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')'));
    let parsed = inner.and_then(|t| {
        let (z, i) = t.split_once(',')?;
        Some(VcElement::new(z.trim().parse().ok()?, i.trim().parse().ok()?))
    });
    parsed.ok_or_else(|| CliError::Input(format!("`{text}` is not an element `(z,i)`")))
}

pub fn parse_subgroup(alphabet: &Alphabet, text: &str) -> Result<Vec<Word>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| Word::parse(alphabet, t).map_err(|e| CliError::Input(format!("generator `{t}`: {e}"))))
        .collect()
}

fn show(alphabet: &Alphabet, w: &[Letter]) -> String {
    Word::from(w.to_vec()).display(alphabet).to_string()
}

pub fn print_basis(basis: &Homomorphism) -> Vec<String> {
    basis
        .source()
        .positive_letters()
        .map(|x| format!("{} = {}", basis.source().name(x), show(basis.target(), &basis.image_of(x))))
        .collect()
}

pub fn print_free_decomposition(d: &FreeDecomposition, generators: &[Word]) -> String {
    let ambient = d.graph.alphabet();
    let mut out = String::from("kind: decomposition\n");
    writeln!(out, "subgroup: {}", generators.iter().map(|g| show(ambient, g)).collect::<Vec<_>>().join(", ")).unwrap();
    for line in print_basis(&d.basis) {
        writeln!(out, "basis: {line}").unwrap();
    }
    for (b, c) in d.transversal.words().iter().zip(&d.components) {
        writeln!(out, "coset: {}", show(ambient, b)).unwrap();
        writeln!(out, "{}", print_nfa(c.nfa())).unwrap();
    }
    out.trim_end().to_string()
}

pub fn print_vc_decomposition(d: &VcDecomposition) -> String {
    let mut out = String::from("kind: decomposition\n");
    writeln!(out, "modulus: {}", d.modulus).unwrap();
    for (b, c) in d.transversal.iter().zip(&d.components) {
        writeln!(out, "coset: {b}").unwrap();
        writeln!(out, "component: {c}").unwrap();
    }
    out.trim_end().to_string()
}

fn sections(fs: &[Field]) -> Vec<(&Field, &[Field])> {
    let starts: Vec<usize> = fs.iter().enumerate().filter(|(_, f)| f.key == "coset").map(|(i, _)| i).collect();
    starts.iter().enumerate().map(|(k, &i)| (&fs[i], &fs[i + 1..starts.get(k + 1).copied().unwrap_or(fs.len())])).collect()
}

/// Rebuilds a decomposition printed by `decompose`. The transversal and basis
/// are recomputed from the declared subgroup and must match the file.
pub fn parse_free_decomposition(text: &str, group: &FreeGroup) -> Result<FreeDecomposition, CliError> {
    let fs = fields(text)?;
    let kind = required(&fs, "kind", "decomposition")?;
    if kind.value != "decomposition" {
        return Err(CliError::parse(kind.line, "expected `kind: decomposition`".into()));
    }
    let head_end = fs.iter().position(|f| f.key == "coset").unwrap_or(fs.len());
    let head = &fs[..head_end];
    check_keys(head, &["kind", "subgroup", "basis"])?;
    let sub = required(head, "subgroup", "free decomposition")?;
    let gens = parse_subgroup(group.alphabet(), &sub.value).map_err(|e| CliError::parse(sub.line, e.to_string()))?;
    let graph = StallingsGraph::from_generators(group, &gens).map_err(|e| CliError::parse(sub.line, e.to_string()))?;
    let transversal = graph.transversal().map_err(|e| CliError::parse(sub.line, e.to_string()))?;
    let basis = graph.basis_homomorphism();
    let declared: Vec<&Field> = head.iter().filter(|f| f.key == "basis").collect();
    let expected = print_basis(&basis);
    if declared.len() != expected.len() {
        return Err(CliError::parse(sub.line, format!("subgroup has a basis of {} words, file lists {}", expected.len(), declared.len())));
    }
    for (f, e) in declared.iter().zip(&expected) {
        if &f.value != e {
            return Err(CliError::parse(f.line, format!("basis entry differs from the computed `{e}`")));
        }
    }
    let parts = sections(&fs);
    if parts.len() != transversal.len() {
        return Err(CliError::parse(kind.line, format!("expected {} cosets, found {}", transversal.len(), parts.len())));
    }
    let mut components = Vec::with_capacity(parts.len());
    for ((coset, body), b) in parts.into_iter().zip(transversal.words()) {
        let w = Word::parse(group.alphabet(), &coset.value).map_err(|e| CliError::parse(coset.line, e.to_string()))?;
        if &w != b {
            return Err(CliError::parse(coset.line, format!("coset representative should be `{}`", show(group.alphabet(), b))));
        }
        let nfa = nfa_from_fields(body, Some(basis.source()))?;
        components.push(RationalSubset::new(FreeGroup::with_alphabet(basis.source().clone()), nfa).expect("alphabet checked"));
    }
    Ok(FreeDecomposition { graph, transversal, basis, components })
}

pub fn parse_vc_decomposition(text: &str, group: &VirtuallyCyclic) -> Result<VcDecomposition, CliError> {
    let fs = fields(text)?;
    check_keys(&fs, &["kind", "modulus", "coset", "component"])?;
    let kind = required(&fs, "kind", "decomposition")?;
    if kind.value != "decomposition" {
        return Err(CliError::parse(kind.line, "expected `kind: decomposition`".into()));
    }
    let m_f = required(&fs, "modulus", "decomposition")?;
    let modulus: usize = parse_num(m_f, &m_f.value)?;
    if modulus == 0 {
        return Err(CliError::parse(m_f.line, "modulus must be at least 1".into()));
    }
    let expected: Vec<VcElement> = (1..=group.classes()).flat_map(|i| (0..modulus as i64).map(move |r| VcElement::new(r, i))).collect();
    let parts = sections(&fs);
    if parts.len() != expected.len() {
        return Err(CliError::parse(m_f.line, format!("expected {} cosets, found {}", expected.len(), parts.len())));
    }
    let mut components = Vec::with_capacity(parts.len());
    for ((coset, body), want) in parts.into_iter().zip(&expected) {
        let b = parse_element(&coset.value).map_err(|e| CliError::parse(coset.line, e.to_string()))?;
        if &b != want {
            return Err(CliError::parse(coset.line, format!("coset representative should be {want}")));
        }
        let [c] = body else {
            return Err(CliError::parse(coset.line, "each coset takes exactly one `component:` line".into()));
        };
        components.push(c.value.parse::<SemilinearZ>().map_err(|e| CliError::parse(c.line, e.to_string()))?);
    }
    Ok(VcDecomposition { group: group.clone(), modulus, transversal: expected, components })
}
