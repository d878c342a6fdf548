//! `ratsub`: rational and recognizable subsets of groups from the command line.
//!
//! Exit codes: 0 success, 1 negative decision, 2 input error, 3 precondition
//! error.

mod commands;
mod error;
mod formats;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{load_group, CliResult, Machine, RecArgs, RecOp, ValidateArgs};
use output::{Format, Report};

#[derive(Parser)]
#[command(name = "ratsub", version, about = "Rational and recognizable subsets of free, finite and virtually cyclic groups")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Freely reduce a word.
    Reduce {
        #[arg(long)]
        word: String,
        /// Optional group file fixing the alphabet.
        #[arg(long)]
        group: Option<String>,
    },
    /// Normal form of a word in a group.
    Eval {
        #[arg(long)]
        group: String,
        #[arg(long)]
        word: String,
    },
    /// Stallings graph of a subgroup of a free group, as an automaton.
    Stallings {
        #[arg(long)]
        group: String,
        /// Comma-separated generator words.
        #[arg(long)]
        subgroup: String,
    },
    /// Index, coset transversal and free basis of a subgroup of a free group.
    Index {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
    },
    /// Subgroup membership.
    Member {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
        #[arg(long)]
        word: String,
    },
    /// Membership in the rational subset given by an automaton.
    RatMember {
        #[arg(long)]
        group: String,
        #[arg(long)]
        nfa: String,
        #[arg(long)]
        word: String,
    },
    /// Split a rational subset along the cosets of a finite-index subgroup.
    Decompose {
        #[arg(long)]
        group: String,
        #[arg(long)]
        nfa: String,
        /// Finite-index subgroup of a free group.
        #[arg(long, conflicts_with = "modulus")]
        subgroup: Option<String>,
        /// `m` for the subgroup `mZ` of a virtually cyclic group.
        #[arg(long)]
        modulus: Option<usize>,
    },
    /// Reassemble a decomposition into one automaton.
    Recompose {
        #[arg(long)]
        group: String,
        #[arg(long)]
        decomposition: String,
    },
    /// Rewrite a rational subset of a subgroup over a free basis of the subgroup.
    Rewrite {
        #[arg(long)]
        group: String,
        #[arg(long)]
        nfa: String,
        #[arg(long)]
        subgroup: String,
    },
    /// Operations on recognizable subsets given by coset actions.
    RecOp {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum)]
        op: RecOp,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        modulus: Option<usize>,
        /// Accepted cosets `r:i` for from-modulus.
        #[arg(long)]
        accept: Option<String>,
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long)]
        word: Option<String>,
    },
    /// Run a word-problem acceptor and print its trace.
    WpAccept {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum)]
        machine: Machine,
        #[arg(long)]
        word: String,
    },
    /// Conjugacy class of an element `(z,i)` or a word.
    ConjClass {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Does the automaton evaluate onto the group minus the identity?
    EpiCheck {
        #[arg(long)]
        group: String,
        #[arg(long)]
        nfa: String,
    },
    /// Transfer an epi witness to a finite-index subgroup.
    EpiTransfer {
        #[arg(long)]
        group: String,
        #[arg(long)]
        nfa: String,
        #[arg(long, conflicts_with = "modulus")]
        subgroup: Option<String>,
        #[arg(long)]
        modulus: Option<usize>,
    },
    /// Search for pairwise Nerode-inequivalent words.
    Nerode {
        /// Use the word problem of this group as the language.
        #[arg(long)]
        group: Option<String>,
        /// Use this automaton's language instead.
        #[arg(long)]
        nfa: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        radius: usize,
    },
    /// Check input files without running anything.
    Validate {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        nfa: Option<String>,
        #[arg(long)]
        coset_action: Option<String>,
        #[arg(long)]
        decomposition: Option<String>,
    },
}

fn run(command: &Command) -> CliResult<Report> {
    use Command::*;
    match command {
        Reduce { word, group } => {
            let g = group.as_deref().map(load_group).transpose()?;
            commands::reduce(word, g.as_ref())
        }
        Eval { group, word } => commands::eval(&load_group(group)?, word),
        Stallings { group, subgroup } => commands::stallings(&load_group(group)?, subgroup),
        Index { group, subgroup } => commands::index(&load_group(group)?, subgroup),
        Member { group, subgroup, word } => commands::member(&load_group(group)?, subgroup, word),
        RatMember { group, nfa, word } => commands::rat_member_cmd(&load_group(group)?, nfa, word),
        Decompose { group, nfa, subgroup, modulus } => commands::decompose(&load_group(group)?, nfa, subgroup.as_deref(), *modulus),
        Recompose { group, decomposition } => commands::recompose(&load_group(group)?, decomposition),
        Rewrite { group, nfa, subgroup } => commands::rewrite(&load_group(group)?, nfa, subgroup),
        RecOp { group, op, a, b, modulus, accept, subgroup, word } => {
            let args = RecArgs {
                op: *op,
                a: a.as_deref(),
                b: b.as_deref(),
                modulus: *modulus,
                accept: accept.as_deref(),
                subgroup: subgroup.as_deref(),
                word: word.as_deref(),
            };
            commands::rec_op(&load_group(group)?, &args)
        }
        WpAccept { group, machine, word } => commands::wp_accept(&load_group(group)?, *machine, word),
        ConjClass { group, element } => commands::conj_class(&load_group(group)?, element),
        EpiCheck { group, nfa } => commands::epi_check_cmd(&load_group(group)?, nfa),
        EpiTransfer { group, nfa, subgroup, modulus } => {
            commands::epi_transfer_cmd(&load_group(group)?, nfa, subgroup.as_deref(), *modulus)
        }
        Nerode { group, nfa, k, radius } => {
            let g = group.as_deref().map(load_group).transpose()?;
            commands::nerode(g.as_ref(), nfa.as_deref(), *k, *radius)
        }
        Validate { group, nfa, coset_action, decomposition } => {
            let g = group.as_deref().map(load_group).transpose()?;
            let args = ValidateArgs { nfa: nfa.as_deref(), coset_action: coset_action.as_deref(), decomposition: decomposition.as_deref() };
            commands::validate(g.as_ref(), &args)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(report.render(cli.format).as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if report.negative { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("ratsub: {e}");
            e.exit_code()
        }
    }
}
