//! Command-line front end for `eqm-core`.

pub mod format;

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use eqm_core::{
    canonicalize, check_anonymous, check_strategy_proof, check_strategy_proof_full, enumerate_all,
    eval, is_onto, lp_to_proper, profile_index, proper_to_lp, reduce, represent_with_trace,
    subset_to_proper, to_table, Alternative, CountProfile, CountTable, FamilyGuard, LpRule, QuotaSeq,
};
use format::{Format, Table};
use num_bigint::BigUint;
use thiserror::Error;

pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("property violated: {0}")]
    Violation(String),
    #[error("search budget exceeded: {0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Read { .. } | CliError::Write { .. } => EXIT_INVALID,
            CliError::Violation(_) => EXIT_VIOLATION,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<eqm_core::Error> for CliError {
    fn from(e: eqm_core::Error) -> Self {
        match e {
            eqm_core::Error::SearchTooLarge { .. } => CliError::Budget(e.to_string()),
            eqm_core::Error::NotStrategyProof(_) => CliError::Violation(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "eqm", version, about = "Extended quota majority methods for binary choice with indifference")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    /// Society size.
    #[arg(long)]
    pub n: Option<u32>,
    /// Comma-separated quotas, e.g. 5,2,12.
    #[arg(long)]
    pub quotas: Option<String>,
    /// Sequence file: `n=<int>` then comma-separated quotas.
    #[arg(long, conflicts_with_all = ["n", "quotas"])]
    pub seq: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a quota sequence at a count profile.
    Eval {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long)]
        na: u32,
        #[arg(long)]
        nb: u32,
    },
    /// Print the proper form of a quota sequence.
    Canon {
        #[command(flatten)]
        seq: SeqArgs,
    },
    /// Write every anonymous strategy-proof rule for a society of n.
    Enum {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a table for anonymity, strategy-proofness and ontoness.
    Verify {
        #[arg(long)]
        table: PathBuf,
    },
    /// Recover the proper sequence of a strategy-proof table.
    Represent {
        #[arg(long)]
        table: PathBuf,
    },
    /// Convert between a proper sequence and an indifference-quota rule.
    Convert {
        #[arg(long)]
        n: u32,
        /// Proper sequence to convert into a quota rule.
        #[arg(long, conflicts_with_all = ["default", "r", "thresholds"])]
        quotas: Option<String>,
        /// Default of the quota rule to convert into a proper sequence.
        #[arg(long, value_parser = parse_alternative)]
        default: Option<Alternative>,
        /// Indifference quota.
        #[arg(long)]
        r: Option<u32>,
        /// Threshold vector (x for default a, y for default b).
        #[arg(long)]
        thresholds: Option<String>,
    },
    /// Print the count table of a quota sequence.
    Table {
        #[command(flatten)]
        seq: SeqArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the number of anonymous strategy-proof rules, 2^(n+1).
    Count {
        #[arg(long)]
        n: u32,
    },
    /// Print the proper sequence attached to a subset of {1..n}.
    Subset {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "")]
        subset: String,
        #[arg(long, value_parser = parse_alternative, default_value = "b")]
        default: Alternative,
    },
}

fn parse_alternative(s: &str) -> Result<Alternative, String> {
    match s {
        "a" => Ok(Alternative::A),
        "b" => Ok(Alternative::B),
        _ => Err(format!("'{s}' must be 'a' or 'b'")),
    }
}

/// What a command prints and the exit code it ends with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

fn load_raw_sequence(args: &SeqArgs) -> Result<(u32, Vec<u32>), CliError> {
    if let Some(path) = &args.seq {
        return format::parse_sequence_file(&read(path)?);
    }
    match (args.n, &args.quotas) {
        (Some(n), Some(q)) => Ok((n, format::parse_list(q)?)),
        _ => Err(CliError::Input("give either --seq FILE or both --n and --quotas".into())),
    }
}

fn load_table(path: &Path) -> Result<Table, CliError> {
    format::parse_table(&read(path)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verify(table: &Table) -> Result<Outcome, CliError> {
    let mut out = String::new();
    let mut violated = false;
    let (count, full_verdict) = match table {
        Table::Count(t) => (Some(t.clone()), None),
        Table::Full(f) => {
            let anonymous = check_anonymous(f);
            if anonymous {
                out.push_str("anonymous: yes\n");
            } else {
                violated = true;
                let detail = match reduce(f) {
                    Err(e) => e.to_string(),
                    Ok(_) => unreachable!("non-anonymous tables do not reduce"),
                };
                out.push_str(&format!("anonymous: no ({detail})\n"));
            }
            let verdict = check_strategy_proof_full(f, eqm_core::oracle::DEFAULT_FULL_LIMIT)?;
            let count = if anonymous { Some(reduce(f)?) } else { None };
            (count, Some((verdict, f.outcomes().to_vec())))
        }
    };
    if count.is_some() && full_verdict.is_none() {
        out.push_str("anonymous: yes\n");
    }
    let (sp_line, onto) = match (&count, &full_verdict) {
        (_, Some((verdict, outcomes))) => {
            let onto = outcomes.contains(&Alternative::A) && outcomes.contains(&Alternative::B);
            match verdict {
                Ok(()) => ("strategy-proof: yes".to_string(), onto),
                Err(c) => {
                    violated = true;
                    (format!("strategy-proof: no ({c})"), onto)
                }
            }
        }
        (Some(t), None) => match check_strategy_proof(t) {
            Ok(()) => ("strategy-proof: yes".to_string(), is_onto(t)),
            Err(c) => {
                violated = true;
                (format!("strategy-proof: no ({c})"), is_onto(t))
            }
        },
        (None, None) => unreachable!("every table yields a verdict"),
    };
    out.push_str(&sp_line);
    out.push('\n');
    out.push_str(&format!("onto: {}\n", yes_no(onto)));
    Ok(Outcome { stdout: out, code: if violated { EXIT_VIOLATION } else { 0 } })
}

fn count_table_of(table: Table) -> Result<CountTable, CliError> {
    match table {
        Table::Count(t) => Ok(t),
        Table::Full(f) => Ok(reduce(&f)?),
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Eval { seq, na, nb } => {
            let (n, quotas) = load_raw_sequence(&seq)?;
            let k = QuotaSeq::new(n, quotas)?;
            let p = CountProfile::new(na, nb, n)?;
            let outcome = eval(&k, p)?;
            let lambda = profile_index(&k, p)?.0;
            Ok(Outcome::ok(format!("{outcome} (lambda={lambda})\n")))
        }
        Command::Canon { seq } => {
            let (n, quotas) = load_raw_sequence(&seq)?;
            Ok(Outcome::ok(format!("{}\n", canonicalize(&quotas, n)?)))
        }
        Command::Enum { n, out, format } => {
            let family = enumerate_all(n, FamilyGuard::default())?;
            let text = format::write_family(n, &family, format);
            match out {
                Some(path) => {
                    fs::write(&path, text).map_err(|source| CliError::Write { path: path.clone(), source })?;
                    Ok(Outcome::ok(format!("wrote {} rules to {}\n", family.len(), path.display())))
                }
                None => Ok(Outcome::ok(text)),
            }
        }
        Command::Verify { table } => verify(&load_table(&table)?),
        Command::Represent { table } => {
            let t = count_table_of(load_table(&table)?)?;
            let (k, layers, raw) = represent_with_trace(&t)?;
            Ok(Outcome::ok(format!("{k}\n{layers}\ninterleaved={raw}\n")))
        }
        Command::Convert { n, quotas, default, r, thresholds } => match (quotas, default, r, thresholds) {
            (Some(q), None, None, None) => {
                let k = QuotaSeq::new(n, format::parse_list(&q)?)?;
                Ok(Outcome::ok(format!("{}\n", proper_to_lp(&k)?)))
            }
            (None, Some(default), Some(r), Some(t)) => {
                let rule = LpRule::new(n, default, r, format::parse_list(&t)?)?;
                Ok(Outcome::ok(format!("{}\n", lp_to_proper(&rule)?)))
            }
            _ => Err(CliError::Input(
                "give either --quotas, or all of --default, --r and --thresholds".into(),
            )),
        },
        Command::Table { seq, format } => {
            let (n, quotas) = load_raw_sequence(&seq)?;
            let k = QuotaSeq::new(n, quotas)?;
            Ok(Outcome::ok(format::write_count_table(&to_table(&k), format)))
        }
        Command::Count { n } => {
            if n == 0 {
                return Err(CliError::Input("society size must be at least 1".into()));
            }
            let count = BigUint::from(1u32) << (n as usize + 1);
            Ok(Outcome::ok(format!("{count}\n")))
        }
        Command::Subset { n, subset, default } => {
            let set: BTreeSet<u32> = format::parse_list(&subset)?.into_iter().collect();
            Ok(Outcome::ok(format!("{}\n", subset_to_proper(&set, default, n)?)))
        }
    }
}
