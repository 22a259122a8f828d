//! Text and structured (JSON) file formats for tables, sequences and the
//! enumerated family.
//!
//! Count tables in text form are an `n=<int>` header followed by one
//! `na nb outcome` line per profile; full-profile tables use a string over
//! `{a,b,i}` in place of `na nb`. Blank lines and `#` comments are ignored.
//! Sequence files are an `n=<int>` header followed by comma-separated quotas.

use std::collections::BTreeSet;

use eqm_core::{Alternative, CountProfile, CountTable, FullProfile, FullTable, QuotaSeq};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

/// A table read from disk: anonymous counts or full profiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Table {
    Count(CountTable),
    Full(FullTable),
}

#[derive(Serialize, Deserialize)]
struct CountEntry {
    a: u32,
    b: u32,
    out: String,
}

#[derive(Serialize, Deserialize)]
struct FullEntry {
    profile: String,
    out: String,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Entries {
    Count(Vec<CountEntry>),
    Full(Vec<FullEntry>),
}

#[derive(Serialize, Deserialize)]
struct TableDoc {
    n: u32,
    entries: Entries,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

fn parse_outcome(s: &str) -> Result<Alternative, CliError> {
    let mut chars = s.chars();
    match (chars.next().and_then(Alternative::from_char), chars.next()) {
        (Some(alt), None) => Ok(alt),
        _ => Err(invalid(format!("outcome '{s}' must be 'a' or 'b'"))),
    }
}

fn parse_header(line: &str) -> Result<u32, CliError> {
    let value = line
        .strip_prefix("n=")
        .ok_or_else(|| invalid(format!("expected header 'n=<int>', found '{line}'")))?;
    let n: u32 = value.trim().parse().map_err(|_| invalid(format!("bad society size '{value}'")))?;
    if n == 0 {
        return Err(invalid("society size must be at least 1"));
    }
    Ok(n)
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Fills a table from `(slot, outcome)` pairs, requiring every slot exactly once.
fn fill(size: usize, cells: Vec<(usize, Alternative, String)>) -> Result<Vec<Alternative>, CliError> {
    let mut outcomes: Vec<Option<Alternative>> = vec![None; size];
    for (slot, alt, label) in cells {
        if outcomes[slot].replace(alt).is_some() {
            return Err(invalid(format!("profile {label} appears twice")));
        }
    }
    let missing = outcomes.iter().filter(|o| o.is_none()).count();
    if missing > 0 {
        return Err(invalid(format!("table is missing {missing} profile(s)")));
    }
    Ok(outcomes.into_iter().map(Option::unwrap).collect())
}

fn count_cell(n: u32, a: u32, b: u32, out: &str) -> Result<(usize, Alternative, String), CliError> {
    let p = CountProfile::new(a, b, n).map_err(|e| invalid(e.to_string()))?;
    Ok((p.index(), parse_outcome(out)?, p.to_string()))
}

fn full_cell(n: u32, key: &str, out: &str) -> Result<(usize, Alternative, String), CliError> {
    let p = FullProfile::parse(key)
        .ok_or_else(|| invalid(format!("profile '{key}' must be a string over {{a,b,i}}")))?;
    if p.n() != n {
        return Err(invalid(format!("profile '{key}' has {} voters, expected {n}", p.n())));
    }
    Ok((p.rank(), parse_outcome(out)?, key.to_string()))
}

fn full_size(n: u32) -> Result<usize, CliError> {
    3usize.checked_pow(n).filter(|_| n <= 16).ok_or_else(|| invalid(format!("full table for n={n} is too large")))
}

fn build(n: u32, full: bool, cells: Vec<(usize, Alternative, String)>) -> Result<Table, CliError> {
    if full {
        let outcomes = fill(full_size(n)?, cells)?;
        Ok(Table::Full(FullTable::new(n, outcomes).map_err(|e| invalid(e.to_string()))?))
    } else {
        let outcomes = fill(eqm_core::types::count_profile_total(n), cells)?;
        Ok(Table::Count(CountTable::new(n, outcomes).map_err(|e| invalid(e.to_string()))?))
    }
}

pub fn parse_table(text: &str) -> Result<Table, CliError> {
    if text.trim_start().starts_with('{') {
        return parse_structured_table(text);
    }
    let mut lines = content_lines(text);
    let n = parse_header(lines.next().ok_or_else(|| invalid("empty table file"))?)?;
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split_whitespace().collect()).collect();
    let full = rows.first().is_some_and(|r| r.len() == 2);
    let mut cells = Vec::with_capacity(rows.len());
    for row in rows {
        let cell = match (full, row.as_slice()) {
            (false, [a, b, out]) => {
                let a = a.parse().map_err(|_| invalid(format!("bad count '{a}'")))?;
                let b = b.parse().map_err(|_| invalid(format!("bad count '{b}'")))?;
                count_cell(n, a, b, out)?
            }
            (true, [key, out]) => full_cell(n, key, out)?,
            _ => return Err(invalid(format!("malformed table line '{}'", row.join(" ")))),
        };
        cells.push(cell);
    }
    build(n, full, cells)
}

fn parse_structured_table(text: &str) -> Result<Table, CliError> {
    let doc: TableDoc = serde_json::from_str(text).map_err(|e| invalid(format!("bad structured table: {e}")))?;
    if doc.n == 0 {
        return Err(invalid("society size must be at least 1"));
    }
    match doc.entries {
        Entries::Count(entries) => {
            let cells = entries
                .iter()
                .map(|e| count_cell(doc.n, e.a, e.b, &e.out))
                .collect::<Result<_, _>>()?;
            build(doc.n, false, cells)
        }
        Entries::Full(entries) => {
            let cells = entries
                .iter()
                .map(|e| full_cell(doc.n, &e.profile, &e.out))
                .collect::<Result<_, _>>()?;
            build(doc.n, true, cells)
        }
    }
}

pub fn write_count_table(t: &CountTable, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!("n={}\n", t.n());
            for (p, o) in t.iter() {
                out.push_str(&format!("{} {} {}\n", p.n_a(), p.n_b(), o));
            }
            out
        }
        Format::Structured => {
            let doc = TableDoc { n: t.n(), entries: Entries::Count(count_entries(t)) };
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
    }
}

pub fn write_full_table(t: &FullTable, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!("n={}\n", t.n());
            for (p, o) in t.iter() {
                out.push_str(&format!("{p} {o}\n"));
            }
            out
        }
        Format::Structured => {
            let entries = t
                .iter()
                .map(|(p, o)| FullEntry { profile: p.to_string(), out: o.to_string() })
                .collect();
            let doc = TableDoc { n: t.n(), entries: Entries::Full(entries) };
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
    }
}

fn count_entries(t: &CountTable) -> Vec<CountEntry> {
    t.iter()
        .map(|(p, o)| CountEntry { a: p.n_a(), b: p.n_b(), out: o.to_string() })
        .collect()
}

/// Comma-separated non-negative integers.
pub fn parse_list(s: &str) -> Result<Vec<u32>, CliError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            let part = part.trim();
            part.parse::<u32>().map_err(|_| invalid(format!("'{part}' is not a non-negative integer")))
        })
        .collect()
}

/// A sequence file: `n=<int>` then comma-separated quotas.
pub fn parse_sequence_file(text: &str) -> Result<(u32, Vec<u32>), CliError> {
    let mut lines = content_lines(text);
    let n = parse_header(lines.next().ok_or_else(|| invalid("empty sequence file"))?)?;
    let mut quotas = Vec::new();
    for line in lines {
        quotas.extend(parse_list(line.trim_end_matches(','))?);
    }
    Ok((n, quotas))
}

pub fn write_sequence_file(k: &QuotaSeq) -> String {
    format!("n={}\n{}\n", k.n(), k)
}

fn subset_string(subset: &BTreeSet<u32>) -> String {
    let parts: Vec<String> = subset.iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

#[derive(Serialize)]
struct MemberDoc {
    default: String,
    subset: Vec<u32>,
    quotas: Vec<u32>,
    entries: Vec<CountEntry>,
}

#[derive(Serialize)]
struct FamilyDoc {
    n: u32,
    count: usize,
    members: Vec<MemberDoc>,
}

/// The enumerated family, one member per line in text form.
pub fn write_family(n: u32, family: &[(QuotaSeq, CountTable)], format: Format) -> String {
    let members = family.iter().map(|(k, t)| {
        let (subset, default) = eqm_core::proper_to_subset(k).expect("family members are proper");
        (k, t, subset, default)
    });
    match format {
        Format::Text => {
            let mut out = format!("n={n}\ncount={}\n", family.len());
            for (k, t, subset, default) in members {
                out.push_str(&format!(
                    "default={default} subset={} quotas={k} table={}\n",
                    subset_string(&subset),
                    t.signature()
                ));
            }
            out
        }
        Format::Structured => {
            let doc = FamilyDoc {
                n,
                count: family.len(),
                members: members
                    .map(|(k, t, subset, default)| MemberDoc {
                        default: default.to_string(),
                        subset: subset.into_iter().collect(),
                        quotas: k.quotas().to_vec(),
                        entries: count_entries(t),
                    })
                    .collect(),
            };
            serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
        }
    }
}
