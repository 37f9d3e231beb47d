use std::fs;

use mstd_core::primes;
use mstd_core::sequences::{materialize, SequenceSpec};
use mstd_core::IntSet;

use crate::cli::SetInput;
use crate::Usage;

fn parse_list(text: &str, sep: &[char]) -> Result<Vec<u64>, Usage> {
    text.split(sep)
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|_| Usage(format!("{t:?} is not a nonnegative integer"))))
        .collect()
}

fn read_file(path: &str) -> Result<String, Usage> {
    fs::read_to_string(path).map_err(|e| Usage(format!("cannot read {path}: {e}")))
}

/// Inline comma list or `@path` with one integer per line.
pub fn parse_set_text(text: &str) -> anyhow::Result<IntSet> {
    let values = match text.strip_prefix('@') {
        Some(path) => parse_list(&read_file(path)?, &['\n', '\r'])?,
        None => parse_list(text, &[','])?,
    };
    if values.is_empty() {
        return Err(Usage("the set is empty".into()).into());
    }
    Ok(IntSet::from_unsorted(values)?)
}

pub fn resolve_set(input: &SetInput) -> anyhow::Result<IntSet> {
    if let Some(seq) = &input.seq {
        let spec = parse_sequence(seq)?;
        let n = input.terms.ok_or_else(|| Usage("--seq needs --terms".into()))?;
        return Ok(IntSet::new(materialize(&spec, n)?)?);
    }
    if let Some(x) = input.primes_upto {
        return Ok(IntSet::new(primes::sieve(x)?.primes().collect())?);
    }
    match &input.set {
        Some(text) => parse_set_text(text),
        None => Err(Usage("no input set: give a comma list, @file, --seq with --terms, or --primes-upto".into()).into()),
    }
}

fn nums(body: &str, what: &str, expect: usize) -> Result<Vec<u64>, Usage> {
    let v = parse_list(body, &[','])?;
    if v.len() != expect {
        return Err(Usage(format!("{what} takes {expect} comma-separated values")));
    }
    Ok(v)
}

/// `fibonacci`, `geometric:C,R,D`, `recurrence:COEFFS;SEEDS`, `explicit:A,B,..`,
/// `explicit:@file`, or a JSON spec.
pub fn parse_sequence(text: &str) -> anyhow::Result<SequenceSpec> {
    let text = text.trim();
    if text.starts_with('{') {
        return serde_json::from_str(text).map_err(|e| Usage(format!("bad sequence JSON: {e}")).into());
    }
    let (kind, body) = text.split_once(':').unwrap_or((text, ""));
    let spec = match kind {
        "fibonacci" => SequenceSpec::Fibonacci,
        "geometric" | "shifted_geometric" | "shifted-geometric" => {
            let v = nums(body, "geometric", 3)?;
            SequenceSpec::ShiftedGeometric { c: v[0], r: v[1], d: v[2] }
        }
        "recurrence" | "linear_recurrence" | "linear-recurrence" => {
            let (c, s) = body
                .split_once(';')
                .ok_or_else(|| Usage("recurrence takes COEFFS;SEEDS, e.g. recurrence:1,1;1,2".into()))?;
            let coeffs = c
                .split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| Usage(format!("{t:?} is not an integer"))))
                .collect::<Result<Vec<_>, _>>()?;
            SequenceSpec::LinearRecurrence { coeffs, seeds: parse_list(s, &[','])? }
        }
        "explicit" => {
            let elements = match body.strip_prefix('@') {
                Some(path) => parse_list(&read_file(path)?, &['\n', '\r'])?,
                None => parse_list(body, &[','])?,
            };
            SequenceSpec::Explicit { elements }
        }
        other => return Err(Usage(format!("unknown sequence kind {other:?}")).into()),
    };
    spec.validate()?;
    Ok(spec)
}
