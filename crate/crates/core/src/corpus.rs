//! Fixture files of worked problems with their expected verdicts.
//!
//! One record per block of `key = value` lines; blocks are separated by blank
//! lines and `#` starts a comment line. Keys:
//!
//! ```text
//! name, ell, base (q | cyclo), f, h, abstract_y (true | false), strict (true | false),
//! expect_theorem, expect_r, expect_bound, expect_conclusion
//! ```
//!
//! `h` is required unless `abstract_y` is present. `expect_r` and
//! `expect_bound` take `none` for verdicts without an obstruction prime.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::base::Base;
use crate::error::{Error, Result};
use crate::par::{self, Mode};
use crate::parse::parse_polynomial;
use crate::verdict::{analyze, Certificate, Conclusion, Counterpart, ProblemSpec, Theorem};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expected {
    pub theorem: Theorem,
    pub r: Option<u64>,
    pub bound: Option<u64>,
    pub conclusion: Conclusion,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    /// 1-based line where the record starts.
    pub line: usize,
    pub ell: u64,
    pub base: Base,
    pub f: String,
    pub h: Option<String>,
    /// Caller assertion for abstract mode; `None` in pair mode.
    pub abstract_y: Option<bool>,
    pub strict: bool,
    pub expected: Expected,
}

const KEYS: [&str; 11] = [
    "name",
    "ell",
    "base",
    "f",
    "h",
    "abstract_y",
    "strict",
    "expect_theorem",
    "expect_r",
    "expect_bound",
    "expect_conclusion",
];

fn malformed(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { position: line, message: message.into() }
}

fn parse_bool(line: usize, v: &str) -> Result<bool> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(malformed(line, format!("expected true or false, got {v:?}"))),
    }
}

fn parse_optional_u64(line: usize, v: &str) -> Result<Option<u64>> {
    if v == "none" {
        return Ok(None);
    }
    v.parse().map(Some).map_err(|_| malformed(line, format!("expected an integer or none, got {v:?}")))
}

fn parse_enum<T: serde::de::DeserializeOwned>(line: usize, v: &str) -> Result<T> {
    serde_json::from_value(Value::String(v.to_string()))
        .map_err(|_| malformed(line, format!("unknown value {v:?}")))
}

fn parse_record(start: usize, fields: &BTreeMap<String, (usize, String)>) -> Result<CorpusEntry> {
    let get = |k: &str| fields.get(k).map(|(l, v)| (*l, v.as_str()));
    let need = |k: &str| get(k).ok_or_else(|| malformed(start, format!("record is missing {k}")));

    let name = need("name")?.1.to_string();
    let (l, v) = need("ell")?;
    let ell: u64 = v.parse().map_err(|_| malformed(l, format!("ell must be an integer, got {v:?}")))?;
    let base = match get("base") {
        None | Some((_, "q")) => Base::Rationals,
        Some((_, "cyclo")) => Base::Cyclotomic(ell),
        Some((l, v)) => return Err(malformed(l, format!("base must be q or cyclo, got {v:?}"))),
    };
    let parse_poly = |k: &str| -> Result<Option<String>> {
        match get(k) {
            None => Ok(None),
            Some((l, text)) => match parse_polynomial(text, base) {
                Ok(_) => Ok(Some(text.to_string())),
                Err(Error::Parse { position, message }) => {
                    Err(malformed(l, format!("{k}: column {position}: {message}")))
                }
                Err(e) => Err(malformed(l, format!("{k}: {e}"))),
            },
        }
    };
    let f = parse_poly("f")?.ok_or_else(|| malformed(start, "record is missing f"))?;
    let h = parse_poly("h")?;
    let abstract_y = get("abstract_y").map(|(l, v)| parse_bool(l, v)).transpose()?;
    if h.is_none() && abstract_y.is_none() {
        return Err(malformed(start, "record needs h or abstract_y"));
    }
    if h.is_some() && abstract_y.is_some() {
        return Err(malformed(start, "record has both h and abstract_y"));
    }
    let strict = get("strict").map(|(l, v)| parse_bool(l, v)).transpose()?.unwrap_or(false);
    let (l, v) = need("expect_theorem")?;
    let theorem = parse_enum(l, v)?;
    let (l, v) = need("expect_conclusion")?;
    let conclusion = parse_enum(l, v)?;
    let r = get("expect_r").map(|(l, v)| parse_optional_u64(l, v)).transpose()?.flatten();
    let bound = get("expect_bound").map(|(l, v)| parse_optional_u64(l, v)).transpose()?.flatten();
    Ok(CorpusEntry {
        name,
        line: start,
        ell,
        base,
        f,
        h,
        abstract_y,
        strict,
        expected: Expected { theorem, r, bound, conclusion },
    })
}

/// Parses a corpus file. Errors carry the offending line number as position.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut entries = Vec::new();
    let mut fields: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut start = 0;
    for (i, raw) in text.lines().chain(std::iter::once("")).enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.starts_with('#') {
            continue;
        }
        if trimmed.is_empty() {
            if !fields.is_empty() {
                entries.push(parse_record(start, &fields)?);
                fields.clear();
            }
            continue;
        }
        let (k, v) = trimmed
            .split_once('=')
            .ok_or_else(|| malformed(line, format!("expected key = value, got {trimmed:?}")))?;
        let (k, v) = (k.trim(), v.trim());
        if !KEYS.contains(&k) {
            return Err(malformed(line, format!("unknown key {k:?}")));
        }
        if fields.is_empty() {
            start = line;
        }
        if fields.insert(k.to_string(), (line, v.to_string())).is_some() {
            return Err(malformed(line, format!("duplicate key {k:?}")));
        }
    }
    Ok(entries)
}

impl CorpusEntry {
    pub fn problem(&self) -> Result<ProblemSpec> {
        let f = parse_polynomial(&self.f, self.base)?;
        let counterpart = match (&self.h, self.abstract_y) {
            (Some(h), _) => Counterpart::Polynomial(parse_polynomial(h, self.base)?),
            (None, Some(flag)) => Counterpart::AbstractVariety { order_prime_to_n: flag },
            (None, None) => return Err(Error::input("entry has neither h nor abstract_y")),
        };
        Ok(ProblemSpec { ell: self.ell, base: self.base, f, counterpart })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryResult {
    pub name: String,
    pub matched: bool,
    /// One line per mismatching field, as `field: expected X, got Y`.
    pub diffs: Vec<String>,
    pub certificate: Option<Certificate>,
    pub error: Option<String>,
}

fn show<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).unwrap_or_default()
}

pub fn run_entry(entry: &CorpusEntry) -> EntryResult {
    let outcome = entry.problem().and_then(|p| analyze(&p, entry.strict));
    match outcome {
        Err(e) => EntryResult {
            name: entry.name.clone(),
            matched: false,
            diffs: vec![format!("analysis failed: {e}")],
            certificate: None,
            error: Some(e.to_string()),
        },
        Ok(cert) => {
            let v = &cert.verdict;
            let x = &entry.expected;
            let mut diffs = Vec::new();
            let mut compare = |field: &str, want: String, got: String| {
                if want != got {
                    diffs.push(format!("{field}: expected {want}, got {got}"));
                }
            };
            compare("theorem", show(&x.theorem), show(&v.theorem));
            compare("r", show(&x.r), show(&v.r));
            compare("bound", show(&x.bound), show(&v.dim_bound));
            compare("conclusion", show(&x.conclusion), show(&v.conclusion));
            EntryResult {
                name: entry.name.clone(),
                matched: diffs.is_empty(),
                diffs,
                certificate: Some(cert),
                error: None,
            }
        }
    }
}

/// Runs all entries; results come back in input order.
pub fn run_corpus(entries: &[CorpusEntry], mode: Mode) -> Vec<EntryResult> {
    par::map(mode, entries, run_entry)
}
