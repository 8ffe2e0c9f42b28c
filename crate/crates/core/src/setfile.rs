//! Set file formats.
//!
//! * `list`: one decimal integer per line; blank lines and `#` comments are
//!   ignored. The window is `[min, max]` unless overridden.
//! * `bits`: a header line `lo=<integer>` followed by one line of `0`/`1`
//!   characters; character `i` encodes membership of `lo + i`.

use crate::error::{Error, Result};
use crate::intset::{IntSet, Window};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    List,
    Bits,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "list" => Ok(Format::List),
            "bits" => Ok(Format::Bits),
            _ => Err(Error::Parse(format!("unknown set format {s:?} (list|bits)"))),
        }
    }

    /// `bits` when the first meaningful line is a `lo=` header.
    pub fn detect(text: &str) -> Format {
        match text.lines().map(str::trim).find(|l| !l.is_empty()) {
            Some(l) if l.starts_with("lo=") => Format::Bits,
            _ => Format::List,
        }
    }
}

pub fn parse_list(text: &str, window: Option<Window>) -> Result<IntSet> {
    let mut members = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let x: i64 = line
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: not an integer: {line:?}", no + 1)))?;
        members.push(x);
    }
    match window {
        Some(w) => IntSet::from_members(members, w),
        None => IntSet::from_members_tight(&members),
    }
}

pub fn parse_bits(text: &str) -> Result<IntSet> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty bits file".into()))?;
    let lo: i64 = header
        .strip_prefix("lo=")
        .ok_or_else(|| Error::Parse(format!("expected `lo=<integer>` header, got {header:?}")))?
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad lo in header {header:?}")))?;
    let body = lines
        .next()
        .ok_or_else(|| Error::Parse("bits file has no body line".into()))?;
    if lines.next().is_some() {
        return Err(Error::Parse("bits file must have exactly one body line".into()));
    }
    let mut members = Vec::new();
    for (i, c) in body.bytes().enumerate() {
        match c {
            b'1' => members.push(lo + i as i64),
            b'0' => {}
            _ => return Err(Error::Parse(format!("bad character {:?} at position {i}", c as char))),
        }
    }
    IntSet::from_members(members, Window::with_len(lo, body.len() as u64)?)
}

pub fn parse(text: &str, window: Option<Window>) -> Result<IntSet> {
    match Format::detect(text) {
        Format::Bits => {
            let s = parse_bits(text)?;
            match window {
                Some(w) if w != s.window() => Err(Error::input(
                    "a window override only applies to list files",
                )),
                _ => Ok(s),
            }
        }
        Format::List => parse_list(text, window),
    }
}

pub fn read(path: &Path, window: Option<Window>) -> Result<IntSet> {
    parse(&std::fs::read_to_string(path)?, window)
}

pub fn write_list(set: &IntSet) -> String {
    let mut out = String::with_capacity(set.len() * 6);
    for x in set.iter() {
        let _ = writeln!(out, "{x}");
    }
    out
}

pub fn write_bits(set: &IntSet) -> String {
    let w = set.window();
    let mut out = format!("lo={}\n", w.lo());
    out.extend(w.iter().map(|x| if set.contains(x) { '1' } else { '0' }));
    out.push('\n');
    out
}

pub fn render(set: &IntSet, format: Format) -> String {
    match format {
        Format::List => write_list(set),
        Format::Bits => write_bits(set),
    }
}
