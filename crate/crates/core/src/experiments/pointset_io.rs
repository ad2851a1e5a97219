//! Text format:
//!
//! ```text
//! ffgeom-pointset v1 q=<q> d=<d>
//! # comment
//! x_1 x_2 ... x_d
//! ```
//!
//! Residues are decimal and must lie in `[0, q)`. Duplicates are rejected.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::config_count::PointSet;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::point::GridShape;

const MAGIC: &str = "ffgeom-pointset";
const VERSION: &str = "v1";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn header_value(token: Option<&str>, key: &str) -> Result<u64> {
    let token = token.ok_or_else(|| parse_err(1, format!("missing `{key}=`")))?;
    token
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| parse_err(1, format!("expected `{key}=<n>`, found `{token}`")))?
        .parse()
        .map_err(|e| parse_err(1, format!("bad {key}: {e}")))
}

/// Parses the text format; `expected` pins the modulus.
pub fn parse_pointset(text: &str, expected: Option<PrimeField>) -> Result<PointSet> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some(MAGIC) || tokens.next() != Some(VERSION) {
        return Err(parse_err(1, format!("expected `{MAGIC} {VERSION} q=<q> d=<d>`")));
    }
    let q = header_value(tokens.next(), "q")?;
    let dim = header_value(tokens.next(), "d")? as usize;
    if let Some(extra) = tokens.next() {
        return Err(parse_err(1, format!("unexpected `{extra}` in header")));
    }
    let field = PrimeField::new(q)?;
    if let Some(f) = expected {
        if f != field {
            return Err(Error::FieldMismatch {
                left: f.modulus(),
                right: q,
            });
        }
    }
    if dim == 0 {
        return Err(parse_err(1, "dimension must be positive"));
    }
    let shape = GridShape::new(field, dim)?;

    let mut seen = HashSet::new();
    let mut indices = Vec::new();
    let mut coords = Vec::with_capacity(dim);
    for (no, raw) in lines {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        coords.clear();
        for tok in body.split_whitespace() {
            let v: u64 = tok
                .parse()
                .map_err(|e| parse_err(no, format!("bad residue `{tok}`: {e}")))?;
            if v >= q {
                return Err(parse_err(no, format!("coordinate {v} is not below q = {q}")));
            }
            coords.push(v);
        }
        if coords.len() != dim {
            return Err(parse_err(
                no,
                format!("expected {dim} coordinates, found {}", coords.len()),
            ));
        }
        let index = shape.encode(&coords);
        if !seen.insert(index) {
            return Err(parse_err(no, "duplicate point"));
        }
        indices.push(index);
    }
    if indices.is_empty() {
        return Err(Error::EmptySet);
    }
    PointSet::from_indices(field, dim, indices)
}

pub fn load_pointset(path: &Path, expected: Option<PrimeField>) -> Result<PointSet> {
    parse_pointset(&fs::read_to_string(path)?, expected)
}

/// Serializes in grid order.
pub fn write_pointset(set: &PointSet) -> String {
    let mut out = format!("{MAGIC} {VERSION} q={} d={}\n", set.q(), set.dim());
    let shape = set.shape();
    for &i in set.members() {
        let coords = shape.decode(i);
        let line: Vec<String> = coords.iter().map(u64::to_string).collect();
        writeln!(out, "{}", line.join(" ")).expect("writing to a string");
    }
    out
}

pub fn save_pointset(set: &PointSet, path: &Path) -> Result<()> {
    fs::write(path, write_pointset(set))?;
    Ok(())
}
