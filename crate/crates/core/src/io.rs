//! Text formats for loops and cocycles.
//!
//! Loop file:
//!
//! ```text
//! loop 4
//! 0 1 2 3
//! 1 0 3 2
//! 2 3 0 1
//! 3 2 1 0
//! ```
//!
//! Cocycle file (entries are canonical indices into `Aut(A)`):
//!
//! ```text
//! cocycle l=2 group=3
//! P
//! 0 0
//! 0 0
//! Q
//! 0 0
//! 0 1
//! ```
//!
//! Lines starting with `#` and blank lines are ignored. Emitted files use
//! single spaces and a trailing newline.

use std::path::Path;
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::abelian::{AbelianGroup, AutomorphismGroup};
use crate::error::{Error, Result};
use crate::extension::{ExtensionLoop, LoopCocycle};
use crate::loops::FiniteLoop;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_row(line: usize, text: &str, len: usize, what: &str) -> Result<Vec<usize>> {
    let row: Vec<usize> = text
        .split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| parse_err(line, format!("bad {what} entry {tok:?}")))
        })
        .collect::<Result<_>>()?;
    if row.len() != len {
        return Err(parse_err(
            line,
            format!("{what} row has {} entries, expected {len}", row.len()),
        ));
    }
    Ok(row)
}

pub fn parse_loop(text: &str) -> Result<FiniteLoop> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty loop file"))?;
    let size = header
        .strip_prefix("loop")
        .filter(|rest| rest.starts_with(char::is_whitespace))
        .and_then(|rest| rest.trim().parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .ok_or_else(|| parse_err(hline, format!("expected `loop <l>`, got {header:?}")))?;

    let mut rows = Vec::with_capacity(size);
    let mut row_lines = Vec::with_capacity(size);
    let mut last = hline;
    for (line, text) in lines.by_ref() {
        if rows.len() == size {
            return Err(parse_err(line, "extra rows after the table"));
        }
        let row = parse_row(line, text, size, "loop")?;
        if let Some(&z) = row.iter().find(|&&z| z >= size) {
            return Err(parse_err(line, format!("entry {z} out of range")));
        }
        let mut seen = vec![false; size];
        for &z in &row {
            if std::mem::replace(&mut seen[z], true) {
                return Err(parse_err(
                    line,
                    format!("row {} repeats entry {z}", rows.len()),
                ));
            }
        }
        rows.push(row);
        row_lines.push(line);
        last = line;
    }
    if rows.len() != size {
        return Err(parse_err(
            last,
            format!("expected {size} rows, found {}", rows.len()),
        ));
    }
    for col in 0..size {
        let mut seen = vec![false; size];
        for (r, row) in rows.iter().enumerate() {
            if std::mem::replace(&mut seen[row[col]], true) {
                return Err(parse_err(
                    row_lines[r],
                    format!("column {col} repeats entry {} (row {r})", row[col]),
                ));
            }
        }
    }
    for (r, row) in rows.iter().enumerate() {
        if row[0] != r || (r == 0 && row.iter().enumerate().any(|(i, &z)| i != z)) {
            return Err(parse_err(
                row_lines[r],
                "row and column 0 must be the identity permutation",
            ));
        }
    }
    FiniteLoop::new(size, &rows).map_err(|e| parse_err(hline, e.to_string()))
}

pub fn emit_loop(lp: &FiniteLoop) -> String {
    let mut out = format!("loop {}\n", lp.size());
    for row in lp.rows() {
        out.push_str(&join(row));
        out.push('\n');
    }
    out
}

/// Extension table in loop format with a comment header describing the encoding.
pub fn emit_extension(ext: &ExtensionLoop) -> String {
    let c = ext.cocycle();
    format!(
        "# extension l={} group={} order={}\n# element (xi,a) is stored at index xi*{}+a\n{}",
        c.base().size(),
        c.group().spec(),
        ext.as_loop().size(),
        c.group().size(),
        emit_loop(ext.as_loop())
    )
}

/// Header fields of a cocycle file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleHeader {
    pub l: usize,
    pub group: Vec<usize>,
}

pub fn parse_cocycle_header(text: &str) -> Result<CocycleHeader> {
    let (line, header) = content_lines(text)
        .next()
        .ok_or_else(|| parse_err(1, "empty cocycle file"))?;
    let bad = || {
        parse_err(
            line,
            format!("expected `cocycle l=<l> group=<orders>`, got {header:?}"),
        )
    };
    let mut toks = header.split_whitespace();
    if toks.next() != Some("cocycle") {
        return Err(bad());
    }
    let l = toks
        .next()
        .and_then(|t| t.strip_prefix("l="))
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&l| l >= 1)
        .ok_or_else(bad)?;
    let group = toks
        .next()
        .and_then(|t| t.strip_prefix("group="))
        .ok_or_else(bad)
        .and_then(|v| {
            crate::abelian::parse_orders(v).map_err(|e| parse_err(line, e.to_string()))
        })?;
    if toks.next().is_some() {
        return Err(bad());
    }
    Ok(CocycleHeader { l, group })
}

/// Parses a cocycle over `base`, enumerating `Aut(A)` for the header's group.
pub fn parse_cocycle(text: &str, base: Arc<FiniteLoop>, aut_cap: usize) -> Result<LoopCocycle> {
    let header = parse_cocycle_header(text)?;
    let group = AbelianGroup::with_cap(&header.group, aut_cap)
        .map_err(|e| parse_err(first_line(text), e.to_string()))?;
    let aut = Arc::new(AutomorphismGroup::enumerate(&group)?);
    parse_cocycle_with(text, base, aut)
}

/// Parses a cocycle using an already enumerated `Aut(A)`.
pub fn parse_cocycle_with(
    text: &str,
    base: Arc<FiniteLoop>,
    aut: Arc<AutomorphismGroup>,
) -> Result<LoopCocycle> {
    let header = parse_cocycle_header(text)?;
    let hline = first_line(text);
    if header.l != base.size() {
        return Err(parse_err(
            hline,
            format!(
                "cocycle is for l={}, loop has order {}",
                header.l,
                base.size()
            ),
        ));
    }
    if header.group != aut.group().orders() {
        return Err(parse_err(
            hline,
            "group does not match the automorphism group",
        ));
    }
    let l = header.l;
    let mut lines = content_lines(text).skip(1);
    let mut read_table = |name: &str| -> Result<(Vec<usize>, Vec<usize>)> {
        let (line, tag) = lines
            .next()
            .ok_or_else(|| parse_err(hline, format!("missing `{name}` section")))?;
        if tag != name {
            return Err(parse_err(line, format!("expected `{name}`, got {tag:?}")));
        }
        let mut table = Vec::with_capacity(l * l);
        let mut row_lines = Vec::with_capacity(l);
        for _ in 0..l {
            let (line, text) = lines
                .next()
                .ok_or_else(|| parse_err(line, format!("{name} table is short")))?;
            let row = parse_row(line, text, l, name)?;
            if let Some(&f) = row.iter().find(|&&f| f >= aut.len()) {
                return Err(parse_err(
                    line,
                    format!(
                        "automorphism index {f} out of range (|Aut(A)| = {})",
                        aut.len()
                    ),
                ));
            }
            table.extend(row);
            row_lines.push(line);
        }
        Ok((table, row_lines))
    };
    let (p, p_lines) = read_table("P")?;
    let (q, q_lines) = read_table("Q")?;
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "unexpected content after Q table"));
    }
    let id = aut.identity();
    for x in 0..l {
        if p[x * l] != id {
            return Err(parse_err(
                p_lines[x],
                format!("P({x}, ε) must be Id (index {id})"),
            ));
        }
        if q[x] != id {
            return Err(parse_err(
                q_lines[0],
                format!("Q(ε, {x}) must be Id (index {id})"),
            ));
        }
    }
    LoopCocycle::new(base, aut, p, q)
}

fn first_line(text: &str) -> usize {
    content_lines(text).next().map_or(1, |(l, _)| l)
}

pub fn emit_cocycle(c: &LoopCocycle) -> String {
    let l = c.base().size();
    let mut out = format!("cocycle l={l} group={}\n", c.group().spec());
    for (name, table) in [("P", c.p_table()), ("Q", c.q_table())] {
        out.push_str(name);
        out.push('\n');
        for row in table.chunks(l) {
            out.push_str(&join(row));
            out.push('\n');
        }
    }
    out
}

fn join(row: &[usize]) -> String {
    row.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Hex SHA-256 of a byte string.
pub fn fingerprint(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
