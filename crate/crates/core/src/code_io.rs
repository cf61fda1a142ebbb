//! Text format for codes and error lists.
//!
//! ```text
//! [META]
//! name = six_qubit_example
//! n = 6
//! e = 2
//!
//! [S]
//! S1  Z I I I I I | Z I
//! S2  X I I I I I | X I
//! ```
//!
//! Sections are `META`, `H`, `S`, `G`, `L` and `T`. Every operator line is a
//! label followed by one cell per qubit from `I X Y Z XZ`, optionally preceded
//! by a phase token (`+ - i -i`). A `|` cell marks the start of the ebit
//! columns. `#` starts a comment.

use crate::code::{CodeBuilder, CodeError, EaoaqecCode};
use crate::pauli::PauliOperator;
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    File { path: String, message: String },
    #[error(transparent)]
    Code(#[from] CodeError),
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> IoError {
    IoError::Parse { line, column, message: message.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Meta,
    H,
    S,
    G,
    L,
    T,
    E,
}

impl Section {
    fn parse(tag: &str) -> Option<Section> {
        Some(match tag.trim().to_ascii_uppercase().as_str() {
            "META" => Section::Meta,
            "H" => Section::H,
            "S" => Section::S,
            "G" => Section::G,
            "L" => Section::L,
            "T" => Section::T,
            "E" | "ERRORS" => Section::E,
            _ => return None,
        })
    }
}

/// One parsed operator line.
struct OpLine {
    line: usize,
    label: String,
    op: PauliOperator,
    /// Cell index of the `|` marker, if any.
    bar: Option<usize>,
    /// Byte column (1-based) of each cell, for diagnostics.
    columns: Vec<usize>,
}

fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(b)) => {
                out.push((b, &s[b..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((b, &s[b..]));
    }
    out
}

fn parse_op_line(lineno: usize, text: &str) -> Result<OpLine, IoError> {
    let toks = tokens(text);
    let (_, label) = toks[0];
    let mut rest = &toks[1..];
    let mut prefix = 0u8;
    if let Some(&(_, t)) = rest.first() {
        let pre = match t {
            "+" => Some(0),
            "+i" | "i" => Some(1),
            "-" => Some(2),
            "-i" => Some(3),
            _ => None,
        };
        if let Some(p) = pre {
            prefix = p;
            rest = &rest[1..];
        }
    }
    if rest.is_empty() {
        return Err(perr(lineno, toks[0].0 + 1, format!("operator {label} has no cells")));
    }
    let mut cells = Vec::new();
    let mut columns = Vec::new();
    let mut bar = None;
    for &(col, t) in rest {
        if t == "|" {
            if bar.is_some() {
                return Err(perr(lineno, col + 1, "second '|' marker"));
            }
            bar = Some(cells.len());
            continue;
        }
        if !matches!(t, "I" | "X" | "Y" | "Z" | "XZ") {
            return Err(perr(lineno, col + 1, format!("invalid cell {t:?} (expected I, X, Y, Z or XZ)")));
        }
        cells.push(t);
        columns.push(col + 1);
    }
    let op = PauliOperator::from_cells(&cells, prefix, None)
        .map_err(|e| perr(lineno, rest[0].0 + 1, e.to_string()))?;
    Ok(OpLine { line: lineno, label: label.to_string(), op, bar, columns })
}

#[derive(Default)]
struct Parsed {
    meta_n: Option<(usize, usize)>,
    meta_e: Option<(usize, usize)>,
    name: Option<String>,
    sections: Vec<(Section, Vec<OpLine>)>,
}

fn parse_sections(text: &str) -> Result<Parsed, IoError> {
    let mut out = Parsed::default();
    let mut current: Option<Section> = None;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(tag) = trimmed.strip_prefix('[') {
            let col = line.find('[').unwrap_or(0) + 1;
            let tag = tag.strip_suffix(']').ok_or_else(|| perr(lineno, col, "unterminated section header"))?;
            let sec = Section::parse(tag).ok_or_else(|| perr(lineno, col + 1, format!("unknown section [{tag}]")))?;
            if out.sections.iter().any(|(s, _)| *s == sec) {
                return Err(perr(lineno, col, format!("duplicate section [{tag}]")));
            }
            if sec != Section::Meta {
                out.sections.push((sec, Vec::new()));
            }
            current = Some(sec);
            continue;
        }
        match current {
            None => return Err(perr(lineno, 1, "content before the first section header")),
            Some(Section::Meta) => {
                let (key, value) =
                    line.split_once('=').ok_or_else(|| perr(lineno, 1, "expected key = value in [META]"))?;
                let vcol = key.len() + 2;
                let value = value.trim();
                let num = || value.parse::<usize>().map_err(|_| perr(lineno, vcol, format!("not a number: {value:?}")));
                match key.trim() {
                    "name" => out.name = Some(value.to_string()),
                    "n" => out.meta_n = Some((num()?, lineno)),
                    "e" => out.meta_e = Some((num()?, lineno)),
                    other => return Err(perr(lineno, 1, format!("unknown META key {other:?}"))),
                }
            }
            Some(_) => {
                let op = parse_op_line(lineno, line)?;
                out.sections.last_mut().expect("section").1.push(op);
            }
        }
    }
    Ok(out)
}

fn check_widths(lines: &[OpLine], allowed: &[usize], n: usize, what: &str) -> Result<(), IoError> {
    for l in lines {
        let w = l.op.num_qubits();
        if !allowed.contains(&w) {
            let col = l.columns.last().copied().unwrap_or(1);
            return Err(perr(l.line, col, format!("{what} {} has {w} cells, expected {:?}", l.label, allowed)));
        }
        if let Some(b) = l.bar {
            if b != n {
                let col = l.columns.get(b).copied().unwrap_or(1);
                return Err(perr(l.line, col, format!("'|' after {b} cells, expected after n = {n}")));
            }
        }
    }
    Ok(())
}

fn check_identity_on_ebits(lines: &[OpLine], n: usize, what: &str) -> Result<(), IoError> {
    for l in lines {
        if let Some(q) = (n..l.op.num_qubits()).find(|&q| l.op.get(q) != crate::pauli::Pauli1::I) {
            return Err(perr(l.line, l.columns[q], format!("{what} {} must act as I on ebit columns", l.label)));
        }
    }
    Ok(())
}

/// Parses a code file.
pub fn parse_code(text: &str) -> Result<EaoaqecCode, IoError> {
    let parsed = parse_sections(text)?;
    let get = |s: Section| parsed.sections.iter().find(|(t, _)| *t == s).map(|(_, l)| l.as_slice());
    if let Some((sec, _)) = parsed.sections.iter().find(|(s, _)| *s == Section::E) {
        let _ = sec;
        return Err(perr(1, 1, "[E] is only valid in error files"));
    }
    let h = get(Section::H);
    let s = get(Section::S);
    let first_line = parsed.sections.first().and_then(|(_, l)| l.first()).map(|l| l.line).unwrap_or(1);
    let n = match (parsed.meta_n, h.and_then(|l| l.first())) {
        (Some((n, _)), _) => n,
        (None, Some(l)) => l.op.num_qubits(),
        (None, None) => return Err(perr(first_line, 1, "cannot determine n: give [META] n or an [H] section")),
    };
    let e = match (parsed.meta_e, s.and_then(|l| l.first())) {
        (Some((e, _)), _) => Some(e),
        (None, Some(l)) => Some(l.op.num_qubits().saturating_sub(n)),
        (None, None) => None,
    };
    if let Some(h) = h {
        check_widths(h, &[n], n, "H generator")?;
    }
    if let (Some(s), Some(e)) = (s, e) {
        check_widths(s, &[n + e], n, "S generator")?;
    }
    let mut widths = vec![n];
    if let Some(e) = e.filter(|&e| e > 0) {
        widths.push(n + e);
    }
    for (sec, what) in [(Section::G, "gauge operator"), (Section::L, "logical operator"), (Section::T, "transversal operator")] {
        if let Some(lines) = get(sec) {
            check_widths(lines, &widths, n, what)?;
            check_identity_on_ebits(lines, n, what)?;
        }
    }
    let ops = |l: Option<&[OpLine]>| l.map(|v| v.iter().map(|o| o.op.truncate(n)).collect::<Vec<_>>());
    let mut b = CodeBuilder::new().num_qubits(n);
    if let Some(name) = &parsed.name {
        b = b.name(name.clone());
    }
    if let Some(h) = ops(h) {
        b = b.h(h);
    }
    if let Some(s) = s {
        b = b.s(s.iter().map(|o| o.op.clone()).collect());
    }
    b = b.gauge(ops(get(Section::G)).unwrap_or_default());
    if let Some(l) = ops(get(Section::L)) {
        b = b.logical(l);
    }
    b = b.transversal(ops(get(Section::T)).unwrap_or_default());
    let code = b.build()?;
    if let Some((e_meta, line)) = parsed.meta_e {
        if code.e() != e_meta {
            return Err(perr(line, 1, format!("META e = {e_meta} but the extension uses {} ebits", code.e())));
        }
    }
    Ok(code)
}

/// Parses an error-list file: operator lines, optionally under `[E]`.
pub fn parse_errors(text: &str) -> Result<Vec<PauliOperator>, IoError> {
    let mut ops: Vec<OpLine> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('[') {
            if Section::parse(trimmed.trim_start_matches('[').trim_end_matches(']')) != Some(Section::E) {
                return Err(perr(i + 1, 1, "error files only allow an [E] section"));
            }
            continue;
        }
        ops.push(parse_op_line(i + 1, line)?);
    }
    let first = ops.first().ok_or_else(|| perr(1, 1, "no error operators"))?;
    let w = first.op.num_qubits();
    for l in &ops {
        if l.op.num_qubits() != w {
            return Err(perr(l.line, 1, format!("operator {} has {} cells, expected {w}", l.label, l.op.num_qubits())));
        }
    }
    Ok(ops.into_iter().map(|l| l.op).collect())
}

fn write_op(out: &mut String, label: &str, op: &PauliOperator, n: usize) {
    let (prefix, cells) = op.to_cells();
    let _ = write!(out, "{label}");
    if let Some(p) = prefix {
        let _ = write!(out, " {p}");
    }
    for (q, c) in cells.iter().enumerate() {
        if q == n && cells.len() > n {
            out.push_str(" |");
        }
        let _ = write!(out, " {c}");
    }
    out.push('\n');
}

/// Canonical text of a code. `parse_code(format_code(c)) == c`.
pub fn format_code(code: &EaoaqecCode) -> String {
    let n = code.n();
    let mut out = String::from("[META]\n");
    if let Some(name) = code.name() {
        let _ = writeln!(out, "name = {name}");
    }
    let _ = writeln!(out, "n = {n}\ne = {}", code.e());
    out.push_str("\n[H]\n");
    for (i, h) in code.h_group().generators().iter().enumerate() {
        write_op(&mut out, &format!("h{}", i + 1), h, n);
    }
    out.push_str("\n[S]\n");
    for (i, s) in code.s_group().generators().iter().enumerate() {
        write_op(&mut out, &format!("S{}", i + 1), s, n);
    }
    if !code.gauge_pairs().is_empty() {
        out.push_str("\n[G]\n");
        for (i, (x, z)) in code.gauge_pairs().iter().enumerate() {
            write_op(&mut out, &format!("G_X{}", i + 1), x, n);
            write_op(&mut out, &format!("G_Z{}", i + 1), z, n);
        }
    }
    out.push_str("\n[L]\n");
    for (i, (x, z)) in code.logical_pairs().iter().enumerate() {
        write_op(&mut out, &format!("L_X{}", i + 1), x, n);
        write_op(&mut out, &format!("L_Z{}", i + 1), z, n);
    }
    out.push_str("\n[T]\n");
    for (i, t) in code.transversal().iter().enumerate() {
        write_op(&mut out, &format!("T{i}"), t, n);
    }
    out
}

/// Operators as an `[E]` section, one per line.
pub fn format_errors(ops: &[PauliOperator]) -> String {
    let mut out = String::from("[E]\n");
    for (i, o) in ops.iter().enumerate() {
        write_op(&mut out, &format!("E{}", i + 1), o, usize::MAX);
    }
    out
}

fn read_text(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path)
        .map_err(|e| IoError::File { path: path.display().to_string(), message: e.to_string() })
}

pub fn read_code(path: impl AsRef<Path>) -> Result<EaoaqecCode, IoError> {
    parse_code(&read_text(path.as_ref())?)
}

pub fn write_code(code: &EaoaqecCode, path: impl AsRef<Path>) -> Result<(), IoError> {
    let path = path.as_ref();
    std::fs::write(path, format_code(code))
        .map_err(|e| IoError::File { path: path.display().to_string(), message: e.to_string() })
}

pub fn read_errors(path: impl AsRef<Path>) -> Result<Vec<PauliOperator>, IoError> {
    parse_errors(&read_text(path.as_ref())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn round_trip_catalog() {
        for code in catalog::all() {
            let text = format_code(&code);
            let back = parse_code(&text).unwrap();
            assert_eq!(back, code, "{text}");
            assert_eq!(format_code(&back), text);
        }
    }

    #[test]
    fn diagnostics_carry_positions() {
        let err = parse_code("[H]\nh1 Z I Q\n").unwrap_err();
        assert_eq!(err, IoError::Parse { line: 2, column: 8, message: "invalid cell \"Q\" (expected I, X, Y, Z or XZ)".into() });
        let err = parse_code("[META]\nn = 2\n[S]\nS1 Z | Z Z\n").unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 4, .. }));
        assert!(matches!(parse_code(""), Err(IoError::Parse { .. })));
    }

    #[test]
    fn gauge_on_ebits_rejected() {
        let text = "[META]\nn = 1\n[S]\nS1 Z | Z\nS2 X | X\n[G]\ng1 I | X\ng2 I | Z\n";
        let err = parse_code(text).unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 7, column: 8, .. }), "{err:?}");
    }

    #[test]
    fn error_file() {
        let ops = parse_errors("# pairs\n[E]\nE1 Z I\nE2 - Y Y\n").unwrap();
        assert_eq!(ops.len(), 2);
        assert_eq!(parse_errors(&format_errors(&ops)).unwrap(), ops);
    }
}
