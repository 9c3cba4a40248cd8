//! Line-oriented text documents for lattices and hypergraphs, canonical
//! emission, and DOT output for Hasse diagrams.
//!
//! Both formats start with `format 1`, use `#` comments, and whitespace
//! separated names. A lattice document declares `elements`, `cover`, and
//! `ortho` lines; a hypergraph document declares `atoms` and `block` lines.
//! Canonical emission lists declarations in index order, so emit-then-parse
//! is the identity.

use std::fmt;

use thiserror::Error;

use crate::hypergraph::{ContextHypergraph, HypergraphError};
use crate::lattice::FiniteOrtholattice;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Semantic,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ParseErrorKind::Syntax => "syntax",
            ParseErrorKind::Semantic => "semantic",
        };
        write!(
            f,
            "line {}, column {}: {} error: {}",
            self.line, self.column, kind, self.message
        )
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, kind: ParseErrorKind::Syntax, message: message.into() }
}

fn semantic(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, kind: ParseErrorKind::Semantic, message: message.into() }
}

/// `(line, column, token)` triples, comments stripped; 1-based positions.
fn tokenize(text: &str) -> Vec<Vec<(usize, usize, &str)>> {
    text.lines()
        .enumerate()
        .map(|(li, line)| {
            let line = match line.find('#') {
                Some(pos) => &line[..pos],
                None => line,
            };
            let mut tokens = Vec::new();
            let mut start = None;
            for (ci, ch) in line.char_indices().chain([(line.len(), ' ')]) {
                if ch.is_whitespace() {
                    if let Some(s) = start.take() {
                        tokens.push((li + 1, s + 1, &line[s..ci]));
                    }
                } else if start.is_none() {
                    start = Some(ci);
                }
            }
            tokens
        })
        .filter(|t| !t.is_empty())
        .collect()
}

/// Check the leading `format <version>` directive; returns remaining lines.
fn check_header<'a>(
    lines: &'a [Vec<(usize, usize, &'a str)>],
) -> Result<&'a [Vec<(usize, usize, &'a str)>], ParseError> {
    let Some(first) = lines.first() else {
        return Err(syntax(1, 1, "empty document; expected `format 1`"));
    };
    let (line, col, word) = first[0];
    if word != "format" {
        return Err(syntax(line, col, "expected `format <version>` as the first directive"));
    }
    let Some(&(vline, vcol, vtok)) = first.get(1) else {
        return Err(syntax(line, col, "`format` needs a version number"));
    };
    let version: u32 = vtok
        .parse()
        .map_err(|_| syntax(vline, vcol, format!("`{vtok}` is not a version number")))?;
    if version != FORMAT_VERSION {
        return Err(semantic(vline, vcol, format!("unsupported format version {version}")));
    }
    if first.len() > 2 {
        let (l, c, t) = first[2];
        return Err(syntax(l, c, format!("unexpected token `{t}` after version")));
    }
    Ok(&lines[1..])
}

pub enum DocumentKind {
    Lattice,
    Hypergraph,
}

/// Guess a document's kind from its first body directive.
pub fn document_kind(text: &str) -> Option<DocumentKind> {
    let lines = tokenize(text);
    for line in lines.iter().skip(1) {
        match line[0].2 {
            "elements" | "cover" | "ortho" => return Some(DocumentKind::Lattice),
            "atoms" | "block" => return Some(DocumentKind::Hypergraph),
            _ => return None,
        }
    }
    None
}

pub fn parse_lattice(text: &str) -> Result<FiniteOrtholattice, ParseError> {
    let lines = tokenize(text);
    let body = check_header(&lines)?;

    let mut labels: Vec<String> = Vec::new();
    let mut covers: Vec<(usize, usize)> = Vec::new();
    let mut ortho_pairs: Vec<(usize, usize)> = Vec::new();
    let mut ortho_positions: Vec<(usize, usize)> = Vec::new();

    let lookup = |labels: &[String], line: usize, col: usize, name: &str| {
        labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| semantic(line, col, format!("undeclared element `{name}`")))
    };

    for tokens in body {
        let (dline, dcol, directive) = tokens[0];
        match directive {
            "elements" => {
                if tokens.len() == 1 {
                    return Err(syntax(dline, dcol, "`elements` needs at least one name"));
                }
                for &(l, c, name) in &tokens[1..] {
                    if labels.iter().any(|x| x == name) {
                        return Err(semantic(l, c, format!("duplicate element `{name}`")));
                    }
                    labels.push(name.to_owned());
                }
            }
            "cover" | "ortho" => {
                if tokens.len() != 3 {
                    return Err(syntax(
                        dline,
                        dcol,
                        format!("`{directive}` needs exactly two element names"),
                    ));
                }
                let (l1, c1, n1) = tokens[1];
                let (l2, c2, n2) = tokens[2];
                let a = lookup(&labels, l1, c1, n1)?;
                let b = lookup(&labels, l2, c2, n2)?;
                if directive == "cover" {
                    covers.push((a, b));
                } else {
                    ortho_pairs.push((a, b));
                    ortho_positions.push((dline, dcol));
                }
            }
            other => {
                return Err(syntax(dline, dcol, format!("unknown directive `{other}`")));
            }
        }
    }

    let lattice = FiniteOrtholattice::from_covers(labels, &covers, &ortho_pairs)
        .map_err(|e| semantic(1, 1, e.to_string()))?;

    // A self-paired element other than the bounds can never satisfy
    // noncontradiction; reject it at the document level with a position.
    for (&(a, b), &(line, col)) in ortho_pairs.iter().zip(&ortho_positions) {
        if a == b && a != lattice.bottom() && a != lattice.top() {
            return Err(semantic(
                line,
                col,
                format!("`{}` cannot be its own orthocomplement", lattice.label(a)),
            ));
        }
    }
    Ok(lattice)
}

pub fn parse_hypergraph(text: &str) -> Result<ContextHypergraph, ParseError> {
    let lines = tokenize(text);
    let body = check_header(&lines)?;

    let mut labels: Vec<String> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_positions: Vec<(usize, usize)> = Vec::new();

    for tokens in body {
        let (dline, dcol, directive) = tokens[0];
        match directive {
            "atoms" => {
                if tokens.len() == 1 {
                    return Err(syntax(dline, dcol, "`atoms` needs at least one name"));
                }
                for &(l, c, name) in &tokens[1..] {
                    if labels.iter().any(|x| x == name) {
                        return Err(semantic(l, c, format!("duplicate atom `{name}`")));
                    }
                    labels.push(name.to_owned());
                }
            }
            "block" => {
                let mut block = Vec::new();
                for &(l, c, name) in &tokens[1..] {
                    let idx = labels
                        .iter()
                        .position(|x| x == name)
                        .ok_or_else(|| semantic(l, c, format!("undeclared atom `{name}`")))?;
                    if block.contains(&idx) {
                        return Err(semantic(l, c, format!("atom `{name}` repeated in block")));
                    }
                    block.push(idx);
                }
                if block.len() < 2 {
                    return Err(semantic(dline, dcol, "a block needs at least two atoms"));
                }
                blocks.push(block);
                block_positions.push((dline, dcol));
            }
            other => {
                return Err(syntax(dline, dcol, format!("unknown directive `{other}`")));
            }
        }
    }

    ContextHypergraph::new(labels, blocks).map_err(|e| match e {
        HypergraphError::SmallBlock(i) => {
            let (l, c) = block_positions[i];
            semantic(l, c, e.to_string())
        }
        other => semantic(1, 1, other.to_string()),
    })
}

/// Canonical lattice document: declarations in index order.
pub fn emit_lattice(l: &FiniteOrtholattice) -> String {
    let mut out = String::from("format 1\n");
    out.push_str("elements");
    for label in l.labels() {
        debug_assert!(!label.contains(char::is_whitespace) && !label.contains('#'));
        out.push(' ');
        out.push_str(label);
    }
    out.push('\n');
    for (lo, hi) in l.covers() {
        out.push_str(&format!("cover {} {}\n", l.label(lo), l.label(hi)));
    }
    for x in l.elements() {
        if x <= l.ortho(x) {
            out.push_str(&format!("ortho {} {}\n", l.label(x), l.label(l.ortho(x))));
        }
    }
    out
}

/// Canonical hypergraph document.
pub fn emit_hypergraph(h: &ContextHypergraph) -> String {
    let mut out = String::from("format 1\n");
    out.push_str("atoms");
    for label in h.atom_labels() {
        out.push(' ');
        out.push_str(label);
    }
    out.push('\n');
    for block in h.blocks() {
        out.push_str("block");
        for &a in block {
            out.push(' ');
            out.push_str(h.atom_label(a));
        }
        out.push('\n');
    }
    out
}

/// Hasse diagram in DOT: one edge per cover pair, drawn bottom-up.
pub fn hasse_dot(l: &FiniteOrtholattice) -> String {
    let quote = |s: &str| format!("\"{}\"", s.replace('"', "\\\""));
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    for (lo, hi) in l.covers() {
        out.push_str(&format!("  {} -> {};\n", quote(l.label(lo)), quote(l.label(hi))));
    }
    out.push_str("}\n");
    out
}
