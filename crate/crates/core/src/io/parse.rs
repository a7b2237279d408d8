//! The poset file format.
//!
//! ```text
//! poset <name>
//! elements: <id> <id> ...
//! relations:
//! <id> < <id>
//! ...
//! ```
//!
//! Identifiers match `[A-Za-z0-9_]+`. `#` comments run to end of line, blank
//! lines are ignored, and the final newline is optional.

use std::fmt;

use thiserror::Error;

use crate::error::Result;
use crate::poset::FinitePoset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown element `{name}`")]
    UnknownElement {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("line {line}, column {column}: duplicate element `{name}`")]
    DuplicateElement {
        line: usize,
        column: usize,
        name: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PosetDocument {
    pub name: String,
    pub elements: Vec<String>,
    /// `(lower, upper)` pairs in the order written.
    pub relations: Vec<(String, String)>,
}

impl PosetDocument {
    /// Sorted elements, sorted and deduplicated relations.
    pub fn canonical(&self) -> PosetDocument {
        let mut elements = self.elements.clone();
        elements.sort();
        let mut relations = self.relations.clone();
        relations.sort();
        relations.dedup();
        PosetDocument {
            name: self.name.clone(),
            elements,
            relations,
        }
    }

    /// Document for a poset, listing its covering pairs as relations.
    pub fn from_poset(name: &str, poset: &FinitePoset) -> PosetDocument {
        PosetDocument {
            name: name.to_owned(),
            elements: poset.elements().to_vec(),
            relations: poset
                .transitive_reduction()
                .named(poset)
                .into_iter()
                .map(|(a, b)| (a.to_owned(), b.to_owned()))
                .collect(),
        }
    }

    /// Builds the poset, keeping the elements in document order.
    pub fn to_poset(&self, cap: usize) -> Result<FinitePoset> {
        FinitePoset::from_relations_with_cap(&self.elements, &self.relations, cap)
    }
}

impl fmt::Display for PosetDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "poset {}", self.name)?;
        write!(f, "elements:")?;
        for e in &self.elements {
            write!(f, " {e}")?;
        }
        writeln!(f)?;
        writeln!(f, "relations:")?;
        for (a, b) in &self.relations {
            writeln!(f, "{a} < {b}")?;
        }
        Ok(())
    }
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Whitespace-separated tokens of `text` with 1-based columns, where `text`
/// starts at column `offset + 1`.
fn tokens(text: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_ascii_whitespace(), start) {
            (true, Some(s)) => {
                out.push((offset + s + 1, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((offset + s + 1, &text[s..]));
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    Elements,
    RelationsHeader,
    Relations,
}

pub fn parse_poset(text: &str) -> std::result::Result<PosetDocument, ParseError> {
    let syntax = |line: usize, column: usize, message: String| ParseError::Syntax {
        line,
        column,
        message,
    };

    let mut doc = PosetDocument::default();
    let mut section = Section::Header;

    for (i, raw) in text.split('\n').enumerate() {
        let line = i + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        if let Some(col) = raw.bytes().position(|b| !b.is_ascii()) {
            return Err(syntax(line, col + 1, "non-ASCII byte".into()));
        }
        let content = raw.split('#').next().unwrap_or("");
        let lead = content.len() - content.trim_start().len();
        let body = content.trim();
        if body.is_empty() {
            continue;
        }

        match section {
            Section::Header => {
                let toks = tokens(content, 0);
                match toks.as_slice() {
                    [(_, "poset"), (col, name)] => {
                        if !is_identifier(name) {
                            return Err(syntax(line, *col, format!("invalid poset name `{name}`")));
                        }
                        doc.name = (*name).to_owned();
                    }
                    _ => {
                        return Err(syntax(line, lead + 1, "expected `poset <name>`".into()));
                    }
                }
                section = Section::Elements;
            }
            Section::Elements => {
                let Some(rest) = body.strip_prefix("elements:") else {
                    return Err(syntax(line, lead + 1, "expected `elements:`".into()));
                };
                let offset = lead + "elements:".len();
                for (col, name) in tokens(rest, offset) {
                    if !is_identifier(name) {
                        return Err(syntax(line, col, format!("invalid identifier `{name}`")));
                    }
                    if doc.elements.iter().any(|e| e == name) {
                        return Err(ParseError::DuplicateElement {
                            line,
                            column: col,
                            name: name.to_owned(),
                        });
                    }
                    doc.elements.push(name.to_owned());
                }
                section = Section::RelationsHeader;
            }
            Section::RelationsHeader => {
                if body != "relations:" {
                    return Err(syntax(line, lead + 1, "expected `relations:`".into()));
                }
                section = Section::Relations;
            }
            Section::Relations => {
                let parts: Vec<&str> = content.split('<').collect();
                let [left, right] = parts.as_slice() else {
                    return Err(syntax(line, lead + 1, "expected `<id> < <id>`".into()));
                };
                let right_offset = left.len() + 1;
                let mut pair = Vec::with_capacity(2);
                for (side, offset) in [(*left, 0), (*right, right_offset)] {
                    let toks = tokens(side, offset);
                    let [(col, name)] = toks.as_slice() else {
                        let col = toks.first().map_or(offset + 1, |t| t.0);
                        return Err(syntax(line, col, "expected `<id> < <id>`".into()));
                    };
                    if !is_identifier(name) {
                        return Err(syntax(line, *col, format!("invalid identifier `{name}`")));
                    }
                    if !doc.elements.iter().any(|e| e == name) {
                        return Err(ParseError::UnknownElement {
                            line,
                            column: *col,
                            name: (*name).to_owned(),
                        });
                    }
                    pair.push((*name).to_owned());
                }
                let upper = pair.pop().expect("two sides");
                let lower = pair.pop().expect("two sides");
                doc.relations.push((lower, upper));
            }
        }
    }

    let missing = match section {
        Section::Header => Some("`poset <name>`"),
        Section::Elements => Some("`elements:`"),
        Section::RelationsHeader => Some("`relations:`"),
        Section::Relations => None,
    };
    if let Some(what) = missing {
        return Err(syntax(
            text.lines().count() + 1,
            1,
            format!("unexpected end of input, expected {what}"),
        ));
    }
    Ok(doc)
}
