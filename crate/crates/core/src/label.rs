//! Vertex label grammar.
//!
//! A label is either a plain atom (`a`, `17`, `v#1`) or a bracketed list of
//! labels (`[1,2]`, `[[1],[1,2]]`). Subdivisions name their vertices with the
//! bracketed form, so the base face behind any subdivision vertex can be read
//! back from its label.

use crate::error::{Error, Result};

/// Parsed form of a label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelTerm<'a> {
    Atom(&'a str),
    List(Vec<&'a str>),
}

fn is_atom_char(c: char) -> bool {
    !matches!(c, '[' | ']' | ',') && !c.is_whitespace()
}

/// Checks the label grammar without allocating.
pub fn validate(label: &str) -> Result<()> {
    let bad = || Error::BadLabel(label.to_string());
    if label.is_empty() {
        return Err(bad());
    }
    if !label.starts_with('[') {
        return if label.chars().all(is_atom_char) {
            Ok(())
        } else {
            Err(bad())
        };
    }
    // Bracketed: balanced, no empty lists, no empty items.
    let mut depth = 0usize;
    let mut prev = ' ';
    for (i, c) in label.char_indices() {
        match c {
            '[' => {
                if i > 0 && !matches!(prev, '[' | ',') {
                    return Err(bad());
                }
                depth += 1;
            }
            ']' => {
                if matches!(prev, '[' | ',') || depth == 0 {
                    return Err(bad());
                }
                depth -= 1;
                if depth == 0 && i + 1 != label.len() {
                    return Err(bad());
                }
            }
            ',' => {
                if matches!(prev, '[' | ',') || depth == 0 {
                    return Err(bad());
                }
            }
            c if is_atom_char(c) => {
                if prev == ']' {
                    return Err(bad());
                }
            }
            _ => return Err(bad()),
        }
        prev = c;
    }
    if depth != 0 {
        return Err(bad());
    }
    Ok(())
}

/// Splits a label one level deep. `[a,[b,c]]` becomes `List(["a", "[b,c]"])`.
pub fn parse(label: &str) -> Result<LabelTerm<'_>> {
    validate(label)?;
    if !label.starts_with('[') {
        return Ok(LabelTerm::Atom(label));
    }
    let inner = &label[1..label.len() - 1];
    let mut items = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in inner.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                items.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    items.push(&inner[start..]);
    Ok(LabelTerm::List(items))
}

/// Joins already canonical labels into a bracketed list label.
pub fn join<'a, I: IntoIterator<Item = &'a str>>(items: I) -> String {
    let mut out = String::from("[");
    for (i, item) in items.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(item);
    }
    out.push(']');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atoms_and_lists() {
        assert_eq!(parse("a").unwrap(), LabelTerm::Atom("a"));
        assert_eq!(parse("[1,2]").unwrap(), LabelTerm::List(vec!["1", "2"]));
        assert_eq!(
            parse("[[1],[1,2]]").unwrap(),
            LabelTerm::List(vec!["[1]", "[1,2]"])
        );
        assert_eq!(join(["[1]", "[1,2]"]), "[[1],[1,2]]");
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "[", "]", "[]", "[1,]", "[,1]", "a b", "[1]x", "[1][2]", "a,b", "[[1]"] {
            assert!(validate(bad).is_err(), "{bad:?} accepted");
        }
    }
}
