//! Set-literal syntax: `{1,2,3}` for a set, `;` between sets in a column
//! list, `,` or `;` between members of a row label. Whitespace is ignored.

use cfcode_core::{KSubset, SubsetError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("expected `{{` at position {0}")]
    ExpectedOpen(usize),
    #[error("unterminated set starting at position {0}")]
    Unterminated(usize),
    #[error("invalid element {0:?}")]
    BadElement(String),
    #[error("unexpected {0:?} at position {1}")]
    Unexpected(char, usize),
    #[error("empty list")]
    Empty,
    #[error(transparent)]
    Subset(#[from] SubsetError),
}

/// Parses a whitespace-tolerant sequence of `{…}` groups separated by
/// characters in `separators`.
fn parse_groups(text: &str, separators: &[char]) -> Result<Vec<Vec<u64>>, ParseError> {
    let chars: Vec<(usize, char)> = text
        .char_indices()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut groups = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        if c != '{' {
            return Err(ParseError::ExpectedOpen(at));
        }
        let close = chars[i..]
            .iter()
            .position(|&(_, c)| c == '}')
            .ok_or(ParseError::Unterminated(at))?
            + i;
        let body: String = chars[i + 1..close].iter().map(|&(_, c)| c).collect();
        let elements = if body.is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|e| e.parse::<u64>().map_err(|_| ParseError::BadElement(e.to_owned())))
                .collect::<Result<_, _>>()?
        };
        groups.push(elements);
        i = close + 1;
        if let Some(&(at, c)) = chars.get(i) {
            if !separators.contains(&c) {
                return Err(ParseError::Unexpected(c, at));
            }
            i += 1;
            if i == chars.len() {
                return Err(ParseError::Unexpected(c, at));
            }
        }
    }
    if groups.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(groups)
}

/// `{1,2,3}` → a subset of `[ground]`. Element order is free.
pub fn parse_set(text: &str, ground: u64) -> Result<KSubset, ParseError> {
    let mut groups = parse_groups(text, &[])?;
    if groups.len() != 1 {
        return Err(ParseError::Unexpected('{', 0));
    }
    Ok(KSubset::from_unsorted(groups.remove(0), ground)?)
}

/// `{1,2,3};{1,2,4}` → column sets.
pub fn parse_set_list(text: &str, ground: u64) -> Result<Vec<KSubset>, ParseError> {
    parse_groups(text, &[';'])?
        .into_iter()
        .map(|g| KSubset::from_unsorted(g, ground).map_err(ParseError::from))
        .collect()
}

/// `{1,2},{4,5}` or `{{1,2},{4,5}}` → label members, in input order.
pub fn parse_row_label(text: &str, ground: u64) -> Result<Vec<KSubset>, ParseError> {
    let trimmed = text.trim();
    let inner = match trimmed.strip_prefix('{').map(str::trim_start) {
        Some(rest) if rest.starts_with('{') => rest
            .strip_suffix('}')
            .ok_or(ParseError::Unterminated(0))?,
        _ => trimmed,
    };
    parse_groups(inner, &[',', ';'])?
        .into_iter()
        .map(|g| KSubset::from_unsorted(g, ground).map_err(ParseError::from))
        .collect()
}
