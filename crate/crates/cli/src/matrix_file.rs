//! The `cfcode v1` text matrix format.
//!
//! ```text
//! cfcode v1
//! <N> <t>
//! # optional comment lines
//! <N lines of exactly t characters from {0,1}>
//! ```
//!
//! Every line ends in `\n`. No trailing whitespace is allowed anywhere.

use std::io::{self, Read, Write};

use cfcode_core::{BitMatrix, CodeParams};
use thiserror::Error;

pub const MAGIC: &str = "cfcode v1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line 1: expected `{MAGIC}`")]
    BadMagic,
    #[error("line {line}: {reason}")]
    BadHeader { line: usize, reason: String },
    #[error("line {line}: expected {expected} characters, found {actual}")]
    WrongWidth {
        line: usize,
        expected: usize,
        actual: usize,
    },
    #[error("line {line}, column {column}: unexpected character {ch:?}")]
    BadChar { line: usize, column: usize, ch: char },
    #[error("line {line}: missing terminating newline")]
    MissingNewline { line: usize },
    #[error("expected {expected} data lines, found {actual}")]
    RowCount { expected: usize, actual: usize },
}

/// A parsed matrix together with its comment lines (without the leading `#`).
#[derive(Debug, Clone)]
pub struct MatrixFile {
    pub matrix: BitMatrix,
    pub comments: Vec<String>,
}

impl MatrixFile {
    /// `(n, k, s, l)` from a `# n k s l = …` comment, if present.
    pub fn provenance(&self) -> Option<(u64, u64, u64, u64)> {
        self.comments.iter().find_map(|c| {
            let values = c.trim().strip_prefix("n k s l =")?;
            let v: Vec<u64> = values
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .ok()?;
            match v[..] {
                [n, k, s, l] => Some((n, k, s, l)),
                _ => None,
            }
        })
    }
}

/// Comment lines recording the parameters and addressing conventions.
pub fn provenance_comments(params: &CodeParams) -> Vec<String> {
    vec![
        format!(
            " n k s l = {} {} {} {}",
            params.n(),
            params.k(),
            params.s(),
            params.ell()
        ),
        " rows and columns in colex rank order; ranks 0-based, set elements 1-based".to_owned(),
    ]
}

pub fn write_matrix<W: Write + ?Sized>(
    out: &mut W,
    matrix: &BitMatrix,
    comments: &[String],
) -> io::Result<()> {
    writeln!(out, "{MAGIC}")?;
    writeln!(out, "{} {}", matrix.num_rows(), matrix.num_cols())?;
    for c in comments {
        writeln!(out, "#{}", c.trim_end())?;
    }
    let mut line = Vec::with_capacity(matrix.num_cols() + 1);
    for i in 0..matrix.num_rows() {
        line.clear();
        let row = matrix.row(i);
        line.extend((0..matrix.num_cols()).map(|j| if row.get(j) == Some(true) { b'1' } else { b'0' }));
        line.push(b'\n');
        out.write_all(&line)?;
    }
    Ok(())
}

pub fn read_matrix<R: Read>(mut input: R) -> Result<MatrixFile, FormatError> {
    let mut text = String::new();
    input.read_to_string(&mut text).map_err(|e| {
        if e.kind() == io::ErrorKind::InvalidData {
            FormatError::BadHeader {
                line: 0,
                reason: "file is not valid UTF-8".to_owned(),
            }
        } else {
            FormatError::Io(e)
        }
    })?;
    parse_matrix(&text)
}

pub fn parse_matrix(text: &str) -> Result<MatrixFile, FormatError> {
    let mut lines: Vec<&str> = text.split('\n').collect();
    // A trailing '\n' leaves one empty piece; anything else means the last
    // line was unterminated.
    match lines.pop() {
        Some("") => {}
        _ => return Err(FormatError::MissingNewline { line: lines.len() + 1 }),
    }
    let mut it = lines.iter().enumerate().map(|(i, l)| (i + 1, *l));

    match it.next() {
        Some((_, MAGIC)) => {}
        _ => return Err(FormatError::BadMagic),
    }
    let (rows, cols) = match it.next() {
        Some((line, header)) => parse_dims(line, header)?,
        None => {
            return Err(FormatError::BadHeader {
                line: 2,
                reason: "missing `N t` header".to_owned(),
            })
        }
    };

    let mut comments = Vec::new();
    let mut matrix = BitMatrix::zeros(rows, cols);
    let mut data_rows = 0usize;
    for (line, body) in it {
        if data_rows == 0 {
            if let Some(c) = body.strip_prefix('#') {
                if c.ends_with(char::is_whitespace) {
                    return Err(FormatError::BadHeader {
                        line,
                        reason: "trailing whitespace".to_owned(),
                    });
                }
                comments.push(c.to_owned());
                continue;
            }
        }
        if data_rows == rows {
            return Err(FormatError::RowCount {
                expected: rows,
                actual: data_rows + 1,
            });
        }
        let width = body.chars().count();
        if width != cols {
            return Err(FormatError::WrongWidth {
                line,
                expected: cols,
                actual: width,
            });
        }
        for (j, ch) in body.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => matrix.set(data_rows, j, true),
                _ => {
                    return Err(FormatError::BadChar {
                        line,
                        column: j + 1,
                        ch,
                    })
                }
            }
        }
        data_rows += 1;
    }
    if data_rows != rows {
        return Err(FormatError::RowCount {
            expected: rows,
            actual: data_rows,
        });
    }
    Ok(MatrixFile { matrix, comments })
}

fn parse_dims(line: usize, header: &str) -> Result<(usize, usize), FormatError> {
    let bad = |reason: &str| FormatError::BadHeader {
        line,
        reason: reason.to_owned(),
    };
    let mut parts = header.split(' ');
    let (Some(r), Some(c), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(bad("expected `N t` separated by one space"));
    };
    let parse = |s: &str| {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            Err(bad("dimensions must be decimal integers"))
        } else {
            s.parse::<usize>().map_err(|_| bad("dimension too large"))
        }
    };
    Ok((parse(r)?, parse(c)?))
}
