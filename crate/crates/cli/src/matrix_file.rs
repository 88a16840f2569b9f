//! Plain-text matrix format.
//!
//! Lines whose first non-blank character is `#` are comments. The remaining
//! text is a stream of tokens separated by whitespace and/or commas: first the
//! dimension `n`, then exactly `n·n` reals in row-major order. Decimal and
//! scientific notation are both accepted.
//!
//! ```text
//! # exchange matrix
//! 2
//! 0, 1
//! 1, 0
//! ```

use std::path::Path;

use hwbound_core::spectral::{SymmetricMatrix, SymmetryMode};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MatrixFileError {
    #[error("no dimension found (file is empty or only comments)")]
    Empty,
    #[error("dimension must be a positive integer, found {0:?}")]
    BadDimension(String),
    #[error("entry {index} is not a real number: {token:?}")]
    BadNumber { index: usize, token: String },
    #[error("expected {expected} entries for the declared dimension, found {found}")]
    Count { expected: usize, found: usize },
    #[error(transparent)]
    Matrix(#[from] hwbound_core::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn tokens(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .filter(|line| !line.trim_start().starts_with('#'))
        .flat_map(|line| line.split(|c: char| c.is_whitespace() || c == ','))
        .filter(|tok| !tok.is_empty())
}

pub fn parse_matrix(text: &str, mode: SymmetryMode) -> Result<SymmetricMatrix, MatrixFileError> {
    let mut toks = tokens(text);
    let dim_token = toks.next().ok_or(MatrixFileError::Empty)?;
    let n: usize = dim_token
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| MatrixFileError::BadDimension(dim_token.to_owned()))?;

    let entries = toks
        .enumerate()
        .map(|(index, tok)| {
            tok.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| MatrixFileError::BadNumber {
                    index,
                    token: tok.to_owned(),
                })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let expected = n.checked_mul(n).ok_or_else(|| MatrixFileError::BadDimension(dim_token.to_owned()))?;
    if entries.len() != expected {
        return Err(MatrixFileError::Count {
            expected,
            found: entries.len(),
        });
    }
    Ok(SymmetricMatrix::new(n, entries, mode)?)
}

pub fn read_matrix(path: &Path, mode: SymmetryMode) -> Result<SymmetricMatrix, MatrixFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| MatrixFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_matrix(&text, mode)
}

/// Writes a matrix in the same format [`parse_matrix`] reads.
pub fn render_matrix(matrix: &SymmetricMatrix) -> String {
    let n = matrix.dim();
    let mut out = format!("{n}\n");
    for row in matrix.entries().chunks_exact(n) {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:?}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use hwbound_core::Error;

    #[test]
    fn comments_commas_and_scientific_notation() {
        let text = "# a comment\n  # indented comment\n2\n1.5e0, -2E-1\n-0.2 3\n";
        let m = parse_matrix(text, SymmetryMode::Strict).unwrap();
        assert_eq!(m.entries(), &[1.5, -0.2, -0.2, 3.0]);
    }

    #[test]
    fn everything_on_one_line() {
        let m = parse_matrix("1 7", SymmetryMode::Strict).unwrap();
        assert_eq!(m.entries(), &[7.0]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_matrix("# only\n", SymmetryMode::Strict), Err(MatrixFileError::Empty)));
        assert!(matches!(parse_matrix("0", SymmetryMode::Strict), Err(MatrixFileError::BadDimension(_))));
        assert!(matches!(parse_matrix("2.5 1", SymmetryMode::Strict), Err(MatrixFileError::BadDimension(_))));
        assert!(matches!(
            parse_matrix("2 1 0 0", SymmetryMode::Strict),
            Err(MatrixFileError::Count { expected: 4, found: 3 })
        ));
        assert!(matches!(
            parse_matrix("2 1 0 0 1 5", SymmetryMode::Strict),
            Err(MatrixFileError::Count { expected: 4, found: 5 })
        ));
        assert!(matches!(
            parse_matrix("1 abc", SymmetryMode::Strict),
            Err(MatrixFileError::BadNumber { index: 0, .. })
        ));
        assert!(matches!(
            parse_matrix("1 inf", SymmetryMode::Strict),
            Err(MatrixFileError::BadNumber { .. })
        ));
        assert!(matches!(
            parse_matrix("2 0 1 0 0", SymmetryMode::Strict),
            Err(MatrixFileError::Matrix(Error::Asymmetric { .. }))
        ));
        assert!(matches!(
            parse_matrix("2 0 0 0 0", SymmetryMode::Symmetrize),
            Err(MatrixFileError::Matrix(Error::ZeroMatrix))
        ));
    }

    #[test]
    fn symmetrize_on_request() {
        let m = parse_matrix("2 0 1 0 0", SymmetryMode::Symmetrize).unwrap();
        assert_eq!(m.entries(), &[0.0, 0.5, 0.5, 0.0]);
    }

    #[test]
    fn render_round_trips() {
        let m = parse_matrix("3 1 0.1 -2 0.1 4e-3 5 -2 5 1e10", SymmetryMode::Strict).unwrap();
        assert_eq!(parse_matrix(&render_matrix(&m), SymmetryMode::Strict).unwrap(), m);
    }
}
