//! Text matrix input: one row per line, whitespace-separated complex
//! entries written as `a+bi` (also `a`, `bi`, `i`, `-i`). Blank lines and
//! lines starting with `#` are ignored.

use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use spin_hierarchy::{CMatrix, Complex};

#[derive(Debug, Error)]
pub enum MatrixFileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: cannot parse entry {token:?} as a complex number")]
    Entry { line: usize, token: String },
    #[error("line {line}: expected {expected} entries, found {found}")]
    Ragged { line: usize, expected: usize, found: usize },
    #[error("matrix file contains no rows")]
    Empty,
    #[error("matrix is {rows}x{cols}; a square matrix is required")]
    NotSquare { rows: usize, cols: usize },
    #[error("line {line}: entry {token:?} is not finite")]
    NonFinite { line: usize, token: String },
}

pub fn parse_matrix(text: &str) -> Result<CMatrix, MatrixFileError> {
    let mut rows: Vec<Vec<Complex>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut row = Vec::new();
        for token in content.split_whitespace() {
            let z = Complex::from_str(token).map_err(|_| MatrixFileError::Entry { line, token: token.into() })?;
            if !z.is_finite() {
                return Err(MatrixFileError::NonFinite { line, token: token.into() });
            }
            row.push(z);
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(MatrixFileError::Ragged { line, expected: first.len(), found: row.len() });
            }
        }
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 {
        return Err(MatrixFileError::Empty);
    }
    if rows[0].len() != n {
        return Err(MatrixFileError::NotSquare { rows: n, cols: rows[0].len() });
    }
    Ok(CMatrix::from_rows(&rows).expect("rows validated above"))
}

pub fn read_matrix(path: &Path) -> Result<CMatrix, MatrixFileError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| MatrixFileError::Io { path: path.display().to_string(), source })?;
    parse_matrix(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spin_half_cyclic() {
        let text = "# K for s = 1/2, times 4\n0 1 -i -i\n1 0 i i\n\ni -i 0 -1\ni -i -1 0\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(m.rows(), 4);
        assert_eq!(m[(0, 2)], Complex::new(0.0, -1.0));
        assert_eq!(m[(3, 2)], Complex::new(-1.0, 0.0));
        assert!(m.is_hermitian(0.0));
    }

    #[test]
    fn mixed_forms() {
        let m = parse_matrix("2 1-0.5i\n1+0.5i -3e-1").unwrap();
        assert_eq!(m[(0, 1)], Complex::new(1.0, -0.5));
        assert_eq!(m[(1, 1)], Complex::new(-0.3, 0.0));
    }

    #[test]
    fn rejects_corruption() {
        assert!(matches!(parse_matrix("1 2x\n3 4"), Err(MatrixFileError::Entry { line: 1, .. })));
        assert!(matches!(parse_matrix("1 2\n3"), Err(MatrixFileError::Ragged { line: 2, .. })));
        assert!(matches!(parse_matrix("1 2 3\n4 5 6"), Err(MatrixFileError::NotSquare { .. })));
        assert!(matches!(parse_matrix("# nothing\n\n"), Err(MatrixFileError::Empty)));
        assert!(matches!(parse_matrix("inf 0\n0 1"), Err(MatrixFileError::NonFinite { .. })));
    }
}
