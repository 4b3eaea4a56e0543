use std::fmt;

use f2venn::{Error, Gf2Vector, PointSet};

/// A parse failure with the 1-based line it was detected on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FileError {}

/// Parses a set file: UTF-8 text, `#` comment lines, blank-line-separated
/// set blocks, bitstrings with optional internal spaces. Every bitstring in
/// one block must have the same length.
pub fn parse_sets(text: &str) -> Result<Vec<PointSet>, FileError> {
    let mut sets = Vec::new();
    let mut block: Vec<(usize, String)> = Vec::new();

    let mut flush = |block: &mut Vec<(usize, String)>| -> Result<(), FileError> {
        if block.is_empty() {
            return Ok(());
        }
        let n = block[0].1.len();
        let mut points = Vec::with_capacity(block.len());
        for (line, digits) in block.iter() {
            if digits.len() != n {
                return Err(FileError {
                    line: *line,
                    message: format!(
                        "bitstring has {} digits but this set uses {n}",
                        digits.len()
                    ),
                });
            }
            match Gf2Vector::parse(digits, n) {
                Ok(v) => points.push(v),
                Err(e) => return Err(FileError { line: *line, message: e.to_string() }),
            }
        }
        let first_line = block[0].0;
        match PointSet::new(n, points) {
            Ok(s) => sets.push(s),
            Err(Error::DuplicatePoint { index }) => {
                return Err(FileError {
                    line: block[index].0,
                    message: "duplicate point".to_string(),
                });
            }
            Err(e) => return Err(FileError { line: first_line, message: e.to_string() }),
        }
        block.clear();
        Ok(())
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            flush(&mut block)?;
            continue;
        }
        if trimmed.starts_with('#') {
            continue;
        }
        let digits: String = trimmed.chars().filter(|c| *c != ' ').collect();
        if let Some(bad) = digits.chars().find(|c| *c != '0' && *c != '1') {
            return Err(FileError {
                line,
                message: format!("invalid bitstring character {bad:?}"),
            });
        }
        if digits.is_empty() {
            return Err(FileError { line, message: "empty bitstring".to_string() });
        }
        if digits.len() > 64 {
            return Err(FileError {
                line,
                message: format!("bitstring has {} digits, more than the 64 supported", digits.len()),
            });
        }
        block.push((line, digits));
    }
    flush(&mut block)?;
    Ok(sets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_blocks_comments_and_spaces() {
        let text = "# header comment\n100 000 000\n010000000\n\n# second set\n11\n00\n";
        let sets = parse_sets(text).unwrap();
        assert_eq!(sets.len(), 2);
        assert_eq!(sets[0].ambient_dim(), 9);
        assert_eq!(sets[0].len(), 2);
        assert_eq!(sets[1].ambient_dim(), 2);
        assert_eq!(sets[1].point(0).bitstring(), "11");
    }

    #[test]
    fn reports_mixed_lengths_with_line() {
        let err = parse_sets("101\n0110\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("3"));
    }

    #[test]
    fn reports_duplicates_with_line() {
        let err = parse_sets("101\n011\n101\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert_eq!(err.message, "duplicate point");
    }

    #[test]
    fn reports_bad_characters() {
        let err = parse_sets("10a\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains('a'));
    }

    #[test]
    fn empty_file_yields_no_sets() {
        assert!(parse_sets("").unwrap().is_empty());
        assert!(parse_sets("# only comments\n\n").unwrap().is_empty());
    }

    #[test]
    fn whitespace_only_lines_separate_blocks() {
        let sets = parse_sets("01\n   \n10\n").unwrap();
        assert_eq!(sets.len(), 2);
    }

    #[test]
    fn oversized_bitstrings_rejected() {
        let line = "01".repeat(40);
        let err = parse_sets(&line).unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("64"));
    }
}
