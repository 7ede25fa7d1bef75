//! Point-set text format: UTF-8, `#` starts a comment line, every other
//! non-blank line holds two signed decimal integers. Line order gives the
//! point indices.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use khole_core::{Point, PointSet};

use crate::error::{CliError, CliResult};

pub fn parse_points(text: &str) -> CliResult<PointSet> {
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| CliError::Parse { line: i + 1, message };
        let mut fields = line.split_whitespace();
        let (Some(x), Some(y), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(format!("expected two integers, found `{line}`")));
        };
        let coord = |s: &str| s.parse::<i64>().map_err(|e| parse_err(format!("`{s}`: {e}")));
        points.push(Point {
            x: coord(x)?,
            y: coord(y)?,
        });
    }
    Ok(PointSet::new(points)?)
}

pub fn format_points(ps: &PointSet, header: &[String]) -> String {
    let mut out = String::new();
    for line in header {
        let _ = writeln!(out, "# {line}");
    }
    for p in ps.points() {
        let _ = writeln!(out, "{} {}", p.x, p.y);
    }
    out
}

pub fn read_points(path: &Path) -> CliResult<PointSet> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_points(&text)
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let ps = parse_points("# header\n\n0 0\n  5 -1\n# mid\n2 7\n").unwrap();
        assert_eq!(ps.len(), 3);
        assert_eq!(ps.points()[1], Point { x: 5, y: -1 });
    }

    #[test]
    fn malformed_lines_report_their_number() {
        match parse_points("0 0\n1\n").unwrap_err() {
            CliError::Parse { line, .. } => assert_eq!(line, 2),
            e => panic!("{e}"),
        }
        assert!(matches!(parse_points("0 0 0\n"), Err(CliError::Parse { line: 1, .. })));
        assert!(matches!(parse_points("a 0\n"), Err(CliError::Parse { line: 1, .. })));
    }

    #[test]
    fn collinear_input_is_rejected() {
        assert!(matches!(parse_points("0 0\n1 1\n2 2\n"), Err(CliError::Core(_))));
    }
}
