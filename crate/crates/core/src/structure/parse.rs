use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{is_identifier, Structure, StructureBuilder};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Accept input with no equations, yielding [`Structure::empty`].
    pub allow_empty: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Text,
    Json,
}

impl InputFormat {
    /// `.json` files are JSON; everything else is the line format.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => InputFormat::Json,
            _ => InputFormat::Text,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub(super) struct StructureFile {
    pub equations: Vec<EquationEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub(super) struct EquationEntry {
    pub id: String,
    pub vars: Vec<String>,
}

pub fn parse_structure(text: &str, format: InputFormat, opts: ParseOptions) -> Result<Structure> {
    match format {
        InputFormat::Text => parse_text(text, opts),
        InputFormat::Json => parse_json(text, opts),
    }
}

fn column(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

/// Parses the line format:
///
/// ```text
/// # comment
/// f1: x1 x2   # trailing comment
/// ```
pub fn parse_text(text: &str, opts: ParseOptions) -> Result<Structure> {
    let mut b = StructureBuilder::new();
    let mut seen: HashSet<&str> = HashSet::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let syntax = |byte: usize, message: &str| Error::Syntax {
            line: line_no,
            column: column(raw, byte),
            message: message.to_string(),
        };

        let colon = line
            .find(':')
            .ok_or_else(|| syntax(line.len(), "expected `:` after equation id"))?;
        let head = &line[..colon];
        let id = head.trim();
        let id_start = head.len() - head.trim_start().len();
        if id.is_empty() {
            return Err(syntax(id_start, "missing equation id"));
        }
        if !is_identifier(id) {
            return Err(syntax(id_start, &format!("invalid equation id `{id}`")));
        }
        if !seen.insert(id) {
            return Err(Error::DuplicateEquation {
                id: id.to_string(),
                line: line_no,
            });
        }

        let body = &line[colon + 1..];
        let mut vars = Vec::new();
        let mut offset = colon + 1;
        for token in body.split_whitespace() {
            let at = line[offset..]
                .find(token)
                .expect("token comes from this line")
                + offset;
            if !is_identifier(token) {
                return Err(syntax(at, &format!("invalid variable name `{token}`")));
            }
            vars.push(token);
            offset = at + token.len();
        }
        if vars.is_empty() {
            return Err(Error::EmptyEquation { id: id.to_string() });
        }
        b.equation(id, &vars)?;
    }

    finish(b, opts)
}

/// Parses `{"equations": [{"id": "f1", "vars": ["x1", ...]}, ...]}`.
pub fn parse_json(text: &str, opts: ParseOptions) -> Result<Structure> {
    let file: StructureFile = serde_json::from_str(text)?;
    let mut b = StructureBuilder::new();
    for (i, eq) in file.equations.iter().enumerate() {
        b.equation(&eq.id, &eq.vars).map_err(|e| match e {
            Error::DuplicateEquation { id, .. } => Error::DuplicateEquation { id, line: i + 1 },
            other => other,
        })?;
    }
    finish(b, opts)
}

fn finish(b: StructureBuilder, opts: ParseOptions) -> Result<Structure> {
    let s = b.build();
    if s.is_empty() && !opts.allow_empty {
        return Err(Error::EmptyStructure);
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::COUPLED;

    fn parse(t: &str) -> Result<Structure> {
        parse_text(t, ParseOptions::default())
    }

    #[test]
    fn coupled() {
        let s = parse(COUPLED).unwrap();
        assert_eq!(s.equation_count(), 7);
        assert_eq!(s.variable_count(), 7);
        assert_eq!(s.density(), 16);
        assert_eq!(
            s.equation_names(),
            ["f1", "f2", "f3", "f4", "f5", "f6", "f7"]
        );
        assert_eq!(
            s.variable_names(),
            ["x1", "x2", "x3", "x4", "x5", "x6", "x7"]
        );
    }

    #[test]
    fn single_and_dedup() {
        let s = parse("f1: x1").unwrap();
        assert_eq!(s.density(), 1);
        let s = parse("f1: x1 x1 x2").unwrap();
        assert_eq!(s.iter().next().unwrap().1, ["x1", "x2"]);
        assert_eq!(s.density(), 2);
    }

    #[test]
    fn comments_blank_lines_and_interning_order() {
        let s = parse("# header\n\n  f1 : b a  # trailing\nf2: c a\n").unwrap();
        assert_eq!(s.variable_names(), ["b", "a", "c"]);
        assert_eq!(s.equation_names(), ["f1", "f2"]);
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse("f1: x1\nf2 x2") {
            Err(Error::Syntax {
                line: 2, column: 6, ..
            }) => {}
            other => panic!("{other:?}"),
        }
        match parse("f1: x1 x-2") {
            Err(Error::Syntax {
                line: 1, column: 8, ..
            }) => {}
            other => panic!("{other:?}"),
        }
        match parse("  9f: x1") {
            Err(Error::Syntax {
                line: 1, column: 3, ..
            }) => {}
            other => panic!("{other:?}"),
        }
        match parse(": x1") {
            Err(Error::Syntax {
                line: 1, column: 1, ..
            }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicate_and_empty_equations() {
        assert!(matches!(
            parse("f1: x1\nf1: x2"),
            Err(Error::DuplicateEquation { line: 2, .. })
        ));
        assert!(matches!(
            parse("f1:   # nothing"),
            Err(Error::EmptyEquation { .. })
        ));
    }

    #[test]
    fn empty_input_needs_flag() {
        assert!(matches!(
            parse("# only comments\n"),
            Err(Error::EmptyStructure)
        ));
        let s = parse_text("", ParseOptions { allow_empty: true }).unwrap();
        assert!(s.is_empty());
        assert!(s.validate().is_complete);
    }

    #[test]
    fn json_round_trip() {
        let s = parse(COUPLED).unwrap();
        let json = s.to_json();
        let back = parse_json(&json, ParseOptions::default()).unwrap();
        assert_eq!(back, s);
        assert_eq!(parse(&back.to_text()).unwrap(), s);
    }

    #[test]
    fn json_errors() {
        assert!(matches!(
            parse_json(
                r#"{"equations": [{"id": "f1", "vars": []}]}"#,
                ParseOptions::default()
            ),
            Err(Error::EmptyEquation { .. })
        ));
        assert!(matches!(
            parse_json(r#"{"eqs": []}"#, ParseOptions::default()),
            Err(Error::Json(_))
        ));
        assert!(matches!(
            parse_json(r#"{"equations": []}"#, ParseOptions::default()),
            Err(Error::EmptyStructure)
        ));
    }

    #[test]
    fn format_from_path() {
        assert_eq!(
            InputFormat::from_path(Path::new("a.JSON")),
            InputFormat::Json
        );
        assert_eq!(
            InputFormat::from_path(Path::new("a.cop")),
            InputFormat::Text
        );
        assert_eq!(InputFormat::from_path(Path::new("-")), InputFormat::Text);
    }
}
