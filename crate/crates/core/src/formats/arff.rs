//! ARFF reader and writer.
//!
//! Supported grammar: case-insensitive `@relation`, `@attribute` and `@data`
//! keywords; names and values quoted with `'` or `"` (backslash escapes);
//! `numeric`/`real`/`integer`, `{nominal,...}` and `string` attribute kinds;
//! `%` comment lines; dense and `{index value, ...}` sparse rows; `?` for a
//! missing value. `date` and `relational` attributes are rejected.

use std::io::{BufRead, Write};

use crate::dataset::{AttributeKind, Value};
use crate::error::{Error, ParseError, Result};

/// An attribute as declared in the header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawAttribute {
    pub name: String,
    pub kind: AttributeKind,
}

/// Header and rows of an ARFF file, before any label designation.
#[derive(Debug, Clone, PartialEq)]
pub struct RawRelation {
    pub name: String,
    pub attributes: Vec<RawAttribute>,
    /// One value per attribute, in attribute order.
    pub rows: Vec<Vec<Value>>,
    /// 1-based source line of each row.
    pub row_lines: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Dense,
    Sparse,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

struct Token {
    text: String,
    quoted: bool,
    column: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Self { text, pos: 0, line }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn at_end(&self) -> bool {
        self.rest().trim().is_empty()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column(), message)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    /// Reads a quoted token, or an unquoted one ending at whitespace (when
    /// `stop_at_ws`) or at any character of `delims`.
    fn token(&mut self, delims: &[char], stop_at_ws: bool) -> Result<Token, ParseError> {
        self.skip_ws();
        let column = self.column();
        match self.peek() {
            Some(q @ ('\'' | '"')) => {
                self.bump();
                let mut text = String::new();
                loop {
                    match self.bump() {
                        None => return Err(ParseError::new(self.line, column, "unterminated quote")),
                        Some('\\') => match self.bump() {
                            Some('n') => text.push('\n'),
                            Some('t') => text.push('\t'),
                            Some('r') => text.push('\r'),
                            Some(c) => text.push(c),
                            None => {
                                return Err(ParseError::new(self.line, column, "unterminated quote"))
                            }
                        },
                        Some(c) if c == q => break,
                        Some(c) => text.push(c),
                    }
                }
                Ok(Token {
                    text,
                    quoted: true,
                    column,
                })
            }
            _ => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if delims.contains(&c) || (stop_at_ws && c.is_whitespace()) {
                        break;
                    }
                    self.bump();
                }
                let text = self.text[start..self.pos].trim_end().to_string();
                if text.is_empty() {
                    return Err(ParseError::new(self.line, column, "expected a value"));
                }
                Ok(Token {
                    text,
                    quoted: false,
                    column,
                })
            }
        }
    }
}

fn keyword<'a>(line: &'a str, kw: &str) -> Option<&'a str> {
    let head = line.get(..kw.len())?;
    if head.eq_ignore_ascii_case(kw) {
        let rest = &line[kw.len()..];
        if rest.is_empty() || rest.starts_with(char::is_whitespace) {
            return Some(rest);
        }
    }
    None
}

fn parse_attribute(cur: &mut Cursor) -> Result<RawAttribute, ParseError> {
    let name = cur.token(&['{'], true)?.text;
    cur.skip_ws();
    let kind_column = cur.column();
    if cur.peek() == Some('{') {
        cur.bump();
        let mut values = Vec::new();
        cur.skip_ws();
        if cur.peek() == Some('}') {
            return Err(cur.error("empty nominal domain"));
        }
        loop {
            let tok = cur.token(&[',', '}'], false)?;
            if values.contains(&tok.text) {
                return Err(ParseError::new(
                    cur.line,
                    tok.column,
                    format!("duplicate nominal value '{}'", tok.text),
                ));
            }
            values.push(tok.text);
            cur.skip_ws();
            match cur.bump() {
                Some(',') => continue,
                Some('}') => break,
                _ => return Err(cur.error("expected ',' or '}' in nominal domain")),
            }
        }
        if !cur.at_end() {
            return Err(cur.error("unexpected text after nominal domain"));
        }
        return Ok(RawAttribute {
            name,
            kind: AttributeKind::Nominal(values),
        });
    }
    let kind_text = cur.rest().trim();
    let word = kind_text.split_whitespace().next().unwrap_or("");
    let kind = match word.to_ascii_lowercase().as_str() {
        "numeric" | "real" | "integer" => AttributeKind::Numeric,
        "string" => AttributeKind::String,
        "date" | "relational" => {
            return Err(ParseError::new(
                cur.line,
                kind_column,
                format!("unsupported attribute kind '{word}' for '{name}'"),
            ))
        }
        "" => return Err(ParseError::new(cur.line, kind_column, "missing attribute kind")),
        _ => {
            return Err(ParseError::new(
                cur.line,
                kind_column,
                format!("unknown attribute kind '{word}'"),
            ))
        }
    };
    if kind_text.split_whitespace().nth(1).is_some() {
        return Err(ParseError::new(
            cur.line,
            kind_column,
            "unexpected text after attribute kind",
        ));
    }
    Ok(RawAttribute { name, kind })
}

fn convert(tok: &Token, attr: &RawAttribute, line: usize) -> Result<Value, ParseError> {
    if !tok.quoted && tok.text == "?" {
        return Ok(Value::Missing);
    }
    match &attr.kind {
        AttributeKind::Numeric => tok.text.parse::<f64>().map(Value::Numeric).map_err(|_| {
            ParseError::new(
                line,
                tok.column,
                format!("'{}' is not numeric (attribute '{}')", tok.text, attr.name),
            )
        }),
        AttributeKind::Nominal(domain) => domain
            .iter()
            .position(|v| *v == tok.text)
            .map(Value::Nominal)
            .ok_or_else(|| {
                ParseError::new(
                    line,
                    tok.column,
                    format!(
                        "nominal value '{}' outside the domain of '{}'",
                        tok.text, attr.name
                    ),
                )
            }),
        AttributeKind::String => Ok(Value::Text(tok.text.clone())),
    }
}

fn sparse_default(attr: &RawAttribute) -> Value {
    match attr.kind {
        AttributeKind::Numeric => Value::Numeric(0.0),
        AttributeKind::Nominal(_) => Value::Nominal(0),
        AttributeKind::String => Value::Text(String::new()),
    }
}

fn parse_dense(cur: &mut Cursor, attrs: &[RawAttribute]) -> Result<Vec<Value>, ParseError> {
    let mut row = Vec::with_capacity(attrs.len());
    loop {
        let tok = cur.token(&[','], false)?;
        let Some(attr) = attrs.get(row.len()) else {
            return Err(ParseError::new(
                cur.line,
                tok.column,
                format!("row has more than {} values", attrs.len()),
            ));
        };
        row.push(convert(&tok, attr, cur.line)?);
        cur.skip_ws();
        match cur.bump() {
            None => break,
            Some(',') => continue,
            Some(_) => return Err(cur.error("expected ','")),
        }
    }
    if row.len() != attrs.len() {
        return Err(ParseError::new(
            cur.line,
            0,
            format!("row has {} values, expected {}", row.len(), attrs.len()),
        ));
    }
    Ok(row)
}

fn parse_sparse(cur: &mut Cursor, attrs: &[RawAttribute]) -> Result<Vec<Value>, ParseError> {
    cur.expect('{')?;
    let mut row: Vec<Value> = attrs.iter().map(sparse_default).collect();
    let mut last: Option<usize> = None;
    cur.skip_ws();
    if cur.peek() == Some('}') {
        cur.bump();
    } else {
        loop {
            let idx_tok = cur.token(&[',', '}'], true)?;
            let index: usize = idx_tok.text.parse().map_err(|_| {
                ParseError::new(
                    cur.line,
                    idx_tok.column,
                    format!("invalid sparse index '{}'", idx_tok.text),
                )
            })?;
            if index >= attrs.len() {
                return Err(ParseError::new(
                    cur.line,
                    idx_tok.column,
                    format!("sparse index {index} out of range for {} attributes", attrs.len()),
                ));
            }
            if last.is_some_and(|l| index <= l) {
                return Err(ParseError::new(
                    cur.line,
                    idx_tok.column,
                    "sparse indices must be strictly increasing",
                ));
            }
            last = Some(index);
            let tok = cur.token(&[',', '}'], false)?;
            row[index] = convert(&tok, &attrs[index], cur.line)?;
            cur.skip_ws();
            match cur.bump() {
                Some(',') => continue,
                Some('}') => break,
                _ => return Err(cur.error("expected ',' or '}' in sparse row")),
            }
        }
    }
    if !cur.at_end() {
        return Err(cur.error("unexpected text after sparse row"));
    }
    Ok(row)
}

/// Parses ARFF text from a reader. LF and CRLF line endings are accepted.
pub fn parse_arff<R: BufRead>(reader: R) -> Result<RawRelation> {
    let mut name: Option<String> = None;
    let mut attributes = Vec::new();
    let mut in_data = false;
    let mut rows = Vec::new();
    let mut row_lines = Vec::new();
    let mut last_line = 0;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = line.map_err(|e| {
            Error::Parse(ParseError::new(line_no, 0, format!("read failure: {e}")))
        })?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let offset = line.len() - trimmed.len();
        let mut cur = Cursor::new(line, line_no);
        cur.pos = offset;

        if in_data {
            let row = if trimmed.starts_with('{') {
                parse_sparse(&mut cur, &attributes)?
            } else {
                parse_dense(&mut cur, &attributes)?
            };
            rows.push(row);
            row_lines.push(line_no);
            continue;
        }

        if let Some(rest) = keyword(trimmed, "@relation") {
            if name.is_some() {
                return Err(ParseError::new(line_no, 1, "duplicate @relation").into());
            }
            cur.pos = line.len() - rest.len();
            let tok = cur.token(&[], true)?;
            if !cur.at_end() {
                return Err(cur.error("unexpected text after relation name").into());
            }
            name = Some(tok.text);
        } else if let Some(rest) = keyword(trimmed, "@attribute") {
            if name.is_none() {
                return Err(ParseError::new(line_no, 1, "@attribute before @relation").into());
            }
            cur.pos = line.len() - rest.len();
            let attr = parse_attribute(&mut cur)?;
            attributes.push(attr);
        } else if keyword(trimmed, "@data").is_some() {
            if name.is_none() {
                return Err(ParseError::new(line_no, 1, "@data before @relation").into());
            }
            if attributes.is_empty() {
                return Err(ParseError::new(line_no, 1, "@data without attributes").into());
            }
            if !trimmed[5..].trim().is_empty() {
                return Err(ParseError::new(line_no, 6, "unexpected text after @data").into());
            }
            in_data = true;
        } else {
            return Err(ParseError::new(
                line_no,
                offset + 1,
                format!(
                    "unexpected header line '{}'",
                    trimmed.chars().take(40).collect::<String>()
                ),
            )
            .into());
        }
    }
    if !in_data {
        return Err(ParseError::new(last_line.max(1), 0, "missing @data section").into());
    }
    Ok(RawRelation {
        name: name.unwrap_or_default(),
        attributes,
        rows,
        row_lines,
    })
}

pub fn parse_arff_str(text: &str) -> Result<RawRelation> {
    parse_arff(text.as_bytes())
}

/// Quotes `s` when it could not be read back as a bare token.
pub fn quote(s: &str) -> String {
    let bare = !s.is_empty()
        && s != "?"
        && !s.starts_with('%')
        && !s.starts_with('@')
        && !s
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ',' | '\'' | '"' | '{' | '}' | '\\' | '%'));
    if bare {
        return s.to_string();
    }
    let mut out = String::with_capacity(s.len() + 2);
    out.push('\'');
    for c in s.chars() {
        match c {
            '\'' => out.push_str("\\'"),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out.push('\'');
    out
}

/// Shortest text that parses back to exactly `x`.
pub fn format_number(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn format_value(value: &Value, kind: &AttributeKind) -> String {
    match (value, kind) {
        (Value::Missing, _) => "?".into(),
        (Value::Numeric(x), _) => format_number(*x),
        (Value::Nominal(i), AttributeKind::Nominal(domain)) => quote(&domain[*i]),
        (Value::Nominal(i), _) => i.to_string(),
        (Value::Text(s), _) => quote(s),
    }
}

fn is_sparse_default(value: &Value) -> bool {
    match value {
        Value::Numeric(x) => *x == 0.0,
        Value::Nominal(i) => *i == 0,
        Value::Text(s) => s.is_empty(),
        Value::Missing => false,
    }
}

/// Writes header and rows. Each row must hold one value per attribute.
pub fn write_arff<W: Write>(
    out: &mut W,
    relation: &str,
    attributes: &[RawAttribute],
    rows: impl IntoIterator<Item = Vec<Value>>,
    style: Style,
) -> std::io::Result<()> {
    writeln!(out, "@relation {}", quote(relation))?;
    writeln!(out)?;
    for attr in attributes {
        let kind = match &attr.kind {
            AttributeKind::Numeric => "numeric".to_string(),
            AttributeKind::String => "string".to_string(),
            AttributeKind::Nominal(values) => {
                let vals: Vec<String> = values.iter().map(|v| quote(v)).collect();
                format!("{{{}}}", vals.join(","))
            }
        };
        writeln!(out, "@attribute {} {}", quote(&attr.name), kind)?;
    }
    writeln!(out)?;
    writeln!(out, "@data")?;
    let mut line = String::new();
    for row in rows {
        line.clear();
        match style {
            Style::Dense => {
                for (j, (value, attr)) in row.iter().zip(attributes).enumerate() {
                    if j > 0 {
                        line.push(',');
                    }
                    line.push_str(&format_value(value, &attr.kind));
                }
            }
            Style::Sparse => {
                line.push('{');
                let mut first = true;
                for (j, (value, attr)) in row.iter().zip(attributes).enumerate() {
                    if is_sparse_default(value) {
                        continue;
                    }
                    if !first {
                        line.push(',');
                    }
                    first = false;
                    line.push_str(&j.to_string());
                    line.push(' ');
                    line.push_str(&format_value(value, &attr.kind));
                }
                line.push('}');
            }
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCHEMA: &str = "@relation toy\n@attribute x numeric\n@attribute A {0,1}\n@attribute B {0,1}\n@data\n";

    #[test]
    fn dense_row() {
        let rel = parse_arff_str(&format!("{SCHEMA}1.5,0,1\n")).unwrap();
        assert_eq!(
            rel.rows[0],
            vec![Value::Numeric(1.5), Value::Nominal(0), Value::Nominal(1)]
        );
        assert_eq!(rel.row_lines, vec![6]);
    }

    #[test]
    fn sparse_row_matches_dense() {
        let dense = parse_arff_str(&format!("{SCHEMA}1.5,0,1\n")).unwrap();
        let sparse = parse_arff_str(&format!("{SCHEMA}{{0 1.5, 2 1}}\n")).unwrap();
        assert_eq!(dense.rows, sparse.rows);
    }

    #[test]
    fn arity_error_has_line() {
        let err = parse_arff_str(&format!("{SCHEMA}1,0,1,1\n")).unwrap_err();
        match err {
            Error::Parse(p) => {
                assert_eq!(p.line, 6);
                assert!(p.message.contains("more than 3"));
            }
            e => panic!("unexpected {e}"),
        }
        assert!(parse_arff_str(&format!("{SCHEMA}1,0\n")).is_err());
    }

    #[test]
    fn keywords_are_case_insensitive_and_crlf_ok() {
        let text = "% comment\r\n@RELATION r\r\n@Attribute 'a b' REAL\r\n@ATTRIBUTE L {1,0}\r\n@DATA\r\n?,1\r\n";
        let rel = parse_arff_str(text).unwrap();
        assert_eq!(rel.attributes[0].name, "a b");
        assert_eq!(rel.rows[0], vec![Value::Missing, Value::Nominal(0)]);
    }

    #[test]
    fn quoted_names_and_escapes() {
        let text = "@relation \"my rel\"\n@attribute 'it\\'s' string\n@attribute \"L\" {'0','1'}\n@data\n'a,b',1\n\"?\",0\n";
        let rel = parse_arff_str(text).unwrap();
        assert_eq!(rel.name, "my rel");
        assert_eq!(rel.attributes[0].name, "it's");
        assert_eq!(rel.rows[0][0], Value::Text("a,b".into()));
        assert_eq!(rel.rows[1][0], Value::Text("?".into()));
    }

    #[test]
    fn rejects_unknown_and_date_kinds() {
        let e = parse_arff_str("@relation r\n@attribute d date\n@data\n").unwrap_err();
        assert!(e.to_string().contains("unsupported"), "{e}");
        let e = parse_arff_str("@relation r\n@attribute d blob\n@data\n").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
    }

    #[test]
    fn rejects_out_of_domain_and_bad_sparse_index() {
        let e = parse_arff_str(&format!("{SCHEMA}1,0,2\n")).unwrap_err();
        assert!(e.to_string().contains("outside the domain"), "{e}");
        let e = parse_arff_str(&format!("{SCHEMA}{{3 1}}\n")).unwrap_err();
        assert!(e.to_string().contains("out of range"), "{e}");
    }

    #[test]
    fn missing_data_section() {
        assert!(parse_arff_str("@relation r\n@attribute a numeric\n").is_err());
    }

    #[test]
    fn sparse_defaults() {
        let text = "@relation r\n@attribute a numeric\n@attribute b {x,y}\n@attribute s string\n@data\n{}\n";
        let rel = parse_arff_str(text).unwrap();
        assert_eq!(
            rel.rows[0],
            vec![Value::Numeric(0.0), Value::Nominal(0), Value::Text(String::new())]
        );
    }

    #[test]
    fn number_formatting_round_trips() {
        for x in [0.0, 1.0, -2.5, 1e-7, 3.0e20, 0.1 + 0.2, f64::MIN_POSITIVE, 123456.789] {
            assert_eq!(format_number(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(format_number(1.0), "1");
    }

    #[test]
    fn quoting() {
        assert_eq!(quote("abc"), "abc");
        assert_eq!(quote("a b"), "'a b'");
        assert_eq!(quote("it's"), "'it\\'s'");
        assert_eq!(quote(""), "''");
        assert_eq!(quote("?"), "'?'");
    }
}
