//! Manchester-style concrete syntax.
//!
//! ```text
//! expr        := term ("or" term)*
//! term        := factor ("and" factor)*
//! factor      := "not" factor | "(" expr ")" | "{" name ("," name)* "}"
//!              | "Thing" | "Nothing" | restriction | name ["@" ("rc"|"ic"|"suc")]
//! restriction := prop ("some" | "only") factor
//!              | prop ("min" | "max" | "exactly") INT factor
//!              | prop "value" (STRING | NUMBER | name)
//! prop        := name | "inverse" name | "inverse" "(" name ")"
//! ```
//!
//! Data-property fillers are data ranges: `[not] datatype`, `[not] {literal}`.
//! `#` starts a line comment.

use std::fmt;

use super::{
    lexical_conforms, AtomicClass, CaexKind, ClassExpression as CE, DataProperty, DataRange,
    Literal, ObjectProperty, PropertyRef,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{column}: expected {}, found {found}", expected.join(" | "))]
    Syntax {
        offset: usize,
        line: usize,
        column: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("uncovered constructor at {line}:{column}: {constructor}")]
    UncoveredConstructor {
        offset: usize,
        line: usize,
        column: usize,
        constructor: String,
    },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UncoveredConstructor { offset, .. } => {
                *offset
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Int(String),
    Decimal(String),
    Str(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    At,
    Caret2,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "`{n}`"),
            Tok::Int(n) | Tok::Decimal(n) => write!(f, "number {n}"),
            Tok::Str(s) => write!(f, "string {s:?}"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::At => f.write_str("`@`"),
            Tok::Caret2 => f.write_str("`^^`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

const KEYWORDS: &[&str] = &[
    "and", "or", "not", "some", "only", "min", "max", "exactly", "value", "Thing", "Nothing",
    "Self", "inverse",
];

const RESTRICTION_KEYWORDS: &[&str] = &["some", "only", "min", "max", "exactly", "value", "Self"];

fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':')
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokenize(src: &'a str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        loop {
            lx.skip_trivia();
            let start = lx.pos;
            let Some(c) = lx.peek() else {
                out.push((Tok::Eof, start));
                return Ok(out);
            };
            let tok = match c {
                '(' => lx.single(Tok::LParen),
                ')' => lx.single(Tok::RParen),
                '{' => lx.single(Tok::LBrace),
                '}' => lx.single(Tok::RBrace),
                ',' => lx.single(Tok::Comma),
                '@' => lx.single(Tok::At),
                '^' => {
                    if lx.src[lx.pos..].starts_with("^^") {
                        lx.pos += 2;
                        Tok::Caret2
                    } else {
                        return Err(syntax(src, start, &["`^^`"], "`^`"));
                    }
                }
                '"' => lx.string(start)?,
                c if c.is_ascii_digit() || c == '-' => lx.number(start)?,
                c if is_name_start(c) => {
                    let end = lx.src[lx.pos..]
                        .char_indices()
                        .find(|&(_, ch)| !is_name_char(ch))
                        .map_or(lx.src.len(), |(i, _)| lx.pos + i);
                    let name = lx.src[lx.pos..end].to_string();
                    lx.pos = end;
                    Tok::Name(name)
                }
                other => return Err(syntax(src, start, &["expression"], &format!("`{other}`"))),
            };
            out.push((tok, start));
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn single(&mut self, tok: Tok) -> Tok {
        self.pos += 1;
        tok
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else if c == '#' {
                match self.src[self.pos..].find('\n') {
                    Some(i) => self.pos += i + 1,
                    None => self.pos = self.src.len(),
                }
            } else {
                break;
            }
        }
    }

    fn string(&mut self, start: usize) -> Result<Tok, ParseError> {
        self.pos += 1;
        let mut value = String::new();
        let mut chars = self.src[self.pos..].char_indices();
        while let Some((i, c)) = chars.next() {
            match c {
                '"' => {
                    self.pos += i + 1;
                    return Ok(Tok::Str(value));
                }
                '\\' => match chars.next() {
                    Some((_, esc @ ('"' | '\\'))) => value.push(esc),
                    Some((_, 'n')) => value.push('\n'),
                    Some((_, 't')) => value.push('\t'),
                    _ => return Err(syntax(self.src, self.pos + i, &["escape sequence"], "`\\`")),
                },
                other => value.push(other),
            }
        }
        Err(syntax(self.src, start, &["closing `\"`"], "end of input"))
    }

    fn number(&mut self, start: usize) -> Result<Tok, ParseError> {
        let rest = &self.src[self.pos..];
        let mut end = 0;
        let bytes = rest.as_bytes();
        if bytes[0] == b'-' {
            end = 1;
        }
        let digits_start = end;
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        if end == digits_start {
            return Err(syntax(self.src, start, &["number"], "`-`"));
        }
        let mut decimal = false;
        if end + 1 < bytes.len() && bytes[end] == b'.' && bytes[end + 1].is_ascii_digit() {
            decimal = true;
            end += 1;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
        }
        let text = rest[..end].to_string();
        self.pos += end;
        // Signed or fractional numbers are literals only, never cardinalities.
        Ok(if decimal || text.starts_with('-') {
            Tok::Decimal(text)
        } else {
            Tok::Int(text)
        })
    }
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before
        .rfind('\n')
        .map_or(before.chars().count(), |i| before[i + 1..].chars().count())
        + 1;
    (line, column)
}

fn syntax(src: &str, offset: usize, expected: &[&str], found: &str) -> ParseError {
    let (line, column) = line_col(src, offset);
    ParseError::Syntax {
        offset,
        line,
        column,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found: found.to_string(),
    }
}

fn uncovered(src: &str, offset: usize, constructor: &str) -> ParseError {
    let (line, column) = line_col(src, offset);
    ParseError::UncoveredConstructor {
        offset,
        line,
        column,
        constructor: constructor.to_string(),
    }
}

/// Parses a single class expression.
pub fn parse(text: &str) -> Result<CE, ParseError> {
    let toks = Lexer::tokenize(text)?;
    let mut p = Parser {
        src: text,
        toks,
        idx: 0,
    };
    let expr = p.expr()?;
    match p.peek() {
        Tok::Eof => Ok(expr),
        _ => Err(p.unexpected(&["`and`", "`or`", "end of input"])),
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    idx: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.idx].0
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.idx + ahead).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn offset(&self) -> usize {
        self.toks[self.idx].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.idx].0.clone();
        if self.idx + 1 < self.toks.len() {
            self.idx += 1;
        }
        t
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Name(n) if n == kw)
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.is_keyword(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        syntax(self.src, self.offset(), expected, &self.peek().to_string())
    }

    fn expect(&mut self, tok: Tok, label: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[label]))
        }
    }

    fn expr(&mut self) -> Result<CE, ParseError> {
        let mut ops = vec![self.term()?];
        while self.eat_keyword("or") {
            ops.push(self.term()?);
        }
        Ok(CE::or(ops))
    }

    fn term(&mut self) -> Result<CE, ParseError> {
        let mut ops = vec![self.factor()?];
        while self.eat_keyword("and") {
            ops.push(self.factor()?);
        }
        Ok(CE::and(ops))
    }

    fn factor(&mut self) -> Result<CE, ParseError> {
        const EXPECTED: &[&str] = &["class name", "`not`", "`(`", "`{`", "restriction"];
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::LBrace => {
                self.bump();
                let mut names = vec![self.individual()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    names.push(self.individual()?);
                }
                self.expect(Tok::RBrace, "`}`")?;
                Ok(CE::OneOf(names))
            }
            Tok::Name(n) => match n.as_str() {
                "not" => {
                    self.bump();
                    Ok(CE::not(self.factor()?))
                }
                "Thing" | "owl:Thing" => {
                    self.bump();
                    Ok(CE::Thing)
                }
                "Nothing" | "owl:Nothing" => {
                    self.bump();
                    Ok(CE::Nothing)
                }
                "inverse" => {
                    self.bump();
                    let paren = *self.peek() == Tok::LParen;
                    if paren {
                        self.bump();
                    }
                    let name_at = self.offset();
                    let name = self.name(&["object property"])?;
                    if paren {
                        self.expect(Tok::RParen, "`)`")?;
                    }
                    let Some(p) = ObjectProperty::from_name(&name) else {
                        return Err(syntax(
                            self.src,
                            name_at,
                            &["object property"],
                            &format!("`{name}`"),
                        ));
                    };
                    self.object_restriction(p.inverse())
                }
                kw if KEYWORDS.contains(&kw) => Err(self.unexpected(EXPECTED)),
                _ => {
                    if let Tok::Name(next) = self.peek_at(1) {
                        if RESTRICTION_KEYWORDS.contains(&next.as_str()) {
                            self.bump();
                            return match PropertyRef::from_name(&n) {
                                PropertyRef::Object(p) => self.object_restriction(p),
                                PropertyRef::Data(d) => self.data_restriction(d),
                            };
                        }
                    }
                    self.bump();
                    let mut atom = AtomicClass::new(n);
                    if *self.peek() == Tok::At {
                        self.bump();
                        let at = self.offset();
                        let suffix = self.name(&["`rc`", "`ic`", "`suc`"])?;
                        atom.kind = Some(CaexKind::from_suffix(&suffix).ok_or_else(|| {
                            syntax(
                                self.src,
                                at,
                                &["`rc`", "`ic`", "`suc`"],
                                &format!("`{suffix}`"),
                            )
                        })?);
                    }
                    Ok(CE::Atomic(atom))
                }
            },
            _ => Err(self.unexpected(EXPECTED)),
        }
    }

    fn name(&mut self, expected: &[&str]) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Name(n) if !KEYWORDS.contains(&n.as_str()) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected(expected)),
        }
    }

    fn individual(&mut self) -> Result<String, ParseError> {
        self.name(&["individual name"])
    }

    fn cardinality(&mut self) -> Result<u32, ParseError> {
        match self.peek().clone() {
            Tok::Int(text) => {
                let n = text
                    .parse::<u32>()
                    .map_err(|_| self.unexpected(&["non-negative integer"]))?;
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected(&["non-negative integer"])),
        }
    }

    fn object_restriction(&mut self, p: ObjectProperty) -> Result<CE, ParseError> {
        let at = self.offset();
        let Tok::Name(kw) = self.bump() else {
            return Err(syntax(self.src, at, RESTRICTION_KEYWORDS, "token"));
        };
        match kw.as_str() {
            "some" => Ok(CE::some(p, self.factor()?)),
            "only" => Ok(CE::all(p, self.factor()?)),
            "min" => {
                let n = self.cardinality()?;
                Ok(CE::min(n, p, self.factor()?))
            }
            "max" => {
                let n = self.cardinality()?;
                Ok(CE::max(n, p, self.factor()?))
            }
            "exactly" => {
                let n = self.cardinality()?;
                Ok(CE::exact(n, p, self.factor()?))
            }
            "value" => Ok(CE::ObjectHasValue(p, self.individual()?)),
            "Self" => Err(uncovered(self.src, at, "ObjectHasSelf (local reflexivity)")),
            _ => Err(syntax(
                self.src,
                at,
                RESTRICTION_KEYWORDS,
                &format!("`{kw}`"),
            )),
        }
    }

    fn data_restriction(&mut self, d: DataProperty) -> Result<CE, ParseError> {
        let at = self.offset();
        let Tok::Name(kw) = self.bump() else {
            return Err(syntax(self.src, at, RESTRICTION_KEYWORDS, "token"));
        };
        match kw.as_str() {
            "some" => Ok(CE::DataSome(d, self.data_range()?)),
            "value" => Ok(CE::DataHasValue(d, self.literal()?)),
            "only" => Err(uncovered(self.src, at, "DataAllValuesFrom")),
            "min" => Err(uncovered(self.src, at, "DataMinCardinality")),
            "max" => Err(uncovered(self.src, at, "DataMaxCardinality")),
            "exactly" => Err(uncovered(self.src, at, "DataExactCardinality")),
            "Self" => Err(uncovered(self.src, at, "ObjectHasSelf (local reflexivity)")),
            _ => Err(syntax(
                self.src,
                at,
                RESTRICTION_KEYWORDS,
                &format!("`{kw}`"),
            )),
        }
    }

    fn data_range(&mut self) -> Result<DataRange, ParseError> {
        match self.peek().clone() {
            Tok::Name(n) if n == "not" => {
                self.bump();
                Ok(self.data_range()?.negate())
            }
            Tok::LParen => {
                self.bump();
                let r = self.data_range()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(r)
            }
            Tok::LBrace => {
                self.bump();
                let lit = self.literal()?;
                self.expect(Tok::RBrace, "`}`")?;
                Ok(DataRange::value(&lit))
            }
            Tok::Name(n) if !KEYWORDS.contains(&n.as_str()) => {
                self.bump();
                Ok(DataRange::datatype(n))
            }
            _ => Err(self.unexpected(&["datatype", "`not`", "`{`"])),
        }
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let at = self.offset();
        let lit = match self.peek().clone() {
            Tok::Str(s) => {
                self.bump();
                if *self.peek() == Tok::Caret2 {
                    self.bump();
                    let dt = self.name(&["datatype"])?;
                    Literal::new(s, dt)
                } else {
                    Literal::string(s)
                }
            }
            Tok::Int(n) => {
                self.bump();
                Literal::new(n, "integer")
            }
            Tok::Decimal(n) => {
                self.bump();
                if n.contains('.') {
                    Literal::new(n, "double")
                } else {
                    Literal::new(n, "integer")
                }
            }
            Tok::Name(n) if n == "true" || n == "false" => {
                self.bump();
                Literal::new(n, "boolean")
            }
            _ => return Err(self.unexpected(&["string literal", "number", "`true`", "`false`"])),
        };
        if !lexical_conforms(&lit.lexical, &lit.datatype) {
            return Err(syntax(
                self.src,
                at,
                &[&format!("literal of type {}", lit.datatype)],
                &format!("{:?}", lit.lexical),
            ));
        }
        Ok(lit)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::owl_expr::ObjectProperty::*;

    fn a(n: &str) -> CE {
        CE::atomic(n)
    }

    #[test]
    fn class_a_parses_to_ast() {
        let got = parse("Robot and not (hasIE some (not IOController))").unwrap();
        let want = CE::And(vec![
            a("Robot"),
            CE::not(CE::some(HasIE, CE::not(a("IOController")))),
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn thing_literal() {
        assert_eq!(parse("Thing").unwrap(), CE::Thing);
        assert_eq!(parse("  Nothing # bottom\n").unwrap(), CE::Nothing);
    }

    #[test]
    fn class_b_parses_data_value() {
        let got = parse("isIEOf some (Robot and hasManufacturer value \"KUKA\")").unwrap();
        let want = CE::some(
            IsIEOf,
            CE::And(vec![
                a("Robot"),
                CE::DataHasValue(
                    DataProperty::new("hasManufacturer"),
                    Literal::string("KUKA"),
                ),
            ]),
        );
        assert_eq!(got, want);
    }

    #[test]
    fn precedence_and_binds_tighter_than_or() {
        let got = parse("A or B and C").unwrap();
        assert_eq!(got, CE::Or(vec![a("A"), CE::And(vec![a("B"), a("C")])]));
        let got = parse("hasIE some A and B").unwrap();
        assert_eq!(got, CE::And(vec![CE::some(HasIE, a("A")), a("B")]));
    }

    #[test]
    fn cardinalities_nominals_and_annotations() {
        let got = parse("hasEI min 3 IOInterface@ic and {a, b} and hasIE value r1").unwrap();
        assert_eq!(
            got,
            CE::And(vec![
                CE::min(
                    3,
                    HasEI,
                    CE::Atomic(AtomicClass::with_kind(
                        "IOInterface",
                        CaexKind::InterfaceClass
                    ))
                ),
                CE::OneOf(vec!["a".into(), "b".into()]),
                CE::ObjectHasValue(HasIE, "r1".into()),
            ])
        );
    }

    #[test]
    fn inverse_keyword_maps_to_inverse_property() {
        assert_eq!(
            parse("inverse(hasIE) some Robot").unwrap(),
            CE::some(IsIEOf, a("Robot"))
        );
    }

    #[test]
    fn data_ranges() {
        let got = parse("hasWeight some not double and serial some {\"7\"^^token}").unwrap();
        assert_eq!(
            got,
            CE::And(vec![
                CE::DataSome(
                    DataProperty::new("hasWeight"),
                    DataRange::datatype("double").negate()
                ),
                CE::DataSome(
                    DataProperty::new("serial"),
                    DataRange {
                        datatype: "token".into(),
                        required_value: Some("7".into()),
                        negated: false
                    }
                ),
            ])
        );
    }

    #[test]
    fn uncovered_rows_are_rejected() {
        for text in [
            "hasWeight only double",
            "hasWeight min 2 double",
            "hasWeight exactly 1 double",
            "hasIE Self",
        ] {
            assert!(
                matches!(parse(text), Err(ParseError::UncoveredConstructor { .. })),
                "{text}"
            );
        }
    }

    #[test]
    fn syntax_errors_report_position_and_expectations() {
        let err = parse("Robot and (hasIE some").unwrap_err();
        match err {
            ParseError::Syntax {
                offset, expected, ..
            } => {
                assert_eq!(offset, 21);
                assert!(expected.iter().any(|e| e.contains("class name")));
            }
            other => panic!("{other:?}"),
        }
        assert!(parse("Robot Gripper").is_err());
        assert!(parse("hasIE min x A").is_err());
        assert!(parse("hasWeight value \"abc\"^^integer").is_err());
        assert!(parse("hasIE value \"KUKA\"").is_err());
        assert!(parse("Robot@xy").is_err());
    }
}
