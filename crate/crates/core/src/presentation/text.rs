//! Line-oriented presentation grammar.
//!
//! ```text
//! gens: a, b, t_ab
//! rels: b*g = g*a; t_ab*t_bc^-1; (a*b)^3
//! ```
//!
//! Relators are separated by `;` or newlines, `1` is the empty word, and
//! `#` starts a comment that runs to the end of the line.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{GroupPresentation, Letter, Provenance, Relator, Word};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dialect {
    /// The grammar accepted by [`parse_presentation`].
    Native,
    /// A GAP script building the free group and its quotient.
    Gap,
    /// `< a, b | a^2, b*a*b^-1*a^-1 >`
    Plain,
}

impl std::str::FromStr for Dialect {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "native" => Ok(Dialect::Native),
            "gap" => Ok(Dialect::Gap),
            "plain" => Ok(Dialect::Plain),
            other => Err(format!("unknown dialect `{other}` (expected native, gap or plain)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Colon,
    Comma,
    Sep,
    Star,
    Caret,
    Eq,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let mut line = 1;
    let mut line_start = 0;
    while let Some(&(i, c)) = chars.peek() {
        let column = i - line_start + 1;
        let mut push = |tok| out.push(Spanned { tok, line, column });
        match c {
            '\n' => {
                chars.next();
                push(Tok::Sep);
                line += 1;
                line_start = i + 1;
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '#' => {
                while let Some(&(_, c)) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            ';' => {
                chars.next();
                push(Tok::Sep);
            }
            ':' | ',' | '*' | '^' | '=' | '(' | ')' => {
                chars.next();
                push(match c {
                    ':' => Tok::Colon,
                    ',' => Tok::Comma,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '=' => Tok::Eq,
                    '(' => Tok::LParen,
                    _ => Tok::RParen,
                });
            }
            '-' | '0'..='9' => {
                let mut s = String::new();
                s.push(c);
                chars.next();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let v = s.parse::<i64>().map_err(|_| ParseError {
                    line,
                    column,
                    message: format!("invalid integer `{s}`"),
                })?;
                push(Tok::Int(v));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                push(Tok::Ident(s));
            }
            other => {
                return Err(ParseError {
                    line,
                    column,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    gens: HashMap<String, usize>,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self
            .toks
            .get(self.pos)
            .map(|s| (s.line, s.column))
            .unwrap_or(self.end);
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_seps(&mut self) {
        while self.peek() == Some(&Tok::Sep) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                self.expect(Tok::Colon, "`:`")
            }
            _ => Err(self.error(format!("expected `{kw}:`"))),
        }
    }

    fn generators(&mut self) -> Result<Vec<String>, ParseError> {
        let mut names = Vec::new();
        if let Some(Tok::Ident(_)) = self.peek() {
            loop {
                match self.peek().cloned() {
                    Some(Tok::Ident(name)) => {
                        if self.gens.contains_key(&name) {
                            return Err(self.error(format!("duplicate generator `{name}`")));
                        }
                        self.gens.insert(name.clone(), names.len());
                        names.push(name);
                        self.pos += 1;
                    }
                    _ => return Err(self.error("expected generator name")),
                }
                if self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        Ok(names)
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        let mut w = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            w = w.concat(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        let base = match self.peek().cloned() {
            Some(Tok::Ident(name)) => match self.gens.get(&name) {
                Some(&g) => {
                    self.pos += 1;
                    Word::single(g, false)
                }
                None => return Err(self.error(format!("unknown generator `{name}`"))),
            },
            Some(Tok::LParen) => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(Tok::RParen, "`)`")?;
                w
            }
            Some(Tok::Int(1)) => {
                self.pos += 1;
                Word::empty()
            }
            _ => return Err(self.error("expected generator, `1` or `(`")),
        };
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    Ok(base.pow(n))
                }
                _ => Err(self.error("expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn relator(&mut self) -> Result<Relator, ParseError> {
        let lhs = self.word()?;
        if self.peek() == Some(&Tok::Eq) {
            self.pos += 1;
            let rhs = self.word()?;
            Ok(Relator::equation(lhs, rhs))
        } else {
            Ok(Relator::word(lhs))
        }
    }
}

/// Parses the native grammar. Equations `u = v` are kept as equations and
/// stand for the relator `u * v^-1`.
pub fn parse_presentation(text: &str) -> Result<GroupPresentation, ParseError> {
    let toks = lex(text)?;
    let lines = text.lines().count().max(1);
    let last_len = text.lines().last().map_or(0, |l| l.len());
    let mut p = Parser {
        toks,
        pos: 0,
        gens: HashMap::new(),
        end: (lines, last_len + 1),
    };
    p.skip_seps();
    p.keyword("gens")?;
    let generators = p.generators()?;
    if p.peek() != Some(&Tok::Sep) {
        return Err(p.error("expected `;` or newline after generator list"));
    }
    p.skip_seps();
    p.keyword("rels")?;
    let mut relators = Vec::new();
    loop {
        match p.peek() {
            None => break,
            Some(Tok::Sep) => p.skip_seps(),
            Some(_) => {
                relators.push(p.relator()?);
                match p.peek() {
                    None | Some(Tok::Sep) => {}
                    Some(_) => return Err(p.error("expected `;` or newline after relator")),
                }
            }
        }
    }
    // Every letter was resolved against the generator table while parsing.
    Ok(GroupPresentation::new(generators, relators, Provenance::Parsed)
        .expect("parser only emits known generators"))
}

/// Consecutive equal letters as `(letter, run length)`.
fn runs(w: &Word) -> Vec<(Letter, usize)> {
    let mut out: Vec<(Letter, usize)> = Vec::new();
    for &l in w.letters() {
        match out.last_mut() {
            Some((prev, n)) if *prev == l => *n += 1,
            _ => out.push((l, 1)),
        }
    }
    out
}

fn render_word(w: &Word, name: impl Fn(usize) -> String) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut s = String::new();
    for (i, (l, n)) in runs(w).into_iter().enumerate() {
        if i > 0 {
            s.push('*');
        }
        s.push_str(&name(l.generator()));
        let e = n as i64 * l.exponent() as i64;
        if e != 1 {
            let _ = write!(s, "^{e}");
        }
    }
    s
}

pub fn serialize(p: &GroupPresentation, dialect: Dialect) -> String {
    let gens = p.generators();
    match dialect {
        Dialect::Native => {
            let name = |g: usize| gens[g].clone();
            let rels: Vec<String> = p
                .relators()
                .iter()
                .map(|r| match &r.rhs {
                    None => render_word(&r.lhs, name),
                    Some(rhs) => format!("{} = {}", render_word(&r.lhs, name), render_word(rhs, name)),
                })
                .collect();
            let mut out = String::from("gens:");
            if !gens.is_empty() {
                out.push(' ');
                out.push_str(&gens.join(", "));
            }
            out.push_str("\nrels:");
            if !rels.is_empty() {
                out.push(' ');
                out.push_str(&rels.join("; "));
            }
            out.push('\n');
            out
        }
        Dialect::Plain => {
            let name = |g: usize| gens[g].clone();
            let rels: Vec<String> = p
                .relator_words()
                .iter()
                .map(|w| render_word(w, name))
                .collect();
            format!("< {} | {} >\n", gens.join(", "), rels.join(", "))
        }
        Dialect::Gap => {
            let name = |g: usize| format!("F.{}", g + 1);
            let mut out = String::new();
            if gens.is_empty() {
                out.push_str("F := FreeGroup(0);;\n");
            } else {
                let quoted: Vec<String> = gens.iter().map(|g| format!("\"{g}\"")).collect();
                let _ = writeln!(out, "F := FreeGroup({});;", quoted.join(", "));
            }
            let rels: Vec<String> = p
                .relator_words()
                .iter()
                .map(|w| {
                    if w.is_empty() {
                        "One(F)".to_string()
                    } else {
                        render_word(w, name)
                    }
                })
                .collect();
            if rels.is_empty() {
                out.push_str("G := F / [ ];;\n");
            } else {
                out.push_str("G := F / [\n");
                for (i, r) in rels.iter().enumerate() {
                    let comma = if i + 1 < rels.len() { "," } else { "" };
                    let _ = writeln!(out, "  {r}{comma}");
                }
                out.push_str("];;\n");
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_line_document() {
        let p = parse_presentation("gens: a; rels: a^2").unwrap();
        assert_eq!(p.generators(), ["a"]);
        assert_eq!(p.relator_words(), vec![Word::single(0, false).pow(2)]);
        assert_eq!(serialize(&p, Dialect::Native), "gens: a\nrels: a^2\n");
    }

    #[test]
    fn equations_become_lhs_times_rhs_inverse() {
        let p = parse_presentation("gens: k, r, j\nrels: k*r = r*j").unwrap();
        let w = &p.relator_words()[0];
        let expect: Word = [(0, false), (1, false), (2, true), (1, true)]
            .into_iter()
            .map(|(g, i)| Letter::new(g, i))
            .collect();
        assert_eq!(w, &expect);
    }

    #[test]
    fn parenthesised_powers() {
        let p = parse_presentation("gens: a, b\nrels: (a*b)^-1").unwrap();
        assert_eq!(
            serialize(&p, Dialect::Native),
            "gens: a, b\nrels: b^-1*a^-1\n"
        );
    }

    #[test]
    fn empty_sections() {
        let p = parse_presentation("gens:\nrels:\n").unwrap();
        assert!(p.generators().is_empty());
        assert!(p.relators().is_empty());
        assert_eq!(serialize(&p, Dialect::Native), "gens:\nrels:\n");
        let q = parse_presentation("gens: a; rels:").unwrap();
        assert_eq!(q.generators().len(), 1);
    }

    #[test]
    fn unknown_generator_reports_position() {
        let err = parse_presentation("gens: a\nrels: a*b").unwrap_err();
        assert_eq!((err.line, err.column), (2, 9));
        assert!(err.message.contains("unknown generator `b`"));
    }

    #[test]
    fn syntax_errors() {
        assert!(parse_presentation("rels: a").is_err());
        assert!(parse_presentation("gens: a, a\nrels:").is_err());
        assert!(parse_presentation("gens: a\nrels: a^").is_err());
        assert!(parse_presentation("gens: a\nrels: a a").is_err());
        assert!(parse_presentation("gens: a\nrels: a & a").is_err());
    }

    #[test]
    fn comments_and_blank_lines() {
        let p = parse_presentation("# the group Z/3\n\ngens: a\nrels:\n  a^3 # cube\n\n").unwrap();
        assert_eq!(p.relators().len(), 1);
    }

    #[test]
    fn identity_word_and_equation_to_one() {
        let p = parse_presentation("gens: a\nrels: a = 1; 1").unwrap();
        assert_eq!(serialize(&p, Dialect::Native), "gens: a\nrels: a = 1; 1\n");
    }

    #[test]
    fn gap_dialect() {
        let p = parse_presentation("gens: a, b\nrels: a^2; b*a = a*b").unwrap();
        assert_eq!(
            serialize(&p, Dialect::Gap),
            "F := FreeGroup(\"a\", \"b\");;\nG := F / [\n  F.1^2,\n  F.2*F.1*F.2^-1*F.1^-1\n];;\n"
        );
        let t = parse_presentation("gens:\nrels:").unwrap();
        assert_eq!(serialize(&t, Dialect::Gap), "F := FreeGroup(0);;\nG := F / [ ];;\n");
    }

    #[test]
    fn plain_dialect() {
        let p = parse_presentation("gens: a, b\nrels: a^2; b*a = a*b").unwrap();
        assert_eq!(serialize(&p, Dialect::Plain), "< a, b | a^2, b*a*b^-1*a^-1 >\n");
    }
}
