//! ASCII front end: `false`, `~`, `[]`, `&`, `|`, `->`, sequents `a, b => c`
//! and split sequents `a ; b => c`.
//!
//! Precedence from tightest: `~` and `[]`, then `&`, `|`, `->`. The binary
//! connectives `&` and `|` associate to the left, `->` to the right.

use std::fmt;

use thiserror::Error;

use crate::formula::Formula;
use crate::sequent::Sequent;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}..{}", self.message, self.span.start, self.span.end)
    }
}

impl ParseError {
    /// The error message followed by the input with a caret line under the
    /// offending span.
    pub fn annotate(&self, input: &str) -> String {
        let width = input[self.span.start..self.span.end].chars().count().max(1);
        let pad = input[..self.span.start].chars().count();
        format!(
            "error: {}\n  {}\n  {}{}",
            self.message,
            input,
            " ".repeat(pad),
            "^".repeat(width)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    False,
    Not,
    Box,
    And,
    Or,
    Imp,
    LParen,
    RParen,
    Comma,
    Semi,
    Turnstile,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("atom `{}`", s),
            Tok::False => "`false`".into(),
            Tok::Not => "`~`".into(),
            Tok::Box => "`[]`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Imp => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Turnstile => "`=>`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let one = |tok: Tok, len: usize| (tok, SourceSpan { start: i, end: i + len });
        let rest = &input[i..];
        let (tok, span) = if rest.starts_with("->") {
            one(Tok::Imp, 2)
        } else if rest.starts_with("=>") {
            one(Tok::Turnstile, 2)
        } else if rest.starts_with("[]") {
            one(Tok::Box, 2)
        } else {
            match c {
                '~' | '¬' => one(Tok::Not, c.len_utf8()),
                '□' => one(Tok::Box, c.len_utf8()),
                '&' | '∧' => one(Tok::And, c.len_utf8()),
                '|' | '∨' => one(Tok::Or, c.len_utf8()),
                '→' => one(Tok::Imp, c.len_utf8()),
                '⇒' => one(Tok::Turnstile, c.len_utf8()),
                '⊥' => one(Tok::False, c.len_utf8()),
                '(' => one(Tok::LParen, 1),
                ')' => one(Tok::RParen, 1),
                ',' => one(Tok::Comma, 1),
                ';' => one(Tok::Semi, 1),
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let len = rest
                        .char_indices()
                        .find(|&(_, d)| !(d.is_ascii_alphanumeric() || d == '_' || d == '\''))
                        .map(|(j, _)| j)
                        .unwrap_or(rest.len());
                    let word = &rest[..len];
                    let tok = if word == "false" {
                        Tok::False
                    } else {
                        Tok::Ident(word.to_string())
                    };
                    one(tok, len)
                }
                _ => {
                    return Err(ParseError {
                        span: SourceSpan { start: i, end: i + c.len_utf8() },
                        message: format!("unexpected character `{}`", c),
                    })
                }
            }
        };
        while chars.peek().is_some_and(|&(j, _)| j < span.end) {
            chars.next();
        }
        out.push((tok, span));
    }
    out.push((Tok::Eof, SourceSpan { start: input.len(), end: input.len() }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

impl Parser {
    fn new(input: &str) -> Result<Parser, ParseError> {
        Ok(Parser { toks: tokenize(input)?, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError {
            span: self.span(),
            message: format!("expected {}, found {}", expected, self.peek().describe()),
        })
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.prefix()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.prefix()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.prefix()?))
            }
            Tok::Box => {
                self.bump();
                Ok(Formula::boxed(self.prefix()?))
            }
            Tok::False => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::atom(&name))
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                if *self.peek() != Tok::RParen {
                    return self.error("`)`");
                }
                self.bump();
                Ok(f)
            }
            _ => self.error("a formula"),
        }
    }

    /// Comma-separated formulas up to (not including) one of `stops`.
    fn list(&mut self, stops: &[Tok]) -> Result<Vec<Formula>, ParseError> {
        let mut out = Vec::new();
        if stops.contains(self.peek()) {
            return Ok(out);
        }
        loop {
            out.push(self.formula()?);
            if *self.peek() == Tok::Comma {
                self.bump();
                continue;
            }
            return Ok(out);
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() != tok {
            return self.error(&tok.describe());
        }
        self.bump();
        Ok(())
    }

    fn succedent(&mut self) -> Result<Option<Formula>, ParseError> {
        if *self.peek() == Tok::Eof {
            return Ok(None);
        }
        let f = self.formula()?;
        if *self.peek() == Tok::Comma {
            return Err(ParseError {
                span: self.span(),
                message: "a sequent has at most one succedent formula".into(),
            });
        }
        self.expect(Tok::Eof)?;
        Ok(Some(f))
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.expect(Tok::Eof)?;
    Ok(f)
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text)?;
    let ante = p.list(&[Tok::Turnstile])?;
    p.expect(Tok::Turnstile)?;
    let succ = p.succedent()?;
    Ok(Sequent::new(ante, succ))
}

/// Left part, right part and succedent of a split sequent.
pub type Split = (Vec<Formula>, Vec<Formula>, Option<Formula>);

/// Parses `left ; right => succ` into its two antecedent parts and succedent.
pub fn parse_split(text: &str) -> Result<Split, ParseError> {
    let mut p = Parser::new(text)?;
    let left = p.list(&[Tok::Semi])?;
    p.expect(Tok::Semi)?;
    let right = p.list(&[Tok::Turnstile])?;
    p.expect(Tok::Turnstile)?;
    let succ = p.succedent()?;
    Ok((left, right, succ))
}

/// Parses a sequent keeping the antecedent in written order.
pub fn parse_sequent_ordered(text: &str) -> Result<(Vec<Formula>, Option<Formula>), ParseError> {
    let mut p = Parser::new(text)?;
    let ante = p.list(&[Tok::Turnstile])?;
    p.expect(Tok::Turnstile)?;
    let succ = p.succedent()?;
    Ok((ante, succ))
}

const PREC_IMP: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_PREFIX: u8 = 4;

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Imp(_, b) if **b == Formula::Bot => PREC_PREFIX,
        Formula::Imp(..) => PREC_IMP,
        Formula::Or(..) => PREC_OR,
        Formula::And(..) => PREC_AND,
        _ => PREC_PREFIX,
    }
}

fn render_into(f: &Formula, min: u8, out: &mut String) {
    let paren = prec(f) < min;
    if paren {
        out.push('(');
    }
    match f {
        Formula::Bot => out.push_str("false"),
        Formula::Atom(p) => out.push_str(p),
        Formula::Imp(a, b) if **b == Formula::Bot => {
            out.push('~');
            render_into(a, PREC_PREFIX, out);
        }
        Formula::Imp(a, b) => {
            render_into(a, PREC_IMP + 1, out);
            out.push_str(" -> ");
            render_into(b, PREC_IMP, out);
        }
        Formula::Or(a, b) => {
            render_into(a, PREC_OR, out);
            out.push_str(" | ");
            render_into(b, PREC_OR + 1, out);
        }
        Formula::And(a, b) => {
            render_into(a, PREC_AND, out);
            out.push_str(" & ");
            render_into(b, PREC_AND + 1, out);
        }
        Formula::Box(a) => {
            out.push_str("[]");
            render_into(a, PREC_PREFIX, out);
        }
    }
    if paren {
        out.push(')');
    }
}

pub fn render_formula(f: &Formula) -> String {
    let mut s = String::new();
    render_into(f, 0, &mut s);
    s
}

pub fn render_list(fs: &[Formula]) -> String {
    fs.iter().map(render_formula).collect::<Vec<_>>().join(", ")
}

pub fn render_parts(ante: &[Formula], succ: Option<&Formula>) -> String {
    let mut s = render_list(ante);
    if !s.is_empty() {
        s.push(' ');
    }
    s.push_str("=>");
    if let Some(f) = succ {
        s.push(' ');
        s.push_str(&render_formula(f));
    }
    s
}

pub fn render_sequent(s: &Sequent) -> String {
    render_parts(s.ante(), s.succ())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }

    #[test]
    fn sl_axiom_shape() {
        let f = parse_formula("([]p -> p) -> p").unwrap();
        assert_eq!(f, Formula::imp(Formula::imp(Formula::boxed(p()), p()), p()));
    }

    #[test]
    fn negation_desugars() {
        assert_eq!(parse_formula("~p").unwrap(), Formula::imp(p(), Formula::Bot));
    }

    #[test]
    fn implication_is_right_associative() {
        let q = Formula::atom("q");
        let r = Formula::atom("r");
        assert_eq!(
            parse_formula("p -> q -> r").unwrap(),
            Formula::imp(p(), Formula::imp(q, r))
        );
    }

    #[test]
    fn precedence() {
        let f = parse_formula("[]p & q | r -> s").unwrap();
        assert_eq!(render_formula(&f), "[]p & q | r -> s");
        let g = parse_formula("p & (q | r)").unwrap();
        assert_eq!(render_formula(&g), "p & (q | r)");
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("p, p -> q => q").unwrap();
        assert_eq!(s.ante().len(), 2);
        assert_eq!(s.succ(), Some(&Formula::atom("q")));
        let e = parse_sequent("=>").unwrap();
        assert!(e.ante().is_empty() && e.succ().is_none());
        assert!(parse_sequent("p => q, r").is_err());
    }

    #[test]
    fn render_examples() {
        assert_eq!(render_formula(&Formula::imp(Formula::boxed(p()), p())), "[]p -> p");
        let s = Sequent::new(vec![Formula::boxed(p())], None);
        assert_eq!(render_sequent(&s), "[]p =>");
        assert_eq!(render_formula(&Formula::not(Formula::not(p()))), "~~p");
    }

    #[test]
    fn split_syntax() {
        let (l, r, d) = parse_split("p ; p -> q => q").unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(r.len(), 1);
        assert!(d.is_some());
        let (l, _, _) = parse_split(" ; p => p").unwrap();
        assert!(l.is_empty());
    }

    #[test]
    fn errors_carry_spans() {
        let e = parse_formula("p & ").unwrap_err();
        assert_eq!(e.span, SourceSpan { start: 4, end: 4 });
        let e = parse_formula("p # q").unwrap_err();
        assert_eq!(e.span, SourceSpan { start: 2, end: 3 });
        let e = parse_formula("(p").unwrap_err();
        assert!(e.span.end <= 2);
    }

    #[test]
    fn unicode_aliases() {
        assert_eq!(
            parse_formula("□p → ¬p ∧ ⊥").unwrap(),
            parse_formula("[]p -> ~p & false").unwrap()
        );
    }
}
