//! Set-expression grammar.
//!
//! ```text
//! expr   := and ('|' and)*
//! and    := shift ('&' shift)*
//! shift  := unary (('<<' | '>>') int)*
//! unary  := '!' unary | atom
//! atom   := '{' n,… '}' | r '%' m | '[' a ',' b ')' | 'N' | '0'
//!         | 'squaresblocks' | 'triadic-unit(' j ')' | 'triadic-val-ge(' k ')'
//!         | '(' expr ')'
//! ```
//!
//! `A << k` is the leftward shift `A − k = {m : m + k ∈ A}` and `A >> k` the
//! rightward shift `A + k`. Pair expressions add `rect(E, E)`, `sumband(E)`,
//! `diffband(E)` and `delta+` as atoms.

use std::fmt;

use thiserror::Error;

use crate::pairs::PairSet;
use crate::semilinear::{SemilinearSet, SetError};
use crate::windows::PredicateSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error(transparent)]
    Set(#[from] SetError),
    #[error("`{0}` is not eventually periodic; it can only be used as a predicate")]
    NotSemilinear(String),
}

fn syntax(offset: usize, message: impl Into<String>) -> ExprError {
    ExprError::Syntax {
        offset,
        message: message.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PredicateName {
    SquaresBlocks,
    TriadicUnit(u8),
    TriadicValGe(u64),
}

impl fmt::Display for PredicateName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredicateName::SquaresBlocks => f.write_str("squaresblocks"),
            PredicateName::TriadicUnit(j) => write!(f, "triadic-unit({j})"),
            PredicateName::TriadicValGe(k) => write!(f, "triadic-val-ge({k})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SetExpr {
    Finite(Vec<u64>),
    Residue(u64, u64),
    Interval(u64, u64),
    Naturals,
    Empty,
    Predicate(PredicateName),
    Not(Box<SetExpr>),
    And(Box<SetExpr>, Box<SetExpr>),
    Or(Box<SetExpr>, Box<SetExpr>),
    ShiftLeft(Box<SetExpr>, u64),
    ShiftRight(Box<SetExpr>, u64),
}

impl SetExpr {
    fn precedence(&self) -> u8 {
        match self {
            SetExpr::Or(..) => 0,
            SetExpr::And(..) => 1,
            SetExpr::ShiftLeft(..) | SetExpr::ShiftRight(..) => 2,
            SetExpr::Not(..) => 3,
            _ => 4,
        }
    }

    fn is_semilinear(&self) -> bool {
        match self {
            SetExpr::Predicate(_) => false,
            SetExpr::Not(x) | SetExpr::ShiftLeft(x, _) | SetExpr::ShiftRight(x, _) => {
                x.is_semilinear()
            }
            SetExpr::And(x, y) | SetExpr::Or(x, y) => x.is_semilinear() && y.is_semilinear(),
            _ => true,
        }
    }

    pub fn eval(&self) -> Result<SemilinearSet, ExprError> {
        Ok(match self {
            SetExpr::Finite(xs) => SemilinearSet::finite(xs.iter().copied()),
            SetExpr::Residue(r, m) => SemilinearSet::residue_class(*r, *m)?,
            SetExpr::Interval(a, b) => SemilinearSet::interval(*a, *b)?,
            SetExpr::Naturals => SemilinearSet::naturals(),
            SetExpr::Empty => SemilinearSet::empty(),
            SetExpr::Predicate(p) => return Err(ExprError::NotSemilinear(p.to_string())),
            SetExpr::Not(x) => x.eval()?.complement(),
            SetExpr::And(x, y) => x.eval()?.intersect(&y.eval()?),
            SetExpr::Or(x, y) => x.eval()?.union(&y.eval()?),
            SetExpr::ShiftLeft(x, k) => x.eval()?.shift_left(*k),
            SetExpr::ShiftRight(x, k) => x.eval()?.shift_right(*k),
        })
    }

    /// Membership predicate; eventually-periodic subtrees are folded.
    pub fn to_predicate(&self) -> Result<PredicateSet, ExprError> {
        if self.is_semilinear() {
            return Ok(PredicateSet::Semilinear(self.eval()?));
        }
        Ok(match self {
            SetExpr::Predicate(PredicateName::SquaresBlocks) => PredicateSet::SquaresBlocks,
            SetExpr::Predicate(PredicateName::TriadicUnit(j)) => PredicateSet::TriadicUnit(*j),
            SetExpr::Predicate(PredicateName::TriadicValGe(k)) => PredicateSet::TriadicValGe(*k),
            SetExpr::Not(x) => PredicateSet::Not(Box::new(x.to_predicate()?)),
            SetExpr::And(x, y) => {
                PredicateSet::And(Box::new(x.to_predicate()?), Box::new(y.to_predicate()?))
            }
            SetExpr::Or(x, y) => {
                PredicateSet::Or(Box::new(x.to_predicate()?), Box::new(y.to_predicate()?))
            }
            SetExpr::ShiftLeft(x, k) => PredicateSet::ShiftLeft(Box::new(x.to_predicate()?), *k),
            SetExpr::ShiftRight(x, k) => PredicateSet::ShiftRight(Box::new(x.to_predicate()?), *k),
            _ => unreachable!("atoms other than predicates are semilinear"),
        })
    }
}

fn wrap(e: &SetExpr, min: u8) -> String {
    if e.precedence() < min {
        format!("({e})")
    } else {
        e.to_string()
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Finite(xs) => {
                let parts: Vec<String> = xs.iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
            SetExpr::Residue(r, m) => write!(f, "{r}%{m}"),
            SetExpr::Interval(a, b) => write!(f, "[{a},{b})"),
            SetExpr::Naturals => f.write_str("N"),
            SetExpr::Empty => f.write_str("0"),
            SetExpr::Predicate(p) => write!(f, "{p}"),
            SetExpr::Not(x) => write!(f, "!{}", wrap(x, 3)),
            SetExpr::And(x, y) => write!(f, "{} & {}", wrap(x, 1), wrap(y, 2)),
            SetExpr::Or(x, y) => write!(f, "{} | {}", wrap(x, 0), wrap(y, 1)),
            SetExpr::ShiftLeft(x, k) => write!(f, "{} << {k}", wrap(x, 2)),
            SetExpr::ShiftRight(x, k) => write!(f, "{} >> {k}", wrap(x, 2)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(u64),
    Ident(String),
    LBrace,
    RBrace,
    LBracket,
    LParen,
    RParen,
    Comma,
    Percent,
    Bang,
    Amp,
    Pipe,
    Shl,
    Shr,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i]
                    .parse()
                    .map_err(|_| syntax(start, "number out of range"))?;
                out.push((start, Tok::Num(n)));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'-') {
                    i += 1;
                }
                let mut name = text[start..i].to_string();
                if name == "delta" && bytes.get(i) == Some(&b'+') {
                    i += 1;
                    name.push('+');
                }
                out.push((start, Tok::Ident(name)));
                continue;
            }
            b'<' | b'>' => {
                if bytes.get(i + 1) != Some(&c) {
                    return Err(syntax(i, format!("expected `{0}{0}`", c as char)));
                }
                out.push((start, if c == b'<' { Tok::Shl } else { Tok::Shr }));
                i += 2;
                continue;
            }
            _ => {}
        }
        let tok = match c {
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            b'[' => Tok::LBracket,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'%' => Tok::Percent,
            b'!' => Tok::Bang,
            b'&' => Tok::Amp,
            b'|' => Tok::Pipe,
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(syntax(i, format!("unexpected character `{ch}`")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ExprError> {
        Ok(Self {
            toks: lex(text)?,
            pos: 0,
            end: text.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ExprError> {
        let at = self.offset();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(syntax(at, format!("expected {what}"))),
        }
    }

    fn number(&mut self) -> Result<u64, ExprError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(n),
            _ => Err(syntax(at, "expected a number")),
        }
    }

    fn finish(&self) -> Result<(), ExprError> {
        if self.pos < self.toks.len() {
            return Err(syntax(self.offset(), "unexpected trailing input"));
        }
        Ok(())
    }

    fn set_expr(&mut self) -> Result<SetExpr, ExprError> {
        let mut lhs = self.set_and()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.bump();
            lhs = SetExpr::Or(Box::new(lhs), Box::new(self.set_and()?));
        }
        Ok(lhs)
    }

    fn set_and(&mut self) -> Result<SetExpr, ExprError> {
        let mut lhs = self.set_shift()?;
        while self.peek() == Some(&Tok::Amp) {
            self.bump();
            lhs = SetExpr::And(Box::new(lhs), Box::new(self.set_shift()?));
        }
        Ok(lhs)
    }

    fn set_shift(&mut self) -> Result<SetExpr, ExprError> {
        let mut lhs = self.set_unary()?;
        loop {
            match self.peek() {
                Some(Tok::Shl) => {
                    self.bump();
                    lhs = SetExpr::ShiftLeft(Box::new(lhs), self.number()?);
                }
                Some(Tok::Shr) => {
                    self.bump();
                    lhs = SetExpr::ShiftRight(Box::new(lhs), self.number()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn set_unary(&mut self) -> Result<SetExpr, ExprError> {
        if self.peek() == Some(&Tok::Bang) {
            self.bump();
            return Ok(SetExpr::Not(Box::new(self.set_unary()?)));
        }
        self.set_atom()
    }

    fn set_atom(&mut self) -> Result<SetExpr, ExprError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::LBrace) => {
                let mut xs = Vec::new();
                if self.peek() == Some(&Tok::RBrace) {
                    self.bump();
                    return Ok(SetExpr::Finite(xs));
                }
                loop {
                    xs.push(self.number()?);
                    let at = self.offset();
                    match self.bump() {
                        Some(Tok::Comma) => {}
                        Some(Tok::RBrace) => break,
                        _ => return Err(syntax(at, "expected `,` or `}`")),
                    }
                }
                xs.sort_unstable();
                xs.dedup();
                Ok(SetExpr::Finite(xs))
            }
            Some(Tok::Num(n)) => {
                if self.peek() == Some(&Tok::Percent) {
                    self.bump();
                    let m_at = self.offset();
                    let m = self.number()?;
                    if m == 0 {
                        return Err(syntax(m_at, "modulus must be at least 1"));
                    }
                    if n >= m {
                        return Err(syntax(
                            at,
                            format!("residue {n} must be below the modulus {m}"),
                        ));
                    }
                    Ok(SetExpr::Residue(n, m))
                } else if n == 0 {
                    Ok(SetExpr::Empty)
                } else {
                    Err(syntax(
                        at,
                        "bare numbers other than 0 are not sets; use `{n}`",
                    ))
                }
            }
            Some(Tok::LBracket) => {
                let a = self.number()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.number()?;
                self.expect(Tok::RParen, "`)` closing a half-open interval")?;
                if b < a {
                    return Err(syntax(at, format!("interval [{a},{b}) is reversed")));
                }
                Ok(SetExpr::Interval(a, b))
            }
            Some(Tok::LParen) => {
                let e = self.set_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => self.named_set(&name, at),
            _ => Err(syntax(at, "expected a set")),
        }
    }

    fn named_set(&mut self, name: &str, at: usize) -> Result<SetExpr, ExprError> {
        match name {
            "N" => Ok(SetExpr::Naturals),
            "squaresblocks" => Ok(SetExpr::Predicate(PredicateName::SquaresBlocks)),
            "triadic-unit" | "triadic-val-ge" => {
                self.expect(Tok::LParen, "`(`")?;
                let arg_at = self.offset();
                let arg = self.number()?;
                self.expect(Tok::RParen, "`)`")?;
                if name == "triadic-unit" {
                    if !(1..=2).contains(&arg) {
                        return Err(syntax(arg_at, "triadic-unit takes 1 or 2"));
                    }
                    Ok(SetExpr::Predicate(PredicateName::TriadicUnit(arg as u8)))
                } else {
                    Ok(SetExpr::Predicate(PredicateName::TriadicValGe(arg)))
                }
            }
            _ => Err(syntax(at, format!("unknown set name `{name}`"))),
        }
    }

    fn pair_expr(&mut self) -> Result<PairSet, ExprError> {
        let mut lhs = self.pair_and()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.bump();
            lhs = lhs.union(self.pair_and()?);
        }
        Ok(lhs)
    }

    fn pair_and(&mut self) -> Result<PairSet, ExprError> {
        let mut lhs = self.pair_unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.bump();
            lhs = lhs.intersection(self.pair_unary()?);
        }
        Ok(lhs)
    }

    fn pair_unary(&mut self) -> Result<PairSet, ExprError> {
        if self.peek() == Some(&Tok::Bang) {
            self.bump();
            return Ok(self.pair_unary()?.complement());
        }
        let at = self.offset();
        match self.bump() {
            Some(Tok::LParen) => {
                let e = self.pair_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "delta+" => Ok(PairSet::UpperTriangle),
                "rect" => {
                    self.expect(Tok::LParen, "`(`")?;
                    let a = self.set_expr()?.eval()?;
                    self.expect(Tok::Comma, "`,`")?;
                    let b = self.set_expr()?.eval()?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(PairSet::Rect(a, b))
                }
                "sumband" | "diffband" => {
                    self.expect(Tok::LParen, "`(`")?;
                    let a = self.set_expr()?.eval()?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(if name == "sumband" {
                        PairSet::SumBand(a)
                    } else {
                        PairSet::DiffBand(a)
                    })
                }
                _ => Err(syntax(at, format!("unknown pair set `{name}`"))),
            },
            _ => Err(syntax(at, "expected a pair set")),
        }
    }
}

/// Parse a set expression into its syntax tree.
pub fn parse_expr(text: &str) -> Result<SetExpr, ExprError> {
    let mut p = Parser::new(text)?;
    let e = p.set_expr()?;
    p.finish()?;
    Ok(e)
}

/// Parse and evaluate to a canonical eventually-periodic set.
pub fn parse_set(text: &str) -> Result<SemilinearSet, ExprError> {
    parse_expr(text)?.eval()
}

/// Parse an expression that may use non-periodic catalog predicates.
pub fn parse_predicate(text: &str) -> Result<PredicateSet, ExprError> {
    parse_expr(text)?.to_predicate()
}

pub fn parse_pair_set(text: &str) -> Result<PairSet, ExprError> {
    let mut p = Parser::new(text)?;
    let e = p.pair_expr()?;
    p.finish()?;
    Ok(e)
}
