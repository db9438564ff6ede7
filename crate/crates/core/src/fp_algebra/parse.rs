//! Text syntax: rings as `F7[x,y]`, polynomials with `+ - * ^` and
//! parentheses, ideals as comma-separated polynomial lists.

use super::ideal::Ideal;
use super::poly::Poly;
use super::ring::{MonomialOrder, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Int(chars[start..i].iter().collect())
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if "+-*^(),[]".contains(c) {
            i += 1;
            Tok::Sym(c)
        } else {
            return Err(perr(l0, c0, format!("unexpected character `{c}`")));
        };
        column += i - start;
        out.push(Token {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Token {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    ring: Option<&'a Ring>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, message: impl Into<String>) -> Error {
        let t = self.peek();
        perr(t.line, t.column, message)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.peek().tok == Tok::Sym(c) {
            self.next();
            Ok(())
        } else {
            Err(self.err_here(format!("expected `{c}`")))
        }
    }

    fn ring(&self) -> &'a Ring {
        self.ring.expect("polynomial parsing needs a ring")
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Sym('+') => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Tok::Sym('-') => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek().tok == Tok::Sym('*') {
            self.next();
            let rhs = self.factor()?;
            acc = acc
                .checked_mul(&rhs)
                .map_err(|e| self.err_here(e.to_string()))?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        match self.peek().tok {
            Tok::Sym('-') => {
                self.next();
                Ok(self.factor()?.neg())
            }
            Tok::Sym('+') => {
                self.next();
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Sym('^') {
            return Ok(base);
        }
        self.next();
        let t = self.next();
        let k = match &t.tok {
            Tok::Int(digits) => digits
                .parse::<u64>()
                .map_err(|_| perr(t.line, t.column, "exponent too large"))?,
            _ => {
                return Err(perr(
                    t.line,
                    t.column,
                    "malformed exponent: expected a nonnegative integer",
                ))
            }
        };
        base.checked_pow(k)
            .map_err(|e| perr(t.line, t.column, e.to_string()))
    }

    fn atom(&mut self) -> Result<Poly> {
        let ring = self.ring();
        let t = self.next();
        match &t.tok {
            Tok::Int(digits) => {
                let p = ring.p() as u128;
                let c = digits
                    .bytes()
                    .fold(0u128, |acc, d| (acc * 10 + (d - b'0') as u128) % p);
                Ok(Poly::constant(ring, c as i128))
            }
            Tok::Ident(name) => match ring.var_names().iter().position(|v| v == name) {
                Some(i) => Ok(Poly::var(ring, i)),
                None => Err(perr(
                    t.line,
                    t.column,
                    format!("unknown identifier `{name}`"),
                )),
            },
            Tok::Sym('(') => {
                let inner = self.expr()?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            Tok::End => Err(perr(t.line, t.column, "unexpected end of input")),
            Tok::Sym(c) => Err(perr(t.line, t.column, format!("unexpected `{c}`"))),
        }
    }
}

/// Parses `F<p>[v1,...,vn]`.
pub fn parse_ring(text: &str, order: MonomialOrder) -> Result<Ring> {
    let toks = lex(text)?;
    let mut ps = Parser {
        toks,
        pos: 0,
        ring: None,
    };
    let head = ps.next();
    let p = match &head.tok {
        Tok::Ident(s)
            if s.len() > 1 && s.starts_with('F') && s[1..].bytes().all(|b| b.is_ascii_digit()) =>
        {
            s[1..]
                .parse::<u64>()
                .map_err(|_| perr(head.line, head.column + 1, "prime too large"))?
        }
        _ => return Err(perr(head.line, head.column, "expected `F<p>`")),
    };
    ps.expect_sym('[')?;
    let mut names = Vec::new();
    loop {
        let t = ps.next();
        match &t.tok {
            Tok::Ident(s) => names.push(s.clone()),
            _ => return Err(perr(t.line, t.column, "expected a variable name")),
        }
        match ps.peek().tok {
            Tok::Sym(',') => {
                ps.next();
            }
            Tok::Sym(']') => {
                ps.next();
                break;
            }
            _ => return Err(ps.err_here("expected `,` or `]`")),
        }
    }
    if ps.peek().tok != Tok::End {
        return Err(ps.err_here("trailing input after ring"));
    }
    Ring::new(p, &names, order).map_err(|e| match e {
        Error::InvalidRing(m) => perr(head.line, head.column, m),
        other => other,
    })
}

pub fn parse_poly(ring: &Ring, text: &str) -> Result<Poly> {
    let mut ps = Parser {
        toks: lex(text)?,
        pos: 0,
        ring: Some(ring),
    };
    let f = ps.expr()?;
    if ps.peek().tok != Tok::End {
        return Err(ps.err_here("unexpected trailing input"));
    }
    Ok(f)
}

/// Parses a comma-separated generator list; zero generators are dropped.
pub fn parse_ideal(ring: &Ring, text: &str) -> Result<Ideal> {
    let mut ps = Parser {
        toks: lex(text)?,
        pos: 0,
        ring: Some(ring),
    };
    let mut gens = vec![ps.expr()?];
    loop {
        match ps.peek().tok {
            Tok::Sym(',') => {
                ps.next();
                gens.push(ps.expr()?);
            }
            Tok::End => break,
            _ => return Err(ps.err_here("expected `,` or end of input")),
        }
    }
    Ideal::new(ring, gens)
}
