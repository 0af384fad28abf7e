//! Recursive-descent parser for the polynomial grammar (see `docs/grammar.md`).

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{Poly, Rational, Ring};
use crate::error::{Error, Result};

pub const EXPONENT_CAP: u32 = 255;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err(line: usize, column: usize, kind: impl Into<String>) -> Error {
    Error::Parse { line, column, kind: kind.into() }
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                s.push(d);
                chars.next();
                column += 1;
            }
            let n: BigInt = s.parse().expect("digits");
            out.push(Token { tok: Tok::Int(n), line: l, column: col });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                s.push(d);
                chars.next();
                column += 1;
            }
            out.push(Token { tok: Tok::Ident(s), line: l, column: col });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(err(l, col, format!("unexpected character '{other}'"))),
        };
        chars.next();
        column += 1;
        out.push(Token { tok, line: l, column: col });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    let t = self.peek();
                    return Err(err(t.line, t.column, "implicit multiplication is not allowed; use '*'"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek().tok {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        let e = match t.tok {
            Tok::Int(n) => n,
            Tok::Minus => return Err(err(t.line, t.column, "negative exponent")),
            _ => return Err(err(t.line, t.column, "exponent must be a non-negative integer")),
        };
        let e: u32 = match u32::try_from(&e) {
            Ok(v) if v <= EXPONENT_CAP => v,
            _ => return Err(err(t.line, t.column, format!("exponent {e} exceeds the cap {EXPONENT_CAP}"))),
        };
        if self.peek().tok == Tok::Caret {
            let t = self.peek();
            return Err(err(t.line, t.column, "chained '^' is ambiguous; use parentheses"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Poly> {
        let t = self.bump();
        match t.tok {
            Tok::Int(n) => {
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    let d = self.bump();
                    let Tok::Int(den) = d.tok else {
                        return Err(err(d.line, d.column, "expected an integer denominator"));
                    };
                    if den.is_zero() {
                        return Err(err(d.line, d.column, "division by zero"));
                    }
                    return Ok(Poly::constant(self.ring, Rational::new(n, den)));
                }
                Ok(Poly::constant(self.ring, Rational::from_integer(n)))
            }
            Tok::Ident(name) => match self.ring.index_of(&name) {
                Some(i) => Ok(Poly::var(self.ring, i)),
                None => Err(err(t.line, t.column, format!("unknown identifier '{name}'"))),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(err(close.line, close.column, "expected ')'"));
                }
                Ok(inner)
            }
            Tok::End => Err(err(t.line, t.column, "unexpected end of input")),
            other => Err(err(t.line, t.column, format!("unexpected token {}", describe(&other)))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "'+'",
        Tok::Minus => "'-'",
        Tok::Star => "'*'",
        Tok::Slash => "'/'",
        Tok::Caret => "'^'",
        Tok::LParen => "'('",
        Tok::RParen => "')'",
        Tok::Int(_) => "number",
        Tok::Ident(_) => "identifier",
        Tok::End => "end of input",
    }
}

/// Parses `src` as a polynomial over `ring`.
pub fn parse_poly(src: &str, ring: &Ring) -> Result<Poly> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, ring };
    let out = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(err(t.line, t.column, format!("unexpected {}", describe(&t.tok))));
    }
    Ok(out)
}

/// Canonical text form; `parse_poly(&print_poly(p), p.ring()) == p`.
pub fn print_poly(p: &Poly) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> Ring {
        Ring::new(&["x", "y", "z"]).unwrap()
    }

    #[test]
    fn expands_products() {
        let p = parse_poly("x*y*(x + y)", &xyz()).unwrap();
        assert_eq!(print_poly(&p), "x^2*y + x*y^2");
        assert_eq!(parse_poly("x^2 + y^2", &xyz()).unwrap().nterms(), 2);
    }

    #[test]
    fn rationals_and_signs() {
        let p = parse_poly("-3/2*x + -(-y)", &xyz()).unwrap();
        assert_eq!(print_poly(&p), "-3/2*x + y");
        assert_eq!(print_poly(&parse_poly("(x - x)", &xyz()).unwrap()), "0");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_poly("x^-1", &xyz()).unwrap_err();
        assert_eq!(e, Error::Parse { line: 1, column: 3, kind: "negative exponent".into() });
        let e = parse_poly("2x", &xyz()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 2, .. }));
        let e = parse_poly("x +\n  w", &xyz()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 3, .. }), "{e}");
        assert!(parse_poly("x^256", &xyz()).is_err());
        assert!(parse_poly("x^2^2", &xyz()).is_err());
        assert!(parse_poly("x $ y", &xyz()).is_err());
        assert!(parse_poly("1/0", &xyz()).is_err());
        assert!(parse_poly("(x + y", &xyz()).is_err());
    }
}
