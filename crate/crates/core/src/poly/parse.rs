//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" INT)?
//! atom   := INT ("/" INT)? | "x" INT | "u" | "(" expr ")"
//! ```
//!
//! `^` binds tightest, so `-x1^2` is `-(x1^2)`. Juxtaposition is an error.
//! `u` names the generator of an extension field. When `nvars == 1` a bare
//! `x` is accepted for `x1`.

use alloc::format;
use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::MultiPoly;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

const MAX_EXPONENT: u32 = 1 << 20;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(usize),
    Gen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    /// Next token and its starting byte offset.
    fn next(&mut self) -> Result<(Tok, usize)> {
        self.skip_ws();
        let start = self.pos;
        let Some(&b) = self.src.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        let tok = match b {
            b'0'..=b'9' => {
                let d = self.digits();
                Tok::Int(d.parse().expect("nonempty digit run"))
            }
            b'x' => {
                self.pos += 1;
                let d = self.digits();
                if d.is_empty() {
                    Tok::Var(0)
                } else {
                    let i: usize = d
                        .parse()
                        .ok()
                        .filter(|&i| i >= 1)
                        .ok_or_else(|| Error::Parse { position: start, message: format!("bad variable name x{d}") })?;
                    Tok::Var(i)
                }
            }
            b'u' => {
                self.pos += 1;
                Tok::Gen
            }
            b'+' | b'-' | b'*' | b'/' | b'^' | b'(' | b')' => {
                self.pos += 1;
                match b {
                    b'+' => Tok::Plus,
                    b'-' => Tok::Minus,
                    b'*' => Tok::Star,
                    b'/' => Tok::Slash,
                    b'^' => Tok::Caret,
                    b'(' => Tok::LParen,
                    _ => Tok::RParen,
                }
            }
            _ => {
                let ch = core::str::from_utf8(&self.src[start..])
                    .ok()
                    .and_then(|s| s.chars().next())
                    .map_or_else(|| "?".to_string(), |c| c.to_string());
                return Err(Error::Parse { position: start, message: format!("unexpected character `{ch}`") });
            }
        };
        // Identifiers must not run into letters or digits, e.g. `x1y` or `u2`.
        if matches!(tok, Tok::Var(_) | Tok::Gen | Tok::Int(_))
            && self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric())
        {
            return Err(Error::Parse {
                position: self.pos,
                message: "implicit multiplication is not allowed; use `*`".into(),
            });
        }
        Ok((tok, start))
    }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    tok: Tok,
    at: usize,
    nvars: usize,
    field: &'a FieldSpec,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, nvars: usize, field: &'a FieldSpec) -> Result<Self> {
        let mut lex = Lexer { src: text.as_bytes(), pos: 0 };
        let (tok, at) = lex.next()?;
        Ok(Self { lex, tok, at, nvars, field })
    }

    fn bump(&mut self) -> Result<()> {
        let (tok, at) = self.lex.next()?;
        self.tok = tok;
        self.at = at;
        Ok(())
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.at, message: message.into() })
    }

    fn constant(&self, c: Scalar) -> MultiPoly {
        MultiPoly::constant(self.field, self.nvars, c)
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.tok {
                Tok::Plus => {
                    self.bump()?;
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.tok {
                Tok::Star => {
                    self.bump()?;
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => return self.err("`/` is only allowed between integer literals"),
                Tok::Int(_) | Tok::Var(_) | Tok::Gen | Tok::LParen => {
                    return self.err("implicit multiplication is not allowed; use `*`")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.tok == Tok::Minus {
            self.bump()?;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.tok != Tok::Caret {
            return Ok(base);
        }
        self.bump()?;
        let Tok::Int(e) = &self.tok else {
            return self.err("exponent must be a nonnegative integer literal");
        };
        let e = match e.to_u32().filter(|&e| e <= MAX_EXPONENT) {
            Some(e) => e,
            None => return self.err(format!("exponent exceeds {MAX_EXPONENT}")),
        };
        self.bump()?;
        if self.tok == Tok::Caret {
            return self.err("chained `^` is ambiguous; use parentheses");
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.tok.clone() {
            Tok::Int(num) => {
                let at = self.at;
                self.bump()?;
                if self.tok != Tok::Slash {
                    return Ok(self.constant(self.field.from_bigint(&num)));
                }
                self.bump()?;
                let Tok::Int(den) = self.tok.clone() else {
                    return self.err("expected an integer denominator");
                };
                self.bump()?;
                match self.field.from_ratio(&num, &den) {
                    Ok(c) => Ok(self.constant(c)),
                    Err(_) => Err(Error::NotInField(format!("{num}/{den} at byte {at}"))),
                }
            }
            Tok::Var(i) => {
                let at = self.at;
                let index = if i == 0 {
                    if self.nvars != 1 {
                        return Err(Error::Parse {
                            position: at,
                            message: "bare `x` is only allowed for univariate input".into(),
                        });
                    }
                    1
                } else {
                    i
                };
                if index > self.nvars {
                    return Err(Error::VariableOutOfRange { index, nvars: self.nvars });
                }
                self.bump()?;
                Ok(MultiPoly::var(self.field, self.nvars, index - 1))
            }
            Tok::Gen => {
                let g = self.field.generator().map_err(|_| Error::NotInField(format!("u (in {})", self.field)))?;
                self.bump()?;
                Ok(self.constant(g))
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return self.err("expected `)`");
                }
                self.bump()?;
                Ok(inner)
            }
            Tok::End => self.err("unexpected end of input"),
            other => self.err(format!("unexpected token {}", describe(&other))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Slash => "`/`",
        Tok::Caret => "`^`",
        Tok::RParen => "`)`",
        _ => "token",
    }
}

pub fn parse_poly(text: &str, nvars: usize, field: &FieldSpec) -> Result<MultiPoly> {
    let mut p = Parser::new(text, nvars, field)?;
    let out = p.expr()?;
    if p.tok != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

/// A constant expression such as `3`, `-1/2` or `u+1`.
pub fn parse_constant(text: &str, field: &FieldSpec) -> Result<Scalar> {
    let p = parse_poly(text, 0, field)?;
    Ok(p.coeff(&[]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_carry_positions() {
        let q = FieldSpec::rationals();
        assert!(matches!(parse_poly("x1 + * x2", 2, &q), Err(Error::Parse { position: 5, .. })));
        assert!(matches!(parse_poly("2x1", 2, &q), Err(Error::Parse { position: 1, .. })));
        assert!(matches!(parse_poly("x1 x2", 2, &q), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(parse_poly("(x1", 2, &q), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(parse_poly("x3", 2, &q), Err(Error::VariableOutOfRange { index: 3, nvars: 2 })));
        assert!(matches!(parse_poly("x0", 2, &q), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("x1 # 2", 2, &q), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(parse_poly("", 2, &q), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(parse_poly("x1^x2", 2, &q), Err(Error::Parse { .. })));
    }

    #[test]
    fn coefficients_must_be_in_field() {
        let f = FieldSpec::prime(5).unwrap();
        assert!(matches!(parse_poly("1/5*x1", 1, &f), Err(Error::NotInField(_))));
        assert!(matches!(parse_poly("u*x1", 1, &f), Err(Error::NotInField(_))));
        assert_eq!(parse_poly("1/2", 1, &f).unwrap().coeff(&[0]), f.from_i64(3));
        assert!(matches!(parse_poly("1/0", 1, &FieldSpec::rationals()), Err(Error::NotInField(_))));
    }

    #[test]
    fn precedence() {
        let q = FieldSpec::rationals();
        let a = parse_poly("-x1^2 + 2*x1*x2^2", 2, &q).unwrap();
        assert_eq!(a.coeff(&[2, 0]), q.from_i64(-1));
        assert_eq!(a.coeff(&[1, 2]), q.from_i64(2));
        assert_eq!(parse_poly("x^3 - x", 1, &q).unwrap().coeff(&[3]), q.one());
        assert_eq!(parse_poly("(x1+1)^2", 1, &q).unwrap().coeff(&[1]), q.from_i64(2));
    }

    #[test]
    fn constants() {
        let g4 = FieldSpec::galois(4).unwrap();
        assert_eq!(parse_constant("u*u", &g4).unwrap().to_string(), "u+1");
        assert_eq!(parse_constant("-3/4", &FieldSpec::rationals()).unwrap().to_string(), "-3/4");
    }
}
