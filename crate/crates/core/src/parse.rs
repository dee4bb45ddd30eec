//! Text grammar for polynomials and ideal files.
//!
//! Variables are `z1..zm`, coefficients are integers or rationals
//! (`3`, `-3/4`), `i` is the imaginary unit, and the operators are
//! `+ - * ^` with explicit `*` (no juxtaposition):
//! `z1^2 - 2*z1*z2 + 1/4*z2^3`.
//!
//! Ideal files start with a header line `dim m` followed by one
//! generator per line; `#` starts a comment.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ideal::IdealSpec;
use crate::multiindex::MultiIndex;
use crate::poly::Poly;
use crate::scalar::{gr, gri, GaussRat, Rat};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Imag,
    Nat(BigInt),
    Var(usize), // zero-based variable index
}

fn lex(input: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let b = bytes[pos];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => pos += 1,
            b'+' => { out.push((pos, Token::Plus)); pos += 1; }
            b'-' => { out.push((pos, Token::Minus)); pos += 1; }
            b'*' => { out.push((pos, Token::Star)); pos += 1; }
            b'^' => { out.push((pos, Token::Caret)); pos += 1; }
            b'/' => { out.push((pos, Token::Slash)); pos += 1; }
            b'(' => { out.push((pos, Token::LParen)); pos += 1; }
            b')' => { out.push((pos, Token::RParen)); pos += 1; }
            b'i' => { out.push((pos, Token::Imag)); pos += 1; }
            b'z' => {
                let start = pos;
                pos += 1;
                let digits_start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == digits_start {
                    return Err(Error::Parse { pos: start, msg: "variable needs an index, e.g. z1".into() });
                }
                let idx: usize = input[digits_start..pos].parse().map_err(|_| Error::Parse {
                    pos: digits_start,
                    msg: "variable index too large".into(),
                })?;
                if idx == 0 {
                    return Err(Error::Parse { pos: start, msg: "variables are numbered from z1".into() });
                }
                out.push((start, Token::Var(idx - 1)));
            }
            b'0'..=b'9' => {
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let n: BigInt = input[start..pos].parse().expect("digits parse as BigInt");
                out.push((start, Token::Nat(n)));
            }
            _ => {
                return Err(Error::Parse {
                    pos,
                    msg: format!("unexpected character `{}`", &input[pos..].chars().next().unwrap()),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    cursor: usize,
    dim: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.cursor).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|(_, t)| t.clone());
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<()> {
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(Error::Parse { pos: self.pos(), msg: format!("expected {what}") }),
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut negate = false;
        match self.peek() {
            Some(Token::Minus) => { self.bump(); negate = true; }
            Some(Token::Plus) => { self.bump(); }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Token::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.bump();
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.primary()?;
        if let Some(Token::Caret) = self.peek() {
            self.bump();
            let pos = self.pos();
            match self.bump() {
                Some(Token::Nat(n)) => {
                    let e: u32 = (&n).try_into().map_err(|_| Error::Parse {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    let mut acc = Poly::one(self.dim);
                    for _ in 0..e {
                        acc = &acc * &base;
                    }
                    Ok(acc)
                }
                _ => Err(Error::Parse { pos, msg: "expected a non-negative integer exponent".into() }),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Poly> {
        let pos = self.pos();
        match self.bump() {
            Some(Token::Nat(n)) => {
                let mut value = Rat::from_integer(n);
                if let Some(Token::Slash) = self.peek() {
                    self.bump();
                    let dpos = self.pos();
                    match self.bump() {
                        Some(Token::Nat(d)) if !d.is_zero() => {
                            value /= Rat::from_integer(d);
                        }
                        Some(Token::Nat(_)) => {
                            return Err(Error::Parse { pos: dpos, msg: "zero denominator".into() })
                        }
                        _ => {
                            return Err(Error::Parse {
                                pos: dpos,
                                msg: "expected an integer denominator after `/`".into(),
                            })
                        }
                    }
                }
                Ok(Poly::constant(self.dim, gr(value)))
            }
            Some(Token::Imag) => Ok(Poly::constant(self.dim, gri(Rat::zero(), Rat::one()))),
            Some(Token::Var(idx)) => {
                if idx >= self.dim {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("variable z{} exceeds dimension {}", idx + 1, self.dim),
                    });
                }
                Ok(Poly::monomial(self.dim, MultiIndex::unit(self.dim, idx), GaussRat::one()))
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "closing parenthesis")?;
                Ok(inner)
            }
            _ => Err(Error::Parse { pos, msg: "expected a coefficient, variable, `i` or `(`".into() }),
        }
    }
}

/// Parses a polynomial in `dim` variables from the text grammar.
pub fn parse_poly(input: &str, dim: usize) -> Result<Poly> {
    let tokens = lex(input)?;
    let mut parser = Parser { tokens: &tokens, cursor: 0, dim, end: input.len() };
    let poly = parser.expr()?;
    if parser.cursor != tokens.len() {
        return Err(Error::Parse { pos: parser.pos(), msg: "trailing input".into() });
    }
    Ok(poly)
}

/// Parses a constant scalar such as `-3/4` or `1/2+3/4*i`.
pub fn parse_scalar(input: &str) -> Result<GaussRat> {
    let p = parse_poly(input, 0)?;
    Ok(p.coeff(&MultiIndex::zero(0)))
}

/// Parses an ideal file: `dim m` header, one generator per line,
/// `#` comments and blank lines ignored.
pub fn parse_ideal_file(input: &str) -> Result<IdealSpec> {
    let mut dim: Option<usize> = None;
    let mut gens = Vec::new();
    let mut offset = 0usize;
    for line in input.lines() {
        let line_start = offset;
        offset += line.len() + 1;
        let content = match line.find('#') {
            Some(k) => &line[..k],
            None => line,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        match dim {
            None => {
                let rest = content.strip_prefix("dim").ok_or(Error::Parse {
                    pos: line_start,
                    msg: "first line must be `dim m`".into(),
                })?;
                let m: usize = rest.trim().parse().map_err(|_| Error::Parse {
                    pos: line_start,
                    msg: "invalid dimension in header".into(),
                })?;
                if m == 0 {
                    return Err(Error::Parse { pos: line_start, msg: "dimension must be positive".into() });
                }
                dim = Some(m);
            }
            Some(m) => {
                let p = parse_poly(content, m).map_err(|e| match e {
                    Error::Parse { pos, msg } => Error::Parse { pos: line_start + pos, msg },
                    other => other,
                })?;
                gens.push(p);
            }
        }
    }
    let dim = dim.ok_or(Error::Parse { pos: 0, msg: "missing `dim m` header".into() })?;
    IdealSpec::new(dim, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::fock_inner;
    use crate::scalar::{gr_frac, gr_int};

    #[test]
    fn parses_the_reference_example() {
        let p = parse_poly("z1^2 - 2*z1*z2 + 1/4*z2^3", 2).unwrap();
        let z1 = Poly::var(2, 0).unwrap();
        let z2 = Poly::var(2, 1).unwrap();
        let expect = &(&(&z1 * &z1) - &(&z1 * &z2).scale(&gr_int(2)))
            + &(&(&z2 * &z2) * &z2).scale(&gr_frac(1, 4));
        assert_eq!(p, expect);
    }

    #[test]
    fn parses_imaginary_and_parens() {
        let p = parse_poly("(1+i)*z1 - i*z2", 2).unwrap();
        let q = parse_poly("z1 + i*z1 - i*z2", 2).unwrap();
        assert_eq!(p, q);
        let norm = fock_inner(&p, &p).unwrap();
        assert_eq!(norm, gr_int(3)); // |1+i|^2 + |-i|^2 = 2 + 1
    }

    #[test]
    fn display_roundtrip() {
        for s in [
            "z1+z2",
            "1/4*z1^2-1/2*z1*z2+1/4*z2^2",
            "(1+i)*z1-3/4*i*z2+2",
            "0",
            "-z1^3+z2",
            "1/2-i",
        ] {
            let p = parse_poly(s, 2).unwrap();
            let q = parse_poly(&p.to_string(), 2).unwrap();
            assert_eq!(p, q, "roundtrip failed for {s}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly("z0", 2).is_err());
        assert!(parse_poly("z3", 2).is_err());
        assert!(parse_poly("z1 z2", 2).is_err()); // juxtaposition
        assert!(parse_poly("z1^-1", 2).is_err());
        assert!(parse_poly("1/0", 2).is_err());
        assert!(parse_poly("z1/2", 2).is_err());
        assert!(parse_poly("q", 2).is_err());
        assert!(parse_poly("", 2).is_err());
    }

    #[test]
    fn scalar_parsing() {
        assert_eq!(parse_scalar("-3/4").unwrap(), gr_frac(-3, 4));
        assert_eq!(
            parse_scalar("1/2+3/4*i").unwrap(),
            crate::scalar::gri(crate::scalar::rat(1, 2), crate::scalar::rat(3, 4))
        );
        assert!(parse_scalar("z1").is_err());
    }

    #[test]
    fn ideal_file_parsing() {
        let text = "# sample\n dim 2\nz1 + z2\nz2^2 # trailing comment\n\n";
        let ideal = parse_ideal_file(text).unwrap();
        assert_eq!(ideal.dim(), 2);
        assert_eq!(ideal.generators().len(), 2);
        assert!(ideal.homogeneous());
        assert!(parse_ideal_file("z1\n").is_err());
        assert!(parse_ideal_file("dim 2\n").is_err()); // no generators
    }
}
