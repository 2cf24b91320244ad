//! Recursive-descent parser for polynomial and algebra-element expressions.
//!
//! Grammar:
//!
//! ```text
//! expr   := "-"? term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := base ("^" natural)?
//! base   := rational | identifier | "(" expr ")"
//! ```
//!
//! Juxtaposition is not multiplication; rationals are single tokens of the
//! form `p` or `p/q`. Element expressions reuse the same grammar with
//! identifiers `X1..Xn`, `Y1..Yn` naming the algebra generators.

use num::bigint::BigInt;
use num::Zero;

use crate::arith::Rat;
use crate::error::Error;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    Num(Rat),
    Sym { name: String, pos: usize },
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, Error> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = text[start..i].parse().unwrap();
                let mut denom = BigInt::from(1);
                if i < bytes.len() && bytes[i] == b'/' {
                    let dstart = i + 1;
                    let mut j = dstart;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == dstart {
                        return Err(Error::Syntax {
                            pos: i,
                            msg: "expected digits after '/'".to_string(),
                        });
                    }
                    denom = text[dstart..j].parse().unwrap();
                    if denom.is_zero() {
                        return Err(Error::Syntax {
                            pos: dstart,
                            msg: "zero denominator".to_string(),
                        });
                    }
                    i = j;
                }
                toks.push((Tok::Num(Rat::new(numer, denom)), start));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            other => {
                return Err(Error::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{}`", other),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), Error> {
        match self.bump() {
            Some((t, _)) if t == tok => Ok(()),
            Some((_, p)) => Err(Error::Syntax {
                pos: p,
                msg: format!("expected {}", what),
            }),
            None => Err(Error::Syntax {
                pos: self.end,
                msg: format!("expected {}, found end of input", what),
            }),
        }
    }

    fn expr(&mut self) -> Result<Ast, Error> {
        let mut node = if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            Ast::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    node = Ast::Add(Box::new(node), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    node = Ast::Sub(Box::new(node), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(node)
    }

    fn term(&mut self) -> Result<Ast, Error> {
        let mut node = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            node = Ast::Mul(Box::new(node), Box::new(self.factor()?));
        }
        Ok(node)
    }

    fn factor(&mut self) -> Result<Ast, Error> {
        let base = self.base()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let p = self.here();
            match self.bump() {
                Some((Tok::Num(r), _)) if r.denom() == &BigInt::from(1) && !num::Signed::is_negative(&r) => {
                    let e: u32 = r.numer().try_into().map_err(|_| Error::Syntax {
                        pos: p,
                        msg: "exponent too large".to_string(),
                    })?;
                    Ok(Ast::Pow(Box::new(base), e))
                }
                _ => Err(Error::Syntax {
                    pos: p,
                    msg: "expected a natural-number exponent".to_string(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Ast, Error> {
        match self.bump() {
            Some((Tok::Num(r), _)) => Ok(Ast::Num(r)),
            Some((Tok::Ident(name), pos)) => Ok(Ast::Sym { name, pos }),
            Some((Tok::LParen, _)) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Some((_, p)) => Err(Error::Syntax {
                pos: p,
                msg: "expected a number, a name, or `(`".to_string(),
            }),
            None => Err(Error::Syntax {
                pos: self.end,
                msg: "unexpected end of input".to_string(),
            }),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Ast, Error> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let node = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Syntax {
            pos: p.here(),
            msg: "trailing input".to_string(),
        });
    }
    Ok(node)
}

fn ast_to_poly(ast: &Ast, variables: &[String]) -> Result<Poly, Error> {
    let nvars = variables.len();
    match ast {
        Ast::Num(r) => Ok(Poly::constant(nvars, r.clone())),
        Ast::Sym { name, pos } => match variables.iter().position(|v| v == name) {
            Some(idx) => Ok(Poly::var(nvars, idx)),
            None => Err(Error::UnknownVariable {
                name: name.clone(),
                pos: *pos,
            }),
        },
        Ast::Neg(a) => Ok(-&ast_to_poly(a, variables)?),
        Ast::Add(a, b) => Ok(&ast_to_poly(a, variables)? + &ast_to_poly(b, variables)?),
        Ast::Sub(a, b) => Ok(&ast_to_poly(a, variables)? - &ast_to_poly(b, variables)?),
        Ast::Mul(a, b) => Ok(&ast_to_poly(a, variables)? * &ast_to_poly(b, variables)?),
        Ast::Pow(a, e) => Ok(ast_to_poly(a, variables)?.pow(*e)),
    }
}

/// Parses `text` as a polynomial in the named variables.
pub fn parse_poly(text: &str, variables: &[String]) -> Result<Poly, Error> {
    ast_to_poly(&parse_expr(text)?, variables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn vars(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_difference_of_variables() {
        let vs = vars(&["h1", "h2"]);
        let p = parse_poly("h2-h1", &vs).unwrap();
        let expected = &Poly::var(2, 1) - &Poly::var(2, 0);
        assert_eq!(p, expected);
    }

    #[test]
    fn parses_u2_minus_u() {
        let vs = vars(&["u"]);
        let p = parse_poly("u^2-u", &vs).unwrap();
        let u = Poly::var(1, 0);
        assert_eq!(p, &(&u * &u) - &u);
    }

    #[test]
    fn parses_zero() {
        let vs = vars(&["u", "v"]);
        assert!(parse_poly("0", &vs).unwrap().is_zero());
    }

    #[test]
    fn parses_rationals_and_parens() {
        let vs = vars(&["u"]);
        let p = parse_poly("1/2*(u+1) - (-3/2)", &vs).unwrap();
        let u = Poly::var(1, 0);
        assert_eq!(p, &u.scale(&rat(1, 2)) + &Poly::constant(1, rat_int(2)));
    }

    #[test]
    fn rejects_unknown_variable_with_position() {
        let vs = vars(&["u"]);
        match parse_poly("u + w", &vs) {
            Err(Error::UnknownVariable { name, pos }) => {
                assert_eq!(name, "w");
                assert_eq!(pos, 4);
            }
            other => panic!("expected UnknownVariable, got {:?}", other),
        }
    }

    #[test]
    fn rejects_bad_syntax_with_position() {
        let vs = vars(&["u"]);
        assert!(matches!(
            parse_poly("u + ", &vs),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("u ^ -2", &vs),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("u u", &vs),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_poly("3/", &vs),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn print_parse_round_trip() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let vs = vars(&["u", "v", "w"]);
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..200 {
            let mut p = Poly::zero(3);
            for _ in 0..rng.gen_range(0..5) {
                let m = crate::poly::Monomial(vec![
                    rng.gen_range(0..4),
                    rng.gen_range(0..3),
                    rng.gen_range(0..3),
                ]);
                p.add_term(m, rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)));
            }
            let printed = p.format(&vs);
            let reparsed = parse_poly(&printed, &vs).unwrap();
            assert_eq!(reparsed, p, "round trip failed for `{}`", printed);
        }
    }
}
