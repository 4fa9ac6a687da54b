//! Text grammar for polynomials.
//!
//! ```text
//! expr   := [+|-] term { (+|-) term }
//! term   := factor { [*] factor }
//! factor := atom [ ^ integer ]
//! atom   := integer [ / integer ] | name | ( expr )
//! ```
//!
//! Names match `[A-Za-z][A-Za-z0-9]*`.

use num_bigint::BigInt;
use num_traits::One;

use super::{natural_cmp, Poly, VarSet};
use crate::error::{Error, Result};
use crate::exact::Rat;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(src[start..i].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < b.len() && b[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Name(src[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character `{}`", src[i..].chars().next().unwrap()),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    vars: &'a VarSet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.here(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.vars);
        let mut sign_neg = false;
        match self.peek() {
            Some(Tok::Plus) => self.pos += 1,
            Some(Tok::Minus) => {
                sign_neg = true;
                self.pos += 1
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if sign_neg { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(Tok::Plus) => sign_neg = false,
                Some(Tok::Minus) => sign_neg = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Tok::Int(_) | Tok::Name(_) | Tok::LParen) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let Some(Tok::Int(e)) = self.peek().cloned() else {
                return self.err("expected a nonnegative integer exponent");
            };
            let e: u32 = match u32::try_from(e) {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            };
            self.pos += 1;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut d = BigInt::one();
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let Some(Tok::Int(q)) = self.peek().cloned() else {
                        return self.err("expected a denominator");
                    };
                    if q == BigInt::from(0) {
                        return self.err("zero denominator");
                    }
                    d = q;
                    self.pos += 1;
                }
                Ok(Poly::constant(self.vars, Rat::new(n, d)))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                let i = self.vars.require(&name)?;
                Ok(Poly::var(self.vars, i))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            _ => self.err("expected a number, a variable or `(`"),
        }
    }
}

/// Parses over the variables named in `src`, in natural order.
pub fn parse_poly(src: &str) -> Result<Poly> {
    let toks = lex(src)?;
    let mut names: Vec<String> = toks
        .iter()
        .filter_map(|(_, t)| match t {
            Tok::Name(n) => Some(n.clone()),
            _ => None,
        })
        .collect();
    names.sort_by(|a, b| natural_cmp(a, b));
    names.dedup();
    let vars = VarSet::new(names)?;
    run(src, &toks, &vars)
}

/// Parses over a fixed variable set; unknown names are errors.
pub fn parse_poly_in(src: &str, vars: &VarSet) -> Result<Poly> {
    let toks = lex(src)?;
    run(src, &toks, vars)
}

fn run(src: &str, toks: &[(usize, Tok)], vars: &VarSet) -> Result<Poly> {
    if toks.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty input".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
        vars,
    };
    let out = p.expr()?;
    if p.pos != toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::poly::Monomial;

    #[test]
    fn parses_grammar_example() {
        let f = parse_poly("x0^2*x1 + 1/6*x0^3*x2 + x1").unwrap();
        assert_eq!(f.vars().names(), &["x0", "x1", "x2"]);
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.coeff(&Monomial::new(vec![3, 0, 1])), ratio(1, 6));
    }

    #[test]
    fn juxtaposition_parentheses_and_powers() {
        let a = parse_poly("2x1 x2 - (x1 + x2)^2").unwrap();
        let b = parse_poly("-x1^2 - x2^2").unwrap();
        assert_eq!(a, b);
        let c = parse_poly("(x0^3+x1^3)^2").unwrap();
        assert_eq!(c.to_string(), "x0^6 + 2*x0^3*x1^3 + x1^6");
    }

    #[test]
    fn round_trip() {
        for s in ["x0^2*x1 + 1/6*x0^3*x2 + x1", "-3/7*a^2*b + b - 5", "0", "1/2"] {
            let f = parse_poly(s).unwrap();
            let g = parse_poly_in(&f.to_string(), f.vars()).unwrap();
            assert_eq!(f, g, "{s}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_poly("x1 +"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_poly("x1 # 2"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse_poly("1/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("(x1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(""), Err(Error::Parse { .. })));
        let v = VarSet::new(["x1"]).unwrap();
        assert!(matches!(parse_poly_in("x2", &v), Err(Error::UnknownVariable(_))));
    }
}
