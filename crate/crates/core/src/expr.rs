//! Parser for the canonical text form of differential polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | atom ('^' integer)?
//! atom   := integer ('/' integer)? | 'ep' | 'I' | name ('_' integer)? | '(' expr ')'
//! ```

use crate::diffpoly::{DiffPoly, Ring};
use crate::error::{Error, Result};
use crate::scalar::{Gauss, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(num_bigint::BigInt),
    Ident(String),
    Jet(String, u32),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn location(&self, offset: usize) -> (usize, usize) {
        let before = &self.src[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
        (line, column)
    }

    fn error(&self, offset: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.location(offset);
        Error::Parse { line, column, message: message.into() }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |c| c.0)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn next(&mut self) -> Result<(usize, Tok)> {
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_whitespace()) {
            self.pos += 1;
        }
        let start = self.offset();
        let Some(&(_, c)) = self.chars.get(self.pos) else {
            return Ok((start, Tok::End));
        };
        if c.is_ascii_digit() {
            let s = self.digits();
            return Ok((start, Tok::Int(s.parse().expect("digits"))));
        }
        if c.is_ascii_alphabetic() {
            let mut name = String::new();
            while let Some(&(_, c)) = self.chars.get(self.pos) {
                if !c.is_ascii_alphanumeric() {
                    break;
                }
                name.push(c);
                self.pos += 1;
            }
            if self.chars.get(self.pos).is_some_and(|c| c.1 == '_') {
                self.pos += 1;
                let s = self.digits();
                let order = s.parse().map_err(|_| self.error(self.offset(), "expected derivative order after '_'"))?;
                return Ok((start, Tok::Jet(name, order)));
            }
            return Ok((start, Tok::Ident(name)));
        }
        if "+-*/^()".contains(c) {
            self.pos += 1;
            return Ok((start, Tok::Sym(c)));
        }
        Err(self.error(start, format!("unexpected character '{c}'")))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: (usize, Tok),
    ring: Ring,
    trunc: u32,
}

impl<'a> Parser<'a> {
    fn advance(&mut self) -> Result<(usize, Tok)> {
        let next = self.lexer.next()?;
        Ok(std::mem::replace(&mut self.peeked, next))
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        let (at, tok) = self.advance()?;
        if tok == Tok::Sym(c) {
            Ok(())
        } else {
            Err(self.lexer.error(at, format!("expected '{c}'")))
        }
    }

    fn constant(&self, c: Gauss) -> DiffPoly {
        DiffPoly::constant(&self.ring, self.trunc, c)
    }

    fn expr(&mut self) -> Result<DiffPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peeked.1 {
                Tok::Sym('+') => {
                    self.advance()?;
                    acc = &acc + &self.term()?;
                }
                Tok::Sym('-') => {
                    self.advance()?;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<DiffPoly> {
        let mut acc = self.factor()?;
        while self.peeked.1 == Tok::Sym('*') {
            self.advance()?;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<DiffPoly> {
        if self.peeked.1 == Tok::Sym('-') {
            self.advance()?;
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peeked.1 == Tok::Sym('^') {
            self.advance()?;
            let (at, tok) = self.advance()?;
            let Tok::Int(n) = tok else {
                return Err(self.lexer.error(at, "expected a nonnegative integer exponent"));
            };
            let n: u32 = n.try_into().map_err(|_| self.lexer.error(at, "exponent too large"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<DiffPoly> {
        let (at, tok) = self.advance()?;
        match tok {
            Tok::Int(n) => {
                let mut value = Rational::from_integer(n);
                if self.peeked.1 == Tok::Sym('/') {
                    self.advance()?;
                    let (at, tok) = self.advance()?;
                    let Tok::Int(d) = tok else {
                        return Err(self.lexer.error(at, "expected an integer denominator"));
                    };
                    if d == 0.into() {
                        return Err(self.lexer.error(at, "zero denominator"));
                    }
                    value /= Rational::from_integer(d);
                }
                Ok(self.constant(Gauss::real(value)))
            }
            Tok::Ident(name) if name == "ep" => Ok(DiffPoly::eps(&self.ring, self.trunc, 1)),
            Tok::Ident(name) if name == "I" => Ok(self.constant(Gauss::i())),
            Tok::Ident(name) => self.variable(&name, 0),
            Tok::Jet(name, order) => self.variable(&name, order),
            Tok::Sym('(') => {
                let inner = self.expr()?;
                self.expect_sym(')')?;
                Ok(inner)
            }
            Tok::End => Err(self.lexer.error(at, "unexpected end of input")),
            Tok::Sym(c) => Err(self.lexer.error(at, format!("unexpected '{c}'"))),
        }
    }

    fn variable(&self, name: &str, order: u32) -> Result<DiffPoly> {
        let var = self.ring.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(DiffPoly::jet(&self.ring, self.trunc, var, order))
    }
}

/// Parses `text` as a differential polynomial over `ring`, truncated at
/// `ε^trunc`.
pub fn parse_expr(text: &str, ring: &Ring, trunc: u32) -> Result<DiffPoly> {
    let mut lexer = Lexer { src: text, chars: text.char_indices().collect(), pos: 0 };
    let first = lexer.next()?;
    let mut parser = Parser { lexer, peeked: first, ring: ring.clone(), trunc };
    let p = parser.expr()?;
    match parser.peeked {
        (_, Tok::End) => Ok(p),
        (at, _) => Err(parser.lexer.error(at, "unexpected trailing input")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::{DiffMonomial, JetVariable, RingSpec};
    use crate::scalar::{rat, rat_int};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let r = RingSpec::uv();
        let p = parse_expr("v^2 - 4*u", &r, 6).unwrap();
        assert_eq!(p.to_string(), "v^2 - 4*u");
        let q = parse_expr("ep^2 * v_2", &r, 6).unwrap();
        assert_eq!(q, DiffPoly::jet(&r, 6, 1, 2).mul_eps(2));
        let s = parse_expr("1/2*I*ep*u_1", &r, 6).unwrap();
        assert_eq!(s, DiffPoly::jet(&r, 6, 0, 1).mul_eps(1).scale(&Gauss::new(rat(0, 1), rat(1, 2))));
        assert_eq!(parse_expr("-(u - v)*(u + v)", &r, 6).unwrap().to_string(), "-u^2 + v^2");
    }

    #[test]
    fn errors_carry_location() {
        let r = RingSpec::uv();
        assert_eq!(
            parse_expr("u +\n  * v", &r, 6).unwrap_err(),
            Error::Parse { line: 2, column: 3, message: "unexpected '*'".into() }
        );
        assert!(matches!(parse_expr("u + q", &r, 6), Err(Error::UnknownVariable(n)) if n == "q"));
        assert!(matches!(parse_expr("(u", &r, 6), Err(Error::Parse { line: 1, column: 3, .. })));
        assert!(matches!(parse_expr("u $", &r, 6), Err(Error::Parse { column: 3, .. })));
        assert!(parse_expr("1/0", &r, 6).is_err());
        let w = RingSpec::dr();
        assert_eq!(parse_expr("u1_3*u2", &w, 6).unwrap().to_string(), "u1_3*u2");
    }

    fn arb_poly() -> impl Strategy<Value = DiffPoly> {
        let coeff = (-20i64..20, 1i64..6, -20i64..20, 1i64..6);
        let mono = (0u32..4, proptest::collection::vec((0usize..2, 0u32..4, 1u32..3), 0..3));
        proptest::collection::vec((coeff, mono), 0..6).prop_map(|terms| {
            let r = RingSpec::uv();
            DiffPoly::from_terms(
                &r,
                6,
                terms.into_iter().map(|((a, b, c, d), (eps, fs))| {
                    let m = DiffMonomial::from_factors(eps, fs.into_iter().map(|(v, o, e)| (JetVariable::new(v, o), e)));
                    (m, Gauss::new(rat(a, b), rat(c, d)))
                }),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn print_parse_round_trip(p in arb_poly()) {
            let text = p.to_string();
            let back = parse_expr(&text, p.ring(), p.truncation()).unwrap();
            prop_assert_eq!(back, p);
        }
    }

    #[test]
    fn integer_literals() {
        let r = RingSpec::uv();
        assert_eq!(parse_expr("3", &r, 0).unwrap(), DiffPoly::constant(&r, 0, Gauss::real(rat_int(3))));
    }
}
