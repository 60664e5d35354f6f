//! Recursive-descent parser for the polynomial text grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | identifier | '(' expr ')'
//! ```
//!
//! There is no implicit multiplication, and `/` is only accepted between two
//! integer literals (a rational literal).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use super::{Exponent, MPoly, Rational, VarNames};

/// Resource limits that keep hostile inputs from exhausting memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseLimits {
    pub max_exponent: u32,
    pub max_degree: u32,
    pub max_terms: usize,
    pub max_depth: usize,
}

impl Default for ParseLimits {
    fn default() -> Self {
        ParseLimits {
            max_exponent: 512,
            max_degree: 512,
            max_terms: 100_000,
            max_depth: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    UnknownIdentifier(String),
    ExpectedExponent,
    DivisionNotLiteral,
    ZeroDenominator,
    LimitExceeded(&'static str),
    TooManyVariables(usize),
}

/// Syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let col = self.position + 1;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}` at column {col}"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input at column {col}"),
            ParseErrorKind::UnknownIdentifier(name) => {
                write!(f, "unknown identifier `{name}` at column {col}")
            }
            ParseErrorKind::ExpectedExponent => {
                write!(f, "expected a non-negative integer exponent at column {col}")
            }
            ParseErrorKind::DivisionNotLiteral => write!(
                f,
                "`/` is only allowed inside a rational literal such as 3/4 (column {col})"
            ),
            ParseErrorKind::ZeroDenominator => write!(f, "zero denominator at column {col}"),
            ParseErrorKind::LimitExceeded(what) => write!(f, "{what} limit exceeded at column {col}"),
            ParseErrorKind::TooManyVariables(n) => {
                write!(f, "at most three variables may be declared, got {n}")
            }
        }
    }
}

/// Parses `text` into a canonical polynomial over the declared variables.
///
/// Up to three identifiers may be declared; they map to `z1, z2, z3` in order.
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<MPoly, ParseError> {
    parse_poly_with_limits(text, vars, ParseLimits::default())
}

pub fn parse_poly_with_limits(text: &str, vars: &[&str], limits: ParseLimits) -> Result<MPoly, ParseError> {
    if vars.len() > 3 {
        return Err(ParseError {
            position: 0,
            kind: ParseErrorKind::TooManyVariables(vars.len()),
        });
    }
    let mut names = VarNames::default();
    for (slot, v) in vars.iter().enumerate() {
        names.0[slot] = v.to_string();
    }
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
        limits,
        depth: 0,
    };
    let result = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.unexpected());
    }
    Ok(result.with_names(names))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
    limits: ParseLimits,
    depth: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            position: self.pos,
            kind,
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.src.get(self.pos) {
            None => self.error(ParseErrorKind::UnexpectedEnd),
            Some(_) => {
                // Report the full (possibly multi-byte) character.
                let rest = String::from_utf8_lossy(&self.src[self.pos..]);
                let c = rest.chars().next().unwrap_or('?');
                self.error(ParseErrorKind::UnexpectedChar(c))
            }
        }
    }

    fn check(&self, p: &MPoly, at: usize) -> Result<(), ParseError> {
        if p.num_terms() > self.limits.max_terms {
            return Err(ParseError {
                position: at,
                kind: ParseErrorKind::LimitExceeded("term count"),
            });
        }
        if p.total_degree().unwrap_or(0) > self.limits.max_degree {
            return Err(ParseError {
                position: at,
                kind: ParseErrorKind::LimitExceeded("degree"),
            });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        self.depth += 1;
        if self.depth > self.limits.max_depth {
            return Err(self.error(ParseErrorKind::LimitExceeded("nesting depth")));
        }
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc + &rhs;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = &acc - &rhs;
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    let at = self.pos;
                    self.pos += 1;
                    let rhs = self.unary()?;
                    let est_terms = acc.num_terms().saturating_mul(rhs.num_terms());
                    let est_degree = acc.total_degree().unwrap_or(0) + rhs.total_degree().unwrap_or(0);
                    if est_terms > self.limits.max_terms.saturating_mul(4) || est_degree > self.limits.max_degree {
                        return Err(ParseError {
                            position: at,
                            kind: ParseErrorKind::LimitExceeded("product size"),
                        });
                    }
                    acc = &acc * &rhs;
                    self.check(&acc, at)?;
                }
                Some(b'/') => return Err(self.error(ParseErrorKind::DivisionNotLiteral)),
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.nested(|p| p.unary()).map(|v| -v)
            }
            Some(b'+') => {
                self.pos += 1;
                self.nested(|p| p.unary())
            }
            _ => self.power(),
        }
    }

    fn nested<F>(&mut self, f: F) -> Result<MPoly, ParseError>
    where
        F: FnOnce(&mut Self) -> Result<MPoly, ParseError>,
    {
        self.depth += 1;
        if self.depth > self.limits.max_depth {
            return Err(self.error(ParseErrorKind::LimitExceeded("nesting depth")));
        }
        let r = f(self);
        self.depth -= 1;
        r
    }

    fn power(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            let at = self.pos;
            self.pos += 1;
            self.skip_ws();
            let exp_pos = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error(ParseErrorKind::ExpectedExponent));
            }
            let n = digits
                .parse::<BigInt>()
                .ok()
                .and_then(|v| v.to_u32())
                .filter(|v| *v <= self.limits.max_exponent)
                .ok_or(ParseError {
                    position: exp_pos,
                    kind: ParseErrorKind::LimitExceeded("exponent"),
                })?;
            let deg = base.total_degree().unwrap_or(0) as u64 * n as u64;
            if deg > self.limits.max_degree as u64 {
                return Err(ParseError {
                    position: at,
                    kind: ParseErrorKind::LimitExceeded("degree"),
                });
            }
            let result = base.pow(n);
            self.check(&result, at)?;
            return Ok(result);
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("ascii digits");
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den_pos = self.pos;
                    let den = self.digits();
                    if den.is_empty() {
                        self.pos = den_pos;
                        return Err(self.error(ParseErrorKind::DivisionNotLiteral));
                    }
                    let den: BigInt = den.parse().expect("ascii digits");
                    if den.is_zero() {
                        return Err(ParseError {
                            position: den_pos,
                            kind: ParseErrorKind::ZeroDenominator,
                        });
                    }
                    return Ok(MPoly::constant(Rational::new(num, den)));
                }
                self.pos = save;
                Ok(MPoly::constant(Rational::from_integer(num)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.vars.iter().position(|v| *v == name) {
                    Some(slot) => {
                        let mut e = [0u32; 3];
                        e[slot] = 1;
                        Ok(MPoly::monomial(Rational::from_integer(1.into()), Exponent(e)))
                    }
                    None => Err(ParseError {
                        position: start,
                        kind: ParseErrorKind::UnknownIdentifier(name.to_string()),
                    }),
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.unexpected()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;
    use proptest::prelude::*;

    const VARS: [&str; 3] = ["z1", "z2", "z3"];

    #[test]
    fn worked_example_expands_to_seven_terms() {
        let f = parse_poly("z3^2 - (z1^3 - z2^2)^2*(z1^4 - z2^3)", &VARS).unwrap();
        assert_eq!(f.num_terms(), 7);
        assert_eq!(f.degree_in(Var::Z3), Some(2));
        assert_eq!(f.total_degree(), Some(10));
    }

    #[test]
    fn zero_and_binomial() {
        assert!(parse_poly("0", &VARS).unwrap().is_zero());
        let sq = parse_poly("(z1+z2)^2", &VARS).unwrap();
        let expanded = parse_poly("z1^2 + 2*z1*z2 + z2^2", &VARS).unwrap();
        assert_eq!(sq, expanded);
    }

    #[test]
    fn rational_literals_and_unary_minus() {
        let p = parse_poly("-3/4*z1 + -(-z2)", &VARS).unwrap();
        assert_eq!(p.to_string(), "-3/4*z1 + z2");
    }

    #[test]
    fn error_positions() {
        let err = parse_poly("z1 + w", &VARS).unwrap_err();
        assert_eq!(err.position, 5);
        assert_eq!(err.kind, ParseErrorKind::UnknownIdentifier("w".into()));

        let err = parse_poly("z1 z2", &VARS).unwrap_err();
        assert_eq!(err.position, 3);
        assert!(matches!(err.kind, ParseErrorKind::UnexpectedChar('z')));

        let err = parse_poly("(z1 + 1", &VARS).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnexpectedEnd);

        let err = parse_poly("z1/z2", &VARS).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DivisionNotLiteral);

        assert!(parse_poly("z1^", &VARS).is_err());
        assert!(parse_poly("1/0", &VARS).is_err());
        assert!(parse_poly("", &VARS).is_err());
    }

    #[test]
    fn limits_stop_blowups() {
        assert!(matches!(
            parse_poly("(z1+z2+z3)^100000", &VARS).unwrap_err().kind,
            ParseErrorKind::LimitExceeded(_)
        ));
        let deep = "(".repeat(10_000) + "z1" + &")".repeat(10_000);
        assert!(parse_poly(&deep, &VARS).is_err());
    }

    #[test]
    fn custom_variable_names() {
        let p = parse_poly("x^2 - y", &["x", "y"]).unwrap();
        assert_eq!(p.to_string(), "x^2 - y");
        assert!(parse_poly("z1", &["a", "b", "c", "d"]).is_err());
    }

    fn rendered_poly() -> impl Strategy<Value = MPoly> {
        proptest::collection::vec((-20i64..=20, 1i64..=7, 0u32..4, 0u32..4, 0u32..4), 0..6).prop_map(|terms| {
            MPoly::from_terms(
                terms
                    .into_iter()
                    .map(|(n, d, i, j, k)| (Rational::new(n.into(), d.into()), Exponent([i, j, k]))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn render_then_parse_is_identity(p in rendered_poly()) {
            let text = p.to_string();
            prop_assert_eq!(parse_poly(&text, &VARS).unwrap(), p);
        }

        #[test]
        fn arbitrary_text_never_panics(s in "[z123+*^()/ 0-9-]{0,40}") {
            let _ = parse_poly(&s, &VARS);
        }
    }
}
