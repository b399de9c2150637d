//! Text grammar for polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := number ('/' number)? | ident | '(' expr ')'
//! ```
//!
//! Whitespace is ignored between tokens. A header line `vars: x y z` declares
//! the variable set.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::varset::is_identifier;
use crate::{Poly, PolyError, VarSet, Q};

/// Parses a `vars: a b c` header.
pub fn parse_vars_header(line: &str) -> Result<VarSet, PolyError> {
    let rest = line
        .trim()
        .strip_prefix("vars:")
        .ok_or_else(|| PolyError::Parse {
            pos: 0,
            msg: "expected `vars:` header".into(),
        })?;
    let names: Vec<&str> = rest.split_whitespace().collect();
    if names.is_empty() {
        return Err(PolyError::Parse {
            pos: 0,
            msg: "empty variable list".into(),
        });
    }
    VarSet::new(&names)
}

pub struct Parser<'a> {
    vars: &'a VarSet,
}

struct Cursor<'s> {
    src: &'s [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    pub fn new(vars: &'a VarSet) -> Self {
        Self { vars }
    }

    pub fn parse(&self, text: &str) -> Result<Poly, PolyError> {
        let mut c = Cursor {
            src: text.as_bytes(),
            pos: 0,
        };
        let p = self.expr(&mut c)?;
        c.skip_ws();
        if c.pos != c.src.len() {
            return Err(c.err("unexpected trailing input"));
        }
        Ok(p)
    }

    fn expr(&self, c: &mut Cursor) -> Result<Poly, PolyError> {
        c.skip_ws();
        let mut sign = 1;
        match c.peek() {
            Some(b'-') => {
                c.pos += 1;
                sign = -1;
            }
            Some(b'+') => c.pos += 1,
            _ => {}
        }
        let mut acc = self.term(c)?;
        if sign < 0 {
            acc = -acc;
        }
        loop {
            c.skip_ws();
            match c.peek() {
                Some(b'+') => {
                    c.pos += 1;
                    acc = acc + self.term(c)?;
                }
                Some(b'-') => {
                    c.pos += 1;
                    acc = acc - self.term(c)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&self, c: &mut Cursor) -> Result<Poly, PolyError> {
        let mut acc = self.factor(c)?;
        loop {
            c.skip_ws();
            if c.peek() == Some(b'*') {
                c.pos += 1;
                acc = acc * self.factor(c)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&self, c: &mut Cursor) -> Result<Poly, PolyError> {
        let base = self.atom(c)?;
        c.skip_ws();
        if c.peek() == Some(b'^') {
            c.pos += 1;
            c.skip_ws();
            let start = c.pos;
            let digits = c.take_while(|b| b.is_ascii_digit());
            if digits.is_empty() {
                return Err(Cursor::err_at(start, "expected exponent"));
            }
            let e: u32 = digits
                .parse()
                .map_err(|_| Cursor::err_at(start, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&self, c: &mut Cursor) -> Result<Poly, PolyError> {
        c.skip_ws();
        match c.peek() {
            Some(b'(') => {
                c.pos += 1;
                let e = self.expr(c)?;
                c.skip_ws();
                if c.peek() != Some(b')') {
                    return Err(c.err("expected `)`"));
                }
                c.pos += 1;
                Ok(e)
            }
            Some(b) if b.is_ascii_digit() => {
                let n = c.number()?;
                c.skip_ws();
                // `p/q` is only a rational literal when followed by digits.
                let save = c.pos;
                if c.peek() == Some(b'/') {
                    c.pos += 1;
                    c.skip_ws();
                    if c.peek().is_some_and(|b| b.is_ascii_digit()) {
                        let d = c.number()?;
                        if d.is_zero() {
                            return Err(PolyError::DivisionByZero);
                        }
                        return Ok(Poly::constant(self.vars, Q::new(n, d)));
                    }
                    c.pos = save;
                    return Err(c.err("division is only allowed between integer literals"));
                }
                Ok(Poly::constant(self.vars, Q::from_integer(n)))
            }
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                let start = c.pos;
                let id = c.take_while(|b| b.is_ascii_alphanumeric() || b == b'_');
                debug_assert!(is_identifier(&id));
                match self.vars.index(&id) {
                    Some(i) => Ok(Poly::var_at(self.vars, i)),
                    None => Err(Cursor::err_at(start, &format!("unknown variable `{id}`"))),
                }
            }
            _ => Err(c.err("expected a number, variable or `(`")),
        }
    }
}

impl Cursor<'_> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> String {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn number(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        let s = self.take_while(|b| b.is_ascii_digit());
        s.parse().map_err(|_| Self::err_at(start, "bad integer"))
    }

    fn err(&self, msg: &str) -> PolyError {
        Self::err_at(self.pos, msg)
    }

    fn err_at(pos: usize, msg: &str) -> PolyError {
        PolyError::Parse {
            pos,
            msg: msg.to_string(),
        }
    }
}

impl Poly {
    /// Parses text over the given variables.
    pub fn parse(vars: &VarSet, text: &str) -> Result<Poly, PolyError> {
        Parser::new(vars).parse(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    fn vs() -> VarSet {
        VarSet::of(&["x", "y", "z", "t", "u"])
    }

    #[test]
    fn header() {
        let v = parse_vars_header("vars: x y z t").unwrap();
        assert_eq!(v.names(), &["x", "y", "z", "t"]);
        assert!(parse_vars_header("variables: x").is_err());
        assert!(parse_vars_header("vars: x x").is_err());
    }

    #[test]
    fn grammar_sample() {
        let p = Poly::parse(&vs(), "3/2*x^2*y - t^3 + u").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.coeff_of(&[2, 1, 0, 0, 0]), q(3, 2));
        assert_eq!(p.coeff_of(&[0, 0, 0, 3, 0]), q(-1, 1));
    }

    #[test]
    fn whitespace_insensitive() {
        let a = Poly::parse(&vs(), "3/2*x^2*y-t^3+u").unwrap();
        let b = Poly::parse(&vs(), "  3 / 2 * x ^ 2 * y -  t ^3 +u ").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parentheses_expand() {
        let a = Poly::parse(&vs(), "(x+z^2)^2 - x^2 - 2*x*z^2").unwrap();
        assert_eq!(a, Poly::parse(&vs(), "z^4").unwrap());
    }

    #[test]
    fn errors_report_position() {
        match Poly::parse(&vs(), "x + w") {
            Err(PolyError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(Poly::parse(&vs(), "x/y").is_err());
        assert_eq!(Poly::parse(&vs(), "1/0"), Err(PolyError::DivisionByZero));
        assert!(Poly::parse(&vs(), "x +").is_err());
        assert!(Poly::parse(&vs(), "x^").is_err());
    }

    #[test]
    fn display_round_trips() {
        let p = Poly::parse(&vs(), "-7/3*x*y^2 + 4*u - 1 + t^5").unwrap();
        assert_eq!(Poly::parse(&vs(), &p.to_string()).unwrap(), p);
    }
}
