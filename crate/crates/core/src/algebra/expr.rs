//! Small arithmetic expression language shared by the CLI (`1/(1-z^2)^3`)
//! and the jet scenario files (`u02 - u11^2/u20`, `-2*(g11*a[1,0])`).
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { ("*" | "/" | <juxtaposition>) unary } ;
//! unary   = ("-" | "+") unary | power ;
//! power   = atom [ "^" ["-"] integer ] ;
//! atom    = integer | name [ "[" integer { "," integer } "]" ] | "(" expr ")" ;
//! ```
//!
//! Juxtaposition binds like `*`, so `2z^4(3 - 2z)` parses as expected.
//! Names are ASCII letters followed by letters, digits or `_`.

use num_bigint::BigInt;

use super::poly::Polynomial;
use super::ratfun::RationalFunction;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    /// A name, with its bracketed index list if any (`a[1,0]` has `[1, 0]`).
    Var(String, Option<Vec<u32>>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i32),
}

impl Expr {
    /// Folds the tree bottom-up with caller-supplied constructors.
    pub fn fold<T, F>(&self, f: &mut F) -> Result<T>
    where
        F: FnMut(Node<T>) -> Result<T>,
    {
        let node = match self {
            Expr::Num(n) => Node::Num(n),
            Expr::Var(name, idx) => Node::Var(name, idx.as_deref()),
            Expr::Add(a, b) => Node::Add(a.fold(f)?, b.fold(f)?),
            Expr::Sub(a, b) => Node::Sub(a.fold(f)?, b.fold(f)?),
            Expr::Mul(a, b) => Node::Mul(a.fold(f)?, b.fold(f)?),
            Expr::Div(a, b) => Node::Div(a.fold(f)?, b.fold(f)?),
            Expr::Neg(a) => Node::Neg(a.fold(f)?),
            Expr::Pow(a, e) => Node::Pow(a.fold(f)?, *e),
        };
        f(node)
    }

    /// Interprets the expression as a rational function of the single
    /// variable `z`.
    pub fn to_rational_function(&self) -> Result<RationalFunction> {
        self.fold(&mut |node| match node {
            Node::Num(n) => Ok(RationalFunction::constant(super::Rational::from_integer(
                n.clone(),
            ))),
            Node::Var("z", None) => Ok(RationalFunction::from(Polynomial::z())),
            Node::Var(name, _) => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown symbol `{name}` (only `z` is allowed)"),
            }),
            Node::Add(a, b) => Ok(&a + &b),
            Node::Sub(a, b) => Ok(&a - &b),
            Node::Mul(a, b) => Ok(&a * &b),
            Node::Div(a, b) => &a / &b,
            Node::Neg(a) => Ok(-a),
            Node::Pow(a, e) => a.pow(e),
        })
    }
}

/// One level of [`Expr`] with already-folded children.
pub enum Node<'a, T> {
    Num(&'a BigInt),
    Var(&'a str, Option<&'a [u32]>),
    Add(T, T),
    Sub(T, T),
    Mul(T, T),
    Div(T, T),
    Neg(T),
    Pow(T, i32),
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses and interprets a literal over `z`.
pub fn parse_rational_function(src: &str) -> Result<RationalFunction> {
    parse(src)?.to_rational_function()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(c) if c == b'(' || c.is_ascii_alphanumeric()) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        let start = self.pos;
        let n = self.integer()?;
        let e = i32::try_from(n)
            .ok()
            .filter(|e| *e <= 10_000)
            .ok_or(Error::Parse {
                pos: start,
                msg: "exponent too large".into(),
            })?;
        if paren && !self.eat(b')') {
            return Err(self.err("expected `)`"));
        }
        Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("decimal digits"))
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(Expr::Num(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos])
                    .expect("ascii name")
                    .to_string();
                let idx = if self.src.get(self.pos) == Some(&b'[') {
                    self.pos += 1;
                    let mut v = Vec::new();
                    loop {
                        let n = self.integer()?;
                        v.push(u32::try_from(n).map_err(|_| self.err("index too large"))?);
                        if self.eat(b']') {
                            break;
                        }
                        if !self.eat(b',') {
                            return Err(self.err("expected `,` or `]`"));
                        }
                    }
                    Some(v)
                } else {
                    None
                };
                Ok(Expr::Var(name, idx))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn rf(s: &str) -> RationalFunction {
        parse_rational_function(s).unwrap()
    }

    #[test]
    fn precedence_and_juxtaposition() {
        assert_eq!(rf("1+2*3"), RationalFunction::from_i64(7));
        assert_eq!(rf("2z^4(3-2z)"), rf("2*z^4*(3-2*z)"));
        assert_eq!(rf("-z^2"), -rf("z^2"));
        assert_eq!(
            rf("2^-1"),
            RationalFunction::constant(crate::algebra::rat(1, 2))
        );
    }

    #[test]
    fn rational_literal() {
        let f = rf("1/(1-z^2)^3");
        assert_eq!(f.eval(&int(0)).unwrap(), int(1));
        assert_eq!(f.den().degree(), Some(6));
    }

    #[test]
    fn indexed_names() {
        let e = parse("a[1,0]*g11").unwrap();
        assert_eq!(
            e,
            Expr::Mul(
                Box::new(Expr::Var("a".into(), Some(vec![1, 0]))),
                Box::new(Expr::Var("g11".into(), None))
            )
        );
    }

    #[test]
    fn errors_carry_position() {
        assert!(matches!(parse("1+"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse("(1"), Err(Error::Parse { .. })));
        assert!(matches!(parse("1 $"), Err(Error::Parse { pos: 2, .. })));
        assert!(parse_rational_function("x+1").is_err());
        assert_eq!(
            parse_rational_function("1/(z-z)"),
            Err(Error::DivisionByZero)
        );
    }
}
