//! Evaluator for pair expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := power ('*' power)*
//! power   := primary ('^' rational)*        scalar action c . y = (r, N^c)
//! primary := pair
//!          | 'dist' '(' expr ',' expr ')'
//!          | 'dim' '(' expr ')'
//!          | 'cmp' '(' expr ',' expr ')'
//!          | '(' expr ')'
//! pair    := '(' scale ',' count ')'        scale: p/q, integer, decimal or 0+
//! ```
//!
//! Counts use the graduation grammar (`7`, `w`, `2^w`, `(w+1)`, ...).
//! Errors carry the byte offset of the operator or token that failed.

use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graduation::{Comparison, MValue};
use crate::pair::{parse_rational, Scale, SizePair};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Pair(SizePair),
    Real(f64),
    Order(Comparison),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Pair(_) => "pair",
            Value::Real(_) => "real",
            Value::Order(_) => "order",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Pair(p) => write!(f, "{p}"),
            Value::Real(x) => write!(f, "{x}"),
            Value::Order(c) => write!(f, "{}", serde_json::to_value(c).unwrap().as_str().unwrap()),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Value::Pair(p) => p.serialize(s),
            Value::Real(x) => s.serialize_f64(*x),
            Value::Order(c) => c.serialize(s),
        }
    }
}

pub fn evaluate(src: &str) -> Result<Value> {
    let mut p = Parser { src, pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(p.fail("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn pair_of(v: Value, pos: usize) -> Result<SizePair> {
    match v {
        Value::Pair(p) => Ok(p),
        other => Err(Error::parse(1, format!("expected a pair, found a {}", other.kind())).at(pos)),
    }
}

impl Parser<'_> {
    fn fail(&self, msg: &str) -> Error {
        Error::parse(1, msg).at(self.pos)
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.fail(&format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.term()?;
            let (a, b) = (pair_of(acc, at)?, pair_of(rhs, at)?);
            let r = if op == '+' { a.add(&b) } else { a.sub(&b) };
            acc = Value::Pair(r.map_err(|e| e.at(at))?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.power()?;
            let (a, b) = (pair_of(acc, at)?, pair_of(rhs, at)?);
            acc = Value::Pair(a.mul(&b).map_err(|e| e.at(at))?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Value> {
        let mut acc = self.primary()?;
        while self.peek() == Some('^') {
            let at = self.pos;
            self.pos += 1;
            let c = self.rational()?;
            let y = pair_of(acc, at)?;
            acc = Value::Pair(y.scalar(&c).map_err(|e| e.at(at))?);
        }
        Ok(acc)
    }

    fn rational(&mut self) -> Result<BigRational> {
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '/' | '.')))
            .unwrap_or(self.rest().len());
        let lit = &self.src[start..start + len];
        self.pos += len;
        parse_rational(lit).map_err(|e| e.at(start))
    }

    fn call_args(&mut self, n: usize) -> Result<Vec<(usize, Value)>> {
        self.eat('(')?;
        let mut args = Vec::with_capacity(n);
        for i in 0..n {
            if i > 0 {
                self.eat(',')?;
            }
            self.skip_ws();
            let at = self.pos;
            args.push((at, self.expr()?));
        }
        self.eat(')')?;
        Ok(args)
    }

    fn primary(&mut self) -> Result<Value> {
        self.skip_ws();
        let at = self.pos;
        for (name, arity) in [("dist", 2), ("dim", 1), ("cmp", 2)] {
            if self.rest().starts_with(name) {
                self.pos += name.len();
                let mut args = self.call_args(arity)?.into_iter();
                let (pa, a) = args.next().unwrap();
                let a = pair_of(a, pa)?;
                return match name {
                    "dim" => Ok(Value::Real(a.dimension().map_err(|e| e.at(at))?)),
                    _ => {
                        let (pb, b) = args.next().unwrap();
                        let b = pair_of(b, pb)?;
                        if name == "dist" {
                            Ok(Value::Pair(a.distance(&b).map_err(|e| e.at(at))?))
                        } else {
                            Ok(Value::Order(a.compare(&b)))
                        }
                    }
                };
            }
        }
        match self.peek() {
            Some('(') => {
                let after = self.src[self.pos + 1..].trim_start();
                if after.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
                    self.pair().map(Value::Pair)
                } else {
                    self.pos += 1;
                    let v = self.expr()?;
                    self.eat(')')?;
                    Ok(v)
                }
            }
            _ => Err(self.fail("expected a pair, `(`, `dist`, `dim` or `cmp`")),
        }
    }

    fn pair(&mut self) -> Result<SizePair> {
        let start = self.pos;
        self.eat('(')?;
        let comma = self
            .rest()
            .find(',')
            .ok_or_else(|| self.fail("pair needs `,`"))?;
        let scale_src = &self.src[self.pos..self.pos + comma];
        let scale: Scale = scale_src.parse().map_err(|e: Error| e.at(self.pos))?;
        self.pos += comma + 1;
        let count_start = self.pos;
        let mut depth = 0usize;
        let mut end = None;
        for (i, c) in self.rest().char_indices() {
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => {
                    end = Some(i);
                    break;
                }
                ')' => depth -= 1,
                _ => {}
            }
        }
        let end = end.ok_or_else(|| Error::parse(1, "unclosed pair").at(start))?;
        let count: MValue =
            self.src[count_start..count_start + end]
                .parse()
                .map_err(|e: Error| match e {
                    Error::Algebra { pos, source } => Error::Algebra {
                        pos: count_start + pos,
                        source,
                    },
                    e => e.at(count_start),
                })?;
        self.pos = count_start + end + 1;
        Ok(SizePair::new(scale, count))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(s: &str) -> String {
        evaluate(s).unwrap().to_string()
    }

    fn err_pos(s: &str) -> usize {
        match evaluate(s).unwrap_err() {
            Error::Algebra { pos, .. } => pos,
            e => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn arithmetic() {
        assert_eq!(eval("(1/2,3)+(1/2,4)"), "(1/2,7)");
        assert_eq!(eval("(1/2,7) - (1/2,4)"), "(1/2,3)");
        assert_eq!(eval("(1/2,2)*(1/2,2)"), "(1/4,4)");
        assert_eq!(eval("(1/2,3)^2"), "(1/2,9)");
        assert_eq!(eval("(1/4,16)^1/2"), "(1/4,4)");
        assert_eq!(eval("dist((1/2,3),(1/2,8))"), "(1/2,5)");
        // `*` binds tighter, leaving (1/2,1) + (1/4,6)
        assert_eq!(err_pos("(1/2,1) + (1/2,2) * (1/2, 3)"), 8);
    }

    #[test]
    fn symbolic_counts() {
        assert_eq!(eval("(0+,w)+(0+,1)"), "(0+,(1+w))");
        assert_eq!(eval("(1/2,2^w)+(1/2,0)"), "(1/2,2^w)");
        assert_eq!(eval("((1/2,(w+1)))"), "(1/2,(1+w))");
    }

    #[test]
    fn dimension_and_order() {
        let d = match evaluate("dim((1/27,8))").unwrap() {
            Value::Real(x) => x,
            v => panic!("{v:?}"),
        };
        assert!((d - 0.630929).abs() < 1e-6);
        assert_eq!(eval("cmp((1/2,1),(1/2,0))"), "greater");
        assert_eq!(eval("cmp((1/2,5),(1/3,5))"), "incomparable");
    }

    #[test]
    fn errors_report_operator_position() {
        assert_eq!(err_pos("(1/2,3)+(1/3,4)"), 7);
        assert_eq!(err_pos("(1/2,4) - (1/2,7)"), 8);
        assert_eq!(err_pos("(1/3,1)^3"), 7);
        assert_eq!(err_pos("dim((1/2,1))"), 0);
        assert_eq!(err_pos("(1/2,3) $"), 8);
        assert_eq!(err_pos("(1/2,3^w)"), 6);
        assert_eq!(err_pos("dim((1/2,3)) + (1/2,3)"), 13);
        assert!(evaluate("(1/2,3").is_err());
        assert!(evaluate("(0,3)").is_err());
    }
}
