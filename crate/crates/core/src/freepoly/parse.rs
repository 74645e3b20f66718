//! Expression parser.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := number | 'x' digits | ident '(' args ')' | '[' args ']' | '{' args '}' | '(' expr ')' | '-' factor
//! args   := expr (',' expr)*
//! number := digits ['/' digits]
//! ```
//! `comm(a, b, ...)` or `[a, b, ...]` is the left-normed commutator, `jord(a, b)`
//! or `{a, b}` the Jordan product.

use num_traits::One;

use super::{DegreeComposition, MultiPoly, PolyError};
use crate::rational::Q;

#[derive(Clone, Debug)]
enum Value {
    Scalar(Q),
    Poly(MultiPoly),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    composition: &'a DegreeComposition,
}

/// Parses `expr` into a polynomial in all slots of `composition`.
pub fn parse(expr: &str, composition: &DegreeComposition) -> Result<MultiPoly, PolyError> {
    let mut p = Parser { src: expr.as_bytes(), pos: 0, composition };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    let poly = match v {
        Value::Poly(poly) => poly,
        Value::Scalar(s) if s == Q::from_integer(0.into()) => MultiPoly::zero(composition),
        Value::Scalar(_) => return Err(PolyError::SlotMismatch("a constant is not a multilinear polynomial".into())),
    };
    if !poly.is_full() {
        return Err(PolyError::SlotMismatch(format!(
            "expression uses {} of the {} slots",
            poly.slot_set().len(),
            composition.n()
        )));
    }
    Ok(poly)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Syntax { pos: self.pos, msg: msg.to_string() }
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

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn expr(&mut self) -> Result<Value, PolyError> {
        let mut acc = if self.eat(b'-') { negate(self.term()?) } else { self.term()? };
        loop {
            let sign = if self.eat(b'+') {
                false
            } else if self.eat(b'-') {
                true
            } else {
                return Ok(acc);
            };
            let at = self.pos;
            let rhs = self.term()?;
            let rhs = if sign { negate(rhs) } else { rhs };
            acc = self.add(acc, rhs, at)?;
        }
    }

    fn term(&mut self) -> Result<Value, PolyError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let rhs = self.factor()?;
            acc = multiply(acc, rhs)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value, PolyError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(negate(self.factor()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(v)
            }
            Some(open @ (b'[' | b'{')) => {
                let start = self.pos;
                self.pos += 1;
                let (name, close) = if open == b'[' { ("comm", b']') } else { ("jord", b'}') };
                let args = self.poly_args()?;
                if !self.eat(close) {
                    return Err(self.err(&format!("expected `{}`", close as char)));
                }
                self.apply(name, args, start)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.identifier(),
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Value, PolyError> {
        let num = self.digits().unwrap();
        let save = self.pos;
        if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            if let Some(den) = self.digits() {
                let d: Q = Q::from_integer(den.parse().unwrap());
                if d == Q::from_integer(0.into()) {
                    return Err(self.err("zero denominator"));
                }
                return Ok(Value::Scalar(Q::from_integer(num.parse().unwrap()) / d));
            }
            self.pos = save;
            return Err(self.err("expected a denominator after `/`"));
        }
        Ok(Value::Scalar(Q::from_integer(num.parse().unwrap())))
    }

    fn identifier(&mut self) -> Result<Value, PolyError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        if let Some(idx) = name.strip_prefix('x').filter(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())) {
            let slot: usize = idx.parse().map_err(|_| self.err("bad variable index"))?;
            if slot == 0 || slot > self.composition.n() {
                return Err(PolyError::UnknownSlot(slot));
            }
            return Ok(Value::Poly(MultiPoly::var(self.composition, slot - 1)));
        }
        if !self.eat(b'(') {
            self.pos = start;
            return Err(self.err(&format!("unknown identifier `{name}`")));
        }
        let args = self.poly_args()?;
        if !self.eat(b')') {
            return Err(self.err("expected `)`"));
        }
        self.apply(name, args, start)
    }

    fn poly_args(&mut self) -> Result<Vec<MultiPoly>, PolyError> {
        let mut args = vec![self.poly_arg()?];
        while self.eat(b',') {
            args.push(self.poly_arg()?);
        }
        Ok(args)
    }

    fn apply(&mut self, name: &str, args: Vec<MultiPoly>, start: usize) -> Result<Value, PolyError> {
        match (name, args.len()) {
            ("comm", n) if n >= 2 => Ok(Value::Poly(MultiPoly::left_normed(&args).map_err(overlap)?)),
            ("jord", 2) => Ok(Value::Poly(args[0].jordan(&args[1]).map_err(overlap)?)),
            ("comm", _) | ("jord", _) => {
                self.pos = start;
                Err(self.err(&format!("wrong number of arguments to `{name}`")))
            }
            _ => {
                self.pos = start;
                Err(self.err(&format!("unknown function `{name}`")))
            }
        }
    }

    fn poly_arg(&mut self) -> Result<MultiPoly, PolyError> {
        match self.expr()? {
            Value::Poly(p) => Ok(p),
            Value::Scalar(_) => Err(self.err("function arguments must be polynomials")),
        }
    }

    fn add(&self, a: Value, b: Value, at: usize) -> Result<Value, PolyError> {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x + y)),
            (Value::Poly(p), Value::Poly(q)) => p.add(&q).map(Value::Poly),
            _ => Err(PolyError::Syntax { pos: at, msg: "cannot add a constant to a polynomial".into() }),
        }
    }
}

fn overlap(e: PolyError) -> PolyError {
    match e {
        PolyError::OverlappingSlots => PolyError::NonMultilinear("a variable occurs twice in one monomial".into()),
        other => other,
    }
}

fn negate(v: Value) -> Value {
    match v {
        Value::Scalar(s) => Value::Scalar(-s),
        Value::Poly(p) => Value::Poly(p.scale(&-Q::one())),
    }
}

fn multiply(a: Value, b: Value) -> Result<Value, PolyError> {
    Ok(match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x * y),
        (Value::Scalar(s), Value::Poly(p)) | (Value::Poly(p), Value::Scalar(s)) => Value::Poly(p.scale(&s)),
        (Value::Poly(p), Value::Poly(q)) => Value::Poly(p.mul(&q).map_err(overlap)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn c(slots: &[usize]) -> DegreeComposition {
        DegreeComposition::new(3, slots.to_vec())
    }

    #[test]
    fn parses_commutator() {
        let comp = c(&[0, 0]);
        let p = parse("comm(x1,x2)", &comp).unwrap();
        let expected = MultiPoly::var(&comp, 0).commutator(&MultiPoly::var(&comp, 1)).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn parses_linear_combination() {
        let comp = c(&[0, 0]);
        let p = parse("2*x1*x2 - x2*x1", &comp).unwrap();
        assert_eq!(p.coefficient(&[0, 1]), q(2));
        assert_eq!(p.coefficient(&[1, 0]), q(-1));
        let r = parse("1/2*jord(x1, x2) - (x2*x1)", &comp).unwrap();
        assert_eq!(r.coefficient(&[0, 1]), frac(1, 2));
        assert_eq!(r.coefficient(&[1, 0]), frac(-1, 2));
        assert!(parse("x1*x2 - x1*x2", &comp).unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_input() {
        let comp = c(&[0, 0]);
        assert!(matches!(parse("x1*x1", &comp), Err(PolyError::NonMultilinear(_))));
        assert!(matches!(parse("x1*x3", &comp), Err(PolyError::UnknownSlot(3))));
        assert!(matches!(parse("x1", &comp), Err(PolyError::SlotMismatch(_))));
        assert!(matches!(parse("x1*x2 + x1", &comp), Err(PolyError::NonMultilinear(_))));
        match parse("x1 * * x2", &comp) {
            Err(PolyError::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("foo(x1,x2)", &comp), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse("comm(x1,x2", &comp), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse("[x1,x2)", &comp), Err(PolyError::Syntax { .. })));
        assert!(matches!(parse("{x1,x2,x1}", &comp), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn bracket_shorthand() {
        let comp = c(&[1, 2, 0]);
        assert_eq!(parse("[x1,x2,x3]", &comp).unwrap(), parse("comm(x1,x2,x3)", &comp).unwrap());
        assert_eq!(parse("{x1,x2}*x3", &comp).unwrap(), parse("jord(x1,x2)*x3", &comp).unwrap());
        assert_eq!(parse("[{x2,x1},x3]", &comp).unwrap(), parse("comm(jord(x2,x1),x3)", &comp).unwrap());
    }

    #[test]
    fn rendering_parses_back() {
        let comp = c(&[1, 2, 0]);
        for src in ["comm(x1,x2,x3)", "3/4*x3*x1*x2 - jord(x1,x2)*x3", "-x2*comm(x3,x1)"] {
            let p = parse(src, &comp).unwrap();
            assert_eq!(parse(&p.render(), &comp).unwrap(), p);
        }
    }
}
