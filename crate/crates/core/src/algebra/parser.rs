//! Recursive-descent parser for the expression grammar:
//!
//!   expr   := ('-')? term (('+'|'-') term)*
//!   term   := factor ('*' factor)*
//!   factor := primary ('^' exponent)?
//!   primary:= scalar | gen | '(' expr ')'
//!   gen    := ('E'|'F'|'K') index | 'K' index '\'' | "K'" index
//!   scalar := integer | 'v' | '[' integer ']'
//!   exponent := integer | '(' integer ('/' '2')? ')'
//!
//! Fractional exponents (odd/2) are only allowed on the base v.

use super::{Element, Gen, Presentation};
use crate::coeff::{qint, RatFunc};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Int(i64),
    V,
    Gen { kind: char, index: usize, primed: bool },
    Eof,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn error(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse { pos, msg: msg.into() }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize)>> {
        let mut out = Vec::new();
        loop {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.pos >= self.src.len() {
                out.push((Tok::Eof, self.pos));
                return Ok(out);
            }
            let start = self.pos;
            let c = self.src[self.pos] as char;
            let tok = match c {
                '+' => {
                    self.pos += 1;
                    Tok::Plus
                }
                '-' => {
                    self.pos += 1;
                    Tok::Minus
                }
                '*' => {
                    self.pos += 1;
                    Tok::Star
                }
                '^' => {
                    self.pos += 1;
                    Tok::Caret
                }
                '/' => {
                    self.pos += 1;
                    Tok::Slash
                }
                '(' => {
                    self.pos += 1;
                    Tok::LParen
                }
                ')' => {
                    self.pos += 1;
                    Tok::RParen
                }
                '[' => {
                    self.pos += 1;
                    Tok::LBracket
                }
                ']' => {
                    self.pos += 1;
                    Tok::RBracket
                }
                '0'..='9' => {
                    let n = self.lex_int()?;
                    Tok::Int(n)
                }
                'v' => {
                    self.pos += 1;
                    Tok::V
                }
                'E' | 'F' | 'K' => {
                    self.pos += 1;
                    let mut primed = false;
                    if c == 'K' && self.peek() == Some('\'') {
                        primed = true;
                        self.pos += 1;
                    }
                    if !matches!(self.peek(), Some('0'..='9')) {
                        return Err(self.error(start, format!("expected index after generator {c}")));
                    }
                    let index = self.lex_int()? as usize;
                    if index == 0 {
                        return Err(self.error(start, "generator indices start at 1"));
                    }
                    if c == 'K' && !primed && self.peek() == Some('\'') {
                        primed = true;
                        self.pos += 1;
                    }
                    if primed && c != 'K' {
                        return Err(self.error(start, "only K may be primed"));
                    }
                    Tok::Gen { kind: c, index, primed }
                }
                other => return Err(self.error(start, format!("unexpected character {other:?}"))),
            };
            out.push((tok, start));
        }
    }

    fn peek(&self) -> Option<char> {
        self.src.get(self.pos).map(|b| *b as char)
    }

    fn lex_int(&mut self) -> Result<i64> {
        let start = self.pos;
        while matches!(self.peek(), Some('0'..='9')) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error(start, "integer literal out of range"))
    }
}

/// Either a scalar or an element, as produced by evaluating a subexpression.
#[derive(Clone)]
enum Value {
    Scalar(RatFunc),
    Elem(Element),
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    pres: &'a Presentation,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.advance();
            Ok(())
        } else {
            Err(Error::Parse { pos: self.pos(), msg: format!("expected {what}") })
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut negate = false;
        if *self.peek() == Tok::Minus {
            self.advance();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = neg_value(acc);
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.advance();
                    let rhs = self.term()?;
                    acc = add_values(self.pres, acc, rhs)?;
                }
                Tok::Minus => {
                    self.advance();
                    let rhs = self.term()?;
                    acc = add_values(self.pres, acc, neg_value(rhs))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.advance();
            let rhs = self.factor()?;
            acc = mul_values(self.pres, acc, rhs)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let caret_pos = self.pos();
        self.advance();
        let (num, halves) = self.exponent()?;
        match base {
            Value::Scalar(s) => {
                if halves {
                    if is_v(&s) {
                        Ok(Value::Scalar(RatFunc::v_half_pow(num)))
                    } else {
                        Err(Error::Parse {
                            pos: caret_pos,
                            msg: "half-integer exponents are only allowed on v".into(),
                        })
                    }
                } else if is_v(&s) {
                    Ok(Value::Scalar(RatFunc::v_pow(num)))
                } else {
                    let p: i32 = num.try_into().map_err(|_| Error::Parse {
                        pos: caret_pos,
                        msg: "exponent out of range".into(),
                    })?;
                    Ok(Value::Scalar(s.pow(p).map_err(|e| Error::Parse {
                        pos: caret_pos,
                        msg: e.to_string(),
                    })?))
                }
            }
            Value::Elem(e) => {
                if halves {
                    return Err(Error::Parse {
                        pos: caret_pos,
                        msg: "half-integer exponents are only allowed on v".into(),
                    });
                }
                if num >= 0 {
                    Ok(Value::Elem(e.pow(num as u32).map_err(|er| Error::Parse {
                        pos: caret_pos,
                        msg: er.to_string(),
                    })?))
                } else {
                    // Negative powers only for a bare K-monomial.
                    let inv = invert_k_monomial(&e, num).map_err(|er| Error::Parse {
                        pos: caret_pos,
                        msg: er.to_string(),
                    })?;
                    Ok(Value::Elem(inv))
                }
            }
        }
    }

    /// Returns (numerator, halves): `halves` means the exponent is num/2.
    fn exponent(&mut self) -> Result<(i64, bool)> {
        let mut negate = false;
        if *self.peek() == Tok::Minus {
            self.advance();
            negate = true;
        }
        match self.advance() {
            Tok::Int(n) => Ok((if negate { -n } else { n }, false)),
            Tok::LParen => {
                let mut inner_neg = false;
                if *self.peek() == Tok::Minus {
                    self.advance();
                    inner_neg = true;
                }
                let n = match self.advance() {
                    Tok::Int(n) => n,
                    _ => {
                        return Err(Error::Parse { pos: self.pos(), msg: "expected integer exponent".into() })
                    }
                };
                let n = if inner_neg ^ negate { -n } else { n };
                if *self.peek() == Tok::Slash {
                    self.advance();
                    match self.advance() {
                        Tok::Int(2) => {
                            self.expect(Tok::RParen, ")")?;
                            Ok((n, true))
                        }
                        _ => Err(Error::Parse {
                            pos: self.pos(),
                            msg: "only denominator 2 is allowed in exponents".into(),
                        }),
                    }
                } else {
                    self.expect(Tok::RParen, ")")?;
                    Ok((n, false))
                }
            }
            _ => Err(Error::Parse { pos: self.pos(), msg: "expected exponent".into() }),
        }
    }

    fn primary(&mut self) -> Result<Value> {
        let pos = self.pos();
        match self.advance() {
            Tok::Int(n) => Ok(Value::Scalar(RatFunc::int(n))),
            Tok::V => Ok(Value::Scalar(RatFunc::v_pow(1))),
            Tok::LBracket => {
                let mut negate = false;
                if *self.peek() == Tok::Minus {
                    self.advance();
                    negate = true;
                }
                match self.advance() {
                    Tok::Int(n) => {
                        self.expect(Tok::RBracket, "]")?;
                        let n = if negate { -n } else { n };
                        Ok(Value::Scalar(RatFunc::from(qint(n))))
                    }
                    _ => Err(Error::Parse { pos, msg: "expected integer inside [ ]".into() }),
                }
            }
            Tok::LParen => {
                let v = self.expr()?;
                self.expect(Tok::RParen, ")")?;
                Ok(v)
            }
            Tok::Gen { kind, index, primed } => {
                let g = match (kind, primed) {
                    ('E', false) => Gen::E(index - 1),
                    ('F', false) => Gen::F(index - 1),
                    ('K', false) => Gen::K(index - 1),
                    ('K', true) => Gen::Kp(index - 1),
                    _ => return Err(Error::Parse { pos, msg: format!("bad generator {kind}") }),
                };
                let e = Element::generator(self.pres, g, 1)
                    .map_err(|er| Error::Parse { pos, msg: er.to_string() })?;
                Ok(Value::Elem(e))
            }
            t => Err(Error::Parse { pos, msg: format!("unexpected token {t:?}") }),
        }
    }
}

fn is_v(s: &RatFunc) -> bool {
    s == &RatFunc::v_pow(1)
}

fn neg_value(v: Value) -> Value {
    match v {
        Value::Scalar(s) => Value::Scalar(-&s),
        Value::Elem(e) => Value::Elem(e.neg()),
    }
}

fn to_element(pres: &Presentation, v: Value) -> Element {
    match v {
        Value::Scalar(s) => Element::scalar(pres, s),
        Value::Elem(e) => e,
    }
}

fn add_values(pres: &Presentation, a: Value, b: Value) -> Result<Value> {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(&x + &y)),
        (a, b) => {
            let ea = to_element(pres, a);
            let eb = to_element(pres, b);
            Ok(Value::Elem(ea.add(&eb)?))
        }
    }
}

fn mul_values(pres: &Presentation, a: Value, b: Value) -> Result<Value> {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(&x * &y)),
        (Value::Scalar(x), Value::Elem(e)) | (Value::Elem(e), Value::Scalar(x)) => {
            Ok(Value::Elem(e.scale(&x)))
        }
        (Value::Elem(x), Value::Elem(y)) => Ok(Value::Elem(x.mul(&y)?)),
    }
}

fn invert_k_monomial(e: &Element, power: i64) -> Result<Element> {
    use super::KMono;
    let pres = e.presentation().clone();
    if e.num_terms() != 1 {
        return Err(Error::Invalid("negative powers are only allowed on K generators".into()));
    }
    let (w, c) = e.terms().iter().next().unwrap();
    if !w.fword.is_empty() || !w.eword.is_empty() || !c.is_one() {
        return Err(Error::Invalid("negative powers are only allowed on K generators".into()));
    }
    let k = KMono {
        mu: w.k.mu.iter().map(|x| x * power).collect(),
        nu: w.k.nu.iter().map(|x| x * power).collect(),
    };
    Element::k_monomial(&pres, k)
}

/// Parse an expression into a normalized element of the given presentation.
pub fn parse(text: &str, pres: &Presentation) -> Result<Element> {
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser { toks, at: 0, pres };
    let v = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(Error::Parse { pos: p.pos(), msg: "trailing input".into() });
    }
    Ok(to_element(pres, v))
}
