//! Text formats: ring descriptors, element expressions, commutator sums and
//! sparse operator triples.
//!
//! Everything the core crate prints parses back to the same value, so
//! reports can be replayed.

use std::fmt;

use commring_core::{CommutatorSum, Element, Ring, RingKind, Value};
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

pub type ParseResult<T> = Result<T, ParseError>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
        }
    }
}

/// `dash_idents` lets identifiers contain `-`, which ring names such as
/// `prime-field` need but expressions must not allow.
fn tokenize(text: &str, dash_idents: bool) -> ParseResult<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((start, Tok::Num(digits.parse().expect("ascii digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || (dash_idents && chars[i] == '-'))
            {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^()[]{},;:".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError {
                pos: i,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Cursor {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Cursor {
    fn new(text: &str, dash_idents: bool) -> ParseResult<Cursor> {
        Ok(Cursor {
            toks: tokenize(text, dash_idents)?,
            at: 0,
            end: text.chars().count(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> ParseResult<T> {
        Err(ParseError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.1.clone());
        self.at += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> ParseResult<()> {
        if self.eat(c) {
            return Ok(());
        }
        match self.peek() {
            Some(t) => self.err(format!("expected '{c}', found {t}")),
            None => self.err(format!("expected '{c}', found end of input")),
        }
    }

    fn number(&mut self) -> ParseResult<BigInt> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = n.clone();
                self.at += 1;
                Ok(n)
            }
            _ => self.err("expected a number"),
        }
    }

    fn small(&mut self) -> ParseResult<u64> {
        let pos = self.pos();
        let n = self.number()?;
        u64::try_from(&n).map_err(|_| ParseError {
            pos,
            msg: format!("{n} is too large"),
        })
    }

    fn ident(&mut self) -> ParseResult<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => self.err("expected a name"),
        }
    }

    fn finish(&self) -> ParseResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => self.err(format!("unexpected {t}")),
        }
    }
}

fn core_err<T>(pos: usize, e: commring_core::Error) -> ParseResult<T> {
    Err(ParseError { pos, msg: e.to_string() })
}

// ---------------------------------------------------------------- rings

/// Parses a ring descriptor. Accepts the printed forms (`Z`, `mod 6`, `F7`,
/// `poly(Z; t)`, `matrix(F2, 2)`, ...) and long names such as
/// `prime-field(7)` or `square-zero-quotient(prime-field(2), {x11, x12})`.
/// A leading `ring:` is ignored.
pub fn parse_ring(text: &str) -> ParseResult<Ring> {
    let mut cur = Cursor::new(text, true)?;
    if cur.peek() == Some(&Tok::Ident("ring".into())) && cur.toks.get(1).map(|t| &t.1) == Some(&Tok::Sym(':')) {
        cur.at = 2;
    }
    let ring = ring_expr(&mut cur)?;
    cur.finish()?;
    Ok(ring)
}

fn names(cur: &mut Cursor, close: char) -> ParseResult<Vec<String>> {
    let mut out = vec![cur.ident()?];
    while cur.eat(',') {
        out.push(cur.ident()?);
    }
    cur.expect(close)?;
    Ok(out)
}

/// `; a, b)` or `, {a, b})`.
fn name_list(cur: &mut Cursor) -> ParseResult<Vec<String>> {
    if cur.eat(';') {
        names(cur, ')')
    } else {
        cur.expect(',')?;
        cur.expect('{')?;
        let out = names(cur, '}')?;
        cur.expect(')')?;
        Ok(out)
    }
}

fn ring_expr(cur: &mut Cursor) -> ParseResult<Ring> {
    let pos = cur.pos();
    let word = cur.ident()?;
    let built = match word.as_str() {
        "Z" | "integers" => Ok(Ring::integers()),
        "Q" | "rationals" => Ok(Ring::rationals()),
        "mod" => {
            let m = cur.small()?;
            Ring::modular(m)
        }
        "modular" => {
            cur.expect('(')?;
            let m = cur.small()?;
            cur.expect(')')?;
            Ring::modular(m)
        }
        "prime-field" => {
            cur.expect('(')?;
            let p = cur.small()?;
            cur.expect(')')?;
            Ring::prime_field(p)
        }
        "poly" | "freepoly" | "polynomial" | "free-polynomial" => {
            cur.expect('(')?;
            let base = ring_expr(cur)?;
            let vars = name_list(cur)?;
            Ring::polynomial(base, vars, matches!(word.as_str(), "poly" | "polynomial"))
        }
        "sqzero" | "square-zero-quotient" => {
            cur.expect('(')?;
            let field = ring_expr(cur)?;
            let gens = name_list(cur)?;
            Ring::square_zero(field, gens)
        }
        "matrix" => {
            cur.expect('(')?;
            let base = ring_expr(cur)?;
            cur.expect(',')?;
            let n = cur.small()? as usize;
            cur.expect(')')?;
            Ring::matrix(base, n)
        }
        "weyl" => {
            cur.expect('(')?;
            let base = ring_expr(cur)?;
            let bound = if cur.eat(',') { Some(cur.small()? as usize) } else { None };
            cur.expect(')')?;
            Ring::weyl(base, bound)
        }
        w if w.len() > 1 && w.starts_with('F') && w[1..].bytes().all(|b| b.is_ascii_digit()) => {
            Ring::prime_field(w[1..].parse().map_err(|_| ParseError {
                pos,
                msg: format!("{w} is too large"),
            })?)
        }
        _ => {
            return Err(ParseError {
                pos,
                msg: format!("unknown ring '{word}'"),
            })
        }
    };
    built.or_else(|e| core_err(pos, e))
}

// ------------------------------------------------------------- elements

pub fn parse_element(text: &str, ring: &Ring) -> ParseResult<Element> {
    let mut cur = Cursor::new(text, false)?;
    let v = expr(&mut cur, ring)?;
    cur.finish()?;
    Ok(Element::new(ring.clone(), v).expect("parser builds values inside the ring"))
}

fn expr(cur: &mut Cursor, ring: &Ring) -> ParseResult<Value> {
    let mut acc = if cur.eat('-') {
        let t = term(cur, ring)?;
        ring.neg(&t)
    } else {
        term(cur, ring)?
    };
    loop {
        if cur.eat('+') {
            acc = ring.add(&acc, &term(cur, ring)?);
        } else if cur.eat('-') {
            acc = ring.sub(&acc, &term(cur, ring)?);
        } else {
            return Ok(acc);
        }
    }
}

fn term(cur: &mut Cursor, ring: &Ring) -> ParseResult<Value> {
    let mut acc = power(cur, ring)?;
    loop {
        if cur.eat('*') {
            acc = ring.mul(&acc, &power(cur, ring)?);
        } else if cur.peek() == Some(&Tok::Sym('/')) {
            let pos = cur.pos();
            cur.at += 1;
            acc = divide(cur, ring, acc, pos)?;
        } else {
            return Ok(acc);
        }
    }
}

/// Division by an integer literal is exact division; any other divisor must
/// be a unit of the ring.
fn divide(cur: &mut Cursor, ring: &Ring, acc: Value, pos: usize) -> ParseResult<Value> {
    if let Some(Tok::Num(d)) = cur.peek() {
        let is_plain = !matches!(cur.toks.get(cur.at + 1).map(|t| &t.1), Some(Tok::Sym('^')));
        if is_plain {
            let d = d.clone();
            cur.at += 1;
            return ring.try_div_int(&acc, &d).ok_or_else(|| ParseError {
                pos,
                msg: format!("{} is not divisible by {d} in {ring}", ring.show(&acc)),
            });
        }
    }
    let divisor = power(cur, ring)?;
    match ring.inverse(&divisor) {
        Some(inv) => Ok(ring.mul(&acc, &inv)),
        None => Err(ParseError {
            pos,
            msg: format!("{} is not invertible in {ring}", ring.show(&divisor)),
        }),
    }
}

fn power(cur: &mut Cursor, ring: &Ring) -> ParseResult<Value> {
    let base = atom(cur, ring)?;
    if cur.eat('^') {
        let pos = cur.pos();
        let e = cur.small()?;
        let e = u32::try_from(e).map_err(|_| ParseError {
            pos,
            msg: format!("exponent {e} is too large"),
        })?;
        return Ok(ring.pow(&base, e));
    }
    Ok(base)
}

fn atom(cur: &mut Cursor, ring: &Ring) -> ParseResult<Value> {
    let pos = cur.pos();
    match cur.next() {
        Some(Tok::Num(n)) => Ok(ring.from_int(&n)),
        Some(Tok::Sym('(')) => {
            let v = expr(cur, ring)?;
            cur.expect(')')?;
            Ok(v)
        }
        Some(Tok::Sym('-')) => {
            let v = power(cur, ring)?;
            Ok(ring.neg(&v))
        }
        Some(Tok::Sym('[')) => {
            cur.at -= 1;
            matrix_literal(cur, ring)
        }
        Some(Tok::Ident(name)) => resolve(ring, &name).ok_or_else(|| ParseError {
            pos,
            msg: format!("unknown name '{name}' in {ring}"),
        }),
        Some(t) => Err(ParseError {
            pos,
            msg: format!("unexpected {t}"),
        }),
        None => Err(ParseError {
            pos,
            msg: "unexpected end of input".into(),
        }),
    }
}

fn matrix_literal(cur: &mut Cursor, ring: &Ring) -> ParseResult<Value> {
    let pos = cur.pos();
    let RingKind::Matrix { base, n } = ring.kind() else {
        return cur.err(format!("matrix literal in non-matrix ring {ring}"));
    };
    cur.expect('[')?;
    let mut entries = Vec::with_capacity(n * n);
    let mut rows = 0;
    loop {
        cur.expect('[')?;
        let mut cols = 0;
        loop {
            entries.push(expr(cur, base)?);
            cols += 1;
            if !cur.eat(',') {
                break;
            }
        }
        cur.expect(']')?;
        if cols != *n {
            return Err(ParseError {
                pos,
                msg: format!("row {} has {cols} entries, expected {n}", rows + 1),
            });
        }
        rows += 1;
        if !cur.eat(',') {
            break;
        }
    }
    cur.expect(']')?;
    if rows != *n {
        return Err(ParseError {
            pos,
            msg: format!("{rows} rows, expected {n}"),
        });
    }
    Ok(Value::Matrix(entries))
}

fn weyl_generator(ring: &Ring, name: &str, bound: Option<usize>) -> Option<Value> {
    let (is_x, digits) = match name.as_bytes().first()? {
        b'x' => (true, &name[1..]),
        b'y' => (false, &name[1..]),
        _ => return None,
    };
    let index: usize = if digits.is_empty() {
        0
    } else if digits.bytes().all(|b| b.is_ascii_digit()) && (digits == "0" || !digits.starts_with('0')) {
        digits.parse().ok()?
    } else {
        return None;
    };
    if bound.is_some_and(|b| index >= b) {
        return None;
    }
    let g = if is_x {
        commring_core::weyl::x(ring, index)
    } else {
        commring_core::weyl::y(ring, index)
    };
    g.ok().map(Element::into_value)
}

/// Names are looked up in the ring itself first, then in its coefficient
/// ring (and embedded).
fn resolve(ring: &Ring, name: &str) -> Option<Value> {
    let own = match ring.kind() {
        RingKind::Polynomial { vars, .. } => vars.iter().position(|v| v == name).and_then(|i| ring.generator(i)),
        RingKind::SquareZero { gens, .. } => gens.iter().position(|v| v == name).and_then(|i| ring.generator(i)),
        RingKind::Weyl { bound, .. } => weyl_generator(ring, name, *bound),
        _ => None,
    };
    own.or_else(|| {
        let base = ring.base()?;
        resolve(base, name).map(|v| ring.embed(&v))
    })
}

// ------------------------------------------------------ compound inputs

/// `{(a, b), (c, d)}`; an empty sum is `{}`.
pub fn parse_sum(text: &str, ring: &Ring) -> ParseResult<CommutatorSum> {
    let mut cur = Cursor::new(text, false)?;
    let mut sum = CommutatorSum::new(ring);
    cur.expect('{')?;
    if !cur.eat('}') {
        loop {
            cur.expect('(')?;
            let a = expr(&mut cur, ring)?;
            cur.expect(',')?;
            let b = expr(&mut cur, ring)?;
            cur.expect(')')?;
            sum.push(a, b).expect("parsed values lie in the ring");
            if !cur.eat(',') {
                break;
            }
        }
        cur.expect('}')?;
    }
    cur.finish()?;
    Ok(sum)
}

/// `(row, col, value), ...` with 0-based indices; empty text is the zero
/// operator.
pub fn parse_triples(text: &str, base: &Ring) -> ParseResult<Vec<(usize, usize, Value)>> {
    let mut cur = Cursor::new(text, false)?;
    let mut out = Vec::new();
    if cur.peek().is_none() {
        return Ok(out);
    }
    loop {
        cur.expect('(')?;
        let r = cur.small()? as usize;
        cur.expect(',')?;
        let c = cur.small()? as usize;
        cur.expect(',')?;
        let v = expr(&mut cur, base)?;
        cur.expect(')')?;
        out.push((r, c, v));
        if !cur.eat(',') {
            break;
        }
    }
    cur.finish()?;
    Ok(out)
}

/// Comma-separated unsigned integers, e.g. block sizes `1, 2`.
pub fn parse_sizes(text: &str) -> ParseResult<Vec<usize>> {
    let mut cur = Cursor::new(text, false)?;
    let mut out = vec![cur.small()? as usize];
    while cur.eat(',') {
        out.push(cur.small()? as usize);
    }
    cur.finish()?;
    Ok(out)
}
