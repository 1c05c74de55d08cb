//! Canonical text output for rings and values.
//!
//! The grammar matches what the companion parser accepts: infix `+ - * ^`,
//! `/` for rational coefficients, nested brackets for matrices. Terms of a
//! polynomial-like value are printed highest degree first.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{self, Display, Formatter, Write};

use num_traits::{One, Signed};

use crate::ring::{Monomial, Ring, RingKind, Value};

impl Display for Ring {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self.kind() {
            RingKind::Integers => f.write_str("Z"),
            RingKind::Rationals => f.write_str("Q"),
            RingKind::Modular(m) => write!(f, "mod {m}"),
            RingKind::PrimeField(p) => write!(f, "F{p}"),
            RingKind::Polynomial {
                base,
                vars,
                commutative,
            } => {
                let head = if *commutative { "poly" } else { "freepoly" };
                write!(f, "{head}({base}; {})", vars.join(", "))
            }
            RingKind::SquareZero { field, gens } => write!(f, "sqzero({field}; {})", gens.join(", ")),
            RingKind::Matrix { base, n } => write!(f, "matrix({base}, {n})"),
            RingKind::Weyl { base, bound: None } => write!(f, "weyl({base})"),
            RingKind::Weyl {
                base,
                bound: Some(n),
            } => write!(f, "weyl({base}, {n})"),
        }
    }
}

/// Borrowed pair of ring and value implementing [`Display`].
pub struct ValueDisplay<'a> {
    ring: &'a Ring,
    value: &'a Value,
}

impl Ring {
    pub fn display<'a>(&'a self, value: &'a Value) -> ValueDisplay<'a> {
        ValueDisplay { ring: self, value }
    }
}

impl Display for ValueDisplay<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_value(f, self.ring, self.value)
    }
}

fn is_scalar(ring: &Ring) -> bool {
    matches!(
        ring.kind(),
        RingKind::Integers | RingKind::Rationals | RingKind::Modular(_) | RingKind::PrimeField(_)
    )
}

fn sign_split(value: &Value) -> (bool, Value) {
    match value {
        Value::Int(n) if n.is_negative() => (true, Value::Int(-n)),
        Value::Rat(q) if q.is_negative() => (true, Value::Rat(-q)),
        other => (false, other.clone()),
    }
}

fn write_value(f: &mut dyn Write, ring: &Ring, value: &Value) -> fmt::Result {
    match (ring.kind(), value) {
        (_, Value::Int(n)) => write!(f, "{n}"),
        (_, Value::Rat(q)) => {
            if q.denom().is_one() {
                write!(f, "{}", q.numer())
            } else {
                write!(f, "{}/{}", q.numer(), q.denom())
            }
        }
        (_, Value::Residue(r)) => write!(f, "{r}"),
        (RingKind::Matrix { base, n }, Value::Matrix(entries)) => {
            f.write_char('[')?;
            for i in 0..*n {
                if i > 0 {
                    f.write_char(',')?;
                }
                f.write_char('[')?;
                for j in 0..*n {
                    if j > 0 {
                        f.write_char(',')?;
                    }
                    write_value(f, base, &entries[i * n + j])?;
                }
                f.write_char(']')?;
            }
            f.write_char(']')
        }
        (
            RingKind::Polynomial {
                base,
                vars,
                commutative,
            },
            Value::Poly(map),
        ) => {
            let mut terms: Vec<(&Monomial, &Value)> = map.iter().collect();
            if *commutative {
                terms.sort_by(|(a, _), (b, _)| {
                    let da: u32 = a.0.iter().sum();
                    let db: u32 = b.0.iter().sum();
                    db.cmp(&da).then_with(|| b.0.cmp(&a.0))
                });
            } else {
                terms.sort_by(|(a, _), (b, _)| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
            }
            let rendered: Vec<(String, &Value)> = terms
                .into_iter()
                .map(|(m, c)| (poly_monomial_text(m, vars, *commutative), c))
                .collect();
            write_terms(f, base, &rendered)
        }
        (RingKind::SquareZero { field, gens }, Value::SquareZero(parts)) => {
            let mut rendered: Vec<(String, &Value)> = Vec::new();
            for (name, c) in gens.iter().zip(&parts[1..]) {
                if !field.is_zero(c) {
                    rendered.push((name.clone(), c));
                }
            }
            if !field.is_zero(&parts[0]) {
                rendered.push((String::new(), &parts[0]));
            }
            write_terms(f, field, &rendered)
        }
        (RingKind::Weyl { base, .. }, Value::Weyl(map)) => {
            let mut terms: Vec<_> = map.iter().collect();
            terms.sort_by(|(a, _), (b, _)| {
                b.degree()
                    .cmp(&a.degree())
                    .then_with(|| dense_cmp(a.pairs(), b.pairs()).reverse())
            });
            let rendered: Vec<(String, &Value)> =
                terms.into_iter().map(|(m, c)| (m.to_text(), c)).collect();
            write_terms(f, base, &rendered)
        }
        _ => f.write_str("<invalid>"),
    }
}

/// Compares Weyl monomials index by index, treating absent indices as `(0, 0)`.
fn dense_cmp(a: &[(usize, u32, u32)], b: &[(usize, u32, u32)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        let next_a = a.get(i).map(|t| t.0);
        let next_b = b.get(j).map(|t| t.0);
        let idx = match (next_a, next_b) {
            (None, None) => return Ordering::Equal,
            (Some(x), None) => x,
            (None, Some(y)) => y,
            (Some(x), Some(y)) => x.min(y),
        };
        let ea = if next_a == Some(idx) {
            i += 1;
            (a[i - 1].1, a[i - 1].2)
        } else {
            (0, 0)
        };
        let eb = if next_b == Some(idx) {
            j += 1;
            (b[j - 1].1, b[j - 1].2)
        } else {
            (0, 0)
        };
        match ea.cmp(&eb) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
}

fn power(out: &mut String, name: &str, e: u32) {
    if !out.is_empty() {
        out.push('*');
    }
    out.push_str(name);
    if e > 1 {
        let _ = write!(out, "^{e}");
    }
}

fn poly_monomial_text(m: &Monomial, vars: &[String], commutative: bool) -> String {
    let mut out = String::new();
    if commutative {
        for (name, &e) in vars.iter().zip(&m.0) {
            if e > 0 {
                power(&mut out, name, e);
            }
        }
    } else {
        let mut k = 0;
        while k < m.0.len() {
            let v = m.0[k];
            let mut run = 1;
            while k + run < m.0.len() && m.0[k + run] == v {
                run += 1;
            }
            power(&mut out, &vars[v as usize], run as u32);
            k += run;
        }
    }
    out
}

pub(crate) fn write_weyl_monomial(out: &mut String, pairs: &[(usize, u32, u32)]) {
    let mut name = String::new();
    for &(i, a, b) in pairs {
        if a > 0 {
            name.clear();
            let _ = write!(name, "x{i}");
            power(out, &name, a);
        }
        if b > 0 {
            name.clear();
            let _ = write!(name, "y{i}");
            power(out, &name, b);
        }
    }
}

/// Splits a rendered compound coefficient into sign and body. Only a body
/// that is a single term loses its leading minus to the outer sum.
fn split_rendered(text: &str) -> (bool, &str, bool) {
    let multi = |t: &str| t.contains(" + ") || t.contains(" - ");
    match text.strip_prefix('-') {
        Some(body) if !multi(body) => (true, body, false),
        _ => (false, text, multi(text)),
    }
}

fn write_terms(f: &mut dyn Write, base: &Ring, terms: &[(String, &Value)]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_char('0');
    }
    let scalar = is_scalar(base);
    let sole = terms.len() == 1;
    for (k, (mono, coeff)) in terms.iter().enumerate() {
        let rendered = if scalar {
            let (neg, mag) = sign_split(coeff);
            let mut t = String::new();
            write_value(&mut t, base, &mag)?;
            (neg, t, false)
        } else if matches!(base.kind(), RingKind::Matrix { .. }) {
            let mut t = String::new();
            write_value(&mut t, base, coeff)?;
            (false, t, false)
        } else {
            let mut t = String::new();
            write_value(&mut t, base, coeff)?;
            let (neg, body, multi) = split_rendered(&t);
            (neg, String::from(body), multi)
        };
        let (neg, body, multi) = rendered;
        match (k, neg) {
            (0, true) => f.write_char('-')?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let wrap = multi && !(mono.is_empty() && sole);
        if mono.is_empty() || body != "1" {
            if wrap {
                write!(f, "({body})")?;
            } else {
                f.write_str(&body)?;
            }
            if mono.is_empty() {
                continue;
            }
            f.write_char('*')?;
        }
        f.write_str(mono)?;
    }
    Ok(())
}
