//! Ring descriptors and canonical element values.
//!
//! A [`Ring`] is a runtime description of a concrete ring. Elements are plain
//! [`Value`]s interpreted relative to a ring; all arithmetic goes through the
//! ring so that every result comes back in canonical form (residues reduced,
//! zero coefficients pruned, Weyl monomials normal-ordered). Under that
//! discipline structural equality of values is ring equality.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::weyl::{self, WeylMonomial};

/// Shape of a concrete ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingKind {
    Integers,
    Rationals,
    /// `Z/mZ` with `m >= 2`.
    Modular(u64),
    /// `F_p`, `p` prime.
    PrimeField(u64),
    /// Polynomials over `base` in the named variables. The variables always
    /// commute with coefficients; with `commutative == false` they do not
    /// commute with each other (free algebra).
    Polynomial {
        base: Ring,
        vars: Vec<String>,
        commutative: bool,
    },
    /// `F[g_1, ..., g_k] / (g_1, ..., g_k)^2` over a field.
    SquareZero { field: Ring, gens: Vec<String> },
    /// `n x n` matrices over `base`.
    Matrix { base: Ring, n: usize },
    /// Weyl algebra on pairs `x_i, y_i` over `base`. `bound = Some(n)` is
    /// `A_n` (indices `0..n`), `None` is `A_I` with `I` the naturals.
    Weyl { base: Ring, bound: Option<usize> },
}

/// Cheaply clonable handle to a [`RingKind`]. Compares structurally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring(Arc<RingKind>);

/// Polynomial monomial. For commutative rings this is the exponent vector
/// (one slot per variable); for free algebras it is the word of variable
/// indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

/// Canonical value of an element. Only meaningful together with its ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(BigInt),
    Rat(BigRational),
    Residue(u64),
    Poly(BTreeMap<Monomial, Value>),
    /// Constant term followed by one coefficient per generator.
    SquareZero(Vec<Value>),
    /// Row-major `n * n` entries.
    Matrix(Vec<Value>),
    Weyl(BTreeMap<WeylMonomial, Value>),
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_names(names: &[String], what: &str) -> Result<()> {
    if names.is_empty() {
        return Err(Error::InvalidRing(format!("{what} needs at least one name")));
    }
    for (i, name) in names.iter().enumerate() {
        if !is_identifier(name) {
            return Err(Error::InvalidRing(format!("bad {what} name {name:?}")));
        }
        if names[..i].contains(name) {
            return Err(Error::InvalidRing(format!("duplicate {what} name {name:?}")));
        }
    }
    Ok(())
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

fn reduce_big(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().unwrap_or(0)
}

impl Ring {
    fn wrap(kind: RingKind) -> Ring {
        Ring(Arc::new(kind))
    }

    pub fn integers() -> Ring {
        Ring::wrap(RingKind::Integers)
    }

    pub fn rationals() -> Ring {
        Ring::wrap(RingKind::Rationals)
    }

    pub fn modular(m: u64) -> Result<Ring> {
        if m < 2 {
            return Err(Error::InvalidRing(format!("modulus {m} must be at least 2")));
        }
        Ok(Ring::wrap(RingKind::Modular(m)))
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(Ring::wrap(RingKind::PrimeField(p)))
    }

    pub fn polynomial(base: Ring, vars: Vec<String>, commutative: bool) -> Result<Ring> {
        check_names(&vars, "variable")?;
        Ok(Ring::wrap(RingKind::Polynomial {
            base,
            vars,
            commutative,
        }))
    }

    pub fn square_zero(field: Ring, gens: Vec<String>) -> Result<Ring> {
        if !matches!(field.kind(), RingKind::PrimeField(_) | RingKind::Rationals) {
            return Err(Error::InvalidRing(
                "square-zero quotient needs a prime field or the rationals".to_string(),
            ));
        }
        check_names(&gens, "generator")?;
        Ok(Ring::wrap(RingKind::SquareZero { field, gens }))
    }

    pub fn matrix(base: Ring, n: usize) -> Result<Ring> {
        if n == 0 {
            return Err(Error::InvalidRing("matrix size must be positive".to_string()));
        }
        Ok(Ring::wrap(RingKind::Matrix { base, n }))
    }

    pub fn weyl(base: Ring, bound: Option<usize>) -> Result<Ring> {
        if bound == Some(0) {
            return Err(Error::InvalidRing("Weyl index bound must be positive".to_string()));
        }
        Ok(Ring::wrap(RingKind::Weyl { base, bound }))
    }

    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    /// Coefficient ring one level down, if any.
    pub fn base(&self) -> Option<&Ring> {
        match self.kind() {
            RingKind::Polynomial { base, .. }
            | RingKind::Matrix { base, .. }
            | RingKind::Weyl { base, .. } => Some(base),
            RingKind::SquareZero { field, .. } => Some(field),
            _ => None,
        }
    }

    pub fn matrix_size(&self) -> Option<usize> {
        match self.kind() {
            RingKind::Matrix { n, .. } => Some(*n),
            _ => None,
        }
    }

    pub fn is_commutative(&self) -> bool {
        match self.kind() {
            RingKind::Integers
            | RingKind::Rationals
            | RingKind::Modular(_)
            | RingKind::PrimeField(_)
            | RingKind::SquareZero { .. } => true,
            RingKind::Polynomial {
                base,
                vars,
                commutative,
            } => base.is_commutative() && (*commutative || vars.len() == 1),
            RingKind::Matrix { base, n } => *n == 1 && base.is_commutative(),
            RingKind::Weyl { .. } => false,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self.kind(), RingKind::Rationals | RingKind::PrimeField(_))
    }

    /// The prime `p` when this ring is `F_p`.
    pub fn prime(&self) -> Option<u64> {
        match self.kind() {
            RingKind::PrimeField(p) => Some(*p),
            _ => None,
        }
    }

    /// Whether `p * 1 = 0` in this ring.
    pub fn has_characteristic(&self, p: u64) -> bool {
        self.is_zero(&self.from_int(&BigInt::from(p)))
    }

    pub fn zero(&self) -> Value {
        match self.kind() {
            RingKind::Integers => Value::Int(BigInt::zero()),
            RingKind::Rationals => Value::Rat(BigRational::zero()),
            RingKind::Modular(_) | RingKind::PrimeField(_) => Value::Residue(0),
            RingKind::Polynomial { .. } => Value::Poly(BTreeMap::new()),
            RingKind::SquareZero { field, gens } => {
                Value::SquareZero(vec![field.zero(); gens.len() + 1])
            }
            RingKind::Matrix { base, n } => Value::Matrix(vec![base.zero(); n * n]),
            RingKind::Weyl { .. } => Value::Weyl(BTreeMap::new()),
        }
    }

    pub fn one(&self) -> Value {
        self.from_int(&BigInt::one())
    }

    pub fn from_i64(&self, n: i64) -> Value {
        self.from_int(&BigInt::from(n))
    }

    /// Image of an integer under the unique unital map `Z -> R`.
    pub fn from_int(&self, n: &BigInt) -> Value {
        match self.kind() {
            RingKind::Integers => Value::Int(n.clone()),
            RingKind::Rationals => Value::Rat(BigRational::from_integer(n.clone())),
            RingKind::Modular(m) | RingKind::PrimeField(m) => Value::Residue(reduce_big(n, *m)),
            RingKind::Polynomial { base, .. }
            | RingKind::SquareZero { field: base, .. }
            | RingKind::Weyl { base, .. }
            | RingKind::Matrix { base, .. } => self.embed(&base.from_int(n)),
        }
    }

    /// Embeds an element of the coefficient ring: constants for polynomial,
    /// square-zero and Weyl rings, scalar matrices for matrix rings.
    /// Panics if the ring has no coefficient ring.
    pub fn embed(&self, c: &Value) -> Value {
        match self.kind() {
            RingKind::Polynomial {
                base,
                vars,
                commutative,
            } => {
                let mut map = BTreeMap::new();
                if !base.is_zero(c) {
                    let mono = if *commutative {
                        Monomial(vec![0; vars.len()])
                    } else {
                        Monomial(Vec::new())
                    };
                    map.insert(mono, c.clone());
                }
                Value::Poly(map)
            }
            RingKind::SquareZero { field, gens } => {
                let mut parts = vec![field.zero(); gens.len() + 1];
                parts[0] = c.clone();
                Value::SquareZero(parts)
            }
            RingKind::Matrix { base, n } => {
                let mut entries = vec![base.zero(); n * n];
                for i in 0..*n {
                    entries[i * n + i] = c.clone();
                }
                Value::Matrix(entries)
            }
            RingKind::Weyl { base, .. } => {
                let mut map = BTreeMap::new();
                if !base.is_zero(c) {
                    map.insert(WeylMonomial::one(), c.clone());
                }
                Value::Weyl(map)
            }
            _ => panic!("ring {self:?} has no coefficient ring"),
        }
    }

    /// The polynomial variable or square-zero generator with the given index.
    pub fn generator(&self, index: usize) -> Option<Value> {
        match self.kind() {
            RingKind::Polynomial {
                base,
                vars,
                commutative,
            } if index < vars.len() => {
                let mono = if *commutative {
                    let mut e = vec![0; vars.len()];
                    e[index] = 1;
                    Monomial(e)
                } else {
                    Monomial(vec![index as u32])
                };
                let mut map = BTreeMap::new();
                map.insert(mono, base.one());
                Some(Value::Poly(map))
            }
            RingKind::SquareZero { field, gens } if index < gens.len() => {
                let mut parts = vec![field.zero(); gens.len() + 1];
                parts[index + 1] = field.one();
                Some(Value::SquareZero(parts))
            }
            _ => None,
        }
    }

    pub fn is_zero(&self, v: &Value) -> bool {
        match v {
            Value::Int(n) => n.is_zero(),
            Value::Rat(q) => q.is_zero(),
            Value::Residue(r) => *r == 0,
            Value::Poly(map) => map.is_empty(),
            Value::Weyl(map) => map.is_empty(),
            Value::SquareZero(parts) => {
                let field = self.base().expect("square-zero ring");
                parts.iter().all(|c| field.is_zero(c))
            }
            Value::Matrix(entries) => {
                let base = self.base().expect("matrix ring");
                entries.iter().all(|c| base.is_zero(c))
            }
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (self.kind(), a, b) {
            (RingKind::Integers, Value::Int(x), Value::Int(y)) => Value::Int(x + y),
            (RingKind::Rationals, Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
            (RingKind::Modular(m) | RingKind::PrimeField(m), Value::Residue(x), Value::Residue(y)) => {
                Value::Residue(((*x as u128 + *y as u128) % *m as u128) as u64)
            }
            (RingKind::Polynomial { base, .. }, Value::Poly(x), Value::Poly(y)) => {
                Value::Poly(merge_add(base, x, y))
            }
            (RingKind::Weyl { base, .. }, Value::Weyl(x), Value::Weyl(y)) => {
                Value::Weyl(merge_add(base, x, y))
            }
            (RingKind::SquareZero { field, .. }, Value::SquareZero(x), Value::SquareZero(y)) => {
                Value::SquareZero(x.iter().zip(y).map(|(p, q)| field.add(p, q)).collect())
            }
            (RingKind::Matrix { base, .. }, Value::Matrix(x), Value::Matrix(y)) => {
                Value::Matrix(x.iter().zip(y).map(|(p, q)| base.add(p, q)).collect())
            }
            _ => panic!("add: value does not belong to {self:?}"),
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match (self.kind(), a) {
            (RingKind::Integers, Value::Int(x)) => Value::Int(-x),
            (RingKind::Rationals, Value::Rat(x)) => Value::Rat(-x),
            (RingKind::Modular(m) | RingKind::PrimeField(m), Value::Residue(x)) => {
                Value::Residue(if *x == 0 { 0 } else { m - x })
            }
            (RingKind::Polynomial { base, .. }, Value::Poly(x)) => {
                Value::Poly(x.iter().map(|(k, c)| (k.clone(), base.neg(c))).collect())
            }
            (RingKind::Weyl { base, .. }, Value::Weyl(x)) => {
                Value::Weyl(x.iter().map(|(k, c)| (k.clone(), base.neg(c))).collect())
            }
            (RingKind::SquareZero { field, .. }, Value::SquareZero(x)) => {
                Value::SquareZero(x.iter().map(|c| field.neg(c)).collect())
            }
            (RingKind::Matrix { base, .. }, Value::Matrix(x)) => {
                Value::Matrix(x.iter().map(|c| base.neg(c)).collect())
            }
            _ => panic!("neg: value does not belong to {self:?}"),
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (self.kind(), a, b) {
            (RingKind::Integers, Value::Int(x), Value::Int(y)) => Value::Int(x * y),
            (RingKind::Rationals, Value::Rat(x), Value::Rat(y)) => Value::Rat(x * y),
            (RingKind::Modular(m) | RingKind::PrimeField(m), Value::Residue(x), Value::Residue(y)) => {
                Value::Residue(((*x as u128 * *y as u128) % *m as u128) as u64)
            }
            (
                RingKind::Polynomial {
                    base, commutative, ..
                },
                Value::Poly(x),
                Value::Poly(y),
            ) => {
                let mut acc: BTreeMap<Monomial, Value> = BTreeMap::new();
                for (m1, c1) in x {
                    for (m2, c2) in y {
                        let c = base.mul(c1, c2);
                        if base.is_zero(&c) {
                            continue;
                        }
                        let mono = if *commutative {
                            Monomial(m1.0.iter().zip(&m2.0).map(|(p, q)| p + q).collect())
                        } else {
                            Monomial(m1.0.iter().chain(&m2.0).copied().collect())
                        };
                        accumulate(base, &mut acc, mono, c);
                    }
                }
                Value::Poly(acc)
            }
            (RingKind::Weyl { base, .. }, Value::Weyl(x), Value::Weyl(y)) => {
                Value::Weyl(weyl::multiply_maps(base, x, y))
            }
            (RingKind::SquareZero { field, .. }, Value::SquareZero(x), Value::SquareZero(y)) => {
                let mut out = Vec::with_capacity(x.len());
                out.push(field.mul(&x[0], &y[0]));
                for i in 1..x.len() {
                    out.push(field.add(&field.mul(&x[0], &y[i]), &field.mul(&x[i], &y[0])));
                }
                Value::SquareZero(out)
            }
            (RingKind::Matrix { base, n }, Value::Matrix(x), Value::Matrix(y)) => {
                let n = *n;
                let mut out = Vec::with_capacity(n * n);
                for i in 0..n {
                    for j in 0..n {
                        let mut s = base.zero();
                        for k in 0..n {
                            let l = &x[i * n + k];
                            let r = &y[k * n + j];
                            if base.is_zero(l) || base.is_zero(r) {
                                continue;
                            }
                            s = base.add(&s, &base.mul(l, r));
                        }
                        out.push(s);
                    }
                }
                Value::Matrix(out)
            }
            _ => panic!("mul: value does not belong to {self:?}"),
        }
    }

    /// `ab - ba`.
    pub fn commutator(&self, a: &Value, b: &Value) -> Value {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    /// `k * v` for an integer `k`.
    pub fn scale_int(&self, v: &Value, k: &BigInt) -> Value {
        match (self.kind(), v) {
            (RingKind::Integers, Value::Int(x)) => Value::Int(x * k),
            (RingKind::Rationals, Value::Rat(x)) => Value::Rat(x * BigRational::from_integer(k.clone())),
            (RingKind::Modular(m) | RingKind::PrimeField(m), Value::Residue(x)) => {
                let k = reduce_big(k, *m);
                Value::Residue(((*x as u128 * k as u128) % *m as u128) as u64)
            }
            (RingKind::Polynomial { base, .. }, Value::Poly(x)) => Value::Poly(
                x.iter()
                    .map(|(m, c)| (m.clone(), base.scale_int(c, k)))
                    .filter(|(_, c)| !base.is_zero(c))
                    .collect(),
            ),
            (RingKind::Weyl { base, .. }, Value::Weyl(x)) => Value::Weyl(
                x.iter()
                    .map(|(m, c)| (m.clone(), base.scale_int(c, k)))
                    .filter(|(_, c)| !base.is_zero(c))
                    .collect(),
            ),
            (RingKind::SquareZero { field, .. }, Value::SquareZero(x)) => {
                Value::SquareZero(x.iter().map(|c| field.scale_int(c, k)).collect())
            }
            (RingKind::Matrix { base, .. }, Value::Matrix(x)) => {
                Value::Matrix(x.iter().map(|c| base.scale_int(c, k)).collect())
            }
            _ => panic!("scale_int: value does not belong to {self:?}"),
        }
    }

    pub fn pow(&self, v: &Value, mut e: u32) -> Value {
        let mut acc = self.one();
        let mut sq = v.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// Some `w` with `d * w = v`, if the ring provides one exactly.
    /// For `Z/m` this requires `d` to be a unit.
    pub fn try_div_int(&self, v: &Value, d: &BigInt) -> Option<Value> {
        if d.is_zero() {
            return None;
        }
        match (self.kind(), v) {
            (RingKind::Integers, Value::Int(x)) => {
                let (q, r) = x.div_rem(d);
                r.is_zero().then_some(Value::Int(q))
            }
            (RingKind::Rationals, Value::Rat(x)) => {
                Some(Value::Rat(x / BigRational::from_integer(d.clone())))
            }
            (RingKind::Modular(m) | RingKind::PrimeField(m), Value::Residue(x)) => {
                let inv = mod_inverse(reduce_big(d, *m), *m)?;
                Some(Value::Residue(((*x as u128 * inv as u128) % *m as u128) as u64))
            }
            (RingKind::Polynomial { base, .. }, Value::Poly(x)) => {
                let mut out = BTreeMap::new();
                for (m, c) in x {
                    let q = base.try_div_int(c, d)?;
                    if !base.is_zero(&q) {
                        out.insert(m.clone(), q);
                    }
                }
                Some(Value::Poly(out))
            }
            (RingKind::Weyl { base, .. }, Value::Weyl(x)) => {
                let mut out = BTreeMap::new();
                for (m, c) in x {
                    let q = base.try_div_int(c, d)?;
                    if !base.is_zero(&q) {
                        out.insert(m.clone(), q);
                    }
                }
                Some(Value::Weyl(out))
            }
            (RingKind::SquareZero { field, .. }, Value::SquareZero(x)) => x
                .iter()
                .map(|c| field.try_div_int(c, d))
                .collect::<Option<Vec<_>>>()
                .map(Value::SquareZero),
            (RingKind::Matrix { base, .. }, Value::Matrix(x)) => x
                .iter()
                .map(|c| base.try_div_int(c, d))
                .collect::<Option<Vec<_>>>()
                .map(Value::Matrix),
            _ => None,
        }
    }

    /// Two-sided inverse where one is readily available: units of `Z`,
    /// nonzero field elements, units of `Z/m`, and square-zero elements with
    /// invertible constant term.
    pub fn inverse(&self, v: &Value) -> Option<Value> {
        match (self.kind(), v) {
            (RingKind::Integers, Value::Int(x)) => (x.abs().is_one()).then(|| Value::Int(x.clone())),
            (RingKind::Rationals, Value::Rat(x)) => (!x.is_zero()).then(|| Value::Rat(x.recip())),
            (RingKind::Modular(m) | RingKind::PrimeField(m), Value::Residue(x)) => {
                mod_inverse(*x, *m).map(Value::Residue)
            }
            (RingKind::SquareZero { field, .. }, Value::SquareZero(x)) => {
                let c = field.inverse(&x[0])?;
                let c2 = field.neg(&field.mul(&c, &c));
                let mut out = vec![c];
                out.extend(x[1..].iter().map(|g| field.mul(&c2, g)));
                Some(Value::SquareZero(out))
            }
            _ => None,
        }
    }

    /// Whether `v` is a canonical value of this ring.
    pub fn contains(&self, v: &Value) -> bool {
        match (self.kind(), v) {
            (RingKind::Integers, Value::Int(_)) | (RingKind::Rationals, Value::Rat(_)) => true,
            (RingKind::Modular(m) | RingKind::PrimeField(m), Value::Residue(x)) => x < m,
            (
                RingKind::Polynomial {
                    base,
                    vars,
                    commutative,
                },
                Value::Poly(map),
            ) => map.iter().all(|(mono, c)| {
                let shape_ok = if *commutative {
                    mono.0.len() == vars.len()
                } else {
                    mono.0.iter().all(|&i| (i as usize) < vars.len())
                };
                shape_ok && base.contains(c) && !base.is_zero(c)
            }),
            (RingKind::SquareZero { field, gens }, Value::SquareZero(parts)) => {
                parts.len() == gens.len() + 1 && parts.iter().all(|c| field.contains(c))
            }
            (RingKind::Matrix { base, n }, Value::Matrix(entries)) => {
                entries.len() == n * n && entries.iter().all(|c| base.contains(c))
            }
            (RingKind::Weyl { base, bound }, Value::Weyl(map)) => map.iter().all(|(mono, c)| {
                mono.is_canonical()
                    && bound.is_none_or(|b| mono.max_index().is_none_or(|i| i < b))
                    && base.contains(c)
                    && !base.is_zero(c)
            }),
            _ => false,
        }
    }

    pub(crate) fn check(&self, v: &Value) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::NotInRing(self.to_string()))
        }
    }

    pub(crate) fn expect_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                expected: self.to_string(),
                found: other.to_string(),
            })
        }
    }

    /// Canonical text of a value of this ring.
    pub fn show(&self, v: &Value) -> String {
        self.display(v).to_string()
    }
}

pub(crate) fn accumulate<K: Ord>(base: &Ring, acc: &mut BTreeMap<K, Value>, key: K, c: Value) {
    use alloc::collections::btree_map::Entry;
    match acc.entry(key) {
        Entry::Vacant(slot) => {
            slot.insert(c);
        }
        Entry::Occupied(mut slot) => {
            let sum = base.add(slot.get(), &c);
            if base.is_zero(&sum) {
                slot.remove();
            } else {
                *slot.get_mut() = sum;
            }
        }
    }
}

fn merge_add<K: Ord + Clone>(
    base: &Ring,
    x: &BTreeMap<K, Value>,
    y: &BTreeMap<K, Value>,
) -> BTreeMap<K, Value> {
    let mut out = x.clone();
    for (k, c) in y {
        accumulate(base, &mut out, k.clone(), c.clone());
    }
    out
}

/// An element tagged with its ring. Arithmetic between elements checks that
/// the rings agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    ring: Ring,
    value: Value,
}

impl Element {
    pub fn new(ring: Ring, value: Value) -> Result<Element> {
        ring.check(&value)?;
        Ok(Element { ring, value })
    }

    pub(crate) fn from_parts(ring: Ring, value: Value) -> Element {
        debug_assert!(ring.contains(&value));
        Element { ring, value }
    }

    pub fn zero(ring: &Ring) -> Element {
        Element::from_parts(ring.clone(), ring.zero())
    }

    pub fn one(ring: &Ring) -> Element {
        Element::from_parts(ring.clone(), ring.one())
    }

    pub fn from_int(ring: &Ring, n: i64) -> Element {
        Element::from_parts(ring.clone(), ring.from_i64(n))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }

    fn binary(&self, other: &Element, op: impl Fn(&Ring, &Value, &Value) -> Value) -> Result<Element> {
        self.ring.expect_same(&other.ring)?;
        Ok(Element::from_parts(
            self.ring.clone(),
            op(&self.ring, &self.value, &other.value),
        ))
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.binary(other, Ring::add)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.binary(other, Ring::sub)
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.binary(other, Ring::mul)
    }

    pub fn neg(&self) -> Element {
        Element::from_parts(self.ring.clone(), self.ring.neg(&self.value))
    }

    pub fn pow(&self, e: u32) -> Element {
        Element::from_parts(self.ring.clone(), self.ring.pow(&self.value, e))
    }
}

impl core::fmt::Display for Element {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        self.ring.display(&self.value).fmt(f)
    }
}
