//! Seeded sampling of ring elements, for tests and the CLI's sampled checks.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::matrix::MatrixElement;
use crate::ring::{Monomial, Ring, RingKind, Value};
use crate::shift::FiniteOperator;
use crate::weyl::WeylMonomial;
use crate::error::Result;

/// Integer coefficients are drawn from `[-COEFF, COEFF]`.
const COEFF: i64 = 9;
const MAX_TERMS: usize = 3;
const MAX_EXP: u32 = 2;

pub fn random_value<R: Rng + ?Sized>(ring: &Ring, rng: &mut R) -> Value {
    match ring.kind() {
        RingKind::Integers => Value::Int(BigInt::from(rng.gen_range(-COEFF..=COEFF))),
        RingKind::Rationals => {
            let num = rng.gen_range(-COEFF..=COEFF);
            let den = rng.gen_range(1..=4i64);
            Value::Rat(BigRational::new(num.into(), den.into()))
        }
        RingKind::Modular(m) | RingKind::PrimeField(m) => Value::Residue(rng.gen_range(0..*m)),
        RingKind::Polynomial {
            base,
            vars,
            commutative,
        } => {
            let mut acc = ring.zero();
            for _ in 0..rng.gen_range(0..=MAX_TERMS) {
                let mono = if *commutative {
                    Monomial((0..vars.len()).map(|_| rng.gen_range(0..=MAX_EXP)).collect())
                } else {
                    let len = rng.gen_range(0..=MAX_EXP as usize + 1);
                    Monomial((0..len).map(|_| rng.gen_range(0..vars.len() as u32)).collect())
                };
                let mut map = BTreeMap::new();
                let c = random_value(base, rng);
                if !base.is_zero(&c) {
                    map.insert(mono, c);
                }
                acc = ring.add(&acc, &Value::Poly(map));
            }
            acc
        }
        RingKind::SquareZero { field, gens } => {
            Value::SquareZero((0..=gens.len()).map(|_| random_value(field, rng)).collect())
        }
        RingKind::Matrix { base, n } => Value::Matrix((0..n * n).map(|_| random_value(base, rng)).collect()),
        RingKind::Weyl { base, bound } => {
            let width = bound.unwrap_or(3).min(3);
            let mut acc = ring.zero();
            if width == 0 {
                return ring.embed(&random_value(base, rng));
            }
            for _ in 0..rng.gen_range(0..=MAX_TERMS) {
                let pairs: Vec<(usize, u32, u32)> = (0..width)
                    .map(|i| (i, rng.gen_range(0..=MAX_EXP), rng.gen_range(0..=MAX_EXP)))
                    .collect();
                let mono = WeylMonomial::new(pairs).expect("distinct indices");
                let c = random_value(base, rng);
                let mut map = BTreeMap::new();
                if !base.is_zero(&c) {
                    map.insert(mono, c);
                }
                acc = ring.add(&acc, &Value::Weyl(map));
            }
            acc
        }
    }
}

/// Random `n x n` matrix with trace zero: the last diagonal entry absorbs
/// the others.
pub fn random_trace_zero<R: Rng + ?Sized>(base: &Ring, n: usize, rng: &mut R) -> Result<MatrixElement> {
    let m = MatrixElement::from_fn(base, n, |_, _| random_value(base, rng))?;
    let t = m.trace();
    let last = base.sub(m.get(n - 1, n - 1), &t);
    m.with_entry(n - 1, n - 1, last)
}

/// Random finitely supported operator with entries inside `[0, size)^2`.
pub fn random_finite_operator<R: Rng + ?Sized>(base: &Ring, size: usize, terms: usize, rng: &mut R) -> FiniteOperator {
    let mut f = FiniteOperator::new(base);
    for _ in 0..terms {
        let (r, c) = (rng.gen_range(0..size), rng.gen_range(0..size));
        f.add_entry(r, c, random_value(base, rng)).expect("value from the base ring");
    }
    f
}
