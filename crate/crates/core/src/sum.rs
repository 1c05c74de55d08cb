//! Commutators and bookkeeping for sums of commutators.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::ring::{Element, Ring, Value};

/// `[a, b] = ab - ba`.
pub fn commutator(a: &Element, b: &Element) -> Result<Element> {
    a.ring().expect_same(b.ring())?;
    let ring = a.ring();
    Element::new(ring.clone(), ring.commutator(a.value(), b.value()))
}

/// A formal sum `sum_i [left_i, right_i]` in one ring. A sum with `n` terms
/// witnesses membership of its value in `[R, R]_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorSum {
    ring: Ring,
    terms: Vec<(Value, Value)>,
}

impl CommutatorSum {
    pub fn new(ring: &Ring) -> CommutatorSum {
        CommutatorSum {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn from_terms(ring: &Ring, terms: Vec<(Value, Value)>) -> Result<CommutatorSum> {
        for (l, r) in &terms {
            ring.check(l)?;
            ring.check(r)?;
        }
        Ok(CommutatorSum {
            ring: ring.clone(),
            terms,
        })
    }

    pub fn from_elements(ring: &Ring, terms: &[(Element, Element)]) -> Result<CommutatorSum> {
        let mut sum = CommutatorSum::new(ring);
        for (l, r) in terms {
            sum.push_element(l, r)?;
        }
        Ok(sum)
    }

    pub(crate) fn push_unchecked(&mut self, left: Value, right: Value) {
        debug_assert!(self.ring.contains(&left) && self.ring.contains(&right));
        self.terms.push((left, right));
    }

    pub fn push(&mut self, left: Value, right: Value) -> Result<()> {
        self.ring.check(&left)?;
        self.ring.check(&right)?;
        self.terms.push((left, right));
        Ok(())
    }

    pub fn push_element(&mut self, left: &Element, right: &Element) -> Result<()> {
        self.ring.expect_same(left.ring())?;
        self.ring.expect_same(right.ring())?;
        self.terms.push((left.value().clone(), right.value().clone()));
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Value, Value)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self) -> Element {
        let ring = &self.ring;
        let total = self
            .terms
            .iter()
            .fold(ring.zero(), |acc, (l, r)| ring.add(&acc, &ring.commutator(l, r)));
        Element::from_parts(ring.clone(), total)
    }

    pub fn extend(&mut self, other: &CommutatorSum) -> Result<()> {
        self.ring.expect_same(&other.ring)?;
        self.terms.extend(other.terms.iter().cloned());
        Ok(())
    }
}

impl fmt::Display for CommutatorSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (l, r)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", self.ring.display(l), self.ring.display(r))?;
        }
        f.write_str("}")
    }
}

pub fn evaluate_sum(sum: &CommutatorSum) -> Element {
    sum.evaluate()
}

/// Multiplies a commutator sum on the right by `s`, pushing `s` into each
/// right entry: `sum [x_i, y_i] s = sum [x_i, y_i s]`.
///
/// The identity `[x, y s] = [x, y] s` holds exactly when `y [s, x] = 0`; the
/// check used here is that `s` commutes with every left entry `x_i`.
pub fn lift_through_centralizing(sum: &CommutatorSum, s: &Element) -> Result<CommutatorSum> {
    let ring = sum.ring();
    ring.expect_same(s.ring())?;
    let sv = s.value();
    let mut out = CommutatorSum::new(ring);
    for (index, (x, y)) in sum.terms().iter().enumerate() {
        if ring.mul(sv, x) != ring.mul(x, sv) {
            return Err(Error::NotCentralizing {
                index,
                element: ring.show(sv),
                left: ring.show(x),
            });
        }
        out.push_unchecked(x.clone(), ring.mul(y, sv));
    }
    Ok(out)
}
