//! Column-finite operators on a countable direct sum `N^(N)`.
//!
//! An operator is an `N x N` array over a coefficient ring standing in for
//! `End(N)`. Column `j` is the image of the `j`-th basis vector, so column
//! finiteness is exactly what makes the operator an endomorphism of the
//! direct sum, and it makes every entry of a composition a finite sum.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::ring::{Ring, Value};

type EntryRule = dyn Fn(usize, usize) -> Value + Send + Sync;
type HeightRule = dyn Fn(usize) -> usize + Send + Sync;

/// Extra rows past the declared height probed by [`verify_window`].
const SPOT_ROWS: usize = 8;

/// Lazily evaluated column-finite operator. `height(j)` bounds column `j`:
/// rows `>= height(j)` are zero.
#[derive(Clone)]
pub struct LazyOperator {
    base: Ring,
    entry: Arc<EntryRule>,
    height: Arc<HeightRule>,
}

impl fmt::Debug for LazyOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LazyOperator").field("base", &self.base).finish_non_exhaustive()
    }
}

impl LazyOperator {
    pub fn new(
        base: &Ring,
        entry: impl Fn(usize, usize) -> Value + Send + Sync + 'static,
        height: impl Fn(usize) -> usize + Send + Sync + 'static,
    ) -> LazyOperator {
        LazyOperator {
            base: base.clone(),
            entry: Arc::new(entry),
            height: Arc::new(height),
        }
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn entry(&self, row: usize, col: usize) -> Value {
        (self.entry)(row, col)
    }

    pub fn height(&self, col: usize) -> usize {
        (self.height)(col)
    }

    pub fn zero(base: &Ring) -> LazyOperator {
        let z = base.zero();
        LazyOperator::new(base, move |_, _| z.clone(), |_| 0)
    }

    pub fn identity(base: &Ring) -> LazyOperator {
        let (one, zero) = (base.one(), base.zero());
        LazyOperator::new(base, move |i, j| if i == j { one.clone() } else { zero.clone() }, |j| j + 1)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LazyOperator) -> LazyOperator {
        let (a, b) = (self.clone(), other.clone());
        let (ha, hb) = (self.clone(), other.clone());
        let base = self.base.clone();
        LazyOperator::new(
            &self.base,
            move |i, j| {
                let mut acc = base.zero();
                for k in 0..b.height(j) {
                    let left = a.entry(i, k);
                    if base.is_zero(&left) {
                        continue;
                    }
                    let right = b.entry(k, j);
                    if base.is_zero(&right) {
                        continue;
                    }
                    acc = base.add(&acc, &base.mul(&left, &right));
                }
                acc
            },
            move |j| (0..hb.height(j)).map(|k| ha.height(k)).max().unwrap_or(0),
        )
    }

    fn combine(&self, other: &LazyOperator, negate: bool) -> LazyOperator {
        let (a, b) = (self.clone(), other.clone());
        let (ha, hb) = (self.clone(), other.clone());
        let base = self.base.clone();
        LazyOperator::new(
            &self.base,
            move |i, j| {
                let r = b.entry(i, j);
                let r = if negate { base.neg(&r) } else { r };
                base.add(&a.entry(i, j), &r)
            },
            move |j| ha.height(j).max(hb.height(j)),
        )
    }

    pub fn add(&self, other: &LazyOperator) -> LazyOperator {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &LazyOperator) -> LazyOperator {
        self.combine(other, true)
    }

    pub fn neg(&self) -> LazyOperator {
        LazyOperator::zero(&self.base).sub(self)
    }

    /// `self ∘ other - other ∘ self`.
    pub fn commutator(&self, other: &LazyOperator) -> LazyOperator {
        self.compose(other).sub(&other.compose(self))
    }

    /// Applies the operator to a finitely supported column vector.
    pub fn apply(&self, v: &BTreeMap<usize, Value>) -> BTreeMap<usize, Value> {
        let base = &self.base;
        let mut out: BTreeMap<usize, Value> = BTreeMap::new();
        for (&j, c) in v {
            for i in 0..self.height(j) {
                let a = self.entry(i, j);
                if base.is_zero(&a) {
                    continue;
                }
                crate::ring::accumulate(base, &mut out, i, base.mul(&a, c));
            }
        }
        out
    }
}

/// Finitely supported operator, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteOperator {
    base: Ring,
    support: BTreeMap<(usize, usize), Value>,
}

impl FiniteOperator {
    pub fn new(base: &Ring) -> FiniteOperator {
        FiniteOperator {
            base: base.clone(),
            support: BTreeMap::new(),
        }
    }

    /// Adds `value` at `(row, col)`.
    pub fn add_entry(&mut self, row: usize, col: usize, value: Value) -> Result<()> {
        self.base.check(&value)?;
        if !self.base.is_zero(&value) {
            crate::ring::accumulate(&self.base, &mut self.support, (row, col), value);
        }
        Ok(())
    }

    pub fn from_triples(base: &Ring, triples: Vec<(usize, usize, Value)>) -> Result<FiniteOperator> {
        let mut f = FiniteOperator::new(base);
        for (r, c, v) in triples {
            f.add_entry(r, c, v)?;
        }
        Ok(f)
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn support(&self) -> &BTreeMap<(usize, usize), Value> {
        &self.support
    }

    pub fn get(&self, row: usize, col: usize) -> Value {
        self.support.get(&(row, col)).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn add(&self, other: &FiniteOperator) -> Result<FiniteOperator> {
        self.base.expect_same(&other.base)?;
        let mut out = self.clone();
        for (&(r, c), v) in &other.support {
            out.add_entry(r, c, v.clone())?;
        }
        Ok(out)
    }

    pub fn to_lazy(&self) -> LazyOperator {
        let support = self.support.clone();
        let zero = self.base.zero();
        let mut heights: BTreeMap<usize, usize> = BTreeMap::new();
        for &(r, c) in self.support.keys() {
            let h = heights.entry(c).or_insert(0);
            *h = (*h).max(r + 1);
        }
        LazyOperator::new(
            &self.base,
            move |i, j| support.get(&(i, j)).cloned().unwrap_or_else(|| zero.clone()),
            move |j| heights.get(&j).copied().unwrap_or(0),
        )
    }
}

impl fmt::Display for FiniteOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (&(r, c), v)) in self.support.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({r}, {c}, {})", self.base.display(v))?;
        }
        Ok(())
    }
}

/// Right shift `x` (`e_i -> e_{i+1}`) and left shift `z` (`e_{i+1} -> e_i`,
/// `e_0 -> 0`). They satisfy `z x = 1` and `x z = 1 - P_0`.
pub fn shift_operators(base: &Ring) -> (LazyOperator, LazyOperator) {
    let (one, zero) = (base.one(), base.zero());
    let (one2, zero2) = (one.clone(), zero.clone());
    let x = LazyOperator::new(
        base,
        move |i, j| if i == j + 1 { one.clone() } else { zero.clone() },
        |j| j + 2,
    );
    let z = LazyOperator::new(
        base,
        move |i, j| if i + 1 == j { one2.clone() } else { zero2.clone() },
        |j| j,
    );
    (x, z)
}

/// `y = -sum_{i >= 0} x^i f z^(i+1)`, satisfying `x y - y x = f`.
///
/// A support entry `f[r][c]` contributes `-f[r][c]` along the ray
/// `(r + i, c + i + 1)`, so `y[R][C]` sums the entries with
/// `c - r + 1 = C - R` and `r <= R`. These are kept as prefix sums per
/// diagonal offset.
pub fn commutator_preimage(f: &FiniteOperator) -> LazyOperator {
    let base = f.base().clone();
    // offset -> sorted (r, running sum of f over rows <= r)
    let mut rays: BTreeMap<isize, Vec<(usize, Value)>> = BTreeMap::new();
    for (&(r, c), v) in f.support() {
        rays.entry(c as isize - r as isize + 1).or_default().push((r, v.clone()));
    }
    for list in rays.values_mut() {
        list.sort_by_key(|t| t.0);
        let mut running = base.zero();
        for entry in list.iter_mut() {
            running = base.add(&running, &entry.1);
            entry.1 = running.clone();
        }
    }
    let heights: Vec<(usize, usize)> = f.support().keys().copied().collect();
    let entry_base = base.clone();
    LazyOperator::new(
        &base,
        move |row, col| {
            let offset = col as isize - row as isize;
            let Some(list) = rays.get(&offset) else {
                return entry_base.zero();
            };
            let upto = list.partition_point(|t| t.0 <= row);
            if upto == 0 {
                entry_base.zero()
            } else {
                entry_base.neg(&list[upto - 1].1)
            }
        },
        move |col| {
            heights
                .iter()
                .filter(|&&(_, c)| col > c)
                .map(|&(r, c)| r + (col - c - 1) + 1)
                .max()
                .unwrap_or(0)
        },
    )
}

fn bound_violation(op: &LazyOperator, col: usize, rows: usize) -> Option<usize> {
    let h = op.height(col);
    (h..h.max(rows) + SPOT_ROWS).find(|&i| !op.base().is_zero(&op.entry(i, col)))
}

/// Compares `lhs` and `rhs` on the window `[0, w)^2`. Each window column is
/// also probed a few rows beyond its declared height on both sides; a
/// nonzero entry there fails the certificate and names the column.
pub fn verify_window(lhs: &LazyOperator, rhs: &LazyOperator, w: usize) -> Result<Certificate> {
    if w == 0 {
        return Err(Error::Invalid("window must be at least 1".into()));
    }
    lhs.base().expect_same(rhs.base())?;
    let base = lhs.base();
    let mut cert = Certificate::new("window-identity").param("window", w);
    for j in 0..w {
        for (side, op) in [("lhs", lhs), ("rhs", rhs)] {
            if let Some(row) = bound_violation(op, j, w) {
                cert.push_evidence(
                    "column_bound_violation",
                    format!("{side} column {j} nonzero at row {row} beyond height {}", op.height(j)),
                );
                return Ok(cert.decide(false));
            }
        }
    }
    let mut mismatches = 0u64;
    let mut first = None;
    for i in 0..w {
        for j in 0..w {
            let (a, b) = (lhs.entry(i, j), rhs.entry(i, j));
            if a != b {
                mismatches += 1;
                if first.is_none() {
                    first = Some(format!("({i}, {j}): {} vs {}", base.show(&a), base.show(&b)));
                }
            }
        }
    }
    cert.push_evidence("entries_checked", (w * w) as u64);
    cert.push_evidence("mismatches", mismatches);
    if let Some(m) = first {
        cert.push_evidence("first_mismatch", m);
    }
    Ok(cert.decide(mismatches == 0))
}

/// Smallest `i` with `z^i e_k = 0`, searching up to `limit`.
pub fn kernel_depth(z: &LazyOperator, k: usize, limit: usize) -> Option<usize> {
    let mut v = BTreeMap::new();
    v.insert(k, z.base().one());
    for i in 0..=limit {
        if v.is_empty() {
            return Some(i);
        }
        v = z.apply(&v);
    }
    None
}

/// Checks the shift model on a window: `z x = 1` entrywise and every basis
/// vector `e_k` with `k < w` dies under `z^(k+1)` but not `z^k`.
pub fn shift_model_certificate(base: &Ring, w: usize) -> Result<Certificate> {
    let (x, z) = shift_operators(base);
    let inner = verify_window(&z.compose(&x), &LazyOperator::identity(base), w)?;
    let exhausted = (0..w).all(|k| kernel_depth(&z, k, k + 1) == Some(k + 1));
    Ok(Certificate::new("shift-model")
        .param("ring", base)
        .param("window", w)
        .with_evidence("zx_identity", inner.verdict.as_str())
        .with_evidence("kernel_union_exhausts_basis", exhausted)
        .decide(inner.passed() && exhausted))
}
