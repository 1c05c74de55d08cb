//! Matrices over an arbitrary base ring and the commutator constructions on
//! them.
//!
//! Matrix units are written `E_ij` with 1-based indices in the formulas
//! below; storage and the public index arguments are 0-based. The
//! translation used throughout:
//!
//! | formula (1-based)            | storage (0-based)               |
//! |------------------------------|---------------------------------|
//! | `X = sum_{i<n} E_{i+1,i}`    | `X[i+1][i] = 1`, `i in 0..n-1`  |
//! | `Z = sum_{i<n} E_{i,i+1}`    | `Z[i][i+1] = 1`, `i in 0..n-1`  |
//! | `Y = E_nn`                   | `Y[n-1][n-1] = 1`               |
//! | `a_{n-l,n-l}`                | `A[n-1-l][n-1-l]`               |

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::ring::{Element, Ring, RingKind, Value};
use crate::sum::CommutatorSum;

/// An `n x n` matrix over a base ring, carried as an element of the matrix
/// ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixElement {
    elem: Element,
    n: usize,
}

impl MatrixElement {
    pub fn from_entries(base: &Ring, n: usize, entries: Vec<Value>) -> Result<MatrixElement> {
        let ring = Ring::matrix(base.clone(), n)?;
        if entries.len() != n * n {
            return Err(Error::Shape(format!("{} entries for a {n}x{n} matrix", entries.len())));
        }
        Ok(MatrixElement {
            elem: Element::new(ring, Value::Matrix(entries))?,
            n,
        })
    }

    pub fn from_fn(base: &Ring, n: usize, mut f: impl FnMut(usize, usize) -> Value) -> Result<MatrixElement> {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        MatrixElement::from_entries(base, n, entries)
    }

    pub fn from_element(e: &Element) -> Result<MatrixElement> {
        match e.ring().kind() {
            RingKind::Matrix { n, .. } => Ok(MatrixElement {
                elem: e.clone(),
                n: *n,
            }),
            _ => Err(Error::Shape(format!("{} is not a matrix ring", e.ring()))),
        }
    }

    pub fn zero(base: &Ring, n: usize) -> Result<MatrixElement> {
        MatrixElement::from_fn(base, n, |_, _| base.zero())
    }

    pub fn identity(base: &Ring, n: usize) -> Result<MatrixElement> {
        MatrixElement::from_fn(base, n, |i, j| if i == j { base.one() } else { base.zero() })
    }

    /// Matrix unit with a one at 0-based position `(i, j)`.
    pub fn unit(base: &Ring, n: usize, i: usize, j: usize) -> Result<MatrixElement> {
        if i >= n || j >= n {
            return Err(Error::Shape(format!("unit ({i},{j}) outside {n}x{n}")));
        }
        MatrixElement::from_fn(base, n, |r, c| if (r, c) == (i, j) { base.one() } else { base.zero() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Ring {
        self.elem.ring()
    }

    pub fn base(&self) -> &Ring {
        self.elem.ring().base().expect("matrix ring")
    }

    pub fn entries(&self) -> &[Value] {
        match self.elem.value() {
            Value::Matrix(entries) => entries,
            _ => unreachable!("matrix value"),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Value {
        &self.entries()[i * self.n + j]
    }

    pub fn element(&self) -> &Element {
        &self.elem
    }

    pub fn into_element(self) -> Element {
        self.elem
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    pub fn trace(&self) -> Value {
        let base = self.base();
        (0..self.n).fold(base.zero(), |acc, i| base.add(&acc, self.get(i, i)))
    }

    fn wrap(&self, elem: Element) -> MatrixElement {
        MatrixElement { elem, n: self.n }
    }

    pub fn add(&self, other: &MatrixElement) -> Result<MatrixElement> {
        Ok(self.wrap(self.elem.add(&other.elem)?))
    }

    pub fn sub(&self, other: &MatrixElement) -> Result<MatrixElement> {
        Ok(self.wrap(self.elem.sub(&other.elem)?))
    }

    pub fn mul(&self, other: &MatrixElement) -> Result<MatrixElement> {
        Ok(self.wrap(self.elem.mul(&other.elem)?))
    }

    pub fn commutator(&self, other: &MatrixElement) -> Result<MatrixElement> {
        Ok(self.wrap(crate::sum::commutator(&self.elem, &other.elem)?))
    }

    pub fn neg(&self) -> MatrixElement {
        self.wrap(self.elem.neg())
    }

    pub fn pow(&self, e: u32) -> MatrixElement {
        self.wrap(self.elem.pow(e))
    }

    /// `c * M` with `c` from the base ring acting on the left of each entry.
    pub fn scale_left(&self, c: &Value) -> MatrixElement {
        let base = self.base();
        let entries = self.entries().iter().map(|v| base.mul(c, v)).collect();
        self.wrap(Element::from_parts(self.ring().clone(), Value::Matrix(entries)))
    }

    pub fn with_entry(&self, i: usize, j: usize, v: Value) -> Result<MatrixElement> {
        let mut entries = self.entries().to_vec();
        entries[i * self.n + j] = v;
        MatrixElement::from_entries(self.base(), self.n, entries)
    }
}

impl fmt::Display for MatrixElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.elem.fmt(f)
    }
}

fn same_shape(a: &MatrixElement, b: &MatrixElement) -> Result<()> {
    if a.ring() != b.ring() {
        return Err(Error::Shape(format!("{} vs {}", a.ring(), b.ring())));
    }
    Ok(())
}

/// `trace(AB - BA) = sum_{i,j} [a_ij, b_ji]`: the `n^2` base-ring terms in
/// row-major order of `(i, j)`.
pub fn trace_of_commutator_sum(a: &MatrixElement, b: &MatrixElement) -> Result<CommutatorSum> {
    same_shape(a, b)?;
    let n = a.n();
    let mut sum = CommutatorSum::new(a.base());
    for i in 0..n {
        for j in 0..n {
            sum.push_unchecked(a.get(i, j).clone(), b.get(j, i).clone());
        }
    }
    Ok(sum)
}

/// Matrices `A`, `B` with `trace([A, B])` equal to the given sum. Term `k`
/// is placed at `A[i][j]`, `B[j][i]` where `(i, j)` is the `k`-th position
/// in row-major order.
pub fn trace_witness(r_sum: &CommutatorSum, n: usize) -> Result<(MatrixElement, MatrixElement)> {
    if r_sum.len() > n * n {
        return Err(Error::SumTooLong {
            len: r_sum.len(),
            max: n * n,
        });
    }
    let base = r_sum.ring();
    let mut a = Vec::from_iter((0..n * n).map(|_| base.zero()));
    let mut b = a.clone();
    for (k, (l, r)) in r_sum.terms().iter().enumerate() {
        let (i, j) = (k / n, k % n);
        a[i * n + j] = l.clone();
        b[j * n + i] = r.clone();
    }
    Ok((
        MatrixElement::from_entries(base, n, a)?,
        MatrixElement::from_entries(base, n, b)?,
    ))
}

/// The lower shift `X = sum E_{i+1,i}` and upper shift `Z = sum E_{i,i+1}`.
pub fn shift_matrices(base: &Ring, n: usize) -> Result<(MatrixElement, MatrixElement)> {
    let x = MatrixElement::from_fn(base, n, |i, j| if i == j + 1 { base.one() } else { base.zero() })?;
    let z = MatrixElement::from_fn(base, n, |i, j| if j == i + 1 { base.one() } else { base.zero() })?;
    Ok((x, z))
}

/// `A = [C Z, X] + [C E_nn, E_nn]` for a trace-zero `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCommutators {
    /// `C = A + X A Z + ... + X^(n-1) A Z^(n-1)`.
    pub c: MatrixElement,
    pub first: (MatrixElement, MatrixElement),
    pub second: (MatrixElement, MatrixElement),
}

impl TwoCommutators {
    pub fn recompose(&self) -> Result<MatrixElement> {
        self.first
            .0
            .commutator(&self.first.1)?
            .add(&self.second.0.commutator(&self.second.1)?)
    }

    pub fn to_sum(&self) -> CommutatorSum {
        let mut sum = CommutatorSum::new(self.c.ring());
        for (p, q) in [&self.first, &self.second] {
            sum.push_unchecked(p.element().value().clone(), q.element().value().clone());
        }
        sum
    }
}

/// Writes a trace-zero matrix over any ring as a sum of two commutators.
pub fn two_commutator_decomposition(a: &MatrixElement) -> Result<TwoCommutators> {
    let base = a.base();
    let n = a.n();
    let tr = a.trace();
    if !base.is_zero(&tr) {
        return Err(Error::NonzeroTrace(base.show(&tr)));
    }
    let zero = MatrixElement::zero(base, n)?;
    if n == 1 {
        return Ok(TwoCommutators {
            c: zero.clone(),
            first: (zero.clone(), zero.clone()),
            second: (zero.clone(), zero),
        });
    }
    let (x, z) = shift_matrices(base, n)?;
    let mut c = zero;
    let mut conj = a.clone();
    for _ in 0..n {
        c = c.add(&conj)?;
        conj = x.mul(&conj)?.mul(&z)?;
    }
    let enn = MatrixElement::unit(base, n, n - 1, n - 1)?;
    Ok(TwoCommutators {
        first: (c.mul(&z)?, x),
        second: (c.mul(&enn)?, enn),
        c,
    })
}

/// Orthogonal idempotents `e_1, ..., e_k` summing to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentSplit {
    ring: Ring,
    idempotents: Vec<Value>,
}

impl IdempotentSplit {
    pub fn new(ring: &Ring, idempotents: Vec<Value>) -> Result<IdempotentSplit> {
        if idempotents.is_empty() {
            return Err(Error::Idempotent("empty family".to_string()));
        }
        let mut total = ring.zero();
        for (i, e) in idempotents.iter().enumerate() {
            ring.check(e)?;
            if ring.mul(e, e) != *e {
                return Err(Error::Idempotent(format!("e{} is not idempotent", i + 1)));
            }
            for (j, other) in idempotents.iter().enumerate() {
                if i != j && !ring.is_zero(&ring.mul(e, other)) {
                    return Err(Error::Idempotent(format!("e{} e{} != 0", i + 1, j + 1)));
                }
            }
            total = ring.add(&total, e);
        }
        if total != ring.one() {
            return Err(Error::Idempotent("idempotents do not sum to 1".to_string()));
        }
        Ok(IdempotentSplit {
            ring: ring.clone(),
            idempotents,
        })
    }

    /// Block-diagonal split of `M_n(base)`: `e_i` is the sum of the diagonal
    /// units in the `i`-th consecutive block of the given sizes.
    pub fn diagonal_blocks(base: &Ring, n: usize, blocks: &[usize]) -> Result<IdempotentSplit> {
        if blocks.iter().sum::<usize>() != n || blocks.contains(&0) {
            return Err(Error::Idempotent(format!("blocks {blocks:?} do not partition {n}")));
        }
        let mut start = 0;
        let mut family = Vec::new();
        for &size in blocks {
            let range = start..start + size;
            let e = MatrixElement::from_fn(base, n, |i, j| {
                if i == j && range.contains(&i) {
                    base.one()
                } else {
                    base.zero()
                }
            })?;
            family.push(e.into_element().into_value());
            start += size;
        }
        IdempotentSplit::new(&Ring::matrix(base.clone(), n)?, family)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn idempotents(&self) -> &[Value] {
        &self.idempotents
    }

    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }
}

fn corner(ring: &Ring, e: &Value, r: &Value) -> Value {
    ring.mul(&ring.mul(e, r), e)
}

/// Termwise `[a, b] + [c, d] -> [a + c, b + d]`, padding the shorter sum with
/// `(0, 0)`. Exact when the two sums live in orthogonal corners.
fn merge_orthogonal(ring: &Ring, a: &CommutatorSum, b: &CommutatorSum) -> CommutatorSum {
    let mut out = CommutatorSum::new(ring);
    let zero = (ring.zero(), ring.zero());
    for k in 0..a.len().max(b.len()) {
        let (l1, r1) = a.terms().get(k).unwrap_or(&zero);
        let (l2, r2) = b.terms().get(k).unwrap_or(&zero);
        out.push_unchecked(ring.add(l1, l2), ring.add(r1, r2));
    }
    out
}

/// Assembles a commutator sum for `r` from sums for its corners `e_i r e_i`.
///
/// Folds the idempotents left to right. With `f = e_1 + ... + e_j` and
/// `e = e_{j+1}`, the corner sums for `f r f` and `e r e` are merged term by
/// term and one term `[f r e - e r f, e]` is appended. The result has at most
/// `max(m_i) + k - 1` terms.
pub fn corner_combine(r: &Element, split: &IdempotentSplit, corner_sums: &[CommutatorSum]) -> Result<CommutatorSum> {
    let ring = split.ring();
    ring.expect_same(r.ring())?;
    if corner_sums.len() != split.len() {
        return Err(Error::Corner {
            corner: corner_sums.len().min(split.len()),
            reason: format!("{} corner sums for {} idempotents", corner_sums.len(), split.len()),
        });
    }
    let rv = r.value();
    for (i, (e, sum)) in split.idempotents().iter().zip(corner_sums).enumerate() {
        ring.expect_same(sum.ring())?;
        for (k, (l, rt)) in sum.terms().iter().enumerate() {
            if corner(ring, e, l) != *l || corner(ring, e, rt) != *rt {
                return Err(Error::Corner {
                    corner: i + 1,
                    reason: format!("term {} leaves the corner ring", k + 1),
                });
            }
        }
        if *sum.evaluate().value() != corner(ring, e, rv) {
            return Err(Error::Corner {
                corner: i + 1,
                reason: "sum does not evaluate to e r e".to_string(),
            });
        }
    }

    let mut acc = corner_sums[0].clone();
    let mut f = split.idempotents()[0].clone();
    for (e, sum) in split.idempotents().iter().zip(corner_sums).skip(1) {
        let mut merged = merge_orthogonal(ring, &acc, sum);
        let fre = ring.mul(&ring.mul(&f, rv), e);
        let erf = ring.mul(&ring.mul(e, rv), &f);
        merged.push_unchecked(ring.sub(&fre, &erf), e.clone());
        acc = merged;
        f = ring.add(&f, e);
    }
    Ok(acc)
}

/// A commutator sum for `A` of length `ceil(m / n^2) + 2`, given an
/// `m`-term commutator sum for `trace(A)` in the base ring.
///
/// The trace sum is consumed left to right in chunks of `n^2` terms; each
/// chunk becomes one matrix commutator via [`trace_witness`], and the
/// trace-zero remainder is split by [`two_commutator_decomposition`].
pub fn bounded_decomposition(a: &MatrixElement, trace_sum: &CommutatorSum) -> Result<CommutatorSum> {
    let base = a.base();
    base.expect_same(trace_sum.ring())?;
    let tr = a.trace();
    let value = trace_sum.evaluate();
    if *value.value() != tr {
        return Err(Error::TraceMismatch {
            expected: base.show(&tr),
            found: value.to_string(),
        });
    }
    let n = a.n();
    let mut out = CommutatorSum::new(a.ring());
    let mut covered = MatrixElement::zero(base, n)?;
    for chunk in trace_sum.terms().chunks(n * n) {
        let part = CommutatorSum::from_terms(base, chunk.to_vec())?;
        let (p, q) = trace_witness(&part, n)?;
        covered = covered.add(&p.commutator(&q)?)?;
        out.push_unchecked(p.into_element().into_value(), q.into_element().into_value());
    }
    let rest = two_commutator_decomposition(&a.sub(&covered)?)?;
    for (p, q) in [rest.first, rest.second] {
        out.push_unchecked(p.into_element().into_value(), q.into_element().into_value());
    }
    Ok(out)
}

/// `ceil(m / n^2) + 2`.
pub fn corollary_bound(m: usize, n: usize) -> usize {
    m.div_ceil(n * n) + 2
}

/// Certificate for "`A` is a sum of commutators iff `trace(A)` is".
///
/// With `matrix_sum` the forward direction runs: each matrix commutator is
/// turned into `n^2` base-ring commutators for its trace. With `trace_sum`
/// the backward direction runs through [`bounded_decomposition`]. Both may
/// be supplied.
pub fn is_sum_of_commutators_iff_trace(
    a: &MatrixElement,
    matrix_sum: Option<&CommutatorSum>,
    trace_sum: Option<&CommutatorSum>,
) -> Result<Certificate> {
    if matrix_sum.is_none() && trace_sum.is_none() {
        return Err(Error::Invalid(
            "either a matrix commutator sum or a trace commutator sum is required".to_string(),
        ));
    }
    let base = a.base();
    let mut cert = Certificate::new("trace-criterion").param("ring", a.ring()).param("matrix", a);
    if let Some(s) = matrix_sum {
        cert = cert.param("matrix_sum", s);
    }
    if let Some(s) = trace_sum {
        cert = cert.param("trace_sum", s);
    }
    let trace = Element::new(base.clone(), a.trace())?;
    cert.push_evidence("trace", &trace);
    let mut ok = true;

    if let Some(s) = matrix_sum {
        a.ring().expect_same(s.ring())?;
        let input_ok = s.evaluate() == *a.element();
        let mut forward = CommutatorSum::new(base);
        for (p, q) in s.terms() {
            let p = MatrixElement::from_entries(base, a.n(), matrix_entries(p))?;
            let q = MatrixElement::from_entries(base, a.n(), matrix_entries(q))?;
            forward.extend(&trace_of_commutator_sum(&p, &q)?)?;
        }
        let recomposes = forward.evaluate() == trace;
        cert.push_evidence("forward.input_evaluates_to_matrix", input_ok);
        cert.push_evidence("forward.trace_sum", &forward);
        cert.push_evidence("forward.length", forward.len());
        cert.push_evidence("forward.recomposes", recomposes);
        ok &= input_ok && recomposes;
    }
    if let Some(s) = trace_sum {
        let decomposition = bounded_decomposition(a, s)?;
        let bound = corollary_bound(s.len(), a.n());
        let recomposes = decomposition.evaluate() == *a.element();
        cert.push_evidence("backward.matrix_sum", &decomposition);
        cert.push_evidence("backward.length", decomposition.len());
        cert.push_evidence("backward.bound", bound);
        cert.push_evidence("backward.recomposes", recomposes);
        ok &= recomposes && decomposition.len() <= bound;
    }
    Ok(cert.decide(ok))
}

fn matrix_entries(v: &Value) -> Vec<Value> {
    match v {
        Value::Matrix(entries) => entries.clone(),
        _ => unreachable!("matrix ring value"),
    }
}
