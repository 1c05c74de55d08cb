//! Finite-field certificates for the negative results on `2 x 2` matrices.
//!
//! For commuting `A0, B0` in `M_2(F)` the span of `[A0, C] + [B0, D]` has
//! dimension at most 2. Over `R = F[x11, x12, x21] / (x11, x12, x21)^2` a
//! commutator `[A, B]` equal to `[[x11, x12], [x21, -x11]]` would need
//! commuting constant parts whose span holds the three linearly independent
//! coefficient matrices; enumerating all commuting pairs over a small field
//! rules that out.
//!
//! The constructive side uses `(C, D) -> [A0, C] + [D, B0]`, which differs
//! from the lemma's map by `D -> -D` and has the same image.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::MatrixElement;
use crate::ring::{Element, Ring, RingKind, Value};

/// Hard cap on pair evaluations in one enumeration.
pub const ENUMERATION_BUDGET: u64 = 10_000_000;

/// Largest prime accepted for exhaustive enumeration.
pub const EXHAUSTIVE_MAX_PRIME: u64 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport {
    pub a0: MatrixElement,
    pub b0: MatrixElement,
    pub commuting: bool,
    pub dimension: usize,
    /// Reduced echelon basis of the span.
    pub basis: Vec<MatrixElement>,
}

fn unit_basis(field: &Ring) -> Vec<MatrixElement> {
    (0..4)
        .map(|k| MatrixElement::unit(field, 2, k / 2, k % 2).expect("2x2 unit"))
        .collect()
}

fn coords(m: &MatrixElement) -> Vec<Value> {
    m.entries().to_vec()
}

fn check_pair(a0: &MatrixElement, b0: &MatrixElement) -> Result<Ring> {
    if a0.ring() != b0.ring() {
        return Err(Error::Shape(format!("{} vs {}", a0.ring(), b0.ring())));
    }
    if a0.n() != 2 || !a0.base().is_field() {
        return Err(Error::Shape(format!("expected 2x2 matrices over a field, got {}", a0.ring())));
    }
    Ok(a0.base().clone())
}

/// Rows spanning `{[A0, C] + [B0, D]}` (`lemma_sign`) or `{[A0, C] + [D, B0]}`.
fn image_rows(a0: &MatrixElement, b0: &MatrixElement, lemma_sign: bool) -> Result<Vec<Vec<Value>>> {
    let units = unit_basis(a0.base());
    let mut rows = Vec::with_capacity(8);
    for e in &units {
        rows.push(coords(&a0.commutator(e)?));
    }
    for e in &units {
        let g = if lemma_sign { b0.commutator(e)? } else { e.commutator(b0)? };
        rows.push(coords(&g));
    }
    Ok(rows)
}

fn span_of(field: &Ring, rows: Vec<Vec<Value>>) -> Result<Vec<MatrixElement>> {
    let (reduced, _) = linalg::rref(field, rows);
    reduced
        .into_iter()
        .map(|r| MatrixElement::from_entries(field, 2, r))
        .collect()
}

/// Exact dimension and basis of the image of `(C, D) -> [A0, C] + [B0, D]`.
pub fn span_dimension(a0: &MatrixElement, b0: &MatrixElement) -> Result<SpanReport> {
    let field = check_pair(a0, b0)?;
    let basis = span_of(&field, image_rows(a0, b0, true)?)?;
    Ok(SpanReport {
        a0: a0.clone(),
        b0: b0.clone(),
        commuting: a0.commutator(b0)?.is_zero(),
        dimension: basis.len(),
        basis,
    })
}

/// Image of `(C, D) -> [A0, C] + [D, B0]`, the sign convention of the
/// non-commutator argument. Same span as [`span_dimension`].
pub fn proof_span(a0: &MatrixElement, b0: &MatrixElement) -> Result<Vec<MatrixElement>> {
    let field = check_pair(a0, b0)?;
    span_of(&field, image_rows(a0, b0, false)?)
}

fn all_matrices(field: &Ring, p: u64) -> impl Iterator<Item = MatrixElement> + '_ {
    (0..p.pow(4)).map(move |idx| {
        let mut rest = idx;
        let entries = (0..4)
            .map(|_| {
                let d = rest % p;
                rest /= p;
                Value::Residue(d)
            })
            .collect();
        MatrixElement::from_entries(field, 2, entries).expect("2x2 over F_p")
    })
}

/// Every `B0` with `[A0, B0] = 0`, by enumerating the kernel of
/// `B -> [A0, B]` over `F_p`.
pub fn commuting_partners(a0: &MatrixElement) -> Result<Vec<MatrixElement>> {
    let field = a0.base().clone();
    let p = field
        .prime()
        .ok_or_else(|| Error::Shape(format!("{field} is not a prime field")))?;
    if a0.n() != 2 {
        return Err(Error::Shape("expected a 2x2 matrix".to_string()));
    }
    // map[r][k] = coordinate r of [A0, E_k]
    let images: Vec<Vec<Value>> = unit_basis(&field)
        .iter()
        .map(|e| a0.commutator(e).map(|m| coords(&m)))
        .collect::<Result<_>>()?;
    let map: Vec<Vec<Value>> = (0..4)
        .map(|r| (0..4).map(|k| images[k][r].clone()).collect())
        .collect();
    let kernel = linalg::nullspace(&field, map, 4);
    let count = p.pow(kernel.len() as u32);
    let mut out = Vec::with_capacity(count as usize);
    for idx in 0..count {
        let mut rest = idx;
        let mut v: Vec<Value> = vec![field.zero(); 4];
        for basis_vec in &kernel {
            let c = Value::Residue(rest % p);
            rest /= p;
            for (slot, b) in v.iter_mut().zip(basis_vec) {
                *slot = field.add(slot, &field.mul(&c, b));
            }
        }
        out.push(MatrixElement::from_entries(&field, 2, v)?);
    }
    Ok(out)
}

fn exhaustive_field(p: u64) -> Result<Ring> {
    let field = Ring::prime_field(p)?;
    if p > EXHAUSTIVE_MAX_PRIME {
        return Err(Error::Budget(format!(
            "exhaustive runs are limited to p <= {EXHAUSTIVE_MAX_PRIME}; use sampling for p = {p}"
        )));
    }
    Ok(field)
}

struct Budget(u64);

impl Budget {
    fn spend(&mut self, n: u64) -> Result<()> {
        self.0 += n;
        if self.0 > ENUMERATION_BUDGET {
            return Err(Error::Budget(format!("more than {ENUMERATION_BUDGET} evaluations")));
        }
        Ok(())
    }
}

fn histogram_text(hist: &[u64; 5]) -> String {
    hist.iter()
        .enumerate()
        .map(|(d, c)| format!("{d}:{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Checks the dimension bound for every commuting pair in `M_2(F_p)^2`.
pub fn lemma_exhaustive_check(p: u64) -> Result<Certificate> {
    let field = exhaustive_field(p)?;
    let mut budget = Budget(0);
    let mut hist = [0u64; 5];
    let mut pairs = 0u64;
    for a0 in all_matrices(&field, p) {
        budget.spend(1)?;
        let partners = commuting_partners(&a0)?;
        budget.spend(partners.len() as u64)?;
        for b0 in &partners {
            let report = span_dimension(&a0, b0)?;
            hist[report.dimension] += 1;
            pairs += 1;
        }
    }
    let max_dim = (0..5).rev().find(|&d| hist[d] > 0).unwrap_or(0);
    Ok(Certificate::new("dimension-lemma")
        .param("p", p)
        .param("mode", "exhaustive")
        .with_evidence("raw_pairs", p.pow(8))
        .with_evidence("naive_map_evaluations", p.pow(16))
        .with_evidence("matrices", p.pow(4))
        .with_evidence("commuting_pairs", pairs)
        .with_evidence("evaluations", budget.0)
        .with_evidence("dimension_histogram", histogram_text(&hist))
        .with_evidence("max_dimension", max_dim)
        .decide(max_dim <= 2))
}

fn random_matrix<R: Rng + ?Sized>(field: &Ring, p: u64, rng: &mut R) -> MatrixElement {
    let entries = (0..4).map(|_| Value::Residue(rng.gen_range(0..p))).collect();
    MatrixElement::from_entries(field, 2, entries).expect("2x2 over F_p")
}

/// Sampled version of [`lemma_exhaustive_check`] for larger primes: random
/// `A0` and a uniformly random element of its centralizer.
pub fn lemma_sampled_check<R: Rng + ?Sized>(p: u64, samples: u64, rng: &mut R) -> Result<Certificate> {
    let field = Ring::prime_field(p)?;
    let mut budget = Budget(0);
    let mut hist = [0u64; 5];
    for _ in 0..samples {
        budget.spend(1)?;
        let a0 = random_matrix(&field, p, rng);
        let partners = commuting_partners(&a0)?;
        let b0 = &partners[rng.gen_range(0..partners.len())];
        hist[span_dimension(&a0, b0)?.dimension] += 1;
    }
    let max_dim = (0..5).rev().find(|&d| hist[d] > 0).unwrap_or(0);
    Ok(Certificate::new("dimension-lemma")
        .param("p", p)
        .param("mode", "sampled")
        .param("samples", samples)
        .with_evidence("dimension_histogram", histogram_text(&hist))
        .with_evidence("max_dimension", max_dim)
        .decide(max_dim <= 2))
}

fn counterexample_names() -> Vec<String> {
    vec!["x11".to_string(), "x12".to_string(), "x21".to_string()]
}

/// `R = F_p[x11, x12, x21] / (x11, x12, x21)^2` and `[[x11, x12], [x21, -x11]]`.
pub fn standard_counterexample(p: u64) -> Result<(Ring, MatrixElement)> {
    let ring = Ring::square_zero(Ring::prime_field(p)?, counterexample_names())?;
    let g = |i| Element::new(ring.clone(), ring.generator(i).expect("generator")).expect("element");
    let m = build_counterexample_matrix(&ring, &g(0), &g(1), &g(2))?;
    Ok((ring, m))
}

/// Coefficient matrix of generator `g` in a matrix over a square-zero ring.
fn generator_coefficients(m: &MatrixElement, g: usize) -> Vec<Value> {
    m.entries()
        .iter()
        .map(|e| match e {
            Value::SquareZero(parts) => parts[g + 1].clone(),
            _ => unreachable!("square-zero entry"),
        })
        .collect()
}

fn constant_part(m: &MatrixElement) -> Vec<Value> {
    m.entries()
        .iter()
        .map(|e| match e {
            Value::SquareZero(parts) => parts[0].clone(),
            _ => unreachable!("square-zero entry"),
        })
        .collect()
}

/// Certificate that `[[x11, x12], [x21, -x11]]` over the square-zero ring on
/// `F_p` has trace zero and is not a single commutator.
pub fn not_commutator_certificate(p: u64) -> Result<Certificate> {
    let field = exhaustive_field(p)?;
    let (ring, xhat) = standard_counterexample(p)?;
    let trace_zero = ring.is_zero(&xhat.trace());
    let constant_zero = constant_part(&xhat).iter().all(|c| field.is_zero(c));
    let targets: Vec<Vec<Value>> = (0..3).map(|g| generator_coefficients(&xhat, g)).collect();
    let target_rank = linalg::rank(&field, targets.clone());

    let mut budget = Budget(0);
    let mut pairs = 0u64;
    let mut max_dim = 0usize;
    let mut containing = 0u64;
    for a0 in all_matrices(&field, p) {
        budget.spend(1)?;
        let partners = commuting_partners(&a0)?;
        budget.spend(partners.len() as u64)?;
        for b0 in &partners {
            let span: Vec<Vec<Value>> = proof_span(&a0, b0)?.iter().map(coords).collect();
            let dim = span.len();
            max_dim = max_dim.max(dim);
            let mut joint = span;
            joint.extend(targets.iter().cloned());
            if linalg::rank(&field, joint) == dim {
                containing += 1;
            }
            pairs += 1;
        }
    }
    let target_text: Vec<String> = targets
        .iter()
        .map(|t| MatrixElement::from_entries(&field, 2, t.clone()).map(|m| m.to_string()))
        .collect::<Result<_>>()?;
    let ok = trace_zero && constant_zero && target_rank == 3 && containing == 0 && max_dim <= 2;
    Ok(Certificate::new("not-a-commutator")
        .param("p", p)
        .with_evidence("ring", &ring)
        .with_evidence("matrix", &xhat)
        .with_evidence("trace_is_zero", trace_zero)
        .with_evidence("constant_part_is_zero", constant_zero)
        .with_evidence("coefficient_targets", target_text.join(" "))
        .with_evidence("target_rank", target_rank)
        .with_evidence("commuting_pairs", pairs)
        .with_evidence("max_span_dimension", max_dim)
        .with_evidence("pairs_spanning_targets", containing)
        .decide(ok))
}

fn square_zero_parts(ring: &Ring) -> Result<(&Ring, usize)> {
    match ring.kind() {
        RingKind::SquareZero { field, gens } => Ok((field, gens.len())),
        _ => Err(Error::Invalid(format!("{ring} is not a square-zero quotient"))),
    }
}

fn ideal_vector(e: &Element, name: &str) -> Result<Vec<Value>> {
    let (field, _) = square_zero_parts(e.ring())?;
    match e.value() {
        Value::SquareZero(parts) if field.is_zero(&parts[0]) => Ok(parts[1..].to_vec()),
        _ => Err(Error::Invalid(format!("{name} = {e} is not in the ideal I"))),
    }
}

/// `[[x, y], [z, -x]]` for `x, y, z` in the square-zero ideal `I` whose
/// classes in `I / I^2` are linearly independent.
pub fn build_counterexample_matrix(ring: &Ring, x: &Element, y: &Element, z: &Element) -> Result<MatrixElement> {
    let (field, k) = square_zero_parts(ring)?;
    for e in [x, y, z] {
        ring.expect_same(e.ring())?;
    }
    let vecs = [ideal_vector(x, "x")?, ideal_vector(y, "y")?, ideal_vector(z, "z")?];
    if linalg::rank(field, vecs.to_vec()) < 3 {
        // columns are the three vectors; a kernel vector is a dependency
        let cols: Vec<Vec<Value>> = (0..k).map(|r| vecs.iter().map(|v| v[r].clone()).collect()).collect();
        let relation = &linalg::nullspace(field, cols, 3)[0];
        return Err(Error::DependentImages(format!(
            "{}*x + {}*y + {}*z = 0 in I/I^2",
            field.show(&relation[0]),
            field.show(&relation[1]),
            field.show(&relation[2])
        )));
    }
    MatrixElement::from_entries(
        ring,
        2,
        vec![
            x.value().clone(),
            y.value().clone(),
            z.value().clone(),
            x.neg().into_value(),
        ],
    )
}

/// Builds the matrix of [`build_counterexample_matrix`] and transports the
/// non-commutator certificate to it through a ring map `phi` onto the
/// standard instance with `phi(x) = x11`, `phi(y) = x12`, `phi(z) = x21`.
///
/// `phi` is the identity on constants and linear on `I`; any such map is a
/// ring homomorphism because both ideals square to zero.
pub fn counterexample_certificate(ring: &Ring, x: &Element, y: &Element, z: &Element) -> Result<Certificate> {
    let (field, k) = square_zero_parts(ring)?;
    let p = field
        .prime()
        .ok_or_else(|| Error::Invalid(format!("{field} is not a prime field")))?;
    let m = build_counterexample_matrix(ring, x, y, z)?;
    let trace_zero = ring.is_zero(&m.trace());

    // phi on generators: choose pivot columns of V = [x; y; z] and invert.
    let v = vec![ideal_vector(x, "x")?, ideal_vector(y, "y")?, ideal_vector(z, "z")?];
    let (_, pivots) = linalg::rref(field, v.clone());
    let augmented: Vec<Vec<Value>> = (0..3)
        .map(|r| {
            let mut row: Vec<Value> = pivots.iter().map(|&c| v[r][c].clone()).collect();
            row.extend((0..3).map(|c| if c == r { field.one() } else { field.zero() }));
            row
        })
        .collect();
    let (inv_rows, _) = linalg::rref(field, augmented);
    // phi_matrix[g] = image of generator g as coefficients on x11, x12, x21
    let mut phi_matrix: Vec<Vec<Value>> = vec![vec![field.zero(); 3]; k];
    for (slot, &g) in pivots.iter().enumerate() {
        phi_matrix[g] = inv_rows[slot][3..].to_vec();
    }
    let (target_ring, xhat) = standard_counterexample(p)?;
    let phi = |e: &Value| -> Value {
        let Value::SquareZero(parts) = e else {
            unreachable!("square-zero entry")
        };
        let mut out = vec![parts[0].clone(), field.zero(), field.zero(), field.zero()];
        for g in 0..k {
            for t in 0..3 {
                out[t + 1] = field.add(&out[t + 1], &field.mul(&parts[g + 1], &phi_matrix[g][t]));
            }
        }
        Value::SquareZero(out)
    };
    let image = MatrixElement::from_entries(&target_ring, 2, m.entries().iter().map(phi).collect())?;
    let image_ok = image == xhat;
    let standard = not_commutator_certificate(p)?;
    let phi_text: Vec<String> = (0..k)
        .map(|g| {
            let name = match ring.kind() {
                RingKind::SquareZero { gens, .. } => gens[g].clone(),
                _ => unreachable!(),
            };
            let img = Value::SquareZero(
                core::iter::once(field.zero())
                    .chain(phi_matrix[g].iter().cloned())
                    .collect(),
            );
            format!("{name}->{}", target_ring.show(&img))
        })
        .collect();
    Ok(Certificate::new("counterexample-matrix")
        .param("ring", ring)
        .param("x", x)
        .param("y", y)
        .param("z", z)
        .with_evidence("matrix", &m)
        .with_evidence("trace_is_zero", trace_zero)
        .with_evidence("images_independent", true)
        .with_evidence("phi", phi_text.join(", "))
        .with_evidence("phi_image", &image)
        .with_evidence("phi_image_is_standard", image_ok)
        .with_evidence("standard_instance_verdict", standard.verdict.as_str())
        .decide(trace_zero && image_ok && standard.passed()))
}
