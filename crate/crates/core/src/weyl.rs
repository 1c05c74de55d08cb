//! Weyl algebras `A_1(R)`, `A_n(R)` and `A_I(R)` in normal-ordered form.
//!
//! Elements are finite sums of `c * prod_i x_i^a_i y_i^b_i` with every
//! `x_i` written before `y_i`. Distinct indices commute, and within one
//! index the product uses the closed form
//!
//! ```text
//! y^b x^c = sum_k (-1)^k k! C(b,k) C(c,k) x^(c-k) y^(b-k)
//! ```
//!
//! which is the iterated rewrite `y^b x = x y^b - b y^(b-1)` collected in one
//! step.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::matrix::MatrixElement;
use crate::ring::{accumulate, Element, Ring, RingKind, Value};

/// Normal-ordered monomial: `(index, x-exponent, y-exponent)` triples sorted
/// by index, no `(0, 0)` exponent pairs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylMonomial(Vec<(usize, u32, u32)>);

impl WeylMonomial {
    pub fn one() -> WeylMonomial {
        WeylMonomial(Vec::new())
    }

    /// Builds a monomial from `(index, a, b)` triples in any order; repeated
    /// indices are not allowed.
    pub fn new(mut pairs: Vec<(usize, u32, u32)>) -> Option<WeylMonomial> {
        pairs.retain(|&(_, a, b)| a > 0 || b > 0);
        pairs.sort_by_key(|t| t.0);
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return None;
        }
        Some(WeylMonomial(pairs))
    }

    pub fn pairs(&self) -> &[(usize, u32, u32)] {
        &self.0
    }

    pub fn exponents(&self, index: usize) -> (u32, u32) {
        self.0
            .iter()
            .find(|t| t.0 == index)
            .map_or((0, 0), |&(_, a, b)| (a, b))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, a, b)| a + b).sum()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().map(|t| t.0)
    }

    pub fn is_canonical(&self) -> bool {
        self.0.iter().all(|&(_, a, b)| a > 0 || b > 0) && self.0.windows(2).all(|w| w[0].0 < w[1].0)
    }

    fn with_exponents(&self, index: usize, a: u32, b: u32) -> WeylMonomial {
        let mut pairs: Vec<_> = self.0.iter().copied().filter(|t| t.0 != index).collect();
        pairs.push((index, a, b));
        WeylMonomial::new(pairs).expect("distinct indices")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        crate::fmt::write_weyl_monomial(&mut out, &self.0);
        out
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `x^a y^b * x^c y^d` within one index, as `(x-exp, y-exp, coefficient)`.
fn single_index_product(a: u32, b: u32, c: u32, d: u32) -> Vec<(u32, u32, BigInt)> {
    (0..=b.min(c))
        .map(|k| {
            let mut coeff = factorial(k) * binomial(b, k) * binomial(c, k);
            if k % 2 == 1 {
                coeff = -coeff;
            }
            (a + c - k, b + d - k, coeff)
        })
        .collect()
}

/// `(index, x exponent, y exponent)` runs of a partially built monomial.
type Factors = Vec<(usize, u32, u32)>;

/// Normal-ordered expansion of the product of two monomials.
pub fn monomial_product(m1: &WeylMonomial, m2: &WeylMonomial) -> Vec<(WeylMonomial, BigInt)> {
    let mut indices: Vec<usize> = m1.0.iter().chain(&m2.0).map(|t| t.0).collect();
    indices.sort_unstable();
    indices.dedup();
    let mut acc: Vec<(Factors, BigInt)> = vec![(Vec::new(), BigInt::one())];
    for i in indices {
        let (a, b) = m1.exponents(i);
        let (c, d) = m2.exponents(i);
        let options = single_index_product(a, b, c, d);
        let mut next = Vec::with_capacity(acc.len() * options.len());
        for (pairs, k) in &acc {
            for (x, y, coeff) in &options {
                let mut p = pairs.clone();
                if *x > 0 || *y > 0 {
                    p.push((i, *x, *y));
                }
                next.push((p, k * coeff));
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|(pairs, k)| (WeylMonomial(pairs), k))
        .collect()
}

pub(crate) fn multiply_maps(
    base: &Ring,
    x: &BTreeMap<WeylMonomial, Value>,
    y: &BTreeMap<WeylMonomial, Value>,
) -> BTreeMap<WeylMonomial, Value> {
    let mut acc = BTreeMap::new();
    for (m1, c1) in x {
        for (m2, c2) in y {
            let c = base.mul(c1, c2);
            if base.is_zero(&c) {
                continue;
            }
            for (mono, k) in monomial_product(m1, m2) {
                let term = base.scale_int(&c, &k);
                if !base.is_zero(&term) {
                    accumulate(base, &mut acc, mono, term);
                }
            }
        }
    }
    acc
}

fn weyl_parts(ring: &Ring) -> Result<(&Ring, Option<usize>)> {
    match ring.kind() {
        RingKind::Weyl { base, bound } => Ok((base, *bound)),
        _ => Err(Error::Invalid(format!("{ring} is not a Weyl algebra"))),
    }
}

fn weyl_map(value: &Value) -> &BTreeMap<WeylMonomial, Value> {
    match value {
        Value::Weyl(map) => map,
        _ => unreachable!("checked Weyl element"),
    }
}

fn generator(ring: &Ring, index: usize, a: u32, b: u32) -> Result<Element> {
    let (base, bound) = weyl_parts(ring)?;
    if let Some(n) = bound {
        if index >= n {
            return Err(Error::Invalid(format!("index {index} outside A_{n}")));
        }
    }
    let mut map = BTreeMap::new();
    map.insert(WeylMonomial(vec![(index, a, b)]), base.one());
    Element::new(ring.clone(), Value::Weyl(map))
}

/// The generator `x_index`.
pub fn x(ring: &Ring, index: usize) -> Result<Element> {
    generator(ring, index, 1, 0)
}

/// The generator `y_index`.
pub fn y(ring: &Ring, index: usize) -> Result<Element> {
    generator(ring, index, 0, 1)
}

/// Normal-ordered product of two Weyl elements.
pub fn weyl_multiply(u: &Element, v: &Element) -> Result<Element> {
    weyl_parts(u.ring())?;
    u.mul(v)
}

fn uses_y(value: &Value, index: usize) -> bool {
    weyl_map(value).keys().any(|m| m.exponents(index).1 > 0)
}

/// For `s` in `A_I(R)`, the smallest index `n` with `y_n` absent from `s`
/// and `t = y_n * s`, so that `s = [x_n, t]`.
pub fn fresh_variable_witness(s: &Element) -> Result<(usize, Element)> {
    let (_, bound) = weyl_parts(s.ring())?;
    let n = (0..).find(|&i| !uses_y(s.value(), i)).expect("finite support");
    if let Some(b) = bound {
        if n >= b {
            return Err(Error::NoFreshIndex(b));
        }
    }
    let t = y(s.ring(), n)?.mul(s)?;
    Ok((n, t))
}

/// Least common multiple of the divisors `b + 1` that the antiderivative of
/// `f` in `y_0` needs. Multiplying `f` by this makes it integrable over `Z`.
pub fn antiderivative_denominator(f: &Element) -> Result<BigInt> {
    weyl_parts(f.ring())?;
    Ok(weyl_map(f.value())
        .keys()
        .map(|m| BigInt::from(m.exponents(0).1 + 1))
        .fold(BigInt::one(), |acc, d| acc.lcm(&d)))
}

/// Solves `[x_0, g] = f`.
///
/// On normal forms `[x_0, -]` is the formal derivative in `y_0`, so `g` is
/// the termwise antiderivative `c x^a y^(b+1) / (b+1)`. Needs exact division
/// by each `b + 1` in the base ring.
pub fn single_commutator_over_q(f: &Element) -> Result<Element> {
    let (base, _) = weyl_parts(f.ring())?;
    let mut out = BTreeMap::new();
    for (mono, c) in weyl_map(f.value()) {
        let (a, b) = mono.exponents(0);
        let d = BigInt::from(b + 1);
        let q = base
            .try_div_int(c, &d)
            .ok_or_else(|| Error::DivisionUnavailable(d.to_string()))?;
        if !base.is_zero(&q) {
            accumulate(base, &mut out, mono.with_exponents(0, a, b + 1), q);
        }
    }
    Element::new(f.ring().clone(), Value::Weyl(out))
}

/// `X = sum_{i<p} E_{i,i+1}` and `Y = sum_{i<p} i E_{i+1,i}` in `M_p(base)`
/// (1-based units), the images of `x` and `y`.
pub fn mod_p_generators(base: &Ring, p: usize) -> Result<(MatrixElement, MatrixElement)> {
    // 0-based: X[i][i+1] = 1 for i < p-1, Y[i][i-1] = i for 1 <= i < p.
    let xm = MatrixElement::from_fn(base, p, |i, j| {
        if j == i + 1 {
            base.one()
        } else {
            base.zero()
        }
    })?;
    let ym = MatrixElement::from_fn(base, p, |i, j| {
        if i >= 1 && j == i - 1 {
            base.from_i64(i as i64)
        } else {
            base.zero()
        }
    })?;
    Ok((xm, ym))
}

fn check_mod_p(ring: &Ring, p: u64) -> Result<&Ring> {
    let (base, _) = weyl_parts(ring)?;
    if !crate::ring::is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    if !base.has_characteristic(p) {
        return Err(Error::Characteristic(format!("{p} * 1 is nonzero in {base}")));
    }
    Ok(base)
}

/// Image of `u` under `x -> X, y -> Y`, a ring map `A_1(R) -> M_p(R)` when
/// `R` has characteristic `p`.
pub fn mod_p_representation(u: &Element, p: u64) -> Result<MatrixElement> {
    let base = check_mod_p(u.ring(), p)?;
    let map = weyl_map(u.value());
    if map.keys().any(|m| m.max_index().is_some_and(|i| i > 0)) {
        return Err(Error::Invalid("element uses indices other than 0".to_string()));
    }
    let (xm, ym) = mod_p_generators(base, p as usize)?;
    let max_a = map.keys().map(|m| m.exponents(0).0).max().unwrap_or(0);
    let max_b = map.keys().map(|m| m.exponents(0).1).max().unwrap_or(0);
    let mut x_pows = vec![MatrixElement::identity(base, p as usize)?];
    for _ in 0..max_a {
        x_pows.push(x_pows.last().unwrap().mul(&xm)?);
    }
    let mut y_pows = vec![MatrixElement::identity(base, p as usize)?];
    for _ in 0..max_b {
        y_pows.push(y_pows.last().unwrap().mul(&ym)?);
    }
    let mut acc = MatrixElement::zero(base, p as usize)?;
    for (mono, c) in map {
        let (a, b) = mono.exponents(0);
        let term = x_pows[a as usize].mul(&y_pows[b as usize])?.scale_left(c);
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Certificate that `-r (xy)^(p-1)` is not a sum of commutators in
/// `A_1(R)` for commutative `R` of characteristic `p` and `r != 0`.
///
/// The image under the mod-p representation has trace `r`, while every sum
/// of commutators in `M_p(R)` has trace in `[R, R] = 0`.
pub fn obstruction_certificate(ring: &Ring, r: &Element, p: u64) -> Result<Certificate> {
    let base = check_mod_p(ring, p)?;
    base.expect_same(r.ring())?;
    if r.is_zero() {
        return Err(Error::ZeroObstruction);
    }
    if !base.is_commutative() {
        return Err(Error::Invalid(format!("{base} is not commutative")));
    }
    let r_weyl = Element::new(ring.clone(), ring.embed(r.value()))?;
    let xy = x(ring, 0)?.mul(&y(ring, 0)?)?;
    let u = r_weyl.mul(&xy.pow(p as u32 - 1))?.neg();
    let image = mod_p_representation(&u, p)?;

    let (xm, ym) = mod_p_generators(base, p as usize)?;
    let bracket = xm.commutator(&ym)?;
    let bracket_is_one = bracket == MatrixElement::identity(base, p as usize)?;
    let xy_pow = xm.mul(&ym)?.pow(p as u32 - 1);
    let xy_pow_trace = Element::new(base.clone(), xy_pow.trace())?;
    let direct = xy_pow.scale_left(r.value()).neg();
    let trace = Element::new(base.clone(), image.trace())?;
    let agrees = direct == image;
    let ok = bracket_is_one && agrees && &trace == r;

    Ok(Certificate::new("weyl-mod-p-obstruction")
        .param("ring", ring)
        .param("p", p)
        .param("r", r)
        .with_evidence("element", &u)
        .with_evidence("bracket_XY_is_identity", bracket_is_one)
        .with_evidence("trace_XY_power", &xy_pow_trace)
        .with_evidence("image", &image)
        .with_evidence("image_matches_direct_product", agrees)
        .with_evidence("image_trace", &trace)
        .with_evidence(
            "implication",
            "trace of a sum of commutators in M_p(R) lies in [R,R] = 0",
        )
        .decide(ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> Ring {
        Ring::weyl(Ring::integers(), Some(1)).unwrap()
    }

    #[test]
    fn defining_relation() {
        let r = a1();
        let (x0, y0) = (x(&r, 0).unwrap(), y(&r, 0).unwrap());
        let yx = y0.mul(&x0).unwrap();
        let expected = x0.mul(&y0).unwrap().sub(&Element::one(&r)).unwrap();
        assert_eq!(yx, expected);
        assert_eq!(yx.to_string(), "x0*y0 - 1");
        assert_eq!(x0.mul(&y0).unwrap().to_string(), "x0*y0");
        assert_eq!(crate::sum::commutator(&x0, &y0).unwrap(), Element::one(&r));
    }

    #[test]
    fn y_squared_x_squared() {
        let r = a1();
        let (x0, y0) = (x(&r, 0).unwrap(), y(&r, 0).unwrap());
        let p = y0.pow(2).mul(&x0.pow(2)).unwrap();
        assert_eq!(p.to_string(), "x0^2*y0^2 - 4*x0*y0 + 2");
    }

    #[test]
    fn cross_indices_commute() {
        let r = Ring::weyl(Ring::integers(), None).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let c = crate::sum::commutator(&x(&r, i).unwrap(), &y(&r, j).unwrap()).unwrap();
                let expected = if i == j { Element::one(&r) } else { Element::zero(&r) };
                assert_eq!(c, expected);
                let xx = crate::sum::commutator(&x(&r, i).unwrap(), &x(&r, j).unwrap()).unwrap();
                assert!(xx.is_zero());
            }
        }
    }

    #[test]
    fn bounded_algebra_rejects_large_index() {
        assert!(x(&a1(), 1).is_err());
    }

    #[test]
    fn fresh_witness_examples() {
        let r = Ring::weyl(Ring::integers(), None).unwrap();
        let (n, t) = fresh_variable_witness(&Element::zero(&r)).unwrap();
        assert_eq!(n, 0);
        assert!(t.is_zero());
        let y0 = y(&r, 0).unwrap();
        let (n, t) = fresh_variable_witness(&y0).unwrap();
        assert_eq!(n, 1);
        assert_eq!(t, y(&r, 1).unwrap().mul(&y0).unwrap());
        assert_eq!(crate::sum::commutator(&x(&r, 1).unwrap(), &t).unwrap(), y0);
        // A_1 has no room for a fresh index once y_0 is used.
        assert_eq!(fresh_variable_witness(&y(&a1(), 0).unwrap()), Err(Error::NoFreshIndex(1)));
    }

    #[test]
    fn antiderivative_examples() {
        let q = Ring::weyl(Ring::rationals(), Some(1)).unwrap();
        assert!(single_commutator_over_q(&Element::zero(&q)).unwrap().is_zero());
        assert_eq!(single_commutator_over_q(&Element::one(&q)).unwrap(), y(&q, 0).unwrap());
        let xy = x(&q, 0).unwrap().mul(&y(&q, 0).unwrap()).unwrap();
        let g = single_commutator_over_q(&xy).unwrap();
        assert_eq!(g.to_string(), "1/2*x0*y0^2");
        assert_eq!(crate::sum::commutator(&x(&q, 0).unwrap(), &g).unwrap(), xy);

        let z = a1();
        let xy = x(&z, 0).unwrap().mul(&y(&z, 0).unwrap()).unwrap();
        assert_eq!(
            single_commutator_over_q(&xy),
            Err(Error::DivisionUnavailable("2".to_string()))
        );
        assert_eq!(antiderivative_denominator(&xy).unwrap(), BigInt::from(2));
    }

    #[test]
    fn mod_p_relation_and_trace() {
        for p in [2u64, 3, 5, 7, 11] {
            let f = Ring::prime_field(p).unwrap();
            let (xm, ym) = mod_p_generators(&f, p as usize).unwrap();
            assert_eq!(xm.commutator(&ym).unwrap(), MatrixElement::identity(&f, p as usize).unwrap());
            let t = xm.mul(&ym).unwrap().pow(p as u32 - 1).trace();
            assert_eq!(t, f.from_i64(p as i64 - 1));
        }
    }

    #[test]
    fn mod_p_image_of_bracket_is_identity() {
        let f = Ring::prime_field(3).unwrap();
        let w = Ring::weyl(f.clone(), Some(1)).unwrap();
        let (x0, y0) = (x(&w, 0).unwrap(), y(&w, 0).unwrap());
        let u = crate::sum::commutator(&x0, &y0).unwrap();
        let img = mod_p_representation(&u, 3).unwrap();
        assert_eq!(img, MatrixElement::identity(&f, 3).unwrap());
        assert_eq!(mod_p_representation(&Element::one(&w), 3).unwrap(), MatrixElement::identity(&f, 3).unwrap());
        assert!(matches!(mod_p_representation(&u, 5), Err(Error::Characteristic(_))));
    }

    #[test]
    fn obstruction_examples() {
        for (p, r) in [(2u64, 1i64), (3, 1), (5, 2)] {
            let f = Ring::prime_field(p).unwrap();
            let w = Ring::weyl(f.clone(), Some(1)).unwrap();
            let cert = obstruction_certificate(&w, &Element::from_int(&f, r), p).unwrap();
            assert!(cert.passed(), "{cert}");
            assert_eq!(cert.evidence_value("image_trace"), Some(r.to_string().as_str()));
        }
        let f = Ring::prime_field(2).unwrap();
        let w = Ring::weyl(f.clone(), Some(1)).unwrap();
        assert_eq!(
            obstruction_certificate(&w, &Element::zero(&f), 2),
            Err(Error::ZeroObstruction)
        );
    }

    #[test]
    fn p2_image_of_xy_has_trace_one() {
        let f = Ring::prime_field(2).unwrap();
        let w = Ring::weyl(f.clone(), Some(1)).unwrap();
        let xy = x(&w, 0).unwrap().mul(&y(&w, 0).unwrap()).unwrap();
        let img = mod_p_representation(&xy, 2).unwrap();
        assert_eq!(img.trace(), Value::Residue(1));
        let (xm, ym) = mod_p_generators(&f, 2).unwrap();
        assert_eq!(xm, MatrixElement::unit(&f, 2, 0, 1).unwrap());
        assert_eq!(ym, MatrixElement::unit(&f, 2, 1, 0).unwrap());
    }
}
