mod common;

use commring_core::obstruction::{
    build_counterexample_matrix, commuting_partners, lemma_exhaustive_check, lemma_sampled_check, span_dimension,
};
use commring_core::random::random_value;
use commring_core::{Element, MatrixElement, Ring, Value};
use common::rng;
use proptest::prelude::*;
use rand::Rng as _;

fn random_2x2(field: &Ring, r: &mut rand_chacha::ChaCha8Rng) -> MatrixElement {
    MatrixElement::from_fn(field, 2, |_, _| random_value(field, r)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commuting_pairs_span_at_most_two(seed in any::<u64>(), pi in 0usize..2) {
        let p = [5u64, 7][pi];
        let field = Ring::prime_field(p).unwrap();
        let mut r = rng(seed);
        let a0 = random_2x2(&field, &mut r);
        let partners = commuting_partners(&a0).unwrap();
        let b0 = &partners[r.gen_range(0..partners.len())];
        prop_assert_eq!(a0.mul(b0).unwrap(), b0.mul(&a0).unwrap());
        let report = span_dimension(&a0, b0).unwrap();
        prop_assert!(report.commuting);
        prop_assert!(report.dimension <= 2);
    }

    #[test]
    fn any_pair_spans_at_most_four(seed in any::<u64>()) {
        let field = Ring::prime_field(5).unwrap();
        let mut r = rng(seed);
        let report = span_dimension(&random_2x2(&field, &mut r), &random_2x2(&field, &mut r)).unwrap();
        prop_assert!(report.dimension <= 4);
    }

    #[test]
    fn counterexample_matrix_is_traceless(seed in any::<u64>()) {
        let f3 = Ring::prime_field(3).unwrap();
        let ring = Ring::square_zero(f3.clone(), vec!["g0".into(), "g1".into(), "g2".into(), "g3".into()]).unwrap();
        let mut r = rng(seed);
        let mut ideal = || {
            let mut parts: Vec<Value> = (0..5).map(|_| random_value(&f3, &mut r)).collect();
            parts[0] = f3.zero();
            Element::new(ring.clone(), Value::SquareZero(parts)).unwrap()
        };
        let (x, y, z) = (ideal(), ideal(), ideal());
        if let Ok(m) = build_counterexample_matrix(&ring, &x, &y, &z) {
            prop_assert!(ring.is_zero(&m.trace()));
        }
    }
}

// Commutators are traceless, so the span sits inside sl_2 and dimension 4 is
// unreachable; non-commuting pairs top out at 3.
#[test]
fn noncommuting_pairs_reach_three_not_four() {
    let field = Ring::prime_field(5).unwrap();
    let mut r = rng(0);
    let mut seen = [false; 5];
    for _ in 0..400 {
        let report = span_dimension(&random_2x2(&field, &mut r), &random_2x2(&field, &mut r)).unwrap();
        if !report.commuting {
            seen[report.dimension] = true;
        }
    }
    assert!(seen[3] && !seen[4], "{seen:?}");
}

#[test]
fn exhaustive_over_f2() {
    let cert = lemma_exhaustive_check(2).unwrap();
    assert!(cert.passed(), "{cert}");
    assert_eq!(cert.evidence_value("commuting_pairs"), Some("88"));
}

#[test]
fn sampled_over_f7() {
    let cert = lemma_sampled_check(7, 500, &mut rng(3)).unwrap();
    assert!(cert.passed(), "{cert}");
}
