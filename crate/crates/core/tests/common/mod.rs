#![allow(dead_code)]

use commring_core::random::random_value;
use commring_core::{Element, Ring};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sample(ring: &Ring, rng: &mut ChaCha8Rng) -> Element {
    Element::new(ring.clone(), random_value(ring, rng)).unwrap()
}

/// A spread of concrete rings, commutative and not.
pub fn rings() -> Vec<Ring> {
    let z = Ring::integers();
    let f2 = Ring::prime_field(2).unwrap();
    vec![
        z.clone(),
        Ring::rationals(),
        Ring::modular(6).unwrap(),
        Ring::prime_field(7).unwrap(),
        Ring::polynomial(z.clone(), vec!["t".into(), "u".into()], true).unwrap(),
        Ring::polynomial(z.clone(), vec!["a".into(), "b".into()], false).unwrap(),
        Ring::square_zero(f2.clone(), vec!["x11".into(), "x12".into(), "x21".into()]).unwrap(),
        Ring::matrix(Ring::modular(4).unwrap(), 2).unwrap(),
        Ring::matrix(f2, 3).unwrap(),
        Ring::weyl(z.clone(), Some(2)).unwrap(),
        Ring::weyl(Ring::rationals(), None).unwrap(),
    ]
}
