#![allow(dead_code)]

use kummer_core::exactalg::{int, Rational};
use kummer_core::pencil::{validate_config, PencilConfig};
use num_bigint::BigInt;
use rand::Rng;

pub fn config(a: i64, b: i64) -> PencilConfig {
    validate_config(int(a), int(b)).unwrap()
}

pub fn fixed_configs() -> Vec<PencilConfig> {
    vec![config(2, 3), config(3, 5), config(2, 7)]
}

pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Rejection-samples a valid configuration with numerators and
/// denominators bounded by `bound`.
pub fn random_config<R: Rng>(rng: &mut R, bound: i64) -> PencilConfig {
    loop {
        let a = random_rational(rng, bound);
        let b = random_rational(rng, bound);
        if let Ok(cfg) = validate_config(a, b) {
            return cfg;
        }
    }
}
