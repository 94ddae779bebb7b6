//! Shared fixtures for the kernel benchmarks.

use fthresh_core::{Ideal, Poly, PrimeField, Ring};

pub fn ring(p: u64, vars: &[&str]) -> Ring {
    Ring::new(
        PrimeField::new(p).expect("prime"),
        vars.iter().map(|s| s.to_string()).collect(),
    )
    .expect("ring")
}

pub fn poly(r: &Ring, text: &str) -> Poly {
    fthresh_core::parse_poly(text, r).expect("parse")
}

pub fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| poly(r, g)))
}
