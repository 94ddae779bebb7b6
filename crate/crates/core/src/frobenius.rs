//! Characteristic-p ideal operations: Frobenius (bracket) powers, p^e-th
//! roots by Cartier descent, and splitting tests at the origin.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::Ideal;
use crate::monomial::Monomial;
use crate::poly::Poly;
#[cfg(test)]
use crate::poly::Ring;

/// A Frobenius iterate: the exponent e together with q = p^e.
///
/// q is kept small enough to serve as a monomial exponent, which is what
/// every consumer needs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FrobeniusLevel {
    e: u32,
    q: u64,
}

impl FrobeniusLevel {
    pub fn new(field: PrimeField, e: u32) -> Result<Self> {
        let p = field.characteristic();
        let q = p
            .checked_pow(e)
            .filter(|&q| q <= u32::MAX as u64)
            .ok_or(Error::LevelOverflow { p, e })?;
        Ok(FrobeniusLevel { e, q })
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

/// J^[q]: generated by g^q for each generator g; q-th powers of generators
/// suffice. Computed as a Frobenius twist, so it is linear per generator.
pub fn bracket_power(ideal: &Ideal, level: FrobeniusLevel) -> Ideal {
    Ideal::new(
        ideal.ring(),
        ideal.generators().iter().map(|g| g.frobenius(level.e)),
    )
}

/// I^[1/q]: the smallest ideal K with I ⊆ K^[q].
///
/// Each generator g is written as Σ_r h_r^q · x^r over the monomial basis
/// {x^r : all exponents < q}, splitting every exponent vector a as
/// a = q·⌊a/q⌋ + (a mod q); the root of (g) is (h_r : r) and roots are
/// additive over generators. Coefficients stay fixed since c^q = c in F_p.
pub fn eth_root(ideal: &Ideal, level: FrobeniusLevel) -> Ideal {
    let ring = ideal.ring();
    let q = level.q;
    let mut gens: Vec<Poly> = Vec::new();
    for g in ideal.generators() {
        let mut parts: BTreeMap<Monomial, Vec<(Monomial, i64)>> = BTreeMap::new();
        for (m, c) in g.terms() {
            let (quot, rem) = m.div_rem_scalar(q);
            parts.entry(rem).or_default().push((quot, c.value() as i64));
        }
        for (_, terms) in parts {
            gens.push(Poly::from_terms(ring, terms));
        }
    }
    let root = Ideal::new(ring, gens);
    debug_assert!(
        {
            let back = bracket_power(&root, level);
            ideal.generators().iter().all(|g| back.contains(g))
        },
        "eth_root postcondition I ⊆ (I^[1/q])^[q] violated"
    );
    root
}

/// Fedder's criterion at the origin for a hypersurface: R/f is F-pure
/// iff f^(p-1) ∉ m^[p].
pub fn fedder_fpure(f: &Poly) -> Result<bool> {
    if f.is_zero() || !f.constant_coeff().is_zero() {
        return Err(Error::NotLocalAtOrigin);
    }
    let ring = f.ring();
    let p = ring.characteristic();
    let level = FrobeniusLevel::new(ring.field(), 1)?;
    let m_bracket = bracket_power(&Ideal::maximal(ring), level);
    Ok(!m_bracket.contains(&f.pow(p - 1)))
}

/// Whether the map sending 1 to f^(a/p^e) splits, i.e. f^a ∉ m^[p^e].
/// Monotone: true at (a, e) stays true for smaller a and at (pa, e+1).
pub fn splitting_test(f: &Poly, a: u64, level: FrobeniusLevel) -> Result<bool> {
    let ring = f.ring();
    let m_bracket = bracket_power(&Ideal::maximal(ring), level);
    let power = f.pow_frobenius(a, crate::thresholds::DEFAULT_TERM_BUDGET)?;
    Ok(!m_bracket.contains(&power))
}
