//! Residue arithmetic modulo a machine-word prime.

use crate::error::{Error, Result};

/// The prime field F_p. Cheap to copy; every scalar carries one.
///
/// The characteristic is restricted to `2 <= p < 2^31` so that products of
/// two reduced residues never overflow a `u64`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PrimeField {
    p: u64,
}

const MAX_CHARACTERISTIC: u64 = 1 << 31;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..MAX_CHARACTERISTIC).contains(&p) {
            return Err(Error::CharacteristicOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Reduce an arbitrary integer into the field.
    pub fn element(&self, value: i64) -> FieldElement {
        let p = self.p as i64;
        let v = value.rem_euclid(p) as u64;
        FieldElement {
            value: v,
            field: *self,
        }
    }

    pub fn element_u64(&self, value: u64) -> FieldElement {
        FieldElement {
            value: value % self.p,
            field: *self,
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            value: 0,
            field: *self,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            value: 1 % self.p,
            field: *self,
        }
    }
}

/// An element of F_p, stored as the reduced residue in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldElement {
    value: u64,
    field: PrimeField,
}

impl FieldElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.field.p;
        FieldElement {
            value: if self.value == 0 { 0 } else { p - self.value },
            field: self.field,
        }
    }

    pub fn add(&self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            value: (self.value + rhs.value) % self.field.p,
            field: self.field,
        }
    }

    pub fn sub(&self, rhs: &FieldElement) -> FieldElement {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            value: (self.value * rhs.value) % self.field.p,
            field: self.field,
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> FieldElement {
        assert!(!self.is_zero(), "inverse of zero in F_{}", self.field.p);
        self.pow(self.field.p - 2)
    }

    pub fn pow(&self, mut n: u64) -> FieldElement {
        let mut base = *self;
        let mut acc = self.field.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    fn check(&self, rhs: &FieldElement) {
        assert_eq!(
            self.field.p, rhs.field.p,
            "field elements from different characteristics"
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_checked_at_construction() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(7).is_ok());
        assert!(PrimeField::new(2147483647).is_ok()); // 2^31 - 1 is prime
        assert!(matches!(
            PrimeField::new(1),
            Err(Error::CharacteristicOutOfRange(1))
        ));
        assert!(matches!(PrimeField::new(9), Err(Error::NotPrime(9))));
        assert!(matches!(
            PrimeField::new(1 << 31),
            Err(Error::CharacteristicOutOfRange(_))
        ));
    }

    #[test]
    fn arithmetic_mod_7() {
        let f = PrimeField::new(7).unwrap();
        let a = f.element(5);
        let b = f.element(4);
        assert_eq!(a.add(&b).value(), 2);
        assert_eq!(a.mul(&b).value(), 6);
        assert_eq!(a.sub(&b).value(), 1);
        assert_eq!(f.element(-3).value(), 4);
        assert_eq!(a.mul(&a.inv()).value(), 1);
    }

    #[test]
    fn fermat_little() {
        let f = PrimeField::new(13).unwrap();
        for v in 1..13 {
            assert_eq!(f.element(v).pow(13).value(), f.element(v).value());
        }
    }
}
