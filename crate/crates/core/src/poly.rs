//! Sparse multivariate polynomials over a prime field.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::monomial::Monomial;

#[derive(PartialEq, Eq, Debug)]
struct RingInner {
    field: PrimeField,
    vars: Vec<String>,
}

/// A polynomial ring descriptor: the coefficient field and the ordered
/// variable names. Cloning is cheap; the descriptor is immutable and
/// shared read-only between threads.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Ring {}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new(field: PrimeField, vars: Vec<String>) -> Result<Ring> {
        if vars.is_empty() {
            return Err(Error::InvalidRing(
                "at least one variable is required".into(),
            ));
        }
        for v in &vars {
            if !is_identifier(v) {
                return Err(Error::InvalidRing(format!(
                    "{:?} is not a valid variable name",
                    v
                )));
            }
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable {:?}", v)));
            }
        }
        Ok(Ring(Arc::new(RingInner { field, vars })))
    }

    /// Internal constructor used by the Rabinowitsch trick; the fresh
    /// variable name is generated, so identifier checks are skipped.
    pub(crate) fn extend(&self, fresh: String) -> Ring {
        let mut vars = self.0.vars.clone();
        vars.push(fresh);
        Ring(Arc::new(RingInner {
            field: self.0.field,
            vars,
        }))
    }

    pub fn field(&self) -> PrimeField {
        self.0.field
    }

    pub fn characteristic(&self) -> u64 {
        self.0.field.characteristic()
    }

    pub fn num_vars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }
}

/// A sparse polynomial: a term map keyed by monomials in grevlex order.
/// Zero coefficients are never stored; the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(ring, 1)
    }

    pub fn constant(ring: &Ring, c: i64) -> Poly {
        let mut p = Poly::zero(ring);
        p.add_term(Monomial::one(ring.num_vars()), ring.field().element(c));
        p
    }

    pub fn variable(ring: &Ring, index: usize) -> Poly {
        assert!(index < ring.num_vars());
        let mut exps = vec![0u32; ring.num_vars()];
        exps[index] = 1;
        let mut p = Poly::zero(ring);
        p.add_term(Monomial::new(exps), ring.field().one());
        p
    }

    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Poly {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.num_vars(), ring.num_vars());
            p.add_term(m, ring.field().element(c));
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FieldElement)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    /// The grevlex-largest term.
    pub fn leading(&self) -> Option<(&Monomial, FieldElement)> {
        self.terms.last_key_value().map(|(m, c)| (m, *c))
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms
            .get(m)
            .copied()
            .unwrap_or_else(|| self.ring.field().zero())
    }

    /// The coefficient of the constant monomial, i.e. the value at the origin.
    pub fn constant_coeff(&self) -> FieldElement {
        self.coeff(&Monomial::one(self.ring.num_vars()))
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Exactly one stored term.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&c);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    slot.insert(sum);
                }
            }
        }
    }

    fn check_ring(&self, rhs: &Poly) {
        assert_eq!(self.ring, rhs.ring, "polynomials from different rings");
    }

    /// Remove and return the grevlex-largest term.
    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, FieldElement)> {
        self.terms.pop_last()
    }

    /// self -= c * m * g, in place.
    pub(crate) fn sub_assign_mul_term(&mut self, g: &Poly, m: &Monomial, c: FieldElement) {
        for (gm, gc) in &g.terms {
            self.add_term(gm.mul(m), gc.mul(&c).neg());
        }
    }

    /// Keep only the terms whose monomial satisfies the predicate.
    pub(crate) fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            if keep(m) {
                out.terms.insert(m.clone(), *c);
            }
        }
        out
    }

    /// Divide every coefficient by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                if lc.value() == 1 {
                    self.clone()
                } else {
                    self.scale(lc.inv())
                }
            }
        }
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let mut out = Poly::zero(&self.ring);
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a.mul(&c));
        }
        out
    }

    /// Multiply by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        let mut out = Poly::zero(&self.ring);
        for (mm, a) in &self.terms {
            out.terms.insert(mm.mul(m), a.mul(&c));
        }
        out
    }

    /// f^n by binary exponentiation; f^0 = 1.
    pub fn pow(&self, n: u64) -> Poly {
        let mut acc = Poly::one(&self.ring);
        if n == 0 {
            return acc;
        }
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The Frobenius twist f^(p^e): every exponent scales by p^e while the
    /// coefficients are fixed by Fermat. Linear in the number of terms.
    pub fn frobenius(&self, e: u32) -> Poly {
        let p = self.ring.characteristic();
        let q = p.checked_pow(e).expect("p^e overflows u64");
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            out.terms.insert(m.pow(q), *c);
        }
        out
    }

    /// f^n through the base-p digits of n: f^n = prod_i (f^(p^i))^(d_i),
    /// evaluated as repeated twist-then-multiply. Agrees with `pow` and is
    /// far cheaper for the large p-power-sized exponents of threshold
    /// searches. A term budget bounds intermediate blowup.
    pub fn pow_frobenius(&self, n: u64, budget: u64) -> Result<Poly> {
        let p = self.ring.characteristic();
        if n == 0 {
            return Ok(Poly::one(&self.ring));
        }
        // small powers of f indexed by base-p digit
        let mut table: Vec<Poly> = Vec::with_capacity(p.min(64) as usize);
        table.push(Poly::one(&self.ring));
        let mut digits = Vec::new();
        let mut k = n;
        while k > 0 {
            digits.push((k % p) as usize);
            k /= p;
        }
        let max_digit = *digits.iter().max().unwrap();
        for d in 1..=max_digit {
            let next = &table[d - 1] * self;
            table.push(next);
        }
        let mut acc = Poly::one(&self.ring);
        for &d in digits.iter().rev() {
            acc = acc.frobenius(1);
            if d > 0 {
                acc = &acc * &table[d];
            }
            if acc.num_terms() as u64 > budget {
                return Err(Error::BudgetExceeded {
                    terms: acc.num_terms() as u64,
                    budget,
                });
            }
        }
        Ok(acc)
    }

    /// Lift into a ring with extra trailing variables.
    pub(crate) fn lift(&self, target: &Ring) -> Poly {
        assert!(target.num_vars() >= self.ring.num_vars());
        assert_eq!(target.field(), self.ring.field());
        let pad = target.num_vars() - self.ring.num_vars();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = m.exponents().to_vec();
            exps.extend(std::iter::repeat_n(0, pad));
            out.terms.insert(Monomial::new(exps), *c);
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), *c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.neg());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let mut out = Poly::zero(&self.ring);
        // iterate the smaller operand on the outside
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (m1, c1) in &small.terms {
            for (m2, c2) in &large.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    /// Canonical text: terms in descending grevlex order, reduced
    /// coefficients, `*` between factors, `^` for powers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let vars = self.ring.vars();
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            if c.value() != 1 || m.is_one() {
                factors.push(c.value().to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
