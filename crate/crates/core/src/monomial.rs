//! Exponent vectors with the graded reverse lexicographic order.

use std::cmp::Ordering;

/// A monomial as a vector of exponents, one per ring variable.
///
/// `Ord` is grevlex on the declared variable order: higher total degree
/// wins; on equal degree the monomial with the *smaller* exponent at the
/// rightmost differing variable is the larger one.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The constant monomial 1 in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    /// Product; exponent overflow is a hard error, never wraparound.
    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), rhs.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&rhs.exps)
                .map(|(&a, &b)| a.checked_add(b).expect("monomial exponent overflow"))
                .collect(),
        }
    }

    /// True when `self` divides `rhs` componentwise.
    pub fn divides(&self, rhs: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), rhs.exps.len());
        self.exps.iter().zip(&rhs.exps).all(|(&a, &b)| a <= b)
    }

    /// `self / rhs` when the division is exact.
    pub fn try_div(&self, rhs: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.exps.len(), rhs.exps.len());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (&a, &b) in self.exps.iter().zip(&rhs.exps) {
            exps.push(a.checked_sub(b)?);
        }
        Some(Monomial { exps })
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), rhs.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&rhs.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    /// No variable appears in both monomials.
    pub fn is_coprime_to(&self, rhs: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&rhs.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Raise to the k-th power (exponent overflow is a hard error).
    pub fn pow(&self, k: u64) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .map(|&a| u32::try_from(a as u64 * k).expect("monomial exponent overflow"))
                .collect(),
        }
    }

    /// Componentwise split a = q*quotient + remainder with remainder < q.
    pub fn div_rem_scalar(&self, q: u64) -> (Monomial, Monomial) {
        debug_assert!(q > 0);
        let mut quot = Vec::with_capacity(self.exps.len());
        let mut rem = Vec::with_capacity(self.exps.len());
        for &a in &self.exps {
            quot.push((a as u64 / q) as u32);
            rem.push((a as u64 % q) as u32);
        }
        (Monomial { exps: quot }, Monomial { exps: rem })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.exps.len()).rev() {
            if self.exps[i] != other.exps[i] {
                // smaller exponent in the rightmost differing slot ranks higher
                return other.exps[i].cmp(&self.exps[i]);
            }
        }
        Ordering::Equal
    }
}
