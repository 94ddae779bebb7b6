//! The nu invariants, nested interval estimates of the threshold c^J(f),
//! and the F-pure threshold with its exact-value guess.

use crate::error::{Error, Result};
use crate::frobenius::{bracket_power, FrobeniusLevel};
use crate::groebner::Ideal;
use crate::poly::Poly;
use crate::rational::{simplest_in, PRational};

/// Default cap on the term count of any intermediate polynomial.
pub const DEFAULT_TERM_BUDGET: u64 = 1_000_000;

/// One level of the nested interval bracketing c^J(f):
/// [nu/p^e, (nu+1)/p^e].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThresholdEstimate {
    pub lower: PRational,
    pub upper: PRational,
    /// The Frobenius level e achieving the bounds.
    pub level: u32,
    pub nu: u64,
    /// nu = 0 because f already lies in J^[p^e]; the max defining nu ran
    /// over an empty set and 0 is returned by convention.
    pub degenerate: bool,
}

/// Powers of f reduced modulo a fixed bracket power, with memoized reduced
/// squares. Reducing after every multiplication keeps intermediates inside
/// the staircase of the ideal, so membership tests for f^n cost O(log n)
/// bounded multiplications.
struct ReducedPowers<'a> {
    bracket: &'a Ideal,
    squares: Vec<Poly>,
    budget: u64,
}

impl<'a> ReducedPowers<'a> {
    fn new(f: &Poly, bracket: &'a Ideal, budget: u64) -> Self {
        ReducedPowers {
            bracket,
            squares: vec![bracket.normal_form(f)],
            budget,
        }
    }

    fn charge(&self, p: &Poly) -> Result<()> {
        let terms = p.num_terms() as u64;
        if terms > self.budget {
            return Err(Error::BudgetExceeded {
                terms,
                budget: self.budget,
            });
        }
        Ok(())
    }

    fn square(&mut self, i: usize) -> Result<&Poly> {
        while self.squares.len() <= i {
            let prev = &self.squares[self.squares.len() - 1];
            let next = self.bracket.normal_form(&(prev * prev));
            self.charge(&next)?;
            self.squares.push(next);
        }
        Ok(&self.squares[i])
    }

    /// The normal form of f^n modulo the bracket power.
    fn reduced_pow(&mut self, n: u64) -> Result<Poly> {
        let ring = self.squares[0].ring().clone();
        let mut acc = Poly::one(&ring);
        let mut bit = 0usize;
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                let sq = self.square(bit)?.clone();
                acc = self.bracket.normal_form(&(&acc * &sq));
                self.charge(&acc)?;
                if acc.is_zero() {
                    return Ok(acc);
                }
            }
            k >>= 1;
            bit += 1;
        }
        Ok(acc)
    }

    fn is_member(&mut self, n: u64) -> Result<bool> {
        Ok(self.reduced_pow(n)?.is_zero())
    }
}

/// nu_e^J(f): the largest n with f^n outside J^[p^e].
///
/// Membership in n is monotone, so the search doubles n until the power
/// falls into the bracket ideal and then binary-searches the boundary.
/// Preconditions: f ∈ √J (checked); when f itself lies in J^[p^e] the
/// result is 0 by convention.
pub fn nu(f: &Poly, j: &Ideal, level: FrobeniusLevel) -> Result<u64> {
    nu_budgeted(f, j, level, DEFAULT_TERM_BUDGET)
}

pub fn nu_budgeted(f: &Poly, j: &Ideal, level: FrobeniusLevel, budget: u64) -> Result<u64> {
    assert_eq!(f.ring(), j.ring(), "ring mismatch");
    if !j.radical_contains(f) {
        return Err(Error::NotInRadical);
    }
    if f.is_zero() {
        return Ok(0);
    }
    let bracket = bracket_power(j, level);
    let mut powers = ReducedPowers::new(f, &bracket, budget);
    if powers.is_member(1)? {
        return Ok(0);
    }
    let mut hi = 2u64;
    while !powers.is_member(hi)? {
        hi = hi
            .checked_mul(2)
            .ok_or(Error::ExponentOverflow("nu search exceeded u64".into()))?;
    }
    let mut lo = hi / 2; // f^lo is outside, f^hi is inside
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if powers.is_member(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(lo)
}

/// nu_e^J(f) for e = 1..=max_e in one pass.
///
/// Level 1 is found by search; each later level refines the window
/// [p·nu_e, p·nu_e + p - 1] using the Frobenius twist of the reduced power
/// carried along from the previous level, so the ascent costs at most p
/// reduced multiplications per level.
pub fn nu_chain(f: &Poly, j: &Ideal, max_e: u32) -> Result<Vec<u64>> {
    nu_chain_budgeted(f, j, max_e, DEFAULT_TERM_BUDGET)
}

pub fn nu_chain_budgeted(f: &Poly, j: &Ideal, max_e: u32, budget: u64) -> Result<Vec<u64>> {
    assert!(max_e >= 1, "max_e must be at least 1");
    let ring = f.ring();
    let p = ring.characteristic();
    let level1 = FrobeniusLevel::new(ring.field(), 1)?;
    let nu1 = nu_budgeted(f, j, level1, budget)?;
    if f.is_zero() {
        return Ok(vec![0; max_e as usize]);
    }

    let mut chain = Vec::with_capacity(max_e as usize);
    chain.push(nu1);
    // reduced representative of f^{nu_e} modulo J^[p^e]
    let bracket1 = bracket_power(j, level1);
    let mut carried = ReducedPowers::new(f, &bracket1, budget).reduced_pow(nu1)?;

    for e in 2..=max_e {
        let level = FrobeniusLevel::new(ring.field(), e)?;
        let bracket = bracket_power(j, level);
        let prev_nu = *chain.last().expect("nonempty");
        // f^{p·nu} ≡ carried^p modulo J^[p^e]
        let mut cur = bracket.normal_form(&carried.frobenius(1));
        let mut best: Option<(u64, Poly)> = if cur.is_zero() {
            None
        } else {
            Some((0, cur.clone()))
        };
        for offset in 1..p {
            if cur.is_zero() {
                break;
            }
            cur = bracket.normal_form(&(&cur * f));
            let terms = cur.num_terms() as u64;
            if terms > budget {
                return Err(Error::BudgetExceeded { terms, budget });
            }
            if !cur.is_zero() {
                best = Some((offset, cur.clone()));
            }
        }
        let (offset, witness) = match best {
            Some((o, w)) => (o, w),
            None => {
                // only possible in the degenerate nu = 0 case where f is
                // already inside every bracket power (unit ideal)
                assert_eq!(prev_nu, 0, "Frobenius window lost its lower endpoint");
                chain.push(0);
                carried = Poly::one(ring);
                continue;
            }
        };
        let next_nu = p * prev_nu + offset;
        // nesting against the previous level, in both interval directions
        assert!(next_nu >= p * prev_nu && next_nu < p * prev_nu + p);
        chain.push(next_nu);
        carried = witness;
    }
    Ok(chain)
}

/// The interval estimate [nu/p^e, (nu+1)/p^e] for c^J(f) at e = max_e,
/// with nesting against all smaller levels asserted along the way.
pub fn threshold_interval(f: &Poly, j: &Ideal, max_e: u32) -> Result<ThresholdEstimate> {
    threshold_interval_budgeted(f, j, max_e, DEFAULT_TERM_BUDGET)
}

pub fn threshold_interval_budgeted(
    f: &Poly,
    j: &Ideal,
    max_e: u32,
    budget: u64,
) -> Result<ThresholdEstimate> {
    let chain = nu_chain_budgeted(f, j, max_e, budget)?;
    let p = f.ring().characteristic();
    // nested intervals: lower bounds ascend, upper bounds descend
    for w in chain.windows(2) {
        assert!(
            w[1] >= p * w[0] && w[1] < p * (w[0] + 1),
            "interval nesting violated"
        );
    }
    Ok(estimate_from_nu(
        *chain.last().expect("max_e >= 1"),
        p,
        max_e,
    ))
}

fn estimate_from_nu(nu: u64, p: u64, e: u32) -> ThresholdEstimate {
    // every level up to e was validated by the chain, so p^e fits
    let q = p.checked_pow(e).expect("validated level");
    ThresholdEstimate {
        lower: PRational::new(nu, q),
        upper: PRational::new(nu + 1, q),
        level: e,
        nu,
        degenerate: nu == 0,
    }
}

/// Finite-level scaling law: nu_e^J(f^r) = ⌊nu_e^J(f) / r⌋.
pub fn scaling_check(f: &Poly, j: &Ideal, r: u32, level: FrobeniusLevel) -> Result<bool> {
    assert!(r >= 1, "scaling exponent must be positive");
    let base = nu(f, j, level)?;
    let scaled = nu(&f.pow(r as u64), j, level)?;
    Ok(scaled == base / r as u64)
}

/// Finite-level monotonicity: J ⊆ I forces nu_e^I(f) <= nu_e^J(f).
pub fn monotonicity_check(f: &Poly, j: &Ideal, i: &Ideal, level: FrobeniusLevel) -> Result<bool> {
    if !j.is_contained_in(i) {
        return Err(Error::ContainmentViolated);
    }
    Ok(nu(f, i, level)? <= nu(f, j, level)?)
}

/// The F-pure threshold estimate plus a candidate exact value.
#[derive(Clone, Debug)]
pub struct FptResult {
    pub estimate: ThresholdEstimate,
    /// Heuristic candidate for the exact threshold: nu/(p^e - 1) when that
    /// stable form lands inside the interval (the usual shape when the
    /// splitting pattern repeats), otherwise the smallest-denominator
    /// rational in the interval. Reported as a guess, never asserted.
    pub guess: PRational,
}

/// The F-pure threshold c^m(f) of a hypersurface vanishing at the origin.
pub fn fpt(f: &Poly, max_e: u32) -> Result<FptResult> {
    fpt_budgeted(f, max_e, DEFAULT_TERM_BUDGET)
}

pub fn fpt_budgeted(f: &Poly, max_e: u32, budget: u64) -> Result<FptResult> {
    if f.is_zero() || !f.constant_coeff().is_zero() {
        return Err(Error::NotLocalAtOrigin);
    }
    let ring = f.ring();
    let m = Ideal::maximal(ring);
    let estimate = threshold_interval_budgeted(f, &m, max_e, budget)?;
    let q = ring
        .characteristic()
        .checked_pow(max_e)
        .expect("validated level");
    let stable = PRational::new(estimate.nu, q - 1);
    let guess = if estimate.lower <= stable && stable <= estimate.upper {
        stable
    } else {
        simplest_in(&estimate.lower, &estimate.upper)
    };
    Ok(FptResult { estimate, guess })
}
