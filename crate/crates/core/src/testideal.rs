//! Generalized test ideals tau(f^t) by Cartier-root stabilization, jump
//! profiles on a p-adic grid, and the thresholds-vs-jumping-numbers
//! correspondence checks.

use num::ToPrimitive;

use crate::error::{Error, Result};
use crate::frobenius::{eth_root, FrobeniusLevel};
use crate::groebner::Ideal;
use crate::poly::Poly;
use crate::rational::PRational;
use crate::thresholds::{threshold_interval_budgeted, ThresholdEstimate, DEFAULT_TERM_BUDGET};

/// Knobs for the stabilization loop.
#[derive(Clone, Copy, Debug)]
pub struct StabilizeOpts {
    /// How many consecutive equal ideals beyond the first are required
    /// before the chain is declared stable.
    pub window: u32,
    /// Hard cap on the Frobenius level; non-stabilization by here is a
    /// loud error carrying the partial chain.
    pub max_e: u32,
    /// Term budget for intermediate powers.
    pub budget: u64,
}

impl Default for StabilizeOpts {
    fn default() -> Self {
        StabilizeOpts {
            window: 2,
            max_e: 6,
            budget: DEFAULT_TERM_BUDGET,
        }
    }
}

/// tau(f^t) under the strict-exponent convention: the union over e of
/// J_e = (f^(⌊t·p^e⌋+1))^[1/p^e], an ascending chain.
///
/// The strict exponent ⌊t·p^e⌋+1 realizes the "exponents greater than t"
/// convention, which makes the result right-continuous in t on the p-adic
/// grid.
///
/// When t = a/p^E the chain collapses: writing e = E+i, the level-i root
/// of f·(f^a)^(p^i) is f^a · (f)^[1/p^i], and (f)^[1/p^i] ascends to the
/// unit ideal as soon as p^i exceeds the degree of f, so the union is
/// exactly (f^a)^[1/p^E]. That closed form is used for p-power
/// denominators; it sidesteps the false plateaus a fixed stabilization
/// window can mistake for convergence. Other denominators fall back to
/// the windowed chain, where non-stabilization is a loud error.
pub fn test_ideal(f: &Poly, t: &PRational, opts: StabilizeOpts) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if t.is_negative() {
        return Err(Error::NegativeParameter(t.to_string()));
    }
    let ring = f.ring();
    if let Some((a, grid_e)) = p_power_denominator(t, ring.characteristic()) {
        let power = f.pow_frobenius(a, opts.budget)?;
        let principal = Ideal::new(ring, [power]);
        return Ok(if grid_e == 0 {
            principal
        } else {
            eth_root(&principal, FrobeniusLevel::new(ring.field(), grid_e)?)
        });
    }
    let mut chain: Vec<Ideal> = Vec::new();
    let mut run = 0u32;
    for e in 1..=opts.max_e {
        let level = FrobeniusLevel::new(ring.field(), e)?;
        let exponent = (t.floor_times(level.q()) + 1u32)
            .to_u64()
            .ok_or_else(|| Error::ExponentOverflow(format!("t*p^{} too large", e)))?;
        let power = f.pow_frobenius(exponent, opts.budget)?;
        let next = eth_root(&Ideal::new(ring, [power]), level);
        if let Some(prev) = chain.last() {
            assert!(
                prev.is_contained_in(&next),
                "test-ideal chain failed to ascend at e={}",
                e
            );
            if prev == &next {
                run += 1;
                if run >= opts.window {
                    return Ok(next);
                }
            } else {
                run = 0;
            }
        }
        chain.push(next);
    }
    Err(Error::NonStabilization {
        max_e: opts.max_e,
        chain: chain
            .iter()
            .enumerate()
            .map(|(i, j)| format!("e={}: {}", i + 1, j))
            .collect::<Vec<_>>()
            .join("; "),
    })
}

/// Decompose t as a/p^e when the reduced denominator is a power of p.
fn p_power_denominator(t: &PRational, p: u64) -> Option<(u64, u32)> {
    let mut denom = t.denom().clone();
    let big_p = num::BigInt::from(p);
    let mut e = 0u32;
    while denom > num::BigInt::from(1u8) {
        if (&denom % &big_p) != num::BigInt::from(0u8) {
            return None;
        }
        denom /= &big_p;
        e += 1;
    }
    t.numer().to_u64().map(|a| (a, e))
}

/// The grid profile of tau(f^t) for t = a/p^E, 0 <= a <= t_max*p^E, with
/// detected jump intervals.
#[derive(Clone, Debug)]
pub struct TestIdealProfile {
    pub f: Poly,
    /// Grid resolution: spacing 1/p^level.
    pub level: u32,
    /// (t, tau(f^t)) in increasing t, anti-monotone in the ideal.
    pub entries: Vec<(PRational, Ideal)>,
    /// Half-open intervals (t_i, t_{i+1}] on which the ideal changed.
    pub jumps: Vec<(PRational, PRational)>,
}

impl TestIdealProfile {
    pub fn ideal_at(&self, t: &PRational) -> Option<&Ideal> {
        self.entries.iter().find_map(|(s, j)| (s == t).then_some(j))
    }
}

pub fn jumping_numbers(
    f: &Poly,
    t_max: &PRational,
    grid_level: u32,
    opts: StabilizeOpts,
) -> Result<TestIdealProfile> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if t_max.is_negative() {
        return Err(Error::NegativeParameter(t_max.to_string()));
    }
    let ring = f.ring();
    let q = ring
        .characteristic()
        .checked_pow(grid_level)
        .filter(|&q| q <= u32::MAX as u64)
        .ok_or(Error::LevelOverflow {
            p: ring.characteristic(),
            e: grid_level,
        })?;
    let a_max = t_max
        .floor_times(q)
        .to_u64()
        .ok_or_else(|| Error::ExponentOverflow("t_max*p^E too large".into()))?;

    let mut entries: Vec<(PRational, Ideal)> = Vec::with_capacity(a_max as usize + 1);
    let mut jumps = Vec::new();
    for a in 0..=a_max {
        let t = PRational::new(a, q);
        let tau = test_ideal(f, &t, opts)?;
        if let Some((prev_t, prev_tau)) = entries.last() {
            assert!(
                tau.is_contained_in(prev_tau),
                "test-ideal profile lost anti-monotonicity at t={}",
                t
            );
            if &tau != prev_tau {
                jumps.push((prev_t.clone(), t.clone()));
            }
        } else {
            assert!(tau.is_unit(), "tau(f^0) must be the unit ideal");
        }
        entries.push((t, tau));
    }
    Ok(TestIdealProfile {
        f: f.clone(),
        level: grid_level,
        entries,
        jumps,
    })
}

/// One pass/fail line of the correspondence report.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            label: label.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Results of the three correspondence check groups:
///   (a) tau at the upper threshold estimate lands inside J;
///   (b) the threshold of tau(f^alpha) is bounded by alpha at grid
///       resolution;
///   (c) threshold intervals and detected jump intervals overlap, in both
///       directions.
#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    pub group_a: Vec<CheckOutcome>,
    pub group_b: Vec<CheckOutcome>,
    pub group_c: Vec<CheckOutcome>,
    /// Family members rejected before checking, with the reason.
    pub skipped: Vec<CheckOutcome>,
    /// Whether any overlap check needed the automatic retry at E+1.
    pub retried: bool,
    pub profile: TestIdealProfile,
}

impl CorrespondenceReport {
    pub fn all_passed(&self) -> bool {
        self.group_a
            .iter()
            .chain(&self.group_b)
            .chain(&self.group_c)
            .all(|c| c.passed)
    }

    pub fn counts(&self) -> (usize, usize) {
        let all = self
            .group_a
            .iter()
            .chain(&self.group_b)
            .chain(&self.group_c);
        let total = self.group_a.len() + self.group_b.len() + self.group_c.len();
        (all.filter(|c| c.passed).count(), total)
    }
}

fn overlaps(est: &ThresholdEstimate, lo: &PRational, hi: &PRational) -> bool {
    // closed estimate interval against the half-open jump interval (lo, hi]
    est.lower <= *hi && est.upper > *lo
}

pub fn verify_correspondence(
    f: &Poly,
    family: &[Ideal],
    t_max: &PRational,
    grid_level: u32,
    opts: StabilizeOpts,
) -> Result<CorrespondenceReport> {
    let profile = jumping_numbers(f, t_max, grid_level, opts)?;
    let p = f.ring().characteristic();
    let q = p.checked_pow(grid_level).expect("validated by profile");
    let grid_step = PRational::new(1, q);

    let mut group_a = Vec::new();
    let mut group_b = Vec::new();
    let mut group_c = Vec::new();
    let mut skipped = Vec::new();
    let mut retried = false;

    // estimates for the family, used by groups (a) and (c)
    let mut family_estimates: Vec<(usize, ThresholdEstimate)> = Vec::new();
    for (idx, j) in family.iter().enumerate() {
        let label = format!("J#{}={}", idx, j);
        if !j.radical_contains(f) {
            skipped.push(CheckOutcome::new(
                label,
                false,
                "precondition failed: f is not in the radical of J (Rabinowitsch witness nonunit)",
            ));
            continue;
        }
        if j.is_unit() {
            skipped.push(CheckOutcome::new(
                label.clone(),
                true,
                "degenerate member: c^J(f)=0 for the unit ideal, excluded from group (c)",
            ));
        }
        let est = threshold_interval_budgeted(f, j, grid_level, opts.budget)?;
        let tau_upper = test_ideal(f, &est.upper, opts)?;
        let pass = tau_upper.is_contained_in(j);
        group_a.push(CheckOutcome::new(
            format!("(a) {}", label),
            pass,
            format!(
                "estimate [{}, {}], tau(f^{}) = {} {} J",
                est.lower,
                est.upper,
                est.upper,
                tau_upper,
                if pass { "⊆" } else { "⊄" }
            ),
        ));
        if !j.is_unit() {
            family_estimates.push((idx, est));
        }
    }

    // (b): at every grid point the threshold of tau(f^alpha) stays below
    // alpha at grid resolution
    for (t, tau) in &profile.entries {
        let est = threshold_interval_budgeted(f, tau, grid_level, opts.budget)?;
        let bound = t + &grid_step;
        let pass = est.upper <= bound;
        group_b.push(CheckOutcome::new(
            format!("(b) alpha={}", t),
            pass,
            format!("upper {} vs alpha+1/p^E = {}", est.upper, bound),
        ));
    }

    // (c) forward: each detected jump interval is met by the threshold
    // interval of its own test ideal
    for (lo, hi) in &profile.jumps {
        let tau = profile.ideal_at(hi).expect("jump endpoint on grid").clone();
        let mut est = threshold_interval_budgeted(f, &tau, grid_level, opts.budget)?;
        let mut pass = overlaps(&est, lo, hi);
        if !pass {
            retried = true;
            est = threshold_interval_budgeted(f, &tau, grid_level + 1, opts.budget)?;
            pass = overlaps(&est, lo, hi);
        }
        group_c.push(CheckOutcome::new(
            format!("(c) jump ({}, {}]", lo, hi),
            pass,
            format!(
                "threshold of tau = {} estimated in [{}, {}]{}",
                tau,
                est.lower,
                est.upper,
                if retried { " (after E+1 retry)" } else { "" }
            ),
        ));
    }

    // (c) converse: every family threshold interval meets a jump interval
    // or lies beyond the scanned range
    for (idx, est) in &family_estimates {
        let hit = profile.jumps.iter().any(|(lo, hi)| overlaps(est, lo, hi));
        let beyond = est.upper > *t_max;
        let pass = hit || beyond;
        group_c.push(CheckOutcome::new(
            format!("(c*) J#{}", idx),
            pass,
            if hit {
                format!(
                    "interval [{}, {}] meets a detected jump",
                    est.lower, est.upper
                )
            } else if beyond {
                format!(
                    "interval [{}, {}] lies beyond t_max={}",
                    est.lower, est.upper, t_max
                )
            } else {
                format!(
                    "interval [{}, {}] meets no detected jump within t_max={}",
                    est.lower, est.upper, t_max
                )
            },
        ));
    }

    Ok(CorrespondenceReport {
        group_a,
        group_b,
        group_c,
        skipped,
        retried,
        profile,
    })
}
