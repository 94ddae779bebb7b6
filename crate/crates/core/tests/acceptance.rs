//! Acceptance suite: each test prints one PASS line for its criterion.
//!
//! Expected values come from independent oracles implemented here on a raw
//! term representation (exponent vectors + residues), never through the
//! library's polynomial or ideal paths.
//!
//! Run with `cargo test -p fthresh-core --test acceptance -- --nocapture`.

use std::time::Instant;

use fthresh_core::{
    bracket_power, eth_root, fedder_fpure, jumping_numbers, nu, nu_chain, parse_poly,
    scaling_check, splitting_test, test_ideal, verify_correspondence, FrobeniusLevel, Ideal,
    Monomial, PRational, Poly, PrimeField, Ring, StabilizeOpts,
};

mod oracle {
    use std::collections::BTreeMap;

    /// Raw sparse polynomial: exponent vector -> residue in [0, p).
    pub type RawPoly = BTreeMap<Vec<u32>, u64>;

    pub fn from_poly(f: &fthresh_core::Poly) -> RawPoly {
        let mut out = RawPoly::new();
        for (m, c) in f.terms() {
            out.insert(m.exponents().to_vec(), c.value());
        }
        out
    }

    /// Schoolbook product with arithmetic done directly on residues.
    pub fn mul(a: &RawPoly, b: &RawPoly, p: u64) -> RawPoly {
        let mut out = RawPoly::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let entry = out.entry(m).or_insert(0);
                *entry = (*entry + ca * cb) % p;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    fn divisible(m: &[u32], gen: &[u32]) -> bool {
        m.iter().zip(gen).all(|(a, g)| a >= g)
    }

    /// Membership of a nonzero raw polynomial in a monomial ideal: every
    /// term must be divisible by some generator.
    pub fn member_monomial(f: &RawPoly, gens: &[Vec<u32>]) -> bool {
        !f.is_empty() && f.keys().all(|m| gens.iter().any(|g| divisible(m, g)))
    }

    /// nu by naive repeated multiplication: the largest n with f^n outside
    /// the monomial ideal generated by `j_gens` raised to the q-th power.
    pub fn nu_monomial_bracket(f: &RawPoly, j_gens: &[Vec<u32>], p: u64, e: u32) -> u64 {
        let q = p.pow(e) as u32;
        let bracket: Vec<Vec<u32>> = j_gens
            .iter()
            .map(|g| g.iter().map(|&x| x * q).collect())
            .collect();
        let mut power = f.clone();
        let mut n = 1u64;
        loop {
            if member_monomial(&power, &bracket) {
                return n - 1;
            }
            power = mul(&power, f, p);
            n += 1;
            assert!(n < 100_000, "oracle runaway: f is not in the radical");
        }
    }

    /// Componentwise ⌊a/q⌋, the closed-form p^e-th root of a monomial.
    pub fn root_exponents(a: &[u32], q: u64) -> Vec<u32> {
        a.iter().map(|&x| (x as u64 / q) as u32).collect()
    }
}

fn ring(p: u64, vars: &[&str]) -> Ring {
    Ring::new(
        PrimeField::new(p).unwrap(),
        vars.iter().map(|s| s.to_string()).collect(),
    )
    .unwrap()
}

fn poly(r: &Ring, s: &str) -> Poly {
    parse_poly(s, r).unwrap()
}

fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|s| poly(r, s)))
}

fn level(r: &Ring, e: u32) -> FrobeniusLevel {
    FrobeniusLevel::new(r.field(), e).unwrap()
}

const FAMILY_F: [&str; 6] = ["x", "x*y", "x+y", "x^2+y^3", "x^3+y^3", "x^2*y+x*y^2"];
const FAMILY_P: [u64; 4] = [2, 3, 5, 7];

/// The J family as monomial generator exponent vectors (for the oracle)
/// and generator strings (for the library).
const FAMILY_J: [(&str, &[&str]); 4] = [
    ("(x,y)", &["x", "y"]),
    ("(x,y)^2", &["x^2", "x*y", "y^2"]),
    ("(x)", &["x"]),
    ("(x^2)", &["x^2"]),
];

fn j_exponents(gens: &[&str], r: &Ring) -> Vec<Vec<u32>> {
    gens.iter()
        .map(|g| {
            let p = poly(r, g);
            assert!(p.is_monomial());
            p.leading().unwrap().0.exponents().to_vec()
        })
        .collect()
}

#[test]
fn c01_nu_oracle_equivalence() {
    let start = Instant::now();
    let mut checked = 0usize;
    for &p in &FAMILY_P {
        let r = ring(p, &["x", "y"]);
        for f_text in FAMILY_F {
            let f = poly(&r, f_text);
            let f_raw = oracle::from_poly(&f);
            for (j_name, j_gens) in FAMILY_J {
                let j = ideal(&r, j_gens);
                if !j.radical_contains(&f) {
                    continue;
                }
                for e in 1..=2u32 {
                    let got = nu(&f, &j, level(&r, e)).unwrap();
                    let want = oracle::nu_monomial_bracket(&f_raw, &j_exponents(j_gens, &r), p, e);
                    assert_eq!(
                        got, want,
                        "nu mismatch: f={} J={} p={} e={}",
                        f_text, j_name, p, e
                    );
                    checked += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "criterion 1 exceeded 60 s: {:?}",
        elapsed
    );
    println!(
        "C1 nu-oracle equivalence: PASS ({} cases, {:.2?})",
        checked, elapsed
    );
}

#[test]
fn c02_derived_anchors() {
    let r7 = ring(7, &["x", "y"]);
    assert_eq!(
        nu(&poly(&r7, "x^2+y^3"), &Ideal::maximal(&r7), level(&r7, 1)).unwrap(),
        5
    );
    assert!(!fedder_fpure(&poly(&r7, "x^2+y^3")).unwrap());
    for &p in &FAMILY_P {
        let r = ring(p, &["x", "y"]);
        assert!(
            fedder_fpure(&poly(&r, "x*y")).unwrap(),
            "xy F-pure at p={}",
            p
        );
    }
    println!("C2 derived anchors: PASS");
}

#[test]
fn c03_interval_nesting() {
    let start = Instant::now();
    let mut checked = 0usize;
    for &p in &FAMILY_P {
        let r = ring(p, &["x", "y"]);
        for f_text in FAMILY_F {
            let f = poly(&r, f_text);
            for (j_name, j_gens) in FAMILY_J {
                let j = ideal(&r, j_gens);
                if !j.radical_contains(&f) {
                    continue;
                }
                let chain = nu_chain(&f, &j, 4).unwrap();
                for (idx, w) in chain.windows(2).enumerate() {
                    let (prev, next) = (w[0], w[1]);
                    let e = idx as u32 + 1;
                    // nu_e/p^e non-decreasing <=> p*nu_e <= nu_{e+1}
                    assert!(
                        next >= p * prev,
                        "lower bound dropped: f={} J={} p={} e={}",
                        f_text,
                        j_name,
                        p,
                        e
                    );
                    // (nu_e+1)/p^e non-increasing <=> nu_{e+1}+1 <= p*(nu_e+1)
                    assert!(
                        next < p * (prev + 1),
                        "upper bound rose: f={} J={} p={} e={}",
                        f_text,
                        j_name,
                        p,
                        e
                    );
                    assert!(next - p * prev < p);
                    checked += 1;
                }
            }
        }
    }
    println!(
        "C3 interval nesting: PASS ({} steps, {:.2?})",
        checked,
        start.elapsed()
    );
}

#[test]
fn c04_scaling_law() {
    let mut checked = 0usize;
    for &p in &FAMILY_P {
        let r = ring(p, &["x", "y"]);
        for f_text in FAMILY_F {
            let f = poly(&r, f_text);
            for (j_name, j_gens) in FAMILY_J {
                let j = ideal(&r, j_gens);
                if !j.radical_contains(&f) {
                    continue;
                }
                for e in 1..=2u32 {
                    for rr in [2u32, 3] {
                        assert!(
                            scaling_check(&f, &j, rr, level(&r, e)).unwrap(),
                            "scaling failed: f={} J={} p={} e={} r={}",
                            f_text,
                            j_name,
                            p,
                            e,
                            rr
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    println!("C4 scaling law: PASS ({} cases)", checked);
}

#[test]
fn c05_monotonicity() {
    let mut checked = 0usize;
    for &p in &FAMILY_P {
        let r = ring(p, &["x", "y"]);
        let ideals: Vec<(&str, Ideal)> = FAMILY_J
            .iter()
            .map(|(name, gens)| (*name, ideal(&r, gens)))
            .collect();
        for f_text in FAMILY_F {
            let f = poly(&r, f_text);
            for (j_name, j) in &ideals {
                if !j.radical_contains(&f) {
                    continue;
                }
                for (i_name, i) in &ideals {
                    if !j.is_contained_in(i) {
                        continue;
                    }
                    for e in 1..=2u32 {
                        let ok = fthresh_core::monotonicity_check(&f, j, i, level(&r, e)).unwrap();
                        assert!(
                            ok,
                            "monotonicity failed: f={} J={} I={} p={} e={}",
                            f_text, j_name, i_name, p, e
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    println!("C5 monotonicity: PASS ({} cases)", checked);
}

#[test]
fn c06_root_calculus() {
    use rand::{Rng, SeedableRng};
    let start = Instant::now();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);

    for trial in 0..500usize {
        let p = [2u64, 3, 5][trial % 3];
        let r = ring(p, &["x", "y"]);
        let e = rng.gen_range(1..=3u32);
        let lv = level(&r, e);
        let q = lv.q();

        let rand_gen = |rng: &mut rand_chacha::ChaCha8Rng| -> Poly {
            let a = rng.gen_range(0..(3 * q) as u32 + 2);
            let b = rng.gen_range(0..(3 * q) as u32 + 2);
            let lead = Poly::from_terms(&r, [(Monomial::new(vec![a, b]), 1)]);
            if rng.gen_bool(0.5) {
                // binomial
                let c = rng.gen_range(0..(3 * q) as u32 + 2);
                let d = rng.gen_range(0..(3 * q) as u32 + 2);
                let coeff = rng.gen_range(1..p) as i64;
                &lead + &Poly::from_terms(&r, [(Monomial::new(vec![c, d]), coeff)])
            } else {
                lead
            }
        };

        let n_gens = rng.gen_range(1..=3usize);
        let i = Ideal::new(&r, (0..n_gens).map(|_| rand_gen(&mut rng)));
        let j = Ideal::new(&r, [rand_gen(&mut rng)]);

        // Galois connection
        let root = eth_root(&i, lv);
        assert!(
            i.is_contained_in(&bracket_power(&root, lv)),
            "Galois failed at trial {}",
            trial
        );
        // composition within the level budget
        let e1 = rng.gen_range(1..e.max(2));
        let e2 = e - e1.min(e - 1);
        if e1 + e2 <= 3 && e2 >= 1 {
            let l1 = level(&r, e1);
            let l2 = level(&r, e2);
            let l12 = level(&r, e1 + e2);
            assert_eq!(
                eth_root(&eth_root(&i, l1), l2),
                eth_root(&i, l12),
                "composition failed at trial {}",
                trial
            );
        }
        // additivity
        assert_eq!(
            eth_root(&i.sum(&j), lv),
            eth_root(&i, lv).sum(&eth_root(&j, lv)),
            "additivity failed at trial {}",
            trial
        );
        // monomial closed form against the independent exponent arithmetic
        let a = rng.gen_range(0..(3 * q) as u32 + 2);
        let b = rng.gen_range(0..(3 * q) as u32 + 2);
        let mono_ideal = Ideal::new(&r, [Poly::from_terms(&r, [(Monomial::new(vec![a, b]), 1)])]);
        let expect = Ideal::new(
            &r,
            [Poly::from_terms(
                &r,
                [(Monomial::new(oracle::root_exponents(&[a, b], q)), 1)],
            )],
        );
        assert_eq!(
            eth_root(&mono_ideal, lv),
            expect,
            "closed form failed at trial {}",
            trial
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 120,
        "criterion 6 exceeded 120 s: {:?}",
        elapsed
    );
    println!("C6 root calculus: PASS (500 trials, {:.2?})", elapsed);
}

#[test]
fn c07_testideal_grid_structure() {
    let start = Instant::now();
    let opts = StabilizeOpts::default();
    let t_max = PRational::integer(2);

    for &p in &[2u64, 3, 5] {
        // f = x in one variable: tau(f^t) = (x^⌊t⌋) on the grid
        let r1 = ring(p, &["x"]);
        let x = poly(&r1, "x");
        let profile = jumping_numbers(&x, &t_max, 3, opts).unwrap();
        let q = p.pow(3);
        for (t, tau) in &profile.entries {
            let k = t.floor_times(1).to_string().parse::<u64>().unwrap();
            let expect = if k == 0 {
                Ideal::unit(&r1)
            } else {
                Ideal::new(&r1, [x.pow(k)])
            };
            assert_eq!(tau, &expect, "f=x p={} t={}", p, t);
        }
        let expected_jumps: Vec<(PRational, PRational)> = [1u64, 2]
            .iter()
            .map(|&k| (PRational::new(k * q - 1, q), PRational::integer(k)))
            .collect();
        assert_eq!(profile.jumps, expected_jumps, "f=x p={}", p);

        // f = xy: tau(f^t) = (x^⌊t⌋ y^⌊t⌋) on the grid
        let r2 = ring(p, &["x", "y"]);
        let xy = poly(&r2, "x*y");
        let profile = jumping_numbers(&xy, &t_max, 3, opts).unwrap();
        for (t, tau) in &profile.entries {
            let k = t.floor_times(1).to_string().parse::<u64>().unwrap();
            let expect = if k == 0 {
                Ideal::unit(&r2)
            } else {
                Ideal::new(&r2, [xy.pow(k)])
            };
            assert_eq!(tau, &expect, "f=xy p={} t={}", p, t);
        }
        assert_eq!(profile.jumps, expected_jumps, "f=xy p={}", p);
    }
    println!(
        "C7 test-ideal grid structure: PASS ({:.2?})",
        start.elapsed()
    );
}

#[test]
fn c08_correspondence_harness() {
    let start = Instant::now();
    let opts = StabilizeOpts::default();
    let r = ring(7, &["x", "y"]);
    let t_max = PRational::one();

    for f_text in ["x", "x*y", "x^2+y^3"] {
        let f = poly(&r, f_text);
        // family: m, m^2, plus the tau ideals at the detected jumps
        let m = Ideal::maximal(&r);
        let mut family = vec![m.clone(), m.power(2)];
        let profile = jumping_numbers(&f, &t_max, 2, opts).unwrap();
        for (_, hi) in &profile.jumps {
            family.push(profile.ideal_at(hi).unwrap().clone());
        }
        let report = verify_correspondence(&f, &family, &t_max, 2, opts).unwrap();
        let (passed, total) = report.counts();
        assert!(
            report.all_passed(),
            "correspondence failed for f={}: {}/{} checks, report {:#?}",
            f_text,
            passed,
            total,
            report.group_a
        );
        if f_text != "x^2+y^3" {
            assert!(
                !report.retried,
                "E+1 retry should be unnecessary for f={}",
                f_text
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 300,
        "criterion 8 exceeded 5 min: {:?}",
        elapsed
    );
    println!("C8 correspondence harness: PASS ({:.2?})", elapsed);
}

#[test]
fn c09_splitting_threshold_link() {
    let mut checked = 0usize;
    for &p in &FAMILY_P {
        let r = ring(p, &["x", "y"]);
        let m = Ideal::maximal(&r);
        for f_text in FAMILY_F {
            let f = poly(&r, f_text);
            for e in 1..=2u32 {
                let lv = level(&r, e);
                let bound = nu(&f, &m, lv).unwrap();
                for a in 0..=bound + 2 {
                    let split = splitting_test(&f, a, lv).unwrap();
                    assert_eq!(
                        split,
                        a <= bound,
                        "splitting/threshold link broken: f={} p={} e={} a={}",
                        f_text,
                        p,
                        e,
                        a
                    );
                    checked += 1;
                }
            }
        }
    }
    println!("C9 splitting/threshold link: PASS ({} cases)", checked);
}

/// Not a numbered criterion: spot-check that the stabilized test ideal at
/// the cusp's level-1 grid matches the chain example.
#[test]
fn cusp_testideal_spot_check() {
    let r = ring(7, &["x", "y"]);
    let f = poly(&r, "x^2+y^3");
    let opts = StabilizeOpts::default();
    let lo = test_ideal(&f, &PRational::new(5, 7), opts).unwrap();
    let hi = test_ideal(&f, &PRational::new(6, 7), opts).unwrap();
    assert!(hi.is_contained_in(&lo) && lo != hi);
}
