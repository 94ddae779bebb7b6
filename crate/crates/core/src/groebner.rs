//! Ideal arithmetic and membership via reduced Groebner bases.
//!
//! One fixed order (grevlex) everywhere: the invariants computed downstream
//! are order-independent and a single order keeps the basis cache sound.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::sync::OnceLock;

use crate::monomial::Monomial;
use crate::poly::{Poly, Ring};

/// A finitely generated ideal with a lazily computed reduced Groebner
/// basis. The reduced basis (monic, auto-reduced, sorted by leading
/// monomial) is unique, so ideal equality is basis equality.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl Ideal {
    /// Build from generators; zero generators are dropped.
    pub fn new(ring: &Ring, generators: impl IntoIterator<Item = Poly>) -> Ideal {
        let gens: Vec<Poly> = generators
            .into_iter()
            .inspect(|g| assert_eq!(g.ring(), ring, "generator from a different ring"))
            .filter(|g| !g.is_zero())
            .collect();
        Ideal {
            ring: ring.clone(),
            generators: gens,
            gb: OnceLock::new(),
        }
    }

    /// The homogeneous maximal ideal (x_1, ..., x_n).
    pub fn maximal(ring: &Ring) -> Ideal {
        Ideal::new(ring, (0..ring.num_vars()).map(|i| Poly::variable(ring, i)))
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, [Poly::one(ring)])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.groebner_basis();
        gb.len() == 1 && gb[0].leading().map(|(m, _)| m.is_one()).unwrap_or(false)
    }

    /// All generators are single terms.
    pub fn is_monomial_ideal(&self) -> bool {
        self.generators.iter().all(Poly::is_monomial)
    }

    /// The unique reduced grevlex Groebner basis, cached after first use.
    pub fn groebner_basis(&self) -> &[Poly] {
        self.gb.get_or_init(|| {
            if self.is_monomial_ideal() {
                minimal_monomial_basis(&self.ring, &self.generators)
            } else {
                buchberger(&self.ring, &self.generators)
            }
        })
    }

    /// The unique remainder of f modulo the reduced basis; zero iff f lies
    /// in the ideal.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        assert_eq!(f.ring(), &self.ring, "ring mismatch");
        if self.is_monomial_ideal() {
            // reduction modulo a monomial ideal just deletes divisible terms
            let gens = self.monomial_basis();
            return f.filter_terms(|m| !gens.iter().any(|g| g.divides(m)));
        }
        reduce_full(f, self.groebner_basis())
    }

    pub fn contains(&self, f: &Poly) -> bool {
        assert_eq!(f.ring(), &self.ring, "ring mismatch");
        if f.is_zero() {
            return true;
        }
        // membership in a monomial ideal is plain divisibility
        if self.is_monomial_ideal() {
            let gens = self.monomial_basis();
            return f.terms().all(|(m, _)| gens.iter().any(|g| g.divides(m)));
        }
        self.normal_form(f).is_zero()
    }

    /// self ⊆ other.
    pub fn is_contained_in(&self, other: &Ideal) -> bool {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        self.generators.iter().all(|g| other.contains(g))
    }

    /// Radical membership via the Rabinowitsch trick: f ∈ √I iff
    /// 1 ∈ (I, 1 - w·f) in one extra variable.
    pub fn radical_contains(&self, f: &Poly) -> bool {
        assert_eq!(f.ring(), &self.ring, "ring mismatch");
        if f.is_zero() {
            return true;
        }
        if self.contains(f) {
            return true;
        }
        let mut fresh = String::from("t");
        while self.ring.vars().iter().any(|v| v == &fresh) {
            fresh.push('_');
        }
        let ext = self.ring.extend(fresh);
        let w = Poly::variable(&ext, ext.num_vars() - 1);
        let one = Poly::one(&ext);
        let witness = &one - &(&w * &f.lift(&ext));
        let mut gens: Vec<Poly> = self.generators.iter().map(|g| g.lift(&ext)).collect();
        gens.push(witness);
        Ideal::new(&ext, gens).is_unit()
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        Ideal::new(
            &self.ring,
            self.generators.iter().chain(&other.generators).cloned(),
        )
    }

    /// Generated by all pairwise products of generators.
    pub fn product(&self, other: &Ideal) -> Ideal {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn power(&self, r: u32) -> Ideal {
        assert!(r >= 1, "ideal power requires r >= 1");
        let mut acc = self.clone();
        for _ in 1..r {
            acc = acc.product(self);
        }
        acc
    }

    /// Minimal monomial generators; only valid for monomial ideals.
    fn monomial_basis(&self) -> Vec<Monomial> {
        self.groebner_basis()
            .iter()
            .map(|g| g.leading().expect("nonzero basis element").0.clone())
            .collect()
    }
}

impl PartialEq for Ideal {
    /// Equality of ideals (not generator lists): reduced bases coincide.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.groebner_basis() == other.groebner_basis()
    }
}

impl Eq for Ideal {}

impl fmt::Display for Ideal {
    /// Canonical form: the reduced basis, e.g. `(y, x^2)`; `(0)` when zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gb = self.groebner_basis();
        if gb.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = gb.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Full reduction: the remainder has no term divisible by any basis leading
/// monomial. With a reduced basis the result is the unique normal form.
fn reduce_full(f: &Poly, basis: &[Poly]) -> Poly {
    let ring = f.ring();
    if basis.is_empty() {
        return f.clone();
    }
    // split each basis element into its leading data and tail so a
    // cancellation never touches the leading term twice
    let leads: Vec<(Monomial, crate::field::FieldElement, Poly)> = basis
        .iter()
        .map(|g| {
            let (lm, lc) = g.leading().expect("nonzero basis element");
            let lm = lm.clone();
            let tail = g.filter_terms(|m| m != &lm);
            (lm, lc, tail)
        })
        .collect();
    let mut rem: Vec<(Monomial, i64)> = Vec::new();
    let mut h = f.clone();
    'outer: while let Some((lm, lc)) = h.pop_leading() {
        for (glm, glc, tail) in &leads {
            if glm.divides(&lm) {
                let quot = lm.try_div(glm).expect("divisibility checked");
                // the leading terms cancel exactly; subtract only the tail
                h.sub_assign_mul_term(tail, &quot, lc.mul(&glc.inv()));
                continue 'outer;
            }
        }
        rem.push((lm, lc.value() as i64));
    }
    Poly::from_terms(ring, rem)
}

/// Reduced basis of a monomial ideal: divisibility-minimal monic monomials,
/// sorted ascending. This is the Buchberger fast path.
fn minimal_monomial_basis(ring: &Ring, gens: &[Poly]) -> Vec<Poly> {
    let mut monomials: Vec<Monomial> = gens
        .iter()
        .map(|g| g.leading().expect("nonzero generator").0.clone())
        .collect();
    monomials.sort();
    monomials.dedup();
    let mut minimal: Vec<Monomial> = Vec::new();
    for m in monomials {
        if !minimal.iter().any(|g| g.divides(&m)) {
            minimal.push(m);
        }
    }
    minimal
        .into_iter()
        .map(|m| Poly::from_terms(ring, [(m, 1)]))
        .collect()
}

/// Buchberger with the normal pair-selection strategy (ascending lcm degree,
/// ties by pair index) and the coprime-lcm criterion, followed by
/// minimalization and autoreduction to the unique reduced basis.
fn buchberger(ring: &Ring, gens: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = gens.iter().map(Poly::monic).collect();
    if basis.is_empty() {
        return Vec::new();
    }
    if basis
        .iter()
        .any(|g| g.leading().map(|(m, _)| m.is_one()).unwrap_or(false))
    {
        return vec![Poly::one(ring)];
    }

    let mut queue: BinaryHeap<Reverse<(u64, usize, usize)>> = BinaryHeap::new();
    let push_pairs =
        |queue: &mut BinaryHeap<Reverse<(u64, usize, usize)>>, basis: &[Poly], j: usize| {
            let lm_j = basis[j].leading().expect("nonzero").0.clone();
            for (i, g) in basis.iter().enumerate().take(j) {
                let lm_i = g.leading().expect("nonzero").0;
                let deg = lm_i.lcm(&lm_j).total_degree();
                queue.push(Reverse((deg, i, j)));
            }
        };
    for j in 1..basis.len() {
        push_pairs(&mut queue, &basis, j);
    }

    while let Some(Reverse((_, i, j))) = queue.pop() {
        let (lm_i, lm_j) = (
            basis[i].leading().expect("nonzero").0.clone(),
            basis[j].leading().expect("nonzero").0.clone(),
        );
        if lm_i.is_coprime_to(&lm_j) {
            continue; // Buchberger's first criterion
        }
        let lcm = lm_i.lcm(&lm_j);
        let ui = lcm.try_div(&lm_i).expect("lcm divisible");
        let uj = lcm.try_div(&lm_j).expect("lcm divisible");
        let one = ring.field().one();
        let s = &basis[i].mul_term(&ui, one) - &basis[j].mul_term(&uj, one);
        let r = reduce_full(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if r.leading().map(|(m, _)| m.is_one()).unwrap_or(false) {
            return vec![Poly::one(ring)]; // unit ideal short-circuit
        }
        basis.push(r.monic());
        push_pairs(&mut queue, &basis, basis.len() - 1);
    }

    // minimalize: drop elements whose leading monomial another one divides
    let mut keep = vec![true; basis.len()];
    for a in 0..basis.len() {
        if !keep[a] {
            continue;
        }
        let lm_a = basis[a].leading().expect("nonzero").0.clone();
        for b in 0..basis.len() {
            if a == b || !keep[b] {
                continue;
            }
            let lm_b = basis[b].leading().expect("nonzero").0;
            if lm_b.divides(&lm_a) && (lm_b != &lm_a || b < a) {
                keep[a] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<Poly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    // autoreduce: replace each element by its normal form modulo the others
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<Poly> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _g)| j != i)
                .map(|(_j, g)| g.clone())
                .collect();
            let reduced = reduce_full(&minimal[i], &others).monic();
            if reduced != minimal[i] {
                minimal[i] = reduced;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    minimal.retain(|g| !g.is_zero());
    minimal.sort_by(|a, b| {
        a.leading()
            .expect("nonzero")
            .0
            .cmp(b.leading().expect("nonzero").0)
    });
    minimal
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::parse::parse_poly;

    pub(crate) fn ring(p: u64, vars: &[&str]) -> Ring {
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

    #[test]
    fn reduced_basis_examples() {
        let r = ring(7, &["x", "y"]);
        // hand S-polynomial reduction: S(x^2 + y^3, y) reduces to x^2
        let i = ideal(&r, &["x^2+y^3", "y"]);
        let gb: Vec<String> = i.groebner_basis().iter().map(|g| g.to_string()).collect();
        assert_eq!(gb, vec!["y", "x^2"]);

        let i = ideal(&r, &["x"]);
        assert_eq!(i.groebner_basis().len(), 1);
        assert_eq!(i.groebner_basis()[0].to_string(), "x");

        let i = ideal(&r, &["x", "1+x"]);
        assert!(i.is_unit());
        assert_eq!(i.to_string(), "(1)");
    }

    #[test]
    fn normal_forms() {
        let r = ring(7, &["x", "y"]);
        let i = ideal(&r, &["x^2+y^3"]);
        // y^3 = (x^2 + y^3) - x^2, so nf(y^3) = -x^2 = 6x^2
        assert_eq!(i.normal_form(&poly(&r, "y^3")).to_string(), "6*x^2");
        let j = ideal(&r, &["y"]);
        assert_eq!(j.normal_form(&poly(&r, "x")).to_string(), "x");
        let k = ideal(&r, &["x^2+y^3", "y"]);
        assert!(k.normal_form(&poly(&r, "x^2")).is_zero());
    }

    #[test]
    fn membership() {
        let r = ring(7, &["x", "y"]);
        assert!(ideal(&r, &["x", "y"]).contains(&poly(&r, "y")));
        assert!(!ideal(&r, &["x^7", "y^7"]).contains(&poly(&r, "x^6*y^6")));
        // every term of (x^2+y^3)^6 needs 2k <= 6 and 18-3k <= 6 to escape,
        // which is impossible
        let f = poly(&r, "(x^2+y^3)^6");
        assert!(ideal(&r, &["x^7", "y^7"]).contains(&f));
    }

    #[test]
    fn containment_and_equality() {
        let r = ring(5, &["x", "y"]);
        assert!(ideal(&r, &["x"]).is_contained_in(&ideal(&r, &["x", "y"])));
        assert!(!ideal(&r, &["x", "y"]).is_contained_in(&ideal(&r, &["x"])));
        let sq = Ideal::maximal(&r).power(2);
        assert_eq!(ideal(&r, &["x^2", "x*y", "y^2"]), sq);
    }

    #[test]
    fn radical_membership() {
        let r = ring(5, &["x", "y"]);
        assert!(ideal(&r, &["x^2"]).radical_contains(&poly(&r, "x")));
        assert!(!ideal(&r, &["y"]).radical_contains(&poly(&r, "x")));
        // (x+y)^3 ∈ (x^2, y^2)
        assert!(ideal(&r, &["x^2", "y^2"]).radical_contains(&poly(&r, "x+y")));
    }

    #[test]
    fn sums_products_powers() {
        let r = ring(5, &["x", "y"]);
        assert_eq!(
            ideal(&r, &["x"]).sum(&ideal(&r, &["y"])),
            ideal(&r, &["x", "y"])
        );
        assert_eq!(
            ideal(&r, &["x"]).product(&ideal(&r, &["y"])),
            ideal(&r, &["x*y"])
        );
        assert_eq!(
            ideal(&r, &["x", "y"]).power(2),
            ideal(&r, &["x^2", "x*y", "y^2"])
        );
    }

    #[test]
    fn spolynomials_of_basis_reduce_to_zero() {
        let r = ring(7, &["x", "y", "z"]);
        for gens in [
            vec!["x^2+y^3", "x*y+z^2", "z^3+x"],
            vec!["x*y-z^2", "y^2-x*z"],
            vec!["x^3+y+1", "y^2+z", "x*z+y"],
        ] {
            let i = ideal(&r, &gens);
            let gb = i.groebner_basis().to_vec();
            for a in 0..gb.len() {
                for b in (a + 1)..gb.len() {
                    let (lma, _) = gb[a].leading().unwrap();
                    let (lmb, _) = gb[b].leading().unwrap();
                    let lcm = lma.lcm(lmb);
                    let ua = lcm.try_div(lma).unwrap();
                    let ub = lcm.try_div(lmb).unwrap();
                    let one = r.field().one();
                    let s = &gb[a].mul_term(&ua, one) - &gb[b].mul_term(&ub, one);
                    assert!(reduce_full(&s, &gb).is_zero());
                }
            }
        }
    }

    #[test]
    fn reduced_basis_independent_of_generator_order() {
        let r = ring(7, &["x", "y", "z"]);
        let gens = ["x^2+y^3", "x*y+z^2", "z^3+x", "y^2+2*z"];
        let base = ideal(&r, &gens).groebner_basis().to_vec();
        // a few deterministic shuffles
        let perms: Vec<Vec<usize>> = vec![vec![3, 1, 0, 2], vec![2, 3, 1, 0], vec![1, 0, 3, 2]];
        for perm in perms {
            let shuffled: Vec<&str> = perm.iter().map(|&i| gens[i]).collect();
            assert_eq!(ideal(&r, &shuffled).groebner_basis(), &base[..]);
        }
    }

    #[test]
    fn monomial_membership_matches_divisibility_oracle() {
        use proptest::prelude::*;
        let r = ring(5, &["x", "y"]);
        let arb_mono = (0u32..6, 0u32..6).prop_map(|(a, b)| Monomial::new(vec![a, b]));
        let arb_gens = proptest::collection::vec(arb_mono.clone(), 1..4);
        proptest!(|(gens in arb_gens, probe in proptest::collection::vec((0u32..8, 0u32..8), 1..4))| {
            let i = Ideal::new(&r, gens.iter().map(|m| Poly::from_terms(&r, [(m.clone(), 1)])));
            let f = Poly::from_terms(
                &r,
                probe.iter().map(|&(a, b)| (Monomial::new(vec![a, b]), 1)),
            );
            let oracle = !f.is_zero()
                && f.terms().all(|(m, _)| gens.iter().any(|g| g.divides(m)));
            if !f.is_zero() {
                prop_assert_eq!(i.contains(&f), oracle);
            }
        });
    }

    #[test]
    fn radical_implied_by_low_power_membership() {
        use proptest::prelude::*;
        let r = ring(3, &["x", "y"]);
        let arb_mono = (0u32..3, 0u32..3).prop_map(|(a, b)| Monomial::new(vec![a, b]));
        proptest!(|(gens in proptest::collection::vec(arb_mono.clone(), 1..3), fm in arb_mono, k in 1u64..6)| {
            let i = Ideal::new(&r, gens.iter().map(|m| Poly::from_terms(&r, [(m.clone(), 1)])));
            let f = Poly::from_terms(&r, [(fm, 1)]);
            if !f.is_zero() && i.contains(&f.pow(k)) {
                prop_assert!(i.radical_contains(&f));
            }
        });
    }
}
