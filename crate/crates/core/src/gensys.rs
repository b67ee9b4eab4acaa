//! Seeded generators for quadratic systems with a planted solution.
//!
//! The random source is SplitMix64: the state advances by
//! `0x9E3779B97F4A7C15` and each output is the state mixed by
//! `z = (z ^ z>>30) * 0xBF58476D1CE4E5B9; z = (z ^ z>>27) * 0x94D049BB133111EB; z ^ z>>31`.
//! A residue below `p` is drawn by rejecting outputs at or above the largest
//! multiple of `p` that fits in 2^64 and reducing the rest modulo `p`.
//!
//! Draw order of [`gen_dense_quadratic`]: the `n` coordinates of the point,
//! then per polynomial the coefficients of all degree-2 terms in descending
//! grevlex order (the whole block is redrawn while it is zero), then the
//! degree-1 terms in descending order. The constant term is minus the value
//! of the rest at the point.

use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};
use crate::poly::{Monomial, Polynomial, Ring, Term, TermOrder};

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, bound)`, `bound > 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        let rem = (u64::MAX % bound + 1) % bound;
        loop {
            let x = self.next_u64();
            if rem == 0 || x < rem.wrapping_neg() {
                return x % bound;
            }
        }
    }

    pub fn element(&mut self, field: &PrimeField) -> Fp {
        field.element(self.below(field.modulus() as u64))
    }
}

/// A generated system over a grevlex ring with the point it vanishes at.
#[derive(Clone, Debug)]
pub struct System {
    pub ring: Ring,
    pub polys: Vec<Polynomial>,
    pub solution: Vec<Fp>,
}

fn terms_of_degree(n: usize, d: u32) -> Vec<Term> {
    let mut out = Vec::new();
    let mut exps = vec![0u16; n];
    fn rec(i: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Term>) {
        if i + 1 == exps.len() {
            exps[i] = left as u16;
            out.push(Term::from_exponents(exps));
            return;
        }
        for e in 0..=left {
            exps[i] = e as u16;
            rec(i + 1, left - e, exps, out);
        }
    }
    if n > 0 {
        rec(0, d, &mut exps, &mut out);
    }
    out.sort_by(|a, b| TermOrder::GrevLex.cmp(b, a));
    out
}

fn validate(n: usize, m: usize, p: u64) -> Result<Ring> {
    if n == 0 || m == 0 {
        return Err(Error::Config("variable and polynomial counts must be positive".into()));
    }
    Ok(Ring::new(PrimeField::new(p)?, n, TermOrder::GrevLex))
}

fn plant(ring: &Ring, mut monomials: Vec<Monomial>, point: &[Fp]) -> Polynomial {
    let f = ring.normalize(monomials.clone());
    let value = ring.eval(&f, point).expect("point has ring dimension");
    monomials.push(Monomial { coeff: ring.field().neg(value), term: ring.one_term() });
    ring.normalize(monomials)
}

/// `m` dense quadratic polynomials in `n` variables over `F_p`, all vanishing
/// at a random point.
pub fn gen_dense_quadratic(n: usize, m: usize, p: u64, seed: u64) -> Result<System> {
    let ring = validate(n, m, p)?;
    let field = *ring.field();
    let mut rng = SplitMix64::new(seed);
    let point: Vec<Fp> = (0..n).map(|_| rng.element(&field)).collect();
    let quadratic = terms_of_degree(n, 2);
    let linear = terms_of_degree(n, 1);
    let mut polys = Vec::with_capacity(m);
    for _ in 0..m {
        let mut monomials: Vec<Monomial> = loop {
            let block: Vec<Monomial> =
                quadratic.iter().map(|t| Monomial { coeff: rng.element(&field), term: t.clone() }).collect();
            if block.iter().any(|mo| !mo.coeff.is_zero()) {
                break block;
            }
        };
        monomials.extend(linear.iter().map(|t| Monomial { coeff: rng.element(&field), term: t.clone() }));
        polys.push(plant(&ring, monomials, &point));
    }
    Ok(System { ring, polys, solution: point })
}

/// `m` sparse polynomials of degree at most 2 in `n` variables, each with two
/// to six non-constant terms and nonzero coefficients, all vanishing at a
/// random point.
///
/// Draw order: the point, then per polynomial the term count, then for each
/// term an index into the non-constant terms of degree at most 2 (listed by
/// degree, descending grevlex within a degree; repeats are redrawn) and its
/// coefficient in `[1, p)`.
pub fn gen_random_system(n: usize, m: usize, p: u64, seed: u64) -> Result<System> {
    let ring = validate(n, m, p)?;
    let field = *ring.field();
    let mut rng = SplitMix64::new(seed);
    let point: Vec<Fp> = (0..n).map(|_| rng.element(&field)).collect();
    let mut pool = terms_of_degree(n, 2);
    pool.extend(terms_of_degree(n, 1));
    let max_terms = pool.len().min(6) as u64;
    let mut polys = Vec::with_capacity(m);
    for _ in 0..m {
        let k = if max_terms <= 2 { max_terms } else { 2 + rng.below(max_terms - 1) };
        let mut picked: Vec<usize> = Vec::with_capacity(k as usize);
        let mut monomials = Vec::with_capacity(k as usize + 1);
        while picked.len() < k as usize {
            let i = rng.below(pool.len() as u64) as usize;
            if picked.contains(&i) {
                continue;
            }
            picked.push(i);
            let coeff = field.element(1 + rng.below(field.modulus() as u64 - 1));
            monomials.push(Monomial { coeff, term: pool[i].clone() });
        }
        polys.push(plant(&ring, monomials, &point));
    }
    Ok(System { ring, polys, solution: point })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::vanishes_at;

    #[test]
    fn splitmix_reference_values() {
        // first outputs for seed 0 as published with the generator
        let mut r = SplitMix64::new(0);
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(r.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(r.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn below_stays_in_range() {
        let mut r = SplitMix64::new(7);
        for bound in [1u64, 2, 3, 101, 2_147_483_647] {
            for _ in 0..1000 {
                assert!(r.below(bound) < bound);
            }
        }
    }

    #[test]
    fn grevlex_slots_are_descending() {
        let q = terms_of_degree(3, 2);
        let shown: Vec<String> = q.iter().map(|t| t.to_string()).collect();
        assert_eq!(shown, ["x1^2", "x1*x2", "x2^2", "x1*x3", "x2*x3", "x3^2"]);
    }

    #[test]
    fn dense_examples() {
        let sys = gen_dense_quadratic(5, 10, 101, 42).unwrap();
        assert_eq!(sys.polys.len(), 10);
        for f in &sys.polys {
            assert!(f.len() <= 21);
            assert_eq!(f.total_degree(), Some(2));
        }
        assert!(vanishes_at(&sys.ring, &sys.polys, &sys.solution).unwrap());

        let uni = gen_dense_quadratic(1, 2, 101, 0).unwrap();
        assert_eq!(uni.polys.len(), 2);
        assert!(uni.polys.iter().all(|f| f.total_degree() == Some(2)));
        assert!(vanishes_at(&uni.ring, &uni.polys, &uni.solution).unwrap());

        let again = gen_dense_quadratic(5, 10, 101, 42).unwrap();
        assert_eq!((again.polys, again.solution), (sys.polys, sys.solution));
        assert!(gen_dense_quadratic(3, 3, 4, 0).is_err());
        assert!(gen_dense_quadratic(0, 3, 101, 0).is_err());
    }

    #[test]
    fn random_systems_are_planted_and_sparse() {
        for seed in 0..50 {
            let sys = gen_random_system(4, 6, 101, seed).unwrap();
            assert!(vanishes_at(&sys.ring, &sys.polys, &sys.solution).unwrap());
            for f in &sys.polys {
                assert!(!f.is_zero() && f.len() <= 7);
                assert!(f.total_degree().unwrap() <= 2);
            }
        }
    }
}
