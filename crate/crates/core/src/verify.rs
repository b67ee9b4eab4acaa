//! Certification of solver output using ordinary reduction only.

use rayon::prelude::*;

use crate::error::Result;
use crate::field::Fp;
use crate::poly::{Polynomial, Ring, Term};

/// Buchberger's criterion: every S-polynomial reduces to zero. Pairs with
/// coprime leading terms are skipped, as are pairs `(i, j)` with some `k`
/// whose leading term divides `lcm(i, j)` while `lcm(i, k)` and `lcm(j, k)`
/// are proper divisors of it (the chain criterion).
pub fn is_groebner(ring: &Ring, basis: &[Polynomial]) -> bool {
    let g: Vec<Polynomial> = basis.iter().filter(|p| !p.is_zero()).cloned().collect();
    let lt: Vec<&Term> = g.iter().map(|p| p.lead_term().unwrap()).collect();
    let pairs: Vec<(usize, usize)> = (0..g.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    pairs.par_iter().all(|&(i, j)| {
        if lt[i].is_coprime(lt[j]) {
            return true;
        }
        let l = lt[i].lcm(lt[j]);
        let chained = (0..g.len())
            .any(|k| k != i && k != j && lt[k].divides(&l) && lt[i].lcm(lt[k]) != l && lt[j].lcm(lt[k]) != l);
        chained || ring.reduces_to_zero(&ring.spoly(&g[i], &g[j]), &g)
    })
}

/// Whether two Gröbner bases have the same reduced Gröbner basis.
pub fn reduced_gb_equal(ring: &Ring, a: &[Polynomial], b: &[Polynomial]) -> bool {
    ring.interreduce(a) == ring.interreduce(b)
}

/// Whether every polynomial of `system` vanishes at `point`.
pub fn vanishes_at(ring: &Ring, system: &[Polynomial], point: &[Fp]) -> Result<bool> {
    for f in system {
        if !ring.eval(f, point)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `basis` is a Gröbner basis and every input polynomial reduces to zero
/// modulo it.
pub fn certifies(ring: &Ring, input: &[Polynomial], basis: &[Polynomial]) -> bool {
    is_groebner(ring, basis) && input.par_iter().all(|f| ring.reduces_to_zero(f, basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::TermOrder;

    fn ring() -> Ring {
        Ring::new(PrimeField::new(101).unwrap(), 2, TermOrder::GrevLex)
    }

    fn polys(r: &Ring, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|p| r.parse(p).unwrap()).collect()
    }

    #[test]
    fn groebner_examples() {
        let r = ring();
        assert!(is_groebner(&r, &polys(&r, &["x", "y"])));
        assert!(is_groebner(&r, &polys(&r, &["x^2 - y", "y^2 - x"])));
        assert!(!is_groebner(&r, &polys(&r, &["x^2 - y", "x*y - 1"])));
    }

    /// Every pair, full division, no criteria.
    fn all_pairs_groebner(r: &Ring, g: &[Polynomial]) -> bool {
        (0..g.len()).all(|j| (0..j).all(|i| r.reduce_ordinary(&r.spoly(&g[i], &g[j]), g).is_zero()))
    }

    #[test]
    fn pair_criteria_do_not_change_the_verdict() {
        let (mut yes, mut no) = (0, 0);
        for seed in 0..40 {
            let sys = crate::gensys::gen_random_system(3 + (seed % 2) as usize, 4, 101, seed).unwrap();
            let r = &sys.ring;
            let gb = crate::baseline::buchberger(r, &sys.polys).unwrap();
            for k in [sys.polys.len(), gb.len().saturating_sub(1), gb.len()] {
                let g = &gb[..k];
                let verdict = all_pairs_groebner(r, g);
                assert_eq!(is_groebner(r, g), verdict, "seed {seed}, prefix {k}");
                if verdict {
                    yes += 1;
                } else {
                    no += 1;
                }
            }
        }
        assert!(yes >= 40 && no >= 20, "{yes} {no}");
    }

    #[test]
    fn reduced_equality_examples() {
        let r = ring();
        assert!(reduced_gb_equal(&r, &polys(&r, &["x - y"]), &polys(&r, &["2*x - 2*y"])));
        assert!(!reduced_gb_equal(&r, &polys(&r, &["x"]), &polys(&r, &["y"])));
    }

    #[test]
    fn vanishing_examples() {
        let r = ring();
        let f = polys(&r, &["x - y"]);
        let pt = |a, b| [r.field().element(a), r.field().element(b)];
        assert!(vanishes_at(&r, &f, &pt(3, 3)).unwrap());
        assert!(!vanishes_at(&r, &f, &pt(3, 4)).unwrap());
        assert!(vanishes_at(&r, &f, &[Fp::ONE]).is_err());
    }

    #[test]
    fn certification_requires_membership() {
        let r = ring();
        let input = polys(&r, &["x^2 - y", "y^2 - x"]);
        assert!(certifies(&r, &input, &input));
        assert!(!certifies(&r, &input, &polys(&r, &["x^2 - y"])));
    }
}
