//! Ordinary (signature-free) reduction: normal forms, S-polynomials and
//! inter-reduction to the reduced Gröbner basis.

use std::cmp::Ordering;

use super::polynomial::{Polynomial, Ring};
use super::term::Term;
use crate::field::Fp;

/// Leading data of a divisor set, cached for repeated lookups.
struct Divisors<'a> {
    polys: Vec<&'a Polynomial>,
    masks: Vec<u64>,
}

impl<'a> Divisors<'a> {
    fn new(basis: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        let polys: Vec<_> = basis.into_iter().filter(|g| !g.is_zero()).collect();
        let masks = polys.iter().map(|g| g.lead_term().unwrap().divmask()).collect();
        Self { polys, masks }
    }

    /// The divisor with the smallest leading term dividing `t`, earliest first on ties.
    fn find(&self, ring: &Ring, t: &Term) -> Option<(usize, &'a Polynomial)> {
        let tmask = t.divmask();
        let mut best: Option<(usize, &'a Polynomial)> = None;
        for (i, (g, &mask)) in self.polys.iter().zip(&self.masks).enumerate() {
            if mask & !tmask != 0 {
                continue;
            }
            let lt = g.lead_term().unwrap();
            if !lt.divides(t) {
                continue;
            }
            if best.map_or(true, |(_, b)| ring.cmp(lt, b.lead_term().unwrap()) == Ordering::Less) {
                best = Some((i, *g));
            }
        }
        best
    }
}

impl Ring {
    /// A normal form of `f` modulo `basis`: no term of the result is divisible
    /// by a leading term of the basis.
    pub fn reduce_ordinary(&self, f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
        self.reduce_ordinary_counted(f, basis, &mut 0)
    }

    /// As [`Ring::reduce_ordinary`], adding the number of reduction steps to `steps`.
    pub fn reduce_ordinary_counted(&self, f: &Polynomial, basis: &[Polynomial], steps: &mut u64) -> Polynomial {
        let divisors = Divisors::new(basis);
        self.reduce_with(f, &divisors, steps, &mut |_, _, _| {})
    }

    /// Whether `f` reduces to zero modulo `basis`. Only leading terms are
    /// reduced: once the leading term is irreducible the normal form is
    /// nonzero whatever happens to the tail.
    pub fn reduces_to_zero(&self, f: &Polynomial, basis: &[Polynomial]) -> bool {
        let divisors = Divisors::new(basis);
        let fld = self.field();
        let mut p = f.clone();
        while let Some(m) = p.lead() {
            let Some((_, g)) = divisors.find(self, &m.term) else {
                return false;
            };
            let lead = g.lead().unwrap();
            let u = m.term.quot_unchecked(&lead.term);
            let c = fld.div(m.coeff, lead.coeff).expect("nonzero leading coefficient");
            p = self.sub_scaled_mul_from(&p, 0, c, &u, g);
        }
        true
    }

    /// Core division loop; `on_step(i, c, u)` observes each step `p -> p - c*u*g_i`,
    /// where `i` indexes the nonzero divisors in input order.
    fn reduce_with(
        &self,
        f: &Polynomial,
        divisors: &Divisors<'_>,
        steps: &mut u64,
        on_step: &mut dyn FnMut(usize, Fp, &Term),
    ) -> Polynomial {
        let fld = self.field();
        let mut p = f.clone();
        let mut pos = 0;
        while pos < p.len() {
            let m = &p.monomials()[pos];
            match divisors.find(self, &m.term) {
                Some((i, g)) => {
                    let lead = g.lead().unwrap();
                    let u = m.term.quot_unchecked(&lead.term);
                    let c = fld.div(m.coeff, lead.coeff).expect("nonzero leading coefficient");
                    on_step(i, c, &u);
                    p = self.sub_scaled_mul_from(&p, pos, c, &u, g);
                    *steps += 1;
                }
                None => pos += 1,
            }
        }
        p
    }

    /// The S-polynomial `(l/LM(f)) f - (l/LM(g)) g` with `l = lcm(LT f, LT g)`.
    pub fn spoly(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let (Some(lf), Some(lg)) = (f.lead(), g.lead()) else {
            return Polynomial::zero();
        };
        let l = lf.term.lcm(&lg.term);
        let fld = self.field();
        let a = self.mul_term(&self.scale(f, fld.inv(lf.coeff).unwrap()), &l.quot_unchecked(&lf.term));
        let b = self.mul_term(&self.scale(g, fld.inv(lg.coeff).unwrap()), &l.quot_unchecked(&lg.term));
        self.sub(&a, &b)
    }

    /// Monic, minimal, tail-reduced basis sorted ascending by leading term.
    /// For a Gröbner basis this is the reduced Gröbner basis.
    pub fn interreduce(&self, basis: &[Polynomial]) -> Vec<Polynomial> {
        let mut gs: Vec<Polynomial> = basis.iter().filter(|g| !g.is_zero()).map(|g| self.monic(g)).collect();
        gs.sort_by(|a, b| self.cmp(a.lead_term().unwrap(), b.lead_term().unwrap()));
        // drop elements whose leading term is a multiple of another's
        let mut minimal: Vec<Polynomial> = Vec::with_capacity(gs.len());
        for g in gs {
            let lt = g.lead_term().unwrap();
            if !minimal.iter().any(|h| h.lead_term().unwrap().divides(lt)) {
                minimal.push(g);
            }
        }
        (0..minimal.len())
            .map(|i| {
                let others = Divisors::new(minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g));
                self.reduce_with(&minimal[i], &others, &mut 0, &mut |_, _, _| {})
            })
            .collect()
    }
}
