//! The M5GB reduction routine and its reductor cache `M`.
//!
//! Every reduction collects one cached, tail-reduced reductor per reducible
//! term and subtracts them all at once: since no reductor's tail contains a
//! reducible term, the coefficients of the reducible terms never change while
//! the subtractions are applied, so a single linear combination gives the
//! same result as sequential reduction.

use std::ops::Range;
use std::rc::Rc;

use rustc_hash::FxHashMap;

use super::{Basis, DivisorMemo, RoundReducer, RunStats};
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::poly::{Polynomial, Term};
use crate::sig::{Flag, Signature};
#[cfg(test)]
use crate::sig::SigPoly;

/// A cached monic reductor.
#[derive(Clone, Debug)]
pub struct Reductor {
    sigbound: Signature,
    poly: Rc<Polynomial>,
    gen: usize,
    flag: Flag,
}

impl Reductor {
    /// Upper bound on the signature of the module element.
    pub fn sigbound(&self) -> &Signature {
        &self.sigbound
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    /// Basis length at construction.
    pub fn generation(&self) -> usize {
        self.gen
    }

    /// Smallest signature at which some basis multiple could reduce a tail
    /// term. May underestimate, which only causes extra updates.
    pub fn flag(&self) -> &Flag {
        &self.flag
    }
}

enum Outcome {
    Reduced { poly: Rc<Polynomial>, flag: Flag, sigbound: Signature },
    Kept(Flag),
}

struct Pass {
    poly: Polynomial,
    flag: Flag,
    sigbound: Option<Signature>,
}

/// The reductor cache together with the term memo it consults.
pub struct ReductorCache {
    reductors: FxHashMap<Term, Reductor>,
    memo: DivisorMemo,
    check: bool,
    built: u64,
    reuses: u64,
}

impl ReductorCache {
    /// An empty cache; `check` enables the per-reduction invariant assertions.
    pub fn new(check: bool) -> Self {
        Self { reductors: FxHashMap::default(), memo: DivisorMemo::new(), check, built: 0, reuses: 0 }
    }

    pub fn get(&self, lead: &Term) -> Option<&Reductor> {
        self.reductors.get(lead)
    }

    pub fn len(&self) -> usize {
        self.reductors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reductors.is_empty()
    }

    pub fn built(&self) -> u64 {
        self.built
    }

    pub fn reuses(&self) -> u64 {
        self.reuses
    }

    /// Reduces the terms of `f` from position `from` on, up to `s`, looking
    /// for new divisors in `view` only.
    fn reduce_terms(
        &mut self,
        basis: &Basis,
        f: &Polynomial,
        from: usize,
        s: &Signature,
        view: Range<usize>,
        stats: &mut RunStats,
    ) -> Result<Pass> {
        let order = basis.order;
        let parent = f.lead_term().filter(|_| from > 0);
        let mut parts: Vec<(Fp, Rc<Polynomial>)> = Vec::new();
        let mut flag = Flag::Infinity;
        let mut sigbound: Option<Signature> = None;
        for mono in &f.monomials()[from.min(f.len())..] {
            if self.check {
                if let Some(p) = parent {
                    if basis.ring.cmp(&mono.term, p).is_ge() {
                        return Err(Error::Invariant(format!("recursion from {p} does not descend at {}", mono.term)));
                    }
                }
            }
            match self.obtain(basis, &mono.term, s, &view, stats)? {
                Outcome::Reduced { poly, flag: rf, sigbound: rs } => {
                    parts.push((mono.coeff, poly));
                    flag = order.min_flag(flag, rf);
                    sigbound = Some(match sigbound {
                        Some(b) => order.max(&b, &rs).clone(),
                        None => rs,
                    });
                }
                Outcome::Kept(tf) => {
                    if self.check && basis.sig_reducible(&mono.term, s, view.clone()) {
                        return Err(Error::Invariant(format!("term {} left Sig-reducible up to {s}", mono.term)));
                    }
                    flag = order.min_flag(flag, tf);
                }
            }
        }
        stats.reduction_steps += parts.len() as u64;
        let poly = if parts.is_empty() {
            f.clone()
        } else {
            let refs: Vec<(Fp, &Polynomial)> = parts.iter().map(|(c, p)| (*c, p.as_ref())).collect();
            basis.ring.linear_combination(f, &refs)
        };
        Ok(Pass { poly, flag, sigbound })
    }

    /// The reductor for `t` valid up to `s`, updating or building it as needed.
    fn obtain(
        &mut self,
        basis: &Basis,
        t: &Term,
        s: &Signature,
        view: &Range<usize>,
        stats: &mut RunStats,
    ) -> Result<Outcome> {
        let order = basis.order;
        let len = basis.len();
        if let Some(r) = self.reductors.get(t) {
            if self.check && !order.lt(&r.sigbound, s) {
                return Err(Error::Invariant(format!("cached reductor at {t} has signature bound {} >= {s}", r.sigbound)));
            }
            let stale = r.gen < len;
            let flagged = order.flag_below(&r.flag, s);
            if !stale && !flagged {
                self.reuses += 1;
                return Ok(Outcome::Reduced { poly: r.poly.clone(), flag: r.flag.clone(), sigbound: r.sigbound.clone() });
            }
            let r = self.reductors.remove(t).expect("present");
            let pass = if stale {
                let newer = self.reduce_terms(basis, &r.poly, 1, s, r.gen..len, stats)?;
                if flagged {
                    let older = self.reduce_terms(basis, &newer.poly, 1, s, 0..r.gen, stats)?;
                    Pass { sigbound: max_bound(basis, newer.sigbound, older.sigbound), ..older }
                } else {
                    newer
                }
            } else {
                self.reduce_terms(basis, &r.poly, 1, s, 0..len, stats)?
            };
            let sigbound = max_bound(basis, Some(r.sigbound), pass.sigbound).expect("bound");
            return self.insert(basis, pass.poly, sigbound, pass.flag, s);
        }

        let (divisor, tflag) = match self.memo.flag(basis, t) {
            None => (None, Flag::Infinity),
            Some((i, sig)) if order.lt(&sig, s) => {
                let d = if view.contains(&i) { Some((i, sig.clone())) } else { basis.min_eligible_in(t, s, view.clone()) };
                (d, Flag::At(sig))
            }
            Some((_, sig)) => (None, Flag::At(sig)),
        };
        let Some((i, sig)) = divisor else {
            return Ok(Outcome::Kept(tflag));
        };
        let u = t.quot_unchecked(basis.lead(i));
        let ug = basis.ring.mul_term(&basis.elems[i].poly, &u);
        let pass = self.reduce_terms(basis, &ug, 1, s, 0..len, stats)?;
        let sigbound = max_bound(basis, Some(sig), pass.sigbound).expect("bound");
        self.insert(basis, pass.poly, sigbound, pass.flag, s)
    }

    /// Stores a tail-reduced reductor with generation `|G|`.
    fn insert(&mut self, basis: &Basis, poly: Polynomial, sigbound: Signature, flag: Flag, s: &Signature) -> Result<Outcome> {
        let order = basis.order;
        let poly = basis.ring.monic(&poly);
        let Some(lt) = poly.lead_term().cloned() else {
            return Err(Error::Invariant("zero reductor".into()));
        };
        if self.check {
            if order.flag_below(&flag, s) {
                return Err(Error::Invariant(format!("reductor at {lt} has flag below {s}")));
            }
            if !order.lt(&sigbound, s) {
                return Err(Error::Invariant(format!("reductor at {lt} has signature bound {sigbound} >= {s}")));
            }
            for t in poly.tail_terms() {
                if basis.sig_reducible(t, s, 0..basis.len()) {
                    return Err(Error::Invariant(format!("reductor at {lt} has Sig-reducible tail term {t}")));
                }
            }
        }
        let poly = Rc::new(poly);
        let r = Reductor { sigbound: sigbound.clone(), poly: poly.clone(), gen: basis.len(), flag: flag.clone() };
        if self.reductors.insert(lt.clone(), r).is_some() {
            return Err(Error::Invariant(format!("two reductors with leading term {lt}")));
        }
        self.built += 1;
        Ok(Outcome::Reduced { poly, flag, sigbound })
    }

    #[cfg(test)]
    /// Normalizes `m`, computes its flag from the tail terms and caches it.
    pub(crate) fn update_m(&mut self, basis: &Basis, m: SigPoly, s: &Signature) -> Result<&Reductor> {
        let mut flag = Flag::Infinity;
        for t in m.poly.tail_terms() {
            if let Some((_, sig)) = self.memo.flag(basis, t) {
                flag = basis.order.min_flag(flag, Flag::At(sig));
            }
        }
        let lt = m.poly.lead_term().cloned().ok_or_else(|| Error::Invariant("zero reductor".into()))?;
        self.insert(basis, m.poly, m.sig, flag, s)?;
        Ok(&self.reductors[&lt])
    }
}

fn max_bound(basis: &Basis, a: Option<Signature>, b: Option<Signature>) -> Option<Signature> {
    match (a, b) {
        (Some(a), Some(b)) => Some(basis.order.max(&a, &b).clone()),
        (a, b) => a.or(b),
    }
}

impl RoundReducer for ReductorCache {
    fn reduce(&mut self, basis: &Basis, f: Polynomial, s: &Signature, stats: &mut RunStats) -> Result<Polynomial> {
        Ok(self.reduce_terms(basis, &f, 0, s, 0..basis.len(), stats)?.poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::{Ring, TermOrder};
    use crate::sig::{SigOrder, SigOrderKind};

    fn ring() -> Ring {
        Ring::new(PrimeField::new(101).unwrap(), 3, TermOrder::GrevLex)
    }

    fn t(e: &[u16]) -> Term {
        Term::from_exponents(e)
    }

    fn basis(r: Ring, elems: &[(Signature, &str)]) -> Basis {
        let mut b = Basis::new(r, SigOrder::new(SigOrderKind::Pot, TermOrder::GrevLex), 3);
        for (s, p) in elems {
            b.push(SigPoly::new(s.clone(), r.parse(p).unwrap()));
        }
        b
    }

    #[test]
    fn reduce_trace_builds_tail_reduced_reductors() {
        let r = ring();
        let b = basis(r, &[(Signature::unit(3, 0), "x - y")]);
        let mut cache = ReductorCache::new(true);
        let mut stats = RunStats::default();

        let s = Signature::new(t(&[2, 0, 0]), 1);
        let out = cache.reduce(&b, r.parse("x^2 + y").unwrap(), &s, &mut stats).unwrap();
        assert_eq!(out, r.parse("y^2 + y").unwrap());
        assert_eq!(out, r.reduce_ordinary(&r.parse("x^2 + y").unwrap(), &[r.parse("x - y").unwrap()]));
        assert_eq!(cache.len(), 2);
        let x2 = cache.get(&t(&[2, 0, 0])).unwrap();
        assert_eq!(*x2.poly(), r.parse("x^2 - y^2").unwrap());
        assert_eq!(*x2.flag(), Flag::Infinity);
        assert_eq!(*x2.sigbound(), Signature::new(t(&[1, 0, 0]), 0));
        assert_eq!(*cache.get(&t(&[1, 1, 0])).unwrap().poly(), r.parse("x*y - y^2").unwrap());
        assert_eq!(stats.reduction_steps, 2);

        // second use at a larger signature: one subtraction, nothing rebuilt
        let s2 = Signature::new(t(&[2, 1, 0]), 1);
        let out = cache.reduce(&b, r.parse("x^2 + z").unwrap(), &s2, &mut stats).unwrap();
        assert_eq!(out, r.parse("y^2 + z").unwrap());
        assert_eq!((stats.reduction_steps, cache.built(), cache.reuses()), (3, 2, 1));
    }

    #[test]
    fn irreducible_input_is_returned_unchanged() {
        let r = ring();
        let b = basis(r, &[(Signature::unit(3, 0), "x - y")]);
        let mut cache = ReductorCache::new(true);
        let mut stats = RunStats::default();
        let f = r.parse("y^2 + z").unwrap();
        let out = cache.reduce(&b, f.clone(), &Signature::new(t(&[1, 0, 0]), 1), &mut stats).unwrap();
        assert_eq!((out, stats.reduction_steps, cache.len()), (f, 0, 0));
    }

    #[test]
    fn divisors_at_or_above_the_signature_are_ignored() {
        let r = ring();
        let b = basis(r, &[(Signature::unit(3, 0), "x - y")]);
        let mut cache = ReductorCache::new(true);
        let mut stats = RunStats::default();
        // x * (x - y) has signature x*e1, not below x*e1
        let f = r.parse("x^2 + z").unwrap();
        let out = cache.reduce(&b, f.clone(), &Signature::new(t(&[1, 0, 0]), 0), &mut stats).unwrap();
        assert_eq!(out, f);
    }

    #[test]
    fn update_m_examples() {
        let r = ring();
        let s = Signature::new(t(&[0, 0, 0]), 1);

        let b = basis(r, &[(Signature::unit(3, 0), "x - y")]);
        let mut cache = ReductorCache::new(false);
        let m = cache
            .update_m(&b, SigPoly::new(Signature::new(t(&[1, 0, 0]), 0), r.parse("3*x^2 - 3*y^2").unwrap()), &s)
            .unwrap();
        assert_eq!(*m.poly(), r.parse("x^2 - y^2").unwrap());
        assert_eq!((m.flag(), m.generation()), (&Flag::Infinity, 1));

        let b = basis(r, &[(Signature::unit(3, 0), "x^2 - y")]);
        let mut cache = ReductorCache::new(false);
        let m = cache
            .update_m(&b, SigPoly::new(Signature::new(t(&[1, 0, 0]), 0), r.parse("x^3 + x^2*y + z").unwrap()), &s)
            .unwrap();
        assert_eq!(*m.flag(), Flag::At(Signature::new(t(&[0, 1, 0]), 0)));

        let m = cache.update_m(&b, SigPoly::new(Signature::unit(3, 0), r.parse("7*z^3").unwrap()), &s).unwrap();
        assert_eq!((m.poly().lead_coeff(), m.flag()), (Some(Fp::ONE), &Flag::Infinity));

        // a second reductor with the same leading term is rejected
        assert!(cache.update_m(&b, SigPoly::new(Signature::unit(3, 0), r.parse("z^3").unwrap()), &s).is_err());
    }

    #[test]
    fn stale_generation_is_repaired_before_reuse() {
        let r = ring();
        let mut b = basis(r, &[(Signature::unit(3, 0), "x - y")]);
        let mut cache = ReductorCache::new(true);
        let mut stats = RunStats::default();
        let s = Signature::new(t(&[2, 0, 0]), 1);
        cache.reduce(&b, r.parse("x^2").unwrap(), &s, &mut stats).unwrap();
        assert_eq!(*cache.get(&t(&[2, 0, 0])).unwrap().poly(), r.parse("x^2 - y^2").unwrap());

        // a new basis element with leading term y^2 makes the cached tail reducible
        b.push(SigPoly::new(Signature::unit(3, 1), r.parse("y^2 - z").unwrap()));
        let s2 = Signature::new(t(&[0, 0, 1]), 2);
        let out = cache.reduce(&b, r.parse("x^2").unwrap(), &s2, &mut stats).unwrap();
        assert_eq!(out, r.parse("z").unwrap());
        let x2 = cache.get(&t(&[2, 0, 0])).unwrap();
        assert_eq!((x2.poly(), x2.generation()), (&r.parse("x^2 - z").unwrap(), 2));
    }
}
