//! Module terms `t * e_i`, their compatible orders, signature/polynomial
//! pairs, S-pair records and the canonical rewriter.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Term, TermOrder};

/// The module term `term * e_{index+1}`. Indices are 0-based internally and
/// printed 1-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    term: Term,
    index: usize,
}

impl Signature {
    pub fn new(term: Term, index: usize) -> Self {
        Self { term, index }
    }

    /// The generator `e_{index+1}`.
    pub fn unit(nvars: usize, index: usize) -> Self {
        Self { term: Term::one(nvars), index }
    }

    #[inline]
    pub fn term(&self) -> &Term {
        &self.term
    }

    #[inline]
    pub fn index(&self) -> usize {
        self.index
    }

    #[inline]
    pub fn is_unit(&self) -> bool {
        self.term.is_one()
    }

    /// `u * self`
    #[inline]
    pub fn mul(&self, u: &Term) -> Signature {
        Signature { term: self.term.mul(u), index: self.index }
    }

    /// `self | other`: same generator and dividing terms.
    #[inline]
    pub fn divides(&self, other: &Signature) -> bool {
        self.index == other.index && self.term.divides(&other.term)
    }

    /// The term `u` with `u * self = other`.
    pub fn quot_of(&self, other: &Signature) -> Result<Term> {
        if self.index != other.index {
            return Err(Error::NotDivisible);
        }
        other.term.quot(&self.term)
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.term.is_one() {
            write!(f, "e{}", self.index + 1)
        } else {
            write!(f, "{}*e{}", self.term, self.index + 1)
        }
    }
}

/// A signature or the formal symbol `∞`, which exceeds every signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Flag {
    At(Signature),
    Infinity,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum SigOrderKind {
    /// Position over term: generator index first.
    #[default]
    Pot,
    /// Term over position: term first, index breaks ties.
    Top,
}

impl fmt::Display for SigOrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SigOrderKind::Pot => "pot",
            SigOrderKind::Top => "top",
        })
    }
}

impl FromStr for SigOrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pot" => Ok(SigOrderKind::Pot),
            "top" => Ok(SigOrderKind::Top),
            other => Err(Error::Config(format!("unknown signature order `{other}`"))),
        }
    }
}

/// A compatible extension of a term order to module terms.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SigOrder {
    pub kind: SigOrderKind,
    pub term_order: TermOrder,
}

impl SigOrder {
    pub fn new(kind: SigOrderKind, term_order: TermOrder) -> Self {
        Self { kind, term_order }
    }

    #[inline]
    pub fn cmp(&self, a: &Signature, b: &Signature) -> Ordering {
        match self.kind {
            SigOrderKind::Pot => a.index.cmp(&b.index).then_with(|| self.term_order.cmp(&a.term, &b.term)),
            SigOrderKind::Top => self.term_order.cmp(&a.term, &b.term).then_with(|| a.index.cmp(&b.index)),
        }
    }

    #[inline]
    pub fn lt(&self, a: &Signature, b: &Signature) -> bool {
        self.cmp(a, b) == Ordering::Less
    }

    pub fn cmp_flags(&self, a: &Flag, b: &Flag) -> Ordering {
        match (a, b) {
            (Flag::Infinity, Flag::Infinity) => Ordering::Equal,
            (Flag::Infinity, Flag::At(_)) => Ordering::Greater,
            (Flag::At(_), Flag::Infinity) => Ordering::Less,
            (Flag::At(x), Flag::At(y)) => self.cmp(x, y),
        }
    }

    /// `flag < s`
    #[inline]
    pub fn flag_below(&self, flag: &Flag, s: &Signature) -> bool {
        matches!(flag, Flag::At(f) if self.lt(f, s))
    }

    pub fn max<'a>(&self, a: &'a Signature, b: &'a Signature) -> &'a Signature {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }

    pub fn min_flag(&self, a: Flag, b: Flag) -> Flag {
        if self.cmp_flags(&b, &a) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

/// A module element represented by its signature (or an upper bound on it)
/// and its image polynomial. Module coordinates are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigPoly {
    pub sig: Signature,
    pub poly: Polynomial,
}

impl SigPoly {
    pub fn new(sig: Signature, poly: Polynomial) -> Self {
        Self { sig, poly }
    }
}

/// Where a queued signature came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairOrigin {
    /// The generator `e_{i+1}` of the input system.
    Input(usize),
    /// The S-pair `(first_mul * G[first], second_mul * G[second])` at `lcm`.
    Pair { first: usize, second: usize, first_mul: Term, second_mul: Term, lcm: Term },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SPairRecord {
    pub sig: Signature,
    pub origin: PairOrigin,
}

impl SPairRecord {
    pub fn input(nvars: usize, index: usize) -> Self {
        Self { sig: Signature::unit(nvars, index), origin: PairOrigin::Input(index) }
    }
}

/// Builds the S-pair of `f = basis[fi]` and `g = basis[gi]`.
///
/// Returns `Ok(None)` for singular pairs, whose two halves carry the same
/// signature.
pub fn make_spair(
    order: &SigOrder,
    (fi, f): (usize, &SigPoly),
    (gi, g): (usize, &SigPoly),
) -> Result<Option<SPairRecord>> {
    let (Some(lf), Some(lg)) = (f.poly.lead_term(), g.poly.lead_term()) else {
        return Err(Error::ZeroSPair);
    };
    let lcm = lf.lcm(lg);
    let u = lcm.quot_unchecked(lf);
    let v = lcm.quot_unchecked(lg);
    let su = f.sig.mul(&u);
    let sv = g.sig.mul(&v);
    let sig = match order.cmp(&su, &sv) {
        Ordering::Equal => return Ok(None),
        Ordering::Greater => su,
        Ordering::Less => sv,
    };
    Ok(Some(SPairRecord {
        sig,
        origin: PairOrigin::Pair { first: fi, second: gi, first_mul: u, second_mul: v, lcm },
    }))
}

/// The canonical rewriter of `s`: the latest basis element (insertion order is
/// the rewrite order) whose signature divides `s`, with multiplier
/// `s / sig(g)`. `None` when no signature divides `s`.
pub fn canonical_rewriter(s: &Signature, basis: &[SigPoly]) -> Option<(usize, Term)> {
    basis
        .iter()
        .enumerate()
        .rev()
        .find(|(_, g)| g.sig.divides(s))
        .map(|(i, g)| (i, s.term().quot_unchecked(g.sig.term())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::Ring;
    use proptest::prelude::*;

    fn ring() -> Ring {
        Ring::new(PrimeField::new(101).unwrap(), 3, TermOrder::GrevLex)
    }

    fn t(e: &[u16]) -> Term {
        Term::from_exponents(e)
    }

    fn s(e: &[u16], i: usize) -> Signature {
        Signature::new(t(e), i)
    }

    const POT: SigOrder = SigOrder { kind: SigOrderKind::Pot, term_order: TermOrder::GrevLex };
    const TOP: SigOrder = SigOrder { kind: SigOrderKind::Top, term_order: TermOrder::GrevLex };

    #[test]
    fn comparison_examples() {
        // x*e1 < e2 under POT
        assert_eq!(POT.cmp(&s(&[1, 0, 0], 0), &s(&[0, 0, 0], 1)), Ordering::Less);
        // x*e2 > y*e1 under TOP
        assert_eq!(TOP.cmp(&s(&[1, 0, 0], 1), &s(&[0, 1, 0], 0)), Ordering::Greater);
        for o in [POT, TOP] {
            let fin = Flag::At(s(&[5, 1, 0], 2));
            assert_eq!(o.cmp_flags(&fin, &Flag::Infinity), Ordering::Less);
            assert!(!o.flag_below(&Flag::Infinity, &s(&[9, 9, 9], 9)));
        }
    }

    #[test]
    fn multiplication_and_division() {
        assert_eq!(s(&[0, 1, 0], 1).mul(&t(&[1, 0, 0])), s(&[1, 1, 0], 1));
        assert!(s(&[0, 1, 0], 0).divides(&s(&[1, 1, 0], 0)));
        assert!(!s(&[0, 1, 0], 1).divides(&s(&[1, 1, 0], 0)));
        assert_eq!(s(&[0, 1, 0], 0).quot_of(&s(&[1, 1, 0], 0)).unwrap(), t(&[1, 0, 0]));
        assert!(s(&[0, 1, 0], 1).quot_of(&s(&[1, 1, 0], 0)).is_err());
    }

    #[test]
    fn spair_examples() {
        let r = ring();
        // (e1, x^2 - y) and (e2, x*y - z) under POT
        let f = SigPoly::new(s(&[0, 0, 0], 0), r.parse("x^2 - y").unwrap());
        let g = SigPoly::new(s(&[0, 0, 0], 1), r.parse("x*y - z").unwrap());
        let rec = make_spair(&POT, (0, &f), (1, &g)).unwrap().unwrap();
        assert_eq!(rec.sig, s(&[1, 0, 0], 1));
        let PairOrigin::Pair { first_mul, second_mul, lcm, .. } = rec.origin else { panic!() };
        assert_eq!((first_mul, second_mul, lcm), (t(&[0, 1, 0]), t(&[1, 0, 0]), t(&[2, 1, 0])));

        // (e1, x) and (x*e1, x^2 + y): both halves are x*e1
        let f = SigPoly::new(s(&[0, 0, 0], 0), r.parse("x").unwrap());
        let g = SigPoly::new(s(&[1, 0, 0], 0), r.parse("x^2 + y").unwrap());
        assert_eq!(make_spair(&POT, (0, &f), (1, &g)).unwrap(), None);

        // (e1, x - y) and (y*e1, y^2 - x): halves y^2*e1 and x*y*e1
        let f = SigPoly::new(s(&[0, 0, 0], 0), r.parse("x - y").unwrap());
        let g = SigPoly::new(s(&[0, 1, 0], 0), r.parse("y^2 - x").unwrap());
        let rec = make_spair(&POT, (0, &f), (1, &g)).unwrap().unwrap();
        assert_eq!(rec.sig, s(&[1, 1, 0], 0));
        // brute force: x*y and y^2 have equal degree; the last exponent of x*y is smaller
        assert!(t(&[1, 1, 0]).exponents()[1] < t(&[0, 2, 0]).exponents()[1]);

        let zero = SigPoly::new(s(&[0, 0, 0], 0), Polynomial::zero());
        assert_eq!(make_spair(&POT, (0, &zero), (1, &g)), Err(Error::ZeroSPair));
    }

    #[test]
    fn rewriter_examples() {
        let r = ring();
        let g1 = SigPoly::new(s(&[0, 0, 0], 0), r.parse("x + 1").unwrap());
        let g2 = SigPoly::new(s(&[0, 1, 0], 0), r.parse("y + 1").unwrap());
        let basis = vec![g1, g2];
        assert_eq!(canonical_rewriter(&s(&[1, 1, 0], 0), &basis), Some((1, t(&[1, 0, 0]))));
        assert_eq!(canonical_rewriter(&s(&[0, 0, 0], 0), &[]), None);
        assert_eq!(canonical_rewriter(&s(&[0, 0, 0], 1), &basis[..1]), None);
    }

    fn sig_strategy() -> impl Strategy<Value = Signature> {
        (proptest::collection::vec(0u16..4, 3), 0usize..3).prop_map(|(e, i)| Signature::new(t(&e), i))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn signature_order_axioms(a in sig_strategy(), b in sig_strategy(), c in sig_strategy(),
                                  w in proptest::collection::vec(0u16..3, 3)) {
            let w = t(&w);
            for kind in [SigOrderKind::Pot, SigOrderKind::Top] {
                for term_order in [TermOrder::GrevLex, TermOrder::Lex] {
                    let o = SigOrder::new(kind, term_order);
                    prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
                    prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
                    if o.cmp(&a, &b) != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                        prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
                    }
                    // compatibility with the term order on a fixed generator
                    let (u, v) = (a.term(), b.term());
                    prop_assert_eq!(
                        term_order.cmp(u, v),
                        o.cmp(&Signature::new(u.clone(), c.index()), &Signature::new(v.clone(), c.index()))
                    );
                    // multiplicativity and divisibility implies order
                    prop_assert_eq!(o.cmp(&a.mul(&w), &b.mul(&w)), o.cmp(&a, &b));
                    if a.divides(&b) {
                        prop_assert_ne!(o.cmp(&a, &b), Ordering::Greater);
                    }
                }
            }
        }

        #[test]
        fn spair_is_symmetric(e1 in proptest::collection::vec(0u16..3, 3), e2 in proptest::collection::vec(0u16..3, 3),
                              s1 in sig_strategy(), s2 in sig_strategy()) {
            let r = ring();
            let f = SigPoly::new(s1, r.poly(&[(1, &e1), (1, &[0, 0, 0])]).unwrap());
            let g = SigPoly::new(s2, r.poly(&[(1, &e2), (2, &[0, 0, 0])]).unwrap());
            prop_assume!(!f.poly.is_zero() && !g.poly.is_zero());
            let ab = make_spair(&TOP, (0, &f), (1, &g)).unwrap();
            let ba = make_spair(&TOP, (1, &g), (0, &f)).unwrap();
            match (ab, ba) {
                (None, None) => {}
                (Some(x), Some(y)) => {
                    prop_assert_eq!(&x.sig, &y.sig);
                    let (PairOrigin::Pair { lcm: l1, .. }, PairOrigin::Pair { lcm: l2, .. }) = (x.origin, y.origin) else {
                        unreachable!()
                    };
                    prop_assert_eq!(l1, l2);
                }
                _ => prop_assert!(false, "regularity must not depend on argument order"),
            }
        }
    }
}
