use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::term::Term;
use crate::error::{Error, Result};

/// Admissible term orders with variable priority `x1 > x2 > ... > xn`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// Graded reverse lexicographic.
    #[default]
    GrevLex,
    /// Pure lexicographic.
    Lex,
}

impl TermOrder {
    #[inline]
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            TermOrder::GrevLex => a.degree().cmp(&b.degree()).then_with(|| {
                // equal degree: the term with the smaller exponent in the last
                // differing variable is larger
                let (ea, eb) = (a.exponents(), b.exponents());
                for i in (0..ea.len()).rev() {
                    if ea[i] != eb[i] {
                        return eb[i].cmp(&ea[i]);
                    }
                }
                Ordering::Equal
            }),
            TermOrder::Lex => a.exponents().cmp(b.exponents()),
        }
    }

    /// Like [`TermOrder::cmp`] but reports mismatched variable counts.
    pub fn try_cmp(&self, a: &Term, b: &Term) -> Result<Ordering> {
        a.check_vars(b)?;
        Ok(self.cmp(a, b))
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TermOrder::GrevLex => "grevlex",
            TermOrder::Lex => "lex",
        })
    }
}

impl FromStr for TermOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grevlex" => Ok(TermOrder::GrevLex),
            "lex" => Ok(TermOrder::Lex),
            other => Err(Error::Config(format!("unknown term order `{other}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(e: &[u16]) -> Term {
        Term::from_exponents(e)
    }

    #[test]
    fn examples() {
        assert_eq!(TermOrder::GrevLex.cmp(&t(&[1, 0, 1]), &t(&[0, 2, 0])), Ordering::Less);
        assert_eq!(TermOrder::Lex.cmp(&t(&[1, 0]), &t(&[0, 9])), Ordering::Greater);
        for o in [TermOrder::GrevLex, TermOrder::Lex] {
            assert_eq!(o.cmp(&t(&[2, 3]), &t(&[2, 3])), Ordering::Equal);
        }
        assert!(TermOrder::GrevLex.try_cmp(&t(&[1]), &t(&[1, 0])).is_err());
    }

    /// Grevlex spelled out through a sort key: degree, then negated exponents
    /// read from the last variable.
    fn grevlex_key(a: &Term) -> (u32, Vec<i32>) {
        (a.degree(), a.exponents().iter().rev().map(|&e| -(e as i32)).collect())
    }

    fn term_strategy() -> impl Strategy<Value = Term> {
        proptest::collection::vec(0u16..4, 4).prop_map(|v| Term::from_exponents(&v))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn order_axioms(a in term_strategy(), b in term_strategy(), c in term_strategy()) {
            let one = Term::one(4);
            for o in [TermOrder::GrevLex, TermOrder::Lex] {
                // totality and antisymmetry
                prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
                prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
                // transitivity
                if o.cmp(&a, &b) != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                    prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
                }
                // multiplicativity
                prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), o.cmp(&a, &b));
                // 1 is minimal
                prop_assert_ne!(o.cmp(&one, &a), Ordering::Greater);
            }
            prop_assert_eq!(TermOrder::GrevLex.cmp(&a, &b), grevlex_key(&a).cmp(&grevlex_key(&b)));
        }
    }
}
