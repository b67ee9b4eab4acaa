use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponents are bounded to 16 bits per variable.
pub type Exponent = u16;

const INLINE: usize = 16;

type Exponents = SmallVec<[Exponent; INLINE]>;

/// Combines two exponent vectors of equal length componentwise, filling a
/// stack buffer for the common short case.
#[inline]
fn zip_with(a: &[Exponent], b: &[Exponent], f: impl Fn(Exponent, Exponent) -> Exponent) -> Exponents {
    if a.len() <= INLINE {
        let mut buf = [0; INLINE];
        for ((o, &x), &y) in buf.iter_mut().zip(a).zip(b) {
            *o = f(x, y);
        }
        Exponents::from_buf_and_len(buf, a.len())
    } else {
        a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
    }
}

/// A power product `x1^a1 * ... * xn^an`.
#[derive(PartialEq, Eq, Hash)]
pub struct Term {
    exps: Exponents,
    degree: u32,
}

impl Clone for Term {
    #[inline]
    fn clone(&self) -> Self {
        let exps = if self.exps.len() <= INLINE {
            let mut buf = [0; INLINE];
            buf[..self.exps.len()].copy_from_slice(&self.exps);
            Exponents::from_buf_and_len(buf, self.exps.len())
        } else {
            self.exps.clone()
        };
        Term { exps, degree: self.degree }
    }
}

impl Term {
    pub fn one(nvars: usize) -> Self {
        Self { exps: smallvec::smallvec![0; nvars], degree: 0 }
    }

    /// The variable `x_{index+1}` (0-based index).
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut t = Self::one(nvars);
        t.exps[index] = 1;
        t.degree = 1;
        t
    }

    pub fn from_exponents(exps: &[Exponent]) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Self { exps: SmallVec::from_slice(exps), degree }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Bitmask of the variables occurring in the term (index taken mod 64).
    /// `a | b` implies `a.divmask() & !b.divmask() == 0`.
    #[inline]
    pub fn divmask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | 1 << (i % 64))
    }

    /// `self | other`
    #[inline]
    pub fn divides(&self, other: &Term) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / divisor`, failing when `divisor` does not divide `self`.
    pub fn quot(&self, divisor: &Term) -> Result<Term> {
        self.check_vars(divisor)?;
        if !divisor.divides(self) {
            return Err(Error::NotDivisible);
        }
        Ok(self.quot_unchecked(divisor))
    }

    #[inline]
    pub(crate) fn quot_unchecked(&self, divisor: &Term) -> Term {
        Term { exps: zip_with(&self.exps, &divisor.exps, |a, b| a - b), degree: self.degree - divisor.degree }
    }

    pub fn lcm(&self, other: &Term) -> Term {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = zip_with(&self.exps, &other.exps, Exponent::max);
        let degree = exps.iter().map(|&e| e as u32).sum();
        Term { exps, degree }
    }

    /// True when the terms share no variable.
    pub fn is_coprime(&self, other: &Term) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn try_mul(&self, other: &Term) -> Result<Term> {
        self.check_vars(other)?;
        if self.exps.iter().zip(&other.exps).any(|(&a, &b)| a.checked_add(b).is_none()) {
            return Err(Error::ExponentOverflow);
        }
        Ok(self.mul_unchecked(other))
    }

    /// Product of two terms.
    ///
    /// Panics on exponent overflow; degrees in this engine stay far below 2^16.
    #[inline]
    pub fn mul(&self, other: &Term) -> Term {
        assert_eq!(self.nvars(), other.nvars(), "variable count mismatch");
        let sum = self.degree + other.degree;
        // a per-variable overflow needs a total degree of at least 2^16
        if sum > Exponent::MAX as u32 {
            return self.try_mul(other).expect("exponent overflow in term product");
        }
        self.mul_unchecked(other)
    }

    #[inline]
    fn mul_unchecked(&self, other: &Term) -> Term {
        Term { exps: zip_with(&self.exps, &other.exps, |a, b| a.wrapping_add(b)), degree: self.degree + other.degree }
    }

    pub(crate) fn check_vars(&self, other: &Term) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::VariableCount { expected: self.nvars(), found: other.nvars() });
        }
        Ok(())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: &[u16]) -> Term {
        Term::from_exponents(e)
    }

    #[test]
    fn divisibility_and_quotients() {
        assert!(t(&[1, 0]).divides(&t(&[1, 1])));
        assert!(!t(&[0, 2]).divides(&t(&[1, 1])));
        assert_eq!(t(&[2, 0]).lcm(&t(&[1, 1])), t(&[2, 1]));
        assert_eq!(t(&[2, 1]).quot(&t(&[1, 0])).unwrap(), t(&[1, 1]));
        assert_eq!(t(&[1, 0]).quot(&t(&[0, 1])), Err(Error::NotDivisible));
        assert_eq!(t(&[1, 2]).mul(&t(&[3, 0])), t(&[4, 2]));
        assert_eq!(t(&[1, 2]).mul(&t(&[3, 0])).degree(), 6);
    }

    #[test]
    fn overflow_and_mismatch_are_errors() {
        assert_eq!(t(&[u16::MAX]).try_mul(&t(&[1])), Err(Error::ExponentOverflow));
        assert_eq!(
            t(&[1]).try_mul(&t(&[1, 0])),
            Err(Error::VariableCount { expected: 1, found: 2 })
        );
    }

    #[test]
    fn divmask_is_necessary_for_division() {
        let a = t(&[1, 0, 2]);
        let b = t(&[1, 1, 3]);
        assert!(a.divides(&b));
        assert_eq!(a.divmask() & !b.divmask(), 0);
        assert_ne!(b.divmask() & !a.divmask(), 0);
    }

    #[test]
    fn display() {
        assert_eq!(t(&[2, 0, 1]).to_string(), "x1^2*x3");
        assert_eq!(t(&[0, 0]).to_string(), "1");
    }
}
