//! Arithmetic in prime fields `F_p` for odd primes below 2^31.
//!
//! Elements are plain residues; the modulus lives in [`PrimeField`], which is
//! validated once on construction and then passed around by value.

use std::fmt;

use crate::error::{Error, Result};

/// Modulus used by the benchmark protocol.
pub const DEFAULT_PRIME: u32 = 101;

/// A residue in `[0, p)`. The modulus is carried by the surrounding [`PrimeField`].
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp(u32);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field `F_p`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Builds `F_p`, rejecting composite moduli, `p = 2` and `p >= 2^31`.
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::ModulusTooLarge(p));
        }
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Canonical residue of a signed integer.
    #[inline]
    pub fn normalize(&self, x: i64) -> Fp {
        Fp(x.rem_euclid(self.p as i64) as u32)
    }

    /// Residue of an unsigned integer.
    #[inline]
    pub fn element(&self, x: u64) -> Fp {
        Fp((x % self.p as u64) as u32)
    }

    /// Wraps a value already known to lie in `[0, p)`; returns `None` otherwise.
    pub fn checked_element(&self, x: u64) -> Option<Fp> {
        (x < self.p as u64).then_some(Fp(x as u32))
    }

    #[inline]
    pub fn add(&self, a: Fp, b: Fp) -> Fp {
        let s = a.0 + b.0;
        Fp(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(&self, a: Fp, b: Fp) -> Fp {
        Fp(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    #[inline]
    pub fn neg(&self, a: Fp) -> Fp {
        Fp(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(&self, a: Fp, b: Fp) -> Fp {
        Fp(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
    }

    pub fn pow(&self, a: Fp, mut e: u64) -> Fp {
        let mut base = a;
        let mut acc = Fp::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self, a: Fp) -> Result<Fp> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.normalize(t0))
    }

    pub fn div(&self, a: Fp, b: Fp) -> Result<Fp> {
        Ok(self.mul(a, self.inv(b)?))
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let f = f101();
        assert_eq!(f.normalize(102), Fp(1));
        assert_eq!(f.normalize(-1), Fp(100));
        assert_eq!(f.normalize(0), Fp(0));
    }

    #[test]
    fn inverse_examples() {
        let f = f101();
        assert_eq!(f.inv(Fp(1)).unwrap(), Fp(1));
        assert_eq!(f.inv(Fp(2)).unwrap(), Fp(51));
        assert_eq!(f.inv(Fp(100)).unwrap(), Fp(100));
        assert_eq!(f.inv(Fp(3)).unwrap(), Fp(34));
        assert_eq!(f.inv(Fp(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(PrimeField::new(4), Err(Error::NotPrime(4)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeField::new(2), Err(Error::CharacteristicTwo));
        assert_eq!(PrimeField::new(1 << 31), Err(Error::ModulusTooLarge(1 << 31)));
        assert!(PrimeField::new(2_147_483_647).is_ok());
        assert_eq!(PrimeField::new(2_147_483_649), Err(Error::ModulusTooLarge(2_147_483_649)));
    }

    #[test]
    fn large_prime_products_do_not_overflow() {
        let f = PrimeField::new(2_147_483_647).unwrap();
        let a = f.element(2_147_483_646);
        assert_eq!(f.mul(a, a), Fp(1));
        assert_eq!(f.mul(a, f.inv(a).unwrap()), Fp(1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn field_axioms(a in 0u32..101, b in 0u32..101, c in 0u32..101) {
            let f = f101();
            let (a, b, c) = (Fp(a), Fp(b), Fp(c));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.sub(f.add(a, b), b), a);
            prop_assert_eq!(f.add(a, f.neg(a)), Fp::ZERO);
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fp::ONE);
                prop_assert_eq!(f.inv(a).unwrap(), f.pow(a, 99));
            }
        }
    }
}
