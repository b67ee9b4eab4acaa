use std::cmp::Ordering;
use std::fmt;

use super::order::TermOrder;
use super::term::{Exponent, Term};
use crate::error::{Error, Result};
use crate::field::{Fp, PrimeField};

/// A coefficient paired with a term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: Fp,
    pub term: Term,
}

/// A polynomial as a flat list of monomials, strictly descending under the
/// ring's term order, without zero coefficients. The empty list is zero.
///
/// The representation is only meaningful together with the [`Ring`] that built
/// it; mixing rings with different orders breaks the sortedness invariant.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    monomials: Vec<Monomial>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    #[inline]
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn into_monomials(self) -> Vec<Monomial> {
        self.monomials
    }

    #[inline]
    pub fn lead(&self) -> Option<&Monomial> {
        self.monomials.first()
    }

    #[inline]
    pub fn lead_term(&self) -> Option<&Term> {
        self.monomials.first().map(|m| &m.term)
    }

    #[inline]
    pub fn lead_coeff(&self) -> Option<Fp> {
        self.monomials.first().map(|m| m.coeff)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = &Term> + ExactSizeIterator {
        self.monomials.iter().map(|m| &m.term)
    }

    /// Terms of `f - LC(f) * LT(f)`.
    pub fn tail_terms(&self) -> impl Iterator<Item = &Term> {
        self.monomials.iter().skip(1).map(|m| &m.term)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.monomials.iter().map(|m| m.term.degree()).max()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, m) in self.monomials.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.term.is_one() {
                write!(f, "{}", m.coeff)?;
            } else {
                write!(f, "{}*{}", m.coeff, m.term)?;
            }
        }
        Ok(())
    }
}

/// The polynomial ring `F_p[x1, ..., xn]` with a fixed term order.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    field: PrimeField,
    nvars: usize,
    order: TermOrder,
}

impl Ring {
    pub fn new(field: PrimeField, nvars: usize, order: TermOrder) -> Self {
        Self { field, nvars, order }
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    #[inline]
    pub fn order(&self) -> TermOrder {
        self.order
    }

    /// Same field and variables under another term order.
    pub fn with_order(&self, order: TermOrder) -> Ring {
        Ring { order, ..*self }
    }

    #[inline]
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn one_term(&self) -> Term {
        Term::one(self.nvars)
    }

    pub fn term(&self, exps: &[Exponent]) -> Result<Term> {
        if exps.len() != self.nvars {
            return Err(Error::VariableCount { expected: self.nvars, found: exps.len() });
        }
        Ok(Term::from_exponents(exps))
    }

    /// Sorts, merges equal terms and drops zero coefficients.
    pub fn normalize(&self, mut monomials: Vec<Monomial>) -> Polynomial {
        monomials.sort_by(|a, b| self.cmp(&b.term, &a.term));
        let mut out: Vec<Monomial> = Vec::with_capacity(monomials.len());
        for m in monomials {
            match out.last_mut() {
                Some(last) if last.term == m.term => last.coeff = self.field.add(last.coeff, m.coeff),
                _ => {
                    if out.last().is_some_and(|l| l.coeff.is_zero()) {
                        out.pop();
                    }
                    out.push(m);
                }
            }
        }
        if out.last().is_some_and(|l| l.coeff.is_zero()) {
            out.pop();
        }
        Polynomial { monomials: out }
    }

    /// Builds a polynomial from signed integer coefficients and exponent vectors.
    pub fn poly(&self, monomials: &[(i64, &[Exponent])]) -> Result<Polynomial> {
        let ms = monomials
            .iter()
            .map(|&(c, e)| Ok(Monomial { coeff: self.field.normalize(c), term: self.term(e)? }))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.normalize(ms))
    }

    pub fn constant(&self, c: Fp) -> Polynomial {
        self.normalize(vec![Monomial { coeff: c, term: self.one_term() }])
    }

    /// Parses a human-readable polynomial such as `3*x^2*y - z + 5` or
    /// `x1^2 - x2`. Variables are `x1..xn`, or `x, y, z, w` when `n <= 4`.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        let bad = |msg: &str| Error::Config(format!("cannot parse `{text}`: {msg}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut monomials = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (chunk, tail) = body.split_at(end);
            rest = tail;
            if chunk.is_empty() {
                return Err(bad("empty monomial"));
            }
            let mut coeff: i64 = 1;
            let mut exps = vec![0 as Exponent; self.nvars];
            for factor in chunk.split('*') {
                if let Ok(c) = factor.parse::<i64>() {
                    coeff = coeff.checked_mul(c).ok_or_else(|| bad("coefficient overflow"))?;
                    continue;
                }
                let (name, power) = match factor.split_once('^') {
                    Some((n, p)) => (n, p.parse::<Exponent>().map_err(|_| bad("bad exponent"))?),
                    None => (factor, 1),
                };
                let index = self.variable_index(name).ok_or_else(|| bad("unknown variable"))?;
                exps[index] = exps[index].checked_add(power).ok_or(Error::ExponentOverflow)?;
            }
            if negative {
                coeff = -coeff;
            }
            monomials.push(Monomial { coeff: self.field.normalize(coeff), term: Term::from_exponents(&exps) });
        }
        Ok(self.normalize(monomials))
    }

    fn variable_index(&self, name: &str) -> Option<usize> {
        if let Some(i) = name.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()) {
            return (1..=self.nvars).contains(&i).then(|| i - 1);
        }
        let i = ["x", "y", "z", "w"].iter().position(|&v| v == name)?;
        (self.nvars <= 4 && i < self.nvars).then_some(i)
    }

    pub fn coeff_of(&self, f: &Polynomial, t: &Term) -> Fp {
        f.monomials
            .binary_search_by(|m| self.cmp(t, &m.term))
            .map(|i| f.monomials[i].coeff)
            .unwrap_or(Fp::ZERO)
    }

    pub fn scale(&self, f: &Polynomial, c: Fp) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let monomials = f
            .monomials
            .iter()
            .map(|m| Monomial { coeff: self.field.mul(m.coeff, c), term: m.term.clone() })
            .collect();
        Polynomial { monomials }
    }

    /// `u * f` for a term `u`.
    pub fn mul_term(&self, f: &Polynomial, u: &Term) -> Polynomial {
        let monomials = f
            .monomials
            .iter()
            .map(|m| Monomial { coeff: m.coeff, term: m.term.mul(u) })
            .collect();
        Polynomial { monomials }
    }

    /// Scales `f` to leading coefficient one. Zero stays zero.
    pub fn monic(&self, f: &Polynomial) -> Polynomial {
        match f.lead_coeff() {
            None => Polynomial::zero(),
            Some(c) if c == Fp::ONE => f.clone(),
            Some(c) => self.scale(f, self.field.inv(c).expect("nonzero leading coefficient")),
        }
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        self.scale(f, self.field.neg(Fp::ONE))
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.sub_scaled(f, self.field.neg(Fp::ONE), g)
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.sub_scaled(f, Fp::ONE, g)
    }

    /// `f - c * g`.
    pub fn sub_scaled(&self, f: &Polynomial, c: Fp, g: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(f.len() + g.len());
        self.merge_sub(&mut out, &f.monomials, c, None, &g.monomials);
        Polynomial { monomials: out }
    }

    /// `f - c * u * g`, where every term of `u * g` is at most `f`'s term at
    /// position `start`; the monomials of `f` before `start` are kept verbatim.
    pub(crate) fn sub_scaled_mul_from(
        &self,
        f: &Polynomial,
        start: usize,
        c: Fp,
        u: &Term,
        g: &Polynomial,
    ) -> Polynomial {
        let mut out = Vec::with_capacity(f.len() + g.len());
        out.extend_from_slice(&f.monomials[..start]);
        self.merge_sub(&mut out, &f.monomials[start..], c, Some(u), &g.monomials);
        Polynomial { monomials: out }
    }

    /// Appends `a - c * u * b` to `out`.
    fn merge_sub(&self, out: &mut Vec<Monomial>, a: &[Monomial], c: Fp, u: Option<&Term>, b: &[Monomial]) {
        let f = &self.field;
        let nc = f.neg(c);
        let mut i = 0;
        let mut bi = b.iter().map(|m| Monomial {
            coeff: f.mul(m.coeff, nc),
            term: match u {
                Some(u) => m.term.mul(u),
                None => m.term.clone(),
            },
        });
        let mut next_b = if nc.is_zero() { None } else { bi.next() };
        while let Some(mb) = next_b.take() {
            while i < a.len() && self.cmp(&a[i].term, &mb.term) == Ordering::Greater {
                out.push(a[i].clone());
                i += 1;
            }
            if i < a.len() && a[i].term == mb.term {
                let s = f.add(a[i].coeff, mb.coeff);
                if !s.is_zero() {
                    out.push(Monomial { coeff: s, term: mb.term });
                }
                i += 1;
            } else {
                out.push(mb);
            }
            next_b = bi.next();
        }
        out.extend_from_slice(&a[i..]);
    }

    /// `f - sum c_i * g_i`, merging the operands pairwise.
    pub fn linear_combination(&self, f: &Polynomial, parts: &[(Fp, &Polynomial)]) -> Polynomial {
        let fld = &self.field;
        let mut layer: Vec<Vec<Monomial>> = Vec::with_capacity(parts.len().div_ceil(2) + 1);
        let mut it = parts.iter();
        layer.push({
            let mut out = Vec::with_capacity(f.len() + parts.first().map_or(0, |p| p.1.len()));
            match it.next() {
                Some(&(c, g)) => self.merge_sub(&mut out, &f.monomials, c, None, &g.monomials),
                None => out.extend_from_slice(&f.monomials),
            }
            out
        });
        while let Some(&(c1, g1)) = it.next() {
            let (n1, m1) = (fld.neg(c1), &g1.monomials);
            let mut out = Vec::new();
            match it.next() {
                Some(&(c2, g2)) => {
                    out.reserve(m1.len() + g2.len());
                    self.merge_scaled(&mut out, n1, m1, fld.neg(c2), &g2.monomials);
                }
                None => out.extend(m1.iter().map(|m| Monomial { coeff: fld.mul(m.coeff, n1), term: m.term.clone() })),
            }
            layer.push(out);
        }
        while layer.len() > 1 {
            let mut next = Vec::with_capacity(layer.len().div_ceil(2));
            let mut it = layer.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => {
                        let mut out = Vec::with_capacity(a.len() + b.len());
                        self.merge_scaled(&mut out, Fp::ONE, &a, Fp::ONE, &b);
                        next.push(out);
                    }
                    None => next.push(a),
                }
            }
            layer = next;
        }
        Polynomial { monomials: layer.pop().unwrap_or_default() }
    }

    /// Appends `ca * a + cb * b` to `out`.
    fn merge_scaled(&self, out: &mut Vec<Monomial>, ca: Fp, a: &[Monomial], cb: Fp, b: &[Monomial]) {
        let f = &self.field;
        let scale = |c: Fp, m: &Monomial| Monomial { coeff: if c == Fp::ONE { m.coeff } else { f.mul(m.coeff, c) }, term: m.term.clone() };
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.cmp(&a[i].term, &b[j].term) {
                Ordering::Greater => {
                    out.push(scale(ca, &a[i]));
                    i += 1;
                }
                Ordering::Less => {
                    out.push(scale(cb, &b[j]));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(f.mul(a[i].coeff, ca), f.mul(b[j].coeff, cb));
                    if !s.is_zero() {
                        out.push(Monomial { coeff: s, term: a[i].term.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().map(|m| scale(ca, m)));
        out.extend(b[j..].iter().map(|m| scale(cb, m)));
    }

    /// Evaluates `f` at a point.
    pub fn eval(&self, f: &Polynomial, point: &[Fp]) -> Result<Fp> {
        if point.len() != self.nvars {
            return Err(Error::VariableCount { expected: self.nvars, found: point.len() });
        }
        let fld = &self.field;
        let mut acc = Fp::ZERO;
        for m in &f.monomials {
            let mut v = m.coeff;
            for (x, &e) in point.iter().zip(m.term.exponents()) {
                if e > 0 {
                    v = fld.mul(v, fld.pow(*x, e as u64));
                }
            }
            acc = fld.add(acc, v);
        }
        Ok(acc)
    }
}
