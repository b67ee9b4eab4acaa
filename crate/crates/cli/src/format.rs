//! The plain-text system and basis file format.
//!
//! ```text
//! p 101 vars 2
//! # comment
//! 1*x1^2 + 100*x2
//! 5
//! ```

use m5gb_core::{Fp, Monomial, Polynomial, PrimeField, Ring, Term, TermOrder};
use m5gb_core::poly::Exponent;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

/// A parsed system file. Polynomials are normalized under grevlex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemFile {
    pub ring: Ring,
    pub polys: Vec<Polynomial>,
}

impl SystemFile {
    pub fn prime(&self) -> u64 {
        self.ring.field().modulus() as u64
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    /// The same polynomials normalized under `order`.
    pub fn in_order(&self, order: TermOrder) -> (Ring, Vec<Polynomial>) {
        let ring = self.ring.with_order(order);
        let polys = self.polys.iter().map(|f| reorder(&ring, f)).collect();
        (ring, polys)
    }
}

/// Re-sorts the monomials of `f` under the order of `ring`.
pub fn reorder(ring: &Ring, f: &Polynomial) -> Polynomial {
    ring.normalize(f.monomials().to_vec())
}

pub fn parse_system(text: &str) -> Result<SystemFile, ParseError> {
    let mut ring = None;
    let mut polys = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| ParseError { line: k + 1, msg };
        match ring {
            None => ring = Some(parse_header(line).map_err(err)?),
            Some(ref r) => polys.push(parse_poly(r, line).map_err(err)?),
        }
    }
    let ring = ring.ok_or(ParseError { line: 1, msg: "missing header `p <prime> vars <n>`".into() })?;
    Ok(SystemFile { ring, polys })
}

fn parse_header(line: &str) -> Result<Ring, String> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    let [p_kw, p, vars_kw, n] = tokens[..] else {
        return Err(format!("expected `p <prime> vars <n>`, found `{line}`"));
    };
    if p_kw != "p" || vars_kw != "vars" {
        return Err(format!("expected `p <prime> vars <n>`, found `{line}`"));
    }
    let p: u64 = p.parse().map_err(|_| format!("bad modulus `{p}`"))?;
    let field = PrimeField::new(p).map_err(|e| e.to_string())?;
    let n: usize = n.parse().map_err(|_| format!("bad variable count `{n}`"))?;
    if n == 0 {
        return Err("variable count must be positive".into());
    }
    Ok(Ring::new(field, n, TermOrder::GrevLex))
}

fn parse_poly(ring: &Ring, line: &str) -> Result<Polynomial, String> {
    if line == "0" {
        return Ok(Polynomial::zero());
    }
    let monomials = line.split('+').map(|m| parse_monomial(ring, m.trim())).collect::<Result<Vec<_>, _>>()?;
    Ok(ring.normalize(monomials))
}

fn parse_monomial(ring: &Ring, text: &str) -> Result<Monomial, String> {
    let malformed = || format!("malformed monomial `{text}`");
    if text.is_empty() {
        return Err(malformed());
    }
    let p = ring.field().modulus() as u64;
    let mut factors = text.split('*').map(str::trim).peekable();
    let mut coeff = 1u64;
    if let Some(first) = factors.peek() {
        if first.bytes().all(|b| b.is_ascii_digit()) {
            coeff = first.parse().map_err(|_| malformed())?;
            if coeff == 0 || coeff >= p {
                return Err(format!("coefficient {coeff} outside [1, {p})"));
            }
            factors.next();
        }
    }
    let mut exps = vec![0 as Exponent; ring.nvars()];
    for factor in factors {
        let (name, power) = match factor.split_once('^') {
            Some((name, e)) => (name, e.parse::<Exponent>().map_err(|_| malformed())?),
            None => (factor, 1),
        };
        let index: usize = name
            .strip_prefix('x')
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .ok_or_else(malformed)?
            .parse()
            .map_err(|_| malformed())?;
        if !(1..=ring.nvars()).contains(&index) {
            return Err(format!("unknown variable x{index} (vars {})", ring.nvars()));
        }
        exps[index - 1] = exps[index - 1].checked_add(power).ok_or_else(|| "exponent overflow".to_string())?;
    }
    Ok(Monomial { coeff: ring.field().element(coeff), term: Term::from_exponents(&exps) })
}

/// Writes a system file; monomials come out in descending grevlex order.
pub fn format_system(ring: &Ring, polys: &[Polynomial], comments: &[String]) -> String {
    let grevlex = ring.with_order(TermOrder::GrevLex);
    let mut out = format!("p {} vars {}\n", ring.field().modulus(), ring.nvars());
    for c in comments {
        out.push_str(&format!("# {c}\n"));
    }
    for f in polys {
        out.push_str(&format!("{}\n", reorder(&grevlex, f)));
    }
    out
}

/// Writes a basis file: monic elements sorted ascending by leading term
/// under the order of `ring`.
pub fn format_basis(ring: &Ring, basis: &[Polynomial], comments: &[String]) -> String {
    let mut gs: Vec<Polynomial> = basis.iter().filter(|g| !g.is_zero()).map(|g| ring.monic(&reorder(ring, g))).collect();
    gs.sort_by(|a, b| ring.cmp(a.lead_term().unwrap(), b.lead_term().unwrap()));
    format_system(ring, &gs, comments)
}

/// A planted point as one line of space-separated field elements.
pub fn format_point(point: &[Fp]) -> String {
    let values: Vec<String> = point.iter().map(Fp::to_string).collect();
    format!("{}\n", values.join(" "))
}
