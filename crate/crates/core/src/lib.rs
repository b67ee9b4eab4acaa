//! Gröbner bases over prime fields with the M5GB signature algorithm, an
//! SB-style signature baseline and a Buchberger oracle.
//!
//! ```
//! use m5gb_core::{m5gb_run, PrimeField, Ring, SolverConfig, TermOrder};
//!
//! let ring = Ring::new(PrimeField::new(101)?, 2, TermOrder::GrevLex);
//! let input = [ring.parse("x^2 - y")?, ring.parse("x*y - 1")?];
//! let sol = m5gb_run(&ring, &input, &SolverConfig::default())?;
//! let reduced = ring.interreduce(&sol.basis);
//! assert_eq!(reduced.len(), 3);
//! # Ok::<(), m5gb_core::Error>(())
//! ```

pub mod baseline;
pub mod bench;
mod error;
pub mod field;
pub mod gensys;
pub mod m5gb;
pub mod poly;
pub mod sig;
pub mod verify;

use std::fmt;
use std::str::FromStr;

pub use baseline::{buchberger, buchberger_run, sb_run};
pub use error::{Error, Result};
pub use field::{Fp, PrimeField, DEFAULT_PRIME};
pub use m5gb::{m5gb_run, RunStats, Solution, SolverConfig};
pub use poly::{Monomial, Polynomial, Ring, Term, TermOrder};
pub use sig::{SigOrder, SigOrderKind, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    M5gb,
    Sb,
    Buchberger,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::M5gb, Algorithm::Sb, Algorithm::Buchberger];
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::M5gb => "m5gb",
            Algorithm::Sb => "sb",
            Algorithm::Buchberger => "buchberger",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m5gb" => Ok(Algorithm::M5gb),
            "sb" => Ok(Algorithm::Sb),
            "buchberger" => Ok(Algorithm::Buchberger),
            other => Err(Error::Config(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// Runs `alg`; the signature order in `cfg` is ignored by Buchberger.
pub fn solve(alg: Algorithm, ring: &Ring, input: &[Polynomial], cfg: &SolverConfig) -> Result<Solution> {
    match alg {
        Algorithm::M5gb => m5gb_run(ring, input, cfg),
        Algorithm::Sb => sb_run(ring, input, cfg),
        Algorithm::Buchberger => buchberger_run(ring, input),
    }
}
