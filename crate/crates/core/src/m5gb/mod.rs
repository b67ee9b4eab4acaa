//! The M5GB solver: a rewrite-style signature algorithm whose reduction
//! routine keeps a cache of tail-reduced reductors, invalidated lazily through
//! generations and signature flags.

mod engine;
mod memo;
mod reduce;
mod stats;

use std::time::Instant;

use crate::error::Result;
use crate::poly::{Polynomial, Ring};
use crate::sig::SigOrderKind;

pub(crate) use engine::run;
pub use engine::{Basis, RoundReducer};
pub(crate) use memo::DivisorMemo;
pub use engine::SyzygySet;
pub use reduce::{Reductor, ReductorCache};
pub use stats::RunStats;

/// Solver options shared by the signature algorithms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverConfig {
    pub sig_order: SigOrderKind,
    /// Runs the per-round and per-reduction consistency checks and fails with
    /// [`crate::Error::Invariant`] on the first violation.
    pub check_invariants: bool,
}

impl SolverConfig {
    pub fn new(sig_order: SigOrderKind) -> Self {
        Self { sig_order, check_invariants: false }
    }

    pub fn checked(mut self) -> Self {
        self.check_invariants = true;
        self
    }
}

/// A basis together with the counters of the run that produced it.
#[derive(Clone, Debug)]
pub struct Solution {
    pub basis: Vec<Polynomial>,
    pub stats: RunStats,
}

/// Computes a Gröbner basis of the ideal spanned by `input` with M5GB.
///
/// The returned basis is the image of the signature basis in insertion order;
/// it is neither minimal nor reduced.
pub fn m5gb_run(ring: &Ring, input: &[Polynomial], cfg: &SolverConfig) -> Result<Solution> {
    on_large_stack(|| {
        let start = Instant::now();
        let mut reducer = ReductorCache::new(cfg.check_invariants);
        let mut sol = run(ring, input, cfg, &mut reducer)?;
        sol.stats.reductors_built = reducer.built();
        sol.stats.reductor_reuses = reducer.reuses();
        sol.stats.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        Ok(sol)
    })
}

const SOLVER_STACK: usize = 256 << 20;

/// Runs `f` on a scoped thread with a stack large enough for deep reductor
/// recursion.
pub(crate) fn on_large_stack<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(SOLVER_STACK)
            .spawn_scoped(scope, f)
            .expect("spawn solver thread")
            .join()
            .unwrap_or_else(|e| std::panic::resume_unwind(e))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::buchberger;
    use crate::field::PrimeField;
    use crate::gensys::gen_dense_quadratic;
    use crate::poly::TermOrder;
    use crate::verify::{is_groebner, reduced_gb_equal};
    use crate::Error;

    fn ring(n: usize) -> Ring {
        Ring::new(PrimeField::new(101).unwrap(), n, TermOrder::GrevLex)
    }

    fn checked(kind: SigOrderKind) -> SolverConfig {
        SolverConfig::new(kind).checked()
    }

    #[test]
    fn single_generator() {
        let r = ring(2);
        let f = r.parse("x").unwrap();
        for kind in [SigOrderKind::Pot, SigOrderKind::Top] {
            let sol = m5gb_run(&r, std::slice::from_ref(&f), &checked(kind)).unwrap();
            assert_eq!(sol.basis, vec![f.clone()]);
            assert_eq!(sol.stats.spairs_processed, 1);
            assert_eq!(sol.stats.basis_size, 1);
            assert_eq!(sol.stats.zero_reductions, 0);
        }
    }

    #[test]
    fn stable_pair_is_its_own_basis() {
        let r = ring(2);
        let input = [r.parse("x^2 - y").unwrap(), r.parse("y^2 - x").unwrap()];
        for kind in [SigOrderKind::Pot, SigOrderKind::Top] {
            let sol = m5gb_run(&r, &input, &checked(kind)).unwrap();
            assert_eq!(r.interreduce(&sol.basis), r.interreduce(&input));
        }
    }

    #[test]
    fn dense_instance_matches_oracle() {
        let sys = gen_dense_quadratic(5, 10, 101, 1).unwrap();
        let oracle = buchberger(&sys.ring, &sys.polys).unwrap();
        for kind in [SigOrderKind::Pot, SigOrderKind::Top] {
            let sol = m5gb_run(&sys.ring, &sys.polys, &checked(kind)).unwrap();
            assert!(is_groebner(&sys.ring, &sol.basis));
            assert!(reduced_gb_equal(&sys.ring, &sol.basis, &oracle));
            assert_eq!(sol.stats.basis_size, sol.basis.len());
        }
    }

    #[test]
    fn runs_are_deterministic() {
        let sys = gen_dense_quadratic(5, 8, 101, 3).unwrap();
        let cfg = SolverConfig::new(SigOrderKind::Top);
        let a = m5gb_run(&sys.ring, &sys.polys, &cfg).unwrap();
        let b = m5gb_run(&sys.ring, &sys.polys, &cfg).unwrap();
        assert_eq!(a.basis, b.basis);
        assert_eq!(
            RunStats { wall_time_ms: 0.0, ..a.stats },
            RunStats { wall_time_ms: 0.0, ..b.stats }
        );
    }

    #[test]
    fn rejects_bad_input() {
        let r = ring(2);
        let cfg = SolverConfig::default();
        assert_eq!(m5gb_run(&r, &[], &cfg).unwrap_err(), Error::EmptyInput);
        let input = [r.parse("x").unwrap(), Polynomial::zero()];
        assert_eq!(m5gb_run(&r, &input, &cfg).unwrap_err(), Error::ZeroInput(1));
    }
}
