use std::time::Instant;

use crate::error::Result;
use crate::m5gb::{on_large_stack, run, Basis, DivisorMemo, RoundReducer, RunStats, Solution, SolverConfig};
use crate::poly::{Polynomial, Ring};
use crate::sig::Signature;

/// Plain regular Sig-reduction: repeatedly cancel the largest term that has a
/// basis multiple of signature below `s`.
struct RegularReducer {
    memo: DivisorMemo,
}

impl RoundReducer for RegularReducer {
    fn reduce(&mut self, basis: &Basis, mut f: Polynomial, s: &Signature, stats: &mut RunStats) -> Result<Polynomial> {
        let mut pos = 0;
        while pos < f.len() {
            let mono = &f.monomials()[pos];
            match self.memo.flag(basis, &mono.term) {
                Some((i, sig)) if basis.order.lt(&sig, s) => {
                    let u = mono.term.quot_unchecked(basis.lead(i));
                    let c = mono.coeff;
                    f = basis.ring.sub_scaled_mul_from(&f, pos, c, &u, &basis.elems[i].poly);
                    stats.reduction_steps += 1;
                }
                _ => pos += 1,
            }
        }
        Ok(f)
    }
}

/// Computes a Gröbner basis with the SB-style baseline.
pub fn sb_run(ring: &Ring, input: &[Polynomial], cfg: &SolverConfig) -> Result<Solution> {
    on_large_stack(|| {
        let start = Instant::now();
        let mut reducer = RegularReducer { memo: DivisorMemo::new() };
        let mut sol = run(ring, input, cfg, &mut reducer)?;
        sol.stats.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
        Ok(sol)
    })
}
