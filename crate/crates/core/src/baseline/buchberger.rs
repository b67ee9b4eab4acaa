use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::m5gb::{RunStats, Solution};
use crate::poly::{Polynomial, Ring};

/// Textbook Buchberger with the normal selection strategy (smallest lcm
/// degree first, then creation order) and only the coprime-leading-term
/// criterion. Returns a Gröbner basis, not necessarily reduced.
pub fn buchberger(ring: &Ring, input: &[Polynomial]) -> Result<Vec<Polynomial>> {
    Ok(buchberger_run(ring, input)?.basis)
}

/// As [`buchberger`], with counters. Coprime pairs count as syzygy skips.
pub fn buchberger_run(ring: &Ring, input: &[Polynomial]) -> Result<Solution> {
    let start = Instant::now();
    if input.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(i) = input.iter().position(Polynomial::is_zero) {
        return Err(Error::ZeroInput(i));
    }
    let mut stats = RunStats::default();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pairs: BinaryHeap<Reverse<(u32, u64, usize, usize)>> = BinaryHeap::new();
    let mut seq = 0u64;

    let mut add = |g: Polynomial, basis: &mut Vec<Polynomial>, pairs: &mut BinaryHeap<_>, stats: &mut RunStats| {
        let k = basis.len();
        let lg = g.lead_term().expect("nonzero").clone();
        for (j, h) in basis.iter().enumerate() {
            let lh = h.lead_term().expect("nonzero");
            if lg.is_coprime(lh) {
                stats.spairs_skipped_syzygy += 1;
                continue;
            }
            pairs.push(Reverse((lg.lcm(lh).degree(), seq, j, k)));
            seq += 1;
        }
        basis.push(g);
    };

    for f in input {
        add(ring.monic(f), &mut basis, &mut pairs, &mut stats);
    }
    while let Some(Reverse((_, _, i, j))) = pairs.pop() {
        stats.spairs_processed += 1;
        let s = ring.spoly(&basis[i], &basis[j]);
        let r = ring.reduce_ordinary_counted(&s, &basis, &mut stats.reduction_steps);
        if r.is_zero() {
            stats.zero_reductions += 1;
        } else {
            add(ring.monic(&r), &mut basis, &mut pairs, &mut stats);
        }
    }
    stats.basis_size = basis.len();
    stats.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(Solution { basis, stats })
}
