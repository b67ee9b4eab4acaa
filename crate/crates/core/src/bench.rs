//! The benchmark protocol: seeded dense quadratic instances over a range of
//! sizes, solved by several algorithms, reported as CSV with per-size means.

use std::alloc::{GlobalAlloc, Layout, System as SystemAlloc};
use std::fmt;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gensys::gen_dense_quadratic;
use crate::m5gb::{RunStats, SolverConfig};
use crate::sig::SigOrderKind;
use crate::verify::{reduced_gb_equal, vanishes_at};
use crate::{solve, Algorithm};

pub const CSV_HEADER: &str = "n,m,p,seed,algorithm,wall_time_ms,basis_size,time_per_element_ms,\
reduction_steps,spairs_processed,spairs_skipped_syzygy,spairs_skipped_duplicate,zero_reductions";

/// How the polynomial count follows the variable count.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MRule {
    Fixed(usize),
    /// `m = round(k * n)`, written `kN`.
    Multiple(f64),
}

impl MRule {
    pub fn m_for(&self, n: usize) -> usize {
        match *self {
            MRule::Fixed(m) => m,
            MRule::Multiple(k) => ((k * n as f64).round() as usize).max(1),
        }
    }
}

impl FromStr for MRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("invalid m rule `{s}`; expected an integer or a form like 2N"));
        let s = s.trim();
        if let Some(k) = s.strip_suffix(['N', 'n']) {
            let k = if k.is_empty() { 1.0 } else { k.parse::<f64>().map_err(|_| bad())? };
            if !(k.is_finite() && k > 0.0) {
                return Err(bad());
            }
            return Ok(MRule::Multiple(k));
        }
        match s.parse::<usize>() {
            Ok(m) if m > 0 => Ok(MRule::Fixed(m)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for MRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MRule::Fixed(m) => write!(f, "{m}"),
            MRule::Multiple(k) => write!(f, "{k}N"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub n_range: RangeInclusive<usize>,
    pub m_rule: MRule,
    pub p: u64,
    pub reps: usize,
    pub algorithms: Vec<Algorithm>,
    pub seed_base: u64,
    pub sig_order: SigOrderKind,
    /// Worker threads; 1 runs the instances sequentially.
    pub parallel: usize,
    /// Checks that all algorithms of an instance agree on the reduced basis.
    pub cross_check: bool,
    /// Samples the counting allocator around each run; only meaningful with
    /// `parallel == 1` and [`CountingAlloc`] installed as global allocator.
    pub track_memory: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            n_range: 5..=10,
            m_rule: MRule::Multiple(2.0),
            p: 101,
            reps: 10,
            algorithms: vec![Algorithm::M5gb, Algorithm::Sb],
            seed_base: 0,
            sig_order: SigOrderKind::Top,
            parallel: 1,
            cross_check: false,
            track_memory: false,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.reps == 0 {
            return Err(Error::Config("reps must be at least 1".into()));
        }
        if self.n_range.is_empty() || *self.n_range.start() == 0 {
            return Err(Error::Config("n range must be nonempty and start at 1 or above".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithms selected".into()));
        }
        if self.parallel == 0 {
            return Err(Error::Config("parallel must be at least 1".into()));
        }
        Ok(())
    }
}

/// One solver run on one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub p: u64,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub stats: RunStats,
    pub peak_bytes: Option<usize>,
}

impl BenchRow {
    pub fn time_per_element_ms(&self) -> f64 {
        self.stats.wall_time_ms / self.stats.basis_size.max(1) as f64
    }
}

/// Arithmetic means over the instances of one `(n, m, algorithm)` group.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchMean {
    pub n: usize,
    pub m: usize,
    pub p: u64,
    pub algorithm: Algorithm,
    pub wall_time_ms: f64,
    pub basis_size: f64,
    pub time_per_element_ms: f64,
    pub reduction_steps: f64,
    pub spairs_processed: f64,
    pub spairs_skipped_syzygy: f64,
    pub spairs_skipped_duplicate: f64,
    pub zero_reductions: f64,
    pub peak_bytes: Option<f64>,
}

#[derive(Clone, Debug, Default)]
pub struct BenchTable {
    pub rows: Vec<BenchRow>,
    pub means: Vec<BenchMean>,
}

impl BenchTable {
    pub fn mean(&self, n: usize, algorithm: Algorithm) -> Option<&BenchMean> {
        self.means.iter().find(|a| a.n == n && a.algorithm == algorithm)
    }

    pub fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for r in &self.rows {
            let s = &r.stats;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.n,
                r.m,
                r.p,
                r.seed,
                r.algorithm,
                s.wall_time_ms,
                s.basis_size,
                r.time_per_element_ms(),
                s.reduction_steps,
                s.spairs_processed,
                s.spairs_skipped_syzygy,
                s.spairs_skipped_duplicate,
                s.zero_reductions
            )?;
        }
        for a in &self.means {
            writeln!(
                out,
                "{},{},{},mean,{},{},{},{},{},{},{},{},{}",
                a.n,
                a.m,
                a.p,
                a.algorithm,
                a.wall_time_ms,
                a.basis_size,
                a.time_per_element_ms,
                a.reduction_steps,
                a.spairs_processed,
                a.spairs_skipped_syzygy,
                a.spairs_skipped_duplicate,
                a.zero_reductions
            )?;
        }
        Ok(())
    }
}

/// Wall time rounded to whole microseconds, so that the CSV value divided
/// by the basis size reproduces the time-per-element column exactly.
fn round_micros(ms: f64) -> f64 {
    (ms * 1e3).round() / 1e3
}

fn run_instance(cfg: &BenchConfig, n: usize, seed: u64) -> Result<Vec<BenchRow>> {
    let m = cfg.m_rule.m_for(n);
    let fail = |reason: String| Error::Instance { seed, reason };
    let sys = gen_dense_quadratic(n, m, cfg.p, seed).map_err(|e| fail(e.to_string()))?;
    if !vanishes_at(&sys.ring, &sys.polys, &sys.solution)? {
        return Err(fail("generated system misses its planted point".into()));
    }
    let solver_cfg = SolverConfig::new(cfg.sig_order);
    let mut rows = Vec::with_capacity(cfg.algorithms.len());
    let mut bases = Vec::with_capacity(cfg.algorithms.len());
    for &alg in &cfg.algorithms {
        let before = cfg.track_memory.then(CountingAlloc::reset_peak);
        let mut sol = solve(alg, &sys.ring, &sys.polys, &solver_cfg).map_err(|e| fail(format!("{alg}: {e}")))?;
        let peak_bytes = before.map(|b| CountingAlloc::peak().saturating_sub(b));
        sol.stats.wall_time_ms = round_micros(sol.stats.wall_time_ms);
        rows.push(BenchRow { n, m, p: cfg.p, seed, algorithm: alg, stats: sol.stats, peak_bytes });
        bases.push(sol.basis);
    }
    if cfg.cross_check {
        for (k, b) in bases.iter().enumerate().skip(1) {
            if !reduced_gb_equal(&sys.ring, &bases[0], b) {
                return Err(Error::Disagreement {
                    seed,
                    first: cfg.algorithms[0].to_string(),
                    second: cfg.algorithms[k].to_string(),
                });
            }
        }
    }
    Ok(rows)
}

fn aggregate(rows: &[BenchRow]) -> BenchMean {
    let k = rows.len() as f64;
    let mean = |f: &dyn Fn(&BenchRow) -> f64| rows.iter().map(f).sum::<f64>() / k;
    let first = &rows[0];
    BenchMean {
        n: first.n,
        m: first.m,
        p: first.p,
        algorithm: first.algorithm,
        wall_time_ms: mean(&|r| r.stats.wall_time_ms),
        basis_size: mean(&|r| r.stats.basis_size as f64),
        time_per_element_ms: mean(&|r| r.time_per_element_ms()),
        reduction_steps: mean(&|r| r.stats.reduction_steps as f64),
        spairs_processed: mean(&|r| r.stats.spairs_processed as f64),
        spairs_skipped_syzygy: mean(&|r| r.stats.spairs_skipped_syzygy as f64),
        spairs_skipped_duplicate: mean(&|r| r.stats.spairs_skipped_duplicate as f64),
        zero_reductions: mean(&|r| r.stats.zero_reductions as f64),
        peak_bytes: rows.iter().all(|r| r.peak_bytes.is_some()).then(|| mean(&|r| r.peak_bytes.unwrap() as f64)),
    }
}

/// Runs every `(n, seed)` instance with every configured algorithm. Seeds are
/// `seed_base + rep`. Rows come out ordered by `n`, seed and algorithm, then
/// one mean row per `(n, m, algorithm)`.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchTable> {
    cfg.validate()?;
    let jobs: Vec<(usize, u64)> = cfg
        .n_range
        .clone()
        .flat_map(|n| (0..cfg.reps as u64).map(move |r| (n, cfg.seed_base + r)))
        .collect();
    let results: Vec<Result<Vec<BenchRow>>> = if cfg.parallel == 1 {
        jobs.iter().map(|&(n, seed)| run_instance(cfg, n, seed)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.parallel)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?;
        pool.install(|| jobs.par_iter().map(|&(n, seed)| run_instance(cfg, n, seed)).collect())
    };
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    let mut means = Vec::new();
    for n in cfg.n_range.clone() {
        for &alg in &cfg.algorithms {
            let group: Vec<BenchRow> = rows.iter().filter(|r| r.n == n && r.algorithm == alg).cloned().collect();
            if !group.is_empty() {
                means.push(aggregate(&group));
            }
        }
    }
    Ok(BenchTable { rows, means })
}

static ALLOCATED: AtomicUsize = AtomicUsize::new(0);
static PEAK: AtomicUsize = AtomicUsize::new(0);

/// A global allocator wrapper that tracks live and peak heap bytes.
/// Install it in a binary with `#[global_allocator]`.
pub struct CountingAlloc;

impl CountingAlloc {
    pub fn allocated() -> usize {
        ALLOCATED.load(AtomicOrdering::Relaxed)
    }

    pub fn peak() -> usize {
        PEAK.load(AtomicOrdering::Relaxed)
    }

    /// Resets the peak to the current live size and returns that size.
    pub fn reset_peak() -> usize {
        let now = Self::allocated();
        PEAK.store(now, AtomicOrdering::Relaxed);
        now
    }
}

unsafe impl GlobalAlloc for CountingAlloc {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        let p = SystemAlloc.alloc(layout);
        if !p.is_null() {
            let now = ALLOCATED.fetch_add(layout.size(), AtomicOrdering::Relaxed) + layout.size();
            PEAK.fetch_max(now, AtomicOrdering::Relaxed);
        }
        p
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        SystemAlloc.dealloc(ptr, layout);
        ALLOCATED.fetch_sub(layout.size(), AtomicOrdering::Relaxed);
    }
}
