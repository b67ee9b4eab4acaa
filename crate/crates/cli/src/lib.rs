//! Argument handling and subcommands of the `m5gb` binary.

pub mod format;

use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use m5gb_core::bench::{run_benchmark, BenchConfig, CountingAlloc, MRule};
use m5gb_core::gensys::{gen_dense_quadratic, gen_random_system};
use m5gb_core::{solve, verify, Algorithm, Polynomial, Ring, SigOrderKind, SolverConfig, TermOrder};
use thiserror::Error;

use crate::format::{format_basis, format_point, format_system, parse_system, ParseError, SystemFile};

#[derive(Debug, Parser)]
#[command(name = "m5gb", version, about = "Gröbner bases over prime fields with M5GB, SB and Buchberger")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a random system with a planted solution.
    Gen(GenArgs),
    /// Compute a Gröbner basis of a system file.
    Solve(SolveArgs),
    /// Check that a basis is a Gröbner basis containing the system.
    Verify(VerifyArgs),
    /// Run the dense quadratic benchmark sweep and write a CSV table.
    Bench(BenchArgs),
    /// Run all algorithms on one system and compare their reduced bases.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
pub enum SystemKind {
    /// Every monomial of degree at most 2.
    #[default]
    Dense,
    /// A few random monomials of degree at most 2 per polynomial.
    Sparse,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 101)]
    pub p: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub kind: SystemKind,
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
    /// Also write the planted point, one line of values for x1..xn.
    #[arg(long)]
    pub emit_solution: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, default_value_t = Algorithm::M5gb)]
    pub alg: Algorithm,
    #[arg(long, default_value_t = TermOrder::GrevLex)]
    pub order: TermOrder,
    #[arg(long, default_value_t = SigOrderKind::Pot)]
    pub sigorder: SigOrderKind,
    #[arg(short = 'i', long = "input")]
    pub input: PathBuf,
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
    /// Write the run statistics as JSON.
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// Emit the reduced Gröbner basis.
    #[arg(long)]
    pub reduced: bool,
    /// Enable the solver's internal invariant assertions.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(short = 'i', long = "input")]
    pub input: PathBuf,
    #[arg(short = 'b', long = "basis")]
    pub basis: PathBuf,
    #[arg(long, default_value_t = TermOrder::GrevLex)]
    pub order: TermOrder,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Inclusive range of variable counts, `A:B`.
    #[arg(long, value_parser = parse_range)]
    pub n_range: RangeInclusive<usize>,
    /// Equation count: a fixed number or a multiple of N such as `2N`.
    #[arg(long, default_value = "2N")]
    pub m_rule: MRule,
    #[arg(long, default_value_t = 10)]
    pub reps: usize,
    #[arg(long, value_delimiter = ',', default_value = "m5gb,sb")]
    pub algs: Vec<Algorithm>,
    #[arg(long)]
    pub csv: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub parallel: usize,
    /// Verify that all algorithms agree on every instance.
    #[arg(long)]
    pub cross_check: bool,
    #[arg(long, default_value_t = 101)]
    pub p: u64,
    #[arg(long, default_value_t = 0)]
    pub seed_base: u64,
    #[arg(long, default_value_t = SigOrderKind::Top)]
    pub sigorder: SigOrderKind,
    /// Report approximate peak heap per run on stderr.
    #[arg(long)]
    pub track_memory: bool,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(short = 'i', long = "input")]
    pub input: PathBuf,
    #[arg(long, default_value_t = TermOrder::GrevLex)]
    pub order: TermOrder,
    #[arg(long, default_value_t = SigOrderKind::Pot)]
    pub sigorder: SigOrderKind,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected A:B, found `{s}`"))?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad range start `{a}`"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad range end `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}:{b}"));
    }
    Ok(a..=b)
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Solver(m5gb_core::Error),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Verification(_) => ExitCode::from(1),
            _ => ExitCode::from(2),
        }
    }
}

impl From<m5gb_core::Error> for CliError {
    fn from(e: m5gb_core::Error) -> Self {
        match e {
            m5gb_core::Error::Disagreement { .. } => CliError::Verification(e.to_string()),
            m5gb_core::Error::Config(msg) => CliError::Usage(msg),
            other => CliError::Solver(other),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.into(), source })
}

fn read_system(path: &Path) -> CliResult<SystemFile> {
    parse_system(&read(path)?).map_err(|source| CliError::Parse { path: path.into(), source })
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Solve(a) => solve_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Bench(a) => bench(a),
        Command::Compare(a) => compare(a),
    }
}

fn gen(a: GenArgs) -> CliResult<()> {
    let sys = match a.kind {
        SystemKind::Dense => gen_dense_quadratic(a.n, a.m, a.p, a.seed)?,
        SystemKind::Sparse => gen_random_system(a.n, a.m, a.p, a.seed)?,
    };
    let kind = format!("{:?}", a.kind).to_lowercase();
    let comment = format!("{kind} n={} m={} seed={}", a.n, a.m, a.seed);
    write(&a.output, &format_system(&sys.ring, &sys.polys, &[comment]))?;
    if let Some(path) = a.emit_solution {
        write(&path, &format_point(&sys.solution))?;
    }
    Ok(())
}

fn peak_report(label: &str, before: usize) {
    let bytes = CountingAlloc::peak().saturating_sub(before);
    eprintln!("{label}: peak heap about {:.1} MiB", bytes as f64 / (1 << 20) as f64);
}

fn solve_cmd(a: SolveArgs) -> CliResult<()> {
    let file = read_system(&a.input)?;
    let (ring, polys) = file.in_order(a.order);
    let cfg = SolverConfig { sig_order: a.sigorder, check_invariants: a.check };
    let before = CountingAlloc::reset_peak();
    let sol = solve(a.alg, &ring, &polys, &cfg)?;
    peak_report(&a.alg.to_string(), before);
    let basis = if a.reduced { ring.interreduce(&sol.basis) } else { sol.basis };
    let comment = format!("{} basis, order {}, {} elements", a.alg, a.order, basis.len());
    write(&a.output, &format_basis(&ring, &basis, &[comment]))?;
    if let Some(path) = a.stats {
        let json = serde_json::to_string_pretty(&sol.stats).expect("stats serialize");
        write(&path, &format!("{json}\n"))?;
    }
    Ok(())
}

fn same_ring(a: &SystemFile, b: &SystemFile) -> CliResult<()> {
    if (a.prime(), a.nvars()) != (b.prime(), b.nvars()) {
        return Err(CliError::Usage(format!(
            "system is over p {} vars {} but basis over p {} vars {}",
            a.prime(),
            a.nvars(),
            b.prime(),
            b.nvars()
        )));
    }
    Ok(())
}

fn verify_cmd(a: VerifyArgs) -> CliResult<()> {
    let system = read_system(&a.input)?;
    let basis = read_system(&a.basis)?;
    same_ring(&system, &basis)?;
    let (ring, polys) = system.in_order(a.order);
    let (_, gens) = basis.in_order(a.order);
    if !verify::is_groebner(&ring, &gens) {
        return Err(CliError::Verification("basis is not a Gröbner basis".into()));
    }
    if let Some(k) = polys.iter().position(|f| !ring.reduces_to_zero(f, &gens)) {
        return Err(CliError::Verification(format!("input polynomial {} does not reduce to zero", k + 1)));
    }
    println!("ok: {} elements form a Gröbner basis of the system", gens.len());
    Ok(())
}

fn bench(a: BenchArgs) -> CliResult<()> {
    let cfg = BenchConfig {
        n_range: a.n_range,
        m_rule: a.m_rule,
        p: a.p,
        reps: a.reps,
        algorithms: a.algs,
        seed_base: a.seed_base,
        sig_order: a.sigorder,
        parallel: a.parallel,
        cross_check: a.cross_check,
        track_memory: a.track_memory,
    };
    let table = run_benchmark(&cfg)?;
    let mut csv = Vec::new();
    table.write_csv(&mut csv).expect("writing to memory");
    write(&a.csv, std::str::from_utf8(&csv).expect("csv is utf-8"))?;
    if a.track_memory {
        for m in &table.means {
            if let Some(bytes) = m.peak_bytes {
                eprintln!("n={} m={} {}: mean peak heap about {:.1} MiB", m.n, m.m, m.algorithm, bytes / (1 << 20) as f64);
            }
        }
    }
    Ok(())
}

fn compare(a: CompareArgs) -> CliResult<()> {
    let file = read_system(&a.input)?;
    let (ring, polys) = file.in_order(a.order);
    let cfg = SolverConfig::new(a.sigorder);
    let mut reduced: Vec<(Algorithm, Vec<Polynomial>)> = Vec::new();
    let mut out = io::stdout().lock();
    for alg in Algorithm::ALL {
        let before = CountingAlloc::reset_peak();
        let sol = solve(alg, &ring, &polys, &cfg)?;
        peak_report(&alg.to_string(), before);
        let json = serde_json::to_string(&sol.stats).expect("stats serialize");
        writeln!(out, "{alg}: {json}").ok();
        reduced.push((alg, ring.interreduce(&sol.basis)));
    }
    let agree = reduced.windows(2).all(|w| w[0].1 == w[1].1);
    writeln!(out, "reduced bases {}", if agree { "identical" } else { "DIFFER" }).ok();
    if agree {
        Ok(())
    } else {
        Err(CliError::Verification(describe_mismatch(&ring, &reduced)))
    }
}

fn describe_mismatch(ring: &Ring, reduced: &[(Algorithm, Vec<Polynomial>)]) -> String {
    let sizes: Vec<String> = reduced.iter().map(|(alg, b)| format!("{alg} has {} elements", b.len())).collect();
    format!("reduced bases differ over F_{}: {}", ring.field().modulus(), sizes.join(", "))
}
