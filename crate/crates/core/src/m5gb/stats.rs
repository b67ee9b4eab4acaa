use serde::Serialize;

/// Counters of one solver run.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RunStats {
    /// Polynomial subtractions `f - c*m`, including those that build reductors.
    pub reduction_steps: u64,
    /// Signatures (or ordinary pairs) that were actually reduced.
    pub spairs_processed: u64,
    pub spairs_skipped_syzygy: u64,
    pub spairs_skipped_duplicate: u64,
    pub zero_reductions: u64,
    /// Nonzero results dropped because a basis multiple of the same
    /// signature divides their leading term.
    pub singular_discards: u64,
    pub reductors_built: u64,
    pub reductor_reuses: u64,
    pub basis_size: usize,
    pub wall_time_ms: f64,
}
