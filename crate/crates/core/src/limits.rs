use serde::{Deserialize, Serialize};

/// Resource caps shared by the exhaustive procedures.
///
/// Every procedure in this crate is exact; the caps only decide when to give
/// up with [`Error::CapExceeded`](crate::Error::CapExceeded) instead of
/// running for an unbounded amount of time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Maximum number of variables accepted by the public SAT oracle.
    pub sat_vars: usize,
    /// Maximum number of clauses kept during prime-implicate saturation.
    pub primes: usize,
    /// Maximum number of variables for the exhaustive p-hardness computation.
    pub phd_vars: usize,
    /// Maximum number of clauses for subset enumeration (mps, canon).
    pub subset_clauses: usize,
    /// Maximum number of free prime implicates for exhaustive minimum search.
    pub exhaustive_primes: usize,
    /// Node budget for the exact hypergraph searches.
    pub search_nodes: u64,
    /// Maximum number of clauses kept during resolution closures.
    pub closure_clauses: usize,
    /// Maximum number of model cubes produced by model enumeration.
    pub models: usize,
    /// Maximum number of vertices of a trigger hypergraph.
    pub hypergraph_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            sat_vars: 24,
            primes: 1 << 18,
            phd_vars: 12,
            subset_clauses: 16,
            exhaustive_primes: 18,
            search_nodes: 1 << 20,
            closure_clauses: 1 << 18,
            models: 1 << 16,
            hypergraph_vertices: 1 << 12,
        }
    }
}
