//! Numeric tolerances used by the geometric modules.
//!
//! Every threshold that a geometric decision depends on lives here, with its
//! default, so that the library never hides an ad-hoc magic number inside an
//! algorithm. The defaults are tuned for unit-scale data (unit vectors,
//! projectors with entries in [-1, 1]).

/// Tolerances for subspace geometry, the pair solver and certificate checks.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Entrywise (max-norm) tolerance on projector comparisons. Used for
    /// subspace equality, order tests and Sasaki recomputation checks.
    pub eps_mat: f64,
    /// Relative singular-value threshold deciding the rank of a span.
    pub eps_rank: f64,
    /// Allowed deviation of a "unit" vector's norm from 1.
    pub eps_unit: f64,
    /// Final-orthogonality threshold for collapse certificates: the last
    /// pair must satisfy |u . v| <= eps_orth and project to rank 0.
    pub eps_orth: f64,
    /// Angle slack admitted when checking an induction-step hypothesis, and
    /// the per-round angle accuracy a certificate is expected to keep.
    pub eps_ang: f64,
    /// Bisection interval width on phi at which the pair solver stops.
    pub bisect_tol: f64,
    /// Residual |pair_dot - target| the pair solver guarantees.
    pub solve_dot_tol: f64,
    /// Hard cap on induction rounds in a single collapse derivation. Atoms
    /// at angle t need about 2*cos(t)/(1-cos(t)) rounds, so nearly parallel
    /// inputs would otherwise produce certificates of unbounded size.
    pub max_rounds: u32,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps_mat: 1e-9,
            eps_rank: 1e-9,
            eps_unit: 1e-9,
            eps_orth: 1e-7,
            eps_ang: 1e-8,
            bisect_tol: 1e-12,
            solve_dot_tol: 1e-10,
            max_rounds: 100_000,
        }
    }
}
