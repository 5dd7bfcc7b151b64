//! Numerical geometry of R³ as a Hilbert lattice.
//!
//! Closed subspaces of real 3-space form an orthomodular lattice; here each
//! subspace is carried by its orthogonal projector, which makes the lattice
//! operations short numerical formulas: the orthocomplement is I − P, the
//! join is a span, the meet is the complement of the join of complements,
//! and the Sasaki projection A & B is the *image* of A under the orthogonal
//! projection onto B.
//!
//! [`lemma`] implements the projected-pair apparatus on which the collapse
//! construction rests: the vectors v_φ, their inner products, the exact
//! range [(3cosθ−1)/(cosθ+1), 1] of achievable pair dots, and a solver
//! that hits any target in that range. [`schedule`] provides the angle
//! ladder θₙ = arccos(n/(n+2)) climbed by the induction.
//!
//! A note on d(A, B): the source definition of the distance between atoms
//! reads as a cosine (|u·v| for unit representatives) but is used throughout
//! as an angle (e.g. "u·v = cos d(A,B)", "θₙ ≤ d(A,B)"). We implement the
//! angle reading — [`Subspace3::atom_angle`] returns arccos |u·v| — and keep
//! the reproduced formulas verbatim otherwise.

pub mod lemma;
pub mod schedule;
mod subspace;

pub use subspace::Subspace3;

/// 3-vectors over f64 (re-exported from nalgebra).
pub type Vec3 = nalgebra::Vector3<f64>;

/// 3×3 matrices over f64 (re-exported from nalgebra).
pub type Mat3 = nalgebra::Matrix3<f64>;

/// Errors from the geometric operations.
#[derive(Clone, Copy, PartialEq, Eq, Debug, thiserror::Error)]
pub enum GeomError {
    /// A spanning set that should span at least a line is numerically zero.
    #[error("degenerate input: spanning set is numerically zero")]
    DegenerateInput,
    /// An operation defined on atoms (dim-1 subspaces) received another dim.
    #[error("operand is not an atom (expected a dim-1 subspace)")]
    NotAnAtom,
    /// θ outside the open interval (0, π/2) required by the projected-pair
    /// formulas (or outside (0, π/2] where that closure is admitted).
    #[error("theta out of range")]
    ThetaOutOfRange,
    /// A requested pair dot lies outside the achievable interval.
    #[error("target out of achievable range")]
    TargetOutOfRange,
}

#[cfg(test)]
mod tests;
