//! Collapse certificates: finite, machine-checkable derivations that two
//! distinct atoms of the R³ Hilbert lattice drive ⊥ into their generated
//! Sasaki filter.
//!
//! The engine iterates the projected-pair construction: given atoms A, B at
//! angle θ with unit representatives u, v, pick the frame e₁ = u,
//! e₂ ∝ v − (u·v)u, e₃ = e₁ × e₂, and for a parameter φ the plane
//! E_φ = span{u, w_φ} with w_φ = cosφ·e₂ + sinφ·e₃. Both E_α and E_β
//! contain A, so they lie in A↑ ∪ B↑, and the round's outputs
//! A′ = B & E_α, B′ = B & E_β are Sasaki projections of established
//! elements onto established elements. Solving α (and β = −α) so that the
//! new pair lands on the exact ladder rung cos⁻¹(cₘ) walks the pair down
//! θ_n, θ_{n−1}, …, θ_0 = π/2; the final orthogonal pair has A_n & B_n = 0,
//! i.e. ⊥ enters the closure after n rounds plus one last projection.
//!
//! A [`CollapseCertificate`] records the initial atoms, every plane,
//! parameter and result, and index references showing each step uses only
//! earlier items; [`verify_certificate`] replays it with fresh arithmetic.
//! [`refute_second_element`] packages the corollary workflow — a proper
//! Sasaki filter containing an atom A contains nothing outside A↑ — as a
//! [`RefutationCertificate`] wrapping an optional pair certificate.

pub mod format;
mod verify;


pub use verify::{verify_certificate, verify_refutation, VerifyFailure, VerifyReport};

use crate::config::Tolerances;
use crate::hilbert3::{lemma, schedule, GeomError, Mat3, Subspace3, Vec3};

/// Atom pairs at angle below this are treated as the same atom.
pub const DEGENERATE_ANGLE: f64 = 1e-12;

/// Errors from certificate generation.
#[derive(Clone, Copy, PartialEq, Debug, thiserror::Error)]
pub enum CollapseError {
    /// The two atoms coincide (angle < [`DEGENERATE_ANGLE`]).
    #[error("the two atoms coincide")]
    DegeneratePair,
    /// The pair is too close for the requested rung: angle < θₙ − εang.
    #[error("pair angle {angle} is below the rung requirement {required}")]
    AngleTooSmall { angle: f64, required: f64 },
    /// Nothing to refute: the atom already lies below the subspace.
    #[error("atom lies below the subspace; nothing to refute")]
    AlreadyAbove,
    /// The schedule needs more rounds than the configured cap.
    #[error("collapse needs {needed} rounds, over the cap of {cap}")]
    RoundBudgetExceeded { needed: u64, cap: u32 },
    /// An underlying geometric operation failed.
    #[error(transparent)]
    Geometry(#[from] GeomError),
}

/// One Sasaki projection in a derivation: `result = parent & plane`.
///
/// `parent_atom` and `plane_witness` index the certificate's item list
/// (initial atoms first, then every result in order). The witness is an
/// item with witness ≤ plane, placing the plane in the upward closure of
/// the derived set. In the records returned by a standalone
/// [`induction_step`] the convention is A = 0, B = 1, A′ = 2, B′ = 3.
#[derive(Clone, Copy, Debug)]
pub struct CollapseStep {
    /// Index of the atom being projected (the current B).
    pub parent_atom: usize,
    /// The plane E_φ, by two spanning vectors (as generated: u and w_φ).
    pub plane: [Vec3; 2],
    /// Index of an item lying below the plane (the current A).
    pub plane_witness: usize,
    /// Unit representative of the resulting atom.
    pub result_atom: Vec3,
    /// The parameter φ used, for reproducibility.
    pub phi: f64,
}

/// A complete collapse derivation for a pair of distinct atoms.
///
/// Atoms and planes are carried by unit spanning vectors; the verifier
/// reconstructs the subspaces with fresh arithmetic. Item indices run
/// 0, 1 for `initial_atoms`, then 2k+2, 2k+3 for the results of round k.
#[derive(Clone, Debug)]
pub struct CollapseCertificate {
    /// Equality/containment tolerance the verifier must use for replay.
    pub tolerance: f64,
    /// The frame (e₁, e₂, e₃) of the first round, for reproducibility.
    pub basis: [Vec3; 3],
    /// Unit representatives of A and B (oriented so u·v ≥ 0).
    pub initial_atoms: [Vec3; 2],
    /// The rounds, two steps each: A′ = B & E_α, then B′ = B & E_β.
    pub rounds: Vec<[CollapseStep; 2]>,
    /// Indices of the final orthogonal pair (always the last two items).
    pub final_pair: (usize, usize),
}

/// A refutation that a proper Sasaki filter can contain an atom A and an
/// element E ≱ A: either A & E = 0 directly, or A & E is an atom B and the
/// embedded pair certificate collapses (A, B) to ⊥.
#[derive(Clone, Debug)]
pub struct RefutationCertificate {
    /// Equality/containment tolerance the verifier must use for replay.
    pub tolerance: f64,
    /// Unit representative of the atom A.
    pub atom: Vec3,
    /// Claimed dimension of E.
    pub subspace_dim: usize,
    /// Claimed orthogonal projector of E (validated on verification).
    pub subspace_projector: Mat3,
    /// Unit representative of B = A & E when it is an atom, else None.
    pub projection: Option<Vec3>,
    /// Collapse of (A, B) when B is an atom, else None.
    pub pair: Option<CollapseCertificate>,
}

/// The frame adapted to an ordered atom pair: representatives u, v
/// oriented so u·v ≥ 0, the orthonormal triple (e₁ = u, e₂, e₃ = e₁×e₂)
/// with v = cosθ·e₁ + sinθ·e₂, and the angle θ ∈ [DEGENERATE_ANGLE, π/2].
fn pair_frame(
    a: &Subspace3,
    b: &Subspace3,
) -> Result<(Vec3, Vec3, Vec3, Vec3, f64), CollapseError> {
    let u = a.representative()?;
    let mut v = b.representative()?;
    if u.dot(&v) < 0.0 {
        v = -v;
    }
    let dot = u.dot(&v).clamp(0.0, 1.0);
    let angle = dot.acos();
    if angle < DEGENERATE_ANGLE {
        return Err(CollapseError::DegeneratePair);
    }
    let w = v - u * dot;
    let e2 = w / w.norm();
    let e3 = u.cross(&e2);
    Ok((u, v, e2, e3, angle))
}

/// One round of the induction: from a pair at angle ≥ θₙ, produce a pair
/// at angle θₙ₋₁ via A′ = B & E_α, B′ = B & E_β with A ≤ E_α, E_β.
///
/// The returned steps use the standalone index convention A = 0, B = 1
/// (results would be items 2 and 3); [`collapse`] re-bases them onto the
/// full item list. The target cosine cₙ₋₁ is solved from the pair's
/// *actual* angle, so repeated rounds do not accumulate drift. If the
/// hypothesis holds only up to the εang slack the target is clamped into
/// the achievable interval and the landing angle may miss θₙ₋₁ by a few
/// εang. A pair that is already orthogonal has no rung to descend and
/// fails with `ThetaOutOfRange`.
pub fn induction_step(
    a: &Subspace3,
    b: &Subspace3,
    n: u64,
    tol: &Tolerances,
) -> Result<(Subspace3, Subspace3, CollapseStep, CollapseStep), CollapseError> {
    assert!(n >= 1, "induction_step descends to rung n-1, so n must be >= 1");
    let (e1, _, e2, e3, angle) = pair_frame(a, b)?;
    if angle + tol.eps_ang < schedule::theta(n) {
        return Err(CollapseError::AngleTooSmall { angle, required: schedule::theta(n) });
    }
    let exact = schedule::c(n - 1);
    let target = *exact.numer() as f64 / *exact.denom() as f64;
    let (lo, _) = lemma::lemma_interval(angle)?;
    let target = target.clamp(lo, 1.0);
    let (alpha, beta) = lemma::solve_pair(angle, target, tol)?;

    let make = |phi: f64| -> Result<(Subspace3, CollapseStep), CollapseError> {
        let w = e2 * phi.cos() + e3 * phi.sin();
        let f = lemma::v_phi(angle, phi)?;
        let result = e1 * f[0] + e2 * f[1] + e3 * f[2];
        let sub = Subspace3::line(result, tol)?;
        let step = CollapseStep {
            parent_atom: 1,
            plane: [e1, w],
            plane_witness: 0,
            result_atom: result,
            phi,
        };
        Ok((sub, step))
    };
    let (a2, step_a) = make(alpha)?;
    let (b2, step_b) = make(beta)?;
    Ok((a2, b2, step_a, step_b))
}

/// Produce a certificate collapsing two distinct atoms to an orthogonal
/// pair whose Sasaki projection is ⊥, in exactly n_min(angle) rounds.
///
/// An already-orthogonal pair is not an error: zero rounds, and the final
/// declaration covers the initial atoms themselves.
pub fn collapse(
    a: &Subspace3,
    b: &Subspace3,
    tol: &Tolerances,
) -> Result<CollapseCertificate, CollapseError> {
    let (e1, v, e2, e3, angle) = pair_frame(a, b)?;
    let n = schedule::n_min(angle, tol)?;
    if n > tol.max_rounds as u64 {
        return Err(CollapseError::RoundBudgetExceeded { needed: n, cap: tol.max_rounds });
    }
    let mut items: Vec<Vec3> = vec![e1, v];
    let mut rounds: Vec<[CollapseStep; 2]> = Vec::with_capacity(n as usize);
    let (mut cur_a, mut cur_b) = (*a, *b);
    let (mut idx_a, mut idx_b) = (0usize, 1usize);
    for k in 0..n {
        let (a2, b2, mut step_a, mut step_b) = induction_step(&cur_a, &cur_b, n - k, tol)?;
        step_a.parent_atom = idx_b;
        step_a.plane_witness = idx_a;
        step_b.parent_atom = idx_b;
        step_b.plane_witness = idx_a;
        idx_a = items.len();
        idx_b = items.len() + 1;
        items.push(step_a.result_atom);
        items.push(step_b.result_atom);
        rounds.push([step_a, step_b]);
        (cur_a, cur_b) = (a2, b2);
    }
    debug_assert!(items[items.len() - 2].dot(&items[items.len() - 1]).abs() <= tol.eps_orth);
    Ok(CollapseCertificate {
        tolerance: tol.eps_mat,
        basis: [e1, e2, e3],
        initial_atoms: [items[0], items[1]],
        final_pair: (items.len() - 2, items.len() - 1),
        rounds,
    })
}

/// The corollary workflow: witness that no proper Sasaki filter contains
/// both the atom A and an element E unless A ≤ E.
///
/// Computes B = A & E. If B = 0, the refutation is immediate (⊥ = A & E);
/// otherwise B is an atom distinct from A and the embedded pair
/// certificate collapses (A, B).
pub fn refute_second_element(
    a: &Subspace3,
    e: &Subspace3,
    tol: &Tolerances,
) -> Result<RefutationCertificate, CollapseError> {
    let atom = a.representative()?;
    if a.leq(e, tol) {
        return Err(CollapseError::AlreadyAbove);
    }
    let b = a.sasaki(e, tol);
    let (projection, pair) = if b.is_zero() {
        (None, None)
    } else {
        (Some(b.representative()?), Some(collapse(a, &b, tol)?))
    };
    Ok(RefutationCertificate {
        tolerance: tol.eps_mat,
        atom,
        subspace_dim: e.dim(),
        subspace_projector: *e.projector(),
        projection,
        pair,
    })
}
