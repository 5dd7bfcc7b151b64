//! Independent replay of collapse and refutation certificates.
//!
//! Verification is total: it never errors, it accepts or rejects with the
//! first failure pinpointed. Equality and containment checks run at the
//! certificate's own tolerance (so the verifier needs nothing from the
//! generator); unit-length checks use `eps_unit`, and the final
//! orthogonality declaration uses the coarser `eps_orth`.

use super::{CollapseCertificate, RefutationCertificate};
use crate::config::Tolerances;
use crate::hilbert3::{Subspace3, Vec3};

/// Why a certificate was rejected, pinpointing the first failed check.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum VerifyFailure {
    /// Check (i): an initial atom vector is not unit length.
    InitialAtomNotUnit { which: usize },
    /// Check (i): the declared frame is not orthonormal.
    BasisNotOrthonormal,
    /// A step references an item that does not exist yet.
    IndexOutOfRange { round: usize, step: usize },
    /// A step's result vector is not unit length.
    ResultNotUnit { round: usize, step: usize },
    /// A step's spanning vectors do not span a plane.
    PlaneDegenerate { round: usize, step: usize },
    /// Check (ii): the claimed witness does not lie below the plane.
    WitnessNotInPlane { round: usize, step: usize },
    /// Check (iii): the result is not the recomputed Sasaki projection.
    ResultMismatch { round: usize, step: usize, deviation: f64 },
    /// The final declaration does not reference the last two items.
    FinalPairMismatch,
    /// Check (iv): the final pair is not orthogonal within eps_orth.
    FinalNotOrthogonal { dot: f64 },
    /// Check (iv): the final Sasaki projection has nonzero rank.
    FinalSasakiNotZero { dim: usize },
    /// The claimed subspace data is not an orthogonal projector.
    SubspaceNotAProjector,
    /// The atom lies below the subspace: the certificate claims nothing.
    NothingRefuted,
    /// The declared projection vector is not unit length.
    ProjectionNotUnit,
    /// The declared projection (or its absence) disagrees with A & E.
    ProjectionMismatch,
    /// Projection and embedded pair certificate must be both present or
    /// both absent.
    RefutationShapeInvalid,
    /// The embedded pair certificate does not start from A and A & E.
    InitialPairMismatch,
}

impl std::fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifyFailure::InitialAtomNotUnit { which } => {
                write!(f, "initial atom {which} is not unit length")
            }
            VerifyFailure::BasisNotOrthonormal => write!(f, "basis is not orthonormal"),
            VerifyFailure::IndexOutOfRange { round, step } => {
                write!(f, "round {round} step {step} references a later item")
            }
            VerifyFailure::ResultNotUnit { round, step } => {
                write!(f, "round {round} step {step} result is not unit length")
            }
            VerifyFailure::PlaneDegenerate { round, step } => {
                write!(f, "round {round} step {step} vectors do not span a plane")
            }
            VerifyFailure::WitnessNotInPlane { round, step } => {
                write!(f, "round {round} step {step} witness is not below the plane")
            }
            VerifyFailure::ResultMismatch { round, step, deviation } => {
                write!(
                    f,
                    "round {round} step {step} result differs from the recomputed \
                     Sasaki projection by {deviation:e}"
                )
            }
            VerifyFailure::FinalPairMismatch => {
                write!(f, "final declaration does not reference the last two items")
            }
            VerifyFailure::FinalNotOrthogonal { dot } => {
                write!(f, "final pair is not orthogonal (dot = {dot:e})")
            }
            VerifyFailure::FinalSasakiNotZero { dim } => {
                write!(f, "final Sasaki projection has rank {dim}, not 0")
            }
            VerifyFailure::SubspaceNotAProjector => {
                write!(f, "subspace data is not an orthogonal projector")
            }
            VerifyFailure::NothingRefuted => {
                write!(f, "atom lies below the subspace; nothing is refuted")
            }
            VerifyFailure::ProjectionNotUnit => write!(f, "projection is not unit length"),
            VerifyFailure::ProjectionMismatch => {
                write!(f, "declared projection disagrees with the recomputed A & E")
            }
            VerifyFailure::RefutationShapeInvalid => {
                write!(f, "projection and pair certificate must be present together")
            }
            VerifyFailure::InitialPairMismatch => {
                write!(f, "embedded pair certificate does not start from A and A & E")
            }
        }
    }
}

/// Outcome of a verification replay.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct VerifyReport {
    /// Whether every check passed.
    pub accepted: bool,
    /// Number of derivation steps fully re-checked before the outcome.
    pub steps_checked: usize,
    /// The first failed check, when rejected.
    pub failure: Option<VerifyFailure>,
}

impl VerifyReport {
    fn reject(steps_checked: usize, failure: VerifyFailure) -> VerifyReport {
        VerifyReport { accepted: false, steps_checked, failure: Some(failure) }
    }

    fn accept(steps_checked: usize) -> VerifyReport {
        VerifyReport { accepted: true, steps_checked, failure: None }
    }
}

fn unit(v: &Vec3, tol: &Tolerances) -> bool {
    (v.norm() - 1.0).abs() <= tol.eps_unit
}

/// The line through a vector that has already passed the unit check.
fn item_line(v: Vec3, tol: &Tolerances) -> Subspace3 {
    Subspace3::line(v, tol).expect("item vectors are unit length")
}

/// Replay a pair certificate with fresh arithmetic.
///
/// Checks, in order: (i) the initial atoms are unit vectors and the frame
/// is orthonormal; per step, indices refer to earlier items only, the
/// result is unit, the plane spans dim 2, (ii) the witness lies below the
/// plane, (iii) the result equals the recomputed Sasaki projection of the
/// parent onto the plane within `cert.tolerance`; finally (iv) the
/// declared pair is the last two items, orthogonal within `eps_orth`, and
/// its Sasaki projection is the zero subspace.
pub fn verify_certificate(cert: &CollapseCertificate, tol: &Tolerances) -> VerifyReport {
    let eq = Tolerances { eps_mat: cert.tolerance, ..*tol };
    let mut checked = 0usize;

    for (which, v) in cert.initial_atoms.iter().enumerate() {
        if !unit(v, tol) {
            return VerifyReport::reject(checked, VerifyFailure::InitialAtomNotUnit { which });
        }
    }
    let orthonormal = cert.basis.iter().all(|e| unit(e, tol))
        && cert.basis[0].dot(&cert.basis[1]).abs() <= tol.eps_unit
        && cert.basis[0].dot(&cert.basis[2]).abs() <= tol.eps_unit
        && cert.basis[1].dot(&cert.basis[2]).abs() <= tol.eps_unit;
    if !orthonormal {
        return VerifyReport::reject(checked, VerifyFailure::BasisNotOrthonormal);
    }

    let mut items: Vec<Vec3> = cert.initial_atoms.to_vec();
    for (r, round) in cert.rounds.iter().enumerate() {
        for (s, step) in round.iter().enumerate() {
            if step.parent_atom >= items.len() || step.plane_witness >= items.len() {
                return VerifyReport::reject(
                    checked,
                    VerifyFailure::IndexOutOfRange { round: r, step: s },
                );
            }
            if !unit(&step.result_atom, tol) {
                return VerifyReport::reject(
                    checked,
                    VerifyFailure::ResultNotUnit { round: r, step: s },
                );
            }
            let plane = match Subspace3::span(&step.plane, tol) {
                Ok(p) if p.dim() == 2 => p,
                _ => {
                    return VerifyReport::reject(
                        checked,
                        VerifyFailure::PlaneDegenerate { round: r, step: s },
                    )
                }
            };
            let witness = item_line(items[step.plane_witness], tol);
            if !witness.leq(&plane, &eq) {
                return VerifyReport::reject(
                    checked,
                    VerifyFailure::WitnessNotInPlane { round: r, step: s },
                );
            }
            let parent = item_line(items[step.parent_atom], tol);
            let recomputed = parent.sasaki(&plane, tol);
            let claimed = item_line(step.result_atom, tol);
            let deviation = (claimed.projector() - recomputed.projector()).amax();
            if recomputed.dim() != 1 || deviation > cert.tolerance {
                return VerifyReport::reject(
                    checked,
                    VerifyFailure::ResultMismatch { round: r, step: s, deviation },
                );
            }
            items.push(step.result_atom);
            checked += 1;
        }
    }

    if cert.final_pair != (items.len() - 2, items.len() - 1) {
        return VerifyReport::reject(checked, VerifyFailure::FinalPairMismatch);
    }
    let u = items[cert.final_pair.0];
    let v = items[cert.final_pair.1];
    let dot = u.dot(&v);
    if dot.abs() > tol.eps_orth {
        return VerifyReport::reject(checked, VerifyFailure::FinalNotOrthogonal { dot });
    }
    let bottom = item_line(u, tol).sasaki_with_floor(&item_line(v, tol), tol.eps_orth, tol);
    if !bottom.is_zero() {
        return VerifyReport::reject(
            checked,
            VerifyFailure::FinalSasakiNotZero { dim: bottom.dim() },
        );
    }
    VerifyReport::accept(checked)
}

/// Replay a refutation certificate: validate the subspace claim, check
/// A ≰ E, recompute B = A & E, and match it against the declared
/// projection — rank 0 with no embedded pair, or an atom matching the
/// projection with an embedded pair certificate from (A, B) that itself
/// verifies.
pub fn verify_refutation(cert: &RefutationCertificate, tol: &Tolerances) -> VerifyReport {
    let eq = Tolerances { eps_mat: cert.tolerance, ..*tol };
    if !unit(&cert.atom, tol) {
        return VerifyReport::reject(0, VerifyFailure::InitialAtomNotUnit { which: 0 });
    }
    let a = item_line(cert.atom, tol);

    // Reconstruct E from the claimed projector's columns and demand the
    // reconstruction agree with the claim — a non-projector cannot pass.
    let e = if cert.subspace_dim == 0 {
        if cert.subspace_projector.amax() > cert.tolerance {
            return VerifyReport::reject(0, VerifyFailure::SubspaceNotAProjector);
        }
        Subspace3::zero()
    } else {
        let cols: Vec<Vec3> =
            cert.subspace_projector.column_iter().map(|c| Vec3::new(c[0], c[1], c[2])).collect();
        match Subspace3::span(&cols, tol) {
            Ok(sub)
                if sub.dim() == cert.subspace_dim
                    && (sub.projector() - cert.subspace_projector).amax() <= cert.tolerance =>
            {
                sub
            }
            _ => return VerifyReport::reject(0, VerifyFailure::SubspaceNotAProjector),
        }
    };

    if a.leq(&e, &eq) {
        return VerifyReport::reject(0, VerifyFailure::NothingRefuted);
    }
    let b = a.sasaki_with_floor(&e, tol.eps_orth, tol);
    match (&cert.projection, &cert.pair) {
        (None, None) => {
            if b.is_zero() {
                VerifyReport::accept(1)
            } else {
                VerifyReport::reject(0, VerifyFailure::ProjectionMismatch)
            }
        }
        (Some(p), Some(pair)) => {
            if !unit(p, tol) {
                return VerifyReport::reject(0, VerifyFailure::ProjectionNotUnit);
            }
            let claimed = item_line(*p, tol);
            let deviation = match b.dim() {
                1 => (claimed.projector() - b.projector()).amax(),
                _ => f64::INFINITY,
            };
            if deviation > cert.tolerance {
                return VerifyReport::reject(0, VerifyFailure::ProjectionMismatch);
            }
            if !unit(&pair.initial_atoms[0], tol) || !unit(&pair.initial_atoms[1], tol) {
                return VerifyReport::reject(0, VerifyFailure::InitialPairMismatch);
            }
            let pa = item_line(pair.initial_atoms[0], &eq);
            let pb = item_line(pair.initial_atoms[1], &eq);
            if !pa.approx_eq(&a, &eq) || !pb.approx_eq(&claimed, &eq) {
                return VerifyReport::reject(0, VerifyFailure::InitialPairMismatch);
            }
            let inner = verify_certificate(pair, tol);
            VerifyReport {
                accepted: inner.accepted,
                steps_checked: inner.steps_checked + 1,
                failure: inner.failure,
            }
        }
        _ => VerifyReport::reject(0, VerifyFailure::RefutationShapeInvalid),
    }
}
