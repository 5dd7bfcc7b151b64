//! Subspaces of R³ represented by orthogonal projectors.

use super::{GeomError, Mat3, Vec3};
use crate::config::Tolerances;

/// A linear subspace of R³, canonically represented by its orthogonal
/// projector (symmetric, idempotent) together with its dimension.
///
/// The representation is uniform across dimensions 0–3 and makes the
/// lattice operations one-liners with testable laws. Equality is
/// tolerance-based ([`Subspace3::approx_eq`]): two subspaces are the same
/// when their projectors agree entrywise within `eps_mat`.
#[derive(Clone, Copy, Debug)]
pub struct Subspace3 {
    projector: Mat3,
    dim: usize,
}

impl Subspace3 {
    /// The zero subspace {0}.
    pub fn zero() -> Subspace3 {
        Subspace3 { projector: Mat3::zeros(), dim: 0 }
    }

    /// The full space R³.
    pub fn full() -> Subspace3 {
        Subspace3 { projector: Mat3::identity(), dim: 3 }
    }

    /// The span of a set of vectors: the orthogonal projector onto their
    /// linear hull, with the rank decided by pivoted Gram–Schmidt
    /// (residuals below `eps_rank` times the largest input norm count as
    /// dependent).
    ///
    /// An empty list spans {0}; a non-empty list of numerically zero (or
    /// non-finite) vectors is [`GeomError::DegenerateInput`] (a caller
    /// supplying actual vectors expected a dimension ≥ 1).
    pub fn span(vectors: &[Vec3], tol: &Tolerances) -> Result<Subspace3, GeomError> {
        if vectors.is_empty() {
            return Ok(Subspace3::zero());
        }
        if vectors.iter().any(|v| !v.norm().is_finite()) {
            return Err(GeomError::DegenerateInput);
        }
        let sub = Subspace3::from_columns(vectors, tol);
        if sub.dim > 0 {
            Ok(sub)
        } else {
            Err(GeomError::DegenerateInput)
        }
    }

    /// The line spanned by a single vector.
    pub fn line(v: Vec3, tol: &Tolerances) -> Result<Subspace3, GeomError> {
        Subspace3::span(&[v], tol)
    }

    /// Internal span that maps the empty and all-zero cases to the zero
    /// subspace. Expects finite columns.
    fn from_columns(vectors: &[Vec3], tol: &Tolerances) -> Subspace3 {
        let basis = orthonormalize(vectors, tol.eps_rank);
        let mut projector = Mat3::zeros();
        for q in &basis {
            projector += q * q.transpose();
        }
        // Symmetrize away the last rounding crumbs.
        projector = (projector + projector.transpose()) * 0.5;
        Subspace3 { projector, dim: basis.len() }
    }

    pub fn projector(&self) -> &Mat3 {
        &self.projector
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Orthogonal projection of a vector onto this subspace.
    pub fn project(&self, v: Vec3) -> Vec3 {
        self.projector * v
    }

    /// The orthocomplement: projector I − P.
    pub fn ortho(&self) -> Subspace3 {
        Subspace3 { projector: Mat3::identity() - self.projector, dim: 3 - self.dim }
    }

    /// Least upper bound: the span of the union of images.
    pub fn join(&self, other: &Subspace3, tol: &Tolerances) -> Subspace3 {
        let cols: Vec<Vec3> = self
            .projector
            .column_iter()
            .chain(other.projector.column_iter())
            .map(|c| Vec3::new(c[0], c[1], c[2]))
            .collect();
        Subspace3::from_columns(&cols, tol)
    }

    /// Greatest lower bound: (E⊥ ∨ F⊥)⊥.
    pub fn meet(&self, other: &Subspace3, tol: &Tolerances) -> Subspace3 {
        self.ortho().join(&other.ortho(), tol).ortho()
    }

    /// Order test E ≤ F, i.e. ‖P_F P_E − P_E‖max ≤ eps_mat.
    pub fn leq(&self, other: &Subspace3, tol: &Tolerances) -> bool {
        (other.projector * self.projector - self.projector).amax() <= tol.eps_mat
    }

    /// Tolerance-based equality of projectors.
    pub fn approx_eq(&self, other: &Subspace3, tol: &Tolerances) -> bool {
        (self.projector - other.projector).amax() <= tol.eps_mat
    }

    /// The Sasaki projection A & B = span{Π_B(u) : u ∈ A}: project a basis
    /// of `self` onto `onto` and span the surviving images.
    ///
    /// Images with norm ≤ `eps_mat` are treated as annihilated, so
    /// A ⊆ B⊥ yields the zero subspace rather than noise.
    pub fn sasaki(&self, onto: &Subspace3, tol: &Tolerances) -> Subspace3 {
        self.sasaki_with_floor(onto, tol.eps_mat, tol)
    }

    /// [`Subspace3::sasaki`] with an explicit annihilation floor on image
    /// norms (certificate verification uses the coarser `eps_orth`).
    pub fn sasaki_with_floor(
        &self,
        onto: &Subspace3,
        floor: f64,
        tol: &Tolerances,
    ) -> Subspace3 {
        let images: Vec<Vec3> = self
            .basis()
            .into_iter()
            .map(|u| onto.project(u))
            .filter(|w| w.norm() > floor)
            .collect();
        Subspace3::from_columns(&images, tol)
    }

    /// A deterministic orthonormal basis extracted from the projector
    /// (eigenvectors of eigenvalue ≈ 1, sign-canonicalized, sorted).
    pub fn basis(&self) -> Vec<Vec3> {
        if self.dim == 0 {
            return Vec::new();
        }
        let eigen = self.projector.symmetric_eigen();
        let mut vectors: Vec<Vec3> = eigen
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > 0.5)
            .map(|(k, _)| canonical_sign(Vec3::from(eigen.eigenvectors.column(k))))
            .collect();
        debug_assert_eq!(vectors.len(), self.dim);
        vectors.sort_by(|a, b| {
            (a[0], a[1], a[2]).partial_cmp(&(b[0], b[1], b[2])).expect("finite components")
        });
        vectors
    }

    /// A unit representative of an atom (dim-1 subspace): the largest
    /// projector column, normalized and sign-canonicalized.
    pub fn representative(&self) -> Result<Vec3, GeomError> {
        if self.dim != 1 {
            return Err(GeomError::NotAnAtom);
        }
        let col = (0..3)
            .map(|j| Vec3::from(self.projector.column(j)))
            .max_by(|a, b| a.norm().partial_cmp(&b.norm()).expect("finite norms"))
            .expect("three columns");
        Ok(canonical_sign(col.normalize()))
    }

    /// The angle between two atoms, arccos |u·v| ∈ [0, π/2].
    pub fn atom_angle(&self, other: &Subspace3) -> Result<f64, GeomError> {
        let u = self.representative()?;
        let v = other.representative()?;
        Ok(u.dot(&v).abs().clamp(0.0, 1.0).acos())
    }
}

/// Orthonormal basis of the span of `columns` by pivoted modified
/// Gram–Schmidt with a second orthogonalization pass ("twice is enough").
///
/// Columns whose residual after projection drops to `eps_rank` times the
/// largest input norm are treated as dependent. At 3×k this is exact
/// rank-revealing QR in miniature and, unlike an iterative SVD, has no
/// convergence failure modes on nearly rank-deficient inputs.
fn orthonormalize(columns: &[Vec3], eps_rank: f64) -> Vec<Vec3> {
    let mut work: Vec<Vec3> = columns.to_vec();
    let scale = work.iter().map(Vec3::norm).fold(0.0, f64::max);
    let mut basis: Vec<Vec3> = Vec::new();
    if !(scale.is_finite() && scale > 0.0) {
        return basis;
    }
    while basis.len() < 3 && !work.is_empty() {
        let (k, norm) = work
            .iter()
            .enumerate()
            .map(|(k, c)| (k, c.norm()))
            .max_by(|a, b| a.1.partial_cmp(&b.1).expect("finite norms"))
            .expect("non-empty worklist");
        if norm <= eps_rank * scale {
            break;
        }
        let mut q = work.swap_remove(k) / norm;
        // Residuals carry orthogonalization error relative to the original
        // scale; when the pivot is small that error is large relative to
        // the pivot, so clean q against the basis once more.
        for b in &basis {
            q -= b * q.dot(b);
        }
        q /= q.norm();
        for c in &mut work {
            *c -= q * c.dot(&q);
        }
        basis.push(q);
    }
    basis
}

/// Flip sign so the component of largest magnitude is positive.
fn canonical_sign(v: Vec3) -> Vec3 {
    let lead = (0..3).max_by(|&i, &j| {
        v[i].abs().partial_cmp(&v[j].abs()).expect("finite components")
    });
    if v[lead.expect("non-empty")] < 0.0 {
        -v
    } else {
        v
    }
}
