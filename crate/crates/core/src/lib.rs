//! Sasaki filters on finite orthomodular lattices, a numeric model of the
//! rank-3 real Hilbert lattice, and machine-checkable collapse certificates.
//!
//! The crate has three layers:
//!
//! * [`oml`] — finite orthomodular lattices: validation of the lattice and
//!   orthocomplement laws, Sasaki projection x & y = y ∧ (x ∨ y⊥), and
//!   compatibility.
//! * [`filters`] — upward-closed sets, Sasaki filters (upsets closed under
//!   the Sasaki projection of their members), their closure operator, and
//!   the dictionary between proper Sasaki filters and two-valued
//!   pre-valuations.
//! * [`hilbert3`] and [`collapse`] — the lattice of subspaces of R³, the
//!   geometry of projected pairs of atoms, and finite certificates showing
//!   that a proper Sasaki filter of the rank-3 Hilbert lattice cannot
//!   contain two distinct atoms.
//!
//! Numeric thresholds are centralized in [`config::Tolerances`].

mod bits;
pub mod collapse;
pub mod config;
pub mod filters;
pub mod hilbert3;
pub mod oml;

pub use config::Tolerances;
