//! Finite orthomodular lattices.
//!
//! A finite orthomodular lattice (OML) is a bounded lattice with an
//! orthocomplement ⊥ satisfying x⊥⊥ = x, x ≤ y ⇒ y⊥ ≤ x⊥,
//! x ∧ x⊥ = 0, x ∨ x⊥ = 1, together with the orthomodular law
//! x ≤ y ⇒ y = x ∨ (y ∧ x⊥). These are the abstract skeletons of
//! closed-subspace lattices of Hilbert spaces.
//!
//! [`RawOml`] is the mutable description (names plus relations);
//! [`RawOml::validate`] checks every law and freezes the result into an
//! immutable [`FiniteOml`] with precomputed meet/join/complement tables.

mod build;
mod catalog;
mod format;

pub use build::{LatticeOp, OmlViolation, OrthoLaw, PosetLaw, RawOml};
pub use catalog::{benzene_o6, boolean, chain2, mo};
pub use format::{load_oml, parse_oml, save_oml, write_oml_string, write_raw_oml_string, LoadError};

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::bits::Bits;

/// An element of some [`FiniteOml`], valid only for the lattice it came from.
///
/// Handles remember which lattice minted them; operations on a handle from a
/// different lattice fail with [`ForeignElement`] instead of silently mixing
/// up indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Element {
    oml: u64,
    idx: u32,
}

/// An [`Element`] was passed to a lattice that did not create it.
#[derive(Clone, Copy, PartialEq, Eq, Debug, thiserror::Error)]
#[error("element does not belong to this lattice")]
pub struct ForeignElement;

static NEXT_OML_ID: AtomicU64 = AtomicU64::new(1);

pub(crate) struct OmlData {
    id: u64,
    names: Vec<String>,
    index: HashMap<String, u32>,
    /// up[i] = { j : i ≤ j }
    up: Vec<Bits>,
    /// dn[i] = { j : j ≤ i }
    dn: Vec<Bits>,
    /// Row-major n×n tables of element indices.
    meet: Vec<u32>,
    join: Vec<u32>,
    ortho: Vec<u32>,
    bottom: u32,
    top: u32,
}

/// A validated finite orthomodular lattice. Cheap to clone (shared storage).
#[derive(Clone)]
pub struct FiniteOml {
    inner: Arc<OmlData>,
}

impl FiniteOml {
    pub(crate) fn from_data(mut data: OmlData) -> Self {
        data.id = NEXT_OML_ID.fetch_add(1, Ordering::Relaxed);
        FiniteOml { inner: Arc::new(data) }
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.inner.names.len()
    }

    /// Always false: a validated lattice has at least ⊥ and ⊤.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Whether two handles refer to the same underlying lattice.
    pub fn same_lattice(&self, other: &FiniteOml) -> bool {
        self.inner.id == other.inner.id
    }

    pub(crate) fn id(&self) -> u64 {
        self.inner.id
    }

    /// Look up an element by name.
    pub fn element(&self, name: &str) -> Option<Element> {
        self.inner.index.get(name).map(|&idx| self.at(idx))
    }

    /// The name of an element.
    ///
    /// # Panics
    /// Panics if `e` belongs to a different lattice.
    pub fn name(&self, e: Element) -> &str {
        assert_eq!(e.oml, self.inner.id, "element from a different lattice");
        &self.inner.names[e.idx as usize]
    }

    /// All elements, in declaration order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.len() as u32).map(|idx| self.at(idx))
    }

    /// The atoms: elements covering ⊥.
    pub fn atoms(&self) -> impl Iterator<Item = Element> + '_ {
        self.elements()
            .filter(|e| e.idx != self.inner.bottom && self.inner.dn[e.idx as usize].count() == 2)
    }

    pub fn bottom(&self) -> Element {
        self.at(self.inner.bottom)
    }

    pub fn top(&self) -> Element {
        self.at(self.inner.top)
    }

    /// Order test x ≤ y.
    pub fn leq(&self, x: Element, y: Element) -> Result<bool, ForeignElement> {
        Ok(self.leq_idx(self.check(x)?, self.check(y)?))
    }

    /// Greatest lower bound x ∧ y.
    pub fn meet(&self, x: Element, y: Element) -> Result<Element, ForeignElement> {
        Ok(self.at(self.meet_idx(self.check(x)?, self.check(y)?)))
    }

    /// Least upper bound x ∨ y.
    pub fn join(&self, x: Element, y: Element) -> Result<Element, ForeignElement> {
        Ok(self.at(self.join_idx(self.check(x)?, self.check(y)?)))
    }

    /// Orthocomplement x⊥.
    pub fn ortho(&self, x: Element) -> Result<Element, ForeignElement> {
        Ok(self.at(self.ortho_idx(self.check(x)?)))
    }

    /// Sasaki projection x & y = y ∧ (x ∨ y⊥): the image of x under the
    /// lattice-theoretic projection onto y.
    pub fn sasaki(&self, x: Element, y: Element) -> Result<Element, ForeignElement> {
        Ok(self.at(self.sasaki_idx(self.check(x)?, self.check(y)?)))
    }

    /// Compatibility (commuting): x = (x ∧ y) ∨ (x ∧ y⊥).
    ///
    /// Compatible pairs generate a Boolean subalgebra and behave classically;
    /// on them the Sasaki projection degrades to the plain meet.
    pub fn compatible(&self, x: Element, y: Element) -> Result<bool, ForeignElement> {
        Ok(self.compatible_idx(self.check(x)?, self.check(y)?))
    }

    pub(crate) fn at(&self, idx: u32) -> Element {
        debug_assert!((idx as usize) < self.len());
        Element { oml: self.inner.id, idx }
    }

    pub(crate) fn check(&self, e: Element) -> Result<u32, ForeignElement> {
        if e.oml == self.inner.id {
            Ok(e.idx)
        } else {
            Err(ForeignElement)
        }
    }

    pub(crate) fn leq_idx(&self, i: u32, j: u32) -> bool {
        self.inner.up[i as usize].contains(j as usize)
    }

    pub(crate) fn meet_idx(&self, i: u32, j: u32) -> u32 {
        self.inner.meet[i as usize * self.len() + j as usize]
    }

    pub(crate) fn join_idx(&self, i: u32, j: u32) -> u32 {
        self.inner.join[i as usize * self.len() + j as usize]
    }

    pub(crate) fn ortho_idx(&self, i: u32) -> u32 {
        self.inner.ortho[i as usize]
    }

    pub(crate) fn sasaki_idx(&self, i: u32, j: u32) -> u32 {
        self.meet_idx(j, self.join_idx(i, self.ortho_idx(j)))
    }

    pub(crate) fn compatible_idx(&self, i: u32, j: u32) -> bool {
        i == self.join_idx(self.meet_idx(i, j), self.meet_idx(i, self.ortho_idx(j)))
    }

    pub(crate) fn up_bits(&self, i: u32) -> &Bits {
        &self.inner.up[i as usize]
    }

    pub(crate) fn top_idx(&self) -> u32 {
        self.inner.top
    }
}

impl std::fmt::Debug for FiniteOml {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteOml")
            .field("len", &self.len())
            .field("elements", &self.inner.names)
            .finish()
    }
}
