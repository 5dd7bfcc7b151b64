//! Upward-closed sets, Sasaki filters and two-valued pre-valuations.
//!
//! An upward-closed set S (an *upset*) is closed under going up the order;
//! a *Sasaki filter* is an upset also closed under the Sasaki projection of
//! any two of its members. The closure operator
//!
//! &̄(S) = ⋃ { (x & y)↑ : x, y ∈ S }
//!
//! is inflationary and monotone, so iterating it on a finite lattice reaches
//! a least fixpoint: the smallest Sasaki filter containing S, which also
//! equals the intersection of all Sasaki filters containing S (the
//! intersection formula is kept as a test oracle, not the implementation).
//!
//! A *pre-valuation* is a {0,1} labeling ν with ν(⊤) = 1, superadditive on
//! orthogonal joins (x ⊥ y ⇒ ν(x∨y) ≥ ν(x) + ν(y)) and multiplicative on
//! compatible meets. Pre-valuations are exactly the indicator functions of
//! proper Sasaki filters; *valuations* additionally satisfy the orthogonal
//! join condition with equality. Hunting for valuations on a given lattice
//! is the finite shadow of the Kochen–Specker obstruction.

use crate::bits::Bits;
use crate::oml::{Element, FiniteOml, ForeignElement};

/// Largest lattice size enumerated without an explicit override: upset
/// counts grow like antichain counts, which explode well before meet/join
/// tables become a problem.
pub const DEFAULT_ENUM_BOUND: usize = 24;

/// Errors from filter and pre-valuation conversions.
#[derive(Clone, Copy, PartialEq, Eq, Debug, thiserror::Error)]
pub enum FilterError {
    /// The filter is empty or the whole lattice, so it has no indicator
    /// pre-valuation.
    #[error("filter is not proper (empty or the whole lattice)")]
    NotProper,
    /// The labeling violates one of the three pre-valuation conditions.
    #[error("labeling is not a pre-valuation")]
    NotAPreValuation,
    /// The upset is not closed under the Sasaki projection.
    #[error("upset is not a Sasaki filter")]
    NotASasakiFilter,
}

/// A lattice exceeds the exhaustive-enumeration bound.
#[derive(Clone, Copy, PartialEq, Eq, Debug, thiserror::Error)]
#[error("lattice has {size} elements, above the enumeration bound {bound}")]
pub struct TooLarge {
    pub size: usize,
    pub bound: usize,
}

/// An upward-closed subset of a [`FiniteOml`].
#[derive(Clone)]
pub struct UpSet {
    oml: FiniteOml,
    bits: Bits,
}

impl PartialEq for UpSet {
    fn eq(&self, other: &Self) -> bool {
        self.oml.same_lattice(&other.oml) && self.bits == other.bits
    }
}

impl Eq for UpSet {}

impl std::hash::Hash for UpSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.oml.id().hash(state);
        self.bits.hash(state);
    }
}

impl UpSet {
    /// The empty upset.
    pub fn empty(oml: &FiniteOml) -> UpSet {
        UpSet { oml: oml.clone(), bits: Bits::new(oml.len()) }
    }

    /// The whole lattice.
    pub fn full(oml: &FiniteOml) -> UpSet {
        UpSet { oml: oml.clone(), bits: Bits::full(oml.len()) }
    }

    /// The principal upset x↑ = {y : x ≤ y}.
    pub fn principal(oml: &FiniteOml, x: Element) -> Result<UpSet, ForeignElement> {
        let i = oml.check(x)?;
        Ok(UpSet { oml: oml.clone(), bits: oml.up_bits(i).clone() })
    }

    /// The smallest upset containing the given elements: ⋃ x↑.
    pub fn upward_closure(
        oml: &FiniteOml,
        elems: impl IntoIterator<Item = Element>,
    ) -> Result<UpSet, ForeignElement> {
        let mut bits = Bits::new(oml.len());
        for e in elems {
            bits.union_with(oml.up_bits(oml.check(e)?));
        }
        Ok(UpSet { oml: oml.clone(), bits })
    }

    pub fn oml(&self) -> &FiniteOml {
        &self.oml
    }

    /// Membership test.
    ///
    /// # Panics
    /// Panics if `x` belongs to a different lattice.
    pub fn contains(&self, x: Element) -> bool {
        let i = self.oml.check(x).expect("element from a different lattice");
        self.bits.contains(i as usize)
    }

    /// Members in declaration order.
    pub fn members(&self) -> impl Iterator<Item = Element> + '_ {
        self.bits.iter().map(|i| self.oml.at(i as u32))
    }

    /// Member names, sorted — the canonical presentation format.
    pub fn sorted_names(&self) -> Vec<String> {
        let mut names: Vec<String> =
            self.members().map(|e| self.oml.name(e).to_string()).collect();
        names.sort_unstable();
        names
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Non-empty and not the whole lattice.
    pub fn is_proper(&self) -> bool {
        !self.is_empty() && self.len() < self.oml.len()
    }

    /// Union of two upsets of the same lattice.
    ///
    /// # Panics
    /// Panics if the upsets live in different lattices.
    pub fn union(&self, other: &UpSet) -> UpSet {
        assert!(self.oml.same_lattice(&other.oml), "upsets from different lattices");
        UpSet { oml: self.oml.clone(), bits: self.bits.union(&other.bits) }
    }

    /// Intersection of two upsets of the same lattice.
    ///
    /// # Panics
    /// Panics if the upsets live in different lattices.
    pub fn intersection(&self, other: &UpSet) -> UpSet {
        assert!(self.oml.same_lattice(&other.oml), "upsets from different lattices");
        UpSet { oml: self.oml.clone(), bits: self.bits.intersection(&other.bits) }
    }

    pub fn is_subset(&self, other: &UpSet) -> bool {
        assert!(self.oml.same_lattice(&other.oml), "upsets from different lattices");
        self.bits.is_subset(&other.bits)
    }

    /// Whether every pairwise Sasaki image stays inside the set.
    pub fn is_sasaki_filter(&self) -> bool {
        let idx: Vec<usize> = self.bits.iter().collect();
        idx.iter().all(|&i| {
            idx.iter()
                .all(|&j| self.bits.contains(self.oml.sasaki_idx(i as u32, j as u32) as usize))
        })
    }

    /// One application of the closure operator: &̄(S) = ⋃ (x & y)↑ over
    /// ordered pairs of members. Contains S because x & x = x.
    pub fn sasaki_step(&self) -> UpSet {
        let idx: Vec<usize> = self.bits.iter().collect();
        let mut bits = Bits::new(self.oml.len());
        for &i in &idx {
            for &j in &idx {
                bits.union_with(self.oml.up_bits(self.oml.sasaki_idx(i as u32, j as u32)));
            }
        }
        UpSet { oml: self.oml.clone(), bits }
    }

    /// The least Sasaki filter containing S: iterate [`UpSet::sasaki_step`]
    /// to its fixpoint. Terminates because the chain grows strictly inside
    /// a finite lattice.
    pub fn sasaki_closure(&self) -> SasakiFilter {
        let mut cur = self.clone();
        loop {
            let next = cur.sasaki_step();
            if next.bits == cur.bits {
                return SasakiFilter { set: cur };
            }
            cur = next;
        }
    }
}

impl std::fmt::Debug for UpSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.members().map(|e| self.oml.name(e))).finish()
    }
}

/// An upset closed under the Sasaki projection of its members.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SasakiFilter {
    set: UpSet,
}

impl SasakiFilter {
    pub fn as_upset(&self) -> &UpSet {
        &self.set
    }

    pub fn into_upset(self) -> UpSet {
        self.set
    }

    pub fn oml(&self) -> &FiniteOml {
        self.set.oml()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.set.contains(x)
    }

    pub fn members(&self) -> impl Iterator<Item = Element> + '_ {
        self.set.members()
    }

    pub fn sorted_names(&self) -> Vec<String> {
        self.set.sorted_names()
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn is_proper(&self) -> bool {
        self.set.is_proper()
    }

    /// The indicator pre-valuation of a proper filter.
    pub fn to_prevaluation(&self) -> Result<PreValuation, FilterError> {
        if !self.is_proper() {
            return Err(FilterError::NotProper);
        }
        Ok(PreValuation { oml: self.oml().clone(), ones: self.set.bits.clone() })
    }
}

impl TryFrom<UpSet> for SasakiFilter {
    type Error = FilterError;

    fn try_from(set: UpSet) -> Result<SasakiFilter, FilterError> {
        if set.is_sasaki_filter() {
            Ok(SasakiFilter { set })
        } else {
            Err(FilterError::NotASasakiFilter)
        }
    }
}

/// A total {0,1} labeling of a lattice (candidate pre-valuation).
#[derive(Clone)]
pub struct PreValuation {
    oml: FiniteOml,
    ones: Bits,
}

impl PartialEq for PreValuation {
    fn eq(&self, other: &Self) -> bool {
        self.oml.same_lattice(&other.oml) && self.ones == other.ones
    }
}

impl Eq for PreValuation {}

impl std::hash::Hash for PreValuation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.oml.id().hash(state);
        self.ones.hash(state);
    }
}

impl std::fmt::Debug for PreValuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.ones().map(|e| self.oml.name(e))).finish()
    }
}

impl PreValuation {
    /// Build a labeling from a predicate (1 where true). The predicate is
    /// consulted once per element, in declaration order.
    pub fn new(oml: &FiniteOml, mut assigns_one: impl FnMut(Element) -> bool) -> PreValuation {
        let mut ones = Bits::new(oml.len());
        for e in oml.elements() {
            if assigns_one(e) {
                ones.insert(oml.check(e).unwrap() as usize);
            }
        }
        PreValuation { oml: oml.clone(), ones }
    }

    pub fn oml(&self) -> &FiniteOml {
        &self.oml
    }

    /// ν(x) ∈ {0, 1}.
    ///
    /// # Panics
    /// Panics if `x` belongs to a different lattice.
    pub fn value(&self, x: Element) -> u8 {
        let i = self.oml.check(x).expect("element from a different lattice");
        self.ones.contains(i as usize) as u8
    }

    /// Elements labeled 1, in declaration order.
    pub fn ones(&self) -> impl Iterator<Item = Element> + '_ {
        self.ones.iter().map(|i| self.oml.at(i as u32))
    }

    /// Names of the elements labeled 1, sorted.
    pub fn sorted_names(&self) -> Vec<String> {
        let mut names: Vec<String> =
            self.ones().map(|e| self.oml.name(e).to_string()).collect();
        names.sort_unstable();
        names
    }

    /// The three pre-valuation conditions, checked over all pairs:
    /// ν(⊤) = 1; x ⊥ y ⇒ ν(x∨y) ≥ ν(x) + ν(y);
    /// compatible(x,y) ⇒ ν(x∧y) = ν(x)·ν(y).
    pub fn is_prevaluation(&self) -> bool {
        let l = &self.oml;
        let n = l.len() as u32;
        let val = |i: u32| self.ones.contains(i as usize) as u8;
        if val(l.top_idx()) != 1 {
            return false;
        }
        for i in 0..n {
            for j in 0..n {
                if l.leq_idx(i, l.ortho_idx(j)) && val(l.join_idx(i, j)) < val(i) + val(j) {
                    return false;
                }
                if l.compatible_idx(i, j) && val(l.meet_idx(i, j)) != val(i) * val(j) {
                    return false;
                }
            }
        }
        true
    }

    /// A valuation: a pre-valuation that is *additive* on orthogonal joins.
    pub fn is_valuation(&self) -> bool {
        if !self.is_prevaluation() {
            return false;
        }
        let l = &self.oml;
        let n = l.len() as u32;
        let val = |i: u32| self.ones.contains(i as usize) as u8;
        for i in 0..n {
            for j in 0..n {
                if l.leq_idx(i, l.ortho_idx(j)) && val(l.join_idx(i, j)) != val(i) + val(j) {
                    return false;
                }
            }
        }
        true
    }

    /// The set {x : ν(x) = 1} of a pre-valuation, as a Sasaki filter.
    ///
    /// This is the inverse of [`SasakiFilter::to_prevaluation`]: for a
    /// genuine pre-valuation the ones-set is upward closed (monotonicity
    /// follows from compatibility of comparable pairs), proper (ν(⊥) = 0 is
    /// forced by superadditivity at x = y = ⊥), and Sasaki-closed.
    pub fn to_filter(&self) -> Result<SasakiFilter, FilterError> {
        if !self.is_prevaluation() {
            return Err(FilterError::NotAPreValuation);
        }
        let set = UpSet { oml: self.oml.clone(), bits: self.ones.clone() };
        SasakiFilter::try_from(set).map_err(|_| FilterError::NotAPreValuation)
    }
}

/// Deterministic stream of every upward-closed subset of `oml`.
///
/// Elements are decided in a top-down linear extension; a depth-first walk
/// prunes branches that would break upward closure, so each leaf is exactly
/// one upset. The first yields are ∅ and {⊤}; the last is the full lattice.
#[derive(Debug)]
pub struct UpsetIter {
    oml: FiniteOml,
    /// Linear extension, larger elements first.
    order: Vec<u32>,
    /// For order[d], the strict upset that must already be present.
    required: Vec<Bits>,
    /// Pending (depth, chosen-so-far) branches.
    stack: Vec<(usize, Bits)>,
}

impl Iterator for UpsetIter {
    type Item = UpSet;

    fn next(&mut self) -> Option<UpSet> {
        while let Some((depth, bits)) = self.stack.pop() {
            if depth == self.order.len() {
                return Some(UpSet { oml: self.oml.clone(), bits });
            }
            let el = self.order[depth] as usize;
            if self.required[depth].is_subset(&bits) {
                let mut included = bits.clone();
                included.insert(el);
                self.stack.push((depth + 1, included));
            }
            self.stack.push((depth + 1, bits));
        }
        None
    }
}

/// All upward-closed subsets of `oml` (refuses lattices larger than
/// [`DEFAULT_ENUM_BOUND`] elements).
pub fn enumerate_upsets(oml: &FiniteOml) -> Result<UpsetIter, TooLarge> {
    enumerate_upsets_with_bound(oml, DEFAULT_ENUM_BOUND)
}

/// All upward-closed subsets, with an explicit size bound override.
pub fn enumerate_upsets_with_bound(oml: &FiniteOml, bound: usize) -> Result<UpsetIter, TooLarge> {
    if oml.len() > bound {
        return Err(TooLarge { size: oml.len(), bound });
    }
    let mut order: Vec<u32> = (0..oml.len() as u32).collect();
    order.sort_by_key(|&i| oml.up_bits(i).count());
    let required = order
        .iter()
        .map(|&i| {
            let mut req = oml.up_bits(i).clone();
            req.remove(i as usize);
            req
        })
        .collect();
    Ok(UpsetIter {
        oml: oml.clone(),
        order,
        required,
        stack: vec![(0, Bits::new(oml.len()))],
    })
}

/// All Sasaki filters of `oml` in the order of [`enumerate_upsets`]:
/// exactly the upsets that pass [`UpSet::is_sasaki_filter`].
pub fn enumerate_sasaki_filters(
    oml: &FiniteOml,
) -> Result<impl Iterator<Item = SasakiFilter>, TooLarge> {
    enumerate_sasaki_filters_with_bound(oml, DEFAULT_ENUM_BOUND)
}

/// All Sasaki filters, with an explicit size bound override.
pub fn enumerate_sasaki_filters_with_bound(
    oml: &FiniteOml,
    bound: usize,
) -> Result<impl Iterator<Item = SasakiFilter>, TooLarge> {
    Ok(enumerate_upsets_with_bound(oml, bound)?
        .filter(UpSet::is_sasaki_filter)
        .map(|set| SasakiFilter { set }))
}

/// All valuations of `oml`, in filter-enumeration order.
pub fn find_valuations(oml: &FiniteOml) -> Result<Vec<PreValuation>, TooLarge> {
    find_valuations_with_bound(oml, DEFAULT_ENUM_BOUND)
}

/// All valuations, with an explicit size bound override.
///
/// Every valuation is in particular a pre-valuation, and pre-valuations are
/// indicators of proper Sasaki filters, so searching the enumerated proper
/// filters is exhaustive (the brute-force oracle over all {0,1} labelings
/// confirms this on the small lattices).
pub fn find_valuations_with_bound(
    oml: &FiniteOml,
    bound: usize,
) -> Result<Vec<PreValuation>, TooLarge> {
    Ok(enumerate_sasaki_filters_with_bound(oml, bound)?
        .filter(|f| f.is_proper())
        .map(|f| f.to_prevaluation().expect("proper filter has an indicator"))
        .filter(PreValuation::is_valuation)
        .collect())
}
