//! Raw lattice descriptions and law-by-law validation.

use std::collections::HashMap;

use super::{FiniteOml, OmlData};
use crate::bits::Bits;

/// An unchecked description of a finite bounded ortholattice.
///
/// `leq` is interpreted as the full order relation; [`RawOml::closed`]
/// computes the reflexive–transitive closure so that callers may list only
/// covering pairs. `ortho` pairs each element with its complement.
#[derive(Clone, Debug)]
pub struct RawOml {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
    pub ortho: Vec<(String, String)>,
    pub bottom: String,
    pub top: String,
}

/// Which basic poset law failed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PosetLaw {
    Reflexive,
    Antisymmetric,
    Transitive,
    BottomLeast,
    TopGreatest,
}

/// Which bound was missing when the order failed to be a lattice.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LatticeOp {
    Meet,
    Join,
}

/// Which orthocomplement law failed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrthoLaw {
    Involution,
    OrderReversing,
    MeetComplement,
    JoinComplement,
}

/// First law violation found while validating a [`RawOml`], with witnesses.
#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum OmlViolation {
    /// The description itself is ill-formed (duplicate or unknown names,
    /// partial complement map); no law can even be evaluated.
    #[error("malformed lattice description: {reason}")]
    Malformed { reason: String },
    #[error("not a poset: {law:?} fails at ({x}, {y})")]
    NotAPoset { law: PosetLaw, x: String, y: String },
    #[error("not a lattice: {op:?} of ({x}, {y}) does not exist")]
    NotALattice { op: LatticeOp, x: String, y: String },
    #[error("not an ortholattice: {law:?} fails at ({x}, {y})")]
    OrthoLawViolation { law: OrthoLaw, x: String, y: String },
    #[error("orthomodular law fails at ({x}, {y}): {y} != {x} v ({y} ^ {x}')")]
    OrthomodularityViolation { x: String, y: String },
}

impl RawOml {
    /// Replace `leq` by its reflexive–transitive closure.
    ///
    /// Fails with [`OmlViolation::Malformed`] if names are duplicated or the
    /// relation mentions unknown elements.
    pub fn closed(mut self) -> Result<RawOml, OmlViolation> {
        let index = name_index(&self.elements)?;
        let n = self.elements.len();
        let mut up: Vec<Bits> = (0..n).map(|_| Bits::new(n)).collect();
        for (x, y) in &self.leq {
            let i = lookup(&index, x)?;
            let j = lookup(&index, y)?;
            up[i as usize].insert(j as usize);
        }
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        // Warshall over bitset rows: if j is reachable from i, absorb row j.
        for j in 0..n {
            for i in 0..n {
                if i != j && up[i].contains(j) {
                    let row_j = up[j].clone();
                    up[i].union_with(&row_j);
                }
            }
        }
        self.leq = up
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                let elements = &self.elements;
                row.iter().map(move |j| (elements[i].clone(), elements[j].clone()))
            })
            .collect();
        Ok(self)
    }

    /// Check every law and freeze the lattice.
    ///
    /// Laws are checked in a fixed order — poset axioms, bounds, existence
    /// of meets and joins, orthocomplement laws, orthomodularity — and the
    /// first violation is reported with a witnessing pair. Scans run in
    /// declaration order, so reports are deterministic.
    pub fn validate(&self) -> Result<FiniteOml, OmlViolation> {
        let index = name_index(&self.elements)?;
        let n = self.elements.len();
        let names = &self.elements;

        let mut up: Vec<Bits> = (0..n).map(|_| Bits::new(n)).collect();
        for (x, y) in &self.leq {
            up[lookup(&index, x)? as usize].insert(lookup(&index, y)? as usize);
        }
        let bottom = lookup(&index, &self.bottom)?;
        let top = lookup(&index, &self.top)?;

        let mut ortho = vec![u32::MAX; n];
        for (x, y) in &self.ortho {
            let i = lookup(&index, x)?;
            let j = lookup(&index, y)?;
            if ortho[i as usize] != u32::MAX && ortho[i as usize] != j {
                return Err(OmlViolation::Malformed {
                    reason: format!("conflicting complements for '{x}'"),
                });
            }
            ortho[i as usize] = j;
        }
        if let Some(i) = ortho.iter().position(|&j| j == u32::MAX) {
            return Err(OmlViolation::Malformed {
                reason: format!("no complement given for '{}'", names[i]),
            });
        }

        let witness = |law, i: usize, j: usize| OmlViolation::NotAPoset {
            law,
            x: names[i].clone(),
            y: names[j].clone(),
        };

        if let Some(i) = (0..n).find(|&i| !up[i].contains(i)) {
            return Err(witness(PosetLaw::Reflexive, i, i));
        }
        for i in 0..n {
            if let Some(j) = up[i].iter().find(|&j| j != i && up[j].contains(i)) {
                return Err(witness(PosetLaw::Antisymmetric, i, j));
            }
        }
        for i in 0..n {
            if let Some(j) = up[i].iter().find(|&j| !up[j].is_subset(&up[i])) {
                let k = up[j].iter().find(|&k| !up[i].contains(k)).unwrap();
                return Err(witness(PosetLaw::Transitive, i, k));
            }
        }
        if up[bottom as usize].count() != n {
            let i = (0..n).find(|&i| !up[bottom as usize].contains(i)).unwrap();
            return Err(witness(PosetLaw::BottomLeast, bottom as usize, i));
        }
        if let Some(i) = (0..n).find(|&i| !up[i].contains(top as usize)) {
            return Err(witness(PosetLaw::TopGreatest, i, top as usize));
        }

        let mut dn: Vec<Bits> = (0..n).map(|_| Bits::new(n)).collect();
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                dn[j].insert(i);
            }
        }

        // A poset with finite antisymmetry has at most one greatest lower
        // bound, so "first candidate dominating all common lower bounds"
        // is the meet when it exists.
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let lows = dn[i].intersection(&dn[j]);
                let glb = lows.iter().find(|&z| lows.is_subset(&dn[z]));
                match glb {
                    Some(z) => meet[i * n + j] = z as u32,
                    None => {
                        return Err(OmlViolation::NotALattice {
                            op: LatticeOp::Meet,
                            x: names[i].clone(),
                            y: names[j].clone(),
                        })
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let highs = up[i].intersection(&up[j]);
                let lub = highs.iter().find(|&z| highs.is_subset(&up[z]));
                match lub {
                    Some(z) => join[i * n + j] = z as u32,
                    None => {
                        return Err(OmlViolation::NotALattice {
                            op: LatticeOp::Join,
                            x: names[i].clone(),
                            y: names[j].clone(),
                        })
                    }
                }
            }
        }

        let ortho_witness = |law, i: usize, j: usize| OmlViolation::OrthoLawViolation {
            law,
            x: names[i].clone(),
            y: names[j].clone(),
        };
        if let Some(i) = (0..n).find(|&i| ortho[ortho[i] as usize] as usize != i) {
            return Err(ortho_witness(OrthoLaw::Involution, i, ortho[i] as usize));
        }
        for i in 0..n {
            if let Some(j) = up[i]
                .iter()
                .find(|&j| !up[ortho[j] as usize].contains(ortho[i] as usize))
            {
                return Err(ortho_witness(OrthoLaw::OrderReversing, i, j));
            }
        }
        if let Some(i) = (0..n).find(|&i| meet[i * n + ortho[i] as usize] != bottom) {
            return Err(ortho_witness(OrthoLaw::MeetComplement, i, ortho[i] as usize));
        }
        if let Some(i) = (0..n).find(|&i| join[i * n + ortho[i] as usize] != top) {
            return Err(ortho_witness(OrthoLaw::JoinComplement, i, ortho[i] as usize));
        }

        // Orthomodular law: x <= y implies y = x v (y ^ x').
        for i in 0..n {
            for j in up[i].iter() {
                let rhs = join[i * n + meet[j * n + ortho[i] as usize] as usize];
                if rhs as usize != j {
                    return Err(OmlViolation::OrthomodularityViolation {
                        x: names[i].clone(),
                        y: names[j].clone(),
                    });
                }
            }
        }

        Ok(FiniteOml::from_data(OmlData {
            id: 0, // replaced by from_data
            names: self.elements.clone(),
            index,
            up,
            dn,
            meet,
            join,
            ortho,
            bottom,
            top,
        }))
    }
}

fn name_index(elements: &[String]) -> Result<HashMap<String, u32>, OmlViolation> {
    if elements.is_empty() {
        return Err(OmlViolation::Malformed { reason: "no elements".into() });
    }
    let mut index = HashMap::with_capacity(elements.len());
    for (i, name) in elements.iter().enumerate() {
        if index.insert(name.clone(), i as u32).is_some() {
            return Err(OmlViolation::Malformed { reason: format!("duplicate element '{name}'") });
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<String, u32>, name: &str) -> Result<u32, OmlViolation> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| OmlViolation::Malformed { reason: format!("unknown element '{name}'") })
}
