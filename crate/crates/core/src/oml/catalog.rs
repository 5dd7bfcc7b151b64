//! Constructions of standard small ortholattices.

use super::RawOml;

/// The Boolean algebra of subsets of `{1, .., k}`, with 2^k elements named
/// `{}`, `{1}`, `{1,2}`, … in subset-bitmask order.
pub fn boolean(k: u32) -> RawOml {
    assert!(k <= 10, "boolean({k}) would have {} elements", 1u64 << k);
    let size = 1usize << k;
    let name = |mask: usize| {
        let members: Vec<String> =
            (0..k).filter(|b| mask >> b & 1 == 1).map(|b| (b + 1).to_string()).collect();
        format!("{{{}}}", members.join(","))
    };
    let elements: Vec<String> = (0..size).map(name).collect();
    let mut leq = Vec::new();
    for a in 0..size {
        for b in 0..size {
            if a & b == a {
                leq.push((elements[a].clone(), elements[b].clone()));
            }
        }
    }
    let ortho = (0..size).map(|a| (elements[a].clone(), elements[size - 1 - a].clone())).collect();
    RawOml {
        bottom: elements[0].clone(),
        top: elements[size - 1].clone(),
        elements,
        leq,
        ortho,
    }
}

/// The modular ortholattice MO(n): ⊥, ⊤ and n incomparable complementary
/// atom pairs. Atoms are named `a, a', b, b', …` — MO(2) is the standard
/// minimal example of a non-Boolean orthomodular lattice.
pub fn mo(n: u32) -> RawOml {
    assert!((1..=26).contains(&n), "mo(n) supports 1 <= n <= 26 atom pairs");
    let mut elements = vec!["0".to_string()];
    for i in 0..n {
        let base = (b'a' + i as u8) as char;
        elements.push(base.to_string());
        elements.push(format!("{base}'"));
    }
    elements.push("1".to_string());
    let top = elements.len() - 1;
    let mut leq = Vec::new();
    for e in &elements {
        leq.push(("0".to_string(), e.clone()));
        leq.push((e.clone(), "1".to_string()));
    }
    let mut ortho = vec![("0".to_string(), "1".to_string()), ("1".to_string(), "0".to_string())];
    for i in 0..n as usize {
        let a = elements[1 + 2 * i].clone();
        let ac = elements[2 + 2 * i].clone();
        ortho.push((a.clone(), ac.clone()));
        ortho.push((ac, a));
    }
    RawOml {
        bottom: elements[0].clone(),
        top: elements[top].clone(),
        elements,
        leq,
        ortho,
    }
}

/// The two-element chain {0, 1}, the smallest orthomodular lattice.
pub fn chain2() -> RawOml {
    RawOml {
        elements: vec!["0".into(), "1".into()],
        leq: vec![("0".into(), "1".into())],
        ortho: vec![("0".into(), "1".into()), ("1".into(), "0".into())],
        bottom: "0".into(),
        top: "1".into(),
    }
}

/// The benzene ring O6: the hexagon 0 < a < b < 1, 0 < b' < a' < 1 with
/// a ⊥ a', b ⊥ b'. A bounded ortholattice, and the canonical *failure* of
/// orthomodularity: b ≠ a ∨ (b ∧ a').
pub fn benzene_o6() -> RawOml {
    let covers = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "b'"), ("b'", "a'"), ("a'", "1")];
    RawOml {
        elements: ["0", "a", "b", "b'", "a'", "1"].map(String::from).to_vec(),
        leq: covers.iter().map(|&(x, y)| (x.to_string(), y.to_string())).collect(),
        ortho: [("0", "1"), ("1", "0"), ("a", "a'"), ("a'", "a"), ("b", "b'"), ("b'", "b")]
            .iter()
            .map(|&(x, y)| (x.to_string(), y.to_string()))
            .collect(),
        bottom: "0".into(),
        top: "1".into(),
    }
}
