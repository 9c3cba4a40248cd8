//! Built-in fixture catalog: the Boolean algebras, horizontal sums, the
//! benzene ring, a product with nontrivial center, a shared-atom pasting,
//! and the 18-atom parity hypergraph.

use thiserror::Error;

use crate::hypergraph::ContextHypergraph;
use crate::lattice::FiniteOrtholattice;
use crate::paste::paste_greechie;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown fixture `{0}`")]
pub struct UnknownFixture(pub String);

#[derive(Debug, Clone)]
pub enum CatalogEntry {
    Lattice(FiniteOrtholattice),
    Hypergraph(ContextHypergraph),
}

pub const CATALOG_NAMES: [&str; 10] =
    ["b2", "b4", "b8", "b16", "mo2", "mo3", "o6", "mo2xb2", "g2shared", "cab18"];

pub fn catalog(name: &str) -> Result<CatalogEntry, UnknownFixture> {
    let lattice = |l: FiniteOrtholattice| Ok(CatalogEntry::Lattice(l));
    match name {
        "b2" => lattice(boolean_algebra(&["1"])),
        "b4" => lattice(boolean_algebra(&["a", "b"])),
        "b8" => lattice(boolean_algebra(&["a", "b", "c"])),
        "b16" => lattice(boolean_algebra(&["a", "b", "c", "d"])),
        "mo2" => lattice(horizontal_sum(&[("a", "na"), ("b", "nb")])),
        "mo3" => lattice(horizontal_sum(&[("a", "na"), ("b", "nb"), ("c", "nc")])),
        "o6" => lattice(benzene()),
        "mo2xb2" => {
            let mo2 = horizontal_sum(&[("a", "na"), ("b", "nb")]);
            lattice(mo2.product(&boolean_algebra(&["1"])))
        }
        "g2shared" => {
            let h = two_blocks_shared_atom();
            lattice(paste_greechie(&h).expect("shared-atom pasting is orthomodular"))
        }
        "cab18" => Ok(CatalogEntry::Hypergraph(cab18())),
        other => Err(UnknownFixture(other.to_owned())),
    }
}

/// The power set of the given atom names; elements are ordered by
/// (cardinality, subset mask) and labeled by joining atom names with `+`.
fn boolean_algebra(atoms: &[&str]) -> FiniteOrtholattice {
    let k = atoms.len();
    assert!(k >= 1 && k <= 8);
    let mut masks: Vec<u32> = (0..(1u32 << k)).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    let index = |m: u32| masks.iter().position(|&x| x == m).unwrap();
    let full = (1u32 << k) - 1;
    let labels: Vec<String> = masks
        .iter()
        .map(|&m| {
            if m == 0 {
                "0".to_owned()
            } else if m == full {
                "1".to_owned()
            } else {
                (0..k)
                    .filter(|&i| m & (1 << i) != 0)
                    .map(|i| atoms[i])
                    .collect::<Vec<_>>()
                    .join("+")
            }
        })
        .collect();
    let mut covers = Vec::new();
    for &m in &masks {
        for i in 0..k {
            if m & (1 << i) == 0 {
                covers.push((index(m), index(m | (1 << i))));
            }
        }
    }
    let ortho: Vec<(usize, usize)> =
        masks.iter().map(|&m| (index(m), index(full & !m))).collect();
    FiniteOrtholattice::from_covers(labels, &covers, &ortho)
        .expect("power-set algebra is a lattice")
}

/// Four-element blocks glued at bottom and top.
fn horizontal_sum(blocks: &[(&str, &str)]) -> FiniteOrtholattice {
    let mut labels = vec!["0".to_owned()];
    for &(p, q) in blocks {
        labels.push(p.to_owned());
        labels.push(q.to_owned());
    }
    labels.push("1".to_owned());
    let top = labels.len() - 1;
    let mut covers = Vec::new();
    let mut ortho = Vec::new();
    for i in 0..blocks.len() {
        let (p, q) = (1 + 2 * i, 2 + 2 * i);
        covers.push((0, p));
        covers.push((0, q));
        covers.push((p, top));
        covers.push((q, top));
        ortho.push((p, q));
    }
    FiniteOrtholattice::from_covers(labels, &covers, &ortho)
        .expect("horizontal sum is a lattice")
}

/// The hexagon: a three-element chain next to its orthocomplemented image.
/// An ortholattice that is not orthomodular.
fn benzene() -> FiniteOrtholattice {
    FiniteOrtholattice::from_covers(
        ["0", "a", "b", "nb", "na", "1"].map(str::to_owned).to_vec(),
        &[(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)],
        &[(1, 4), (2, 3)],
    )
    .expect("hexagon is a lattice")
}

fn two_blocks_shared_atom() -> ContextHypergraph {
    ContextHypergraph::new(
        ["a", "b", "c", "d", "e"].map(str::to_owned).to_vec(),
        vec![vec![0, 1, 2], vec![2, 3, 4]],
    )
    .expect("fixture hypergraph is valid")
}

/// Eighteen atoms in nine four-atom blocks with every atom in exactly two
/// blocks: atoms are the edges of the circulant graph C9(1,2), blocks are
/// its vertices. Odd block count with all-even degrees makes an
/// exactly-one-per-block selection impossible.
fn cab18() -> ContextHypergraph {
    let verts = 9;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..verts {
        for d in [1, 2] {
            let j = (i + d) % verts;
            edges.push((i.min(j), i.max(j)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let labels: Vec<String> = edges.iter().map(|(i, j)| format!("a{i}_{j}")).collect();
    let blocks: Vec<Vec<usize>> = (0..verts)
        .map(|v| {
            edges
                .iter()
                .enumerate()
                .filter(|(_, &(i, j))| i == v || j == v)
                .map(|(idx, _)| idx)
                .collect()
        })
        .collect();
    ContextHypergraph::new(labels, blocks).expect("fixture hypergraph is valid")
}

/// Test convenience: a catalog lattice by name, panicking on hypergraphs.
#[cfg(test)]
pub(crate) fn test_lattice(name: &str) -> FiniteOrtholattice {
    match catalog(name).unwrap() {
        CatalogEntry::Lattice(l) => l,
        CatalogEntry::Hypergraph(_) => panic!("fixture `{name}` is a hypergraph"),
    }
}
