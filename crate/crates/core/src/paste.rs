//! Pasting a context hypergraph into a finite ortholattice: each block
//! becomes the power set of its atoms, glued at bottom, top, shared atoms,
//! and the complements those shared atoms force. The result must pass the
//! orthomodularity check or construction fails with a loop diagnostic.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::hypergraph::ContextHypergraph;
use crate::lattice::FiniteOrtholattice;

/// Largest block the subset enumeration will accept.
const MAX_BLOCK_ATOMS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PasteError {
    #[error("blocks {i} and {j} share {count} atoms; pasting needs atom-transversal intersections")]
    OverlapTooLarge { i: usize, j: usize, count: usize },
    #[error("block {0} has more than {MAX_BLOCK_ATOMS} atoms")]
    BlockTooLarge(usize),
    #[error("pasted structure is not an orthomodular lattice ({reason})")]
    NotOrthomodularAfterPaste {
        reason: String,
        /// Blocks of a short (order 3 or 4) loop in the diagram, when one
        /// exists; such loops are exactly what breaks the pasting.
        loop_blocks: Option<Vec<usize>>,
    },
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A short cycle in the block-intersection graph, blocks listed in index
/// order: first any order-3 loop, then any chordless order-4 loop.
pub fn find_short_loop(h: &ContextHypergraph) -> Option<Vec<usize>> {
    let blocks = h.blocks();
    let n = blocks.len();
    let shared = |i: usize, j: usize| -> Option<usize> {
        blocks[i].iter().copied().find(|a| blocks[j].binary_search(a).is_ok())
    };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if let (Some(x), Some(y), Some(z)) = (shared(i, j), shared(j, k), shared(i, k)) {
                    if !(x == y && y == z) {
                        return Some(vec![i, j, k]);
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if i >= j || i >= k || i >= l || j == k || j == l || k == l {
                        continue;
                    }
                    let edges =
                        [shared(i, j), shared(j, k), shared(k, l), shared(l, i)];
                    let all_present = edges.iter().all(Option::is_some);
                    let chordless = shared(i, k).is_none() && shared(j, l).is_none();
                    if all_present && chordless {
                        let atoms: Vec<usize> = edges.iter().map(|e| e.unwrap()).collect();
                        let mut distinct = atoms.clone();
                        distinct.sort_unstable();
                        distinct.dedup();
                        if distinct.len() == 4 {
                            return Some(vec![i, j, k, l]);
                        }
                    }
                }
            }
        }
    }
    None
}

fn om_failure(h: &ContextHypergraph, reason: String) -> PasteError {
    PasteError::NotOrthomodularAfterPaste { reason, loop_blocks: find_short_loop(h) }
}

/// Paste the hypergraph into a lattice. Elements are bottom, top, and the
/// proper nonempty atom subsets of each block; singletons of a shared atom
/// are identified across its blocks, and so are the complementary
/// co-singletons (the orthocomplement must be single-valued).
pub fn paste_greechie(h: &ContextHypergraph) -> Result<FiniteOrtholattice, PasteError> {
    if let Some((i, j, shared)) = h.overlap_warnings().into_iter().next() {
        return Err(PasteError::OverlapTooLarge { i, j, count: shared.len() });
    }
    if let Some(big) = h.blocks().iter().position(|b| b.len() > MAX_BLOCK_ATOMS) {
        return Err(PasteError::BlockTooLarge(big));
    }

    // Every proper nonempty subset of every block gets a key.
    let mut key_id: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    let mut keys: Vec<(usize, Vec<usize>)> = Vec::new();
    for (bi, block) in h.blocks().iter().enumerate() {
        let k = block.len();
        for mask in 1u32..((1 << k) - 1) {
            let subset: Vec<usize> = block
                .iter()
                .enumerate()
                .filter(|(pos, _)| mask & (1 << pos) != 0)
                .map(|(_, &a)| a)
                .collect();
            key_id.insert((bi, subset.clone()), keys.len());
            keys.push((bi, subset));
        }
    }

    let mut uf = UnionFind::new(keys.len());
    for a in 0..h.atom_count() {
        let containing: Vec<usize> = (0..h.blocks().len())
            .filter(|&bi| h.blocks()[bi].binary_search(&a).is_ok())
            .collect();
        let eq_ids = |subset_of: &dyn Fn(usize) -> Vec<usize>| -> Vec<usize> {
            containing.iter().map(|&bi| key_id[&(bi, subset_of(bi))]).collect()
        };
        let singletons = eq_ids(&|_| vec![a]);
        let co_singletons = eq_ids(&|bi| {
            h.blocks()[bi].iter().copied().filter(|&x| x != a).collect()
        });
        for ids in [singletons, co_singletons] {
            for w in ids.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
    }

    // Classes, ordered by (least subset size, subset, block).
    let mut class_members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for id in 0..keys.len() {
        class_members.entry(uf.find(id)).or_default().push(id);
    }
    let mut classes: Vec<Vec<usize>> = class_members.into_values().collect();
    let sort_key = |members: &Vec<usize>| -> (usize, Vec<usize>, usize) {
        members
            .iter()
            .map(|&id| (keys[id].1.len(), keys[id].1.clone(), keys[id].0))
            .min()
            .expect("classes are nonempty")
    };
    classes.sort_by_key(sort_key);

    let n = classes.len() + 2;
    let (bottom, top) = (0usize, n - 1);
    let mut elem_of_key = vec![0usize; keys.len()];
    for (ci, members) in classes.iter().enumerate() {
        for &id in members {
            elem_of_key[id] = ci + 1;
        }
    }

    let mut labels = vec!["0".to_owned()];
    for members in &classes {
        let (_, subset, _) = sort_key(members);
        let label = if subset.len() == 1 {
            h.atom_label(subset[0]).to_owned()
        } else {
            subset
                .iter()
                .map(|&a| h.atom_label(a))
                .collect::<Vec<_>>()
                .join("+")
        };
        labels.push(label);
    }
    labels.push("1".to_owned());

    let mut relation = vec![false; n * n];
    for x in 0..n {
        relation[bottom * n + x] = true;
        relation[x * n + top] = true;
    }
    for (id_s, (bi, s)) in keys.iter().enumerate() {
        for (id_t, (bj, t)) in keys.iter().enumerate() {
            if bi == bj && s.iter().all(|a| t.contains(a)) {
                relation[elem_of_key[id_s] * n + elem_of_key[id_t]] = true;
            }
        }
    }

    let mut ortho_pairs = vec![(bottom, top)];
    for (ci, members) in classes.iter().enumerate() {
        let mut partner = None;
        for &id in members {
            let (bi, subset) = &keys[id];
            let co: Vec<usize> = h.blocks()[*bi]
                .iter()
                .copied()
                .filter(|a| !subset.contains(a))
                .collect();
            let p = elem_of_key[key_id[&(*bi, co)]];
            match partner {
                None => partner = Some(p),
                Some(prev) if prev != p => {
                    return Err(om_failure(
                        h,
                        format!("orthocomplement of `{}` is ambiguous", labels[ci + 1]),
                    ));
                }
                Some(_) => {}
            }
        }
        ortho_pairs.push((ci + 1, partner.expect("classes are nonempty")));
    }

    let lattice = FiniteOrtholattice::from_order(labels, relation, &ortho_pairs)
        .map_err(|e| om_failure(h, e.to_string()))?;
    if let Err(v) = lattice.check_ortholattice() {
        return Err(om_failure(
            h,
            format!("{} fails at (`{}`, `{}`)", v.law, lattice.label(v.x), lattice.label(v.y)),
        ));
    }
    if let Err(v) = lattice.check_orthomodular() {
        return Err(om_failure(
            h,
            format!(
                "orthomodular law fails at (`{}`, `{}`)",
                lattice.label(v.x),
                lattice.label(v.y)
            ),
        ));
    }
    Ok(lattice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::test_lattice;
    use crate::hypergraph::ContextHypergraph;

    fn graph(blocks: &[&[usize]], atom_count: usize) -> ContextHypergraph {
        let labels = (0..atom_count).map(|i| format!("p{i}")).collect();
        ContextHypergraph::new(labels, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn two_disjoint_two_blocks_paste_to_mo2() {
        let h = graph(&[&[0, 1], &[2, 3]], 4);
        let pasted = paste_greechie(&h).unwrap();
        assert_eq!(pasted.element_count(), 6);
        assert!(pasted.is_isomorphic_to(&test_lattice("mo2")));
    }

    #[test]
    fn single_three_block_pastes_to_b8() {
        let h = graph(&[&[0, 1, 2]], 3);
        let pasted = paste_greechie(&h).unwrap();
        assert!(pasted.is_isomorphic_to(&test_lattice("b8")));
    }

    #[test]
    fn shared_atom_paste_is_a_12_element_oml() {
        // Two 3-atom blocks glued on one atom: 0, five atoms, five coatoms, 1.
        // The shared atom's complement is one element seen from both blocks.
        let h = graph(&[&[0, 1, 2], &[2, 3, 4]], 5);
        let pasted = paste_greechie(&h).unwrap();
        assert_eq!(pasted.element_count(), 12);
        assert!(pasted.check_orthomodular().is_ok());
        assert!(pasted.is_isomorphic_to(&test_lattice("g2shared")));

        let nc = pasted.ortho(pasted.index_of("p2").unwrap());
        assert_eq!(pasted.label(nc), "p0+p1");
    }

    #[test]
    fn overlapping_blocks_are_rejected() {
        let h = graph(&[&[0, 1, 2], &[0, 1, 3]], 4);
        assert_eq!(
            paste_greechie(&h).unwrap_err(),
            PasteError::OverlapTooLarge { i: 0, j: 1, count: 2 }
        );
    }

    #[test]
    fn triangle_loop_fails_with_diagnostic() {
        let h = graph(&[&[0, 1, 2], &[2, 3, 4], &[4, 5, 0]], 6);
        match paste_greechie(&h).unwrap_err() {
            PasteError::NotOrthomodularAfterPaste { loop_blocks, .. } => {
                assert_eq!(loop_blocks, Some(vec![0, 1, 2]));
            }
            other => panic!("expected paste failure, got {other:?}"),
        }
    }

    #[test]
    fn square_loop_fails_with_diagnostic() {
        let h = graph(&[&[0, 1, 2], &[2, 3, 4], &[4, 5, 6], &[6, 7, 0]], 8);
        match paste_greechie(&h).unwrap_err() {
            PasteError::NotOrthomodularAfterPaste { loop_blocks, .. } => {
                assert_eq!(loop_blocks, Some(vec![0, 1, 2, 3]));
            }
            other => panic!("expected paste failure, got {other:?}"),
        }
    }

    #[test]
    fn shared_atom_between_two_and_three_blocks() {
        // {x,y} glued to {x,c,d}: y is forced equal to c v d, so the paste
        // collapses to the 8-element Boolean algebra.
        let h = graph(&[&[0, 1], &[0, 2, 3]], 4);
        let pasted = paste_greechie(&h).unwrap();
        assert!(pasted.is_isomorphic_to(&test_lattice("b8")));
    }
}
