//! Context hypergraphs: atoms plus blocks-as-atom-sets, the scalable layer
//! for no-assignment searches. An assignment is a two-coloring of the atoms
//! with exactly one true atom per block; shared atoms carry their color
//! across blocks, which is exactly the compatibility condition when every
//! block is read as the power set of its atoms.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("hypergraph declares no atoms")]
    NoAtoms,
    #[error("duplicate atom label `{0}`")]
    DuplicateLabel(String),
    #[error("block {0} has fewer than two atoms")]
    SmallBlock(usize),
    #[error("duplicate atom `{0}` in block {1}")]
    DuplicateAtom(String, usize),
    #[error("block {1} references unknown atom index {0}")]
    BadAtom(usize, usize),
    #[error("atom `{0}` belongs to no block")]
    OrphanAtom(String),
    #[error("designation references unknown block index {0}")]
    BadBlockIndex(usize),
    #[error("designated atom `{0}` is not in block {1}")]
    NotInBlock(String, usize),
}

/// Atoms with their incidence blocks; validated so every atom is used,
/// every block has at least two atoms, and no block repeats an atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextHypergraph {
    atom_labels: Vec<String>,
    blocks: Vec<Vec<usize>>,
}

impl ContextHypergraph {
    pub fn new(
        atom_labels: Vec<String>,
        blocks: Vec<Vec<usize>>,
    ) -> Result<Self, HypergraphError> {
        if atom_labels.is_empty() {
            return Err(HypergraphError::NoAtoms);
        }
        {
            let mut seen = BTreeSet::new();
            for l in &atom_labels {
                if !seen.insert(l.as_str()) {
                    return Err(HypergraphError::DuplicateLabel(l.clone()));
                }
            }
        }
        let mut blocks = blocks;
        for (i, block) in blocks.iter_mut().enumerate() {
            if block.len() < 2 {
                return Err(HypergraphError::SmallBlock(i));
            }
            let mut seen = BTreeSet::new();
            for &a in block.iter() {
                if a >= atom_labels.len() {
                    return Err(HypergraphError::BadAtom(a, i));
                }
                if !seen.insert(a) {
                    return Err(HypergraphError::DuplicateAtom(atom_labels[a].clone(), i));
                }
            }
            block.sort_unstable();
        }
        for (a, label) in atom_labels.iter().enumerate() {
            if !blocks.iter().any(|b| b.binary_search(&a).is_ok()) {
                return Err(HypergraphError::OrphanAtom(label.clone()));
            }
        }
        Ok(Self { atom_labels, blocks })
    }

    pub fn atom_count(&self) -> usize {
        self.atom_labels.len()
    }

    pub fn atom_label(&self, a: usize) -> &str {
        &self.atom_labels[a]
    }

    pub fn atom_labels(&self) -> &[String] {
        &self.atom_labels
    }

    pub fn atom_index(&self, label: &str) -> Option<usize> {
        self.atom_labels.iter().position(|l| l == label)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// How many blocks each atom belongs to.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.atom_labels.len()];
        for block in &self.blocks {
            for &a in block {
                deg[a] += 1;
            }
        }
        deg
    }

    /// Block pairs sharing two or more atoms; legal inputs, but worth a
    /// warning and fatal for pasting.
    pub fn overlap_warnings(&self) -> Vec<(usize, usize, Vec<usize>)> {
        let mut out = Vec::new();
        for i in 0..self.blocks.len() {
            for j in i + 1..self.blocks.len() {
                let shared: Vec<usize> = self.blocks[i]
                    .iter()
                    .copied()
                    .filter(|a| self.blocks[j].binary_search(a).is_ok())
                    .collect();
                if shared.len() > 1 {
                    out.push((i, j, shared));
                }
            }
        }
        out
    }
}

/// The counting argument: with every atom in an even number of blocks, the
/// selected-atom incidences sum to an even number, but one selection per
/// block sums to the (odd) block count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCertificate {
    pub block_count: usize,
    pub degrees: Vec<usize>,
}

/// Search outcome: the sorted true-atom set of the first assignment found,
/// or unsatisfiability with a parity certificate when the counting argument
/// applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssignmentOutcome {
    Assignment(Vec<usize>),
    Unsatisfiable { parity: Option<ParityCertificate> },
}

fn parity_certificate(h: &ContextHypergraph) -> Option<ParityCertificate> {
    let degrees = h.degrees();
    if h.blocks().len() % 2 == 1 && degrees.iter().all(|&d| d % 2 == 0) {
        Some(ParityCertificate { block_count: h.blocks().len(), degrees })
    } else {
        None
    }
}

fn block_order(h: &ContextHypergraph) -> Vec<usize> {
    let blocks = h.blocks();
    let overlap: Vec<usize> = (0..blocks.len())
        .map(|i| {
            (0..blocks.len())
                .filter(|&j| j != i)
                .map(|j| {
                    blocks[i]
                        .iter()
                        .filter(|a| blocks[j].binary_search(a).is_ok())
                        .count()
                })
                .sum()
        })
        .collect();
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(overlap[i]), i));
    order
}

/// Backtracking over per-block true-atom choices under a partial coloring.
/// `limit` bounds the number of assignments counted; the first complete
/// coloring's true set lands in `found`.
fn color_search(
    h: &ContextHypergraph,
    forced_true: &[usize],
    limit: u64,
    found: &mut Option<Vec<usize>>,
) -> u64 {
    let order = block_order(h);
    let mut color: Vec<Option<bool>> = vec![None; h.atom_count()];
    for &a in forced_true {
        color[a] = Some(true);
    }
    let mut count = 0u64;

    fn rec(
        h: &ContextHypergraph,
        order: &[usize],
        color: &mut Vec<Option<bool>>,
        depth: usize,
        limit: u64,
        count: &mut u64,
        found: &mut Option<Vec<usize>>,
    ) {
        if *count >= limit {
            return;
        }
        if depth == order.len() {
            *count += 1;
            if found.is_none() {
                *found = Some(
                    color
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| **c == Some(true))
                        .map(|(a, _)| a)
                        .collect(),
                );
            }
            return;
        }
        let block = &h.blocks()[order[depth]];
        for pick in 0..block.len() {
            let mut touched = Vec::new();
            let mut ok = true;
            for (k, &a) in block.iter().enumerate() {
                let want = k == pick;
                match color[a] {
                    Some(c) if c != want => {
                        ok = false;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        color[a] = Some(want);
                        touched.push(a);
                    }
                }
            }
            if ok {
                rec(h, order, color, depth + 1, limit, count, found);
            }
            for a in touched {
                color[a] = None;
            }
            if *count >= limit {
                return;
            }
        }
    }

    rec(h, &order, &mut color, 0, limit, &mut count, found);
    count
}

/// Find an exactly-one-true-atom-per-block assignment, or certify
/// unsatisfiability by parity when possible.
pub fn hypergraph_assignment(h: &ContextHypergraph) -> AssignmentOutcome {
    let mut found = None;
    if color_search(h, &[], 1, &mut found) > 0 {
        AssignmentOutcome::Assignment(found.unwrap())
    } else {
        AssignmentOutcome::Unsatisfiable { parity: parity_certificate(h) }
    }
}

/// Exhaustive assignment count; the oracle side of layer-equivalence checks.
pub fn count_assignments(h: &ContextHypergraph) -> u64 {
    color_search(h, &[], u64::MAX, &mut None)
}

/// First assignment with the given atoms forced true, if any.
pub fn hypergraph_assignment_with(
    h: &ContextHypergraph,
    forced_true: &[usize],
) -> Option<Vec<usize>> {
    let mut found = None;
    color_search(h, forced_true, 1, &mut found);
    found
}

/// Hypergraph analogue of the designated-family check: each designation is
/// satisfiable on its own (select that atom in its block), while joint
/// satisfiability runs the constrained global search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergraphMwiReport {
    /// `(block, atom)` designations, all individually satisfiable.
    pub per_world: Vec<(usize, usize)>,
    pub joint: Option<Vec<usize>>,
}

pub fn hypergraph_mwi_report(
    h: &ContextHypergraph,
    designations: &[(usize, usize)],
) -> Result<HypergraphMwiReport, HypergraphError> {
    for &(b, a) in designations {
        let block = h.blocks().get(b).ok_or(HypergraphError::BadBlockIndex(b))?;
        if block.binary_search(&a).is_err() {
            return Err(HypergraphError::NotInBlock(h.atom_label(a).to_owned(), b));
        }
    }
    let forced: Vec<usize> = designations.iter().map(|&(_, a)| a).collect();
    let joint = hypergraph_assignment_with(h, &forced);
    Ok(HypergraphMwiReport { per_world: designations.to_vec(), joint })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, CatalogEntry};

    fn simple(blocks: &[&[usize]], atom_count: usize) -> ContextHypergraph {
        let labels = (0..atom_count).map(|i| format!("p{i}")).collect();
        ContextHypergraph::new(labels, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn cab18() -> ContextHypergraph {
        match catalog("cab18").unwrap() {
            CatalogEntry::Hypergraph(h) => h,
            _ => panic!("cab18 is a hypergraph"),
        }
    }

    #[test]
    fn two_overlapping_triples_have_an_assignment() {
        // Blocks {a,b,c} and {c,d,e}: the shared atom can be true in both.
        let h = simple(&[&[0, 1, 2], &[2, 3, 4]], 5);
        match hypergraph_assignment(&h) {
            AssignmentOutcome::Assignment(trues) => {
                for block in h.blocks() {
                    let hits = block.iter().filter(|a| trues.contains(a)).count();
                    assert_eq!(hits, 1);
                }
            }
            other => panic!("expected assignment, got {other:?}"),
        }
    }

    #[test]
    fn single_block_has_one_assignment_per_atom() {
        let h = simple(&[&[0, 1]], 2);
        assert_eq!(count_assignments(&h), 2);
    }

    #[test]
    fn cab18_is_unsatisfiable_with_parity_certificate() {
        let h = cab18();
        assert_eq!(h.atom_count(), 18);
        assert_eq!(h.blocks().len(), 9);
        assert!(h.blocks().iter().all(|b| b.len() == 4));
        assert!(h.degrees().iter().all(|&d| d == 2));
        match hypergraph_assignment(&h) {
            AssignmentOutcome::Unsatisfiable { parity: Some(cert) } => {
                assert_eq!(cert.block_count, 9);
                assert!(cert.degrees.iter().all(|&d| d % 2 == 0));
            }
            other => panic!("expected parity-certified unsat, got {other:?}"),
        }
        assert_eq!(count_assignments(&h), 0);
    }

    #[test]
    fn triangle_of_pairs_is_parity_certified() {
        // Exactly one true atom per 2-block around a triangle is impossible,
        // and the counting argument sees it: 3 blocks, every degree 2.
        let h = simple(&[&[0, 1], &[1, 2], &[0, 2]], 3);
        match hypergraph_assignment(&h) {
            AssignmentOutcome::Unsatisfiable { parity } => assert!(parity.is_some()),
            other => panic!("expected unsat, got {other:?}"),
        }
    }

    #[test]
    fn unsatisfiable_without_parity_has_no_certificate() {
        // Adding a fourth block breaks both parity conditions (even block
        // count, an odd degree) while staying unsatisfiable.
        let h = simple(&[&[0, 1], &[1, 2], &[0, 2], &[0, 3]], 4);
        match hypergraph_assignment(&h) {
            AssignmentOutcome::Unsatisfiable { parity } => assert!(parity.is_none()),
            other => panic!("expected unsat, got {other:?}"),
        }
        assert_eq!(count_assignments(&h), 0);
    }

    #[test]
    fn mwi_contrast_on_cab18() {
        let h = cab18();
        let designations: Vec<(usize, usize)> =
            h.blocks().iter().enumerate().map(|(i, b)| (i, b[0])).collect();
        let report = hypergraph_mwi_report(&h, &designations).unwrap();
        assert_eq!(report.per_world.len(), 9);
        assert!(report.joint.is_none());
    }

    #[test]
    fn validation_errors() {
        let labels: Vec<String> = ["x", "y", "z"].map(str::to_owned).to_vec();
        assert_eq!(
            ContextHypergraph::new(labels.clone(), vec![vec![0]]),
            Err(HypergraphError::SmallBlock(0))
        );
        assert_eq!(
            ContextHypergraph::new(labels.clone(), vec![vec![0, 0]]),
            Err(HypergraphError::DuplicateAtom("x".into(), 0))
        );
        assert_eq!(
            ContextHypergraph::new(labels.clone(), vec![vec![0, 7]]),
            Err(HypergraphError::BadAtom(7, 0))
        );
        assert_eq!(
            ContextHypergraph::new(labels, vec![vec![0, 1]]),
            Err(HypergraphError::OrphanAtom("z".into()))
        );
    }

    #[test]
    fn overlap_warnings_fire_on_big_intersections() {
        let h = simple(&[&[0, 1, 2], &[0, 1, 3]], 4);
        let warnings = h.overlap_warnings();
        assert_eq!(warnings.len(), 1);
        assert_eq!(warnings[0].2, vec![0, 1]);
    }
}
