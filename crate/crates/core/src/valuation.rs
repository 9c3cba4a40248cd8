//! Global valuations over the maximal blocks of an orthomodular lattice,
//! compatible actualizations of possibility-space valuations, the
//! equivalence check between the two, and designated-valuation families.
//!
//! Every search processes blocks in descending overlap order with atoms by
//! index, so the first witness found is deterministic.

use thiserror::Error;

use crate::boolean::{enumerate_two_valuations, maximal_blocks, Block, BlockError, TwoValuation};
use crate::lattice::FiniteOrtholattice;
use crate::modal::ModalLattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("valuation domain does not match the possibility space")]
    DomainMismatch,
    #[error("designated element `{0}` is the zero element")]
    ZeroDesignated(String),
    #[error("designation references unknown block index {0}")]
    BadBlockIndex(usize),
    #[error("designated element `{0}` is not a member of block {1}")]
    NotInBlock(String, usize),
    #[error(transparent)]
    Block(#[from] BlockError),
}

/// A compatible family of two-valued homomorphisms, one per maximal block,
/// stored as the chosen block atom. Valuations of overlapping blocks agree
/// on the overlap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalValuation {
    blocks: Vec<Block>,
    chosen_atoms: Vec<usize>,
}

impl GlobalValuation {
    /// Blocks in canonical (sorted) order.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// The block atom valued 1 in each block, parallel to `blocks()`.
    pub fn chosen_atoms(&self) -> &[usize] {
        &self.chosen_atoms
    }

    pub fn valuation(&self, host: &FiniteOrtholattice, block_idx: usize) -> TwoValuation {
        TwoValuation::from_atom(host, &self.blocks[block_idx], self.chosen_atoms[block_idx])
    }

    /// Exhaustive check of the compatibility condition on every block pair.
    pub fn verify_compatibility(&self, host: &FiniteOrtholattice) -> bool {
        (0..self.blocks.len()).all(|i| {
            (i + 1..self.blocks.len()).all(|j| {
                let shared = self.blocks[i].intersection(&self.blocks[j]);
                self.valuation(host, i)
                    .agrees_with_on(&self.valuation(host, j), &shared)
            })
        })
    }
}

/// Per-block constraints for the backtracking search: the chosen atom must
/// lie below `below` (if set) and agree with fixed values on listed elements.
#[derive(Debug, Clone, Default)]
struct BlockConstraint {
    below: Option<usize>,
    fixed: Vec<(usize, bool)>,
}

fn search_order(blocks: &[Block]) -> Vec<usize> {
    let overlap: Vec<usize> = (0..blocks.len())
        .map(|i| {
            (0..blocks.len())
                .filter(|&j| j != i)
                .map(|j| blocks[i].intersection(&blocks[j]).len())
                .sum()
        })
        .collect();
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(overlap[i]), i));
    order
}

/// Backtracking over per-block atom choices with overlap propagation.
/// Returns the number of complete compatible families found, stopping early
/// at `limit` and recording the first complete choice vector in `found`.
fn search(
    host: &FiniteOrtholattice,
    blocks: &[Block],
    constraints: &[BlockConstraint],
    limit: u64,
    found: &mut Option<Vec<usize>>,
) -> u64 {
    let order = search_order(blocks);
    let atoms: Vec<Vec<usize>> = blocks.iter().map(|b| b.atoms(host)).collect();
    let mut chosen: Vec<Option<usize>> = vec![None; blocks.len()];
    let mut count = 0u64;

    fn admissible(
        host: &FiniteOrtholattice,
        blocks: &[Block],
        constraints: &[BlockConstraint],
        chosen: &[Option<usize>],
        idx: usize,
        atom: usize,
    ) -> bool {
        let c = &constraints[idx];
        if let Some(bound) = c.below {
            if !host.leq(atom, bound) {
                return false;
            }
        }
        for &(x, value) in &c.fixed {
            if host.leq(atom, x) != value {
                return false;
            }
        }
        for (j, other) in chosen.iter().enumerate() {
            let Some(other_atom) = other else { continue };
            for x in blocks[idx].intersection(&blocks[j]) {
                if host.leq(atom, x) != host.leq(*other_atom, x) {
                    return false;
                }
            }
        }
        true
    }

    fn rec(
        host: &FiniteOrtholattice,
        blocks: &[Block],
        constraints: &[BlockConstraint],
        order: &[usize],
        atoms: &[Vec<usize>],
        chosen: &mut Vec<Option<usize>>,
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
                *found = Some(chosen.iter().map(|c| c.unwrap()).collect());
            }
            return;
        }
        let idx = order[depth];
        for &atom in &atoms[idx] {
            if admissible(host, blocks, constraints, chosen, idx, atom) {
                chosen[idx] = Some(atom);
                rec(host, blocks, constraints, order, atoms, chosen, depth + 1, limit, count, found);
                chosen[idx] = None;
                if *count >= limit {
                    return;
                }
            }
        }
    }

    rec(host, blocks, constraints, &order, &atoms, &mut chosen, 0, limit, &mut count, found);
    count
}

fn run_search(
    host: &FiniteOrtholattice,
    blocks: Vec<Block>,
    constraints: Vec<BlockConstraint>,
    limit: u64,
) -> (u64, Option<GlobalValuation>) {
    let mut found = None;
    let count = search(host, &blocks, &constraints, limit, &mut found);
    let valuation = found.map(|chosen_atoms| {
        let gv = GlobalValuation { blocks, chosen_atoms };
        debug_assert!(gv.verify_compatibility(host));
        gv
    });
    (count, valuation)
}

/// First global valuation in deterministic search order, if any exists.
pub fn find_global_valuation(
    host: &FiniteOrtholattice,
) -> Result<Option<GlobalValuation>, ValuationError> {
    let blocks = maximal_blocks(host)?;
    let constraints = vec![BlockConstraint::default(); blocks.len()];
    Ok(run_search(host, blocks, constraints, 1).1)
}

/// Exhaustive count of compatible families.
pub fn count_global_valuations(host: &FiniteOrtholattice) -> Result<u64, ValuationError> {
    let blocks = maximal_blocks(host)?;
    let constraints = vec![BlockConstraint::default(); blocks.len()];
    Ok(run_search(host, blocks, constraints, u64::MAX).0)
}

/// A global valuation agreeing with `f` on every block's intersection with
/// the possibility space, or `None` when the constraints are contradictory.
pub fn compatible_actualization(
    modal: &ModalLattice,
    f: &TwoValuation,
) -> Result<Option<GlobalValuation>, ValuationError> {
    let host = modal.base();
    let poss = modal.possibility_space();
    if f.domain() != poss.members() {
        return Err(ValuationError::DomainMismatch);
    }
    let blocks = maximal_blocks(host)?;
    let constraints: Vec<BlockConstraint> = blocks
        .iter()
        .map(|b| BlockConstraint {
            below: None,
            fixed: b
                .members()
                .iter()
                .copied()
                .filter(|&x| poss.contains(x))
                .map(|x| (x, f.value(x).unwrap()))
                .collect(),
        })
        .collect();
    Ok(run_search(host, blocks, constraints, 1).1)
}

/// Both sides of the global-valuation / compatible-actualization
/// equivalence, computed independently by exhaustive search.
#[derive(Debug, Clone)]
pub struct MksReport {
    pub global: Option<GlobalValuation>,
    /// First possibility-space valuation admitting an actualization,
    /// with that actualization.
    pub actualization: Option<(TwoValuation, GlobalValuation)>,
    pub tested_valuations: usize,
    pub agree: bool,
}

pub fn check_mks(modal: &ModalLattice) -> Result<MksReport, ValuationError> {
    let host = modal.base();
    let global = find_global_valuation(host)?;
    let poss_block = modal.possibility_space().block(host);
    let candidates = enumerate_two_valuations(host, &poss_block);
    let tested_valuations = candidates.len();
    let mut actualization = None;
    for f in candidates {
        if let Some(gv) = compatible_actualization(modal, &f)? {
            actualization = Some((f, gv));
            break;
        }
    }
    let agree = global.is_some() == actualization.is_some();
    Ok(MksReport { global, actualization, tested_valuations, agree })
}

/// One designated element per world: a block index (into the canonical
/// maximal-block list) and a member of that block to be valued 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MwiDesignation {
    pub block: usize,
    pub element: usize,
}

/// A family of designated valuations, one per world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MwiFamily {
    pub designations: Vec<MwiDesignation>,
}

/// Per-world satisfiability witness: the least block atom below the
/// designated element induces a valuation sending it to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PerWorldWitness {
    pub designation: MwiDesignation,
    pub witness_atom: usize,
}

/// The per-world reports plus the joint question: does one global valuation
/// satisfy every designation simultaneously?
#[derive(Debug, Clone)]
pub struct MwiReport {
    pub per_world: Vec<PerWorldWitness>,
    pub joint: Option<GlobalValuation>,
}

/// Check a designated family: each world is satisfiable on its own exactly
/// when its element is nonzero, while joint satisfiability is a genuinely
/// global constraint and may fail.
pub fn mwi_family_check(
    host: &FiniteOrtholattice,
    family: &MwiFamily,
) -> Result<MwiReport, ValuationError> {
    let blocks = maximal_blocks(host)?;
    let mut per_world = Vec::new();
    for &d in &family.designations {
        let block = blocks.get(d.block).ok_or(ValuationError::BadBlockIndex(d.block))?;
        if !block.contains(d.element) {
            return Err(ValuationError::NotInBlock(
                host.label(d.element).to_owned(),
                d.block,
            ));
        }
        if d.element == host.bottom() {
            return Err(ValuationError::ZeroDesignated(host.label(d.element).to_owned()));
        }
        let witness_atom = block
            .atoms(host)
            .into_iter()
            .find(|&p| host.leq(p, d.element))
            .expect("a nonzero block member has a block atom below it");
        per_world.push(PerWorldWitness { designation: d, witness_atom });
    }

    let mut constraints = vec![BlockConstraint::default(); blocks.len()];
    for &d in &family.designations {
        let c = &mut constraints[d.block];
        c.below = Some(match c.below {
            Some(prev) => host.meet(prev, d.element),
            None => d.element,
        });
    }
    let joint = run_search(host, blocks, constraints, 1).1;
    Ok(MwiReport { per_world, joint })
}
