//! The modal layer over an orthomodular lattice: the possibility operator
//! (least central element above), its dual necessity operator, the S1-S7
//! equational suite, possibility spaces, classical consequences by
//! definition and by closed form, the common-complement report, and the
//! many-worlds valuation construction.

use std::fmt;

use thiserror::Error;

use crate::boolean::{
    all_boolean_sublattices, enumerate_two_valuations, extend_to_maximal, generated_filter,
    Block, TwoValuation,
};
use crate::lattice::{FiniteOrtholattice, LawViolation};

/// The seven equations every saturated lattice must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SAxiom {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
}

impl SAxiom {
    pub const ALL: [SAxiom; 7] = [
        SAxiom::S1,
        SAxiom::S2,
        SAxiom::S3,
        SAxiom::S4,
        SAxiom::S5,
        SAxiom::S6,
        SAxiom::S7,
    ];
}

impl fmt::Display for SAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}", *self as usize + 1)
    }
}

/// Per-axiom outcome: pass, or the first violating pair in index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: SAxiom,
    pub violation: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModalError {
    #[error("base lattice is not an ortholattice ({law} fails at `{x}`, `{y}`)")]
    NotOrtholattice { law: String, x: String, y: String },
    #[error("base lattice is not orthomodular (witness `{x}`, `{y}`)")]
    NotOrthomodular { x: String, y: String },
    #[error("modal axiom {axiom} fails at (`{x}`, `{y}`)")]
    AxiomFailure { axiom: SAxiom, x: String, y: String },
    #[error("family of designated elements is empty")]
    EmptyFamily,
    #[error("element index {0} out of range")]
    BadElement(usize),
}

fn ortho_violation(l: &FiniteOrtholattice, v: LawViolation) -> ModalError {
    ModalError::NotOrtholattice {
        law: v.law.to_string(),
        x: l.label(v.x).to_owned(),
        y: l.label(v.y).to_owned(),
    }
}

/// An orthomodular lattice saturated with its modal operators: for each
/// element the least central element above it, and the dual necessity map.
#[derive(Debug, Clone)]
pub struct ModalLattice {
    base: FiniteOrtholattice,
    center: Vec<usize>,
    diamond: Vec<usize>,
    boxes: Vec<usize>,
}

/// The Boolean sublattice generated by the image of the possibility
/// operator; always central.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PossibilitySpace {
    members: Vec<usize>,
}

impl PossibilitySpace {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn block(&self, host: &FiniteOrtholattice) -> Block {
        Block::new(host, self.members.iter().copied())
            .expect("possibility space is a Boolean sublattice")
    }
}

/// Result of the many-worlds construction: a two-valuation of the
/// possibility space sending every designated possibility to 1, or the
/// minimal zero-meet witness subfamily (positions into the input family).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManyWorldsOutcome {
    Valuation(TwoValuation),
    Infeasible { witness: Vec<usize> },
}

impl ModalLattice {
    /// Saturate a finite orthomodular lattice: compute the center, derive
    /// both modal maps, and verify S1-S7 (aborting with a witness on the
    /// first failure).
    pub fn saturate(base: FiniteOrtholattice) -> Result<Self, ModalError> {
        if let Err(v) = base.check_ortholattice() {
            return Err(ortho_violation(&base, v));
        }
        if let Err(v) = base.check_orthomodular() {
            return Err(ModalError::NotOrthomodular {
                x: base.label(v.x).to_owned(),
                y: base.label(v.y).to_owned(),
            });
        }
        let center = base.center();
        let diamond: Vec<usize> = base
            .elements()
            .map(|a| base.meet_all(center.iter().copied().filter(|&z| base.leq(a, z))))
            .collect();
        debug_assert!(base.elements().all(|a| {
            center.binary_search(&diamond[a]).is_ok() && base.leq(a, diamond[a])
        }));
        let modal = Self::with_diamond_map(base, diamond);
        if let Some(check) = modal.check_s_axioms().iter().find(|c| c.violation.is_some()) {
            let (x, y) = check.violation.unwrap();
            return Err(ModalError::AxiomFailure {
                axiom: check.axiom,
                x: modal.base.label(x).to_owned(),
                y: modal.base.label(y).to_owned(),
            });
        }
        Ok(modal)
    }

    /// Assemble a modal lattice from an explicit possibility map without
    /// validating the axioms. Intended for mutation tests; `saturate` is the
    /// checked path.
    pub fn with_diamond_map(base: FiniteOrtholattice, diamond: Vec<usize>) -> Self {
        assert_eq!(diamond.len(), base.element_count());
        let center = base.center();
        let boxes: Vec<usize> =
            base.elements().map(|x| base.ortho(diamond[base.ortho(x)])).collect();
        Self { base, center, diamond, boxes }
    }

    pub fn base(&self) -> &FiniteOrtholattice {
        &self.base
    }

    pub fn center_set(&self) -> &[usize] {
        &self.center
    }

    /// Least central element above `x`.
    pub fn diamond(&self, x: usize) -> usize {
        self.diamond[x]
    }

    /// The dual operator `not possible not`.
    pub fn necessity(&self, x: usize) -> usize {
        self.boxes[x]
    }

    /// Evaluate all seven axioms over every pair, reporting the first
    /// violating pair per axiom in index order.
    pub fn check_s_axioms(&self) -> Vec<AxiomCheck> {
        let l = &self.base;
        let b = |x: usize| self.boxes[x];
        SAxiom::ALL
            .iter()
            .map(|&axiom| {
                let mut violation = None;
                'scan: for x in l.elements() {
                    for y in l.elements() {
                        let ok = match axiom {
                            SAxiom::S1 => l.leq(b(x), x),
                            SAxiom::S2 => b(l.top()) == l.top(),
                            SAxiom::S3 => b(b(x)) == b(x),
                            SAxiom::S4 => b(l.meet(x, y)) == l.meet(b(x), b(y)),
                            SAxiom::S5 => {
                                y == l.join(l.meet(y, b(x)), l.meet(y, l.ortho(b(x))))
                            }
                            SAxiom::S6 => b(l.join(x, b(y))) == l.join(b(x), b(y)),
                            SAxiom::S7 => l.leq(
                                b(l.join(l.ortho(x), l.meet(y, x))),
                                l.join(l.ortho(b(x)), b(y)),
                            ),
                        };
                        if !ok {
                            violation = Some((x, y));
                            break 'scan;
                        }
                    }
                }
                AxiomCheck { axiom, violation }
            })
            .collect()
    }

    /// The sublattice generated by the image of the possibility operator.
    pub fn possibility_space(&self) -> PossibilitySpace {
        let image: Vec<usize> = self.diamond.to_vec();
        let members = self.base.generated_sublattice(&image);
        debug_assert!(members.iter().all(|m| self.center.binary_search(m).is_ok()));
        PossibilitySpace { members }
    }

    /// The sublattice generated by a block together with the possibility
    /// space, verified Boolean; the error carries the witness.
    pub fn posspace_extension(
        &self,
        block: &Block,
    ) -> Result<Vec<usize>, crate::boolean::BlockError> {
        let mut seed = block.members().to_vec();
        seed.extend_from_slice(self.possibility_space().members());
        let members = self.base.generated_sublattice(&seed);
        Block::new(&self.base, members.iter().copied())?;
        Ok(members)
    }

    /// Classical consequences of `p` by the defining quantification: the
    /// possibility-space elements sent to 1 by every two-valuation (of the
    /// extension of any Boolean sublattice containing `p`) that sends `p`
    /// to 1.
    pub fn cons_bruteforce(&self, p: usize) -> Vec<usize> {
        let poss = self.possibility_space();
        let sublattices = all_boolean_sublattices(&self.base)
            .expect("saturated base is orthomodular");
        let mut rejected = vec![false; self.base.element_count()];
        for w in sublattices.iter().filter(|w| w.binary_search(&p).is_ok()) {
            let mut seed = w.clone();
            seed.extend_from_slice(poss.members());
            let extension = self.base.generated_sublattice(&seed);
            let block = Block::new(&self.base, extension)
                .expect("extension of a block by the possibility space is Boolean");
            for v in enumerate_two_valuations(&self.base, &block) {
                if v.value(p) != Some(true) {
                    continue;
                }
                for &x in poss.members() {
                    if v.value(x) != Some(true) {
                        rejected[x] = true;
                    }
                }
            }
        }
        poss.members().iter().copied().filter(|&x| !rejected[x]).collect()
    }

    /// Classical consequences in closed form: the upward closure of the
    /// possibility of `p` within the possibility space.
    pub fn cons_closed_form(&self, p: usize) -> Vec<usize> {
        let poss = self.possibility_space();
        let dp = self.diamond(p);
        poss.members().iter().copied().filter(|&x| self.base.leq(dp, x)).collect()
    }

    /// For every pair of distinct atoms, whether a common complement exists
    /// and whether their possibilities agree; the lemma says the former
    /// forces the latter.
    pub fn common_complement_report(&self) -> CommonComplementReport {
        let atoms = self.base.atoms();
        let mut pairs = Vec::new();
        for (i, &a) in atoms.iter().enumerate() {
            for &b in &atoms[i + 1..] {
                let common = self
                    .base
                    .elements()
                    .find(|&c| {
                        self.base.meet(a, c) == self.base.bottom()
                            && self.base.join(a, c) == self.base.top()
                            && self.base.meet(b, c) == self.base.bottom()
                            && self.base.join(b, c) == self.base.top()
                    });
                pairs.push(AtomPairWitness {
                    a,
                    b,
                    common_complement: common,
                    diamonds_equal: self.diamond(a) == self.diamond(b),
                });
            }
        }
        let implication_holds = pairs
            .iter()
            .all(|p| p.common_complement.is_none() || p.diamonds_equal);
        CommonComplementReport { pairs, implication_holds }
    }

    /// Build a two-valuation of the possibility space sending every
    /// designated element's possibility to 1, by generating a filter from
    /// the possibilities and extending it to a maximal one. If the
    /// possibilities have meet zero, report the minimal witness subfamily
    /// (smallest, then lexicographically first, by family position).
    pub fn many_worlds_valuation(
        &self,
        family: &[usize],
    ) -> Result<ManyWorldsOutcome, ModalError> {
        if family.is_empty() {
            return Err(ModalError::EmptyFamily);
        }
        if let Some(&bad) = family.iter().find(|&&p| p >= self.base.element_count()) {
            return Err(ModalError::BadElement(bad));
        }
        let diamonds: Vec<usize> = family.iter().map(|&p| self.diamond(p)).collect();
        let total = self.base.meet_all(diamonds.iter().copied());
        if total == self.base.bottom() {
            let witness = minimal_zero_meet(&self.base, &diamonds)
                .expect("total meet is zero, so some subfamily witnesses it");
            return Ok(ManyWorldsOutcome::Infeasible { witness });
        }
        let block = self.possibility_space().block(&self.base);
        let filter = generated_filter(&self.base, &block, &diamonds)
            .expect("possibilities lie in the possibility space");
        let maximal = extend_to_maximal(&self.base, &block, &filter)
            .expect("filter with nonzero meet is proper");
        let valuation =
            TwoValuation::from_true_set(block.members().to_vec(), maximal.members().iter().copied());
        debug_assert!(diamonds.iter().all(|&d| valuation.value(d) == Some(true)));
        Ok(ManyWorldsOutcome::Valuation(valuation))
    }
}

/// Smallest subfamily (by size, then lexicographic position order) whose
/// meet is bottom. Positions index into `values`.
fn minimal_zero_meet(l: &FiniteOrtholattice, values: &[usize]) -> Option<Vec<usize>> {
    let n = values.len();
    for size in 1..=n {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            if l.meet_all(combo.iter().map(|&i| values[i])) == l.bottom() {
                return Some(combo);
            }
            if !next_combination(&mut combo, n) {
                break;
            }
        }
    }
    None
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AtomPairWitness {
    pub a: usize,
    pub b: usize,
    pub common_complement: Option<usize>,
    pub diamonds_equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonComplementReport {
    pub pairs: Vec<AtomPairWitness>,
    pub implication_holds: bool,
}
