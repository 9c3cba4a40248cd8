//! Boolean blocks (contexts), filters, congruence quotients, and two-valued
//! homomorphisms over a host ortholattice.
//!
//! A block is stored extensionally as a sorted member set and is only
//! meaningful together with its host lattice; every operation here takes the
//! host explicitly. Tie-breaking is always by least element index, so all
//! outputs are deterministic.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::lattice::FiniteOrtholattice;

/// Why a member set fails to be a Boolean sublattice of its host.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("block must contain the bottom and top of its host")]
    MissingBounds,
    #[error("block is not closed under {op} at (`{x}`, `{y}`)")]
    NotClosed { op: &'static str, x: String, y: String },
    #[error("block is not distributive at (`{a}`, `{b}`, `{c}`)")]
    NotDistributive { a: String, b: String, c: String },
}

/// Filter-level failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("filter is improper (contains bottom), quotient collapses")]
    ImproperFilter,
    #[error("`{x}` is below `{y}`, no filter separates them")]
    NotSeparable { x: String, y: String },
    #[error("generator `{0}` is not a member of the block")]
    OutsideBlock(String),
}

/// A Boolean sublattice of a host ortholattice, stored as a sorted member
/// set. Validated on construction: bounds present, closed under meet, join,
/// and orthocomplement, and distributive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Block {
    members: Vec<usize>,
}

impl Block {
    pub fn new(
        host: &FiniteOrtholattice,
        members: impl IntoIterator<Item = usize>,
    ) -> Result<Self, BlockError> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if !set.contains(&host.bottom()) || !set.contains(&host.top()) {
            return Err(BlockError::MissingBounds);
        }
        for &x in &set {
            if !set.contains(&host.ortho(x)) {
                return Err(BlockError::NotClosed {
                    op: "orthocomplement",
                    x: host.label(x).to_owned(),
                    y: host.label(x).to_owned(),
                });
            }
            for &y in &set {
                if !set.contains(&host.meet(x, y)) {
                    return Err(BlockError::NotClosed {
                        op: "meet",
                        x: host.label(x).to_owned(),
                        y: host.label(y).to_owned(),
                    });
                }
                if !set.contains(&host.join(x, y)) {
                    return Err(BlockError::NotClosed {
                        op: "join",
                        x: host.label(x).to_owned(),
                        y: host.label(y).to_owned(),
                    });
                }
            }
        }
        for &a in &set {
            for &b in &set {
                for &c in &set {
                    if !host.holds_t(a, b, c) {
                        return Err(BlockError::NotDistributive {
                            a: host.label(a).to_owned(),
                            b: host.label(b).to_owned(),
                            c: host.label(c).to_owned(),
                        });
                    }
                }
            }
        }
        Ok(Self { members: set.into_iter().collect() })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// Minimal nonzero members under the host order.
    pub fn atoms(&self, host: &FiniteOrtholattice) -> Vec<usize> {
        self.members
            .iter()
            .copied()
            .filter(|&m| {
                m != host.bottom()
                    && !self
                        .members
                        .iter()
                        .any(|&y| y != host.bottom() && host.lt(y, m))
            })
            .collect()
    }

    pub fn intersection(&self, other: &Block) -> Vec<usize> {
        self.members.iter().copied().filter(|&x| other.contains(x)).collect()
    }
}

/// An upward-closed, meet-closed subset of a block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filter {
    members: Vec<usize>,
    proper: bool,
    maximal: bool,
}

impl Filter {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn is_proper(&self) -> bool {
        self.proper
    }

    pub fn is_maximal(&self) -> bool {
        self.maximal
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }
}

/// A Boolean homomorphism from a block onto the two-element algebra,
/// stored as the preimage of 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoValuation {
    domain: Vec<usize>,
    trues: BTreeSet<usize>,
}

impl TwoValuation {
    /// The valuation induced by a block atom: `v(x) = 1` iff `atom <= x`.
    pub fn from_atom(host: &FiniteOrtholattice, block: &Block, atom: usize) -> Self {
        let trues = block
            .members()
            .iter()
            .copied()
            .filter(|&x| host.leq(atom, x))
            .collect();
        Self { domain: block.members().to_vec(), trues }
    }

    /// The valuation whose preimage of 1 is the given set (a maximal filter).
    pub fn from_true_set(domain: Vec<usize>, trues: impl IntoIterator<Item = usize>) -> Self {
        Self { domain, trues: trues.into_iter().collect() }
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn value(&self, x: usize) -> Option<bool> {
        if self.domain.binary_search(&x).is_ok() {
            Some(self.trues.contains(&x))
        } else {
            None
        }
    }

    pub fn trues(&self) -> impl Iterator<Item = usize> + '_ {
        self.trues.iter().copied()
    }

    /// Exhaustively check the homomorphism conditions against the host.
    pub fn is_homomorphism(&self, host: &FiniteOrtholattice) -> bool {
        let v = |x: usize| self.trues.contains(&x);
        self.value(host.bottom()) == Some(false)
            && self.value(host.top()) == Some(true)
            && self.domain.iter().all(|&x| {
                v(host.ortho(x)) == !v(x)
                    && self.domain.iter().all(|&y| {
                        v(host.meet(x, y)) == (v(x) && v(y))
                            && v(host.join(x, y)) == (v(x) || v(y))
                    })
            })
    }

    pub fn agrees_with_on(&self, other: &TwoValuation, elems: &[usize]) -> bool {
        elems.iter().all(|&x| self.value(x) == other.value(x))
    }
}

/// All maximal Boolean sublattices of an orthomodular host, in sorted order.
///
/// Blocks are exactly the maximal pairwise-commuting subsets, found by clique
/// enumeration over the commutation relation and then validated as Boolean
/// sublattices. On a non-orthomodular host that validation can fail, which is
/// how the precondition surfaces.
pub fn maximal_blocks(host: &FiniteOrtholattice) -> Result<Vec<Block>, BlockError> {
    let n = host.element_count();
    // Irreflexive so the clique recursion never revisits its pivot.
    let commute: Vec<bool> = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            x != y && host.commutes(x, y) && host.commutes(y, x)
        })
        .collect();

    let mut cliques: Vec<Vec<usize>> = Vec::new();
    // Bron-Kerbosch without pivoting; hosts are desk-scale.
    fn expand(
        n: usize,
        commute: &[bool],
        r: &mut Vec<usize>,
        p: Vec<usize>,
        mut x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        let mut p = p;
        while let Some(&v) = p.first() {
            let keep = |u: &&usize| commute[v * n + **u];
            let p2: Vec<usize> = p.iter().filter(keep).copied().collect();
            let x2: Vec<usize> = x.iter().filter(keep).copied().collect();
            r.push(v);
            expand(n, commute, r, p2, x2, out);
            r.pop();
            p.remove(0);
            x.push(v);
        }
    }
    expand(n, &commute, &mut Vec::new(), (0..n).collect(), Vec::new(), &mut cliques);

    let mut blocks: Vec<Block> = cliques
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            Block::new(host, c)
        })
        .collect::<Result<_, _>>()?;
    blocks.sort();
    blocks.dedup();
    Ok(blocks)
}

/// All Boolean sublattices of the host (not just maximal ones), each as a
/// sorted member set. Every Boolean sublattice sits inside some maximal
/// block and corresponds there to a partition of the block's atoms.
pub fn all_boolean_sublattices(
    host: &FiniteOrtholattice,
) -> Result<Vec<Vec<usize>>, BlockError> {
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    for block in maximal_blocks(host)? {
        let atoms = block.atoms(host);
        for partition in partitions(atoms.len()) {
            let class_count = partition.iter().copied().max().map_or(0, |m| m + 1);
            let class_joins: Vec<usize> = (0..class_count)
                .map(|c| {
                    host.join_all(
                        atoms
                            .iter()
                            .zip(&partition)
                            .filter(|&(_, &cls)| cls == c)
                            .map(|(&a, _)| a),
                    )
                })
                .collect();
            let mut members = BTreeSet::new();
            for mask in 0u32..(1 << class_count) {
                members.insert(host.join_all(
                    class_joins
                        .iter()
                        .enumerate()
                        .filter(|&(c, _)| mask & (1 << c) != 0)
                        .map(|(_, &j)| j),
                ));
            }
            out.insert(members.into_iter().collect());
        }
    }
    Ok(out.into_iter().collect())
}

/// Restricted-growth strings: all partitions of `0..k` as class indices.
fn partitions(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    fn rec(k: usize, i: usize, max_used: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == k {
            out.push(cur.clone());
            return;
        }
        for c in 0..=max_used + 1 {
            cur[i] = c;
            rec(k, i + 1, max_used.max(c), cur, out);
        }
    }
    if k == 0 {
        out.push(Vec::new());
    } else {
        cur[0] = 0;
        rec(k, 1, 0, &mut cur, &mut out);
    }
    out
}

/// Congruence classes of a filter on a block: `[x] = {y : not x v y in F
/// and x v not y in F}`, ordered by least member.
fn congruence_classes(
    host: &FiniteOrtholattice,
    block: &Block,
    filter_members: &[usize],
) -> Vec<Vec<usize>> {
    let in_filter = |x: usize| filter_members.binary_search(&x).is_ok();
    let related = |x: usize, y: usize| {
        in_filter(host.join(host.ortho(x), y)) && in_filter(host.join(x, host.ortho(y)))
    };
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &x in block.members() {
        match classes.iter_mut().find(|cls| related(cls[0], x)) {
            Some(cls) => cls.push(x),
            None => classes.push(vec![x]),
        }
    }
    classes.sort_by_key(|cls| cls[0]);
    classes
}

/// The least filter of `block` containing `generators`: the upward closure
/// of their total meet. An empty generator set yields the trivial filter.
pub fn generated_filter(
    host: &FiniteOrtholattice,
    block: &Block,
    generators: &[usize],
) -> Result<Filter, FilterError> {
    if let Some(&g) = generators.iter().find(|&&g| !block.contains(g)) {
        return Err(FilterError::OutsideBlock(host.label(g).to_owned()));
    }
    let m = host.meet_all(generators.iter().copied());
    let members: Vec<usize> =
        block.members().iter().copied().filter(|&x| host.leq(m, x)).collect();
    let proper = m != host.bottom();
    let maximal = proper && congruence_classes(host, block, &members).len() == 2;
    Ok(Filter { members, proper, maximal })
}

/// The quotient of a block by a proper filter, together with the natural map.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub algebra: FiniteOrtholattice,
    /// Block member -> class index in `algebra`.
    pub class_of: BTreeMap<usize, usize>,
}

/// Quotient a block by the congruence a filter determines. The classes form
/// a Boolean algebra and `x -> [x]` is a Boolean homomorphism onto it.
pub fn quotient(
    host: &FiniteOrtholattice,
    block: &Block,
    filter: &Filter,
) -> Result<Quotient, FilterError> {
    if !filter.is_proper() {
        return Err(FilterError::ImproperFilter);
    }
    let classes = congruence_classes(host, block, filter.members());
    let k = classes.len();
    debug_assert!(k >= 2);

    let reps: Vec<usize> = classes.iter().map(|cls| cls[0]).collect();
    let labels: Vec<String> =
        reps.iter().map(|&r| format!("[{}]", host.label(r))).collect();
    let mut relation = vec![false; k * k];
    for (i, &ri) in reps.iter().enumerate() {
        for (j, &rj) in reps.iter().enumerate() {
            if filter.contains(host.join(host.ortho(ri), rj)) {
                relation[i * k + j] = true;
            }
        }
    }
    let mut class_of = BTreeMap::new();
    for (i, cls) in classes.iter().enumerate() {
        for &x in cls {
            class_of.insert(x, i);
        }
    }
    let ortho_pairs: Vec<(usize, usize)> =
        reps.iter().enumerate().map(|(i, &r)| (i, class_of[&host.ortho(r)])).collect();
    let algebra = FiniteOrtholattice::from_order(labels, relation, &ortho_pairs)
        .expect("filter congruence yields a Boolean algebra");
    debug_assert!(algebra.is_boolean());
    debug_assert!(block.members().iter().all(|&x| {
        block.members().iter().all(|&y| {
            class_of[&host.meet(x, y)] == algebra.meet(class_of[&x], class_of[&y])
                && class_of[&host.join(x, y)] == algebra.join(class_of[&x], class_of[&y])
        }) && class_of[&host.ortho(x)] == algebra.ortho(class_of[&x])
    }));
    Ok(Quotient { algebra, class_of })
}

/// Extend a proper filter to a maximal one, adding the least-index eligible
/// element at each step.
pub fn extend_to_maximal(
    host: &FiniteOrtholattice,
    block: &Block,
    filter: &Filter,
) -> Result<Filter, FilterError> {
    if !filter.is_proper() {
        return Err(FilterError::ImproperFilter);
    }
    let mut current = filter.clone();
    while !current.is_maximal() {
        let m = host.meet_all(current.members().iter().copied());
        let e = block
            .members()
            .iter()
            .copied()
            .find(|&e| !current.contains(e) && host.meet(m, e) != host.bottom())
            .expect("a non-maximal proper filter always extends");
        let mut gens = current.members().to_vec();
        gens.push(e);
        current = generated_filter(host, block, &gens)?;
    }
    Ok(current)
}

/// A maximal filter containing `x` but not `y`; requires `x` not below `y`.
pub fn separating_maximal_filter(
    host: &FiniteOrtholattice,
    block: &Block,
    x: usize,
    y: usize,
) -> Result<Filter, FilterError> {
    for e in [x, y] {
        if !block.contains(e) {
            return Err(FilterError::OutsideBlock(host.label(e).to_owned()));
        }
    }
    if host.leq(x, y) {
        return Err(FilterError::NotSeparable {
            x: host.label(x).to_owned(),
            y: host.label(y).to_owned(),
        });
    }
    // x ^ not y is nonzero and any maximal filter above it keeps y out.
    let seed = host.meet(x, host.ortho(y));
    let filter = extend_to_maximal(host, block, &generated_filter(host, block, &[seed])?)?;
    debug_assert!(filter.contains(x) && !filter.contains(y));
    Ok(filter)
}

/// All two-valued homomorphisms of a block, one per block atom, in atom
/// index order.
pub fn enumerate_two_valuations(host: &FiniteOrtholattice, block: &Block) -> Vec<TwoValuation> {
    block
        .atoms(host)
        .into_iter()
        .map(|p| TwoValuation::from_atom(host, block, p))
        .collect()
}

/// All maximal filters of a block: the principal filters at its atoms.
pub fn maximal_filters(
    host: &FiniteOrtholattice,
    block: &Block,
) -> Result<Vec<Filter>, FilterError> {
    block
        .atoms(host)
        .into_iter()
        .map(|p| generated_filter(host, block, &[p]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::test_lattice;

    fn whole_block(l: &FiniteOrtholattice) -> Block {
        Block::new(l, l.elements()).unwrap()
    }

    fn by_labels(l: &FiniteOrtholattice, names: &[&str]) -> Vec<usize> {
        names.iter().map(|n| l.index_of(n).unwrap()).collect()
    }

    #[test]
    fn maximal_blocks_of_boolean_lattice_is_itself() {
        let b8 = test_lattice("b8");
        let blocks = maximal_blocks(&b8).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].members(), b8.elements().collect::<Vec<_>>());
    }

    #[test]
    fn maximal_blocks_of_mo2() {
        let mo2 = test_lattice("mo2");
        let blocks = maximal_blocks(&mo2).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].members(), by_labels(&mo2, &["0", "a", "na", "1"]));
        assert_eq!(blocks[1].members(), by_labels(&mo2, &["0", "b", "nb", "1"]));
    }

    #[test]
    fn maximal_blocks_of_mo2xb2_intersect_in_center() {
        let l = test_lattice("mo2xb2");
        let blocks = maximal_blocks(&l).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].len(), 8);
        assert_eq!(blocks[1].len(), 8);
        assert_eq!(blocks[0].intersection(&blocks[1]), l.center());
    }

    #[test]
    fn generated_filters_in_b4_and_b8() {
        let b4 = test_lattice("b4");
        let block = whole_block(&b4);
        let a = b4.index_of("a").unwrap();

        let principal = generated_filter(&b4, &block, &[a]).unwrap();
        assert_eq!(principal.members(), by_labels(&b4, &["a", "1"]));
        assert!(principal.is_proper());
        assert!(principal.is_maximal());

        let improper = generated_filter(&b4, &block, &[a, b4.ortho(a)]).unwrap();
        assert_eq!(improper.members(), block.members());
        assert!(!improper.is_proper());

        let b8 = test_lattice("b8");
        let block8 = whole_block(&b8);
        let gens = by_labels(&b8, &["a+b", "b+c"]);
        let f = generated_filter(&b8, &block8, &gens).unwrap();
        let pivot = b8.meet(gens[0], gens[1]);
        assert_eq!(b8.label(pivot), "b");
        let expected: Vec<usize> =
            b8.elements().filter(|&x| b8.leq(pivot, x)).collect();
        assert_eq!(f.members(), expected);
    }

    #[test]
    fn empty_generators_yield_trivial_filter() {
        let b8 = test_lattice("b8");
        let block = whole_block(&b8);
        let f = generated_filter(&b8, &block, &[]).unwrap();
        assert_eq!(f.members(), [b8.top()]);
        assert!(f.is_proper());
        assert!(!f.is_maximal());
    }

    #[test]
    fn quotient_by_principal_filter() {
        let b4 = test_lattice("b4");
        let block = whole_block(&b4);
        let a = b4.index_of("a").unwrap();
        let f = generated_filter(&b4, &block, &[a]).unwrap();
        let q = quotient(&b4, &block, &f).unwrap();
        assert_eq!(q.algebra.element_count(), 2);
        assert_eq!(q.class_of[&a], q.algebra.top());
        assert_eq!(q.class_of[&b4.ortho(a)], q.algebra.bottom());
    }

    #[test]
    fn quotient_by_trivial_filter_is_identity() {
        let b8 = test_lattice("b8");
        let block = whole_block(&b8);
        let f = generated_filter(&b8, &block, &[]).unwrap();
        let q = quotient(&b8, &block, &f).unwrap();
        assert!(q.algebra.is_isomorphic_to(&b8));
    }

    #[test]
    fn quotient_by_improper_filter_fails() {
        let b4 = test_lattice("b4");
        let block = whole_block(&b4);
        let a = b4.index_of("a").unwrap();
        let f = generated_filter(&b4, &block, &[a, b4.ortho(a)]).unwrap();
        assert_eq!(quotient(&b4, &block, &f).unwrap_err(), FilterError::ImproperFilter);
    }

    #[test]
    fn quotient_by_atom_filter_in_b8_is_two() {
        let b8 = test_lattice("b8");
        let block = whole_block(&b8);
        let p = b8.atoms()[0];
        let f = generated_filter(&b8, &block, &[p]).unwrap();
        assert!(f.is_maximal());
        let q = quotient(&b8, &block, &f).unwrap();
        assert!(q.algebra.is_isomorphic_to(&test_lattice("b2")));
    }

    #[test]
    fn extension_to_maximal_follows_least_index_rule() {
        let b8 = test_lattice("b8");
        let block = whole_block(&b8);

        let trivial = generated_filter(&b8, &block, &[]).unwrap();
        let maximal = extend_to_maximal(&b8, &block, &trivial).unwrap();
        let least_atom = b8.atoms()[0];
        assert_eq!(
            maximal.members(),
            generated_filter(&b8, &block, &[least_atom]).unwrap().members()
        );

        // Already-maximal filters are fixed points.
        let b4 = test_lattice("b4");
        let block4 = whole_block(&b4);
        let a = b4.index_of("a").unwrap();
        let fa = generated_filter(&b4, &block4, &[a]).unwrap();
        assert_eq!(extend_to_maximal(&b4, &block4, &fa).unwrap(), fa);

        // Extending the filter at a+b keeps a+b and exactly one atom below it.
        let ab = b8.index_of("a+b").unwrap();
        let f = generated_filter(&b8, &block, &[ab]).unwrap();
        let m = extend_to_maximal(&b8, &block, &f).unwrap();
        assert!(m.contains(ab));
        let atoms_in: Vec<usize> =
            b8.atoms().into_iter().filter(|&p| m.contains(p)).collect();
        assert_eq!(atoms_in.len(), 1);
        assert!(b8.leq(atoms_in[0], ab));
    }

    #[test]
    fn separating_filters() {
        let b4 = test_lattice("b4");
        let block = whole_block(&b4);
        let (a, b) = (b4.index_of("a").unwrap(), b4.index_of("b").unwrap());
        let f = separating_maximal_filter(&b4, &block, a, b).unwrap();
        assert_eq!(f.members(), by_labels(&b4, &["a", "1"]));

        let f = separating_maximal_filter(&b4, &block, b4.top(), b4.bottom()).unwrap();
        assert!(f.is_maximal());
        assert!(f.contains(b4.top()) && !f.contains(b4.bottom()));

        let err = separating_maximal_filter(&b4, &block, a, b4.top()).unwrap_err();
        assert!(matches!(err, FilterError::NotSeparable { .. }));
    }

    #[test]
    fn two_valuation_counts() {
        let b2 = test_lattice("b2");
        assert_eq!(enumerate_two_valuations(&b2, &whole_block(&b2)).len(), 1);

        let b8 = test_lattice("b8");
        assert_eq!(enumerate_two_valuations(&b8, &whole_block(&b8)).len(), 3);

        let mo2 = test_lattice("mo2");
        let blocks = maximal_blocks(&mo2).unwrap();
        let vs = enumerate_two_valuations(&mo2, &blocks[0]);
        assert_eq!(vs.len(), 2);
        for v in &vs {
            assert!(v.is_homomorphism(&mo2));
        }
    }

    #[test]
    fn valuations_are_maximal_filter_indicators() {
        let b8 = test_lattice("b8");
        let block = whole_block(&b8);
        let filters = maximal_filters(&b8, &block).unwrap();
        let valuations = enumerate_two_valuations(&b8, &block);
        assert_eq!(filters.len(), valuations.len());
        for (f, v) in filters.iter().zip(&valuations) {
            let trues: Vec<usize> = v.trues().collect();
            assert_eq!(trues, f.members());
        }
    }

    #[test]
    fn all_boolean_sublattices_of_mo2() {
        let mo2 = test_lattice("mo2");
        let subs = all_boolean_sublattices(&mo2).unwrap();
        assert_eq!(
            subs,
            vec![
                by_labels(&mo2, &["0", "a", "na", "1"]),
                by_labels(&mo2, &["0", "b", "nb", "1"]),
                by_labels(&mo2, &["0", "1"]),
            ]
        );
    }
}
