//! Finite bounded ortholattices with precomputed order and operation tables.
//!
//! Elements are dense indices `0..element_count()` with one label each; the
//! order relation, meet/join tables, and the orthocomplement map are all
//! materialized at construction time, so every operation below is a pure
//! table lookup or a bounded scan. Lattices are immutable once built.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Which bound was missing while building operation tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Meet,
    Join,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundKind::Meet => write!(f, "meet"),
            BoundKind::Join => write!(f, "join"),
        }
    }
}

/// Construction failure for [`FiniteOrtholattice`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    /// One-element lattices (bottom = top) are rejected outright.
    #[error("a bounded lattice needs at least two elements")]
    Degenerate,
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("declaration references unknown element index {0}")]
    UnknownElement(usize),
    #[error("order relation has a cycle through `{0}`")]
    CoverCycle(String),
    #[error("order has no unique bottom or top element")]
    NoBounds,
    #[error("`{x}` and `{y}` have no unique {kind}")]
    NotALattice { x: String, y: String, kind: BoundKind },
    #[error("orthocomplement pairing is not a total involution: {0}")]
    BadInvolution(String),
}

/// The ortholattice/orthomodular law that a witness pair violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Law {
    /// not(not x) = x
    Involution,
    /// not(x v y) = not x ^ not y
    DeMorgan,
    /// x ^ not x = 0
    NonContradiction,
    /// x v (not x ^ (x v y)) = x v y
    Orthomodular,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Law::Involution => "involution",
            Law::DeMorgan => "De Morgan",
            Law::NonContradiction => "noncontradiction",
            Law::Orthomodular => "orthomodular law",
        };
        write!(f, "{name}")
    }
}

/// First violating pair for a law check, in element-index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LawViolation {
    pub law: Law,
    pub x: usize,
    pub y: usize,
}

/// Outcome of evaluating the distributivity relations on one ordered triple.
///
/// `holds_d` and `holds_dstar` refer to the triple as given; `holds_t`
/// requires both relations under all six permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleReport {
    pub triple: (usize, usize, usize),
    pub holds_d: bool,
    pub holds_dstar: bool,
    pub holds_t: bool,
}

/// A finite bounded ortholattice (order, meet/join tables, involution).
///
/// The involution stored here is only required to be a total involutive
/// pairing; whether it actually satisfies the ortholattice laws is the job
/// of [`FiniteOrtholattice::check_ortholattice`], so deliberately broken
/// structures can be represented and then witnessed.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteOrtholattice {
    labels: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    ortho: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl fmt::Debug for FiniteOrtholattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteOrtholattice({} elements)", self.labels.len())
    }
}

impl FiniteOrtholattice {
    /// Build from a cover relation (`(lower, upper)` pairs) and an
    /// orthocomplement pairing.
    ///
    /// The pairing must be a total involution on the elements; if neither
    /// bound appears in it, `bottom <-> top` is added implicitly. Meet and
    /// join tables are derived from the transitive closure of the covers,
    /// failing with [`BuildError::NotALattice`] when some pair has no
    /// unique bound.
    pub fn from_covers(
        labels: Vec<String>,
        covers: &[(usize, usize)],
        ortho_pairs: &[(usize, usize)],
    ) -> Result<Self, BuildError> {
        let n = labels.len();
        for &(a, b) in covers {
            let bad = [a, b].into_iter().find(|&i| i >= n);
            if let Some(i) = bad {
                return Err(BuildError::UnknownElement(i));
            }
        }
        let mut raw = vec![false; n * n];
        for i in 0..n {
            raw[i * n + i] = true;
        }
        for &(lo, hi) in covers {
            raw[lo * n + hi] = true;
        }
        Self::build(labels, raw, ortho_pairs)
    }

    /// Build from an arbitrary (not necessarily transitively closed) order
    /// relation given as a full `n * n` matrix.
    pub fn from_order(
        labels: Vec<String>,
        relation: Vec<bool>,
        ortho_pairs: &[(usize, usize)],
    ) -> Result<Self, BuildError> {
        let n = labels.len();
        assert_eq!(relation.len(), n * n, "relation matrix must be n*n");
        let mut raw = relation;
        for i in 0..n {
            raw[i * n + i] = true;
        }
        Self::build(labels, raw, ortho_pairs)
    }

    fn build(
        labels: Vec<String>,
        mut leq: Vec<bool>,
        ortho_pairs: &[(usize, usize)],
    ) -> Result<Self, BuildError> {
        let n = labels.len();
        if n < 2 {
            return Err(BuildError::Degenerate);
        }
        {
            let mut seen = BTreeSet::new();
            for l in &labels {
                if !seen.insert(l.as_str()) {
                    return Err(BuildError::DuplicateLabel(l.clone()));
                }
            }
        }

        // Warshall transitive closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && leq[x * n + y] && leq[y * n + x] {
                    return Err(BuildError::CoverCycle(labels[x].clone()));
                }
            }
        }

        let bottoms: Vec<usize> = (0..n).filter(|&x| (0..n).all(|y| leq[x * n + y])).collect();
        let tops: Vec<usize> = (0..n).filter(|&x| (0..n).all(|y| leq[y * n + x])).collect();
        let (&bottom, &top) = match (bottoms.as_slice(), tops.as_slice()) {
            ([b], [t]) => (b, t),
            _ => return Err(BuildError::NoBounds),
        };

        let mut meet = vec![0usize; n * n];
        let mut join = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                let lowers: Vec<usize> =
                    (0..n).filter(|&z| leq[z * n + x] && leq[z * n + y]).collect();
                let glb = lowers
                    .iter()
                    .copied()
                    .find(|&g| lowers.iter().all(|&z| leq[z * n + g]));
                match glb {
                    Some(g) => meet[x * n + y] = g,
                    None => {
                        return Err(BuildError::NotALattice {
                            x: labels[x].clone(),
                            y: labels[y].clone(),
                            kind: BoundKind::Meet,
                        })
                    }
                }
                let uppers: Vec<usize> =
                    (0..n).filter(|&z| leq[x * n + z] && leq[y * n + z]).collect();
                let lub = uppers
                    .iter()
                    .copied()
                    .find(|&u| uppers.iter().all(|&z| leq[u * n + z]));
                match lub {
                    Some(u) => join[x * n + y] = u,
                    None => {
                        return Err(BuildError::NotALattice {
                            x: labels[x].clone(),
                            y: labels[y].clone(),
                            kind: BoundKind::Join,
                        })
                    }
                }
            }
        }

        const UNSET: usize = usize::MAX;
        let mut ortho = vec![UNSET; n];
        for &(a, b) in ortho_pairs {
            let bad = [a, b].into_iter().find(|&i| i >= n);
            if let Some(i) = bad {
                return Err(BuildError::UnknownElement(i));
            }
            for (from, to) in [(a, b), (b, a)] {
                if ortho[from] != UNSET && ortho[from] != to {
                    return Err(BuildError::BadInvolution(format!(
                        "`{}` is paired with both `{}` and `{}`",
                        labels[from],
                        labels[ortho[from]],
                        labels[to]
                    )));
                }
                ortho[from] = to;
            }
        }
        if ortho[bottom] == UNSET && ortho[top] == UNSET {
            ortho[bottom] = top;
            ortho[top] = bottom;
        }
        if let Some(x) = (0..n).find(|&x| ortho[x] == UNSET) {
            return Err(BuildError::BadInvolution(format!(
                "`{}` has no orthocomplement partner",
                labels[x]
            )));
        }

        Ok(Self { labels, leq, meet, join, ortho, bottom, top })
    }

    pub fn element_count(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.labels.len()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.labels.len() + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.labels.len() + y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.labels.len() + y]
    }

    pub fn ortho(&self, x: usize) -> usize {
        self.ortho[x]
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Cover pairs `(lower, upper)` in lexicographic index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.labels.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Elements covering bottom.
    pub fn atoms(&self) -> Vec<usize> {
        self.covers()
            .into_iter()
            .filter(|&(lo, _)| lo == self.bottom)
            .map(|(_, hi)| hi)
            .collect()
    }

    /// Elements covered by top.
    pub fn coatoms(&self) -> Vec<usize> {
        self.covers()
            .into_iter()
            .filter(|&(_, hi)| hi == self.top)
            .map(|(lo, _)| lo)
            .collect()
    }

    /// Every nonzero element must be the join of the atoms below it; the
    /// witness is the first element where that identity fails.
    pub fn check_atomistic(&self) -> Result<(), usize> {
        let atoms = self.atoms();
        for x in self.elements() {
            if x == self.bottom {
                continue;
            }
            let j = self.join_all(atoms.iter().copied().filter(|&p| self.leq(p, x)));
            if j != x {
                return Err(x);
            }
        }
        Ok(())
    }

    /// Check the involution, De Morgan, and noncontradiction laws, scanning
    /// pairs in index order and returning the first violation.
    pub fn check_ortholattice(&self) -> Result<(), LawViolation> {
        for x in self.elements() {
            for y in self.elements() {
                if x == y {
                    if self.ortho(self.ortho(x)) != x {
                        return Err(LawViolation { law: Law::Involution, x, y: x });
                    }
                    if self.meet(x, self.ortho(x)) != self.bottom {
                        return Err(LawViolation { law: Law::NonContradiction, x, y: x });
                    }
                }
                if self.ortho(self.join(x, y)) != self.meet(self.ortho(x), self.ortho(y)) {
                    return Err(LawViolation { law: Law::DeMorgan, x, y });
                }
            }
        }
        Ok(())
    }

    /// Check `x v (not x ^ (x v y)) = x v y` over all pairs in index order.
    pub fn check_orthomodular(&self) -> Result<(), LawViolation> {
        for x in self.elements() {
            for y in self.elements() {
                let lhs = self.join(x, self.meet(self.ortho(x), self.join(x, y)));
                if lhs != self.join(x, y) {
                    return Err(LawViolation { law: Law::Orthomodular, x, y });
                }
            }
        }
        Ok(())
    }

    fn holds_d(&self, a: usize, b: usize, c: usize) -> bool {
        self.meet(self.join(a, b), c) == self.join(self.meet(a, c), self.meet(b, c))
    }

    fn holds_dstar(&self, a: usize, b: usize, c: usize) -> bool {
        self.join(self.meet(a, b), c) == self.meet(self.join(a, c), self.join(b, c))
    }

    /// Both distributivity relations under all six permutations.
    pub fn holds_t(&self, a: usize, b: usize, c: usize) -> bool {
        let perms =
            [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)];
        perms
            .iter()
            .all(|&(x, y, z)| self.holds_d(x, y, z) && self.holds_dstar(x, y, z))
    }

    pub fn distributive_triple(&self, a: usize, b: usize, c: usize) -> TripleReport {
        TripleReport {
            triple: (a, b, c),
            holds_d: self.holds_d(a, b, c),
            holds_dstar: self.holds_dstar(a, b, c),
            holds_t: self.holds_t(a, b, c),
        }
    }

    /// First triple violating D, if any (distributivity of the whole lattice).
    pub fn distributive_violation(&self) -> Option<(usize, usize, usize)> {
        for a in self.elements() {
            for b in self.elements() {
                for c in self.elements() {
                    if !self.holds_d(a, b, c) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_boolean(&self) -> bool {
        self.check_ortholattice().is_ok() && self.distributive_violation().is_none()
    }

    pub fn is_complemented(&self, a: usize) -> bool {
        self.elements()
            .any(|c| self.meet(a, c) == self.bottom && self.join(a, c) == self.top)
    }

    /// All complements of `a`.
    pub fn complements(&self, a: usize) -> Vec<usize> {
        self.elements()
            .filter(|&c| self.meet(a, c) == self.bottom && self.join(a, c) == self.top)
            .collect()
    }

    /// Central elements: complemented and distributing (as T-triples) with
    /// every pair.
    pub fn center(&self) -> Vec<usize> {
        let central: Vec<usize> = self
            .elements()
            .filter(|&z| {
                self.is_complemented(z)
                    && self
                        .elements()
                        .all(|a| self.elements().all(|b| self.holds_t(a, b, z)))
            })
            .collect();
        debug_assert!(self.is_closed_subset(&central));
        central
    }

    fn is_closed_subset(&self, members: &[usize]) -> bool {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        set.contains(&self.bottom)
            && set.contains(&self.top)
            && members.iter().all(|&x| {
                set.contains(&self.ortho(x))
                    && members
                        .iter()
                        .all(|&y| set.contains(&self.meet(x, y)) && set.contains(&self.join(x, y)))
            })
    }

    /// Least subset containing `seed`, bottom, and top that is closed under
    /// meet, join, and orthocomplement. Returned sorted.
    pub fn generated_sublattice(&self, seed: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = seed.iter().copied().collect();
        set.insert(self.bottom);
        set.insert(self.top);
        loop {
            let mut fresh = Vec::new();
            let items: Vec<usize> = set.iter().copied().collect();
            for &x in &items {
                if !set.contains(&self.ortho(x)) {
                    fresh.push(self.ortho(x));
                }
                for &y in &items {
                    for v in [self.meet(x, y), self.join(x, y)] {
                        if !set.contains(&v) {
                            fresh.push(v);
                        }
                    }
                }
            }
            if fresh.is_empty() {
                break;
            }
            set.extend(fresh);
        }
        set.into_iter().collect()
    }

    /// `a` commutes with `b`: `a = (a ^ b) v (a ^ not b)`.
    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.join(self.meet(a, b), self.meet(a, self.ortho(b))) == a
    }

    /// Componentwise product lattice; labels are `(left,right)` pairs.
    pub fn product(&self, other: &Self) -> Self {
        let (n1, n2) = (self.element_count(), other.element_count());
        let n = n1 * n2;
        let mut labels = Vec::with_capacity(n);
        for i in 0..n1 {
            for j in 0..n2 {
                labels.push(format!("({},{})", self.labels[i], other.labels[j]));
            }
        }
        let mut relation = vec![false; n * n];
        for i1 in 0..n1 {
            for j1 in 0..n2 {
                for i2 in 0..n1 {
                    for j2 in 0..n2 {
                        if self.leq(i1, i2) && other.leq(j1, j2) {
                            relation[(i1 * n2 + j1) * n + (i2 * n2 + j2)] = true;
                        }
                    }
                }
            }
        }
        let ortho_pairs: Vec<(usize, usize)> = (0..n1)
            .flat_map(|i| {
                (0..n2).map(move |j| {
                    (i * n2 + j, self.ortho(i) * n2 + other.ortho(j))
                })
            })
            .collect();
        Self::from_order(labels, relation, &ortho_pairs)
            .expect("product of lattices is a lattice")
    }

    /// Order-, meet/join-, and involution-preserving bijection search.
    pub fn is_isomorphic_to(&self, other: &Self) -> bool {
        let n = self.element_count();
        if n != other.element_count() {
            return false;
        }
        // Invariants that prune the backtracking: height from bottom and
        // up/down degree of each element.
        fn profile(l: &FiniteOrtholattice) -> Vec<(usize, usize)> {
            l.elements()
                .map(|x| {
                    let down = l.elements().filter(|&y| l.leq(y, x)).count();
                    let up = l.elements().filter(|&y| l.leq(x, y)).count();
                    (down, up)
                })
                .collect()
        }
        let pa = profile(self);
        let pb = profile(other);
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];

        fn extend(
            a: &FiniteOrtholattice,
            b: &FiniteOrtholattice,
            pa: &[(usize, usize)],
            pb: &[(usize, usize)],
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            x: usize,
        ) -> bool {
            if x == a.element_count() {
                // Full check of the operation tables under the bijection.
                return a.elements().all(|i| {
                    b.ortho(map[i]) == map[a.ortho(i)]
                        && a.elements().all(|j| {
                            b.meet(map[i], map[j]) == map[a.meet(i, j)]
                                && b.join(map[i], map[j]) == map[a.join(i, j)]
                        })
                });
            }
            for y in b.elements() {
                if used[y] || pa[x] != pb[y] {
                    continue;
                }
                let consistent = (0..x).all(|prev| {
                    a.leq(prev, x) == b.leq(map[prev], y)
                        && a.leq(x, prev) == b.leq(y, map[prev])
                        && (a.ortho(prev) != x || map[prev] == b.ortho(y))
                });
                if !consistent {
                    continue;
                }
                map[x] = y;
                used[y] = true;
                if extend(a, b, pa, pb, map, used, x + 1) {
                    return true;
                }
                used[y] = false;
                map[x] = usize::MAX;
            }
            false
        }

        extend(self, other, &pa, &pb, &mut map, &mut used, 0)
    }
}
