//! Finite complete lattices and the maps between them.
//!
//! Elements are dense indices `0..len()`; the user-facing labels are kept
//! alongside for error messages and serialization. Joins and meets of
//! arbitrary subsets fold the binary tables starting from bottom/top, which is
//! exact for finite lattices.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Default cap on `|source| * |target|` for [`enumerate_sup_maps`].
pub const DEFAULT_SUP_MAP_BOUND: usize = 36;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("element index {0} out of range")]
    UnknownIndex(usize),
    #[error("not a partial order: `{0}` <= `{1}` and `{1}` <= `{0}`")]
    NotAPartialOrder(String, String),
    #[error("not a lattice: `{0}` and `{1}` have no least upper bound")]
    NoJoin(String, String),
    #[error("not a lattice: `{0}` and `{1}` have no greatest lower bound")]
    NoMeet(String, String),
    #[error("no bottom element")]
    NoBottom,
    #[error("no top element")]
    NoTop,
    #[error("expected a table of {expected} values, found {found}")]
    TableSize { expected: usize, found: usize },
    #[error("map is not monotone: `{0}` <= `{1}` but images are not ordered")]
    NotMonotone(String, String),
    #[error("map does not preserve the join of {0:?}")]
    NotSupPreserving(Vec<String>),
    #[error("enumeration needs {needed} but the bound is {bound}")]
    BoundExceeded { needed: usize, bound: usize },
}

impl LatticeError {
    /// Convenience for the two "not a lattice" variants.
    pub fn is_not_a_lattice(&self) -> bool {
        matches!(self, LatticeError::NoJoin(..) | LatticeError::NoMeet(..))
    }
}

/// A finite lattice with precomputed order, join and meet tables.
#[derive(Clone, PartialEq, Eq)]
pub struct CompleteLattice {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl fmt::Debug for CompleteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CompleteLattice")
            .field("elements", &self.labels)
            .field("bottom", &self.labels[self.bottom])
            .field("top", &self.labels[self.top])
            .finish()
    }
}

impl CompleteLattice {
    /// Builds a lattice from labels and generating `a <= b` pairs.
    ///
    /// The pairs are closed reflexively and transitively first, so only the
    /// covering relation needs to be listed.
    pub fn from_order<S: AsRef<str>>(
        elements: &[S],
        leq_pairs: &[(S, S)],
    ) -> Result<Self, LatticeError> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = index_labels(&labels)?;
        let n = labels.len();
        let mut rel = vec![false; n * n];
        for (a, b) in leq_pairs {
            let i = lookup(&index, a.as_ref())?;
            let j = lookup(&index, b.as_ref())?;
            rel[i * n + j] = true;
        }
        Self::from_relation(labels, rel)
    }

    /// Builds a lattice from labels and an order predicate on indices.
    pub fn from_leq_fn(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        let mut rel = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                rel[i * n + j] = leq(i, j);
            }
        }
        Self::from_relation(labels, rel)
    }

    fn from_relation(labels: Vec<String>, mut rel: Vec<bool>) -> Result<Self, LatticeError> {
        let index = index_labels(&labels)?;
        let n = labels.len();
        for i in 0..n {
            rel[i * n + i] = true;
        }
        // Warshall closure
        for k in 0..n {
            for i in 0..n {
                if rel[i * n + k] {
                    for j in 0..n {
                        if rel[k * n + j] {
                            rel[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rel[i * n + j] && rel[j * n + i] {
                    return Err(LatticeError::NotAPartialOrder(
                        labels[i].clone(),
                        labels[j].clone(),
                    ));
                }
            }
        }
        let le = |a: usize, b: usize| rel[a * n + b];
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let lub = (0..n)
                    .filter(|&u| le(a, u) && le(b, u))
                    .find(|&u| (0..n).all(|v| !(le(a, v) && le(b, v)) || le(u, v)))
                    .ok_or_else(|| LatticeError::NoJoin(labels[a].clone(), labels[b].clone()))?;
                let glb = (0..n)
                    .filter(|&l| le(l, a) && le(l, b))
                    .find(|&l| (0..n).all(|v| !(le(v, a) && le(v, b)) || le(v, l)))
                    .ok_or_else(|| LatticeError::NoMeet(labels[a].clone(), labels[b].clone()))?;
                join[a * n + b] = lub;
                join[b * n + a] = lub;
                meet[a * n + b] = glb;
                meet[b * n + a] = glb;
            }
        }
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| le(b, x)))
            .ok_or(LatticeError::NoBottom)?;
        let top = (0..n)
            .find(|&t| (0..n).all(|x| le(x, t)))
            .ok_or(LatticeError::NoTop)?;
        Ok(CompleteLattice {
            labels,
            index,
            leq: rel,
            join,
            meet,
            bottom,
            top,
        })
    }

    /// The chain `0 < 1 < ... < n-1` labelled by its indices.
    pub fn chain(n: usize) -> Result<Self, LatticeError> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_leq_fn(labels, |a, b| a <= b)
    }

    /// The four-element diamond `0 < a, b < 1`.
    pub fn diamond() -> Self {
        Self::from_order(
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .expect("diamond is a lattice")
    }

    /// `M3`: bottom, three pairwise incomparable atoms, top.
    pub fn m3() -> Self {
        Self::from_order(
            &["0", "a", "b", "c", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("0", "c"),
                ("a", "1"),
                ("b", "1"),
                ("c", "1"),
            ],
        )
        .expect("M3 is a lattice")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, LatticeError> {
        lookup(&self.index, label)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len() + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    /// Join of an arbitrary family; the empty join is bottom.
    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of an arbitrary family; the empty meet is top.
    pub fn meet_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a subset given by labels.
    pub fn join_labels<S: AsRef<str>>(&self, xs: &[S]) -> Result<usize, LatticeError> {
        let idx = xs
            .iter()
            .map(|s| self.index_of(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.join_all(idx))
    }

    /// Join of a subset given by indices, rejecting out-of-range ones.
    pub fn join_of(&self, xs: &[usize]) -> Result<usize, LatticeError> {
        if let Some(&bad) = xs.iter().find(|&&x| x >= self.len()) {
            return Err(LatticeError::UnknownIndex(bad));
        }
        Ok(self.join_all(xs.iter().copied()))
    }

    /// Elements that are not bottom and not the join of the elements strictly below them.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        self.elements()
            .filter(|&j| {
                j != self.bottom
                    && self.join_all(self.elements().filter(|&x| x != j && self.leq(x, j))) != j
            })
            .collect()
    }

    /// Distributivity of binary meet over finite joins, which in a finite
    /// lattice is the frame law.
    pub fn is_frame(&self) -> bool {
        self.frame_violation().is_none()
    }

    /// First `(x, y, z)` with `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`.
    pub fn frame_violation(&self) -> Option<(usize, usize, usize)> {
        for x in self.elements() {
            for y in self.elements() {
                for z in self.elements() {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    fn check_table(&self, target: &CompleteLattice, values: &[usize]) -> Result<(), LatticeError> {
        if values.len() != self.len() {
            return Err(LatticeError::TableSize {
                expected: self.len(),
                found: values.len(),
            });
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= target.len()) {
            return Err(LatticeError::UnknownIndex(bad));
        }
        Ok(())
    }
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>, LatticeError> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(LatticeError::DuplicateElement(l.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<String, usize>, label: &str) -> Result<usize, LatticeError> {
    index
        .get(label)
        .copied()
        .ok_or_else(|| LatticeError::UnknownElement(label.to_string()))
}

/// A monotone map between finite lattices, stored as a value table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    source: Arc<CompleteLattice>,
    target: Arc<CompleteLattice>,
    values: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(
        source: Arc<CompleteLattice>,
        target: Arc<CompleteLattice>,
        values: Vec<usize>,
    ) -> Result<Self, LatticeError> {
        source.check_table(&target, &values)?;
        for x in source.elements() {
            for y in source.elements() {
                if source.leq(x, y) && !target.leq(values[x], values[y]) {
                    return Err(LatticeError::NotMonotone(
                        source.label(x).to_string(),
                        source.label(y).to_string(),
                    ));
                }
            }
        }
        Ok(MonotoneMap {
            source,
            target,
            values,
        })
    }

    pub fn source(&self) -> &Arc<CompleteLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CompleteLattice> {
        &self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    /// Checked on binary joins and the empty join.
    pub fn is_sup_preserving(&self) -> bool {
        sup_violation(&self.source, &self.target, &self.values).is_none()
    }

    /// Checked on binary meets and the empty meet.
    pub fn is_meet_preserving(&self) -> bool {
        let (s, t, v) = (&self.source, &self.target, &self.values);
        v[s.top()] == t.top()
            && s.elements().all(|x| {
                s.elements()
                    .all(|y| v[s.meet(x, y)] == t.meet(v[x], v[y]))
            })
    }

    pub fn into_sup_map(self) -> Result<SupMap, LatticeError> {
        SupMap::new(self.source, self.target, self.values)
    }
}

/// A join-preserving map between finite lattices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupMap {
    source: Arc<CompleteLattice>,
    target: Arc<CompleteLattice>,
    values: Vec<usize>,
}

impl SupMap {
    pub fn new(
        source: Arc<CompleteLattice>,
        target: Arc<CompleteLattice>,
        values: Vec<usize>,
    ) -> Result<Self, LatticeError> {
        source.check_table(&target, &values)?;
        if let Some(w) = sup_violation(&source, &target, &values) {
            return Err(LatticeError::NotSupPreserving(
                w.iter().map(|&x| source.label(x).to_string()).collect(),
            ));
        }
        Ok(SupMap {
            source,
            target,
            values,
        })
    }

    pub fn identity(lattice: Arc<CompleteLattice>) -> Self {
        let values = lattice.elements().collect();
        SupMap {
            source: lattice.clone(),
            target: lattice,
            values,
        }
    }

    pub fn source(&self) -> &Arc<CompleteLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<CompleteLattice> {
        &self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn right_adjoint(&self) -> MonotoneMap {
        right_adjoint(self)
    }

    pub fn as_monotone(&self) -> MonotoneMap {
        MonotoneMap {
            source: self.source.clone(),
            target: self.target.clone(),
            values: self.values.clone(),
        }
    }
}

/// Returns the empty set or a violating pair.
fn sup_violation(s: &CompleteLattice, t: &CompleteLattice, v: &[usize]) -> Option<Vec<usize>> {
    if v[s.bottom()] != t.bottom() {
        return Some(Vec::new());
    }
    for x in s.elements() {
        for y in (x + 1)..s.len() {
            if v[s.join(x, y)] != t.join(v[x], v[y]) {
                return Some(vec![x, y]);
            }
        }
    }
    None
}

/// The order-theoretic right adjoint `f*(y) = ⋁{x | f(x) ≤ y}`.
pub fn right_adjoint(f: &SupMap) -> MonotoneMap {
    let (s, t) = (&f.source, &f.target);
    let values = t
        .elements()
        .map(|y| s.join_all(s.elements().filter(|&x| t.leq(f.values[x], y))))
        .collect();
    MonotoneMap {
        source: t.clone(),
        target: s.clone(),
        values,
    }
}

pub fn is_sup_preserving(f: &MonotoneMap) -> bool {
    f.is_sup_preserving()
}

/// All sup-preserving maps `a -> b` with `|a| * |b| <= 36`.
pub fn enumerate_sup_maps(
    a: &Arc<CompleteLattice>,
    b: &Arc<CompleteLattice>,
) -> Result<Vec<SupMap>, LatticeError> {
    enumerate_sup_maps_within(a, b, DEFAULT_SUP_MAP_BOUND)
}

/// All sup-preserving maps `a -> b`, with a caller-chosen cap on `|a| * |b|`.
///
/// Values are assigned on the join-irreducibles of `a` (monotonically) and
/// extended by joins; assignments whose extension fails to preserve binary
/// joins are dropped. Output order is lexicographic in the irreducible
/// assignment, hence deterministic.
pub fn enumerate_sup_maps_within(
    a: &Arc<CompleteLattice>,
    b: &Arc<CompleteLattice>,
    bound: usize,
) -> Result<Vec<SupMap>, LatticeError> {
    let needed = a.len() * b.len();
    if needed > bound {
        return Err(LatticeError::BoundExceeded { needed, bound });
    }
    let mut out = Vec::new();
    for_each_sup_table(a, b, |values| {
        out.push(SupMap {
            source: a.clone(),
            target: b.clone(),
            values: values.to_vec(),
        });
    });
    Ok(out)
}

/// Number of raw irreducible assignments [`for_each_sup_table`] may visit.
pub(crate) fn sup_table_candidates(a: &CompleteLattice, b: &CompleteLattice) -> usize {
    let k = a.join_irreducibles().len() as u32;
    b.len().checked_pow(k).unwrap_or(usize::MAX)
}

/// Calls `visit` with the value table of every sup-map `a -> b`.
pub(crate) fn for_each_sup_table(
    a: &CompleteLattice,
    b: &CompleteLattice,
    mut visit: impl FnMut(&[usize]),
) {
    let mut irr = a.join_irreducibles();
    // a linear extension: fewer elements below first
    irr.sort_by_key(|&j| (a.elements().filter(|&x| a.leq(x, j)).count(), j));
    let below: Vec<Vec<usize>> = irr
        .iter()
        .enumerate()
        .map(|(k, &j)| (0..k).filter(|&i| a.leq(irr[i], j)).collect())
        .collect();
    let mut assign = vec![0usize; irr.len()];
    let mut table = vec![0usize; a.len()];

    #[allow(clippy::too_many_arguments)]
    fn rec(
        depth: usize,
        a: &CompleteLattice,
        b: &CompleteLattice,
        irr: &[usize],
        below: &[Vec<usize>],
        assign: &mut Vec<usize>,
        table: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if depth == irr.len() {
            for x in a.elements() {
                table[x] = b.join_all(
                    irr.iter()
                        .zip(assign.iter())
                        .filter(|(&j, _)| a.leq(j, x))
                        .map(|(_, &v)| v),
                );
            }
            if sup_violation(a, b, table).is_none() {
                visit(table);
            }
            return;
        }
        for v in b.elements() {
            if below[depth].iter().all(|&i| b.leq(assign[i], v)) {
                assign[depth] = v;
                rec(depth + 1, a, b, irr, below, assign, table, visit);
            }
        }
    }

    rec(0, a, b, &irr, &below, &mut assign, &mut table, &mut visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> Arc<CompleteLattice> {
        Arc::new(CompleteLattice::from_order(&["0", "1"], &[("0", "1")]).unwrap())
    }

    fn all_functions(a: usize, b: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..a {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..b).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// Exhaustive check over every subset of the source.
    fn preserves_every_join(s: &CompleteLattice, t: &CompleteLattice, v: &[usize]) -> bool {
        (0u32..(1 << s.len())).all(|mask| {
            let set: Vec<usize> = s.elements().filter(|&x| mask & (1 << x) != 0).collect();
            v[s.join_all(set.iter().copied())] == t.join_all(set.iter().map(|&x| v[x]))
        })
    }

    #[test]
    fn two_chain_tables() {
        let l = two();
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 1);
        assert_eq!(l.join(0, 1), 1);
        assert_eq!(l.meet(0, 1), 0);
    }

    #[test]
    fn diamond_joins_and_meets() {
        let d = CompleteLattice::diamond();
        let (a, b) = (d.index_of("a").unwrap(), d.index_of("b").unwrap());
        assert_eq!(d.label(d.join(a, b)), "1");
        assert_eq!(d.label(d.meet(a, b)), "0");
        assert_eq!(d.join_labels(&["a", "b"]).unwrap(), d.top());
        assert_eq!(d.join_of(&[]).unwrap(), d.bottom());
        assert_eq!(d.join_of(&[a]).unwrap(), a);
        assert_eq!(d.join_of(&[9]), Err(LatticeError::UnknownIndex(9)));
        assert!(matches!(
            d.join_labels(&["z"]),
            Err(LatticeError::UnknownElement(_))
        ));
    }

    #[test]
    fn missing_upper_bound_is_not_a_lattice() {
        let err = CompleteLattice::from_order(&["0", "a", "b"], &[("0", "a"), ("0", "b")])
            .unwrap_err();
        assert!(err.is_not_a_lattice(), "{err}");
    }

    #[test]
    fn cycle_is_not_a_partial_order() {
        let err =
            CompleteLattice::from_order(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, LatticeError::NotAPartialOrder(..)));
    }

    #[test]
    fn empty_carrier_has_no_bottom() {
        let none: [&str; 0] = [];
        assert_eq!(
            CompleteLattice::from_order(&none, &[]).unwrap_err(),
            LatticeError::NoBottom
        );
    }

    #[test]
    fn transitive_closure_of_input() {
        let l = CompleteLattice::from_order(&["0", "m", "1"], &[("0", "m"), ("m", "1")]).unwrap();
        assert!(l.leq(0, 2));
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 2);
    }

    #[test]
    fn adjoint_of_meet_with_atom_on_diamond() {
        let d = Arc::new(CompleteLattice::diamond());
        let a = d.index_of("a").unwrap();
        let f = SupMap::new(d.clone(), d.clone(), d.elements().map(|x| d.meet(a, x)).collect())
            .unwrap();
        let g = f.right_adjoint();
        // brute force: ⋁{x | a∧x ≤ y}
        let expected: Vec<usize> = d
            .elements()
            .map(|y| d.join_all(d.elements().filter(|&x| d.leq(d.meet(a, x), y))))
            .collect();
        assert_eq!(g.values(), &expected[..]);
        let lbl = |x: usize| d.label(g.apply(x)).to_string();
        assert_eq!(lbl(d.index_of("0").unwrap()), "b");
        assert_eq!(lbl(d.index_of("a").unwrap()), "1");
        assert_eq!(lbl(d.index_of("b").unwrap()), "b");
        assert_eq!(lbl(d.index_of("1").unwrap()), "1");
    }

    #[test]
    fn adjoint_of_identity_and_zero() {
        let l = two();
        assert_eq!(
            SupMap::identity(l.clone()).right_adjoint().values(),
            &[0, 1]
        );
        let zero = SupMap::new(l.clone(), l.clone(), vec![0, 0]).unwrap();
        assert_eq!(zero.right_adjoint().values(), &[1, 1]);
    }

    #[test]
    fn sup_preservation_examples() {
        let d = Arc::new(CompleteLattice::diamond());
        let c3 = Arc::new(CompleteLattice::chain(3).unwrap());
        // 0↦0, a↦1, b↦1, 1↦1 on the diamond
        let f = MonotoneMap::new(d.clone(), d.clone(), vec![0, 3, 3, 3]).unwrap();
        assert!(f.is_sup_preserving());
        assert!(preserves_every_join(&d, &d, f.values()));
        // diamond -> 3-chain, atoms to the middle and top to the top
        let g = MonotoneMap::new(d.clone(), c3.clone(), vec![0, 1, 1, 2]).unwrap();
        assert!(!g.is_sup_preserving());
        assert!(!preserves_every_join(&d, &c3, g.values()));
        let h = MonotoneMap::new(d.clone(), c3.clone(), vec![0, 1, 1, 1]).unwrap();
        assert!(h.is_sup_preserving());
        let l = two();
        let top = MonotoneMap::new(l.clone(), l.clone(), vec![1, 1]).unwrap();
        assert!(!is_sup_preserving(&top));
        assert!(SupMap::identity(l).as_monotone().is_sup_preserving());
    }

    #[test]
    fn monotone_map_rejects_order_reversal() {
        let l = two();
        assert!(matches!(
            MonotoneMap::new(l.clone(), l, vec![1, 0]),
            Err(LatticeError::NotMonotone(..))
        ));
    }

    #[test]
    fn sup_map_counts() {
        let l2 = two();
        let d = Arc::new(CompleteLattice::diamond());
        let one = Arc::new(CompleteLattice::chain(1).unwrap());
        assert_eq!(enumerate_sup_maps(&l2, &l2).unwrap().len(), 2);
        assert_eq!(enumerate_sup_maps(&l2, &d).unwrap().len(), 4);
        assert_eq!(enumerate_sup_maps(&one, &d).unwrap().len(), 1);
        let big = Arc::new(CompleteLattice::chain(7).unwrap());
        assert!(matches!(
            enumerate_sup_maps(&big, &big),
            Err(LatticeError::BoundExceeded { needed: 49, bound: 36 })
        ));
    }

    #[test]
    fn sup_maps_match_brute_force_on_small_lattices() {
        let lats: Vec<Arc<CompleteLattice>> = vec![
            Arc::new(CompleteLattice::chain(1).unwrap()),
            two(),
            Arc::new(CompleteLattice::chain(3).unwrap()),
            Arc::new(CompleteLattice::chain(4).unwrap()),
            Arc::new(CompleteLattice::diamond()),
        ];
        for a in &lats {
            for b in &lats {
                let got: Vec<Vec<usize>> = enumerate_sup_maps(a, b)
                    .unwrap()
                    .into_iter()
                    .map(|f| f.values().to_vec())
                    .collect();
                let mut expected: Vec<Vec<usize>> = all_functions(a.len(), b.len())
                    .into_iter()
                    .filter(|v| preserves_every_join(a, b, v))
                    .collect();
                let mut sorted = got.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), got.len(), "duplicates");
                expected.sort();
                assert_eq!(sorted, expected);
            }
        }
    }

    #[test]
    fn adjunction_and_meet_preservation() {
        let lats: Vec<Arc<CompleteLattice>> = vec![
            two(),
            Arc::new(CompleteLattice::chain(3).unwrap()),
            Arc::new(CompleteLattice::diamond()),
            Arc::new(CompleteLattice::m3()),
        ];
        for a in &lats {
            for b in &lats {
                for f in enumerate_sup_maps(a, b).unwrap() {
                    let g = f.right_adjoint();
                    assert!(g.is_meet_preserving());
                    for x in a.elements() {
                        for y in b.elements() {
                            assert_eq!(b.leq(f.apply(x), y), a.leq(x, g.apply(y)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn frames() {
        assert!(CompleteLattice::chain(4).unwrap().is_frame());
        assert!(CompleteLattice::diamond().is_frame());
        let m3 = CompleteLattice::m3();
        assert!(!m3.is_frame());
        let (a, b, c) = (
            m3.index_of("a").unwrap(),
            m3.index_of("b").unwrap(),
            m3.index_of("c").unwrap(),
        );
        assert_eq!(m3.meet(a, m3.join(b, c)), a);
        assert_eq!(m3.join(m3.meet(a, b), m3.meet(a, c)), m3.bottom());
    }

    #[test]
    fn join_irreducibles_of_diamond() {
        let d = CompleteLattice::diamond();
        let labels: Vec<&str> = d.join_irreducibles().iter().map(|&j| d.label(j)).collect();
        assert_eq!(labels, vec!["a", "b"]);
    }

    #[test]
    fn lattice_laws_hold_on_tables() {
        for l in [
            CompleteLattice::diamond(),
            CompleteLattice::m3(),
            CompleteLattice::chain(4).unwrap(),
        ] {
            for x in l.elements() {
                for y in l.elements() {
                    assert_eq!(l.join(x, y), l.join(y, x));
                    assert_eq!(l.meet(x, y), l.meet(y, x));
                    assert_eq!(l.meet(x, l.join(x, y)), x);
                    assert_eq!(l.join(x, l.meet(x, y)), x);
                    for z in l.elements() {
                        assert_eq!(l.join(x, l.join(y, z)), l.join(l.join(x, y), z));
                        assert_eq!(l.meet(x, l.meet(y, z)), l.meet(l.meet(x, y), z));
                    }
                }
            }
        }
    }
}
