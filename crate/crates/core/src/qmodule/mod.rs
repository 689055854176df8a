//! Right modules over a finite involutive quantale, their morphisms, and the
//! fixpoint modules `Q^e` of idempotents.
//!
//! The submodules build on this: [`principal`] computes locally principal
//! elements and the canonical pre-inner product, [`hilbert`] holds inner
//! products and Hilbert bases, [`search`] enumerates Hilbert structures.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{self, CompleteLattice, LatticeError};
use crate::quantale::{InvolutiveQuantale, Side};

pub mod hilbert;
pub mod principal;
pub mod search;

pub use hilbert::{
    canonical_hilbert_structure, classify_inner_product, involute_morphism, is_hilbert_basis,
    maximal_hilbert_basis, CanonicalVerdict, HilbertStructure, InnerProduct, InnerProductFlags,
};
pub use principal::{
    all_principal_adjoints_open, canonical_inner_product, is_open_adjoint, is_principally_generated,
    is_principally_generated_over, is_principally_symmetric, locally_principal_at,
    principal_pairs, zeta_star, Principal, PrincipalSymmetry,
};
pub use search::{
    enumerate_hilbert_structures, enumerate_hilbert_structures_unpruned, theorem14_verdict,
    Theorem14Report,
};

/// Default cap on candidate tables for the exhaustive searches.
pub const DEFAULT_BOUND: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("expected a table of {expected} values, found {found}")]
    TableSize { expected: usize, found: usize },
    #[error("element index {0} out of range")]
    UnknownIndex(usize),
    #[error("action associativity fails at ({m}, {f}, {g})")]
    ActionAssocFails { m: String, f: String, g: String },
    #[error("action unit law fails at {m}")]
    ActionUnitFails { m: String },
    #[error("action {side} distributivity fails at {at} over join of {over:?}")]
    ActionDistribFails {
        side: Side,
        at: String,
        over: Vec<String>,
    },
    #[error("modules are over different quantales")]
    QuantaleMismatch,
    #[error("modules do not match")]
    ModuleMismatch,
    #[error("not a module morphism: {0}")]
    NotAMorphism(String),
    #[error("{e} is not idempotent")]
    NotIdempotent { e: String },
    #[error("{e} is not a symmetric idempotent")]
    NotSymmetricIdempotent { e: String },
    #[error("the idempotent set must contain the unit")]
    UnitMissing,
    #[error("{m} is not fixed by {e}")]
    NotFixed { m: String, e: String },
    #[error("{m} is not locally principal at {e}")]
    NotLocallyPrincipal { m: String, e: String },
    #[error("table is not a pre-inner product")]
    NotPreInner,
    #[error("subset is not a Hilbert basis")]
    NotHilbertBasis,
    #[error("hypothesis not met: {0}")]
    HypothesisFails(String),
    #[error("search needs {needed} candidates but the bound is {bound}")]
    BoundExceeded { needed: usize, bound: usize },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("symmetry conditions disagree: {0}")]
    EquivalenceViolation(String),
    #[error("canonical Hilbert structure biconditional fails: {0}")]
    Theorem11Violation(String),
    #[error("uniqueness of Hilbert structure fails: {0}")]
    Theorem14Violation(String),
    #[error("involute characterisation fails: {0}")]
    CharacterisationFails(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A right `Q`-module: a finite lattice with a join-preserving action.
#[derive(Clone, PartialEq, Eq)]
pub struct QModule {
    quantale: Arc<InvolutiveQuantale>,
    lattice: Arc<CompleteLattice>,
    action: Vec<usize>,
}

impl fmt::Debug for QModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QModule")
            .field("elements", &self.lattice.labels())
            .field("quantale", &self.quantale.lattice().labels())
            .finish()
    }
}

pub(crate) fn same_quantale(a: &Arc<InvolutiveQuantale>, b: &Arc<InvolutiveQuantale>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn same_module(a: &Arc<QModule>, b: &Arc<QModule>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl QModule {
    /// `action` is row-major: `action[m * |Q| + f] = m · f`.
    pub fn new(
        quantale: Arc<InvolutiveQuantale>,
        lattice: Arc<CompleteLattice>,
        action: Vec<usize>,
    ) -> Result<Self, ModuleError> {
        let expected = lattice.len() * quantale.len();
        if action.len() != expected {
            return Err(ModuleError::TableSize {
                expected,
                found: action.len(),
            });
        }
        if let Some(&bad) = action.iter().find(|&&v| v >= lattice.len()) {
            return Err(ModuleError::UnknownIndex(bad));
        }
        let m = QModule {
            quantale,
            lattice,
            action,
        };
        m.validate()?;
        Ok(m)
    }

    /// `Q` acting on itself by multiplication.
    pub fn over_itself(quantale: Arc<InvolutiveQuantale>) -> Self {
        let lattice = quantale.lattice().clone();
        let action = quantale.base().mult_table().to_vec();
        QModule {
            quantale,
            lattice,
            action,
        }
    }

    fn validate(&self) -> Result<(), ModuleError> {
        let (q, l) = (&*self.quantale, &*self.lattice);
        let mname = |x: usize| l.label(x).to_string();
        let qname = |x: usize| q.label(x).to_string();
        for m in l.elements() {
            if self.act(m, q.unit()) != m {
                return Err(ModuleError::ActionUnitFails { m: mname(m) });
            }
        }
        for f in q.elements() {
            if self.act(l.bottom(), f) != l.bottom() {
                return Err(ModuleError::ActionDistribFails {
                    side: Side::Left,
                    at: qname(f),
                    over: vec![],
                });
            }
        }
        for m in l.elements() {
            if self.act(m, q.bottom()) != l.bottom() {
                return Err(ModuleError::ActionDistribFails {
                    side: Side::Right,
                    at: mname(m),
                    over: vec![],
                });
            }
        }
        for f in q.elements() {
            for a in l.elements() {
                for b in (a + 1)..l.len() {
                    if self.act(l.join(a, b), f) != l.join(self.act(a, f), self.act(b, f)) {
                        return Err(ModuleError::ActionDistribFails {
                            side: Side::Left,
                            at: qname(f),
                            over: vec![mname(a), mname(b)],
                        });
                    }
                }
            }
        }
        for m in l.elements() {
            for f in q.elements() {
                for g in (f + 1)..q.len() {
                    if self.act(m, q.join(f, g)) != l.join(self.act(m, f), self.act(m, g)) {
                        return Err(ModuleError::ActionDistribFails {
                            side: Side::Right,
                            at: mname(m),
                            over: vec![qname(f), qname(g)],
                        });
                    }
                }
            }
        }
        for m in l.elements() {
            for f in q.elements() {
                let mf = self.act(m, f);
                for g in q.elements() {
                    if self.act(m, q.mul(f, g)) != self.act(mf, g) {
                        return Err(ModuleError::ActionAssocFails {
                            m: mname(m),
                            f: qname(f),
                            g: qname(g),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn quantale(&self) -> &Arc<InvolutiveQuantale> {
        &self.quantale
    }

    pub fn lattice(&self) -> &Arc<CompleteLattice> {
        &self.lattice
    }

    pub fn action_table(&self) -> &[usize] {
        &self.action
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        self.lattice.elements()
    }

    pub fn label(&self, m: usize) -> &str {
        self.lattice.label(m)
    }

    pub fn bottom(&self) -> usize {
        self.lattice.bottom()
    }

    pub fn top(&self) -> usize {
        self.lattice.top()
    }

    #[inline]
    pub fn act(&self, m: usize, f: usize) -> usize {
        self.action[m * self.quantale.len() + f]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.lattice.join(a, b)
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.lattice.leq(a, b)
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = usize>) -> usize {
        self.lattice.join_all(xs)
    }

    /// `{m | m · e = m}`.
    pub fn fixed_by(&self, e: usize) -> Vec<usize> {
        self.elements().filter(|&m| self.act(m, e) == m).collect()
    }

    pub(crate) fn check_element(&self, m: usize) -> Result<(), ModuleError> {
        if m < self.len() {
            Ok(())
        } else {
            Err(ModuleError::UnknownIndex(m))
        }
    }
}

pub fn module_new(
    quantale: Arc<InvolutiveQuantale>,
    lattice: Arc<CompleteLattice>,
    action: Vec<usize>,
) -> Result<QModule, ModuleError> {
    QModule::new(quantale, lattice, action)
}

pub(crate) fn check_idempotent(q: &InvolutiveQuantale, e: usize) -> Result<(), ModuleError> {
    if e >= q.len() {
        return Err(ModuleError::UnknownIndex(e));
    }
    if q.mul(e, e) != e {
        return Err(ModuleError::NotIdempotent {
            e: q.label(e).to_string(),
        });
    }
    Ok(())
}

/// The module `Q^e` of fixpoints of `e ∘ -`, acted on by multiplication.
#[derive(Debug, Clone)]
pub struct FixpointModule {
    parent: Arc<InvolutiveQuantale>,
    idempotent: usize,
    members: Vec<usize>,
    position: Vec<Option<usize>>,
    module: Arc<QModule>,
}

impl FixpointModule {
    pub fn new(parent: Arc<InvolutiveQuantale>, e: usize) -> Result<Self, ModuleError> {
        check_idempotent(&parent, e)?;
        let q = &*parent;
        let members: Vec<usize> = q.elements().filter(|&f| q.mul(e, f) == f).collect();
        let mut position = vec![None; q.len()];
        for (i, &f) in members.iter().enumerate() {
            position[f] = Some(i);
        }
        let labels = members.iter().map(|&f| q.label(f).to_string()).collect();
        let lattice = Arc::new(CompleteLattice::from_leq_fn(labels, |i, j| {
            q.leq(members[i], members[j])
        })?);
        let mut action = Vec::with_capacity(members.len() * q.len());
        for &f in &members {
            for g in q.elements() {
                let fg = q.mul(f, g);
                action.push(position[fg].ok_or_else(|| {
                    ModuleError::InvariantViolation(format!(
                        "fixpoints of {} not closed under action",
                        q.label(e)
                    ))
                })?);
            }
        }
        let module = Arc::new(QModule::new(parent.clone(), lattice, action)?);
        Ok(FixpointModule {
            parent,
            idempotent: e,
            members,
            position,
            module,
        })
    }

    pub fn parent(&self) -> &Arc<InvolutiveQuantale> {
        &self.parent
    }

    pub fn idempotent(&self) -> usize {
        self.idempotent
    }

    /// Members as elements of the parent quantale, in index order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, f: usize) -> bool {
        self.position.get(f).is_some_and(|p| p.is_some())
    }

    /// Parent element of the module element `i`.
    pub fn to_parent(&self, i: usize) -> usize {
        self.members[i]
    }

    /// Module element of the parent element `f`, when `f` is a fixpoint.
    pub fn from_parent(&self, f: usize) -> Option<usize> {
        self.position.get(f).copied().flatten()
    }

    pub fn module(&self) -> &Arc<QModule> {
        &self.module
    }

    /// The inclusion `Q^e → Q`, a module morphism into `Q` acting on itself.
    pub fn inclusion(&self, target: &Arc<QModule>) -> Result<ModuleMorphism, ModuleError> {
        ModuleMorphism::new(self.module.clone(), target.clone(), self.members.clone())
    }
}

pub fn fixpoint_module(q: &Arc<InvolutiveQuantale>, e: usize) -> Result<FixpointModule, ModuleError> {
    FixpointModule::new(q.clone(), e)
}

/// A join- and action-preserving map between modules over the same quantale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMorphism {
    source: Arc<QModule>,
    target: Arc<QModule>,
    values: Vec<usize>,
}

impl ModuleMorphism {
    pub fn new(
        source: Arc<QModule>,
        target: Arc<QModule>,
        values: Vec<usize>,
    ) -> Result<Self, ModuleError> {
        if !same_quantale(&source.quantale, &target.quantale) {
            return Err(ModuleError::QuantaleMismatch);
        }
        if values.len() != source.len() {
            return Err(ModuleError::TableSize {
                expected: source.len(),
                found: values.len(),
            });
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= target.len()) {
            return Err(ModuleError::UnknownIndex(bad));
        }
        if let Some(why) = morphism_violation(&source, &target, &values) {
            return Err(ModuleError::NotAMorphism(why));
        }
        Ok(ModuleMorphism {
            source,
            target,
            values,
        })
    }

    pub fn identity(module: Arc<QModule>) -> Self {
        let values = module.elements().collect();
        ModuleMorphism {
            source: module.clone(),
            target: module,
            values,
        }
    }

    pub fn zero(source: Arc<QModule>, target: Arc<QModule>) -> Result<Self, ModuleError> {
        let values = vec![target.bottom(); source.len()];
        Self::new(source, target, values)
    }

    pub fn source(&self) -> &Arc<QModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<QModule> {
        &self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, m: usize) -> usize {
        self.values[m]
    }

    /// The order right adjoint `n ↦ ⋁{m | φ(m) ≤ n}` as a value table.
    pub fn order_right_adjoint(&self) -> Vec<usize> {
        let (s, t) = (&self.source, &self.target);
        t.elements()
            .map(|n| s.join_all(s.elements().filter(|&m| t.leq(self.values[m], n))))
            .collect()
    }

    /// Whether the order right adjoint is itself a module morphism.
    pub fn right_adjoint(&self) -> Option<ModuleMorphism> {
        let values = self.order_right_adjoint();
        morphism_violation(&self.target, &self.source, &values).is_none().then(|| ModuleMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            values,
        })
    }

    pub fn is_left_adjoint(&self) -> bool {
        self.right_adjoint().is_some()
    }
}

/// Describes the first failure of `values` to be a module morphism.
pub(crate) fn morphism_violation(
    source: &QModule,
    target: &QModule,
    values: &[usize],
) -> Option<String> {
    let (s, t) = (source, target);
    if values[s.bottom()] != t.bottom() {
        return Some(format!("bottom maps to {}", t.label(values[s.bottom()])));
    }
    for a in s.elements() {
        for b in (a + 1)..s.len() {
            if values[s.join(a, b)] != t.join(values[a], values[b]) {
                return Some(format!(
                    "join of {} and {} not preserved",
                    s.label(a),
                    s.label(b)
                ));
            }
        }
    }
    let q = &s.quantale;
    for m in s.elements() {
        for f in q.elements() {
            if values[s.act(m, f)] != t.act(values[m], f) {
                return Some(format!(
                    "action {}·{} not preserved",
                    s.label(m),
                    q.label(f)
                ));
            }
        }
    }
    None
}

/// All module morphisms `source → target`.
///
/// The bound caps the number of raw join-irreducible assignments visited.
pub fn enumerate_module_morphisms(
    source: &Arc<QModule>,
    target: &Arc<QModule>,
    bound: usize,
) -> Result<Vec<ModuleMorphism>, ModuleError> {
    Ok(module_morphism_tables(source, target, bound)?
        .into_iter()
        .map(|values| ModuleMorphism {
            source: source.clone(),
            target: target.clone(),
            values,
        })
        .collect())
}

pub(crate) fn module_morphism_tables(
    source: &QModule,
    target: &QModule,
    bound: usize,
) -> Result<Vec<Vec<usize>>, ModuleError> {
    if !same_quantale(&source.quantale, &target.quantale) {
        return Err(ModuleError::QuantaleMismatch);
    }
    let needed = lattice::sup_table_candidates(&source.lattice, &target.lattice);
    if needed > bound {
        return Err(ModuleError::BoundExceeded { needed, bound });
    }
    let q = &source.quantale;
    let mut out = Vec::new();
    lattice::for_each_sup_table(&source.lattice, &target.lattice, |values| {
        let preserves_action = source.elements().all(|m| {
            q.elements()
                .all(|f| values[source.act(m, f)] == target.act(values[m], f))
        });
        if preserves_action {
            out.push(values.to_vec());
        }
    });
    Ok(out)
}

/// `ζ_m : Q^e → M, f ↦ m · f`, defined when `m · e = m`.
pub fn morphism_from_fixpoint(
    module: &Arc<QModule>,
    fix: &FixpointModule,
    m: usize,
) -> Result<ModuleMorphism, ModuleError> {
    module.check_element(m)?;
    if !same_quantale(module.quantale(), fix.parent()) {
        return Err(ModuleError::QuantaleMismatch);
    }
    let e = fix.idempotent();
    if module.act(m, e) != m {
        return Err(ModuleError::NotFixed {
            m: module.label(m).to_string(),
            e: fix.parent().label(e).to_string(),
        });
    }
    let values = fix.members().iter().map(|&f| module.act(m, f)).collect();
    ModuleMorphism::new(fix.module().clone(), module.clone(), values)
}

/// The inverse direction of [`morphism_from_fixpoint`]: `ζ ↦ ζ(e)`.
pub fn fixpoint_of_morphism(fix: &FixpointModule, zeta: &ModuleMorphism) -> usize {
    let e = fix
        .from_parent(fix.idempotent())
        .expect("an idempotent is its own fixpoint");
    zeta.apply(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{dwn_module, locale_from_lattice, two_chain_quantale, FinitePoset};

    #[test]
    fn quantale_over_itself_is_valid() {
        let q = Arc::new(locale_from_lattice(CompleteLattice::diamond()).unwrap());
        let m = QModule::over_itself(q.clone());
        assert!(QModule::new(q, m.lattice().clone(), m.action_table().to_vec()).is_ok());
    }

    #[test]
    fn one_element_module() {
        let q = Arc::new(two_chain_quantale());
        let l = Arc::new(CompleteLattice::chain(1).unwrap());
        let m = QModule::new(q, l, vec![0, 0]).unwrap();
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn dwn_module_laws_by_oracle() {
        let a = FinitePoset::from_pairs(&["x", "y"], &[("x", "y")]).unwrap();
        let m = dwn_module(&a);
        let q = m.quantale();
        // oracle: check the three laws directly on every triple
        for x in m.elements() {
            assert_eq!(m.act(x, q.unit()), x);
            for f in q.elements() {
                for g in q.elements() {
                    assert_eq!(m.act(x, q.mul(f, g)), m.act(m.act(x, f), g));
                    assert_eq!(m.act(x, q.join(f, g)), m.join(m.act(x, f), m.act(x, g)));
                }
                for y in m.elements() {
                    assert_eq!(m.act(m.join(x, y), f), m.join(m.act(x, f), m.act(y, f)));
                }
            }
        }
    }

    #[test]
    fn action_errors_carry_witnesses() {
        let q = Arc::new(two_chain_quantale());
        let l = Arc::new(CompleteLattice::chain(2).unwrap());
        // m · 0 = m violates the empty join on the right
        let err = QModule::new(q.clone(), l.clone(), vec![0, 0, 1, 1]).unwrap_err();
        assert!(matches!(err, ModuleError::ActionDistribFails { side: Side::Right, .. }), "{err}");
        let err = QModule::new(q.clone(), l.clone(), vec![0, 0, 0, 0]).unwrap_err();
        assert_eq!(err, ModuleError::ActionUnitFails { m: "1".into() });
        assert!(matches!(
            QModule::new(q, l, vec![0, 0, 0]),
            Err(ModuleError::TableSize { expected: 4, found: 3 })
        ));
    }

    #[test]
    fn fixpoint_modules() {
        let q = Arc::new(locale_from_lattice(CompleteLattice::diamond()).unwrap());
        let whole = fixpoint_module(&q, q.unit()).unwrap();
        assert_eq!(whole.members(), &[0, 1, 2, 3]);
        let a = q.lattice().index_of("a").unwrap();
        let down_a = fixpoint_module(&q, a).unwrap();
        // the open sublocale ↓a
        let expected: Vec<usize> = q.elements().filter(|&x| q.leq(x, a)).collect();
        assert_eq!(down_a.members(), &expected[..]);
        let zero = fixpoint_module(&q, q.bottom()).unwrap();
        assert_eq!(zero.members(), &[q.bottom()]);
        let self_mod = Arc::new(QModule::over_itself(q.clone()));
        assert!(down_a.inclusion(&self_mod).is_ok());
    }

    #[test]
    fn fixpoint_module_rejects_non_idempotent() {
        let q = Arc::new(crate::constructions::nilpotent_chain_quantale());
        assert!(matches!(
            fixpoint_module(&q, 1),
            Err(ModuleError::NotIdempotent { .. })
        ));
    }

    #[test]
    fn fixpoint_morphism_correspondence() {
        let p = FinitePoset::from_pairs(&["x", "y"], &[]).unwrap();
        let m = Arc::new(dwn_module(&p));
        let q = m.quantale().clone();
        for e in q.idempotents() {
            let fix = fixpoint_module(&q, e).unwrap();
            let morphisms = enumerate_module_morphisms(fix.module(), &m, DEFAULT_BOUND).unwrap();
            let fixed = m.fixed_by(e);
            assert_eq!(morphisms.len(), fixed.len());
            for &x in &fixed {
                let zeta = morphism_from_fixpoint(&m, &fix, x).unwrap();
                assert_eq!(fixpoint_of_morphism(&fix, &zeta), x);
                assert!(morphisms.contains(&zeta));
            }
        }
        let fix1 = fixpoint_module(&q, q.unit()).unwrap();
        let zero = morphism_from_fixpoint(&m, &fix1, m.bottom()).unwrap();
        assert!(zero.values().iter().all(|&v| v == m.bottom()));
        // m · 0 = 0, so only the bottom is fixed by 0
        let fix0 = fixpoint_module(&q, q.bottom()).unwrap();
        assert!(matches!(
            morphism_from_fixpoint(&m, &fix0, m.top()),
            Err(ModuleError::NotFixed { .. })
        ));
    }

    #[test]
    fn morphism_validation() {
        let q = Arc::new(two_chain_quantale());
        let m = Arc::new(QModule::over_itself(q));
        assert!(ModuleMorphism::new(m.clone(), m.clone(), vec![1, 1]).is_err());
        assert!(ModuleMorphism::zero(m.clone(), m.clone()).is_ok());
        let id = ModuleMorphism::identity(m);
        assert!(id.is_left_adjoint());
        assert_eq!(id.order_right_adjoint(), vec![0, 1]);
    }
}
