//! Matrices with entries in an involutive quantale, projection matrices, and
//! the passage between Hilbert structures and projection matrices.
//!
//! A matrix `Λ : S → T` stores `Λ(t, s)` with `t` indexing rows.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::lattice::{CompleteLattice, LatticeError};
use crate::qmodule::{
    same_quantale, HilbertStructure, InnerProduct, ModuleError, ModuleMorphism, QModule,
    DEFAULT_BOUND,
};
use crate::quantale::InvolutiveQuantale;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("expected {expected} entries, found {found}")]
    TableSize { expected: usize, found: usize },
    #[error("entry index {0} out of range")]
    UnknownIndex(usize),
    #[error("duplicate index label {0}")]
    DuplicateIndex(String),
    #[error("inner index sets do not match")]
    ShapeMismatch,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrices are over different quantales")]
    QuantaleMismatch,
    #[error("not a projection matrix: {0}")]
    NotProjection(String),
    #[error("function space needs {needed} candidates but the bound is {bound}")]
    BoundExceeded { needed: usize, bound: usize },
    #[error("Gram identity fails: {0}")]
    Lemma15Violation(String),
    #[error("basis regularity conditions disagree: {0}")]
    Lemma16Violation(String),
    #[error("equivalence round trip fails: {0}")]
    EquivalenceViolation(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A matrix `S → T` with entries in `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    quantale: Arc<InvolutiveQuantale>,
    rows: Vec<String>,
    cols: Vec<String>,
    entries: Vec<usize>,
}

fn check_unique(labels: &[String]) -> Result<(), MatrixError> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(MatrixError::DuplicateIndex(l.clone()));
        }
    }
    Ok(())
}

impl QMatrix {
    /// `entries` is row-major: `entries[t * |S| + s] = Λ(t, s)`.
    pub fn new(
        quantale: Arc<InvolutiveQuantale>,
        rows: Vec<String>,
        cols: Vec<String>,
        entries: Vec<usize>,
    ) -> Result<Self, MatrixError> {
        check_unique(&rows)?;
        check_unique(&cols)?;
        let expected = rows.len() * cols.len();
        if entries.len() != expected {
            return Err(MatrixError::TableSize {
                expected,
                found: entries.len(),
            });
        }
        if let Some(&bad) = entries.iter().find(|&&v| v >= quantale.len()) {
            return Err(MatrixError::UnknownIndex(bad));
        }
        Ok(QMatrix {
            quantale,
            rows,
            cols,
            entries,
        })
    }

    /// Units on the diagonal, bottoms elsewhere.
    pub fn identity(quantale: Arc<InvolutiveQuantale>, index: Vec<String>) -> Result<Self, MatrixError> {
        let n = index.len();
        let (one, zero) = (quantale.unit(), quantale.bottom());
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { one } else { zero })
            .collect();
        Self::new(quantale, index.clone(), index, entries)
    }

    pub fn zero(
        quantale: Arc<InvolutiveQuantale>,
        rows: Vec<String>,
        cols: Vec<String>,
    ) -> Result<Self, MatrixError> {
        let entries = vec![quantale.bottom(); rows.len() * cols.len()];
        Self::new(quantale, rows, cols, entries)
    }

    pub fn quantale(&self) -> &Arc<InvolutiveQuantale> {
        &self.quantale
    }

    pub fn rows(&self) -> &[String] {
        &self.rows
    }

    pub fn cols(&self) -> &[String] {
        &self.cols
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, t: usize, s: usize) -> usize {
        self.entries[t * self.cols.len() + s]
    }
}

/// `(Λ2 ∘ Λ1)(u, s) = ⋁_t Λ2(u, t) ∘ Λ1(t, s)`.
pub fn compose(l2: &QMatrix, l1: &QMatrix) -> Result<QMatrix, MatrixError> {
    if !same_quantale(&l2.quantale, &l1.quantale) {
        return Err(MatrixError::QuantaleMismatch);
    }
    if l2.cols != l1.rows {
        return Err(MatrixError::ShapeMismatch);
    }
    let q = &l1.quantale;
    let inner = l1.rows.len();
    let entries = (0..l2.rows.len())
        .flat_map(|u| (0..l1.cols.len()).map(move |s| (u, s)))
        .map(|(u, s)| q.join_all((0..inner).map(|t| q.mul(l2.get(u, t), l1.get(t, s)))))
        .collect();
    QMatrix::new(q.clone(), l2.rows.clone(), l1.cols.clone(), entries)
}

/// `Λ°(s, t) = Λ(t, s)°`.
pub fn involute(l: &QMatrix) -> QMatrix {
    let q = &l.quantale;
    let entries = (0..l.cols.len())
        .flat_map(|s| (0..l.rows.len()).map(move |t| (s, t)))
        .map(|(s, t)| q.inv(l.get(t, s)))
        .collect();
    QMatrix {
        quantale: q.clone(),
        rows: l.cols.clone(),
        cols: l.rows.clone(),
        entries,
    }
}

fn projection_violation(m: &QMatrix) -> Option<String> {
    let q = &m.quantale;
    let n = m.rows.len();
    for x in 0..n {
        for y in 0..n {
            if q.inv(m.get(x, y)) != m.get(y, x) {
                return Some(format!("not symmetric at ({}, {})", m.rows[x], m.rows[y]));
            }
        }
    }
    let sq = compose(m, m).expect("square matrix composes with itself");
    (sq.entries != m.entries).then(|| "not idempotent".to_string())
}

/// Whether `Σ° = Σ = Σ ∘ Σ`.
pub fn is_projection(m: &QMatrix) -> Result<bool, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare);
    }
    Ok(projection_violation(m).is_none())
}

/// A symmetric idempotent square matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionMatrix {
    base: QMatrix,
}

impl ProjectionMatrix {
    pub fn new(base: QMatrix) -> Result<Self, MatrixError> {
        if !base.is_square() {
            return Err(MatrixError::NotSquare);
        }
        if let Some(why) = projection_violation(&base) {
            return Err(MatrixError::NotProjection(why));
        }
        Ok(ProjectionMatrix { base })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.base
    }

    pub fn index(&self) -> &[String] {
        &self.base.rows
    }

    pub fn len(&self) -> usize {
        self.base.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.rows.is_empty()
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.base.get(x, y)
    }
}

/// `Σ(s,t) ∘ Σ(t,t) = Σ(s,t) = Σ(s,s) ∘ Σ(s,t)` for all `s, t`.
pub fn is_totally_regular(p: &ProjectionMatrix) -> bool {
    let q = &p.base.quantale;
    let n = p.len();
    (0..n).all(|s| {
        (0..n).all(|t| {
            let st = p.get(s, t);
            q.mul(st, p.get(t, t)) == st && q.mul(p.get(s, s), st) == st
        })
    })
}

/// All projection matrices on `index` over `q`, by exhaustive search.
pub fn all_projection_matrices(
    q: &Arc<InvolutiveQuantale>,
    index: &[String],
    bound: usize,
) -> Result<Vec<ProjectionMatrix>, MatrixError> {
    let n = index.len();
    let cells = u32::try_from(n * n).unwrap_or(u32::MAX);
    let needed = q.len().checked_pow(cells).unwrap_or(usize::MAX);
    if needed > bound {
        return Err(MatrixError::BoundExceeded { needed, bound });
    }
    let mut out = Vec::new();
    for code in 0..needed {
        let mut c = code;
        let entries = (0..n * n)
            .map(|_| {
                let v = c % q.len();
                c /= q.len();
                v
            })
            .collect();
        let m = QMatrix::new(q.clone(), index.to_vec(), index.to_vec(), entries)?;
        if projection_violation(&m).is_none() {
            out.push(ProjectionMatrix { base: m });
        }
    }
    Ok(out)
}

/// The module `R(Σ)` with its standard Hilbert structure.
#[derive(Debug, Clone)]
pub struct RModule {
    /// Carrier functions `S → Q`, indexed like the module's elements.
    pub functions: Vec<Vec<usize>>,
    pub module: Arc<QModule>,
    pub structure: HilbertStructure,
    /// The element `f_s = Σ(-, s)` for each index `s`, in index order.
    pub basis_functions: Vec<usize>,
}

impl RModule {
    pub fn element_of(&self, f: &[usize]) -> Option<usize> {
        self.functions.iter().position(|g| g == f)
    }
}

fn fixed_by(sigma: &ProjectionMatrix, f: &[usize]) -> bool {
    let q = &sigma.base.quantale;
    let n = sigma.len();
    (0..n).all(|s| q.join_all((0..n).map(|x| q.mul(sigma.get(s, x), f[x]))) == f[s])
}

/// Functions fixed by `Σ`, found by filtering all `|Q|^|S|` functions.
fn carrier_by_filter(sigma: &ProjectionMatrix, total: usize) -> Vec<Vec<usize>> {
    let q = &sigma.base.quantale;
    let n = sigma.len();
    (0..total)
        .map(|code| {
            let mut c = code;
            (0..n)
                .map(|_| {
                    let v = c % q.len();
                    c /= q.len();
                    v
                })
                .collect::<Vec<usize>>()
        })
        .filter(|f| fixed_by(sigma, f))
        .collect()
}

/// Functions fixed by `Σ`, as joins of the generators `f_s · q`.
fn carrier_by_closure(sigma: &ProjectionMatrix) -> Vec<Vec<usize>> {
    let q = &sigma.base.quantale;
    let n = sigma.len();
    let mut set: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
    set.insert(vec![q.bottom(); n]);
    let gens: Vec<Vec<usize>> = (0..n)
        .flat_map(|s| q.elements().map(move |g| (s, g)))
        .map(|(s, g)| (0..n).map(|x| q.mul(sigma.get(x, s), g)).collect())
        .collect();
    let mut frontier: Vec<Vec<usize>> = set.iter().cloned().collect();
    while let Some(f) = frontier.pop() {
        for g in &gens {
            let h: Vec<usize> = f.iter().zip(g).map(|(&a, &b)| q.join(a, b)).collect();
            if set.insert(h.clone()) {
                frontier.push(h);
            }
        }
    }
    set.into_iter().collect()
}

/// Builds `R(Σ) = {f : S → Q | f(s) = ⋁_x Σ(s,x) ∘ f(x)}` with
/// `⟨f, g⟩ = ⋁_s f(s)° ∘ g(s)` and basis `{Σ(-, s)}`.
///
/// The carrier is filtered from all functions when `|Q|^|S|` is within
/// `bound`, and generated from the basis otherwise.
pub fn r_of_sigma(sigma: &ProjectionMatrix, bound: usize) -> Result<RModule, MatrixError> {
    let q = sigma.base.quantale.clone();
    let n = sigma.len();
    let total = u32::try_from(n)
        .ok()
        .and_then(|k| q.len().checked_pow(k));
    let mut functions = match total {
        Some(t) if t <= bound => carrier_by_filter(sigma, t),
        _ => carrier_by_closure(sigma),
    };
    functions.sort();
    let index: HashMap<Vec<usize>, usize> = functions
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), i))
        .collect();
    let labels = functions
        .iter()
        .map(|f| {
            let parts: Vec<&str> = f.iter().map(|&v| q.label(v)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let lattice = Arc::new(CompleteLattice::from_leq_fn(labels, |i, j| {
        functions[i].iter().zip(&functions[j]).all(|(&a, &b)| q.leq(a, b))
    })?);
    let mut action = Vec::with_capacity(functions.len() * q.len());
    for f in &functions {
        for g in q.elements() {
            let fg: Vec<usize> = f.iter().map(|&v| q.mul(v, g)).collect();
            action.push(*index.get(&fg).ok_or_else(|| {
                MatrixError::EquivalenceViolation("carrier not closed under the action".into())
            })?);
        }
    }
    let module = Arc::new(QModule::new(q.clone(), lattice, action)?);
    let k = functions.len();
    let table = (0..k * k)
        .map(|c| {
            let (f, g) = (&functions[c / k], &functions[c % k]);
            q.join_all((0..n).map(|s| q.mul(q.inv(f[s]), g[s])))
        })
        .collect();
    let ip = InnerProduct::new(module.clone(), table)?;
    let basis_functions = (0..n)
        .map(|s| {
            let fs: Vec<usize> = (0..n).map(|x| sigma.get(x, s)).collect();
            index.get(&fs).copied().ok_or_else(|| {
                MatrixError::EquivalenceViolation(format!("column {} is not fixed", sigma.index()[s]))
            })
        })
        .collect::<Result<Vec<usize>, _>>()?;
    let structure = HilbertStructure::new(ip, basis_functions.clone())?;
    Ok(RModule {
        functions,
        module,
        structure,
        basis_functions,
    })
}

/// `⋁_s ⟨m, s⟩ ∘ ⟨s, n⟩ = ⟨m, n⟩` for all `m, n`.
pub fn gram_identity_holds(h: &HilbertStructure) -> bool {
    let m = h.module();
    let q = m.quantale();
    let ip = h.ip();
    m.elements().all(|x| {
        m.elements().all(|y| {
            q.join_all(h.basis().iter().map(|&s| q.mul(ip.get(x, s), ip.get(s, y)))) == ip.get(x, y)
        })
    })
}

/// The matrix `Σ(s, t) = ⟨s, t⟩` on the basis.
pub fn gram_matrix(h: &HilbertStructure) -> Result<ProjectionMatrix, MatrixError> {
    if !gram_identity_holds(h) {
        return Err(MatrixError::Lemma15Violation("Gram identity fails".into()));
    }
    let m = h.module();
    let index: Vec<String> = h.basis().iter().map(|&s| m.label(s).to_string()).collect();
    let entries = h
        .basis()
        .iter()
        .flat_map(|&s| h.basis().iter().map(move |&t| (s, t)))
        .map(|(s, t)| h.ip().get(s, t))
        .collect();
    let base = QMatrix::new(m.quantale().clone(), index.clone(), index, entries)?;
    ProjectionMatrix::new(base).map_err(|e| MatrixError::Lemma15Violation(e.to_string()))
}

/// `m ↦ (s ↦ ⟨s, m⟩)` into `R` of the Gram matrix, checked to be an
/// isomorphism with inverse `f ↦ ⋁_s s·f(s)`.
pub fn unit_of_equivalence(
    h: &HilbertStructure,
    bound: usize,
) -> Result<(RModule, ModuleMorphism), MatrixError> {
    let sigma = gram_matrix(h)?;
    let r = r_of_sigma(&sigma, bound)?;
    let m = h.module();
    let fail = |why: String| MatrixError::EquivalenceViolation(why);
    let values = m
        .elements()
        .map(|x| {
            let f: Vec<usize> = h.basis().iter().map(|&s| h.ip().get(s, x)).collect();
            r.element_of(&f)
                .ok_or_else(|| fail(format!("image of {} is not fixed", m.label(x))))
        })
        .collect::<Result<Vec<usize>, _>>()?;
    let unit = ModuleMorphism::new(m.clone(), r.module.clone(), values)
        .map_err(|e| fail(e.to_string()))?;
    let inverse: Vec<usize> = r
        .functions
        .iter()
        .map(|f| m.join_all(h.basis().iter().zip(f).map(|(&s, &v)| m.act(s, v))))
        .collect();
    for x in m.elements() {
        if inverse[unit.apply(x)] != x {
            return Err(fail(format!("round trip moves {}", m.label(x))));
        }
    }
    for i in r.module.elements() {
        if unit.apply(inverse[i]) != i {
            return Err(fail(format!("round trip moves {}", r.module.label(i))));
        }
    }
    Ok((r, unit))
}

/// The three regularity conditions on a Hilbert basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Regularity {
    /// `s = s·⟨s, s⟩` for every basis element.
    pub fixed: bool,
    /// `s ≤ s·⟨s, s⟩` for every basis element.
    pub below: bool,
    /// The Gram matrix is totally regular.
    pub gram_regular: bool,
}

impl Regularity {
    pub fn holds(&self) -> bool {
        self.fixed
    }
}

/// Evaluates the regularity conditions, checking they agree and that they
/// hold whenever `q ≤ q∘q°∘q` throughout `Q`.
pub fn basis_regularity(h: &HilbertStructure) -> Result<Regularity, MatrixError> {
    let m = h.module();
    let ip = h.ip();
    let fixed = h.basis().iter().all(|&s| m.act(s, ip.get(s, s)) == s);
    let below = h.basis().iter().all(|&s| m.leq(s, m.act(s, ip.get(s, s))));
    let gram = gram_matrix(h)?;
    let verdict = Regularity {
        fixed,
        below,
        gram_regular: is_totally_regular(&gram),
    };
    if fixed != below || below != verdict.gram_regular {
        return Err(MatrixError::Lemma16Violation(format!("{verdict:?}")));
    }
    if m.quantale().satisfies_q_qoq() && !fixed {
        return Err(MatrixError::Lemma16Violation(
            "quantale satisfies q <= q∘q°∘q but the basis is not regular".into(),
        ));
    }
    Ok(verdict)
}

/// Default cap on the function space filtered by [`r_of_sigma`].
pub const DEFAULT_FUNCTION_BOUND: usize = DEFAULT_BOUND;
