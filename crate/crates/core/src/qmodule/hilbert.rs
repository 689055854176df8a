//! Inner products, Hilbert bases and the canonical Hilbert structure.

use std::fmt;
use std::sync::Arc;

use super::principal::{canonical_table, is_morphism_into_q, principal_pairs, symmetry_from};
use super::{same_module, ModuleError, ModuleMorphism, PrincipalSymmetry, QModule};

/// Which of the inner-product conditions a table satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct InnerProductFlags {
    /// Rows are module morphisms and `⟨m,n⟩° = ⟨n,m⟩`.
    pub is_pre: bool,
    /// Additionally, distinct elements have distinct columns.
    pub is_inner: bool,
    /// Additionally, `⟨m,m⟩ = 0` only for `m = 0`.
    pub is_strict: bool,
}

/// A table `M × M → Q` with its computed flags.
#[derive(Clone, PartialEq, Eq)]
pub struct InnerProduct {
    module: Arc<QModule>,
    table: Vec<usize>,
    flags: InnerProductFlags,
}

impl fmt::Debug for InnerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InnerProduct")
            .field("table", &self.table)
            .field("flags", &self.flags)
            .finish()
    }
}

impl InnerProduct {
    /// `table[m * |M| + n] = ⟨m, n⟩`.
    pub fn new(module: Arc<QModule>, table: Vec<usize>) -> Result<Self, ModuleError> {
        let k = module.len();
        if table.len() != k * k {
            return Err(ModuleError::TableSize {
                expected: k * k,
                found: table.len(),
            });
        }
        let q = module.quantale();
        if let Some(&bad) = table.iter().find(|&&v| v >= q.len()) {
            return Err(ModuleError::UnknownIndex(bad));
        }
        let flags = compute_flags(&module, &table);
        Ok(InnerProduct {
            module,
            table,
            flags,
        })
    }

    pub fn module(&self) -> &Arc<QModule> {
        &self.module
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn flags(&self) -> InnerProductFlags {
        self.flags
    }

    #[inline]
    pub fn get(&self, m: usize, n: usize) -> usize {
        self.table[m * self.module.len() + n]
    }

    /// The row `⟨m, -⟩`.
    pub fn row(&self, m: usize) -> &[usize] {
        let k = self.module.len();
        &self.table[m * k..(m + 1) * k]
    }
}

fn compute_flags(m: &QModule, table: &[usize]) -> InnerProductFlags {
    let q = m.quantale();
    let k = m.len();
    let hermitian = (0..k).all(|a| (0..k).all(|b| q.inv(table[a * k + b]) == table[b * k + a]));
    let is_pre = hermitian && (0..k).all(|a| is_morphism_into_q(m, &table[a * k..(a + 1) * k]));
    let column = |n: usize| (0..k).map(move |a| table[a * k + n]);
    let separating = (0..k).all(|a| ((a + 1)..k).all(|b| !column(a).eq(column(b))));
    let is_inner = is_pre && separating;
    let strict = (0..k).all(|a| table[a * k + a] != q.bottom() || a == m.bottom());
    InnerProductFlags {
        is_pre,
        is_inner,
        is_strict: is_inner && strict,
    }
}

fn basis_fails_at(ip: &InnerProduct, basis: &[usize]) -> Option<usize> {
    let m = &ip.module;
    m.elements()
        .find(|&x| m.join_all(basis.iter().map(|&s| m.act(s, ip.get(s, x)))) != x)
}

/// Whether `m = ⋁_{s ∈ Γ} s·⟨s, m⟩` for every `m`.
pub fn is_hilbert_basis(ip: &InnerProduct, basis: &[usize]) -> Result<bool, ModuleError> {
    if !ip.flags.is_pre {
        return Err(ModuleError::NotPreInner);
    }
    for &s in basis {
        ip.module.check_element(s)?;
    }
    Ok(basis_fails_at(ip, basis).is_none())
}

/// `{s | s·⟨s, m⟩ ≤ m for all m}`, which contains every Hilbert basis.
pub fn maximal_hilbert_basis(ip: &InnerProduct) -> Result<Vec<usize>, ModuleError> {
    if !ip.flags.is_pre {
        return Err(ModuleError::NotPreInner);
    }
    let m = &ip.module;
    Ok(m.elements()
        .filter(|&s| m.elements().all(|x| m.leq(m.act(s, ip.get(s, x)), x)))
        .collect())
}

/// Recomputes the flags, and checks that a table admitting a Hilbert basis
/// separates elements.
pub fn classify_inner_product(ip: &InnerProduct) -> Result<InnerProductFlags, ModuleError> {
    let flags = compute_flags(&ip.module, &ip.table);
    if flags.is_pre {
        let max = maximal_hilbert_basis(ip)?;
        if basis_fails_at(ip, &max).is_none() && !flags.is_inner {
            return Err(ModuleError::InvariantViolation(
                "a Hilbert basis exists but the product does not separate".into(),
            ));
        }
    }
    Ok(flags)
}

/// A pre-inner product together with a Hilbert basis for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertStructure {
    ip: InnerProduct,
    basis: Vec<usize>,
}

impl HilbertStructure {
    pub fn new(ip: InnerProduct, mut basis: Vec<usize>) -> Result<Self, ModuleError> {
        basis.sort_unstable();
        basis.dedup();
        if !is_hilbert_basis(&ip, &basis)? {
            return Err(ModuleError::NotHilbertBasis);
        }
        Ok(HilbertStructure { ip, basis })
    }

    pub fn ip(&self) -> &InnerProduct {
        &self.ip
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn module(&self) -> &Arc<QModule> {
        &self.ip.module
    }
}

/// Outcome of computing the canonical structure on a module.
#[derive(Debug, Clone)]
pub struct CanonicalVerdict {
    pub generated: bool,
    pub symmetry: PrincipalSymmetry,
    /// Elements locally principal at some symmetric idempotent.
    pub basis: Vec<usize>,
    pub ip: InnerProduct,
    pub is_basis: bool,
}

impl CanonicalVerdict {
    pub fn structure(&self) -> Option<HilbertStructure> {
        self.is_basis.then(|| HilbertStructure {
            ip: self.ip.clone(),
            basis: self.basis.clone(),
        })
    }
}

/// The canonical product and basis, with the check that the basis works
/// exactly when the module is principally generated and symmetric.
pub fn canonical_hilbert_structure(m: &Arc<QModule>) -> Result<CanonicalVerdict, ModuleError> {
    let pairs = principal_pairs(m);
    let table = canonical_table(m, &pairs);
    let symmetry = symmetry_from(m, &pairs, &table)?;
    let generated = m.elements().all(|x| {
        m.join_all(pairs.iter().map(|pr| m.act(pr.p, pr.star[x]))) == x
    });
    let mut basis: Vec<usize> = pairs.iter().map(|pr| pr.p).collect();
    basis.sort_unstable();
    basis.dedup();
    let ip = InnerProduct::new(m.clone(), table)?;
    if !ip.flags.is_pre {
        return Err(ModuleError::InvariantViolation(
            "canonical product is not a pre-inner product".into(),
        ));
    }
    let is_basis = basis_fails_at(&ip, &basis).is_none();
    if is_basis != (generated && symmetry.holds()) {
        return Err(ModuleError::Theorem11Violation(format!(
            "basis={is_basis} generated={generated} symmetric={}",
            symmetry.holds()
        )));
    }
    Ok(CanonicalVerdict {
        generated,
        symmetry,
        basis,
        ip,
        is_basis,
    })
}

/// `φ°(n) = ⋁_{s ∈ Γ_M} s·⟨φ(s), n⟩`, checked against `⟨φ(s), t⟩ = ⟨s, φ°(t)⟩`
/// on basis pairs.
pub fn involute_morphism(
    phi: &ModuleMorphism,
    hm: &HilbertStructure,
    hn: &HilbertStructure,
) -> Result<ModuleMorphism, ModuleError> {
    if !same_module(phi.source(), hm.module()) || !same_module(phi.target(), hn.module()) {
        return Err(ModuleError::ModuleMismatch);
    }
    let (m, n) = (phi.source(), phi.target());
    let values: Vec<usize> = n
        .elements()
        .map(|y| m.join_all(hm.basis.iter().map(|&s| m.act(s, hn.ip.get(phi.apply(s), y)))))
        .collect();
    let fails = |why: String| ModuleError::CharacterisationFails(why);
    for &s in &hm.basis {
        for &t in &hn.basis {
            if hn.ip.get(phi.apply(s), t) != hm.ip.get(s, values[t]) {
                return Err(fails(format!(
                    "<φ({}), {}> differs from <{}, φ°({})>",
                    m.label(s),
                    n.label(t),
                    m.label(s),
                    n.label(t)
                )));
            }
        }
    }
    // a morphism is fixed by its values on the target basis
    for y in n.elements() {
        let rebuilt = m.join_all(hn.basis.iter().map(|&t| m.act(values[t], hn.ip.get(t, y))));
        if rebuilt != values[y] {
            return Err(fails(format!("not determined by the basis at {}", n.label(y))));
        }
    }
    ModuleMorphism::new(n.clone(), m.clone(), values).map_err(|e| fails(e.to_string()))
}
