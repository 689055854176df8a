//! Locally principal elements and the canonical pre-inner product.
//!
//! An element `p` with `p·e = p` gives `ζ_p : Q^e → M, f ↦ p·f`. Its order
//! right adjoint `ζ_p*(n) = ⋁{f ∈ Q^e | p·f ≤ n}` always exists; `p` is
//! locally principal at `e` when that adjoint is a module morphism.

use std::sync::Arc;

use super::hilbert::InnerProduct;
use super::{check_idempotent, ModuleError, QModule};
use crate::quantale::InvolutiveQuantale;

/// A locally principal element `p` at `e`, with the table of `ζ_p*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Principal {
    pub e: usize,
    pub p: usize,
    pub star: Vec<usize>,
}

/// `ζ_m*` as a table over `M`, values in `Q`. Assumes `m·e = m`.
pub(crate) fn star_table(m: &QModule, p: usize, e: usize) -> Vec<usize> {
    let q = m.quantale();
    let fixed: Vec<usize> = q.elements().filter(|&f| q.mul(e, f) == f).collect();
    m.elements()
        .map(|n| q.join_all(fixed.iter().copied().filter(|&f| m.leq(m.act(p, f), n))))
        .collect()
}

fn check_fixed(m: &QModule, p: usize, e: usize) -> Result<(), ModuleError> {
    m.check_element(p)?;
    check_idempotent(m.quantale(), e)?;
    if m.act(p, e) != p {
        return Err(ModuleError::NotFixed {
            m: m.label(p).to_string(),
            e: m.quantale().label(e).to_string(),
        });
    }
    Ok(())
}

/// `ζ_m*(n) = ⋁{f ∈ Q^e | m·f ≤ n}`, as an element of `Q`.
pub fn zeta_star(m: &QModule, p: usize, e: usize, n: usize) -> Result<usize, ModuleError> {
    check_fixed(m, p, e)?;
    m.check_element(n)?;
    Ok(star_table(m, p, e)[n])
}

/// Whether a table `M → Q` preserves bottom, binary joins and the action.
pub(crate) fn is_morphism_into_q(m: &QModule, values: &[usize]) -> bool {
    let q = m.quantale();
    if values[m.bottom()] != q.bottom() {
        return false;
    }
    for a in m.elements() {
        for b in (a + 1)..m.len() {
            if values[m.join(a, b)] != q.join(values[a], values[b]) {
                return false;
            }
        }
    }
    m.elements()
        .all(|n| q.elements().all(|g| values[m.act(n, g)] == q.mul(values[n], g)))
}

/// Elements locally principal at the idempotent `e`.
pub fn locally_principal_at(m: &QModule, e: usize) -> Result<Vec<usize>, ModuleError> {
    check_idempotent(m.quantale(), e)?;
    Ok(principals_at(m, e).into_iter().map(|p| p.p).collect())
}

fn principals_at(m: &QModule, e: usize) -> Vec<Principal> {
    m.elements()
        .filter(|&p| m.act(p, e) == p)
        .filter_map(|p| {
            let star = star_table(m, p, e);
            is_morphism_into_q(m, &star).then_some(Principal { e, p, star })
        })
        .collect()
}

/// All locally principal pairs over the symmetric idempotents, ordered by `e` then `p`.
pub fn principal_pairs(m: &QModule) -> Vec<Principal> {
    m.quantale()
        .symmetric_idempotents()
        .into_iter()
        .flat_map(|e| principals_at(m, e))
        .collect()
}

fn principal_pairs_over(m: &QModule, es: &[usize]) -> Result<Vec<Principal>, ModuleError> {
    let q = m.quantale();
    for &e in es {
        check_idempotent(q, e)?;
    }
    if !es.contains(&q.unit()) {
        return Err(ModuleError::UnitMissing);
    }
    Ok(es.iter().flat_map(|&e| principals_at(m, e)).collect())
}

/// The table `⟨m, n⟩ = ⋁ (ζ_p*(m))° ∘ ζ_p*(n)` over all principal pairs.
pub(crate) fn canonical_table(m: &QModule, pairs: &[Principal]) -> Vec<usize> {
    let q = m.quantale();
    let k = m.len();
    let mut table = vec![q.bottom(); k * k];
    for pr in pairs {
        for a in 0..k {
            let left = q.inv(pr.star[a]);
            for b in 0..k {
                let cell = &mut table[a * k + b];
                *cell = q.join(*cell, q.mul(left, pr.star[b]));
            }
        }
    }
    table
}

/// The canonical pre-inner product of `m`.
pub fn canonical_inner_product(m: &Arc<QModule>) -> InnerProduct {
    let table = canonical_table(m, &principal_pairs(m));
    InnerProduct::new(m.clone(), table).expect("canonical table has the module's shape")
}

fn generated_by(m: &QModule, pairs: &[Principal]) -> bool {
    m.elements().all(|x| {
        m.join_all(pairs.iter().map(|pr| m.act(pr.p, pr.star[x]))) == x
    })
}

/// Whether every element is the join of `p · ζ_p*(m)` over principal pairs
/// at symmetric idempotents.
pub fn is_principally_generated(m: &QModule) -> bool {
    generated_by(m, &principal_pairs(m))
}

/// As [`is_principally_generated`], over an arbitrary set of idempotents
/// containing the unit.
pub fn is_principally_generated_over(m: &QModule, es: &[usize]) -> Result<bool, ModuleError> {
    Ok(generated_by(m, &principal_pairs_over(m, es)?))
}

/// The three formulations of principal symmetry, evaluated separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrincipalSymmetry {
    /// `ζ_p*(m) = ⟨p, m⟩_can` for every principal pair and every `m`.
    pub cond1: bool,
    /// The same, restricted to principal `m`.
    pub cond2: bool,
    /// `ζ_p*(q) = (ζ_q*(p))°` for all principal pairs.
    pub cond3: bool,
}

impl PrincipalSymmetry {
    pub fn holds(&self) -> bool {
        self.cond1
    }
}

/// Evaluates the three symmetry conditions and checks they agree.
pub fn is_principally_symmetric(m: &QModule) -> Result<PrincipalSymmetry, ModuleError> {
    let pairs = principal_pairs(m);
    let can = canonical_table(m, &pairs);
    symmetry_from(m, &pairs, &can)
}

pub(crate) fn symmetry_from(
    m: &QModule,
    pairs: &[Principal],
    can: &[usize],
) -> Result<PrincipalSymmetry, ModuleError> {
    let q = m.quantale();
    let k = m.len();
    let cond1 = pairs
        .iter()
        .all(|pr| m.elements().all(|x| pr.star[x] == can[pr.p * k + x]));
    let cond2 = pairs
        .iter()
        .all(|pr| pairs.iter().all(|other| pr.star[other.p] == can[pr.p * k + other.p]));
    let cond3 = pairs
        .iter()
        .all(|pr| pairs.iter().all(|other| pr.star[other.p] == q.inv(other.star[pr.p])));
    let verdict = PrincipalSymmetry { cond1, cond2, cond3 };
    if cond1 != cond2 || cond2 != cond3 {
        return Err(ModuleError::EquivalenceViolation(format!("{verdict:?}")));
    }
    Ok(verdict)
}

fn require_locale(q: &InvolutiveQuantale) -> Result<(), ModuleError> {
    if q.is_locale() {
        Ok(())
    } else {
        Err(ModuleError::HypothesisFails("quantale is not a locale".into()))
    }
}

/// Over a locale: whether `p·(x ∧ ζ_p*(n)) = (p·x) ∧ n` for all `x ≤ u` and `n`.
pub fn is_open_adjoint(m: &QModule, p: usize, u: usize) -> Result<bool, ModuleError> {
    let q = m.quantale();
    require_locale(q)?;
    check_fixed(m, p, u)?;
    let star = star_table(m, p, u);
    if !is_morphism_into_q(m, &star) {
        return Err(ModuleError::NotLocallyPrincipal {
            m: m.label(p).to_string(),
            e: q.label(u).to_string(),
        });
    }
    Ok(open_with(m, p, u, &star))
}

fn open_with(m: &QModule, p: usize, u: usize, star: &[usize]) -> bool {
    let q = m.quantale();
    let l = m.lattice();
    q.elements().filter(|&x| q.leq(x, u)).all(|x| {
        m.elements()
            .all(|n| m.act(p, q.meet(x, star[n])) == l.meet(m.act(p, x), n))
    })
}

/// Over a locale: whether every principal adjoint is open.
pub fn all_principal_adjoints_open(m: &QModule) -> Result<bool, ModuleError> {
    require_locale(m.quantale())?;
    Ok(principal_pairs(m)
        .iter()
        .all(|pr| open_with(m, pr.p, pr.e, &pr.star)))
}
