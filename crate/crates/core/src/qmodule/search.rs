//! Exhaustive search for Hilbert structures on a module.
//!
//! Rows `⟨s, -⟩` for basis elements determine the whole product through
//! `⟨m, n⟩ = ⋁_{s ∈ Γ} ⟨s, m⟩° ∘ ⟨s, n⟩`, so the pruned search picks a basis
//! and its rows, forces the table, and validates. The unpruned search walks
//! every table and is only usable on tiny instances.

use std::sync::Arc;

use super::hilbert::{canonical_hilbert_structure, HilbertStructure, InnerProduct};
use super::{module_morphism_tables, ModuleError, QModule};

fn sort_structures(v: &mut [HilbertStructure]) {
    v.sort_by(|a, b| {
        (a.ip().table(), a.basis()).cmp(&(b.ip().table(), b.basis()))
    });
}

/// Every pair (pre-inner product, Hilbert basis) on `m`, sorted by table
/// then basis. The bound caps visited leaves of the search.
pub fn enumerate_hilbert_structures(
    m: &Arc<QModule>,
    bound: usize,
) -> Result<Vec<HilbertStructure>, ModuleError> {
    let q = m.quantale().clone();
    let k = m.len();
    let target = QModule::over_itself(q.clone());
    let rows = module_morphism_tables(m, &target, bound)?;
    // s·⟨s, x⟩ ≤ x is forced by the basis formula
    let candidates: Vec<Vec<&Vec<usize>>> = m
        .elements()
        .map(|s| {
            rows.iter()
                .filter(|r| m.elements().all(|x| m.leq(m.act(s, r[x]), x)))
                .filter(|r| q.inv(r[s]) == r[s])
                .collect()
        })
        .collect();
    let estimate = candidates
        .iter()
        .fold(1usize, |acc, c| acc.saturating_mul(c.len() + 1));

    struct Search<'a> {
        m: &'a QModule,
        candidates: &'a [Vec<&'a Vec<usize>>],
        chosen: Vec<(usize, &'a Vec<usize>)>,
        leaves: usize,
        bound: usize,
        estimate: usize,
        found: Vec<(Vec<usize>, Vec<usize>)>,
    }

    impl<'a> Search<'a> {
        fn run(&mut self, s: usize) -> Result<(), ModuleError> {
            let k = self.m.len();
            if s == k {
                self.leaves += 1;
                if self.leaves > self.bound {
                    return Err(ModuleError::BoundExceeded {
                        needed: self.estimate,
                        bound: self.bound,
                    });
                }
                self.leaf();
                return Ok(());
            }
            self.run(s + 1)?;
            let q = self.m.quantale();
            for &row in &self.candidates[s] {
                if self.chosen.iter().all(|&(t, rt)| row[t] == q.inv(rt[s])) {
                    self.chosen.push((s, row));
                    self.run(s + 1)?;
                    self.chosen.pop();
                }
            }
            Ok(())
        }

        fn leaf(&mut self) {
            let m = self.m;
            let q = m.quantale();
            let k = m.len();
            let generates = m.elements().all(|x| {
                m.join_all(self.chosen.iter().map(|&(s, r)| m.act(s, r[x]))) == x
            });
            if !generates {
                return;
            }
            let mut table = vec![q.bottom(); k * k];
            for &(_, r) in &self.chosen {
                for a in 0..k {
                    let left = q.inv(r[a]);
                    for b in 0..k {
                        let cell = &mut table[a * k + b];
                        *cell = q.join(*cell, q.mul(left, r[b]));
                    }
                }
            }
            if self
                .chosen
                .iter()
                .any(|&(s, r)| table[s * k..(s + 1) * k] != r[..])
            {
                return;
            }
            let basis = self.chosen.iter().map(|&(s, _)| s).collect();
            self.found.push((table, basis));
        }
    }

    let mut search = Search {
        m,
        candidates: &candidates,
        chosen: Vec::with_capacity(k),
        leaves: 0,
        bound,
        estimate,
        found: Vec::new(),
    };
    search.run(0)?;
    let found = std::mem::take(&mut search.found);
    let mut out = Vec::with_capacity(found.len());
    for (table, basis) in found {
        let ip = InnerProduct::new(m.clone(), table)?;
        if !ip.flags().is_pre {
            continue;
        }
        out.push(HilbertStructure::new(ip, basis)?);
    }
    sort_structures(&mut out);
    Ok(out)
}

/// Reference enumeration over all `|Q|^(|M|²)` tables and all subsets.
pub fn enumerate_hilbert_structures_unpruned(
    m: &Arc<QModule>,
    bound: usize,
) -> Result<Vec<HilbertStructure>, ModuleError> {
    let q = m.quantale();
    let k = m.len();
    let cells = u32::try_from(k * k).unwrap_or(u32::MAX);
    let needed = q.len().checked_pow(cells).unwrap_or(usize::MAX);
    if needed > bound || k >= usize::BITS as usize {
        return Err(ModuleError::BoundExceeded { needed, bound });
    }
    let mut out = Vec::new();
    let mut table = vec![0usize; k * k];
    loop {
        let ip = InnerProduct::new(m.clone(), table.clone())?;
        if ip.flags().is_pre {
            for mask in 0usize..(1 << k) {
                let basis: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).collect();
                if let Ok(h) = HilbertStructure::new(ip.clone(), basis) {
                    out.push(h);
                }
            }
        }
        // odometer over table entries
        let mut i = 0;
        while i < table.len() {
            table[i] += 1;
            if table[i] < q.len() {
                break;
            }
            table[i] = 0;
            i += 1;
        }
        if i == table.len() {
            break;
        }
    }
    sort_structures(&mut out);
    Ok(out)
}

/// Result of checking uniqueness of Hilbert structures on one module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Theorem14Report {
    /// The quantale is not a modular quantal frame.
    HypothesisNotMet,
    Verified {
        /// Number of (product, basis) pairs found.
        structures: usize,
        /// Whether the canonical basis works for the canonical product.
        canonical: bool,
    },
}

/// Over a modular quantal frame, checks that every Hilbert structure uses the
/// canonical product, is strict, and that the module is principally
/// generated and symmetric.
pub fn theorem14_verdict(m: &Arc<QModule>, bound: usize) -> Result<Theorem14Report, ModuleError> {
    if !m.quantale().is_modular_quantal_frame() {
        return Ok(Theorem14Report::HypothesisNotMet);
    }
    let canonical = canonical_hilbert_structure(m)?;
    let structures = enumerate_hilbert_structures(m, bound)?;
    let fail = |why: String| Err(ModuleError::Theorem14Violation(why));
    for h in &structures {
        let basis: Vec<&str> = h.basis().iter().map(|&s| m.label(s)).collect();
        if h.ip().table() != canonical.ip.table() {
            return fail(format!("basis {basis:?} carries a non-canonical product"));
        }
        if !h.ip().flags().is_strict {
            return fail(format!("product with basis {basis:?} is not strict"));
        }
        if !canonical.generated || !canonical.symmetry.holds() {
            return fail(format!(
                "structure with basis {basis:?} on a module that is not generated and symmetric"
            ));
        }
    }
    if canonical.is_basis
        && !structures
            .iter()
            .any(|h| h.basis() == canonical.basis.as_slice())
    {
        return fail("the canonical structure was not enumerated".into());
    }
    Ok(Theorem14Report::Verified {
        structures: structures.len(),
        canonical: canonical.is_basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        dwn_module, locale_from_poset, nilpotent_chain_quantale, FinitePoset,
    };
    use crate::qmodule::DEFAULT_BOUND;

    fn key(v: &[HilbertStructure]) -> Vec<(Vec<usize>, Vec<usize>)> {
        v.iter()
            .map(|h| (h.ip().table().to_vec(), h.basis().to_vec()))
            .collect()
    }

    #[test]
    fn two_chain_over_itself() {
        let q = Arc::new(locale_from_poset(&FinitePoset::chain(1)));
        let m = Arc::new(QModule::over_itself(q.clone()));
        let found = enumerate_hilbert_structures(&m, DEFAULT_BOUND).unwrap();
        let meet: Vec<usize> = (0..4).map(|i| q.meet(i / 2, i % 2)).collect();
        assert_eq!(key(&found), vec![(meet.clone(), vec![0, 1]), (meet, vec![1])]);
        let full = enumerate_hilbert_structures_unpruned(&m, DEFAULT_BOUND).unwrap();
        assert_eq!(key(&found), key(&full));
    }

    #[test]
    fn zero_module_has_one_table() {
        let m = Arc::new(dwn_module(&FinitePoset::antichain(0)));
        let found = enumerate_hilbert_structures(&m, DEFAULT_BOUND).unwrap();
        assert_eq!(key(&found), vec![(vec![0], vec![]), (vec![0], vec![0])]);
    }

    #[test]
    fn dwn_chain_has_no_structure() {
        let m = Arc::new(dwn_module(&FinitePoset::chain(2)));
        assert!(enumerate_hilbert_structures(&m, DEFAULT_BOUND).unwrap().is_empty());
        assert!(enumerate_hilbert_structures_unpruned(&m, 1 << 20).unwrap().is_empty());
    }

    #[test]
    fn pruned_matches_unpruned_on_tiny_modules() {
        for p in (0..=2).flat_map(crate::constructions::all_posets) {
            let m = Arc::new(dwn_module(&p));
            let Ok(full) = enumerate_hilbert_structures_unpruned(&m, 1 << 16) else {
                continue;
            };
            let pruned = enumerate_hilbert_structures(&m, DEFAULT_BOUND).unwrap();
            assert_eq!(key(&pruned), key(&full), "{}", p.describe());
        }
    }

    #[test]
    fn bounds_are_enforced() {
        let m = Arc::new(dwn_module(&FinitePoset::antichain(2)));
        assert!(matches!(
            enumerate_hilbert_structures_unpruned(&m, 1000),
            Err(ModuleError::BoundExceeded { needed: 65536, bound: 1000 })
        ));
        assert!(matches!(
            enumerate_hilbert_structures(&m, 1),
            Err(ModuleError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn uniqueness_verdicts() {
        let m = Arc::new(dwn_module(&FinitePoset::antichain(2)));
        assert!(matches!(
            theorem14_verdict(&m, DEFAULT_BOUND).unwrap(),
            Theorem14Report::Verified { canonical: true, .. }
        ));
        let q = Arc::new(locale_from_poset(&FinitePoset::antichain(2)));
        let selfm = Arc::new(QModule::over_itself(q));
        assert!(matches!(
            theorem14_verdict(&selfm, DEFAULT_BOUND).unwrap(),
            Theorem14Report::Verified { canonical: true, .. }
        ));
        let nil = Arc::new(QModule::over_itself(Arc::new(nilpotent_chain_quantale())));
        assert_eq!(
            theorem14_verdict(&nil, DEFAULT_BOUND).unwrap(),
            Theorem14Report::HypothesisNotMet
        );
    }
}
