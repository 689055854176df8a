//! The desk-scale corpus that the property suites run over: locales of small
//! posets, `Dwn(A)` modules, fixpoint modules, `R(Σ)` modules of small
//! projection matrices, and a few non-locale quantales.

use std::sync::Arc;

use crate::constructions::{
    all_posets, dwn_module, endo_quantale, locale_from_lattice, locale_from_poset,
    middle_unit_chain_quantale, nilpotent_chain_quantale, qe_hilbert, self_module_with_natural_ip,
    DualityMap, FinitePoset,
};
use crate::lattice::CompleteLattice;
use crate::matrix::{all_projection_matrices, r_of_sigma, ProjectionMatrix, RModule};
use crate::qmodule::{
    canonical_hilbert_structure, enumerate_hilbert_structures, HilbertStructure, QModule,
    DEFAULT_BOUND,
};
use crate::quantale::InvolutiveQuantale;

/// Largest quantale over which projection matrices are enumerated.
pub const PROJECTION_QUANTALE_MAX: usize = 4;
/// Largest index set for enumerated projection matrices.
pub const PROJECTION_INDEX_MAX: usize = 2;
/// Largest `|M|·|Q|` for which Hilbert structures are enumerated.
pub const ENUMERATION_PRODUCT_MAX: usize = 16;

#[derive(Debug, Clone)]
pub struct NamedQuantale {
    pub name: String,
    pub quantale: Arc<InvolutiveQuantale>,
}

#[derive(Debug, Clone)]
pub struct NamedModule {
    pub name: String,
    pub module: Arc<QModule>,
}

#[derive(Debug, Clone)]
pub struct NamedStructure {
    pub name: String,
    pub structure: HilbertStructure,
}

#[derive(Debug, Clone)]
pub struct NamedProjection {
    pub name: String,
    pub sigma: ProjectionMatrix,
    pub r: RModule,
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub posets: Vec<FinitePoset>,
    pub lattices: Vec<(String, Arc<CompleteLattice>)>,
    pub quantales: Vec<NamedQuantale>,
    pub modules: Vec<NamedModule>,
    pub projections: Vec<NamedProjection>,
    pub structures: Vec<NamedStructure>,
}

/// A short name such as `P2[a<b]` or `P3[]`.
pub fn poset_name(p: &FinitePoset) -> String {
    format!("P{}[{}]", p.len(), p.describe())
}

impl Corpus {
    /// Builds the full corpus.
    pub fn standard() -> Self {
        let mut c = Corpus {
            posets: (0..=3).flat_map(all_posets).collect(),
            ..Default::default()
        };
        c.add_lattices();
        c.add_quantales();
        c.add_modules();
        c.add_structures();
        c
    }

    fn add_lattices(&mut self) {
        let mut push = |name: String, l: CompleteLattice| {
            if !self.lattices.iter().any(|(_, x)| **x == l) {
                self.lattices.push((name, Arc::new(l)));
            }
        };
        for n in 1..=4 {
            push(format!("chain{n}"), CompleteLattice::chain(n).expect("chain"));
        }
        push("diamond".into(), CompleteLattice::diamond());
        push("M3".into(), CompleteLattice::m3());
        for p in &self.posets {
            push(format!("Dwn{}", poset_name(p)), p.downset_lattice());
        }
    }

    fn add_quantales(&mut self) {
        let mut qs = Vec::new();
        for p in &self.posets {
            qs.push((format!("Loc{}", poset_name(p)), locale_from_poset(p)));
        }
        qs.push((
            "Loc(diamond)".into(),
            locale_from_lattice(CompleteLattice::diamond()).expect("frame"),
        ));
        qs.push((
            "Loc(chain3)".into(),
            locale_from_lattice(CompleteLattice::chain(3).expect("chain")).expect("frame"),
        ));
        for n in [2, 3] {
            let s = Arc::new(CompleteLattice::chain(n).expect("chain"));
            let d = DualityMap::reversal(&s).expect("chains have a reversal");
            qs.push((format!("Endo(chain{n})"), endo_quantale(&s, &d).expect("endo quantale")));
        }
        qs.push(("Nilpotent(chain3)".into(), nilpotent_chain_quantale()));
        qs.push(("MiddleUnit(chain3)".into(), middle_unit_chain_quantale()));
        self.quantales = qs
            .into_iter()
            .map(|(name, q)| NamedQuantale {
                name,
                quantale: Arc::new(q),
            })
            .collect();
    }

    fn add_modules(&mut self) {
        let mut ms = Vec::new();
        for p in &self.posets {
            ms.push((format!("Dwn{}", poset_name(p)), dwn_module(p)));
        }
        for nq in &self.quantales {
            let q = &nq.quantale;
            ms.push((format!("{}/self", nq.name), QModule::over_itself(q.clone())));
            for e in q.symmetric_idempotents() {
                if e == q.unit() {
                    continue;
                }
                let (fix, _) = qe_hilbert(q, e).expect("symmetric idempotents give Q^e structures");
                ms.push((
                    format!("{}/fix[{}]", nq.name, q.label(e)),
                    (**fix.module()).clone(),
                ));
            }
        }
        self.modules = ms
            .into_iter()
            .map(|(name, m)| NamedModule {
                name,
                module: Arc::new(m),
            })
            .collect();

        for nq in &self.quantales {
            let q = &nq.quantale;
            if q.len() > PROJECTION_QUANTALE_MAX {
                continue;
            }
            for n in 1..=PROJECTION_INDEX_MAX {
                let index: Vec<String> = ["s", "t"][..n].iter().map(|s| s.to_string()).collect();
                let sigmas = all_projection_matrices(q, &index, DEFAULT_BOUND)
                    .expect("small projection searches fit the bound");
                for (i, sigma) in sigmas.into_iter().enumerate() {
                    let r = r_of_sigma(&sigma, DEFAULT_BOUND).expect("R(Σ) validates");
                    let name = format!("{}/R{}#{}", nq.name, n, i);
                    self.modules.push(NamedModule {
                        name: name.clone(),
                        module: r.module.clone(),
                    });
                    self.projections.push(NamedProjection { name, sigma, r });
                }
            }
        }
    }

    fn add_structures(&mut self) {
        let mut out = Vec::new();
        for nq in &self.quantales {
            let q = &nq.quantale;
            let (_, ip) = self_module_with_natural_ip(q);
            out.push(NamedStructure {
                name: format!("{}/natural", nq.name),
                structure: HilbertStructure::new(ip, vec![q.unit()]).expect("unit is a basis"),
            });
            for e in q.symmetric_idempotents() {
                let (_, h) = qe_hilbert(q, e).expect("symmetric idempotents give Q^e structures");
                out.push(NamedStructure {
                    name: format!("{}/fix[{}]/natural", nq.name, q.label(e)),
                    structure: h,
                });
            }
        }
        for np in &self.projections {
            out.push(NamedStructure {
                name: format!("{}/standard", np.name),
                structure: np.r.structure.clone(),
            });
        }
        for nm in &self.modules {
            let m = &nm.module;
            let verdict = canonical_hilbert_structure(m).expect("canonical verdict is consistent");
            if let Some(h) = verdict.structure() {
                out.push(NamedStructure {
                    name: format!("{}/canonical", nm.name),
                    structure: h,
                });
            }
            if m.len() * m.quantale().len() <= ENUMERATION_PRODUCT_MAX {
                if let Ok(found) = enumerate_hilbert_structures(m, DEFAULT_BOUND) {
                    for (i, h) in found.into_iter().enumerate() {
                        out.push(NamedStructure {
                            name: format!("{}/found#{}", nm.name, i),
                            structure: h,
                        });
                    }
                }
            }
        }
        self.structures = out;
    }

    pub fn quantale(&self, name: &str) -> Option<&Arc<InvolutiveQuantale>> {
        self.quantales.iter().find(|q| q.name == name).map(|q| &q.quantale)
    }

    pub fn module(&self, name: &str) -> Option<&Arc<QModule>> {
        self.modules.iter().find(|m| m.name == name).map(|m| &m.module)
    }
}
