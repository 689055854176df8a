//! The check registry. Each check maps one subject to a verdict; property
//! classifications that are not failures go in the witness.

use std::sync::Arc;
use std::time::Instant;

use qhilbert::corpus::ENUMERATION_PRODUCT_MAX;
use qhilbert::lattice::CompleteLattice;
use qhilbert::matrix::{
    basis_regularity, gram_identity_holds, is_projection, r_of_sigma, unit_of_equivalence,
    MatrixError, ProjectionMatrix, QMatrix,
};
use qhilbert::qmodule::{
    all_principal_adjoints_open, canonical_hilbert_structure, canonical_inner_product,
    enumerate_hilbert_structures, involute_morphism, is_principally_generated,
    is_principally_symmetric, theorem14_verdict, CanonicalVerdict, HilbertStructure, ModuleError,
    ModuleMorphism, QModule, Theorem14Report,
};
use qhilbert::quantale::InvolutiveQuantale;

use crate::parse::{CliError, Item, Workspace};
use crate::report::{Record, Report, Verdict};

pub const SUITES: [&str; 8] = [
    "axioms",
    "structure",
    "canonical",
    "hilbert-unique",
    "lemmas",
    "locale-openness",
    "matrix-roundtrip",
    "all",
];

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub bound: usize,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            bound: qhilbert::qmodule::DEFAULT_BOUND,
            timings: false,
        }
    }
}

type Outcome = (Verdict, Option<String>);

fn pass(w: impl Into<String>) -> Outcome {
    (Verdict::Pass, Some(w.into()))
}

fn fail(w: impl Into<String>) -> Outcome {
    (Verdict::Fail, Some(w.into()))
}

fn na(w: impl Into<String>) -> Outcome {
    (Verdict::NotApplicable, Some(w.into()))
}

struct Runner<'a> {
    opts: Options,
    records: &'a mut Vec<Record>,
    subject: String,
}

impl Runner<'_> {
    fn run(&mut self, check: &str, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let (verdict, witness) = f();
        let ms = if self.opts.timings {
            start.elapsed().as_millis() as u64
        } else {
            0
        };
        self.records.push(Record {
            check: check.to_string(),
            subject: self.subject.clone(),
            verdict,
            witness,
            ms,
        });
    }
}

/// Runs `suite` over every subject in file order.
pub fn run_checks(ws: &Workspace, suite: &str, opts: Options) -> Result<Report, CliError> {
    if !SUITES.contains(&suite) {
        return Err(CliError::UnknownSuite(suite.to_string()));
    }
    let on = |s: &str| suite == "all" || suite == s;
    let mut records = Vec::new();
    for item in &ws.items {
        let mut r = Runner {
            opts,
            records: &mut records,
            subject: format!("{}:{}", item.kind().as_str(), item.name()),
        };
        match item {
            Item::Lattice { lattice, .. } => {
                if on("axioms") {
                    r.run("lattice-laws", || lattice_laws(lattice));
                }
            }
            Item::Quantale { quantale, .. } => {
                if on("axioms") {
                    r.run("quantale-laws", || quantale_laws(quantale));
                    r.run("involution-laws", || involution_laws(quantale));
                }
                if on("structure") {
                    r.run("modular", || modular(quantale));
                    r.run("quantal-frame", || quantal_frame(quantale));
                    r.run("inverse-frame", || inverse_frame(quantale));
                }
            }
            Item::Module { module, .. } => module_checks(&mut r, module, &on),
            Item::Matrix { matrix, .. } => {
                if on("matrix-roundtrip") {
                    matrix_checks(&mut r, matrix);
                }
            }
        }
    }
    Ok(Report { records })
}

fn lattice_laws(l: &CompleteLattice) -> Outcome {
    for x in l.elements() {
        for y in l.elements() {
            let (j, m) = (l.join(x, y), l.meet(x, y));
            let upper = l.leq(x, j) && l.leq(y, j);
            let lower = l.leq(m, x) && l.leq(m, y);
            let least = l.elements().all(|z| !(l.leq(x, z) && l.leq(y, z)) || l.leq(j, z));
            let greatest = l.elements().all(|z| !(l.leq(z, x) && l.leq(z, y)) || l.leq(z, m));
            if !(upper && lower && least && greatest) {
                return fail(format!("join or meet of {}, {}", l.label(x), l.label(y)));
            }
        }
    }
    match l.frame_violation() {
        None => pass("frame"),
        Some(_) => pass("not distributive"),
    }
}

fn quantale_laws(q: &InvolutiveQuantale) -> Outcome {
    let n = |x: usize| q.label(x).to_string();
    for f in q.elements() {
        if q.mul(q.unit(), f) != f || q.mul(f, q.unit()) != f {
            return fail(format!("unit law at {}", n(f)));
        }
        if q.mul(q.bottom(), f) != q.bottom() || q.mul(f, q.bottom()) != q.bottom() {
            return fail(format!("bottom not absorbing at {}", n(f)));
        }
        for g in q.elements() {
            for h in q.elements() {
                if q.mul(q.mul(f, g), h) != q.mul(f, q.mul(g, h)) {
                    return fail(format!("associativity at ({}, {}, {})", n(f), n(g), n(h)));
                }
                let gh = q.join(g, h);
                if q.mul(f, gh) != q.join(q.mul(f, g), q.mul(f, h))
                    || q.mul(gh, f) != q.join(q.mul(g, f), q.mul(h, f))
                {
                    return fail(format!("distributivity at {} over {}, {}", n(f), n(g), n(h)));
                }
            }
        }
    }
    pass(if q.base().is_commutative() {
        "commutative"
    } else {
        "not commutative"
    })
}

fn involution_laws(q: &InvolutiveQuantale) -> Outcome {
    let n = |x: usize| q.label(x).to_string();
    for f in q.elements() {
        if q.inv(q.inv(f)) != f {
            return fail(format!("not involutive at {}", n(f)));
        }
        for g in q.elements() {
            if q.leq(f, g) && !q.leq(q.inv(f), q.inv(g)) {
                return fail(format!("not monotone at {} <= {}", n(f), n(g)));
            }
            if q.inv(q.mul(f, g)) != q.mul(q.inv(g), q.inv(f)) {
                return fail(format!("does not reverse ({}, {})", n(f), n(g)));
            }
        }
    }
    pass(if q.is_identity_involution() {
        "identity"
    } else {
        "non-trivial"
    })
}

fn modular(q: &InvolutiveQuantale) -> Outcome {
    match q.modular_law_violation() {
        Some((a, b, c)) => pass(format!(
            "not modular at ({}, {}, {})",
            q.label(a),
            q.label(b),
            q.label(c)
        )),
        // the modular law gives q <= q∘q°∘q
        None => match q.q_qoq_violation() {
            Some(x) => fail(format!("modular but q <= q∘q°∘q fails at {}", q.label(x))),
            None => pass("modular"),
        },
    }
}

fn quantal_frame(q: &InvolutiveQuantale) -> Outcome {
    pass(if q.is_quantal_frame() {
        "quantal frame"
    } else {
        "not a quantal frame"
    })
}

fn inverse_frame(q: &InvolutiveQuantale) -> Outcome {
    let inverse = q.is_inverse_quantal_frame();
    if q.is_locale() && !(inverse && q.is_modular_quantal_frame()) {
        return fail("locale that is not an inverse quantal frame");
    }
    pass(if inverse {
        "inverse quantal frame"
    } else {
        "not an inverse quantal frame"
    })
}

fn module_laws(m: &QModule) -> Outcome {
    let q = m.quantale();
    let (mn, qn) = (|x: usize| m.label(x).to_string(), |f: usize| q.label(f).to_string());
    for x in m.elements() {
        if m.act(x, q.unit()) != x {
            return fail(format!("unit law at {}", mn(x)));
        }
        if m.act(x, q.bottom()) != m.bottom() {
            return fail(format!("{}·0 is not bottom", mn(x)));
        }
        for f in q.elements() {
            if m.act(m.bottom(), f) != m.bottom() {
                return fail(format!("0·{} is not bottom", qn(f)));
            }
            for g in q.elements() {
                if m.act(m.act(x, f), g) != m.act(x, q.mul(f, g)) {
                    return fail(format!("associativity at ({}, {}, {})", mn(x), qn(f), qn(g)));
                }
                if m.act(x, q.join(f, g)) != m.join(m.act(x, f), m.act(x, g)) {
                    return fail(format!("distributivity at {} over {}, {}", mn(x), qn(f), qn(g)));
                }
            }
            for y in m.elements() {
                if m.act(m.join(x, y), f) != m.join(m.act(x, f), m.act(y, f)) {
                    return fail(format!("distributivity at {} over {}, {}", qn(f), mn(x), mn(y)));
                }
            }
        }
    }
    pass(format!("{} elements", m.len()))
}

fn plural(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

fn labels(m: &QModule, xs: &[usize]) -> String {
    let v: Vec<&str> = xs.iter().map(|&x| m.label(x)).collect();
    format!("{{{}}}", v.join(", "))
}

/// The canonical structure, if any, then every enumerated structure on
/// modules small enough to search.
fn known_structures(
    m: &Arc<QModule>,
    canonical: &CanonicalVerdict,
    bound: usize,
) -> Vec<HilbertStructure> {
    let mut out: Vec<HilbertStructure> = canonical.structure().into_iter().collect();
    if m.len() * m.quantale().len() <= ENUMERATION_PRODUCT_MAX {
        if let Ok(found) = enumerate_hilbert_structures(m, bound) {
            for h in found {
                if !out
                    .iter()
                    .any(|k| k.basis() == h.basis() && k.ip().table() == h.ip().table())
                {
                    out.push(h);
                }
            }
        }
    }
    out
}

fn over_structures(
    hs: &[HilbertStructure],
    mut f: impl FnMut(&HilbertStructure) -> Result<(), String>,
) -> Outcome {
    if hs.is_empty() {
        return na("no known Hilbert structure");
    }
    for h in hs {
        if let Err(why) = f(h) {
            return fail(format!("basis {}: {why}", labels(h.module(), h.basis())));
        }
    }
    pass(plural(hs.len(), "structure"))
}

fn module_checks(r: &mut Runner, m: &Arc<QModule>, on: &dyn Fn(&str) -> bool) {
    let q = m.quantale().clone();
    let bound = r.opts.bound;
    if on("axioms") {
        r.run("module-laws", || module_laws(m));
    }
    let canonical = canonical_hilbert_structure(m);
    if on("canonical") {
        r.run("canonical-pre-inner", || {
            if canonical_inner_product(m).flags().is_pre {
                pass("pre-inner product")
            } else {
                fail("canonical product is not a pre-inner product")
            }
        });
        r.run("symmetry-agreement", || match is_principally_symmetric(m) {
            Ok(s) => pass(format!("symmetric={}", s.holds())),
            Err(e) => fail(e.to_string()),
        });
        r.run("canonical-biconditional", || match &canonical {
            Ok(v) if v.is_basis => pass(format!("canonical Hilbert basis {}", labels(m, &v.basis))),
            Ok(v) => pass(format!(
                "no canonical Hilbert structure (generated={}, symmetric={})",
                v.generated,
                v.symmetry.holds()
            )),
            Err(e) => fail(e.to_string()),
        });
    }
    if on("hilbert-unique") {
        r.run("uniqueness", || match theorem14_verdict(m, bound) {
            Ok(Theorem14Report::HypothesisNotMet) => na("not a modular quantal frame"),
            Ok(Theorem14Report::Verified {
                structures,
                canonical,
            }) => pass(format!(
                "{}, canonical basis={canonical}",
                plural(structures, "structure")
            )),
            Err(ModuleError::BoundExceeded { needed, bound }) => {
                na(format!("search needs {needed}, bound {bound}"))
            }
            Err(e) => fail(e.to_string()),
        });
    }
    let Ok(canonical) = canonical else {
        // the canonical checks above already reported the failure
        return;
    };
    if on("lemmas") {
        let hs = known_structures(m, &canonical, bound);
        r.run("gram-identity", || {
            over_structures(&hs, |h| {
                gram_identity_holds(h).then_some(()).ok_or("Gram identity fails".into())
            })
        });
        r.run("basis-regularity", || {
            over_structures(&hs, |h| basis_regularity(h).map(|_| ()).map_err(|e| e.to_string()))
        });
        let generated = is_principally_generated(m);
        r.run("fixed-basis-generates", || {
            over_structures(&hs, |h| {
                let fixed = h
                    .basis()
                    .iter()
                    .all(|&s| m.act(s, h.ip().get(s, s)) == s);
                if fixed && !generated {
                    Err("fixed basis on a module that is not principally generated".into())
                } else {
                    Ok(())
                }
            })
        });
        r.run("modular-forces-symmetry", || {
            if !q.is_modular_quantal_frame() {
                return na("not a modular quantal frame");
            }
            over_structures(&hs, |_| {
                canonical
                    .symmetry
                    .holds()
                    .then_some(())
                    .ok_or("module is not principally symmetric".into())
            })
        });
        r.run("strictness", || {
            if !q.satisfies_q_qoq() {
                return na("q <= q∘q°∘q fails");
            }
            over_structures(&hs, |h| {
                h.ip().flags().is_strict.then_some(()).ok_or("not strict".into())
            })
        });
        r.run("inner", || {
            over_structures(&hs, |h| {
                h.ip().flags().is_inner.then_some(()).ok_or("not separating".into())
            })
        });
    }
    if on("locale-openness") {
        r.run("open-adjoints", || {
            if !q.is_locale() {
                return na("not a locale");
            }
            let open = match all_principal_adjoints_open(m) {
                Ok(o) => o,
                Err(e) => return fail(e.to_string()),
            };
            let symmetric = canonical.symmetry.holds();
            if open && !symmetric {
                return fail("principal adjoints open but not principally symmetric");
            }
            if !canonical.generated {
                return na(format!("not principally generated (open={open})"));
            }
            if open != symmetric {
                return fail("principally symmetric but some principal adjoint is not open");
            }
            pass(format!("open={open}"))
        });
    }
    if on("matrix-roundtrip") {
        let h = canonical.structure();
        r.run("equivalence-roundtrip", || match &h {
            None => na("no canonical Hilbert structure"),
            Some(h) => match unit_of_equivalence(h, bound) {
                Ok((rm, _)) => pass(format!("isomorphic to R of a {0}x{0} Gram matrix", rm.basis_functions.len())),
                Err(MatrixError::BoundExceeded { needed, bound }) => {
                    na(format!("function space needs {needed}, bound {bound}"))
                }
                Err(e) => fail(e.to_string()),
            },
        });
        r.run("involute-identity", || match &h {
            None => na("no canonical Hilbert structure"),
            Some(h) => {
                let id = ModuleMorphism::identity(m.clone());
                match involute_morphism(&id, h, h) {
                    Ok(inv) if inv == id => pass("identity is self-involute"),
                    Ok(_) => fail("involute of the identity differs from the identity"),
                    Err(e) => fail(e.to_string()),
                }
            }
        });
    }
}

fn matrix_checks(r: &mut Runner, matrix: &QMatrix) {
    let bound = r.opts.bound;
    let sigma = match is_projection(matrix) {
        Ok(true) => ProjectionMatrix::new(matrix.clone()).ok(),
        _ => None,
    };
    r.run("projection", || match &sigma {
        Some(_) => pass("symmetric idempotent"),
        None => na("not a projection matrix"),
    });
    let Some(sigma) = sigma else {
        return;
    };
    r.run("r-sigma", || {
        let rm = match r_of_sigma(&sigma, bound) {
            Ok(rm) => rm,
            Err(e) => return fail(e.to_string()),
        };
        let q = sigma.matrix().quantale();
        let n = sigma.len();
        let ip = rm.structure.ip();
        for s in 0..n {
            for t in 0..n {
                let (fs, ft) = (rm.basis_functions[s], rm.basis_functions[t]);
                if ip.get(fs, ft) != sigma.get(s, t) {
                    return fail(format!(
                        "<f_{0}, f_{1}> is {2}, expected {3}",
                        sigma.index()[s],
                        sigma.index()[t],
                        q.label(ip.get(fs, ft)),
                        q.label(sigma.get(s, t))
                    ));
                }
            }
        }
        match unit_of_equivalence(&rm.structure, bound) {
            Ok(_) => pass(format!("{} elements", rm.module.len())),
            Err(e) => fail(e.to_string()),
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_str;

    const DWN: &str = "lattice L2\nelements: 0 1\nleq: 0<1\n\
        quantale Two\nlattice: L2\nmult: meet\ninvolution: identity\n\
        lattice Anti\nelements: e a b ab\nleq: e<a e<b a<ab b<ab\n\
        module DwnAnti\nquantale: Two\nlattice: Anti\n\
        action: e 0 = e\naction: e 1 = e\naction: a 0 = e\naction: a 1 = a\n\
        action: b 0 = e\naction: b 1 = b\naction: ab 0 = e\naction: ab 1 = ab\n\
        lattice Ch\nelements: e a ab\nleq: e<a<ab\n\
        module DwnChain\nquantale: Two\nlattice: Ch\n\
        action: e 0 = e\naction: e 1 = e\naction: a 0 = e\naction: a 1 = a\n\
        action: ab 0 = e\naction: ab 1 = ab\n";

    fn ws(text: &str) -> Workspace {
        let mut ws = Workspace::default();
        parse_str(&mut ws, "t.qdef", text).unwrap();
        ws
    }

    fn find<'a>(r: &'a Report, check: &str, subject: &str) -> &'a Record {
        r.records
            .iter()
            .find(|x| x.check == check && x.subject == subject)
            .unwrap()
    }

    #[test]
    fn canonical_suite_on_dwn_modules() {
        let r = run_checks(&ws(DWN), "canonical", Options::default()).unwrap();
        assert!(r
            .records
            .iter()
            .filter(|x| x.subject == "module:DwnAnti")
            .all(|x| x.verdict == Verdict::Pass));
        let chain = find(&r, "canonical-biconditional", "module:DwnChain");
        assert_eq!(chain.verdict, Verdict::Pass);
        assert_eq!(
            chain.witness.as_deref(),
            Some("no canonical Hilbert structure (generated=true, symmetric=false)")
        );
        assert!(!r.has_failures());
    }

    #[test]
    fn uniqueness_is_not_applicable_off_modular_frames() {
        let text = "lattice C\nelements: 0 1 2\nleq: 0<1<2\nquantale Nil\nlattice: C\nunit: 2\n\
            mult: 0 0 = 0\nmult: 0 1 = 0\nmult: 0 2 = 0\nmult: 1 0 = 0\nmult: 1 1 = 0\n\
            mult: 1 2 = 1\nmult: 2 0 = 0\nmult: 2 1 = 1\nmult: 2 2 = 2\n\
            module Self\nquantale: Nil\naction: mult\n";
        let r = run_checks(&ws(text), "hilbert-unique", Options::default()).unwrap();
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].verdict, Verdict::NotApplicable);
    }

    #[test]
    fn all_suite_orders_by_subject_then_registry() {
        let r = run_checks(&ws(DWN), "all", Options::default()).unwrap();
        assert!(!r.has_failures(), "{:?}", r.records);
        let subjects: Vec<&str> = r.records.iter().map(|x| x.subject.as_str()).collect();
        let first_module = subjects.iter().position(|s| s.starts_with("module")).unwrap();
        assert!(subjects[..first_module].iter().all(|s| !s.starts_with("module")));
        assert_eq!(r.records[0].check, "lattice-laws");
        assert!(r.records.iter().all(|x| x.ms == 0));
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(
            run_checks(&Workspace::default(), "bogus", Options::default()),
            Err(CliError::UnknownSuite(_))
        ));
    }
}
