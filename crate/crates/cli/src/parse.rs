//! Line-oriented definition files.
//!
//! ```text
//! lattice L2
//! elements: 0 1
//! leq: 0<1
//!
//! quantale Two
//! lattice: L2
//! mult: meet
//! involution: identity
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use qhilbert::lattice::CompleteLattice;
use qhilbert::matrix::QMatrix;
use qhilbert::qmodule::QModule;
use qhilbert::quantale::{InvolutiveQuantale, Quantale};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },
    #[error("{file}:{line}: invalid {kind} `{name}`: {message}")]
    Validation {
        file: String,
        line: usize,
        kind: &'static str,
        name: String,
        message: String,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Lattice,
    Quantale,
    Module,
    Matrix,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Lattice => "lattice",
            Kind::Quantale => "quantale",
            Kind::Module => "module",
            Kind::Matrix => "matrix",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Lattice {
        name: String,
        lattice: Arc<CompleteLattice>,
    },
    Quantale {
        name: String,
        lattice: String,
        quantale: Arc<InvolutiveQuantale>,
    },
    Module {
        name: String,
        quantale: String,
        lattice: String,
        module: Arc<QModule>,
    },
    Matrix {
        name: String,
        quantale: String,
        matrix: QMatrix,
    },
}

impl Item {
    pub fn name(&self) -> &str {
        match self {
            Item::Lattice { name, .. }
            | Item::Quantale { name, .. }
            | Item::Module { name, .. }
            | Item::Matrix { name, .. } => name,
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Item::Lattice { .. } => Kind::Lattice,
            Item::Quantale { .. } => Kind::Quantale,
            Item::Module { .. } => Kind::Module,
            Item::Matrix { .. } => Kind::Matrix,
        }
    }
}

/// Validated definitions in file order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Workspace {
    pub items: Vec<Item>,
}

impl Workspace {
    fn find(&self, kind: Kind, name: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.kind() == kind && i.name() == name)
    }

    pub fn lattice(&self, name: &str) -> Option<&Arc<CompleteLattice>> {
        match self.find(Kind::Lattice, name)? {
            Item::Lattice { lattice, .. } => Some(lattice),
            _ => None,
        }
    }

    pub fn quantale(&self, name: &str) -> Option<&Arc<InvolutiveQuantale>> {
        match self.find(Kind::Quantale, name)? {
            Item::Quantale { quantale, .. } => Some(quantale),
            _ => None,
        }
    }

    pub fn module(&self, name: &str) -> Option<&Arc<QModule>> {
        match self.find(Kind::Module, name)? {
            Item::Module { module, .. } => Some(module),
            _ => None,
        }
    }

    pub fn count(&self, kind: Kind) -> usize {
        self.items.iter().filter(|i| i.kind() == kind).count()
    }
}

/// Reads and parses files in order; later files may refer to earlier ones.
pub fn parse_workspace<P: AsRef<Path>>(paths: &[P]) -> Result<Workspace, CliError> {
    let mut ws = Workspace::default();
    for p in paths {
        let path = p.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        parse_into(&mut ws, &path.display().to_string(), &text)?;
    }
    Ok(ws)
}

/// Parses one file's text into `ws`.
pub fn parse_str(ws: &mut Workspace, file: &str, text: &str) -> Result<(), CliError> {
    parse_into(ws, file, text)
}

struct Block<'a> {
    kind: Kind,
    name: String,
    line: usize,
    fields: Vec<(usize, &'a str, &'a str)>,
}

fn parse_into(ws: &mut Workspace, file: &str, text: &str) -> Result<(), CliError> {
    let perr = |line: usize, message: String| CliError::Parse {
        file: file.to_string(),
        line,
        message,
    };
    let mut blocks: Vec<Block> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some((key, value)) = content.split_once(':') {
            let block = blocks
                .last_mut()
                .ok_or_else(|| perr(line, "field outside of a definition".into()))?;
            block.fields.push((line, key.trim(), value.trim()));
            continue;
        }
        let mut words = content.split_whitespace();
        let head = words.next().unwrap_or_default();
        let kind = match head {
            "lattice" => Kind::Lattice,
            "quantale" => Kind::Quantale,
            "module" => Kind::Module,
            "matrix" => Kind::Matrix,
            other => return Err(perr(line, format!("unknown definition `{other}`"))),
        };
        let name = words
            .next()
            .ok_or_else(|| perr(line, format!("{head} needs a name")))?;
        if words.next().is_some() {
            return Err(perr(line, "trailing words after the name".into()));
        }
        blocks.push(Block {
            kind,
            name: name.to_string(),
            line,
            fields: Vec::new(),
        });
    }
    for block in blocks {
        if ws.find(block.kind, &block.name).is_some() {
            return Err(perr(
                block.line,
                format!("duplicate {} `{}`", block.kind.as_str(), block.name),
            ));
        }
        let item = build(ws, file, &block)?;
        ws.items.push(item);
    }
    Ok(())
}

fn build(ws: &Workspace, file: &str, b: &Block) -> Result<Item, CliError> {
    let perr = |line: usize, message: String| CliError::Parse {
        file: file.to_string(),
        line,
        message,
    };
    let invalid = |message: String| CliError::Validation {
        file: file.to_string(),
        line: b.line,
        kind: b.kind.as_str(),
        name: b.name.clone(),
        message,
    };
    let allowed: &[&str] = match b.kind {
        Kind::Lattice => &["elements", "leq"],
        Kind::Quantale => &["lattice", "unit", "mult", "involution"],
        Kind::Module => &["quantale", "lattice", "action"],
        Kind::Matrix => &["quantale", "index", "entry"],
    };
    for &(line, key, _) in &b.fields {
        if !allowed.contains(&key) {
            return Err(perr(line, format!("unknown field `{key}` in {}", b.kind.as_str())));
        }
    }
    let values = |key: &'static str| {
        b.fields
            .iter()
            .filter(move |f| f.1 == key)
            .map(|&(line, _, v)| (line, v))
    };
    let single = |key: &'static str| -> Result<(usize, &str), CliError> {
        let mut it = values(key);
        let first = it
            .next()
            .ok_or_else(|| perr(b.line, format!("missing `{key}:`")))?;
        if let Some((line, _)) = it.next() {
            return Err(perr(line, format!("repeated `{key}:`")));
        }
        Ok(first)
    };

    match b.kind {
        Kind::Lattice => {
            let mut elements: Vec<&str> = Vec::new();
            for (_, v) in values("elements") {
                elements.extend(v.split_whitespace());
            }
            let mut pairs: Vec<(&str, &str)> = Vec::new();
            for (line, v) in values("leq") {
                for chain in v.split_whitespace() {
                    let parts: Vec<&str> = chain.split('<').collect();
                    if parts.len() < 2 || parts.iter().any(|p| p.is_empty()) {
                        return Err(perr(line, format!("expected `a<b`, found `{chain}`")));
                    }
                    for w in parts.windows(2) {
                        if !elements.contains(&w[0]) || !elements.contains(&w[1]) {
                            let bad = if elements.contains(&w[0]) { w[1] } else { w[0] };
                            return Err(perr(line, format!("unknown element `{bad}`")));
                        }
                        pairs.push((w[0], w[1]));
                    }
                }
            }
            let lattice =
                CompleteLattice::from_order(&elements, &pairs).map_err(|e| invalid(e.to_string()))?;
            Ok(Item::Lattice {
                name: b.name.clone(),
                lattice: Arc::new(lattice),
            })
        }
        Kind::Quantale => {
            let (line, lname) = single("lattice")?;
            let l = ws
                .lattice(lname)
                .ok_or_else(|| perr(line, format!("unknown lattice `{lname}`")))?
                .clone();
            let idx = |line: usize, s: &str| {
                l.index_of(s)
                    .map_err(|_| perr(line, format!("unknown element `{s}`")))
            };
            let n = l.len();
            let mults: Vec<(usize, &str)> = values("mult").collect();
            let mut table: Vec<Option<usize>> = vec![None; n * n];
            let meet = mults.len() == 1 && mults[0].1 == "meet";
            if meet {
                for f in 0..n {
                    for g in 0..n {
                        table[f * n + g] = Some(l.meet(f, g));
                    }
                }
            } else {
                for &(line, v) in &mults {
                    let (a, b2, c) = triple(v).ok_or_else(|| {
                        perr(line, format!("expected `a b = c` or `meet`, found `{v}`"))
                    })?;
                    let cell = idx(line, a)? * n + idx(line, b2)?;
                    let value = idx(line, c)?;
                    if table[cell].is_some_and(|old| old != value) {
                        return Err(perr(line, format!("conflicting product for `{a} {b2}`")));
                    }
                    table[cell] = Some(value);
                }
            }
            let mult = complete(&table, |cell| {
                perr(
                    b.line,
                    format!("missing product `{} {}`", l.label(cell / n), l.label(cell % n)),
                )
            })?;
            let unit = match values("unit").next() {
                Some((line, u)) => {
                    single("unit")?;
                    idx(line, u)?
                }
                None if meet => l.top(),
                None => return Err(perr(b.line, "missing `unit:`".into())),
            };
            let mut inv: Vec<usize> = (0..n).collect();
            let mut set = vec![false; n];
            if let Some((line, v)) = values("involution").next() {
                single("involution")?;
                if v != "identity" {
                    for pair in v.split_whitespace() {
                        let (a, c) = pair
                            .split_once('=')
                            .ok_or_else(|| perr(line, format!("expected `a=b`, found `{pair}`")))?;
                        let (a, c) = (idx(line, a)?, idx(line, c)?);
                        for (x, y) in [(a, c), (c, a)] {
                            if set[x] && inv[x] != y {
                                return Err(perr(
                                    line,
                                    format!("conflicting involution at `{}`", l.label(x)),
                                ));
                            }
                            inv[x] = y;
                            set[x] = true;
                        }
                    }
                }
            }
            let base = Quantale::new(l, mult, unit).map_err(|e| invalid(e.to_string()))?;
            let q = InvolutiveQuantale::new(base, inv).map_err(|e| invalid(e.to_string()))?;
            Ok(Item::Quantale {
                name: b.name.clone(),
                lattice: lname.to_string(),
                quantale: Arc::new(q),
            })
        }
        Kind::Module => {
            let (line, qname) = single("quantale")?;
            let q = ws
                .quantale(qname)
                .ok_or_else(|| perr(line, format!("unknown quantale `{qname}`")))?
                .clone();
            let actions: Vec<(usize, &str)> = values("action").collect();
            let by_mult = actions.len() == 1 && actions[0].1 == "mult";
            let lname = match values("lattice").next() {
                Some(_) => single("lattice")?.1.to_string(),
                None if by_mult => match ws.find(Kind::Quantale, qname) {
                    Some(Item::Quantale { lattice, .. }) => lattice.clone(),
                    _ => unreachable!("quantale was found above"),
                },
                None => return Err(perr(b.line, "missing `lattice:`".into())),
            };
            let lline = values("lattice").next().map_or(b.line, |(l, _)| l);
            let l = ws
                .lattice(&lname)
                .ok_or_else(|| perr(lline, format!("unknown lattice `{lname}`")))?
                .clone();
            let (k, nq) = (l.len(), q.len());
            let mut table: Vec<Option<usize>> = vec![None; k * nq];
            if by_mult {
                if **q.lattice() != *l {
                    return Err(invalid("`action: mult` needs the quantale's own lattice".into()));
                }
                for (cell, &v) in q.base().mult_table().iter().enumerate() {
                    table[cell] = Some(v);
                }
            } else {
                for &(line, v) in &actions {
                    let (m, f, r) = triple(v).ok_or_else(|| {
                        perr(line, format!("expected `m f = n` or `mult`, found `{v}`"))
                    })?;
                    let m = l
                        .index_of(m)
                        .map_err(|_| perr(line, format!("unknown module element `{m}`")))?;
                    let f = q
                        .lattice()
                        .index_of(f)
                        .map_err(|_| perr(line, format!("unknown quantale element `{f}`")))?;
                    let r = l
                        .index_of(r)
                        .map_err(|_| perr(line, format!("unknown module element `{r}`")))?;
                    if table[m * nq + f].is_some_and(|old| old != r) {
                        return Err(perr(line, "conflicting action".into()));
                    }
                    table[m * nq + f] = Some(r);
                }
            }
            let action = complete(&table, |cell| {
                perr(
                    b.line,
                    format!("missing action `{} {}`", l.label(cell / nq), q.label(cell % nq)),
                )
            })?;
            let module = QModule::new(q, l, action).map_err(|e| invalid(e.to_string()))?;
            Ok(Item::Module {
                name: b.name.clone(),
                quantale: qname.to_string(),
                lattice: lname,
                module: Arc::new(module),
            })
        }
        Kind::Matrix => {
            let (line, qname) = single("quantale")?;
            let q = ws
                .quantale(qname)
                .ok_or_else(|| perr(line, format!("unknown quantale `{qname}`")))?
                .clone();
            let (_, index) = single("index")?;
            let index: Vec<String> = index.split_whitespace().map(str::to_string).collect();
            let pos: HashMap<&str, usize> =
                index.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
            let n = index.len();
            let mut table: Vec<Option<usize>> = vec![None; n * n];
            for (line, v) in values("entry") {
                let (s, t, e) = triple(v)
                    .ok_or_else(|| perr(line, format!("expected `s t = q`, found `{v}`")))?;
                let at = |x: &str| {
                    pos.get(x)
                        .copied()
                        .ok_or_else(|| perr(line, format!("unknown index `{x}`")))
                };
                let cell = at(s)? * n + at(t)?;
                let value = q
                    .lattice()
                    .index_of(e)
                    .map_err(|_| perr(line, format!("unknown quantale element `{e}`")))?;
                if table[cell].is_some_and(|old| old != value) {
                    return Err(perr(line, format!("conflicting entry `{s} {t}`")));
                }
                table[cell] = Some(value);
            }
            let entries = complete(&table, |cell| {
                perr(
                    b.line,
                    format!("missing entry `{} {}`", index[cell / n], index[cell % n]),
                )
            })?;
            let matrix = QMatrix::new(q, index.clone(), index, entries)
                .map_err(|e| invalid(e.to_string()))?;
            Ok(Item::Matrix {
                name: b.name.clone(),
                quantale: qname.to_string(),
                matrix,
            })
        }
    }
}

/// Splits `a b = c`.
fn triple(v: &str) -> Option<(&str, &str, &str)> {
    let (lhs, rhs) = v.split_once('=')?;
    let mut l = lhs.split_whitespace();
    let (a, b) = (l.next()?, l.next()?);
    let mut r = rhs.split_whitespace();
    let c = r.next()?;
    if l.next().is_some() || r.next().is_some() {
        return None;
    }
    Some((a, b, c))
}

fn complete(
    table: &[Option<usize>],
    missing: impl Fn(usize) -> CliError,
) -> Result<Vec<usize>, CliError> {
    table
        .iter()
        .enumerate()
        .map(|(cell, v)| v.ok_or_else(|| missing(cell)))
        .collect()
}

/// Writes the workspace back in definition format with every table explicit.
pub fn serialize(ws: &Workspace) -> String {
    let mut out = String::new();
    for item in &ws.items {
        if !out.is_empty() {
            out.push('\n');
        }
        match item {
            Item::Lattice { name, lattice } => {
                let _ = writeln!(out, "lattice {name}");
                let _ = writeln!(out, "elements: {}", lattice.labels().join(" "));
                let covers: Vec<String> = covers(lattice)
                    .into_iter()
                    .map(|(a, b)| format!("{}<{}", lattice.label(a), lattice.label(b)))
                    .collect();
                if !covers.is_empty() {
                    let _ = writeln!(out, "leq: {}", covers.join(" "));
                }
            }
            Item::Quantale {
                name,
                lattice,
                quantale: q,
            } => {
                let _ = writeln!(out, "quantale {name}");
                let _ = writeln!(out, "lattice: {lattice}");
                let _ = writeln!(out, "unit: {}", q.label(q.unit()));
                for f in q.elements() {
                    for g in q.elements() {
                        let h = q.mul(f, g);
                        let _ = writeln!(out, "mult: {} {} = {}", q.label(f), q.label(g), q.label(h));
                    }
                }
                if q.is_identity_involution() {
                    let _ = writeln!(out, "involution: identity");
                } else {
                    let pairs: Vec<String> = q
                        .elements()
                        .filter(|&f| q.inv(f) > f)
                        .map(|f| format!("{}={}", q.label(f), q.label(q.inv(f))))
                        .collect();
                    let _ = writeln!(out, "involution: {}", pairs.join(" "));
                }
            }
            Item::Module {
                name,
                quantale,
                lattice,
                module: m,
            } => {
                let q = m.quantale();
                let _ = writeln!(out, "module {name}");
                let _ = writeln!(out, "quantale: {quantale}");
                let _ = writeln!(out, "lattice: {lattice}");
                for x in m.elements() {
                    for f in q.elements() {
                        let _ = writeln!(
                            out,
                            "action: {} {} = {}",
                            m.label(x),
                            q.label(f),
                            m.label(m.act(x, f))
                        );
                    }
                }
            }
            Item::Matrix {
                name,
                quantale,
                matrix,
            } => {
                let q = matrix.quantale();
                let _ = writeln!(out, "matrix {name}");
                let _ = writeln!(out, "quantale: {quantale}");
                let _ = writeln!(out, "index: {}", matrix.rows().join(" "));
                for (t, tl) in matrix.rows().iter().enumerate() {
                    for (s, sl) in matrix.cols().iter().enumerate() {
                        let _ = writeln!(out, "entry: {tl} {sl} = {}", q.label(matrix.get(t, s)));
                    }
                }
            }
        }
    }
    out
}

/// Covering pairs `a ⋖ b`.
fn covers(l: &CompleteLattice) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in l.elements() {
        for b in l.elements() {
            if a != b
                && l.leq(a, b)
                && !l.elements().any(|c| c != a && c != b && l.leq(a, c) && l.leq(c, b))
            {
                out.push((a, b));
            }
        }
    }
    out
}
