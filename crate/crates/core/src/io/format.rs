use std::collections::HashSet;
use std::fmt::Write as _;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Elements are lattice elements; `le` pairs generate the order.
    Lattice,
    /// Elements are poset points; the lattice is the lattice of downsets.
    PosetDownsets,
}

impl Mode {
    pub fn keyword(self) -> &'static str {
        match self {
            Mode::Lattice => "lattice",
            Mode::PosetDownsets => "poset-downsets",
        }
    }

    fn parse(s: &str) -> Option<Mode> {
        match s {
            "lattice" => Some(Mode::Lattice),
            "poset-downsets" => Some(Mode::PosetDownsets),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeDocument {
    pub name: String,
    pub mode: Mode,
    pub elements: Vec<String>,
    pub order: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationDocument {
    pub name: String,
    pub lattice: String,
    pub pairs: Vec<(String, String)>,
}

/// `to b x` reads `f⁻(b) = x`, with `b` in the target and `x` in the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDocument {
    pub name: String,
    pub source: String,
    pub target: String,
    /// `None` means every element of the target.
    pub basis: Option<Vec<String>>,
    pub assignment: Vec<(String, String)>,
}

/// `γL` for a lattice, a basis of it (default: all elements) and the named maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompactificationDocument {
    pub name: String,
    pub lattice: String,
    pub basis: Option<Vec<String>>,
    pub maps: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Lattice(LatticeDocument),
    Relation(RelationDocument),
    Map(MapDocument),
    Compactification(CompactificationDocument),
}

impl Document {
    pub fn name(&self) -> &str {
        match self {
            Document::Lattice(d) => &d.name,
            Document::Relation(d) => &d.name,
            Document::Map(d) => &d.name,
            Document::Compactification(d) => &d.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Lattice(_) => "lattice",
            Document::Relation(_) => "relation",
            Document::Map(_) => "map",
            Document::Compactification(_) => "compactification",
        }
    }

    /// The canonical text of the document.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let pairs = |out: &mut String, kw: &str, ps: &[(String, String)]| {
            for (a, b) in ps {
                writeln!(out, "{kw} {a} {b}").unwrap();
            }
        };
        let list = |out: &mut String, kw: &str, xs: &[String]| {
            if xs.is_empty() {
                writeln!(out, "{kw}").unwrap();
            } else {
                writeln!(out, "{kw} {}", xs.join(" ")).unwrap();
            }
        };
        match self {
            Document::Lattice(d) => {
                writeln!(out, "lattice {} {}", d.name, d.mode.keyword()).unwrap();
                list(&mut out, "elements", &d.elements);
                pairs(&mut out, "le", &d.order);
            }
            Document::Relation(d) => {
                writeln!(out, "relation {} {}", d.name, d.lattice).unwrap();
                pairs(&mut out, "pair", &d.pairs);
            }
            Document::Map(d) => {
                writeln!(out, "map {} {} {}", d.name, d.source, d.target).unwrap();
                if let Some(b) = &d.basis {
                    list(&mut out, "basis", b);
                }
                pairs(&mut out, "to", &d.assignment);
            }
            Document::Compactification(d) => {
                writeln!(out, "compactification {} {}", d.name, d.lattice).unwrap();
                if let Some(b) = &d.basis {
                    list(&mut out, "basis", b);
                }
                if !d.maps.is_empty() {
                    list(&mut out, "maps", &d.maps);
                }
            }
        }
        out
    }
}

/// Renders documents separated by blank lines.
pub fn render_all<'a>(docs: impl IntoIterator<Item = &'a Document>) -> String {
    docs.into_iter().map(Document::render).collect::<Vec<_>>().join("\n")
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// A document under construction, with the line of each reference so that
/// undeclared labels can be reported where they occur.
struct Open {
    doc: Document,
    header: usize,
    refs: Vec<(usize, String)>,
    seen_basis: bool,
    seen_maps: bool,
}

impl Open {
    fn finish(self) -> Result<Document> {
        if let Document::Lattice(d) = &self.doc {
            let mut declared = HashSet::new();
            for e in &d.elements {
                if !declared.insert(e.as_str()) {
                    return Err(err(self.header, format!("label {e} declared twice in {}", d.name)));
                }
            }
            if d.elements.is_empty() && d.mode == Mode::Lattice {
                return Err(err(self.header, format!("lattice {} has no elements", d.name)));
            }
            if let Some((line, l)) = self.refs.iter().find(|(_, l)| !declared.contains(l.as_str())) {
                return Err(err(*line, format!("undeclared label {l}")));
            }
        }
        Ok(self.doc)
    }
}

fn two<'a>(line: usize, kw: &str, rest: &[&'a str]) -> Result<(&'a str, &'a str)> {
    match rest {
        [a, b] => Ok((a, b)),
        _ => Err(err(line, format!("`{kw}` takes exactly two labels"))),
    }
}

/// Parses a bundle of documents. Comments run from `#` to the end of the
/// line; blank lines are ignored; a header line starts a new document.
pub fn parse(text: &str) -> Result<Vec<Document>> {
    let mut docs: Vec<Document> = Vec::new();
    let mut open: Option<Open> = None;
    let mut names = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        let Some((&kw, rest)) = words.split_first() else {
            continue;
        };
        let header = match kw {
            "lattice" => {
                let [name, mode] = rest else {
                    return Err(err(line, "expected `lattice <name> <lattice|poset-downsets>`"));
                };
                let mode = Mode::parse(mode).ok_or_else(|| err(line, format!("unknown mode {mode}")))?;
                Some(Document::Lattice(LatticeDocument {
                    name: name.to_string(),
                    mode,
                    elements: vec![],
                    order: vec![],
                }))
            }
            "relation" => {
                let [name, lat] = rest else {
                    return Err(err(line, "expected `relation <name> <lattice>`"));
                };
                Some(Document::Relation(RelationDocument {
                    name: name.to_string(),
                    lattice: lat.to_string(),
                    pairs: vec![],
                }))
            }
            "map" => {
                let [name, src, tgt] = rest else {
                    return Err(err(line, "expected `map <name> <source> <target>`"));
                };
                Some(Document::Map(MapDocument {
                    name: name.to_string(),
                    source: src.to_string(),
                    target: tgt.to_string(),
                    basis: None,
                    assignment: vec![],
                }))
            }
            "compactification" => {
                let [name, lat] = rest else {
                    return Err(err(line, "expected `compactification <name> <lattice>`"));
                };
                Some(Document::Compactification(CompactificationDocument {
                    name: name.to_string(),
                    lattice: lat.to_string(),
                    basis: None,
                    maps: vec![],
                }))
            }
            _ => None,
        };
        if let Some(doc) = header {
            if !names.insert(doc.name().to_string()) {
                return Err(err(line, format!("document {} defined twice", doc.name())));
            }
            if let Some(o) = open.take() {
                docs.push(o.finish()?);
            }
            open = Some(Open {
                doc,
                header: line,
                refs: vec![],
                seen_basis: false,
                seen_maps: false,
            });
            continue;
        }
        let Some(o) = open.as_mut() else {
            return Err(err(line, format!("`{kw}` outside a document")));
        };
        let owned = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        match (&mut o.doc, kw) {
            (Document::Lattice(d), "elements") => d.elements.extend(owned(rest)),
            (Document::Lattice(d), "le") => {
                let (a, b) = two(line, kw, rest)?;
                o.refs.push((line, a.to_string()));
                o.refs.push((line, b.to_string()));
                d.order.push((a.to_string(), b.to_string()));
            }
            (Document::Relation(d), "pair") => {
                let (a, b) = two(line, kw, rest)?;
                d.pairs.push((a.to_string(), b.to_string()));
            }
            (Document::Map(_) | Document::Compactification(_), "basis") if o.seen_basis => {
                return Err(err(line, "`basis` given twice"));
            }
            (Document::Map(d), "basis") => {
                o.seen_basis = true;
                d.basis = Some(owned(rest));
            }
            (Document::Map(d), "to") => {
                let (b, x) = two(line, kw, rest)?;
                d.assignment.push((b.to_string(), x.to_string()));
            }
            (Document::Compactification(d), "basis") => {
                o.seen_basis = true;
                d.basis = Some(owned(rest));
            }
            (Document::Compactification(d), "maps") => {
                if o.seen_maps {
                    return Err(err(line, "`maps` given twice"));
                }
                o.seen_maps = true;
                d.maps = owned(rest);
            }
            (doc, _) => {
                return Err(err(line, format!("unexpected `{kw}` in a {} document", doc.kind())));
            }
        }
    }
    if let Some(o) = open.take() {
        docs.push(o.finish()?);
    }
    Ok(docs)
}
