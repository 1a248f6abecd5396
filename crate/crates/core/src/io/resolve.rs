use std::collections::HashMap;
use std::sync::Arc;

use crate::compactify::{gamma_compactification, GammaCompactification};
use crate::framemap::ContinuousMap;
use crate::lattice::{Basis, DownsetLattice, PcdLattice, Poset};
use crate::relation::Relation;
use crate::{Elem, Error, Result};

use super::format::{
    parse, render_all, CompactificationDocument, Document, LatticeDocument, MapDocument, Mode, RelationDocument,
};

/// A set of documents that refer to each other by name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bundle {
    docs: Vec<Document>,
}

fn unresolved(kind: &str, name: &str) -> Error {
    Error::malformed(format!("no {kind} document named {name}"))
}

fn label(l: &PcdLattice, doc: &str, s: &str) -> Result<Elem> {
    l.index_of(s)
        .ok_or_else(|| Error::malformed(format!("{doc}: label {s} is not an element")))
}

impl Bundle {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(Bundle { docs: parse(text)? })
    }

    pub fn from_documents(docs: impl IntoIterator<Item = Document>) -> Result<Self> {
        let mut b = Bundle::default();
        for d in docs {
            b.push(d)?;
        }
        Ok(b)
    }

    pub fn render(&self) -> String {
        render_all(&self.docs)
    }

    pub fn documents(&self) -> &[Document] {
        &self.docs
    }

    /// Adds a document; a second document under the same name is accepted
    /// only if it is identical.
    pub fn push(&mut self, doc: Document) -> Result<()> {
        match self.get(doc.name()) {
            Some(d) if *d == doc => Ok(()),
            Some(_) => Err(Error::malformed(format!("two different documents named {}", doc.name()))),
            None => {
                self.docs.push(doc);
                Ok(())
            }
        }
    }

    pub fn merge(&mut self, other: Bundle) -> Result<()> {
        other.docs.into_iter().try_for_each(|d| self.push(d))
    }

    pub fn get(&self, name: &str) -> Option<&Document> {
        self.docs.iter().find(|d| d.name() == name)
    }

    /// The first document of the given kind.
    pub fn first_of(&self, kind: &str) -> Option<&Document> {
        self.docs.iter().find(|d| d.kind() == kind)
    }

    fn lattice_doc(&self, name: &str) -> Result<&LatticeDocument> {
        match self.get(name) {
            Some(Document::Lattice(d)) => Ok(d),
            _ => Err(unresolved("lattice", name)),
        }
    }

    pub fn lattice(&self, name: &str) -> Result<Arc<PcdLattice>> {
        Ok(Arc::new(build_lattice(self.lattice_doc(name)?)?))
    }

    /// The downset lattice of a `poset-downsets` document.
    pub fn downsets(&self, name: &str) -> Result<DownsetLattice> {
        let d = self.lattice_doc(name)?;
        if d.mode != Mode::PosetDownsets {
            return Err(Error::malformed(format!("{name} is not a poset-downsets document")));
        }
        build_poset(d)?.downset_lattice()
    }

    pub fn relation(&self, name: &str) -> Result<(Arc<PcdLattice>, Relation)> {
        let Some(Document::Relation(d)) = self.get(name) else {
            return Err(unresolved("relation", name));
        };
        let l = self.lattice(&d.lattice)?;
        let mut r = Relation::new(l.len());
        for (a, b) in &d.pairs {
            r.insert(label(&l, name, a)?, label(&l, name, b)?);
        }
        Ok((l, r))
    }

    pub fn map(&self, name: &str) -> Result<ContinuousMap> {
        let mut cache = HashMap::new();
        self.map_cached(name, &mut cache)
    }

    fn map_cached(&self, name: &str, cache: &mut HashMap<String, Arc<PcdLattice>>) -> Result<ContinuousMap> {
        let Some(Document::Map(d)) = self.get(name) else {
            return Err(unresolved("map", name));
        };
        let mut get = |n: &str| -> Result<Arc<PcdLattice>> {
            if let Some(l) = cache.get(n) {
                return Ok(l.clone());
            }
            let l = self.lattice(n)?;
            cache.insert(n.to_string(), l.clone());
            Ok(l)
        };
        let source = get(&d.source)?;
        let target = get(&d.target)?;
        let basis = match &d.basis {
            None => target.full_basis(),
            Some(labels) => basis_of(&target, name, labels)?,
        };
        let assignment = d
            .assignment
            .iter()
            .map(|(b, x)| Ok((label(&target, name, b)?, label(&source, name, x)?)))
            .collect::<Result<Vec<_>>>()?;
        ContinuousMap::new(source, target, basis, assignment)
    }

    /// The lattice, basis and maps of a compactification document.
    pub fn compactification_parts(&self, name: &str) -> Result<(Arc<PcdLattice>, Basis, Vec<ContinuousMap>)> {
        let Some(Document::Compactification(d)) = self.get(name) else {
            return Err(unresolved("compactification", name));
        };
        let l = self.lattice(&d.lattice)?;
        let mut cache = HashMap::from([(d.lattice.clone(), l.clone())]);
        let basis = match &d.basis {
            None => l.full_basis(),
            Some(labels) => basis_of(&l, name, labels)?,
        };
        let maps = d
            .maps
            .iter()
            .map(|m| self.map_cached(m, &mut cache))
            .collect::<Result<Vec<_>>>()?;
        Ok((l, basis, maps))
    }

    pub fn compactification(&self, name: &str) -> Result<GammaCompactification> {
        let (l, b, maps) = self.compactification_parts(name)?;
        gamma_compactification(l, &b, &maps)
    }
}

pub(crate) fn basis_of(l: &PcdLattice, doc: &str, labels: &[String]) -> Result<Basis> {
    let elems = labels.iter().map(|s| label(l, doc, s)).collect::<Result<Vec<_>>>()?;
    Ok(Basis::from_elems(l.len(), elems))
}

fn indices(d: &LatticeDocument) -> Result<Vec<(usize, usize)>> {
    let pos: HashMap<&str, usize> = d.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
    d.order
        .iter()
        .map(|(a, b)| match (pos.get(a.as_str()), pos.get(b.as_str())) {
            (Some(&i), Some(&j)) => Ok((i, j)),
            _ => Err(Error::malformed(format!("{}: undeclared label in le {a} {b}", d.name))),
        })
        .collect()
}

fn build_poset(d: &LatticeDocument) -> Result<Poset> {
    Poset::new(d.elements.clone(), indices(d)?)
}

/// The lattice a document describes: the closure of its pairs in lattice
/// mode, the downsets of its poset otherwise.
pub fn build_lattice(d: &LatticeDocument) -> Result<PcdLattice> {
    match d.mode {
        Mode::Lattice => PcdLattice::from_order(d.elements.clone(), indices(d)?),
        Mode::PosetDownsets => Ok(build_poset(d)?.downset_lattice()?.lattice),
    }
}

/// Parses the first lattice document of `text` and builds its lattice.
pub fn parse_lattice(text: &str) -> Result<PcdLattice> {
    let docs = parse(text)?;
    match docs.iter().find_map(|d| match d {
        Document::Lattice(l) => Some(l),
        _ => None,
    }) {
        Some(d) => build_lattice(d),
        None => Err(Error::malformed("no lattice document")),
    }
}

/// The canonical lattice-mode document: covering pairs in element order.
pub fn lattice_document(name: &str, l: &PcdLattice) -> LatticeDocument {
    let order = l
        .covers()
        .into_iter()
        .map(|(a, b)| (l.name(a).to_string(), l.name(b).to_string()))
        .collect();
    LatticeDocument {
        name: name.to_string(),
        mode: Mode::Lattice,
        elements: l.names().to_vec(),
        order,
    }
}

/// A `poset-downsets` document listing the covering pairs of the poset.
pub fn poset_document(name: &str, p: &Poset) -> LatticeDocument {
    let strict = p.strict_pairs();
    let order = strict
        .iter()
        .filter(|&&(i, j)| !strict.iter().any(|&(a, b)| a == i && b != j && p.leq(b, j)))
        .map(|&(i, j)| (p.names()[i].clone(), p.names()[j].clone()))
        .collect();
    LatticeDocument {
        name: name.to_string(),
        mode: Mode::PosetDownsets,
        elements: p.names().to_vec(),
        order,
    }
}

pub fn relation_document(name: &str, lattice: &str, l: &PcdLattice, r: &Relation) -> RelationDocument {
    RelationDocument {
        name: name.to_string(),
        lattice: lattice.to_string(),
        pairs: r
            .pairs()
            .map(|(x, y)| (l.name(x).to_string(), l.name(y).to_string()))
            .collect(),
    }
}

/// The basis line is omitted when the basis is the whole target.
pub fn map_document(name: &str, source: &str, target: &str, f: &ContinuousMap) -> MapDocument {
    let (l, m) = (f.source(), f.target());
    let basis = (f.basis().len() != m.len()).then(|| f.basis().iter().map(|b| m.name(b).to_string()).collect());
    MapDocument {
        name: name.to_string(),
        source: source.to_string(),
        target: target.to_string(),
        basis,
        assignment: f
            .assignment()
            .map(|(b, x)| (m.name(b).to_string(), l.name(x).to_string()))
            .collect(),
    }
}

pub fn compactification_document(
    name: &str,
    lattice: &str,
    basis: Option<Vec<String>>,
    maps: Vec<String>,
) -> CompactificationDocument {
    CompactificationDocument {
        name: name.to_string(),
        lattice: lattice.to_string(),
        basis,
        maps,
    }
}
