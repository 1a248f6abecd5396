use std::collections::HashSet;
use std::fs;
use std::path::Path;

use pointfree::io::{Bundle, Document};
use pointfree::{Error, Result};

/// All documents read so far. A reference is `path#name`, `path` (the
/// first document of the wanted kind in that file), or a bare name already
/// loaded from another file.
#[derive(Default)]
pub struct Inputs {
    bundle: Bundle,
    read: HashSet<String>,
}

impl Inputs {
    fn load(&mut self, path: &str) -> Result<Bundle> {
        let text = fs::read_to_string(path).map_err(|e| Error::Malformed(format!("cannot read {path}: {e}")))?;
        let b = Bundle::parse(&text).map_err(|e| match e {
            Error::Parse { line, message } => Error::Parse {
                line,
                message: format!("{path}: {message}"),
            },
            e => e,
        })?;
        if self.read.insert(path.to_string()) {
            self.bundle.merge(b.clone())?;
        }
        Ok(b)
    }

    /// Loads every file named by the references, so that documents may
    /// refer to each other across files.
    pub fn preload<'a>(&mut self, refs: impl IntoIterator<Item = &'a str>) -> Result<()> {
        for r in refs {
            let path = r.split_once('#').map_or(r, |(p, _)| p);
            if r.contains('#') || Path::new(path).is_file() {
                self.load(path)?;
            }
        }
        Ok(())
    }

    /// The document name a reference points to.
    pub fn resolve(&mut self, r: &str, kind: &str) -> Result<String> {
        if let Some((path, name)) = r.split_once('#') {
            self.load(path)?;
            return Ok(name.to_string());
        }
        if Path::new(r).is_file() {
            let b = self.load(r)?;
            return b
                .first_of(kind)
                .map(|d| d.name().to_string())
                .ok_or_else(|| Error::Malformed(format!("{r} has no {kind} document")));
        }
        match self.bundle.get(r) {
            Some(d) if d.kind() == kind => Ok(r.to_string()),
            Some(d) => Err(Error::Malformed(format!("{r} is a {} document, expected a {kind}", d.kind()))),
            None => Err(Error::Malformed(format!("{r}: no such file or document"))),
        }
    }

    /// Name and document for a reference of any kind.
    pub fn resolve_any(&mut self, r: &str) -> Result<Document> {
        let name = if let Some((path, name)) = r.split_once('#') {
            self.load(path)?;
            name.to_string()
        } else if Path::new(r).is_file() {
            let b = self.load(r)?;
            b.documents()
                .first()
                .map(|d| d.name().to_string())
                .ok_or_else(|| Error::Malformed(format!("{r} is empty")))?
        } else {
            r.to_string()
        };
        self.bundle
            .get(&name)
            .cloned()
            .ok_or_else(|| Error::Malformed(format!("no document named {name}")))
    }

    pub fn bundle(&self) -> &Bundle {
        &self.bundle
    }
}
