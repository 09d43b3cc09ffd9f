//! Document loading: files are JSON, recognised by their top-level keys;
//! `corpus:<name>` refers to a built-in construction.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::Value;
use stratify::complex::{ComplexDoc, SimplicialComplex};
use stratify::corpus;
use stratify::poset::{Poset, PosetDoc};
use stratify::sheaf::{Sheaf, SheafBase, SheafDoc};
use stratify::strat::{face_stratification, StratDoc, StratifiedComplex};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: parse error at line {line}, column {column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("{path}: cannot tell the document kind from keys {keys:?}")]
    UnknownKind { path: String, keys: Vec<String> },
    #[error("unknown corpus entry `{0}`")]
    UnknownCorpus(String),
    #[error("document name `{0}` is already registered")]
    DuplicateName(String),
    #[error("{name}: expected {expected}, found {found}")]
    WrongKind { name: String, expected: &'static str, found: &'static str },
    #[error("{name}: validation failed: {message}")]
    Invalid { name: String, message: String },
}

impl LoadError {
    /// Validation failures are reported with exit code 1; the rest are usage errors.
    pub fn is_validation(&self) -> bool {
        matches!(self, LoadError::Invalid { .. } | LoadError::WrongKind { .. })
    }
}

#[derive(Clone, Debug)]
pub enum Document {
    Poset(Poset),
    Complex(SimplicialComplex),
    Stratified(StratifiedComplex),
    /// A sheaf and the stratified complex it lives on.
    Sheaf(Box<Sheaf>, StratifiedComplex),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Poset(_) => "poset",
            Document::Complex(_) => "complex",
            Document::Stratified(_) => "stratified",
            Document::Sheaf(..) => "sheaf",
        }
    }

    /// A stratified complex; plain complexes get the face stratification.
    pub fn stratified(&self, name: &str) -> Result<StratifiedComplex, LoadError> {
        match self {
            Document::Stratified(x) => Ok(x.clone()),
            Document::Complex(k) => Ok(face_stratification(k)),
            other => Err(LoadError::WrongKind { name: name.into(), expected: "complex or stratified complex", found: other.kind() }),
        }
    }

    pub fn complex(&self, name: &str) -> Result<SimplicialComplex, LoadError> {
        match self {
            Document::Complex(k) => Ok(k.clone()),
            Document::Stratified(x) => Ok(x.complex().clone()),
            other => Err(LoadError::WrongKind { name: name.into(), expected: "complex or stratified complex", found: other.kind() }),
        }
    }

    pub fn poset(&self, name: &str) -> Result<Poset, LoadError> {
        match self {
            Document::Poset(p) => Ok(p.clone()),
            other => Err(LoadError::WrongKind { name: name.into(), expected: "poset", found: other.kind() }),
        }
    }
}

/// Named documents; names are unique.
#[derive(Default)]
pub struct Workspace {
    docs: BTreeMap<String, Document>,
}

fn corpus_entry(name: &str) -> Option<Document> {
    if let Some(p) = corpus::poset(name) {
        return Some(Document::Poset(p));
    }
    if let Some(k) = corpus::complex(name) {
        return Some(Document::Complex(k));
    }
    if let Some(x) = corpus::stratified(name) {
        return Some(Document::Stratified(x));
    }
    let (base, f) = corpus::sheaf(name)?;
    Some(Document::Sheaf(Box::new(f), corpus::stratified(&base)?))
}

fn parse_as<T: DeserializeOwned>(path: &str, text: &str) -> Result<T, LoadError> {
    serde_json::from_str(text).map_err(|e| LoadError::Parse { path: path.into(), line: e.line(), column: e.column(), message: strip_position(&e.to_string()) })
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

fn invalid(name: &str, e: impl std::fmt::Display) -> LoadError {
    LoadError::Invalid { name: name.into(), message: e.to_string() }
}

impl Workspace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<&Document> {
        self.docs.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.docs.keys().map(String::as_str)
    }

    /// Resolves `corpus:<name>`, a registered name, or a file path (loading it).
    pub fn resolve(&mut self, reference: &str) -> Result<Document, LoadError> {
        if let Some(name) = reference.strip_prefix("corpus:") {
            return corpus_entry(name).ok_or_else(|| LoadError::UnknownCorpus(name.into()));
        }
        if let Some(doc) = self.docs.get(reference) {
            return Ok(doc.clone());
        }
        let name = self.load(Path::new(reference))?;
        Ok(self.docs[&name].clone())
    }

    /// Reads, parses and validates a file, registering it under its file stem.
    pub fn load(&mut self, path: &Path) -> Result<String, LoadError> {
        let shown = path.display().to_string();
        let text = fs::read_to_string(path).map_err(|source| LoadError::Io { path: shown.clone(), source })?;
        let name = path.file_stem().map_or_else(|| shown.clone(), |s| s.to_string_lossy().into_owned());
        if self.docs.contains_key(&name) {
            return Err(LoadError::DuplicateName(name));
        }
        let doc = self.parse(&shown, &text)?;
        self.docs.insert(name.clone(), doc);
        Ok(name)
    }

    /// Parses a document held in memory.
    pub fn parse(&mut self, path: &str, text: &str) -> Result<Document, LoadError> {
        let value: Value = parse_as(path, text)?;
        let keys: Vec<String> = value.as_object().map(|o| o.keys().cloned().collect()).unwrap_or_default();
        let has = |k: &str| keys.iter().any(|x| x == k);
        if has("elements") || has("leq") {
            let d: PosetDoc = parse_as(path, text)?;
            Poset::from_doc(&d).map(Document::Poset).map_err(|e| invalid(path, e))
        } else if has("complex") || has("assignment") {
            let d: StratDoc = parse_as(path, text)?;
            StratifiedComplex::from_doc(&d).map(Document::Stratified).map_err(|e| invalid(path, e))
        } else if has("vertices") || has("simplices") {
            let d: ComplexDoc = parse_as(path, text)?;
            SimplicialComplex::from_doc(&d).map(Document::Complex).map_err(|e| invalid(path, e))
        } else if has("base") || has("dims") {
            let d: SheafDoc = parse_as(path, text)?;
            let x = match &d.base {
                SheafBase::Ref(r) => self.resolve(r)?.stratified(r)?,
                SheafBase::Stratified(s) => StratifiedComplex::from_doc(s).map_err(|e| invalid(path, e))?,
                SheafBase::Complex(c) => face_stratification(&SimplicialComplex::from_doc(c).map_err(|e| invalid(path, e))?),
            };
            let f = Sheaf::from_doc(&d, &x).map_err(|e| invalid(path, e))?;
            Ok(Document::Sheaf(Box::new(f), x))
        } else {
            Err(LoadError::UnknownKind { path: path.into(), keys })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_are_detected() {
        let mut ws = Workspace::new();
        let p = ws.parse("p", r#"{"elements":["a","b"],"leq":[["a","b"]]}"#).unwrap();
        assert_eq!(p.kind(), "poset");
        let k = ws.parse("k", r#"{"vertices":["a","b"],"simplices":[["a","b"]]}"#).unwrap();
        assert_eq!(k.complex("k").unwrap().len(), 3);
        let f = ws
            .parse("f", r#"{"base":"corpus:delta1-standard","dims":{"{0}":1,"{1}":1,"{0,1}":1},"maps":[["{0}","{0,1}",[["2"]]],["{1}","{0,1}",[["1"]]]]}"#)
            .unwrap();
        assert_eq!(f.kind(), "sheaf");
    }

    #[test]
    fn errors_are_classified() {
        let mut ws = Workspace::new();
        let broken = ws.parse("p", r#"{"elements":["a","b","c"],"leq":[["a","b"],["b","c"]]}"#).unwrap_err();
        assert!(broken.is_validation(), "{broken}");
        assert!(broken.to_string().contains('a') && broken.to_string().contains('c'));
        let unknown = ws.parse("p", r#"{"elements":["a"],"leq":[],"extra":1}"#).unwrap_err();
        assert!(matches!(unknown, LoadError::Parse { line: 1, .. }), "{unknown}");
        let garbage = ws.parse("p", "{\n  \"elements\": [1,").unwrap_err();
        assert!(matches!(garbage, LoadError::Parse { line: 2, .. }), "{garbage}");
        assert!(matches!(ws.resolve("corpus:nothing"), Err(LoadError::UnknownCorpus(_))));
        assert!(matches!(ws.parse("q", r#"{"colour":"red"}"#), Err(LoadError::UnknownKind { .. })));
    }
}
