//! Quiver documents: JSON with a vertex list, arrows or an adjacency matrix,
//! and optional named dimension vectors and framings.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use kacstab_core::{DimVector, Quiver};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed quiver document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("quiver document needs at least one vertex")]
    NoVertices,
    #[error("vertex label {0:?} appears twice")]
    DuplicateLabel(String),
    #[error("arrow refers to unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("give exactly one of \"arrows\" and \"adjacency\"")]
    ArrowsOrAdjacency,
    #[error("adjacency matrix must be {0}×{0}")]
    AdjacencyShape(usize),
    #[error("vector {name:?} has {found} entries, expected {expected}")]
    VectorLength { name: String, expected: usize, found: usize },
    #[error("cannot parse {0:?} as a comma-separated vector or a named vector")]
    BadVector(String),
    #[error(transparent)]
    Core(#[from] kacstab_core::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDocument {
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrows: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjacency: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub dimension_vectors: BTreeMap<String, Vec<u32>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub framings: BTreeMap<String, Vec<u32>>,
}

impl QuiverDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc: QuiverDocument = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn load(path: &Path) -> Result<Self, DocumentError> {
        let text = std::fs::read_to_string(path).map_err(|source| DocumentError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn validate(&self) -> Result<(), DocumentError> {
        let n = self.vertices.len();
        if n == 0 {
            return Err(DocumentError::NoVertices);
        }
        let mut seen = HashMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if seen.insert(v.as_str(), i).is_some() {
                return Err(DocumentError::DuplicateLabel(v.clone()));
            }
        }
        match (&self.arrows, &self.adjacency) {
            (Some(arrows), None) => {
                for label in arrows.iter().flatten() {
                    if !seen.contains_key(label.as_str()) {
                        return Err(DocumentError::UnknownVertex(label.clone()));
                    }
                }
            }
            (None, Some(m)) => {
                if m.len() != n || m.iter().any(|row| row.len() != n) {
                    return Err(DocumentError::AdjacencyShape(n));
                }
            }
            _ => return Err(DocumentError::ArrowsOrAdjacency),
        }
        for (name, v) in self.dimension_vectors.iter().chain(&self.framings) {
            if v.len() != n {
                return Err(DocumentError::VectorLength { name: name.clone(), expected: n, found: v.len() });
            }
        }
        Ok(())
    }

    fn index(&self) -> HashMap<&str, usize> {
        self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect()
    }

    pub fn adjacency_matrix(&self) -> Vec<Vec<u32>> {
        if let Some(m) = &self.adjacency {
            return m.clone();
        }
        let n = self.vertices.len();
        let idx = self.index();
        let mut m = vec![vec![0u32; n]; n];
        for [s, t] in self.arrows.iter().flatten() {
            m[idx[s.as_str()]][idx[t.as_str()]] += 1;
        }
        m
    }

    pub fn to_quiver(&self) -> Result<Quiver, DocumentError> {
        self.validate()?;
        Ok(Quiver::with_loops(self.adjacency_matrix())?.with_labels(self.vertices.clone())?)
    }

    /// Arrow-list document for a quiver, using its labels.
    pub fn from_quiver(q: &Quiver) -> Self {
        let labels = q.labels();
        let arrows = q.arrow_list().into_iter().map(|(s, t)| [labels[s].clone(), labels[t].clone()]).collect();
        QuiverDocument {
            vertices: labels.to_vec(),
            arrows: Some(arrows),
            adjacency: None,
            dimension_vectors: BTreeMap::new(),
            framings: BTreeMap::new(),
        }
    }

    /// `1,2,0` or the name of a stored dimension vector.
    pub fn dimension_vector(&self, text: &str) -> Result<DimVector, DocumentError> {
        self.vector(text, &self.dimension_vectors)
    }

    /// `1,2,0` or the name of a stored framing.
    pub fn framing(&self, text: &str) -> Result<DimVector, DocumentError> {
        self.vector(text, &self.framings)
    }

    fn vector(&self, text: &str, named: &BTreeMap<String, Vec<u32>>) -> Result<DimVector, DocumentError> {
        let v = match named.get(text) {
            Some(v) => v.clone(),
            None => parse_vector(text)?,
        };
        if v.len() != self.vertices.len() {
            return Err(DocumentError::VectorLength { name: text.to_string(), expected: self.vertices.len(), found: v.len() });
        }
        Ok(DimVector::new(v))
    }
}

pub fn parse_vector(text: &str) -> Result<Vec<u32>, DocumentError> {
    text.split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| DocumentError::BadVector(text.to_string()))
}
