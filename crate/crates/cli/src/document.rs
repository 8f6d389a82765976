//! JSON documents: complexes in, results out.

use std::collections::BTreeMap;

use minhom_core::{BasisResult, SimplicialComplex};
use serde::{Deserialize, Serialize};

/// An edge as `[u, v]` (weight 1) or `[u, v, w]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeSpec {
    Weighted(usize, usize, f64),
    Plain(usize, usize),
}

/// Input complex. Simplices of dimension three and up go in `simplices`,
/// keyed by dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub vertices: usize,
    pub edges: Vec<EdgeSpec>,
    #[serde(default)]
    pub triangles: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub simplices: BTreeMap<String, Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex_function: Option<Vec<Vec<f64>>>,
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    /// Builds the complex without validating it. Fails only on malformed
    /// dimension keys.
    pub fn to_complex(&self) -> Result<SimplicialComplex, String> {
        let edges = self.edges.iter().map(|e| match *e {
            EdgeSpec::Weighted(u, v, w) => (u, v, w),
            EdgeSpec::Plain(u, v) => (u, v, 1.0),
        });
        let mut k = SimplicialComplex::from_parts(self.vertices, edges, self.triangles.iter().copied());
        for (key, list) in &self.simplices {
            let dim: usize = key
                .parse()
                .map_err(|_| format!("simplex dimension key {key:?} is not a number"))?;
            if dim < 3 {
                return Err(format!("dimension {dim} belongs in edges or triangles"));
            }
            if let Some(bad) = list.iter().find(|s| s.len() != dim + 1) {
                return Err(format!("{dim}-simplex {bad:?} needs {} vertices", dim + 1));
            }
            k = k.with_simplices(dim, list.iter().cloned());
        }
        if let Some(f) = &self.vertex_function {
            k = k.with_vertex_function(f.clone());
        }
        Ok(k)
    }

    #[must_use]
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        let simplices = (3..=k.dimension())
            .map(|d| (d.to_string(), (0..k.count(d)).map(|i| k.simplex(d, i)).collect()))
            .collect();
        Self {
            vertices: k.n_vertices(),
            edges: k.edges().iter().map(|e| EdgeSpec::Weighted(e.u, e.v, e.weight)).collect(),
            triangles: k.triangles().to_vec(),
            simplices,
            vertex_function: k.vertex_function().map(<[Vec<f64>]>::to_vec),
        }
    }
}

/// One basis element. `simplices` lists vertex tuples; for loops these are
/// the edges as `[u, v]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleOut {
    pub simplices: Vec<Vec<usize>>,
    pub size: f64,
    /// Annotation bits, highest index first.
    pub annotation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<usize>,
}

/// The run configuration as it was understood.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigEcho {
    pub command: String,
    pub input: String,
    pub measure: String,
    pub distance: String,
    pub dim: usize,
    pub seed: u64,
    pub c0: f64,
    pub max_oracle_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateOut {
    pub seed: u64,
    pub c0: f64,
    pub sample_size: usize,
    pub rounds: usize,
    pub roots: Vec<usize>,
    pub candidates: usize,
    pub size_sequence: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// Output of every command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultDocument {
    pub config: ConfigEcho,
    pub dim: usize,
    pub g: usize,
    pub sizes: Vec<f64>,
    pub total_size: f64,
    pub basis: Vec<CycleOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateOut>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
    pub timing: Timing,
}

impl ResultDocument {
    #[must_use]
    pub fn new(config: ConfigEcho, dim: usize, g: usize) -> Self {
        Self {
            config,
            dim,
            g,
            sizes: Vec::new(),
            total_size: 0.0,
            basis: Vec::new(),
            certificate: None,
            violations: Vec::new(),
            timing: Timing { elapsed_ms: 0.0 },
        }
    }

    pub fn set_basis(&mut self, k: &SimplicialComplex, basis: &BasisResult) {
        self.sizes = basis.size_sequence();
        self.total_size = basis.total_size();
        self.basis = basis
            .cycles
            .iter()
            .map(|c| CycleOut {
                simplices: c.simplices.iter().map(|&i| k.simplex(c.dim, i)).collect(),
                size: c.size,
                annotation: (0..c.annotation.len())
                    .rev()
                    .map(|i| if c.annotation.get(i) { '1' } else { '0' })
                    .collect(),
                root: c.root,
            })
            .collect();
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}
