//! Graph JSON, matrix JSON and certificate JSON.
//!
//! Graph JSON is `{"v": int, "w": int, "edges": [[i, j], ...]}` with
//! `0 <= i < v`, `0 <= j < w`, no duplicate pairs, any order. Writers emit
//! edges sorted. Matrix JSON is `{"rows": [[entry, ...], ...]}` where each
//! entry is a nonnegative integer or a `"p/q"` string.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use girthbound_core::graph::GraphError;
use girthbound_core::meanineq::MatrixError;
use girthbound_core::{BipartiteGraph, NonnegMatrix, SearchCertificate, SimpleGraph};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error("invalid matrix: {0}")]
    Matrix(#[from] MatrixError),
    #[error("invalid rational {0:?}")]
    Rational(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub v: usize,
    pub w: usize,
    pub edges: Vec<[usize; 2]>,
}

impl From<&BipartiteGraph> for GraphJson {
    fn from(g: &BipartiteGraph) -> Self {
        GraphJson { v: g.v(), w: g.w(), edges: g.edges().iter().map(|e| [e.v, e.w]).collect() }
    }
}

impl TryFrom<GraphJson> for BipartiteGraph {
    type Error = GraphError;

    fn try_from(g: GraphJson) -> Result<Self, GraphError> {
        BipartiteGraph::from_edges(g.v, g.w, g.edges.into_iter().map(|[i, j]| (i, j)))
    }
}

pub fn parse_graph(text: &str) -> Result<BipartiteGraph, FormatError> {
    let raw: GraphJson = serde_json::from_str(text)?;
    Ok(raw.try_into()?)
}

/// Compact single-line Graph JSON.
pub fn graph_to_string(g: &BipartiteGraph) -> String {
    serde_json::to_string(&GraphJson::from(g)).expect("graph serializes")
}

pub fn read_graph(path: &Path) -> Result<BipartiteGraph, FormatError> {
    parse_graph(&read(path)?)
}

pub fn write_graph(path: &Path, g: &BipartiteGraph) -> Result<(), FormatError> {
    let mut text = graph_to_string(g);
    text.push('\n');
    fs::write(path, text).map_err(|source| FormatError::Io { path: path.to_owned(), source })
}

/// Simple graph input for `construct expand`: `{"n": int, "edges": [[a, b], ...]}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimpleGraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

pub fn read_simple_graph(path: &Path) -> Result<SimpleGraph, FormatError> {
    let raw: SimpleGraphJson = serde_json::from_str(&read(path)?)?;
    Ok(SimpleGraph::new(raw.n, raw.edges.into_iter().map(|[a, b]| (a, b)))?)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    rows: Vec<Vec<Entry>>,
}

/// Parses `"p/q"` or `"p"` with arbitrary-size integers.
pub fn parse_rational(text: &str) -> Result<BigRational, FormatError> {
    let bad = || FormatError::Rational(text.to_owned());
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => BigInt::from_str(text).map(BigRational::from_integer).map_err(|_| bad()),
    }
}

pub fn parse_matrix(text: &str) -> Result<NonnegMatrix, FormatError> {
    let raw: MatrixJson = serde_json::from_str(text)?;
    let rows = raw
        .rows
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|e| match e {
                    Entry::Int(x) => Ok(BigRational::from_integer(x.into())),
                    Entry::Text(s) => parse_rational(&s),
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NonnegMatrix::new(rows)?)
}

pub fn read_matrix(path: &Path) -> Result<NonnegMatrix, FormatError> {
    parse_matrix(&read(path)?)
}

/// Matrix JSON with every entry written as a `"p/q"` or integer string.
pub fn matrix_to_string(m: &NonnegMatrix) -> String {
    let rows: Vec<Vec<String>> = m.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    serde_json::json!({ "rows": rows }).to_string()
}

#[derive(Debug, Serialize)]
pub struct CertificateJson {
    pub v: usize,
    pub w: usize,
    pub min_girth: usize,
    pub e_max: usize,
    pub exhaustive: bool,
    pub nodes_explored: u64,
    pub elapsed_seconds: f64,
    /// Graph JSON on one line.
    pub witness: Box<RawValue>,
}

impl From<&SearchCertificate> for CertificateJson {
    fn from(c: &SearchCertificate) -> Self {
        CertificateJson {
            v: c.v,
            w: c.w,
            min_girth: c.min_girth.value(),
            e_max: c.e_max,
            exhaustive: c.exhaustive,
            nodes_explored: c.nodes_explored,
            elapsed_seconds: c.elapsed.as_secs_f64(),
            witness: RawValue::from_string(graph_to_string(&c.witness)).expect("graph JSON is valid"),
        }
    }
}

pub fn certificate_to_string(c: &SearchCertificate) -> String {
    serde_json::to_string_pretty(&CertificateJson::from(c)).expect("certificate serializes")
}

fn read(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.to_owned(), source })
}
