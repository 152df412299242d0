//! Generators for the extremal families: expansions, grids, complete
//! bipartite graphs, the unbalanced optimal families, projective planes
//! `PG(2, q)` and symplectic quadrangles `W(q)`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use thiserror::Error;

use crate::geometry::{symplectic_form, CanonicalLine, NotPrime, PrimeField, ProjectivePoint};
use crate::graph::{BipartiteGraph, Edge, SimpleGraph};

/// Largest field order accepted by [`pg2_incidence`].
pub const PG2_MAX_Q: u32 = 13;
/// Largest field order accepted by [`wq_incidence`].
pub const WQ_MAX_Q: u32 = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    NotPrime(#[from] NotPrime),
    #[error("q = {q} is outside the supported range (at most {max})")]
    OutOfRange { q: u32, max: u32 },
    #[error("{family} needs {requirement} (got v = {v}, w = {w})")]
    BelowThreshold { family: &'static str, requirement: &'static str, v: usize, w: usize },
}

fn build(v: usize, w: usize, edges: Vec<Edge>) -> BipartiteGraph {
    BipartiteGraph::from_edges(v, w, edges).expect("generated edges are valid")
}

/// The subdivision of `g`: class V is the vertex set, class W the edge set,
/// each W-vertex joined to the two endpoints of its edge.
pub fn expand(g: &SimpleGraph) -> BipartiteGraph {
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .flat_map(|(k, &(a, b))| [Edge::new(a, k), Edge::new(b, k)])
        .collect();
    build(g.order(), g.size(), edges)
}

/// Point/line incidence of the `(t+1) x (t+1)` grid.
///
/// Point `(a, b)` is V-vertex `a (t+1) + b`; horizontal line `b` is W-vertex
/// `b`, vertical line `a` is W-vertex `t + 1 + a`.
pub fn grid_incidence(t: usize) -> BipartiteGraph {
    let n = t + 1;
    let mut edges = Vec::with_capacity(2 * n * n);
    for a in 0..n {
        for b in 0..n {
            let p = a * n + b;
            edges.push(Edge::new(p, b));
            edges.push(Edge::new(p, n + a));
        }
    }
    build(n * n, 2 * n, edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> BipartiteGraph {
    let edges = (0..a).flat_map(|i| (0..b).map(move |j| Edge::new(i, j))).collect();
    build(a, b, edges)
}

fn checked_field(q: u32, max: u32) -> Result<PrimeField, ConstructionError> {
    let field = PrimeField::new(q)?;
    if q > max {
        return Err(ConstructionError::OutOfRange { q, max });
    }
    Ok(field)
}

/// Incidence graph of the projective plane `PG(2, q)`: points are normalized
/// vectors, lines the same vectors read as dual coordinates, incident when the
/// dot product vanishes.
pub fn pg2_incidence(q: u32) -> Result<BipartiteGraph, ConstructionError> {
    let field = checked_field(q, PG2_MAX_Q)?;
    let points = ProjectivePoint::<3>::all(&field);
    let mut edges = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for (j, line) in points.iter().enumerate() {
            if field.dot(p.coords(), line.coords()) == 0 {
                edges.push(Edge::new(i, j));
            }
        }
    }
    Ok(build(points.len(), points.len(), edges))
}

/// The totally isotropic lines of `PG(3, q)` under [`symplectic_form`], sorted.
pub fn isotropic_lines(field: &PrimeField) -> Vec<CanonicalLine<4>> {
    let points = ProjectivePoint::<4>::all(field);
    let mut lines = BTreeSet::new();
    for (k, a) in points.iter().enumerate() {
        for b in &points[k + 1..] {
            // the form is alternating, so one vanishing pair makes the span isotropic
            if symplectic_form(field, a.coords(), b.coords()) == 0 {
                if let Some(line) = CanonicalLine::through(field, a, b) {
                    lines.insert(line);
                }
            }
        }
    }
    lines.into_iter().collect()
}

/// Incidence graph of the symplectic generalized quadrangle `W(q)`: V is the
/// point set of `PG(3, q)`, W the totally isotropic lines.
pub fn wq_incidence(q: u32) -> Result<BipartiteGraph, ConstructionError> {
    let field = checked_field(q, WQ_MAX_Q)?;
    let points = ProjectivePoint::<4>::all(&field);
    let lines = isotropic_lines(&field);
    let mut edges = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for (j, line) in lines.iter().enumerate() {
            if line.contains(&field, p) {
                edges.push(Edge::new(i, j));
            }
        }
    }
    Ok(build(points.len(), lines.len(), edges))
}

/// Appends `extra` pendant W-vertices, all attached to V-vertex 0.
fn with_pendants(base: BipartiteGraph, extra: usize) -> BipartiteGraph {
    let w0 = base.w();
    let mut edges = base.edges().to_vec();
    edges.extend((w0..w0 + extra).map(|j| Edge::new(0, j)));
    build(base.v(), w0 + extra, edges)
}

/// Expansion of `K_v` plus `w - v(v-1)/2` pendant W-vertices on V-vertex 0;
/// `v(v-1)/2 + w` edges and no 4-cycle.
pub fn unbalanced6(v: usize, w: usize) -> Result<BipartiteGraph, ConstructionError> {
    let pairs = v * v.saturating_sub(1) / 2;
    if v == 0 || w < pairs {
        return Err(ConstructionError::BelowThreshold {
            family: "unbalanced6",
            requirement: "v >= 1 and w >= v(v-1)/2",
            v,
            w,
        });
    }
    Ok(with_pendants(expand(&SimpleGraph::complete(v)), w - pairs))
}

/// Expansion of `K_{ceil(v/2), floor(v/2)}` plus `w - floor(v^2/4)` pendant
/// W-vertices on V-vertex 0; `floor(v^2/4) + w` edges and no 4- or 6-cycle.
pub fn unbalanced8(v: usize, w: usize) -> Result<BipartiteGraph, ConstructionError> {
    let quarter = v * v / 4;
    if v < 2 || w < quarter {
        return Err(ConstructionError::BelowThreshold {
            family: "unbalanced8",
            requirement: "v >= 2 and w >= floor(v^2/4)",
            v,
            w,
        });
    }
    let halves = SimpleGraph::complete_bipartite(v.div_ceil(2), v / 2);
    Ok(with_pendants(expand(&halves), w - quarter))
}
