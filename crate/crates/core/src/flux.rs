//! Cotree edge types, the inward-edge graph `W`, and the smallest positive
//! eigenvalues `Λ` of the mesh Laplacian and `λ` of `Δ(W)`.
//!
//! The inequality `Λ ≤ λ` is reported, never asserted: on the 4-cycle with
//! a path tree, `Λ = 3` and `λ = 2`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::cone::kirchhoff_laplacian;
use crate::cycle::MeshContext;
use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeId, Multigraph};
use crate::matrix::IntMatrix;
use crate::mesh::{build_y, mesh_laplacian};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeType {
    /// Type 1.
    Loop,
    /// Type 2: endpoints adjacent in the tree.
    Adjacent,
    /// Type 3: tree path of length at least two.
    LongPath,
}

impl EdgeType {
    pub fn number(self) -> u8 {
        match self {
            EdgeType::Loop => 1,
            EdgeType::Adjacent => 2,
            EdgeType::LongPath => 3,
        }
    }
}

/// A tree edge traversed in a chosen direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DirectedTreeEdge {
    pub edge: EdgeId,
    pub from: usize,
    pub to: usize,
}

impl DirectedTreeEdge {
    /// `+1` if the direction agrees with the stored orientation.
    fn sign(&self, g: &Multigraph) -> f64 {
        let e = g.edge(self.edge).expect("tree edge exists");
        if e.tail == self.from {
            1.0
        } else {
            -1.0
        }
    }
}

pub fn classify_edge(ctx: &MeshContext, e: EdgeId) -> Result<EdgeType> {
    let edge = ctx.graph().edge(e)?;
    if !ctx.is_cotree(e) {
        return Err(Error::NotCotreeEdge(e));
    }
    if edge.is_loop() {
        return Ok(EdgeType::Loop);
    }
    Ok(if ctx.path_length(e)? == 1 { EdgeType::Adjacent } else { EdgeType::LongPath })
}

/// For a type-3 edge `e = (P → Q)`: `F₁`, the first edge of the tree path
/// from `Q`, directed away from `Q`, and `F₂`, the last edge, directed away
/// from `P`. Both point into the tree.
pub fn inward_edges(ctx: &MeshContext, e: EdgeId) -> Result<(DirectedTreeEdge, DirectedTreeEdge)> {
    if classify_edge(ctx, e)? != EdgeType::LongPath {
        return Err(Error::NotType3(e));
    }
    let edge = ctx.graph().edge(e)?;
    let steps = ctx.tree_path_steps(edge.head, edge.tail);
    let (a, b, first) = steps[0];
    let (c, d, last) = steps[steps.len() - 1];
    Ok((DirectedTreeEdge { edge: first, from: a, to: b }, DirectedTreeEdge { edge: last, from: d, to: c }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WEdge {
    pub cotree_edge: EdgeId,
    /// Index of `F₁` in `vertices`.
    pub first: usize,
    /// Index of `F₂` in `vertices`.
    pub second: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WGraph {
    /// Distinct inward directed tree edges, sorted.
    pub vertices: Vec<DirectedTreeEdge>,
    /// One edge per type-3 cotree edge, in cotree order.
    pub edges: Vec<WEdge>,
    /// Vertex indices of each connected component, ordered by first vertex.
    pub components: Vec<Vec<usize>>,
}

impl WGraph {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn as_multigraph(&self) -> Multigraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, w)| Edge { id: EdgeId(i), tail: w.first, head: w.second })
            .collect();
        Multigraph::from_edges(self.vertices.len(), edges).expect("W edges reference W vertices")
    }

    pub fn laplacian(&self) -> IntMatrix {
        kirchhoff_laplacian(&self.as_multigraph())
    }

    fn component_of(&self) -> Vec<usize> {
        let mut label = vec![0; self.vertices.len()];
        for (k, comp) in self.components.iter().enumerate() {
            for &v in comp {
                label[v] = k;
            }
        }
        label
    }
}

pub fn build_w(ctx: &MeshContext) -> Result<WGraph> {
    let mut pairs = Vec::new();
    for &e in ctx.cotree_order() {
        if classify_edge(ctx, e)? == EdgeType::LongPath {
            pairs.push((e, inward_edges(ctx, e)?));
        }
    }
    let mut index: BTreeMap<DirectedTreeEdge, usize> = BTreeMap::new();
    for (_, (f1, f2)) in &pairs {
        index.insert(*f1, 0);
        index.insert(*f2, 0);
    }
    for (i, slot) in index.values_mut().enumerate() {
        *slot = i;
    }
    let vertices: Vec<DirectedTreeEdge> = index.keys().copied().collect();
    let edges: Vec<WEdge> = pairs
        .iter()
        .map(|(e, (f1, f2))| WEdge { cotree_edge: *e, first: index[f1], second: index[f2] })
        .collect();
    let mut w = WGraph { vertices, edges, components: Vec::new() };
    if !w.is_empty() {
        let labels = w.as_multigraph().components();
        let count = labels.iter().max().map_or(0, |m| m + 1);
        let mut components = vec![Vec::new(); count];
        for (v, &l) in labels.iter().enumerate() {
            components[l].push(v);
        }
        w.components = components;
    }
    Ok(w)
}

/// Default tolerance `10⁻⁹·(1 + max |entry|)`.
pub fn default_tolerance(m: &IntMatrix) -> f64 {
    1e-9 * (1.0 + m.to_f64().amax())
}

/// Eigenvalues of a symmetric integer matrix, ascending.
pub fn symmetric_eigenvalues(m: &IntMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    if !m.is_symmetric() {
        return Err(Error::NonSymmetric);
    }
    Ok(sorted_eigenvalues(m.to_f64()))
}

fn sorted_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut values: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Smallest eigenvalue above `tol` (default [`default_tolerance`]).
pub fn min_positive_eigenvalue(m: &IntMatrix, tol: Option<f64>) -> Result<Option<f64>> {
    let tol = tol.unwrap_or_else(|| default_tolerance(m));
    Ok(symmetric_eigenvalues(m)?.into_iter().find(|&v| v > tol))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FluxVerdict {
    pub lambda_defined: bool,
    pub big_lambda_defined: bool,
    /// `None` when either eigenvalue is undefined.
    pub inequality_holds: Option<bool>,
}

impl FluxVerdict {
    pub fn vacuous(&self) -> bool {
        self.inequality_holds.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FluxReport {
    pub edge_types: Vec<(EdgeId, EdgeType)>,
    pub w: WGraph,
    /// `Λ`, smallest positive eigenvalue of `YYᵗ`.
    pub big_lambda: Option<f64>,
    pub big_lambda_tolerance: f64,
    /// `λ`, smallest positive eigenvalue of `Δ(W)`.
    pub lambda: Option<f64>,
    pub lambda_tolerance: f64,
    /// Minimum Rayleigh quotient of the mesh Laplacian over inward-edge
    /// combinations orthogonal to every component sum `S[k]`.
    pub restricted_quotient: Option<f64>,
    pub verdict: FluxVerdict,
}

pub fn flux_report(ctx: &MeshContext) -> Result<FluxReport> {
    let edge_types =
        ctx.cotree_order().iter().map(|&e| classify_edge(ctx, e).map(|t| (e, t))).collect::<Result<Vec<_>>>()?;
    let w = build_w(ctx)?;
    let lap = mesh_laplacian(ctx);
    let big_lambda_tolerance = default_tolerance(&lap);
    let big_lambda = min_positive_eigenvalue(&lap, Some(big_lambda_tolerance))?;
    let w_lap = w.laplacian();
    let lambda_tolerance = default_tolerance(&w_lap);
    let lambda = min_positive_eigenvalue(&w_lap, Some(lambda_tolerance))?;
    let restricted_quotient = restricted_quotient(ctx, &w);
    let inequality_holds = match (big_lambda, lambda) {
        (Some(big), Some(small)) => Some(big <= small + lambda_tolerance.max(big_lambda_tolerance)),
        _ => None,
    };
    let verdict =
        FluxVerdict { lambda_defined: lambda.is_some(), big_lambda_defined: big_lambda.is_some(), inequality_holds };
    Ok(FluxReport {
        edge_types,
        w,
        big_lambda,
        big_lambda_tolerance,
        lambda,
        lambda_tolerance,
        restricted_quotient,
        verdict,
    })
}

/// `Jᵗ·YYᵗ·J` where column `x` of `J` is the signed unit vector of the
/// inward edge `x` in tree-edge coordinates.
pub fn restricted_laplacian(ctx: &MeshContext, w: &WGraph) -> DMatrix<f64> {
    let y = build_y(ctx).to_f64();
    let m = y.nrows();
    let mut j = DMatrix::zeros(m, w.vertices.len());
    for (col, x) in w.vertices.iter().enumerate() {
        let row = ctx.tree_position(x.edge).expect("inward edges are tree edges");
        j[(row, col)] = x.sign(ctx.graph());
    }
    let yt_j = y.transpose() * &j;
    yt_j.transpose() * yt_j
}

/// Minimum of `⟨A, JᵗYYᵗJ A⟩ / ⟨A, A⟩` over `A ∈ ℝ^X` summing to zero on
/// every component of `W`. `None` if that subspace is trivial.
pub fn restricted_quotient(ctx: &MeshContext, w: &WGraph) -> Option<f64> {
    let n = w.vertices.len();
    if n == 0 {
        return None;
    }
    let label = w.component_of();
    let mut projector = DMatrix::<f64>::identity(n, n);
    for comp in &w.components {
        let size = comp.len() as f64;
        for &a in comp {
            for &b in comp {
                projector[(a, b)] -= 1.0 / size;
            }
        }
    }
    debug_assert!(label.len() == n);
    let eig = SymmetricEigen::new(projector);
    let basis_cols: Vec<usize> = (0..n).filter(|&i| eig.eigenvalues[i] > 0.5).collect();
    if basis_cols.is_empty() {
        return None;
    }
    let basis = eig.eigenvectors.select_columns(&basis_cols);
    let m = restricted_laplacian(ctx, w);
    let projected = basis.transpose() * m * &basis;
    sorted_eigenvalues(projected).first().copied()
}

/// `min_k cut(C[k], D[k]) / min(|C[k]|, |D[k]|)`, where `parts[k]` lists the
/// `W`-vertex indices of `C[k]` inside component `k`.
pub fn cheeger_estimate(w: &WGraph, parts: &[Vec<usize>]) -> Result<f64> {
    if parts.len() != w.components.len() {
        return Err(Error::ImproperPartition(format!(
            "{} parts for {} components",
            parts.len(),
            w.components.len()
        )));
    }
    let label = w.component_of();
    let mut best = f64::INFINITY;
    for (k, (comp, part)) in w.components.iter().zip(parts).enumerate() {
        let mut in_c = vec![false; w.vertices.len()];
        for &v in part {
            if v >= w.vertices.len() || label[v] != k {
                return Err(Error::ImproperPartition(format!("vertex {v} is not in component {k}")));
            }
            in_c[v] = true;
        }
        let c_size = comp.iter().filter(|&&v| in_c[v]).count();
        let d_size = comp.len() - c_size;
        if c_size == 0 || d_size == 0 {
            return Err(Error::ImproperPartition(format!("component {k} needs a proper nonempty subset")));
        }
        let cut = w
            .edges
            .iter()
            .filter(|e| label[e.first] == k && in_c[e.first] != in_c[e.second])
            .count();
        best = best.min(cut as f64 / c_size.min(d_size) as f64);
    }
    Ok(best)
}

/// Splits a flat list of `W`-vertex indices into per-component parts.
pub fn partition_from_members(w: &WGraph, members: &[usize]) -> Result<Vec<Vec<usize>>> {
    let label = w.component_of();
    let mut parts = vec![Vec::new(); w.components.len()];
    for &v in members {
        let k = *label.get(v).ok_or_else(|| Error::ImproperPartition(format!("no W-vertex {v}")))?;
        parts[k].push(v);
    }
    Ok(parts)
}

/// Every choice of proper nonempty subsets, one per component, by
/// exhaustive enumeration. Refuses graphs with more than `limit` vertices.
pub fn all_partitions(w: &WGraph, limit: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    if w.vertices.len() > limit {
        return Err(Error::ImproperPartition(format!("{} W-vertices exceeds {limit}", w.vertices.len())));
    }
    let per_component: Vec<Vec<Vec<usize>>> = w
        .components
        .iter()
        .map(|comp| {
            let size = comp.len();
            (1..(1u64 << size) - 1)
                .map(|mask| (0..size).filter(|i| mask >> i & 1 == 1).map(|i| comp[i]).collect())
                .collect()
        })
        .collect();
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for choices in &per_component {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c.clone());
                    p
                })
            })
            .collect();
    }
    Ok(out)
}

/// The smallest Cheeger estimate over all partitions, if any exists.
pub fn best_cheeger_estimate(w: &WGraph, limit: usize) -> Result<Option<f64>> {
    if w.is_empty() || w.components.iter().any(|c| c.len() < 2) {
        return Ok(None);
    }
    let mut best: Option<f64> = None;
    for parts in all_partitions(w, limit)? {
        let v = cheeger_estimate(w, &parts)?;
        best = Some(best.map_or(v, |b: f64| b.min(v)));
    }
    Ok(best)
}
