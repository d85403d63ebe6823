//! Cones over graphs, Kirchhoff Laplacians and the all-minors correspondence
//! between rooted spanning forests of `H` and spanning trees of the cone.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cycle::MeshContext;
use crate::error::Result;
use crate::graph::{Combinations, DisjointSets, Edge, EdgeId, EdgeSubset, Multigraph};
use crate::matrix::IntMatrix;
use crate::mesh::{mesh_laplacian, reduced_mesh_matrix};
use crate::polynomial::IntPolynomial;
use crate::stpoly::{char_poly_exact, st_counts_enum};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeResult {
    pub cone_graph: Multigraph,
    /// The cone edges `P → W`.
    pub cone_tree: EdgeSubset,
    pub apex: usize,
    pub vertex_to_cone_edge: BTreeMap<usize, EdgeId>,
}

/// `H` plus an apex `W` (the new last vertex) and an edge `P → W` for every
/// vertex `P`. Cone edges take the ids following the largest id of `H`.
pub fn cone(h: &Multigraph) -> ConeResult {
    let apex = h.vertex_count();
    let first = h.next_edge_id().0;
    let mut edges = h.edges().to_vec();
    let mut cone_tree = EdgeSubset::new();
    let mut vertex_to_cone_edge = BTreeMap::new();
    for p in 0..apex {
        let id = EdgeId(first + p);
        edges.push(Edge { id, tail: p, head: apex });
        cone_tree.insert(id);
        vertex_to_cone_edge.insert(p, id);
    }
    let cone_graph = Multigraph::from_edges(apex + 1, edges).expect("cone edges are valid");
    ConeResult { cone_graph, cone_tree, apex, vertex_to_cone_edge }
}

/// Vertex-by-edge incidence matrix: `+1` at the head, `−1` at the tail,
/// loops give a zero column.
pub fn incidence_matrix(h: &Multigraph) -> IntMatrix {
    let mut m = IntMatrix::zeros(h.vertex_count(), h.edge_count());
    for (j, e) in h.edges().iter().enumerate() {
        if !e.is_loop() {
            m.set(e.head, j, BigInt::one());
            m.set(e.tail, j, -BigInt::one());
        }
    }
    m
}

/// `Δ(H) = ∂∂ᵗ = Deg − Adj`, loops contributing nothing.
pub fn kirchhoff_laplacian(h: &Multigraph) -> IntMatrix {
    incidence_matrix(h).transpose().gram()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeIdentityReport {
    pub laplacian: IntMatrix,
    /// `YYᵗ` of the cone, rows and columns reordered by vertex.
    pub cone_mesh_laplacian: IntMatrix,
    pub laplacian_matches: bool,
    pub reduced_mesh_charpoly: IntPolynomial,
    pub mesh_laplacian_charpoly: IntPolynomial,
    pub tree_edges: usize,
    pub cotree_edges: usize,
    pub charpoly_relation_holds: bool,
}

impl ConeIdentityReport {
    pub fn holds(&self) -> bool {
        self.laplacian_matches && self.charpoly_relation_holds
    }
}

/// Compares the cone's mesh Laplacian with `Δ(H)` entrywise and checks
/// `U^|E(T₀)|·χ(YᵗY) = U^|E(G−T₀)|·χ(YYᵗ)`.
pub fn verify_cone_identity(h: &Multigraph) -> Result<ConeIdentityReport> {
    let c = cone(h);
    let ctx = MeshContext::new(c.cone_graph.clone(), c.cone_tree.clone())?;
    let n = h.vertex_count();
    let order: Vec<usize> = (0..n)
        .map(|v| ctx.tree_position(c.vertex_to_cone_edge[&v]).expect("cone edge is a tree edge"))
        .collect();
    let cone_mesh_laplacian = mesh_laplacian(&ctx).principal_submatrix(&order);
    let laplacian = kirchhoff_laplacian(h);
    let laplacian_matches = cone_mesh_laplacian == laplacian;

    let reduced_mesh_charpoly = char_poly_exact(&reduced_mesh_matrix(&ctx))?;
    let mesh_laplacian_charpoly = char_poly_exact(&mesh_laplacian(&ctx))?;
    let tree_edges = ctx.tree_order().len();
    let cotree_edges = ctx.cotree_order().len();
    let charpoly_relation_holds =
        reduced_mesh_charpoly.shift_up(tree_edges) == mesh_laplacian_charpoly.shift_up(cotree_edges);
    Ok(ConeIdentityReport {
        laplacian,
        cone_mesh_laplacian,
        laplacian_matches,
        reduced_mesh_charpoly,
        mesh_laplacian_charpoly,
        tree_edges,
        cotree_edges,
        charpoly_relation_holds,
    })
}

/// Sum over spanning forests with `j` edges (so `|V| − j` components) of
/// the product of component sizes, i.e. the number of rooted spanning
/// forests with `|V| − j` roots.
pub fn rooted_forest_coefficient(h: &Multigraph, j: usize) -> BigInt {
    let n = h.vertex_count();
    let candidates: Vec<&Edge> = h.edges().iter().filter(|e| !e.is_loop()).collect();
    let mut total = BigInt::zero();
    for combo in Combinations::new(candidates.len(), j) {
        let mut ds = DisjointSets::new(n);
        if !combo.iter().all(|&i| ds.union(candidates[i].tail, candidates[i].head)) {
            continue;
        }
        let mut mult = BigInt::one();
        for v in 0..n {
            if ds.find(v) == v {
                mult *= ds.component_size(v);
            }
        }
        total += mult;
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllMinorsReport {
    /// Rooted forest sums `b_j`, `j = 0..|V|`.
    pub forest_coefficients: Vec<BigInt>,
    /// `ST_j(C'(H), C(V(H)))`, `j = 0..|E(H)|`.
    pub cone_counts: Vec<BigInt>,
    /// `(−1)^j` times the coefficient of `T^(|V|−j)` in `det(T·Id − Δ(H))`.
    pub laplacian_coefficients: Vec<BigInt>,
    pub laplacian_charpoly: IntPolynomial,
}

impl AllMinorsReport {
    pub fn holds(&self) -> bool {
        let len = self.forest_coefficients.len().max(self.cone_counts.len());
        let padded = |v: &[BigInt]| -> Vec<BigInt> {
            let mut out = v.to_vec();
            out.resize(len, BigInt::zero());
            out
        };
        let forests = padded(&self.forest_coefficients);
        forests == padded(&self.cone_counts) && forests == padded(&self.laplacian_coefficients)
    }
}

pub fn verify_all_minors(h: &Multigraph) -> Result<AllMinorsReport> {
    let n = h.vertex_count();
    let forest_coefficients = (0..=n).map(|j| rooted_forest_coefficient(h, j)).collect();
    let c = cone(h);
    let cone_counts = st_counts_enum(&c.cone_graph, &c.cone_tree)?;
    let laplacian_charpoly = char_poly_exact(&kirchhoff_laplacian(h))?;
    let laplacian_coefficients = (0..=n)
        .map(|j| {
            let raw = laplacian_charpoly.coeff(n - j);
            if j % 2 == 0 {
                raw
            } else {
                -raw
            }
        })
        .collect();
    Ok(AllMinorsReport { forest_coefficients, cone_counts, laplacian_coefficients, laplacian_charpoly })
}
