//! The lattice quotient `U = C₁(G;ℤ) / (Z₁(G;ℤ) ⊕ Π B¹(G;ℤ))` and its
//! order, computed from a block determinant and from Smith normal form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cycle::{MeshContext, OneChain};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::mesh::{build_y, mesh_matrix};
use crate::smith::smith_normal_form;

/// `b[f_k] = f_k − Σ_j Y[k][j]·e_j` for every tree edge, in tree order.
pub fn coboundary_basis(ctx: &MeshContext) -> Vec<OneChain<'_>> {
    let y = build_y(ctx);
    ctx.tree_order()
        .iter()
        .enumerate()
        .map(|(k, &f)| {
            let mut b = OneChain::unit(ctx.graph(), f).expect("tree edge exists");
            for (j, &e) in ctx.cotree_order().iter().enumerate() {
                let c = y.get(k, j);
                if !c.is_zero() {
                    b.add_term(e, -c.clone()).expect("cotree edge exists");
                }
            }
            b
        })
        .collect()
}

/// `Π δ(1_S)`: every non-loop edge with exactly one endpoint in `S`, with
/// coefficient `+1` if it points into `S` and `−1` if it points out.
pub fn coboundary_of_vertex_set<'g>(ctx: &'g MeshContext, in_set: &[bool]) -> OneChain<'g> {
    let mut chain = OneChain::zero(ctx.graph());
    for e in ctx.graph().edges() {
        match (in_set[e.tail], in_set[e.head]) {
            (false, true) => chain.add_term(e.id, BigInt::one()),
            (true, false) => chain.add_term(e.id, -BigInt::one()),
            _ => Ok(()),
        }
        .expect("edge exists");
    }
    chain
}

/// For each tree edge `f_k = R → S`, the side `B[k]` of the tree cut that
/// contains `S`.
pub fn cut_sides(ctx: &MeshContext) -> Vec<Vec<bool>> {
    let n = ctx.graph().vertex_count();
    ctx.tree_order()
        .iter()
        .map(|&f| {
            let edge = ctx.graph().edge(f).expect("tree edge exists");
            // S's side: vertices whose tree path from S avoids f.
            (0..n).map(|v| !ctx.tree_path_steps(edge.head, v).iter().any(|&(_, _, e)| e == f)).collect()
        })
        .collect()
}

/// Checks `b[f_k] = Π δ(Σ_{b ∈ B[k]} b)` for every tree edge.
pub fn verify_coboundary_cuts(ctx: &MeshContext) -> bool {
    let basis = coboundary_basis(ctx);
    cut_sides(ctx).iter().zip(&basis).all(|(side, b)| &coboundary_of_vertex_set(ctx, side) == b)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeIndexReport {
    /// `det [[Id, −Yᵗ], [Y, Id]]`.
    pub block_det: BigInt,
    /// `det(Id + YᵗY)`.
    pub mesh_det: BigInt,
    /// Invariant factors of the matrix with columns `Z[e_j]`, `b[f_k]`.
    pub invariant_factors: Vec<BigInt>,
    pub snf_order: BigInt,
    pub full_rank: bool,
}

impl LatticeIndexReport {
    pub fn consistent(&self) -> bool {
        self.full_rank && self.block_det.abs() == self.mesh_det && self.mesh_det == self.snf_order
    }
}

/// Order of `U`, by the block determinant and by Smith normal form.
pub fn lattice_index_report(ctx: &MeshContext) -> Result<LatticeIndexReport> {
    let y = build_y(ctx);
    let (m, n) = (y.rows(), y.cols());
    let top = IntMatrix::identity(n).hstack(&-&y.transpose())?;
    let bottom = y.hstack(&IntMatrix::identity(m))?;
    let block_det = top.vstack(&bottom)?.det_bareiss()?;
    let mesh_det = mesh_matrix(ctx).det_bareiss()?;

    // Rows: cotree edges then tree edges; columns: Z[e_j] then b[f_k].
    let row_of = |e| {
        ctx.cotree_position(e).unwrap_or_else(|| n + ctx.tree_position(e).expect("edge is in tree or cotree"))
    };
    let mut lattice = IntMatrix::zeros(m + n, m + n);
    let columns = ctx.fundamental_cycles().into_iter().chain(coboundary_basis(ctx));
    for (col, chain) in columns.enumerate() {
        for (e, k) in chain.terms() {
            lattice.set(row_of(e), col, k.clone());
        }
    }
    let snf = smith_normal_form(&lattice);
    Ok(LatticeIndexReport {
        block_det,
        mesh_det,
        invariant_factors: snf.invariant_factors().to_vec(),
        snf_order: snf.torsion_product(),
        full_rank: snf.rank == m + n,
    })
}

/// `|U|`; errors if the two routes disagree.
pub fn lattice_index(ctx: &MeshContext) -> Result<BigInt> {
    let report = lattice_index_report(ctx)?;
    if report.consistent() {
        Ok(report.snf_order)
    } else {
        Err(Error::Inconsistent(format!(
            "lattice index routes disagree: block {} vs smith {}",
            report.block_det, report.snf_order
        )))
    }
}
