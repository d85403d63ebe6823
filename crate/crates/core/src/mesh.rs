//! The matrix `Y` of the map `D`, the mesh matrix `Id + YᵗY`, the reduced
//! mesh matrix `YᵗY` and the mesh Laplacian `YYᵗ`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cycle::MeshContext;
use crate::error::{Error, Result};
use crate::graph::EdgeId;
use crate::matrix::IntMatrix;

/// `Y[k][j]` = coefficient of tree edge `f_k` in `D(e_j)`.
pub fn build_y(ctx: &MeshContext) -> IntMatrix {
    let mut y = IntMatrix::zeros(ctx.tree_order().len(), ctx.cotree_order().len());
    for (j, &e) in ctx.cotree_order().iter().enumerate() {
        let d = ctx.d_map(e).expect("cotree edge");
        for (f, k) in d.terms() {
            let row = ctx.tree_position(f).expect("D(e) is supported on the tree");
            y.set(row, j, k.clone());
        }
    }
    y
}

/// Gram matrix of the fundamental cycles `⟨Z[e_i], Z[e_j]⟩`.
pub fn cycle_gram(ctx: &MeshContext) -> IntMatrix {
    let cycles = ctx.fundamental_cycles();
    let n = cycles.len();
    IntMatrix::from_fn(n, n, |i, j| cycles[i].inner_product(&cycles[j]).expect("same host"))
}

/// `Mesh(G, T₀)`, built as `Id + YᵗY` and checked against the cycle Gram
/// matrix.
pub fn mesh_matrix(ctx: &MeshContext) -> IntMatrix {
    let y = build_y(ctx);
    let mesh = &IntMatrix::identity(y.cols()) + &y.gram();
    debug_assert_eq!(mesh, cycle_gram(ctx));
    mesh
}

/// `Mesh#(G, T₀) = YᵗY`.
pub fn reduced_mesh_matrix(ctx: &MeshContext) -> IntMatrix {
    build_y(ctx).gram()
}

/// The mesh Laplacian `YYᵗ`, indexed by tree edges.
pub fn mesh_laplacian(ctx: &MeshContext) -> IntMatrix {
    build_y(ctx).transpose().gram()
}

/// Cotree edges whose `D`-chain passes through both tree edges.
fn supporting_edges(y: &IntMatrix, k: usize, l: usize) -> Vec<usize> {
    (0..y.cols()).filter(|&j| !y.get(k, j).is_zero() && !y.get(l, j).is_zero()).collect()
}

/// `Sign(k, l) = ⟨f_k, D(e)⟩·⟨f_l, D(e)⟩` for the lowest-id cotree edge `e`
/// supporting both tree edges. Errors if the product differs between
/// supporting edges or no edge supports both.
pub fn mesh_sign(ctx: &MeshContext, f_k: EdgeId, f_l: EdgeId) -> Result<i8> {
    let k = ctx.tree_position(f_k).ok_or(Error::UnknownEdge(f_k))?;
    let l = ctx.tree_position(f_l).ok_or(Error::UnknownEdge(f_l))?;
    let y = build_y(ctx);
    sign_from_y(&y, k, l).ok_or(Error::SignUndetermined(f_k, f_l))?
}

fn sign_from_y(y: &IntMatrix, k: usize, l: usize) -> Option<Result<i8>> {
    let support = supporting_edges(y, k, l);
    let sign_of = |j: usize| -> i8 {
        if (y.get(k, j) * y.get(l, j)).is_one() {
            1
        } else {
            -1
        }
    };
    let first = *support.first()?;
    let sign = sign_of(first);
    if support.iter().any(|&j| sign_of(j) != sign) {
        return Some(Err(Error::Inconsistent(format!("Sign({k}, {l}) depends on the cotree edge"))));
    }
    Some(Ok(sign))
}

/// The mesh Laplacian from the counting formula: the diagonal counts the
/// cotree edges whose `D`-chain contains `f_k`; off the diagonal,
/// `Sign(k, l)` times the number containing both. Entries with no
/// supporting edge are zero.
pub fn mesh_laplacian_direct(ctx: &MeshContext) -> Result<IntMatrix> {
    let y = build_y(ctx);
    let m = y.rows();
    let mut out = IntMatrix::zeros(m, m);
    for k in 0..m {
        for l in 0..m {
            let count = BigInt::from(supporting_edges(&y, k, l).len());
            let value = if k == l {
                count
            } else {
                match sign_from_y(&y, k, l) {
                    None => BigInt::zero(),
                    Some(sign) => count * BigInt::from(sign?),
                }
            };
            out.set(k, l, value);
        }
    }
    Ok(out)
}
