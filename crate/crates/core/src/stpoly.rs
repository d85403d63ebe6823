//! The spanning-tree polynomial
//! `ST(G,H)(X) = Σ_j (−1)^j ST_j(G,H) X^(N−j)`, `N = |E(G) − E(H)|`,
//! where `ST_j` counts spanning trees using exactly `j` edges outside `H`.
//!
//! Three routes are provided: direct enumeration, deletion-contraction, and
//! the characteristic polynomial of the mesh matrix shifted by one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cycle::MeshContext;
use crate::error::{Error, Result};
use crate::graph::{Combinations, EdgeId, EdgeSubset, Multigraph};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::mesh::mesh_matrix;
use crate::polynomial::{IntPolynomial, RatPolynomial};

/// `(ST_0, …, ST_N)` by filtering the enumerated spanning trees.
pub fn st_counts_enum(g: &Multigraph, h: &EdgeSubset) -> Result<Vec<BigInt>> {
    g.check_subset(h)?;
    let n = g.edge_count() - h.len();
    let mut counts = vec![BigInt::zero(); n + 1];
    for tree in g.enumerate_spanning_trees() {
        let j = tree.iter().filter(|&e| !h.contains(e)).count();
        counts[j] += 1;
    }
    Ok(counts)
}

fn polynomial_from_counts(counts: &[BigInt]) -> IntPolynomial {
    let n = counts.len() - 1;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (j, c) in counts.iter().enumerate() {
        coeffs[n - j] = if j % 2 == 0 { c.clone() } else { -c.clone() };
    }
    IntPolynomial::new(coeffs)
}

pub fn st_polynomial_enum(g: &Multigraph, h: &EdgeSubset) -> Result<IntPolynomial> {
    Ok(polynomial_from_counts(&st_counts_enum(g, h)?))
}

/// Default edge choice: lowest-id edge of `H`, else lowest-id edge of `G`.
pub fn default_pick(g: &Multigraph, h: &EdgeSubset) -> EdgeId {
    h.iter().next().or_else(|| g.edge_ids().next()).expect("called on a graph with edges")
}

/// Deletion-contraction with the default edge order.
pub fn st_polynomial_dc(g: &Multigraph, h: &EdgeSubset) -> Result<IntPolynomial> {
    st_polynomial_dc_by(g, h, &mut default_pick)
}

/// Deletion-contraction where `pick` chooses the edge to split on. The
/// recursion:
///
/// * no edges: `1` on one vertex, else `0`;
/// * `e ∈ H` loop: `P(G∖e, H∖e)`;
/// * `e ∈ H` non-loop: `P(G∖e, H∖e) + P(G/e, H/e)`;
/// * `e ∉ H` loop: `X·P(G∖e, H)`;
/// * `e ∉ H` non-loop: `X·P(G∖e, H) − P(G/e, H)`.
pub fn st_polynomial_dc_by(
    g: &Multigraph,
    h: &EdgeSubset,
    pick: &mut dyn FnMut(&Multigraph, &EdgeSubset) -> EdgeId,
) -> Result<IntPolynomial> {
    g.check_subset(h)?;
    Ok(dc(g, h, pick))
}

fn dc(g: &Multigraph, h: &EdgeSubset, pick: &mut dyn FnMut(&Multigraph, &EdgeSubset) -> EdgeId) -> IntPolynomial {
    if g.edge_count() == 0 {
        return if g.vertex_count() == 1 { IntPolynomial::one() } else { IntPolynomial::zero() };
    }
    if !g.is_connected() {
        return IntPolynomial::zero();
    }
    let e = pick(g, h);
    let edge = *g.edge(e).expect("picked edge belongs to the graph");
    let deleted = g.delete_edge(e).expect("edge exists");
    if h.contains(e) {
        let mut h_rest = h.clone();
        h_rest.remove(e);
        let without = dc(&deleted, &h_rest, pick);
        if edge.is_loop() {
            return without;
        }
        let contracted = g.contract_edge(e).expect("non-loop edge");
        without.add(&dc(&contracted, &h_rest, pick))
    } else {
        let without = dc(&deleted, h, pick).shift_up(1);
        if edge.is_loop() {
            return without;
        }
        let contracted = g.contract_edge(e).expect("non-loop edge");
        without.sub(&dc(&contracted, h, pick))
    }
}

/// `det(X·Id − m)` for an integer matrix, by fraction-free determinants at
/// `X = 0..n` and interpolation.
pub fn char_poly_exact(m: &IntMatrix) -> Result<IntPolynomial> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut points = Vec::with_capacity(n + 1);
    for x in 0..=n {
        let xb = BigInt::from(x);
        let value = m.shifted_negation(&xb).det_bareiss()?;
        points.push((BigRational::from_integer(xb), BigRational::from_integer(value)));
    }
    let p = RatPolynomial::interpolate(&points)
        .to_integer()
        .ok_or_else(|| Error::Inconsistent("non-integral characteristic polynomial".into()))?;
    if n > 0 && p.degree() != Some(n) || !p.leading().map_or(n == 0, One::is_one) {
        return Err(Error::Inconsistent("characteristic polynomial is not monic of full degree".into()));
    }
    Ok(p)
}

/// `det(X·Id − m)` for a rational matrix.
pub fn char_poly_rational(m: &RatMatrix) -> Result<RatPolynomial> {
    if !m.is_square() {
        return Err(Error::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let mut points = Vec::with_capacity(n + 1);
    for x in 0..=n {
        let xr = BigRational::from_integer(BigInt::from(x));
        let value = m.shifted_negation(&xr).det()?;
        points.push((xr, value));
    }
    Ok(RatPolynomial::interpolate(&points))
}

/// Outcome of the diagonal-minor expansion check for one coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorExpansionTerm {
    pub j: usize,
    /// `b_j` read off the characteristic polynomial of the mesh matrix.
    pub coefficient: BigInt,
    /// Sum over `j`-subsets of cotree edges of `det Mesh(T₀ ∪ subset)`.
    pub minor_sum: BigInt,
    /// Sum over the same subsets of the enumerated tree counts.
    pub tree_count_sum: BigInt,
}

impl MinorExpansionTerm {
    pub fn holds(&self) -> bool {
        self.coefficient == self.minor_sum && self.minor_sum == self.tree_count_sum
    }
}

/// Expands each `b_j` of `det(X·Id − Mesh) = Σ (−1)^j b_j X^(N−j)` as a sum
/// over subgraphs `T₀ ∪ {e_k1, …, e_kj}`, each with its own mesh matrix
/// built from scratch.
pub fn minor_expansion(ctx: &MeshContext) -> Result<Vec<MinorExpansionTerm>> {
    let charpoly = char_poly_exact(&mesh_matrix(ctx))?;
    let cotree = ctx.cotree_order();
    let n = cotree.len();
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let raw = charpoly.coeff(n - j);
        let coefficient = if j % 2 == 0 { raw } else { -raw };
        let mut minor_sum = BigInt::zero();
        let mut tree_count_sum = BigInt::zero();
        for subset in Combinations::new(n, j) {
            let mut keep = ctx.tree().clone();
            for &i in &subset {
                keep.insert(cotree[i]);
            }
            let sub = ctx.graph().restrict(&keep)?;
            tree_count_sum += sub.count_spanning_trees();
            let sub_ctx = MeshContext::new(sub, ctx.tree().clone())?;
            minor_sum += mesh_matrix(&sub_ctx).det_bareiss()?;
        }
        out.push(MinorExpansionTerm { j, coefficient, minor_sum, tree_count_sum });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharpolyIdentityReport {
    /// `det(X·Id − Mesh)`.
    pub mesh_charpoly: IntPolynomial,
    /// `det((X+1)·Id − Mesh)`, to be compared with `ST(G,T₀)(X)`.
    pub shifted_charpoly: IntPolynomial,
    pub st_dc: IntPolynomial,
    pub st_enum: IntPolynomial,
    pub st_counts: Vec<BigInt>,
    pub polynomials_agree: bool,
    pub mesh_det: BigInt,
    pub count_sum: BigInt,
    pub tree_count: BigInt,
    pub counts_agree: bool,
    pub minor_expansion: Option<Vec<MinorExpansionTerm>>,
}

impl CharpolyIdentityReport {
    pub fn holds(&self) -> bool {
        self.polynomials_agree
            && self.counts_agree
            && self.minor_expansion.as_ref().is_none_or(|terms| terms.iter().all(MinorExpansionTerm::holds))
    }
}

/// Checks `char_poly(Mesh)(X) = ST(G,T₀)(X − 1)` three ways and
/// `det Mesh = Σ_j ST_j = #trees`; optionally expands each coefficient
/// over subgraph minors.
pub fn verify_charpoly_identity(ctx: &MeshContext, with_minors: bool) -> Result<CharpolyIdentityReport> {
    let mesh = mesh_matrix(ctx);
    let mesh_charpoly = char_poly_exact(&mesh)?;
    let shifted_charpoly = mesh_charpoly.compose_shift(&BigInt::one());
    let g = ctx.graph();
    let h = ctx.tree();
    let st_counts = st_counts_enum(g, h)?;
    let st_enum = polynomial_from_counts(&st_counts);
    let st_dc = st_polynomial_dc(g, h)?;
    let polynomials_agree = shifted_charpoly == st_dc && st_dc == st_enum;
    let mesh_det = mesh.det_bareiss()?;
    let count_sum: BigInt = st_counts.iter().sum();
    let tree_count = BigInt::from(g.count_spanning_trees());
    let counts_agree = mesh_det == count_sum && count_sum == tree_count;
    let minor_expansion = if with_minors { Some(minor_expansion(ctx)?) } else { None };
    Ok(CharpolyIdentityReport {
        mesh_charpoly,
        shifted_charpoly,
        st_dc,
        st_enum,
        st_counts,
        polynomials_agree,
        mesh_det,
        count_sum,
        tree_count,
        counts_agree,
        minor_expansion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    fn subset(ids: &[usize]) -> EdgeSubset {
        ids.iter().copied().collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn counts_examples() {
        let k3 = Multigraph::complete(3);
        assert_eq!(st_counts_enum(&k3, &subset(&[0, 1])).unwrap(), ints(&[1, 2]));
        let k4 = Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(st_counts_enum(&k4, &subset(&[0, 1, 2])).unwrap(), ints(&[1, 6, 9, 0]));
        let split = Multigraph::new(3, [(0, 1)]).unwrap();
        assert_eq!(st_counts_enum(&split, &subset(&[])).unwrap(), ints(&[0, 0]));
        assert_eq!(st_counts_enum(&k3, &subset(&[5])), Err(Error::UnknownEdge(EdgeId(5))));
    }

    #[test]
    fn polynomial_examples() {
        let k3 = Multigraph::complete(3);
        let x_minus_2 = IntPolynomial::from_i64(&[-2, 1]);
        assert_eq!(st_polynomial_enum(&k3, &subset(&[0, 1])).unwrap(), x_minus_2);
        assert_eq!(st_polynomial_dc(&k3, &subset(&[0, 1])).unwrap(), x_minus_2);
        let k4 = Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let expected = IntPolynomial::from_i64(&[0, 9, -6, 1]);
        assert_eq!(st_polynomial_enum(&k4, &subset(&[0, 1, 2])).unwrap(), expected);
        assert_eq!(st_polynomial_dc(&k4, &subset(&[0, 1, 2])).unwrap(), expected);
        let point = Multigraph::new(1, []).unwrap();
        assert_eq!(st_polynomial_enum(&point, &subset(&[])).unwrap(), IntPolynomial::one());
        assert_eq!(st_polynomial_dc(&point, &subset(&[])).unwrap(), IntPolynomial::one());
    }

    #[test]
    fn cotree_loop_multiplies_by_x() {
        let k3 = Multigraph::complete(3);
        let (looped, _) = k3.with_edge(1, 1).unwrap();
        let h = subset(&[0, 1]);
        let base = st_polynomial_dc(&k3, &h).unwrap();
        assert_eq!(st_polynomial_dc(&looped, &h).unwrap(), base.shift_up(1));
        assert_eq!(st_polynomial_enum(&looped, &h).unwrap(), base.shift_up(1));
    }

    #[test]
    fn digon_with_tree_edge_in_h() {
        // The digon case separates the corrected recursion from the
        // alternative that attaches X to the contraction term.
        let digon = Multigraph::new(2, [(0, 1), (1, 0)]).unwrap();
        let h = subset(&[0]);
        assert_eq!(st_polynomial_enum(&digon, &h).unwrap(), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(st_polynomial_dc(&digon, &h).unwrap(), IntPolynomial::from_i64(&[-1, 1]));
    }

    #[test]
    fn charpoly_examples() {
        assert_eq!(char_poly_exact(&IntMatrix::from_i64(&[&[3]])).unwrap(), IntPolynomial::from_i64(&[-3, 1]));
        let star = IntMatrix::from_i64(&[&[3, 1, -1], &[1, 3, 1], &[-1, 1, 3]]);
        assert_eq!(char_poly_exact(&star).unwrap(), IntPolynomial::from_i64(&[-16, 24, -9, 1]));
        assert_eq!(char_poly_exact(&IntMatrix::zeros(3, 3)).unwrap(), IntPolynomial::monomial(int(1), 3));
        assert_eq!(char_poly_exact(&IntMatrix::zeros(0, 0)).unwrap(), IntPolynomial::one());
        assert_eq!(char_poly_exact(&IntMatrix::zeros(1, 2)), Err(Error::NonSquare { rows: 1, cols: 2 }));
    }

    #[test]
    fn charpoly_identity_examples() {
        let ctx = MeshContext::with_default_tree(Multigraph::complete(3)).unwrap();
        let r = verify_charpoly_identity(&ctx, true).unwrap();
        assert!(r.holds());
        assert_eq!(r.mesh_det, int(3));

        let k4 = Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let ctx = MeshContext::new(k4, subset(&[0, 1, 2])).unwrap();
        let r = verify_charpoly_identity(&ctx, true).unwrap();
        assert!(r.holds());
        assert_eq!(r.mesh_det, int(16));
        assert_eq!(r.mesh_charpoly, IntPolynomial::from_i64(&[-16, 24, -9, 1]));
    }
}
