//! Independent oracles and input generators shared by the integration tests.
//!
//! Nothing here calls the library's determinant, polynomial, eigenvalue or
//! Smith-form code; graphs are handed to the library only as inputs.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;

use meshtree::cw::CwComplex;
use meshtree::smith::integer_kernel_basis;
use meshtree::{EdgeSubset, IntMatrix, Multigraph};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

pub fn endpoints(g: &Multigraph) -> Vec<(usize, usize)> {
    g.edges().iter().map(|e| (e.tail, e.head)).collect()
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Whether the listed edges form a forest on `n` vertices.
pub fn is_forest(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

pub fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    n > 0 && (0..n).all(|v| find(&mut parent, v) == find(&mut parent, 0))
}

/// Index sets of size `k` from `0..n`, by bitmask.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

/// Spanning trees by brute force over `(n−1)`-subsets of positions.
pub fn brute_spanning_trees(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    subsets(edges.len(), n - 1)
        .into_iter()
        .filter(|s| is_forest(n, &s.iter().map(|&i| edges[i]).collect::<Vec<_>>()))
        .collect()
}

/// `counts[j]` = spanning trees meeting the complement of `tree` (edge
/// positions) in exactly `j` edges.
pub fn brute_graded_counts(n: usize, edges: &[(usize, usize)], tree: &[usize]) -> Vec<i64> {
    let outside = edges.len() - tree.len();
    let mut counts = vec![0i64; outside + 1];
    for t in brute_spanning_trees(n, edges) {
        counts[t.iter().filter(|i| !tree.contains(i)).count()] += 1;
    }
    counts
}

/// Fraction-free elimination on `i128`.
pub fn det_i128(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// `Deg − Adj`, loops ignored, parallels counted.
pub fn laplacian(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<i128>> {
    let mut l = vec![vec![0i128; n]; n];
    for &(a, b) in edges {
        if a != b {
            l[a][a] += 1;
            l[b][b] += 1;
            l[a][b] -= 1;
            l[b][a] -= 1;
        }
    }
    l
}

/// Matrix-tree count: determinant of the Laplacian with row and column 0 removed.
pub fn kirchhoff_count(n: usize, edges: &[(usize, usize)]) -> i128 {
    let l = laplacian(n, edges);
    det_i128(l[1..].iter().map(|row| row[1..].to_vec()).collect())
}

/// Characteristic polynomial `det(X·Id − M)`, ascending coefficients, by the
/// Faddeev–LeVerrier recursion over the rationals.
pub fn charpoly(m: &[Vec<i128>]) -> Vec<BigRational> {
    let n = m.len();
    let a: Vec<Vec<BigRational>> =
        m.iter().map(|row| row.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::from_integer(1.into());
    let mut mk = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigRational::zero();
                for l in 0..n {
                    s += &a[i][l] * &mk[l][j];
                }
                next[i][j] = s;
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        mk = next;
        let mut trace = BigRational::zero();
        for i in 0..n {
            for l in 0..n {
                trace += &a[i][l] * &mk[l][i];
            }
        }
        coeffs[n - k] = -trace / BigRational::from_integer(BigInt::from(k));
    }
    coeffs
}

pub fn charpoly_of(m: &IntMatrix) -> Vec<BigRational> {
    charpoly(&to_i128(m))
}

pub fn to_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    m.to_rows().iter().map(|row| row.iter().map(|x| x.to_i128().expect("small entry")).collect()).collect()
}

pub fn to_f64(m: &IntMatrix) -> Vec<Vec<f64>> {
    m.to_rows().iter().map(|row| row.iter().map(|x| x.to_f64().expect("finite")).collect()).collect()
}

/// Cyclic Jacobi rotations until the off-diagonal mass is negligible.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Smallest eigenvalue above `1e-9·(1 + max |entry|)`.
pub fn oracle_min_positive(m: &IntMatrix) -> Option<f64> {
    let a = to_f64(m);
    let max = a.iter().flatten().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let tol = 1e-9 * (1.0 + max);
    jacobi_eigenvalues(a).into_iter().find(|&v| v > tol)
}

pub fn rank_i128(m: &[Vec<i128>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        for i in 0..rows {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rank][c];
                for j in c..cols {
                    let v = &f * &a[rank][j];
                    a[i][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Gcd of all `r × r` minors, `r` the rank: the product of the invariant
/// factors, i.e. the torsion order of the cokernel.
pub fn cokernel_torsion(m: &[Vec<i128>]) -> i128 {
    let r = rank_i128(m);
    if r == 0 {
        return 1;
    }
    let (rows, cols) = (m.len(), m[0].len());
    let mut g = 0;
    for rs in subsets(rows, r) {
        for cs in subsets(cols, r) {
            let minor = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
            g = gcd(g, det_i128(minor));
        }
    }
    g
}

/// Connected multigraphs on at most four vertices with at most six edges,
/// loops and parallel edges allowed, one per isomorphism class. Edges at odd
/// positions are stored reversed so both orientations occur.
pub fn sweep_graphs() -> Vec<Multigraph> {
    let mut out = Vec::new();
    for n in 1..=4usize {
        let types: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for k in 0..=6 {
            for multiset in multisets(types.len(), k) {
                let edges: Vec<(usize, usize)> = multiset.iter().map(|&t| types[t]).collect();
                if !is_connected(n, &edges) {
                    continue;
                }
                let canonical = perms
                    .iter()
                    .map(|p| {
                        let mut e: Vec<(usize, usize)> =
                            edges.iter().map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b]))).collect();
                        e.sort_unstable();
                        e
                    })
                    .min()
                    .expect("at least one permutation");
                if !seen.insert(canonical) {
                    continue;
                }
                let oriented = edges.iter().enumerate().map(|(i, &(a, b))| if i % 2 == 1 { (b, a) } else { (a, b) });
                out.push(Multigraph::new(n, oriented).expect("valid endpoints"));
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Non-decreasing sequences of length `k` over `0..t`.
fn multisets(t: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for prefix in multisets(t, k - 1) {
        let start = prefix.last().copied().unwrap_or(0);
        for x in start..t {
            let mut p = prefix.clone();
            p.push(x);
            out.push(p);
        }
    }
    out
}

/// A random connected multigraph: a random spanning tree on `n` vertices
/// followed by `extra` random edges, loops included when `loops` is set.
pub fn random_connected(rng: &mut impl Rng, n: usize, extra: usize, loops: bool) -> Multigraph {
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
    }
    while edges.len() < n - 1 + extra {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b || loops {
            edges.push((a, b));
        }
    }
    Multigraph::new(n, edges).expect("valid endpoints")
}

/// A random tree of a connected graph, chosen uniformly from the enumeration.
pub fn random_tree(rng: &mut impl Rng, g: &Multigraph) -> EdgeSubset {
    let trees = g.enumerate_spanning_trees();
    trees[rng.gen_range(0..trees.len())].clone()
}

/// Spider: centre 0 and `legs` arms of length two (`0 → aᵢ → bᵢ`), plus
/// chords `bⱼ → bᵢ`. The tree is the union of the arms.
pub fn spider(legs: usize, chords: &[(usize, usize)]) -> (Multigraph, EdgeSubset) {
    let mut edges = Vec::new();
    for i in 0..legs {
        edges.push((0, 1 + 2 * i));
        edges.push((1 + 2 * i, 2 + 2 * i));
    }
    let tree: EdgeSubset = (0..edges.len()).collect();
    for &(i, j) in chords {
        edges.push((2 + 2 * j, 2 + 2 * i));
    }
    (Multigraph::new(1 + 2 * legs, edges).expect("valid spider"), tree)
}

/// A random 2-complex: `∂₁` is the incidence matrix of a random connected
/// multigraph and each 2-cell is a random small integer combination of an
/// integral cycle basis, so `∂₁∂₂ = 0`.
pub fn random_complex(rng: &mut impl Rng, max_top_cells: usize) -> CwComplex {
    loop {
        let n0 = rng.gen_range(1..=3);
        let extra = rng.gen_range(1..=3);
        let g = random_connected(rng, n0, extra, true);
        let d1 = incidence(&g);
        let cycles = integer_kernel_basis(&d1);
        if cycles.cols() == 0 {
            continue;
        }
        let n2 = rng.gen_range(1..=max_top_cells);
        let mut d2 = IntMatrix::zeros(d1.cols(), n2);
        for c in 0..n2 {
            for k in 0..cycles.cols() {
                let coeff = BigInt::from(rng.gen_range(-2i64..=3));
                for r in 0..d1.cols() {
                    let v = d2.get(r, c) + &coeff * cycles.get(r, k);
                    d2.set(r, c, v);
                }
            }
        }
        return CwComplex::new(vec![d1, d2]).expect("boundary of a boundary vanishes");
    }
}

/// `+1` at the head, `−1` at the tail; loops give zero columns.
pub fn incidence(g: &Multigraph) -> IntMatrix {
    let mut m = IntMatrix::zeros(g.vertex_count(), g.edge_count());
    for (j, e) in g.edges().iter().enumerate() {
        if e.tail != e.head {
            m.set(e.head, j, BigInt::from(1));
            m.set(e.tail, j, BigInt::from(-1));
        }
    }
    m
}

/// Positions of the listed edge ids inside `g.edges()`.
pub fn positions(g: &Multigraph, subset: &EdgeSubset) -> Vec<usize> {
    g.edges().iter().enumerate().filter(|(_, e)| subset.contains(e.id)).map(|(i, _)| i).collect()
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Ascending integer coefficients as rationals.
pub fn rationals(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// `p(X − 1)` for ascending coefficients `counts` interpreted as
/// `Σ (−1)^j counts[j] X^(N−j)`.
pub fn shifted_st(counts: &[i64]) -> Vec<BigRational> {
    let n = counts.len() - 1;
    // st(X) = Σ_j (−1)^j counts[j] X^(n−j); return coefficients of st(X − 1).
    let mut out = vec![BigRational::zero(); n + 1];
    for (j, &c) in counts.iter().enumerate() {
        let deg = n - j;
        let sign = if j % 2 == 0 { 1 } else { -1 };
        // (X − 1)^deg = Σ_i C(deg, i) X^i (−1)^(deg−i)
        let mut binom = BigInt::from(1);
        for i in 0..=deg {
            let term_sign = if (deg - i).is_multiple_of(2) { 1 } else { -1 };
            out[i] += BigRational::from_integer(&binom * BigInt::from(sign * term_sign * c));
            binom = binom * BigInt::from(deg - i) / BigInt::from(i + 1);
        }
    }
    out
}

/// Coefficients with trailing zeros removed.
pub fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}
