//! Integer 1-chains, tree paths, the map `D` and fundamental cycles.
//!
//! For a cotree edge `e`, `D(e)` is the signed tree path from `head(e)` back
//! to `tail(e)`, so `Z[e] = e + D(e)` is a cycle.

use std::collections::{BTreeMap, HashMap};
use std::ptr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSubset, Multigraph};

/// Sparse integer combination of oriented edges of one host graph.
#[derive(Debug, Clone)]
pub struct OneChain<'g> {
    host: &'g Multigraph,
    coeffs: BTreeMap<EdgeId, BigInt>,
}

impl PartialEq for OneChain<'_> {
    fn eq(&self, other: &Self) -> bool {
        ptr::eq(self.host, other.host) && self.coeffs == other.coeffs
    }
}

impl<'g> OneChain<'g> {
    pub fn zero(host: &'g Multigraph) -> Self {
        Self { host, coeffs: BTreeMap::new() }
    }

    pub fn unit(host: &'g Multigraph, e: EdgeId) -> Result<Self> {
        let mut c = Self::zero(host);
        c.add_term(e, BigInt::one())?;
        Ok(c)
    }

    pub fn from_terms(host: &'g Multigraph, terms: impl IntoIterator<Item = (EdgeId, BigInt)>) -> Result<Self> {
        let mut c = Self::zero(host);
        for (e, k) in terms {
            c.add_term(e, k)?;
        }
        Ok(c)
    }

    pub fn host(&self) -> &'g Multigraph {
        self.host
    }

    pub fn add_term(&mut self, e: EdgeId, k: BigInt) -> Result<()> {
        self.host.edge(e)?;
        let slot = self.coeffs.entry(e).or_default();
        *slot += k;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
        Ok(())
    }

    pub fn coeff(&self, e: EdgeId) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (EdgeId, &BigInt)> {
        self.coeffs.iter().map(|(&e, k)| (e, k))
    }

    pub fn support(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same_host(&self, other: &Self) -> Result<()> {
        if ptr::eq(self.host, other.host) {
            Ok(())
        } else {
            Err(Error::HostMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_host(other)?;
        let mut out = self.clone();
        for (e, k) in other.terms() {
            out.add_term(e, k.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.host);
        }
        Self { host: self.host, coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * k)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigInt::one()))
    }

    /// Intersection pairing `Σ_e a(e)·b(e)`.
    pub fn inner_product(&self, other: &Self) -> Result<BigInt> {
        self.same_host(other)?;
        Ok(self.terms().map(|(e, k)| k * other.coeff(e)).sum())
    }

    /// `Σ_e a(e)·(head(e) − tail(e))`; loops contribute nothing.
    pub fn boundary(&self) -> BTreeMap<usize, BigInt> {
        let mut out: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (e, k) in self.terms() {
            let edge = self.host.edge(e).expect("chain edges belong to the host");
            if edge.is_loop() {
                continue;
            }
            *out.entry(edge.head).or_default() += k;
            *out.entry(edge.tail).or_default() -= k;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

/// A graph with a chosen spanning tree and the edge orderings used to index
/// mesh matrices: cotree edges `e_1..e_N` and tree edges `f_1..f_M`, both in
/// ascending id order.
#[derive(Debug, Clone)]
pub struct MeshContext {
    graph: Multigraph,
    tree: EdgeSubset,
    tree_order: Vec<EdgeId>,
    cotree_order: Vec<EdgeId>,
    tree_index: HashMap<EdgeId, usize>,
    cotree_index: HashMap<EdgeId, usize>,
    /// Parent vertex and connecting tree edge, rooted at vertex 0.
    parent: Vec<Option<(usize, EdgeId)>>,
    depth: Vec<usize>,
}

impl MeshContext {
    pub fn new(graph: Multigraph, tree: EdgeSubset) -> Result<Self> {
        graph.check_subset(&tree)?;
        if !graph.is_connected() {
            return Err(Error::NotConnected);
        }
        if !graph.is_spanning_tree(&tree) {
            return Err(Error::InvalidTree(format!("{:?} is not a spanning tree", tree.ids())));
        }
        let tree_order: Vec<EdgeId> = tree.iter().collect();
        let cotree_order: Vec<EdgeId> = graph.edge_ids().filter(|&e| !tree.contains(e)).collect();
        let tree_index = tree_order.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let cotree_index = cotree_order.iter().enumerate().map(|(i, &e)| (e, i)).collect();

        let n = graph.vertex_count();
        let mut adjacency = vec![Vec::new(); n];
        for id in tree.iter() {
            let e = graph.edge(id)?;
            adjacency[e.tail].push((e.head, id));
            adjacency[e.head].push((e.tail, id));
        }
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(w, id) in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((v, id));
                    depth[w] = depth[v] + 1;
                    stack.push(w);
                }
            }
        }
        Ok(Self { graph, tree, tree_order, cotree_order, tree_index, cotree_index, parent, depth })
    }

    /// Context with the deterministic default spanning tree.
    pub fn with_default_tree(graph: Multigraph) -> Result<Self> {
        let tree = graph.spanning_tree()?;
        Self::new(graph, tree)
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn tree(&self) -> &EdgeSubset {
        &self.tree
    }

    pub fn tree_order(&self) -> &[EdgeId] {
        &self.tree_order
    }

    pub fn cotree_order(&self) -> &[EdgeId] {
        &self.cotree_order
    }

    pub fn tree_position(&self, e: EdgeId) -> Option<usize> {
        self.tree_index.get(&e).copied()
    }

    pub fn cotree_position(&self, e: EdgeId) -> Option<usize> {
        self.cotree_index.get(&e).copied()
    }

    pub fn is_cotree(&self, e: EdgeId) -> bool {
        self.cotree_index.contains_key(&e)
    }

    /// Tree edges on the path between two vertices, as `(from, to, edge)`
    /// steps in traversal order.
    pub fn tree_path_steps(&self, from: usize, to: usize) -> Vec<(usize, usize, EdgeId)> {
        let (mut a, mut b) = (from, to);
        let mut up = Vec::new();
        let mut down = Vec::new();
        while self.depth[a] > self.depth[b] {
            let (p, e) = self.parent[a].expect("non-root vertex has a parent");
            up.push((a, p, e));
            a = p;
        }
        while self.depth[b] > self.depth[a] {
            let (p, e) = self.parent[b].expect("non-root vertex has a parent");
            down.push((p, b, e));
            b = p;
        }
        while a != b {
            let (pa, ea) = self.parent[a].expect("non-root vertex has a parent");
            let (pb, eb) = self.parent[b].expect("non-root vertex has a parent");
            up.push((a, pa, ea));
            down.push((pb, b, eb));
            a = pa;
            b = pb;
        }
        up.extend(down.into_iter().rev());
        up
    }

    /// Signed chain of tree edges along the path `from → to`.
    pub fn tree_path(&self, from: usize, to: usize) -> OneChain<'_> {
        let mut chain = OneChain::zero(&self.graph);
        for (a, _, id) in self.tree_path_steps(from, to) {
            let e = self.graph.edge(id).expect("tree edge exists");
            let sign = if e.tail == a { BigInt::one() } else { -BigInt::one() };
            chain.add_term(id, sign).expect("tree edge exists");
        }
        chain
    }

    fn require_cotree(&self, e: EdgeId) -> Result<()> {
        self.graph.edge(e)?;
        if self.is_cotree(e) {
            Ok(())
        } else {
            Err(Error::NotCotreeEdge(e))
        }
    }

    /// `D(e)`: zero for loops, otherwise the tree path `head(e) → tail(e)`.
    pub fn d_map(&self, e: EdgeId) -> Result<OneChain<'_>> {
        self.require_cotree(e)?;
        let edge = self.graph.edge(e)?;
        Ok(if edge.is_loop() { OneChain::zero(&self.graph) } else { self.tree_path(edge.head, edge.tail) })
    }

    /// `Z[e] = e + D(e)`.
    pub fn fundamental_cycle(&self, e: EdgeId) -> Result<OneChain<'_>> {
        let mut z = self.d_map(e)?;
        z.add_term(e, BigInt::one())?;
        Ok(z)
    }

    pub fn fundamental_cycles(&self) -> Vec<OneChain<'_>> {
        self.cotree_order
            .iter()
            .map(|&e| self.fundamental_cycle(e).expect("cotree edges have cycles"))
            .collect()
    }

    /// Number of tree edges on the path between the endpoints of `e`.
    pub fn path_length(&self, e: EdgeId) -> Result<usize> {
        let edge = self.graph.edge(e)?;
        Ok(self.tree_path_steps(edge.head, edge.tail).len())
    }
}

/// True iff all coefficients are in {−1, 0, +1}.
pub fn is_unimodular_chain(c: &OneChain<'_>) -> bool {
    c.terms().all(|(_, k)| k.abs().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3_ctx() -> MeshContext {
        let g = Multigraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        MeshContext::new(g, [0usize, 1].into_iter().collect()).unwrap()
    }

    fn chain<'g>(g: &'g Multigraph, terms: &[(usize, i64)]) -> OneChain<'g> {
        OneChain::from_terms(g, terms.iter().map(|&(e, k)| (EdgeId(e), BigInt::from(k)))).unwrap()
    }

    #[test]
    fn tree_paths() {
        let ctx = MeshContext::with_default_tree(Multigraph::path(3)).unwrap();
        let g = ctx.graph();
        assert_eq!(ctx.tree_path(0, 2), chain(g, &[(0, 1), (1, 1)]));
        assert_eq!(ctx.tree_path(2, 0), chain(g, &[(0, -1), (1, -1)]));
        assert!(ctx.tree_path(1, 1).is_zero());
    }

    #[test]
    fn d_map_examples() {
        let ctx = k3_ctx();
        assert_eq!(ctx.d_map(EdgeId(2)).unwrap(), chain(ctx.graph(), &[(0, 1), (1, 1)]));
        assert_eq!(ctx.d_map(EdgeId(0)), Err(Error::NotCotreeEdge(EdgeId(0))));

        let looped = Multigraph::new(2, [(0, 1), (1, 1)]).unwrap();
        let ctx = MeshContext::with_default_tree(looped).unwrap();
        assert!(ctx.d_map(EdgeId(1)).unwrap().is_zero());

        let digon = Multigraph::new(2, [(0, 1), (1, 0)]).unwrap();
        let ctx = MeshContext::with_default_tree(digon).unwrap();
        assert_eq!(ctx.d_map(EdgeId(1)).unwrap(), chain(ctx.graph(), &[(0, 1)]));
    }

    #[test]
    fn fundamental_cycle_examples() {
        let ctx = k3_ctx();
        let z = ctx.fundamental_cycle(EdgeId(2)).unwrap();
        assert_eq!(z, chain(ctx.graph(), &[(0, 1), (1, 1), (2, 1)]));
        assert!(z.boundary().is_empty());
        assert_eq!(z.inner_product(&z).unwrap(), BigInt::from(3));
        assert_eq!(z.inner_product(&OneChain::zero(ctx.graph())).unwrap(), BigInt::zero());

        let looped = Multigraph::new(1, [(0, 0)]).unwrap();
        let ctx = MeshContext::with_default_tree(looped).unwrap();
        assert_eq!(ctx.fundamental_cycle(EdgeId(0)).unwrap(), chain(ctx.graph(), &[(0, 1)]));
    }

    #[test]
    fn boundary_examples() {
        let g = Multigraph::new(2, [(0, 1), (1, 1)]).unwrap();
        let b = chain(&g, &[(0, 1)]).boundary();
        assert_eq!(b, BTreeMap::from([(0, BigInt::from(-1)), (1, BigInt::from(1))]));
        assert!(chain(&g, &[(1, 5)]).boundary().is_empty());
    }

    #[test]
    fn host_mismatch() {
        let a = Multigraph::path(2);
        let b = Multigraph::path(2);
        let ca = chain(&a, &[(0, 1)]);
        let cb = chain(&b, &[(0, 1)]);
        assert_eq!(ca.inner_product(&cb), Err(Error::HostMismatch));
    }

    #[test]
    fn invalid_tree_rejected() {
        let g = Multigraph::complete(3);
        assert!(matches!(MeshContext::new(g.clone(), [0usize].into_iter().collect()), Err(Error::InvalidTree(_))));
        assert!(matches!(MeshContext::new(g, [0usize, 9].into_iter().collect()), Err(Error::UnknownEdge(_))));
    }
}
