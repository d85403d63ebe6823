//! Oriented multigraphs with loops and parallel edges.
//!
//! Edge ids are stable: deleting or contracting an edge never renumbers the
//! surviving edges, so edge subsets of a minor can be compared directly with
//! edge subsets of the parent graph.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Graphs with at most this many edges are enumerated by subset filtering.
const SUBSET_ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    /// The endpoint opposite to `v`; `None` if `v` is not an endpoint.
    pub fn other(&self, v: usize) -> Option<usize> {
        if v == self.tail {
            Some(self.head)
        } else if v == self.head {
            Some(self.tail)
        } else {
            None
        }
    }
}

/// A set of edge ids, iterated in ascending order.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSubset(BTreeSet<EdgeId>);

impl EdgeSubset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.0.contains(&id)
    }

    pub fn insert(&mut self, id: EdgeId) -> bool {
        self.0.insert(id)
    }

    pub fn remove(&mut self, id: EdgeId) -> bool {
        self.0.remove(&id)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.0.iter().copied()
    }

    pub fn ids(&self) -> Vec<usize> {
        self.0.iter().map(|e| e.0).collect()
    }
}

impl FromIterator<EdgeId> for EdgeSubset {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl FromIterator<usize> for EdgeSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self(iter.into_iter().map(EdgeId).collect())
    }
}

/// Union-find over vertex indices.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }

    pub(crate) fn component_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }
}

/// Oriented multigraph. Edges are kept sorted by id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl Multigraph {
    /// Builds a graph whose edges get ids `0, 1, 2, ...` in the given order.
    pub fn new(vertex_count: usize, endpoints: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let edges = endpoints
            .into_iter()
            .enumerate()
            .map(|(i, (tail, head))| Edge { id: EdgeId(i), tail, head })
            .collect();
        Self::from_edges(vertex_count, edges)
    }

    /// Builds a graph from explicit edge records, keeping their ids.
    pub fn from_edges(vertex_count: usize, mut edges: Vec<Edge>) -> Result<Self> {
        if vertex_count == 0 && !edges.is_empty() {
            return Err(Error::InvalidGraph("edges on a graph with no vertices".into()));
        }
        for e in &edges {
            if e.tail >= vertex_count || e.head >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge {} = ({}, {}) has an endpoint outside 0..{}",
                    e.id, e.tail, e.head, vertex_count
                )));
            }
        }
        edges.sort_by_key(|e| e.id);
        if let Some(w) = edges.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::InvalidGraph(format!("duplicate edge id {}", w[0].id)));
        }
        Ok(Self { vertex_count, edges })
    }

    /// The canonical empty graph.
    pub fn empty() -> Self {
        Self { vertex_count: 0, edges: Vec::new() }
    }

    pub fn complete(n: usize) -> Self {
        let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Self::new(n, pairs).expect("complete graph endpoints are in range")
    }

    pub fn cycle(n: usize) -> Self {
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle endpoints are in range")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("path endpoints are in range")
    }

    /// Petersen graph: outer 5-cycle, spokes, inner pentagram.
    pub fn petersen() -> Self {
        let mut pairs = Vec::with_capacity(15);
        for i in 0..5 {
            pairs.push((i, (i + 1) % 5));
        }
        for i in 0..5 {
            pairs.push((i, i + 5));
        }
        for i in 0..5 {
            pairs.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::new(10, pairs).expect("petersen endpoints are in range")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|e| e.id)
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .map(|i| &self.edges[i])
            .map_err(|_| Error::UnknownEdge(id))
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.edge(id).is_ok()
    }

    /// Smallest id not used by any edge.
    pub fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.edges.last().map_or(0, |e| e.id.0 + 1))
    }

    /// Checks that every member of `subset` is an edge of this graph.
    pub fn check_subset(&self, subset: &EdgeSubset) -> Result<()> {
        match subset.iter().find(|&id| !self.contains_edge(id)) {
            Some(id) => Err(Error::UnknownEdge(id)),
            None => Ok(()),
        }
    }

    /// Incident edges per vertex in ascending id order. Loops appear once.
    pub fn incidence_lists(&self) -> Vec<Vec<EdgeId>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            inc[e.tail].push(e.id);
            if !e.is_loop() {
                inc[e.head].push(e.id);
            }
        }
        inc
    }

    /// Component label per vertex, labels numbered by smallest member vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut ds = DisjointSets::new(self.vertex_count);
        for e in &self.edges {
            ds.union(e.tail, e.head);
        }
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut root_label = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for (v, slot) in label.iter_mut().enumerate() {
            let r = ds.find(v);
            if root_label[r] == usize::MAX {
                root_label[r] = next;
                next += 1;
            }
            *slot = root_label[r];
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    /// True iff every pair of vertices is joined by a path. The empty graph
    /// is not connected.
    pub fn is_connected(&self) -> bool {
        self.vertex_count > 0 && self.component_count() == 1
    }

    /// Deterministic spanning tree grown from vertex 0, always taking the
    /// lowest-id edge that leaves the current vertex set.
    pub fn spanning_tree(&self) -> Result<EdgeSubset> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let inc = self.incidence_lists();
        let mut visited = vec![false; self.vertex_count];
        let mut tree = EdgeSubset::new();
        let mut frontier = BinaryHeap::new();
        visited[0] = true;
        frontier.extend(inc[0].iter().map(|&id| Reverse(id)));
        while let Some(Reverse(id)) = frontier.pop() {
            let e = self.edge(id)?;
            let next = match (visited[e.tail], visited[e.head]) {
                (true, false) => e.head,
                (false, true) => e.tail,
                _ => continue,
            };
            visited[next] = true;
            tree.insert(id);
            frontier.extend(inc[next].iter().map(|&id| Reverse(id)));
        }
        debug_assert_eq!(tree.len() + 1, self.vertex_count);
        Ok(tree)
    }

    /// True iff `subset` is the edge set of a spanning tree.
    pub fn is_spanning_tree(&self, subset: &EdgeSubset) -> bool {
        if self.vertex_count == 0 || subset.len() + 1 != self.vertex_count {
            return false;
        }
        let mut ds = DisjointSets::new(self.vertex_count);
        subset.iter().all(|id| match self.edge(id) {
            Ok(e) => ds.union(e.tail, e.head),
            Err(_) => false,
        })
    }

    pub fn delete_edge(&self, id: EdgeId) -> Result<Self> {
        self.edge(id)?;
        Ok(Self {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().filter(|e| e.id != id).copied().collect(),
        })
    }

    /// Merges the endpoints of a non-loop edge. The merged vertex takes the
    /// smaller index and vertices above the larger index shift down by one.
    pub fn contract_edge(&self, id: EdgeId) -> Result<Self> {
        let e = *self.edge(id)?;
        if e.is_loop() {
            return Err(Error::LoopContraction(id));
        }
        let (keep, gone) = (e.tail.min(e.head), e.tail.max(e.head));
        let relabel = |v: usize| match v.cmp(&gone) {
            std::cmp::Ordering::Less => v,
            std::cmp::Ordering::Equal => keep,
            std::cmp::Ordering::Greater => v - 1,
        };
        let edges = self
            .edges
            .iter()
            .filter(|f| f.id != id)
            .map(|f| Edge { id: f.id, tail: relabel(f.tail), head: relabel(f.head) })
            .collect();
        Ok(Self { vertex_count: self.vertex_count - 1, edges })
    }

    /// Same vertices, only the edges in `subset`.
    pub fn restrict(&self, subset: &EdgeSubset) -> Result<Self> {
        self.check_subset(subset)?;
        Ok(Self {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().filter(|e| subset.contains(e.id)).copied().collect(),
        })
    }

    /// Flips the orientation of one edge.
    pub fn reorient(&self, id: EdgeId) -> Result<Self> {
        self.edge(id)?;
        let edges = self
            .edges
            .iter()
            .map(|e| if e.id == id { Edge { id, tail: e.head, head: e.tail } } else { *e })
            .collect();
        Ok(Self { vertex_count: self.vertex_count, edges })
    }

    /// Renames edge ids through `map`, which must be injective on this graph.
    pub fn relabel_edges(&self, map: impl Fn(EdgeId) -> EdgeId) -> Result<Self> {
        let edges = self.edges.iter().map(|e| Edge { id: map(e.id), ..*e }).collect();
        Self::from_edges(self.vertex_count, edges)
    }

    /// Appends a new edge with the next free id.
    pub fn with_edge(&self, tail: usize, head: usize) -> Result<(Self, EdgeId)> {
        let id = self.next_edge_id();
        let mut edges = self.edges.clone();
        edges.push(Edge { id, tail, head });
        Ok((Self::from_edges(self.vertex_count, edges)?, id))
    }

    /// All spanning trees in ascending lexicographic order of their sorted
    /// edge ids. Loops never occur in a tree.
    pub fn enumerate_spanning_trees(&self) -> Vec<EdgeSubset> {
        if !self.is_connected() {
            return Vec::new();
        }
        let mut trees = if self.edges.len() <= SUBSET_ENUMERATION_LIMIT {
            self.trees_by_subsets()
        } else {
            let mut out = Vec::new();
            trees_by_recursion(self, &mut Vec::new(), &mut out);
            out.into_iter().map(|t| t.into_iter().collect()).collect()
        };
        trees.sort_by(|a: &EdgeSubset, b| a.iter().cmp(b.iter()));
        trees
    }

    pub fn count_spanning_trees(&self) -> usize {
        self.enumerate_spanning_trees().len()
    }

    fn trees_by_subsets(&self) -> Vec<EdgeSubset> {
        let candidates: Vec<&Edge> = self.edges.iter().filter(|e| !e.is_loop()).collect();
        let k = self.vertex_count - 1;
        let mut out = Vec::new();
        for combo in Combinations::new(candidates.len(), k) {
            let mut ds = DisjointSets::new(self.vertex_count);
            if combo.iter().all(|&i| ds.union(candidates[i].tail, candidates[i].head)) {
                out.push(combo.iter().map(|&i| candidates[i].id).collect());
            }
        }
        out
    }

    /// Graph text format: `v <n>` then one `e <tail> <head>` per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("v {}\n", self.vertex_count);
        for e in &self.edges {
            s.push_str(&format!("e {} {}\n", e.tail, e.head));
        }
        s
    }
}

fn trees_by_recursion(g: &Multigraph, chosen: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
    if !g.is_connected() {
        return;
    }
    let Some(e) = g.edges.iter().find(|e| !e.is_loop()) else {
        if g.vertex_count == 1 {
            let mut t = chosen.clone();
            t.sort();
            out.push(t);
        }
        return;
    };
    let id = e.id;
    if let Ok(deleted) = g.delete_edge(id) {
        trees_by_recursion(&deleted, chosen, out);
    }
    if let Ok(contracted) = g.contract_edge(id) {
        chosen.push(id);
        trees_by_recursion(&contracted, chosen, out);
        chosen.pop();
    }
}

impl FromStr for Multigraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut vertex_count = None;
        let mut endpoints = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse { line: line_no, message };
            let mut parts = line.split_whitespace();
            let keyword = parts.next().unwrap_or_default();
            let nums = parts
                .map(|p| p.parse::<usize>().map_err(|_| parse_err(format!("bad integer {p:?}"))))
                .collect::<Result<Vec<_>>>()?;
            match (keyword, nums.as_slice()) {
                ("v", [n]) => {
                    if vertex_count.is_some() {
                        return Err(parse_err("duplicate `v` line".into()));
                    }
                    vertex_count = Some(*n);
                }
                ("e", [t, h]) => {
                    let n = vertex_count.ok_or_else(|| parse_err("edge before `v` line".into()))?;
                    if *t >= n || *h >= n {
                        return Err(parse_err(format!("endpoint out of range 0..{n}")));
                    }
                    endpoints.push((*t, *h));
                }
                _ => return Err(parse_err(format!("unrecognised line {line:?}"))),
            }
        }
        let n = vertex_count.ok_or(Error::Parse { line: 0, message: "missing `v` line".into() })?;
        Multigraph::new(n, endpoints)
    }
}

/// k-subsets of `0..n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Self { n, current: (k <= n).then(|| (0..k).collect()) }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[usize]) -> EdgeSubset {
        v.iter().copied().collect()
    }

    #[test]
    fn connectivity() {
        assert!(Multigraph::complete(3).is_connected());
        assert!(!Multigraph::new(2, []).unwrap().is_connected());
        assert!(Multigraph::new(1, [(0, 0)]).unwrap().is_connected());
        assert!(Multigraph::new(1, []).unwrap().is_connected());
        assert!(!Multigraph::empty().is_connected());
    }

    #[test]
    fn spanning_tree_examples() {
        let k3 = Multigraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(k3.spanning_tree().unwrap(), ids(&[0, 1]));
        assert_eq!(Multigraph::new(1, []).unwrap().spanning_tree().unwrap(), ids(&[]));
        assert_eq!(Multigraph::path(3).spanning_tree().unwrap(), ids(&[0, 1]));
        assert_eq!(Multigraph::cycle(4).spanning_tree().unwrap(), ids(&[0, 1, 2]));
        assert_eq!(Multigraph::new(2, []).unwrap().spanning_tree(), Err(Error::NotConnected));
    }

    #[test]
    fn spanning_tree_skips_loops_and_parallels() {
        let g = Multigraph::new(3, [(0, 0), (1, 0), (0, 1), (2, 1)]).unwrap();
        assert_eq!(g.spanning_tree().unwrap(), ids(&[1, 3]));
    }

    #[test]
    fn deletion() {
        let k3 = Multigraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let p = k3.delete_edge(EdgeId(2)).unwrap();
        assert_eq!(p, Multigraph::path(3));
        let looped = Multigraph::new(2, [(0, 1), (1, 1)]).unwrap();
        assert_eq!(looped.delete_edge(EdgeId(1)).unwrap().vertex_count(), 2);
        let digon = Multigraph::new(2, [(0, 1), (1, 0)]).unwrap();
        let rest = digon.delete_edge(EdgeId(0)).unwrap();
        assert_eq!(rest.edges(), &[Edge { id: EdgeId(1), tail: 1, head: 0 }]);
        assert_eq!(k3.delete_edge(EdgeId(7)), Err(Error::UnknownEdge(EdgeId(7))));
    }

    #[test]
    fn contraction() {
        let k3 = Multigraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        let c = k3.contract_edge(EdgeId(2)).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(
            c.edges(),
            &[Edge { id: EdgeId(0), tail: 0, head: 1 }, Edge { id: EdgeId(1), tail: 1, head: 0 }]
        );

        let digon = Multigraph::new(2, [(0, 1), (0, 1)]).unwrap();
        let c = digon.contract_edge(EdgeId(0)).unwrap();
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.edges(), &[Edge { id: EdgeId(1), tail: 0, head: 0 }]);

        let c = Multigraph::path(3).contract_edge(EdgeId(0)).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.edges(), &[Edge { id: EdgeId(1), tail: 0, head: 1 }]);

        let looped = Multigraph::new(1, [(0, 0)]).unwrap();
        assert_eq!(looped.contract_edge(EdgeId(0)), Err(Error::LoopContraction(EdgeId(0))));
    }

    #[test]
    fn enumeration_small_cases() {
        let k3 = Multigraph::complete(3);
        assert_eq!(k3.enumerate_spanning_trees(), vec![ids(&[0, 1]), ids(&[0, 2]), ids(&[1, 2])]);
        assert_eq!(Multigraph::complete(4).count_spanning_trees(), 16);
        assert!(Multigraph::new(2, []).unwrap().enumerate_spanning_trees().is_empty());
        assert_eq!(Multigraph::new(1, [(0, 0)]).unwrap().enumerate_spanning_trees(), vec![ids(&[])]);
    }

    #[test]
    fn cayley_counts() {
        for n in 1..=6usize {
            let expected = if n == 1 { 1 } else { n.pow(n as u32 - 2) };
            assert_eq!(Multigraph::complete(n).count_spanning_trees(), expected, "K{n}");
        }
    }

    #[test]
    fn recursion_matches_subset_filtering() {
        // K7 has 21 edges, so it goes through the recursive path.
        let k7 = Multigraph::complete(7);
        assert_eq!(k7.count_spanning_trees(), 7usize.pow(5));
        let k5 = Multigraph::complete(5);
        let mut rec = Vec::new();
        trees_by_recursion(&k5, &mut Vec::new(), &mut rec);
        let mut rec: Vec<EdgeSubset> = rec.into_iter().map(|t| t.into_iter().collect()).collect();
        rec.sort_by(|a, b| a.iter().cmp(b.iter()));
        assert_eq!(rec, k5.enumerate_spanning_trees());
    }

    #[test]
    fn parse_round_trip() {
        let text = "# triangle\nv 3\ne 0 1\n\ne 1 2\ne 2 0\n";
        let g: Multigraph = text.parse().unwrap();
        assert_eq!(g, Multigraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap());
        assert_eq!(g.to_text().parse::<Multigraph>().unwrap(), g);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("e 0 1\n".parse::<Multigraph>(), Err(Error::Parse { line: 1, .. })));
        assert!(matches!("v 2\ne 0 2\n".parse::<Multigraph>(), Err(Error::Parse { line: 2, .. })));
        assert!(matches!("v 2\nx\n".parse::<Multigraph>(), Err(Error::Parse { line: 2, .. })));
        assert!(matches!("".parse::<Multigraph>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn combinations_are_lexicographic() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(Combinations::new(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }
}
