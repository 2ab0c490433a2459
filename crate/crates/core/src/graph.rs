//! Bitmask representation of small simple undirected graphs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest supported node count; a [`NodeSet`] is a single `u32`.
pub const MAX_NODES: usize = 32;

const EDGE_WORDS: usize = 8;
const NO_EDGE: u16 = u16::MAX;

/// Set of node indices as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeSet(pub u32);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    /// All nodes `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_NODES);
        if n == 32 {
            NodeSet(u32::MAX)
        } else {
            NodeSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        NodeSet(1 << v)
    }

    pub fn from_nodes<I: IntoIterator<Item = usize>>(nodes: I) -> Self {
        NodeSet(nodes.into_iter().fold(0, |acc, v| acc | (1 << v)))
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        BitIter(self.0 as u64)
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Set of edge positions (indices into [`Graph::edges`]).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct EdgeSet([u64; EDGE_WORDS]);

impl EdgeSet {
    /// Edge positions `0..e`.
    pub fn full(e: usize) -> Self {
        let mut s = EdgeSet::default();
        for i in 0..e {
            s.insert(i);
        }
        s
    }

    /// Builds a set from the low `e` bits of a word; used by the spectrum code.
    pub fn from_mask(mask: u64) -> Self {
        let mut s = EdgeSet::default();
        s.0[0] = mask;
        s
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    /// Low 64 positions as a word, `None` if any higher position is set.
    pub fn as_mask(&self) -> Option<u64> {
        self.0[1..].iter().all(|&w| w == 0).then_some(self.0[0])
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(w, &bits)| BitIter(bits).map(move |b| w * 64 + b))
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = EdgeSet::default();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// Immutable simple undirected graph on at most [`MAX_NODES`] nodes.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically; an
/// edge's position in that list is its index in an [`EdgeSet`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
    edges: Vec<(u8, u8)>,
    index: Vec<u16>,
}

impl Graph {
    /// Builds a graph, normalising each pair to `(min, max)`.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_NODES {
            return Err(Error::TooManyNodes(n));
        }
        let mut adj = vec![0u32; n];
        let mut list = Vec::new();
        for (a, b) in edges {
            for node in [a, b] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let (u, v) = (a.min(b), a.max(b));
            if adj[u] >> v & 1 == 1 {
                return Err(Error::DuplicateEdge(u, v));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
            list.push((u as u8, v as u8));
        }
        list.sort_unstable();
        Ok(Self::assemble(n, adj, list))
    }

    /// Builds a graph from symmetric adjacency masks (no diagonal bits).
    pub fn from_adjacency(adj: &[u32]) -> Result<Self> {
        let n = adj.len();
        if n > MAX_NODES {
            return Err(Error::TooManyNodes(n));
        }
        let mut edges = Vec::new();
        for u in 0..n {
            if adj[u] >> u & 1 == 1 {
                return Err(Error::SelfLoop(u));
            }
            for v in u + 1..n {
                let uv = adj[u] >> v & 1 == 1;
                if uv != (adj[v] >> u & 1 == 1) {
                    return Err(Error::InvalidParameter(format!(
                        "adjacency not symmetric at {u}-{v}"
                    )));
                }
                if uv {
                    edges.push((u, v));
                }
            }
            if n < 32 && adj[u] >> n != 0 {
                return Err(Error::NodeOutOfRange { node: 31 - adj[u].leading_zeros() as usize, n });
            }
        }
        Graph::new(n, edges)
    }

    fn assemble(n: usize, adj: Vec<u32>, edges: Vec<(u8, u8)>) -> Self {
        let mut index = vec![NO_EDGE; n * n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            index[u as usize * n + v as usize] = i as u16;
            index[v as usize * n + u as usize] = i as u16;
        }
        Graph { n, adj, edges, index }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted edge list.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    #[inline]
    pub fn edge(&self, i: usize) -> (usize, usize) {
        let (u, v) = self.edges[i];
        (u as usize, v as usize)
    }

    /// Position of edge `uv` in the sorted edge list.
    #[inline]
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        match self.index[u * self.n + v] {
            NO_EDGE => None,
            i => Some(i as usize),
        }
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> NodeSet {
        NodeSet(self.adj[v])
    }

    /// Raw adjacency masks, one per node.
    #[inline]
    pub fn adjacency(&self) -> &[u32] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn nodes(&self) -> NodeSet {
        NodeSet::full(self.n)
    }

    /// Edges `E_v` incident to `v`.
    pub fn incident_edges(&self, v: usize) -> EdgeSet {
        self.neighbors(v)
            .iter()
            .map(|u| self.edge_index(u, v).expect("adjacency and index agree"))
            .collect()
    }

    /// Number of edges with both ends in `a`.
    pub fn induced_edge_count(&self, a: NodeSet) -> usize {
        a.iter().map(|v| (self.adj[v] & a.0).count_ones() as usize).sum::<usize>() / 2
    }

    /// Edge positions with both ends in `a`.
    pub fn induced_edges(&self, a: NodeSet) -> EdgeSet {
        self.edges()
            .enumerate()
            .filter(|&(_, (u, v))| a.contains(u) && a.contains(v))
            .map(|(i, _)| i)
            .collect()
    }

    /// Nodes reachable from `start` using only the edges in `kept`.
    pub fn reachable_within(&self, start: usize, kept: &EdgeSet) -> NodeSet {
        let mut seen = NodeSet::singleton(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for w in self.neighbors(u).iter() {
                if !seen.contains(w) && kept.contains(self.edge_index(u, w).unwrap()) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Whether the subgraph induced by `a` is connected (empty sets are not).
    pub fn is_connected_within(&self, a: NodeSet) -> bool {
        if a.is_empty() {
            return false;
        }
        let start = a.0.trailing_zeros();
        let mut seen = 1u32 << start;
        loop {
            let mut next = seen;
            for v in NodeSet(seen).iter() {
                next |= self.adj[v] & a.0;
            }
            if next == seen {
                return seen == a.0;
            }
            seen = next;
        }
    }

    /// Connected in the usual sense; the one-node graph counts as connected
    /// and the empty graph does not.
    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.nodes())
    }

    /// Complement graph on the same node set.
    pub fn complement(&self) -> Graph {
        let full = NodeSet::full(self.n).0;
        let adj: Vec<u32> = (0..self.n).map(|v| !self.adj[v] & full & !(1 << v)).collect();
        Graph::from_adjacency(&adj).expect("complement of a simple graph is simple")
    }

    /// Image under the relabelling `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter("permutation length differs from n".into()));
        }
        let mut seen = NodeSet::EMPTY;
        for &p in perm {
            if p >= self.n || seen.contains(p) {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen.insert(p);
        }
        Graph::new(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// The graph with the edges at the given positions removed.
    pub fn without_edges(&self, removed: &EdgeSet) -> Graph {
        Graph::new(
            self.n,
            self.edges().enumerate().filter(|(i, _)| !removed.contains(*i)).map(|(_, e)| e),
        )
        .expect("subgraph of a simple graph is simple")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_simple_input() {
        assert_eq!(Graph::new(3, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(Graph::new(3, [(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(3, [(0, 3)]), Err(Error::NodeOutOfRange { node: 3, n: 3 }));
        assert_eq!(Graph::new(33, []), Err(Error::TooManyNodes(33)));
    }

    #[test]
    fn edge_list_sorted_and_indexed() {
        let g = Graph::new(4, [(3, 2), (1, 0), (0, 2)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (2, 3)]);
        for (i, (u, v)) in g.edges().enumerate() {
            assert_eq!(g.edge_index(u, v), Some(i));
            assert_eq!(g.edge_index(v, u), Some(i));
        }
        assert_eq!(g.edge_index(1, 3), None);
        assert!(g.has_edge(2, 3) && g.has_edge(3, 2));
    }

    #[test]
    fn full_width_node_set() {
        assert_eq!(NodeSet::full(32).len(), 32);
        let g = Graph::new(32, (0..31).map(|i| (i, i + 1))).unwrap();
        assert!(g.is_connected());
        assert_eq!(g.complement().edge_count(), 32 * 31 / 2 - 31);
    }

    #[test]
    fn edge_set_beyond_one_word() {
        let mut s = EdgeSet::full(130);
        assert_eq!(s.len(), 130);
        s.remove(64);
        assert!(!s.contains(64) && s.contains(129));
        assert_eq!(s.as_mask(), None);
        assert_eq!(EdgeSet::from_mask(0b101).iter().collect::<Vec<_>>(), vec![0, 2]);
    }
}
