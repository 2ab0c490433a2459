//! Structural invariants: degrees, girth, short cycles, cut structure,
//! boundaries and small connected node sets.

use std::collections::VecDeque;

use serde::{Serialize, Serializer};

use crate::{EdgeSet, Error, Graph, NodeSet, Result};

/// Length of a shortest cycle, or `Acyclic` for forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Girth {
    Cycle(usize),
    Acyclic,
}

impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Girth::Cycle(len) => s.serialize_u64(*len as u64),
            Girth::Acyclic => s.serialize_str("acyclic"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralCensus {
    /// Nondecreasing.
    pub degree_sequence: Vec<usize>,
    pub min_degree: usize,
    pub is_regular: bool,
    pub girth: Girth,
    pub triangle_count: usize,
    /// Distinct 4-cycles, each counted once as a subgraph.
    pub square_count: usize,
    pub has_triangle: bool,
}

pub fn structural_census(g: &Graph) -> StructuralCensus {
    let mut degree_sequence = g.degrees();
    degree_sequence.sort_unstable();
    let min_degree = degree_sequence.first().copied().unwrap_or(0);
    let is_regular = degree_sequence.first() == degree_sequence.last();
    let triangle_count = triangle_count(g);
    StructuralCensus {
        min_degree,
        is_regular,
        girth: girth(g),
        triangle_count,
        square_count: square_count(g),
        has_triangle: triangle_count > 0,
        degree_sequence,
    }
}

/// Shortest cycle by a BFS from every node.
pub fn girth(g: &Graph) -> Girth {
    let n = g.node_count();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] >= best {
                break;
            }
            for w in g.neighbors(u).iter() {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Acyclic
    } else {
        Girth::Cycle(best)
    }
}

/// Triangles via common neighbourhoods of each edge, counted once.
pub fn triangle_count(g: &Graph) -> usize {
    g.edges()
        .map(|(u, v)| {
            let above = !((2u64 << v) - 1) as u32;
            (g.neighbors(u).0 & g.neighbors(v).0 & above).count_ones() as usize
        })
        .sum()
}

/// Distinct 4-cycles.
///
/// Each 4-cycle has two diagonals; summing `C(common(x, y), 2)` over all
/// unordered pairs counts every cycle once per diagonal.
pub fn square_count(g: &Graph) -> usize {
    let n = g.node_count();
    let mut twice = 0usize;
    for x in 0..n {
        for y in x + 1..n {
            let c = (g.neighbors(x).0 & g.neighbors(y).0).count_ones() as usize;
            twice += c * c.saturating_sub(1) / 2;
        }
    }
    twice / 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityCensus {
    pub connected: bool,
    pub biconnected: bool,
    pub bridges: EdgeSet,
    pub cut_points: NodeSet,
}

/// Bridges and cut-points by DFS low-link.
pub fn connectivity_census(g: &Graph) -> ConnectivityCensus {
    let n = g.node_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut bridges = EdgeSet::default();
    let mut cut_points = NodeSet::EMPTY;
    let mut time = 0;
    let mut components = 0;

    // iterative DFS; frame = (node, parent, remaining neighbours, child count)
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        components += 1;
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut stack = vec![(root, usize::MAX, g.neighbors(root).0, 0usize)];
        while let Some(frame) = stack.last_mut() {
            let (u, parent) = (frame.0, frame.1);
            if frame.2 != 0 {
                let w = frame.2.trailing_zeros() as usize;
                frame.2 &= frame.2 - 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    frame.3 += 1;
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, u, g.neighbors(w).0, 0));
                } else {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                let children = frame.3;
                stack.pop();
                if let Some(up) = stack.last() {
                    let p = up.0;
                    low[p] = low[p].min(low[u]);
                    if low[u] > disc[p] {
                        bridges.insert(g.edge_index(p, u).unwrap());
                    }
                    if up.1 != usize::MAX && low[u] >= disc[p] {
                        cut_points.insert(p);
                    }
                } else if children > 1 {
                    cut_points.insert(u);
                }
            }
        }
    }
    let connected = components == 1;
    ConnectivityCensus {
        connected,
        biconnected: connected && n > 2 && cut_points.is_empty(),
        bridges,
        cut_points,
    }
}

/// Edges with exactly one end in `a`.
pub fn boundary(g: &Graph, a: NodeSet) -> Result<EdgeSet> {
    if a.is_empty() || a.0 & !g.nodes().0 != 0 || a == g.nodes() {
        return Err(Error::NoBoundary);
    }
    Ok(g.edges()
        .enumerate()
        .filter(|&(_, (u, v))| a.contains(u) != a.contains(v))
        .map(|(i, _)| i)
        .collect())
}

/// Node sets of the given order inducing a connected subgraph with at most
/// `max_boundary` boundary edges, each listed once, in increasing mask order.
pub fn connected_subgraphs(g: &Graph, order: usize, max_boundary: usize) -> Vec<NodeSet> {
    let mut out: Vec<u32> = Vec::new();
    if order == 0 || order > g.node_count() {
        return Vec::new();
    }
    let adj = g.adjacency();
    for v in 0..g.node_count() {
        let above = if v == 31 { 0 } else { !((2u32 << v) - 1) };
        extend_connected(adj, 1 << v, adj[v] & above, adj[v] | 1 << v, above, order, &mut out);
    }
    let degree_sum = |a: NodeSet| a.iter().map(|v| g.degree(v)).sum::<usize>();
    out.retain(|&a| degree_sum(NodeSet(a)) - 2 * g.induced_edge_count(NodeSet(a)) <= max_boundary);
    out.sort_unstable();
    out.into_iter().map(NodeSet).collect()
}

// ESU-style extension: every connected set is produced exactly once, grown
// from its smallest node.
fn extend_connected(
    adj: &[u32],
    sub: u32,
    mut ext: u32,
    closed: u32,
    allowed: u32,
    order: usize,
    out: &mut Vec<u32>,
) {
    if sub.count_ones() as usize == order {
        out.push(sub);
        return;
    }
    while ext != 0 {
        let w = ext.trailing_zeros() as usize;
        ext &= ext - 1;
        let fresh = adj[w] & !closed & allowed;
        extend_connected(adj, sub | 1 << w, ext | fresh, closed | adj[w], allowed, order, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;
    use crate::{binomial, Family};

    fn k44() -> Graph {
        Family::CompleteBipartite(4, 4).build().unwrap()
    }

    #[test]
    fn census_examples() {
        let c = structural_census(&k44());
        assert_eq!((c.triangle_count, c.square_count, c.girth), (0, 36, Girth::Cycle(4)));
        assert!(!c.has_triangle);

        let c = structural_census(&builders::complete(4).unwrap());
        assert_eq!((c.triangle_count, c.girth), (4, Girth::Cycle(3)));
        assert_eq!(c.square_count, 3);

        let c = structural_census(&builders::cycle(8).unwrap());
        assert_eq!((c.triangle_count, c.square_count, c.girth), (0, 0, Girth::Cycle(8)));

        let c = structural_census(&builders::path(5).unwrap());
        assert_eq!(c.girth, Girth::Acyclic);
        assert_eq!(c.degree_sequence, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn squares_in_complete_graphs() {
        // K_n has 3 C(n,4) four-cycles
        for n in 4..=9 {
            let c = structural_census(&builders::complete(n).unwrap());
            assert_eq!(c.square_count as u64, 3 * binomial(n as i64, 4).unwrap());
        }
    }

    #[test]
    fn connectivity_examples() {
        let c = connectivity_census(&builders::path(3).unwrap());
        assert_eq!((c.bridges.len(), c.cut_points.len(), c.biconnected), (2, 1, false));

        let c = connectivity_census(&k44());
        assert!(c.biconnected && c.bridges.is_empty());

        let bowtie = Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let c = connectivity_census(&bowtie);
        assert_eq!(c.bridges.len(), 0);
        assert_eq!(c.cut_points, NodeSet::singleton(2));
        assert!(c.connected && !c.biconnected);

        let split = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let c = connectivity_census(&split);
        assert!(!c.connected && !c.biconnected);
        assert_eq!(c.bridges.len(), 2);

        assert!(!connectivity_census(&builders::complete(2).unwrap()).biconnected);
    }

    #[test]
    fn boundary_examples() {
        let g = k44();
        // parts are {0..4} and {4..8}
        assert_eq!(boundary(&g, NodeSet::singleton(0)).unwrap().len(), 4);
        assert_eq!(boundary(&g, NodeSet::from_nodes([0, 4])).unwrap().len(), 6);
        let square = NodeSet::from_nodes([0, 1, 4, 5]);
        assert_eq!(g.induced_edge_count(square), 4);
        assert_eq!(boundary(&g, square).unwrap().len(), 4 * 4 - 2 * 4);
        assert_eq!(boundary(&g, NodeSet::EMPTY), Err(Error::NoBoundary));
        assert_eq!(boundary(&g, g.nodes()), Err(Error::NoBoundary));
    }

    #[test]
    fn connected_subgraph_examples() {
        let g = k44();
        let singles = connected_subgraphs(&g, 1, 4);
        assert_eq!(singles.len(), 8);
        let paths = connected_subgraphs(&g, 3, 8);
        assert_eq!(paths.len(), 6 * 8);
        assert_eq!(connected_subgraphs(&g, 2, 6).len(), 16);
        let c5 = builders::cycle(5).unwrap();
        assert_eq!(connected_subgraphs(&c5, 1, usize::MAX).len(), 5);
        assert_eq!(connected_subgraphs(&c5, 2, usize::MAX).len(), 5);
        assert!(connected_subgraphs(&c5, 0, 10).is_empty());
    }

    #[test]
    fn connected_subgraphs_match_brute_force() {
        let g = builders::petersen();
        for order in 1..=5 {
            let brute = (0u32..1 << 10)
                .filter(|m| m.count_ones() as usize == order && g.is_connected_within(NodeSet(*m)))
                .count();
            assert_eq!(connected_subgraphs(&g, order, usize::MAX).len(), brute);
        }
    }
}
