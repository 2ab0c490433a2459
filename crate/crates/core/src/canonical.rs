//! Canonical labelling and automorphism-group order.
//!
//! Both use ordered partitions refined to equitable form. The canonical form
//! is the lexicographically smallest upper-triangle adjacency bitstring (in
//! graph6 column order) over the leaves of the individualisation–refinement
//! tree; automorphisms found beforehand prune equivalent branches.

use crate::graph6::pack_bits;
use crate::Graph;

type Partition = Vec<Vec<usize>>;

/// Splits cells until every vertex of a cell has the same number of
/// neighbours in every other cell. Sub-cells are ordered by that number, so
/// the result does not depend on vertex labels.
fn refine(adj: &[u32], mut cells: Partition) -> Partition {
    let mut w = 0;
    while w < cells.len() {
        let splitter: u32 = cells[w].iter().fold(0, |m, &v| m | 1 << v);
        let mut changed = false;
        let mut x = 0;
        while x < cells.len() {
            if cells[x].len() > 1 {
                let count = |v: usize| (adj[v] & splitter).count_ones();
                let first = count(cells[x][0]);
                if cells[x].iter().any(|&v| count(v) != first) {
                    let mut keyed: Vec<(u32, usize)> = cells[x].iter().map(|&v| (count(v), v)).collect();
                    keyed.sort_unstable();
                    let mut parts: Partition = Vec::new();
                    for (c, v) in keyed {
                        match parts.last_mut() {
                            Some(p) if count(p[0]) == c => p.push(v),
                            _ => parts.push(vec![v]),
                        }
                    }
                    let added = parts.len();
                    cells.splice(x..=x, parts);
                    x += added;
                    changed = true;
                    continue;
                }
            }
            x += 1;
        }
        // a split can make earlier splitters informative again
        w = if changed { 0 } else { w + 1 };
    }
    cells
}

fn individualize(adj: &[u32], cells: &Partition, v: usize) -> Partition {
    let mut out = Vec::with_capacity(cells.len() + 1);
    for cell in cells {
        if cell.len() > 1 && cell.contains(&v) {
            out.push(vec![v]);
            out.push(cell.iter().copied().filter(|&u| u != v).collect());
        } else {
            out.push(cell.clone());
        }
    }
    refine(adj, out)
}

fn target_cell(cells: &Partition) -> Option<usize> {
    cells.iter().position(|c| c.len() > 1)
}

/// Cell sizes plus neighbour counts between cells; equal for two equitable
/// partitions that an automorphism could map onto each other.
fn quotient(adj: &[u32], cells: &Partition) -> Vec<u32> {
    let masks: Vec<u32> = cells.iter().map(|c| c.iter().fold(0, |m, &v| m | 1 << v)).collect();
    let mut q = Vec::with_capacity(cells.len() * (cells.len() + 1));
    for cell in cells {
        q.push(cell.len() as u32);
        for &m in &masks {
            q.push((adj[cell[0]] & m).count_ones());
        }
    }
    q
}

fn is_automorphism(adj: &[u32], perm: &[usize]) -> bool {
    (0..adj.len()).all(|u| {
        let image = crate::NodeSet(adj[u]).iter().fold(0u32, |m, v| m | 1 << perm[v]);
        image == adj[perm[u]]
    })
}

/// Searches for an automorphism mapping partition `a` onto `b` cell by cell.
fn extend(adj: &[u32], a: &Partition, b: &Partition) -> Option<Vec<usize>> {
    if a.len() != b.len() || quotient(adj, a) != quotient(adj, b) {
        return None;
    }
    match target_cell(a) {
        None => {
            let mut perm = vec![0; adj.len()];
            for (ca, cb) in a.iter().zip(b) {
                perm[ca[0]] = cb[0];
            }
            is_automorphism(adj, &perm).then_some(perm)
        }
        Some(t) => {
            let x = a[t][0];
            let a2 = individualize(adj, a, x);
            b[t].iter().find_map(|&y| extend(adj, &a2, &individualize(adj, b, y)))
        }
    }
}

struct Orbits(Vec<usize>);

impl Orbits {
    fn new(n: usize) -> Self {
        Orbits((0..n).collect())
    }

    fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = v;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn absorb(&mut self, perm: &[usize]) {
        for (v, &w) in perm.iter().enumerate() {
            let (a, b) = (self.find(v), self.find(w));
            if a != b {
                self.0[a.max(b)] = a.min(b);
            }
        }
    }
}

/// Automorphism group order and a generating set, from a stabiliser chain
/// along the first vertex of each target cell.
fn automorphisms(g: &Graph) -> (u128, Vec<Vec<usize>>) {
    let adj = g.adjacency();
    let n = g.node_count();
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut order: u128 = 1;
    let mut cells = refine(adj, vec![(0..n).collect()]);
    if n == 0 {
        return (1, gens);
    }
    while let Some(t) = target_cell(&cells) {
        let x = cells[t][0];
        let base = individualize(adj, &cells, x);
        // generators found at this level fix every earlier base point
        let mut orbits = Orbits::new(n);
        let mut level_gens: Vec<Vec<usize>> = Vec::new();
        let mut size = 1u128;
        for &y in &cells[t][1..] {
            if orbits.find(y) == orbits.find(x) {
                size += 1;
                continue;
            }
            if let Some(perm) = extend(adj, &base, &individualize(adj, &cells, y)) {
                orbits.absorb(&perm);
                level_gens.push(perm);
                size += 1;
            }
        }
        order *= size;
        gens.extend(level_gens);
        cells = base;
    }
    (order, gens)
}

/// Order of the automorphism group.
pub fn automorphism_count(g: &Graph) -> u128 {
    automorphisms(g).0
}

type Columns = Vec<u32>;

fn leaf_columns(adj: &[u32], order: &[usize]) -> Columns {
    (1..order.len())
        .map(|j| {
            (0..j).fold(0u32, |col, i| col << 1 | (adj[order[i]] >> order[j] & 1))
        })
        .collect()
}

struct CanonSearch<'a> {
    adj: &'a [u32],
    gens: Vec<Vec<usize>>,
    best: Option<(Columns, Vec<usize>)>,
}

impl CanonSearch<'_> {
    fn run(&mut self, cells: Partition, path: &mut Vec<usize>) {
        let Some(t) = target_cell(&cells) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let cols = leaf_columns(self.adj, &order);
            if self.best.as_ref().is_none_or(|(b, _)| cols < *b) {
                self.best = Some((cols, order));
            }
            return;
        };
        let n = self.adj.len();
        let mut orbits = Orbits::new(n);
        for perm in &self.gens {
            if path.iter().all(|&p| perm[p] == p) {
                orbits.absorb(perm);
            }
        }
        let mut seen: Vec<usize> = Vec::new();
        for &v in &cells[t] {
            let root = orbits.find(v);
            if seen.contains(&root) {
                continue;
            }
            seen.push(root);
            path.push(v);
            let child = individualize(self.adj, &cells, v);
            self.run(child, path);
            path.pop();
        }
    }
}

/// Vertex order whose relabelled graph is the canonical representative:
/// `order[i]` becomes node `i`.
pub fn canonical_order(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    if n <= 1 {
        return (0..n).collect();
    }
    let adj = g.adjacency();
    let mut search = CanonSearch { adj, gens: automorphisms(g).1, best: None };
    search.run(refine(adj, vec![(0..n).collect()]), &mut Vec::new());
    search.best.expect("the search reaches at least one leaf").1
}

/// Canonical relabelling of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    let order = canonical_order(g);
    let mut perm = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        perm[v] = i;
    }
    g.relabel(&perm).expect("order is a permutation")
}

/// graph6 text of the canonical relabelling; equal exactly for isomorphic
/// graphs.
pub fn canonical_form(g: &Graph) -> String {
    let order = canonical_order(g);
    let n = order.len();
    let adj = g.adjacency();
    let order = &order;
    pack_bits(n, (1..n).flat_map(|j| (0..j).map(move |i| adj[order[i]] >> order[j] & 1 == 1)))
}
