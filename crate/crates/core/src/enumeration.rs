//! Isomorphism-free generation of small graph classes.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::canonical::{canonical_form, canonical_graph};
use crate::census::connectivity_census;
use crate::{Error, Graph, Result, MAX_NODES};

/// Node degrees sorted in nondecreasing order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn new(mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable();
        DegreeSequence(degrees)
    }

    pub fn of(g: &Graph) -> Self {
        Self::new(g.degrees())
    }

    pub fn degrees(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.0.first().copied()
    }

    /// Erdős–Gallai test.
    pub fn is_graphical(&self) -> bool {
        is_graphical(&self.0)
    }
}

impl std::fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Erdős–Gallai on an arbitrary multiset of degrees.
pub fn is_graphical(degrees: &[usize]) -> bool {
    let mut d = degrees.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let n = d.len();
    if d.iter().sum::<usize>() % 2 == 1 || d.first().is_some_and(|&top| top > 0 && top >= n) {
        return false;
    }
    let mut left = 0usize;
    for k in 1..=n {
        left += d[k - 1];
        let right = k * (k - 1) + d[k..].iter().map(|&x| x.min(k)).sum::<usize>();
        if left > right {
            return false;
        }
    }
    true
}

/// Every graphical nondecreasing sequence of length `n` summing to `2e`
/// with entries in `min_deg..=max_deg`.
pub fn graphical_sequences(n: usize, e: usize, min_deg: usize, max_deg: usize) -> Vec<DegreeSequence> {
    let mut out = Vec::new();
    if n == 0 || n > MAX_NODES {
        if n == 0 && e == 0 {
            out.push(DegreeSequence(Vec::new()));
        }
        return out;
    }
    let max_deg = max_deg.min(n - 1);
    let mut current = Vec::with_capacity(n);
    fn rec(n: usize, left: usize, lo: usize, hi: usize, cur: &mut Vec<usize>, out: &mut Vec<DegreeSequence>) {
        let slots = n - cur.len();
        if slots == 0 {
            if left == 0 && is_graphical(cur) {
                out.push(DegreeSequence(cur.clone()));
            }
            return;
        }
        for d in lo..=hi {
            if d * slots > left {
                break;
            }
            if hi * slots < left {
                return;
            }
            cur.push(d);
            rec(n, left - d, d, hi, cur, out);
            cur.pop();
        }
    }
    if min_deg <= max_deg {
        rec(n, 2 * e, min_deg, max_deg, &mut current, &mut out);
    }
    out
}

/// Which graphs to generate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFilter {
    pub n: usize,
    pub e: usize,
    #[serde(default)]
    pub connected: bool,
    #[serde(default)]
    pub biconnected: bool,
    #[serde(default)]
    pub regular: bool,
    /// Exact minimum degree.
    #[serde(default)]
    pub min_degree: Option<usize>,
    #[serde(default)]
    pub degree_sequence: Option<DegreeSequence>,
}

impl ClassFilter {
    pub fn new(n: usize, e: usize) -> Self {
        ClassFilter { n, e, ..Default::default() }
    }

    pub fn connected(mut self) -> Self {
        self.connected = true;
        self
    }

    pub fn biconnected(mut self) -> Self {
        self.biconnected = true;
        self.connected = true;
        self
    }

    pub fn regular(mut self) -> Self {
        self.regular = true;
        self
    }

    pub fn min_degree(mut self, delta: usize) -> Self {
        self.min_degree = Some(delta);
        self
    }

    pub fn degree_sequence(mut self, seq: DegreeSequence) -> Self {
        self.degree_sequence = Some(seq);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n > MAX_NODES {
            return Err(Error::TooManyNodes(self.n));
        }
        if self.e > self.n * self.n.saturating_sub(1) / 2 {
            return Err(Error::Filter(format!("{} edges do not fit on {} nodes", self.e, self.n)));
        }
        if self.regular && self.n > 0 && !(2 * self.e).is_multiple_of(self.n) {
            return Err(Error::Filter(format!("no regular graph has {} nodes and {} edges", self.n, self.e)));
        }
        if let Some(seq) = &self.degree_sequence {
            if seq.len() != self.n || seq.sum() != 2 * self.e {
                return Err(Error::Filter(format!("degree sequence {seq} does not fit n = {}, e = {}", self.n, self.e)));
            }
            if let Some(delta) = self.min_degree {
                if seq.min_degree() != Some(delta) {
                    return Err(Error::Filter(format!("degree sequence {seq} has minimum degree other than {delta}")));
                }
            }
        }
        Ok(())
    }

    /// Degree sequences compatible with the filter.
    pub fn sequences(&self) -> Vec<DegreeSequence> {
        if let Some(seq) = &self.degree_sequence {
            return if seq.is_graphical() && self.seq_ok(seq) { vec![seq.clone()] } else { Vec::new() };
        }
        let lo = self.min_degree.unwrap_or(0);
        let hi = self.n.saturating_sub(1);
        graphical_sequences(self.n, self.e, lo, hi)
            .into_iter()
            .filter(|s| self.seq_ok(s))
            .collect()
    }

    fn seq_ok(&self, s: &DegreeSequence) -> bool {
        let d = s.degrees();
        if self.min_degree.is_some_and(|delta| d.first() != Some(&delta)) {
            return false;
        }
        if self.regular && d.first() != d.last() {
            return false;
        }
        if self.connected && self.n > 1 && d.first() == Some(&0) {
            return false;
        }
        if self.biconnected && self.n > 2 && d.first().is_some_and(|&m| m < 2) {
            return false;
        }
        true
    }

    /// Re-checks a generated graph from scratch.
    pub fn matches(&self, g: &Graph) -> bool {
        if g.node_count() != self.n || g.edge_count() != self.e {
            return false;
        }
        let seq = DegreeSequence::of(g);
        if !self.seq_ok(&seq) {
            return false;
        }
        if self.degree_sequence.as_ref().is_some_and(|s| *s != seq) {
            return false;
        }
        if self.connected || self.biconnected {
            let census = connectivity_census(g);
            if self.connected && !census.connected {
                return false;
            }
            if self.biconnected && !census.biconnected {
                return false;
            }
        }
        true
    }
}

struct Budget {
    limit: Option<u64>,
    used: AtomicU64,
}

impl Budget {
    fn new(limit: Option<u64>) -> Self {
        Budget { limit, used: AtomicU64::new(0) }
    }

    fn spend(&self, amount: u64) -> Result<()> {
        let used = self.used.fetch_add(amount, Ordering::Relaxed) + amount;
        match self.limit {
            Some(limit) if used > limit => Err(Error::BudgetExceeded(limit)),
            _ => Ok(()),
        }
    }
}

/// One canonical representative per isomorphism class in the filter, sorted
/// by canonical graph6. Generation backtracks adjacency rows per degree
/// sequence; `budget` caps the number of search nodes.
pub fn enumerate_class(filter: &ClassFilter, budget: Option<u64>) -> Result<Vec<Graph>> {
    filter.validate()?;
    let budget = Budget::new(budget);
    let sequences = filter.sequences();
    let run = |seq: &DegreeSequence| -> Result<Vec<(String, Graph)>> {
        let mut found: HashSet<String> = HashSet::new();
        let mut out = Vec::new();
        let mut rows = RowSearch::new(seq.degrees(), &budget);
        rows.run(0, &mut |adj: &[u32]| {
            let g = Graph::from_adjacency(adj).expect("backtracking yields simple graphs");
            if filter.matches(&g) {
                let form = canonical_form(&g);
                if found.insert(form.clone()) {
                    out.push((form, canonical_graph(&g)));
                }
            }
        })?;
        Ok(out)
    };

    #[cfg(feature = "parallel")]
    let parts: Vec<Result<Vec<(String, Graph)>>> = {
        use rayon::prelude::*;
        sequences.par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Result<Vec<(String, Graph)>>> = sequences.iter().map(run).collect();

    let mut all = Vec::new();
    for part in parts {
        all.extend(part?);
    }
    all.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(all.into_iter().map(|(_, g)| g).collect())
}

/// Backtracking over vertices in order: vertex `i` picks its later
/// neighbours to meet its residual degree.
struct RowSearch<'a> {
    n: usize,
    degree: Vec<usize>,
    residual: Vec<usize>,
    adj: Vec<u32>,
    budget: &'a Budget,
}

impl<'a> RowSearch<'a> {
    fn new(degrees: &[usize], budget: &'a Budget) -> Self {
        RowSearch {
            n: degrees.len(),
            degree: degrees.to_vec(),
            residual: degrees.to_vec(),
            adj: vec![0; degrees.len()],
            budget,
        }
    }

    fn run(&mut self, i: usize, emit: &mut dyn FnMut(&[u32])) -> Result<()> {
        self.budget.spend(1)?;
        if i == self.n {
            emit(&self.adj);
            return Ok(());
        }
        let need = self.residual[i];
        // later vertices with equal degree and equal adjacency to the
        // processed prefix are interchangeable, so only the lowest-index
        // members of each class are ever chosen
        let prefix = if i == 0 { 0 } else { u32::MAX >> (32 - i) };
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for j in i + 1..self.n {
            if self.residual[j] == 0 {
                continue;
            }
            let key = (self.degree[j], self.adj[j] & prefix);
            match classes.iter_mut().find(|c| (self.degree[c[0]], self.adj[c[0]] & prefix) == key) {
                Some(c) => c.push(j),
                None => classes.push(vec![j]),
            }
        }
        let available: usize = classes.iter().map(Vec::len).sum();
        if available < need {
            return Ok(());
        }
        let mut take = vec![0usize; classes.len()];
        self.choose(i, 0, need, &classes, &mut take, emit)
    }

    fn choose(
        &mut self,
        i: usize,
        class: usize,
        need: usize,
        classes: &[Vec<usize>],
        take: &mut [usize],
        emit: &mut dyn FnMut(&[u32]),
    ) -> Result<()> {
        if need == 0 {
            let chosen: Vec<usize> = classes
                .iter()
                .zip(take.iter())
                .flat_map(|(c, &t)| c[..t].iter().copied())
                .collect();
            for &j in &chosen {
                self.adj[i] |= 1 << j;
                self.adj[j] |= 1 << i;
                self.residual[j] -= 1;
            }
            self.residual[i] = 0;
            let rest: Vec<usize> = self.residual[i + 1..].to_vec();
            let result = if is_graphical(&rest) { self.run(i + 1, emit) } else { Ok(()) };
            for &j in &chosen {
                self.adj[i] &= !(1 << j);
                self.adj[j] &= !(1 << i);
                self.residual[j] += 1;
            }
            self.residual[i] = chosen.len();
            return result;
        }
        if class == classes.len() {
            return Ok(());
        }
        let remaining: usize = classes[class..].iter().map(Vec::len).sum();
        if remaining < need {
            return Ok(());
        }
        for t in (0..=classes[class].len().min(need)).rev() {
            take[class] = t;
            self.choose(i, class + 1, need - t, classes, take, emit)?;
        }
        take[class] = 0;
        Ok(())
    }
}

/// Independent backend: grow every graph on `n` nodes one edge at a time,
/// keeping one canonical representative per class at each edge count.
/// `budget` caps the number of canonical-form computations.
pub fn enumerate_by_augmentation(filter: &ClassFilter, budget: Option<u64>) -> Result<Vec<Graph>> {
    filter.validate()?;
    let budget = Budget::new(budget);
    let n = filter.n;
    let mut level: BTreeMap<String, Graph> = BTreeMap::new();
    let empty = Graph::new(n, [])?;
    level.insert(canonical_form(&empty), empty);
    for _ in 0..filter.e {
        let grow = |g: &Graph| -> Result<Vec<(String, Graph)>> {
            let mut out = Vec::new();
            for v in 0..n {
                for u in 0..v {
                    if g.has_edge(u, v) {
                        continue;
                    }
                    budget.spend(1)?;
                    let mut edges: Vec<(usize, usize)> = g.edges().collect();
                    edges.push((u, v));
                    let h = Graph::new(n, edges)?;
                    let h = canonical_graph(&h);
                    out.push((crate::graph6::to_graph6(&h), h));
                }
            }
            Ok(out)
        };
        let graphs: Vec<&Graph> = level.values().collect();

        #[cfg(feature = "parallel")]
        let parts: Vec<Result<Vec<(String, Graph)>>> = {
            use rayon::prelude::*;
            graphs.par_iter().map(|g| grow(g)).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let parts: Vec<Result<Vec<(String, Graph)>>> = graphs.iter().map(|g| grow(g)).collect();

        let mut next = BTreeMap::new();
        for part in parts {
            for (form, g) in part? {
                next.entry(form).or_insert(g);
            }
        }
        level = next;
    }
    Ok(level.into_values().filter(|g| filter.matches(g)).collect())
}

/// Class sizes split by minimum degree, regularity and biconnectivity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratification {
    pub total: usize,
    pub delta_counts: BTreeMap<usize, usize>,
    pub regular_count: usize,
    pub biconnected_count: usize,
    pub biconnected_delta_counts: BTreeMap<usize, usize>,
}

pub fn stratify_graphs(graphs: &[Graph]) -> Stratification {
    let mut s = Stratification {
        total: graphs.len(),
        delta_counts: BTreeMap::new(),
        regular_count: 0,
        biconnected_count: 0,
        biconnected_delta_counts: BTreeMap::new(),
    };
    for g in graphs {
        let seq = DegreeSequence::of(g);
        let delta = seq.min_degree().unwrap_or(0);
        *s.delta_counts.entry(delta).or_default() += 1;
        if seq.degrees().first() == seq.degrees().last() {
            s.regular_count += 1;
        }
        if connectivity_census(g).biconnected {
            s.biconnected_count += 1;
            *s.biconnected_delta_counts.entry(delta).or_default() += 1;
        }
    }
    s
}

pub fn stratify(filter: &ClassFilter, budget: Option<u64>) -> Result<Stratification> {
    Ok(stratify_graphs(&enumerate_class(filter, budget)?))
}

/// Canonical forms of a list of graphs, for dedup checks.
pub fn distinct_forms(graphs: &[Graph]) -> BTreeSet<String> {
    graphs.iter().map(canonical_form).collect()
}
