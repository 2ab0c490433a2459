//! Lower bounds on `m_k` from the trivial cutsets `M^k_v` (all `k`-cutsets
//! containing every edge at `v`) combined by inclusion–exclusion.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{binomial, claims, Error, Graph, NodeSet, Result};

/// Largest node set accepted by [`union_lower_bound`] (`2^|A|` terms).
pub const MAX_BOUND_NODES: usize = 10;

/// `g_k(i) = C(e - i, k - i)`: the number of `k`-edge sets containing a fixed
/// `i`-edge set. Zero when `k < i` or `i > e`.
pub fn g(k: usize, i: usize, e: usize) -> u64 {
    if i > e || k < i {
        return 0;
    }
    binomial((e - i) as i64, (k - i) as i64).expect("e <= 62 keeps binomials in u64")
}

/// The node set `A` behind a bound, with or without its induced edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundContext {
    pub e: usize,
    pub k: usize,
    pub degrees: Vec<usize>,
    /// `adjacency[i]` is a bitmask over positions in `degrees`.
    pub adjacency: Option<Vec<u32>>,
}

impl BoundContext {
    /// Exact context for node set `a` of `g`; positions follow node order.
    pub fn from_graph(g: &Graph, a: NodeSet, k: usize) -> Result<Self> {
        Self::from_nodes(g, &a.iter().collect::<Vec<_>>(), k)
    }

    /// Exact context for `V^h`: the first `h` nodes by (degree, index).
    pub fn degree_prefix(g: &Graph, h: usize, k: usize) -> Result<Self> {
        if h == 0 || h > g.node_count() {
            return Err(Error::InvalidParameter(format!("prefix length {h} outside 1..={}", g.node_count())));
        }
        let mut order: Vec<usize> = g.nodes().iter().collect();
        order.sort_by_key(|&v| (g.degree(v), v));
        Self::from_nodes(g, &order[..h], k)
    }

    fn from_nodes(g: &Graph, nodes: &[usize], k: usize) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidParameter("node set must be nonempty".into()));
        }
        let adjacency = nodes
            .iter()
            .map(|&u| {
                nodes
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| g.has_edge(u, v))
                    .fold(0u32, |m, (j, _)| m | 1 << j)
            })
            .collect();
        let ctx = BoundContext {
            e: g.edge_count(),
            k,
            degrees: nodes.iter().map(|&v| g.degree(v)).collect(),
            adjacency: Some(adjacency),
        };
        ctx.validate()?;
        Ok(ctx)
    }

    /// Context that knows only the degrees of `A`.
    pub fn degrees_only(e: usize, k: usize, degrees: Vec<usize>) -> Result<Self> {
        let ctx = BoundContext { e, k, degrees, adjacency: None };
        ctx.validate()?;
        Ok(ctx)
    }

    fn validate(&self) -> Result<()> {
        let size = self.degrees.len();
        if size == 0 || size > MAX_BOUND_NODES {
            return Err(Error::InvalidParameter(format!(
                "node set size {size} outside 1..={MAX_BOUND_NODES}"
            )));
        }
        if let Some(&d) = self.degrees.iter().find(|&&d| d == 0 || d > self.e) {
            return Err(Error::Infeasible(format!("degree {d} outside 1..={}", self.e)));
        }
        if self.k > self.e {
            return Err(Error::InvalidParameter(format!("k = {} exceeds e = {}", self.k, self.e)));
        }
        Ok(())
    }

    fn degree_sum(&self, s: u32) -> usize {
        NodeSet(s).iter().map(|i| self.degrees[i]).sum()
    }

    fn induced(&self, adjacency: &[u32], s: u32) -> usize {
        NodeSet(s).iter().map(|i| (adjacency[i] & s).count_ones() as usize).sum::<usize>() / 2
    }
}

/// `|⋂_{v ∈ S} M^k_v| = g_k(Σ deg - |E[S]|)` for `S` given as a bitmask over
/// positions of the context.
pub fn intersection_size(ctx: &BoundContext, s: u32) -> Result<u64> {
    let adjacency = ctx.adjacency.as_ref().ok_or(Error::DegreesOnly)?;
    if s == 0 || s >> ctx.degrees.len() != 0 {
        return Err(Error::InvalidParameter("subset must be nonempty and within A".into()));
    }
    Ok(g(ctx.k, ctx.degree_sum(s) - ctx.induced(adjacency, s), ctx.e))
}

/// Degrees-only range of `|⋂_{v ∈ S} M^k_v|` for `|S| = size`:
/// `g_k(Σ deg) ≤ · ≤ g_k(Σ deg - min(k, C(size, 2), ⌊Σ deg / 2⌋))`.
pub fn intersection_range(e: usize, k: usize, degree_sum: usize, size: usize) -> (u64, u64) {
    let pairs = size * size.saturating_sub(1) / 2;
    let cap = k.min(pairs).min(degree_sum / 2);
    (g(k, degree_sum, e), g(k, degree_sum - cap, e))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMode {
    /// Exact intersection sizes from the induced edges.
    ExactGraph,
    /// Worst case over all adjacency patterns compatible with the degrees.
    DegreesOnly,
    /// As `DegreesOnly`, with pair terms chosen by the heaviest adjacency
    /// pattern that respects each node's degree and the edge total.
    Refined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerEntry {
    pub level: usize,
    pub description: String,
    pub sign: i8,
    pub argument: usize,
    pub value: u64,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub bound_value: i64,
    pub mode: BoundMode,
    pub k: usize,
    pub e: usize,
    /// Deepest inclusion–exclusion level included.
    pub depth: usize,
    pub ledger: Vec<LedgerEntry>,
}

impl BoundReport {
    pub fn ledger_sum(&self) -> i64 {
        self.ledger
            .iter()
            .map(|t| t.sign as i64 * t.multiplicity as i64 * t.value as i64)
            .sum()
    }
}

#[derive(Default)]
struct Ledger(BTreeMap<(usize, usize, String), (i8, u64)>);

impl Ledger {
    fn add(&mut self, level: usize, argument: usize, description: String, count: u64) {
        let sign = if level % 2 == 1 { 1 } else { -1 };
        self.0.entry((level, argument, description)).or_insert((sign, 0)).1 += count;
    }

    fn finish(self, ctx: &BoundContext, mode: BoundMode, depth: usize) -> BoundReport {
        let ledger: Vec<LedgerEntry> = self
            .0
            .into_iter()
            .map(|((level, argument, description), (sign, multiplicity))| LedgerEntry {
                level,
                description,
                sign,
                argument,
                value: g(ctx.k, argument, ctx.e),
                multiplicity,
            })
            .collect();
        let mut report = BoundReport { bound_value: 0, mode, k: ctx.k, e: ctx.e, depth, ledger };
        report.bound_value = report.ledger_sum();
        report
    }
}

/// Inclusion–exclusion lower bound on `m_k` from `⋃_{v ∈ A} M^k_v`.
///
/// `depth = None` expands every level; `Some(d)` keeps levels `1..=d`, rounded
/// down to an even level so the truncation stays a lower bound.
pub fn union_lower_bound(ctx: &BoundContext, mode: BoundMode, depth: Option<usize>) -> Result<BoundReport> {
    ctx.validate()?;
    let size = ctx.degrees.len();
    let depth = match depth {
        None => size,
        Some(d) if d >= size => size,
        Some(d) if d >= 2 => d - d % 2,
        Some(d) => {
            return Err(Error::InvalidParameter(format!(
                "truncation depth {d} is below the first subtraction level"
            )))
        }
    };
    let adjacency = match (mode, &ctx.adjacency) {
        (BoundMode::ExactGraph, None) => return Err(Error::DegreesOnly),
        (_, adj) => adj.as_deref(),
    };
    let mut ledger = Ledger::default();
    if mode == BoundMode::Refined && depth >= 2 {
        refined_pairs(ctx, &mut ledger);
    }
    for s in 1u32..1 << size {
        let level = s.count_ones() as usize;
        if level > depth || (level == 2 && mode == BoundMode::Refined) {
            continue;
        }
        let sum = ctx.degree_sum(s);
        let (argument, description) = match mode {
            BoundMode::ExactGraph => {
                let inside = ctx.induced(adjacency.expect("checked above"), s);
                (sum - inside, format!("degree sum {sum}, {inside} induced edges"))
            }
            _ if level % 2 == 1 => (sum, format!("degree sum {sum}, induced edges ignored")),
            _ => {
                let pairs = level * (level - 1) / 2;
                let mut cap = pairs.min(sum / 2).min(ctx.e);
                if mode == BoundMode::DegreesOnly {
                    cap = cap.min(ctx.k);
                }
                (sum - cap, format!("degree sum {sum}, at most {cap} induced edges"))
            }
        };
        if g(ctx.k, argument, ctx.e) > 0 {
            ledger.add(level, argument, description, 1);
        }
    }
    Ok(ledger.finish(ctx, mode, depth))
}

/// Pair level of the refined bound. Every pair contributes `g(du + dv)` and
/// the adjacent ones `g(du + dv - 1)`; the adjacency pattern maximising the
/// subtraction is chosen under per-node degree caps and the edge total.
fn refined_pairs(ctx: &BoundContext, ledger: &mut Ledger) {
    let size = ctx.degrees.len();
    let mut pairs: Vec<(usize, usize, u64)> = Vec::new();
    for u in 0..size {
        for v in u + 1..size {
            let s = ctx.degrees[u] + ctx.degrees[v];
            let weight = g(ctx.k, s - 1, ctx.e) - g(ctx.k, s, ctx.e);
            pairs.push((u, v, weight));
        }
    }
    let degree_total: usize = ctx.degrees.iter().sum();
    let limit = pairs.len().min(degree_total / 2).min(ctx.e);
    let chosen = max_weight_pattern(&ctx.degrees, &pairs, limit);
    for (idx, &(u, v, _)) in pairs.iter().enumerate() {
        let (du, dv) = (ctx.degrees[u].min(ctx.degrees[v]), ctx.degrees[u].max(ctx.degrees[v]));
        let (argument, kind) = if chosen[idx] {
            (du + dv - 1, "adjacent")
        } else {
            (du + dv, "non-adjacent")
        };
        if g(ctx.k, argument, ctx.e) > 0 {
            ledger.add(2, argument, format!("pair of degrees ({du}, {dv}) taken {kind}"), 1);
        }
    }
}

/// Branch and bound over edge subsets of the complete graph on `A`.
fn max_weight_pattern(caps: &[usize], pairs: &[(usize, usize, u64)], limit: usize) -> Vec<bool> {
    let mut order: Vec<usize> = (0..pairs.len()).filter(|&i| pairs[i].2 > 0).collect();
    order.sort_by(|&a, &b| pairs[b].2.cmp(&pairs[a].2).then(a.cmp(&b)));

    struct Search<'a> {
        pairs: &'a [(usize, usize, u64)],
        order: Vec<usize>,
        load: Vec<usize>,
        caps: &'a [usize],
        current: Vec<bool>,
        best: Vec<bool>,
        best_value: u64,
    }

    impl Search<'_> {
        fn optimistic(&self, from: usize, slots: usize) -> u64 {
            // weights are sorted, so the next `slots` pairs are the heaviest left
            self.order[from..].iter().take(slots).map(|&i| self.pairs[i].2).sum()
        }

        fn run(&mut self, from: usize, slots: usize, value: u64) {
            if value > self.best_value {
                self.best_value = value;
                self.best = self.current.clone();
            }
            if from == self.order.len() || slots == 0 {
                return;
            }
            if value + self.optimistic(from, slots) <= self.best_value {
                return;
            }
            let idx = self.order[from];
            let (u, v, w) = self.pairs[idx];
            if self.load[u] < self.caps[u] && self.load[v] < self.caps[v] {
                self.load[u] += 1;
                self.load[v] += 1;
                self.current[idx] = true;
                self.run(from + 1, slots - 1, value + w);
                self.current[idx] = false;
                self.load[u] -= 1;
                self.load[v] -= 1;
            }
            self.run(from + 1, slots, value);
        }
    }

    let mut search = Search {
        pairs,
        order,
        load: vec![0; caps.len()],
        caps,
        current: vec![false; pairs.len()],
        best: vec![false; pairs.len()],
        best_value: 0,
    };
    search.run(0, limit, 0);
    search.best
}

/// Closed-form lower bounds on `(m_5, m_6, m_7, m_8)` for 4-regular graphs
/// with 8 nodes and 16 edges. `triangles` says whether the graph has a
/// triangle and `squares` is its number of 4-cycles.
pub fn regular_lower_bounds(triangles: bool, squares: i64) -> Result<[i64; 4]> {
    if squares < 0 {
        return Err(Error::InvalidParameter(format!("square count {squares} is negative")));
    }
    let c = |n: i64, k: i64| binomial(n, k).expect("small binomial") as i64;
    let m5 = 8 * c(12, 1);
    let m6 = 8 * c(12, 2) + 16;
    let m7 = 8 * c(12, 3) - 16 + 16 * c(9, 1);
    let m8 = 8 * c(12, 4) - (c(8, 2) - 16) - 16 * 9 + 16 * c(9, 2) + 8 * c(4, 2)
        + triangles as i64 * 3 * c(8, 2)
        + squares / 2;
    Ok([m5, m6, m7, m8])
}

/// Candidate values for the number of `k`-cutsets that contain the boundary
/// of an edge `uv` and avoid `uv` itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCutTerm {
    /// `C(e - du - dv + 1, k - du - dv)`.
    pub formula_value: u64,
    /// `C(e - du - dv + 1, k - du - dv + 2)`: the `du + dv - 2` boundary edges
    /// are forced, `uv` is excluded and the rest of the `k`-set is free.
    pub exact_count: u64,
    /// Tabulated value for `k = 8`, `e = 16`, when listed.
    pub table_value: Option<u64>,
}

pub fn edge_cut_term(du: usize, dv: usize, k: usize, e: usize) -> Result<EdgeCutTerm> {
    if du == 0 || dv == 0 || du + dv > e + 1 {
        return Err(Error::InvalidParameter(format!("degrees ({du}, {dv}) impossible with {e} edges")));
    }
    let pool = (e + 1 - du - dv) as i64;
    let fill = k as i64 - (du + dv) as i64;
    let table_value = (k == 8 && e == 16)
        .then(|| claims::manifest().edge_term_value(du, dv))
        .flatten();
    Ok(EdgeCutTerm {
        formula_value: binomial(pool, fill).expect("small binomial"),
        exact_count: binomial(pool, fill + 2).expect("small binomial"),
        table_value,
    })
}

/// Integer program `min Σ w_i x_i` over edge-type counts `(a, b, c, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSumConstraints {
    pub weights: [u64; 4],
    /// Allowed values of `a + b`.
    pub a_plus_b: Vec<usize>,
    /// Allowed values of `d`.
    pub d_allowed: Vec<usize>,
    /// `a + b + c + d`.
    pub total: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSumSolution {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub value: u64,
}

/// Exhaustive scan; ties go to the lexicographically smallest `(a, b, c, d)`.
pub fn minimize_edge_sum(constraints: &EdgeSumConstraints) -> Result<EdgeSumSolution> {
    let t = constraints.total;
    let w = constraints.weights;
    let mut best: Option<EdgeSumSolution> = None;
    for a in 0..=t {
        for b in 0..=t - a {
            if !constraints.a_plus_b.contains(&(a + b)) {
                continue;
            }
            for c in 0..=t - a - b {
                let d = t - a - b - c;
                if !constraints.d_allowed.contains(&d) {
                    continue;
                }
                let value = w[0] * a as u64 + w[1] * b as u64 + w[2] * c as u64 + w[3] * d as u64;
                if best.is_none_or(|s| value < s.value) {
                    best = Some(EdgeSumSolution { a, b, c, d, value });
                }
            }
        }
    }
    best.ok_or_else(|| Error::Infeasible("no (a, b, c, d) satisfies the constraints".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;
    use crate::spectrum::cutset_spectrum;
    use crate::Family;

    fn k44() -> Graph {
        Family::CompleteBipartite(4, 4).build().unwrap()
    }

    #[test]
    fn g_values() {
        assert_eq!(g(5, 1, 16), 1365);
        assert_eq!(g(8, 6, 16), 45);
        assert_eq!(g(5, 6, 16), 0);
        assert_eq!(g(6, 3, 16), 286);
        for k in 0..=16 {
            assert_eq!(g(k, k, 16), 1);
        }
        assert_eq!(g(3, 17, 16), 0);
    }

    #[test]
    fn g_is_nonincreasing() {
        for k in 0..=16 {
            for i in 1..=16 {
                assert!(g(k, i, 16) <= g(k, i - 1, 16));
            }
        }
    }

    #[test]
    fn pair_intersections() {
        let g4 = k44();
        // 0 and 4 are adjacent, 0 and 1 are not
        let adj = BoundContext::from_graph(&g4, NodeSet::from_nodes([0, 4]), 8).unwrap();
        assert_eq!(intersection_size(&adj, 0b11).unwrap(), g(8, 7, 16));
        let non = BoundContext::from_graph(&g4, NodeSet::from_nodes([0, 1]), 8).unwrap();
        assert_eq!(intersection_size(&non, 0b11).unwrap(), g(8, 8, 16));
        assert_eq!(intersection_size(&non, 0b01).unwrap(), g(8, 4, 16));
        let blind = BoundContext::degrees_only(16, 8, vec![4, 4]).unwrap();
        assert_eq!(intersection_size(&blind, 0b11), Err(Error::DegreesOnly));
    }

    #[test]
    fn printed_case_values() {
        let single = BoundContext::degrees_only(16, 5, vec![2]).unwrap();
        assert_eq!(union_lower_bound(&single, BoundMode::DegreesOnly, None).unwrap().bound_value, 364);
        let two = BoundContext::degrees_only(16, 8, vec![2, 2]).unwrap();
        assert_eq!(union_lower_bound(&two, BoundMode::DegreesOnly, None).unwrap().bound_value, 4719);
        let seq = BoundContext::degrees_only(16, 8, vec![2, 3, 4, 4, 4]).unwrap();
        assert_eq!(union_lower_bound(&seq, BoundMode::DegreesOnly, None).unwrap().bound_value, 4595);
        let seq = BoundContext::degrees_only(16, 8, vec![2, 4, 4, 4, 4]).unwrap();
        let report = union_lower_bound(&seq, BoundMode::Refined, None).unwrap();
        assert_eq!(report.bound_value, 4505);
        assert_eq!(report.bound_value, report.ledger_sum());
        for (k, want) in [(5, 231), (6, 825), (7, 1980)] {
            let ctx = BoundContext::degrees_only(16, k, vec![3, 3, 3]).unwrap();
            assert_eq!(union_lower_bound(&ctx, BoundMode::DegreesOnly, None).unwrap().bound_value, want);
        }
    }

    #[test]
    fn ledger_values_are_g() {
        let ctx = BoundContext::degree_prefix(&builders::petersen(), 6, 7).unwrap();
        for mode in [BoundMode::ExactGraph, BoundMode::DegreesOnly, BoundMode::Refined] {
            let r = union_lower_bound(&ctx, mode, None).unwrap();
            assert_eq!(r.bound_value, r.ledger_sum());
            for t in &r.ledger {
                let direct = binomial(15 - t.argument as i64, 7 - t.argument as i64).unwrap();
                assert_eq!(t.value, direct);
                assert_eq!(t.sign, if t.level % 2 == 1 { 1 } else { -1 });
            }
        }
    }

    #[test]
    fn bounds_order_and_soundness_on_k44() {
        let g4 = k44();
        let spectrum = cutset_spectrum(&g4).unwrap();
        for k in 5..=8 {
            for h in 1..=8 {
                let ctx = BoundContext::degree_prefix(&g4, h, k).unwrap();
                let exact = union_lower_bound(&ctx, BoundMode::ExactGraph, None).unwrap().bound_value;
                let blind = union_lower_bound(&ctx, BoundMode::DegreesOnly, None).unwrap().bound_value;
                let refined = union_lower_bound(&ctx, BoundMode::Refined, None).unwrap().bound_value;
                assert!(blind <= exact && refined <= exact, "k={k} h={h}");
                assert!(exact <= spectrum.m(k) as i64);
            }
        }
    }

    #[test]
    fn truncation_depth() {
        let ctx = BoundContext::from_graph(&k44(), NodeSet::full(8), 8).unwrap();
        let full = union_lower_bound(&ctx, BoundMode::ExactGraph, None).unwrap();
        let two = union_lower_bound(&ctx, BoundMode::ExactGraph, Some(3)).unwrap();
        assert_eq!(two.depth, 2);
        assert!(two.ledger.iter().all(|t| t.level <= 2));
        assert!(two.bound_value <= full.bound_value);
        assert!(union_lower_bound(&ctx, BoundMode::ExactGraph, Some(1)).is_err());
    }

    #[test]
    fn context_errors() {
        assert!(BoundContext::degrees_only(16, 8, vec![]).is_err());
        assert!(BoundContext::degrees_only(16, 8, vec![0, 3]).is_err());
        assert!(BoundContext::degrees_only(16, 8, vec![3; 11]).is_err());
        let blind = BoundContext::degrees_only(16, 8, vec![3, 3]).unwrap();
        assert_eq!(union_lower_bound(&blind, BoundMode::ExactGraph, None), Err(Error::DegreesOnly));
    }

    #[test]
    fn regular_formulas() {
        assert_eq!(regular_lower_bounds(false, 36).unwrap(), [96, 544, 1888, 4446]);
        assert_eq!(regular_lower_bounds(true, 0).unwrap()[3], 4512);
        assert!(regular_lower_bounds(false, -2).is_err());
    }

    #[test]
    fn edge_terms() {
        let t = edge_cut_term(4, 5, 8, 16).unwrap();
        assert_eq!((t.exact_count, t.table_value), (8, Some(8)));
        let t = edge_cut_term(3, 4, 8, 16).unwrap();
        assert_eq!((t.formula_value, t.exact_count, t.table_value), (10, 120, Some(168)));
        assert_eq!(edge_cut_term(3, 3, 8, 16).unwrap().table_value, None);
        assert_eq!(edge_cut_term(3, 5, 8, 16).unwrap().exact_count, 36);
    }

    #[test]
    fn edge_sum_minimum() {
        let c = EdgeSumConstraints { weights: [168, 36, 36, 8], a_plus_b: vec![3], d_allowed: (0..=5).collect(), total: 16 };
        let s = minimize_edge_sum(&c).unwrap();
        assert_eq!((s.a, s.b, s.c, s.d, s.value), (0, 3, 8, 5, 436));
        let empty = EdgeSumConstraints { weights: [1; 4], a_plus_b: vec![20], d_allowed: vec![0], total: 16 };
        assert!(matches!(minimize_edge_sum(&empty), Err(Error::Infeasible(_))));
    }
}
