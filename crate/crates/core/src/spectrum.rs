//! Cutset spectra and the all-terminal unreliability polynomial
//! `U(rho) = sum_k m_k rho^k (1 - rho)^(e - k)`.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::census::connected_subgraphs;
use crate::{binomial, Error, Graph, NodeSet, Result};

/// Exhaustive enumeration visits `2^e` edge subsets; this caps `e`.
pub const MAX_SPECTRUM_EDGES: usize = 28;

/// Node cap for the vertex-subset dynamic programme (`3^n` work).
pub const MAX_COMPLEMENT_NODES: usize = 12;

/// Node cap for the small-component decomposition.
pub const MAX_COMPONENT_NODES: usize = 8;

/// `m[k]` = number of `k`-edge cutsets, for `k = 0..=e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CutsetSpectrum {
    pub edges: usize,
    pub counts: Vec<u64>,
}

impl CutsetSpectrum {
    pub fn new(counts: Vec<u64>) -> Self {
        assert!(!counts.is_empty(), "a spectrum has e + 1 entries");
        CutsetSpectrum { edges: counts.len() - 1, counts }
    }

    #[inline]
    pub fn m(&self, k: usize) -> u64 {
        self.counts.get(k).copied().unwrap_or(0)
    }

    /// First index with a nonzero count.
    pub fn edge_connectivity(&self) -> Option<usize> {
        self.counts.iter().position(|&m| m > 0)
    }

    pub fn polynomial(&self) -> UnreliabilityPolynomial<'_> {
        UnreliabilityPolynomial { spectrum: self }
    }

    /// CSV with columns `k,m_k,C(e,k)`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,m_k,C(e,k)\n");
        for (k, m) in self.counts.iter().enumerate() {
            let total = binomial(self.edges as i64, k as i64).expect("e <= 62");
            writeln!(out, "{k},{m},{total}").unwrap();
        }
        out
    }
}

fn check_spectrum_input(g: &Graph) -> Result<()> {
    if g.edge_count() > MAX_SPECTRUM_EDGES {
        return Err(Error::EdgeBudget { edges: g.edge_count(), cap: MAX_SPECTRUM_EDGES });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Exact spectrum by walking all edge subsets in Gray-code order, toggling
/// one edge of the remaining graph per step.
pub fn cutset_spectrum(g: &Graph) -> Result<CutsetSpectrum> {
    check_spectrum_input(g)?;
    let e = g.edge_count();
    // high edges are fixed per chunk so chunks can run independently
    let fixed = if e >= 20 { 6 } else { 0 };
    let chunks = 1u64 << fixed;
    let run = |prefix: u64| gray_chunk(g, e - fixed, prefix);

    #[cfg(feature = "parallel")]
    let partials: Vec<Vec<u64>> = {
        use rayon::prelude::*;
        (0..chunks).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let partials: Vec<Vec<u64>> = (0..chunks).map(run).collect();

    let mut counts = vec![0u64; e + 1];
    for part in partials {
        for (c, p) in counts.iter_mut().zip(part) {
            *c = c.checked_add(p).ok_or(Error::Overflow("cutset count"))?;
        }
    }
    Ok(CutsetSpectrum::new(counts))
}

/// Counts cutsets among subsets whose top edges (positions `low..e`) are
/// removed exactly as `prefix` says, varying the `low` lowest edges.
fn gray_chunk(g: &Graph, low: usize, prefix: u64) -> Vec<u64> {
    let n = g.node_count();
    let e = g.edge_count();
    let full = NodeSet::full(n).0;
    let mut adj = g.adjacency().to_vec();
    let toggle = |adj: &mut [u32], i: usize| {
        let (u, v) = g.edge(i);
        adj[u] ^= 1 << v;
        adj[v] ^= 1 << u;
    };
    for i in low..e {
        if prefix >> (i - low) & 1 == 1 {
            toggle(&mut adj, i);
        }
    }
    let base = prefix.count_ones() as usize;
    let mut counts = vec![0u64; e + 1];
    let mut removed = 0u64;
    for step in 0u64..1 << low {
        if step > 0 {
            let bit = step.trailing_zeros() as usize;
            removed ^= 1 << bit;
            toggle(&mut adj, bit);
        }
        if !spans(&adj, full) {
            counts[base + removed.count_ones() as usize] += 1;
        }
    }
    counts
}

#[inline]
fn spans(adj: &[u32], full: u32) -> bool {
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            next |= adj[f.trailing_zeros() as usize];
            f &= f - 1;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == full
}

/// Number of connected spanning subgraphs with `j` edges, for `j = 0..=e`.
///
/// Vertex-subset recursion: the subsets of `E[S]` that leave the component
/// of the lowest node of `S` equal to `T` number `conn(T) * C(|E[S \ T]|, .)`.
pub fn connected_spanning_counts(g: &Graph) -> Result<Vec<u64>> {
    let n = g.node_count();
    if n > MAX_COMPLEMENT_NODES {
        return Err(Error::InvalidParameter(format!(
            "connected spanning subgraph count limited to {MAX_COMPLEMENT_NODES} nodes"
        )));
    }
    if n == 0 {
        return Ok(vec![0]);
    }
    let e = g.edge_count();
    let adj = g.adjacency();
    let size = 1usize << n;
    let mut inside = vec![0usize; size];
    for s in 1..size {
        let v = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        inside[s] = inside[rest] + (adj[v] & rest as u32).count_ones() as usize;
    }
    let choose = |m: usize, j: usize| binomial(m as i64, j as i64).expect("e <= 28");
    let mut conn = vec![Vec::<u64>::new(); size];
    for s in 1..size {
        let low = s & s.wrapping_neg();
        let others = s ^ low;
        let es = inside[s];
        let mut row: Vec<u64> = (0..=es).map(|j| choose(es, j)).collect();
        // r ranges over proper subsets of `others`, largest first
        let mut r = others;
        while r != 0 {
            r = (r - 1) & others;
            let t = r | low;
            let rest_edges = inside[s ^ t];
            for (i, &c) in conn[t].iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for extra in 0..=rest_edges {
                    row[i + extra] -= c * choose(rest_edges, extra);
                }
            }
        }
        conn[s] = row;
    }
    let mut out = conn[size - 1].clone();
    out.resize(e + 1, 0);
    Ok(out)
}

/// Spectrum through the complement identity
/// `m_k = C(e, k) - #connected spanning subgraphs with e - k edges`.
pub fn cutset_spectrum_by_complement(g: &Graph) -> Result<CutsetSpectrum> {
    check_spectrum_input(g)?;
    let e = g.edge_count();
    let conn = connected_spanning_counts(g)?;
    let counts = (0..=e)
        .map(|k| binomial(e as i64, k as i64).unwrap() - conn[e - k])
        .collect();
    Ok(CutsetSpectrum::new(counts))
}

/// Spectrum rebuilt from small components: every cutset leaves a component
/// `H` with at most `n / 2` nodes, so each is `boundary(H)` plus interior
/// edges that keep `H` connected plus arbitrary edges elsewhere.
pub fn component_spectrum(g: &Graph) -> Result<CutsetSpectrum> {
    let n = g.node_count();
    if n > MAX_COMPONENT_NODES {
        return Err(Error::InvalidParameter(format!(
            "component decomposition needs n <= {MAX_COMPONENT_NODES}, got {n}"
        )));
    }
    check_spectrum_input(g)?;
    let e = g.edge_count();
    let all: u32 = if e == 32 { u32::MAX } else { (1u32 << e) - 1 };
    let mut marked = vec![0u64; (1usize << e).div_ceil(64)];
    for order in 1..=n / 2 {
        for h in connected_subgraphs(g, order, usize::MAX) {
            let mut boundary = 0u32;
            let mut interior = 0u32;
            for (i, (u, v)) in g.edges().enumerate() {
                match (h.contains(u), h.contains(v)) {
                    (true, true) => interior |= 1 << i,
                    (true, false) | (false, true) => boundary |= 1 << i,
                    _ => {}
                }
            }
            let outside = all & !boundary & !interior;
            let mut x = interior;
            loop {
                if interior_stays_connected(g, h, x) {
                    let mut y = outside;
                    loop {
                        let s = (boundary | x | y) as usize;
                        marked[s / 64] |= 1 << (s % 64);
                        if y == 0 {
                            break;
                        }
                        y = (y - 1) & outside;
                    }
                }
                if x == 0 {
                    break;
                }
                x = (x - 1) & interior;
            }
        }
    }
    let mut counts = vec![0u64; e + 1];
    for (w, &bits) in marked.iter().enumerate() {
        let mut b = bits;
        while b != 0 {
            let s = w * 64 + b.trailing_zeros() as usize;
            counts[s.count_ones() as usize] += 1;
            b &= b - 1;
        }
    }
    Ok(CutsetSpectrum::new(counts))
}

fn interior_stays_connected(g: &Graph, h: NodeSet, removed: u32) -> bool {
    let mut adj = vec![0u32; g.node_count()];
    for (i, (u, v)) in g.edges().enumerate() {
        if h.contains(u) && h.contains(v) && removed >> i & 1 == 0 {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    let start = h.0.trailing_zeros() as usize;
    let mut seen = 1u32 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in NodeSet(frontier).iter() {
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == h.0
}

/// `m_k` via the small-component decomposition (graphs with at most 8 nodes).
pub fn spectrum_via_components(g: &Graph, k: usize) -> Result<u64> {
    Ok(component_spectrum(g)?.m(k))
}

/// Spanning-tree count by fraction-free elimination on a Laplacian minor.
pub fn tree_number(g: &Graph) -> BigUint {
    let n = g.node_count();
    if n == 0 {
        return BigUint::default();
    }
    let m = n - 1;
    let mut a: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        BigInt::from(g.degree(i))
                    } else if g.has_edge(i, j) {
                        BigInt::from(-1)
                    } else {
                        BigInt::default()
                    }
                })
                .collect()
        })
        .collect();
    let mut negate = false;
    let mut prev = BigInt::from(1);
    for k in 0..m {
        if a[k][k].sign() == Sign::NoSign {
            match (k + 1..m).find(|&r| a[r][k].sign() != Sign::NoSign) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return BigUint::default(),
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = if m == 0 { BigInt::from(1) } else { a[m - 1][m - 1].clone() };
    let det = if negate { -det } else { det };
    det.to_biguint().expect("Laplacian minors are nonnegative")
}

/// Edge-connectivity from unit-capacity max-flows out of node 0.
pub fn edge_connectivity(g: &Graph) -> Result<usize> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.node_count();
    Ok((1..n).map(|t| max_flow(g, 0, t)).min().unwrap_or(0))
}

fn max_flow(g: &Graph, s: usize, t: usize) -> usize {
    let n = g.node_count();
    // residual[u][v] for the two arcs of every undirected unit edge
    let mut residual = vec![vec![0i32; n]; n];
    for (u, v) in g.edges() {
        residual[u][v] = 1;
        residual[v][u] = 1;
    }
    let mut flow = 0;
    loop {
        let mut pred = vec![usize::MAX; n];
        pred[s] = s;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for v in 0..n {
                if pred[v] == usize::MAX && residual[u][v] > 0 {
                    pred[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if pred[t] == usize::MAX {
            return flow;
        }
        let mut v = t;
        while v != s {
            let u = pred[v];
            residual[u][v] -= 1;
            residual[v][u] += 1;
            v = u;
        }
        flow += 1;
    }
}

/// λ-regular with only the `n` trivial minimum cutsets.
pub fn is_superconnected(g: &Graph) -> Result<bool> {
    let spectrum = cutset_spectrum(g)?;
    let Some(lambda) = spectrum.edge_connectivity() else {
        return Ok(false);
    };
    let regular = (0..g.node_count()).all(|v| g.degree(v) == lambda);
    Ok(regular && spectrum.m(lambda) == g.node_count() as u64)
}

/// Evaluation view of a spectrum as the unreliability polynomial.
#[derive(Clone, Copy, Debug)]
pub struct UnreliabilityPolynomial<'a> {
    spectrum: &'a CutsetSpectrum,
}

impl UnreliabilityPolynomial<'_> {
    pub fn spectrum(&self) -> &CutsetSpectrum {
        self.spectrum
    }

    /// `U(rho)`. Each term is formed in log space, so tiny `rho` or tiny
    /// `1 - rho` underflow gracefully instead of cancelling; the sum has
    /// only nonnegative terms.
    pub fn eval(&self, rho: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&rho) || rho.is_nan() {
            return Err(Error::Probability(rho));
        }
        let e = self.spectrum.edges;
        if rho == 0.0 {
            return Ok(self.spectrum.m(0) as f64);
        }
        if rho == 1.0 {
            return Ok(self.spectrum.m(e) as f64);
        }
        let ln_fail = rho.ln();
        let ln_keep = (-rho).ln_1p();
        let total = self
            .spectrum
            .counts
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(k, &m)| ((m as f64).ln() + k as f64 * ln_fail + (e - k) as f64 * ln_keep).exp())
            .sum::<f64>();
        Ok(total.min(1.0))
    }

    /// `points` evenly spaced evaluations on `[0, 1]`.
    pub fn table(&self, points: usize) -> Vec<(f64, f64)> {
        let steps = points.max(2) - 1;
        (0..=steps)
            .map(|i| {
                let rho = i as f64 / steps as f64;
                (rho, self.eval(rho).expect("grid lies in [0, 1]"))
            })
            .collect()
    }

    pub fn table_csv(&self, points: usize) -> String {
        let mut out = String::from("rho,U\n");
        for (rho, u) in self.table(points) {
            writeln!(out, "{rho},{u:.17e}").unwrap();
        }
        out
    }
}

pub fn unreliability(p: &UnreliabilityPolynomial<'_>, rho: f64) -> Result<f64> {
    p.eval(rho)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    /// `a.m[k] <= b.m[k]` for every `k`.
    pub dominates: bool,
    pub first_divergence: Option<usize>,
    pub last_divergence: Option<usize>,
    /// More reliable for all sufficiently small `rho`.
    pub near_zero_winner: Option<Winner>,
    /// More reliable for all `rho` sufficiently close to one.
    pub near_one_winner: Option<Winner>,
}

pub fn compare(a: &CutsetSpectrum, b: &CutsetSpectrum) -> Result<Comparison> {
    if a.edges != b.edges {
        return Err(Error::EdgeCountMismatch(a.edges, b.edges));
    }
    let differing: Vec<usize> = (0..=a.edges).filter(|&k| a.m(k) != b.m(k)).collect();
    let winner = |k: usize| if a.m(k) < b.m(k) { Winner::A } else { Winner::B };
    Ok(Comparison {
        dominates: (0..=a.edges).all(|k| a.m(k) <= b.m(k)),
        first_divergence: differing.first().copied(),
        last_divergence: differing.last().copied(),
        near_zero_winner: differing.first().map(|&k| winner(k)),
        near_one_winner: differing.last().map(|&k| winner(k)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub trials: u64,
}

/// Fraction of `trials` independent edge-failure samples that disconnect `g`.
pub fn monte_carlo_unreliability(
    g: &Graph,
    rho: f64,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if !(0.0..=1.0).contains(&rho) || rho.is_nan() {
        return Err(Error::Probability(rho));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let n = g.node_count();
    let full = NodeSet::full(n).0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = vec![0u32; n];
    let mut failures = 0u64;
    for _ in 0..trials {
        adj.iter_mut().for_each(|a| *a = 0);
        for (u, v) in g.edges() {
            if !rng.gen_bool(rho) {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        if n > 0 && !spans(&adj, full) {
            failures += 1;
        }
    }
    let p = failures as f64 / trials as f64;
    Ok(MonteCarloEstimate {
        estimate: p,
        std_error: (p * (1.0 - p) / trials as f64).sqrt(),
        trials,
    })
}
