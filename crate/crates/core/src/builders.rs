//! Named graph families.
//!
//! Every builder returns one fixed labelled representative. The textual form
//! accepted by [`Family::from_str`](std::str::FromStr) is `name:arg,arg,...`,
//! for example `complete_bipartite:4,4`, `boesch:9` or `complement_of:cycle:8`.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Graph, Result, MAX_NODES};

/// K_4 edges in lexicographic order; boesch insertion vectors index into this.
pub const K4_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// The three perfect matchings of K_4, as positions in [`K4_EDGES`].
pub const K4_MATCHINGS: [[usize; 2]; 3] = [[0, 5], [1, 4], [2, 3]];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    CompleteBipartite(usize, usize),
    CompleteMultipartite(Vec<usize>),
    Cycle(usize),
    Path(usize),
    /// Two poles joined by three internally disjoint paths of the given lengths.
    Theta(usize, usize, usize),
    /// `C_{2m}` plus the `m` chords joining opposite nodes.
    Moebius(usize),
    Petersen,
    ComplementOf(Box<Family>),
    /// `K_n` with a matching of the given size removed.
    CompleteMinusMatching(usize, usize),
    /// Balanced subdivision of K_4 with `n` nodes and `n + 2` edges.
    BoeschNPlus2(usize),
}

impl Family {
    pub fn build(&self) -> Result<Graph> {
        match self {
            Family::Complete(n) => complete(*n),
            Family::CompleteBipartite(a, b) => complete_multipartite(&[*a, *b]),
            Family::CompleteMultipartite(parts) => complete_multipartite(parts),
            Family::Cycle(n) => cycle(*n),
            Family::Path(n) => path(*n),
            Family::Theta(a, b, c) => theta(*a, *b, *c),
            Family::Moebius(m) => moebius(*m),
            Family::Petersen => Ok(petersen()),
            Family::ComplementOf(inner) => Ok(inner.build()?.complement()),
            Family::CompleteMinusMatching(n, size) => complete_minus_matching(*n, *size),
            Family::BoeschNPlus2(n) => boesch_n_plus_2(*n),
        }
    }
}

fn check_nodes(n: usize) -> Result<()> {
    if n > MAX_NODES {
        Err(Error::TooManyNodes(n))
    } else {
        Ok(())
    }
}

pub fn complete(n: usize) -> Result<Graph> {
    check_nodes(n)?;
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn complete_multipartite(parts: &[usize]) -> Result<Graph> {
    if parts.contains(&0) {
        return Err(Error::InvalidParameter("empty part in multipartite graph".into()));
    }
    let n: usize = parts.iter().sum();
    check_nodes(n)?;
    let mut class = Vec::with_capacity(n);
    for (i, &p) in parts.iter().enumerate() {
        class.extend(std::iter::repeat_n(i, p));
    }
    let class = &class;
    Graph::new(
        n,
        (0..n).flat_map(|u| (u + 1..n).filter(move |&v| class[u] != class[v]).map(move |v| (u, v))),
    )
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs at least 3 nodes, got {n}")));
    }
    check_nodes(n)?;
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn path(n: usize) -> Result<Graph> {
    check_nodes(n)?;
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

pub fn theta(l1: usize, l2: usize, l3: usize) -> Result<Graph> {
    let lengths = [l1, l2, l3];
    if lengths.contains(&0) {
        return Err(Error::InvalidParameter("theta path lengths must be positive".into()));
    }
    if lengths.iter().filter(|&&l| l == 1).count() > 1 {
        return Err(Error::InvalidParameter("theta graph would have parallel edges".into()));
    }
    let n = 2 + lengths.iter().map(|l| l - 1).sum::<usize>();
    check_nodes(n)?;
    let mut edges = Vec::new();
    let mut next = 2;
    for l in lengths {
        let mut prev = 0;
        for _ in 0..l - 1 {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, 1));
    }
    Graph::new(n, edges)
}

pub fn moebius(m: usize) -> Result<Graph> {
    if m < 2 {
        return Err(Error::InvalidParameter("moebius graph needs m >= 2".into()));
    }
    let n = 2 * m;
    check_nodes(n)?;
    let rim = (0..n).map(|i| (i, (i + 1) % n));
    let spokes = (0..m).map(|i| (i, i + m));
    Graph::new(n, rim.chain(spokes))
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::new(10, outer.chain(inner).chain(spokes)).expect("petersen is simple")
}

pub fn complete_minus_matching(n: usize, size: usize) -> Result<Graph> {
    check_nodes(n)?;
    if 2 * size > n {
        return Err(Error::InvalidParameter(format!(
            "matching of size {size} does not fit in {n} nodes"
        )));
    }
    Graph::new(
        n,
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !(v == u + 1 && u % 2 == 0 && u / 2 < size)),
    )
}

/// Per-edge subdivision counts for the balanced K_4 subdivision on `n` nodes.
///
/// Counts differ by at most one, and two matchings receiving the same total
/// must agree edge by edge. Among admissible vectors the lexicographically
/// smallest (over [`K4_EDGES`]) is returned.
pub fn boesch_insertions(n: usize) -> Result<[usize; 6]> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("boesch construction needs n >= 4, got {n}")));
    }
    check_nodes(n)?;
    let points = n - 4;
    let (base, extra) = (points / 6, points % 6);
    (0u32..64)
        .filter(|mask| mask.count_ones() as usize == extra)
        .map(|mask| std::array::from_fn(|i| base + (mask >> i & 1) as usize))
        .filter(boesch_admissible)
        .min()
        .ok_or_else(|| Error::Infeasible(format!("no balanced insertion for n = {n}")))
}

fn boesch_admissible(counts: &[usize; 6]) -> bool {
    let lo = counts.iter().min().unwrap();
    let hi = counts.iter().max().unwrap();
    if hi - lo > 1 {
        return false;
    }
    let totals = K4_MATCHINGS.map(|[a, b]| counts[a] + counts[b]);
    for i in 0..3 {
        for j in i + 1..3 {
            if totals[i] == totals[j] {
                let edges = K4_MATCHINGS[i].iter().chain(&K4_MATCHINGS[j]);
                let mut values = edges.map(|&p| counts[p]);
                let first = values.next().unwrap();
                if !values.all(|c| c == first) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn boesch_n_plus_2(n: usize) -> Result<Graph> {
    let counts = boesch_insertions(n)?;
    let mut edges = Vec::with_capacity(n + 2);
    let mut next = 4;
    for (&(u, v), &c) in K4_EDGES.iter().zip(&counts) {
        let mut prev = u;
        for _ in 0..c {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    Graph::new(n, edges)
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::CompleteBipartite(a, b) => write!(f, "complete_bipartite:{a},{b}"),
            Family::CompleteMultipartite(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "complete_multipartite:{}", parts.join(","))
            }
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Theta(a, b, c) => write!(f, "theta:{a},{b},{c}"),
            Family::Moebius(m) => write!(f, "moebius:{m}"),
            Family::Petersen => write!(f, "petersen"),
            Family::ComplementOf(inner) => write!(f, "complement_of:{inner}"),
            Family::CompleteMinusMatching(n, s) => write!(f, "kn_minus_matching:{n},{s}"),
            Family::BoeschNPlus2(n) => write!(f, "boesch:{n}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
        if name == "complement_of" || name == "complement" {
            return Ok(Family::ComplementOf(Box::new(args.parse()?)));
        }
        let bad = || Error::BuilderSpec(spec.to_string());
        let nums: Vec<usize> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
        };
        let family = match (name, nums.as_slice()) {
            ("complete" | "K", &[n]) => Family::Complete(n),
            ("complete_bipartite" | "Kab", &[a, b]) => Family::CompleteBipartite(a, b),
            ("complete_multipartite", parts) if !parts.is_empty() => {
                Family::CompleteMultipartite(parts.to_vec())
            }
            ("cycle" | "C", &[n]) => Family::Cycle(n),
            ("path" | "P", &[n]) => Family::Path(n),
            ("theta", &[a, b, c]) => Family::Theta(a, b, c),
            ("moebius" | "mobius", &[m]) => Family::Moebius(m),
            ("petersen", &[]) => Family::Petersen,
            ("kn_minus_matching", &[n, s]) => Family::CompleteMinusMatching(n, s),
            ("boesch" | "boesch_n_plus_2", &[n]) => Family::BoeschNPlus2(n),
            _ => return Err(bad()),
        };
        Ok(family)
    }
}
