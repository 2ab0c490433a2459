//! Versioned manifest of published constants that the verifier audits.
//!
//! The constants live in `data/claims.json` so that disagreements with the
//! recomputed values are reported as data rather than hard-coded.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bounds::{g, BoundMode, EdgeSumConstraints, EdgeSumSolution};

const MANIFEST: &str = include_str!("../data/claims.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub edges: usize,
    pub nodes: usize,
    pub k44_spectrum_printed: IndexedValues,
    pub g_table: GTable,
    pub edge_terms: Vec<EdgeTermEntry>,
    pub regular: RegularClaims,
    pub cases: Vec<CaseClaim>,
    pub edge_sums: Vec<EdgeSumClaim>,
    pub totals: Vec<TotalClaim>,
    pub degree_sequences: SequenceClaims,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedValues {
    pub k: Vec<usize>,
    pub values: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GTable {
    pub k: Vec<usize>,
    pub i: Vec<usize>,
    /// `values[row][col]` for `k[row]`, `i[col]`.
    pub values: Vec<Vec<u64>>,
    pub k44: Vec<u64>,
}

impl GTable {
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.k.iter().enumerate().flat_map(move |(r, &k)| {
            self.i.iter().enumerate().map(move |(c, &i)| (k, i, self.values[r][c]))
        })
    }

    pub fn lookup(&self, k: usize, i: usize) -> Option<u64> {
        let r = self.k.iter().position(|&x| x == k)?;
        let c = self.i.iter().position(|&x| x == i)?;
        Some(self.values[r][c])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeTermEntry {
    pub du: usize,
    pub dv: usize,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularClaims {
    pub gap: i64,
    pub m8_example: RegularExample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularExample {
    pub t: u8,
    pub c: i64,
    pub value: i64,
}

/// A displayed bound written as `Σ coef · g_k(arg)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseClaim {
    pub id: String,
    pub delta: usize,
    pub location: String,
    pub k: Vec<usize>,
    pub printed: Vec<i64>,
    pub terms: Vec<(i64, usize)>,
    #[serde(default)]
    pub corrected_terms: Option<Vec<(i64, usize)>>,
    /// Terms multiplied by a parameter `h`; the case value is the minimum
    /// over `h_range`.
    #[serde(default)]
    pub h_terms: Option<Vec<(i64, usize)>>,
    #[serde(default)]
    pub h_range: Option<(i64, i64)>,
    #[serde(default)]
    pub union_bound: Option<UnionBoundSpec>,
    pub claimed_above_k44: bool,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionBoundSpec {
    pub degrees: Vec<usize>,
    pub mode: BoundMode,
}

fn eval_terms(terms: &[(i64, usize)], k: usize, e: usize) -> i64 {
    terms.iter().map(|&(coef, arg)| coef * g(k, arg, e) as i64).sum()
}

impl CaseClaim {
    /// Value of the displayed expression at `k`, evaluated with `g`.
    pub fn evaluate(&self, k: usize, e: usize) -> i64 {
        self.evaluate_with(&self.terms, k, e)
    }

    pub fn evaluate_corrected(&self, k: usize, e: usize) -> Option<i64> {
        self.corrected_terms.as_ref().map(|t| self.evaluate_with(t, k, e))
    }

    fn evaluate_with(&self, terms: &[(i64, usize)], k: usize, e: usize) -> i64 {
        let base = eval_terms(terms, k, e);
        match (&self.h_terms, self.h_range) {
            (Some(ht), Some((lo, hi))) => {
                let step = eval_terms(ht, k, e);
                (lo..=hi).map(|h| base + h * step).min().expect("nonempty range")
            }
            _ => base,
        }
    }

    /// Same expression, reading each `g_k(i)` from the printed table where
    /// the table lists it.
    pub fn evaluate_from_table(&self, table: &GTable, k: usize, e: usize) -> i64 {
        let lookup = |arg: usize| table.lookup(k, arg).unwrap_or_else(|| g(k, arg, e)) as i64;
        let sum = |terms: &[(i64, usize)]| terms.iter().map(|&(c, a)| c * lookup(a)).sum::<i64>();
        let base = sum(&self.terms);
        match (&self.h_terms, self.h_range) {
            (Some(ht), Some((lo, hi))) => {
                let step = sum(ht);
                (lo..=hi).map(|h| base + h * step).min().expect("nonempty range")
            }
            _ => base,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSumClaim {
    pub id: String,
    pub sequence: Vec<usize>,
    pub weights: [u64; 4],
    pub a_plus_b: Vec<usize>,
    pub d_allowed: Vec<usize>,
    pub total: usize,
    pub printed: EdgeSumSolution,
}

impl EdgeSumClaim {
    pub fn constraints(&self) -> EdgeSumConstraints {
        EdgeSumConstraints {
            weights: self.weights,
            a_plus_b: self.a_plus_b.clone(),
            d_allowed: self.d_allowed.clone(),
            total: self.total,
        }
    }
}

/// A final sum assembled from earlier printed values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalClaim {
    pub id: String,
    pub printed: i64,
    pub parts: Vec<TotalPart>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalPart {
    pub printed: i64,
    #[serde(default)]
    pub case: Option<String>,
    #[serde(default)]
    pub edge_sum: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceClaims {
    pub delta2_small_v3: Vec<Vec<usize>>,
    pub delta3_remaining: Vec<Vec<usize>>,
}

impl Manifest {
    pub fn edge_term_value(&self, du: usize, dv: usize) -> Option<u64> {
        let (a, b) = (du.min(dv), du.max(dv));
        self.edge_terms.iter().find(|t| (t.du, t.dv) == (a, b)).map(|t| t.value)
    }

    pub fn case(&self, id: &str) -> Option<&CaseClaim> {
        self.cases.iter().find(|c| c.id == id)
    }

    pub fn edge_sum(&self, id: &str) -> Option<&EdgeSumClaim> {
        self.edge_sums.iter().find(|c| c.id == id)
    }
}

/// The embedded manifest, parsed once.
pub fn manifest() -> &'static Manifest {
    static PARSED: OnceLock<Manifest> = OnceLock::new();
    PARSED.get_or_init(|| serde_json::from_str(MANIFEST).expect("embedded claims manifest is valid JSON"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_parses() {
        let m = manifest();
        assert_eq!(m.edges, 16);
        assert_eq!(m.g_table.cells().count(), 24);
        assert_eq!(m.edge_term_value(4, 3), Some(168));
        assert!(m.case("delta2.two_degree2").is_some());
        assert!(m.edge_sum("seq_34444445").is_some());
    }

    #[test]
    fn case_evaluation() {
        let m = manifest();
        assert_eq!(m.case("delta2.two_degree2").unwrap().evaluate(8, 16), 4719);
        assert_eq!(m.case("delta3.v3_eq3").unwrap().evaluate(8, 16), 4599);
        let triple = m.case("delta3.v3_ge3").unwrap();
        assert_eq!(triple.evaluate(6, 16), 825);
        // the table's (6, 3) cell reads 364 rather than C(13, 3) = 286
        assert_eq!(triple.evaluate_from_table(&m.g_table, 6, 16), 3 * 364 - 3 * 11);
    }
}
