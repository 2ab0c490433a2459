use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use umrg::graph6::{from_graph6, parse_lines};
use umrg::{Family, Graph};

/// Graph sources; exactly one must be given.
#[derive(Args, Debug, Clone)]
pub struct GraphInput {
    /// Inline graph6 string.
    #[arg(long, conflicts_with_all = ["file", "builder"])]
    pub g6: Option<String>,
    /// File of newline-delimited graph6 strings.
    #[arg(long, conflicts_with = "builder")]
    pub file: Option<PathBuf>,
    /// Builder spec such as `complete_bipartite:4,4`, `cycle:8` or `petersen`.
    #[arg(long)]
    pub builder: Option<String>,
}

impl GraphInput {
    pub fn graphs(&self) -> Result<Vec<Graph>> {
        if let Some(text) = &self.g6 {
            return Ok(vec![from_graph6(text).context("malformed graph6 input")?]);
        }
        if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let graphs = parse_lines(&text).context("malformed graph6 file")?;
            if graphs.is_empty() {
                bail!("{} contains no graphs", path.display());
            }
            return Ok(graphs);
        }
        if let Some(spec) = &self.builder {
            return Ok(vec![build(spec)?]);
        }
        bail!("one of --g6, --file or --builder is required")
    }

    pub fn single(&self) -> Result<Graph> {
        let mut graphs = self.graphs()?;
        if graphs.len() != 1 {
            bail!("expected one graph, found {}", graphs.len());
        }
        Ok(graphs.remove(0))
    }
}

fn build(spec: &str) -> Result<Graph> {
    let family: Family = spec.parse().with_context(|| format!("unknown builder spec `{spec}`"))?;
    Ok(family.build()?)
}

/// A builder spec when it parses as one, otherwise graph6.
pub fn graph_from_text(text: &str) -> Result<Graph> {
    match text.parse::<Family>() {
        Ok(family) => Ok(family.build()?),
        Err(_) => from_graph6(text).with_context(|| format!("`{text}` is neither a builder spec nor graph6")),
    }
}

pub fn parse_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>().with_context(|| format!("bad list entry `{s}`")))
        .collect()
}
