//! JSON, DOT and CSV renderings.
//!
//! Tree JSON fields, in order: `root`, `parent` (`-1` at the root), `dist`,
//! `weight`, then whatever the command adds (`metrics`, `total_weight`, ...).

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::last::TreeMetrics;
use crate::trees::RootedTree;
use crate::weight::{Scalar, Weight};

#[derive(Debug, Clone, Serialize)]
pub struct TreeJson<W> {
    pub root: usize,
    pub parent: Vec<i64>,
    pub dist: Vec<W>,
    pub weight: W,
}

impl<W: Weight> TreeJson<W> {
    pub fn new(t: &RootedTree<W>) -> Self {
        TreeJson {
            root: t.root(),
            parent: t.parents().iter().map(|p| p.map_or(-1, |p| p as i64)).collect(),
            dist: t.dists().to_vec(),
            weight: t.weight(),
        }
    }
}

/// Compact single-line tree JSON.
pub fn tree_to_json<W: Weight>(t: &RootedTree<W>) -> String {
    serde_json::to_string(&TreeJson::new(t)).expect("tree JSON serializes")
}

#[derive(Debug, Clone, Serialize)]
pub struct MetricsJson<W> {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_bound: Option<String>,
    pub max_stretch: f64,
    pub weight_ratio: f64,
    /// Exact `p/q` ratio in exact mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_ratio_exact: Option<String>,
    pub tree_weight: W,
    pub mst_weight: W,
    pub paths_added: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relax_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stretch_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight_ok: Option<bool>,
}

impl<W: Weight> MetricsJson<W> {
    /// Metrics with bound checks against `alpha` and `1 + 2/(α-1)` when given.
    pub fn new(m: &TreeMetrics<W>, alpha: Option<&Scalar>) -> Self {
        let exact = if !W::EXACT {
            None
        } else if m.mst_weight == W::ZERO {
            (m.tree_weight == W::ZERO).then(|| "1".to_string())
        } else {
            Some((m.tree_weight.to_scalar() / m.mst_weight.to_scalar()).to_string())
        };
        let bound = alpha.filter(|a| a.exceeds_one()).map(Scalar::weight_bound_for);
        MetricsJson {
            alpha: alpha.map(ToString::to_string),
            weight_bound: bound.map(|b| b.to_string()),
            max_stretch: m.max_stretch,
            weight_ratio: m.weight_ratio,
            weight_ratio_exact: exact,
            tree_weight: m.tree_weight,
            mst_weight: m.mst_weight,
            paths_added: m.paths_added,
            relax_count: None,
            stretch_ok: alpha.map(|a| m.stretch_within(a)),
            weight_ok: bound.map(|b| m.weight_within(&b)),
        }
    }
}

/// A tree read back from JSON; only `root` and `parent` are used.
#[derive(Debug, Clone, Deserialize)]
pub struct TreeFile {
    pub root: usize,
    pub parent: Vec<i64>,
}

impl TreeFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    pub fn to_tree<W: Weight>(&self, g: &Graph<W>) -> Result<RootedTree<W>> {
        let parent = self
            .parent
            .iter()
            .map(|&p| match p {
                -1 => Ok(None),
                p if p >= 0 => Ok(Some(p as usize)),
                p => Err(Error::InvalidTree(format!("bad parent entry {p}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        RootedTree::from_graph_parents(g, self.root, parent)
    }
}

/// Graphviz rendering: tree edges solid, other graph edges dotted grey.
pub fn tree_to_dot<W: Weight>(g: &Graph<W>, t: &RootedTree<W>) -> String {
    let mut out = String::from("graph last {\n  node [shape=circle];\n");
    for v in 0..t.n() {
        let shape = if v == t.root() { " shape=doublecircle" } else { "" };
        let _ = writeln!(out, "  {v} [label=\"{v}\\nd={}\"{shape}];", t.dist(v));
    }
    let mut in_tree = HashSet::new();
    for v in 0..t.n() {
        if let Some(p) = t.parent(v) {
            in_tree.insert((p.min(v), p.max(v)));
            let _ = writeln!(out, "  {p} -- {v} [label=\"{}\" penwidth=2];", t.parent_weight(v));
        }
    }
    for e in g.edges() {
        if !in_tree.contains(&(e.u.min(e.v), e.u.max(e.v))) {
            let _ = writeln!(out, "  {} -- {} [label=\"{}\" style=dotted color=grey];", e.u, e.v, e.w);
        }
    }
    out.push_str("}\n");
    out
}

pub const SWEEP_HEADER: &str = "alpha,max_stretch,weight_ratio,paths_added,tree_weight";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<W> {
    pub alpha: Scalar,
    pub max_stretch: f64,
    pub weight_ratio: f64,
    pub paths_added: usize,
    pub tree_weight: W,
}

pub fn sweep_csv<W: Weight>(rows: &[SweepRow<W>]) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.alpha, r.max_stretch, r.weight_ratio, r.paths_added, r.tree_weight
        );
    }
    out
}
