//! Light approximate shortest-path trees.
//!
//! [`find_last`] walks the depth-first Euler tour of a minimum spanning tree
//! while maintaining a current tree through edge relaxations. On the first
//! visit to a vertex whose distance estimate exceeds α times its
//! shortest-path-tree distance, the shortest path is relaxed into the
//! current tree. For exact input trees the result has stretch at most α and
//! weight at most `1 + 2/(α-1)` times the spanning tree weight.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{dijkstra, Graph};
use crate::trees::RootedTree;
use crate::weight::{weight_ratio_f64, Scalar, Weight};

/// Distance estimates and parent pointers of the current tree.
///
/// The edges `{(p[v], v) : d[v] finite}` always form a tree rooted at the
/// root, and `d[v]` is an upper bound on the tree distance of `v`.
#[derive(Debug, Clone)]
pub struct RelaxState<W> {
    d: Vec<Option<W>>,
    p: Vec<Option<usize>>,
    pw: Vec<W>,
    relax_count: usize,
}

impl<W: Weight> RelaxState<W> {
    /// `d[root] = 0`, every other estimate infinite, no parents.
    pub fn initialize(n: usize, root: usize) -> Self {
        let mut d = vec![None; n];
        d[root] = Some(W::ZERO);
        RelaxState {
            d,
            p: vec![None; n],
            pw: vec![W::ZERO; n],
            relax_count: 0,
        }
    }

    pub fn estimate(&self, v: usize) -> Option<W> {
        self.d[v]
    }

    pub fn estimates(&self) -> &[Option<W>] {
        &self.d
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.p[v]
    }

    pub fn relax_count(&self) -> usize {
        self.relax_count
    }

    /// Lowers `d[v]` to `d[u] + w` and makes `u` the parent of `v` when that
    /// is a strict improvement. Every call is counted.
    pub fn relax(&mut self, u: usize, v: usize, w: W) -> bool {
        self.relax_count += 1;
        let Some(du) = self.d[u] else { return false };
        let cand = du + w;
        let better = match self.d[v] {
            None => true,
            Some(dv) => cand < dv,
        };
        if better {
            self.d[v] = Some(cand);
            self.p[v] = Some(u);
            self.pw[v] = w;
        }
        better
    }

    fn into_tree(self, root: usize) -> Result<RootedTree<W>> {
        RootedTree::from_parents(root, self.p, self.pw)
    }
}

/// One directed traversal `from -> to` of a tree edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkStep<W> {
    pub from: usize,
    pub to: usize,
    pub w: W,
}

/// The depth-first walk around a tree: every edge once in each direction.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerWalk<W> {
    root: usize,
    steps: Vec<WalkStep<W>>,
}

impl<W: Weight> EulerWalk<W> {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn steps(&self) -> &[WalkStep<W>] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `u_1, ..., u_{2n-1}`: the root followed by the head of every step.
    pub fn vertices(&self) -> Vec<usize> {
        std::iter::once(self.root)
            .chain(self.steps.iter().map(|s| s.to))
            .collect()
    }
}

/// Euler walk of `tree` from its root, visiting children in increasing
/// vertex order.
pub fn euler_walk<W: Weight>(tree: &RootedTree<W>) -> EulerWalk<W> {
    let children = tree.children();
    let mut steps = Vec::with_capacity(2 * tree.n().saturating_sub(1));
    // (vertex, index of the next child to descend into)
    let mut stack = vec![(tree.root(), 0usize)];
    while let Some(top) = stack.last_mut() {
        let (u, next) = *top;
        if let Some(&c) = children[u].get(next) {
            top.1 += 1;
            steps.push(WalkStep {
                from: u,
                to: c,
                w: tree.parent_weight(c),
            });
            stack.push((c, 0));
        } else {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                steps.push(WalkStep {
                    from: u,
                    to: p,
                    w: tree.parent_weight(u),
                });
            }
        }
    }
    EulerWalk {
        root: tree.root(),
        steps,
    }
}

/// Which part of the algorithm issued a relaxation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelaxSource {
    Walk,
    AddPath,
}

/// Execution events recorded by [`find_last_traced`].
#[derive(Debug, Clone, PartialEq)]
pub enum TraceEvent<W> {
    Relax {
        source: RelaxSource,
        from: usize,
        to: usize,
        weight: W,
        changed: bool,
        estimate: W,
    },
    /// First visit of `vertex`, with its estimate and shortest-path distance.
    Visit {
        vertex: usize,
        estimate: W,
        spt_dist: W,
        adds_path: bool,
    },
}

impl<W: Weight> fmt::Display for TraceEvent<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::Relax {
                source,
                from,
                to,
                weight,
                changed,
                estimate,
            } => {
                let tag = match source {
                    RelaxSource::Walk => "relax",
                    RelaxSource::AddPath => "add-path relax",
                };
                if *changed {
                    write!(
                        f,
                        "{tag} ({from},{to}) w={weight}: d[{to}] <- {estimate}, p[{to}] <- {from}"
                    )
                } else {
                    write!(f, "{tag} ({from},{to}) w={weight}: no change (d[{to}] = {estimate})")
                }
            }
            TraceEvent::Visit {
                vertex,
                estimate,
                spt_dist,
                adds_path,
            } => {
                if *adds_path {
                    write!(
                        f,
                        "visit {vertex}: d = {estimate} exceeds alpha * {spt_dist}, adding shortest path"
                    )
                } else {
                    write!(f, "visit {vertex}: d = {estimate}, spt distance {spt_dist}, ok")
                }
            }
        }
    }
}

/// Running totals of the potential `Φ = d[current vertex]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialLedger<W> {
    pub increase: W,
    pub decrease: W,
    /// Sum of the shortest-path distances of the vertices given paths.
    pub added_path_total: W,
    /// Add-Path calls whose drop in Φ was not more than `(α-1)` times the path length.
    pub weak_drops: usize,
}

impl<W: Weight> PotentialLedger<W> {
    fn new() -> Self {
        PotentialLedger {
            increase: W::ZERO,
            decrease: W::ZERO,
            added_path_total: W::ZERO,
            weak_drops: 0,
        }
    }

    fn moved(&mut self, old: W, new: W) {
        if new > old {
            self.increase = self.increase + (new - old);
        } else {
            self.decrease = self.decrease + (old - new);
        }
    }

    /// Amortization facts: decreases do not exceed increases, increases do
    /// not exceed twice the walked tree weight, and `(α-1)` times the added
    /// path lengths does not exceed the decreases.
    pub fn holds(&self, alpha: &Scalar, walked_tree_weight: W) -> bool {
        let alpha_minus_one = *alpha - Scalar::one();
        self.weak_drops == 0
            && self.decrease.approx_le(self.increase)
            && self.increase.le_scaled(&Scalar::integer(2), walked_tree_weight)
            && (self.added_path_total.to_scalar() * alpha_minus_one).le(&self.decrease.to_scalar())
    }
}

/// Result of [`find_last_traced`]: the tree plus everything needed to audit
/// the run.
#[derive(Debug, Clone)]
pub struct LastRun<W> {
    pub tree: RootedTree<W>,
    pub relax_count: usize,
    /// Vertices that triggered Add-Path, in walk order.
    pub path_vertices: Vec<usize>,
    pub potential: PotentialLedger<W>,
    /// Add-Path triggers at which `α·dist_S(v_i) < dist_S(v_{i-1}) + dist_M(v_{i-1}, v_i)` failed.
    pub charging_violations: usize,
    /// Empty unless tracing was requested.
    pub trace: Vec<TraceEvent<W>>,
}

impl<W> LastRun<W> {
    pub fn paths_added(&self) -> usize {
        self.path_vertices.len()
    }
}

/// Relaxes the shortest-path-tree path to `v` from the root, starting at the
/// deepest ancestor whose estimate is already no larger than its
/// shortest-path distance. Afterwards `d[v] <= dist_S(v)`.
pub fn add_path<W: Weight>(state: &mut RelaxState<W>, t_s: &RootedTree<W>, v: usize) {
    add_path_inner(state, t_s, v, None);
}

fn add_path_inner<W: Weight>(
    state: &mut RelaxState<W>,
    t_s: &RootedTree<W>,
    v: usize,
    mut trace: Option<&mut Vec<TraceEvent<W>>>,
) {
    let mut pending = Vec::new();
    let mut x = v;
    while let Some(px) = t_s.parent(x) {
        let settled = matches!(state.d[x], Some(dx) if dx <= t_s.dist(x));
        if settled {
            break;
        }
        pending.push(x);
        x = px;
    }
    for &y in pending.iter().rev() {
        let p = t_s.parent(y).expect("non-root on the path");
        let w = t_s.parent_weight(y);
        let changed = state.relax(p, y, w);
        if let Some(t) = trace.as_deref_mut() {
            t.push(TraceEvent::Relax {
                source: RelaxSource::AddPath,
                from: p,
                to: y,
                weight: w,
                changed,
                estimate: state.d[y].expect("relaxed from a finite estimate"),
            });
        }
    }
}

/// Builds an (α, 1 + 2/(α-1)) light approximate shortest-path tree from a
/// minimum spanning tree `t_m` and a shortest-path tree `t_s`.
pub fn find_last<W: Weight>(
    t_m: &RootedTree<W>,
    t_s: &RootedTree<W>,
    root: usize,
    alpha: &Scalar,
) -> Result<RootedTree<W>> {
    Ok(find_last_traced(t_m, t_s, root, alpha, false)?.tree)
}

/// [`find_last`] with run statistics, live invariant checks and, when
/// `trace` is set, the full event log.
pub fn find_last_traced<W: Weight>(
    t_m: &RootedTree<W>,
    t_s: &RootedTree<W>,
    root: usize,
    alpha: &Scalar,
    trace: bool,
) -> Result<LastRun<W>> {
    if !alpha.exceeds_one() {
        return Err(Error::InvalidArgument(format!(
            "alpha must exceed 1 (got {alpha}); use min_weight_spt for alpha = 1"
        )));
    }
    let n = t_m.n();
    if t_s.n() != n {
        return Err(Error::InvalidArgument(
            "input trees span different vertex counts".into(),
        ));
    }
    if root >= n {
        return Err(Error::VertexOutOfRange { vertex: root, n });
    }
    if t_s.root() != root {
        return Err(Error::InvalidArgument(format!(
            "shortest-path tree is rooted at {}, not {root}",
            t_s.root()
        )));
    }
    let rerooted;
    let t_m = if t_m.root() == root {
        t_m
    } else {
        rerooted = t_m.reroot(root)?;
        &rerooted
    };

    let mut events = Vec::new();
    let mut state = RelaxState::initialize(n, root);
    let mut visited = vec![false; n];
    visited[root] = true;
    let depth = t_m.depths();
    let mut path_vertices = Vec::new();
    let mut last_added = root;
    let mut charging_violations = 0;
    let mut ledger = PotentialLedger::new();
    let mut phi = W::ZERO;

    for step in euler_walk(t_m).steps() {
        let changed = state.relax(step.from, step.to, step.w);
        let dv = state.d[step.to].expect("walk reaches vertices from finite estimates");
        if trace {
            events.push(TraceEvent::Relax {
                source: RelaxSource::Walk,
                from: step.from,
                to: step.to,
                weight: step.w,
                changed,
                estimate: dv,
            });
        }
        ledger.moved(phi, dv);
        phi = dv;

        let v = step.to;
        if visited[v] {
            continue;
        }
        visited[v] = true;
        let spt_dist = t_s.dist(v);
        let adds_path = dv.gt_scaled(alpha, spt_dist);
        if trace {
            events.push(TraceEvent::Visit {
                vertex: v,
                estimate: dv,
                spt_dist,
                adds_path,
            });
        }
        if !adds_path {
            continue;
        }
        let bound = t_s.dist(last_added) + t_m.distance_between_with(&depth, last_added, v);
        if !bound.gt_scaled(alpha, spt_dist) {
            charging_violations += 1;
        }
        add_path_inner(&mut state, t_s, v, trace.then_some(&mut events));
        let after = state.d[v].expect("path relaxed");
        debug_assert!(after.le_scaled(alpha, spt_dist));
        if (dv - after).le_scaled(&(*alpha - Scalar::one()), spt_dist) {
            ledger.weak_drops += 1;
        }
        ledger.added_path_total = ledger.added_path_total + spt_dist;
        ledger.moved(phi, after);
        phi = after;
        path_vertices.push(v);
        last_added = v;
    }

    let relax_count = state.relax_count();
    let tree = state.into_tree(root)?;
    Ok(LastRun {
        tree,
        relax_count,
        path_vertices,
        potential: ledger,
        charging_violations,
        trace: events,
    })
}

/// Stretch and weight figures of a spanning tree.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeMetrics<W> {
    /// Tree distance from the root, recomputed from the parent links.
    pub tree_dist: Vec<W>,
    /// Graph distance from the root.
    pub graph_dist: Vec<W>,
    /// `tree_dist / graph_dist` per vertex (1 when both are 0).
    pub stretch: Vec<f64>,
    pub max_stretch: f64,
    pub tree_weight: W,
    pub mst_weight: W,
    pub weight_ratio: f64,
    pub paths_added: usize,
}

impl<W: Weight> TreeMetrics<W> {
    /// Vertices whose tree distance exceeds α times the graph distance.
    pub fn stretch_violations(&self, alpha: &Scalar) -> Vec<usize> {
        (0..self.tree_dist.len())
            .filter(|&v| self.tree_dist[v].gt_scaled(alpha, self.graph_dist[v]))
            .collect()
    }

    /// Every vertex within stretch α; exact in exact mode.
    pub fn stretch_within(&self, alpha: &Scalar) -> bool {
        (0..self.tree_dist.len()).all(|v| self.tree_dist[v].le_scaled(alpha, self.graph_dist[v]))
    }

    /// Tree weight at most β times the reference weight; exact in exact mode.
    pub fn weight_within(&self, beta: &Scalar) -> bool {
        self.tree_weight.le_scaled(beta, self.mst_weight)
    }

    pub fn with_paths_added(mut self, paths_added: usize) -> Self {
        self.paths_added = paths_added;
        self
    }
}

/// Measures `t` against fresh shortest-path distances in `g` and against the
/// reference weight `t_m_weight`.
pub fn evaluate<W: Weight>(g: &Graph<W>, t: &RootedTree<W>, t_m_weight: W, root: usize) -> Result<TreeMetrics<W>> {
    t.check_in_graph(g)?;
    if t.root() != root {
        return Err(Error::InvalidTree(format!(
            "tree is rooted at {}, not {root}",
            t.root()
        )));
    }
    let sp = dijkstra(g, root);
    let mut graph_dist = Vec::with_capacity(g.n());
    for (v, d) in sp.dist.iter().enumerate() {
        graph_dist.push(d.ok_or(Error::NotConnected { root, vertex: v })?);
    }
    let tree_dist: Vec<W> = (0..t.n()).map(|v| t.dist(v)).collect();
    let stretch: Vec<f64> = tree_dist
        .iter()
        .zip(&graph_dist)
        .map(|(&dt, &dg)| weight_ratio_f64(dt, dg))
        .collect();
    let max_stretch = stretch.iter().copied().fold(1.0, f64::max);
    let tree_weight = t.weight();
    Ok(TreeMetrics {
        tree_dist,
        graph_dist,
        stretch,
        max_stretch,
        tree_weight,
        mst_weight: t_m_weight,
        weight_ratio: weight_ratio_f64(tree_weight, t_m_weight),
        paths_added: 0,
    })
}
