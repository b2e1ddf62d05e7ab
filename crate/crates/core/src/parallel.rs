//! Sequential emulation of the logarithmic-depth parallel LAST construction.
//!
//! Positions along the Euler walk `u_1, ..., u_L` (`L = 2n - 1`) are
//! 1-based. Each occurrence of a vertex is treated as its own position, and
//! adding a shortest path only lowers the estimate of its destination, so
//! the predicate
//!
//! ```text
//! m(i, j)  <=>  i < j  and  dist_S(u_i) + dist_C(u_i, u_j) > α · dist_S(u_j)
//! ```
//!
//! decides whether a path added at `u_i` forces the next one at `u_j`.
//! `J(i) = min { j : m(i, j) }` is computed through `I`, `I*` and `J'` with
//! binary searches and a prefix maximum, the way the parallel algorithm does.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::last::{euler_walk, EulerWalk};
use crate::trees::RootedTree;
use crate::weight::{Scalar, Weight};

/// Euler walk positions with cumulative walk weight.
#[derive(Debug, Clone)]
pub struct WalkPrefix<W> {
    vertices: Vec<usize>,
    prefix: Vec<W>,
}

impl<W: Weight> WalkPrefix<W> {
    pub fn new(walk: &EulerWalk<W>) -> Self {
        let vertices = walk.vertices();
        let mut prefix = Vec::with_capacity(vertices.len());
        prefix.push(W::ZERO);
        for s in walk.steps() {
            let last = *prefix.last().unwrap();
            prefix.push(last + s.w);
        }
        WalkPrefix { vertices, prefix }
    }

    pub fn from_tree(t_m: &RootedTree<W>) -> Self {
        Self::new(&euler_walk(t_m))
    }

    /// Number of positions `L`.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex at 1-based position `i`.
    pub fn vertex(&self, i: usize) -> usize {
        self.vertices[i - 1]
    }

    /// `dist_C(u_1, u_i)`.
    pub fn prefix(&self, i: usize) -> W {
        self.prefix[i - 1]
    }

    /// `dist_C(u_i, u_j)` for `i <= j`.
    pub fn dist_c(&self, i: usize, j: usize) -> W {
        self.prefix[j - 1] - self.prefix[i - 1]
    }
}

/// The predicate `m(i, j)`; false whenever `i >= j`.
pub fn m_predicate<W: Weight>(wp: &WalkPrefix<W>, t_s: &RootedTree<W>, alpha: &Scalar, i: usize, j: usize) -> bool {
    if i >= j {
        return false;
    }
    let estimate = t_s.dist(wp.vertex(i)) + wp.dist_c(i, j);
    estimate.gt_scaled(alpha, t_s.dist(wp.vertex(j)))
}

/// `J` as a function of 1-based positions; `None` when no `j` satisfies `m(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JFunction(Vec<Option<usize>>);

impl JFunction {
    pub fn get(&self, i: usize) -> Option<usize> {
        self.0[i - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Option<usize>] {
        &self.0
    }
}

/// `I(j) = max { i : m(i, j) }` (0 when empty) by binary search over `i`,
/// valid because `m(·, j)` holds on a prefix of positions.
pub fn compute_i<W: Weight>(wp: &WalkPrefix<W>, t_s: &RootedTree<W>, alpha: &Scalar) -> Vec<usize> {
    (1..=wp.len())
        .map(|j| {
            if j == 1 || !m_predicate(wp, t_s, alpha, 1, j) {
                return 0;
            }
            // m(lo, j) holds; m(hi + 1, j) fails or hi + 1 == j.
            let (mut lo, mut hi) = (1, j - 1);
            while lo < hi {
                let mid = lo + (hi - lo).div_ceil(2);
                if m_predicate(wp, t_s, alpha, mid, j) {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            lo
        })
        .collect()
}

/// `I*(j) = max { I(j') : j' <= j }`.
pub fn prefix_maxima(values: &[usize]) -> Vec<usize> {
    values
        .iter()
        .scan(0, |best, &v| {
            *best = (*best).max(v);
            Some(*best)
        })
        .collect()
}

/// `J'(i) = min { j : I*(j) >= i }` by binary search over the monotone `I*`.
pub fn compute_j<W: Weight>(wp: &WalkPrefix<W>, t_s: &RootedTree<W>, alpha: &Scalar) -> JFunction {
    let i_star = prefix_maxima(&compute_i(wp, t_s, alpha));
    let len = wp.len();
    let values = (1..=len)
        .map(|i| {
            if i_star.last().copied().unwrap_or(0) < i {
                return None;
            }
            let idx = i_star.partition_point(|&v| v < i);
            Some(idx + 1)
        })
        .collect();
    JFunction(values)
}

/// `J(i) = min { j : m(i, j) }` by scanning every pair; the reference the
/// pipeline is checked against.
pub fn compute_j_direct<W: Weight>(wp: &WalkPrefix<W>, t_s: &RootedTree<W>, alpha: &Scalar) -> JFunction {
    let len = wp.len();
    JFunction(
        (1..=len)
            .map(|i| (i + 1..=len).find(|&j| m_predicate(wp, t_s, alpha, i, j)))
            .collect(),
    )
}

/// The chain `1, J(1), J(J(1)), ...` of positions that receive paths.
pub fn select_paths(j: &JFunction) -> Vec<usize> {
    let mut chain = Vec::new();
    if j.is_empty() {
        return chain;
    }
    let mut i = 1;
    chain.push(i);
    while let Some(next) = j.get(i) {
        debug_assert!(next > i);
        chain.push(next);
        i = next;
    }
    chain
}

/// All vertices on root paths of `t_s` to a vertex of `verts`.
pub fn ancestor_closure<W: Weight>(t_s: &RootedTree<W>, verts: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    let mut mark = vec![false; t_s.n()];
    for v in verts {
        let mut x = v;
        while !mark[x] {
            mark[x] = true;
            match t_s.parent(x) {
                Some(p) => x = p,
                None => break,
            }
        }
    }
    mark.iter().enumerate().filter(|(_, &m)| m).map(|(v, _)| v).collect()
}

/// Final tree: the shortest-path-tree parent for vertices of `s_star`, the
/// spanning-tree parent for all others.
pub fn assemble_parallel_last<W: Weight>(
    t_m: &RootedTree<W>,
    t_s: &RootedTree<W>,
    s_star: &BTreeSet<usize>,
) -> Result<RootedTree<W>> {
    let root = t_s.root();
    if t_m.root() != root || t_m.n() != t_s.n() {
        return Err(Error::InvalidArgument(
            "input trees must share vertex set and root".into(),
        ));
    }
    if !s_star.contains(&root) {
        return Err(Error::InvalidArgument("ancestor set must contain the root".into()));
    }
    for &v in s_star {
        if let Some(p) = t_s.parent(v) {
            if !s_star.contains(&p) {
                return Err(Error::InvalidArgument(format!(
                    "ancestor set misses {p}, the parent of {v}"
                )));
            }
        }
    }
    let n = t_m.n();
    let mut parent = vec![None; n];
    let mut weight = vec![W::ZERO; n];
    for v in (0..n).filter(|&v| v != root) {
        let source = if s_star.contains(&v) { t_s } else { t_m };
        parent[v] = source.parent(v);
        weight[v] = source.parent_weight(v);
    }
    RootedTree::from_parents(root, parent, weight).map_err(|e| Error::Invariant(format!("assembled parents: {e}")))
}

/// Everything the emulation computes on the way to its tree.
#[derive(Debug, Clone)]
pub struct PathSelection {
    pub j: JFunction,
    /// Selected walk positions `S`.
    pub positions: Vec<usize>,
    /// Ancestors of the selected vertices in the shortest-path tree.
    pub s_star: BTreeSet<usize>,
}

#[derive(Debug, Clone)]
pub struct ParallelRun<W> {
    pub tree: RootedTree<W>,
    pub selection: PathSelection,
    /// Filled when the direct scan was requested: whether it agreed with the pipeline.
    pub pipeline_agrees: Option<bool>,
}

/// Runs the emulation end to end. With `check_pipeline`, `J` is also
/// computed by the direct scan and compared.
pub fn parallel_last<W: Weight>(
    t_m: &RootedTree<W>,
    t_s: &RootedTree<W>,
    root: usize,
    alpha: &Scalar,
    check_pipeline: bool,
) -> Result<ParallelRun<W>> {
    if !alpha.exceeds_one() {
        return Err(Error::InvalidArgument(format!(
            "alpha must exceed 1 (got {alpha}); use min_weight_spt for alpha = 1"
        )));
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
    let wp = WalkPrefix::from_tree(t_m);
    let j = compute_j(&wp, t_s, alpha);
    let pipeline_agrees = check_pipeline.then(|| compute_j_direct(&wp, t_s, alpha) == j);
    let positions = select_paths(&j);
    let s_star = ancestor_closure(t_s, positions.iter().map(|&i| wp.vertex(i)));
    let tree = assemble_parallel_last(t_m, t_s, &s_star)?;
    Ok(ParallelRun {
        tree,
        selection: PathSelection { j, positions, s_star },
        pipeline_agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::trees::{minimum_spanning_tree, shortest_path_tree};

    fn path_tree(n: usize) -> RootedTree<u64> {
        let parent = (0..n).map(|v| v.checked_sub(1)).collect();
        RootedTree::from_parents(0, parent, vec![1; n]).unwrap()
    }

    #[test]
    fn predicate_basics() {
        let t = path_tree(3);
        let wp = WalkPrefix::from_tree(&t);
        let alpha = Scalar::integer(2);
        assert_eq!(wp.len(), 5);
        assert!(!m_predicate(&wp, &t, &alpha, 2, 2));
        assert!(!m_predicate(&wp, &t, &alpha, 3, 2));
        // u_1 = u_5 = root, dist_C = 4 > 0
        assert!(m_predicate(&wp, &t, &alpha, 1, 5));
        assert_eq!(wp.prefix(1), 0);
        assert_eq!(wp.dist_c(2, 4), 2);
    }

    #[test]
    fn select_paths_follows_chain() {
        assert_eq!(select_paths(&JFunction(vec![None, None])), vec![1]);
        let j = JFunction(vec![Some(5), None, None, None, None, None]);
        assert_eq!(select_paths(&j), vec![1, 5]);
    }

    #[test]
    fn ancestor_closure_cases() {
        let t = path_tree(4);
        assert_eq!(ancestor_closure(&t, [0]), BTreeSet::from([0]));
        assert_eq!(ancestor_closure(&t, [3]), BTreeSet::from([0, 1, 2, 3]));
        let once = ancestor_closure(&t, [2]);
        assert_eq!(ancestor_closure(&t, once.iter().copied()), once);
    }

    #[test]
    fn assembly_extremes() {
        let g = Graph::undirected(4, &[(0, 1, 1u64), (1, 2, 1), (2, 3, 1), (0, 3, 2), (0, 2, 3)]).unwrap();
        let t_m = minimum_spanning_tree(&g, 0).unwrap();
        let t_s = shortest_path_tree(&g, 0).unwrap();
        let all: BTreeSet<usize> = (0..4).collect();
        assert_eq!(
            assemble_parallel_last(&t_m, &t_s, &all).unwrap().parents(),
            t_s.parents()
        );
        let root_only = BTreeSet::from([0]);
        assert_eq!(
            assemble_parallel_last(&t_m, &t_s, &root_only).unwrap().parents(),
            t_m.parents()
        );
        assert!(assemble_parallel_last(&t_m, &t_s, &BTreeSet::from([1])).is_err());
    }

    #[test]
    fn tree_input_only_triggers_on_revisits() {
        let g = Graph::undirected(4, &[(0, 1, 2u64), (1, 2, 3), (0, 3, 1)]).unwrap();
        let t = minimum_spanning_tree(&g, 0).unwrap();
        let wp = WalkPrefix::from_tree(&t);
        assert_eq!(
            (1..=wp.len()).map(|i| wp.vertex(i)).collect::<Vec<_>>(),
            vec![0, 1, 2, 1, 0, 3, 0]
        );
        let alpha = Scalar::ratio(3, 2);
        let j = compute_j(&wp, &t, &alpha);
        assert_eq!(j, compute_j_direct(&wp, &t, &alpha));
        // Positions walked straight down from the root stay within the bound.
        for jpos in [2, 3] {
            assert!(!m_predicate(&wp, &t, &alpha, 1, jpos));
        }
        // The revisit of 1 carries walk weight 8 > 3/2 * 2, and so does 3.
        assert_eq!(j.get(1), Some(4));
        assert!(m_predicate(&wp, &t, &alpha, 1, 6));
        let s = select_paths(&j);
        let s_star = ancestor_closure(&t, s.iter().map(|&i| wp.vertex(i)));
        let tree = assemble_parallel_last(&t, &t, &s_star).unwrap();
        assert_eq!(tree.parents(), t.parents());
    }

    /// Vertex 4 only meets the bound through the walk from 1 back up to 5,
    /// but the assembled tree routes 5 through its own tree parent 2.
    #[test]
    fn assembled_tree_can_exceed_stretch() {
        let g = Graph::undirected(
            6,
            &[
                (0, 1, 5u64),
                (0, 3, 4),
                (3, 5, 3),
                (0, 4, 4),
                (1, 3, 5),
                (1, 4, 5),
                (2, 3, 2),
                (2, 5, 3),
                (1, 5, 2),
                (4, 5, 1),
            ],
        )
        .unwrap();
        let t_m = minimum_spanning_tree(&g, 0).unwrap();
        let t_s = shortest_path_tree(&g, 0).unwrap();
        let alpha = Scalar::integer(2);
        let run = parallel_last(&t_m, &t_s, 0, &alpha, true).unwrap();
        assert_eq!(run.pipeline_agrees, Some(true));
        assert_eq!(run.selection.positions, vec![1, 5, 10, 11]);
        assert_eq!(run.selection.s_star, BTreeSet::from([0, 1, 3]));
        // Position 7 (vertex 4) sits exactly at the bound, so it adds nothing.
        let wp = WalkPrefix::from_tree(&t_m);
        assert_eq!(wp.vertex(7), 4);
        assert!(!m_predicate(&wp, &t_s, &alpha, 5, 7));
        assert_eq!(t_s.dist(4), 4);
        assert_eq!(run.tree.dist(4), 10);
    }
}
