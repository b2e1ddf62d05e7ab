//! Exhaustive ground truth for small instances.
//!
//! Everything here works on exact (`u64`) graphs and compares distances with
//! exact rational arithmetic.
//!
//! [`min_beta_for_alpha`] enumerates spanning trees of a compressed graph:
//! every maximal path whose internal vertices are non-root and of degree two
//! (a *chain*) becomes one edge. A spanning tree of the original graph
//! either contains a chain whole or misses exactly one of its edges, and the
//! best edge to drop depends only on the tree distances of the chain's two
//! ends. Subdivided instances with hundreds of vertices therefore cost no
//! more than their skeleton.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{dijkstra, Graph};
use crate::min_spt::undirected_to_directed;
use crate::trees::{minimum_spanning_tree, RootedTree};
use crate::weight::{weight_ratio_exact, Rational, Scalar, Weight};

/// Maximum number of (compressed) edges an enumeration will accept.
pub const EDGE_GUARD: usize = 20;
/// Maximum number of vertices for [`brute_min_weight_spt`].
pub const BRANCHING_VERTEX_GUARD: usize = 12;
const BRANCHING_COMBINATION_GUARD: u64 = 1 << 24;

/// Union-find with rollback (no path compression).
struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<Option<(usize, usize)>>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            self.history.push(None);
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.history.push(Some((a, b)));
        true
    }

    fn rollback(&mut self) {
        if let Some(Some((a, b))) = self.history.pop() {
            self.parent[b] = b;
            self.size[a] -= self.size[b];
        }
    }
}

fn connected_with(n: usize, pairs: impl Iterator<Item = (usize, usize)>) -> bool {
    let mut dsu = Dsu::new(n);
    let mut joined = 1;
    for (u, v) in pairs {
        if dsu.union(u, v) {
            joined += 1;
        }
    }
    joined >= n
}

/// Calls `visit` with the edge indices of every spanning tree of the
/// multigraph `(n, pairs)`, in lexicographic order of included indices.
fn for_each_spanning_tree(n: usize, pairs: &[(usize, usize)], visit: &mut dyn FnMut(&[usize])) {
    if n == 0 {
        return;
    }
    if !connected_with(n, pairs.iter().copied()) {
        return;
    }
    let mut dsu = Dsu::new(n);
    let mut chosen = Vec::with_capacity(n.saturating_sub(1));
    recurse(n, pairs, 0, &mut dsu, &mut chosen, visit);
}

fn recurse(
    n: usize,
    pairs: &[(usize, usize)],
    k: usize,
    dsu: &mut Dsu,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if chosen.len() + 1 == n {
        visit(chosen);
        return;
    }
    if k == pairs.len() || chosen.len() + (pairs.len() - k) + 1 < n {
        return;
    }
    let (u, v) = pairs[k];
    if dsu.union(u, v) {
        chosen.push(k);
        recurse(n, pairs, k + 1, dsu, chosen, visit);
        chosen.pop();
    }
    dsu.rollback();
    let still_connected = connected_with(
        n,
        chosen.iter().map(|&i| pairs[i]).chain(pairs[k + 1..].iter().copied()),
    );
    if still_connected {
        recurse(n, pairs, k + 1, dsu, chosen, visit);
    }
}

fn require_undirected<W: Weight>(g: &Graph<W>) -> Result<()> {
    if g.is_directed() {
        return Err(Error::InvalidArgument("expected an undirected graph".into()));
    }
    Ok(())
}

fn guard_edges(m: usize, what: &str) -> Result<()> {
    if m > EDGE_GUARD {
        return Err(Error::TooLarge(format!("{m} {what} exceed the limit of {EDGE_GUARD}")));
    }
    Ok(())
}

/// All spanning trees of a small undirected graph, as sorted edge indices
/// into [`Graph::edges`].
#[derive(Debug, Clone)]
pub struct SpanningTreeIterator {
    trees: std::vec::IntoIter<Vec<usize>>,
}

impl Iterator for SpanningTreeIterator {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.trees.next()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.trees.size_hint()
    }
}

impl ExactSizeIterator for SpanningTreeIterator {}

pub fn enumerate_spanning_trees<W: Weight>(g: &Graph<W>) -> Result<SpanningTreeIterator> {
    require_undirected(g)?;
    guard_edges(g.m(), "edges")?;
    let pairs: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let mut trees = Vec::new();
    for_each_spanning_tree(g.n(), &pairs, &mut |t| trees.push(t.to_vec()));
    Ok(SpanningTreeIterator {
        trees: trees.into_iter(),
    })
}

/// Converts a set of edges forming a spanning tree into a rooted tree.
pub fn tree_from_edges(g: &Graph<u64>, root: usize, edge_ids: &[usize]) -> Result<RootedTree<u64>> {
    let mut adj = vec![Vec::new(); g.n()];
    for &i in edge_ids {
        let e = g.edges()[i];
        adj[e.u].push(e.v);
        adj[e.v].push(e.u);
    }
    let mut parent = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    RootedTree::from_graph_parents(g, root, parent)
}

/// Number of spanning trees by the matrix-tree theorem (fraction-free
/// elimination on the reduced Laplacian).
pub fn kirchhoff_count<W: Weight>(g: &Graph<W>) -> Result<i128> {
    require_undirected(g)?;
    let n = g.n();
    if n <= 1 {
        return Ok(1);
    }
    let k = n - 1;
    let mut lap = vec![vec![0i128; k]; k];
    for e in g.edges() {
        for (a, b) in [(e.u, e.v), (e.v, e.u)] {
            if a > 0 {
                lap[a - 1][a - 1] += 1;
                if b > 0 {
                    lap[a - 1][b - 1] -= 1;
                }
            }
        }
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for i in 0..k {
        if lap[i][i] == 0 {
            match (i + 1..k).find(|&r| lap[r][i] != 0) {
                Some(r) => {
                    lap.swap(i, r);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                lap[r][c] = (lap[r][c] * lap[i][i] - lap[r][i] * lap[i][c]) / prev;
            }
        }
        prev = lap[i][i];
    }
    Ok(sign * lap[k - 1][k - 1])
}

fn exact_alpha(alpha: &Scalar) -> Result<Scalar> {
    match alpha.as_rational() {
        Some(r) if r >= Rational::from_integer(1) => Ok(*alpha),
        Some(r) => Err(Error::InvalidArgument(format!("alpha must be at least 1, got {r}"))),
        None => Err(Error::InvalidArgument("the oracle only accepts exact alpha".into())),
    }
}

fn graph_distances(g: &Graph<u64>, root: usize) -> Result<Vec<u64>> {
    if root >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: root, n: g.n() });
    }
    dijkstra(g, root)
        .dist
        .into_iter()
        .enumerate()
        .map(|(v, d)| d.ok_or(Error::NotConnected { root, vertex: v }))
        .collect()
}

/// True iff `t` spans `g`, every tree distance is within `alpha` times the
/// graph distance, and `w(t) <= beta * mst_weight`.
pub fn is_last(
    g: &Graph<u64>,
    t: &RootedTree<u64>,
    root: usize,
    alpha: &Scalar,
    beta: &Scalar,
    mst_weight: u64,
) -> bool {
    if t.root() != root || t.check_in_graph(g).is_err() {
        return false;
    }
    let Ok(dist) = graph_distances(g, root) else {
        return false;
    };
    (0..g.n()).all(|v| t.dist(v).le_scaled(alpha, dist[v])) && t.weight().le_scaled(beta, mst_weight)
}

/// A maximal path `verts[0] - ... - verts[k]` whose internal vertices are
/// non-root vertices of degree two.
#[derive(Debug, Clone)]
struct Chain {
    /// Indices of the end vertices among the skeleton vertices.
    a: usize,
    b: usize,
    verts: Vec<usize>,
    weights: Vec<u64>,
    total: u64,
}

#[derive(Debug, Clone)]
struct Skeleton {
    keys: Vec<usize>,
    chains: Vec<Chain>,
}

fn compress(g: &Graph<u64>, root: usize) -> Skeleton {
    let n = g.n();
    let mut key_of = vec![None; n];
    let mut keys = Vec::new();
    for (v, key) in key_of.iter_mut().enumerate() {
        if v == root || g.degree(v) != 2 {
            *key = Some(keys.len());
            keys.push(v);
        }
    }
    let mut adj: Vec<Vec<(usize, usize, u64)>> = vec![Vec::new(); n];
    for (i, e) in g.edges().iter().enumerate() {
        adj[e.u].push((e.v, i, e.w));
        adj[e.v].push((e.u, i, e.w));
    }
    let mut used = vec![false; g.m()];
    let mut chains = Vec::new();
    for &start in &keys {
        for &(first, first_edge, first_w) in &adj[start] {
            if used[first_edge] {
                continue;
            }
            used[first_edge] = true;
            let mut verts = vec![start, first];
            let mut weights = vec![first_w];
            let mut prev_edge = first_edge;
            let mut cur = first;
            while key_of[cur].is_none() {
                let &(next, edge, w) = adj[cur].iter().find(|&&(_, e, _)| e != prev_edge).expect("degree two");
                used[edge] = true;
                verts.push(next);
                weights.push(w);
                prev_edge = edge;
                cur = next;
            }
            chains.push(Chain {
                a: key_of[start].unwrap(),
                b: key_of[cur].unwrap(),
                total: weights.iter().sum(),
                verts,
                weights,
            });
        }
    }
    Skeleton { keys, chains }
}

/// Lightest tree meeting the distance requirement.
#[derive(Debug, Clone)]
pub struct BetaSearch {
    /// `weight / mst_weight` (1 when both are zero).
    pub beta: Rational,
    pub weight: u64,
    pub mst_weight: u64,
    pub tree: RootedTree<u64>,
    /// Spanning trees of the compressed graph that were examined.
    pub skeleton_trees: usize,
}

/// Exact minimum β such that `g` has an (α, β)-LAST rooted at `root`.
pub fn min_beta_for_alpha(g: &Graph<u64>, root: usize, alpha: &Scalar) -> Result<BetaSearch> {
    min_beta_with_guard(g, root, alpha, EDGE_GUARD)
}

/// [`min_beta_for_alpha`] with a custom limit on compressed edges.
pub fn min_beta_with_guard(g: &Graph<u64>, root: usize, alpha: &Scalar, guard: usize) -> Result<BetaSearch> {
    require_undirected(g)?;
    let alpha = exact_alpha(alpha)?;
    let dist = graph_distances(g, root)?;
    let mst_weight = minimum_spanning_tree(g, root)?.weight();
    let sk = compress(g, root);
    let skeleton_edges: Vec<usize> = (0..sk.chains.len())
        .filter(|&c| sk.chains[c].a != sk.chains[c].b)
        .collect();
    if skeleton_edges.len() > guard {
        return Err(Error::TooLarge(format!(
            "{} compressed edges exceed the limit of {guard}",
            skeleton_edges.len()
        )));
    }
    let pairs: Vec<(usize, usize)> = skeleton_edges
        .iter()
        .map(|&c| (sk.chains[c].a, sk.chains[c].b))
        .collect();
    let k = sk.keys.len();
    let root_key = sk.keys.iter().position(|&v| v == root).unwrap();
    let ok = |tree_d: u64, v: usize| tree_d.le_scaled(&alpha, dist[v]);

    let mut examined = 0;
    // (removed weight, included chain flags, break position per omitted chain)
    let mut best: Option<(u64, Vec<Option<usize>>)> = None;
    let mut key_adj: Vec<Vec<(usize, u64)>> = vec![Vec::new(); k];
    for_each_spanning_tree(k, &pairs, &mut |chosen| {
        examined += 1;
        for list in key_adj.iter_mut() {
            list.clear();
        }
        let mut included = vec![false; sk.chains.len()];
        for &i in chosen {
            let c = &sk.chains[skeleton_edges[i]];
            included[skeleton_edges[i]] = true;
            key_adj[c.a].push((c.b, c.total));
            key_adj[c.b].push((c.a, c.total));
        }
        let mut key_d = vec![u64::MAX; k];
        key_d[root_key] = 0;
        let mut queue = VecDeque::from([root_key]);
        while let Some(x) = queue.pop_front() {
            for &(y, w) in &key_adj[x] {
                if key_d[y] == u64::MAX {
                    key_d[y] = key_d[x] + w;
                    queue.push_back(y);
                }
            }
        }
        if !(0..k).all(|x| ok(key_d[x], sk.keys[x])) {
            return;
        }
        let mut removed = 0;
        let mut breaks = vec![None; sk.chains.len()];
        for (ci, c) in sk.chains.iter().enumerate() {
            let (da, db) = (key_d[c.a], key_d[c.b]);
            let inner = c.verts.len() - 2;
            let mut prefix = 0;
            let mut via_a = Vec::with_capacity(inner);
            let mut via_b = Vec::with_capacity(inner);
            for i in 0..inner {
                prefix += c.weights[i];
                let v = c.verts[i + 1];
                via_a.push(ok(da + prefix, v));
                via_b.push(ok(db + (c.total - prefix), v));
            }
            if included[ci] {
                let mut prefix = 0;
                for i in 0..inner {
                    prefix += c.weights[i];
                    let d = (da + prefix).min(db + (c.total - prefix));
                    if !ok(d, c.verts[i + 1]) {
                        return;
                    }
                }
                continue;
            }
            // Dropping edge e serves internal vertices before it from a and
            // the rest from b.
            let mut suffix_ok = vec![true; inner + 1];
            for i in (0..inner).rev() {
                suffix_ok[i] = suffix_ok[i + 1] && via_b[i];
            }
            let mut prefix_ok = true;
            let mut choice: Option<usize> = None;
            for e in 0..=inner {
                if prefix_ok && suffix_ok[e] && choice.is_none_or(|b| c.weights[e] > c.weights[b]) {
                    choice = Some(e);
                }
                if e < inner {
                    prefix_ok &= via_a[e];
                }
            }
            match choice {
                Some(e) => {
                    removed += c.weights[e];
                    breaks[ci] = Some(e);
                }
                None => return,
            }
        }
        if best.as_ref().is_none_or(|(r, _)| removed > *r) {
            best = Some((removed, breaks));
        }
    });

    let (removed, breaks) = best.ok_or_else(|| {
        Error::Invariant("no spanning tree meets the distance requirement, yet a shortest-path tree must".into())
    })?;
    let mut dropped = std::collections::HashSet::new();
    for (ci, c) in sk.chains.iter().enumerate() {
        if let Some(e) = breaks[ci] {
            let (u, v) = (c.verts[e], c.verts[e + 1]);
            dropped.insert((u.min(v), u.max(v)));
        }
    }
    let kept: Vec<usize> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| !dropped.contains(&(e.u.min(e.v), e.u.max(e.v))))
        .map(|(i, _)| i)
        .collect();
    let tree = tree_from_edges(g, root, &kept)?;
    let weight = g.total_weight() - removed;
    debug_assert_eq!(tree.weight(), weight);
    Ok(BetaSearch {
        beta: weight_ratio_exact(weight, mst_weight).expect("zero weight over zero MST"),
        weight,
        mst_weight,
        tree,
        skeleton_trees: examined,
    })
}

/// Same quantity as [`min_beta_for_alpha`] by plain enumeration of all
/// spanning trees of `g` (at most [`EDGE_GUARD`] edges).
pub fn min_beta_exhaustive(g: &Graph<u64>, root: usize, alpha: &Scalar) -> Result<Rational> {
    let alpha = exact_alpha(alpha)?;
    let dist = graph_distances(g, root)?;
    let mst_weight = minimum_spanning_tree(g, root)?.weight();
    let mut best: Option<u64> = None;
    for ids in enumerate_spanning_trees(g)? {
        let t = tree_from_edges(g, root, &ids)?;
        if (0..g.n()).all(|v| t.dist(v).le_scaled(&alpha, dist[v])) {
            best = Some(best.map_or(t.weight(), |b| b.min(t.weight())));
        }
    }
    let best = best.ok_or_else(|| Error::Invariant("no spanning tree meets the distance requirement".into()))?;
    Ok(weight_ratio_exact(best, mst_weight).expect("zero weight over zero MST"))
}

/// Whether `g` has an (α, β)-LAST rooted at `root`.
pub fn has_last(g: &Graph<u64>, root: usize, alpha: &Scalar, beta: &Scalar) -> Result<bool> {
    let search = min_beta_for_alpha(g, root, alpha)?;
    let beta = beta
        .as_rational()
        .ok_or_else(|| Error::InvalidArgument("the oracle only accepts exact beta".into()))?;
    Ok(search.beta <= beta)
}

/// Minimum total weight over all branchings of the shortest-path subgraph,
/// by trying every combination of tight entering arcs. Distances come from
/// Bellman-Ford so the result does not depend on the fast path.
pub fn brute_min_weight_spt(g: &Graph<u64>, root: usize) -> Result<u64> {
    let converted;
    let g = if g.is_directed() {
        g
    } else {
        converted = undirected_to_directed(g)?;
        &converted
    };
    let n = g.n();
    if root >= n {
        return Err(Error::VertexOutOfRange { vertex: root, n });
    }
    if n > BRANCHING_VERTEX_GUARD {
        return Err(Error::TooLarge(format!(
            "{n} vertices exceed the limit of {BRANCHING_VERTEX_GUARD}"
        )));
    }
    let dist = bellman_ford(g, root);
    let mut entering: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
    for e in g.edges() {
        if let (Some(du), Some(dv)) = (dist[e.u], dist[e.v]) {
            if e.v != root && du + e.w == dv {
                entering[e.v].push((e.u, e.w));
            }
        }
    }
    let mut combos: u64 = 1;
    for v in (0..n).filter(|&v| v != root) {
        if entering[v].is_empty() {
            return Err(Error::NotConnected { root, vertex: v });
        }
        combos = combos.saturating_mul(entering[v].len() as u64);
    }
    if combos > BRANCHING_COMBINATION_GUARD {
        return Err(Error::TooLarge(format!("{combos} arc combinations")));
    }
    let others: Vec<usize> = (0..n).filter(|&v| v != root).collect();
    let mut pick = vec![0usize; others.len()];
    let mut parent = vec![None; n];
    let mut best: Option<u64> = None;
    loop {
        let mut weight = 0;
        for (slot, &v) in others.iter().enumerate() {
            let (p, w) = entering[v][pick[slot]];
            parent[v] = Some(p);
            weight += w;
        }
        if is_arborescence(&parent, root) {
            best = Some(best.map_or(weight, |b| b.min(weight)));
        }
        // Odometer step.
        let mut slot = 0;
        loop {
            if slot == others.len() {
                return best.ok_or_else(|| Error::Invariant("no branching of the shortest-path subgraph".into()));
            }
            pick[slot] += 1;
            if pick[slot] < entering[others[slot]].len() {
                break;
            }
            pick[slot] = 0;
            slot += 1;
        }
    }
}

fn is_arborescence(parent: &[Option<usize>], root: usize) -> bool {
    (0..parent.len()).all(|start| {
        let mut v = start;
        for _ in 0..parent.len() {
            if v == root {
                return true;
            }
            match parent[v] {
                Some(p) => v = p,
                None => return false,
            }
        }
        v == root
    })
}

fn bellman_ford(g: &Graph<u64>, root: usize) -> Vec<Option<u64>> {
    let mut dist = vec![None; g.n()];
    dist[root] = Some(0);
    for _ in 0..g.n() {
        let mut changed = false;
        for e in g.edges() {
            let mut relax = |u: usize, v: usize| {
                if let Some(du) = dist[u] {
                    if dist[v].is_none_or(|dv| du + e.w < dv) {
                        dist[v] = Some(du + e.w);
                        changed = true;
                    }
                }
            };
            relax(e.u, e.v);
            if !g.is_directed() {
                relax(e.v, e.u);
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::gen_random;

    #[test]
    fn complete_graph_counts() {
        // Cayley: n^(n-2)
        for n in 2..=6usize {
            let edges: Vec<(usize, usize, u64)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v, 1))).collect();
            let g = Graph::undirected(n, &edges).unwrap();
            let expected = (n as i128).pow(n as u32 - 2);
            assert_eq!(kirchhoff_count(&g).unwrap(), expected);
            if g.m() <= EDGE_GUARD {
                assert_eq!(enumerate_spanning_trees(&g).unwrap().len() as i128, expected);
            }
        }
    }

    #[test]
    fn enumeration_matches_kirchhoff_on_random_graphs() {
        for seed in 0..30 {
            let g = gen_random(7, 6 + (seed as usize % 10), 9, seed).unwrap();
            let trees: Vec<Vec<usize>> = enumerate_spanning_trees(&g).unwrap().collect();
            assert_eq!(trees.len() as i128, kirchhoff_count(&g).unwrap());
            let mut dedup = trees.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), trees.len());
            for t in &trees {
                assert!(tree_from_edges(&g, 0, t).is_ok());
            }
        }
    }

    #[test]
    fn guard_rejects_large_graphs() {
        let g = gen_random(10, 21, 5, 1).unwrap();
        assert!(matches!(enumerate_spanning_trees(&g), Err(Error::TooLarge(_))));
    }

    #[test]
    fn min_beta_of_a_tree_is_one() {
        let g = gen_random(9, 8, 5, 4).unwrap();
        let s = min_beta_for_alpha(&g, 0, &Scalar::ratio(11, 10)).unwrap();
        assert_eq!(s.beta, Rational::from_integer(1));
        assert_eq!(s.skeleton_trees, 1);
    }

    #[test]
    fn triangle_needs_the_heavy_edge() {
        // Root 0; the MST path 0-1-2 reaches 2 at 2, the direct edge weighs 1.5.
        let g = Graph::undirected(3, &[(0, 1, 2u64), (1, 2, 2), (0, 2, 3)]).unwrap();
        let strict = min_beta_for_alpha(&g, 0, &Scalar::integer(1)).unwrap();
        assert_eq!(strict.beta, Rational::new(5, 4));
        let loose = min_beta_for_alpha(&g, 0, &Scalar::ratio(4, 3)).unwrap();
        assert_eq!(loose.beta, Rational::from_integer(1));
        assert!(is_last(&g, &loose.tree, 0, &Scalar::ratio(4, 3), &Scalar::one(), 4));
        assert!(!is_last(&g, &loose.tree, 0, &Scalar::ratio(13, 10), &Scalar::one(), 4));
    }

    #[test]
    fn compressed_search_matches_plain_enumeration() {
        for seed in 0..60 {
            let n = 4 + seed as usize % 6;
            let m = (n - 1 + seed as usize % 5).min(n * (n - 1) / 2).min(EDGE_GUARD);
            let g = gen_random(n, m, 12, seed).unwrap();
            for alpha in [
                Scalar::integer(1),
                Scalar::ratio(6, 5),
                Scalar::ratio(3, 2),
                Scalar::integer(2),
            ] {
                let fast = min_beta_for_alpha(&g, 0, &alpha).unwrap();
                assert_eq!(
                    fast.beta,
                    min_beta_exhaustive(&g, 0, &alpha).unwrap(),
                    "seed {seed} alpha {alpha}"
                );
                assert!(is_last(
                    &g,
                    &fast.tree,
                    0,
                    &alpha,
                    &Scalar::Exact(fast.beta),
                    fast.mst_weight
                ));
            }
        }
    }

    #[test]
    fn cycle_through_root_is_one_chain() {
        let g = Graph::undirected(4, &[(0, 1, 1u64), (1, 2, 1), (2, 3, 1), (3, 0, 1)]).unwrap();
        let s = min_beta_for_alpha(&g, 0, &Scalar::integer(1)).unwrap();
        assert_eq!(s.skeleton_trees, 1);
        assert_eq!(s.weight, 3);
        assert_eq!(s.tree.dists(), &[0, 1, 2, 1]);
    }

    #[test]
    fn brute_branching_examples() {
        let diamond = Graph::directed(4, &[(0, 1, 1u64), (0, 2, 2), (1, 3, 2), (2, 3, 1)]).unwrap();
        assert_eq!(brute_min_weight_spt(&diamond, 0).unwrap(), 4);
        let zero = Graph::directed(3, &[(0, 1, 0u64), (1, 2, 0), (2, 0, 0), (2, 1, 0), (1, 0, 0)]).unwrap();
        assert_eq!(brute_min_weight_spt(&zero, 0).unwrap(), 0);
        let unique = Graph::undirected(4, &[(0, 1, 2u64), (1, 2, 2), (0, 3, 3), (2, 3, 9)]).unwrap();
        assert_eq!(brute_min_weight_spt(&unique, 0).unwrap(), 7);
    }

    #[test]
    fn brute_branching_matches_fast_algorithm() {
        for seed in 0..80 {
            let g = crate::instances::gen_random_digraph(6, 8, 3, seed % 3 == 0, seed).unwrap();
            let fast = crate::min_spt::min_weight_spt(&g, 0).unwrap();
            assert_eq!(fast.total_weight, brute_min_weight_spt(&g, 0).unwrap(), "seed {seed}");
        }
    }
}
