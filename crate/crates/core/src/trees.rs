//! Rooted spanning trees and the two input trees of the LAST construction.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{dijkstra, Graph};
use crate::weight::Weight;

/// A spanning tree stored as parent links, rooted at `root`.
///
/// `dist[v]` is the tree distance from the root and always equals
/// `dist[parent[v]] + parent_weight[v]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootedTree<W> {
    root: usize,
    parent: Vec<Option<usize>>,
    parent_weight: Vec<W>,
    dist: Vec<W>,
}

impl<W: Weight> RootedTree<W> {
    /// Builds a tree from parent links, checking that they form a single
    /// tree over all `parent.len()` vertices with exactly one root.
    pub fn from_parents(root: usize, parent: Vec<Option<usize>>, parent_weight: Vec<W>) -> Result<Self> {
        let n = parent.len();
        if root >= n {
            return Err(Error::VertexOutOfRange { vertex: root, n });
        }
        if parent_weight.len() != n {
            return Err(Error::InvalidTree("parent and weight arrays differ in length".into()));
        }
        for (v, p) in parent.iter().enumerate() {
            match *p {
                None if v != root => {
                    return Err(Error::InvalidTree(format!("vertex {v} has no parent")));
                }
                Some(_) if v == root => {
                    return Err(Error::InvalidTree(format!("root {root} has a parent")));
                }
                Some(p) if p >= n => return Err(Error::VertexOutOfRange { vertex: p, n }),
                _ => {}
            }
        }
        let order = topological_order(root, &parent)?;
        let mut dist = vec![W::ZERO; n];
        for &v in &order[1..] {
            let p = parent[v].expect("non-root vertex has a parent");
            dist[v] = dist[p] + parent_weight[v];
        }
        Ok(RootedTree {
            root,
            parent,
            parent_weight,
            dist,
        })
    }

    /// Builds a tree from parent links, taking edge weights from `g`.
    pub fn from_graph_parents(g: &Graph<W>, root: usize, parent: Vec<Option<usize>>) -> Result<Self> {
        if parent.len() != g.n() {
            return Err(Error::InvalidTree(format!(
                "tree has {} vertices, graph has {}",
                parent.len(),
                g.n()
            )));
        }
        let mut weights = vec![W::ZERO; g.n()];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                weights[v] = g
                    .edge_weight(p, v)
                    .ok_or_else(|| Error::InvalidTree(format!("({p}, {v}) is not an edge of the graph")))?;
            }
        }
        Self::from_parents(root, parent, weights)
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn parent_weight(&self, v: usize) -> W {
        self.parent_weight[v]
    }

    pub fn dist(&self, v: usize) -> W {
        self.dist[v]
    }

    pub fn dists(&self) -> &[W] {
        &self.dist
    }

    /// Total edge weight.
    pub fn weight(&self) -> W {
        self.parent_weight.iter().fold(W::ZERO, |acc, &w| acc + w)
    }

    /// Root-to-`v` path as a vertex sequence starting at the root.
    pub fn path_from_root(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut x = v;
        while let Some(p) = self.parent[x] {
            path.push(p);
            x = p;
        }
        path.reverse();
        path
    }

    /// Children lists in increasing vertex order.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.n()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                children[p].push(v);
            }
        }
        children
    }

    /// Number of edges between each vertex and the root.
    pub fn depths(&self) -> Vec<usize> {
        let order = topological_order(self.root, &self.parent).expect("validated tree");
        let mut depth = vec![0; self.n()];
        for &v in &order[1..] {
            depth[v] = depth[self.parent[v].unwrap()] + 1;
        }
        depth
    }

    /// Tree distance between two arbitrary vertices.
    pub fn distance_between(&self, u: usize, v: usize) -> W {
        self.distance_between_with(&self.depths(), u, v)
    }

    /// As [`RootedTree::distance_between`] with precomputed depths; runs in
    /// time proportional to the number of tree edges on the u–v path.
    pub fn distance_between_with(&self, depth: &[usize], mut u: usize, mut v: usize) -> W {
        let mut total = W::ZERO;
        while depth[u] > depth[v] {
            total = total + self.parent_weight[u];
            u = self.parent[u].unwrap();
        }
        while depth[v] > depth[u] {
            total = total + self.parent_weight[v];
            v = self.parent[v].unwrap();
        }
        while u != v {
            total = total + self.parent_weight[u] + self.parent_weight[v];
            u = self.parent[u].unwrap();
            v = self.parent[v].unwrap();
        }
        total
    }

    /// The same undirected tree rooted at `new_root`, by flipping the
    /// parent links on the old-root to new-root path.
    pub fn reroot(&self, new_root: usize) -> Result<Self> {
        if new_root >= self.n() {
            return Err(Error::VertexOutOfRange {
                vertex: new_root,
                n: self.n(),
            });
        }
        let mut parent = self.parent.clone();
        let mut weight = self.parent_weight.clone();
        let mut prev: Option<usize> = None;
        let mut prev_w = W::ZERO;
        let mut x = new_root;
        loop {
            let (old_p, old_w) = (parent[x], weight[x]);
            parent[x] = prev;
            weight[x] = prev_w;
            match old_p {
                Some(p) => {
                    prev = Some(x);
                    prev_w = old_w;
                    x = p;
                }
                None => break,
            }
        }
        weight[new_root] = W::ZERO;
        Self::from_parents(new_root, parent, weight)
    }

    /// Checks that every tree edge is an edge of `g` with the same weight
    /// (oriented parent to child when `g` is directed).
    pub fn check_in_graph(&self, g: &Graph<W>) -> Result<()> {
        if self.n() != g.n() {
            return Err(Error::InvalidTree(format!(
                "tree has {} vertices, graph has {}",
                self.n(),
                g.n()
            )));
        }
        for v in 0..self.n() {
            if let Some(p) = self.parent[v] {
                match g.edge_weight(p, v) {
                    Some(w) if w.approx_eq(self.parent_weight[v]) => {}
                    Some(_) => {
                        return Err(Error::InvalidTree(format!("weight mismatch on edge ({p}, {v})")));
                    }
                    None => {
                        return Err(Error::InvalidTree(format!("({p}, {v}) is not an edge of the graph")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Root-first order of the vertices; fails on cycles or unreachable parts.
fn topological_order(root: usize, parent: &[Option<usize>]) -> Result<Vec<usize>> {
    let n = parent.len();
    let mut children = vec![Vec::new(); n];
    for (v, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            children[p].push(v);
        }
    }
    let mut order = Vec::with_capacity(n);
    order.push(root);
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        order.extend_from_slice(&children[v]);
        i += 1;
    }
    if order.len() != n {
        return Err(Error::InvalidTree("parent links contain a cycle".into()));
    }
    Ok(order)
}

/// Shortest-path tree by Dijkstra.
pub fn shortest_path_tree<W: Weight>(g: &Graph<W>, root: usize) -> Result<RootedTree<W>> {
    if root >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: root, n: g.n() });
    }
    let sp = dijkstra(g, root);
    if let Some(v) = sp.dist.iter().position(Option::is_none) {
        return Err(Error::NotConnected { root, vertex: v });
    }
    let parent = sp.parent.iter().map(|p| p.map(|(u, _)| u)).collect();
    let weights = sp.parent.iter().map(|p| p.map_or(W::ZERO, |(_, w)| w)).collect();
    RootedTree::from_parents(root, parent, weights)
}

/// Star from the root. In a metric graph (complete, triangle inequality)
/// this is a shortest-path tree and needs no search.
pub fn metric_shortest_path_tree<W: Weight>(g: &Graph<W>, root: usize) -> Result<RootedTree<W>> {
    if root >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: root, n: g.n() });
    }
    let mut parent = vec![None; g.n()];
    let mut weights = vec![W::ZERO; g.n()];
    for v in (0..g.n()).filter(|&v| v != root) {
        let w = g
            .edge_weight(root, v)
            .ok_or_else(|| Error::InvalidArgument(format!("graph is not complete: no edge ({root}, {v})")))?;
        parent[v] = Some(root);
        weights[v] = w;
    }
    RootedTree::from_parents(root, parent, weights)
}

#[derive(Clone, Copy)]
struct PrimKey<W> {
    w: W,
    lo: usize,
    hi: usize,
    from: usize,
    to: usize,
}

impl<W: Weight> PrimKey<W> {
    fn cmp_key(&self, other: &Self) -> Ordering {
        self.w
            .total_cmp(&other.w)
            .then(self.lo.cmp(&other.lo))
            .then(self.hi.cmp(&other.hi))
    }
}

impl<W: Weight> PartialEq for PrimKey<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_key(other) == Ordering::Equal
    }
}
impl<W: Weight> Eq for PrimKey<W> {}
impl<W: Weight> PartialOrd for PrimKey<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<W: Weight> Ord for PrimKey<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_key(other)
    }
}

/// Minimum spanning tree by Prim's algorithm grown from `root`, so the
/// result is already rooted there. Candidate edges are ordered by
/// `(weight, min endpoint, max endpoint)`.
pub fn minimum_spanning_tree<W: Weight>(g: &Graph<W>, root: usize) -> Result<RootedTree<W>> {
    if g.is_directed() {
        return Err(Error::InvalidArgument(
            "minimum spanning tree needs an undirected graph".into(),
        ));
    }
    if root >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: root, n: g.n() });
    }
    let n = g.n();
    let mut in_tree = vec![false; n];
    let mut parent = vec![None; n];
    let mut weights = vec![W::ZERO; n];
    let mut heap = BinaryHeap::new();
    let push_from = |u: usize, heap: &mut BinaryHeap<Reverse<PrimKey<W>>>, in_tree: &[bool]| {
        for (v, w) in g.neighbors(u) {
            if !in_tree[v] {
                heap.push(Reverse(PrimKey {
                    w,
                    lo: u.min(v),
                    hi: u.max(v),
                    from: u,
                    to: v,
                }));
            }
        }
    };
    in_tree[root] = true;
    push_from(root, &mut heap, &in_tree);
    let mut added = 1;
    while let Some(Reverse(k)) = heap.pop() {
        if in_tree[k.to] {
            continue;
        }
        in_tree[k.to] = true;
        parent[k.to] = Some(k.from);
        weights[k.to] = k.w;
        added += 1;
        push_from(k.to, &mut heap, &in_tree);
    }
    if added != n {
        let v = in_tree.iter().position(|&t| !t).unwrap();
        return Err(Error::NotConnected { root, vertex: v });
    }
    RootedTree::from_parents(root, parent, weights)
}

/// Sum of the tree's edge weights.
pub fn tree_weight<W: Weight>(t: &RootedTree<W>) -> W {
    t.weight()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph<u64> {
        // r = 0, a = 1, b = 2
        Graph::undirected(3, &[(0, 1, 1), (0, 2, 3), (1, 2, 1)]).unwrap()
    }

    #[test]
    fn spt_on_triangle() {
        let t = shortest_path_tree(&triangle(), 0).unwrap();
        assert_eq!(t.dists(), &[0, 1, 2]);
        assert_eq!(t.parent(2), Some(1));
    }

    #[test]
    fn spt_of_a_tree_is_the_tree() {
        let g = Graph::undirected(4, &[(0, 1, 2u64), (1, 2, 5), (1, 3, 7)]).unwrap();
        let t = shortest_path_tree(&g, 0).unwrap();
        assert_eq!(t.parents(), &[None, Some(0), Some(1), Some(1)]);
        assert_eq!(t.dists(), &[0, 2, 7, 9]);
    }

    #[test]
    fn metric_star_matches_dijkstra() {
        // Points on a line at 0, 1, 3, 6: |i - j| is a metric.
        let pos = [0u64, 1, 3, 6];
        let mut edges = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                edges.push((i, j, pos[j] - pos[i]));
            }
        }
        let g = Graph::undirected(4, &edges).unwrap();
        let star = metric_shortest_path_tree(&g, 0).unwrap();
        let spt = shortest_path_tree(&g, 0).unwrap();
        assert_eq!(star.dists(), spt.dists());
        assert!(star.parents().iter().skip(1).all(|&p| p == Some(0)));
        let path = Graph::undirected(3, &[(0, 1, 1u64), (1, 2, 1)]).unwrap();
        assert!(metric_shortest_path_tree(&path, 0).is_err());
    }

    #[test]
    fn mst_on_weighted_triangle() {
        let g = Graph::undirected(3, &[(0, 1, 1u64), (1, 2, 2), (0, 2, 3)]).unwrap();
        let t = minimum_spanning_tree(&g, 0).unwrap();
        assert_eq!(tree_weight(&t), 3);
        t.check_in_graph(&g).unwrap();
    }

    #[test]
    fn mst_errors() {
        let d = Graph::directed(2, &[(0, 1, 1u64)]).unwrap();
        assert!(matches!(minimum_spanning_tree(&d, 0), Err(Error::InvalidArgument(_))));
        let disc = Graph::undirected(3, &[(0, 1, 1u64)]).unwrap();
        assert_eq!(
            minimum_spanning_tree(&disc, 0).unwrap_err(),
            Error::NotConnected { root: 0, vertex: 2 }
        );
        assert_eq!(
            shortest_path_tree(&disc, 0).unwrap_err(),
            Error::NotConnected { root: 0, vertex: 2 }
        );
    }

    #[test]
    fn tree_weights() {
        let g = Graph::undirected(2, &[(0, 1, 5u64)]).unwrap();
        assert_eq!(tree_weight(&minimum_spanning_tree(&g, 0).unwrap()), 5);
        let single: RootedTree<u64> = RootedTree::from_parents(0, vec![None], vec![0]).unwrap();
        assert_eq!(tree_weight(&single), 0);
    }

    #[test]
    fn from_parents_rejects_cycles_and_extra_roots() {
        let cyc = RootedTree::from_parents(0, vec![None, Some(2), Some(1)], vec![0u64, 1, 1]);
        assert!(matches!(cyc, Err(Error::InvalidTree(_))));
        let two_roots = RootedTree::from_parents(0, vec![None, None], vec![0u64, 0]);
        assert!(matches!(two_roots, Err(Error::InvalidTree(_))));
    }

    #[test]
    fn reroot_flips_path() {
        let g = Graph::undirected(4, &[(0, 1, 1u64), (1, 2, 2), (2, 3, 4)]).unwrap();
        let t = minimum_spanning_tree(&g, 0).unwrap();
        let r = t.reroot(3).unwrap();
        assert_eq!(r.parents(), &[Some(1), Some(2), Some(3), None]);
        assert_eq!(r.dists(), &[7, 6, 4, 0]);
        assert_eq!(r.weight(), t.weight());
        r.check_in_graph(&g).unwrap();
    }

    #[test]
    fn distance_between_uses_tree_paths() {
        let g = Graph::undirected(5, &[(0, 1, 1u64), (1, 2, 2), (1, 3, 4), (0, 4, 8)]).unwrap();
        let t = minimum_spanning_tree(&g, 0).unwrap();
        assert_eq!(t.distance_between(2, 3), 6);
        assert_eq!(t.distance_between(2, 4), 11);
        assert_eq!(t.distance_between(3, 3), 0);
    }
}
