//! Minimum-weight shortest-path trees in linear time.
//!
//! The shortest-path trees of a digraph are exactly the branchings of its
//! shortest-path subgraph (the tight arcs `dist(u) + w = dist(v)`). In that
//! subgraph every arc on a cycle weighs zero, so a minimum branching takes
//! the cheapest arc entering each zero-weight strongly connected component
//! and spans each component with zero arcs from its entry (base) vertex.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{dijkstra, Edge, Graph};
use crate::trees::RootedTree;

/// Replaces every undirected edge by the two opposite arcs of equal weight.
pub fn undirected_to_directed(g: &Graph<u64>) -> Result<Graph<u64>> {
    if g.is_directed() {
        return Err(Error::InvalidArgument("graph is already directed".into()));
    }
    let arcs = g
        .edges()
        .iter()
        .flat_map(|e| [Edge::new(e.u, e.v, e.w), Edge::new(e.v, e.u, e.w)])
        .collect();
    Graph::new(g.n(), arcs, true, g.root())
}

/// Tight arcs of a directed graph with exact distances from the root.
#[derive(Debug, Clone)]
pub struct SpSubgraph {
    pub root: usize,
    pub dist: Vec<u64>,
    /// Arcs `(u, v, w)` with `dist[u] + w == dist[v]`, in graph edge order.
    pub arcs: Vec<Edge<u64>>,
}

impl SpSubgraph {
    pub fn n(&self) -> usize {
        self.dist.len()
    }
}

pub fn shortest_path_subgraph(g: &Graph<u64>, root: usize) -> Result<SpSubgraph> {
    if !g.is_directed() {
        return Err(Error::InvalidArgument(
            "shortest-path subgraph expects a directed graph".into(),
        ));
    }
    if root >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: root, n: g.n() });
    }
    let sp = dijkstra(g, root);
    let mut dist = Vec::with_capacity(g.n());
    for (v, d) in sp.dist.iter().enumerate() {
        dist.push(d.ok_or(Error::NotConnected { root, vertex: v })?);
    }
    let arcs: Vec<Edge<u64>> = g
        .edges()
        .iter()
        .filter(|e| dist[e.u] + e.w == dist[e.v])
        .copied()
        .collect();
    let sub = SpSubgraph { root, dist, arcs };
    check_cycles_are_zero(&sub)?;
    Ok(sub)
}

/// Any tight arc inside a strongly connected component of the subgraph
/// lies on a cycle; all such arcs must weigh zero.
fn check_cycles_are_zero(sub: &SpSubgraph) -> Result<()> {
    let comps = strongly_connected(sub.n(), sub.arcs.iter().map(|e| (e.u, e.v)));
    match sub
        .arcs
        .iter()
        .find(|e| e.w != 0 && comps.comp_of[e.u] == comps.comp_of[e.v])
    {
        Some(e) => Err(Error::Invariant(format!(
            "shortest-path subgraph has positive arc ({}, {}) on a cycle",
            e.u, e.v
        ))),
        None => Ok(()),
    }
}

/// A partition of the vertices into strongly connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub comp_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.members.len()
    }
}

/// Iterative Tarjan. Members of each component are sorted.
pub fn strongly_connected(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Components {
    let mut adj = vec![Vec::new(); n];
    for (u, v) in arcs {
        adj[u].push(v);
    }
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp_of = vec![UNSEEN; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut next_index = 0;

    for start in 0..n {
        if index[start] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(start, 0)];
        index[start] = next_index;
        low[start] = next_index;
        next_index += 1;
        stack.push(start);
        on_stack[start] = true;
        while let Some(&mut (u, ref mut edge)) = call.last_mut() {
            if let Some(&v) = adj[u].get(*edge) {
                *edge += 1;
                if index[v] == UNSEEN {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                    call.push((v, 0));
                } else if on_stack[v] {
                    low[u] = low[u].min(index[v]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[u]);
            }
            if low[u] == index[u] {
                let id = members.len();
                let mut comp = Vec::new();
                loop {
                    let x = stack.pop().expect("tarjan stack");
                    on_stack[x] = false;
                    comp_of[x] = id;
                    comp.push(x);
                    if x == u {
                        break;
                    }
                }
                comp.sort_unstable();
                members.push(comp);
            }
        }
    }
    Components { comp_of, members }
}

/// Strongly connected components of the zero-weight tight arcs.
pub fn zero_weight_components(sp: &SpSubgraph) -> Components {
    strongly_connected(sp.n(), sp.arcs.iter().filter(|e| e.w == 0).map(|e| (e.u, e.v)))
}

/// A spanning arborescence directed away from the root.
#[derive(Debug, Clone, PartialEq)]
pub struct Branching {
    pub root: usize,
    /// Entering arc `(parent, weight)` of every non-root vertex.
    pub chosen: Vec<Option<(usize, u64)>>,
    pub total_weight: u64,
}

impl Branching {
    pub fn to_tree(&self) -> Result<RootedTree<u64>> {
        RootedTree::from_parents(
            self.root,
            self.chosen.iter().map(|c| c.map(|(p, _)| p)).collect(),
            self.chosen.iter().map(|c| c.map_or(0, |(_, w)| w)).collect(),
        )
    }
}

/// Minimum-weight shortest-path tree. Undirected graphs are first turned
/// into symmetric digraphs.
pub fn min_weight_spt(g: &Graph<u64>, root: usize) -> Result<Branching> {
    let converted;
    let dg = if g.is_directed() {
        g
    } else {
        converted = undirected_to_directed(g)?;
        &converted
    };
    let sp = shortest_path_subgraph(dg, root)?;
    let comps = zero_weight_components(&sp);
    let n = sp.n();
    let root_comp = comps.comp_of[root];

    // Cheapest entering arc per component, ties by (source, target).
    let mut entry: Vec<Option<Edge<u64>>> = vec![None; comps.count()];
    for e in &sp.arcs {
        let c = comps.comp_of[e.v];
        if c == root_comp || comps.comp_of[e.u] == c {
            continue;
        }
        let better = match entry[c] {
            None => true,
            Some(best) => (e.w, e.u, e.v) < (best.w, best.u, best.v),
        };
        if better {
            entry[c] = Some(*e);
        }
    }

    let mut internal: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in sp
        .arcs
        .iter()
        .filter(|e| e.w == 0 && comps.comp_of[e.u] == comps.comp_of[e.v])
    {
        internal[e.u].push(e.v);
    }

    let mut chosen: Vec<Option<(usize, u64)>> = vec![None; n];
    for (c, members) in comps.members.iter().enumerate() {
        let base = if c == root_comp {
            root
        } else {
            let e = entry[c]
                .ok_or_else(|| Error::Invariant(format!("component containing {} has no entering arc", members[0])))?;
            chosen[e.v] = Some((e.u, e.w));
            e.v
        };
        // Zero branching of the component by BFS from its base.
        let mut seen = vec![false; n];
        seen[base] = true;
        let mut queue = VecDeque::from([base]);
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &internal[u] {
                if !seen[v] {
                    seen[v] = true;
                    chosen[v] = Some((u, 0));
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        if reached != members.len() {
            return Err(Error::Invariant("zero component not spanned from its base".into()));
        }
    }

    for v in 0..n {
        if let Some((p, _)) = chosen[v] {
            if matches!(chosen[p], Some((q, _)) if q == v) {
                return Err(Error::Invariant(format!("both arcs between {p} and {v} chosen")));
            }
        }
    }
    let total_weight = chosen.iter().flatten().map(|&(_, w)| w).sum();
    let branching = Branching {
        root,
        chosen,
        total_weight,
    };
    let tree = branching
        .to_tree()
        .map_err(|e| Error::Invariant(format!("branching: {e}")))?;
    debug_assert!((0..n).all(|v| tree.dist(v) == sp.dist[v]));
    Ok(branching)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversion_doubles_edges() {
        let g = Graph::undirected(2, &[(0, 1, 5u64)]).unwrap();
        let d = undirected_to_directed(&g).unwrap();
        assert_eq!(d.edges(), &[Edge::new(0, 1, 5), Edge::new(1, 0, 5)]);
        assert!(undirected_to_directed(&d).is_err());
    }

    #[test]
    fn diamond_arcs_are_all_tight() {
        let g = Graph::directed(4, &[(0, 1, 1u64), (0, 2, 1), (1, 3, 1), (2, 3, 1)]).unwrap();
        let sp = shortest_path_subgraph(&g, 0).unwrap();
        assert_eq!(sp.dist, vec![0, 1, 1, 2]);
        assert_eq!(sp.arcs.len(), 4);
    }

    #[test]
    fn unique_paths_give_one_tree() {
        let g = Graph::directed(3, &[(0, 1, 1u64), (1, 2, 1), (0, 2, 5), (2, 0, 1)]).unwrap();
        let sp = shortest_path_subgraph(&g, 0).unwrap();
        assert_eq!(sp.arcs, vec![Edge::new(0, 1, 1), Edge::new(1, 2, 1)]);
    }

    #[test]
    fn zero_cycle_components() {
        // r -> a (0), a <-> b (0)
        let g = Graph::directed(3, &[(0, 1, 0u64), (1, 2, 0), (2, 1, 0)]).unwrap();
        let sp = shortest_path_subgraph(&g, 0).unwrap();
        assert_eq!(sp.arcs.len(), 3);
        let c = zero_weight_components(&sp);
        assert_eq!(c.count(), 2);
        assert_eq!(c.comp_of[1], c.comp_of[2]);
        let b = min_weight_spt(&g, 0).unwrap();
        assert_eq!(b.total_weight, 0);
        assert_eq!(b.chosen, vec![None, Some((0, 0)), Some((1, 0))]);
    }

    #[test]
    fn components_of_paths_and_plain_graphs() {
        let g = Graph::directed(3, &[(0, 1, 0u64), (1, 2, 0)]).unwrap();
        let c = zero_weight_components(&shortest_path_subgraph(&g, 0).unwrap());
        assert_eq!(c.count(), 3);
        let h = Graph::directed(3, &[(0, 1, 2u64), (1, 2, 3)]).unwrap();
        let c = zero_weight_components(&shortest_path_subgraph(&h, 0).unwrap());
        assert_eq!(c.members, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn asymmetric_diamond_prefers_lighter_tree() {
        // r->a 1, r->b 2, a->v 2, b->v 1: dist(v) = 3 both ways.
        let g = Graph::directed(4, &[(0, 1, 1u64), (0, 2, 2), (1, 3, 2), (2, 3, 1)]).unwrap();
        let b = min_weight_spt(&g, 0).unwrap();
        assert_eq!(b.total_weight, 4);
        assert_eq!(b.chosen[3], Some((2, 1)));
    }

    #[test]
    fn unique_paths_match_dijkstra_tree() {
        let g = Graph::undirected(4, &[(0, 1, 2u64), (1, 2, 2), (0, 3, 3), (2, 3, 9)]).unwrap();
        let b = min_weight_spt(&g, 0).unwrap();
        let t = crate::trees::shortest_path_tree(&g, 0).unwrap();
        assert_eq!(b.to_tree().unwrap().parents(), t.parents());
        assert_eq!(b.total_weight, t.weight());
    }

    #[test]
    fn unreachable_vertex_is_an_error() {
        let g = Graph::directed(3, &[(0, 1, 1u64), (2, 1, 1)]).unwrap();
        assert_eq!(
            min_weight_spt(&g, 0).unwrap_err(),
            Error::NotConnected { root: 0, vertex: 2 }
        );
    }
}
