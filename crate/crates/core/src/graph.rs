//! Validated edge-weighted graphs, the line-oriented graph file format, and
//! single-source distances.
//!
//! File format (whitespace separated, `#` starts a comment):
//!
//! ```text
//! p <n> <m>      header: vertex and edge counts
//! e <u> <v> <w>  one edge
//! r <root>       designated root
//! d              the graph is directed
//! ```
//!
//! Integer weights select exact mode, weights containing `.` (or an
//! exponent) select float mode; mixing both in one file is an error.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge<W> {
    pub u: usize,
    pub v: usize,
    pub w: W,
}

impl<W> Edge<W> {
    pub fn new(u: usize, v: usize, w: W) -> Self {
        Edge { u, v, w }
    }
}

/// An immutable, validated graph with non-negative weights.
///
/// Parallel edges are collapsed to the lightest one (the orientation and
/// position of the first occurrence is kept); self-loops are rejected.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph<W> {
    n: usize,
    edges: Vec<Edge<W>>,
    directed: bool,
    root: Option<usize>,
    /// `adj[u]` lists `(neighbor, edge index)`; arcs only leave their tail
    /// when the graph is directed.
    adj: Vec<Vec<(usize, usize)>>,
}

impl<W: Weight> Graph<W> {
    pub fn new(n: usize, edges: Vec<Edge<W>>, directed: bool, root: Option<usize>) -> Result<Self> {
        if let Some(r) = root {
            if r >= n {
                return Err(Error::VertexOutOfRange { vertex: r, n });
            }
        }
        let mut kept: Vec<Edge<W>> = Vec::with_capacity(edges.len());
        let mut index: HashMap<(usize, usize), usize> = HashMap::with_capacity(edges.len());
        let mut total = W::ZERO;
        for e in edges {
            validate_edge(&e, n)?;
            let key = edge_key(e.u, e.v, directed);
            match index.get(&key) {
                Some(&i) => {
                    if e.w < kept[i].w {
                        kept[i].w = e.w;
                    }
                }
                None => {
                    index.insert(key, kept.len());
                    kept.push(e);
                }
            }
        }
        for e in &kept {
            total = total.checked_add(e.w).ok_or(Error::WeightOverflow)?;
        }
        // Walk prefixes reach twice the tree weight plus one distance.
        if W::EXACT && total.to_f64() > (u64::MAX / 4) as f64 {
            return Err(Error::WeightOverflow);
        }
        let mut adj = vec![Vec::new(); n];
        for (i, e) in kept.iter().enumerate() {
            adj[e.u].push((e.v, i));
            if !directed {
                adj[e.v].push((e.u, i));
            }
        }
        Ok(Graph {
            n,
            edges: kept,
            directed,
            root,
            adj,
        })
    }

    pub fn undirected(n: usize, edges: &[(usize, usize, W)]) -> Result<Self> {
        Self::new(
            n,
            edges.iter().map(|&(u, v, w)| Edge::new(u, v, w)).collect(),
            false,
            None,
        )
    }

    pub fn directed(n: usize, edges: &[(usize, usize, W)]) -> Result<Self> {
        Self::new(
            n,
            edges.iter().map(|&(u, v, w)| Edge::new(u, v, w)).collect(),
            true,
            None,
        )
    }

    pub fn with_root(mut self, root: usize) -> Result<Self> {
        if root >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: root,
                n: self.n,
            });
        }
        self.root = Some(root);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge<W>] {
        &self.edges
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    /// The explicit root if given, otherwise the graph's recorded root.
    pub fn resolve_root(&self, root: Option<usize>) -> Result<usize> {
        let r = root
            .or(self.root)
            .ok_or_else(|| Error::InvalidArgument("no root given and the graph records none".into()))?;
        if r >= self.n {
            return Err(Error::VertexOutOfRange { vertex: r, n: self.n });
        }
        Ok(r)
    }

    /// Outgoing `(neighbor, weight)` pairs of `u`.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = (usize, W)> + '_ {
        self.adj[u].iter().map(move |&(v, i)| (v, self.edges[i].w))
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// Weight of the edge `u -> v` (either orientation when undirected).
    pub fn edge_weight(&self, u: usize, v: usize) -> Option<W> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.adj[u]
            .iter()
            .find(|&&(x, _)| x == v)
            .map(|&(_, i)| self.edges[i].w)
    }

    pub fn total_weight(&self) -> W {
        self.edges.iter().fold(W::ZERO, |acc, e| acc + e.w)
    }

    /// Applies `f` to every weight, keeping the structure.
    pub fn map_weights<V: Weight>(&self, f: impl Fn(W) -> V) -> Result<Graph<V>> {
        Graph::new(
            self.n,
            self.edges.iter().map(|e| Edge::new(e.u, e.v, f(e.w))).collect(),
            self.directed,
            self.root,
        )
    }

    /// Single-source distances; `None` marks an unreachable vertex.
    pub fn distances_from(&self, source: usize) -> Vec<Option<W>> {
        dijkstra(self, source).dist
    }

    /// `dist_G(u, v)`, or `None` for an infinite distance.
    pub fn distance(&self, u: usize, v: usize) -> Result<Option<W>> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        Ok(self.distances_from(u)[v])
    }

    /// Renders the graph in the file format read by [`parse_graph`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p {} {}", self.n, self.edges.len());
        if self.directed {
            out.push_str("d\n");
        }
        if let Some(r) = self.root {
            let _ = writeln!(out, "r {r}");
        }
        for e in &self.edges {
            let _ = writeln!(out, "e {} {} {}", e.u, e.v, e.w.to_token());
        }
        out
    }
}

fn validate_edge<W: Weight>(e: &Edge<W>, n: usize) -> Result<()> {
    for x in [e.u, e.v] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if e.u == e.v {
        return Err(Error::SelfLoop(e.u));
    }
    if !e.w.is_valid() {
        return Err(Error::InvalidWeight { u: e.u, v: e.v });
    }
    Ok(())
}

fn edge_key(u: usize, v: usize, directed: bool) -> (usize, usize) {
    if directed || u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Multiple-root reduction: a new vertex `n` joined by weight-0 edges to
/// every vertex of `roots`, recorded as the new root.
pub fn add_virtual_root<W: Weight>(g: &Graph<W>, roots: &[usize]) -> Result<Graph<W>> {
    if roots.is_empty() {
        return Err(Error::InvalidArgument("root set must be non-empty".into()));
    }
    let vr = g.n();
    let mut edges = g.edges().to_vec();
    for &s in roots {
        if s >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: s, n: g.n() });
        }
        edges.push(Edge::new(vr, s, W::ZERO));
    }
    Graph::new(g.n() + 1, edges, g.is_directed(), Some(vr))
}

/// Output of [`dijkstra`]: distances plus the parent and parent-edge weight
/// of each reached vertex.
#[derive(Debug, Clone)]
pub struct ShortestPaths<W> {
    pub dist: Vec<Option<W>>,
    pub parent: Vec<Option<(usize, W)>>,
}

struct HeapEntry<W> {
    dist: W,
    vertex: usize,
}

impl<W: Weight> PartialEq for HeapEntry<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<W: Weight> Eq for HeapEntry<W> {}

impl<W: Weight> PartialOrd for HeapEntry<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: Weight> Ord for HeapEntry<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dist.total_cmp(&other.dist).then(self.vertex.cmp(&other.vertex))
    }
}

/// Binary-heap Dijkstra. Equal keys pop by smaller vertex id and a parent is
/// replaced only on strict improvement, so the result is deterministic.
pub fn dijkstra<W: Weight>(g: &Graph<W>, source: usize) -> ShortestPaths<W> {
    let n = g.n();
    let mut dist: Vec<Option<W>> = vec![None; n];
    let mut parent = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(W::ZERO);
    heap.push(Reverse(HeapEntry {
        dist: W::ZERO,
        vertex: source,
    }));
    while let Some(Reverse(HeapEntry { dist: du, vertex: u })) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for (v, w) in g.neighbors(u) {
            if done[v] {
                continue;
            }
            let cand = du + w;
            let better = match dist[v] {
                None => true,
                Some(dv) => cand.total_cmp(&dv) == Ordering::Less,
            };
            if better {
                dist[v] = Some(cand);
                parent[v] = Some((u, w));
                heap.push(Reverse(HeapEntry { dist: cand, vertex: v }));
            }
        }
    }
    ShortestPaths { dist, parent }
}

/// A parsed graph file in whichever weight mode the file used.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphFile {
    Exact(Graph<u64>),
    Float(Graph<f64>),
}

impl GraphFile {
    pub fn n(&self) -> usize {
        match self {
            GraphFile::Exact(g) => g.n(),
            GraphFile::Float(g) => g.n(),
        }
    }

    pub fn root(&self) -> Option<usize> {
        match self {
            GraphFile::Exact(g) => g.root(),
            GraphFile::Float(g) => g.root(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            GraphFile::Exact(g) => g.to_text(),
            GraphFile::Float(g) => g.to_text(),
        }
    }

    /// The exact-mode graph, or [`Error::InexactWeights`].
    pub fn exact(&self) -> Result<&Graph<u64>> {
        match self {
            GraphFile::Exact(g) => Ok(g),
            GraphFile::Float(_) => Err(Error::InexactWeights),
        }
    }
}

enum RawWeight {
    Int(u64),
    Float(f64),
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    if tok.starts_with('-') {
        return Err(parse_err(line, format!("negative {what}")));
    }
    tok.parse()
        .map_err(|_| parse_err(line, format!("malformed {what} `{tok}`")))
}

/// Parses the graph file format. Errors carry the offending line number.
pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut header: Option<(usize, usize)> = None;
    let mut directed = false;
    let mut root: Option<(usize, usize)> = None;
    let mut raw: Vec<(usize, usize, RawWeight, usize)> = Vec::new();
    let mut mode: Option<(bool, usize)> = None;

    for (idx, full) in text.lines().enumerate() {
        let line = idx + 1;
        let content = full.split('#').next().unwrap_or("");
        let mut toks = content.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        match kind {
            "p" => {
                if header.is_some() {
                    return Err(parse_err(line, "duplicate header"));
                }
                if !raw.is_empty() {
                    return Err(parse_err(line, "header after edges"));
                }
                let n = parse_usize(toks.next(), line, "vertex count")?;
                let m = parse_usize(toks.next(), line, "edge count")?;
                header = Some((n, m));
            }
            "d" => directed = true,
            "r" => {
                let r = parse_usize(toks.next(), line, "root")?;
                root = Some((r, line));
            }
            "e" => {
                let u = parse_usize(toks.next(), line, "vertex id")?;
                let v = parse_usize(toks.next(), line, "vertex id")?;
                let tok = toks.next().ok_or_else(|| parse_err(line, "missing weight"))?;
                if tok.starts_with('-') {
                    return Err(parse_err(line, "negative weight"));
                }
                let is_float = tok.contains(['.', 'e', 'E']);
                match mode {
                    None => mode = Some((is_float, line)),
                    Some((f, _)) if f != is_float => {
                        return Err(parse_err(line, "mixed integer and decimal weights"));
                    }
                    _ => {}
                }
                let w = if is_float {
                    RawWeight::Float(
                        f64::parse_token(tok)
                            .filter(|w| w.is_valid())
                            .ok_or_else(|| parse_err(line, format!("malformed weight `{tok}`")))?,
                    )
                } else {
                    RawWeight::Int(
                        u64::parse_token(tok).ok_or_else(|| parse_err(line, format!("malformed weight `{tok}`")))?,
                    )
                };
                if u == v {
                    return Err(parse_err(line, format!("self-loop at vertex {u}")));
                }
                if let Some((n, _)) = header {
                    for x in [u, v] {
                        if x >= n {
                            return Err(parse_err(line, format!("vertex {x} out of range")));
                        }
                    }
                }
                raw.push((u, v, w, line));
            }
            other => return Err(parse_err(line, format!("unknown line type `{other}`"))),
        }
        if let Some(extra) = toks.next() {
            return Err(parse_err(line, format!("unexpected token `{extra}`")));
        }
    }

    let n = match header {
        Some((n, m)) => {
            if m != raw.len() {
                return Err(parse_err(
                    text.lines().count().max(1),
                    format!("header declares {m} edges but {} were given", raw.len()),
                ));
            }
            n
        }
        None => raw.iter().map(|&(u, v, _, _)| u.max(v) + 1).max().unwrap_or(0),
    };
    if let Some((r, line)) = root {
        if r >= n {
            return Err(parse_err(line, format!("root {r} out of range")));
        }
    }
    let root = root.map(|(r, _)| r);
    let float_mode = matches!(mode, Some((true, _)));
    if float_mode {
        let edges = raw
            .into_iter()
            .map(|(u, v, w, _)| match w {
                RawWeight::Float(w) => Edge::new(u, v, w),
                RawWeight::Int(w) => Edge::new(u, v, w as f64),
            })
            .collect();
        Ok(GraphFile::Float(Graph::new(n, edges, directed, root)?))
    } else {
        let edges = raw
            .into_iter()
            .map(|(u, v, w, _)| match w {
                RawWeight::Int(w) => Edge::new(u, v, w),
                RawWeight::Float(w) => Edge::new(u, v, w as u64),
            })
            .collect();
        Ok(GraphFile::Exact(Graph::new(n, edges, directed, root)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_edge_with_root() {
        let g = parse_graph("p 2 1\ne 0 1 5\nr 0\n").unwrap();
        let g = g.exact().unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[Edge::new(0, 1, 5)]);
        assert_eq!(g.root(), Some(0));
        assert!(!g.is_directed());
    }

    #[test]
    fn negative_weight_reports_line() {
        let err = parse_graph("# comment\ne 0 1 -3\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                message: "negative weight".into()
            }
        );
        assert_eq!(err.to_string(), "negative weight at line 2");
    }

    #[test]
    fn parallel_edges_keep_lightest() {
        let g = parse_graph("e 0 1 5\ne 1 0 3\n").unwrap();
        let g = g.exact().unwrap();
        assert_eq!(g.edges(), &[Edge::new(0, 1, 3)]);
    }

    #[test]
    fn directed_parallel_arcs_are_distinct_by_orientation() {
        let g = parse_graph("d\ne 0 1 5\ne 1 0 3\ne 0 1 4\n").unwrap();
        let g = g.exact().unwrap();
        assert!(g.is_directed());
        assert_eq!(g.edges(), &[Edge::new(0, 1, 4), Edge::new(1, 0, 3)]);
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            ("p 2 1\ne 0 2 1\n", 2),
            ("e 1 1 4\n", 1),
            ("e 0 1 x\n", 1),
            ("e 0 1\n", 1),
            ("q 1\n", 1),
            ("e 0 1 1\ne 1 2 1.5\n", 2),
            ("p 3 2\ne 0 1 1\n", 2),
            ("e 0 1 1 7\n", 1),
            ("e 0 1 1\nr 5\n", 2),
        ];
        for (text, line) in cases {
            match parse_graph(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn float_mode_is_detected() {
        let g = parse_graph("e 0 1 0.5\ne 1 2 2.25\n").unwrap();
        match g {
            GraphFile::Float(g) => assert_eq!(g.total_weight(), 2.75),
            _ => panic!("expected float mode"),
        }
    }

    #[test]
    fn path_distances() {
        let g = Graph::undirected(3, &[(0, 1, 1u64), (1, 2, 1)]).unwrap();
        assert_eq!(g.distance(0, 2).unwrap(), Some(2));
        assert_eq!(g.distance(1, 1).unwrap(), Some(0));
        let h = Graph::undirected(3, &[(0, 1, 1u64)]).unwrap();
        assert_eq!(h.distance(0, 2).unwrap(), None);
    }

    #[test]
    fn directed_distances_follow_arcs() {
        let g = Graph::directed(3, &[(0, 1, 1u64), (2, 1, 1)]).unwrap();
        assert_eq!(g.distance(0, 1).unwrap(), Some(1));
        assert_eq!(g.distance(1, 0).unwrap(), None);
        assert_eq!(g.distance(0, 2).unwrap(), None);
    }

    #[test]
    fn virtual_root_over_one_root_preserves_distances() {
        let g = Graph::undirected(4, &[(0, 1, 2u64), (1, 2, 3), (0, 3, 7)]).unwrap();
        let h = add_virtual_root(&g, &[0]).unwrap();
        assert_eq!(h.n(), 5);
        assert_eq!(h.root(), Some(4));
        let d0 = g.distances_from(0);
        let dv = h.distances_from(4);
        assert_eq!(&dv[..4], &d0[..]);
    }

    #[test]
    fn virtual_root_requires_roots() {
        let g = Graph::undirected(2, &[(0, 1, 1u64)]).unwrap();
        assert!(matches!(add_virtual_root(&g, &[]), Err(Error::InvalidArgument(_))));
        assert!(matches!(
            add_virtual_root(&g, &[2]),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn weight_overflow_is_reported() {
        let r = Graph::undirected(3, &[(0, 1, u64::MAX / 2), (1, 2, u64::MAX / 2)]);
        assert_eq!(r.unwrap_err(), Error::WeightOverflow);
    }

    #[test]
    fn text_round_trip() {
        let g = Graph::new(
            4,
            vec![
                Edge::new(0, 1, 2.5f64),
                Edge::new(2, 1, 0.125),
                Edge::new(3, 0, 1.0 / 3.0),
            ],
            true,
            Some(2),
        )
        .unwrap();
        assert_eq!(parse_graph(&g.to_text()).unwrap(), GraphFile::Float(g));
    }
}
