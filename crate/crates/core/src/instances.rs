//! Instance generators: the lower-bound family, the 3-SAT gadget, the
//! union used to move from β = 1 to larger β, and seeded random graphs.
//!
//! Fractional constants are scaled by the least common denominator so that
//! every generated graph has integer weights.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::trees::minimum_spanning_tree;
use crate::weight::{Rational, Scalar};

fn exact(s: &Scalar, name: &str) -> Result<Rational> {
    s.as_rational()
        .ok_or_else(|| Error::InvalidArgument(format!("{name} must be an exact rational")))
}

fn lcm_of_denominators(values: &[Rational]) -> i128 {
    values.iter().fold(1i128, |acc, r| acc.lcm(r.denom()))
}

fn scaled(r: Rational, scale: i128) -> Result<u64> {
    let v = r * Rational::from_integer(scale);
    if !v.is_integer() || *v.numer() < 0 {
        return Err(Error::Invariant(format!(
            "{r} does not scale to a non-negative integer"
        )));
    }
    u64::try_from(*v.numer()).map_err(|_| Error::WeightOverflow)
}

/// Appends a path from `from` to `to` of total weight `total` made of edges
/// of weight `step` (the last one takes the remainder). Internal vertices
/// are numbered from `*next`.
fn push_subdivided(edges: &mut Vec<Edge<u64>>, next: &mut usize, from: usize, to: usize, total: u64, step: u64) {
    let count = total.div_ceil(step).max(1);
    let mut prev = from;
    let mut used = 0;
    for k in 0..count {
        let w = if k + 1 == count { total - used } else { step };
        used += w;
        let cur = if k + 1 == count {
            to
        } else {
            *next += 1;
            *next - 1
        };
        edges.push(Edge::new(prev, cur, w));
        prev = cur;
    }
}

fn count_subdivided(total: u64, step: u64) -> usize {
    total.div_ceil(step).max(1) as usize - 1
}

/// Parameters of the lower-bound family: a root joined to a center by a
/// path of weight `A = α+1`, the center joined to `leaves` leaves by paths
/// of weight `B = α+ε-1`, and a direct root-leaf edge of weight `C = 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBoundSpec {
    pub alpha: Scalar,
    pub epsilon: Scalar,
    pub delta: Scalar,
    pub leaves: usize,
}

#[derive(Debug, Clone)]
pub struct LowerBoundInstance {
    pub graph: Graph<u64>,
    /// Every weight is the real value times `scale`.
    pub scale: u64,
    pub center: usize,
    pub leaves: Vec<usize>,
    /// `((α+1) + ℓ(α-1+ε)) · scale`.
    pub predicted_mst_weight: u64,
    /// `1 + ℓ(2-δ) / (α+1 + ℓ(α-1+ε))`.
    pub predicted_ratio_bound: Rational,
}

impl LowerBoundSpec {
    pub fn a(&self) -> Result<Rational> {
        Ok(exact(&self.alpha, "alpha")? + Rational::one())
    }

    pub fn b(&self) -> Result<Rational> {
        Ok(exact(&self.alpha, "alpha")? + exact(&self.epsilon, "epsilon")? - Rational::one())
    }

    pub fn c(&self) -> Rational {
        Rational::from_integer(2)
    }

    /// Largest admissible subdivision weight (exclusive): `min(ε, 1) / (2ℓ)`.
    pub fn delta_threshold(&self) -> Result<Rational> {
        let eps = exact(&self.epsilon, "epsilon")?;
        Ok(eps.min(Rational::one()) / Rational::from_integer(2 * self.leaves as i128))
    }

    pub fn validate(&self) -> Result<()> {
        let alpha = exact(&self.alpha, "alpha")?;
        let eps = exact(&self.epsilon, "epsilon")?;
        let delta = exact(&self.delta, "delta")?;
        if alpha <= Rational::one() {
            return Err(Error::InvalidArgument(format!("alpha must exceed 1, got {alpha}")));
        }
        if eps <= Rational::zero() {
            return Err(Error::InvalidArgument(format!("epsilon must be positive, got {eps}")));
        }
        if self.leaves == 0 {
            return Err(Error::InvalidArgument("at least one leaf is required".into()));
        }
        let threshold = self.delta_threshold()?;
        if delta <= Rational::zero() || delta >= threshold {
            return Err(Error::InvalidArgument(format!(
                "delta must satisfy 0 < delta < min(epsilon, 1)/(2*leaves) = {threshold}, got {delta}"
            )));
        }
        Ok(())
    }

    pub fn predicted_ratio_bound(&self) -> Result<Rational> {
        let alpha = exact(&self.alpha, "alpha")?;
        let eps = exact(&self.epsilon, "epsilon")?;
        let delta = exact(&self.delta, "delta")?;
        Ok(ratio_bound_formula(alpha, eps, delta, self.leaves as i128))
    }
}

/// `1 + ℓ(2-δ) / (α+1 + ℓ(α-1+ε))`.
pub fn ratio_bound_formula(alpha: Rational, eps: Rational, delta: Rational, leaves: i128) -> Rational {
    let one = Rational::one();
    let l = Rational::from_integer(leaves);
    one + l * (Rational::from_integer(2) - delta) / (alpha + one + l * (alpha - one + eps))
}

/// Vertex 0 is the root, vertex 1 the center, vertices `2..2+ℓ` the
/// leaves; subdivision vertices follow.
pub fn gen_lower_bound(spec: &LowerBoundSpec) -> Result<LowerBoundInstance> {
    spec.validate()?;
    let alpha = exact(&spec.alpha, "alpha")?;
    let eps = exact(&spec.epsilon, "epsilon")?;
    let delta = exact(&spec.delta, "delta")?;
    let (a, b, c) = (spec.a()?, spec.b()?, spec.c());
    let scale = lcm_of_denominators(&[alpha, eps, delta]);
    let (a_s, b_s, c_s, d_s) = (
        scaled(a, scale)?,
        scaled(b, scale)?,
        scaled(c, scale)?,
        scaled(delta, scale)?,
    );
    let l = spec.leaves;
    let n = 2 + l + count_subdivided(a_s, d_s) + l * count_subdivided(b_s, d_s);
    let mut edges = Vec::new();
    let mut next = 2 + l;
    push_subdivided(&mut edges, &mut next, 0, 1, a_s, d_s);
    let leaves: Vec<usize> = (2..2 + l).collect();
    for &leaf in &leaves {
        push_subdivided(&mut edges, &mut next, 1, leaf, b_s, d_s);
    }
    for &leaf in &leaves {
        edges.push(Edge::new(0, leaf, c_s));
    }
    debug_assert_eq!(next, n);
    let predicted = scaled(a + Rational::from_integer(l as i128) * b, scale)?;
    Ok(LowerBoundInstance {
        graph: Graph::new(n, edges, false, Some(0))?,
        scale: scale as u64,
        center: 1,
        leaves,
        predicted_mst_weight: predicted,
        predicted_ratio_bound: ratio_bound_formula(alpha, eps, delta, l as i128),
    })
}

/// A CNF formula with exactly three literals per clause. Literals are
/// DIMACS style: `+k` is `x_k`, `-k` its negation, `1 <= k <= vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatFormula {
    vars: usize,
    clauses: Vec<[i32; 3]>,
}

impl SatFormula {
    pub fn new(vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        for clause in &clauses {
            for &lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > vars {
                    return Err(Error::InvalidArgument(format!("literal {lit} outside 1..={vars}")));
                }
            }
        }
        Ok(SatFormula { vars, clauses })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    pub fn is_satisfied_by(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&lit| {
                let value = assignment >> (lit.unsigned_abs() - 1) & 1 == 1;
                value == (lit > 0)
            })
        })
    }

    /// Truth-table search; only meant for a handful of variables.
    pub fn satisfying_assignment(&self) -> Option<u64> {
        assert!(self.vars < 32, "truth table over {} variables", self.vars);
        (0..1u64 << self.vars).find(|&a| self.is_satisfied_by(a))
    }

    pub fn is_satisfiable(&self) -> bool {
        self.satisfying_assignment().is_some()
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for c in &self.clauses {
            out.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        out
    }
}

impl fmt::Display for SatFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lit = |l: i32| if l > 0 { format!("x{l}") } else { format!("!x{}", -l) };
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| format!("({} | {} | {})", lit(c[0]), lit(c[1]), lit(c[2])))
            .collect();
        write!(f, "{}", parts.join(" & "))
    }
}

impl FromStr for SatFormula {
    type Err = Error;

    /// DIMACS CNF. Clauses may span lines and must end with `0`.
    fn from_str(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current: Vec<i32> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            let parse_err = |message: String| Error::Parse { line: line_no, message };
            if line.starts_with('p') {
                let t: Vec<&str> = line.split_whitespace().collect();
                if t.len() != 4 || t[1] != "cnf" {
                    return Err(parse_err("expected `p cnf <vars> <clauses>`".into()));
                }
                let v = t[2]
                    .parse()
                    .map_err(|_| parse_err(format!("bad variable count {:?}", t[2])))?;
                let c = t[3]
                    .parse()
                    .map_err(|_| parse_err(format!("bad clause count {:?}", t[3])))?;
                header = Some((v, c));
                continue;
            }
            if header.is_none() {
                return Err(parse_err("clause before `p cnf` header".into()));
            }
            for tok in line.split_whitespace() {
                let lit: i32 = tok.parse().map_err(|_| parse_err(format!("bad literal {tok:?}")))?;
                if lit != 0 {
                    current.push(lit);
                    continue;
                }
                let clause: [i32; 3] = current
                    .as_slice()
                    .try_into()
                    .map_err(|_| parse_err(format!("clause has {} literals, expected 3", current.len())))?;
                clauses.push(clause);
                current.clear();
            }
        }
        let (vars, count) = header.ok_or(Error::Parse {
            line: 1,
            message: "missing `p cnf` header".into(),
        })?;
        if !current.is_empty() {
            return Err(Error::InvalidArgument("last clause is not terminated by 0".into()));
        }
        if clauses.len() != count {
            return Err(Error::InvalidArgument(format!(
                "header declares {count} clauses, found {}",
                clauses.len()
            )));
        }
        SatFormula::new(vars, clauses)
    }
}

/// Gadget constants `A = 1, B = α, D = 2α, E = (α-1)(2α+1), W = 1 + 2α + 1/α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatConstants {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
    pub e: Rational,
    pub w: Rational,
}

impl SatConstants {
    pub fn for_alpha(alpha: Rational) -> Self {
        let one = Rational::one();
        let two = Rational::from_integer(2);
        SatConstants {
            a: one,
            b: alpha,
            d: two * alpha,
            e: (alpha - one) * (two * alpha + one),
            w: one + two * alpha + one / alpha,
        }
    }

    /// The inequalities that make (α,1)-LASTs correspond to satisfying
    /// assignments.
    pub fn satisfies_requirements(&self, alpha: Rational) -> bool {
        let SatConstants { a, b, d, e, w } = *self;
        let ordered = Rational::zero() < a && a < b && b < w;
        let literal = d + a + e <= alpha * (a + d).min(b + w);
        let clause_direct = d + a + b <= alpha * (d + a + b).min(w);
        let clause_indirect = alpha * (d + a + b).min(w) < d + a + e + b;
        ordered && literal && clause_direct && clause_indirect
    }
}

#[derive(Debug, Clone)]
pub struct SatGadget {
    pub graph: Graph<u64>,
    pub scale: u64,
    /// Scaled `A, B, D, E, W`.
    pub weights: [u64; 5],
    vars: usize,
}

impl SatGadget {
    pub const ROOT: usize = 0;
    pub const S: usize = 1;

    /// `X_k` for `lit = +k`, `X̄_k` for `lit = -k`.
    pub fn literal_vertex(&self, lit: i32) -> usize {
        let k = lit.unsigned_abs() as usize - 1;
        2 + 2 * k + usize::from(lit < 0)
    }

    pub fn clause_vertex(&self, j: usize) -> usize {
        2 + 2 * self.vars + j
    }
}

pub fn gen_3sat(f: &SatFormula, alpha: &Scalar) -> Result<SatGadget> {
    let alpha = exact(alpha, "alpha")?;
    if alpha <= Rational::one() {
        return Err(Error::InvalidArgument(format!("alpha must exceed 1, got {alpha}")));
    }
    if f.vars == 0 || f.clauses.is_empty() {
        return Err(Error::InvalidArgument("formula must have variables and clauses".into()));
    }
    let k = SatConstants::for_alpha(alpha);
    // Factor 2 keeps the subdivision step A/2 integral.
    let scale = 2 * lcm_of_denominators(&[k.a, k.b, k.d, k.e, k.w]);
    let [a, b, d, e, w] = [k.a, k.b, k.d, k.e, k.w].map(|r| scaled(r, scale));
    let (a, b, d, e, w) = (a?, b?, d?, e?, w?);
    let step = a / 2;
    let base = 2 + 2 * f.vars + f.clauses.len();
    let n = base + count_subdivided(d, step) + f.vars * count_subdivided(e, step);
    let gadget = SatGadget {
        graph: Graph::new(1, Vec::new(), false, None)?,
        scale: scale as u64,
        weights: [a, b, d, e, w],
        vars: f.vars,
    };
    let mut edges = Vec::new();
    let mut next = base;
    push_subdivided(&mut edges, &mut next, SatGadget::ROOT, SatGadget::S, d, step);
    for i in 1..=f.vars as i32 {
        let (x, nx) = (gadget.literal_vertex(i), gadget.literal_vertex(-i));
        edges.push(Edge::new(SatGadget::S, x, a));
        edges.push(Edge::new(SatGadget::S, nx, a));
        push_subdivided(&mut edges, &mut next, x, nx, e, step);
    }
    for (j, clause) in f.clauses.iter().enumerate() {
        let cv = gadget.clause_vertex(j);
        edges.push(Edge::new(SatGadget::ROOT, cv, w));
        for &lit in clause {
            edges.push(Edge::new(cv, gadget.literal_vertex(lit), b));
        }
    }
    debug_assert_eq!(next, n);
    Ok(SatGadget {
        graph: Graph::new(n, edges, false, Some(SatGadget::ROOT))?,
        ..gadget
    })
}

/// Glues `g_prime` onto `g_star` at their roots after rescaling so that the
/// MST of `g_star` weighs one unit and that of `g_prime` weighs `c` units.
/// Vertices of `g_star` keep their ids; the non-root vertices of `g_prime`
/// follow in order.
pub fn compose_union(g_star: &Graph<u64>, g_prime: &Graph<u64>, c: Rational) -> Result<Graph<u64>> {
    let r_star = g_star
        .root()
        .ok_or_else(|| Error::InvalidArgument("first graph has no root".into()))?;
    let r_prime = g_prime
        .root()
        .ok_or_else(|| Error::InvalidArgument("second graph has no root".into()))?;
    if g_star.is_directed() || g_prime.is_directed() {
        return Err(Error::InvalidArgument("union expects undirected graphs".into()));
    }
    if c < Rational::zero() {
        return Err(Error::InvalidArgument(format!("scale c must be non-negative, got {c}")));
    }
    if c.is_zero() {
        return Ok(g_star.clone());
    }
    let m_star = minimum_spanning_tree(g_star, r_star)?.weight();
    let m_prime = minimum_spanning_tree(g_prime, r_prime)?.weight();
    if m_star == 0 || m_prime == 0 {
        return Err(Error::InvalidArgument("both graphs need a positive MST weight".into()));
    }
    let to_u64 = |v: i128| u64::try_from(v).map_err(|_| Error::WeightOverflow);
    let f_star = to_u64(*c.denom())?.checked_mul(m_prime).ok_or(Error::WeightOverflow)?;
    let f_prime = to_u64(*c.numer())?.checked_mul(m_star).ok_or(Error::WeightOverflow)?;
    let scale = |w: u64, f: u64| w.checked_mul(f).ok_or(Error::WeightOverflow);

    let n_star = g_star.n();
    let map = |v: usize| {
        if v == r_prime {
            r_star
        } else if v < r_prime {
            n_star + v
        } else {
            n_star + v - 1
        }
    };
    let mut edges = Vec::with_capacity(g_star.m() + g_prime.m());
    for e in g_star.edges() {
        edges.push(Edge::new(e.u, e.v, scale(e.w, f_star)?));
    }
    for e in g_prime.edges() {
        edges.push(Edge::new(map(e.u), map(e.v), scale(e.w, f_prime)?));
    }
    Graph::new(n_star + g_prime.n() - 1, edges, false, Some(r_star))
}

fn check_weight_range(max_w: u64) -> Result<()> {
    if max_w == 0 {
        return Err(Error::InvalidArgument("max weight must be at least 1".into()));
    }
    Ok(())
}

/// Picks `k` distinct unordered pairs outside `taken`.
fn sample_pairs(rng: &mut ChaCha8Rng, n: usize, k: usize, taken: &mut HashSet<(usize, usize)>) -> Vec<(usize, usize)> {
    let total = n * n.saturating_sub(1) / 2;
    let free = total - taken.len();
    if k * 2 > free {
        let mut all: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|p| !taken.contains(p))
            .collect();
        all.shuffle(rng);
        all.truncate(k);
        taken.extend(all.iter().copied());
        return all;
    }
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v {
            continue;
        }
        let p = (u.min(v), u.max(v));
        if taken.insert(p) {
            out.push(p);
        }
    }
    out
}

/// Connected undirected graph rooted at 0: a random spanning tree plus
/// `m - (n-1)` further edges, weights uniform in `1..=max_w`.
pub fn gen_random(n: usize, m: usize, max_w: u64, seed: u64) -> Result<Graph<u64>> {
    check_weight_range(max_w)?;
    if n == 0 {
        return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
    }
    let max_m = n * (n - 1) / 2;
    if m + 1 < n || m > max_m {
        return Err(Error::InvalidArgument(format!(
            "edge count {m} outside {}..={max_m} for {n} vertices",
            n - 1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order[1..].shuffle(&mut rng);
    let mut taken = HashSet::with_capacity(m);
    let mut pairs = Vec::with_capacity(m);
    for i in 1..n {
        let u = order[rng.gen_range(0..i)];
        let v = order[i];
        let p = (u.min(v), u.max(v));
        taken.insert(p);
        pairs.push(p);
    }
    pairs.extend(sample_pairs(&mut rng, n, m - (n - 1), &mut taken));
    let edges = pairs
        .into_iter()
        .map(|(u, v)| Edge::new(u, v, rng.gen_range(1..=max_w)))
        .collect();
    Graph::new(n, edges, false, Some(0))
}

/// Directed graph with every vertex reachable from root 0: a random
/// arborescence plus `extra` arcs, weights uniform in `0..=max_w`. With
/// `zero_cycle`, a directed cycle of zero-weight arcs through at least two
/// non-root vertices is added on top.
pub fn gen_random_digraph(n: usize, extra: usize, max_w: u64, zero_cycle: bool, seed: u64) -> Result<Graph<u64>> {
    if n < 2 || (zero_cycle && n < 3) {
        return Err(Error::InvalidArgument(format!("too few vertices ({n})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push(Edge::new(u, v, rng.gen_range(0..=max_w)));
    }
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            edges.push(Edge::new(u, v, rng.gen_range(0..=max_w)));
        }
    }
    if zero_cycle {
        let mut cycle: Vec<usize> = (1..n).collect();
        cycle.shuffle(&mut rng);
        cycle.truncate(rng.gen_range(2..=n - 1));
        for i in 0..cycle.len() {
            let next = cycle[(i + 1) % cycle.len()];
            edges.push(Edge::new(cycle[i], next, 0));
        }
    }
    Graph::new(n, edges, true, Some(0))
}

/// A weighted path `0 - 1 - ... - n-1` plus `chords` random chords whose
/// weight is at most the path distance they bridge. Rooted at 0.
pub fn gen_path_with_chords(n: usize, chords: usize, max_w: u64, seed: u64) -> Result<Graph<u64>> {
    check_weight_range(max_w)?;
    if n < 2 {
        return Err(Error::InvalidArgument("path needs at least two vertices".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let path: Vec<u64> = (1..n).map(|_| rng.gen_range(1..=max_w)).collect();
    let mut prefix = vec![0u64; n];
    for i in 1..n {
        prefix[i] = prefix[i - 1] + path[i - 1];
    }
    let mut edges: Vec<Edge<u64>> = (1..n).map(|i| Edge::new(i - 1, i, path[i - 1])).collect();
    if n > 2 {
        for _ in 0..chords {
            let u = rng.gen_range(0..n - 2);
            let v = rng.gen_range(u + 2..n);
            let span = prefix[v] - prefix[u];
            edges.push(Edge::new(u, v, rng.gen_range(1..=span)));
        }
    }
    Graph::new(n, edges, false, Some(0))
}

/// An 8-vertex instance (vertex `k` here is vertex `k+1` in the usual
/// drawing) on which Find-Last with α = 2 adds exactly two paths: the
/// estimate of vertex 4 drops from 40 to 15 through the direct edge, and
/// that of vertex 6 from 40 to 15 through vertex 7.
pub fn sample_instance() -> Graph<u64> {
    let edges = [
        (0, 1, 11),
        (1, 2, 11),
        (2, 3, 12),
        (3, 4, 6),
        (3, 5, 9),
        (5, 6, 10),
        (0, 7, 1),
        (0, 4, 15),
        (7, 6, 14),
    ];
    Graph::undirected(8, &edges)
        .and_then(|g| g.with_root(0))
        .expect("sample instance is valid")
}
