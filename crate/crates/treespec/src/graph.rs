//! Multigraphs with exact spanning-tree counts.
//!
//! Two independent counting routes are kept deliberately separate:
//! [`MultiGraph::tau`] evaluates the Kirchhoff determinant (a cofactor of
//! the Laplacian) by fraction-free Bareiss elimination, while
//! [`MultiGraph::tau_brute`] enumerates `(n-1)`-edge subsets and checks
//! them with a union-find. The second is the oracle the first is tested
//! against; nothing here ever routes one through the other.
//!
//! Vertices are labeled `0..n-1`. Self-loops never change spanning-tree
//! counts and are silently dropped on construction and contraction;
//! parallel edges are kept and matter.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

/// Errors for graph construction, surgery, counting, and parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    /// Edge index out of range.
    InvalidEdge(usize),
    /// Vertex label out of range.
    InvalidVertex(usize),
    /// The requested computation exceeds the hard enumeration budget.
    TooLarge(String),
    /// Malformed edge-list text or JSON.
    Parse(String),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::InvalidEdge(i) => write!(f, "edge index {i} out of range"),
            GraphError::InvalidVertex(v) => write!(f, "vertex label {v} out of range"),
            GraphError::TooLarge(what) => write!(f, "computation too large: {what}"),
            GraphError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for GraphError {}

/// An undirected multigraph on vertices `0..n`. Edges are unordered pairs
/// stored `(min, max)` in insertion order, so edge indices are stable and
/// parallel edges are distinct entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl MultiGraph {
    /// Builds a multigraph, normalizing endpoint order and dropping
    /// self-loops. Errors if an endpoint is out of range.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::InvalidVertex(u));
            }
            if v >= n {
                return Err(GraphError::InvalidVertex(v));
            }
            if u == v {
                continue; // loops never affect spanning-tree counts
            }
            list.push((u.min(v), u.max(v)));
        }
        Ok(MultiGraph { n, edges: list })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Result<(usize, usize), GraphError> {
        self.edges
            .get(index)
            .copied()
            .ok_or(GraphError::InvalidEdge(index))
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        MultiGraph { n, edges }
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n - 1));
        MultiGraph { n, edges }
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        MultiGraph {
            n,
            edges: (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0usize; self.n];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// Maps each occurring degree to how many vertices have it.
    pub fn degree_profile(&self) -> BTreeMap<usize, usize> {
        let mut profile = BTreeMap::new();
        for d in self.degrees() {
            *profile.entry(d).or_insert(0) += 1;
        }
        profile
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut uf = UnionFind::new(self.n);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        uf.components() == 1
    }

    /// True when no two edges join the same pair of vertices.
    pub fn is_simple(&self) -> bool {
        let mut seen = self.edges.clone();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    /// Deletes edge `index`, keeping the vertex set.
    pub fn delete(&self, index: usize) -> Result<MultiGraph, GraphError> {
        if index >= self.edges.len() {
            return Err(GraphError::InvalidEdge(index));
        }
        let mut edges = self.edges.clone();
        edges.remove(index);
        Ok(MultiGraph { n: self.n, edges })
    }

    /// Contracts edge `index`: its endpoints merge into the smaller label,
    /// labels above the larger endpoint shift down by one, loops created by
    /// the merge are dropped, and parallel edges are kept.
    pub fn contract(&self, index: usize) -> Result<MultiGraph, GraphError> {
        let (keep, gone) = self.edge(index)?;
        let mut edges = Vec::with_capacity(self.edges.len().saturating_sub(1));
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i == index {
                continue;
            }
            let map = |v: usize| {
                if v == gone {
                    keep
                } else if v > gone {
                    v - 1
                } else {
                    v
                }
            };
            let (a, b) = (map(a), map(b));
            if a == b {
                continue; // other copies of the contracted pair become loops
            }
            edges.push((a.min(b), a.max(b)));
        }
        Ok(MultiGraph {
            n: self.n - 1,
            edges,
        })
    }

    /// Exact spanning-tree count via the Laplacian cofactor, evaluated by
    /// fraction-free elimination. Conventions for degenerate cases: the
    /// empty graph and the single vertex both count 1; any disconnected
    /// graph counts 0.
    pub fn tau(&self) -> BigUint {
        if self.n <= 1 {
            return BigUint::one();
        }
        let m = self.n - 1;
        // Laplacian minor skipping the last row and column.
        let degs = self.degrees();
        let mut mult = vec![0i64; m * m];
        for &(a, b) in &self.edges {
            if a < m && b < m {
                mult[a * m + b] -= 1;
                mult[b * m + a] -= 1;
            }
        }
        for v in 0..m {
            mult[v * m + v] = degs[v] as i64;
        }
        // Entries of intermediate Bareiss matrices are minors of this one,
        // so the Hadamard bound caps every value that appears; products of
        // two such values must fit in i128 for the fast path.
        let mut log2_bound = 0f64;
        for i in 0..m {
            let norm2: f64 = (0..m).map(|j| (mult[i * m + j] * mult[i * m + j]) as f64).sum();
            log2_bound += norm2.log2() / 2.0;
        }
        let det = if log2_bound < 62.0 {
            BigInt::from(bareiss_i128(&mut mult.iter().map(|&x| x as i128).collect::<Vec<_>>(), m))
        } else {
            let mut big: Vec<BigInt> = mult.iter().map(|&x| BigInt::from(x)).collect();
            bareiss_bigint(&mut big, m)
        };
        debug_assert!(!det.is_negative(), "Laplacian cofactor is non-negative");
        det.to_biguint().expect("non-negative determinant")
    }

    /// Independent spanning-tree oracle: enumerates every `(n-1)`-subset of
    /// the edges and counts the acyclic ones with a union-find. Errors with
    /// [`GraphError::TooLarge`] beyond 25 edges.
    pub fn tau_brute(&self) -> Result<BigUint, GraphError> {
        if self.edges.len() > 25 {
            return Err(GraphError::TooLarge(format!(
                "brute-force enumeration over {} edges",
                self.edges.len()
            )));
        }
        if self.n <= 1 {
            return Ok(BigUint::one());
        }
        let need = self.n - 1;
        let m = self.edges.len();
        if m < need {
            return Ok(BigUint::zero());
        }
        let mut count: u64 = 0;
        // lexicographic combinations of `need` edge indices out of `m`
        let mut pick: Vec<usize> = (0..need).collect();
        loop {
            let mut uf = UnionFind::new(self.n);
            let mut acyclic = true;
            for &i in &pick {
                let (a, b) = self.edges[i];
                if !uf.union(a, b) {
                    acyclic = false;
                    break;
                }
            }
            if acyclic {
                count += 1; // n-1 edges and no cycle: a spanning tree
            }
            // advance the combination
            let mut i = need;
            loop {
                if i == 0 {
                    return Ok(BigUint::from(count));
                }
                i -= 1;
                if pick[i] != i + m - need {
                    break;
                }
            }
            pick[i] += 1;
            for j in i + 1..need {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }

    /// Parses the plain text format: a `n m` header line, then `m` lines
    /// `u v`, one edge each. `#` starts a comment and blank lines are
    /// skipped. Repeated lines are parallel edges; self-loops are rejected.
    pub fn from_edge_list_text(text: &str) -> Result<Self, GraphError> {
        let mut lines = text.lines().map(str::trim).filter(|l| {
            !l.is_empty() && !l.starts_with('#')
        });
        let header = lines
            .next()
            .ok_or_else(|| GraphError::Parse("missing `n m` header".into()))?;
        let mut parts = header.split_whitespace();
        let n: usize = parse_field(parts.next(), "vertex count")?;
        let m: usize = parse_field(parts.next(), "edge count")?;
        if parts.next().is_some() {
            return Err(GraphError::Parse("trailing tokens after `n m` header".into()));
        }
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let line = lines
                .next()
                .ok_or_else(|| GraphError::Parse(format!("expected {m} edge lines")))?;
            let mut parts = line.split_whitespace();
            let u: usize = parse_field(parts.next(), "edge endpoint")?;
            let v: usize = parse_field(parts.next(), "edge endpoint")?;
            if parts.next().is_some() {
                return Err(GraphError::Parse(format!("trailing tokens on edge line `{line}`")));
            }
            if u == v {
                return Err(GraphError::Parse(format!("self-loop `{u} {v}` not allowed")));
            }
            if u >= n || v >= n {
                return Err(GraphError::Parse(format!(
                    "edge `{u} {v}` out of range for {n} vertices"
                )));
            }
            edges.push((u, v));
        }
        if lines.next().is_some() {
            return Err(GraphError::Parse("extra lines after the last edge".into()));
        }
        MultiGraph::new(n, edges)
    }

    pub fn to_edge_list_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// DOT output; `highlight` marks one edge (by index) in red, which the
    /// witness layer uses for the marked edge.
    pub fn to_dot(&self, highlight: Option<usize>) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            out.push_str(&format!("  {v};\n"));
        }
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if highlight == Some(i) {
                out.push_str(&format!("  {u} -- {v} [color=red];\n"));
            } else {
                out.push_str(&format!("  {u} -- {v};\n"));
            }
        }
        out.push_str("}\n");
        out
    }

    /// JSON export `{"n": ..., "edges": [[u, v], ...], "tau": "<decimal>"}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "edges": self.edges.iter().map(|&(u, v)| vec![u, v]).collect::<Vec<_>>(),
            "tau": self.tau().to_string(),
        })
    }

    /// Parses [`MultiGraph::to_json`] output. A present `tau` field must
    /// match the recomputed count.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, GraphError> {
        let n = value["n"]
            .as_u64()
            .ok_or_else(|| GraphError::Parse("missing or invalid `n`".into()))?
            as usize;
        let list = value["edges"]
            .as_array()
            .ok_or_else(|| GraphError::Parse("missing `edges` array".into()))?;
        let mut edges = Vec::with_capacity(list.len());
        for pair in list {
            let endpoints = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| GraphError::Parse("edge is not a pair".into()))?;
            let u = endpoints[0]
                .as_u64()
                .ok_or_else(|| GraphError::Parse("edge endpoint is not an integer".into()))?;
            let v = endpoints[1]
                .as_u64()
                .ok_or_else(|| GraphError::Parse("edge endpoint is not an integer".into()))?;
            edges.push((u as usize, v as usize));
        }
        let graph = MultiGraph::new(n, edges)?;
        if let Some(tau) = value.get("tau") {
            let claimed = tau
                .as_str()
                .and_then(|s| s.parse::<BigUint>().ok())
                .ok_or_else(|| GraphError::Parse("`tau` is not a decimal string".into()))?;
            if claimed != graph.tau() {
                return Err(GraphError::Parse(format!(
                    "stored tau {claimed} does not match recomputed {}",
                    graph.tau()
                )));
            }
        }
        Ok(graph)
    }
}

fn parse_field(token: Option<&str>, what: &str) -> Result<usize, GraphError> {
    token
        .ok_or_else(|| GraphError::Parse(format!("missing {what}")))?
        .parse()
        .map_err(|_| GraphError::Parse(format!("invalid {what}")))
}

/// Every distinct spanning-tree count over all labeled simple connected
/// graphs on exactly `n` vertices, for `1 <= n <= 7`. Walks all
/// `2^(n choose 2)` edge subsets, so `n = 7` visits about two million
/// connected graphs.
pub fn census_connected(n: usize) -> Result<BTreeSet<BigUint>, GraphError> {
    if n == 0 || n > 7 {
        return Err(GraphError::TooLarge(format!(
            "census is supported for 1 <= n <= 7, got {n}"
        )));
    }
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    let masks: u64 = 1 << pairs.len();
    let set = (0..masks)
        .into_par_iter()
        .fold(BTreeSet::new, |mut acc: BTreeSet<BigUint>, mask| {
            let mut uf = UnionFind::new(n);
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    uf.union(u, v);
                }
            }
            if uf.components() == 1 {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = MultiGraph { n, edges };
                acc.insert(g.tau());
            }
            acc
        })
        .reduce(BTreeSet::new, |mut a, mut b| {
            a.append(&mut b);
            a
        });
    Ok(set)
}

// ---------------------------------------------------------------------------
// internals: union-find and fraction-free determinants
// ---------------------------------------------------------------------------

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            components: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when both endpoints were already connected.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.components -= 1;
        true
    }

    pub(crate) fn components(&self) -> usize {
        self.components
    }
}

/// One-step Bareiss elimination over i128. The caller guarantees (via the
/// Hadamard bound) that every intermediate product fits. Returns det(m).
fn bareiss_i128(m: &mut [i128], size: usize) -> i128 {
    if size == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..size - 1 {
        if m[k * size + k] == 0 {
            let Some(swap) = (k + 1..size).find(|&r| m[r * size + k] != 0) else {
                return 0;
            };
            for j in 0..size {
                m.swap(k * size + j, swap * size + j);
            }
            sign = -sign;
        }
        let pivot = m[k * size + k];
        for i in k + 1..size {
            let head = m[i * size + k];
            for j in k + 1..size {
                let val = m[i * size + j] * pivot - head * m[k * size + j];
                debug_assert_eq!(val % prev, 0, "Bareiss division is exact");
                m[i * size + j] = val / prev;
            }
            m[i * size + k] = 0;
        }
        prev = pivot;
    }
    sign * m[size * size - 1]
}

/// Same elimination over arbitrary-precision integers, for matrices whose
/// Hadamard bound rules out the i128 path.
fn bareiss_bigint(m: &mut [BigInt], size: usize) -> BigInt {
    if size == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        if m[k * size + k].is_zero() {
            let Some(swap) = (k + 1..size).find(|&r| !m[r * size + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..size {
                m.swap(k * size + j, swap * size + j);
            }
            negate = !negate;
        }
        let pivot = m[k * size + k].clone();
        for i in k + 1..size {
            let head = std::mem::replace(&mut m[i * size + k], BigInt::zero());
            if head.is_zero() {
                for j in k + 1..size {
                    if !prev.is_one() {
                        let val = &m[i * size + j] * &pivot;
                        m[i * size + j] = val / &prev;
                    } else {
                        m[i * size + j] = &m[i * size + j] * &pivot;
                    }
                }
                continue;
            }
            for j in k + 1..size {
                let val = &m[i * size + j] * &pivot - &head * &m[k * size + j];
                m[i * size + j] = val / &prev;
            }
        }
        prev = pivot;
    }
    let det = std::mem::take(&mut m[size * size - 1]);
    if negate {
        -det
    } else {
        det
    }
}
