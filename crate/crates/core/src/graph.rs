//! Simple connected graphs, the path/cycle/ladder families, distances and
//! family symmetries.
//!
//! Vertices of a Cartesian product `G □ H` are linearized row-major: vertex
//! `(a, b)` gets index `a * |V(H)| + b`. For the ladder-like families this
//! puts rung `i` at indices `2i` (upper vertex) and `2i + 1` (lower vertex).

use std::collections::VecDeque;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result, RubbleError};

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Ladder(usize),
    Prism(usize),
    Mobius(usize),
    Product(Box<Graph>, Box<Graph>),
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(Vertex, Vertex)>,
    adjacency: Vec<Vec<Vertex>>,
    distances: Vec<u32>,
    family: Family,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, duplicate edges,
    /// out-of-range endpoints and disconnected input.
    pub fn new(vertex_count: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
        Self::with_family(vertex_count, edges, Family::Custom)
    }

    fn with_family(vertex_count: usize, edges: &[(Vertex, Vertex)], family: Family) -> Result<Graph> {
        if vertex_count == 0 {
            return Err(invalid("graph must have at least one vertex"));
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(invalid(format!("edge ({u},{v}) out of range for {vertex_count} vertices")));
            }
            if u == v {
                return Err(invalid(format!("self-loop at vertex {u}")));
            }
            normalized.push((u.min(v), u.max(v)));
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        normalized.sort_unstable();
        if normalized.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("duplicate edge"));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let distances = all_pairs_bfs(&adjacency).ok_or(RubbleError::Disconnected)?;
        Ok(Graph { vertex_count, edges: normalized, adjacency, distances, family })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(invalid(format!("vertex {v} out of range (graph has {})", self.vertex_count)))
        }
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<u32> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.dist(u, v))
    }

    /// Unchecked distance lookup.
    #[inline]
    pub(crate) fn dist(&self, u: Vertex, v: Vertex) -> u32 {
        self.distances[u * self.vertex_count + v]
    }

    pub fn diameter(&self) -> u32 {
        self.distances.iter().copied().max().unwrap_or(0)
    }

    pub fn is_regular(&self, degree: usize) -> bool {
        self.adjacency.iter().all(|a| a.len() == degree)
    }

    pub fn retagged(mut self, family: Family) -> Graph {
        self.family = family;
        self
    }

    /// Same vertex set with the listed edges removed.
    pub fn without_edges(&self, removed: &[(Vertex, Vertex)]) -> Result<Graph> {
        let removed: Vec<_> = removed.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        for e in &removed {
            if self.edges.binary_search(e).is_err() {
                return Err(invalid(format!("edge {e:?} not present")));
            }
        }
        let kept: Vec<_> = self.edges.iter().copied().filter(|e| !removed.contains(e)).collect();
        Graph::new(self.vertex_count, &kept)
    }

    /// Subgraph induced by `keep`, relabeled to `0..keep.len()` in the given order.
    pub fn induced(&self, keep: &[Vertex]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.vertex_count];
        for (i, &v) in keep.iter().enumerate() {
            self.check_vertex(v)?;
            if index[v] != usize::MAX {
                return Err(invalid(format!("vertex {v} listed twice")));
            }
            index[v] = i;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|(u, v)| index[*u] != usize::MAX && index[*v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        Graph::new(keep.len(), &edges)
    }

    /// Graphviz rendering; when `labels` is given each vertex shows its count.
    pub fn to_dot(&self, labels: Option<&[u32]>) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.vertex_count {
            match labels {
                Some(l) => {
                    let _ = writeln!(out, "  {v} [label=\"{v}:{}\"];", l.get(v).copied().unwrap_or(0));
                }
                None => {
                    let _ = writeln!(out, "  {v};");
                }
            }
        }
        for (u, v) in &self.edges {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    /// Short human-readable name, also used as the results-cache key.
    pub fn descriptor(&self) -> String {
        match &self.family {
            Family::Path(n) => format!("P{n}"),
            Family::Cycle(n) => format!("C{n}"),
            Family::Ladder(n) => format!("L{n}"),
            Family::Prism(n) => format!("PR{n}"),
            Family::Mobius(n) => format!("M{n}"),
            Family::Product(..) | Family::Custom => {
                let edges: Vec<String> = self.edges.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                format!("G{}[{}]", self.vertex_count, edges.join(","))
            }
        }
    }
}

fn all_pairs_bfs(adjacency: &[Vec<Vertex>]) -> Option<Vec<u32>> {
    let n = adjacency.len();
    let mut dist = vec![u32::MAX; n * n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        row[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in &adjacency[u] {
                if row[w] == u32::MAX {
                    row[w] = row[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if row.contains(&u32::MAX) {
            return None;
        }
    }
    Some(dist)
}

pub fn path_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("path needs n >= 1"));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::with_family(n, &edges, Family::Path(n))
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid("cycle needs n >= 3"));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::with_family(n, &edges, Family::Cycle(n))
}

pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    let (gn, hn) = (g.vertex_count, h.vertex_count);
    let mut edges = Vec::with_capacity(gn * h.edge_count() + hn * g.edge_count());
    for a in 0..gn {
        for &(b, b2) in &h.edges {
            edges.push((a * hn + b, a * hn + b2));
        }
    }
    for &(a, a2) in &g.edges {
        for b in 0..hn {
            edges.push((a * hn + b, a2 * hn + b));
        }
    }
    Graph::with_family(gn * hn, &edges, Family::Product(Box::new(g.clone()), Box::new(h.clone())))
}

/// `P_n □ P_2`.
pub fn ladder(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("ladder needs n >= 1"));
    }
    Ok(cartesian_product(&path_graph(n)?, &path_graph(2)?)?.retagged(Family::Ladder(n)))
}

/// `C_n □ P_2`.
pub fn prism(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid("prism needs n >= 3"));
    }
    Ok(cartesian_product(&cycle_graph(n)?, &path_graph(2)?)?.retagged(Family::Prism(n)))
}

/// Ladder with the end rungs joined crosswise: `{v_1, w_n}` and `{w_1, v_n}`.
pub fn mobius_ladder(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid("Möbius ladder needs n >= 3"));
    }
    let base = ladder(n)?;
    let mut edges = base.edges.clone();
    edges.push((0, 2 * (n - 1) + 1));
    edges.push((1, 2 * (n - 1)));
    Graph::with_family(2 * n, &edges, Family::Mobius(n))
}

/// A vertex permutation: `image[v]` is where `v` goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(pub Vec<Vertex>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, v: Vertex) -> Vertex {
        self.0[v]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&v| self.0[v]).collect())
    }

    /// Moves the value at `v` to `σ(v)`.
    pub fn permute_counts<T: Copy + Default>(&self, counts: &[T]) -> Vec<T> {
        let mut out = vec![T::default(); counts.len()];
        for (v, &c) in counts.iter().enumerate() {
            out[self.0[v]] = c;
        }
        out
    }

    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        if self.0.len() != g.vertex_count {
            return false;
        }
        let mut seen = vec![false; g.vertex_count];
        for &v in &self.0 {
            if v >= g.vertex_count || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        g.edges.iter().all(|&(u, v)| g.has_edge(self.apply(u), self.apply(v)))
    }
}

/// A group of graph automorphisms, stored as generators plus the full
/// element list (identity first).
#[derive(Debug, Clone)]
pub struct SymmetryGroup {
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl SymmetryGroup {
    pub fn trivial(n: usize) -> Self {
        SymmetryGroup { generators: Vec::new(), elements: vec![Permutation::identity(n)] }
    }

    pub fn from_generators(n: usize, generators: Vec<Permutation>) -> Self {
        let identity = Permutation::identity(n);
        let mut elements = vec![identity.clone()];
        let mut seen = std::collections::HashSet::from([identity]);
        let mut frontier = 0;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            frontier += 1;
            for g in &generators {
                let next = g.compose(&current);
                if seen.insert(next.clone()) {
                    elements.push(next);
                }
            }
        }
        SymmetryGroup { generators, elements }
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Symmetries known from the family construction. Custom graphs only get the
/// identity; a subgroup of the automorphism group is always safe for pruning.
pub fn family_symmetries(g: &Graph) -> SymmetryGroup {
    let n = g.vertex_count;
    let perm = |f: &dyn Fn(usize) -> usize| Permutation((0..n).map(f).collect());
    let gens = match &g.family {
        Family::Path(m) => vec![perm(&|i| m - 1 - i)],
        Family::Cycle(m) => vec![perm(&|i| (i + 1) % m), perm(&|i| (m - i) % m)],
        Family::Ladder(m) => vec![perm(&|i| 2 * (m - 1 - i / 2) + i % 2), perm(&|i| i ^ 1)],
        Family::Prism(m) => {
            vec![perm(&|i| 2 * ((i / 2 + 1) % m) + i % 2), perm(&|i| 2 * ((m - i / 2) % m) + i % 2), perm(&|i| i ^ 1)]
        }
        Family::Mobius(m) => {
            // Rim cycle v_0 .. v_{m-1} w_0 .. w_{m-1}; rungs join opposite rim positions.
            let m = *m;
            let to_rim = |v: usize| if v.is_multiple_of(2) { v / 2 } else { m + v / 2 };
            let from_rim = |j: usize| if j < m { 2 * j } else { 2 * (j - m) + 1 };
            vec![perm(&|v| from_rim((to_rim(v) + 1) % (2 * m))), perm(&|v| from_rim((2 * m - to_rim(v)) % (2 * m)))]
        }
        Family::Product(a, b) => {
            let hn = b.vertex_count;
            let mut gens = Vec::new();
            for s in family_symmetries(a).generators() {
                gens.push(perm(&|v| s.apply(v / hn) * hn + v % hn));
            }
            for t in family_symmetries(b).generators() {
                gens.push(perm(&|v| (v / hn) * hn + t.apply(v % hn)));
            }
            gens
        }
        Family::Custom => Vec::new(),
    };
    SymmetryGroup::from_generators(n, gens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Path,
    Cycle,
    Ladder,
    Prism,
    Mobius,
}

/// JSON graph descriptor: `{"family": "ladder", "n": 5}` or
/// `{"vertices": N, "edges": [[i, j], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphSpec {
    Family { family: FamilyKind, n: usize },
    Explicit { vertices: usize, edges: Vec<[usize; 2]> },
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            GraphSpec::Family { family, n } => match family {
                FamilyKind::Path => path_graph(*n),
                FamilyKind::Cycle => cycle_graph(*n),
                FamilyKind::Ladder => ladder(*n),
                FamilyKind::Prism => prism(*n),
                FamilyKind::Mobius => mobius_ladder(*n),
            },
            GraphSpec::Explicit { vertices, edges } => {
                let edges: Vec<_> = edges.iter().map(|e| (e[0], e[1])).collect();
                Graph::new(*vertices, &edges)
            }
        }
    }
}

impl FromStr for GraphSpec {
    type Err = RubbleError;

    /// Accepts JSON or the shorthands `P5`, `C6`, `L5`, `PR5`, `M5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| RubbleError::Parse(format!("graph JSON: {e}")));
        }
        let upper = s.to_ascii_uppercase();
        let split = upper
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| RubbleError::Parse(format!("unknown graph {s:?}")))?;
        let (prefix, digits) = upper.split_at(split);
        let n: usize = digits.parse().map_err(|_| RubbleError::Parse(format!("bad size in {s:?}")))?;
        let family = match prefix {
            "P" => FamilyKind::Path,
            "C" => FamilyKind::Cycle,
            "L" => FamilyKind::Ladder,
            "PR" => FamilyKind::Prism,
            "M" => FamilyKind::Mobius,
            _ => return Err(RubbleError::Parse(format!("unknown graph family {prefix:?}"))),
        };
        Ok(GraphSpec::Family { family, n })
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}
