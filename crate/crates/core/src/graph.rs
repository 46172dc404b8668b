//! Immutable simple graphs on at most 64 vertices, one adjacency word per vertex.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::bits::VertexSet;
use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 64;

/// An unordered pair of distinct vertices, stored with `a < b`.
///
/// Used both for edges `ab` and for non-edges.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, serde::Deserialize)]
#[serde(try_from = "[usize; 2]")]
pub struct VertexPair {
    pub a: usize,
    pub b: usize,
}

impl VertexPair {
    /// Normalizes the order of the endpoints. Panics if `x == y`.
    #[inline]
    pub fn new(x: usize, y: usize) -> Self {
        assert_ne!(x, y, "a vertex pair needs two distinct vertices");
        if x < y {
            VertexPair { a: x, b: y }
        } else {
            VertexPair { a: y, b: x }
        }
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint that is not `v`. `v` must be an endpoint.
    #[inline]
    pub fn other(self, v: usize) -> usize {
        debug_assert!(self.contains(v));
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }

    pub fn as_set(self) -> VertexSet {
        VertexSet::singleton(self.a) | VertexSet::singleton(self.b)
    }
}

impl TryFrom<[usize; 2]> for VertexPair {
    type Error = String;
    fn try_from(p: [usize; 2]) -> Result<Self, String> {
        if p[0] == p[1] {
            return Err(format!("degenerate pair [{}, {}]", p[0], p[1]));
        }
        Ok(VertexPair::new(p[0], p[1]))
    }
}

impl fmt::Display for VertexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.a, self.b)
    }
}

impl Serialize for VertexPair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.a, self.b].serialize(s)
    }
}

/// Graph diameter; infinite for disconnected graphs.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl Diameter {
    pub fn finite(self) -> Option<usize> {
        match self {
            Diameter::Finite(d) => Some(d),
            Diameter::Infinite => None,
        }
    }
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Infinite => f.write_str("inf"),
        }
    }
}

/// Serialized as a number, or `null` when infinite.
impl Serialize for Diameter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.finite().serialize(s)
    }
}

/// A simple undirected graph of order `1..=64`.
///
/// Row `i` of the adjacency holds `N(i)` as a bit set. Rows are symmetric,
/// irreflexive, and never have bits at positions `>= n`. Graphs are immutable;
/// every "modifying" operation returns a new graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        check_order(n)?;
        let all = VertexSet::full(n).0;
        Ok(Graph {
            n,
            adj: (0..n).map(|i| all & !(1u64 << i)).collect(),
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        check_order(n)?;
        let mut adj = vec![0u64; n];
        for (x, y) in edges {
            for v in [x, y] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if x == y {
                return Err(Error::SelfLoop(x));
            }
            adj[x] |= 1 << y;
            adj[y] |= 1 << x;
        }
        Ok(Graph { n, adj })
    }

    /// Builds a graph from adjacency rows, validating every invariant.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let mask = VertexSet::full(n).0;
        for (i, &r) in rows.iter().enumerate() {
            if r & !mask != 0 {
                return Err(Error::InvalidAdjacency(format!(
                    "row {i} has bits beyond vertex {}",
                    n - 1
                )));
            }
            if (r >> i) & 1 == 1 {
                return Err(Error::SelfLoop(i));
            }
            for j in VertexSet(r) {
                if (rows[j] >> i) & 1 == 0 {
                    return Err(Error::InvalidAdjacency(format!("{i}~{j} is not symmetric")));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    /// Caller guarantees the invariants (used on hot paths).
    #[inline]
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(Graph::from_rows(rows.clone()).is_ok());
        Graph { n: rows.len(), adj: rows }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v] | (1 << v))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        x < self.n && y < self.n && (self.adj[x] >> y) & 1 == 1
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = VertexPair> + '_ {
        (0..self.n).flat_map(move |a| {
            VertexSet(self.adj[a] & !(u64::MAX >> (63 - a)))
                .iter()
                .map(move |b| VertexPair { a, b })
        })
    }

    /// Non-adjacent pairs of distinct vertices, in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = VertexPair> + '_ {
        let all = self.vertices().0;
        (0..self.n).flat_map(move |a| {
            VertexSet(all & !self.adj[a] & !(u64::MAX >> (63 - a)))
                .iter()
                .map(move |b| VertexPair { a, b })
        })
    }

    /// Number of edges with both endpoints in `set`.
    pub fn edges_within(&self, set: VertexSet) -> usize {
        set.iter()
            .map(|v| (self.adj[v] & set.0).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn with_edge(&self, x: usize, y: usize) -> Result<Graph> {
        self.check_pair(x, y)?;
        let mut adj = self.adj.clone();
        adj[x] |= 1 << y;
        adj[y] |= 1 << x;
        Ok(Graph { n: self.n, adj })
    }

    pub fn without_edge(&self, x: usize, y: usize) -> Result<Graph> {
        self.check_pair(x, y)?;
        let mut adj = self.adj.clone();
        adj[x] &= !(1 << y);
        adj[y] &= !(1 << x);
        Ok(Graph { n: self.n, adj })
    }

    /// Appends a new vertex (numbered `n`) adjacent to `nbrs`.
    pub fn add_vertex(&self, nbrs: VertexSet) -> Result<Graph> {
        check_order(self.n + 1)?;
        if !nbrs.is_subset(self.vertices()) {
            return Err(Error::InvalidAdjacency("new neighbours out of range".into()));
        }
        let v = self.n;
        let mut adj = self.adj.clone();
        for w in nbrs {
            adj[w] |= 1 << v;
        }
        adj.push(nbrs.0);
        Ok(Graph { n: v + 1, adj })
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            let mut row = 0u64;
            for w in self.neighbors(v) {
                row |= 1 << perm[w];
            }
            adj[perm[v]] = row;
        }
        Graph { n: self.n, adj }
    }

    /// Vertices at distance at most 2 from `v` (including `v`).
    #[inline]
    pub fn ball2(&self, v: usize) -> VertexSet {
        let mut reach = self.adj[v] | (1 << v);
        for w in VertexSet(self.adj[v]) {
            reach |= self.adj[w];
        }
        VertexSet(reach)
    }

    /// Shortest-path distances from `s` by bit-parallel frontier expansion.
    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[s] = Some(0);
        let mut seen = 1u64 << s;
        let mut frontier = seen;
        let mut d = 0;
        while frontier != 0 {
            d += 1;
            let mut next = 0u64;
            for v in VertexSet(frontier) {
                next |= self.adj[v];
            }
            next &= !seen;
            for v in VertexSet(next) {
                dist[v] = Some(d);
            }
            seen |= next;
            frontier = next;
        }
        dist
    }

    pub fn distance(&self, x: usize, y: usize) -> Option<usize> {
        self.distances_from(x)[y]
    }

    /// Eccentricity of `s`, `None` if some vertex is unreachable.
    pub fn eccentricity(&self, s: usize) -> Option<usize> {
        let all = self.vertices().0;
        let mut seen = 1u64 << s;
        let mut frontier = seen;
        let mut d = 0;
        while seen != all {
            let mut next = 0u64;
            for v in VertexSet(frontier) {
                next |= self.adj[v];
            }
            next &= !seen;
            if next == 0 {
                return None;
            }
            seen |= next;
            frontier = next;
            d += 1;
        }
        Some(d)
    }

    pub fn diameter(&self) -> Diameter {
        let mut best = 0;
        for v in 0..self.n {
            match self.eccentricity(v) {
                Some(e) => best = best.max(e),
                None => return Diameter::Infinite,
            }
        }
        Diameter::Finite(best)
    }

    /// `diameter() == 2`, computed without full eccentricities.
    pub fn has_diameter_two(&self) -> bool {
        let all = self.vertices().0;
        let mut complete = true;
        for v in 0..self.n {
            if self.adj[v] | (1 << v) != all {
                complete = false;
            }
            if self.ball2(v).0 != all {
                return false;
            }
        }
        !complete
    }

    pub fn is_connected(&self) -> bool {
        self.eccentricity(0).is_some()
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertices().0;
        Graph {
            n: self.n,
            adj: (0..self.n)
                .map(|i| all & !self.adj[i] & !(1u64 << i))
                .collect(),
        }
    }

    /// A proper 2-colouring (`true`/`false` per vertex), or `None` when there is an odd cycle.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color = vec![None::<bool>; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let c = color[v].unwrap();
                for w in self.neighbors(v) {
                    match color[w] {
                        None => {
                            color[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(cw) if cw == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// True for `K_{a,b}` with `|a - b| <= 1` (and at least one edge).
    pub fn is_balanced_complete_bipartite(&self) -> bool {
        let Some(col) = self.bipartition() else {
            return false;
        };
        let a = col.iter().filter(|&&c| c).count();
        let b = self.n - a;
        a.abs_diff(b) <= 1 && a > 0 && b > 0 && self.size() == a * b
    }

    /// Classes of the relation `N(x) = N(y)`, each as a vertex set, ordered by
    /// smallest member. Members of a class are pairwise non-adjacent.
    pub fn twin_classes(&self) -> Vec<VertexSet> {
        let mut classes: Vec<VertexSet> = Vec::new();
        let mut assigned = VertexSet::EMPTY;
        for v in 0..self.n {
            if assigned.contains(v) {
                continue;
            }
            let mut class = VertexSet::singleton(v);
            for w in v + 1..self.n {
                if self.adj[w] == self.adj[v] {
                    class.insert(w);
                }
            }
            assigned |= class;
            classes.push(class);
        }
        classes
    }

    /// Quotient by the twin relation: one vertex per class, in the order of
    /// [`Graph::twin_classes`].
    pub fn twin_quotient(&self) -> (Graph, Vec<VertexSet>) {
        let classes = self.twin_classes();
        let k = classes.len();
        let mut adj = vec![0u64; k];
        for i in 0..k {
            let rep = classes[i].first().unwrap();
            for j in 0..k {
                if i != j && self.neighbors(rep).intersects(classes[j]) {
                    adj[i] |= 1 << j;
                }
            }
        }
        (Graph { n: k, adj }, classes)
    }

    fn check_pair(&self, x: usize, y: usize) -> Result<()> {
        for v in [x, y] {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if x == y {
            return Err(Error::SelfLoop(x));
        }
        Ok(())
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ORDER {
        Err(Error::Order(n))
    } else {
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", crate::graph6::to_graph6(self))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::graph6::to_graph6(self))
    }
}

/// Standard small graphs used across the crate and its tests.
pub mod named {
    use super::Graph;

    pub fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, e).expect("valid Petersen graph")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn k33() -> Graph {
        Graph::from_edges(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))).unwrap()
    }

    #[test]
    fn diameters() {
        assert_eq!(cycle(5).diameter(), Diameter::Finite(2));
        assert_eq!(k33().diameter(), Diameter::Finite(2));
        assert_eq!(path(4).diameter(), Diameter::Finite(3));
        assert_eq!(Graph::empty(1).unwrap().diameter(), Diameter::Finite(0));
        assert_eq!(Graph::empty(2).unwrap().diameter(), Diameter::Infinite);
        assert!(cycle(5).has_diameter_two());
        assert!(!Graph::complete(4).unwrap().has_diameter_two());
        assert!(!path(4).has_diameter_two());
    }

    #[test]
    fn complements() {
        let c5 = cycle(5);
        assert_eq!(c5.complement().complement(), c5);
        assert_eq!(c5.complement().size(), 5);
        assert!(c5.complement().degrees().iter().all(|&d| d == 2));
        assert!(c5.complement().is_connected());
        let co = k33().complement();
        assert_eq!(co.size(), 6);
        assert!(!co.is_connected());
        assert_eq!(co.diameter(), Diameter::Infinite);
    }

    #[test]
    fn bipartiteness() {
        assert!(!cycle(5).is_bipartite());
        let col = k33().bipartition().unwrap();
        for e in k33().edges() {
            assert_ne!(col[e.a], col[e.b]);
        }
        assert!(k33().is_balanced_complete_bipartite());
        assert!(!cycle(4).complement().is_balanced_complete_bipartite());
        assert!(cycle(4).is_balanced_complete_bipartite());
    }

    #[test]
    fn twins() {
        let classes = k33().twin_classes();
        assert_eq!(classes.len(), 2);
        assert!(classes.iter().all(|c| c.len() == 3));
        assert_eq!(cycle(5).twin_classes().len(), 5);
        let (q, _) = k33().twin_quotient();
        assert_eq!(q.size(), 1);
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(Graph::from_rows(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_rows(vec![0b01]).is_err());
        assert!(Graph::from_rows(vec![0b100, 0b0]).is_err());
        assert!(Graph::empty(0).is_err());
        assert!(Graph::empty(65).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
    }

    #[test]
    fn edges_and_non_edges_partition_pairs() {
        let g = petersen();
        assert_eq!(g.size(), 15);
        assert_eq!(g.edges().count() + g.non_edges().count(), 45);
        assert!(g.edges().all(|e| g.has_edge(e.a, e.b)));
        assert!(g.non_edges().all(|e| !g.has_edge(e.a, e.b)));
    }

    #[test]
    fn relabel_preserves_structure() {
        let g = path(4);
        let h = g.relabel(&[3, 2, 1, 0]);
        assert_eq!(h, g);
        let h = g.relabel(&[1, 0, 2, 3]);
        assert!(h.has_edge(0, 1) && h.has_edge(0, 2) && h.has_edge(2, 3));
        assert!(!h.has_edge(1, 2));
    }
}
