//! Edge criticality, the D2C predicate, dominating edges and the partition of
//! the vertex set around a dominating edge.

use serde::Serialize;

use crate::bits::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPair};
use crate::graph6::to_graph6;

/// An edge together with a pair whose only short connection uses it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalWitness {
    pub edge: VertexPair,
    pub pair: VertexPair,
}

/// All pairs `{x, y}` at distance at most 2 in `g` whose distance in `g - e`
/// exceeds 2, computed by deleting the edge and recomputing distances.
pub fn critical_pairs(g: &Graph, e: VertexPair) -> Result<Vec<VertexPair>> {
    if !g.has_edge(e.a, e.b) {
        return Err(Error::NotAnEdge(e));
    }
    let h = g.without_edge(e.a, e.b)?;
    let mut out = Vec::new();
    for x in 0..g.order() {
        let before = g.distances_from(x);
        let after = h.distances_from(x);
        for y in x + 1..g.order() {
            let short = |d: Option<usize>| matches!(d, Some(d) if d <= 2);
            if short(before[y]) && !short(after[y]) {
                out.push(VertexPair::new(x, y));
            }
        }
    }
    Ok(out)
}

/// The same set as [`critical_pairs`], derived from the shape every critical
/// pair must have: the edge itself when its endpoints share no neighbour, or a
/// pair `{a, z}` with `z` a neighbour of `b` whose only common neighbour with
/// `a` is `b` (and symmetrically).
pub fn critical_pairs_by_shape(g: &Graph, e: VertexPair) -> Result<Vec<VertexPair>> {
    if !g.has_edge(e.a, e.b) {
        return Err(Error::NotAnEdge(e));
    }
    let mut out = Vec::new();
    let (na, nb) = (g.neighbors(e.a), g.neighbors(e.b));
    if (na & nb).is_empty() {
        out.push(e);
    }
    for (x, y) in [(e.a, e.b), (e.b, e.a)] {
        let (nx, ny) = (g.neighbors(x), g.neighbors(y));
        for z in ny - nx - VertexSet::singleton(x) {
            if g.neighbors(z) & nx == VertexSet::singleton(y) {
                out.push(VertexPair::new(x, z));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// True when `ab` is critical for at least one pair.
#[inline]
pub(crate) fn edge_is_critical(rows: &[u64], a: usize, b: usize) -> bool {
    let (na, nb) = (rows[a], rows[b]);
    if na & nb == 0 {
        return true;
    }
    let only = |x: usize, y: usize| {
        let (nx, ny) = (rows[x], rows[y]);
        VertexSet(ny & !nx & !(1 << x))
            .iter()
            .any(|z| rows[z] & nx == 1 << y)
    };
    only(a, b) || only(b, a)
}

#[inline]
pub(crate) fn rows_have_diameter_two(rows: &[u64]) -> bool {
    let n = rows.len();
    let all = VertexSet::full(n).0;
    let mut complete = true;
    for v in 0..n {
        let mut reach = rows[v] | (1 << v);
        if reach != all {
            complete = false;
        }
        for w in VertexSet(rows[v]) {
            reach |= rows[w];
        }
        if reach != all {
            return false;
        }
    }
    !complete
}

pub(crate) fn rows_are_d2c(rows: &[u64]) -> bool {
    if !rows_have_diameter_two(rows) {
        return false;
    }
    for a in 0..rows.len() {
        for b in VertexSet(rows[a] & !(u64::MAX >> (63 - a))) {
            if !edge_is_critical(rows, a, b) {
                return false;
            }
        }
    }
    true
}

/// Diameter 2, and deleting any edge raises the diameter.
pub fn is_d2c(g: &Graph) -> bool {
    rows_are_d2c(g.rows())
}

/// Adjacent `u, v` with no common non-neighbour: `N[u] ∪ N[v] = V`.
pub fn is_dominating_edge(g: &Graph, u: usize, v: usize) -> bool {
    g.has_edge(u, v) && (g.closed_neighbors(u) | g.closed_neighbors(v)) == g.vertices()
}

/// All dominating edges in lexicographic order.
pub fn dominating_edges(g: &Graph) -> Vec<VertexPair> {
    g.edges()
        .filter(|e| is_dominating_edge(g, e.a, e.b))
        .collect()
}

/// The vertex partition around a dominating edge `uv`.
///
/// Stored so that `p_uv ∩ N(v) = ∅`; when the caller's `(u, v)` had to be
/// swapped to achieve that, `swapped` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionUV {
    pub u: usize,
    pub v: usize,
    /// Vertices `x` for which `uv` is critical for `{x, u}` or `{x, v}`.
    pub p_uv: VertexSet,
    /// Common neighbours of `u` and `v`.
    pub s_uv: VertexSet,
    pub s_u: VertexSet,
    pub s_v: VertexSet,
    pub swapped: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionSizes {
    pub p_uv: usize,
    pub s_uv: usize,
    pub s_u: usize,
    pub s_v: usize,
}

impl PartitionUV {
    pub fn edge(&self) -> VertexPair {
        VertexPair::new(self.u, self.v)
    }

    pub fn sizes(&self) -> PartitionSizes {
        PartitionSizes {
            p_uv: self.p_uv.len(),
            s_uv: self.s_uv.len(),
            s_u: self.s_u.len(),
            s_v: self.s_v.len(),
        }
    }

    /// The six parts `{u}, {v}, P_uv, S_uv, S_u, S_v` are pairwise disjoint and
    /// cover `V`.
    pub fn partitions(&self, n: usize) -> bool {
        let parts = [
            VertexSet::singleton(self.u),
            VertexSet::singleton(self.v),
            self.p_uv,
            self.s_uv,
            self.s_u,
            self.s_v,
        ];
        let total: usize = parts.iter().map(|p| p.len()).sum();
        let union = parts.iter().fold(VertexSet::EMPTY, |acc, &p| acc | p);
        total == n && union == VertexSet::full(n)
    }
}

/// Builds the partition for the dominating edge `{u, v}`.
pub fn partition_uv(g: &Graph, u: usize, v: usize) -> Result<PartitionUV> {
    let e = VertexPair::new(u, v);
    if !is_dominating_edge(g, u, v) {
        return Err(if g.has_edge(u, v) {
            Error::NotDominating(e)
        } else {
            Error::NotAnEdge(e)
        });
    }
    let (nu, nv) = (g.neighbors(u), g.neighbors(v));
    let ends = e.as_set();
    // uv is critical for {x, v} exactly when x ∈ N(u) \ N[v] and u is the
    // only common neighbour of x and v; symmetrically for {x, u}.
    let lone = |x_side: VertexSet, other: usize, via: usize| -> VertexSet {
        (x_side - ends)
            .iter()
            .filter(|&x| g.neighbors(x) & g.neighbors(other) == VertexSet::singleton(via))
            .collect()
    };
    let p_u = lone(nu - nv, v, u);
    let p_v = lone(nv - nu, u, v);
    if !p_u.is_empty() && !p_v.is_empty() {
        return Err(Error::Inconsistency(format!(
            "P_uv meets both N({u}) and N({v}) for dominating edge {e}"
        )));
    }
    let (u, v, nu, nv, swapped) = if p_u.is_empty() && !p_v.is_empty() {
        (v, u, nv, nu, true)
    } else {
        (u, v, nu, nv, false)
    };
    let p_uv = p_u | p_v;
    let s_uv = nu & nv;
    let s_u = nu - p_uv - s_uv - VertexSet::singleton(v);
    let s_v = nv - p_uv - s_uv - VertexSet::singleton(u);
    Ok(PartitionUV {
        u,
        v,
        p_uv,
        s_uv,
        s_u,
        s_v,
        swapped,
    })
}

/// Outcome of the four structural properties of the partition. Each flag is
/// `true` when the property holds (vacuously when its hypothesis fails).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    /// No edge between `P_uv` and `N(v) \ {u}`.
    pub no_puv_to_nv: bool,
    /// `P_uv = ∅` implies `S_uv = ∅`.
    pub empty_puv_empty_suv: bool,
    /// If `S_uv = ∅`, every vertex of `S_u` has a neighbour in `S_v` and vice versa.
    pub cross_neighbour: bool,
    /// If `P_uv = ∅`, every vertex of `S_u` with a neighbour inside `S_u` has a
    /// non-neighbour in `S_v`, and vice versa.
    pub cross_non_neighbour: bool,
}

impl StructureReport {
    pub fn all_hold(&self) -> bool {
        self.no_puv_to_nv && self.empty_puv_empty_suv && self.cross_neighbour && self.cross_non_neighbour
    }
}

pub fn verify_structure(g: &Graph, part: &PartitionUV) -> StructureReport {
    let nv_minus_u = g.neighbors(part.v) - VertexSet::singleton(part.u);
    let no_puv_to_nv = part.p_uv.iter().all(|p| !g.neighbors(p).intersects(nv_minus_u));
    let empty_puv_empty_suv = !part.p_uv.is_empty() || part.s_uv.is_empty();
    let sides = [(part.s_u, part.s_v), (part.s_v, part.s_u)];
    let cross_neighbour = !part.s_uv.is_empty()
        || sides
            .iter()
            .all(|&(a, b)| a.iter().all(|x| g.neighbors(x).intersects(b)));
    let cross_non_neighbour = !part.p_uv.is_empty()
        || sides.iter().all(|&(a, b)| {
            a.iter()
                .filter(|&x| g.neighbors(x).intersects(a))
                .all(|x| !b.is_subset(g.neighbors(x)))
        });
    StructureReport {
        no_puv_to_nv,
        empty_puv_empty_suv,
        cross_neighbour,
        cross_non_neighbour,
    }
}

/// JSON-lines record of the D2C analysis of one graph.
#[derive(Clone, Debug, Serialize)]
pub struct D2cRecord {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub d2c: bool,
    pub dominating_edges: Vec<VertexPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge: Option<VertexPair>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionSizes>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureReport>,
}

/// Analyzes `g` around `edge`, or the lexicographically smallest dominating
/// edge when `edge` is `None`. The partition is only built for D2C graphs.
pub fn d2c_record(g: &Graph, edge: Option<VertexPair>) -> Result<D2cRecord> {
    let d2c = is_d2c(g);
    let dominating = dominating_edges(g);
    let chosen = edge.or_else(|| dominating.first().copied());
    let (partition, structure) = match chosen {
        Some(e) if d2c => {
            let part = partition_uv(g, e.a, e.b)?;
            (Some(part.sizes()), Some(verify_structure(g, &part)))
        }
        _ => (None, None),
    };
    Ok(D2cRecord {
        graph6: to_graph6(g),
        n: g.order(),
        m: g.size(),
        d2c,
        dominating_edges: dominating,
        edge: chosen.filter(|_| d2c),
        partition,
        structure,
    })
}
