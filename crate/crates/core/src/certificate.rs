//! Edge-count certificates around a dominating edge.
//!
//! The vertices are split into `X = {v} ∪ S_u ∪ P_uv ∪ S_uv` and
//! `Y = {u} ∪ S_v`. Every edge inside a side is assigned injectively to a
//! non-edge across the split, so `m = |X||Y| - free`, where `free` counts the
//! cross non-edges left unassigned. The assignment orients the edges inside
//! `S_u` and `S_v`; cycles, transitive triangles, sinks and sources of that
//! orientation each force free non-edges, which bounds `m` further.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bits::VertexSet;
use crate::d2c::{dominating_edges, partition_uv, verify_structure, PartitionUV, StructureReport};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPair};
use crate::graph6::to_graph6;
use crate::{murty_simon_bound, strengthened_bound};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct XYSplit {
    pub x_side: VertexSet,
    pub y_side: VertexSet,
}

impl XYSplit {
    pub fn side_of(&self, x: usize) -> VertexSet {
        if self.x_side.contains(x) {
            self.x_side
        } else {
            self.y_side
        }
    }

    pub fn opposite(&self, x: usize) -> VertexSet {
        if self.x_side.contains(x) {
            self.y_side
        } else {
            self.x_side
        }
    }

    pub fn is_cross(&self, p: VertexPair) -> bool {
        self.x_side.contains(p.a) != self.x_side.contains(p.b)
    }
}

pub fn build_xy(part: &PartitionUV) -> XYSplit {
    XYSplit {
        x_side: VertexSet::singleton(part.v) | part.s_u | part.p_uv | part.s_uv,
        y_side: VertexSet::singleton(part.u) | part.s_v,
    }
}

/// One value of the assignment: `edge` is critical for the non-adjacent pair
/// `{b, c}`, with `b` an endpoint of `edge` and `c` across the split.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Assigned {
    pub edge: VertexPair,
    pub b: usize,
    pub c: usize,
}

impl Assigned {
    pub fn image(&self) -> VertexPair {
        VertexPair::new(self.b, self.c)
    }

    /// The endpoint of `edge` other than `b`; the orientation points from it
    /// towards `b`.
    pub fn tail(&self) -> usize {
        self.edge.other(self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assignment {
    /// Sorted by edge.
    pub map: Vec<Assigned>,
    /// Cross non-edges without a preimage, sorted.
    pub free: Vec<VertexPair>,
    pub cross_non_edges: usize,
    pub injective: bool,
    #[serde(skip)]
    preimage: BTreeMap<VertexPair, usize>,
}

impl Assignment {
    pub fn get(&self, e: VertexPair) -> Option<&Assigned> {
        self.map
            .binary_search_by_key(&e, |a| a.edge)
            .ok()
            .map(|i| &self.map[i])
    }

    /// The edge assigned to the non-edge `ne`, if any.
    pub fn preimage(&self, ne: VertexPair) -> Option<&Assigned> {
        self.preimage.get(&ne).map(|&i| &self.map[i])
    }

    pub fn free_count(&self) -> usize {
        self.free.len()
    }

    pub fn is_free(&self, ne: VertexPair) -> bool {
        self.free.binary_search(&ne).is_ok()
    }

    /// Number of free non-edges with at least one endpoint in `set`.
    pub fn free_touching(&self, set: VertexSet) -> usize {
        self.free
            .iter()
            .filter(|p| set.contains(p.a) || set.contains(p.b))
            .count()
    }
}

/// Assigns each edge inside a side to the lexicographically smallest `(b, c)`
/// such that the edge is critical for `{b, c}`.
pub fn build_assignment(g: &Graph, split: &XYSplit) -> Result<Assignment> {
    let mut map = Vec::new();
    for e in g.edges() {
        let side = split.side_of(e.a);
        if !side.contains(e.b) {
            continue;
        }
        let opp = split.opposite(e.a);
        let witness = [e.a, e.b].into_iter().find_map(|b| {
            let a = e.other(b);
            let only_a = VertexSet::singleton(a);
            (opp & (g.neighbors(a) - g.neighbors(b)))
                .iter()
                .find(|&c| g.neighbors(b) & g.neighbors(c) == only_a)
                .map(|c| Assigned { edge: e, b, c })
        });
        match witness {
            Some(w) => map.push(w),
            None => {
                return Err(Error::Inconsistency(format!(
                    "edge {e} inside a side is critical for no pair across the split"
                )))
            }
        }
    }
    let mut preimage = BTreeMap::new();
    let mut injective = true;
    for (i, a) in map.iter().enumerate() {
        if preimage.insert(a.image(), i).is_some() {
            injective = false;
        }
    }
    let mut free = Vec::new();
    let mut cross_non_edges = 0;
    for x in split.x_side.iter() {
        for y in (split.y_side - g.neighbors(x)).iter() {
            cross_non_edges += 1;
            let ne = VertexPair::new(x, y);
            if !preimage.contains_key(&ne) {
                free.push(ne);
            }
        }
    }
    free.sort_unstable();
    Ok(Assignment {
        map,
        free,
        cross_non_edges,
        injective,
        preimage,
    })
}

/// Both forms of the edge-count identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeIdentity {
    pub m: usize,
    pub x_size: usize,
    pub y_size: usize,
    pub free: usize,
    /// `m = |X||Y| - free`.
    pub product_form: bool,
    /// `m = floor((n^2 - (|X| - |Y|)^2) / 4) - free`.
    pub floor_form: bool,
}

impl EdgeIdentity {
    pub fn holds(&self) -> bool {
        self.product_form && self.floor_form
    }
}

pub fn verify_edge_identity(g: &Graph, split: &XYSplit, asg: &Assignment) -> EdgeIdentity {
    let (x, y) = (split.x_side.len(), split.y_side.len());
    let n = g.order();
    let m = g.size();
    let free = asg.free_count();
    let delta = x.abs_diff(y);
    EdgeIdentity {
        m,
        x_size: x,
        y_size: y,
        free,
        product_form: x * y >= free && m == x * y - free,
        floor_form: (n * n - delta * delta) / 4 >= free && m == (n * n - delta * delta) / 4 - free,
    }
}

/// Orientation of the edges inside `S_u` and inside `S_v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FOrientation {
    pub s_u: VertexSet,
    pub s_v: VertexSet,
    /// Sorted `(tail, head)` pairs.
    pub arcs: Vec<(usize, usize)>,
}

impl FOrientation {
    pub fn from_arcs(s_u: VertexSet, s_v: VertexSet, mut arcs: Vec<(usize, usize)>) -> Self {
        arcs.sort_unstable();
        FOrientation { s_u, s_v, arcs }
    }

    fn adjacency(&self) -> (Vec<VertexSet>, Vec<VertexSet>) {
        let n = self
            .arcs
            .iter()
            .map(|&(a, b)| a.max(b) + 1)
            .max()
            .unwrap_or(0);
        let mut out = vec![VertexSet::EMPTY; n];
        let mut inn = vec![VertexSet::EMPTY; n];
        for &(a, b) in &self.arcs {
            out[a].insert(b);
            inn[b].insert(a);
        }
        (out, inn)
    }
}

/// An edge `ab` inside `S_u` or `S_v` is oriented `a -> b` when it was
/// assigned to a non-edge at `b`.
pub fn build_f_orientation(g: &Graph, part: &PartitionUV, asg: &Assignment) -> Result<FOrientation> {
    let mut arcs = Vec::new();
    for side in [part.s_u, part.s_v] {
        for e in g.edges().filter(|e| side.contains(e.a) && side.contains(e.b)) {
            let a = asg
                .get(e)
                .ok_or_else(|| Error::Inconsistency(format!("edge {e} has no assigned non-edge")))?;
            arcs.push((a.tail(), a.b));
        }
    }
    Ok(FOrientation::from_arcs(part.s_u, part.s_v, arcs))
}

/// A weakly connected component with at least one arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub vertices: VertexSet,
    /// Diameter of the underlying undirected graph.
    pub diameter: usize,
    /// Largest directed distance, or `None` when not strongly connected.
    pub directed_diameter: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OrientationFeatures {
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    /// Every simple directed cycle, starting at its smallest vertex.
    pub cycles: Vec<Vec<usize>>,
    /// `[x, y, z]` with arcs `x -> y`, `x -> z`, `y -> z`.
    pub transitive_triangles: Vec<[usize; 3]>,
    pub components: Vec<Component>,
    #[serde(skip)]
    out: Vec<VertexSet>,
    #[serde(skip)]
    inn: Vec<VertexSet>,
}

impl OrientationFeatures {
    pub fn out_neighbors(&self, x: usize) -> VertexSet {
        self.out.get(x).copied().unwrap_or_default()
    }

    pub fn in_neighbors(&self, x: usize) -> VertexSet {
        self.inn.get(x).copied().unwrap_or_default()
    }
}

fn bfs_eccentricity(start: usize, within: VertexSet, step: impl Fn(usize) -> VertexSet) -> (usize, VertexSet) {
    let mut seen = VertexSet::singleton(start);
    let mut frontier = seen;
    let mut depth = 0;
    loop {
        let mut next = VertexSet::EMPTY;
        for x in frontier.iter() {
            next |= step(x);
        }
        next &= within - seen;
        if next.is_empty() {
            return (depth, seen);
        }
        seen |= next;
        frontier = next;
        depth += 1;
    }
}

/// Isolated vertices are neither sources nor sinks.
pub fn orientation_features(o: &FOrientation) -> OrientationFeatures {
    let (out, inn) = o.adjacency();
    let n = out.len();
    let active: Vec<usize> = (0..n).filter(|&x| !(out[x] | inn[x]).is_empty()).collect();
    let sources = active.iter().copied().filter(|&x| inn[x].is_empty()).collect();
    let sinks = active.iter().copied().filter(|&x| out[x].is_empty()).collect();

    let mut cycles = Vec::new();
    for &s in &active {
        let mut path = vec![s];
        extend_cycles(s, s, &out, &mut path, VertexSet::singleton(s), &mut cycles);
    }

    let mut transitive_triangles = Vec::new();
    for &x in &active {
        for y in out[x].iter() {
            for z in (out[x] & out[y]).iter() {
                transitive_triangles.push([x, y, z]);
            }
        }
    }

    let mut components = Vec::new();
    let mut placed = VertexSet::EMPTY;
    let all: VertexSet = active.iter().copied().collect();
    let both = |x: usize| out[x] | inn[x];
    for &x in &active {
        if placed.contains(x) {
            continue;
        }
        let (_, comp) = bfs_eccentricity(x, all, both);
        placed |= comp;
        let mut diameter = 0;
        let mut directed = Some(0);
        for y in comp.iter() {
            diameter = diameter.max(bfs_eccentricity(y, comp, both).0);
            let (ecc, reach) = bfs_eccentricity(y, comp, |z| out[z]);
            directed = directed.filter(|_| reach == comp).map(|d: usize| d.max(ecc));
        }
        components.push(Component {
            vertices: comp,
            diameter,
            directed_diameter: directed,
        });
    }

    OrientationFeatures {
        sources,
        sinks,
        cycles,
        transitive_triangles,
        components,
        out,
        inn,
    }
}

fn extend_cycles(
    start: usize,
    at: usize,
    out: &[VertexSet],
    path: &mut Vec<usize>,
    used: VertexSet,
    cycles: &mut Vec<Vec<usize>>,
) {
    for next in out[at].iter() {
        if next == start {
            cycles.push(path.clone());
        } else if next > start && !used.contains(next) {
            path.push(next);
            extend_cycles(start, next, out, path, used | VertexSet::singleton(next), cycles);
            path.pop();
        }
    }
}

/// Number of instances examined and how many broke the expected conclusion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checked: usize,
    pub violations: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
        }
    }
}

/// Checks on the orientation, valid when `P_uv = ∅`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OrientationReport {
    /// Arc `x -> y`, neither end touching a free non-edge: the neighbourhood
    /// of `x` on the other side is that of `y` plus exactly one vertex.
    pub arc_neighbourhoods: Tally,
    /// A directed cycle touches at least as many free non-edges as its length.
    pub directed_cycles: Tally,
    /// The source of a transitive triangle touches a free non-edge.
    pub transitive_triangles: Tally,
    /// The closed in-neighbourhood of a sink touches a free non-edge.
    pub sinks: Tally,
    /// The closed out-neighbourhood of a source touches a free non-edge.
    pub sources: Tally,
}

impl OrientationReport {
    pub fn violations(&self) -> usize {
        [
            self.arc_neighbourhoods,
            self.directed_cycles,
            self.transitive_triangles,
            self.sinks,
            self.sources,
        ]
        .iter()
        .map(|t| t.violations)
        .sum()
    }
}

pub fn verify_orientation_lemmas(
    g: &Graph,
    part: &PartitionUV,
    asg: &Assignment,
    o: &FOrientation,
) -> OrientationReport {
    let features = orientation_features(o);
    let mut report = OrientationReport::default();
    let touches = |set: VertexSet| asg.free_touching(set);
    for &(x, y) in &o.arcs {
        let pair = VertexSet::singleton(x) | VertexSet::singleton(y);
        if touches(pair) > 0 {
            continue;
        }
        let other = if part.s_u.contains(x) { part.s_v } else { part.s_u };
        let (nx, ny) = (g.neighbors(x) & other, g.neighbors(y) & other);
        report
            .arc_neighbourhoods
            .record(ny.is_subset(nx) && (nx - ny).len() == 1);
    }
    for cycle in &features.cycles {
        let set: VertexSet = cycle.iter().copied().collect();
        report.directed_cycles.record(touches(set) >= cycle.len());
    }
    for t in &features.transitive_triangles {
        report
            .transitive_triangles
            .record(touches(VertexSet::singleton(t[0])) >= 1);
    }
    for &x in &features.sinks {
        let closed = features.in_neighbors(x) | VertexSet::singleton(x);
        report.sinks.record(touches(closed) >= 1);
    }
    for &x in &features.sources {
        let closed = features.out_neighbors(x) | VertexSet::singleton(x);
        report.sources.record(touches(closed) >= 1);
    }
    report
}

/// Checks of the matching between `S_v(p)` and `S_u(p)` for each `p ∈ P_uv`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MatchingReport {
    /// Each non-free `{p, x}`, `x ∈ S_v`, is the image of an edge `p m(x)`
    /// with `m(x) ∈ S_u ∩ N(p)`.
    pub preimages: Tally,
    /// `m` is injective (one instance per `p`).
    pub injective: Tally,
    /// The only `S_u(p) × S_v(p)` edges are `x m(x)` (one instance per `p`).
    pub matching_edges: Tally,
    /// An edge `xy` or `m(x)m(y)` forces a free non-edge among
    /// `{x, m(y)}`, `{y, m(x)}`; both edges force both.
    pub free_implications: Tally,
    /// `|S_u| >= |S_v| - free`.
    pub size_bound: Tally,
}

impl MatchingReport {
    pub fn violations(&self) -> usize {
        [
            self.preimages,
            self.injective,
            self.matching_edges,
            self.free_implications,
            self.size_bound,
        ]
        .iter()
        .map(|t| t.violations)
        .sum()
    }
}

pub fn verify_puv_matching(g: &Graph, part: &PartitionUV, asg: &Assignment) -> MatchingReport {
    let mut report = MatchingReport::default();
    for p in part.p_uv.iter() {
        let mut matched: Vec<(usize, usize)> = Vec::new();
        let mut complete = true;
        for x in (part.s_v - g.neighbors(p)).iter() {
            let ne = VertexPair::new(p, x);
            if asg.is_free(ne) {
                continue;
            }
            let q = asg
                .preimage(ne)
                .filter(|a| a.b == p)
                .map(|a| a.tail())
                .filter(|&q| part.s_u.contains(q) && g.has_edge(p, q));
            report.preimages.record(q.is_some());
            match q {
                Some(q) => matched.push((x, q)),
                None => complete = false,
            }
        }
        if !complete {
            continue;
        }
        let images: VertexSet = matched.iter().map(|&(_, q)| q).collect();
        report.injective.record(images.len() == matched.len());
        report.matching_edges.record(matched.iter().all(|&(x, _)| {
            matched
                .iter()
                .all(|&(y, my)| g.has_edge(x, my) == (x == y))
        }));
        for (i, &(x, mx)) in matched.iter().enumerate() {
            for &(y, my) in &matched[i + 1..] {
                let e1 = g.has_edge(x, y);
                let e2 = g.has_edge(mx, my);
                let fa = x != my && !g.has_edge(x, my) && asg.is_free(VertexPair::new(x, my));
                let fb = y != mx && !g.has_edge(y, mx) && asg.is_free(VertexPair::new(y, mx));
                if e1 || e2 {
                    report
                        .free_implications
                        .record(if e1 && e2 { fa && fb } else { fa || fb });
                }
            }
        }
    }
    if !part.p_uv.is_empty() {
        report
            .size_bound
            .record(part.s_u.len() + asg.free_count() >= part.s_v.len());
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    SU,
    SV,
}

/// A structure in the disjoint collection: each forces at least one free
/// non-edge of its own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Structure {
    TransitiveTriangle { vertices: [usize; 3] },
    SinkStar { centre: usize, vertices: VertexSet },
    SourceStar { centre: usize, vertices: VertexSet },
}

impl Structure {
    pub fn vertices(&self) -> VertexSet {
        match self {
            Structure::TransitiveTriangle { vertices } => vertices.iter().copied().collect(),
            Structure::SinkStar { vertices, .. } | Structure::SourceStar { vertices, .. } => *vertices,
        }
    }
}

/// Bounds obtained from the orientation inside one of `S_u`, `S_v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideBound {
    pub side: Side,
    pub cycles: Vec<Vec<usize>>,
    pub structures: Vec<Structure>,
    /// `sum of cycle lengths + number of structures`.
    pub collection_bound: usize,
    /// Components with at least one arc and diameter at most 2.
    pub c1: usize,
    /// Components with at least one arc and diameter at least 3.
    pub c2: usize,
    /// `c1 + 2 c2`.
    pub component_bound: usize,
    pub components: Vec<Component>,
}

/// Lower bounds on `free` read off the orientation; `m <= floor(n^2/4) - implied_bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateBound {
    pub sides: Vec<SideBound>,
    pub implied_bound: usize,
    pub free: usize,
}

impl CertificateBound {
    pub fn within_free(&self) -> bool {
        self.implied_bound <= self.free
    }
}

fn side_bound(side: Side, domain: VertexSet, f: &OrientationFeatures) -> SideBound {
    let mut used = VertexSet::EMPTY;
    let mut cycles: Vec<Vec<usize>> = f
        .cycles
        .iter()
        .filter(|c| domain.contains(c[0]))
        .cloned()
        .collect();
    cycles.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut chosen_cycles = Vec::new();
    for c in cycles {
        let set: VertexSet = c.iter().copied().collect();
        if !set.intersects(used) {
            used |= set;
            chosen_cycles.push(c);
        }
    }
    let mut candidates: Vec<Structure> = f
        .transitive_triangles
        .iter()
        .filter(|t| domain.contains(t[0]))
        .map(|&vertices| Structure::TransitiveTriangle { vertices })
        .collect();
    candidates.extend(f.sinks.iter().filter(|&&x| domain.contains(x)).map(|&x| Structure::SinkStar {
        centre: x,
        vertices: f.in_neighbors(x) | VertexSet::singleton(x),
    }));
    candidates.extend(f.sources.iter().filter(|&&x| domain.contains(x)).map(|&x| Structure::SourceStar {
        centre: x,
        vertices: f.out_neighbors(x) | VertexSet::singleton(x),
    }));
    let mut structures = Vec::new();
    for s in candidates {
        let set = s.vertices();
        if !set.intersects(used) {
            used |= set;
            structures.push(s);
        }
    }
    let collection_bound = chosen_cycles.iter().map(Vec::len).sum::<usize>() + structures.len();
    let components: Vec<Component> = f
        .components
        .iter()
        .filter(|c| c.vertices.is_subset(domain))
        .copied()
        .collect();
    let c2 = components.iter().filter(|c| c.diameter >= 3).count();
    let c1 = components.len() - c2;
    SideBound {
        side,
        cycles: chosen_cycles,
        structures,
        collection_bound,
        c1,
        c2,
        component_bound: c1 + 2 * c2,
        components,
    }
}

fn bound_from(part: &PartitionUV, asg: &Assignment, o: &FOrientation) -> CertificateBound {
    let features = orientation_features(o);
    let sides = vec![
        side_bound(Side::SU, part.s_u, &features),
        side_bound(Side::SV, part.s_v, &features),
    ];
    let implied_bound = sides
        .iter()
        .map(|s| s.collection_bound.max(s.component_bound))
        .max()
        .unwrap_or(0);
    CertificateBound {
        sides,
        implied_bound,
        free: asg.free_count(),
    }
}

/// Requires `P_uv = ∅`; graphs with `P_uv ≠ ∅` are covered by
/// [`verify_puv_matching`] instead.
pub fn certificate_bound(g: &Graph, u: usize, v: usize) -> Result<CertificateBound> {
    let part = partition_uv(g, u, v)?;
    if !part.p_uv.is_empty() {
        return Err(Error::PuvNonEmpty);
    }
    let split = build_xy(&part);
    let asg = build_assignment(g, &split)?;
    let o = build_f_orientation(g, &part, &asg)?;
    Ok(bound_from(&part, &asg, &o))
}

/// Where a D2C graph stands against the three edge bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundVerdicts {
    pub n: usize,
    pub m: usize,
    pub murty_simon_bound: usize,
    /// `m <= floor(n^2/4)`, with equality only for balanced complete bipartite graphs.
    pub murty_simon_ok: bool,
    pub murty_simon_equality: bool,
    pub strengthened_bound: usize,
    /// `m = floor((n-1)^2/4) + 1`.
    pub strengthened_attained: bool,
    /// Non-bipartite with `m` above the strengthened bound.
    pub exceeds_strengthened: bool,
    /// Non-bipartite with a dominating edge and not `H5`.
    pub dominating_bound_applies: bool,
    /// `m <= floor(n^2/4) - 2` when it applies.
    pub dominating_bound_ok: Option<bool>,
}

pub fn bound_verdicts(g: &Graph) -> BoundVerdicts {
    let (n, m) = (g.order(), g.size());
    let ms = murty_simon_bound(n);
    let st = strengthened_bound(n);
    let bipartite = g.is_bipartite();
    let applies = !bipartite && !dominating_edges(g).is_empty() && !crate::families::is_h5(g);
    BoundVerdicts {
        n,
        m,
        murty_simon_bound: ms,
        murty_simon_ok: m < ms || (m == ms && g.is_balanced_complete_bipartite()),
        murty_simon_equality: m == ms,
        strengthened_bound: st,
        strengthened_attained: m == st,
        exceeds_strengthened: !bipartite && m > st,
        dominating_bound_applies: applies,
        dominating_bound_ok: applies.then(|| m + 2 <= ms),
    }
}

/// Everything built around one dominating edge.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub partition: PartitionUV,
    pub split: XYSplit,
    pub assignment: Assignment,
    pub identity: EdgeIdentity,
    pub orientation: FOrientation,
    pub structure: StructureReport,
    /// Present when `P_uv = ∅`.
    pub orientation_checks: Option<OrientationReport>,
    /// Present when `P_uv ≠ ∅`.
    pub matching_checks: Option<MatchingReport>,
    /// Present when `P_uv = ∅`.
    pub bound: Option<CertificateBound>,
}

impl Certificate {
    /// Total number of failed checks; zero for every D2C graph unless
    /// something is wrong.
    pub fn violations(&self) -> usize {
        usize::from(!self.assignment.injective)
            + usize::from(!self.identity.holds())
            + usize::from(!self.structure.all_hold())
            + self.orientation_checks.map_or(0, |r| r.violations())
            + self.matching_checks.map_or(0, |r| r.violations())
            + self
                .bound
                .as_ref()
                .map_or(0, |b| usize::from(!b.within_free()))
    }
}

/// Builds and checks the full certificate for the dominating edge `{u, v}`
/// of a D2C graph.
pub fn certify(g: &Graph, u: usize, v: usize) -> Result<Certificate> {
    let partition = partition_uv(g, u, v)?;
    let split = build_xy(&partition);
    let assignment = build_assignment(g, &split)?;
    let identity = verify_edge_identity(g, &split, &assignment);
    let orientation = build_f_orientation(g, &partition, &assignment)?;
    let structure = verify_structure(g, &partition);
    let empty = partition.p_uv.is_empty();
    Ok(Certificate {
        orientation_checks: empty
            .then(|| verify_orientation_lemmas(g, &partition, &assignment, &orientation)),
        matching_checks: (!empty).then(|| verify_puv_matching(g, &partition, &assignment)),
        bound: empty.then(|| bound_from(&partition, &assignment, &orientation)),
        partition,
        split,
        assignment,
        identity,
        orientation,
        structure,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub injective: bool,
    pub identity: bool,
    pub structure: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<OrientationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matching: Option<MatchingReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_within_free: Option<bool>,
}

/// JSON-lines certificate record.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateRecord {
    pub graph6: String,
    pub u: usize,
    pub v: usize,
    pub x_size: usize,
    pub y_size: usize,
    pub free: usize,
    pub implied_bound: Option<usize>,
    pub checks: CheckSummary,
    pub violations: usize,
}

impl Certificate {
    pub fn record(&self, g: &Graph) -> CertificateRecord {
        CertificateRecord {
            graph6: to_graph6(g),
            u: self.partition.u,
            v: self.partition.v,
            x_size: self.split.x_side.len(),
            y_size: self.split.y_side.len(),
            free: self.assignment.free_count(),
            implied_bound: self.bound.as_ref().map(|b| b.implied_bound),
            checks: CheckSummary {
                injective: self.assignment.injective,
                identity: self.identity.holds(),
                structure: self.structure.all_hold(),
                orientation: self.orientation_checks,
                matching: self.matching_checks,
                bound_within_free: self.bound.as_ref().map(CertificateBound::within_free),
            },
            violations: self.violations(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete_bipartite, h5, t_family, twin_addable};
    use crate::graph::named::cycle;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn complete_bipartite_split_and_assignment() {
        let g = complete_bipartite(3, 3).unwrap();
        let part = partition_uv(&g, 0, 3).unwrap();
        let split = build_xy(&part);
        let mut sides = [split.x_side, split.y_side];
        sides.sort_by_key(|s| s.0);
        assert_eq!(sides, [set(&[0, 1, 2]), set(&[3, 4, 5])]);
        let asg = build_assignment(&g, &split).unwrap();
        assert!(asg.map.is_empty() && asg.free.is_empty());
        assert_eq!(asg.cross_non_edges, 0);
        let id = verify_edge_identity(&g, &split, &asg);
        assert!(id.holds());
        assert_eq!((id.m, id.x_size * id.y_size), (9, 9));
    }

    /// Brute-force list of every admissible `(b, c)` for an edge.
    fn witnesses(g: &Graph, split: &XYSplit, e: VertexPair) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in [e.a, e.b] {
            for c in split.opposite(b).iter() {
                if g.has_edge(b, c) {
                    continue;
                }
                let h = g.without_edge(e.a, e.b).unwrap();
                if g.distance(b, c) == Some(2) && h.distance(b, c).is_none_or(|d| d > 2) {
                    out.push((b, c));
                }
            }
        }
        out
    }

    #[test]
    fn h5_assignment() {
        let g = h5();
        let part = partition_uv(&g, 0, 4).unwrap();
        let split = build_xy(&part);
        assert_eq!((split.x_side.len(), split.y_side.len()), (4, 2));
        let asg = build_assignment(&g, &split).unwrap();
        assert_eq!(asg.map.len(), 2);
        assert_eq!(asg.cross_non_edges, 2);
        assert!(asg.free.is_empty() && asg.injective);
        for a in &asg.map {
            let w = witnesses(&g, &split, a.edge);
            assert_eq!(w.iter().min(), Some(&(a.b, a.c)));
        }
        let id = verify_edge_identity(&g, &split, &asg);
        assert!(id.holds());
        assert_eq!(id.m, 8);
        let m = verify_puv_matching(&g, &part, &asg);
        assert_eq!(m.violations(), 0);
        assert_eq!(m.preimages.checked, 1);
        assert_eq!(m.injective.checked, 1);
        assert!(matches!(certificate_bound(&g, 0, 4), Err(Error::PuvNonEmpty)));
    }

    #[test]
    fn assignment_is_lexicographically_smallest_on_t_family() {
        for n in 6..=9 {
            let g = t_family(n).unwrap();
            for e in dominating_edges(&g) {
                let part = partition_uv(&g, e.a, e.b).unwrap();
                let split = build_xy(&part);
                let asg = build_assignment(&g, &split).unwrap();
                for a in &asg.map {
                    assert_eq!(witnesses(&g, &split, a.edge).iter().min(), Some(&(a.b, a.c)));
                }
                let cert = certify(&g, e.a, e.b).unwrap();
                assert_eq!(cert.violations(), 0, "T_{n} at {e}");
            }
        }
    }

    fn arcs(v: &[(usize, usize)]) -> FOrientation {
        let all: VertexSet = v.iter().flat_map(|&(a, b)| [a, b]).collect();
        FOrientation::from_arcs(all, VertexSet::EMPTY, v.to_vec())
    }

    #[test]
    fn features_of_single_arc() {
        let f = orientation_features(&arcs(&[(0, 1)]));
        assert_eq!((f.sources.clone(), f.sinks.clone()), (vec![0], vec![1]));
        assert!(f.cycles.is_empty() && f.transitive_triangles.is_empty());
        assert_eq!(f.components.len(), 1);
        assert_eq!(f.components[0].diameter, 1);
        assert_eq!(f.components[0].directed_diameter, None);
    }

    #[test]
    fn features_of_directed_triangle() {
        let f = orientation_features(&arcs(&[(0, 1), (1, 2), (2, 0)]));
        assert!(f.sources.is_empty() && f.sinks.is_empty());
        assert_eq!(f.cycles, vec![vec![0, 1, 2]]);
        assert!(f.transitive_triangles.is_empty());
        assert_eq!(f.components[0].directed_diameter, Some(2));
    }

    #[test]
    fn features_of_transitive_triangle() {
        let f = orientation_features(&arcs(&[(0, 1), (0, 2), (1, 2)]));
        assert_eq!(f.transitive_triangles, vec![[0, 1, 2]]);
        assert_eq!((f.sources.clone(), f.sinks.clone()), (vec![0], vec![2]));
        assert!(f.cycles.is_empty());
    }

    #[test]
    fn features_of_path_and_cycles() {
        // Directed 4-cycle with a chord creating a 3-cycle, plus a separate path.
        let f = orientation_features(&arcs(&[(0, 1), (1, 2), (2, 3), (3, 0), (2, 0), (5, 6), (6, 7)]));
        assert_eq!(f.cycles, vec![vec![0, 1, 2], vec![0, 1, 2, 3]]);
        assert_eq!(f.components.len(), 2);
        let path = f.components.iter().find(|c| c.vertices.contains(5)).unwrap();
        assert_eq!(path.diameter, 2);
        assert_eq!(path.directed_diameter, None);
        assert_eq!(f.sources, vec![5]);
        assert_eq!(f.sinks, vec![7]);
    }

    #[test]
    fn checks_flag_hand_built_orientations() {
        // K_{4,4} has no free non-edge, so every structure placed in S_u is a
        // violation.
        let g = complete_bipartite(4, 4).unwrap();
        let part = partition_uv(&g, 0, 4).unwrap();
        assert_eq!((part.s_u, part.s_v), (set(&[5, 6, 7]), set(&[1, 2, 3])));
        let asg = build_assignment(&g, &build_xy(&part)).unwrap();
        let check = |a: &[(usize, usize)]| {
            let o = FOrientation::from_arcs(part.s_u, part.s_v, a.to_vec());
            verify_orientation_lemmas(&g, &part, &asg, &o)
        };
        let cyc = check(&[(5, 6), (6, 7), (7, 5)]);
        assert_eq!(cyc.arc_neighbourhoods, Tally { checked: 3, violations: 3 });
        assert_eq!(cyc.directed_cycles, Tally { checked: 1, violations: 1 });
        assert_eq!(cyc.sinks.checked + cyc.sources.checked, 0);
        let tri = check(&[(5, 6), (5, 7), (6, 7)]);
        assert_eq!(tri.transitive_triangles, Tally { checked: 1, violations: 1 });
        assert_eq!(tri.sinks, Tally { checked: 1, violations: 1 });
        assert_eq!(tri.sources, Tally { checked: 1, violations: 1 });
        assert_eq!(tri.violations(), 6);
    }

    #[test]
    fn greedy_collection_is_disjoint() {
        let f = orientation_features(&arcs(&[(0, 1), (1, 2), (2, 3), (3, 0), (2, 0), (5, 6), (6, 7)]));
        let sb = side_bound(Side::SU, set(&[0, 1, 2, 3, 5, 6, 7]), &f);
        assert_eq!(sb.cycles, vec![vec![0, 1, 2, 3]]);
        // Path 5 -> 6 -> 7: the sink star {6, 7} is taken first; the source
        // star {5, 6} then overlaps.
        assert_eq!(sb.structures.len(), 1);
        assert_eq!(sb.collection_bound, 5);
        assert_eq!((sb.c1, sb.c2), (2, 0));
        assert_eq!(sb.component_bound, 2);
    }

    #[test]
    fn bound_verdict_examples() {
        let k33 = bound_verdicts(&complete_bipartite(3, 3).unwrap());
        assert!(k33.murty_simon_ok && k33.murty_simon_equality);
        assert!(!k33.dominating_bound_applies);
        let h = bound_verdicts(&h5());
        assert_eq!((h.m, h.murty_simon_bound), (8, 9));
        assert!(h.exceeds_strengthened && !h.dominating_bound_applies);
        let c5 = bound_verdicts(&cycle(5));
        assert!(c5.strengthened_attained && c5.murty_simon_ok);
        let t7 = bound_verdicts(&t_family(7).unwrap());
        assert_eq!(t7.dominating_bound_ok, Some(true));
        assert!(t7.strengthened_attained);
    }

    #[test]
    fn orientation_on_expanded_t_family() {
        // Twins of v keep the graph D2C and leave S_u, S_v independent, so
        // the orientation is empty.
        let mut g = t_family(8).unwrap();
        assert!(twin_addable(&g, 1));
        g = crate::families::add_twin(&g, 1).unwrap();
        for e in dominating_edges(&g) {
            let cert = certify(&g, e.a, e.b).unwrap();
            assert_eq!(cert.violations(), 0);
            assert_eq!(
                cert.orientation.arcs.len(),
                g.edges_within(cert.partition.s_u) + g.edges_within(cert.partition.s_v)
            );
        }
    }

    #[test]
    fn record_fields() {
        let g = t_family(7).unwrap();
        let e = dominating_edges(&g)[0];
        let rec = certify(&g, e.a, e.b).unwrap().record(&g);
        let js = serde_json::to_string(&rec).unwrap();
        for key in ["graph6", "\"u\"", "x_size", "y_size", "free", "implied_bound", "checks"] {
            assert!(js.contains(key), "{key} missing from {js}");
        }
        assert_eq!(rec.violations, 0);
    }
}
