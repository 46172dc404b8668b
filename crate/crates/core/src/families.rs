//! Constructors and recognizers for the named graphs and families: complete
//! bipartite graphs, expanded 5-cycles, `H5`, the maximum-degree `n - 2`
//! family `T_n` and its twin expansions, and the odd-order construction
//! grown from `T_7`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bits::VertexSet;
use crate::canon::{canonical_form, CanonicalForm};
use crate::d2c::is_d2c;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return Err(Error::FamilyParams(format!("K_{{{a},{b}}} needs nonempty parts")));
    }
    Graph::from_edges(a + b, (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))))
}

/// Class sizes of an expanded 5-cycle.
///
/// Three consecutive cycle vertices become independent twin classes `X1`,
/// `X2`, `X3` (with `X2` in the middle); the remaining two vertices stay
/// single and adjacent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct C5PlusSpec {
    pub s1: usize,
    pub s2: usize,
    pub s3: usize,
}

impl C5PlusSpec {
    /// Class sizes obeying the middle-class condition
    /// `s2 ∈ {floor((n-3)/2), ceil((n-3)/2)}`.
    pub fn new(s1: usize, s2: usize, s3: usize) -> Result<Self> {
        let spec = Self::relaxed(s1, s2, s3)?;
        if !spec.satisfies_size_condition() {
            return Err(Error::FamilyParams(format!(
                "middle class size {s2} is not floor/ceil of (n-3)/2 for n = {}",
                spec.order()
            )));
        }
        Ok(spec)
    }

    /// Any positive class sizes; used to build near-miss negatives.
    pub fn relaxed(s1: usize, s2: usize, s3: usize) -> Result<Self> {
        if s1 == 0 || s2 == 0 || s3 == 0 {
            return Err(Error::FamilyParams("class sizes must be positive".into()));
        }
        let spec = C5PlusSpec { s1, s2, s3 };
        if spec.order() > crate::graph::MAX_ORDER {
            return Err(Error::Order(spec.order()));
        }
        Ok(spec)
    }

    pub fn order(&self) -> usize {
        self.s1 + self.s2 + self.s3 + 2
    }

    pub fn satisfies_size_condition(&self) -> bool {
        middle_size_ok(self.s2, self.order())
    }

    pub fn edge_count(&self) -> usize {
        1 + (self.s1 + self.s3) * (1 + self.s2)
    }
}

fn middle_size_ok(s2: usize, n: usize) -> bool {
    n >= 5 && (s2 == (n - 3) / 2 || s2 == (n - 3).div_ceil(2))
}

/// Vertices are numbered `X1`, `X2`, `X3`, then the single vertex adjacent
/// to `X3`, then the single vertex adjacent to `X1`.
pub fn c5_expansion(spec: &C5PlusSpec) -> Graph {
    let C5PlusSpec { s1, s2, s3 } = *spec;
    let x1 = 0..s1;
    let x2 = s1..s1 + s2;
    let x3 = s1 + s2..s1 + s2 + s3;
    let (p3, p1) = (s1 + s2 + s3, s1 + s2 + s3 + 1);
    let mut e = vec![(p3, p1)];
    e.extend(x1.clone().map(|x| (x, p1)));
    e.extend(x3.clone().map(|x| (x, p3)));
    for y in x2 {
        e.extend(x1.clone().map(|x| (x, y)));
        e.extend(x3.clone().map(|x| (x, y)));
    }
    Graph::from_edges(spec.order(), e).expect("valid expansion")
}

/// Every class-size triple of order `n` obeying the middle-class condition.
/// Mirror images `(s1, s2, s3)` and `(s3, s2, s1)` are both listed.
pub fn c5plus_specs(n: usize) -> Vec<C5PlusSpec> {
    let mut out = Vec::new();
    if n < 5 {
        return out;
    }
    for s2 in [(n - 3) / 2, (n - 3).div_ceil(2)] {
        if s2 == 0 || out.iter().any(|s: &C5PlusSpec| s.s2 == s2) {
            continue;
        }
        let rest = n - 2 - s2;
        for s1 in 1..rest {
            out.push(C5PlusSpec {
                s1,
                s2,
                s3: rest - s1,
            });
        }
    }
    out
}

/// Membership in the family of expanded 5-cycles obeying the middle-class
/// condition.
pub fn is_in_c5plus(g: &Graph) -> bool {
    let n = g.order();
    let (q, classes) = g.twin_quotient();
    if q.order() != 5 || q.size() != 5 || q.degrees().iter().any(|&d| d != 2) || !q.is_connected() {
        return false;
    }
    // Try each cycle edge as the pair of unexpanded vertices; the middle class
    // is the quotient vertex adjacent to neither.
    let found = q.edges().any(|e| {
        if classes[e.a].len() != 1 || classes[e.b].len() != 1 {
            return false;
        }
        let middle = (q.vertices() - q.closed_neighbors(e.a) - q.closed_neighbors(e.b))
            .first()
            .expect("C5 has a vertex opposite each edge");
        middle_size_ok(classes[middle].len(), n)
    });
    found
}

/// Structure of a member of the twin-expanded `T` family: a base `T_m` and
/// the number of copies of each vertex of `A` (and of `w` for odd `m`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TFamilySpec {
    pub base_order: usize,
    pub a_mult: Vec<usize>,
    /// Zero exactly when the base order is even (no `w`).
    pub w_mult: usize,
}

impl TFamilySpec {
    pub fn base(n: usize) -> Result<Self> {
        if n < 6 {
            return Err(Error::FamilyParams(format!("T_n needs n >= 6, got {n}")));
        }
        if n > crate::graph::MAX_ORDER {
            return Err(Error::Order(n));
        }
        Ok(TFamilySpec {
            base_order: n,
            a_mult: vec![1; (n - 2) / 2],
            w_mult: n % 2,
        })
    }

    pub fn order(&self) -> usize {
        2 + 2 * self.a_mult.len() + self.a_mult.iter().sum::<usize>() - self.a_mult.len()
            + self.w_mult
    }

    /// Vertex layout: `u = 0`, `v = 1`, then the copies of `a_1, ..., a_k`,
    /// then `b_1, ..., b_k`, then the copies of `w`.
    pub fn build(&self) -> Result<Graph> {
        let k = self.a_mult.len();
        if k < 2 || self.a_mult.contains(&0) || (self.base_order % 2 == 1) != (self.w_mult > 0) {
            return Err(Error::FamilyParams(format!("invalid T-family spec {self:?}")));
        }
        let n = self.order();
        if n > crate::graph::MAX_ORDER {
            return Err(Error::Order(n));
        }
        let (u, v) = (0, 1);
        let a_total: usize = self.a_mult.iter().sum();
        let b0 = 2 + a_total;
        let w0 = b0 + k;
        let mut e = Vec::new();
        let mut next = 2;
        for (i, &mult) in self.a_mult.iter().enumerate() {
            let b = b0 + i;
            for a in next..next + mult {
                e.push((a, b));
                e.push((u, a));
            }
            next += mult;
            e.push((u, b));
            e.push((v, b));
        }
        for w in w0..w0 + self.w_mult {
            e.push((u, w));
            e.push((v, w));
        }
        Graph::from_edges(n, e)
    }
}

/// `T_n`: on `A ∪ B ∪ {u, v}` with `|A| = |B| = k`, the edges `a_i b_i`,
/// `u a_i`, `u b_i`, `v b_i`; odd orders add `w` adjacent to `u` and `v`.
pub fn t_family(n: usize) -> Result<Graph> {
    TFamilySpec::base(n)?.build()
}

/// `H5`, the six-vertex D2C graph with eight edges, taken as `T_6`.
pub fn h5() -> Graph {
    t_family(6).expect("T_6 exists")
}

/// Whether adding an open twin of `vtx` keeps a D2C graph D2C: for every
/// `w` sharing a triangle with `vtx` there must be a non-neighbour `x` of
/// `vtx` with `N(x) ∩ N(vtx) = {w}`.
pub fn twin_addable(g: &Graph, vtx: usize) -> bool {
    let nv = g.neighbors(vtx);
    let outside = g.vertices() - g.closed_neighbors(vtx);
    nv.iter()
        .filter(|&w| g.neighbors(w).intersects(nv))
        .all(|w| {
            outside
                .iter()
                .any(|x| g.neighbors(x) & nv == VertexSet::singleton(w))
        })
}

/// Appends a new vertex with the same open neighbourhood as `vtx`.
pub fn add_twin(g: &Graph, vtx: usize) -> Result<Graph> {
    if vtx >= g.order() {
        return Err(Error::VertexOutOfRange {
            vertex: vtx,
            n: g.order(),
        });
    }
    g.add_vertex(g.neighbors(vtx))
}

/// Non-increasing sequences of `parts` positive integers summing to
/// `parts + extra`.
fn multiplicities(parts: usize, extra: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, slots: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.iter().map(|x| x + 1).collect());
            }
            return;
        }
        for x in (0..=left.min(cap)).rev() {
            cur.push(x);
            rec(left - x, slots - 1, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(extra, parts, extra, &mut Vec::new(), &mut out);
    out
}

/// Every specification of an order-`n` member of the twin-expanded family.
pub fn tprime_specs(n: usize) -> Vec<TFamilySpec> {
    let mut out = Vec::new();
    for base in 6..=n {
        let k = (base - 2) / 2;
        let extra = n - base;
        let w_range = if base % 2 == 1 { 0..=extra } else { 0..=0 };
        for w_extra in w_range {
            for a_mult in multiplicities(k, extra - w_extra) {
                out.push(TFamilySpec {
                    base_order: base,
                    a_mult,
                    w_mult: (base % 2) + w_extra,
                });
            }
        }
    }
    out
}

/// All order-`n` members up to isomorphism, sorted by canonical form.
pub fn tprime_members(n: usize) -> Result<Vec<Graph>> {
    if n < 6 {
        return Err(Error::FamilyParams(format!("T' members need n >= 6, got {n}")));
    }
    let mut by_form: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
    for spec in tprime_specs(n) {
        let g = spec.build()?;
        by_form.entry(canonical_form(&g)).or_insert(g);
    }
    Ok(by_form.into_values().collect())
}

/// Locates `A` and `w` in a graph isomorphic to some `T_m`.
struct TRoles {
    a: VertexSet,
    w: Option<usize>,
}

fn t_roles(q: &Graph) -> Option<TRoles> {
    let m = q.order();
    if m < 6 || canonical_form(q) != canonical_form(&t_family(m).ok()?) {
        return None;
    }
    let u = (0..m).find(|&x| q.degree(x) == m - 2)?;
    let v = (q.vertices() - q.closed_neighbors(u)).first()?;
    let a = q.neighbors(u) - q.neighbors(v);
    let w = (q.neighbors(u) & q.neighbors(v)).iter().find(|&x| q.degree(x) == 2);
    Some(TRoles { a, w })
}

/// Membership in the twin-expanded `T` family: the twin quotient is some
/// `T_m` and only vertices of `A ∪ {w}` were expanded.
pub fn is_in_tprime(g: &Graph) -> bool {
    let (q, classes) = g.twin_quotient();
    let Some(roles) = t_roles(&q) else {
        return false;
    };
    classes.iter().enumerate().all(|(i, c)| {
        c.len() == 1 || roles.a.contains(i) || roles.w == Some(i)
    })
}

/// Outcome of comparing the exhaustive search with the `T'` family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterizationVerdict {
    pub n: usize,
    /// Canonical forms of non-bipartite D2C graphs with maximum degree `n - 2`.
    pub searched: Vec<CanonicalForm>,
    /// Canonical forms of the order-`n` family members.
    pub family: Vec<CanonicalForm>,
    pub equal: bool,
}

/// Compares every non-bipartite D2C graph of order `n` with maximum degree
/// `n - 2` (found by exhaustive search) against the twin-expanded `T` family.
pub fn max_degree_characterization(n: usize) -> Result<CharacterizationVerdict> {
    let mut searched: Vec<CanonicalForm> = crate::enumerate::d2c_graphs(n)
        .into_iter()
        .filter(|g| !g.is_bipartite() && g.max_degree() + 2 == n)
        .map(|g| canonical_form(&g))
        .collect();
    searched.sort();
    let family: Vec<CanonicalForm> = tprime_members(n)?.iter().map(canonical_form).collect();
    let equal = searched == family;
    Ok(CharacterizationVerdict {
        n,
        searched,
        family,
        equal,
    })
}

/// `T_7` with `v` and `w` each expanded into `s` twins: order `5 + 2s`.
///
/// Vertex layout: `u = 0`, `a_1 = 1`, `a_2 = 2`, `b_1 = 3`, `b_2 = 4`, then the
/// `v` copies, then the `w` copies (so `{0, 5 + s}` is a dominating edge).
pub fn conclusion_construction(s: usize) -> Result<Graph> {
    if s == 0 {
        return Err(Error::FamilyParams("expansion size must be positive".into()));
    }
    let n = 5 + 2 * s;
    if n > crate::graph::MAX_ORDER {
        return Err(Error::Order(n));
    }
    let (u, a, b) = (0, [1, 2], [3, 4]);
    let vs = 5..5 + s;
    let ws = 5 + s..5 + 2 * s;
    let mut e = Vec::new();
    for i in 0..2 {
        e.extend([(a[i], b[i]), (u, a[i]), (u, b[i])]);
        e.extend(vs.clone().map(|v| (v, b[i])));
    }
    for w in ws.clone() {
        e.push((u, w));
        e.extend(vs.clone().map(|v| (v, w)));
    }
    Graph::from_edges(n, e)
}

/// Family constructors by name, as used on the command line:
/// `kab A B`, `c5plus S1 S2 S3`, `t N`, `tprime N`, `conclusion S`, `h5`.
pub fn named(name: &str, params: &[usize]) -> Result<Vec<Graph>> {
    let want = |k: usize| -> Result<()> {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::FamilyParams(format!(
                "`{name}` takes {k} parameter(s), got {}",
                params.len()
            )))
        }
    };
    match name {
        "kab" => {
            want(2)?;
            Ok(vec![complete_bipartite(params[0], params[1])?])
        }
        "c5plus" => {
            want(3)?;
            let spec = C5PlusSpec::new(params[0], params[1], params[2])?;
            Ok(vec![c5_expansion(&spec)])
        }
        "t" => {
            want(1)?;
            Ok(vec![t_family(params[0])?])
        }
        "tprime" => {
            want(1)?;
            tprime_members(params[0])
        }
        "conclusion" => {
            want(1)?;
            Ok(vec![conclusion_construction(params[0])?])
        }
        "h5" => {
            want(0)?;
            Ok(vec![h5()])
        }
        other => Err(Error::FamilyParams(format!(
            "unknown family `{other}` (expected kab, c5plus, t, tprime, conclusion, h5)"
        ))),
    }
}

/// Which named families a graph belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Memberships {
    pub balanced_complete_bipartite: bool,
    pub c5plus: bool,
    pub h5: bool,
    pub tprime: bool,
}

pub fn memberships(g: &Graph) -> Memberships {
    Memberships {
        balanced_complete_bipartite: g.is_balanced_complete_bipartite(),
        c5plus: is_in_c5plus(g),
        h5: is_h5(g),
        tprime: is_in_tprime(g),
    }
}

pub fn is_h5(g: &Graph) -> bool {
    g.order() == 6 && g.size() == 8 && crate::canon::are_isomorphic(g, &h5())
}

/// Sanity helper used by tests and the CLI: a family member must be D2C.
pub fn check_member(g: &Graph) -> Result<()> {
    if is_d2c(g) {
        Ok(())
    } else {
        Err(Error::Inconsistency(format!("family member {g} is not D2C")))
    }
}
