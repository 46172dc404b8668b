//! Isomorph-free generation by canonical vertex augmentation, and the census
//! of diameter-2-critical graphs built on it.
//!
//! A graph of order `k + 1` is accepted from its parent of order `k` only
//! when the added vertex lies in the automorphism orbit of the canonically
//! chosen vertex to delete. The chosen vertex minimizes
//! `(degree, sum of neighbour degrees, triangles)`, ties broken by the
//! canonical labelling. Children of a parent are taken one per orbit of its
//! automorphism group on neighbourhood sets, so every isomorphism class is
//! produced exactly once.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, label_rows};
use crate::certificate::certify;
use crate::d2c::{dominating_edges, rows_are_d2c};
use crate::error::{Error, Result};
use crate::families::{is_h5, is_in_c5plus};
use crate::graph::{Diameter, Graph};
use crate::par;
use crate::{murty_simon_bound, strengthened_bound};

/// Largest order the generator accepts. The census is meant for `n <= 11`.
pub const MAX_GENERATION_ORDER: usize = 16;

fn check_order(n: usize) {
    assert!(
        (1..=MAX_GENERATION_ORDER).contains(&n),
        "generation order must be in 1..={MAX_GENERATION_ORDER}, got {n}"
    );
}

/// Invariant used to pick the vertex to delete; smaller is preferred.
#[inline]
fn degree_sum(rows: &[u64], v: usize) -> u32 {
    let mut s = 0;
    let mut r = rows[v];
    while r != 0 {
        s += rows[r.trailing_zeros() as usize].count_ones();
        r &= r - 1;
    }
    s
}

#[inline]
fn triangles(rows: &[u64], v: usize) -> u32 {
    let mut t = 0;
    let mut r = rows[v];
    while r != 0 {
        t += (rows[r.trailing_zeros() as usize] & rows[v]).count_ones();
        r &= r - 1;
    }
    t
}

/// Keeps the members of `cand` minimizing `key`; `None` if `x` is not among them.
#[inline]
fn narrow(cand: u64, x: usize, key: impl Fn(usize) -> u32) -> Option<u64> {
    let kx = key(x);
    let mut keep = 0;
    let mut r = cand;
    while r != 0 {
        let v = r.trailing_zeros() as usize;
        r &= r - 1;
        let kv = key(v);
        if kv < kx {
            return None;
        }
        if kv == kx {
            keep |= 1 << v;
        }
    }
    Some(keep)
}

/// Whether the child `rows` (last vertex `x` just added) is the canonical
/// extension of its parent.
fn accept(rows: &[u64], x: usize) -> bool {
    let n = rows.len();
    let Some(c) = narrow((1u64 << n) - 1, x, |v| rows[v].count_ones()) else {
        return false;
    };
    if c == 1 << x {
        return true;
    }
    let Some(c) = narrow(c, x, |v| degree_sum(rows, v)) else {
        return false;
    };
    if c == 1 << x {
        return true;
    }
    let Some(c) = narrow(c, x, |v| triangles(rows, v)) else {
        return false;
    };
    if c == 1 << x {
        return true;
    }
    let colors: Vec<u32> = (0..n).map(|v| u32::from(c >> v & 1 == 0)).collect();
    let raw = label_rows(rows, Some(&colors));
    let target = raw.lab[0] as usize;
    same_orbit(n, &raw.autos, x, target)
}

fn same_orbit(n: usize, gens: &[Vec<u8>], x: usize, y: usize) -> bool {
    if x == y {
        return true;
    }
    let mut seen = 1u64 << x;
    let mut stack = vec![x];
    while let Some(a) = stack.pop() {
        for g in gens {
            let b = g[a] as usize;
            if seen >> b & 1 == 0 {
                if b == y {
                    return true;
                }
                seen |= 1 << b;
                stack.push(b);
            }
        }
    }
    debug_assert!(n > 0);
    false
}

/// One representative (the smallest mask) per orbit of the group generated
/// by `gens` on subsets of `0..k`, in increasing order.
fn subset_orbit_reps(k: usize, gens: &[Vec<u8>]) -> Vec<u64> {
    let size = 1usize << k;
    if gens.is_empty() {
        return (0..size as u64).collect();
    }
    let mut parent: Vec<u32> = (0..size as u32).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    for g in gens {
        for mask in 0..size {
            let mut img = 0usize;
            let mut r = mask;
            while r != 0 {
                img |= 1 << g[r.trailing_zeros() as usize];
                r &= r - 1;
            }
            let (a, b) = (find(&mut parent, mask as u32), find(&mut parent, img as u32));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    (0..size as u32)
        .filter(|&m| find(&mut parent, m) == m)
        .map(u64::from)
        .collect()
}

/// Depth-first canonical augmentation up to order `n`.
struct Expander<'a> {
    n: usize,
    /// Skip subtrees whose edge count already exceeds this.
    max_edges: Option<usize>,
    /// At the last level, test D2C before the (costlier) canonicity test and
    /// drop everything else.
    d2c_only: bool,
    visit: &'a mut dyn FnMut(&[u64]),
}

impl Expander<'_> {
    fn run(&mut self, root: &[u64]) {
        if root.len() == self.n {
            if !self.d2c_only || rows_are_d2c(root) {
                (self.visit)(root);
            }
            return;
        }
        self.expand(root);
    }

    fn expand(&mut self, rows: &[u64]) {
        let k = rows.len();
        let m: usize = rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
        if self.max_edges.is_some_and(|max| m > max) {
            return;
        }
        let gens = label_rows(rows, None).autos;
        let min_deg = rows.iter().map(|r| r.count_ones() as usize).min().unwrap_or(0);
        let last = k + 1 == self.n;
        let others = (1u64 << k) - 1;
        let mut child = rows.to_vec();
        child.push(0);
        for s in subset_orbit_reps(k, &gens) {
            let ds = s.count_ones() as usize;
            if ds > min_deg + 1 || self.max_edges.is_some_and(|max| m + ds > max) {
                continue;
            }
            if last && self.d2c_only {
                // The new vertex must see everything within two steps.
                let mut reach = s;
                let mut r = s;
                while r != 0 {
                    reach |= rows[r.trailing_zeros() as usize];
                    r &= r - 1;
                }
                if reach & others != others {
                    continue;
                }
            }
            for (v, row) in child[..k].iter_mut().enumerate() {
                *row = rows[v] | ((s >> v) & 1) << k;
            }
            child[k] = s;
            if last && self.d2c_only && !rows_are_d2c(&child) {
                continue;
            }
            if !accept(&child, k) {
                continue;
            }
            if last {
                (self.visit)(&child);
            } else {
                self.expand(&child);
            }
        }
    }
}

/// All graphs of order `n` (one per isomorphism class) as adjacency rows, in
/// generation order.
fn all_rows(n: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut visit = |r: &[u64]| out.push(r.to_vec());
    Expander {
        n,
        max_edges: None,
        d2c_only: false,
        visit: &mut visit,
    }
    .run(&[0]);
    out
}

/// Calls `f` once per isomorphism class of graphs of order `n`.
pub fn for_each_graph(n: usize, mut f: impl FnMut(&Graph)) {
    check_order(n);
    let mut visit = |r: &[u64]| f(&Graph::from_rows_unchecked(r.to_vec()));
    Expander {
        n,
        max_edges: None,
        d2c_only: false,
        visit: &mut visit,
    }
    .run(&[0]);
}

/// One representative per isomorphism class of graphs of order `n`.
pub fn generate(n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for_each_graph(n, |g| out.push(g.clone()));
    out
}

/// Number of isomorphism classes of graphs of order `n`.
pub fn count_graphs(n: usize, mode: ExecMode) -> u64 {
    check_order(n);
    let roots = all_rows(root_order(n));
    par::map(&roots, mode, |root| {
        let mut count = 0u64;
        let mut visit = |_: &[u64]| count += 1;
        Expander {
            n,
            max_edges: None,
            d2c_only: false,
            visit: &mut visit,
        }
        .run(root);
        count
    })
    .into_iter()
    .sum()
}

/// One representative per isomorphism class of D2C graphs of order `n`.
pub fn d2c_graphs(n: usize) -> Vec<Graph> {
    check_order(n);
    let roots = all_rows(root_order(n));
    par::map(&roots, ExecMode::default(), |root| {
        let mut found = Vec::new();
        let mut visit = |r: &[u64]| found.push(Graph::from_rows_unchecked(r.to_vec()));
        Expander {
            n,
            max_edges: None,
            d2c_only: true,
            visit: &mut visit,
        }
        .run(root);
        found
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Order of the subtree roots used to split work across threads.
fn root_order(n: usize) -> usize {
    n.min(7)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusOptions {
    /// Count every graph class and examine all of them. When off, only D2C
    /// candidates reach the canonicity test and subtrees with more than
    /// `floor(n^2/4)` edges are skipped, so `total_graphs` is not reported.
    pub count_all: bool,
    /// Build and check the certificate for every dominating edge of every
    /// D2C graph found.
    pub certificates: bool,
    #[serde(skip)]
    pub exec: ExecMode,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            count_all: false,
            certificates: true,
            exec: ExecMode::Parallel,
        }
    }
}

/// A slice of the search: the subtrees below the graphs of order
/// `1 + prefix_depth` whose generation index is `index` modulo `modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShardSpec {
    pub n: usize,
    pub prefix_depth: usize,
    pub modulus: usize,
    pub index: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    /// Isomorphism classes of order `n`; only counted with `count_all`.
    pub total_graphs: Option<u64>,
    pub d2c: u64,
    pub d2c_bipartite: u64,
    pub d2c_nonbipartite: u64,
    /// D2C graphs with at least one dominating edge.
    pub with_dominating_edge: u64,
    /// Non-bipartite D2C graphs with a dominating edge.
    pub nonbipartite_with_dominating_edge: u64,
    /// D2C graphs with `m = floor(n^2/4)`.
    pub attaining_murty_simon: u64,
    /// Non-bipartite D2C graphs with `m = floor((n-1)^2/4) + 1`.
    pub attaining_strengthened: u64,
    /// Those of the previous kind that are not expanded 5-cycles.
    pub exceptions_not_in_c5plus: u64,
    /// Non-bipartite D2C graphs with `m > floor((n-1)^2/4) + 1`.
    pub exceeding_strengthened: u64,
    /// Non-bipartite D2C graphs with maximum degree `n - 2`.
    pub nonbipartite_max_degree_n_minus_2: u64,
    /// Certificates built (one per dominating edge of each D2C graph).
    pub certificates: u64,
    /// Certificates of non-bipartite graphs with no free non-edge.
    pub nonbipartite_free_zero: u64,
    /// Certificates of non-bipartite graphs other than `H5` with exactly one.
    pub nonbipartite_free_one: u64,
}

/// Failed checks; every field is zero unless a bound or identity fails.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violations {
    /// `m > floor(n^2/4)`, or equality on a graph that is not balanced
    /// complete bipartite.
    pub murty_simon: u64,
    /// Bipartite D2C graph that is not complete bipartite.
    pub bipartite_not_complete: u64,
    /// Non-bipartite, dominating edge, not `H5`, and `m > floor(n^2/4) - 2`.
    pub dominating_edge_bound: u64,
    /// Non-bipartite with complement diameter outside `{2, 3}`, or dominating
    /// edge existence disagreeing with complement diameter 3.
    pub complement: u64,
    /// Failed certificate checks, summed over all dominating edges.
    pub certificate: u64,
}

impl Violations {
    pub fn total(&self) -> u64 {
        self.murty_simon
            + self.bipartite_not_complete
            + self.dominating_edge_bound
            + self.complement
            + self.certificate
    }

    fn add(&mut self, o: &Violations) {
        self.murty_simon += o.murty_simon;
        self.bipartite_not_complete += o.bipartite_not_complete;
        self.dominating_edge_bound += o.dominating_edge_bound;
        self.complement += o.complement;
        self.certificate += o.certificate;
    }
}

/// Canonical graph6 strings, each list sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub attaining_strengthened: Vec<String>,
    pub exceptions_not_in_c5plus: Vec<String>,
    pub exceeding_strengthened: Vec<String>,
    pub nonbipartite_max_degree_n_minus_2: Vec<String>,
    pub violations: Vec<String>,
}

impl Witnesses {
    fn lists_mut(&mut self) -> [&mut Vec<String>; 5] {
        [
            &mut self.attaining_strengthened,
            &mut self.exceptions_not_in_c5plus,
            &mut self.exceeding_strengthened,
            &mut self.nonbipartite_max_degree_n_minus_2,
            &mut self.violations,
        ]
    }

    fn add(&mut self, mut o: Witnesses) {
        for (mine, theirs) in self.lists_mut().into_iter().zip(o.lists_mut()) {
            mine.append(theirs);
            mine.sort_unstable();
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub count_all: bool,
    pub certificates: bool,
    /// `None` for a complete census.
    pub shard: Option<ShardSpec>,
    pub counts: Counts,
    pub violations: Violations,
    pub witnesses: Witnesses,
}

impl SearchReport {
    fn empty(n: usize, options: &CensusOptions, shard: Option<ShardSpec>) -> Self {
        SearchReport {
            n,
            count_all: options.count_all,
            certificates: options.certificates,
            shard,
            counts: Counts {
                total_graphs: options.count_all.then_some(0),
                ..Counts::default()
            },
            violations: Violations::default(),
            witnesses: Witnesses::default(),
        }
    }

    fn absorb(&mut self, o: SearchReport) {
        let (a, b) = (&mut self.counts, &o.counts);
        a.total_graphs = a.total_graphs.zip(b.total_graphs).map(|(x, y)| x + y);
        a.d2c += b.d2c;
        a.d2c_bipartite += b.d2c_bipartite;
        a.d2c_nonbipartite += b.d2c_nonbipartite;
        a.with_dominating_edge += b.with_dominating_edge;
        a.nonbipartite_with_dominating_edge += b.nonbipartite_with_dominating_edge;
        a.attaining_murty_simon += b.attaining_murty_simon;
        a.attaining_strengthened += b.attaining_strengthened;
        a.exceptions_not_in_c5plus += b.exceptions_not_in_c5plus;
        a.exceeding_strengthened += b.exceeding_strengthened;
        a.nonbipartite_max_degree_n_minus_2 += b.nonbipartite_max_degree_n_minus_2;
        a.certificates += b.certificates;
        a.nonbipartite_free_zero += b.nonbipartite_free_zero;
        a.nonbipartite_free_one += b.nonbipartite_free_one;
        self.violations.add(&o.violations);
        self.witnesses.add(o.witnesses);
    }

    /// Classifies one D2C graph.
    fn record_d2c(&mut self, g: &Graph) {
        let n = g.order();
        let m = g.size();
        let c = &mut self.counts;
        let v = &mut self.violations;
        let mut bad = false;
        c.d2c += 1;
        let ms = murty_simon_bound(n);
        if m == ms {
            c.attaining_murty_simon += 1;
        }
        if m > ms || (m == ms && !g.is_balanced_complete_bipartite()) {
            v.murty_simon += 1;
            bad = true;
        }
        let dominating = dominating_edges(g);
        if !dominating.is_empty() {
            c.with_dominating_edge += 1;
        }
        let bipartite = g.is_bipartite();
        let h5 = is_h5(g);
        let mut canon = None;
        let mut form = || canon.get_or_insert_with(|| canonical_form(g).as_str().to_owned()).clone();
        if bipartite {
            c.d2c_bipartite += 1;
            if g.edges().count() != complete_bipartite_size(g) {
                v.bipartite_not_complete += 1;
                bad = true;
            }
        } else {
            c.d2c_nonbipartite += 1;
            let st = strengthened_bound(n);
            if m == st {
                c.attaining_strengthened += 1;
                self.witnesses.attaining_strengthened.push(form());
                if !is_in_c5plus(g) {
                    c.exceptions_not_in_c5plus += 1;
                    self.witnesses.exceptions_not_in_c5plus.push(form());
                }
            } else if m > st {
                c.exceeding_strengthened += 1;
                self.witnesses.exceeding_strengthened.push(form());
            }
            if n >= 2 && g.max_degree() + 2 == n {
                c.nonbipartite_max_degree_n_minus_2 += 1;
                self.witnesses.nonbipartite_max_degree_n_minus_2.push(form());
            }
            let cd = g.complement().diameter();
            let cd_ok = matches!(cd, Diameter::Finite(2) | Diameter::Finite(3));
            if !cd_ok || dominating.is_empty() == (cd == Diameter::Finite(3)) {
                v.complement += 1;
                bad = true;
            }
            if !dominating.is_empty() {
                c.nonbipartite_with_dominating_edge += 1;
                if !h5 && m + 2 > ms {
                    v.dominating_edge_bound += 1;
                    bad = true;
                }
            }
        }
        if self.certificates {
            for e in &dominating {
                c.certificates += 1;
                match certify(g, e.a, e.b) {
                    Ok(cert) => {
                        let failed = cert.violations() as u64
                            + u64::from(!cert.partition.partitions(n))
                            + u64::from(cert.partition.p_uv.intersects(g.neighbors(cert.partition.v)));
                        v.certificate += failed;
                        if !bipartite {
                            match cert.assignment.free_count() {
                                0 => c.nonbipartite_free_zero += 1,
                                1 if !h5 => c.nonbipartite_free_one += 1,
                                _ => {}
                            }
                        }
                        bad |= failed > 0;
                    }
                    Err(_) => {
                        v.certificate += 1;
                        bad = true;
                    }
                }
            }
        }
        if bad {
            self.witnesses.violations.push(form());
        }
    }
}

/// `|A||B|` for the bipartition of a connected bipartite graph.
fn complete_bipartite_size(g: &Graph) -> usize {
    let colour = g.bipartition().expect("bipartite");
    let a = colour.iter().filter(|&&c| c).count();
    a * (g.order() - a)
}

fn census_roots(n: usize, roots: &[Vec<u64>], options: &CensusOptions, shard: Option<ShardSpec>) -> SearchReport {
    let parts = par::map(roots, options.exec, |root| {
        let mut report = SearchReport::empty(n, options, shard);
        let mut total = 0u64;
        let mut visit = |r: &[u64]| {
            total += 1;
            if options.count_all && !rows_are_d2c(r) {
                return;
            }
            report.record_d2c(&Graph::from_rows_unchecked(r.to_vec()));
        };
        Expander {
            n,
            max_edges: (!options.count_all).then(|| murty_simon_bound(n)),
            d2c_only: !options.count_all,
            visit: &mut visit,
        }
        .run(root);
        if options.count_all {
            report.counts.total_graphs = Some(total);
        }
        report
    });
    let mut out = SearchReport::empty(n, options, shard);
    for p in parts {
        out.absorb(p);
    }
    out
}

/// Exhaustive census of D2C graphs of order `n`.
pub fn census(n: usize, options: &CensusOptions) -> SearchReport {
    check_order(n);
    let roots = all_rows(root_order(n));
    census_roots(n, &roots, options, None)
}

fn shard_roots(n: usize, prefix_depth: usize) -> Vec<Vec<u64>> {
    all_rows((1 + prefix_depth).min(n))
}

/// One shard per subtree root: the graphs of order `1 + prefix_depth`.
pub fn shard(n: usize, prefix_depth: usize) -> Vec<ShardSpec> {
    check_order(n);
    let modulus = shard_roots(n, prefix_depth).len();
    (0..modulus)
        .map(|index| ShardSpec {
            n,
            prefix_depth,
            modulus,
            index,
        })
        .collect()
}

pub fn census_shard(spec: &ShardSpec, options: &CensusOptions) -> Result<SearchReport> {
    check_order(spec.n);
    if spec.modulus == 0 || spec.index >= spec.modulus {
        return Err(Error::Merge(format!(
            "shard index {} out of range for {} shards",
            spec.index, spec.modulus
        )));
    }
    let roots: Vec<Vec<u64>> = shard_roots(spec.n, spec.prefix_depth)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| i % spec.modulus == spec.index)
        .map(|(_, r)| r)
        .collect();
    Ok(census_roots(spec.n, &roots, options, Some(*spec)))
}

/// Combines the reports of a complete set of shards into the report of the
/// full census.
pub fn merge(reports: Vec<SearchReport>) -> Result<SearchReport> {
    let first = reports
        .first()
        .ok_or_else(|| Error::Merge("no reports to merge".into()))?;
    let (n, count_all, certificates) = (first.n, first.count_all, first.certificates);
    let Some(spec) = first.shard else {
        return if reports.len() == 1 {
            Ok(reports.into_iter().next().expect("one report"))
        } else {
            Err(Error::Merge("cannot merge a complete census with other reports".into()))
        };
    };
    let mut seen = BTreeSet::new();
    for r in &reports {
        let s = r
            .shard
            .ok_or_else(|| Error::Merge("cannot merge a complete census with shards".into()))?;
        if r.n != n || r.count_all != count_all || r.certificates != certificates {
            return Err(Error::Merge("reports come from different searches".into()));
        }
        if (s.n, s.prefix_depth, s.modulus) != (spec.n, spec.prefix_depth, spec.modulus) {
            return Err(Error::Merge(format!("shard {s:?} does not match {spec:?}")));
        }
        if !seen.insert(s.index) {
            return Err(Error::Merge(format!("shard {} appears twice", s.index)));
        }
    }
    if seen.len() != spec.modulus {
        let missing: Vec<usize> = (0..spec.modulus).filter(|i| !seen.contains(i)).collect();
        return Err(Error::Merge(format!("missing shards {missing:?}")));
    }
    let options = CensusOptions {
        count_all,
        certificates,
        exec: ExecMode::Sequential,
    };
    let mut out = SearchReport::empty(n, &options, None);
    for r in reports {
        out.absorb(r);
    }
    Ok(out)
}
