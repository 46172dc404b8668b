//! Canonical labelling and automorphism groups.
//!
//! Equitable partition refinement plus depth-first individualization. The
//! canonical labelling is the leaf whose relabelled adjacency rows are
//! lexicographically largest. Subtrees are pruned with the automorphisms
//! found so far (those fixing the current individualization prefix), and
//! every leaf equivalent to the first or best leaf yields an automorphism, so
//! the recorded generators generate the full automorphism group.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::bits::VertexSet;
use crate::graph::Graph;
use crate::graph6;

const MAXN: usize = 64;

/// Ordered partition of the vertices into cells.
#[derive(Clone, Copy)]
struct Partition {
    n: usize,
    lab: [u8; MAXN],
    /// `start[p]`: first position of the cell containing position `p`.
    start: [u8; MAXN],
    /// `len[s]`: length of the cell starting at `s` (meaningful at starts only).
    len: [u8; MAXN],
    cells: usize,
}

impl Partition {
    fn with_colors(n: usize, colors: Option<&[u32]>) -> Self {
        let mut p = Partition {
            n,
            lab: [0; MAXN],
            start: [0; MAXN],
            len: [0; MAXN],
            cells: 0,
        };
        let mut order: Vec<u8> = (0..n as u8).collect();
        if let Some(c) = colors {
            order.sort_by_key(|&v| c[v as usize]);
        }
        p.lab[..n].copy_from_slice(&order);
        let mut s = 0;
        while s < n {
            let mut e = s + 1;
            if let Some(c) = colors {
                while e < n && c[order[e] as usize] == c[order[s] as usize] {
                    e += 1;
                }
            } else {
                e = n;
            }
            for q in s..e {
                p.start[q] = s as u8;
            }
            p.len[s] = (e - s) as u8;
            p.cells += 1;
            s = e;
        }
        p
    }

    fn starts(&self) -> impl Iterator<Item = usize> + '_ {
        let mut s = 0;
        std::iter::from_fn(move || {
            if s >= self.n {
                return None;
            }
            let cur = s;
            s += self.len[s] as usize;
            Some(cur)
        })
    }

    #[inline]
    fn cell_set(&self, s: usize) -> u64 {
        let mut set = 0u64;
        for &v in &self.lab[s..s + self.len[s] as usize] {
            set |= 1 << v;
        }
        set
    }

    /// First cell of minimum size among cells with at least two vertices.
    fn target_cell(&self) -> usize {
        let mut best = usize::MAX;
        let mut best_len = usize::MAX;
        for s in self.starts() {
            let l = self.len[s] as usize;
            if l > 1 && l < best_len {
                best = s;
                best_len = l;
            }
        }
        best
    }

    /// Splits `v` off the front of the cell starting at `s`.
    fn individualize(&mut self, s: usize, v: u8) {
        let l = self.len[s] as usize;
        let pos = (s..s + l).find(|&q| self.lab[q] == v).expect("vertex in cell");
        self.lab.swap(s, pos);
        self.len[s] = 1;
        self.len[s + 1] = (l - 1) as u8;
        for q in s + 1..s + l {
            self.start[q] = (s + 1) as u8;
        }
        self.cells += 1;
    }
}

/// Refines `p` to the coarsest equitable partition finer than it, using the
/// cells starting at `initial` as the first splitters.
fn refine(adj: &[u64], p: &mut Partition, initial: &[usize]) {
    let n = p.n;
    let mut queue = [0u8; MAXN];
    let (mut head, mut tail) = (0usize, 0usize);
    let mut inq = 0u64;
    let push = |s: usize, queue: &mut [u8; MAXN], tail: &mut usize, inq: &mut u64| {
        if *inq & (1 << s) == 0 {
            *inq |= 1 << s;
            queue[*tail % MAXN] = s as u8;
            *tail += 1;
        }
    };
    for &s in initial {
        push(s, &mut queue, &mut tail, &mut inq);
    }

    let mut keyed = [(0u8, 0u8); MAXN];
    let mut frags = [(0usize, 0usize); MAXN];
    while head != tail && p.cells < n {
        let ws = queue[head % MAXN] as usize;
        head += 1;
        inq &= !(1 << ws);
        let w = p.cell_set(ws);

        let mut s = 0;
        while s < n {
            let l = p.len[s] as usize;
            if l == 1 {
                s += 1;
                continue;
            }
            let mut uniform = true;
            for i in 0..l {
                let v = p.lab[s + i];
                let c = (adj[v as usize] & w).count_ones() as u8;
                keyed[i] = (c, v);
                uniform &= c == keyed[0].0;
            }
            if uniform {
                s += l;
                continue;
            }
            let cell = &mut keyed[..l];
            // Insertion sort by count; cells are tiny.
            for i in 1..l {
                let x = cell[i];
                let mut j = i;
                while j > 0 && cell[j - 1].0 > x.0 {
                    cell[j] = cell[j - 1];
                    j -= 1;
                }
                cell[j] = x;
            }
            let mut nfrag = 0;
            let mut fs = 0;
            for i in 1..=l {
                if i == l || cell[i].0 != cell[fs].0 {
                    frags[nfrag] = (s + fs, i - fs);
                    nfrag += 1;
                    fs = i;
                }
            }
            for i in 0..l {
                p.lab[s + i] = cell[i].1;
            }
            let mut largest = 0;
            for f in 1..nfrag {
                if frags[f].1 > frags[largest].1 {
                    largest = f;
                }
            }
            let was_queued = inq & (1 << s) != 0;
            for (f, &(fst, fl)) in frags[..nfrag].iter().enumerate() {
                for q in fst..fst + fl {
                    p.start[q] = fst as u8;
                }
                p.len[fst] = fl as u8;
                let enqueue = if was_queued { fst != s } else { f != largest };
                if enqueue {
                    push(fst, &mut queue, &mut tail, &mut inq);
                }
            }
            p.cells += nfrag - 1;
            s += l;
        }
    }
}

struct Leaf {
    cert: Vec<u64>,
    lab: [u8; MAXN],
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<u8>>,
}

impl Search<'_> {
    fn run(&mut self, p: &Partition, prefix: &mut Vec<u8>) {
        if p.cells == self.n {
            self.leaf(p);
            return;
        }
        let s = p.target_cell();
        let l = p.len[s] as usize;
        let mut cell = [0u8; MAXN];
        cell[..l].copy_from_slice(&p.lab[s..s + l]);
        cell[..l].sort_unstable();

        let mut tried = 0u64;
        let mut orbit_rep = [0u8; MAXN];
        let mut orbit_autos = usize::MAX;
        for &v in &cell[..l] {
            if tried != 0 {
                if orbit_autos != self.autos.len() {
                    self.prefix_orbits(prefix, &mut orbit_rep);
                    orbit_autos = self.autos.len();
                }
                let rv = orbit_rep[v as usize];
                if VertexSet(tried).iter().any(|t| orbit_rep[t] == rv) {
                    continue;
                }
            }
            let mut child = *p;
            child.individualize(s, v);
            refine(self.adj, &mut child, &[s]);
            prefix.push(v);
            self.run(&child, prefix);
            prefix.pop();
            tried |= 1 << v;
        }
    }

    /// Orbits of the group generated by the known automorphisms that fix every
    /// vertex of `prefix`.
    fn prefix_orbits(&self, prefix: &[u8], rep: &mut [u8; MAXN]) {
        for (v, r) in rep.iter_mut().enumerate().take(self.n) {
            *r = v as u8;
        }
        fn find(rep: &mut [u8; MAXN], mut x: u8) -> u8 {
            while rep[x as usize] != x {
                rep[x as usize] = rep[rep[x as usize] as usize];
                x = rep[x as usize];
            }
            x
        }
        for a in &self.autos {
            if prefix.iter().any(|&x| a[x as usize] != x) {
                continue;
            }
            for x in 0..self.n {
                let (rx, ry) = (find(rep, x as u8), find(rep, a[x]));
                if rx != ry {
                    let (lo, hi) = (rx.min(ry), rx.max(ry));
                    rep[hi as usize] = lo;
                }
            }
        }
        for x in 0..self.n {
            rep[x] = find(rep, x as u8);
        }
    }

    fn leaf(&mut self, p: &Partition) {
        let n = self.n;
        let mut inv = [0u8; MAXN];
        for i in 0..n {
            inv[p.lab[i] as usize] = i as u8;
        }
        let cert: Vec<u64> = (0..n)
            .map(|i| {
                VertexSet(self.adj[p.lab[i] as usize])
                    .iter()
                    .fold(0u64, |r, w| r | 1 << inv[w])
            })
            .collect();
        let leaf = Leaf { cert, lab: p.lab };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                cert: leaf.cert.clone(),
                lab: leaf.lab,
            });
            self.first = Some(leaf);
            return;
        };
        if leaf.cert == first.cert {
            let a = automorphism(n, &first.lab, &leaf.lab);
            self.record(a);
        }
        let best = self.best.as_ref().unwrap();
        match leaf.cert.cmp(&best.cert) {
            std::cmp::Ordering::Equal => {
                let a = automorphism(n, &best.lab, &leaf.lab);
                self.record(a);
            }
            std::cmp::Ordering::Greater => self.best = Some(leaf),
            std::cmp::Ordering::Less => {}
        }
    }

    fn record(&mut self, a: Vec<u8>) {
        if a.iter().enumerate().all(|(i, &x)| i == x as usize) || self.autos.contains(&a) {
            return;
        }
        self.autos.push(a);
    }
}

/// The permutation mapping `from[i]` to `to[i]` for every position `i`.
fn automorphism(n: usize, from: &[u8; MAXN], to: &[u8; MAXN]) -> Vec<u8> {
    let mut a = vec![0u8; n];
    for i in 0..n {
        a[from[i] as usize] = to[i];
    }
    a
}

/// Raw result of the search on adjacency rows.
pub(crate) struct RawLabeling {
    pub cert: Vec<u64>,
    pub lab: Vec<u8>,
    pub autos: Vec<Vec<u8>>,
}

pub(crate) fn label_rows(adj: &[u64], colors: Option<&[u32]>) -> RawLabeling {
    let n = adj.len();
    assert!((1..=MAXN).contains(&n));
    let mut part = Partition::with_colors(n, colors);
    let initial: Vec<usize> = part.starts().collect();
    refine(adj, &mut part, &initial);
    let mut search = Search {
        adj,
        n,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    search.run(&part, &mut Vec::with_capacity(n));
    let best = search.best.expect("search visits at least one leaf");
    RawLabeling {
        cert: best.cert,
        lab: best.lab[..n].to_vec(),
        autos: search.autos,
    }
}

/// A canonical labelling of a graph together with generators of its
/// automorphism group.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    /// Each generator maps vertex `v` to `gen[v]`.
    pub generators: Vec<Vec<usize>>,
}

impl Labeling {
    /// `positions()[v]` is the canonical position of vertex `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn orbits(&self) -> Vec<usize> {
        orbits(self.order.len(), &self.generators)
    }
}

impl From<RawLabeling> for Labeling {
    fn from(raw: RawLabeling) -> Self {
        Labeling {
            order: raw.lab.iter().map(|&v| v as usize).collect(),
            generators: raw
                .autos
                .into_iter()
                .map(|a| a.into_iter().map(usize::from).collect())
                .collect(),
        }
    }
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    label_rows(g.rows(), None).into()
}

/// Canonical labelling that only maps vertices of equal colour onto each other.
pub fn canonical_labeling_colored(g: &Graph, colors: &[u32]) -> Labeling {
    assert_eq!(colors.len(), g.order());
    label_rows(g.rows(), Some(colors)).into()
}

/// The canonical representative of the isomorphism class of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    Graph::from_rows_unchecked(label_rows(g.rows(), None).cert)
}

/// Isomorphism-class certificate: the graph6 bytes of [`canonical_graph`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }

    pub fn to_graph(&self) -> Graph {
        graph6::parse_graph6(self.as_str()).expect("canonical forms are valid graph6")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.as_str())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    CanonicalForm(graph6::to_graph6_bytes(&canonical_graph(g)))
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.size() == h.size()
        && {
            let (mut dg, mut dh) = (g.degrees(), h.degrees());
            dg.sort_unstable();
            dh.sort_unstable();
            dg == dh
        }
        && canonical_graph(g) == canonical_graph(h)
}

pub fn automorphism_generators(g: &Graph) -> Vec<Vec<usize>> {
    canonical_labeling(g).generators
}

/// Orbit representative (smallest member) of every vertex under the group
/// generated by `gens`.
pub fn orbits(n: usize, gens: &[Vec<usize>]) -> Vec<usize> {
    let mut rep: Vec<usize> = (0..n).collect();
    fn find(rep: &mut [usize], mut x: usize) -> usize {
        while rep[x] != x {
            rep[x] = rep[rep[x]];
            x = rep[x];
        }
        x
    }
    for g in gens {
        for x in 0..n {
            let (a, b) = (find(&mut rep, x), find(&mut rep, g[x]));
            if a != b {
                rep[a.max(b)] = a.min(b);
            }
        }
    }
    (0..n).map(|x| find(&mut rep, x)).collect()
}

/// Order of the group generated by `gens`, by Schreier-Sims-free brute force
/// closure. Only meant for tests on small groups.
#[cfg(test)]
pub(crate) fn group_order(n: usize, gens: &[Vec<usize>]) -> usize {
    use std::collections::HashSet;
    let id: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(p) = stack.pop() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
            if seen.insert(q.clone()) {
                stack.push(q);
            }
        }
    }
    seen.len()
}
