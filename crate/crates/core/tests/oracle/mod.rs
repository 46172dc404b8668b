//! Slow, direct reimplementations used to cross-check the library. Nothing
//! here calls into `d2c_core` except to convert graphs in and out.

#![allow(dead_code)]

use std::collections::VecDeque;

use d2c_core::Graph;

/// Adjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adj {
    pub n: usize,
    pub a: Vec<Vec<bool>>,
}

impl Adj {
    pub fn new(n: usize) -> Self {
        Adj { n, a: vec![vec![false; n]; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Adj::new(n);
        for &(x, y) in edges {
            g.set(x, y, true);
        }
        g
    }

    pub fn of(g: &Graph) -> Self {
        let n = g.order();
        let mut a = Adj::new(n);
        for x in 0..n {
            for y in 0..n {
                a.a[x][y] = x != y && g.has_edge(x, y);
            }
        }
        a
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.n, self.edges()).unwrap()
    }

    pub fn set(&mut self, x: usize, y: usize, on: bool) {
        self.a[x][y] = on;
        self.a[y][x] = on;
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in x + 1..self.n {
                if self.a[x][y] {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn size(&self) -> usize {
        self.edges().len()
    }

    pub fn degree(&self, x: usize) -> usize {
        self.a[x].iter().filter(|&&b| b).count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|x| self.degree(x)).max().unwrap_or(0)
    }

    pub fn distances(&self, s: usize) -> Vec<Option<usize>> {
        let mut d = vec![None; self.n];
        d[s] = Some(0);
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for y in 0..self.n {
                if self.a[x][y] && d[y].is_none() {
                    d[y] = Some(d[x].unwrap() + 1);
                    q.push_back(y);
                }
            }
        }
        d
    }

    /// `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for s in 0..self.n {
            for d in self.distances(s) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// Diameter 2, and removing any single edge leaves a graph that is
    /// disconnected or has diameter above 2.
    pub fn is_d2c(&self) -> bool {
        if self.diameter() != Some(2) {
            return false;
        }
        let mut h = self.clone();
        for (x, y) in self.edges() {
            h.set(x, y, false);
            let still = h.diameter() == Some(2);
            h.set(x, y, true);
            if still {
                return false;
            }
        }
        true
    }

    /// A proper 2-colouring, if one exists.
    pub fn two_colouring(&self) -> Option<Vec<u8>> {
        let mut c = vec![2u8; self.n];
        for s in 0..self.n {
            if c[s] != 2 {
                continue;
            }
            c[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for y in 0..self.n {
                    if !self.a[x][y] {
                        continue;
                    }
                    if c[y] == 2 {
                        c[y] = 1 - c[x];
                        q.push_back(y);
                    } else if c[y] == c[x] {
                        return None;
                    }
                }
            }
        }
        Some(c)
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_colouring().is_some()
    }

    pub fn is_balanced_complete_bipartite(&self) -> bool {
        if self.n < 2 || self.diameter().is_none() {
            return false;
        }
        let Some(c) = self.two_colouring() else {
            return false;
        };
        let a = c.iter().filter(|&&x| x == 0).count();
        let b = self.n - a;
        a.abs_diff(b) <= 1 && self.size() == a * b
    }

    pub fn is_dominating_edge(&self, u: usize, v: usize) -> bool {
        self.a[u][v] && (0..self.n).all(|x| x == u || x == v || self.a[u][x] || self.a[v][x])
    }

    pub fn dominating_edges(&self) -> Vec<(usize, usize)> {
        self.edges()
            .into_iter()
            .filter(|&(u, v)| self.is_dominating_edge(u, v))
            .collect()
    }

    pub fn complement(&self) -> Adj {
        let mut h = Adj::new(self.n);
        for x in 0..self.n {
            for y in 0..self.n {
                h.a[x][y] = x != y && !self.a[x][y];
            }
        }
        h
    }

    /// `perm[x]` is the new name of `x`.
    pub fn relabel(&self, perm: &[usize]) -> Adj {
        let mut h = Adj::new(self.n);
        for (x, y) in self.edges() {
            h.set(perm[x], perm[y], true);
        }
        h
    }

    /// Adds a vertex with the same neighbours as `x`.
    pub fn with_twin(&self, x: usize) -> Adj {
        let mut h = Adj::new(self.n + 1);
        for (p, q) in self.edges() {
            h.set(p, q, true);
        }
        for y in 0..self.n {
            if self.a[x][y] {
                h.set(self.n, y, true);
            }
        }
        h
    }

    fn signature(&self, x: usize) -> (usize, Vec<usize>) {
        let mut nd: Vec<usize> = (0..self.n)
            .filter(|&y| self.a[x][y])
            .map(|y| self.degree(y))
            .collect();
        nd.sort_unstable();
        (self.degree(x), nd)
    }

    /// Backtracking search for an isomorphism.
    pub fn isomorphic(&self, other: &Adj) -> bool {
        if self.n != other.n || self.size() != other.size() {
            return false;
        }
        let sa: Vec<_> = (0..self.n).map(|x| self.signature(x)).collect();
        let sb: Vec<_> = (0..other.n).map(|x| other.signature(x)).collect();
        let (mut ka, mut kb) = (sa.clone(), sb.clone());
        ka.sort();
        kb.sort();
        if ka != kb {
            return false;
        }
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        self.extend_iso(other, &sa, &sb, 0, &mut map, &mut used)
    }

    fn extend_iso(
        &self,
        other: &Adj,
        sa: &[(usize, Vec<usize>)],
        sb: &[(usize, Vec<usize>)],
        x: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if x == self.n {
            return true;
        }
        for y in 0..other.n {
            if used[y] || sa[x] != sb[y] {
                continue;
            }
            if (0..x).any(|p| self.a[x][p] != other.a[y][map[p]]) {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if self.extend_iso(other, sa, sb, x + 1, map, used) {
                return true;
            }
            used[y] = false;
        }
        false
    }
}

/// 5-cycle with vertex `i` replaced by an independent set of `sizes[i]`
/// twins; consecutive classes are completely joined.
pub fn c5_blowup(sizes: [usize; 5]) -> Adj {
    let mut start = [0; 6];
    for i in 0..5 {
        start[i + 1] = start[i] + sizes[i];
    }
    let mut g = Adj::new(start[5]);
    for i in 0..5 {
        let j = (i + 1) % 5;
        for x in start[i]..start[i + 1] {
            for y in start[j]..start[j + 1] {
                g.set(x, y, true);
            }
        }
    }
    g
}

/// All expanded 5-cycles of order `n` whose three consecutive expanded
/// classes have a middle class of size `floor((n-3)/2)` or `ceil((n-3)/2)`.
pub fn c5plus_members(n: usize) -> Vec<Adj> {
    let mut out = Vec::new();
    if n < 5 {
        return out;
    }
    for s1 in 1..n {
        for s2 in 1..n {
            for s3 in 1..n {
                if s1 + s2 + s3 + 2 != n {
                    continue;
                }
                if s2 != (n - 3) / 2 && s2 != (n - 2) / 2 {
                    continue;
                }
                out.push(c5_blowup([s1, s2, s3, 1, 1]));
            }
        }
    }
    out
}

pub fn in_c5plus(g: &Adj) -> bool {
    c5plus_members(g.n).iter().any(|h| h.isomorphic(g))
}

/// `T_n` written out from its definition: `u = 0`, `v = 1`, `a_i`, `b_i`,
/// and `w` last for odd `n`.
pub fn t_graph(n: usize) -> Adj {
    assert!(n >= 6);
    let k = (n - 2) / 2;
    let mut g = Adj::new(n);
    for i in 0..k {
        let (a, b) = (2 + i, 2 + k + i);
        g.set(a, b, true);
        g.set(0, a, true);
        g.set(0, b, true);
        g.set(1, b, true);
    }
    if n % 2 == 1 {
        g.set(0, n - 1, true);
        g.set(1, n - 1, true);
    }
    g
}

/// Vertices of `t_graph(n)` that may be expanded into twins: `A` and `w`.
pub fn t_expandable(n: usize) -> Vec<usize> {
    let k = (n - 2) / 2;
    let mut out: Vec<usize> = (2..2 + k).collect();
    if n % 2 == 1 {
        out.push(n - 1);
    }
    out
}

/// Every graph obtained from some `T_m`, `m <= n`, by adding `n - m` twins
/// to vertices of `A ∪ {w}`, one representative per isomorphism class.
pub fn tprime_members(n: usize) -> Vec<Adj> {
    let mut out: Vec<Adj> = Vec::new();
    for m in 6..=n {
        let base = t_graph(m);
        let slots = t_expandable(m);
        let mut stack = vec![(base, n - m, 0usize)];
        while let Some((g, left, from)) = stack.pop() {
            if left == 0 {
                if !out.iter().any(|h| h.isomorphic(&g)) {
                    out.push(g);
                }
                continue;
            }
            for (i, &x) in slots.iter().enumerate().skip(from) {
                stack.push((g.with_twin(x), left - 1, i));
            }
        }
    }
    out
}

/// `H5` as drawn: a 6-vertex graph with 8 edges.
pub fn h5_drawing() -> Adj {
    Adj::from_edges(6, &[(1, 0), (0, 2), (1, 2), (2, 4), (4, 3), (3, 1), (4, 5), (5, 2)])
}

/// Number of isomorphism classes of graphs on `n` labelled vertices, by
/// marking the full orbit of every labelled graph under all `n!`
/// permutations.
pub fn class_count(n: usize) -> u64 {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    let index = |x: usize, y: usize| pairs.iter().position(|&p| p == (x.min(y), x.max(y))).unwrap();
    let mut perm_maps: Vec<Vec<usize>> = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        perm_maps.push(pairs.iter().map(|&(x, y)| index(perm[x], perm[y])).collect());
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let total = 1usize << pairs.len();
    let mut seen = vec![false; total];
    let mut classes = 0;
    for g in 0..total {
        if seen[g] {
            continue;
        }
        classes += 1;
        for pm in &perm_maps {
            let mut img = 0usize;
            for (i, &j) in pm.iter().enumerate() {
                img |= (g >> i & 1) << j;
            }
            seen[img] = true;
        }
    }
    classes
}

pub fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
