//! Adjacency-matrix graphs over bitset rows.
//!
//! Refinement and neighborhood intersection dominate the automorphism search,
//! so rows are packed `u64` bitsets and neighborhood counts are popcounts.

use std::fmt;

use crate::perm::Perm;

/// A finite simple undirected graph on vertices `0..n`.
///
/// Double covers use the fixed vertex layout `(v, i) = v + i*n`, so witnesses
/// and reports are reproducible bit-exactly.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl DenseGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        DenseGraph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn with_edges(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut g = DenseGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn words(&self) -> usize {
        self.words
    }

    pub fn add_edge(&mut self, u: u32, v: u32) {
        assert!(u != v, "no loops");
        assert!((u as usize) < self.n && (v as usize) < self.n);
        let (u, v) = (u as usize, v as usize);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.rows[u as usize * self.words + v as usize / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn row(&self, v: u32) -> &[u64] {
        let v = v as usize;
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        let row = self.row(v);
        row.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros();
                    w &= w - 1;
                    Some(wi as u32 * 64 + bit)
                }
            })
        })
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n as u32).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n as u32 {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Component id per vertex, numbered by first appearance.
    pub fn component_ids(&self) -> Vec<u32> {
        let mut ids = vec![u32::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for start in 0..self.n as u32 {
            if ids[start as usize] != u32::MAX {
                continue;
            }
            ids[start as usize] = next;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if ids[w as usize] == u32::MAX {
                        ids[w as usize] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        ids
    }

    pub fn component_count(&self) -> usize {
        self.component_ids()
            .iter()
            .map(|&c| c + 1)
            .max()
            .unwrap_or(0) as usize
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_count() == 1
    }

    /// Proper 2-colorability, checked per component.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        let mut stack = Vec::new();
        for start in 0..self.n as u32 {
            if color[start as usize] != u8::MAX {
                continue;
            }
            color[start as usize] = 0;
            stack.push(start);
            while let Some(v) = stack.pop() {
                let c = color[v as usize];
                for w in self.neighbors(v) {
                    if color[w as usize] == u8::MAX {
                        color[w as usize] = 1 - c;
                        stack.push(w);
                    } else if color[w as usize] == c {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The image graph under a relabeling permutation.
    pub fn permuted(&self, p: &Perm) -> DenseGraph {
        assert_eq!(p.degree(), self.n);
        let mut g = DenseGraph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(p.apply(u), p.apply(v));
        }
        g
    }

    /// Debug serialization: sorted edge list, one `u v` per line.
    pub fn to_edge_list_string(&self) -> String {
        let mut s = String::new();
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }

    pub fn complete(n: usize) -> Self {
        let mut g = DenseGraph::new(n);
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn empty(n: usize) -> Self {
        DenseGraph::new(n)
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let mut g = DenseGraph::new(n);
        for v in 0..n as u32 {
            g.add_edge(v, (v + 1) % n as u32);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = DenseGraph::new(n);
        for v in 1..n as u32 {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = DenseGraph::new(a + b);
        for u in 0..a as u32 {
            for v in a as u32..(a + b) as u32 {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn disjoint_union(&self, other: &DenseGraph) -> DenseGraph {
        let mut g = DenseGraph::new(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n as u32, v + self.n as u32);
        }
        g
    }
}

impl fmt::Debug for DenseGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DenseGraph(n={}, m={})", self.n, self.edge_count())
    }
}
