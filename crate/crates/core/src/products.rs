//! The canonical double cover and the graph products used as structural
//! oracles.

use crate::circulant::CirculantGraph;
use crate::dense::DenseGraph;
use crate::error::{Error, Result};

/// Canonical bipartite double cover `BX` of a circulant graph.
///
/// Vertices are laid out `(v, i) = v + i*n`; `(v,0) ~ (w,1)` iff `v ~ w` in
/// `x`. Equals `Cay(Z_n × Z_2, S × {1})`.
pub fn double_cover(x: &CirculantGraph) -> DenseGraph {
    let n = x.n() as usize;
    let mut g = DenseGraph::new(2 * n);
    for v in 0..x.n() {
        for &s in x.set().elements() {
            let w = (v + s) % x.n();
            g.add_edge(v as u32, (w + x.n()) as u32);
        }
    }
    g
}

/// Index of cover vertex `(v, layer)` in the fixed layout.
pub fn cover_index(n: u64, v: u64, layer: u64) -> u32 {
    (v % n + (layer % 2) * n) as u32
}

/// Direct (tensor/categorical) product: `(x1,y1) ~ (x2,y2)` iff both
/// coordinates are adjacent. Vertex `(x, y)` has index `x*|b| + y`.
pub fn direct_product(a: &DenseGraph, b: &DenseGraph) -> DenseGraph {
    let (na, nb) = (a.n(), b.n());
    let mut g = DenseGraph::new(na * nb);
    for (x1, x2) in a.edges() {
        for (y1, y2) in b.edges() {
            g.add_edge(x1 * nb as u32 + y1, x2 * nb as u32 + y2);
            g.add_edge(x1 * nb as u32 + y2, x2 * nb as u32 + y1);
        }
    }
    g
}

/// Cartesian (box) product. Vertex `(x, y)` has index `x*|b| + y`.
pub fn cartesian_product(a: &DenseGraph, b: &DenseGraph) -> DenseGraph {
    let (na, nb) = (a.n(), b.n());
    let mut g = DenseGraph::new(na * nb);
    for x in 0..na as u32 {
        for (y1, y2) in b.edges() {
            g.add_edge(x * nb as u32 + y1, x * nb as u32 + y2);
        }
    }
    for y in 0..nb as u32 {
        for (x1, x2) in a.edges() {
            g.add_edge(x1 * nb as u32 + y, x2 * nb as u32 + y);
        }
    }
    g
}

/// Wreath (lexicographic) product `a wr K̄_m`: every vertex blown up into an
/// independent set of size `m`. Vertex `(x, i)` has index `x*m + i`.
pub fn wreath_product(a: &DenseGraph, m: usize) -> Result<DenseGraph> {
    if m < 1 {
        return Err(Error::InvalidParameter(
            "wreath blow-up needs m >= 1".into(),
        ));
    }
    let mut g = DenseGraph::new(a.n() * m);
    for (x, y) in a.edges() {
        for i in 0..m as u32 {
            for j in 0..m as u32 {
                g.add_edge(x * m as u32 + i, y * m as u32 + j);
            }
        }
    }
    Ok(g)
}

/// `C_k wr K_2` as a circulant: `Cay(Z_2k, {±1, k-1, k+1, k})`.
///
/// The inner factor is the complete graph `K_2`, so fibers are joined: the
/// element `k` gives the fiber edges and `k±1` the cross edges.
pub fn cycle_wr_k2(k: u64) -> Result<CirculantGraph> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle wreath needs k >= 3, got {k}"
        )));
    }
    CirculantGraph::new(2 * k, &[1, k as i64 - 1, k as i64 + 1, k as i64])
}
