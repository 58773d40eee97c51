//! Orbits, blocks and normality tests built on generator actions.

use std::collections::HashMap;

use crate::circulant::CirculantGraph;
use crate::dense::DenseGraph;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::products::double_cover;
use crate::search::automorphism_group;
use crate::union_find::UnionFind;

/// Orbit of a vertex under the group (ascending).
pub fn orbit_of_vertex(group: &PermGroup, v: u32) -> Vec<u32> {
    group.orbit(v)
}

/// Orbits of the group on the edge set of `g`, as sorted edge classes
/// ordered by their smallest edge.
///
/// A single union-find pass over `edge ~ gen(edge)` suffices: any group
/// element is a word in the generators and transitivity closes the words.
pub fn edge_orbits(group: &PermGroup, g: &DenseGraph) -> Vec<Vec<(u32, u32)>> {
    let edges = g.edges();
    let index: HashMap<(u32, u32), u32> = edges
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i as u32))
        .collect();
    let mut uf = UnionFind::new(edges.len());
    for (i, &(u, v)) in edges.iter().enumerate() {
        for gen in group.generators() {
            let (mut a, mut b) = (gen.apply(u), gen.apply(v));
            if a > b {
                std::mem::swap(&mut a, &mut b);
            }
            uf.union(i as u32, index[&(a, b)]);
        }
    }
    let mut classes: HashMap<u32, Vec<(u32, u32)>> = HashMap::new();
    for (i, &e) in edges.iter().enumerate() {
        classes.entry(uf.find(i as u32)).or_default().push(e);
    }
    let mut out: Vec<Vec<(u32, u32)>> = classes.into_values().collect();
    for class in &mut out {
        class.sort_unstable();
    }
    out.sort_by_key(|c| c[0]);
    out
}

pub fn edge_orbit_count(group: &PermGroup, g: &DenseGraph) -> usize {
    edge_orbits(group, g).len()
}

/// True iff `Aut(g)` is transitive on ordered adjacent pairs: the orbit of
/// one arc has full length. Edgeless graphs are vacuously arc-transitive.
pub fn is_arc_transitive(g: &DenseGraph) -> bool {
    let edges = g.edges();
    if edges.is_empty() {
        return true;
    }
    let group = automorphism_group(g);
    let n = g.n() as u64;
    let (u0, v0) = edges[0];
    let start = u0 as u64 * n + v0 as u64;
    let mut seen = std::collections::HashSet::new();
    seen.insert(start);
    let mut stack = vec![(u0, v0)];
    while let Some((u, v)) = stack.pop() {
        for gen in group.generators() {
            let (a, b) = (gen.apply(u), gen.apply(v));
            if seen.insert(a as u64 * n + b as u64) {
                stack.push((a, b));
            }
        }
    }
    seen.len() == 2 * edges.len()
}

/// Smallest block of imprimitivity containing both seed vertices, for a
/// group transitive on the seed's orbit (Atkinson's algorithm).
pub fn minimal_block(group: &PermGroup, seed: (u32, u32)) -> Result<Vec<u32>> {
    let (a, b) = seed;
    if !group.orbit(a).contains(&b) {
        return Err(Error::SeedNotInOneOrbit);
    }
    let mut uf = UnionFind::new(group.degree());
    uf.union(a, b);
    let mut queue = vec![(a, b)];
    while let Some((x, y)) = queue.pop() {
        for gen in group.generators() {
            let (gx, gy) = (gen.apply(x), gen.apply(y));
            let (rx, ry) = (uf.find(gx), uf.find(gy));
            if rx != ry {
                uf.union(rx, ry);
                queue.push((rx, ry));
            }
        }
    }
    let root = uf.find(a);
    let block: Vec<u32> = (0..group.degree() as u32)
        .filter(|&v| uf.find(v) == root)
        .collect();
    Ok(block)
}

/// Vertex-indexable abelian group structures for Cayley graphs in this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupStructure {
    /// `Z_n`, vertex `v` is the element `v`.
    Cyclic(u64),
    /// `Z_n × Z_2`, vertex `v + i*n` is the element `(v, i)`.
    CyclicTimesZ2(u64),
}

impl GroupStructure {
    pub fn element_count(&self) -> usize {
        match self {
            GroupStructure::Cyclic(n) => *n as usize,
            GroupStructure::CyclicTimesZ2(n) => 2 * *n as usize,
        }
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        match self {
            GroupStructure::Cyclic(n) => ((x as u64 + y as u64) % n) as u32,
            GroupStructure::CyclicTimesZ2(n) => {
                let (vx, ix) = (x as u64 % n, x as u64 / n);
                let (vy, iy) = (y as u64 % n, y as u64 / n);
                ((vx + vy) % n + ((ix + iy) % 2) * n) as u32
            }
        }
    }
}

/// True iff `p` (which must fix the identity vertex 0) is additive:
/// `p(x + y) = p(x) + p(y)` for all pairs.
pub fn is_group_automorphism(p: &Perm, structure: GroupStructure) -> Result<bool> {
    let count = structure.element_count();
    if p.degree() != count {
        return Err(Error::InvalidParameter(format!(
            "permutation degree {} does not match group order {count}",
            p.degree()
        )));
    }
    if p.apply(0) != 0 {
        return Err(Error::MovesIdentity);
    }
    for x in 0..count as u32 {
        for y in x..count as u32 {
            if p.apply(structure.add(x, y)) != structure.add(p.apply(x), p.apply(y)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff every generator of the stabilizer of the identity vertex is a
/// group automorphism.
pub fn is_normal(g: &DenseGraph, structure: GroupStructure) -> bool {
    let group = automorphism_group(g);
    let stab = group.point_stabilizer(0);
    stab.generators()
        .iter()
        .all(|p| is_group_automorphism(p, structure).unwrap_or(false))
}

/// Normality of the circulant `x` as a Cayley graph on `Z_n`.
pub fn is_normal_cayley(x: &CirculantGraph) -> bool {
    is_normal(&x.to_dense(), GroupStructure::Cyclic(x.n()))
}

/// Normality of the double cover `BX` as a Cayley graph on `Z_n × Z_2`.
pub fn is_normal_cayley_cover(x: &CirculantGraph) -> bool {
    is_normal(&double_cover(x), GroupStructure::CyclicTimesZ2(x.n()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_orbits_of_complete_graph() {
        let g = DenseGraph::complete(5);
        let group = automorphism_group(&g);
        assert_eq!(edge_orbit_count(&group, &g), 1);
    }

    #[test]
    fn arc_transitivity_fixtures() {
        assert!(is_arc_transitive(&DenseGraph::complete(4)));
        assert!(is_arc_transitive(&DenseGraph::complete_bipartite(3, 3)));
        assert!(is_arc_transitive(&DenseGraph::cycle(7)));
        // the 6-prism is vertex- but not arc-transitive
        let prism =
            crate::products::cartesian_product(&DenseGraph::complete(2), &DenseGraph::cycle(6));
        assert!(!is_arc_transitive(&prism));
        assert!(is_arc_transitive(&DenseGraph::empty(3)));
    }

    #[test]
    fn blocks_of_k44_and_c6() {
        let g = DenseGraph::complete_bipartite(4, 4);
        let group = automorphism_group(&g);
        // two same-side vertices generate the whole side
        assert_eq!(minimal_block(&group, (0, 1)).unwrap(), vec![0, 1, 2, 3]);

        let c6 = automorphism_group(&DenseGraph::cycle(6));
        assert_eq!(minimal_block(&c6, (0, 3)).unwrap(), vec![0, 3]);
    }

    #[test]
    fn block_seed_in_different_orbits_is_an_error() {
        let g = DenseGraph::path(3); // endpoints vs center
        let group = automorphism_group(&g);
        assert!(matches!(
            minimal_block(&group, (0, 1)),
            Err(Error::SeedNotInOneOrbit)
        ));
    }

    #[test]
    fn group_automorphism_checks() {
        // negation on Z_7
        let neg = Perm::from_images((0..7).map(|v| (7 - v) % 7).collect()).unwrap();
        assert!(is_group_automorphism(&neg, GroupStructure::Cyclic(7)).unwrap());
        // translation does not fix 0
        let shift = Perm::from_images((0..7).map(|v| (v + 1) % 7).collect()).unwrap();
        assert!(matches!(
            is_group_automorphism(&shift, GroupStructure::Cyclic(7)),
            Err(Error::MovesIdentity)
        ));
        // multiplication by 3 on Z_8 (a unit)
        let mul3 = Perm::from_images((0..8).map(|v| (3 * v) % 8).collect()).unwrap();
        assert!(is_group_automorphism(&mul3, GroupStructure::Cyclic(8)).unwrap());
        // an order-respecting but non-additive map on Z_8
        let swap = Perm::from_images(vec![0, 1, 2, 5, 4, 3, 6, 7]).unwrap();
        assert!(!is_group_automorphism(&swap, GroupStructure::Cyclic(8)).unwrap());
    }

    #[test]
    fn cycles_are_normal_cayley_graphs() {
        for n in [3u64, 5, 6, 7, 9] {
            let x = CirculantGraph::new(n, &[1]).unwrap();
            assert!(is_normal_cayley(&x), "C_{n}");
        }
    }

    #[test]
    fn z10_petersen_like_is_not_normal() {
        // Cay(Z_10, {±1, ±3}) is connected, bipartite, twin-free, non-normal
        let x = CirculantGraph::new(10, &[1, 3]).unwrap();
        assert!(!is_normal_cayley(&x));
    }
}
