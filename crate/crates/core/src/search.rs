//! Automorphism-group search by individualization and refinement.
//!
//! The search descends a tree of refined ordered partitions. The first path
//! (always individualizing the smallest vertex of the target cell) defines a
//! base; processing the siblings of each first-path node yields coset
//! representatives for the orbit of the next base point, so the generators
//! found while processing depth >= d generate exactly the stabilizer of the
//! first d base points. The group order is the product of the basic orbit
//! lengths, which certifies the stabilizer chain built afterwards.
//!
//! Pruning is twofold and both rules are exact:
//! - a node whose refinement trace differs from the first-path node at the
//!   same depth cannot lead to a leaf equivalent to the first leaf;
//! - a sibling vertex lying in the orbit of an already-processed sibling
//!   under the automorphisms found so far would only reproduce a known coset.

use std::time::Instant;

use num_bigint::BigUint;

use crate::dense::DenseGraph;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::partition::{refine_with_trace, ColorPartition};
use crate::perm::Perm;
use crate::union_find::UnionFind;

/// Exact automorphism group of a simple graph.
pub fn automorphism_group(g: &DenseGraph) -> PermGroup {
    automorphism_group_with_deadline(g, None).expect("search without deadline cannot time out")
}

/// As [`automorphism_group`], aborting with `Error::Timeout` past `deadline`.
pub fn automorphism_group_with_deadline(
    g: &DenseGraph,
    deadline: Option<Instant>,
) -> Result<PermGroup> {
    let n = g.n();
    if n == 0 {
        return Ok(PermGroup::trivial(0));
    }
    let mut root = ColorPartition::unit(n);
    let mut trace = Vec::new();
    refine_with_trace(g, &mut root, &[0], &mut trace);
    append_shape(&mut trace, &root);

    let mut ctx = Ctx {
        g,
        deadline,
        tick: 0,
        first: Vec::new(),
        first_leaf: Vec::new(),
        base: Vec::new(),
        found: Vec::new(),
        found_depth: Vec::new(),
    };
    ctx.explore_first(root, trace, 0)?;
    let order = ctx.group_order();
    Ok(PermGroup::with_known_order(n, ctx.found, &order, &[]))
}

struct FirstNode {
    invariant: Vec<u32>,
    target_start: Option<u32>,
}

struct Ctx<'a> {
    g: &'a DenseGraph,
    deadline: Option<Instant>,
    tick: u32,
    first: Vec<FirstNode>,
    first_leaf: Vec<u32>,
    base: Vec<u32>,
    found: Vec<Perm>,
    /// First-path depth at which each generator was found; a generator found
    /// at depth d fixes the first d base points.
    found_depth: Vec<usize>,
}

fn append_shape(trace: &mut Vec<u32>, p: &ColorPartition) {
    trace.push(u32::MAX); // separator between split events and shape
    for (start, len) in p.shape() {
        trace.push(start);
        trace.push(len);
    }
}

impl<'a> Ctx<'a> {
    fn check_deadline(&mut self) -> Result<()> {
        self.tick += 1;
        if self.tick % 64 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Error::Timeout);
                }
            }
        }
        Ok(())
    }

    fn make_child(&self, p: &ColorPartition, v: u32) -> (ColorPartition, Vec<u32>) {
        let mut child = p.clone();
        let (s1, s2) = child.individualize(v);
        let mut trace = Vec::new();
        refine_with_trace(self.g, &mut child, &[s1, s2], &mut trace);
        append_shape(&mut trace, &child);
        (child, trace)
    }

    fn sorted_cell(&self, p: &ColorPartition, start: u32) -> Vec<u32> {
        let idx = p
            .shape()
            .iter()
            .position(|&(s, _)| s == start)
            .expect("target cell start");
        let mut cell = p.cell_members(idx).to_vec();
        cell.sort_unstable();
        cell
    }

    fn explore_first(
        &mut self,
        p: ColorPartition,
        invariant: Vec<u32>,
        depth: usize,
    ) -> Result<()> {
        debug_assert_eq!(depth, self.first.len());
        self.check_deadline()?;
        if p.is_discrete() {
            self.first.push(FirstNode {
                invariant,
                target_start: None,
            });
            self.first_leaf = p.vertex_order().to_vec();
            return Ok(());
        }
        let target = p.target_cell_start().expect("non-discrete partition");
        self.first.push(FirstNode {
            invariant,
            target_start: Some(target),
        });
        let cell = self.sorted_cell(&p, target);
        let v0 = cell[0];
        self.base.push(v0);
        let (child, child_inv) = self.make_child(&p, v0);
        self.explore_first(child, child_inv, depth + 1)?;

        // Siblings: one automorphism per new orbit of the target cell.
        let mut orbits = self.prefix_orbits(depth);
        let mut processed = vec![v0];
        for &w in &cell[1..] {
            self.check_deadline()?;
            if processed.iter().any(|&x| orbits.same(x, w)) {
                continue;
            }
            let (cp, cinv) = self.make_child(&p, w);
            if let Some(gamma) = self.try_map(cp, cinv, depth + 1)? {
                debug_assert!(is_automorphism(self.g, &gamma));
                self.found.push(gamma);
                self.found_depth.push(depth);
                orbits = self.prefix_orbits(depth);
            }
            processed.push(w);
        }
        Ok(())
    }

    /// Searches the subtree for one leaf equivalent to the first leaf.
    fn try_map(
        &mut self,
        p: ColorPartition,
        invariant: Vec<u32>,
        depth: usize,
    ) -> Result<Option<Perm>> {
        self.check_deadline()?;
        if invariant != self.first[depth].invariant {
            return Ok(None);
        }
        if p.is_discrete() {
            let mut images = vec![0u32; self.g.n()];
            for (i, &v) in self.first_leaf.iter().enumerate() {
                images[v as usize] = p.vertex_order()[i];
            }
            let gamma = Perm::from_images_unchecked(images);
            if is_automorphism(self.g, &gamma) {
                return Ok(Some(gamma));
            }
            return Ok(None);
        }
        let target = self.first[depth].target_start.expect("shape matched");
        for w in self.sorted_cell(&p, target) {
            let (cp, cinv) = self.make_child(&p, w);
            if let Some(gamma) = self.try_map(cp, cinv, depth + 1)? {
                return Ok(Some(gamma));
            }
        }
        Ok(None)
    }

    /// Orbit union-find under the generators fixing the first `depth` base
    /// points (exactly those found at first-path depth >= `depth`).
    fn prefix_orbits(&self, depth: usize) -> UnionFind {
        let mut uf = UnionFind::new(self.g.n());
        for (gen, &d) in self.found.iter().zip(&self.found_depth) {
            if d >= depth {
                for v in 0..self.g.n() as u32 {
                    uf.union(v, gen.apply(v));
                }
            }
        }
        uf
    }

    /// `|G| = prod_d |orbit of base[d] under the stabilizer of base[0..d]|`.
    fn group_order(&self) -> BigUint {
        let mut order = BigUint::from(1u8);
        for (d, &b) in self.base.iter().enumerate() {
            let gens: Vec<&Perm> = self
                .found
                .iter()
                .zip(&self.found_depth)
                .filter(|(_, &fd)| fd >= d)
                .map(|(g, _)| g)
                .collect();
            order *= BigUint::from(orbit_size(self.g.n(), &gens, b));
        }
        order
    }
}

fn orbit_size(n: usize, gens: &[&Perm], v: u32) -> usize {
    let mut seen = vec![false; n];
    seen[v as usize] = true;
    let mut stack = vec![v];
    let mut count = 1;
    while let Some(p) = stack.pop() {
        for g in gens {
            let q = g.apply(p);
            if !seen[q as usize] {
                seen[q as usize] = true;
                count += 1;
                stack.push(q);
            }
        }
    }
    count
}

/// Checks edge preservation of a candidate permutation.
pub fn is_automorphism(g: &DenseGraph, p: &Perm) -> bool {
    if p.degree() != g.n() {
        return false;
    }
    let words = g.n().div_ceil(64).max(1);
    let mut permuted = vec![0u64; words];
    for v in 0..g.n() as u32 {
        permuted.iter_mut().for_each(|w| *w = 0);
        for w in g.neighbors(v) {
            let img = p.apply(w);
            permuted[img as usize / 64] |= 1 << (img % 64);
        }
        if permuted != g.row(p.apply(v)) {
            return false;
        }
    }
    true
}

/// Isomorphism test by parallel individualization-refinement, intended for
/// the small graphs used in tests and cross-checks.
pub fn are_isomorphic(a: &DenseGraph, b: &DenseGraph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    if a.n() == 0 {
        return true;
    }
    let mut pa = ColorPartition::unit(a.n());
    let mut ta = Vec::new();
    refine_with_trace(a, &mut pa, &[0], &mut ta);
    append_shape(&mut ta, &pa);
    let mut pb = ColorPartition::unit(b.n());
    let mut tb = Vec::new();
    refine_with_trace(b, &mut pb, &[0], &mut tb);
    append_shape(&mut tb, &pb);
    if ta != tb {
        return false;
    }
    iso_descend(a, b, &pa, &pb)
}

fn iso_descend(a: &DenseGraph, b: &DenseGraph, pa: &ColorPartition, pb: &ColorPartition) -> bool {
    if pa.is_discrete() {
        let mut images = vec![0u32; a.n()];
        for (i, &v) in pa.vertex_order().iter().enumerate() {
            images[v as usize] = pb.vertex_order()[i];
        }
        let map = Perm::from_images_unchecked(images);
        return a
            .edges()
            .iter()
            .all(|&(u, v)| b.has_edge(map.apply(u), map.apply(v)));
    }
    let target = pa.target_cell_start().unwrap();
    let idx = pa.shape().iter().position(|&(s, _)| s == target).unwrap();
    let va = *pa.cell_members(idx).iter().min().unwrap();
    let (ca, ta) = {
        let mut child = pa.clone();
        let (s1, s2) = child.individualize(va);
        let mut trace = Vec::new();
        refine_with_trace(a, &mut child, &[s1, s2], &mut trace);
        append_shape(&mut trace, &child);
        (child, trace)
    };
    let mut cell_b = pb.cell_members(idx).to_vec();
    cell_b.sort_unstable();
    for wb in cell_b {
        let mut child = pb.clone();
        let (s1, s2) = child.individualize(wb);
        let mut trace = Vec::new();
        refine_with_trace(b, &mut child, &[s1, s2], &mut trace);
        append_shape(&mut trace, &child);
        if trace == ta && iso_descend(a, b, &ca, &child) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn cycle_groups_are_dihedral() {
        for n in 3..=12 {
            let g = DenseGraph::cycle(n);
            assert_eq!(automorphism_group(&g).order(), big(2 * n as u64), "C_{n}");
        }
    }

    #[test]
    fn complete_graph_groups_are_symmetric() {
        let mut factorial = 1u64;
        for n in 1..=8usize {
            factorial *= n as u64;
            let g = DenseGraph::complete(n);
            assert_eq!(automorphism_group(&g).order(), big(factorial), "K_{n}");
        }
    }

    #[test]
    fn complete_bipartite_wreath_order() {
        let mut factorial = 1u64;
        for n in 1..=5usize {
            factorial *= n as u64;
            let g = DenseGraph::complete_bipartite(n, n);
            let expected = if n == 1 { 2 } else { 2 * factorial * factorial };
            assert_eq!(automorphism_group(&g).order(), big(expected), "K_{n},{n}");
        }
    }

    #[test]
    fn empty_and_tiny_graphs() {
        assert_eq!(automorphism_group(&DenseGraph::empty(1)).order(), big(1));
        assert_eq!(automorphism_group(&DenseGraph::empty(4)).order(), big(24));
        assert_eq!(automorphism_group(&DenseGraph::path(2)).order(), big(2));
        assert_eq!(automorphism_group(&DenseGraph::path(4)).order(), big(2));
    }

    #[test]
    fn petersen_graph_group() {
        // vertices 0..5 outer C_5, 5..10 inner pentagram
        let mut g = DenseGraph::new(10);
        for v in 0..5u32 {
            g.add_edge(v, (v + 1) % 5);
            g.add_edge(v, v + 5);
            g.add_edge(v + 5, (v + 2) % 5 + 5);
        }
        assert_eq!(automorphism_group(&g).order(), big(120));
    }

    #[test]
    fn generators_are_automorphisms_and_strip_to_identity() {
        let g = DenseGraph::complete_bipartite(3, 3);
        let group = automorphism_group(&g);
        for gen in group.generators() {
            assert!(is_automorphism(&g, gen));
            assert!(group.chain().contains(gen));
        }
    }

    #[test]
    fn order_is_invariant_under_relabeling() {
        let g = DenseGraph::with_edges(
            8,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (0, 4),
                (1, 5),
                (2, 6),
                (3, 7),
            ],
        );
        let base_order = automorphism_group(&g).order();
        // deterministic relabelings
        let relabelings = [
            Perm::from_images(vec![7, 6, 5, 4, 3, 2, 1, 0]).unwrap(),
            Perm::from_images(vec![3, 0, 1, 2, 6, 7, 4, 5]).unwrap(),
            Perm::from_images(vec![2, 4, 6, 0, 1, 3, 5, 7]).unwrap(),
        ];
        for p in relabelings {
            assert_eq!(automorphism_group(&g.permuted(&p)).order(), base_order);
        }
    }

    #[test]
    fn isomorphism_small_cases() {
        let c6 = DenseGraph::cycle(6);
        let k33 = DenseGraph::complete_bipartite(3, 3);
        assert!(!are_isomorphic(&c6, &k33));
        let relabeled = c6.permuted(&Perm::from_images(vec![4, 2, 0, 5, 1, 3]).unwrap());
        assert!(are_isomorphic(&c6, &relabeled));
        // prism vs Möbius-Kantor-ish: K_3,3 vs prism both cubic on 6
        let prism =
            crate::products::cartesian_product(&DenseGraph::complete(2), &DenseGraph::cycle(3));
        assert!(!are_isomorphic(&prism, &k33));
    }
}
