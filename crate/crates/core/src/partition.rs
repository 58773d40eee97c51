//! Ordered color partitions and equitable refinement.
//!
//! Cells are kept in a fixed positional order and every refinement decision
//! (queue discipline, fragment ordering) depends only on positions and
//! neighbor counts, never on vertex identities. Two partitions related by a
//! graph automorphism therefore refine to positionally identical partitions,
//! which is what makes the recorded refinement trace usable as a search-tree
//! invariant.

use std::collections::VecDeque;

use crate::dense::DenseGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Cell {
    start: u32,
    len: u32,
}

/// An ordered partition of the vertex set into color classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorPartition {
    /// Vertices in partition order.
    lab: Vec<u32>,
    /// Position of each vertex in `lab`.
    pos: Vec<u32>,
    /// Start position of the cell containing each vertex (stable cell id).
    cell_of: Vec<u32>,
    /// Cells ordered by start position.
    cells: Vec<Cell>,
}

impl ColorPartition {
    /// The partition with a single cell.
    pub fn unit(n: usize) -> Self {
        ColorPartition {
            lab: (0..n as u32).collect(),
            pos: (0..n as u32).collect(),
            cell_of: vec![0; n],
            cells: if n == 0 {
                Vec::new()
            } else {
                vec![Cell {
                    start: 0,
                    len: n as u32,
                }]
            },
        }
    }

    /// Builds a partition from per-vertex colors; cells are ordered by
    /// ascending color value.
    pub fn from_colors(colors: &[u32]) -> Self {
        let n = colors.len();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&v| (colors[v as usize], v));
        let mut p = ColorPartition {
            lab: order,
            pos: vec![0; n],
            cell_of: vec![0; n],
            cells: Vec::new(),
        };
        let mut i = 0;
        while i < n {
            let mut j = i;
            while j < n && colors[p.lab[j] as usize] == colors[p.lab[i] as usize] {
                j += 1;
            }
            p.cells.push(Cell {
                start: i as u32,
                len: (j - i) as u32,
            });
            for k in i..j {
                p.cell_of[p.lab[k] as usize] = i as u32;
            }
            i = j;
        }
        for (idx, &v) in p.lab.iter().enumerate() {
            p.pos[v as usize] = idx as u32;
        }
        p
    }

    pub fn n(&self) -> usize {
        self.lab.len()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.len() == self.lab.len()
    }

    /// Vertices in partition order; at a discrete partition this is the
    /// labeling `position -> vertex`.
    pub fn vertex_order(&self) -> &[u32] {
        &self.lab
    }

    /// Index of the cell containing `v` (the "color" after stable
    /// renumbering).
    pub fn color_of(&self, v: u32) -> usize {
        self.cell_index_at(self.cell_of[v as usize])
    }

    /// Members of cell `idx` in internal order.
    pub fn cell_members(&self, idx: usize) -> &[u32] {
        let c = self.cells[idx];
        &self.lab[c.start as usize..(c.start + c.len) as usize]
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len as usize).collect()
    }

    /// `(start, len)` of every cell in order.
    pub fn shape(&self) -> Vec<(u32, u32)> {
        self.cells.iter().map(|c| (c.start, c.len)).collect()
    }

    fn cell_index_at(&self, start: u32) -> usize {
        self.cells
            .binary_search_by_key(&start, |c| c.start)
            .expect("cell start must exist")
    }

    /// Start position of the first smallest non-singleton cell.
    pub fn target_cell_start(&self) -> Option<u32> {
        self.cells
            .iter()
            .filter(|c| c.len > 1)
            .min_by_key(|c| (c.len, c.start))
            .map(|c| c.start)
    }

    /// Splits `v` off to the front of its cell. Returns the two fragment
    /// starts for reseeding refinement. The cell must not be a singleton.
    pub fn individualize(&mut self, v: u32) -> (u32, u32) {
        let start = self.cell_of[v as usize];
        let idx = self.cell_index_at(start);
        let len = self.cells[idx].len;
        assert!(len > 1, "cannot individualize inside a singleton cell");
        // move v to the front of its cell
        let p = self.pos[v as usize];
        let s = start;
        let other = self.lab[s as usize];
        self.lab.swap(s as usize, p as usize);
        self.pos[other as usize] = p;
        self.pos[v as usize] = s;
        // split the cell
        self.cells[idx] = Cell { start: s, len: 1 };
        self.cells.insert(
            idx + 1,
            Cell {
                start: s + 1,
                len: len - 1,
            },
        );
        for k in (s + 1)..(s + len) {
            self.cell_of[self.lab[k as usize] as usize] = s + 1;
        }
        (s, s + 1)
    }

    /// True when every pair of same-cell vertices has identical neighbor
    /// counts into every cell.
    pub fn is_equitable(&self, g: &DenseGraph) -> bool {
        for idx in 0..self.cells.len() {
            for jdx in 0..self.cells.len() {
                let target = self.cell_members(jdx);
                let mut counts = self
                    .cell_members(idx)
                    .iter()
                    .map(|&v| target.iter().filter(|&&w| g.has_edge(v, w)).count());
                let first = counts.next().unwrap();
                if counts.any(|c| c != first) {
                    return false;
                }
            }
        }
        true
    }
}

/// Refines `p` to the coarsest equitable partition finer than it.
///
/// Deterministic with stable color renumbering: cells keep positional order,
/// split fragments are ordered by ascending neighbor count.
pub fn refine(g: &DenseGraph, p: &ColorPartition) -> ColorPartition {
    let mut q = p.clone();
    let seeds: Vec<u32> = q.cells.iter().map(|c| c.start).collect();
    refine_with_trace(g, &mut q, &seeds, &mut Vec::new());
    q
}

/// In-place refinement seeded with the given splitter cells, appending split
/// events to `trace`.
///
/// The trace records, per split: splitter start, split-cell start, fragment
/// count, then each fragment's (neighbor count, length). It is equal across
/// automorphism-equivalent runs and is used to prune the search tree.
pub(crate) fn refine_with_trace(
    g: &DenseGraph,
    p: &mut ColorPartition,
    seeds: &[u32],
    trace: &mut Vec<u32>,
) {
    let n = p.n();
    if n == 0 {
        return;
    }
    let words = g.words();
    let mut in_queue = vec![false; n];
    let mut queue: VecDeque<u32> = VecDeque::new();
    for &s in seeds {
        if !in_queue[s as usize] {
            in_queue[s as usize] = true;
            queue.push_back(s);
        }
    }
    let mut mask = vec![0u64; words];
    let mut scratch: Vec<(u32, u32)> = Vec::with_capacity(n);

    while let Some(sp) = queue.pop_front() {
        in_queue[sp as usize] = false;
        let sp_idx = p.cell_index_at(sp);
        let sp_cell = p.cells[sp_idx];
        mask.fill(0);
        for &v in &p.lab[sp_cell.start as usize..(sp_cell.start + sp_cell.len) as usize] {
            mask[v as usize / 64] |= 1 << (v % 64);
        }

        let mut ci = 0;
        while ci < p.cells.len() {
            let cell = p.cells[ci];
            if cell.len == 1 {
                ci += 1;
                continue;
            }
            // neighbor counts into the splitter
            scratch.clear();
            let members = cell.start as usize..(cell.start + cell.len) as usize;
            let mut all_same = true;
            let mut first_count = u32::MAX;
            for &v in &p.lab[members.clone()] {
                let row = g.row(v);
                let mut c = 0u32;
                for w in 0..words {
                    c += (row[w] & mask[w]).count_ones();
                }
                if first_count == u32::MAX {
                    first_count = c;
                } else if c != first_count {
                    all_same = false;
                }
                scratch.push((c, v));
            }
            if all_same {
                ci += 1;
                continue;
            }
            // stable sort by count; fragments in ascending count order
            scratch.sort_by_key(|&(c, _)| c);
            for (off, &(_, v)) in scratch.iter().enumerate() {
                let posn = cell.start + off as u32;
                p.lab[posn as usize] = v;
                p.pos[v as usize] = posn;
            }
            // fragment boundaries
            let mut frags: Vec<Cell> = Vec::new();
            let mut fstart = 0usize;
            for i in 1..=scratch.len() {
                if i == scratch.len() || scratch[i].0 != scratch[fstart].0 {
                    frags.push(Cell {
                        start: cell.start + fstart as u32,
                        len: (i - fstart) as u32,
                    });
                    fstart = i;
                }
            }
            let nfrags = frags.len();
            trace.push(sp);
            trace.push(cell.start);
            trace.push(nfrags as u32);
            let mut fi = 0usize;
            for f in &frags {
                trace.push(scratch[fi].0);
                trace.push(f.len);
                fi += f.len as usize;
            }
            for f in &frags {
                for k in f.start..(f.start + f.len) {
                    p.cell_of[p.lab[k as usize] as usize] = f.start;
                }
                if !in_queue[f.start as usize] {
                    in_queue[f.start as usize] = true;
                    queue.push_back(f.start);
                }
            }
            p.cells.splice(ci..=ci, frags);
            ci += nfrags;
        }
    }
    debug_assert!(p.is_equitable(g));
}
