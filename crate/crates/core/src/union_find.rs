//! Union-find over `0..size`, used for orbit closures and block systems.

#[derive(Debug, Clone)]
pub struct UnionFind {
    parents: Vec<u32>,
    ranks: Vec<u8>,
}

impl UnionFind {
    pub fn new(size: usize) -> Self {
        UnionFind {
            parents: (0..size as u32).collect(),
            ranks: vec![0; size],
        }
    }

    pub fn find(&mut self, mut element: u32) -> u32 {
        let mut parent = self.parents[element as usize];
        while element != parent {
            let grandparent = self.parents[parent as usize];
            self.parents[element as usize] = grandparent;
            element = parent;
            parent = grandparent;
        }
        element
    }

    /// Joins the classes of `a` and `b`. Returns true if they were distinct.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let a = self.find(a);
        let b = self.find(b);
        if a == b {
            return false;
        }
        if self.ranks[a as usize] > self.ranks[b as usize] {
            self.parents[b as usize] = a;
        } else if self.ranks[b as usize] > self.ranks[a as usize] {
            self.parents[a as usize] = b;
        } else {
            self.parents[a as usize] = b;
            self.ranks[b as usize] += 1;
        }
        true
    }

    pub fn same(&mut self, a: u32, b: u32) -> bool {
        self.find(a) == self.find(b)
    }
}
