//! Permutations on `0..degree` with exact composition and inversion.

use std::fmt;

use crate::error::{Error, Result};

/// A permutation stored as its image array: `images[v]` is where `v` goes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img as usize >= n || seen[img as usize] {
                return Err(Error::InvalidParameter(
                    "image array is not a bijection".into(),
                ));
            }
            seen[img as usize] = true;
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, v: u32) -> u32 {
        self.images[v as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &img)| i as u32 == img)
    }

    /// `self ∘ first`: applies `first`, then `self`.
    pub fn compose(&self, first: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), first.degree());
        Perm {
            images: first
                .images
                .iter()
                .map(|&v| self.images[v as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u32;
        }
        Perm { images }
    }

    /// Smallest point moved by the permutation, if any.
    pub fn smallest_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &img)| *i as u32 != img)
            .map(|(i, _)| i as u32)
    }

    /// Cycle decomposition with fixed points omitted, cycles led by their
    /// smallest element and ordered by it.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n as u32 {
            if seen[start as usize] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur as usize] = true;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, v) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{self}]")
    }
}
