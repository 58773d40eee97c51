//! Permutation groups backed by a stabilizer chain.
//!
//! The chain gives exact order (as a big integer), membership testing, point
//! stabilizers and orbits. Construction sifts generators into a chain with
//! base points taken in natural order `0, 1, 2, ...` (after an optional hint
//! prefix) and then closes the chain with Schreier generators. When the
//! group order is already known (the automorphism search certifies it), the
//! build stops as soon as the transversal product reaches that order: the
//! product can never exceed the true order, so equality certifies a complete
//! chain.

use num_bigint::BigUint;

use crate::perm::Perm;

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    /// Indices into `strong` of the generators fixing all earlier base points.
    gen_idx: Vec<usize>,
    /// Orbit of `base` in discovery order.
    orbit: Vec<u32>,
    /// `transversal[p]` maps `base` to `p`.
    transversal: Vec<Option<Perm>>,
}

/// A stabilizer chain over a strong generating set.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    strong: Vec<Perm>,
    levels: Vec<Level>,
    base_priority: Vec<u32>,
}

impl StabilizerChain {
    /// Builds a chain for the group generated by `gens`.
    ///
    /// Levels for `base_hint` points are created eagerly and in order, so the
    /// first hint point is always the first base point; remaining base points
    /// are taken ascending as needed. If `target` is given it must be the
    /// exact group order; the build short-circuits once the chain reaches it
    /// (the transversal product can never exceed the true order, so equality
    /// certifies completeness) and panics if a fully verified chain disagrees.
    pub fn build(
        degree: usize,
        gens: &[Perm],
        base_hint: &[u32],
        target: Option<&BigUint>,
    ) -> StabilizerChain {
        let mut base_priority: Vec<u32> = Vec::with_capacity(degree);
        let mut seen = vec![false; degree];
        let mut chain = StabilizerChain {
            degree,
            strong: Vec::new(),
            levels: Vec::new(),
            base_priority: Vec::new(),
        };
        for &b in base_hint {
            if !seen[b as usize] {
                seen[b as usize] = true;
                let mut transversal = vec![None; degree];
                transversal[b as usize] = Some(Perm::identity(degree));
                chain.levels.push(Level {
                    base: b,
                    gen_idx: Vec::new(),
                    orbit: vec![b],
                    transversal,
                });
            }
        }
        for v in 0..degree as u32 {
            if !seen[v as usize] {
                base_priority.push(v);
            }
        }
        chain.base_priority = base_priority;
        let mut pending: Vec<Perm> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        pending.reverse(); // treat as a queue via pop from the back of the reverse
        loop {
            while let Some(g) = pending.pop() {
                chain.insert(g);
                if let Some(t) = target {
                    if &chain.order() == t {
                        return chain;
                    }
                }
            }
            match chain.first_failing_schreier_generator() {
                Some(u) => pending.push(u),
                None => break,
            }
        }
        if let Some(t) = target {
            assert_eq!(
                &chain.order(),
                t,
                "verified chain order disagrees with the certified order"
            );
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    /// Product of the transversal sizes along the chain.
    pub fn order(&self) -> BigUint {
        let mut ord = BigUint::from(1u8);
        for level in &self.levels {
            ord *= BigUint::from(level.orbit.len());
        }
        ord
    }

    /// Sifts `g` through the chain: returns the level reached and the
    /// residue. Membership holds iff the residue is the identity.
    pub fn strip(&self, g: &Perm) -> (usize, Perm) {
        self.strip_from(0, g.clone())
    }

    fn strip_from(&self, start: usize, mut g: Perm) -> (usize, Perm) {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let img = g.apply(level.base);
            match &level.transversal[img as usize] {
                Some(t) => g = t.inverse().compose(&g),
                None => return (i, g),
            }
        }
        (self.levels.len(), g)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.strip(g).1.is_identity()
    }

    /// Strong generators fixing the first `k` base points pointwise; these
    /// generate the stabilizer of that prefix when the chain is complete.
    pub fn prefix_stabilizer_generators(&self, k: usize) -> Vec<Perm> {
        let prefix: Vec<u32> = self.levels.iter().take(k).map(|l| l.base).collect();
        self.strong
            .iter()
            .filter(|g| prefix.iter().all(|&b| g.apply(b) == b))
            .cloned()
            .collect()
    }

    fn insert(&mut self, g: Perm) {
        let (lvl, h) = self.strip(&g);
        if h.is_identity() {
            return;
        }
        if lvl == self.levels.len() {
            let base = *self
                .base_priority
                .iter()
                .find(|&&b| h.apply(b) != b)
                .expect("non-identity residue moves some point");
            self.levels.push(Level {
                base,
                gen_idx: Vec::new(),
                orbit: Vec::new(),
                transversal: vec![None; self.degree],
            });
            let pos = self.base_priority.iter().position(|&b| b == base).unwrap();
            self.base_priority.remove(pos);
        }
        self.strong.push(h);
        let gi = self.strong.len() - 1;
        // the new generator fixes all base points before `lvl`
        for j in 0..=lvl {
            self.levels[j].gen_idx.push(gi);
            self.rebuild_orbit(j);
        }
    }

    fn rebuild_orbit(&mut self, j: usize) {
        let degree = self.degree;
        let base = self.levels[j].base;
        let gen_idx = self.levels[j].gen_idx.clone();
        {
            let level = &mut self.levels[j];
            level.orbit.clear();
            level.transversal.iter_mut().for_each(|t| *t = None);
            level.orbit.push(base);
            level.transversal[base as usize] = Some(Perm::identity(degree));
        }
        let mut head = 0;
        while head < self.levels[j].orbit.len() {
            let p = self.levels[j].orbit[head];
            head += 1;
            for &gi in &gen_idx {
                let q = self.strong[gi].apply(p);
                if self.levels[j].transversal[q as usize].is_none() {
                    let tq = {
                        let tp = self.levels[j].transversal[p as usize].as_ref().unwrap();
                        self.strong[gi].compose(tp)
                    };
                    self.levels[j].transversal[q as usize] = Some(tq);
                    self.levels[j].orbit.push(q);
                }
            }
        }
    }

    /// First Schreier generator that does not sift to the identity, or None
    /// when the chain is verified complete.
    fn first_failing_schreier_generator(&self) -> Option<Perm> {
        for (i, level) in self.levels.iter().enumerate() {
            for &p in &level.orbit {
                let tp = level.transversal[p as usize].as_ref().unwrap();
                for &gi in &level.gen_idx {
                    let s = &self.strong[gi];
                    let q = s.apply(p);
                    let tq = level.transversal[q as usize].as_ref().unwrap();
                    let u = tq.inverse().compose(&s.compose(tp));
                    if u.is_identity() {
                        continue;
                    }
                    let (_, residue) = self.strip_from(i + 1, u.clone());
                    if !residue.is_identity() {
                        return Some(u);
                    }
                }
            }
        }
        None
    }
}

/// A permutation group given by generators, with a stabilizer chain for
/// exact order, membership, orbits and stabilizers.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: StabilizerChain,
}

impl PermGroup {
    /// Group generated by `gens`, fully verified chain.
    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> PermGroup {
        let chain = StabilizerChain::build(degree, &gens, &[], None);
        PermGroup {
            degree,
            generators: gens,
            chain,
        }
    }

    /// Group with externally certified order (from the automorphism search).
    pub fn with_known_order(
        degree: usize,
        gens: Vec<Perm>,
        order: &BigUint,
        base_hint: &[u32],
    ) -> PermGroup {
        let chain = StabilizerChain::build(degree, &gens, base_hint, Some(order));
        PermGroup {
            degree,
            generators: gens,
            chain,
        }
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_generators(degree, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn chain(&self) -> &StabilizerChain {
        &self.chain
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain.contains(g)
    }

    /// Orbit of `v` under the group, ascending.
    pub fn orbit(&self, v: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        seen[v as usize] = true;
        let mut orbit = vec![v];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    orbit.push(q);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// Point stabilizer of `v`, with its own chain.
    pub fn point_stabilizer(&self, v: u32) -> PermGroup {
        let order = self.order();
        let rebased = if self.chain.levels.first().map(|l| l.base) == Some(v) {
            self.chain.clone()
        } else {
            StabilizerChain::build(self.degree, &self.generators, &[v], Some(&order))
        };
        debug_assert_eq!(rebased.levels[0].base, v);
        let stab_gens = rebased.prefix_stabilizer_generators(1);
        let stab_order = order / BigUint::from(rebased.levels[0].orbit.len());
        PermGroup::with_known_order(self.degree, stab_gens, &stab_order, &[])
    }
}
