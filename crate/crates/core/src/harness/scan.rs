//! Enumeration and the per-graph classification pipeline.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::actions::edge_orbit_count;
use crate::circulant::CirculantGraph;
use crate::error::Error;
use crate::families;
use crate::harness::record::ClassificationRecord;
use crate::stability::{compute_stability, cover_is_normal_from_stabilizer};
use crate::wilson::wilson_types;
use crate::zmod::units;

/// All inverse-closed connection sets on `Z_n` of the given size, in
/// lexicographic order of their element lists.
///
/// Odd valency forces `n` even and `n/2` in the set; an impossible request
/// yields the empty list.
pub fn enumerate(n: u64, valency: u32) -> Vec<CirculantGraph> {
    if n == 0 {
        return Vec::new();
    }
    let pair_reps: Vec<u64> = (1..=(n.saturating_sub(1)) / 2).collect();
    let v = valency as usize;
    let with_half = v % 2 == 1;
    if with_half && n % 2 != 0 {
        return Vec::new();
    }
    let pairs_needed = v / 2;
    let mut out = Vec::new();
    for combo in combinations(pair_reps.len(), pairs_needed) {
        let mut raw: Vec<i64> = combo.iter().map(|&i| pair_reps[i] as i64).collect();
        if with_half {
            raw.push((n / 2) as i64);
        }
        out.push(CirculantGraph::new(n, &raw).expect("enumerated sets are valid"));
    }
    out
}

/// Keeps only sets that are lexicographically minimal in their orbit under
/// multiplication by units of `Z_n`. This collapses `S ~ uS`, a quotient of
/// the full enumeration (circulant isomorphism may identify more sets for
/// some `n`).
pub fn is_multiplier_minimal(x: &CirculantGraph) -> bool {
    let n = x.n();
    let elements = x.set().elements();
    for u in units(n) {
        let mut image: Vec<u64> = elements
            .iter()
            .map(|&s| (u as u128 * s as u128 % n as u128) as u64)
            .collect();
        image.sort_unstable();
        if image.as_slice() < elements {
            return false;
        }
    }
    true
}

/// All index combinations `k` out of `n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Controls how much a single classification computes.
#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// Compute exact automorphism orders even for trivially unstable graphs
    /// (disconnected / bipartite / with twins). Scans leave this off: such
    /// graphs are unstable for structural reasons and their often enormous
    /// groups dominate runtime.
    pub exact_trivial: bool,
    /// Per-graph automorphism search time cap.
    pub time_cap: Option<Duration>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            exact_trivial: true,
            time_cap: Some(Duration::from_secs(30)),
        }
    }
}

/// Full classification of a single graph.
pub fn classify(x: &CirculantGraph, opts: &ClassifyOptions) -> ClassificationRecord {
    let start = Instant::now();
    let flags = x.triviality();
    let wilson = wilson_types(x);
    let all_families = families::match_all(x);
    let family = all_families.first().cloned();

    let mut record = ClassificationRecord {
        n: x.n(),
        set: x.set().elements().to_vec(),
        connected: flags.connected,
        bipartite: flags.bipartite,
        twin_free: flags.twin_free,
        stable: None,
        aut_x_order: None,
        aut_bx_order: None,
        wilson,
        family,
        edge_orbits_bx: None,
        all_families,
        bx_normal: None,
        witness: None,
        timed_out: false,
        elapsed_ms: 0,
    };

    if !flags.all_pass() && !opts.exact_trivial && x.n() >= 2 {
        // Disconnected, bipartite, or twinned graphs on >= 2 vertices are
        // always unstable; the exact orders are skipped in scan mode.
        record.stable = Some(false);
        record.elapsed_ms = start.elapsed().as_millis() as u64;
        return record;
    }

    let deadline = opts.time_cap.map(|cap| start + cap);
    match compute_stability(x, deadline) {
        Ok(comp) => {
            record.stable = Some(comp.verdict.stable);
            record.aut_x_order = Some(comp.verdict.aut_x_order);
            record.aut_bx_order = Some(comp.verdict.aut_bx_order);
            record.witness = comp.verdict.witness;
            record.edge_orbits_bx = Some(edge_orbit_count(&comp.aut_bx, &comp.bx) as u64);
            record.bx_normal = Some(cover_is_normal_from_stabilizer(
                x.n(),
                &comp.bx_vertex_stabilizer,
            ));
        }
        Err(Error::Timeout) => {
            record.timed_out = true;
        }
        Err(other) => unreachable!("stability computation cannot fail otherwise: {other}"),
    }
    record.elapsed_ms = start.elapsed().as_millis() as u64;
    record
}

/// Options for multi-graph scans.
#[derive(Clone, Debug)]
pub struct ScanOptions {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub time_cap: Option<Duration>,
    /// Collapse the enumeration by multiplier equivalence.
    pub dedup_multiplier: bool,
    /// Exact orders for trivially unstable graphs (see [`ClassifyOptions`]).
    pub exact_trivial: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            jobs: None,
            time_cap: Some(Duration::from_secs(30)),
            dedup_multiplier: false,
            exact_trivial: false,
        }
    }
}

/// Classifies every enumerated graph over the given orders and valencies.
///
/// Records come back sorted by `(n, set)`, so parallel and serial runs emit
/// byte-identical reports.
pub fn scan(
    orders: impl IntoIterator<Item = u64>,
    valencies: &[u32],
    opts: &ScanOptions,
) -> Vec<ClassificationRecord> {
    let mut graphs: Vec<CirculantGraph> = Vec::new();
    for n in orders {
        for &v in valencies {
            graphs.extend(enumerate(n, v));
        }
    }
    if opts.dedup_multiplier {
        graphs.retain(is_multiplier_minimal);
    }
    graphs.sort_by(|a, b| (a.n(), a.set().elements()).cmp(&(b.n(), b.set().elements())));
    let classify_opts = ClassifyOptions {
        exact_trivial: opts.exact_trivial,
        time_cap: opts.time_cap,
    };
    let run = || -> Vec<ClassificationRecord> {
        graphs
            .par_iter()
            .map(|x| classify(x, &classify_opts))
            .collect()
    };
    match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .expect("thread pool")
            .install(run),
        None => run(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(12, 5).len(), 10); // C(5,2) pairs plus n/2
        assert_eq!(enumerate(9, 5).len(), 0); // odd valency needs even order
        assert_eq!(enumerate(8, 2).len(), 3); // {±1},{±2},{±3}
        assert_eq!(enumerate(8, 1).len(), 1); // {4}
        assert_eq!(enumerate(1, 0).len(), 1); // K_1
        assert_eq!(enumerate(7, 4).len(), 3); // C(3,2)
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let sets: Vec<Vec<u64>> = enumerate(8, 4)
            .iter()
            .map(|x| x.set().elements().to_vec())
            .collect();
        let mut sorted = sets.clone();
        sorted.sort();
        assert_eq!(sets, sorted);
        assert_eq!(sets[0], vec![1, 2, 6, 7]);
    }

    #[test]
    fn multiplier_dedup_is_a_quotient() {
        let all = enumerate(10, 4);
        let kept: Vec<_> = all.iter().filter(|x| is_multiplier_minimal(x)).collect();
        assert!(kept.len() < all.len());
        // {±1, ±3} ~ {±1, ±7} under multiplication by 3 in Z_10: wait, both
        // normalize to themselves; check representative property instead
        for x in &all {
            let canonical = kept.iter().any(|y| {
                units(10).any(|u| {
                    let mut img: Vec<u64> =
                        x.set().elements().iter().map(|&s| (u * s) % 10).collect();
                    img.sort_unstable();
                    img == y.set().elements()
                })
            });
            assert!(canonical, "{x} has no kept representative");
        }
    }

    #[test]
    fn classify_trivially_unstable_in_scan_mode() {
        let x = CirculantGraph::new(8, &[1, 3]).unwrap(); // bipartite
        let opts = ClassifyOptions {
            exact_trivial: false,
            time_cap: None,
        };
        let r = classify(&x, &opts);
        assert_eq!(r.stable, Some(false));
        assert!(r.aut_x_order.is_none());
        assert!(r.bipartite);
    }

    #[test]
    fn classify_k1_exactly_even_in_scan_mode() {
        let x = CirculantGraph::new(1, &[]).unwrap();
        let opts = ClassifyOptions {
            exact_trivial: false,
            time_cap: None,
        };
        let r = classify(&x, &opts);
        // the one-vertex graph is stable despite being "bipartite"
        assert_eq!(r.stable, Some(true));
        assert_eq!(r.aut_x_order.map(|o| o.to_string()), Some("1".into()));
        assert_eq!(r.aut_bx_order.map(|o| o.to_string()), Some("2".into()));
    }
}
