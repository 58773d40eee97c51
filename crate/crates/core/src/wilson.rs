//! Detection of the four Wilson instability conditions C.1, C.2′, C.3′, C.4
//! with explicit, re-validatable witnesses.
//!
//! All four conditions presuppose an even modulus; the detectors return
//! `None` otherwise. `S_e = S ∩ 2Z_n` and `S_o = S \ S_e` denote the even
//! and odd parts of the connection set.

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::circulant::CirculantGraph;
use crate::zmod::{divisors, units};

/// A witness for one Wilson condition.
///
/// Witnesses re-validate against their defining condition via
/// [`WilsonWitness::validate`]. Minimal-witness tie-breaking: `h` and `m`
/// ascending, `H` by order (each order has one subgroup of `Z_n`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WilsonWitness {
    /// Nonzero even `h` with `h + S_e = S_e`; `vacuous` marks `S_e = ∅`,
    /// where the condition holds literally for every candidate `h`.
    C1 { h: u64, vacuous: bool },
    /// Odd `h` with `2h + S_o = S_o` and `s + h ∈ S` for every `s ∈ S`
    /// congruent to `0` or `-h` mod 4 (requires `4 | n`).
    C2 { h: u64 },
    /// Subgroup `H = <subgroup_gen>` of order `subgroup_order` whose
    /// non-saturated elements `R = { s : s + H ⊄ S }` are nonempty with
    /// `d = gcd(R ∪ {n})`, `n/d` even, every `r/d` odd, and
    /// `H ⊄ dZ_n` or `H ⊆ 2dZ_n`.
    C3 {
        subgroup_gen: u64,
        subgroup_order: u64,
        r: Vec<u64>,
        d: u64,
    },
    /// Unit `m` with `n/2 + mS = S`.
    C4 { m: u64 },
}

impl WilsonWitness {
    pub fn kind(&self) -> &'static str {
        match self {
            WilsonWitness::C1 { .. } => "C1",
            WilsonWitness::C2 { .. } => "C2",
            WilsonWitness::C3 { .. } => "C3",
            WilsonWitness::C4 { .. } => "C4",
        }
    }

    /// Re-checks the witness against its defining condition on `x`.
    pub fn validate(&self, x: &CirculantGraph) -> bool {
        let n = x.n();
        match *self {
            WilsonWitness::C1 { h, vacuous } => {
                if n % 2 != 0 || h == 0 || h % 2 != 0 || h >= n {
                    return false;
                }
                let se = even_part(x);
                if vacuous {
                    return se.is_empty();
                }
                translation_invariant(n, &se, h)
            }
            WilsonWitness::C2 { h } => n % 4 == 0 && h % 2 == 1 && h < n && c2_holds(x, h),
            WilsonWitness::C3 {
                subgroup_gen,
                subgroup_order,
                ref r,
                ref d,
            } => {
                if n == 0 || subgroup_order == 0 || n % subgroup_order != 0 {
                    return false;
                }
                if subgroup_gen != n / subgroup_order {
                    return false;
                }
                match c3_evaluate(x, subgroup_order) {
                    Some((rr, dd)) => rr == *r && dd == *d,
                    None => false,
                }
            }
            WilsonWitness::C4 { m } => {
                n % 2 == 0 && m < n && num_integer::gcd(m, n) == 1 && c4_holds(x, m)
            }
        }
    }

    /// Human-readable one-liner, e.g. `C3(H={0,4}, R={3,5}, d=1)`.
    pub fn describe(&self, n: u64) -> String {
        match self {
            WilsonWitness::C1 { h, vacuous } => {
                if *vacuous {
                    format!("C1(h={h}, vacuous: S_e is empty)")
                } else {
                    format!("C1(h={h})")
                }
            }
            WilsonWitness::C2 { h } => format!("C2(h={h})"),
            WilsonWitness::C3 {
                subgroup_order,
                r,
                d,
                ..
            } => {
                let h: Vec<String> = subgroup_elements(n, *subgroup_order)
                    .iter()
                    .map(|e| e.to_string())
                    .collect();
                let r: Vec<String> = r.iter().map(|e| e.to_string()).collect();
                format!("C3(H={{{}}}, R={{{}}}, d={d})", h.join(","), r.join(","))
            }
            WilsonWitness::C4 { m } => format!("C4(m={m})"),
        }
    }

    /// JSON with the element list of `H` spelled out, as in
    /// `{"type":"C3","H":[0,2,4,6],"R":[4],"d":4}`.
    pub fn to_json(&self, n: u64) -> serde_json::Value {
        serde_json::to_value(WitnessJson { witness: self, n }).unwrap()
    }
}

struct WitnessJson<'a> {
    witness: &'a WilsonWitness,
    n: u64,
}

impl Serialize for WitnessJson<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.witness {
            WilsonWitness::C1 { h, vacuous } => {
                let mut map = serializer.serialize_map(Some(3))?;
                map.serialize_entry("type", "C1")?;
                map.serialize_entry("h", h)?;
                map.serialize_entry("vacuous", vacuous)?;
                map.end()
            }
            WilsonWitness::C2 { h } => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("type", "C2")?;
                map.serialize_entry("h", h)?;
                map.end()
            }
            WilsonWitness::C3 {
                subgroup_order,
                r,
                d,
                ..
            } => {
                let mut map = serializer.serialize_map(Some(4))?;
                map.serialize_entry("type", "C3")?;
                map.serialize_entry("H", &subgroup_elements(self.n, *subgroup_order))?;
                map.serialize_entry("R", r)?;
                map.serialize_entry("d", d)?;
                map.end()
            }
            WilsonWitness::C4 { m } => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("type", "C4")?;
                map.serialize_entry("m", m)?;
                map.end()
            }
        }
    }
}

fn even_part(x: &CirculantGraph) -> Vec<u64> {
    x.set()
        .elements()
        .iter()
        .copied()
        .filter(|s| s % 2 == 0)
        .collect()
}

fn odd_part(x: &CirculantGraph) -> Vec<u64> {
    x.set()
        .elements()
        .iter()
        .copied()
        .filter(|s| s % 2 == 1)
        .collect()
}

fn translation_invariant(n: u64, set: &[u64], h: u64) -> bool {
    set.iter()
        .all(|&s| set.binary_search(&((s + h) % n)).is_ok())
}

/// Elements of the subgroup of `Z_n` of the given order, ascending.
pub fn subgroup_elements(n: u64, order: u64) -> Vec<u64> {
    let gen = n / order;
    (0..order).map(|k| k * gen).collect()
}

/// C.1: smallest nonzero `h ∈ 2Z_n` with `h + S_e = S_e`. With `S_e = ∅`
/// the condition is literally vacuous and the witness is flagged.
pub fn detect_c1(x: &CirculantGraph) -> Option<WilsonWitness> {
    let n = x.n();
    if n % 2 != 0 {
        return None;
    }
    let se = even_part(x);
    if se.is_empty() {
        return if n >= 4 {
            Some(WilsonWitness::C1 {
                h: 2,
                vacuous: true,
            })
        } else {
            None
        };
    }
    (2..n)
        .step_by(2)
        .find(|&h| translation_invariant(n, &se, h))
        .map(|h| WilsonWitness::C1 { h, vacuous: false })
}

fn c2_holds(x: &CirculantGraph, h: u64) -> bool {
    let n = x.n();
    let so = odd_part(x);
    if !translation_invariant(n, &so, (2 * h) % n) {
        return false;
    }
    // for each s ≡ 0 or -h (mod 4), s + h must stay in S
    let neg_h_mod4 = (4 - h % 4) % 4;
    x.set()
        .elements()
        .iter()
        .filter(|&&s| s % 4 == 0 || s % 4 == neg_h_mod4)
        .all(|&s| x.set().contains((s + h) % n))
}

/// C.2′: smallest odd `h` satisfying both clauses; requires `4 | n`.
pub fn detect_c2(x: &CirculantGraph) -> Option<WilsonWitness> {
    let n = x.n();
    if n % 4 != 0 {
        return None;
    }
    (1..n)
        .step_by(2)
        .find(|&h| c2_holds(x, h))
        .map(|h| WilsonWitness::C2 { h })
}

/// Evaluates the C.3′ clauses for the subgroup of the given order; returns
/// `(R, d)` when they all hold.
fn c3_evaluate(x: &CirculantGraph, subgroup_order: u64) -> Option<(Vec<u64>, u64)> {
    let n = x.n();
    let h_elems = subgroup_elements(n, subgroup_order);
    let r: Vec<u64> = x
        .set()
        .elements()
        .iter()
        .copied()
        .filter(|&s| !h_elems.iter().all(|&h| x.set().contains((s + h) % n)))
        .collect();
    if r.is_empty() {
        return None;
    }
    let d = r.iter().fold(n, |acc, &v| num_integer::gcd(acc, v));
    if (n / d) % 2 != 0 {
        return None;
    }
    if !r.iter().all(|&v| (v / d) % 2 == 1) {
        return None;
    }
    // H ⊄ dZ_n or H ⊆ 2dZ_n, with H = <n/subgroup_order>
    let h_gen = n / subgroup_order;
    let in_d = h_gen % d == 0;
    let in_2d = h_gen % (2 * d) == 0;
    if !in_d || in_2d {
        Some((r, d))
    } else {
        None
    }
}

/// C.3′: first subgroup `H` (by ascending order) whose non-saturated set
/// passes all clauses.
pub fn detect_c3(x: &CirculantGraph) -> Option<WilsonWitness> {
    let n = x.n();
    for order in divisors(n).into_iter().filter(|&m| m >= 2) {
        if let Some((r, d)) = c3_evaluate(x, order) {
            return Some(WilsonWitness::C3 {
                subgroup_gen: n / order,
                subgroup_order: order,
                r,
                d,
            });
        }
    }
    None
}

fn c4_holds(x: &CirculantGraph, m: u64) -> bool {
    let n = x.n();
    let half = n / 2;
    x.set().elements().iter().all(|&s| {
        let image = (half + (m as u128 * s as u128 % n as u128) as u64) % n;
        x.set().contains(image)
    })
}

/// C.4: smallest unit `m` with `n/2 + mS = S`.
pub fn detect_c4(x: &CirculantGraph) -> Option<WilsonWitness> {
    let n = x.n();
    if n % 2 != 0 {
        return None;
    }
    units(n)
        .find(|&m| c4_holds(x, m))
        .map(|m| WilsonWitness::C4 { m })
}

/// All Wilson witnesses of `x` in condition order; empty means "no Wilson
/// type".
pub fn wilson_types(x: &CirculantGraph) -> Vec<WilsonWitness> {
    [detect_c1(x), detect_c2(x), detect_c3(x), detect_c4(x)]
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circ(n: u64, raw: &[i64]) -> CirculantGraph {
        CirculantGraph::new(n, raw).unwrap()
    }

    fn c1_h(x: &CirculantGraph) -> Option<u64> {
        match detect_c1(x) {
            Some(WilsonWitness::C1 { h, vacuous: false }) => Some(h),
            _ => None,
        }
    }

    #[test]
    fn c1_fixtures() {
        assert_eq!(c1_h(&circ(8, &[2, 3])), Some(4));
        assert_eq!(c1_h(&circ(8, &[1, 2, 3])), Some(4));
        assert_eq!(c1_h(&circ(12, &[5, 2, 6])), Some(4));
        assert_eq!(detect_c1(&circ(9, &[1])), None);
        // all-odd set: vacuous witness
        assert_eq!(
            detect_c1(&circ(8, &[1, 3])),
            Some(WilsonWitness::C1 {
                h: 2,
                vacuous: true
            })
        );
    }

    #[test]
    fn c2_fixtures() {
        assert_eq!(
            detect_c2(&circ(12, &[1, 4, 5])),
            Some(WilsonWitness::C2 { h: 3 })
        );
        assert_eq!(
            detect_c2(&circ(12, &[1, 4, 5, 6])),
            Some(WilsonWitness::C2 { h: 3 })
        );
        // n ≡ 2 (mod 4)
        assert_eq!(detect_c2(&circ(10, &[1, 2])), None);
        // the corrected clause (b) fails for every odd h on Cay(Z_8, {±1,±2,±3})
        assert_eq!(detect_c2(&circ(8, &[1, 2, 3])), None);
    }

    #[test]
    fn c3_fixtures() {
        assert_eq!(
            detect_c3(&circ(8, &[1, 3, 4])),
            Some(WilsonWitness::C3 {
                subgroup_gen: 2,
                subgroup_order: 4,
                r: vec![4],
                d: 4
            })
        );
        assert_eq!(
            detect_c3(&circ(8, &[2, 3])),
            Some(WilsonWitness::C3 {
                subgroup_gen: 4,
                subgroup_order: 2,
                r: vec![3, 5],
                d: 1
            })
        );
        assert_eq!(detect_c3(&circ(5, &[1])), None);
    }

    #[test]
    fn c3_existence_is_iteration_order_independent() {
        for (n, raw) in [
            (8u64, vec![1i64, 3, 4]),
            (8, vec![2, 3]),
            (12, vec![2, 3, 6]),
            (24, vec![2, 3, 8, 9, 10]),
        ] {
            let x = circ(n, &raw);
            let ascending = detect_c3(&x).is_some();
            let any_order = divisors(n)
                .into_iter()
                .rev()
                .filter(|&m| m >= 2)
                .any(|m| c3_evaluate(&x, m).is_some());
            assert_eq!(ascending, any_order, "{x}");
        }
    }

    #[test]
    fn c4_fixtures() {
        assert_eq!(
            detect_c4(&circ(8, &[1, 2, 3])),
            Some(WilsonWitness::C4 { m: 1 })
        );
        assert_eq!(
            detect_c4(&circ(8, &[2, 3])),
            Some(WilsonWitness::C4 { m: 3 })
        );
        assert_eq!(
            detect_c4(&circ(10, &[1, 2])),
            Some(WilsonWitness::C4 { m: 3 })
        );
        assert_eq!(detect_c4(&circ(9, &[1, 2])), None);
    }

    #[test]
    fn c4_witnesses_come_in_negation_pairs() {
        for (n, raw) in [
            (8u64, vec![2i64, 3]),
            (10, vec![1, 2]),
            (12, vec![2, 3, 6]),
            (16, vec![1, 4]),
        ] {
            let x = circ(n, &raw);
            for m in units(n) {
                assert_eq!(c4_holds(&x, m), c4_holds(&x, n - m), "{x} m={m}");
            }
        }
    }

    #[test]
    fn wilson_type_sets() {
        let kinds = |x: &CirculantGraph| -> Vec<&'static str> {
            wilson_types(x).iter().map(|w| w.kind()).collect()
        };
        assert_eq!(kinds(&circ(8, &[2, 3])), vec!["C1", "C3", "C4"]);
        // nontrivially unstable on Z_24 yet carrying no Wilson type
        assert_eq!(kinds(&circ(24, &[2, 3, 8, 9, 10])), Vec::<&str>::new());
        // the valency-8 example at n=48
        assert_eq!(kinds(&circ(48, &[3, 4, 6, 21])), Vec::<&str>::new());
    }

    #[test]
    fn witnesses_revalidate() {
        for (n, raw) in [
            (8u64, vec![2i64, 3]),
            (8, vec![1, 2, 3]),
            (8, vec![1, 3, 4]),
            (12, vec![2, 3, 6]),
            (12, vec![1, 4, 5]),
            (10, vec![1, 2]),
        ] {
            let x = circ(n, &raw);
            for w in wilson_types(&x) {
                assert!(w.validate(&x), "{x} {w:?}");
            }
        }
        // a wrong witness fails validation
        assert!(!WilsonWitness::C4 { m: 1 }.validate(&circ(8, &[2, 3])));
    }

    #[test]
    fn witness_json_shapes() {
        let x = circ(8, &[1, 3, 4]);
        let w = detect_c3(&x).unwrap();
        assert_eq!(
            w.to_json(8).to_string(),
            r#"{"type":"C3","H":[0,2,4,6],"R":[4],"d":4}"#
        );
        let w = detect_c1(&circ(8, &[2, 3])).unwrap();
        assert_eq!(
            w.to_json(8).to_string(),
            r#"{"type":"C1","h":4,"vacuous":false}"#
        );
    }
}
