//! Circulant graphs `Cay(Z_n, S)`: connection-set normalization and the
//! triviality predicates (connected / bipartite / twin-free).

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::dense::DenseGraph;
use crate::error::{Error, Result};
use crate::zmod::reduce;

/// An inverse-closed connection set, stored sorted and reduced so that set
/// equality is list equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConnectionSet {
    n: u64,
    elements: Vec<u64>,
}

impl ConnectionSet {
    /// Reduces entries mod `n`, rejects loops, adds inverses, sorts, dedups.
    pub fn normalize(n: u64, raw: &[i64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModulus(0));
        }
        let mut elements = Vec::with_capacity(raw.len() * 2);
        for &entry in raw {
            let v = reduce(n, entry);
            if v == 0 {
                return Err(Error::LoopElement(entry, n));
            }
            elements.push(v);
            elements.push(n - v);
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(ConnectionSet { n, elements })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, s: u64) -> bool {
        self.elements.binary_search(&(s % self.n)).is_ok()
    }

    /// True iff `h + S = S` in `Z_n`.
    pub fn invariant_under_translation(&self, h: u64) -> bool {
        self.elements
            .iter()
            .all(|&s| self.contains((s + h) % self.n))
    }
}

/// How a graph fails (or passes) the nontriviality requirements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrivialityClass {
    /// Connected, nonbipartite and twin-free.
    AllPass,
    Disconnected,
    Bipartite,
    HasTwins,
}

impl fmt::Display for TrivialityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TrivialityClass::AllPass => "Connected∧Nonbipartite∧TwinFree",
            TrivialityClass::Disconnected => "Disconnected",
            TrivialityClass::Bipartite => "Bipartite",
            TrivialityClass::HasTwins => "HasTwins",
        };
        f.write_str(s)
    }
}

/// All three flags plus the first failing one as a summary label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Triviality {
    pub connected: bool,
    pub bipartite: bool,
    pub twin_free: bool,
}

impl Triviality {
    pub fn all_pass(&self) -> bool {
        self.connected && !self.bipartite && self.twin_free
    }

    pub fn label(&self) -> TrivialityClass {
        if !self.connected {
            TrivialityClass::Disconnected
        } else if self.bipartite {
            TrivialityClass::Bipartite
        } else if !self.twin_free {
            TrivialityClass::HasTwins
        } else {
            TrivialityClass::AllPass
        }
    }
}

/// Result of factoring out twin classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwinQuotient {
    TwinFree,
    /// `x ≅ quotient wr empty-graph-on-m-vertices`.
    Quotient {
        quotient: CirculantGraph,
        multiplicity: u64,
    },
}

/// `Cay(Z_n, S)`: vertex set `Z_n`, `u ~ v` iff `v - u mod n` is in `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CirculantGraph {
    n: u64,
    set: ConnectionSet,
}

impl CirculantGraph {
    pub fn new(n: u64, raw: &[i64]) -> Result<Self> {
        Ok(CirculantGraph {
            n,
            set: ConnectionSet::normalize(n, raw)?,
        })
    }

    pub fn from_set(set: ConnectionSet) -> Self {
        CirculantGraph {
            n: set.modulus(),
            set,
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn set(&self) -> &ConnectionSet {
        &self.set
    }

    pub fn valency(&self) -> u32 {
        self.set.len() as u32
    }

    /// Connected iff `gcd(S ∪ {n}) = 1`.
    pub fn is_connected(&self) -> bool {
        let g = self.set.elements.iter().fold(self.n, |acc, &s| acc.gcd(&s));
        g == 1
    }

    /// Proper 2-colorability, by coloring each component.
    pub fn is_bipartite(&self) -> bool {
        let n = self.n as usize;
        let mut color = vec![u8::MAX; n];
        let mut stack = Vec::new();
        for start in 0..n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            stack.push(start as u64);
            while let Some(v) = stack.pop() {
                let c = color[v as usize];
                for &s in self.set.elements() {
                    let w = ((v + s) % self.n) as usize;
                    if color[w] == u8::MAX {
                        color[w] = 1 - c;
                        stack.push(w as u64);
                    } else if color[w] == c {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Nonzero translations fixing the connection set; `v` and `v + h` are
    /// twins exactly when `h + S = S`.
    pub fn twin_translations(&self) -> Vec<u64> {
        (1..self.n)
            .filter(|&h| self.set.invariant_under_translation(h))
            .collect()
    }

    pub fn is_twin_free(&self) -> bool {
        self.twin_translations().is_empty()
    }

    pub fn triviality(&self) -> Triviality {
        Triviality {
            connected: self.is_connected(),
            bipartite: self.is_bipartite(),
            twin_free: self.is_twin_free(),
        }
    }

    /// Factors a connected graph as `quotient wr K̄_m` where `m` is the twin
    /// class size. `m >= 2` exactly when the graph has twins.
    pub fn twin_quotient(&self) -> Result<TwinQuotient> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let translations = self.twin_translations();
        let m = translations.len() as u64 + 1;
        if m == 1 {
            return Ok(TwinQuotient::TwinFree);
        }
        // The fixing translations together with 0 form the subgroup of
        // multiples of n/m.
        let q = self.n / m;
        debug_assert!(translations.iter().all(|h| h % q == 0));
        let raw: Vec<i64> = self.set.elements.iter().map(|&s| (s % q) as i64).collect();
        let quotient = CirculantGraph::new(q, &raw)?;
        Ok(TwinQuotient::Quotient {
            quotient,
            multiplicity: m,
        })
    }

    /// Adjacency-matrix form on vertices `0..n`.
    pub fn to_dense(&self) -> DenseGraph {
        let n = self.n as usize;
        let mut g = DenseGraph::new(n);
        for v in 0..self.n {
            for &s in self.set.elements() {
                let w = (v + s) % self.n;
                if v != w {
                    g.add_edge(v as u32, w as u32);
                }
            }
        }
        g
    }
}

impl fmt::Display for CirculantGraph {
    /// Normalized closed form, e.g. `Z12:{2,3,6,9,10}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z{}:{{", self.n)?;
        for (i, s) in self.set.elements().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for CirculantGraph {
    type Err = Error;

    /// Parses the textual form `Zn:{a,b,c}`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let rest = s
            .strip_prefix('Z')
            .or_else(|| s.strip_prefix('z'))
            .ok_or_else(|| Error::Parse(format!("expected `Zn:{{...}}`, got `{s}`")))?;
        let (n_str, set_str) = rest
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing `:` in `{s}`")))?;
        let n: u64 = n_str
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus `{n_str}`")))?;
        let inner = set_str
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("set must be braced in `{s}`")))?;
        let raw = parse_element_list(inner)?;
        CirculantGraph::new(n, &raw)
    }
}

/// Parses a comma-separated list of (possibly negative) integers.
pub fn parse_element_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer `{tok}`")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: u64, raw: &[i64]) -> CirculantGraph {
        CirculantGraph::new(n, raw).unwrap()
    }

    #[test]
    fn normalize_closes_under_inverse() {
        let s = ConnectionSet::normalize(12, &[2, 3, 6]).unwrap();
        assert_eq!(s.elements(), &[2, 3, 6, 9, 10]);
        let s = ConnectionSet::normalize(8, &[1, 3, 4]).unwrap();
        assert_eq!(s.elements(), &[1, 3, 4, 5, 7]);
        assert!(matches!(
            ConnectionSet::normalize(6, &[0, 2]),
            Err(Error::LoopElement(0, 6))
        ));
        assert!(ConnectionSet::normalize(0, &[1]).is_err());
        // negative entries reduce mod n
        let s = ConnectionSet::normalize(10, &[-1]).unwrap();
        assert_eq!(s.elements(), &[1, 9]);
    }

    #[test]
    fn connectivity_is_a_gcd() {
        assert!(graph(12, &[2, 3, 6]).is_connected());
        assert!(!graph(12, &[2, 4, 6, 8, 10]).is_connected());
        // Z24 with {±4, ±6, 12}: gcd = 2
        assert!(!graph(24, &[4, 6, 12]).is_connected());
        assert!(graph(1, &[]).is_connected());
    }

    #[test]
    fn bipartiteness() {
        assert!(graph(8, &[1, 3]).is_bipartite()); // K_{4,4}
        assert!(!graph(12, &[1, 5, 6]).is_bipartite());
        assert!(!graph(5, &[1]).is_bipartite()); // odd cycle
        assert!(graph(4, &[]).is_bipartite()); // edgeless
    }

    #[test]
    fn bipartite_matches_dense_two_coloring() {
        for n in 1..=16u64 {
            let pairs = (n - 1) / 2;
            for mask in 0u32..1 << (pairs + u64::from(n % 2 == 0 && n > 1)) {
                let mut raw = Vec::new();
                for (b, s) in (1..=pairs).enumerate() {
                    if mask >> b & 1 == 1 {
                        raw.push(s as i64);
                    }
                }
                if n % 2 == 0 && n > 1 && mask >> pairs & 1 == 1 {
                    raw.push((n / 2) as i64);
                }
                let x = graph(n, &raw);
                assert_eq!(x.is_bipartite(), x.to_dense().is_bipartite(), "{x}");
                assert_eq!(x.is_connected(), x.to_dense().is_connected(), "{x}");
            }
        }
    }

    #[test]
    fn twin_detection_translation_form() {
        assert!(!graph(8, &[1, 2, 3]).is_twin_free()); // 4 + S = S
        assert!(graph(8, &[1, 3, 4]).is_twin_free());
        assert!(!graph(4, &[1]).is_twin_free()); // C_4 antipodal twins
    }

    #[test]
    fn twin_detection_matches_neighborhood_comparison() {
        for n in 2..=14u64 {
            let pairs = (n - 1) / 2;
            for mask in 0u32..1 << (pairs + u64::from(n % 2 == 0)) {
                let mut raw = Vec::new();
                for (b, s) in (1..=pairs).enumerate() {
                    if mask >> b & 1 == 1 {
                        raw.push(s as i64);
                    }
                }
                if n % 2 == 0 && mask >> pairs & 1 == 1 {
                    raw.push((n / 2) as i64);
                }
                let x = graph(n, &raw);
                let d = x.to_dense();
                let brute = (0..d.n() as u32).any(|u| {
                    (u + 1..d.n() as u32)
                        .any(|v| (0..d.n() as u32).all(|w| d.has_edge(u, w) == d.has_edge(v, w)))
                });
                assert_eq!(x.is_twin_free(), !brute, "{x}");
            }
        }
    }

    #[test]
    fn connected_even_order_bipartite_iff_all_odd() {
        for n in (2..=20u64).step_by(2) {
            let pairs = (n - 1) / 2;
            for mask in 0u32..1 << (pairs + 1) {
                let mut raw = Vec::new();
                for (b, s) in (1..=pairs).enumerate() {
                    if mask >> b & 1 == 1 {
                        raw.push(s as i64);
                    }
                }
                if mask >> pairs & 1 == 1 {
                    raw.push((n / 2) as i64);
                }
                let x = graph(n, &raw);
                if !x.is_connected() {
                    continue;
                }
                let all_odd = x.set().elements().iter().all(|s| s % 2 == 1);
                assert_eq!(x.is_bipartite(), all_odd, "{x}");
            }
        }
    }

    #[test]
    fn triviality_labels() {
        let x = graph(24, &[2, 3, 8, 9, 10]);
        assert_eq!(x.triviality().label(), TrivialityClass::AllPass);
        assert_eq!(
            graph(8, &[1, 3]).triviality().label(),
            TrivialityClass::Bipartite
        );
        assert_eq!(
            graph(12, &[2, 4]).triviality().label(),
            TrivialityClass::Disconnected
        );
        assert_eq!(
            graph(8, &[1, 2, 3]).triviality().label(),
            TrivialityClass::HasTwins
        );
    }

    #[test]
    fn twin_quotients() {
        // Cay(Z8, {±1,±2,±3}) = K_4 wr K̄_2
        match graph(8, &[1, 2, 3]).twin_quotient().unwrap() {
            TwinQuotient::Quotient {
                quotient,
                multiplicity,
            } => {
                assert_eq!(multiplicity, 2);
                assert_eq!(quotient, graph(4, &[1, 2]));
            }
            other => panic!("expected quotient, got {other:?}"),
        }
        // K_{4,4} = K_2 wr K̄_4
        match graph(8, &[1, 3]).twin_quotient().unwrap() {
            TwinQuotient::Quotient {
                quotient,
                multiplicity,
            } => {
                assert_eq!(multiplicity, 4);
                assert_eq!(quotient, graph(2, &[1]));
            }
            other => panic!("expected quotient, got {other:?}"),
        }
        assert_eq!(
            graph(8, &[1, 3, 4]).twin_quotient().unwrap(),
            TwinQuotient::TwinFree
        );
        assert!(graph(12, &[2, 4]).twin_quotient().is_err());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let x: CirculantGraph = "Z12:{2,3,6}".parse().unwrap();
        assert_eq!(x.to_string(), "Z12:{2,3,6,9,10}");
        let x: CirculantGraph = " z10 : { -1 , 2 } ".parse().unwrap();
        assert_eq!(x.to_string(), "Z10:{1,2,8,9}");
        assert!("Z12{2}".parse::<CirculantGraph>().is_err());
        assert!("12:{2}".parse::<CirculantGraph>().is_err());
        assert!("Z6:{0}".parse::<CirculantGraph>().is_err());
    }
}
