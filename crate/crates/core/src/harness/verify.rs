//! Theorem-verification scans: each verifier classifies a range of graphs
//! and reports every record violating the theorem's statement.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde_json::{json, Map, Value};

use crate::actions::{is_normal_cayley, is_normal_cayley_cover, GroupStructure};
use crate::circulant::CirculantGraph;
use crate::error::{Error, Result};
use crate::harness::record::ClassificationRecord;
use crate::harness::scan::{classify, scan, ClassifyOptions, ScanOptions};
use crate::products::cycle_wr_k2;
use crate::stability::four_cycle_condition;

/// Verifiable statements, addressable from the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoremId {
    /// No nontrivially unstable circulant graphs of valency <= 3.
    Val3,
    /// The valency-4 instability biconditional.
    Val4,
    /// The valency-5 classification.
    Val5,
    /// The valency-6 classification (seven explicit families).
    Val6,
    /// The valency-7 classification (six families).
    Val7,
    /// Every nontrivially unstable graph of valency <= 7 has a Wilson type.
    LessThan8,
    /// No nontrivially unstable circulant graphs of odd order.
    OddOrder,
    /// Nontrivially unstable 5-valent graphs: exactly 2 edge orbits in BX.
    Val5Orbits,
    /// Nontrivially unstable 4-valent graphs have normal covers.
    Val4CoverIsNormal,
    /// Nontrivially unstable graphs of valency 5 or 7 have non-normal covers.
    OddValencyNotNormal,
    /// The fifteen small graphs known stable.
    SmallLemma,
    /// C_k wr K_2 is stable iff k != 4.
    CycWr,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::Val3,
        TheoremId::Val4,
        TheoremId::Val5,
        TheoremId::Val6,
        TheoremId::Val7,
        TheoremId::LessThan8,
        TheoremId::OddOrder,
        TheoremId::Val5Orbits,
        TheoremId::Val4CoverIsNormal,
        TheoremId::OddValencyNotNormal,
        TheoremId::SmallLemma,
        TheoremId::CycWr,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TheoremId::Val3 => "val3",
            TheoremId::Val4 => "val4",
            TheoremId::Val5 => "val5",
            TheoremId::Val6 => "val6",
            TheoremId::Val7 => "val7",
            TheoremId::LessThan8 => "lessthan8",
            TheoremId::OddOrder => "odd_order",
            TheoremId::Val5Orbits => "val5orbits",
            TheoremId::Val4CoverIsNormal => "val4_cover_normal",
            TheoremId::OddValencyNotNormal => "odd_valency_nonnormal",
            TheoremId::SmallLemma => "small",
            TheoremId::CycWr => "cycwr",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .find(|id| id.name() == s)
            .copied()
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

/// A record violating the theorem under verification, with the reason.
#[derive(Clone, Debug)]
pub struct Discrepancy {
    pub record: ClassificationRecord,
    pub reason: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportStatus {
    Confirmed,
    DiscrepancyFound,
    /// Timeouts occurred; the theorem was not fully checked on the range.
    Inconclusive,
}

/// Outcome of one verification scan. Empty discrepancies and no timeouts
/// means the theorem is confirmed on the range.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub theorem: String,
    pub n_max: u64,
    pub graphs_examined: u64,
    pub discrepancies: Vec<Discrepancy>,
    pub timeouts: u64,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn status(&self) -> ReportStatus {
        if !self.discrepancies.is_empty() {
            ReportStatus::DiscrepancyFound
        } else if self.timeouts > 0 {
            ReportStatus::Inconclusive
        } else {
            ReportStatus::Confirmed
        }
    }

    /// CLI exit code: 0 confirmed, 1 discrepancy, 3 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self.status() {
            ReportStatus::Confirmed => 0,
            ReportStatus::DiscrepancyFound => 1,
            ReportStatus::Inconclusive => 3,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("theorem".into(), json!(self.theorem));
        map.insert("n_max".into(), json!(self.n_max));
        map.insert("graphs_examined".into(), json!(self.graphs_examined));
        map.insert(
            "status".into(),
            json!(match self.status() {
                ReportStatus::Confirmed => "confirmed",
                ReportStatus::DiscrepancyFound => "discrepancy",
                ReportStatus::Inconclusive => "inconclusive",
            }),
        );
        map.insert(
            "discrepancies".into(),
            Value::Array(
                self.discrepancies
                    .iter()
                    .map(|d| {
                        let mut m = Map::new();
                        m.insert("reason".into(), json!(d.reason));
                        m.insert("record".into(), d.record.to_json());
                        Value::Object(m)
                    })
                    .collect(),
            ),
        );
        map.insert("timeouts".into(), json!(self.timeouts));
        map.insert("elapsed_ms".into(), json!(self.elapsed_ms));
        Value::Object(map)
    }
}

fn even_orders(n_max: u64) -> Vec<u64> {
    (1..=n_max).filter(|n| n % 2 == 0).collect()
}

fn odd_orders(n_max: u64) -> Vec<u64> {
    (1..=n_max).filter(|n| n % 2 == 1).collect()
}

fn all_orders(n_max: u64) -> Vec<u64> {
    (1..=n_max).collect()
}

/// Runs the scan a theorem needs and checks every record against it.
pub fn verify_theorem(id: TheoremId, n_max: u64, opts: &ScanOptions) -> VerificationReport {
    let start = Instant::now();
    let (records, discrepancies) = match id {
        TheoremId::Val3 => {
            let records = scan(all_orders(n_max), &[0, 1, 2, 3], opts);
            let d = check_no_nontrivially_unstable(&records, "valency <= 3");
            (records, d)
        }
        TheoremId::Val4 => {
            let records = scan(even_orders(n_max), &[4], opts);
            let d = check_val4(&records);
            (records, d)
        }
        TheoremId::Val5 => {
            let records = scan(even_orders(n_max), &[5], opts);
            let d = check_classification(&records, "val5");
            (records, d)
        }
        TheoremId::Val6 => {
            let records = scan(even_orders(n_max), &[6], opts);
            let d = check_classification(&records, "val6");
            (records, d)
        }
        TheoremId::Val7 => {
            let records = scan(even_orders(n_max), &[7], opts);
            let d = check_classification(&records, "val7");
            (records, d)
        }
        TheoremId::LessThan8 => {
            let mut records = scan(all_orders(n_max), &[0, 1, 2, 3], opts);
            records.extend(scan(even_orders(n_max), &[4, 5, 6, 7], opts));
            records.sort_by(|a, b| (a.n, &a.set).cmp(&(b.n, &b.set)));
            let d = check_wilson_coverage(&records);
            (records, d)
        }
        TheoremId::OddOrder => {
            let records = scan(odd_orders(n_max), &[0, 1, 2, 3, 4, 5, 6], opts);
            let d = check_no_nontrivially_unstable(&records, "odd order");
            (records, d)
        }
        TheoremId::Val5Orbits => {
            let records = scan(even_orders(n_max), &[5], opts);
            let d = check_val5_orbits(&records);
            (records, d)
        }
        TheoremId::Val4CoverIsNormal => {
            let records = scan(even_orders(n_max), &[4], opts);
            let d = check_val4_cover_normal(&records);
            (records, d)
        }
        TheoremId::OddValencyNotNormal => {
            let records = scan(even_orders(n_max), &[5, 7], opts);
            let d = check_odd_valency_nonnormal(&records);
            (records, d)
        }
        TheoremId::SmallLemma => return verify_small_lemma(opts),
        TheoremId::CycWr => return verify_cycwr(n_max.max(4), opts),
    };
    VerificationReport {
        theorem: id.name().into(),
        n_max,
        graphs_examined: records.len() as u64,
        discrepancies,
        timeouts: records.iter().filter(|r| r.timed_out).count() as u64,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn discrepancy(record: &ClassificationRecord, reason: impl Into<String>) -> Discrepancy {
    Discrepancy {
        record: record.clone(),
        reason: reason.into(),
    }
}

/// Theorems of the form "no nontrivially unstable graphs in this range".
pub fn check_no_nontrivially_unstable(
    records: &[ClassificationRecord],
    what: &str,
) -> Vec<Discrepancy> {
    records
        .iter()
        .filter(|r| r.nontrivially_unstable() == Some(true))
        .map(|r| discrepancy(r, format!("nontrivially unstable graph of {what}")))
        .collect()
}

/// The valency-4 biconditional: unstable iff trivially unstable or one of
/// the two family conditions; nontrivially unstable instances carry C.4.
pub fn check_val4(records: &[ClassificationRecord]) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    for r in records {
        if r.timed_out {
            continue;
        }
        let trivially = !r.all_flags_pass();
        let unstable = if trivially { true } else { !r.stable.unwrap() };
        let family = !r.all_families.is_empty();
        if unstable != (trivially || family) {
            out.push(discrepancy(
                r,
                format!("val4 biconditional fails: unstable={unstable}, trivially={trivially}, family={family}"),
            ));
        }
        if r.nontrivially_unstable() == Some(true) && !r.wilson.iter().any(|w| w.kind() == "C4") {
            out.push(discrepancy(
                r,
                "nontrivially unstable valency-4 graph without a C.4 witness",
            ));
        }
        out.extend(check_family_side_conditions(r));
    }
    out
}

/// The valency-5/6/7 classifications: the nontrivially unstable graphs are
/// exactly the nontrivial family instances, and each nontrivial instance
/// carries the Wilson type stated for its family.
pub fn check_classification(records: &[ClassificationRecord], what: &str) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    for r in records {
        let Some(nu) = r.nontrivially_unstable() else {
            continue; // timed out
        };
        let member = r.all_families.iter().any(|f| f.nontrivial);
        if nu != member {
            out.push(discrepancy(
                r,
                format!("{what} classification fails: nontrivially_unstable={nu}, nontrivial_family_member={member}"),
            ));
        }
        out.extend(check_family_side_conditions(r));
    }
    out
}

/// Per-match consistency: a nontrivial instance must carry its family's
/// stated Wilson type, and the family-specific nontriviality condition must
/// agree with the graph-level flags.
fn check_family_side_conditions(r: &ClassificationRecord) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    for m in &r.all_families {
        if m.nontrivial != r.all_flags_pass() {
            out.push(discrepancy(
                r,
                format!(
                    "family {} nontriviality condition ({}) disagrees with graph flags",
                    m.id, m.nontrivial
                ),
            ));
        }
        if m.nontrivial {
            let kind = m.id.stated_wilson_kind();
            if !r.wilson.iter().any(|w| w.kind() == kind) {
                out.push(discrepancy(
                    r,
                    format!(
                        "family {} instance lacks its stated Wilson type {kind}",
                        m.id
                    ),
                ));
            }
        }
    }
    out
}

/// Wilson coverage and soundness over a mixed-valency scan: every
/// nontrivially unstable graph has a witness, and no stable graph with all
/// flags passing has one.
pub fn check_wilson_coverage(records: &[ClassificationRecord]) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    for r in records {
        match r.nontrivially_unstable() {
            Some(true) if r.wilson.is_empty() => {
                out.push(discrepancy(
                    r,
                    "nontrivially unstable graph without any Wilson witness",
                ));
            }
            Some(false) if r.all_flags_pass() && !r.wilson.is_empty() => {
                out.push(discrepancy(
                    r,
                    "stable graph with all flags passing carries a Wilson witness",
                ));
            }
            _ => {}
        }
    }
    out
}

/// Exactly two edge orbits in `Aut BX` for nontrivially unstable 5-valent
/// graphs.
pub fn check_val5_orbits(records: &[ClassificationRecord]) -> Vec<Discrepancy> {
    records
        .iter()
        .filter(|r| r.nontrivially_unstable() == Some(true))
        .filter(|r| r.edge_orbits_bx != Some(2))
        .map(|r| {
            discrepancy(
                r,
                format!(
                    "expected 2 edge orbits in Aut BX, found {:?}",
                    r.edge_orbits_bx
                ),
            )
        })
        .collect()
}

/// Normal covers for nontrivially unstable 4-valent graphs.
pub fn check_val4_cover_normal(records: &[ClassificationRecord]) -> Vec<Discrepancy> {
    records
        .iter()
        .filter(|r| r.nontrivially_unstable() == Some(true))
        .filter(|r| r.bx_normal != Some(true))
        .map(|r| {
            discrepancy(
                r,
                "nontrivially unstable valency-4 graph with non-normal cover",
            )
        })
        .collect()
}

/// Non-normal covers for nontrivially unstable graphs of valency 5 or 7.
pub fn check_odd_valency_nonnormal(records: &[ClassificationRecord]) -> Vec<Discrepancy> {
    records
        .iter()
        .filter(|r| r.nontrivially_unstable() == Some(true))
        .filter(|r| r.bx_normal != Some(false))
        .map(|r| {
            discrepancy(
                r,
                "nontrivially unstable odd-valency graph with normal cover",
            )
        })
        .collect()
}

/// The fifteen stable graphs used as anchors throughout the classification.
pub const SMALL_LEMMA_GRAPHS: [(u64, &[i64]); 15] = [
    (6, &[2, 3]),
    (12, &[2, 3]),
    (12, &[3, 4]),
    (10, &[2, 4, 5]),
    (12, &[1, 5, 6]),
    (12, &[3, 4, 6]),
    (20, &[4, 5, 8]),
    (20, &[2, 5, 6]),
    (12, &[2, 3, 4, 6]),
    (14, &[2, 4, 6, 7]),
    (20, &[4, 5, 8, 10]),
    (24, &[3, 8, 9, 12]),
    (30, &[5, 6, 12, 15]),
    (30, &[3, 9, 10, 15]),
    (30, &[6, 10, 12, 15]),
];

/// Verifies that all fifteen anchor graphs are stable.
pub fn verify_small_lemma(opts: &ScanOptions) -> VerificationReport {
    let start = Instant::now();
    let classify_opts = ClassifyOptions {
        exact_trivial: true,
        time_cap: opts.time_cap,
    };
    let mut discrepancies = Vec::new();
    let mut timeouts = 0;
    for (n, raw) in SMALL_LEMMA_GRAPHS {
        let x = CirculantGraph::new(n, raw).expect("anchor graphs are valid");
        let r = classify(&x, &classify_opts);
        if r.timed_out {
            timeouts += 1;
        } else if r.stable != Some(true) {
            discrepancies.push(discrepancy(&r, "anchor graph classified unstable"));
        }
    }
    VerificationReport {
        theorem: "small".into(),
        n_max: 30,
        graphs_examined: SMALL_LEMMA_GRAPHS.len() as u64,
        discrepancies,
        timeouts,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Verifies `C_k wr K_2` stable iff `k != 4`, for `3 <= k <= k_max`.
pub fn verify_cycwr(k_max: u64, opts: &ScanOptions) -> VerificationReport {
    let start = Instant::now();
    let classify_opts = ClassifyOptions {
        exact_trivial: true,
        time_cap: opts.time_cap,
    };
    let mut discrepancies = Vec::new();
    let mut timeouts = 0;
    let mut examined = 0;
    for k in 3..=k_max {
        let x = cycle_wr_k2(k).expect("k >= 3");
        let r = classify(&x, &classify_opts);
        examined += 1;
        if r.timed_out {
            timeouts += 1;
            continue;
        }
        let expected_stable = k != 4;
        if r.stable != Some(expected_stable) {
            discrepancies.push(discrepancy(
                &r,
                format!("C_{k} wr K_2 expected stable={expected_stable}"),
            ));
        }
    }
    VerificationReport {
        theorem: "cycwr".into(),
        n_max: k_max,
        graphs_examined: examined,
        discrepancies,
        timeouts,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Soundness of the four-cycle normality criterion over all connected
/// circulants (and their connected covers) up to `n_max`: whenever the
/// condition holds, the graph must test normal.
pub fn verify_four_cycle_soundness(n_max: u64, _opts: &ScanOptions) -> VerificationReport {
    let start = Instant::now();
    let mut discrepancies = Vec::new();
    let mut examined = 0u64;
    for n in 1..=n_max {
        let max_valency = (n - 1) / 2 * 2 + u64::from(n % 2 == 0 && n > 1);
        for v in 0..=max_valency as u32 {
            for x in crate::harness::scan::enumerate(n, v) {
                if !x.is_connected() {
                    continue;
                }
                examined += 1;
                if !four_cycle_condition(GroupStructure::Cyclic(n), x.set().elements()) {
                    continue;
                }
                if !is_normal_cayley(&x) {
                    discrepancies.push(Discrepancy {
                        record: classify(&x, &ClassifyOptions::default()),
                        reason: "four-cycle condition holds but X is not normal".into(),
                    });
                }
                // the cover evaluates the same arithmetic; it is a connected
                // Cayley graph exactly when X is also nonbipartite
                if !x.is_bipartite() && !is_normal_cayley_cover(&x) {
                    discrepancies.push(Discrepancy {
                        record: classify(&x, &ClassifyOptions::default()),
                        reason: "four-cycle condition holds but BX is not normal".into(),
                    });
                }
            }
        }
    }
    VerificationReport {
        theorem: "four_cycle_soundness".into(),
        n_max,
        graphs_examined: examined,
        discrepancies,
        timeouts: 0,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.name().parse::<TheoremId>().unwrap(), id);
        }
        assert!(matches!(
            "nope".parse::<TheoremId>(),
            Err(Error::UnknownTheorem(_))
        ));
    }

    #[test]
    fn val3_covers_tiny_orders() {
        let report = verify_theorem(TheoremId::Val3, 12, &ScanOptions::default());
        assert_eq!(report.status(), ReportStatus::Confirmed);
        assert!(report.graphs_examined > 0);
    }

    #[test]
    fn lessthan8_small_range() {
        let report = verify_theorem(TheoremId::LessThan8, 16, &ScanOptions::default());
        assert_eq!(report.status(), ReportStatus::Confirmed);
    }

    #[test]
    fn classification_record_fixture() {
        // Cay(Z_12, {±2, ±3, 6}): nontrivially unstable, C1 witness h = 4,
        // primary family V5.1 with k = 1, s = 3, two edge orbits in BX
        let x = CirculantGraph::new(12, &[2, 3, 6]).unwrap();
        let r = classify(&x, &ClassifyOptions::default());
        assert_eq!(r.nontrivially_unstable(), Some(true));
        assert!(r.wilson.iter().any(|w| matches!(
            w,
            crate::wilson::WilsonWitness::C1 {
                h: 4,
                vacuous: false
            }
        )));
        let fam = r.family.unwrap();
        assert_eq!(fam.id.name(), "V5.1");
        assert_eq!((fam.param("k"), fam.param("s")), (Some(1), Some(3)));
        assert_eq!(r.edge_orbits_bx, Some(2));
        assert_eq!(r.bx_normal, Some(false));
    }

    #[test]
    fn small_lemma_holds() {
        let report = verify_small_lemma(&ScanOptions::default());
        assert_eq!(report.status(), ReportStatus::Confirmed);
        assert_eq!(report.graphs_examined, 15);
    }

    #[test]
    fn cycwr_small_range() {
        let report = verify_cycwr(6, &ScanOptions::default());
        assert_eq!(report.status(), ReportStatus::Confirmed);
    }
}
