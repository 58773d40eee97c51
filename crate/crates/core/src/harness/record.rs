//! The per-graph classification record and its serialized forms.

use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use crate::families::FamilyMatch;
use crate::perm::Perm;
use crate::wilson::WilsonWitness;

/// Full verdict for one graph.
///
/// JSON keys, in order: `n, set, connected, bipartite, twin_free, stable,
/// aut_x_order, aut_bx_order, wilson, family, edge_orbits_bx, schema`.
/// Orders are decimal strings (they outgrow 64 bits); fields not computed
/// (scan mode skipped a trivially unstable graph, or the search timed out)
/// serialize as `null`. The record schema is versioned for fixture
/// stability.
#[derive(Clone, Debug)]
pub struct ClassificationRecord {
    pub n: u64,
    pub set: Vec<u64>,
    pub connected: bool,
    pub bipartite: bool,
    pub twin_free: bool,
    pub stable: Option<bool>,
    pub aut_x_order: Option<BigUint>,
    pub aut_bx_order: Option<BigUint>,
    pub wilson: Vec<WilsonWitness>,
    /// Primary family match (first in classification order).
    pub family: Option<FamilyMatch>,
    pub edge_orbits_bx: Option<u64>,
    // Not serialized: auxiliary data for verification and certificates.
    pub all_families: Vec<FamilyMatch>,
    pub bx_normal: Option<bool>,
    pub witness: Option<Perm>,
    pub timed_out: bool,
    pub elapsed_ms: u64,
}

pub const RECORD_SCHEMA: u64 = 1;

impl ClassificationRecord {
    pub fn all_flags_pass(&self) -> bool {
        self.connected && !self.bipartite && self.twin_free
    }

    /// Connected, nonbipartite, twin-free and unstable. `None` when
    /// stability is unknown (timeout).
    pub fn nontrivially_unstable(&self) -> Option<bool> {
        if !self.all_flags_pass() {
            return Some(false);
        }
        self.stable.map(|s| !s)
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("n".into(), json!(self.n));
        map.insert("set".into(), json!(self.set));
        map.insert("connected".into(), json!(self.connected));
        map.insert("bipartite".into(), json!(self.bipartite));
        map.insert("twin_free".into(), json!(self.twin_free));
        map.insert("stable".into(), json!(self.stable));
        map.insert(
            "aut_x_order".into(),
            self.aut_x_order
                .as_ref()
                .map_or(Value::Null, |o| Value::String(o.to_string())),
        );
        map.insert(
            "aut_bx_order".into(),
            self.aut_bx_order
                .as_ref()
                .map_or(Value::Null, |o| Value::String(o.to_string())),
        );
        map.insert(
            "wilson".into(),
            Value::Array(self.wilson.iter().map(|w| w.to_json(self.n)).collect()),
        );
        map.insert(
            "family".into(),
            self.family
                .as_ref()
                .map_or(Value::Null, |f| serde_json::to_value(f).unwrap()),
        );
        map.insert("edge_orbits_bx".into(), json!(self.edge_orbits_bx));
        map.insert("schema".into(), json!(RECORD_SCHEMA));
        Value::Object(map)
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    pub const CSV_HEADER: &'static str = "n,set,connected,bipartite,twin_free,stable,aut_x_order,aut_bx_order,wilson,family,edge_orbits_bx,schema";

    /// CSV row in the same column order as the JSON keys; sets are
    /// semicolon-joined ascending integers.
    pub fn to_csv_row(&self) -> String {
        let set = self
            .set
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(";");
        let opt_bool = |b: Option<bool>| b.map_or(String::new(), |v| v.to_string());
        let opt_ord = |o: &Option<BigUint>| o.as_ref().map_or(String::new(), |v| v.to_string());
        let wilson = self
            .wilson
            .iter()
            .map(|w| w.to_json(self.n).to_string())
            .collect::<Vec<_>>()
            .join("|");
        let family = self.family.as_ref().map_or(String::new(), |f| {
            serde_json::to_value(f).unwrap().to_string()
        });
        let cols = [
            self.n.to_string(),
            set,
            self.connected.to_string(),
            self.bipartite.to_string(),
            self.twin_free.to_string(),
            opt_bool(self.stable),
            opt_ord(&self.aut_x_order),
            opt_ord(&self.aut_bx_order),
            csv_escape(&wilson),
            csv_escape(&family),
            self.edge_orbits_bx.map_or(String::new(), |v| v.to_string()),
            RECORD_SCHEMA.to_string(),
        ];
        cols.join(",")
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}
