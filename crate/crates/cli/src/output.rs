use bott_null_core::repthy::{weyl_dim, FormalGModule};
use bott_null_core::rootsys::root_label;
use bott_null_core::{RootSystem, Weight};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

pub const OUTPUT_FORMAT: &str = "bott-null/1";

/// A command result: the JSON payload plus, for tabular commands, its rows.
pub struct Output {
    pub payload: Value,
    pub table: Option<Table>,
    /// False when a report check failed.
    pub ok: bool,
}

impl Output {
    pub fn new(payload: Value) -> Self {
        Output { payload, table: None, ok: true }
    }

    pub fn with_table(payload: Value, table: Table) -> Self {
        Output { payload, table: Some(table), ok: true }
    }
}

pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub fn render_json(argv: &[String], root_system: Option<String>, out: &Output) -> String {
    let envelope = json!({
        "format": OUTPUT_FORMAT,
        "command": argv,
        "root_system": root_system,
        "payload": out.payload,
    });
    let mut text = serde_json::to_string_pretty(&envelope).expect("JSON values serialize");
    text.push('\n');
    text
}

pub fn render_tsv(out: &Output) -> String {
    let mut text = String::new();
    match &out.table {
        Some(t) => {
            text.push_str(&t.headers.join("\t"));
            text.push('\n');
            for row in &t.rows {
                text.push_str(&row.join("\t"));
                text.push('\n');
            }
        }
        None => {
            text.push_str("key\tvalue\n");
            if let Value::Object(map) = &out.payload {
                for (k, v) in map {
                    let cell = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    text.push_str(&format!("{k}\t{cell}\n"));
                }
            }
        }
    }
    text
}

pub fn big(n: &BigUint) -> Value {
    match n.to_u64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn root_or_null(rs: &RootSystem, w: &Weight) -> Value {
    root_label(rs, w).map_or(Value::Null, Value::String)
}

pub fn weight_fields(rs: &RootSystem, w: &Weight) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("weight".into(), json!(w.to_string()));
    m.insert("root".into(), root_or_null(rs, w));
    m
}

pub fn module_json(rs: &RootSystem, module: &FormalGModule) -> Value {
    Value::Array(
        module
            .iter()
            .map(|(w, m)| {
                let mut o = weight_fields(rs, w);
                o.insert("mult".into(), json!(m));
                o.insert("dim".into(), big(&weyl_dim(rs, w).expect("dominant")));
                Value::Object(o)
            })
            .collect(),
    )
}
