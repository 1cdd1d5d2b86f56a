//! JSON and CSV emission. Every JSON document carries a schema_version,
//! the command name, and the resolved parameters; CSV uses '.' decimals
//! through Rust's locale-independent float formatting.

use carleson::{CheckReport, EmbeddingResult, GrowthTable, IntensityResult, VectorSpectrum};
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

pub fn envelope(command: &str, parameters: Value, payload: Map<String, Value>) -> Value {
    let mut doc = Map::new();
    doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
    doc.insert("command".into(), json!(command));
    doc.insert("parameters".into(), parameters);
    doc.extend(payload);
    Value::Object(doc)
}

fn to_map<T: Serialize>(value: &T) -> Map<String, Value> {
    match serde_json::to_value(value).expect("serializable") {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    }
}

pub fn spectrum_document(parameters: Value, spectrum: &VectorSpectrum) -> Value {
    let entries: Vec<Value> = spectrum
        .entries()
        .iter()
        .map(|e| {
            let (j, l) = e.provenance.expect("exported spectra carry provenance");
            let mut dense = vec![[0.0, 0.0]; spectrum.dim() as usize];
            for &(coord, c) in &e.vector {
                dense[coord as usize] = [c.re, c.im];
            }
            json!({
                // indices exceed 64-bit JSON integers at large N
                "n": e.index.to_string(),
                "j": j,
                "l": l,
                "vector": dense,
            })
        })
        .collect();
    let mut payload = Map::new();
    payload.insert("dim".into(), json!(spectrum.dim()));
    payload.insert("entries".into(), Value::Array(entries));
    envelope("spectrum", parameters, payload)
}

pub fn intensity_document(parameters: Value, n: u32, r: &IntensityResult) -> Value {
    let mut payload = Map::new();
    payload.insert("N".into(), json!(n));
    payload.insert("value".into(), json!(r.value));
    payload.insert("witness".into(), json!({"j": r.witness.rank, "k": r.witness.index}));
    payload.insert("max_rank".into(), json!(r.scanned_max_rank));
    payload.insert("remainder_bound".into(), json!(r.remainder_bound));
    envelope("intensity", parameters, payload)
}

pub fn embedding_document(parameters: Value, r: &EmbeddingResult) -> Value {
    envelope("embedding", parameters, to_map(r))
}

pub fn verify_document(parameters: Value, checks: &[CheckReport]) -> Value {
    let mut payload = Map::new();
    payload.insert("checks".into(), serde_json::to_value(checks).expect("serializable"));
    envelope("verify", parameters, payload)
}

/// Fixed columns; one row per dimension.
pub fn experiment_csv(table: &GrowthTable) -> String {
    let mut out = String::from("N,intensity,value_spectral,value_paper,ratio,ratio_over_sqrtlog\n");
    for r in &table.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n, r.intensity, r.value_spectral, r.value_paper, r.ratio, r.ratio_over_sqrtlog
        ));
    }
    out
}

pub fn render_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
