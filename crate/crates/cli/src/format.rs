use kg_core::Binding;
use serde_json::{Map, Value};

/// Header row of variable names, then one row per answer with terms in
/// N-Triples syntax. Unbound cells are empty.
pub fn bindings_tsv(vars: &[String], rows: &[Binding]) -> String {
    let mut out = vars.iter().map(|v| format!("?{v}")).collect::<Vec<_>>().join("\t");
    out.push('\n');
    for b in rows {
        let cells: Vec<String> = vars
            .iter()
            .map(|v| b.get(v).map(ToString::to_string).unwrap_or_default())
            .collect();
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}

/// A JSON array with one object per answer mapping each variable to its
/// term in N-Triples syntax.
pub fn bindings_json(vars: &[String], rows: &[Binding]) -> String {
    let array: Vec<Value> = rows
        .iter()
        .map(|b| {
            let mut obj = Map::new();
            for v in vars {
                if let Some(t) = b.get(v) {
                    obj.insert(v.clone(), Value::String(t.to_string()));
                }
            }
            Value::Object(obj)
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&Value::Array(array)).expect("JSON values serialize");
    out.push('\n');
    out
}
