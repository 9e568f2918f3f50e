//! Tab-separated model files:
//!
//! ```text
//! d=2 norm=L1
//! E  <http://example.edu#Warsaw>  1.0000000000000000e0  0.0000000000000000e0
//! R  <http://example.edu#is_part_of>  -2.5000000000000000e-1  3.0000000000000000e-1
//! ```
//!
//! Terms are written as in N-Triples; values carry 17 significant digits,
//! enough to read back the exact same `f64`.

use std::fmt::Write;

use kg_core::io::parse_term;
use kg_core::Term;

use crate::model::{EmbeddingModel, Norm};
use crate::EmbedError;

pub fn write_model(model: &EmbeddingModel) -> String {
    let mut out = format!("d={} norm={}\n", model.dim(), model.norm());
    let mut row = |kind: char, term: &Term, v: &[f64]| {
        let _ = write!(out, "{kind}\t{term}");
        for x in v {
            let _ = write!(out, "\t{x:.16e}");
        }
        out.push('\n');
    };
    for (i, t) in model.entities().iter().enumerate() {
        row('E', t, model.entity(i));
    }
    for (i, t) in model.relations().iter().enumerate() {
        row('R', t, model.relation(i));
    }
    out
}

pub fn read_model(text: &str) -> Result<EmbeddingModel, EmbedError> {
    let err = |line: usize, message: String| EmbedError::Format { line, message };
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| err(1, "empty model file".into()))?;
    let mut dim = None;
    let mut norm = None;
    for field in header.split_whitespace() {
        match field.split_once('=') {
            Some(("d", v)) => dim = Some(v.parse::<usize>().map_err(|e| err(1, format!("bad dimension: {e}")))?),
            Some(("norm", v)) => norm = Some(v.parse::<Norm>().map_err(|e| err(1, e.to_string()))?),
            _ => return Err(err(1, format!("unexpected header field `{field}`"))),
        }
    }
    let dim = dim.ok_or_else(|| err(1, "header lacks d=".into()))?;
    let norm = norm.ok_or_else(|| err(1, "header lacks norm=".into()))?;

    let mut entities = Vec::new();
    let mut relations = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != dim + 2 {
            return Err(err(lineno, format!("expected {} tab-separated fields, found {}", dim + 2, fields.len())));
        }
        let term = parse_term(fields[1]).map_err(|e| err(lineno, e.to_string()))?;
        let values = fields[2..]
            .iter()
            .map(|v| v.parse::<f64>().map_err(|e| err(lineno, format!("bad value `{v}`: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        match fields[0] {
            "E" => entities.push((term, values)),
            "R" => relations.push((term, values)),
            other => return Err(err(lineno, format!("row kind must be E or R, found `{other}`"))),
        }
    }
    EmbeddingModel::from_vectors(dim, norm, entities, relations)
}
