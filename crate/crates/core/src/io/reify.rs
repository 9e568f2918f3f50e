//! Tabular rows reified into n-ary relation instances: one instance per row,
//! typed by the relation class and linked to every cell of the row.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::error::ModelError;
use crate::graph::Graph;
use crate::prefix::PrefixMap;
use crate::term::{Term, Triple};
use crate::vocab::rdf;

/// One table row, keyed by column name.
pub type Record = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReifyError {
    #[error("row {row}: missing column `{column}`")]
    MissingColumn { row: usize, column: String },
    #[error("row {row}: column `{column}` is not mapped to a property")]
    UnmappedColumn { row: usize, column: String },
    #[error("row {row}: column `{column}` is empty and cannot name a resource")]
    EmptyCell { row: usize, column: String },
    #[error("spec line {line}: {message}")]
    Spec { line: usize, message: String },
    #[error("invalid table spec: {0}")]
    InvalidSpec(String),
    #[error("csv: {0}")]
    Csv(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Parameters of the reification pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSpec {
    class: String,
    namespace: String,
    instance: String,
    roles: Vec<(String, String)>,
    literals: BTreeSet<String>,
}

impl TableSpec {
    /// `roles` maps columns to property IRIs in output order. Instances are
    /// named `namespace + instance + i`, `i` counting rows from 1.
    pub fn new(
        class: impl Into<String>,
        namespace: impl Into<String>,
        instance: impl Into<String>,
        roles: Vec<(String, String)>,
        literals: impl IntoIterator<Item = String>,
    ) -> Result<Self, ReifyError> {
        let spec = TableSpec {
            class: class.into(),
            namespace: namespace.into(),
            instance: instance.into(),
            roles,
            literals: literals.into_iter().collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), ReifyError> {
        Term::iri(&self.class).validate()?;
        Term::iri(format!("{}{}1", self.namespace, self.instance)).validate()?;
        let mut columns = BTreeSet::new();
        let mut props = BTreeSet::new();
        for (col, prop) in &self.roles {
            Term::iri(prop).validate()?;
            if !columns.insert(col) {
                return Err(ReifyError::InvalidSpec(format!("column `{col}` mapped twice")));
            }
            if !props.insert(prop) {
                return Err(ReifyError::InvalidSpec(format!("property <{prop}> used by two columns")));
            }
        }
        if let Some(col) = self.literals.iter().find(|c| !columns.contains(c)) {
            return Err(ReifyError::InvalidSpec(format!("literal column `{col}` has no property")));
        }
        Ok(())
    }

    pub fn class(&self) -> &str {
        &self.class
    }

    pub fn roles(&self) -> &[(String, String)] {
        &self.roles
    }

    pub fn is_literal_column(&self, column: &str) -> bool {
        self.literals.contains(column)
    }

    pub fn instance_iri(&self, row: usize) -> String {
        format!("{}{}{}", self.namespace, self.instance, row)
    }

    /// Parses the `key = value` spec format:
    ///
    /// ```text
    /// prefix.edu = http://example.edu#
    /// class = edu:Purchase
    /// namespace = http://example.edu#
    /// instance = purchase
    /// column.Buyer = edu:buyer
    /// literal = Number of pieces
    /// ```
    ///
    /// `namespace` defaults to the class IRI's namespace and `instance` to
    /// the class local name with a lower-case first letter.
    pub fn parse(text: &str) -> Result<Self, ReifyError> {
        let mut prefixes = PrefixMap::with_standard();
        let mut class = None;
        let mut namespace = None;
        let mut instance = None;
        let mut roles = Vec::new();
        let mut literals = Vec::new();
        let spec_err = |line: usize, message: String| ReifyError::Spec { line, message };
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let raw = raw.trim();
            if raw.is_empty() || raw.starts_with('#') {
                continue;
            }
            let Some((key, value)) = raw.split_once('=') else {
                return Err(spec_err(line, "expected `key = value`".into()));
            };
            let (key, value) = (key.trim(), value.trim());
            let expand = |v: &str| -> Result<String, ReifyError> {
                if crate::term::has_scheme(v) && !v.split_once(':').is_some_and(|(p, _)| prefixes.get(p).is_some()) {
                    Ok(v.to_string())
                } else {
                    prefixes.expand_qname(v).map_err(|e| spec_err(line, e.to_string()))
                }
            };
            if let Some(p) = key.strip_prefix("prefix.") {
                prefixes.insert(p.trim(), value);
            } else if let Some(col) = key.strip_prefix("column.") {
                roles.push((col.trim().to_string(), expand(value)?));
            } else {
                match key {
                    "class" => class = Some(expand(value)?),
                    "namespace" => namespace = Some(value.to_string()),
                    "instance" => instance = Some(value.to_string()),
                    "literal" => literals.extend(
                        value.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from),
                    ),
                    other => return Err(spec_err(line, format!("unknown key `{other}`"))),
                }
            }
        }
        let class = class.ok_or_else(|| ReifyError::InvalidSpec("missing `class`".into()))?;
        let split = class.rfind(['#', '/']).map_or(0, |i| i + 1);
        let namespace = namespace.unwrap_or_else(|| class[..split].to_string());
        let instance = instance.unwrap_or_else(|| {
            let local = &class[split..];
            let mut chars = local.chars();
            chars
                .next()
                .map(|c| c.to_lowercase().chain(chars).collect())
                .unwrap_or_default()
        });
        Self::new(class, namespace, instance, roles, literals)
    }
}

/// Reads a CSV document with a header row.
pub fn read_csv(text: &str) -> Result<(Vec<String>, Vec<Record>), ReifyError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| ReifyError::Csv(e.to_string()))?
        .iter()
        .map(String::from)
        .collect();
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| ReifyError::Csv(e.to_string()))?;
        rows.push(headers.iter().cloned().zip(rec.iter().map(String::from)).collect());
    }
    Ok((headers, rows))
}

/// `"Natural yoghurt"` → `NaturalYoghurt`.
pub fn camel_case(cell: &str) -> String {
    cell.split_whitespace()
        .flat_map(|word| {
            let mut chars = word.chars().filter(|c| c.is_alphanumeric() || matches!(c, '_' | '-'));
            let first = chars.next().into_iter().flat_map(char::to_uppercase);
            first.chain(chars).collect::<Vec<_>>()
        })
        .collect()
}

fn is_numeric(cell: &str) -> bool {
    cell.parse::<f64>().is_ok() && cell.chars().any(|c| c.is_ascii_digit())
}

/// Emits `n + 1` triples per row with `n` mapped columns.
pub fn reify_table(rows: &[Record], spec: &TableSpec) -> Result<Graph, ReifyError> {
    let mut graph = Graph::new();
    let class = Term::iri(&spec.class);
    for (idx, row) in rows.iter().enumerate() {
        let n = idx + 1;
        if let Some(col) = row.keys().find(|k| !spec.roles.iter().any(|(c, _)| c == *k)) {
            return Err(ReifyError::UnmappedColumn { row: n, column: col.clone() });
        }
        let instance = Term::iri(spec.instance_iri(n));
        graph.insert(&Triple::new(instance.clone(), Term::iri(rdf::TYPE), class.clone()))?;
        for (col, prop) in &spec.roles {
            let cell = row
                .get(col)
                .ok_or_else(|| ReifyError::MissingColumn { row: n, column: col.clone() })?
                .trim();
            let object = if spec.is_literal_column(col) || is_numeric(cell) {
                Term::literal(cell)
            } else {
                let local = camel_case(cell);
                if local.is_empty() {
                    return Err(ReifyError::EmptyCell { row: n, column: col.clone() });
                }
                Term::iri(format!("{}{}", spec.namespace, local))
            };
            graph.insert(&Triple::new(instance.clone(), Term::iri(prop), object))?;
        }
    }
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPEC: &str = "\
prefix.edu = http://example.edu#
class = edu:Purchase
column.Buyer = edu:buyer
column.Seller = edu:seller
column.Product = edu:product
column.Number of pieces = edu:number_of_pieces
";

    fn edu(l: &str) -> Term {
        Term::iri(format!("http://example.edu#{l}"))
    }

    #[test]
    fn spec_defaults() {
        let spec = TableSpec::parse(SPEC).unwrap();
        assert_eq!(spec.class(), "http://example.edu#Purchase");
        assert_eq!(spec.instance_iri(1), "http://example.edu#purchase1");
        assert_eq!(spec.roles().len(), 4);
    }

    #[test]
    fn first_purchase_row() {
        let spec = TableSpec::parse(SPEC).unwrap();
        let (_, rows) = read_csv(
            "Buyer,Seller,Product,Number of pieces\nMarcin Kowalski,Shop1,Natural yoghurt,5\n",
        )
        .unwrap();
        let g = reify_table(&rows, &spec).unwrap();
        let p1 = edu("purchase1");
        let expected = [
            Triple::new(p1.clone(), Term::iri(rdf::TYPE), edu("Purchase")),
            Triple::new(p1.clone(), edu("product"), edu("NaturalYoghurt")),
            Triple::new(p1.clone(), edu("number_of_pieces"), Term::literal("5")),
            Triple::new(p1.clone(), edu("buyer"), edu("MarcinKowalski")),
            Triple::new(p1, edu("seller"), edu("Shop1")),
        ];
        assert_eq!(g, Graph::from_triples(expected).unwrap());
    }

    #[test]
    fn missing_and_unmapped_columns() {
        let spec = TableSpec::parse(SPEC).unwrap();
        let (_, rows) = read_csv("Buyer,Seller,Product\nA,B,C\n").unwrap();
        assert_eq!(
            reify_table(&rows, &spec).unwrap_err(),
            ReifyError::MissingColumn { row: 1, column: "Number of pieces".into() }
        );
        let (_, rows) = read_csv("Buyer,Seller,Product,Number of pieces,Date\nA,B,C,1,x\n").unwrap();
        assert!(matches!(
            reify_table(&rows, &spec),
            Err(ReifyError::UnmappedColumn { row: 1, .. })
        ));
    }

    #[test]
    fn empty_table() {
        let spec = TableSpec::parse(SPEC).unwrap();
        let (_, rows) = read_csv("").unwrap();
        assert!(reify_table(&rows, &spec).unwrap().is_empty());
    }

    #[test]
    fn camel_case_cells() {
        assert_eq!(camel_case("Natural yoghurt"), "NaturalYoghurt");
        assert_eq!(camel_case("  Aleksandra   Nowak "), "AleksandraNowak");
        assert_eq!(camel_case("Ursynów"), "Ursynów");
        assert_eq!(camel_case("dark soy-sauce!"), "DarkSoy-sauce");
    }

    #[test]
    fn duplicate_property_rejected() {
        let err = TableSpec::parse("class = http://e/C\ncolumn.a = http://e/p\ncolumn.b = http://e/p\n");
        assert!(matches!(err, Err(ReifyError::InvalidSpec(_))));
    }
}
