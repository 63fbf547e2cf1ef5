use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::CatalogueError;
use crate::cyclo::{parse_literal, Cyclotomic};
use crate::linalg::{ExactMatrix, ExactVector};

pub const PRIMITIVE_JSON: &str = include_str!("../../data/primitive.json");
pub const TABLES_JSON: &str = include_str!("../../data/tables.json");

/// SHA-256 of the embedded data files, keyed by file name.
pub fn checksums() -> BTreeMap<String, String> {
    [("primitive.json", PRIMITIVE_JSON), ("tables.json", TABLES_JSON)]
        .into_iter()
        .map(|(name, text)| (name.to_string(), hex::encode(Sha256::digest(text.as_bytes()))))
        .collect()
}

pub type Symbols = BTreeMap<String, String>;

#[derive(Debug, Clone, Deserialize)]
pub struct VectorLiteral {
    #[serde(default)]
    pub scale: Option<String>,
    pub entries: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct MatrixLiteral {
    #[serde(default)]
    pub scale: Option<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct CorrectedLiteral {
    #[serde(flatten)]
    pub literal: VectorLiteral,
    pub note: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RootData {
    #[serde(flatten)]
    pub printed: VectorLiteral,
    #[serde(default)]
    pub corrected: Option<CorrectedLiteral>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PrimitiveGroupData {
    pub dim: usize,
    pub expected_order: u128,
    pub roots: Vec<RootData>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct WorkedExample {
    pub group: String,
    pub symbols: Symbols,
    pub vector: Vec<String>,
    pub second_fixed_vector: Vec<String>,
    pub stabilizer_words: Vec<Vec<String>>,
    pub stabilizer_order: u128,
    #[serde(rename = "type")]
    pub type_name: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PrimitiveData {
    pub format: String,
    pub coordinate_convention: String,
    pub symbols: Symbols,
    pub changelog: Vec<String>,
    pub groups: BTreeMap<String, PrimitiveGroupData>,
    pub s1_matrices: BTreeMap<String, MatrixLiteral>,
    pub worked_example: WorkedExample,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Candidate {
    pub reading: String,
    pub vector: VectorLiteral,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum CandidateSpec {
    Listed(Vec<Candidate>),
    Rule(String),
}

#[derive(Debug, Clone, Deserialize)]
pub struct TableRowData {
    pub label: String,
    #[serde(rename = "type")]
    pub type_name: String,
    #[serde(default)]
    pub vector: Option<VectorLiteral>,
    #[serde(default)]
    pub ambiguity: Option<String>,
    #[serde(default)]
    pub printed: Option<Vec<String>>,
    #[serde(default)]
    pub candidates: Option<CandidateSpec>,
    #[serde(default)]
    pub corrected: Option<CorrectedLiteral>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TableGroupData {
    pub symbols: Symbols,
    pub rows: Vec<TableRowData>,
}

/// How a printed table vector `v` is stabilized: `g v = v` (column) or
/// `v g = v` (row).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VectorAction {
    Column,
    Row,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TablesData {
    pub format: String,
    pub vector_action: VectorAction,
    pub symbols: Symbols,
    pub changelog: Vec<String>,
    pub groups: BTreeMap<String, TableGroupData>,
}

pub fn primitive_data() -> PrimitiveData {
    serde_json::from_str(PRIMITIVE_JSON).expect("embedded primitive.json is valid")
}

pub fn tables_data() -> TablesData {
    serde_json::from_str(TABLES_JSON).expect("embedded tables.json is valid")
}

/// Replace every `{name}` by the parenthesized expansion of its definition.
pub fn expand(text: &str, scopes: &[&Symbols]) -> Result<String, CatalogueError> {
    expand_depth(text, scopes, 0)
}

fn expand_depth(text: &str, scopes: &[&Symbols], depth: usize) -> Result<String, CatalogueError> {
    if depth > 8 {
        return Err(CatalogueError::Data(format!("symbol expansion too deep in {text:?}")));
    }
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let close = rest[open..]
            .find('}')
            .ok_or_else(|| CatalogueError::Data(format!("unclosed symbol in {text:?}")))?;
        let name = &rest[open + 1..open + close];
        let def = scopes
            .iter()
            .rev()
            .find_map(|s| s.get(name))
            .ok_or_else(|| CatalogueError::Data(format!("unknown symbol {{{name}}} in {text:?}")))?;
        out.push('(');
        out.push_str(&expand_depth(def, scopes, depth + 1)?);
        out.push(')');
        rest = &rest[open + close + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

pub fn scalar(text: &str, scopes: &[&Symbols]) -> Result<Cyclotomic, CatalogueError> {
    let expanded = expand(text, scopes)?;
    parse_literal(&expanded).map_err(|e| CatalogueError::Data(format!("{text:?}: {e}")))
}

pub fn vector(lit: &VectorLiteral, scopes: &[&Symbols]) -> Result<ExactVector, CatalogueError> {
    let v = entries(&lit.entries, scopes)?;
    match &lit.scale {
        Some(s) => Ok(v.scale(&scalar(s, scopes)?)),
        None => Ok(v),
    }
}

pub fn entries(items: &[String], scopes: &[&Symbols]) -> Result<ExactVector, CatalogueError> {
    items.iter().map(|s| scalar(s, scopes)).collect::<Result<Vec<_>, _>>().map(ExactVector)
}

pub fn matrix(lit: &MatrixLiteral, scopes: &[&Symbols]) -> Result<ExactMatrix, CatalogueError> {
    let rows = lit
        .rows
        .iter()
        .map(|r| r.iter().map(|s| scalar(s, scopes)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let m = ExactMatrix::from_rows(rows).map_err(|e| CatalogueError::Data(e.to_string()))?;
    match &lit.scale {
        Some(s) => Ok(m.scale(&scalar(s, scopes)?)),
        None => Ok(m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_files_parse() {
        let p = primitive_data();
        assert_eq!(p.groups.len(), 7);
        assert_eq!(p.coordinate_convention, "split");
        let t = tables_data();
        let rows: Vec<usize> = ["Q", "R", "S1", "S2", "S3", "T", "U"].iter().map(|g| t.groups[*g].rows.len()).collect();
        assert_eq!(rows, vec![2, 3, 6, 5, 4, 7, 5]);
        assert_eq!(checksums().len(), 2);
    }

    #[test]
    fn symbols_expand_recursively() {
        let t = tables_data();
        let q = &t.groups["Q"];
        let a = scalar("{al}", &[&t.symbols, &q.symbols]).unwrap();
        let expect = parse_literal("1/6*(E(4)*(1+2*E(5)+2*E(5)^4)+E(4)-(1+2*E(5)+2*E(5)^4)+1)").unwrap();
        assert_eq!(a, expect);
        let s5 = scalar("{s5}", &[&t.symbols]).unwrap();
        assert_eq!(&s5 * &s5, Cyclotomic::from_i64(5));
        assert!(scalar("{nope}", &[&t.symbols]).is_err());
    }
}
