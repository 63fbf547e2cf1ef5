//! Concrete groups: the seven symplectically primitive groups built from
//! root lines, the imprimitive and doubled families, and the reference
//! groups used for recognition.

mod data;
mod families;
mod references;
mod roots;

use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{Cyclotomic, CycloError};
use crate::linalg::{ExactMatrix, ExactVector, LinalgError, SymplecticSpace};
use crate::matgroup::{FiniteMatrixGroup, GroupError};
use crate::reflection::ReflectionError;

pub use data::{checksums, primitive_data, tables_data, PrimitiveData, TablesData, VectorAction};
pub use families::{
    build_gmpn, build_imprimitive, build_sl2_subgroup, c2_plane, coxeter_group, double, factorial, gmpn_order,
    imprimitive_order, predicted_imprimitive_stabilizer_order, symplectic_product, symplectic_sum, Sl2Kind,
};
pub use references::{quaternion_imprimitive, reference_fingerprints, reference_groups, references, References};
pub use roots::{reflection_from_root, QuaternionicStructure, RootLine};

pub const PRIMITIVE_NAMES: [&str; 7] = ["Q", "R", "S1", "S2", "S3", "T", "U"];

#[derive(Debug, Error)]
pub enum CatalogueError {
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("embedded data: {0}")]
    Data(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Reflection(#[from] ReflectionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReadingKind {
    /// The printed vector, unambiguous.
    AsPrinted,
    /// One reading of an ambiguous printed vector.
    Candidate,
    /// A documented correction of a printed vector.
    Corrected,
}

/// One reading of a table vector.
#[derive(Debug, Clone, Serialize)]
pub struct Reading {
    pub reading: String,
    pub kind: ReadingKind,
    /// The vector as written in the data file.
    pub literal: ExactVector,
    /// The column vector whose stabilizer is the tabulated parabolic.
    pub vector: ExactVector,
}

impl Reading {
    fn new(reading: impl Into<String>, kind: ReadingKind, literal: ExactVector, action: VectorAction) -> Reading {
        let vector = match action {
            VectorAction::Column => literal.clone(),
            VectorAction::Row => literal.conj(),
        };
        Reading { reading: reading.into(), kind, literal, vector }
    }
}

/// A row of a maximal-parabolic table: the printed type and every reading of
/// the stabilized vector (exactly one unless the printed row is ambiguous).
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub label: String,
    pub type_name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambiguity: Option<String>,
    pub readings: Vec<Reading>,
}

impl TableRow {
    pub fn is_ambiguous(&self) -> bool {
        self.readings.iter().filter(|r| r.kind == ReadingKind::Candidate).count() > 1
    }

    pub fn corrected(&self) -> Option<&Reading> {
        self.readings.iter().find(|r| r.kind == ReadingKind::Corrected)
    }
}

#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub name: String,
    pub space: SymplecticSpace,
    pub group: FiniteMatrixGroup,
    pub expected_order: Option<u128>,
    pub root_lines: Vec<RootLine>,
    pub table: Vec<TableRow>,
}

impl GroupSpec {
    pub fn quaternionic_structure(&self) -> QuaternionicStructure {
        QuaternionicStructure::new(self.space.dim())
    }
}

/// `W(name)` for one of the seven primitive groups, generated by the
/// reflections of its printed root lines.
pub fn build_primitive(name: &str) -> Result<GroupSpec, CatalogueError> {
    let pdata = primitive_data();
    let tdata = tables_data();
    let g = pdata.groups.get(name).ok_or_else(|| CatalogueError::UnknownGroup(name.to_string()))?;
    let space = SymplecticSpace::standard(g.dim);
    let j = QuaternionicStructure::new(g.dim);
    let root_lines = g
        .roots
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let line = RootLine::new(name, k + 1, data::vector(&r.printed, &[&pdata.symbols])?)?;
            match &r.corrected {
                Some(c) => line.corrected(data::vector(&c.literal, &[&pdata.symbols])?, &c.note),
                None => Ok(line),
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let gens = root_lines
        .iter()
        .map(|r| reflection_from_root(&r.root, &space, &j))
        .collect::<Result<Vec<_>, _>>()?;
    let group = FiniteMatrixGroup::new(g.dim, gens)?.with_hints(root_lines.iter().map(|r| r.vector.clone()).collect());
    let table = match tdata.groups.get(name) {
        Some(t) => table_rows(&tdata, t, g.dim)?,
        None => Vec::new(),
    };
    Ok(GroupSpec { name: name.to_string(), space, group, expected_order: Some(g.expected_order), root_lines, table })
}

fn table_rows(
    tdata: &TablesData,
    group: &data::TableGroupData,
    dim: usize,
) -> Result<Vec<TableRow>, CatalogueError> {
    let scopes = [&tdata.symbols, &group.symbols];
    let action = tdata.vector_action;
    group
        .rows
        .iter()
        .map(|row| {
            let mut readings = match (&row.vector, &row.candidates, &row.printed) {
                (Some(v), _, _) => vec![Reading::new("as printed", ReadingKind::AsPrinted, data::vector(v, &scopes)?, action)],
                (None, Some(data::CandidateSpec::Listed(cands)), _) => cands
                    .iter()
                    .map(|c| Ok(Reading::new(c.reading.clone(), ReadingKind::Candidate, data::vector(&c.vector, &scopes)?, action)))
                    .collect::<Result<Vec<_>, CatalogueError>>()?,
                (None, Some(data::CandidateSpec::Rule(rule)), Some(printed)) if rule == "insert 0 at each position" => {
                    let short = data::entries(printed, &scopes)?;
                    if short.len() + 1 != dim {
                        return Err(CatalogueError::Data(format!("row {} has {} entries", row.label, short.len())));
                    }
                    (0..dim)
                        .map(|pos| {
                            let mut v = short.0.clone();
                            v.insert(pos, Cyclotomic::zero());
                            let reading = format!("zero inserted at coordinate {}", pos + 1);
                            Reading::new(reading, ReadingKind::Candidate, ExactVector(v), action)
                        })
                        .collect()
                }
                _ => return Err(CatalogueError::Data(format!("row {} has no usable vector", row.label))),
            };
            if let Some(c) = &row.corrected {
                let literal = data::vector(&c.literal, &scopes)?;
                readings.push(Reading::new(format!("corrected: {}", c.note), ReadingKind::Corrected, literal, action));
            }
            if let Some(bad) = readings.iter().find(|r| r.vector.len() != dim) {
                return Err(CatalogueError::Data(format!("row {} reading {:?} has wrong length", row.label, bad.reading)));
            }
            Ok(TableRow { label: row.label.clone(), type_name: row.type_name.clone(), ambiguity: row.ambiguity.clone(), readings })
        })
        .collect()
}

/// The printed generators `M₁, …, M₄` of `W(S₁)`.
pub fn s1_printed_matrices() -> Result<Vec<(String, ExactMatrix)>, CatalogueError> {
    let pdata = primitive_data();
    pdata
        .s1_matrices
        .iter()
        .map(|(name, lit)| Ok((name.clone(), data::matrix(lit, &[&pdata.symbols])?)))
        .collect()
}

/// The worked example inside `W(S₁)`: the stabilized vector, the second
/// printed fixed vector, and the printed stabilizer generators as words in
/// `M₁, …, M₄`.
#[derive(Debug, Clone)]
pub struct WorkedExample {
    pub vector: ExactVector,
    pub second_fixed_vector: ExactVector,
    pub stabilizer_generators: Vec<ExactMatrix>,
    pub stabilizer_order: u128,
    pub type_name: String,
}

pub fn worked_example() -> Result<WorkedExample, CatalogueError> {
    let pdata = primitive_data();
    let w = &pdata.worked_example;
    let scopes = [&pdata.symbols, &w.symbols];
    let mats: std::collections::BTreeMap<String, ExactMatrix> = s1_printed_matrices()?.into_iter().collect();
    let stabilizer_generators = w
        .stabilizer_words
        .iter()
        .map(|word| {
            word.iter().try_fold(ExactMatrix::identity(8), |acc, letter| {
                mats.get(letter)
                    .map(|m| acc.mul(m))
                    .ok_or_else(|| CatalogueError::Data(format!("unknown letter {letter}")))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(WorkedExample {
        vector: data::entries(&w.vector, &scopes)?,
        second_fixed_vector: data::entries(&w.second_fixed_vector, &scopes)?,
        stabilizer_generators,
        stabilizer_order: w.stabilizer_order,
        type_name: w.type_name.clone(),
    })
}

/// A comma-separated vector literal; `{i}`, `{s5}` and `{z}` stand for
/// `E(4)`, `√5` and `E(10)` as in the embedded data.
pub fn parse_vector(text: &str) -> Result<ExactVector, CatalogueError> {
    let items: Vec<String> = text.split(',').map(|s| s.trim().to_string()).collect();
    data::entries(&items, &[&primitive_data().symbols]).map_err(|e| match e {
        CatalogueError::Data(msg) => CatalogueError::Parameter(msg),
        e => e,
    })
}

/// Groups loadable by name: the seven primitive groups and `trivial-<2n>`.
pub fn load_group(name: &str) -> Result<GroupSpec, CatalogueError> {
    if let Some(d) = name.strip_prefix("trivial-") {
        let dim: usize = d.parse().map_err(|_| CatalogueError::UnknownGroup(name.to_string()))?;
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(CatalogueError::UnknownGroup(name.to_string()));
        }
        return Ok(GroupSpec {
            name: name.to_string(),
            space: SymplecticSpace::standard(dim),
            group: FiniteMatrixGroup::trivial(dim),
            expected_order: Some(1),
            root_lines: Vec::new(),
            table: Vec::new(),
        });
    }
    build_primitive(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s1_root_reflections_reproduce_printed_matrices() {
        let spec = build_primitive("S1").unwrap();
        let printed: Vec<ExactMatrix> = s1_printed_matrices().unwrap().into_iter().map(|(_, m)| m).collect();
        for m in &printed[1..] {
            assert!(spec.group.gens().contains(m));
        }
    }

    #[test]
    fn tables_load_with_expected_readings() {
        let r = build_primitive("R").unwrap();
        assert_eq!(r.table[0].readings.len(), 2);
        let t = build_primitive("T").unwrap();
        assert_eq!(t.table.iter().filter(|row| row.is_ambiguous()).count(), 1);
        let h5 = t.table.iter().find(|row| row.is_ambiguous()).unwrap();
        assert_eq!(h5.readings.len(), 9);
        assert!(h5.corrected().is_some());
        let corrected: Vec<String> = ["Q", "R", "S1", "S2", "S3", "T", "U"]
            .iter()
            .flat_map(|g| {
                let spec = build_primitive(g).unwrap();
                spec.table.iter().filter(|r| r.corrected().is_some()).map(|r| format!("{g} {}", r.label)).collect::<Vec<_>>()
            })
            .collect();
        assert_eq!(corrected, ["T H3", "T H5", "U H4"]);
    }

    #[test]
    fn primitive_generators_are_symplectic_and_quaternionic() {
        for name in PRIMITIVE_NAMES {
            let spec = build_primitive(name).unwrap();
            let j = spec.quaternionic_structure();
            for g in spec.group.gens() {
                assert!(spec.space.preserves(g), "{name}");
                assert!(j.commutes_with(g), "{name}");
                assert_eq!(g.sub_identity().rank(), 2, "{name}");
            }
        }
    }

    #[test]
    fn vector_literals_use_data_symbols() {
        let v = parse_vector("1, {i}+1, 1/2*{s5}, E(5)").unwrap();
        assert_eq!(v.len(), 4);
        assert_eq!(&v[1] - &Cyclotomic::i(), Cyclotomic::one());
        assert_eq!(&v[2] * &v[2], Cyclotomic::rational(5, 4).unwrap());
        assert!(parse_vector("1,,2").is_err());
    }

    #[test]
    fn trivial_groups_load() {
        assert_eq!(load_group("trivial-2").unwrap().group.order().unwrap(), 1);
        assert!(load_group("trivial-3").is_err());
        assert!(load_group("V").is_err());
    }
}
