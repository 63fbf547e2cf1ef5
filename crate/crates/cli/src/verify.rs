use serde::Serialize;
use sympar::catalogue::{references, tables_data, GroupSpec, ReadingKind, TableRow};
use sympar::linalg::ExactVector;
use sympar::matgroup::Limits;
use sympar::reflection::{classify_parabolics, subspace_orbit, Classification, Mode, ParabolicRecord};

use crate::report::{load, root_corrections, Provenance, RootCorrection, Settings, Timer};
use crate::CliError;

/// Groups small enough for full-lattice mode by default.
pub const FULL_LATTICE_DEFAULT: [&str; 3] = ["Q", "S1", "S2"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    FullLattice,
    TableVectors,
}

impl VerifyMode {
    pub fn default_for(group: &str) -> VerifyMode {
        if FULL_LATTICE_DEFAULT.contains(&group) {
            VerifyMode::FullLattice
        } else {
            VerifyMode::TableVectors
        }
    }
}

/// How a table row was reproduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    /// The printed vector has a stabilizer of the printed type.
    AsPrinted,
    /// The printed vector is ambiguous and exactly the recorded reading works.
    Resolved,
    /// Only the documented correction of the printed vector works.
    Corrected,
    Mismatch,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReadingResult {
    pub reading: String,
    pub kind: ReadingKind,
    /// The vector as printed (before applying the table's vector action).
    pub literal: ExactVector,
    pub type_matches: bool,
    pub record: ParabolicRecord,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowResult {
    pub label: String,
    pub expected_type: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambiguity: Option<String>,
    pub status: RowStatus,
    /// Index into `readings` of the reading that reproduces the row.
    pub matched_reading: Option<usize>,
    pub readings: Vec<ReadingResult>,
}

impl RowResult {
    pub fn matched(&self) -> Option<&ReadingResult> {
        self.matched_reading.map(|i| &self.readings[i])
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeReport {
    pub lattice_size: usize,
    pub classes: Vec<ParabolicRecord>,
    pub maximal_classes: usize,
    pub expected_maximal_classes: usize,
    /// For each table row, the maximal lattice class containing its fixed space.
    pub row_classes: Vec<RowClass>,
    pub all_steinberg_ok: bool,
    pub classification_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowClass {
    pub label: String,
    pub class_id: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    /// Orders agree, every stabilizer passes the Steinberg check, every row is
    /// reproduced (allowing documented resolutions and corrections) and, in
    /// full-lattice mode, the maximal classes are exactly the table rows.
    pub pass: bool,
    /// As `pass`, with no corrected root line and no corrected table vector.
    pub pass_as_printed: bool,
    pub order_ok: bool,
    pub all_steinberg_ok: bool,
    pub rows: usize,
    pub rows_as_printed: usize,
    pub rows_resolved: usize,
    pub rows_corrected: usize,
    pub rows_mismatched: usize,
    pub classification_ok: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Statistics {
    pub stabilizers_computed: usize,
    pub enumerated_elements: Option<usize>,
    pub conjugacy_classes_among_readings: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub provenance: Provenance,
    pub group: String,
    pub mode: VerifyMode,
    pub claimed_order: Option<u128>,
    pub computed_order: u128,
    pub vector_action: sympar::catalogue::VectorAction,
    pub root_corrections: Vec<RootCorrection>,
    pub rows: Vec<RowResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeReport>,
    pub scope: Vec<String>,
    pub statistics: Statistics,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<(String, u64)>>,
}

fn row_status(row: &TableRow, matches: &[bool]) -> (RowStatus, Option<usize>) {
    let first = |kind: ReadingKind| row.readings.iter().zip(matches).position(|(r, &m)| m && r.kind == kind);
    if let Some(i) = first(ReadingKind::AsPrinted) {
        return (RowStatus::AsPrinted, Some(i));
    }
    let candidates: Vec<usize> =
        (0..row.readings.len()).filter(|&i| matches[i] && row.readings[i].kind == ReadingKind::Candidate).collect();
    if let [i] = candidates[..] {
        return (RowStatus::Resolved, Some(i));
    }
    if let Some(i) = first(ReadingKind::Corrected) {
        return (RowStatus::Corrected, Some(i));
    }
    (RowStatus::Mismatch, None)
}

fn scope(spec: &GroupSpec, mode: VerifyMode) -> Vec<String> {
    let mut notes = vec![
        "table vectors are row vectors: the verified parabolic of a printed vector v is {g : v g = v}".to_string(),
        "types are recognized by fingerprint (rank, order, reflection count, element-order histogram, centre order), not by an explicit conjugation".to_string(),
    ];
    match mode {
        VerifyMode::TableVectors => notes.push(format!(
            "table mode: only the tabulated vectors of {} are verified; completeness of the table is taken from the literature, not re-proved",
            spec.name
        )),
        VerifyMode::FullLattice => notes.push(
            "full-lattice mode: every parabolic subgroup (one per conjugacy class of fixed-space lattice elements) is checked".to_string(),
        ),
    }
    notes
}

fn lattice_report(
    spec: &GroupSpec,
    classification: Classification,
    rows: &[RowResult],
    limits: Limits,
) -> Result<LatticeReport, CliError> {
    let maximal: Vec<&ParabolicRecord> = classification.maximal().collect();
    let orbits = maximal
        .iter()
        .map(|r| subspace_orbit(spec.group.gens(), &r.fixed_space, limits.orbit))
        .collect::<Result<Vec<_>, _>>()?;
    let row_classes: Vec<RowClass> = rows
        .iter()
        .map(|row| RowClass {
            label: row.label.clone(),
            class_id: row.matched().and_then(|m| {
                maximal
                    .iter()
                    .zip(&orbits)
                    .find(|(_, o)| o.contains(&m.record.fixed_space))
                    .map(|(r, _)| r.conjugacy_class_id)
            }),
        })
        .collect();
    let mut ids: Vec<usize> = row_classes.iter().filter_map(|r| r.class_id).collect();
    ids.sort_unstable();
    ids.dedup();
    let types_agree = rows.iter().zip(&row_classes).all(|(row, rc)| {
        rc.class_id.is_some_and(|id| {
            classification.records.iter().any(|r| r.conjugacy_class_id == id && r.recognized_type.is(&row.expected_type))
        })
    });
    let classification_ok =
        maximal.len() == rows.len() && ids.len() == rows.len() && row_classes.iter().all(|r| r.class_id.is_some()) && types_agree;
    Ok(LatticeReport {
        lattice_size: classification.lattice_size.unwrap_or(0),
        maximal_classes: maximal.len(),
        expected_maximal_classes: rows.len(),
        row_classes,
        all_steinberg_ok: classification.all_steinberg_ok(),
        classification_ok,
        classes: classification.records,
    })
}

/// Reproduce the maximal-parabolic table of `group`, and in full-lattice mode
/// classify every parabolic subgroup.
pub fn verify(group: &str, mode: VerifyMode, settings: &Settings) -> Result<VerificationReport, CliError> {
    let mut timer = Timer::new(settings.timings);
    let spec = load(group, settings)?;
    if spec.table.is_empty() {
        return Err(CliError::Input(format!("{} has no table of maximal parabolic subgroups", spec.name)));
    }
    let refs = &references()?.fingerprints;
    let computed_order = spec.group.order()?;
    timer.lap("order");

    let vectors: Vec<ExactVector> =
        spec.table.iter().flat_map(|row| row.readings.iter().map(|r| r.vector.clone())).collect();
    let readings = classify_parabolics(&spec.group, &Mode::Vectors(vectors), refs, settings.seed)?;
    timer.lap("table vectors");
    let mut records = readings.records.into_iter();
    let rows: Vec<RowResult> = spec
        .table
        .iter()
        .map(|row| {
            let results: Vec<ReadingResult> = row
                .readings
                .iter()
                .map(|r| {
                    let record = records.next().expect("one record per reading");
                    ReadingResult {
                        reading: r.reading.clone(),
                        kind: r.kind,
                        literal: r.literal.clone(),
                        type_matches: record.recognized_type.is(&row.type_name),
                        record,
                    }
                })
                .collect();
            let matches: Vec<bool> = results.iter().map(|r| r.type_matches && r.record.steinberg_ok).collect();
            let (status, matched_reading) = row_status(row, &matches);
            RowResult {
                label: row.label.clone(),
                expected_type: row.type_name.clone(),
                ambiguity: row.ambiguity.clone(),
                status,
                matched_reading,
                readings: results,
            }
        })
        .collect();

    let lattice = match mode {
        VerifyMode::FullLattice => {
            let c = classify_parabolics(&spec.group, &Mode::FullLattice, refs, settings.seed)?;
            timer.lap("full lattice");
            Some(lattice_report(&spec, c, &rows, settings.limits)?)
        }
        VerifyMode::TableVectors => None,
    };

    let count = |s: RowStatus| rows.iter().filter(|r| r.status == s).count();
    let order_ok = spec.expected_order.is_none_or(|e| e == computed_order);
    let all_steinberg_ok = rows.iter().flat_map(|r| &r.readings).all(|r| r.record.steinberg_ok)
        && lattice.as_ref().is_none_or(|l| l.all_steinberg_ok);
    let classification_ok = lattice.as_ref().map(|l| l.classification_ok);
    let corrections = root_corrections(&spec);
    let pass = order_ok && all_steinberg_ok && count(RowStatus::Mismatch) == 0 && classification_ok != Some(false);
    let summary = Summary {
        pass,
        pass_as_printed: pass && count(RowStatus::Corrected) == 0 && corrections.is_empty(),
        order_ok,
        all_steinberg_ok,
        rows: rows.len(),
        rows_as_printed: count(RowStatus::AsPrinted),
        rows_resolved: count(RowStatus::Resolved),
        rows_corrected: count(RowStatus::Corrected),
        rows_mismatched: count(RowStatus::Mismatch),
        classification_ok,
    };
    let statistics = Statistics {
        stabilizers_computed: rows.iter().map(|r| r.readings.len()).sum(),
        enumerated_elements: spec.group.cached_elements().map(|e| e.len()),
        conjugacy_classes_among_readings: rows
            .iter()
            .flat_map(|r| r.readings.iter().map(|x| x.record.conjugacy_class_id))
            .max()
            .map_or(0, |m| m + 1),
    };
    Ok(VerificationReport {
        provenance: Provenance::new(settings),
        group: spec.name.clone(),
        mode,
        claimed_order: spec.expected_order,
        computed_order,
        vector_action: tables_data().vector_action,
        root_corrections: corrections,
        scope: scope(&spec, mode),
        rows,
        lattice,
        statistics,
        summary,
        timings_ms: timer.finish(),
    })
}
