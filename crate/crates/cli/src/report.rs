use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use sympar::catalogue::{checksums, load_group, parse_vector, references, GroupSpec};
use sympar::linalg::ExactVector;
use sympar::matgroup::Limits;
use sympar::reflection::{stabilizer_record, ParabolicRecord};

pub use sympar::catalogue::VectorAction;

use crate::{CliError, SCHEMA_VERSION, TOOL_VERSION};

/// Options shared by every command.
#[derive(Debug, Clone, Copy)]
#[derive(Default)]
pub struct Settings {
    pub seed: u64,
    pub limits: Limits,
    /// Record wall-clock timings (which makes reports non-reproducible).
    pub timings: bool,
}


/// What a report was computed from.
#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub schema_version: &'static str,
    pub tool_version: &'static str,
    pub data_checksums: BTreeMap<String, String>,
    pub seed: u64,
    pub cap_enumeration: usize,
    pub cap_orbit: usize,
}

impl Provenance {
    pub fn new(settings: &Settings) -> Self {
        Provenance {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION,
            data_checksums: checksums(),
            seed: settings.seed,
            cap_enumeration: settings.limits.enumeration,
            cap_orbit: settings.limits.orbit,
        }
    }
}

/// Wall-clock stages, in the order they ran.
#[derive(Debug, Default)]
pub struct Timer {
    enabled: bool,
    stages: Vec<(String, u64)>,
    last: Option<Instant>,
}

impl Timer {
    pub fn new(enabled: bool) -> Self {
        Timer { enabled, stages: Vec::new(), last: enabled.then(Instant::now) }
    }

    pub fn lap(&mut self, stage: impl Into<String>) {
        if let Some(last) = self.last {
            let now = Instant::now();
            self.stages.push((stage.into(), (now - last).as_millis() as u64));
            self.last = Some(now);
        }
    }

    pub fn finish(self) -> Option<Vec<(String, u64)>> {
        self.enabled.then_some(self.stages)
    }
}

/// A catalogue group with the resource limits of `settings` applied.
pub fn load(name: &str, settings: &Settings) -> Result<GroupSpec, CliError> {
    let mut spec = load_group(name)?;
    spec.group = spec.group.with_limits(settings.limits);
    Ok(spec)
}

/// A root line whose reflection is built from a corrected reading.
#[derive(Debug, Clone, Serialize)]
pub struct RootCorrection {
    pub index: usize,
    pub printed: ExactVector,
    pub used: ExactVector,
    pub note: String,
}

pub fn root_corrections(spec: &GroupSpec) -> Vec<RootCorrection> {
    spec.root_lines
        .iter()
        .filter_map(|r| {
            r.correction.as_ref().map(|note| RootCorrection {
                index: r.index,
                printed: r.printed.clone(),
                used: r.root.clone(),
                note: note.clone(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderReport {
    pub provenance: Provenance,
    pub group: String,
    pub expected_order: Option<u128>,
    pub computed_order: u128,
    pub root_corrections: Vec<RootCorrection>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<(String, u64)>>,
}

pub fn order(group: &str, settings: &Settings) -> Result<OrderReport, CliError> {
    let mut timer = Timer::new(settings.timings);
    let spec = load(group, settings)?;
    let computed_order = spec.group.order()?;
    timer.lap("order");
    Ok(OrderReport {
        provenance: Provenance::new(settings),
        group: spec.name.clone(),
        expected_order: spec.expected_order,
        computed_order,
        root_corrections: root_corrections(&spec),
        pass: spec.expected_order.is_none_or(|e| e == computed_order),
        timings_ms: timer.finish(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilizerReport {
    pub provenance: Provenance,
    pub group: String,
    pub group_order: u128,
    /// The vector as given on the command line.
    pub input: ExactVector,
    pub vector_action: VectorAction,
    pub record: ParabolicRecord,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<(String, u64)>>,
}

/// The column vector whose stabilizer `g v = v` equals that of `input` under
/// the given action.
pub fn acted_vector(input: &ExactVector, action: VectorAction) -> ExactVector {
    match action {
        VectorAction::Column => input.clone(),
        VectorAction::Row => input.conj(),
    }
}

pub fn stabilizer(group: &str, vector: &str, action: VectorAction, settings: &Settings) -> Result<StabilizerReport, CliError> {
    let mut timer = Timer::new(settings.timings);
    let spec = load(group, settings)?;
    let input = parse_vector(vector)?;
    if input.len() != spec.group.dim() {
        return Err(CliError::Input(format!(
            "vector has {} coordinates but {} acts on dimension {}",
            input.len(),
            spec.name,
            spec.group.dim()
        )));
    }
    let group_order = spec.group.order()?;
    timer.lap("order");
    let refs = references()?;
    let record = stabilizer_record(&spec.group, &acted_vector(&input, action), &refs.fingerprints, settings.seed)?;
    timer.lap("stabilizer");
    Ok(StabilizerReport {
        provenance: Provenance::new(settings),
        group: spec.name.clone(),
        group_order,
        input,
        vector_action: action,
        pass: record.steinberg_ok,
        record,
        timings_ms: timer.finish(),
    })
}
