use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sympar::catalogue::{
    build_imprimitive, build_sl2_subgroup, imprimitive_order, predicted_imprimitive_stabilizer_order, Sl2Kind,
};
use sympar::cyclo::Cyclotomic;
use sympar::linalg::{ExactMatrix, ExactVector};
use sympar::matgroup::FiniteMatrixGroup;
use sympar::reflection::steinberg_check;

use crate::report::{Provenance, Settings, Timer};
use crate::CliError;

/// `K` on the command line: `cyclic:m`, `binary-dihedral:m` (order `4m`),
/// `binary-tetrahedral`, `binary-octahedral` or `binary-icosahedral`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KindArg(pub Sl2Kind);

impl FromStr for KindArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p.parse::<u32>().map_err(|e| format!("{s:?}: {e}"))?)),
            None => (s, None),
        };
        let kind = match (name, param) {
            ("cyclic", Some(m)) if m > 0 => Sl2Kind::Cyclic(m),
            ("binary-dihedral", Some(m)) if m > 0 => Sl2Kind::BinaryDihedral(m),
            ("binary-tetrahedral" | "2T", None) => Sl2Kind::BinaryTetrahedral,
            ("binary-octahedral" | "2O", None) => Sl2Kind::BinaryOctahedral,
            ("binary-icosahedral" | "2I", None) => Sl2Kind::BinaryIcosahedral,
            _ => return Err(format!("unknown subgroup of SL2 {s:?}")),
        };
        Ok(KindArg(kind))
    }
}

impl fmt::Display for KindArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Sl2Kind::Cyclic(m) => write!(f, "cyclic:{m}"),
            Sl2Kind::BinaryDihedral(m) => write!(f, "binary-dihedral:{m}"),
            Sl2Kind::BinaryTetrahedral => f.write_str("binary-tetrahedral"),
            Sl2Kind::BinaryOctahedral => f.write_str("binary-octahedral"),
            Sl2Kind::BinaryIcosahedral => f.write_str("binary-icosahedral"),
        }
    }
}

/// The normal subgroup `H` of `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Selector {
    Full,
    Center,
    Derived,
    Trivial,
}

/// `H` as a subgroup of `K`, with few generators.
pub fn select(k: &FiniteMatrixGroup, selector: Selector) -> Result<FiniteMatrixGroup, CliError> {
    let elements = k.enumerate()?;
    let members: Vec<ExactMatrix> = match selector {
        Selector::Full => return Ok(k.clone()),
        Selector::Trivial => return Ok(FiniteMatrixGroup::trivial(2)),
        Selector::Center => {
            elements.iter().filter(|z| k.gens().iter().all(|g| z.mul(g) == g.mul(z))).collect()
        }
        Selector::Derived => {
            let all: Vec<ExactMatrix> = elements.iter().collect();
            let inverses = all.iter().map(ExactMatrix::inverse).collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Internal(e.to_string()))?;
            let mut comms = Vec::new();
            for (a, ai) in all.iter().zip(&inverses) {
                for (b, bi) in all.iter().zip(&inverses) {
                    comms.push(ai.mul(bi).mul(a).mul(b));
                }
            }
            comms.sort();
            comms.dedup();
            comms
        }
    };
    Ok(k.greedy_subgroup(members, None)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct Sample {
    pub label: String,
    pub vector: ExactVector,
    pub predicted_order: u128,
    pub order: u128,
    pub steinberg_ok: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ImprimitiveReport {
    pub provenance: Provenance,
    pub k: String,
    pub k_order: u128,
    pub h: Selector,
    pub h_order: u128,
    pub n: usize,
    pub group_order: u128,
    pub predicted_group_order: u128,
    pub samples: Vec<Sample>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<(String, u64)>>,
}

/// Slot vectors in pairwise distinct `K`-orbits, since `K` is unitary and
/// their norms differ.
fn base_slot(j: usize) -> ExactVector {
    ExactVector::from_i64(&[j as i64 + 1, 2 * j as i64 + 3])
}

fn assemble(slots: &[ExactVector]) -> ExactVector {
    let n = slots.len();
    let mut v = vec![Cyclotomic::zero(); 2 * n];
    for (i, w) in slots.iter().enumerate() {
        v[i] = w[0].clone();
        v[n + i] = w[1].clone();
    }
    ExactVector(v)
}

fn corner_cases(n: usize, k: &[ExactMatrix]) -> Vec<(String, Vec<ExactVector>)> {
    let zero = ExactVector::zeros(2);
    let last = k.last().expect("K is nonempty");
    let mut cases = vec![
        ("zero vector".to_string(), vec![zero.clone(); n]),
        ("all slots in distinct K-orbits".to_string(), (0..n).map(base_slot).collect()),
        ("all slots in one K-orbit".to_string(), (0..n).map(|i| if i % 2 == 0 { base_slot(0) } else { last.mul_vec(&base_slot(0)) }).collect()),
    ];
    if n >= 2 {
        let mut slots = vec![zero.clone(); n];
        slots[n - 1] = base_slot(0);
        cases.push(("one nonzero slot".to_string(), slots));
        let mut slots: Vec<ExactVector> = vec![base_slot(0); n];
        slots[0] = zero;
        cases.push(("one zero slot, the rest repeated".to_string(), slots));
    }
    cases
}

/// Compare stabilizers in `G_n(K, H)` with the order predicted by the block
/// structure of the vector, on corner cases and `trials` seeded random vectors.
pub fn imprimitive(
    kind: KindArg,
    selector: Selector,
    n: usize,
    trials: usize,
    settings: &Settings,
) -> Result<ImprimitiveReport, CliError> {
    let mut timer = Timer::new(settings.timings);
    let k = build_sl2_subgroup(kind.0)?;
    let k_elements: Vec<ExactMatrix> = k.enumerate()?.iter().collect();
    let h = select(&k, selector)?;
    let h_order = h.order()?;
    let g = build_imprimitive(&k, h.gens(), n)?.with_limits(settings.limits);
    let group_order = g.order()?;
    timer.lap("group");

    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut cases = corner_cases(n, &k_elements);
    for t in 0..trials {
        let slots = (0..n)
            .map(|_| match rng.gen_range(0..4) {
                0 => ExactVector::zeros(2),
                1 => base_slot(1),
                2 => base_slot(2),
                _ => k_elements[rng.gen_range(0..k_elements.len())].mul_vec(&base_slot(1)),
            })
            .collect();
        cases.push((format!("random {t}"), slots));
    }
    let mut samples = Vec::with_capacity(cases.len());
    for (i, (label, slots)) in cases.into_iter().enumerate() {
        let v = assemble(&slots);
        let stab = g.stabilizer(&v, settings.seed.wrapping_add(i as u64))?;
        let order = stab.order()?;
        let predicted_order = predicted_imprimitive_stabilizer_order(&k_elements, h_order, n, &v);
        let steinberg_ok = steinberg_check(&stab)?;
        samples.push(Sample { label, vector: v, predicted_order, order, steinberg_ok, ok: steinberg_ok && order == predicted_order });
    }
    timer.lap("samples");
    let predicted_group_order = imprimitive_order(k_elements.len() as u128, h_order, n);
    Ok(ImprimitiveReport {
        provenance: Provenance::new(settings),
        k: kind.to_string(),
        k_order: k_elements.len() as u128,
        h: selector,
        h_order,
        n,
        pass: group_order == predicted_group_order && samples.iter().all(|s| s.ok),
        group_order,
        predicted_group_order,
        samples,
        timings_ms: timer.finish(),
    })
}
