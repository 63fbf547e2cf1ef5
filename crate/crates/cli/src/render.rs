//! Markdown rendering and one-screen summaries of reports.

use std::fmt::Write;

use serde::Serialize;
use sympar::linalg::ExactVector;
use sympar::reflection::ParabolicRecord;

use crate::chain::ChainReport;
use crate::imprimitive::ImprimitiveReport;
use crate::report::{OrderReport, Provenance, RootCorrection, StabilizerReport};
use crate::verify::{RowStatus, VerificationReport};

/// A report the command line can emit.
pub trait Render: Serialize {
    fn markdown(&self) -> String;
    fn summary(&self) -> String;
    fn passed(&self) -> bool;

    /// Pretty JSON with a trailing newline; byte-identical for equal reports.
    fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

pub fn vector(v: &ExactVector) -> String {
    let entries: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("({})", entries.join(", "))
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn provenance(out: &mut String, p: &Provenance) {
    let _ = writeln!(out, "\n---\n\nsympar {} (report schema {}), seed {}", p.tool_version, p.schema_version, p.seed);
    for (file, sum) in &p.data_checksums {
        let _ = writeln!(out, "- `{file}` sha256 `{sum}`");
    }
}

fn corrections(out: &mut String, cs: &[RootCorrection]) {
    for c in cs {
        let _ = writeln!(
            out,
            "\n> Root line {} is used in corrected form {} (printed {}): {}",
            c.index,
            vector(&c.used),
            vector(&c.printed),
            c.note
        );
    }
}

fn record_cells(r: &ParabolicRecord) -> String {
    format!(
        "{} | {} | {} | {} | {}",
        r.order,
        r.fingerprint.rank,
        r.steinberg.reflection_count,
        if r.steinberg_ok { "yes" } else { "no" },
        r.recognized_type
    )
}

fn status(s: RowStatus) -> &'static str {
    match s {
        RowStatus::AsPrinted => "as printed",
        RowStatus::Resolved => "ambiguity resolved",
        RowStatus::Corrected => "corrected vector",
        RowStatus::Mismatch => "MISMATCH",
    }
}

impl Render for VerificationReport {
    fn markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# W({}): maximal parabolic subgroups\n", self.group);
        let _ = writeln!(
            out,
            "Order: computed {}, claimed {}. Mode: {}. Result: **{}** ({} as printed).",
            self.computed_order,
            self.claimed_order.map_or("none".to_string(), |o| o.to_string()),
            match self.mode {
                crate::VerifyMode::FullLattice => "full lattice",
                crate::VerifyMode::TableVectors => "table vectors",
            },
            verdict(self.summary.pass),
            verdict(self.summary.pass_as_printed),
        );
        corrections(&mut out, &self.root_corrections);
        let _ = writeln!(out, "\n| | Type | Vector | Reading | Order | Rank | Reflections | Steinberg | Recognized | Class |");
        let _ = writeln!(out, "|---|---|---|---|---|---|---|---|---|---|");
        for row in &self.rows {
            for (i, r) in row.readings.iter().enumerate() {
                let mark = if row.matched_reading == Some(i) { " (matches)" } else { "" };
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {}{} | {} | {} |",
                    if i == 0 { &row.label } else { "" },
                    if i == 0 { &row.expected_type } else { "" },
                    vector(&r.literal),
                    r.reading,
                    mark,
                    record_cells(&r.record),
                    r.record.conjugacy_class_id,
                );
            }
        }
        let _ = writeln!(out);
        for row in &self.rows {
            let _ = writeln!(out, "- {} {}: {}", row.label, row.expected_type, status(row.status));
        }
        if let Some(l) = &self.lattice {
            let _ = writeln!(
                out,
                "\n## Fixed-space lattice\n\n{} lattice elements in {} classes; {} maximal classes (table rows: {}); classification {}.\n",
                l.lattice_size,
                l.classes.len(),
                l.maximal_classes,
                l.expected_maximal_classes,
                verdict(l.classification_ok)
            );
            let _ = writeln!(out, "| Class | Size | Fixed dim | Order | Rank | Reflections | Steinberg | Recognized | Maximal |");
            let _ = writeln!(out, "|---|---|---|---|---|---|---|---|---|");
            for r in &l.classes {
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} |",
                    r.conjugacy_class_id,
                    r.class_size.map_or("?".into(), |s| s.to_string()),
                    r.fixed_space.dim(),
                    record_cells(r),
                    if r.is_maximal == Some(true) { "yes" } else { "" }
                );
            }
        }
        let _ = writeln!(out);
        for s in &self.scope {
            let _ = writeln!(out, "- {s}");
        }
        provenance(&mut out, &self.provenance);
        out
    }

    fn summary(&self) -> String {
        let mut out = format!(
            "W({}) order {} (claimed {}), {} rows: {} as printed, {} resolved, {} corrected, {} mismatched",
            self.group,
            self.computed_order,
            self.claimed_order.map_or("none".to_string(), |o| o.to_string()),
            self.summary.rows,
            self.summary.rows_as_printed,
            self.summary.rows_resolved,
            self.summary.rows_corrected,
            self.summary.rows_mismatched
        );
        if let Some(l) = &self.lattice {
            let _ = write!(out, "; lattice {} elements, {} maximal classes", l.lattice_size, l.maximal_classes);
        }
        let _ = write!(out, "\n{} ({} as printed)", verdict(self.summary.pass), verdict(self.summary.pass_as_printed));
        out
    }

    fn passed(&self) -> bool {
        self.summary.pass
    }
}

impl Render for OrderReport {
    fn markdown(&self) -> String {
        let mut out = format!(
            "# W({}): order\n\nComputed {}, claimed {}: **{}**.\n",
            self.group,
            self.computed_order,
            self.expected_order.map_or("none".to_string(), |o| o.to_string()),
            verdict(self.pass)
        );
        corrections(&mut out, &self.root_corrections);
        provenance(&mut out, &self.provenance);
        out
    }

    fn summary(&self) -> String {
        self.computed_order.to_string()
    }

    fn passed(&self) -> bool {
        self.pass
    }
}

impl Render for StabilizerReport {
    fn markdown(&self) -> String {
        let r = &self.record;
        let mut out = format!("# Stabilizer in W({})\n\nVector {} ({:?} action).\n\n", self.group, vector(&self.input), self.vector_action);
        let _ = writeln!(out, "| Order | Rank | Reflections | Steinberg | Recognized | Fixed dim | Index |");
        let _ = writeln!(out, "|---|---|---|---|---|---|---|");
        let _ = writeln!(out, "| {} | {} | {} |", record_cells(r), r.fixed_space.dim(), self.group_order / r.order);
        provenance(&mut out, &self.provenance);
        out
    }

    fn summary(&self) -> String {
        format!(
            "stabilizer order {}, rank {}, {} reflections, steinberg {}, type {}",
            self.record.order,
            self.record.fingerprint.rank,
            self.record.steinberg.reflection_count,
            self.record.steinberg_ok,
            self.record.recognized_type
        )
    }

    fn passed(&self) -> bool {
        self.pass
    }
}

impl Render for ChainReport {
    fn markdown(&self) -> String {
        let mut out = String::from("# Chain of parabolic subgroups\n\n| Claim | Source | Order | Index | Orbit | Steinberg | Recognized | Result |\n|---|---|---|---|---|---|---|---|\n");
        for f in &self.facts {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} | {} | {} |",
                f.claim,
                f.source,
                f.record.order,
                f.index,
                f.orbit_length.map_or(String::new(), |n| n.to_string()),
                if f.record.steinberg_ok { "yes" } else { "no" },
                f.record.recognized_type,
                verdict(f.ok)
            );
        }
        for f in &self.facts {
            corrections(&mut out, &f.root_corrections);
        }
        let _ = writeln!(out);
        for s in &self.scope {
            let _ = writeln!(out, "- {s}");
        }
        provenance(&mut out, &self.provenance);
        out
    }

    fn summary(&self) -> String {
        let mut out = String::new();
        for f in &self.facts {
            let _ = writeln!(out, "{}: {} (order {}, index {})", f.claim, verdict(f.ok), f.record.order, f.index);
        }
        for s in &self.scope {
            let _ = writeln!(out, "{s}");
        }
        let _ = write!(out, "{} ({} as printed)", verdict(self.pass), verdict(self.pass_as_printed));
        out
    }

    fn passed(&self) -> bool {
        self.pass
    }
}

impl Render for ImprimitiveReport {
    fn markdown(&self) -> String {
        let mut out = format!(
            "# G_{}(K, H), K = {} (order {}), H = {:?} (order {})\n\nGroup order {} (predicted {}).\n\n| Sample | Vector | Predicted | Order | Steinberg | Result |\n|---|---|---|---|---|---|\n",
            self.n, self.k, self.k_order, self.h, self.h_order, self.group_order, self.predicted_group_order
        );
        for s in &self.samples {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} | {} |",
                s.label,
                vector(&s.vector),
                s.predicted_order,
                s.order,
                if s.steinberg_ok { "yes" } else { "no" },
                verdict(s.ok)
            );
        }
        provenance(&mut out, &self.provenance);
        out
    }

    fn summary(&self) -> String {
        let ok = self.samples.iter().filter(|s| s.ok).count();
        format!(
            "G_{}({}, {:?}) order {} (predicted {}); {}/{} samples match\n{}",
            self.n,
            self.k,
            self.h,
            self.group_order,
            self.predicted_group_order,
            ok,
            self.samples.len(),
            verdict(self.pass)
        )
    }

    fn passed(&self) -> bool {
        self.pass
    }
}
