use std::collections::BTreeMap;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::adders::{build, AdderSpec};
use crate::area::{area_report, AreaModel};
use crate::netlist::GateKind;
use crate::power::toggle_power_proxy;
use crate::timing::{critical_path, TimingModel};

use super::{random_vectors, verify, AnalysisError, VerifyMode};

pub const CSV_HEADER: [&str; 7] = [
    "name",
    "delay",
    "area",
    "gates",
    "power_proxy",
    "pdp",
    "normalized_pdp",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelNames {
    pub timing: String,
    pub area: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub name: String,
    pub delay: f64,
    pub area: f64,
    pub gates: usize,
    pub census: BTreeMap<GateKind, usize>,
    pub power_proxy: u64,
    /// `delay * power_proxy`.
    pub pdp: f64,
    pub normalized_pdp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub models: ModelNames,
    pub seed: u64,
    pub vectors: usize,
    pub rows: Vec<MetricsRow>,
}

impl MetricsReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("in-memory write");
        for r in &self.rows {
            w.write_record([
                r.name.clone(),
                r.delay.to_string(),
                r.area.to_string(),
                r.gates.to_string(),
                r.power_proxy.to_string(),
                r.pdp.to_string(),
                r.normalized_pdp.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    pub fn row(&self, name: &str) -> Option<&MetricsRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

/// Each value divided by the maximum. The first maximal entry is exactly 1.
pub fn normalized_pdp(pdps: &[f64]) -> Result<Vec<f64>, AnalysisError> {
    if pdps.is_empty() {
        return Err(AnalysisError::EmptyReport);
    }
    let mut top = 0;
    for (row, &value) in pdps.iter().enumerate() {
        if !(value > 0.0 && value.is_finite()) {
            return Err(AnalysisError::NonPositivePdp { row, value });
        }
        if value > pdps[top] {
            top = row;
        }
    }
    let max = pdps[top];
    Ok(pdps
        .iter()
        .enumerate()
        .map(|(i, &p)| if i == top { 1.0 } else { p / max })
        .collect())
}

/// Builds, verifies and measures every spec. Rows are evaluated in
/// parallel and reported in input order.
///
/// Each adder is checked against `vectors` seeded random vectors plus the
/// directed corners; the same random vectors drive the power proxy.
pub fn compare(
    specs: &[AdderSpec],
    timing: &TimingModel,
    area: &AreaModel,
    vectors: usize,
    seed: u64,
) -> Result<MetricsReport, AnalysisError> {
    if specs.is_empty() {
        return Err(AnalysisError::EmptyReport);
    }
    let mut widths: Vec<usize> = specs.iter().map(|s| s.width).collect();
    widths.sort_unstable();
    widths.dedup();
    if widths.len() > 1 {
        return Err(AnalysisError::MixedWidths(widths));
    }

    let results: Vec<Result<MetricsRow, AnalysisError>> = thread::scope(|scope| {
        let handles: Vec<_> = specs
            .iter()
            .map(|spec| scope.spawn(move || measure(spec, timing, area, vectors, seed)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("row worker panicked"))
            .collect()
    });
    let mut rows = results.into_iter().collect::<Result<Vec<_>, _>>()?;

    let pdps: Vec<f64> = rows.iter().map(|r| r.pdp).collect();
    for (row, n) in rows.iter_mut().zip(normalized_pdp(&pdps)?) {
        row.normalized_pdp = n;
    }
    Ok(MetricsReport {
        models: ModelNames {
            timing: timing.name().to_string(),
            area: area.name().to_string(),
        },
        seed,
        vectors,
        rows,
    })
}

fn measure(
    spec: &AdderSpec,
    timing: &TimingModel,
    area: &AreaModel,
    vectors: usize,
    seed: u64,
) -> Result<MetricsRow, AnalysisError> {
    let netlist = build(spec)?;
    for mode in [
        VerifyMode::Random {
            count: vectors,
            seed,
        },
        VerifyMode::Directed,
    ] {
        let outcome = verify(&netlist, mode)?;
        if let Some(c) = outcome.counterexample() {
            return Err(AnalysisError::VerificationFailed {
                name: netlist.name.clone(),
                detail: format!("{mode}: {c}"),
            });
        }
    }
    let delay = critical_path(&netlist, timing).delay;
    let report = area_report(&netlist, area);
    let stimulus = random_vectors(
        netlist.width,
        netlist.carry_in_mode.has_input(),
        vectors.max(2),
        seed,
    );
    let power_proxy = toggle_power_proxy(&netlist, &stimulus)?.power_proxy;
    Ok(MetricsRow {
        name: netlist.name,
        delay,
        area: report.total,
        gates: report.gate_count(),
        census: report.census,
        power_proxy,
        pdp: delay * power_proxy as f64,
        normalized_pdp: 0.0,
    })
}
