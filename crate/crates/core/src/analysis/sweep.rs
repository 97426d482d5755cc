use serde::{Deserialize, Serialize};

use crate::adders::{build, AdderSpec, ClaStyle, CLA_COUT_NET};
use crate::area::{area_report, AreaModel};
use crate::netlist::{GateKind, Netlist};
use crate::timing::{arrival_times, critical_path, TimingModel};

use super::{msf_label, verify, AnalysisError, VerifyMode};

/// How the lookahead width `K` is cut into modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModulePolicy {
    /// Equal modules of this size; `K` must be a multiple.
    Uniform(usize),
    /// Largest allowed size first while the remainder stays representable.
    Greedy(Vec<usize>),
}

impl ModulePolicy {
    /// Module sizes for `k` bits, least significant first.
    pub fn modules(&self, k: usize) -> Result<Vec<usize>, AnalysisError> {
        let fail = |sizes: Vec<usize>| AnalysisError::Undecomposable { k, sizes };
        match self {
            ModulePolicy::Uniform(m) => {
                if *m == 0 || k == 0 || !k.is_multiple_of(*m) {
                    Err(fail(vec![*m]))
                } else {
                    Ok(vec![*m; k / m])
                }
            }
            ModulePolicy::Greedy(sizes) => {
                let mut sorted: Vec<usize> = sizes.iter().copied().filter(|&s| s > 0).collect();
                sorted.sort_unstable_by(|a, b| b.cmp(a));
                sorted.dedup();
                // reachable[r]: r bits can be covered by the allowed sizes
                let mut reachable = vec![false; k + 1];
                reachable[0] = true;
                for r in 1..=k {
                    reachable[r] = sorted.iter().any(|&s| s <= r && reachable[r - s]);
                }
                if k == 0 || !reachable[k] {
                    return Err(fail(sizes.clone()));
                }
                let mut msf = Vec::new();
                let mut left = k;
                while left > 0 {
                    let s = *sorted
                        .iter()
                        .find(|&&s| s <= left && reachable[left - s])
                        .expect("reachable remainder");
                    msf.push(s);
                    left -= s;
                }
                msf.reverse();
                Ok(msf)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominance {
    /// The lookahead carry-out is the last signal to reach the muxes.
    Cla,
    /// Some precomputed select-block result arrives after the carry-out.
    Csla,
}

/// Timing breakdown of a hybrid adder around its select multiplexers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Subsumption {
    pub cla_arrival: f64,
    /// Latest data input arrival over the muxes driven by the carry-out.
    pub csla_arrival: f64,
    pub mux_delay: f64,
    pub delay: f64,
    pub dominant: Dominance,
}

impl Subsumption {
    /// Whether the total delay is the carry-out arrival plus one mux.
    pub fn carry_subsumes(&self) -> bool {
        self.delay == self.cla_arrival + self.mux_delay
    }
}

pub fn fbha_subsumption(
    netlist: &Netlist,
    timing: &TimingModel,
) -> Result<Subsumption, AnalysisError> {
    let select = netlist
        .net_named(CLA_COUT_NET)
        .ok_or_else(|| AnalysisError::NotHybrid(netlist.name.clone()))?;
    let arrival = arrival_times(netlist, timing);
    let csla_arrival = netlist
        .gates
        .iter()
        .filter(|g| g.kind == GateKind::Mux2 && g.inputs[0] == select)
        .flat_map(|g| g.inputs[1..].iter().map(|n| arrival[n.index()]))
        .fold(0.0, f64::max);
    let cla_arrival = arrival[select.index()];
    Ok(Subsumption {
        cla_arrival,
        csla_arrival,
        mux_delay: timing.delay(GateKind::Mux2),
        delay: critical_path(netlist, timing).delay,
        dominant: if csla_arrival > cla_arrival {
            Dominance::Csla
        } else {
            Dominance::Cla
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub name: String,
    /// Width of the select part (`X`).
    pub csla_width: usize,
    /// Width of the lookahead part (`K`).
    pub cla_width: usize,
    /// Least significant module first.
    pub modules: Vec<usize>,
    /// Most-significant-first module label, such as `844422`.
    pub label: String,
    pub delay: f64,
    pub area: f64,
    pub gates: usize,
    pub cla_arrival: f64,
    pub csla_arrival: f64,
    pub dominant: Dominance,
    pub vectors_verified: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub width: usize,
    pub timing: String,
    pub area: String,
    pub rows: Vec<SweepRow>,
    /// Index of the fastest row.
    pub argmin: usize,
}

impl SweepReport {
    pub fn best(&self) -> &SweepRow {
        &self.rows[self.argmin]
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Shared knobs for both sweeps.
#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub area: AreaModel,
    /// Random vectors per row, in addition to the directed corners.
    pub vectors: usize,
    pub seed: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            area: AreaModel::tcount(),
            vectors: 100_000,
            seed: 0,
        }
    }
}

/// One hybrid per select width `X`, lookahead part `N - X` cut by `policy`.
/// The best row minimizes delay, then gate count, then `X`.
pub fn partition_sweep(
    width: usize,
    csla_widths: &[usize],
    policy: &ModulePolicy,
    style: ClaStyle,
    timing: &TimingModel,
    options: &SweepOptions,
) -> Result<SweepReport, AnalysisError> {
    let mut specs = Vec::with_capacity(csla_widths.len());
    for &x in csla_widths {
        let k = width.saturating_sub(x);
        specs.push(AdderSpec::fbha(width, k, &policy.modules(k)?, style));
    }
    let rows = run_rows(&specs, timing, options)?;
    let argmin = argmin(&rows, |r| r.csla_width);
    Ok(report(width, timing, options, rows, argmin))
}

/// Fixed split `N - k | k`, one row per module decomposition. The best row
/// minimizes delay, then gate count, then input position.
pub fn decomposition_sweep(
    width: usize,
    k: usize,
    decompositions: &[Vec<usize>],
    style: ClaStyle,
    timing: &TimingModel,
    options: &SweepOptions,
) -> Result<SweepReport, AnalysisError> {
    let specs: Vec<AdderSpec> = decompositions
        .iter()
        .map(|d| AdderSpec::fbha(width, k, d, style))
        .collect();
    let rows = run_rows(&specs, timing, options)?;
    let argmin = argmin(&rows, |_| 0);
    Ok(report(width, timing, options, rows, argmin))
}

fn report(
    width: usize,
    timing: &TimingModel,
    options: &SweepOptions,
    rows: Vec<SweepRow>,
    argmin: usize,
) -> SweepReport {
    SweepReport {
        width,
        timing: timing.name().to_string(),
        area: options.area.name().to_string(),
        rows,
        argmin,
    }
}

fn argmin(rows: &[SweepRow], tiebreak: impl Fn(&SweepRow) -> usize) -> usize {
    let mut best = 0;
    for (i, r) in rows.iter().enumerate().skip(1) {
        let b = &rows[best];
        let better = r.delay < b.delay
            || (r.delay == b.delay && (r.gates, tiebreak(r)) < (b.gates, tiebreak(b)));
        if better {
            best = i;
        }
    }
    best
}

fn run_rows(
    specs: &[AdderSpec],
    timing: &TimingModel,
    options: &SweepOptions,
) -> Result<Vec<SweepRow>, AnalysisError> {
    if specs.is_empty() {
        return Err(AnalysisError::EmptyReport);
    }
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = specs
            .iter()
            .map(|spec| scope.spawn(move || sweep_row(spec, timing, options)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    results.into_iter().collect()
}

fn sweep_row(
    spec: &AdderSpec,
    timing: &TimingModel,
    options: &SweepOptions,
) -> Result<SweepRow, AnalysisError> {
    let netlist = build(spec)?;
    let mut verified = 0;
    for mode in [
        VerifyMode::Random {
            count: options.vectors,
            seed: options.seed,
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
        verified += outcome.vectors_run;
    }
    let sub = fbha_subsumption(&netlist, timing)?;
    let area = area_report(&netlist, &options.area);
    let k = spec.k.unwrap_or(0);
    let modules = spec.module_sizes.clone().unwrap_or_default();
    Ok(SweepRow {
        name: netlist.name,
        csla_width: spec.width - k,
        cla_width: k,
        label: msf_label(&modules),
        modules,
        delay: sub.delay,
        area: area.total,
        gates: area.gate_count(),
        cla_arrival: sub.cla_arrival,
        csla_arrival: sub.csla_arrival,
        dominant: sub.dominant,
        vectors_verified: verified,
    })
}
