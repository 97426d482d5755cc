//! Verification against integer addition, cross-adder comparison and the
//! hybrid-adder partition sweeps.

mod compare;
mod decompose;
mod oracle;
mod roster;
mod sweep;
mod vectors;
mod verify;

use thiserror::Error;

use crate::adders::BuildError;
use crate::power::PowerError;
use crate::sim::SimError;

pub use compare::{compare, normalized_pdp, MetricsReport, MetricsRow, ModelNames, CSV_HEADER};
pub use decompose::{enumerate_decompositions, msf_label};
pub use oracle::oracle_add;
pub use roster::{roster, table2_variants, table3_roster};
pub use sweep::{
    decomposition_sweep, fbha_subsumption, partition_sweep, Dominance, ModulePolicy, Subsumption,
    SweepOptions, SweepReport, SweepRow,
};
pub use vectors::{directed_vectors, random_vectors};
pub use verify::{
    verify, Counterexample, VerifyMode, VerifyOutcome, VerifyResult, EXHAUSTIVE_MAX_BITS,
};

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("operand {value:#x} out of range for {width} bits")]
    OperandRange { value: u64, width: usize },
    #[error("width too large for exhaustive: {bits} input bits exceeds {max}")]
    ExhaustiveTooWide { bits: usize, max: usize },
    #[error("specs must share one width, found {0:?}")]
    MixedWidths(Vec<usize>),
    #[error("{name}: verification failed: {detail}")]
    VerificationFailed { name: String, detail: String },
    #[error("pdp must be positive, row {row} has {value}")]
    NonPositivePdp { row: usize, value: f64 },
    #[error("report has no rows")]
    EmptyReport,
    #[error("{k} cannot be decomposed into modules of sizes {sizes:?}")]
    Undecomposable { k: usize, sizes: Vec<usize> },
    #[error("{0} has no lookahead carry-out net")]
    NotHybrid(String),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Power(#[from] PowerError),
}
