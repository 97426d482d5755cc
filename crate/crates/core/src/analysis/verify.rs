use std::fmt;

use serde::{Deserialize, Serialize};

use crate::netlist::Netlist;
use crate::sim::{AdderOutput, Simulator, Vector};

use super::{directed_vectors, oracle_add, random_vectors, AnalysisError};

/// Exhaustive verification is refused above this many input bits.
pub const EXHAUSTIVE_MAX_BITS: usize = 24;

const BATCH: usize = 64 * 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    Exhaustive,
    Random { count: usize, seed: u64 },
    Directed,
}

impl fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyMode::Exhaustive => f.write_str("exhaustive"),
            VerifyMode::Random { count, seed } => write!(f, "random({count}, seed {seed})"),
            VerifyMode::Directed => f.write_str("directed"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub a: u64,
    pub b: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cin: Option<bool>,
    pub expected_sum: u64,
    pub expected_cout: bool,
    pub actual_sum: u64,
    pub actual_cout: bool,
}

impl Counterexample {
    pub fn vector(&self) -> Vector {
        Vector {
            a: self.a,
            b: self.b,
            cin: self.cin,
        }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={:#x} b={:#x}", self.a, self.b)?;
        if let Some(c) = self.cin {
            write!(f, " cin={}", c as u8)?;
        }
        write!(
            f,
            ": expected sum={:#x} cout={}, got sum={:#x} cout={}",
            self.expected_sum, self.expected_cout as u8, self.actual_sum, self.actual_cout as u8
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyResult {
    Pass,
    Counterexample(Counterexample),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutcome {
    pub mode: VerifyMode,
    pub vectors_run: u64,
    pub result: VerifyResult,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.result == VerifyResult::Pass
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match &self.result {
            VerifyResult::Counterexample(c) => Some(c),
            VerifyResult::Pass => None,
        }
    }
}

/// Checks the netlist against [`oracle_add`] and stops at the first
/// mismatching vector. Exhaustive mode walks every input combination in
/// numeric order, with `a` in the low bits, then `b`, then the carry.
pub fn verify(netlist: &Netlist, mode: VerifyMode) -> Result<VerifyOutcome, AnalysisError> {
    let width = netlist.width;
    let with_cin = netlist.carry_in_mode.has_input();
    let sim = Simulator::new(netlist)?;
    let mut checker = Checker {
        sim: &sim,
        width,
        fixed_cin: netlist.carry_in_mode.fixed_value().unwrap_or(false),
        run: 0,
    };

    let found = match mode {
        VerifyMode::Exhaustive => {
            let bits = 2 * width + with_cin as usize;
            if bits > EXHAUSTIVE_MAX_BITS {
                return Err(AnalysisError::ExhaustiveTooWide {
                    bits,
                    max: EXHAUSTIVE_MAX_BITS,
                });
            }
            let total = 1u64 << bits;
            let mask = (1u64 << width) - 1;
            let mut found = None;
            let mut start = 0u64;
            while start < total && found.is_none() {
                let end = (start + BATCH as u64).min(total);
                let batch: Vec<Vector> = (start..end)
                    .map(|v| Vector {
                        a: v & mask,
                        b: (v >> width) & mask,
                        cin: with_cin.then_some(v >> (2 * width) & 1 == 1),
                    })
                    .collect();
                found = checker.check(&batch)?;
                start = end;
            }
            found
        }
        VerifyMode::Random { count, seed } => {
            checker.check_all(&random_vectors(width, with_cin, count, seed))?
        }
        VerifyMode::Directed => checker.check_all(&directed_vectors(width, with_cin))?,
    };

    Ok(VerifyOutcome {
        mode,
        vectors_run: checker.run,
        result: found.map_or(VerifyResult::Pass, VerifyResult::Counterexample),
    })
}

struct Checker<'a> {
    sim: &'a Simulator<'a>,
    width: usize,
    fixed_cin: bool,
    run: u64,
}

impl Checker<'_> {
    fn check_all(&mut self, vectors: &[Vector]) -> Result<Option<Counterexample>, AnalysisError> {
        for chunk in vectors.chunks(BATCH) {
            if let Some(c) = self.check(chunk)? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    fn check(&mut self, vectors: &[Vector]) -> Result<Option<Counterexample>, AnalysisError> {
        let outputs = self.sim.run_vectors(vectors)?;
        for (v, AdderOutput { sum, cout }) in vectors.iter().zip(outputs) {
            self.run += 1;
            let (expected_sum, expected_cout) =
                oracle_add(v.a, v.b, v.cin.unwrap_or(self.fixed_cin), self.width)?;
            if (sum, cout) != (expected_sum, expected_cout) {
                return Ok(Some(Counterexample {
                    a: v.a,
                    b: v.b,
                    cin: v.cin,
                    expected_sum,
                    expected_cout,
                    actual_sum: sum,
                    actual_cout: cout,
                }));
            }
        }
        Ok(None)
    }
}
