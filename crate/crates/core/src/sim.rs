//! Zero-delay functional simulation.
//!
//! Two routes share nothing but [`GateKind`](crate::netlist::GateKind) semantics: [`simulate_bits`]
//! evaluates one assignment gate by gate over `bool`s, while [`Simulator`]
//! evaluates 64 assignments per pass with one `u64` lane per vector.

use thiserror::Error;

use crate::netlist::Netlist;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimError {
    #[error("expected {expected} input bits, got {got}")]
    InputCount { expected: usize, got: usize },
    #[error("operand {value:#x} does not fit in {width} bits")]
    OperandRange { value: u64, width: usize },
    #[error("carry input {0}")]
    CarryPresence(&'static str),
    #[error("netlist has a cycle or undriven input")]
    NotEvaluable,
    #[error("adders wider than 64 bits are not simulated")]
    TooWide,
}

/// One adder input vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Vector {
    pub a: u64,
    pub b: u64,
    /// Present only for netlists with a variable carry input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cin: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdderOutput {
    pub sum: u64,
    pub cout: bool,
}

/// Evaluates a single assignment of the primary inputs (in port order) and
/// returns the value of every net.
pub fn simulate_bits(netlist: &Netlist, inputs: &[bool]) -> Result<Vec<bool>, SimError> {
    if inputs.len() != netlist.inputs.len() {
        return Err(SimError::InputCount {
            expected: netlist.inputs.len(),
            got: inputs.len(),
        });
    }
    let order = netlist.eval_order().ok_or(SimError::NotEvaluable)?;
    let mut values = vec![false; netlist.nets.len()];
    for (net, &v) in netlist.inputs.iter().zip(inputs) {
        values[net.index()] = v;
    }
    let mut scratch = Vec::with_capacity(3);
    for idx in order {
        let gate = &netlist.gates[idx];
        scratch.clear();
        scratch.extend(gate.inputs.iter().map(|n| values[n.index()]));
        values[gate.output.index()] = gate.kind.eval(&scratch);
    }
    Ok(values)
}

fn check_vector(netlist: &Netlist, v: &Vector) -> Result<(), SimError> {
    let width = netlist.width;
    if width > 64 {
        return Err(SimError::TooWide);
    }
    for value in [v.a, v.b] {
        if width < 64 && value >> width != 0 {
            return Err(SimError::OperandRange { value, width });
        }
    }
    match (netlist.carry_in_mode.has_input(), v.cin) {
        (true, None) => Err(SimError::CarryPresence("missing")),
        (false, Some(_)) => Err(SimError::CarryPresence("not accepted by this netlist")),
        _ => Ok(()),
    }
}

/// Primary input bits for `v`, in port order.
pub fn vector_bits(netlist: &Netlist, v: &Vector) -> Result<Vec<bool>, SimError> {
    check_vector(netlist, v)?;
    let w = netlist.width;
    let mut bits: Vec<bool> = (0..w).map(|i| v.a >> i & 1 == 1).collect();
    bits.extend((0..w).map(|i| v.b >> i & 1 == 1));
    if let Some(c) = v.cin {
        bits.push(c);
    }
    Ok(bits)
}

/// Simulates one operand vector through an adder netlist.
pub fn simulate(netlist: &Netlist, v: &Vector) -> Result<AdderOutput, SimError> {
    let bits = vector_bits(netlist, v)?;
    let values = simulate_bits(netlist, &bits)?;
    let sum = netlist
        .sum_outputs()
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, n)| acc | (values[n.index()] as u64) << i);
    let cout = netlist.carry_out().is_some_and(|n| values[n.index()]);
    Ok(AdderOutput { sum, cout })
}

/// Bit-parallel evaluator, 64 vectors per pass.
#[derive(Debug, Clone)]
pub struct Simulator<'a> {
    netlist: &'a Netlist,
    order: Vec<usize>,
}

impl<'a> Simulator<'a> {
    pub fn new(netlist: &'a Netlist) -> Result<Self, SimError> {
        if netlist.width > 64 {
            return Err(SimError::TooWide);
        }
        let order = netlist.eval_order().ok_or(SimError::NotEvaluable)?;
        Ok(Simulator { netlist, order })
    }

    pub fn netlist(&self) -> &'a Netlist {
        self.netlist
    }

    /// Evaluates all nets given one word per primary input. `values` is
    /// resized to the net count and overwritten.
    pub fn run_words(&self, input_words: &[u64], values: &mut Vec<u64>) {
        values.clear();
        values.resize(self.netlist.nets.len(), 0);
        for (net, &w) in self.netlist.inputs.iter().zip(input_words) {
            values[net.index()] = w;
        }
        let mut ins = [0u64; 3];
        for &idx in &self.order {
            let gate = &self.netlist.gates[idx];
            for (slot, n) in ins.iter_mut().zip(&gate.inputs) {
                *slot = values[n.index()];
            }
            values[gate.output.index()] = gate.kind.eval_word(&ins[..gate.inputs.len()]);
        }
    }

    /// Packs up to 64 vectors into per-input words (lane `j` holds vector `j`).
    pub fn pack(&self, vectors: &[Vector]) -> Result<Vec<u64>, SimError> {
        debug_assert!(vectors.len() <= 64);
        let w = self.netlist.width;
        let mut words = vec![0u64; self.netlist.inputs.len()];
        for (lane, v) in vectors.iter().enumerate() {
            check_vector(self.netlist, v)?;
            for i in 0..w {
                words[i] |= (v.a >> i & 1) << lane;
                words[w + i] |= (v.b >> i & 1) << lane;
            }
            if let Some(c) = v.cin {
                words[2 * w] |= (c as u64) << lane;
            }
        }
        Ok(words)
    }

    /// Extracts the adder outputs of the first `lanes` lanes.
    pub fn unpack(&self, values: &[u64], lanes: usize) -> Vec<AdderOutput> {
        let sums = self.netlist.sum_outputs();
        let cout = self.netlist.carry_out();
        (0..lanes)
            .map(|lane| AdderOutput {
                sum: sums.iter().enumerate().fold(0u64, |acc, (i, n)| {
                    acc | (values[n.index()] >> lane & 1) << i
                }),
                cout: cout.is_some_and(|n| values[n.index()] >> lane & 1 == 1),
            })
            .collect()
    }

    /// Simulates any number of vectors, in order.
    pub fn run_vectors(&self, vectors: &[Vector]) -> Result<Vec<AdderOutput>, SimError> {
        let mut out = Vec::with_capacity(vectors.len());
        let mut values = Vec::new();
        for chunk in vectors.chunks(64) {
            let words = self.pack(chunk)?;
            self.run_words(&words, &mut values);
            out.extend(self.unpack(&values, chunk.len()));
        }
        Ok(out)
    }
}
