//! Gate-level netlist representation.
//!
//! A [`Netlist`] is a DAG of primitive gates over densely numbered nets. Every
//! net has exactly one driver: a primary input or the output of one gate.
//! Netlists are produced by [`NetlistBuilder`], which only accepts gates whose
//! inputs already exist, so builder output is acyclic and topologically
//! ordered by construction. Netlists read back from JSON may violate any of
//! this, which is what [`Netlist::validate`] is for.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Primitive cell kinds.
///
/// `Mux2` takes `(select, data0, data1)` and computes `select ? data1 : data0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GateKind {
    Not,
    And2,
    Or2,
    Nand2,
    Nor2,
    Xor2,
    Xnor2,
    Mux2,
    Const0,
    Const1,
}

impl GateKind {
    pub const ALL: [GateKind; 10] = [
        GateKind::Not,
        GateKind::And2,
        GateKind::Or2,
        GateKind::Nand2,
        GateKind::Nor2,
        GateKind::Xor2,
        GateKind::Xnor2,
        GateKind::Mux2,
        GateKind::Const0,
        GateKind::Const1,
    ];

    pub fn arity(self) -> usize {
        match self {
            GateKind::Const0 | GateKind::Const1 => 0,
            GateKind::Not => 1,
            GateKind::Mux2 => 3,
            _ => 2,
        }
    }

    pub fn is_const(self) -> bool {
        matches!(self, GateKind::Const0 | GateKind::Const1)
    }

    /// Dense index, used for per-kind lookup tables.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GateKind::Not => "NOT",
            GateKind::And2 => "AND2",
            GateKind::Or2 => "OR2",
            GateKind::Nand2 => "NAND2",
            GateKind::Nor2 => "NOR2",
            GateKind::Xor2 => "XOR2",
            GateKind::Xnor2 => "XNOR2",
            GateKind::Mux2 => "MUX2",
            GateKind::Const0 => "CONST0",
            GateKind::Const1 => "CONST1",
        }
    }

    /// Evaluates the gate on 64 independent lanes at once.
    #[inline]
    pub fn eval_word(self, ins: &[u64]) -> u64 {
        match self {
            GateKind::Not => !ins[0],
            GateKind::And2 => ins[0] & ins[1],
            GateKind::Or2 => ins[0] | ins[1],
            GateKind::Nand2 => !(ins[0] & ins[1]),
            GateKind::Nor2 => !(ins[0] | ins[1]),
            GateKind::Xor2 => ins[0] ^ ins[1],
            GateKind::Xnor2 => !(ins[0] ^ ins[1]),
            GateKind::Mux2 => (ins[0] & ins[2]) | (!ins[0] & ins[1]),
            GateKind::Const0 => 0,
            GateKind::Const1 => !0,
        }
    }

    pub fn eval(self, ins: &[bool]) -> bool {
        match self {
            GateKind::Not => !ins[0],
            GateKind::And2 => ins[0] && ins[1],
            GateKind::Or2 => ins[0] || ins[1],
            GateKind::Nand2 => !(ins[0] && ins[1]),
            GateKind::Nor2 => !(ins[0] || ins[1]),
            GateKind::Xor2 => ins[0] != ins[1],
            GateKind::Xnor2 => ins[0] == ins[1],
            GateKind::Mux2 => {
                if ins[0] {
                    ins[2]
                } else {
                    ins[1]
                }
            }
            GateKind::Const0 => false,
            GateKind::Const1 => true,
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NetId(pub u32);

impl NetId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GateId(pub u32);

impl GateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for GateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}", self.0)
    }
}

/// How the adder's carry input is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CarryInMode {
    /// No carry input; behaves as carry-in 0.
    #[default]
    None,
    /// A primary input `cin` follows the operand bits.
    Variable,
    Constant0,
    Constant1,
}

impl CarryInMode {
    pub fn has_input(self) -> bool {
        self == CarryInMode::Variable
    }

    /// The fixed carry value for non-variable modes.
    pub fn fixed_value(self) -> Option<bool> {
        match self {
            CarryInMode::None | CarryInMode::Constant0 => Some(false),
            CarryInMode::Constant1 => Some(true),
            CarryInMode::Variable => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Net {
    pub id: NetId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub id: GateId,
    pub kind: GateKind,
    #[serde(rename = "in")]
    pub inputs: Vec<NetId>,
    #[serde(rename = "out")]
    pub output: NetId,
}

/// What drives a net.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Driver {
    Input(usize),
    Gate(GateId),
}

/// A combinational adder netlist.
///
/// Inputs are ordered `A[0..N)`, `B[0..N)`, then `cin` when the carry mode is
/// variable. Outputs are `Sum[0..N)` followed by `Cout`. Bit 0 is least
/// significant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Netlist {
    pub name: String,
    pub width: usize,
    pub carry_in_mode: CarryInMode,
    pub inputs: Vec<NetId>,
    pub outputs: Vec<NetId>,
    pub nets: Vec<Net>,
    pub gates: Vec<Gate>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetlistError {
    #[error("{kind} expects {expected} inputs, got {got}")]
    ArityMismatch {
        kind: GateKind,
        expected: usize,
        got: usize,
    },
    #[error("unknown net id {0}")]
    UnknownNet(NetId),
    #[error("{kind} cannot form a reduction tree")]
    UnsupportedTreeKind { kind: GateKind },
    #[error("reduction tree needs at least one input")]
    EmptyTree,
    #[error("netlist is invalid: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("malformed netlist JSON: {0}")]
    Json(String),
}

/// A single structural problem found by [`Netlist::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NetIdNotDense {
        position: usize,
        id: NetId,
    },
    GateIdNotDense {
        position: usize,
        id: GateId,
    },
    MultipleDrivers {
        net: NetId,
    },
    UndrivenInput {
        gate: GateId,
        net: NetId,
    },
    UnknownOutputNet {
        gate: GateId,
        net: NetId,
    },
    UnknownPortNet {
        net: NetId,
    },
    UndrivenOutput {
        net: NetId,
    },
    Arity {
        gate: GateId,
        kind: GateKind,
        got: usize,
    },
    OutputCount {
        width: usize,
        got: usize,
    },
    Cycle {
        gates: Vec<GateId>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NetIdNotDense { position, id } => {
                write!(f, "net id not dense: position {position} holds {id}")
            }
            Violation::GateIdNotDense { position, id } => {
                write!(f, "gate id not dense: position {position} holds {id}")
            }
            Violation::MultipleDrivers { net } => write!(f, "multiple drivers on {net}"),
            Violation::UndrivenInput { gate, net } => {
                write!(f, "undriven input: {gate} reads {net}")
            }
            Violation::UnknownOutputNet { gate, net } => {
                write!(f, "{gate} drives unknown net {net}")
            }
            Violation::UnknownPortNet { net } => write!(f, "port refers to unknown net {net}"),
            Violation::UndrivenOutput { net } => write!(f, "undriven output {net}"),
            Violation::Arity { gate, kind, got } => {
                write!(f, "arity: {gate} is {kind} with {got} inputs")
            }
            Violation::OutputCount { width, got } => {
                write!(
                    f,
                    "output count: width {width} needs {} outputs, got {got}",
                    width + 1
                )
            }
            Violation::Cycle { gates } => {
                write!(f, "combinational cycle through {} gates", gates.len())
            }
        }
    }
}

impl Netlist {
    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn net_count(&self) -> usize {
        self.nets.len()
    }

    pub fn sum_outputs(&self) -> &[NetId] {
        &self.outputs[..self.outputs.len().saturating_sub(1)]
    }

    pub fn carry_out(&self) -> Option<NetId> {
        self.outputs.last().copied()
    }

    pub fn cin(&self) -> Option<NetId> {
        if self.carry_in_mode.has_input() {
            self.inputs.get(2 * self.width).copied()
        } else {
            None
        }
    }

    pub fn net_named(&self, name: &str) -> Option<NetId> {
        self.nets
            .iter()
            .find(|n| n.name.as_deref() == Some(name))
            .map(|n| n.id)
    }

    /// Driver of every net, indexed by net id. Assumes a valid netlist.
    pub fn drivers(&self) -> Vec<Option<Driver>> {
        let mut drivers = vec![None; self.nets.len()];
        for (pos, net) in self.inputs.iter().enumerate() {
            if let Some(slot) = drivers.get_mut(net.index()) {
                *slot = Some(Driver::Input(pos));
            }
        }
        for gate in &self.gates {
            if let Some(slot) = drivers.get_mut(gate.output.index()) {
                *slot = Some(Driver::Gate(gate.id));
            }
        }
        drivers
    }

    /// Number of loads on each net: gate input pins plus output port references.
    pub fn fanout(&self) -> Vec<usize> {
        let mut fanout = vec![0usize; self.nets.len()];
        for gate in &self.gates {
            for net in &gate.inputs {
                fanout[net.index()] += 1;
            }
        }
        for net in &self.outputs {
            fanout[net.index()] += 1;
        }
        fanout
    }

    /// Gate indices in an order where every gate follows the drivers of its
    /// inputs. Builder output is already in that order; netlists read from
    /// elsewhere are sorted. Returns `None` when there is a cycle or an input
    /// that no net drives.
    pub fn eval_order(&self) -> Option<Vec<usize>> {
        let n_nets = self.nets.len();
        let mut ready = vec![false; n_nets];
        for net in &self.inputs {
            *ready.get_mut(net.index())? = true;
        }
        let in_order = self.gates.iter().all(|g| {
            let ok = g
                .inputs
                .iter()
                .all(|n| ready.get(n.index()).copied().unwrap_or(false));
            if let Some(slot) = ready.get_mut(g.output.index()) {
                *slot = true;
            }
            ok
        });
        if in_order {
            return Some((0..self.gates.len()).collect());
        }

        // Kahn's algorithm over gate dependencies.
        let mut producer = vec![None; n_nets];
        for (idx, g) in self.gates.iter().enumerate() {
            *producer.get_mut(g.output.index())? = Some(idx);
        }
        let mut is_input = vec![false; n_nets];
        for net in &self.inputs {
            is_input[net.index()] = true;
        }
        let mut pending = vec![0usize; self.gates.len()];
        let mut consumers: Vec<Vec<usize>> = vec![Vec::new(); self.gates.len()];
        for (idx, g) in self.gates.iter().enumerate() {
            for net in &g.inputs {
                match producer.get(net.index()).copied().flatten() {
                    Some(p) => {
                        pending[idx] += 1;
                        consumers[p].push(idx);
                    }
                    None if is_input.get(net.index()).copied().unwrap_or(false) => {}
                    None => return None,
                }
            }
        }
        let mut queue: VecDeque<usize> =
            (0..self.gates.len()).filter(|&i| pending[i] == 0).collect();
        let mut order = Vec::with_capacity(self.gates.len());
        while let Some(idx) = queue.pop_front() {
            order.push(idx);
            for &c in &consumers[idx] {
                pending[c] -= 1;
                if pending[c] == 0 {
                    queue.push_back(c);
                }
            }
        }
        (order.len() == self.gates.len()).then_some(order)
    }

    /// Checks every structural invariant and reports all violations found.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        let n_nets = self.nets.len();

        for (pos, net) in self.nets.iter().enumerate() {
            if net.id.index() != pos {
                violations.push(Violation::NetIdNotDense {
                    position: pos,
                    id: net.id,
                });
            }
        }
        for (pos, gate) in self.gates.iter().enumerate() {
            if gate.id.index() != pos {
                violations.push(Violation::GateIdNotDense {
                    position: pos,
                    id: gate.id,
                });
            }
        }

        let mut driver_count = vec![0usize; n_nets];
        for &net in &self.inputs {
            match driver_count.get_mut(net.index()) {
                Some(c) => *c += 1,
                None => violations.push(Violation::UnknownPortNet { net }),
            }
        }
        for gate in &self.gates {
            if gate.inputs.len() != gate.kind.arity() {
                violations.push(Violation::Arity {
                    gate: gate.id,
                    kind: gate.kind,
                    got: gate.inputs.len(),
                });
            }
            match driver_count.get_mut(gate.output.index()) {
                Some(c) => *c += 1,
                None => violations.push(Violation::UnknownOutputNet {
                    gate: gate.id,
                    net: gate.output,
                }),
            }
        }
        for (idx, &count) in driver_count.iter().enumerate() {
            if count > 1 {
                violations.push(Violation::MultipleDrivers {
                    net: NetId(idx as u32),
                });
            }
        }
        let driven = |net: NetId| driver_count.get(net.index()).is_some_and(|&c| c > 0);
        let mut inputs_ok = true;
        for gate in &self.gates {
            for &net in &gate.inputs {
                if !driven(net) {
                    inputs_ok = false;
                    violations.push(Violation::UndrivenInput { gate: gate.id, net });
                }
            }
        }
        for &net in &self.outputs {
            if net.index() >= n_nets {
                violations.push(Violation::UnknownPortNet { net });
            } else if !driven(net) {
                violations.push(Violation::UndrivenOutput { net });
            }
        }
        if self.outputs.len() != self.width + 1 {
            violations.push(Violation::OutputCount {
                width: self.width,
                got: self.outputs.len(),
            });
        }
        let single_driver = driver_count.iter().all(|&c| c <= 1);
        if inputs_ok && single_driver && self.eval_order().is_none() {
            violations.push(Violation::Cycle {
                gates: self.cyclic_gates(),
            });
        }

        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    // Gates that never become ready under Kahn's algorithm.
    fn cyclic_gates(&self) -> Vec<GateId> {
        let mut ready = vec![false; self.nets.len()];
        for net in &self.inputs {
            if let Some(r) = ready.get_mut(net.index()) {
                *r = true;
            }
        }
        let mut done = vec![false; self.gates.len()];
        loop {
            let mut progressed = false;
            for (idx, g) in self.gates.iter().enumerate() {
                if !done[idx]
                    && g.inputs
                        .iter()
                        .all(|n| ready.get(n.index()).copied().unwrap_or(false))
                {
                    done[idx] = true;
                    if let Some(r) = ready.get_mut(g.output.index()) {
                        *r = true;
                    }
                    progressed = true;
                }
            }
            if !progressed {
                break;
            }
        }
        self.gates
            .iter()
            .zip(&done)
            .filter(|(_, &d)| !d)
            .map(|(g, _)| g.id)
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("netlist serialization is infallible")
    }

    /// Parses and validates a netlist document.
    pub fn from_json(text: &str) -> Result<Netlist, NetlistError> {
        let netlist: Netlist =
            serde_json::from_str(text).map_err(|e| NetlistError::Json(e.to_string()))?;
        netlist.validate().map_err(NetlistError::Invalid)?;
        Ok(netlist)
    }

    /// Copy of this netlist with one gate's kind replaced. Arity must match.
    pub fn with_gate_kind(&self, gate: GateId, kind: GateKind) -> Result<Netlist, NetlistError> {
        let current = self
            .gates
            .get(gate.index())
            .ok_or(NetlistError::UnknownNet(NetId(gate.0)))?;
        if current.kind.arity() != kind.arity() {
            return Err(NetlistError::ArityMismatch {
                kind,
                expected: kind.arity(),
                got: current.inputs.len(),
            });
        }
        let mut copy = self.clone();
        copy.gates[gate.index()].kind = kind;
        Ok(copy)
    }
}

/// Shape of a reduction tree built by [`NetlistBuilder::tree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeSkew {
    /// Left-balanced: the lower-indexed half gets the extra input.
    Balanced,
    /// Balanced over all but the last input; the last input passes through a
    /// single final gate.
    FavorLast,
}

/// Incremental, single-owner netlist construction.
#[derive(Debug, Clone)]
pub struct NetlistBuilder {
    name: String,
    width: usize,
    carry_in_mode: CarryInMode,
    inputs: Vec<NetId>,
    nets: Vec<Net>,
    gates: Vec<Gate>,
    const0: Option<NetId>,
    const1: Option<NetId>,
}

impl NetlistBuilder {
    /// A builder with no nets at all; add ports with [`add_input`](Self::add_input).
    pub fn new(name: impl Into<String>, width: usize, carry_in_mode: CarryInMode) -> Self {
        NetlistBuilder {
            name: name.into(),
            width,
            carry_in_mode,
            inputs: Vec::new(),
            nets: Vec::new(),
            gates: Vec::new(),
            const0: None,
            const1: None,
        }
    }

    /// A builder pre-populated with the adder ports `a[i]`, `b[i]` and `cin`.
    /// Returns the builder with the `a`, `b` and optional `cin` nets.
    pub fn for_adder(
        name: impl Into<String>,
        width: usize,
        carry_in_mode: CarryInMode,
    ) -> (Self, Vec<NetId>, Vec<NetId>, Option<NetId>) {
        let mut b = Self::new(name, width, carry_in_mode);
        let a: Vec<_> = (0..width).map(|i| b.add_input(format!("a[{i}]"))).collect();
        let bb: Vec<_> = (0..width).map(|i| b.add_input(format!("b[{i}]"))).collect();
        let cin = carry_in_mode.has_input().then(|| b.add_input("cin"));
        (b, a, bb, cin)
    }

    fn fresh_net(&mut self, name: Option<String>) -> NetId {
        let id = NetId(self.nets.len() as u32);
        self.nets.push(Net { id, name });
        id
    }

    pub fn add_input(&mut self, name: impl Into<String>) -> NetId {
        let id = self.fresh_net(Some(name.into()));
        self.inputs.push(id);
        id
    }

    pub fn name_net(&mut self, net: NetId, name: impl Into<String>) {
        self.nets[net.index()].name = Some(name.into());
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn add_gate(&mut self, kind: GateKind, inputs: &[NetId]) -> Result<NetId, NetlistError> {
        if inputs.len() != kind.arity() {
            return Err(NetlistError::ArityMismatch {
                kind,
                expected: kind.arity(),
                got: inputs.len(),
            });
        }
        if let Some(&bad) = inputs.iter().find(|n| n.index() >= self.nets.len()) {
            return Err(NetlistError::UnknownNet(bad));
        }
        let output = self.fresh_net(None);
        self.gates.push(Gate {
            id: GateId(self.gates.len() as u32),
            kind,
            inputs: inputs.to_vec(),
            output,
        });
        Ok(output)
    }

    /// Shared constant net, created on first use.
    pub fn constant(&mut self, value: bool) -> NetId {
        let slot = if value { self.const1 } else { self.const0 };
        if let Some(net) = slot {
            return net;
        }
        let kind = if value {
            GateKind::Const1
        } else {
            GateKind::Const0
        };
        let net = self.add_gate(kind, &[]).expect("constants have no inputs");
        if value {
            self.const1 = Some(net);
        } else {
            self.const0 = Some(net);
        }
        net
    }

    pub fn not(&mut self, a: NetId) -> Result<NetId, NetlistError> {
        self.add_gate(GateKind::Not, &[a])
    }

    pub fn and(&mut self, a: NetId, b: NetId) -> Result<NetId, NetlistError> {
        self.add_gate(GateKind::And2, &[a, b])
    }

    pub fn or(&mut self, a: NetId, b: NetId) -> Result<NetId, NetlistError> {
        self.add_gate(GateKind::Or2, &[a, b])
    }

    pub fn xor(&mut self, a: NetId, b: NetId) -> Result<NetId, NetlistError> {
        self.add_gate(GateKind::Xor2, &[a, b])
    }

    pub fn xnor(&mut self, a: NetId, b: NetId) -> Result<NetId, NetlistError> {
        self.add_gate(GateKind::Xnor2, &[a, b])
    }

    /// `select ? data1 : data0`
    pub fn mux(
        &mut self,
        select: NetId,
        data0: NetId,
        data1: NetId,
    ) -> Result<NetId, NetlistError> {
        self.add_gate(GateKind::Mux2, &[select, data0, data1])
    }

    /// Reduces `inputs` with a tree of 2-input `kind` gates.
    pub fn tree(
        &mut self,
        kind: GateKind,
        inputs: &[NetId],
        skew: TreeSkew,
    ) -> Result<NetId, NetlistError> {
        if !matches!(kind, GateKind::And2 | GateKind::Or2 | GateKind::Xor2) {
            return Err(NetlistError::UnsupportedTreeKind { kind });
        }
        match (inputs, skew) {
            ([], _) => Err(NetlistError::EmptyTree),
            ([single], _) => Ok(*single),
            ([rest @ .., last], TreeSkew::FavorLast) => {
                let head = self.balanced(kind, rest)?;
                self.add_gate(kind, &[head, *last])
            }
            (_, TreeSkew::Balanced) => self.balanced(kind, inputs),
        }
    }

    fn balanced(&mut self, kind: GateKind, inputs: &[NetId]) -> Result<NetId, NetlistError> {
        if inputs.len() == 1 {
            return Ok(inputs[0]);
        }
        let (lo, hi) = inputs.split_at(inputs.len().div_ceil(2));
        let left = self.balanced(kind, lo)?;
        let right = self.balanced(kind, hi)?;
        self.add_gate(kind, &[left, right])
    }

    /// Seals the netlist with the given output order and validates it.
    pub fn finish(self, outputs: Vec<NetId>) -> Result<Netlist, NetlistError> {
        let netlist = self.finish_unchecked(outputs);
        netlist.validate().map_err(NetlistError::Invalid)?;
        Ok(netlist)
    }

    pub fn finish_unchecked(self, outputs: Vec<NetId>) -> Netlist {
        Netlist {
            name: self.name,
            width: self.width,
            carry_in_mode: self.carry_in_mode,
            inputs: self.inputs,
            outputs,
            nets: self.nets,
            gates: self.gates,
        }
    }
}
