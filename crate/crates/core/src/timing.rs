//! Static timing: longest weighted path through the gate DAG.

use std::fmt;

use thiserror::Error;

use crate::netlist::{Driver, GateId, GateKind, NetId, Netlist};

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("{kind} must cost 0 in a {model} model, got {value}")]
    ConstantCost {
        model: &'static str,
        kind: GateKind,
        value: f64,
    },
    #[error("{kind} must have a positive {model}, got {value}")]
    NonPositive {
        model: &'static str,
        kind: GateKind,
        value: f64,
    },
    #[error("no {model} given for {kind}")]
    Missing { model: &'static str, kind: GateKind },
    #[error("scale factor must be positive and finite, got {0}")]
    BadScale(f64),
}

/// Per-kind cell costs, shared by the timing and area models.
pub(crate) fn cost_table(
    model: &'static str,
    entries: &[(GateKind, f64)],
) -> Result<[f64; 10], ModelError> {
    let mut table = [f64::NAN; 10];
    for &(kind, value) in entries {
        table[kind.index()] = value;
    }
    for kind in GateKind::ALL {
        let value = table[kind.index()];
        if kind.is_const() {
            if value.is_nan() {
                table[kind.index()] = 0.0;
            } else if value != 0.0 {
                return Err(ModelError::ConstantCost { model, kind, value });
            }
        } else if value.is_nan() {
            return Err(ModelError::Missing { model, kind });
        } else if !(value > 0.0 && value.is_finite()) {
            return Err(ModelError::NonPositive { model, kind, value });
        }
    }
    Ok(table)
}

/// Delay per gate kind, in abstract units.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingModel {
    name: String,
    delays: [f64; 10],
}

impl TimingModel {
    /// Constants may be omitted (they default to 0); every other kind is required.
    pub fn new(name: impl Into<String>, delays: &[(GateKind, f64)]) -> Result<Self, ModelError> {
        Ok(TimingModel {
            name: name.into(),
            delays: cost_table("delay", delays)?,
        })
    }

    /// Every non-constant gate costs one unit.
    pub fn unit() -> Self {
        let delays: Vec<_> = GateKind::ALL
            .iter()
            .filter(|k| !k.is_const())
            .map(|&k| (k, 1.0))
            .collect();
        Self::new("unit", &delays).unwrap()
    }

    /// Heuristic relative cell delays.
    pub fn weighted() -> Self {
        use GateKind::*;
        Self::new(
            "weighted",
            &[
                (Not, 1.0),
                (Nand2, 1.0),
                (Nor2, 1.0),
                (And2, 2.0),
                (Or2, 2.0),
                (Xor2, 3.0),
                (Xnor2, 3.0),
                (Mux2, 3.0),
            ],
        )
        .unwrap()
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "unit" => Some(Self::unit()),
            "weighted" => Some(Self::weighted()),
            _ => None,
        }
    }

    /// Every delay multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self, ModelError> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(ModelError::BadScale(factor));
        }
        let mut delays = self.delays;
        for d in &mut delays {
            *d *= factor;
        }
        Ok(TimingModel {
            name: format!("{}x{}", self.name, factor),
            delays,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn delay(&self, kind: GateKind) -> f64 {
        self.delays[kind.index()]
    }
}

/// Longest path result: total delay and one witness path, listed from the
/// gate nearest the inputs to the gate driving the output.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPath {
    pub delay: f64,
    pub path: Vec<GateId>,
    pub endpoint: Option<NetId>,
}

impl fmt::Display for CriticalPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path: Vec<String> = self.path.iter().map(|g| g.to_string()).collect();
        write!(f, "{} via [{}]", self.delay, path.join(" -> "))
    }
}

/// Arrival time of every net. Primary inputs arrive at 0.
///
/// # Panics
///
/// If the netlist has a cycle or an undriven gate input.
pub fn arrival_times(netlist: &Netlist, timing: &TimingModel) -> Vec<f64> {
    let order = netlist
        .eval_order()
        .expect("timing requires an acyclic, fully driven netlist");
    let mut arrival = vec![0.0f64; netlist.nets.len()];
    for idx in order {
        let gate = &netlist.gates[idx];
        let latest = gate
            .inputs
            .iter()
            .map(|n| arrival[n.index()])
            .fold(0.0, f64::max);
        arrival[gate.output.index()] = latest + timing.delay(gate.kind);
    }
    arrival
}

/// Longest input-to-output path. Ties pick the smallest gate id at each step.
pub fn critical_path(netlist: &Netlist, timing: &TimingModel) -> CriticalPath {
    let arrival = arrival_times(netlist, timing);
    let drivers = netlist.drivers();
    let gate_of = |net: NetId| match drivers[net.index()] {
        Some(Driver::Gate(g)) => Some(g),
        _ => None,
    };

    // Among candidate nets at equal arrival, prefer the smallest driving gate;
    // nets driven by primary inputs rank last.
    let pick = |nets: &mut dyn Iterator<Item = NetId>| -> Option<NetId> {
        let mut best: Option<(f64, Option<GateId>, NetId)> = None;
        for net in nets {
            let t = arrival[net.index()];
            let g = gate_of(net);
            let better = match best {
                None => true,
                Some((bt, bg, _)) => {
                    t > bt
                        || (t == bt
                            && match (g, bg) {
                                (Some(g), Some(bg)) => g < bg,
                                (Some(_), None) => true,
                                _ => false,
                            })
                }
            };
            if better {
                best = Some((t, g, net));
            }
        }
        best.map(|(_, _, n)| n)
    };

    let endpoint = pick(&mut netlist.outputs.iter().copied());
    let delay = endpoint.map_or(0.0, |n| arrival[n.index()]);
    let mut path = Vec::new();
    let mut cursor = endpoint;
    while let Some(g) = cursor.and_then(gate_of) {
        path.push(g);
        let gate = &netlist.gates[g.index()];
        cursor = pick(&mut gate.inputs.iter().copied());
    }
    path.reverse();
    CriticalPath {
        delay,
        path,
        endpoint,
    }
}
