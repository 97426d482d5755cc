//! Gate census and weighted area.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::netlist::{GateKind, Netlist};
use crate::timing::{cost_table, ModelError};

/// Area per gate kind, in abstract units.
#[derive(Debug, Clone, PartialEq)]
pub struct AreaModel {
    name: String,
    areas: [f64; 10],
}

impl AreaModel {
    pub fn new(name: impl Into<String>, areas: &[(GateKind, f64)]) -> Result<Self, ModelError> {
        Ok(AreaModel {
            name: name.into(),
            areas: cost_table("area", areas)?,
        })
    }

    /// Static CMOS transistor counts.
    pub fn tcount() -> Self {
        use GateKind::*;
        Self::new(
            "tcount",
            &[
                (Not, 2.0),
                (Nand2, 4.0),
                (Nor2, 4.0),
                (And2, 6.0),
                (Or2, 6.0),
                (Xor2, 10.0),
                (Xnor2, 10.0),
                (Mux2, 12.0),
            ],
        )
        .unwrap()
    }

    /// One unit per non-constant gate, i.e. plain gate count.
    pub fn unit() -> Self {
        let areas: Vec<_> = GateKind::ALL
            .iter()
            .filter(|k| !k.is_const())
            .map(|&k| (k, 1.0))
            .collect();
        Self::new("unit", &areas).unwrap()
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "tcount" => Some(Self::tcount()),
            "unit" => Some(Self::unit()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn area(&self, kind: GateKind) -> f64 {
        self.areas[kind.index()]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AreaReport {
    pub total: f64,
    pub census: BTreeMap<GateKind, usize>,
}

impl AreaReport {
    pub fn gate_count(&self) -> usize {
        self.census.values().sum()
    }
}

pub fn area_report(netlist: &Netlist, model: &AreaModel) -> AreaReport {
    let mut census = BTreeMap::new();
    for gate in &netlist.gates {
        *census.entry(gate.kind).or_insert(0usize) += 1;
    }
    let total = census
        .iter()
        .map(|(&kind, &count)| model.area(kind) * count as f64)
        .sum();
    AreaReport { total, census }
}
