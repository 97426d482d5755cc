//! Structural Verilog export.

use std::fmt::Write;

use adderkit::{GateKind, NetId, Netlist};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExportError {
    #[error("invalid netlist: {0}")]
    Invalid(String),
}

/// One module with vector ports `a`, `b`, `sum`, scalar `cin` (when the
/// carry is variable) and `cout`. Every non-port net becomes a wire
/// `n<id>`; every logic gate becomes a primitive instance `g<id>`, while
/// multiplexers and constants become continuous assignments.
pub fn export_verilog(netlist: &Netlist) -> Result<String, ExportError> {
    if let Err(violations) = netlist.validate() {
        let text: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(ExportError::Invalid(text.join("; ")));
    }
    let n = netlist.width;
    let with_cin = netlist.carry_in_mode.has_input();
    let expected_inputs = 2 * n + with_cin as usize;
    if n == 0 || netlist.inputs.len() != expected_inputs {
        return Err(ExportError::Invalid(format!(
            "expected {expected_inputs} inputs for a {n}-bit adder, found {}",
            netlist.inputs.len()
        )));
    }

    let mut port = vec![None; netlist.nets.len()];
    for (i, net) in netlist.inputs.iter().enumerate() {
        port[net.index()] = Some(match i {
            i if i < n => format!("a[{i}]"),
            i if i < 2 * n => format!("b[{}]", i - n),
            _ => "cin".to_string(),
        });
    }
    let name_of = |id: NetId| {
        port[id.index()]
            .clone()
            .unwrap_or_else(|| format!("n{}", id.0))
    };

    let mut out = String::new();
    let module = module_name(&netlist.name);
    let ports = if with_cin {
        "a, b, cin, sum, cout"
    } else {
        "a, b, sum, cout"
    };
    let msb = n - 1;
    writeln!(out, "module {module} ({ports});").unwrap();
    writeln!(out, "  input [{msb}:0] a;").unwrap();
    writeln!(out, "  input [{msb}:0] b;").unwrap();
    if with_cin {
        writeln!(out, "  input cin;").unwrap();
    }
    writeln!(out, "  output [{msb}:0] sum;").unwrap();
    writeln!(out, "  output cout;").unwrap();
    for net in &netlist.nets {
        if port[net.id.index()].is_none() {
            writeln!(out, "  wire n{};", net.id.0).unwrap();
        }
    }
    for gate in &netlist.gates {
        let o = name_of(gate.output);
        let ins: Vec<String> = gate.inputs.iter().map(|&i| name_of(i)).collect();
        let id = gate.id.0;
        match gate.kind {
            GateKind::Mux2 => {
                writeln!(out, "  assign {o} = {} ? {} : {};", ins[0], ins[2], ins[1]).unwrap()
            }
            GateKind::Const0 => writeln!(out, "  assign {o} = 1'b0;").unwrap(),
            GateKind::Const1 => writeln!(out, "  assign {o} = 1'b1;").unwrap(),
            kind => writeln!(
                out,
                "  {} g{id} ({o}, {});",
                primitive(kind),
                ins.join(", ")
            )
            .unwrap(),
        }
    }
    for (i, &net) in netlist.sum_outputs().iter().enumerate() {
        writeln!(out, "  assign sum[{i}] = {};", name_of(net)).unwrap();
    }
    if let Some(c) = netlist.carry_out() {
        writeln!(out, "  assign cout = {};", name_of(c)).unwrap();
    }
    writeln!(out, "endmodule").unwrap();
    Ok(out)
}

fn primitive(kind: GateKind) -> &'static str {
    match kind {
        GateKind::Not => "not",
        GateKind::And2 => "and",
        GateKind::Or2 => "or",
        GateKind::Nand2 => "nand",
        GateKind::Nor2 => "nor",
        GateKind::Xor2 => "xor",
        GateKind::Xnor2 => "xnor",
        GateKind::Mux2 | GateKind::Const0 | GateKind::Const1 => {
            unreachable!("emitted as assignments")
        }
    }
}

fn module_name(name: &str) -> String {
    let mut s: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    while s.contains("__") {
        s = s.replace("__", "_");
    }
    let s = s.trim_matches('_').to_string();
    match s.chars().next() {
        Some(c) if c.is_ascii_alphabetic() => s,
        _ => format!("adder_{s}"),
    }
}
