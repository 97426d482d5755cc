//! Reference evaluators that share no code with the library's simulator
//! or timing engine.

#![allow(dead_code)]

use adderkit::{GateKind, Netlist, TimingModel};

/// Evaluates every net by recursive descent from the outputs, memoized,
/// with its own gate truth tables.
pub fn eval_outputs(netlist: &Netlist, inputs: &[bool]) -> Vec<bool> {
    let mut driver = vec![None; netlist.nets.len()];
    for g in &netlist.gates {
        driver[g.output.0 as usize] = Some(g);
    }
    let mut value: Vec<Option<bool>> = vec![None; netlist.nets.len()];
    for (net, &v) in netlist.inputs.iter().zip(inputs) {
        value[net.0 as usize] = Some(v);
    }
    fn get(
        net: usize,
        driver: &[Option<&adderkit::netlist::Gate>],
        value: &mut Vec<Option<bool>>,
    ) -> bool {
        if let Some(v) = value[net] {
            return v;
        }
        let g = driver[net].expect("undriven net");
        let ins: Vec<bool> = g
            .inputs
            .iter()
            .map(|i| get(i.0 as usize, driver, value))
            .collect();
        let v = match g.kind {
            GateKind::Not => !ins[0],
            GateKind::And2 => ins[0] & ins[1],
            GateKind::Or2 => ins[0] | ins[1],
            GateKind::Nand2 => !(ins[0] & ins[1]),
            GateKind::Nor2 => !(ins[0] | ins[1]),
            GateKind::Xor2 => ins[0] ^ ins[1],
            GateKind::Xnor2 => !(ins[0] ^ ins[1]),
            GateKind::Mux2 => {
                if ins[0] {
                    ins[2]
                } else {
                    ins[1]
                }
            }
            GateKind::Const0 => false,
            GateKind::Const1 => true,
        };
        value[net] = Some(v);
        v
    }
    netlist
        .outputs
        .iter()
        .map(|o| get(o.0 as usize, &driver, &mut value))
        .collect()
}

/// `(sum, cout)` for operands `a`, `b` and an optional carry input.
pub fn eval_adder(netlist: &Netlist, a: u64, b: u64, cin: Option<bool>) -> (u64, bool) {
    let n = netlist.width;
    let mut bits: Vec<bool> = (0..n).map(|i| a >> i & 1 == 1).collect();
    bits.extend((0..n).map(|i| b >> i & 1 == 1));
    if let Some(c) = cin {
        bits.push(c);
    }
    let out = eval_outputs(netlist, &bits);
    let sum = out[..n]
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &v)| acc | (v as u64) << i);
    (sum, out[n])
}

/// Plain `u128` addition.
pub fn reference_add(a: u64, b: u64, cin: bool, width: usize) -> (u64, bool) {
    let t = a as u128 + b as u128 + cin as u128;
    ((t & ((1u128 << width) - 1)) as u64, t >> width & 1 == 1)
}

/// Longest path found by enumerating every output-to-source path one by
/// one (no memoization). Returns `(max delay, number of paths)`.
pub fn enumerate_longest_path(netlist: &Netlist, timing: &TimingModel) -> (f64, u64) {
    let mut driver = vec![None; netlist.nets.len()];
    for g in &netlist.gates {
        driver[g.output.0 as usize] = Some(g);
    }
    let mut best = 0.0f64;
    let mut count = 0u64;
    let mut stack: Vec<(usize, f64)> = netlist
        .outputs
        .iter()
        .map(|o| (o.0 as usize, 0.0))
        .collect();
    while let Some((net, acc)) = stack.pop() {
        match driver[net] {
            None => {
                count += 1;
                best = best.max(acc);
            }
            Some(g) => {
                let d = acc + timing.delay(g.kind);
                if g.inputs.is_empty() {
                    count += 1;
                    best = best.max(d);
                }
                for i in &g.inputs {
                    stack.push((i.0 as usize, d));
                }
            }
        }
    }
    (best, count)
}
