use crate::netlist::{CarryInMode, NetId, Netlist, NetlistBuilder, NetlistError};

use super::{check_width, BuildError, CarryIn};

/// One-bit full adder. Returns `(sum, cout)`.
///
/// A variable carry uses five gates (`p`, `g`, `s`, `t`, `cout`); constant
/// carries are specialized to two gates.
pub fn build_full_adder(
    b: &mut NetlistBuilder,
    a: NetId,
    bb: NetId,
    cin: CarryIn,
) -> Result<(NetId, NetId), NetlistError> {
    match cin {
        CarryIn::Net(c) => {
            let p = b.xor(a, bb)?;
            let g = b.and(a, bb)?;
            let s = b.xor(p, c)?;
            let t = b.and(p, c)?;
            let cout = b.or(g, t)?;
            Ok((s, cout))
        }
        CarryIn::Zero => Ok((b.xor(a, bb)?, b.and(a, bb)?)),
        CarryIn::One => Ok((b.xnor(a, bb)?, b.or(a, bb)?)),
    }
}

/// Chain of full adders over equal-length operand slices.
pub fn ripple(
    b: &mut NetlistBuilder,
    a: &[NetId],
    bb: &[NetId],
    cin: CarryIn,
) -> Result<(Vec<NetId>, NetId), BuildError> {
    if a.len() != bb.len() || a.is_empty() {
        return Err(BuildError::OperandMismatch {
            a: a.len(),
            b: bb.len(),
        });
    }
    let mut carry = cin;
    let mut sums = Vec::with_capacity(a.len());
    for (&x, &y) in a.iter().zip(bb) {
        let (s, c) = build_full_adder(b, x, y, carry)?;
        sums.push(s);
        carry = CarryIn::Net(c);
    }
    let CarryIn::Net(cout) = carry else {
        unreachable!("non-empty chain")
    };
    Ok((sums, cout))
}

pub fn build_rca(width: usize, mode: CarryInMode) -> Result<Netlist, BuildError> {
    check_width(width)?;
    let (mut b, a, bb, cin) = NetlistBuilder::for_adder(format!("RCA_{width}"), width, mode);
    let (mut outputs, cout) = ripple(&mut b, &a, &bb, CarryIn::from_mode(mode, cin))?;
    outputs.push(cout);
    Ok(b.finish(outputs)?)
}
