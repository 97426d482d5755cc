use crate::netlist::{CarryInMode, Netlist, NetlistBuilder};

use super::{check_partition, check_width, ripple, BuildError, CarryIn};

/// Carry-select adder. `blocks` is least-significant first; the first block
/// is a plain ripple adder, every later block holds a carry-0 and a carry-1
/// ripple adder whose sums and carry-out are selected by the incoming carry.
pub fn build_csla(
    width: usize,
    blocks: &[usize],
    mode: CarryInMode,
) -> Result<Netlist, BuildError> {
    check_width(width)?;
    check_partition("block list", blocks, width)?;
    let (mut b, a, bb, cin) = NetlistBuilder::for_adder(format!("CSLA_{width}"), width, mode);

    let first = blocks[0];
    let (mut outputs, mut carry) = ripple(
        &mut b,
        &a[..first],
        &bb[..first],
        CarryIn::from_mode(mode, cin),
    )?;
    let mut lo = first;
    for &size in &blocks[1..] {
        let range = lo..lo + size;
        let (sums0, cout0) = ripple(&mut b, &a[range.clone()], &bb[range.clone()], CarryIn::Zero)?;
        let (sums1, cout1) = ripple(&mut b, &a[range.clone()], &bb[range], CarryIn::One)?;
        for (s0, s1) in sums0.into_iter().zip(sums1) {
            outputs.push(b.mux(carry, s0, s1)?);
        }
        carry = b.mux(carry, cout0, cout1)?;
        lo += size;
    }
    outputs.push(carry);
    Ok(b.finish(outputs)?)
}
