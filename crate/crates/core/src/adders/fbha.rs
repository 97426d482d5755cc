use crate::netlist::{CarryInMode, Netlist, NetlistBuilder};

use super::{check_partition, check_width, cla_cascade, ripple, BuildError, CarryIn, ClaStyle};

/// Name given to the lookahead part's carry-out net, the select of every
/// carry-select multiplexer.
pub const CLA_COUT_NET: &str = "cla_cout";

/// Bipartitioned hybrid adder: a `k`-bit lookahead cascade over the low bits
/// whose carry-out selects between two ripple adders (carry-in 0 and 1) over
/// the remaining `width - k` bits. The carry-out is selected the same way.
pub fn build_fbha(
    width: usize,
    k: usize,
    modules: &[usize],
    style: ClaStyle,
    mode: CarryInMode,
) -> Result<Netlist, BuildError> {
    check_width(width)?;
    if k == 0 || k >= width {
        return Err(BuildError::InvalidK { width, k });
    }
    check_partition("module sizes", modules, k)?;

    let (mut b, a, bb, cin) =
        NetlistBuilder::for_adder(format!("FBHA_{}_{k}", width - k), width, mode);
    let (mut outputs, select) = cla_cascade(
        &mut b,
        &a[..k],
        &bb[..k],
        modules,
        style,
        CarryIn::from_mode(mode, cin),
    )?;
    b.name_net(select, CLA_COUT_NET);

    let (sums0, cout0) = ripple(&mut b, &a[k..], &bb[k..], CarryIn::Zero)?;
    let (sums1, cout1) = ripple(&mut b, &a[k..], &bb[k..], CarryIn::One)?;
    for (s0, s1) in sums0.into_iter().zip(sums1) {
        outputs.push(b.mux(select, s0, s1)?);
    }
    outputs.push(b.mux(select, cout0, cout1)?);
    Ok(b.finish(outputs)?)
}
