use crate::netlist::{CarryInMode, GateKind, NetId, Netlist, NetlistBuilder, TreeSkew};

use super::{check_width, BuildError, CarryIn};

/// Carry-skip adder built from `width / block_size` equal blocks.
///
/// Inside a block the sums ripple from the true block carry-in. The block
/// carry-out is `MUX2(P, G, cin)`: `P` is the AND of the block's propagate
/// signals and `G` is the block's ripple carry-out under carry-in 0, a
/// generate/propagate chain that does not depend on the block carry-in.
/// When `P = 0` some bit kills or generates, so the real carry-out equals
/// `G`; when `P = 1` it equals the carry-in. The carry-in therefore reaches
/// the next block through one multiplexer.
pub fn build_cska(
    width: usize,
    block_size: usize,
    mode: CarryInMode,
) -> Result<Netlist, BuildError> {
    check_width(width)?;
    if block_size == 0 || !width.is_multiple_of(block_size) {
        return Err(BuildError::BlockSize {
            width,
            block: block_size,
        });
    }
    let (mut b, a, bb, cin) = NetlistBuilder::for_adder(format!("CSKA_{width}"), width, mode);
    let mut carry = CarryIn::from_mode(mode, cin);
    let mut outputs = Vec::with_capacity(width + 1);

    for lo in (0..width).step_by(block_size) {
        let bits = lo..lo + block_size;
        let mut p = Vec::with_capacity(block_size);
        let mut g = Vec::with_capacity(block_size);
        for i in bits.clone() {
            p.push(b.xor(a[i], bb[i])?);
            g.push(b.and(a[i], bb[i])?);
        }

        // Sums ripple from the real carry-in.
        let mut c = carry;
        for (j, i) in bits.clone().enumerate() {
            let sum = match c {
                CarryIn::Net(n) => b.xor(p[j], n)?,
                CarryIn::Zero => p[j],
                CarryIn::One => b.xnor(a[i], bb[i])?,
            };
            outputs.push(sum);
            if j + 1 < block_size {
                let next = match c {
                    CarryIn::Net(n) => {
                        let t = b.and(p[j], n)?;
                        b.or(g[j], t)?
                    }
                    CarryIn::Zero => g[j],
                    CarryIn::One => b.or(a[i], bb[i])?,
                };
                c = CarryIn::Net(next);
            }
        }

        let propagate = b.tree(GateKind::And2, &p, TreeSkew::Balanced)?;
        let mut generate = g[0];
        for j in 1..block_size {
            let t = b.and(p[j], generate)?;
            generate = b.or(g[j], t)?;
        }
        let block_cin: NetId = match carry {
            CarryIn::Net(n) => n,
            CarryIn::Zero => b.constant(false),
            CarryIn::One => b.constant(true),
        };
        carry = CarryIn::Net(b.mux(propagate, generate, block_cin)?);
    }
    let CarryIn::Net(cout) = carry else {
        unreachable!("at least one block")
    };
    outputs.push(cout);
    Ok(b.finish(outputs)?)
}
