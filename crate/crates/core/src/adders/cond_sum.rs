use crate::netlist::{CarryInMode, NetId, Netlist, NetlistBuilder};

use super::{check_width, BuildError, CarryIn};

// Sums and carry-out of a bit group under both assumed carry-ins.
struct Conditional {
    sums: [Vec<NetId>; 2],
    carry: [NetId; 2],
}

// A group whose carry-in is known.
struct Resolved {
    sums: Vec<NetId>,
    carry: NetId,
}

enum Group {
    Conditional(Conditional),
    Resolved(Resolved),
}

fn select_upper(
    b: &mut NetlistBuilder,
    select: NetId,
    upper: &Conditional,
    sums: &mut Vec<NetId>,
) -> Result<NetId, BuildError> {
    for (&s0, &s1) in upper.sums[0].iter().zip(&upper.sums[1]) {
        sums.push(b.mux(select, s0, s1)?);
    }
    Ok(b.mux(select, upper.carry[0], upper.carry[1])?)
}

fn merge(b: &mut NetlistBuilder, lower: Group, upper: Group) -> Result<Group, BuildError> {
    let Group::Conditional(upper) = upper else {
        unreachable!("only the least significant group is resolved")
    };
    Ok(match lower {
        Group::Resolved(mut lo) => {
            let carry = select_upper(b, lo.carry, &upper, &mut lo.sums)?;
            Group::Resolved(Resolved {
                sums: lo.sums,
                carry,
            })
        }
        Group::Conditional(lo) => {
            let Conditional {
                sums: [mut s0, mut s1],
                carry,
            } = lo;
            let c0 = select_upper(b, carry[0], &upper, &mut s0)?;
            let c1 = select_upper(b, carry[1], &upper, &mut s1)?;
            Group::Conditional(Conditional {
                sums: [s0, s1],
                carry: [c0, c1],
            })
        }
    })
}

/// Conditional-sum adder: per-bit sum/carry pairs for both assumed carries,
/// merged pairwise in `ceil(log2 N)` multiplexer levels.
///
/// A variable carry-in selects between the two final results with `N + 1`
/// multiplexers. For a fixed carry-in the least significant bit is computed
/// only under the known value, so that group stays resolved through every
/// merge.
pub fn build_cond_sum(width: usize, mode: CarryInMode) -> Result<Netlist, BuildError> {
    check_width(width)?;
    let (mut b, a, bb, cin) = NetlistBuilder::for_adder(format!("CONDSUM_{width}"), width, mode);
    let carry = CarryIn::from_mode(mode, cin);

    let mut groups = Vec::with_capacity(width);
    for i in 0..width {
        let group = match (i, carry) {
            (0, CarryIn::Zero) => Group::Resolved(Resolved {
                sums: vec![b.xor(a[0], bb[0])?],
                carry: b.and(a[0], bb[0])?,
            }),
            (0, CarryIn::One) => Group::Resolved(Resolved {
                sums: vec![b.xnor(a[0], bb[0])?],
                carry: b.or(a[0], bb[0])?,
            }),
            _ => {
                let s0 = b.xor(a[i], bb[i])?;
                let c0 = b.and(a[i], bb[i])?;
                let s1 = b.xnor(a[i], bb[i])?;
                let c1 = b.or(a[i], bb[i])?;
                Group::Conditional(Conditional {
                    sums: [vec![s0], vec![s1]],
                    carry: [c0, c1],
                })
            }
        };
        groups.push(group);
    }

    while groups.len() > 1 {
        let mut next = Vec::with_capacity(groups.len().div_ceil(2));
        let mut iter = groups.into_iter();
        while let Some(lower) = iter.next() {
            match iter.next() {
                Some(upper) => next.push(merge(&mut b, lower, upper)?),
                None => next.push(lower),
            }
        }
        groups = next;
    }

    let mut outputs = Vec::with_capacity(width + 1);
    match groups.pop().expect("width >= 1") {
        Group::Resolved(r) => {
            outputs.extend(r.sums);
            outputs.push(r.carry);
        }
        Group::Conditional(c) => {
            let CarryIn::Net(select) = carry else {
                unreachable!("fixed carries resolve bit 0")
            };
            let cout = select_upper(&mut b, select, &c, &mut outputs)?;
            outputs.push(cout);
        }
    }
    Ok(b.finish(outputs)?)
}
