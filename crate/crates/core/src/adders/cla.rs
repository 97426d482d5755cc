use crate::netlist::{CarryInMode, GateKind, NetId, Netlist, NetlistBuilder, TreeSkew};

use super::{check_partition, check_width, BuildError, CarryIn, ClaStyle};

/// A single carry-lookahead module over `a.len()` bits.
///
/// Each carry is a flat sum of products over the module's generate and
/// propagate signals,
/// `C_j = g_{j-1} + p_{j-1} g_{j-2} + ... + p_{j-1}..p_1 g_0 + p_{j-1}..p_0 C_0`,
/// with product terms built as balanced AND trees and no sharing between
/// carries. The delay-optimized style builds the carry-in term and the OR
/// tree with the carry-in last, so it crosses exactly two gates.
///
/// Returns the sum nets and the module carry-out.
pub fn build_cla_module(
    b: &mut NetlistBuilder,
    a: &[NetId],
    bb: &[NetId],
    cin: CarryIn,
    style: ClaStyle,
) -> Result<(Vec<NetId>, NetId), BuildError> {
    let k = a.len();
    if k == 0 || bb.len() != k {
        return Err(BuildError::OperandMismatch { a: k, b: bb.len() });
    }
    let mut p = Vec::with_capacity(k);
    let mut g = Vec::with_capacity(k);
    for (&x, &y) in a.iter().zip(bb) {
        p.push(b.xor(x, y)?);
        g.push(b.and(x, y)?);
    }

    let skew = match style {
        ClaStyle::Conventional => TreeSkew::Balanced,
        ClaStyle::DelayOptimized => TreeSkew::FavorLast,
    };
    // carries[j] is C_j for j in 1..=k
    let mut carries = Vec::with_capacity(k);
    for j in 1..=k {
        let mut terms = Vec::with_capacity(j + 1);
        for i in (0..j).rev() {
            let mut literals: Vec<NetId> = p[i + 1..j].iter().rev().copied().collect();
            literals.push(g[i]);
            terms.push(b.tree(GateKind::And2, &literals, TreeSkew::Balanced)?);
        }
        let all_p: Vec<NetId> = p[..j].iter().rev().copied().collect();
        let or_skew = match cin {
            CarryIn::Zero => TreeSkew::Balanced,
            CarryIn::One => {
                terms.push(b.tree(GateKind::And2, &all_p, TreeSkew::Balanced)?);
                TreeSkew::Balanced
            }
            CarryIn::Net(c) => {
                let mut literals = all_p;
                literals.push(c);
                terms.push(b.tree(GateKind::And2, &literals, skew)?);
                skew
            }
        };
        carries.push(b.tree(GateKind::Or2, &terms, or_skew)?);
    }

    let mut sums = Vec::with_capacity(k);
    sums.push(match cin {
        CarryIn::Zero => p[0],
        CarryIn::One => b.xnor(a[0], bb[0])?,
        CarryIn::Net(c) => b.xor(p[0], c)?,
    });
    for i in 1..k {
        sums.push(b.xor(p[i], carries[i - 1])?);
    }
    Ok((sums, carries[k - 1]))
}

/// Cascade of lookahead modules; `modules` is least-significant first.
pub fn cla_cascade(
    b: &mut NetlistBuilder,
    a: &[NetId],
    bb: &[NetId],
    modules: &[usize],
    style: ClaStyle,
    cin: CarryIn,
) -> Result<(Vec<NetId>, NetId), BuildError> {
    check_partition("module sizes", modules, a.len())?;
    let mut carry = cin;
    let mut sums = Vec::with_capacity(a.len());
    let mut lo = 0;
    for &size in modules {
        let (s, c) = build_cla_module(b, &a[lo..lo + size], &bb[lo..lo + size], carry, style)?;
        sums.extend(s);
        carry = CarryIn::Net(c);
        lo += size;
    }
    let CarryIn::Net(cout) = carry else {
        unreachable!("at least one module")
    };
    Ok((sums, cout))
}

pub fn build_cla_cascade(
    width: usize,
    modules: &[usize],
    style: ClaStyle,
    mode: CarryInMode,
) -> Result<Netlist, BuildError> {
    check_width(width)?;
    check_partition("module sizes", modules, width)?;
    let (mut b, a, bb, cin) = NetlistBuilder::for_adder(format!("CLA_{width}"), width, mode);
    let (mut outputs, cout) = cla_cascade(
        &mut b,
        &a,
        &bb,
        modules,
        style,
        CarryIn::from_mode(mode, cin),
    )?;
    outputs.push(cout);
    Ok(b.finish(outputs)?)
}
