use crate::netlist::{CarryInMode, NetId, Netlist, NetlistBuilder};

use super::{check_width, BuildError, CarryIn, PrefixTopology};

/// Group (generate, propagate) state of every bit position while the network
/// is being built. `lo[i]` is the lowest bit covered by position `i`'s group;
/// positions with `lo == 0` are complete and their propagate is dropped.
struct PrefixState {
    g: Vec<NetId>,
    p: Vec<Option<NetId>>,
    lo: Vec<usize>,
}

impl PrefixState {
    /// Applies one level of cells. Every cell reads the values from before
    /// the level, so cells within a level are independent.
    fn level(
        &mut self,
        b: &mut NetlistBuilder,
        cells: &[(usize, usize)],
    ) -> Result<(), BuildError> {
        let g = self.g.clone();
        let p = self.p.clone();
        let lo = self.lo.clone();
        for &(i, j) in cells {
            assert_eq!(
                lo[i],
                j + 1,
                "prefix cell ({i}, {j}) combines non-adjacent groups"
            );
            let pi = p[i].expect("incomplete group keeps its propagate");
            let t = b.and(pi, g[j])?;
            self.g[i] = b.or(g[i], t)?;
            self.p[i] = match p[j] {
                // black cell
                Some(pj) if lo[j] > 0 => Some(b.and(pi, pj)?),
                // gray cell: the group now reaches bit 0
                _ => None,
            };
            self.lo[i] = lo[j];
        }
        Ok(())
    }
}

fn levels(width: usize, topology: PrefixTopology) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    match topology {
        PrefixTopology::KoggeStone => {
            let mut s = 1;
            while s < width {
                out.push((s..width).map(|i| (i, i - s)).collect());
                s *= 2;
            }
        }
        PrefixTopology::Sklansky => {
            let mut s = 1;
            while s < width {
                out.push(
                    (0..width)
                        .filter(|i| i & s != 0)
                        .map(|i| (i, (i & !(2 * s - 1)) + s - 1))
                        .collect(),
                );
                s *= 2;
            }
        }
        PrefixTopology::BrentKung => {
            let mut s = 1;
            let mut top = 1;
            while 2 * s - 1 < width {
                out.push(
                    (2 * s - 1..width)
                        .step_by(2 * s)
                        .map(|i| (i, i - s))
                        .collect(),
                );
                top = s;
                s *= 2;
            }
            let mut s = top;
            while s >= 1 {
                let cells: Vec<_> = (3 * s - 1..width)
                    .step_by(2 * s)
                    .map(|i| (i, i - s))
                    .collect();
                if !cells.is_empty() {
                    out.push(cells);
                }
                s /= 2;
            }
        }
        PrefixTopology::LadnerFischer | PrefixTopology::HanCarlson => {
            // Pair each odd position with its even neighbour, run the sparse
            // network over odd positions only, then fix up even positions.
            out.push((1..width).step_by(2).map(|i| (i, i - 1)).collect());
            let odd = width / 2;
            let mut s = 1;
            while s < odd {
                let cells: Vec<_> = match topology {
                    PrefixTopology::LadnerFischer => (0..odd)
                        .filter(|m| m & s != 0)
                        .map(|m| (2 * m + 1, 2 * ((m & !(2 * s - 1)) + s - 1) + 1))
                        .collect(),
                    _ => (s..odd).map(|m| (2 * m + 1, 2 * (m - s) + 1)).collect(),
                };
                out.push(cells);
                s *= 2;
            }
            let evens: Vec<_> = (2..width).step_by(2).map(|i| (i, i - 1)).collect();
            if !evens.is_empty() {
                out.push(evens);
            }
        }
    }
    out.retain(|l| !l.is_empty());
    out
}

/// Parallel-prefix adder. A variable carry-in is folded into bit 0's
/// generate (`g0 + p0 cin`) so the network itself never sees it.
pub fn build_prefix_adder(
    width: usize,
    topology: PrefixTopology,
    mode: CarryInMode,
) -> Result<Netlist, BuildError> {
    check_width(width)?;
    let (mut b, a, bb, cin) =
        NetlistBuilder::for_adder(format!("{}_{width}", topology.label()), width, mode);
    let carry = CarryIn::from_mode(mode, cin);

    let mut p = Vec::with_capacity(width);
    let mut g = Vec::with_capacity(width);
    for i in 0..width {
        p.push(b.xor(a[i], bb[i])?);
        g.push(b.and(a[i], bb[i])?);
    }
    let (sum0, g0) = match carry {
        CarryIn::Zero => (p[0], g[0]),
        CarryIn::One => (b.xnor(a[0], bb[0])?, b.or(a[0], bb[0])?),
        CarryIn::Net(c) => {
            let t = b.and(p[0], c)?;
            (b.xor(p[0], c)?, b.or(g[0], t)?)
        }
    };

    let mut state = PrefixState {
        g: g.clone(),
        p: p.iter().map(|&n| Some(n)).collect(),
        lo: (0..width).collect(),
    };
    state.g[0] = g0;
    state.p[0] = None;
    for cells in levels(width, topology) {
        state.level(&mut b, &cells)?;
    }
    if let Some(bit) = state.lo.iter().position(|&lo| lo != 0) {
        return Err(BuildError::IncompletePrefix(bit));
    }

    let mut outputs = Vec::with_capacity(width + 1);
    outputs.push(sum0);
    for (&pi, &carry) in p[1..].iter().zip(&state.g) {
        outputs.push(b.xor(pi, carry)?);
    }
    outputs.push(state.g[width - 1]);
    Ok(b.finish(outputs)?)
}
