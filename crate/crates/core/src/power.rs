//! Switching-activity power proxy.
//!
//! Toggles are counted between consecutive zero-delay steady states, so
//! glitches are not modeled. Each gate contributes its output toggles times
//! `1 + fanout` of the output net.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::netlist::Netlist;
use crate::sim::{SimError, Simulator, Vector};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PowerError {
    #[error("at least one vector is required")]
    NoVectors,
    #[error("malformed vector {index}: {source}")]
    Malformed { index: usize, source: SimError },
    #[error(transparent)]
    Sim(#[from] SimError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActivityReport {
    /// Toggle count of every net, indexed by net id.
    pub toggles: Vec<u64>,
    pub power_proxy: u64,
    pub vector_count: usize,
    /// Seed of the generator that produced the vectors, when known.
    pub seed: Option<u64>,
}

pub fn toggle_power_proxy(
    netlist: &Netlist,
    vectors: &[Vector],
) -> Result<ActivityReport, PowerError> {
    if vectors.is_empty() {
        return Err(PowerError::NoVectors);
    }
    let sim = Simulator::new(netlist)?;
    let mut toggles = vec![0u64; netlist.nets.len()];
    let mut last_lane: Option<Vec<u64>> = None;
    let mut values = Vec::new();
    for (chunk_idx, chunk) in vectors.chunks(64).enumerate() {
        let words = sim.pack(chunk).map_err(|source| {
            let index = chunk_idx * 64
                + chunk
                    .iter()
                    .position(|v| sim.pack(std::slice::from_ref(v)).is_err())
                    .unwrap_or(0);
            PowerError::Malformed { index, source }
        })?;
        sim.run_words(&words, &mut values);
        let lanes = chunk.len();
        let inner_mask = if lanes >= 2 {
            (1u64 << (lanes - 1)) - 1
        } else {
            0
        };
        for (net, &w) in values.iter().enumerate() {
            let mut count = ((w ^ (w >> 1)) & inner_mask).count_ones() as u64;
            if let Some(prev) = &last_lane {
                count += (prev[net] ^ w) & 1;
            }
            toggles[net] += count;
        }
        last_lane = Some(values.iter().map(|w| w >> (lanes - 1) & 1).collect());
    }
    let fanout = netlist.fanout();
    let power_proxy = netlist
        .gates
        .iter()
        .map(|g| toggles[g.output.index()] * (1 + fanout[g.output.index()] as u64))
        .sum();
    Ok(ActivityReport {
        toggles,
        power_proxy,
        vector_count: vectors.len(),
        seed: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::{CarryInMode, NetlistBuilder};
    use crate::sim::simulate_bits;

    fn not_gate() -> Netlist {
        let (mut b, a, bb, _) = NetlistBuilder::for_adder("inv", 1, CarryInMode::None);
        let y = b.not(a[0]).unwrap();
        b.finish(vec![y, bb[0]]).unwrap()
    }

    #[test]
    fn alternating_not_toggles_twice() {
        let n = not_gate();
        let vs: Vec<_> = [0, 1, 0]
            .iter()
            .map(|&a| Vector { a, b: 0, cin: None })
            .collect();
        let r = toggle_power_proxy(&n, &vs).unwrap();
        let out = n.gates[0].output.index();
        assert_eq!(r.toggles[out], 2);
        // one load (output port): 2 * (1 + 1)
        assert_eq!(r.power_proxy, 4);
    }

    #[test]
    fn repeated_vector_has_no_activity() {
        let n = not_gate();
        let vs = vec![
            Vector {
                a: 1,
                b: 1,
                cin: None
            };
            10
        ];
        let r = toggle_power_proxy(&n, &vs).unwrap();
        assert_eq!(r.power_proxy, 0);
        assert!(r.toggles.iter().all(|&t| t == 0));
    }

    #[test]
    fn chunk_boundaries_match_scalar_count() {
        let n = not_gate();
        let vs: Vec<_> = (0..200u64)
            .map(|i| Vector {
                a: (i * 7 / 3) & 1,
                b: (i / 5) & 1,
                cin: None,
            })
            .collect();
        let r = toggle_power_proxy(&n, &vs).unwrap();
        let states: Vec<Vec<bool>> = vs
            .iter()
            .map(|v| simulate_bits(&n, &[v.a == 1, v.b == 1]).unwrap())
            .collect();
        for net in 0..n.nets.len() {
            let expected = states.windows(2).filter(|w| w[0][net] != w[1][net]).count() as u64;
            assert_eq!(r.toggles[net], expected, "net {net}");
        }
    }

    #[test]
    fn empty_vector_list_is_rejected() {
        let n = not_gate();
        assert_eq!(toggle_power_proxy(&n, &[]), Err(PowerError::NoVectors));
    }

    #[test]
    fn malformed_vector_reports_index() {
        let n = not_gate();
        let vs = [
            Vector {
                a: 0,
                b: 1,
                cin: None,
            },
            Vector {
                a: 3,
                b: 0,
                cin: None,
            },
        ];
        assert!(matches!(
            toggle_power_proxy(&n, &vs),
            Err(PowerError::Malformed { index: 1, .. })
        ));
    }
}
