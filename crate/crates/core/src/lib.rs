//! Gate-level adder construction and analysis.
//!
//! Generators in [`adders`] produce [`netlist::Netlist`]s for ripple-carry,
//! carry-skip, conditional-sum, carry-select, carry-lookahead,
//! parallel-prefix and bipartitioned hybrid (lookahead low part, carry-select
//! high part) adders. The netlists can be simulated ([`sim`]), timed
//! ([`timing`]), sized ([`area`]) and given a switching-activity power proxy
//! ([`power`]); [`analysis`] verifies them against integer addition and runs
//! the comparisons and partition sweeps.

pub mod adders;
pub mod analysis;
pub mod area;
pub mod netlist;
pub mod power;
pub mod sim;
pub mod timing;

pub use adders::{build, AdderSpec, Arch, BuildError, ClaStyle, PrefixTopology};
pub use area::{area_report, AreaModel, AreaReport};
pub use netlist::{
    CarryInMode, GateId, GateKind, NetId, Netlist, NetlistBuilder, NetlistError, TreeSkew,
};
pub use power::{toggle_power_proxy, ActivityReport};
pub use sim::{simulate, AdderOutput, Simulator, Vector};
pub use timing::{arrival_times, critical_path, CriticalPath, TimingModel};
