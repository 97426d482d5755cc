//! Adder netlist generators.
//!
//! Every generator returns a validated [`Netlist`] whose name encodes its
//! parameters. Module and block lists are ordered least-significant first,
//! matching the order in which hardware is cascaded; names print them
//! most-significant first (`FBHA_8_24[8,4,4,4,2,2]/opt`).

mod cells;
mod cla;
mod cond_sum;
mod cska;
mod csla;
mod fbha;
mod prefix;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::netlist::{CarryInMode, NetId, Netlist, NetlistError};

pub use cells::{build_full_adder, build_rca, ripple};
pub use cla::{build_cla_cascade, build_cla_module, cla_cascade};
pub use cond_sum::build_cond_sum;
pub use cska::build_cska;
pub use csla::build_csla;
pub use fbha::{build_fbha, CLA_COUT_NET};
pub use prefix::build_prefix_adder;

/// Widest adder the generators accept; simulation packs operands in `u64`.
pub const MAX_WIDTH: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("width must be between 1 and {MAX_WIDTH}, got {0}")]
    InvalidWidth(usize),
    #[error("block size {block} does not divide width {width}")]
    BlockSize { width: usize, block: usize },
    #[error("{what} {sizes:?} must be non-empty, positive, and sum to {expected}")]
    BadPartition {
        what: &'static str,
        sizes: Vec<usize>,
        expected: usize,
    },
    #[error("lower part width k={k} must satisfy 0 < k < {width}")]
    InvalidK { width: usize, k: usize },
    #[error("operand nets differ in length: {a} vs {b}")]
    OperandMismatch { a: usize, b: usize },
    #[error("{arch} spec is missing `{field}`")]
    MissingField { arch: Arch, field: &'static str },
    #[error("prefix network left bit {0} without a complete carry")]
    IncompletePrefix(usize),
    #[error(transparent)]
    Netlist(#[from] NetlistError),
}

/// Carry entering a sub-circuit during construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarryIn {
    Zero,
    One,
    Net(NetId),
}

impl CarryIn {
    pub(crate) fn from_mode(mode: CarryInMode, cin: Option<NetId>) -> Self {
        match (mode, cin) {
            (CarryInMode::Variable, Some(net)) => CarryIn::Net(net),
            (CarryInMode::Constant1, _) => CarryIn::One,
            _ => CarryIn::Zero,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaStyle {
    /// Balanced OR trees, carry-in term in index order.
    Conventional,
    /// Carry-in product term enters every carry's OR tree last, so the
    /// module's carry-in to carry-out path is one AND2 plus one OR2.
    #[default]
    DelayOptimized,
}

impl ClaStyle {
    pub fn short(self) -> &'static str {
        match self {
            ClaStyle::Conventional => "conv",
            ClaStyle::DelayOptimized => "opt",
        }
    }
}

impl FromStr for ClaStyle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "conventional" | "conv" => Ok(ClaStyle::Conventional),
            "delay_optimized" | "delay-optimized" | "optimized" | "opt" => {
                Ok(ClaStyle::DelayOptimized)
            }
            _ => Err(format!(
                "unknown CLA style `{s}` (expected conventional or optimized)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrefixTopology {
    BrentKung,
    Sklansky,
    KoggeStone,
    LadnerFischer,
    HanCarlson,
}

impl PrefixTopology {
    pub const ALL: [PrefixTopology; 5] = [
        PrefixTopology::BrentKung,
        PrefixTopology::Sklansky,
        PrefixTopology::KoggeStone,
        PrefixTopology::LadnerFischer,
        PrefixTopology::HanCarlson,
    ];

    pub fn label(self) -> &'static str {
        match self {
            PrefixTopology::BrentKung => "BKA",
            PrefixTopology::Sklansky => "SKLANSKY",
            PrefixTopology::KoggeStone => "KSA",
            PrefixTopology::LadnerFischer => "LFA",
            PrefixTopology::HanCarlson => "HCA",
        }
    }
}

impl FromStr for PrefixTopology {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "brent_kung" | "bka" => Ok(PrefixTopology::BrentKung),
            "sklansky" => Ok(PrefixTopology::Sklansky),
            "kogge_stone" | "ksa" => Ok(PrefixTopology::KoggeStone),
            "ladner_fischer" | "lfa" => Ok(PrefixTopology::LadnerFischer),
            "han_carlson" | "hca" => Ok(PrefixTopology::HanCarlson),
            _ => Err(format!("unknown prefix topology `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arch {
    Rca,
    Cska,
    CondSum,
    Csla,
    Cla,
    Prefix,
    Fbha,
}

impl fmt::Display for Arch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arch::Rca => "rca",
            Arch::Cska => "cska",
            Arch::CondSum => "cond_sum",
            Arch::Csla => "csla",
            Arch::Cla => "cla",
            Arch::Prefix => "prefix",
            Arch::Fbha => "fbha",
        })
    }
}

impl FromStr for Arch {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "rca" => Ok(Arch::Rca),
            "cska" => Ok(Arch::Cska),
            "cond_sum" | "condsum" => Ok(Arch::CondSum),
            "csla" => Ok(Arch::Csla),
            "cla" => Ok(Arch::Cla),
            "prefix" => Ok(Arch::Prefix),
            "fbha" => Ok(Arch::Fbha),
            _ => Err(format!("unknown architecture `{s}`")),
        }
    }
}

/// Declarative description of one adder.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdderSpec {
    pub arch: Arch,
    pub width: usize,
    #[serde(default)]
    pub carry_in_mode: CarryInMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block_list: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module_sizes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub style: Option<ClaStyle>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topology: Option<PrefixTopology>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

impl AdderSpec {
    fn base(arch: Arch, width: usize) -> Self {
        AdderSpec {
            arch,
            width,
            carry_in_mode: CarryInMode::None,
            block_size: None,
            block_list: None,
            module_sizes: None,
            style: None,
            topology: None,
            k: None,
        }
    }

    pub fn rca(width: usize) -> Self {
        Self::base(Arch::Rca, width)
    }

    pub fn cska(width: usize, block_size: usize) -> Self {
        AdderSpec {
            block_size: Some(block_size),
            ..Self::base(Arch::Cska, width)
        }
    }

    pub fn cond_sum(width: usize) -> Self {
        Self::base(Arch::CondSum, width)
    }

    pub fn csla(width: usize, blocks: &[usize]) -> Self {
        AdderSpec {
            block_list: Some(blocks.to_vec()),
            ..Self::base(Arch::Csla, width)
        }
    }

    pub fn cla(width: usize, modules: &[usize], style: ClaStyle) -> Self {
        AdderSpec {
            module_sizes: Some(modules.to_vec()),
            style: Some(style),
            ..Self::base(Arch::Cla, width)
        }
    }

    pub fn prefix(width: usize, topology: PrefixTopology) -> Self {
        AdderSpec {
            topology: Some(topology),
            ..Self::base(Arch::Prefix, width)
        }
    }

    /// `modules` covers the `k` low bits, least-significant module first.
    pub fn fbha(width: usize, k: usize, modules: &[usize], style: ClaStyle) -> Self {
        AdderSpec {
            k: Some(k),
            module_sizes: Some(modules.to_vec()),
            style: Some(style),
            ..Self::base(Arch::Fbha, width)
        }
    }

    pub fn with_carry_in(mut self, mode: CarryInMode) -> Self {
        self.carry_in_mode = mode;
        self
    }

    fn require<T: Clone>(&self, value: &Option<T>, field: &'static str) -> Result<T, BuildError> {
        value.clone().ok_or(BuildError::MissingField {
            arch: self.arch,
            field,
        })
    }

    /// Deterministic netlist name for this spec.
    pub fn name(&self) -> String {
        let msf = |sizes: &Option<Vec<usize>>| {
            let v: Vec<String> = sizes
                .iter()
                .flatten()
                .rev()
                .map(|s| s.to_string())
                .collect();
            format!("[{}]", v.join(","))
        };
        let style = self.style.unwrap_or_default().short();
        let n = self.width;
        let base = match self.arch {
            Arch::Rca => format!("RCA_{n}"),
            Arch::Cska => format!("CSKA_{n}_b{}", self.block_size.unwrap_or(0)),
            Arch::CondSum => format!("CONDSUM_{n}"),
            Arch::Csla => format!("CSLA_{n}{}", msf(&self.block_list)),
            Arch::Cla => format!("CLA_{n}{}/{style}", msf(&self.module_sizes)),
            Arch::Prefix => format!(
                "{}_{n}",
                self.topology.map_or("PREFIX", PrefixTopology::label)
            ),
            Arch::Fbha => {
                let k = self.k.unwrap_or(0);
                format!(
                    "FBHA_{}_{k}{}/{style}",
                    n.saturating_sub(k),
                    msf(&self.module_sizes)
                )
            }
        };
        match self.carry_in_mode {
            CarryInMode::None => base,
            CarryInMode::Variable => format!("{base}+cin"),
            CarryInMode::Constant0 => format!("{base}+c0"),
            CarryInMode::Constant1 => format!("{base}+c1"),
        }
    }
}

pub(crate) fn check_width(width: usize) -> Result<(), BuildError> {
    if (1..=MAX_WIDTH).contains(&width) {
        Ok(())
    } else {
        Err(BuildError::InvalidWidth(width))
    }
}

pub(crate) fn check_partition(
    what: &'static str,
    sizes: &[usize],
    expected: usize,
) -> Result<(), BuildError> {
    if sizes.is_empty() || sizes.contains(&0) || sizes.iter().sum::<usize>() != expected {
        return Err(BuildError::BadPartition {
            what,
            sizes: sizes.to_vec(),
            expected,
        });
    }
    Ok(())
}

/// Builds the netlist described by `spec`.
pub fn build(spec: &AdderSpec) -> Result<Netlist, BuildError> {
    let mode = spec.carry_in_mode;
    let style = spec.style.unwrap_or_default();
    let name = spec.name();
    let mut netlist = match spec.arch {
        Arch::Rca => build_rca(spec.width, mode)?,
        Arch::Cska => build_cska(
            spec.width,
            spec.require(&spec.block_size, "block_size")?,
            mode,
        )?,
        Arch::CondSum => build_cond_sum(spec.width, mode)?,
        Arch::Csla => build_csla(
            spec.width,
            &spec.require(&spec.block_list, "block_list")?,
            mode,
        )?,
        Arch::Cla => build_cla_cascade(
            spec.width,
            &spec.require(&spec.module_sizes, "module_sizes")?,
            style,
            mode,
        )?,
        Arch::Prefix => {
            build_prefix_adder(spec.width, spec.require(&spec.topology, "topology")?, mode)?
        }
        Arch::Fbha => build_fbha(
            spec.width,
            spec.require(&spec.k, "k")?,
            &spec.require(&spec.module_sizes, "module_sizes")?,
            style,
            mode,
        )?,
    };
    netlist.name = name;
    Ok(netlist)
}
