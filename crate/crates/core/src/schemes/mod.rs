//! Achievable-rate evaluators.
//!
//! Every evaluator is a pure function of the gains, the power budget and one
//! allocation. Maximization over allocations lives in [`crate::optimizer`].

mod bme;
mod ddf;
mod dpc;
mod ssrd;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::ModelError;

pub use bme::{bme_back_eval, bme_dpc_eval, bme_succ_eval};
pub use ddf::{ddf_corner_decompose, ddf_eval, DdfCorner};
pub use dpc::{dpc_eval, dpc_symmetric_rate};
pub use ssrd::{ssrd_eval, SsrdConstraint};

pub(crate) use bme::{back_cuts, bme_dpc_cuts, succ_cut_array};
pub(crate) use ddf::{ddf_cut_array, ddf_tighten, ddf_value};
pub(crate) use dpc::dpc_cut_array;
pub(crate) use ssrd::ssrd_terms;

/// The achievable-rate schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeId {
    Dpc,
    BmeSucc,
    BmeBack,
    BmeDpc,
    Ddf,
    Ssrd,
}

impl SchemeId {
    pub const ALL: [SchemeId; 6] = [
        SchemeId::Dpc,
        SchemeId::BmeSucc,
        SchemeId::BmeBack,
        SchemeId::BmeDpc,
        SchemeId::Ddf,
        SchemeId::Ssrd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Dpc => "dpc",
            Self::BmeSucc => "bme-succ",
            Self::BmeBack => "bme-back",
            Self::BmeDpc => "bme-dpc",
            Self::Ddf => "ddf",
            Self::Ssrd => "ssrd",
        }
    }

    /// Schemes written for `h01 >= h02` only.
    pub fn needs_canonical_order(self) -> bool {
        matches!(self, Self::Ddf | Self::Ssrd)
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| format!("unknown scheme `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchemeError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("h01 = {h01} is below h02 = {h02}; relabel the relays so relay 1 has the stronger source link")]
    RelabelRequired { h01: f64, h02: f64 },
    #[error("infeasible: {0} violated")]
    Infeasible(SsrdConstraint),
    #[error("private rate {rate} exceeds the relay 1 link capacity {max}")]
    CornerInfeasible { rate: f64, max: f64 },
}

pub(crate) fn require_canonical(g: &crate::model::ChannelGains) -> Result<(), SchemeError> {
    if g.h01 < g.h02 {
        Err(SchemeError::RelabelRequired { h01: g.h01, h02: g.h02 })
    } else {
        Ok(())
    }
}
