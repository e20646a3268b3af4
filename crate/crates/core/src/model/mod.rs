//! Domain types shared by schemes, bounds and experiments.
//!
//! Powers are linear with the noise variance fixed at 1 per real dimension;
//! gains are real amplitudes. Relay 1 and relay 2 are distinguished by their
//! links: `h01`/`h02` from the source, `h13`/`h23` to the destination and a
//! single reciprocal inter-relay gain `h12`.

mod allocation;
mod config;
mod report;
pub mod scenario_file;

pub use allocation::{
    Allocation, BmeBackAllocation, BmeDpcAllocation, BmeSuccAllocation, BoundAllocation,
    CooperatingRelay, DdfAllocation, DpcAllocation, SsrdAllocation, TimeAllocation,
};
pub use config::OptimizerConfig;
pub use report::{RateKind, RateReport};

use thiserror::Error;

/// Rejection of a scenario, allocation or configuration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{field} negative")]
    Negative { field: &'static str },
    #[error("{field} not finite")]
    NotFinite { field: &'static str },
    #[error("invalid allocation: {0}")]
    Allocation(String),
    #[error("invalid optimizer config: {0}")]
    Config(String),
}

pub(crate) fn check_quantity(field: &'static str, value: f64) -> Result<(), ModelError> {
    if !value.is_finite() {
        Err(ModelError::NotFinite { field })
    } else if value < 0.0 {
        Err(ModelError::Negative { field })
    } else {
        Ok(())
    }
}

/// Converts a dB figure to a linear power ratio.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Converts a linear power ratio to dB (`-inf` for zero).
pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Real amplitude gains of the five links.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelGains {
    pub h01: f64,
    pub h02: f64,
    pub h12: f64,
    pub h13: f64,
    pub h23: f64,
}

impl ChannelGains {
    pub fn new(h01: f64, h02: f64, h12: f64, h13: f64, h23: f64) -> Result<Self, ModelError> {
        let gains = Self { h01, h02, h12, h13, h23 };
        gains.validate()?;
        Ok(gains)
    }

    /// All five links with the same gain.
    pub fn uniform(h: f64) -> Self {
        Self { h01: h, h02: h, h12: h, h13: h, h23: h }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        check_quantity("h01", self.h01)?;
        check_quantity("h02", self.h02)?;
        check_quantity("h12", self.h12)?;
        check_quantity("h13", self.h13)?;
        check_quantity("h23", self.h23)
    }

    /// Same network with the relay labels exchanged.
    pub fn relays_swapped(&self) -> Self {
        Self {
            h01: self.h02,
            h02: self.h01,
            h12: self.h12,
            h13: self.h23,
            h23: self.h13,
        }
    }

    /// Multiplies every gain by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        Self {
            h01: k * self.h01,
            h02: k * self.h02,
            h12: k * self.h12,
            h13: k * self.h13,
            h23: k * self.h23,
        }
    }

    pub fn with_h12(&self, h12: f64) -> Self {
        Self { h12, ..*self }
    }
}

/// Average power constraints of the source and the two relays (linear).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBudget {
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
}

impl PowerBudget {
    pub fn new(p0: f64, p1: f64, p2: f64) -> Result<Self, ModelError> {
        let budget = Self { p0, p1, p2 };
        budget.validate()?;
        Ok(budget)
    }

    pub fn from_db(p0_db: f64, p1_db: f64, p2_db: f64) -> Result<Self, ModelError> {
        Self::new(db_to_linear(p0_db), db_to_linear(p1_db), db_to_linear(p2_db))
    }

    /// Relay powers proportional to the source power: `P1 = γ1·P0`, `P2 = γ2·P0`.
    pub fn proportional(p0: f64, gamma1: f64, gamma2: f64) -> Result<Self, ModelError> {
        Self::new(p0, gamma1 * p0, gamma2 * p0)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        check_quantity("p0", self.p0)?;
        check_quantity("p1", self.p1)?;
        check_quantity("p2", self.p2)
    }

    pub fn relays_swapped(&self) -> Self {
        Self { p0: self.p0, p1: self.p2, p2: self.p1 }
    }

    /// Multiplies every power by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        Self { p0: k * self.p0, p1: k * self.p1, p2: k * self.p2 }
    }

    pub fn in_db(&self) -> [f64; 3] {
        [linear_to_db(self.p0), linear_to_db(self.p1), linear_to_db(self.p2)]
    }
}

/// A validated pair of gains and power budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub gains: ChannelGains,
    pub budget: PowerBudget,
}

impl Scenario {
    /// True when the source reaches relay 1 at least as well as relay 2,
    /// the orientation the broadcast-based schemes are written for.
    pub fn is_canonically_ordered(&self) -> bool {
        self.gains.h01 >= self.gains.h02
    }

    pub fn relays_swapped(&self) -> Self {
        Self {
            gains: self.gains.relays_swapped(),
            budget: self.budget.relays_swapped(),
        }
    }
}

/// Checks every gain and power and returns the validated scenario.
pub fn validate_scenario(gains: ChannelGains, budget: PowerBudget) -> Result<Scenario, ModelError> {
    gains.validate()?;
    budget.validate()?;
    Ok(Scenario { gains, budget })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_well_formed_scenario() {
        let s = validate_scenario(ChannelGains::uniform(1.0), PowerBudget { p0: 1.0, p1: 1.0, p2: 1.0 });
        assert!(s.is_ok());
    }

    #[test]
    fn names_the_offending_field() {
        let gains = ChannelGains { h01: -1.0, ..ChannelGains::uniform(1.0) };
        let err = validate_scenario(gains, PowerBudget { p0: 1.0, p1: 1.0, p2: 1.0 }).unwrap_err();
        assert_eq!(err.to_string(), "h01 negative");

        let budget = PowerBudget { p0: f64::NAN, p1: 1.0, p2: 1.0 };
        let err = validate_scenario(ChannelGains::uniform(1.0), budget).unwrap_err();
        assert_eq!(err.to_string(), "p0 not finite");

        let budget = PowerBudget { p0: 1.0, p1: f64::INFINITY, p2: 1.0 };
        assert_eq!(
            validate_scenario(ChannelGains::uniform(1.0), budget).unwrap_err(),
            ModelError::NotFinite { field: "p1" }
        );
    }

    #[test]
    fn db_conversion() {
        assert!((db_to_linear(10.0) - 10.0).abs() < 1e-12);
        assert!((db_to_linear(-30.0) - 1e-3).abs() < 1e-18);
        assert!((linear_to_db(100.0) - 20.0).abs() < 1e-12);
        assert_eq!(linear_to_db(0.0), f64::NEG_INFINITY);
    }

    #[test]
    fn relabeling_is_an_involution() {
        let s = Scenario {
            gains: ChannelGains::new(0.3, 2.0, 1.5, 0.7, 4.0).unwrap(),
            budget: PowerBudget::new(1.0, 2.0, 3.0).unwrap(),
        };
        assert!(!s.is_canonically_ordered());
        let swapped = s.relays_swapped();
        assert!(swapped.is_canonically_ordered());
        assert_eq!(swapped.gains.h13, 4.0);
        assert_eq!(swapped.budget.p1, 3.0);
        assert_eq!(swapped.relays_swapped(), s);
    }
}
