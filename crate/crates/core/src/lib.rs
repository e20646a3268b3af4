//! Achievable rates and cut-set bounds for the half-duplex Gaussian parallel
//! relay channel: a source, two half-duplex relays and a destination with no
//! direct link.
//!
//! ```
//! use relaylab::model::{ChannelGains, DpcAllocation, PowerBudget};
//! use relaylab::schemes::dpc_eval;
//!
//! let gains = ChannelGains::uniform(1.0);
//! let budget = PowerBudget::new(3.0, 1.5, 1.5).unwrap();
//! let report = dpc_eval(&gains, &budget, &DpcAllocation::symmetric(&budget)).unwrap();
//! assert!((report.total_bpcu - 1.0).abs() < 1e-12);
//! ```

pub mod asymptotics;
pub mod bounds;
pub mod cli;
pub mod experiments;
pub mod kernel;
pub mod model;
pub mod optimizer;
pub mod schemes;
