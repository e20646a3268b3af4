//! Numerical checks of the two asymptotic optimality results.
//!
//! Relay powers scale with the source power, `P1 = γ1·P0` and `P2 = γ2·P0`.
//! At high SNR the DPC scheme approaches the cut-set bound; at low SNR, under
//! [`low_snr_condition`], so does all-common DDF with equal slot durations.

use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::{cutset_optimize, low_snr_linear_bound};
use crate::kernel::{coherent, slot};
use crate::model::{check_quantity, db_to_linear, Allocation, ChannelGains, ModelError, OptimizerConfig, PowerBudget};
use crate::optimizer::{optimize_ddf_fixed_time, optimize_dpc, OptimizerError};
use crate::schemes::require_canonical;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Optimizer(#[from] OptimizerError),
    #[error("p0 grid must be finite and sorted ascending")]
    UnsortedGrid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticScenario {
    pub gains: ChannelGains,
    pub gamma1: f64,
    pub gamma2: f64,
    /// Source powers in dB, ascending.
    pub p0_grid_db: Vec<f64>,
}

impl AsymptoticScenario {
    pub fn new(gains: ChannelGains, gamma1: f64, gamma2: f64, p0_grid_db: Vec<f64>) -> Result<Self, AsymptoticError> {
        let s = Self { gains, gamma1, gamma2, p0_grid_db };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), AsymptoticError> {
        self.gains.validate()?;
        check_quantity("gamma1", self.gamma1)?;
        check_quantity("gamma2", self.gamma2)?;
        if self.p0_grid_db.iter().any(|v| !v.is_finite()) || self.p0_grid_db.windows(2).any(|w| w[0] > w[1]) {
            return Err(AsymptoticError::UnsortedGrid);
        }
        Ok(())
    }

    pub fn budget_at(&self, p0_db: f64) -> Result<PowerBudget, ModelError> {
        PowerBudget::proportional(db_to_linear(p0_db), self.gamma1, self.gamma2)
    }
}

/// One grid point of a study.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyRow {
    pub p0_db: f64,
    pub scheme_rate: f64,
    pub bound_rate: f64,
    /// `scheme_rate / bound_rate`, or 1 when the bound is zero.
    pub ratio: f64,
    /// Slot-3 plus slot-4 share of the bound's optimal schedule (high SNR).
    pub t_hat3_plus_t_hat4: Option<f64>,
    pub gap_bits: f64,
    /// Closed-form all-common DDF rate (low SNR).
    pub all_common_rate: Option<f64>,
    /// The low-SNR condition fails for this scenario.
    pub condition_violated: bool,
    pub scheme_allocation: Allocation,
    pub bound_allocation: Allocation,
}

impl StudyRow {
    /// `gap · log₂ P0`, which stays bounded when the gap is `O(1/log P0)`.
    pub fn gap_times_log2_p0(&self) -> f64 {
        self.gap_bits * db_to_linear(self.p0_db).log2()
    }
}

fn ratio(scheme: f64, bound: f64) -> f64 {
    if bound > 0.0 {
        scheme / bound
    } else {
        1.0
    }
}

/// `(h13√γ1 + h23√γ2)² ≤ min(h01², h02²)`.
pub fn low_snr_condition(gains: &ChannelGains, gamma1: f64, gamma2: f64) -> bool {
    let lhs = gains.h13 * gamma1.sqrt() + gains.h23 * gamma2.sqrt();
    lhs * lhs <= (gains.h01 * gains.h01).min(gains.h02 * gains.h02)
}

/// DDF rate with equal slots and no private messages:
/// `min(½C(2h02²P0), ½C(2(h13√P1 + h23√P2)²))`.
pub fn all_common_rate(gains: &ChannelGains, budget: &PowerBudget) -> f64 {
    let broadcast = slot(0.5, gains.h02 * gains.h02 * budget.p0);
    let mac = slot(0.5, coherent(gains.h13, budget.p1, gains.h23, budget.p2));
    broadcast.min(mac)
}

fn study<F>(scn: &AsymptoticScenario, row: F) -> Result<Vec<StudyRow>, AsymptoticError>
where
    F: Fn(f64) -> Result<StudyRow, AsymptoticError> + Sync,
{
    scn.validate()?;
    scn.p0_grid_db.par_iter().map(|&db| row(db)).collect()
}

/// DDF at `t3 = t4 = ½` against the tighter of the cut-set bound and the
/// linear low-SNR bound. Requires `h01 >= h02`.
pub fn low_snr_study(scn: &AsymptoticScenario, cfg: &OptimizerConfig) -> Result<Vec<StudyRow>, AsymptoticError> {
    require_canonical(&scn.gains).map_err(OptimizerError::from)?;
    let violated = !low_snr_condition(&scn.gains, scn.gamma1, scn.gamma2);
    study(scn, |db| {
        let b = scn.budget_at(db)?;
        let ddf = optimize_ddf_fixed_time(&scn.gains, &b, 0.5, cfg)?;
        let cut = cutset_optimize(&scn.gains, &b, &cfg.bound_variant())?;
        let linear = low_snr_linear_bound(&scn.gains, scn.gamma1, scn.gamma2, b.p0)?;
        let bound = cut.total_bpcu.min(linear);
        Ok(StudyRow {
            p0_db: db,
            scheme_rate: ddf.total_bpcu,
            bound_rate: bound,
            ratio: ratio(ddf.total_bpcu, bound),
            t_hat3_plus_t_hat4: None,
            gap_bits: bound - ddf.total_bpcu,
            all_common_rate: Some(all_common_rate(&scn.gains, &b)),
            condition_violated: violated,
            scheme_allocation: ddf.allocation,
            bound_allocation: cut.allocation,
        })
    })
}

/// DPC against the cut-set bound, with the bound's simultaneous-slot share.
pub fn high_snr_study(scn: &AsymptoticScenario, cfg: &OptimizerConfig) -> Result<Vec<StudyRow>, AsymptoticError> {
    study(scn, |db| {
        let b = scn.budget_at(db)?;
        let dpc = optimize_dpc(&scn.gains, &b, cfg, &[])?;
        let cut = cutset_optimize(&scn.gains, &b, &cfg.bound_variant())?;
        let t = cut.allocation.times();
        Ok(StudyRow {
            p0_db: db,
            scheme_rate: dpc.total_bpcu,
            bound_rate: cut.total_bpcu,
            ratio: ratio(dpc.total_bpcu, cut.total_bpcu),
            t_hat3_plus_t_hat4: Some(t[2] + t[3]),
            gap_bits: cut.total_bpcu - dpc.total_bpcu,
            all_common_rate: None,
            condition_violated: false,
            scheme_allocation: dpc.allocation,
            bound_allocation: cut.allocation,
        })
    })
}
