//! Rate-versus-parameter sweeps and their CSV and plot outputs.
//!
//! Two sweep shapes are supported: relay power (`P1 = P2` on the axis, the
//! source a fixed number of dB above or below) and inter-relay gain (`h12` on
//! the axis, powers fixed). Every axis point yields one [`SweepRow`] per
//! requested scheme and bound, in configuration order.

mod config;
mod csv_io;
mod plot;

use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::{optimize_bound, BoundKind};
use crate::model::{db_to_linear, ChannelGains, ModelError, OptimizerConfig, PowerBudget, RateKind, RateReport};
use crate::optimizer::{optimize_schemes, OptimizerError};
use crate::schemes::SchemeId;

pub use config::{parse_sweep_config, read_sweep_config, Axis, PowerRegime, Spacing, SweepConfig, SweepKind};
pub use csv_io::{parse_csv, read_csv, write_csv, write_csv_file, CsvRecord, CSV_HEADER};
pub use plot::{emit_plot_script, parse_plot_script, PlotSeries};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid sweep config: {0}")]
    Config(String),
    #[error("sweep config syntax: {0}")]
    Toml(#[from] toml::de::Error),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{kind} at axis value {axis_value}: {source}")]
    Optimizer {
        kind: RateKind,
        axis_value: f64,
        #[source]
        source: OptimizerError,
    },
    #[error("no rows to plot")]
    EmptyRows,
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("bad alloc_params entry `{0}`")]
    AllocParams(String),
    #[error("plot script line {line}: {message}")]
    Plot { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One optimized scheme or bound at one axis point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    /// Index of the axis point.
    pub scenario_id: usize,
    pub axis_value: f64,
    pub gains: ChannelGains,
    pub budget: PowerBudget,
    pub report: RateReport,
}

impl SweepRow {
    pub fn name(&self) -> &'static str {
        self.report.kind.name()
    }

    pub fn rate(&self) -> f64 {
        self.report.total_bpcu
    }
}

/// Runs a sweep of either kind.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>, ExperimentError> {
    cfg.validate()?;
    let axis = cfg.axis.values();
    let per_point: Result<Vec<Vec<SweepRow>>, ExperimentError> = axis
        .par_iter()
        .enumerate()
        .map(|(i, &v)| {
            let (g, b) = cfg.scenario_at(v)?;
            point_rows(cfg, i, v, &g, &b)
        })
        .collect();
    Ok(per_point?.into_iter().flatten().collect())
}

/// Sweeps `P1 = P2` over the axis (dB) with `P0` offset by the regime.
pub fn sweep_relay_power(cfg: &SweepConfig) -> Result<Vec<SweepRow>, ExperimentError> {
    if cfg.kind != SweepKind::RelayPower {
        return Err(ExperimentError::Config("not a relay-power sweep".into()));
    }
    run_sweep(cfg)
}

/// Sweeps `h12` over the axis with everything else fixed.
pub fn sweep_inter_relay_gain(cfg: &SweepConfig) -> Result<Vec<SweepRow>, ExperimentError> {
    if cfg.kind != SweepKind::InterRelayGain {
        return Err(ExperimentError::Config("not an inter-relay-gain sweep".into()));
    }
    run_sweep(cfg)
}

fn point_rows(
    cfg: &SweepConfig,
    scenario_id: usize,
    axis_value: f64,
    g: &ChannelGains,
    b: &PowerBudget,
) -> Result<Vec<SweepRow>, ExperimentError> {
    let fail = |kind, source| ExperimentError::Optimizer { kind, axis_value, source };
    let mut schemes = optimize_schemes(&cfg.schemes, g, b, |id| cfg.optimizer_for(id));
    let mut rows = Vec::with_capacity(cfg.schemes.len() + cfg.bounds.len());
    let row = |report| SweepRow { scenario_id, axis_value, gains: *g, budget: *b, report };
    for id in &cfg.schemes {
        let report = schemes.remove(id).expect("requested scheme is computed").map_err(|e| fail(RateKind::Scheme(*id), e))?;
        rows.push(row(report));
    }
    for &kind in &cfg.bounds {
        let report = optimize_bound(kind, g, b, &cfg.bound_optimizer()).map_err(|e| fail(RateKind::Bound(kind), e))?;
        rows.push(row(report));
    }
    Ok(rows)
}

impl SweepConfig {
    /// Relay-power sweep with the source `p0_offset_db` above the relays, all
    /// gains 1, `P1 = P2` from -10 to 30 dB in 2 dB steps; DPC, DDF, SSRD and
    /// the full cut-set bound.
    pub fn relay_power_default(p0_offset_db: f64) -> Self {
        Self {
            kind: SweepKind::RelayPower,
            gains: ChannelGains::uniform(1.0),
            regime: PowerRegime::Offset { p0_offset_db },
            axis: Axis { start: -10.0, stop: 30.0, spacing: Spacing::Step(2.0) },
            schemes: vec![SchemeId::Dpc, SchemeId::Ddf, SchemeId::Ssrd],
            bounds: vec![BoundKind::FullCutset],
            optimizer: None,
            seed: 0,
        }
    }

    /// The four relay-power regimes: source 10, 5, 0 and -5 dB relative to
    /// the relays.
    pub fn relay_power_regimes() -> [Self; 4] {
        [10.0, 5.0, 0.0, -5.0].map(Self::relay_power_default)
    }

    /// Inter-relay gain sweep: `h12` log-spaced over [0.1, 10] at 21 points,
    /// other gains 1, every power 10 dB; DPC and the BME family against the
    /// successive cut-set bound.
    pub fn inter_relay_gain_default() -> Self {
        Self {
            kind: SweepKind::InterRelayGain,
            gains: ChannelGains::uniform(1.0),
            regime: PowerRegime::Fixed { p0_db: 10.0, p1_db: 10.0, p2_db: 10.0 },
            axis: Axis { start: 0.1, stop: 10.0, spacing: Spacing::LogPoints(21) },
            schemes: vec![SchemeId::Dpc, SchemeId::BmeSucc, SchemeId::BmeBack, SchemeId::BmeDpc],
            bounds: vec![BoundKind::SuccessiveCutset],
            optimizer: None,
            seed: 0,
        }
    }

    /// Gains and budget at one axis value.
    pub fn scenario_at(&self, v: f64) -> Result<(ChannelGains, PowerBudget), ExperimentError> {
        let (g, b) = match (self.kind, self.regime) {
            (SweepKind::RelayPower, PowerRegime::Offset { p0_offset_db }) => {
                let p = db_to_linear(v);
                (self.gains, PowerBudget::new(db_to_linear(v + p0_offset_db), p, p)?)
            }
            (SweepKind::InterRelayGain, PowerRegime::Fixed { p0_db, p1_db, p2_db }) => (
                self.gains.with_h12(v),
                PowerBudget::new(db_to_linear(p0_db), db_to_linear(p1_db), db_to_linear(p2_db))?,
            ),
            _ => return Err(ExperimentError::Config("power regime does not match the sweep kind".into())),
        };
        g.validate()?;
        Ok((g, b))
    }

    /// Configuration for one scheme: the explicit `optimizer` table if given,
    /// otherwise the scheme's preset; the sweep seed applies either way.
    pub fn optimizer_for(&self, id: SchemeId) -> OptimizerConfig {
        self.optimizer.unwrap_or_else(|| OptimizerConfig::for_scheme(id)).with_seed(self.seed)
    }

    pub fn bound_optimizer(&self) -> OptimizerConfig {
        match self.optimizer {
            Some(c) => c.bound_variant(),
            None => OptimizerConfig::for_bounds(),
        }
        .with_seed(self.seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(kind: SweepKind) -> SweepConfig {
        let mut c = match kind {
            SweepKind::RelayPower => SweepConfig::relay_power_default(0.0),
            SweepKind::InterRelayGain => SweepConfig::inter_relay_gain_default(),
        };
        c.axis = match kind {
            SweepKind::RelayPower => Axis { start: 0.0, stop: 10.0, spacing: Spacing::Step(5.0) },
            SweepKind::InterRelayGain => Axis { start: 0.1, stop: 10.0, spacing: Spacing::LogPoints(3) },
        };
        c
    }

    #[test]
    fn row_count_and_order() {
        let mut c = small(SweepKind::RelayPower);
        c.schemes = vec![SchemeId::Dpc, SchemeId::BmeSucc, SchemeId::BmeBack, SchemeId::Ddf];
        c.bounds = vec![];
        let rows = sweep_relay_power(&c).unwrap();
        assert_eq!(rows.len(), 12);
        let names: Vec<_> = rows[..4].iter().map(SweepRow::name).collect();
        assert_eq!(names, ["dpc", "bme-succ", "bme-back", "ddf"]);
        assert!(rows.windows(2).all(|w| w[0].scenario_id <= w[1].scenario_id));
        assert_eq!(rows[4].axis_value, 5.0);
    }

    #[test]
    fn dpc_constant_across_inter_relay_gain() {
        let rows = sweep_inter_relay_gain(&small(SweepKind::InterRelayGain)).unwrap();
        let dpc: Vec<f64> = rows.iter().filter(|r| r.name() == "dpc").map(SweepRow::rate).collect();
        assert_eq!(dpc.len(), 3);
        assert!(dpc.iter().all(|v| *v == dpc[0]));
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        assert!(sweep_inter_relay_gain(&small(SweepKind::RelayPower)).is_err());
        let mut c = small(SweepKind::RelayPower);
        c.regime = PowerRegime::Fixed { p0_db: 0.0, p1_db: 0.0, p2_db: 0.0 };
        assert!(matches!(run_sweep(&c), Err(ExperimentError::Config(_))));
    }

    #[test]
    fn rerun_is_identical() {
        let c = small(SweepKind::InterRelayGain);
        assert_eq!(run_sweep(&c).unwrap(), run_sweep(&c).unwrap());
    }
}
