use std::path::Path;

use serde::Deserialize;

use super::ExperimentError;
use crate::bounds::BoundKind;
use crate::model::{ChannelGains, OptimizerConfig};
use crate::schemes::SchemeId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    RelayPower,
    InterRelayGain,
}

/// How the powers follow the axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PowerRegime {
    /// `P1 = P2` is the axis value in dB and `P0` sits `p0_offset_db` above it.
    Offset { p0_offset_db: f64 },
    /// Powers do not depend on the axis.
    Fixed { p0_db: f64, p1_db: f64, p2_db: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Spacing {
    /// Uniform steps from `start`; `stop` is included when it lies on the grid.
    Step(f64),
    /// Geometric spacing with this many points, both ends included.
    LogPoints(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub spacing: Spacing,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        match self.spacing {
            Spacing::Step(step) => {
                let n = ((self.stop - self.start) / step * (1.0 + 1e-12)).floor() as usize + 1;
                (0..n).map(|k| self.start + k as f64 * step).collect()
            }
            Spacing::LogPoints(1) => vec![self.start],
            Spacing::LogPoints(n) => {
                let ratio = self.stop / self.start;
                (0..n)
                    .map(|k| if k + 1 == n { self.stop } else { self.start * ratio.powf(k as f64 / (n - 1) as f64) })
                    .collect()
            }
        }
    }

    fn validate(&self) -> Result<(), String> {
        if !self.start.is_finite() || !self.stop.is_finite() || self.start > self.stop {
            return Err(format!("axis needs finite start <= stop, got {} and {}", self.start, self.stop));
        }
        match self.spacing {
            Spacing::Step(s) if !(s > 0.0 && s.is_finite()) => Err(format!("axis step must be positive, got {s}")),
            Spacing::LogPoints(0) => Err("axis needs at least one point".into()),
            Spacing::LogPoints(_) if self.start <= 0.0 => Err("log-spaced axis needs a positive start".into()),
            _ => Ok(()),
        }
    }
}

/// A complete sweep description.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub kind: SweepKind,
    /// Base gains; an inter-relay-gain sweep overrides `h12`.
    pub gains: ChannelGains,
    pub regime: PowerRegime,
    pub axis: Axis,
    pub schemes: Vec<SchemeId>,
    pub bounds: Vec<BoundKind>,
    /// One configuration for every scheme and bound; `None` uses the presets.
    pub optimizer: Option<OptimizerConfig>,
    pub seed: u64,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: String| Err(ExperimentError::Config(m));
        self.gains.validate()?;
        if let Err(m) = self.axis.validate() {
            return bad(m);
        }
        if self.schemes.is_empty() && self.bounds.is_empty() {
            return bad("at least one scheme or bound is required".into());
        }
        match (self.kind, self.regime) {
            (SweepKind::RelayPower, PowerRegime::Offset { p0_offset_db }) if p0_offset_db.is_finite() => {}
            (SweepKind::InterRelayGain, PowerRegime::Fixed { p0_db, p1_db, p2_db })
                if [p0_db, p1_db, p2_db].iter().all(|v| v.is_finite() || *v == f64::NEG_INFINITY) => {}
            (SweepKind::RelayPower, _) => return bad("relay-power sweep needs `p0_offset_db`".into()),
            (SweepKind::InterRelayGain, _) => return bad("inter-relay-gain sweep needs `p0_db`, `p1_db`, `p2_db`".into()),
        }
        if let Some(c) = &self.optimizer {
            c.validate()?;
        }
        Ok(())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    kind: String,
    #[serde(default)]
    schemes: Vec<String>,
    #[serde(default)]
    bounds: Vec<String>,
    #[serde(default)]
    seed: u64,
    gains: RawGains,
    regime: RawRegime,
    axis: RawAxis,
    optimizer: Option<OptimizerConfig>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGains {
    h01: f64,
    h02: f64,
    h12: f64,
    h13: f64,
    h23: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRegime {
    p0_offset_db: Option<f64>,
    p0_db: Option<f64>,
    p1_db: Option<f64>,
    p2_db: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxis {
    start: f64,
    stop: f64,
    step: Option<f64>,
    points: Option<usize>,
    #[serde(default)]
    log: bool,
}

/// Parses a sweep description in TOML:
///
/// ```toml
/// kind = "relay-power"            # or "inter-relay-gain"
/// schemes = ["dpc", "ddf", "ssrd"]
/// bounds = ["cutset"]
/// seed = 0
///
/// [gains]
/// h01 = 1.0
/// h02 = 1.0
/// h12 = 1.0
/// h13 = 1.0
/// h23 = 1.0
///
/// [regime]
/// p0_offset_db = 10.0             # or p0_db, p1_db, p2_db
///
/// [axis]
/// start = -10.0
/// stop = 30.0
/// step = 2.0                      # or points = 21 with log = true
/// ```
///
/// An optional `[optimizer]` table replaces the per-scheme presets.
pub fn parse_sweep_config(text: &str) -> Result<SweepConfig, ExperimentError> {
    let raw: RawConfig = toml::from_str(text)?;
    let cfg_err = |m: String| ExperimentError::Config(m);
    let kind = match raw.kind.as_str() {
        "relay-power" => SweepKind::RelayPower,
        "inter-relay-gain" => SweepKind::InterRelayGain,
        other => return Err(cfg_err(format!("unknown sweep kind `{other}`"))),
    };
    let schemes = raw.schemes.iter().map(|s| s.parse::<SchemeId>()).collect::<Result<Vec<_>, _>>().map_err(cfg_err)?;
    let bounds = raw.bounds.iter().map(|s| s.parse::<BoundKind>()).collect::<Result<Vec<_>, _>>().map_err(cfg_err)?;
    let g = raw.gains;
    let gains = ChannelGains::new(g.h01, g.h02, g.h12, g.h13, g.h23)?;
    let r = raw.regime;
    let regime = match (r.p0_offset_db, r.p0_db, r.p1_db, r.p2_db) {
        (Some(o), None, None, None) => PowerRegime::Offset { p0_offset_db: o },
        (None, Some(p0_db), Some(p1_db), Some(p2_db)) => PowerRegime::Fixed { p0_db, p1_db, p2_db },
        _ => return Err(cfg_err("regime needs either `p0_offset_db` alone or all of `p0_db`, `p1_db`, `p2_db`".into())),
    };
    let a = raw.axis;
    let spacing = match (a.step, a.points, a.log) {
        (Some(s), None, false) => Spacing::Step(s),
        (None, Some(n), true) => Spacing::LogPoints(n),
        _ => return Err(cfg_err("axis needs either `step` or `points` with `log = true`".into())),
    };
    let cfg = SweepConfig {
        kind,
        gains,
        regime,
        axis: Axis { start: a.start, stop: a.stop, spacing },
        schemes,
        bounds,
        optimizer: raw.optimizer,
        seed: raw.seed,
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn read_sweep_config(path: &Path) -> Result<SweepConfig, ExperimentError> {
    parse_sweep_config(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const RELAY: &str = r#"
kind = "relay-power"
schemes = ["dpc", "ssrd"]
bounds = ["cutset"]

[gains]
h01 = 1.0
h02 = 1.0
h12 = 1.0
h13 = 1.0
h23 = 1.0

[regime]
p0_offset_db = 5.0

[axis]
start = -10.0
stop = 30.0
step = 2.0
"#;

    #[test]
    fn parses_relay_power_config() {
        let c = parse_sweep_config(RELAY).unwrap();
        assert_eq!(c.kind, SweepKind::RelayPower);
        assert_eq!(c.schemes, [SchemeId::Dpc, SchemeId::Ssrd]);
        assert_eq!(c.regime, PowerRegime::Offset { p0_offset_db: 5.0 });
        assert_eq!(c.axis.values().len(), 21);
        assert!(c.optimizer.is_none());
    }

    #[test]
    fn parses_log_axis_and_optimizer_table() {
        let text = RELAY
            .replace("relay-power", "inter-relay-gain")
            .replace("p0_offset_db = 5.0", "p0_db = 10.0\np1_db = 10.0\np2_db = 10.0")
            .replace("start = -10.0\nstop = 30.0\nstep = 2.0", "start = 0.1\nstop = 10.0\npoints = 5\nlog = true")
            + "\n[optimizer]\ngrid_points_per_dim = 5\n";
        let c = parse_sweep_config(&text).unwrap();
        let v = c.axis.values();
        assert_eq!(v.len(), 5);
        assert!((v[2] - 1.0).abs() < 1e-12 && v[4] == 10.0);
        assert_eq!(c.optimizer.unwrap().grid_points_per_dim, 5);
    }

    #[test]
    fn rejects_bad_configs() {
        for (from, to) in [
            ("relay-power", "other"),
            ("\"ssrd\"", "\"nope\""),
            ("p0_offset_db = 5.0", "p0_db = 5.0"),
            ("step = 2.0", "step = 0.0"),
            ("step = 2.0", "step = 2.0\ncolor = 1"),
            ("h23 = 1.0", ""),
        ] {
            assert!(parse_sweep_config(&RELAY.replace(from, to)).is_err(), "{from} -> {to}");
        }
    }

    #[test]
    fn step_axis_includes_stop() {
        let a = Axis { start: 0.0, stop: 1.0, spacing: Spacing::Step(0.1) };
        let v = a.values();
        assert_eq!(v.len(), 11);
        assert!((v[10] - 1.0).abs() < 1e-12);
    }
}
