//! Cut-set upper bounds on the capacity.

use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use crate::kernel::{coherent, slot, slot_with_product};
use crate::model::{
    check_quantity, Allocation, BoundAllocation, ChannelGains, ModelError, OptimizerConfig,
    PowerBudget, RateKind, RateReport, TimeAllocation,
};
use crate::optimizer::{maximize_min_seeded, OptimizerError, SearchSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundKind {
    /// Cut-set bound over all four network states.
    FullCutset,
    /// Cut-set bound restricted to the two successive states.
    SuccessiveCutset,
    /// Linear low-SNR bound through the relays-to-destination cut.
    LowSnrLinear,
}

impl BoundKind {
    pub const ALL: [BoundKind; 3] = [Self::FullCutset, Self::SuccessiveCutset, Self::LowSnrLinear];

    pub fn name(self) -> &'static str {
        match self {
            Self::FullCutset => "cutset",
            Self::SuccessiveCutset => "successive-cutset",
            Self::LowSnrLinear => "low-snr-linear",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cutset" | "full" => Ok(Self::FullCutset),
            "successive-cutset" | "successive" => Ok(Self::SuccessiveCutset),
            "low-snr-linear" => Ok(Self::LowSnrLinear),
            _ => Err(format!("unknown bound `{s}`")),
        }
    }
}

/// Broadcast cut, the two mixed cuts and the MAC cut.
pub(crate) fn cutset_cuts(g: &ChannelGains, a: &BoundAllocation) -> [f64; 4] {
    let t = &a.time;
    let (h01s, h02s, h12s, h13s, h23s) =
        (g.h01 * g.h01, g.h02 * g.h02, g.h12 * g.h12, g.h13 * g.h13, g.h23 * g.h23);
    let broadcast = slot(t.t1, h01s * a.p0_1) + slot(t.t2, h02s * a.p0_2) + slot(t.t3, (h01s + h02s) * a.p0_3);
    let cut_relay1 = slot_with_product(
        t.t2,
        h02s * a.p0_2 + (h12s + h13s) * a.p1_2 + 2.0 * g.h02 * g.h12 * (a.p0_2 * a.p1_2).sqrt(),
        h02s * h13s * a.p0_2 * a.p1_2,
    ) + slot(t.t3, h02s * a.p0_3)
        + slot(t.t4, h13s * a.p1_4);
    let cut_relay2 = slot_with_product(
        t.t1,
        h01s * a.p0_1 + (h12s + h23s) * a.p2_1 + 2.0 * g.h01 * g.h12 * (a.p0_1 * a.p2_1).sqrt(),
        h01s * h23s * a.p0_1 * a.p2_1,
    ) + slot(t.t3, h01s * a.p0_3)
        + slot(t.t4, h23s * a.p2_4);
    let mac = slot(t.t1, h23s * a.p2_1) + slot(t.t2, h13s * a.p1_2) + slot(t.t4, coherent(g.h13, a.p1_4, g.h23, a.p2_4));
    [broadcast, cut_relay1, cut_relay2, mac]
}

/// Value of the cut-set bound at one time and power split.
pub fn cutset_eval(g: &ChannelGains, b: &PowerBudget, a: &BoundAllocation) -> Result<RateReport, ModelError> {
    a.validate(b)?;
    let c = cutset_cuts(g, a);
    Ok(RateReport::from_cuts(
        RateKind::Bound(BoundKind::FullCutset),
        c.to_vec(),
        vec![("broadcast", c[0]), ("relay1_side", c[1]), ("relay2_side", c[2]), ("mac", c[3])],
        Allocation::Bound(*a),
    ))
}

fn full_alloc(x: &[f64]) -> BoundAllocation {
    BoundAllocation {
        time: TimeAllocation { t1: x[0], t2: x[1], t3: x[2], t4: x[3] },
        p0_1: x[4],
        p0_2: x[5],
        p0_3: x[6],
        p1_2: x[7],
        p1_4: x[8],
        p2_1: x[9],
        p2_4: x[10],
    }
}

fn full_point(a: &BoundAllocation) -> Vec<f64> {
    let t = &a.time;
    vec![t.t1, t.t2, t.t3, t.t4, a.p0_1, a.p0_2, a.p0_3, a.p1_2, a.p1_4, a.p2_1, a.p2_4]
}

/// Maximizes the cut-set bound over all time and power splits.
///
/// The successive-bound optimum is always among the starting points, so the
/// result never falls below [`successive_cutset_optimize`] with the same
/// configuration.
pub fn cutset_optimize(g: &ChannelGains, b: &PowerBudget, cfg: &OptimizerConfig) -> Result<RateReport, OptimizerError> {
    cutset_optimize_seeded(g, b, cfg, &[])
}

/// [`cutset_optimize`] with extra starting allocations.
pub fn cutset_optimize_seeded(
    g: &ChannelGains,
    b: &PowerBudget,
    cfg: &OptimizerConfig,
    seeds: &[BoundAllocation],
) -> Result<RateReport, OptimizerError> {
    let successive = successive_cutset_optimize(g, b, cfg)?;
    let mut starts: Vec<Vec<f64>> = seeds.iter().map(full_point).collect();
    if let Allocation::Bound(a) = successive.allocation {
        starts.push(full_point(&a));
    }
    let space = SearchSpace::new().simplex(4, 1.0).simplex(3, b.p0).simplex(2, b.p1).simplex(2, b.p2);
    let o = maximize_min_seeded(
        |x, out| {
            out.copy_from_slice(&cutset_cuts(g, &full_alloc(x)));
            true
        },
        4,
        &space,
        cfg,
        &starts,
    )?;
    Ok(cutset_eval(g, b, &full_alloc(&o.point))?)
}

fn successive_alloc(b: &PowerBudget, x: &[f64]) -> BoundAllocation {
    BoundAllocation {
        time: TimeAllocation { t1: x[0], t2: x[1], t3: 0.0, t4: 0.0 },
        p0_1: x[2],
        p0_2: x[3],
        p0_3: 0.0,
        p1_2: b.p1,
        p1_4: 0.0,
        p2_1: b.p2,
        p2_4: 0.0,
    }
}

/// Cut-set bound with the simultaneous states switched off.
pub fn successive_cutset_optimize(
    g: &ChannelGains,
    b: &PowerBudget,
    cfg: &OptimizerConfig,
) -> Result<RateReport, OptimizerError> {
    let space = SearchSpace::new().simplex(2, 1.0).simplex(2, b.p0);
    let o = maximize_min_seeded(
        |x, out| {
            out.copy_from_slice(&cutset_cuts(g, &successive_alloc(b, x)));
            true
        },
        4,
        &space,
        cfg,
        &[],
    )?;
    let mut report = cutset_eval(g, b, &successive_alloc(b, &o.point))?;
    report.kind = RateKind::Bound(BoundKind::SuccessiveCutset);
    Ok(report)
}

/// `(h13√γ1 + h23√γ2)²·P0 / (2 ln 2)`: linear bound on the relays-to-destination
/// cut, valid at low SNR.
pub fn low_snr_linear_bound(g: &ChannelGains, gamma1: f64, gamma2: f64, p0: f64) -> Result<f64, ModelError> {
    check_quantity("h13", g.h13)?;
    check_quantity("h23", g.h23)?;
    check_quantity("gamma1", gamma1)?;
    check_quantity("gamma2", gamma2)?;
    check_quantity("p0", p0)?;
    let a = g.h13 * gamma1.sqrt() + g.h23 * gamma2.sqrt();
    Ok(a * a * p0 / (2.0 * LN_2))
}

/// [`low_snr_linear_bound`] wrapped in a report.
pub fn low_snr_linear_report(g: &ChannelGains, gamma1: f64, gamma2: f64, p0: f64) -> Result<RateReport, ModelError> {
    let v = low_snr_linear_bound(g, gamma1, gamma2, p0)?;
    Ok(RateReport::from_cuts(RateKind::Bound(BoundKind::LowSnrLinear), vec![v], Vec::new(), Allocation::None))
}

/// Evaluates one bound for a fixed budget. The linear bound takes its power
/// ratios from the budget, `γi = Pi / P0`, which makes it
/// `(h13√P1 + h23√P2)² / (2 ln 2)`.
pub fn optimize_bound(
    kind: BoundKind,
    g: &ChannelGains,
    b: &PowerBudget,
    cfg: &OptimizerConfig,
) -> Result<RateReport, OptimizerError> {
    match kind {
        BoundKind::FullCutset => cutset_optimize(g, b, cfg),
        BoundKind::SuccessiveCutset => successive_cutset_optimize(g, b, cfg),
        BoundKind::LowSnrLinear => {
            g.validate()?;
            b.validate()?;
            let v = coherent(g.h13, b.p1, g.h23, b.p2) / (2.0 * LN_2);
            Ok(RateReport::from_cuts(RateKind::Bound(kind), vec![v], Vec::new(), Allocation::None))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_power_gives_zero() {
        let g = ChannelGains::uniform(1.0);
        let b = PowerBudget { p0: 0.0, p1: 0.0, p2: 0.0 };
        let a = BoundAllocation::successive(0.5, 0.0, &b);
        assert_eq!(cutset_eval(&g, &b, &a).unwrap().total_bpcu, 0.0);
        let cfg = OptimizerConfig::for_bounds().with_grid(5);
        assert_eq!(cutset_optimize(&g, &b, &cfg).unwrap().total_bpcu, 0.0);
        assert_eq!(successive_cutset_optimize(&g, &b, &cfg).unwrap().total_bpcu, 0.0);
    }

    #[test]
    fn dominates_symmetric_dpc_point() {
        let g = ChannelGains::uniform(1.0);
        let b = PowerBudget { p0: 3.0, p1: 1.5, p2: 1.5 };
        let a = BoundAllocation::successive(0.5, 1.5, &b);
        assert!(cutset_eval(&g, &b, &a).unwrap().total_bpcu >= 1.0);
    }

    #[test]
    fn relays_cut_off() {
        let g = ChannelGains { h13: 0.0, h23: 0.0, ..ChannelGains::uniform(1.0) };
        let b = PowerBudget { p0: 3.0, p1: 1.5, p2: 1.5 };
        let a = BoundAllocation::successive(0.5, 1.5, &b);
        assert_eq!(cutset_eval(&g, &b, &a).unwrap().total_bpcu, 0.0);
    }

    #[test]
    fn linear_bound_values() {
        let g = ChannelGains::uniform(1.0);
        let v = low_snr_linear_bound(&g, 0.25, 0.25, 0.01).unwrap();
        assert!((v - 0.01 / (2.0 * LN_2)).abs() < 1e-15);
        assert!((v - 0.0072135).abs() < 1e-7);
        assert_eq!(low_snr_linear_bound(&g, 0.25, 0.25, 0.0).unwrap(), 0.0);
        assert_eq!(low_snr_linear_bound(&g, 0.0, 0.0, 1.0).unwrap(), 0.0);
        assert!(low_snr_linear_bound(&g, -1.0, 0.0, 1.0).is_err());

        let b = PowerBudget::proportional(0.01, 0.25, 0.25).unwrap();
        let r = optimize_bound(BoundKind::LowSnrLinear, &g, &b, &OptimizerConfig::default()).unwrap();
        assert!((r.total_bpcu - v).abs() < 1e-15);
    }

    #[test]
    fn kind_names_parse() {
        for k in BoundKind::ALL {
            assert_eq!(k.name().parse::<BoundKind>().unwrap(), k);
        }
    }
}
