//! Maximization of every scheme over its allocation space.

use std::collections::BTreeMap;

use super::{maximize_min_constrained, maximize_min_seeded, OptimizerError, SearchSpace};
use crate::model::{
    BmeBackAllocation, BmeDpcAllocation, BmeSuccAllocation, ChannelGains, CooperatingRelay,
    DdfAllocation, DpcAllocation, ModelError, OptimizerConfig, PowerBudget, RateReport, SsrdAllocation,
    TimeAllocation,
};
use crate::schemes::{
    back_cuts, bme_back_eval, bme_dpc_cuts, bme_dpc_eval, bme_succ_eval, ddf_cut_array, ddf_eval,
    ddf_tighten, ddf_value, dpc_cut_array, dpc_eval, require_canonical, ssrd_eval, ssrd_terms,
    succ_cut_array, SchemeId,
};

/// Adapts a fixed-size cut function to the optimizer's term interface.
fn fill<const N: usize>(out: &mut [f64], cuts: [f64; N]) -> bool {
    out.copy_from_slice(&cuts);
    true
}

fn two_slot_space(b: &PowerBudget) -> SearchSpace {
    SearchSpace::new().simplex(2, 1.0).simplex(2, b.p0)
}

fn dpc_alloc(x: &[f64]) -> DpcAllocation {
    DpcAllocation { t1: x[0], t2: x[1], p0_1: x[2], p0_2: x[3] }
}

pub fn optimize_dpc(
    g: &ChannelGains,
    b: &PowerBudget,
    cfg: &OptimizerConfig,
    seeds: &[DpcAllocation],
) -> Result<RateReport, OptimizerError> {
    let seeds: Vec<Vec<f64>> = seeds.iter().map(|a| vec![a.t1, a.t2, a.p0_1, a.p0_2]).collect();
    let o = maximize_min_seeded(
        |x, out| fill(out, dpc_cut_array(g, b, &dpc_alloc(x))),
        4,
        &two_slot_space(b),
        cfg,
        &seeds,
    )?;
    Ok(dpc_eval(g, b, &dpc_alloc(&o.point))?)
}

fn succ_alloc(x: &[f64]) -> BmeSuccAllocation {
    BmeSuccAllocation {
        t1: x[0],
        t2: x[1],
        p0_1: x[2],
        p0_2: x[3],
        alpha1: x[4],
        alpha2: x[5],
        theta1: x[6],
        theta2: x[7],
    }
}

pub fn optimize_bme_succ(
    g: &ChannelGains,
    b: &PowerBudget,
    cfg: &OptimizerConfig,
    seeds: &[BmeSuccAllocation],
) -> Result<RateReport, OptimizerError> {
    let space = two_slot_space(b).boxed(vec![0.0; 4], vec![1.0; 4]);
    let seeds: Vec<Vec<f64>> = seeds
        .iter()
        .map(|a| vec![a.t1, a.t2, a.p0_1, a.p0_2, a.alpha1, a.alpha2, a.theta1, a.theta2])
        .collect();
    let o = maximize_min_seeded(|x, out| fill(out, succ_cut_array(g, b, &succ_alloc(x))), 6, &space, cfg, &seeds)?;
    Ok(bme_succ_eval(g, b, &succ_alloc(&o.point))?)
}

fn back_alloc(x: &[f64]) -> BmeBackAllocation {
    BmeBackAllocation { t1: x[0], t2: x[1], p0_1: x[2], p0_2: x[3], beta1: x[4], beta2: x[5] }
}

impl From<&BmeSuccAllocation> for BmeBackAllocation {
    /// Backward-decoding allocation that does at least as well as the
    /// successive-decoding one: each fresh-information share absorbs the part
    /// of the cooperative signal the other relay cannot use.
    fn from(a: &BmeSuccAllocation) -> Self {
        Self {
            t1: a.t1,
            t2: a.t2,
            p0_1: a.p0_1,
            p0_2: a.p0_2,
            beta1: 1.0 - (1.0 - a.alpha1) * a.theta2,
            beta2: 1.0 - (1.0 - a.alpha2) * a.theta1,
        }
    }
}

pub fn optimize_bme_back(
    g: &ChannelGains,
    b: &PowerBudget,
    cfg: &OptimizerConfig,
    seeds: &[BmeBackAllocation],
) -> Result<RateReport, OptimizerError> {
    let space = two_slot_space(b).boxed(vec![0.0; 2], vec![1.0; 2]);
    let seeds: Vec<Vec<f64>> =
        seeds.iter().map(|a| vec![a.t1, a.t2, a.p0_1, a.p0_2, a.beta1, a.beta2]).collect();
    let o = maximize_min_seeded(|x, out| fill(out, back_cuts(g, b, &back_alloc(x))), 4, &space, cfg, &seeds)?;
    Ok(bme_back_eval(g, b, &back_alloc(&o.point))?)
}

fn bme_dpc_alloc(x: &[f64], cooperating: CooperatingRelay) -> BmeDpcAllocation {
    BmeDpcAllocation { t1: x[0], t2: x[1], p0_1: x[2], p0_2: x[3], alpha: x[4], cooperating }
}

impl BmeDpcAllocation {
    /// The two composite allocations matching a backward-decoding one; the
    /// better of them is never worse.
    pub fn from_back(a: &BmeBackAllocation) -> [Self; 2] {
        let base = Self {
            t1: a.t1,
            t2: a.t2,
            p0_1: a.p0_1,
            p0_2: a.p0_2,
            alpha: a.beta1,
            cooperating: CooperatingRelay::First,
        };
        [base, Self { alpha: a.beta2, cooperating: CooperatingRelay::Second, ..base }]
    }
}

/// Searches both cooperating-relay orientations and keeps the better one
/// (the first on ties).
pub fn optimize_bme_dpc(
    g: &ChannelGains,
    b: &PowerBudget,
    cfg: &OptimizerConfig,
    seeds: &[BmeDpcAllocation],
) -> Result<RateReport, OptimizerError> {
    let space = two_slot_space(b).interval(0.0, 1.0);
    let mut best: Option<RateReport> = None;
    for orientation in [CooperatingRelay::First, CooperatingRelay::Second] {
        let seeds: Vec<Vec<f64>> = seeds
            .iter()
            .filter(|a| a.cooperating == orientation)
            .map(|a| vec![a.t1, a.t2, a.p0_1, a.p0_2, a.alpha])
            .collect();
        let o = maximize_min_seeded(
            |x, out| fill(out, bme_dpc_cuts(g, b, &bme_dpc_alloc(x, orientation))),
            4,
            &space,
            cfg,
            &seeds,
        )?;
        let report = bme_dpc_eval(g, b, &bme_dpc_alloc(&o.point, orientation))?;
        if best.as_ref().map_or(true, |r| report.total_bpcu > r.total_bpcu) {
            best = Some(report);
        }
    }
    Ok(best.expect("two orientations searched"))
}

fn ddf_alloc(x: &[f64]) -> DdfAllocation {
    DdfAllocation { t3: x[0], t4: x[1], p0p: x[2], p0c: x[3], p1p: x[4], p1c: x[5] }
}

/// The reported allocation is moved to the successive-decoding corner, so
/// private powers are no larger than the private rate needs.
pub fn optimize_ddf(
    g: &ChannelGains,
    b: &PowerBudget,
    cfg: &OptimizerConfig,
    seeds: &[DdfAllocation],
) -> Result<RateReport, OptimizerError> {
    require_canonical(g)?;
    let space = SearchSpace::new().simplex(2, 1.0).simplex(2, b.p0).simplex(2, b.p1);
    let seeds: Vec<Vec<f64>> = seeds.iter().map(|a| vec![a.t3, a.t4, a.p0p, a.p0c, a.p1p, a.p1c]).collect();
    let o = maximize_min_seeded(|x, out| fill(out, ddf_cut_array(g, b, &ddf_alloc(x))), 3, &space, cfg, &seeds)?;
    let found = ddf_alloc(&o.point);
    let tight = ddf_tighten(g, b, &found);
    let pick = if ddf_value(g, b, &tight) >= o.value * (1.0 - 1e-12) { tight } else { found };
    Ok(ddf_eval(g, b, &pick)?)
}

/// [`optimize_ddf`] with the slot durations held at `t3` and `1 - t3`; only
/// the power splits are searched. The all-common split is always a start.
pub fn optimize_ddf_fixed_time(
    g: &ChannelGains,
    b: &PowerBudget,
    t3: f64,
    cfg: &OptimizerConfig,
) -> Result<RateReport, OptimizerError> {
    require_canonical(g)?;
    if !(0.0..=1.0).contains(&t3) {
        return Err(ModelError::Allocation(format!("t3 = {t3} outside [0, 1]")).into());
    }
    let t4 = 1.0 - t3;
    let at = |x: &[f64]| DdfAllocation { t3, t4, p0p: x[0], p0c: x[1], p1p: x[2], p1c: x[3] };
    let space = SearchSpace::new().simplex(2, b.p0).simplex(2, b.p1);
    let seeds = [vec![0.0, b.p0, 0.0, b.p1]];
    let o = maximize_min_seeded(|x, out| fill(out, ddf_cut_array(g, b, &at(x))), 3, &space, cfg, &seeds)?;
    let found = at(&o.point);
    let tight = ddf_tighten(g, b, &found);
    let pick = if ddf_value(g, b, &tight) >= o.value * (1.0 - 1e-12) { tight } else { found };
    Ok(ddf_eval(g, b, &pick)?)
}

fn ssrd_alloc(x: &[f64]) -> SsrdAllocation {
    SsrdAllocation {
        time: TimeAllocation { t1: x[0], t2: x[1], t3: x[2], t4: x[3] },
        p0_1: x[4],
        p0_2: x[5],
        p0p3: x[6],
        p0c3: x[7],
        p1_2: x[8],
        p1p4: x[9],
        p1c4: x[10],
        p2_1: x[11],
        p2p4: x[12],
        p2c4: x[13],
    }
}

fn ssrd_point(a: &SsrdAllocation) -> Vec<f64> {
    let t = &a.time;
    vec![
        t.t1, t.t2, t.t3, t.t4, a.p0_1, a.p0_2, a.p0p3, a.p0c3, a.p1_2, a.p1p4, a.p1c4, a.p2_1,
        a.p2p4, a.p2c4,
    ]
}

pub fn optimize_ssrd(
    g: &ChannelGains,
    b: &PowerBudget,
    cfg: &OptimizerConfig,
    seeds: &[SsrdAllocation],
) -> Result<RateReport, OptimizerError> {
    require_canonical(g)?;
    let space = SearchSpace::new()
        .simplex(4, 1.0)
        .simplex(4, b.p0)
        .simplex(3, b.p1)
        .simplex(3, b.p2);
    let seeds: Vec<Vec<f64>> = seeds.iter().map(ssrd_point).collect();
    let o = maximize_min_constrained(
        |x, out| fill(out, ssrd_terms(g, &ssrd_alloc(x))),
        2,
        3,
        &space,
        cfg,
        &seeds,
    )?;
    Ok(ssrd_eval(g, b, &ssrd_alloc(&o.point))?)
}

/// Optimizes one scheme without seeds.
pub fn optimize_scheme(
    id: SchemeId,
    g: &ChannelGains,
    b: &PowerBudget,
    cfg: &OptimizerConfig,
) -> Result<RateReport, OptimizerError> {
    match id {
        SchemeId::Dpc => optimize_dpc(g, b, cfg, &[]),
        SchemeId::BmeSucc => optimize_bme_succ(g, b, cfg, &[]),
        SchemeId::BmeBack => optimize_bme_back(g, b, cfg, &[]),
        SchemeId::BmeDpc => optimize_bme_dpc(g, b, cfg, &[]),
        SchemeId::Ddf => optimize_ddf(g, b, cfg, &[]),
        SchemeId::Ssrd => optimize_ssrd(g, b, cfg, &[]),
    }
}

/// Optimizes several schemes, seeding each from the schemes it provably
/// contains: backward decoding from successive decoding, the composite scheme
/// from backward decoding, and SSRD from DPC and DDF. Dependencies are
/// computed even when not requested, so e.g. BME-DPC never reports less than
/// BME-back would.
///
/// `cfg_for` supplies the configuration of each scheme.
pub fn optimize_schemes(
    ids: &[SchemeId],
    g: &ChannelGains,
    b: &PowerBudget,
    cfg_for: impl Fn(SchemeId) -> OptimizerConfig,
) -> BTreeMap<SchemeId, Result<RateReport, OptimizerError>> {
    let mut done: BTreeMap<SchemeId, Result<RateReport, OptimizerError>> = BTreeMap::new();
    let mut needed: Vec<SchemeId> = Vec::new();
    for &id in ids {
        let deps: &[SchemeId] = match id {
            SchemeId::BmeBack => &[SchemeId::BmeSucc],
            SchemeId::BmeDpc => &[SchemeId::BmeSucc, SchemeId::BmeBack],
            SchemeId::Ssrd => &[SchemeId::Dpc, SchemeId::Ddf],
            _ => &[],
        };
        needed.extend_from_slice(deps);
        needed.push(id);
    }
    needed.sort();
    needed.dedup();

    for id in needed {
        let cfg = cfg_for(id);
        let alloc_of = |dep: SchemeId| done.get(&dep).and_then(|r| r.as_ref().ok()).map(|r| r.allocation);
        use crate::model::Allocation as A;
        let result = match id {
            SchemeId::Dpc => optimize_dpc(g, b, &cfg, &[]),
            SchemeId::BmeSucc => optimize_bme_succ(g, b, &cfg, &[]),
            SchemeId::BmeBack => {
                let seeds: Vec<_> = match alloc_of(SchemeId::BmeSucc) {
                    Some(A::BmeSucc(a)) => vec![BmeBackAllocation::from(&a)],
                    _ => vec![],
                };
                optimize_bme_back(g, b, &cfg, &seeds)
            }
            SchemeId::BmeDpc => {
                let seeds: Vec<_> = match alloc_of(SchemeId::BmeBack) {
                    Some(A::BmeBack(a)) => BmeDpcAllocation::from_back(&a).to_vec(),
                    _ => vec![],
                };
                optimize_bme_dpc(g, b, &cfg, &seeds)
            }
            SchemeId::Ddf => optimize_ddf(g, b, &cfg, &[]),
            SchemeId::Ssrd => {
                let mut seeds = Vec::new();
                if let Some(A::Dpc(a)) = alloc_of(SchemeId::Dpc) {
                    seeds.push(SsrdAllocation::from_dpc(g, b, &a));
                }
                if let Some(A::Ddf(a)) = alloc_of(SchemeId::Ddf) {
                    seeds.push(SsrdAllocation::from_ddf(g, b, &a));
                }
                optimize_ssrd(g, b, &cfg, &seeds)
            }
        };
        done.insert(id, result);
    }
    done.retain(|id, _| ids.contains(id));
    done
}
