use std::fmt;

use crate::kernel::{coherent, slot, slot_with_interference};
use crate::model::{
    Allocation, ChannelGains, DdfAllocation, DpcAllocation, PowerBudget, RateKind, RateReport,
    SsrdAllocation, TimeAllocation,
};

use super::{require_canonical, SchemeError, SchemeId};

const SLACK: f64 = 1e-12;

/// The three coupling constraints between the successive and simultaneous
/// parts of the schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SsrdConstraint {
    CommonRelayed,
    FirstRelayBacklog,
    SecondRelayBacklog,
}

impl fmt::Display for SsrdConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::CommonRelayed => "R9≤R6",
            Self::FirstRelayBacklog => "R1+R5≤R3+R7",
            Self::SecondRelayBacklog => "R4≤R2+R8",
        })
    }
}

/// `R1..R9` followed by the slot-4 private sum rate.
fn rates(g: &ChannelGains, a: &SsrdAllocation) -> [f64; 10] {
    let t = &a.time;
    let (h01s, h02s, h13s, h23s) = (g.h01 * g.h01, g.h02 * g.h02, g.h13 * g.h13, g.h23 * g.h23);
    let private4 = h13s * a.p1p4 + h23s * a.p2p4;
    [
        slot(t.t1, h01s * a.p0_1),
        slot(t.t1, h23s * a.p2_1),
        slot(t.t2, h13s * a.p1_2),
        slot(t.t2, h02s * a.p0_2),
        slot(t.t3, h01s * a.p0p3),
        slot_with_interference(t.t3, h02s * a.p0c3, h02s * a.p0p3),
        slot(t.t4, h13s * a.p1p4),
        slot(t.t4, h23s * a.p2p4),
        slot_with_interference(t.t4, coherent(g.h13, a.p1c4, g.h23, a.p2c4), private4),
        slot(t.t4, private4),
    ]
}

/// Slack of each coupling constraint, in [`SsrdConstraint`] order.
fn slacks(r: &[f64; 10]) -> [f64; 3] {
    let [r1, r2, r3, r4, r5, r6, r7, r8, r9, _] = *r;
    [(r6 + SLACK) - r9, (r3 + r7 + SLACK) - (r1 + r5), (r2 + r8 + SLACK) - r4]
}

fn check(r: &[f64; 10]) -> Result<(), SsrdConstraint> {
    const ORDER: [SsrdConstraint; 3] =
        [SsrdConstraint::CommonRelayed, SsrdConstraint::FirstRelayBacklog, SsrdConstraint::SecondRelayBacklog];
    match slacks(r).iter().position(|s| *s < 0.0) {
        Some(i) => Err(ORDER[i]),
        None => Ok(()),
    }
}

fn cuts(r: &[f64; 10]) -> [f64; 2] {
    [r[0] + r[3] + r[4] + r[5], r[1] + r[2] + r[9] + r[8]]
}

/// Both sides followed by the slacks of the three coupling constraints, in
/// [`SsrdConstraint`] order; a negative slack means that constraint fails.
pub(crate) fn ssrd_terms(g: &ChannelGains, a: &SsrdAllocation) -> [f64; 5] {
    let r = rates(g, a);
    let [s, d] = cuts(&r);
    let [a1, a2, a3] = slacks(&r);
    [s, d, a1, a2, a3]
}

#[cfg(test)]
fn ssrd_value(g: &ChannelGains, a: &SsrdAllocation) -> Option<f64> {
    let r = rates(g, a);
    check(&r).ok()?;
    let [s, d] = cuts(&r);
    Some(s.min(d))
}

/// Four-slot schedule combining dirty-paper successive relaying (slots 1, 2)
/// with simultaneous relaying (slots 3, 4).
///
/// Requires `h01 >= h02`. An allocation violating a coupling constraint is
/// reported as [`SchemeError::Infeasible`].
pub fn ssrd_eval(
    g: &ChannelGains,
    b: &PowerBudget,
    a: &SsrdAllocation,
) -> Result<RateReport, SchemeError> {
    require_canonical(g)?;
    a.validate(b)?;
    let r = rates(g, a);
    check(&r).map_err(SchemeError::Infeasible)?;
    const NAMES: [&str; 10] = ["R1", "R2", "R3", "R4", "R5", "R6", "R7", "R8", "R9", "R78"];
    Ok(RateReport::from_cuts(
        RateKind::Scheme(SchemeId::Ssrd),
        cuts(&r).to_vec(),
        NAMES.into_iter().zip(r).collect(),
        Allocation::Ssrd(*a),
    ))
}

impl SsrdAllocation {
    /// Puts a DPC allocation into slots 1 and 2.
    ///
    /// Source power that the relays could not forward is moved into the
    /// unused slots, so the result is feasible and keeps the DPC rate.
    pub fn from_dpc(g: &ChannelGains, b: &PowerBudget, d: &DpcAllocation) -> Self {
        let hop1 = slot(d.t2, g.h13 * g.h13 * b.p1);
        let hop2 = slot(d.t1, g.h23 * g.h23 * b.p2);
        let p0_1 = fit_power(d.t1, g.h01, d.p0_1, hop1);
        let p0_2 = fit_power(d.t2, g.h02, d.p0_2, hop2);
        Self {
            time: TimeAllocation { t1: d.t1, t2: d.t2, t3: 0.0, t4: 0.0 },
            p0_1,
            p0_2,
            p0p3: 0.0,
            p0c3: (b.p0 - p0_1 - p0_2).max(0.0),
            p1_2: b.p1,
            p1p4: 0.0,
            p1c4: 0.0,
            p2_1: b.p2,
            p2p4: 0.0,
            p2c4: 0.0,
        }
    }

    /// Puts a DDF allocation into slots 3 and 4, adjusting powers so the
    /// coupling constraints hold without lowering the DDF rate.
    pub fn from_ddf(g: &ChannelGains, b: &PowerBudget, d: &DdfAllocation) -> Self {
        let d = super::ddf_tighten(g, b, d);
        let h13s = g.h13 * g.h13;
        let p0p3 = fit_power(d.t3, g.h01, d.p0p, slot(d.t4, h13s * d.p1p));
        let r6 = slot_with_interference(d.t3, g.h02 * g.h02 * (b.p0 - p0p3), g.h02 * g.h02 * p0p3);
        let private4 = h13s * d.p1p;
        let mut scale = 1.0;
        let r9 = slot_with_interference(d.t4, coherent(g.h13, d.p1c, g.h23, b.p2), private4);
        if r9 > r6 {
            // Relay common powers scale together; bisection keeps the energy
            // exactly at the level the broadcast common rate supports.
            let (mut lo, mut hi) = (0.0, 1.0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let e = coherent(g.h13, mid * d.p1c, g.h23, mid * b.p2);
                if slot_with_interference(d.t4, e, private4) <= r6 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            scale = lo;
        }
        let p1c4 = scale * d.p1c;
        let p2c4 = scale * b.p2;
        Self {
            time: TimeAllocation { t1: 0.0, t2: 0.0, t3: d.t3, t4: d.t4 },
            p0_1: 0.0,
            p0_2: 0.0,
            p0p3,
            p0c3: b.p0 - p0p3,
            p1_2: (b.p1 - d.p1p - p1c4).max(0.0),
            p1p4: d.p1p,
            p1c4,
            p2_1: (b.p2 - p2c4).max(0.0),
            p2p4: 0.0,
            p2c4,
        }
    }
}

/// Largest power not above `p` whose slot rate stays within `limit`.
fn fit_power(t: f64, h: f64, p: f64, limit: f64) -> f64 {
    if slot(t, h * h * p) <= limit || h <= 0.0 {
        return p;
    }
    let fitted = crate::kernel::slot_inverse(t, limit) / (h * h);
    // Rounding in the inverse may overshoot by an ulp; step down until it fits.
    let mut q = fitted.min(p);
    while q > 0.0 && slot(t, h * h * q) > limit {
        q = f64::max(q - q * 1e-15 - f64::MIN_POSITIVE, 0.0);
    }
    q
}
