use crate::kernel::{coherent, slot, slot_inverse, slot_with_interference};
use crate::model::{Allocation, ChannelGains, DdfAllocation, PowerBudget, RateKind, RateReport};

use super::{require_canonical, SchemeError, SchemeId};

/// `(a, b, rc, s)`: private rate to relay 1, relay 1's private hop, common
/// broadcast rate and the second-hop sum-rate cap.
fn terms(g: &ChannelGains, b: &PowerBudget, a: &DdfAllocation) -> (f64, f64, f64, f64) {
    let h13s = g.h13 * g.h13;
    let a_p = slot(a.t3, g.h01 * g.h01 * a.p0p);
    let b_p = slot(a.t4, h13s * a.p1p);
    let rc = slot_with_interference(a.t3, g.h02 * g.h02 * a.p0c, g.h02 * g.h02 * a.p0p);
    let s = slot(a.t4, h13s * a.p1p + coherent(g.h13, a.p1c, g.h23, b.p2));
    (a_p, b_p, rc, s)
}

/// Private and common rates after the sum cap clips the common part first.
fn split_rates(a_p: f64, b_p: f64, rc: f64, s: f64) -> (f64, f64) {
    let mut rp = a_p.min(b_p);
    let mut rc = rc;
    if rp + rc > s {
        rc = (s - rp).max(0.0);
        rp = rp.min(s);
    }
    (rp, rc)
}

pub(crate) fn ddf_cut_array(g: &ChannelGains, b: &PowerBudget, a: &DdfAllocation) -> [f64; 3] {
    let (a_p, b_p, rc, s) = terms(g, b, a);
    [a_p + rc, b_p + rc, s]
}

pub(crate) fn ddf_value(g: &ChannelGains, b: &PowerBudget, a: &DdfAllocation) -> f64 {
    let [x, y, z] = ddf_cut_array(g, b, a);
    x.min(y).min(z)
}

/// Simultaneous relaying: superposed private/common broadcast in slot 3,
/// coherent transmission of the common message in slot 4.
///
/// Requires `h01 >= h02`.
pub fn ddf_eval(
    g: &ChannelGains,
    b: &PowerBudget,
    a: &DdfAllocation,
) -> Result<RateReport, SchemeError> {
    require_canonical(g)?;
    a.validate(b)?;
    let (a_p, b_p, rc, s) = terms(g, b, a);
    let (rp, rc_clipped) = split_rates(a_p, b_p, rc, s);
    Ok(RateReport::from_cuts(
        RateKind::Scheme(SchemeId::Ddf),
        vec![a_p + rc, b_p + rc, s],
        vec![("Rp", rp), ("Rc", rc_clipped)],
        Allocation::Ddf(*a),
    ))
}

/// Successive-decoding corner of the second hop for a DDF allocation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdfCorner {
    /// Private rate, equal to the jointly decoded one.
    pub rp: f64,
    /// Common rate decoded first with the private signal as noise.
    pub rc: f64,
    /// Relay 1 private power that exactly supports `rp`.
    pub p1p: f64,
}

impl DdfCorner {
    pub fn sum(&self) -> f64 {
        self.rp + self.rc
    }
}

fn corner_power(g: &ChannelGains, t4: f64, rp: f64) -> f64 {
    if rp <= 0.0 || g.h13 <= 0.0 {
        0.0
    } else {
        slot_inverse(t4, rp) / (g.h13 * g.h13)
    }
}

/// Moves relay 1 to the corner point where its private power exactly carries
/// the private rate and everything else goes to the common message.
pub fn ddf_corner_decompose(
    g: &ChannelGains,
    b: &PowerBudget,
    a: &DdfAllocation,
) -> Result<DdfCorner, SchemeError> {
    let report = ddf_eval(g, b, a)?;
    let rp = report.component("Rp").unwrap_or(0.0);
    let max = slot(a.t4, g.h13 * g.h13 * b.p1);
    if rp > max * (1.0 + 1e-12) {
        return Err(SchemeError::CornerInfeasible { rate: rp, max });
    }
    let p1p = corner_power(g, a.t4, rp).min(a.p1p).min(b.p1);
    let h13s = g.h13 * g.h13;
    let rc = slot_with_interference(a.t4, coherent(g.h13, b.p1 - p1p, g.h23, b.p2), h13s * p1p);
    Ok(DdfCorner { rp, rc, p1p })
}

/// Shrinks both private powers to the least that carries the current private
/// rate, handing the rest to the common message. The rate never decreases.
pub(crate) fn ddf_tighten(g: &ChannelGains, b: &PowerBudget, a: &DdfAllocation) -> DdfAllocation {
    let (a_p, b_p, rc, s) = terms(g, b, a);
    let (rp, _) = split_rates(a_p, b_p, rc, s);
    let p1p = corner_power(g, a.t4, rp).min(a.p1p);
    let p0p = if rp <= 0.0 || g.h01 <= 0.0 {
        0.0
    } else {
        (slot_inverse(a.t3, rp) / (g.h01 * g.h01)).min(a.p0p)
    };
    DdfAllocation { p0p, p0c: b.p0 - p0p, p1p, p1c: b.p1 - p1p, ..*a }
}
