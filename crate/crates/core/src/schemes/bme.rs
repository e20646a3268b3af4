use crate::kernel::{slot, slot_with_interference};
use crate::model::{
    Allocation, BmeBackAllocation, BmeDpcAllocation, BmeSuccAllocation, ChannelGains,
    CooperatingRelay, PowerBudget, RateKind, RateReport,
};

use super::{SchemeError, SchemeId};

/// Received energy at a relay that hears the source and the other relay
/// partly coherently: `h_s²p + h12²q + 2·h_s·h12·√(ρ·p·q)`.
#[inline]
fn mac_energy(hs: f64, p: f64, h12: f64, q: f64, rho: f64) -> f64 {
    hs * hs * p + h12 * h12 * q + 2.0 * hs * h12 * (rho * p * q).sqrt()
}

/// `[x1, y1, x2, y2, mac1, mac2]`.
fn succ_terms(g: &ChannelGains, b: &PowerBudget, a: &BmeSuccAllocation) -> [f64; 6] {
    let (h13s, h23s) = (g.h13 * g.h13, g.h23 * g.h23);
    let x1 = slot(a.t1, g.h01 * g.h01 * a.alpha1 * a.p0_1);
    let y1 = slot_with_interference(a.t1, h23s * (1.0 - a.theta2) * b.p2, h23s * a.theta2 * b.p2)
        + slot(a.t2, h13s * a.theta1 * b.p1);
    let x2 = slot(a.t2, g.h02 * g.h02 * a.alpha2 * a.p0_2);
    let y2 = slot_with_interference(a.t2, h13s * (1.0 - a.theta1) * b.p1, h13s * a.theta1 * b.p1)
        + slot(a.t1, h23s * a.theta2 * b.p2);
    let mac1 = slot(a.t1, mac_energy(g.h01, a.p0_1, g.h12, a.theta2 * b.p2, 1.0 - a.alpha1));
    let mac2 = slot(a.t2, mac_energy(g.h02, a.p0_2, g.h12, a.theta1 * b.p1, 1.0 - a.alpha2));
    [x1, y1, x2, y2, mac1, mac2]
}

fn succ_cuts([x1, y1, x2, y2, mac1, mac2]: [f64; 6]) -> [f64; 6] {
    [x1 + x2, x1 + y2, y1 + x2, y1 + y2, mac1, mac2]
}

pub(crate) fn succ_cut_array(g: &ChannelGains, b: &PowerBudget, a: &BmeSuccAllocation) -> [f64; 6] {
    succ_cuts(succ_terms(g, b, a))
}

#[cfg(test)]
fn succ_value(g: &ChannelGains, b: &PowerBudget, a: &BmeSuccAllocation) -> f64 {
    min_of(&succ_cut_array(g, b, a))
}

/// Block-Markov cooperation with successive decoding at the destination.
pub fn bme_succ_eval(
    g: &ChannelGains,
    b: &PowerBudget,
    a: &BmeSuccAllocation,
) -> Result<RateReport, SchemeError> {
    a.validate(b)?;
    let t = succ_terms(g, b, a);
    Ok(RateReport::from_cuts(
        RateKind::Scheme(SchemeId::BmeSucc),
        succ_cuts(t).to_vec(),
        vec![
            ("R1", t[0].min(t[1])),
            ("R2", t[2].min(t[3])),
            ("mac1", t[4]),
            ("mac2", t[5]),
        ],
        Allocation::BmeSucc(*a),
    ))
}

pub(crate) fn back_cuts(g: &ChannelGains, b: &PowerBudget, a: &BmeBackAllocation) -> [f64; 4] {
    [
        slot(a.t1, mac_energy(g.h01, a.p0_1, g.h12, b.p2, 1.0 - a.beta1)),
        slot(a.t2, mac_energy(g.h02, a.p0_2, g.h12, b.p1, 1.0 - a.beta2)),
        slot(a.t1, g.h01 * g.h01 * a.beta1 * a.p0_1) + slot(a.t2, g.h02 * g.h02 * a.beta2 * a.p0_2),
        slot(a.t1, g.h23 * g.h23 * b.p2) + slot(a.t2, g.h13 * g.h13 * b.p1),
    ]
}

#[cfg(test)]
fn back_value(g: &ChannelGains, b: &PowerBudget, a: &BmeBackAllocation) -> f64 {
    min_of(&back_cuts(g, b, a))
}

/// Block-Markov cooperation with backward decoding at the destination.
pub fn bme_back_eval(
    g: &ChannelGains,
    b: &PowerBudget,
    a: &BmeBackAllocation,
) -> Result<RateReport, SchemeError> {
    a.validate(b)?;
    let c = back_cuts(g, b, a);
    Ok(RateReport::from_cuts(
        RateKind::Scheme(SchemeId::BmeBack),
        c.to_vec(),
        vec![("relay1_mac", c[0]), ("relay2_mac", c[1]), ("source", c[2]), ("relays", c[3])],
        Allocation::BmeBack(*a),
    ))
}

/// The four cuts with relay 1 cooperating; the mirrored orientation is the
/// same expression with the relay labels and slots exchanged.
#[allow(clippy::too_many_arguments)]
fn bme_dpc_terms(
    t1: f64,
    t2: f64,
    p0_1: f64,
    p0_2: f64,
    alpha: f64,
    h01: f64,
    h02: f64,
    h12: f64,
    h13: f64,
    h23: f64,
    p1: f64,
    p2: f64,
) -> [f64; 4] {
    let second_hop_other = slot(t2, h02 * h02 * p0_2);
    let relay1_to_dest = slot(t2, h13 * h13 * p1);
    [
        slot(t1, mac_energy(h01, p0_1, h12, p2, 1.0 - alpha)),
        slot(t1, h01 * h01 * alpha * p0_1) + second_hop_other,
        slot(t1, h23 * h23 * p2) + relay1_to_dest,
        second_hop_other + relay1_to_dest,
    ]
}

pub(crate) fn bme_dpc_cuts(g: &ChannelGains, b: &PowerBudget, a: &BmeDpcAllocation) -> [f64; 4] {
    match a.cooperating {
        CooperatingRelay::First => bme_dpc_terms(
            a.t1, a.t2, a.p0_1, a.p0_2, a.alpha, g.h01, g.h02, g.h12, g.h13, g.h23, b.p1, b.p2,
        ),
        CooperatingRelay::Second => bme_dpc_terms(
            a.t2, a.t1, a.p0_2, a.p0_1, a.alpha, g.h02, g.h01, g.h12, g.h23, g.h13, b.p2, b.p1,
        ),
    }
}

#[cfg(test)]
fn bme_dpc_value(g: &ChannelGains, b: &PowerBudget, a: &BmeDpcAllocation) -> f64 {
    min_of(&bme_dpc_cuts(g, b, a))
}

/// Composite scheme: one relay decodes the other and bins, the source
/// dirty-paper codes for the remaining interference.
pub fn bme_dpc_eval(
    g: &ChannelGains,
    b: &PowerBudget,
    a: &BmeDpcAllocation,
) -> Result<RateReport, SchemeError> {
    a.validate(b)?;
    let c = bme_dpc_cuts(g, b, a);
    Ok(RateReport::from_cuts(
        RateKind::Scheme(SchemeId::BmeDpc),
        c.to_vec(),
        vec![("mac", c[0]), ("source", c[1]), ("relays", c[2]), ("listening_relay", c[3])],
        Allocation::BmeDpc(*a),
    ))
}

#[cfg(test)]
fn min_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::INFINITY, f64::min)
}
