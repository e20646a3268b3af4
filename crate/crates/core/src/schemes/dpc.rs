use crate::kernel::{cap, slot};
use crate::model::{Allocation, ChannelGains, DpcAllocation, PowerBudget, RateKind, RateReport};

use super::{SchemeError, SchemeId};

/// `[a1, b1, a2, b2]`: first and second hop of each relay's message.
fn parts(g: &ChannelGains, b: &PowerBudget, a: &DpcAllocation) -> [f64; 4] {
    [
        slot(a.t1, g.h01 * g.h01 * a.p0_1),
        slot(a.t2, g.h13 * g.h13 * b.p1),
        slot(a.t2, g.h02 * g.h02 * a.p0_2),
        slot(a.t1, g.h23 * g.h23 * b.p2),
    ]
}

fn cuts([a1, b1, a2, b2]: [f64; 4]) -> [f64; 4] {
    [a1 + a2, a1 + b2, b1 + a2, b1 + b2]
}

pub(crate) fn dpc_cut_array(g: &ChannelGains, b: &PowerBudget, a: &DpcAllocation) -> [f64; 4] {
    cuts(parts(g, b, a))
}

/// Successive relaying where the source dirty-paper codes against the
/// inter-relay interference. The rate does not depend on `h12`.
pub fn dpc_eval(
    g: &ChannelGains,
    b: &PowerBudget,
    a: &DpcAllocation,
) -> Result<RateReport, SchemeError> {
    a.validate(b)?;
    let p = parts(g, b, a);
    Ok(RateReport::from_cuts(
        RateKind::Scheme(SchemeId::Dpc),
        cuts(p).to_vec(),
        vec![("R1", p[0].min(p[1])), ("R2", p[2].min(p[3]))],
        Allocation::Dpc(*a),
    ))
}

/// Closed form for symmetric networks at `t1 = t2 = ½` with an even source
/// split: `min(C(h01²P0), ½C(h01²P0) + ½C(2h13²P1), C(2h13²P1))`.
pub fn dpc_symmetric_rate(g: &ChannelGains, b: &PowerBudget) -> f64 {
    let hop1 = cap(g.h01 * g.h01 * b.p0);
    let hop2 = cap(2.0 * g.h13 * g.h13 * b.p1);
    hop1.min(0.5 * hop1 + 0.5 * hop2).min(hop2)
}
