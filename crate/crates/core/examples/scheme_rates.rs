//! Evaluates every relaying scheme at a hand-picked allocation.
//!
//! Nothing is optimized here; each scheme gets a plausible split so the cut
//! values it reports can be read side by side.

use relaylab::model::{
    BmeBackAllocation, BmeDpcAllocation, BmeSuccAllocation, ChannelGains, CooperatingRelay, DdfAllocation,
    DpcAllocation, PowerBudget, RateReport, SsrdAllocation, TimeAllocation,
};
use relaylab::schemes::{bme_back_eval, bme_dpc_eval, bme_succ_eval, ddf_eval, dpc_eval, ssrd_eval};

fn show(r: &RateReport) {
    let cuts: Vec<String> = r.cut_values.iter().map(|c| format!("{c:.4}")).collect();
    println!("{:<10} {:>8.4}  cuts [{}]", r.kind.name(), r.total_bpcu, cuts.join(", "));
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = ChannelGains::new(1.2, 1.0, 0.8, 1.0, 0.9)?;
    let b = PowerBudget::from_db(10.0, 5.0, 5.0)?;
    let half = b.p0 / 2.0;

    show(&dpc_eval(&g, &b, &DpcAllocation::new(0.5, 0.5, half, half, &b)?)?);
    show(&bme_succ_eval(&g, &b, &BmeSuccAllocation::new(0.5, 0.5, half, half, 0.7, 0.7, 1.0, 1.0, &b)?)?);
    show(&bme_back_eval(&g, &b, &BmeBackAllocation::new(0.5, 0.5, half, half, 0.7, 0.7, &b)?)?);
    for side in [CooperatingRelay::First, CooperatingRelay::Second] {
        show(&bme_dpc_eval(&g, &b, &BmeDpcAllocation::new(0.5, 0.5, half, half, 0.7, side, &b)?)?);
    }
    show(&ddf_eval(&g, &b, &DdfAllocation::all_common(&b))?);

    // Successive slots only. The relays forward in alternate slots, and a
    // split the schedule cannot sustain is rejected with the violated
    // constraint named.
    let ssrd = SsrdAllocation {
        time: TimeAllocation::new(0.5, 0.5, 0.0, 0.0)?,
        p0_1: half,
        p0_2: half,
        p0p3: 0.0,
        p0c3: 0.0,
        p1_2: b.p1,
        p1p4: 0.0,
        p1c4: 0.0,
        p2_1: b.p2,
        p2p4: 0.0,
        p2c4: 0.0,
    };
    match ssrd_eval(&g, &b, &ssrd) {
        Ok(r) => show(&r),
        Err(e) => println!("{:<10} rejected: {e}", "ssrd"),
    }
    Ok(())
}
