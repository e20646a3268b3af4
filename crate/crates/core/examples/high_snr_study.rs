//! As the source power grows with the relays at fixed ratios, the gap between
//! dirty-paper relaying and the cut-set bound shrinks relative to the rate.

use relaylab::asymptotics::{high_snr_study, AsymptoticScenario};
use relaylab::model::{ChannelGains, OptimizerConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scn = AsymptoticScenario::new(ChannelGains::new(1.0, 0.9, 0.5, 1.0, 0.8)?, 1.0, 1.0, vec![10.0, 20.0, 40.0, 60.0])?;
    println!("{:>6} {:>10} {:>10} {:>8} {:>10} {:>14}", "P0 dB", "dpc", "cutset", "ratio", "t3+t4", "gap*log2 P0");
    for r in high_snr_study(&scn, &OptimizerConfig::for_bounds())? {
        println!(
            "{:>6} {:>10.5} {:>10.5} {:>8.5} {:>10.5} {:>14.5}",
            r.p0_db,
            r.scheme_rate,
            r.bound_rate,
            r.ratio,
            r.t_hat3_plus_t_hat4.unwrap_or(f64::NAN),
            r.gap_times_log2_p0()
        );
    }
    Ok(())
}
