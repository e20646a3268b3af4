//! The three upper bounds on one network.

use relaylab::bounds::{cutset_optimize, low_snr_linear_bound, successive_cutset_optimize};
use relaylab::model::{ChannelGains, OptimizerConfig, PowerBudget};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = ChannelGains::new(1.0, 0.8, 0.5, 1.0, 1.1)?;
    let cfg = OptimizerConfig::for_bounds();

    for p0_db in [-20.0, 0.0, 20.0] {
        let b = PowerBudget::from_db(p0_db, p0_db - 3.0, p0_db - 3.0)?;
        let full = cutset_optimize(&g, &b, &cfg)?;
        let succ = successive_cutset_optimize(&g, &b, &cfg)?;
        let t = full.allocation.times();
        println!(
            "P0 = {p0_db:>5} dB  full {:.6} (t = {:.3} {:.3} {:.3} {:.3})  successive {:.6}",
            full.total_bpcu, t[0], t[1], t[2], t[3], succ.total_bpcu
        );
        if p0_db < 0.0 {
            let lin = low_snr_linear_bound(&g, 0.5, 0.5, b.p0)?;
            println!("{:>15}linear low-SNR bound {lin:.6}", "");
        }
    }
    Ok(())
}
