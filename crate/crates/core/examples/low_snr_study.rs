//! Low-SNR behaviour of simultaneous relaying with equal slots. When the
//! sufficient condition holds the ratio to the bound tends to one.

use relaylab::asymptotics::{low_snr_condition, low_snr_study, AsymptoticScenario};
use relaylab::model::{ChannelGains, OptimizerConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("strong source links", ChannelGains::new(3.0, 3.0, 1.0, 1.0, 1.0)?, 1.0),
        ("symmetric", ChannelGains::uniform(1.0), 1.0),
    ];
    for (label, g, gamma) in cases {
        println!("{label}: condition {}", if low_snr_condition(&g, gamma, gamma) { "holds" } else { "fails" });
        let scn = AsymptoticScenario::new(g, gamma, gamma, vec![-40.0, -30.0, -20.0])?;
        for r in low_snr_study(&scn, &OptimizerConfig::for_bounds())? {
            println!("  P0 {:>5} dB  ddf {:.3e}  bound {:.3e}  ratio {:.5}", r.p0_db, r.scheme_rate, r.bound_rate, r.ratio);
        }
    }
    Ok(())
}
