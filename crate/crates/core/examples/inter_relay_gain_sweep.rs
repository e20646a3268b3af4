//! Block-Markov schemes against the successive cut-set bound as the link
//! between the relays strengthens. DPC ignores that link, so it stays flat.

use relaylab::experiments::{sweep_inter_relay_gain, Axis, Spacing, SweepConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut cfg = SweepConfig::inter_relay_gain_default();
    cfg.axis = Axis { start: 0.1, stop: 10.0, spacing: Spacing::LogPoints(5) };
    let rows = sweep_inter_relay_gain(&cfg)?;

    let names: Vec<&str> = rows.iter().take_while(|r| r.scenario_id == 0).map(|r| r.name()).collect();
    print!("{:>8}", "h12");
    for n in &names {
        print!(" {n:>18}");
    }
    println!();
    for point in rows.chunks(names.len()) {
        print!("{:>8.3}", point[0].axis_value);
        for r in point {
            print!(" {:>18.6}", r.rate());
        }
        println!();
    }
    Ok(())
}
