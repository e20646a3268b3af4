//! Rate against relay power with the source 10 dB above the relays, written
//! as CSV and as a plot description. Output goes to the directory given as
//! the first argument, or the system temp directory.

use std::path::PathBuf;

use relaylab::experiments::{emit_plot_script, sweep_relay_power, write_csv_file, Axis, Spacing, SweepConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let mut cfg = SweepConfig::relay_power_default(10.0);
    // A coarser axis than the default keeps the example quick.
    cfg.axis = Axis { start: -10.0, stop: 30.0, spacing: Spacing::Step(10.0) };

    let rows = sweep_relay_power(&cfg)?;
    for r in &rows {
        println!("{:>5} dB  {:<8} {:.6}", r.axis_value, r.name(), r.rate());
    }
    let csv = dir.join("relay_power.csv");
    let plot = dir.join("relay_power.plot");
    write_csv_file(&rows, &csv)?;
    emit_plot_script(&rows, std::fs::File::create(&plot)?)?;
    println!("wrote {} and {}", csv.display(), plot.display());
    Ok(())
}
