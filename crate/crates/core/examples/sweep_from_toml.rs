//! Runs a sweep described in TOML and round-trips its CSV.

use relaylab::experiments::{parse_csv, parse_sweep_config, run_sweep, write_csv};

const CONFIG: &str = r#"
kind = "relay-power"
schemes = ["dpc", "ddf"]
bounds = ["cutset"]
seed = 3

[gains]
h01 = 1.0
h02 = 1.0
h12 = 1.0
h13 = 1.0
h23 = 1.0

[regime]
p0_offset_db = 0.0

[axis]
start = 0.0
stop = 20.0
step = 10.0

[optimizer]
grid_points_per_dim = 7
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = parse_sweep_config(CONFIG)?;
    let rows = run_sweep(&cfg)?;
    let mut buf = Vec::new();
    let bytes = write_csv(&rows, &mut buf)?;
    print!("{}", String::from_utf8(buf.clone())?);

    let back = parse_csv(buf.as_slice())?;
    let worst = rows.iter().zip(&back).map(|(r, c)| (r.rate() - c.rate_bpcu).abs()).fold(0.0, f64::max);
    println!("{bytes} bytes, {} records, largest round-trip error {worst:.1e}", back.len());
    Ok(())
}
