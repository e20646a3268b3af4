//! Optimizes every scheme on one scenario and ranks it against the cut-set
//! bound. Pass a scenario file to use your own network.

use relaylab::bounds::cutset_optimize;
use relaylab::model::scenario_file::{parse_scenario, read_scenario};
use relaylab::model::OptimizerConfig;
use relaylab::optimizer::optimize_schemes;
use relaylab::schemes::SchemeId;

const DEFAULT: &str = "h01 = 1.5\nh02 = 1\nh12 = 0.7\nh13 = 1\nh23 = 1.2\np0_db = 15\np1_db = 10\np2_db = 10\n";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut s = match std::env::args().nth(1) {
        Some(path) => read_scenario(path)?,
        None => parse_scenario(DEFAULT)?,
    };
    if !s.is_canonically_ordered() {
        println!("swapping relay labels so that h01 >= h02");
        s = s.relays_swapped();
    }
    let bound = cutset_optimize(&s.gains, &s.budget, &OptimizerConfig::for_bounds())?.total_bpcu;
    let results = optimize_schemes(&SchemeId::ALL, &s.gains, &s.budget, OptimizerConfig::for_scheme);

    let mut ranked: Vec<_> = results.into_iter().map(|(id, r)| (id, r.map(|r| r.total_bpcu))).collect();
    ranked.sort_by(|a, b| b.1.as_ref().unwrap_or(&0.0).total_cmp(a.1.as_ref().unwrap_or(&0.0)));
    println!("cut-set bound {bound:.6}");
    for (id, rate) in ranked {
        match rate {
            Ok(r) => println!("  {:<9} {r:.6}  {:5.1}% of the bound", id.name(), 100.0 * r / bound),
            Err(e) => println!("  {:<9} failed: {e}", id.name()),
        }
    }
    Ok(())
}
