//! The derivative-free optimizer on a toy problem: split a unit of time and
//! a power budget between two parallel channels so the weaker one is as fast
//! as possible.

use relaylab::model::OptimizerConfig;
use relaylab::optimizer::{maximize, maximize_min_seeded, SearchSpace};

fn cap(snr: f64) -> f64 {
    0.5 * (1.0 + snr).log2()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let space = SearchSpace::new().simplex(2, 1.0).simplex(2, 10.0);
    let cfg = OptimizerConfig::default().with_seed(7);
    let gains = [1.0, 0.3];
    let rate = |x: &[f64], i: usize| x[i] * cap(gains[i] * x[2 + i] / x[i].max(1e-300));

    let plain = maximize(|x| Some(rate(x, 0).min(rate(x, 1))), &space, &cfg)?;
    println!("plain polling     {:.9} after {} evaluations", plain.value, plain.evaluations);

    // Exposing both terms lets the search walk the ridge where they are equal.
    let ridge = maximize_min_seeded(
        |x, out| {
            out[0] = rate(x, 0);
            out[1] = rate(x, 1);
            true
        },
        2,
        &space,
        &cfg,
        &[],
    )?;
    println!("min-of-terms      {:.9} after {} evaluations", ridge.value, ridge.evaluations);
    println!("point             {:?}", ridge.point);
    Ok(())
}
