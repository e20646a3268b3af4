//! Private/common splitting in the simultaneous-relaying scheme, and the
//! successive-decoding corner that achieves the same rate.

use relaylab::model::{Allocation, ChannelGains, OptimizerConfig, PowerBudget};
use relaylab::optimizer::{optimize_ddf, optimize_ddf_fixed_time};
use relaylab::schemes::ddf_corner_decompose;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Relay 1 hears the source much better, so a private message pays off.
    let g = ChannelGains::new(3.0, 1.0, 1.0, 1.0, 1.0)?;
    let b = PowerBudget::from_db(10.0, 10.0, 10.0)?;
    let cfg = OptimizerConfig::for_schemes();

    let best = optimize_ddf(&g, &b, &cfg, &[])?;
    let Allocation::Ddf(a) = best.allocation else { unreachable!() };
    let part = |k| best.component(k).unwrap_or(0.0);
    println!("optimized  R = {:.6}  Rp = {:.6}  Rc = {:.6}", best.total_bpcu, part("Rp"), part("Rc"));
    println!("           t3 = {:.4}  p0p = {:.4}  p1p = {:.4}", a.t3, a.p0p, a.p1p);

    let corner = ddf_corner_decompose(&g, &b, &a)?;
    println!("corner     Rp = {:.6}  Rc = {:.6}  sum = {:.6}  p1p = {:.4}", corner.rp, corner.rc, corner.sum(), corner.p1p);

    for t3 in [0.3, 0.5, 0.7] {
        let r = optimize_ddf_fixed_time(&g, &b, t3, &cfg)?;
        println!("t3 = {t3:.1}   R = {:.6}", r.total_bpcu);
    }
    Ok(())
}
