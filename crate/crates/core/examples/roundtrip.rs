//! Seeded roundtrip trials of the forward and inverse maps on every bundled
//! fixture, over rings of nilpotency 2 and 3.
//!
//! `cargo run --release --example roundtrip -- [trials] [seed]`

use std::error::Error;

use formal_arcs::arcspace::compute_defect;
use formal_arcs::equivalence::{roundtrip_check, PrecisionPlan, RoundtripOptions};
use formal_arcs::fixtures;

fn main() -> Result<(), Box<dyn Error>> {
    let mut args = std::env::args().skip(1);
    let trials: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(50);
    let seed: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);

    for (fx, rings) in fixtures::roundtrip_suite() {
        let d = compute_defect(&fx.pres, &fx.arc)?;
        for ring in rings {
            let opts = RoundtripOptions { plan: PrecisionPlan::new(ring.nilpotency(), d, 1), skip_last_level: false };
            let report = roundtrip_check(&fx.pres, &fx.arc, &ring, 1, trials, seed, &opts)?;
            println!(
                "{:<55} {:<10} {:>4}/{:<4} d consistent: {}",
                fx.name,
                ring.to_string(),
                report.passes(),
                report.trials(),
                report.defect_consistent()
            );
        }
    }
    Ok(())
}
