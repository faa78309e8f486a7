//! Run property checks on seeded random subspaces.

use orbitdist::verify::{check, CheckConfig, CHECKS};

fn main() -> orbitdist::Result<()> {
    println!("available: {}", CHECKS.join(", "));

    let cfg = CheckConfig::new(3, 5, 2).with_samples(25).with_seed(7);
    let r = check("thm_3_7", &cfg)?;
    println!("{}: passed={} cases={} multipliers={:?}", r.check_name, r.passed, r.cases, r.observed_multipliers);

    let cfg = CheckConfig::new(2, 12, 6).with_t(3).with_samples(10);
    let r = check("thm_3_14", &cfg)?;
    println!("{}: passed={} applicable={} cases={}", r.check_name, r.passed, r.applicable, r.cases);
    for h in &r.hypotheses {
        println!("  assumes {h}");
    }
    Ok(())
}
