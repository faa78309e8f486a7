//! Intersection distribution of a full-length orbit in F_{3^11}.

use orbitdist::{intersection_distribution_with, parse_subspace, ConwayTable, FieldTower, SweepOptions};

fn main() -> orbitdist::Result<()> {
    let tower = FieldTower::conway(3, 11, &ConwayTable::bundled())?;
    let u = parse_subspace("span(z^13, z^17, z^21, z^23)", &tower)?;

    let opts = SweepOptions { threads: 2, ..SweepOptions::default() };
    let d = intersection_distribution_with(&u, &opts)?;

    println!("k = {}, t = {}, |Orb(U)| = {}", d.k, d.t, d.orbit_size);
    for (i, l) in d.lambda.iter().enumerate() {
        println!("  lambda_{i} = {l}");
    }
    println!("sum rule holds: {}", d.sum_rule_holds());
    assert_eq!(d.lambda, [87048, 1512, 12, 0]);
    Ok(())
}
