//! Distance distribution and ordered pair counts of an orbit code.

use orbitdist::{
    distance_distribution, intersection_distribution, pair_counts, parse_subspace, ConwayTable, FieldTower,
};

fn main() -> orbitdist::Result<()> {
    let tower = FieldTower::conway(2, 14, &ConwayTable::bundled())?;
    let u = parse_subspace("z^11*F(2,2) + z^13*F(2,2) + z^14*F(2,2)", &tower)?;
    let d = intersection_distribution(&u)?;
    let dist = distance_distribution(&d);

    println!("|Orb(U)| = {} (stabilizer F_{{2^{}}})", d.orbit_size, d.t);
    for (dd, count) in &dist.delta {
        println!("  distance {dd:>2}: {count}");
    }
    println!("minimum distance: {:?}", dist.min_distance);

    // Every member sees the same distribution, so pairs scale by |Orb(U)|.
    for (dd, pairs) in pair_counts(&d) {
        println!("  ordered pairs at distance {dd:>2}: {pairs}");
    }
    Ok(())
}
