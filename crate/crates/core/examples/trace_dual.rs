//! The trace dual of a subspace generates an orbit with the same distances.

use orbitdist::{distance_distribution, intersection_distribution, trace_dual, ConwayTable, FieldTower, Subspace};

fn main() -> orbitdist::Result<()> {
    let tower = FieldTower::conway(2, 6, &ConwayTable::bundled())?;
    let u = Subspace::span(&tower, &[tower.one(), tower.z_pow(3), tower.z_pow(10)])?;
    let dual = trace_dual(&u);
    println!("dim U = {}, dim U^perp = {}", u.dim(), dual.dim());
    println!("U^perp = {}", dual.to_dsl());

    let a = distance_distribution(&intersection_distribution(&u)?);
    let b = distance_distribution(&intersection_distribution(&dual)?);
    println!("distances of Orb(U):      {:?}", a.nontrivial());
    println!("distances of Orb(U^perp): {:?}", b.nontrivial());
    assert_eq!(a.nontrivial(), b.nontrivial());
    Ok(())
}
