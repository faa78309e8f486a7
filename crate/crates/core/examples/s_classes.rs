//! Split orbit members by intersection dimension into S-classes.

use orbitdist::subspace::format_element;
use orbitdist::orbit::s_partition;
use orbitdist::{parse_subspace, ConwayTable, FieldTower};

fn main() -> orbitdist::Result<()> {
    let tower = FieldTower::conway(3, 11, &ConwayTable::bundled())?;
    let u = parse_subspace("span(z^13, z^17, z^21, z^23)", &tower)?;
    let classes = s_partition(&u, 2)?;
    println!("O_2(U) splits into {} class(es)", classes.len());
    for c in &classes {
        println!("  representative {}: {} members", format_element(&c.representative), c.size());
    }

    // A representative of degree 2 gives a class of size q instead of q(q+1).
    let tower = FieldTower::conway(3, 10, &ConwayTable::bundled())?;
    let u = parse_subspace("z^1708*F(3,2) + z^732*F(3,2) + z^91*F(3,1)", &tower)?;
    for c in s_partition(&u, 4)? {
        let deg = tower.degree_over(&c.representative, 1)?;
        println!("q=3, n=10, i=4: class of size {} (representative of degree {deg})", c.size());
    }
    Ok(())
}
