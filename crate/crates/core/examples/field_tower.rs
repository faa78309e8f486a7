//! Build the Conway tower F_3 ⊂ F_{3^10} and look at its subfields.

use orbitdist::subspace::format_element;
use orbitdist::{ConwayTable, FieldTower};

fn main() -> orbitdist::Result<()> {
    let tower = FieldTower::conway(3, 10, &ConwayTable::bundled())?;
    println!("q = {}, n = {}, |F| = {}", tower.q(), tower.n(), tower.size());
    println!("modulus (ascending) = {:?}", tower.modulus());

    for s in [1, 2, 5, 10] {
        let g = tower.subfield_generator(s)?;
        println!(
            "F_{{3^{s}}}: generator z^{} = {}, degree over F_3 = {}",
            tower.subfield_exponent(s)?,
            format_element(&g),
            tower.degree_over(&g, 1)?
        );
    }

    let z = tower.z();
    let x = tower.pow(&z, 7381);
    assert!(tower.in_subfield(&x, 2)?);
    println!("ord(z) = {}", tower.order(&z)?);
    println!("Tr(z) = {}", tower.trace(&z));
    Ok(())
}
