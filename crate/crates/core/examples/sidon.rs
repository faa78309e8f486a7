//! Sidon spaces: the orbit test against the definition.

use orbitdist::verify::oracle::{grassmannian, sidon_by_definition};
use orbitdist::{is_sidon, ConwayTable, FieldTower};

fn main() -> orbitdist::Result<()> {
    let tower = FieldTower::conway(2, 6, &ConwayTable::bundled())?;
    let planes = grassmannian(&tower, 2)?;
    let mut sidon = 0;
    for u in &planes {
        let fast = is_sidon(u)?;
        assert_eq!(fast, sidon_by_definition(u)?);
        sidon += fast as usize;
    }
    println!("{sidon} of the {} planes in F_{{2^6}} are Sidon spaces", planes.len());
    Ok(())
}
