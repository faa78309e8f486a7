//! Parse subspaces from text, compare them, and print the canonical form.

use orbitdist::subspace::caret_message;
use orbitdist::{parse_subspace, ConwayTable, Error, FieldTower};

fn main() -> orbitdist::Result<()> {
    let tower = FieldTower::conway(3, 10, &ConwayTable::bundled())?;

    let u = parse_subspace("z^1708*F(3,2) + z^732*F(3,2) + z^91*F(3,1)", &tower)?;
    println!("dim U = {}", u.dim());
    println!("canonical: {}", u.to_dsl());

    // The canonical text parses back to the same subspace.
    assert_eq!(parse_subspace(&u.to_dsl(), &tower)?, u);

    // Polynomials in z, products and powers are all accepted.
    let v = parse_subspace("span((z+1)^2, z^2 + 2*z + 1, -z*(z-1))", &tower)?;
    println!("span((z+1)^2, ...) has dimension {}", v.dim());

    let st = u.stabilizer()?;
    println!("stabilizer F_{{3^{}}}, |Orb(U)| = {}", st.t, st.orbit_size);

    let bad = "span(z^13, z^17 z^21)";
    match parse_subspace(bad, &tower) {
        Err(Error::Syntax { pos, msg }) => println!("{}", caret_message(bad, pos, &msg)),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
