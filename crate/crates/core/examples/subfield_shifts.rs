//! Count the shifts of F_{q^{2t}} that lie inside a subspace.

use orbitdist::{count_subfield_line_shifts, parse_subspace, ConwayTable, FieldTower};

fn main() -> orbitdist::Result<()> {
    let tower = FieldTower::conway(3, 12, &ConwayTable::bundled())?;
    let u = parse_subspace("(z^2+1)*F(3,4) + (z^3+z+1)*F(3,2)", &tower)?;
    let t = u.stabilizer()?.t;
    let s = count_subfield_line_shifts(&u, t)?;
    println!("q=3, n=12, t={t}: dim W = {}, m = {}, shifts of F_{{3^{}}}: {}", s.w_dim, s.m, 2 * t, s.count);

    // A subfield line sum with m = 2 copies of F_9 contains (9^2 - 1)/(9 - 1) = 10 shifts.
    let tower = FieldTower::conway(3, 8, &ConwayTable::bundled())?;
    let u = parse_subspace("F(3,2) + z*F(3,2) + z^5*F(3,1)", &tower)?;
    let s = count_subfield_line_shifts(&u, 1)?;
    println!("q=3, n=8: m = {}, shifts of F_9: {}", s.m, s.count);
    Ok(())
}
