//! Recompute the bundled worked examples (the large one only with `--large`).

use orbitdist::cli::golden_examples;
use orbitdist::{count_subfield_line_shifts, intersection_distribution, parse_subspace, ConwayTable, FieldTower};

fn main() -> orbitdist::Result<()> {
    let large = std::env::args().any(|a| a == "--large");
    let table = ConwayTable::bundled();
    for g in golden_examples().into_iter().filter(|g| large || !g.large) {
        let tower = FieldTower::conway(g.q, g.n, &table)?;
        let u = parse_subspace(&g.subspace, &tower)?;
        let d = intersection_distribution(&u)?;
        let shifts = match g.shifts {
            Some(_) => Some(count_subfield_line_shifts(&u, d.t)?.count),
            None => None,
        };
        let ok = d.lambda == g.lambda && d.t == g.t && shifts == g.shifts;
        println!("{} {:<18} lambda={:?} t={} shifts={:?}", if ok { "ok  " } else { "FAIL" }, g.name, d.lambda, d.t, shifts);
    }
    Ok(())
}
