//! Seeded random subspaces with prescribed stabilizer structure.

use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{FFElem, FieldTower};
use crate::subspace::Subspace;

/// Retry cap for every rejection loop in this module.
pub const REJECTION_CAP: usize = 10_000;

pub fn random_element<R: Rng>(tower: &FieldTower, rng: &mut R) -> FFElem {
    let p = tower.p();
    let coeffs = (0..tower.prime_degree()).map(|_| rng.gen_range(0..p) as u8).collect();
    tower.element(coeffs).expect("coefficients are in range")
}

pub fn random_nonzero<R: Rng>(tower: &FieldTower, rng: &mut R) -> FFElem {
    loop {
        let a = random_element(tower, rng);
        if !a.is_zero() {
            return a;
        }
    }
}

/// A random element of `F_{q^n} \ F_q`. Needs `n >= 2`.
pub fn random_outside_base<R: Rng>(tower: &FieldTower, rng: &mut R) -> Result<FFElem> {
    if tower.n() < 2 {
        return Err(Error::InvalidParameter("F_{q^n} equals F_q".into()));
    }
    for _ in 0..REJECTION_CAP {
        let a = random_element(tower, rng);
        if !tower.in_subfield(&a, 1)? {
            return Ok(a);
        }
    }
    Err(Error::Sampling("no element outside F_q found".into()))
}

/// A random element of `F_{q^2} \ F_q`, i.e. of degree 2 over `F_q`.
pub fn random_quadratic<R: Rng>(tower: &FieldTower, rng: &mut R) -> Result<FFElem> {
    let gamma = tower.subfield_generator(2)?;
    let q = tower.q();
    let a = tower.embed_scalar(rng.gen_range(0..q) as u8);
    let b = rng.gen_range(1..q) as u8;
    Ok(tower.add(&a, &tower.scale(&gamma, b)))
}

/// `k` random nonzero elements, redrawn until they are independent.
pub fn random_subspace<R: Rng>(tower: &Arc<FieldTower>, k: usize, rng: &mut R) -> Result<Subspace> {
    if k > tower.n() {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {}", tower.n())));
    }
    for _ in 0..REJECTION_CAP {
        let gens: Vec<FFElem> = (0..k).map(|_| random_nonzero(tower, rng)).collect();
        let u = Subspace::span(tower, &gens)?;
        if u.dim() == k {
            return Ok(u);
        }
    }
    Err(Error::Sampling(format!("no independent {k}-set after {REJECTION_CAP} draws")))
}

fn check_shape(tower: &FieldTower, k: usize, t: usize) -> Result<()> {
    let n = tower.n();
    if k == 0 || k > n || t == 0 || n % t != 0 || k % t != 0 {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n with t | k and t | n (k = {k}, n = {n}, t = {t})"
        )));
    }
    Ok(())
}

/// A `k`-dimensional subspace with `Stab(U) ∪ {0} = F_{q^t}` exactly.
///
/// `t = 1` rejects from uniform samples. For `t > 1` the subspace is built as
/// a sum of `k/t` random shifts of `F_{q^t}`, since such spaces are too rare
/// to hit by rejection.
pub fn sample_with_stabilizer<R: Rng>(
    tower: &Arc<FieldTower>,
    k: usize,
    t: usize,
    rng: &mut R,
) -> Result<Subspace> {
    check_shape(tower, k, t)?;
    for _ in 0..REJECTION_CAP {
        let u = if t == 1 {
            random_subspace(tower, k, rng)?
        } else {
            let terms: Vec<(FFElem, usize)> = (0..k / t).map(|_| (random_nonzero(tower, rng), t)).collect();
            let ls = Subspace::line_sum(tower, &terms)?;
            if !ls.direct {
                continue;
            }
            ls.subspace
        };
        if u.stabilizer()?.t == t {
            return Ok(u);
        }
    }
    Err(Error::Sampling(format!("no subspace with stabilizer exponent {t} after {REJECTION_CAP} tries")))
}

/// Like [`sample_with_stabilizer`], but `U` contains `m` independent shifts
/// of `F_{q^{2t}}`: `U = Σ_{j<m} g_j F_{q^{2t}} ⊕ Σ h_i F_{q^t}`.
///
/// Needs `2t | n` and `2tm < k`, so that at least one `F_{q^t}` line keeps the
/// stabilizer from growing.
pub fn sample_with_subfield_lines<R: Rng>(
    tower: &Arc<FieldTower>,
    k: usize,
    t: usize,
    m: usize,
    rng: &mut R,
) -> Result<Subspace> {
    check_shape(tower, k, t)?;
    if tower.n() % (2 * t) != 0 {
        return Err(Error::InvalidSubfield { s: 2 * t, n: tower.n() });
    }
    if 2 * t * m >= k {
        return Err(Error::InvalidParameter(format!("2tm = {} must be below k = {k}", 2 * t * m)));
    }
    for _ in 0..REJECTION_CAP {
        let mut terms: Vec<(FFElem, usize)> = (0..m).map(|_| (random_nonzero(tower, rng), 2 * t)).collect();
        terms.extend((0..(k - 2 * t * m) / t).map(|_| (random_nonzero(tower, rng), t)));
        let ls = Subspace::line_sum(tower, &terms)?;
        if ls.direct && ls.subspace.stabilizer()?.t == t {
            return Ok(ls.subspace);
        }
    }
    Err(Error::Sampling(format!("no subspace with {m} F_{{q^{}}} lines after {REJECTION_CAP} tries", 2 * t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::ConwayTable;
    use crate::orbit::count_subfield_line_shifts;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prescribed_stabilizers() {
        let tower = FieldTower::conway(2, 8, &ConwayTable::bundled()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for t in [1, 2, 4] {
            let u = sample_with_stabilizer(&tower, 4, t, &mut rng).unwrap();
            assert_eq!((u.dim(), u.stabilizer().unwrap().t), (4, t));
        }
        assert!(sample_with_stabilizer(&tower, 3, 2, &mut rng).is_err());
    }

    #[test]
    fn structured_samples_hold_the_lines() {
        let tower = FieldTower::conway(3, 8, &ConwayTable::bundled()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let u = sample_with_subfield_lines(&tower, 5, 1, 2, &mut rng).unwrap();
            assert_eq!(u.stabilizer().unwrap().t, 1);
            assert!(count_subfield_line_shifts(&u, 1).unwrap().m >= 2);
        }
    }

    #[test]
    fn quadratic_elements_have_degree_two() {
        let tower = FieldTower::conway(5, 4, &ConwayTable::bundled()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let a = random_quadratic(&tower, &mut rng).unwrap();
            assert_eq!(tower.degree_over(&a, 1).unwrap(), 2);
        }
    }
}
