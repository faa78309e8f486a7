//! Brute-force references, usable only on small towers.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gf::FieldTower;
use crate::orbit::IntersectionDistribution;
use crate::subspace::Subspace;

/// Largest `q^n` accepted by [`oracle_intersection_distribution`].
pub const ORACLE_LIMIT: u64 = 1 << 12;
/// Largest `|U| = q^k` accepted by [`sidon_by_definition`].
pub const SIDON_LIMIT: u64 = 1 << 10;
/// Largest Grassmannian [`grassmannian`] will list.
pub const GRASSMANNIAN_LIMIT: u64 = 1 << 16;

/// `λ` computed the slow way: shift `U` by every nonzero field element, keep
/// the distinct results, and record `dim(U ∩ αU)` once per distinct subspace.
/// The stabilizer is read off the orbit size instead of being searched for.
pub fn oracle_intersection_distribution(u: &Subspace) -> Result<IntersectionDistribution> {
    let tower = u.tower();
    if tower.size() > ORACLE_LIMIT {
        return Err(Error::OracleScaleExceeded { size: tower.size(), limit: ORACLE_LIMIT });
    }
    let k = u.dim();
    if k == 0 {
        return Err(Error::EmptySubspace);
    }
    let mut orbit: BTreeMap<Subspace, usize> = BTreeMap::new();
    for a in tower.all_elements().filter(|a| !a.is_zero()) {
        let v = u.shift(&a)?;
        if !orbit.contains_key(&v) {
            let d = u.intersection_dim(&v)?;
            orbit.insert(v, d);
        }
    }
    let orbit_size = orbit.len() as u64;
    let mut lambda = vec![0u64; k];
    for (v, d) in &orbit {
        if v != u {
            lambda[*d] += 1;
        }
    }
    let stab = tower.group_order() / orbit_size + 1;
    let t = (1..=tower.n())
        .find(|&t| tower.subfield_size(t) == stab)
        .expect("stabilizer order is q^t - 1 for some t");
    Ok(IntersectionDistribution { lambda, t, orbit_size, k })
}

/// The Sidon property straight from its definition: whenever `ab = cd` for
/// nonzero `a, b, c, d ∈ U`, `{aF_q, bF_q} = {cF_q, dF_q}`. Equivalently, the
/// products of pairs of projective points of `U` land on pairwise distinct
/// projective points.
pub fn sidon_by_definition(u: &Subspace) -> Result<bool> {
    let tower = u.tower();
    let size = (tower.q() as u64).saturating_pow(u.dim() as u32);
    if size > SIDON_LIMIT {
        return Err(Error::OracleScaleExceeded { size, limit: SIDON_LIMIT });
    }
    let fq = tower.fq();
    // Scales coordinates so the first nonzero one is 1.
    let normalize = |mut c: Vec<u8>| -> Option<Vec<u8>> {
        let lead = *c.iter().find(|&&x| x != 0)?;
        let inv = fq.inv(lead).expect("nonzero scalar");
        for x in c.iter_mut() {
            *x = fq.mul(*x, inv);
        }
        Some(c)
    };
    let points: Vec<_> = u
        .elements()
        .into_iter()
        .filter(|a| tower.to_fq_coords(a).iter().find(|&&x| x != 0) == Some(&1))
        .collect();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    for i in 0..points.len() {
        for j in i..points.len() {
            let prod = normalize(tower.to_fq_coords(&tower.mul(&points[i], &points[j])))
                .expect("product of nonzero elements");
            if !seen.insert(prod) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `[n choose k]_q`, the number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: u32, k: u32, q: u32) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let q = BigUint::from(q);
    let one = BigUint::from(1u32);
    let mut num = one.clone();
    let mut den = one.clone();
    for i in 0..k {
        num *= q.pow(n - i) - &one;
        den *= q.pow(i + 1) - &one;
    }
    num / den
}

/// Every `k`-dimensional `F_q`-subspace of `F_{q^n}`, one per reduced echelon
/// shape and filling of its free entries.
pub fn grassmannian(tower: &Arc<FieldTower>, k: usize) -> Result<Vec<Subspace>> {
    let (n, q) = (tower.n(), tower.q());
    let total = gaussian_binomial(n as u32, k as u32, q);
    if total > BigUint::from(GRASSMANNIAN_LIMIT) {
        let size = u64::try_from(&total).unwrap_or(u64::MAX);
        return Err(Error::OracleScaleExceeded { size, limit: GRASSMANNIAN_LIMIT });
    }
    let mut out = Vec::new();
    for pivots in combinations(n, k) {
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &c)| ((c + 1)..n).filter(|j| !pivots.contains(j)).map(move |j| (r, j)))
            .collect();
        let mut fill = vec![0u8; free.len()];
        loop {
            let mut rows = vec![vec![0u8; n]; k];
            for (r, &c) in pivots.iter().enumerate() {
                rows[r][c] = 1;
            }
            for (&(r, j), &v) in free.iter().zip(&fill) {
                rows[r][j] = v;
            }
            let elems: Vec<_> = rows.iter().map(|row| tower.from_fq_coords(row)).collect();
            out.push(Subspace::span(tower, &elems)?);
            // Odometer over F_q^free.
            let mut pos = 0;
            while pos < fill.len() {
                fill[pos] += 1;
                if (fill[pos] as u32) < q {
                    break;
                }
                fill[pos] = 0;
                pos += 1;
            }
            if pos == fill.len() {
                break;
            }
        }
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::ConwayTable;
    use crate::orbit::intersection_distribution;
    use std::collections::BTreeSet;

    #[test]
    fn q_binomials() {
        assert_eq!(gaussian_binomial(4, 2, 2), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(7, 0, 3), BigUint::from(1u32));
        assert_eq!(gaussian_binomial(7, 7, 3), BigUint::from(1u32));
        assert_eq!(gaussian_binomial(3, 5, 3), BigUint::from(0u32));
    }

    #[test]
    fn grassmannian_matches_spans_of_pairs() {
        let tower = FieldTower::conway(2, 4, &ConwayTable::bundled()).unwrap();
        let listed: BTreeSet<Subspace> = grassmannian(&tower, 2).unwrap().into_iter().collect();
        let nonzero: Vec<_> = tower.all_elements().filter(|a| !a.is_zero()).collect();
        let mut spans = BTreeSet::new();
        for a in &nonzero {
            for b in &nonzero {
                let s = Subspace::span(&tower, &[a.clone(), b.clone()]).unwrap();
                if s.dim() == 2 {
                    spans.insert(s);
                }
            }
        }
        assert_eq!(listed.len(), 35);
        assert_eq!(listed, spans);
    }

    #[test]
    fn oracle_on_the_spread() {
        let tower = FieldTower::conway(2, 4, &ConwayTable::bundled()).unwrap();
        let u = Subspace::line_sum(&tower, &[(tower.one(), 2)]).unwrap().subspace;
        let d = oracle_intersection_distribution(&u).unwrap();
        assert_eq!((d.lambda.clone(), d.t, d.orbit_size), (vec![4, 0], 2, 5));
        assert_eq!(d, intersection_distribution(&u).unwrap());
    }

    #[test]
    fn oracle_refuses_large_towers() {
        let tower = FieldTower::conway(2, 13, &ConwayTable::bundled()).unwrap();
        let u = Subspace::span(&tower, &[tower.one()]).unwrap();
        assert_eq!(
            oracle_intersection_distribution(&u),
            Err(Error::OracleScaleExceeded { size: 8192, limit: 4096 })
        );
    }

    #[test]
    fn subfield_is_not_sidon() {
        // In F_4 = {0, 1, w, w^2}: w · w = 1 · w^2.
        let tower = FieldTower::conway(2, 4, &ConwayTable::bundled()).unwrap();
        let u = Subspace::line_sum(&tower, &[(tower.one(), 2)]).unwrap().subspace;
        assert!(!sidon_by_definition(&u).unwrap());
    }
}
