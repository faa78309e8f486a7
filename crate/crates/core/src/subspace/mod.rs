//! `F_q`-subspaces of `F_{q^n}` in canonical form.
//!
//! A [`Subspace`] stores the reduced row echelon form of the `F_q`-coordinates
//! of a basis, so two subspaces are equal exactly when their stored bases are.

pub mod dsl;

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fqlinalg::{self, FqMatrix};
use crate::gf::{FFElem, FieldTower};

pub use dsl::{caret_message, format_element, parse_element, parse_subspace};

#[derive(Clone, Debug)]
pub struct Subspace {
    tower: Arc<FieldTower>,
    basis: FqMatrix,
}

/// `Stab(U) ∪ {0} = F_{q^t}` and `|Orb(U)| = (q^n - 1)/(q^t - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilizerResult {
    pub t: usize,
    pub orbit_size: u64,
}

/// Result of [`Subspace::line_sum`].
#[derive(Clone, Debug)]
pub struct LineSum {
    pub subspace: Subspace,
    /// Whether the dimension equals the sum of the summand dimensions.
    pub direct: bool,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.tower.same_as(&other.tower)
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.basis.cmp(&other.basis)
    }
}

impl Subspace {
    fn from_rows(tower: &Arc<FieldTower>, rows: Vec<Vec<u8>>) -> Subspace {
        let m = FqMatrix::new(tower.n(), rows).expect("rows have length n");
        let (basis, _) = fqlinalg::rref(tower.fq(), &m);
        Subspace { tower: Arc::clone(tower), basis }
    }

    /// Wraps a matrix that is already in RREF.
    fn from_canonical(tower: &Arc<FieldTower>, basis: FqMatrix) -> Subspace {
        Subspace { tower: Arc::clone(tower), basis }
    }

    pub fn zero(tower: &Arc<FieldTower>) -> Subspace {
        Subspace::from_canonical(tower, FqMatrix::empty(tower.n()))
    }

    /// The whole field `F_{q^n}`.
    pub fn full(tower: &Arc<FieldTower>) -> Subspace {
        Subspace::from_canonical(tower, FqMatrix::identity(tower.n()))
    }

    /// The `F_q`-span of `elements`.
    pub fn span(tower: &Arc<FieldTower>, elements: &[FFElem]) -> Result<Subspace> {
        if elements.iter().any(|e| !tower.contains(e)) {
            return Err(Error::TowerMismatch);
        }
        let rows = elements.iter().map(|e| tower.to_fq_coords(e)).collect();
        Ok(Subspace::from_rows(tower, rows))
    }

    /// `Σ e_i · F_{q^{s_i}}` as an `F_q`-space.
    pub fn line_sum(tower: &Arc<FieldTower>, terms: &[(FFElem, usize)]) -> Result<LineSum> {
        let mut gens = Vec::new();
        let mut expected = 0;
        for (e, s) in terms {
            if !tower.contains(e) {
                return Err(Error::TowerMismatch);
            }
            if e.is_zero() {
                return Err(Error::ZeroGenerator);
            }
            let g = tower.subfield_generator(*s)?;
            let mut cur = e.clone();
            for _ in 0..*s {
                gens.push(cur.clone());
                cur = tower.mul(&cur, &g);
            }
            expected += s;
        }
        let subspace = Subspace::span(tower, &gens)?;
        let direct = subspace.dim() == expected;
        Ok(LineSum { subspace, direct })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    /// Canonical basis (RREF of the `F_q`-coordinates).
    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn basis_elements(&self) -> Vec<FFElem> {
        self.basis.rows().iter().map(|r| self.tower.from_fq_coords(r)).collect()
    }

    fn check_tower(&self, other: &Subspace) -> Result<()> {
        if self.tower.same_as(&other.tower) {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_tower(other)?;
        let stacked = self.basis.stack(&other.basis)?;
        Ok(Subspace::from_rows(&self.tower, stacked.into_rows()))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_tower(other)?;
        let basis = fqlinalg::intersection(self.tower.fq(), &self.basis, &other.basis)?;
        Ok(Subspace::from_canonical(&self.tower, basis))
    }

    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        self.check_tower(other)?;
        fqlinalg::intersection_dim(self.tower.fq(), &self.basis, &other.basis)
    }

    pub fn contains(&self, a: &FFElem) -> bool {
        fqlinalg::solve_membership(self.tower.fq(), &self.basis, &self.tower.to_fq_coords(a))
            .expect("coordinates have length n")
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_elements().iter().all(|e| self.contains(e))
    }

    /// `aU = {a·u : u ∈ U}`.
    pub fn shift(&self, a: &FFElem) -> Result<Subspace> {
        if !self.tower.contains(a) {
            return Err(Error::TowerMismatch);
        }
        if a.is_zero() {
            return Err(Error::ZeroShift);
        }
        let rows = self
            .basis_elements()
            .iter()
            .map(|b| self.tower.to_fq_coords(&self.tower.mul(a, b)))
            .collect();
        Ok(Subspace::from_rows(&self.tower, rows))
    }

    /// Every element of `U` (all `q^k` of them); small subspaces only.
    pub fn elements(&self) -> Vec<FFElem> {
        let t = &self.tower;
        let q = t.q() as u64;
        let basis = self.basis_elements();
        let count = q.pow(self.dim() as u32);
        (0..count)
            .map(|mut idx| {
                let mut acc = t.zero();
                for b in &basis {
                    let c = (idx % q) as u8;
                    idx /= q;
                    if c != 0 {
                        acc = t.add(&acc, &t.scale(b, c));
                    }
                }
                acc
            })
            .collect()
    }

    /// `Stab(U) ∪ {0} = F_{q^t}` with `t` the largest divisor `d` of
    /// `gcd(k, n)` for which the generator of `F_{q^d}` fixes `U`.
    pub fn stabilizer(&self) -> Result<StabilizerResult> {
        let k = self.dim();
        if k == 0 {
            return Err(Error::EmptySubspace);
        }
        let divisors = divisors(gcd(k, self.tower.n()));
        let fixes = |d: usize| -> Result<bool> {
            let g = self.tower.subfield_generator(d)?;
            Ok(self.shift(&g)? == *self)
        };
        let mut t = 1;
        for &d in divisors.iter().rev() {
            if fixes(d)? {
                t = d;
                break;
            }
        }
        if cfg!(debug_assertions) {
            // F_{q^d} fixes U exactly when d | t, since Stab(U) ∪ {0} is a field.
            for &d in &divisors {
                debug_assert_eq!(fixes(d)?, t % d == 0, "inconsistent stabilizer at d={d}");
            }
        }
        let orbit_size = self.tower.group_order() / (self.tower.subfield_size(t) - 1);
        Ok(StabilizerResult { t, orbit_size })
    }

    /// `span(...)` text that parses back to this subspace.
    pub fn to_dsl(&self) -> String {
        let parts: Vec<String> = self.basis_elements().iter().map(format_element).collect();
        format!("span({})", parts.join(", "))
    }

    /// Views `U` as a space over `F_{q^t}`, where `F_{q^t}^*` must fix `U`.
    /// The new tower shares the defining polynomial and `z`, with
    /// `q' = q^t` and `n' = n/t`.
    pub fn rebase(&self, t: usize) -> Result<Subspace> {
        let tower = &self.tower;
        if t == 0 || tower.n() % t != 0 {
            return Err(Error::InvalidSubfield { s: t, n: tower.n() });
        }
        if t > 1 && self.shift(&tower.subfield_generator(t)?)? != *self {
            return Err(Error::InvalidParameter(format!("F_{{q^{t}}} does not stabilize the subspace")));
        }
        let modulus: Vec<u32> = tower.modulus().iter().map(|&c| c as u32).collect();
        let big = FieldTower::build(tower.p(), tower.e() * t, tower.n() / t, &modulus)?;
        let elems: Vec<FFElem> = self
            .basis_elements()
            .into_iter()
            .map(|e| big.element(e.coeffs().to_vec()))
            .collect::<Result<_>>()?;
        Subspace::span(&big, &elems)
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::ConwayTable;

    fn tower(q: u32, n: usize) -> Arc<FieldTower> {
        FieldTower::conway(q, n, &ConwayTable::bundled()).unwrap()
    }

    #[test]
    fn span_of_nothing() {
        let t = tower(2, 4);
        let u = Subspace::span(&t, &[]).unwrap();
        assert_eq!(u.dim(), 0);
        assert_eq!(u, Subspace::zero(&t));
        assert_eq!(u.stabilizer(), Err(Error::EmptySubspace));
    }

    #[test]
    fn subfield_as_subspace() {
        let t = tower(2, 4);
        let f4: Vec<FFElem> = t.all_elements().filter(|a| t.in_subfield(a, 2).unwrap()).collect();
        assert_eq!(f4.len(), 4);
        let u = Subspace::span(&t, &f4).unwrap();
        assert_eq!(u.dim(), 2);
        assert_eq!(u, Subspace::line_sum(&t, &[(t.one(), 2)]).unwrap().subspace);
        assert_eq!(u.stabilizer().unwrap(), StabilizerResult { t: 2, orbit_size: 5 });
    }

    #[test]
    fn unit_line() {
        let t = tower(3, 5);
        let ls = Subspace::line_sum(&t, &[(t.one(), 1)]).unwrap();
        assert_eq!(ls.subspace.dim(), 1);
        assert!(ls.direct);
        assert!(ls.subspace.contains(&t.one()));
    }

    #[test]
    fn line_sum_reports_non_direct() {
        let t = tower(2, 6);
        let z = t.z();
        let ls = Subspace::line_sum(&t, &[(z.clone(), 2), (z, 1)]).unwrap();
        assert_eq!(ls.subspace.dim(), 2);
        assert!(!ls.direct);
        assert!(matches!(
            Subspace::line_sum(&t, &[(t.one(), 4)]),
            Err(Error::InvalidSubfield { s: 4, n: 6 })
        ));
        assert_eq!(Subspace::line_sum(&t, &[(t.zero(), 1)]).unwrap_err(), Error::ZeroGenerator);
    }

    #[test]
    fn shift_laws() {
        let t = tower(3, 5);
        let u = Subspace::span(&t, &[t.z_pow(3), t.z_pow(7)]).unwrap();
        assert_eq!(u.shift(&t.one()).unwrap(), u);
        assert_eq!(u.shift(&t.element_from_ints(&[2])).unwrap(), u);
        let (a, b) = (t.z_pow(10), t.z_pow(33));
        assert_eq!(
            u.shift(&a).unwrap().shift(&b).unwrap(),
            u.shift(&t.mul(&a, &b)).unwrap()
        );
        assert_eq!(u.shift(&t.zero()).unwrap_err(), Error::ZeroShift);
        assert_eq!(u.shift(&a).unwrap().dim(), 2);
    }

    #[test]
    fn rebase_keeps_the_point_set() {
        let t = tower(2, 6);
        let u = Subspace::line_sum(&t, &[(t.z_pow(5), 2), (t.z_pow(9), 2)]).unwrap().subspace;
        let st = u.stabilizer().unwrap();
        assert_eq!(st.t, 2);
        let r = u.rebase(2).unwrap();
        assert_eq!((r.tower().q(), r.tower().n(), r.dim()), (4, 3, 2));
        assert_eq!(r.stabilizer().unwrap().orbit_size, st.orbit_size);
        for e in u.basis_elements() {
            assert!(r.contains(&r.tower().element(e.coeffs().to_vec()).unwrap()));
        }
    }

    #[test]
    fn dsl_round_trip() {
        let t = tower(3, 6);
        let u = parse_subspace("(z^2+1)*F(3,2) + z^17*F(3)", &t).unwrap();
        assert_eq!(u.dim(), 3);
        assert_eq!(parse_subspace(&u.to_dsl(), &t).unwrap(), u);
    }
}
