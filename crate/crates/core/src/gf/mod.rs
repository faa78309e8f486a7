//! The field tower `F_p ⊂ F_q ⊂ F_{q^n}`.
//!
//! `F_{q^n}` is `F_p[x]/(f)` for a monic primitive `f` of degree `e·n`, and
//! `z` is the class of `x`. Elements are stored as prime-field coefficient
//! vectors in the basis `1, z, ..., z^(en-1)`; no discrete-log tables are kept.
//!
//! `F_q` is generated by `w = z^((q^n-1)/(q-1))`. An `F_q` scalar is encoded as
//! the integer `Σ d_j p^j` for the element `Σ d_j w^j`, which for `e = 1` is just
//! the residue. [`FieldTower::to_fq_coords`] writes an element in the
//! `F_q`-basis `1, z, ..., z^(n-1)` using a change-of-basis matrix computed once.

mod conway;
pub(crate) mod poly;

pub use conway::ConwayTable;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fqlinalg::Fq;

/// Largest supported `|F_{q^n}|`.
pub const MAX_FIELD_BITS: u32 = 34;
/// Largest supported `q` (scalar tables are `q × q`).
pub const MAX_Q: u32 = 256;

/// An element of `F_{q^n}` as prime-field coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFElem {
    coeffs: Vec<u8>,
}

impl FFElem {
    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[derive(Debug)]
pub struct FieldTower {
    p: u32,
    e: usize,
    n: usize,
    q: u32,
    modulus: Vec<u8>,
    group_order: u64,
    fq: Fq,
    /// Prime coordinates of `w^j`, `j < e`.
    w_powers: Vec<FFElem>,
    /// `digits = to_digits · prime_coords`, row-major `en × en`; `None` when `e = 1`.
    to_digits: Option<Vec<Vec<u8>>>,
}

impl FieldTower {
    /// Builds and validates a tower. `modulus` is ascending with length `e·n + 1`.
    pub fn build(p: u32, e: usize, n: usize, modulus: &[u32]) -> Result<Arc<FieldTower>> {
        if !poly::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 || n == 0 {
            return Err(Error::InvalidParameter("e and n must be positive".into()));
        }
        let en = e * n;
        let q = (p as u64).checked_pow(e as u32).unwrap_or(u64::MAX);
        if q > MAX_Q as u64 {
            return Err(Error::FieldTooLarge(format!("q = {p}^{e} exceeds {MAX_Q}")));
        }
        let bits = (en as f64) * (p as f64).log2();
        if bits > MAX_FIELD_BITS as f64 + 1e-9 {
            return Err(Error::FieldTooLarge(format!("{p}^{en} exceeds 2^{MAX_FIELD_BITS}")));
        }
        if modulus.len() != en + 1 {
            return Err(Error::DegreeMismatch {
                expected: en,
                found: modulus.len().saturating_sub(1),
            });
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParameter(format!("modulus coefficients must lie in [0, {p})")));
        }
        if modulus[en] != 1 {
            return Err(Error::NotMonic);
        }
        if !poly::is_irreducible(modulus, p) {
            return Err(Error::NotIrreducible { p });
        }
        let group_order = (p as u64).pow(en as u32) - 1;
        let x = [0u32, 1];
        let x_order = {
            let mut order = group_order;
            for r in poly::prime_factors(group_order) {
                while order % r == 0 && poly::pow_poly(&x, order / r, modulus, p) == vec![1] {
                    order /= r;
                }
            }
            order
        };
        if x_order != group_order {
            return Err(Error::NotPrimitive { order: x_order, group: group_order });
        }

        let mut tower = FieldTower {
            p,
            e,
            n,
            q: q as u32,
            modulus: modulus.iter().map(|&c| c as u8).collect(),
            group_order,
            fq: Fq::prime(p),
            w_powers: Vec::new(),
            to_digits: None,
        };
        let w = tower.z_pow(group_order / (q - 1));
        let mut w_powers = Vec::with_capacity(e);
        let mut cur = tower.one();
        for _ in 0..e {
            w_powers.push(cur.clone());
            cur = tower.mul(&cur, &w);
        }
        tower.w_powers = w_powers;
        if e > 1 {
            tower.to_digits = Some(tower.digit_matrix());
            tower.fq = tower.scalar_tables();
        }
        Ok(Arc::new(tower))
    }

    /// Tower over `F_q` (`q` a prime power) using the Conway polynomial for `F_{q^n}`.
    pub fn conway(q: u32, n: usize, table: &ConwayTable) -> Result<Arc<FieldTower>> {
        let (p, e) = split_prime_power(q)?;
        let modulus = table
            .get(p, e * n)
            .ok_or(Error::NoConway { p, degree: e * n })?;
        FieldTower::build(p, e, n, modulus)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `e·n`, the degree over the prime field.
    pub fn prime_degree(&self) -> usize {
        self.e * self.n
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// `q^n - 1`.
    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// `q^n`.
    pub fn size(&self) -> u64 {
        self.group_order + 1
    }

    pub fn fq(&self) -> &Fq {
        &self.fq
    }

    /// Same tower (parameters and modulus).
    pub fn same_as(&self, other: &FieldTower) -> bool {
        self.p == other.p && self.e == other.e && self.n == other.n && self.modulus == other.modulus
    }

    pub fn zero(&self) -> FFElem {
        FFElem { coeffs: vec![0; self.prime_degree()] }
    }

    pub fn one(&self) -> FFElem {
        let mut c = vec![0; self.prime_degree()];
        c[0] = 1;
        FFElem { coeffs: c }
    }

    /// The primitive element `z` (for `en = 1` this is the constant `-f(0)`).
    pub fn z(&self) -> FFElem {
        let mut r = self.one();
        self.mul_z_in_place(&mut r);
        r
    }

    pub fn element(&self, coeffs: Vec<u8>) -> Result<FFElem> {
        if coeffs.len() != self.prime_degree() || coeffs.iter().any(|&c| c as u32 >= self.p) {
            return Err(Error::TowerMismatch);
        }
        Ok(FFElem { coeffs })
    }

    /// Element from arbitrary integer coefficients, reduced mod `p` and mod the modulus.
    pub fn element_from_ints(&self, coeffs: &[i64]) -> FFElem {
        let p = self.p as i64;
        let mut acc = self.zero();
        let mut zk = self.one();
        for &c in coeffs {
            let c = c.rem_euclid(p) as u8;
            if c != 0 {
                acc = self.add(&acc, &self.scale_prime(&zk, c));
            }
            self.mul_z_in_place(&mut zk);
        }
        acc
    }

    pub fn contains(&self, a: &FFElem) -> bool {
        a.coeffs.len() == self.prime_degree() && a.coeffs.iter().all(|&c| (c as u32) < self.p)
    }

    pub fn add(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let p = self.p as u16;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| ((x as u16 + y as u16) % p) as u8)
            .collect();
        FFElem { coeffs }
    }

    pub fn neg(&self, a: &FFElem) -> FFElem {
        let p = self.p as u8;
        FFElem { coeffs: a.coeffs.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect() }
    }

    pub fn sub(&self, a: &FFElem, b: &FFElem) -> FFElem {
        self.add(a, &self.neg(b))
    }

    fn scale_prime(&self, a: &FFElem, c: u8) -> FFElem {
        let p = self.p as u16;
        FFElem {
            coeffs: a.coeffs.iter().map(|&x| ((x as u16 * c as u16) % p) as u8).collect(),
        }
    }

    /// Multiplies by `z` in place.
    pub fn mul_z_in_place(&self, a: &mut FFElem) {
        let en = self.prime_degree();
        let p = self.p as u16;
        let top = a.coeffs[en - 1] as u16;
        a.coeffs.copy_within(0..en - 1, 1);
        a.coeffs[0] = 0;
        if top != 0 {
            let c = p - top;
            for (x, &m) in a.coeffs.iter_mut().zip(&self.modulus) {
                *x = ((*x as u16 + c * m as u16) % p) as u8;
            }
        }
    }

    pub fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let en = self.prime_degree();
        let p = self.p;
        let mut prod = vec![0u32; 2 * en - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u32 * y as u32) % p;
            }
        }
        for i in (en..2 * en - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            let neg_c = p - c;
            for (j, &m) in self.modulus[..en].iter().enumerate() {
                prod[i - en + j] = (prod[i - en + j] + neg_c * m as u32) % p;
            }
            prod[i] = 0;
        }
        FFElem { coeffs: prod[..en].iter().map(|&c| c as u8).collect() }
    }

    pub fn pow(&self, a: &FFElem, mut k: u128) -> FFElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `z^k`, with `k` reduced mod `q^n - 1`.
    pub fn z_pow(&self, k: u64) -> FFElem {
        self.pow(&self.z(), (k % self.group_order) as u128)
    }

    pub fn inv(&self, a: &FFElem) -> Result<FFElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, (self.group_order - 1) as u128))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: &FFElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let one = self.one();
        let mut order = self.group_order;
        for r in poly::prime_factors(self.group_order) {
            while order % r == 0 && self.pow(a, (order / r) as u128) == one {
                order /= r;
            }
        }
        Ok(order)
    }

    fn check_subfield(&self, s: usize) -> Result<()> {
        if s == 0 || self.n % s != 0 {
            return Err(Error::InvalidSubfield { s, n: self.n });
        }
        Ok(())
    }

    /// `q^s`.
    pub fn subfield_size(&self, s: usize) -> u64 {
        (self.q as u64).pow(s as u32)
    }

    /// Degree of `a` over `F_{q^s}`: the least `d` with `a^((q^s)^d) = a`.
    pub fn degree_over(&self, a: &FFElem, s: usize) -> Result<usize> {
        self.check_subfield(s)?;
        let big_q = self.subfield_size(s) as u128;
        let mut d = 1;
        let mut cur = self.pow(a, big_q);
        while &cur != a {
            cur = self.pow(&cur, big_q);
            d += 1;
        }
        Ok(d)
    }

    /// `z^((q^n - 1)/(q^s - 1))`, a primitive element of `F_{q^s}`.
    pub fn subfield_generator(&self, s: usize) -> Result<FFElem> {
        self.check_subfield(s)?;
        Ok(self.z_pow(self.subfield_exponent(s)?))
    }

    /// The exponent `(q^n - 1)/(q^s - 1)` used by [`Self::subfield_generator`].
    pub fn subfield_exponent(&self, s: usize) -> Result<u64> {
        self.check_subfield(s)?;
        Ok(self.group_order / (self.subfield_size(s) - 1))
    }

    /// Whether `a` lies in `F_{q^s}`.
    pub fn in_subfield(&self, a: &FFElem, s: usize) -> Result<bool> {
        self.check_subfield(s)?;
        Ok(&self.pow(a, self.subfield_size(s) as u128) == a)
    }

    /// The `F_q` scalar with index `c`, as a field element.
    pub fn embed_scalar(&self, c: u8) -> FFElem {
        let mut acc = self.zero();
        let mut rest = c as u32;
        for wj in &self.w_powers {
            let d = (rest % self.p) as u8;
            rest /= self.p;
            if d != 0 {
                acc = self.add(&acc, &self.scale_prime(wj, d));
            }
        }
        acc
    }

    /// Multiplies `a` by the `F_q` scalar `c`.
    pub fn scale(&self, a: &FFElem, c: u8) -> FFElem {
        if self.e == 1 {
            self.scale_prime(a, c)
        } else {
            self.mul(a, &self.embed_scalar(c))
        }
    }

    /// Coordinates over `F_q` in the basis `1, z, ..., z^(n-1)`.
    pub fn to_fq_coords(&self, a: &FFElem) -> Vec<u8> {
        let Some(m) = &self.to_digits else {
            return a.coeffs.clone();
        };
        let p = self.p;
        let digits: Vec<u32> = m
            .iter()
            .map(|row| row.iter().zip(&a.coeffs).map(|(&x, &y)| x as u32 * y as u32).sum::<u32>() % p)
            .collect();
        digits
            .chunks(self.e)
            .map(|d| d.iter().rev().fold(0u32, |acc, &x| acc * p + x) as u8)
            .collect()
    }

    /// Inverse of [`Self::to_fq_coords`].
    pub fn from_fq_coords(&self, coords: &[u8]) -> FFElem {
        assert_eq!(coords.len(), self.n);
        if self.e == 1 {
            return FFElem { coeffs: coords.to_vec() };
        }
        let mut acc = self.zero();
        let mut zi = self.one();
        for &c in coords {
            if c != 0 {
                acc = self.add(&acc, &self.mul(&zi, &self.embed_scalar(c)));
            }
            self.mul_z_in_place(&mut zi);
        }
        acc
    }

    /// `Tr_{F_{q^n}/F_q}(a)` as an `F_q` scalar index.
    pub fn trace(&self, a: &FFElem) -> u8 {
        let mut acc = a.clone();
        let mut cur = a.clone();
        for _ in 1..self.n {
            cur = self.pow(&cur, self.q as u128);
            acc = self.add(&acc, &cur);
        }
        let c = self.to_fq_coords(&acc);
        debug_assert!(c[1..].iter().all(|&x| x == 0));
        c[0]
    }

    /// Every element of the field, in coefficient-counting order. Meant for
    /// small towers only.
    pub fn all_elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        let en = self.prime_degree();
        let p = self.p as u64;
        (0..self.size()).map(move |mut idx| {
            let mut coeffs = vec![0u8; en];
            for c in coeffs.iter_mut() {
                *c = (idx % p) as u8;
                idx /= p;
            }
            FFElem { coeffs }
        })
    }

    /// Inverse of the matrix whose column `i·e + j` holds the prime
    /// coordinates of `w^j z^i`.
    fn digit_matrix(&self) -> Vec<Vec<u8>> {
        let en = self.prime_degree();
        let mut cols = Vec::with_capacity(en);
        let mut zi = self.one();
        for _ in 0..self.n {
            for wj in &self.w_powers {
                cols.push(self.mul(&zi, wj).coeffs);
            }
            self.mul_z_in_place(&mut zi);
        }
        let basis: Vec<Vec<u8>> = (0..en).map(|r| (0..en).map(|c| cols[c][r]).collect()).collect();
        invert_prime_matrix(&basis, self.p).expect("1, z, ..., z^(n-1) is an F_q-basis")
    }

    fn scalar_tables(&self) -> Fq {
        let q = self.q as usize;
        let embedded: Vec<FFElem> = (0..q).map(|c| self.embed_scalar(c as u8)).collect();
        let index: std::collections::HashMap<&FFElem, u8> =
            embedded.iter().enumerate().map(|(i, x)| (x, i as u8)).collect();
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in a..q {
                let prod = self.mul(&embedded[a], &embedded[b]);
                let c = index[&prod];
                mul[a * q + b] = c;
                mul[b * q + a] = c;
            }
        }
        Fq::from_mul_table(self.p, self.e, mul)
    }
}

/// Splits `q = p^e`.
pub fn split_prime_power(q: u32) -> Result<(u32, usize)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let factors = poly::prime_factors(q as u64);
    if factors.len() != 1 {
        return Err(Error::NotPrimePower(q));
    }
    let p = factors[0] as u32;
    let mut e = 0;
    let mut rest = q;
    while rest > 1 {
        rest /= p;
        e += 1;
    }
    Ok((p, e))
}

fn invert_prime_matrix(m: &[Vec<u8>], p: u32) -> Option<Vec<Vec<u8>>> {
    let n = m.len();
    let mut a: Vec<Vec<u32>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<u32> = row.iter().map(|&x| x as u32).collect();
            r.extend((0..n).map(|j| (i == j) as u32));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = poly::inv_mod(a[col][col], p);
        for x in a[col].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && row[col] != 0 {
                let c = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - c) * y) % p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].iter().map(|&x| x as u8).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f16() -> Arc<FieldTower> {
        FieldTower::build(2, 1, 4, &[1, 1, 0, 0, 1]).unwrap()
    }

    fn random_elem(t: &FieldTower, rng: &mut ChaCha8Rng) -> FFElem {
        let c = (0..t.prime_degree()).map(|_| rng.gen_range(0..t.p()) as u8).collect();
        t.element(c).unwrap()
    }

    #[test]
    fn builds_f16() {
        let t = f16();
        assert_eq!(t.size(), 16);
        assert_eq!(t.order(&t.z()).unwrap(), 15);
        assert_eq!(t.pow(&t.z(), 15), t.one());
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(
            FieldTower::build(2, 1, 4, &[1, 0, 1, 0, 1]).unwrap_err(),
            Error::NotIrreducible { p: 2 }
        );
        // x^4 + x^3 + x^2 + x + 1 is irreducible but x has order 5
        assert_eq!(
            FieldTower::build(2, 1, 4, &[1, 1, 1, 1, 1]).unwrap_err(),
            Error::NotPrimitive { order: 5, group: 15 }
        );
        assert!(matches!(
            FieldTower::build(2, 1, 4, &[1, 1, 1]),
            Err(Error::DegreeMismatch { expected: 4, found: 2 })
        ));
        assert!(matches!(FieldTower::build(4, 1, 2, &[1, 1, 1]), Err(Error::NotPrime(4))));
    }

    #[test]
    fn inverse_law() {
        let t = f16();
        let z = t.z();
        assert_eq!(t.mul(&t.inv(&z).unwrap(), &z), t.one());
        assert_eq!(t.inv(&t.zero()), Err(Error::DivisionByZero));
        for a in t.all_elements().skip(1) {
            assert_eq!(t.mul(&a, &t.inv(&a).unwrap()), t.one());
        }
    }

    #[test]
    fn degree_two_elements_are_the_quadratic_subfield() {
        for &(q, n) in &[(2u32, 4usize), (3, 4), (2, 6), (4, 2), (2, 5), (3, 3)] {
            let t = FieldTower::conway(q, n, &ConwayTable::bundled()).unwrap();
            let count = t
                .all_elements()
                .filter(|a| t.degree_over(a, 1).unwrap() == 2)
                .count() as u64;
            let expected = if n % 2 == 0 { (q as u64).pow(2) - q as u64 } else { 0 };
            assert_eq!(count, expected, "q={q} n={n}");
        }
    }

    #[test]
    fn degree_divides() {
        let t = FieldTower::conway(2, 6, &ConwayTable::bundled()).unwrap();
        for a in t.all_elements() {
            for s in [1, 2, 3, 6] {
                let d = t.degree_over(&a, s).unwrap();
                assert_eq!(6 % (d * s), 0);
            }
        }
        assert_eq!(t.degree_over(&t.one(), 4), Err(Error::InvalidSubfield { s: 4, n: 6 }));
        assert_eq!(t.degree_over(&t.one(), 1), Ok(1));
    }

    #[test]
    fn subfield_generators_have_full_order() {
        let t = FieldTower::conway(3, 6, &ConwayTable::bundled()).unwrap();
        for s in [1, 2, 3, 6] {
            let g = t.subfield_generator(s).unwrap();
            assert_eq!(t.order(&g).unwrap(), 3u64.pow(s as u32) - 1);
        }
        assert!(t.subfield_generator(4).is_err());
    }

    #[test]
    fn fq_coords_round_trip_and_linearity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &(q, n) in &[(2u32, 5usize), (3, 4), (4, 3), (9, 2), (8, 2), (5, 3)] {
            let t = FieldTower::conway(q, n, &ConwayTable::bundled()).unwrap();
            let fq = t.fq();
            assert!(t.to_fq_coords(&t.zero()).iter().all(|&c| c == 0));
            let z2 = t.pow(&t.z(), 2);
            if n > 2 {
                let mut unit = vec![0u8; n];
                unit[2] = 1;
                assert_eq!(t.to_fq_coords(&z2), unit);
            }
            for _ in 0..1000 {
                let a = random_elem(&t, &mut rng);
                let b = random_elem(&t, &mut rng);
                let s = rng.gen_range(0..q) as u8;
                let ca = t.to_fq_coords(&a);
                assert_eq!(t.from_fq_coords(&ca), a);
                let cb = t.to_fq_coords(&b);
                let sum: Vec<u8> = ca.iter().zip(&cb).map(|(&x, &y)| fq.add(x, y)).collect();
                assert_eq!(t.to_fq_coords(&t.add(&a, &b)), sum);
                let scaled: Vec<u8> = ca.iter().map(|&x| fq.mul(s, x)).collect();
                assert_eq!(t.to_fq_coords(&t.scale(&a, s)), scaled);
            }
        }
    }

    #[test]
    fn composite_q_scalars_form_a_field() {
        let t = FieldTower::conway(4, 3, &ConwayTable::bundled()).unwrap();
        assert_eq!((t.p(), t.e(), t.prime_degree()), (2, 2, 6));
        let fq = t.fq();
        for a in 1..4u8 {
            assert_eq!(fq.mul(a, fq.inv(a).unwrap()), 1);
            let e = t.embed_scalar(a);
            assert!(t.in_subfield(&e, 1).unwrap());
            assert_eq!(t.to_fq_coords(&e), vec![a, 0, 0]);
        }
    }

    #[test]
    fn trace_is_fq_linear_and_onto() {
        let t = FieldTower::conway(3, 4, &ConwayTable::bundled()).unwrap();
        let mut counts = [0usize; 3];
        for a in t.all_elements() {
            counts[t.trace(&a) as usize] += 1;
        }
        assert_eq!(counts, [27, 27, 27]);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(split_prime_power(9), Ok((3, 2)));
        assert_eq!(split_prime_power(7), Ok((7, 1)));
        assert!(split_prime_power(12).is_err());
        assert!(split_prime_power(1).is_err());
    }
}
