//! Exact linear algebra over a small field F_q.
//!
//! Scalars are indices in `[0, q)`; for a prime field the index is the residue
//! itself, for `q = p^e` it is the base-`p` digit string of the coordinates with
//! respect to the power basis of the tower's `w` (see [`crate::gf::FieldTower`]).
//! Arithmetic goes through lookup tables built once per field.
//!
//! The hot orbit sweep does not use [`FqMatrix`]; it runs on the packed
//! prime-field rows in [`packed`].

pub mod packed;

use crate::error::{Error, Result};

/// Addition/multiplication tables for F_q with `q <= 256`.
#[derive(Clone, Debug)]
pub struct Fq {
    q: u32,
    p: u32,
    e: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl Fq {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Self {
        let mul = (0..p * p).map(|i| ((i / p) * (i % p) % p) as u8).collect();
        Self::from_mul_table(p, 1, mul)
    }

    /// Builds the tables from a multiplication table; addition is digit-wise mod `p`.
    pub(crate) fn from_mul_table(p: u32, e: usize, mul: Vec<u8>) -> Self {
        let q = p.pow(e as u32);
        let qs = q as usize;
        assert_eq!(mul.len(), qs * qs);
        let digits = |mut x: u32| {
            let mut d = vec![0u32; e];
            for slot in d.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            d
        };
        let undigits = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &x| acc * p + x);
        let mut add = vec![0u8; qs * qs];
        let mut neg = vec![0u8; qs];
        for a in 0..q {
            let da = digits(a);
            let dn: Vec<u32> = da.iter().map(|&x| (p - x) % p).collect();
            neg[a as usize] = undigits(&dn) as u8;
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = undigits(&s) as u8;
            }
        }
        let mut inv = vec![0u8; qs];
        for a in 1..qs {
            for b in 1..qs {
                if mul[a * qs + b] == 1 {
                    inv[a] = b as u8;
                    break;
                }
            }
        }
        Self { q, p, e, add, mul, neg, inv }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.e
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// `None` for zero.
    #[inline]
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.q).map(|x| x as u8)
    }
}

/// A list of length-`ncols` row vectors over F_q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqMatrix {
    ncols: usize,
    rows: Vec<Vec<u8>>,
}

impl FqMatrix {
    pub fn new(ncols: usize, rows: Vec<Vec<u8>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::AmbientMismatch { left: ncols, right: bad.len() });
        }
        Ok(Self { ncols, rows })
    }

    pub fn empty(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![0u8; n];
                r[i] = 1;
                r
            })
            .collect();
        Self { ncols: n, rows }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<u8>> {
        self.rows
    }

    pub fn push_row(&mut self, row: Vec<u8>) -> Result<()> {
        if row.len() != self.ncols {
            return Err(Error::AmbientMismatch { left: self.ncols, right: row.len() });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &FqMatrix) -> Result<FqMatrix> {
        check_ambient(self, other)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(FqMatrix { ncols: self.ncols, rows })
    }
}

fn check_ambient(a: &FqMatrix, b: &FqMatrix) -> Result<()> {
    if a.ncols != b.ncols {
        return Err(Error::AmbientMismatch { left: a.ncols, right: b.ncols });
    }
    Ok(())
}

/// Reduced row echelon form with zero rows removed, and the rank.
///
/// Pivots are the first nonzero entry in column order and are scaled to 1.
pub fn rref(fq: &Fq, m: &FqMatrix) -> (FqMatrix, usize) {
    let mut rows = m.rows.clone();
    let ncols = m.ncols;
    let mut rank = 0;
    for col in 0..ncols {
        let Some(found) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let lead_inv = fq.inv(rows[rank][col]).expect("nonzero pivot");
        if lead_inv != 1 {
            for x in rows[rank].iter_mut() {
                *x = fq.mul(*x, lead_inv);
            }
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank {
                continue;
            }
            let c = row[col];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&pivot).skip(col) {
                    *x = fq.sub(*x, fq.mul(c, y));
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (FqMatrix { ncols, rows }, rank)
}

pub fn rank(fq: &Fq, m: &FqMatrix) -> usize {
    rref(fq, m).1
}

/// `dim(A ∩ B) = rank A + rank B - rank [A; B]`.
pub fn intersection_dim(fq: &Fq, a: &FqMatrix, b: &FqMatrix) -> Result<usize> {
    let stacked = a.stack(b)?;
    Ok(rank(fq, a) + rank(fq, b) - rank(fq, &stacked))
}

/// A basis (in RREF) of the intersection of the row spaces, by Zassenhaus.
pub fn intersection(fq: &Fq, a: &FqMatrix, b: &FqMatrix) -> Result<FqMatrix> {
    check_ambient(a, b)?;
    let n = a.ncols;
    let mut rows = Vec::with_capacity(a.nrows() + b.nrows());
    for r in &a.rows {
        let mut row = r.clone();
        row.extend_from_slice(r);
        rows.push(row);
    }
    for r in &b.rows {
        let mut row = r.clone();
        row.extend(std::iter::repeat_n(0, n));
        rows.push(row);
    }
    let (red, _) = rref(fq, &FqMatrix { ncols: 2 * n, rows });
    let inter = red
        .rows
        .into_iter()
        .filter(|r| r[..n].iter().all(|&x| x == 0))
        .map(|r| r[n..].to_vec())
        .collect();
    Ok(rref(fq, &FqMatrix { ncols: n, rows: inter }).0)
}

/// Whether `v` lies in the row space of `m`.
pub fn solve_membership(fq: &Fq, m: &FqMatrix, v: &[u8]) -> Result<bool> {
    if v.len() != m.ncols {
        return Err(Error::AmbientMismatch { left: m.ncols, right: v.len() });
    }
    let (red, r) = rref(fq, m);
    let mut with = red;
    with.rows.push(v.to_vec());
    Ok(rank(fq, &with) == r)
}

/// Basis of `{x : row · x = 0 for every row}` in RREF.
pub fn nullspace(fq: &Fq, m: &FqMatrix) -> FqMatrix {
    let n = m.ncols;
    let (red, _) = rref(fq, m);
    let pivots: Vec<usize> = red
        .rows
        .iter()
        .map(|r| r.iter().position(|&x| x != 0).expect("rref rows are nonzero"))
        .collect();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut x = vec![0u8; n];
        x[free] = 1;
        for (row, &pc) in red.rows.iter().zip(&pivots) {
            x[pc] = fq.neg(row[free]);
        }
        basis.push(x);
    }
    rref(fq, &FqMatrix { ncols: n, rows: basis }).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, q: u32, rows: usize, cols: usize) -> FqMatrix {
        let rows = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(0..q) as u8).collect())
            .collect();
        FqMatrix::new(cols, rows).unwrap()
    }

    /// All vectors of the row space, as a sorted list.
    fn span_set(fq: &Fq, m: &FqMatrix) -> Vec<Vec<u8>> {
        let (red, r) = rref(fq, m);
        let q = fq.q() as usize;
        let mut out = Vec::with_capacity(q.pow(r as u32));
        for mut idx in 0..q.pow(r as u32) {
            let mut v = vec![0u8; m.ncols()];
            for row in red.rows() {
                let c = (idx % q) as u8;
                idx /= q;
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = fq.add(*x, fq.mul(c, y));
                }
            }
            out.push(v);
        }
        out.sort();
        out
    }

    #[test]
    fn rref_of_zero_and_identity() {
        let fq = Fq::prime(3);
        let zero = FqMatrix::new(4, vec![vec![0; 4]; 3]).unwrap();
        let (r, k) = rref(&fq, &zero);
        assert_eq!(k, 0);
        assert_eq!(r.nrows(), 0);
        let id = FqMatrix::identity(5);
        assert_eq!(rref(&fq, &id), (id.clone(), 5));
    }

    #[test]
    fn rref_preserves_row_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &q in &[2u32, 3, 5] {
            let fq = Fq::prime(q);
            for _ in 0..1000 {
                let rows = rng.gen_range(0..6);
                let m = random_matrix(&mut rng, q, rows, 5);
                let (red, r) = rref(&fq, &m);
                assert_eq!(red.nrows(), r);
                for row in m.rows() {
                    assert!(solve_membership(&fq, &red, row).unwrap());
                }
                for row in red.rows() {
                    assert!(solve_membership(&fq, &m, row).unwrap());
                }
                assert_eq!(rref(&fq, &red).0, red);
            }
        }
    }

    #[test]
    fn intersection_dim_matches_span_sets() {
        let fq = Fq::prime(2);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let ra = rng.gen_range(0..5);
            let rb = rng.gen_range(0..5);
            let a = random_matrix(&mut rng, 2, ra, 6);
            let b = random_matrix(&mut rng, 2, rb, 6);
            let sa = span_set(&fq, &a);
            let sb = span_set(&fq, &b);
            let common = sa.iter().filter(|v| sb.binary_search(v).is_ok()).count();
            let expected = common.trailing_zeros() as usize;
            assert_eq!(intersection_dim(&fq, &a, &b).unwrap(), expected);
            assert_eq!(intersection(&fq, &a, &b).unwrap().nrows(), expected);
        }
    }

    #[test]
    fn membership_matches_span_sets() {
        let fq = Fq::prime(3);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let rows = rng.gen_range(0..4);
            let m = random_matrix(&mut rng, 3, rows, 4);
            let set = span_set(&fq, &m);
            let v: Vec<u8> = (0..4).map(|_| rng.gen_range(0..3)).collect();
            assert_eq!(solve_membership(&fq, &m, &v).unwrap(), set.binary_search(&v).is_ok());
            assert!(solve_membership(&fq, &m, &[0; 4]).unwrap());
        }
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        let fq = Fq::prime(2);
        let a = FqMatrix::identity(3);
        let b = FqMatrix::identity(4);
        assert_eq!(
            intersection_dim(&fq, &a, &b),
            Err(Error::AmbientMismatch { left: 3, right: 4 })
        );
        assert!(solve_membership(&fq, &a, &[1, 0]).is_err());
        assert!(FqMatrix::new(2, vec![vec![1, 0, 1]]).is_err());
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let fq = Fq::prime(5);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let rows = rng.gen_range(0..5);
            let m = random_matrix(&mut rng, 5, rows, 6);
            let ns = nullspace(&fq, &m);
            assert_eq!(ns.nrows() + rank(&fq, &m), 6);
            for x in ns.rows() {
                for r in m.rows() {
                    let dot = r.iter().zip(x).fold(0u8, |acc, (&a, &b)| fq.add(acc, fq.mul(a, b)));
                    assert_eq!(dot, 0);
                }
            }
        }
    }

    #[test]
    fn field_tables() {
        let f = Fq::prime(7);
        for a in 1..7u8 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
        assert_eq!(f.inv(0), None);
    }
}
