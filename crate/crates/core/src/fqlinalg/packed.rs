//! Packed prime-field rows for the orbit sweep.
//!
//! A row holds the `en` prime-field coefficients of a field element (the
//! polynomial basis `1, z, ..., z^(en-1)`). Three kernels share one interface:
//! one bit per entry for F_2, two bit planes for F_3, and a byte array for
//! every other prime. Each kernel also knows the defining polynomial so that
//! a row can be multiplied by `z` in place.
//!
//! Echelon bases built here pivot on the *lowest* nonzero position, which is
//! all the rank computation needs; canonical forms live in [`super::rref`].

/// Widest row the generic kernel handles (`p^en` stays below 2^34 for `p >= 5`).
pub const GENERIC_WIDTH: usize = 40;

pub trait RowKernel: Sync {
    type Row: Copy + Send + Sync + std::fmt::Debug;

    fn width(&self) -> usize;
    fn zero(&self) -> Self::Row;
    fn from_coeffs(&self, coeffs: &[u8]) -> Self::Row;
    fn to_coeffs(&self, row: &Self::Row) -> Vec<u8>;
    /// Lowest nonzero position and its coefficient.
    fn lowest(&self, row: &Self::Row) -> Option<(usize, u8)>;
    /// Scales `row` by the inverse of `lead`.
    fn normalize(&self, row: &mut Self::Row, lead: u8);
    /// `dst -= coef * src`.
    fn sub_multiple(&self, dst: &mut Self::Row, coef: u8, src: &Self::Row);
    /// Multiplies the represented field element by `z`.
    fn mul_z(&self, row: &mut Self::Row);
}

#[derive(Clone, Debug)]
pub struct Gf2Kernel {
    width: usize,
    top: u64,
    modulus: u64,
}

impl Gf2Kernel {
    /// `modulus` is the monic defining polynomial, ascending, length `width + 1`.
    pub fn new(modulus: &[u8]) -> Self {
        let width = modulus.len() - 1;
        assert!(width <= 63);
        let bits = modulus
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (((c & 1) as u64) << i));
        Self { width, top: 1 << width, modulus: bits }
    }
}

impl RowKernel for Gf2Kernel {
    type Row = u64;

    fn width(&self) -> usize {
        self.width
    }

    fn zero(&self) -> u64 {
        0
    }

    fn from_coeffs(&self, coeffs: &[u8]) -> u64 {
        coeffs
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (((c & 1) as u64) << i))
    }

    fn to_coeffs(&self, row: &u64) -> Vec<u8> {
        (0..self.width).map(|i| ((row >> i) & 1) as u8).collect()
    }

    #[inline]
    fn lowest(&self, row: &u64) -> Option<(usize, u8)> {
        (*row != 0).then(|| (row.trailing_zeros() as usize, 1))
    }

    #[inline]
    fn normalize(&self, _row: &mut u64, _lead: u8) {}

    #[inline]
    fn sub_multiple(&self, dst: &mut u64, _coef: u8, src: &u64) {
        *dst ^= *src;
    }

    #[inline]
    fn mul_z(&self, row: &mut u64) {
        *row <<= 1;
        if *row & self.top != 0 {
            *row ^= self.modulus;
        }
    }
}

/// F_3 row as two bit planes: `.0` marks entries equal to 1, `.1` entries equal to 2.
#[derive(Clone, Debug)]
pub struct Gf3Kernel {
    width: usize,
    top: u64,
    modulus: (u64, u64),
}

#[inline]
fn gf3_add(a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
    let a0 = !(a.0 | a.1);
    let b0 = !(b.0 | b.1);
    let ones = (a0 & b.0) | (a.0 & b0) | (a.1 & b.1);
    let twos = (a0 & b.1) | (a.1 & b0) | (a.0 & b.0);
    (ones, twos)
}

impl Gf3Kernel {
    pub fn new(modulus: &[u8]) -> Self {
        let width = modulus.len() - 1;
        assert!(width <= 63);
        let k = Self { width, top: 1 << width, modulus: (0, 0) };
        let planes = k.from_coeffs(modulus);
        Self { modulus: planes, ..k }
    }

    pub fn add(&self, a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        gf3_add(a, b)
    }
}

impl RowKernel for Gf3Kernel {
    type Row = (u64, u64);

    fn width(&self) -> usize {
        self.width
    }

    fn zero(&self) -> (u64, u64) {
        (0, 0)
    }

    fn from_coeffs(&self, coeffs: &[u8]) -> (u64, u64) {
        let mut r = (0u64, 0u64);
        for (i, &c) in coeffs.iter().enumerate() {
            match c % 3 {
                1 => r.0 |= 1 << i,
                2 => r.1 |= 1 << i,
                _ => {}
            }
        }
        r
    }

    fn to_coeffs(&self, row: &(u64, u64)) -> Vec<u8> {
        (0..self.width)
            .map(|i| (((row.0 >> i) & 1) + 2 * ((row.1 >> i) & 1)) as u8)
            .collect()
    }

    #[inline]
    fn lowest(&self, row: &(u64, u64)) -> Option<(usize, u8)> {
        let any = row.0 | row.1;
        if any == 0 {
            return None;
        }
        let pos = any.trailing_zeros() as usize;
        Some((pos, if (row.0 >> pos) & 1 == 1 { 1 } else { 2 }))
    }

    #[inline]
    fn normalize(&self, row: &mut (u64, u64), lead: u8) {
        if lead == 2 {
            *row = (row.1, row.0);
        }
    }

    #[inline]
    fn sub_multiple(&self, dst: &mut (u64, u64), coef: u8, src: &(u64, u64)) {
        // -1 * src swaps the planes; -2 * src = src
        let s = if coef == 1 { (src.1, src.0) } else { *src };
        *dst = gf3_add(*dst, s);
    }

    #[inline]
    fn mul_z(&self, row: &mut (u64, u64)) {
        let shifted = (row.0 << 1, row.1 << 1);
        *row = if shifted.0 & self.top != 0 {
            gf3_add(shifted, (self.modulus.1, self.modulus.0))
        } else if shifted.1 & self.top != 0 {
            gf3_add(shifted, self.modulus)
        } else {
            shifted
        };
    }
}

/// Byte-per-entry kernel for any prime `p < 256`.
#[derive(Clone, Debug)]
pub struct GenericKernel {
    p: u8,
    width: usize,
    modulus: [u8; GENERIC_WIDTH + 1],
    inv: Vec<u8>,
}

impl GenericKernel {
    pub fn new(p: u32, modulus: &[u8]) -> Self {
        let width = modulus.len() - 1;
        assert!(width <= GENERIC_WIDTH && p < 256);
        let mut m = [0u8; GENERIC_WIDTH + 1];
        m[..modulus.len()].copy_from_slice(modulus);
        let inv = (0..p)
            .map(|a| (0..p).find(|&b| a * b % p == 1).unwrap_or(0) as u8)
            .collect();
        Self { p: p as u8, width, modulus: m, inv }
    }
}

impl RowKernel for GenericKernel {
    type Row = [u8; GENERIC_WIDTH];

    fn width(&self) -> usize {
        self.width
    }

    fn zero(&self) -> Self::Row {
        [0; GENERIC_WIDTH]
    }

    fn from_coeffs(&self, coeffs: &[u8]) -> Self::Row {
        let mut r = [0u8; GENERIC_WIDTH];
        for (x, &c) in r.iter_mut().zip(coeffs) {
            *x = c % self.p;
        }
        r
    }

    fn to_coeffs(&self, row: &Self::Row) -> Vec<u8> {
        row[..self.width].to_vec()
    }

    fn lowest(&self, row: &Self::Row) -> Option<(usize, u8)> {
        row[..self.width]
            .iter()
            .position(|&c| c != 0)
            .map(|i| (i, row[i]))
    }

    fn normalize(&self, row: &mut Self::Row, lead: u8) {
        let s = self.inv[lead as usize] as u16;
        let p = self.p as u16;
        for x in row[..self.width].iter_mut() {
            *x = ((*x as u16 * s) % p) as u8;
        }
    }

    fn sub_multiple(&self, dst: &mut Self::Row, coef: u8, src: &Self::Row) {
        let p = self.p as u16;
        let c = p - coef as u16;
        for (x, &y) in dst[..self.width].iter_mut().zip(&src[..self.width]) {
            *x = ((*x as u16 + c * y as u16) % p) as u8;
        }
    }

    fn mul_z(&self, row: &mut Self::Row) {
        let w = self.width;
        let top = row[w - 1];
        for i in (1..w).rev() {
            row[i] = row[i - 1];
        }
        row[0] = 0;
        if top != 0 {
            let p = self.p as u16;
            let c = p - top as u16;
            for (x, &m) in row[..w].iter_mut().zip(&self.modulus[..w]) {
                *x = ((*x as u16 + c * m as u16) % p) as u8;
            }
        }
    }
}

/// Echelon basis indexed by pivot position (lowest nonzero entry).
#[derive(Clone, Debug)]
pub struct Echelon<R: Copy> {
    slots: Vec<R>,
    occupied: u64,
    rank: usize,
}

impl<R: Copy> Echelon<R> {
    pub fn new<K: RowKernel<Row = R>>(kernel: &K) -> Self {
        assert!(kernel.width() <= 64);
        Self { slots: vec![kernel.zero(); kernel.width()], occupied: 0, rank: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Reduces `v` against the basis; inserts it if independent. Returns
    /// whether the rank grew.
    #[inline]
    pub fn insert<K: RowKernel<Row = R>>(&mut self, kernel: &K, mut v: R) -> bool {
        while let Some((pos, c)) = kernel.lowest(&v) {
            if self.occupied >> pos & 1 == 1 {
                kernel.sub_multiple(&mut v, c, &self.slots[pos]);
            } else {
                kernel.normalize(&mut v, c);
                self.slots[pos] = v;
                self.occupied |= 1 << pos;
                self.rank += 1;
                return true;
            }
        }
        false
    }

    /// Overwrites `self` with `other` without reallocating.
    #[inline]
    pub fn reset_from(&mut self, other: &Echelon<R>) {
        self.slots.copy_from_slice(&other.slots);
        self.occupied = other.occupied;
        self.rank = other.rank;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // x^4 + x + 1 over F_2 and x^5 + 2x + 1 over F_3; mul_z only needs monic
    const M2: [u8; 5] = [1, 1, 0, 0, 1];
    const M3: [u8; 6] = [1, 2, 0, 0, 0, 1];

    fn check_against_generic<K: RowKernel>(k: &K, g: &GenericKernel, p: u8, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = k.width();
        for _ in 0..2000 {
            let a: Vec<u8> = (0..w).map(|_| rng.gen_range(0..p)).collect();
            let b: Vec<u8> = (0..w).map(|_| rng.gen_range(0..p)).collect();
            let coef = rng.gen_range(1..p);
            let (mut ra, rb) = (k.from_coeffs(&a), k.from_coeffs(&b));
            let (mut ga, gb) = (g.from_coeffs(&a), g.from_coeffs(&b));
            assert_eq!(k.to_coeffs(&ra), a);
            assert_eq!(k.lowest(&ra), g.lowest(&ga));
            k.sub_multiple(&mut ra, coef, &rb);
            g.sub_multiple(&mut ga, coef, &gb);
            assert_eq!(k.to_coeffs(&ra), g.to_coeffs(&ga));
            k.mul_z(&mut ra);
            g.mul_z(&mut ga);
            assert_eq!(k.to_coeffs(&ra), g.to_coeffs(&ga));
            if let Some((_, lead)) = k.lowest(&ra) {
                k.normalize(&mut ra, lead);
                g.normalize(&mut ga, lead);
                assert_eq!(k.to_coeffs(&ra), g.to_coeffs(&ga));
                assert_eq!(k.lowest(&ra).unwrap().1, 1);
            }
        }
    }

    #[test]
    fn gf2_matches_generic() {
        check_against_generic(&Gf2Kernel::new(&M2), &GenericKernel::new(2, &M2), 2, 1);
    }

    #[test]
    fn gf3_matches_generic() {
        check_against_generic(&Gf3Kernel::new(&M3), &GenericKernel::new(3, &M3), 3, 2);
    }

    #[test]
    fn gf3_addition_table() {
        let k = Gf3Kernel::new(&M3);
        for a in 0..3u8 {
            for b in 0..3u8 {
                let s = k.add(k.from_coeffs(&[a]), k.from_coeffs(&[b]));
                assert_eq!(k.to_coeffs(&s)[0], (a + b) % 3);
            }
        }
    }

    #[test]
    fn z_has_order_15_in_f16() {
        let k = Gf2Kernel::new(&M2);
        let one = k.from_coeffs(&[1]);
        let mut r = one;
        for i in 1..=15 {
            k.mul_z(&mut r);
            assert_eq!(r == one, i == 15);
        }
    }

    #[test]
    fn echelon_rank() {
        let k = Gf3Kernel::new(&M3);
        let mut e = Echelon::new(&k);
        assert!(e.insert(&k, k.from_coeffs(&[1, 2, 0, 0, 0])));
        assert!(e.insert(&k, k.from_coeffs(&[0, 1, 1, 0, 0])));
        // 2*(first) + (second) is dependent
        assert!(!e.insert(&k, k.from_coeffs(&[2, 2, 1, 0, 0])));
        assert!(!e.insert(&k, k.zero()));
        assert_eq!(e.rank(), 2);
    }
}
