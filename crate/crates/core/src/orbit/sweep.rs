//! The streaming sweep over `z^j U`, `1 <= j < |Orb(U)|`.
//!
//! Work happens over the prime field: an `F_q`-subspace of dimension `k` is an
//! `F_p`-subspace of dimension `e·k`, and `dim_{F_q}(U ∩ αU) = dim_{F_p}(U ∩ αU) / e`.
//! The `e·k` prime-level generators `w^j b_i` of `z^j U` are advanced by one
//! multiplication by `z` per step, reduced against a fixed echelon basis of
//! `U`, and the rank increase gives `dim(U + z^j U)`.
//!
//! The exponent range is cut into fixed-size chunks that workers claim from an
//! atomic counter. Each chunk starts from `z^start · U` and produces a
//! histogram; histograms are summed, so the result does not depend on the
//! number of workers or on scheduling.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::fqlinalg::packed::{Echelon, Gf2Kernel, Gf3Kernel, GenericKernel, RowKernel};
use crate::gf::{FFElem, FieldTower};

const CHUNK: u64 = 1 << 15;

pub(crate) struct SweepJob<'a> {
    pub tower: &'a FieldTower,
    /// `F_p`-basis of `U` as field elements.
    pub generators: Vec<FFElem>,
    pub orbit_size: u64,
    pub threads: usize,
    pub progress: Option<&'a (dyn Fn(u64, u64) + Sync)>,
}

/// Histogram of `dim_{F_q}(U ∩ z^j U)` over `1 <= j < orbit_size`, indexed `0..=k`.
pub(crate) fn run(job: &SweepJob<'_>) -> Vec<u64> {
    let t = job.tower;
    match t.p() {
        2 => sweep(job, &Gf2Kernel::new(t.modulus())),
        3 => sweep(job, &Gf3Kernel::new(t.modulus())),
        p => sweep(job, &GenericKernel::new(p, t.modulus())),
    }
}

fn sweep<K: RowKernel>(job: &SweepJob<'_>, kernel: &K) -> Vec<u64> {
    let tower = job.tower;
    let e = tower.e();
    let kp = job.generators.len();
    let k = kp / e;

    let mut base = Echelon::new(kernel);
    for g in &job.generators {
        base.insert(kernel, kernel.from_coeffs(g.coeffs()));
    }
    assert_eq!(base.rank(), kp, "generators must be independent over F_p");

    let total = job.orbit_size.saturating_sub(1);
    let chunks = total.div_ceil(CHUNK);
    let next = AtomicU64::new(0);
    let done = AtomicU64::new(0);
    let merged = Mutex::new(vec![0u64; k + 1]);

    let worker = || {
        let mut hist = vec![0u64; k + 1];
        let mut ech = base.clone();
        loop {
            let c = next.fetch_add(1, Ordering::Relaxed);
            if c >= chunks {
                break;
            }
            let start = 1 + c * CHUNK;
            let end = (start + CHUNK).min(job.orbit_size);
            let shift = tower.z_pow(start);
            let mut rows: Vec<K::Row> = job
                .generators
                .iter()
                .map(|g| kernel.from_coeffs(tower.mul(&shift, g).coeffs()))
                .collect();
            for _ in start..end {
                ech.reset_from(&base);
                let mut added = 0;
                for r in &rows {
                    if ech.insert(kernel, *r) {
                        added += 1;
                    }
                }
                hist[(kp - added) / e] += 1;
                for r in rows.iter_mut() {
                    kernel.mul_z(r);
                }
            }
            let finished = done.fetch_add(end - start, Ordering::Relaxed) + (end - start);
            if let Some(report) = job.progress {
                report(finished, total);
            }
        }
        let mut m = merged.lock().expect("histogram lock");
        for (acc, h) in m.iter_mut().zip(&hist) {
            *acc += h;
        }
    };

    let workers = job.threads.max(1).min(chunks.max(1) as usize);
    if workers == 1 {
        worker();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(&worker);
            }
        });
    }
    merged.into_inner().expect("histogram lock")
}
