//! Orbit-level quantities of a single-orbit cyclic code `Orb(U)`.
//!
//! Distinct orbit members are exactly `z^j U` for `0 <= j < |Orb(U)|` once the
//! stabilizer exponent is known, so the sweep never deduplicates.

mod sweep;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fqlinalg::{self, FqMatrix};
use crate::gf::FFElem;
use crate::subspace::Subspace;

/// Default cap on `|Orb(U)|` for a sweep.
pub const DEFAULT_BUDGET: u64 = 1 << 26;

/// `λ_i = |{αU ∈ Orb(U) : dim(U ∩ αU) = i}|` for `0 <= i < k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionDistribution {
    pub lambda: Vec<u64>,
    pub t: usize,
    pub orbit_size: u64,
    pub k: usize,
}

impl IntersectionDistribution {
    /// Largest `i` with `λ_i > 0`.
    pub fn max_dim(&self) -> Option<usize> {
        self.lambda.iter().rposition(|&x| x > 0)
    }

    pub fn total(&self) -> u64 {
        self.lambda.iter().sum()
    }

    /// `Σ λ_i = |Orb(U)| - 1`.
    pub fn sum_rule_holds(&self) -> bool {
        self.total() == self.orbit_size - 1
    }
}

/// Distances from `U` to the members of its orbit: `δ_0 = 1`, `δ_{2k-2i} = λ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceDistribution {
    pub k: usize,
    pub delta: BTreeMap<usize, u64>,
    /// `2k - 2l` for the maximum intersection dimension `l`; `None` when the
    /// orbit has a single member.
    pub min_distance: Option<usize>,
}

impl DistanceDistribution {
    /// Entries at positive distance.
    pub fn nontrivial(&self) -> BTreeMap<usize, u64> {
        self.delta.iter().filter(|(&d, _)| d > 0).map(|(&d, &c)| (d, c)).collect()
    }
}

pub struct SweepOptions<'a> {
    pub threads: usize,
    pub budget: u64,
    /// Called with `(done, total)` after each finished chunk.
    pub progress: Option<&'a (dyn Fn(u64, u64) + Sync)>,
}

impl Default for SweepOptions<'_> {
    fn default() -> Self {
        Self {
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            budget: DEFAULT_BUDGET,
            progress: None,
        }
    }
}

impl SweepOptions<'_> {
    pub fn single_threaded() -> Self {
        Self { threads: 1, ..Self::default() }
    }
}

pub fn intersection_distribution(u: &Subspace) -> Result<IntersectionDistribution> {
    intersection_distribution_with(u, &SweepOptions::default())
}

pub fn intersection_distribution_with(
    u: &Subspace,
    opts: &SweepOptions<'_>,
) -> Result<IntersectionDistribution> {
    let st = u.stabilizer()?;
    if st.orbit_size > opts.budget {
        return Err(Error::BudgetExceeded { required: st.orbit_size, budget: opts.budget });
    }
    let tower = u.tower();
    let k = u.dim();
    let mut generators = Vec::with_capacity(k * tower.e());
    for b in u.basis_elements() {
        for j in 0..tower.e() {
            generators.push(tower.mul(&b, &tower.embed_scalar(tower.p().pow(j as u32) as u8)));
        }
    }
    let job = sweep::SweepJob {
        tower,
        generators,
        orbit_size: st.orbit_size,
        threads: opts.threads,
        progress: opts.progress,
    };
    let hist = sweep::run(&job);
    debug_assert_eq!(hist[k], 0, "a shift inside the orbit range fixed U");
    let dist = IntersectionDistribution {
        lambda: hist[..k].to_vec(),
        t: st.t,
        orbit_size: st.orbit_size,
        k,
    };
    debug_assert!(dist.sum_rule_holds());
    Ok(dist)
}

pub fn distance_distribution(d: &IntersectionDistribution) -> DistanceDistribution {
    let k = d.k;
    let mut delta = BTreeMap::new();
    delta.insert(0, 1);
    for i in 0..k {
        delta.insert(2 * k - 2 * i, d.lambda.get(i).copied().unwrap_or(0));
    }
    DistanceDistribution { k, delta, min_distance: d.max_dim().map(|l| 2 * k - 2 * l) }
}

/// Ordered pairs `(αU, βU)` of orbit members at each distance: `|Orb(U)| · δ_d`.
pub fn pair_counts(d: &IntersectionDistribution) -> BTreeMap<usize, u128> {
    distance_distribution(d)
        .delta
        .into_iter()
        .map(|(dist, c)| (dist, c as u128 * d.orbit_size as u128))
        .collect()
}

/// `S_{α,U} = U_α ∪ ⋃_{λ ∈ F_q} U_{(α+λ)^{-1}}` with `U_β = {(β+δ)U : δ ∈ F_q}`.
#[derive(Clone, Debug)]
pub struct SClass {
    pub representative: FFElem,
    pub members: BTreeSet<Subspace>,
}

impl SClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

fn require_full_length(u: &Subspace) -> Result<()> {
    let st = u.stabilizer()?;
    if st.t != 1 {
        return Err(Error::NotFullLength { t: st.t });
    }
    Ok(())
}

pub fn s_class(alpha: &FFElem, u: &Subspace) -> Result<SClass> {
    let tower = u.tower();
    if !tower.contains(alpha) {
        return Err(Error::TowerMismatch);
    }
    if tower.degree_over(alpha, 1)? == 1 {
        return Err(Error::AlphaInBaseField);
    }
    require_full_length(u)?;
    Ok(s_class_unchecked(alpha, u))
}

fn s_class_unchecked(alpha: &FFElem, u: &Subspace) -> SClass {
    let tower = u.tower();
    let scalars: Vec<FFElem> = tower.fq().elements().map(|c| tower.embed_scalar(c)).collect();
    let mut members = BTreeSet::new();
    let add_line = |beta: &FFElem, members: &mut BTreeSet<Subspace>| {
        for s in &scalars {
            let shifted = u.shift(&tower.add(beta, s)).expect("beta + s is nonzero off F_q");
            members.insert(shifted);
        }
    };
    add_line(alpha, &mut members);
    for lam in &scalars {
        let inv = tower.inv(&tower.add(alpha, lam)).expect("alpha + lambda is nonzero");
        add_line(&inv, &mut members);
    }
    SClass { representative: alpha.clone(), members }
}

/// The orbit members `z^j U` (`1 <= j < |Orb(U)|`) with `dim(U ∩ z^j U) = i`,
/// keyed by canonical form with the exponent `j`.
pub fn orbit_level(u: &Subspace, i: usize) -> Result<BTreeMap<Subspace, u64>> {
    let st = u.stabilizer()?;
    let z = u.tower().z();
    let mut out = BTreeMap::new();
    let mut cur = u.clone();
    for j in 1..st.orbit_size {
        cur = cur.shift(&z)?;
        if u.intersection_dim(&cur)? == i {
            out.insert(cur.clone(), j);
        }
    }
    Ok(out)
}

/// Splits `O_i(U)` into S-classes, each started from the smallest uncovered
/// exponent. Classes are returned in that order.
pub fn s_partition(u: &Subspace, i: usize) -> Result<Vec<SClass>> {
    require_full_length(u)?;
    if i >= u.dim() {
        return Err(Error::InvalidParameter(format!("intersection dimension {i} >= k = {}", u.dim())));
    }
    let level = orbit_level(u, i)?;
    let mut by_exponent: Vec<(u64, Subspace)> = level.into_iter().map(|(s, j)| (j, s)).collect();
    by_exponent.sort_by_key(|(j, _)| *j);
    let mut covered: BTreeSet<Subspace> = BTreeSet::new();
    let mut classes = Vec::new();
    for (j, member) in by_exponent {
        if covered.contains(&member) {
            continue;
        }
        let class = s_class_unchecked(&u.tower().z_pow(j), u);
        covered.extend(class.members.iter().cloned());
        classes.push(class);
    }
    Ok(classes)
}

/// Shifts of `F_{q^{2t}}` contained in `U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SubfieldShifts {
    /// `dim_{F_q} W = 2tm`.
    pub m: usize,
    /// `(q^{2tm} - 1)/(q^{2t} - 1)`.
    pub count: u128,
    pub w_dim: usize,
}

/// The subspace `W = U ∩ β^{-1}U` (`β` generating `F_{q^{2t}}`), made of the
/// `x ∈ U` with `x·F_{q^{2t}} ⊆ U`.
pub fn subfield_line_span(u: &Subspace, t: usize) -> Result<Subspace> {
    let tower = u.tower();
    let n = tower.n();
    if t == 0 || n % (2 * t) != 0 {
        return Err(Error::InvalidSubfield { s: 2 * t, n });
    }
    if t > 1 && u.shift(&tower.subfield_generator(t)?)? != *u {
        return Err(Error::InvalidParameter(format!("F_{{q^{t}}} does not stabilize the subspace")));
    }
    let beta = tower.subfield_generator(2 * t)?;
    u.intersection(&u.shift(&tower.inv(&beta)?)?)
}

pub fn count_subfield_line_shifts(u: &Subspace, t: usize) -> Result<SubfieldShifts> {
    let w = subfield_line_span(u, t)?;
    let w_dim = w.dim();
    debug_assert_eq!(w_dim % (2 * t), 0);
    let m = w_dim / (2 * t);
    let step = (u.tower().q() as u128).pow(2 * t as u32);
    let count = (0..m as u32).map(|i| step.pow(i)).sum();
    Ok(SubfieldShifts { m, count, w_dim })
}

/// Orthogonal complement under `⟨x, y⟩ = Tr(xy)`.
pub fn trace_dual(u: &Subspace) -> Subspace {
    let tower = u.tower();
    let n = tower.n();
    let mut rows = Vec::with_capacity(u.dim());
    for b in u.basis_elements() {
        let mut cur = b.clone();
        let mut row = Vec::with_capacity(n);
        for _ in 0..n {
            row.push(tower.trace(&cur));
            tower.mul_z_in_place(&mut cur);
        }
        rows.push(row);
    }
    let m = FqMatrix::new(n, rows).expect("rows have length n");
    let ns = fqlinalg::nullspace(tower.fq(), &m);
    let elems: Vec<FFElem> = ns.rows().iter().map(|c| tower.from_fq_coords(c)).collect();
    Subspace::span(tower, &elems).expect("same tower")
}

/// Full-length orbit with maximum intersection dimension at most 1.
pub fn is_sidon(u: &Subspace) -> Result<bool> {
    is_sidon_with(u, &SweepOptions::default())
}

pub fn is_sidon_with(u: &Subspace, opts: &SweepOptions<'_>) -> Result<bool> {
    if u.dim() == 0 {
        return Ok(false);
    }
    let d = intersection_distribution_with(u, opts)?;
    Ok(d.t == 1 && d.max_dim().is_none_or(|l| l <= 1))
}
