//! Executable versions of the divisibility and structure results for `λ`,
//! each run over seeded random subspaces, plus brute-force oracles.
//!
//! Every check is hypothesis-faithful: samples are drawn so that they satisfy
//! the statement's hypotheses, and a check whose hypotheses the configuration
//! cannot meet reports `applicable: false` instead of passing vacuously.

pub mod oracle;
pub mod sampling;

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{ConwayTable, FFElem, FieldTower};
use crate::orbit::{
    count_subfield_line_shifts, distance_distribution, intersection_distribution_with, is_sidon_with,
    s_class, s_partition, trace_dual, IntersectionDistribution, SweepOptions,
};
use crate::subspace::{format_element, Subspace};

pub use oracle::{gaussian_binomial, grassmannian, oracle_intersection_distribution, sidon_by_definition};

/// Every check name accepted by [`check`].
pub const CHECKS: [&str; 22] = [
    "lemma_2_1",
    "lemma_3_1",
    "prop_3_1",
    "thm_3_2",
    "thm_3_3",
    "cor_2q",
    "lemma_3_4",
    "lemma_3_5",
    "lemma_3_7",
    "thm_3_7",
    "lemma_3_8",
    "thm_3_9",
    "cor_even_dim",
    "thm_3_11",
    "lemma_7",
    "thm_3_12",
    "thm_3_13",
    "thm_3_14",
    "sum_rule",
    "oracle_equivalence",
    "dual_distance",
    "sidon_equivalence",
];

/// Random field elements tried per sampled subspace.
const ALPHAS: usize = 20;
/// `O_i` is partitioned explicitly only for orbits up to this size.
const PARTITION_LIMIT: u64 = 5_000;
/// Largest `|U|` for the element-by-element shift count.
const LINE_COUNT_LIMIT: u64 = 1 << 16;
/// `lemma_3_8` scans every element up to this field size, then samples.
const SCAN_LIMIT: u64 = 1 << 16;
/// `sidon_equivalence` enumerates the whole Grassmannian up to this size.
const SIDON_EXHAUSTIVE: u64 = 2_000;
const MAX_WITNESSES: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckConfig {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    /// Stabilizer exponent of the sampled subspaces; 1 means full-length.
    pub t: usize,
    pub samples: usize,
    pub seed: u64,
}

impl CheckConfig {
    /// Full-length samples, 20 of them, seed 1.
    pub fn new(q: u32, n: usize, k: usize) -> Self {
        Self { q, n, k, t: 1, samples: 20, seed: 1 }
    }

    pub fn with_t(mut self, t: usize) -> Self {
        self.t = t;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub config: CheckConfig,
    /// `witnesses.is_empty()`.
    pub passed: bool,
    /// False when the configuration cannot satisfy the statement's hypotheses
    /// or no sampled instance did.
    pub applicable: bool,
    /// Number of individual instances checked.
    pub cases: u64,
    pub hypotheses: Vec<String>,
    pub notes: Vec<String>,
    pub witnesses: Vec<String>,
    /// Quotients such as `λ_i / q(q+1)`, or `r` and `s_i`, as asserted integral.
    pub observed_multipliers: Vec<u64>,
}

/// Runs `name` in the Conway tower for `(config.q, config.n)`.
pub fn check(name: &str, config: &CheckConfig) -> Result<CheckReport> {
    let tower = FieldTower::conway(config.q, config.n, &ConwayTable::bundled())?;
    check_in(name, &tower, config)
}

/// Runs `name` in a given tower; `config.q` and `config.n` must match it.
pub fn check_in(name: &str, tower: &Arc<FieldTower>, config: &CheckConfig) -> Result<CheckReport> {
    let body = dispatch(name)?;
    if tower.q() != config.q || tower.n() != config.n {
        return Err(Error::InvalidParameter(format!(
            "config is for q = {}, n = {} but the tower is q = {}, n = {}",
            config.q,
            config.n,
            tower.q(),
            tower.n()
        )));
    }
    let (n, k, t) = (config.n, config.k, config.t);
    if k == 0 || k > n || t == 0 || n % t != 0 || k % t != 0 {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k <= n with t | k and t | n (k = {k}, n = {n}, t = {t})"
        )));
    }
    let mut run = Run {
        tower: Arc::clone(tower),
        cfg: config.clone(),
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        report: CheckReport {
            check_name: name.to_string(),
            config: config.clone(),
            passed: true,
            applicable: true,
            cases: 0,
            hypotheses: Vec::new(),
            notes: Vec::new(),
            witnesses: Vec::new(),
            observed_multipliers: Vec::new(),
        },
        failures: 0,
    };
    body(&mut run)?;
    Ok(run.finish())
}

/// The default configurations run by `verify --all` for one check.
pub fn default_configs(name: &str) -> Result<Vec<CheckConfig>> {
    dispatch(name)?;
    let odd = grid(&[(2, 5), (2, 7), (3, 5), (3, 7), (4, 5), (5, 5)], &[2, 3]);
    let even = grid(&[(2, 6), (2, 8), (3, 6), (3, 8), (4, 6)], &[3, 4]);
    let degenerate: Vec<CheckConfig> = [(2, 8, 2), (2, 12, 2), (3, 8, 2), (2, 12, 3)]
        .iter()
        .flat_map(|&(q, n, t)| [2 * t, 3 * t].map(|k| CheckConfig::new(q, n, k).with_t(t)))
        .collect();
    let both = || odd.iter().chain(&even).cloned().collect::<Vec<_>>();
    Ok(match name {
        "thm_3_2" | "cor_2q" | "thm_3_7" => odd,
        "thm_3_9" | "cor_even_dim" | "thm_3_11" | "lemma_7" | "thm_3_12" | "thm_3_13" => even,
        "thm_3_14" => degenerate,
        "sum_rule" => both().into_iter().chain(degenerate).collect(),
        "oracle_equivalence" => [(2, 6, 3), (2, 8, 3), (2, 10, 4), (3, 4, 2), (3, 5, 2), (4, 4, 2), (5, 5, 2)]
            .iter()
            .map(|&(q, n, k)| CheckConfig::new(q, n, k))
            .collect(),
        "dual_distance" => [2, 3].map(|k| CheckConfig::new(2, 6, k).with_samples(30)).to_vec(),
        "sidon_equivalence" => [(2, 4), (2, 6), (3, 4)].map(|(q, n)| CheckConfig::new(q, n, 2)).to_vec(),
        _ => both(),
    })
}

/// Every check at every default configuration.
pub fn run_all() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for name in CHECKS {
        for cfg in default_configs(name)? {
            out.push(check(name, &cfg)?);
        }
    }
    Ok(out)
}

/// Every congruence the stabilizer exponent `t` and the number of
/// `F_{q^{2t}}` shifts in `U` force on `λ`, checked against `d`. Returns one
/// message per violation.
///
/// With `Q = q^t`: `λ_i = 0` unless `t | i`; if `n/t` is odd every `λ_i` is a
/// multiple of `Q(Q+1)`; otherwise `λ_{2tm} ≡ Q` and the rest are multiples.
pub fn divisibility_violations(u: &Subspace, d: &IntersectionDistribution) -> Result<Vec<String>> {
    let tower = u.tower();
    let t = d.t;
    let qt = (tower.q() as u64).pow(t as u32);
    let m = qt * (qt + 1);
    let mut out = Vec::new();
    for (i, &l) in d.lambda.iter().enumerate() {
        if i % t != 0 && l != 0 {
            out.push(format!("λ_{i} = {l} but t = {t} does not divide {i}"));
        }
    }
    let special = if (tower.n() / t) % 2 == 1 {
        None
    } else {
        Some(2 * t * count_subfield_line_shifts(u, t)?.m)
    };
    if let Some(level) = special {
        match d.lambda.get(level) {
            Some(&l) if l >= qt && (l - qt) % m == 0 => {}
            Some(&l) => out.push(format!("λ_{level} = {l} is not {qt} + r·{m}")),
            None => out.push(format!("U has {level}-dimensional F_{{q^{}}} structure but k = {}", 2 * t, d.k)),
        }
    }
    for (i, &l) in d.lambda.iter().enumerate() {
        if Some(i) != special && l % m != 0 {
            out.push(format!("λ_{i} = {l} is not a multiple of {m}"));
        }
    }
    Ok(out)
}

fn grid(fields: &[(u32, usize)], dims: &[usize]) -> Vec<CheckConfig> {
    fields
        .iter()
        .flat_map(|&(q, n)| dims.iter().map(move |&k| CheckConfig::new(q, n, k)))
        .collect()
}

type Body = fn(&mut Run) -> Result<()>;

fn dispatch(name: &str) -> Result<Body> {
    Ok(match name {
        "lemma_2_1" => lemma_2_1,
        "lemma_3_1" => lemma_3_1,
        "prop_3_1" => prop_3_1,
        "thm_3_2" => thm_3_2,
        "thm_3_3" => thm_3_3,
        "cor_2q" => cor_2q,
        "lemma_3_4" => lemma_3_4,
        "lemma_3_5" => lemma_3_5,
        "lemma_3_7" => lemma_3_7,
        "thm_3_7" => thm_3_7,
        "lemma_3_8" => lemma_3_8,
        "thm_3_9" => thm_3_9,
        "cor_even_dim" => cor_even_dim,
        "thm_3_11" => thm_3_11,
        "lemma_7" => lemma_7,
        "thm_3_12" => thm_3_12,
        "thm_3_13" => thm_3_13,
        "thm_3_14" => thm_3_14,
        "sum_rule" => sum_rule,
        "oracle_equivalence" => oracle_equivalence,
        "dual_distance" => dual_distance,
        "sidon_equivalence" => sidon_equivalence,
        other => return Err(Error::UnknownCheck(other.to_string())),
    })
}

struct Run {
    tower: Arc<FieldTower>,
    cfg: CheckConfig,
    rng: ChaCha8Rng,
    report: CheckReport,
    failures: usize,
}

impl Run {
    fn hypothesis(&mut self, h: &str) {
        self.report.hypotheses.push(h.to_string());
    }

    fn note(&mut self, s: String) {
        self.report.notes.push(s);
    }

    fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.report.cases += 1;
        if !ok {
            self.failures += 1;
            if self.report.witnesses.len() < MAX_WITNESSES {
                self.report.witnesses.push(witness());
            }
        }
    }

    fn inapplicable(&mut self, why: &str) {
        self.report.applicable = false;
        self.note(format!("not applicable: {why}"));
    }

    /// Marks the report inapplicable unless the samples are full-length.
    fn needs_full_length(&mut self) -> bool {
        self.hypothesis("U generates a full-length orbit (t = 1)");
        if self.cfg.t != 1 {
            self.inapplicable("the statement assumes a full-length orbit but t > 1 was requested");
            return false;
        }
        true
    }

    fn needs_even_n(&mut self) -> bool {
        self.hypothesis("n is even");
        if self.cfg.n % 2 != 0 {
            self.inapplicable("n is odd");
            return false;
        }
        true
    }

    fn needs_odd_n(&mut self) -> bool {
        self.hypothesis("n is odd");
        if self.cfg.n % 2 == 0 {
            self.inapplicable("n is even");
            return false;
        }
        true
    }

    /// Sample `i`. Odd-numbered samples contain shifts of `F_{q^{2t}}` when
    /// the shape allows it, so the structured cases get exercised.
    fn sample(&mut self, i: usize) -> Result<Subspace> {
        let (n, k, t) = (self.cfg.n, self.cfg.k, self.cfg.t);
        let max_m = if n % (2 * t) == 0 { (k / t - 1) / 2 } else { 0 };
        if i % 2 == 1 && max_m >= 1 {
            let m = self.rng.gen_range(1..=max_m);
            sampling::sample_with_subfield_lines(&self.tower, k, t, m, &mut self.rng)
        } else {
            sampling::sample_with_stabilizer(&self.tower, k, t, &mut self.rng)
        }
    }

    fn samples(&mut self) -> Result<Vec<Subspace>> {
        (0..self.cfg.samples).map(|i| self.sample(i)).collect()
    }

    fn outside_base(&mut self) -> Result<FFElem> {
        sampling::random_outside_base(&self.tower, &mut self.rng)
    }

    fn quadratic(&mut self) -> Result<FFElem> {
        sampling::random_quadratic(&self.tower, &mut self.rng)
    }

    fn scalars(&self) -> Vec<FFElem> {
        self.tower.fq().elements().map(|c| self.tower.embed_scalar(c)).collect()
    }

    fn finish(mut self) -> CheckReport {
        if self.report.applicable && self.report.cases == 0 {
            self.inapplicable("no sampled instance met the hypotheses");
        }
        if self.failures > self.report.witnesses.len() {
            let extra = self.failures - self.report.witnesses.len();
            self.report.witnesses.push(format!("... and {extra} more"));
        }
        self.report.passed = self.report.witnesses.is_empty();
        self.report
    }
}

fn dist(u: &Subspace) -> Result<IntersectionDistribution> {
    intersection_distribution_with(u, &SweepOptions::single_threaded())
}

fn show(a: &FFElem) -> String {
    format_element(a)
}

fn lambda_str(d: &IntersectionDistribution) -> String {
    format!("{:?}", d.lambda)
}

/// Checks `λ_i ≡ 0 (mod m)` for the indices selected by `which`.
fn divisible(run: &mut Run, u: &Subspace, d: &IntersectionDistribution, m: u64, which: impl Fn(usize) -> bool) {
    for (i, &l) in d.lambda.iter().enumerate() {
        if !which(i) {
            continue;
        }
        run.case(l % m == 0, || format!("λ_{i} = {l} is not a multiple of {m}; λ = {}; U = {}", lambda_str(d), u.to_dsl()));
        if l % m == 0 && l > 0 {
            run.report.observed_multipliers.push(l / m);
        }
    }
}

fn sum_rule(run: &mut Run) -> Result<()> {
    run.hypothesis("U has stabilizer exponent t");
    let (q, n, t) = (run.cfg.q as u64, run.cfg.n as u32, run.cfg.t as u32);
    let expected = (q.pow(n) - 1) / (q.pow(t) - 1);
    for u in run.samples()? {
        let d = dist(&u)?;
        run.case(d.orbit_size == expected && d.total() == expected - 1, || {
            format!("orbit size {}, Σλ = {} for U = {}", d.orbit_size, d.total(), u.to_dsl())
        });
    }
    Ok(())
}

fn lemma_2_1(run: &mut Run) -> Result<()> {
    run.hypothesis("α is any nonzero element");
    let tower = Arc::clone(&run.tower);
    for u in run.samples()? {
        for _ in 0..200 {
            let a = sampling::random_nonzero(&tower, &mut run.rng);
            let ai = tower.inv(&a)?;
            let (d1, d2) = (u.intersection_dim(&u.shift(&a)?)?, u.intersection_dim(&u.shift(&ai)?)?);
            run.case(d1 == d2, || format!("dim(U∩αU) = {d1} ≠ {d2} = dim(U∩α⁻¹U), α = {}, U = {}", show(&a), u.to_dsl()));
        }
    }
    Ok(())
}

fn lemma_3_1(run: &mut Run) -> Result<()> {
    if !run.needs_full_length() {
        return Ok(());
    }
    run.hypothesis("α ∉ F_q, s ∈ F_q");
    let tower = Arc::clone(&run.tower);
    let scalars = run.scalars();
    for u in run.samples()? {
        for _ in 0..ALPHAS {
            let a = run.outside_base()?;
            let base = u.intersection_dim(&u.shift(&a)?)?;
            for s in &scalars {
                let d = u.intersection_dim(&u.shift(&tower.add(&a, s))?)?;
                run.case(d == base, || {
                    format!("dim(U∩(α+s)U) = {d} ≠ {base}, α = {}, s = {}, U = {}", show(&a), show(s), u.to_dsl())
                });
            }
        }
    }
    Ok(())
}

fn prop_3_1(run: &mut Run) -> Result<()> {
    if !run.needs_full_length() {
        return Ok(());
    }
    run.hypothesis("α ∉ F_q; s ranges over all of F_q");
    let tower = Arc::clone(&run.tower);
    let scalars = run.scalars();
    let q = run.cfg.q as usize;
    for u in run.samples()? {
        for _ in 0..ALPHAS {
            let a = run.outside_base()?;
            let line: BTreeSet<Subspace> =
                scalars.iter().map(|s| u.shift(&tower.add(&a, s))).collect::<Result<_>>()?;
            run.case(line.len() == q, || {
                format!("|{{(α+s)U}}| = {} ≠ {q}, α = {}, U = {}", line.len(), show(&a), u.to_dsl())
            });
        }
    }
    Ok(())
}

fn thm_3_2(run: &mut Run) -> Result<()> {
    if !run.needs_full_length() {
        return Ok(());
    }
    let q = run.cfg.q as u64;
    for u in run.samples()? {
        let d = dist(&u)?;
        divisible(run, &u, &d, q, |_| true);
    }
    Ok(())
}

fn thm_3_3(run: &mut Run) -> Result<()> {
    if !run.needs_full_length() {
        return Ok(());
    }
    run.hypothesis("n is odd or q is even; β ∉ F_q");
    if run.cfg.n % 2 == 0 && run.cfg.q % 2 == 1 {
        run.inapplicable("n is even and q is odd");
        return Ok(());
    }
    let tower = Arc::clone(&run.tower);
    for u in run.samples()? {
        for _ in 0..ALPHAS {
            let b = run.outside_base()?;
            let (v, w) = (u.shift(&b)?, u.shift(&tower.inv(&b)?)?);
            run.case(v != w, || format!("βU = β⁻¹U for β = {}, U = {}", show(&b), u.to_dsl()));
        }
    }
    Ok(())
}

fn cor_2q(run: &mut Run) -> Result<()> {
    if !run.needs_full_length() || !run.needs_odd_n() {
        return Ok(());
    }
    run.hypothesis("q is odd");
    if run.cfg.q % 2 == 0 {
        run.inapplicable("q is even");
        return Ok(());
    }
    let m = 2 * run.cfg.q as u64;
    for u in run.samples()? {
        let d = dist(&u)?;
        divisible(run, &u, &d, m, |_| true);
    }
    Ok(())
}

/// Checks that every member `V` of an S-class has `dim(U ∩ V) = dim(U ∩ αU)`.
fn class_dims_agree(run: &mut Run, u: &Subspace, alpha: &FFElem, members: &BTreeSet<Subspace>) -> Result<()> {
    let base = u.intersection_dim(&u.shift(alpha)?)?;
    let bad = members.iter().map(|v| u.intersection_dim(v)).collect::<Result<Vec<_>>>()?;
    let bad = bad.into_iter().filter(|&d| d != base).count();
    run.case(bad == 0, || {
        format!("{bad} members of S_(α,U) differ from dim(U∩αU) = {base}; α = {}, U = {}", show(alpha), u.to_dsl())
    });
    Ok(())
}

fn lemma_3_4(run: &mut Run) -> Result<()> {
    if !run.needs_full_length() {
        return Ok(());
    }
    run.hypothesis("α, β ∉ F_q; β is either random or taken from S_(α,U)");
    let tower = Arc::clone(&run.tower);
    let q = run.cfg.q;
    for u in run.samples()? {
        for j in 0..ALPHAS / 2 {
            let a = run.outside_base()?;
            let b = if j % 2 == 0 {
                run.outside_base()?
            } else {
                // c · ((α + λ)^{-1} + δ), a shift that lies in S_(α,U).
                let lam = tower.embed_scalar(run.rng.gen_range(0..q) as u8);
                let delta = tower.embed_scalar(run.rng.gen_range(0..q) as u8);
                let c = run.rng.gen_range(1..q) as u8;
                tower.scale(&tower.add(&tower.inv(&tower.add(&a, &lam))?, &delta), c)
            };
            let (sa, sb) = (s_class(&a, &u)?, s_class(&b, &u)?);
            let identical = sa.members == sb.members;
            let disjoint = sa.members.is_disjoint(&sb.members);
            run.case(identical || disjoint, || {
                format!("S_(α,U), S_(β,U) overlap partially; α = {}, β = {}, U = {}", show(&a), show(&b), u.to_dsl())
            });
        }
        let st = u.stabilizer()?;
        if st.orbit_size > PARTITION_LIMIT {
            continue;
        }
        // Partition the deepest nonempty level and check it tiles O_i exactly.
        let d = dist(&u)?;
        let Some(i) = d.max_dim() else { continue };
        let classes = s_partition(&u, i)?;
        let mut union = BTreeSet::new();
        let mut sum = 0;
        for c in &classes {
            sum += c.size();
            union.extend(c.members.iter().cloned());
        }
        let q = q as usize;
        let sizes_ok = classes.iter().all(|c| c.size() == q || c.size() == q * (q + 1));
        run.case(union.len() == sum && sum as u64 == d.lambda[i] && sizes_ok, || {
            format!(
                "S-partition of O_{i} not a tiling: class sizes {:?}, λ_{i} = {}, U = {}",
                classes.iter().map(|c| c.size()).collect::<Vec<_>>(),
                d.lambda[i],
                u.to_dsl()
            )
        });
    }
    Ok(())
}

fn lemma_3_5(run: &mut Run) -> Result<()> {
    if !run.needs_full_length() {
        return Ok(());
    }
    run.hypothesis("α ∉ F_q and deg_{F_q}(α) ≠ 2");
    let tower = Arc::clone(&run.tower);
    let q = run.cfg.q as usize;
    for u in run.samples()? {
        for _ in 0..ALPHAS / 2 {
            let a = run.outside_base()?;
            if tower.degree_over(&a, 1)? == 2 {
                continue;
            }
            let class = s_class(&a, &u)?;
            run.case(class.size() == q * (q + 1), || {
                format!("|S_(α,U)| = {} ≠ q(q+1); α = {}, U = {}", class.size(), show(&a), u.to_dsl())
            });
            class_dims_agree(run, &u, &a, &class.members)?;
        }
    }
    Ok(())
}

fn lemma_3_7(run: &mut Run) -> Result<()> {
    if !run.needs_full_length() {
        return Ok(());
    }
    run.hypothesis("deg_{F_q}(α) = 2 (such α exist only for even n)");
    if run.cfg.n % 2 != 0 {
        run.inapplicable("n is odd, so no element has degree 2");
        return Ok(());
    }
    let q = run.cfg.q as usize;
    for u in run.samples()? {
        for _ in 0..ALPHAS / 2 {
            let a = run.quadratic()?;
            let class = s_class(&a, &u)?;
            run.case(class.size() == q, || {
                format!("|S_(α,U)| = {} ≠ q; α = {}, U = {}", class.size(), show(&a), u.to_dsl())
            });
            class_dims_agree(run, &u, &a, &class.members)?;
        }
    }
    Ok(())
}

fn thm_3_7(run: &mut Run) -> Result<()> {
    if !run.needs_full_length() || !run.needs_odd_n() {
        return Ok(());
    }
    let q = run.cfg.q as u64;
    for u in run.samples()? {
        let d = dist(&u)?;
        divisible(run, &u, &d, q * (q + 1), |_| true);
    }
    Ok(())
}

fn lemma_3_8(run: &mut Run) -> Result<()> {
    run.hypothesis("none; for odd n the degree-2 set must be empty");
    let tower = Arc::clone(&run.tower);
    let even = tower.n() % 2 == 0;
    let check_one = |run: &mut Run, a: &FFElem| -> Result<bool> {
        let deg2 = !a.is_zero() && tower.degree_over(a, 1)? == 2;
        let in_q2 = even && tower.in_subfield(a, 2)? && !tower.in_subfield(a, 1)?;
        run.case(deg2 == in_q2, || format!("{}: degree 2 is {deg2}, in F_q²∖F_q is {in_q2}", show(a)));
        Ok(deg2)
    };
    if tower.size() <= SCAN_LIMIT {
        let mut count = 0u64;
        for a in tower.all_elements() {
            count += check_one(run, &a)? as u64;
        }
        let q = tower.q() as u64;
        let expected = if even { q * q - q } else { 0 };
        run.case(count == expected, || format!("{count} elements of degree 2, expected {expected}"));
        run.note(format!("exhaustive over all {} elements; {count} of degree 2", tower.size()));
    } else {
        for _ in 0..run.cfg.samples * 100 {
            let a = sampling::random_element(&tower, &mut run.rng);
            check_one(run, &a)?;
        }
        for _ in 0..run.cfg.samples {
            if even {
                let a = run.quadratic()?;
                check_one(run, &a)?;
            }
        }
    }
    Ok(())
}

fn thm_3_9(run: &mut Run) -> Result<()> {
    if !run.needs_even_n() {
        return Ok(());
    }
    run.hypothesis("deg_{F_q}(α) = 2, α ∉ Stab(U), V = U ∩ αU ≠ 0");
    let tower = Arc::clone(&run.tower);
    let gamma = tower.subfield_generator(2)?;
    for u in run.samples()? {
        for _ in 0..ALPHAS / 2 {
            let a = run.quadratic()?;
            if u.shift(&a)? == u {
                continue;
            }
            let v = u.intersection(&u.shift(&a)?)?;
            if v.dim() == 0 {
                continue;
            }
            run.case(v.shift(&gamma)? == v, || {
                format!("F_q² does not stabilize U∩αU (dim {}); α = {}, U = {}", v.dim(), show(&a), u.to_dsl())
            });
        }
    }
    Ok(())
}

fn cor_even_dim(run: &mut Run) -> Result<()> {
    if !run.needs_full_length() || !run.needs_even_n() {
        return Ok(());
    }
    run.hypothesis("deg_{F_q}(β) = 2");
    for u in run.samples()? {
        for _ in 0..ALPHAS / 2 {
            let b = run.quadratic()?;
            let d = u.intersection_dim(&u.shift(&b)?)?;
            run.case(d % 2 == 0, || format!("dim(U∩βU) = {d} is odd; β = {}, U = {}", show(&b), u.to_dsl()));
        }
    }
    Ok(())
}

fn thm_3_11(run: &mut Run) -> Result<()> {
    if !run.needs_full_length() || !run.needs_even_n() {
        return Ok(());
    }
    run.hypothesis("i odd");
    let q = run.cfg.q as u64;
    for u in run.samples()? {
        let d = dist(&u)?;
        divisible(run, &u, &d, q * (q + 1), |i| i % 2 == 1);
    }
    Ok(())
}

fn lemma_7(run: &mut Run) -> Result<()> {
    if !run.needs_even_n() {
        return Ok(());
    }
    run.hypothesis("any U; shifts of F_q² counted element by element");
    let tower = Arc::clone(&run.tower);
    let gamma = tower.subfield_generator(2)?;
    let q2 = (tower.q() as u64).pow(2);
    for u in run.samples()? {
        if (tower.q() as u64).saturating_pow(u.dim() as u32) > LINE_COUNT_LIMIT {
            continue;
        }
        // x·F_q² = span(x, γx), so the line lies in U iff γx does.
        let on_lines: Vec<FFElem> = u
            .elements()
            .into_iter()
            .filter(|x| !x.is_zero() && u.contains(&tower.mul(&gamma, x)))
            .collect();
        let lines = on_lines.len() as u64 / (q2 - 1);
        let w = Subspace::span(&tower, &on_lines)?;
        let got = count_subfield_line_shifts(&u, 1)?;
        run.case(got.count == lines as u128 && got.w_dim == w.dim() && w.dim() == 2 * got.m, || {
            format!(
                "brute force: {lines} lines spanning dim {}, computed: count {} with dim W = {}; U = {}",
                w.dim(),
                got.count,
                got.w_dim,
                u.to_dsl()
            )
        });
    }
    Ok(())
}

fn thm_3_12(run: &mut Run) -> Result<()> {
    if !run.needs_full_length() || !run.needs_even_n() {
        return Ok(());
    }
    run.hypothesis("deg_{F_q}(α) = 2");
    for u in run.samples()? {
        let m = count_subfield_line_shifts(&u, 1)?.m;
        for _ in 0..ALPHAS / 2 {
            let a = run.quadratic()?;
            let d = u.intersection_dim(&u.shift(&a)?)?;
            run.case(d == 2 * m, || format!("dim(U∩αU) = {d} ≠ 2m = {}; α = {}, U = {}", 2 * m, show(&a), u.to_dsl()));
        }
    }
    Ok(())
}

/// `λ_{2tm} ≡ q^t` and every other `λ_i ≡ 0 (mod q^t(q^t+1))`; records `r`
/// (or `s`) first, then the other quotients.
fn special_level(run: &mut Run, u: &Subspace, d: &IntersectionDistribution, qt: u64, level: usize) {
    let m = qt * (qt + 1);
    let l = d.lambda.get(level).copied().unwrap_or(0);
    let ok = l >= qt && (l - qt) % m == 0;
    run.case(ok, || {
        format!("λ_{level} = {l} is not q^t + r·{m} (q^t = {qt}); λ = {}; U = {}", lambda_str(d), u.to_dsl())
    });
    if ok {
        run.report.observed_multipliers.push((l - qt) / m);
    }
    divisible(run, u, d, m, |i| i != level);
}

fn thm_3_13(run: &mut Run) -> Result<()> {
    if !run.needs_full_length() || !run.needs_even_n() {
        return Ok(());
    }
    run.hypothesis("U contains (q^{2m}-1)/(q²-1) shifts of F_q²");
    let q = run.cfg.q as u64;
    for u in run.samples()? {
        let m = count_subfield_line_shifts(&u, 1)?.m;
        let d = dist(&u)?;
        special_level(run, &u, &d, q, 2 * m);
    }
    Ok(())
}

fn thm_3_14(run: &mut Run) -> Result<()> {
    run.hypothesis("Stab(U) = F_{q^t}^* with t > 1");
    let t = run.cfg.t;
    if t == 1 {
        run.inapplicable("t = 1 is the full-length case");
        return Ok(());
    }
    let n_over_t = run.cfg.n / t;
    run.hypothesis(if n_over_t % 2 == 1 { "n/t odd" } else { "n/t even" });
    let qt = (run.cfg.q as u64).pow(t as u32);
    for u in run.samples()? {
        let d = dist(&u)?;
        for (i, &l) in d.lambda.iter().enumerate() {
            if i % t != 0 {
                run.case(l == 0, || format!("λ_{i} = {l} although t = {t} ∤ {i}; U = {}", u.to_dsl()));
            }
        }
        if n_over_t % 2 == 1 {
            divisible(run, &u, &d, qt * (qt + 1), |_| true);
        } else {
            let m = count_subfield_line_shifts(&u, t)?.m;
            special_level(run, &u, &d, qt, 2 * t * m);
        }
    }
    Ok(())
}

fn oracle_equivalence(run: &mut Run) -> Result<()> {
    run.hypothesis("q^n <= 4096");
    if run.tower.size() > oracle::ORACLE_LIMIT {
        run.inapplicable("q^n exceeds the oracle limit");
        return Ok(());
    }
    for u in run.samples()? {
        let (fast, slow) = (dist(&u)?, oracle_intersection_distribution(&u)?);
        run.case(fast == slow, || {
            format!("sweep {:?} (t = {}) vs oracle {:?} (t = {}); U = {}", fast.lambda, fast.t, slow.lambda, slow.t, u.to_dsl())
        });
    }
    Ok(())
}

fn dual_distance(run: &mut Run) -> Result<()> {
    run.hypothesis("k < n; dual taken under Tr(xy)");
    if run.cfg.k == run.cfg.n {
        run.inapplicable("the dual of the whole field is zero");
        return Ok(());
    }
    let tower = Arc::clone(&run.tower);
    for u in run.samples()? {
        let dual = trace_dual(&u);
        let orthogonal = u
            .basis_elements()
            .iter()
            .all(|x| dual.basis_elements().iter().all(|y| tower.trace(&tower.mul(x, y)) == 0));
        run.case(dual.dim() == tower.n() - u.dim() && orthogonal && trace_dual(&dual) == u, || {
            format!("trace dual of U = {} is wrong (dim {})", u.to_dsl(), dual.dim())
        });
        let nonzero = |d: &IntersectionDistribution| -> Vec<(usize, u64)> {
            distance_distribution(d).nontrivial().into_iter().filter(|&(_, c)| c > 0).collect()
        };
        let (a, b) = (dist(&u)?, dist(&dual)?);
        run.case(nonzero(&a) == nonzero(&b), || {
            format!("δ(Orb U) = {:?} but δ(Orb U^⊥) = {:?}; U = {}", nonzero(&a), nonzero(&b), u.to_dsl())
        });
    }
    Ok(())
}

fn sidon_equivalence(run: &mut Run) -> Result<()> {
    run.hypothesis("1 <= k <= n/2 and q^k <= 1024");
    let (q, n, k) = (run.cfg.q, run.cfg.n, run.cfg.k);
    if 2 * k > n || (q as u64).saturating_pow(k as u32) > oracle::SIDON_LIMIT {
        run.inapplicable("k > n/2 or U too large for the definitional check");
        return Ok(());
    }
    let tower = Arc::clone(&run.tower);
    let total = gaussian_binomial(n as u32, k as u32, q);
    let subspaces = if total <= SIDON_EXHAUSTIVE.into() {
        run.note(format!("exhaustive over all {total} subspaces of dimension {k}"));
        grassmannian(&tower, k)?
    } else {
        (0..run.cfg.samples)
            .map(|_| sampling::random_subspace(&tower, k, &mut run.rng))
            .collect::<Result<_>>()?
    };
    let mut sidon = 0;
    for u in &subspaces {
        let by_def = sidon_by_definition(u)?;
        let by_dist = is_sidon_with(u, &SweepOptions::single_threaded())?;
        sidon += by_def as usize;
        run.case(by_def == by_dist, || format!("definition says {by_def}, distances say {by_dist}; U = {}", u.to_dsl()));
    }
    run.note(format!("{sidon} of {} subspaces are Sidon spaces", subspaces.len()));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_names_are_rejected() {
        assert_eq!(check("thm_9_9", &CheckConfig::new(2, 5, 2)).unwrap_err(), Error::UnknownCheck("thm_9_9".into()));
        assert!(default_configs("nope").is_err());
    }

    #[test]
    fn bad_shapes_are_rejected() {
        assert!(check("sum_rule", &CheckConfig::new(2, 6, 3).with_t(2)).is_err());
        assert!(check("sum_rule", &CheckConfig::new(2, 6, 7)).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = CheckConfig::new(3, 5, 2).with_samples(5).with_seed(11);
        let a = check("thm_3_7", &cfg).unwrap();
        let b = check("thm_3_7", &cfg).unwrap();
        assert_eq!(a.observed_multipliers, b.observed_multipliers);
        assert!(a.passed && a.applicable);
    }

    #[test]
    fn hypotheses_outside_the_config_are_not_applicable() {
        let r = check("thm_3_7", &CheckConfig::new(2, 6, 3).with_samples(2)).unwrap();
        assert!(r.passed && !r.applicable);
        let r = check("cor_2q", &CheckConfig::new(2, 5, 2).with_samples(2)).unwrap();
        assert!(!r.applicable);
        let r = check("thm_3_14", &CheckConfig::new(2, 6, 3).with_samples(2)).unwrap();
        assert!(!r.applicable);
    }

    #[test]
    fn every_check_runs_on_a_small_config() {
        for name in CHECKS {
            let cfg = CheckConfig::new(2, 6, 3).with_samples(3);
            let r = check(name, &cfg).unwrap();
            assert!(r.passed, "{name}: {:?}", r.witnesses);
        }
    }
}
