use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{poly_string, CliResult, Exit, Progress, ReproduceArgs};
use crate::gf::split_prime_power;
use crate::orbit::{count_subfield_line_shifts, intersection_distribution_with};
use crate::subspace::parse_subspace;
use crate::verify::divisibility_violations;

const GOLDEN: &str = include_str!("../../data/examples.json");

/// A published worked example: a subspace in the Conway presentation of
/// `F_{q^n}` and its intersection distribution.
#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct GoldenExample {
    pub name: String,
    pub q: u32,
    pub n: usize,
    pub subspace: String,
    pub t: usize,
    pub lambda: Vec<u64>,
    /// Number of shifts of `F_{q^{2t}}` inside `U`, where stated.
    pub shifts: Option<u128>,
    /// Too slow for routine runs.
    pub large: bool,
}

pub fn golden_examples() -> Vec<GoldenExample> {
    serde_json::from_str(GOLDEN).expect("bundled examples are well formed")
}

#[derive(Serialize)]
struct Row {
    name: String,
    q: u32,
    n: usize,
    modulus: String,
    conway: bool,
    expected_lambda: Vec<u64>,
    lambda: Vec<u64>,
    expected_t: usize,
    t: usize,
    shifts: Option<u128>,
    lambda_matches: bool,
    sum_rule: bool,
    divisibility: Vec<String>,
    passed: bool,
    wall_time_ms: u128,
}

pub(super) fn cmd_reproduce(a: &ReproduceArgs) -> CliResult<i32> {
    let wanted_q = a.field.q()?;
    if a.field.modulus.is_some() && (wanted_q.is_none() || a.field.n.is_none()) {
        return Err(Exit::usage("--modulus needs --q (or --p/--e) and --n to pick the examples it applies to"));
    }
    let table = a.field.table()?;
    let examples: Vec<GoldenExample> = golden_examples()
        .into_iter()
        .filter(|g| !(a.skip_large && g.large))
        .filter(|g| wanted_q.is_none_or(|q| q == g.q) && a.field.n.is_none_or(|n| n == g.n))
        .collect();
    if examples.is_empty() {
        return Err(Exit::usage("no published example matches the requested field"));
    }
    let mut rows = Vec::new();
    for g in &examples {
        let (p, e) = split_prime_power(g.q)?;
        let tower = a.field.tower_for(p, e, g.n)?;
        let conway = table
            .get(p, tower.prime_degree())
            .is_some_and(|c| c.iter().map(|&x| x as u8).eq(tower.modulus().iter().copied()));
        let u = parse_subspace(&g.subspace, &tower)?;
        let start = Instant::now();
        let progress = Progress::new(format!("{} sweep", g.name));
        let report_fn = |d: u64, t: u64| progress.report(d, t);
        let opts = a.sweep.options(if g.large { Some(&report_fn) } else { None });
        let d = intersection_distribution_with(&u, &opts)?;
        let shifts =
            if g.n % (2 * d.t) == 0 { Some(count_subfield_line_shifts(&u, d.t)?.count) } else { None };
        let divisibility = divisibility_violations(&u, &d)?;
        let lambda_matches = d.lambda == g.lambda && d.t == g.t && g.shifts.is_none_or(|s| shifts == Some(s));
        let sum_rule = d.sum_rule_holds();
        let passed = lambda_matches && sum_rule && divisibility.is_empty();
        rows.push(Row {
            name: g.name.clone(),
            q: g.q,
            n: g.n,
            modulus: poly_string(tower.modulus()),
            conway,
            expected_lambda: g.lambda.clone(),
            lambda: d.lambda,
            expected_t: g.t,
            t: d.t,
            shifts,
            lambda_matches,
            sum_rule,
            divisibility,
            passed,
            wall_time_ms: start.elapsed().as_millis(),
        });
    }
    if a.json {
        out!("{}", serde_json::to_string_pretty(&rows).expect("rows serialize"));
    } else {
        for r in &rows {
            print_row(r);
        }
    }
    Ok(if rows.iter().all(|r| r.passed) { 0 } else { 1 })
}

fn print_row(r: &Row) {
    let status = if r.passed { "PASS" } else { "FAIL" };
    out!("{status} {:<20} q={} n={} t={} ({} ms)", r.name, r.q, r.n, r.t, r.wall_time_ms);
    out!("     expected {:?}", r.expected_lambda);
    out!("     computed {:?}", r.lambda);
    let ok = |b: bool| if b { "PASS" } else { "FAIL" };
    out!("     sum rule {}, divisibility {}", ok(r.sum_rule), ok(r.divisibility.is_empty()));
    for v in &r.divisibility {
        out!("       {v}");
    }
    if !r.lambda_matches {
        let kind = if r.conway { "the Conway polynomial" } else { "NOT the Conway polynomial" };
        out!("     mismatch: computed with modulus {} ({kind});", r.modulus);
        out!("     the published values assume the Conway presentation of F_{{{}^{}}}", r.q, r.n);
    }
}
