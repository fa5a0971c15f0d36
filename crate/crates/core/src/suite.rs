//! Seeded property suites behind `alpha-traversal check`.
//!
//! Every randomized case draws from its own ChaCha stream (`seed`, case
//! number), so results do not depend on thread scheduling and a failing case
//! can be replayed alone.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::alpha::{alpha_h, build_table_from, quartic_tail, tolerance, RpTslTable};
use crate::analysis::{
    beta_witness, check_compress_spine, check_continuation, check_rp_growth_bounds, check_upper_segment_preservation,
    left_depth_violation, random_tree, repeat_nodes_after_subtree, CheckRecord, UpperSegment,
};
use crate::dyadic::DyadicRational;
use crate::lazy;
use crate::text::format_tree;
use crate::traversal::{first_correspondence_failure, traverse_fetch, traverse_splay};
use crate::tree::Tree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Lemmas,
    OracleDiff,
    Bounds,
    Beta,
    All,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lemmas" => Ok(Suite::Lemmas),
            "oracle-diff" => Ok(Suite::OracleDiff),
            "bounds" => Ok(Suite::Bounds),
            "beta" => Ok(Suite::Beta),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite {s:?} (expected lemmas, oracle-diff, bounds, beta or all)")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Lemmas => "lemmas",
            Suite::OracleDiff => "oracle-diff",
            Suite::Bounds => "bounds",
            Suite::Beta => "beta",
            Suite::All => "all",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: usize,
    pub max_nodes: usize,
    /// Largest height for the bound suite's rp table.
    pub bounds_h_max: u32,
    /// Largest height for the brute-force versus lazy-engine comparison.
    pub oracle_h_max: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 0, cases: 500, max_nodes: 48, bounds_h_max: 256, oracle_h_max: 12 }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub records: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    /// Records whose check name equals `check`.
    pub fn of(&self, check: &str) -> impl Iterator<Item = &CheckRecord> + '_ {
        let check = check.to_string();
        self.records.iter().filter(move |r| r.check == check)
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> SuiteReport {
    let records = match suite {
        Suite::Lemmas => lemma_records(cfg),
        Suite::OracleDiff => oracle_records(cfg),
        Suite::Bounds => bound_records(cfg),
        Suite::Beta => beta_records(),
        Suite::All => [lemma_records(cfg), oracle_records(cfg), bound_records(cfg), beta_records()].concat(),
    };
    SuiteReport { records }
}

/// Random source for one case.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

fn per_case<F>(cfg: &SuiteConfig, f: F) -> Vec<CheckRecord>
where
    F: Fn(u64, &mut ChaCha8Rng) -> Vec<CheckRecord> + Sync,
{
    (0..cfg.cases as u64)
        .into_par_iter()
        .map(|case| f(case, &mut case_rng(cfg.seed, case)))
        .collect::<Vec<_>>()
        .concat()
}

fn verdict(check: &str, case: u64, tree: &Tree, failure: Option<String>) -> CheckRecord {
    match failure {
        None => CheckRecord::for_case(check, case, true, format!("nodes={}", tree.size())),
        Some(why) => CheckRecord::for_case(check, case, false, format!("{why}; tree={}", format_tree(tree))),
    }
}

fn lemma_records(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    per_case(cfg, |case, rng| lemma_case(case, rng, cfg.max_nodes))
}

/// Upper segments, continuation, repeat nodes, left depth and spine
/// compression for one random instance.
pub fn lemma_case(case: u64, rng: &mut ChaCha8Rng, max_nodes: usize) -> Vec<CheckRecord> {
    let mut out = Vec::with_capacity(5);
    let a = random_tree(rng, max_nodes);
    let spine_len = a.spine().len();

    let e = UpperSegment::top(&a, rng.gen_range(0..=spine_len));
    let ok = check_upper_segment_preservation(&a, &e, a.size()).expect("segment built from the spine");
    out.push(verdict("upper_segment_preservation", case, &a, (!ok).then(|| format!("segment={}", e.len()))));

    let e = UpperSegment::top(&a, rng.gen_range(1..=spine_len));
    let ok = check_continuation(&a, &e).expect("segment built from the spine");
    out.push(verdict("continuation_halving", case, &a, (!ok).then(|| format!("segment={}", e.len()))));

    let u = a.spine().nodes()[rng.gen_range(0..spine_len)];
    let repeats = repeat_nodes_after_subtree(&a, u).expect("u is on the spine");
    out.push(verdict(
        "no_repeat_nodes",
        case,
        &a,
        (!repeats.is_empty()).then(|| {
            let ids: Vec<u32> = repeats.iter().map(|v| v.0).collect();
            format!("u={} repeats={ids:?}", u.0)
        }),
    ));

    out.push(verdict(
        "left_depth_monotone",
        case,
        &a,
        left_depth_violation(&a).map(|v| format!("step={} node={} {}->{}", v.step, v.node.0, v.before, v.after)),
    ));

    let (h, ext) = (rng.gen_range(0..=10), rng.gen_range(1..=4));
    let report = check_compress_spine(h, ext).expect("height is valid");
    let details = format!(
        "h={h} e={ext} k={} vacuous={} single_node_at={:?} root_off_at={:?}",
        report.k, report.vacuous, report.single_node_at, report.root_off_at
    );
    out.push(CheckRecord::for_case("compress_spine", case, report.pass(), details));
    out
}

fn oracle_records(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = per_case(cfg, |case, rng| oracle_case(case, rng, cfg.max_nodes));
    out.extend(recurrence_records(cfg.oracle_h_max.min(10)));
    out.extend(lazy_records(cfg.oracle_h_max));
    out
}

/// Splay versus fetch-and-discard, the fetch/splay correspondence and the
/// join decomposition for one random instance.
pub fn oracle_case(case: u64, rng: &mut ChaCha8Rng, max_nodes: usize) -> Vec<CheckRecord> {
    let mut out = Vec::with_capacity(3);
    let t = random_tree(rng, max_nodes);
    let fetch = traverse_fetch(&t);
    let splay = traverse_splay(&t);
    let failure = if splay.rotations != Some(fetch.cost()) {
        Some(format!("rotations={:?} tsl={}", splay.rotations, fetch.tsl))
    } else if splay.spine_lengths != fetch.spine_lengths {
        Some("spine lengths differ".to_string())
    } else {
        None
    };
    out.push(verdict("cost_identity", case, &t, failure));
    out.push(verdict(
        "fetch_splay_correspondence",
        case,
        &t,
        first_correspondence_failure(&t).map(|k| format!("k={k}")),
    ));

    let a = random_tree(rng, max_nodes / 2);
    let b = if rng.gen_bool(0.2) { Tree::new() } else { random_tree(rng, max_nodes / 2) };
    let joined = traverse_fetch(&Tree::join(a.clone(), b.clone()));
    let ext = traverse_fetch(&Tree::extend(a.clone(), 1));
    let plain = traverse_fetch(&a);
    let right = traverse_fetch(&b);
    let failure = if joined.tsl != ext.tsl + right.tsl {
        Some(format!("tsl(A^xB)={} tsl(A^x)={} tsl(B)={}", joined.tsl, ext.tsl, right.tsl))
    } else if Some(ext.tsl) != ext.rp.map(|rp| plain.tsl + rp) {
        Some(format!("tsl(A^x)={} tsl(A)={} rp(A^x)={:?}", ext.tsl, plain.tsl, ext.rp))
    } else if joined.rp != ext.rp {
        Some(format!("rp(A^xB)={:?} rp(A^x)={:?}", joined.rp, ext.rp))
    } else {
        None
    };
    let pair = Tree::join(a, b);
    out.push(verdict("join_decomposition", case, &pair, failure));
    out
}

/// Recurrence table against direct simulation of `M_h` and `M_h^[1]`.
pub fn recurrence_records(h_max: u32) -> Vec<CheckRecord> {
    let rp2: Vec<u64> =
        (0..h_max).map(|h| traverse_fetch(&Tree::extend(Tree::maximal(h as i32).unwrap(), 2)).rp.unwrap()).collect();
    let table = build_table_from(h_max as usize, rp2).expect("rp2 covers h_max");
    (0..=h_max)
        .into_par_iter()
        .map(|h| {
            let m = Tree::maximal(h as i32).unwrap();
            let tsl = traverse_fetch(&m).tsl;
            let rp1 = traverse_fetch(&Tree::extend(m, 1)).rp.unwrap();
            let table_tsl: u64 = (&table.tsl[h as usize]).try_into().unwrap_or(u64::MAX);
            let table_rp1 = table.rp1[h as usize];
            CheckRecord::for_height(
                "recurrence_vs_simulation",
                h as u64,
                tsl == table_tsl && rp1 == table_rp1,
                format!("tsl={tsl}/{table_tsl} rp1={rp1}/{table_rp1}"),
            )
        })
        .collect()
}

/// Lazy engine against brute force for `rp` and `irp` of `M_h^[2]`.
pub fn lazy_records(h_max: u32) -> Vec<CheckRecord> {
    (0..=h_max)
        .into_par_iter()
        .map(|h| {
            let stats = traverse_fetch(&Tree::extend(Tree::maximal(h as i32).unwrap(), 2));
            let lazy = lazy::persistence_m2(h);
            let (rp, irp) = (stats.rp.unwrap(), stats.irp.unwrap());
            CheckRecord::for_height(
                "lazy_vs_simulation",
                h as u64,
                lazy.rp == rp && lazy.irp == irp,
                format!("rp={rp}/{} irp={irp}/{}", lazy.rp, lazy.irp),
            )
        })
        .collect()
}

fn bound_records(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let persistence = lazy::persistence_m2_table(cfg.bounds_h_max);
    let rp2: Vec<u64> = persistence.iter().map(|p| p.rp).collect();
    let irp: Vec<u64> = persistence.iter().map(|p| p.irp).collect();
    let table = build_table_from(cfg.bounds_h_max as usize + 1, rp2).expect("rp2 covers the table");
    let mut out = check_rp_growth_bounds(&table, &irp);
    out.push(monotonicity_record(&table));
    out.push(quartic_tail_record(1000));
    out
}

/// `α_h` strictly increasing, below 8, and below the certified upper bound
/// at the table's top level.
pub fn monotonicity_record(table: &RpTslTable) -> CheckRecord {
    let top = table.h_max();
    let alphas: Vec<DyadicRational> = (0..=top).map(|h| alpha_h(table, h).unwrap()).collect();
    let level = top as u64 + 1;
    let ceiling = tolerance(level).map(|tol| &alphas[top] + &tol);
    let eight = DyadicRational::integer(8);
    let mut problems = Vec::new();
    if let Some(h) = alphas.windows(2).position(|w| w[0] >= w[1]) {
        problems.push(format!("alpha_{} >= alpha_{}", h, h + 1));
    }
    if let Some(h) = alphas.iter().position(|a| *a >= eight) {
        problems.push(format!("alpha_{h} >= 8"));
    }
    if let Ok(ceiling) = &ceiling {
        if let Some(h) = alphas.iter().position(|a| a >= ceiling) {
            problems.push(format!("alpha_{h} >= alpha_{top} + tolerance({level})"));
        }
    }
    let pass = problems.is_empty();
    let details = if pass { format!("h=0..={top} level={level}") } else { problems.join("; ") };
    CheckRecord::for_height("alpha_monotone", top as u64, pass, details)
}

/// `T(N) - T(N+1) = N^4 / 2^N` and `T(N) <= (N+3)^4 / 2^(N-1)` for
/// `N = 0..=n_max`, where `T` is the closed-form quartic tail.
pub fn quartic_tail_record(n_max: u64) -> CheckRecord {
    use num_bigint::BigInt;
    let mut failure = None;
    let mut current = quartic_tail(0);
    for n in 0..=n_max {
        let next = quartic_tail(n + 1);
        let term = DyadicRational::new(BigInt::from(n).pow(4u32), n);
        let bound = DyadicRational::with_shift(BigInt::from(n + 3).pow(4u32), 1 - n as i64);
        if &current - &next != term {
            failure = Some(format!("telescoping fails at N={n}"));
            break;
        }
        if current > bound {
            failure = Some(format!("upper bound fails at N={n}"));
            break;
        }
        current = next;
    }
    let pass = failure.is_none();
    CheckRecord::for_height("quartic_tail", n_max, pass, failure.unwrap_or_else(|| format!("N=0..={n_max}")))
}

fn beta_records() -> Vec<CheckRecord> {
    (1..=12u32)
        .into_par_iter()
        .map(|r| match beta_witness(r) {
            Ok(w) => CheckRecord::for_height(
                "beta_witness",
                r as u64,
                true,
                format!(
                    "shape={:?} size={} tsl={} ratio={:.6} two_plus_alpha={:.6}",
                    w.shape, w.size, w.measured_tsl, w.ratio, w.comparison
                ),
            ),
            Err(e) => CheckRecord::for_height("beta_witness", r as u64, false, e.to_string()),
        })
        .collect()
}
