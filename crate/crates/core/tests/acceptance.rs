//! Acceptance criteria, one line each. Runs every criterion, then exits
//! nonzero if any failed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use alpha_traversal::alpha::{
    build_table_from, certified_digits, ground_truth, quartic_tail, BruteForce, LazyEngine, Rp2Source,
    GROUND_TRUTH_DIGITS,
};
use alpha_traversal::analysis::{beta_witness, check_rp_growth_bounds, max_self_overlap, random_tree};
use alpha_traversal::dyadic::DyadicRational;
use alpha_traversal::lazy;
use alpha_traversal::suite::{case_rng, monotonicity_record, run_suite, Suite, SuiteConfig};
use alpha_traversal::traversal::{check_fetch_splay_correspondence, traverse_fetch, traverse_splay};
use alpha_traversal::Tree;
use num_bigint::{BigInt, BigUint};

/// Level used for both digit certification and the computed table range.
const STRETCH_LEVEL: u64 = 10050;
const DESK_LEVEL: u64 = 256;
const DESK_MIN_DIGITS: usize = 55;
const SEED: u64 = 20240611;

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn known_rp_values() -> Outcome {
    let want = vec![2, 4, 2];
    let oracle = BruteForce.rp2_values(3).unwrap();
    let engine = LazyEngine.rp2_values(3).unwrap();
    outcome(oracle == want && engine == want, format!("oracle={oracle:?} lazy={engine:?}"))
}

fn recurrence_agreement() -> Outcome {
    let h_max = 12;
    let table = build_table_from(h_max, LazyEngine.rp2_values(h_max).unwrap()).unwrap();
    for h in 0..=h_max {
        let m = Tree::maximal(h as i32).unwrap();
        let tsl = traverse_fetch(&m).tsl;
        let rp1 = traverse_fetch(&Tree::extend(m, 1)).rp.unwrap();
        if table.tsl[h] != BigUint::from(tsl) || table.rp1[h] != rp1 {
            return outcome(
                false,
                format!("h={h}: simulated tsl={tsl} rp1={rp1}, table tsl={} rp1={}", table.tsl[h], table.rp1[h]),
            );
        }
    }
    outcome(true, format!("h=0..={h_max}"))
}

fn lazy_differential() -> Outcome {
    let h_max = 16;
    for h in 0..=h_max {
        let stats = traverse_fetch(&Tree::extend(Tree::maximal(h as i32).unwrap(), 2));
        let p = lazy::persistence_m2(h);
        if Some(p.rp) != stats.rp || Some(p.irp) != stats.irp {
            return outcome(
                false,
                format!("h={h}: lazy rp={} irp={}, oracle rp={:?} irp={:?}", p.rp, p.irp, stats.rp, stats.irp),
            );
        }
    }
    outcome(true, format!("rp and irp equal for h=0..={h_max}"))
}

fn cost_identity() -> Outcome {
    for case in 0..1000u64 {
        let t = random_tree(&mut case_rng(SEED, case), 64);
        let fetch = traverse_fetch(&t);
        let splay = traverse_splay(&t);
        if splay.rotations != Some(fetch.tsl - 1) {
            return outcome(false, format!("case {case}: rotations={:?} tsl={} tree={t}", splay.rotations, fetch.tsl));
        }
    }
    for case in 0..200u64 {
        let t = random_tree(&mut case_rng(SEED + 1, case), 48);
        for k in 1..=t.size() {
            if !check_fetch_splay_correspondence(&t, k).unwrap() {
                return outcome(false, format!("case {case}: k={k} tree={t}"));
            }
        }
    }
    outcome(true, "1000 trees <= 64 nodes, 200 trees <= 48 nodes at every k")
}

fn desk_digits() -> Outcome {
    let truth = ground_truth().unwrap();
    let c = certified_digits(DESK_LEVEL, &LazyEngine).unwrap();
    let matches = c.integer_part == "2" && truth.fraction.starts_with(&c.fraction_digits);
    outcome(
        matches && c.certified_count >= DESK_MIN_DIGITS,
        format!("N={DESK_LEVEL} certified={} prefix_match={matches}", c.certified_count),
    )
}

fn stretch_digits() -> Outcome {
    let truth = ground_truth().unwrap();
    let c = certified_digits(STRETCH_LEVEL, &LazyEngine).unwrap();
    let n = c.certified_count.min(GROUND_TRUTH_DIGITS);
    let matches = c.integer_part == "2" && c.fraction_digits[..n] == truth.fraction[..n];
    outcome(
        matches && c.certified_count >= GROUND_TRUTH_DIGITS,
        format!("N={STRETCH_LEVEL} certified={} matching={matches}", c.certified_count),
    )
}

fn bound_suite() -> Outcome {
    let h_max = (STRETCH_LEVEL - 2) as u32;
    let p = lazy::persistence_m2_table(h_max);
    let rp2: Vec<u64> = p.iter().map(|x| x.rp).collect();
    let irp: Vec<u64> = p.iter().map(|x| x.irp).collect();
    let table = build_table_from(h_max as usize + 1, rp2).unwrap();
    let records = check_rp_growth_bounds(&table, &irp);
    let failures: Vec<String> = records
        .iter()
        .filter(|r| !r.pass && r.check != "rp1_telescoped_bound")
        .map(|r| format!("{} h={}: {}", r.check, r.h.unwrap_or(0), r.details))
        .collect();
    let checked = records.iter().filter(|r| r.check != "rp1_telescoped_bound").count();
    if failures.is_empty() {
        outcome(true, format!("{checked} bound checks for h=0..={h_max}"))
    } else {
        outcome(false, format!("{} of {checked} violated: {}", failures.len(), failures.join("; ")))
    }
}

fn quartic_lemma() -> Outcome {
    let mut current = quartic_tail(0);
    for n in 0..=1000u64 {
        let next = quartic_tail(n + 1);
        let term = DyadicRational::new(BigInt::from(n).pow(4u32), n);
        if &current - &next != term {
            return outcome(false, format!("telescoping fails at N={n}"));
        }
        let bound = DyadicRational::with_shift(BigInt::from(n + 3).pow(4u32), 1 - n as i64);
        if current > bound {
            return outcome(false, format!("bound fails at N={n}"));
        }
        current = next;
    }
    outcome(true, "N=0..=1000")
}

fn lemma_suites() -> Outcome {
    let cfg = SuiteConfig { seed: SEED, cases: 500, max_nodes: 48, ..SuiteConfig::default() };
    let report = run_suite(Suite::Lemmas, &cfg);
    let mut parts = Vec::new();
    let mut pass = true;
    for check in [
        "upper_segment_preservation",
        "continuation_halving",
        "compress_spine",
        "no_repeat_nodes",
        "left_depth_monotone",
    ] {
        let records: Vec<_> = report.of(check).collect();
        let bad: Vec<_> = records.iter().filter(|r| !r.pass).collect();
        pass &= records.len() >= 500 && bad.is_empty();
        match bad.first() {
            None => parts.push(format!("{check} 0/{}", records.len())),
            Some(first) => parts.push(format!(
                "{check} {}/{} (first: case {} {})",
                bad.len(),
                records.len(),
                first.case_id.unwrap_or(0),
                first.details
            )),
        }
    }
    outcome(pass, parts.join("; "))
}

fn beta_witnesses() -> Outcome {
    for r in 1..=12 {
        match beta_witness(r) {
            Ok(w) if w.size == (1 << r) + r as usize && w.measured_tsl == w.expected_tsl => {}
            Ok(w) => return outcome(false, format!("r={r}: {w:?}")),
            Err(e) => return outcome(false, e.to_string()),
        }
    }
    outcome(true, "r=1..=12")
}

fn periodicity() -> Outcome {
    let overlap = max_self_overlap(&ground_truth().unwrap().fraction);
    outcome(overlap == 3, format!("max self-overlap {overlap}"))
}

fn monotonicity() -> Outcome {
    let h_max = (STRETCH_LEVEL - 1) as usize;
    let table = build_table_from(h_max, LazyEngine.rp2_values(h_max).unwrap()).unwrap();
    let record = monotonicity_record(&table);
    outcome(record.pass, record.details)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, "known rp values", Duration::from_secs(1), known_rp_values),
        (2, "recurrences match simulation", Duration::from_secs(60), recurrence_agreement),
        (3, "lazy engine matches simulation", Duration::from_secs(600), lazy_differential),
        (4, "cost identity and fetch/splay correspondence", Duration::from_secs(60), cost_identity),
        (5, "certified digits at desk scale", Duration::from_secs(300), desk_digits),
        (6, "certified digits, stretch", Duration::from_secs(600), stretch_digits),
        (7, "growth bounds", Duration::from_secs(600), bound_suite),
        (8, "quartic tail identity", Duration::from_secs(1), quartic_lemma),
        (9, "lemma property suites", Duration::from_secs(300), lemma_suites),
        (10, "beta witness", Duration::from_secs(60), beta_witnesses),
        (11, "periodicity scan", Duration::from_secs(1), periodicity),
        (12, "alpha monotonicity", Duration::from_secs(600), monotonicity),
    ];
    let mut failed = Vec::new();
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let mut result = run();
        let elapsed = start.elapsed();
        if elapsed > budget {
            result.pass = false;
            result.detail.push_str(&format!("; over budget {budget:?}"));
        }
        let verdict = if result.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {verdict} {name}: {} [{:.2?}]", result.detail, elapsed);
        if !result.pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 12 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
