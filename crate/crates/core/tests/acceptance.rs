//! Acceptance run. Prints one PASS/FAIL line per criterion, then exits
//! non-zero if any outcome differs from the expected one below.
//!
//! Two hunt outcomes are expected to fail: no shadow with t < r exists up to
//! nine crossings, and the eight-crossing shadow 8_O has t = 3. Both are
//! checked in detail so that any change in them is noticed.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use knot_reductivity::enumerate::{enumerate_shadows, EnumOptions, ProjectionRecord};
use knot_reductivity::hunt::{hunt, HuntReport, Predicate};
use knot_reductivity::realize::check_realizable;
use knot_reductivity::reductivity::{reductivity, ReductivityKind, ReductivityValue};
use knot_reductivity::splice::{circle_number, make_torus_word};
use knot_reductivity::verify::{emit_table, run_suite, Format, Report, Status};
use knot_reductivity::GaussWord;

const TORUS_LIMIT: Duration = Duration::from_secs(10);
const TREFOIL_LIMIT: Duration = Duration::from_secs(1);
const SUITE_LIMIT: Duration = Duration::from_secs(300);
const HUNT_BUDGET: Duration = Duration::from_secs(600);
const SUITE_MAX_N: usize = 7;
const ORACLE_MAX_N: usize = 5;
const HUNT_T_LT_R_MAX_N: usize = 9;
const HUNT_SMALL_MAX_N: usize = 8;
const R_TWO_CLASS_LIMIT: usize = 5;
const SEVEN_REFERENCE: usize = 12;

/// Criteria expected to fail.
const EXPECTED_FAILURES: &[u8] = &[7];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn statuses(report: &Report, ids: &[&str]) -> Result<(), String> {
    let bad: Vec<String> = ids
        .iter()
        .filter_map(|id| match report.property(id) {
            Some(p) if p.status == Status::Pass => None,
            Some(p) => Some(format!("{id}={:?} {:?}", p.status, p.counterexamples)),
            None => Some(format!("{id} missing")),
        })
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad.join("; "))
    }
}

fn torus_anchor() -> Outcome {
    let start = Instant::now();
    let mut values = Vec::new();
    let mut ok = true;
    for m in 1..=3 {
        let w = make_torus_word(m).unwrap();
        let i = reductivity(&w, ReductivityKind::I, w.crossing_count()).unwrap().value;
        ok &= i == ReductivityValue::Exact(2 * m);
        values.push(format!("m={m}: i={i}"));
    }
    let took = start.elapsed();
    outcome(ok && took < TORUS_LIMIT, format!("{} in {took:.2?}", values.join(", ")))
}

fn trefoil_row() -> Outcome {
    let start = Instant::now();
    let w: GaussWord = "1 2 3 1 2 3".parse().unwrap();
    let rec = ProjectionRecord::compute(&w, 6).unwrap();
    let c = check_realizable(&w).unwrap().face_census();
    let vals = [rec.t.value, rec.r.value, rec.y.value, rec.i.value].map(|v| v.exact());
    let took = start.elapsed();
    let ok = vals == [Some(1), Some(1), Some(1), Some(2)]
        && circle_number(&w).unwrap() == 3
        && rec.tau == 3
        && c.bigons_incoherent == 3
        && c.bigons_coherent == 0
        && c.trigons.len() == 2
        && took < TREFOIL_LIMIT;
    outcome(
        ok,
        format!(
            "t={} r={} y={} i={} tau={} bigons={} incoherent, trigons={} in {took:.2?}",
            rec.t.value,
            rec.r.value,
            rec.y.value,
            rec.i.value,
            rec.tau,
            c.bigons_incoherent,
            c.trigons.len()
        ),
    )
}

fn property_suite(report: &Report, took: Duration) -> Outcome {
    let ids = [
        "t_le_r",
        "t_le_y",
        "t_le_i",
        "i_even",
        "coherent_bigon_i_two",
        "reductivity_one_equivalence",
        "reductivity_two_forces_t_two",
        "circle_number_lower_bound",
        "coherent_bigon_t_le_two",
        "triple_chord_without_small_faces",
        "reductivity_one_triple_chord",
    ];
    match statuses(report, &ids) {
        Ok(()) => outcome(
            report.passed() && took < SUITE_LIMIT,
            format!(
                "{} shadows, {} properties, {} failed, {took:.2?}",
                report.records,
                report.properties.len(),
                report.failures().len()
            ),
        ),
        Err(e) => outcome(false, e),
    }
}

fn two_point_equivalence(records: &[ProjectionRecord]) -> Outcome {
    let exceptions: Vec<String> = records
        .iter()
        .filter(|r| r.prime && r.reduced)
        .filter(|r| (r.t.value == ReductivityValue::Exact(1)) != (r.cut2.separating > 0))
        .map(|r| r.display_label())
        .collect();
    let t1 = records.iter().filter(|r| r.t.value == ReductivityValue::Exact(1)).count();
    outcome(
        exceptions.is_empty(),
        format!("{t1} shadows with t=1, exceptions: {exceptions:?}"),
    )
}

fn r_two_structure(report: &Report) -> Outcome {
    let ids = ["r_two_three_point_circle", "r_two_class_count", "i_two_circle", "y_two_circle", "t_two_circle"];
    let classes = report
        .property("r_two_class_count")
        .and_then(|p| p.stats.get("class_count"))
        .and_then(|v| v.as_u64())
        .unwrap_or(u64::MAX) as usize;
    match statuses(report, &ids) {
        Ok(()) => outcome(
            classes <= R_TWO_CLASS_LIMIT,
            format!("{classes} three-point classes among r=2 shadows (limit {R_TWO_CLASS_LIMIT}); i/y/t=2 circles present"),
        ),
        Err(e) => outcome(false, e),
    }
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 1..=ORACLE_MAX_N {
        let brute = common::brute_canonical(n, false, true);
        let words: std::collections::BTreeSet<Vec<u32>> =
            knot_reductivity::enumerate::canonical_words(n, knot_reductivity::enumerate::Filters {
                prime: false,
                reduced: true,
            })
            .iter()
            .map(|w| w.letters().to_vec())
            .collect();
        if words != brute {
            bad.push(format!("enumeration differs at n={n}"));
        }
        for w in &brute {
            let g = common::gauss(w);
            let expected = [
                (ReductivityKind::T, common::naive_t(w)),
                (ReductivityKind::R, common::naive_r(w)),
                (ReductivityKind::Y, common::naive_y(w)),
                (ReductivityKind::I, common::naive_i(w)),
            ];
            for (kind, want) in expected {
                let got = reductivity(&g, kind, n).unwrap().value.exact();
                checked += 1;
                if got != want {
                    bad.push(format!("{kind} of {w:?}: {got:?} vs {want:?}"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} values compared, mismatches: {bad:?}"))
}

fn labels(r: &HuntReport) -> Vec<String> {
    r.findings.iter().map(|f| f.row.label.clone()).collect()
}

fn hunts() -> (Outcome, bool) {
    let opts = EnumOptions::default();
    let run = |p: &str, n| hunt(&Predicate::parse(p).unwrap(), n, HUNT_BUDGET, &opts).unwrap();
    let start = Instant::now();
    let t_lt_r = run("t < r", HUNT_T_LT_R_MAX_N);
    let took = start.elapsed();
    let r_ge_4 = run("r >= 4", HUNT_SMALL_MAX_N);
    let t_ge_3 = run("t >= 3", HUNT_SMALL_MAX_N);
    let pass = !t_lt_r.findings.is_empty() && took < HUNT_BUDGET && r_ge_4.findings.is_empty() && t_ge_3.findings.is_empty();
    let known = t_lt_r.findings.is_empty()
        && t_lt_r.searched_up_to == HUNT_T_LT_R_MAX_N
        && t_lt_r.undecided.is_empty()
        && r_ge_4.findings.is_empty()
        && r_ge_4.searched_up_to == HUNT_SMALL_MAX_N
        && labels(&t_ge_3) == ["8_O"]
        && t_ge_3.findings[0].word == "1 2 3 4 5 1 6 3 7 5 8 6 2 7 4 8";
    let detail = format!(
        "{} in {took:.1?}; {}; {} {:?}",
        t_lt_r.summary(),
        r_ge_4.summary(),
        t_ge_3.summary(),
        labels(&t_ge_3)
    );
    (outcome(pass, detail), known)
}

fn counts(records: &[ProjectionRecord], report: &Report) -> Outcome {
    let per = |n| records.iter().filter(|r| r.n == n).count();
    let flag = report.property("enumeration_counts").map(|p| p.status);
    let seven = per(7);
    let reported = if seven == SEVEN_REFERENCE {
        flag == Some(Status::Pass)
    } else {
        flag == Some(Status::Flagged)
    };
    outcome(
        per(3) == 1 && per(4) == 1 && reported,
        format!(
            "n=3: {}, n=4: {}, n=7: {seven} against reference {SEVEN_REFERENCE} ({:?})",
            per(3),
            per(4),
            flag
        ),
    )
}

fn determinism() -> Outcome {
    let render = |jobs: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().unwrap();
        pool.install(|| {
            let recs = enumerate_shadows(SUITE_MAX_N, &EnumOptions::default()).unwrap();
            let jsonl: String = recs.iter().map(|r| serde_json::to_string(r).unwrap() + "\n").collect();
            (jsonl, emit_table(&recs, Format::Text).unwrap())
        })
    };
    let reference = render(1);
    let mut same = [1, 2, 4, 1].iter().all(|&j| render(j) == reference);
    let cli = |jobs: &str, sub: &str, fmt: &str| {
        Command::new(env!("CARGO_BIN_EXE_reductivity"))
            .args([sub, "--max-crossings", "6", "--format", fmt, "--jobs", jobs])
            .output()
            .map(|o| o.stdout)
            .unwrap_or_default()
    };
    for (sub, fmt) in [("enumerate", "jsonl"), ("table", "text")] {
        let base = cli("1", sub, fmt);
        same &= !base.is_empty() && ["2", "4", "1"].iter().all(|j| cli(j, sub, fmt) == base);
    }
    outcome(
        same,
        format!("{} JSONL bytes, identical for 1, 2 and 4 threads and across CLI runs", reference.0.len()),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(u8, &str, Outcome)> = Vec::new();
    results.push((1, "torus anchor", torus_anchor()));
    results.push((2, "trefoil row", trefoil_row()));

    let start = Instant::now();
    let records = enumerate_shadows(SUITE_MAX_N, &EnumOptions::default()).unwrap();
    let report = run_suite(&records, SUITE_MAX_N);
    let took = start.elapsed();
    results.push((3, "property suite", property_suite(&report, took)));
    results.push((4, "two-point circle equivalence", two_point_equivalence(&records)));
    results.push((5, "reductivity-two structure", r_two_structure(&report)));
    results.push((6, "oracle equivalence", oracle_equivalence()));
    let (hunt_outcome, hunts_as_known) = hunts();
    results.push((7, "existence hunts", hunt_outcome));
    results.push((8, "enumeration counts", counts(&records, &report)));
    results.push((9, "determinism", determinism()));

    let mut unexpected = Vec::new();
    for (id, name, o) in &results {
        println!("{} criterion {id} ({name}): {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if o.pass == EXPECTED_FAILURES.contains(id) {
            unexpected.push(*id);
        }
    }
    if !hunts_as_known {
        println!("criterion 7 hunt results changed");
        unexpected.push(7);
    }
    if unexpected.is_empty() {
        println!("acceptance: all outcomes as expected ({} expected failure)", EXPECTED_FAILURES.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
