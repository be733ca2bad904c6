//! Property suite over enumerated shadows, trigon letter calibration, and
//! table output.
//!
//! Every property is checked against the search-based reductivities of each
//! record. Properties that describe what was observed, rather than assert
//! something, are reported with status `info`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cut_circle::PatternClass;
use crate::enumerate::ProjectionRecord;
use crate::error::{Error, Result};
use crate::realize::TrigonClass;
use crate::reductivity::{replay_certificate, ReductivityKind, ReductivityValue};
use crate::splice::make_torus_word;
use crate::word::ChordPattern;

use ReductivityKind::{I, R, T, Y};

/// Number of 7-crossing prime reduced shadows implied by the labels `7_1`..`7_C`.
pub const REFERENCE_SEVEN_COUNT: usize = 12;

/// Upper bound on 3-point circle classes among shadows with `r = 2`.
pub const R_TWO_CLASS_LIMIT: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// descriptive output only
    Info,
    /// an existence search came back empty within the searched range
    NotFound,
    /// disagreement with an external reference value, reported but not a failure
    Flagged,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub property_id: String,
    pub status: Status,
    pub statement: String,
    pub counterexamples: Vec<String>,
    pub stats: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub max_n: usize,
    pub records: usize,
    pub properties: Vec<PropertyResult>,
}

impl Report {
    pub fn property(&self, id: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.property_id == id)
    }

    pub fn failures(&self) -> Vec<&PropertyResult> {
        self.properties.iter().filter(|p| p.status == Status::Fail).collect()
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

/// Lower and upper end of what a reductivity value says about the true value.
fn range(v: ReductivityValue) -> (usize, usize) {
    match v {
        ReductivityValue::Exact(x) => (x, x),
        ReductivityValue::AboveCap(c) => (c + 1, usize::MAX),
        ReductivityValue::NotFound => (usize::MAX, usize::MAX),
    }
}

fn val(r: &ProjectionRecord, k: ReductivityKind) -> ReductivityValue {
    r.certificate(k).value
}

/// `a <= b`, true only when it is settled by the values.
fn at_most(a: ReductivityValue, b: ReductivityValue) -> bool {
    range(a).1 <= range(b).0
}

fn is(r: &ProjectionRecord, k: ReductivityKind, x: usize) -> bool {
    val(r, k) == ReductivityValue::Exact(x)
}

fn name(r: &ProjectionRecord) -> String {
    format!("{} {}", r.display_label(), r.word)
}

fn has_separating(classes: &[PatternClass]) -> bool {
    classes.iter().any(PatternClass::is_separating)
}

struct Check<'a> {
    records: &'a [&'a ProjectionRecord],
    out: Vec<PropertyResult>,
}

impl<'a> Check<'a> {
    fn push(&mut self, id: &str, statement: &str, status: Status, counterexamples: Vec<String>, stats: BTreeMap<String, Value>) {
        self.out.push(PropertyResult {
            property_id: id.into(),
            status,
            statement: statement.into(),
            counterexamples,
            stats,
        });
    }

    /// Every record satisfying `premise` satisfies `conclusion`.
    fn implication(
        &mut self,
        id: &str,
        statement: &str,
        premise: impl Fn(&ProjectionRecord) -> bool,
        conclusion: impl Fn(&ProjectionRecord) -> bool,
    ) {
        let mut applicable = 0;
        let mut bad = Vec::new();
        for r in self.records {
            if premise(r) {
                applicable += 1;
                if !conclusion(r) {
                    bad.push(name(r));
                }
            }
        }
        let status = if bad.is_empty() { Status::Pass } else { Status::Fail };
        let stats = BTreeMap::from([("applicable".to_string(), json!(applicable))]);
        self.push(id, statement, status, bad, stats);
    }
}

/// Runs every property over the prime reduced records with at most `max_n`
/// crossings.
pub fn run_suite(records: &[ProjectionRecord], max_n: usize) -> Report {
    let selected: Vec<&ProjectionRecord> = records
        .iter()
        .filter(|r| r.prime && r.reduced && r.n <= max_n)
        .collect();
    let mut c = Check {
        records: &selected,
        out: Vec::new(),
    };
    let tr = ChordPattern::triple_chord();

    c.implication("t_le_r", "t <= r", |_| true, |r| at_most(val(r, T), val(r, R)));
    c.implication("t_le_y", "t <= y", |_| true, |r| at_most(val(r, T), val(r, Y)));
    c.implication("t_le_i", "t <= i", |_| true, |r| at_most(val(r, T), val(r, I)));
    c.implication(
        "i_even",
        "i is an even number, at least 2",
        |_| true,
        |r| matches!(val(r, I), ReductivityValue::Exact(x) if x % 2 == 0 && x >= 2),
    );
    c.implication(
        "coherent_bigon_i_two",
        "a coherent 2-gon forces i = 2",
        |r| r.census.bigons_coherent > 0,
        |r| is(r, I, 2),
    );
    c.implication(
        "coherent_bigon_t_le_two",
        "a coherent 2-gon forces t <= 2",
        |r| r.census.bigons_coherent > 0,
        |r| at_most(val(r, T), ReductivityValue::Exact(2)),
    );
    torus_property(&mut c);
    c.implication(
        "reductivity_one_equivalence",
        "t = 1, r = 1 and y = 1 are equivalent",
        |_| true,
        |r| is(r, T, 1) == is(r, R, 1) && is(r, T, 1) == is(r, Y, 1),
    );
    c.implication(
        "reductivity_two_forces_t_two",
        "r = 2 or y = 2 forces t = 2",
        |r| is(r, R, 2) || is(r, Y, 2),
        |r| is(r, T, 2),
    );
    c.implication(
        "circle_number_lower_bound",
        "circle number 1 forces t, r, y >= 2",
        |r| r.tau == 1,
        |r| [T, R, Y].iter().all(|&k| range(val(r, k)).0 >= 2),
    );
    c.implication(
        "triple_chord_without_small_faces",
        "no 1-gons and no 2-gons forces a triple chord",
        |r| r.census.monogons == 0 && r.census.bigons() == 0,
        |r| r.word.contains_pattern(&tr),
    );
    c.implication(
        "reductivity_one_triple_chord",
        "r = 1 forces a triple chord",
        |r| is(r, R, 1),
        |r| r.word.contains_pattern(&tr),
    );
    c.implication(
        "two_point_circle_equivalence",
        "t = 1 iff a separating 2-point circle exists",
        |_| true,
        |r| is(r, T, 1) == has_separating(&r.cut2.classes),
    );
    two_point_class(&mut c);
    r_two_structure(&mut c);
    c.implication(
        "i_two_circle",
        "i = 2 forces a circle through 2 or 3 double points",
        |r| is(r, I, 2),
        |r| r.cut2.count + r.cut3.count > 0,
    );
    c.implication(
        "y_two_circle",
        "y = 2 forces no separating 2-point circle and a separating 3-point circle",
        |r| is(r, Y, 2),
        |r| !has_separating(&r.cut2.classes) && has_separating(&r.cut3.classes),
    );
    c.implication(
        "t_two_circle",
        "t = 2 forces no separating 2-point circle and a circle through 2 or 3 double points",
        |r| is(r, T, 2),
        |r| !has_separating(&r.cut2.classes) && r.cut2.count + r.cut3.count > 0,
    );
    c.implication(
        "r_le_n_minus_one",
        "r <= n - 1",
        |_| true,
        |r| at_most(val(r, R), ReductivityValue::Exact(r.n - 1)),
    );
    c.implication(
        "t_le_min_ryi",
        "t <= min(r, y, i)",
        |_| true,
        |r| [R, Y, I].iter().all(|&k| at_most(val(r, T), val(r, k))),
    );
    c.implication(
        "certificates_replay",
        "every witness replays to a reducible curve and has the reported size",
        |_| true,
        |r| {
            ReductivityKind::ALL.iter().all(|&k| {
                let cert = r.certificate(k);
                match (cert.value, &cert.witness) {
                    (ReductivityValue::Exact(v), Some(w)) => {
                        w.size() == v && replay_certificate(&r.word, cert).is_ok_and(|p| p.valid)
                    }
                    (ReductivityValue::Exact(_), None) => false,
                    (_, w) => w.is_none(),
                }
            })
        },
    );
    c.implication(
        "face_count",
        "the census has n + 2 faces",
        |_| true,
        |r| r.census.face_count() == r.n + 2,
    );
    hunts(&mut c, max_n);
    extremes(&mut c);
    chord_patterns(&mut c);
    counts(&mut c, max_n);
    let cal = calibrate(&selected);
    let status = match cal.observed.len() {
        _ if cal.assignments.is_empty() => Status::Fail,
        4 => Status::Pass,
        k if k < 4 => Status::Info,
        _ => Status::Fail,
    };
    let stats = BTreeMap::from([
        ("observed".to_string(), json!(cal.observed)),
        ("consistent_assignments".to_string(), json!(cal.assignments)),
        ("ambiguous".to_string(), json!(cal.assignments.len() > 1)),
    ]);
    c.push(
        "trigon_calibration",
        "4 trigon classes occur and some lettering satisfies: C-type forces i = 2, A-type forces 1 <= y <= 2",
        status,
        Vec::new(),
        stats,
    );

    Report {
        max_n,
        records: selected.len(),
        properties: c.out,
    }
}

fn torus_property(c: &mut Check<'_>) {
    let mut bad = Vec::new();
    let mut stats = BTreeMap::new();
    for m in 1..=3 {
        let w = make_torus_word(m).expect("m >= 1");
        let cert = crate::reductivity::reductivity_unchecked(&w, I, w.crossing_count());
        stats.insert(format!("m{m}"), json!(cert.value.to_string()));
        if cert.value != ReductivityValue::Exact(2 * m) {
            bad.push(format!("m={m} {w}"));
        }
    }
    let status = if bad.is_empty() { Status::Pass } else { Status::Fail };
    c.push("torus_i", "i of the (2, 2m+1)-torus shadow is 2m for m = 1, 2, 3", status, bad, stats);
}

fn two_point_class(c: &mut Check<'_>) {
    let classes: BTreeSet<&PatternClass> = c
        .records
        .iter()
        .flat_map(|r| r.cut2.classes.iter())
        .filter(|k| k.is_separating())
        .collect();
    let status = if classes.len() <= 1 { Status::Pass } else { Status::Fail };
    let stats = BTreeMap::from([("classes".to_string(), json!(classes))]);
    c.push(
        "two_point_circle_single_class",
        "separating 2-point circles on a single curve fall in one class",
        status,
        Vec::new(),
        stats,
    );
}

fn r_two_structure(c: &mut Check<'_>) {
    let mut bad = Vec::new();
    let mut classes: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for r in c.records.iter().filter(|r| is(r, R, 2)) {
        if has_separating(&r.cut2.classes) || !has_separating(&r.cut3.classes) {
            bad.push(name(r));
        }
        for k in r.cut3.classes.iter().filter(|k| k.is_separating()) {
            classes.entry(k.0.clone()).or_default().push(r.display_label());
        }
    }
    // converse: the same configuration on a shadow with r != 2
    let mut converse = Vec::new();
    for r in c.records.iter().filter(|r| !is(r, R, 2)) {
        if !has_separating(&r.cut2.classes) && r.cut3.classes.iter().any(|k| classes.contains_key(&k.0)) {
            converse.push(name(r));
        }
    }
    let status = if bad.is_empty() && converse.is_empty() { Status::Pass } else { Status::Fail };
    let applicable = c.records.iter().filter(|r| is(r, R, 2)).count();
    let mut stats = BTreeMap::from([("applicable".to_string(), json!(applicable))]);
    stats.insert("converse_counterexamples".into(), json!(converse));
    let mut all = bad;
    all.extend(converse.iter().map(|s| format!("{s} (converse)")));
    c.push(
        "r_two_three_point_circle",
        "r = 2 iff no separating 2-point circle and a separating 3-point circle of an r = 2 class",
        status,
        all,
        stats,
    );
    let count = classes.len();
    let status = if count <= R_TWO_CLASS_LIMIT { Status::Pass } else { Status::Fail };
    let stats = BTreeMap::from([
        ("class_count".to_string(), json!(count)),
        ("limit".to_string(), json!(R_TWO_CLASS_LIMIT)),
        ("classes".to_string(), json!(classes)),
    ]);
    c.push(
        "r_two_class_count",
        "at most 5 separating 3-point circle classes occur among shadows with r = 2",
        status,
        Vec::new(),
        stats,
    );
}

fn hunts(c: &mut Check<'_>, max_n: usize) {
    let mut hunt = |id: &str, statement: &str, pred: &dyn Fn(&ProjectionRecord) -> bool| {
        let found: Vec<String> = c.records.iter().filter(|r| pred(r)).map(|r| name(r)).collect();
        let (status, stats) = if found.is_empty() {
            (
                Status::NotFound,
                BTreeMap::from([("result".to_string(), json!(format!("not found up to n={max_n}")))]),
            )
        } else {
            (Status::Pass, BTreeMap::from([("found".to_string(), json!(found.len()))]))
        };
        c.push(id, statement, status, found, stats);
    };
    hunt("hunt_t_lt_r", "some shadow has t < r", &|r| {
        range(val(r, T)).1 < range(val(r, R)).0
    });
    hunt("hunt_y_gt_t_eq_r_two", "some shadow has y > t = r = 2", &|r| {
        is(r, T, 2) && is(r, R, 2) && range(val(r, Y)).0 > 2
    });
}

fn extremes(c: &mut Check<'_>) {
    let mut per_n: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for r in c.records {
        let e = per_n.entry(r.n).or_default();
        e.0 = e.0.max(range(val(r, R)).0);
        e.1 = e.1.max(range(val(r, T)).0);
    }
    let r_big: Vec<String> = c.records.iter().filter(|r| range(val(r, R)).0 >= 4).map(|r| name(r)).collect();
    let t_big: Vec<String> = c.records.iter().filter(|r| range(val(r, T)).0 >= 3).map(|r| name(r)).collect();
    let table: BTreeMap<String, Value> = per_n
        .iter()
        .map(|(n, (r, t))| (n.to_string(), json!({"max_r": r, "max_t": t})))
        .collect();
    let stats = BTreeMap::from([
        ("per_n".to_string(), json!(table)),
        ("r_at_least_4".to_string(), json!(r_big)),
        ("t_at_least_3".to_string(), json!(t_big)),
    ]);
    let mut examples = r_big.clone();
    examples.extend(t_big.iter().cloned());
    c.push(
        "max_r_t_per_n",
        "largest r and t observed for each crossing number",
        Status::Info,
        examples,
        stats,
    );
}

fn chord_patterns(c: &mut Check<'_>) {
    let mut stats = BTreeMap::new();
    for (key, k) in [("r_two", R), ("y_two", Y)] {
        let group: Vec<&&ProjectionRecord> = c.records.iter().filter(|r| is(r, k, 2)).collect();
        let mut common = Vec::new();
        for p in ChordPattern::all_with_chords(3) {
            if group.iter().all(|r| r.word.contains_pattern(&p)) {
                common.push(p.word().to_string());
            }
        }
        stats.insert(format!("{key}_shadows"), json!(group.len()));
        stats.insert(format!("{key}_common_patterns"), json!(common));
    }
    c.push(
        "chord_patterns_r_two_y_two",
        "3-chord sub-diagrams shared by every shadow with r = 2, and by every shadow with y = 2",
        Status::Info,
        Vec::new(),
        stats,
    );
}

fn counts(c: &mut Check<'_>, max_n: usize) {
    let mut per_n: BTreeMap<usize, usize> = (1..=max_n).map(|n| (n, 0)).collect();
    for r in c.records {
        *per_n.entry(r.n).or_default() += 1;
    }
    let mut bad = Vec::new();
    for (n, want) in [(3, 1), (4, 1)] {
        if n <= max_n && per_n[&n] != want {
            bad.push(format!("n={n}: {} shadows, expected {want}", per_n[&n]));
        }
    }
    let mut stats: BTreeMap<String, Value> = BTreeMap::from([(
        "per_n".to_string(),
        json!(per_n.iter().map(|(n, k)| (n.to_string(), *k)).collect::<BTreeMap<_, _>>()),
    )]);
    let mut status = if bad.is_empty() { Status::Pass } else { Status::Fail };
    if max_n >= 7 {
        let seven = per_n[&7];
        stats.insert("n7_reference".into(), json!(REFERENCE_SEVEN_COUNT));
        stats.insert("n7_count".into(), json!(seven));
        stats.insert("n7_matches_reference".into(), json!(seven == REFERENCE_SEVEN_COUNT));
        if seven != REFERENCE_SEVEN_COUNT && status == Status::Pass {
            status = Status::Flagged;
            bad.push(format!("n=7: {seven} shadows, reference label range gives {REFERENCE_SEVEN_COUNT}"));
        }
    }
    c.push(
        "enumeration_counts",
        "prime reduced counts: 1 at n = 3, 1 at n = 4; n = 7 compared with 12",
        status,
        bad,
        stats,
    );
}

/// Result of matching the letters A-D to observed trigon classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrigonCalibration {
    /// each observed class with the number of shadows containing it
    pub observed: BTreeMap<String, usize>,
    /// letter assignments consistent with the data, each mapping `A`..`D` to a class
    pub assignments: Vec<BTreeMap<char, String>>,
    /// for each consistent assignment, shadows without 1- and 2-gons that have
    /// no trigon of type A, B or C
    pub without_abc: Vec<Vec<String>>,
}

/// Tries every assignment of the letters A-D to the observed trigon classes
/// and keeps those under which a C-type trigon forces i = 2 and an A-type
/// trigon forces 1 <= y <= 2.
pub fn calibrate_trigon_map(records: &[ProjectionRecord]) -> TrigonCalibration {
    let selected: Vec<&ProjectionRecord> = records.iter().filter(|r| r.reduced).collect();
    calibrate(&selected)
}

fn calibrate(records: &[&ProjectionRecord]) -> TrigonCalibration {
    let mut observed: BTreeMap<String, usize> = BTreeMap::new();
    for r in records {
        let kinds: BTreeSet<&TrigonClass> = r.census.trigons.iter().collect();
        for k in kinds {
            *observed.entry(k.0.clone()).or_default() += 1;
        }
    }
    let mut classes: Vec<String> = observed.keys().cloned().collect();
    let mut filler = 0;
    while classes.len() < 4 {
        filler += 1;
        classes.push(format!("unobserved-{filler}"));
    }
    let has = |r: &ProjectionRecord, class: &str| r.census.trigons.iter().any(|t| t.0 == class);
    let mut assignments = Vec::new();
    let mut without_abc = Vec::new();
    for perm in permutations(classes.len(), 4) {
        let letters: BTreeMap<char, String> = ['A', 'B', 'C', 'D']
            .iter()
            .zip(&perm)
            .map(|(&l, &i)| (l, classes[i].clone()))
            .collect();
        let ok = records.iter().all(|r| {
            (!has(r, &letters[&'C']) || is(r, I, 2))
                && (!has(r, &letters[&'A']) || matches!(val(r, Y), ReductivityValue::Exact(1 | 2)))
        });
        if ok {
            let missing: Vec<String> = records
                .iter()
                .filter(|r| r.census.monogons == 0 && r.census.bigons() == 0)
                .filter(|r| !['A', 'B', 'C'].iter().any(|l| has(r, &letters[l])))
                .map(|r| name(r))
                .collect();
            assignments.push(letters);
            without_abc.push(missing);
        }
    }
    TrigonCalibration {
        observed,
        assignments,
        without_abc,
    }
}

/// Ordered selections of `k` distinct indices from `0..n`, in lexicographic order.
fn permutations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, k, &mut cur, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Jsonl,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            "json" => Ok(Format::Json),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

/// One table row: label, n, t, r, y, i, tau.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub n: usize,
    pub t: String,
    pub r: String,
    pub y: String,
    pub i: String,
    pub tau: usize,
}

impl From<&ProjectionRecord> for TableRow {
    fn from(r: &ProjectionRecord) -> Self {
        TableRow {
            label: r.display_label(),
            n: r.n,
            t: val(r, T).to_string(),
            r: val(r, R).to_string(),
            y: val(r, Y).to_string(),
            i: val(r, I).to_string(),
            tau: r.tau,
        }
    }
}

pub fn emit_table(records: &[ProjectionRecord], format: Format) -> Result<String> {
    let rows: Vec<TableRow> = records.iter().map(TableRow::from).collect();
    let mut out = String::new();
    match format {
        Format::Text => {
            let width = rows.iter().map(|r| r.label.len()).max().unwrap_or(5).max(5);
            let _ = writeln!(out, "{:<width$} {:>3} {:>4} {:>4} {:>4} {:>4} {:>4}", "label", "n", "t", "r", "y", "i", "tau");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:<width$} {:>3} {:>4} {:>4} {:>4} {:>4} {:>4}",
                    r.label, r.n, r.t, r.r, r.y, r.i, r.tau
                );
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &rows {
                w.serialize(r).map_err(|e| Error::InvalidArgument(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
            out = String::from_utf8(bytes).expect("csv output is utf-8");
        }
        Format::Jsonl => {
            for r in &rows {
                out.push_str(&serde_json::to_string(r).expect("row serializes"));
                out.push('\n');
            }
        }
        Format::Json => {
            out = serde_json::to_string_pretty(&rows).expect("rows serialize");
            out.push('\n');
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate_shadows, EnumOptions};

    fn records(max_n: usize) -> Vec<ProjectionRecord> {
        enumerate_shadows(max_n, &EnumOptions::default()).unwrap()
    }

    #[test]
    fn small_suite_passes() {
        let report = run_suite(&records(6), 6);
        assert!(report.passed(), "{:?}", report.failures());
        assert!(report.properties.len() >= 12);
    }

    #[test]
    fn decremented_i_is_caught() {
        let mut recs = records(5);
        let victim = recs.iter_mut().find(|r| r.n == 4).unwrap();
        victim.i.value = ReductivityValue::Exact(1);
        let report = run_suite(&recs, 5);
        let p = report.property("i_even").unwrap();
        assert_eq!(p.status, Status::Fail);
        assert_eq!(p.counterexamples.len(), 1);
        assert!(p.counterexamples[0].starts_with("4_1"));
    }

    #[test]
    fn trefoil_row() {
        let recs = records(3);
        let row = TableRow::from(&recs[0]);
        assert_eq!(
            (row.label.as_str(), row.t.as_str(), row.r.as_str(), row.y.as_str(), row.i.as_str(), row.tau),
            ("3_1", "1", "1", "1", "2", 3)
        );
    }

    #[test]
    fn csv_and_jsonl_agree() {
        let recs = records(6);
        let csv_text = emit_table(&recs, Format::Csv).unwrap();
        let from_csv: Vec<TableRow> = csv::Reader::from_reader(csv_text.as_bytes())
            .deserialize()
            .collect::<std::result::Result<_, _>>()
            .unwrap();
        let jsonl = emit_table(&recs, Format::Jsonl).unwrap();
        let from_json: Vec<TableRow> = jsonl.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(from_csv, from_json);
        assert_eq!(from_csv.len(), recs.len());
    }

    #[test]
    fn calibration_small() {
        let cal = calibrate_trigon_map(&records(6));
        assert!(!cal.assignments.is_empty());
        assert_eq!(cal.assignments.len(), cal.without_abc.len());
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4, 4).len(), 24);
        assert_eq!(permutations(5, 2).len(), 20);
    }
}
