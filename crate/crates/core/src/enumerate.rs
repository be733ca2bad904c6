//! Exhaustive generation of realizable Gauss words, one per class under
//! rotation, reversal and relabeling, and the per-shadow record.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cut_circle::{find_cut_circles, pattern_class, PatternClass};
use crate::error::{Error, Result};
use crate::realize::{check_realizable, FaceCensus};
use crate::reductivity::{
    reductivity_unchecked, ReductivityCertificate, ReductivityKind, ReductivityValue, DEFAULT_R_CAP,
};
use crate::splice::{circle_number, seifert_circle_count};
use crate::word::GaussWord;

pub const DEFAULT_BOUND: usize = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filters {
    pub prime: bool,
    pub reduced: bool,
}

impl Filters {
    pub const PRIME_REDUCED: Filters = Filters {
        prime: true,
        reduced: true,
    };

    /// Parses a comma-separated list such as `prime,reduced`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut f = Filters::default();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item {
                "prime" => f.prime = true,
                "reduced" => f.reduced = true,
                "none" | "all" => {}
                other => return Err(Error::InvalidArgument(format!("unknown filter {other:?}"))),
            }
        }
        Ok(f)
    }

    pub fn accepts(&self, w: &GaussWord) -> bool {
        (!self.prime || w.is_prime().unwrap_or(false))
            && (!self.reduced || !w.is_reducible().unwrap_or(true))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub filters: Filters,
    pub cap_r: usize,
    /// largest crossing number accepted
    pub bound: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            filters: Filters::PRIME_REDUCED,
            cap_r: DEFAULT_R_CAP,
            bound: DEFAULT_BOUND,
        }
    }
}

/// Depth-first generation state. Letters are `0..n` in first-occurrence order.
struct Generator {
    n: usize,
    filters: Filters,
    buf: Vec<u8>,
    first: Vec<usize>,
    /// `partner[p]` once both occurrences are placed, `usize::MAX` before
    partner: Vec<usize>,
    open: Vec<u8>,
    out: Vec<Vec<u8>>,
}

impl Generator {
    fn new(n: usize, filters: Filters) -> Self {
        Generator {
            n,
            filters,
            buf: Vec::with_capacity(2 * n),
            first: vec![usize::MAX; n],
            partner: vec![usize::MAX; 2 * n],
            open: Vec::with_capacity(n),
            out: Vec::new(),
        }
    }

    fn next_label(&self) -> usize {
        self.first.iter().filter(|&&p| p != usize::MAX).count()
    }

    /// Options at the current position, in increasing letter order.
    fn options(&self) -> Vec<u8> {
        let mut opts = self.open.clone();
        opts.sort_unstable();
        let next = self.next_label();
        let remaining = 2 * self.n - self.buf.len();
        if next < self.n && self.open.len() < remaining - 1 {
            opts.push(next as u8);
        }
        opts
    }

    fn push(&mut self, x: u8) -> bool {
        let p = self.buf.len();
        let xi = x as usize;
        self.buf.push(x);
        if self.first[xi] == usize::MAX {
            self.first[xi] = p;
            self.open.push(x);
            return self.prefix_may_be_canonical();
        }
        let q = self.first[xi];
        self.partner[p] = q;
        self.partner[q] = p;
        self.open.retain(|&y| y != x);
        let degree = (q + 1..p)
            .filter(|&j| {
                let r = self.partner[j];
                r == usize::MAX || r < q || r > p
            })
            .count();
        if degree % 2 == 1 || (self.filters.reduced && degree == 0) {
            return false;
        }
        if self.filters.prime && self.closes_proper_interval(p) {
            return false;
        }
        self.prefix_may_be_canonical()
    }

    fn pop(&mut self) {
        let p = self.buf.len() - 1;
        let x = self.buf.pop().expect("non-empty") as usize;
        if self.first[x] == p {
            self.first[x] = usize::MAX;
            self.open.retain(|&y| y as usize != x);
        } else {
            let q = self.partner[p];
            self.partner[p] = usize::MAX;
            self.partner[q] = usize::MAX;
            self.open.push(x as u8);
        }
    }

    fn closes_proper_interval(&self, e: usize) -> bool {
        let len = 2 * self.n;
        let (mut lo, mut hi) = (usize::MAX, 0);
        for s in (0..=e).rev() {
            let r = self.partner[s];
            if r == usize::MAX {
                return false;
            }
            lo = lo.min(r);
            hi = hi.max(r);
            if lo >= s && hi <= e && e - s + 1 < len {
                return true;
            }
        }
        false
    }

    /// False when some rotation or reversed rotation is already known to
    /// relabel to something strictly smaller than the prefix.
    fn prefix_may_be_canonical(&self) -> bool {
        let w = &self.buf;
        let len = w.len();
        let mut map = vec![u8::MAX; self.n];
        let mut smaller = |seq: &mut dyn Iterator<Item = u8>| -> bool {
            map.fill(u8::MAX);
            let mut next = 0u8;
            for (k, c) in seq.enumerate() {
                let c = c as usize;
                if map[c] == u8::MAX {
                    map[c] = next;
                    next += 1;
                }
                match map[c].cmp(&w[k]) {
                    std::cmp::Ordering::Less => return true,
                    std::cmp::Ordering::Greater => return false,
                    std::cmp::Ordering::Equal => {}
                }
            }
            false
        };
        for s in 1..len {
            if smaller(&mut w[s..].iter().copied()) {
                return false;
            }
        }
        for s in 0..len {
            if smaller(&mut w[..=s].iter().rev().copied()) {
                return false;
            }
        }
        true
    }

    fn run(&mut self) {
        if self.buf.len() == 2 * self.n {
            self.out.push(self.buf.clone());
            return;
        }
        for x in self.options() {
            if self.push(x) {
                self.run();
            }
            self.pop();
        }
    }

    /// Prefixes of length `depth` surviving pruning, in lexicographic order.
    fn prefixes(&mut self, depth: usize, acc: &mut Vec<Vec<u8>>) {
        if self.buf.len() == depth || self.buf.len() == 2 * self.n {
            acc.push(self.buf.clone());
            return;
        }
        for x in self.options() {
            if self.push(x) {
                self.prefixes(depth, acc);
            }
            self.pop();
        }
    }
}

fn completions(n: usize, filters: Filters, prefix: &[u8]) -> Vec<Vec<u8>> {
    let mut g = Generator::new(n, filters);
    for &x in prefix {
        let ok = g.push(x);
        debug_assert!(ok);
    }
    g.run();
    g.out
}

/// Canonical realizable words with exactly `n` crossings passing `filters`,
/// in increasing lexicographic order.
pub fn canonical_words(n: usize, filters: Filters) -> Vec<GaussWord> {
    if n == 0 {
        return Vec::new();
    }
    let mut g = Generator::new(n, filters);
    let mut prefixes = Vec::new();
    g.prefixes(n.min(5), &mut prefixes);
    let raw: Vec<Vec<u8>> = prefixes
        .par_iter()
        .flat_map_iter(|p| completions(n, filters, p))
        .collect();
    raw.into_par_iter()
        .map(|letters| GaussWord::from_letters_unchecked(letters.iter().map(|&x| x as u32 + 1).collect()))
        .filter(|w| w.is_canonical() && filters.accepts(w) && check_realizable(w).is_ok())
        .collect()
}

/// Canonical words for every crossing number `1..=max_n`.
pub fn enumerate_words(max_n: usize, opts: &EnumOptions) -> Result<Vec<GaussWord>> {
    if max_n > opts.bound {
        return Err(Error::BoundExceeded {
            requested: max_n,
            bound: opts.bound,
        });
    }
    Ok((1..=max_n)
        .flat_map(|n| canonical_words(n, opts.filters))
        .collect())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutSummary {
    pub count: usize,
    pub separating: usize,
    /// distinct pattern classes, sorted
    pub classes: Vec<PatternClass>,
}

/// A canonical word with every invariant computed.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionRecord {
    pub word: GaussWord,
    pub n: usize,
    pub prime: bool,
    pub reduced: bool,
    pub tau: usize,
    pub seifert_circles: usize,
    pub t: ReductivityCertificate,
    pub r: ReductivityCertificate,
    pub y: ReductivityCertificate,
    pub i: ReductivityCertificate,
    pub census: FaceCensus,
    pub cut2: CutSummary,
    pub cut3: CutSummary,
    pub rotation: String,
    pub label: Option<String>,
}

impl ProjectionRecord {
    pub fn compute(word: &GaussWord, cap_r: usize) -> Result<Self> {
        let word = word.canonical_form();
        let e = check_realizable(&word)?;
        let full = word.crossing_count();
        let cap_for = |k: ReductivityKind| if k == ReductivityKind::R { cap_r } else { full.max(1) };
        let cert = |k| reductivity_unchecked(&word, k, cap_for(k));
        let summary = |m| -> Result<CutSummary> {
            let circles = find_cut_circles(&e, m)?;
            let mut classes: Vec<PatternClass> = circles.iter().map(|c| pattern_class(c, &e)).collect();
            classes.sort();
            classes.dedup();
            Ok(CutSummary {
                count: circles.len(),
                separating: circles.iter().filter(|c| c.separating).count(),
                classes,
            })
        };
        Ok(ProjectionRecord {
            n: full,
            prime: word.is_prime()?,
            reduced: !word.is_reducible()?,
            tau: circle_number(&word)?,
            seifert_circles: seifert_circle_count(&word)?,
            t: cert(ReductivityKind::T),
            r: cert(ReductivityKind::R),
            y: cert(ReductivityKind::Y),
            i: cert(ReductivityKind::I),
            census: e.face_census(),
            cut2: summary(2)?,
            cut3: summary(3)?,
            rotation: e.rotation_tag(),
            label: None,
            word,
        })
    }

    pub fn certificate(&self, kind: ReductivityKind) -> &ReductivityCertificate {
        match kind {
            ReductivityKind::T => &self.t,
            ReductivityKind::R => &self.r,
            ReductivityKind::Y => &self.y,
            ReductivityKind::I => &self.i,
        }
    }

    pub fn certificate_mut(&mut self, kind: ReductivityKind) -> &mut ReductivityCertificate {
        match kind {
            ReductivityKind::T => &mut self.t,
            ReductivityKind::R => &mut self.r,
            ReductivityKind::Y => &mut self.y,
            ReductivityKind::I => &mut self.i,
        }
    }

    /// Exact value of a reductivity, `None` when not found or capped.
    pub fn value(&self, kind: ReductivityKind) -> Option<usize> {
        self.certificate(kind).value.exact()
    }

    pub fn r_capped(&self) -> bool {
        matches!(self.r.value, ReductivityValue::AboveCap(_))
    }

    pub fn display_label(&self) -> String {
        self.label.clone().unwrap_or_else(|| "-".into())
    }
}

/// Table index: `1`..`9`, then `A`..`Z`, then `a`..`z`, then decimal.
pub fn table_label(n: usize, index: usize) -> String {
    let suffix = match index {
        1..=9 => index.to_string(),
        10..=35 => ((b'A' + (index - 10) as u8) as char).to_string(),
        36..=61 => ((b'a' + (index - 36) as u8) as char).to_string(),
        _ => format!("({index})"),
    };
    format!("{n}_{suffix}")
}

/// One record per class, grouped by crossing number, labelled in canonical order.
pub fn enumerate_shadows(max_n: usize, opts: &EnumOptions) -> Result<Vec<ProjectionRecord>> {
    let words = enumerate_words(max_n, opts)?;
    records_for(&words, opts.cap_r)
}

/// Computes records in parallel and assigns labels; output order follows `words`.
pub fn records_for(words: &[GaussWord], cap_r: usize) -> Result<Vec<ProjectionRecord>> {
    let mut records = words
        .par_iter()
        .map(|w| ProjectionRecord::compute(w, cap_r))
        .collect::<Result<Vec<_>>>()?;
    let mut counter = std::collections::BTreeMap::<usize, usize>::new();
    for r in &mut records {
        let k = counter.entry(r.n).or_default();
        *k += 1;
        r.label = Some(table_label(r.n, *k));
    }
    Ok(records)
}

#[derive(Serialize, Deserialize)]
struct RecordRepr {
    word: GaussWord,
    n: usize,
    prime: bool,
    reduced: bool,
    tau: usize,
    seifert_circles: usize,
    t: Option<usize>,
    r: Option<usize>,
    y: Option<usize>,
    i: Option<usize>,
    r_capped: bool,
    census: FaceCensus,
    cut2: CutSummary,
    cut3: CutSummary,
    label: Option<String>,
    rotation: String,
    certificates: [ReductivityCertificate; 4],
}

impl Serialize for ProjectionRecord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RecordRepr {
            word: self.word.clone(),
            n: self.n,
            prime: self.prime,
            reduced: self.reduced,
            tau: self.tau,
            seifert_circles: self.seifert_circles,
            t: self.value(ReductivityKind::T),
            r: self.value(ReductivityKind::R),
            y: self.value(ReductivityKind::Y),
            i: self.value(ReductivityKind::I),
            r_capped: self.r_capped(),
            census: self.census.clone(),
            cut2: self.cut2.clone(),
            cut3: self.cut3.clone(),
            label: self.label.clone(),
            rotation: self.rotation.clone(),
            certificates: [self.t.clone(), self.r.clone(), self.y.clone(), self.i.clone()],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ProjectionRecord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = RecordRepr::deserialize(d)?;
        let [t, rr, y, i] = r.certificates;
        Ok(ProjectionRecord {
            word: r.word,
            n: r.n,
            prime: r.prime,
            reduced: r.reduced,
            tau: r.tau,
            seifert_circles: r.seifert_circles,
            t,
            r: rr,
            y,
            i,
            census: r.census,
            cut2: r.cut2,
            cut3: r.cut3,
            rotation: r.rotation,
            label: r.label,
        })
    }
}

impl fmt::Display for ProjectionRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] t={} r={} y={} i={} tau={}",
            self.display_label(),
            self.word,
            self.t.value,
            self.r.value,
            self.y.value,
            self.i.value,
            self.tau
        )
    }
}
