//! Double-occurrence (Gauss) words and the purely combinatorial notions that
//! live on them: canonical forms, interlacement, nugatory crossings, primality
//! and sub-chord-diagram containment.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A cyclic word in which every crossing label occurs exactly twice.
///
/// Equality and hashing are taken up to rotation, reversal and relabeling,
/// i.e. two words are equal iff their canonical forms coincide. Use
/// [`GaussWord::letters`] for label-level comparisons.
#[derive(Clone)]
pub struct GaussWord {
    letters: Vec<u32>,
    canon: OnceLock<Vec<u32>>,
}

impl GaussWord {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if !letters.len().is_multiple_of(2) {
            return Err(Error::MalformedWord(format!(
                "odd number of letters ({})",
                letters.len()
            )));
        }
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for &l in &letters {
            if l == 0 {
                return Err(Error::MalformedWord("labels must be positive".into()));
            }
            *counts.entry(l).or_default() += 1;
        }
        if let Some((l, c)) = counts.iter().find(|(_, &c)| c != 2) {
            return Err(Error::MalformedWord(format!("label {l} occurs {c} time(s)")));
        }
        Ok(Self::from_letters_unchecked(letters))
    }

    pub(crate) fn from_letters_unchecked(letters: Vec<u32>) -> Self {
        GaussWord {
            letters,
            canon: OnceLock::new(),
        }
    }

    /// Parses whitespace-separated positive integer labels.
    pub fn parse(text: &str) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| Error::MalformedWord(format!("bad token {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(letters)
    }

    pub fn empty() -> Self {
        Self::from_letters_unchecked(Vec::new())
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of double points.
    pub fn crossing_count(&self) -> usize {
        self.letters.len() / 2
    }

    /// Crossing labels in increasing order.
    pub fn labels(&self) -> Vec<u32> {
        let mut ls: Vec<u32> = self.letters.clone();
        ls.sort_unstable();
        ls.dedup();
        ls
    }

    pub fn contains_label(&self, label: u32) -> bool {
        self.letters.contains(&label)
    }

    /// The two positions of `label`, in increasing order.
    pub fn positions(&self, label: u32) -> Option<(usize, usize)> {
        let mut it = self
            .letters
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == label)
            .map(|(i, _)| i);
        Some((it.next()?, it.next()?))
    }

    /// `partners()[p]` is the other position carrying the same label as `p`.
    pub fn partners(&self) -> Vec<usize> {
        let mut first: BTreeMap<u32, usize> = BTreeMap::new();
        let mut partner = vec![0; self.letters.len()];
        for (i, &l) in self.letters.iter().enumerate() {
            if let Some(j) = first.remove(&l) {
                partner[i] = j;
                partner[j] = i;
            } else {
                first.insert(l, i);
            }
        }
        partner
    }

    pub fn reversed(&self) -> GaussWord {
        let mut letters = self.letters.clone();
        letters.reverse();
        Self::from_letters_unchecked(letters)
    }

    pub fn rotated(&self, by: usize) -> GaussWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = by % letters.len();
            letters.rotate_left(k);
        }
        Self::from_letters_unchecked(letters)
    }

    /// Renames labels through `f`; `f` must be injective on the labels.
    pub fn relabeled(&self, f: impl Fn(u32) -> u32) -> GaussWord {
        Self::from_letters_unchecked(self.letters.iter().map(|&l| f(l)).collect())
    }

    /// The sub-word on the given labels (the induced sub-chord diagram).
    pub fn restrict(&self, keep: &[u32]) -> GaussWord {
        Self::from_letters_unchecked(
            self.letters
                .iter()
                .copied()
                .filter(|l| keep.contains(l))
                .collect(),
        )
    }

    /// Lexicographically least representative over rotations, the reversal
    /// and first-occurrence relabeling.
    pub fn canonical_form(&self) -> GaussWord {
        Self::from_letters_unchecked(self.canonical_key().to_vec())
    }

    pub fn canonical_key(&self) -> &[u32] {
        self.canon
            .get_or_init(|| canonical_letters(&self.letters))
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_key() == self.letters.as_slice()
    }

    pub fn interlacement(&self) -> Interlacement {
        Interlacement::of(self)
    }

    /// Crossings whose chord is interlaced with no other chord.
    pub fn nugatory_crossings(&self) -> Result<Vec<u32>> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        let g = self.interlacement();
        Ok(g.labels()
            .iter()
            .copied()
            .filter(|&l| g.degree(l) == 0)
            .collect())
    }

    pub fn is_reducible(&self) -> Result<bool> {
        Ok(!self.nugatory_crossings()?.is_empty())
    }

    /// A word is composite iff some proper cyclic interval is closed under
    /// partners. Any wrapping closed interval has a non-wrapping closed
    /// complement, so scanning non-wrapping intervals suffices.
    pub fn is_prime(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(find_closed_interval(&self.partners()).is_none())
    }

    pub fn contains_pattern(&self, pattern: &ChordPattern) -> bool {
        let k = pattern.0.crossing_count();
        let labels = self.labels();
        if k > labels.len() {
            return false;
        }
        if k == 0 {
            return true;
        }
        let target = pattern.0.canonical_key();
        let mut found = false;
        for_each_combination(labels.len(), k, &mut |idx| {
            let keep: Vec<u32> = idx.iter().map(|&i| labels[i]).collect();
            if self.restrict(&keep).canonical_key() == target {
                found = true;
            }
            found
        });
        found
    }
}

/// Finds a proper, non-wrapping interval `[s, e]` closed under partners.
pub(crate) fn find_closed_interval(partner: &[usize]) -> Option<(usize, usize)> {
    let len = partner.len();
    for s in 0..len {
        let (mut lo, mut hi) = (usize::MAX, 0);
        for (e, &pe) in partner.iter().enumerate().skip(s) {
            lo = lo.min(pe);
            hi = hi.max(pe);
            if e - s + 1 < len && lo >= s && hi <= e {
                return Some((s, e));
            }
        }
    }
    None
}

/// Calls `f` on every increasing `k`-subset of `0..n` in lexicographic order
/// until it returns `true`.
pub(crate) fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        let i = i - 1;
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[allow(clippy::needless_range_loop)]
fn canonical_letters(letters: &[u32]) -> Vec<u32> {
    let len = letters.len();
    if len == 0 {
        return Vec::new();
    }
    // dense indices so relabeling can use a flat map
    let mut dense_of: BTreeMap<u32, usize> = BTreeMap::new();
    let dense: Vec<usize> = letters
        .iter()
        .map(|l| {
            let next = dense_of.len();
            *dense_of.entry(*l).or_insert(next)
        })
        .collect();
    let n = dense_of.len();
    let mut best: Vec<u32> = Vec::new();
    let mut cand: Vec<u32> = Vec::with_capacity(len);
    let mut map = vec![0u32; n];
    for start in 0..len {
        for rev in [false, true] {
            map.fill(0);
            cand.clear();
            let mut next = 1;
            let mut order = if best.is_empty() {
                Ordering::Less
            } else {
                Ordering::Equal
            };
            for k in 0..len {
                let i = if rev {
                    (start + len - k) % len
                } else {
                    (start + k) % len
                };
                let c = dense[i];
                if map[c] == 0 {
                    map[c] = next;
                    next += 1;
                }
                let x = map[c];
                if order == Ordering::Equal {
                    order = x.cmp(&best[k]);
                    if order == Ordering::Greater {
                        break;
                    }
                }
                cand.push(x);
            }
            if order == Ordering::Less {
                std::mem::swap(&mut best, &mut cand);
            }
        }
    }
    best
}

impl PartialEq for GaussWord {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.canonical_key() == other.canonical_key()
    }
}

impl Eq for GaussWord {}

impl Hash for GaussWord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical_key().hash(state);
    }
}

impl fmt::Display for GaussWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GaussWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaussWord({self})")
    }
}

impl FromStr for GaussWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GaussWord::parse(s)
    }
}

impl Serialize for GaussWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        GaussWord::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Symmetric, loop-free graph on crossing labels; two chords are adjacent
/// iff their endpoints alternate around the circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interlacement {
    labels: Vec<u32>,
    adjacent: Vec<Vec<bool>>,
}

impl Interlacement {
    fn of(w: &GaussWord) -> Self {
        let labels = w.labels();
        let pos: Vec<(usize, usize)> = labels
            .iter()
            .map(|&l| w.positions(l).expect("label of word"))
            .collect();
        let k = labels.len();
        let mut adjacent = vec![vec![false; k]; k];
        for a in 0..k {
            for b in a + 1..k {
                let (p1, p2) = pos[a];
                let inside = |q: usize| p1 < q && q < p2;
                let alt = inside(pos[b].0) != inside(pos[b].1);
                adjacent[a][b] = alt;
                adjacent[b][a] = alt;
            }
        }
        Interlacement { labels, adjacent }
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    fn index(&self, l: u32) -> Option<usize> {
        self.labels.binary_search(&l).ok()
    }

    pub fn are_interlaced(&self, a: u32, b: u32) -> bool {
        match (self.index(a), self.index(b)) {
            (Some(i), Some(j)) => self.adjacent[i][j],
            _ => false,
        }
    }

    pub fn degree(&self, l: u32) -> usize {
        self.index(l)
            .map(|i| self.adjacent[i].iter().filter(|&&x| x).count())
            .unwrap_or(0)
    }

    /// Edges `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for i in 0..self.labels.len() {
            for j in i + 1..self.labels.len() {
                if self.adjacent[i][j] {
                    out.push((self.labels[i], self.labels[j]));
                }
            }
        }
        out
    }
}

/// A small chord diagram used as a containment target.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChordPattern(pub GaussWord);

impl ChordPattern {
    pub fn new(word: GaussWord) -> Self {
        ChordPattern(word)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(ChordPattern(GaussWord::parse(text)?))
    }

    /// Three pairwise interlaced chords, `1 2 3 1 2 3`.
    pub fn triple_chord() -> Self {
        ChordPattern(GaussWord::from_letters_unchecked(vec![1, 2, 3, 1, 2, 3]))
    }

    pub fn single_chord() -> Self {
        ChordPattern(GaussWord::from_letters_unchecked(vec![1, 1]))
    }

    pub fn word(&self) -> &GaussWord {
        &self.0
    }

    /// All chord diagrams with `k` chords, as canonical words in increasing order.
    pub fn all_with_chords(k: usize) -> Vec<ChordPattern> {
        let mut out: Vec<Vec<u32>> = Vec::new();
        let mut buf = Vec::with_capacity(2 * k);
        fn rec(buf: &mut Vec<u32>, open: &mut Vec<u32>, next: u32, k: u32, out: &mut Vec<Vec<u32>>) {
            if buf.len() == 2 * k as usize {
                let w = GaussWord::from_letters_unchecked(buf.clone());
                if w.is_canonical() {
                    out.push(buf.clone());
                }
                return;
            }
            if next <= k {
                buf.push(next);
                open.push(next);
                rec(buf, open, next + 1, k, out);
                open.pop();
                buf.pop();
            }
            for i in 0..open.len() {
                let l = open.remove(i);
                buf.push(l);
                rec(buf, open, next, k, out);
                buf.pop();
                open.insert(i, l);
            }
        }
        rec(&mut buf, &mut Vec::new(), 1, k as u32, &mut out);
        out.sort();
        out.into_iter()
            .map(|l| ChordPattern(GaussWord::from_letters_unchecked(l)))
            .collect()
    }
}
