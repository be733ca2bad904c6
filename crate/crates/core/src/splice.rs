//! Simultaneous splice states.
//!
//! The curve is cut into `2n` directed arcs, arc `j` running from position `j`
//! to position `j + 1`. Half-edge `2p` is the end of the arc entering position
//! `p`, `2p + 1` the end of the arc leaving it. A state pairs up the four
//! half-edges at every crossing; components are the closed traversals.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::realize::other_end;
use crate::word::GaussWord;

/// Splice type relative to the reference orientation of the word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpliceKind {
    /// Seifert splice: joins each incoming end to the other passage's outgoing end.
    Oriented,
    /// Non-Seifert splice: joins the two incoming ends and the two outgoing ends.
    Disoriented,
}

impl SpliceKind {
    pub fn code(self) -> char {
        match self {
            SpliceKind::Oriented => 'o',
            SpliceKind::Disoriented => 'd',
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpliceSpec {
    assignment: BTreeMap<u32, SpliceKind>,
}

impl SpliceSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn uniform(labels: &[u32], kind: SpliceKind) -> Self {
        SpliceSpec {
            assignment: labels.iter().map(|&l| (l, kind)).collect(),
        }
    }

    pub fn with(mut self, label: u32, kind: SpliceKind) -> Self {
        self.assignment.insert(label, kind);
        self
    }

    pub fn insert(&mut self, label: u32, kind: SpliceKind) {
        self.assignment.insert(label, kind);
    }

    pub fn get(&self, label: u32) -> Option<SpliceKind> {
        self.assignment.get(&label).copied()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, SpliceKind)> + '_ {
        self.assignment.iter().map(|(&l, &k)| (l, k))
    }

    /// Parses `"1:o,2:d"`; an empty string is the empty spec.
    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = SpliceSpec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (l, k) = item
                .split_once(':')
                .ok_or_else(|| Error::InvalidArgument(format!("expected label:kind, got {item:?}")))?;
            let label: u32 = l
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad label {l:?}")))?;
            let kind = match k.trim() {
                "o" | "oriented" | "seifert" => SpliceKind::Oriented,
                "d" | "disoriented" | "non-seifert" => SpliceKind::Disoriented,
                other => return Err(Error::InvalidArgument(format!("bad splice kind {other:?}"))),
            };
            if spec.assignment.insert(label, kind).is_some() {
                return Err(Error::InvalidArgument(format!("crossing {label} assigned twice")));
            }
        }
        Ok(spec)
    }
}

impl fmt::Display for SpliceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .map(|(l, k)| format!("{l}:{}", k.code()))
            .collect();
        f.write_str(&parts.join(","))
    }
}

/// The multi-component curve left after a simultaneous splice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowState {
    components: Vec<Vec<u32>>,
}

impl ShadowState {
    /// Each component as the cyclic sequence of unresolved crossings it passes.
    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// The induced Gauss word when exactly one component remains.
    pub fn single_word(&self) -> Option<GaussWord> {
        match self.components.as_slice() {
            [c] => Some(GaussWord::from_letters_unchecked(c.clone())),
            _ => None,
        }
    }
}

pub fn resolve_state(w: &GaussWord, spec: &SpliceSpec) -> Result<ShadowState> {
    for (l, _) in spec.iter() {
        if !w.contains_label(l) {
            return Err(Error::UnknownCrossing(l));
        }
    }
    let len = w.len();
    let partner = w.partners();
    // link[h]: the half-edge the traversal continues with after arriving at h
    let mut link = vec![0usize; 2 * len];
    for (p, &q) in partner.iter().enumerate() {
        let (inp, outp, inq, outq) = (2 * p, 2 * p + 1, 2 * q, 2 * q + 1);
        match spec.get(w.letters()[p]) {
            None => {
                link[inp] = outp;
                link[outp] = inp;
            }
            Some(SpliceKind::Oriented) => {
                link[inp] = outq;
                link[outq] = inp;
            }
            Some(SpliceKind::Disoriented) => {
                link[inp] = inq;
                link[outp] = outq;
            }
        }
    }
    let mut used_arc = vec![false; len];
    let mut components = Vec::new();
    for start_arc in 0..len {
        if used_arc[start_arc] {
            continue;
        }
        let start = 2 * start_arc + 1;
        let mut seq = Vec::new();
        let mut h = start;
        loop {
            used_arc[arc_of(h, len)] = true;
            let g = other_end(h, len);
            let next = link[g];
            if next / 2 == g / 2 {
                seq.push(w.letters()[g / 2]);
            }
            h = next;
            if h == start {
                break;
            }
        }
        components.push(seq);
    }
    Ok(ShadowState { components })
}

fn arc_of(h: usize, len: usize) -> usize {
    let p = h / 2;
    if h % 2 == 1 {
        p
    } else {
        (p + len - 1) % len
    }
}

/// Number of circles after a non-Seifert splice at every double point.
pub fn circle_number(w: &GaussWord) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let spec = SpliceSpec::uniform(&w.labels(), SpliceKind::Disoriented);
    Ok(resolve_state(w, &spec)?.component_count())
}

/// Number of Seifert circles.
pub fn seifert_circle_count(w: &GaussWord) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let spec = SpliceSpec::uniform(&w.labels(), SpliceKind::Oriented);
    Ok(resolve_state(w, &spec)?.component_count())
}

/// Non-Seifert splice at one crossing, orientation taken from `w` itself.
pub fn splice_disoriented(w: &GaussWord, label: u32) -> Result<GaussWord> {
    let state = resolve_state(w, &SpliceSpec::new().with(label, SpliceKind::Disoriented))?;
    Ok(state
        .single_word()
        .expect("a non-Seifert splice at a self-crossing keeps one component"))
}

/// The (2, 2m+1)-torus shadow `1 2 .. 2m+1 1 2 .. 2m+1`.
pub fn make_torus_word(m: usize) -> Result<GaussWord> {
    if m < 1 {
        return Err(Error::InvalidArgument("torus parameter m must be >= 1".into()));
    }
    let k = 2 * m as u32 + 1;
    GaussWord::new((1..=k).chain(1..=k).collect())
}
