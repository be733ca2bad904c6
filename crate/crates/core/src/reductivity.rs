//! The four reductivities and their certificates.
//!
//! `t`, `y` and `i` splice a set of crossings simultaneously, with types fixed
//! against the orientation of the input word. `r` splices one crossing at a
//! time, each non-Seifert splice taken against the orientation of the curve it
//! is applied to. The target is always a single curve with at least one double
//! point and a nugatory crossing.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::realize::check_realizable;
use crate::splice::{resolve_state, splice_disoriented, SpliceKind, SpliceSpec};
use crate::word::{for_each_combination, GaussWord};

pub const DEFAULT_R_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductivityKind {
    /// any splices, simultaneously
    T,
    /// non-Seifert splices, recursively
    R,
    /// non-Seifert splices, simultaneously
    Y,
    /// Seifert splices, simultaneously
    I,
}

impl ReductivityKind {
    pub const ALL: [ReductivityKind; 4] = [
        ReductivityKind::T,
        ReductivityKind::R,
        ReductivityKind::Y,
        ReductivityKind::I,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductivityKind::T => "t",
            ReductivityKind::R => "r",
            ReductivityKind::Y => "y",
            ReductivityKind::I => "i",
        }
    }
}

impl fmt::Display for ReductivityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductivityKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t" => Ok(ReductivityKind::T),
            "r" => Ok(ReductivityKind::R),
            "y" => Ok(ReductivityKind::Y),
            "i" => Ok(ReductivityKind::I),
            _ => Err(Error::InvalidArgument(format!("unknown reductivity {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductivityValue {
    Exact(usize),
    /// exhaustive search found no witness of any size
    NotFound,
    /// no witness up to the given size; larger sizes were not searched
    AboveCap(usize),
}

impl ReductivityValue {
    pub fn exact(self) -> Option<usize> {
        match self {
            ReductivityValue::Exact(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for ReductivityValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductivityValue::Exact(v) => write!(f, "{v}"),
            ReductivityValue::NotFound => f.write_str("none"),
            ReductivityValue::AboveCap(c) => write!(f, ">{c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Simultaneous(SpliceSpec),
    Sequence(Vec<u32>),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Simultaneous(s) => write!(f, "{s}"),
            Witness::Sequence(seq) => {
                let parts: Vec<String> = seq.iter().map(u32::to_string).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl Witness {
    pub fn parse(kind: ReductivityKind, text: &str) -> Result<Self> {
        match kind {
            ReductivityKind::R => text
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.trim_end_matches(":d")
                        .parse::<u32>()
                        .map_err(|_| Error::InvalidArgument(format!("bad label {s:?}")))
                })
                .collect::<Result<Vec<_>>>()
                .map(Witness::Sequence),
            _ => SpliceSpec::parse(text).map(Witness::Simultaneous),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Witness::Simultaneous(s) => s.len(),
            Witness::Sequence(s) => s.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductivityCertificate {
    pub kind: ReductivityKind,
    pub value: ReductivityValue,
    /// present iff `value` is exact
    pub witness: Option<Witness>,
}

#[derive(Serialize, Deserialize)]
struct CertificateRepr {
    kind: ReductivityKind,
    status: String,
    value: Option<usize>,
    witness: Option<String>,
}

impl Serialize for ReductivityCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (status, value) = match self.value {
            ReductivityValue::Exact(v) => ("exact", Some(v)),
            ReductivityValue::NotFound => ("not_found", None),
            ReductivityValue::AboveCap(c) => ("above_cap", Some(c)),
        };
        CertificateRepr {
            kind: self.kind,
            status: status.into(),
            value,
            witness: self.witness.as_ref().map(|w| w.to_string()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ReductivityCertificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = CertificateRepr::deserialize(d)?;
        let value = match (r.status.as_str(), r.value) {
            ("exact", Some(v)) => ReductivityValue::Exact(v),
            ("not_found", _) => ReductivityValue::NotFound,
            ("above_cap", Some(c)) => ReductivityValue::AboveCap(c),
            (s, _) => return Err(D::Error::custom(format!("bad certificate status {s:?}"))),
        };
        let witness = r
            .witness
            .map(|w| Witness::parse(r.kind, &w))
            .transpose()
            .map_err(D::Error::custom)?;
        Ok(ReductivityCertificate {
            kind: r.kind,
            value,
            witness,
        })
    }
}

/// The target of every reductivity: one curve, at least one double point, a nugatory crossing.
pub(crate) fn is_target(w: &GaussWord) -> bool {
    !w.is_empty() && w.is_reducible().unwrap_or(false)
}

fn simultaneous_target(w: &GaussWord, spec: &SpliceSpec) -> bool {
    resolve_state(w, spec)
        .ok()
        .and_then(|s| s.single_word())
        .is_some_and(|u| is_target(&u))
}

/// Minimal reductivity of the given kind, searching witnesses of size up to `cap`.
pub fn reductivity(w: &GaussWord, kind: ReductivityKind, cap: usize) -> Result<ReductivityCertificate> {
    if cap == 0 {
        return Err(Error::InvalidArgument("cap must be positive".into()));
    }
    check_realizable(w)?;
    Ok(reductivity_unchecked(w, kind, cap))
}

/// As [`reductivity`], for a word already known to be realizable.
pub fn reductivity_unchecked(w: &GaussWord, kind: ReductivityKind, cap: usize) -> ReductivityCertificate {
    if is_target(w) {
        let witness = match kind {
            ReductivityKind::R => Witness::Sequence(Vec::new()),
            _ => Witness::Simultaneous(SpliceSpec::new()),
        };
        return ReductivityCertificate {
            kind,
            value: ReductivityValue::Exact(0),
            witness: Some(witness),
        };
    }
    let found = match kind {
        ReductivityKind::R => recursive_search(w, cap),
        _ => simultaneous_search(w, kind, cap),
    };
    let max_size = w.crossing_count().saturating_sub(1);
    match found {
        Some(witness) => ReductivityCertificate {
            kind,
            value: ReductivityValue::Exact(witness.size()),
            witness: Some(witness),
        },
        None if cap < max_size => ReductivityCertificate {
            kind,
            value: ReductivityValue::AboveCap(cap),
            witness: None,
        },
        None => ReductivityCertificate {
            kind,
            value: ReductivityValue::NotFound,
            witness: None,
        },
    }
}

/// Subsets by increasing size, each in lexicographic order; for `t` the
/// per-crossing types run oriented before disoriented.
fn simultaneous_search(w: &GaussWord, kind: ReductivityKind, cap: usize) -> Option<Witness> {
    let labels = w.labels();
    let max_size = labels.len().saturating_sub(1).min(cap);
    for size in 1..=max_size {
        if kind == ReductivityKind::I && size % 2 == 1 {
            // a single Seifert splice changes the component count by one
            continue;
        }
        let mut found = None;
        for_each_combination(labels.len(), size, &mut |idx| {
            let chosen: Vec<u32> = idx.iter().map(|&i| labels[i]).collect();
            let specs: Vec<SpliceSpec> = match kind {
                ReductivityKind::Y => vec![SpliceSpec::uniform(&chosen, SpliceKind::Disoriented)],
                ReductivityKind::I => vec![SpliceSpec::uniform(&chosen, SpliceKind::Oriented)],
                _ => (0u32..1 << size)
                    .map(|mask| {
                        let mut s = SpliceSpec::new();
                        for (j, &l) in chosen.iter().enumerate() {
                            let kind = if (mask >> (size - 1 - j)) & 1 == 0 {
                                SpliceKind::Oriented
                            } else {
                                SpliceKind::Disoriented
                            };
                            s.insert(l, kind);
                        }
                        s
                    })
                    .collect(),
            };
            found = specs.into_iter().find(|s| simultaneous_target(w, s));
            found.is_some()
        });
        if let Some(spec) = found {
            return Some(Witness::Simultaneous(spec));
        }
    }
    None
}

/// Breadth-first over recursively spliced curves, deduplicated by canonical form.
fn recursive_search(w: &GaussWord, cap: usize) -> Option<Witness> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(w.canonical_key().to_vec());
    let mut level = vec![(w.clone(), Vec::<u32>::new())];
    for _ in 0..cap {
        let mut next = Vec::new();
        for (word, path) in &level {
            for l in word.labels() {
                let child = splice_disoriented(word, l).expect("label of word");
                if child.is_empty() {
                    continue;
                }
                let mut p = path.clone();
                p.push(l);
                if is_target(&child) {
                    return Some(Witness::Sequence(p));
                }
                if seen.insert(child.canonical_key().to_vec()) {
                    next.push((child, p));
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        level = next;
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub valid: bool,
    /// the single curve reached, if the witness leaves exactly one component
    pub final_word: Option<GaussWord>,
    pub reason: Option<String>,
}

/// Replays a certificate's witness on `w`.
pub fn replay_certificate(w: &GaussWord, cert: &ReductivityCertificate) -> Result<Replay> {
    let Some(witness) = &cert.witness else {
        return Ok(Replay {
            valid: false,
            final_word: None,
            reason: Some("certificate carries no witness".into()),
        });
    };
    match witness {
        Witness::Simultaneous(spec) => {
            let state = resolve_state(w, spec)?;
            let final_word = state.single_word();
            let wrong_type = spec.iter().find(|&(_, k)| match cert.kind {
                ReductivityKind::Y => k != SpliceKind::Disoriented,
                ReductivityKind::I => k != SpliceKind::Oriented,
                _ => false,
            });
            let reason = if let Some((l, _)) = wrong_type {
                Some(format!("crossing {l} has a splice type not allowed for {}", cert.kind))
            } else if cert.kind == ReductivityKind::R {
                Some("r certificates need a splice sequence".into())
            } else {
                match &final_word {
                    None => Some(format!("{} components", state.component_count())),
                    Some(u) if !is_target(u) => Some("result is not reducible".into()),
                    Some(_) => None,
                }
            };
            Ok(Replay {
                valid: reason.is_none(),
                final_word,
                reason,
            })
        }
        Witness::Sequence(seq) => {
            let mut current = w.clone();
            let mut reason = None;
            for &l in seq {
                if !current.contains_label(l) {
                    return Err(Error::UnknownCrossing(l));
                }
                let state = resolve_state(
                    &current,
                    &SpliceSpec::new().with(l, SpliceKind::Disoriented),
                )?;
                match state.single_word() {
                    Some(u) => current = u,
                    None => {
                        return Ok(Replay {
                            valid: false,
                            final_word: None,
                            reason: Some(format!("splice at {l} disconnects the curve")),
                        })
                    }
                }
            }
            if cert.kind != ReductivityKind::R {
                reason = Some(format!("{} certificates need a splice set", cert.kind));
            } else if !is_target(&current) {
                reason = Some("result is not reducible".into());
            }
            Ok(Replay {
                valid: reason.is_none(),
                final_word: Some(current),
                reason,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::splice::make_torus_word;

    fn w(s: &str) -> GaussWord {
        GaussWord::parse(s).unwrap()
    }

    fn value(word: &GaussWord, kind: ReductivityKind) -> ReductivityValue {
        reductivity(word, kind, DEFAULT_R_CAP).unwrap().value
    }

    #[test]
    fn trefoil_r_certificate() {
        let c = reductivity(&w("1 2 3 1 2 3"), ReductivityKind::R, 6).unwrap();
        assert_eq!(c.value, ReductivityValue::Exact(1));
        assert_eq!(c.witness, Some(Witness::Sequence(vec![1])));
        let replay = replay_certificate(&w("1 2 3 1 2 3"), &c).unwrap();
        assert!(replay.valid);
        assert_eq!(replay.final_word.unwrap().letters(), &[2, 3, 3, 2]);
    }

    #[test]
    fn trefoil_i_certificate() {
        let c = reductivity(&w("1 2 3 1 2 3"), ReductivityKind::I, 6).unwrap();
        assert_eq!(c.value, ReductivityValue::Exact(2));
        let expected = SpliceSpec::new()
            .with(1, SpliceKind::Oriented)
            .with(2, SpliceKind::Oriented);
        assert_eq!(c.witness, Some(Witness::Simultaneous(expected)));
        let replay = replay_certificate(&w("1 2 3 1 2 3"), &c).unwrap();
        assert_eq!(replay.final_word.unwrap().letters(), &[3, 3]);
    }

    #[test]
    fn trefoil_all_kinds() {
        let t = w("1 2 3 1 2 3");
        assert_eq!(value(&t, ReductivityKind::T), ReductivityValue::Exact(1));
        assert_eq!(value(&t, ReductivityKind::Y), ReductivityValue::Exact(1));
        // oriented < disoriented: the first single-crossing witness is {1: disoriented}
        let c = reductivity(&t, ReductivityKind::T, 6).unwrap();
        assert_eq!(
            c.witness,
            Some(Witness::Simultaneous(SpliceSpec::new().with(1, SpliceKind::Disoriented)))
        );
    }

    #[test]
    fn torus_five() {
        let x = make_torus_word(2).unwrap();
        assert_eq!(value(&x, ReductivityKind::I), ReductivityValue::Exact(4));
        let c = reductivity(&x, ReductivityKind::T, 6).unwrap();
        assert_eq!(c.value, ReductivityValue::Exact(1));
        let replay = replay_certificate(&x, &c).unwrap();
        assert_eq!(replay.final_word.unwrap().letters(), &[2, 3, 4, 5, 5, 4, 3, 2]);
    }

    #[test]
    fn already_reducible_is_zero() {
        for kind in ReductivityKind::ALL {
            let c = reductivity(&w("1 1"), kind, 6).unwrap();
            assert_eq!(c.value, ReductivityValue::Exact(0));
            assert_eq!(c.witness.map(|w| w.size()), Some(0));
        }
    }

    #[test]
    fn cap_reports_above_cap() {
        let x = make_torus_word(2).unwrap();
        let c = reductivity(&x, ReductivityKind::I, 2).unwrap();
        assert_eq!(c.value, ReductivityValue::AboveCap(2));
        assert!(c.witness.is_none());
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            reductivity(&w("1 2 1 2"), ReductivityKind::T, 6),
            Err(Error::NotRealizable(_))
        ));
        assert_eq!(
            reductivity(&GaussWord::empty(), ReductivityKind::T, 6),
            Err(Error::EmptyWord)
        );
    }

    #[test]
    fn replay_rejections() {
        let t = w("1 2 3 1 2 3");
        let split = ReductivityCertificate {
            kind: ReductivityKind::T,
            value: ReductivityValue::Exact(1),
            witness: Some(Witness::Simultaneous(SpliceSpec::new().with(1, SpliceKind::Oriented))),
        };
        let r = replay_certificate(&t, &split).unwrap();
        assert!(!r.valid);
        assert!(r.final_word.is_none());

        let empty = ReductivityCertificate {
            kind: ReductivityKind::T,
            value: ReductivityValue::Exact(0),
            witness: Some(Witness::Simultaneous(SpliceSpec::new())),
        };
        assert!(!replay_certificate(&t, &empty).unwrap().valid);

        let unknown = ReductivityCertificate {
            kind: ReductivityKind::R,
            value: ReductivityValue::Exact(1),
            witness: Some(Witness::Sequence(vec![9])),
        };
        assert_eq!(replay_certificate(&t, &unknown), Err(Error::UnknownCrossing(9)));
    }

    #[test]
    fn certificate_json_roundtrip() {
        let c = reductivity(&w("1 2 3 1 2 3"), ReductivityKind::T, 6).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"kind":"t","status":"exact","value":1,"witness":"1:d"}"#);
        let back: ReductivityCertificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
