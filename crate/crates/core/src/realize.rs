//! Spherical realizability by rotation-system search, and the face census of
//! a realized shadow.
//!
//! The shadow of a word of length `2n` is a 4-valent graph with one vertex per
//! crossing and one arc per consecutive pair of positions. Half-edges are
//! numbered by position: `2p` is the end of the arc entering position `p`,
//! `2p + 1` the end of the arc leaving it. A vertex rotation is transversal
//! when the two passages through the vertex alternate, which leaves two
//! choices per vertex (mirror images of each other).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::GaussWord;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Refusal {
    /// Some chord is interlaced with an odd number of chords.
    Parity { crossing: u32, degree: usize },
    /// Every transversal rotation assignment has positive genus.
    NoPlanarRotation,
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refusal::Parity { crossing, degree } => write!(
                f,
                "chord {crossing} is interlaced with {degree} chords (odd)"
            ),
            Refusal::NoPlanarRotation => f.write_str("no genus-0 rotation system exists"),
        }
    }
}

pub(crate) fn other_end(h: usize, len: usize) -> usize {
    let p = h / 2;
    if h % 2 == 1 {
        2 * ((p + 1) % len)
    } else {
        2 * ((p + len - 1) % len) + 1
    }
}

/// A corner of a vertex: the angle between rotation slots `slot` and `slot + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Corner {
    pub vertex: usize,
    pub slot: usize,
}

/// A word together with a genus-0 rotation system and its faces.
#[derive(Clone, Debug)]
pub struct EmbeddedShadow {
    word: GaussWord,
    /// crossing labels in order of first occurrence; vertex `v` is `labels[v]`
    labels: Vec<u32>,
    vertex_of_pos: Vec<usize>,
    flips: Vec<bool>,
    rotation: Vec<[usize; 4]>,
    slot_of: Vec<usize>,
    faces: Vec<Vec<usize>>,
    corner_face: BTreeMap<Corner, (usize, usize)>,
}

impl EmbeddedShadow {
    fn build(word: &GaussWord, flips: &[bool]) -> EmbeddedShadow {
        let len = word.len();
        let mut labels = Vec::new();
        let mut vertex_of_label = BTreeMap::new();
        let mut vertex_of_pos = vec![0; len];
        let mut passages: Vec<(usize, usize)> = Vec::new();
        for (p, &l) in word.letters().iter().enumerate() {
            match vertex_of_label.get(&l) {
                Some(&v) => {
                    vertex_of_pos[p] = v;
                    passages[v].1 = p;
                }
                None => {
                    let v = labels.len();
                    labels.push(l);
                    vertex_of_label.insert(l, v);
                    vertex_of_pos[p] = v;
                    passages.push((p, p));
                }
            }
        }
        let mut rotation = Vec::with_capacity(labels.len());
        let mut slot_of = vec![0; 2 * len];
        for (v, &(p, q)) in passages.iter().enumerate() {
            let rot = if flips[v] {
                [2 * p, 2 * q + 1, 2 * p + 1, 2 * q]
            } else {
                [2 * p, 2 * q, 2 * p + 1, 2 * q + 1]
            };
            for (k, &h) in rot.iter().enumerate() {
                slot_of[h] = k;
            }
            rotation.push(rot);
        }
        let mut e = EmbeddedShadow {
            word: word.clone(),
            labels,
            vertex_of_pos,
            flips: flips.to_vec(),
            rotation,
            slot_of,
            faces: Vec::new(),
            corner_face: BTreeMap::new(),
        };
        e.trace_faces();
        e
    }

    fn trace_faces(&mut self) {
        let darts = 2 * self.word.len();
        let mut seen = vec![false; darts];
        for start in 0..darts {
            if seen[start] {
                continue;
            }
            let fid = self.faces.len();
            let mut walk = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                let g = self.other_end(h);
                let corner = Corner {
                    vertex: self.vertex_of(g),
                    slot: self.slot_of[g],
                };
                self.corner_face.insert(corner, (fid, walk.len()));
                walk.push(h);
                h = self.next_in_rotation(g);
            }
            self.faces.push(walk);
        }
    }

    pub fn word(&self) -> &GaussWord {
        &self.word
    }

    pub fn crossing_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, vertex: usize) -> u32 {
        self.labels[vertex]
    }

    pub fn vertex_of_label(&self, label: u32) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of_pos[h / 2]
    }

    /// The far end of the arc carrying half-edge `h`.
    pub fn other_end(&self, h: usize) -> usize {
        other_end(h, self.word.len())
    }

    /// The half-edge continuing the same passage straight through the vertex.
    pub fn straight(&self, h: usize) -> usize {
        h ^ 1
    }

    pub fn rotation(&self, vertex: usize) -> [usize; 4] {
        self.rotation[vertex]
    }

    pub fn slot_of(&self, h: usize) -> usize {
        self.slot_of[h]
    }

    pub fn half_edge_at(&self, vertex: usize, slot: usize) -> usize {
        self.rotation[vertex][slot % 4]
    }

    fn next_in_rotation(&self, h: usize) -> usize {
        let v = self.vertex_of(h);
        self.rotation[v][(self.slot_of[h] + 1) % 4]
    }

    /// Each face as its cyclic list of leaving half-edges (darts).
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    /// Face id and position in that face's walk of the given corner.
    pub fn face_of_corner(&self, c: Corner) -> (usize, usize) {
        self.corner_face[&Corner {
            vertex: c.vertex,
            slot: c.slot % 4,
        }]
    }

    /// Corner passed after traversing dart `h` of a face walk.
    pub fn corner_after(&self, h: usize) -> Corner {
        let g = self.other_end(h);
        Corner {
            vertex: self.vertex_of(g),
            slot: self.slot_of[g],
        }
    }

    /// Per-vertex rotation tag: `0` for `(in, in', out, out')`, `1` for the mirror order.
    pub fn rotation_tag(&self) -> String {
        self.flips.iter().map(|&f| if f { '1' } else { '0' }).collect()
    }

    pub fn euler_characteristic(&self) -> isize {
        let v = self.labels.len() as isize;
        let e = self.word.len() as isize;
        v - e + self.faces.len() as isize
    }

    pub fn face_census(&self) -> FaceCensus {
        face_census(self)
    }
}

/// Parity filter, then the lexicographically least genus-0 rotation
/// assignment with the first vertex fixed.
pub fn check_realizable(w: &GaussWord) -> Result<EmbeddedShadow> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    parity_check(w)?;
    let n = w.crossing_count();
    let free = n - 1;
    let mut flips = vec![false; n];
    for mask in 0u64..(1u64 << free) {
        for (k, f) in flips.iter_mut().enumerate().skip(1) {
            *f = (mask >> (free - k)) & 1 == 1;
        }
        if let Some(e) = planar_embedding(w, &flips) {
            return Ok(e);
        }
    }
    Err(Error::NotRealizable(Refusal::NoPlanarRotation))
}

/// Every genus-0 rotation assignment with the first vertex fixed, in lexicographic order.
pub fn all_planar_embeddings(w: &GaussWord) -> Result<Vec<EmbeddedShadow>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    parity_check(w)?;
    let n = w.crossing_count();
    let free = n - 1;
    let mut out = Vec::new();
    let mut flips = vec![false; n];
    for mask in 0u64..(1u64 << free) {
        for (k, f) in flips.iter_mut().enumerate().skip(1) {
            *f = (mask >> (free - k)) & 1 == 1;
        }
        if let Some(e) = planar_embedding(w, &flips) {
            out.push(e);
        }
    }
    Ok(out)
}

fn parity_check(w: &GaussWord) -> Result<()> {
    let g = w.interlacement();
    for &l in g.labels() {
        let d = g.degree(l);
        if d % 2 == 1 {
            return Err(Error::NotRealizable(Refusal::Parity {
                crossing: l,
                degree: d,
            }));
        }
    }
    Ok(())
}

fn planar_embedding(w: &GaussWord, flips: &[bool]) -> Option<EmbeddedShadow> {
    let e = EmbeddedShadow::build(w, flips);
    (e.faces.len() == w.crossing_count() + 2).then_some(e)
}

/// Connection class of a 3-gon: how the curve outside the triangle pairs up
/// its six outgoing half-edges, canonical under the triangle's symmetries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TrigonClass(pub String);

impl fmt::Display for TrigonClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCensus {
    pub monogons: usize,
    pub bigons_coherent: usize,
    pub bigons_incoherent: usize,
    /// one entry per 3-gon, sorted
    pub trigons: Vec<TrigonClass>,
    /// k-gons with k >= 4, keyed by k
    pub larger: BTreeMap<usize, usize>,
    /// faces whose boundary repeats a vertex, keyed by edge count
    pub degenerate: BTreeMap<usize, usize>,
}

impl FaceCensus {
    pub fn bigons(&self) -> usize {
        self.bigons_coherent + self.bigons_incoherent
    }

    pub fn face_count(&self) -> usize {
        self.monogons
            + self.bigons()
            + self.trigons.len()
            + self.larger.values().sum::<usize>()
            + self.degenerate.values().sum::<usize>()
    }
}

pub fn face_census(e: &EmbeddedShadow) -> FaceCensus {
    let mut census = FaceCensus::default();
    for walk in e.faces() {
        let k = walk.len();
        let distinct: BTreeSet<usize> = walk.iter().map(|&h| e.vertex_of(h)).collect();
        if distinct.len() != k {
            *census.degenerate.entry(k).or_default() += 1;
            continue;
        }
        match k {
            1 => census.monogons += 1,
            2 => {
                // odd half-edges leave along the curve's direction
                if walk[0] % 2 == walk[1] % 2 {
                    census.bigons_coherent += 1;
                } else {
                    census.bigons_incoherent += 1;
                }
            }
            3 => census.trigons.push(trigon_class(e, walk)),
            _ => *census.larger.entry(k).or_default() += 1,
        }
    }
    census.trigons.sort();
    census
}

/// Pairs the outgoing half-edges `slots` (2 per visited vertex, listed along
/// a cyclic walk) by following the curve outside the walk's vertex set.
pub(crate) fn outside_matching(e: &EmbeddedShadow, slots: &[usize]) -> Vec<usize> {
    let vertices: BTreeSet<usize> = slots.iter().map(|&h| e.vertex_of(h)).collect();
    slots
        .iter()
        .map(|&s| {
            let mut h = s;
            loop {
                let g = e.other_end(h);
                if vertices.contains(&e.vertex_of(g)) {
                    return slots
                        .iter()
                        .position(|&x| x == g)
                        .expect("curve re-enters through an outgoing half-edge");
                }
                h = e.straight(g);
            }
        })
        .collect()
}

/// Applies a slot permutation to a matching given as a partner array.
pub(crate) fn permute_matching(m: &[usize], sigma: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut out = vec![0; m.len()];
    for (i, &j) in m.iter().enumerate() {
        out[sigma(i)] = sigma(j);
    }
    out
}

pub(crate) fn matching_string(m: &[usize]) -> String {
    let mut pairs: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(i, &j)| *i < j)
        .map(|(i, &j)| format!("{i}{j}"))
        .collect();
    pairs.sort();
    pairs.join("-")
}

fn trigon_class(e: &EmbeddedShadow, walk: &[usize]) -> TrigonClass {
    let mut slots = Vec::with_capacity(6);
    for &h in walk {
        let g = e.other_end(h);
        let v = e.vertex_of(g);
        let k = e.slot_of(g);
        slots.push(e.half_edge_at(v, k + 2));
        slots.push(e.half_edge_at(v, k + 3));
    }
    let m = outside_matching(e, &slots);
    let best = (0..3)
        .flat_map(|r| {
            [false, true].into_iter().map(move |refl| {
                move |i: usize| {
                    let i = if refl { (7 - i) % 6 } else { i };
                    (i + 2 * r) % 6
                }
            })
        })
        .map(|sigma| permute_matching(&m, sigma))
        .min()
        .expect("non-empty group");
    TrigonClass(matching_string(&best))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GaussWord {
        GaussWord::parse(s).unwrap()
    }

    #[test]
    fn parity_refusal() {
        let err = check_realizable(&w("1 2 1 2")).unwrap_err();
        assert!(matches!(err, Error::NotRealizable(Refusal::Parity { .. })));
    }

    #[test]
    fn trefoil_realizes_with_five_faces() {
        let e = check_realizable(&w("1 2 3 1 2 3")).unwrap();
        assert_eq!(e.faces().len(), 5);
        assert_eq!(e.euler_characteristic(), 2);
    }

    #[test]
    fn kink_has_three_faces() {
        let e = check_realizable(&w("1 1")).unwrap();
        assert_eq!(e.faces().len(), 3);
        let c = e.face_census();
        assert_eq!(c.monogons, 2);
        assert_eq!(c.degenerate.get(&2), Some(&1));
        assert_eq!(c.face_count(), 3);
    }

    #[test]
    fn parity_is_not_sufficient() {
        // every chord has even degree but the word is not planar
        let x = w("1 2 3 4 5 1 4 5 2 3");
        let g = x.interlacement();
        assert!(g.labels().iter().all(|&l| g.degree(l).is_multiple_of(2)));
        assert_eq!(
            check_realizable(&x).unwrap_err(),
            Error::NotRealizable(Refusal::NoPlanarRotation)
        );
    }

    #[test]
    fn trefoil_census() {
        let c = check_realizable(&w("1 2 3 1 2 3")).unwrap().face_census();
        assert_eq!(c.monogons, 0);
        assert_eq!(c.bigons_coherent, 0);
        assert_eq!(c.bigons_incoherent, 3);
        assert_eq!(c.trigons.len(), 2);
        assert_eq!(c.trigons[0], c.trigons[1]);
    }

    #[test]
    fn torus_five_census() {
        let c = check_realizable(&w("1 2 3 4 5 1 2 3 4 5"))
            .unwrap()
            .face_census();
        assert_eq!(c.bigons(), 5);
        assert_eq!(c.bigons_coherent, 0);
        assert_eq!(c.larger.get(&5), Some(&2));
        assert_eq!(c.face_count(), 7);
    }

    #[test]
    fn coherent_bigon_detected() {
        // 1 2 ... 2 1 pattern on a realizable reduced word
        let x = w("1 2 3 4 2 1 4 3");
        let e = check_realizable(&x).unwrap();
        assert!(e.face_census().bigons_coherent >= 1);
    }
}
