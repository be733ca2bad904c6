//! Simple closed curves on the sphere meeting a shadow only in a few double
//! points, passing each one diagonally (from a corner to the opposite
//! corner), so that every side receives one end of each branch.
//!
//! A circle is separating when smoothing its double points along it leaves
//! exactly one closed curve on each side: the circle of a nugatory crossing
//! that appears once the other points are spliced away.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::realize::{matching_string, permute_matching, Corner, EmbeddedShadow};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CutCircle {
    /// entry corner at each visited vertex, in circle order; the exit is the opposite corner
    stops: Vec<Corner>,
    /// crossing labels in circle order
    pub vertices: Vec<u32>,
    /// face entered before each stop
    pub corridor: Vec<usize>,
    /// crossings strictly inside each of the two disks
    pub sides: [Vec<u32>; 2],
    pub separating: bool,
}

impl CutCircle {
    pub fn len(&self) -> usize {
        self.stops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stops.is_empty()
    }

    pub fn stops(&self) -> &[Corner] {
        &self.stops
    }
}

/// How the strands reconnect on each side of a cut circle, canonical under
/// rotation and reversal of the circle and mirroring of the sphere.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PatternClass(pub String);

impl PatternClass {
    /// Whether circles of this class are separating.
    pub fn is_separating(&self) -> bool {
        let mut parts = self.0.split('|').skip(1);
        parts.all(|side| {
            let mut matching = vec![0usize; 2 * side.split('-').count()];
            for pair in side.split('-') {
                let d: Vec<usize> = pair.bytes().map(|b| (b - b'0') as usize).collect();
                matching[d[0]] = d[1];
                matching[d[1]] = d[0];
            }
            closes_to_one_loop(&matching)
        })
    }
}

impl fmt::Display for PatternClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn exit_corner(c: Corner) -> Corner {
    Corner {
        vertex: c.vertex,
        slot: (c.slot + 2) % 4,
    }
}

/// Half-edges on the two sides of the circle, listed along its direction.
fn side_slots(e: &EmbeddedShadow, stops: &[Corner]) -> [Vec<usize>; 2] {
    let mut a = Vec::with_capacity(2 * stops.len());
    let mut b = Vec::with_capacity(2 * stops.len());
    for s in stops {
        a.push(e.half_edge_at(s.vertex, s.slot + 1));
        a.push(e.half_edge_at(s.vertex, s.slot + 2));
        b.push(e.half_edge_at(s.vertex, s.slot));
        b.push(e.half_edge_at(s.vertex, s.slot + 3));
    }
    [a, b]
}

/// Follows the curve from each slot into its side. Returns the induced
/// matching on the slots and the crossings met, or `None` if the curve leaves
/// the side anywhere but a listed slot.
fn walk_side(e: &EmbeddedShadow, slots: &[usize], cut: &BTreeSet<usize>) -> Option<(Vec<usize>, BTreeSet<u32>)> {
    let mut matching = Vec::with_capacity(slots.len());
    let mut inside = BTreeSet::new();
    for &s in slots {
        let mut h = s;
        loop {
            let g = e.other_end(h);
            let v = e.vertex_of(g);
            if cut.contains(&v) {
                matching.push(slots.iter().position(|&x| x == g)?);
                break;
            }
            inside.insert(e.label(v));
            h = e.straight(g);
        }
    }
    Some((matching, inside))
}

fn crosses(a: (usize, usize), b: (usize, usize), len: usize) -> bool {
    let between = |x: usize, lo: usize, hi: usize| {
        let d = (x + len - lo) % len;
        d > 0 && d < (hi + len - lo) % len
    };
    between(b.0, a.0, a.1) != between(b.1, a.0, a.1)
}

/// All cut circles through exactly `m` double points, up to reparametrization,
/// sorted by vertex sequence.
pub fn find_cut_circles(e: &EmbeddedShadow, m: usize) -> Result<Vec<CutCircle>> {
    if !(1..=3).contains(&m) {
        return Err(Error::InvalidArgument(format!("cut circles through {m} points are not supported")));
    }
    let n = e.crossing_count();
    if m > n {
        return Ok(Vec::new());
    }
    let mut keys: BTreeSet<Vec<Corner>> = BTreeSet::new();
    let mut stops: Vec<Corner> = Vec::with_capacity(m);
    extend(e, m, &mut stops, &mut keys);
    let mut out: Vec<CutCircle> = keys
        .into_iter()
        .filter_map(|stops| build_circle(e, stops))
        .collect();
    out.sort();
    Ok(out)
}

fn extend(e: &EmbeddedShadow, m: usize, stops: &mut Vec<Corner>, keys: &mut BTreeSet<Vec<Corner>>) {
    if stops.len() == m {
        let first = stops[0];
        let last = *stops.last().expect("non-empty");
        if e.face_of_corner(exit_corner(last)).0 != e.face_of_corner(first).0 {
            return;
        }
        if !arcs_disjoint(e, stops) {
            return;
        }
        // reversal: same start, opposite direction
        let mut rev: Vec<Corner> = vec![exit_corner(first)];
        rev.extend(stops[1..].iter().rev().map(|&c| exit_corner(c)));
        let key = std::cmp::min(stops.clone(), rev);
        keys.insert(key);
        return;
    }
    let n = e.crossing_count();
    // the first stop is the smallest vertex of the circle
    let lo = stops.first().map_or(0, |c| c.vertex + 1);
    for v in lo..n {
        if stops.iter().any(|c| c.vertex == v) {
            continue;
        }
        if stops.is_empty() && v > n - m {
            break;
        }
        for slot in 0..4 {
            let c = Corner { vertex: v, slot };
            if let Some(&prev) = stops.last() {
                if e.face_of_corner(exit_corner(prev)).0 != e.face_of_corner(c).0 {
                    continue;
                }
            }
            stops.push(c);
            extend(e, m, stops, keys);
            stops.pop();
        }
    }
}

/// Arcs sharing a face must not cross inside it.
fn arcs_disjoint(e: &EmbeddedShadow, stops: &[Corner]) -> bool {
    let m = stops.len();
    let mut by_face: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for i in 0..m {
        let (f, from) = e.face_of_corner(exit_corner(stops[i]));
        let (_, to) = e.face_of_corner(stops[(i + 1) % m]);
        by_face.entry(f).or_default().push((from, to));
    }
    by_face.iter().all(|(&f, arcs)| {
        let len = e.faces()[f].len();
        arcs.iter().enumerate().all(|(i, &a)| {
            arcs[i + 1..].iter().all(|&b| !crosses(a, b, len))
        })
    })
}

/// The strands of one side closed up by the smoothings at the cut points
/// (slot `2k` joined to `2k + 1`) form a single loop.
fn closes_to_one_loop(matching: &[usize]) -> bool {
    let mut seen = 0;
    let mut x = 0;
    loop {
        x = matching[x] ^ 1;
        seen += 2;
        if x == 0 {
            break;
        }
    }
    seen == matching.len()
}

fn build_circle(e: &EmbeddedShadow, stops: Vec<Corner>) -> Option<CutCircle> {
    let cut: BTreeSet<usize> = stops.iter().map(|c| c.vertex).collect();
    let [a, b] = side_slots(e, &stops);
    let (ma, in_a) = walk_side(e, &a, &cut)?;
    let (mb, in_b) = walk_side(e, &b, &cut)?;
    if !in_a.is_disjoint(&in_b) {
        return None;
    }
    Some(CutCircle {
        vertices: stops.iter().map(|c| e.label(c.vertex)).collect(),
        corridor: stops.iter().map(|&c| e.face_of_corner(c).0).collect(),
        sides: [in_a.into_iter().collect(), in_b.into_iter().collect()],
        separating: closes_to_one_loop(&ma) && closes_to_one_loop(&mb),
        stops,
    })
}

pub fn pattern_class(c: &CutCircle, e: &EmbeddedShadow) -> PatternClass {
    let cut: BTreeSet<usize> = c.stops.iter().map(|s| s.vertex).collect();
    let [a, b] = side_slots(e, &c.stops);
    let (ma, _) = walk_side(e, &a, &cut).expect("cut circle from this embedding");
    let (mb, _) = walk_side(e, &b, &cut).expect("cut circle from this embedding");
    let len = ma.len();
    let m = c.stops.len();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for r in 0..m {
        let rot = move |i: usize| (i + 2 * r) % len;
        let rev = move |i: usize| (2 * len - 1 - i) % len;
        let candidates = [
            (permute_matching(&ma, rot), permute_matching(&mb, rot)),
            (permute_matching(&mb, rot), permute_matching(&ma, rot)),
            (
                permute_matching(&mb, move |i| rot(rev(i))),
                permute_matching(&ma, move |i| rot(rev(i))),
            ),
            (
                permute_matching(&ma, move |i| rot(rev(i))),
                permute_matching(&mb, move |i| rot(rev(i))),
            ),
        ];
        for cand in candidates {
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    let (ba, bb) = best.expect("non-empty group");
    PatternClass(format!("{m}|{}|{}", matching_string(&ba), matching_string(&bb)))
}
