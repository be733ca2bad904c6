//! Slow, direct reimplementations used as oracles. Nothing here calls into the
//! library except for realizability, which has no short independent check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use knot_reductivity::realize::check_realizable;
use knot_reductivity::GaussWord;

pub type Word = Vec<u32>;

/// Every double-occurrence word on `n` letters, labelled by first occurrence.
pub fn all_words(n: usize) -> Vec<Word> {
    fn go(n: usize, cur: &mut Word, count: &mut Vec<u8>, next: u32, out: &mut Vec<Word>) {
        if cur.len() == 2 * n {
            out.push(cur.clone());
            return;
        }
        for l in 1..next {
            if count[l as usize] == 1 {
                count[l as usize] = 2;
                cur.push(l);
                go(n, cur, count, next, out);
                cur.pop();
                count[l as usize] = 1;
            }
        }
        if (next as usize) <= n {
            count[next as usize] = 1;
            cur.push(next);
            go(n, cur, count, next + 1, out);
            cur.pop();
            count[next as usize] = 0;
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![0; n + 2], 1, &mut out);
    out
}

pub fn relabel_first_occurrence(w: &[u32]) -> Word {
    let mut map = std::collections::HashMap::new();
    w.iter()
        .map(|&x| {
            let k = map.len() as u32 + 1;
            *map.entry(x).or_insert(k)
        })
        .collect()
}

/// Least relabelled rotation of the word or its reverse.
pub fn canon(w: &[u32]) -> Word {
    let len = w.len();
    let mut best: Option<Word> = None;
    for rev in [false, true] {
        let base: Word = if rev { w.iter().rev().copied().collect() } else { w.to_vec() };
        for s in 0..len.max(1) {
            let rot: Word = (0..len).map(|k| base[(s + k) % len]).collect();
            let cand = relabel_first_occurrence(&rot);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

fn occurrences(w: &[u32], l: u32) -> (usize, usize) {
    let mut it = w.iter().enumerate().filter(|(_, &x)| x == l).map(|(k, _)| k);
    (it.next().unwrap(), it.next().unwrap())
}

/// Letters strictly between the two occurrences of `l` form a closed sub-word.
pub fn is_nugatory(w: &[u32], l: u32) -> bool {
    let (a, b) = occurrences(w, l);
    let inside = &w[a + 1..b];
    inside.iter().all(|x| inside.iter().filter(|y| *y == x).count() == 2)
}

pub fn reducible(w: &[u32]) -> bool {
    w.iter().any(|&l| is_nugatory(w, l))
}

/// Some proper cyclic interval is closed and leaves a letter outside.
pub fn composite(w: &[u32]) -> bool {
    let len = w.len();
    for start in 0..len {
        for size in 2..len.saturating_sub(1) {
            let seg: Vec<u32> = (0..size).map(|k| w[(start + k) % len]).collect();
            if seg.iter().all(|x| seg.iter().filter(|y| *y == x).count() == 2) {
                return true;
            }
        }
    }
    false
}

pub fn realizable(w: &[u32]) -> bool {
    GaussWord::new(w.to_vec()).and_then(|g| check_realizable(&g)).is_ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Smooth {
    Oriented,
    Disoriented,
}

/// A letter occurrence and whether it is currently traversed in the
/// direction of the original curve.
type Signed = (u32, bool);

fn reverse_flip(v: &[Signed]) -> Vec<Signed> {
    v.iter().rev().map(|&(l, f)| (l, !f)).collect()
}

/// Rewrites the component list for one smoothing at `l`, with the smoothing
/// type measured against the original orientation.
fn smooth_once(comps: &mut Vec<Vec<Signed>>, l: u32, kind: Smooth) {
    let mut hits = Vec::new();
    for (c, comp) in comps.iter().enumerate() {
        for (k, &(x, f)) in comp.iter().enumerate() {
            if x == l {
                hits.push((c, k, f));
            }
        }
    }
    assert_eq!(hits.len(), 2, "letter {l} must occur twice");
    let (c1, k1, f1) = hits[0];
    let (c2, k2, f2) = hits[1];
    let local = if f1 == f2 {
        kind
    } else if kind == Smooth::Oriented {
        Smooth::Disoriented
    } else {
        Smooth::Oriented
    };
    if c1 == c2 {
        let comp = comps.remove(c1);
        let u: Vec<Signed> = comp[k1 + 1..k2].to_vec();
        let v: Vec<Signed> = comp[k2 + 1..].iter().chain(&comp[..k1]).copied().collect();
        match local {
            Smooth::Oriented => {
                comps.push(u);
                comps.push(v);
            }
            Smooth::Disoriented => {
                let mut joined = v;
                joined.extend(reverse_flip(&u));
                comps.push(joined);
            }
        }
    } else {
        let after = |c: usize, k: usize| -> Vec<Signed> {
            let comp = &comps[c];
            comp[k + 1..].iter().chain(&comp[..k]).copied().collect()
        };
        let p = after(c1, k1);
        let q = after(c2, k2);
        let mut joined = p;
        match local {
            Smooth::Oriented => joined.extend(q),
            Smooth::Disoriented => joined.extend(reverse_flip(&q)),
        }
        let (hi, lo) = (c1.max(c2), c1.min(c2));
        comps.remove(hi);
        comps.remove(lo);
        comps.push(joined);
    }
}

/// Applies the smoothings in the given order; returns the unsigned components.
pub fn smooth(w: &[u32], moves: &[(u32, Smooth)]) -> Vec<Word> {
    let mut comps = vec![w.iter().map(|&l| (l, true)).collect::<Vec<Signed>>()];
    for &(l, k) in moves {
        smooth_once(&mut comps, l, k);
    }
    comps
        .into_iter()
        .map(|c| c.into_iter().map(|(l, _)| l).collect())
        .collect()
}

fn letters(w: &[u32]) -> Vec<u32> {
    let set: BTreeSet<u32> = w.iter().copied().collect();
    set.into_iter().collect()
}

/// Minimal number of simultaneous smoothings, from the allowed types, that
/// leave one nonempty reducible curve. `None` when no assignment works.
pub fn naive_simultaneous(w: &[u32], allowed: &[Smooth]) -> Option<usize> {
    if reducible(w) {
        return Some(0);
    }
    let ls = letters(w);
    let choices = allowed.len() + 1;
    let total = choices.pow(ls.len() as u32);
    let mut best: Option<usize> = None;
    for code in 0..total {
        let mut c = code;
        let mut moves = Vec::new();
        for &l in &ls {
            let pick = c % choices;
            c /= choices;
            if pick > 0 {
                moves.push((l, allowed[pick - 1]));
            }
        }
        if best.is_some_and(|b| moves.len() >= b) {
            continue;
        }
        let comps = smooth(w, &moves);
        if comps.len() == 1 && !comps[0].is_empty() && reducible(&comps[0]) {
            best = Some(moves.len());
        }
    }
    best
}

pub fn naive_t(w: &[u32]) -> Option<usize> {
    naive_simultaneous(w, &[Smooth::Oriented, Smooth::Disoriented])
}

pub fn naive_y(w: &[u32]) -> Option<usize> {
    naive_simultaneous(w, &[Smooth::Disoriented])
}

pub fn naive_i(w: &[u32]) -> Option<usize> {
    naive_simultaneous(w, &[Smooth::Oriented])
}

/// Depth of the shallowest reducible curve reachable by disoriented
/// smoothings, each taken relative to the current curve.
pub fn naive_r(w: &[u32]) -> Option<usize> {
    fn go(w: &[u32], depth: usize, limit: usize) -> bool {
        if !w.is_empty() && reducible(w) {
            return true;
        }
        if depth == limit || w.is_empty() {
            return false;
        }
        letters(w).into_iter().any(|l| {
            let next = smooth(w, &[(l, Smooth::Disoriented)]);
            go(&next[0], depth + 1, limit)
        })
    }
    (0..=w.len() / 2).find(|&d| go(w, 0, d))
}

/// Component count with every crossing smoothed the same way.
pub fn uniform_count(w: &[u32], kind: Smooth) -> usize {
    let moves: Vec<(u32, Smooth)> = letters(w).into_iter().map(|l| (l, kind)).collect();
    smooth(w, &moves).len()
}

/// Canonical realizable words with the given filters, by brute force.
pub fn brute_canonical(n: usize, prime: bool, reduced: bool) -> BTreeSet<Word> {
    all_words(n)
        .into_iter()
        .filter(|w| (!reduced || !reducible(w)) && (!prime || !composite(w)))
        .filter(|w| realizable(w))
        .map(|w| canon(&w))
        .collect()
}

pub fn gauss(w: &[u32]) -> GaussWord {
    GaussWord::new(w.to_vec()).expect("valid word")
}
