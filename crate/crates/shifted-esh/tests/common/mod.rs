//! Shared helpers and independent oracles for integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use shifted_esh::shifted_core::{Cell, Letter, MarkedTableau, ShiftedSkewShape, StrictPartition, Word};

/// All canonical words of length `n` over families `1..=k`.
pub fn canonical_words(n: usize, k: u8) -> Vec<Word> {
    let alphabet: Vec<Letter> = (1..=k).flat_map(|v| [Letter::primed(v), Letter::unprimed(v)]).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, alphabet: &[Letter], cur: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if cur.len() == n {
            out.push(Word::new(cur.clone()));
            return;
        }
        for &l in alphabet {
            let seen = cur.iter().any(|c| c.value() == l.value());
            if !seen && l.is_primed() {
                continue;
            }
            cur.push(l);
            rec(n, alphabet, cur, out);
            cur.pop();
        }
    }
    rec(n, &alphabet, &mut cur, &mut out);
    out
}

/// Destandardization: given reading-order labels (1-based, a permutation)
/// and the content, rebuild the canonical word whose standardization they
/// are. Within a family the labels occupy reading positions that first
/// decrease (primed letters) and then increase (unprimed letters); the
/// earliest position is the first letter of the family and is unprimed.
pub fn destandardize(labels: &[usize], content: &[usize]) -> Option<Word> {
    let n = labels.len();
    let mut pos_of = vec![0usize; n + 1];
    for (p, &l) in labels.iter().enumerate() {
        pos_of[l] = p;
    }
    let mut letters = vec![Letter::unprimed(1); n];
    let mut next = 1;
    for (f, &count) in content.iter().enumerate() {
        let fam: Vec<usize> = (next..next + count).map(|l| pos_of[l]).collect();
        next += count;
        if fam.is_empty() {
            continue;
        }
        let valley = (0..fam.len()).min_by_key(|&k| fam[k]).unwrap();
        if !fam[..=valley].windows(2).all(|w| w[0] > w[1]) || !fam[valley..].windows(2).all(|w| w[0] < w[1]) {
            return None;
        }
        for (k, &p) in fam.iter().enumerate() {
            letters[p] = Letter::new(f as u8 + 1, k < valley).unwrap();
        }
    }
    Some(Word::new(letters))
}

/// Standard inner slide on distinct labels: the smaller of east/south moves.
pub fn standard_inner_slide(entries: &mut BTreeMap<Cell, usize>, mut hole: Cell) -> Cell {
    loop {
        let (r, c) = hole;
        let east = entries.get(&(r, c + 1)).map(|&v| ((r, c + 1), v));
        let south = if r < c { entries.get(&(r + 1, c)).map(|&v| ((r + 1, c), v)) } else { None };
        let pick = match (east, south) {
            (None, None) => return hole,
            (Some(e), None) => e,
            (None, Some(s)) => s,
            (Some(e), Some(s)) => if e.1 < s.1 { e } else { s },
        };
        entries.remove(&pick.0);
        entries.insert(hole, pick.1);
        hole = pick.0;
    }
}

/// Standard outer slide on distinct labels: the larger of north/west moves.
pub fn standard_outer_slide(entries: &mut BTreeMap<Cell, usize>, mut hole: Cell) -> Cell {
    loop {
        let (r, c) = hole;
        let north = if r > 0 { entries.get(&(r - 1, c)).map(|&v| ((r - 1, c), v)) } else { None };
        let west = if c > r { entries.get(&(r, c - 1)).map(|&v| ((r, c - 1), v)) } else { None };
        let pick = match (north, west) {
            (None, None) => return hole,
            (Some(n), None) => n,
            (None, Some(w)) => w,
            (Some(n), Some(w)) => if n.1 > w.1 { n } else { w },
        };
        entries.remove(&pick.0);
        entries.insert(hole, pick.1);
        hole = pick.0;
    }
}

/// Standardization labels of a marker-free tableau, keyed by cell.
pub fn std_labels(t: &MarkedTableau) -> BTreeMap<Cell, usize> {
    let cells: Vec<Cell> = t.shape().cells().into_iter().filter(|c| t.entries().contains_key(c)).collect();
    let word = Word::new(cells.iter().map(|c| t.entries()[c]).collect());
    cells.into_iter().zip(word.standardize()).collect()
}

/// Rebuilds a tableau on `shape` from labels and content via destandardization.
pub fn tableau_from_labels(shape: &ShiftedSkewShape, labels: &BTreeMap<Cell, usize>, content: &[usize]) -> Option<MarkedTableau> {
    let cells = shape.cells();
    let ls: Vec<usize> = cells.iter().map(|c| labels[c]).collect();
    let w = destandardize(&ls, content)?;
    MarkedTableau::from_reading_word(shape.clone(), &w).ok()
}

pub fn sp(s: &str) -> StrictPartition {
    s.parse().unwrap()
}

pub fn word(s: &str) -> Word {
    s.parse().unwrap()
}

/// Small skew shapes with at most `max_cells` cells and outer part at most `max_first`.
pub fn small_shapes(max_cells: usize, max_first: usize) -> Vec<ShiftedSkewShape> {
    let mut out = Vec::new();
    for n in 1..=(max_first * (max_first + 1) / 2) {
        for outer in StrictPartition::all_of_size(n) {
            if outer.part(0) > max_first {
                continue;
            }
            for inner in outer.subpartitions() {
                let shape = ShiftedSkewShape::new(outer.clone(), inner).unwrap();
                if shape.size() >= 1 && shape.size() <= max_cells {
                    out.push(shape);
                }
            }
        }
    }
    out
}

/// Compositions of `n` into `k` nonnegative parts.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
