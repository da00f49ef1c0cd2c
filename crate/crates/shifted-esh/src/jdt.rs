//! Shifted jeu de taquin: inner and outer slides with the diagonal priming
//! exceptions, rectification and un-rectification, the `sh` bijection and its
//! per-symbol pieces, tableau switching, dual equivalence and the
//! rectification-based ballotness oracle.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::shifted_core::{Cell, Letter, MarkedTableau, ShiftedSkewShape, StrictPartition, Word};

/// One recorded inner slide: the inner corner slid into and the outer cell it
/// vacated.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SlideRecord {
    pub corner: Cell,
    pub vacated: Cell,
}

/// Dense working grid for sequences of slides.
struct Board {
    width: usize,
    height: usize,
    cells: Vec<Option<Letter>>,
}

impl Board {
    fn new(height: usize, width: usize) -> Board {
        Board { width, height, cells: vec![None; width * height] }
    }

    fn from_entries(entries: &BTreeMap<Cell, Letter>, min_height: usize, min_width: usize) -> Board {
        let height = entries.keys().map(|c| c.0 + 2).max().unwrap_or(1).max(min_height);
        let width = entries.keys().map(|c| c.1 + 2).max().unwrap_or(1).max(min_width);
        let mut b = Board::new(height, width);
        for (&c, &l) in entries {
            b.set(c, Some(l));
        }
        b
    }

    fn entries(&self) -> BTreeMap<Cell, Letter> {
        let mut out = BTreeMap::new();
        for r in 0..self.height {
            for c in r..self.width {
                if let Some(l) = self.cells[r * self.width + c] {
                    out.insert((r, c), l);
                }
            }
        }
        out
    }

    #[inline]
    fn get(&self, cell: Cell) -> Option<Letter> {
        let (r, c) = cell;
        if r < self.height && c < self.width && c >= r {
            self.cells[r * self.width + c]
        } else {
            None
        }
    }

    #[inline]
    fn set(&mut self, cell: Cell, v: Option<Letter>) {
        let (r, c) = cell;
        self.cells[r * self.width + c] = v;
    }

    /// Inner slide: the hole moves outward, exchanging with the smaller of its
    /// east and south neighbours. When `only` is set, the slide stops before
    /// moving any letter different from it. Returns the final hole position.
    fn slide_inner(&mut self, mut hole: Cell, only: Option<Letter>) -> Cell {
        loop {
            let (r, c) = hole;
            let east = self.get((r, c + 1)).map(|l| ((r, c + 1), l));
            let south = if r < c { self.get((r + 1, c)).map(|l| ((r + 1, c), l)) } else { None };
            let (src, y) = match (east, south) {
                (None, None) => return hole,
                (Some(e), None) => e,
                (None, Some(s)) => s,
                (Some(e), Some(s)) => {
                    // Smaller in standardization order. Equal unprimed letters:
                    // the south one is read first. Equal primed: the east one.
                    if e.1 < s.1 || (e.1 == s.1 && e.1.is_primed()) {
                        e
                    } else {
                        s
                    }
                }
            };
            if only.is_some_and(|t| t != y) {
                return hole;
            }
            let mut y = y;
            // A letter moving up out of the diagonal under a primed letter of
            // its own family that sits on the diagonal.
            if src.0 == src.1 && src.0 == r + 1 && c == src.1 {
                let xc = (r, r);
                if let Some(x) = self.get(xc) {
                    if x.value() == y.value() && x.is_primed() {
                        if y.is_primed() {
                            y = y.with_primed(false);
                        } else {
                            self.set(xc, Some(x.with_primed(false)));
                        }
                    }
                }
            }
            self.set(hole, Some(y));
            self.set(src, None);
            hole = src;
        }
    }

    /// Outer slide: the hole moves inward, exchanging with the larger of its
    /// north and west neighbours.
    fn slide_outer(&mut self, mut hole: Cell, only: Option<Letter>) -> Cell {
        loop {
            let (r, c) = hole;
            let north = if r > 0 { self.get((r - 1, c)).map(|l| ((r - 1, c), l)) } else { None };
            let west = if c > r { self.get((r, c - 1)).map(|l| ((r, c - 1), l)) } else { None };
            let (src, y) = match (north, west) {
                (None, None) => return hole,
                (Some(n), None) => n,
                (None, Some(w)) => w,
                (Some(n), Some(w)) => {
                    // Larger in standardization order. Equal unprimed letters:
                    // the north one is read later. Equal primed: the west one.
                    if n.1 > w.1 || (n.1 == w.1 && !n.1.is_primed()) {
                        n
                    } else {
                        w
                    }
                }
            };
            if only.is_some_and(|t| t != y) {
                return hole;
            }
            let mut y = y;
            // A letter moving right off the diagonal onto a letter of its own
            // family that sits on the diagonal just below.
            if src.0 == src.1 && src.0 == r && c == r + 1 {
                let xc = (r + 1, r + 1);
                if let Some(x) = self.get(xc) {
                    if x.value() == y.value() && !x.is_primed() {
                        if y.is_primed() {
                            self.set(xc, Some(x.with_primed(true)));
                        } else {
                            y = y.with_primed(true);
                        }
                    }
                }
            }
            self.set(hole, Some(y));
            self.set(src, None);
            hole = src;
        }
    }
}

fn no_marker(t: &MarkedTableau) -> Result<()> {
    if t.marker().is_some() {
        return Err(Error::Precondition("slides act on tableaux without a marker"));
    }
    Ok(())
}

/// Inner jeu de taquin slide into `corner`, a removable corner of the inner
/// shape. Returns the new tableau and the outer cell that was vacated.
pub fn inner_slide(t: &MarkedTableau, corner: Cell) -> Result<(MarkedTableau, Cell)> {
    no_marker(t)?;
    let shape = t.shape();
    if !shape.inner_corners().contains(&corner) {
        return Err(Error::Precondition("not an inner co-corner"));
    }
    let mut b = Board::from_entries(t.entries(), 0, 0);
    let vacated = b.slide_inner(corner, None);
    let inner = shape.inner().with_removed(corner.0)?;
    let outer = shape.outer().with_removed(vacated.0)?;
    let shape = ShiftedSkewShape::new(outer, inner)?;
    Ok((MarkedTableau::from_parts_unchecked(shape, b.entries(), None), vacated))
}

/// Outer jeu de taquin slide into `corner`, an addable cell of the outer
/// shape. Returns the new tableau and the inner cell that was vacated.
pub fn outer_slide(t: &MarkedTableau, corner: Cell) -> Result<(MarkedTableau, Cell)> {
    no_marker(t)?;
    let shape = t.shape();
    if !shape.outer_corners().contains(&corner) {
        return Err(Error::Precondition("not an outer co-corner"));
    }
    if shape.size() == 0 {
        return Err(Error::Precondition("outer slide of an empty region"));
    }
    let mut b = Board::from_entries(t.entries(), corner.0 + 2, corner.1 + 2);
    let vacated = b.slide_outer(corner, None);
    let outer = shape.outer().with_added(corner.0)?;
    let inner = shape.inner().with_added(vacated.0)?;
    let shape = ShiftedSkewShape::new(outer, inner)?;
    Ok((MarkedTableau::from_parts_unchecked(shape, b.entries(), None), vacated))
}

fn shift_up(t: &MarkedTableau) -> MarkedTableau {
    let shifted = t.map_letters(|l| Letter::new(l.value() + 1, l.is_primed()).expect("positive"));
    shifted.with_marker_as(Letter::unprimed(1))
}

fn shift_down(t: &MarkedTableau, had_marker: bool) -> MarkedTableau {
    let (shape, entries, _) = t.clone().into_parts();
    let mut marker = None;
    let mut out = BTreeMap::new();
    for (c, l) in entries {
        if had_marker && l.value() == 1 {
            marker = Some(c);
        } else {
            out.insert(c, Letter::new(l.value() - 1, l.is_primed()).expect("positive"));
        }
    }
    MarkedTableau::from_parts_unchecked(shape, out, marker)
}

/// Rectifies `t`, choosing at each stage the inner corner returned by
/// `choose` (an index into the list of current inner corners, listed top row
/// first). A marker, if present, is carried along as a letter smaller than
/// every other letter.
pub fn rectify_by(
    t: &MarkedTableau,
    mut choose: impl FnMut(&[Cell]) -> usize,
) -> Result<(MarkedTableau, Vec<SlideRecord>)> {
    let had_marker = t.marker().is_some();
    let work = if had_marker { shift_up(t) } else { t.clone() };
    if !work.is_semistandard() {
        return Err(Error::Precondition("rectification needs a semistandard tableau"));
    }
    let mut inner: Vec<usize> = work.shape().inner().parts().to_vec();
    let mut outer: Vec<usize> = work.shape().outer().parts().to_vec();
    let mut b = Board::from_entries(work.entries(), 0, 0);
    let mut record = Vec::new();
    while !inner.is_empty() {
        let corners: Vec<Cell> = (0..inner.len())
            .filter(|&k| inner[k] - 1 > inner.get(k + 1).copied().unwrap_or(0) || inner[k] == 1)
            .map(|k| (k, k + inner[k] - 1))
            .collect();
        let pick = choose(&corners);
        let corner = *corners.get(pick).ok_or(Error::Precondition("corner choice out of range"))?;
        let vacated = b.slide_inner(corner, None);
        inner[corner.0] -= 1;
        while inner.last() == Some(&0) {
            inner.pop();
        }
        outer[vacated.0] -= 1;
        while outer.last() == Some(&0) {
            outer.pop();
        }
        record.push(SlideRecord { corner, vacated });
    }
    let shape = ShiftedSkewShape::straight(StrictPartition::new(outer)?);
    let rect = MarkedTableau::from_parts_unchecked(shape, b.entries(), None);
    Ok((if had_marker { shift_down(&rect, true) } else { rect }, record))
}

/// Rectification with the default slide order (bottom-most inner corner
/// first), together with the slide record needed to undo it.
pub fn rectify(t: &MarkedTableau) -> Result<(MarkedTableau, Vec<SlideRecord>)> {
    rectify_by(t, |corners| corners.len() - 1)
}

/// The shape of the rectification of `t`.
pub fn rectification_shape(t: &MarkedTableau) -> Result<StrictPartition> {
    Ok(rectify(t)?.0.shape().outer().clone())
}

/// Undoes a rectification: performs outer slides into the recorded vacated
/// cells in reverse order. Each slide must end at its recorded corner. The
/// tableau may carry a marker, which is treated as smaller than every letter.
pub fn unrectify(t: &MarkedTableau, record: &[SlideRecord]) -> Result<MarkedTableau> {
    let had_marker = t.marker().is_some();
    let work = if had_marker { shift_up(t) } else { t.clone() };
    let mut inner: Vec<usize> = work.shape().inner().parts().to_vec();
    let mut outer: Vec<usize> = work.shape().outer().parts().to_vec();
    let max_row = record.iter().map(|s| s.vacated.0.max(s.corner.0)).max().unwrap_or(0);
    let max_col = record.iter().map(|s| s.vacated.1.max(s.corner.1)).max().unwrap_or(0);
    let mut b = Board::from_entries(work.entries(), max_row + 2, max_col + 2);
    for step in record.iter().rev() {
        if step.vacated.0 > outer.len() || step.vacated.1 != step.vacated.0 + outer.get(step.vacated.0).copied().unwrap_or(0) {
            return Err(Error::Precondition("slide record does not match the tableau"));
        }
        let end = b.slide_outer(step.vacated, None);
        if end != step.corner {
            return Err(Error::Invariant(alloc::format!(
                "un-rectification slide from {:?} ended at {:?}, expected {:?}",
                step.vacated, end, step.corner
            )));
        }
        if step.vacated.0 == outer.len() {
            outer.push(1);
        } else {
            outer[step.vacated.0] += 1;
        }
        if end.0 == inner.len() {
            inner.push(1);
        } else {
            inner[end.0] += 1;
        }
    }
    let shape = ShiftedSkewShape::new(StrictPartition::new(outer)?, StrictPartition::new(inner)?)?;
    let t = MarkedTableau::from_parts_unchecked(shape, b.entries(), None);
    Ok(if had_marker { shift_down(&t, true) } else { t })
}

/// Whether a straight tableau is the highest-weight tableau: row `k` (0-based)
/// consists entirely of unprimed letters `k + 1`.
pub fn is_highest_weight(t: &MarkedTableau) -> bool {
    t.shape().is_straight()
        && t.marker().is_none()
        && t.entries().iter().all(|(&(r, _), &l)| l == Letter::unprimed(r as u8 + 1))
}

/// Ballotness by definition: the word, realized as an anti-diagonal skew
/// tableau (one letter per row, read bottom to top), rectifies to a
/// highest-weight tableau.
pub fn is_ballot_oracle(w: &Word) -> bool {
    let w = w.without_marker().canonical_form();
    let letters = w.letters();
    let n = letters.len();
    if n == 0 {
        return true;
    }
    let c0 = 2 * n - 1;
    let mut b = Board::new(n + 1, c0 + 2);
    let mut inner: Vec<usize> = Vec::with_capacity(n);
    let mut outer: Vec<usize> = Vec::with_capacity(n);
    for r in 0..n {
        let col = c0 - r;
        b.set((r, col), Some(letters[n - 1 - r]));
        inner.push(c0 - 2 * r);
        outer.push(c0 - 2 * r + 1);
    }
    while !inner.is_empty() {
        let k = inner.len() - 1;
        let corner = (k, k + inner[k] - 1);
        let vacated = b.slide_inner(corner, None);
        inner[k] -= 1;
        if inner[k] == 0 {
            inner.pop();
        }
        outer[vacated.0] -= 1;
    }
    (0..n).all(|r| {
        (r..b.width).all(|c| match b.get((r, c)) {
            Some(l) => l == Letter::unprimed(r as u8 + 1),
            None => true,
        })
    })
}

/// The jeu de taquin bijection `sh`: slides an outer-co-corner marker inward
/// through the whole tableau.
pub fn sh(t: &MarkedTableau) -> Result<MarkedTableau> {
    let m = t.marker().ok_or(Error::Precondition("sh needs a marker"))?;
    let probe = t.shape().clone();
    if !removable_outer(&probe, m) {
        return Err(Error::Precondition("marker is not an outer co-corner"));
    }
    let mut b = Board::from_entries(t.entries(), 0, 0);
    let end = b.slide_outer(m, None);
    Ok(MarkedTableau::from_parts_unchecked(probe, b.entries(), Some(end)).canonical_form())
}

/// Inverse of [`sh`]: slides an inner-co-corner marker outward.
pub fn sh_inverse(t: &MarkedTableau) -> Result<MarkedTableau> {
    let m = t.marker().ok_or(Error::Precondition("sh inverse needs a marker"))?;
    let probe = t.shape().clone();
    if !addable_inner(&probe, m) {
        return Err(Error::Precondition("marker is not an inner co-corner"));
    }
    let mut b = Board::from_entries(t.entries(), 0, 0);
    let end = b.slide_inner(m, None);
    Ok(MarkedTableau::from_parts_unchecked(probe, b.entries(), Some(end)).canonical_form())
}

/// Whether `m` is a removable corner of the outer shape.
fn removable_outer(shape: &ShiftedSkewShape, m: Cell) -> bool {
    shape.removable_outer_cells().contains(&m)
}

/// Whether `m` is an addable corner of the inner shape lying in the shape.
fn addable_inner(shape: &ShiftedSkewShape, m: Cell) -> bool {
    shape.addable_inner_cells().contains(&m)
}

/// Canonical letters of a filling given by standardization labels: within a
/// family, labels increase along reading positions that first decrease
/// (primed letters) and then increase (unprimed letters).
fn destandardize(labels: &BTreeMap<Cell, usize>, family_of_label: &[u8]) -> BTreeMap<Cell, Letter> {
    let mut by_family: BTreeMap<u8, Vec<(usize, Cell)>> = BTreeMap::new();
    for (&c, &l) in labels {
        by_family.entry(family_of_label[l]).or_default().push((l, c));
    }
    let mut out = BTreeMap::new();
    for (fam, mut cells) in by_family {
        cells.sort();
        let first = (0..cells.len())
            .min_by(|&x, &y| crate::shifted_core::reading_cmp(cells[x].1, cells[y].1))
            .expect("non-empty family");
        for (k, &(_, c)) in cells.iter().enumerate() {
            out.insert(c, Letter::new(fam, k < first).expect("positive"));
        }
    }
    out
}

/// Partial slide of the marker through the entries equal to `symbol`, one
/// cell at a time on the standardization, re-deriving the letters after
/// every move (a move can change which letter is first in its family).
fn partial_slide(t: &MarkedTableau, symbol: Letter, outward: bool) -> Result<MarkedTableau> {
    let mut hole = t.marker().ok_or(Error::Precondition("partial slides need a marker"))?;
    let t = t.canonical_form();
    let cells: Vec<Cell> = t.shape().cells().into_iter().filter(|c| t.entries().contains_key(c)).collect();
    let letters: Vec<Letter> = cells.iter().map(|c| t.entries()[c]).collect();
    let mut family_of_label = vec![0u8; letters.len() + 1];
    let std = crate::shifted_core::standardize_letters(&letters);
    for (k, &l) in std.iter().enumerate() {
        family_of_label[l] = letters[k].value();
    }
    let mut labels: BTreeMap<Cell, usize> = cells.into_iter().zip(std).collect();
    loop {
        let current = destandardize(&labels, &family_of_label);
        let (r, c) = hole;
        let candidates: Vec<Cell> = if outward {
            let mut v = vec![(r, c + 1)];
            if r < c {
                v.push((r + 1, c));
            }
            v
        } else {
            let mut v = Vec::new();
            if r > 0 {
                v.push((r - 1, c));
            }
            if c > r {
                v.push((r, c - 1));
            }
            v
        };
        let pick = candidates.into_iter().filter(|n| labels.contains_key(n)).reduce(|x, y| {
            let better = if outward { labels[&y] < labels[&x] } else { labels[&y] > labels[&x] };
            if better { y } else { x }
        });
        match pick {
            Some(src) if current[&src] == symbol => {
                let l = labels.remove(&src).expect("present");
                labels.insert(hole, l);
                hole = src;
            }
            _ => {
                return MarkedTableau::new(t.shape().clone(), current, Some(hole)).map(|x| x.canonical_form());
            }
        }
    }
}

/// The partial slide `sh_t`: slides the marker inward through the entries
/// equal to `symbol` only.
pub fn sh_t(t: &MarkedTableau, symbol: Letter) -> Result<MarkedTableau> {
    partial_slide(t, symbol, false)
}

/// The partial inverse slide of [`sh_t`]: slides the marker outward through
/// the entries equal to `symbol` only.
pub fn sh_t_inverse(t: &MarkedTableau, symbol: Letter) -> Result<MarkedTableau> {
    partial_slide(t, symbol, true)
}

/// Tableau switching of `(s, t)`, where `t` extends `s`: for the cells of `s`
/// from largest to smallest in standardization order, `t` is slid inward into
/// that cell and the letter of `s` is placed in the vacated cell. A marker in
/// `s` counts as larger than every letter of `s`. Returns `(t̃, s̃)`.
pub fn switch(s: &MarkedTableau, t: &MarkedTableau) -> Result<(MarkedTableau, MarkedTableau)> {
    if s.shape().outer() != t.shape().inner() {
        return Err(Error::Precondition("the second tableau must extend the first"));
    }
    if t.marker().is_some() {
        return Err(Error::Precondition("only the first tableau may carry a marker"));
    }
    let order = standard_order(s);
    let mut b = Board::from_entries(t.entries(), 0, 0);
    let mut moved: BTreeMap<Cell, Letter> = BTreeMap::new();
    let mut moved_marker = None;
    let mut t_inner: Vec<usize> = s.shape().outer().parts().to_vec();
    let mut t_outer: Vec<usize> = t.shape().outer().parts().to_vec();
    for cell in order.into_iter().rev() {
        let vacated = b.slide_inner(cell, None);
        t_inner[cell.0] -= 1;
        t_outer[vacated.0] -= 1;
        match s.get(cell) {
            Some(l) => {
                moved.insert(vacated, l);
            }
            None => moved_marker = Some(vacated),
        }
    }
    while t_inner.last() == Some(&0) {
        t_inner.pop();
    }
    while t_outer.last() == Some(&0) {
        t_outer.pop();
    }
    let t_shape = ShiftedSkewShape::new(StrictPartition::new(t_outer.clone())?, s.shape().inner().clone())?;
    let s_shape = ShiftedSkewShape::new(t.shape().outer().clone(), StrictPartition::new(t_outer)?)?;
    let t_new = MarkedTableau::from_parts_unchecked(t_shape, b.entries(), None);
    let s_new = MarkedTableau::from_parts_unchecked(s_shape, moved, moved_marker);
    Ok((t_new, s_new))
}

/// Cells of `t` in standardization order (a marker last).
fn standard_order(t: &MarkedTableau) -> Vec<Cell> {
    let cells: Vec<Cell> = t.shape().cells().into_iter().filter(|c| t.entries().contains_key(c)).collect();
    let letters: Vec<Letter> = cells.iter().map(|c| t.entries()[c]).collect();
    let labels = crate::shifted_core::standardize_letters(&letters);
    let mut order: Vec<(usize, Cell)> = labels.into_iter().zip(cells).collect();
    order.sort();
    let mut out: Vec<Cell> = order.into_iter().map(|(_, c)| c).collect();
    if let Some(m) = t.marker() {
        out.push(m);
    }
    out
}

/// The standardization of `t` as a tableau with distinct unprimed letters.
pub fn standardization(t: &MarkedTableau) -> MarkedTableau {
    let order = standard_order(t);
    let entries: BTreeMap<Cell, Letter> =
        order.into_iter().enumerate().map(|(k, c)| (c, Letter::unprimed((k + 1) as u8))).collect();
    MarkedTableau::from_parts_unchecked(t.shape().clone(), entries, None)
}

/// Largest number of cells accepted by [`dual_equivalent`].
pub const DUAL_EQUIVALENCE_MAX_CELLS: usize = 8;

/// Largest ambient inner region accepted by [`dual_equivalent`].
pub const DUAL_EQUIVALENCE_MAX_INNER: usize = 21;

/// Whether two fillings of the same shape are dual equivalent, decided by
/// brute force: their standardizations must vacate the same cells under
/// every order of inner slides down to a straight shape, and under every order
/// of outer slides up to the smallest containing staircase.
pub fn dual_equivalent(a: &MarkedTableau, b: &MarkedTableau) -> Result<bool> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch);
    }
    if a.shape().size() > DUAL_EQUIVALENCE_MAX_CELLS || a.shape().inner().size() > DUAL_EQUIVALENCE_MAX_INNER {
        return Err(Error::Unsupported("dual equivalence brute force is limited to small shapes"));
    }
    let sa = standardization(&a.with_marker_as(Letter::unprimed(u8::MAX)));
    let sb = standardization(&b.with_marker_as(Letter::unprimed(u8::MAX)));
    if sa == sb {
        return Ok(true);
    }
    let mut memo = BTreeSet::new();
    if !inner_orders_agree(&sa, &sb, &mut memo)? {
        return Ok(false);
    }
    let n = a.shape().outer().part(0);
    let mut memo = BTreeSet::new();
    outer_orders_agree(&sa, &sb, n, &mut memo)
}

fn inner_orders_agree(
    a: &MarkedTableau,
    b: &MarkedTableau,
    memo: &mut BTreeSet<(MarkedTableau, MarkedTableau)>,
) -> Result<bool> {
    if !memo.insert((a.clone(), b.clone())) {
        return Ok(true);
    }
    for corner in a.shape().inner_corners() {
        let (a2, va) = inner_slide(a, corner)?;
        let (b2, vb) = inner_slide(b, corner)?;
        if va != vb || !inner_orders_agree(&a2, &b2, memo)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn outer_orders_agree(
    a: &MarkedTableau,
    b: &MarkedTableau,
    n: usize,
    memo: &mut BTreeSet<(MarkedTableau, MarkedTableau)>,
) -> Result<bool> {
    if !memo.insert((a.clone(), b.clone())) {
        return Ok(true);
    }
    for corner in a.shape().outer_corners() {
        if corner.1 >= n {
            continue;
        }
        let (a2, va) = outer_slide(a, corner)?;
        let (b2, vb) = outer_slide(b, corner)?;
        if va != vb || !outer_orders_agree(&a2, &b2, n, memo)? {
            return Ok(false);
        }
    }
    Ok(true)
}
