//! Strict partitions, shifted skew shapes, primed words, standardization and
//! semistandard shifted tableaux, together with the exhaustive generators the
//! rest of the crate is tested against.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A cell `(row, col)` of a shifted diagram. Row 0 is the top row, and `col`
/// is the absolute column, so row `k` starts at column `k`; the main diagonal
/// is `row == col`.
pub type Cell = (usize, usize);

/// Whether `cell` lies on the main diagonal of the shifted staircase.
pub fn on_diagonal(cell: Cell) -> bool {
    cell.0 == cell.1
}

/// Compares two cells in reading order (rows bottom to top, each row left to
/// right).
pub fn reading_cmp(a: Cell, b: Cell) -> Ordering {
    b.0.cmp(&a.0).then(a.1.cmp(&b.1))
}

// ---------------------------------------------------------------------------
// Letters
// ---------------------------------------------------------------------------

/// A letter of the totally ordered primed alphabet `1' < 1 < 2' < 2 < ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter {
    value: u8,
    primed: bool,
}

impl Letter {
    /// Builds a letter; `value` must be at least 1.
    pub fn new(value: u8, primed: bool) -> Result<Letter> {
        if value == 0 {
            return Err(Error::ZeroLetter);
        }
        Ok(Letter { value, primed })
    }

    /// The unprimed letter `i`. Panics if `value == 0`.
    pub const fn unprimed(value: u8) -> Letter {
        assert!(value > 0, "letter values start at 1");
        Letter { value, primed: false }
    }

    /// The primed letter `i'`. Panics if `value == 0`.
    pub const fn primed(value: u8) -> Letter {
        assert!(value > 0, "letter values start at 1");
        Letter { value, primed: true }
    }

    /// The family `i` of the letter (`i` for both `i` and `i'`).
    pub const fn value(self) -> u8 {
        self.value
    }

    pub const fn is_primed(self) -> bool {
        self.primed
    }

    /// Position in the alphabet: `1' -> 1`, `1 -> 2`, `2' -> 3`, ...
    pub const fn rank(self) -> u16 {
        2 * self.value as u16 - self.primed as u16
    }

    /// Inverse of [`Letter::rank`]. Panics on rank 0.
    pub fn from_rank(rank: u16) -> Letter {
        assert!(rank > 0, "rank 0 is not a letter");
        let value = rank.div_ceil(2);
        Letter { value: value as u8, primed: rank % 2 == 1 }
    }

    pub const fn with_primed(self, primed: bool) -> Letter {
        Letter { value: self.value, primed }
    }

    pub const fn toggled(self) -> Letter {
        Letter { value: self.value, primed: !self.primed }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.primed {
            write!(f, "{}'", self.value)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Letter> {
        match parse_token(s, 1)? {
            Token::Letter(l) => Ok(l),
            Token::Marker => Err(Error::Parse { column: 1, message: "expected a letter, found the marker".to_string() }),
        }
    }
}

enum Token {
    Letter(Letter),
    Marker,
}

fn parse_token(tok: &str, column: usize) -> Result<Token> {
    if tok == "X" || tok == "\u{22a0}" {
        return Ok(Token::Marker);
    }
    let digits_end = tok.find(|c: char| !c.is_ascii_digit()).unwrap_or(tok.len());
    if digits_end == 0 {
        return Err(Error::Parse { column, message: format!("expected a digit or X, found {tok:?}") });
    }
    let rest = &tok[digits_end..];
    let primed = match rest {
        "" => false,
        "'" | "\u{2032}" => true,
        _ => {
            return Err(Error::Parse {
                column: column + digits_end,
                message: format!("unexpected {rest:?} after letter value"),
            })
        }
    };
    let value: u8 = tok[..digits_end]
        .parse()
        .map_err(|_| Error::Parse { column, message: format!("letter value {:?} out of range", &tok[..digits_end]) })?;
    if value == 0 {
        return Err(Error::Parse { column, message: "letter values start at 1".to_string() });
    }
    Ok(Token::Letter(Letter { value, primed }))
}

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

/// Puts a letter sequence into canonical form in place: the first letter of
/// each family (in reading order) becomes unprimed.
pub fn canonicalize_letters(letters: &mut [Letter]) {
    let mut seen: u64 = 0;
    let mut seen_high: BTreeSet<u8> = BTreeSet::new();
    for l in letters.iter_mut() {
        let first = if l.value < 64 {
            let bit = 1u64 << l.value;
            let first = seen & bit == 0;
            seen |= bit;
            first
        } else {
            seen_high.insert(l.value)
        };
        if first {
            l.primed = false;
        }
    }
}

/// Standardization of a letter sequence: labels `1..=n`, ties among equal
/// unprimed letters broken left to right and among equal primed letters right
/// to left.
pub fn standardize_letters(letters: &[Letter]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..letters.len()).collect();
    order.sort_by(|&a, &b| std_cmp(letters[a], a, letters[b], b));
    let mut labels = vec![0; letters.len()];
    for (label, &pos) in order.iter().enumerate() {
        labels[pos] = label + 1;
    }
    labels
}

/// Standardization order between the letter `a` at position `pa` and the
/// letter `b` at position `pb` of the same word.
pub fn std_cmp(a: Letter, pa: usize, b: Letter, pb: usize) -> Ordering {
    a.cmp(&b).then_with(|| if a.primed { pb.cmp(&pa) } else { pa.cmp(&pb) })
}

/// A word over the primed alphabet, optionally carrying one marker `⊠`.
///
/// The marker position `m` means the marker sits immediately before
/// `letters[m]` (so `m == letters.len()` puts it at the end).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
    marker: Option<usize>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Word {
        Word { letters, marker: None }
    }

    pub fn with_marker(letters: Vec<Letter>, marker: usize) -> Result<Word> {
        if marker > letters.len() {
            return Err(Error::MarkerOutOfRange(marker));
        }
        Ok(Word { letters, marker: Some(marker) })
    }

    /// Builds a word from symbols in which `None` stands for the marker.
    pub fn from_symbols(symbols: &[Option<Letter>]) -> Result<Word> {
        let mut letters = Vec::with_capacity(symbols.len());
        let mut marker = None;
        for (k, s) in symbols.iter().enumerate() {
            match s {
                Some(l) => letters.push(*l),
                None if marker.is_none() => marker = Some(k),
                None => return Err(Error::Precondition("a word carries at most one marker")),
            }
        }
        Ok(Word { letters, marker })
    }

    /// The word as symbols, `None` standing for the marker.
    pub fn symbols(&self) -> Vec<Option<Letter>> {
        let mut out: Vec<Option<Letter>> = self.letters.iter().copied().map(Some).collect();
        if let Some(m) = self.marker {
            out.insert(m, None);
        }
        out
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn marker(&self) -> Option<usize> {
        self.marker
    }

    /// Number of letters (the marker is not counted).
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn without_marker(&self) -> Word {
        Word { letters: self.letters.clone(), marker: None }
    }

    /// `wt(w)[i-1]` is the number of letters of family `i`.
    pub fn weight(&self) -> Vec<usize> {
        weight_of(&self.letters)
    }

    /// Largest family present (0 for the empty word).
    pub fn max_family(&self) -> u8 {
        self.letters.iter().map(|l| l.value).max().unwrap_or(0)
    }

    /// Position of `first(i, w)`, the leftmost letter of family `i`.
    pub fn first(&self, family: u8) -> Option<usize> {
        self.letters.iter().position(|l| l.value == family)
    }

    pub fn canonical_form(&self) -> Word {
        let mut letters = self.letters.clone();
        canonicalize_letters(&mut letters);
        Word { letters, marker: self.marker }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_form() == *self
    }

    /// All representatives of the equivalence class of `self`: every way of
    /// independently priming or unpriming the first letter of each family.
    pub fn representatives(&self) -> Vec<Word> {
        let canon = self.canonical_form();
        let mut firsts: Vec<usize> = Vec::new();
        let mut seen = BTreeSet::new();
        for (k, l) in canon.letters.iter().enumerate() {
            if seen.insert(l.value) {
                firsts.push(k);
            }
        }
        let mut out = Vec::with_capacity(1 << firsts.len());
        for mask in 0u64..(1u64 << firsts.len()) {
            let mut w = canon.clone();
            for (bit, &pos) in firsts.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    w.letters[pos].primed = true;
                }
            }
            out.push(w);
        }
        out
    }

    /// Standardization labels `1..=n` of the letters (the marker is ignored).
    pub fn standardize(&self) -> Vec<usize> {
        standardize_letters(&self.letters)
    }

    /// The subword of letters whose family lies in `families`, together with
    /// the parent positions of those letters.
    pub fn restrict(&self, families: core::ops::RangeInclusive<u8>) -> (Vec<Letter>, Vec<usize>) {
        let mut sub = Vec::new();
        let mut idx = Vec::new();
        for (k, l) in self.letters.iter().enumerate() {
            if families.contains(&l.value) {
                sub.push(*l);
                idx.push(k);
            }
        }
        (sub, idx)
    }
}

pub(crate) fn weight_of(letters: &[Letter]) -> Vec<usize> {
    let max = letters.iter().map(|l| l.value).max().unwrap_or(0) as usize;
    let mut wt = vec![0; max];
    for l in letters {
        wt[l.value as usize - 1] += 1;
    }
    wt
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in self.symbols() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            match s {
                Some(l) => write!(f, "{l}")?,
                None => f.write_str("X")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses whitespace-separated tokens: a value with an optional trailing
    /// apostrophe, or `X` for the marker. Columns in errors are 1-based
    /// character offsets into the input.
    fn from_str(s: &str) -> Result<Word> {
        let mut symbols = Vec::new();
        let mut chars = s.char_indices().peekable();
        while let Some(&(start, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
                continue;
            }
            let mut end = start;
            while let Some(&(k, c)) = chars.peek() {
                if c.is_whitespace() {
                    break;
                }
                end = k + c.len_utf8();
                chars.next();
            }
            let column = s[..start].chars().count() + 1;
            match parse_token(&s[start..end], column)? {
                Token::Letter(l) => symbols.push(Some(l)),
                Token::Marker => {
                    if symbols.iter().any(Option::is_none) {
                        return Err(Error::Parse { column, message: "a word carries at most one marker".to_string() });
                    }
                    symbols.push(None)
                }
            }
        }
        Word::from_symbols(&symbols)
    }
}

// ---------------------------------------------------------------------------
// Strict partitions and shifted shapes
// ---------------------------------------------------------------------------

/// A strict partition: a strictly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Default)]
pub struct StrictPartition {
    parts: Vec<usize>,
}

impl StrictPartition {
    pub fn new(parts: Vec<usize>) -> Result<StrictPartition> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] > w[1]);
        if !ok {
            return Err(Error::NotStrict(parts));
        }
        Ok(StrictPartition { parts })
    }

    pub fn empty() -> StrictPartition {
        StrictPartition { parts: Vec::new() }
    }

    /// The staircase `(n, n-1, ..., 1)`.
    pub fn staircase(n: usize) -> StrictPartition {
        StrictPartition { parts: (1..=n).rev().collect() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Part `k` (0-based), or 0 beyond the length.
    pub fn part(&self, k: usize) -> usize {
        self.parts.get(k).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of cells `|σ|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Whether the diagram of `other` is contained in the diagram of `self`.
    pub fn contains(&self, other: &StrictPartition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|k| other.parts[k] <= self.parts[k])
    }

    /// Whether the diagram fits inside the staircase of height `n`.
    pub fn fits_staircase(&self, n: usize) -> bool {
        self.parts.iter().enumerate().all(|(k, &p)| k < n && p <= n - k)
    }

    /// The complement inside the staircase of height `n`: its parts are the
    /// elements of `{1, ..., n}` that are not parts of `self`.
    pub fn complement(&self, n: usize) -> Result<StrictPartition> {
        if !self.fits_staircase(n) {
            return Err(Error::Precondition("partition does not fit the staircase"));
        }
        Ok(StrictPartition { parts: (1..=n).rev().filter(|p| !self.parts.contains(p)).collect() })
    }

    /// The associated symmetric (ordinary) partition `σ̃`, with
    /// `σ̃_i = σ_i + #{j : j ≤ i < j + σ_j}` (1-based indices).
    pub fn symmetrize(&self) -> Vec<usize> {
        let l = self.parts.len();
        let mut out = Vec::new();
        let mut i = 1;
        loop {
            let own = if i <= l { self.parts[i - 1] } else { 0 };
            let extra = (1..=l).filter(|&j| j <= i && i < j + self.parts[j - 1]).count();
            let v = own + extra;
            if v == 0 {
                break;
            }
            out.push(v);
            i += 1;
        }
        out
    }

    /// Rows from which one cell can be removed leaving a strict partition.
    pub fn removable_rows(&self) -> Vec<usize> {
        (0..self.parts.len()).filter(|&k| self.parts[k] - 1 > self.part(k + 1) || self.parts[k] == 1).collect()
    }

    /// Rows to which one cell can be added leaving a strict partition.
    pub fn addable_rows(&self) -> Vec<usize> {
        (0..=self.parts.len()).filter(|&k| k == 0 || self.part(k) + 1 < self.parts[k - 1]).collect()
    }

    /// The last cell of row `k`.
    pub fn row_end(&self, k: usize) -> Cell {
        (k, k + self.parts[k] - 1)
    }

    /// The cell just right of the end of row `k`.
    pub fn row_next(&self, k: usize) -> Cell {
        (k, k + self.part(k))
    }

    pub fn with_removed(&self, row: usize) -> Result<StrictPartition> {
        let mut parts = self.parts.clone();
        if row >= parts.len() {
            return Err(Error::Precondition("no such row"));
        }
        parts[row] -= 1;
        if parts[row] == 0 {
            parts.pop();
        }
        StrictPartition::new(parts)
    }

    pub fn with_added(&self, row: usize) -> Result<StrictPartition> {
        let mut parts = self.parts.clone();
        if row == parts.len() {
            parts.push(1);
        } else if row < parts.len() {
            parts[row] += 1;
        } else {
            return Err(Error::Precondition("no such row"));
        }
        StrictPartition::new(parts)
    }

    /// Whether `cell` belongs to the shifted diagram.
    pub fn has_cell(&self, cell: Cell) -> bool {
        let (r, c) = cell;
        r < self.parts.len() && c >= r && c < r + self.parts[r]
    }

    /// All strict partitions of `n`, in decreasing lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<StrictPartition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        strict_rec(n, n, &mut cur, &mut out);
        out
    }

    /// All strict partitions whose diagram is contained in `self`'s.
    pub fn subpartitions(&self) -> Vec<StrictPartition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        sub_rec(self, 0, usize::MAX, &mut cur, &mut out);
        out
    }
}

fn strict_rec(remaining: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<StrictPartition>) {
    if remaining == 0 {
        out.push(StrictPartition { parts: cur.clone() });
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        cur.push(p);
        strict_rec(remaining - p, p - 1, cur, out);
        cur.pop();
    }
}

fn sub_rec(outer: &StrictPartition, row: usize, bound: usize, cur: &mut Vec<usize>, out: &mut Vec<StrictPartition>) {
    out.push(StrictPartition { parts: cur.clone() });
    if row >= outer.len() {
        return;
    }
    let max = outer.parts[row].min(bound.saturating_sub(1));
    for p in 1..=max {
        cur.push(p);
        sub_rec(outer, row + 1, p, cur, out);
        cur.pop();
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.parts {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for StrictPartition {
    type Err = Error;

    /// Parses comma-separated parts such as `5,3,1`; the empty string (or `0`)
    /// is the empty partition.
    fn from_str(s: &str) -> Result<StrictPartition> {
        let t = s.trim();
        if t.is_empty() || t == "0" || t == "()" {
            return Ok(StrictPartition::empty());
        }
        let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        let mut parts = Vec::new();
        let mut offset = 0;
        for piece in t.split(',') {
            let trimmed = piece.trim();
            let v: usize = trimmed.parse().map_err(|_| Error::Parse {
                column: offset + 1 + (piece.len() - piece.trim_start().len()),
                message: format!("expected a positive integer, found {trimmed:?}"),
            })?;
            parts.push(v);
            offset += piece.len() + 1;
        }
        StrictPartition::new(parts)
    }
}

/// A shifted skew shape `outer / inner`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ShiftedSkewShape {
    outer: StrictPartition,
    inner: StrictPartition,
}

impl ShiftedSkewShape {
    pub fn new(outer: StrictPartition, inner: StrictPartition) -> Result<ShiftedSkewShape> {
        if !outer.contains(&inner) {
            return Err(Error::NotContained { outer: outer.parts, inner: inner.parts });
        }
        Ok(ShiftedSkewShape { outer, inner })
    }

    pub fn straight(outer: StrictPartition) -> ShiftedSkewShape {
        ShiftedSkewShape { outer, inner: StrictPartition::empty() }
    }

    pub fn outer(&self) -> &StrictPartition {
        &self.outer
    }

    pub fn inner(&self) -> &StrictPartition {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    pub fn is_straight(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.outer.has_cell(cell) && !self.inner.has_cell(cell)
    }

    /// The cells in reading order: rows bottom to top, each left to right.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.size());
        for r in (0..self.outer.len()).rev() {
            for c in (r + self.inner.part(r))..(r + self.outer.part(r)) {
                out.push((r, c));
            }
        }
        out
    }

    /// Cells of the inner diagram that can be vacated into by an inner slide
    /// (removable corners of the inner partition).
    pub fn inner_corners(&self) -> Vec<Cell> {
        self.inner.removable_rows().into_iter().map(|k| self.inner.row_end(k)).collect()
    }

    /// Cells just outside the outer diagram into which an outer slide can be
    /// performed (addable cells of the outer partition).
    pub fn outer_corners(&self) -> Vec<Cell> {
        self.outer.addable_rows().into_iter().map(|k| self.outer.row_next(k)).collect()
    }

    /// Cells of the shape that are removable corners of the outer partition.
    pub fn removable_outer_cells(&self) -> Vec<Cell> {
        self.outer
            .removable_rows()
            .into_iter()
            .filter(|&k| self.outer.parts[k] > self.inner.part(k))
            .map(|k| self.outer.row_end(k))
            .collect()
    }

    /// Cells of the shape that are addable corners of the inner partition.
    pub fn addable_inner_cells(&self) -> Vec<Cell> {
        self.inner
            .addable_rows()
            .into_iter()
            .map(|k| self.inner.row_next(k))
            .filter(|&c| self.contains(c))
            .collect()
    }

    /// Builds the shape whose cell set is `cells`, if it is a shifted skew shape
    /// with no empty rows above its last row.
    pub fn from_cells(cells: &BTreeSet<Cell>) -> Result<ShiftedSkewShape> {
        let mut rows: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for &(r, c) in cells {
            if c < r {
                return Err(Error::ShapeMismatch);
            }
            let e = rows.entry(r).or_insert((c, c));
            e.0 = e.0.min(c);
            e.1 = e.1.max(c);
        }
        let nrows = rows.keys().next_back().map_or(0, |r| r + 1);
        let mut outer = Vec::with_capacity(nrows);
        let mut inner = Vec::with_capacity(nrows);
        for r in 0..nrows {
            match rows.get(&r) {
                Some(&(lo, hi)) => {
                    if hi - lo + 1 != (lo..=hi).filter(|&c| cells.contains(&(r, c))).count() {
                        return Err(Error::ShapeMismatch);
                    }
                    outer.push(hi + 1 - r);
                    inner.push(lo - r);
                }
                // The extent of an empty row is not determined by the cells.
                None => return Err(Error::ShapeMismatch),
            }
        }
        while inner.last() == Some(&0) {
            inner.pop();
        }
        let shape = ShiftedSkewShape::new(StrictPartition::new(outer)?, StrictPartition::new(inner)?)?;
        if shape.cells().len() != cells.len() {
            return Err(Error::ShapeMismatch);
        }
        Ok(shape)
    }
}

impl fmt::Display for ShiftedSkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            write!(f, "{}", self.outer)
        } else {
            write!(f, "{}/{}", self.outer, self.inner)
        }
    }
}

impl FromStr for ShiftedSkewShape {
    type Err = Error;

    /// Parses `5,3,1/4,2` (or a straight shape `5,3,1`).
    fn from_str(s: &str) -> Result<ShiftedSkewShape> {
        match s.split_once('/') {
            Some((o, i)) => {
                let outer: StrictPartition = o.parse()?;
                let inner: StrictPartition = i.parse().map_err(|e| shift_column(e, o.chars().count() + 1))?;
                ShiftedSkewShape::new(outer, inner)
            }
            None => Ok(ShiftedSkewShape::straight(s.parse()?)),
        }
    }
}

fn shift_column(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { column, message } => Error::Parse { column: column + by, message },
        other => other,
    }
}

// ---------------------------------------------------------------------------
// Tableaux
// ---------------------------------------------------------------------------

/// A filling of a shifted skew shape by letters, with at most one cell
/// holding the marker `⊠` instead of a letter.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct MarkedTableau {
    shape: ShiftedSkewShape,
    entries: BTreeMap<Cell, Letter>,
    marker: Option<Cell>,
}

impl MarkedTableau {
    pub fn new(shape: ShiftedSkewShape, entries: BTreeMap<Cell, Letter>, marker: Option<Cell>) -> Result<MarkedTableau> {
        let filled = entries.len() + marker.is_some() as usize;
        if filled != shape.size()
            || entries.keys().any(|&c| !shape.contains(c))
            || marker.is_some_and(|m| !shape.contains(m) || entries.contains_key(&m))
        {
            return Err(Error::ShapeMismatch);
        }
        Ok(MarkedTableau { shape, entries, marker })
    }

    /// Builds a tableau from cells and their contents, inferring the shape.
    pub fn from_cells(entries: BTreeMap<Cell, Letter>, marker: Option<Cell>) -> Result<MarkedTableau> {
        let mut cells: BTreeSet<Cell> = entries.keys().copied().collect();
        if let Some(m) = marker {
            if !cells.insert(m) {
                return Err(Error::ShapeMismatch);
            }
        }
        let shape = ShiftedSkewShape::from_cells(&cells)?;
        MarkedTableau::new(shape, entries, marker)
    }

    /// Fills `shape` in reading order from `word` (whose marker, if any,
    /// occupies the corresponding cell).
    pub fn from_reading_word(shape: ShiftedSkewShape, word: &Word) -> Result<MarkedTableau> {
        let cells = shape.cells();
        let symbols = word.symbols();
        if symbols.len() != cells.len() {
            return Err(Error::ShapeMismatch);
        }
        let mut entries = BTreeMap::new();
        let mut marker = None;
        for (cell, s) in cells.into_iter().zip(symbols) {
            match s {
                Some(l) => {
                    entries.insert(cell, l);
                }
                None => marker = Some(cell),
            }
        }
        Ok(MarkedTableau { shape, entries, marker })
    }

    /// Places `word` on the anti-diagonal shape
    /// `(2n-1, 2n-3, …, 1) / (2n-2, 2n-4, …, 2)`, whose `n` cells are pairwise
    /// non-adjacent, so that every word is the reading word of a semistandard
    /// filling and every cell is both an inner and an outer co-corner.
    pub fn from_word(word: &Word) -> Result<MarkedTableau> {
        let n = word.symbols().len();
        let outer = StrictPartition::new((0..n).map(|r| 2 * (n - r) - 1).collect())?;
        let inner = StrictPartition::new((0..n.saturating_sub(1)).map(|r| 2 * (n - r) - 2).collect())?;
        MarkedTableau::from_reading_word(ShiftedSkewShape::new(outer, inner)?, word)
    }

    pub fn shape(&self) -> &ShiftedSkewShape {
        &self.shape
    }

    pub fn entries(&self) -> &BTreeMap<Cell, Letter> {
        &self.entries
    }

    pub fn marker(&self) -> Option<Cell> {
        self.marker
    }

    pub fn get(&self, cell: Cell) -> Option<Letter> {
        self.entries.get(&cell).copied()
    }

    /// The contents of the shape's cells in reading order (`None` = marker).
    pub fn symbols(&self) -> Vec<Option<Letter>> {
        self.shape.cells().into_iter().map(|c| self.entries.get(&c).copied()).collect()
    }

    /// The row reading word (rows bottom to top), marker position preserved.
    pub fn reading_word(&self) -> Word {
        Word::from_symbols(&self.symbols()).expect("at most one marker")
    }

    /// Content vector: `content()[i-1]` counts letters of family `i`.
    pub fn content(&self) -> Vec<usize> {
        self.reading_word().weight()
    }

    /// The same filling with its reading word put into canonical form.
    pub fn canonical_form(&self) -> MarkedTableau {
        let w = self.reading_word().canonical_form();
        MarkedTableau::from_reading_word(self.shape.clone(), &w).expect("same shape")
    }

    pub fn is_canonical(&self) -> bool {
        self.reading_word().is_canonical()
    }

    /// Replaces the letter at `cell`.
    pub fn set(&mut self, cell: Cell, letter: Letter) -> Result<()> {
        match self.entries.get_mut(&cell) {
            Some(l) => {
                *l = letter;
                Ok(())
            }
            None => Err(Error::Precondition("no letter at that cell")),
        }
    }

    /// Semistandardness in the sense of standardizations: ignoring the marker,
    /// the standardization labels strictly increase along every row and down
    /// every column.
    pub fn is_semistandard(&self) -> bool {
        let cells: Vec<Cell> = self.shape.cells().into_iter().filter(|c| self.entries.contains_key(c)).collect();
        let letters: Vec<Letter> = cells.iter().map(|c| self.entries[c]).collect();
        let labels = standardize_letters(&letters);
        let label: BTreeMap<Cell, usize> = cells.iter().copied().zip(labels).collect();
        // Any two cells in a common row or column must be ordered, including
        // pairs separated by the marker.
        let mut by_row: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        let mut by_col: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (&(r, c), &l) in &label {
            by_row.entry(r).or_default().push((c, l));
            by_col.entry(c).or_default().push((r, l));
        }
        let increasing = |v: &Vec<(usize, usize)>| v.windows(2).all(|w| w[0].1 < w[1].1);
        by_row.values().all(increasing) && by_col.values().all(|v| {
            let mut v = v.clone();
            v.sort();
            increasing(&v)
        })
    }

    /// Replaces the marker by `letter`, producing an unmarked tableau.
    pub fn with_marker_as(&self, letter: Letter) -> MarkedTableau {
        let mut t = self.clone();
        if let Some(m) = t.marker.take() {
            t.entries.insert(m, letter);
        }
        t
    }

    /// Turns the letter at `cell` into the marker.
    pub fn with_marker_at(&self, cell: Cell) -> Result<MarkedTableau> {
        if self.marker.is_some() {
            return Err(Error::Precondition("tableau already carries a marker"));
        }
        let mut t = self.clone();
        t.entries.remove(&cell).ok_or(Error::Precondition("no letter at that cell"))?;
        t.marker = Some(cell);
        Ok(t)
    }

    /// Applies `f` to every letter.
    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> MarkedTableau {
        let entries = self.entries.iter().map(|(&c, &l)| (c, f(l))).collect();
        MarkedTableau { shape: self.shape.clone(), entries, marker: self.marker }
    }

    /// Reading-word position of each cell.
    pub fn reading_positions(&self) -> BTreeMap<Cell, usize> {
        self.shape.cells().into_iter().enumerate().map(|(k, c)| (c, k)).collect()
    }

    pub(crate) fn into_parts(self) -> (ShiftedSkewShape, BTreeMap<Cell, Letter>, Option<Cell>) {
        (self.shape, self.entries, self.marker)
    }

    pub(crate) fn from_parts_unchecked(
        shape: ShiftedSkewShape,
        entries: BTreeMap<Cell, Letter>,
        marker: Option<Cell>,
    ) -> MarkedTableau {
        MarkedTableau { shape, entries, marker }
    }
}

impl fmt::Display for MarkedTableau {
    /// Compact one-line form: `shape : reading word`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {}", self.shape, self.reading_word())
    }
}

/// A chain of tableaux on successively nested skew shapes: the inner shape of
/// each piece is the outer shape of the previous one. The marker piece is a
/// one-cell tableau holding only the marker.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Chain {
    tableaux: Vec<MarkedTableau>,
}

impl Chain {
    pub fn new(tableaux: Vec<MarkedTableau>) -> Result<Chain> {
        for w in tableaux.windows(2) {
            if w[0].shape().outer() != w[1].shape().inner() {
                return Err(Error::Precondition("chain shapes do not extend one another"));
            }
        }
        let markers = tableaux.iter().filter(|t| t.marker().is_some()).count();
        if markers != 1 {
            return Err(Error::Precondition("a chain carries exactly one marker piece"));
        }
        Ok(Chain { tableaux })
    }

    pub fn tableaux(&self) -> &[MarkedTableau] {
        &self.tableaux
    }

    /// Index of the piece holding the marker.
    pub fn marker_index(&self) -> usize {
        self.tableaux.iter().position(|t| t.marker().is_some()).expect("checked at construction")
    }
}

// ---------------------------------------------------------------------------
// Instances and generators
// ---------------------------------------------------------------------------

/// Which side of the skew shape the marker occupies.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum BoxSide {
    /// `⊠` is an inner co-corner: elements of `LR(α, ⊠, β, γ)`.
    Inner,
    /// `⊠` is an outer co-corner: elements of `LR(α, β, ⊠, γ)`.
    Outer,
}

/// A triple `(α, β, γ)` presented through `α`, `β` and the complement
/// `γ^c` of `γ` in the smallest staircase containing it.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Instance {
    pub alpha: StrictPartition,
    pub beta: StrictPartition,
    pub gamma_c: StrictPartition,
}

impl Instance {
    /// Checks `α ⊆ γ^c` and `|γ^c/α| = |β| + 1`.
    pub fn new(alpha: StrictPartition, beta: StrictPartition, gamma_c: StrictPartition) -> Result<Instance> {
        if !gamma_c.contains(&alpha) {
            return Err(Error::NotContained { outer: gamma_c.parts, inner: alpha.parts });
        }
        let skew = gamma_c.size() - alpha.size();
        if skew != beta.size() + 1 {
            return Err(Error::SizeMismatch { skew, expected: beta.size() + 1 });
        }
        Ok(Instance { alpha, beta, gamma_c })
    }

    /// Builds the instance from `γ` itself inside the staircase of height `n`.
    pub fn from_gamma(alpha: StrictPartition, beta: StrictPartition, gamma: &StrictPartition, n: usize) -> Result<Instance> {
        Instance::new(alpha, beta, gamma.complement(n)?)
    }

    /// The smallest staircase height containing `γ^c`.
    pub fn ambient_n(&self) -> usize {
        self.gamma_c.part(0)
    }

    /// `γ` as the complement of `γ^c` in the ambient staircase.
    pub fn gamma(&self) -> StrictPartition {
        self.gamma_c.complement(self.ambient_n()).expect("γ^c fits its own staircase")
    }

    /// Sweep size `|α| + |β|`.
    pub fn size(&self) -> usize {
        self.alpha.size() + self.beta.size()
    }

    /// The skew shape `γ^c/α` holding both `⊠` and the tableau.
    pub fn shape(&self) -> ShiftedSkewShape {
        ShiftedSkewShape::new(self.gamma_c.clone(), self.alpha.clone()).expect("checked at construction")
    }

    /// `ℓ(β)`, the largest letter family of the instance.
    pub fn families(&self) -> u8 {
        self.beta.len() as u8
    }

    /// All instances of sweep size at most `max_size`, in a fixed order.
    pub fn all_up_to(max_size: usize) -> Vec<Instance> {
        let mut out = Vec::new();
        for outer_size in 1..=max_size + 1 {
            for gamma_c in StrictPartition::all_of_size(outer_size) {
                for alpha in gamma_c.subpartitions() {
                    if alpha.size() >= gamma_c.size() {
                        continue;
                    }
                    let rest = gamma_c.size() - alpha.size() - 1;
                    for beta in StrictPartition::all_of_size(rest) {
                        out.push(Instance { alpha: alpha.clone(), beta, gamma_c: gamma_c.clone() });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha=({}) beta=({}) gamma_c=({})", self.alpha, self.beta, self.gamma_c)
    }
}

/// All semistandard fillings of `shape` with the given content (number of
/// letters per family), in canonical form, in deterministic order (cells in
/// reading order, letters increasing). When `ballot` is set only ballot
/// fillings are returned.
pub fn semistandard_fillings(shape: &ShiftedSkewShape, content: &[usize], ballot: bool) -> Vec<BTreeMap<Cell, Letter>> {
    let cells = shape.cells();
    if cells.len() != content.iter().sum::<usize>() {
        return Vec::new();
    }
    let mut remaining = content.to_vec();
    let mut current: Vec<Letter> = Vec::with_capacity(cells.len());
    let mut placed: BTreeMap<Cell, Letter> = BTreeMap::new();
    let mut out = Vec::new();
    let mut seen = vec![false; content.len() + 1];
    fill_rec(&cells, 0, &mut remaining, &mut current, &mut placed, &mut seen, ballot, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn fill_rec(
    cells: &[Cell],
    k: usize,
    remaining: &mut [usize],
    current: &mut Vec<Letter>,
    placed: &mut BTreeMap<Cell, Letter>,
    seen: &mut [bool],
    ballot: bool,
    out: &mut Vec<BTreeMap<Cell, Letter>>,
) {
    if k == cells.len() {
        if !ballot || crate::coplactic::is_ballot_walk(&Word::new(current.clone())) {
            out.push(placed.clone());
        }
        return;
    }
    let (r, c) = cells[k];
    let west = if c > r { placed.get(&(r, c - 1)).copied() } else { None };
    let south = placed.get(&(r + 1, c)).copied();
    for fam in 1..=remaining.len() {
        if remaining[fam - 1] == 0 {
            continue;
        }
        for primed in [true, false] {
            if primed && !seen[fam] {
                continue;
            }
            let l = Letter { value: fam as u8, primed };
            if let Some(w) = west {
                if l < w || (l == w && l.primed) {
                    continue;
                }
            }
            if let Some(s) = south {
                if l > s || (l == s && !l.primed) {
                    continue;
                }
            }
            remaining[fam - 1] -= 1;
            let was_seen = seen[fam];
            seen[fam] = true;
            current.push(l);
            placed.insert((r, c), l);
            fill_rec(cells, k + 1, remaining, current, placed, seen, ballot, out);
            placed.remove(&(r, c));
            current.pop();
            seen[fam] = was_seen;
            remaining[fam - 1] += 1;
        }
    }
}

/// All ballot semistandard canonical fillings of `γ^c/α` with content `β`
/// and `⊠` an inner (resp. outer) co-corner, i.e. `LR(α, ⊠, β, γ)` (resp.
/// `LR(α, β, ⊠, γ)`), ordered by marker cell and then by filling.
pub fn enumerate_lr_pairs(instance: &Instance, side: BoxSide) -> Vec<MarkedTableau> {
    let shape = instance.shape();
    let content = instance.beta.parts().to_vec();
    let mut out = Vec::new();
    let candidates = match side {
        BoxSide::Inner => shape.addable_inner_cells(),
        BoxSide::Outer => shape.removable_outer_cells(),
    };
    for m in candidates {
        let rest = match side {
            BoxSide::Inner => ShiftedSkewShape::new(instance.gamma_c.clone(), instance.alpha.with_added(m.0).expect("addable")),
            BoxSide::Outer => ShiftedSkewShape::new(instance.gamma_c.with_removed(m.0).expect("removable"), instance.alpha.clone()),
        };
        let Ok(rest) = rest else { continue };
        for filling in semistandard_fillings(&rest, &content, true) {
            out.push(MarkedTableau::from_parts_unchecked(shape.clone(), filling, Some(m)));
        }
    }
    out.sort();
    out
}

/// `|LR^{outer}_{inner}(content)|`: the number of ballot semistandard
/// canonical fillings of `outer/inner` with the given content.
pub fn lr_coefficient(outer: &StrictPartition, inner: &StrictPartition, content: &StrictPartition) -> usize {
    match ShiftedSkewShape::new(outer.clone(), inner.clone()) {
        Ok(shape) => semistandard_fillings(&shape, content.parts(), true).len(),
        Err(_) => 0,
    }
}

/// Renders a word by concatenating its tokens without
/// separators (only unambiguous for families below 10).
pub fn compact(word: &Word) -> String {
    let mut s = String::new();
    for sym in word.symbols() {
        match sym {
            Some(l) => s.push_str(&l.to_string()),
            None => s.push('X'),
        }
    }
    s
}
