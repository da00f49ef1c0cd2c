//! Evacuation-shuffling `esh : LR(α, ⊠, β, γ) → LR(α, β, ⊠, γ)` computed
//! three independent ways (rectify–promote–unrectify, coplactic operators,
//! local switches), together with inverses, the per-symbol index
//! decomposition and its paused states `Z_t`, the monodromy operator
//! `ω = sh ∘ esh` and its orbits.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::coplactic::{self, is_ballot_walk, is_i_ballot};
use crate::error::{Error, Result};
use crate::jdt;
use crate::shifted_core::{
    canonicalize_letters, standardize_letters, BoxSide, Cell, Chain, Instance, Letter, MarkedTableau,
    ShiftedSkewShape, StrictPartition, Word,
};

// ---------------------------------------------------------------------------
// Input checks
// ---------------------------------------------------------------------------

fn ballot_semistandard(t: &MarkedTableau) -> bool {
    t.is_semistandard() && is_ballot_walk(&t.reading_word())
}

fn check_inner(t: &MarkedTableau) -> Result<Cell> {
    let m = t.marker().ok_or(Error::Precondition("esh needs a marker"))?;
    if !t.shape().addable_inner_cells().contains(&m) {
        return Err(Error::Precondition("marker is not an inner co-corner"));
    }
    if !ballot_semistandard(t) {
        return Err(Error::Precondition("filling is not ballot and semistandard"));
    }
    Ok(m)
}

fn check_outer(t: &MarkedTableau) -> Result<Cell> {
    let m = t.marker().ok_or(Error::Precondition("esh inverse needs a marker"))?;
    if !t.shape().removable_outer_cells().contains(&m) {
        return Err(Error::Precondition("marker is not an outer co-corner"));
    }
    if !ballot_semistandard(t) {
        return Err(Error::Precondition("filling is not ballot and semistandard"));
    }
    Ok(m)
}

/// `ℓ(β)`: the number of letter families of the filling.
fn families(t: &MarkedTableau) -> u8 {
    t.content().len() as u8
}

fn adjacent(a: Cell, b: Cell) -> bool {
    (a.0 == b.0 && a.1.abs_diff(b.1) == 1) || (a.1 == b.1 && a.0.abs_diff(b.0) == 1)
}

// ---------------------------------------------------------------------------
// Rectification oracle
// ---------------------------------------------------------------------------

/// `esh` by definition: rectify with `⊠` as the smallest letter, slide `⊠`
/// out through the rectified tableau, then undo the rectification with `⊠`
/// as the largest letter.
pub fn esh_oracle(t: &MarkedTableau) -> Result<MarkedTableau> {
    check_inner(t)?;
    let r = families(t);
    let (rect, record) = jdt::rectify(&t.canonical_form())?;
    // In the rectified tableau the marker sits in the corner (0, 0).
    if rect.marker() != Some((0, 0)) {
        return Err(Error::Invariant(format!("rectified marker at {:?}", rect.marker())));
    }
    let (shape, entries, _) = rect.into_parts();
    let inner = StrictPartition::new(vec![1])?;
    let skew = ShiftedSkewShape::new(shape.outer().clone(), inner)?;
    let unmarked = MarkedTableau::new(skew, entries, None)?;
    let (promoted, vacated) = jdt::inner_slide(&unmarked, (0, 0))?;
    let (pshape, mut pentries, _) = promoted.into_parts();
    let top = Letter::new(r + 1, false)?;
    pentries.insert(vacated, top);
    let full = pshape.outer().with_added(vacated.0)?;
    let straight = MarkedTableau::new(ShiftedSkewShape::straight(full), pentries, None)?;
    let unrect = jdt::unrectify(&straight, &record)?;
    let (ushape, mut uentries, _) = unrect.into_parts();
    let cell = uentries
        .iter()
        .find(|(_, l)| l.value() == r + 1)
        .map(|(&c, _)| c)
        .ok_or_else(|| Error::Invariant(String::from("largest letter lost during un-rectification")))?;
    uentries.remove(&cell);
    Ok(MarkedTableau::new(ushape, uentries, Some(cell))?.canonical_form())
}

/// `esh⁻¹` by definition, mirroring [`esh_oracle`].
pub fn esh_oracle_inverse(t: &MarkedTableau) -> Result<MarkedTableau> {
    check_outer(t)?;
    if t.entries().is_empty() {
        return Ok(t.clone());
    }
    let r = families(t);
    let top = Letter::new(r + 1, false)?;
    let (rect, record) = jdt::rectify(&t.canonical_form().with_marker_as(top))?;
    let (shape, mut entries, _) = rect.into_parts();
    let cell = entries
        .iter()
        .find(|(_, l)| l.value() == r + 1)
        .map(|(&c, _)| c)
        .ok_or_else(|| Error::Invariant(String::from("largest letter lost during rectification")))?;
    entries.remove(&cell);
    let outer = shape.outer().with_removed(cell.0)?;
    let unmarked = MarkedTableau::new(ShiftedSkewShape::straight(outer), entries, None)?;
    let (demoted, vacated) = jdt::outer_slide(&unmarked, cell)?;
    if vacated != (0, 0) {
        return Err(Error::Invariant(format!("reverse promotion ended at {vacated:?}")));
    }
    let (_, dentries, _) = demoted.into_parts();
    let straight = MarkedTableau::new(ShiftedSkewShape::straight(shape.outer().clone()), dentries, Some((0, 0)))?;
    Ok(jdt::unrectify(&straight, &record)?.canonical_form())
}

// ---------------------------------------------------------------------------
// Coplactic algorithm
// ---------------------------------------------------------------------------

fn bump(l: Letter, by: i16) -> Result<Letter> {
    let v = l.value() as i16 + by;
    if v < 1 || v > u8::MAX as i16 {
        return Err(Error::Invariant(format!("letter {l} shifted out of range")));
    }
    Letter::new(v as u8, l.is_primed())
}

fn count_family(letters: &[Letter], k: u8) -> usize {
    letters.iter().filter(|l| l.value() == k).count()
}

fn undefined(op: &str, k: u8, w: &Word) -> Error {
    Error::Invariant(format!("{op}_{k} undefined on {w}"))
}

/// Result of the coplactic algorithm: the output and the index `s` at which
/// Phase 1 handed over to Phase 2 (`ℓ(β) + 1` when Phase 2 is empty).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoplacticRun {
    pub output: MarkedTableau,
    pub transition: u8,
}

/// `esh` through the operators `E, E', F`: Phase 1 raises with the marker
/// standing for a letter below `1`, Phase 2 lowers with the marker standing
/// for `s'`.
pub fn esh_coplactic(t: &MarkedTableau) -> Result<MarkedTableau> {
    Ok(esh_coplactic_run(t)?.output)
}

/// [`esh_coplactic`] together with its Phase 1/Phase 2 transition index.
pub fn esh_coplactic_run(t: &MarkedTableau) -> Result<CoplacticRun> {
    check_inner(t)?;
    let r = families(t);
    let shape = t.shape().clone();
    let w = t.canonical_form().reading_word();
    let m = w.marker().expect("checked");
    // Shifted labels: the marker becomes 1 and every letter moves up by one.
    let mut v: Vec<Letter> = Vec::with_capacity(w.len() + 1);
    for s in w.symbols() {
        v.push(match s {
            Some(l) => bump(l, 1)?,
            None => Letter::unprimed(1),
        });
    }
    let mut k: u8 = 1;
    loop {
        let cur = Word::new(v.clone());
        let e = coplactic::raise(&cur, k);
        let ep = coplactic::raise_primed(&cur, k);
        if e == ep {
            break;
        }
        let wt = count_family(&v, k + 1);
        let exp = wt.checked_sub(2).ok_or_else(|| {
            Error::Invariant(format!("negative exponent in Phase 1 at step {k} on {cur}"))
        })?;
        let raised = coplactic::iterate(&cur, exp, |x| coplactic::raise(x, k)).ok_or_else(|| undefined("E", k, &cur))?;
        let next = coplactic::raise_primed(&raised, k).ok_or_else(|| undefined("E'", k, &raised))?;
        v = next.letters().to_vec();
        k += 1;
    }
    let s = k;
    let holders: Vec<usize> = (0..v.len()).filter(|&p| v[p].value() == s).collect();
    if holders.len() != 1 {
        return Err(Error::Invariant(format!("{} letters of family {s} at the Phase 1 exit", holders.len())));
    }
    let hole = holders[0];
    // Back to the original labels, with the marker standing for s'.
    let mut u: Vec<Letter> = Vec::with_capacity(v.len());
    for (p, &l) in v.iter().enumerate() {
        u.push(if p == hole {
            Letter::primed(s)
        } else if l.value() > s {
            bump(l, -1)?
        } else {
            l
        });
    }
    let mut cur = Word::new(u);
    for j in s..=r {
        cur = coplactic::lower(&cur, j).ok_or_else(|| undefined("F", j, &cur))?;
    }
    let tops: Vec<usize> = (0..cur.len()).filter(|&p| cur.letters()[p].value() == r + 1).collect();
    if tops.len() != 1 {
        return Err(Error::Invariant(format!("{} letters of family {} after Phase 2", tops.len(), r + 1)));
    }
    let mut syms: Vec<Option<Letter>> = cur.letters().iter().copied().map(Some).collect();
    syms[tops[0]] = None;
    let _ = m;
    let out = MarkedTableau::from_reading_word(shape, &Word::from_symbols(&syms)?)?.canonical_form();
    Ok(CoplacticRun { output: out, transition: s })
}

/// `esh⁻¹` through the operators: reverse Phase 2 raises from the marker,
/// reverse Phase 1 lowers back.
pub fn esh_coplactic_inverse(t: &MarkedTableau) -> Result<MarkedTableau> {
    check_outer(t)?;
    let r = families(t);
    let shape = t.shape().clone();
    let w = t.canonical_form().reading_word();
    let mut v: Vec<Letter> = w.symbols().into_iter().map(|s| s.unwrap_or(Letter::unprimed(r + 1))).collect();
    let mut i = r + 1;
    while i > 1 {
        match coplactic::raise(&Word::new(v.clone()), i - 1) {
            Some(next) => {
                v = next.letters().to_vec();
                i -= 1;
            }
            None => break,
        }
    }
    // The first family-i letter in standardization order becomes the marker.
    let labels = standardize_letters(&v);
    let hole = (0..v.len())
        .filter(|&p| v[p].value() == i)
        .min_by_key(|&p| labels[p])
        .ok_or_else(|| Error::Invariant(format!("no letter of family {i} after reverse Phase 2")))?;
    // Shifted labels: letters below i keep their value, the marker becomes i
    // and letters from i upward move up by one.
    let mut u: Vec<Letter> = Vec::with_capacity(v.len());
    for (p, &l) in v.iter().enumerate() {
        u.push(if p == hole {
            Letter::unprimed(i)
        } else if l.value() >= i {
            bump(l, 1)?
        } else {
            l
        });
    }
    canonicalize_letters(&mut u);
    let mut cur = Word::new(u);
    for k in (1..i).rev() {
        let wt = count_family(cur.letters(), k);
        let exp = wt.checked_sub(2).ok_or_else(|| {
            Error::Invariant(format!("negative exponent in reverse Phase 1 at step {k} on {cur}"))
        })?;
        let primed = coplactic::lower_primed(&cur, k).ok_or_else(|| undefined("F'", k, &cur))?;
        cur = coplactic::iterate(&primed, exp, |x| coplactic::lower(x, k)).ok_or_else(|| undefined("F", k, &primed))?;
    }
    let ones: Vec<usize> = (0..cur.len()).filter(|&p| cur.letters()[p].value() == 1).collect();
    if ones.len() != 1 {
        return Err(Error::Invariant(format!("{} letters of family 1 after reverse Phase 1", ones.len())));
    }
    let mut syms: Vec<Option<Letter>> = Vec::with_capacity(cur.len());
    for (p, &l) in cur.letters().iter().enumerate() {
        syms.push(if p == ones[0] { None } else { Some(bump(l, -1)?) });
    }
    Ok(MarkedTableau::from_reading_word(shape, &Word::from_symbols(&syms)?)?.canonical_form())
}

// ---------------------------------------------------------------------------
// Switches
// ---------------------------------------------------------------------------

/// The step labels of the switching algorithms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Phase {
    /// A Phase 1 hop.
    P1,
    /// A Phase 2(a) inverse hop across `i'`.
    P2a,
    /// The closing Phase 2(a) hop across an `i`.
    P2aHop,
    /// A Phase 2(a) exceptional switch.
    P2aExceptional,
    /// A Phase 2(b) inverse hop across `i`.
    P2b,
    /// The closing Phase 2(b) hop across `(i+1)'`.
    P2bHop,
    /// Reverse Phase 1.
    R1,
    /// Reverse Phase 2(a) hop across `i'`.
    R2a,
    /// Closing reverse Phase 2(a) inverse hop across `i-1`.
    R2aHop,
    /// Reverse Phase 2(b) hop across `i` (or inverse exceptional switch).
    R2b,
    /// Closing reverse Phase 2(b) inverse hop across `i'`.
    R2bHop,
    /// A step performed by the resumable per-symbol recipe.
    Resume,
}

impl Phase {
    /// Short machine-readable code.
    pub fn code(self) -> &'static str {
        match self {
            Phase::P1 => "P1",
            Phase::P2a => "P2a",
            Phase::P2aHop => "P2a-hop",
            Phase::P2aExceptional => "P2a-exceptional",
            Phase::P2b => "P2b",
            Phase::P2bHop => "P2b-hop",
            Phase::R1 => "R1",
            Phase::R2a => "R2a",
            Phase::R2aHop => "R2a-hop",
            Phase::R2b => "R2b",
            Phase::R2bHop => "R2b-hop",
            Phase::Resume => "resume",
        }
    }

    /// Label used in step tables.
    pub fn label(self) -> &'static str {
        match self {
            Phase::P1 => "Phase 1",
            Phase::P2a => "Phase 2(a)",
            Phase::P2aHop => "2(a) (hop)",
            Phase::P2aExceptional => "Exceptional Phase 2(a)",
            Phase::P2b => "Phase 2(b)",
            Phase::P2bHop => "2(b) (hop)",
            Phase::R1 => "Reverse Phase 1",
            Phase::R2a => "Reverse Phase 2(a)",
            Phase::R2aHop => "Reverse 2(a) (inverse hop)",
            Phase::R2b => "Reverse Phase 2(b)",
            Phase::R2bHop => "Reverse 2(b) (inverse hop)",
            Phase::Resume => "Resume",
        }
    }
}

/// Direction in which a step traverses its genomic tableau.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Traversal {
    /// An inverse hop: the marker moves forward in standardization order.
    Standard,
    /// A hop or an exceptional switch.
    Reverse,
}

/// One switch of `⊠` with an entry.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SwitchStep {
    pub phase: Phase,
    /// The running family counter `i` when the step was taken.
    pub i: u8,
    /// The entry `⊠` switched with, as it appeared in the representative.
    pub symbol: Letter,
    /// The index of the switch: `symbol`, except that exceptional switches
    /// and their inverses have index `i` instead of `i'`.
    pub index: Letter,
    /// Cell of `⊠` before the switch.
    pub from: Cell,
    /// Cell of `⊠` after the switch.
    pub to: Cell,
    /// Whether `⊠` moved backward in standardization order.
    pub hop: bool,
    pub exceptional: bool,
    pub inverse_exceptional: bool,
    pub adjacent: bool,
    /// Reading word (in the working representative) before the switch.
    pub before: Word,
    /// Reading word (in the working representative) after the switch.
    pub after: Word,
}

impl SwitchStep {
    pub fn traversal(&self) -> Traversal {
        if self.hop || self.exceptional {
            Traversal::Reverse
        } else {
            Traversal::Standard
        }
    }

    /// Whether `⊠` moved to an earlier cell in reading order.
    pub fn moved_back(&self) -> bool {
        crate::shifted_core::reading_cmp(self.to, self.from).is_lt()
    }
}

/// An explicit change of representative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RepChange {
    /// Number of switches performed before the change.
    pub before_step: usize,
    pub cell: Cell,
    pub family: u8,
    /// The new primed state of `first(family)`.
    pub primed: bool,
}

/// One row of a printed step table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TraceRow {
    pub label: String,
    pub i: u8,
    pub word: Word,
    pub note: Option<String>,
}

/// The full log of a run of a switching algorithm.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SwitchTrace {
    pub input: MarkedTableau,
    pub steps: Vec<SwitchStep>,
    pub rep_changes: Vec<RepChange>,
    pub rows: Vec<TraceRow>,
    pub output: MarkedTableau,
    /// Forward runs: the value of `i` at which Phase 1 ended (`ℓ(β) + 1` if
    /// Phase 2 was empty). Reverse runs: the value of `i` at which reverse
    /// Phase 1 began (0 if it never did).
    pub transition: u8,
}

impl SwitchTrace {
    /// Renders the rows as a `Step | i | Word | Note` table.
    pub fn table(&self) -> String {
        let mut s = String::new();
        for row in &self.rows {
            s.push_str(&format!("{} | {} | {}", row.label, row.i, row.word));
            if let Some(n) = &row.note {
                s.push_str(" | ");
                s.push_str(n);
            }
            s.push('\n');
        }
        s
    }
}

/// Working state: the reading word as symbols (`None` = marker), kept in an
/// explicit representative.
struct State {
    shape: ShiftedSkewShape,
    cells: Vec<Cell>,
    sym: Vec<Option<Letter>>,
    m: usize,
    steps: Vec<SwitchStep>,
    rep_changes: Vec<RepChange>,
    rows: Vec<TraceRow>,
    pending_note: Option<String>,
    last_back: Option<bool>,
}

impl State {
    fn new(t: &MarkedTableau) -> Result<State> {
        let t = t.canonical_form();
        let sym = t.symbols();
        let m = sym.iter().position(Option::is_none).ok_or(Error::Precondition("a marker is required"))?;
        Ok(State {
            shape: t.shape().clone(),
            cells: t.shape().cells(),
            sym,
            m,
            steps: Vec::new(),
            rep_changes: Vec::new(),
            rows: Vec::new(),
            pending_note: None,
            last_back: None,
        })
    }

    fn word(&self) -> Word {
        Word::from_symbols(&self.sym).expect("one marker")
    }

    fn tableau(&self) -> MarkedTableau {
        MarkedTableau::from_reading_word(self.shape.clone(), &self.word()).expect("same shape").canonical_form()
    }

    fn row(&mut self, label: &str, i: u8) {
        let note = self.pending_note.take();
        let word = self.word();
        self.rows.push(TraceRow { label: String::from(label), i, word, note });
    }

    fn family_positions(&self, i: u8) -> impl Iterator<Item = usize> + '_ {
        (0..self.sym.len()).filter(move |&p| self.sym[p].is_some_and(|l| l.value() == i))
    }

    fn first(&self, i: u8) -> Option<usize> {
        self.family_positions(i).next()
    }

    /// Whether `⊠` precedes every letter of family `i`.
    fn precedes_family(&self, i: u8) -> bool {
        self.family_positions(i).all(|p| p > self.m)
    }

    /// Sets the primed state of `first(i)`, logging a change if it toggles.
    fn set_first(&mut self, i: u8, primed: bool) {
        if let Some(p) = self.first(i) {
            let l = self.sym[p].expect("letter");
            if l.is_primed() != primed {
                self.sym[p] = Some(l.with_primed(primed));
                self.rep_changes.push(RepChange { before_step: self.steps.len(), cell: self.cells[p], family: i, primed });
                if primed {
                    self.pending_note = Some(format!("First {i} changes to {i}'."));
                } else {
                    self.pending_note = Some(format!("First {i}' changes to {i}."));
                }
            }
        }
    }

    fn canonicalize(&mut self) {
        let mut letters: Vec<Letter> = self.sym.iter().flatten().copied().collect();
        canonicalize_letters(&mut letters);
        let mut it = letters.into_iter();
        for s in self.sym.iter_mut() {
            if s.is_some() {
                *s = it.next();
            }
        }
    }

    /// Nearest occurrence of `t` after the marker.
    fn next_after(&self, t: Letter) -> Option<usize> {
        (self.m + 1..self.sym.len()).find(|&p| self.sym[p] == Some(t))
    }

    /// Nearest occurrence of `t` before the marker.
    fn prev_before(&self, t: Letter) -> Option<usize> {
        (0..self.m).rev().find(|&p| self.sym[p] == Some(t))
    }

    fn between(&self, p: usize) -> core::ops::Range<usize> {
        if p < self.m {
            p + 1..self.m
        } else {
            self.m + 1..p
        }
    }

    /// Whether switching with position `p` leaves a ballot word.
    fn valid(&self, p: usize) -> bool {
        let mut sym = self.sym.clone();
        sym.swap(self.m, p);
        let letters: Vec<Letter> = sym.into_iter().flatten().collect();
        is_ballot_walk(&Word::new(letters))
    }

    fn exceptional(&self, p: usize) -> bool {
        let t = self.sym[p].expect("letter");
        t.is_primed()
            && p < self.m
            && self.first(t.value()) == Some(p)
            && self.between(p).all(|q| self.sym[q] != Some(t.with_primed(false)))
    }

    fn inverse_exceptional(&self, p: usize) -> bool {
        let t = self.sym[p].expect("letter");
        t.is_primed()
            && p > self.m
            && self.first(t.value()) == Some(p)
            && self.between(p).all(|q| self.sym[q] != Some(t.with_primed(false)))
    }

    /// Performs the switch with position `p`, which must be a valid switch.
    fn switch(&mut self, p: usize, phase: Phase, i: u8) -> Result<()> {
        let t = self.sym[p].ok_or_else(|| Error::Invariant(String::from("switch with the marker")))?;
        if self.between(p).any(|q| self.sym[q] == Some(t)) {
            return Err(Error::Invariant(format!("not a switch: another {t} lies between")));
        }
        if !self.valid(p) {
            return Err(Error::Invariant(format!("invalid switch with {t} in {}", self.word())));
        }
        let hop = if t.is_primed() { p > self.m } else { p < self.m };
        let exceptional = self.exceptional(p);
        let inverse_exceptional = self.inverse_exceptional(p);
        let index = if exceptional || inverse_exceptional { t.with_primed(false) } else { t };
        let before = self.word();
        let from = self.cells[self.m];
        let to = self.cells[p];
        self.sym.swap(self.m, p);
        self.last_back = Some(p < self.m);
        self.m = p;
        let after = self.word();
        self.steps.push(SwitchStep {
            phase,
            i,
            symbol: t,
            index,
            from,
            to,
            hop,
            exceptional,
            inverse_exceptional,
            adjacent: adjacent(from, to),
            before,
            after,
        });
        self.row(phase.label(), i);
        Ok(())
    }

    /// Switches with `p` if it is valid; reports whether it did.
    fn try_switch(&mut self, p: Option<usize>, phase: Phase, i: u8) -> Result<bool> {
        match p {
            Some(p) if self.valid(p) => self.switch(p, phase, i).map(|_| true),
            _ => Ok(false),
        }
    }

    fn into_trace(self, input: &MarkedTableau, transition: u8) -> SwitchTrace {
        let output = self.tableau();
        SwitchTrace {
            input: input.clone(),
            steps: self.steps,
            rep_changes: self.rep_changes,
            rows: self.rows,
            output,
            transition,
        }
    }

    /// The `i, i+1`-subword ends `… i (i+1)* ⊠`: position of that `i`.
    fn form_2a(&self, i: u8) -> Option<usize> {
        let skip = Letter::unprimed(i + 1);
        (0..self.m)
            .rev()
            .filter(|&q| self.sym[q].is_some_and(|l| l.value() == i || l.value() == i + 1))
            .find(|&q| self.sym[q] != Some(skip))
            .filter(|&q| self.sym[q] == Some(Letter::unprimed(i)))
    }

    /// The `i, i+1`-subword continues `⊠ (i')* (i+1)' …`: position of that `(i+1)'`.
    fn form_2b(&self, i: u8) -> Option<usize> {
        let skip = Letter::primed(i);
        (self.m + 1..self.sym.len())
            .filter(|&q| self.sym[q].is_some_and(|l| l.value() == i || l.value() == i + 1))
            .find(|&q| self.sym[q] != Some(skip))
            .filter(|&q| self.sym[q] == Some(Letter::primed(i + 1)))
    }

    /// The `i-1, i`-subword ends `… i' (i-1)'* ⊠`: position of that `i'`.
    fn form_r2b(&self, i: u8) -> Option<usize> {
        let skip = Letter::primed(i - 1);
        (0..self.m)
            .rev()
            .filter(|&q| self.sym[q].is_some_and(|l| l.value() == i || l.value() == i - 1))
            .find(|&q| self.sym[q] != Some(skip))
            .filter(|&q| self.sym[q] == Some(Letter::primed(i)))
    }

    /// The `i-1, i`-subword continues `⊠ i* (i-1) …`: position of that `i-1`.
    fn form_r2a(&self, i: u8) -> Option<usize> {
        let skip = Letter::unprimed(i);
        (self.m + 1..self.sym.len())
            .filter(|&q| self.sym[q].is_some_and(|l| l.value() == i || l.value() == i - 1))
            .find(|&q| self.sym[q] != Some(skip))
            .filter(|&q| self.sym[q] == Some(Letter::unprimed(i - 1)))
    }

    /// Whether replacing `⊠` by `fill` gives an `(i-1)`-ballot word.
    fn ballot_with_marker_as(&self, fill: Letter, i: u8) -> bool {
        let letters: Vec<Letter> = self.sym.iter().map(|s| s.unwrap_or(fill)).collect();
        is_i_ballot(&Word::new(letters), i)
    }

    // --- forward phases ---------------------------------------------------

    fn phase_2a(&mut self, i: u8) -> Result<()> {
        if self.precedes_family(i) {
            return self.phase_2b(i);
        }
        self.set_first(i, true);
        loop {
            let p = self.prev_before(Letter::primed(i));
            let phase = match p {
                Some(p) if self.exceptional(p) => Phase::P2aExceptional,
                _ => Phase::P2a,
            };
            if !self.try_switch(p, phase, i)? {
                break;
            }
        }
        if self.precedes_family(i) {
            return self.phase_2b(i);
        }
        // The closing hop happens exactly when it is valid.
        self.try_switch(self.form_2a(i), Phase::P2aHop, i)?;
        Ok(())
    }

    fn phase_2b(&mut self, i: u8) -> Result<()> {
        while self.try_switch(self.next_after(Letter::unprimed(i)), Phase::P2b, i)? {}
        // The closing hop happens exactly when it is valid.
        self.try_switch(self.form_2b(i), Phase::P2bHop, i)?;
        Ok(())
    }

    // --- reverse phases ---------------------------------------------------

    /// Reverse Phase 2(b) at `i`; returns whether to enter reverse Phase 1.
    fn reverse_2b(&mut self, i: u8) -> Result<bool> {
        while self.try_switch(self.prev_before(Letter::unprimed(i)), Phase::R2b, i)? {}
        if self.precedes_family(i) {
            return self.reverse_2a(i);
        }
        if i > 1 && self.ballot_with_marker_as(Letter::unprimed(i), i - 1) {
            return Ok(true);
        }
        if i > 1 {
            // The closing inverse hop happens exactly when it is valid.
            self.try_switch(self.form_r2b(i), Phase::R2bHop, i)?;
        }
        Ok(false)
    }

    /// Reverse Phase 2(a) at `i`; returns whether to enter reverse Phase 1.
    fn reverse_2a(&mut self, i: u8) -> Result<bool> {
        while self.try_switch(self.next_after(Letter::primed(i)), Phase::R2a, i)? {}
        if i > 1 && self.ballot_with_marker_as(Letter::primed(i), i - 1) {
            return Ok(true);
        }
        if i > 1 {
            // The closing inverse hop happens exactly when it is valid.
            self.try_switch(self.form_r2a(i), Phase::R2aHop, i)?;
        }
        Ok(false)
    }
}

/// `esh` by the switching algorithm, with the full step log.
pub fn esh_switching(t: &MarkedTableau) -> Result<(MarkedTableau, SwitchTrace)> {
    check_inner(t)?;
    let r = families(t);
    let mut st = State::new(t)?;
    st.pending_note = Some(String::from("Begin with canonical form."));
    st.row("Start", 1);
    let mut i: u8 = 1;
    while i <= r {
        let Some(p) = st.next_after(Letter::primed(i)) else { break };
        st.switch(p, Phase::P1, i)?;
        let q = st
            .prev_before(Letter::unprimed(i))
            .ok_or_else(|| Error::Invariant(format!("Phase 1 found no {i} before the marker")))?;
        st.switch(q, Phase::P1, i)?;
        i += 1;
    }
    let s = i;
    while i <= r {
        if st.last_back.unwrap_or(true) {
            st.phase_2a(i)?;
        } else {
            st.phase_2b(i)?;
        }
        i += 1;
    }
    let trace = st.into_trace(t, s);
    Ok((trace.output.clone(), trace))
}

/// `esh⁻¹` by the reverse switching algorithm, with its step log.
pub fn esh_switching_inverse(t: &MarkedTableau) -> Result<(MarkedTableau, SwitchTrace)> {
    check_outer(t)?;
    let r = families(t);
    let mut st = State::new(t)?;
    st.pending_note = Some(String::from("Begin with canonical form."));
    st.row("Start", r);
    let mut i = r;
    let full: Vec<Letter> = st.sym.iter().map(|s| s.unwrap_or(Letter::unprimed(r + 1))).collect();
    let mut phase1 = is_ballot_walk(&Word::new(full));
    while !phase1 && i >= 1 {
        if st.precedes_family(i) {
            st.set_first(i, true);
        }
        let enter = if st.last_back.unwrap_or(true) { st.reverse_2b(i)? } else { st.reverse_2a(i)? };
        i -= 1;
        phase1 = enter;
    }
    let transition = if phase1 { i } else { 0 };
    while phase1 && i >= 1 {
        st.set_first(i, true);
        let p = st
            .next_after(Letter::unprimed(i))
            .ok_or_else(|| Error::Invariant(format!("reverse Phase 1 found no {i} after the marker")))?;
        st.switch(p, Phase::R1, i)?;
        let q = st
            .prev_before(Letter::primed(i))
            .ok_or_else(|| Error::Invariant(format!("reverse Phase 1 found no {i}' before the marker")))?;
        st.switch(q, Phase::R1, i)?;
        i -= 1;
    }
    st.canonicalize();
    let trace = st.into_trace(t, transition);
    Ok((trace.output.clone(), trace))
}

// ---------------------------------------------------------------------------
// Method selection
// ---------------------------------------------------------------------------

/// Which algorithm computes `esh`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Method {
    Oracle,
    Coplactic,
    Switching,
    /// The per-symbol composite `esh_ℓ ∘ esh_ℓ' ∘ … ∘ esh_1 ∘ esh_1'`.
    Indexed,
}

pub fn esh(t: &MarkedTableau, method: Method) -> Result<MarkedTableau> {
    match method {
        Method::Oracle => esh_oracle(t),
        Method::Coplactic => esh_coplactic(t),
        Method::Switching => esh_switching(t).map(|(o, _)| o),
        Method::Indexed => esh_indexed(t),
    }
}

pub fn esh_inverse(t: &MarkedTableau, method: Method) -> Result<MarkedTableau> {
    match method {
        Method::Oracle => esh_oracle_inverse(t),
        Method::Coplactic => esh_coplactic_inverse(t),
        Method::Switching => esh_switching_inverse(t).map(|(o, _)| o),
        Method::Indexed => esh_indexed_inverse(t),
    }
}

// ---------------------------------------------------------------------------
// Index decomposition and paused states
// ---------------------------------------------------------------------------

/// A paused level: `None` is level 0, otherwise a symbol `i'` or `i`.
pub type Level = Option<Letter>;

/// The levels `0, 1', 1, 2', 2, …, r', r` in order.
pub fn levels(r: u8) -> Vec<Level> {
    let mut out = vec![None];
    for i in 1..=r {
        out.push(Some(Letter::primed(i)));
        out.push(Some(Letter::unprimed(i)));
    }
    out
}

/// The level preceding symbol `t`: `i-1` for `t = i'`, `i'` for `t = i`.
pub fn predecessor(t: Letter) -> Level {
    if t.is_primed() {
        if t.value() == 1 {
            None
        } else {
            Some(Letter::unprimed(t.value() - 1))
        }
    } else {
        Some(Letter::primed(t.value()))
    }
}

fn is_straight_cells(cells: &BTreeSet<Cell>) -> bool {
    let mut rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(r, c) in cells {
        rows.entry(r).or_default().push(c);
    }
    let mut prev_len = usize::MAX;
    for (k, (&r, cols)) in rows.iter().enumerate() {
        if r != k {
            return false;
        }
        let len = cols.len();
        if cols.iter().enumerate().any(|(j, &c)| c != r + j) || len >= prev_len {
            return false;
        }
        prev_len = len;
    }
    true
}

/// Membership in the paused state `Z_level`: ballot and semistandard, with
/// `⊠` an outer co-corner of the letters `≤ level` (in canonical form) and an
/// inner co-corner of the rest.
pub fn in_z_state(t: &MarkedTableau, level: Level) -> bool {
    let Some(m) = t.marker() else { return false };
    if !ballot_semistandard(t) {
        return false;
    }
    let c = t.canonical_form();
    let mut low: BTreeSet<Cell> = t.shape().inner().parts().iter().enumerate().flat_map(|(r, &len)| (r..r + len).map(move |col| (r, col))).collect();
    if let Some(lv) = level {
        low.extend(c.entries().iter().filter(|(_, &l)| l <= lv).map(|(&cell, _)| cell));
    }
    if !is_straight_cells(&low) {
        return false;
    }
    low.insert(m);
    is_straight_cells(&low)
}

/// All tableaux of `instance`'s shape and content in `Z_level`, sorted.
pub fn z_states(instance: &Instance, level: Level) -> Vec<MarkedTableau> {
    let mut out: Vec<MarkedTableau> =
        marked_fillings(instance).into_iter().filter(|t| in_z_state(t, level)).collect();
    out.sort();
    out
}

/// Every ballot semistandard canonical filling of `γ^c/α` with content `β`
/// plus a marker in any cell.
pub fn marked_fillings(instance: &Instance) -> Vec<MarkedTableau> {
    let shape = instance.shape();
    let cells = shape.cells();
    let content = instance.beta.parts().to_vec();
    let mut out = Vec::new();
    for m in 0..cells.len() {
        let mut placed: BTreeMap<Cell, Letter> = BTreeMap::new();
        let mut remaining = content.clone();
        let mut seen = vec![false; content.len() + 1];
        fill_marked(&cells, m, 0, &mut remaining, &mut placed, &mut seen, &mut |placed| {
            let t = MarkedTableau::new(shape.clone(), placed.clone(), Some(cells[m])).expect("fits");
            if is_ballot_walk(&t.reading_word()) {
                out.push(t);
            }
        });
    }
    out
}

fn fill_marked(
    cells: &[Cell],
    m: usize,
    k: usize,
    remaining: &mut [usize],
    placed: &mut BTreeMap<Cell, Letter>,
    seen: &mut [bool],
    emit: &mut impl FnMut(&BTreeMap<Cell, Letter>),
) {
    if k == cells.len() {
        emit(placed);
        return;
    }
    if k == m {
        fill_marked(cells, m, k + 1, remaining, placed, seen, emit);
        return;
    }
    let (r, c) = cells[k];
    // Nearest letters west in the row and south in the column.
    let west = (r..c).rev().find_map(|cc| placed.get(&(r, cc)).copied());
    let south = placed.range((r + 1, c)..).filter(|(&(_, cc), _)| cc == c).map(|(_, &l)| l).next();
    for fam in 1..=remaining.len() {
        if remaining[fam - 1] == 0 {
            continue;
        }
        for primed in [true, false] {
            if primed && !seen[fam] {
                continue;
            }
            let l = if primed { Letter::primed(fam as u8) } else { Letter::unprimed(fam as u8) };
            if west.is_some_and(|w| l < w || (l == w && l.is_primed())) {
                continue;
            }
            if south.is_some_and(|s| l > s || (l == s && !l.is_primed())) {
                continue;
            }
            remaining[fam - 1] -= 1;
            let was = seen[fam];
            seen[fam] = true;
            placed.insert((r, c), l);
            fill_marked(cells, m, k + 1, remaining, placed, seen, emit);
            placed.remove(&(r, c));
            seen[fam] = was;
            remaining[fam - 1] += 1;
        }
    }
}

/// `esh_t`: all switches of index `t`, starting from a paused state in
/// `Z_{predecessor(t)}` and ending in `Z_t`.
pub fn esh_t(t: &MarkedTableau, symbol: Letter) -> Result<(MarkedTableau, Vec<SwitchStep>)> {
    if !in_z_state(t, predecessor(symbol)) {
        return Err(Error::Precondition("tableau is not in the paused state preceding this symbol"));
    }
    let i = symbol.value();
    let mut st = State::new(t)?;
    let mut done = false;
    // Case 1: an exceptional switch followed by inverse hops.
    if !symbol.is_primed() {
        st.set_first(i, true);
        if let Some(p) = st.prev_before(Letter::primed(i)) {
            if st.exceptional(p) && st.valid(p) {
                st.switch(p, Phase::Resume, i)?;
                while st.try_switch(st.next_after(symbol), Phase::Resume, i)? {}
                done = true;
            }
        }
    }
    // Case 2: a single hop.
    if !done {
        st.canonicalize();
        let p = if symbol.is_primed() { st.next_after(symbol) } else { st.prev_before(symbol) };
        if st.try_switch(p, Phase::Resume, i)? {
            done = true;
        }
    }
    // Case 3: inverse hops, with first(i) primed exactly when t is.
    if !done {
        st.set_first(i, symbol.is_primed());
        loop {
            let p = if symbol.is_primed() {
                st.prev_before(symbol).filter(|&p| !st.exceptional(p))
            } else {
                st.next_after(symbol)
            };
            if !st.try_switch(p, Phase::Resume, i)? {
                break;
            }
        }
    }
    st.canonicalize();
    let out = st.tableau();
    Ok((out, st.steps))
}

/// `esh_t⁻¹`: from `Z_t` back to `Z_{predecessor(t)}`.
pub fn esh_t_inverse(t: &MarkedTableau, symbol: Letter) -> Result<(MarkedTableau, Vec<SwitchStep>)> {
    if !in_z_state(t, Some(symbol)) {
        return Err(Error::Precondition("tableau is not in the paused state of this symbol"));
    }
    let i = symbol.value();
    let primed_i = Letter::primed(i);
    let mut st = State::new(t)?;
    st.set_first(i, true);
    // Case A: one inverse hop of index t, non-exceptional first.
    let plain = if symbol.is_primed() {
        st.prev_before(primed_i).filter(|&p| !st.exceptional(p))
    } else {
        st.next_after(symbol)
    };
    let mut done = st.try_switch(plain, Phase::Resume, i)?;
    if !done && !symbol.is_primed() {
        let p = st.prev_before(primed_i).filter(|&p| st.exceptional(p));
        done = st.try_switch(p, Phase::Resume, i)?;
    }
    // Case B: an inverse exceptional switch.
    if !done && !symbol.is_primed() {
        let p = st.next_after(primed_i).filter(|&p| st.inverse_exceptional(p));
        done = st.try_switch(p, Phase::Resume, i)?;
    }
    // Case C: hops of index t, with first(t) unprimed at the outset. For
    // unprimed t the sequence may close with an inverse exceptional switch,
    // across a first(i) that is an i' in the working representative.
    if !done {
        st.canonicalize();
        loop {
            let p = if symbol.is_primed() { st.next_after(symbol) } else { st.prev_before(symbol) };
            if st.try_switch(p, Phase::Resume, i)? {
                continue;
            }
            if !symbol.is_primed() {
                let f = st.first(i).filter(|&f| f > st.m && st.sym[f] == Some(primed_i) && st.inverse_exceptional(f));
                if st.try_switch(f, Phase::Resume, i)? {
                    continue;
                }
            }
            break;
        }
    }
    st.canonicalize();
    let out = st.tableau();
    Ok((out, st.steps))
}

/// The composite `esh_ℓ ∘ esh_ℓ' ∘ … ∘ esh_1 ∘ esh_1'`, with all steps.
pub fn esh_indexed_run(t: &MarkedTableau) -> Result<(MarkedTableau, Vec<SwitchStep>)> {
    check_inner(t)?;
    let mut cur = t.canonical_form();
    let mut steps = Vec::new();
    for level in levels(families(t)).into_iter().flatten() {
        let (next, s) = esh_t(&cur, level)?;
        steps.extend(s);
        cur = next;
    }
    Ok((cur, steps))
}

pub fn esh_indexed(t: &MarkedTableau) -> Result<MarkedTableau> {
    esh_indexed_run(t).map(|(o, _)| o)
}

pub fn esh_indexed_inverse(t: &MarkedTableau) -> Result<MarkedTableau> {
    check_outer(t)?;
    let mut cur = t.canonical_form();
    for level in levels(families(t)).into_iter().flatten().rev() {
        cur = esh_t_inverse(&cur, level)?.0;
    }
    Ok(cur)
}

/// `sh_t ∘ esh_t`, a permutation of `Z_{predecessor(t)}`, with the steps of
/// its `esh_t` half.
pub fn mini_loop(t: &MarkedTableau, symbol: Letter) -> Result<(MarkedTableau, Vec<SwitchStep>)> {
    let (mid, steps) = esh_t(t, symbol)?;
    Ok((jdt::sh_t(&mid, symbol)?, steps))
}

// ---------------------------------------------------------------------------
// Simple decompositions
// ---------------------------------------------------------------------------

/// Splits `⊠ ⊔ T` into the chain `(⊠, T_{<s}, T_{≥s})`, carries the marker
/// past each piece in turn with `esh` and reassembles. This agrees with
/// `esh` whenever the split is a simple decomposition.
pub fn esh_piecewise(t: &MarkedTableau, s: u8) -> Result<MarkedTableau> {
    check_inner(t)?;
    let t = t.canonical_form();
    let m = t.marker().expect("checked");
    let alpha = t.shape().inner().clone();
    let with_box = alpha.with_added(m.0)?;
    let low: BTreeMap<Cell, Letter> = t.entries().iter().filter(|(_, l)| l.value() < s).map(|(&c, &l)| (c, l)).collect();
    let high: BTreeMap<Cell, Letter> = t
        .entries()
        .iter()
        .filter(|(_, l)| l.value() >= s)
        .map(|(&c, &l)| Ok((c, bump(l, -(s as i16 - 1))?)))
        .collect::<Result<_>>()?;
    let mut mid_cells = cells_of(&with_box);
    mid_cells.extend(low.keys().copied());
    let mid = straight_of(&mid_cells)?;
    let mut pieces = vec![
        MarkedTableau::new(ShiftedSkewShape::new(with_box.clone(), alpha)?, BTreeMap::new(), Some(m))?,
        MarkedTableau::new(ShiftedSkewShape::new(mid.clone(), with_box)?, low, None)?,
        MarkedTableau::new(ShiftedSkewShape::new(t.shape().outer().clone(), mid)?, high, None)?,
    ];
    push_forward(&mut pieces, 0)?;
    push_forward(&mut pieces, 1)?;
    let mut entries: BTreeMap<Cell, Letter> = pieces[0].entries().clone();
    for (&c, &l) in pieces[1].entries() {
        entries.insert(c, bump(l, s as i16 - 1)?);
    }
    Ok(MarkedTableau::new(t.shape().clone(), entries, pieces[2].marker())?.canonical_form())
}

fn cells_of(p: &StrictPartition) -> BTreeSet<Cell> {
    p.parts().iter().enumerate().flat_map(|(r, &len)| (r..r + len).map(move |c| (r, c))).collect()
}

fn straight_of(cells: &BTreeSet<Cell>) -> Result<StrictPartition> {
    if !is_straight_cells(cells) {
        return Err(Error::Invariant(String::from("cells do not form a straight shape")));
    }
    let mut parts: BTreeMap<usize, usize> = BTreeMap::new();
    for &(r, _) in cells {
        *parts.entry(r).or_default() += 1;
    }
    StrictPartition::new(parts.into_values().collect())
}

fn join_pieces(a: &MarkedTableau, b: &MarkedTableau) -> Result<MarkedTableau> {
    let shape = ShiftedSkewShape::new(b.shape().outer().clone(), a.shape().inner().clone())?;
    let mut entries = a.entries().clone();
    entries.extend(b.entries().iter().map(|(&c, &l)| (c, l)));
    MarkedTableau::new(shape, entries, a.marker().or(b.marker()))
}

/// Carries the marker piece at `k` past the piece at `k + 1` with `esh`.
fn push_forward(pieces: &mut [MarkedTableau], k: usize) -> Result<()> {
    let joined = join_pieces(&pieces[k], &pieces[k + 1])?;
    let moved = esh_switching(&joined)?.0;
    let (shape, entries, marker) = moved.into_parts();
    let m = marker.expect("esh keeps the marker");
    let mid = shape.outer().with_removed(m.0)?;
    pieces[k] = MarkedTableau::new(ShiftedSkewShape::new(mid.clone(), shape.inner().clone())?, entries, None)?;
    pieces[k + 1] = MarkedTableau::new(ShiftedSkewShape::new(shape.outer().clone(), mid)?, BTreeMap::new(), Some(m))?;
    Ok(())
}

/// Carries the marker piece at `k + 1` back past the piece at `k` with `sh`.
fn pull_back(pieces: &mut [MarkedTableau], k: usize) -> Result<()> {
    let joined = join_pieces(&pieces[k], &pieces[k + 1])?;
    let moved = jdt::sh(&joined)?;
    let (shape, entries, marker) = moved.into_parts();
    let m = marker.expect("sh keeps the marker");
    let mid = shape.inner().with_added(m.0)?;
    pieces[k] = MarkedTableau::new(ShiftedSkewShape::new(mid.clone(), shape.inner().clone())?, BTreeMap::new(), Some(m))?;
    pieces[k + 1] = MarkedTableau::new(ShiftedSkewShape::new(shape.outer().clone(), mid)?, entries, None)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Monodromy
// ---------------------------------------------------------------------------

/// `ω = sh ∘ esh` on `LR(α, ⊠, β, γ)`.
pub fn omega(t: &MarkedTableau) -> Result<MarkedTableau> {
    jdt::sh(&esh_switching(t)?.0)
}

/// `ω` on a chain `(⊠, T_2, …, T_k)`: `esh` carries the marker piece past
/// every tableau in turn, then `sh` carries it back.
pub fn omega_chain(c: &Chain) -> Result<Chain> {
    if c.marker_index() != 0 {
        return Err(Error::Precondition("the marker piece must come first"));
    }
    let mut pieces: Vec<MarkedTableau> = c.tableaux().to_vec();
    for k in 0..pieces.len() - 1 {
        push_forward(&mut pieces, k)?;
    }
    for k in (0..pieces.len() - 1).rev() {
        pull_back(&mut pieces, k)?;
    }
    Chain::new(pieces)
}

/// Cycle decomposition of `ω` on `LR(α, ⊠, β, γ)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitReport {
    pub instance: Instance,
    /// Each orbit listed from its smallest element, following `ω`.
    pub orbits: Vec<Vec<MarkedTableau>>,
    /// Per orbit: numbers of non-adjacent steps traversing genomic tableaux
    /// in standardization order and in reverse.
    pub genomic_by_orbit: Vec<(usize, usize)>,
    /// Per orbit: the forward traces of its elements, in orbit order.
    pub traces: Vec<Vec<SwitchTrace>>,
}

impl OrbitReport {
    pub fn lr_count(&self) -> usize {
        self.orbits.iter().map(Vec::len).sum()
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_identity(&self) -> bool {
        self.orbits.iter().all(|o| o.len() == 1)
    }
}

/// Cycles of a permutation given as `next[k]`, each from its smallest
/// index.
pub fn cycles(next: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; next.len()];
    let mut out = Vec::new();
    for start in 0..next.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            cyc.push(k);
            k = next[k];
        }
        out.push(cyc);
    }
    out
}

/// Index table of `f` on the sorted list `elems`; errors if `f` leaves the
/// set or is not injective.
pub fn permutation_table(
    elems: &[MarkedTableau],
    f: impl Fn(&MarkedTableau) -> Result<MarkedTableau>,
) -> Result<Vec<usize>> {
    let index: BTreeMap<&MarkedTableau, usize> = elems.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let mut next = Vec::with_capacity(elems.len());
    let mut hit = vec![false; elems.len()];
    for t in elems {
        let img = f(t)?;
        let k = *index.get(&img).ok_or_else(|| Error::Invariant(format!("image {img} outside the set")))?;
        if hit[k] {
            return Err(Error::Invariant(format!("two elements map to {img}")));
        }
        hit[k] = true;
        next.push(k);
    }
    Ok(next)
}

/// The orbits of `ω` on `LR(α, ⊠, β, γ)`.
pub fn orbits(instance: &Instance) -> Result<OrbitReport> {
    let elems = crate::shifted_core::enumerate_lr_pairs(instance, BoxSide::Inner);
    let mut traces = Vec::with_capacity(elems.len());
    let mut next = Vec::with_capacity(elems.len());
    let index: BTreeMap<&MarkedTableau, usize> = elems.iter().enumerate().map(|(k, t)| (t, k)).collect();
    for t in &elems {
        let (out, trace) = esh_switching(t)?;
        let img = jdt::sh(&out)?;
        let k = *index.get(&img).ok_or_else(|| Error::Invariant(format!("ω image {img} outside LR")))?;
        next.push(k);
        traces.push(trace);
    }
    let mut orbits_out = Vec::new();
    let mut genomic = Vec::new();
    let mut orbit_traces = Vec::new();
    for cyc in cycles(&next) {
        let mut counts = (0, 0);
        for &k in &cyc {
            for st in traces[k].steps.iter().filter(|s| !s.adjacent) {
                match st.traversal() {
                    Traversal::Standard => counts.0 += 1,
                    Traversal::Reverse => counts.1 += 1,
                }
            }
        }
        orbits_out.push(cyc.iter().map(|&k| elems[k].clone()).collect());
        orbit_traces.push(cyc.iter().map(|&k| traces[k].clone()).collect());
        genomic.push(counts);
    }
    Ok(OrbitReport { instance: instance.clone(), orbits: orbits_out, genomic_by_orbit: genomic, traces: orbit_traces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn tab(shape: &str, word: &str) -> MarkedTableau {
        MarkedTableau::from_reading_word(shape.parse().unwrap(), &word.parse().unwrap()).unwrap()
    }

    #[test]
    fn single_box_swaps() {
        let t = tab("3/1", "X 1");
        for method in [Method::Oracle, Method::Coplactic, Method::Switching, Method::Indexed] {
            let out = esh(&t, method).unwrap();
            assert_eq!(out.reading_word().to_string(), "1 X", "{method:?}");
            assert_eq!(esh_inverse(&out, method).unwrap(), t, "{method:?}");
        }
    }

    #[test]
    fn levels_in_order() {
        let l = levels(2);
        let shown: Vec<String> = l.iter().map(|x| x.map_or(String::from("0"), |l| l.to_string())).collect();
        assert_eq!(shown, ["0", "1'", "1", "2'", "2"]);
        assert_eq!(predecessor(Letter::primed(1)), None);
        assert_eq!(predecessor(Letter::unprimed(2)), Some(Letter::primed(2)));
        assert_eq!(predecessor(Letter::primed(2)), Some(Letter::unprimed(1)));
    }

    #[test]
    fn cycles_of_permutation() {
        assert_eq!(cycles(&[1, 0, 2]), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn straight_cell_sets() {
        let s: BTreeSet<Cell> = [(0, 0), (0, 1), (1, 1)].into_iter().collect();
        assert!(is_straight_cells(&s));
        let s: BTreeSet<Cell> = [(0, 0), (1, 1)].into_iter().collect();
        assert!(!is_straight_cells(&s));
        assert!(is_straight_cells(&BTreeSet::new()));
    }
}
