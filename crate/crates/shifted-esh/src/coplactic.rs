//! Coplactic operators on words in the shifted alphabet: lattice walks,
//! critical substrings, the raising/lowering operators `E_i, F_i, E'_i, F'_i`,
//! ballotness criteria, removability and break points.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::shifted_core::{canonicalize_letters, standardize_letters, Letter, Word};

/// A unit step of a lattice walk.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Step {
    East,
    West,
    North,
    South,
}

impl Step {
    fn delta(self) -> (i64, i64) {
        match self {
            Step::East => (1, 0),
            Step::West => (-1, 0),
            Step::North => (0, 1),
            Step::South => (0, -1),
        }
    }

    fn symbol(self) -> char {
        match self {
            Step::East => 'E',
            Step::West => 'W',
            Step::North => 'N',
            Step::South => 'S',
        }
    }
}

/// The lattice walk of the `{i', i, (i+1)', i+1}` subword of a word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Walk {
    /// Positions (in the word's letter sequence) of the letters walked over.
    pub positions: Vec<usize>,
    /// The letters walked over.
    pub letters: Vec<Letter>,
    /// `points[k]` is the location before letter `k`; the last point is the
    /// endpoint.
    pub points: Vec<(i64, i64)>,
    pub steps: Vec<Step>,
}

impl Walk {
    pub fn end(&self) -> (i64, i64) {
        *self.points.last().expect("walk starts at the origin")
    }

    /// One line per step: `letter step (x,y) -> (x,y)`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for k in 0..self.steps.len() {
            let (a, b) = (self.points[k], self.points[k + 1]);
            s.push_str(&format!(
                "{} {} ({},{}) -> ({},{})\n",
                self.letters[k],
                self.steps[k].symbol(),
                a.0,
                a.1,
                b.0,
                b.1
            ));
        }
        s
    }
}

/// Role of a letter in the `{i', i, (i+1)', i+1}` alphabet.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Role {
    LowPrimed,
    Low,
    HighPrimed,
    High,
}

fn role(l: Letter, i: u8) -> Option<Role> {
    match (l.value() == i, l.value() == i + 1, l.is_primed()) {
        (true, _, true) => Some(Role::LowPrimed),
        (true, _, false) => Some(Role::Low),
        (_, true, true) => Some(Role::HighPrimed),
        (_, true, false) => Some(Role::High),
        _ => None,
    }
}

fn step_for(r: Role, at: (i64, i64)) -> Step {
    let on_axis = at.0 == 0 || at.1 == 0;
    match (r, on_axis) {
        (Role::LowPrimed, _) => Step::East,
        (Role::Low, true) => Step::East,
        (Role::Low, false) => Step::South,
        (Role::HighPrimed, true) => Step::North,
        (Role::HighPrimed, false) => Step::West,
        (Role::High, _) => Step::North,
    }
}

fn walk_letters(letters: &[Letter], i: u8) -> Walk {
    let mut w = Walk { positions: Vec::new(), letters: Vec::new(), points: Vec::new(), steps: Vec::new() };
    let mut at = (0i64, 0i64);
    w.points.push(at);
    for (p, &l) in letters.iter().enumerate() {
        if let Some(r) = role(l, i) {
            let s = step_for(r, at);
            let d = s.delta();
            at = (at.0 + d.0, at.1 + d.1);
            w.positions.push(p);
            w.letters.push(l);
            w.steps.push(s);
            w.points.push(at);
        }
    }
    w
}

/// The walk of the `{i', i, (i+1)', i+1}` subword of `w` (the marker, if
/// any, is skipped). The walk does not depend on the representative.
pub fn walk(w: &Word, i: u8) -> Walk {
    walk_letters(w.letters(), i)
}

/// Whether the `{i', i, (i+1)', i+1}` subword of `w` is ballot.
pub fn is_i_ballot(w: &Word, i: u8) -> bool {
    is_i_ballot_letters(w.letters(), i)
}

fn is_i_ballot_letters(letters: &[Letter], i: u8) -> bool {
    walk_letters(letters, i).end().1 == 0
}

fn is_ballot_letters(letters: &[Letter]) -> bool {
    let top = letters.iter().map(|l| l.value()).max().unwrap_or(0);
    (1..=top).all(|i| is_i_ballot_letters(letters, i))
}

/// Ballotness by the walk criterion: every `{i', i, (i+1)', i+1}` walk ends
/// on the x-axis.
pub fn is_ballot_walk(w: &Word) -> bool {
    is_ballot_letters(w.letters())
}

/// Ballotness by the raising-operator criterion: every `E_i` and `E'_i` is
/// undefined.
pub fn is_ballot_raising(w: &Word) -> bool {
    let top = w.max_family();
    (1..top).all(|i| raise(w, i).is_none() && raise_primed(w, i).is_none())
}

/// Result of the counting criterion, with each family of conditions
/// reported separately.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CountingVerdict {
    /// The two local conditions hold for every `i` and every `j ≥ 1`.
    pub local_conditions: bool,
    /// The first local condition at `j = 0`: the word does not end in `i+1`
    /// or `(i+1)'`.
    pub start_condition: bool,
    /// `m_i(j) ≥ m_{i+1}(j)` for every `i` and `j`.
    pub dominance: bool,
    /// The first violation found, as `(i, j)`: the family pair `i, i+1` and
    /// the position `j` in the doubled reading (`0` for the start condition).
    pub first_failure: Option<(u8, usize)>,
}

impl CountingVerdict {
    pub fn ballot(self) -> bool {
        self.local_conditions && self.start_condition && self.dominance
    }
}

/// The counting criterion for ballotness: read the word once backwards
/// counting unprimed `i`, then once forwards counting `i'`, and check the
/// local conditions wherever the counts for `i` and `i+1` agree. The word is
/// taken in canonical form.
pub fn counting_criterion(w: &Word) -> CountingVerdict {
    let w = w.canonical_form();
    let letters = w.letters();
    let n = letters.len();
    let top = w.max_family();
    let mut local = true;
    let mut start = true;
    let mut dominance = true;
    let mut first_failure = None;
    for i in 1..=top {
        let hi = i + 1;
        if let Some(&last) = letters.last() {
            if last == Letter::unprimed(hi) || last == Letter::primed(hi) {
                start = false;
                first_failure.get_or_insert((i, 0));
            }
        }
        let (mut mi, mut mh) = (0usize, 0usize);
        // m(j) for j = 1..=2n; evaluate conditions at each j after updating.
        for j in 1..=2 * n {
            let letter = if j <= n { letters[n - j] } else { letters[j - n - 1] };
            if j <= n {
                if letter == Letter::unprimed(i) {
                    mi += 1;
                }
                if letter == Letter::unprimed(hi) {
                    mh += 1;
                }
            } else {
                if letter == Letter::primed(i) {
                    mi += 1;
                }
                if letter == Letter::primed(hi) {
                    mh += 1;
                }
            }
            if mi < mh {
                dominance = false;
                first_failure.get_or_insert((i, j));
            }
            if mi == mh {
                if j < n {
                    let next = letters[n - j - 1];
                    if next == Letter::unprimed(hi) || next == Letter::primed(hi) {
                        local = false;
                        first_failure.get_or_insert((i, j));
                    }
                } else if j < 2 * n {
                    let next = letters[j - n];
                    if next == Letter::unprimed(i) || next == Letter::primed(hi) {
                        local = false;
                        first_failure.get_or_insert((i, j));
                    }
                }
            }
        }
    }
    CountingVerdict { local_conditions: local, start_condition: start, dominance, first_failure }
}

/// Type of a critical substring (1 through 5).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum CriticalType {
    One,
    Two,
    Three,
    Four,
    Five,
}

/// A critical substring found in some representative of a word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Critical {
    pub kind: CriticalType,
    /// Position (in the word's letters) of the first letter of the substring.
    pub start: usize,
    /// Position of the last letter (inclusive).
    pub end: usize,
    /// The representative's letters in which the substring was found.
    pub representative: Vec<Letter>,
    /// Location of the substring in the walk.
    pub location: (i64, i64),
}

/// Direction of a coplactic operator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    /// Lowering (`F`).
    Lower,
    /// Raising (`E`).
    Raise,
}

/// The representatives of `letters` obtained by toggling the first letter of
/// family `i` and/or of family `i+1`.
fn pair_representatives(letters: &[Letter], i: u8) -> Vec<Vec<Letter>> {
    let fi = letters.iter().position(|l| l.value() == i);
    let fh = letters.iter().position(|l| l.value() == i + 1);
    let mut out = Vec::with_capacity(4);
    for ti in [false, true] {
        if ti && fi.is_none() {
            continue;
        }
        for th in [false, true] {
            if th && fh.is_none() {
                continue;
            }
            let mut v = letters.to_vec();
            if ti {
                let p = fi.expect("checked");
                v[p] = v[p].toggled();
            }
            if th {
                let p = fh.expect("checked");
                v[p] = v[p].toggled();
            }
            out.push(v);
        }
    }
    out
}

fn criticals_in(rep: &[Letter], walk: &Walk, i: u8, dir: Direction, out: &mut Vec<Critical>) {
    let roles: Vec<Role> = walk.positions.iter().map(|&p| role(rep[p], i).expect("walked letter")).collect();
    let n = roles.len();
    let pts = &walk.points;
    let push = |out: &mut Vec<Critical>, kind, s: usize, e: usize| {
        out.push(Critical {
            kind,
            start: walk.positions[s],
            end: walk.positions[e],
            representative: rep.to_vec(),
            location: pts[s],
        })
    };
    for e in 0..n {
        let at = pts[e];
        // Scans back from e over `middle` roles and requires `first` before.
        let run_start = |middle: Role, first: Role| -> Option<usize> {
            let mut s = e;
            while s > 0 && roles[s - 1] == middle {
                s -= 1;
            }
            if s > 0 && roles[s - 1] == first {
                Some(s - 1)
            } else {
                None
            }
        };
        let x_line = |p: (i64, i64)| p.0 == 0 || (p.0 == 1 && p.1 >= 1);
        let y_line = |p: (i64, i64)| p.1 == 0 || (p.1 == 1 && p.0 >= 1);
        match dir {
            Direction::Lower => {
                match roles[e] {
                    Role::HighPrimed => {
                        if let Some(s) = run_start(Role::LowPrimed, Role::Low) {
                            if y_line(pts[s]) {
                                push(out, CriticalType::One, s, e);
                            }
                        }
                    }
                    Role::LowPrimed => {
                        if let Some(s) = run_start(Role::High, Role::Low) {
                            if x_line(pts[s]) {
                                push(out, CriticalType::Two, s, e);
                            }
                        }
                        if at.0 == 0 {
                            push(out, CriticalType::Four, e, e);
                        }
                    }
                    Role::Low => {
                        if at.1 == 0 {
                            push(out, CriticalType::Three, e, e);
                        }
                    }
                    Role::High => {}
                }
                if matches!(roles[e], Role::Low | Role::HighPrimed) && at.0 == 1 && at.1 >= 1 {
                    push(out, CriticalType::Five, e, e);
                }
            }
            Direction::Raise => {
                match roles[e] {
                    Role::Low => {
                        if let Some(s) = run_start(Role::High, Role::HighPrimed) {
                            if x_line(pts[s]) {
                                push(out, CriticalType::One, s, e);
                            }
                        }
                    }
                    Role::High => {
                        if let Some(s) = run_start(Role::LowPrimed, Role::HighPrimed) {
                            if y_line(pts[s]) {
                                push(out, CriticalType::Two, s, e);
                            }
                        }
                        if at.1 == 0 {
                            push(out, CriticalType::Four, e, e);
                        }
                    }
                    Role::HighPrimed => {
                        if at.0 == 0 {
                            push(out, CriticalType::Three, e, e);
                        }
                    }
                    Role::LowPrimed => {}
                }
                if matches!(roles[e], Role::Low | Role::HighPrimed) && at.1 == 1 && at.0 >= 1 {
                    push(out, CriticalType::Five, e, e);
                }
            }
        }
    }
}

/// All critical substrings of the given direction for the pair `(i, i+1)`,
/// over all representatives.
pub fn critical_substrings(w: &Word, i: u8, dir: Direction) -> Vec<Critical> {
    let letters = w.letters();
    let walk = walk_letters(letters, i);
    let mut out = Vec::new();
    for rep in pair_representatives(letters, i) {
        criticals_in(&rep, &walk, i, dir, &mut out);
    }
    out
}

/// The final critical substring: the one with the largest end position (ties
/// broken by the largest start position, then by the smallest type).
pub fn final_critical(w: &Word, i: u8, dir: Direction) -> Option<Critical> {
    let mut all = critical_substrings(w, i, dir);
    all.sort_by(|a, b| (a.end, a.start, core::cmp::Reverse(a.kind)).cmp(&(b.end, b.start, core::cmp::Reverse(b.kind))));
    all.pop()
}

fn transform(c: &Critical, i: u8, dir: Direction) -> Option<Vec<Letter>> {
    let lo = Letter::unprimed(i);
    let lo_p = Letter::primed(i);
    let hi = Letter::unprimed(i + 1);
    let hi_p = Letter::primed(i + 1);
    let mut v = c.representative.clone();
    let (s, e) = (c.start, c.end);
    match (dir, c.kind) {
        (_, CriticalType::Five) => return None,
        (Direction::Lower, CriticalType::One) => {
            v[s] = hi_p;
            v[e] = hi;
        }
        (Direction::Lower, CriticalType::Two) => {
            v[s] = hi_p;
            v[e] = lo;
        }
        (Direction::Lower, CriticalType::Three) => v[e] = hi,
        (Direction::Lower, CriticalType::Four) => v[e] = hi_p,
        (Direction::Raise, CriticalType::One) => {
            v[s] = lo;
            v[e] = lo_p;
        }
        (Direction::Raise, CriticalType::Two) => {
            v[s] = lo;
            v[e] = hi_p;
        }
        (Direction::Raise, CriticalType::Three) => v[e] = lo_p,
        (Direction::Raise, CriticalType::Four) => v[e] = lo,
    }
    canonicalize_letters(&mut v);
    Some(v)
}

fn rewrap(w: &Word, letters: Vec<Letter>) -> Word {
    match w.marker() {
        Some(m) => Word::with_marker(letters, m).expect("same length"),
        None => Word::new(letters),
    }
}

fn apply_unprimed(w: &Word, i: u8, dir: Direction) -> Option<Word> {
    let c = final_critical(w, i, dir)?;
    transform(&c, i, dir).map(|v| rewrap(w, v))
}

/// The lowering operator `F_i`, or `None` when undefined.
pub fn lower(w: &Word, i: u8) -> Option<Word> {
    apply_unprimed(w, i, Direction::Lower)
}

/// The raising operator `E_i`, or `None` when undefined.
pub fn raise(w: &Word, i: u8) -> Option<Word> {
    apply_unprimed(w, i, Direction::Raise)
}

/// The primed lowering operator `F'_i`: in some representative the last `i`
/// lies right of the last `(i+1)'`; that `i` becomes `(i+1)'`.
pub fn lower_primed(w: &Word, i: u8) -> Option<Word> {
    primed_move(w, Letter::unprimed(i), Letter::primed(i + 1), Letter::primed(i + 1))
}

/// The primed raising operator `E'_i`: in some representative the last
/// `(i+1)'` lies right of the last `i`; that `(i+1)'` becomes `i`.
pub fn raise_primed(w: &Word, i: u8) -> Option<Word> {
    primed_move(w, Letter::primed(i + 1), Letter::unprimed(i), Letter::unprimed(i))
}

fn primed_move(w: &Word, from: Letter, other: Letter, to: Letter) -> Option<Word> {
    let i = from.value().min(other.value());
    for mut rep in pair_representatives(w.letters(), i) {
        let last_from = rep.iter().rposition(|&l| l == from);
        let last_other = rep.iter().rposition(|&l| l == other);
        if let Some(p) = last_from {
            if last_other.is_none_or(|q| p > q) {
                rep[p] = to;
                canonicalize_letters(&mut rep);
                return Some(rewrap(w, rep));
            }
        }
    }
    None
}

/// Applies `op` `k` times, failing if any application is undefined.
pub fn iterate(w: &Word, k: usize, op: impl Fn(&Word) -> Option<Word>) -> Option<Word> {
    let mut cur = w.clone();
    for _ in 0..k {
        cur = op(&cur)?;
    }
    Some(cur)
}

/// Letter positions `p` whose deletion leaves a ballot word.
pub fn removable_positions(w: &Word) -> Vec<usize> {
    let letters = w.letters();
    (0..letters.len())
        .filter(|&p| {
            let mut v = letters.to_vec();
            v.remove(p);
            is_ballot_letters(&v)
        })
        .collect()
}

/// Whether deleting the letter at position `p` leaves a ballot word.
pub fn is_removable(w: &Word, p: usize) -> bool {
    let mut v = w.letters().to_vec();
    v.remove(p);
    is_ballot_letters(&v)
}

/// Whether deleting the letter at position `p` leaves an `i`-ballot word.
pub fn is_i_removable(w: &Word, p: usize, i: u8) -> bool {
    let mut v = w.letters().to_vec();
    v.remove(p);
    is_i_ballot_letters(&v, i)
}

/// Whether positions `p` and `q` are adjacent in standardization order.
pub fn std_adjacent(w: &Word, p: usize, q: usize) -> bool {
    let labels = standardize_letters(w.letters());
    labels[p].abs_diff(labels[q]) == 1
}

/// Data attached to the final `F_i`-critical substring of an `i`-ballot word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BreakPoints {
    pub kind: CriticalType,
    /// `w_j`: the first letter (types 1, 3) or last letter (types 2, 4).
    pub lower_j: usize,
    /// `w_a`: the first letter in the type-2 case.
    pub lower_a: Option<usize>,
    /// The lower break point of `w`.
    pub lower: usize,
    /// `v_j` in `v = F_i(w)`: the last (types 1, 3) or first (types 2, 4)
    /// transformed letter.
    pub upper_j: usize,
    /// `v_a`: the first letter in the type-1 case.
    pub upper_a: Option<usize>,
    /// The upper break point of `v`.
    pub upper: usize,
    /// `F_i(w)`.
    pub lowered: Word,
}

/// Lower and upper break points of `w` for `F_i`, if `F_i(w)` is defined.
pub fn break_points(w: &Word, i: u8) -> Option<BreakPoints> {
    let c = final_critical(w, i, Direction::Lower)?;
    let v = lower(w, i)?;
    let (lower_j, lower_a) = match c.kind {
        CriticalType::One | CriticalType::Three => (c.start, None),
        CriticalType::Two => (c.end, Some(c.start)),
        CriticalType::Four => (c.end, None),
        CriticalType::Five => return None,
    };
    let lower_bp = match lower_a {
        Some(a) if std_adjacent(w, a, lower_j) => a,
        _ => lower_j,
    };
    let (upper_j, upper_a) = match c.kind {
        CriticalType::One => (c.end, Some(c.start)),
        CriticalType::Three => (c.end, None),
        CriticalType::Two | CriticalType::Four => (c.start, None),
        CriticalType::Five => return None,
    };
    let upper_bp = match upper_a {
        Some(a) if std_adjacent(&v, a, upper_j) => a,
        _ => upper_j,
    };
    Some(BreakPoints {
        kind: c.kind,
        lower_j,
        lower_a,
        lower: lower_bp,
        upper_j,
        upper_a,
        upper: upper_bp,
        lowered: v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn walk_example_ends_at_four_two() {
        let word = w("1 2 2 1' 1' 1 1 1' 1' 2' 2 2 2 2' 2' 1 1' 1");
        let walk = walk(&word, 1);
        assert_eq!(walk.end(), (4, 2));
        let dirs: String = walk.steps.iter().map(|s| s.symbol()).collect();
        assert_eq!(dirs, "ENNEESSEENNNNWWSES");
    }

    #[test]
    fn walk_is_representative_independent() {
        let word = w("2 1 2' 1 1' 2");
        for rep in word.representatives() {
            assert_eq!(walk(&rep, 1).points, walk(&word, 1).points);
        }
    }

    #[test]
    fn small_lowering_examples() {
        assert_eq!(lower(&w("1"), 1), Some(w("2")));
        assert_eq!(lower(&w("1 1"), 1), Some(w("1 2")));
        assert_eq!(raise(&w("1 2"), 1), Some(w("1 1")));
        assert_eq!(lower_primed(&w("1 1"), 1), Some(w("1 2")));
        assert_eq!(lower_primed(&w("1 1 1"), 1), Some(w("1 1 2")));
        assert_eq!(lower(&w("1 1 1"), 1), Some(w("1 1 2")));
        assert_eq!(raise_primed(&w("1 2'"), 1), Some(w("1 1")));
        assert_eq!(raise(&w("1 1"), 1), None);
    }

    #[test]
    fn ballot_words() {
        assert!(is_ballot_walk(&w("1 1 2 1")));
        assert!(!is_ballot_walk(&w("1 2 2")));
        assert!(is_ballot_walk(&w("2 1 1")));
        assert!(!is_ballot_walk(&w("2")));
    }
}
