//! Shifted ballot genomic tableaux with one repeated gene, their
//! correspondence with the non-adjacent steps of the switching algorithm,
//! the Euler characteristic `χ = |LR| − |K|`, and per-instance verification
//! of the theorems and conjectures relating them to the orbits of `ω`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::coplactic::is_ballot_walk;
use crate::error::{Error, Result};
use crate::esh::{self, Level, OrbitReport, Phase, SwitchStep, SwitchTrace, Traversal};
use crate::shifted_core::{
    enumerate_lr_pairs, semistandard_fillings, BoxSide, Cell, Instance, Letter, MarkedTableau, ShiftedSkewShape,
    Word,
};

// ---------------------------------------------------------------------------
// Genomic tableaux
// ---------------------------------------------------------------------------

/// A ballot genomic tableau with a single repeated gene, stored as its
/// canonical semistandard filling together with the two cells of the
/// repeated gene (in standardization order).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GenomicTableau {
    base: MarkedTableau,
    pair: (Cell, Cell),
    family: u8,
}

impl GenomicTableau {
    /// Validates `(base, {a, b})` against the finite criterion: the two
    /// cells hold letters of one family, are non-adjacent and consecutive in
    /// standardization order; an `i'`/`i` gene has an `i` between its cells
    /// in reading order; and deleting either cell leaves a ballot word.
    pub fn new(base: MarkedTableau, a: Cell, b: Cell) -> Result<GenomicTableau> {
        if base.marker().is_some() || !base.is_canonical() || !base.is_semistandard() {
            return Err(Error::Precondition("a genomic tableau needs a canonical semistandard filling"));
        }
        let (la, lb) = match (base.get(a), base.get(b)) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(Error::Precondition("gene cells must be filled")),
        };
        if la.value() != lb.value() {
            return Err(Error::Precondition("gene cells must lie in one family"));
        }
        let pos = base.reading_positions();
        let labels = base.reading_word().standardize();
        let (a, b) = if labels[pos[&a]] < labels[pos[&b]] { (a, b) } else { (b, a) };
        let g = GenomicTableau { base, pair: (a, b), family: la.value() };
        if let Some(why) = g.violation() {
            return Err(Error::Invariant(format!("not a ballot genomic tableau ({why}): {g}")));
        }
        Ok(g)
    }

    /// The first criterion the data fails, if any.
    fn violation(&self) -> Option<&'static str> {
        let (a, b) = self.pair;
        if adjacent(a, b) {
            return Some("gene cells are adjacent");
        }
        let pos = self.base.reading_positions();
        let word = self.base.reading_word();
        let labels = word.standardize();
        if labels[pos[&a]].abs_diff(labels[pos[&b]]) != 1 {
            return Some("gene cells are not consecutive in standardization order");
        }
        let (la, lb) = (self.base.get(a).expect("filled"), self.base.get(b).expect("filled"));
        if la.is_primed() && !lb.is_primed() {
            let (lo, hi) = (pos[&b].min(pos[&a]), pos[&b].max(pos[&a]));
            let i = Letter::unprimed(self.family);
            if !word.letters()[lo + 1..hi].contains(&i) {
                return Some("no unprimed letter between the cells of a mixed gene");
            }
        }
        for cell in [a, b] {
            let mut letters: Vec<Letter> = word.letters().to_vec();
            letters.remove(pos[&cell]);
            if !is_ballot_walk(&Word::new(letters).canonical_form()) {
                return Some("deleting a gene cell breaks ballotness");
            }
        }
        None
    }

    /// The canonical filling `T_ss`.
    pub fn base(&self) -> &MarkedTableau {
        &self.base
    }

    /// The repeated gene, earlier cell in standardization order first.
    pub fn pair(&self) -> (Cell, Cell) {
        self.pair
    }

    /// The gene family `i` of the repeated gene.
    pub fn family(&self) -> u8 {
        self.family
    }
}

impl fmt::Display for GenomicTableau {
    /// The reading word with the two cells of the repeated gene bracketed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pos = self.base.reading_positions();
        let gene = [pos[&self.pair.0], pos[&self.pair.1]];
        for (k, l) in self.base.reading_word().letters().iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if gene.contains(&k) {
                write!(f, "[{l}]")?;
            } else {
                write!(f, "{l}")?;
            }
        }
        Ok(())
    }
}

fn adjacent(a: Cell, b: Cell) -> bool {
    (a.0 == b.0 && a.1.abs_diff(b.1) == 1) || (a.1 == b.1 && a.0.abs_diff(b.0) == 1)
}

/// `K(γ^c/α; β)`: all ballot genomic tableaux of the instance, sorted.
pub fn enumerate_genomic(instance: &Instance) -> Result<Vec<GenomicTableau>> {
    let shape = instance.shape();
    let beta = instance.beta.parts();
    if shape.size() != instance.beta.size() + 1 {
        return Err(Error::SizeMismatch { skew: shape.size(), expected: instance.beta.size() + 1 });
    }
    let mut out = BTreeSet::new();
    for i in 1..=beta.len() {
        let mut content = beta.to_vec();
        content[i - 1] += 1;
        for filling in semistandard_fillings(&shape, &content, false) {
            let base = MarkedTableau::new(shape.clone(), filling, None)?;
            let pos = base.reading_positions();
            let labels = base.reading_word().standardize();
            let mut by_label: BTreeMap<usize, Cell> = BTreeMap::new();
            for (&cell, &l) in base.entries() {
                if l.value() as usize == i {
                    by_label.insert(labels[pos[&cell]], cell);
                }
            }
            let cells: Vec<Cell> = by_label.into_values().collect();
            for w in cells.windows(2) {
                let g = GenomicTableau { base: base.clone(), pair: (w[0], w[1]), family: i as u8 };
                if g.violation().is_none() {
                    out.insert(g);
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// The genomic tableau induced by a switching step on a tableau of `shape`:
/// both cells the marker occupies before and after the step receive the
/// step's index letter, and the filling is put in canonical form. The second
/// component is the direction of traversal. Steps between adjacent cells
/// induce nothing.
pub fn genomic_from_step(shape: &ShiftedSkewShape, step: &SwitchStep) -> Result<Option<(GenomicTableau, Traversal)>> {
    if step.adjacent {
        return Ok(None);
    }
    let before = MarkedTableau::from_reading_word(shape.clone(), &step.before)?;
    let mut entries = before.entries().clone();
    entries.insert(step.from, step.index);
    entries.insert(step.to, step.index);
    let base = MarkedTableau::new(shape.clone(), entries, None)?.canonical_form();
    Ok(Some((GenomicTableau::new(base, step.from, step.to)?, step.traversal())))
}

// ---------------------------------------------------------------------------
// Counts
// ---------------------------------------------------------------------------

/// `|LR(α, ⊠, β, γ)|`.
pub fn lr_count(instance: &Instance) -> usize {
    enumerate_lr_pairs(instance, BoxSide::Inner).len()
}

/// `|K(γ^c/α; β)|`.
pub fn k_count(instance: &Instance) -> Result<usize> {
    Ok(enumerate_genomic(instance)?.len())
}

/// `χ = |LR(α, ⊠, β, γ)| − |K(γ^c/α; β)|`.
pub fn euler_characteristic(instance: &Instance) -> Result<i64> {
    Ok(lr_count(instance) as i64 - k_count(instance)? as i64)
}

/// The arithmetic genus `|K| − |LR| + 1 = 1 − χ`.
pub fn arithmetic_genus(instance: &Instance) -> Result<i64> {
    Ok(1 - euler_characteristic(instance)?)
}

// ---------------------------------------------------------------------------
// Two-to-one correspondence
// ---------------------------------------------------------------------------

/// How often each genomic tableau is traversed in each direction over all
/// runs of the switching algorithm on `LR(α, ⊠, β, γ)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Traversals {
    /// Genomic tableau ↦ (standardization-order count, reverse count).
    pub counts: BTreeMap<GenomicTableau, (usize, usize)>,
    pub non_adjacent_steps: usize,
}

/// Tallies the genomic tableaux traversed by the given forward traces.
pub fn traversals<'a>(shape: &ShiftedSkewShape, traces: impl IntoIterator<Item = &'a SwitchTrace>) -> Result<Traversals> {
    let mut counts: BTreeMap<GenomicTableau, (usize, usize)> = BTreeMap::new();
    let mut non_adjacent_steps = 0;
    for trace in traces {
        for step in &trace.steps {
            if let Some((g, dir)) = genomic_from_step(shape, step)? {
                non_adjacent_steps += 1;
                let e = counts.entry(g).or_default();
                match dir {
                    Traversal::Standard => e.0 += 1,
                    Traversal::Reverse => e.1 += 1,
                }
            }
        }
    }
    Ok(Traversals { counts, non_adjacent_steps })
}

/// The genomic tableaux for which the two-to-one correspondence fails: every
/// element of `genomic` must be traversed exactly once in each direction and
/// nothing else may be traversed.
pub fn two_to_one_failures(genomic: &[GenomicTableau], seen: &Traversals) -> Vec<String> {
    let mut bad = Vec::new();
    let known: BTreeSet<&GenomicTableau> = genomic.iter().collect();
    for g in genomic {
        let c = seen.counts.get(g).copied().unwrap_or((0, 0));
        if c != (1, 1) {
            bad.push(format!("{g} traversed {} times in standardization order and {} in reverse", c.0, c.1));
        }
    }
    for g in seen.counts.keys().filter(|g| !known.contains(g)) {
        bad.push(format!("{g} traversed but not enumerated"));
    }
    bad
}

/// Checks the two-to-one correspondence on one instance.
pub fn verify_two_to_one(instance: &Instance) -> Result<Vec<String>> {
    let genomic = enumerate_genomic(instance)?;
    let mut traces = Vec::new();
    for t in enumerate_lr_pairs(instance, BoxSide::Inner) {
        traces.push(esh::esh_switching(&t)?.1);
    }
    Ok(two_to_one_failures(&genomic, &traversals(&instance.shape(), &traces)?))
}

/// `ω = id` exactly when `K(γ^c/α; β)` is empty.
pub fn verify_identity_theorem(instance: &Instance) -> Result<bool> {
    Ok(esh::orbits(instance)?.is_identity() == (k_count(instance)? == 0))
}

/// `|K| ≥ |LR| − |Orb(ω)|`.
pub fn verify_inequality(instance: &Instance) -> Result<bool> {
    let report = esh::orbits(instance)?;
    Ok(k_count(instance)? + report.orbit_count() >= report.lr_count())
}

// ---------------------------------------------------------------------------
// Mini-orbits
// ---------------------------------------------------------------------------

/// One cycle of the partial loop `sh_t ∘ esh_t` on `Z_{predecessor(t)}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MiniOrbit {
    pub symbol: Letter,
    pub elements: Vec<MarkedTableau>,
    /// Non-adjacent `esh_t` steps in standardization order and in reverse.
    pub standard: usize,
    pub reverse: usize,
}

impl MiniOrbit {
    /// Whether the cycle produces exactly `|O| − 1` genomic tableaux in
    /// each direction.
    pub fn balanced(&self) -> bool {
        let want = self.elements.len() - 1;
        self.standard == want && self.reverse == want
    }
}

/// The cycles of every partial loop `sh_t ∘ esh_t`, in level order.
pub fn mini_orbits(instance: &Instance) -> Result<Vec<MiniOrbit>> {
    let all = esh::marked_fillings(instance);
    let at = |level: Level| -> Vec<MarkedTableau> {
        let mut v: Vec<MarkedTableau> = all.iter().filter(|t| esh::in_z_state(t, level)).cloned().collect();
        v.sort();
        v
    };
    let mut out = Vec::new();
    for symbol in esh::levels(instance.families()).into_iter().flatten() {
        let domain = at(esh::predecessor(symbol));
        let mut runs = Vec::with_capacity(domain.len());
        for z in &domain {
            runs.push(esh::mini_loop(z, symbol)?);
        }
        let index: BTreeMap<&MarkedTableau, usize> = domain.iter().enumerate().map(|(k, t)| (t, k)).collect();
        let next: Vec<usize> = runs
            .iter()
            .map(|(img, _)| {
                index.get(img).copied().ok_or_else(|| Error::Invariant(format!("partial loop left Z: {img}")))
            })
            .collect::<Result<_>>()?;
        for cyc in esh::cycles(&next) {
            let (mut standard, mut reverse) = (0, 0);
            for &k in &cyc {
                for step in runs[k].1.iter().filter(|s| !s.adjacent) {
                    match step.traversal() {
                        Traversal::Standard => standard += 1,
                        Traversal::Reverse => reverse += 1,
                    }
                }
            }
            out.push(MiniOrbit { symbol, elements: cyc.iter().map(|&k| domain[k].clone()).collect(), standard, reverse });
        }
    }
    Ok(out)
}

/// Every cycle of every partial loop is balanced.
pub fn verify_mini_orbit_counts(instance: &Instance) -> Result<bool> {
    Ok(mini_orbits(instance)?.iter().all(MiniOrbit::balanced))
}

/// `Σ (|O_t| − 1)` over all cycles of all partial loops, an upper bound for
/// the reflection length `|LR| − |Orb(ω)|` of `ω`.
pub fn partial_loop_length(minis: &[MiniOrbit]) -> usize {
    minis.iter().map(|m| m.elements.len() - 1).sum()
}

// ---------------------------------------------------------------------------
// Conjectures
// ---------------------------------------------------------------------------

/// `2s + β_s − 1` for a forward run whose Phase 1 ended at `i = s`, with
/// `β_s = 0` when Phase 2 is empty.
pub fn predicted_rows(beta: &[usize], s: u8) -> usize {
    let bs = beta.get(s as usize - 1).copied().unwrap_or(0);
    2 * s as usize + bs - 1
}

/// The step-count conjecture on one run: the number of rows of the step
/// table (switches plus the starting row) is `2s + β_s − 1`.
pub fn step_count_holds(beta: &[usize], trace: &SwitchTrace) -> bool {
    trace.steps.len() + 1 == predicted_rows(beta, trace.transition)
}

/// The orbit-by-orbit conjecture: each orbit `O` of `ω` traverses at least
/// `|O| − 1` genomic tableaux in each direction.
pub fn orbit_conjecture_holds(report: &OrbitReport) -> Vec<bool> {
    report
        .orbits
        .iter()
        .zip(&report.genomic_by_orbit)
        .map(|(o, &(s, r))| s + 1 >= o.len() && r + 1 >= o.len())
        .collect()
}

// ---------------------------------------------------------------------------
// Per-instance verification
// ---------------------------------------------------------------------------

/// A check that can be run on one instance.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Suite {
    /// Oracle, coplactic, switching and indexed `esh` agree and invert.
    Agreement,
    /// Each genomic tableau is traversed once in each direction.
    TwoToOne,
    /// `ω = id ⇔ |K| = 0`.
    Identity,
    /// `|K| ≥ |LR| − |Orb(ω)|`.
    Inequality,
    /// Partial-loop cycles produce `|O| − 1` genomic tableaux per direction.
    MiniOrbits,
    /// `Σ (|O_t| − 1) ≥ |LR| − |Orb(ω)|`.
    ReflectionBound,
    /// Every `esh_t` lands in `Z_t`.
    ZStates,
    /// The per-symbol composite equals `esh`.
    Composite,
    /// Each `esh_t` is a bijection `Z_{t−} → Z_t` inverted by `esh_t⁻¹`.
    PauseResume,
    /// Phase 2 consists of 2(a) loops followed by 2(b) loops.
    Dichotomy,
    /// Splitting at the Phase 1/Phase 2 transition gives the same `esh`.
    SimpleDecomposition,
    /// Orbit-by-orbit genomic lower bound (conjecture).
    OrbitConjecture,
    /// Trace length `2s + β_s − 1` (conjecture).
    StepsConjecture,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Agreement,
        Suite::TwoToOne,
        Suite::Identity,
        Suite::Inequality,
        Suite::MiniOrbits,
        Suite::ReflectionBound,
        Suite::ZStates,
        Suite::Composite,
        Suite::PauseResume,
        Suite::Dichotomy,
        Suite::SimpleDecomposition,
        Suite::OrbitConjecture,
        Suite::StepsConjecture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Agreement => "agreement",
            Suite::TwoToOne => "two_to_one",
            Suite::Identity => "identity",
            Suite::Inequality => "inequality",
            Suite::MiniOrbits => "mini_orbits",
            Suite::ReflectionBound => "reflection_bound",
            Suite::ZStates => "z_states",
            Suite::Composite => "composite",
            Suite::PauseResume => "pause_resume",
            Suite::Dichotomy => "dichotomy",
            Suite::SimpleDecomposition => "simple_decomposition",
            Suite::OrbitConjecture => "orbit",
            Suite::StepsConjecture => "steps",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Conjectures are reported but never count as verification failures.
    pub fn is_conjecture(self) -> bool {
        matches!(self, Suite::OrbitConjecture | Suite::StepsConjecture)
    }

    fn needs_orbits(self) -> bool {
        matches!(self, Suite::Identity | Suite::Inequality | Suite::ReflectionBound | Suite::OrbitConjecture)
    }
}

/// The outcome of the selected suites on one instance.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VerificationReport {
    pub instance: Instance,
    pub lr: usize,
    /// `|K|`, when a suite needed it.
    pub k: Option<usize>,
    /// `|Orb(ω)|`, when a suite needed it.
    pub orbits: Option<usize>,
    /// `|LR| − |K|`, when `|K|` is known.
    pub chi: Option<i64>,
    /// Number of forward switching runs examined.
    pub words: usize,
    pub theorems: BTreeMap<&'static str, bool>,
    pub conjectures: BTreeMap<&'static str, bool>,
    pub counterexamples: Vec<String>,
}

impl VerificationReport {
    /// Whether every theorem suite that ran passed.
    pub fn theorems_pass(&self) -> bool {
        self.theorems.values().all(|&b| b)
    }

    pub fn conjectures_pass(&self) -> bool {
        self.conjectures.values().all(|&b| b)
    }

    /// `|K| − |LR| + 1` on instances where `ω` has a single orbit.
    pub fn single_orbit_genus(&self) -> Option<i64> {
        match (self.orbits, self.chi) {
            (Some(1), Some(chi)) => Some(1 - chi),
            _ => None,
        }
    }
}

/// Runs the selected suites on one instance.
pub fn verify(instance: &Instance, suites: &[Suite]) -> Result<VerificationReport> {
    let want: BTreeSet<Suite> = suites.iter().copied().collect();
    let elems = enumerate_lr_pairs(instance, BoxSide::Inner);
    let mut traces = Vec::with_capacity(elems.len());
    for t in &elems {
        traces.push(esh::esh_switching(t)?);
    }
    let mut report = VerificationReport {
        instance: instance.clone(),
        lr: elems.len(),
        k: None,
        orbits: None,
        chi: None,
        words: elems.len(),
        theorems: BTreeMap::new(),
        conjectures: BTreeMap::new(),
        counterexamples: Vec::new(),
    };
    let needs_k = want.iter().any(|s| matches!(s, Suite::TwoToOne | Suite::Identity | Suite::Inequality));
    let genomic = if needs_k { Some(enumerate_genomic(instance)?) } else { None };
    if let Some(g) = &genomic {
        report.k = Some(g.len());
        report.chi = Some(elems.len() as i64 - g.len() as i64);
    }
    let orbit_report = if want.iter().any(|s| s.needs_orbits()) { Some(esh::orbits(instance)?) } else { None };
    if let Some(o) = &orbit_report {
        report.orbits = Some(o.orbit_count());
    }
    let minis = if want.contains(&Suite::MiniOrbits) || want.contains(&Suite::ReflectionBound) {
        Some(mini_orbits(instance)?)
    } else {
        None
    };

    for suite in want {
        let mut bad: Vec<String> = Vec::new();
        match suite {
            Suite::Agreement => {
                for (t, (out, _)) in elems.iter().zip(&traces) {
                    for method in [esh::Method::Oracle, esh::Method::Coplactic, esh::Method::Indexed] {
                        if esh::esh(t, method)? != *out {
                            bad.push(format!("{method:?} disagrees with switching on {t}"));
                        }
                    }
                    for method in [esh::Method::Oracle, esh::Method::Coplactic, esh::Method::Switching] {
                        if esh::esh_inverse(out, method)? != *t {
                            bad.push(format!("{method:?} inverse fails on {out}"));
                        }
                    }
                }
            }
            Suite::TwoToOne => {
                let seen = traversals(&instance.shape(), traces.iter().map(|(_, tr)| tr))?;
                bad = two_to_one_failures(genomic.as_deref().expect("computed"), &seen);
            }
            Suite::Identity => {
                let o = orbit_report.as_ref().expect("computed");
                if o.is_identity() != (report.k == Some(0)) {
                    bad.push(format!("ω identity = {}, |K| = {}", o.is_identity(), report.k.expect("computed")));
                }
            }
            Suite::Inequality => {
                let (k, o) = (report.k.expect("computed"), report.orbits.expect("computed"));
                if k + o < report.lr {
                    bad.push(format!("|K| = {k} < |LR| − |Orb| = {} − {o}", report.lr));
                }
            }
            Suite::MiniOrbits => {
                for m in minis.as_ref().expect("computed").iter().filter(|m| !m.balanced()) {
                    bad.push(format!(
                        "cycle of length {} at {} gives {} + {} genomic steps, starting at {}",
                        m.elements.len(),
                        m.symbol,
                        m.standard,
                        m.reverse,
                        m.elements[0]
                    ));
                }
            }
            Suite::ReflectionBound => {
                let total = partial_loop_length(minis.as_ref().expect("computed"));
                let refl = report.lr - report.orbits.expect("computed");
                if total < refl {
                    bad.push(format!("partial loops give {total} < reflection length {refl}"));
                }
            }
            Suite::ZStates | Suite::Composite | Suite::PauseResume => {
                bad = check_index_decomposition(instance, &elems, &traces, suite)?;
            }
            Suite::Dichotomy => {
                for (t, (_, tr)) in elems.iter().zip(&traces) {
                    let mut seen_b = false;
                    for step in tr.steps.iter().filter(|s| s.phase != Phase::P1) {
                        match step.phase {
                            Phase::P2b | Phase::P2bHop => seen_b = true,
                            _ if seen_b => {
                                bad.push(format!("Phase 2(a) step after Phase 2(b) on {t}"));
                                break;
                            }
                            _ => {}
                        }
                    }
                }
            }
            Suite::SimpleDecomposition => {
                for (t, (out, tr)) in elems.iter().zip(&traces) {
                    if esh::esh_piecewise(t, tr.transition)? != *out {
                        bad.push(format!("splitting at {} changes esh on {t}", tr.transition));
                    }
                }
            }
            Suite::OrbitConjecture => {
                let o = orbit_report.as_ref().expect("computed");
                for (orbit, ok) in o.orbits.iter().zip(orbit_conjecture_holds(o)) {
                    if !ok {
                        bad.push(format!("orbit of size {} from {} has too few genomic steps", orbit.len(), orbit[0]));
                    }
                }
            }
            Suite::StepsConjecture => {
                for (t, (_, tr)) in elems.iter().zip(&traces) {
                    if !step_count_holds(instance.beta.parts(), tr) {
                        bad.push(format!(
                            "{t}: {} rows, predicted {} (s = {})",
                            tr.steps.len() + 1,
                            predicted_rows(instance.beta.parts(), tr.transition),
                            tr.transition
                        ));
                    }
                }
            }
        }
        let ok = bad.is_empty();
        report.counterexamples.extend(bad.into_iter().map(|b| format!("{}: {b}", suite.name())));
        if suite.is_conjecture() {
            report.conjectures.insert(suite.name(), ok);
        } else {
            report.theorems.insert(suite.name(), ok);
        }
    }
    Ok(report)
}

fn check_index_decomposition(
    instance: &Instance,
    elems: &[MarkedTableau],
    traces: &[(MarkedTableau, SwitchTrace)],
    suite: Suite,
) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    let levels = esh::levels(instance.families());
    match suite {
        Suite::ZStates => {
            for t in elems {
                let mut cur = t.clone();
                for symbol in levels.iter().flatten() {
                    cur = esh::esh_t(&cur, *symbol)?.0;
                    if !esh::in_z_state(&cur, Some(*symbol)) {
                        bad.push(format!("{t} leaves Z at {symbol}: {cur}"));
                        break;
                    }
                }
            }
        }
        Suite::Composite => {
            for (t, (out, tr)) in elems.iter().zip(traces) {
                let (img, steps) = esh::esh_indexed_run(t)?;
                let same_steps = steps.len() == tr.steps.len()
                    && steps.iter().zip(&tr.steps).all(|(a, b)| (a.index, a.from, a.to) == (b.index, b.from, b.to));
                if img != *out || !same_steps {
                    bad.push(format!("per-symbol composite differs from esh on {t}"));
                }
            }
        }
        Suite::PauseResume => {
            let all = esh::marked_fillings(instance);
            for w in levels.windows(2) {
                let symbol = w[1].expect("nonzero level");
                let from: BTreeSet<&MarkedTableau> = all.iter().filter(|t| esh::in_z_state(t, w[0])).collect();
                let to: BTreeSet<&MarkedTableau> = all.iter().filter(|t| esh::in_z_state(t, w[1])).collect();
                let mut hit = BTreeSet::new();
                for z in &from {
                    let img = esh::esh_t(z, symbol)?.0;
                    if esh::esh_t_inverse(&img, symbol)?.0 != **z {
                        bad.push(format!("esh_{symbol} inverse fails on {z}"));
                    }
                    hit.insert(img);
                }
                if hit.len() != from.len() || hit.iter().collect::<BTreeSet<_>>() != to {
                    bad.push(format!("esh_{symbol} is not a bijection onto Z_{symbol}"));
                }
            }
        }
        _ => unreachable!("index decomposition suites only"),
    }
    Ok(bad)
}

/// The instance's orbit data as `(lr, k, orbits, chi)`.
pub fn counts(instance: &Instance) -> Result<(usize, usize, usize, i64)> {
    let lr = lr_count(instance);
    let k = k_count(instance)?;
    let orbits = esh::orbits(instance)?.orbit_count();
    Ok((lr, k, orbits, lr as i64 - k as i64))
}

/// Steps of a trace that induce no genomic tableau, for display.
pub fn adjacent_steps(trace: &SwitchTrace) -> usize {
    trace.steps.iter().filter(|s| s.adjacent).count()
}

/// One-line summary of the repeated gene, e.g. `1' at (0,4), 1 at (2,2)`.
pub fn describe_gene(g: &GenomicTableau) -> String {
    let (a, b) = g.pair();
    let la = g.base().get(a).expect("filled").to_string();
    let lb = g.base().get(b).expect("filled").to_string();
    format!("{la} at ({},{}), {lb} at ({},{})", a.0, a.1, b.0, b.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(a: &str, b: &str, g: &str) -> Instance {
        Instance::new(a.parse().unwrap(), b.parse().unwrap(), g.parse().unwrap()).unwrap()
    }

    #[test]
    fn empty_beta_has_no_genomic_tableaux() {
        let i = inst("1", "", "2");
        assert!(enumerate_genomic(&i).unwrap().is_empty());
        assert_eq!(euler_characteristic(&i).unwrap(), 1);
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let i = Instance { alpha: "1".parse().unwrap(), beta: "2".parse().unwrap(), gamma_c: "2".parse().unwrap() };
        assert!(matches!(enumerate_genomic(&i), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn adjacent_pairs_are_rejected() {
        // Shape 3/1 holds the two cells (0,1) and (0,2), which touch.
        let base = MarkedTableau::from_reading_word("3/1".parse().unwrap(), &"1 1".parse().unwrap()).unwrap();
        assert!(GenomicTableau::new(base, (0, 1), (0, 2)).is_err());
    }

    #[test]
    fn predicted_rows_handles_empty_phase_two() {
        assert_eq!(predicted_rows(&[11, 7, 4, 1], 2), 10);
        assert_eq!(predicted_rows(&[2], 2), 3);
        assert_eq!(predicted_rows(&[], 1), 1);
    }
}
