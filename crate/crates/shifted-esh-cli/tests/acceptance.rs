//! Acceptance checks: prints one PASS/FAIL line per criterion and fails if
//! any criterion fails. Bounds and tolerances are the constants below.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use shifted_esh::coplactic::{counting_criterion, is_ballot_walk, lower, lower_primed, raise, raise_primed};
use shifted_esh::esh::{self, Method};
use shifted_esh::jdt::{inner_slide, is_ballot_oracle, outer_slide};
use shifted_esh::ktheory::{self, Suite};
use shifted_esh::shifted_core::{
    enumerate_lr_pairs, semistandard_fillings, BoxSide, Instance, Letter, MarkedTableau, ShiftedSkewShape,
    StrictPartition, Word,
};
use shifted_esh_cli::sweep::{run_sweep, SweepConfig};
use shifted_esh_cli::{cmd_esh, EshArgs, MethodArg, TableauArgs};

/// Criterion 1: the step table must match exactly, within this time.
const EXAMPLE_MAX_SECONDS: f64 = 1.0;
/// Criteria 2 and 7: exhaustive bound on |α| + |β|.
const EXHAUSTIVE_MAX_SIZE: usize = 10;
/// Criterion 2: random instances drawn with replacement from these sizes.
const RANDOM_INSTANCES: usize = 10_000;
const RANDOM_SIZES: [usize; 2] = [9, 10];
const SEED: u64 = 0x5eed_e54;
/// Criterion 3: canonical words up to this length over families {1,2,3}.
const BALLOT_MAX_LEN: usize = 9;
/// Criterion 4: skew shapes with at most this many cells, outer shape inside
/// the staircase of this size; operator identities on words up to
/// `OPERATOR_MAX_LEN`.
const SLIDE_MAX_CELLS: usize = 7;
const OPERATOR_MAX_LEN: usize = 8;
/// Criterion 8: exhaustive bound on |α| + |β| for the step-count sweep, and
/// the smaller bound for the on-disk interrupted-and-resumed sweep.
const STEPS_MAX_SIZE: usize = 16;
const RESUME_MAX_SIZE: usize = 11;
/// Every criterion tolerates zero mismatches.
const ALLOWED_MISMATCHES: usize = 0;

const EXAMPLE_INPUT: &str = "3 2 3 3' 4 2' 2 3 2' 2' 1 2 1 X 1' 1 2 1 1 1 1 1 1";
const EXAMPLE_FINAL: &str = "3 2' 4 3' X 2' 3' 3 2 2' 1 2 2' 1' 1 1 2 1 1 1 1 1 1";
const EXAMPLE_TABLE: &str = "\
Start | 1 | 3 2 3 3' 4 2' 2 3 2' 2' 1 2 1 X 1' 1 2 1 1 1 1 1 1 | Begin with canonical form.
Phase 1 | 1 | 3 2 3 3' 4 2' 2 3 2' 2' 1 2 1 1' X 1 2 1 1 1 1 1 1
Phase 1 | 1 | 3 2 3 3' 4 2' 2 3 2' 2' 1 2 X 1' 1 1 2 1 1 1 1 1 1
Phase 2(a) | 2 | 3 2' 3 3' 4 2' 2 3 2' X 1 2 2' 1' 1 1 2 1 1 1 1 1 1 | First 2 changes to 2'.
Phase 2(a) | 2 | 3 2' 3 3' 4 2' 2 3 X 2' 1 2 2' 1' 1 1 2 1 1 1 1 1 1
2(a) (hop) | 2 | 3 2' 3 3' 4 2' X 3 2 2' 1 2 2' 1' 1 1 2 1 1 1 1 1 1
Phase 2(a) | 3 | 3' 2' 3 X 4 2' 3' 3 2 2' 1 2 2' 1' 1 1 2 1 1 1 1 1 1 | First 3 changes to 3'.
Phase 2(a) | 3 | X 2' 3 3' 4 2' 3' 3 2 2' 1 2 2' 1' 1 1 2 1 1 1 1 1 1
Phase 2(b) | 3 | 3 2' X 3' 4 2' 3' 3 2 2' 1 2 2' 1' 1 1 2 1 1 1 1 1 1
Phase 2(b) | 4 | 3 2' 4 3' X 2' 3' 3 2 2' 1 2 2' 1' 1 1 2 1 1 1 1 1 1
";

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(mismatches: usize, detail: String) -> Verdict {
    Verdict { pass: mismatches <= ALLOWED_MISMATCHES, detail: format!("{mismatches} mismatches; {detail}") }
}

fn inst(a: &str, b: &str, g: &str) -> Instance {
    Instance::new(a.parse().unwrap(), b.parse().unwrap(), g.parse().unwrap()).unwrap()
}

fn canonical_words(n: usize, families: u8) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * 2 * families as usize);
        for w in &out {
            for v in 1..=families {
                let seen = w.iter().any(|l: &Letter| l.value() == v);
                if seen {
                    let mut p = w.clone();
                    p.push(Letter::primed(v));
                    next.push(p);
                }
                let mut u = w.clone();
                u.push(Letter::unprimed(v));
                next.push(u);
            }
        }
        out = next;
    }
    out.into_iter().map(Word::new).collect()
}

fn criterion_1() -> Verdict {
    let start = Instant::now();
    let args = EshArgs {
        tableau: TableauArgs { word: Some(EXAMPLE_INPUT.into()), ..Default::default() },
        method: MethodArg::All,
        inverse: false,
        json: false,
    };
    let out = cmd_esh(&args).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let table_ok = out.stdout.starts_with(EXAMPLE_TABLE);
    let want = EXAMPLE_FINAL.parse::<Word>().unwrap().canonical_form().to_string();
    let final_ok = out.stdout.contains(&format!("switching: {want}\n"));
    let agree = out.code == 0 && out.stdout.ends_with("all methods agree\n");
    let mismatches = usize::from(!table_ok) + usize::from(!final_ok) + usize::from(!agree);
    Verdict {
        pass: mismatches == 0 && secs < EXAMPLE_MAX_SECONDS,
        detail: format!(
            "table rows match: {table_ok}; final word {EXAMPLE_FINAL}: {final_ok}; methods agree: {agree}; {secs:.3} s (limit {EXAMPLE_MAX_SECONDS} s)"
        ),
    }
}

fn agreement_failures(i: &Instance) -> usize {
    enumerate_lr_pairs(i, BoxSide::Inner)
        .iter()
        .filter(|t| {
            let want = esh::esh_oracle(t).unwrap();
            [Method::Coplactic, Method::Switching, Method::Indexed].iter().any(|&m| esh::esh(t, m).unwrap() != want)
        })
        .count()
}

fn criterion_2() -> Verdict {
    let all = Instance::all_up_to(EXHAUSTIVE_MAX_SIZE);
    let words: usize = all.iter().map(|i| enumerate_lr_pairs(i, BoxSide::Inner).len()).sum();
    let exhaustive: usize = all.par_iter().map(agreement_failures).sum();
    let pool: Vec<&Instance> = all.iter().filter(|i| RANDOM_SIZES.contains(&i.size())).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let sample: Vec<&Instance> = (0..RANDOM_INSTANCES).map(|_| *pool.choose(&mut rng).unwrap()).collect();
    let random: usize = sample.par_iter().map(|i| agreement_failures(i)).sum();
    verdict(
        exhaustive + random,
        format!(
            "{} instances ({words} tableaux) with |α|+|β| ≤ {EXHAUSTIVE_MAX_SIZE}, plus {RANDOM_INSTANCES} random instances from {} at sizes {RANDOM_SIZES:?}",
            all.len(),
            pool.len()
        ),
    )
}

fn criterion_3() -> Verdict {
    let mut words = 0;
    let mut mismatches = 0;
    let mut dominance_only = 0;
    for n in 0..=BALLOT_MAX_LEN {
        let ws = canonical_words(n, 3);
        words += ws.len();
        let (bad, dom): (usize, usize) = ws
            .par_iter()
            .map(|w| {
                let oracle = is_ballot_oracle(w);
                let c = counting_criterion(w);
                let bad = usize::from(is_ballot_walk(w) != oracle || c.ballot() != oracle);
                let dom = usize::from(c.local_conditions && c.start_condition && !c.dominance);
                (bad, dom)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        mismatches += bad;
        dominance_only += dom;
    }
    Verdict {
        pass: mismatches <= ALLOWED_MISMATCHES && dominance_only == 0,
        detail: format!(
            "{mismatches} mismatches over {words} canonical words of length ≤ {BALLOT_MAX_LEN}; words flagged only by the dominance guard: {dominance_only}"
        ),
    }
}

type Op = fn(&Word, u8) -> Option<Word>;
const OPS: [(&str, Op); 4] = [("F", lower), ("E", raise), ("F'", lower_primed), ("E'", raise_primed)];

fn apply(t: &MarkedTableau, op: Op, i: u8) -> Option<MarkedTableau> {
    let w = op(&t.reading_word(), i)?;
    Some(MarkedTableau::from_reading_word(t.shape().clone(), &w).unwrap())
}

fn slide_failures(t: &MarkedTableau) -> usize {
    let mut bad = 0;
    let inner: Vec<_> = t.shape().inner_corners();
    let outer: Vec<_> = t.shape().outer_corners();
    let slid: Vec<MarkedTableau> = inner
        .iter()
        .map(|&c| inner_slide(t, c).unwrap().0)
        .chain(outer.iter().map(|&c| outer_slide(t, c).unwrap().0))
        .collect();
    for i in 1..=2u8 {
        for (_, op) in OPS {
            let ft = apply(t, op, i);
            if ft.as_ref().is_some_and(|f| !f.is_semistandard()) {
                bad += 1;
            }
            for (k, s) in slid.iter().enumerate() {
                let after = ft.as_ref().map(|f| {
                    if k < inner.len() {
                        inner_slide(f, inner[k]).unwrap().0
                    } else {
                        outer_slide(f, outer[k - inner.len()]).unwrap().0
                    }
                });
                if apply(s, op, i) != after {
                    bad += 1;
                }
            }
        }
    }
    bad
}

fn weak_compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    (0..=n)
        .flat_map(|first| {
            weak_compositions(n - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn criterion_4() -> Verdict {
    let parts = StrictPartition::staircase(SLIDE_MAX_CELLS).subpartitions();
    let mut shapes = Vec::new();
    for outer in &parts {
        for inner in &parts {
            if let Ok(s) = ShiftedSkewShape::new(outer.clone(), inner.clone()) {
                if (1..=SLIDE_MAX_CELLS).contains(&s.size()) {
                    shapes.push(s);
                }
            }
        }
    }
    let (tableaux, slide_bad): (usize, usize) = shapes
        .par_iter()
        .map(|s| {
            let mut count = 0;
            let mut bad = 0;
            for content in weak_compositions(s.size(), 3) {
                if content[0] == 0 {
                    continue;
                }
                for f in semistandard_fillings(s, &content, false) {
                    let t = MarkedTableau::new(s.clone(), f, None).unwrap();
                    bad += slide_failures(&t);
                    count += 1;
                }
            }
            (count, bad)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    let mut words = 0;
    let mut op_bad = 0;
    for n in 1..=OPERATOR_MAX_LEN {
        let ws = canonical_words(n, 3);
        words += ws.len();
        op_bad += ws
            .par_iter()
            .map(|w| {
                let mut bad = 0;
                for i in 1..=2u8 {
                    // Partial inverses.
                    for (down, up) in [(lower as Op, raise as Op), (lower_primed as Op, raise_primed as Op)] {
                        if let Some(v) = down(w, i) {
                            bad += usize::from(up(&v, i).as_ref() != Some(w));
                        }
                        if let Some(v) = up(w, i) {
                            bad += usize::from(down(&v, i).as_ref() != Some(w));
                        }
                    }
                    // Operators of one index commute where both orders are defined.
                    for (a, (_, f)) in OPS.iter().enumerate() {
                        for (_, g) in &OPS[a + 1..] {
                            let fg = g(w, i).and_then(|v| f(&v, i));
                            let gf = f(w, i).and_then(|v| g(&v, i));
                            if let (Some(x), Some(y)) = (fg, gf) {
                                bad += usize::from(x != y);
                            }
                        }
                    }
                }
                bad
            })
            .sum::<usize>();
    }
    verdict(
        slide_bad + op_bad,
        format!(
            "{tableaux} tableaux on {} skew shapes of ≤ {SLIDE_MAX_CELLS} cells checked against every single slide; {words} words of length ≤ {OPERATOR_MAX_LEN} for inverse and commutation identities",
            shapes.len()
        ),
    )
}

fn criterion_5() -> Verdict {
    let i = inst("4,2", "2", "5,3,1");
    let lr = ktheory::lr_count(&i);
    let genomic = ktheory::enumerate_genomic(&i).unwrap();
    let chi = ktheory::euler_characteristic(&i).unwrap();
    let traces: Vec<_> = enumerate_lr_pairs(&i, BoxSide::Inner).iter().map(|t| esh::esh_switching(t).unwrap().1).collect();
    let seen = ktheory::traversals(&i.shape(), &traces).unwrap();
    let failures = ktheory::two_to_one_failures(&genomic, &seen);
    let once_each = seen.counts.len() == 6 && seen.counts.values().all(|&c| c == (1, 1));
    let counts_ok = lr == 6 && genomic.len() == 6 && chi == 0;
    verdict(
        failures.len() + usize::from(!counts_ok) + usize::from(!once_each),
        format!("|LR| = {lr}, |K| = {}, χ = {chi}; {} runs, each genomic tableau traversed once per direction: {once_each}", genomic.len(), traces.len()),
    )
}

fn components(t: usize) -> Instance {
    let alpha: Vec<String> = (0..t).map(|k| (2 * t + 1 - 2 * k).to_string()).collect();
    let mut gamma: Vec<String> = (0..t + 1).map(|k| (2 * t + 2 - 2 * k).to_string()).collect();
    gamma.push("1".into());
    inst(&alpha.join(","), &(t + 2).to_string(), &gamma.join(","))
}

fn criterion_6() -> Verdict {
    let mut bad = 0;
    let mut shown = Vec::new();
    for t in 1..=4 {
        let i = components(t);
        let o = esh::orbits(&i).unwrap();
        let k = ktheory::k_count(&i).unwrap();
        let ok = o.lr_count() == 1 << t && o.is_identity() && k == 0 && o.orbit_count() == 1 << t;
        bad += usize::from(!ok);
        shown.push(format!("t={t}: |LR|={} orbits={} |K|={k}", o.lr_count(), o.orbit_count()));
    }
    verdict(bad, shown.join("; "))
}

fn criterion_7() -> Verdict {
    let theorems: Vec<Suite> = Suite::ALL.into_iter().filter(|s| !s.is_conjecture() && *s != Suite::Agreement).collect();
    let all = Instance::all_up_to(EXHAUSTIVE_MAX_SIZE);
    let failures: Vec<String> = all
        .par_iter()
        .flat_map_iter(|i| {
            let r = ktheory::verify(i, &theorems).unwrap();
            r.counterexamples.into_iter().map(move |c| format!("{i}: {c}")).collect::<Vec<_>>()
        })
        .collect();
    for f in failures.iter().take(5) {
        println!("    {f}");
    }
    let names: Vec<&str> = theorems.iter().map(|s| s.name()).collect();
    verdict(failures.len(), format!("{} instances with |α|+|β| ≤ {EXHAUSTIVE_MAX_SIZE}; suites {}", all.len(), names.join(", ")))
}

fn criterion_8() -> Verdict {
    // In memory, exhaustively.
    let all = Instance::all_up_to(STEPS_MAX_SIZE);
    let (words, bad): (usize, usize) = all
        .par_iter()
        .map(|i| {
            let r = ktheory::verify(i, &[Suite::StepsConjecture]).unwrap();
            (r.words, r.counterexamples.len())
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    // On disk: interrupted after a few batches, resumed, and compared with
    // an uninterrupted run.
    let dir = tempfile::tempdir().unwrap();
    let cfg = |out: &str, limit| SweepConfig {
        max_size: RESUME_MAX_SIZE,
        suites: vec![Suite::StepsConjecture],
        jobs: 2,
        out: dir.path().join(out),
        limit,
    };
    let partial = run_sweep(&cfg("resumed", Some(200)), |_, _| {}).unwrap();
    let resumed = run_sweep(&cfg("resumed", None), |_, _| {}).unwrap();
    let straight = run_sweep(&cfg("straight", None), |_, _| {}).unwrap();
    let read = |d: &str| std::fs::read(dir.path().join(d).join("summary.csv")).unwrap();
    let resume_ok = !partial.complete
        && resumed.complete
        && resumed.resumed_from == partial.instances
        && read("resumed") == read("straight")
        && resumed.conjecture_failures == 0
        && straight.words == resumed.words;
    verdict(
        bad + usize::from(!resume_ok),
        format!(
            "{} instances, {words} words with |α|+|β| ≤ {STEPS_MAX_SIZE}; interrupted sweep at ≤ {RESUME_MAX_SIZE} resumed at {} of {} with identical summary: {resume_ok}",
            all.len(),
            resumed.resumed_from,
            resumed.total
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("worked example step table", criterion_1),
        ("three-way esh agreement", criterion_2),
        ("ballotness criteria agree", criterion_3),
        ("coplacticity properties", criterion_4),
        ("three-cell instance", criterion_5),
        ("components family", criterion_6),
        ("theorem suites", criterion_7),
        ("step-count conjecture", criterion_8),
    ];
    let mut results = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = check();
        println!(
            "criterion {} ({name}): {} - {} [{:.1} s]",
            k + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail,
            start.elapsed().as_secs_f64()
        );
        results.push(v.pass);
    }
    // Geometric statements are checked only through their combinatorial
    // counterparts: orbit counts (5, 6), χ = |LR| − |K| (5, 6, 7) and the
    // inequality |K| ≥ |LR| − |Orb(ω)| (7).
    let surrogates = results[4] && results[5] && results[6];
    println!(
        "criterion 9 (geometric claims): {} - not computable directly; covered only by the orbit-count, χ and inequality surrogates of criteria 5-7",
        if surrogates { "PASS" } else { "FAIL" }
    );
    results.push(surrogates);
    let failed: BTreeSet<usize> = results.iter().enumerate().filter(|(_, &p)| !p).map(|(k, _)| k + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
