//! Genomic tableaux, the step correspondence and the orbit theorems on the
//! three-cell instance, the components family and all small instances.

use std::collections::{BTreeMap, BTreeSet};

use shifted_esh::esh::{self, Traversal};
use shifted_esh::jdt::is_ballot_oracle;
use shifted_esh::ktheory::{self, GenomicTableau, Suite};
use shifted_esh::shifted_core::{
    enumerate_lr_pairs, semistandard_fillings, BoxSide, Cell, Instance, Letter, MarkedTableau, Word,
};

const MAX_SIZE: usize = 10;

fn inst(a: &str, b: &str, g: &str) -> Instance {
    Instance::new(a.parse().unwrap(), b.parse().unwrap(), g.parse().unwrap()).unwrap()
}

/// The instance α = (4,2), β = (2), γ^c = (5,3,1). Its three cells in
/// reading order are (2,2), (1,3), (0,4).
fn three_cells() -> Instance {
    inst("4,2", "2", "5,3,1")
}

/// Builds a genomic tableau of the three-cell instance from its reading
/// word, with the repeated gene in brackets.
fn genomic(text: &str) -> GenomicTableau {
    let shape = three_cells().shape();
    let cells = [(2, 2), (1, 3), (0, 4)];
    let mut entries = BTreeMap::new();
    let mut gene = Vec::new();
    for (cell, tok) in cells.into_iter().zip(text.split_whitespace()) {
        let bare = tok.trim_matches(|c| c == '[' || c == ']');
        if bare != tok {
            gene.push(cell);
        }
        entries.insert(cell, bare.parse::<Letter>().unwrap());
    }
    let base = MarkedTableau::new(shape, entries, None).unwrap();
    GenomicTableau::new(base, gene[0], gene[1]).unwrap()
}

fn labelled_genomic() -> BTreeMap<char, GenomicTableau> {
    [
        ('a', "1 [1] [1]"),
        ('b', "[1] [1] 1"),
        ('c', "[1] [1] 1'"),
        ('d', "[1] 1 [1']"),
        ('e', "[1] 1' [1]"),
        ('f', "1 [1'] [1']"),
    ]
    .into_iter()
    .map(|(k, s)| (k, genomic(s)))
    .collect()
}

#[test]
fn three_cell_instance_has_six_genomic_tableaux() {
    let found: BTreeSet<GenomicTableau> = ktheory::enumerate_genomic(&three_cells()).unwrap().into_iter().collect();
    let labelled: BTreeSet<GenomicTableau> = labelled_genomic().into_values().collect();
    assert_eq!(found, labelled);
    assert_eq!(ktheory::lr_count(&three_cells()), 6);
    assert_eq!(ktheory::euler_characteristic(&three_cells()).unwrap(), 0);
}

#[test]
fn three_cell_runs_traverse_expected_genomic_tableaux() {
    let g = labelled_genomic();
    use Traversal::{Reverse as R, Standard as S};
    // Each LR tableau (canonical reading word) with the genomic tableaux its
    // run traverses, in step order.
    let runs: [(&str, [(char, Traversal); 2]); 6] = [
        ("X 1 1", [('b', S), ('a', S)]),
        ("X 1 1'", [('d', R), ('a', R)]),
        ("1 X 1", [('b', R), ('e', S)]),
        ("1 X 1'", [('f', R), ('e', R)]),
        ("1 1 X", [('d', S), ('c', S)]),
        ("1 1' X", [('f', S), ('c', R)]),
    ];
    let shape = three_cells().shape();
    let lr: BTreeSet<MarkedTableau> = enumerate_lr_pairs(&three_cells(), BoxSide::Inner).into_iter().collect();
    for (word, expected) in runs {
        let t = MarkedTableau::from_reading_word(shape.clone(), &word.parse::<Word>().unwrap()).unwrap();
        assert!(lr.contains(&t), "{word}");
        let (_, trace) = esh::esh_switching(&t).unwrap();
        let got: Vec<(GenomicTableau, Traversal)> =
            trace.steps.iter().filter_map(|s| ktheory::genomic_from_step(&shape, s).unwrap()).collect();
        let want: Vec<(GenomicTableau, Traversal)> = expected.iter().map(|&(k, d)| (g[&k].clone(), d)).collect();
        assert_eq!(got, want, "{word}");
    }
    assert!(ktheory::verify_two_to_one(&three_cells()).unwrap().is_empty());
    assert!(!esh::orbits(&three_cells()).unwrap().is_identity());
    assert!(ktheory::verify_identity_theorem(&three_cells()).unwrap());
    assert!(ktheory::verify_inequality(&three_cells()).unwrap());
}

#[test]
fn exceptional_steps_traverse_genes_of_two_unprimed_letters() {
    let shape = three_cells().shape();
    for t in enumerate_lr_pairs(&three_cells(), BoxSide::Inner) {
        let (_, trace) = esh::esh_switching(&t).unwrap();
        for step in trace.steps.iter().filter(|s| s.exceptional) {
            let (g, dir) = ktheory::genomic_from_step(&shape, step).unwrap().unwrap();
            let (a, b) = g.pair();
            assert_eq!(dir, Traversal::Reverse);
            assert_eq!(g.base().get(a), Some(Letter::unprimed(1)));
            assert_eq!(g.base().get(b), Some(Letter::unprimed(1)));
        }
    }
}

/// α = (2t+1, …, 5, 3), β = (t+2), γ^c = (2t+2, …, 4, 2, 1).
fn components(t: usize) -> Instance {
    let alpha: Vec<String> = (0..t).map(|k| (2 * t + 1 - 2 * k).to_string()).collect();
    let mut gamma: Vec<String> = (0..t + 1).map(|k| (2 * t + 2 - 2 * k).to_string()).collect();
    gamma.push("1".into());
    inst(&alpha.join(","), &(t + 2).to_string(), &gamma.join(","))
}

#[test]
fn components_family_has_trivial_monodromy() {
    for t in 1..=4 {
        let i = components(t);
        let report = esh::orbits(&i).unwrap();
        assert_eq!(report.lr_count(), 1 << t, "t = {t}");
        assert!(report.is_identity(), "t = {t}");
        assert_eq!(report.orbit_count(), 1 << t, "t = {t}");
        assert_eq!(ktheory::k_count(&i).unwrap(), 0, "t = {t}");
        assert_eq!(ktheory::euler_characteristic(&i).unwrap(), 1 << t, "t = {t}");
    }
    assert_eq!(components(1), inst("3", "3", "4,2,1"));
}

/// `K` straight from the gene-labelled definition: pick any two cells of
/// one family as the repeated gene, every other cell its own gene, and check
/// consecutiveness, the primed-entry condition for every primed letter,
/// non-adjacency, and ballotness (by rectification) of both one-gene
/// deletions.
fn k_by_definition(instance: &Instance) -> BTreeSet<(MarkedTableau, Cell, Cell)> {
    let shape = instance.shape();
    let beta = instance.beta.parts();
    let mut out = BTreeSet::new();
    for i in 1..=beta.len() {
        let mut content = beta.to_vec();
        content[i - 1] += 1;
        for filling in semistandard_fillings(&shape, &content, false) {
            let t = MarkedTableau::new(shape.clone(), filling, None).unwrap();
            let word = t.reading_word();
            let letters = word.letters().to_vec();
            let labels = word.standardize();
            let pos = t.reading_positions();
            let cells: Vec<Cell> = t.entries().keys().copied().collect();
            for (x, &a) in cells.iter().enumerate() {
                for &b in &cells[x + 1..] {
                    let (pa, pb) = (pos[&a], pos[&b]);
                    if letters[pa].value() as usize != i || letters[pb].value() as usize != i {
                        continue;
                    }
                    if labels[pa].abs_diff(labels[pb]) != 1 {
                        continue;
                    }
                    if (a.0 == b.0 && a.1.abs_diff(b.1) == 1) || (a.1 == b.1 && a.0.abs_diff(b.0) == 1) {
                        continue;
                    }
                    let gene_of = |p: usize| if p == pa || p == pb { usize::MAX } else { p };
                    let primes_ok = (0..letters.len()).filter(|&p| letters[p].is_primed()).all(|p| {
                        let unprimed = Letter::unprimed(letters[p].value());
                        (0..p).any(|q| letters[q] == unprimed && gene_of(q) != gene_of(p))
                    });
                    if !primes_ok {
                        continue;
                    }
                    let ballot = [pa, pb].iter().all(|&drop| {
                        let rest: Vec<Letter> =
                            letters.iter().enumerate().filter(|&(p, _)| p != drop).map(|(_, &l)| l).collect();
                        is_ballot_oracle(&Word::new(rest))
                    });
                    if ballot {
                        let (a, b) = if labels[pa] < labels[pb] { (a, b) } else { (b, a) };
                        out.insert((t.clone(), a, b));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn genomic_enumeration_matches_the_gene_definition() {
    let mut total = 0;
    for i in Instance::all_up_to(MAX_SIZE) {
        let found: BTreeSet<(MarkedTableau, Cell, Cell)> = ktheory::enumerate_genomic(&i)
            .unwrap()
            .into_iter()
            .map(|g| (g.base().clone(), g.pair().0, g.pair().1))
            .collect();
        assert_eq!(found, k_by_definition(&i), "{i}");
        total += found.len();
    }
    assert!(total > 100, "too few genomic tableaux: {total}");
}

#[test]
fn genomic_tableaux_round_trip_through_the_criterion() {
    for i in Instance::all_up_to(MAX_SIZE) {
        for g in ktheory::enumerate_genomic(&i).unwrap() {
            let (a, b) = g.pair();
            assert_eq!(GenomicTableau::new(g.base().clone(), b, a).unwrap(), g);
        }
    }
}

#[test]
fn k_is_half_the_non_adjacent_steps() {
    for i in Instance::all_up_to(MAX_SIZE) {
        let traces: Vec<_> =
            enumerate_lr_pairs(&i, BoxSide::Inner).iter().map(|t| esh::esh_switching(t).unwrap().1).collect();
        let seen = ktheory::traversals(&i.shape(), &traces).unwrap();
        assert_eq!(seen.non_adjacent_steps, 2 * ktheory::k_count(&i).unwrap(), "{i}");
    }
}

#[test]
fn theorem_suites_pass_on_all_small_instances() {
    let theorems: Vec<Suite> = Suite::ALL.into_iter().filter(|s| !s.is_conjecture()).collect();
    let mut count = 0;
    for i in Instance::all_up_to(MAX_SIZE) {
        let r = ktheory::verify(&i, &theorems).unwrap();
        assert!(r.theorems_pass(), "{i}: {:?}", r.counterexamples);
        assert_eq!(r.theorems.len(), theorems.len());
        assert_eq!(r.chi, Some(r.lr as i64 - r.k.unwrap() as i64));
        if let Some(g) = r.single_orbit_genus() {
            assert_eq!(g, r.k.unwrap() as i64 - r.lr as i64 + 1);
        }
        count += 1;
    }
    assert!(count > 1000);
}

#[test]
fn conjectures_hold_on_all_small_instances() {
    for i in Instance::all_up_to(MAX_SIZE) {
        let r = ktheory::verify(&i, &[Suite::OrbitConjecture, Suite::StepsConjecture]).unwrap();
        assert!(r.conjectures_pass(), "{i}: {:?}", r.counterexamples);
        assert!(r.theorems.is_empty());
    }
}

#[test]
fn mini_orbits_of_primed_symbols_climb_columns() {
    // On the three-cell instance the only partial loops are at 1' and 1;
    // their cycles account for all of K in each direction.
    let minis = ktheory::mini_orbits(&three_cells()).unwrap();
    assert!(minis.iter().all(|m| m.balanced()));
    let std_total: usize = minis.iter().map(|m| m.standard).sum();
    let rev_total: usize = minis.iter().map(|m| m.reverse).sum();
    assert_eq!((std_total, rev_total), (6, 6));
    assert!(ktheory::partial_loop_length(&minis) >= 6 - esh::orbits(&three_cells()).unwrap().orbit_count());
}

#[test]
fn orbit_conjecture_first_failure() {
    // No instance with |α| + |β| ≤ 11 fails the orbit-by-orbit bound; at
    // size 12 exactly one does. Its 5-element orbit traverses five genomic
    // tableaux in standardization order but only three in reverse, while
    // the two-to-one correspondence and the global inequality still hold.
    for i in Instance::all_up_to(11) {
        let r = ktheory::verify(&i, &[Suite::OrbitConjecture]).unwrap();
        assert!(r.conjectures_pass(), "{i}: {:?}", r.counterexamples);
    }
    let failing: Vec<Instance> = Instance::all_up_to(12)
        .into_iter()
        .filter(|i| i.size() == 12)
        .filter(|i| !ktheory::verify(i, &[Suite::OrbitConjecture]).unwrap().conjectures_pass())
        .collect();
    let i = inst("4,1", "5,2", "6,5,2");
    assert_eq!(failing, [i.clone()]);
    let report = esh::orbits(&i).unwrap();
    let mut shape: Vec<(usize, (usize, usize))> =
        report.orbits.iter().map(Vec::len).zip(report.genomic_by_orbit.iter().copied()).collect();
    shape.sort();
    assert_eq!(shape, [(3, (3, 5)), (5, (5, 3))]);
    assert!(ktheory::verify_two_to_one(&i).unwrap().is_empty());
    assert!(ktheory::verify_inequality(&i).unwrap());
}
