mod common;

use common::*;
use shifted_esh::jdt::{inner_slide, is_ballot_oracle, outer_slide, rectify, rectify_by, unrectify};
use shifted_esh::shifted_core::{semistandard_fillings, MarkedTableau};

/// Every semistandard canonical filling of small shapes with up to three
/// families and positive content.
fn small_tableaux(max_cells: usize, max_first: usize) -> Vec<MarkedTableau> {
    let mut out = Vec::new();
    for shape in small_shapes(max_cells, max_first) {
        for k in 1..=3 {
            for content in compositions(shape.size(), k) {
                if content.iter().any(|&c| c == 0) {
                    continue;
                }
                for f in semistandard_fillings(&shape, &content, false) {
                    out.push(MarkedTableau::new(shape.clone(), f, None).unwrap());
                }
            }
        }
    }
    out
}

#[test]
fn inner_and_outer_slides_match_standardized_slides() {
    let tabs = small_tableaux(5, 5);
    assert!(tabs.len() > 1000, "{}", tabs.len());
    let mut checked = 0;
    for t in &tabs {
        let content = t.content();
        for corner in t.shape().inner_corners() {
            let (got, vacated) = inner_slide(t, corner).unwrap();
            let mut labels = std_labels(t);
            let v = standard_inner_slide(&mut labels, corner);
            assert_eq!(v, vacated);
            let want = tableau_from_labels(got.shape(), &labels, &content).expect("destandardizable");
            assert_eq!(got.canonical_form(), want, "inner slide of {t} into {corner:?}");
            assert!(got.is_semistandard());
            assert!(got.is_canonical(), "{got}");
            checked += 1;
        }
        for corner in t.shape().outer_corners() {
            let (got, vacated) = outer_slide(t, corner).unwrap();
            let mut labels = std_labels(t);
            let v = standard_outer_slide(&mut labels, corner);
            assert_eq!(v, vacated);
            let want = tableau_from_labels(got.shape(), &labels, &content).expect("destandardizable");
            assert_eq!(got.canonical_form(), want, "outer slide of {t} into {corner:?}");
            assert!(got.is_semistandard());
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn rectification_is_order_independent_and_invertible() {
    for t in small_tableaux(5, 5) {
        let (rect, record) = rectify(&t).unwrap();
        let (rect_first, _) = rectify_by(&t, |_| 0).unwrap();
        assert_eq!(rect, rect_first, "{t}");
        assert_eq!(unrectify(&rect, &record).unwrap(), t);
    }
}

#[test]
fn ballot_oracle_agrees_with_walk_raising_and_counting() {
    use shifted_esh::coplactic::{counting_criterion, is_ballot_raising, is_ballot_walk};
    let mut ballot = 0;
    let mut needs_dominance = 0;
    let mut needs_start = 0;
    for n in 0..=6 {
        for w in canonical_words(n, 3) {
            let oracle = is_ballot_oracle(&w);
            assert_eq!(is_ballot_walk(&w), oracle, "walk criterion on {w}");
            assert_eq!(is_ballot_raising(&w), oracle, "raising criterion on {w}");
            let c = counting_criterion(&w);
            assert_eq!(c.ballot(), oracle, "counting criterion on {w}: {c:?}");
            if c.local_conditions && c.start_condition && !c.dominance {
                needs_dominance += 1;
            }
            if c.local_conditions && c.dominance && !c.start_condition {
                needs_start += 1;
            }
            ballot += oracle as usize;
        }
    }
    assert!(ballot > 50);
    // The condition at j = 0 is not implied by the others.
    assert!(needs_start > 0);
    println!("words rejected only by dominance: {needs_dominance}; only by the j = 0 condition: {needs_start}");
}
