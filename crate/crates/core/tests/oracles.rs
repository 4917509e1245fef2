//! Frozen values, each recomputed here by a method independent of the code
//! under test.

use std::collections::BTreeSet;

use pretorsion::enumerate::{chain_oracle, condition_scan, enumerate_pretorsion, members};
use pretorsion::gallery::{self, endomap_category, preord_category};
use pretorsion::ideal::{prekernels, trivial_hom, TrivialIdeal};
use pretorsion::theory::{check_pretorsion, Verdict};
use pretorsion::{FinCategory, FullSub};

fn sub<'c>(c: &'c FinCategory, names: &[&str]) -> FullSub<'c> {
    FullSub::new(c, gallery::objects_named(c, names))
}

/// Labelled preorders on `n` points by filtering all reflexive relations for
/// transitivity.
fn count_preorders(n: usize) -> usize {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    (0u32..1 << off.len())
        .filter(|bits| {
            let rel = |i: usize, j: usize| {
                i == j
                    || off
                        .iter()
                        .position(|&p| p == (i, j))
                        .is_some_and(|k| bits >> k & 1 == 1)
            };
            (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(rel(i, j) && rel(j, k)) || rel(i, k))))
        })
        .count()
}

#[test]
fn chain_morphism_count_is_triangular() {
    for n in 1..=7 {
        let c = gallery::chain(n).unwrap();
        let pairs = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).count();
        assert_eq!(c.mor_count(), pairs);
        assert_eq!(pairs, n * (n + 1) / 2);
    }
}

#[test]
fn endomap_object_counts_are_sums_of_powers() {
    // 0^0 + 1^1 + 2^2 + 3^3.
    let expected = [1, 2, 6, 33];
    for (k, &e) in expected.iter().enumerate() {
        let sum: usize = (0..=k).map(|m| m.pow(m as u32)).sum();
        assert_eq!(sum, e);
        assert_eq!(endomap_category(k).unwrap().category.obj_count(), e);
    }
}

#[test]
fn preord_object_counts_are_sums_of_labelled_preorders() {
    let per_size: Vec<usize> = (0..=3).map(count_preorders).collect();
    assert_eq!(per_size, [1, 1, 4, 29]);
    let mut total = 0;
    for k in 0..=3 {
        total += per_size[k];
        assert_eq!(preord_category(k).unwrap().category.obj_count(), total);
    }
    assert_eq!(total, 35);
}

#[test]
fn endomap_two_classes() {
    let e = endomap_category(2).unwrap();
    let names = |s: &str| -> Vec<&str> {
        e.sub(s)
            .unwrap()
            .iter()
            .map(|&o| e.category.obj_name(o))
            .collect()
    };
    // Bijections: empty, id on 1, id on 2, the transposition.
    assert_eq!(names("torsion"), ["E0.", "E1.1", "E2.12", "E2.21"]);
    // Eventually idempotent: all but the transposition.
    assert_eq!(names("free").len(), 5);
    assert!(!names("free").contains(&"E2.21"));
    assert_eq!(names("zee"), ["E0.", "E1.1", "E2.12"]);
}

#[test]
fn chain3_trivial_factorization_through_middle() {
    let c = gallery::chain(3).unwrap();
    let z = sub(&c, &["2"]);
    let (a, b) = (c.obj_id("1").unwrap(), c.obj_id("3").unwrap());
    let w = trivial_hom(&z, a, b).unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!(c.mor_name(w[0].morphism), "1<=3");
    let ideal = TrivialIdeal::new(z).unwrap();
    let k = prekernels(&ideal, c.mor_id("2<=3").unwrap());
    let arrows: Vec<&str> = k.iter().map(|k| c.mor_name(k.arrow)).collect();
    assert_eq!(arrows, ["2<=2"]);
}

#[test]
fn chain_theory_counts_from_subset_pairs() {
    // Direct evaluation of the three constraints over all 4^n subset pairs.
    let brute = |n: usize| -> BTreeSet<(u64, u64)> {
        let mut out = BTreeSet::new();
        for t in 0u64..1 << n {
            for f in 0u64..1 << n {
                let (ts, fs) = (members(t), members(f));
                let covers = (1..=n).all(|i| ts.contains(&i) || fs.contains(&i));
                let meet = ts.iter().any(|i| fs.contains(i));
                let jump = (1..n).any(|i| {
                    ts.contains(&i)
                        && !fs.contains(&i)
                        && fs.contains(&(i + 1))
                        && !ts.contains(&(i + 1))
                });
                if covers && meet && !jump && ts.contains(&1) && fs.contains(&n) {
                    out.insert((t, f));
                }
            }
        }
        out
    };
    let counts: Vec<usize> = (1..=6).map(|n| brute(n).len()).collect();
    assert_eq!(&counts[..3], [1, 3, 8]);
    for n in 1..=6 {
        let oracle: BTreeSet<(u64, u64)> = chain_oracle(n)
            .iter()
            .map(|d| (d.torsion(), d.free()))
            .collect();
        assert_eq!(oracle, brute(n));
        assert_eq!(condition_scan(n).unwrap(), counts[n - 1]);
    }
}

#[test]
fn chain3_enumeration_count() {
    let c = gallery::chain(3).unwrap();
    assert_eq!(enumerate_pretorsion(&c).len(), 8);
}

#[test]
fn two_chain_facts() {
    let c = gallery::two();
    let z = sub(&c, &["1"]);
    let (zero, one) = (c.obj_id("0").unwrap(), c.obj_id("1").unwrap());
    assert!(c.hom(one, zero).is_empty());
    let ideal = TrivialIdeal::new(z).unwrap();
    assert!(prekernels(&ideal, c.id(zero)).is_empty());
    assert!(check_pretorsion(&sub(&c, &["0", "1"]), &sub(&c, &["1"]))
        .unwrap()
        .is_valid());
}

#[test]
fn reversed_two_chain_fails_at_bottom() {
    let c = gallery::chain(2).unwrap();
    match check_pretorsion(&sub(&c, &["2"]), &sub(&c, &["1"])).unwrap() {
        Verdict::Invalid(pretorsion::Counterexample::NoPreexactSequence { object, .. }) => {
            assert_eq!(c.obj_name(object), "1")
        }
        other => panic!("unexpected verdict {other:?}"),
    }
}
