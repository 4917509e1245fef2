use std::sync::OnceLock;

use proptest::prelude::*;

use pretorsion::enumerate::replete_pairs;
use pretorsion::format::{build, export, parse_spec, serialize, Body, CategorySpec, MorphismDecl};
use pretorsion::gallery::{self, endomap_category, EndomapCategory};
use pretorsion::ideal::{precokernels, prekernels, TrivialIdeal};
use pretorsion::morphisms::morphism_class;
use pretorsion::theory::{
    all_sequences, check_axioms, check_pretorsion, same_up_to_unique_iso, Counterexample, Verdict,
};
use pretorsion::{FinCategory, FullSub, MorId, MorphismClass, ObjId};

fn small_categories() -> &'static [FinCategory] {
    static CATS: OnceLock<Vec<FinCategory>> = OnceLock::new();
    CATS.get_or_init(|| {
        vec![
            gallery::chain(3).unwrap(),
            gallery::two(),
            gallery::n5(),
            gallery::endomap_category(2).unwrap().category,
            gallery::preord_category(2).unwrap().category,
        ]
    })
}

fn endomap3() -> &'static EndomapCategory {
    static CAT: OnceLock<EndomapCategory> = OnceLock::new();
    CAT.get_or_init(|| endomap_category(3).unwrap())
}

fn from_mask(c: &FinCategory, mask: u64) -> FullSub<'_> {
    FullSub::new(c, c.objects().filter(|o| mask >> (o.index() % 64) & 1 == 1)).replete_closure()
}

fn renamed<'c>(s: &FullSub<'_>, into: &'c FinCategory) -> FullSub<'c> {
    FullSub::new(into, s.names().iter().map(|n| into.obj_id(n).unwrap()))
}

/// The same category with objects and morphisms declared in another order.
fn shuffled(c: &FinCategory, objs: &[usize], mors: &[usize]) -> FinCategory {
    let Body::Explicit {
        objects,
        morphisms,
        identities,
        composites,
    } = export(c, &[]).unwrap().body
    else {
        unreachable!()
    };
    let spec = CategorySpec {
        body: Body::Explicit {
            objects: objs.iter().map(|&i| objects[i].clone()).collect(),
            morphisms: mors.iter().map(|&i| morphisms[i].clone()).collect(),
            identities,
            composites,
        },
        subs: Vec::new(),
    };
    build(&spec).unwrap().category
}

fn category_and_perms() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>)> {
    (0..small_categories().len()).prop_flat_map(|k| {
        let c = &small_categories()[k];
        (
            Just(k),
            Just((0..c.obj_count()).collect::<Vec<_>>()).prop_shuffle(),
            Just((0..c.mor_count()).collect::<Vec<_>>()).prop_shuffle(),
        )
    })
}

fn name() -> impl Strategy<Value = String> {
    "[A-Za-z0-9_'<=|.]{1,6}".prop_filter("separator", |s| pretorsion::format::is_valid_name(s))
}

fn spec() -> impl Strategy<Value = CategorySpec> {
    let names = prop::collection::vec(name(), 0..6);
    let subs = prop::collection::vec((name(), prop::collection::vec(name(), 0..4)), 0..3);
    let explicit = (
        names,
        prop::collection::vec((name(), name(), name()), 0..6),
        prop::collection::vec((name(), name()), 0..4),
        prop::collection::vec((name(), name(), name()), 0..4),
    )
        .prop_map(|(objects, ms, identities, composites)| Body::Explicit {
            objects,
            morphisms: ms
                .into_iter()
                .map(|(name, dom, cod)| MorphismDecl { name, dom, cod })
                .collect(),
            identities,
            composites,
        });
    let body = prop_oneof![
        explicit,
        (1usize..30).prop_map(Body::Chain),
        (1usize..5).prop_map(Body::Endomap),
        (1usize..5).prop_map(Body::Preord),
        (
            prop::collection::vec(name(), 1..5),
            prop::collection::vec((name(), name()), 0..4)
        )
            .prop_map(|(mut elements, covers)| {
                for (a, b) in &covers {
                    for e in [a, b] {
                        if !elements.contains(e) {
                            elements.push(e.clone());
                        }
                    }
                }
                elements.dedup();
                Body::Poset { elements, covers }
            }),
    ];
    (body, subs).prop_map(|(body, subs)| CategorySpec { body, subs })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdict_is_invariant_under_relabelling((k, objs, mors) in category_and_perms(), t in any::<u64>(), f in any::<u64>()) {
        let c = &small_categories()[k];
        let d = shuffled(c, &objs, &mors);
        let (t1, f1) = (from_mask(c, t), from_mask(c, f));
        let (t2, f2) = (renamed(&t1, &d), renamed(&f1, &d));
        let v1 = check_pretorsion(&t1, &f1).unwrap();
        let v2 = check_pretorsion(&t2, &f2).unwrap();
        prop_assert_eq!(v1.is_valid(), v2.is_valid());
        if let (Verdict::Valid(a), Verdict::Valid(b)) = (v1, v2) {
            for x in c.objects() {
                let y = d.obj_id(c.obj_name(x)).unwrap();
                // Transport the relabelled sequence back by names.
                let s = b.decomp[y.index()];
                let back = pretorsion::Decomposition {
                    object: x,
                    torsion: c.obj_id(d.obj_name(s.torsion)).unwrap(),
                    eps: c.mor_id(d.mor_name(s.eps)).unwrap(),
                    eta: c.mor_id(d.mor_name(s.eta)).unwrap(),
                    free: c.obj_id(d.obj_name(s.free)).unwrap(),
                };
                prop_assert!(same_up_to_unique_iso(c, &a.decomp[x.index()], &back));
            }
        }
    }

    #[test]
    fn trivial_morphisms_form_an_ideal(k in 0..5usize, z in 1u64.., f in any::<prop::sample::Index>(), g in any::<prop::sample::Index>()) {
        let c = &small_categories()[k];
        let zee = from_mask(c, z);
        prop_assume!(!zee.is_empty());
        let ideal = TrivialIdeal::new(zee).unwrap();
        let f = MorId::new(f.index(c.mor_count()));
        let outs = c.out(c.cod(f));
        let g = outs.iter().nth(g.index(outs.len())).unwrap();
        if ideal.is_trivial(f) || ideal.is_trivial(g) {
            prop_assert!(ideal.is_trivial(c.compose(g, f)));
        }
    }

    #[test]
    fn prekernels_are_precokernels_in_the_opposite(k in 0..5usize, z in 1u64.., f in any::<prop::sample::Index>()) {
        let c = &small_categories()[k];
        let op = c.opposite();
        let zee = from_mask(c, z);
        prop_assume!(!zee.is_empty());
        let ideal = TrivialIdeal::new(zee.clone()).unwrap();
        let ideal_op = TrivialIdeal::new(renamed(&zee, &op)).unwrap();
        let f = MorId::new(f.index(c.mor_count()));
        let f_op = op.mor_id(c.mor_name(f)).unwrap();
        let names = |cat: &FinCategory, v: Vec<MorId>| -> Vec<String> {
            let mut n: Vec<String> = v.into_iter().map(|m| cat.mor_name(m).to_string()).collect();
            n.sort();
            n
        };
        prop_assert_eq!(
            names(c, prekernels(&ideal, f).into_iter().map(|k| k.arrow).collect()),
            names(&op, precokernels(&ideal_op, f_op).into_iter().map(|k| k.arrow).collect())
        );
        prop_assert_eq!(
            names(c, precokernels(&ideal, f).into_iter().map(|k| k.arrow).collect()),
            names(&op, prekernels(&ideal_op, f_op).into_iter().map(|k| k.arrow).collect())
        );
    }

    #[test]
    fn theories_dualize(k in 0..5usize, t in any::<u64>(), f in any::<u64>()) {
        let c = &small_categories()[k];
        let op = c.opposite();
        let (t, f) = (from_mask(c, t), from_mask(c, f));
        let here = check_axioms(&t, &f).unwrap().is_none();
        let there = check_axioms(&renamed(&f, &op), &renamed(&t, &op)).unwrap().is_none();
        prop_assert_eq!(here, there);
    }

    #[test]
    fn spec_round_trips(s in spec()) {
        let text = serialize(&s);
        prop_assert_eq!(parse_spec(&text).unwrap(), s);
    }

    #[test]
    fn endomap3_verdicts_are_witnessed(t in any::<u64>(), f in any::<u64>()) {
        let e = endomap3();
        let c = &e.category;
        let classes = c.iso_classes();
        let pick = |mask: u64| {
            let objs: Vec<ObjId> = classes
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
                .flat_map(|(_, cl)| cl.iter().copied())
                .collect();
            FullSub::new(c, objs)
        };
        let (t, f) = (pick(t), pick(f));
        match check_pretorsion(&t, &f).unwrap() {
            Verdict::Valid(d) => prop_assert!(d.report.is_clean(), "{:?}", d.report),
            Verdict::Invalid(Counterexample::NonTrivialMorphism { morphism, .. }) => {
                prop_assert!(t.contains(c.dom(morphism)) && f.contains(c.cod(morphism)));
                let zee = t.intersection(&f);
                let factors = zee.objects().iter().any(|&z| {
                    c.hom(c.dom(morphism), z).iter().any(|a| c.hom(z, c.cod(morphism)).iter().any(|b| c.compose(b, a) == morphism))
                });
                prop_assert!(!factors);
            }
            Verdict::Invalid(Counterexample::NoPreexactSequence { object, .. }) => {
                let zee = t.intersection(&f);
                if !zee.is_empty() {
                    let ideal = TrivialIdeal::new(zee).unwrap();
                    prop_assert!(all_sequences(&ideal, &t, &f, object).is_empty());
                }
            }
        }
    }
}

#[test]
fn morphism_flags_respect_inclusions() {
    let mut cats: Vec<&FinCategory> = small_categories().iter().collect();
    cats.push(&endomap3().category);
    for c in cats {
        for m in c.morphisms() {
            let k = morphism_class(c, m);
            let has = |f: MorphismClass| k.contains(f);
            if has(MorphismClass::ISO) {
                assert!(k.contains(
                    MorphismClass::MONO
                        | MorphismClass::EPI
                        | MorphismClass::SPLIT_MONO
                        | MorphismClass::SPLIT_EPI
                ));
            }
            if has(MorphismClass::SPLIT_MONO) {
                assert!(has(MorphismClass::MONO));
            }
            if has(MorphismClass::SPLIT_EPI) {
                assert!(has(MorphismClass::EPI) && has(MorphismClass::REGULAR_EPI));
            }
            if has(MorphismClass::REGULAR_EPI) {
                assert!(has(MorphismClass::EXTREMAL_EPI), "{}", c.mor_name(m));
            }
            if has(MorphismClass::EXTREMAL_EPI) {
                assert!(has(MorphismClass::EPI));
            }
            if has(MorphismClass::MONO) && has(MorphismClass::EXTREMAL_EPI) {
                assert!(has(MorphismClass::ISO));
            }
        }
    }
}

#[test]
fn replete_pairs_are_distinct_and_replete() {
    for c in small_categories() {
        let pairs: Vec<(Vec<ObjId>, Vec<ObjId>)> = replete_pairs(c)
            .map(|(t, f)| (t.objects().to_vec(), f.objects().to_vec()))
            .collect();
        let mut sorted = pairs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), pairs.len());
        for (t, f) in replete_pairs(c) {
            assert!(t.is_replete() && f.is_replete() && !t.intersection(&f).is_empty());
        }
    }
}
