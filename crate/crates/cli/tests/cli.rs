use proptest::prelude::*;

use pretorsion::enumerate::enumerate_pretorsion;
use pretorsion::format::{build, parse_spec};
use pretorsion::gallery;
use pretorsion::theory::check_pretorsion;
use pretorsion::FullSub;
use pretorsion_cli::{run, Outcome};

fn golden(name: &str) -> String {
    format!("{}/tests/goldens/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn pretorsion(args: &[&str]) -> Outcome {
    run(std::iter::once("pretorsion").chain(args.iter().copied()))
}

#[test]
fn n5_theory_checks() {
    let n5 = golden("n5.cat");
    let o = pretorsion(&["check", &n5, "--torsion", "T,Z,Z'", "--free", "F,Z,Z'"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.starts_with("Valid"));
    let o = pretorsion(&[
        "--format",
        "lines",
        "check",
        &n5,
        "--torsion",
        "@torsion",
        "--free",
        "@free",
    ]);
    assert!(o.stdout.contains("sequence=C T T<=C C<=F F\n"));
    assert!(o.stdout.contains("verdict=valid\n"));
}

#[test]
fn invalid_pair_is_a_definite_negative() {
    let o = pretorsion(&[
        "--format=lines",
        "check",
        &golden("chain3.cat"),
        "--torsion",
        "2,3",
        "--free",
        "1,2",
    ]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("axiom=2\nobject=1\n"), "{}", o.stdout);
}

#[test]
fn chain3_enumeration_agrees_with_oracle() {
    let o = pretorsion(&[
        "--format=lines",
        "enumerate",
        &golden("chain3.cat"),
        "--oracle",
        "chain",
    ]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("theories=8\n"));
    assert!(o.stdout.contains("oracle=agree\n"));
}

#[test]
fn oracle_rejects_non_chains() {
    let o = pretorsion(&["enumerate", &golden("n5.cat"), "--oracle", "chain"]);
    assert_eq!(o.code, 2);
}

#[test]
fn two_chain_decomposition_of_bottom() {
    let o = pretorsion(&[
        "--format=lines",
        "decompose",
        &golden("two.cat"),
        "--torsion",
        "0,1",
        "--free",
        "1",
        "--object",
        "0",
    ]);
    assert_eq!(o.code, 0);
    let seqs: Vec<&str> = o
        .stdout
        .lines()
        .filter(|l| l.starts_with("sequence="))
        .collect();
    assert_eq!(seqs, ["sequence=0 0 0<=0 0<=1 1"]);
}

#[test]
fn closure_report_on_n5() {
    let o = pretorsion(&[
        "--format=lines",
        "closure",
        &golden("n5.cat"),
        "--torsion",
        "@torsion",
        "--free",
        "@free",
    ]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stdout.contains("violations=0\n"));
    assert!(o.stdout.contains("zeta=verified\n"));
}

#[test]
fn input_errors_exit_two() {
    let bad = pretorsion(&["validate", &golden("bad_compose.cat")]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("line 6, column 9"), "{}", bad.stderr);
    assert_eq!(pretorsion(&["frobnicate"]).code, 2);
    assert_eq!(
        pretorsion(&["check", &golden("n5.cat"), "--torsion", "T"]).code,
        2
    );
    assert_eq!(
        pretorsion(&["check", &golden("n5.cat"), "--torsion", "Q", "--free", "F"]).code,
        2
    );
    assert_eq!(pretorsion(&["validate", &golden("missing.cat")]).code, 2);
    assert_eq!(pretorsion(&["gallery", "chain"]).code, 2);
}

#[test]
fn unlawful_category_is_a_definite_negative() {
    let o = pretorsion(&["validate", &golden("unlawful.cat")]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("missing composite g * f"));
}

#[test]
fn object_sets_are_closed_under_isomorphism() {
    // The two constant maps on a 2-element set are isomorphic.
    let o = pretorsion(&[
        "check",
        &golden("endomap2.cat"),
        "--torsion",
        "@torsion",
        "--free",
        "E0.,E1.1,E2.11,E2.12",
    ]);
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    assert!(o
        .stderr
        .contains("free class closed under isomorphism, added E2.22"));
}

#[test]
fn gallery_output_builds_the_gallery_category() {
    let o = pretorsion(&["gallery", "n5"]);
    assert_eq!(
        build(&parse_spec(&o.stdout).unwrap()).unwrap().category,
        gallery::n5()
    );
    let o = pretorsion(&["gallery", "endomap", "2", "--expand"]);
    let built = build(&parse_spec(&o.stdout).unwrap()).unwrap();
    let e = gallery::endomap_category(2).unwrap();
    assert_eq!(built.category, e.category);
    assert_eq!(built.subs, e.subs);
}

#[test]
fn enumerated_theories_reverify_from_a_fresh_parse() {
    for file in [
        "n5.cat",
        "two.cat",
        "chain3.cat",
        "endomap2.cat",
        "preord2.cat",
        "idempotent.cat",
    ] {
        let text = std::fs::read_to_string(golden(file)).unwrap();
        let first = build(&parse_spec(&text).unwrap()).unwrap().category;
        let second = build(&parse_spec(&text).unwrap()).unwrap().category;
        let theories = enumerate_pretorsion(&first);
        assert!(!theories.is_empty(), "{file}");
        for (t, f) in theories {
            let again = |s: &FullSub<'_>| {
                FullSub::new(&second, s.names().iter().map(|n| second.obj_id(n).unwrap()))
            };
            assert!(
                check_pretorsion(&again(&t), &again(&f)).unwrap().is_valid(),
                "{file} {:?} {:?}",
                t.names(),
                f.names()
            );
        }
    }
}

#[test]
fn help_exits_zero() {
    let o = pretorsion(&["--help"]);
    assert_eq!(o.code, 0);
    assert!(o.stdout.contains("enumerate"));
}

fn token() -> impl Strategy<Value = String> {
    let files = [
        "n5.cat",
        "two.cat",
        "chain3.cat",
        "bad_compose.cat",
        "unlawful.cat",
        "nope.cat",
    ];
    prop_oneof![
        prop::sample::select(vec![
            "validate",
            "check",
            "enumerate",
            "decompose",
            "closure",
            "gallery",
            "--torsion",
            "--free",
            "--object",
            "--oracle",
            "chain",
            "--format",
            "lines",
            "--expand",
            "n5",
            "3",
            "T,Z",
            "@torsion",
            "1",
            "0,1",
            "--bogus",
        ])
        .prop_map(str::to_string),
        prop::sample::select(files.to_vec()).prop_map(golden),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn every_invocation_exits_zero_one_or_two(args in prop::collection::vec(token(), 0..7)) {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = pretorsion(&refs);
        prop_assert!(matches!(o.code, 0..=2));
    }
}
