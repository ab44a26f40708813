use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

use schemoid_core::coloring::{ColoredCategory, ColoredFile};
use schemoid_core::fincat::{Functor, NaturalTransformation, SetFunctor};
use schemoid_core::scheme::{AssociationScheme, SchemeFile};

struct Run {
    code: i32,
    stdout: String,
}

fn run(args: &[&str], stdin: &str) -> Run {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_schemoid-lab"))
        .args(args)
        .env_remove("SCHEMOID_LAB_CAPS")
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    // the binary may exit before reading stdin (bad arguments): ignore EPIPE
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
    }
}

fn report(r: &Run) -> Value {
    serde_json::from_str(&r.stdout).expect("report is JSON")
}

fn gen(args: &[&str]) -> String {
    let r = run(args, "");
    assert_eq!(r.code, 0, "{args:?}");
    r.stdout
}

fn temp_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("schemoid-lab-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn gen_outputs_reparse_and_revalidate() {
    let colored = [
        vec!["gen", "group", "z2"],
        vec!["gen", "group", "s3"],
        vec!["gen", "group", "z2xz2"],
        vec!["gen", "nat-len", "3"],
        vec!["gen", "pullback-example"],
        vec!["gen", "prop-app-example"],
        vec!["gen", "prop-app-example", "--part", "hamming"],
    ];
    for args in &colored {
        let text = gen(args);
        let file: ColoredFile = serde_json::from_str(&text).unwrap();
        let x = ColoredCategory::from_file(&file).unwrap();
        assert!(x.base().validate().is_valid(), "{args:?}");
        // re-serializing gives the same bytes
        assert_eq!(
            serde_json::to_string_pretty(&x.to_file()).unwrap() + "\n",
            text,
            "{args:?}"
        );
        let again = run(&["analyze"], &text);
        assert_eq!(again.code, 0, "{args:?}");
    }

    let pb = ColoredCategory::from_file(
        &serde_json::from_str(&gen(&["gen", "pullback-example"])).unwrap(),
    )
    .unwrap();
    let f: SetFunctor =
        serde_json::from_str(&gen(&["gen", "pullback-example", "--part", "functor"])).unwrap();
    assert!(f.check(pb.base()).unwrap().is_valid());
    for part in ["eta", "lambda"] {
        let eta: NaturalTransformation =
            serde_json::from_str(&gen(&["gen", "pullback-example", "--part", part])).unwrap();
        assert!(eta.check(pb.base(), &f, &f).unwrap().is_valid());
    }

    let pa = |part: &str| gen(&["gen", "prop-app-example", "--part", part]);
    let src = ColoredCategory::from_file(&serde_json::from_str(&pa("colored")).unwrap()).unwrap();
    let tgt = ColoredCategory::from_file(&serde_json::from_str(&pa("hamming")).unwrap()).unwrap();
    let u: Functor = serde_json::from_str(&pa("u")).unwrap();
    assert!(u.validate(src.base(), tgt.base()).is_valid());

    for args in [
        ["scheme", "gen", "hamming", "3", "2"],
        ["scheme", "gen", "johnson", "5", "2"],
    ] {
        let text = gen(&args);
        let file: SchemeFile = serde_json::from_str(&text).unwrap();
        let a = AssociationScheme::from_file(&file).unwrap();
        assert_eq!(
            serde_json::to_string_pretty(&a.to_file()).unwrap() + "\n",
            text
        );
        assert_eq!(run(&["scheme", "validate"], &text).code, 0);
    }
}

#[test]
fn simplicial_and_discrete_generators_read_files() {
    let complex = temp_file("k.json", r#"{"vertices": 3, "faces": [[0, 1], [2]]}"#);
    let text = gen(&["gen", "simplicial", &complex]);
    let x = ColoredCategory::from_file(&serde_json::from_str(&text).unwrap()).unwrap();
    // faces of an edge plus a vertex: ∅, 0, 1, 2, 01
    assert_eq!(x.base().object_count(), 5);

    let category = temp_file(
        "c.json",
        r#"{"objects": 2, "morphisms": [{"src": 0, "tgt": 0}, {"src": 1, "tgt": 1}, {"src": 0, "tgt": 1}],
            "identity": [0, 1], "compose": [[0, 0, 0], [1, 1, 1], [2, 0, 2], [1, 2, 2]]}"#,
    );
    let text = gen(&["gen", "discrete", &category]);
    let x = ColoredCategory::from_file(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(x.color_count(), 3);
    let q = report(&run(&["quotient"], &text));
    assert_eq!(q["result"]["order"], 3);
    assert_eq!(q["result"]["kind"], "general");
}

#[test]
fn group_pipeline_gives_group_of_order_two() {
    let r = run(&["quotient"], &gen(&["gen", "group", "z2"]));
    assert_eq!(r.code, 0);
    let v = report(&r);
    assert_eq!(v["result"]["kind"], "group");
    assert_eq!(v["result"]["order"], 2);
    assert_eq!(v["exit_code"], 0);
}

#[test]
fn hamming_scheme_pipeline_gives_group_of_order_two() {
    let r = run(
        &["scheme", "quo"],
        &gen(&["scheme", "gen", "hamming", "2", "2"]),
    );
    assert_eq!(r.code, 0);
    let v = report(&r);
    assert_eq!(v["result"]["quotient_order"], 2);
    assert_eq!(v["result"]["factor_order"], 2);
    assert_eq!(v["result"]["crosscheck"]["isomorphism"], true);
}

#[test]
fn reports_are_deterministic_and_digest_the_input() {
    let text = gen(&["gen", "prop-app-example"]);
    for args in [
        vec!["analyze"],
        vec!["quotient"],
        vec!["cohomology", "--coeffs", "Z/2", "--degree", "3"],
    ] {
        let a = run(&args, &text);
        let b = run(&args, &text);
        assert_eq!(a.code, 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let v = report(&a);
        let digest = v["inputs"][0]["sha256"].as_str().unwrap();
        assert_eq!(digest.len(), 64);
        assert!(digest.chars().all(|c| c.is_ascii_hexdigit()));
    }
    let other = run(&["analyze"], &gen(&["gen", "group", "z3"]));
    assert_ne!(
        report(&other)["inputs"][0]["sha256"],
        report(&run(&["analyze"], &text))["inputs"][0]["sha256"]
    );
}

#[test]
fn cohomology_routes() {
    let v = report(&run(
        &["cohomology", "--coeffs", "Z/2", "--degree", "4"],
        &gen(&["gen", "prop-app-example"]),
    ));
    assert_eq!(v["result"]["route"], "nerve");
    assert_eq!(v["result"]["display"], serde_json::json!(vec!["Z/2"; 5]));

    let v = report(&run(
        &["cohomology", "--degree", "3"],
        &gen(&["gen", "nat-len", "2"]),
    ));
    assert_eq!(v["result"]["route"], "koszul");
    assert_eq!(
        v["result"]["display"],
        serde_json::json!(["Z", "Z", "0", "0"])
    );

    let v = report(&run(
        &["cohomology", "--degree", "2"],
        &gen(&["gen", "group", "z3"]),
    ));
    assert_eq!(v["result"]["route"], "bar");
    assert_eq!(v["result"]["display"], serde_json::json!(["Z", "0", "Z/3"]));
}

#[test]
fn exit_one_when_an_asserted_predicate_fails() {
    let pb = gen(&["gen", "pullback-example"]);
    let r = run(&["analyze", "--assert", "schemoid"], &pb);
    assert_eq!(r.code, 1);
    let v = report(&r);
    assert_eq!(v["result"]["schemoid"]["holds"], false);
    assert!(v["summary"].as_str().unwrap().contains("not a schemoid"));
    // the same fixture without assertions is fine
    assert_eq!(run(&["analyze"], &pb).code, 0);
    assert_eq!(
        run(
            &["analyze", "--assert", "schemoid", "--assert", "tame"],
            &gen(&["gen", "group", "s3"])
        )
        .code,
        0
    );

    let not_scheme = r#"{"points": 2, "relations": [[0, 1], [2, 0]]}"#;
    assert_eq!(run(&["scheme", "validate"], not_scheme).code, 1);
}

#[test]
fn exit_two_with_a_pointer_for_malformed_fixtures() {
    let cases = [
        (
            r#"{"objects": 1, "morphisms": [{"src": 0, "tgt": "x"}], "identity": [0], "compose": [], "colors": [0]}"#,
            "/morphisms/0/tgt",
        ),
        (
            r#"{"objects": 1, "morphisms": [{"src": 0, "tgt": 0}], "identity": [0], "compose": [[0, 0, 0]]}"#,
            "/colors",
        ),
        (
            r#"{"objects": 1, "morphisms": [{"src": 0, "tgt": 0}], "identity": [0], "compose": [[0, 0, 5]], "colors": [0]}"#,
            "/compose/0",
        ),
        (
            r#"{"objects": 1, "morphisms": [{"src": 0, "tgt": 3}], "identity": [0], "compose": [], "colors": [0]}"#,
            "/morphisms/0",
        ),
        (
            r#"{"objects": 1, "morphisms": [{"src": 0, "tgt": 0}], "identity": [0], "compose": [[0, 0, 0]], "colors": [1]}"#,
            "/colors",
        ),
        (
            r#"{"objects": 1, "morphisms": [{"src": 0, "tgt": 0}], "identity": [0], "compose": [], "colors": [0]}"#,
            "/compose",
        ),
    ];
    for (text, pointer) in cases {
        for cmd in ["analyze", "quotient", "cohomology"] {
            let r = run(&[cmd], text);
            assert_eq!(r.code, 2, "{cmd} {text}");
            assert_eq!(report(&r)["result"]["pointer"], pointer, "{cmd} {text}");
        }
    }
    assert_eq!(run(&["quotient"], "not json").code, 2);
    assert_eq!(run(&["quotient", "/nonexistent/colored.json"], "").code, 2);
    assert_eq!(run(&["gen", "group", "q8"], "").code, 2);
    assert_eq!(
        run(
            &["cohomology", "--coeffs", "Z/1"],
            &gen(&["gen", "group", "z2"])
        )
        .code,
        2
    );
    assert_eq!(
        run(
            &["scheme", "quo"],
            r#"{"points": 2, "relations": [[0, 1], [2, 0]]}"#
        )
        .code,
        2
    );

    let pb = temp_file("pb.json", &gen(&["gen", "pullback-example"]));
    let bad = temp_file(
        "f.json",
        r#"{"object_sets": [["a"], ["b"]], "morphism_maps": [[0], [0], [1]]}"#,
    );
    let r = run(&["sheafify", &pb, &bad], "");
    assert_eq!(r.code, 2);
    assert_eq!(report(&r)["result"]["pointer"], "/morphism_maps/2");
}

#[test]
fn exit_three_when_undecided_with_partial_data() {
    // free monoid on two letters: infinite hom-set
    let free = gen(&[
        "gen",
        "simplicial",
        &temp_file("k2.json", r#"{"vertices": 2, "faces": []}"#),
    ]);
    let r = run(&["quotient"], &free);
    assert_eq!(r.code, 3);
    let v = report(&r);
    assert_eq!(v["result"]["status"], "undecided");
    assert!(v["result"]["generators"]
        .as_array()
        .is_some_and(|g| !g.is_empty()));
    assert_eq!(run(&["cohomology"], &free).code, 3);

    // tight caps stop completion on a finite quotient
    let s3 = gen(&["gen", "group", "s3"]);
    assert_eq!(run(&["quotient"], &s3).code, 0);
    let r = run_env(&["quotient"], &s3, &[("SCHEMOID_LAB_CAPS", "max_pairs=1")]);
    assert_eq!(r.code, 3);
    assert_eq!(report(&r)["result"]["reason"], "incomplete");
    assert_eq!(report(&r)["result"]["caps"]["max_pairs"], 1);
    assert_eq!(
        run_env(&["quotient"], &s3, &[("SCHEMOID_LAB_CAPS", "bogus")]).code,
        2
    );
}

#[test]
fn sheafify_the_pullback_functor() {
    let pb = temp_file("pb2.json", &gen(&["gen", "pullback-example"]));
    let f = temp_file(
        "pbf.json",
        &gen(&["gen", "pullback-example", "--part", "functor"]),
    );
    let r = run(&["sheafify", &pb, &f], "");
    assert_eq!(r.code, 0);
    let v = report(&r);
    assert_eq!(v["result"]["color_preserving"]["holds"], true);
    assert_eq!(v["inputs"].as_array().unwrap().len(), 2);
    let s: SetFunctor = serde_json::from_value(v["result"]["sheafified"].clone()).unwrap();
    let x = ColoredCategory::from_file(
        &serde_json::from_str(&std::fs::read_to_string(&pb).unwrap()).unwrap(),
    )
    .unwrap();
    assert!(s.check(x.base()).unwrap().is_valid());
    assert!(!v["result"]["unit"].is_null());
}

#[test]
fn golden_rows_match_the_committed_expectations() {
    let r = run(&["golden"], "");
    let v = report(&r);
    assert_eq!(r.code, 0, "{}", v["result"]["diffs"]);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 11);
    assert!(rows.iter().all(|row| row["pass"] == true));

    // a tampered expectation is reported as a difference
    let mut expected: Value =
        serde_json::from_str(include_str!("../golden/expected.json")).unwrap();
    expected[0]["detail"] = Value::from("something else");
    let path = temp_file("expected.json", &expected.to_string());
    let r = run(&["golden", "--expect", &path], "");
    assert_eq!(r.code, 1);
    assert_eq!(report(&r)["result"]["diffs"].as_array().unwrap().len(), 1);
}
