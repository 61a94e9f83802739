use std::path::{Path, PathBuf};
use std::process::Command as Proc;
use std::sync::Arc;

use clap::Parser;
use hopfolog::cli::{run, Cli, Outcome};
use hopfolog::comod::{DerivationAlgebra, SmashHom, SmashModule};
use hopfolog::grmod::{decompose, Degree, GradedModule, HopfFamily};
use hopfolog::io::{MapFile, ModuleFile};

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn invoke(args: &[&str]) -> (Outcome, String) {
    let cli = Cli::try_parse_from(std::iter::once("hopfolog").chain(args.iter().copied())).unwrap();
    let mut buf = Vec::new();
    let outcome = run(&cli, &mut buf).unwrap();
    (outcome, String::from_utf8(buf).unwrap())
}

fn output(args: &[&str]) -> String {
    invoke(args).1
}

fn exit_status(args: &[&str]) -> i32 {
    let out = Proc::new(env!("CARGO_BIN_EXE_hopfolog"))
        .arg("--golden")
        .args(args)
        .output()
        .unwrap();
    out.status.code().unwrap()
}

#[test]
fn decompose_tensor_square() {
    let out = scratch("v1v1.json");
    let v1 = fixture("v1_p3.json");
    invoke(&["tensor", &v1, &v1, "--out", out.to_str().unwrap()]);
    let text = output(&["decompose", out.to_str().unwrap()]);
    assert_eq!(text, "stable:\n  V_0{1} x1\nprojective:\n  V_2{0} x1\n");
}

#[test]
fn decompose_free_module_lists_only_projectives() {
    let text = output(&["decompose", &fixture("h_p3.json")]);
    assert_eq!(text, "stable:\n  (none)\nprojective:\n  V_2{0} x1\n");
}

#[test]
fn malformed_degree_is_a_parse_error() {
    let cli = Cli::try_parse_from(["hopfolog", "decompose", &fixture("bad_degree.json")]).unwrap();
    let err = run(&cli, &mut Vec::new()).unwrap_err();
    assert!(matches!(err, hopfolog::Error::Parse(_)), "{err}");
    assert_eq!(exit_status(&["decompose", &fixture("bad_degree.json")]), 2);
}

#[test]
fn groth_examples() {
    assert_eq!(output(&["groth", &fixture("v1_p3.json")]), "1 + q\n");
    assert_eq!(output(&["groth", &fixture("h_p3.json")]), "0\n");
    assert_eq!(output(&["groth", &fixture("v1_shift2_p3.json")]), "-q\n");
}

#[test]
fn stable_hom_examples() {
    let v0 = fixture("v0_p3.json");
    assert_eq!(
        output(&["stable-hom", &v0, &v0]),
        "hom: 1, null-homotopic: 0, stable: 1\n"
    );
    let h = fixture("h_p3.json");
    assert!(output(&["stable-hom", &h, &h]).ends_with("stable: 0\n"));
    let far = fixture("v0_p3_deg5.json");
    assert_eq!(
        output(&["stable-hom", &v0, &far]),
        "hom: 0, null-homotopic: 0, stable: 0\n"
    );
}

#[test]
fn cone_examples() {
    let out = scratch("cone_id.json");
    let text = output(&["cone", &fixture("id_v1_p3.json"), "--out", out.to_str().unwrap()]);
    assert_eq!(text, "stably trivial: yes\n");
    let cone = ModuleFile::read(&out).unwrap();
    assert!(cone.check().unwrap().is_empty());
    assert!(decompose(&cone.plain().unwrap()).is_projective());

    let zero_out = scratch("cone_zero.json");
    output(&[
        "cone",
        &fixture("zero_into_v1_p3.json"),
        "--out",
        zero_out.to_str().unwrap(),
    ]);
    let v1 = ModuleFile::read(Path::new(&fixture("v1_p3.json")))
        .unwrap()
        .plain()
        .unwrap();
    let c = ModuleFile::read(&zero_out).unwrap().plain().unwrap();
    assert!(hopfolog::grmod::is_isomorphic(&c, &v1).unwrap());
}

#[test]
fn quasi_iso_on_an_isomorphism() {
    let text = output(&["quasi-iso", &fixture("id_v1_p3.json")]);
    assert!(text.starts_with("quasi-iso: yes\n"), "{text}");
}

#[test]
fn slash_of_free_module_vanishes() {
    let text = output(&["slash", &fixture("h_p3.json")]);
    assert_eq!(text.lines().count(), 2);
    for line in text.lines() {
        let cells = line.split_once(": [").unwrap().1.trim_end_matches(']');
        assert!(cells.split(", ").all(|c| c.ends_with(":0")), "{line}");
    }
    assert_eq!(exit_status(&["slash", &fixture("h_p3.json"), "--a", "3"]), 1);
}

#[test]
fn fusion_table_checks() {
    assert!(output(&["fusion-table", "--p", "5", "--check"]).ends_with("OK\n"));
    assert!(output(&["fusion-table", "--taft-n", "4", "--check"]).ends_with("OK\n"));
    let text = output(&["fusion-table", "--p", "2", "--m", "2", "--check"]);
    assert!(text.contains("mismatches: "), "{text}");
    assert!(!text.ends_with("OK\n"));
    let tsv = output(&["--tsv", "fusion-table", "--p", "3"]);
    assert_eq!(tsv, "i\\j\t0\t1\n0\t0\t1\n1\t1\t0\n");
}

#[test]
fn validate_reports_violations() {
    let (outcome, text) = invoke(&["validate", &fixture("bad_x.json")]);
    assert_eq!(outcome, Outcome::Invalid);
    assert!(text.starts_with("invalid: "));
    assert_eq!(exit_status(&["validate", &fixture("bad_x.json")]), 2);
    assert_eq!(
        output(&["validate", &fixture("dg_t_acyclic.json")]),
        "valid smash module\n"
    );
}

#[test]
fn dg2_check_on_acyclic_fixture() {
    let text = output(&["dg2-check", &fixture("dg_t_acyclic.json")]);
    assert_eq!(
        text,
        "rank d: 1\ndim ker d: 1\ndim im d: 1\nhomotopy trivial: no\nderived trivial: yes\n"
    );
}

#[test]
fn field_check_flag() {
    assert_eq!(output(&["--field-check"]), "field check: OK\n");
}

#[test]
fn golden_output_is_deterministic() {
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            Proc::new(env!("CARGO_BIN_EXE_hopfolog"))
                .args(["--golden", "fusion-table", "--taft-n", "5", "--check"])
                .output()
                .unwrap()
        })
        .map(|o| {
            assert!(o.status.success());
            assert!(o.stderr.is_empty());
            o.stdout
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    let a = output(&["shift", &fixture("v1_p3.json")]);
    assert_eq!(a, output(&["shift", &fixture("v1_p3.json")]));
}

#[test]
fn exit_codes() {
    assert_eq!(exit_status(&["fusion-table", "--p", "5"]), 0);
    assert_eq!(exit_status(&["no-such-verb"]), 1);
    assert_eq!(exit_status(&["fusion-table", "--p", "4"]), 1);
    assert_eq!(exit_status(&["fusion-table", "--p", "3", "--taft-n", "3"]), 1);
    assert_eq!(exit_status(&["groth", &fixture("missing.json")]), 2);
    assert_eq!(
        exit_status(&["stable-hom", &fixture("v1_p3.json"), &fixture("dg_t_acyclic.json")]),
        2
    );
}

#[test]
fn constructed_outputs_revalidate() {
    let v1 = fixture("v1_p3.json");
    for (args, name) in [
        (vec!["tensor", v1.as_str(), v1.as_str()], "t.json"),
        (vec!["shift", v1.as_str()], "s.json"),
        (vec!["shift", "--inverse", v1.as_str()], "si.json"),
    ] {
        let out = scratch(name);
        let mut full = args.clone();
        full.extend(["--out", out.to_str().unwrap()]);
        invoke(&full);
        assert_eq!(
            output(&["validate", out.to_str().unwrap()]),
            "valid module\n",
            "{args:?}"
        );
    }
    // T′T(V_1) is V_1 again up to projectives
    let once = scratch("s.json");
    let back = scratch("back.json");
    invoke(&[
        "shift",
        "--inverse",
        once.to_str().unwrap(),
        "--out",
        back.to_str().unwrap(),
    ]);
    let text = output(&["decompose", back.to_str().unwrap()]);
    assert!(text.starts_with("stable:\n  V_1{0} x1\n"), "{text}");
}

#[test]
fn smash_round_trip_and_ore_commands() {
    let fam = HopfFamily::truncated(2, 1, false).unwrap();
    let b = Arc::new(DerivationAlgebra::truncated_polynomial(&fam, 2, 0).unwrap());
    let reg = SmashModule::regular_b(&b).unwrap();
    let v = GradedModule::indecomposable(&fam, 0, Degree::ZERO).unwrap();
    let m = SmashModule::tensor_left(&v, &reg).unwrap();
    let id = scratch("smash_id.json");
    std::fs::write(&id, MapFile::of_smash(&SmashHom::identity(&m)).to_json()).unwrap();
    let zero = scratch("smash_zero.json");
    std::fs::write(&zero, MapFile::of_smash(&SmashHom::zero(&m, &m)).to_json()).unwrap();
    let ids = id.to_str().unwrap();

    assert!(output(&["quasi-iso", ids]).starts_with("quasi-iso: yes\n"));
    let c = scratch("pb.json");
    let text = output(&[
        "ore-pullback",
        ids,
        zero.to_str().unwrap(),
        "--out",
        c.to_str().unwrap(),
    ]);
    assert_eq!(text, "h_Z quasi-iso: yes\nsquare commutes up to homotopy: yes\n");
    assert_eq!(output(&["validate", c.to_str().unwrap()]), "valid smash module\n");
    let t = scratch("kill.json");
    let text = output(&["ore-kill", zero.to_str().unwrap(), ids, "--out", t.to_str().unwrap()]);
    assert_eq!(text, "t quasi-iso: yes\nf∘t null-homotopic: yes\n");
    assert!(output(&["quasi-iso", t.to_str().unwrap()]).starts_with("quasi-iso: yes\n"));
    let cone = scratch("smash_cone.json");
    let text = output(&["cone", ids, "--out", cone.to_str().unwrap()]);
    assert_eq!(text, "homotopy trivial: yes\nstably trivial: yes\n");
    assert_eq!(output(&["validate", cone.to_str().unwrap()]), "valid smash module\n");
}

#[test]
fn triangle_complete_on_identity_pair() {
    let id = fixture("id_v1_p3.json");
    let out = scratch("h.json");
    let text = output(&["triangle-complete", &id, &id, &id, &id, "--out", out.to_str().unwrap()]);
    assert!(text.starts_with("left square: yes\n"), "{text}");
    assert!(text.contains("right square (up to homotopy): yes\n"));
    assert!(MapFile::read(&out).unwrap().plain().is_ok());
}
