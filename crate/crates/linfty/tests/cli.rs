use linfty::cli::{run, Output, CLASSIFY_NOT_HOMOGENEOUS, MISMATCH, NOT_CODIFFERENTIAL, NOT_HOMOGENEOUS, OK, USAGE};
use linfty::files::StructureFile;
use linfty_core::{families, format_cochain, LInfinityStructure};
use serde_json::Value;

fn linfty(args: &[&str]) -> Output {
    run(std::iter::once("linfty").chain(args.iter().copied()))
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

fn write_structure(dir: &tempfile::TempDir, name: &str, d: &LInfinityStructure) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, StructureFile::render(d)).unwrap();
    path.display().to_string()
}

/// `(degree, h)` pairs from `cohomology --json`.
fn dims(out: &Output) -> Vec<(u64, String)> {
    json(out)["degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| (d["degree"].as_u64().unwrap(), format!("{}|{}", d["h"][0], d["h"][1])))
        .collect()
}

#[test]
fn self_bracket() {
    let out = linfty(&["bracket", "psi[1,0,0]_3 + psi[0,0,1]_1"]);
    assert_eq!(out.code, OK, "{}", out.stderr);
    assert_eq!(out.stdout, "2*phi[1,0,0]_1 + 2*phi[0,0,1]_3\n");

    let both = linfty(&["bracket", "psi[1,0,0]_3 + psi[0,0,1]_1", "psi[1,0,0]_3 + psi[0,0,1]_1", "--json"]);
    assert_eq!(json(&both)["bracket"], "2*phi[1,0,0]_1 + 2*phi[0,0,1]_3");
}

#[test]
fn bracket_with_zero() {
    let out = linfty(&["bracket", "psi[1,1,0]_1", "0"]);
    assert_eq!((out.code, out.stdout.as_str()), (OK, "0\n"));
}

#[test]
fn bracket_errors() {
    assert_eq!(linfty(&["bracket", "psi[1,0]_3"]).code, USAGE);
    assert_eq!(linfty(&["bracket", "psi[1,0,0]_3 +"]).code, USAGE);
    assert_eq!(linfty(&["bracket", "psi[1,0,0]_4"]).code, USAGE);
    // mixed degrees and mixed parities
    assert_eq!(linfty(&["bracket", "psi[1,0,0]_3 + psi[1,1,0]_1"]).code, NOT_HOMOGENEOUS);
    assert_eq!(linfty(&["bracket", "psi[1,0,0]_3 + phi[1,0,0]_1"]).code, NOT_HOMOGENEOUS);
    let out = linfty(&["bracket"]);
    assert_eq!(out.code, USAGE);
    assert!(!out.stderr.is_empty());
}

#[test]
fn classify_examples() {
    let out = linfty(&["classify", "psi[0,1,2]_3 + psi[0,0,3]_1 - 3*psi[1,1,1]_1", "--json"]);
    assert_eq!(out.code, OK, "{}", out.stderr);
    let v = json(&out);
    assert_eq!((v["family"].as_str(), v["degree"].as_u64()), (Some("d_sharp"), Some(3)));
    assert!(v.get("lambda").is_none());

    let v = json(&linfty(&["classify", "psi[0,0,1]_1", "--json"]));
    assert_eq!(v["family"], "deg1_d_star");

    let v = json(&linfty(&["classify", "7*psi[1,1,1]_1", "--json"]));
    assert_eq!((v["family"].as_str(), v["degree"].as_u64()), (Some("d_infinity"), Some(3)));
    // the witness scales one generator by 1/7 or 7
    let w: Vec<Vec<String>> = serde_json::from_value(v["witness"].clone()).unwrap();
    assert!(w.iter().flatten().any(|x| x == "7" || x == "1/7"), "{w:?}");

    let v = json(&linfty(&["classify", "psi[0,1,1]_3 + 1/2*psi[1,1,0]_1", "--json"]));
    assert_eq!((v["family"].as_str(), v["lambda"].as_str()), (Some("d_lambda"), Some("1/2")));

    let text = linfty(&["classify", "--family", "d_star", "--m", "2"]);
    assert_eq!(text.code, OK);
    assert!(text.stdout.starts_with("family: d_star\ndegree: 4\n"), "{}", text.stdout);
}

#[test]
fn classify_errors() {
    let dir = tempfile::tempdir().unwrap();
    let mixed = write_structure(&dir, "mixed.json", &families::build_d_lambda_e(0, 1, 3).unwrap());
    assert_eq!(linfty(&["classify", &mixed]).code, CLASSIFY_NOT_HOMOGENEOUS);
    // ψ^{100}_3 + ψ^{001}_1 squares to a nonzero element
    let out = linfty(&["classify", "psi[1,0,0]_3 + psi[0,0,1]_1"]);
    assert_eq!(out.code, NOT_CODIFFERENTIAL);
    assert!(out.stderr.contains("phi"), "{}", out.stderr);
    assert_eq!(linfty(&["classify", "--family", "d_lambda", "--m", "1"]).code, USAGE);
    assert_eq!(linfty(&["classify", "--family", "d_nothing", "--m", "1"]).code, USAGE);
}

#[test]
fn check_reports_witness() {
    let out = linfty(&["check", "psi[1,0,0]_3 + psi[0,0,1]_1", "--json"]);
    assert_eq!(out.code, NOT_CODIFFERENTIAL);
    let v = json(&out);
    assert_eq!(v["square_zero"], false);
    assert_eq!(v["witness"]["degree"], 1);
    assert_eq!(v["witness"]["component"], "2*phi[1,0,0]_1 + 2*phi[0,0,1]_3");

    let out = linfty(&["check", "--family", "d_infinity_e", "--m", "1", "--n", "3", "--a", "2"]);
    assert_eq!((out.code, out.stdout.as_str()), (OK, "square-zero\n"));
}

#[test]
fn cohomology_of_d_infinity() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_structure(&dir, "d_inf.json", &families::d_infinity(1, 3));
    let out = linfty(&["cohomology", &file, "--max-degree", "7", "--json"]);
    assert_eq!(out.code, OK, "{}", out.stderr);
    let mut expected = vec![(1, "3|1".to_string()), (2, "4|3".to_string())];
    expected.extend((3..=7).map(|k| (k, "1|1".to_string())));
    assert_eq!(dims(&out), expected);

    let text = linfty(&["cohomology", &file, "--max-degree", "7"]);
    assert!(text.stdout.starts_with("degree  z       b       h       representatives\n1       3|1"), "{}", text.stdout);
}

#[test]
fn cohomology_of_d_sharp() {
    let out = linfty(&["cohomology", "--family", "d_sharp", "--m", "1", "--json"]);
    assert_eq!(out.code, OK, "{}", out.stderr);
    let d = dims(&out);
    assert!(d.len() >= 6);
    for (k, h) in &d {
        if *k >= 3 {
            assert_eq!(h, "0|0", "degree {k}");
        }
    }
    assert_eq!(d[0], (1, "2|1".to_string()));
}

#[test]
fn cohomology_rejects_zero_and_non_codifferentials() {
    let dir = tempfile::tempdir().unwrap();
    let zero = write_structure(&dir, "zero.json", &LInfinityStructure::new(linfty_core::GradedSpace::one_two(), 3));
    let out = linfty(&["cohomology", &zero]);
    assert_eq!(out.code, NOT_CODIFFERENTIAL);
    assert!(out.stdout.is_empty());

    let out = linfty(&["cohomology", "psi[1,0,0]_3 + psi[0,0,1]_1"]);
    assert_eq!(out.code, NOT_CODIFFERENTIAL);
    assert!(out.stderr.contains("[d,d] in degree 1"), "{}", out.stderr);
}

#[test]
fn structure_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for d in [
        families::d_sharp(2, 4),
        families::build_d_lambda_e(1, 2, 6).unwrap(),
        families::build_d_infty_ext(0, 2, &linfty_core::rational::frac(-3, 2), 5).unwrap(),
    ] {
        let text = StructureFile::render(&d);
        assert_eq!(StructureFile::parse(&text).unwrap(), d);
        let path = write_structure(&dir, "s.json", &d);
        let out = linfty(&["check", &path, "--json"]);
        assert_eq!(out.code, OK, "{}", out.stderr);
        let echoed: StructureFile = serde_json::from_value(json(&out)["structure"].clone()).unwrap();
        assert_eq!(echoed.to_structure().unwrap(), d);
    }
    assert_eq!(format_cochain(families::d_sharp(2, 4).leading_term().unwrap()), "-4*psi[1,1,2]_1 + psi[0,1,3]_3 + psi[0,0,4]_1");
}

#[test]
fn malformed_structure_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    for text in [
        "{",
        r#"{"dims":[1,2],"components":[{"degree":2,"terms":[{"index":[1,1,0],"target":0,"coeff":"1"}]}],"truncation":2}"#,
        r#"{"dims":[1,2],"components":[{"degree":3,"terms":[{"index":[1,1,0],"target":1,"coeff":"1"}]}],"truncation":3}"#,
        r#"{"dims":[1,2],"components":[{"degree":2,"terms":[{"index":[1,1,0],"target":1,"coeff":"1/0"}]}],"truncation":2}"#,
    ] {
        std::fs::write(&path, text).unwrap();
        assert_eq!(linfty(&["check", path.to_str().unwrap()]).code, USAGE, "{text}");
    }
}

#[test]
fn extend_prints_standard_form() {
    let out = linfty(&["extend", "--family", "d_lambda_e", "--m", "0", "--n", "1", "--json"]);
    assert_eq!(out.code, OK, "{}", out.stderr);
    let v = json(&out);
    assert_eq!(v["secondary"]["degree"], 3);
    assert_eq!(v["irremovable"].as_array().unwrap().len(), 0);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["cohomology", "--family", "d_star", "--m", "1", "--json"][..],
        &["classify", "psi[0,1,3]_3 - 5*psi[1,1,2]_1"][..],
        &["extend", "--family", "d_infinity_e", "--m", "0", "--n", "1", "--a", "1"][..],
    ] {
        let a = linfty(args);
        let b = linfty(args);
        assert_eq!(a.code, OK, "{args:?}: {}", a.stderr);
        assert_eq!((a.stdout, a.stderr), (b.stdout, b.stderr));
    }
}

#[test]
fn reproduce_tables() {
    let out = linfty(&["reproduce", "d-sharp-h1"]);
    assert_eq!(out.code, OK, "{}", out.stdout);
    assert!(out.stdout.contains("[paper-typo-candidate]"));

    assert_eq!(linfty(&["reproduce", "no-such-table"]).code, USAGE);
}

#[test]
fn reproduce_from_a_golden_dir() {
    let dir = tempfile::tempdir().unwrap();
    let mut table = linfty::golden::load("degree-one", None).unwrap();
    let out = linfty(&["reproduce", "degree-one", "--golden-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.code, USAGE, "the file is missing");

    std::fs::write(dir.path().join("degree-one.json"), serde_json::to_string(&table).unwrap()).unwrap();
    let out = linfty(&["reproduce", "degree-one", "--golden-dir", dir.path().to_str().unwrap(), "--json"]);
    assert_eq!(out.code, OK);
    assert_eq!(json(&out)[0]["table"], "degree-one");

    // a doctored expectation becomes a mismatch
    let text = serde_json::to_string(&table).unwrap().replacen("1|0", "2|0", 1);
    table = serde_json::from_str(&text).unwrap();
    std::fs::write(dir.path().join("degree-one.json"), serde_json::to_string(&table).unwrap()).unwrap();
    let out = linfty(&["reproduce", "degree-one", "--golden-dir", dir.path().to_str().unwrap()]);
    assert_eq!(out.code, MISMATCH, "{}", out.stdout);
    assert!(out.stdout.contains("MISMATCH"));
}
