//! Behavior of the `req2uml` binary: outputs, exit codes, diagnostics.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn workspace() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn req2uml(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_req2uml"))
        .args(args)
        .current_dir(workspace())
        .env_remove("REQ2UML_RESOURCES")
        .output()
        .expect("binary runs")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

#[test]
fn run_writes_three_outputs_per_input() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("exemple.txt");
    std::fs::write(&input, "Le client passe une commande.\n").unwrap();
    let out_dir = tmp.path().join("out");

    let output = req2uml(&[
        "run",
        "--resources",
        "resources",
        "--out",
        out_dir.to_str().unwrap(),
        input.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));

    let model = std::fs::read_to_string(out_dir.join("exemple.model.xml")).unwrap();
    assert_eq!(
        model,
        "<model><class name=\"client\"/><class name=\"commande\"/>\
         <association name=\"passe\" from=\"client\" to=\"commande\"/></model>\n"
    );
    let annotated = std::fs::read_to_string(out_dir.join("exemple.annotated.xml")).unwrap();
    assert!(annotated.starts_with("<doc source=\"exemple.txt\">"));
    let diagram = std::fs::read_to_string(out_dir.join("exemple.puml")).unwrap();
    assert!(diagram.contains("client --> commande : passe"));
}

#[test]
fn mermaid_dialect_writes_mmd_files() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("exemple.txt");
    std::fs::write(&input, "Le client passe une commande.\n").unwrap();
    let out_dir = tmp.path().join("out");
    let output = req2uml(&[
        "run",
        "--resources",
        "resources",
        "--out",
        out_dir.to_str().unwrap(),
        "--dialect",
        "mermaid",
        input.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let diagram = std::fs::read_to_string(out_dir.join("exemple.mmd")).unwrap();
    assert!(diagram.starts_with("classDiagram\n"));
}

#[test]
fn empty_input_file_produces_valid_trivial_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("vide.txt");
    std::fs::write(&input, "").unwrap();
    let out_dir = tmp.path().join("out");
    let output = req2uml(&[
        "run",
        "--resources",
        "resources",
        "--out",
        out_dir.to_str().unwrap(),
        input.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    assert_eq!(
        std::fs::read_to_string(out_dir.join("vide.model.xml")).unwrap(),
        "<model/>\n"
    );
    assert_eq!(
        std::fs::read_to_string(out_dir.join("vide.annotated.xml")).unwrap(),
        "<doc source=\"vide.txt\"></doc>\n"
    );
}

#[test]
fn rule_syntax_error_exits_2_naming_file_and_line() {
    let tmp = tempfile::tempdir().unwrap();
    let res = tmp.path();
    std::fs::create_dir_all(res.join("rules")).unwrap();
    std::fs::create_dir_all(res.join("gazetteer")).unwrap();
    std::fs::write(res.join("lexicon.tsv"), "#default\tNN\n").unwrap();
    std::fs::write(res.join("determiners.txt"), "le\n").unwrap();
    std::fs::write(res.join("gazetteer/lists.def"), "c.lst\tClass\tall\n").unwrap();
    std::fs::write(res.join("gazetteer/c.lst"), "client\n").unwrap();
    std::fs::write(res.join("rules/phases.def"), "bad.jape\n").unwrap();
    std::fs::write(
        res.join("rules/bad.jape"),
        "Phase:P\nInput: Token\nRule: R\n({Token}):l\n:l.X={}\n",
    )
    .unwrap();

    let input = tmp.path().join("in.txt");
    std::fs::write(&input, "texte").unwrap();
    let output = req2uml(&[
        "run",
        "--resources",
        res.to_str().unwrap(),
        "--out",
        tmp.path().join("out").to_str().unwrap(),
        input.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = stderr_of(&output);
    assert!(stderr.contains("bad.jape"), "{stderr}");
    assert!(stderr.contains("line 5"), "{stderr}");
}

#[test]
fn missing_resources_exits_1() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("in.txt");
    std::fs::write(&input, "texte").unwrap();
    let output = req2uml(&[
        "run",
        "--resources",
        "/definitely/not/here",
        "--out",
        tmp.path().join("out").to_str().unwrap(),
        input.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn missing_input_exits_1() {
    let tmp = tempfile::tempdir().unwrap();
    let output = req2uml(&[
        "run",
        "--resources",
        "resources",
        "--out",
        tmp.path().join("out").to_str().unwrap(),
        "/no/such/input.txt",
    ]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn resources_fall_back_to_the_environment_variable() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("exemple.txt");
    std::fs::write(&input, "Le client passe une commande.\n").unwrap();
    let out_dir = tmp.path().join("out");
    let output = Command::new(env!("CARGO_BIN_EXE_req2uml"))
        .args([
            "run",
            "--out",
            out_dir.to_str().unwrap(),
            input.to_str().unwrap(),
        ])
        .current_dir(workspace())
        .env("REQ2UML_RESOURCES", "resources")
        .output()
        .expect("binary runs");
    assert!(output.status.success(), "{}", stderr_of(&output));
    assert!(out_dir.join("exemple.model.xml").is_file());
}

#[test]
fn eval_scores_the_corpus_and_writes_a_report() {
    let tmp = tempfile::tempdir().unwrap();
    let report = tmp.path().join("report.json");
    let output = req2uml(&[
        "eval",
        "--resources",
        "resources",
        "--gold",
        "corpus/gold",
        "--report",
        report.to_str().unwrap(),
        "corpus",
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let stdout = String::from_utf8_lossy(&output.stdout).into_owned();
    assert!(stdout.contains("classe"), "{stdout}");
    assert!(stdout.contains("micro"), "{stdout}");
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["evaluated"], 9);
    assert_eq!(json["per_type"]["classe"]["fp"], 0);
}

#[test]
fn eval_skips_inputs_without_gold() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("sans_or.txt");
    std::fs::write(&input, "Le client passe une commande.\n").unwrap();
    let report = tmp.path().join("report.json");
    let output = req2uml(&[
        "eval",
        "--resources",
        "resources",
        "--gold",
        "corpus/gold",
        "--report",
        report.to_str().unwrap(),
        input.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", stderr_of(&output));
    let stderr = stderr_of(&output);
    assert!(stderr.contains("skipped"), "{stderr}");
}

#[test]
fn check_rules_accepts_the_shipped_assets() {
    for asset in [
        "resources/rules/identif_classe.jape",
        "resources/rules/identif_association.jape",
        "resources/rules/identif_attribut.jape",
    ] {
        let output = req2uml(&["check-rules", asset]);
        assert!(output.status.success(), "{asset}: {}", stderr_of(&output));
        let stdout = String::from_utf8_lossy(&output.stdout).into_owned();
        assert!(stdout.contains("control appelt"), "{stdout}");
    }
}

#[test]
fn check_rules_rejects_broken_files_with_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let file = tmp.path().join("broken.jape");
    std::fs::write(
        &file,
        "Phase:P\nInput: Token\nRule: R\n({Token):l\n-->\n:l.X={}\n",
    )
    .unwrap();
    let output = req2uml(&["check-rules", file.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = stderr_of(&output);
    assert!(stderr.contains("line 4"), "{stderr}");
}

/// Scoring the pipeline against gold files generated from its own output
/// yields 1.0 everywhere.
#[test]
fn eval_of_system_as_gold_is_perfect() {
    let tmp = tempfile::tempdir().unwrap();
    let gold_dir = tmp.path().join("gold");
    std::fs::create_dir_all(&gold_dir).unwrap();

    let resources =
        req2uml_cli::runner::load_resources(&workspace().join("resources"), None).unwrap();
    let mut inputs = Vec::new();
    for entry in std::fs::read_dir(workspace().join("corpus")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "txt") {
            let text = std::fs::read_to_string(&path).unwrap();
            let (doc, _) = req2uml_core::process(&text, &resources);
            let mut gold = String::new();
            for ty in req2uml_core::types::UML_TYPES {
                for ann in doc.annotations_of(ty) {
                    gold.push_str(&format!("{ty}\t{}\t{}\n", ann.span.start, ann.span.end));
                }
            }
            let stem = path.file_stem().unwrap().to_string_lossy().into_owned();
            std::fs::write(gold_dir.join(format!("{stem}.gold.tsv")), gold).unwrap();
            inputs.push(path);
        }
    }
    let report = req2uml_cli::runner::evaluate(&resources, &inputs, &gold_dir).unwrap();
    for (ty, counts) in &report.per_type {
        assert_eq!(
            (counts.precision, counts.recall, counts.f1),
            (1.0, 1.0, 1.0),
            "type {ty}"
        );
    }
}
