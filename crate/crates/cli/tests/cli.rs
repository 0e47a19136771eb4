use std::path::PathBuf;
use std::process::{Command, Output};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data")
}

fn data(name: &str) -> String {
    data_dir().join(name).display().to_string()
}

fn msle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_msle"))
        .args(args)
        .env_remove("MSLE_DATA_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn query_high_tension_table() {
    let dir = tempfile::tempdir().unwrap();
    let rq = dir.path().join("row2.rq");
    std::fs::write(&rq, "SELECT ?High_Tension WHERE { MSLE:Zeiss_Auriga_60 MSLE:hasHighTension ?High_Tension}").unwrap();
    let o = msle(&["query", rq.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "?High_Tension\n-------------\n30\n(1 row)\n");
}

#[test]
fn query_json_and_inference() {
    let q = "SELECT ?SingleBeamEM WHERE { ?SingleBeamEM rdfs:subClassOf MSLE:Single_Beam}";
    let plain = json(&msle(&["query", "-e", q, "--format", "json"]));
    assert_eq!(plain["rows"].as_array().unwrap().len(), 1);
    let inferred = json(&msle(&["query", "-e", q, "--format", "json", "--infer", "rdfs"]));
    assert_eq!(inferred["variables"], serde_json::json!(["SingleBeamEM"]));
    assert_eq!(inferred["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn query_empty_result_and_errors() {
    let o = msle(&["query", "-e", "SELECT ?x WHERE { ?x a MSLE:Nothing }"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "?x\n--\n(0 rows)\n");

    let o = msle(&["query", "-e", "SELECT ?x WHERE { ?x a "]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 1, column"), "{}", stderr(&o));

    let o = msle(&["query", "/no/such/file.rq"]);
    assert_eq!(code(&o), 2);

    let o = msle(&["query"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn validate_high_tension_fixture_fails() {
    let o = msle(&["validate", "--data", &data("fixtures/high-tension-data.ttl"), "--shapes", &data("msle-shapes.ttl")]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.contains("The high tension for the dual beam needs to be in the proper range."));
    assert!(out.starts_with("conforms: false\nresults: 3\n"), "{out}");

    let o = msle(&["validate", "--data", &data("fixtures/high-tension-data.ttl"), "--format", "json"]);
    let report = json(&o);
    assert_eq!(report["conforms"], false);
    assert_eq!(report["results"].as_array().unwrap().len(), 3);
}

#[test]
fn validate_bundled_and_missing_shapes() {
    let o = msle(&["validate"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = msle(&["validate", "--shapes", "/no/such/shapes.ttl"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("/no/such/shapes.ttl"));
}

#[test]
fn multiple_data_files_merge() {
    let o = msle(&[
        "validate",
        "--data",
        &data("msle-schema.ttl"),
        "--data",
        &data("msle-instances.ttl"),
        "--data",
        &data("fixtures/high-tension-data.ttl"),
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("[MaxCount]"));
}

#[test]
fn cq_bundled_suite_passes() {
    let o = msle(&["cq"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).ends_with("passed 14/14 (100%)\n"), "{}", stdout(&o));
    let report = json(&msle(&["cq", "--format", "json"]));
    assert_eq!(report["passed"], 14);
}

#[test]
fn cq_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let suite = dir.path().join("suite.json");
    std::fs::write(
        &suite,
        r#"{"prefixes": {"MSLE": "http://www.semanticweb.org/hr7456/ontologies/2021/8/MSLE#"},
            "cases": [{"id": "ghost", "question": "?", "query": "SELECT ?x WHERE { ?x a MSLE:Dual_Beam }",
                       "expected": [{"x": "<http://example.org/Ghost>"}]}]}"#,
    )
    .unwrap();
    let o = msle(&["cq", "--suite", suite.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL ghost"));
    assert!(stdout(&o).contains("passed 0/1 (0%)"));

    std::fs::write(&suite, "{ not json").unwrap();
    assert_eq!(code(&msle(&["cq", "--suite", suite.to_str().unwrap()])), 2);
}

#[test]
fn completeness_text_and_json() {
    let o = msle(&["completeness"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("Zeiss Auriga 60 detectors: 4 of 4, 1 = 1.000"), "{}", stdout(&o));

    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("rw.json");
    std::fs::write(
        &spec,
        r#"[{"label": "five", "count_query": "SELECT ?d WHERE { MSLE:Zeiss_Auriga_60 MSLE:hasDetector ?d }", "actual": 5},
            {"label": "broken", "count_query": "SELECT", "actual": 2}]"#,
    )
    .unwrap();
    let o = msle(&["completeness", "--realworld", spec.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["realworld_completeness"]["five"]["score"]["numerator"], 4);
    assert_eq!(v["realworld_completeness"]["five"]["score"]["denominator"], 5);
    assert!(v["realworld_completeness"]["broken"]["error"].is_string());
}

#[test]
fn label_lookup() {
    let o = msle(&["label", "SEM"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("MSLE:Scanning_Electron_Microscope\n"), "{out}");
    assert!(out.contains("\"Rasterelektronenmikroskop\"@de"));
    assert!(out.contains("\"Scanning Electron Microscope\"@en"));

    let o = msle(&["label", "4wbsd"]);
    assert!(stdout(&o).contains("MSLE:4QBSD_Detector"));
    assert!(!stdout(&o).contains("4WBSD"), "hidden labels are not displayed");

    let o = msle(&["label", "MSLE:Scanning_Electron_Microscope", "--lang", "de", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v[0]["labels"].as_array().unwrap().len(), 1);

    assert_eq!(code(&msle(&["label", "zzz"])), 1);
    let o = msle(&["label", "microscope", "--substring"]);
    assert_eq!(stdout(&o).lines().filter(|l| !l.starts_with(' ')).count(), 7);
}

#[test]
fn describe_shows_images_and_restrictions() {
    let dir = tempfile::tempdir().unwrap();
    let extra = dir.path().join("image.ttl");
    std::fs::write(
        &extra,
        "@prefix MSLE: <http://www.semanticweb.org/hr7456/ontologies/2021/8/MSLE#> .\n\
         @prefix schema: <http://schema.org/> .\n\
         MSLE:Scanning_Electron_Microscope schema:image <http://example.org/sem.png> .",
    )
    .unwrap();
    let o = msle(&["describe", "--data", &data("msle-schema.ttl"), "--data", extra.to_str().unwrap(), "MSLE:Scanning_Electron_Microscope"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("image: <http://example.org/sem.png>"), "{out}");
    assert!(out.contains("definition: A scanning electron microscope (SEM)"));

    let o = msle(&["describe", "Zeiss_Auriga_60", "--format", "json"]);
    let v = json(&o);
    assert!(v["statements"].as_array().unwrap().len() >= 10);
    let text = stdout(&msle(&["describe", "Zeiss_Auriga_60"]));
    assert!(text.contains("a [ a owl:Restriction ; owl:onProperty MSLE:hasDetector ; owl:someValuesFrom MSLE:STEM_Detector ]"));

    assert_eq!(code(&msle(&["describe", "MSLE:Unknown_Thing"])), 1);
    assert_eq!(code(&msle(&["describe", "nope:x"])), 2);
}

#[test]
fn fmt_is_idempotent_on_bundled_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["msle-schema.ttl", "msle-instances.ttl", "msle-alignment.ttl", "msle-shapes.ttl", "fixtures/high-tension-data.ttl"] {
        let once = msle(&["fmt", &data(name)]);
        assert_eq!(code(&once), 0, "{name}");
        let path = dir.path().join("once.ttl");
        std::fs::write(&path, &once.stdout).unwrap();
        let twice = msle(&["fmt", path.to_str().unwrap()]);
        assert_eq!(stdout(&twice), stdout(&once), "{name}");
        assert_eq!(code(&msle(&["fmt", "--check", path.to_str().unwrap()])), 0);
    }
    assert_eq!(code(&msle(&["fmt", "--check", &data("msle-instances.ttl")])), 1);

    let bad = dir.path().join("bad.ttl");
    std::fs::write(&bad, "@prefix : <http://e/> .\n:a :b").unwrap();
    let o = msle(&["fmt", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn data_dir_override() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["manifest.json", "msle-schema.ttl", "msle-instances.ttl", "msle-alignment.ttl", "msle-shapes.ttl", "msle-cq.json", "msle-realworld.json"] {
        std::fs::copy(data_dir().join(name), dir.path().join(name)).unwrap();
    }
    let instances = std::fs::read_to_string(dir.path().join("msle-instances.ttl")).unwrap();
    std::fs::write(dir.path().join("msle-instances.ttl"), instances.replace("hasHighTension 30", "hasHighTension 31")).unwrap();
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_msle"))
            .args(args)
            .env("MSLE_DATA_DIR", dir.path())
            .output()
            .unwrap()
    };
    let o = run(&["validate"]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    assert!(stdout(&o).contains("= 31"));

    std::fs::remove_file(dir.path().join("msle-cq.json")).unwrap();
    let o = run(&["cq"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("msle-cq.json"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&msle(&["frobnicate"])), 2);
    assert_eq!(code(&msle(&["query", "-e", "SELECT * WHERE { ?s ?p ?o }", "--infer", "owl"])), 2);
}
