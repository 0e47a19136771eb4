use msle_core::dataset::{bundled_text, load_bundled};
use msle_core::model::Iri;
use msle_core::skos::{definition_of, find_by_label, labels_of, LabelKind, MatchMode};
use msle_core::vocab::MSLE_NS;

fn msle(local: &str) -> Iri {
    Iri::new(format!("{MSLE_NS}{local}")).unwrap()
}

#[test]
fn sem_labels_in_two_languages() {
    let ds = load_bundled().unwrap();
    let sem = msle("Scanning_Electron_Microscope");
    let de = labels_of(&ds.data, &sem, Some("de"));
    assert_eq!(de.len(), 1);
    assert_eq!((de[0].kind, de[0].text.as_str()), (LabelKind::Alt, "Rasterelektronenmikroskop"));
    let all = labels_of(&ds.data, &sem, None);
    assert_eq!(all[0].kind, LabelKind::Pref);
    assert!(all.iter().any(|e| e.kind == LabelKind::Alt && e.text == "SEM"));
    assert_eq!(find_by_label(&ds.data, "SEM", MatchMode::Exact), [sem]);
}

#[test]
fn hidden_label_finds_the_detector() {
    let ds = load_bundled().unwrap();
    let hits = find_by_label(&ds.data, "4wbsd", MatchMode::Exact);
    assert_eq!(hits, [msle("4QBSD_Detector")]);
    let labels = labels_of(&ds.data, &hits[0], None);
    assert_eq!(labels.last().unwrap().kind, LabelKind::Hidden);
}

#[test]
fn microscope_substring_covers_the_taxonomy() {
    let ds = load_bundled().unwrap();
    let hits = find_by_label(&ds.data, "microscope", MatchMode::Substring);
    let want: Vec<Iri> = [
        "Dual_Beam",
        "Electron_Microscope",
        "Focused_Ion_Beam",
        "Scanning_Electron_Microscope",
        "Single_Beam",
        "Single_Beam_Electron_Microscope",
        "Transmission_Electron_Microscope",
    ]
    .map(msle)
    .into();
    assert_eq!(hits, want);
    assert!(find_by_label(&ds.data, "zzz", MatchMode::Exact).is_empty());
}

#[test]
fn definitions_match_the_data_files() {
    let ds = load_bundled().unwrap();
    let em = definition_of(&ds.data, &msle("Electron_Microscope"), None).unwrap();
    assert_eq!(
        em,
        "An electron microscope is a microscope that uses a beam of accelerated electrons as a source of illumination for analyzing materials."
    );
    let sem = definition_of(&ds.data, &msle("Scanning_Electron_Microscope"), None).unwrap();
    assert!(bundled_text("msle-schema.ttl").unwrap().contains(&format!("\"{sem}\"@en")));
    assert_eq!(definition_of(&ds.data, &msle("Zeiss_Auriga_60"), None), None);
}

#[test]
fn alignment_reaches_ssn_and_matvoc_under_inference() {
    let ds = load_bundled().unwrap();
    let q = msle_core::query::parse_query_with(
        "SELECT ?c WHERE { MSLE:Zeiss_Auriga_60 a ?c }",
        &ds.suite.prefixes,
    )
    .unwrap();
    let rs = msle_core::evaluate(&ds.data, &q, msle_core::Inference::Rdfs).unwrap();
    let types: Vec<String> = rs.rows.iter().map(|r| r.0[0].to_string()).collect();
    for t in ["<http://www.w3.org/ns/sosa/Sensor>", "<http://stream-ontology.com/matvoc/Observer>"] {
        assert!(types.iter().any(|x| x == t), "{t} missing from {types:?}");
    }
}

#[test]
fn every_case_but_the_negative_one_has_answers() {
    let ds = load_bundled().unwrap();
    let report = msle_core::maturity::run_cq_suite(&ds.data, &ds.suite);
    assert_eq!(report.passed, report.total);
    for case in &ds.suite.cases {
        assert_eq!(case.expected.is_empty(), case.negative, "{}", case.id);
    }
}
