use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::path::{Path, PathBuf};

use msle_core::dataset::{self, Dataset};
use msle_core::maturity::{constraint_completeness, realworld_completeness, run_cq_suite, CqSuite, RealWorldSpec, Score};
use msle_core::model::{Graph, Iri, Term};
use msle_core::query::parse_query_with;
use msle_core::shacl::{parse_shapes, validate_with, ShapeSet};
use msle_core::skos::{definition_of, find_by_label, labels_of, LabelKind, MatchMode};
use msle_core::vocab::{schema, skos, MSLE_NS};
use msle_core::{evaluate, parse_turtle, serialize_turtle, Inference};

use crate::render;
use crate::{DataArgs, TableFormat, TextFormat};

pub const DATA_DIR_VAR: &str = "MSLE_DATA_DIR";

#[derive(Debug)]
pub struct Failure(String);

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn fail(message: impl fmt::Display) -> Failure {
    Failure(message.to_string())
}

type Outcome = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| fail(format!("standard input: {e}")))?;
        return Ok(text);
    }
    std::fs::read_to_string(path).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn parse_file(path: &Path) -> Result<Graph, Failure> {
    parse_turtle(&read(path)?).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn bundled() -> Result<Dataset, Failure> {
    match std::env::var_os(DATA_DIR_VAR) {
        Some(dir) => dataset::load_dir(Path::new(&dir)).map_err(|e| fail(format!("{}: {e}", Path::new(&dir).display()))),
        None => dataset::load_bundled().map_err(fail),
    }
}

fn data_graph(args: &DataArgs) -> Result<Graph, Failure> {
    if args.data.is_empty() {
        return Ok(bundled()?.data);
    }
    let mut graph = Graph::new();
    for path in &args.data {
        graph.merge(&parse_file(path)?);
    }
    Ok(graph)
}

fn shape_set(path: Option<PathBuf>) -> Result<ShapeSet, Failure> {
    let set = match path {
        None => bundled()?.shapes,
        Some(path) => parse_shapes(&parse_file(&path)?).map_err(|e| fail(format!("{}: {e}", path.display())))?,
    };
    for w in &set.warnings {
        eprintln!("msle: warning: {w}");
    }
    Ok(set)
}

/// Bundled suite aliases, overridden by the data's own prefixes.
fn prefixes_for(graph: &Graph) -> BTreeMap<String, String> {
    let mut prefixes = dataset::bundled_text("msle-cq.json")
        .and_then(|t| CqSuite::from_json(t).ok())
        .map(|s| s.prefixes)
        .unwrap_or_default();
    prefixes.extend(graph.prefixes().iter().map(|(k, v)| (k.clone(), v.clone())));
    prefixes
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("JSON value serializes"));
}

pub fn query(args: &DataArgs, file: Option<PathBuf>, expr: Option<String>, infer: Inference, format: TableFormat) -> Outcome {
    let (text, origin) = match (expr, file) {
        (Some(text), _) => (text, "query".to_owned()),
        (None, Some(path)) => (read(&path)?, path.display().to_string()),
        (None, None) => return Err(fail("no query given")),
    };
    let graph = data_graph(args)?;
    let prefixes = prefixes_for(&graph);
    let q = parse_query_with(&text, &prefixes).map_err(|e| fail(format!("{origin}: {e}")))?;
    let rs = evaluate(&graph, &q, infer).map_err(fail)?;
    match format {
        TableFormat::Table => print!("{}", render::result_table(&rs, &prefixes)),
        TableFormat::Json => print_json(&render::result_json(&rs)),
    }
    Ok(0)
}

pub fn validate(args: &DataArgs, shapes: Option<PathBuf>, infer: Inference, format: TextFormat) -> Outcome {
    let graph = data_graph(args)?;
    let set = shape_set(shapes)?;
    let report = validate_with(&graph, &set.shapes, infer);
    match format {
        TextFormat::Json => print_json(&report.to_json()),
        TextFormat::Text => {
            let prefixes = prefixes_for(&graph);
            println!("conforms: {}", report.conforms);
            println!("results: {}", report.results.len());
            for r in &report.results {
                let value = r
                    .value
                    .as_ref()
                    .map(|v| format!(" = {}", render::term(v, &prefixes)))
                    .unwrap_or_default();
                println!(
                    "[{}] {} {}{value}: {}",
                    r.component,
                    render::term(&r.focus_node, &prefixes),
                    render::term(&Term::Iri(r.path.clone()), &prefixes),
                    r.message
                );
            }
        }
    }
    Ok(u8::from(!report.conforms))
}

fn load_suite(path: Option<PathBuf>) -> Result<CqSuite, Failure> {
    match path {
        None => Ok(bundled()?.suite),
        Some(path) => CqSuite::from_json(&read(&path)?).map_err(|e| fail(format!("{}: {e}", path.display()))),
    }
}

fn percent(score: &Score) -> String {
    format!("{:.0}%", score.value() * 100.0)
}

pub fn cq(args: &DataArgs, suite: Option<PathBuf>, format: TextFormat) -> Outcome {
    let graph = data_graph(args)?;
    let suite = load_suite(suite)?;
    let report = run_cq_suite(&graph, &suite);
    match format {
        TextFormat::Json => print_json(&serde_json::to_value(&report).expect("report serializes")),
        TextFormat::Text => {
            for case in &report.cases {
                if case.passed {
                    println!("PASS {}", case.id);
                    continue;
                }
                println!("FAIL {}", case.id);
                if let Some(e) = &case.error {
                    println!("  error: {e}");
                }
                for row in &case.missing {
                    println!("  missing: {row:?}");
                }
                for row in &case.unexpected {
                    println!("  unexpected: {row:?}");
                }
            }
            let vacuous = if report.pass_rate.vacuous { ", vacuous" } else { "" };
            println!("passed {}/{} ({}{vacuous})", report.passed, report.total, percent(&report.pass_rate));
        }
    }
    Ok(u8::from(report.passed != report.total))
}

fn score_text(score: &Score) -> String {
    let flag = if score.vacuous { " (vacuous)" } else { "" };
    format!("{} = {:.3}{flag}", score.ratio, score.value())
}

pub fn completeness(args: &DataArgs, shapes: Option<PathBuf>, realworld: Option<PathBuf>, format: TextFormat) -> Outcome {
    let graph = data_graph(args)?;
    let set = shape_set(shapes)?;
    let specs = match realworld {
        None => bundled()?.realworld,
        Some(path) => RealWorldSpec::list_from_json(&read(&path)?).map_err(|e| fail(format!("{}: {e}", path.display())))?,
    };
    let constraint = constraint_completeness(&graph, &set.shapes);
    let real = realworld_completeness(&graph, &specs);
    let erroneous = real.values().any(|e| e.error.is_some());
    match format {
        TextFormat::Json => print_json(&serde_json::json!({
            "constraint_completeness": constraint,
            "realworld_completeness": real,
        })),
        TextFormat::Text => {
            let prefixes = prefixes_for(&graph);
            println!("constraint completeness");
            for (class, c) in &constraint {
                println!(
                    "  {}: {}/{} conforming, {}",
                    render::term(&Term::Iri(class.clone()), &prefixes),
                    c.conforming,
                    c.focus_nodes,
                    score_text(&c.score)
                );
            }
            println!("real-world completeness");
            for (label, e) in &real {
                match (&e.score, &e.error) {
                    (Some(score), _) => println!(
                        "  {label}: {} of {}, {}",
                        e.count.unwrap_or_default(),
                        e.actual,
                        score_text(score)
                    ),
                    (None, error) => println!("  {label}: error: {}", error.as_deref().unwrap_or("unknown")),
                }
            }
        }
    }
    Ok(u8::from(erroneous))
}

/// `<iri>`, `prefix:local` with a known prefix, or `None` for label text.
fn as_concept(text: &str, prefixes: &BTreeMap<String, String>) -> Option<Result<Iri, Failure>> {
    if let Some(inner) = text.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
        return Some(Iri::new(inner).map_err(fail));
    }
    let (label, local) = text.split_once(':')?;
    let ns = prefixes.get(label)?;
    if local.contains(char::is_whitespace) {
        return None;
    }
    Some(Iri::new(format!("{ns}{local}")).map_err(fail))
}

fn visible_labels(graph: &Graph, concept: &Iri, lang: Option<&str>) -> Vec<msle_core::skos::LabelEntry> {
    labels_of(graph, concept, lang)
        .into_iter()
        .filter(|e| e.kind != LabelKind::Hidden)
        .collect()
}

fn label_text(e: &msle_core::skos::LabelEntry) -> String {
    let kind = match e.kind {
        LabelKind::Pref => "pref",
        LabelKind::Alt => "alt",
        LabelKind::Hidden => "hidden",
    };
    match &e.lang {
        Some(lang) => format!("{kind:<5} {:?}@{lang}", e.text),
        None => format!("{kind:<5} {:?}", e.text),
    }
}

pub fn label(args: &DataArgs, text: &str, lang: Option<&str>, substring: bool, format: TextFormat) -> Outcome {
    let graph = data_graph(args)?;
    let prefixes = prefixes_for(&graph);
    let concepts = match as_concept(text, &prefixes) {
        Some(iri) => vec![iri?],
        None => {
            let mode = if substring { MatchMode::Substring } else { MatchMode::Exact };
            find_by_label(&graph, text, mode)
        }
    };
    let found: Vec<(Iri, Vec<msle_core::skos::LabelEntry>)> = concepts
        .into_iter()
        .map(|c| {
            let labels = visible_labels(&graph, &c, lang);
            (c, labels)
        })
        .filter(|(_, labels)| !labels.is_empty())
        .collect();
    match format {
        TextFormat::Json => print_json(&serde_json::json!(found
            .iter()
            .map(|(c, labels)| serde_json::json!({"concept": c, "labels": labels}))
            .collect::<Vec<_>>())),
        TextFormat::Text => {
            for (concept, labels) in &found {
                println!("{}", render::term(&Term::Iri(concept.clone()), &prefixes));
                for e in labels {
                    println!("  {}", label_text(e));
                }
            }
        }
    }
    if found.is_empty() {
        eprintln!("msle: no concept labelled {text:?}");
    }
    Ok(u8::from(found.is_empty()))
}

pub fn describe(args: &DataArgs, text: &str, lang: Option<&str>, format: TextFormat) -> Outcome {
    let graph = data_graph(args)?;
    let prefixes = prefixes_for(&graph);
    let concept = match as_concept(text, &prefixes) {
        Some(iri) => iri?,
        None if !text.contains(':') => Iri::new(format!("{MSLE_NS}{text}")).map_err(fail)?,
        None => return Err(fail(format!("{text:?} is not an IRI or a known prefixed name"))),
    };
    let subject = Term::Iri(concept.clone());
    let skipped = [skos::PREF_LABEL, skos::ALT_LABEL, skos::HIDDEN_LABEL, skos::DEFINITION, schema::IMAGE];
    let labels = visible_labels(&graph, &concept, lang);
    let definition = definition_of(&graph, &concept, lang);
    let images: Vec<&Term> = graph
        .objects(&subject, &Term::iri(schema::IMAGE).expect("vocabulary constant"))
        .collect();
    let mut statements: Vec<(&Term, &Term)> = graph
        .triples_matching(Some(&subject), None, None)
        .filter(|t| !skipped.iter().any(|p| t.predicate().is(p)))
        .map(|t| (t.predicate(), t.object()))
        .collect();
    statements.sort();
    if labels.is_empty() && definition.is_none() && images.is_empty() && statements.is_empty() {
        eprintln!("msle: nothing is known about {}", subject);
        return Ok(1);
    }
    match format {
        TextFormat::Json => print_json(&serde_json::json!({
            "concept": concept,
            "labels": labels,
            "definition": definition,
            "images": images,
            "statements": statements
                .iter()
                .map(|(p, o)| serde_json::json!({"predicate": p, "object": o}))
                .collect::<Vec<_>>(),
        })),
        TextFormat::Text => {
            println!("{}", render::term(&subject, &prefixes));
            for e in &labels {
                println!("  {}", label_text(e));
            }
            if let Some(d) = &definition {
                println!("  definition: {d}");
            }
            for image in &images {
                println!("  image: {}", render::term(image, &prefixes));
            }
            for (p, o) in &statements {
                let p = if p.is(msle_core::vocab::rdf::TYPE) { "a".to_owned() } else { render::term(p, &prefixes) };
                println!("  {p} {}", render::term_expanded(&graph, o, &prefixes));
            }
        }
    }
    Ok(0)
}

pub fn fmt(file: &Path, check: bool) -> Outcome {
    let text = read(file)?;
    let graph = parse_turtle(&text).map_err(|e| fail(format!("{}: {e}", file.display())))?;
    let canonical = serialize_turtle(&graph);
    if !check {
        print!("{canonical}");
        return Ok(0);
    }
    if canonical == text {
        Ok(0)
    } else {
        eprintln!("msle: {} is not in canonical form", file.display());
        Ok(1)
    }
}
