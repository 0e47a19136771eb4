use std::collections::BTreeMap;

use msle_core::turtle::format_term;
use msle_core::vocab::rdf;
use msle_core::{Graph, ResultSet, Term};

/// A plain-text table with a header rule; columns padded to the widest cell.
pub fn table(header: &[String], rows: &[Vec<String>]) -> String {
    let width = |s: &str| s.chars().count();
    let mut widths: Vec<usize> = header.iter().map(|h| width(h)).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(width(cell));
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - width(c))))
            .collect();
        padded.join("  ").trim_end().to_owned()
    };
    let mut out = line(header);
    out.push('\n');
    out.push_str(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    out.push('\n');
    for row in rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

pub fn result_table(rs: &ResultSet, prefixes: &BTreeMap<String, String>) -> String {
    let header: Vec<String> = rs.variables.iter().map(|v| format!("?{v}")).collect();
    let rows: Vec<Vec<String>> = rs
        .rows
        .iter()
        .map(|r| r.0.iter().map(|t| format_term(t, prefixes)).collect())
        .collect();
    let mut out = table(&header, &rows);
    out.push_str(&format!("({} row{})\n", rows.len(), if rows.len() == 1 { "" } else { "s" }));
    out
}

pub fn result_json(rs: &ResultSet) -> serde_json::Value {
    serde_json::json!({
        "variables": rs.variables,
        "rows": rs.to_string_rows(),
    })
}

pub fn term(t: &Term, prefixes: &BTreeMap<String, String>) -> String {
    format_term(t, prefixes)
}

/// Like [`term`], but blank nodes are expanded into `[ p o ; ... ]` using
/// their statements in `graph`. Blank nodes already being expanded stay
/// as labels.
pub fn term_expanded(graph: &Graph, t: &Term, prefixes: &BTreeMap<String, String>) -> String {
    fn go<'g>(graph: &'g Graph, t: &'g Term, prefixes: &BTreeMap<String, String>, open: &mut Vec<&'g Term>) -> String {
        if !t.is_blank() || open.contains(&t) {
            return format_term(t, prefixes);
        }
        let mut triples: Vec<_> = graph.triples_matching(Some(t), None, None).collect();
        if triples.is_empty() {
            return "[]".to_owned();
        }
        triples.sort_by(|a, b| (a.predicate(), a.object()).cmp(&(b.predicate(), b.object())));
        open.push(t);
        let parts: Vec<String> = triples
            .iter()
            .map(|tr| {
                let p = if tr.predicate().is(rdf::TYPE) { "a".to_owned() } else { format_term(tr.predicate(), prefixes) };
                format!("{p} {}", go(graph, tr.object(), prefixes, open))
            })
            .collect();
        open.pop();
        format!("[ {} ]", parts.join(" ; "))
    }
    go(graph, t, prefixes, &mut Vec::new())
}
