use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write;

use crate::model::{compact_with, escape_string, BlankNode, Graph, Iri, Literal, Term, Triple};
use crate::vocab::{rdf, xsd};

/// Writes `graph` as Turtle.
///
/// Output is deterministic: prefix directives sorted by label, subjects
/// sorted (IRIs first, then blank nodes in allocation order), predicates
/// and objects sorted within each subject. A blank node used as the object
/// of exactly one triple is written inline as `[ ... ]`; any other blank
/// node gets a `_:bN` label, numbered in order of appearance. Re-reading
/// the output and writing it again yields the same text.
pub fn serialize_turtle(graph: &Graph) -> String {
    let mut out = Writer::new(graph).write();
    if graph.iter().any(|t| t.subject().is_blank() || t.object().is_blank()) {
        // iterate until re-reading the text gives the same text
        for _ in 0..4 {
            let Ok(reread) = crate::turtle::parse_turtle(&out) else { break };
            let next = Writer::new(&reread).write();
            if next == out {
                break;
            }
            out = next;
        }
    }
    out
}

struct Writer<'g> {
    graph: &'g Graph,
    by_subject: BTreeMap<&'g Term, Vec<&'g Triple>>,
    inline: BTreeSet<&'g BlankNode>,
    labels: HashMap<&'g BlankNode, String>,
}

impl<'g> Writer<'g> {
    fn new(graph: &'g Graph) -> Self {
        let mut by_subject: BTreeMap<&Term, Vec<&Triple>> = BTreeMap::new();
        let mut object_uses: HashMap<&BlankNode, usize> = HashMap::new();
        for t in graph.iter() {
            by_subject.entry(t.subject()).or_default().push(t);
            if let Term::Blank(b) = t.object() {
                *object_uses.entry(b).or_default() += 1;
            }
        }
        for triples in by_subject.values_mut() {
            triples.sort_by(|a, b| (a.predicate(), a.object()).cmp(&(b.predicate(), b.object())));
        }

        let mut inline: BTreeSet<&BlankNode> = object_uses
            .iter()
            .filter(|(_, &n)| n == 1)
            .map(|(b, _)| *b)
            .collect();

        // label one member of each unreachable cycle of inline nodes
        loop {
            let mut reached: BTreeSet<&BlankNode> = BTreeSet::new();
            let roots = by_subject
                .keys()
                .filter(|s| s.as_blank().is_none_or(|b| !inline.contains(b)));
            let mut stack: Vec<&Term> = roots.copied().collect();
            while let Some(node) = stack.pop() {
                for t in by_subject.get(node).into_iter().flatten() {
                    if let Term::Blank(b) = t.object() {
                        if inline.contains(b) && reached.insert(b) {
                            stack.push(t.object());
                        }
                    }
                }
            }
            let stranded = inline.iter().find(|b| !reached.contains(*b)).copied();
            match stranded {
                Some(b) => {
                    inline.remove(b);
                }
                None => break,
            }
        }

        let mut writer = Writer {
            graph,
            by_subject,
            inline,
            labels: HashMap::new(),
        };
        writer.labels = writer.labels_in_text_order();
        writer
    }

    /// `_:bN` labels numbered by first appearance in the output.
    fn labels_in_text_order(&self) -> HashMap<&'g BlankNode, String> {
        let mut labels: HashMap<&'g BlankNode, String> = HashMap::new();
        let mut name = |b: &'g BlankNode| {
            let next = labels.len();
            labels.entry(b).or_insert_with(|| format!("_:b{next}"));
        };
        for subject in self.by_subject.keys() {
            if let Term::Blank(b) = subject {
                if self.inline.contains(b) {
                    continue;
                }
                name(b);
            }
            // objects in write order, descending into inline blank nodes
            let mut pending: Vec<&'g Term> = self.by_subject[subject].iter().rev().map(|t| t.object()).collect();
            while let Some(term) = pending.pop() {
                let Term::Blank(b) = term else { continue };
                if self.inline.contains(b) {
                    pending.extend(self.by_subject.get(term).into_iter().flatten().rev().map(|t| t.object()));
                } else {
                    name(b);
                }
            }
        }
        labels
    }

    fn write(&self) -> String {
        let mut out = String::new();
        for (label, ns) in self.graph.prefixes() {
            let _ = writeln!(out, "@prefix {label}: <{ns}> .");
        }
        let mut first = true;
        for (subject, triples) in &self.by_subject {
            if subject.as_blank().is_some_and(|b| self.inline.contains(b)) {
                continue;
            }
            if first && !self.graph.prefixes().is_empty() || !first {
                out.push('\n');
            }
            first = false;
            out.push_str(&self.term(subject, 1));
            out.push(' ');
            out.push_str(&self.predicate_objects(triples, 1));
            out.push_str(" .\n");
        }
        out
    }

    fn predicate_objects(&self, triples: &[&Triple], depth: usize) -> String {
        let indent = "    ".repeat(depth);
        let mut groups: Vec<(&Term, Vec<&Term>)> = Vec::new();
        for t in triples {
            match groups.last_mut() {
                Some((p, objects)) if *p == t.predicate() => objects.push(t.object()),
                _ => groups.push((t.predicate(), vec![t.object()])),
            }
        }
        groups
            .iter()
            .map(|(p, objects)| {
                let objects: Vec<String> = objects.iter().map(|o| self.term(o, depth + 1)).collect();
                format!("{} {}", self.predicate(p), objects.join(", "))
            })
            .collect::<Vec<_>>()
            .join(&format!(" ;\n{indent}"))
    }

    fn predicate(&self, p: &Term) -> String {
        if p.is(rdf::TYPE) {
            "a".to_owned()
        } else {
            self.term(p, 0)
        }
    }

    fn term(&self, term: &Term, depth: usize) -> String {
        match term {
            Term::Iri(iri) => self.iri(iri),
            Term::Blank(b) if self.inline.contains(b) => {
                match self.by_subject.get(term) {
                    None => "[]".to_owned(),
                    Some(triples) => {
                        let indent = "    ".repeat(depth);
                        let closing = "    ".repeat(depth.saturating_sub(1));
                        format!("[\n{indent}{}\n{closing}]", self.predicate_objects(triples, depth))
                    }
                }
            }
            Term::Blank(b) => self.labels[b].clone(),
            Term::Literal(l) => self.literal(l),
        }
    }

    fn iri(&self, iri: &Iri) -> String {
        compact_iri(self.graph.prefixes(), iri)
    }

    fn literal(&self, l: &Literal) -> String {
        literal(self.graph.prefixes(), l)
    }
}

fn compact_iri(prefixes: &BTreeMap<String, String>, iri: &Iri) -> String {
    compact_with(prefixes, iri.as_str()).unwrap_or_else(|| iri.to_string())
}

fn literal(prefixes: &BTreeMap<String, String>, l: &Literal) -> String {
    let lex = l.lexical();
    if let Some(lang) = l.language() {
        return format!("\"{}\"@{lang}", escape_string(lex));
    }
    let bare = match l.datatype().as_str() {
        xsd::STRING => return format!("\"{}\"", escape_string(lex)),
        xsd::INTEGER => is_integer(lex),
        xsd::DECIMAL => is_decimal(lex),
        xsd::DOUBLE => is_double(lex),
        xsd::BOOLEAN => lex == "true" || lex == "false",
        _ => false,
    };
    if bare {
        lex.to_owned()
    } else {
        format!("\"{}\"^^{}", escape_string(lex), compact_iri(prefixes, l.datatype()))
    }
}

/// One term in Turtle syntax, with IRIs compacted against `prefixes`.
/// Blank nodes keep their own label.
pub fn format_term(term: &Term, prefixes: &BTreeMap<String, String>) -> String {
    match term {
        Term::Iri(iri) => compact_iri(prefixes, iri),
        Term::Blank(b) => b.to_string(),
        Term::Literal(l) => literal(prefixes, l),
    }
}

fn unsigned(s: &str) -> &str {
    s.strip_prefix(['+', '-']).unwrap_or(s)
}

fn digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn is_integer(s: &str) -> bool {
    digits(unsigned(s))
}

fn is_decimal(s: &str) -> bool {
    match unsigned(s).split_once('.') {
        Some((int, frac)) => (int.is_empty() || digits(int)) && digits(frac),
        None => false,
    }
}

fn is_double(s: &str) -> bool {
    let Some(idx) = s.find(['e', 'E']) else {
        return false;
    };
    let (mantissa, exp) = (&s[..idx], &s[idx + 1..]);
    let mantissa_ok = is_integer(mantissa)
        || is_decimal(mantissa)
        || unsigned(mantissa)
            .strip_suffix('.')
            .is_some_and(digits);
    mantissa_ok && is_integer(exp)
}
