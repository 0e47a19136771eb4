//! Generators and brute-force oracles shared by the integration tests.
//!
//! The oracles work on plain strings and std collections only, so they
//! share no code path with the library beyond term display.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use msle_core::model::{BlankNode, Graph, Iri, Literal, Term, Triple};
use msle_core::vocab::{rdf, rdfs, xsd};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn iri(s: &str) -> Term {
    Term::iri(s).unwrap()
}

pub fn typed(lex: &str, dt: &str) -> Term {
    Term::Literal(Literal::typed(lex, Iri::new(dt).unwrap()).unwrap())
}

pub fn blank(label: &str) -> Term {
    Term::Blank(BlankNode::new(label).unwrap())
}

// ------------------------------------------------------------ BGP oracle

#[derive(Debug, Clone)]
pub enum Slot {
    Var(&'static str),
    Term(Term),
}

impl Slot {
    fn text(&self) -> String {
        match self {
            Slot::Var(v) => format!("?{v}"),
            Slot::Term(t) => t.to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BgpCase {
    pub triples: Vec<(Term, Term, Term)>,
    pub patterns: Vec<[Slot; 3]>,
    /// `None` means `SELECT *`.
    pub projection: Option<Vec<&'static str>>,
    pub distinct: bool,
}

const VARS: [&str; 3] = ["a", "b", "c"];

impl BgpCase {
    pub fn random(rng: &mut StdRng) -> Self {
        let subjects: Vec<Term> = (0..4)
            .map(|i| iri(&format!("http://e/n{i}")))
            .chain([blank("x"), blank("y")])
            .collect();
        let predicates: Vec<Term> = ["p", "q"].iter().map(|p| iri(&format!("http://e/{p}"))).collect();
        let mut objects = subjects.clone();
        objects.extend([
            typed("1", xsd::INTEGER),
            typed("01", xsd::INTEGER),
            Term::Literal(Literal::string("n0")),
            Term::Literal(Literal::lang("n0", "en").unwrap()),
        ]);

        let size = rng.gen_range(0..=50);
        let mut triples = Vec::new();
        for _ in 0..size {
            triples.push((
                subjects.choose(rng).unwrap().clone(),
                predicates.choose(rng).unwrap().clone(),
                objects.choose(rng).unwrap().clone(),
            ));
        }

        let var_count = rng.gen_range(1..=3);
        let vars = &VARS[..var_count];
        let slot = |rng: &mut StdRng, pool: &[Term], allow_blank: bool| {
            if rng.gen_bool(0.55) {
                Slot::Var(vars.choose(rng).unwrap())
            } else {
                let candidates: Vec<&Term> = pool.iter().filter(|t| allow_blank || !t.is_blank()).collect();
                Slot::Term((*candidates.choose(rng).unwrap()).clone())
            }
        };
        let pattern_count = rng.gen_range(1..=3);
        let patterns: Vec<[Slot; 3]> = (0..pattern_count)
            .map(|_| [slot(rng, &subjects, false), slot(rng, &predicates, false), slot(rng, &objects, false)])
            .collect();

        let used: Vec<&'static str> = VARS
            .iter()
            .copied()
            .filter(|v| patterns.iter().flatten().any(|s| matches!(s, Slot::Var(x) if x == v)))
            .collect();
        let projection = if used.is_empty() || rng.gen_bool(0.3) {
            None
        } else {
            let mut chosen: Vec<&'static str> = used.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
            if chosen.is_empty() {
                chosen.push(used[0]);
            }
            chosen.shuffle(rng);
            Some(chosen)
        };
        BgpCase {
            triples,
            patterns,
            projection,
            distinct: rng.gen_bool(0.25),
        }
    }

    pub fn graph(&self) -> Graph {
        let mut g = Graph::new();
        for (s, p, o) in &self.triples {
            g.insert(Triple::new(s.clone(), p.clone(), o.clone()).unwrap());
        }
        g
    }

    pub fn query_text(&self) -> String {
        let head = match &self.projection {
            None => "*".to_owned(),
            Some(vars) => vars.iter().map(|v| format!("?{v}")).collect::<Vec<_>>().join(" "),
        };
        let body: Vec<String> = self
            .patterns
            .iter()
            .map(|p| format!("{} {} {}", p[0].text(), p[1].text(), p[2].text()))
            .collect();
        let distinct = if self.distinct { "DISTINCT " } else { "" };
        format!("SELECT {distinct}{head} WHERE {{ {} }}", body.join(" . "))
    }

    /// Header variables in query order.
    pub fn header(&self) -> Vec<&'static str> {
        match &self.projection {
            Some(v) => v.clone(),
            None => {
                let mut seen = Vec::new();
                for s in self.patterns.iter().flatten() {
                    if let Slot::Var(v) = s {
                        if !seen.contains(v) {
                            seen.push(*v);
                        }
                    }
                }
                seen
            }
        }
    }

    /// Every assignment of the pattern variables to terms of the graph,
    /// checked pattern by pattern; rows are projected then sorted.
    pub fn oracle(&self) -> Vec<Vec<String>> {
        let facts: HashSet<(String, String, String)> = self
            .triples
            .iter()
            .map(|(s, p, o)| (s.to_string(), p.to_string(), o.to_string()))
            .collect();
        let domain: Vec<String> = self
            .triples
            .iter()
            .flat_map(|(s, p, o)| [s.to_string(), p.to_string(), o.to_string()])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut vars: Vec<&'static str> = Vec::new();
        for s in self.patterns.iter().flatten() {
            if let Slot::Var(v) = s {
                if !vars.contains(v) {
                    vars.push(*v);
                }
            }
        }
        let header = self.header();
        let mut rows = Vec::new();
        if domain.is_empty() {
            return rows;
        }
        let total = domain.len().pow(vars.len() as u32);
        for mut code in 0..total {
            let mut binding: BTreeMap<&str, &str> = BTreeMap::new();
            for v in &vars {
                binding.insert(v, &domain[code % domain.len()]);
                code /= domain.len();
            }
            let ground = |s: &Slot| match s {
                Slot::Var(v) => binding[v].to_owned(),
                Slot::Term(t) => t.to_string(),
            };
            let ok = self
                .patterns
                .iter()
                .all(|p| facts.contains(&(ground(&p[0]), ground(&p[1]), ground(&p[2]))));
            if ok {
                rows.push(header.iter().map(|v| binding[v].to_owned()).collect::<Vec<_>>());
            }
        }
        rows.sort();
        if self.distinct {
            rows.dedup();
        }
        rows
    }
}

// ---------------------------------------------------------------- DAGs

pub struct Dag {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
    /// Instance index to asserted class.
    pub types: Vec<usize>,
}

pub fn class(i: usize) -> Term {
    iri(&format!("http://e/C{i}"))
}

pub fn instance(i: usize) -> Term {
    iri(&format!("http://e/i{i}"))
}

impl Dag {
    pub fn random(rng: &mut StdRng) -> Self {
        let nodes = rng.gen_range(1..=20);
        let mut order: Vec<usize> = (0..nodes).collect();
        order.shuffle(rng);
        let density = rng.gen_range(0.02..0.4);
        let mut edges = Vec::new();
        for i in 0..nodes {
            for j in (i + 1)..nodes {
                if rng.gen_bool(density) {
                    edges.push((order[i], order[j]));
                }
            }
        }
        edges.shuffle(rng);
        let types = (0..rng.gen_range(0..5)).map(|_| rng.gen_range(0..nodes)).collect();
        Dag { nodes, edges, types }
    }

    pub fn graph(&self) -> Graph {
        let mut g = Graph::new();
        for &(a, b) in &self.edges {
            g.insert(Triple::new(class(a), iri(rdfs::SUB_CLASS_OF), class(b)).unwrap());
        }
        for (i, &c) in self.types.iter().enumerate() {
            g.insert(Triple::new(instance(i), iri(rdf::TYPE), class(c)).unwrap());
        }
        g
    }

    /// Reachability by breadth-first search, excluding each start node.
    pub fn reachable(&self) -> BTreeSet<(usize, usize)> {
        let mut adjacency = vec![Vec::new(); self.nodes];
        for &(a, b) in &self.edges {
            adjacency[a].push(b);
        }
        let mut pairs = BTreeSet::new();
        for start in 0..self.nodes {
            let mut seen = vec![false; self.nodes];
            let mut queue = VecDeque::from([start]);
            while let Some(n) = queue.pop_front() {
                for &m in &adjacency[n] {
                    if !seen[m] {
                        seen[m] = true;
                        queue.push_back(m);
                    }
                }
            }
            pairs.extend((0..self.nodes).filter(|&m| seen[m] && m != start).map(|m| (start, m)));
        }
        pairs
    }
}

pub fn class_index(t: &Term) -> usize {
    t.as_iri().unwrap().as_str().strip_prefix("http://e/C").unwrap().parse().unwrap()
}

// ------------------------------------------------------- Turtle graphs

const LOCALS: &[&str] = &["a", "b-c", "x_1", "1x", "with.dot", "end.", "ä", "a/b", "", "q?x", "long_local_name"];
const NAMESPACES: &[&str] = &["http://example.org/", "http://example.org/ns#", "urn:x-test:"];
const STRING_PARTS: &[&str] = &[
    "plain", " ", "\"", "\\", "\n", "\t", "\r", "'", "é", "–", "😀", "12 X – 1000 Kx", "#", "<>", ";", ".", ",", "@en",
];

fn random_iri(rng: &mut StdRng) -> Term {
    iri(&format!("{}{}", NAMESPACES.choose(rng).unwrap(), LOCALS.choose(rng).unwrap()))
}

fn random_string(rng: &mut StdRng) -> String {
    (0..rng.gen_range(0..5)).map(|_| *STRING_PARTS.choose(rng).unwrap()).collect()
}

fn random_literal(rng: &mut StdRng) -> Term {
    let lit = match rng.gen_range(0..9) {
        0 => Literal::string(random_string(rng)),
        1 => Literal::lang(random_string(rng), ["en", "de", "de-CH", "EN-us"].choose(rng).unwrap()).unwrap(),
        2 => return typed(["0", "42", "-7", "+3", "030", "1.5", "x"].choose(rng).unwrap(), xsd::INTEGER),
        3 => return typed(["1.5", "-0.25", "1.", ".5", "3", "+.0"].choose(rng).unwrap(), xsd::DECIMAL),
        4 => return typed(["1e3", "1.5E-2", "-2e+10", "INF", "NaN", ".1e1"].choose(rng).unwrap(), xsd::DOUBLE),
        5 => return typed(["true", "false", "1", "yes"].choose(rng).unwrap(), xsd::BOOLEAN),
        6 => return typed(&random_string(rng), "http://example.org/dt#custom"),
        7 => return typed(&random_string(rng), xsd::STRING),
        _ => Literal::string(""),
    };
    Term::Literal(lit)
}

/// A random graph using IRIs, blank nodes in every position they may
/// occupy (trees, shared nodes, cycles) and assorted literals.
pub fn random_turtle_graph(rng: &mut StdRng) -> Graph {
    let mut g = Graph::new();
    if rng.gen_bool(0.8) {
        g.set_prefix("ex", NAMESPACES[0]);
    }
    if rng.gen_bool(0.5) {
        g.set_prefix("", NAMESPACES[1]);
    }
    let blanks: Vec<Term> = (0..rng.gen_range(0..6)).map(|i| blank(&format!("n{i}"))).collect();
    let predicates: Vec<Term> = vec![
        iri(rdf::TYPE),
        iri("http://example.org/p"),
        iri("http://example.org/ns#q"),
        iri("urn:x-test:r"),
        iri("http://other.example/has%20space"),
    ];
    for _ in 0..rng.gen_range(0..30) {
        let subject = if !blanks.is_empty() && rng.gen_bool(0.4) {
            blanks.choose(rng).unwrap().clone()
        } else {
            random_iri(rng)
        };
        let object = match rng.gen_range(0..3) {
            0 if !blanks.is_empty() => blanks.choose(rng).unwrap().clone(),
            1 => random_literal(rng),
            _ => random_iri(rng),
        };
        g.insert(Triple::new(subject, predicates.choose(rng).unwrap().clone(), object).unwrap());
    }
    // nested chains of blank nodes, sometimes closed into a cycle
    if blanks.len() >= 2 && rng.gen_bool(0.5) {
        for pair in blanks.windows(2) {
            g.insert(Triple::new(pair[0].clone(), predicates.choose(rng).unwrap().clone(), pair[1].clone()).unwrap());
        }
        if rng.gen_bool(0.3) {
            let (last, first) = (blanks[blanks.len() - 1].clone(), blanks[0].clone());
            g.insert(Triple::new(last, predicates[1].clone(), first).unwrap());
        }
    }
    g
}

/// Blank-free triples as strings, for a check independent of isomorphism.
pub fn ground_triples(g: &Graph) -> BTreeSet<String> {
    g.iter()
        .filter(|t| !t.subject().is_blank() && !t.object().is_blank())
        .map(Triple::to_string)
        .collect()
}
