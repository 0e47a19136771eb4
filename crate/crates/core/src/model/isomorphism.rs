//! Blank-node-aware graph isomorphism.
//!
//! Ground triples must agree exactly. Blank nodes are first partitioned by
//! iterated neighbourhood hashing, then a backtracking search looks for a
//! bijection inside each colour class.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::hash::{Hash, Hasher};

use crate::model::{BlankNode, Graph, Term, Triple};

/// True iff a bijection between blank nodes maps `a`'s triples exactly onto `b`'s.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let (ground_a, blank_a) = split(a);
    let (ground_b, blank_b) = split(b);
    if ground_a.len() != ground_b.len() || ground_a.iter().any(|t| !b.contains(t)) {
        return false;
    }
    if blank_a.is_empty() {
        return true;
    }
    let colors_a = refine(&blank_a);
    let colors_b = refine(&blank_b);
    if colors_a.len() != colors_b.len() || histogram(&colors_a) != histogram(&colors_b) {
        return false;
    }

    let mut search = Search::new(&blank_a, &colors_a, &colors_b, b);
    search.run()
}

fn split(g: &Graph) -> (Vec<&Triple>, Vec<&Triple>) {
    g.iter()
        .partition(|t| !t.subject().is_blank() && !t.object().is_blank())
}

fn histogram(colors: &HashMap<&BlankNode, u64>) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for c in colors.values() {
        *h.entry(*c).or_insert(0) += 1;
    }
    h
}

fn hash_of<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

/// Colour of a term inside a signature: ground terms hash to themselves,
/// blank nodes to their current colour.
fn term_color(term: &Term, colors: &HashMap<&BlankNode, u64>) -> u64 {
    match term {
        Term::Blank(b) => hash_of(&(1u8, colors[b])),
        t => hash_of(&(0u8, t)),
    }
}

fn refine<'a>(blank_triples: &[&'a Triple]) -> HashMap<&'a BlankNode, u64> {
    let mut incident: HashMap<&BlankNode, Vec<&Triple>> = HashMap::new();
    for t in blank_triples {
        for term in [t.subject(), t.object()] {
            if let Term::Blank(b) = term {
                incident.entry(b).or_default().push(t);
            }
        }
    }
    let mut colors: HashMap<&BlankNode, u64> = incident.keys().map(|b| (*b, 0)).collect();
    let mut classes = 1;
    // at most one round per node
    for _ in 0..=incident.len() {
        let next: HashMap<&BlankNode, u64> = incident
            .iter()
            .map(|(node, triples)| {
                let mut sig: Vec<(u8, u64, u64, u64)> = triples
                    .iter()
                    .map(|t| {
                        let role = match (t.subject().as_blank() == Some(node), t.object().as_blank() == Some(node)) {
                            (true, true) => 2,
                            (true, false) => 0,
                            _ => 1,
                        };
                        (
                            role,
                            term_color(t.subject(), &colors),
                            term_color(t.predicate(), &colors),
                            term_color(t.object(), &colors),
                        )
                    })
                    .collect();
                sig.sort_unstable();
                (*node, hash_of(&(colors[node], sig)))
            })
            .collect();
        let next_classes = next.values().collect::<HashSet<_>>().len();
        colors = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    colors
}

struct Search<'a> {
    order: Vec<&'a BlankNode>,
    candidates: HashMap<u64, Vec<&'a BlankNode>>,
    colors_a: &'a HashMap<&'a BlankNode, u64>,
    incident: HashMap<&'a BlankNode, Vec<&'a Triple>>,
    target: &'a Graph,
    mapping: HashMap<&'a BlankNode, &'a BlankNode>,
    used: HashSet<&'a BlankNode>,
}

impl<'a> Search<'a> {
    fn new(
        blank_a: &[&'a Triple],
        colors_a: &'a HashMap<&'a BlankNode, u64>,
        colors_b: &'a HashMap<&'a BlankNode, u64>,
        target: &'a Graph,
    ) -> Self {
        let mut candidates: HashMap<u64, Vec<&BlankNode>> = HashMap::new();
        for (node, color) in colors_b {
            candidates.entry(*color).or_default().push(node);
        }
        for list in candidates.values_mut() {
            list.sort();
        }
        let mut order: Vec<&BlankNode> = colors_a.keys().copied().collect();
        order.sort_by_key(|n| (candidates.get(&colors_a[n]).map_or(0, Vec::len), *n));

        let mut incident: HashMap<&BlankNode, Vec<&Triple>> = HashMap::new();
        for t in blank_a {
            for term in [t.subject(), t.object()] {
                if let Term::Blank(b) = term {
                    incident.entry(b).or_default().push(t);
                }
            }
        }
        Search {
            order,
            candidates,
            colors_a,
            incident,
            target,
            mapping: HashMap::new(),
            used: HashSet::new(),
        }
    }

    fn run(&mut self) -> bool {
        self.assign(0)
    }

    fn assign(&mut self, depth: usize) -> bool {
        let Some(&node) = self.order.get(depth) else {
            return true;
        };
        let options = self
            .candidates
            .get(&self.colors_a[node])
            .cloned()
            .unwrap_or_default();
        for candidate in options {
            if self.used.contains(candidate) {
                continue;
            }
            self.mapping.insert(node, candidate);
            self.used.insert(candidate);
            if self.consistent(node) && self.assign(depth + 1) {
                return true;
            }
            self.mapping.remove(node);
            self.used.remove(candidate);
        }
        false
    }

    /// Every fully mapped triple touching `node` must exist in the target.
    fn consistent(&self, node: &BlankNode) -> bool {
        self.incident[node].iter().all(|t| {
            let map = |term: &Term| -> Option<Term> {
                match term {
                    Term::Blank(b) => self.mapping.get(b).map(|m| Term::Blank((*m).clone())),
                    other => Some(other.clone()),
                }
            };
            match (map(t.subject()), map(t.object())) {
                (Some(s), Some(o)) => Triple::new(s, t.predicate().clone(), o)
                    .map(|mapped| self.target.contains(&mapped))
                    .unwrap_or(false),
                _ => true,
            }
        })
    }
}
