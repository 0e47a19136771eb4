use std::collections::HashMap;

use crate::model::{BlankNode, Graph, Iri, Literal, Term, Triple};
use crate::turtle::lexer::{Lexer, Tok, Token};
use crate::turtle::ParseError;
use crate::vocab::{rdf, xsd};

/// Parses a Turtle document into a fresh graph.
pub fn parse_turtle(text: &str) -> Result<Graph, ParseError> {
    let tokens = Lexer::new(text).tokenize()?;
    let mut parser = TurtleParser {
        tokens,
        pos: 0,
        graph: Graph::new(),
        labels: HashMap::new(),
    };
    parser.document()?;
    Ok(parser.graph)
}

/// Parses `text` and merges the result into `graph`, keeping blank nodes apart.
pub fn parse_turtle_into(text: &str, graph: &mut Graph) -> Result<(), ParseError> {
    let parsed = parse_turtle(text)?;
    graph.merge(&parsed);
    Ok(())
}

struct TurtleParser {
    tokens: Vec<Token>,
    pos: usize,
    graph: Graph,
    labels: HashMap<String, BlankNode>,
}

impl TurtleParser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, ParseError> {
        if self.peek().tok == tok {
            Ok(self.advance())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> ParseError {
        let t = self.peek();
        t.error(format!("expected {what}, found {}", t.tok.describe()))
    }

    fn document(&mut self) -> Result<(), ParseError> {
        loop {
            match &self.peek().tok {
                Tok::Eof => return Ok(()),
                Tok::AtPrefix => {
                    self.advance();
                    self.prefix_body()?;
                    self.expect(Tok::Dot, "'.' after @prefix directive")?;
                }
                Tok::Word(w) if w.eq_ignore_ascii_case("prefix") => {
                    self.advance();
                    self.prefix_body()?;
                }
                Tok::AtBase => return Err(self.peek().error("@base directives are not supported")),
                Tok::Word(w) if w.eq_ignore_ascii_case("base") => {
                    return Err(self.peek().error("BASE directives are not supported"))
                }
                _ => {
                    self.triples()?;
                    self.expect(Tok::Dot, "'.' to end the statement")?;
                }
            }
        }
    }

    fn prefix_body(&mut self) -> Result<(), ParseError> {
        let label = match &self.peek().tok {
            Tok::PName { prefix, local } if local.is_empty() => prefix.clone(),
            _ => return Err(self.unexpected("prefix label ending in ':'")),
        };
        self.advance();
        let token = self.peek().clone();
        let Tok::IriRef(ns) = &token.tok else {
            return Err(self.unexpected("namespace IRI in angle brackets"));
        };
        Iri::new(ns.clone()).map_err(|e| token.error(e.to_string()))?;
        self.graph.set_prefix(label, ns.clone());
        self.advance();
        Ok(())
    }

    fn triples(&mut self) -> Result<(), ParseError> {
        if self.peek().tok == Tok::LBracket {
            let subject = self.blank_property_list()?;
            // `[ ... ] .` is a complete statement on its own
            if self.peek().tok != Tok::Dot {
                self.predicate_object_list(&subject)?;
            }
            return Ok(());
        }
        let subject = self.subject()?;
        self.predicate_object_list(&subject)
    }

    fn subject(&mut self) -> Result<Term, ParseError> {
        match &self.peek().tok {
            Tok::IriRef(_) | Tok::PName { .. } => self.iri().map(Term::Iri),
            Tok::BlankLabel(_) => Ok(self.blank_label()),
            _ => Err(self.unexpected("subject (IRI, prefixed name or blank node)")),
        }
    }

    fn predicate_object_list(&mut self, subject: &Term) -> Result<(), ParseError> {
        loop {
            let predicate = self.verb()?;
            self.object_list(subject, &predicate)?;
            if self.peek().tok != Tok::Semicolon {
                return Ok(());
            }
            while self.peek().tok == Tok::Semicolon {
                self.advance();
            }
            if matches!(self.peek().tok, Tok::Dot | Tok::RBracket | Tok::Eof) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<Term, ParseError> {
        match &self.peek().tok {
            Tok::Word(w) if w == "a" => {
                self.advance();
                Ok(Term::Iri(Iri::new(rdf::TYPE).expect("constant IRI")))
            }
            Tok::IriRef(_) | Tok::PName { .. } => self.iri().map(Term::Iri),
            _ => Err(self.unexpected("predicate (IRI, prefixed name or 'a')")),
        }
    }

    fn object_list(&mut self, subject: &Term, predicate: &Term) -> Result<(), ParseError> {
        loop {
            let at = self.peek().clone();
            let object = self.object()?;
            let triple = Triple::new(subject.clone(), predicate.clone(), object).map_err(|e| at.error(e.to_string()))?;
            self.graph.insert(triple);
            if self.peek().tok != Tok::Comma {
                return Ok(());
            }
            self.advance();
        }
    }

    fn object(&mut self) -> Result<Term, ParseError> {
        let token = self.peek().clone();
        match &token.tok {
            Tok::IriRef(_) | Tok::PName { .. } => self.iri().map(Term::Iri),
            Tok::BlankLabel(_) => Ok(self.blank_label()),
            Tok::LBracket => self.blank_property_list(),
            Tok::Str(_) | Tok::Integer(_) | Tok::Decimal(_) | Tok::Double(_) => self.literal().map(Term::Literal),
            Tok::Word(w) if w == "true" || w == "false" => self.literal().map(Term::Literal),
            Tok::LParen => Err(token.error("collections '( ... )' are not supported")),
            _ => Err(self.unexpected("object (IRI, blank node or literal)")),
        }
    }

    fn blank_label(&mut self) -> Term {
        let Tok::BlankLabel(label) = self.advance().tok else {
            unreachable!("caller checked for a blank node label")
        };
        if let Some(b) = self.labels.get(&label) {
            return Term::Blank(b.clone());
        }
        let fresh = self.graph.fresh_blank();
        self.labels.insert(label, fresh.clone());
        Term::Blank(fresh)
    }

    fn blank_property_list(&mut self) -> Result<Term, ParseError> {
        self.expect(Tok::LBracket, "'['")?;
        let node = Term::Blank(self.graph.fresh_blank());
        if self.peek().tok != Tok::RBracket {
            self.predicate_object_list(&node)?;
        }
        self.expect(Tok::RBracket, "']' to close blank node property list")?;
        Ok(node)
    }

    pub(crate) fn iri(&mut self) -> Result<Iri, ParseError> {
        let token = self.advance();
        resolve_iri(&token, self.graph.prefixes())
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let token = self.advance();
        let typed = |lex: &str, dt: &str| Literal::typed(lex, Iri::new(dt).expect("constant IRI")).expect("not langString");
        match &token.tok {
            Tok::Integer(s) => Ok(typed(s, xsd::INTEGER)),
            Tok::Decimal(s) => Ok(typed(s, xsd::DECIMAL)),
            Tok::Double(s) => Ok(typed(s, xsd::DOUBLE)),
            Tok::Word(w) => Ok(typed(w, xsd::BOOLEAN)),
            Tok::Str(lexical) => match &self.peek().tok {
                Tok::LangTag(tag) => {
                    let tag = tag.clone();
                    let at = self.advance();
                    Literal::lang(lexical.clone(), &tag).map_err(|e| at.error(e.to_string()))
                }
                Tok::DoubleCaret => {
                    self.advance();
                    let at = self.peek().clone();
                    if !matches!(at.tok, Tok::IriRef(_) | Tok::PName { .. }) {
                        return Err(self.unexpected("datatype IRI after '^^'"));
                    }
                    let dt = self.iri()?;
                    Literal::typed(lexical.clone(), dt).map_err(|e| at.error(e.to_string()))
                }
                _ => Ok(Literal::string(lexical.clone())),
            },
            _ => unreachable!("caller checked for a literal token"),
        }
    }
}

/// Turns an IRI or prefixed-name token into an absolute IRI.
pub(crate) fn resolve_iri(
    token: &Token,
    prefixes: &std::collections::BTreeMap<String, String>,
) -> Result<Iri, ParseError> {
    let raw = match &token.tok {
        Tok::IriRef(s) => s.clone(),
        Tok::PName { prefix, local } => match prefixes.get(prefix) {
            Some(ns) => format!("{ns}{local}"),
            None => return Err(token.error(format!("unresolved prefix {prefix:?}"))),
        },
        other => return Err(token.error(format!("expected IRI, found {}", other.describe()))),
    };
    Iri::new(raw).map_err(|e| token.error(e.to_string()))
}
