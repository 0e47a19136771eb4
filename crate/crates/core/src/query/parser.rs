use std::collections::BTreeMap;

use crate::model::{Iri, Literal, Term};
use crate::query::{PatternTerm, Projection, Query, QueryError, TriplePattern};
use crate::turtle::lexer::{Lexer, Tok, Token};
use crate::turtle::{resolve_iri, ParseError};
use crate::vocab::{rdf, xsd};

/// Parses a SELECT query. Every prefixed name must be declared in the query.
pub fn parse_query(text: &str) -> Result<Query, QueryError> {
    parse_query_with(text, &BTreeMap::new())
}

/// Parses a SELECT query, falling back to `defaults` for prefixes the query
/// does not declare itself.
pub fn parse_query_with(text: &str, defaults: &BTreeMap<String, String>) -> Result<Query, QueryError> {
    let tokens = Lexer::new(text).tokenize()?;
    let mut p = QueryParser {
        tokens,
        pos: 0,
        prefixes: BTreeMap::new(),
        defaults,
    };
    p.query()
}

struct QueryParser<'d> {
    tokens: Vec<Token>,
    pos: usize,
    prefixes: BTreeMap<String, String>,
    defaults: &'d BTreeMap<String, String>,
}

impl QueryParser<'_> {
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

    fn unexpected(&self, what: &str) -> ParseError {
        let t = self.peek();
        t.error(format!("expected {what}, found {}", t.tok.describe()))
    }

    fn at_keyword(&self, keyword: &str) -> bool {
        matches!(&self.peek().tok, Tok::Word(w) if w.eq_ignore_ascii_case(keyword))
    }

    fn expect_keyword(&mut self, keyword: &str) -> Result<(), ParseError> {
        if self.at_keyword(keyword) {
            self.advance();
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{keyword}'")))
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek().tok == tok {
            self.advance();
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn query(&mut self) -> Result<Query, QueryError> {
        while self.at_keyword("prefix") {
            self.advance();
            let label = match &self.peek().tok {
                Tok::PName { prefix, local } if local.is_empty() => prefix.clone(),
                _ => return Err(self.unexpected("prefix label ending in ':'").into()),
            };
            self.advance();
            let token = self.advance();
            let Tok::IriRef(ns) = &token.tok else {
                return Err(token
                    .error(format!("expected namespace IRI in angle brackets, found {}", token.tok.describe()))
                    .into());
            };
            Iri::new(ns.clone()).map_err(|e| token.error(e.to_string()))?;
            self.prefixes.insert(label, ns.clone());
        }
        if self.at_keyword("base") {
            return Err(self.peek().error("BASE declarations are not supported").into());
        }

        self.expect_keyword("select")?;
        let distinct = if self.at_keyword("distinct") {
            self.advance();
            true
        } else {
            false
        };
        let projection = if self.peek().tok == Tok::Star {
            self.advance();
            Projection::All
        } else {
            let mut vars = Vec::new();
            while let Tok::Var(v) = &self.peek().tok {
                vars.push(v.clone());
                self.advance();
            }
            if vars.is_empty() {
                return Err(self.unexpected("variable or '*' after SELECT").into());
            }
            Projection::Vars(vars)
        };
        if self.at_keyword("where") {
            self.advance();
        }
        let brace = self.peek().clone();
        self.expect(Tok::LBrace, "'{' to open the WHERE clause")?;
        let patterns = self.triples_block()?;
        self.expect(Tok::RBrace, "'}' to close the WHERE clause")?;
        if self.peek().tok != Tok::Eof {
            return Err(self.unexpected("end of query").into());
        }
        if patterns.is_empty() {
            return Err(brace.error("expected at least one triple pattern in WHERE clause").into());
        }

        let mut prefixes = self.defaults.clone();
        prefixes.extend(std::mem::take(&mut self.prefixes));
        Query::new(prefixes, projection, distinct, patterns)
    }

    fn triples_block(&mut self) -> Result<Vec<TriplePattern>, QueryError> {
        let mut patterns = Vec::new();
        while self.peek().tok != Tok::RBrace && self.peek().tok != Tok::Eof {
            let subject = self.subject()?;
            self.property_list(&subject, &mut patterns)?;
            if self.peek().tok == Tok::Dot {
                self.advance();
            } else if self.peek().tok != Tok::RBrace {
                return Err(self.unexpected("'.' or '}' after triple pattern").into());
            }
        }
        Ok(patterns)
    }

    fn property_list(&mut self, subject: &PatternTerm, out: &mut Vec<TriplePattern>) -> Result<(), QueryError> {
        loop {
            let predicate = self.verb()?;
            loop {
                let object = self.object()?;
                out.push(TriplePattern {
                    subject: subject.clone(),
                    predicate: predicate.clone(),
                    object,
                });
                if self.peek().tok != Tok::Comma {
                    break;
                }
                self.advance();
            }
            if self.peek().tok != Tok::Semicolon {
                return Ok(());
            }
            while self.peek().tok == Tok::Semicolon {
                self.advance();
            }
            if matches!(self.peek().tok, Tok::Dot | Tok::RBrace) {
                return Ok(());
            }
        }
    }

    fn subject(&mut self) -> Result<PatternTerm, QueryError> {
        match &self.peek().tok {
            Tok::Var(v) => {
                let v = v.clone();
                self.advance();
                Ok(PatternTerm::Var(v))
            }
            Tok::IriRef(_) | Tok::PName { .. } => Ok(PatternTerm::Term(Term::Iri(self.iri()?))),
            Tok::BlankLabel(_) | Tok::LBracket => Err(self.peek().error("blank nodes are not supported in query patterns").into()),
            _ => Err(self.unexpected("subject (variable or IRI)").into()),
        }
    }

    fn verb(&mut self) -> Result<PatternTerm, QueryError> {
        match &self.peek().tok {
            Tok::Var(v) => {
                let v = v.clone();
                self.advance();
                Ok(PatternTerm::Var(v))
            }
            Tok::Word(w) if w == "a" => {
                self.advance();
                Ok(PatternTerm::Term(Term::Iri(Iri::new(rdf::TYPE).expect("constant IRI"))))
            }
            Tok::IriRef(_) | Tok::PName { .. } => Ok(PatternTerm::Term(Term::Iri(self.iri()?))),
            _ => Err(self.unexpected("predicate (variable, IRI or 'a')").into()),
        }
    }

    fn object(&mut self) -> Result<PatternTerm, QueryError> {
        let token = self.peek().clone();
        match &token.tok {
            Tok::Var(v) => {
                self.advance();
                Ok(PatternTerm::Var(v.clone()))
            }
            Tok::IriRef(_) | Tok::PName { .. } => Ok(PatternTerm::Term(Term::Iri(self.iri()?))),
            Tok::Str(_) | Tok::Integer(_) | Tok::Decimal(_) | Tok::Double(_) => {
                Ok(PatternTerm::Term(Term::Literal(self.literal()?)))
            }
            Tok::Word(w) if w == "true" || w == "false" => Ok(PatternTerm::Term(Term::Literal(self.literal()?))),
            Tok::BlankLabel(_) | Tok::LBracket => Err(token.error("blank nodes are not supported in query patterns").into()),
            _ => Err(self.unexpected("object (variable, IRI or literal)").into()),
        }
    }

    fn iri(&mut self) -> Result<Iri, QueryError> {
        let token = self.advance();
        if let Tok::PName { prefix, .. } = &token.tok {
            if !self.prefixes.contains_key(prefix) && !self.defaults.contains_key(prefix) {
                return Err(QueryError::UnresolvedPrefix {
                    prefix: prefix.clone(),
                    line: token.line,
                    column: token.column,
                });
            }
        }
        let mut scope = self.defaults.clone();
        scope.extend(self.prefixes.iter().map(|(k, v)| (k.clone(), v.clone())));
        Ok(resolve_iri(&token, &scope)?)
    }

    fn literal(&mut self) -> Result<Literal, QueryError> {
        let token = self.advance();
        let typed = |lex: &str, dt: &str| Literal::typed(lex, Iri::new(dt).expect("constant IRI")).expect("not langString");
        Ok(match &token.tok {
            Tok::Integer(s) => typed(s, xsd::INTEGER),
            Tok::Decimal(s) => typed(s, xsd::DECIMAL),
            Tok::Double(s) => typed(s, xsd::DOUBLE),
            Tok::Word(w) => typed(w, xsd::BOOLEAN),
            Tok::Str(lexical) => match &self.peek().tok {
                Tok::LangTag(tag) => {
                    let tag = tag.clone();
                    let at = self.advance();
                    Literal::lang(lexical.clone(), &tag).map_err(|e| at.error(e.to_string()))?
                }
                Tok::DoubleCaret => {
                    self.advance();
                    let at = self.peek().clone();
                    if !matches!(at.tok, Tok::IriRef(_) | Tok::PName { .. }) {
                        return Err(self.unexpected("datatype IRI after '^^'").into());
                    }
                    let dt = self.iri()?;
                    Literal::typed(lexical.clone(), dt).map_err(|e| at.error(e.to_string()))?
                }
                _ => Literal::string(lexical.clone()),
            },
            _ => unreachable!("caller checked for a literal token"),
        })
    }
}
