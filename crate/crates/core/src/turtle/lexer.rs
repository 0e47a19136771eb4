//! Tokenizer shared by the Turtle and query parsers.

use crate::turtle::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    IriRef(String),
    PName { prefix: String, local: String },
    BlankLabel(String),
    Str(String),
    LangTag(String),
    AtPrefix,
    AtBase,
    DoubleCaret,
    Integer(String),
    Decimal(String),
    Double(String),
    Var(String),
    Word(String),
    Dot,
    Semicolon,
    Comma,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Star,
    Eof,
}

impl Tok {
    /// Token class named in "expected ..." messages.
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::IriRef(_) => "IRI".into(),
            Tok::PName { .. } => "prefixed name".into(),
            Tok::BlankLabel(_) => "blank node label".into(),
            Tok::Str(_) => "string literal".into(),
            Tok::LangTag(_) => "language tag".into(),
            Tok::AtPrefix => "'@prefix'".into(),
            Tok::AtBase => "'@base'".into(),
            Tok::DoubleCaret => "'^^'".into(),
            Tok::Integer(_) | Tok::Decimal(_) | Tok::Double(_) => "numeric literal".into(),
            Tok::Var(_) => "variable".into(),
            Tok::Word(w) => format!("'{w}'"),
            Tok::Dot => "'.'".into(),
            Tok::Semicolon => "';'".into(),
            Tok::Comma => "','".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Star => "'*'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
    /// Source text of the token, for error snippets.
    pub text: String,
}

impl Token {
    pub(crate) fn error(&self, message: impl Into<String>) -> ParseError {
        let snippet = if self.tok == Tok::Eof {
            String::new()
        } else {
            self.text.clone()
        };
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
            snippet,
        }
    }
}

pub(crate) struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Lexer {
    pub(crate) fn new(text: &str) -> Self {
        Lexer {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    /// Tokenizes the whole input, ending with [`Tok::Eof`].
    pub(crate) fn tokenize(mut self) -> Result<Vec<Token>, ParseError> {
        let mut out = Vec::new();
        loop {
            let token = self.next_token()?;
            let done = token.tok == Tok::Eof;
            out.push(token);
            if done {
                return Ok(out);
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error_here(&self, line: usize, column: usize, start: usize, message: impl Into<String>) -> ParseError {
        let end = (self.pos.max(start + 1)).min(self.chars.len());
        let mut snippet: String = self.chars[start.min(end)..end].iter().collect();
        if snippet.is_empty() {
            snippet = self.chars[start.min(self.chars.len())..].iter().take(1).collect();
        }
        ParseError {
            line,
            column,
            message: message.into(),
            snippet,
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn next_token(&mut self) -> Result<Token, ParseError> {
        self.skip_trivia();
        let (line, column, start) = (self.line, self.column, self.pos);
        let Some(c) = self.peek() else {
            return Ok(Token {
                tok: Tok::Eof,
                line,
                column,
                text: String::new(),
            });
        };
        let tok = match c {
            '<' => self.iri_ref(line, column, start)?,
            '"' => self.string(line, column, start)?,
            '@' => self.at_word(line, column, start)?,
            '^' => {
                self.bump();
                if self.peek() == Some('^') {
                    self.bump();
                    Tok::DoubleCaret
                } else {
                    return Err(self.error_here(line, column, start, "expected '^^' before datatype IRI"));
                }
            }
            '?' | '$' => {
                self.bump();
                let name = self.take_while(|c| c.is_alphanumeric() || c == '_');
                if name.is_empty() {
                    return Err(self.error_here(line, column, start, "expected variable name after '?'"));
                }
                Tok::Var(name)
            }
            '_' if self.peek_at(1) == Some(':') => {
                self.bump();
                self.bump();
                let label = self.name_chars();
                if label.is_empty() {
                    return Err(self.error_here(line, column, start, "expected blank node label after '_:'"));
                }
                Tok::BlankLabel(label)
            }
            '0'..='9' => self.number(line, column, start)?,
            '+' | '-' if self.starts_number(1) => self.number(line, column, start)?,
            '.' if self.peek_at(1).is_some_and(|d| d.is_ascii_digit()) => self.number(line, column, start)?,
            '.' => self.single(Tok::Dot),
            ';' => self.single(Tok::Semicolon),
            ',' => self.single(Tok::Comma),
            '[' => self.single(Tok::LBracket),
            ']' => self.single(Tok::RBracket),
            '{' => self.single(Tok::LBrace),
            '}' => self.single(Tok::RBrace),
            '(' => self.single(Tok::LParen),
            ')' => self.single(Tok::RParen),
            '*' => self.single(Tok::Star),
            ':' => {
                self.bump();
                Tok::PName {
                    prefix: String::new(),
                    local: self.name_chars(),
                }
            }
            c if c.is_alphabetic() || c == '_' => {
                let word = self.take_while(|c| c.is_alphanumeric() || matches!(c, '_' | '-'));
                if self.peek() == Some(':') {
                    self.bump();
                    Tok::PName {
                        prefix: word,
                        local: self.name_chars(),
                    }
                } else {
                    Tok::Word(word)
                }
            }
            other => {
                self.bump();
                return Err(self.error_here(line, column, start, format!("unexpected character {other:?}")));
            }
        };
        Ok(Token {
            tok,
            line,
            column,
            text: self.chars[start..self.pos].iter().collect(),
        })
    }

    fn single(&mut self, tok: Tok) -> Tok {
        self.bump();
        tok
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }

    /// Local-name characters; a trailing '.' is left for the statement terminator.
    fn name_chars(&mut self) -> String {
        let mut end = self.pos;
        let mut last_non_dot = self.pos;
        while let Some(&c) = self.chars.get(end) {
            if c.is_alphanumeric() || matches!(c, '_' | '-' | '.') {
                end += 1;
                if c != '.' {
                    last_non_dot = end;
                }
            } else {
                break;
            }
        }
        let mut s = String::new();
        while self.pos < last_non_dot {
            s.push(self.bump().expect("within bounds"));
        }
        s
    }

    fn starts_number(&self, offset: usize) -> bool {
        match self.peek_at(offset) {
            Some(d) if d.is_ascii_digit() => true,
            Some('.') => self.peek_at(offset + 1).is_some_and(|d| d.is_ascii_digit()),
            _ => false,
        }
    }

    fn number(&mut self, line: usize, column: usize, start: usize) -> Result<Tok, ParseError> {
        let mut s = String::new();
        if let Some(sign @ ('+' | '-')) = self.peek() {
            s.push(sign);
            self.bump();
        }
        s.push_str(&self.take_while(|c| c.is_ascii_digit()));
        let mut decimal = false;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|d| d.is_ascii_digit()) {
            decimal = true;
            s.push('.');
            self.bump();
            s.push_str(&self.take_while(|c| c.is_ascii_digit()));
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            let mut exp = String::from(e);
            let mut offset = 1;
            if let Some(sign @ ('+' | '-')) = self.peek_at(1) {
                exp.push(sign);
                offset = 2;
            }
            if !self.peek_at(offset).is_some_and(|d| d.is_ascii_digit()) {
                self.bump();
                return Err(self.error_here(line, column, start, "expected exponent digits in numeric literal"));
            }
            for _ in 0..offset {
                self.bump();
            }
            s.push_str(&exp);
            s.push_str(&self.take_while(|c| c.is_ascii_digit()));
            return Ok(Tok::Double(s));
        }
        Ok(if decimal { Tok::Decimal(s) } else { Tok::Integer(s) })
    }

    fn iri_ref(&mut self, line: usize, column: usize, start: usize) -> Result<Tok, ParseError> {
        self.bump();
        let mut s = String::new();
        loop {
            match self.peek() {
                Some('>') => {
                    self.bump();
                    return Ok(Tok::IriRef(s));
                }
                Some(c) if c.is_whitespace() || c == '<' || c == '"' => {
                    return Err(self.error_here(line, column, start, "expected '>' to close IRI"));
                }
                Some(c) => {
                    s.push(c);
                    self.bump();
                }
                None => return Err(self.error_here(line, column, start, "expected '>' to close IRI")),
            }
        }
    }

    fn string(&mut self, line: usize, column: usize, start: usize) -> Result<Tok, ParseError> {
        self.bump();
        let mut s = String::new();
        loop {
            let (esc_line, esc_col, esc_start) = (self.line, self.column, self.pos);
            match self.bump() {
                Some('"') => return Ok(Tok::Str(s)),
                Some('\\') => {
                    let unescaped = match self.bump() {
                        Some('"') => '"',
                        Some('\\') => '\\',
                        Some('n') => '\n',
                        Some('t') => '\t',
                        Some('r') => '\r',
                        Some('\'') => '\'',
                        Some(u @ ('u' | 'U')) => {
                            let width = if u == 'u' { 4 } else { 8 };
                            let hex: String = (0..width).filter_map(|_| self.bump()).collect();
                            u32::from_str_radix(&hex, 16)
                                .ok()
                                .filter(|_| hex.len() == width)
                                .and_then(char::from_u32)
                                .ok_or_else(|| {
                                    self.error_here(esc_line, esc_col, esc_start, "expected hex digits in unicode escape")
                                })?
                        }
                        _ => {
                            return Err(self.error_here(
                                esc_line,
                                esc_col,
                                esc_start,
                                "expected escape sequence (\\\" \\\\ \\n \\t \\r)",
                            ))
                        }
                    };
                    s.push(unescaped);
                }
                Some('\n') | None => {
                    return Err(self.error_here(line, column, start, "expected '\"' to close string literal"));
                }
                Some(c) => s.push(c),
            }
        }
    }

    fn at_word(&mut self, line: usize, column: usize, start: usize) -> Result<Tok, ParseError> {
        self.bump();
        let word = self.take_while(|c| c.is_ascii_alphanumeric() || c == '-');
        match word.as_str() {
            "prefix" => Ok(Tok::AtPrefix),
            "base" => Ok(Tok::AtBase),
            tag if crate::model::is_language_tag(tag) => Ok(Tok::LangTag(tag.to_owned())),
            _ => Err(self.error_here(line, column, start, "expected language tag or directive after '@'")),
        }
    }
}
