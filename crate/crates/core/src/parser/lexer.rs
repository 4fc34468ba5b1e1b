use crate::error::{Error, Result};
use crate::term::{is_alnum, is_symbol_char};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum TokenKind {
    /// Atom name; `quoted` names are never operators.
    Name { text: String, quoted: bool },
    Var(String),
    /// Unsigned decimal digits; the parser applies the sign.
    Int(String),
    Float(f64),
    Open,
    Close,
    OpenList,
    CloseList,
    OpenCurly,
    CloseCurly,
    Comma,
    Bar,
    End,
    Eof,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
    /// Whitespace or a comment precedes the token.
    pub layout_before: bool,
    /// The token is a name immediately followed by `(`.
    pub functional: bool,
}

pub(crate) struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Lexer {
    pub fn new(src: &str) -> Self {
        Lexer {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::syntax(message, self.line, self.column)
    }

    /// Skips whitespace and comments; reports whether anything was skipped.
    fn skip_layout(&mut self) -> Result<bool> {
        let start = self.pos;
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('%') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                Some('/') if self.peek_at(1) == Some('*') => {
                    let (line, column) = (self.line, self.column);
                    self.bump();
                    self.bump();
                    loop {
                        match self.bump() {
                            Some('*') if self.peek() == Some('/') => {
                                self.bump();
                                break;
                            }
                            Some(_) => {}
                            None => {
                                return Err(Error::syntax("unterminated block comment", line, column))
                            }
                        }
                    }
                }
                _ => break,
            }
        }
        Ok(self.pos != start)
    }

    pub fn tokenize(mut self) -> Result<Vec<Token>> {
        let mut tokens = Vec::new();
        loop {
            let layout_before = self.skip_layout()?;
            let (line, column) = (self.line, self.column);
            let kind = match self.peek() {
                None => {
                    tokens.push(Token {
                        kind: TokenKind::Eof,
                        line,
                        column,
                        layout_before,
                        functional: false,
                    });
                    return Ok(tokens);
                }
                Some(c) => self.token(c)?,
            };
            let functional = matches!(kind, TokenKind::Name { .. }) && self.peek() == Some('(');
            tokens.push(Token {
                kind,
                line,
                column,
                layout_before,
                functional,
            });
        }
    }

    fn token(&mut self, c: char) -> Result<TokenKind> {
        if c.is_ascii_digit() {
            return self.number();
        }
        if c == '_' || c.is_uppercase() {
            let text = self.take_while(is_alnum);
            return Ok(TokenKind::Var(text));
        }
        if c.is_alphabetic() {
            let text = self.take_while(is_alnum);
            return Ok(TokenKind::Name {
                text,
                quoted: false,
            });
        }
        match c {
            '(' => self.single(TokenKind::Open),
            ')' => self.single(TokenKind::Close),
            '[' => self.single(TokenKind::OpenList),
            ']' => self.single(TokenKind::CloseList),
            '{' => self.single(TokenKind::OpenCurly),
            '}' => self.single(TokenKind::CloseCurly),
            ',' => self.single(TokenKind::Comma),
            '|' => self.single(TokenKind::Bar),
            '!' | ';' => {
                self.bump();
                Ok(TokenKind::Name {
                    text: c.to_string(),
                    quoted: false,
                })
            }
            '\'' => self.quoted(),
            '.' if self.is_end_dot() => {
                self.bump();
                Ok(TokenKind::End)
            }
            c if is_symbol_char(c) => {
                let text = self.take_while(is_symbol_char);
                Ok(TokenKind::Name {
                    text,
                    quoted: false,
                })
            }
            '"' | '`' => Err(self.error("strings are not supported")),
            other => Err(self.error(format!("unexpected character `{other}`"))),
        }
    }

    fn is_end_dot(&self) -> bool {
        match self.peek_at(1) {
            None => true,
            Some(c) => c.is_whitespace() || c == '%',
        }
    }

    fn single(&mut self, kind: TokenKind) -> Result<TokenKind> {
        self.bump();
        Ok(kind)
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    fn number(&mut self) -> Result<TokenKind> {
        let digits = self.take_while(|c| c.is_ascii_digit());
        let fraction = self.peek() == Some('.')
            && self.peek_at(1).is_some_and(|c| c.is_ascii_digit());
        if !fraction {
            return Ok(TokenKind::Int(digits));
        }
        self.bump();
        let frac = self.take_while(|c| c.is_ascii_digit());
        let mut text = format!("{digits}.{frac}");
        if matches!(self.peek(), Some('e' | 'E')) {
            let sign = matches!(self.peek_at(1), Some('+' | '-'));
            let digit_at = if sign { 2 } else { 1 };
            if self.peek_at(digit_at).is_some_and(|c| c.is_ascii_digit()) {
                text.push('e');
                self.bump();
                if sign {
                    text.push(self.bump().unwrap());
                }
                text.push_str(&self.take_while(|c| c.is_ascii_digit()));
            }
        }
        // special values written by the printer
        for (suffix, value) in [("Inf", f64::INFINITY), ("NaN", f64::NAN)] {
            let matches = suffix
                .chars()
                .enumerate()
                .all(|(i, c)| self.peek_at(i) == Some(c));
            let boundary = !self.peek_at(suffix.len()).is_some_and(is_alnum);
            if matches && boundary {
                for _ in 0..suffix.len() {
                    self.bump();
                }
                return Ok(TokenKind::Float(value));
            }
        }
        text.parse()
            .map(TokenKind::Float)
            .map_err(|_| self.error(format!("bad number `{text}`")))
    }

    fn quoted(&mut self) -> Result<TokenKind> {
        let (line, column) = (self.line, self.column);
        self.bump();
        let mut text = String::new();
        loop {
            match self.bump() {
                None => return Err(Error::syntax("unterminated quoted atom", line, column)),
                Some('\'') => {
                    if self.peek() == Some('\'') {
                        self.bump();
                        text.push('\'');
                    } else {
                        return Ok(TokenKind::Name { text, quoted: true });
                    }
                }
                Some('\\') => match self.bump() {
                    Some('\\') => text.push('\\'),
                    Some('\'') => text.push('\''),
                    Some('"') => text.push('"'),
                    Some('`') => text.push('`'),
                    Some('n') => text.push('\n'),
                    Some('t') => text.push('\t'),
                    Some('r') => text.push('\r'),
                    Some('0') => text.push('\0'),
                    Some('\n') => {}
                    Some(other) => {
                        return Err(self.error(format!("unknown escape `\\{other}`")));
                    }
                    None => return Err(Error::syntax("unterminated quoted atom", line, column)),
                },
                Some(c) => text.push(c),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        Lexer::new(src)
            .tokenize()
            .unwrap()
            .into_iter()
            .map(|t| t.kind)
            .collect()
    }

    fn name(s: &str) -> TokenKind {
        TokenKind::Name {
            text: s.into(),
            quoted: false,
        }
    }

    #[test]
    fn basic_tokens() {
        assert_eq!(
            kinds("p(X) :- q. % done"),
            vec![
                name("p"),
                TokenKind::Open,
                TokenKind::Var("X".into()),
                TokenKind::Close,
                name(":-"),
                name("q"),
                TokenKind::End,
                TokenKind::Eof
            ]
        );
    }

    #[test]
    fn numbers_and_end() {
        assert_eq!(
            kinds("1.5e-3. 7."),
            vec![
                TokenKind::Float(1.5e-3),
                TokenKind::End,
                TokenKind::Int("7".into()),
                TokenKind::End,
                TokenKind::Eof
            ]
        );
        assert_eq!(kinds("X =.. Y")[1], name("=.."));
        assert_eq!(kinds("1.0Inf")[0], TokenKind::Float(f64::INFINITY));
    }

    #[test]
    fn quoted_atoms() {
        assert_eq!(
            kinds(r"'it''s' 'a\nb\\'")[..2],
            [
                TokenKind::Name {
                    text: "it's".into(),
                    quoted: true
                },
                TokenKind::Name {
                    text: "a\nb\\".into(),
                    quoted: true
                }
            ]
        );
        assert!(Lexer::new("'open").tokenize().is_err());
    }

    #[test]
    fn comments_and_layout() {
        let tokens = Lexer::new("a /* c */ b(").tokenize().unwrap();
        assert!(tokens[1].layout_before);
        assert!(tokens[1].functional);
        assert!(Lexer::new("/* open").tokenize().is_err());
    }
}
