use std::fmt;

/// A location in script source. Lines and columns are 1-based; columns
/// count characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub offset: usize,
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Token {
    Ident(String),
    Str(String),
    Number(f64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Eof,
}

impl Token {
    pub fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("identifier `{s}`"),
            Token::Str(s) => format!("string {s:?}"),
            Token::Number(n) => format!("number {n}"),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::LBrace => "`{`".into(),
            Token::RBrace => "`}`".into(),
            Token::Comma => "`,`".into(),
            Token::Semi => "`;`".into(),
            Token::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spanned {
    pub token: Token,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LexError {
    pub pos: Pos,
    pub message: String,
}

pub fn tokenize(src: &str) -> Result<Vec<Spanned>, LexError> {
    Lexer { src, chars: src.char_indices().peekable(), line: 1, col: 1 }.run()
}

struct Lexer<'a> {
    src: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    line: usize,
    col: usize,
}

impl Lexer<'_> {
    fn pos(&mut self) -> Pos {
        let offset = self.chars.peek().map_or(self.src.len(), |(i, _)| *i);
        Pos { offset, line: self.line, col: self.col }
    }

    fn bump(&mut self) -> Option<char> {
        let (_, c) = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|(_, c)| *c)
    }

    fn run(mut self) -> Result<Vec<Spanned>, LexError> {
        let mut out = Vec::new();
        loop {
            while self.peek().is_some_and(char::is_whitespace) {
                self.bump();
            }
            let pos = self.pos();
            let Some(c) = self.peek() else {
                out.push(Spanned { token: Token::Eof, pos });
                return Ok(out);
            };
            let token = match c {
                '(' | ')' | '{' | '}' | ',' | ';' => {
                    self.bump();
                    match c {
                        '(' => Token::LParen,
                        ')' => Token::RParen,
                        '{' => Token::LBrace,
                        '}' => Token::RBrace,
                        ',' => Token::Comma,
                        _ => Token::Semi,
                    }
                }
                '"' => self.string(pos)?,
                '0'..='9' => self.number(pos)?,
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut ident = String::new();
                    while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
                        ident.push(c);
                        self.bump();
                    }
                    Token::Ident(ident)
                }
                other => return Err(LexError { pos, message: format!("unexpected character {other:?}") }),
            };
            out.push(Spanned { token, pos });
        }
    }

    fn string(&mut self, start: Pos) -> Result<Token, LexError> {
        self.bump();
        let mut s = String::new();
        loop {
            let pos = self.pos();
            match self.bump() {
                None => return Err(LexError { pos: start, message: "unterminated string".into() }),
                Some('"') => return Ok(Token::Str(s)),
                Some('\\') => {
                    let c = match self.bump() {
                        Some('"') => '"',
                        Some('\\') => '\\',
                        Some('/') => '/',
                        Some('n') => '\n',
                        Some('t') => '\t',
                        Some('r') => '\r',
                        Some('b') => '\u{8}',
                        Some('f') => '\u{c}',
                        Some('u') => self.unicode_escape(pos)?,
                        _ => return Err(LexError { pos, message: "invalid escape sequence".into() }),
                    };
                    s.push(c);
                }
                Some(c) if (c as u32) < 0x20 && c != '\n' && c != '\t' && c != '\r' => {
                    return Err(LexError { pos, message: "control character in string".into() })
                }
                Some(c) => s.push(c),
            }
        }
    }

    fn hex4(&mut self, pos: Pos) -> Result<u32, LexError> {
        let mut v = 0;
        for _ in 0..4 {
            let d = self
                .bump()
                .and_then(|c| c.to_digit(16))
                .ok_or(LexError { pos, message: "invalid \\u escape".into() })?;
            v = v * 16 + d;
        }
        Ok(v)
    }

    fn unicode_escape(&mut self, pos: Pos) -> Result<char, LexError> {
        let hi = self.hex4(pos)?;
        let code = if (0xD800..0xDC00).contains(&hi) {
            if self.bump() != Some('\\') || self.bump() != Some('u') {
                return Err(LexError { pos, message: "unpaired surrogate".into() });
            }
            let lo = self.hex4(pos)?;
            if !(0xDC00..0xE000).contains(&lo) {
                return Err(LexError { pos, message: "unpaired surrogate".into() });
            }
            0x10000 + ((hi - 0xD800) << 10) + (lo - 0xDC00)
        } else {
            hi
        };
        char::from_u32(code).ok_or(LexError { pos, message: "invalid code point".into() })
    }

    fn number(&mut self, pos: Pos) -> Result<Token, LexError> {
        let mut text = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            text.push(c);
            self.bump();
        }
        if self.peek() == Some('.') {
            text.push('.');
            self.bump();
            let before = text.len();
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                text.push(c);
                self.bump();
            }
            if text.len() == before {
                return Err(LexError { pos, message: "expected digits after `.`".into() });
            }
        }
        text.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .map(Token::Number)
            .ok_or(LexError { pos, message: format!("invalid number `{text}`") })
    }
}
