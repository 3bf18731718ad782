//! Tokenizer for the algebra definition format. Whitespace separates
//! tokens and is otherwise insignificant; `#` starts a comment running to
//! the end of the line. Positions are 1-based and point at the first byte
//! of the token.

use crate::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Int(String),
    Str(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Colon,
    Semi,
    Comma,
    Star,
    Slash,
    Plus,
    Minus,
    Equals,
    Caret,
    Pipe,
    Arrow,
    Eof,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("identifier `{s}`"),
            TokenKind::Int(s) => format!("integer `{s}`"),
            TokenKind::Str(s) => format!("string \"{s}\""),
            TokenKind::LBrace => "`{`".into(),
            TokenKind::RBrace => "`}`".into(),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
            TokenKind::LBracket => "`[`".into(),
            TokenKind::RBracket => "`]`".into(),
            TokenKind::Colon => "`:`".into(),
            TokenKind::Semi => "`;`".into(),
            TokenKind::Comma => "`,`".into(),
            TokenKind::Star => "`*`".into(),
            TokenKind::Slash => "`/`".into(),
            TokenKind::Plus => "`+`".into(),
            TokenKind::Minus => "`-`".into(),
            TokenKind::Equals => "`=`".into(),
            TokenKind::Caret => "`^`".into(),
            TokenKind::Pipe => "`|`".into(),
            TokenKind::Arrow => "`->`".into(),
            TokenKind::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub col: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while matches!(chars.peek(), Some(c) if c.is_ascii_digit()) {
                s.push(bump(&mut chars));
            }
            tokens.push(Token { kind: TokenKind::Int(s), line: tline, col: tcol });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while matches!(chars.peek(), Some(c) if c.is_ascii_alphanumeric() || *c == '_') {
                s.push(bump(&mut chars));
            }
            tokens.push(Token { kind: TokenKind::Ident(s), line: tline, col: tcol });
            continue;
        }
        if c == '"' {
            bump(&mut chars);
            let mut s = String::new();
            loop {
                match chars.peek() {
                    None | Some('\n') => {
                        return Err(ParseError {
                            line: tline,
                            col: tcol,
                            expected: "closing `\"`".into(),
                            found: "end of line".into(),
                        })
                    }
                    Some('"') => {
                        bump(&mut chars);
                        break;
                    }
                    Some(_) => s.push(bump(&mut chars)),
                }
            }
            tokens.push(Token { kind: TokenKind::Str(s), line: tline, col: tcol });
            continue;
        }
        let kind = match c {
            '{' => TokenKind::LBrace,
            '}' => TokenKind::RBrace,
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            '[' => TokenKind::LBracket,
            ']' => TokenKind::RBracket,
            ':' => TokenKind::Colon,
            ';' => TokenKind::Semi,
            ',' => TokenKind::Comma,
            '*' => TokenKind::Star,
            '/' => TokenKind::Slash,
            '+' => TokenKind::Plus,
            '=' => TokenKind::Equals,
            '^' => TokenKind::Caret,
            '|' => TokenKind::Pipe,
            '-' => {
                bump(&mut chars);
                if matches!(chars.peek(), Some('>')) {
                    bump(&mut chars);
                    tokens.push(Token { kind: TokenKind::Arrow, line: tline, col: tcol });
                } else {
                    tokens.push(Token { kind: TokenKind::Minus, line: tline, col: tcol });
                }
                continue;
            }
            other => {
                return Err(ParseError {
                    line: tline,
                    col: tcol,
                    expected: "a token".into(),
                    found: format!("`{other}`"),
                })
            }
        };
        bump(&mut chars);
        tokens.push(Token { kind, line: tline, col: tcol });
    }
    tokens.push(Token { kind: TokenKind::Eof, line, col });
    Ok(tokens)
}
