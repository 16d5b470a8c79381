use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    /// Identifier directly followed by `:`.
    Header(String),
    Ident(String),
    Int(usize),
    Str(String),
    Alias(String),
    Punct(char),
    Body,
    End,
    Abort,
    Eof,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn take_while(&mut self, first: char, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::from(first);
        while let Some(c) = self.peek().filter(|&c| pred(c)) {
            s.push(c);
            self.bump();
        }
        s
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

pub(crate) fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut cur = Cursor {
        chars: input.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut out = Vec::new();
    loop {
        let (line, column) = (cur.line, cur.column);
        let Some(c) = cur.bump() else {
            out.push(Token {
                tok: Tok::Eof,
                line,
                column,
            });
            return Ok(out);
        };
        let tok = match c {
            c if c.is_whitespace() => continue,
            '/' if cur.peek() == Some('*') => {
                cur.bump();
                skip_comment(&mut cur, line, column)?;
                continue;
            }
            '"' => Tok::Str(read_string(&mut cur, line, column)?),
            '-' if cur.peek() == Some('-') => {
                let word = cur.take_while(c, |c| c.is_ascii_alphabetic() || c == '-');
                match word.as_str() {
                    "--BODY--" => Tok::Body,
                    "--END--" => Tok::End,
                    "--ABORT--" => Tok::Abort,
                    _ => return Err(Error::syntax(line, column, format!("unknown keyword {word}"))),
                }
            }
            '@' => {
                let name = cur.take_while('@', is_ident_char);
                Tok::Alias(name[1..].to_string())
            }
            c if c.is_ascii_digit() => {
                let digits = cur.take_while(c, |c| c.is_ascii_digit());
                let value = digits
                    .parse()
                    .map_err(|_| Error::syntax(line, column, format!("integer {digits} too large")))?;
                Tok::Int(value)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let word = cur.take_while(c, is_ident_char);
                if cur.peek() == Some(':') {
                    cur.bump();
                    Tok::Header(word)
                } else {
                    Tok::Ident(word)
                }
            }
            '[' | ']' | '{' | '}' | '(' | ')' | '!' | '&' | '|' => Tok::Punct(c),
            other => return Err(Error::syntax(line, column, format!("unexpected character {other:?}"))),
        };
        out.push(Token { tok, line, column });
    }
}

fn skip_comment(cur: &mut Cursor, line: usize, column: usize) -> Result<()> {
    let mut depth = 1;
    while depth > 0 {
        match cur.bump() {
            None => return Err(Error::syntax(line, column, "unterminated comment")),
            Some('*') if cur.peek() == Some('/') => {
                cur.bump();
                depth -= 1;
            }
            Some('/') if cur.peek() == Some('*') => {
                cur.bump();
                depth += 1;
            }
            Some(_) => {}
        }
    }
    Ok(())
}

fn read_string(cur: &mut Cursor, line: usize, column: usize) -> Result<String> {
    let mut s = String::new();
    loop {
        match cur.bump() {
            None => return Err(Error::syntax(line, column, "unterminated string")),
            Some('"') => return Ok(s),
            Some('\\') => match cur.bump() {
                Some(c) => s.push(c),
                None => return Err(Error::syntax(line, column, "unterminated string")),
            },
            Some(c) => s.push(c),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_with_positions() {
        let toks = tokenize("HOA: v1 /* c /* nested */ */\nAP: 1 \"a\\\"b\" @x --BODY--").unwrap();
        let kinds: Vec<Tok> = toks.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Header("HOA".into()),
                Tok::Ident("v1".into()),
                Tok::Header("AP".into()),
                Tok::Int(1),
                Tok::Str("a\"b".into()),
                Tok::Alias("x".into()),
                Tok::Body,
                Tok::Eof,
            ]
        );
        assert_eq!((toks[2].line, toks[2].column), (2, 1));
    }

    #[test]
    fn unterminated_comment() {
        assert!(matches!(tokenize("/* x"), Err(Error::Syntax { line: 1, column: 1, .. })));
    }
}
