use super::error::{PddlError, Pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Open,
    Close,
    OpenBrace,
    CloseBrace,
    Word(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

fn is_word_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '(' | ')' | '{' | '}' | ';')
}

/// Splits `text` into tokens. `;` starts a comment.
pub fn tokenize(text: &str) -> Result<Vec<Token>, PddlError> {
    let mut out = Vec::new();
    for (l, line) in text.lines().enumerate() {
        let mut chars = line.char_indices().peekable();
        let mut col = 0;
        while let Some((start, c)) = chars.next() {
            col += 1;
            let pos = Pos::new(l + 1, col);
            match c {
                ';' => break,
                '(' => out.push(Token { tok: Tok::Open, pos }),
                ')' => out.push(Token { tok: Tok::Close, pos }),
                '{' => out.push(Token { tok: Tok::OpenBrace, pos }),
                '}' => out.push(Token { tok: Tok::CloseBrace, pos }),
                c if c.is_whitespace() => {}
                c if c.is_control() => return Err(PddlError::syntax(pos, format!("unexpected character {c:?}"))),
                _ => {
                    let mut end = start + c.len_utf8();
                    while let Some(&(i, next)) = chars.peek() {
                        if !is_word_char(next) {
                            break;
                        }
                        end = i + next.len_utf8();
                        col += 1;
                        chars.next();
                    }
                    out.push(Token { tok: Tok::Word(line[start..end].to_string()), pos });
                }
            }
        }
    }
    Ok(out)
}

/// A parenthesized tree of words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Word(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Word(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn word(&self) -> Option<&str> {
        match self {
            Sexp::Word(w, _) => Some(w),
            Sexp::List(..) => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items, _) => Some(items),
            Sexp::Word(..) => None,
        }
    }

    /// The list's first word, lower-cased, if it has one.
    pub fn head(&self) -> Option<String> {
        self.list()?.first()?.word().map(|w| w.to_lowercase())
    }
}

fn end_pos(text: &str) -> Pos {
    let lines: Vec<&str> = text.lines().collect();
    match lines.last() {
        Some(l) => Pos::new(lines.len(), l.chars().count() + 1),
        None => Pos::new(1, 1),
    }
}

/// Reads exactly one s-expression from `text`.
pub fn read_one(text: &str) -> Result<Sexp, PddlError> {
    let tokens = tokenize(text)?;
    let mut iter = tokens.into_iter().peekable();
    let Some(first) = iter.next() else {
        return Err(PddlError::syntax(Pos::new(1, 1), "expected '(' but the input is empty"));
    };
    if first.tok != Tok::Open {
        return Err(PddlError::syntax(first.pos, "expected '('"));
    }
    let sexp = read_list(first.pos, &mut iter, text)?;
    if let Some(extra) = iter.next() {
        return Err(PddlError::syntax(extra.pos, "unexpected input after the closing ')'"));
    }
    Ok(sexp)
}

fn read_list(open: Pos, iter: &mut impl Iterator<Item = Token>, text: &str) -> Result<Sexp, PddlError> {
    let mut items = Vec::new();
    loop {
        let Some(t) = iter.next() else {
            return Err(PddlError::syntax(end_pos(text), format!("unclosed '(' opened at {open}")));
        };
        match t.tok {
            Tok::Close => return Ok(Sexp::List(items, open)),
            Tok::Open => items.push(read_list(t.pos, iter, text)?),
            Tok::Word(w) => items.push(Sexp::Word(w, t.pos)),
            Tok::OpenBrace | Tok::CloseBrace => {
                return Err(PddlError::syntax(t.pos, "braces are only allowed in plan files"))
            }
        }
    }
}
