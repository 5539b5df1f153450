//! Lexer. Tokens carry 1-based line/column positions; `--` starts a
//! comment running to end of line. `a+` and `a-` are single tokens when
//! the `a` is immediately followed by the sign (and not by `->` or `--`).

use super::parse::ParseError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Tok {
    Ident(String),
    Lambda,
    Dot,
    Colon,
    Semi,
    Comma,
    Pipe,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LAngle,
    RAngle,
    Arrow,
    BackArrow,
    Plus,
    Star,
    Amp,
    AtomPos,
    AtomNeg,
    ZeroTy,
    OneTy,
    KwCase,
    KwOf,
    KwInl,
    KwInr,
    KwFst,
    KwSnd,
    KwAbort,
    KwThunk,
    KwForce,
    KwRet,
    KwLet,
    KwIn,
    KwSplit,
    KwAs,
    KwBind,
    KwVar,
    KwTerm,
    KwTop,
    KwF,
    KwU,
    KwO,
    Eof,
}

impl Tok {
    /// How the token reads in diagnostics.
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Lambda => "`\\`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LAngle => "`<`".into(),
            Tok::RAngle => "`>`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::BackArrow => "`<-`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::Amp => "`&`".into(),
            Tok::AtomPos => "`a+`".into(),
            Tok::AtomNeg => "`a-`".into(),
            Tok::ZeroTy => "`0`".into(),
            Tok::OneTy => "`1`".into(),
            Tok::KwCase => "`case`".into(),
            Tok::KwOf => "`of`".into(),
            Tok::KwInl => "`inl`".into(),
            Tok::KwInr => "`inr`".into(),
            Tok::KwFst => "`fst`".into(),
            Tok::KwSnd => "`snd`".into(),
            Tok::KwAbort => "`abort`".into(),
            Tok::KwThunk => "`thunk`".into(),
            Tok::KwForce => "`force`".into(),
            Tok::KwRet => "`ret`".into(),
            Tok::KwLet => "`let`".into(),
            Tok::KwIn => "`in`".into(),
            Tok::KwSplit => "`split`".into(),
            Tok::KwAs => "`as`".into(),
            Tok::KwBind => "`bind`".into(),
            Tok::KwVar => "`var`".into(),
            Tok::KwTerm => "`term`".into(),
            Tok::KwTop => "`Top`".into(),
            Tok::KwF => "`F`".into(),
            Tok::KwU => "`U`".into(),
            Tok::KwO => "`o`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn keyword(s: &str) -> Option<Tok> {
    Some(match s {
        "case" => Tok::KwCase,
        "of" => Tok::KwOf,
        "inl" => Tok::KwInl,
        "inr" => Tok::KwInr,
        "fst" => Tok::KwFst,
        "snd" => Tok::KwSnd,
        "abort" => Tok::KwAbort,
        "thunk" => Tok::KwThunk,
        "force" => Tok::KwForce,
        "ret" => Tok::KwRet,
        "let" => Tok::KwLet,
        "in" => Tok::KwIn,
        "split" => Tok::KwSplit,
        "as" => Tok::KwAs,
        "bind" => Tok::KwBind,
        "var" => Tok::KwVar,
        "term" => Tok::KwTerm,
        "Top" => Tok::KwTop,
        "F" => Tok::KwF,
        "U" => Tok::KwU,
        "o" => Tok::KwO,
        _ => return None,
    })
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

pub fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;
    macro_rules! push {
        ($tok:expr, $l:expr, $c:expr) => {
            toks.push(Token {
                tok: $tok,
                line: $l,
                col: $c,
            })
        };
    }
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let advance = |n: usize, line: &mut usize, col: &mut usize, i: &mut usize| {
            for k in 0..n {
                if chars[*i + k] == '\n' {
                    *line += 1;
                    *col = 1;
                } else {
                    *col += 1;
                }
            }
            *i += n;
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => advance(1, &mut line, &mut col, &mut i),
            '-' if chars.get(i + 1) == Some(&'-') => {
                while i < chars.len() && chars[i] != '\n' {
                    advance(1, &mut line, &mut col, &mut i);
                }
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                push!(Tok::Arrow, l0, c0);
                advance(2, &mut line, &mut col, &mut i);
            }
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) != Some(&'-') => {
                push!(Tok::BackArrow, l0, c0);
                advance(2, &mut line, &mut col, &mut i);
            }
            '\\' => {
                push!(Tok::Lambda, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            '.' => {
                push!(Tok::Dot, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            ':' => {
                push!(Tok::Colon, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            ';' => {
                push!(Tok::Semi, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            ',' => {
                push!(Tok::Comma, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            '|' => {
                push!(Tok::Pipe, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            '(' => {
                push!(Tok::LParen, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            ')' => {
                push!(Tok::RParen, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            '{' => {
                push!(Tok::LBrace, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            '}' => {
                push!(Tok::RBrace, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            '[' => {
                push!(Tok::LBracket, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            ']' => {
                push!(Tok::RBracket, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            '<' => {
                push!(Tok::LAngle, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            '>' => {
                push!(Tok::RAngle, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            '+' => {
                push!(Tok::Plus, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            '*' => {
                push!(Tok::Star, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            '&' => {
                push!(Tok::Amp, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            '0' => {
                push!(Tok::ZeroTy, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            '1' => {
                push!(Tok::OneTy, l0, c0);
                advance(1, &mut line, &mut col, &mut i);
            }
            c if is_ident_start(c) => {
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                let n = j - i;
                // `a+` / `a-`, but `a->` is `a` then an arrow and `a--`
                // starts a comment.
                if word == "a" && chars.get(j) == Some(&'+') {
                    push!(Tok::AtomPos, l0, c0);
                    advance(n + 1, &mut line, &mut col, &mut i);
                } else if word == "a"
                    && chars.get(j) == Some(&'-')
                    && chars.get(j + 1) != Some(&'>')
                    && chars.get(j + 1) != Some(&'-')
                {
                    push!(Tok::AtomNeg, l0, c0);
                    advance(n + 1, &mut line, &mut col, &mut i);
                } else {
                    push!(keyword(&word).unwrap_or(Tok::Ident(word)), l0, c0);
                    advance(n, &mut line, &mut col, &mut i);
                }
            }
            other => {
                return Err(ParseError {
                    line: l0,
                    col: c0,
                    expected: vec!["a token".into()],
                    found: format!("character `{other}`"),
                })
            }
        }
    }
    toks.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(toks)
}
