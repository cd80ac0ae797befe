//! Line-oriented lexing shared by the URM, abacus and Turing-table
//! assemblers, plus the assembled form they all produce.

use crate::error::{Error, Result};
use crate::machine::{code_of_program, Program};
use crate::pairing::{Codec, Nat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    /// 1-based.
    pub column: usize,
}

/// Splits a source line into tokens. `#` starts a comment; `:` and `/` are
/// tokens on their own, as is `->`.
pub(crate) fn lex(line: &str) -> Vec<Token<'_>> {
    let line = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    let mut chars = line.char_indices().peekable();
    while let Some((i, ch)) = chars.next() {
        let single = match ch {
            ':' | '/' => Some(i + 1),
            '-' if chars.peek().map(|&(_, c)| c) == Some('>') => {
                chars.next();
                Some(i + 2)
            }
            _ => None,
        };
        if ch.is_whitespace() || single.is_some() {
            if let Some(s) = start.take() {
                tokens.push(Token {
                    text: &line[s..i],
                    column: s + 1,
                });
            }
            if let Some(end) = single {
                tokens.push(Token {
                    text: &line[i..end],
                    column: i + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push(Token {
            text: &line[s..],
            column: s + 1,
        });
    }
    tokens
}

pub(crate) fn nat(token: &Token<'_>, line: usize) -> Result<Nat> {
    if token.text.is_empty() || !token.text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(
            line,
            token.column,
            format!("expected a natural number, found `{}`", token.text),
        ));
    }
    Ok(token.text.parse().expect("digits parse as a natural"))
}

pub(crate) fn expect(token: Option<&Token<'_>>, want: &str, line: usize, eol: usize) -> Result<()> {
    match token {
        Some(t) if t.text == want => Ok(()),
        Some(t) => Err(Error::parse(
            line,
            t.column,
            format!("expected `{want}`, found `{}`", t.text),
        )),
        None => Err(Error::parse(line, eol, format!("expected `{want}`"))),
    }
}

pub(crate) fn operand<'a, 'b>(
    tokens: &'b [Token<'a>],
    index: usize,
    line: usize,
    eol: usize,
) -> Result<&'b Token<'a>> {
    tokens
        .get(index)
        .ok_or_else(|| Error::parse(line, eol, "missing operand"))
}

pub(crate) fn no_trailing(tokens: &[Token<'_>], used: usize, line: usize) -> Result<()> {
    match tokens.get(used) {
        Some(t) => Err(Error::parse(
            line,
            t.column,
            format!("unexpected `{}`", t.text),
        )),
        None => Ok(()),
    }
}

/// A program map together with its single code number, when that number
/// fits under the resource guard.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assembled {
    pub program: Program,
    pub code: Option<Nat>,
}

impl Assembled {
    pub(crate) fn new(codec: &Codec, program: Program) -> Result<Self> {
        let code = match code_of_program(codec, &program) {
            Ok(code) => Some(code),
            Err(e) if e.is_resource() => None,
            Err(e) => return Err(e),
        };
        Ok(Assembled { program, code })
    }
}
