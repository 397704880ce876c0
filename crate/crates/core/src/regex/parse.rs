//! Recursive-descent parser for the regex dialect.
//!
//! Precedence, tightest first: postfix (`*`, `+`, `{n,}`, `{1,n}`),
//! concatenation, `&`, `|`. Complement is always written `~(...)`.
//! A concatenation whose pieces are bare `.*` around parenthesised operands is
//! read back as the matching sugar node (`.*(x).*` is `Contains(x)`, and so on);
//! `(.*)` in parentheses is an ordinary `Star(AnyChar)`.

use super::ast::{is_meta, CharClass, RegexAst};
use super::RegexError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    LParen,
    RParen,
    Pipe,
    Amp,
    Tilde,
    Star,
    Plus,
    Dot,
    WordBoundary,
    AtLeast(u32),
    AtMost(u32),
    Class(CharClass),
    Literal(String),
}

fn syntax(pos: usize, msg: impl Into<String>) -> RegexError {
    RegexError::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, RegexError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '|' => Tok::Pipe,
            '&' => Tok::Amp,
            '~' => Tok::Tilde,
            '*' => Tok::Star,
            '+' => Tok::Plus,
            '.' => Tok::Dot,
            '\\' => {
                if chars.get(i + 1) == Some(&'b') {
                    i += 2;
                    out.push((start, Tok::WordBoundary));
                    continue;
                }
                return Err(syntax(i, "only \\b escapes are supported"));
            }
            '{' => {
                let (tok, next) = lex_bound(&chars, i)?;
                i = next;
                out.push((start, tok));
                continue;
            }
            '[' => {
                let (class, next) = lex_class(&chars, i)?;
                i = next;
                out.push((start, Tok::Class(class)));
                continue;
            }
            '}' | ']' => return Err(syntax(i, format!("unexpected {c:?}"))),
            _ => {
                let mut s = String::new();
                while i < chars.len() && !is_meta(chars[i]) {
                    s.push(chars[i]);
                    i += 1;
                }
                out.push((start, Tok::Literal(s)));
                continue;
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

/// Literal runs of `text` with their char offsets, in order.
pub(crate) fn literal_tokens(text: &str) -> Result<Vec<(usize, String)>, RegexError> {
    Ok(lex(text)?
        .into_iter()
        .filter_map(|(pos, tok)| match tok {
            Tok::Literal(s) => Some((pos, s)),
            _ => None,
        })
        .collect())
}

fn lex_bound(chars: &[char], open: usize) -> Result<(Tok, usize), RegexError> {
    let mut i = open + 1;
    let number = |i: &mut usize| -> Option<u32> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        if *i == start {
            return None;
        }
        chars[start..*i].iter().collect::<String>().parse().ok()
    };
    let lo = number(&mut i).ok_or_else(|| syntax(open, "malformed bound: expected a number"))?;
    if chars.get(i) != Some(&',') {
        return Err(syntax(open, "malformed bound: expected {N,} or {1,N}"));
    }
    i += 1;
    let hi = number(&mut i);
    if chars.get(i) != Some(&'}') {
        return Err(syntax(open, "malformed bound: missing '}'"));
    }
    i += 1;
    let tok = match hi {
        None => Tok::AtLeast(lo),
        Some(hi) if lo == 1 && hi >= 1 => Tok::AtMost(hi),
        Some(_) => return Err(syntax(open, "malformed bound: only {N,} and {1,N} are allowed")),
    };
    Ok((tok, i))
}

fn lex_class(chars: &[char], open: usize) -> Result<(CharClass, usize), RegexError> {
    let mut i = open + 1;
    let mut items = Vec::new();
    let read = |i: &mut usize| -> Result<char, RegexError> {
        match chars.get(*i) {
            None => Err(syntax(open, "unterminated character class")),
            Some('\\') => {
                let c = *chars.get(*i + 1).ok_or_else(|| syntax(*i, "dangling escape in character class"))?;
                *i += 2;
                Ok(c)
            }
            Some(&c) => {
                *i += 1;
                Ok(c)
            }
        }
    };
    loop {
        match chars.get(i) {
            None => return Err(syntax(open, "unterminated character class")),
            Some(']') => break,
            Some('^') if i == open + 1 => {
                return Err(syntax(i, "negated character classes are not part of the dialect"))
            }
            _ => {}
        }
        let lo = read(&mut i)?;
        if chars.get(i) == Some(&'-') && chars.get(i + 1).is_some_and(|&c| c != ']') {
            i += 1;
            let hi = read(&mut i)?;
            if hi < lo {
                return Err(syntax(i, format!("inverted range {lo}-{hi}")));
            }
            items.push((lo, hi));
        } else {
            items.push((lo, lo));
        }
    }
    let class = CharClass::new(items).ok_or_else(|| syntax(open, "empty character class"))?;
    Ok((class, i + 1))
}

struct Piece {
    ast: RegexAst,
    // a bare `.*`, not wrapped in parentheses
    any_star: bool,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

/// Parses dialect text into a syntax tree.
pub fn parse_regex(text: &str) -> Result<RegexAst, RegexError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, end: text.chars().count() };
    let ast = p.alternation(false)?;
    if let Some((at, tok)) = p.toks.get(p.pos) {
        return Err(match tok {
            Tok::RParen => syntax(*at, "unbalanced ')'"),
            _ => syntax(*at, "unexpected token"),
        });
    }
    Ok(ast)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), RegexError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syntax(self.at(), format!("expected {what}")))
        }
    }

    fn alternation(&mut self, in_word: bool) -> Result<RegexAst, RegexError> {
        let mut items = vec![self.intersection(in_word)?];
        while self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            items.push(self.intersection(in_word)?);
        }
        Ok(nary(items, RegexAst::Or))
    }

    fn intersection(&mut self, in_word: bool) -> Result<RegexAst, RegexError> {
        let mut items = vec![self.sequence(in_word)?];
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            items.push(self.sequence(in_word)?);
        }
        Ok(nary(items, RegexAst::And))
    }

    fn sequence(&mut self, in_word: bool) -> Result<RegexAst, RegexError> {
        let start = self.at();
        let mut pieces: Vec<Piece> = Vec::new();
        loop {
            match self.peek() {
                None | Some(Tok::RParen) | Some(Tok::Pipe) | Some(Tok::Amp) => break,
                Some(Tok::WordBoundary) if in_word => break,
                _ => self.piece(&mut pieces)?,
            }
        }
        if pieces.is_empty() {
            return Err(syntax(start, "empty expression"));
        }
        Ok(assemble(pieces))
    }

    fn piece(&mut self, pieces: &mut Vec<Piece>) -> Result<(), RegexError> {
        let at = self.at();
        let tok = self.toks[self.pos].1.clone();
        self.pos += 1;
        let mut bare_dot = false;
        let mut atom = match tok {
            Tok::LParen => {
                let inner = self.alternation(false)?;
                self.expect(Tok::RParen, "')'")?;
                inner
            }
            Tok::Tilde => {
                self.expect(Tok::LParen, "'(' after '~'")?;
                let inner = self.alternation(false)?;
                self.expect(Tok::RParen, "')'")?;
                RegexAst::Not(Box::new(inner))
            }
            Tok::Dot => {
                bare_dot = true;
                RegexAst::AnyChar
            }
            Tok::Class(c) => RegexAst::Class(c),
            Tok::WordBoundary => {
                let inner = self.alternation(true)?;
                self.expect(Tok::WordBoundary, "closing \\b")?;
                RegexAst::WordBounded(Box::new(inner))
            }
            Tok::Literal(s) => {
                // a postfix operator applies to the last character only
                if self.at_postfix() && s.chars().count() > 1 {
                    let split = s.char_indices().last().map(|(i, _)| i).unwrap_or(0);
                    pieces.push(Piece { ast: RegexAst::Literal(s[..split].to_string()), any_star: false });
                    RegexAst::Literal(s[split..].to_string())
                } else {
                    RegexAst::Literal(s)
                }
            }
            Tok::RParen | Tok::Pipe | Tok::Amp => unreachable!("handled by sequence"),
            Tok::Star | Tok::Plus | Tok::AtLeast(_) | Tok::AtMost(_) => {
                return Err(syntax(at, "postfix operator without operand"))
            }
        };
        let mut postfixes = 0;
        let mut only_star = true;
        while self.at_postfix() {
            let tok = self.toks[self.pos].1.clone();
            self.pos += 1;
            postfixes += 1;
            atom = match tok {
                Tok::Star => RegexAst::Star(Box::new(atom)),
                Tok::Plus => {
                    only_star = false;
                    RegexAst::Plus(Box::new(atom))
                }
                Tok::AtLeast(n) => {
                    only_star = false;
                    RegexAst::RepeatAtLeast(Box::new(atom), n)
                }
                Tok::AtMost(n) => {
                    only_star = false;
                    RegexAst::RepeatAtMost(Box::new(atom), n)
                }
                _ => unreachable!(),
            };
        }
        pieces.push(Piece { ast: atom, any_star: bare_dot && postfixes == 1 && only_star });
        Ok(())
    }

    fn at_postfix(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Star) | Some(Tok::Plus) | Some(Tok::AtLeast(_)) | Some(Tok::AtMost(_))
        )
    }
}

// `x|y|z|w` has no node of its own; longer chains nest to the right.
fn nary(mut items: Vec<RegexAst>, make: fn(Vec<RegexAst>) -> RegexAst) -> RegexAst {
    match items.len() {
        1 => items.pop().unwrap(),
        2 | 3 => make(items),
        _ => {
            let rest = items.split_off(2);
            items.push(nary(rest, make));
            make(items)
        }
    }
}

fn assemble(mut pieces: Vec<Piece>) -> RegexAst {
    let shape: Vec<bool> = pieces.iter().map(|p| p.any_star).collect();
    let boxed = |p: Piece| Box::new(p.ast);
    match shape.as_slice() {
        [true, false, true, false] => {
            let y = pieces.pop().unwrap();
            pieces.pop();
            let x = pieces.pop().unwrap();
            RegexAst::FollowedBy(boxed(x), boxed(y))
        }
        [true, false, true] => {
            pieces.pop();
            RegexAst::Contains(boxed(pieces.pop().unwrap()))
        }
        [false, true] => {
            pieces.pop();
            RegexAst::StartsWith(boxed(pieces.pop().unwrap()))
        }
        [true, false] => RegexAst::EndsWith(boxed(pieces.pop().unwrap())),
        [_] => pieces.pop().unwrap().ast,
        _ => RegexAst::Concat(pieces.into_iter().map(|p| p.ast).collect()),
    }
}
