use num_bigint::BigInt;

use super::{ParseError, ParseErrorKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(&'static str),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

pub(crate) type Spanned = (Tok, usize);

const IDENTS: [&str; 11] = ["theta", "phi", "x", "y", "dtheta", "dphi", "pth", "pph", "h", "hp", "i"];

fn ident(word: &str) -> Option<&'static str> {
    IDENTS.iter().copied().find(|&k| k == word)
}

fn punct(c: char) -> Option<Tok> {
    Some(match c {
        '+' => Tok::Plus,
        '-' => Tok::Minus,
        '*' => Tok::Star,
        '/' => Tok::Slash,
        '^' => Tok::Caret,
        '(' => Tok::LParen,
        ')' => Tok::RParen,
        _ => return None,
    })
}

fn take_while(s: &str, start: usize, pred: impl Fn(char) -> bool) -> usize {
    s[start..]
        .char_indices()
        .find(|&(_, c)| !pred(c))
        .map_or(s.len(), |(i, _)| start + i)
}

pub(crate) fn lex_text(s: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut pos = 0;
    while let Some(c) = s[pos..].chars().next() {
        if c.is_whitespace() {
            pos += c.len_utf8();
        } else if c.is_ascii_digit() {
            let end = take_while(s, pos, |c| c.is_ascii_digit());
            out.push((Tok::Int(s[pos..end].parse().expect("digits")), pos));
            pos = end;
        } else if c.is_ascii_alphabetic() {
            let end = take_while(s, pos, |c| c.is_ascii_alphanumeric() || c == '_');
            let word = &s[pos..end];
            let id = ident(word).ok_or_else(|| {
                ParseError::new(ParseErrorKind::UnknownIdentifier(word.to_string()), pos)
            })?;
            out.push((Tok::Ident(id), pos));
            pos = end;
        } else if let Some(t) = punct(c) {
            out.push((t, pos));
            pos += 1;
        } else {
            return Err(ParseError::new(ParseErrorKind::UnexpectedChar(c), pos));
        }
    }
    Ok(out)
}

fn ends_factor(t: &Tok) -> bool {
    matches!(t, Tok::Ident(_) | Tok::Int(_) | Tok::RParen)
}

fn starts_factor(t: &Tok) -> bool {
    matches!(t, Tok::Ident(_) | Tok::Int(_) | Tok::LParen)
}

/// Lex the LaTeX dialect; juxtaposition becomes an explicit `*`.
pub(crate) fn lex_latex(s: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut raw: Vec<Spanned> = Vec::new();
    let mut pos = 0;
    let expect = |pos: usize, lit: &str| -> Result<usize, ParseError> {
        if s[pos..].starts_with(lit) {
            Ok(pos + lit.len())
        } else {
            let found = s[pos..].chars().next();
            Err(match found {
                Some(c) => ParseError::new(ParseErrorKind::UnexpectedChar(c), pos),
                None => ParseError::new(
                    ParseErrorKind::Unexpected { expected: "more input", found: "end of input".into() },
                    pos,
                ),
            })
        }
    };
    let braced_int = |pos: usize| -> Result<(BigInt, usize), ParseError> {
        let start = expect(pos, "{")?;
        let end = take_while(s, start, |c| c.is_ascii_digit());
        if end == start {
            return Err(ParseError::new(
                ParseErrorKind::Unexpected { expected: "integer", found: s[start..].chars().take(1).collect() },
                start,
            ));
        }
        let n = s[start..end].parse().expect("digits");
        Ok((n, expect(end, "}")?))
    };
    while let Some(c) = s[pos..].chars().next() {
        if c.is_whitespace() {
            pos += c.len_utf8();
        } else if c.is_ascii_digit() {
            let end = take_while(s, pos, |c| c.is_ascii_digit());
            raw.push((Tok::Int(s[pos..end].parse().expect("digits")), pos));
            pos = end;
        } else if c == '\\' {
            let start = pos;
            let end = take_while(s, pos + 1, |c| c.is_ascii_alphabetic());
            match &s[pos + 1..end] {
                "theta" => raw.push((Tok::Ident("theta"), start)),
                "phi" => raw.push((Tok::Ident("phi"), start)),
                "partial" => {
                    let after = expect(end, "_\\")?;
                    let name_end = take_while(s, after, |c| c.is_ascii_alphabetic());
                    let id = match &s[after..name_end] {
                        "theta" => "pth",
                        "phi" => "pph",
                        other => {
                            return Err(ParseError::new(
                                ParseErrorKind::UnknownIdentifier(format!("\\partial_\\{other}")),
                                start,
                            ))
                        }
                    };
                    raw.push((Tok::Ident(id), start));
                    pos = name_end;
                    continue;
                }
                "frac" => {
                    let (num, p) = braced_int(end)?;
                    let (den, p) = braced_int(p)?;
                    raw.push((Tok::Int(num), start));
                    raw.push((Tok::Slash, start));
                    raw.push((Tok::Int(den), start));
                    pos = p;
                    continue;
                }
                other => {
                    return Err(ParseError::new(
                        ParseErrorKind::UnknownIdentifier(format!("\\{other}")),
                        start,
                    ))
                }
            }
            pos = end;
        } else if c == 'h' {
            if s[pos + 1..].starts_with('\'') {
                raw.push((Tok::Ident("hp"), pos));
                pos += 2;
            } else {
                raw.push((Tok::Ident("h"), pos));
                pos += 1;
            }
        } else if matches!(c, 'x' | 'y' | 'i') {
            let id = match c {
                'x' => "x",
                'y' => "y",
                _ => "i",
            };
            raw.push((Tok::Ident(id), pos));
            pos += 1;
        } else if c == '^' {
            raw.push((Tok::Caret, pos));
            if s[pos + 1..].starts_with('{') {
                let (n, p) = braced_int(pos + 1)?;
                raw.push((Tok::Int(n), pos + 1));
                pos = p;
            } else {
                pos += 1;
            }
        } else if let Some(t) = punct(c) {
            raw.push((t, pos));
            pos += 1;
        } else {
            return Err(ParseError::new(ParseErrorKind::UnexpectedChar(c), pos));
        }
    }
    let mut out = Vec::with_capacity(raw.len() * 2);
    for (tok, p) in raw {
        if let Some((prev, _)) = out.last() {
            if ends_factor(prev) && starts_factor(&tok) {
                out.push((Tok::Star, p));
            }
        }
        out.push((tok, p));
    }
    Ok(out)
}
