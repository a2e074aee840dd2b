//! Tokens of the expression language.

use crate::algebra::Rational;

use super::{DslError, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Num(Rational),
    Ident(String),
    /// `phi^*`, `phi*`, `φ*`, `φ^*`
    PhiPull,
    /// `phi_*`, `phi_`, `φ_*`, `φ_`
    PhiPush,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    /// `@` or `∘`
    Compose,
    /// `ᵗ`
    Transpose,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

pub fn lex(src: &str) -> Result<Vec<Token>, DslError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let end_of = |i: usize| chars.get(i).map_or(src.len(), |(b, _)| *b);
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (start, ch) = chars[i];
        let single = |tok: Tok| Token {
            tok,
            span: Span::new(start, end_of(i + 1)),
        };
        match ch {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => out.push(single(Tok::Plus)),
            '-' => out.push(single(Tok::Minus)),
            '*' => out.push(single(Tok::Star)),
            '/' => out.push(single(Tok::Slash)),
            '^' => out.push(single(Tok::Caret)),
            '@' | '∘' => out.push(single(Tok::Compose)),
            'ᵗ' => out.push(single(Tok::Transpose)),
            '(' => out.push(single(Tok::LParen)),
            ')' => out.push(single(Tok::RParen)),
            '[' => out.push(single(Tok::LBracket)),
            ']' => out.push(single(Tok::RBracket)),
            ',' => out.push(single(Tok::Comma)),
            'φ' => {
                let rest: String = chars[i + 1..].iter().take(2).map(|(_, c)| c).collect();
                let (tok, len) = if rest.starts_with("^*") {
                    (Tok::PhiPull, 3)
                } else if rest.starts_with('*') {
                    (Tok::PhiPull, 2)
                } else if rest.starts_with("_*") {
                    (Tok::PhiPush, 3)
                } else if rest.starts_with('_') {
                    (Tok::PhiPush, 2)
                } else {
                    return Err(DslError::lexical(
                        src,
                        Span::new(start, end_of(i + 1)),
                        "expected φ* or φ_*",
                    ));
                };
                out.push(Token {
                    tok,
                    span: Span::new(start, end_of(i + len)),
                });
                i += len;
                continue;
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].1.is_ascii_digit() {
                    j += 1;
                }
                let text = &src[start..end_of(j)];
                let n: num_bigint::BigInt = text.parse().expect("digits");
                out.push(Token {
                    tok: Tok::Num(Rational::from_integer(n)),
                    span: Span::new(start, end_of(j)),
                });
                i = j;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_') {
                    j += 1;
                }
                let word = &src[start..end_of(j)];
                let next = chars.get(j).map(|(_, c)| *c);
                let next2 = chars.get(j + 1).map(|(_, c)| *c);
                let (tok, consumed) = match (word, next, next2) {
                    ("phi", Some('^'), Some('*')) => (Tok::PhiPull, 2),
                    ("phi", Some('*'), _) => (Tok::PhiPull, 1),
                    ("phi_", Some('*'), _) => (Tok::PhiPush, 1),
                    ("phi_", Some('['), _) => (Tok::Ident(word.to_string()), 0),
                    ("phi_", _, _) => (Tok::PhiPush, 0),
                    _ => (Tok::Ident(word.to_string()), 0),
                };
                out.push(Token {
                    tok,
                    span: Span::new(start, end_of(j + consumed)),
                });
                i = j + consumed;
                continue;
            }
            _ => {
                return Err(DslError::lexical(
                    src,
                    Span::new(start, end_of(i + 1)),
                    &format!("unexpected character {ch:?}"),
                ))
            }
        }
        i += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn phi_spellings() {
        for s in ["phi^*", "phi*", "φ*", "φ^*"] {
            assert_eq!(toks(s), vec![Tok::PhiPull], "{s}");
        }
        for s in ["phi_*", "phi_", "φ_*", "φ_"] {
            assert_eq!(toks(s), vec![Tok::PhiPush], "{s}");
        }
        assert_eq!(toks("phi_[l]")[0], Tok::Ident("phi_".into()));
    }

    #[test]
    fn bad_character_has_position() {
        let e = lex("g +\n  $").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
    }
}
