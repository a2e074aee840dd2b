//! Recursive descent parser.
//!
//! ```text
//! expr    := '-'? term (('+' | '-') term)*
//! term    := number? comp ('*' comp)*
//! comp    := postfix ('@' postfix)*
//! postfix := primary ('^' nat | 'ᵗ')*
//! primary := number ('/' number)? | atom | name '[' label ']'
//!          | func '(' expr (',' expr)* ')' | 'tr' '(' expr ')' | '(' expr ')'
//! ```

use num_traits::{ToPrimitive, Zero};

use super::ast::{Atom, Expr, ExprKind, Func, Indexed};
use super::lexer::{lex, Tok, Token};
use super::sort::check;
use super::{DslError, ErrorKind, Span};

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

/// Parses and grade-checks `src`.
pub fn parse(src: &str) -> Result<Expr, DslError> {
    let e = parse_unchecked(src)?;
    check(&e, src)?;
    Ok(e)
}

/// Parses without the grading check.
pub fn parse_unchecked(src: &str) -> Result<Expr, DslError> {
    let mut p = Parser {
        src,
        toks: lex(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(p.err_at(
            t.span,
            ErrorKind::Syntax,
            "unexpected token after expression",
        ));
    }
    Ok(e)
}

fn join(a: Span, b: Span) -> Span {
    Span::new(a.start.min(b.start), a.end.max(b.end))
}

fn node(kind: ExprKind, span: Span) -> Expr {
    Expr { kind, span }
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn peek_tok(&self) -> Option<&Tok> {
        self.peek().map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn end_span(&self) -> Span {
        Span::new(self.src.len(), self.src.len())
    }

    fn err_at(&self, span: Span, kind: ErrorKind, msg: &str) -> DslError {
        DslError::at(self.src, span, kind, msg)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Span, DslError> {
        match self.next() {
            Some(t) if t.tok == tok => Ok(t.span),
            Some(t) => Err(self.err_at(t.span, ErrorKind::Syntax, &format!("expected {what}"))),
            None => Err(self.err_at(
                self.end_span(),
                ErrorKind::Syntax,
                &format!("expected {what}"),
            )),
        }
    }

    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut left = if self.peek_tok() == Some(&Tok::Minus) {
            let start = self.next().map(|t| t.span).unwrap_or_default();
            let t = self.term()?;
            let span = join(start, t.span);
            node(ExprKind::Neg(Box::new(t)), span)
        } else {
            self.term()?
        };
        loop {
            let op = match self.peek_tok() {
                Some(Tok::Plus) => Tok::Plus,
                Some(Tok::Minus) => Tok::Minus,
                _ => return Ok(left),
            };
            self.pos += 1;
            let right = self.term()?;
            let span = join(left.span, right.span);
            let kind = if op == Tok::Plus {
                ExprKind::Add(Box::new(left), Box::new(right))
            } else {
                ExprKind::Sub(Box::new(left), Box::new(right))
            };
            left = node(kind, span);
        }
    }

    fn starts_primary(tok: Option<&Tok>) -> bool {
        matches!(
            tok,
            Some(Tok::Ident(_) | Tok::LParen | Tok::PhiPull | Tok::PhiPush)
        )
    }

    fn term(&mut self) -> Result<Expr, DslError> {
        let mut left = self.comp()?;
        // a leading number juxtaposed with a factor, as in `3g`
        if matches!(left.kind, ExprKind::Num(_)) && Self::starts_primary(self.peek_tok()) {
            let right = self.comp()?;
            let span = join(left.span, right.span);
            left = node(ExprKind::Mul(Box::new(left), Box::new(right)), span);
        }
        while self.peek_tok() == Some(&Tok::Star) {
            self.pos += 1;
            let right = self.comp()?;
            let span = join(left.span, right.span);
            left = node(ExprKind::Mul(Box::new(left), Box::new(right)), span);
        }
        Ok(left)
    }

    fn comp(&mut self) -> Result<Expr, DslError> {
        let mut left = self.postfix()?;
        while self.peek_tok() == Some(&Tok::Compose) {
            self.pos += 1;
            let right = self.postfix()?;
            let span = join(left.span, right.span);
            left = node(ExprKind::Compose(Box::new(left), Box::new(right)), span);
        }
        Ok(left)
    }

    fn postfix(&mut self) -> Result<Expr, DslError> {
        let mut e = self.primary()?;
        loop {
            match self.peek_tok() {
                Some(Tok::Caret) => {
                    self.pos += 1;
                    match self.next() {
                        Some(Token {
                            tok: Tok::Num(n),
                            span,
                        }) => {
                            let k = n
                                .to_integer()
                                .to_u32()
                                .filter(|_| n.is_integer())
                                .ok_or_else(|| {
                                    self.err_at(
                                        span,
                                        ErrorKind::Syntax,
                                        "exponent must be a natural number",
                                    )
                                })?;
                            let s = join(e.span, span);
                            e = node(ExprKind::Pow(Box::new(e), k), s);
                        }
                        Some(t) => {
                            return Err(self.err_at(t.span, ErrorKind::Syntax, "expected exponent"))
                        }
                        None => {
                            return Err(self.err_at(
                                self.end_span(),
                                ErrorKind::Syntax,
                                "expected exponent",
                            ))
                        }
                    }
                }
                Some(Tok::Transpose) => {
                    let span = self.next().map(|t| t.span).unwrap_or_default();
                    let s = join(e.span, span);
                    e = node(ExprKind::Transpose(Box::new(e)), s);
                }
                _ => return Ok(e),
            }
        }
    }

    fn primary(&mut self) -> Result<Expr, DslError> {
        let Some(t) = self.next() else {
            return Err(self.err_at(
                self.end_span(),
                ErrorKind::Syntax,
                "unexpected end of input",
            ));
        };
        match t.tok {
            Tok::Num(n) => {
                if self.peek_tok() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Token {
                            tok: Tok::Num(d),
                            span,
                        }) => {
                            if d.is_zero() {
                                return Err(self.err_at(
                                    span,
                                    ErrorKind::Syntax,
                                    "division by zero",
                                ));
                            }
                            Ok(node(ExprKind::Num(n / d), join(t.span, span)))
                        }
                        Some(u) => {
                            Err(self.err_at(u.span, ErrorKind::Syntax, "expected denominator"))
                        }
                        None => Err(self.err_at(
                            self.end_span(),
                            ErrorKind::Syntax,
                            "expected denominator",
                        )),
                    }
                } else {
                    Ok(node(ExprKind::Num(n), t.span))
                }
            }
            Tok::PhiPull => Ok(node(ExprKind::Atom(Atom::PhiPull), t.span)),
            Tok::PhiPush => Ok(node(ExprKind::Atom(Atom::PhiPush), t.span)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(name) => self.named(name, t.span),
            _ => Err(self.err_at(t.span, ErrorKind::Syntax, "expected a term")),
        }
    }

    fn named(&mut self, name: String, span: Span) -> Result<Expr, DslError> {
        match self.peek_tok() {
            Some(Tok::LBracket) => {
                let kind = Indexed::from_name(&name).ok_or_else(|| {
                    self.err_at(
                        span,
                        ErrorKind::UnknownAtom,
                        &format!("{name}[..] is not an indexed atom"),
                    )
                })?;
                self.pos += 1;
                let label = match self.next() {
                    Some(Token {
                        tok: Tok::Ident(l), ..
                    }) => l,
                    Some(Token {
                        tok: Tok::Num(n), ..
                    }) if n.is_integer() => n.to_integer().to_string(),
                    Some(u) => {
                        return Err(self.err_at(u.span, ErrorKind::Syntax, "expected a line label"))
                    }
                    None => {
                        return Err(self.err_at(
                            self.end_span(),
                            ErrorKind::Syntax,
                            "expected a line label",
                        ))
                    }
                };
                let close = self.expect(Tok::RBracket, "']'")?;
                Ok(node(ExprKind::Indexed(kind, label), join(span, close)))
            }
            Some(Tok::LParen) if name == "tr" || Func::from_name(&name).is_some() => {
                self.pos += 1;
                let mut args = vec![self.expr()?];
                while self.peek_tok() == Some(&Tok::Comma) {
                    self.pos += 1;
                    args.push(self.expr()?);
                }
                let close = self.expect(Tok::RParen, "')'")?;
                let full = join(span, close);
                if name == "tr" {
                    if args.len() != 1 {
                        return Err(self.err_at(full, ErrorKind::Syntax, "tr takes one argument"));
                    }
                    return Ok(node(ExprKind::Transpose(Box::new(args.remove(0))), full));
                }
                let func = Func::from_name(&name).expect("checked above");
                if args.len() != func.arity() {
                    return Err(self.err_at(
                        full,
                        ErrorKind::Syntax,
                        &format!("{name} takes {} argument(s)", func.arity()),
                    ));
                }
                Ok(node(ExprKind::Call(func, args), full))
            }
            _ => match Atom::from_name(&name) {
                Some(a) => Ok(node(ExprKind::Atom(a), span)),
                None => Err(self.err_at(
                    span,
                    ErrorKind::UnknownAtom,
                    &format!("unknown atom {name}"),
                )),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn precedence() {
        let e = parse_unchecked("g + 2*c^2").unwrap();
        assert_eq!(e.to_string(), "g + 2 * c^2");
        let e = parse_unchecked("(1/3)*(g^2 - c)").unwrap();
        match &e.kind {
            ExprKind::Mul(a, _) => assert_eq!(a.kind_num(), Some(rat(1, 3))),
            _ => panic!("not a product"),
        }
    }

    #[test]
    fn errors_have_positions() {
        let e = parse("g + foo").unwrap_err();
        assert_eq!(e.kind, ErrorKind::UnknownAtom);
        assert_eq!((e.line, e.column), (1, 5));
        let e = parse("g + c").unwrap_err();
        assert_eq!(e.kind, ErrorKind::Grading);
        let e = parse("(g").unwrap_err();
        assert_eq!(e.kind, ErrorKind::Syntax);
    }

    impl Expr {
        fn kind_num(&self) -> Option<crate::algebra::Rational> {
            match &self.kind {
                ExprKind::Num(r) => Some(r.clone()),
                _ => None,
            }
        }
    }
}
