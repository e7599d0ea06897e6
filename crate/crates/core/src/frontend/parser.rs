use super::lexer::{Tok, Token};
use super::{FrontendError, SourceSpan};
use crate::syntax::HolType;

/// Infix operators: name, precedence, right associativity.
pub const INFIX: [(&str, u8, bool); 7] = [
    ("==>", 1, true),
    ("\\/", 2, true),
    ("/\\", 3, true),
    ("=", 5, false),
    ("<=", 6, false),
    ("+", 7, false),
    ("*", 8, false),
];
pub const NOT_PREC: u8 = 4;
pub const APP_PREC: u8 = 9;
pub const ATOM_PREC: u8 = 10;
pub const BINDERS: [&str; 2] = ["!", "?"];

pub fn infix(name: &str) -> Option<(u8, bool)> {
    INFIX
        .iter()
        .find(|(n, ..)| *n == name)
        .map(|(_, p, r)| (*p, *r))
}

/// Untyped parse tree.
#[derive(Clone, Debug)]
pub enum Pre {
    Ident(String, SourceSpan),
    /// A symbolic constant, either infix/prefix in place or written `(op)`.
    Op(&'static str, SourceSpan),
    Str(String, SourceSpan),
    Zero(SourceSpan),
    Annot(Box<Pre>, HolType, SourceSpan),
    App(Box<Pre>, Box<Pre>),
    Abs(String, Option<HolType>, SourceSpan, Box<Pre>),
    Quote(Box<Pre>, SourceSpan),
    Hole(Box<Pre>, SourceSpan),
    Eval(Box<Pre>, HolType, SourceSpan),
}

impl Pre {
    pub fn span(&self) -> SourceSpan {
        match self {
            Pre::Ident(_, s)
            | Pre::Op(_, s)
            | Pre::Str(_, s)
            | Pre::Zero(s)
            | Pre::Annot(_, _, s)
            | Pre::Abs(_, _, s, _)
            | Pre::Quote(_, s)
            | Pre::Hole(_, s)
            | Pre::Eval(_, _, s) => s.clone(),
            Pre::App(f, a) => f.span().to(&a.span()),
        }
    }

    fn app(f: Pre, a: Pre) -> Pre {
        Pre::App(Box::new(f), Box::new(a))
    }
}

pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    pub fn new(toks: Vec<Token>) -> Parser {
        Parser { toks, pos: 0 }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].span.clone()
    }

    fn prev_span(&self) -> SourceSpan {
        self.toks[self.pos.saturating_sub(1)].span.clone()
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<SourceSpan, FrontendError> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> FrontendError {
        let found = match self.peek() {
            Tok::Eof => "end of input".to_string(),
            t => format!("{t:?}"),
        };
        FrontendError::parse(self.span(), format!("expected {what}, found {found}"))
    }

    pub fn finish(&mut self) -> Result<(), FrontendError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            _ => Err(self.unexpected("end of input")),
        }
    }

    // ---- types ----

    pub fn parse_type(&mut self) -> Result<HolType, FrontendError> {
        let dom = self.type_atom()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let cod = self.parse_type()?;
            Ok(HolType::fun(dom, cod))
        } else {
            Ok(dom)
        }
    }

    fn type_atom(&mut self) -> Result<HolType, FrontendError> {
        match self.peek().clone() {
            Tok::TyVar(n) => {
                self.bump();
                Ok(HolType::var(&n))
            }
            Tok::Ident(n) => {
                self.bump();
                Ok(HolType::base(&n))
            }
            Tok::LParen => {
                self.bump();
                let mut args = vec![self.parse_type()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.parse_type()?);
                }
                let close = self.expect(Tok::RParen, "')' in type")?;
                // `(a,b)name` applies a type constructor; it must follow `)` directly
                if let Tok::Ident(n) = self.peek().clone() {
                    let s = self.span();
                    if s.start_line == close.end_line && s.start_col == close.end_col + 1 {
                        self.bump();
                        return Ok(HolType::app(&n, args));
                    }
                }
                if args.len() == 1 {
                    Ok(args.pop().expect("one type"))
                } else {
                    Err(FrontendError::parse(
                        close,
                        "a type tuple must be followed by a type constructor",
                    ))
                }
            }
            _ => Err(self.unexpected("a type")),
        }
    }

    // ---- terms ----

    pub fn parse_term(&mut self) -> Result<Pre, FrontendError> {
        self.expr(0)
    }

    fn expr(&mut self, min: u8) -> Result<Pre, FrontendError> {
        let mut lhs = self.prefix()?;
        while let Tok::Sym(op) = self.peek() {
            let Some((prec, right)) = infix(op) else {
                break;
            };
            if prec < min {
                break;
            }
            let op = *op;
            let span = self.bump().span;
            let rhs = self.expr(if right { prec } else { prec + 1 })?;
            lhs = Pre::app(Pre::app(Pre::Op(op, span), lhs), rhs);
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Pre, FrontendError> {
        match self.peek() {
            Tok::Lambda => {
                let start = self.bump().span;
                self.binder_body(None, start)
            }
            Tok::Sym(b) if BINDERS.contains(b) => {
                let b = *b;
                let start = self.bump().span;
                self.binder_body(Some(b), start)
            }
            Tok::Sym("~") => {
                let span = self.bump().span;
                let arg = self.expr(NOT_PREC + 1)?;
                Ok(Pre::app(Pre::Op("~", span), arg))
            }
            _ => self.application(),
        }
    }

    fn binder_body(
        &mut self,
        q: Option<&'static str>,
        start: SourceSpan,
    ) -> Result<Pre, FrontendError> {
        let mut vars = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Ident(n) => {
                    let span = self.bump().span;
                    let ty = if *self.peek() == Tok::Colon {
                        self.bump();
                        Some(self.parse_type()?)
                    } else {
                        None
                    };
                    vars.push((n, ty, span));
                }
                Tok::Dot if !vars.is_empty() => {
                    self.bump();
                    break;
                }
                _ => return Err(self.unexpected("a bound variable or '.'")),
            }
        }
        let body = self.expr(0)?;
        Ok(vars.into_iter().rev().fold(body, |body, (n, ty, span)| {
            let abs = Pre::Abs(n, ty, span, Box::new(body));
            match q {
                Some(b) => Pre::app(Pre::Op(b, start.clone()), abs),
                None => abs,
            }
        }))
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_)
                | Tok::LParen
                | Tok::QuoteOpen
                | Tok::HoleOpen
                | Tok::Eval
                | Tok::Str(_)
                | Tok::Zero
        )
    }

    fn application(&mut self) -> Result<Pre, FrontendError> {
        let mut f = self.atom()?;
        while self.starts_atom() {
            let a = self.atom()?;
            f = Pre::app(f, a);
        }
        Ok(f)
    }

    fn atom(&mut self) -> Result<Pre, FrontendError> {
        let base = self.base_atom()?;
        if *self.peek() == Tok::Colon {
            self.bump();
            let ty = self.parse_type()?;
            let span = base.span().to(&self.prev_span());
            return Ok(Pre::Annot(Box::new(base), ty, span));
        }
        Ok(base)
    }

    fn base_atom(&mut self) -> Result<Pre, FrontendError> {
        let start = self.span();
        match self.peek().clone() {
            Tok::Ident(n) => {
                self.bump();
                Ok(Pre::Ident(n, start))
            }
            Tok::Str(s) => {
                self.bump();
                Ok(Pre::Str(s, start))
            }
            Tok::Zero => {
                self.bump();
                Ok(Pre::Zero(start))
            }
            Tok::LParen => {
                self.bump();
                if let (Tok::Sym(op), Tok::RParen) =
                    (self.peek().clone(), self.toks[self.pos + 1].tok.clone())
                {
                    self.bump();
                    let end = self.bump().span;
                    return Ok(Pre::Op(op, start.to(&end)));
                }
                let t = self.expr(0)?;
                self.expect(Tok::RParen, "')'")?;
                Ok(t)
            }
            Tok::QuoteOpen => {
                self.bump();
                let body = self.expr(0)?;
                let end = self.expect(Tok::QuoteClose, "_Q")?;
                Ok(Pre::Quote(Box::new(body), start.to(&end)))
            }
            Tok::HoleOpen => {
                self.bump();
                let body = self.expr(0)?;
                let end = self.expect(Tok::HoleClose, "_H")?;
                Ok(Pre::Hole(Box::new(body), start.to(&end)))
            }
            Tok::Eval => {
                self.bump();
                let body = self.expr(0)?;
                self.expect(Tok::To, "'to'")?;
                let ty = self.parse_type()?;
                Ok(Pre::Eval(Box::new(body), ty, start.to(&self.prev_span())))
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}
