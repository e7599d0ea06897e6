//! Type inference for parse trees: monomorphic unification with
//! fresh instances of each constant's generic type.

use std::collections::BTreeMap;

use super::parser::Pre;
use super::{FrontendError, Signature, SourceSpan};
use crate::constructions::str_lit;
use crate::syntax::{HolType, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Ty {
    Meta(usize),
    Var(String),
    App(String, Vec<Ty>),
}

impl Ty {
    fn from_hol(
        t: &HolType,
        vars: &mut BTreeMap<String, Ty>,
        fresh: &mut impl FnMut() -> Ty,
    ) -> Ty {
        match t {
            HolType::Var(n) => vars.entry(n.to_string()).or_insert_with(fresh).clone(),
            HolType::App(c, args) => Ty::App(
                c.to_string(),
                args.iter().map(|a| Ty::from_hol(a, vars, fresh)).collect(),
            ),
        }
    }

    fn rigid(t: &HolType) -> Ty {
        match t {
            HolType::Var(n) => Ty::Var(n.to_string()),
            HolType::App(c, args) => Ty::App(c.to_string(), args.iter().map(Ty::rigid).collect()),
        }
    }

    fn fun(d: Ty, r: Ty) -> Ty {
        Ty::App("fun".into(), vec![d, r])
    }
}

enum ETerm {
    Var(String, Ty, SourceSpan),
    Const(String, Ty, SourceSpan),
    App(Box<ETerm>, Box<ETerm>, SourceSpan),
    Abs(String, Ty, SourceSpan, Box<ETerm>),
    Quote(Box<ETerm>, SourceSpan),
    Hole(Box<ETerm>, Ty, SourceSpan),
    Eval(Box<ETerm>, HolType, SourceSpan),
}

struct Binder {
    name: String,
    ty: Ty,
    declared: Option<HolType>,
}

pub struct Elaborator<'s> {
    sig: &'s dyn Signature,
    metas: Vec<Option<Ty>>,
    scopes: Vec<Binder>,
    free: Vec<(String, Ty)>,
    quote_depth: usize,
}

impl<'s> Elaborator<'s> {
    pub fn new(sig: &'s dyn Signature) -> Self {
        Elaborator {
            sig,
            metas: Vec::new(),
            scopes: Vec::new(),
            free: Vec::new(),
            quote_depth: 0,
        }
    }

    fn fresh(&mut self) -> Ty {
        self.metas.push(None);
        Ty::Meta(self.metas.len() - 1)
    }

    fn shallow(&self, t: &Ty) -> Ty {
        let mut t = t.clone();
        while let Ty::Meta(m) = t {
            match &self.metas[m] {
                Some(u) => t = u.clone(),
                None => break,
            }
        }
        t
    }

    fn occurs(&self, m: usize, t: &Ty) -> bool {
        match self.shallow(t) {
            Ty::Meta(n) => n == m,
            Ty::Var(_) => false,
            Ty::App(_, args) => args.iter().any(|a| self.occurs(m, a)),
        }
    }

    fn unify(&mut self, a: &Ty, b: &Ty) -> bool {
        let (a, b) = (self.shallow(a), self.shallow(b));
        match (&a, &b) {
            (Ty::Meta(m), Ty::Meta(n)) if m == n => true,
            (Ty::Meta(m), t) | (t, Ty::Meta(m)) => {
                if self.occurs(*m, t) {
                    return false;
                }
                self.metas[*m] = Some(t.clone());
                true
            }
            (Ty::Var(x), Ty::Var(y)) => x == y,
            (Ty::App(c, xs), Ty::App(d, ys)) => {
                c == d && xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| self.unify(x, y))
            }
            _ => false,
        }
    }

    fn resolve(&self, t: &Ty) -> Option<HolType> {
        match self.shallow(t) {
            Ty::Meta(_) => None,
            Ty::Var(n) => Some(HolType::var(&n)),
            Ty::App(c, args) => Some(HolType::app(
                &c,
                args.iter()
                    .map(|a| self.resolve(a))
                    .collect::<Option<Vec<_>>>()?,
            )),
        }
    }

    fn show(&self, t: &Ty) -> String {
        match self.shallow(t) {
            Ty::Meta(m) => format!("?{m}"),
            Ty::Var(n) => format!("'{n}"),
            Ty::App(c, args) if c == "fun" && args.len() == 2 => {
                format!("({}->{})", self.show(&args[0]), self.show(&args[1]))
            }
            Ty::App(c, args) if args.is_empty() => c,
            Ty::App(c, args) => format!(
                "({}){c}",
                args.iter()
                    .map(|a| self.show(a))
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }

    fn check_type(&self, t: &HolType, span: &SourceSpan) -> Result<(), FrontendError> {
        match t {
            HolType::Var(_) => Ok(()),
            HolType::App(c, args) => {
                match self.sig.type_arity(c) {
                    Some(n) if n == args.len() => {}
                    Some(n) => {
                        return Err(FrontendError::elab(
                            span.clone(),
                            format!(
                                "type constructor {c} expects {n} arguments, given {}",
                                args.len()
                            ),
                        ))
                    }
                    None => {
                        return Err(FrontendError::elab(
                            span.clone(),
                            format!("unknown type {c}"),
                        ))
                    }
                }
                args.iter().try_for_each(|a| self.check_type(a, span))
            }
        }
    }

    fn ty_of(&self, e: &ETerm) -> Ty {
        match e {
            ETerm::Var(_, t, _) | ETerm::Const(_, t, _) | ETerm::Hole(_, t, _) => t.clone(),
            ETerm::App(f, _, _) => match self.shallow(&self.ty_of(f)) {
                Ty::App(_, args) if args.len() == 2 => args[1].clone(),
                _ => unreachable!("application head unified with a function type"),
            },
            ETerm::Abs(_, t, _, b) => Ty::fun(t.clone(), self.ty_of(b)),
            ETerm::Quote(..) => Ty::App("epsilon".into(), vec![]),
            ETerm::Eval(_, ty, _) => Ty::rigid(ty),
        }
    }

    fn constant(&mut self, name: &str, span: &SourceSpan) -> Option<ETerm> {
        let generic = self.sig.constant_type(name)?;
        let mut vars = BTreeMap::new();
        let mut metas = std::mem::take(&mut self.metas);
        let ty = Ty::from_hol(&generic, &mut vars, &mut || {
            metas.push(None);
            Ty::Meta(metas.len() - 1)
        });
        self.metas = metas;
        Some(ETerm::Const(name.into(), ty, span.clone()))
    }

    fn identifier(
        &mut self,
        name: &str,
        annot: Option<&HolType>,
        span: &SourceSpan,
    ) -> Result<ETerm, FrontendError> {
        // bound variables first; an annotation selects the innermost binder of that type
        let found = self.scopes.iter().rev().find(|b| {
            b.name == name
                && match (annot, &b.declared) {
                    (Some(a), Some(d)) => a == d,
                    _ => true,
                }
        });
        if let Some(b) = found {
            return Ok(ETerm::Var(name.into(), b.ty.clone(), span.clone()));
        }
        let shadowed = self.scopes.iter().any(|b| b.name == name);
        if !shadowed {
            if let Some(c) = self.constant(name, span) {
                return Ok(c);
            }
        }
        let existing = self.free.iter().find(|(n, t)| {
            n == name
                && match annot {
                    Some(a) => self.resolve(t).is_none_or(|r| &r == a),
                    None => true,
                }
        });
        let ty = match existing {
            Some((_, t)) => t.clone(),
            None => {
                let t = self.fresh();
                self.free.push((name.into(), t.clone()));
                t
            }
        };
        Ok(ETerm::Var(name.into(), ty, span.clone()))
    }

    fn mismatch(&self, span: &SourceSpan, what: &str, want: &Ty, got: &Ty) -> FrontendError {
        FrontendError::elab(
            span.clone(),
            format!(
                "{what}: expected type {}, found {}",
                self.show(want),
                self.show(got)
            ),
        )
    }

    fn infer(&mut self, p: &Pre) -> Result<ETerm, FrontendError> {
        match p {
            Pre::Ident(n, span) => self.identifier(n, None, span),
            Pre::Op(op, span) => self
                .constant(op, span)
                .ok_or_else(|| FrontendError::elab(span.clone(), format!("unknown constant {op}"))),
            Pre::Str(s, span) => {
                let lit = str_lit(s);
                let (name, _) = lit.as_const().expect("literal constant");
                Ok(ETerm::Const(
                    name.into(),
                    Ty::App("str".into(), vec![]),
                    span.clone(),
                ))
            }
            Pre::Zero(span) => self
                .constant("_0", span)
                .ok_or_else(|| FrontendError::elab(span.clone(), "0 needs the constant _0")),
            Pre::Annot(inner, ty, span) => {
                self.check_type(ty, span)?;
                let e = match &**inner {
                    Pre::Ident(n, s) => self.identifier(n, Some(ty), s)?,
                    other => self.infer(other)?,
                };
                let got = self.ty_of(&e);
                let want = Ty::rigid(ty);
                if !self.unify(&got, &want) {
                    return Err(self.mismatch(span, "type annotation", &want, &got));
                }
                Ok(e)
            }
            Pre::App(f, a) => {
                let fe = self.infer(f)?;
                let ae = self.infer(a)?;
                let (ft, at) = (self.ty_of(&fe), self.ty_of(&ae));
                let r = self.fresh();
                let want = Ty::fun(at.clone(), r);
                if !self.unify(&ft, &want) {
                    let msg = match self.shallow(&ft) {
                        Ty::App(c, args) if c == "fun" && args.len() == 2 => {
                            return Err(self.mismatch(&a.span(), "argument", &args[0], &at));
                        }
                        _ => format!("{} is not a function", self.show(&ft)),
                    };
                    return Err(FrontendError::elab(f.span(), msg));
                }
                Ok(ETerm::App(Box::new(fe), Box::new(ae), p.span()))
            }
            Pre::Abs(x, ty, span, body) => {
                if let Some(ty) = ty {
                    self.check_type(ty, span)?;
                }
                let t = match ty {
                    Some(ty) => Ty::rigid(ty),
                    None => self.fresh(),
                };
                self.scopes.push(Binder {
                    name: x.clone(),
                    ty: t.clone(),
                    declared: ty.clone(),
                });
                let b = self.infer(body);
                self.scopes.pop();
                Ok(ETerm::Abs(x.clone(), t, span.clone(), Box::new(b?)))
            }
            Pre::Quote(body, span) => {
                self.quote_depth += 1;
                let b = self.infer(body);
                self.quote_depth -= 1;
                Ok(ETerm::Quote(Box::new(b?), span.clone()))
            }
            Pre::Hole(body, span) => {
                if self.quote_depth == 0 {
                    return Err(FrontendError::HoleOutsideQuotation { span: span.clone() });
                }
                // the hole's content lives outside the quotation it sits in
                self.quote_depth -= 1;
                let b = self.infer(body);
                self.quote_depth += 1;
                let b = b?;
                let eps = Ty::App("epsilon".into(), vec![]);
                let got = self.ty_of(&b);
                if !self.unify(&got, &eps) {
                    return Err(self.mismatch(span, "hole content", &eps, &got));
                }
                let slot = self.fresh();
                Ok(ETerm::Hole(Box::new(b), slot, span.clone()))
            }
            Pre::Eval(body, ty, span) => {
                self.check_type(ty, span)?;
                let b = self.infer(body)?;
                let eps = Ty::App("epsilon".into(), vec![]);
                let got = self.ty_of(&b);
                if !self.unify(&got, &eps) {
                    return Err(self.mismatch(span, "evaluated term", &eps, &got));
                }
                Ok(ETerm::Eval(Box::new(b), ty.clone(), span.clone()))
            }
        }
    }

    fn build(&self, e: &ETerm) -> Result<Term, FrontendError> {
        let ty = |t: &Ty, span: &SourceSpan, what: &str| {
            self.resolve(t).ok_or_else(|| {
                FrontendError::elab(
                    span.clone(),
                    format!("cannot infer the type of {what}; add an annotation"),
                )
            })
        };
        let wrap = |span: &SourceSpan| {
            let span = span.clone();
            move |e: crate::syntax::SyntaxError| FrontendError::elab(span, e.to_string())
        };
        Ok(match e {
            ETerm::Var(n, t, span) => Term::var(n, ty(t, span, n)?),
            ETerm::Const(n, t, span) => Term::constant(n, ty(t, span, n)?),
            ETerm::App(f, a, span) => {
                Term::app(self.build(f)?, self.build(a)?).map_err(wrap(span))?
            }
            ETerm::Abs(x, t, span, b) => Term::abs(Var::new(x, ty(t, span, x)?), self.build(b)?),
            ETerm::Quote(b, span) => Term::quote(self.build(b)?).map_err(|e| match e {
                crate::syntax::SyntaxError::NotEvalFree(_) => FrontendError::elab(
                    span.clone(),
                    "a quotation cannot contain eval outside a hole",
                ),
                e => wrap(span)(e),
            })?,
            ETerm::Hole(b, t, span) => {
                Term::hole(self.build(b)?, ty(t, span, "hole")?).map_err(wrap(span))?
            }
            ETerm::Eval(b, t, span) => Term::eval(self.build(b)?, t.clone()).map_err(wrap(span))?,
        })
    }

    /// Elaborates `p`, optionally against an expected type.
    pub fn elaborate(mut self, p: &Pre, expected: Option<&HolType>) -> Result<Term, FrontendError> {
        let e = self.infer(p)?;
        if let Some(want) = expected {
            let got = self.ty_of(&e);
            let want = Ty::rigid(want);
            if !self.unify(&got, &want) {
                return Err(self.mismatch(&p.span(), "term", &want, &got));
            }
        }
        self.build(&e)
    }
}
