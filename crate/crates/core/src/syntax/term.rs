//! Terms: variables, constants, applications, abstractions, quotations,
//! holes and evaluations.
//!
//! A `Term` can only be built through the smart constructors below, which
//! check the typing rules on the way up. Each node caches its type and a few
//! structural flags so the kernel never has to re-walk a term to ask whether
//! it is eval-free.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::types::HolType;
use super::SyntaxError;

/// A typed variable. Two variables are the same iff name and type agree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    name: Arc<str>,
    ty: HolType,
}

impl Var {
    pub fn new(name: &str, ty: HolType) -> Self {
        Var {
            name: name.into(),
            ty,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ty(&self) -> &HolType {
        &self.ty
    }

    pub fn with_name(&self, name: &str) -> Var {
        Var::new(name, self.ty.clone())
    }

    pub fn to_term(&self) -> Term {
        Term::from_var(self.clone())
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.ty)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TermKind {
    Var(Var),
    Const(Arc<str>, HolType),
    App(Term, Term),
    Abs(Var, Term),
    /// Quoted body and the body's type.
    Quote(Term, HolType),
    /// Spliced content (of type `epsilon`) and the type of the slot it fills.
    Hole(Term, HolType),
    /// Evaluated content (of type `epsilon`) and the result type.
    Eval(Term, HolType),
}

#[derive(PartialEq, Eq, Hash)]
struct Node {
    kind: TermKind,
    ty: HolType,
    /// No `Eval` node anywhere, hole contents included.
    eval_free: bool,
    /// Some `Eval` occurs outside every hole.
    eval_outside_holes: bool,
    /// Some `Hole` occurs at any depth.
    has_holes: bool,
    /// Some `Hole` is not enclosed by a quotation.
    loose_holes: bool,
}

/// An immutable, cheaply clonable term.
#[derive(Clone)]
pub struct Term(Arc<Node>);

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Term {}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.kind.hash(state)
    }
}

impl Term {
    fn mk(kind: TermKind, ty: HolType) -> Term {
        let (eval_free, eval_outside_holes, has_holes, loose_holes) = match &kind {
            TermKind::Var(_) | TermKind::Const(..) => (true, false, false, false),
            TermKind::App(f, a) => (
                f.0.eval_free && a.0.eval_free,
                f.0.eval_outside_holes || a.0.eval_outside_holes,
                f.0.has_holes || a.0.has_holes,
                f.0.loose_holes || a.0.loose_holes,
            ),
            TermKind::Abs(_, b) => (
                b.0.eval_free,
                b.0.eval_outside_holes,
                b.0.has_holes,
                b.0.loose_holes,
            ),
            TermKind::Quote(b, _) => (b.0.eval_free, false, b.0.has_holes, false),
            TermKind::Hole(c, _) => (c.0.eval_free, false, true, true),
            TermKind::Eval(c, _) => (false, true, c.0.has_holes, c.0.loose_holes),
        };
        Term(Arc::new(Node {
            kind,
            ty,
            eval_free,
            eval_outside_holes,
            has_holes,
            loose_holes,
        }))
    }

    pub fn var(name: &str, ty: HolType) -> Term {
        Self::from_var(Var::new(name, ty))
    }

    pub fn from_var(v: Var) -> Term {
        let ty = v.ty.clone();
        Self::mk(TermKind::Var(v), ty)
    }

    /// A constant occurrence. Whether `ty` is an instance of the constant's
    /// declared type is checked against the session signature by the kernel.
    pub fn constant(name: &str, ty: HolType) -> Term {
        Self::mk(TermKind::Const(name.into(), ty.clone()), ty)
    }

    pub fn app(f: Term, a: Term) -> Result<Term, SyntaxError> {
        let cod = match f.ty().dest_fun() {
            Some((dom, cod)) if dom == a.ty() => cod.clone(),
            Some((dom, _)) => {
                return Err(SyntaxError::IllTyped(format!(
                    "operator expects {dom} but operand has type {}",
                    a.ty()
                )))
            }
            None => {
                return Err(SyntaxError::IllTyped(format!(
                    "operator of type {} is not a function",
                    f.ty()
                )))
            }
        };
        Ok(Self::mk(TermKind::App(f, a), cod))
    }

    /// `f a1 ... an`
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Result<Term, SyntaxError> {
        args.into_iter().try_fold(f, Term::app)
    }

    pub fn abs(v: Var, body: Term) -> Term {
        let ty = HolType::fun(v.ty.clone(), body.ty().clone());
        Self::mk(TermKind::Abs(v, body), ty)
    }

    /// Abstraction over a binder given as a term; the binder must be a variable.
    pub fn abs_term(binder: &Term, body: Term) -> Result<Term, SyntaxError> {
        match binder.kind() {
            TermKind::Var(v) => Ok(Self::abs(v.clone(), body)),
            _ => Err(SyntaxError::NotAVariable(format!("{binder:?}"))),
        }
    }

    /// Quotation of `body`. Evaluations are only allowed inside holes.
    pub fn quote(body: Term) -> Result<Term, SyntaxError> {
        if body.0.eval_outside_holes {
            return Err(SyntaxError::NotEvalFree(format!(
                "cannot quote a term containing an evaluation: {body:?}"
            )));
        }
        let bty = body.ty().clone();
        Ok(Self::mk(TermKind::Quote(body, bty), HolType::epsilon()))
    }

    pub fn hole(content: Term, slot: HolType) -> Result<Term, SyntaxError> {
        if !content.ty().is_epsilon() {
            return Err(SyntaxError::IllTyped(format!(
                "hole content must have type epsilon, found {}",
                content.ty()
            )));
        }
        Ok(Self::mk(TermKind::Hole(content, slot.clone()), slot))
    }

    pub fn eval(content: Term, ty: HolType) -> Result<Term, SyntaxError> {
        if !content.ty().is_epsilon() {
            return Err(SyntaxError::IllTyped(format!(
                "evaluated term must have type epsilon, found {}",
                content.ty()
            )));
        }
        Ok(Self::mk(TermKind::Eval(content, ty.clone()), ty))
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    /// Cached type. Holes report their slot type.
    pub fn ty(&self) -> &HolType {
        &self.0.ty
    }

    /// The type assigned by the formation rules; a hole outside any
    /// quotation has no type.
    pub fn type_of(&self) -> Result<HolType, SyntaxError> {
        if self.0.loose_holes {
            return Err(SyntaxError::HoleOutsideQuotation);
        }
        Ok(self.0.ty.clone())
    }

    pub fn is_eval_free(&self) -> bool {
        self.0.eval_free
    }

    pub fn has_holes(&self) -> bool {
        self.0.has_holes
    }

    pub fn has_loose_holes(&self) -> bool {
        self.0.loose_holes
    }

    pub fn ptr_eq(&self, other: &Term) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self.kind() {
            TermKind::Var(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_const(&self) -> Option<(&str, &HolType)> {
        match self.kind() {
            TermKind::Const(n, ty) => Some((n, ty)),
            _ => None,
        }
    }

    pub fn dest_app(&self) -> Option<(&Term, &Term)> {
        match self.kind() {
            TermKind::App(f, a) => Some((f, a)),
            _ => None,
        }
    }

    pub fn dest_abs(&self) -> Option<(&Var, &Term)> {
        match self.kind() {
            TermKind::Abs(v, b) => Some((v, b)),
            _ => None,
        }
    }

    pub fn is_const_named(&self, name: &str) -> bool {
        matches!(self.kind(), TermKind::Const(n, _) if &**n == name)
    }

    /// Splits `f a1 ... an` into `(f, [a1, ..., an])`.
    pub fn strip_app(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let TermKind::App(f, a) = cur.kind() {
            args.push(a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    /// `(l, r)` when the term is `l = r`.
    pub fn dest_eq(&self) -> Option<(&Term, &Term)> {
        let (f, r) = self.dest_app()?;
        let (eq, l) = f.dest_app()?;
        eq.is_const_named("=").then_some((l, r))
    }

    /// `l = r` at the type of `l`.
    pub fn mk_eq(l: Term, r: Term) -> Result<Term, SyntaxError> {
        let ty = l.ty().clone();
        let eq = Term::constant("=", HolType::fun_n([ty.clone(), ty], HolType::bool()));
        Term::apps(eq, [l, r])
    }

    /// Free variables in first-occurrence order.
    ///
    /// A quotation contributes only the free variables of its hole contents.
    /// Fails on terms that contain an evaluation, where syntactic freeness
    /// does not decide dependence.
    pub fn free_vars(&self) -> Result<Vec<Var>, SyntaxError> {
        if !self.is_eval_free() {
            return Err(SyntaxError::NotEvalFree(format!(
                "free variables are undefined for {self:?}"
            )));
        }
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        Ok(out)
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut Vec<Var>) {
        match self.kind() {
            TermKind::Var(v) => {
                if !bound.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            }
            TermKind::Const(..) => {}
            TermKind::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            TermKind::Abs(v, b) => {
                bound.push(v.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            TermKind::Quote(b, _) => b.for_each_hole(&mut |c| c.collect_free(bound, out)),
            TermKind::Hole(c, _) | TermKind::Eval(c, _) => c.collect_free(bound, out),
        }
    }

    /// Visits the contents of the holes of a quotation body.
    pub fn for_each_hole(&self, f: &mut impl FnMut(&Term)) {
        if !self.has_holes() {
            return;
        }
        match self.kind() {
            TermKind::Hole(c, _) => f(c),
            TermKind::App(a, b) => {
                a.for_each_hole(f);
                b.for_each_hole(f);
            }
            TermKind::Abs(_, b) | TermKind::Quote(b, _) | TermKind::Eval(b, _) => {
                b.for_each_hole(f)
            }
            TermKind::Var(_) | TermKind::Const(..) => {}
        }
    }

    pub fn is_free_in(&self, v: &Var) -> Result<bool, SyntaxError> {
        Ok(self.free_vars()?.contains(v))
    }

    /// A conservative syntactic test that the value of `self` cannot depend
    /// on `x`. Exact (`x` not free) on eval-free terms; an evaluation is only
    /// accepted when it sits under a binder for `x`.
    pub fn syntactically_independent_of(&self, x: &Var) -> bool {
        match self.kind() {
            TermKind::Var(v) => v != x,
            TermKind::Const(..) => true,
            TermKind::App(f, a) => {
                f.syntactically_independent_of(x) && a.syntactically_independent_of(x)
            }
            TermKind::Abs(v, b) => v == x || b.syntactically_independent_of(x),
            TermKind::Quote(b, _) => {
                let mut ok = true;
                b.for_each_hole(&mut |c| ok &= c.syntactically_independent_of(x));
                ok
            }
            TermKind::Hole(c, _) => c.syntactically_independent_of(x),
            TermKind::Eval(..) => false,
        }
    }

    /// Names of every variable occurring anywhere, bound, quoted or free.
    pub fn all_var_names(&self, out: &mut BTreeSet<Arc<str>>) {
        match self.kind() {
            TermKind::Var(v) => {
                out.insert(v.name.clone());
            }
            TermKind::Const(..) => {}
            TermKind::App(f, a) => {
                f.all_var_names(out);
                a.all_var_names(out);
            }
            TermKind::Abs(v, b) => {
                out.insert(v.name.clone());
                b.all_var_names(out);
            }
            TermKind::Quote(b, _) | TermKind::Hole(b, _) | TermKind::Eval(b, _) => {
                b.all_var_names(out)
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self.kind() {
            TermKind::Var(_) | TermKind::Const(..) => 1,
            TermKind::App(f, a) => 1 + f.size() + a.size(),
            TermKind::Abs(_, b)
            | TermKind::Quote(b, _)
            | TermKind::Hole(b, _)
            | TermKind::Eval(b, _) => 1 + b.size(),
        }
    }
}

/// Returns `x` itself when its name is not taken, otherwise `x` with primes
/// appended until the name is fresh.
pub fn fresh_variant<'a>(x: &Var, avoid: impl IntoIterator<Item = &'a str> + Clone) -> Var {
    let taken = |n: &str| avoid.clone().into_iter().any(|a| a == n);
    let mut name = x.name().to_string();
    while taken(&name) {
        name.push('\'');
    }
    x.with_name(&name)
}

/// Equality up to renaming of bound variables.
///
/// Quotation bodies are compared literally (they denote syntax), except for
/// hole contents, which are ordinary terms. A binder may only be renamed when
/// both bodies are eval-free: an evaluation can refer to its enclosing
/// binders by name through the value of its argument.
pub fn alpha_equivalent(s: &Term, t: &Term) -> bool {
    alpha_eq(s, t, &mut Vec::new())
}

fn alpha_eq(s: &Term, t: &Term, env: &mut Vec<(Var, Var)>) -> bool {
    if env.is_empty() && s.ptr_eq(t) {
        return true;
    }
    match (s.kind(), t.kind()) {
        (TermKind::Var(x), TermKind::Var(y)) => {
            for (a, b) in env.iter().rev() {
                if a == x || b == y {
                    return a == x && b == y;
                }
            }
            x == y
        }
        (TermKind::Const(m, ty1), TermKind::Const(n, ty2)) => m == n && ty1 == ty2,
        (TermKind::App(f1, a1), TermKind::App(f2, a2)) => {
            alpha_eq(f1, f2, env) && alpha_eq(a1, a2, env)
        }
        (TermKind::Abs(x, b1), TermKind::Abs(y, b2)) => {
            if x.ty != y.ty {
                return false;
            }
            if x.name != y.name && !(b1.is_eval_free() && b2.is_eval_free()) {
                return false;
            }
            env.push((x.clone(), y.clone()));
            let r = alpha_eq(b1, b2, env);
            env.pop();
            r
        }
        (TermKind::Quote(b1, ty1), TermKind::Quote(b2, ty2)) => {
            ty1 == ty2 && quoted_eq(b1, b2, env)
        }
        (TermKind::Hole(c1, ty1), TermKind::Hole(c2, ty2))
        | (TermKind::Eval(c1, ty1), TermKind::Eval(c2, ty2)) => ty1 == ty2 && alpha_eq(c1, c2, env),
        _ => false,
    }
}

fn quoted_eq(s: &Term, t: &Term, env: &mut Vec<(Var, Var)>) -> bool {
    if !s.has_holes() || !t.has_holes() {
        return s == t;
    }
    match (s.kind(), t.kind()) {
        (TermKind::App(f1, a1), TermKind::App(f2, a2)) => {
            quoted_eq(f1, f2, env) && quoted_eq(a1, a2, env)
        }
        (TermKind::Abs(x, b1), TermKind::Abs(y, b2)) => x == y && quoted_eq(b1, b2, env),
        (TermKind::Quote(b1, ty1), TermKind::Quote(b2, ty2)) => {
            ty1 == ty2 && quoted_eq(b1, b2, env)
        }
        (TermKind::Hole(c1, ty1), TermKind::Hole(c2, ty2)) => ty1 == ty2 && alpha_eq(c1, c2, env),
        _ => false,
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            TermKind::Var(v) => write!(f, "{v:?}"),
            TermKind::Const(n, _) => write!(f, "{n}"),
            TermKind::App(a, b) => write!(f, "({a:?} {b:?})"),
            TermKind::Abs(v, b) => write!(f, "(\\{v:?}. {b:?})"),
            TermKind::Quote(b, _) => write!(f, "Q_ {b:?} _Q"),
            TermKind::Hole(c, _) => write!(f, "H_ {c:?} _H"),
            TermKind::Eval(c, ty) => write!(f, "(eval {c:?} to {ty})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: &str) -> Term {
        Term::var(n, HolType::bool())
    }

    fn e(n: &str) -> Term {
        Term::var(n, HolType::epsilon())
    }

    fn plus3(x: Term) -> Term {
        let num = HolType::num();
        let plus = Term::constant("+", HolType::fun_n([num.clone(), num.clone()], num));
        let three = Term::constant("3", HolType::num());
        Term::apps(plus, [x, three]).unwrap()
    }

    #[test]
    fn type_of_examples() {
        let q = Term::quote(b("x")).unwrap();
        assert_eq!(q.type_of().unwrap(), HolType::epsilon());
        let ev = Term::eval(e("e"), HolType::num()).unwrap();
        assert_eq!(ev.type_of().unwrap(), HolType::num());
        assert_eq!(b("x").type_of().unwrap(), HolType::bool());
    }

    #[test]
    fn ill_typed_application_is_rejected() {
        let f = Term::var("f", HolType::fun(HolType::num(), HolType::bool()));
        assert!(matches!(
            Term::app(f, b("x")),
            Err(SyntaxError::IllTyped(_))
        ));
        assert!(Term::app(b("x"), b("y")).is_err());
    }

    #[test]
    fn loose_hole_has_no_type() {
        let h = Term::hole(e("b"), HolType::bool()).unwrap();
        assert_eq!(h.type_of(), Err(SyntaxError::HoleOutsideQuotation));
        let q = Term::quote(h).unwrap();
        assert_eq!(q.type_of().unwrap(), HolType::epsilon());
    }

    #[test]
    fn eval_freeness() {
        assert!(b("x").is_eval_free());
        assert!(!Term::eval(e("e"), HolType::bool()).unwrap().is_eval_free());
        assert!(Term::quote(b("x")).unwrap().is_eval_free());
        let ev = Term::eval(e("e"), HolType::epsilon()).unwrap();
        let q = Term::quote(Term::hole(ev, HolType::bool()).unwrap()).unwrap();
        assert!(!q.is_eval_free());
    }

    #[test]
    fn quotation_rejects_evaluation() {
        let ev = Term::eval(e("e"), HolType::bool()).unwrap();
        assert!(matches!(Term::quote(ev), Err(SyntaxError::NotEvalFree(_))));
    }

    #[test]
    fn free_variable_examples() {
        let x = Term::var("x", HolType::num());
        let q = Term::quote(plus3(x.clone())).unwrap();
        assert!(q.free_vars().unwrap().is_empty());
        let id = Term::abs(x.as_var().unwrap().clone(), x.clone());
        assert!(id.free_vars().unwrap().is_empty());
        let hole = Term::hole(e("b"), HolType::bool()).unwrap();
        let qh = Term::quote(
            Term::app(
                Term::constant("~", HolType::fun(HolType::bool(), HolType::bool())),
                hole,
            )
            .unwrap(),
        )
        .unwrap();
        assert_eq!(
            qh.free_vars().unwrap(),
            vec![Var::new("b", HolType::epsilon())]
        );
        let ev = Term::eval(e("e"), HolType::bool()).unwrap();
        assert!(ev.free_vars().is_err());
    }

    #[test]
    fn alpha_examples() {
        let x = Var::new("x", HolType::bool());
        let y = Var::new("y", HolType::bool());
        let lx = Term::abs(x.clone(), x.to_term());
        let ly = Term::abs(y.clone(), y.to_term());
        assert!(alpha_equivalent(&lx, &ly));
        let qx = Term::quote(lx.clone()).unwrap();
        let qy = Term::quote(ly).unwrap();
        assert!(!alpha_equivalent(&qx, &qy));
        let ev = Term::eval(e("c"), HolType::bool()).unwrap();
        assert!(alpha_equivalent(&ev, &ev.clone()));
    }

    #[test]
    fn binders_over_evaluations_are_not_renamed() {
        let ev = Term::eval(e("c"), HolType::bool()).unwrap();
        let l1 = Term::abs(Var::new("x", HolType::num()), ev.clone());
        let l2 = Term::abs(Var::new("y", HolType::num()), ev);
        assert!(!alpha_equivalent(&l1, &l2));
        assert!(alpha_equivalent(&l1, &l1.clone()));
    }

    #[test]
    fn fresh_variant_examples() {
        let x = Var::new("x", HolType::bool());
        assert_eq!(fresh_variant(&x, ["x"]).name(), "x'");
        assert_eq!(fresh_variant(&x, [] as [&str; 0]).name(), "x");
        let xp = Var::new("x'", HolType::bool());
        assert_eq!(fresh_variant(&xp, ["x", "x'"]).name(), "x''");
    }

    #[test]
    fn independence_check_is_exact_on_eval_free_terms() {
        let x = Var::new("x", HolType::num());
        let t = plus3(x.to_term());
        assert!(!t.syntactically_independent_of(&x));
        assert!(Term::quote(t.clone())
            .unwrap()
            .syntactically_independent_of(&x));
        let ev = Term::eval(e("f"), HolType::bool()).unwrap();
        assert!(!ev.syntactically_independent_of(&x));
        assert!(Term::abs(x.clone(), ev).syntactically_independent_of(&x));
    }
}
