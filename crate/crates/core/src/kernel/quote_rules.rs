//! Rules for quotation, evaluation and effectiveness.

use std::sync::Arc;

use crate::constructions::{self, type_to_construction};
use crate::syntax::{HolType, Term, TermKind, Var};

use super::connectives::{mk_conj, mk_disj, mk_imp, mk_is_effective_in, mk_neg};
use super::names::{IS_EXPR_TYPE, IS_FREE_IN};
use super::thm::Theorem;
use super::{Kernel, KernelError, Result};

fn axiom_thm(concl: Term) -> Theorem {
    Theorem::mk(vec![], concl, Arc::default())
}

fn ctor(name: &str) -> Term {
    let ty = constructions::constructor_signatures()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, ty)| ty)
        .expect("known constructor");
    Term::constant(name, ty)
}

/// `isExprType a <rep of ty>`
pub fn mk_is_expr_type(a: Term, ty: &HolType) -> Result<Term> {
    let rep = type_to_construction(ty).map_err(|e| KernelError::TypeArgMalformed(e.to_string()))?;
    mk_is_expr_type_rep(a, rep)
}

pub fn mk_is_expr_type_rep(a: Term, rep: Term) -> Result<Term> {
    let c = Term::constant(
        IS_EXPR_TYPE,
        HolType::fun_n([HolType::epsilon(), HolType::type_rep()], HolType::bool()),
    );
    Ok(Term::apps(c, [a, rep])?)
}

/// `isFreeIn x b`
pub fn mk_is_free_in(x: Term, b: Term) -> Result<Term> {
    let c = Term::constant(
        IS_FREE_IN,
        HolType::fun_n([HolType::epsilon(), HolType::epsilon()], HolType::bool()),
    );
    Ok(Term::apps(c, [x, b])?)
}

fn epsilon_arg(rule: &'static str, t: &Term) -> Result<()> {
    if t.ty().is_epsilon() {
        Ok(())
    } else {
        Err(KernelError::TypeMismatch(format!(
            "{rule}: {t:?} has type {}, expected epsilon",
            t.ty()
        )))
    }
}

impl Kernel {
    /// One step of the law of quotation: `|- Q_ f a _Q = App Q_ f _Q Q_ a _Q`,
    /// `|- Q_ \x. b _Q = Abs Q_ x _Q Q_ b _Q`, `|- Q_ Q_ a _Q _Q = Quo Q_ a _Q`,
    /// or, for a quoted atom, its full construction.
    pub fn law_of_quo_step(&self, q: &Term) -> Result<Theorem> {
        self.check_term(q)?;
        let TermKind::Quote(body, _) = q.kind() else {
            return Err(KernelError::Shape {
                rule: "LAW_OF_QUO",
                msg: format!("not a quotation: {q:?}"),
            });
        };
        if body.has_holes() {
            return Err(KernelError::HasHoles(q.clone()));
        }
        let rhs = match body.kind() {
            TermKind::Var(_) | TermKind::Const(..) => constructions::term_to_construction(body)?,
            TermKind::App(f, a) => Term::apps(
                ctor(constructions::APP),
                [Term::quote(f.clone())?, Term::quote(a.clone())?],
            )?,
            TermKind::Abs(v, b) => Term::apps(
                ctor(constructions::ABS),
                [Term::quote(v.to_term())?, Term::quote(b.clone())?],
            )?,
            TermKind::Quote(..) => Term::app(ctor(constructions::QUO), body.clone())?,
            TermKind::Hole(..) | TermKind::Eval(..) => unreachable!("hole-free quotation body"),
        };
        Ok(axiom_thm(Term::mk_eq(q.clone(), rhs)?))
    }

    /// `|- Q_ t _Q = c` with `c` the closed construction of `t`, obtained by
    /// chaining one-level steps.
    pub fn law_of_quo(&self, q: &Term) -> Result<Theorem> {
        let step = self.law_of_quo_step(q)?;
        let (_, rhs) = step.concl().dest_eq().expect("equation");
        let (head, args) = rhs.strip_app();
        if !args.iter().any(|a| matches!(a.kind(), TermKind::Quote(..))) {
            return Ok(step);
        }
        let mut acc = self.refl(head)?;
        for a in args {
            let th = if matches!(a.kind(), TermKind::Quote(..)) {
                self.law_of_quo(a)?
            } else {
                self.refl(a)?
            };
            acc = self.mk_comb(&acc, &th)?;
        }
        self.trans(&step, &acc)
    }

    /// `|- (eval Q_ a _Q to ty) = a` for a variable or constant `a : ty`.
    pub fn disquo(&self, q: &Term, ty: &HolType) -> Result<Theorem> {
        self.check_term(q)?;
        self.check_type(ty)?;
        let atom = match q.kind() {
            TermKind::Quote(b, _) if matches!(b.kind(), TermKind::Var(_) | TermKind::Const(..)) => {
                b
            }
            _ => return Err(KernelError::NotAtomicQuote(q.clone())),
        };
        if atom.ty() != ty {
            return Err(KernelError::TypeMismatch(format!(
                "DISQUO: {atom:?} has type {}, not {ty}",
                atom.ty()
            )));
        }
        let lhs = Term::eval(q.clone(), ty.clone())?;
        Ok(axiom_thm(Term::mk_eq(lhs, atom.clone())?))
    }

    /// `|- (isExprType a <a->b> /\ isExprType b' <a>) ==>
    ///     (eval (App a b') to b) = (eval a to a->b) (eval b' to a)`
    pub fn app_split(
        &self,
        a: &Term,
        b: &Term,
        alpha: &HolType,
        beta: &HolType,
    ) -> Result<Theorem> {
        self.check_term(a)?;
        self.check_term(b)?;
        self.check_type(alpha)?;
        self.check_type(beta)?;
        epsilon_arg("APP_SPLIT", a)?;
        epsilon_arg("APP_SPLIT", b)?;
        let fty = HolType::fun(alpha.clone(), beta.clone());
        let ante = mk_conj(
            mk_is_expr_type(a.clone(), &fty)?,
            mk_is_expr_type(b.clone(), alpha)?,
        )?;
        let whole = Term::apps(ctor(constructions::APP), [a.clone(), b.clone()])?;
        let lhs = Term::eval(whole, beta.clone())?;
        let rhs = Term::app(
            Term::eval(a.clone(), fty)?,
            Term::eval(b.clone(), alpha.clone())?,
        )?;
        Ok(axiom_thm(mk_imp(ante, Term::mk_eq(lhs, rhs)?)?))
    }

    /// `|- (isExprType a <b> /\ ~(isFreeIn Q_ x _Q Q_ a _Q)) ==>
    ///     (eval (Abs Q_ x _Q a) to x_ty->b) = \x. eval a to b`
    pub fn abs_split(&self, x: &Var, a: &Term, beta: &HolType) -> Result<Theorem> {
        self.check_term(a)?;
        self.check_type(x.ty())?;
        self.check_type(beta)?;
        epsilon_arg("ABS_SPLIT", a)?;
        if !a.is_eval_free() {
            return Err(KernelError::NotEvalFree(a.clone()));
        }
        let qx = Term::quote(x.to_term())?;
        let qa = Term::quote(a.clone())?;
        let ante = mk_conj(
            mk_is_expr_type(a.clone(), beta)?,
            mk_neg(mk_is_free_in(qx.clone(), qa)?)?,
        )?;
        let whole = Term::apps(ctor(constructions::ABS), [qx, a.clone()])?;
        let lhs = Term::eval(whole, HolType::fun(x.ty().clone(), beta.clone()))?;
        let rhs = Term::abs(x.clone(), Term::eval(a.clone(), beta.clone())?);
        Ok(axiom_thm(mk_imp(ante, Term::mk_eq(lhs, rhs)?)?))
    }

    /// `|- isExprType a <epsilon> ==> (eval (Quo a) to epsilon) = a`
    pub fn quotable(&self, a: &Term) -> Result<Theorem> {
        self.check_term(a)?;
        epsilon_arg("QUOTABLE", a)?;
        let ante = mk_is_expr_type(a.clone(), &HolType::epsilon())?;
        let lhs = Term::eval(
            Term::app(ctor(constructions::QUO), a.clone())?,
            HolType::epsilon(),
        )?;
        Ok(axiom_thm(mk_imp(ante, Term::mk_eq(lhs, a.clone())?)?))
    }

    /// `|- (\x. eval b to ty) x = eval b to ty`
    pub fn beta_eval(&self, x: &Var, b: &Term, ty: &HolType) -> Result<Theorem> {
        self.check_term(b)?;
        self.check_type(x.ty())?;
        self.check_type(ty)?;
        epsilon_arg("BETA_EVAL", b)?;
        let ev = Term::eval(b.clone(), ty.clone())?;
        let lhs = Term::app(Term::abs(x.clone(), ev.clone()), x.to_term())?;
        Ok(axiom_thm(Term::mk_eq(lhs, ev)?))
    }

    /// `|- (isExprType ((\x. b) a) <ty> /\ ~(isFreeIn Q_ x _Q ((\x. b) a))) ==>
    ///     (\x. eval b to ty) a = eval ((\x. b) a) to ty`
    pub fn beta_reval(&self, x: &Var, b: &Term, a: &Term, ty: &HolType) -> Result<Theorem> {
        self.check_term(b)?;
        self.check_term(a)?;
        self.check_type(x.ty())?;
        self.check_type(ty)?;
        epsilon_arg("BETA_REVAL", b)?;
        if a.ty() != x.ty() {
            return Err(KernelError::TypeMismatch(format!(
                "BETA_REVAL: argument {a:?} has type {}, binder {x:?} has type {}",
                a.ty(),
                x.ty()
            )));
        }
        let inner = Term::app(Term::abs(x.clone(), b.clone()), a.clone())?;
        let ante = mk_conj(
            mk_is_expr_type(inner.clone(), ty)?,
            mk_neg(mk_is_free_in(Term::quote(x.to_term())?, inner.clone())?)?,
        )?;
        let lhs = Term::app(
            Term::abs(x.clone(), Term::eval(b.clone(), ty.clone())?),
            a.clone(),
        )?;
        let rhs = Term::eval(inner, ty.clone())?;
        Ok(axiom_thm(mk_imp(ante, Term::mk_eq(lhs, rhs)?)?))
    }

    /// `|- ~IS-EFFECTIVE-IN(x, b)` for eval-free `b` in which `x` is not free.
    pub fn not_free_or_effective_in(&self, x: &Var, b: &Term) -> Result<Theorem> {
        self.check_term(b)?;
        self.check_type(x.ty())?;
        if !b.is_eval_free() {
            return Err(KernelError::NotEvalFree(b.clone()));
        }
        if b.is_free_in(x)? {
            return Err(KernelError::FreeOccurrence {
                var: x.clone(),
                term: b.clone(),
            });
        }
        Ok(axiom_thm(mk_neg(mk_is_effective_in(x, b)?)?))
    }

    /// `|- (~IS-EFFECTIVE-IN(y, a) \/ ~IS-EFFECTIVE-IN(x, b)) ==>
    ///     (\x. \y. b) a = \y. (\x. b) a`
    pub fn neither_effective(&self, x: &Var, y: &Var, a: &Term, b: &Term) -> Result<Theorem> {
        self.check_term(a)?;
        self.check_term(b)?;
        self.check_type(x.ty())?;
        self.check_type(y.ty())?;
        if x == y {
            return Err(KernelError::SameVariable(x.clone()));
        }
        if a.ty() != x.ty() {
            return Err(KernelError::TypeMismatch(format!(
                "NEITHER_EFFECTIVE: {a:?} has type {}, binder {x:?} has type {}",
                a.ty(),
                x.ty()
            )));
        }
        let ante = mk_disj(
            mk_neg(mk_is_effective_in(y, a)?)?,
            mk_neg(mk_is_effective_in(x, b)?)?,
        )?;
        let lhs = Term::app(
            Term::abs(x.clone(), Term::abs(y.clone(), b.clone())),
            a.clone(),
        )?;
        let rhs = Term::abs(
            y.clone(),
            Term::app(Term::abs(x.clone(), b.clone()), a.clone())?,
        );
        Ok(axiom_thm(mk_imp(ante, Term::mk_eq(lhs, rhs)?)?))
    }
}
