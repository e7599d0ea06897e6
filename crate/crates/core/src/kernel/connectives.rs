//! Builders and destructors for the logical connectives.
//!
//! The connectives are ordinary constants, introduced by definitions the
//! kernel installs at start-up (see [`definitions`]).

use crate::syntax::{fresh_variant, HolType, SyntaxError, Term, Var};

use super::names::*;

type Result<T> = std::result::Result<T, SyntaxError>;

fn bool_op2() -> HolType {
    HolType::fun_n([HolType::bool(), HolType::bool()], HolType::bool())
}

fn binder_ty(ty: &HolType) -> HolType {
    HolType::fun(HolType::fun(ty.clone(), HolType::bool()), HolType::bool())
}

pub fn truth() -> Term {
    Term::constant("T", HolType::bool())
}

pub fn falsity() -> Term {
    Term::constant("F", HolType::bool())
}

pub fn conj_const() -> Term {
    Term::constant(AND, bool_op2())
}

pub fn imp_const() -> Term {
    Term::constant(IMP, bool_op2())
}

pub fn disj_const() -> Term {
    Term::constant(OR, bool_op2())
}

pub fn neg_const() -> Term {
    Term::constant(NOT, HolType::fun(HolType::bool(), HolType::bool()))
}

pub fn forall_const(ty: &HolType) -> Term {
    Term::constant(FORALL, binder_ty(ty))
}

pub fn exists_const(ty: &HolType) -> Term {
    Term::constant(EXISTS, binder_ty(ty))
}

pub fn mk_conj(p: Term, q: Term) -> Result<Term> {
    Term::apps(conj_const(), [p, q])
}

pub fn mk_imp(p: Term, q: Term) -> Result<Term> {
    Term::apps(imp_const(), [p, q])
}

pub fn mk_disj(p: Term, q: Term) -> Result<Term> {
    Term::apps(disj_const(), [p, q])
}

pub fn mk_neg(p: Term) -> Result<Term> {
    Term::app(neg_const(), p)
}

pub fn mk_forall(v: Var, body: Term) -> Result<Term> {
    let q = forall_const(v.ty());
    Term::app(q, Term::abs(v, body))
}

pub fn mk_exists(v: Var, body: Term) -> Result<Term> {
    let q = exists_const(v.ty());
    Term::app(q, Term::abs(v, body))
}

fn dest_binop<'a>(name: &str, t: &'a Term) -> Option<(&'a Term, &'a Term)> {
    let (f, r) = t.dest_app()?;
    let (c, l) = f.dest_app()?;
    c.is_const_named(name).then_some((l, r))
}

pub fn dest_conj(t: &Term) -> Option<(&Term, &Term)> {
    dest_binop(AND, t)
}

pub fn dest_imp(t: &Term) -> Option<(&Term, &Term)> {
    dest_binop(IMP, t)
}

pub fn dest_disj(t: &Term) -> Option<(&Term, &Term)> {
    dest_binop(OR, t)
}

pub fn dest_neg(t: &Term) -> Option<&Term> {
    let (f, a) = t.dest_app()?;
    f.is_const_named(NOT).then_some(a)
}

fn dest_binder<'a>(name: &str, t: &'a Term) -> Option<(&'a Var, &'a Term)> {
    let (f, a) = t.dest_app()?;
    if !f.is_const_named(name) {
        return None;
    }
    a.dest_abs()
}

pub fn dest_forall(t: &Term) -> Option<(&Var, &Term)> {
    dest_binder(FORALL, t)
}

pub fn dest_exists(t: &Term) -> Option<(&Var, &Term)> {
    dest_binder(EXISTS, t)
}

/// The defining bodies of the connectives, in dependency order.
pub fn definitions() -> Vec<(&'static str, Term)> {
    let b = HolType::bool;
    let p = Var::new("p", b());
    let q = Var::new("q", b());
    let r = Var::new("r", b());
    let bool_id = || Term::abs(p.clone(), p.to_term());
    let a = HolType::var("A");
    let big_p = Var::new("P", HolType::fun(a.clone(), b()));
    let x = Var::new("x", a.clone());
    let f = Var::new("f", HolType::fun_n([b(), b()], b()));

    let t_body = Term::mk_eq(bool_id(), bool_id()).unwrap();
    let and_body = {
        let lhs = Term::abs(
            f.clone(),
            Term::apps(f.to_term(), [p.to_term(), q.to_term()]).unwrap(),
        );
        let rhs = Term::abs(
            f.clone(),
            Term::apps(f.to_term(), [truth(), truth()]).unwrap(),
        );
        Term::abs(
            p.clone(),
            Term::abs(q.clone(), Term::mk_eq(lhs, rhs).unwrap()),
        )
    };
    let imp_body = {
        let pq = mk_conj(p.to_term(), q.to_term()).unwrap();
        Term::abs(
            p.clone(),
            Term::abs(q.clone(), Term::mk_eq(pq, p.to_term()).unwrap()),
        )
    };
    let forall_body = Term::abs(
        big_p.clone(),
        Term::mk_eq(big_p.to_term(), Term::abs(x.clone(), truth())).unwrap(),
    );
    let exists_body = {
        let px = Term::app(big_p.to_term(), x.to_term()).unwrap();
        let inner = mk_forall(x.clone(), mk_imp(px, q.to_term()).unwrap()).unwrap();
        let body = mk_forall(q.clone(), mk_imp(inner, q.to_term()).unwrap()).unwrap();
        Term::abs(big_p.clone(), body)
    };
    let or_body = {
        let pr = mk_imp(p.to_term(), r.to_term()).unwrap();
        let qr = mk_imp(q.to_term(), r.to_term()).unwrap();
        let body = mk_forall(
            r.clone(),
            mk_imp(pr, mk_imp(qr, r.to_term()).unwrap()).unwrap(),
        )
        .unwrap();
        Term::abs(p.clone(), Term::abs(q.clone(), body))
    };
    let f_body = mk_forall(p.clone(), p.to_term()).unwrap();
    let not_body = Term::abs(p.clone(), mk_imp(p.to_term(), falsity()).unwrap());
    vec![
        ("T", t_body),
        (AND, and_body),
        (IMP, imp_body),
        (FORALL, forall_body),
        (EXISTS, exists_body),
        (OR, or_body),
        ("F", f_body),
        (NOT, not_body),
    ]
}

/// `IS-EFFECTIVE-IN(x, b)`, that is `? y. ~((\x. b) y = b)` with `y` a
/// variant of `y` not occurring in `b`.
pub fn mk_is_effective_in(x: &Var, b: &Term) -> Result<Term> {
    let mut avoid = std::collections::BTreeSet::new();
    b.all_var_names(&mut avoid);
    avoid.insert(x.name().into());
    let y = fresh_variant(&Var::new("y", x.ty().clone()), avoid.iter().map(|n| &**n));
    let redex = Term::app(Term::abs(x.clone(), b.clone()), y.to_term())?;
    mk_exists(y, mk_neg(Term::mk_eq(redex, b.clone())?)?)
}

/// Recognizes `~IS-EFFECTIVE-IN(x, b)` for any suitable bound name `y`.
pub fn dest_not_effective(t: &Term) -> Option<(Var, Term)> {
    let (y, body) = dest_exists(dest_neg(t)?)?;
    let (lhs, b) = dest_neg(body)?.dest_eq()?;
    let (lam, arg) = lhs.dest_app()?;
    let (x, b2) = lam.dest_abs()?;
    if arg.as_var() != Some(y) || b2 != b || x == y || x.ty() != y.ty() {
        return None;
    }
    let mut names = std::collections::BTreeSet::new();
    b.all_var_names(&mut names);
    if names.contains(y.name()) {
        return None;
    }
    Some((x.clone(), b.clone()))
}
