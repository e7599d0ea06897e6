//! Trusted decision conversions for the predicates on syntax values.
//!
//! Each one meta-evaluates its closed arguments to constructions, decides
//! the predicate there, and returns the predicate applied to the original
//! arguments (or its negation). Results are flagged in their provenance.

use std::sync::Arc;

use crate::constructions::{
    self, construction_mentions_free, construction_to_term, construction_value, type_value,
};
use crate::syntax::{HolType, Term, TermKind, Var};

use super::connectives::{mk_forall, mk_neg};
use super::names::{IS_PEANO_FORM, IS_PRESBURGER_FORM};
use super::quote_rules::{mk_is_expr_type_rep, mk_is_free_in};
use super::thm::{Provenance, Theorem};
use super::{Kernel, KernelError, Result};

pub const IS_EXPR_TYPE_CONV: &str = "IS_EXPR_TYPE_CONV";
pub const IS_FREE_IN_CONV: &str = "IS_FREE_IN_CONV";
pub const IS_PEANO_FORM_CONV: &str = "IS_PEANO_FORM_CONV";
pub const IS_PRESBURGER_FORM_CONV: &str = "IS_PRESBURGER_FORM_CONV";
pub const CLOSED_CONSTRUCTION_CONV: &str = "CLOSED_CONSTRUCTION_CONV";

fn oracle_thm(name: &str, concl: Term) -> Theorem {
    let mut prov = Provenance::default();
    prov.oracles.insert(name.into());
    Theorem::mk(vec![], concl, Arc::new(prov))
}

fn decided(name: &str, p: Term, holds: bool) -> Result<Theorem> {
    Ok(oracle_thm(name, if holds { p } else { mk_neg(p)? }))
}

fn value(t: &Term) -> Result<Term> {
    if !t.ty().is_epsilon() {
        return Err(KernelError::TypeMismatch(format!(
            "{t:?} has type {}, expected epsilon",
            t.ty()
        )));
    }
    construction_value(t).ok_or_else(|| KernelError::NotClosed(t.clone()))
}

/// Which first-order arithmetic language a predicate must be written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arithmetic {
    Peano,
    Presburger,
}

impl Arithmetic {
    fn constant(self) -> &'static str {
        match self {
            Arithmetic::Peano => IS_PEANO_FORM,
            Arithmetic::Presburger => IS_PRESBURGER_FORM,
        }
    }

    fn conv_name(self) -> &'static str {
        match self {
            Arithmetic::Peano => IS_PEANO_FORM_CONV,
            Arithmetic::Presburger => IS_PRESBURGER_FORM_CONV,
        }
    }
}

/// Whether `t` is `\n:num. p` with `p` a formula of the chosen language.
/// Free variables are allowed here; closedness is a separate condition.
pub fn is_arithmetic_predicate(lang: Arithmetic, t: &Term) -> bool {
    match t.dest_abs() {
        Some((v, body)) => v.ty() == &HolType::num() && is_formula(lang, body),
        None => false,
    }
}

fn num_op(n: usize) -> HolType {
    HolType::fun_n(std::iter::repeat_n(HolType::num(), n), HolType::num())
}

fn is_num_term(lang: Arithmetic, t: &Term) -> bool {
    match t.kind() {
        TermKind::Var(v) => v.ty() == &HolType::num(),
        TermKind::Const(n, ty) => &**n == "_0" && *ty == HolType::num(),
        TermKind::App(..) => {
            let (head, args) = t.strip_app();
            let Some((name, ty)) = head.as_const() else {
                return false;
            };
            let ok_head = match (name, args.len()) {
                ("SUC", 1) => *ty == num_op(1),
                ("+", 2) => *ty == num_op(2),
                ("*", 2) => lang == Arithmetic::Peano && *ty == num_op(2),
                _ => false,
            };
            ok_head && args.iter().all(|a| is_num_term(lang, a))
        }
        _ => false,
    }
}

fn is_formula(lang: Arithmetic, t: &Term) -> bool {
    let b = HolType::bool;
    let bool2 = || HolType::fun_n([b(), b()], b());
    let quant = || HolType::fun(HolType::fun(HolType::num(), b()), b());
    match t.kind() {
        TermKind::Const(n, ty) => (&**n == "T" || &**n == "F") && *ty == b(),
        TermKind::App(..) => {
            let (head, args) = t.strip_app();
            let Some((name, ty)) = head.as_const() else {
                return false;
            };
            match (name, args.len()) {
                ("~", 1) => *ty == HolType::fun(b(), b()) && is_formula(lang, args[0]),
                ("/\\" | "\\/" | "==>", 2) => {
                    *ty == bool2() && is_formula(lang, args[0]) && is_formula(lang, args[1])
                }
                ("=", 2) => {
                    args[0].ty() == &HolType::num()
                        && is_num_term(lang, args[0])
                        && is_num_term(lang, args[1])
                }
                ("!" | "?", 1) => {
                    *ty == quant()
                        && args[0].dest_abs().is_some_and(|(v, body)| {
                            v.ty() == &HolType::num() && is_formula(lang, body)
                        })
                }
                _ => false,
            }
        }
        _ => false,
    }
}

impl Kernel {
    /// `|- isExprType c tyc` or `|- ~(isExprType c tyc)`.
    pub fn is_expr_type_conv(&self, c: &Term, tyc: &Term) -> Result<Theorem> {
        self.check_term(c)?;
        self.check_term(tyc)?;
        if !tyc.ty().is_base(crate::syntax::types::TYPE) {
            return Err(KernelError::TypeMismatch(format!(
                "{tyc:?} is not of type type"
            )));
        }
        let cv = value(c)?;
        let ty = type_value(tyc).ok_or_else(|| KernelError::NotClosed(tyc.clone()))?;
        let holds = matches!(construction_to_term(&cv), Ok(t) if *t.ty() == ty);
        decided(
            IS_EXPR_TYPE_CONV,
            mk_is_expr_type_rep(c.clone(), tyc.clone())?,
            holds,
        )
    }

    /// `|- isFreeIn xc bc` or its negation; `xc` must denote a quoted variable.
    pub fn is_free_in_conv(&self, xc: &Term, bc: &Term) -> Result<Theorem> {
        self.check_term(xc)?;
        self.check_term(bc)?;
        let xv = value(xc)?;
        let x = construction_to_term(&xv)
            .ok()
            .and_then(|t| t.as_var().cloned())
            .ok_or_else(|| {
                KernelError::Construction(constructions::ConstructionError::NotAVariable(format!(
                    "{xc:?}"
                )))
            })?;
        let bv = value(bc)?;
        let holds = construction_mentions_free(&x, &bv);
        decided(
            IS_FREE_IN_CONV,
            mk_is_free_in(xc.clone(), bc.clone())?,
            holds,
        )
    }

    /// `|- isPeanoForm c` (resp. `isPresburgerForm`) or its negation: whether
    /// `c` denotes `\n:num. p` with `p` built from variables of type num,
    /// `_0`, `SUC`, `+`, `*` (Peano only), `=` at num, `T`, `F`, `~`, `/\`,
    /// `\/`, `==>`, and `!`/`?` over num.
    pub fn arithmetic_form_conv(&self, lang: Arithmetic, c: &Term) -> Result<Theorem> {
        self.check_term(c)?;
        let cv = value(c)?;
        let holds = construction_to_term(&cv).is_ok_and(|t| is_arithmetic_predicate(lang, &t));
        let pred = Term::constant(
            lang.constant(),
            HolType::fun(HolType::epsilon(), HolType::bool()),
        );
        decided(lang.conv_name(), Term::app(pred, c.clone())?, holds)
    }

    /// `|- !v. ~(isFreeIn v c)` when `c` denotes a construction with no free
    /// variables.
    pub fn closed_construction_conv(&self, c: &Term) -> Result<Theorem> {
        self.check_term(c)?;
        let cv = value(c)?;
        if !constructions::construction_is_closed(&cv) {
            return Err(KernelError::Shape {
                rule: CLOSED_CONSTRUCTION_CONV,
                msg: format!("{c:?} denotes a construction with free variables"),
            });
        }
        let v = Var::new("v", HolType::epsilon());
        let body = mk_neg(mk_is_free_in(v.to_term(), c.clone())?)?;
        Ok(oracle_thm(CLOSED_CONSTRUCTION_CONV, mk_forall(v, body)?))
    }
}
