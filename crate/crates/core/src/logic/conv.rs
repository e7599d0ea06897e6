//! Conversions and the rules built from them.

use crate::constructions::type_to_construction;
use crate::kernel::connectives::{dest_forall, mk_exists, mk_neg};
use crate::kernel::oracle::Arithmetic;
use crate::kernel::{dest_not_effective, KernelError, Theorem};
use crate::syntax::{alpha_equivalent, HolType, Term, TermKind, Var};

use super::{fail, Logic, LogicError, Result};

impl Logic {
    /// `|- t = t'` where `t'` is `t` with every beta-redex reduced, outside
    /// quotations. A redex whose reduction would only suspend again, or is
    /// blocked by a missing side condition, is left in place.
    pub fn beta_conv_depth(&self, t: &Term) -> Result<Theorem> {
        match self.beta_depth(t)? {
            Some(th) => Ok(th),
            None => Ok(self.kernel.refl(t)?),
        }
    }

    fn beta_depth(&self, t: &Term) -> Result<Option<Theorem>> {
        let k = &self.kernel;
        let inner = match t.kind() {
            TermKind::App(f, a) => {
                let fth = self.beta_depth(f)?;
                let ath = self.beta_depth(a)?;
                match (fth, ath) {
                    (None, None) => None,
                    (fth, ath) => {
                        let fth = fth.map_or_else(|| k.refl(f), Ok)?;
                        let ath = ath.map_or_else(|| k.refl(a), Ok)?;
                        Some(k.mk_comb(&fth, &ath)?)
                    }
                }
            }
            TermKind::Abs(x, b) => match self.beta_depth(b)? {
                Some(th) => match k.abs(x, &th) {
                    Ok(th) => Some(th),
                    Err(KernelError::BinderInHypothesis { .. }) => None,
                    Err(e) => return Err(e.into()),
                },
                None => None,
            },
            TermKind::Eval(c, ty) => match self.beta_depth(c)? {
                Some(th) => Some(k.eval_cong(&th, ty)?),
                None => None,
            },
            _ => None,
        };
        let current = match &inner {
            Some(th) => th.concl().dest_eq().expect("equation").1.clone(),
            None => t.clone(),
        };
        let is_redex = current
            .dest_app()
            .is_some_and(|(f, _)| f.dest_abs().is_some());
        if !is_redex {
            return Ok(inner);
        }
        let step = match k.beta(&current) {
            Ok(th) => th,
            Err(KernelError::SubstitutionBlocked(_)) => return Ok(inner),
            Err(e) => return Err(e.into()),
        };
        let reduct = step.concl().dest_eq().expect("equation").1.clone();
        if reduct == current {
            return Ok(inner);
        }
        let rest = self.beta_depth(&reduct)?;
        let mut th = match inner {
            Some(i) => k.trans(&i, &step)?,
            None => step,
        };
        if let Some(r) = rest {
            th = k.trans(&th, &r)?;
        }
        Ok(Some(th))
    }

    /// Beta-reduces the conclusion of a theorem throughout.
    pub fn beta_rule(&self, th: &Theorem) -> Result<Theorem> {
        match self.beta_depth(th.concl())? {
            Some(eq) => Ok(self.kernel.eq_mp(&eq, th)?),
            None => Ok(th.clone()),
        }
    }

    /// `|- t = t'` replacing subterms alpha-equivalent to the left side of
    /// one of `eqs` by its right side. Rewriting reaches into evaluation
    /// arguments but never into quotations.
    pub fn subs_conv(&self, eqs: &[Theorem], t: &Term) -> Result<Theorem> {
        for th in eqs {
            if th.concl().dest_eq().is_none() {
                return fail("SUBS", format!("not an equation: {:?}", th.concl()));
            }
        }
        match self.subs_at(eqs, t)? {
            Some(th) => Ok(th),
            None => Ok(self.kernel.refl(t)?),
        }
    }

    fn subs_at(&self, eqs: &[Theorem], t: &Term) -> Result<Option<Theorem>> {
        let k = &self.kernel;
        for th in eqs {
            let (l, _) = th.concl().dest_eq().expect("equation");
            if alpha_equivalent(l, t) {
                return Ok(Some(th.clone()));
            }
        }
        Ok(match t.kind() {
            TermKind::App(f, a) => {
                let fth = self.subs_at(eqs, f)?;
                let ath = self.subs_at(eqs, a)?;
                match (fth, ath) {
                    (None, None) => None,
                    (fth, ath) => {
                        let fth = fth.map_or_else(|| k.refl(f), Ok)?;
                        let ath = ath.map_or_else(|| k.refl(a), Ok)?;
                        Some(k.mk_comb(&fth, &ath)?)
                    }
                }
            }
            TermKind::Abs(x, b) => match self.subs_at(eqs, b)? {
                Some(th) => Some(k.abs(x, &th)?),
                None => None,
            },
            TermKind::Eval(c, ty) => match self.subs_at(eqs, c)? {
                Some(th) => Some(k.eval_cong(&th, ty)?),
                None => None,
            },
            _ => None,
        })
    }

    /// Rewrites the conclusion of `th` with the equations `eqs`.
    pub fn subs(&self, eqs: &[Theorem], th: &Theorem) -> Result<Theorem> {
        let eq = self.subs_conv(eqs, th.concl())?;
        Ok(self.kernel.eq_mp(&eq, th)?)
    }

    /// `|- isExprType c tyc` or its negation.
    pub fn is_expr_type_conv(&self, c: &Term, tyc: &Term) -> Result<Theorem> {
        Ok(self.kernel.is_expr_type_conv(c, tyc)?)
    }

    /// `|- isFreeIn xc bc` or its negation.
    pub fn is_free_in_conv(&self, xc: &Term, bc: &Term) -> Result<Theorem> {
        Ok(self.kernel.is_free_in_conv(xc, bc)?)
    }

    fn expr_type_fact(&self, c: &Term, ty: &HolType) -> Result<Theorem> {
        let rep = type_to_construction(ty).map_err(KernelError::from)?;
        let th = self.is_expr_type_conv(c, &rep)?;
        if crate::kernel::connectives::dest_neg(th.concl()).is_some() {
            return fail(
                "DISQUO_CONV",
                format!("{c:?} does not denote an expression of type {ty}"),
            );
        }
        Ok(th)
    }

    /// `|- (eval Q_ t _Q to ty) = t` for a hole-free quotation whose body
    /// has type `ty`, pushing evaluation through the quoted syntax.
    pub fn disquo_conv(&self, q: &Term) -> Result<Theorem> {
        let k = &self.kernel;
        let TermKind::Quote(body, ty) = q.kind() else {
            return fail("DISQUO_CONV", format!("not a quotation: {q:?}"));
        };
        if body.has_holes() {
            return fail("DISQUO_CONV", format!("quotation has holes: {q:?}"));
        }
        match body.kind() {
            TermKind::Var(_) | TermKind::Const(..) => Ok(k.disquo(q, ty)?),
            TermKind::App(f, a) => {
                let step = k.eval_cong(&k.law_of_quo_step(q)?, ty)?;
                let (qf, qa) = (Term::quote(f.clone())?, Term::quote(a.clone())?);
                let split = k.app_split(&qf, &qa, a.ty(), ty)?;
                let ante = self.conj(
                    &self.expr_type_fact(&qf, f.ty())?,
                    &self.expr_type_fact(&qa, a.ty())?,
                )?;
                let split = self.mp(&split, &ante)?;
                let parts = k.mk_comb(&self.disquo_conv(&qf)?, &self.disquo_conv(&qa)?)?;
                Ok(k.trans(&k.trans(&step, &split)?, &parts)?)
            }
            TermKind::Abs(x, b) => {
                let step = k.eval_cong(&k.law_of_quo_step(q)?, ty)?;
                let qb = Term::quote(b.clone())?;
                let split = k.abs_split(x, &qb, b.ty())?;
                let free =
                    k.is_free_in_conv(&Term::quote(x.to_term())?, &Term::quote(qb.clone())?)?;
                if crate::kernel::connectives::dest_neg(free.concl()).is_none() {
                    return fail("DISQUO_CONV", format!("{x:?} is free in {qb:?}"));
                }
                let ante = self.conj(&self.expr_type_fact(&qb, b.ty())?, &free)?;
                let split = self.mp(&split, &ante)?;
                let inner = k.abs(x, &self.disquo_conv(&qb)?)?;
                Ok(k.trans(&k.trans(&step, &split)?, &inner)?)
            }
            TermKind::Quote(inner, _) => {
                let step = k.eval_cong(&k.law_of_quo_step(q)?, ty)?;
                let qi = Term::quote(inner.clone())?;
                let eps = self.expr_type_fact(&qi, &HolType::epsilon()).map_err(|_| {
                    LogicError::Rule {
                        rule: "DISQUO_CONV",
                        msg: format!(
                            "{qi:?} does not denote an expression of type epsilon, so its quotation cannot be evaluated"
                        ),
                    }
                })?;
                let th = self.mp(&k.quotable(&qi)?, &eps)?;
                Ok(k.trans(&step, &th)?)
            }
            TermKind::Hole(..) | TermKind::Eval(..) => unreachable!("hole-free, eval-free body"),
        }
    }

    /// From `A |- !y. (\x. b) y = b`, `A |- ~IS-EFFECTIVE-IN(x, b)`, where the
    /// bound `y` is the one `IS-EFFECTIVE-IN` uses.
    pub fn nei_intro(&self, th: &Theorem) -> Result<Theorem> {
        let k = &self.kernel;
        let Some((y, body)) = dest_forall(th.concl()) else {
            return fail("NEI_INTRO", format!("not a universal: {:?}", th.concl()));
        };
        let Some((l, b)) = body.dest_eq() else {
            return fail(
                "NEI_INTRO",
                format!("not an equation under the binder: {body:?}"),
            );
        };
        let bad = || LogicError::Rule {
            rule: "NEI_INTRO",
            msg: format!("expected !y. (\\x. b) y = b, got {:?}", th.concl()),
        };
        let (lam, arg) = l.dest_app().ok_or_else(bad)?;
        let (x, b2) = lam.dest_abs().ok_or_else(bad)?;
        if arg.as_var() != Some(y) || b2 != b {
            return Err(bad());
        }
        // {!P} |- ~(?y. ~(P y)), with P instantiated to (\y. body)
        let big_p = Var::new("P", HolType::fun(y.ty().clone(), HolType::bool()));
        let lemma = self.not_exists_not(y, &big_p)?;
        let g = Term::abs(y.clone(), body.clone());
        let inst = k.inst(&[(big_p, g)], &lemma)?;
        let inst = self.prove_hyp(th, &inst)?;
        // (\y. body) y reduces to body exactly
        let red = k.beta(&Term::app(Term::abs(y.clone(), body.clone()), y.to_term())?)?;
        let out = self.subs(&[red], &inst)?;
        match dest_not_effective(out.concl()) {
            Some((x2, b3)) if &x2 == x && &b3 == b => Ok(out),
            _ => fail(
                "NEI_INTRO",
                format!("the bound variable {y:?} clashes with the body {b:?}"),
            ),
        }
    }

    /// `{!P} |- ~(? (\y. ~(P y)))`
    fn not_exists_not(&self, y: &Var, big_p: &Var) -> Result<Theorem> {
        let k = &self.kernel;
        let py = Term::app(big_p.to_term(), y.to_term())?;
        let ex = mk_exists(y.clone(), mk_neg(py.clone())?)?;
        let all_p = Term::app(
            crate::kernel::connectives::forall_const(y.ty()),
            big_p.to_term(),
        )?;
        // {?y. ~P y, !P} |- F via the definition of ?
        let ex_def = super::unfold(k, "?", &[Term::abs(y.clone(), mk_neg(py.clone())?)])?;
        let unf = k.eq_mp(&ex_def, &k.assume(&ex)?)?;
        let f = crate::kernel::connectives::falsity();
        let inst_f = self.spec(&f, &unf)?;
        // !x. ~P x ==> F, from !P
        let x = y.clone();
        let px = Term::app(big_p.to_term(), x.to_term())?;
        let p_holds = self.spec(&x.to_term(), &k.assume(&all_p)?)?;
        let npx = mk_neg(px.clone())?;
        let f_th = self.mp(&self.not_elim(&self.assume(&npx)?)?, &p_holds)?;
        let step = self.gen(&x, &self.disch(&npx, &f_th)?)?;
        let step = self.beta_rule_match(&step, &inst_f)?;
        let contradiction = self.mp(&inst_f, &step)?;
        self.not_intro(&self.disch(&ex, &contradiction)?)
    }

    // Brings `th` to the antecedent of the implication `imp` when they differ
    // by beta-reduction.
    fn beta_rule_match(&self, th: &Theorem, imp: &Theorem) -> Result<Theorem> {
        let (ante, _) =
            crate::kernel::connectives::dest_imp(imp.concl()).ok_or_else(|| LogicError::Rule {
                rule: "MP",
                msg: format!("not an implication: {:?}", imp.concl()),
            })?;
        if alpha_equivalent(ante, th.concl()) {
            return Ok(th.clone());
        }
        let a = self.beta_conv_depth(ante)?;
        let b = self.beta_rule(th)?;
        let (_, an) = a.concl().dest_eq().expect("equation");
        if alpha_equivalent(an, b.concl()) {
            return self.eq_mp(&self.sym(&a)?, &b);
        }
        fail("MP", format!("{:?} does not match {ante:?}", th.concl()))
    }

    /// `|- isPeano c` or `|- ~(isPeano c)` (Presburger likewise), by the
    /// trusted syntax checks for the form and for closedness.
    pub fn arithmetic_conv(&self, lang: Arithmetic, c: &Term) -> Result<Theorem> {
        let k = &self.kernel;
        let name = match lang {
            Arithmetic::Peano => "isPeano",
            Arithmetic::Presburger => "isPresburger",
        };
        let Some(def) = self.definition(name).cloned() else {
            return fail("IS_PEANO_CONV", format!("{name} is not defined"));
        };
        let unf = k.mk_comb(&def, &k.refl(c)?)?;
        let (_, r) = unf.concl().dest_eq().expect("equation");
        let unf = k.trans(&unf, &k.beta(r)?)?;
        let lhs = unf.concl().dest_eq().expect("equation").0.clone();
        let form = k.arithmetic_form_conv(lang, c)?;
        if crate::kernel::connectives::dest_neg(form.concl()).is_some() {
            // isPeano c ==> isPeanoForm c, contradicting the form check
            let pos = self.conjunct1(&k.eq_mp(&unf, &k.assume(&lhs)?)?)?;
            let f_th = self.mp(&self.not_elim(&form)?, &pos)?;
            return self.not_intro(&self.disch(&lhs, &f_th)?);
        }
        match k.closed_construction_conv(c) {
            Ok(closed) => {
                let both = self.conj(&form, &closed)?;
                Ok(k.eq_mp(&self.sym(&unf)?, &both)?)
            }
            Err(KernelError::Shape { .. }) => {
                let v = first_free_var_construction(c).ok_or_else(|| LogicError::Rule {
                    rule: "IS_PEANO_CONV",
                    msg: format!("no free variable found in {c:?}"),
                })?;
                let free = k.is_free_in_conv(&v, c)?;
                let closed = self.conjunct2(&k.eq_mp(&unf, &k.assume(&lhs)?)?)?;
                let not_free = self.spec(&v, &closed)?;
                let f_th = self.mp(&self.not_elim(&not_free)?, &free)?;
                self.not_intro(&self.disch(&lhs, &f_th)?)
            }
            Err(e) => Err(e.into()),
        }
    }
}

/// A quoted-variable construction for some variable free in the value of `c`.
fn first_free_var_construction(c: &Term) -> Option<Term> {
    let cv = crate::constructions::construction_value(c)?;
    let t = crate::constructions::construction_to_term(&cv).ok()?;
    let v = t.free_vars().ok()?.into_iter().next()?;
    crate::constructions::term_to_construction(&v.to_term()).ok()
}
