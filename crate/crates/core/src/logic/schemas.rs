//! The excluded-middle and induction schemas, stated as single formulas
//! over `epsilon`, and their instantiation at quoted formulas.

use crate::constructions::type_to_construction;
use crate::kernel::connectives::{dest_imp, dest_neg, mk_conj};
use crate::kernel::oracle::Arithmetic;
use crate::kernel::{mk_is_effective_in, KernelError, Theorem};
use crate::syntax::{HolType, Term, Var};

use super::{fail, Logic, Result, NUM_INDUCTION};

fn eps_var(name: &str) -> Var {
    Var::new(name, HolType::epsilon())
}

fn pred_ty() -> HolType {
    HolType::fun(HolType::num(), HolType::bool())
}

fn type_rep(ty: &HolType) -> Result<Term> {
    Ok(type_to_construction(ty).map_err(KernelError::from)?)
}

impl Logic {
    fn is_expr_type_term(&self, a: Term, ty: &HolType) -> Result<Term> {
        Ok(crate::kernel::mk_is_expr_type(a, ty)?)
    }

    /// `|- !x:epsilon. isExprType x (TyBase "bool") ==> (eval x to bool) \/ ~(eval x to bool)`
    pub fn prove_lem(&self) -> Result<Theorem> {
        let x = eps_var("x");
        let ex = Term::eval(x.to_term(), HolType::bool())?;
        let Some(em) = self.axiom("EXCLUDED_MIDDLE").cloned() else {
            return fail("LEM", "EXCLUDED_MIDDLE is not installed");
        };
        let th = self.spec(&ex, &em)?;
        let ante = self.is_expr_type_term(x.to_term(), &HolType::bool())?;
        let th = self.disch(&ante, &th)?;
        self.gen(&x, &th)
    }

    /// From the excluded-middle schema, `|- p \/ ~p` for the boolean term `p`:
    /// specialize at `Q_ p _Q`, reduce the suspended redexes with
    /// `BETA_REVAL`, disquote, and discharge the type condition.
    pub fn lem_instance(&self, lem: &Theorem, p: &Term) -> Result<Theorem> {
        let k = &self.kernel;
        if !p.ty().is_bool() {
            return fail("LEM", format!("{p:?} is not of type bool"));
        }
        let q = Term::quote(p.clone())?;
        let th = self.spec(&q, lem)?;
        let Some((x, _)) = lem.concl().dest_app().and_then(|(_, g)| g.dest_abs()) else {
            return fail("LEM", "not a universal statement");
        };
        let x = x.clone();
        // (\x. eval x to bool) Q_p_Q = eval ((\x. x) Q_p_Q) to bool
        let reval = k.beta_reval(&x, &x.to_term(), &q, &HolType::bool())?;
        let reval = self.discharge_quote_conditions(&reval)?;
        let redex = Term::app(Term::abs(x.clone(), x.to_term()), q.clone())?;
        let reduce = k.eval_cong(&k.beta(&redex)?, &HolType::bool())?;
        let eq = k.trans(&k.trans(&reval, &reduce)?, &self.disquo_conv(&q)?)?;
        let th = self.subs(&[eq], &th)?;
        let fact = self.is_expr_type_conv(&q, &type_rep(&HolType::bool())?)?;
        self.mp(&th, &fact)
    }

    /// Discharges the antecedent `isExprType c rep /\ ~(isFreeIn v c)` of an
    /// implication by the decision conversions.
    pub fn discharge_quote_conditions(&self, th: &Theorem) -> Result<Theorem> {
        let Some((ante, _)) = dest_imp(th.concl()) else {
            return fail("DISCHARGE", format!("not an implication: {:?}", th.concl()));
        };
        let Some((l, r)) = crate::kernel::connectives::dest_conj(ante) else {
            return fail("DISCHARGE", format!("not a conjunction: {ante:?}"));
        };
        let decide = |t: &Term, want: bool| -> Result<Theorem> {
            let (head, args) = t.strip_app();
            let th = match (head.as_const().map(|c| c.0), args.as_slice()) {
                (Some(crate::kernel::names::IS_EXPR_TYPE), [a, b]) => {
                    self.is_expr_type_conv(a, b)?
                }
                (Some(crate::kernel::names::IS_FREE_IN), [a, b]) => self.is_free_in_conv(a, b)?,
                _ => return fail("DISCHARGE", format!("cannot decide {t:?}")),
            };
            if dest_neg(th.concl()).is_some() == want {
                return fail("DISCHARGE", format!("refuted: {:?}", th.concl()));
            }
            Ok(th)
        };
        let lth = decide(l, true)?;
        let rth = match dest_neg(r) {
            Some(inner) => decide(inner, false)?,
            None => decide(r, true)?,
        };
        self.mp(th, &self.conj(&lth, &rth)?)
    }

    /// `{isExprType f rep /\ ~(isFreeIn Q_ n _Q f)} |- ~IS-EFFECTIVE-IN(n, eval f to ty)`
    pub fn prove_nei_schema_var(&self, n: &Var, f: &Var, ty: &HolType) -> Result<Theorem> {
        let k = &self.kernel;
        let ev = Term::eval(f.to_term(), ty.clone())?;
        let ie = mk_is_effective_in(n, &ev)?;
        let Some((_, lam)) = ie.dest_app() else {
            unreachable!("an existential")
        };
        let (y, _) = lam.dest_abs().expect("an abstraction");
        let y = y.clone();
        let reval = k.beta_reval(n, &f.to_term(), &y.to_term(), ty)?;
        let redex = Term::app(Term::abs(n.clone(), f.to_term()), y.to_term())?;
        let th = self.subs(&[k.beta(&redex)?], &reval)?;
        let th = self.undisch(&th)?;
        let th = self.gen(&y, &th)?;
        self.nei_intro(&th)
    }

    /// The induction schema for the chosen arithmetic:
    ///
    /// `!f. isExprType f (TyBiCons "fun" (TyBase "num") (TyBase "bool")) /\ isPeano f ==>
    ///      (eval f to num->bool) _0 /\ (!n. (eval f to num->bool) n ==> (eval f to num->bool) (SUC n))
    ///      ==> !n. (eval f to num->bool) n`
    ///
    /// The `~IS-EFFECTIVE-IN` fact it needs is registered on the way.
    pub fn prove_induction_schema(&mut self, lang: Arithmetic) -> Result<Theorem> {
        let n = Var::new("n", HolType::num());
        let f = eps_var("f");
        let nei = self.prove_nei_schema_var(&n, &f, &pred_ty())?;
        self.kernel.register_not_effective(&nei)?;
        let Some(ind) = self.axiom(NUM_INDUCTION).cloned() else {
            return fail("INDUCTION", "num_INDUCTION is not installed");
        };
        let p = Var::new("P", pred_ty());
        let indinst = self.spec(&p.to_term(), &ind)?;
        let ev = Term::eval(f.to_term(), pred_ty())?;
        let th = self.kernel.inst(&[(p, ev)], &indinst)?;
        let pred_name = match lang {
            Arithmetic::Peano => "isPeano",
            Arithmetic::Presburger => "isPresburger",
        };
        let Some(def) = self.definition(pred_name).cloned() else {
            return fail("INDUCTION", format!("{pred_name} is not defined"));
        };
        let is_expr = self.is_expr_type_term(f.to_term(), &pred_ty())?;
        let pred = Term::app(
            def.concl().dest_eq().expect("equation").0.clone(),
            f.to_term(),
        )?;
        let ante = mk_conj(is_expr, pred.clone())?;
        let assumed = self.assume(&ante)?;
        let unf = self
            .kernel
            .mk_comb(&def, &self.kernel.refl(&f.to_term())?)?;
        let unf = self.beta_rule_rhs(&unf)?;
        let pred_th = self.eq_mp(&unf, &self.conjunct2(&assumed)?)?;
        let qn = Term::quote(n.to_term())?;
        let not_free = self.spec(&qn, &self.conjunct2(&pred_th)?)?;
        let hyp = self.conj(&self.conjunct1(&assumed)?, &not_free)?;
        let th = self.prove_hyp(&hyp, &th)?;
        let th = self.disch(&ante, &th)?;
        self.gen(&f, &th)
    }

    fn beta_rule_rhs(&self, th: &Theorem) -> Result<Theorem> {
        let (_, r) = th.concl().dest_eq().expect("equation");
        Ok(self.kernel.trans(th, &self.kernel.beta(r)?)?)
    }
}
