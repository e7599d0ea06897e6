//! Derived rules of inference.

use std::collections::BTreeMap;

use crate::kernel::connectives::{dest_conj, dest_disj, dest_imp, dest_neg, mk_conj};
use crate::kernel::Theorem;
use crate::syntax::{alpha_equivalent, HolType, Term, Var};

use super::{bvar, eqt_elim, eqt_intro, fail, prove_hyp, sym, Logic, Result};

fn inst_bool(lg: &Logic, lemma: &Theorem, terms: &[(&str, &Term)]) -> Result<Theorem> {
    let bindings: Vec<(Var, Term)> = terms.iter().map(|(n, t)| (bvar(n), (*t).clone())).collect();
    Ok(lg.kernel.inst(&bindings, lemma)?)
}

fn require_bool(rule: &'static str, t: &Term) -> Result<()> {
    if t.ty().is_bool() {
        Ok(())
    } else {
        fail(rule, format!("{t:?} is not of type bool"))
    }
}

impl Logic {
    pub fn assume(&self, p: &Term) -> Result<Theorem> {
        Ok(self.kernel.assume(p)?)
    }

    pub fn eq_mp(&self, th1: &Theorem, th2: &Theorem) -> Result<Theorem> {
        Ok(self.kernel.eq_mp(th1, th2)?)
    }

    /// From `A |- a = b`, `A |- b = a`.
    pub fn sym(&self, th: &Theorem) -> Result<Theorem> {
        sym(&self.kernel, th)
    }

    /// From `A |- a = b`, `A |- f a = f b`.
    pub fn ap_term(&self, f: &Term, th: &Theorem) -> Result<Theorem> {
        Ok(self.kernel.mk_comb(&self.kernel.refl(f)?, th)?)
    }

    /// From `A |- f = g`, `A |- f x = g x`.
    pub fn ap_thm(&self, th: &Theorem, x: &Term) -> Result<Theorem> {
        Ok(self.kernel.mk_comb(th, &self.kernel.refl(x)?)?)
    }

    /// From `A |- p`, `A |- p = T`.
    pub fn eqt_intro(&self, th: &Theorem) -> Result<Theorem> {
        eqt_intro(&self.kernel, &self.lemmas.truth, th)
    }

    /// From `A |- p = T`, `A |- p`.
    pub fn eqt_elim(&self, th: &Theorem) -> Result<Theorem> {
        let (_, r) = th
            .concl()
            .dest_eq()
            .ok_or_else(|| super::LogicError::Rule {
                rule: "EQT_ELIM",
                msg: format!("not an equation: {:?}", th.concl()),
            })?;
        if !r.is_const_named("T") {
            return fail("EQT_ELIM", format!("right side is not T: {r:?}"));
        }
        eqt_elim(&self.kernel, &self.lemmas.truth, th)
    }

    /// From `A |- p` and `B |- q`, `A u (B - {p}) |- q`.
    pub fn prove_hyp(&self, th1: &Theorem, th2: &Theorem) -> Result<Theorem> {
        prove_hyp(&self.kernel, th1, th2)
    }

    /// From `A |- p` and `B |- q`, `A u B |- p /\ q`.
    pub fn conj(&self, th1: &Theorem, th2: &Theorem) -> Result<Theorem> {
        let l = inst_bool(
            self,
            &self.lemmas.conj,
            &[("p", th1.concl()), ("q", th2.concl())],
        )?;
        let l = self.prove_hyp(th1, &l)?;
        self.prove_hyp(th2, &l)
    }

    fn conjunct(&self, th: &Theorem, first: bool) -> Result<Theorem> {
        let rule = if first { "CONJUNCT1" } else { "CONJUNCT2" };
        let Some((p, q)) = dest_conj(th.concl()) else {
            return fail(rule, format!("not a conjunction: {:?}", th.concl()));
        };
        let lemma = if first {
            &self.lemmas.conjunct1
        } else {
            &self.lemmas.conjunct2
        };
        let l = inst_bool(self, lemma, &[("p", p), ("q", q)])?;
        self.prove_hyp(th, &l)
    }

    /// From `A |- p /\ q`, `A |- p`.
    pub fn conjunct1(&self, th: &Theorem) -> Result<Theorem> {
        self.conjunct(th, true)
    }

    /// From `A |- p /\ q`, `A |- q`.
    pub fn conjunct2(&self, th: &Theorem) -> Result<Theorem> {
        self.conjunct(th, false)
    }

    /// From `A |- p ==> q` and `B |- p`, `A u B |- q`.
    pub fn mp(&self, th1: &Theorem, th2: &Theorem) -> Result<Theorem> {
        let Some((p, q)) = dest_imp(th1.concl()) else {
            return fail("MP", format!("not an implication: {:?}", th1.concl()));
        };
        if !alpha_equivalent(p, th2.concl()) {
            return fail(
                "MP",
                format!("antecedent {p:?} does not match {:?}", th2.concl()),
            );
        }
        let l = inst_bool(self, &self.lemmas.mp, &[("p", p), ("q", q)])?;
        let l = self.prove_hyp(th1, &l)?;
        self.prove_hyp(th2, &l)
    }

    /// From `A |- q`, `A - {p} |- p ==> q`.
    pub fn disch(&self, p: &Term, th: &Theorem) -> Result<Theorem> {
        require_bool("DISCH", p)?;
        let k = &self.kernel;
        let th1 = self.conj(&k.assume(p)?, th)?;
        let pq = mk_conj(p.clone(), th.concl().clone())?;
        let th2 = self.conjunct1(&k.assume(&pq)?)?;
        let da = k.deduct_antisym(&th1, &th2)?;
        let imp = inst_bool(self, &self.lemmas.imp_def, &[("p", p), ("q", th.concl())])?;
        Ok(k.eq_mp(&self.sym(&imp)?, &da)?)
    }

    /// From `A |- p ==> q`, `A u {p} |- q`.
    pub fn undisch(&self, th: &Theorem) -> Result<Theorem> {
        let Some((p, _)) = dest_imp(th.concl()) else {
            return fail("UNDISCH", format!("not an implication: {:?}", th.concl()));
        };
        self.mp(th, &self.assume(p)?)
    }

    fn forall_def_at(&self, ty: &HolType) -> Result<Theorem> {
        let theta = BTreeMap::from([("A".into(), ty.clone())]);
        Ok(self.kernel.inst_type(&theta, &self.lemmas.forall_def)?)
    }

    /// From `A |- p`, `A |- !x. p`; `x` must be independent of `A`.
    pub fn gen(&self, x: &Var, th: &Theorem) -> Result<Theorem> {
        let k = &self.kernel;
        let th1 = self.eqt_intro(th)?;
        let th2 = k.abs(x, &th1)?;
        let lem = self.forall_def_at(x.ty())?;
        let big_p = Var::new("P", HolType::fun(x.ty().clone(), HolType::bool()));
        let lam = Term::abs(x.clone(), th.concl().clone());
        let lem = k.inst(&[(big_p, lam)], &lem)?;
        Ok(k.eq_mp(&self.sym(&lem)?, &th2)?)
    }

    /// From `A |- !x. p`, `A |- p[t/x]`.
    pub fn spec(&self, t: &Term, th: &Theorem) -> Result<Theorem> {
        let k = &self.kernel;
        let Some((q, g)) = th.concl().dest_app() else {
            return fail("SPEC", format!("not a universal: {:?}", th.concl()));
        };
        if !q.is_const_named(crate::kernel::names::FORALL) {
            return fail("SPEC", format!("not a universal: {:?}", th.concl()));
        }
        if g.ty() != &HolType::fun(t.ty().clone(), HolType::bool()) {
            return fail(
                "SPEC",
                format!("{t:?} : {} does not fit {:?}", t.ty(), th.concl()),
            );
        }
        let lem = self.forall_def_at(t.ty())?;
        let big_p = Var::new("P", g.ty().clone());
        let lem = k.inst(&[(big_p, g.clone())], &lem)?;
        let th1 = k.eq_mp(&lem, th)?;
        let th2 = self.ap_thm(&th1, t)?;
        let (l, r) = th2.concl().dest_eq().expect("equation");
        let th3 = if g.dest_abs().is_some() {
            k.trans(&self.sym(&k.beta(l)?)?, &th2)?
        } else {
            th2.clone()
        };
        let th4 = k.trans(&th3, &k.beta(r)?)?;
        self.eqt_elim(&th4)
    }

    /// Specializes all leading universals in order.
    pub fn specl(&self, ts: &[Term], th: &Theorem) -> Result<Theorem> {
        ts.iter().try_fold(th.clone(), |acc, t| self.spec(t, &acc))
    }

    /// Generalizes over the variables, innermost last.
    pub fn genl(&self, xs: &[Var], th: &Theorem) -> Result<Theorem> {
        xs.iter()
            .rev()
            .try_fold(th.clone(), |acc, x| self.gen(x, &acc))
    }

    /// From `A |- F`, `A |- p`.
    pub fn contr(&self, p: &Term, th: &Theorem) -> Result<Theorem> {
        require_bool("CONTR", p)?;
        if !th.concl().is_const_named("F") {
            return fail("CONTR", format!("not F: {:?}", th.concl()));
        }
        let l = inst_bool(self, &self.lemmas.contr, &[("p", p)])?;
        self.prove_hyp(th, &l)
    }

    /// From `A |- p`, `A |- p \/ q`.
    pub fn disj1(&self, th: &Theorem, q: &Term) -> Result<Theorem> {
        require_bool("DISJ1", q)?;
        let l = inst_bool(self, &self.lemmas.disj1, &[("p", th.concl()), ("q", q)])?;
        self.prove_hyp(th, &l)
    }

    /// From `A |- q`, `A |- p \/ q`.
    pub fn disj2(&self, p: &Term, th: &Theorem) -> Result<Theorem> {
        require_bool("DISJ2", p)?;
        let l = inst_bool(self, &self.lemmas.disj2, &[("p", p), ("q", th.concl())])?;
        self.prove_hyp(th, &l)
    }

    /// From `A |- p \/ q`, `B |- r` and `C |- r`,
    /// `A u (B - {p}) u (C - {q}) |- r`.
    pub fn disj_cases(&self, th: &Theorem, th1: &Theorem, th2: &Theorem) -> Result<Theorem> {
        let Some((p, q)) = dest_disj(th.concl()) else {
            return fail("DISJ_CASES", format!("not a disjunction: {:?}", th.concl()));
        };
        let r = th1.concl();
        if !alpha_equivalent(r, th2.concl()) {
            return fail(
                "DISJ_CASES",
                format!("conclusions differ: {r:?} and {:?}", th2.concl()),
            );
        }
        let pr = self.disch(p, th1)?;
        let qr = self.disch(q, th2)?;
        let l = inst_bool(
            self,
            &self.lemmas.disj_cases,
            &[("p", p), ("q", q), ("r", r)],
        )?;
        let l = self.prove_hyp(th, &l)?;
        let l = self.prove_hyp(&pr, &l)?;
        self.prove_hyp(&qr, &l)
    }

    /// `|- ~p = (p ==> F)`
    fn not_def_at(&self, p: &Term) -> Result<Theorem> {
        inst_bool(self, &self.lemmas.not_def, &[("p", p)])
    }

    /// From `A |- p ==> F`, `A |- ~p`.
    pub fn not_intro(&self, th: &Theorem) -> Result<Theorem> {
        let Some((p, f)) = dest_imp(th.concl()) else {
            return fail("NOT_INTRO", format!("not an implication: {:?}", th.concl()));
        };
        if !f.is_const_named("F") {
            return fail("NOT_INTRO", format!("consequent is not F: {f:?}"));
        }
        let d = self.not_def_at(p)?;
        Ok(self.kernel.eq_mp(&self.sym(&d)?, th)?)
    }

    /// From `A |- ~p`, `A |- p ==> F`.
    pub fn not_elim(&self, th: &Theorem) -> Result<Theorem> {
        let Some(p) = dest_neg(th.concl()) else {
            return fail("NOT_ELIM", format!("not a negation: {:?}", th.concl()));
        };
        let d = self.not_def_at(p)?;
        Ok(self.kernel.eq_mp(&d, th)?)
    }

    /// From `A |- ~p`, `A |- p = F`.
    pub fn eqf_intro(&self, th: &Theorem) -> Result<Theorem> {
        let Some(p) = dest_neg(th.concl()) else {
            return fail("EQF_INTRO", format!("not a negation: {:?}", th.concl()));
        };
        let f_th = self.mp(&self.not_elim(th)?, &self.assume(p)?)?;
        let p_th = self.contr(p, &self.assume(&crate::kernel::connectives::falsity())?)?;
        Ok(self.kernel.deduct_antisym(&p_th, &f_th)?)
    }

    /// From `A |- p = F`, `A |- ~p`.
    pub fn eqf_elim(&self, th: &Theorem) -> Result<Theorem> {
        let Some((p, f)) = th.concl().dest_eq() else {
            return fail("EQF_ELIM", format!("not an equation: {:?}", th.concl()));
        };
        if !f.is_const_named("F") {
            return fail("EQF_ELIM", format!("right side is not F: {f:?}"));
        }
        let f_th = self.kernel.eq_mp(th, &self.assume(p)?)?;
        self.not_intro(&self.disch(p, &f_th)?)
    }
}
