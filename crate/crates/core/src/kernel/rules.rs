//! The classic primitive rules, plus congruence of evaluation.

use std::sync::Arc;

use crate::syntax::{
    alpha_equivalent, vsubst, HolType, SideConditions, Term, TermKind, TypeSubst, Var,
};

use super::thm::{merge_prov, remove_hyp, union_hyps, Theorem};
use super::{Kernel, KernelError, Result};

fn shape(rule: &'static str, msg: impl Into<String>) -> KernelError {
    KernelError::Shape {
        rule,
        msg: msg.into(),
    }
}

fn dest_eq_thm<'a>(rule: &'static str, th: &'a Theorem) -> Result<(&'a Term, &'a Term)> {
    th.concl()
        .dest_eq()
        .ok_or_else(|| shape(rule, format!("not an equation: {:?}", th.concl())))
}

impl Kernel {
    /// `|- t = t`
    pub fn refl(&self, t: &Term) -> Result<Theorem> {
        self.check_term(t)?;
        Ok(Theorem::mk(
            vec![],
            Term::mk_eq(t.clone(), t.clone())?,
            Arc::default(),
        ))
    }

    /// From `A |- a = b` and `B |- b' = c` with `b` and `b'` alpha-equivalent,
    /// `A u B |- a = c`.
    pub fn trans(&self, th1: &Theorem, th2: &Theorem) -> Result<Theorem> {
        let (a, b) = dest_eq_thm("TRANS", th1)?;
        let (b2, c) = dest_eq_thm("TRANS", th2)?;
        if !alpha_equivalent(b, b2) {
            return Err(shape(
                "TRANS",
                format!("middle terms differ: {b:?} and {b2:?}"),
            ));
        }
        Ok(Theorem::mk(
            union_hyps([th1.hyps(), th2.hyps()]),
            Term::mk_eq(a.clone(), c.clone())?,
            merge_prov([th1, th2]),
        ))
    }

    /// From `A |- f = g` and `B |- a = b`, `A u B |- f a = g b`.
    pub fn mk_comb(&self, th1: &Theorem, th2: &Theorem) -> Result<Theorem> {
        let (f, g) = dest_eq_thm("MK_COMB", th1)?;
        let (a, b) = dest_eq_thm("MK_COMB", th2)?;
        let l = Term::app(f.clone(), a.clone())?;
        let r = Term::app(g.clone(), b.clone())?;
        Ok(Theorem::mk(
            union_hyps([th1.hyps(), th2.hyps()]),
            Term::mk_eq(l, r)?,
            merge_prov([th1, th2]),
        ))
    }

    /// From `A |- a = b`, `A |- (\x. a) = (\x. b)`.
    ///
    /// Every hypothesis must be independent of `x`: syntactically, or by a
    /// registered `~IS-EFFECTIVE-IN(x, h)` fact whose own hypotheses are then
    /// added to the result.
    pub fn abs(&self, x: &Var, th: &Theorem) -> Result<Theorem> {
        let (a, b) = dest_eq_thm("ABS", th)?;
        self.check_type(x.ty())?;
        let mut extra: Vec<Term> = Vec::new();
        let mut used = Vec::new();
        for h in th.hyps() {
            if h.syntactically_independent_of(x) {
                continue;
            }
            match self.registry.not_effective(x, h) {
                Some(hs) => {
                    extra.extend(hs.iter().cloned());
                    used.push((x.clone(), h.clone()));
                }
                None => {
                    return Err(KernelError::BinderInHypothesis {
                        var: x.clone(),
                        hyp: h.clone(),
                    })
                }
            }
        }
        let l = Term::abs(x.clone(), a.clone());
        let r = Term::abs(x.clone(), b.clone());
        Ok(Theorem::mk(
            union_hyps([th.hyps(), &extra[..]]),
            Term::mk_eq(l, r)?,
            self.with_registry_prov([th], &used),
        ))
    }

    /// `|- (\x. b) a = b[a/x]`, with substitution as in [`crate::syntax::vsubst`].
    /// Hypotheses of registry entries relied on appear as hypotheses.
    pub fn beta(&self, redex: &Term) -> Result<Theorem> {
        self.check_term(redex)?;
        let (lam, arg) = redex
            .dest_app()
            .ok_or_else(|| shape("BETA", format!("not a beta-redex: {redex:?}")))?;
        let (x, body) = lam
            .dest_abs()
            .ok_or_else(|| shape("BETA", format!("not a beta-redex: {redex:?}")))?;
        let res = vsubst(&[(x.clone(), arg.clone())], body, &self.registry)?;
        let hyps = union_hyps([&res.assumptions[..]]);
        let prov = self.with_registry_prov([], &res.used);
        Ok(Theorem::mk(
            hyps,
            Term::mk_eq(redex.clone(), res.term)?,
            prov,
        ))
    }

    /// `{p} |- p`
    pub fn assume(&self, p: &Term) -> Result<Theorem> {
        self.check_bool(p)?;
        Ok(Theorem::mk(vec![p.clone()], p.clone(), Arc::default()))
    }

    /// From `A |- p = q` and `B |- p'` with `p`, `p'` alpha-equivalent, `A u B |- q`.
    pub fn eq_mp(&self, th1: &Theorem, th2: &Theorem) -> Result<Theorem> {
        let (p, q) = dest_eq_thm("EQ_MP", th1)?;
        if !alpha_equivalent(p, th2.concl()) {
            return Err(shape(
                "EQ_MP",
                format!("{:?} does not match {p:?}", th2.concl()),
            ));
        }
        Ok(Theorem::mk(
            union_hyps([th1.hyps(), th2.hyps()]),
            q.clone(),
            merge_prov([th1, th2]),
        ))
    }

    /// From `A |- p` and `B |- q`, `(A - {q}) u (B - {p}) |- p = q`.
    pub fn deduct_antisym(&self, th1: &Theorem, th2: &Theorem) -> Result<Theorem> {
        let a = remove_hyp(th1.hyps(), th2.concl());
        let b = remove_hyp(th2.hyps(), th1.concl());
        Ok(Theorem::mk(
            union_hyps([&a[..], &b[..]]),
            Term::mk_eq(th1.concl().clone(), th2.concl().clone())?,
            merge_prov([th1, th2]),
        ))
    }

    /// Instantiates type variables throughout a theorem.
    ///
    /// Refuses when an instantiated variable occurs in a type inside a
    /// quotation (quotations are concrete syntax) or in the type of an
    /// evaluation, and when two distinct variables would become identical.
    pub fn inst_type(&self, theta: &TypeSubst, th: &Theorem) -> Result<Theorem> {
        for ty in theta.values() {
            self.check_type(ty)?;
        }
        let theta: TypeSubst = theta
            .iter()
            .filter(|(v, ty)| **ty != HolType::Var((*v).clone()))
            .map(|(v, ty)| (v.clone(), ty.clone()))
            .collect();
        if theta.is_empty() {
            return Ok(th.clone());
        }
        let terms: Vec<&Term> = th.hyps().iter().chain([th.concl()]).collect();
        let mut vars: Vec<Var> = Vec::new();
        for t in &terms {
            check_inst_type_allowed(&theta, t)?;
            collect_vars(t, &mut vars);
        }
        for (i, v) in vars.iter().enumerate() {
            let vi = Var::new(v.name(), v.ty().subst(&theta));
            for w in &vars[..i] {
                if w != v && w.name() == v.name() && w.ty().subst(&theta) == *vi.ty() {
                    return Err(shape(
                        "INST_TYPE",
                        format!("{v:?} and {w:?} would become the same variable"),
                    ));
                }
            }
        }
        let hyps = th
            .hyps()
            .iter()
            .map(|h| inst_type_term(&theta, h))
            .collect::<Result<Vec<_>>>()?;
        Ok(Theorem::mk(
            union_hyps([&hyps[..]]),
            inst_type_term(&theta, th.concl())?,
            th.prov.clone(),
        ))
    }

    /// Simultaneous substitution of terms for free variables in a theorem.
    pub fn inst(&self, bindings: &[(Var, Term)], th: &Theorem) -> Result<Theorem> {
        for (x, t) in bindings {
            self.check_type(x.ty())?;
            self.check_term(t)?;
        }
        let mut hyps = Vec::new();
        let mut extra = Vec::new();
        let mut used = Vec::new();
        for h in th.hyps() {
            let r = vsubst(bindings, h, &self.registry)?;
            hyps.push(r.term);
            extra.extend(r.assumptions);
            used.extend(r.used);
        }
        let c = vsubst(bindings, th.concl(), &self.registry)?;
        extra.extend(c.assumptions);
        used.extend(c.used);
        Ok(Theorem::mk(
            union_hyps([&hyps[..], &extra[..]]),
            c.term,
            self.with_registry_prov([th], &used),
        ))
    }

    /// From `A |- a = b` at type epsilon, `A |- (eval a to ty) = (eval b to ty)`.
    pub fn eval_cong(&self, th: &Theorem, ty: &HolType) -> Result<Theorem> {
        let (a, b) = dest_eq_thm("EVAL_CONG", th)?;
        self.check_type(ty)?;
        if !a.ty().is_epsilon() {
            return Err(shape("EVAL_CONG", format!("{a:?} is not of type epsilon")));
        }
        let l = Term::eval(a.clone(), ty.clone())?;
        let r = Term::eval(b.clone(), ty.clone())?;
        Ok(Theorem::mk(
            th.hyps().to_vec(),
            Term::mk_eq(l, r)?,
            th.prov.clone(),
        ))
    }

    /// Provenance of `thms` together with that of the registry entries used.
    pub(super) fn with_registry_prov<'a>(
        &'a self,
        thms: impl IntoIterator<Item = &'a Theorem>,
        used: &[(Var, Term)],
    ) -> Arc<super::Provenance> {
        let entries = used
            .iter()
            .filter_map(|(x, t)| self.registry.entry_theorem(x, t));
        merge_prov(thms.into_iter().chain(entries))
    }
}

fn check_inst_type_allowed(theta: &TypeSubst, t: &Term) -> Result<()> {
    let bad = |ty: &HolType| -> Result<()> {
        let mut vs = Vec::new();
        ty.type_vars(&mut vs);
        match vs.into_iter().find(|v| theta.contains_key(v)) {
            Some(v) => Err(KernelError::QuotationTypePolymorphism(v.to_string())),
            None => Ok(()),
        }
    };
    match t.kind() {
        TermKind::Var(_) | TermKind::Const(..) => Ok(()),
        TermKind::App(f, a) => {
            check_inst_type_allowed(theta, f)?;
            check_inst_type_allowed(theta, a)
        }
        TermKind::Abs(_, b) | TermKind::Hole(b, _) => check_inst_type_allowed(theta, b),
        TermKind::Eval(c, ty) => {
            bad(ty)?;
            check_inst_type_allowed(theta, c)
        }
        TermKind::Quote(b, _) => check_quoted_types(theta, b, &bad),
    }
}

fn check_quoted_types(
    theta: &TypeSubst,
    t: &Term,
    bad: &dyn Fn(&HolType) -> Result<()>,
) -> Result<()> {
    match t.kind() {
        TermKind::Hole(c, slot) => {
            bad(slot)?;
            check_inst_type_allowed(theta, c)
        }
        TermKind::Var(v) => bad(v.ty()),
        TermKind::Const(_, ty) => bad(ty),
        TermKind::App(f, a) => {
            check_quoted_types(theta, f, bad)?;
            check_quoted_types(theta, a, bad)
        }
        TermKind::Abs(v, b) => {
            bad(v.ty())?;
            check_quoted_types(theta, b, bad)
        }
        TermKind::Quote(b, _) => check_quoted_types(theta, b, bad),
        TermKind::Eval(_, _) => unreachable!("quotation bodies are eval-free outside holes"),
    }
}

fn collect_vars(t: &Term, out: &mut Vec<Var>) {
    match t.kind() {
        TermKind::Var(v) => {
            if !out.contains(v) {
                out.push(v.clone())
            }
        }
        TermKind::Const(..) => {}
        TermKind::App(f, a) => {
            collect_vars(f, out);
            collect_vars(a, out);
        }
        TermKind::Abs(v, b) => {
            if !out.contains(v) {
                out.push(v.clone())
            }
            collect_vars(b, out);
        }
        TermKind::Quote(b, _) | TermKind::Hole(b, _) | TermKind::Eval(b, _) => collect_vars(b, out),
    }
}

pub(super) fn inst_type_term(theta: &TypeSubst, t: &Term) -> Result<Term> {
    if !t.ty().mentions_any(theta) && !has_type_var_inside(t, theta) {
        return Ok(t.clone());
    }
    Ok(match t.kind() {
        TermKind::Var(v) => Term::var(v.name(), v.ty().subst(theta)),
        TermKind::Const(n, ty) => Term::constant(n, ty.subst(theta)),
        TermKind::App(f, a) => Term::app(inst_type_term(theta, f)?, inst_type_term(theta, a)?)?,
        TermKind::Abs(v, b) => Term::abs(
            Var::new(v.name(), v.ty().subst(theta)),
            inst_type_term(theta, b)?,
        ),
        TermKind::Quote(b, _) => Term::quote(inst_type_term(theta, b)?)?,
        TermKind::Hole(c, slot) => Term::hole(inst_type_term(theta, c)?, slot.subst(theta))?,
        TermKind::Eval(c, ty) => Term::eval(inst_type_term(theta, c)?, ty.subst(theta))?,
    })
}

fn has_type_var_inside(t: &Term, theta: &TypeSubst) -> bool {
    match t.kind() {
        TermKind::Var(v) => v.ty().mentions_any(theta),
        TermKind::Const(_, ty) => ty.mentions_any(theta),
        TermKind::App(f, a) => has_type_var_inside(f, theta) || has_type_var_inside(a, theta),
        TermKind::Abs(v, b) => v.ty().mentions_any(theta) || has_type_var_inside(b, theta),
        TermKind::Quote(b, _) | TermKind::Hole(b, _) | TermKind::Eval(b, _) => {
            t.ty().mentions_any(theta) || has_type_var_inside(b, theta)
        }
    }
}
