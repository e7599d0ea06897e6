//! Logical infrastructure on top of the kernel: generic lemmas, derived
//! rules, conversions, the syntax datatypes' facts and an arithmetic base.
//!
//! Derived rules never unfold a definition at a term that may contain an
//! evaluation; they prove a lemma once over variables and instantiate it.
//! Lemma statements are kept free of binders around their variables, so
//! instantiation never has to substitute under a binder.

mod conv;
mod rules;
mod schemas;
mod theories;

use std::sync::Arc;

use thiserror::Error;

use crate::kernel::connectives::{self as cn, mk_conj, mk_disj, mk_imp, mk_neg};
use crate::kernel::{Kernel, KernelError, Theorem};
use crate::syntax::{HolType, SyntaxError, Term, Var};

pub use theories::{EPSILON_INDUCTION, NUM_INDUCTION, TYPE_INDUCTION};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("{rule}: {msg}")]
    Rule { rule: &'static str, msg: String },
}

impl From<SyntaxError> for LogicError {
    fn from(e: SyntaxError) -> Self {
        LogicError::Kernel(e.into())
    }
}

pub type Result<T> = std::result::Result<T, LogicError>;

pub(crate) fn fail<T>(rule: &'static str, msg: impl Into<String>) -> Result<T> {
    Err(LogicError::Rule {
        rule,
        msg: msg.into(),
    })
}

fn bvar(n: &str) -> Var {
    Var::new(n, HolType::bool())
}

/// Lemmas proved once at bootstrap, over boolean variables `p`, `q`, `r`.
#[derive(Clone, Debug)]
struct Lemmas {
    truth: Theorem,
    /// `{p, q} |- p /\ q`
    conj: Theorem,
    /// `{p /\ q} |- p`
    conjunct1: Theorem,
    /// `{p /\ q} |- q`
    conjunct2: Theorem,
    /// `|- (p ==> q) = (p /\ q = p)`
    imp_def: Theorem,
    /// `{p ==> q, p} |- q`
    mp: Theorem,
    /// `|- ~p = (p ==> F)`
    not_def: Theorem,
    /// `{F} |- p`
    contr: Theorem,
    /// `|- !P = (P = \x. T)` at `P : 'A -> bool`
    forall_def: Theorem,
    /// `{p \/ q, p ==> r, q ==> r} |- r`
    disj_cases: Theorem,
    /// `{p} |- p \/ q`
    disj1: Theorem,
    /// `{q} |- p \/ q`
    disj2: Theorem,
}

/// A kernel together with the derived logic.
#[derive(Clone, Debug)]
pub struct Logic {
    pub kernel: Kernel,
    lemmas: Arc<Lemmas>,
}

impl Logic {
    /// A fresh kernel with the connective lemmas proved and the
    /// excluded-middle axiom installed.
    pub fn bootstrap() -> Result<Logic> {
        let mut kernel = Kernel::new();
        let lemmas = Arc::new(prove_lemmas(&kernel)?);
        let t = bvar("t");
        let em = cn::mk_forall(t.clone(), mk_disj(t.to_term(), mk_neg(t.to_term())?)?)?;
        kernel.new_axiom("EXCLUDED_MIDDLE", &em)?;
        Ok(Logic { kernel, lemmas })
    }

    /// Bootstrap plus the datatype facts, the arithmetic base and the
    /// `isPeano`/`isPresburger` definitions.
    pub fn standard() -> Result<Logic> {
        let mut lg = Logic::bootstrap()?;
        lg.datatype_facts()?;
        lg.arithmetic_base()?;
        lg.define_is_peano()?;
        lg.define_is_presburger()?;
        Ok(lg)
    }

    pub fn axiom(&self, name: &str) -> Option<&Theorem> {
        self.kernel
            .axioms()
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, th)| th)
    }

    pub fn definition(&self, name: &str) -> Option<&Theorem> {
        self.kernel
            .definitions()
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, th)| th)
    }

    pub fn truth(&self) -> Theorem {
        self.lemmas.truth.clone()
    }
}

fn def(k: &Kernel, name: &str) -> Theorem {
    k.definitions()
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, th)| th.clone())
        .expect("connective defined by the kernel")
}

/// `|- c a1 .. an = body'` where `|- c = \x1..xn. body` is a definition and
/// `body'` its beta-reduct at the arguments.
fn unfold(k: &Kernel, name: &str, args: &[Term]) -> Result<Theorem> {
    let mut th = def(k, name);
    let (_, body) = th.concl().dest_eq().expect("equation");
    if let (Some((x, _)), Some(a0)) = (body.dest_abs(), args.first()) {
        let mut theta = crate::syntax::TypeSubst::new();
        if x.ty().has_type_vars() && a0.ty().match_into(x.ty(), &mut theta) {
            th = k.inst_type(&theta, &th)?;
        }
    }
    for a in args {
        th = k.mk_comb(&th, &k.refl(a)?)?;
        let (_, rhs) = th.concl().dest_eq().expect("equation");
        let b = k.beta(rhs)?;
        th = k.trans(&th, &b)?;
    }
    Ok(th)
}

fn sym(k: &Kernel, th: &Theorem) -> Result<Theorem> {
    let (l, _) = th.concl().dest_eq().ok_or_else(|| LogicError::Rule {
        rule: "SYM",
        msg: format!("not an equation: {:?}", th.concl()),
    })?;
    let eq = eq_const_at(l.ty());
    let lth = k.refl(l)?;
    let th1 = k.mk_comb(&k.mk_comb(&k.refl(&eq)?, th)?, &lth)?;
    Ok(k.eq_mp(&th1, &lth)?)
}

fn eq_const_at(ty: &HolType) -> Term {
    Term::constant(
        crate::kernel::names::EQ,
        HolType::fun_n([ty.clone(), ty.clone()], HolType::bool()),
    )
}

fn eqt_intro(k: &Kernel, truth: &Theorem, th: &Theorem) -> Result<Theorem> {
    Ok(k.deduct_antisym(th, truth)?)
}

fn eqt_elim(k: &Kernel, truth: &Theorem, th: &Theorem) -> Result<Theorem> {
    Ok(k.eq_mp(&sym(k, th)?, truth)?)
}

fn prove_hyp(k: &Kernel, th1: &Theorem, th2: &Theorem) -> Result<Theorem> {
    Ok(k.eq_mp(&k.deduct_antisym(th1, th2)?, th1)?)
}

/// Beta-reduces both sides of an equation at the head, repeatedly.
fn beta_sides(k: &Kernel, th: &Theorem) -> Result<Theorem> {
    let (l, r) = th.concl().dest_eq().expect("equation");
    let lth = head_beta(k, l)?;
    let rth = head_beta(k, r)?;
    let th = k.trans(&sym(k, &lth)?, th)?;
    Ok(k.trans(&th, &rth)?)
}

/// `|- t = t'` reducing head redexes of `t` until none is left.
fn head_beta(k: &Kernel, t: &Term) -> Result<Theorem> {
    let (f, args) = t.strip_app();
    if args.is_empty() || f.dest_abs().is_none() {
        return Ok(k.refl(t)?);
    }
    // reduce the innermost redex ((\x. b) a1) a2 .. an
    let mut th = k.beta(&Term::app(f.clone(), args[0].clone())?)?;
    for a in &args[1..] {
        th = k.mk_comb(&th, &k.refl(a)?)?;
    }
    let (_, r) = th.concl().dest_eq().expect("equation");
    let rest = head_beta(k, &r.clone())?;
    Ok(k.trans(&th, &rest)?)
}

fn prove_lemmas(k: &Kernel) -> Result<Lemmas> {
    let (p, q, r) = (bvar("p"), bvar("q"), bvar("r"));
    let (pt, qt, rt) = (p.to_term(), q.to_term(), r.to_term());

    // |- T
    let t_def = def(k, "T");
    let (_, t_rhs) = t_def.concl().dest_eq().expect("equation");
    let id = t_rhs.dest_eq().expect("equation").0.clone();
    let truth = k.eq_mp(&sym(k, &t_def)?, &k.refl(&id)?)?;

    // {p, q} |- p /\ q
    let and_unf = unfold(k, "/\\", &[pt.clone(), qt.clone()])?;
    let f = Var::new(
        "f",
        HolType::fun_n([HolType::bool(), HolType::bool()], HolType::bool()),
    );
    let p_t = eqt_intro(k, &truth, &k.assume(&pt)?)?;
    let q_t = eqt_intro(k, &truth, &k.assume(&qt)?)?;
    let fpq = k.mk_comb(&k.mk_comb(&k.refl(&f.to_term())?, &p_t)?, &q_t)?;
    let lam = k.abs(&f, &fpq)?;
    let conj = k.eq_mp(&sym(k, &and_unf)?, &lam)?;

    // {p /\ q} |- p  and  {p /\ q} |- q
    let pq = mk_conj(pt.clone(), qt.clone())?;
    let unf = k.eq_mp(&and_unf, &k.assume(&pq)?)?;
    let (a, b) = (bvar("a"), bvar("b"));
    let sel = |pick_first: bool| -> Result<Theorem> {
        let body = if pick_first { a.to_term() } else { b.to_term() };
        let s = Term::abs(a.clone(), Term::abs(b.clone(), body));
        let th = k.mk_comb(&unf, &k.refl(&s)?)?;
        let th = beta_sides(k, &th)?;
        eqt_elim(k, &truth, &th)
    };
    let conjunct1 = sel(true)?;
    let conjunct2 = sel(false)?;

    // implication
    let imp_def = unfold(k, "==>", &[pt.clone(), qt.clone()])?;
    let pimq = mk_imp(pt.clone(), qt.clone())?;
    let th = k.eq_mp(&imp_def, &k.assume(&pimq)?)?;
    let th = k.eq_mp(&sym(k, &th)?, &k.assume(&pt)?)?;
    let mp = prove_hyp(
        k,
        &th,
        &k.inst(
            &[(p.clone(), pt.clone()), (q.clone(), qt.clone())],
            &conjunct2,
        )?,
    )?;

    let not_def = unfold(k, "~", std::slice::from_ref(&pt))?;

    // universal quantifier
    let big_p = Var::new("P", HolType::fun(HolType::var("A"), HolType::bool()));
    let forall_def = unfold(k, "!", &[big_p.to_term()])?;

    let lemmas0 = Lemmas {
        truth: truth.clone(),
        conj,
        conjunct1,
        conjunct2,
        imp_def,
        mp,
        not_def,
        contr: truth.clone(),
        forall_def,
        disj_cases: truth.clone(),
        disj1: truth.clone(),
        disj2: truth,
    };
    let lg = Logic {
        kernel: k.clone(),
        lemmas: Arc::new(lemmas0),
    };

    // {F} |- p
    let f_def = def(k, "F");
    let all_p = lg.eq_mp(&f_def, &lg.assume(&cn::falsity())?)?;
    let contr = lg.spec(&pt, &all_p)?;

    // disjunction
    let or_unf = unfold(k, "\\/", &[pt.clone(), qt.clone()])?;
    let pr = mk_imp(pt.clone(), rt.clone())?;
    let qr = mk_imp(qt.clone(), rt.clone())?;
    let pq_or = mk_disj(pt.clone(), qt.clone())?;
    let all_r = lg.eq_mp(&or_unf, &lg.assume(&pq_or)?)?;
    let inst_r = lg.spec(&rt, &all_r)?;
    let disj_cases = lg.mp(&lg.mp(&inst_r, &lg.assume(&pr)?)?, &lg.assume(&qr)?)?;
    let intro = |th_r: Theorem| -> Result<Theorem> {
        let th = lg.disch(&qr, &th_r)?;
        let th = lg.disch(&pr, &th)?;
        let th = lg.gen(&r, &th)?;
        lg.eq_mp(&sym(k, &or_unf)?, &th)
    };
    let disj1 = intro(lg.mp(&lg.assume(&pr)?, &lg.assume(&pt)?)?)?;
    let disj2 = intro(lg.mp(&lg.assume(&qr)?, &lg.assume(&qt)?)?)?;

    let mut lemmas = (*lg.lemmas).clone();
    lemmas.contr = contr;
    lemmas.disj_cases = disj_cases;
    lemmas.disj1 = disj1;
    lemmas.disj2 = disj2;
    Ok(lemmas)
}

#[cfg(test)]
mod tests;
