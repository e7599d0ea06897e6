//! Axiomatized theories: the syntax datatypes and the natural numbers.

use crate::constructions::{self, constructor};
use crate::kernel::connectives::{mk_conj, mk_forall, mk_imp, mk_neg};
use crate::kernel::names::{IS_FREE_IN, IS_PEANO_FORM, IS_PRESBURGER_FORM};
use crate::kernel::Theorem;
use crate::syntax::{HolType, Term, Var};

use super::{Logic, Result};

pub const NUM_INDUCTION: &str = "num_INDUCTION";
pub const EPSILON_INDUCTION: &str = "epsilon_INDUCT";
pub const TYPE_INDUCTION: &str = "type_INDUCT";

fn ctor(name: &str) -> Term {
    constructor(name).expect("known constructor")
}

fn arg_types(name: &str) -> Vec<HolType> {
    let mut ty = ctor(name).ty().clone();
    let mut out = Vec::new();
    while let Some((d, r)) = ty.dest_fun().map(|(d, r)| (d.clone(), r.clone())) {
        out.push(d);
        ty = r;
    }
    out
}

fn arg_var(ty: &HolType, i: usize, suffix: &str) -> Var {
    let base = if ty.is_base(crate::syntax::types::STR) {
        "s"
    } else if ty.is_epsilon() {
        "e"
    } else {
        "t"
    };
    Var::new(&format!("{base}{i}{suffix}"), ty.clone())
}

fn args_for(name: &str, suffix: &str) -> Vec<Var> {
    arg_types(name)
        .iter()
        .enumerate()
        .map(|(i, ty)| arg_var(ty, i, suffix))
        .collect()
}

fn apply(name: &str, vars: &[Var]) -> Result<Term> {
    Ok(Term::apps(ctor(name), vars.iter().map(Var::to_term))?)
}

fn forall_all(vars: &[Var], body: Term) -> Result<Term> {
    vars.iter()
        .rev()
        .try_fold(body, |acc, v| Ok(mk_forall(v.clone(), acc)?))
}

fn conj_list(ts: Vec<Term>) -> Result<Term> {
    let mut it = ts.into_iter().rev();
    let last = it.next().expect("non-empty conjunction");
    it.try_fold(last, |acc, t| Ok(mk_conj(t, acc)?))
}

impl Logic {
    fn datatype_axioms(&mut self, ty_name: &str, ctors: &[&str]) -> Result<Vec<Theorem>> {
        let mut out = Vec::new();
        for (i, c1) in ctors.iter().enumerate() {
            for c2 in &ctors[i + 1..] {
                let xs = args_for(c1, "");
                let ys = args_for(c2, "'");
                let eq = Term::mk_eq(apply(c1, &xs)?, apply(c2, &ys)?)?;
                let all: Vec<Var> = xs.into_iter().chain(ys).collect();
                let stmt = forall_all(&all, mk_neg(eq)?)?;
                let name = format!("{ty_name}_DISTINCT_{c1}_{c2}");
                out.push(self.kernel.new_axiom(&name, &stmt)?);
            }
        }
        for c in ctors {
            let xs = args_for(c, "");
            let ys = args_for(c, "'");
            let eq = Term::mk_eq(apply(c, &xs)?, apply(c, &ys)?)?;
            let parts = xs
                .iter()
                .zip(&ys)
                .map(|(x, y)| Term::mk_eq(x.to_term(), y.to_term()))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let all: Vec<Var> = xs.into_iter().chain(ys).collect();
            let stmt = forall_all(&all, mk_imp(eq, conj_list(parts)?)?)?;
            out.push(
                self.kernel
                    .new_axiom(&format!("{ty_name}_INJ_{c}"), &stmt)?,
            );
        }
        Ok(out)
    }

    fn induction_axiom(&mut self, name: &str, ty: HolType, ctors: &[&str]) -> Result<Theorem> {
        let p = Var::new("P", HolType::fun(ty.clone(), HolType::bool()));
        let holds = |t: Term| Term::app(p.to_term(), t);
        let mut cases = Vec::new();
        for c in ctors {
            let xs = args_for(c, "");
            let recursive: Vec<Term> = xs
                .iter()
                .filter(|x| x.ty() == &ty)
                .map(|x| holds(x.to_term()))
                .collect::<std::result::Result<_, _>>()?;
            let concl = holds(apply(c, &xs)?)?;
            let body = if recursive.is_empty() {
                concl
            } else {
                mk_imp(conj_list(recursive)?, concl)?
            };
            cases.push(forall_all(&xs, body)?);
        }
        let x = Var::new("x", ty);
        let all_x = mk_forall(x.clone(), holds(x.to_term())?)?;
        let stmt = mk_forall(p, mk_imp(conj_list(cases)?, all_x)?)?;
        Ok(self.kernel.new_axiom(name, &stmt)?)
    }

    /// Distinctness, injectivity and induction for `epsilon` and `type`,
    /// installed as axioms.
    pub fn datatype_facts(&mut self) -> Result<Vec<Theorem>> {
        let mut out = self.datatype_axioms("epsilon", &constructions::EPSILON_CONSTRUCTORS)?;
        out.push(self.induction_axiom(
            EPSILON_INDUCTION,
            HolType::epsilon(),
            &constructions::EPSILON_CONSTRUCTORS,
        )?);
        out.extend(self.datatype_axioms("type", &constructions::TYPE_CONSTRUCTORS)?);
        out.push(self.induction_axiom(
            TYPE_INDUCTION,
            HolType::type_rep(),
            &constructions::TYPE_CONSTRUCTORS,
        )?);
        Ok(out)
    }

    /// Constants `_0`, `SUC`, `+`, `*`, `<=` on `num`, and the axiom
    /// `num_INDUCTION`: `!P. P _0 /\ (!n. P n ==> P (SUC n)) ==> !n. P n`.
    pub fn arithmetic_base(&mut self) -> Result<Theorem> {
        let num = HolType::num;
        let k = &mut self.kernel;
        k.new_constant("_0", num())?;
        k.new_constant("SUC", HolType::fun(num(), num()))?;
        k.new_constant("+", HolType::fun_n([num(), num()], num()))?;
        k.new_constant("*", HolType::fun_n([num(), num()], num()))?;
        k.new_constant("<=", HolType::fun_n([num(), num()], HolType::bool()))?;
        let p = Var::new("P", HolType::fun(num(), HolType::bool()));
        let n = Var::new("n", num());
        let pn = |t: Term| Term::app(p.to_term(), t);
        let suc_n = Term::app(
            Term::constant("SUC", HolType::fun(num(), num())),
            n.to_term(),
        )?;
        let step = mk_forall(n.clone(), mk_imp(pn(n.to_term())?, pn(suc_n)?)?)?;
        let base = pn(Term::constant("_0", num()))?;
        let concl = mk_forall(n.clone(), pn(n.to_term())?)?;
        let stmt = mk_forall(p.clone(), mk_imp(mk_conj(base, step)?, concl)?)?;
        Ok(k.new_axiom(NUM_INDUCTION, &stmt)?)
    }

    fn define_arithmetic(&mut self, name: &str, form: &str) -> Result<Theorem> {
        let e = HolType::epsilon;
        let f = Var::new("f", e());
        let v = Var::new("v", e());
        let form_c = Term::constant(form, HolType::fun(e(), HolType::bool()));
        let free_in = Term::constant(IS_FREE_IN, HolType::fun_n([e(), e()], HolType::bool()));
        let closed = mk_forall(
            v.clone(),
            mk_neg(Term::apps(free_in, [v.to_term(), f.to_term()])?)?,
        )?;
        let body = Term::abs(f.clone(), mk_conj(Term::app(form_c, f.to_term())?, closed)?);
        Ok(self.kernel.new_basic_definition(name, &body)?)
    }

    /// `isPeano = \f. isPeanoForm f /\ (!v. ~(isFreeIn v f))`: `f` denotes a
    /// closed predicate `\n:num. p` of first-order Peano arithmetic.
    pub fn define_is_peano(&mut self) -> Result<Theorem> {
        self.define_arithmetic("isPeano", IS_PEANO_FORM)
    }

    /// As [`Logic::define_is_peano`], without multiplication.
    pub fn define_is_presburger(&mut self) -> Result<Theorem> {
        self.define_arithmetic("isPresburger", IS_PRESBURGER_FORM)
    }
}
