//! Acceptance criteria 1-8, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the summary lines are always shown.
//! Every random corpus is drawn from a fixed ChaCha seed.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cqe::export::{self, Format};
use cqe::session::Session;
use cqe_core::constructions::{construction_to_term, term_to_construction, type_to_construction};
use cqe_core::frontend::{parse_term, print_term};
use cqe_core::kernel::connectives::{
    dest_conj, dest_imp, mk_conj, mk_disj, mk_exists, mk_forall, mk_imp, mk_neg,
};
use cqe_core::kernel::{Kernel, KernelError, Theorem};
use cqe_core::logic::Logic;
use cqe_core::syntax::{
    vsubst, HolType, NoSideConditions, SyntaxError, Term, TermKind, TypeSubst, Var,
};
use cqe_core::testgen::TermGen;

const LEM: &str = include_str!("../corpus/lem.cqe");
const PEANO: &str = include_str!("../corpus/peano.cqe");
const PRESBURGER: &str = include_str!("../corpus/presburger.cqe");

type Outcome = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn standard() -> Logic {
    Logic::standard().expect("standard theory")
}

fn run(file: &str, text: &str) -> Result<Session, String> {
    let mut s = Session::new();
    s.run_script(file, text, |_, _| {})
        .map_err(|e| e.to_string())?;
    Ok(s)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn closed_theorem(s: &Session, name: &str, expected: &str) -> Result<Theorem, String> {
    let th = s
        .theorem(name)
        .ok_or_else(|| format!("{name} was not proved"))?
        .clone();
    let want = parse_term(&s.logic.kernel, expected).map_err(|e| e.to_string())?;
    ensure(th.hyps().is_empty(), || format!("{name} has hypotheses"))?;
    ensure(th.concl() == &want, || {
        format!(
            "{name} proves {} instead of {}",
            print_term(&s.logic.kernel, th.concl()),
            expected
        )
    })?;
    Ok(th)
}

fn c1_lem() -> Outcome {
    let s = run("lem.cqe", LEM)?;
    let lem = closed_theorem(
        &s,
        "lem",
        r#"!x:epsilon. isExprType x (TyBase "bool") ==> (eval x to bool) \/ ~(eval x to bool)"#,
    )?;
    closed_theorem(
        &s,
        "lem_ab",
        r"(a:bool) /\ (b:bool) \/ ~((a:bool) /\ (b:bool))",
    )?;
    // further instances through the same route on generated formulas; nested
    // quotations are left out because QUOTABLE only covers quotations of type epsilon
    let lg = standard();
    let gen = TermGen {
        max_depth: 4,
        evals: false,
        holes: false,
        poly: false,
    };
    let mut r = rng(1);
    let mut n = 0;
    while n < 20 {
        let p = gen.formula(&mut r);
        if has_quote(&p) {
            continue;
        }
        let th = lg
            .lem_instance(&lem, &p)
            .map_err(|e| format!("instance at {p:?}: {e}"))?;
        let want = mk_disj(p.clone(), mk_neg(p.clone()).unwrap()).unwrap();
        ensure(th.hyps().is_empty() && th.concl() == &want, || {
            format!(
                "instance at {} is {:?}",
                print_term(&lg.kernel, &p),
                th.concl()
            )
        })?;
        n += 1;
    }
    Ok(
        "schema proved by lem.cqe; |- p \\/ ~p exactly for the script instance and 20 generated p"
            .into(),
    )
}

fn has_quote(t: &Term) -> bool {
    match t.kind() {
        TermKind::Quote(..) | TermKind::Hole(..) | TermKind::Eval(..) => true,
        TermKind::App(f, a) => has_quote(f) || has_quote(a),
        TermKind::Abs(_, b) => has_quote(b),
        _ => false,
    }
}

fn induction_text(pred: &str) -> String {
    format!(
        "!f:epsilon. isExprType f (TyBiCons \"fun\" (TyBase \"num\") (TyBase \"bool\")) /\\ {pred} f \
         ==> (eval f to (num->bool)) 0 \
         /\\ (!n:num. (eval f to (num->bool)) n ==> (eval f to (num->bool)) (SUC n)) \
         ==> !n:num. (eval f to (num->bool)) n"
    )
}

fn c2_induction() -> Outcome {
    let p = run("peano.cqe", PEANO)?;
    let pt = closed_theorem(&p, "peano_induction", &induction_text("isPeano"))?;
    let q = run("presburger.cqe", PRESBURGER)?;
    closed_theorem(&q, "presburger_induction", &induction_text("isPresburger"))?;
    ensure(pt.provenance().axioms.contains("num_INDUCTION"), || {
        "peano_induction does not rest on num_INDUCTION".into()
    })?;
    ensure(p.logic.kernel.registry().len() == 1, || {
        "expected exactly one registered side condition".into()
    })?;
    Ok("both schemas proved from num_INDUCTION with one registered ~IS-EFFECTIVE-IN fact".into())
}

fn pure_corpus(n: usize, seed: u64) -> Vec<Term> {
    let gen = TermGen::pure(5);
    let mut r = rng(seed);
    (0..n).map(|_| gen.any(&mut r)).collect()
}

fn c3_law_of_quotation() -> Outcome {
    let lg = standard();
    let k = &lg.kernel;
    let mut mismatches = 0;
    for t in pure_corpus(200, 3) {
        let q = Term::quote(t.clone()).map_err(|e| e.to_string())?;
        let th = k.law_of_quo(&q).map_err(|e| format!("{t:?}: {e}"))?;
        let (l, c) = th.concl().dest_eq().ok_or("not an equation")?;
        let meta = term_to_construction(&t).map_err(|e| e.to_string())?;
        if l != &q || c != &meta || !th.hyps().is_empty() {
            mismatches += 1;
        }
    }
    ensure(mismatches == 0, || format!("{mismatches} mismatches"))?;
    Ok("200/200 terms, construction identical to the meta-level one".into())
}

fn c4_disquotation() -> Outcome {
    for t in pure_corpus(200, 3) {
        let c = term_to_construction(&t).map_err(|e| e.to_string())?;
        let back = construction_to_term(&c).map_err(|e| e.to_string())?;
        ensure(back == t, || {
            format!("round trip changed {t:?} into {back:?}")
        })?;
    }
    let corpus = pure_corpus(1000, 4);
    let mut r = rng(4);
    let mut pairs = 0;
    while pairs < 1000 {
        let a = corpus.choose(&mut r).unwrap();
        let b = corpus.choose(&mut r).unwrap();
        if a == b {
            continue;
        }
        pairs += 1;
        let ca = term_to_construction(a).unwrap();
        let cb = term_to_construction(b).unwrap();
        ensure(ca != cb, || format!("{a:?} and {b:?} share a construction"))?;
    }
    // every pair in the corpus at once
    let mut seen: HashMap<String, &Term> = HashMap::new();
    for t in &corpus {
        let key = format!("{:?}", term_to_construction(t).unwrap());
        if let Some(prev) = seen.insert(key, t) {
            ensure(prev == t, || format!("{prev:?} and {t:?} collide"))?;
        }
    }
    Ok(format!(
        "200/200 round trips; 1000/1000 sampled pairs distinct; {} distinct terms collision-free",
        seen.len()
    ))
}

/// The expected effect of substitution on a quotation: only hole contents change.
fn subst_holes_ref(b: &[(Var, Term)], t: &Term) -> Result<Term, SyntaxError> {
    Ok(match t.kind() {
        TermKind::Hole(c, s) => Term::hole(vsubst(b, c, &NoSideConditions)?.term, s.clone())?,
        TermKind::App(f, a) => Term::app(subst_holes_ref(b, f)?, subst_holes_ref(b, a)?)?,
        TermKind::Abs(v, body) => Term::abs(v.clone(), subst_holes_ref(b, body)?),
        TermKind::Quote(body, _) => Term::quote(subst_holes_ref(b, body)?)?,
        _ => t.clone(),
    })
}

fn c5_substitution() -> Outcome {
    let full = TermGen::full(4);
    let pure = TermGen::pure(4);
    let mut r = rng(5);

    // (a) hole-free quotations are opaque, even when the variable occurs inside
    for _ in 0..500 {
        let ty = full.ty(&mut r, 1);
        let x = full.var(&mut r, &ty);
        let u = full.term(&mut r, &ty);
        let body = Term::mk_eq(x.to_term(), pure.term(&mut r, &ty)).unwrap();
        let q = Term::quote(body).unwrap();
        let out = vsubst(&[(x.clone(), u)], &q, &NoSideConditions).map_err(|e| e.to_string())?;
        ensure(out.term == q && out.assumptions.is_empty(), || {
            format!("quotation changed: {q:?}")
        })?;
    }

    // (b) holes are transparent and nothing else in the quotation moves
    let mut reached = 0;
    for i in 0..500 {
        let x = Var::new("x", HolType::epsilon());
        let u = full.term(&mut r, &HolType::epsilon());
        let content = if i % 2 == 0 {
            x.to_term()
        } else {
            full.term(&mut r, &HolType::epsilon())
        };
        let q = Term::quote(
            Term::mk_eq(
                Term::hole(content, HolType::epsilon()).unwrap(),
                if r.gen_bool(0.5) {
                    x.to_term()
                } else {
                    pure.term(&mut r, &HolType::epsilon())
                },
            )
            .unwrap(),
        )
        .unwrap();
        let b = [(x.clone(), u)];
        let got = vsubst(&b, &q, &NoSideConditions).map(|s| s.term);
        let want = subst_holes_ref(&b, &q);
        ensure(got == want, || {
            format!("hole substitution differs on {q:?}")
        })?;
        if got.as_ref().is_ok_and(|g| g != &q) {
            reached += 1;
        }
    }

    // (c) evaluations are suspended as (\x. eval b to ty) u
    for _ in 0..500 {
        let ty = full.ty(&mut r, 1);
        let e = Term::eval(full.term(&mut r, &HolType::epsilon()), ty).unwrap();
        let xty = full.ty(&mut r, 1);
        let x = full.var(&mut r, &xty);
        let u = full.term(&mut r, &xty);
        let got = vsubst(&[(x.clone(), u.clone())], &e, &NoSideConditions)
            .map_err(|e| e.to_string())?
            .term;
        let want = Term::app(Term::abs(x.clone(), e.clone()), u.clone()).unwrap();
        let same_var = u.as_var() == Some(&x);
        ensure(got == want || (same_var && got == e), || {
            format!("{e:?} became {got:?}")
        })?;
    }

    // (d) blocked under a binder, reported, then unblocked by registration
    let base = standard();
    let shapes: [fn(&Var, &Term) -> Term; 4] = [
        |n, p| mk_forall(n.clone(), Term::app(p.clone(), n.to_term()).unwrap()).unwrap(),
        |n, p| mk_exists(n.clone(), Term::app(p.clone(), n.to_term()).unwrap()).unwrap(),
        |n, p| {
            let pn = Term::app(p.clone(), n.to_term()).unwrap();
            mk_forall(n.clone(), mk_imp(pn.clone(), pn).unwrap()).unwrap()
        },
        |n, p| {
            let pn = Term::app(p.clone(), n.to_term()).unwrap();
            Term::mk_eq(Term::abs(n.clone(), pn), p.clone()).unwrap()
        },
    ];
    for _ in 0..500 {
        let nty = [HolType::num(), HolType::bool(), HolType::epsilon()]
            .choose(&mut r)
            .unwrap()
            .clone();
        let n = full.var(&mut r, &nty);
        let f = loop {
            let f = full.var(&mut r, &HolType::epsilon());
            if f.name() != n.name() {
                break f;
            }
        };
        let pty = HolType::fun(nty.clone(), HolType::bool());
        let p = Var::new("P", pty.clone());
        let shape = shapes.choose(&mut r).unwrap();
        let formula = shape(&n, &p.to_term());
        let ev = Term::eval(f.to_term(), pty.clone()).unwrap();
        let mut lg = base.clone();
        let th = lg.kernel.assume(&formula).map_err(|e| e.to_string())?;
        match lg.kernel.inst(&[(p.clone(), ev.clone())], &th) {
            Err(KernelError::SubstitutionBlocked(b)) => {
                ensure(b.binder == n && b.var == p && b.replacement == ev, || {
                    format!("wrong side condition reported: {b:?}")
                })?;
            }
            other => return Err(format!("INST was not blocked on {formula:?}: {other:?}")),
        }
        let nei = lg
            .prove_nei_schema_var(&n, &f, &pty)
            .map_err(|e| e.to_string())?;
        lg.kernel
            .register_not_effective(&nei)
            .map_err(|e| e.to_string())?;
        let done = lg
            .kernel
            .inst(&[(p.clone(), ev.clone())], &th)
            .map_err(|e| format!("still blocked after registration: {e}"))?;
        ensure(done.concl() == &shape(&n, &ev), || {
            format!("unexpected result {:?}", done.concl())
        })?;
        ensure(nei.hyps().iter().all(|h| done.hyps().contains(h)), || {
            "side-condition hypotheses were dropped".into()
        })?;
    }
    Ok(format!(
        "500/500 each for opacity, hole transparency ({reached} changed), suspension, blocking"
    ))
}

fn c6_paradox_guards() -> Outcome {
    let lg = standard();
    let k = &lg.kernel;
    let eps = HolType::epsilon;
    let x = || Var::new("x", eps()).to_term();
    let ev = |t: Term, ty: HolType| Term::eval(t, ty).unwrap();
    let b = HolType::bool;
    let n = HolType::num;
    let suc = Term::constant("SUC", HolType::fun(n(), n()));
    let crafted: Vec<Term> = vec![
        ev(x(), b()),
        mk_neg(ev(x(), b())).unwrap(),
        Term::abs(
            Var::new("y", eps()),
            ev(Var::new("y", eps()).to_term(), n()),
        ),
        mk_conj(
            ev(Term::quote(Term::constant("T", b())).unwrap(), b()),
            Term::constant("T", b()),
        )
        .unwrap(),
        Term::app(ev(x(), HolType::fun(n(), b())), Term::constant("_0", n())).unwrap(),
        mk_forall(
            Var::new("z", eps()),
            ev(Var::new("z", eps()).to_term(), b()),
        )
        .unwrap(),
        ev(ev(x(), eps()), b()),
        Term::app(suc, ev(x(), n())).unwrap(),
        Term::app(
            Term::abs(Var::new("m", n()), Var::new("m", n()).to_term()),
            ev(x(), n()),
        )
        .unwrap(),
        Term::mk_eq(ev(x(), b()), Term::constant("T", b())).unwrap(),
    ];
    for body in &crafted {
        ensure(
            matches!(Term::quote(body.clone()), Err(SyntaxError::NotEvalFree(_))),
            || format!("quotation of {body:?} was accepted"),
        )?;
        let text = format!("Q_ {} _Q", print_term(k, body));
        ensure(parse_term(k, &text).is_err(), || {
            format!("the parser accepted {text}")
        })?;
        ensure(term_to_construction(body).is_err(), || {
            format!("{body:?} has a construction")
        })?;
    }

    // x := Q_ x _Q in eval x: BETA_REVAL only gives an implication, and its
    // isFreeIn antecedent is refutable.
    let xv = Var::new("x", eps());
    let qx = Term::quote(xv.to_term()).unwrap();
    let th = k
        .beta_reval(&xv, &xv.to_term(), &qx, &eps())
        .map_err(|e| e.to_string())?;
    ensure(th.concl().dest_eq().is_none(), || {
        "BETA_REVAL gave an equation".into()
    })?;
    let (ante, _) = dest_imp(th.concl()).ok_or("BETA_REVAL did not give an implication")?;
    let (_, not_free) = dest_conj(ante).ok_or("antecedent is not a conjunction")?;
    let free = cqe_core::kernel::connectives::dest_neg(not_free).ok_or("no negated isFreeIn")?;
    let (_, args) = free.strip_app();
    let redex = args[1].clone();
    let beta = k.beta(&redex).map_err(|e| e.to_string())?;
    let (_, reduced) = beta.concl().dest_eq().unwrap();
    // |- isFreeIn Q_x_Q Q_x_Q, then back to the redex form
    let decided = lg
        .is_free_in_conv(args[0], reduced)
        .map_err(|e| e.to_string())?;
    let head = Term::app(free.strip_app().0.clone(), args[0].clone()).unwrap();
    let back = lg.ap_term(&head, &beta).map_err(|e| e.to_string())?;
    let is_free = lg
        .eq_mp(&lg.sym(&back).unwrap(), &decided)
        .map_err(|e| format!("{e}; decided {:?}", decided.concl()))?;
    ensure(is_free.concl() == free, || {
        format!("decided {:?}", is_free.concl())
    })?;
    let a = lg.assume(ante).unwrap();
    let contra = lg
        .mp(&lg.not_elim(&lg.conjunct2(&a).unwrap()).unwrap(), &is_free)
        .map_err(|e| e.to_string())?;
    let refuted = lg
        .not_intro(&lg.disch(ante, &contra).unwrap())
        .map_err(|e| e.to_string())?;
    ensure(
        refuted.hyps().is_empty() && refuted.concl() == &mk_neg(ante.clone()).unwrap(),
        || "refutation has the wrong shape".into(),
    )?;
    Ok("10/10 quote-of-eval bodies rejected; double-substitution antecedent refuted".into())
}

/// One random kernel step. Returns whatever theorem the rule produced.
fn fuzz_step(lg: &Logic, r: &mut ChaCha8Rng, gen: &TermGen, pool: &[Theorem]) -> Option<Theorem> {
    let k: &Kernel = &lg.kernel;
    let th = |r: &mut ChaCha8Rng| pool.choose(r).unwrap().clone();
    let ty = |r: &mut ChaCha8Rng| gen.ty(r, 1);
    let eps = HolType::epsilon();
    let rule = r.gen_range(0..22);
    let out = match rule {
        0 => k.refl(&gen.any(r)),
        1 => k.trans(&th(r), &th(r)),
        2 => k.mk_comb(&th(r), &th(r)),
        3 => {
            let t = ty(r);
            k.abs(&gen.var(r, &t), &th(r))
        }
        4 => {
            let t = ty(r);
            let v = gen.var(r, &t);
            let body = gen.any(r);
            k.beta(&Term::app(Term::abs(v, body), gen.term(r, &t)).unwrap())
        }
        5 => k.assume(&gen.formula(r)),
        6 => k.eq_mp(&th(r), &th(r)),
        7 => k.deduct_antisym(&th(r), &th(r)),
        8 => {
            let t = ty(r);
            let v = gen.var(r, &t);
            k.inst(&[(v, gen.term(r, &t))], &th(r))
        }
        9 => {
            let mut theta = TypeSubst::new();
            theta.insert("A".into(), ty(r));
            k.inst_type(&theta, &th(r))
        }
        10 => k.eval_cong(&th(r), &ty(r)),
        11 => k.law_of_quo(&gen.term(r, &eps)),
        12 => k.law_of_quo_step(&gen.term(r, &eps)),
        13 => k.disquo(&gen.term(r, &eps), &ty(r)),
        14 => k.app_split(&gen.term(r, &eps), &gen.term(r, &eps), &ty(r), &ty(r)),
        15 => {
            let t = ty(r);
            k.abs_split(&gen.var(r, &t), &gen.term(r, &eps), &ty(r))
        }
        16 => k.quotable(&gen.any(r)),
        17 => {
            let t = ty(r);
            k.beta_eval(&gen.var(r, &t), &gen.term(r, &eps), &ty(r))
        }
        18 => {
            let t = ty(r);
            let v = gen.var(r, &t);
            k.beta_reval(&v, &gen.term(r, &eps), &gen.term(r, &t), &ty(r))
        }
        19 => {
            let t = ty(r);
            k.not_free_or_effective_in(&gen.var(r, &t), &gen.any(r))
        }
        20 => {
            let (t1, t2) = (ty(r), ty(r));
            k.neither_effective(&gen.var(r, &t1), &gen.var(r, &t2), &gen.any(r), &gen.any(r))
        }
        _ => {
            let c = gen.term(r, &eps);
            match r.gen_range(0..3) {
                0 => k.is_expr_type_conv(&c, &type_to_construction(&ty(r)).unwrap()),
                1 => k.is_free_in_conv(&gen.term(r, &eps), &c),
                _ => k.closed_construction_conv(&c),
            }
        }
    };
    out.ok()
}

fn well_formed(k: &Kernel, th: &Theorem) -> bool {
    th.hyps()
        .iter()
        .chain([th.concl()])
        .all(|t| t.ty().is_bool() && t.type_of().is_ok() && k.check_term(t).is_ok())
}

fn c7_kernel_fuzz() -> Outcome {
    let lg = standard();
    let gen = TermGen::full(3);
    let mut r = rng(7);
    let mut pool: Vec<Theorem> = vec![lg.truth()];
    let (mut produced, mut panics) = (0, 0);
    for _ in 0..10_000 {
        match catch_unwind(AssertUnwindSafe(|| fuzz_step(&lg, &mut r, &gen, &pool))) {
            Ok(Some(th)) => {
                if !well_formed(&lg.kernel, &th) {
                    return Err(format!("ill-formed theorem {th:?}"));
                }
                produced += 1;
                if pool.len() < 200 {
                    pool.push(th);
                } else {
                    let i = r.gen_range(0..pool.len());
                    pool[i] = th;
                }
            }
            Ok(None) => {}
            Err(_) => panics += 1,
        }
    }
    ensure(panics == 0, || format!("{panics} panics"))?;
    Ok(format!(
        "10000 steps, {produced} theorems, all well typed, no panics"
    ))
}

fn c8_round_trips() -> Outcome {
    let lg = standard();
    let k = &lg.kernel;
    let gen = TermGen::full(6);
    let mut r = rng(8);
    for _ in 0..1000 {
        let t = gen.any(&mut r);
        let text = print_term(k, &t);
        let back = parse_term(k, &text).map_err(|e| format!("{text}: {e}"))?;
        ensure(back == t, || format!("{text} reparsed differently"))?;
    }

    let script = format!("{LEM}\n{PEANO}");
    let render = |s: &Session| {
        let doc = export::document(s);
        (
            export::render(&doc, Format::JsonLike),
            export::render(&doc, Format::Sexp),
        )
    };
    let first = run("all.cqe", &script)?;
    let second = run("all.cqe", &script)?;
    let (j1, s1) = render(&first);
    let (j2, s2) = render(&second);
    ensure(j1 == j2 && s1 == s2, || {
        "exports differ between runs".into()
    })?;
    let n = export::verify_json(k, &j1)?;

    // replay the transcript in a fresh session; its `check` commands run again
    let replayed = run("replay.cqe", &first.transcript())?;
    let (j3, s3) = render(&replayed);
    ensure(j3 == j1 && s3 == s1, || "replayed export differs".into())?;
    Ok(format!(
        "1000/1000 print/parse identities; {n} exported theorems byte-identical across runs and replay"
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("excluded middle schema and instance", c1_lem),
        ("Peano and Presburger induction schemas", c2_induction),
        ("law of quotation", c3_law_of_quotation),
        ("disquotation and injectivity", c4_disquotation),
        ("substitution discipline", c5_substitution),
        ("paradox guards", c6_paradox_guards),
        ("kernel hygiene", c7_kernel_fuzz),
        ("round trips", c8_round_trips),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let res = catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match res {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1)
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
