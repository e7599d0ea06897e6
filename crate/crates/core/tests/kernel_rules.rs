use cqe_core::constructions::{term_to_construction, type_to_construction};
use cqe_core::frontend::parse_term;
use cqe_core::kernel::connectives::{dest_disj, dest_imp, mk_neg};
use cqe_core::kernel::{KernelError, Theorem};
use cqe_core::logic::Logic;
use cqe_core::syntax::{vsubst_plain, HolType, Term, TypeSubst, Var};

fn logic() -> Logic {
    Logic::standard().unwrap()
}

fn tm(lg: &Logic, s: &str) -> Term {
    parse_term(&lg.kernel, s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn var(name: &str, ty: HolType) -> Var {
    Var::new(name, ty)
}

fn assert_concl(lg: &Logic, th: &Theorem, s: &str) {
    assert_eq!(th.concl(), &tm(lg, s), "got {:?}", th.concl());
}

#[test]
fn refl_beta_eq_mp() {
    let lg = logic();
    let k = &lg.kernel;
    let x = tm(&lg, "x:num");
    assert_concl(&lg, &k.refl(&x).unwrap(), "(x:num) = x");

    let th = k.beta(&tm(&lg, r"(\x:bool. x /\ T) (y:bool)")).unwrap();
    assert_concl(&lg, &th, r"(\x:bool. x /\ T) (y:bool) = (y /\ T)");
    assert!(matches!(k.beta(&x), Err(KernelError::Shape { .. })));

    let p = tm(&lg, "p:bool");
    let eq = k.assume(&tm(&lg, "(p:bool) = q")).unwrap();
    let th = k.eq_mp(&eq, &k.assume(&p).unwrap()).unwrap();
    assert_concl(&lg, &th, "q:bool");
    assert_eq!(th.hyps().len(), 2);
}

#[test]
fn deduct_antisym_and_mk_comb() {
    let lg = logic();
    let k = &lg.kernel;
    let (p, q) = (tm(&lg, "p:bool"), tm(&lg, "q:bool"));
    let th = k
        .deduct_antisym(&k.assume(&p).unwrap(), &k.assume(&q).unwrap())
        .unwrap();
    assert_concl(&lg, &th, "(p:bool) = q");
    let f = k.refl(&tm(&lg, "SUC")).unwrap();
    let a = k.assume(&tm(&lg, "(m:num) = n")).unwrap();
    assert_concl(&lg, &k.mk_comb(&f, &a).unwrap(), "SUC (m:num) = SUC n");
    assert!(k.mk_comb(&a, &f).is_err());
}

#[test]
fn abs_checks_hypotheses_by_effectiveness() {
    let mut lg = logic();
    let x = var("x", HolType::num());
    let f = var("f", HolType::epsilon());
    let h = tm(&lg, "eval (f:epsilon) to bool");
    let th = lg.kernel.assume(&h).unwrap();
    let th = lg.eqt_intro(&th).unwrap();
    assert!(matches!(
        lg.kernel.abs(&x, &th),
        Err(KernelError::BinderInHypothesis { .. })
    ));
    let nei = lg.prove_nei_schema_var(&x, &f, &HolType::bool()).unwrap();
    lg.kernel.register_not_effective(&nei).unwrap();
    let out = lg.kernel.abs(&x, &th).unwrap();
    for h in nei.hyps() {
        assert!(out.hyps().contains(h));
    }
    // a hypothesis that merely mentions another variable is no obstacle
    let th = lg.kernel.assume(&tm(&lg, "(y:num) = y")).unwrap();
    assert!(lg.kernel.abs(&x, &lg.eqt_intro(&th).unwrap()).is_ok());
    let th = lg.kernel.assume(&tm(&lg, "(x:num) = x")).unwrap();
    assert!(lg.kernel.abs(&x, &lg.eqt_intro(&th).unwrap()).is_err());
}

#[test]
fn inst_classic_and_opaque() {
    let lg = logic();
    let k = &lg.kernel;
    // capture avoidance on eval-free terms
    let th = k.assume(&tm(&lg, "!y:bool. (x:bool) ==> y")).unwrap();
    let out = k
        .inst(&[(var("x", HolType::bool()), tm(&lg, "y:bool"))], &th)
        .unwrap();
    let (_, body) = cqe_core::kernel::connectives::dest_forall(out.concl()).unwrap();
    let (l, r) = dest_imp(body).unwrap();
    assert_eq!(l, &tm(&lg, "y:bool"));
    assert_ne!(r, l);

    // quotation-only sequents are left alone
    let th = k
        .assume(&tm(&lg, "Q_ (x:bool) _Q = Q_ (x:bool) /\\ T _Q"))
        .unwrap();
    let out = k
        .inst(&[(var("x", HolType::bool()), tm(&lg, "F"))], &th)
        .unwrap();
    assert_eq!(out.concl(), th.concl());
    assert_eq!(out.hyps(), th.hyps());
}

#[test]
fn inst_type_leaves_quotations_alone() {
    let lg = logic();
    let k = &lg.kernel;
    let mut theta = TypeSubst::new();
    theta.insert("A".into(), HolType::bool());
    let th = k.refl(&tm(&lg, "x:'A")).unwrap();
    assert_concl(&lg, &k.inst_type(&theta, &th).unwrap(), "(x:bool) = x");
    let th = k.refl(&tm(&lg, "Q_ (x:'A) _Q")).unwrap();
    assert!(matches!(
        k.inst_type(&theta, &th),
        Err(KernelError::QuotationTypePolymorphism(_))
    ));
    // type variables elsewhere in a theorem that has quotations are fine
    let th = k
        .refl(&tm(&lg, "(y:'A) = y /\\ Q_ T _Q = Q_ T _Q"))
        .unwrap();
    let out = k.inst_type(&theta, &th).unwrap();
    assert_concl(
        &lg,
        &out,
        "((y:bool) = y /\\ Q_ T _Q = Q_ T _Q) = ((y:bool) = y /\\ Q_ T _Q = Q_ T _Q)",
    );
}

#[test]
fn substitution_into_evaluations() {
    let lg = logic();
    let x = var("x", HolType::epsilon());
    let e = tm(&lg, "eval (x:epsilon) to bool");
    assert_eq!(vsubst_plain(&[(x.clone(), x.to_term())], &e).unwrap(), e);
    let u = tm(&lg, "Q_ T _Q");
    let got = vsubst_plain(&[(x.clone(), u.clone())], &e).unwrap();
    assert_eq!(got, Term::app(Term::abs(x, e), u).unwrap());
}

#[test]
fn law_of_quotation_steps() {
    let lg = logic();
    let k = &lg.kernel;
    let step = |s: &str| k.law_of_quo_step(&tm(&lg, s)).unwrap();
    assert_concl(
        &lg,
        &step("Q_ (f:bool->bool) (a:bool) _Q"),
        "Q_ (f:bool->bool) (a:bool) _Q = App Q_ (f:bool->bool) _Q Q_ (a:bool) _Q",
    );
    assert_concl(
        &lg,
        &step(r"Q_ \x:num. SUC x _Q"),
        r"Q_ \x:num. SUC x _Q = Abs Q_ (x:num) _Q Q_ SUC (x:num) _Q",
    );
    assert_concl(
        &lg,
        &step("Q_ Q_ (a:bool) _Q _Q"),
        "Q_ Q_ (a:bool) _Q _Q = Quo Q_ (a:bool) _Q",
    );

    for s in [
        "Q_ Q_ Q_ (a:bool) _Q _Q _Q",
        r"Q_ \x:num. Q_ x _Q _Q",
        "Q_ (f:bool->bool) (a:bool) _Q",
    ] {
        let q = tm(&lg, s);
        let th = k.law_of_quo(&q).unwrap();
        let (_, c) = th.concl().dest_eq().unwrap();
        let cqe_core::syntax::TermKind::Quote(body, _) = q.kind() else {
            unreachable!()
        };
        assert_eq!(c, &term_to_construction(body).unwrap(), "{s}");
    }
    assert!(matches!(
        k.law_of_quo(&tm(&lg, "Q_ (H_ (c:epsilon) _H:bool) _Q")),
        Err(KernelError::HasHoles(_))
    ));
}

#[test]
fn disquotation_of_atoms() {
    let lg = logic();
    let k = &lg.kernel;
    let th = k
        .disquo(&tm(&lg, "Q_ (x:bool) _Q"), &HolType::bool())
        .unwrap();
    assert_concl(&lg, &th, "(eval Q_ (x:bool) _Q to bool) = (x:bool)");
    let sucty = HolType::fun(HolType::num(), HolType::num());
    let th = k.disquo(&tm(&lg, "Q_ SUC _Q"), &sucty).unwrap();
    assert_concl(&lg, &th, "(eval Q_ SUC _Q to (num->num)) = SUC");
    assert!(matches!(
        k.disquo(&tm(&lg, "Q_ SUC 0 _Q"), &HolType::num()),
        Err(KernelError::NotAtomicQuote(_))
    ));
    assert!(matches!(
        k.disquo(&tm(&lg, "Q_ (x:bool) _Q"), &HolType::num()),
        Err(KernelError::TypeMismatch(_))
    ));
}

#[test]
fn app_split_discharged() {
    let lg = logic();
    let k = &lg.kernel;
    let (a, b) = (tm(&lg, "Q_ (~) _Q"), tm(&lg, "Q_ (p:bool) _Q"));
    let th = k
        .app_split(&a, &b, &HolType::bool(), &HolType::bool())
        .unwrap();
    let (ante, _) = dest_imp(th.concl()).unwrap();
    let fact = lg
        .conj(
            &lg.is_expr_type_conv(
                &a,
                &tm(&lg, r#"TyBiCons "fun" (TyBase "bool") (TyBase "bool")"#),
            )
            .unwrap(),
            &lg.is_expr_type_conv(&b, &tm(&lg, r#"TyBase "bool""#))
                .unwrap(),
        )
        .unwrap();
    assert_eq!(fact.concl(), ante);
    let eq = lg.mp(&th, &fact).unwrap();
    assert_concl(
        &lg,
        &eq,
        "(eval App Q_ (~) _Q Q_ (p:bool) _Q to bool) = (eval Q_ (~) _Q to (bool->bool)) (eval Q_ (p:bool) _Q to bool)",
    );
    // arbitrary epsilon variables: still an implication
    let th = k
        .app_split(
            &tm(&lg, "u:epsilon"),
            &tm(&lg, "v:epsilon"),
            &HolType::num(),
            &HolType::bool(),
        )
        .unwrap();
    assert!(dest_imp(th.concl()).is_some());
    assert!(k
        .app_split(
            &tm(&lg, "T"),
            &tm(&lg, "v:epsilon"),
            &HolType::num(),
            &HolType::bool()
        )
        .is_err());
}

#[test]
fn abs_split_discharged() {
    let lg = logic();
    let k = &lg.kernel;
    let y = var("y", HolType::num());
    let a = tm(&lg, "Q_ (x:num) + SUC (SUC (SUC 0)) _Q");
    let th = k.abs_split(&y, &a, &HolType::num()).unwrap();
    let done = lg.discharge_quote_conditions(&th).unwrap();
    assert_concl(
        &lg,
        &done,
        r"(eval Abs Q_ (y:num) _Q Q_ (x:num) + SUC (SUC (SUC 0)) _Q to (num->num)) = (\y:num. (eval Q_ (x:num) + SUC (SUC (SUC 0)) _Q to num))",
    );
    assert!(matches!(
        k.abs_split(&y, &tm(&lg, "eval (c:epsilon) to epsilon"), &HolType::num()),
        Err(KernelError::NotEvalFree(_))
    ));
}

#[test]
fn quotable_and_beta_eval() {
    let lg = logic();
    let k = &lg.kernel;
    let th = k.quotable(&tm(&lg, "a:epsilon")).unwrap();
    assert_concl(
        &lg,
        &th,
        r#"isExprType (a:epsilon) (TyBase "epsilon") ==> (eval Quo (a:epsilon) to epsilon) = a"#,
    );
    let c = tm(&lg, "Q_ Q_ T _Q _Q");
    let th = k.quotable(&c).unwrap();
    let fact = lg
        .is_expr_type_conv(&c, &type_to_construction(&HolType::epsilon()).unwrap())
        .unwrap();
    assert!(lg.mp(&th, &fact).is_ok());
    assert!(k.quotable(&tm(&lg, "T")).is_err());

    let x = var("x", HolType::num());
    let th = k
        .beta_eval(&x, &tm(&lg, "b:epsilon"), &HolType::bool())
        .unwrap();
    assert_concl(
        &lg,
        &th,
        r"(\x:num. (eval (b:epsilon) to bool)) (x:num) = (eval (b:epsilon) to bool)",
    );
}

#[test]
fn beta_reval_on_closed_constructions() {
    let lg = logic();
    let k = &lg.kernel;
    let x = var("x", HolType::num());
    let b = tm(&lg, "Q_ (z:num) = 0 _Q");
    let th = k
        .beta_reval(&x, &b, &tm(&lg, "SUC 0"), &HolType::bool())
        .unwrap();
    let eq = lg.discharge_quote_conditions(&th).unwrap();
    assert_concl(
        &lg,
        &eq,
        r"(\x:num. (eval Q_ (z:num) = 0 _Q to bool)) (SUC 0) = (eval (\x:num. Q_ (z:num) = 0 _Q) (SUC 0) to bool)",
    );
    // the double-substitution pattern: x := Q_ x _Q in eval x
    let xe = var("x", HolType::epsilon());
    let th = k
        .beta_reval(
            &xe,
            &xe.to_term(),
            &tm(&lg, "Q_ (x:epsilon) _Q"),
            &HolType::epsilon(),
        )
        .unwrap();
    assert!(lg.discharge_quote_conditions(&th).is_err());
    // the antecedent mentions (\x. b) a itself, not its quotation, so b need not be eval-free
    let th = k
        .beta_reval(
            &x,
            &tm(&lg, "eval (c:epsilon) to epsilon"),
            &tm(&lg, "0"),
            &HolType::bool(),
        )
        .unwrap();
    assert!(dest_imp(th.concl()).is_some());
}

#[test]
fn not_free_means_not_effective() {
    let lg = logic();
    let k = &lg.kernel;
    let x = var("x", HolType::num());
    let th = k
        .not_free_or_effective_in(&x, &tm(&lg, "Q_ (x:num) + SUC 0 _Q"))
        .unwrap();
    assert!(th.hyps().is_empty());
    assert!(cqe_core::kernel::connectives::dest_not_effective(th.concl()).is_some());
    assert!(k.not_free_or_effective_in(&x, &tm(&lg, "y:num")).is_ok());
    assert!(matches!(
        k.not_free_or_effective_in(&x, &tm(&lg, "x:num")),
        Err(KernelError::FreeOccurrence { .. })
    ));
    assert!(matches!(
        k.not_free_or_effective_in(&x, &tm(&lg, "eval (c:epsilon) to num")),
        Err(KernelError::NotEvalFree(_))
    ));
}

#[test]
fn neither_effective_discharged_by_left_disjunct() {
    let lg = logic();
    let k = &lg.kernel;
    let (x, y) = (var("x", HolType::num()), var("y", HolType::num()));
    let a = tm(&lg, "SUC (z:num)");
    let b = tm(&lg, "(x:num) + y");
    let th = k.neither_effective(&x, &y, &a, &b).unwrap();
    let (ante, _) = dest_imp(th.concl()).unwrap();
    let (_, right) = dest_disj(ante).unwrap();
    let left = k.not_free_or_effective_in(&y, &a).unwrap();
    let eq = lg.mp(&th, &lg.disj1(&left, right).unwrap()).unwrap();
    assert_concl(
        &lg,
        &eq,
        r"(\x:num. \y:num. (x:num) + y) (SUC (z:num)) = (\y:num. (\x:num. (x:num) + y) (SUC (z:num)))",
    );
    assert!(matches!(
        k.neither_effective(&x, &x, &a, &b),
        Err(KernelError::SameVariable(_))
    ));
}

#[test]
fn registry_and_extension() {
    let mut lg = logic();
    let x = var("x", HolType::num());
    let nei = lg
        .kernel
        .not_free_or_effective_in(&x, &tm(&lg, "y:num"))
        .unwrap();
    lg.kernel.register_not_effective(&nei).unwrap();
    lg.kernel.register_not_effective(&nei).unwrap();
    assert_eq!(lg.kernel.registry().len(), 1);
    let t = lg.truth();
    assert!(matches!(
        lg.kernel.register_not_effective(&t),
        Err(KernelError::WrongShape(_))
    ));

    let p = tm(&lg, "(c0:bool) = c0");
    lg.kernel.new_axiom("my_ax", &p).unwrap();
    assert!(matches!(
        lg.kernel.new_axiom("my_ax", &p),
        Err(KernelError::DuplicateName(_))
    ));
    assert!(matches!(
        lg.kernel
            .new_basic_definition("open_def", &tm(&lg, "SUC (n:num)")),
        Err(KernelError::OpenBody(_))
    ));
    let d = lg
        .kernel
        .new_basic_definition("two", &tm(&lg, "SUC (SUC 0)"))
        .unwrap();
    assert_concl(&lg, &d, "two = SUC (SUC 0)");
    assert!(lg
        .kernel
        .new_basic_definition("two", &tm(&lg, "0"))
        .is_err());
}

#[test]
fn connective_definitions_hold_at_bool() {
    let lg = logic();
    // T is provable and ~F follows
    assert_concl(&lg, &lg.truth(), "T");
    let nf = lg
        .not_intro(
            &lg.disch(&tm(&lg, "F"), &lg.kernel.assume(&tm(&lg, "F")).unwrap())
                .unwrap(),
        )
        .unwrap();
    assert_eq!(nf.concl(), &mk_neg(tm(&lg, "F")).unwrap());
    for name in ["T", "/\\", "==>", "!", "?", "\\/", "F", "~"] {
        assert!(
            lg.kernel.definitions().iter().any(|(n, _)| n == name),
            "{name}"
        );
    }
}
