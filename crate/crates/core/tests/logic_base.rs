use cqe_core::constructions::{
    constructor, str_lit, term_to_construction, type_to_construction, APP, EPSILON_CONSTRUCTORS,
    QUO_VAR, TYPE_CONSTRUCTORS,
};
use cqe_core::frontend::parse_term;
use cqe_core::kernel::connectives::dest_neg;
use cqe_core::kernel::oracle::Arithmetic;
use cqe_core::kernel::{mk_is_expr_type_rep, mk_is_free_in, KernelError};
use cqe_core::logic::{Logic, LogicError, NUM_INDUCTION};
use cqe_core::syntax::{HolType, Term};

fn tm(lg: &Logic, s: &str) -> Term {
    parse_term(&lg.kernel, s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn value(lg: &Logic, s: &str) -> Term {
    term_to_construction(&tm(lg, s)).unwrap()
}

fn qvar(n: &str, ty: &HolType) -> Term {
    Term::apps(
        constructor(QUO_VAR).unwrap(),
        [str_lit(n), type_to_construction(ty).unwrap()],
    )
    .unwrap()
}

#[test]
fn datatype_axioms_are_installed() {
    let lg = Logic::standard().unwrap();
    let mut distinct = 0;
    for (i, a) in EPSILON_CONSTRUCTORS.iter().enumerate() {
        for b in &EPSILON_CONSTRUCTORS[i + 1..] {
            let th = lg
                .axiom(&format!("epsilon_DISTINCT_{a}_{b}"))
                .unwrap_or_else(|| panic!("{a} {b}"));
            assert!(th.hyps().is_empty());
            distinct += 1;
        }
        assert!(lg.axiom(&format!("epsilon_INJ_{a}")).is_some());
    }
    assert_eq!(distinct, 10);
    for (i, a) in TYPE_CONSTRUCTORS.iter().enumerate() {
        for b in &TYPE_CONSTRUCTORS[i + 1..] {
            assert!(lg.axiom(&format!("type_DISTINCT_{a}_{b}")).is_some());
        }
        assert!(lg.axiom(&format!("type_INJ_{a}")).is_some());
    }
    let app_abs = lg.axiom("epsilon_DISTINCT_App_Abs").unwrap();
    let want = tm(&lg, r"!e0 e1 e0' e1'. ~(App e0 e1 = Abs e0' e1')");
    assert_eq!(app_abs.concl(), &want);
}

#[test]
fn num_induction_verbatim() {
    let lg = Logic::standard().unwrap();
    let ind = lg.axiom(NUM_INDUCTION).unwrap();
    let want = tm(
        &lg,
        r"!P:num->bool. P _0 /\ (!n. P n ==> P (SUC n)) ==> !n. P n",
    );
    assert_eq!(ind.concl(), &want);

    let p = tm(&lg, r"\n:num. n = n");
    let th = lg.spec(&p, ind).unwrap();
    let want = tm(
        &lg,
        r"(\n:num. n = n) _0 /\ (!n. (\n:num. n = n) n ==> (\n:num. n = n) (SUC n)) ==> !n. (\n:num. n = n) n",
    );
    assert_eq!(th.concl(), &want);
}

#[test]
fn axiom_names_are_unique() {
    let mut lg = Logic::standard().unwrap();
    let t = tm(&lg, "T");
    assert!(matches!(
        lg.kernel.new_axiom(NUM_INDUCTION, &t),
        Err(KernelError::DuplicateName(_))
    ));
}

#[test]
fn expr_type_oracle() {
    let lg = Logic::standard().unwrap();
    let num = type_to_construction(&HolType::num()).unwrap();
    let bool_ = type_to_construction(&HolType::bool()).unwrap();
    let c = value(&lg, "(x:num) + SUC 0");

    let th = lg.is_expr_type_conv(&c, &num).unwrap();
    assert_eq!(
        th.concl(),
        &mk_is_expr_type_rep(c.clone(), num.clone()).unwrap()
    );
    assert!(th.hyps().is_empty());
    assert!(th
        .provenance()
        .oracles
        .iter()
        .any(|o| o.contains("IS_EXPR_TYPE")));

    let th = lg.is_expr_type_conv(&c, &bool_).unwrap();
    assert!(dest_neg(th.concl()).is_some());

    let x = qvar("x", &HolType::num());
    let bad = Term::apps(constructor(APP).unwrap(), [x.clone(), x]).unwrap();
    let th = lg.is_expr_type_conv(&bad, &num).unwrap();
    assert!(dest_neg(th.concl()).is_some());

    let open = Term::var("e", HolType::epsilon());
    assert!(matches!(
        lg.is_expr_type_conv(&open, &num),
        Err(LogicError::Kernel(KernelError::NotClosed(_)))
    ));
}

#[test]
fn free_in_oracle() {
    let lg = Logic::standard().unwrap();
    let x = qvar("x", &HolType::num());
    let b = value(&lg, "(x:num) + SUC 0");
    let th = lg.is_free_in_conv(&x, &b).unwrap();
    assert_eq!(th.concl(), &mk_is_free_in(x.clone(), b).unwrap());

    let th = lg.is_free_in_conv(&x, &value(&lg, r"\x:num. x")).unwrap();
    assert!(dest_neg(th.concl()).is_some());
    let th = lg
        .is_free_in_conv(&qvar("y", &HolType::num()), &value(&lg, "(x:num) + SUC 0"))
        .unwrap();
    assert!(dest_neg(th.concl()).is_some());

    assert!(lg
        .is_free_in_conv(&value(&lg, "SUC 0"), &value(&lg, "x:num"))
        .is_err());
}

#[test]
fn arithmetic_classification() {
    let lg = Logic::standard().unwrap();
    let refl = tm(&lg, r"Q_ \n:num. n = n _Q");
    let th = lg.arithmetic_conv(Arithmetic::Peano, &refl).unwrap();
    assert_eq!(th.concl(), &tm(&lg, r"isPeano Q_ \n:num. n = n _Q"));

    let mul = tm(&lg, r"Q_ \n:num. n * n = n _Q");
    let th = lg.arithmetic_conv(Arithmetic::Peano, &mul).unwrap();
    assert!(dest_neg(th.concl()).is_none());
    let th = lg.arithmetic_conv(Arithmetic::Presburger, &mul).unwrap();
    assert_eq!(
        th.concl(),
        &tm(&lg, r"~(isPresburger Q_ \n:num. n * n = n _Q)")
    );

    // free variable other than the bound one
    let open = tm(&lg, r"Q_ \n:num. n = m _Q");
    let th = lg.arithmetic_conv(Arithmetic::Peano, &open).unwrap();
    assert!(dest_neg(th.concl()).is_some());

    let x = qvar("x", &HolType::num());
    let improper = Term::apps(constructor(APP).unwrap(), [x.clone(), x]).unwrap();
    let th = lg.arithmetic_conv(Arithmetic::Peano, &improper).unwrap();
    assert!(dest_neg(th.concl()).is_some());
}
