use super::*;

#[test]
fn bootstrap_proves_truth() {
    let lg = Logic::bootstrap().unwrap();
    assert!(lg.truth().concl().is_const_named("T"));
    assert!(lg.truth().hyps().is_empty());
}

fn parse_free(name: &str, ty: HolType) -> Term {
    Term::var(name, ty)
}

#[test]
fn lem_schema_and_instance() {
    let lg = Logic::standard().unwrap();
    let lem = lg.prove_lem().unwrap();
    assert!(lem.hyps().is_empty());
    let p = parse_free("p", HolType::bool());
    let inst = lg.lem_instance(&lem, &p).unwrap();
    assert!(inst.hyps().is_empty());
    let want = mk_disj(p.clone(), mk_neg(p).unwrap()).unwrap();
    assert_eq!(inst.concl(), &want);
}

#[test]
fn induction_schemas() {
    use crate::kernel::oracle::Arithmetic;
    for lang in [Arithmetic::Peano, Arithmetic::Presburger] {
        let mut lg = Logic::standard().unwrap();
        let th = lg.prove_induction_schema(lang).unwrap();
        assert!(th.hyps().is_empty(), "{:?}", th.hyps());
        assert_eq!(lg.kernel.registry().len(), 1);
    }
}
