use super::*;

#[test]
fn connectives_are_defined() {
    let k = Kernel::new();
    assert_eq!(k.definitions().len(), 8);
    assert!(k.constant_type("~").is_some());
}
