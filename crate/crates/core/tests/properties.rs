mod common;

#[test]
fn field_axioms() {
    common::field_axioms().unwrap();
}

#[test]
fn trace_additive_norm_multiplicative() {
    common::trace_norm_laws().unwrap();
}

#[test]
fn trace_norm_classes_are_conjugate_pairs() {
    common::trace_norm_classes().unwrap();
}

#[test]
fn niho_closure() {
    common::niho_closure().unwrap();
}

#[test]
fn equivalence_relation_laws() {
    common::equivalence_laws().unwrap();
}
