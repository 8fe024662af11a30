//! Property-based laws, 200 cases each; bodies live in `common::laws`.

mod common;

use common::laws;

#[test]
fn coboundaries_are_cocycles() {
    laws::coboundaries_are_cocycles().unwrap();
}

#[test]
fn cocycle_iff_extension_is_right_alternative() {
    laws::cocycle_iff_extension_is_right_alternative().unwrap();
}

#[test]
fn extension_annihilator_splits() {
    laws::extension_annihilator_splits().unwrap();
}

#[test]
fn automorphisms_preserve_cocycles_and_coboundaries() {
    laws::automorphisms_preserve_cocycles_and_coboundaries().unwrap();
}

#[test]
fn invariant_vector_is_basis_free() {
    laws::invariant_vector_is_basis_free().unwrap();
}

#[test]
fn borel_moves_keep_the_closed_set() {
    laws::borel_moves_keep_the_closed_set().unwrap();
}

#[test]
fn rational_field_laws() {
    laws::rational_field_laws().unwrap();
}

#[test]
fn rational_function_field_laws() {
    laws::rational_function_field_laws().unwrap();
}
