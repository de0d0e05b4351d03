//! Hand-checked values from the worked examples.

use sc6v::combinat::{grassmannian_perm, grassmannian_word, BoundaryCondition, Permutation, SkewDomain};
use sc6v::hecke::yb_element;
use sc6v::klgr::{count_pipe_dreams, count_positroid_cell, r_polynomial, BoundedAffinePermutation, CountMode};
use sc6v::scalar::{IntPolynomial, Rational};
use sc6v::symmetry::worked_example;

fn perm(images: &[usize]) -> Permutation {
    Permutation::new(images).unwrap()
}

#[test]
fn rotation_of_a_boundary_condition() {
    let h = BoundaryCondition::new(vec![(6, 6), (7, 4), (9, 5), (10, 7)]).unwrap();
    let rotated = BoundaryCondition::new(vec![(5, 2), (6, 6), (7, 3), (8, 5)]).unwrap();
    assert_eq!(h.flip_180(11).unwrap(), rotated);
    assert_eq!(rotated.flip_180(11).unwrap(), h);
}

#[test]
fn worked_flip_rotates_to_expected_condition() {
    let inst = worked_example();
    // (i, j) ↦ (n+1−j, n+1−i) with n = 5.
    assert_eq!(inst.flipped_h(), BoundaryCondition::new(vec![(3, 1), (4, 3)]).unwrap());
}

#[test]
fn rectangle_permutation_and_word() {
    assert_eq!(grassmannian_perm(2, 3), perm(&[4, 5, 1, 2, 3]));
    assert_eq!(grassmannian_perm(2, 3).length(), 6);
    assert_eq!(Permutation::from_word(5, &grassmannian_word(2, 3)), grassmannian_perm(2, 3));
    let (w, _) = SkewDomain::rectangle(2, 3).to_wiring(&[1, 2], &[3, 4, 5]).unwrap();
    assert_eq!(w, grassmannian_perm(2, 3));
}

#[test]
fn small_r_polynomials() {
    let q = IntPolynomial::q();
    let one = IntPolynomial::constant(1);
    let e = Permutation::identity(3);
    let s1 = perm(&[2, 1, 3]);
    assert_eq!(r_polynomial(&e, &s1), q.clone() - one.clone());
    assert_eq!(r_polynomial(&e, &perm(&[2, 3, 1])), (q.clone() - one.clone()).pow(2));
    let w0 = Permutation::longest(3);
    assert_eq!(r_polynomial(&e, &w0), (q.clone() - one.clone()).pow(3) + q.clone() * (q - one));
    assert_eq!(r_polynomial(&w0, &w0), IntPolynomial::constant(1));
    assert_eq!(r_polynomial(&w0, &s1), IntPolynomial::zero());
}

#[test]
fn single_r_factor_is_a_coin_flip() {
    let half = Rational::new(1, 2);
    let y = yb_element(&[1], std::slice::from_ref(&half), &Permutation::identity(2), &Rational::new(1, 3));
    assert_eq!(y.coeff(&Permutation::identity(2)), Some(&half));
    assert_eq!(y.coeff(&perm(&[2, 1])), Some(&half));
}

#[test]
fn top_positroid_cell_of_gr24() {
    let f = BoundedAffinePermutation::shift(2, 4);
    for q in [2u64, 3] {
        let qi = q as i64;
        assert_eq!(count_positroid_cell(&f, q).unwrap() as i64, (qi - 1).pow(4) + qi * (qi - 1).pow(2));
    }
}

#[test]
fn one_by_one_pipe_dreams() {
    // A single cell: a crossing sends the column pipe out to the right.
    let id = Permutation::identity(2);
    let h = BoundaryCondition::horizontal(&id, 1, 1);
    let v = BoundaryCondition::vertical(&id, 1, 1);
    assert_eq!(count_pipe_dreams(1, 1, &h, &v, CountMode::Plain).unwrap(), IntPolynomial::constant(1));
}
