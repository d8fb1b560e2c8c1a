use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::linalg;
use crate::scalar::{Rational, Scalar};

fn r(v: i64) -> Rational {
    Rational::from_i64(v)
}

#[test]
fn example_table_products() {
    let t = paper_table_example();
    assert_eq!(t.mul(&t.basis(1), &t.basis(1)), -t.unit());
    // eps4 * eps1 = -e2
    assert_eq!(t.mul(&t.basis(9), &t.basis(6)), -t.basis(2));
    // eps1 * eps4 = e2
    assert_eq!(t.mul(&t.basis(6), &t.basis(9)), t.basis(2));
}

#[test]
fn unit_acts_trivially() {
    let t = complex_grassmann(2);
    let x = AlgebraElement::from_ints(&[3, -1, 4, 1, -5, 9, 2, -6]);
    assert_eq!(t.multiply(&t.unit(), &x).unwrap(), x);
    assert_eq!(t.multiply(&x, &t.unit()).unwrap(), x);
}

#[test]
fn multiply_rejects_dimension_mismatch() {
    let t = complex();
    let bad = AlgebraElement::from_ints(&[1, 2, 3]);
    assert_eq!(
        t.multiply(&bad, &t.unit()),
        Err(Error::DimensionMismatch { expected: 2, found: 3 })
    );
}

#[test]
fn builtins_satisfy_axioms() {
    for t in [complex(), hyperbolic(), complex_grassmann(0), complex_grassmann(1), complex_grassmann(2), complex_grassmann(3)] {
        let report = validate(&t);
        assert!(report.all_pass(), "{report:?}");
        assert!(report.exact);
    }
}

#[test]
fn float_validation_matches_exact() {
    let report = validate(&complex_grassmann(2).to_f64());
    assert!(report.all_pass());
    assert!(!report.exact);
}

#[test]
fn example_table_fails_associativity_only() {
    let report = validate(&paper_table_example());
    assert!(report.check(Axiom::Unit).pass);
    assert!(report.check(Axiom::Grading).pass);
    assert!(report.check(Axiom::Supercommutativity).pass);
    let assoc = report.check(Axiom::Associativity);
    assert!(!assoc.pass);
    // independent count from a numpy einsum over all 12^3 triples
    assert_eq!(assoc.violations, 44);
    assert_eq!(assoc.first_violation, Some([1, 4, 6]));
    assert_eq!(assoc.violating_triples.len(), 44);
    // the even subalgebra itself is associative
    assert!(assoc.violating_triples.iter().all(|t| t.iter().any(|&i| i > 5)));
}

#[test]
fn broken_tables_are_reported_not_rejected() {
    // e1 * e1 = eps1 breaks grading; missing e1 * e0 breaks the unit law
    let t = StructureTable::from_entries(1, 1, [(0, 0, 0, r(1)), (0, 1, 1, r(1)), (1, 1, 2, r(1))]).unwrap();
    let report = validate(&t);
    assert!(!report.check(Axiom::Grading).pass);
    assert_eq!(report.check(Axiom::Grading).first_violation, Some([1, 1, 2]));
    assert!(!report.check(Axiom::Unit).pass);
}

#[test]
fn out_of_range_entries_rejected() {
    assert!(StructureTable::from_entries(1, 0, [(0, 0, 2, r(1))]).is_err());
}

#[test]
fn left_mult_matrix_examples() {
    let t = paper_table_example();
    let identity: linalg::Mat<Rational> =
        (0..12).map(|i| (0..12).map(|j| r(i64::from(i == j))).collect()).collect();
    assert_eq!(t.left_mult_matrix(&t.unit()).unwrap(), identity);
    let two: linalg::Mat<Rational> =
        identity.iter().map(|row| row.iter().map(|x| x.clone() * r(2)).collect()).collect();
    assert_eq!(t.left_mult_matrix(&t.unit().scale(&r(2))).unwrap(), two);
    let m = t.left_mult_matrix(&t.basis(2)).unwrap();
    assert!(linalg::rank(&m) < 12);
}

#[test]
fn left_mult_matrix_reproduces_products() {
    let t = complex_grassmann(2);
    let a = AlgebraElement::from_ints(&[1, 2, 0, -1, 3, 0, 1, 1]);
    let x = AlgebraElement::from_ints(&[0, 1, 5, 2, -1, 1, 0, 3]);
    let m = t.left_mult_matrix(&a).unwrap();
    let mx: Vec<Rational> = m
        .iter()
        .map(|row| row.iter().zip(x.coeffs()).fold(r(0), |acc, (u, v)| acc + u.clone() * v.clone()))
        .collect();
    assert_eq!(AlgebraElement::new(mx), t.mul(&a, &x));
}

#[test]
fn invert_examples() {
    let c = complex();
    assert_eq!(invert(&c.unit(), &c).unwrap(), c.unit());
    assert_eq!(invert(&c.basis(1), &c).unwrap(), -c.basis(1));
    let cf = c.to_f64();
    let inv = invert(&cf.basis(1), &cf).unwrap();
    assert!(inv.max_abs_diff(&AlgebraElement::new(vec![0.0, -1.0])) < 1e-15);

    let ex = paper_table_example();
    assert_eq!(invert(&ex.basis(2), &ex), Err(Error::NotInvertible));
    assert_eq!(invert(&ex.to_f64().basis(2), &ex.to_f64()), Err(Error::NotInvertible));
    // zero divisor in the hyperbolic numbers: (1 + j)(1 - j) = 0
    let h = hyperbolic();
    assert_eq!(invert(&AlgebraElement::from_ints(&[1, 1]), &h), Err(Error::NotInvertible));
}

#[test]
fn annihilator_examples() {
    // for one generator the whole odd part annihilates the odd part
    let t = complex_grassmann(1);
    let ann = annihilator_of_odd(&t);
    assert_eq!(ann.len(), 2);
    for v in &ann {
        assert!(v.coeffs()[..2].iter().all(|c| c.abs() < 1e-14));
        assert!((v.norm() - 1.0).abs() < 1e-14);
    }
    let exact = annihilator_of_odd_exact(&t);
    assert_eq!(exact.len(), 2);
    for v in &exact {
        for l in 1..=t.q() {
            assert!(t.mul(v, &t.basis(t.p() + l)).is_zero());
        }
    }
    assert_eq!(annihilator_of_odd(&complex()).len(), 2);
    // two generators: only the top form eta1 eta2 and odd... check by definition
    let t2 = complex_grassmann(2);
    for v in annihilator_of_odd_exact(&t2) {
        for l in 1..=t2.q() {
            assert!(t2.mul(&v, &t2.basis(t2.p() + l)).is_zero());
        }
    }
}

#[test]
fn change_basis_preserves_products() {
    let t = complex_grassmann(1);
    // swap the roles of eta and i*eta, negate i
    let basis = vec![
        t.unit(),
        -t.basis(1),
        t.basis(3),
        t.basis(2),
    ];
    let u = t.change_basis(&basis).unwrap();
    assert!(validate(&u).all_pass());
    assert_eq!(u.mul(&u.basis(1), &u.basis(1)), -u.unit());
    let bad = vec![t.unit(), t.basis(2), t.basis(1), t.basis(3)];
    assert!(matches!(t.change_basis(&bad), Err(Error::NotABasis(_))));
}

#[test]
fn parity_of_basis_products() {
    for t in [complex_grassmann(2), paper_table_example()] {
        for i in 0..t.dim() {
            for j in 0..t.dim() {
                let prod = t.mul(&t.basis(i), &t.basis(j));
                if prod.is_zero() {
                    continue;
                }
                let parity = (t.parity(i) + t.parity(j)) % 2;
                if parity == 0 {
                    assert!(prod.is_even(t.p()));
                } else {
                    assert!(prod.is_odd(t.p()));
                }
            }
        }
    }
}

fn small_element(dim: usize) -> impl Strategy<Value = AlgebraElement<Rational>> {
    prop::collection::vec(-5i64..=5, dim).prop_map(|v| AlgebraElement::from_ints(&v))
}

proptest! {
    #[test]
    fn multiply_is_bilinear(a in small_element(8), b in small_element(8), c in small_element(8), alpha in -4i64..=4) {
        let t = complex_grassmann(2);
        let alpha = r(alpha);
        let lhs = t.mul(&(a.scale(&alpha) + b.clone()), &c);
        let rhs = t.mul(&a, &c).scale(&alpha) + t.mul(&b, &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_is_two_sided(coeffs in prop::collection::vec(-3.0f64..3.0, 8), lead in 0.5f64..3.0) {
        let t = complex_grassmann(2).to_f64();
        let mut c = coeffs;
        c[0] = lead;
        let a = AlgebraElement::new(c);
        let inv = invert(&a, &t).unwrap();
        prop_assert!(t.mul(&inv, &a).max_abs_diff(&t.unit()) < 1e-12);
        prop_assert!(t.mul(&a, &inv).max_abs_diff(&t.unit()) < 1e-12);
    }

    #[test]
    fn exact_inverse_is_exact(a in small_element(8), lead in 1i64..=4) {
        let t = complex_grassmann(2);
        let mut c = a.into_coeffs();
        c[0] = r(lead);
        let a = AlgebraElement::new(c);
        let inv = invert(&a, &t).unwrap();
        prop_assert_eq!(t.mul(&inv, &a), t.unit());
    }
}
