use super::*;
use rand::Rng;
use crate::algebra::{complex, complex_grassmann, hyperbolic, paper_table_example};
use crate::scalar::Rational;
use proptest::prelude::*;

fn ints(c: &[i64]) -> AlgebraElement<Rational> {
    AlgebraElement::from_ints(c)
}

#[test]
fn a0_complex_passes() {
    let t = complex();
    let r = verify_a0(&t, &standard_even_basis(&t)).unwrap();
    assert!(r.pass);
    assert_eq!(r.residuals, vec![0.0]);
}

#[test]
fn a0_hyperbolic_fails_with_residual_two() {
    let t = hyperbolic();
    let r = verify_a0(&t, &standard_even_basis(&t)).unwrap();
    assert!(!r.pass);
    assert_eq!(r.residuals, vec![2.0]);
}

#[test]
fn a0_example_table_passes() {
    let t = paper_table_example();
    assert!(verify_a0(&t, &standard_even_basis(&t)).unwrap().pass);
}

#[test]
fn a0_rejects_bad_bases() {
    let t = complex();
    assert!(matches!(verify_a0(&t, &[ints(&[1, 0]), ints(&[2, 0])]), Err(Error::NotABasis(_))));
    assert!(matches!(verify_a0(&t, &[ints(&[0, 1]), ints(&[1, 0])]), Err(Error::NotABasis(_))));
    assert!(matches!(verify_a0(&t, &[ints(&[1, 0])]), Err(Error::NotABasis(_))));
    let g = complex_grassmann(1);
    assert!(matches!(verify_a0(&g, &[ints(&[1, 0, 0, 0]), ints(&[0, 0, 1, 0])]), Err(Error::NotABasis(_))));
}

#[test]
fn a1_grassmann_defaults_pass() {
    for g in 1..=3 {
        let t = complex_grassmann(g);
        let s = default_slices(Builtin::ComplexGrassmann(g), &t).unwrap();
        let r = verify_a1(&t, &standard_odd_basis(&t), &s).unwrap();
        assert!(r.pass, "g = {g}: {r:?}");
        assert!(r.residuals.iter().all(|&x| x == 0.0));
    }
    let t = complex_grassmann(2);
    let s = default_slices(Builtin::ComplexGrassmann(2), &t).unwrap();
    assert_eq!(s.breakpoints(), &[1, 3, 5]);
    assert_eq!(s.r(), 2);
}

#[test]
fn a1_unit_multipliers_fail_per_slice() {
    let t = complex_grassmann(2);
    let s = SliceSpec::new(&t, vec![1, 2, 3, 4], vec![t.unit(); 4]).unwrap();
    let r = verify_a1(&t, &standard_odd_basis(&t), &s).unwrap();
    assert!(!r.pass);
    assert_eq!(r.residuals, vec![1.0; 4]);
    assert_eq!(r.diagnostics.iter().filter(|d| d.kind == "slice_sum").count(), 4);
}

#[test]
fn a1_reports_span_and_leader_failures() {
    let t = complex_grassmann(1);
    let i = t.basis(1);
    let s = SliceSpec::new(&t, vec![1], vec![i.clone(), i]).unwrap();
    let r = verify_a1(&t, &standard_odd_basis(&t), &s).unwrap();
    let kinds: Vec<&str> = r.diagnostics.iter().map(|d| d.kind.as_str()).collect();
    assert!(kinds.contains(&"leader_multiplier"));
    assert!(kinds.contains(&"span"));
    assert!(kinds.contains(&"slice_sum"));
}

#[test]
fn example_table_slice_claim_is_not_a_basis() {
    // eps_1 e_5 and eps_1 e_1 coincide in the printed table, so the proposed
    // odd basis is degenerate.
    let t = paper_table_example();
    let e = |i: usize| t.basis(i);
    let eps1 = e(6);
    let eps4 = e(9);
    let mults = [e(0), e(1), e(4), e(5), e(0), e(1)];
    let basis: Vec<_> = mults
        .iter()
        .enumerate()
        .map(|(j, a)| t.mul(a, if j < 4 { &eps1 } else { &eps4 }))
        .collect();
    let s = SliceSpec::new(&t, vec![1, 5], mults.to_vec()).unwrap();
    assert!(matches!(verify_a1(&t, &basis, &s), Err(Error::NotABasis(_))));
}

#[test]
fn slice_spec_validation() {
    let t = complex_grassmann(1);
    assert!(SliceSpec::new(&t, vec![2], vec![t.unit(); 2]).is_err());
    assert!(SliceSpec::new(&t, vec![1, 1], vec![t.unit(); 2]).is_err());
    assert!(SliceSpec::new(&t, vec![1], vec![t.unit()]).is_err());
    assert!(SliceSpec::new(&t, vec![1], vec![t.unit(), t.basis(2)]).is_err());
    let s = SliceSpec::new(&t, vec![1, 2, 3], vec![t.unit(); 2]).unwrap();
    assert_eq!(s.r(), 2);
    assert_eq!(s.slice_of(2), 1);
    assert!(s.is_leader(2));
}

#[test]
fn sqrt_minus_one_complex() {
    let r = find_sqrt_minus_one(&complex(), &NewtonConfig::default()).unwrap();
    assert!(r.residual < 1e-12);
    assert!(r.root.coeffs()[0].abs() < 1e-12);
    assert!((r.root.coeffs()[1].abs() - 1.0).abs() < 1e-12);
}

#[test]
fn sqrt_minus_one_grassmann() {
    let t = complex_grassmann(2);
    let r = find_sqrt_minus_one(&t, &NewtonConfig::default()).unwrap();
    assert!(r.residual < 1e-12);
    assert!((r.root.coeffs()[1].abs() - 1.0).abs() < 1e-12);
    assert!(!r.root.is_odd(t.p()));
}

#[test]
fn sqrt_minus_one_hyperbolic_not_found() {
    assert!(matches!(find_sqrt_minus_one(&hyperbolic(), &NewtonConfig::default()), Err(Error::NotFound)));
}

#[test]
fn sqrt_search_is_deterministic_across_execution_modes() {
    let t = complex_grassmann(2);
    let seq = NewtonConfig { execution: Execution::Sequential, ..Default::default() };
    let par = NewtonConfig { execution: Execution::Parallel, ..Default::default() };
    assert_eq!(find_sqrt_minus_one(&t, &seq).unwrap(), find_sqrt_minus_one(&t, &par).unwrap());
}

#[test]
fn complexify_complex() {
    let t = complex();
    let c = complexify(&t, &t.basis(1)).unwrap();
    assert_eq!(c.complex_dim(), 1);
    assert_eq!(c.pairs[0], (t.unit(), t.basis(1)));
}

#[test]
fn complexify_grassmann_found_root() {
    let t = complex_grassmann(1).to_f64();
    let iota = find_sqrt_minus_one(&t, &NewtonConfig::default()).unwrap().root;
    let c = complexify(&t, &iota).unwrap();
    assert_eq!(c.complex_dim(), 2);
}

#[test]
fn complexify_errors() {
    let t = hyperbolic();
    assert!(matches!(complexify(&t, &t.basis(1)), Err(Error::NotASquareRoot(_))));
}

#[test]
fn complexify_pairs_span_and_square() {
    for g in 0..=3 {
        let t = complex_grassmann(g);
        let c = complexify(&t, &t.basis(1)).unwrap();
        let rows: linalg::Mat<Rational> =
            c.pairs.iter().flat_map(|(a, b)| [a.coeffs().to_vec(), b.coeffs().to_vec()]).collect();
        assert_eq!(linalg::rank(&rows), t.dim());
        for (a, b) in &c.pairs {
            assert_eq!(&t.mul(&c.iota, a), b);
            assert_eq!(t.mul(&c.iota, b), -a.clone());
        }
    }
}

proptest! {
    #[test]
    fn a0_verdict_invariant_under_signed_permutation(seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for t in [complex(), hyperbolic(), paper_table_example(), complex_grassmann(2)] {
            let base = standard_even_basis(&t);
            let mut tail = base[1..].to_vec();
            tail.shuffle(&mut rng);
            let mut permuted = vec![base[0].clone()];
            for b in tail {
                permuted.push(if rng.gen::<bool>() { -b } else { b });
            }
            prop_assert_eq!(verify_a0(&t, &base).unwrap().pass, verify_a0(&t, &permuted).unwrap().pass);
        }
    }

    #[test]
    fn accepted_slice_sums_are_exactly_zero(g in 1usize..=3) {
        let t = complex_grassmann(g);
        let s = default_slices(Builtin::ComplexGrassmann(g), &t).unwrap();
        let report = verify_a1(&t, &standard_odd_basis(&t), &s).unwrap();
        prop_assert!(report.pass);
        for k in 0..s.r() {
            let sum = s.slice(k).fold(t.zero(), |acc, j| acc + t.square(s.multiplier(j)));
            prop_assert!(sum.is_zero());
        }
    }
}
